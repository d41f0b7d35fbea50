//! Exact rational arithmetic on `i128` with explicit overflow checks.
//!
//! The verification suites multiply long chains of small structure constants
//! and combinatorial prefactors (1/2, 1/3, 1/4, 1/12, ...). Denominators stay
//! products of small primes and numerators stay far below the `i128` range,
//! so a fixed-width representation is exact in practice. Every operation is
//! checked: an overflow aborts the computation loudly instead of wrapping.

use std::cmp::Ordering;
use std::fmt;

/// A rational number `n/d` in lowest terms with `d > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    n: i128,
    d: i128,
}

#[inline]
fn gcd(mut a: i128, mut b: i128) -> i128 {
    if a < 0 {
        a = -a;
    }
    if b < 0 {
        b = -b;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cold]
fn overflow(op: &str) -> ! {
    panic!("exact rational overflow in {op}: value exceeds i128 range");
}

impl Rat {
    pub const ZERO: Rat = Rat { n: 0, d: 1 };
    pub const ONE: Rat = Rat { n: 1, d: 1 };

    pub fn new(n: i128, d: i128) -> Rat {
        assert!(d != 0, "rational with zero denominator");
        let g = gcd(n, d);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (n / g, d / g) };
        if d < 0 {
            n = n.checked_neg().unwrap_or_else(|| overflow("negate"));
            d = d.checked_neg().unwrap_or_else(|| overflow("negate"));
        }
        Rat { n, d }
    }

    #[inline]
    pub fn int(n: i128) -> Rat {
        Rat { n, d: 1 }
    }

    #[inline]
    pub fn numer(&self) -> i128 {
        self.n
    }

    #[inline]
    pub fn denom(&self) -> i128 {
        self.d
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.n == 1 && self.d == 1
    }

    pub fn add(&self, o: &Rat) -> Rat {
        // a/b + c/d with b,d > 0; reduce via g = gcd(b, d) first.
        let g = gcd(self.d, o.d);
        let (b, d) = (self.d / g, o.d / g);
        let lhs = self.n.checked_mul(d).unwrap_or_else(|| overflow("add"));
        let rhs = o.n.checked_mul(b).unwrap_or_else(|| overflow("add"));
        let num = lhs.checked_add(rhs).unwrap_or_else(|| overflow("add"));
        let den = self.d.checked_mul(d).unwrap_or_else(|| overflow("add"));
        Rat::new(num, den)
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        // Cross-reduce before multiplying to keep magnitudes small.
        let g1 = gcd(self.n, o.d);
        let g2 = gcd(o.n, self.d);
        let n1 = if g1 == 0 { self.n } else { self.n / g1 };
        let d2 = if g1 == 0 { o.d } else { o.d / g1 };
        let n2 = if g2 == 0 { o.n } else { o.n / g2 };
        let d1 = if g2 == 0 { self.d } else { self.d / g2 };
        let num = n1.checked_mul(n2).unwrap_or_else(|| overflow("mul"));
        let den = d1.checked_mul(d2).unwrap_or_else(|| overflow("mul"));
        Rat::new(num, den)
    }

    pub fn div(&self, o: &Rat) -> Rat {
        assert!(!o.is_zero(), "division by zero rational");
        self.mul(&Rat { n: o.d, d: o.n }.normalized())
    }

    fn normalized(self) -> Rat {
        Rat::new(self.n, self.d)
    }

    pub fn neg(&self) -> Rat {
        Rat {
            n: self.n.checked_neg().unwrap_or_else(|| overflow("negate")),
            d: self.d,
        }
    }

    pub fn inv(&self) -> Rat {
        assert!(!self.is_zero(), "inverse of zero rational");
        Rat::new(self.d, self.n)
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::ONE;
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn cmp_value(&self, o: &Rat) -> Ordering {
        self.sub(o).n.cmp(&0)
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 1 {
            write!(f, "{}", self.n)
        } else {
            write!(f, "{}/{}", self.n, self.d)
        }
    }
}
