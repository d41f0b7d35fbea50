//! Arithmetic in the number field `Q(i, sqrt2, sqrt3)`.
//!
//! Orthonormal bases of su(2) and su(3) with the normalization used here
//! (`-tr(T_a T_b) = delta_ab` in the fundamental) do not exist over the
//! Gaussian rationals: the trace form of su(2) restricted to its rational
//! points is `<2,2,2>`, whose discriminant obstructs rational equivalence
//! with the unit form, and the su(3) form picks up a discriminant 3. The
//! degree-8 field `Q(i, sqrt2, sqrt3)` carries every constant the su(N)
//! constructions (N <= 4) need, and complex conjugation restricts to
//! negating the imaginary half.
//!
//! Elements are stored as sparse vectors over the rational basis
//! `1, sqrt2, sqrt3, sqrt6, i, i*sqrt2, i*sqrt3, i*sqrt6` (indices 0..8).

use super::rat::Rat;
use smallvec::SmallVec;
use std::fmt;

/// Basis index: bits 0-1 select the radical part (1, sqrt2, sqrt3, sqrt6),
/// bit 2 selects the imaginary half.
pub type BasisIdx = u8;

pub const B_ONE: BasisIdx = 0;
pub const B_SQRT2: BasisIdx = 1;
pub const B_SQRT3: BasisIdx = 2;
pub const B_SQRT6: BasisIdx = 3;
pub const B_I: BasisIdx = 4;

/// Radical multiplication: (r1, r2) -> (r, integer factor).
#[inline]
fn rad_mul(r1: u8, r2: u8) -> (u8, i128) {
    // 0 = 1, 1 = sqrt2, 2 = sqrt3, 3 = sqrt6
    const TABLE: [[(u8, i128); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, 2), (3, 1), (2, 2)],
        [(2, 1), (3, 1), (0, 3), (1, 3)],
        [(3, 1), (2, 2), (1, 3), (0, 6)],
    ];
    TABLE[r1 as usize][r2 as usize]
}

/// An element of `Q(i, sqrt2, sqrt3)`: sorted sparse terms (basis, coeff).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct KNum {
    terms: SmallVec<[(BasisIdx, Rat); 2]>,
}

impl KNum {
    pub fn zero() -> KNum {
        KNum::default()
    }

    pub fn one() -> KNum {
        KNum::basis(B_ONE)
    }

    pub fn i() -> KNum {
        KNum::basis(B_I)
    }

    pub fn sqrt2() -> KNum {
        KNum::basis(B_SQRT2)
    }

    pub fn sqrt3() -> KNum {
        KNum::basis(B_SQRT3)
    }

    pub fn sqrt6() -> KNum {
        KNum::basis(B_SQRT6)
    }

    pub fn basis(b: BasisIdx) -> KNum {
        KNum::single(b, Rat::ONE)
    }

    pub fn single(b: BasisIdx, c: Rat) -> KNum {
        assert!(b < 8, "basis index out of range");
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((b, c));
        }
        KNum { terms }
    }

    pub fn from_rat(c: Rat) -> KNum {
        KNum::single(B_ONE, c)
    }

    pub fn int(n: i128) -> KNum {
        KNum::from_rat(Rat::int(n))
    }

    pub fn rational(n: i128, d: i128) -> KNum {
        KNum::from_rat(Rat::new(n, d))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == B_ONE && self.terms[0].1.is_one()
    }

    /// The rational coefficient of a basis element.
    pub fn coeff(&self, b: BasisIdx) -> Rat {
        self.terms
            .iter()
            .find(|(idx, _)| *idx == b)
            .map(|(_, c)| *c)
            .unwrap_or(Rat::ZERO)
    }

    /// True when the value lies in `Q` itself.
    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(b, _)| *b == B_ONE)
    }

    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::ZERO)
        } else if self.is_rational() {
            Some(self.terms[0].1)
        } else {
            None
        }
    }

    pub fn terms(&self) -> &[(BasisIdx, Rat)] {
        &self.terms
    }

    fn insert(&mut self, b: BasisIdx, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&b, |(idx, _)| *idx) {
            Ok(pos) => {
                let s = self.terms[pos].1.add(&c);
                if s.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = s;
                }
            }
            Err(pos) => self.terms.insert(pos, (b, c)),
        }
    }

    pub fn add(&self, o: &KNum) -> KNum {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.insert(*b, *c);
        }
        out
    }

    pub fn sub(&self, o: &KNum) -> KNum {
        let mut out = self.clone();
        for (b, c) in &o.terms {
            out.insert(*b, c.neg());
        }
        out
    }

    pub fn neg(&self) -> KNum {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.neg();
        }
        out
    }

    pub fn mul(&self, o: &KNum) -> KNum {
        let mut out = KNum::zero();
        for (b1, c1) in &self.terms {
            for (b2, c2) in &o.terms {
                let (rad, factor) = rad_mul(b1 & 3, b2 & 3);
                let im1 = b1 & 4 != 0;
                let im2 = b2 & 4 != 0;
                let mut c = c1.mul(c2).mul(&Rat::int(factor));
                if im1 && im2 {
                    c = c.neg();
                }
                let b = rad | if im1 ^ im2 { 4 } else { 0 };
                out.insert(b, c);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> KNum {
        if c.is_zero() {
            return KNum::zero();
        }
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.mul(c);
        }
        out
    }

    /// Complex conjugation: fixes the radicals, negates the imaginary half.
    pub fn conj(&self) -> KNum {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            if t.0 & 4 != 0 {
                t.1 = t.1.neg();
            }
        }
        out
    }

    /// Galois twist sending sqrt2 -> -sqrt2 (fixes sqrt3 and i).
    fn twist2(&self) -> KNum {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            if matches!(t.0 & 3, 1 | 3) {
                t.1 = t.1.neg();
            }
        }
        out
    }

    /// Galois twist sending sqrt3 -> -sqrt3 (fixes sqrt2 and i).
    fn twist3(&self) -> KNum {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            if matches!(t.0 & 3, 2 | 3) {
                t.1 = t.1.neg();
            }
        }
        out
    }

    pub fn inv(&self) -> KNum {
        assert!(!self.is_zero(), "inverse of zero field element");
        // First clear the imaginary part: z^-1 = conj(z) / (z * conj(z)).
        let norm_c = self.mul(&self.conj());
        debug_assert!(norm_c.terms.iter().all(|(b, _)| b & 4 == 0));
        // norm_c lies in Q(sqrt2, sqrt3); divide out by its Galois norm.
        let t2 = norm_c.twist2();
        let t3 = norm_c.twist3();
        let t23 = t2.twist3();
        let adj = t2.mul(&t3).mul(&t23);
        let norm_q = norm_c
            .mul(&adj)
            .as_rational()
            .expect("Galois norm must be rational");
        assert!(!norm_q.is_zero(), "inverse of zero field element");
        self.conj().mul(&adj).scale(&norm_q.inv())
    }
}

impl fmt::Debug for KNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for KNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        const NAMES: [&str; 8] = [
            "", "sqrt2", "sqrt3", "sqrt6", "i", "i*sqrt2", "i*sqrt3", "i*sqrt6",
        ];
        let mut first = true;
        for (b, c) in &self.terms {
            if !first {
                write!(f, "{}", if c.numer() < 0 { " - " } else { " + " })?;
            }
            let mag = if !first && c.numer() < 0 { c.neg() } else { *c };
            let name = NAMES[*b as usize];
            if name.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else if mag == Rat::int(-1) && first {
                write!(f, "-{name}")?;
            } else {
                write!(f, "{mag}*{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplication_table() {
        assert_eq!(KNum::sqrt2().mul(&KNum::sqrt2()), KNum::int(2));
        assert_eq!(KNum::sqrt3().mul(&KNum::sqrt3()), KNum::int(3));
        assert_eq!(KNum::sqrt2().mul(&KNum::sqrt3()), KNum::sqrt6());
        assert_eq!(KNum::sqrt6().mul(&KNum::sqrt6()), KNum::int(6));
        assert_eq!(
            KNum::sqrt2().mul(&KNum::sqrt6()),
            KNum::sqrt3().scale(&Rat::int(2))
        );
        assert_eq!(KNum::i().mul(&KNum::i()), KNum::int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        // (1 + sqrt2 + i*sqrt3) and a few other mixed elements
        let samples = [
            KNum::one().add(&KNum::sqrt2()).add(&KNum::i().mul(&KNum::sqrt3())),
            KNum::sqrt6().sub(&KNum::rational(1, 2)),
            KNum::i().scale(&Rat::new(3, 7)).add(&KNum::sqrt2()),
            KNum::rational(-5, 3),
        ];
        for z in samples {
            assert_eq!(z.mul(&z.inv()), KNum::one(), "inverse failed for {z}");
        }
    }

    #[test]
    fn conjugation_is_ring_involution() {
        let a = KNum::one().add(&KNum::i().mul(&KNum::sqrt6()));
        let b = KNum::sqrt3().sub(&KNum::i());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
    }
}
