//! Exact coefficient arithmetic: elements of `Q(i, sqrt2, sqrt3)` graded by
//! integer powers of a formal, invertible symbol `pi`.
//!
//! Carrying `pi` formally keeps the cocycle and bilinear-form prefactors
//! (`1/2pi`, `1/24pi^2`, `(2pi)^3`) exact; a residual `pi` power surviving in
//! a checked identity signals a normalization mistake rather than rounding.

mod knum;
mod rat;

pub use knum::{BasisIdx, KNum, B_I, B_ONE, B_SQRT2, B_SQRT3, B_SQRT6};
pub use rat::Rat;

use smallvec::SmallVec;
use std::fmt;

/// A finite sum `sum_k c_k * pi^k` with `c_k` in `Q(i, sqrt2, sqrt3)`,
/// stored as terms sorted by exponent with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: SmallVec<[(i16, KNum); 1]>,
}

impl ExactScalar {
    pub fn zero() -> ExactScalar {
        ExactScalar::default()
    }

    pub fn one() -> ExactScalar {
        ExactScalar::from_knum(KNum::one())
    }

    pub fn i() -> ExactScalar {
        ExactScalar::from_knum(KNum::i())
    }

    pub fn sqrt2() -> ExactScalar {
        ExactScalar::from_knum(KNum::sqrt2())
    }

    pub fn sqrt3() -> ExactScalar {
        ExactScalar::from_knum(KNum::sqrt3())
    }

    pub fn sqrt6() -> ExactScalar {
        ExactScalar::from_knum(KNum::sqrt6())
    }

    pub fn int(n: i128) -> ExactScalar {
        ExactScalar::from_knum(KNum::int(n))
    }

    pub fn rational(n: i128, d: i128) -> ExactScalar {
        ExactScalar::from_knum(KNum::rational(n, d))
    }

    pub fn from_rat(r: Rat) -> ExactScalar {
        ExactScalar::from_knum(KNum::from_rat(r))
    }

    pub fn from_knum(c: KNum) -> ExactScalar {
        ExactScalar::term(0, c)
    }

    /// `c * pi^k`.
    pub fn term(k: i16, c: KNum) -> ExactScalar {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((k, c));
        }
        ExactScalar { terms }
    }

    /// `pi^k`.
    pub fn pi_pow(k: i16) -> ExactScalar {
        ExactScalar::term(k, KNum::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i16, KNum)] {
        &self.terms
    }

    /// The coefficient of `pi^k`.
    pub fn knum_at(&self, k: i16) -> KNum {
        self.terms
            .iter()
            .find(|(e, _)| *e == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(KNum::zero)
    }

    /// A value free of both `pi` and radicals, if it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::ZERO)
        } else if self.terms.len() == 1 && self.terms[0].0 == 0 {
            self.terms[0].1.as_rational()
        } else {
            None
        }
    }

    fn insert(&mut self, k: i16, c: KNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by_key(&k, |(e, _)| *e) {
            Ok(pos) => {
                let s = self.terms[pos].1.add(&c);
                if s.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = s;
                }
            }
            Err(pos) => self.terms.insert(pos, (k, c)),
        }
    }

    pub fn add(&self, o: &ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &ExactScalar) -> ExactScalar {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.insert(*k, c.neg());
        }
        out
    }

    pub fn neg(&self) -> ExactScalar {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.neg();
        }
        out
    }

    pub fn mul(&self, o: &ExactScalar) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                out.insert(k1 + k2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> ExactScalar {
        if r.is_zero() {
            return ExactScalar::zero();
        }
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.scale(r);
        }
        out
    }

    /// Complex conjugation: conjugates coefficients, fixes `pi` powers.
    pub fn conj(&self) -> ExactScalar {
        let mut out = ExactScalar::zero();
        for (k, c) in &self.terms {
            out.insert(*k, c.conj());
        }
        out
    }

    /// Multiplicative inverse of a single-term scalar. General sums in `pi`
    /// are not units in this ring; inverting one is an error.
    pub fn inv(&self) -> Result<ExactScalar, ScalarError> {
        match self.terms.len() {
            0 => Err(ScalarError::DivisionByZero),
            1 => Ok(ExactScalar::term(-self.terms[0].0, self.terms[0].1.inv())),
            _ => Err(ScalarError::NotInvertible),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalar with mixed pi powers has no inverse in the ring")]
    NotInvertible,
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if *k == 0 {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "pi^{k}")?;
            } else if c.terms().len() > 1 {
                write!(f, "({c})*pi^{k}")?;
            } else {
                write!(f, "{c}*pi^{k}")?;
            }
            first = false;
        }
        Ok(())
    }
}
