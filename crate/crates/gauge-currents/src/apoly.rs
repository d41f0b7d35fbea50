//! Polynomials in the Fourier components of the gauge potential.
//!
//! An indeterminate `A[c;j;p]` stands for the component of the potential
//! along basis direction `c`, spatial index `j`, Fourier mode `p`. These are
//! classical commuting coefficients, so monomials are multisets. The module
//! also carries the infinitesimal gauge action `L_X A = [A,X] + dX` as a
//! derivation on the polynomial ring; that action is what couples the
//! extension cocycle to the operator algebra.

use crate::lie::LieAlgebraSpec;
use crate::mode::Mode;
use crate::scalar::{ExactScalar, KNum};
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// A packed indeterminate: lie index (6 bits), spatial index (2 bits), and
/// three mode components biased by 128 (8 bits each). The packing order
/// makes integer comparison agree with lexicographic order on `(c, j, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AInd(u32);

impl AInd {
    pub fn new(lie_index: usize, spatial_index: usize, mode: Mode) -> AInd {
        assert!(lie_index < 64, "lie index out of packing range");
        assert!(spatial_index < 4, "spatial index out of packing range");
        let mut v = (lie_index as u32) << 26 | (spatial_index as u32) << 24;
        for (k, c) in mode.0.iter().enumerate() {
            let b = (*c as i32) + 128;
            assert!((0..256).contains(&b), "A-indeterminate mode out of range");
            v |= (b as u32) << (16 - 8 * k);
        }
        AInd(v)
    }

    pub fn lie_index(&self) -> usize {
        (self.0 >> 26) as usize
    }

    pub fn spatial_index(&self) -> usize {
        ((self.0 >> 24) & 3) as usize
    }

    pub fn mode(&self) -> Mode {
        let c = |k: u32| (((self.0 >> (16 - 8 * k)) & 255) as i32 - 128) as i16;
        Mode([c(0), c(1), c(2)])
    }

    fn conj(&self) -> AInd {
        AInd::new(self.lie_index(), self.spatial_index(), self.mode().neg())
    }
}

impl fmt::Debug for AInd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.mode();
        write!(
            f,
            "A[{};{};{},{},{}]",
            self.lie_index() + 1,
            self.spatial_index() + 1,
            m.0[0],
            m.0[1],
            m.0[2]
        )
    }
}

/// A commutative monomial: indeterminates in ascending order, with repeats.
pub type Monomial = SmallVec<[AInd; 2]>;

/// A polynomial in the gauge-potential components over the exact scalars,
/// kept canonical: monomials sorted, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct APoly {
    terms: Vec<(Monomial, ExactScalar)>,
}

impl APoly {
    pub fn zero() -> APoly {
        APoly::default()
    }

    pub fn one() -> APoly {
        APoly::constant(ExactScalar::one())
    }

    pub fn constant(c: ExactScalar) -> APoly {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::new(), c));
        }
        APoly { terms }
    }

    pub fn indeterminate(x: AInd) -> APoly {
        APoly {
            terms: vec![(Monomial::from_slice(&[x]), ExactScalar::one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_empty())
    }

    pub fn constant_part(&self) -> ExactScalar {
        self.terms
            .iter()
            .find(|(m, _)| m.is_empty())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn as_constant(&self) -> Option<ExactScalar> {
        if self.is_constant() {
            Some(self.constant_part())
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.len()).max().unwrap_or(0)
    }

    pub fn terms(&self) -> &[(Monomial, ExactScalar)] {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> ExactScalar {
        match self.terms.binary_search_by(|(k, _)| k.cmp(m)) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    pub fn insert(&mut self, m: Monomial, c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(k, _)| k.cmp(&m)) {
            Ok(pos) => {
                let s = self.terms[pos].1.add(&c);
                if s.is_zero() {
                    self.terms.remove(pos);
                } else {
                    self.terms[pos].1 = s;
                }
            }
            Err(pos) => self.terms.insert(pos, (m, c)),
        }
    }

    pub fn add(&self, o: &APoly) -> APoly {
        if self.is_zero() {
            return o.clone();
        }
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, o: &APoly) {
        for (m, c) in &o.terms {
            self.insert(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &APoly) -> APoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> APoly {
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.neg();
        }
        out
    }

    pub fn mul(&self, o: &APoly) -> APoly {
        let mut out = APoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                m.sort_unstable();
                out.insert(m, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &ExactScalar) -> APoly {
        if c.is_zero() {
            return APoly::zero();
        }
        let mut out = self.clone();
        for t in out.terms.iter_mut() {
            t.1 = t.1.mul(c);
        }
        out
    }

    /// Complex conjugation. The potential is a real field in an
    /// antihermitian basis, so conjugation sends `A[c;j;p]` to `A[c;j;-p]`
    /// and conjugates scalar coefficients.
    pub fn conj(&self) -> APoly {
        let mut out = APoly::zero();
        for (m, c) in &self.terms {
            let mut cm: Monomial = m.iter().map(AInd::conj).collect();
            cm.sort_unstable();
            out.insert(cm, c.conj());
        }
        out
    }

    /// Exact evaluation at a concrete potential; unassigned indeterminates
    /// default to zero.
    pub fn substitute(&self, assignment: &FxHashMap<AInd, ExactScalar>) -> ExactScalar {
        let mut out = ExactScalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for x in m {
                match assignment.get(x) {
                    Some(s) if !s.is_zero() => v = v.mul(s),
                    _ => continue 'terms,
                }
            }
            out = out.add(&v);
        }
        out
    }

    /// The infinitesimal gauge action along `X = T_a e^{i n.x}` extended to
    /// the polynomial ring as a derivation:
    /// `L(A[f;j;q]) = sum_c lambda^f_ca A[c;j;q-n] + i n_j [f=a][q=n]`.
    pub fn lie_derivative(&self, a: usize, n: &Mode, spec: &LieAlgebraSpec) -> APoly {
        let mut out = APoly::zero();
        for (m, coeff) in &self.terms {
            for (pos, x) in m.iter().enumerate() {
                let rest: Monomial = m
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != pos)
                    .map(|(_, v)| *v)
                    .collect();
                // Bracket part.
                let f = x.lie_index();
                let j = x.spatial_index();
                let q = x.mode();
                for c in 0..spec.dim {
                    let lam = spec.lambda(c, a, f);
                    if lam.is_zero() {
                        continue;
                    }
                    let mut mm = rest.clone();
                    mm.push(AInd::new(c, j, q.sub(n)));
                    mm.sort_unstable();
                    out.insert(mm, coeff.mul(lam));
                }
                // dX part.
                if f == a && q == *n {
                    let nj = n.component(j) as i128;
                    if nj != 0 {
                        let val = coeff.mul(&ExactScalar::term(0, KNum::i()).scale_rat(
                            &crate::scalar::Rat::int(nj),
                        ));
                        let mut mm = rest;
                        mm.sort_unstable();
                        out.insert(mm, val);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for APoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_empty() {
                    format!("({c})")
                } else {
                    let vars: Vec<String> = m.iter().map(|x| format!("{x:?}")).collect();
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_su_n;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn ind(c: usize, j: usize, m: [i16; 3]) -> AInd {
        AInd::new(c, j, Mode(m))
    }

    #[test]
    fn packing_roundtrip_and_order() {
        let x = ind(2, 1, [-3, 0, 5]);
        assert_eq!(x.lie_index(), 2);
        assert_eq!(x.spatial_index(), 1);
        assert_eq!(x.mode(), Mode([-3, 0, 5]));
        // Lexicographic on (c, j, p).
        assert!(ind(0, 2, [9, 9, 9]) < ind(1, 0, [-9, -9, -9]));
        assert!(ind(1, 0, [0, 0, 0]) < ind(1, 1, [0, 0, 0]));
        assert!(ind(1, 1, [-1, 0, 0]) < ind(1, 1, [0, 0, 0]));
    }

    #[test]
    fn identity_and_zero() {
        let a = APoly::indeterminate(ind(0, 0, [0, 0, 0]));
        assert_eq!(a.add(&APoly::zero()), a);
        assert!(a.mul(&APoly::zero()).is_zero());
        assert_eq!(a.mul(&APoly::one()), a);
    }

    fn random_poly(rng: &mut StdRng) -> APoly {
        let mut p = APoly::zero();
        for _ in 0..rng.random_range(0..4) {
            let deg = rng.random_range(0..3);
            let mut m = Monomial::new();
            for _ in 0..deg {
                m.push(ind(
                    rng.random_range(0..3),
                    rng.random_range(0..3),
                    [rng.random_range(-2..3), 0, rng.random_range(-2..3)],
                ));
            }
            m.sort_unstable();
            let c = ExactScalar::rational(rng.random_range(-5..6), rng.random_range(1..5));
            p.insert(m, c);
        }
        p
    }

    #[test]
    fn ring_axioms_randomized() {
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let (x, y, z) = (
                random_poly(&mut rng),
                random_poly(&mut rng),
                random_poly(&mut rng),
            );
            // distributivity: (x + y) z = x z + y z
            assert_eq!(x.add(&y).mul(&z), x.mul(&z).add(&y.mul(&z)));
            // commutativity and associativity
            assert_eq!(x.mul(&y), y.mul(&x));
            assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            // conj is a ring involution
            assert_eq!(x.conj().conj(), x);
            assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        }
    }

    #[test]
    fn substitution_evaluates_exactly() {
        let x = ind(0, 0, [1, 0, 0]);
        let p = APoly::indeterminate(x);
        let mut asg = FxHashMap::default();
        asg.insert(x, ExactScalar::rational(3, 2));
        assert_eq!(p.substitute(&asg), ExactScalar::rational(3, 2));
        // Unassigned indeterminates default to zero; constants survive.
        let q = p.add(&APoly::constant(ExactScalar::int(7)));
        let empty = FxHashMap::default();
        assert_eq!(q.substitute(&empty), ExactScalar::int(7));
    }

    #[test]
    fn lie_derivative_is_a_derivation() {
        let (spec, _) = build_su_n(2).unwrap();
        let mut rng = StdRng::seed_from_u64(42);
        for _ in 0..25 {
            let p = random_poly(&mut rng);
            let q = random_poly(&mut rng);
            let a = rng.random_range(0..3);
            let n = Mode([rng.random_range(-1..2), rng.random_range(-1..2), 0]);
            let lhs = p.mul(&q).lie_derivative(a, &n, &spec);
            let rhs = p
                .lie_derivative(a, &n, &spec)
                .mul(&q)
                .add(&p.mul(&q.lie_derivative(a, &n, &spec)));
            assert_eq!(lhs, rhs);
        }
    }
}
