//! The symbolic operator algebra: canonically ordered words in the
//! generators `T^n_a`, `K^n_a`, `psi^n_a` over gauge-potential polynomials,
//! rewritten by the (anti)commutation relations
//!
//! ```text
//! psi^n_a psi^m_b + psi^m_b psi^n_a = 2 mu delta_ab delta_{n,-m}
//! [K^n_a, psi^m_b] = sum_c lambda^c_ab psi^{n+m}_c
//! [K^n_a, K^m_b]   = sum_c lambda^c_ab K^{n+m}_c
//! [T^n_a, T^m_b]   = sum_c lambda^c_ab T^{n+m}_c + c(A; T^n_a, T^m_b) 1
//! [T, psi] = [T, K] = 0
//! ```
//!
//! The `T` generators additionally act on the coefficient ring by the
//! infinitesimal gauge transformation: `T^n_a f(A) = f(A) T^n_a + (L^n_a f)(A)`.
//! That crossed-product rule is what makes the six-term cocycle identity the
//! Jacobi identity of the `T` sector.

mod builders;
mod engine;
mod parse;

pub use builders::{
    k_quadratic, pairing_normalization, psi_of_form, q_b_element, q_element, s_element,
};
pub use engine::InBandFilter;
pub use parse::{
    parse_apoly, parse_element, parse_scalar, print_apoly, print_element, scalar_text, ParseError,
};

use crate::apoly::APoly;
use crate::cocycle::CocycleProvider;
use crate::lie::LieAlgebraSpec;
use crate::mode::{Mode, TruncationWindow};
use crate::scalar::ExactScalar;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;
use std::fmt;

/// Generator kinds in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GenKind {
    T = 0,
    K = 1,
    Psi = 2,
}

/// A packed generator: kind (2 bits), mode (3 x 7 bits, biased), lie index
/// (6 bits). Integer order realizes the canonical total order: kind rank,
/// then mode lexicographically, then index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen(pub u32);

impl Gen {
    pub fn new(kind: GenKind, lie_index: usize, mode: Mode) -> Gen {
        assert!(lie_index < 64, "lie index exceeds packing range");
        let mut v = (kind as u32) << 27;
        for (k, c) in mode.0.iter().enumerate() {
            let b = (*c as i32) + 64;
            assert!((0..128).contains(&b), "generator mode exceeds packing range");
            v |= (b as u32) << (20 - 7 * k);
        }
        v |= lie_index as u32;
        Gen(v)
    }

    pub fn t(a: usize, n: Mode) -> Gen {
        Gen::new(GenKind::T, a, n)
    }

    pub fn k(a: usize, n: Mode) -> Gen {
        Gen::new(GenKind::K, a, n)
    }

    pub fn psi(a: usize, n: Mode) -> Gen {
        Gen::new(GenKind::Psi, a, n)
    }

    pub fn kind(&self) -> GenKind {
        match self.0 >> 27 {
            0 => GenKind::T,
            1 => GenKind::K,
            _ => GenKind::Psi,
        }
    }

    pub fn lie_index(&self) -> usize {
        (self.0 & 63) as usize
    }

    pub fn mode(&self) -> Mode {
        let c = |k: u32| (((self.0 >> (20 - 7 * k)) & 127) as i32 - 64) as i16;
        Mode([c(0), c(1), c(2)])
    }

    fn with_mode(&self, m: Mode) -> Gen {
        Gen::new(self.kind(), self.lie_index(), m)
    }
}

impl fmt::Debug for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind() {
            GenKind::T => "T",
            GenKind::K => "K",
            GenKind::Psi => "psi",
        };
        let m = self.mode();
        write!(
            f,
            "{k}[{};{},{},{}]",
            self.lie_index() + 1,
            m.0[0],
            m.0[1],
            m.0[2]
        )
    }
}

/// An ordered product of generators.
pub type Word = SmallVec<[Gen; 10]>;

/// Number of Clifford factors mod 2.
pub fn word_parity(w: &[Gen]) -> u8 {
    (w.iter().filter(|g| g.kind() == GenKind::Psi).count() % 2) as u8
}

/// The relation set: structure constants, cocycle provider, CAR
/// multiplicity, and the truncation window.
pub struct RelationSet {
    pub spec: LieAlgebraSpec,
    pub cocycle: CocycleProvider,
    pub window: TruncationWindow,
    /// Scales the Clifford delta term: `{psi, psi} = 2 mu delta delta`.
    pub multiplicity: i128,
}

impl RelationSet {
    pub fn new(
        spec: LieAlgebraSpec,
        cocycle: CocycleProvider,
        window: TruncationWindow,
    ) -> RelationSet {
        RelationSet {
            spec,
            cocycle,
            window,
            multiplicity: 1,
        }
    }

    pub fn with_multiplicity(mut self, mu: i128) -> RelationSet {
        self.multiplicity = mu;
        self
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }
}

/// A canonically ordered sum of words with polynomial coefficients.
#[derive(Clone, Default)]
pub struct AlgebraElement {
    terms: FxHashMap<Word, APoly>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        self.terms
            .iter()
            .all(|(w, c)| other.terms.get(w).map_or(false, |d| c == d))
    }
}
impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero() -> AlgebraElement {
        AlgebraElement::default()
    }

    pub fn one() -> AlgebraElement {
        AlgebraElement::scalar(APoly::one())
    }

    pub fn scalar(c: APoly) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        e.add_term(Word::new(), c);
        e
    }

    /// A single generator as an element.
    pub fn generator(g: Gen) -> AlgebraElement {
        let mut e = AlgebraElement::zero();
        e.add_term(Word::from_slice(&[g]), APoly::one());
        e
    }

    /// Builds an element from raw words, reducing each to canonical form.
    pub fn from_raw_terms(
        terms: impl IntoIterator<Item = (Word, APoly)>,
        rel: &RelationSet,
    ) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (w, c) in terms {
            engine::reduce_word_into(rel, c, &w, &mut acc, None);
        }
        acc.prune();
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &APoly)> {
        self.terms.iter()
    }

    /// Terms in the deterministic canonical order (for printing/reports).
    pub fn sorted_terms(&self) -> Vec<(&Word, &APoly)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.cmp(b));
        v
    }

    pub fn coeff(&self, w: &Word) -> APoly {
        self.terms.get(w).cloned().unwrap_or_else(APoly::zero)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: APoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn add(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, o: &AlgebraElement) {
        for (w, c) in &o.terms {
            self.add_term(w.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &APoly) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        let mut out = AlgebraElement::zero();
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.mul(c));
        }
        out
    }

    pub fn scale_scalar(&self, c: &ExactScalar) -> AlgebraElement {
        self.scale(&APoly::constant(c.clone()))
    }

    /// Full product in canonical form.
    pub fn mul(&self, o: &AlgebraElement, rel: &RelationSet) -> AlgebraElement {
        engine::mul_filtered(self, o, rel, None)
    }

    /// Product with in-band pruning; see `InBandFilter` for the soundness
    /// contract.
    pub fn mul_with_filter(
        &self,
        o: &AlgebraElement,
        rel: &RelationSet,
        filter: &InBandFilter,
    ) -> AlgebraElement {
        engine::mul_filtered(self, o, rel, Some(filter))
    }

    pub fn commutator(&self, o: &AlgebraElement, rel: &RelationSet) -> AlgebraElement {
        self.mul(o, rel).sub(&o.mul(self, rel))
    }

    pub fn anticommutator(&self, o: &AlgebraElement, rel: &RelationSet) -> AlgebraElement {
        self.mul(o, rel).add(&o.mul(self, rel))
    }

    pub fn commutator_filtered(
        &self,
        o: &AlgebraElement,
        rel: &RelationSet,
        filter: &InBandFilter,
    ) -> AlgebraElement {
        self.mul_with_filter(o, rel, filter)
            .sub(&o.mul_with_filter(self, rel, filter))
    }

    pub fn anticommutator_filtered(
        &self,
        o: &AlgebraElement,
        rel: &RelationSet,
        filter: &InBandFilter,
    ) -> AlgebraElement {
        self.mul_with_filter(o, rel, filter)
            .add(&o.mul_with_filter(self, rel, filter))
    }

    /// The star operation: an antilinear antihomomorphism with
    /// `psi* = psi^{-n}`, `T* = -T^{-n}`, `K* = -K^{-n}`, and complex
    /// conjugation (including `A[c;j;p] -> A[c;j;-p]`) on coefficients.
    ///
    /// `star(c w) = star(w) conj(c)`: the conjugated coefficient sits on the
    /// right of the reversed word and is carried back to the left through
    /// the gauge action of any `T` generators it crosses.
    pub fn star(&self, rel: &RelationSet) -> AlgebraElement {
        let mut acc = AlgebraElement::zero();
        for (w, c) in &self.terms {
            let mut rw = Word::new();
            let mut sign_flips = 0usize;
            for g in w.iter().rev() {
                let m = g.mode().neg();
                if g.kind() != GenKind::Psi {
                    sign_flips += 1;
                }
                rw.push(g.with_mode(m));
            }
            let mut coeff = c.conj();
            if sign_flips % 2 == 1 {
                coeff = coeff.neg();
            }
            // star(w) * conj(c): the scalar starts on the right of the
            // reversed word; the product carries it back to the left through
            // the gauge action of any T generators it crosses.
            let mut rev = AlgebraElement::zero();
            rev.add_term(rw, APoly::one());
            acc.add_assign(&rev.mul(&AlgebraElement::scalar(coeff), rel));
        }
        acc.prune();
        acc
    }

    /// Splits into (inside, outside) the guard band: a word is inside when
    /// every generator mode has sup-norm <= lambda_in.
    pub fn split_guard_band(&self, window: &TruncationWindow) -> (AlgebraElement, AlgebraElement) {
        let mut inside = AlgebraElement::zero();
        let mut outside = AlgebraElement::zero();
        for (w, c) in &self.terms {
            let in_band = w.iter().all(|g| window.in_guard_band(&g.mode()));
            if in_band {
                inside.add_term(w.clone(), c.clone());
            } else {
                outside.add_term(w.clone(), c.clone());
            }
        }
        (inside, outside)
    }

    /// The in-band projection.
    pub fn in_band(&self, window: &TruncationWindow) -> AlgebraElement {
        self.split_guard_band(window).0
    }
}

/// Guard-band equality: true iff `x - y` contains only words touching a mode
/// of sup-norm > lambda_in. Returns the residual for inspection.
pub fn guard_band_eq(
    x: &AlgebraElement,
    y: &AlgebraElement,
    window: &TruncationWindow,
) -> (bool, AlgebraElement) {
    let residual = x.sub(y);
    let (inside, _) = residual.split_guard_band(window);
    (inside.is_zero(), residual)
}

/// Smallest sup-norm of the mode content over residual words; `None` for an
/// empty residual. Reported as the localization of a failure.
pub fn residual_localization(residual: &AlgebraElement) -> Option<i16> {
    residual
        .terms()
        .map(|(w, _)| w.iter().map(|g| g.mode().sup_norm()).max().unwrap_or(0))
        .min()
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?})")?;
            for g in w.iter() {
                write!(f, "*{g:?}")?;
            }
        }
        Ok(())
    }
}
