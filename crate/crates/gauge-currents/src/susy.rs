//! Mechanical verification of the supercharge identities and the gauge
//! covariance theorem for the interaction family.
//!
//! The quadratic commutators go through the operator identities
//! `[Q^2, x] = [Q, {Q, x}]` and `[Q^2, S] = {Q, [Q, S]}` (exact in any
//! associative algebra), with in-band filtered products; materializing the
//! full normal form of `Q^2` at the default window is out of reach, and the
//! guard-band comparison only needs the in-band part. The filtered and full
//! paths agree on small windows, which the test suite checks directly.

use crate::algebra::{
    guard_band_eq, k_quadratic, pairing_normalization, psi_of_form, q_element, residual_localization,
    s_element, AlgebraElement, Gen, GenKind, InBandFilter, RelationSet, Word,
};
use crate::apoly::{AInd, APoly};
use crate::forms::{
    build_b, current_to_form, ext_d, form_commutator, pair_dual, symbolic_potential, wedge,
    BParams, Current, CurrentMonomial, MatrixForm,
};
use crate::lie::Representation;
use crate::linalg::Matrix;
use crate::mode::{Mode, TruncationWindow};
use crate::scalar::{ExactScalar, KNum, Rat};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SusyError {
    #[error("commutator is not linear in the Clifford generators; witness word: {0}")]
    NotCliffordLinear(String),
    #[error("commutator is not affine in the potential; witness: {0}")]
    NotAffine(String),
}

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub lambda: i16,
    pub lambda_in: i16,
    pub pass: bool,
    /// Whether this case is a negative control (expected to fail).
    pub expected_fail: bool,
    /// Canonical text of the in-band residual (empty when passing).
    pub residual: String,
    /// Smallest sup-norm mode over residual words.
    pub residual_localization: Option<i16>,
    /// Derived constants and conventions surfaced by the check.
    pub notes: Vec<String>,
}

impl IdentityReport {
    fn from_residual(
        identity: impl Into<String>,
        window: &TruncationWindow,
        residual_in_band: AlgebraElement,
    ) -> IdentityReport {
        IdentityReport {
            identity: identity.into(),
            lambda: window.lambda,
            lambda_in: window.lambda_in,
            pass: residual_in_band.is_zero(),
            expected_fail: false,
            residual: if residual_in_band.is_zero() {
                String::new()
            } else {
                crate::algebra::print_element(&residual_in_band)
            },
            residual_localization: residual_localization(&residual_in_band),
            notes: Vec::new(),
        }
    }

    pub fn as_expected(&self) -> bool {
        self.pass != self.expected_fail
    }

    pub fn mark_expected_fail(mut self) -> IdentityReport {
        self.expected_fail = true;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> IdentityReport {
        self.notes.push(note.into());
        self
    }
}

fn final_filter(rel: &RelationSet) -> InBandFilter {
    InBandFilter::final_stage(rel.window.lambda_in, !rel.cocycle.is_identically_zero())
}

/// `{Q, psi^m_b} - 2 S^m_b` must vanish in the guard band (quadratic K).
pub fn check_q_psi(m: &Mode, b: usize, rel: &RelationSet, q: &AlgebraElement) -> IdentityReport {
    let psi = AlgebraElement::generator(Gen::psi(b, *m));
    let anti = q.anticommutator(&psi, rel);
    let rhs = s_element(m, b, rel, true).scale_scalar(&ExactScalar::int(2));
    let (_, residual) = guard_band_eq(&anti, &rhs, &rel.window);
    IdentityReport::from_residual(
        format!("Q_psi[b={},m={:?}]", b + 1, m),
        &rel.window,
        residual.in_band(&rel.window),
    )
}

/// The cocycle-weighted Clifford sum `sum_{n,a} c(A; T^n_a, T^m_b) psi^{-n}_a`,
/// truncated to the window.
fn q_s_rhs(m: &Mode, b: usize, rel: &RelationSet) -> AlgebraElement {
    let mut rhs = AlgebraElement::zero();
    for n in rel.window.modes() {
        for a in 0..rel.dim() {
            let c = rel.cocycle.value(a, &n, b, m);
            if !c.is_zero() {
                rhs.add_term(Word::from_slice(&[Gen::psi(a, n.neg())]), c);
            }
        }
    }
    rhs
}

/// `[Q, S^m_b] = sum_{n,a} c(A; T^n_a, T^m_b) psi^{-n}_a` in the guard band.
pub fn check_q_s(m: &Mode, b: usize, rel: &RelationSet, q: &AlgebraElement) -> IdentityReport {
    let s = s_element(m, b, rel, true);
    let f = final_filter(rel);
    let comm = q.commutator_filtered(&s, rel, &f);
    let rhs = q_s_rhs(m, b, rel).in_band(&rel.window);
    IdentityReport::from_residual(
        format!("Q_S[b={},m={:?}]", b + 1, m),
        &rel.window,
        comm.sub(&rhs).in_band(&rel.window),
    )
}

/// `[Q^2, psi^n_a] = 2 sum_{m,b} psi^m_b c(A; T^{-m}_b, T^n_a)`, computed as
/// `[Q, {Q, psi}]`.
pub fn check_q2_psi(n: &Mode, a: usize, rel: &RelationSet, q: &AlgebraElement) -> IdentityReport {
    let psi = AlgebraElement::generator(Gen::psi(a, *n));
    let inner = q.anticommutator(&psi, rel);
    let f = final_filter(rel);
    let lhs = q.commutator_filtered(&inner, rel, &f);
    let mut rhs = AlgebraElement::zero();
    for m in rel.window.modes() {
        for b in 0..rel.dim() {
            let c = rel.cocycle.value(b, &m.neg(), a, n);
            if !c.is_zero() {
                rhs.add_term(
                    Word::from_slice(&[Gen::psi(b, m)]),
                    c.scale(&ExactScalar::int(2)),
                );
            }
        }
    }
    IdentityReport::from_residual(
        format!("Q2_psi[a={},n={:?}]", a + 1, n),
        &rel.window,
        lhs.sub(&rhs.in_band(&rel.window)).in_band(&rel.window),
    )
}

/// `[Q^2, S^n_a] = 2 S^m_b c(A; T^{-m}_b, T^n_a)
///                - psi^m_b psi^p_c L^{-p}_c c(A; T^{-m}_b, T^n_a)`,
/// computed as `{Q, [Q, S]}` with a boundary-preserving intermediate.
pub fn check_q2_s(n: &Mode, a: usize, rel: &RelationSet, q: &AlgebraElement) -> IdentityReport {
    let s = s_element(n, a, rel, true);
    let t_exit = !rel.cocycle.is_identically_zero();
    // Keep boundary words that one more factor of Q (at most 3 Clifford
    // generators) can still cancel into the band.
    let inner_filter = InBandFilter::intermediate(rel.window.lambda_in, 3, t_exit);
    let inner = q.commutator_filtered(&s, rel, &inner_filter);
    let f = final_filter(rel);
    let lhs = q.anticommutator_filtered(&inner, rel, &f);

    let mut rhs = AlgebraElement::zero();
    for m in rel.window.modes() {
        for b in 0..rel.dim() {
            let c = rel.cocycle.value(b, &m.neg(), a, n);
            if !c.is_zero() {
                let s_mb = s_element(&m, b, rel, true);
                rhs.add_assign(
                    &s_mb.mul(&AlgebraElement::scalar(c.scale(&ExactScalar::int(2))), rel),
                );
            }
        }
    }
    if t_exit {
        for m in rel.window.modes() {
            for b in 0..rel.dim() {
                let c = rel.cocycle.value(b, &m.neg(), a, n);
                if c.is_zero() {
                    continue;
                }
                for p in rel.window.modes() {
                    for cc in 0..rel.dim() {
                        let lc = c.lie_derivative(cc, &p.neg(), &rel.spec);
                        if lc.is_zero() {
                            continue;
                        }
                        let word = AlgebraElement::from_raw_terms(
                            [(
                                Word::from_slice(&[Gen::psi(b, m), Gen::psi(cc, p)]),
                                lc.neg(),
                            )],
                            rel,
                        );
                        rhs.add_assign(&word);
                    }
                }
            }
        }
    }
    IdentityReport::from_residual(
        format!("Q2_S[a={},n={:?}]", a + 1, n),
        &rel.window,
        lhs.sub(&rhs.in_band(&rel.window)).in_band(&rel.window),
    )
}

/// `Q^2 = sum_n T^n_a T^{-n}_a + (1/2) sum c(A; T^n_a, T^m_b) psi^n_a psi^m_b`
/// in the guard band, with `Q^2 = (1/2){Q, Q}` computed through the filter.
pub fn check_q2_closed_form(rel: &RelationSet, q: &AlgebraElement) -> IdentityReport {
    let f = final_filter(rel);
    let q2 = q
        .anticommutator_filtered(q, rel, &f)
        .scale_scalar(&ExactScalar::rational(1, 2));

    let mut raw: Vec<(Word, APoly)> = Vec::new();
    for n in rel.window.modes() {
        for a in 0..rel.dim() {
            raw.push((
                Word::from_slice(&[Gen::t(a, n), Gen::t(a, n.neg())]),
                APoly::one(),
            ));
        }
    }
    if !rel.cocycle.is_identically_zero() {
        let half = ExactScalar::rational(1, 2);
        for n in rel.window.modes() {
            for m in rel.window.modes() {
                for a in 0..rel.dim() {
                    for b in 0..rel.dim() {
                        let c = rel.cocycle.value(a, &n, b, &m);
                        if !c.is_zero() {
                            raw.push((
                                Word::from_slice(&[Gen::psi(a, n), Gen::psi(b, m)]),
                                c.scale(&half),
                            ));
                        }
                    }
                }
            }
        }
    }
    let rhs = AlgebraElement::from_raw_terms(raw, rel).in_band(&rel.window);
    IdentityReport::from_residual(
        "Q2_closed_form",
        &rel.window,
        q2.sub(&rhs).in_band(&rel.window),
    )
}

/// The total current attached to a combination `X = sum X^a_m S^m_a`.
pub fn s_of_current(x: &Current, rel: &RelationSet, quadratic_k: bool) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (mono, c) in x {
        out.add_assign(
            &s_element(&mono.mode, mono.lie_index, rel, quadratic_k)
                .scale_scalar(c),
        );
    }
    out
}

/// `[Q, S(X)] = (1/24 pi^2) psi(dX ^ dA + dA ^ dX)` in the guard band; the
/// constant relating the two sides is derived, not read off, and lands in
/// the report.
pub fn check_remark_pairing(
    x: &Current,
    rel: &RelationSet,
    rep: &Representation,
    q: &AlgebraElement,
) -> IdentityReport {
    let s = s_of_current(x, rel, true);
    let f = final_filter(rel);
    let lhs = q.commutator_filtered(&s, rel, &f);

    let a_form = symbolic_potential(&rel.window, rep, rel.dim());
    let da = ext_d(&a_form).expect("potential is a 1-form");
    let xf = current_to_form(x, rep, 3);
    let dx = ext_d(&xf).expect("0-form");
    let w3 = wedge(&dx, &da)
        .expect("degree 3")
        .add(&wedge(&da, &dx).expect("degree 3"));
    let scale = pairing_normalization();
    let rhs = psi_of_form(&w3, rep, rel, &scale).in_band(&rel.window);

    IdentityReport::from_residual("remark_pairing", &rel.window, lhs.sub(&rhs).in_band(&rel.window))
        .with_note(format!(
            "derived pairing constant: {}",
            crate::algebra::scalar_text(&scale)
        ))
}

/// Result of the gauge-covariance extraction.
pub struct GaugeTransform {
    /// The transformed 1-form parameter, asserted equal to `[omega,X] + dX`.
    pub omega_prime: MatrixForm,
    /// Canonical representative of the A-independent part of `B'`.
    pub theta_prime: MatrixForm,
    /// The A-linear non-derivative remainder as a dual-pairing table:
    /// `(psi index, psi mode, A component) -> coefficient`. The split of
    /// this table into alpha', beta', gamma', phi' is not unique and is
    /// reported, not asserted.
    pub linear_rest: Vec<((usize, Mode), AInd, ExactScalar)>,
}

/// Verifies `[Q_B, S(X)] = psi(B'(A))` with `omega' = [omega, X] + dX` and
/// extracts the transformed data.
pub fn theorem_gauge_transform(
    params: &BParams,
    x: &Current,
    rel: &RelationSet,
    rep: &Representation,
    q: &AlgebraElement,
) -> Result<(GaugeTransform, IdentityReport), SusyError> {
    let a_form = symbolic_potential(&rel.window, rep, rel.dim());
    let scale = pairing_normalization();
    let b_form = build_b(params, &a_form).expect("valid parameters");
    let q_b = q.add(&psi_of_form(&b_form, rep, rel, &scale));
    let s = s_of_current(x, rel, true);
    let f = final_filter(rel);
    let e = q_b.commutator_filtered(&s, rel, &f);

    // The commutator must be linear in the Clifford generators with
    // coefficients affine in the potential.
    let mut table: Vec<((usize, Mode), APoly)> = Vec::new();
    for (w, c) in e.terms() {
        if w.len() != 1 || w[0].kind() != GenKind::Psi {
            return Err(SusyError::NotCliffordLinear(format!("{w:?}")));
        }
        if c.degree() > 1 {
            return Err(SusyError::NotAffine(format!("{c:?}")));
        }
        table.push(((w[0].lie_index(), w[0].mode()), c.clone()));
    }

    // Expected omega' and its Clifford image.
    let omega_prime = {
        let xf = current_to_form(x, rep, 3);
        form_commutator(&params.omega, &xf)
            .expect("1-form bracket")
            .add(&ext_d(&xf).expect("0-form"))
    };
    let expected_sandwich = {
        let da = ext_d(&a_form).expect("1-form");
        let w3 = wedge(&omega_prime, &da)
            .expect("degree 3")
            .add(&wedge(&da, &omega_prime).expect("degree 3"));
        psi_of_form(&w3, rep, rel, &scale)
    };

    // Remainder after removing the omega' sandwich: must carry no
    // derivative structure, i.e. its A-linear coefficients are constant
    // along the lines (psi mode q) - (A mode p) = const at fixed indices.
    let remainder = e.sub(&expected_sandwich.in_band(&rel.window));
    let mut lines: rustc_hash::FxHashMap<(usize, usize, usize, Mode), Vec<ExactScalar>> =
        rustc_hash::FxHashMap::default();
    let mut linear_rest = Vec::new();
    let mut theta_table: Vec<((usize, Mode), ExactScalar)> = Vec::new();
    for (w, c) in remainder.terms() {
        if w.len() != 1 || w[0].kind() != GenKind::Psi {
            return Err(SusyError::NotCliffordLinear(format!("{w:?}")));
        }
        let (a_idx, qmode) = (w[0].lie_index(), w[0].mode());
        for (mono, coeff) in c.terms() {
            match mono.len() {
                0 => theta_table.push(((a_idx, qmode), coeff.clone())),
                1 => {
                    let var = mono[0];
                    let line_key = (
                        a_idx,
                        var.lie_index(),
                        var.spatial_index(),
                        qmode.sub(&var.mode()),
                    );
                    lines.entry(line_key).or_default().push(coeff.clone());
                    linear_rest.push(((a_idx, qmode), var, coeff.clone()));
                }
                _ => return Err(SusyError::NotAffine(format!("{c:?}"))),
            }
        }
    }
    let mut line_constant = true;
    for samples in lines.values() {
        if samples.windows(2).any(|p| p[0] != p[1]) {
            line_constant = false;
        }
    }

    // Canonical A-free representative: with -tr(rho_a rho_b) = delta_ab the
    // table inverts to theta'_{-q} = -(2pi)^{-3} sum_a c^a rho_a (up to the
    // pairing normalization, folded in here).
    let n_mat = rep.matrices[0].rows;
    let mut theta_prime = MatrixForm::zero(3, 3, n_mat);
    let inv_norm = ExactScalar::term(-3, KNum::rational(1, 8)).mul(
        &scale.inv().expect("pairing scale invertible"),
    );
    for ((a_idx, qmode), coeff) in &theta_table {
        let m = crate::forms::AMatrix::from_scalar_matrix(
            &rep.matrices[*a_idx].scale(&coeff.mul(&inv_norm).neg()),
        );
        theta_prime.add_term(*qmode, 0b111, m);
    }

    let residual = if line_constant {
        AlgebraElement::zero()
    } else {
        remainder.clone()
    };
    let report = IdentityReport::from_residual("theorem_gauge", &rel.window, residual)
        .with_note("omega' matched against [omega, X] + dX exactly".to_string());
    Ok((
        GaugeTransform {
            omega_prime,
            theta_prime,
            linear_rest,
        },
        report,
    ))
}

/// Dimension of the kernel of `X -> [omega, X] + dX` on window-truncated
/// maps; `based` restricts to maps with vanishing Fourier sum.
pub fn based_action_kernel(
    omega: &MatrixForm,
    rel: &RelationSet,
    rep: &Representation,
    based: bool,
) -> usize {
    let modes = rel.window.modes();
    let dim = rel.dim();
    let cols = modes.len() * dim;
    // Output coordinates: 1-form coefficient matrices over (mode, axis).
    let mut rows: Vec<Vec<ExactScalar>> = Vec::new();
    let mut row_index: rustc_hash::FxHashMap<(Mode, usize, usize, usize), usize> =
        rustc_hash::FxHashMap::default();
    let n_mat = rep.matrices[0].rows;
    let mut touch = |rows: &mut Vec<Vec<ExactScalar>>,
                     row_index: &mut rustc_hash::FxHashMap<(Mode, usize, usize, usize), usize>,
                     key: (Mode, usize, usize, usize)|
     -> usize {
        *row_index.entry(key).or_insert_with(|| {
            rows.push(vec![ExactScalar::zero(); cols]);
            rows.len() - 1
        })
    };

    for (col_m, n) in modes.iter().enumerate() {
        for a in 0..dim {
            let col = col_m * dim + a;
            let x: Current = vec![(
                CurrentMonomial {
                    lie_index: a,
                    mode: *n,
                },
                ExactScalar::one(),
            )];
            let image = crate::forms::gauge_variation_a(omega, &x, rep).expect("degree 1");
            for ((mode, idx), mat) in image.terms() {
                let j = idx.trailing_zeros() as usize;
                for r in 0..n_mat {
                    for s in 0..n_mat {
                        let v = mat.at(r, s);
                        if v.is_zero() {
                            continue;
                        }
                        let val = v.as_constant().expect("concrete 1-form");
                        let row = touch(&mut rows, &mut row_index, (*mode, j, r, s));
                        rows[row][col] = rows[row][col].add(&val);
                    }
                }
            }
        }
    }
    if based {
        // sum_n X_n = 0 component-wise in the algebra.
        for a in 0..dim {
            let mut row = vec![ExactScalar::zero(); cols];
            for (col_m, _) in modes.iter().enumerate() {
                row[col_m * dim + a] = ExactScalar::one();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return cols;
    }
    Matrix::from_rows(rows).nullity()
}

/// The multiplicity probe: at CAR multiplicity `mu` the anticommutator
/// `{Q, psi^m_b}` equals `2 mu T + (2 mu + 4)/3 K` rather than `2 S`. The
/// defect at `mu = 2` is computed and reported, never asserted.
pub fn multiplicity_probe(rel_mu2: &RelationSet) -> String {
    let q = q_element(rel_mu2, true);
    let m = Mode::ZERO;
    let psi = AlgebraElement::generator(Gen::psi(0, m));
    let anti = q.anticommutator(&psi, rel_mu2);
    let two_s = s_element(&m, 0, rel_mu2, true).scale_scalar(&ExactScalar::int(2));
    let defect = anti.sub(&two_s).in_band(&rel_mu2.window);
    // Compare against the predicted (2mu-2)/3 * (T-free) shift: report the
    // K-part coefficient by probing against 2K alone.
    let k = k_quadratic(&m, 0, rel_mu2);
    let mu = rel_mu2.multiplicity;
    let predicted = AlgebraElement::generator(Gen::t(0, m))
        .scale_scalar(&ExactScalar::int(2 * mu - 2))
        .add(&k.scale_scalar(&ExactScalar::from_rat(Rat::new(2 * mu - 2, 3))));
    let matches = guard_band_eq(&defect, &predicted, &rel_mu2.window).0;
    format!(
        "multiplicity mu={mu}: {{Q,psi}} - 2S defect in band {} the prediction 2(mu-1)T + (2(mu-1)/3)K",
        if matches { "matches" } else { "does NOT match" }
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::CocycleProvider;
    use crate::lie::{adjoint_rep, build_su_n};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn rel_su2(lambda: i16, lambda_in: i16) -> RelationSet {
        let (spec, rep) = build_su_n(2).unwrap();
        RelationSet::new(
            spec,
            CocycleProvider::new_3d(&rep, 3),
            TruncationWindow::new(3, lambda, lambda_in),
        )
    }

    fn rel_su2_adjoint(lambda: i16, lambda_in: i16) -> RelationSet {
        let (spec, _) = build_su_n(2).unwrap();
        let adj = adjoint_rep(&spec);
        RelationSet::new(
            spec,
            CocycleProvider::new_3d(&adj, 3),
            TruncationWindow::new(3, lambda, lambda_in),
        )
    }

    fn rel_su3(lambda: i16, lambda_in: i16) -> RelationSet {
        let (spec, rep) = build_su_n(3).unwrap();
        RelationSet::new(
            spec,
            CocycleProvider::new_3d(&rep, 8),
            TruncationWindow::new(3, lambda, lambda_in),
        )
    }

    #[test]
    fn q_psi_identity_small_window() {
        // Full-path check at lambda = 2: every guard mode and index.
        let rel = rel_su2(2, 1);
        let q = q_element(&rel, true);
        for m in rel.window.guard_modes() {
            for b in 0..3 {
                let report = check_q_psi(&m, b, &rel, &q);
                assert!(report.pass, "Q_psi failed: {}", report.residual);
            }
        }
    }

    #[test]
    fn q_psi_negative_control_trips() {
        // At lambda = lambda_in the Clifford sums cannot rebuild the
        // quadratic generator and the defect lands inside the band.
        let (spec, rep) = build_su_n(2).unwrap();
        let rel = RelationSet::new(
            spec,
            CocycleProvider::new_3d(&rep, 3),
            TruncationWindow::new(3, 1, 1),
        );
        let q = q_element(&rel, true);
        let mut tripped = false;
        for m in rel.window.guard_modes() {
            if !check_q_psi(&m, 0, &rel, &q).pass {
                tripped = true;
            }
        }
        assert!(tripped, "negative control harmless at tight window");
    }

    #[test]
    fn q_s_identity_adjoint_and_abelian_controls() {
        // Adjoint representation: cocycle vanishes identically, so [Q, S]
        // must be guard-band zero outright.
        let rel = rel_su2_adjoint(2, 1);
        let q = q_element(&rel, true);
        for m in [Mode::ZERO, Mode([1, 0, 0])] {
            for b in 0..3 {
                let report = check_q_s(&m, b, &rel, &q);
                assert!(report.pass, "adjoint Q_S failed: {}", report.residual);
            }
        }
    }

    #[test]
    fn q_s_identity_su3_with_nonzero_cocycle() {
        let rel = rel_su3(2, 1);
        let q = q_element(&rel, true);
        let report = check_q_s(&Mode::ZERO, 0, &rel, &q);
        assert!(report.pass, "su3 Q_S failed: {}", report.residual);
        // The right-hand side itself is nonzero: the check is not vacuous.
        assert!(!q_s_rhs(&Mode::ZERO, 0, &rel).in_band(&rel.window).is_zero());
    }

    #[test]
    fn q2_identities_small_window() {
        let rel = rel_su2(2, 1);
        let q = q_element(&rel, true);
        let r1 = check_q2_psi(&Mode::ZERO, 0, &rel, &q);
        assert!(r1.pass, "Q2_psi failed: {}", r1.residual);
        let r2 = check_q2_s(&Mode::ZERO, 1, &rel, &q);
        assert!(r2.pass, "Q2_S failed: {}", r2.residual);
        let r3 = check_q2_closed_form(&rel, &q);
        assert!(r3.pass, "Q2 closed form failed: {}", r3.residual);
    }

    #[test]
    fn q2_closed_form_via_full_product_small_window() {
        // Cross-validate the filtered route against the unfiltered product
        // at a window where the full computation is affordable.
        let (spec, rep) = build_su_n(2).unwrap();
        let rel = RelationSet::new(
            spec,
            CocycleProvider::new_3d(&rep, 3),
            TruncationWindow::new(3, 1, 1),
        );
        let q = q_element(&rel, true);
        let full = q.mul(&q, &rel).in_band(&rel.window);
        let f = InBandFilter::final_stage(1, false);
        let filtered = q.anticommutator_filtered(&q, &rel, &f)
            .scale_scalar(&ExactScalar::rational(1, 2));
        assert_eq!(full, filtered);
    }

    #[test]
    fn remark_pairing_和_constant() {
        let rel = rel_su3(2, 1);
        let q = q_element(&rel, true);
        let x: Current = vec![(
            CurrentMonomial {
                lie_index: 0,
                mode: Mode([1, 0, 0]),
            },
            ExactScalar::one(),
        )];
        let report = check_remark_pairing(&x, &rel, &rep_of(&rel), &q);
        assert!(report.pass, "remark pairing failed: {}", report.residual);
        assert!(report.notes[0].contains("1/24"));
    }

    fn rep_of(rel: &RelationSet) -> Representation {
        let n = if rel.dim() == 3 { 2 } else { 3 };
        build_su_n(n).unwrap().1
    }

    #[test]
    fn gauge_theorem_zero_params_gives_dx() {
        let rel = rel_su2(2, 1);
        let (_, rep) = build_su_n(2).unwrap();
        let q = q_element(&rel, true);
        let params = BParams::zero(3, 2);
        let x: Current = vec![(
            CurrentMonomial {
                lie_index: 1,
                mode: Mode([0, 1, 0]),
            },
            ExactScalar::one(),
        )];
        let (gt, report) = theorem_gauge_transform(&params, &x, &rel, &rep, &q).unwrap();
        assert!(report.pass);
        let dx = ext_d(&current_to_form(&x, &rep, 3)).unwrap();
        assert_eq!(gt.omega_prime, dx);
        // X = 0 leaves the parameters unchanged (omega' = omega = 0).
        let (gt0, r0) = theorem_gauge_transform(&params, &Vec::new(), &rel, &rep, &q).unwrap();
        assert!(r0.pass);
        assert!(gt0.omega_prime.is_zero());
    }

    #[test]
    fn based_kernel_dimensions() {
        let rel = rel_su2(1, 1);
        let (_, rep) = build_su_n(2).unwrap();
        // omega = 0: based maps with dX = 0 are zero; kernel dimension 0.
        let zero = MatrixForm::zero(1, 3, 2);
        assert_eq!(based_action_kernel(&zero, &rel, &rep, true), 0);
        // Non-based maps with omega = 0: the constants survive, dim g.
        assert_eq!(based_action_kernel(&zero, &rel, &rep, false), 3);
    }

    #[test]
    fn multiplicity_probe_reports() {
        let (spec, rep) = build_su_n(2).unwrap();
        let rel = RelationSet::new(
            spec,
            CocycleProvider::new_3d(&rep, 3),
            TruncationWindow::new(3, 2, 1),
        )
        .with_multiplicity(2);
        let note = multiplicity_probe(&rel);
        assert!(note.contains("matches"), "unexpected probe result: {note}");
    }
}
