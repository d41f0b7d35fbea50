//! Finite-dimensional Lie-algebra data: structure constants, the invariant
//! bilinear form, representations, the adjoint Casimir, and the symmetric
//! trace symbol that feeds the extension cocycle.
//!
//! Bases are orthonormalized so that `-tr(rho(T_a) rho(T_b)) = delta_ab` in
//! the fundamental representation. With that normalization the free-fermion
//! level of the fundamental comes out 1 and the adjoint Casimir equals the
//! dual Coxeter number, which is what the downstream measurements pin.

use crate::linalg::Matrix;
use crate::scalar::{ExactScalar, KNum, Rat};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LieError {
    #[error("su(N) requires N >= 2, got {0}")]
    RankTooSmall(usize),
    #[error("su({0}) needs sqrt({1}) which the scalar field Q(i,sqrt2,sqrt3) lacks")]
    FieldTooSmall(usize, u64),
    #[error("adjoint Casimir is not a scalar multiple of the identity (algebra not simple?)")]
    CasimirNotScalar,
    #[error("constructed basis failed invariant `{0}`")]
    InvariantViolation(&'static str),
}

/// Structure constants, bilinear form, and labels for a compact Lie algebra
/// in an orthonormal basis.
#[derive(Clone)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    /// `lambda[a][b][c]` is the coefficient of `T_c` in `[T_a, T_b]`.
    pub structure_constants: Vec<Vec<Vec<ExactScalar>>>,
    /// The invariant form on basis pairs; the identity for orthonormal bases.
    pub bilinear_form: Vec<Vec<ExactScalar>>,
    pub basis_labels: Vec<String>,
}

#[derive(Clone)]
pub struct Representation {
    pub matrices: Vec<Matrix>,
    pub is_antihermitian: bool,
    pub is_real: bool,
}

impl LieAlgebraSpec {
    #[inline]
    pub fn lambda(&self, a: usize, b: usize, c: usize) -> &ExactScalar {
        &self.structure_constants[a][b][c]
    }

    /// The nonzero `(c, lambda^c_ab)` pairs for a fixed `(a, b)`.
    pub fn bracket_row(&self, a: usize, b: usize) -> Vec<(usize, ExactScalar)> {
        self.structure_constants[a][b]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect()
    }

    /// Checks antisymmetry, the Jacobi identity, invariance of the form, and
    /// orthonormality. Returns the first violated invariant.
    pub fn validate(&self) -> Result<(), LieError> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                let expect = if a == b {
                    ExactScalar::one()
                } else {
                    ExactScalar::zero()
                };
                if self.bilinear_form[a][b] != expect {
                    return Err(LieError::InvariantViolation("orthonormal basis"));
                }
                for c in 0..n {
                    if self.lambda(a, b, c) != &self.lambda(b, a, c).neg() {
                        return Err(LieError::InvariantViolation("antisymmetry"));
                    }
                }
            }
        }
        // Jacobi: sum_e (l^e_ab l^f_ec + l^e_bc l^f_ea + l^e_ca l^f_eb) = 0.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for f in 0..n {
                        let mut s = ExactScalar::zero();
                        for e in 0..n {
                            s = s.add(&self.lambda(a, b, e).mul(self.lambda(e, c, f)));
                            s = s.add(&self.lambda(b, c, e).mul(self.lambda(e, a, f)));
                            s = s.add(&self.lambda(c, a, e).mul(self.lambda(e, b, f)));
                        }
                        if !s.is_zero() {
                            return Err(LieError::InvariantViolation("Jacobi"));
                        }
                    }
                }
            }
        }
        // Invariance: <[T_a,T_b],T_c> + <T_b,[T_a,T_c]> = 0, i.e. the
        // constants are antisymmetric under b <-> c as well.
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let s = self.lambda(a, b, c).add(self.lambda(a, c, b));
                    if !s.is_zero() {
                        return Err(LieError::InvariantViolation("form invariance"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The antihermitian orthonormal su(N) basis: off-diagonal pairs
/// `(E_jk - E_kj)/sqrt2`, `i(E_jk + E_kj)/sqrt2` for j < k, then Cartan
/// elements `(i/sqrt(l(l+1))) diag(1,...,1,-l,0,...)`.
pub fn build_su_n(n: usize) -> Result<(LieAlgebraSpec, Representation), LieError> {
    if n < 2 {
        return Err(LieError::RankTooSmall(n));
    }
    // 1/sqrt(l(l+1)) must lie in Q(sqrt2, sqrt3): holds for l <= 3.
    if n > 4 {
        return Err(LieError::FieldTooSmall(n, (n * (n - 1)) as u64));
    }

    let inv_sqrt2 = ExactScalar::from_knum(KNum::sqrt2().scale(&Rat::new(1, 2)));
    let mut matrices = Vec::new();
    let mut labels = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            let mut x = Matrix::zero(n, n);
            *x.at_mut(j, k) = inv_sqrt2.clone();
            *x.at_mut(k, j) = inv_sqrt2.neg();
            matrices.push(x);
            labels.push(format!("X{}{}", j + 1, k + 1));

            let i_inv_sqrt2 = inv_sqrt2.mul(&ExactScalar::i());
            let mut y = Matrix::zero(n, n);
            *y.at_mut(j, k) = i_inv_sqrt2.clone();
            *y.at_mut(k, j) = i_inv_sqrt2;
            matrices.push(y);
            labels.push(format!("Y{}{}", j + 1, k + 1));
        }
    }
    for l in 1..n {
        // 1/sqrt(l(l+1)) for l = 1,2,3: sqrt2/2, sqrt6/6, sqrt3/6.
        let norm = match l {
            1 => KNum::sqrt2().scale(&Rat::new(1, 2)),
            2 => KNum::sqrt6().scale(&Rat::new(1, 6)),
            3 => KNum::sqrt3().scale(&Rat::new(1, 6)),
            _ => unreachable!(),
        };
        let coef = ExactScalar::from_knum(norm).mul(&ExactScalar::i());
        let mut h = Matrix::zero(n, n);
        for j in 0..l {
            *h.at_mut(j, j) = coef.clone();
        }
        *h.at_mut(l, l) = coef.scale_rat(&Rat::int(l as i128)).neg();
        matrices.push(h);
        labels.push(format!("H{l}"));
    }

    let dim = n * n - 1;
    debug_assert_eq!(matrices.len(), dim);

    // lambda^c_ab = <[T_a, T_b], T_c> with <X, Y> = -tr(XY).
    let mut lambda = vec![vec![vec![ExactScalar::zero(); dim]; dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let comm = matrices[a].commutator(&matrices[b]);
            for (c, m_c) in matrices.iter().enumerate() {
                let v = comm.mul(m_c).trace().neg();
                if v != v.conj() {
                    return Err(LieError::InvariantViolation("real structure constants"));
                }
                lambda[a][b][c] = v;
            }
            // The projection must recover the commutator exactly.
            let mut rebuilt = Matrix::zero(n, n);
            for c in 0..dim {
                if !lambda[a][b][c].is_zero() {
                    rebuilt = rebuilt.add(&matrices[c].scale(&lambda[a][b][c]));
                }
            }
            if rebuilt != comm {
                return Err(LieError::InvariantViolation("commutator closure"));
            }
        }
    }

    let mut form = vec![vec![ExactScalar::zero(); dim]; dim];
    for (a, m_a) in matrices.iter().enumerate() {
        for (b, m_b) in matrices.iter().enumerate() {
            form[a][b] = m_a.mul(m_b).trace().neg();
        }
        if matrices[a].dagger() != matrices[a].neg() {
            return Err(LieError::InvariantViolation("antihermitian generators"));
        }
    }

    let spec = LieAlgebraSpec {
        dim,
        structure_constants: lambda,
        bilinear_form: form,
        basis_labels: labels,
    };
    spec.validate()?;
    let rep = Representation {
        matrices,
        is_antihermitian: true,
        is_real: false,
    };
    Ok((spec, rep))
}

/// The adjoint representation: `(ad T_a)^c_b = lambda^c_ab`.
pub fn adjoint_rep(spec: &LieAlgebraSpec) -> Representation {
    let dim = spec.dim;
    let mut matrices = Vec::with_capacity(dim);
    let mut is_real = true;
    for a in 0..dim {
        let mut m = Matrix::zero(dim, dim);
        for b in 0..dim {
            for c in 0..dim {
                let v = spec.lambda(a, b, c).clone();
                if v != v.conj() {
                    is_real = false;
                }
                *m.at_mut(c, b) = v;
            }
        }
        matrices.push(m);
    }
    Representation {
        matrices,
        is_antihermitian: true,
        is_real,
    }
}

/// The dual Coxeter number read off the adjoint Casimir:
/// `sum_b (ad T_b)^2 = -2 kappa Id` in the orthonormal basis.
pub fn casimir_dual_coxeter(spec: &LieAlgebraSpec) -> Result<ExactScalar, LieError> {
    let adj = adjoint_rep(spec);
    let mut sum = Matrix::zero(spec.dim, spec.dim);
    for m in &adj.matrices {
        sum = sum.add(&m.mul(m));
    }
    let c = sum
        .as_scalar_multiple_of_identity()
        .ok_or(LieError::CasimirNotScalar)?;
    Ok(c.scale_rat(&Rat::new(-1, 2)))
}

/// The symmetric trace symbol `tr rho(T_c)(rho(T_a) rho(T_b) + rho(T_b) rho(T_a))`.
pub fn d_symbol(rep: &Representation, a: usize, b: usize, c: usize) -> ExactScalar {
    rep.matrices[c]
        .mul(&rep.matrices[a].anticommutator(&rep.matrices[b]))
        .trace()
}

/// Precomputed `d`-symbol table; the cocycle consumes this.
pub struct DSymbolTable {
    pub dim: usize,
    values: Vec<ExactScalar>,
    pub all_zero: bool,
}

impl DSymbolTable {
    pub fn build(rep: &Representation, dim: usize) -> DSymbolTable {
        let mut values = Vec::with_capacity(dim * dim * dim);
        let mut all_zero = true;
        for a in 0..dim {
            for b in 0..dim {
                let anti = rep.matrices[a].anticommutator(&rep.matrices[b]);
                for c in 0..dim {
                    let v = rep.matrices[c].mul(&anti).trace();
                    all_zero &= v.is_zero();
                    values.push(v);
                }
            }
        }
        DSymbolTable { dim, values, all_zero }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> &ExactScalar {
        &self.values[(a * self.dim + b) * self.dim + c]
    }
}
