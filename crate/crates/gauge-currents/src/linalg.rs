//! Dense exact matrices over the scalar field, plus the little linear
//! algebra the build needs: products, commutators, traces, and exact
//! nullspace dimensions by fraction-free style Gaussian elimination.

use crate::scalar::ExactScalar;
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![ExactScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = ExactScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut ExactScalar {
        &mut self.data[i * self.cols + j]
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&o.data) {
            *a = a.add(b);
        }
        m
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&o.data) {
            *a = a.sub(b);
        }
        m
    }

    pub fn neg(&self) -> Matrix {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = a.neg();
        }
        m
    }

    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = a.mul(c);
        }
        m
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let mut m = Matrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = m.at(i, j).add(&a.mul(b));
                    *m.at_mut(i, j) = cur;
                }
            }
        }
        m
    }

    pub fn commutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Matrix) -> Matrix {
        self.mul(o).add(&o.mul(self))
    }

    pub fn trace(&self) -> ExactScalar {
        assert_eq!(self.rows, self.cols);
        let mut t = ExactScalar::zero();
        for k in 0..self.rows {
            t = t.add(self.at(k, k));
        }
        t
    }

    /// Conjugate transpose (entries conjugated, indices swapped).
    pub fn dagger(&self) -> Matrix {
        let mut m = Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).conj();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ExactScalar::is_zero)
    }

    /// If the matrix is `c * Id`, returns `c`.
    pub fn as_scalar_multiple_of_identity(&self) -> Option<ExactScalar> {
        assert_eq!(self.rows, self.cols);
        let c = self.at(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expect = if i == j { c.clone() } else { ExactScalar::zero() };
                if self.at(i, j) != &expect {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Rank by Gaussian elimination over the scalar field. Entries must be
    /// single `pi`-power scalars so that pivots are invertible; everything
    /// this crate eliminates is `pi`-free.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let Some(pivot) = (row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                let tmp = m.at(pivot, j).clone();
                *m.at_mut(pivot, j) = m.at(row, j).clone();
                *m.at_mut(row, j) = tmp;
            }
            let inv = m
                .at(row, col)
                .inv()
                .expect("pivot must be an invertible scalar");
            for j in 0..m.cols {
                *m.at_mut(row, j) = m.at(row, j).mul(&inv);
            }
            for r in 0..m.rows {
                if r != row && !m.at(r, col).is_zero() {
                    let f = m.at(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.at(r, j).sub(&f.mul(m.at(row, j)));
                        *m.at_mut(r, j) = v;
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
