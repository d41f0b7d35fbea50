//! Fourier mode vectors on the torus `T^d` (d = 1 or 3) and the truncation
//! window that turns the formal infinite sums into finite computations.

use serde::{Deserialize, Serialize};
use std::fmt;

/// A mode `n` in `Z^d`, stored as three components with the trailing ones
/// zero when `d < 3`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mode(pub [i16; 3]);

impl Mode {
    pub const ZERO: Mode = Mode([0, 0, 0]);

    pub fn new(components: &[i16]) -> Mode {
        let mut m = [0i16; 3];
        m[..components.len()].copy_from_slice(components);
        Mode(m)
    }

    pub fn d1(n: i16) -> Mode {
        Mode([n, 0, 0])
    }

    pub fn add(&self, o: &Mode) -> Mode {
        Mode([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &Mode) -> Mode {
        Mode([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn neg(&self) -> Mode {
        Mode([-self.0[0], -self.0[1], -self.0[2]])
    }

    pub fn sup_norm(&self) -> i16 {
        self.0.iter().map(|c| c.abs()).max().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0, 0, 0]
    }

    /// Lexicographically positive: the first nonzero component is positive.
    pub fn is_lex_positive(&self) -> bool {
        for c in self.0 {
            if c > 0 {
                return true;
            }
            if c < 0 {
                return false;
            }
        }
        false
    }

    pub fn component(&self, j: usize) -> i16 {
        self.0[j]
    }

    /// Cross product of the spatial parts (meaningful for d = 3).
    pub fn cross(&self, o: &Mode) -> [i64; 3] {
        let a = self.0.map(|c| c as i64);
        let b = o.0.map(|c| c as i64);
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    }
}

impl fmt::Debug for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// The finite mode window: identities are quantified over the inner window
/// `lambda_in` while sums run over the outer window `lambda`, so rewriting
/// cannot push truncation-boundary artifacts into the checked band.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationWindow {
    /// Torus dimension (1 or 3).
    pub d: u8,
    /// Outer bound: sums run over modes of sup-norm <= lambda.
    pub lambda: i16,
    /// Inner guard bound: identities are asserted on words whose modes all
    /// have sup-norm <= lambda_in.
    pub lambda_in: i16,
}

impl TruncationWindow {
    pub fn new(d: u8, lambda: i16, lambda_in: i16) -> TruncationWindow {
        assert!(d == 1 || d == 3, "torus dimension must be 1 or 3");
        assert!(lambda >= 1, "outer window must be positive");
        assert!(
            (1..=lambda).contains(&lambda_in),
            "inner window must satisfy 1 <= lambda_in <= lambda"
        );
        TruncationWindow { d, lambda, lambda_in }
    }

    pub fn contains(&self, m: &Mode) -> bool {
        self.valid_dim(m) && m.sup_norm() <= self.lambda
    }

    pub fn in_guard_band(&self, m: &Mode) -> bool {
        self.valid_dim(m) && m.sup_norm() <= self.lambda_in
    }

    fn valid_dim(&self, m: &Mode) -> bool {
        self.d == 3 || (m.0[1] == 0 && m.0[2] == 0)
    }

    /// All modes in the outer window, in lexicographic order.
    pub fn modes(&self) -> Vec<Mode> {
        self.modes_with_norm(self.lambda)
    }

    /// All modes in the inner window, in lexicographic order.
    pub fn guard_modes(&self) -> Vec<Mode> {
        self.modes_with_norm(self.lambda_in)
    }

    fn modes_with_norm(&self, bound: i16) -> Vec<Mode> {
        let mut out = Vec::new();
        let range = |_active: bool| -bound..=bound;
        if self.d == 1 {
            for n in range(true) {
                out.push(Mode([n, 0, 0]));
            }
        } else {
            for n1 in range(true) {
                for n2 in range(true) {
                    for n3 in range(true) {
                        out.push(Mode([n1, n2, n3]));
                    }
                }
            }
        }
        out
    }
}
