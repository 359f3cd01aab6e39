//! Grothendieck lattices `L` (classes of simples / dimension vectors) and
//! `M` (classes of projectives), the Euler pairing, the class map `L -> M`,
//! and the per-mutation lattice transformations.

use crate::quiver::{Quiver, QuiverError, Vertex};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Space {
    L,
    M,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("space mismatch: expected {expected:?}, got {got:?}")]
    SpaceMismatch { expected: Space, got: Space },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MutationSign {
    Plus,
    Minus,
}

impl MutationSign {
    pub fn as_str(self) -> &'static str {
        match self {
            MutationSign::Plus => "+",
            MutationSign::Minus => "-",
        }
    }
}

/// Integer vector tagged by the lattice it lives in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    pub space: Space,
    pub coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(space: Space, coords: Vec<i64>) -> Self {
        LatticeVector { space, coords }
    }

    pub fn zero(space: Space, n: usize) -> Self {
        LatticeVector::new(space, vec![0; n])
    }

    /// Basis vector `e_i` (1-based).
    pub fn unit(space: Space, n: usize, i: Vertex) -> Self {
        let mut coords = vec![0i64; n];
        coords[i - 1] = 1;
        LatticeVector::new(space, coords)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn neg(&self) -> Self {
        LatticeVector::new(self.space, self.coords.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space);
        LatticeVector::new(
            self.space,
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

fn check_ranks(q: &Quiver, x: &LatticeVector, y: &LatticeVector) -> Result<(), LatticeError> {
    if x.rank() != q.rank() {
        return Err(LatticeError::RankMismatch(x.rank(), q.rank()));
    }
    if y.rank() != q.rank() {
        return Err(LatticeError::RankMismatch(y.rank(), q.rank()));
    }
    Ok(())
}

/// Euler pairing. `(M,L)` is the dot product, `(M,M)` vanishes, `(L,L)` is
/// the antisymmetrized form `chi(v_i, v_j) = Q(j,i) - Q(i,j)`, and `(L,M)`
/// extends by antisymmetry as `-chi(y, x)`.
pub fn chi(q: &Quiver, x: &LatticeVector, y: &LatticeVector) -> Result<i64, LatticeError> {
    check_ranks(q, x, y)?;
    match (x.space, y.space) {
        (Space::M, Space::L) => Ok(dot(&x.coords, &y.coords)),
        (Space::M, Space::M) => Ok(0),
        (Space::L, Space::L) => Ok(chi_l(q, &x.coords, &y.coords)),
        (Space::L, Space::M) => Ok(-dot(&y.coords, &x.coords)),
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The `(L,L)` Euler form on raw coordinate vectors.
pub fn chi_l(q: &Quiver, a: &[i64], b: &[i64]) -> i64 {
    let n = q.rank();
    let mut total = 0i64;
    for i in 1..=n {
        if a[i - 1] == 0 {
            continue;
        }
        for j in 1..=n {
            total += a[i - 1] * b[j - 1] * q.bar(i, j);
        }
    }
    total
}

/// Class map `L -> M` sending a dimension vector to the class of the
/// corresponding torus monomial: `e_j` maps to `sum_i barQ(i,j) w_i`, so the
/// projection identifies `y_j` with `prod_i x_i^{barQ(i,j)}`.
pub fn class_in_m(q: &Quiver, v: &LatticeVector) -> Result<LatticeVector, LatticeError> {
    if v.space != Space::L {
        return Err(LatticeError::SpaceMismatch {
            expected: Space::L,
            got: v.space,
        });
    }
    if v.rank() != q.rank() {
        return Err(LatticeError::RankMismatch(v.rank(), q.rank()));
    }
    Ok(LatticeVector::new(Space::M, class_in_m_coords(q, &v.coords)))
}

pub fn class_in_m_coords(q: &Quiver, v: &[i64]) -> Vec<i64> {
    let n = q.rank();
    (1..=n)
        .map(|i| (1..=n).map(|j| q.bar(i, j) * v[j - 1]).sum())
        .collect()
}

/// One step of the lattice transformation attached to mutation at `k` with
/// the given sign. `q` is the quiver being mutated at this step (the
/// transformation carries classes written over the mutated quiver back to
/// classes over `q`). The matrix is an involution, so it also serves as the
/// forward map.
pub fn phi_inverse_step(
    q: &Quiver,
    x: &LatticeVector,
    k: Vertex,
    sign: MutationSign,
) -> Result<LatticeVector, LatticeError> {
    q.check_vertex(k)?;
    if x.rank() != q.rank() {
        return Err(LatticeError::RankMismatch(x.rank(), q.rank()));
    }
    let n = q.rank();
    let mut out = vec![0i64; n];
    match x.space {
        Space::M => {
            // e_i -> e_i (i != k); e_k -> -e_k + sum_j Q(k,j) e_j  (sign +)
            //                      e_k -> -e_k + sum_j Q(j,k) e_j  (sign -)
            for i in 1..=n {
                let c = x.coords[i - 1];
                if c == 0 {
                    continue;
                }
                if i != k {
                    out[i - 1] += c;
                } else {
                    out[k - 1] -= c;
                    for j in 1..=n {
                        let m = match sign {
                            MutationSign::Plus => q.count(k, j),
                            MutationSign::Minus => q.count(j, k),
                        };
                        out[j - 1] += c * m as i64;
                    }
                }
            }
        }
        Space::L => {
            // e_i -> e_i + Q(k,i) e_k (i != k, sign +)
            // e_i -> e_i + Q(i,k) e_k (i != k, sign -)
            // e_k -> -e_k
            for i in 1..=n {
                let c = x.coords[i - 1];
                if c == 0 {
                    continue;
                }
                if i != k {
                    out[i - 1] += c;
                    let m = match sign {
                        MutationSign::Plus => q.count(k, i),
                        MutationSign::Minus => q.count(i, k),
                    };
                    out[k - 1] += c * m as i64;
                } else {
                    out[k - 1] -= c;
                }
            }
        }
    }
    Ok(LatticeVector::new(x.space, out))
}
