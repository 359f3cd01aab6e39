//! Quivers as arrow-count matrices, quiver mutation, and principal framing.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertices are 1-based; framing vertices `i*` are stored as `n + i`.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {0} out of range 1..={1}")]
    InvalidVertex(Vertex, usize),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

/// A finite quiver without loops or oriented 2-cycles, stored as the
/// matrix of arrow multiplicities: `arrows[i][j]` counts arrows `i+1 -> j+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<Vec<u32>>) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::InvariantViolation(
                "vertex count must be positive".into(),
            ));
        }
        if arrows.len() != n || arrows.iter().any(|row| row.len() != n) {
            return Err(QuiverError::InvariantViolation(format!(
                "arrow matrix must be {n}x{n}"
            )));
        }
        for i in 0..n {
            if arrows[i][i] != 0 {
                return Err(QuiverError::InvariantViolation(format!(
                    "loop at vertex {}",
                    i + 1
                )));
            }
            for j in 0..i {
                if arrows[i][j] != 0 && arrows[j][i] != 0 {
                    return Err(QuiverError::InvariantViolation(format!(
                        "oriented 2-cycle between vertices {} and {}",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Quiver { n, arrows })
    }

    /// Quiver with `n` vertices and no arrows.
    pub fn empty(n: usize) -> Self {
        Quiver::new(n, vec![vec![0; n]; n]).expect("empty quiver is valid")
    }

    /// Build from a list of (source, target, multiplicity) triples.
    pub fn from_arrows(n: usize, list: &[(Vertex, Vertex, u32)]) -> Result<Self, QuiverError> {
        let mut arrows = vec![vec![0u32; n]; n];
        for &(s, t, m) in list {
            if s == 0 || s > n {
                return Err(QuiverError::InvalidVertex(s, n));
            }
            if t == 0 || t > n {
                return Err(QuiverError::InvalidVertex(t, n));
            }
            arrows[s - 1][t - 1] += m;
        }
        Quiver::new(n, arrows)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Number of arrows `i -> j`.
    pub fn count(&self, i: Vertex, j: Vertex) -> u32 {
        self.arrows[i - 1][j - 1]
    }

    pub fn matrix(&self) -> &Vec<Vec<u32>> {
        &self.arrows
    }

    /// Antisymmetrized count `barQ(i,j) = Q(j,i) - Q(i,j)`, the Euler form
    /// of the simples: `chi(s_i, s_j)`.
    pub fn bar(&self, i: Vertex, j: Vertex) -> i64 {
        self.arrows[j - 1][i - 1] as i64 - self.arrows[i - 1][j - 1] as i64
    }

    pub fn check_vertex(&self, k: Vertex) -> Result<(), QuiverError> {
        if k == 0 || k > self.n {
            return Err(QuiverError::InvalidVertex(k, self.n));
        }
        Ok(())
    }

    /// Quiver mutation at `k`: add a composite `u -> v` for every path
    /// `u -> k -> v`, reverse all arrows incident to `k`, then cancel
    /// oriented 2-cycles pairwise.
    pub fn mutate(&self, k: Vertex) -> Result<Quiver, QuiverError> {
        self.check_vertex(k)?;
        let n = self.n;
        let ki = k - 1;
        let mut pre = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == ki || j == ki {
                    continue;
                }
                pre[i][j] = self.arrows[i][j] + self.arrows[i][ki] * self.arrows[ki][j];
            }
        }
        for j in 0..n {
            if j == ki {
                continue;
            }
            pre[ki][j] = self.arrows[j][ki];
            pre[j][ki] = self.arrows[ki][j];
        }
        let mut out = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = pre[i][j].saturating_sub(pre[j][i]);
            }
        }
        Quiver::new(n, out)
    }

    /// Mutation along a sequence of vertices.
    pub fn mutate_seq(&self, kseq: &[Vertex]) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for &k in kseq {
            q = q.mutate(k)?;
        }
        Ok(q)
    }

    /// Principal framing: vertices `I ⊔ I*` with one arrow `i* -> i` per
    /// vertex and no arrows among the framing vertices.
    pub fn principal_framing(&self) -> Quiver {
        let n = self.n;
        let mut arrows = vec![vec![0u32; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                arrows[i][j] = self.arrows[i][j];
            }
            arrows[n + i][i] = 1;
        }
        Quiver::new(2 * n, arrows).expect("framing preserves invariants")
    }
}

impl<'de> Deserialize<'de> for Quiver {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            arrows: Vec<Vec<u32>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Quiver::new(raw.n, raw.arrows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a2() -> Quiver {
        Quiver::from_arrows(2, &[(1, 2, 1)]).unwrap()
    }

    fn kronecker() -> Quiver {
        Quiver::from_arrows(2, &[(1, 2, 2)]).unwrap()
    }

    fn cyclic_triangle() -> Quiver {
        Quiver::from_arrows(3, &[(1, 2, 1), (2, 3, 1), (3, 1, 1)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_two_cycles() {
        assert!(Quiver::new(2, vec![vec![1, 0], vec![0, 0]]).is_err());
        assert!(Quiver::new(2, vec![vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn mutate_a2() {
        let q = a2().mutate(1).unwrap();
        assert_eq!(q, Quiver::from_arrows(2, &[(2, 1, 1)]).unwrap());
    }

    #[test]
    fn mutate_cyclic_triangle() {
        // composite 3->2 cancels against the arrow 2->3
        let q = cyclic_triangle().mutate(1).unwrap();
        assert_eq!(
            q,
            Quiver::from_arrows(3, &[(2, 1, 1), (1, 3, 1)]).unwrap()
        );
    }

    #[test]
    fn invalid_vertex() {
        assert_eq!(a2().mutate(3), Err(QuiverError::InvalidVertex(3, 2)));
        assert_eq!(a2().mutate(0), Err(QuiverError::InvalidVertex(0, 2)));
    }

    /// All quivers on `n <= 3` vertices with pairwise multiplicity <= 2.
    pub(crate) fn small_corpus() -> Vec<Quiver> {
        let mut out = Vec::new();
        for n in 1..=3usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..i).map(move |j| (j, i)))
                .collect();
            // per pair: 0, 1 or 2 arrows in either direction
            let states = 5usize.pow(pairs.len() as u32);
            for s in 0..states {
                let mut arrows = vec![vec![0u32; n]; n];
                let mut code = s;
                for &(i, j) in &pairs {
                    match code % 5 {
                        0 => {}
                        1 => arrows[i][j] = 1,
                        2 => arrows[i][j] = 2,
                        3 => arrows[j][i] = 1,
                        _ => arrows[j][i] = 2,
                    }
                    code /= 5;
                }
                out.push(Quiver::new(n, arrows).unwrap());
            }
        }
        out
    }

    #[test]
    fn mutation_is_involutive_on_small_corpus() {
        for q in small_corpus() {
            for k in 1..=q.rank() {
                let m = q.mutate(k).unwrap();
                assert_eq!(m.mutate(k).unwrap(), q, "double mutation at {k} of {q:?}");
            }
        }
    }

    /// Exchange-matrix mutation (the standard rule on the antisymmetric
    /// matrix) must agree with the arrow-level procedure.
    #[test]
    fn bar_matrix_follows_matrix_mutation_rule() {
        for q in small_corpus() {
            let n = q.rank();
            for k in 1..=n {
                let m = q.mutate(k).unwrap();
                for i in 1..=n {
                    for j in 1..=n {
                        let b = q.bar(i, j);
                        let expect = if i == k || j == k {
                            -b
                        } else {
                            let bik = q.bar(i, k);
                            let bkj = q.bar(k, j);
                            b + (bik.abs() * bkj + bik * bkj.abs()) / 2
                        };
                        assert_eq!(m.bar(i, j), expect, "q={q:?} k={k} i={i} j={j}");
                    }
                }
            }
        }
    }

    #[test]
    fn framing_examples() {
        let f = a2().principal_framing();
        assert_eq!(f.rank(), 4);
        assert_eq!(f.count(1, 2), 1);
        assert_eq!(f.count(3, 1), 1);
        assert_eq!(f.count(4, 2), 1);
        assert_eq!(f.count(3, 4), 0);
        assert_eq!(f.count(4, 3), 0);

        let single = Quiver::empty(1).principal_framing();
        assert_eq!(single.rank(), 2);
        assert_eq!(single.count(2, 1), 1);

        let fk = kronecker().principal_framing();
        assert_eq!(fk.count(1, 2), 2);
        assert_eq!(fk.count(3, 1), 1);
        assert_eq!(fk.count(4, 2), 1);
    }

    #[test]
    fn mutation_output_is_valid() {
        for q in small_corpus() {
            for k in 1..=q.rank() {
                let m = q.mutate(k).unwrap();
                for i in 1..=m.rank() {
                    assert_eq!(m.count(i, i), 0);
                    for j in 1..=m.rank() {
                        assert!(m.count(i, j) == 0 || m.count(j, i) == 0);
                    }
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let q = cyclic_triangle();
        let s = serde_json::to_string(&q).unwrap();
        let back: Quiver = serde_json::from_str(&s).unwrap();
        assert_eq!(q, back);
        // documents with a loop are rejected at parse time
        let bad = r#"{"n":2,"arrows":[[1,0],[0,0]]}"#;
        assert!(serde_json::from_str::<Quiver>(bad).is_err());
    }
}
