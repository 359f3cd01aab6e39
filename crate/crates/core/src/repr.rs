//! Brute-force enumeration of Jacobi-algebra modules over small prime
//! fields, point counts of Hilbert schemes and quiver Grassmannians, Euler
//! characteristics by polynomial-count interpolation, and assembly of the
//! generating series.


use crate::potential::{cyclic_derivative, PotentialError, Qp};
use crate::quiver::Vertex;
use crate::torus::{Cone, Sign, TorusSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReprError {
    #[error("total dimension {0} exceeds the cap {1}")]
    DimensionCapExceeded(usize, usize),
    #[error("GL-orbit division is not integral: {0} pairs by {1}")]
    InternalNonIntegral(u128, u128),
    #[error("point counts do not fit an integer polynomial: {0}")]
    NotPolynomialCount(String),
    #[error("need at least {need} primes for degree bound {bound}, have {have}")]
    InsufficientPrimes {
        need: usize,
        bound: usize,
        have: usize,
    },
    #[error("field size {0} is not a supported prime")]
    BadField(u32),
    #[error("matrix for arrow `{arrow}` has shape {got:?}, expected {expect:?}")]
    BadMatrixShape {
        arrow: String,
        got: (usize, usize),
        expect: (usize, usize),
    },
    #[error("dimension vector {0:?} does not fit quiver rank {1}")]
    BadDimension(Vec<usize>, usize),
    #[error("potential coefficient has denominator divisible by {0}")]
    BadCoefficient(u32),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

fn check_prime(q: u32) -> Result<(), ReprError> {
    if SUPPORTED_PRIMES.contains(&q) {
        Ok(())
    } else {
        Err(ReprError::BadField(q))
    }
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // q is a small prime; Fermat
    let mut r = 1u32;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    r
}

/// Dense matrix over F_q; entries are reduced representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FqMatrix, q: u32) -> FqMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = FqMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, (cur + a * other.get(k, j)) % q);
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &FqMatrix, scale: u32, q: u32) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = (*a + scale * b) % q;
        }
    }

    pub fn apply(&self, v: &[u32], q: u32) -> Vec<u32> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * v[j])
                    .sum::<u32>()
                    % q
            })
            .collect()
    }
}

/// Row-reduce in place; returns the rank.
fn rref(mat: &mut Vec<Vec<u32>>, q: u32) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        let Some(sel) = (pivot_row..rows).find(|&r| mat[r][col] != 0) else {
            continue;
        };
        mat.swap(pivot_row, sel);
        let inv = inv_mod(mat[pivot_row][col], q);
        for c in 0..cols {
            mat[pivot_row][c] = mat[pivot_row][c] * inv % q;
        }
        for r in 0..rows {
            if r != pivot_row && mat[r][col] != 0 {
                let f = mat[r][col];
                for c in 0..cols {
                    mat[r][c] = (mat[r][c] + (q - f) * mat[pivot_row][c]) % q;
                }
            }
        }
        pivot_row += 1;
    }
    pivot_row
}

/// A finite-dimensional module presentation: one matrix per arrow, acting
/// from the source fiber to the target fiber, satisfying every Jacobi
/// relation of the potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRep {
    pub q: u32,
    pub dim: Vec<usize>,
    pub mats: BTreeMap<String, FqMatrix>,
}

/// Integer presentation of a module, reduced modulo each prime on demand.
/// This is the on-disk catalog format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogModule {
    pub dim: Vec<usize>,
    #[serde(default)]
    pub mats: BTreeMap<String, Vec<Vec<i64>>>,
}

impl CatalogModule {
    pub fn zero(n: usize) -> Self {
        CatalogModule {
            dim: vec![0; n],
            mats: BTreeMap::new(),
        }
    }

    /// The simple module at a vertex.
    pub fn simple(n: usize, i: Vertex) -> Self {
        let mut dim = vec![0; n];
        dim[i - 1] = 1;
        CatalogModule {
            dim,
            mats: BTreeMap::new(),
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dim.iter().sum()
    }

    /// Reduce modulo `q` and validate shapes and relations against the QP.
    pub fn over_field(&self, qp: &Qp, q: u32) -> Result<ModuleRep, ReprError> {
        check_prime(q)?;
        let quiver = qp.quiver();
        if self.dim.len() != quiver.rank() {
            return Err(ReprError::BadDimension(self.dim.clone(), quiver.rank()));
        }
        let mut mats = BTreeMap::new();
        for arrow in quiver.arrows() {
            let rows = self.dim[arrow.to - 1];
            let cols = self.dim[arrow.from - 1];
            let mut m = FqMatrix::zero(rows, cols);
            if let Some(entries) = self.mats.get(&arrow.label) {
                if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
                    let got = (entries.len(), entries.first().map_or(0, |r| r.len()));
                    return Err(ReprError::BadMatrixShape {
                        arrow: arrow.label.clone(),
                        got,
                        expect: (rows, cols),
                    });
                }
                for (r, row) in entries.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        m.set(r, c, v.rem_euclid(q as i64) as u32);
                    }
                }
            } else if rows > 0 && cols > 0 {
                // absent matrices mean zero maps
            }
            mats.insert(arrow.label.clone(), m);
        }
        let rep = ModuleRep {
            q,
            dim: self.dim.clone(),
            mats,
        };
        let rels = relations_over_field(qp, q)?;
        if !rep.satisfies(&rels, qp) {
            return Err(ReprError::Potential(PotentialError::NotACycle(format!(
                "catalog module violates a Jacobi relation over F_{q}"
            ))));
        }
        Ok(rep)
    }
}

/// One Jacobi relation per arrow, with coefficients reduced into F_q.
struct FieldRelation {
    paths: Vec<(Vec<String>, u32)>,
    from: Vertex,
    to: Vertex,
}

fn relations_over_field(qp: &Qp, q: u32) -> Result<Vec<FieldRelation>, ReprError> {
    let mut out = Vec::new();
    for arrow in qp.quiver().arrows() {
        let d = cyclic_derivative(qp.quiver(), qp.potential(), &arrow.label)?;
        let mut paths = Vec::new();
        for (path, coeff) in d.terms() {
            let den = coeff.denom();
            if (den % BigInt::from(q)).is_zero() {
                return Err(ReprError::BadCoefficient(q));
            }
            let num_m = coeff.numer().mod_floor_u32(q);
            let den_m = den.mod_floor_u32(q);
            let c = num_m * inv_mod(den_m, q) % q;
            if c != 0 {
                paths.push((path.clone(), c));
            }
        }
        out.push(FieldRelation {
            paths,
            from: d.from,
            to: d.to,
        });
    }
    Ok(out)
}

trait ModFloor {
    fn mod_floor_u32(&self, q: u32) -> u32;
}

impl ModFloor for BigInt {
    fn mod_floor_u32(&self, q: u32) -> u32 {
        let m = self % BigInt::from(q);
        let m = if m.is_negative() {
            m + BigInt::from(q)
        } else {
            m
        };
        m.to_u32().expect("reduced representative fits")
    }
}

impl ModuleRep {
    /// Matrix of a path word (arrows composing left to right).
    fn path_matrix(&self, path: &[String], qp: &Qp) -> FqMatrix {
        let quiver = qp.quiver();
        let first = quiver.arrow(&path[0]).expect("known arrow");
        let mut m = self.mats[&path[0]].clone();
        let _ = first;
        for lbl in &path[1..] {
            m = self.mats[lbl].mul(&m, self.q);
        }
        m
    }

    fn satisfies(&self, rels: &[FieldRelation], qp: &Qp) -> bool {
        for rel in rels {
            if rel.paths.is_empty() {
                continue;
            }
            let rows = self.dim[rel.to - 1];
            let cols = self.dim[rel.from - 1];
            if rows == 0 || cols == 0 {
                continue;
            }
            let mut total = FqMatrix::zero(rows, cols);
            for (path, c) in &rel.paths {
                let m = self.path_matrix(path, qp);
                total.add_scaled(&m, *c, self.q);
            }
            if !total.is_zero() {
                return false;
            }
        }
        true
    }

    /// Dimensions of the submodule generated by one vector in the fiber at
    /// `i`; returns true when it is the whole module.
    fn generates(&self, qp: &Qp, i: Vertex, seed: &[u32]) -> bool {
        let n = self.dim.len();
        // span bases per vertex, rows in RREF
        let mut spans: Vec<Vec<Vec<u32>>> = vec![Vec::new(); n];
        let mut queue: Vec<(Vertex, Vec<u32>)> = vec![(i, seed.to_vec())];
        while let Some((v, vecv)) = queue.pop() {
            if vecv.iter().all(|&x| x == 0) {
                continue;
            }
            let mut candidate = spans[v - 1].clone();
            candidate.push(vecv.clone());
            let before = spans[v - 1].len();
            let rank = rref(&mut candidate, self.q);
            candidate.truncate(rank);
            if rank == before {
                continue; // already in the span
            }
            spans[v - 1] = candidate;
            for arrow in qp.quiver().arrows() {
                if arrow.from == v && self.dim[arrow.to - 1] > 0 {
                    let img = self.mats[&arrow.label].apply(&vecv, self.q);
                    queue.push((arrow.to, img));
                }
            }
        }
        (0..n).all(|v| spans[v].len() == self.dim[v])
    }
}

/// Lazy enumeration of all arrow-matrix tuples of the given dimension
/// vector satisfying the Jacobi relations.
pub struct RepStream<'a> {
    qp: &'a Qp,
    q: u32,
    dim: Vec<usize>,
    rels: Vec<FieldRelation>,
    shapes: Vec<(String, usize, usize)>,
    entries: usize,
    next_index: u64,
    total: u64,
}

impl<'a> RepStream<'a> {
    fn decode(&self, mut code: u64) -> ModuleRep {
        let mut mats = BTreeMap::new();
        for (label, rows, cols) in &self.shapes {
            let mut m = FqMatrix::zero(*rows, *cols);
            for e in 0..rows * cols {
                m.data[e] = (code % self.q as u64) as u32;
                code /= self.q as u64;
            }
            mats.insert(label.clone(), m);
        }
        ModuleRep {
            q: self.q,
            dim: self.dim.clone(),
            mats,
        }
    }
}

impl Iterator for RepStream<'_> {
    type Item = ModuleRep;

    fn next(&mut self) -> Option<ModuleRep> {
        while self.next_index < self.total {
            let rep = self.decode(self.next_index);
            self.next_index += 1;
            if rep.satisfies(&self.rels, self.qp) {
                return Some(rep);
            }
        }
        None
    }
}

/// Stream every module representation of the given dimension vector over
/// F_q, exactly once.
pub fn enumerate_reps<'a>(
    qp: &'a Qp,
    dim: &[usize],
    q: u32,
    max_total_dim: usize,
) -> Result<RepStream<'a>, ReprError> {
    check_prime(q)?;
    let quiver = qp.quiver();
    if dim.len() != quiver.rank() {
        return Err(ReprError::BadDimension(dim.to_vec(), quiver.rank()));
    }
    let total_dim: usize = dim.iter().sum();
    if total_dim > max_total_dim {
        return Err(ReprError::DimensionCapExceeded(total_dim, max_total_dim));
    }
    let shapes: Vec<(String, usize, usize)> = quiver
        .arrows()
        .iter()
        .map(|a| (a.label.clone(), dim[a.to - 1], dim[a.from - 1]))
        .collect();
    let entries: usize = shapes.iter().map(|(_, r, c)| r * c).sum();
    let total = (q as u64).pow(entries as u32);
    Ok(RepStream {
        qp,
        q,
        dim: dim.to_vec(),
        rels: relations_over_field(qp, q)?,
        shapes,
        entries,
        next_index: 0,
        total,
    })
}

fn usize_dim(v: &[i64]) -> Option<Vec<usize>> {
    v.iter().map(|&x| usize::try_from(x).ok()).collect()
}

/// `|GL_v(F_q)| = prod_i prod_{m<v_i} (q^{v_i} - q^m)`.
fn gl_order(dim: &[usize], q: u32) -> u128 {
    let mut total: u128 = 1;
    for &d in dim {
        for m in 0..d {
            total *= (q as u128).pow(d as u32) - (q as u128).pow(m as u32);
        }
    }
    total
}

/// Number of F_q-points of the space of quotients of the projective at `i`
/// with the given dimension vector: cyclic pairs divided by the GL order.
pub fn count_hilb_points(
    qp: &Qp,
    i: Vertex,
    dim: &[usize],
    q: u32,
    max_total_dim: usize,
) -> Result<u128, ReprError> {
    qp.counts().check_vertex(i).map_err(PotentialError::from)?;
    let total_dim: usize = dim.iter().sum();
    if total_dim == 0 {
        return Ok(1);
    }
    // a cyclic module generated at i obeys v_j <= sum of incoming fibers
    // (plus one for the generator at i); violations have no points
    if hilb_prune(qp, i, dim) {
        return Ok(0);
    }
    if total_dim > max_total_dim {
        return Err(ReprError::DimensionCapExceeded(total_dim, max_total_dim));
    }
    let stream = enumerate_reps(qp, dim, q, max_total_dim)?;
    let vi = dim[i - 1];
    let fiber = (q as u64).pow(vi as u32);
    let chunk = 1u64 << 14;
    let total = stream.total;
    let rels = relations_over_field(qp, q)?;
    let shapes = stream.shapes.clone();
    let template = RepStream {
        qp,
        q,
        dim: dim.to_vec(),
        rels,
        shapes,
        entries: stream.entries,
        next_index: 0,
        total,
    };
    let ranges: Vec<(u64, u64)> = (0..total)
        .step_by(chunk as usize)
        .map(|s| (s, (s + chunk).min(total)))
        .collect();
    let pairs: u128 = ranges
        .par_iter()
        .map(|&(lo, hi)| {
            let mut local: u128 = 0;
            for code in lo..hi {
                let rep = template.decode(code);
                if !rep.satisfies(&template.rels, qp) {
                    continue;
                }
                for vcode in 0..fiber {
                    let mut seed = vec![0u32; vi];
                    let mut c = vcode;
                    for s in seed.iter_mut() {
                        *s = (c % q as u64) as u32;
                        c /= q as u64;
                    }
                    if rep.generates(qp, i, &seed) {
                        local += 1;
                    }
                }
            }
            local
        })
        .sum();
    let gl = gl_order(dim, q);
    if pairs % gl != 0 {
        return Err(ReprError::InternalNonIntegral(pairs, gl));
    }
    Ok(pairs / gl)
}

fn hilb_prune(qp: &Qp, i: Vertex, dim: &[usize]) -> bool {
    let counts = qp.quiver().raw_counts();
    for (j, &vj) in dim.iter().enumerate() {
        let mut bound: usize = usize::from(j + 1 == i);
        for (s, &vs) in dim.iter().enumerate() {
            bound += counts[s][j] as usize * vs;
        }
        if vj > bound {
            return true;
        }
    }
    false
}

/// RREF bases of all m-dimensional subspaces of F_q^d.
fn subspaces(d: usize, m: usize, q: u32) -> Vec<Vec<Vec<u32>>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    if m > d {
        return Vec::new();
    }
    // choose pivot columns, then fill free entries
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    choose(0, d, m, &mut pivots, &mut |piv: &Vec<usize>| {
        // free positions: row r, column c with c > piv[r], c not a pivot
        let mut free = Vec::new();
        for (r, &p) in piv.iter().enumerate() {
            for c in p + 1..d {
                if !piv.contains(&c) {
                    free.push((r, c));
                }
            }
        }
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut basis = vec![vec![0u32; d]; m];
            for (r, &p) in piv.iter().enumerate() {
                basis[r][p] = 1;
            }
            let mut c = code;
            for &(r, col) in &free {
                basis[r][col] = (c % q as u64) as u32;
                c /= q as u64;
            }
            out.push(basis);
        }
    });
    out
}

fn choose(start: usize, d: usize, m: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&Vec<usize>)) {
    if acc.len() == m {
        f(acc);
        return;
    }
    for c in start..d {
        acc.push(c);
        choose(c + 1, d, m, acc, f);
        acc.pop();
    }
}

/// Membership of a vector in the row space of an RREF basis.
fn in_span(basis: &[Vec<u32>], v: &[u32], q: u32) -> bool {
    let mut rows: Vec<Vec<u32>> = basis.to_vec();
    rows.push(v.to_vec());
    let before = basis.len();
    rref(&mut rows, q) == before
}

/// Number of submodules of `rep` with complementary dimension vector `v`
/// (equivalently, quotient modules of dimension vector `v`).
pub fn count_grass_points(
    rep: &ModuleRep,
    qp: &Qp,
    v: &[i64],
    max_total_dim: usize,
) -> Result<u128, ReprError> {
    let q = rep.q;
    let n = rep.dim.len();
    let Some(vu) = usize_dim(v) else {
        return Ok(0);
    };
    if vu.len() != n {
        return Err(ReprError::BadDimension(vu, n));
    }
    if vu.iter().zip(&rep.dim).any(|(a, b)| a > b) {
        return Ok(0);
    }
    let total: usize = rep.dim.iter().sum();
    if total > max_total_dim {
        return Err(ReprError::DimensionCapExceeded(total, max_total_dim));
    }
    let sub_dims: Vec<usize> = rep.dim.iter().zip(&vu).map(|(d, v)| d - v).collect();
    let per_vertex: Vec<Vec<Vec<Vec<u32>>>> = (0..n)
        .map(|j| subspaces(rep.dim[j], sub_dims[j], q))
        .collect();
    // iterate the product of per-vertex subspace choices
    let mut count: u128 = 0;
    let mut idx = vec![0usize; n];
    'outer: loop {
        let tuple: Vec<&Vec<Vec<u32>>> = (0..n).map(|j| &per_vertex[j][idx[j]]).collect();
        let stable = qp.quiver().arrows().iter().all(|a| {
            let src = tuple[a.from - 1];
            let tgt = tuple[a.to - 1];
            src.iter().all(|b| {
                let img = rep.mats[&a.label].apply(b, q);
                img.iter().all(|&x| x == 0) || in_span(tgt, &img, q)
            })
        });
        if stable {
            count += 1;
        }
        for j in 0..n {
            idx[j] += 1;
            if idx[j] < per_vertex[j].len() {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    Ok(count)
}

/// Point counts indexed by dimension vector and prime.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub counts: BTreeMap<Vec<i64>, BTreeMap<u32, u128>>,
}

impl CountTable {
    pub fn insert(&mut self, v: Vec<i64>, q: u32, count: u128) {
        self.counts.entry(v).or_default().insert(q, count);
    }

    pub fn get(&self, v: &[i64]) -> Option<&BTreeMap<u32, u128>> {
        self.counts.get(v)
    }
}

/// Fit the unique integer polynomial of degree <= total dim through the
/// (q, count) pairs and evaluate at 1. Requires one more prime than the
/// degree bound; the fit must be exact with integer coefficients.
pub fn euler_from_counts(table: &CountTable, v: &[i64]) -> Result<i64, ReprError> {
    let Some(by_prime) = table.get(v) else {
        return Err(ReprError::NotPolynomialCount(format!(
            "no counts recorded for {v:?}"
        )));
    };
    let bound: usize = v.iter().map(|&x| x.unsigned_abs() as usize).sum();
    let have = by_prime.len();
    if have < bound + 1 {
        return Err(ReprError::InsufficientPrimes {
            need: bound + 1,
            bound,
            have,
        });
    }
    let points: Vec<(BigRational, BigRational)> = by_prime
        .iter()
        .map(|(&q, &c)| {
            (
                BigRational::from_integer(BigInt::from(q)),
                BigRational::from_integer(BigInt::from(c)),
            )
        })
        .collect();
    // Newton's divided differences on the first bound+1 points
    let fit: Vec<(BigRational, BigRational)> = points[..bound + 1].to_vec();
    let mut coeffs: Vec<BigRational> = fit.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..fit.len() {
        for idx in (level..fit.len()).rev() {
            let dx = &fit[idx].0 - &fit[idx - level].0;
            coeffs[idx] = (&coeffs[idx] - &coeffs[idx - 1]) / dx;
        }
    }
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for idx in (0..fit.len()).rev() {
            acc = acc * (x - &fit[idx].0) + &coeffs[idx];
        }
        acc
    };
    // overdetermined points must agree exactly
    for (x, y) in &points[bound + 1..] {
        if &eval(x) != y {
            return Err(ReprError::NotPolynomialCount(format!(
                "extra prime disagrees with the degree-{bound} fit for {v:?}"
            )));
        }
    }
    // expand to monomial coefficients and demand integrality
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); fit.len()];
    let mut basis: Vec<BigRational> = vec![BigRational::one()];
    for (idx, c) in coeffs.iter().enumerate() {
        for (p, b) in basis.iter().enumerate() {
            poly[p] += c * b;
        }
        // basis *= (x - x_idx)
        if idx + 1 < fit.len() {
            let xi = fit[idx].0.clone();
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (p, b) in basis.iter().enumerate() {
                next[p + 1] += b;
                next[p] -= b * &xi;
            }
            basis = next;
        }
    }
    for c in &poly {
        if !c.is_integer() {
            return Err(ReprError::NotPolynomialCount(format!(
                "fit for {v:?} has non-integer coefficient {c}"
            )));
        }
    }
    let e = eval(&BigRational::one());
    debug_assert!(e.is_integer());
    Ok(e.to_integer().to_i64().expect("desk-scale Euler number"))
}

fn vectors_up_to(n: usize, order: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in out {
            let used: i64 = v.iter().sum();
            for x in 0..=(order as i64 - used) {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The Hilbert-scheme generating series at vertex `i`: Euler numbers of the
/// quotient spaces of the projective, one term per dimension vector up to
/// the truncation order. Positive cone, constant term 1.
pub fn hilb_series(
    qp: &Qp,
    i: Vertex,
    trunc: usize,
    primes: &[u32],
    max_total_dim: usize,
) -> Result<TorusSeries, ReprError> {
    let n = qp.quiver().rank();
    let mut series = TorusSeries::zero(n, Sign::Plus, trunc, Cone::Positive);
    for v in vectors_up_to(n, trunc) {
        let dim: Vec<usize> = v.iter().map(|&x| x as usize).collect();
        if hilb_prune(qp, i, &dim) {
            continue;
        }
        let mut table = CountTable::default();
        for &q in primes {
            let c = count_hilb_points(qp, i, &dim, q, max_total_dim)?;
            table.insert(v.clone(), q, c);
        }
        let e = euler_from_counts(&table, &v)?;
        if e != 0 {
            series.add_term(
                &vec![0; n],
                &v,
                BigRational::from_integer(BigInt::from(e)),
            );
        }
    }
    Ok(series)
}

/// The Grassmannian generating series of a catalog module: Euler numbers of
/// its quotient spaces, with inverted exponents. Negative cone, constant
/// term 1.
pub fn grass_series(
    qp: &Qp,
    module: &CatalogModule,
    trunc: usize,
    primes: &[u32],
    max_total_dim: usize,
) -> Result<TorusSeries, ReprError> {
    let n = qp.quiver().rank();
    let mut series = TorusSeries::zero(n, Sign::Plus, trunc, Cone::Negative);
    for v in vectors_up_to(n, trunc.min(module.total_dim())) {
        if v.iter().zip(&module.dim).any(|(&a, &b)| a > b as i64) {
            continue;
        }
        let mut table = CountTable::default();
        for &q in primes {
            let rep = module.over_field(qp, q)?;
            let c = count_grass_points(&rep, qp, &v, max_total_dim)?;
            table.insert(v.clone(), q, c);
        }
        let e = euler_from_counts(&table, &v)?;
        if e != 0 {
            let neg: Vec<i64> = v.iter().map(|x| -x).collect();
            series.add_term(
                &vec![0; n],
                &neg,
                BigRational::from_integer(BigInt::from(e)),
            );
        }
    }
    Ok(series)
}

/// Count table for Hilbert points over a set of primes, exposed for the
/// CLI and the stability cross-check.
pub fn hilb_count_table(
    qp: &Qp,
    i: Vertex,
    trunc: usize,
    primes: &[u32],
    max_total_dim: usize,
) -> Result<CountTable, ReprError> {
    let n = qp.quiver().rank();
    let mut table = CountTable::default();
    for v in vectors_up_to(n, trunc) {
        let dim: Vec<usize> = v.iter().map(|&x| x as usize).collect();
        for &q in primes {
            let c = if hilb_prune(qp, i, &dim) {
                0
            } else {
                count_hilb_points(qp, i, &dim, q, max_total_dim)?
            };
            table.insert(v.clone(), q, c);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Arrow, CyclicWord, LabeledQuiver, Potential};
    use crate::quiver::Quiver;
    use num_traits::One;

    fn a2_qp() -> Qp {
        Qp::with_zero_potential(&Quiver::from_arrows(2, &[(1, 2, 1)]).unwrap())
    }

    fn kronecker_qp() -> Qp {
        Qp::with_zero_potential(&Quiver::from_arrows(2, &[(1, 2, 2)]).unwrap())
    }

    pub(crate) fn triangle_qp() -> Qp {
        let quiver = LabeledQuiver::new(
            3,
            vec![
                Arrow { label: "a".into(), from: 1, to: 2 },
                Arrow { label: "b".into(), from: 2, to: 3 },
                Arrow { label: "c".into(), from: 3, to: 1 },
            ],
        )
        .unwrap();
        let mut w = Potential::zero();
        w.add_term(
            CyclicWord::new(vec!["a".into(), "b".into(), "c".into()], &quiver).unwrap(),
            BigRational::one(),
        );
        Qp::new(quiver, w).unwrap()
    }

    #[test]
    fn enumerate_simple_cases() {
        let point = Qp::with_zero_potential(&Quiver::empty(1));
        assert_eq!(enumerate_reps(&point, &[1], 2, 4).unwrap().count(), 1);

        let a2 = a2_qp();
        assert_eq!(enumerate_reps(&a2, &[1, 1], 2, 4).unwrap().count(), 2);

        // triangle with cubic potential: scalar triples with all
        // consecutive products vanishing
        let tri = triangle_qp();
        assert_eq!(enumerate_reps(&tri, &[1, 1, 1], 2, 4).unwrap().count(), 4);
    }

    #[test]
    fn dimension_cap_enforced() {
        let a2 = a2_qp();
        assert!(matches!(
            enumerate_reps(&a2, &[3, 2], 2, 4),
            Err(ReprError::DimensionCapExceeded(5, 4))
        ));
    }

    #[test]
    fn hilb_counts() {
        let a2 = a2_qp();
        for q in [2u32, 3, 5] {
            assert_eq!(count_hilb_points(&a2, 1, &[0, 0], q, 4).unwrap(), 1);
            assert_eq!(count_hilb_points(&a2, 1, &[1, 1], q, 4).unwrap(), 1);
            assert_eq!(count_hilb_points(&a2, 1, &[0, 1], q, 4).unwrap(), 0);
        }
        let kron = kronecker_qp();
        for q in [2u32, 3, 5, 7] {
            assert_eq!(
                count_hilb_points(&kron, 1, &[1, 1], q, 4).unwrap(),
                (q + 1) as u128,
                "projective line of quotients"
            );
        }
    }

    #[test]
    fn grass_counts_for_catalog_modules() {
        let a2 = a2_qp();
        // P1 over A2: dim (1,1), arrow matrix [1]
        let mut p1 = CatalogModule {
            dim: vec![1, 1],
            mats: BTreeMap::new(),
        };
        p1.mats.insert("a1_2".into(), vec![vec![1]]);
        for q in [2u32, 3] {
            let rep = p1.over_field(&a2, q).unwrap();
            assert_eq!(count_grass_points(&rep, &a2, &[0, 0], 4).unwrap(), 1);
            assert_eq!(count_grass_points(&rep, &a2, &[1, 0], 4).unwrap(), 1);
            assert_eq!(count_grass_points(&rep, &a2, &[1, 1], 4).unwrap(), 1);
            assert_eq!(count_grass_points(&rep, &a2, &[0, 1], 4).unwrap(), 0);
        }
        // Kronecker P1: dim (1,2), two arrow matrices e1, e2
        let kron = kronecker_qp();
        let mut kp1 = CatalogModule {
            dim: vec![1, 2],
            mats: BTreeMap::new(),
        };
        kp1.mats.insert("a1_2_1".into(), vec![vec![1], vec![0]]);
        kp1.mats.insert("a1_2_2".into(), vec![vec![0], vec![1]]);
        for q in [2u32, 3, 5] {
            let rep = kp1.over_field(&kron, q).unwrap();
            assert_eq!(
                count_grass_points(&rep, &kron, &[1, 1], 4).unwrap(),
                (q + 1) as u128,
                "lines in the vertex-2 fiber"
            );
        }
    }

    #[test]
    fn euler_interpolation() {
        let mut t = CountTable::default();
        for (q, c) in [(2u32, 1u128), (3, 1), (5, 1)] {
            t.insert(vec![1, 1], q, c);
        }
        assert_eq!(euler_from_counts(&t, &[1, 1]).unwrap(), 1);

        let mut t = CountTable::default();
        for (q, c) in [(2u32, 3u128), (3, 4), (5, 6)] {
            t.insert(vec![1, 1], q, c);
        }
        assert_eq!(euler_from_counts(&t, &[1, 1]).unwrap(), 2);

        let mut t = CountTable::default();
        for (q, c) in [(2u32, 4u128), (3, 9), (5, 25)] {
            t.insert(vec![1, 1], q, c);
        }
        assert_eq!(euler_from_counts(&t, &[1, 1]).unwrap(), 1);
    }

    #[test]
    fn euler_requires_enough_primes() {
        let mut t = CountTable::default();
        for (q, c) in [(2u32, 1u128), (3, 1), (5, 1)] {
            t.insert(vec![2, 1], q, c);
        }
        assert!(matches!(
            euler_from_counts(&t, &[2, 1]),
            Err(ReprError::InsufficientPrimes { need: 4, .. })
        ));
    }

    #[test]
    fn euler_rejects_inconsistent_table() {
        let mut t = CountTable::default();
        // counts of q^2 but an extra prime that disagrees
        for (q, c) in [(2u32, 4u128), (3, 9), (5, 26)] {
            t.insert(vec![1], q, c);
        }
        assert!(matches!(
            euler_from_counts(&t, &[1]),
            Err(ReprError::NotPolynomialCount(_))
        ));
    }

    #[test]
    fn hilb_series_examples() {
        let point = Qp::with_zero_potential(&Quiver::empty(1));
        let z = hilb_series(&point, 1, 6, &[2, 3, 5], 4).unwrap();
        assert_eq!(z.to_display_string(), "1 + y[1]");

        let a2 = a2_qp();
        let z1 = hilb_series(&a2, 1, 6, &[2, 3, 5], 4).unwrap();
        assert_eq!(z1.to_display_string(), "1 + y[1,0] + y[1,1]");
        let z2 = hilb_series(&a2, 2, 6, &[2, 3, 5], 4).unwrap();
        assert_eq!(z2.to_display_string(), "1 + y[0,1]");
    }

    #[test]
    fn grass_series_examples() {
        let a2 = a2_qp();
        let zero = CatalogModule::zero(2);
        assert_eq!(
            grass_series(&a2, &zero, 6, &[2, 3, 5], 4)
                .unwrap()
                .to_display_string(),
            "1"
        );
        let s1 = CatalogModule::simple(2, 1);
        assert_eq!(
            grass_series(&a2, &s1, 6, &[2, 3, 5], 4)
                .unwrap()
                .to_display_string(),
            "1 + y[-1,0]"
        );
        let mut p1 = CatalogModule {
            dim: vec![1, 1],
            mats: BTreeMap::new(),
        };
        p1.mats.insert("a1_2".into(), vec![vec![1]]);
        assert_eq!(
            grass_series(&a2, &p1, 6, &[2, 3, 5], 4)
                .unwrap()
                .to_display_string(),
            "1 + y[-1,0] + y[-1,-1]"
        );
    }

    #[test]
    fn conjugation_invariance_spot_check() {
        // conjugating the Kronecker P1 presentation leaves counts unchanged
        let kron = kronecker_qp();
        let mut m1 = CatalogModule {
            dim: vec![1, 2],
            mats: BTreeMap::new(),
        };
        m1.mats.insert("a1_2_1".into(), vec![vec![1], vec![0]]);
        m1.mats.insert("a1_2_2".into(), vec![vec![0], vec![1]]);
        let mut m2 = CatalogModule {
            dim: vec![1, 2],
            mats: BTreeMap::new(),
        };
        // basis change at vertex 2
        m2.mats.insert("a1_2_1".into(), vec![vec![1], vec![1]]);
        m2.mats.insert("a1_2_2".into(), vec![vec![1], vec![2]]);
        for q in [2u32, 3, 5] {
            let r1 = m1.over_field(&kron, q).unwrap();
            let r2 = m2.over_field(&kron, q).unwrap();
            for v in [[0i64, 1], [1, 1], [1, 2], [0, 2]] {
                assert_eq!(
                    count_grass_points(&r1, &kron, &v, 4).unwrap(),
                    count_grass_points(&r2, &kron, &v, 4).unwrap(),
                    "v={v:?} q={q}"
                );
            }
        }
    }
}
