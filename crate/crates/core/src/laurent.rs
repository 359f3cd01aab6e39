//! Multivariate Laurent polynomials with exact integer coefficients.
//!
//! Terms are kept in a sorted vector keyed by fixed-width exponent arrays,
//! so multiplication is a sort-and-collapse pass and every iteration order
//! (and hence every printed form) is deterministic. Coefficients are
//! checked 128-bit integers; any overflow surfaces as an error instead of
//! wrapping.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Hard cap on the number of variables, from the fixed-width exponent keys.
pub const MAX_RANK: usize = 8;

type Key = [i32; MAX_RANK];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("coefficient overflow")]
    Overflow,
}

/// A Laurent polynomial in `rank` variables over the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Laurent {
    rank: usize,
    terms: Vec<(Key, i128)>,
}

fn key_from(expt: &[i64]) -> Key {
    let mut k = [0i32; MAX_RANK];
    for (slot, &e) in k.iter_mut().zip(expt) {
        *slot = i32::try_from(e).expect("exponent fits 32 bits");
    }
    k
}

fn key_to_vec(k: &Key, rank: usize) -> Vec<i64> {
    k[..rank].iter().map(|&x| x as i64).collect()
}

fn key_add(a: &Key, b: &Key) -> Key {
    let mut out = [0i32; MAX_RANK];
    for i in 0..MAX_RANK {
        out[i] = a[i] + b[i];
    }
    out
}

fn key_sub(a: &Key, b: &Key) -> Key {
    let mut out = [0i32; MAX_RANK];
    for i in 0..MAX_RANK {
        out[i] = a[i] - b[i];
    }
    out
}

/// Sort and merge equal keys, dropping zero coefficients.
fn collapse(mut terms: Vec<(Key, i128)>) -> Result<Vec<(Key, i128)>, LaurentError> {
    terms.sort_unstable_by_key(|t| t.0);
    let mut out: Vec<(Key, i128)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => {
                *lc = lc.checked_add(c).ok_or(LaurentError::Overflow)?;
            }
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| *c != 0);
    Ok(out)
}

impl Laurent {
    fn check_rank(rank: usize) -> usize {
        assert!(rank <= MAX_RANK, "rank {rank} exceeds {MAX_RANK}");
        rank
    }

    pub fn zero(rank: usize) -> Self {
        Laurent {
            rank: Self::check_rank(rank),
            terms: Vec::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Laurent::constant(rank, 1)
    }

    pub fn constant(rank: usize, c: i128) -> Self {
        let mut terms = Vec::new();
        if c != 0 {
            terms.push(([0i32; MAX_RANK], c));
        }
        Laurent {
            rank: Self::check_rank(rank),
            terms,
        }
    }

    /// The variable `x_i` (1-based).
    pub fn var(rank: usize, i: usize) -> Self {
        let mut e = vec![0i64; rank];
        e[i - 1] = 1;
        Laurent::monomial(rank, &e, 1)
    }

    pub fn monomial(rank: usize, expt: &[i64], coeff: i128) -> Self {
        Self::check_rank(rank);
        assert_eq!(expt.len(), rank);
        let mut terms = Vec::new();
        if coeff != 0 {
            terms.push((key_from(expt), coeff));
        }
        Laurent { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == ([0i32; MAX_RANK], 1)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order on the exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<i64>, i128)> + '_ {
        self.terms
            .iter()
            .map(|(k, c)| (key_to_vec(k, self.rank), *c))
    }

    pub fn coeff(&self, expt: &[i64]) -> i128 {
        let k = key_from(expt);
        match self.terms.binary_search_by(|(tk, _)| tk.cmp(&k)) {
            Ok(idx) => self.terms[idx].1,
            Err(_) => 0,
        }
    }

    /// Largest 1-norm over the exponent vectors.
    pub fn max_degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|(k, _)| k[..self.rank].iter().map(|&x| x.unsigned_abs() as i64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        assert_eq!(self.rank, other.rank);
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        terms.extend_from_slice(&self.terms);
        terms.extend_from_slice(&other.terms);
        Laurent {
            rank: self.rank,
            terms: collapse(terms).expect("addition overflow"),
        }
    }

    pub fn neg(&self) -> Laurent {
        Laurent {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        self.try_mul(other).expect("multiplication overflow")
    }

    pub fn try_mul(&self, other: &Laurent) -> Result<Laurent, LaurentError> {
        if self.rank != other.rank {
            return Err(LaurentError::RankMismatch(self.rank, other.rank));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let c = ca.checked_mul(*cb).ok_or(LaurentError::Overflow)?;
                terms.push((key_add(ka, kb), c));
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms: collapse(terms)?,
        })
    }

    pub fn pow(&self, k: u32) -> Laurent {
        self.try_pow(k).expect("power overflow")
    }

    pub fn try_pow(&self, k: u32) -> Result<Laurent, LaurentError> {
        let mut out = Laurent::one(self.rank);
        for _ in 0..k {
            out = out.try_mul(self)?;
        }
        Ok(out)
    }

    /// Shift all exponents by `delta` (multiplication by the monomial
    /// `x^delta`).
    pub fn shift(&self, delta: &[i64]) -> Laurent {
        assert_eq!(delta.len(), self.rank);
        let dk = key_from(delta);
        Laurent {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (key_add(k, &dk), *c))
                .collect(),
        }
    }

    /// Exact division; fails with `InexactDivision` when the quotient is
    /// not a Laurent polynomial.
    pub fn div_exact(&self, divisor: &Laurent) -> Result<Laurent, LaurentError> {
        if self.rank != divisor.rank {
            return Err(LaurentError::RankMismatch(self.rank, divisor.rank));
        }
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Laurent::zero(self.rank));
        }
        // long division in lex order; Laurent shifts cancel because both
        // leading keys already include them
        let (lede, ledc) = *divisor.terms.last().expect("nonzero divisor");
        let mut rem: BTreeMap<Key, i128> = self.terms.iter().cloned().collect();
        let mut quo: Vec<(Key, i128)> = Vec::new();
        while let Some((&re, &rc)) = rem.iter().next_back() {
            let qe = key_sub(&re, &lede);
            if rc % ledc != 0 {
                return Err(LaurentError::InexactDivision);
            }
            let qc = rc / ledc;
            quo.push((qe, qc));
            for (dk, dc) in &divisor.terms {
                let k = key_add(&qe, dk);
                let delta = qc.checked_mul(*dc).ok_or(LaurentError::Overflow)?;
                let entry = rem.entry(k).or_insert(0);
                *entry = entry.checked_sub(delta).ok_or(LaurentError::Overflow)?;
                if *entry == 0 {
                    rem.remove(&k);
                }
            }
            if quo.len() > self.terms.len() * divisor.terms.len() + 16 {
                return Err(LaurentError::InexactDivision);
            }
        }
        Ok(Laurent {
            rank: self.rank,
            terms: collapse(quo)?,
        })
    }

    /// Substitute `1` for the variables in `ones` (1-based indices) and
    /// renumber the remaining variables in order.
    pub fn specialize_ones(&self, ones: &[usize]) -> Laurent {
        let keep: Vec<usize> = (1..=self.rank).filter(|i| !ones.contains(i)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            let mut nk = [0i32; MAX_RANK];
            for (slot, &i) in nk.iter_mut().zip(&keep) {
                *slot = k[i - 1];
            }
            terms.push((nk, *c));
        }
        Laurent {
            rank: keep.len(),
            terms: collapse(terms).expect("specialization overflow"),
        }
    }

    /// Substitute Laurent polynomials for variables. `images[i]` is the
    /// image of variable `i+1`; negative exponents go through exact
    /// division.
    pub fn substitute(&self, images: &[Laurent]) -> Result<Laurent, LaurentError> {
        assert_eq!(images.len(), self.rank);
        let rank_out = images.first().map_or(0, |p| p.rank());
        let mut out = Laurent::zero(rank_out);
        for (e, c) in self.terms() {
            let mut term = Laurent::constant(rank_out, c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.try_mul(&images[i].pow(k as u32))?;
                } else if k < 0 {
                    let p = images[i].pow((-k) as u32);
                    term = term.div_exact(&p)?;
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Render with the given variable namer, terms in ascending lex order.
    pub fn display_with<F>(&self, namer: F) -> LaurentDisplay<'_, F>
    where
        F: Fn(usize) -> String,
    {
        LaurentDisplay { poly: self, namer }
    }

    pub fn to_string_with_names(&self, names: &[String]) -> String {
        format!("{}", self.display_with(|i| names[i - 1].clone()))
    }
}

pub struct LaurentDisplay<'a, F> {
    poly: &'a Laurent,
    namer: F,
}

impl<F> fmt::Display for LaurentDisplay<'_, F>
where
    F: Fn(usize) -> String,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.poly.terms() {
            let neg = c < 0;
            let abs = c.unsigned_abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| {
                    let name = (self.namer)(i + 1);
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
