//! Potentials on labeled quivers: cyclic words, cyclic derivatives,
//! premutation, reduction to the reduced part, and Jacobi relations.

use crate::quiver::{Quiver, QuiverError, Vertex};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PotentialError {
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate arrow label `{0}`")]
    DuplicateArrow(String),
    #[error("word `{0}` is not an oriented cycle")]
    NotACycle(String),
    #[error("path `{0}` has mismatched endpoints")]
    NotAPath(String),
    #[error("reduction diverged: {0}")]
    ReductionDiverged(String),
    #[error("QP is not mutatable at {k}: reduced quiver disagrees with quiver mutation")]
    NotMutatable { k: Vertex },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A labeled arrow of a quiver.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Arrow {
    pub label: String,
    pub from: Vertex,
    pub to: Vertex,
}

/// Quiver presented with named arrows. Loops are always rejected; oriented
/// 2-cycles are permitted only in the premutation stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledQuiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl LabeledQuiver {
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self, PotentialError> {
        let mut seen = BTreeSet::new();
        for a in &arrows {
            if a.from == 0 || a.from > n {
                return Err(QuiverError::InvalidVertex(a.from, n).into());
            }
            if a.to == 0 || a.to > n {
                return Err(QuiverError::InvalidVertex(a.to, n).into());
            }
            if a.from == a.to {
                return Err(
                    QuiverError::InvariantViolation(format!("loop arrow `{}`", a.label)).into(),
                );
            }
            if !seen.insert(a.label.clone()) {
                return Err(PotentialError::DuplicateArrow(a.label.clone()));
            }
        }
        Ok(LabeledQuiver { n, arrows })
    }

    /// Auto-label the arrows of a count matrix as `a<i>_<j>` with a
    /// trailing index for parallel arrows.
    pub fn from_counts(q: &Quiver) -> Self {
        let n = q.rank();
        let mut arrows = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let m = q.count(i, j);
                for t in 1..=m {
                    let label = if m == 1 {
                        format!("a{i}_{j}")
                    } else {
                        format!("a{i}_{j}_{t}")
                    };
                    arrows.push(Arrow { label, from: i, to: j });
                }
            }
        }
        LabeledQuiver { n, arrows }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, label: &str) -> Result<&Arrow, PotentialError> {
        self.arrows
            .iter()
            .find(|a| a.label == label)
            .ok_or_else(|| PotentialError::UnknownArrow(label.to_string()))
    }

    pub fn counts(&self) -> Result<Quiver, QuiverError> {
        Quiver::new(self.n, self.raw_counts())
    }

    /// Count matrix without the 2-cycle-freeness validation.
    pub fn raw_counts(&self) -> Vec<Vec<u32>> {
        let mut m = vec![vec![0u32; self.n]; self.n];
        for a in &self.arrows {
            m[a.from - 1][a.to - 1] += 1;
        }
        m
    }

    fn has_label(&self, label: &str) -> bool {
        self.arrows.iter().any(|a| a.label == label)
    }
}

/// An oriented cycle of labeled arrows, identified up to rotation. The
/// stored word is the lexicographically minimal rotation; arrows compose
/// left to right (the source of each arrow is the target of its
/// predecessor, cyclically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<String>);

impl CyclicWord {
    pub fn new(word: Vec<String>, quiver: &LabeledQuiver) -> Result<Self, PotentialError> {
        if word.is_empty() {
            return Err(PotentialError::NotACycle("<empty>".into()));
        }
        for w in 0..word.len() {
            let a = quiver.arrow(&word[w])?;
            let b = quiver.arrow(&word[(w + 1) % word.len()])?;
            if a.to != b.from {
                return Err(PotentialError::NotACycle(word.join(" ")));
            }
        }
        Ok(CyclicWord(canonical_rotation(word)))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.iter().any(|l| l == label)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(" "))
    }
}

fn canonical_rotation(word: Vec<String>) -> Vec<String> {
    let mut best = word.clone();
    for r in 1..word.len() {
        let mut rot = word[r..].to_vec();
        rot.extend_from_slice(&word[..r]);
        if rot < best {
            best = rot;
        }
    }
    best
}

/// Finite linear combination of cyclic words with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Potential {
    terms: BTreeMap<CyclicWord, BigRational>,
}

impl Potential {
    pub fn zero() -> Self {
        Potential::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CyclicWord, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, word: CyclicWord, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn max_cycle_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn mentions(&self, label: &str) -> bool {
        self.terms.keys().any(|w| w.contains(label))
    }

    fn coeff(&self, word: &CyclicWord) -> BigRational {
        self.terms.get(word).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Linear combination of parallel paths (all sharing source and target) in
/// the path algebra, written as arrow-label sequences composing left to
/// right. Carries the common endpoints so the zero polynomial keeps its
/// type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    pub from: Vertex,
    pub to: Vertex,
    terms: BTreeMap<Vec<String>, BigRational>,
}

impl NcPolynomial {
    pub fn zero(from: Vertex, to: Vertex) -> Self {
        NcPolynomial {
            from,
            to,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<String>, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_path(&mut self, path: Vec<String>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(path) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> NcPolynomial {
        if c.is_zero() {
            return NcPolynomial::zero(self.from, self.to);
        }
        NcPolynomial {
            from: self.from,
            to: self.to,
            terms: self.terms.iter().map(|(p, k)| (p.clone(), k * c)).collect(),
        }
    }

    pub fn sub(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_path(p.clone(), -c.clone());
        }
        out
    }
}

/// A quiver with potential whose underlying quiver satisfies the strict
/// invariants (no loops, no oriented 2-cycles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Qp {
    quiver: LabeledQuiver,
    potential: Potential,
}

/// Premutation output: the potential rules hold but the quiver may carry
/// oriented 2-cycles until `reduce` splits off the trivial part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreQp {
    pub quiver: LabeledQuiver,
    pub potential: Potential,
}

impl Qp {
    pub fn new(quiver: LabeledQuiver, potential: Potential) -> Result<Self, PotentialError> {
        quiver.counts()?; // enforces the 2-cycle-free invariant
        for (w, _) in potential.terms() {
            CyclicWord::new(w.labels().to_vec(), &quiver)?;
        }
        Ok(Qp { quiver, potential })
    }

    pub fn with_zero_potential(q: &Quiver) -> Self {
        Qp {
            quiver: LabeledQuiver::from_counts(q),
            potential: Potential::zero(),
        }
    }

    pub fn quiver(&self) -> &LabeledQuiver {
        &self.quiver
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn counts(&self) -> Quiver {
        self.quiver.counts().expect("Qp invariant")
    }
}

/// Cyclic derivative with respect to an arrow: for each occurrence of the
/// arrow in a cycle, the remaining word read from just after the occurrence.
pub fn cyclic_derivative(
    quiver: &LabeledQuiver,
    w: &Potential,
    arrow: &str,
) -> Result<NcPolynomial, PotentialError> {
    let a = quiver.arrow(arrow)?;
    let mut out = NcPolynomial::zero(a.to, a.from);
    for (cycle, coeff) in w.terms() {
        let word = cycle.labels();
        for (idx, lbl) in word.iter().enumerate() {
            if lbl == arrow {
                let mut tail: Vec<String> = word[idx + 1..].to_vec();
                tail.extend_from_slice(&word[..idx]);
                out.add_path(tail, coeff.clone());
            }
        }
    }
    Ok(out)
}

/// One Jacobi relation per arrow.
pub fn jacobi_relations(qp: &Qp) -> Vec<(String, NcPolynomial)> {
    qp.quiver
        .arrows()
        .iter()
        .map(|a| {
            let d = cyclic_derivative(&qp.quiver, &qp.potential, &a.label)
                .expect("arrow belongs to the quiver");
            (a.label.clone(), d)
        })
        .collect()
}

fn star_label(quiver_labels: &LabeledQuiver, base: &str, taken: &mut BTreeSet<String>) -> String {
    let mut label = format!("{base}*");
    while quiver_labels.has_label(&label) || taken.contains(&label) {
        label.push('\'');
    }
    taken.insert(label.clone());
    label
}

fn composite_label(
    quiver_labels: &LabeledQuiver,
    beta: &str,
    alpha: &str,
    taken: &mut BTreeSet<String>,
) -> String {
    let mut label = format!("[{beta}.{alpha}]");
    while quiver_labels.has_label(&label) || taken.contains(&label) {
        label.push('\'');
    }
    taken.insert(label.clone());
    label
}

/// Premutation at `k`: composite arrows `[beta.alpha]` for every passage
/// `alpha: u -> k`, `beta: k -> v`; arrows at `k` replaced by starred
/// reversals; `[W]` rewrites each two-step passage through `k` by its
/// composite; plus the cubic correction linking each composite with the two
/// starred arrows.
pub fn premutate(qp: &Qp, k: Vertex) -> Result<PreQp, PotentialError> {
    let q = &qp.quiver;
    q.counts()?.check_vertex(k)?;
    let incoming: Vec<Arrow> = q.arrows().iter().filter(|a| a.to == k).cloned().collect();
    let outgoing: Vec<Arrow> = q.arrows().iter().filter(|a| a.from == k).cloned().collect();

    let mut taken = BTreeSet::new();
    let mut new_arrows: Vec<Arrow> = Vec::new();
    // untouched arrows keep their labels
    for a in q.arrows() {
        if a.from != k && a.to != k {
            new_arrows.push(a.clone());
        }
    }
    // composites
    let mut comp: BTreeMap<(String, String), String> = BTreeMap::new();
    for alpha in &incoming {
        for beta in &outgoing {
            let label = composite_label(q, &beta.label, &alpha.label, &mut taken);
            comp.insert((alpha.label.clone(), beta.label.clone()), label.clone());
            new_arrows.push(Arrow {
                label,
                from: alpha.from,
                to: beta.to,
            });
        }
    }
    // starred reversals
    let mut star: BTreeMap<String, String> = BTreeMap::new();
    for a in incoming.iter().chain(&outgoing) {
        let label = star_label(q, &a.label, &mut taken);
        star.insert(a.label.clone(), label.clone());
        new_arrows.push(Arrow {
            label,
            from: a.to,
            to: a.from,
        });
    }
    let new_quiver = LabeledQuiver::new(q.rank(), new_arrows)?;

    let mut new_potential = Potential::zero();
    // [W]: rewrite passages through k
    for (cycle, coeff) in qp.potential.terms() {
        let word = cycle.labels().to_vec();
        // rotate so the word does not start in the middle of a passage
        let start = word
            .iter()
            .position(|l| q.arrow(l).expect("cycle arrow").from != k)
            .ok_or_else(|| PotentialError::NotACycle(format!("{cycle}")))?;
        let mut rot: Vec<String> = word[start..].to_vec();
        rot.extend_from_slice(&word[..start]);
        let mut rewritten: Vec<String> = Vec::with_capacity(rot.len());
        let mut idx = 0;
        while idx < rot.len() {
            let lbl = &rot[idx];
            let arr = q.arrow(lbl).expect("cycle arrow");
            if arr.to == k {
                let next = &rot[(idx + 1) % rot.len()];
                debug_assert!(idx + 1 < rot.len(), "rotation leaves no wrap-around passage");
                let c = comp
                    .get(&(lbl.clone(), next.clone()))
                    .expect("passage has a composite");
                rewritten.push(c.clone());
                idx += 2;
            } else {
                rewritten.push(lbl.clone());
                idx += 1;
            }
        }
        new_potential.add_term(CyclicWord::new(rewritten, &new_quiver)?, coeff.clone());
    }
    // the correction term: one cubic cycle per composite
    for alpha in &incoming {
        for beta in &outgoing {
            let c = comp[&(alpha.label.clone(), beta.label.clone())].clone();
            let word = vec![
                c,
                star[&beta.label].clone(),
                star[&alpha.label].clone(),
            ];
            new_potential.add_term(CyclicWord::new(word, &new_quiver)?, BigRational::one());
        }
    }

    Ok(PreQp {
        quiver: new_quiver,
        potential: new_potential,
    })
}

impl From<Qp> for PreQp {
    fn from(qp: Qp) -> PreQp {
        PreQp {
            quiver: qp.quiver,
            potential: qp.potential,
        }
    }
}

/// Substitute arrows by parallel path polynomials in every cycle,
/// multilinearly over all occurrences.
fn substitute(
    w: &Potential,
    repl: &BTreeMap<String, NcPolynomial>,
    quiver: &LabeledQuiver,
    max_len: usize,
) -> Result<Potential, PotentialError> {
    let mut out = Potential::zero();
    for (cycle, coeff) in w.terms() {
        let word = cycle.labels();
        // expand the product over all occurrences of substituted arrows
        let mut partial: Vec<(Vec<String>, BigRational)> = vec![(Vec::new(), coeff.clone())];
        for lbl in word {
            match repl.get(lbl) {
                None => {
                    for (p, _) in &mut partial {
                        p.push(lbl.clone());
                    }
                }
                Some(poly) => {
                    let mut next = Vec::new();
                    for (p, c) in &partial {
                        for (path, pc) in poly.terms() {
                            let mut np = p.clone();
                            np.extend(path.iter().cloned());
                            next.push((np, c * pc));
                        }
                    }
                    partial = next;
                }
            }
            if partial.is_empty() {
                break;
            }
        }
        for (p, c) in partial {
            if c.is_zero() {
                continue;
            }
            if p.len() > max_len {
                return Err(PotentialError::ReductionDiverged(format!(
                    "substitution produced a cycle of length {} (cap {max_len})",
                    p.len()
                )));
            }
            out.add_term(CyclicWord::new(p, quiver)?, c);
        }
    }
    Ok(out)
}

/// Reduce a QP to its reduced part: eliminate every length-2 potential term
/// by Gaussian elimination on the quadratic part, deleting the arrow pair,
/// with iteration and degree caps surfacing non-reducible inputs. The
/// output quiver may still carry 2-cycles whose arrows never met the
/// potential; `mutate_qp` rejects those as not mutatable.
pub fn reduce_raw(input: &PreQp, iteration_cap: usize) -> Result<PreQp, PotentialError> {
    let mut quiver = input.quiver.clone();
    let mut w = input.potential.clone();
    let max_len = (2 * w.max_cycle_len()).max(4);

    for _iter in 0..iteration_cap {
        let two_term = w
            .terms()
            .filter(|(word, _)| word.len() == 2)
            .map(|(word, _)| word.clone())
            .next();
        let Some(word) = two_term else {
            // no quadratic part left
            let leftovers: Vec<&CyclicWord> =
                w.terms().map(|(t, _)| t).filter(|t| t.len() < 3).collect();
            if !leftovers.is_empty() {
                return Err(PotentialError::ReductionDiverged(format!(
                    "short cycles remain: {leftovers:?}"
                )));
            }
            return Ok(PreQp {
                quiver,
                potential: w,
            });
        };
        let c = w.coeff(&word);
        let a = word.labels()[0].clone();
        let b = word.labels()[1].clone();
        // solve the two cyclic derivatives to leading order and substitute
        // both arrows simultaneously
        let da = cyclic_derivative(&quiver, &w, &a)?;
        let db = cyclic_derivative(&quiver, &w, &b)?;
        let inv_c = BigRational::one() / c.clone();
        let mut minus_b = NcPolynomial::zero(da.from, da.to);
        minus_b.add_path(vec![b.clone()], c.clone());
        let repl_b = da.sub(&minus_b).scale(&-inv_c.clone());
        let mut minus_a = NcPolynomial::zero(db.from, db.to);
        minus_a.add_path(vec![a.clone()], c.clone());
        let repl_a = db.sub(&minus_a).scale(&-inv_c);
        let mut repl = BTreeMap::new();
        repl.insert(b.clone(), repl_b);
        repl.insert(a.clone(), repl_a);
        w = substitute(&w, &repl, &quiver, max_len)?;
        if w.mentions(&a) || w.mentions(&b) {
            // occurrences moved to higher length; keep eliminating
            continue;
        }
        let remaining: Vec<Arrow> = quiver
            .arrows()
            .iter()
            .filter(|arr| arr.label != a && arr.label != b)
            .cloned()
            .collect();
        quiver = LabeledQuiver::new(quiver.rank(), remaining)?;
    }
    Err(PotentialError::ReductionDiverged(format!(
        "no fixed point within {iteration_cap} iterations"
    )))
}

/// Reduction with the strict QP invariants enforced on the result.
pub fn reduce(input: &PreQp, iteration_cap: usize) -> Result<Qp, PotentialError> {
    let raw = reduce_raw(input, iteration_cap)?;
    Qp::new(raw.quiver, raw.potential)
}

/// QP mutation: premutate, reduce, and check the underlying quiver agrees
/// with plain quiver mutation.
pub fn mutate_qp(qp: &Qp, k: Vertex, iteration_cap: usize) -> Result<Qp, PotentialError> {
    let pre = premutate(qp, k)?;
    let red = reduce_raw(&pre, iteration_cap)?;
    let expected = qp.counts().mutate(k)?;
    if red.quiver.raw_counts() != *expected.matrix() {
        return Err(PotentialError::NotMutatable { k });
    }
    Qp::new(red.quiver, red.potential)
}

pub fn mutate_qp_seq(qp: &Qp, kseq: &[Vertex], iteration_cap: usize) -> Result<Qp, PotentialError> {
    let mut cur = qp.clone();
    for &k in kseq {
        cur = mutate_qp(&cur, k, iteration_cap)?;
    }
    Ok(cur)
}
