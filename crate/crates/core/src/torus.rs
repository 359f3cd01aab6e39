//! Truncated sign-twisted torus series over the lattice `M ⊕ L`, the
//! exponent-flip involution, the projection onto the x-torus, and the
//! unipotent automorphisms (DT-type and wall-crossing-type) together with
//! composition, inversion and coefficientwise comparison.
//!
//! Series are truncated in the y-direction only: a term survives iff the
//! 1-norm of its L-exponent is at most the truncation order. The x-exponents
//! are never truncated.

use crate::lattice::{self, LatticeError};
use crate::laurent::Laurent;
use crate::quiver::Quiver;
#[cfg(test)]
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cone {
    Positive,
    Negative,
    Mixed,
}

impl Cone {
    fn admits(self, v: &[i64]) -> bool {
        match self {
            Cone::Positive => v.iter().all(|&x| x >= 0),
            Cone::Negative => v.iter().all(|&x| x <= 0),
            Cone::Mixed => true,
        }
    }

    fn combine(self, other: Cone) -> Cone {
        if self == other {
            self
        } else {
            Cone::Mixed
        }
    }

    pub fn flip(self) -> Cone {
        match self {
            Cone::Positive => Cone::Negative,
            Cone::Negative => Cone::Positive,
            Cone::Mixed => Cone::Mixed,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("sign mismatch between operands")]
    SignMismatch,
    #[error("truncation order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("intermediate exponents cannot be bounded at this order: {0}")]
    TruncationOverflow(String),
    #[error("projection is only defined for the plus sign")]
    SignUnsupported,
    #[error("generator images do not identify the lattices (matrix not unimodular)")]
    NotUnimodular,
    #[error("automorphism inversion did not converge")]
    InversionFailed,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Truncated series: finite sum of terms `c * x^w y^v` with `|v|_1` at most
/// the truncation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusSeries {
    n: usize,
    sigma: Sign,
    trunc: usize,
    cone: Cone,
    terms: BTreeMap<(Vec<i64>, Vec<i64>), BigRational>,
}

fn norm1(v: &[i64]) -> usize {
    v.iter().map(|x| x.unsigned_abs() as usize).sum()
}

impl TorusSeries {
    pub fn zero(n: usize, sigma: Sign, trunc: usize, cone: Cone) -> Self {
        TorusSeries {
            n,
            sigma,
            trunc,
            cone,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize, sigma: Sign, trunc: usize, cone: Cone) -> Self {
        let mut s = TorusSeries::zero(n, sigma, trunc, cone);
        s.add_term(&vec![0; n], &vec![0; n], BigRational::one());
        s
    }

    pub fn monomial(
        n: usize,
        sigma: Sign,
        trunc: usize,
        cone: Cone,
        w: &[i64],
        v: &[i64],
    ) -> Self {
        let mut s = TorusSeries::zero(n, sigma, trunc, cone);
        s.add_term(w, v, BigRational::one());
        s
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> Sign {
        self.sigma
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn cone(&self) -> Cone {
        self.cone
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<i64>, Vec<i64>), &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|((w, v), c)| w.iter().all(|&x| x == 0) && v.iter().all(|&x| x == 0) && c.is_one())
    }

    pub fn coeff(&self, w: &[i64], v: &[i64]) -> BigRational {
        self.terms
            .get(&(w.to_vec(), v.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.n], &vec![0; self.n])
    }

    /// Insert a term, dropping it beyond the truncation order and widening
    /// the cone tag when the term leaves the declared cone.
    pub fn add_term(&mut self, w: &[i64], v: &[i64], c: BigRational) {
        assert_eq!(w.len(), self.n);
        assert_eq!(v.len(), self.n);
        if c.is_zero() || norm1(v) > self.trunc {
            return;
        }
        if !self.cone.admits(v) {
            self.cone = Cone::Mixed;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w.to_vec(), v.to_vec())) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &TorusSeries) -> Result<TorusSeries, TorusError> {
        check_compat(self, other)?;
        let mut out = self.clone();
        out.cone = self.cone.combine(other.cone);
        for ((w, v), c) in &other.terms {
            out.add_term(w, v, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> TorusSeries {
        if c.is_zero() {
            return TorusSeries::zero(self.n, self.sigma, self.trunc, self.cone);
        }
        TorusSeries {
            n: self.n,
            sigma: self.sigma,
            trunc: self.trunc,
            cone: self.cone,
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Negate every exponent and flip the cone tag.
    pub fn sigma_involution(&self) -> TorusSeries {
        TorusSeries {
            n: self.n,
            sigma: self.sigma,
            trunc: self.trunc,
            cone: self.cone.flip(),
            terms: self
                .terms
                .iter()
                .map(|((w, v), c)| {
                    (
                        (
                            w.iter().map(|x| -x).collect(),
                            v.iter().map(|x| -x).collect(),
                        ),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Forget terms beyond a smaller truncation order.
    pub fn truncate(&self, order: usize) -> TorusSeries {
        let mut out = TorusSeries::zero(self.n, self.sigma, order, self.cone);
        for ((w, v), c) in &self.terms {
            out.add_term(w, v, c.clone());
        }
        out
    }

    /// The x-part as a Laurent polynomial; `None` when some term still has
    /// a nonzero y-exponent or a non-integer coefficient.
    pub fn x_part_to_laurent(&self) -> Option<Laurent> {
        let mut out = Laurent::zero(self.n);
        for ((w, v), c) in &self.terms {
            if v.iter().any(|&x| x != 0) || !c.is_integer() {
                return None;
            }
            let coeff = c.to_integer().try_into().ok()?;
            out = out.add(&Laurent::monomial(self.n, w, coeff));
        }
        Some(out)
    }

    /// Effective cone of the actual y-support, ignoring the tag.
    fn support_cone(&self) -> Cone {
        let mut pos = true;
        let mut neg = true;
        for ((_, v), _) in &self.terms {
            if v.iter().any(|&x| x < 0) {
                pos = false;
            }
            if v.iter().any(|&x| x > 0) {
                neg = false;
            }
        }
        if pos {
            Cone::Positive
        } else if neg {
            Cone::Negative
        } else {
            Cone::Mixed
        }
    }

    pub fn to_display_string(&self) -> String {
        format!("{self}")
    }
}

impl fmt::Display for TorusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // graded order: total degree, then lex on (w, v)
        let mut keys: Vec<&(Vec<i64>, Vec<i64>)> = self.terms.keys().collect();
        keys.sort_by_key(|(w, v)| (norm1(w) + norm1(v), w.clone(), v.clone()));
        let mut first = true;
        for key in keys {
            let c = &self.terms[key];
            let (w, v) = key;
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
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
            let mut pieces = Vec::new();
            if w.iter().any(|&x| x != 0) {
                pieces.push(format!(
                    "x[{}]",
                    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            if v.iter().any(|&x| x != 0) {
                pieces.push(format!(
                    "y[{}]",
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
                ));
            }
            if pieces.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", pieces.join("*"))?;
            } else {
                write!(f, "{abs}*{}", pieces.join("*"))?;
            }
        }
        Ok(())
    }
}

fn check_compat(a: &TorusSeries, b: &TorusSeries) -> Result<(), TorusError> {
    if a.sigma != b.sigma {
        return Err(TorusError::SignMismatch);
    }
    if a.trunc != b.trunc {
        return Err(TorusError::OrderMismatch(a.trunc, b.trunc));
    }
    if a.n != b.n {
        return Err(TorusError::RankMismatch(a.n, b.n));
    }
    Ok(())
}

/// How geometric inverses choose their expansion direction.
///
/// `ConeDriven` requires a unit constant term and a proper support cone and
/// expands away from the constant. `TowardPositive` factors out the unique
/// coordinatewise-minimal monomial and always expands into the positive
/// cone; this realizes inversion inside one fixed completion, which is what
/// comparing automorphisms across a mutation requires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionPolicy {
    ConeDriven,
    TowardPositive,
}

/// Arithmetic context: the quiver fixes the twist form, the sign fixes its
/// base, and the truncation order bounds every stored y-exponent.
#[derive(Debug, Clone)]
pub struct TorusRing {
    pub quiver: Quiver,
    pub sigma: Sign,
    pub trunc: usize,
    pub policy: InversionPolicy,
}

impl TorusRing {
    pub fn new(quiver: Quiver, sigma: Sign, trunc: usize) -> Self {
        TorusRing {
            quiver,
            sigma,
            trunc,
            policy: InversionPolicy::ConeDriven,
        }
    }

    pub fn with_policy(quiver: Quiver, sigma: Sign, trunc: usize, policy: InversionPolicy) -> Self {
        TorusRing {
            quiver,
            sigma,
            trunc,
            policy,
        }
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn one(&self) -> TorusSeries {
        TorusSeries::one(self.rank(), self.sigma, self.trunc, Cone::Positive)
    }

    pub fn zero(&self) -> TorusSeries {
        TorusSeries::zero(self.rank(), self.sigma, self.trunc, Cone::Positive)
    }

    fn check(&self, a: &TorusSeries) -> Result<(), TorusError> {
        if a.sigma != self.sigma {
            return Err(TorusError::SignMismatch);
        }
        if a.trunc != self.trunc {
            return Err(TorusError::OrderMismatch(a.trunc, self.trunc));
        }
        if a.n != self.rank() {
            return Err(TorusError::RankMismatch(a.n, self.rank()));
        }
        Ok(())
    }

    /// Twist sign for combining the y-parts of two terms.
    fn twist(&self, a: &[i64], b: &[i64]) -> BigRational {
        match self.sigma {
            Sign::Plus => BigRational::one(),
            Sign::Minus => {
                if lattice::chi_l(&self.quiver, a, b) % 2 == 0 {
                    BigRational::one()
                } else {
                    -BigRational::one()
                }
            }
        }
    }

    pub fn mul(&self, a: &TorusSeries, b: &TorusSeries) -> Result<TorusSeries, TorusError> {
        self.check(a)?;
        self.check(b)?;
        check_compat(a, b)?;
        let mut out = TorusSeries::zero(
            self.rank(),
            self.sigma,
            self.trunc,
            a.cone.combine(b.cone),
        );
        for ((wa, va), ca) in &a.terms {
            for ((wb, vb), cb) in &b.terms {
                let v: Vec<i64> = va.iter().zip(vb).map(|(x, y)| x + y).collect();
                if norm1(&v) > self.trunc {
                    continue;
                }
                let w: Vec<i64> = wa.iter().zip(wb).map(|(x, y)| x + y).collect();
                out.add_term(&w, &v, ca * cb * self.twist(va, vb));
            }
        }
        Ok(out)
    }

    /// Geometric-series inverse at truncation, following the ring's
    /// inversion policy.
    pub fn invert(&self, a: &TorusSeries) -> Result<TorusSeries, TorusError> {
        match self.policy {
            InversionPolicy::ConeDriven => self.invert_cone_driven(a),
            InversionPolicy::TowardPositive => self.invert_toward_positive(a),
        }
    }

    /// The constant term must be nonzero and every other term must carry a
    /// nonzero y-exponent with all of them on one side of the cone.
    fn invert_cone_driven(&self, a: &TorusSeries) -> Result<TorusSeries, TorusError> {
        self.check(a)?;
        let c0 = a.constant_term();
        if c0.is_zero() {
            return Err(TorusError::NotAUnit(
                "constant term is zero".to_string(),
            ));
        }
        let mut tail = a.scale(&(BigRational::one() / &c0));
        tail.terms.remove(&(vec![0; self.rank()], vec![0; self.rank()]));
        if tail
            .terms
            .keys()
            .any(|(_, v)| v.iter().all(|&x| x == 0))
        {
            return Err(TorusError::NotAUnit(
                "non-constant term with zero y-exponent".to_string(),
            ));
        }
        if tail.support_cone() == Cone::Mixed {
            return Err(TorusError::TruncationOverflow(
                "inverse of a mixed-cone series".to_string(),
            ));
        }
        self.geometric(&tail, &c0)
    }

    /// Factor out the unique y-minimal monomial and expand into the
    /// positive cone.
    fn invert_toward_positive(&self, a: &TorusSeries) -> Result<TorusSeries, TorusError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(TorusError::NotAUnit("zero series".to_string()));
        }
        // the head must be the unique term whose y-exponent is
        // coordinatewise minimal
        let mut head: Option<(&Vec<i64>, &Vec<i64>, &BigRational)> = None;
        for ((w, v), c) in &a.terms {
            match head {
                None => head = Some((w, v, c)),
                Some((_, hv, _)) => {
                    if v.iter().zip(hv).all(|(x, h)| x <= h) {
                        head = Some((w, v, c));
                    }
                }
            }
        }
        let (hw, hv, hc) = head.expect("nonempty series");
        let (hw, hv, hc) = (hw.clone(), hv.clone(), hc.clone());
        for ((w, v), _) in &a.terms {
            let dominated = v.iter().zip(&hv).all(|(x, h)| x >= h);
            let same_y = v == &hv;
            if !dominated || (same_y && w != &hw) {
                return Err(TorusError::TruncationOverflow(format!(
                    "no unique minimal monomial to invert toward the positive cone \
                     (head y{hv:?}, offender y{v:?})"
                )));
            }
        }
        // a = x^hw y^hv hc (1 + tail), tail strictly positive
        let mut tail = TorusSeries::zero(self.rank(), self.sigma, self.trunc, Cone::Positive);
        for ((w, v), c) in &a.terms {
            if v == &hv {
                continue;
            }
            let dw: Vec<i64> = w.iter().zip(&hw).map(|(x, h)| x - h).collect();
            let dv: Vec<i64> = v.iter().zip(&hv).map(|(x, h)| x - h).collect();
            // undo the twist picked up by splitting off the head monomial
            let tw = self.twist(&hv, &dv);
            tail.add_term(&dw, &dv, c / &hc * tw);
        }
        let inv_unit = self.geometric(&tail, &BigRational::one())?;
        let neg_w: Vec<i64> = hw.iter().map(|x| -x).collect();
        let neg_v: Vec<i64> = hv.iter().map(|x| -x).collect();
        let head_inv = TorusSeries::monomial(
            self.rank(),
            self.sigma,
            self.trunc,
            Cone::Mixed,
            &neg_w,
            &neg_v,
        );
        Ok(self.mul(&head_inv, &inv_unit)?.scale(&(BigRational::one() / hc)))
    }

    /// `1/(c0 (1 + tail))` for a tail supported in a proper cone.
    fn geometric(&self, tail: &TorusSeries, c0: &BigRational) -> Result<TorusSeries, TorusError> {
        let minus = tail.scale(&-BigRational::one());
        let mut acc = self.one();
        let mut power = self.one();
        for _ in 1..=self.trunc {
            power = self.mul(&power, &minus)?;
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc.scale(&(BigRational::one() / c0)))
    }

    pub fn pow(&self, a: &TorusSeries, k: i64) -> Result<TorusSeries, TorusError> {
        if k == 0 {
            return Ok(self.one());
        }
        let base = if k < 0 { self.invert(a)? } else { a.clone() };
        let mut out = base.clone();
        for _ in 1..k.unsigned_abs() {
            out = self.mul(&out, &base)?;
        }
        Ok(out)
    }

    /// Projection onto the x-torus: each y-monomial is rewritten as the
    /// x-monomial of its class. Plus sign only.
    pub fn pi_project(&self, a: &TorusSeries) -> Result<TorusSeries, TorusError> {
        if self.sigma != Sign::Plus {
            return Err(TorusError::SignUnsupported);
        }
        self.check(a)?;
        let n = self.rank();
        let mut out = TorusSeries::zero(n, self.sigma, self.trunc, a.cone);
        for ((w, v), c) in &a.terms {
            let cls = lattice::class_in_m_coords(&self.quiver, v);
            let nw: Vec<i64> = w.iter().zip(&cls).map(|(a, b)| a + b).collect();
            out.add_term(&nw, &vec![0; n], c.clone());
        }
        Ok(out)
    }
}

/// Image of one torus generator under an automorphism: the monomial carried
/// by the generator times a series factor (constant term 1 for every
/// constructor-built automorphism).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorImage {
    pub w: Vec<i64>,
    pub v: Vec<i64>,
    pub factor: TorusSeries,
}

impl GeneratorImage {
    /// The untouched image of a single generator (series factor 1).
    pub fn generator(n: usize, sigma: Sign, trunc: usize, x_index: Option<usize>, y_index: Option<usize>) -> Self {
        let mut w = vec![0i64; n];
        let mut v = vec![0i64; n];
        if let Some(i) = x_index {
            w[i - 1] = 1;
        }
        if let Some(i) = y_index {
            v[i - 1] = 1;
        }
        GeneratorImage {
            w,
            v,
            factor: TorusSeries::one(n, sigma, trunc, Cone::Positive),
        }
    }

    /// Expand to an honest series.
    pub fn to_series(&self, ring: &TorusRing) -> Result<TorusSeries, TorusError> {
        let monomial = TorusSeries::monomial(
            ring.rank(),
            ring.sigma,
            ring.trunc,
            Cone::Mixed,
            &self.w,
            &self.v,
        );
        ring.mul(&monomial, &self.factor)
    }
}

/// Unipotent torus automorphism presented by the images of the `2n`
/// generators of the base torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusAutomorphism {
    pub x_images: Vec<GeneratorImage>,
    pub y_images: Vec<GeneratorImage>,
}

/// Columns of the two unimodular matrices identifying a mutated torus with
/// the base torus: column `i` is the class of the i-th mutated-side
/// x-generator (in M) resp. y-generator (in L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeIdentification {
    pub m_cols: Vec<Vec<i64>>,
    pub l_cols: Vec<Vec<i64>>,
}

impl LatticeIdentification {
    pub fn identity(n: usize) -> Self {
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeIdentification {
            m_cols: cols.clone(),
            l_cols: cols,
        }
    }
}

fn cols_to_matrix(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cols.len();
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect()
}

impl TorusAutomorphism {
    pub fn identity(ring: &TorusRing) -> Self {
        let n = ring.rank();
        TorusAutomorphism {
            x_images: (1..=n)
                .map(|i| GeneratorImage::generator(n, ring.sigma, ring.trunc, Some(i), None))
                .collect(),
            y_images: (1..=n)
                .map(|i| GeneratorImage::generator(n, ring.sigma, ring.trunc, None, Some(i)))
                .collect(),
        }
    }

    /// DT-type automorphism from per-vertex series with constant term 1:
    /// `x_i` picks up the i-th series, `y_i` picks up the product of the
    /// series to the antisymmetrized arrow-count powers.
    pub fn dt(ring: &TorusRing, z: &[TorusSeries]) -> Result<Self, TorusError> {
        let n = ring.rank();
        assert_eq!(z.len(), n);
        for s in z {
            ring.check(s)?;
            if !s.constant_term().is_one() {
                return Err(TorusError::NotAUnit(
                    "per-vertex series must have constant term 1".to_string(),
                ));
            }
        }
        let mut x_images = Vec::with_capacity(n);
        let mut y_images = Vec::with_capacity(n);
        for i in 1..=n {
            let mut img = GeneratorImage::generator(n, ring.sigma, ring.trunc, Some(i), None);
            img.factor = z[i - 1].clone();
            x_images.push(img);
        }
        for i in 1..=n {
            let mut factor = ring.one();
            for j in 1..=n {
                let e = ring.quiver.bar(j, i);
                if e != 0 {
                    factor = ring.mul(&factor, &ring.pow(&z[j - 1], e)?)?;
                }
            }
            let mut img = GeneratorImage::generator(n, ring.sigma, ring.trunc, None, Some(i));
            img.factor = factor;
            y_images.push(img);
        }
        Ok(TorusAutomorphism { x_images, y_images })
    }

    /// Automorphism presented on the mutated-side generators and expressed
    /// on the base torus through the lattice identification: the i-th
    /// mutated x-generator picks up the i-th series, the i-th mutated
    /// y-generator picks up the product of the series to the mutated
    /// quiver's antisymmetrized arrow-count powers. The base-generator
    /// images follow by unimodular change of basis. With Grassmannian
    /// quotient series this is the wall-crossing automorphism; with the
    /// mutated-side Hilbert series it is the mutated DT automorphism.
    pub fn on_mutated_generators(
        ring: &TorusRing,
        per_vertex: &[TorusSeries],
        mutated: &Quiver,
        ident: &LatticeIdentification,
    ) -> Result<Self, TorusError> {
        let n = ring.rank();
        assert_eq!(per_vertex.len(), n);
        for s in per_vertex {
            ring.check(s)?;
            if !s.constant_term().is_one() {
                return Err(TorusError::NotAUnit(
                    "per-vertex series must have constant term 1".to_string(),
                ));
            }
        }
        // images of the mutated-side generators
        let mut primed_x = Vec::with_capacity(n);
        let mut primed_y = Vec::with_capacity(n);
        for i in 1..=n {
            primed_x.push(GeneratorImage {
                w: ident.m_cols[i - 1].clone(),
                v: vec![0; n],
                factor: per_vertex[i - 1].clone(),
            });
        }
        for i in 1..=n {
            let mut factor = ring.one();
            for j in 1..=n {
                let e = mutated.bar(j, i);
                if e != 0 {
                    factor = ring.mul(&factor, &ring.pow(&per_vertex[j - 1], e)?)?;
                }
            }
            primed_y.push(GeneratorImage {
                w: vec![0; n],
                v: ident.l_cols[i - 1].clone(),
                factor,
            });
        }
        Self::from_primed_images(ring, &primed_x, &primed_y, ident)
    }

    /// Convert generator images given on a mutated-side basis into images
    /// of the base generators.
    fn from_primed_images(
        ring: &TorusRing,
        primed_x: &[GeneratorImage],
        primed_y: &[GeneratorImage],
        ident: &LatticeIdentification,
    ) -> Result<Self, TorusError> {
        let n = ring.rank();
        let m_inv = crate::cluster::mat_inv_unimodular(&cols_to_matrix(&ident.m_cols))
            .ok_or(TorusError::NotUnimodular)?;
        let l_inv = crate::cluster::mat_inv_unimodular(&cols_to_matrix(&ident.l_cols))
            .ok_or(TorusError::NotUnimodular)?;
        let mut x_images = Vec::with_capacity(n);
        let mut y_images = Vec::with_capacity(n);
        for j in 1..=n {
            // e_j = sum_i minv[i][j] (m-col_i)
            let powers: Vec<i64> = (0..n).map(|i| m_inv[i][j - 1]).collect();
            let img = fold_images(ring, primed_x, &powers)?;
            debug_assert_eq!(img.v, vec![0; n]);
            let mut expect = vec![0i64; n];
            expect[j - 1] = 1;
            debug_assert_eq!(img.w, expect);
            x_images.push(img);
        }
        for j in 1..=n {
            let powers: Vec<i64> = (0..n).map(|i| l_inv[i][j - 1]).collect();
            let mut img = fold_images(ring, primed_y, &powers)?;
            // normalize: the bare product of the monomials may differ from
            // the basis monomial by a twist sign
            let bare = fold_bare_monomials(ring, &ident.l_cols, &powers);
            img.factor = img.factor.scale(&bare);
            let mut expect = vec![0i64; n];
            expect[j - 1] = 1;
            debug_assert_eq!(img.v, expect);
            debug_assert_eq!(img.w, vec![0; n]);
            y_images.push(img);
        }
        Ok(TorusAutomorphism { x_images, y_images })
    }

    /// Conjugate by the exponent-flip involution. The conjugate sends a
    /// generator with image `x^w y^v * u` to `x^w y^v * Sigma(u)^{-1}`; the
    /// flip is exact and the single inversion follows the ring's policy.
    pub fn sigma_conjugate(&self, ring: &TorusRing) -> Result<Self, TorusError> {
        let conj = |img: &GeneratorImage| -> Result<GeneratorImage, TorusError> {
            Ok(GeneratorImage {
                w: img.w.clone(),
                v: img.v.clone(),
                factor: ring.invert(&img.factor.sigma_involution())?,
            })
        };
        Ok(TorusAutomorphism {
            x_images: self
                .x_images
                .iter()
                .map(conj)
                .collect::<Result<_, _>>()?,
            y_images: self
                .y_images
                .iter()
                .map(conj)
                .collect::<Result<_, _>>()?,
        })
    }

    /// Image of a bare monomial `x^w y^v`.
    pub fn apply_monomial(
        &self,
        ring: &TorusRing,
        w: &[i64],
        v: &[i64],
    ) -> Result<GeneratorImage, TorusError> {
        let mut cache = PowerCache::new(ring.rank());
        self.apply_monomial_cached(ring, w, v, &mut cache)
    }

    fn apply_monomial_cached(
        &self,
        ring: &TorusRing,
        w: &[i64],
        v: &[i64],
        cache: &mut PowerCache,
    ) -> Result<GeneratorImage, TorusError> {
        let n = ring.rank();
        let mut acc_w = vec![0i64; n];
        let mut acc_v = vec![0i64; n];
        let mut factor = ring.one();
        for i in 0..n {
            if w[i] == 0 {
                continue;
            }
            let fp = cache.power(ring, true, i, &self.x_images[i].factor, w[i])?;
            factor = ring.mul(&factor, &fp)?;
            for (a, b) in acc_w.iter_mut().zip(&self.x_images[i].w) {
                *a += b * w[i];
            }
            for (a, b) in acc_v.iter_mut().zip(&self.x_images[i].v) {
                *a += b * w[i];
            }
        }
        for i in 0..n {
            if v[i] == 0 {
                continue;
            }
            let img = &self.y_images[i];
            let scaled_v: Vec<i64> = img.v.iter().map(|x| x * v[i]).collect();
            let twist = ring.twist(&acc_v, &scaled_v);
            let fp = cache.power(ring, false, i, &img.factor, v[i])?;
            factor = ring.mul(&factor, &fp)?.scale(&twist);
            for (a, b) in acc_w.iter_mut().zip(&img.w) {
                *a += b * v[i];
            }
            for (a, b) in acc_v.iter_mut().zip(&img.v) {
                *a += b * v[i];
            }
        }
        // correct for the twist between the basis monomial y^v and the
        // ordered product of the base generators
        if ring.sigma == Sign::Minus {
            let mut cols = Vec::new();
            let mut ps = Vec::new();
            for (i, &vi) in v.iter().enumerate() {
                if vi != 0 {
                    let mut e = vec![0i64; n];
                    e[i] = 1;
                    cols.push(e);
                    ps.push(vi);
                }
            }
            let bare = fold_bare_monomials(ring, &cols, &ps);
            factor = factor.scale(&bare);
        }
        Ok(GeneratorImage {
            w: acc_w,
            v: acc_v,
            factor,
        })
    }

    /// Image of a series, term by term, caching generator powers.
    pub fn apply_series(
        &self,
        ring: &TorusRing,
        s: &TorusSeries,
    ) -> Result<TorusSeries, TorusError> {
        ring.check(s)?;
        let mut cache = PowerCache::new(ring.rank());
        let mut out = ring.zero();
        for ((w, v), c) in &s.terms {
            let img = self.apply_monomial_cached(ring, w, v, &mut cache)?;
            let expanded = img.to_series(ring)?;
            out = out.add(&expanded.scale(c))?;
        }
        Ok(out)
    }

    fn apply_image(
        &self,
        ring: &TorusRing,
        img: &GeneratorImage,
    ) -> Result<GeneratorImage, TorusError> {
        let head = self.apply_monomial(ring, &img.w, &img.v)?;
        let tail = self.apply_series(ring, &img.factor)?;
        Ok(GeneratorImage {
            w: head.w,
            v: head.v,
            factor: ring.mul(&head.factor, &tail)?,
        })
    }

    /// Composition `self . other` (apply `other` first).
    pub fn compose(&self, ring: &TorusRing, other: &Self) -> Result<Self, TorusError> {
        let x_images = other
            .x_images
            .iter()
            .map(|img| self.apply_image(ring, img))
            .collect::<Result<Vec<_>, _>>()?;
        let y_images = other
            .y_images
            .iter()
            .map(|img| self.apply_image(ring, img))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TorusAutomorphism { x_images, y_images })
    }

    /// Inverse by fixed-point refinement on the generator images, verified
    /// on every generator at the ring's truncation order.
    pub fn inverse(&self, ring: &TorusRing) -> Result<Self, TorusError> {
        self.inverse_verified_to(ring, ring.trunc)
    }

    /// Inverse verified only up to the given order, for rings whose
    /// truncation order includes a working margin.
    pub fn inverse_verified_to(
        &self,
        ring: &TorusRing,
        verify_order: usize,
    ) -> Result<Self, TorusError> {
        let mut h = TorusAutomorphism::identity(ring);
        for _round in 0..=ring.trunc + 1 {
            let mut done = true;
            let mut next_x = Vec::with_capacity(h.x_images.len());
            for img in &h.x_images {
                let fh = self.apply_image(ring, img)?;
                if fh.factor.is_one() {
                    next_x.push(img.clone());
                    continue;
                }
                done = false;
                let corr = ring.invert(&fh.factor).map_err(|_| {
                    TorusError::TruncationOverflow(
                        "inversion correction is not a unit".to_string(),
                    )
                })?;
                next_x.push(GeneratorImage {
                    w: img.w.clone(),
                    v: img.v.clone(),
                    factor: ring.mul(&img.factor, &corr)?,
                });
            }
            let mut next_y = Vec::with_capacity(h.y_images.len());
            for img in &h.y_images {
                let fh = self.apply_image(ring, img)?;
                if fh.factor.is_one() {
                    next_y.push(img.clone());
                    continue;
                }
                done = false;
                let corr = ring.invert(&fh.factor).map_err(|_| {
                    TorusError::TruncationOverflow(
                        "inversion correction is not a unit".to_string(),
                    )
                })?;
                next_y.push(GeneratorImage {
                    w: img.w.clone(),
                    v: img.v.clone(),
                    factor: ring.mul(&img.factor, &corr)?,
                });
            }
            h = TorusAutomorphism {
                x_images: next_x,
                y_images: next_y,
            };
            if done {
                break;
            }
        }
        // verify
        let composed = self.compose(ring, &h)?;
        let id = TorusAutomorphism::identity(ring);
        if composed
            .difference_witness(ring, &id, verify_order)?
            .is_some()
        {
            return Err(TorusError::InversionFailed);
        }
        Ok(h)
    }

    pub fn is_identity(&self, ring: &TorusRing) -> Result<bool, TorusError> {
        let id = TorusAutomorphism::identity(ring);
        Ok(self.difference_witness(ring, &id, ring.trunc)?.is_none())
    }

    /// First differing coefficient between two automorphisms when compared
    /// generator by generator up to the given order; `None` when equal.
    pub fn difference_witness(
        &self,
        ring: &TorusRing,
        other: &Self,
        order: usize,
    ) -> Result<Option<DifferenceWitness>, TorusError> {
        for (kind, mine, theirs) in [
            ("x", &self.x_images, &other.x_images),
            ("y", &self.y_images, &other.y_images),
        ] {
            for (idx, (a, b)) in mine.iter().zip(theirs).enumerate() {
                let sa = a.to_series(ring)?;
                let sb = b.to_series(ring)?;
                if let Some(w) = series_difference(&sa, &sb, order) {
                    return Ok(Some(DifferenceWitness {
                        generator: format!("{kind}{}", idx + 1),
                        w: w.0,
                        v: w.1,
                        left: w.2,
                        right: w.3,
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// First differing coefficient found when comparing two automorphisms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceWitness {
    pub generator: String,
    pub w: Vec<i64>,
    pub v: Vec<i64>,
    pub left: BigRational,
    pub right: BigRational,
}

/// First coefficient difference between two series up to the order.
pub fn series_difference(
    a: &TorusSeries,
    b: &TorusSeries,
    order: usize,
) -> Option<(Vec<i64>, Vec<i64>, BigRational, BigRational)> {
    let mut keys: Vec<&(Vec<i64>, Vec<i64>)> = a.terms.keys().chain(b.terms.keys()).collect();
    keys.sort();
    keys.dedup();
    for (w, v) in keys {
        if norm1(v) > order {
            continue;
        }
        let ca = a.coeff(w, v);
        let cb = b.coeff(w, v);
        if ca != cb {
            return Some((w.clone(), v.clone(), ca, cb));
        }
    }
    None
}

/// Memo for small powers of the generator factors within one series
/// application.
struct PowerCache {
    x: Vec<BTreeMap<i64, TorusSeries>>,
    y: Vec<BTreeMap<i64, TorusSeries>>,
}

impl PowerCache {
    fn new(n: usize) -> Self {
        PowerCache {
            x: vec![BTreeMap::new(); n],
            y: vec![BTreeMap::new(); n],
        }
    }

    fn power(
        &mut self,
        ring: &TorusRing,
        is_x: bool,
        idx: usize,
        base: &TorusSeries,
        p: i64,
    ) -> Result<TorusSeries, TorusError> {
        let slot = if is_x { &mut self.x[idx] } else { &mut self.y[idx] };
        if let Some(hit) = slot.get(&p) {
            return Ok(hit.clone());
        }
        let val = ring.pow(base, p)?;
        slot.insert(p, val.clone());
        Ok(val)
    }
}

/// Multiply out `prod_k items[k]^{powers[k]}` into a single monomial-times-
/// factor image, accumulating the twist signs between the leading
/// monomials.
fn fold_images(
    ring: &TorusRing,
    items: &[GeneratorImage],
    powers: &[i64],
) -> Result<GeneratorImage, TorusError> {
    let n = ring.rank();
    let mut acc_w = vec![0i64; n];
    let mut acc_v = vec![0i64; n];
    let mut factor = ring.one();
    for (img, &p) in items.iter().zip(powers) {
        if p == 0 {
            continue;
        }
        let scaled_v: Vec<i64> = img.v.iter().map(|x| x * p).collect();
        let twist = ring.twist(&acc_v, &scaled_v);
        let fp = ring.pow(&img.factor, p)?;
        factor = ring.mul(&factor, &fp)?.scale(&twist);
        for (a, b) in acc_w.iter_mut().zip(&img.w) {
            *a += b * p;
        }
        for (a, b) in acc_v.iter_mut().zip(&img.v) {
            *a += b * p;
        }
    }
    Ok(GeneratorImage {
        w: acc_w,
        v: acc_v,
        factor,
    })
}

/// Sign relating the ordered product of bare monomials `y^{cols[k]*powers[k]}`
/// to the basis monomial of the summed exponent.
fn fold_bare_monomials(ring: &TorusRing, cols: &[Vec<i64>], powers: &[i64]) -> BigRational {
    if ring.sigma == Sign::Plus {
        return BigRational::one();
    }
    let n = ring.rank();
    let mut acc = vec![0i64; n];
    let mut sign = BigRational::one();
    for (col, &p) in cols.iter().zip(powers) {
        if p == 0 {
            continue;
        }
        let scaled: Vec<i64> = col.iter().map(|x| x * p).collect();
        sign *= ring.twist(&acc, &scaled);
        for (a, b) in acc.iter_mut().zip(&scaled) {
            *a += b;
        }
    }
    // product = sign * y^{acc}; the basis monomial needs the reciprocal
    sign
}

/// The elementary wall-crossing automorphism of a single module class `v`:
/// every monomial `x^w y^u` is multiplied by `(1 + y^{-v})` to the power
/// `-(<w, v> + chi_L(v, u))`.
pub fn elementary_wall(ring: &TorusRing, class: &[i64]) -> Result<TorusAutomorphism, TorusError> {
    let n = ring.rank();
    assert_eq!(class.len(), n);
    let neg: Vec<i64> = class.iter().map(|x| -x).collect();
    let cone = if class.iter().all(|&x| x >= 0) {
        Cone::Negative
    } else {
        Cone::Positive
    };
    let mut unit = TorusSeries::one(n, ring.sigma, ring.trunc, cone);
    unit.add_term(&vec![0; n], &neg, BigRational::one());
    let mut x_images = Vec::with_capacity(n);
    let mut y_images = Vec::with_capacity(n);
    for i in 1..=n {
        let mut img = GeneratorImage::generator(n, ring.sigma, ring.trunc, Some(i), None);
        let e = -class[i - 1];
        img.factor = ring.pow(&unit, e)?;
        x_images.push(img);
    }
    for i in 1..=n {
        let mut ei = vec![0i64; n];
        ei[i - 1] = 1;
        let e = -lattice::chi_l(&ring.quiver, class, &ei);
        let mut img = GeneratorImage::generator(n, ring.sigma, ring.trunc, None, Some(i));
        img.factor = ring.pow(&unit, e)?;
        y_images.push(img);
    }
    Ok(TorusAutomorphism { x_images, y_images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn a2() -> Quiver {
        Quiver::from_arrows(2, &[(1, 2, 1)]).unwrap()
    }

    fn ring_plus(trunc: usize) -> TorusRing {
        TorusRing::new(a2(), Sign::Plus, trunc)
    }

    fn ygen(ring: &TorusRing, i: usize) -> TorusSeries {
        let n = ring.rank();
        let mut v = vec![0i64; n];
        v[i - 1] = 1;
        TorusSeries::monomial(n, ring.sigma, ring.trunc, Cone::Positive, &vec![0; n], &v)
    }

    #[test]
    fn mul_plus_sign() {
        let r = ring_plus(6);
        let y1 = ygen(&r, 1);
        let y2 = ygen(&r, 2);
        let p = r.mul(&y1, &y2).unwrap();
        assert_eq!(p.coeff(&[0, 0], &[1, 1]), BigRational::one());
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn mul_minus_sign_twist() {
        let r = TorusRing::new(a2(), Sign::Minus, 6);
        let n = 2;
        let y1 = TorusSeries::monomial(n, Sign::Minus, 6, Cone::Positive, &[0, 0], &[1, 0]);
        let y2 = TorusSeries::monomial(n, Sign::Minus, 6, Cone::Positive, &[0, 0], &[0, 1]);
        let p = r.mul(&y1, &y2).unwrap();
        // chi(e1, e2) = -1, so the product of the generators is minus the
        // basis monomial
        assert_eq!(p.coeff(&[0, 0], &[1, 1]), -BigRational::one());
        // squares never twist
        let sq = r.mul(&y1, &y1).unwrap();
        assert_eq!(sq.coeff(&[0, 0], &[2, 0]), BigRational::one());
    }

    #[test]
    fn mul_is_twisted_commutative() {
        for sigma in [Sign::Plus, Sign::Minus] {
            let r = TorusRing::new(a2(), sigma, 5);
            let mut a = TorusSeries::one(2, sigma, 5, Cone::Positive);
            a.add_term(&[1, 0], &[1, 0], BigRational::one());
            a.add_term(&[0, 0], &[1, 1], BigRational::from_integer(BigInt::from(3)));
            let mut b = TorusSeries::one(2, sigma, 5, Cone::Positive);
            b.add_term(&[0, -1], &[0, 1], BigRational::from_integer(BigInt::from(2)));
            assert_eq!(r.mul(&a, &b).unwrap(), r.mul(&b, &a).unwrap());
        }
    }

    #[test]
    fn truncation_commutes_with_mul() {
        let r6 = ring_plus(6);
        let r3 = ring_plus(3);
        let mut a = TorusSeries::one(2, Sign::Plus, 6, Cone::Positive);
        a.add_term(&[0, 0], &[1, 0], BigRational::one());
        a.add_term(&[0, 0], &[2, 1], BigRational::one());
        let mut b = TorusSeries::one(2, Sign::Plus, 6, Cone::Positive);
        b.add_term(&[0, 0], &[0, 1], BigRational::one());
        b.add_term(&[0, 0], &[1, 1], -BigRational::one());
        let big = r6.mul(&a, &b).unwrap().truncate(3);
        let small = r3.mul(&a.truncate(3), &b.truncate(3)).unwrap();
        assert_eq!(big, small);
    }

    #[test]
    fn invert_round_trip() {
        let r = ring_plus(6);
        let mut a = TorusSeries::one(2, Sign::Plus, 6, Cone::Positive);
        a.add_term(&[0, 0], &[1, 0], BigRational::one());
        a.add_term(&[0, 0], &[1, 1], BigRational::one());
        let inv = r.invert(&a).unwrap();
        assert!(r.mul(&a, &inv).unwrap().is_one());
        assert!(r.invert(&r.one()).unwrap().is_one());
        // 1 + y1: alternating geometric series
        let mut b = TorusSeries::one(2, Sign::Plus, 6, Cone::Positive);
        b.add_term(&[0, 0], &[1, 0], BigRational::one());
        let binv = r.invert(&b).unwrap();
        for k in 0..=6i64 {
            let expect = if k % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            assert_eq!(binv.coeff(&[0, 0], &[k, 0]), expect);
        }
    }

    #[test]
    fn invert_rejects_non_units() {
        let r = ring_plus(4);
        let z = r.zero();
        assert!(matches!(r.invert(&z), Err(TorusError::NotAUnit(_))));
        // pure x-term blocks the geometric series
        let mut a = TorusSeries::one(2, Sign::Plus, 4, Cone::Positive);
        a.add_term(&[1, 0], &[0, 0], BigRational::one());
        assert!(matches!(r.invert(&a), Err(TorusError::NotAUnit(_))));
        // mixed-cone support cannot be bounded
        let mut m = TorusSeries::one(2, Sign::Plus, 4, Cone::Mixed);
        m.add_term(&[0, 0], &[1, 0], BigRational::one());
        m.add_term(&[0, 0], &[-1, 0], BigRational::one());
        assert!(matches!(
            r.invert(&m),
            Err(TorusError::TruncationOverflow(_))
        ));
    }

    #[test]
    fn sigma_involution_examples() {
        let r = ring_plus(5);
        let y = ygen(&r, 1);
        let s = y.sigma_involution();
        assert_eq!(s.coeff(&[0, 0], &[-1, 0]), BigRational::one());
        assert_eq!(s.cone(), Cone::Negative);
        assert_eq!(s.sigma_involution(), y);
        assert!(r.one().sigma_involution().is_one());
    }

    #[test]
    fn pi_projection_examples() {
        let r = ring_plus(6);
        // y_2 projects to x_1^{-1} on A2
        let y2 = ygen(&r, 2);
        let p = r.pi_project(&y2).unwrap();
        assert_eq!(p.coeff(&[-1, 0], &[0, 0]), BigRational::one());
        assert_eq!(p.num_terms(), 1);
        // y_1 projects to x_2
        let y1 = ygen(&r, 1);
        let p = r.pi_project(&y1).unwrap();
        assert_eq!(p.coeff(&[0, 1], &[0, 0]), BigRational::one());
        // x-monomials are fixed; the empty exponent is fixed
        let x1 = TorusSeries::monomial(2, Sign::Plus, 6, Cone::Positive, &[1, 0], &[0, 0]);
        assert_eq!(r.pi_project(&x1).unwrap(), x1);
        assert!(r.pi_project(&r.one()).unwrap().is_one());
        // projection is multiplicative
        let prod = r.mul(&y1, &y2).unwrap();
        let lhs = r.pi_project(&prod).unwrap();
        let rhs = r
            .mul(
                &r.pi_project(&y1).unwrap(),
                &r.pi_project(&y2).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
        // minus sign unsupported
        let rm = TorusRing::new(a2(), Sign::Minus, 6);
        let ym = TorusSeries::monomial(2, Sign::Minus, 6, Cone::Positive, &[0, 0], &[1, 0]);
        assert!(matches!(
            rm.pi_project(&ym),
            Err(TorusError::SignUnsupported)
        ));
    }

    #[test]
    fn dt_automorphism_examples() {
        // one-vertex quiver: x -> x(1+y), y fixed
        let q1 = Quiver::empty(1);
        let r = TorusRing::new(q1, Sign::Plus, 6);
        let mut z = TorusSeries::one(1, Sign::Plus, 6, Cone::Positive);
        z.add_term(&[0], &[1], BigRational::one());
        let dt = TorusAutomorphism::dt(&r, &[z.clone()]).unwrap();
        assert_eq!(dt.x_images[0].factor, z);
        assert!(dt.y_images[0].factor.is_one());

        // identity when all series are 1
        let r2 = ring_plus(6);
        let dt2 = TorusAutomorphism::dt(&r2, &[r2.one(), r2.one()]).unwrap();
        assert!(dt2.is_identity(&r2).unwrap());
    }

    #[test]
    fn elementary_wall_matches_single_mutation_images() {
        // class e_1 on A2: the mutated-side x-generator at the mutation
        // vertex picks up exactly (1 + y_1^{-1})
        let r = ring_plus(8);
        let ad = elementary_wall(&r, &[1, 0]).unwrap();
        // g-vector of vertex 1 after mutating at 1 is (-1, 1)
        let img = ad.apply_monomial(&r, &[-1, 1], &[0, 0]).unwrap();
        let mut expect = TorusSeries::one(2, Sign::Plus, 8, Cone::Negative);
        expect.add_term(&[0, 0], &[-1, 0], BigRational::one());
        assert!(series_difference(&img.factor, &expect, 8).is_none());
        // the other mutated-side generator x_2 is fixed
        let img2 = ad.apply_monomial(&r, &[0, 1], &[0, 0]).unwrap();
        assert!(img2.factor.is_one());
    }

    #[test]
    fn compose_and_inverse() {
        let r = ring_plus(6);
        let ad = elementary_wall(&r, &[1, 0]).unwrap();
        let id = TorusAutomorphism::identity(&r);
        // compose with identity
        let c = ad.compose(&r, &id).unwrap();
        assert!(c.difference_witness(&r, &ad, 6).unwrap().is_none());
        let c = id.compose(&r, &ad).unwrap();
        assert!(c.difference_witness(&r, &ad, 6).unwrap().is_none());
        // inverse
        let inv = ad.inverse(&r).unwrap();
        let both = ad.compose(&r, &inv).unwrap();
        assert!(both.is_identity(&r).unwrap());
        let both = inv.compose(&r, &ad).unwrap();
        assert!(both.is_identity(&r).unwrap());
    }

    #[test]
    fn sigma_conjugation_is_involutive() {
        let r = ring_plus(6);
        let ad = elementary_wall(&r, &[1, 0]).unwrap();
        let conj = ad.sigma_conjugate(&r).unwrap();
        let back = conj.sigma_conjugate(&r).unwrap();
        assert!(back.difference_witness(&r, &ad, 6).unwrap().is_none());
        let id = TorusAutomorphism::identity(&r);
        assert!(id.sigma_conjugate(&r).unwrap().is_identity(&r).unwrap());
    }
}
