//! End-to-end identity checks: the Caldero-Chapoton comparison, the
//! transformation formula for the DT automorphisms under a mutation
//! sequence, and the wall-crossing factorization into elementary steps.
//!
//! All torus arithmetic runs at a working order strictly above the
//! comparison order so that geometric-inverse truncation noise stays out of
//! the compared range; the reports state the comparison order.

use crate::cluster::{self, ClusterError, SeedWalk};
use crate::config::Config;
use crate::lattice::MutationSign;
use crate::laurent::Laurent;
use crate::potential::{mutate_qp_seq, PotentialError, Qp};
use crate::quiver::{Quiver, Vertex};
use crate::repr::{self, CatalogModule, ReprError};
use crate::torus::{
    elementary_wall, series_difference, Cone, GeneratorImage, InversionPolicy,
    LatticeIdentification, Sign, TorusAutomorphism, TorusError, TorusRing, TorusSeries,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// Outcome of one identity check, with a witness on failure.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: String,
    pub status: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationReport {
    fn pass(identity: &str, params: String) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params,
            status: true,
            witness: None,
        }
    }

    fn fail(identity: &str, params: String, witness: String) -> Self {
        VerificationReport {
            identity: identity.to_string(),
            params,
            status: false,
            witness: Some(witness),
        }
    }
}

fn seq_string(kseq: &[Vertex]) -> String {
    kseq.iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Convert an F-polynomial in the y-variables into the quotient series of
/// the attached module: each exponent flips sign, landing in the negative
/// cone.
pub fn quotient_series_from_f(
    f: &Laurent,
    n: usize,
    sigma: Sign,
    trunc: usize,
) -> TorusSeries {
    let mut s = TorusSeries::zero(n, sigma, trunc, Cone::Negative);
    for (e, c) in f.terms() {
        let neg: Vec<i64> = e.iter().map(|x| -x).collect();
        s.add_term(&vec![0; n], &neg, BigRational::from_integer(BigInt::from(c)));
    }
    s
}

fn ident_from_walk(walk: &SeedWalk) -> LatticeIdentification {
    let n = walk.phi().initial_quiver().rank();
    let m = walk.phi().inv_matrix_m();
    let l = walk.phi().inv_matrix_l();
    LatticeIdentification {
        m_cols: (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect(),
        l_cols: (0..n).map(|j| (0..n).map(|i| l[i][j]).collect()).collect(),
    }
}

fn max_column_norm(m: &[Vec<i64>]) -> usize {
    let n = m.len();
    (0..n)
        .map(|j| (0..n).map(|i| m[i][j].unsigned_abs() as usize).sum())
        .max()
        .unwrap_or(1)
        .max(1)
}

fn identity_image(n: usize, ring: &TorusRing, x_side: bool, i: Vertex) -> GeneratorImage {
    if x_side {
        GeneratorImage::generator(n, ring.sigma, ring.trunc, Some(i), None)
    } else {
        GeneratorImage::generator(n, ring.sigma, ring.trunc, None, Some(i))
    }
}

/// Caldero-Chapoton comparison: the projected product of the g-vector
/// monomial with the module's quotient series must equal the cluster
/// variable exactly.
pub fn verify_cc(
    qp: &Qp,
    kseq: &[Vertex],
    i: Vertex,
    module: &CatalogModule,
    config: &Config,
) -> Result<VerificationReport, VerifyError> {
    let q = qp.counts();
    let params = format!("kseq=[{}] i={} dim={:?}", seq_string(kseq), i, module.dim);
    let mut walk = SeedWalk::new(&q);
    walk.walk(kseq)?;
    let g = walk.g_vector(i)?;
    let trunc = module.total_dim().max(1);
    let ring = TorusRing::new(q.clone(), Sign::Plus, trunc);
    let grass = repr::grass_series(qp, module, trunc, &config.primes, config.max_total_dim)?;
    let xg = TorusSeries::monomial(
        q.rank(),
        Sign::Plus,
        trunc,
        Cone::Negative,
        &g.coords,
        &vec![0; q.rank()],
    );
    let lhs_series = ring.pi_project(&ring.mul(&xg, &grass)?)?;
    let Some(lhs) = lhs_series.x_part_to_laurent() else {
        return Ok(VerificationReport::fail(
            "cc",
            params,
            "projected series is not an integral Laurent polynomial".to_string(),
        ));
    };
    let rhs = cluster::fz(&q, kseq, i)?;
    if lhs == rhs {
        Ok(VerificationReport::pass("cc", params))
    } else {
        let diff = lhs.sub(&rhs);
        let (e, c) = diff.terms().next().expect("nonzero difference");
        Ok(VerificationReport::fail(
            "cc",
            params,
            format!(
                "first differing x-exponent {:?}: lhs-rhs coefficient {}",
                e, c
            ),
        ))
    }
}

/// Everything the transformation and factorization checks share: the walk
/// data, the identification, and the torus ring at working order.
struct Pipeline {
    base: Quiver,
    ring: TorusRing,
    ident: LatticeIdentification,
    walk: SeedWalk,
    work: usize,
}

fn pipeline(q: &Quiver, kseq: &[Vertex], order: usize) -> Result<Pipeline, VerifyError> {
    let mut walk = SeedWalk::new(q);
    walk.walk(kseq)?;
    let ident = ident_from_walk(&walk);
    // working order: comparison order plus margin so inverse-truncation
    // noise stays above it
    let work = 2 * order + 8;
    let ring = TorusRing::new(q.clone(), Sign::Plus, work);
    Ok(Pipeline {
        base: q.clone(),
        ring,
        ident,
        walk,
        work,
    })
}

/// The wall-crossing automorphism of the sequence, built from the
/// F-polynomials of the principally framed walk.
fn long_ad(p: &Pipeline) -> Result<TorusAutomorphism, VerifyError> {
    let n = p.base.rank();
    let mutated = p.walk.phi().current_quiver().clone();
    let mut grass = Vec::with_capacity(n);
    for i in 1..=n {
        let f = p.walk.f_polynomial(i)?;
        grass.push(quotient_series_from_f(&f, n, Sign::Plus, p.work));
    }
    Ok(TorusAutomorphism::on_mutated_generators(
        &p.ring, &grass, &mutated, &p.ident,
    )?)
}

/// Transformation formula: the mutated DT automorphism must equal the
/// conjugate of the base DT automorphism by the wall-crossing pair, with
/// every generator image compared coefficientwise up to the requested
/// order.
pub fn verify_transformation(
    qp: &Qp,
    kseq: &[Vertex],
    order: usize,
    config: &Config,
) -> Result<VerificationReport, VerifyError> {
    let q = qp.counts();
    let n = q.rank();
    let params = format!(
        "kseq=[{}] order={} primes={:?}",
        seq_string(kseq),
        order,
        config.primes
    );
    let mut walk = SeedWalk::new(&q);
    walk.walk(kseq)?;
    let qp_k = mutate_qp_seq(qp, kseq, config.reduction_cap)?;
    let q_k = qp_k.counts();

    // The two sides of the transformation formula expand the same rational
    // functions, but their natural completions sit on opposite sides of
    // the wall. The identity is therefore checked in the mutated-side
    // coordinates with every inversion expanded toward the positive cone,
    // in the equivalent inversion-free form
    //     Ad_plus . DT_mutated  =  DT_base . Ad_minus.
    let work = 2 * order + 8;
    let ring = TorusRing::with_policy(
        q_k.clone(),
        Sign::Plus,
        work,
        InversionPolicy::TowardPositive,
    );
    let fwd_l = walk.phi().fwd_matrix_l().clone();
    let inv_norm = max_column_norm(walk.phi().inv_matrix_l());
    let base_order = inv_norm * work;
    // base classes -> mutated-side classes
    let translate_terms = |s: &TorusSeries| -> TorusSeries {
        let mut t = TorusSeries::zero(n, Sign::Plus, work, Cone::Mixed);
        for ((w, v), c) in s.terms() {
            debug_assert!(w.iter().all(|&x| x == 0));
            let pv: Vec<i64> = (0..n)
                .map(|r| (0..n).map(|s| fwd_l[r][s] * v[s]).sum())
                .collect();
            t.add_term(&vec![0; n], &pv, c.clone());
        }
        t
    };

    // mutated-side DT automorphism: native Hilbert series of the mutated QP
    let mut z_mut = Vec::with_capacity(n);
    for i in 1..=n {
        z_mut.push(repr::hilb_series(
            &qp_k,
            i,
            work,
            &config.primes,
            config.max_total_dim,
        )?);
    }
    let dt_mut = TorusAutomorphism::dt(&ring, &z_mut)?;

    // base DT automorphism written on the mutated generators: the x-image
    // exponents are the g-vector coordinates, the y-image exponents the
    // class coordinates of the c-vectors
    let mut z_base = Vec::with_capacity(n);
    for j in 1..=n {
        let zb = repr::hilb_series(qp, j, base_order, &config.primes, config.max_total_dim)?;
        z_base.push(translate_terms(&zb));
    }
    let ident = ident_from_walk(&walk);
    let (g_cols, c_cols) = (&ident.m_cols, &ident.l_cols);
    let power_product = |exps: &[i64]| -> Result<TorusSeries, VerifyError> {
        let mut f = ring.one();
        for (j, &e) in exps.iter().enumerate() {
            if e != 0 {
                f = ring.mul(&f, &ring.pow(&z_base[j], e)?)?;
            }
        }
        Ok(f)
    };
    let mut dt_base_x = Vec::with_capacity(n);
    let mut dt_base_y = Vec::with_capacity(n);
    for i in 1..=n {
        let mut img = identity_image(n, &ring, true, i);
        img.factor = power_product(&g_cols[i - 1])?;
        dt_base_x.push(img);
        let class: Vec<i64> = (1..=n)
            .map(|j| (1..=n).map(|m| q.bar(j, m) * c_cols[i - 1][m - 1]).sum())
            .collect();
        let mut img = identity_image(n, &ring, false, i);
        img.factor = power_product(&class)?;
        dt_base_y.push(img);
    }
    let dt_base = TorusAutomorphism {
        x_images: dt_base_x,
        y_images: dt_base_y,
    };

    // wall-crossing pair on the mutated generators, from the F-polynomials
    let mut grass = Vec::with_capacity(n);
    for i in 1..=n {
        let f = walk.f_polynomial(i)?;
        let mut s = TorusSeries::zero(n, Sign::Plus, work, Cone::Positive);
        for (e, c) in f.terms() {
            let pv: Vec<i64> = (0..n)
                .map(|r| -(0..n).map(|s| fwd_l[r][s] * e[s]).sum::<i64>())
                .collect();
            s.add_term(&vec![0; n], &pv, BigRational::from_integer(BigInt::from(c)));
        }
        grass.push(s);
    }
    let mut ad_minus_x = Vec::with_capacity(n);
    let mut ad_minus_y = Vec::with_capacity(n);
    for i in 1..=n {
        let mut img = identity_image(n, &ring, true, i);
        img.factor = grass[i - 1].clone();
        ad_minus_x.push(img);
        let mut f = ring.one();
        for j in 1..=n {
            let e = q_k.bar(j, i);
            if e != 0 {
                f = ring.mul(&f, &ring.pow(&grass[j - 1], e)?)?;
            }
        }
        let mut img = identity_image(n, &ring, false, i);
        img.factor = f;
        ad_minus_y.push(img);
    }
    let ad_minus = TorusAutomorphism {
        x_images: ad_minus_x,
        y_images: ad_minus_y,
    };
    // the conjugate by the exponent flip, built from the finite flipped
    // polynomials so every inversion sees exact data
    let sig_grass: Vec<TorusSeries> = grass.iter().map(|g| g.sigma_involution()).collect();
    let mut ad_plus_x = Vec::with_capacity(n);
    let mut ad_plus_y = Vec::with_capacity(n);
    for i in 1..=n {
        let mut img = identity_image(n, &ring, true, i);
        img.factor = ring.pow(&sig_grass[i - 1], -1)?;
        ad_plus_x.push(img);
        let mut f = ring.one();
        for j in 1..=n {
            let e = q_k.bar(j, i);
            if e != 0 {
                f = ring.mul(&f, &ring.pow(&sig_grass[j - 1], -e)?)?;
            }
        }
        let mut img = identity_image(n, &ring, false, i);
        img.factor = f;
        ad_plus_y.push(img);
    }
    let ad_plus = TorusAutomorphism {
        x_images: ad_plus_x,
        y_images: ad_plus_y,
    };

    // evaluate both compositions on every mutated-side generator
    let zero = vec![0i64; n];
    for i in 1..=n {
        for x_side in [true, false] {
            let label = if x_side {
                format!("x'{i}")
            } else {
                format!("y'{i}")
            };
            let mut ew = zero.clone();
            let mut ev = zero.clone();
            if x_side {
                ew[i - 1] = 1;
            } else {
                ev[i - 1] = 1;
            }
            let m = TorusSeries::monomial(n, Sign::Plus, work, Cone::Mixed, &ew, &ev);
            let lhs = ad_plus.apply_series(&ring, &dt_mut.apply_series(&ring, &m)?)?;
            let rhs = dt_base.apply_series(&ring, &ad_minus.apply_series(&ring, &m)?)?;
            if let Some((w, v, l, r)) = series_difference(&lhs, &rhs, order) {
                return Ok(VerificationReport::fail(
                    "trans",
                    params,
                    format!("{label}: coefficient at x{w:?} y{v:?} differs: {l} vs {r}"),
                ));
            }
        }
    }
    Ok(VerificationReport::pass("trans", params))
}

/// Factorization: the wall-crossing automorphism of the sequence equals
/// the signed ordered composition of the elementary one-class steps.
pub fn verify_factorization(
    qp: &Qp,
    kseq: &[Vertex],
    order: usize,
    _config: &Config,
) -> Result<VerificationReport, VerifyError> {
    let q = qp.counts();
    let params = format!("kseq=[{}] order={}", seq_string(kseq), order);
    let p = pipeline(&q, kseq, order)?;
    let lhs = long_ad(&p)?;

    // elementary factors from the prefix c-vectors and signs
    let mut prefix = cluster::PhiWalk::new(&q);
    let mut factors: Vec<TorusAutomorphism> = Vec::with_capacity(kseq.len());
    for &k in kseq {
        let cvec = prefix.c_vector(k).coords;
        let sign = prefix.step(k)?;
        let class: Vec<i64> = match sign {
            MutationSign::Plus => cvec,
            MutationSign::Minus => cvec.iter().map(|x| -x).collect(),
        };
        let elem = elementary_wall(&p.ring, &class)?;
        let factor = match sign {
            MutationSign::Plus => elem,
            MutationSign::Minus => elem.inverse(&p.ring)?,
        };
        factors.push(factor);
    }
    let rhs = match factors.pop() {
        None => TorusAutomorphism::identity(&p.ring),
        Some(last) => {
            let mut acc = last;
            while let Some(f) = factors.pop() {
                acc = f.compose(&p.ring, &acc)?;
            }
            acc
        }
    };

    match lhs.difference_witness(&p.ring, &rhs, order)? {
        None => Ok(VerificationReport::pass("factor", params)),
        Some(w) => Ok(VerificationReport::fail(
            "factor",
            params,
            format!(
                "generator {}: coefficient at x{:?} y{:?} differs: {} vs {}",
                w.generator, w.w, w.v, w.left, w.right
            ),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Arrow, CyclicWord, LabeledQuiver, Potential};
    use num_bigint::BigInt;
    use num_traits::One;
    use std::collections::BTreeMap;

    fn a2_qp() -> Qp {
        Qp::with_zero_potential(&Quiver::from_arrows(2, &[(1, 2, 1)]).unwrap())
    }

    fn a2_p1() -> CatalogModule {
        let mut m = CatalogModule {
            dim: vec![1, 1],
            mats: BTreeMap::new(),
        };
        m.mats.insert("a1_2".into(), vec![vec![1]]);
        m
    }

    fn triangle_qp() -> Qp {
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
            BigRational::from_integer(BigInt::one()),
        );
        Qp::new(quiver, w).unwrap()
    }

    #[test]
    fn cc_single_step() {
        let cfg = Config::default();
        let r = verify_cc(&a2_qp(), &[1], 1, &CatalogModule::simple(2, 1), &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
        let r = verify_cc(&a2_qp(), &[1], 2, &CatalogModule::zero(2), &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
        let r = verify_cc(&a2_qp(), &[1, 2], 2, &a2_p1(), &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn cc_detects_wrong_module() {
        let cfg = Config::default();
        // the zero module cannot produce the mutated variable
        let r = verify_cc(&a2_qp(), &[1], 1, &CatalogModule::zero(2), &cfg).unwrap();
        assert!(!r.status);
        assert!(r.witness.is_some());
    }

    #[test]
    fn transformation_single_step() {
        let cfg = Config::default();
        let r = verify_transformation(&a2_qp(), &[1], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn transformation_two_steps() {
        let cfg = Config::default();
        let r = verify_transformation(&a2_qp(), &[1, 2], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn transformation_for_an_undone_mutation() {
        // mutating and undoing returns the original torus data, so the
        // identity must close up on itself
        let cfg = Config::default();
        let r = verify_transformation(&a2_qp(), &[1, 1], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn transformation_kronecker() {
        // quotients of the Kronecker projective reach total dimension 3,
        // so the interpolation needs a fourth prime
        let mut cfg = Config::default();
        cfg.primes = vec![2, 3, 5, 7];
        let kron =
            Qp::with_zero_potential(&Quiver::from_arrows(2, &[(1, 2, 2)]).unwrap());
        let r = verify_transformation(&kron, &[1], 3, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn transformation_empty_sequence() {
        let cfg = Config::default();
        let r = verify_transformation(&a2_qp(), &[], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn factorization_small_cases() {
        let cfg = Config::default();
        let r = verify_factorization(&a2_qp(), &[1], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
        let r = verify_factorization(&a2_qp(), &[1, 1], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }

    #[test]
    fn factorization_triangle_single() {
        let cfg = Config::default();
        let r = verify_factorization(&triangle_qp(), &[1], 4, &cfg).unwrap();
        assert!(r.status, "{:?}", r.witness);
    }
}
