//! Positive cones containing 1 on `(M_n(E), ad_h)` and on quaternion
//! division algebras, their compatibility with the gauge, residue cones,
//! Baer–Krull liftings and strong anisotropy.

mod aniso;
mod compat;
mod lift;

pub use aniso::{anisotropy_certificate, AnisotropyReport, Verdict};
pub use compat::{compatibility_suite, residue_cone, residue_cone_member, CompatReport, ResidueConeBlock, ResidueConeReport};
pub use lift::{lift_exists, lift_set, nil_orderings, wadth_check, HarrisonClass, LiftReport, NilReport, WadthReport};

use rand::Rng;

use crate::algebra::{quat_sigma, AlgebraSpec, ESpec, HermContext};
use crate::error::{Error, Result};
use crate::gauges::GaugeContext;
use crate::quatmat::{psd_at, MatE};
pub use crate::sampling::ConditionTally;
use crate::sampling::{run_condition, Sampler};
use crate::symfield::OrderingSpec;

/// The positive cone over `P` containing 1, when one exists. A matrix
/// context is stored with `h` normalized to be positive at `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpec {
    algebra: AlgebraSpec,
    espec: ESpec,
    p: OrderingSpec,
    valid: bool,
}

impl ConeSpec {
    pub fn new(algebra: AlgebraSpec, p: OrderingSpec) -> Result<Self> {
        let valid = lift_exists(&algebra, &p)?;
        let algebra = match algebra {
            AlgebraSpec::Matrix(ctx) if valid && ctx.e()[0].sign_at(&p) < 0 => AlgebraSpec::Matrix(ctx.negated()),
            a => a,
        };
        let espec = match &algebra {
            AlgebraSpec::Matrix(c) => c.espec().clone(),
            AlgebraSpec::QuatDiv { a, b, .. } => ESpec::quat(a.clone(), b.clone())?,
        };
        Ok(ConeSpec { algebra, espec, p, valid })
    }

    pub fn matrix(ctx: HermContext, p: OrderingSpec) -> Result<Self> {
        Self::new(AlgebraSpec::Matrix(ctx), p)
    }

    pub fn algebra(&self) -> &AlgebraSpec {
        &self.algebra
    }

    pub fn ordering(&self) -> &OrderingSpec {
        &self.p
    }

    pub fn is_valid(&self) -> bool {
        self.valid
    }

    pub fn espec(&self) -> &ESpec {
        &self.espec
    }

    /// Matrix size; quaternion division algebras use `1×1` matrices.
    pub fn n(&self) -> usize {
        match &self.algebra {
            AlgebraSpec::Matrix(c) => c.n(),
            AlgebraSpec::QuatDiv { .. } => 1,
        }
    }

    pub fn sigma(&self, a: &MatE) -> MatE {
        match &self.algebra {
            AlgebraSpec::Matrix(c) => c.sigma(a),
            AlgebraSpec::QuatDiv { inv, .. } => MatE::from_fn(&self.espec, 1, |_, _| quat_sigma(a.get(0, 0), *inv)),
        }
    }

    pub fn is_symmetric(&self, a: &MatE) -> bool {
        self.sigma(a) == *a
    }

    pub fn check(&self, a: &MatE) -> Result<()> {
        if a.spec() != &self.espec {
            return Err(Error::SpecMismatch);
        }
        if a.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got: a.n() });
        }
        Ok(())
    }

    pub fn gauge_context(&self) -> Result<GaugeContext> {
        if !self.valid {
            return Err(Error::InvalidCone);
        }
        match &self.algebra {
            AlgebraSpec::Matrix(c) => GaugeContext::new(c.clone(), self.p.clone()),
            AlgebraSpec::QuatDiv { .. } => {
                Err(Error::UnsupportedVariant("gauge contexts are built for matrix algebras".into()))
            }
        }
    }
}

/// Membership in the positive cone containing 1: `a` symmetric and the
/// hermitian matrix `diag(e)·a` positive semidefinite at `P`; for
/// quaternions, `σ(q) = q` with `Trd(q) ≥ 0` and `Nrd(q) ≥ 0`.
pub fn cone_member(a: &MatE, c: &ConeSpec) -> Result<bool> {
    if !c.valid {
        return Err(Error::InvalidCone);
    }
    c.check(a)?;
    if !c.is_symmetric(a) {
        return Ok(false);
    }
    match &c.algebra {
        AlgebraSpec::Matrix(ctx) => psd_at(&a.scale_rows(ctx.e()), &c.p),
        AlgebraSpec::QuatDiv { .. } => {
            let q = a.get(0, 0);
            Ok(q.trd().sign_at(&c.p) >= 0 && q.norm().sign_at(&c.p) >= 0)
        }
    }
}

/// Draws `Σ u_i σ(x_i) s_i x_i` with `u_i` positive scalars, `s_i ∈ S`.
pub fn sample_cone<R: Rng>(c: &ConeSpec, s: &[MatE], count: usize, sampler: &mut Sampler<R>) -> Result<Vec<MatE>> {
    if !c.valid {
        return Err(Error::InvalidCone);
    }
    let one = [MatE::identity(&c.espec, c.n())];
    let s = if s.is_empty() { &one[..] } else { s };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let terms = sampler.rng.gen_range(1..=2);
        let mut acc = MatE::zero(&c.espec, c.n());
        for _ in 0..terms {
            let x = sampler.nonzero_matrix(&c.espec, c.n());
            let si = &s[sampler.rng.gen_range(0..s.len())];
            let u = sampler.positive_scalar(&c.p);
            acc = acc.add(&c.sigma(&x).mul(si).mul(&x).scale(&u));
        }
        out.push(acc);
    }
    Ok(out)
}

pub fn random_member<R: Rng>(c: &ConeSpec, sampler: &mut Sampler<R>) -> MatE {
    sample_cone(c, &[], 1, sampler).expect("valid cone").pop().unwrap()
}

/// Random symmetric element `y + σ(y)`.
pub fn random_symmetric<R: Rng>(c: &ConeSpec, sampler: &mut Sampler<R>) -> MatE {
    loop {
        let y = sampler.nonzero_matrix(&c.espec, c.n());
        let s = y.add(&c.sigma(&y));
        if !s.is_zero() {
            return s;
        }
    }
}

/// Checks the cone axioms on sampled members: 0 ∈ 𝒫, closure under sums,
/// under `σ(x)·𝒫·x` and under positive scalars, and `𝒫 ∩ −𝒫 = {0}`.
pub fn check_prepositive_axioms(c: &ConeSpec, count: usize, seed: u64) -> Result<Vec<ConditionTally>> {
    if !c.valid {
        return Err(Error::InvalidCone);
    }
    let r = c.p.r();
    let n = c.n();
    let es = c.espec.clone();
    let mut out = Vec::new();
    let mut p1 = ConditionTally::new("P1");
    p1.tried = 1;
    if !cone_member(&MatE::zero(&es, n), c)? {
        p1.violations.push("0 is not a member".into());
    }
    out.push(p1);
    out.push(run_condition(
        "P2",
        seed,
        101,
        count,
        |s| {
            let a = random_member(c, s);
            let b = random_member(c, s);
            Ok(Some(if cone_member(&a.add(&b), c)? { Ok(()) } else { Err("sum of members left the cone".into()) }))
        },
        r,
    ));
    out.push(run_condition(
        "P3",
        seed,
        102,
        count,
        |s| {
            let a = random_member(c, s);
            let x = s.nonzero_matrix(&es, n);
            let y = c.sigma(&x).mul(&a).mul(&x);
            Ok(Some(if cone_member(&y, c)? { Ok(()) } else { Err("σ(x)·a·x left the cone".into()) }))
        },
        r,
    ));
    out.push(run_condition(
        "P4",
        seed,
        103,
        count,
        |s| {
            let a = random_member(c, s);
            let u = s.positive_scalar(&c.p);
            Ok(Some(if cone_member(&a.scale(&u), c)? { Ok(()) } else { Err("positive multiple left the cone".into()) }))
        },
        r,
    ));
    out.push(run_condition(
        "P5",
        seed,
        104,
        count,
        |s| {
            let a = random_member(c, s);
            if a.is_zero() {
                return Ok(None);
            }
            Ok(Some(if cone_member(&a.neg(), c)? { Err("a and −a are both members".into()) } else { Ok(()) }))
        },
        r,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{EElement, QuatInvolution};
    use crate::sampling::sample_rng;
    use crate::symfield::{enumerate_orderings, parse_element, RatFunc};

    fn f(s: &str) -> RatFunc {
        parse_element(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn cone(es: ESpec, e: &[&str], eta: &[i8]) -> ConeSpec {
        let h = HermContext::new(es, e.iter().map(|s| f(s)).collect()).unwrap();
        ConeSpec::matrix(h, OrderingSpec::new(eta.to_vec())).unwrap()
    }

    fn base(rows: &[&[&str]]) -> MatE {
        MatE::from_scalars(&ESpec::Base, &rows.iter().map(|r| r.iter().map(|s| f(s)).collect()).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn membership_examples() {
        for p in enumerate_orderings(2) {
            let c = cone(ESpec::Base, &["1", "1"], p.eta());
            assert!(cone_member(&MatE::identity(&ESpec::Base, 2), &c).unwrap());
            assert!(!cone_member(&base(&[&["1", "0"], &["0", "-1"]]), &c).unwrap());
        }
        let c = cone(ESpec::Base, &["1", "x"], &[1, 1]);
        assert!(cone_member(&base(&[&["x", "0"], &["0", "1"]]), &c).unwrap());
        let bad = cone(ESpec::Base, &["1", "x"], &[-1, 1]);
        assert!(!bad.is_valid());
        assert_eq!(cone_member(&MatE::identity(&ESpec::Base, 2), &bad), Err(Error::InvalidCone));
    }

    #[test]
    fn negated_form_gives_same_cone() {
        let c = cone(ESpec::Base, &["-1", "-x"], &[1, -1]);
        assert!(c.is_valid());
        assert!(cone_member(&MatE::identity(&ESpec::Base, 2), &c).unwrap());
        assert!(!cone_member(&MatE::identity(&ESpec::Base, 2).neg(), &c).unwrap());
    }

    #[test]
    fn quaternion_membership() {
        let sym = AlgebraSpec::QuatDiv { a: f("x"), b: f("y"), inv: QuatInvolution::IntIGamma };
        let c = ConeSpec::new(sym, OrderingSpec::new(vec![-1, 1])).unwrap();
        assert!(c.is_valid());
        let e = c.espec().clone();
        let q = |v: [&str; 4]| MatE::from_rows(&e, vec![vec![EElement::new(&e, v.iter().map(|s| f(s)).collect()).unwrap()]]).unwrap();
        assert!(cone_member(&q(["1", "0", "0", "0"]), &c).unwrap());
        assert!(cone_member(&q(["2", "0", "1", "0"]), &c).unwrap());
        assert!(!cone_member(&q(["0", "1", "0", "0"]), &c).unwrap());
        let g = AlgebraSpec::QuatDiv { a: f("x"), b: f("y"), inv: QuatInvolution::Gamma };
        assert!(!ConeSpec::new(g, OrderingSpec::new(vec![-1, 1])).unwrap().is_valid());
    }

    #[test]
    fn samples_are_members() {
        let c = cone(ESpec::hamilton(), &["1", "x"], &[1, -1]);
        let mut s = Sampler::new(sample_rng(7, 0, 0), 2);
        for m in sample_cone(&c, &[], 10, &mut s).unwrap() {
            assert!(cone_member(&m, &c).unwrap());
        }
    }

    #[test]
    fn prepositive_axioms_hold() {
        let c = cone(ESpec::Complex, &["1", "x*y"], &[-1, -1]);
        for t in check_prepositive_axioms(&c, 20, 3).unwrap() {
            assert!(t.passed(), "{t:?}");
        }
    }
}
