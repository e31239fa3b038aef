use rand::Rng;
use serde::Serialize;

use super::{cone_member, random_member, random_symmetric, ConditionTally, ConeSpec};
use crate::algebra::HermContext;
use crate::error::{Error, Result};
use crate::gauges::{gauge_value, residue_decomposition, residue_element, residue_lift, x_pow, GaugeContext, ResidueDecomposition};
use crate::quatmat::{polynomial_inverse, psd_at, MatE};
use crate::sampling::{outcome, run_condition, Sampler};
use crate::symfield::{GammaVal, OrderingSpec, Rat, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub conditions: Vec<ConditionTally>,
}

impl CompatReport {
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&ConditionTally> {
        self.conditions.iter().find(|c| c.name == name)
    }
}

/// One factor of the residue cone: PSD matrices for the positive definite
/// residue form `form`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueConeBlock {
    pub size: usize,
    pub form: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueConeReport {
    pub blocks: Vec<ResidueConeBlock>,
    /// Residues of members in the gauge ring lie in the blockwise PSD cone.
    pub image: ConditionTally,
    /// Blockwise PSD residue elements lift to members.
    pub lifts: ConditionTally,
}

/// Residue contexts `(M_{n_ℓ}(E₀), ad_{ε_ℓ·h̃_ℓ})` with positive forms.
fn residue_contexts(dec: &ResidueDecomposition) -> Vec<HermContext> {
    dec.blocks
        .iter()
        .map(|b| {
            let e = b.residue_form.iter().map(|u| RatFunc::from_rat(u * Rat::from_integer(b.ordering_sign.into()))).collect();
            HermContext::new(dec.residue_espec.clone(), e).unwrap()
        })
        .collect()
}

fn member_of(blocks: &[MatE], ctxs: &[HermContext]) -> bool {
    let q = OrderingSpec::all_positive(0);
    blocks.iter().zip(ctxs).all(|(b, c)| c.is_symmetric(b) && psd_at(&b.scale_rows(c.e()), &q).unwrap_or(false))
}

/// Blockwise membership in the residue cone over ℚ.
pub fn residue_cone_member(blocks: &[MatE], g: &GaugeContext) -> bool {
    let ctxs = residue_contexts(&residue_decomposition(g));
    blocks.len() == ctxs.len() && member_of(blocks, &ctxs)
}

struct Env<'a> {
    c: &'a ConeSpec,
    g: GaugeContext,
    ctxs: Vec<HermContext>,
    one: MatE,
}

impl<'a> Env<'a> {
    fn new(c: &'a ConeSpec) -> Result<Self> {
        let g = c.gauge_context()?;
        let ctxs = residue_contexts(&residue_decomposition(&g));
        let one = MatE::identity(c.espec(), c.n());
        Ok(Env { c, g, ctxs, one })
    }

    fn w(&self, a: &MatE) -> GammaVal {
        gauge_value(a, &self.g).expect("gauge of a well-formed matrix")
    }

    fn member(&self, a: &MatE) -> Result<bool> {
        cone_member(a, self.c)
    }

    fn residue(&self, a: &MatE) -> Result<Vec<MatE>> {
        residue_element(a, &self.g)
    }

    /// Multiplies by the square `x_1^{2m}` to move `w(a)` into `[0, 2)` in
    /// the leading coordinate (`> 0` when `strict`).
    fn shift(&self, a: &MatE, strict: bool) -> MatE {
        let v = self.w(a);
        if v.is_inf() || self.c.ordering().r() == 0 {
            return a.clone();
        }
        let w1 = v.coord(0);
        let half = -w1 / Rat::from_integer(2.into());
        let mut m = if strict { half.floor().to_integer() + 1 } else { half.ceil().to_integer() };
        loop {
            let f = x_pow(&GammaVal::new(vec![Rat::from_integer(&m * 2)]));
            let b = a.scale(&f);
            let wb = self.w(&b);
            if (strict && wb.is_positive()) || (!strict && wb.is_nonneg()) {
                return b;
            }
            m += 1;
        }
    }

    fn scaled_member<R: Rng>(&self, s: &mut Sampler<R>) -> MatE {
        let m = random_member(self.c, s);
        let u = s.positive_scalar(self.c.ordering());
        m.scale(&u)
    }

    fn ring_member<R: Rng>(&self, s: &mut Sampler<R>, strict: bool) -> MatE {
        let m = random_member(self.c, s);
        self.shift(&m, strict)
    }
}

fn show(a: &MatE) -> String {
    format!("{a:?}")
}

fn blocks_invertible(blocks: &[MatE]) -> bool {
    blocks.iter().all(|b| b.inverse().is_ok())
}

/// Runs C0–C7, the strengthened C7 for elements with invertible residue,
/// and auxiliary identities on sampled elements of a matrix context.
pub fn compatibility_suite(c: &ConeSpec, count: usize, seed: u64) -> Result<CompatReport> {
    let env = Env::new(c)?;
    let r = c.ordering().r();
    let es = c.espec().clone();
    let n = c.n();
    let e = &env;
    let mut out = Vec::new();

    out.push(run_condition(
        "C0",
        seed,
        0,
        count,
        |s| {
            let a = e.scaled_member(s);
            let b = e.scaled_member(s);
            let lhs = e.w(&a.add(&b));
            let rhs = std::cmp::min(e.w(&a), e.w(&b));
            outcome(lhs == rhs, || format!("w(a+b)={lhs:?} min={rhs:?} a={} b={}", show(&a), show(&b)))
        },
        r,
    ));

    out.push(run_condition(
        "C1",
        seed,
        1,
        count,
        |s| {
            let a = e.scaled_member(s);
            let b = a.add(&e.scaled_member(s));
            outcome(e.w(&b) <= e.w(&a), || format!("0 ≤ a ≤ b with w(b) > w(a): a={} b={}", show(&a), show(&b)))
        },
        r,
    ));

    // Sandwiches s1 ≤ t ≤ s2 built as t = s1 + m1, s2 = t + m2.
    let sandwich = |s: &mut Sampler<rand_chacha::ChaCha8Rng>, ideal: bool| {
        let s1 = e.shift(&random_symmetric(c, s), ideal);
        let pick = |s: &mut Sampler<rand_chacha::ChaCha8Rng>| {
            let m = e.scaled_member(s);
            if s.coin(0.8) {
                e.shift(&m, ideal && s.coin(0.7))
            } else {
                m
            }
        };
        let m1 = pick(s);
        let m2 = pick(s);
        let t = s1.add(&m1);
        let s2 = t.add(&m2);
        (s1, t, s2)
    };
    let in_ring = |a: &MatE| e.w(a).is_nonneg();
    let in_ideal = |a: &MatE| e.w(a).is_positive();

    out.push(run_condition(
        "C2",
        seed,
        2,
        count,
        |s| {
            let (s1, t, s2) = sandwich(s, false);
            if !(in_ring(&s1) && in_ring(&s2)) {
                return Ok(None);
            }
            outcome(in_ring(&t), || format!("t outside R_w: s1={} t={} s2={}", show(&s1), show(&t), show(&s2)))
        },
        r,
    ));

    out.push(run_condition(
        "C3",
        seed,
        3,
        count,
        |s| {
            let (s1, t, s2) = sandwich(s, true);
            if !(in_ideal(&s1) && in_ideal(&s2)) {
                return Ok(None);
            }
            outcome(in_ideal(&t), || format!("t outside I_w: s1={} t={} s2={}", show(&s1), show(&t), show(&s2)))
        },
        r,
    ));

    out.push(run_condition(
        "C4",
        seed,
        4,
        count,
        |s| {
            let (s1, t, s2) = sandwich(s, true);
            if !(in_ideal(&s1) && in_ideal(&s2) && in_ring(&t)) {
                return Ok(None);
            }
            outcome(in_ideal(&t), || format!("t in R_w outside I_w: s1={} t={} s2={}", show(&s1), show(&t), show(&s2)))
        },
        r,
    ));

    out.push(run_condition(
        "C5",
        seed,
        5,
        count,
        |s| {
            let m1 = e.ring_member(s, false);
            let m2 = e.ring_member(s, false);
            let r1 = e.residue(&m1)?;
            let r2 = e.residue(&m2)?;
            if !member_of(&r1, &e.ctxs) {
                return outcome(false, || format!("residue of member outside cone: m={}", show(&m1)));
            }
            let sum = e.residue(&m1.add(&m2))?;
            let expect: Vec<MatE> = r1.iter().zip(&r2).map(|(a, b)| a.add(b)).collect();
            if sum != expect || !member_of(&sum, &e.ctxs) {
                return outcome(false, || format!("sum closure: m1={} m2={}", show(&m1), show(&m2)));
            }
            let x = e.shift(&s.nonzero_matrix(&es, n), false);
            let rx = e.residue(&x)?;
            let conj = e.residue(&c.sigma(&x).mul(&m1).mul(&x))?;
            let expect: Vec<MatE> =
                r1.iter().zip(&rx).zip(&e.ctxs).map(|((a, y), h)| h.sigma(y).mul(a).mul(y)).collect();
            if conj != expect || !member_of(&conj, &e.ctxs) {
                return outcome(false, || format!("σ₀(y)·r·y closure: m={} x={}", show(&m1), show(&x)));
            }
            let q = RatFunc::from_rat(s.positive_rat());
            let scaled: Vec<MatE> = r1.iter().map(|b| b.scale(&q)).collect();
            if !member_of(&scaled, &e.ctxs) {
                return outcome(false, || format!("scalar closure: m={}", show(&m1)));
            }
            let neg: Vec<MatE> = r1.iter().map(|b| b.neg()).collect();
            let zero = r1.iter().all(|b| b.is_zero());
            outcome(zero || !member_of(&neg, &e.ctxs), || format!("r and −r in cone: m={}", show(&m1)))
        },
        r,
    ));

    out.push(run_condition(
        "C6",
        seed,
        6,
        count,
        |s| {
            let a = e.ring_member(s, true);
            let ok = e.member(&e.one.sub(&a))? && !a.is_identity();
            outcome(ok, || format!("a ∈ 𝒫 ∩ I_w but not a < 1: a={}", show(&a)))
        },
        r,
    ));

    out.push(run_condition(
        "C7",
        seed,
        7,
        count,
        |s| {
            let eps = e.shift(&random_symmetric(c, s), true);
            outcome(e.member(&e.one.add(&eps))?, || format!("1+ε not a member: ε={}", show(&eps)))
        },
        r,
    ));

    out.push(run_condition(
        "complicated",
        seed,
        8,
        count,
        |s| {
            let mut cm = e.ring_member(s, false);
            if !blocks_invertible(&e.residue(&cm)?) {
                let q = RatFunc::from_rat(s.positive_rat());
                cm = cm.add(&MatE::scalar(&es, n, &q));
            }
            if !blocks_invertible(&e.residue(&cm)?) {
                return Ok(None);
            }
            let eps = e.shift(&random_symmetric(c, s), true);
            outcome(e.member(&cm.add(&eps))?, || format!("c+ε not a member: c={} ε={}", show(&cm), show(&eps)))
        },
        r,
    ));

    out.push(run_condition(
        "basic",
        seed,
        9,
        count,
        |s| {
            let a = s.nonzero_matrix(&es, n);
            let b = s.nonzero_matrix(&es, n);
            let na = c.sigma(&a).mul(&a);
            let nb = c.sigma(&b).mul(&b);
            let ab = a.add(&b);
            let two = RatFunc::from_int(2);
            let d = na.add(&nb).scale(&two).sub(&c.sigma(&ab).mul(&ab));
            outcome(e.member(&d)?, || format!("n(a+b) ≰ 2(n(a)+n(b)): a={} b={}", show(&a), show(&b)))
        },
        r,
    ));

    out.push(run_condition(
        "sszero",
        seed,
        10,
        count,
        |s| {
            let m1 = random_member(c, s);
            let m2 = random_member(c, s);
            let sum = m1.add(&m2);
            if sum.is_zero() {
                return Ok(None);
            }
            outcome(!e.member(&sum.neg())?, || format!("m1+m2+m3 = 0 with m3 a member: m1={} m2={}", show(&m1), show(&m2)))
        },
        r,
    ));

    out.push(run_condition(
        "unitary",
        seed,
        11,
        count,
        |s| {
            let y = s.nonzero_matrix(&es, n);
            let k = y.sub(&c.sigma(&y));
            // Cayley transform u = (1−k)(1+k)⁻¹ = N/c₀ with (1+k)·Q = c₀ and
            // N = (1−k)·Q polynomial in k; then u⁻¹ = σ(u) = σ(N)/c₀.
            let Some((q, c0)) = polynomial_inverse(&e.one.add(&k)) else { return Ok(None) };
            let num = e.one.sub(&k).mul(&q);
            let sn = c.sigma(&num);
            let v0 = c0.val();
            let a = s.nonzero_matrix(&es, n);
            let ok = sn.mul(&num) == MatE::scalar(&es, n, &(&c0 * &c0))
                && e.w(&num) == v0
                && e.w(&sn) == v0
                && e.w(&num.mul(&a).mul(&sn)) == e.w(&a).add(&v0).add(&v0);
            outcome(ok, || format!("unitary u=N/c₀ with N={} c₀={c0:?} a={}", show(&num), show(&a)))
        },
        r,
    ));

    out.push(run_condition(
        "wadcom1_2",
        seed,
        12,
        count,
        |s| {
            let b = e.scaled_member(s);
            let mut y = MatE::zero(&es, n);
            for i in 0..n {
                if s.coin(0.7) {
                    y.set(i, 0, s.element(&es));
                }
            }
            if y.is_zero() {
                return Ok(None);
            }
            let ctx_e = e.g.ctx().e();
            let yt = y.conj_transpose();
            let num = yt.mul(&b.scale_rows(ctx_e)).mul(&y).get(0, 0).clone();
            let den = yt.mul(&MatE::diag(&es, ctx_e)).mul(&y).get(0, 0).clone();
            let lhs = num.v_e()?;
            let rhs = e.w(&b).add(&den.v_e()?);
            outcome(lhs >= rhs, || format!("v(ȳ e b y)={lhs:?} < w(b)+v(ȳ e y)={rhs:?}: b={} y={}", show(&b), show(&y)))
        },
        r,
    ));

    Ok(CompatReport { conditions: out })
}

/// The residue cone, blockwise, with sampled checks of both inclusions
/// against the image of `𝒫 ∩ R_w`.
pub fn residue_cone(c: &ConeSpec, count: usize, seed: u64) -> Result<ResidueConeReport> {
    if !c.is_valid() {
        return Err(Error::InvalidCone);
    }
    let env = Env::new(c)?;
    let e = &env;
    let r = c.ordering().r();
    let dec = residue_decomposition(&e.g);
    let blocks = e
        .ctxs
        .iter()
        .map(|h| ResidueConeBlock { size: h.n(), form: h.e().iter().map(|x| x.as_constant().unwrap().to_string()).collect() })
        .collect();
    let image = run_condition(
        "image",
        seed,
        20,
        count,
        |s| {
            let m = e.ring_member(s, false);
            let res = e.residue(&m)?;
            outcome(member_of(&res, &e.ctxs), || format!("residue outside cone: m={}", show(&m)))
        },
        r,
    );
    let lifts = run_condition(
        "lifts",
        seed,
        21,
        count,
        |s| {
            let target: Vec<MatE> = e
                .ctxs
                .iter()
                .map(|h| {
                    let terms = s.rng.gen_range(1..=2);
                    let mut acc = MatE::zero(h.espec(), h.n());
                    for _ in 0..terms {
                        let y = s.constant_matrix(h.espec(), h.n());
                        let q = RatFunc::from_rat(s.positive_rat());
                        acc = acc.add(&h.sigma(&y).mul(&y).scale(&q));
                    }
                    acc
                })
                .collect();
            let lift = residue_lift(&target, &e.g)?;
            let ok = e.member(&lift)? && e.residue(&lift)? == target;
            outcome(ok, || format!("residue PSD element without member lift: {:?}", target))
        },
        r,
    );
    debug_assert_eq!(dec.blocks.len(), e.ctxs.len());
    Ok(ResidueConeReport { blocks, image, lifts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ESpec;
    use crate::symfield::parse_element;

    fn cone(es: ESpec, e: &[&str], eta: &[i8]) -> ConeSpec {
        let v = ["x".to_string(), "y".to_string()];
        let h = HermContext::new(es, e.iter().map(|s| parse_element(s, &v).unwrap()).collect()).unwrap();
        ConeSpec::matrix(h, OrderingSpec::new(eta.to_vec())).unwrap()
    }

    #[test]
    fn suite_on_small_context() {
        let c = cone(ESpec::Base, &["1", "x"], &[1, -1]);
        let rep = compatibility_suite(&c, 15, 11).unwrap();
        for t in &rep.conditions {
            assert!(t.passed(), "{t:?}");
            assert!(t.tried > 0, "{t:?}");
        }
    }

    #[test]
    fn residue_cone_of_two_classes() {
        let c = cone(ESpec::Base, &["1", "x"], &[1, 1]);
        let rep = residue_cone(&c, 15, 5).unwrap();
        assert_eq!(rep.blocks.len(), 2);
        assert!(rep.blocks.iter().all(|b| b.size == 1 && b.form == vec!["1".to_string()]));
        assert!(rep.image.passed() && rep.lifts.passed());
        let g = c.gauge_context().unwrap();
        let one = residue_element(&MatE::identity(&ESpec::Base, 2), &g).unwrap();
        assert!(residue_cone_member(&one, &g));
        let zero = residue_element(&MatE::scalar(&ESpec::Base, 2, &parse_element("x", &["x".into()]).unwrap()), &g).unwrap();
        assert!(residue_cone_member(&zero, &g));
    }
}
