use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    eigen_valuations, gauge_value, in_gauge_ideal, in_gauge_ring, in_st, oracle_in_ideal, oracle_in_ring, GaugeContext,
};
use crate::quatmat::{polynomial_inverse, MatE};
use crate::sampling::{outcome, run_condition, ConditionTally, Sampler};
use crate::symfield::{GammaVal, Rat, RatFunc};

/// Multiplies by `x_1^k`.
fn shift_by(a: &MatE, k: i64, r: usize) -> MatE {
    if r == 0 {
        return a.clone();
    }
    let mut e = vec![0i64; r];
    e[0] = k;
    a.scale(&RatFunc::laurent_monomial(Rat::one(), &e))
}

/// Moves `w(a)` next to 0 in the leading coordinate, landing on either side.
fn near_zero(a: &MatE, g: &GaugeContext, s: &mut Sampler<ChaCha8Rng>) -> MatE {
    let w = gauge_value(a, g).expect("well-formed matrix");
    let r = g.ordering().r();
    if w.is_inf() || r == 0 {
        return a.clone();
    }
    let k = -w.coord(0).floor().to_integer() + s.rng.gen_range(-1..=1i64);
    shift_by(a, k.try_into().expect("small exponent"), r)
}

fn symmetric(g: &GaugeContext, s: &mut Sampler<ChaCha8Rng>) -> MatE {
    loop {
        let y = s.nonzero_matrix(g.espec(), g.n());
        let b = y.add(&g.sigma(&y));
        if !b.is_zero() {
            return b;
        }
    }
}

fn show(a: &MatE) -> String {
    format!("{a:?}")
}

/// Gauge property checks on sampled matrices: the value-function axioms,
/// σ-invariance and σ-speciality, `w(s^{2^k}) = 2^k·w(s)` for symmetric s, ring and ideal
/// membership against the eigenvalue oracle, the eigenvalue identity for
/// symmetric elements and the st(w) characterization.
pub fn gauge_suite(g: &GaugeContext, count: usize, seed: u64) -> Vec<ConditionTally> {
    let r = g.ordering().r();
    let es = g.espec().clone();
    let n = g.n();
    let w = |a: &MatE| gauge_value(a, g).expect("well-formed matrix");
    let mut out = Vec::new();

    out.push(run_condition(
        "value_axioms",
        seed,
        60,
        count,
        |s| {
            let x = s.nonzero_matrix(&es, n);
            let y = s.nonzero_matrix(&es, n);
            let l = s.poly();
            let (wx, wy) = (w(&x), w(&y));
            let ok = w(&x.add(&y)) >= std::cmp::min(wx.clone(), wy)
                && w(&x.scale(&l)) == l.val().add(&wx)
                && !wx.is_inf()
                && w(&MatE::zero(&es, n)).is_inf();
            outcome(ok, || format!("x={} y={} λ={l:?}", show(&x), show(&y)))
        },
        r,
    ));

    out.push(run_condition(
        "sigma_special",
        seed,
        61,
        count,
        |s| {
            let x = s.nonzero_matrix(&es, n);
            let sx = g.sigma(&x);
            let wx = w(&x);
            let ok = w(&sx) == wx && w(&sx.mul(&x)) == wx.add(&wx);
            outcome(ok, || format!("x={}", show(&x)))
        },
        r,
    ));

    out.push(run_condition(
        "power_of_two",
        seed,
        62,
        count,
        |s| {
            let a = symmetric(g, s);
            let k = s.rng.gen_range(1..=4u32);
            let mut p = a.clone();
            for _ in 0..k {
                p = p.mul(&p);
            }
            let two_k = Rat::from_integer((1i64 << k).into());
            let wa = w(&a);
            let wp = w(&p);
            let mut ok = wp == wa.scale(&two_k);
            if r > 0 {
                let mut half = vec![Rat::from_integer(0.into()); r];
                half[0] = Rat::new(1.into(), 2.into());
                let eps = GammaVal::new(half);
                for alpha in [wa.sub(&eps), wa.clone(), wa.add(&eps)] {
                    ok &= (wa > alpha) == (wp > alpha.scale(&two_k));
                }
            }
            outcome(ok, || format!("k={k} a={}", show(&a)))
        },
        r,
    ));

    out.push(run_condition(
        "ring_oracle",
        seed,
        63,
        count,
        |s| {
            let a = s.nonzero_matrix(&es, n);
            let a = near_zero(&a, g, s);
            let ok = in_gauge_ring(&a, g)? == oracle_in_ring(&a, g)? && in_gauge_ideal(&a, g)? == oracle_in_ideal(&a, g)?;
            outcome(ok, || format!("w={:?} a={}", w(&a), show(&a)))
        },
        r,
    ));

    out.push(run_condition(
        "eigen_identity",
        seed,
        64,
        count,
        |s| {
            let b = symmetric(g, s);
            let b = if s.coin(0.5) { near_zero(&b, g, s) } else { b };
            let m = eigen_valuations(&b, g)?.into_iter().min().unwrap_or(GammaVal::Inf);
            let wb = w(&b);
            outcome(m == wb, || format!("min eigen valuation {m:?} ≠ w={wb:?}: b={}", show(&b)))
        },
        r,
    ));

    out.push(run_condition(
        "st_consistency",
        seed,
        65,
        count,
        |s| {
            // Half of the samples are x_1^k·(1 + ε) with ε in I_w, which lie in st(w).
            let a = if s.coin(0.5) {
                let eps = s.nonzero_matrix(&es, n);
                let we = w(&eps);
                let k = if r == 0 { BigInt::from(0) } else { -we.coord(0).floor().to_integer() + 1 };
                let eps = shift_by(&eps, k.try_into().expect("small exponent"), r);
                let k2 = s.rng.gen_range(-2..=2i64);
                shift_by(&MatE::identity(&es, n).add(&eps), k2, r)
            } else {
                s.nonzero_matrix(&es, n)
            };
            let Some((inv, c0)) = polynomial_inverse(&a) else { return Ok(None) };
            let wa = w(&a);
            let winv = w(&inv).sub(&c0.val());
            let st = in_st(&a, g)?;
            outcome(st == (winv == wa.neg()), || {
                format!("in_st={st} w(a)={wa:?} w(a⁻¹)={winv:?}: a={}", show(&a))
            })
        },
        r,
    ));

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ESpec, HermContext};
    use crate::symfield::{parse_element, OrderingSpec};

    #[test]
    fn suite_holds_on_small_contexts() {
        let v = ["x".to_string(), "y".to_string()];
        for (es, e, eta) in [
            (ESpec::Base, ["1", "x"], [1, -1]),
            (ESpec::Complex, ["1", "x*y"], [-1, -1]),
            (ESpec::hamilton(), ["1", "1"], [1, 1]),
        ] {
            let ctx = HermContext::new(es, e.iter().map(|s| parse_element(s, &v).unwrap()).collect()).unwrap();
            let g = GaugeContext::new(ctx, OrderingSpec::new(eta.to_vec())).unwrap();
            for t in gauge_suite(&g, 10, 2) {
                assert!(t.passed(), "{t:?}");
                assert!(t.tried > 0, "{t:?}");
            }
        }
    }
}
