use serde::Serialize;

use crate::algebra::HermContext;
use crate::gauges::{form_coset_set, GaugeContext};
use crate::quatmat::MatE;
use crate::sampling::{sample_rng, Sampler};
use crate::symfield::{roots_in_field, OrderingSpec, PolyX, RatFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Certified,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnisotropyReport {
    pub verdict: Verdict,
    pub reason: String,
    /// An isotropic vector of `copies × ⟨coeffs⟩`, if the search found one.
    pub falsifier: Option<String>,
}

/// Certifies strong anisotropy of `⟨a_1,…,a_ℓ⟩_σ` over `(M_n(E), ad_h)`
/// from the hypotheses alone, and searches `copies × ⟨a⟩` for isotropic
/// vectors.
pub fn anisotropy_certificate(
    coeffs: &[RatFunc],
    ctx: &HermContext,
    p: &OrderingSpec,
    copies: usize,
    seed: u64,
) -> AnisotropyReport {
    let positive = !coeffs.is_empty() && coeffs.iter().all(|a| a.sign_at(p) > 0);
    let gauge = GaugeContext::new(ctx.clone(), p.clone());
    let units = coeffs.iter().all(|a| a.val().is_zero() && a.leading_unit().is_some_and(|u| u > num_traits::Zero::zero()));
    let (verdict, reason) = if gauge.is_err() {
        (Verdict::Unknown, "h is not definite at P: no positive cone containing 1".to_string())
    } else if units {
        (Verdict::Certified, "unit coefficients with positive residues".to_string())
    } else if !positive {
        (Verdict::Unknown, "some coefficient is not positive at P".to_string())
    } else if form_coset_set(ctx.e()).index() != 1 {
        (Verdict::Unknown, "Γ_w ≠ Γ_v".to_string())
    } else {
        (Verdict::Certified, "positive coefficients, Γ_w = Γ_v, residue cone containing 1".to_string())
    };
    let falsifier = falsify(coeffs, ctx, copies, seed);
    AnisotropyReport { verdict, reason, falsifier }
}

/// Value `Σ σ(x_i)·a_i·x_i` of the form on a vector of matrices.
fn form_value(coeffs: &[RatFunc], ctx: &HermContext, xs: &[MatE]) -> MatE {
    let mut acc = MatE::zero(ctx.espec(), ctx.n());
    for (a, x) in coeffs.iter().zip(xs) {
        acc = acc.add(&ctx.sigma(x).mul(x).scale(a));
    }
    acc
}

fn falsify(coeffs: &[RatFunc], ctx: &HermContext, copies: usize, seed: u64) -> Option<String> {
    let all: Vec<RatFunc> = (0..copies.max(1)).flat_map(|_| coeffs.iter().cloned()).collect();
    let es = ctx.espec();
    let n = ctx.n();
    // Pairs with −a_i/a_j a square s²: x_i = 1, x_j = s.
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let q = &all[i] / &all[j];
            let p = PolyX::new(vec![q, RatFunc::zero(), RatFunc::one()]);
            if let Ok(roots) = roots_in_field(&p) {
                if let Some((s, _)) = roots.first() {
                    let mut xs = vec![MatE::zero(es, n); all.len()];
                    xs[i] = MatE::identity(es, n);
                    xs[j] = MatE::scalar(es, n, s);
                    if form_value(&all, ctx, &xs).is_zero() {
                        return Some(format!("x_{} = 1, x_{} = {:?}", i + 1, j + 1, s));
                    }
                }
            }
        }
    }
    let mut s = Sampler::new(sample_rng(seed, 40, 0), 0);
    for _ in 0..200 {
        let xs: Vec<MatE> = all.iter().map(|_| s.constant_matrix(es, n)).collect();
        if xs.iter().all(|x| x.is_zero()) {
            continue;
        }
        if form_value(&all, ctx, &xs).is_zero() {
            return Some(format!("{xs:?}"));
        }
    }
    None
}
