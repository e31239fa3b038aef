use serde::Serialize;

use crate::algebra::{trace_form, AlgebraSpec, DiagForm, QuatInvolution};
use crate::error::{Error, Result};
use crate::gauges::{form_coset_set, x_pow};
use crate::symfield::{enumerate_orderings, GammaVal, OrderingSpec, Rat, RatFunc};

/// Whether the residue cone lifts to a positive cone containing 1 over `P`:
/// the trace form is definite at `P`.
pub fn lift_exists(spec: &AlgebraSpec, p: &OrderingSpec) -> Result<bool> {
    Ok(trace_form(spec)?.definite_sign(p).is_some())
}

/// Trace form entries sharing one class `ρ` of Γ_v/2Γ_v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarrisonClass {
    /// `ρ = x^class` with 0/1 exponents.
    pub class: GammaVal,
    pub units: Vec<Rat>,
    /// Common sign of the residues of the units, if they agree.
    pub epsilon: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub base_orderings: Vec<OrderingSpec>,
    pub liftable: Vec<OrderingSpec>,
    pub trace_form: DiagForm,
    pub classes: Vec<HarrisonClass>,
    /// `ε_ℓ·ρ_ℓ`; empty when some class has units of both signs.
    pub harrison_generators: Vec<RatFunc>,
    /// Orderings where all generators have one common sign.
    pub harrison_set: Vec<OrderingSpec>,
    pub matches: bool,
}

fn harrison_classes(t: &DiagForm) -> Vec<HarrisonClass> {
    let mut out: Vec<HarrisonClass> = Vec::new();
    for e in t.entries() {
        let class = GammaVal::from_ints(e.val().parity().into_iter().map(i64::from));
        let u = e.leading_unit().unwrap();
        match out.iter_mut().find(|c| c.class == class) {
            Some(c) => c.units.push(u),
            None => out.push(HarrisonClass { class, units: vec![u], epsilon: None }),
        }
    }
    for c in out.iter_mut() {
        let s: Vec<bool> = c.units.iter().map(|u| u > &Rat::from_integer(0.into())).collect();
        c.epsilon = if s.iter().all(|&b| b) {
            Some(1)
        } else if s.iter().all(|&b| !b) {
            Some(-1)
        } else {
            None
        };
    }
    out
}

/// All orderings of `r` variables, the liftable ones, and their
/// description as a Harrison set `H(ε_1ρ_1,…,ε_kρ_k)` up to a global sign.
pub fn lift_set(spec: &AlgebraSpec, r: usize) -> Result<LiftReport> {
    let t = trace_form(spec)?;
    let base = enumerate_orderings(r);
    let liftable: Vec<OrderingSpec> = base.iter().filter(|p| t.definite_sign(p).is_some()).cloned().collect();
    let classes = harrison_classes(&t);
    let generators: Vec<RatFunc> = if classes.iter().all(|c| c.epsilon.is_some()) {
        classes.iter().map(|c| x_pow(&c.class).scale(&Rat::from_integer(c.epsilon.unwrap().into()))).collect()
    } else {
        Vec::new()
    };
    let harrison_set: Vec<OrderingSpec> = if generators.is_empty() {
        Vec::new()
    } else {
        base.iter()
            .filter(|p| {
                let s0 = generators[0].sign_at(p);
                generators.iter().all(|g| g.sign_at(p) == s0)
            })
            .cloned()
            .collect()
    };
    let matches = harrison_set == liftable;
    Ok(LiftReport { base_orderings: base, liftable, trace_form: t, classes, harrison_generators: generators, harrison_set, matches })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WadthReport {
    pub all_lift: bool,
    pub coset_index_one: bool,
    pub coset_index: usize,
    pub lift_count: usize,
    /// Some ordering admits a lift, i.e. the residue cone containing 1 exists.
    pub lift_nonempty: bool,
    /// `all_lift ⟺ coset_index_one`, required whenever `lift_nonempty`.
    pub equivalence_holds: bool,
    /// When every ordering lifts, the count equals `|Γ_v/2Γ_v| = 2^r`.
    pub count_matches: bool,
}

/// Γ_w against Γ_v and the number of liftings containing 1.
pub fn wadth_check(spec: &AlgebraSpec, r: usize) -> Result<WadthReport> {
    let rep = lift_set(spec, r)?;
    let cosets = match spec {
        AlgebraSpec::Matrix(ctx) => form_coset_set(ctx.e()),
        AlgebraSpec::QuatDiv { a, b, .. } => form_coset_set(&[RatFunc::one(), a.clone(), b.clone(), a * b]),
    };
    let all_lift = rep.liftable.len() == rep.base_orderings.len();
    let coset_index = cosets.index();
    let lift_nonempty = !rep.liftable.is_empty();
    Ok(WadthReport {
        all_lift,
        coset_index_one: coset_index == 1,
        coset_index,
        lift_count: rep.liftable.len(),
        lift_nonempty,
        equivalence_holds: !lift_nonempty || all_lift == (coset_index == 1),
        count_matches: !all_lift || rep.liftable.len() == 1 << r,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilReport {
    pub table: Vec<(OrderingSpec, bool)>,
}

impl NilReport {
    pub fn nil(&self) -> Vec<OrderingSpec> {
        self.table.iter().filter(|(_, n)| *n).map(|(p, _)| p.clone()).collect()
    }
}

/// Orderings with no positive cone: for `(a,b)_F` with γ these are the
/// orderings where the algebra splits, with `Int(i)∘γ` those where it stays
/// division (`a, b < 0`).
pub fn nil_orderings(spec: &AlgebraSpec, r: usize) -> Result<NilReport> {
    let AlgebraSpec::QuatDiv { a, b, inv } = spec else {
        return Err(Error::UnsupportedVariant("nil orderings are computed for quaternion division algebras".into()));
    };
    let table = enumerate_orderings(r)
        .into_iter()
        .map(|p| {
            let division = a.sign_at(&p) < 0 && b.sign_at(&p) < 0;
            let nil = match inv {
                QuatInvolution::Gamma => !division,
                QuatInvolution::IntIGamma => division,
            };
            (p, nil)
        })
        .collect();
    Ok(NilReport { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ESpec, HermContext};
    use crate::symfield::parse_element;

    fn f(s: &str) -> RatFunc {
        parse_element(s, &["x".to_string(), "y".to_string()]).unwrap()
    }

    fn quat(inv: QuatInvolution) -> AlgebraSpec {
        AlgebraSpec::QuatDiv { a: f("x"), b: f("y"), inv }
    }

    fn matrix(e: &[&str]) -> AlgebraSpec {
        AlgebraSpec::Matrix(HermContext::new(ESpec::Base, e.iter().map(|s| f(s)).collect()).unwrap())
    }

    #[test]
    fn quaternion_lift_sets() {
        let g = lift_set(&quat(QuatInvolution::Gamma), 2).unwrap();
        assert_eq!(g.liftable, vec![OrderingSpec::new(vec![-1, -1])]);
        assert!(g.matches);
        let s = lift_set(&quat(QuatInvolution::IntIGamma), 2).unwrap();
        assert_eq!(s.liftable, vec![OrderingSpec::new(vec![-1, 1])]);
        assert!(s.matches);
        assert!(lift_exists(&matrix(&["1", "1"]), &OrderingSpec::new(vec![1, -1])).unwrap());
        assert_eq!(lift_set(&matrix(&["1", "2"]), 2).unwrap().liftable.len(), 4);
    }

    #[test]
    fn nil_examples() {
        let g = nil_orderings(&quat(QuatInvolution::Gamma), 2).unwrap().nil();
        assert_eq!(g.len(), 3);
        assert!(!g.contains(&OrderingSpec::new(vec![-1, -1])));
        let s = nil_orderings(&quat(QuatInvolution::IntIGamma), 2).unwrap().nil();
        assert_eq!(s, vec![OrderingSpec::new(vec![-1, -1])]);
        let h = AlgebraSpec::QuatDiv { a: f("-1"), b: f("-1"), inv: QuatInvolution::Gamma };
        assert!(nil_orderings(&h, 2).unwrap().nil().is_empty());
        assert!(matches!(nil_orderings(&matrix(&["1"]), 2), Err(Error::UnsupportedVariant(_))));
    }

    #[test]
    fn wadth_examples() {
        let w = wadth_check(&matrix(&["1", "2", "3"]), 2).unwrap();
        assert!(w.all_lift && w.coset_index_one && w.lift_count == 4);
        let w = wadth_check(&matrix(&["1", "x"]), 2).unwrap();
        assert!(!w.all_lift && !w.coset_index_one && w.equivalence_holds);
        let w = wadth_check(&matrix(&["1", "x^2"]), 2).unwrap();
        assert!(w.all_lift && w.coset_index_one && w.lift_count == 4);
        let w = wadth_check(&quat(QuatInvolution::Gamma), 2).unwrap();
        assert_eq!(w.coset_index, 4);
        assert!(w.equivalence_holds);
    }
}
