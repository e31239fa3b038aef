use serde_json::{json, Map, Value};

use super::config::Scenario;
use crate::algebra::{AlgebraSpec, EElement, ESpec, QuatInvolution};
use crate::cones::{check_prepositive_axioms, compatibility_suite, lift_set, nil_orderings, residue_cone, wadth_check, ConeSpec};
use crate::error::{Error, Result};
use crate::gauges::{
    gauge_suite, is_dubrovin, quat_division_gauge, residue_decomposition, surviving_cells, value_coset_set, GaugeContext,
};
use crate::quatmat::selftest;
use crate::sampling::ConditionTally;
use crate::symfield::{OrderingSpec, RatFunc};

/// Result of one configuration: per-analysis JSON plus tallies of
/// violations and errors.
#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub name: String,
    pub algebra: Value,
    pub orderings: Vec<String>,
    pub analyses: Map<String, Value>,
    pub notes: Vec<String>,
    pub violations: usize,
    pub errors: usize,
}

impl RunReport {
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "algebra": self.algebra,
            "orderings": self.orderings,
            "analyses": self.analyses,
            "notes": self.notes,
            "violations": self.violations,
            "errors": self.errors,
        })
    }
}

struct Env<'a> {
    sc: &'a Scenario,
    notes: Vec<String>,
    violations: usize,
}

impl Env<'_> {
    fn show(&self, f: &RatFunc) -> String {
        f.display_with(&self.sc.vars)
    }

    fn r(&self) -> usize {
        self.sc.vars.len()
    }

    fn tallies(&mut self, ts: &[ConditionTally]) -> Value {
        self.violations += ts.iter().map(|t| t.violations.len()).sum::<usize>();
        serde_json::to_value(ts).expect("tallies serialize")
    }

    fn require(&mut self, ok: bool) -> bool {
        if !ok {
            self.violations += 1;
        }
        ok
    }

    fn note(&mut self, analysis: &str, msg: &str) -> Value {
        self.notes.push(format!("{analysis}: {msg}"));
        json!({ "note": msg })
    }
}

fn e_kind(e: &ESpec) -> &'static str {
    match e {
        ESpec::Base => "BASE",
        ESpec::Complex => "COMPLEX",
        ESpec::Quat(_) => "QUAT",
    }
}

pub fn describe_algebra(a: &AlgebraSpec, vars: &[String]) -> Value {
    match a {
        AlgebraSpec::Matrix(ctx) => json!({
            "kind": "MATRIX",
            "eKind": e_kind(ctx.espec()),
            "form": ctx.e().iter().map(|x| x.display_with(vars)).collect::<Vec<_>>(),
        }),
        AlgebraSpec::QuatDiv { a, b, inv } => json!({
            "kind": "QUATDIV",
            "a": a.display_with(vars),
            "b": b.display_with(vars),
            "involution": match inv { QuatInvolution::Gamma => "GAMMA", QuatInvolution::IntIGamma => "INT_I_GAMMA" },
        }),
    }
}

fn skipped(p: &OrderingSpec, why: &str) -> Value {
    json!({ "ordering": p.label(), "skipped": why })
}

const INDEFINITE: &str = "h is not definite at this ordering";
const NO_CONE: &str = "no positive cone containing 1 over this ordering";

fn gauge(env: &mut Env) -> Result<Value> {
    let sc = env.sc;
    let AlgebraSpec::Matrix(ctx) = &sc.algebra else {
        let AlgebraSpec::QuatDiv { a, b, .. } = &sc.algebra else { unreachable!() };
        let e = ESpec::quat(a.clone(), b.clone())?;
        let vals = (0..4).map(|k| quat_division_gauge(&EElement::basis(&e, k)).map(|v| v.display_r(env.r()))).collect::<Result<Vec<_>>>()?;
        let mut out = env.note("gauge", "the sampled gauge suite runs on matrix contexts; basis gauges shown");
        out["basisGauges"] = json!(vals);
        return Ok(out);
    };
    let mut rows = Vec::new();
    for p in &sc.orderings {
        let Ok(g) = GaugeContext::new(ctx.clone(), p.clone()) else {
            rows.push(skipped(p, INDEFINITE));
            continue;
        };
        let cosets: Vec<String> = value_coset_set(&g).reps.iter().map(|c| c.display_r(env.r())).collect();
        let vals: Vec<String> = g.e_vals().iter().map(|v| v.display_r(env.r())).collect();
        let ts = gauge_suite(&g, sc.sample_count, sc.seed);
        rows.push(json!({
            "ordering": p.label(),
            "normalizedSign": g.normalized_sign(),
            "formValuations": vals,
            "valueCosets": cosets,
            "cosetIndex": cosets.len(),
            "conditions": env.tallies(&ts),
        }));
    }
    Ok(Value::Array(rows))
}

fn residue(env: &mut Env) -> Result<Value> {
    let sc = env.sc;
    let AlgebraSpec::Matrix(ctx) = &sc.algebra else {
        return Ok(env.note("residue", "residue decompositions are computed for matrix contexts"));
    };
    let mut rows = Vec::new();
    for p in &sc.orderings {
        let Ok(g) = GaugeContext::new(ctx.clone(), p.clone()) else {
            rows.push(skipped(p, INDEFINITE));
            continue;
        };
        let dec = residue_decomposition(&g);
        let blocks: Vec<Value> = dec
            .blocks
            .iter()
            .map(|b| {
                json!({
                    "classRep": b.class_rep.display_r(env.r()),
                    "indices": b.indices,
                    "size": b.size(),
                    "residueForm": b.residue_form.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                    "orderingSign": b.ordering_sign,
                })
            })
            .collect();
        let cells = surviving_cells(&g);
        let identity = env.require(dec.dimension() == cells);
        rows.push(json!({
            "ordering": p.label(),
            "residueEKind": e_kind(&dec.residue_espec),
            "blocks": blocks,
            "dimension": dec.dimension(),
            "survivingCells": cells,
            "dimensionIdentity": identity,
            "isDubrovin": is_dubrovin(&g),
        }));
    }
    Ok(Value::Array(rows))
}

fn cones(env: &mut Env) -> Result<Value> {
    let sc = env.sc;
    let mut rows = Vec::new();
    for p in &sc.orderings {
        let c = ConeSpec::new(sc.algebra.clone(), p.clone())?;
        if !c.is_valid() {
            rows.push(skipped(p, NO_CONE));
            continue;
        }
        let axioms = check_prepositive_axioms(&c, sc.sample_count, sc.seed)?;
        let mut row = json!({ "ordering": p.label(), "axioms": env.tallies(&axioms) });
        if matches!(sc.algebra, AlgebraSpec::Matrix(_)) {
            let rc = residue_cone(&c, sc.sample_count, sc.seed)?;
            let image = env.tallies(std::slice::from_ref(&rc.image));
            let lifts = env.tallies(std::slice::from_ref(&rc.lifts));
            row["residueCone"] = json!({ "blocks": rc.blocks, "image": image[0], "lifts": lifts[0] });
        }
        rows.push(row);
    }
    Ok(Value::Array(rows))
}

fn compat(env: &mut Env) -> Result<Value> {
    let sc = env.sc;
    if !matches!(sc.algebra, AlgebraSpec::Matrix(_)) {
        return Ok(env.note("compat", "compatibility conditions are sampled on matrix contexts"));
    }
    let mut rows = Vec::new();
    for p in &sc.orderings {
        let c = ConeSpec::new(sc.algebra.clone(), p.clone())?;
        if !c.is_valid() {
            rows.push(skipped(p, NO_CONE));
            continue;
        }
        let rep = compatibility_suite(&c, sc.sample_count, sc.seed)?;
        rows.push(json!({ "ordering": p.label(), "conditions": env.tallies(&rep.conditions) }));
    }
    Ok(Value::Array(rows))
}

fn labels(ps: &[OrderingSpec]) -> Vec<String> {
    ps.iter().map(|p| p.label()).collect()
}

fn lift(env: &mut Env) -> Result<Value> {
    let rep = lift_set(&env.sc.algebra, env.r())?;
    let classes: Vec<Value> = rep
        .classes
        .iter()
        .map(|c| {
            json!({
                "class": c.class.display_r(env.r()),
                "units": c.units.iter().map(|u| u.to_string()).collect::<Vec<_>>(),
                "epsilon": c.epsilon,
            })
        })
        .collect();
    let matches = env.require(rep.matches);
    Ok(json!({
        "baseOrderings": labels(&rep.base_orderings),
        "liftable": labels(&rep.liftable),
        "traceForm": rep.trace_form.entries().iter().map(|x| env.show(x)).collect::<Vec<_>>(),
        "classes": classes,
        "harrisonGenerators": rep.harrison_generators.iter().map(|x| env.show(x)).collect::<Vec<_>>(),
        "harrisonSet": labels(&rep.harrison_set),
        "matches": matches,
    }))
}

fn nil(env: &mut Env) -> Result<Value> {
    let rep = nil_orderings(&env.sc.algebra, env.r())?;
    let table: Vec<Value> = rep.table.iter().map(|(p, n)| json!({ "ordering": p.label(), "nil": n })).collect();
    Ok(json!({ "table": table, "nil": labels(&rep.nil()) }))
}

fn wadth(env: &mut Env) -> Result<Value> {
    let rep = wadth_check(&env.sc.algebra, env.r())?;
    env.require(rep.equivalence_holds);
    env.require(rep.count_matches);
    Ok(serde_json::to_value(rep).expect("report serializes"))
}

fn quatmat_selftest(env: &mut Env) -> Result<Value> {
    let sc = env.sc;
    let espec = match &sc.algebra {
        AlgebraSpec::Matrix(ctx) => ctx.espec().clone(),
        AlgebraSpec::QuatDiv { a, b, .. } => ESpec::quat(a.clone(), b.clone())?,
    };
    let mut rows = Vec::new();
    for p in &sc.orderings {
        let ts = selftest(&espec, p, sc.sample_count, sc.seed);
        rows.push(json!({ "ordering": p.label(), "conditions": env.tallies(&ts) }));
    }
    Ok(Value::Array(rows))
}

fn analysis(name: &str) -> fn(&mut Env) -> Result<Value> {
    match name {
        "gauge" => gauge,
        "residue" => residue,
        "cones" => cones,
        "compat" => compat,
        "lift" => lift,
        "nil" => nil,
        "wadth" => wadth,
        "quatmat-selftest" => quatmat_selftest,
        _ => |_| Err(Error::UnsupportedVariant("unknown analysis".into())),
    }
}

/// Runs every requested analysis. An analysis error is recorded under its
/// name and the remaining analyses still run.
pub fn run_scenario(sc: &Scenario) -> RunReport {
    let mut env = Env { sc, notes: Vec::new(), violations: 0 };
    let mut out = RunReport {
        name: sc.name.clone(),
        algebra: describe_algebra(&sc.algebra, &sc.vars),
        orderings: labels(&sc.orderings),
        ..Default::default()
    };
    for name in &sc.analyses {
        let v = match analysis(name)(&mut env) {
            Ok(v) => v,
            Err(e) => {
                out.errors += 1;
                json!({ "error": e.to_string() })
            }
        };
        out.analyses.insert(name.clone(), v);
    }
    out.notes = env.notes;
    out.violations = env.violations;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::load;

    fn scenario(algebra: &str, ordering: &str, analyses: &str) -> Scenario {
        let text = format!(
            r#"{{"vars":["x","y"],"algebra":{algebra},"ordering":{ordering},"analyses":{analyses},"seed":5,"sampleCount":3}}"#
        );
        load(&text, "t").unwrap()
    }

    #[test]
    fn empty_analyses_give_empty_table() {
        let s = scenario(r#"{"kind":"MATRIX","eKind":"BASE","form":["1"]}"#, "\"ALL\"", "[]");
        let r = run_scenario(&s);
        assert!(r.analyses.is_empty());
        assert_eq!((r.violations, r.errors), (0, 0));
    }

    #[test]
    fn errors_do_not_abort_other_analyses() {
        let s = scenario(r#"{"kind":"MATRIX","eKind":"BASE","form":["1","x"]}"#, "\"ALL\"", r#"["nil","lift","residue"]"#);
        let r = run_scenario(&s);
        assert_eq!(r.errors, 1);
        assert!(r.analyses["nil"].get("error").is_some());
        assert_eq!(r.analyses["lift"]["liftable"], json!(["(+,-)", "(+,+)"]));
        let res = r.analyses["residue"].as_array().unwrap();
        assert_eq!(res.iter().filter(|x| x.get("skipped").is_some()).count(), 2);
        assert_eq!(r.violations, 0);
    }

    #[test]
    fn quaternion_division_notes() {
        let s = scenario(r#"{"kind":"QUATDIV","a":"x","b":"y","involution":"GAMMA"}"#, "[-1,-1]", r#"["compat","gauge","cones"]"#);
        let r = run_scenario(&s);
        assert_eq!(r.errors, 0, "{:?}", r.analyses);
        assert_eq!(r.notes.len(), 2);
        assert_eq!(r.analyses["gauge"]["basisGauges"], json!(["(0, 0)", "(1/2, 0)", "(0, 1/2)", "(1/2, 1/2)"]));
        assert!(r.analyses["cones"][0].get("axioms").is_some());
    }

    #[test]
    fn matrix_analyses_run_clean() {
        let s = scenario(
            r#"{"kind":"MATRIX","eKind":"COMPLEX","form":["1","x*y"]}"#,
            "[-1,-1]",
            r#"["gauge","residue","cones","compat","wadth","quatmat-selftest"]"#,
        );
        let r = run_scenario(&s);
        assert_eq!((r.violations, r.errors), (0, 0), "{:?}", r.analyses);
        assert_eq!(r.analyses["gauge"][0]["cosetIndex"], json!(2));
        assert_eq!(r.analyses["residue"][0]["isDubrovin"], json!(false));
    }
}
