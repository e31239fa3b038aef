use std::collections::BTreeSet;

use serde_json::json;

use super::config::Scenario;
use super::run::run_scenario;
use super::Report;
use crate::algebra::{same_square_class_form, trace_form, AlgebraSpec, DiagForm, ESpec, HermContext, QuatInvolution};
use crate::error::{Error, Result};
use crate::gauges::form_coset_set;
use crate::symfield::{enumerate_orderings, parse_element, OrderingSpec, RatFunc};

pub const SCENARIOS: [&str; 2] = ["bk2_example", "m6_index_example"];

fn elements(src: &[&str], vars: &[String]) -> Vec<RatFunc> {
    src.iter().map(|s| parse_element(s, vars).expect("built-in expression")).collect()
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn run_named(name: &str, seed: u64, samples: usize) -> Result<Report> {
    match name {
        "bk2_example" => Ok(bk2(seed, samples)),
        "m6_index_example" => Ok(m6(seed, samples)),
        _ => Err(Error::Config { location: "--scenario".into(), msg: format!("unknown scenario '{name}'; known: {}", SCENARIOS.join(", ")) }),
    }
}

/// `(x,y)_F` with γ and with `Int(i)∘γ`: trace forms, lift sets and nil tables.
fn bk2(seed: u64, samples: usize) -> Report {
    let vars = names(&["x", "y"]);
    let mut report = Report::new("bk2_example", seed, samples);
    let cases = [
        (QuatInvolution::Gamma, ["2", "-2*x", "-2*y", "2*x*y"], vec![-1, -1]),
        (QuatInvolution::IntIGamma, ["2", "-2*x", "2*y", "-2*x*y"], vec![-1, 1]),
    ];
    for (inv, expected, lifts) in cases {
        let algebra = AlgebraSpec::QuatDiv { a: elements(&["x"], &vars)[0].clone(), b: elements(&["y"], &vars)[0].clone(), inv };
        let label = match inv {
            QuatInvolution::Gamma => "gamma",
            QuatInvolution::IntIGamma => "int_i_gamma",
        };
        let sc = Scenario {
            name: label.to_string(),
            vars: vars.clone(),
            algebra: algebra.clone(),
            orderings: enumerate_orderings(2),
            analyses: names(&["lift", "nil"]),
            seed,
            sample_count: samples,
        };
        report.runs.push(run_scenario(&sc));

        let t = trace_form(&algebra).expect("quaternion trace form");
        let d = DiagForm::new(elements(&expected, &vars)).unwrap();
        let same = enumerate_orderings(2).iter().all(|p| same_square_class_form(&t, &d, p).unwrap_or(false));
        report.check(json!({
            "check": format!("{label}: trace form ≃ ⟨{}⟩ at every ordering", expected.join(", ")),
            "holds": same,
        }), same);
        let got = crate::cones::lift_set(&algebra, 2).map(|r| r.liftable).unwrap_or_default();
        let want = vec![OrderingSpec::new(lifts)];
        report.check(json!({
            "check": format!("{label}: liftable orderings = {{{}}}", want[0].label()),
            "holds": got == want,
        }), got == want);
    }
    report
}

/// Classes of `v(e_i) − v(e_j)` in Γ_v/2Γ_v counted pair by pair.
fn brute_force_index(e: &[RatFunc]) -> usize {
    let mut s = BTreeSet::new();
    for a in e {
        for b in e {
            let d: Vec<u8> = a.val().sub(&b.val()).parity();
            s.insert(d);
        }
    }
    s.len()
}

/// Coset indices of ⟨1,x₁,x₂,x₃,x₄,x₁x₂x₃x₄⟩ and ⟨1,x₁,x₂,x₃,x₁x₂,x₃x₄⟩.
fn m6(seed: u64, samples: usize) -> Report {
    let vars = names(&["x1", "x2", "x3", "x4"]);
    let mut report = Report::new("m6_index_example", seed, samples);
    let forms = [
        ("phi", ["1", "x1", "x2", "x3", "x4", "x1*x2*x3*x4"], 16),
        ("psi", ["1", "x1", "x2", "x3", "x1*x2", "x3*x4"], 14),
    ];
    for (label, src, reference) in forms {
        let e = elements(&src, &vars);
        let sc = Scenario {
            name: label.to_string(),
            vars: vars.clone(),
            algebra: AlgebraSpec::Matrix(HermContext::new(ESpec::Base, e.clone()).unwrap()),
            orderings: enumerate_orderings(4),
            analyses: names(&["wadth", "residue"]),
            seed,
            sample_count: samples,
        };
        report.runs.push(run_scenario(&sc));
        let index = form_coset_set(&e).index();
        let brute = brute_force_index(&e);
        report.check(json!({
            "check": format!("{label}: coset index equals the exhaustive class count"),
            "cosetIndex": index,
            "bruteForce": brute,
            "reference": reference,
            "holds": index == brute,
        }), index == brute);
        if index != reference {
            report.notes.push(format!(
                "erratum: {label} has coset index {index} by exhaustive enumeration of the 36 pairs; the reference value is {reference}"
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bk2_matches_expected_tables() {
        let r = run_named("bk2_example", 1, 5).unwrap();
        assert!(r.ok(), "{:?}", r.to_json());
        assert_eq!(r.runs.len(), 2);
        assert_eq!(r.runs[0].analyses["nil"]["nil"], json!(["(-,+)", "(+,-)", "(+,+)"]));
        assert_eq!(r.runs[1].analyses["nil"]["nil"], json!(["(-,-)"]));
        assert_eq!(r.runs[1].analyses["lift"]["liftable"], json!(["(-,+)"]));
    }

    #[test]
    fn m6_indices_and_erratum() {
        let r = run_named("m6_index_example", 1, 5).unwrap();
        assert!(r.ok(), "{:?}", r.to_json());
        assert_eq!(r.checks[0]["cosetIndex"], json!(16));
        assert_eq!(r.checks[1]["cosetIndex"], json!(13));
        assert_eq!(r.notes.len(), 1);
        assert!(r.notes[0].contains("psi"));
    }

    #[test]
    fn unknown_scenario_is_config_error() {
        assert!(matches!(run_named("nope", 1, 1), Err(Error::Config { .. })));
    }
}
