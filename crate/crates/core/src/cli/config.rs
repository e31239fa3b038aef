use serde::Deserialize;

use crate::algebra::{AlgebraSpec, ESpec, HermContext, QuatInvolution};
use crate::error::{Error, Result};
use crate::symfield::{enumerate_orderings, parse_element, OrderingSpec, RatFunc};

pub const ANALYSES: [&str; 8] = ["gauge", "residue", "cones", "compat", "lift", "nil", "wadth", "quatmat-selftest"];

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_SAMPLES: usize = 50;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum AlgebraConfig {
    #[serde(rename = "MATRIX")]
    Matrix {
        #[serde(rename = "eKind")]
        e_kind: EKind,
        form: Vec<String>,
    },
    #[serde(rename = "QUATDIV")]
    QuatDiv { a: String, b: String, involution: Involution },
}

#[derive(Clone, Copy, Debug, Deserialize)]
pub enum EKind {
    #[serde(rename = "BASE")]
    Base,
    #[serde(rename = "COMPLEX")]
    Complex,
    /// `(−1,−1)_F`.
    #[serde(rename = "QUAT")]
    Quat,
}

#[derive(Clone, Copy, Debug, Deserialize)]
pub enum Involution {
    #[serde(rename = "GAMMA")]
    Gamma,
    #[serde(rename = "INT_I_GAMMA")]
    IntIGamma,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum OrderingConfig {
    Signs(Vec<i8>),
    Keyword(String),
}

/// Scenario configuration as read from JSON.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ScenarioConfig {
    pub vars: Vec<String>,
    pub algebra: AlgebraConfig,
    pub ordering: OrderingConfig,
    #[serde(default)]
    pub analyses: Vec<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub sample_count: usize,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}

/// A validated configuration with parsed field elements.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub vars: Vec<String>,
    pub algebra: AlgebraSpec,
    pub orderings: Vec<OrderingSpec>,
    pub analyses: Vec<String>,
    pub seed: u64,
    pub sample_count: usize,
}

fn config_err(location: impl Into<String>, msg: impl ToString) -> Error {
    Error::Config { location: location.into(), msg: msg.to_string() }
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    serde_json::from_str(text).map_err(|e| config_err(format!("line {} column {}", e.line(), e.column()), e))
}

fn element(s: &str, vars: &[String], location: String) -> Result<RatFunc> {
    parse_element(s, vars).map_err(|e| config_err(location, e))
}

impl ScenarioConfig {
    pub fn validate(&self, name: &str) -> Result<Scenario> {
        let r = self.vars.len();
        for (k, v) in self.vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || self.vars[..k].contains(v) {
                return Err(config_err(format!("vars[{k}]"), format!("invalid or repeated variable name '{v}'")));
            }
        }
        let algebra = match &self.algebra {
            AlgebraConfig::Matrix { e_kind, form } => {
                let e = form
                    .iter()
                    .enumerate()
                    .map(|(i, s)| element(s, &self.vars, format!("algebra.form[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let espec = match e_kind {
                    EKind::Base => ESpec::Base,
                    EKind::Complex => ESpec::Complex,
                    EKind::Quat => ESpec::hamilton(),
                };
                AlgebraSpec::Matrix(HermContext::new(espec, e).map_err(|e| config_err("algebra.form", e))?)
            }
            AlgebraConfig::QuatDiv { a, b, involution } => {
                let a = element(a, &self.vars, "algebra.a".into())?;
                let b = element(b, &self.vars, "algebra.b".into())?;
                ESpec::quat(a.clone(), b.clone()).map_err(|e| config_err("algebra", e))?;
                let inv = match involution {
                    Involution::Gamma => QuatInvolution::Gamma,
                    Involution::IntIGamma => QuatInvolution::IntIGamma,
                };
                AlgebraSpec::QuatDiv { a, b, inv }
            }
        };
        let orderings = match &self.ordering {
            OrderingConfig::Keyword(k) if k == "ALL" => enumerate_orderings(r),
            OrderingConfig::Keyword(k) => return Err(config_err("ordering", format!("expected a sign vector or \"ALL\", got \"{k}\""))),
            OrderingConfig::Signs(s) => {
                if s.len() != r {
                    return Err(config_err("ordering", format!("sign vector has length {}, expected {r}", s.len())));
                }
                if let Some(k) = s.iter().position(|&x| x != 1 && x != -1) {
                    return Err(config_err(format!("ordering[{k}]"), "signs must be 1 or -1"));
                }
                vec![OrderingSpec::new(s.clone())]
            }
        };
        for (k, a) in self.analyses.iter().enumerate() {
            if !ANALYSES.contains(&a.as_str()) {
                return Err(config_err(format!("analyses[{k}]"), format!("unknown analysis '{a}'")));
            }
        }
        if self.sample_count == 0 {
            return Err(config_err("sampleCount", "must be positive"));
        }
        Ok(Scenario {
            name: name.to_string(),
            vars: self.vars.clone(),
            algebra,
            orderings,
            analyses: self.analyses.clone(),
            seed: self.seed,
            sample_count: self.sample_count,
        })
    }
}

pub fn load(text: &str, name: &str) -> Result<Scenario> {
    parse_config(text)?.validate(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrix_config() {
        let s = load(
            r#"{"vars":["x","y"],"algebra":{"kind":"MATRIX","eKind":"QUAT","form":["1","x*y"]},
               "ordering":"ALL","analyses":["gauge","lift"],"seed":3,"sampleCount":5}"#,
            "t",
        )
        .unwrap();
        assert_eq!(s.orderings.len(), 4);
        assert_eq!(s.sample_count, 5);
        assert!(matches!(s.algebra, AlgebraSpec::Matrix(_)));
    }

    #[test]
    fn parses_quaternion_config_with_defaults() {
        let s = load(
            r#"{"vars":["x","y"],"algebra":{"kind":"QUATDIV","a":"x","b":"y","involution":"INT_I_GAMMA"},"ordering":[-1,1]}"#,
            "t",
        )
        .unwrap();
        assert_eq!(s.orderings, vec![OrderingSpec::new(vec![-1, 1])]);
        assert!(s.analyses.is_empty());
        assert_eq!((s.seed, s.sample_count), (DEFAULT_SEED, DEFAULT_SAMPLES));
    }

    fn location(text: &str) -> String {
        match load(text, "t") {
            Err(Error::Config { location, .. }) => location,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_locations() {
        let m = |form: &str, ordering: &str, analyses: &str| {
            format!(
                r#"{{"vars":["x","y"],"algebra":{{"kind":"MATRIX","eKind":"BASE","form":{form}}},"ordering":{ordering},"analyses":{analyses}}}"#
            )
        };
        assert_eq!(location(&m(r#"["1","x+"]"#, "\"ALL\"", "[]")), "algebra.form[1]");
        assert_eq!(location(&m(r#"["1","z"]"#, "\"ALL\"", "[]")), "algebra.form[1]");
        assert_eq!(location(&m(r#"["1","0"]"#, "\"ALL\"", "[]")), "algebra.form");
        assert_eq!(location(&m(r#"["1"]"#, "[1]", "[]")), "ordering");
        assert_eq!(location(&m(r#"["1"]"#, "[1,2]", "[]")), "ordering[1]");
        assert_eq!(location(&m(r#"["1"]"#, "\"SOME\"", "[]")), "ordering");
        assert_eq!(location(&m(r#"["1"]"#, "\"ALL\"", r#"["lift","plot"]"#)), "analyses[1]");
        assert!(location("{\"vars\": [}").starts_with("line 1 column"));
        assert!(location(r#"{"vars":[],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1"]},"ordering":[],"extra":1}"#)
            .starts_with("line 1"));
    }
}
