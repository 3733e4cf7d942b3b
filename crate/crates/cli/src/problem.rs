//! Problem descriptions: command-line flags layered over an optional JSON
//! problem file, layered over defaults.

use std::path::Path;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use splitgenus::exactnum::{rational, QuadValue, Rational};
use splitgenus::lpsolve::DEFAULT_D_MAX;
use splitgenus::weil::{elliptic_classes, ClassSpec, WeilClass};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Fixed(usize),
    Auto,
}

/// JSON form: an integer, or the string `"auto"`.
impl Serialize for Degree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Degree::Fixed(d) => s.serialize_u64(*d as u64),
            Degree::Auto => s.serialize_str("auto"),
        }
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            N(usize),
            S(String),
        }
        match Repr::deserialize(d)? {
            Repr::N(0) => Err(serde::de::Error::custom("D must be positive")),
            Repr::N(n) => Ok(Degree::Fixed(n)),
            Repr::S(s) if s == "auto" => Ok(Degree::Auto),
            Repr::S(s) => Err(serde::de::Error::custom(format!("expected \"auto\" or an integer, got {s:?}"))),
        }
    }
}

impl FromStr for Degree {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Degree::Auto);
        }
        match s.parse::<usize>() {
            Ok(d) if d >= 1 => Ok(Degree::Fixed(d)),
            _ => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    B1,
    B2,
    Lemma,
    Lp,
    Ilp,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
}

/// The JSON problem file. Every field is optional; flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub format: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassSpec>>,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub degree: Option<Degree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputFormat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissibility_check: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_coeffs: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<String>>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct ProblemArgs {
    /// Field size, a prime power
    #[arg(long)]
    pub q: Option<u64>,
    /// Comma-separated traces of elliptic classes, e.g. -2,-1,0,1,2
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "classes")]
    pub traces: Option<Vec<i64>>,
    /// JSON file holding an array of classes
    #[arg(long, value_name = "FILE")]
    pub classes: Option<String>,
    /// JSON problem file; flags override its fields
    #[arg(long, value_name = "FILE")]
    pub problem: Option<String>,
    /// Number of place-count inequalities, or "auto"
    #[arg(long)]
    pub degree: Option<Degree>,
    /// Largest degree tried by "auto"
    #[arg(long)]
    pub d_max: Option<usize>,
    /// Accept traces that violate the elliptic classification
    #[arg(long)]
    pub no_admissibility_check: bool,
    /// Emit JSON
    #[arg(long)]
    pub json: bool,
    /// Render values as 6 significant digit decimals
    #[arg(long)]
    pub approx: bool,
}

/// A fully resolved problem.
#[derive(Clone, Debug)]
pub struct Problem {
    pub q: u64,
    pub classes: Vec<WeilClass>,
    pub degree: Degree,
    pub d_max: usize,
    pub method: Option<MethodArg>,
    pub genus: Option<u64>,
    pub json: bool,
    pub approx: bool,
    pub t_coeffs: Option<Vec<QuadValue>>,
    pub angles: Option<Vec<Rational>>,
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(Path::new(path)).map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

/// `a` or `a:b` for `a + b sqrt q`, with rational `a`, `b`.
pub fn parse_quad(q: u64, s: &str) -> Result<QuadValue, CliError> {
    let (a, b) = match s.split_once(':') {
        Some((a, b)) => (a, b),
        None => (s, "0"),
    };
    let a = rational::parse(a.trim()).map_err(|e| CliError::Usage(e.to_string()))?;
    let b = rational::parse(b.trim()).map_err(|e| CliError::Usage(e.to_string()))?;
    QuadValue::new(q, a, b).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn parse_rationals(items: &[String]) -> Result<Vec<Rational>, CliError> {
    items.iter().map(|s| rational::parse(s.trim()).map_err(|e| CliError::Usage(e.to_string()))).collect()
}

pub struct Overrides {
    pub method: Option<MethodArg>,
    pub genus: Option<u64>,
    pub t_coeffs: Option<Vec<String>>,
    pub angles: Option<Vec<String>>,
}

impl ProblemArgs {
    pub fn resolve(&self, extra: Overrides) -> Result<Problem, CliError> {
        let file: ProblemFile = match &self.problem {
            Some(p) => read_json(p)?,
            None => ProblemFile { format: 1, ..Default::default() },
        };
        if file.format != 1 {
            return Err(CliError::Usage(format!("unsupported problem format {}", file.format)));
        }
        let enforce = !self.no_admissibility_check && file.admissibility_check.unwrap_or(true);

        let flag_classes: Option<Vec<ClassSpec>> = match &self.classes {
            Some(p) => Some(read_json(p)?),
            None => None,
        };
        // Flags win over the file; a trace list and a class list from the
        // same layer are mutually exclusive.
        let source = if self.traces.is_some() || flag_classes.is_some() {
            (self.traces.clone(), flag_classes)
        } else {
            if file.traces.is_some() && file.classes.is_some() {
                return Err(CliError::Usage("problem file gives both traces and classes".into()));
            }
            (file.traces.clone(), file.classes.clone())
        };

        let class_q = source.1.as_ref().and_then(|cs| {
            cs.first().map(|c| match c {
                ClassSpec::Elliptic { q, .. } | ClassSpec::Weil { q, .. } => *q,
            })
        });
        let q = self.q.or(file.q).or(class_q).ok_or_else(|| CliError::Usage("field size missing: pass --q".into()))?;
        let classes = match source {
            (Some(traces), _) => elliptic_classes(q, &traces, enforce).map_err(CliError::input)?,
            (None, Some(specs)) => {
                let built: Vec<WeilClass> =
                    specs.iter().map(|s| s.build(enforce)).collect::<Result<_, _>>().map_err(CliError::input)?;
                if let Some(bad) = built.iter().find(|c| c.q() != q) {
                    return Err(CliError::Usage(format!(
                        "class {} is over F_{}, expected F_{q}",
                        bad.label(),
                        bad.q()
                    )));
                }
                built
            }
            (None, None) => Vec::new(),
        };

        let t_coeffs = match extra.t_coeffs.or(file.t_coeffs) {
            Some(items) => Some(items.iter().map(|s| parse_quad(q, s)).collect::<Result<_, _>>()?),
            None => None,
        };
        let angles = match extra.angles.or(file.angles) {
            Some(items) => Some(parse_rationals(&items)?),
            None => None,
        };
        let json = self.json || file.output == Some(OutputFormat::Json);
        Ok(Problem {
            q,
            classes,
            degree: self.degree.or(file.degree).unwrap_or(Degree::Auto),
            d_max: self.d_max.or(file.d_max).unwrap_or(DEFAULT_D_MAX),
            method: extra.method.or(file.method),
            genus: extra.genus.or(file.genus),
            json,
            approx: self.approx,
            t_coeffs,
            angles,
        })
    }
}
