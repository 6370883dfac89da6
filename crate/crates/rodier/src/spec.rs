//! Problem files: the JSON input of `decompose`.
//!
//! ```json
//! {"schema": 1, "cartan": "D6", "levi": [0, 2, 3, 4],
//!  "inducing": {"omega": ["1/2", "0/1"], "poles": {"orbit0": "1/2"}},
//!  "assume_regular": true, "assume_generic": false}
//! ```
//!
//! `inducing` holds either `omega` and `poles`, or `S` (relative coroots)
//! with an optional `omega`. Vectors of `a_M*` are written in the basis
//! printed in every report: the fundamental weights dual to the coroots of
//! `Δ_M`, so a coordinate is the pairing with a relative simple coroot.
//! Rationals are `"p/q"` strings. Unknown fields are rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rodier_core::Rational;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A rational number serialized as a `"p/q"` string.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Q(pub Rational);

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i128 = n.parse().map_err(|_| format!("bad rational {s:?}: expected \"p/q\""))?;
        let d: i128 = d.parse().map_err(|_| format!("bad rational {s:?}: expected \"p/q\""))?;
        if d == 0 {
            return Err(format!("bad rational {s:?}: zero denominator"));
        }
        Ok(Q(Rational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

pub fn to_q(v: &[Rational]) -> Vec<Q> {
    v.iter().copied().map(Q).collect()
}

pub fn from_q(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Inducing {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Q>>,
    /// Pole per orbit, keyed `"orbit0"`, `"orbit1"`, ...
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poles: Option<BTreeMap<String, Q>>,
    #[serde(rename = "S", default, skip_serializing_if = "Option::is_none")]
    pub walls: Option<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub schema: u32,
    pub cartan: String,
    pub levi: Vec<usize>,
    pub inducing: Inducing,
    pub assume_regular: bool,
    #[serde(default)]
    pub assume_generic: bool,
}

/// Parsed form of the inducing data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InducingForm {
    Orbits {
        omega: Vec<Rational>,
        poles: BTreeMap<usize, Rational>,
    },
    Walls {
        omega: Option<Vec<Rational>>,
        coroots: Vec<Vec<Rational>>,
    },
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec: ProblemSpec =
            serde_json::from_str(text).map_err(|e| CliError::Spec(format!("invalid problem spec: {e}")))?;
        if spec.schema != SCHEMA_VERSION {
            return Err(CliError::Spec(format!(
                "unsupported schema {} (expected {SCHEMA_VERSION})",
                spec.schema
            )));
        }
        spec.inducing_form()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn inducing_form(&self) -> Result<InducingForm, CliError> {
        let omega = self.inducing.omega.as_ref().map(|v| from_q(v));
        match (&self.inducing.poles, &self.inducing.walls) {
            (Some(poles), None) => {
                let omega = omega.ok_or_else(|| CliError::Spec("inducing: \"poles\" requires \"omega\"".into()))?;
                let poles = poles
                    .iter()
                    .map(|(k, v)| {
                        let id = k
                            .strip_prefix("orbit")
                            .and_then(|n| n.parse::<usize>().ok())
                            .ok_or_else(|| CliError::Spec(format!("inducing: pole key {k:?} is not of the form \"orbitN\"")))?;
                        Ok((id, v.0))
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok(InducingForm::Orbits { omega, poles })
            }
            (None, Some(walls)) => Ok(InducingForm::Walls {
                omega,
                coroots: walls.iter().map(|c| from_q(c)).collect(),
            }),
            _ => Err(CliError::Spec(
                "inducing: give exactly one of \"poles\" (with \"omega\") or \"S\"".into(),
            )),
        }
    }
}
