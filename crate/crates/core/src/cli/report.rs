//! Check results and their deterministic JSON / text rendering.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::finalg::{Matrix, Vector};
use crate::scalars::{Scalar, SpecPoints};

pub const TOOL: &str = "hopf-forge";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Recorded for the reader, never affects the outcome.
    Info,
    /// Two independent computations disagree: a bug, not a property of the input.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub mandatory: bool,
    pub message: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Check {
    pub fn pass(name: &str, message: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, mandatory: true, message: message.into(), data: Value::Null }
    }

    pub fn fail(name: &str, message: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, mandatory: true, message: message.into(), data: Value::Null }
    }

    pub fn info(name: &str, message: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Info, mandatory: false, message: message.into(), data: Value::Null }
    }

    pub fn inconsistent(name: &str, message: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Inconsistent,
            mandatory: true,
            message: message.into(),
            data: Value::Null,
        }
    }

    pub fn verdict(name: &str, ok: bool, message: impl Into<String>) -> Self {
        if ok {
            Check::pass(name, message)
        } else {
            Check::fail(name, message)
        }
    }

    pub fn from_result<E: std::fmt::Display>(name: &str, r: &Result<(), E>, ok_message: &str) -> Self {
        match r {
            Ok(()) => Check::pass(name, ok_message),
            Err(e) => Check::fail(name, e.to_string()),
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    /// A failure that is reported but does not change the exit code.
    pub fn advisory(mut self) -> Self {
        self.mandatory = false;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconsistent,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconsistent => "inconsistent",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconsistent => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: String,
    pub input_digest: String,
    pub spec_points: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub checks: Vec<Check>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(command: &str, input: &str, bytes: &[u8], points: &SpecPoints, degree: Option<usize>) -> Self {
        Report {
            tool: TOOL,
            version: VERSION,
            command: command.into(),
            input: input.into(),
            input_digest: hex::encode(Sha256::digest(bytes)),
            spec_points: points.to_string(),
            degree,
            checks: Vec::new(),
            outcome: Outcome::Pass,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
        self.outcome = self.compute_outcome();
    }

    fn compute_outcome(&self) -> Outcome {
        if self.checks.iter().any(|c| c.status == Status::Inconsistent) {
            Outcome::Inconsistent
        } else if self.checks.iter().any(|c| c.mandatory && c.status == Status::Fail) {
            Outcome::Fail
        } else {
            Outcome::Pass
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{TOOL} {VERSION} {} {}\n", self.command, self.input);
        out += &format!("input sha256 {}\nspec points {}\n", self.input_digest, self.spec_points);
        if let Some(d) = self.degree {
            out += &format!("degree {d}\n");
        }
        for c in &self.checks {
            let tag = match (c.status, c.mandatory) {
                (Status::Pass, _) => "PASS",
                (Status::Fail, true) => "FAIL",
                (Status::Fail, false) => "WARN",
                (Status::Info, _) => "INFO",
                (Status::Inconsistent, _) => "BUG ",
            };
            out += &format!("[{tag}] {}: {}\n", c.name, c.message);
        }
        out += &format!("outcome: {}\n", self.outcome.as_str());
        out
    }
}

pub fn lit(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(lit).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector(m.row(i))).collect())
}

pub fn vectors(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector(v)).collect())
}

/// A vector written as a linear combination of basis labels, e.g. `2*e0 + (-1)*g`.
pub fn combination(v: &[Scalar], labels: &[String]) -> String {
    let terms: Vec<String> = v
        .iter()
        .zip(labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| if c.is_one() { l.clone() } else { format!("({c})*{l}") })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

pub fn labelled(v: &[Scalar], labels: &[String]) -> Value {
    Value::Object(v.iter().zip(labels).map(|(c, l)| (l.clone(), lit(c))).collect())
}
