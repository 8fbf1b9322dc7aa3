//! The machine-readable report written by every command.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use torsor_core::fgab::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// The first identity that failed, with the elements involved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub identity: String,
    pub at: Value,
}

impl Failure {
    pub fn new(identity: impl Into<String>, at: Value) -> Self {
        Failure {
            identity: identity.into(),
            at,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub args: Map<String, Value>,
    pub seed: Option<u64>,
    pub version: String,
    pub status: Status,
    pub results: Value,
    pub failure: Option<Failure>,
}

impl Report {
    pub fn new(command: &str, args: Map<String, Value>) -> Self {
        Report {
            command: command.to_string(),
            args,
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            status: Status::Pass,
            results: Value::Null,
            failure: None,
        }
    }

    pub fn fail(&mut self, failure: Failure) {
        self.status = Status::Fail;
        self.failure.get_or_insert(failure);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Integers as decimal strings, so arbitrary sizes survive the round trip.
pub fn int_json(x: &Int) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn vec_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn vecs_json(vs: &[Vec<Int>]) -> Value {
    Value::Array(vs.iter().map(|v| vec_json(v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use torsor_core::fgab::int;

    #[test]
    fn reports_round_trip() {
        let mut args = Map::new();
        args.insert("d".into(), json!(3));
        let mut r = Report::new("parity", args);
        r.results = json!({"factors": vec_json(&[int(2), int(0)]), "big": int_json(&(int(1) << 80))});
        r.fail(Failure::new("P = 0", json!({"sigma": 1})));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.status, Status::Fail);
    }
}
