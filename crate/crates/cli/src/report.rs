//! `report.v1`: the JSON document every checking subcommand writes.

use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Display;

pub const SCHEMA: &str = "report.v1";

#[derive(Serialize, Debug)]
pub struct Check {
    pub name: String,
    pub input: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, input: impl Into<String>, equal: bool) -> Self {
        Check { name: name.into(), input: input.into(), equal, detail: None }
    }

    pub fn detail(mut self, d: Option<String>) -> Self {
        self.detail = d;
        self
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub verdict: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            config: BTreeMap::new(),
            verdict: true,
            checks: Vec::new(),
            values: BTreeMap::new(),
        }
    }

    pub fn config(&mut self, k: &str, v: impl Display) {
        self.config.insert(k.into(), v.to_string());
    }

    pub fn value(&mut self, k: &str, v: String) {
        self.values.insert(k.into(), v);
    }

    pub fn check(&mut self, c: Check) {
        self.verdict &= c.equal;
        self.checks.push(c);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
