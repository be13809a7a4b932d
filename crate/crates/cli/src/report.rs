//! Reports: what ran, on which inputs, what was computed and what was decided.

use std::fmt::Write as _;

use cathom::zlinalg::FgAbGroup;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Uncertified,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Uncertified => "UNCERTIFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest { path: path.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    pub rank: usize,
    pub torsion: Vec<String>,
    pub display: String,
}

impl From<&FgAbGroup> for Group {
    fn from(g: &FgAbGroup) -> Self {
        Group { rank: g.rank(), torsion: g.torsion().iter().map(|t| t.to_string()).collect(), display: g.to_string() }
    }
}

/// Homology by degree. Degrees `0..certified_below` are exact; nothing is
/// claimed above.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub label: String,
    pub certified_below: usize,
    pub groups: Vec<Group>,
}

impl Table {
    pub fn new(label: impl Into<String>, groups: &[FgAbGroup]) -> Self {
        Table { label: label.into(), certified_below: groups.len(), groups: groups.iter().map(Group::from).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    /// Degrees the verdict covers, when it is about homology.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_below: Option<usize>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub facts: Vec<Fact>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn fact(&mut self, key: &str, value: impl ToString) {
        self.facts.push(Fact { key: key.to_string(), value: value.to_string() });
    }

    pub fn verdict(
        &mut self,
        check: impl Into<String>,
        status: Status,
        certified_below: Option<usize>,
        detail: impl Into<String>,
    ) {
        self.verdicts.push(Verdict { check: check.into(), status, certified_below, detail: detail.into() });
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.iter().any(|v| v.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "$ cathom {}", self.command.join(" ")).unwrap();
        for i in &self.inputs {
            writeln!(out, "input {} sha256:{}", i.path, i.sha256).unwrap();
        }
        for f in &self.facts {
            writeln!(out, "{}: {}", f.key, f.value).unwrap();
        }
        for t in &self.tables {
            writeln!(out, "{} (certified below degree {})", t.label, t.certified_below).unwrap();
            for (n, g) in t.groups.iter().enumerate() {
                writeln!(out, "  H_{n} = {}", g.display).unwrap();
            }
        }
        for v in &self.verdicts {
            let range = v.certified_below.map(|n| format!(" [degrees < {n}]")).unwrap_or_default();
            let detail = if v.detail.is_empty() { String::new() } else { format!(": {}", v.detail) };
            writeln!(out, "{} {}{range}{detail}", v.status.label(), v.check).unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed {ms} ms").unwrap();
        }
        out
    }
}
