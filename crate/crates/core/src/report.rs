//! JSON-serializable result records.

use serde::{Deserialize, Serialize};

use crate::solvers::{BranchDecomposition, RankWidth, WidthOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameter {
    Cwd,
    Lcwd,
    Rwd,
}

impl std::fmt::Display for Parameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Parameter::Cwd => "cwd",
            Parameter::Lcwd => "lcwd",
            Parameter::Rwd => "rwd",
        })
    }
}

impl std::str::FromStr for Parameter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cwd" => Ok(Parameter::Cwd),
            "lcwd" => Ok(Parameter::Lcwd),
            "rwd" => Ok(Parameter::Rwd),
            other => Err(format!("unknown parameter `{other}` (expected cwd, lcwd or rwd)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certificate {
    /// Clique-width expression in s-expression form.
    Term(String),
    /// Branch decomposition as a parent array.
    Decomposition(BranchDecomposition),
}

/// Result of one width computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthRecord {
    pub graph_id: String,
    pub parameter: Parameter,
    pub value: usize,
    pub certificate: Certificate,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    pub states_explored: usize,
}

impl WidthRecord {
    pub fn from_term(graph_id: &str, parameter: Parameter, out: &WidthOutcome) -> WidthRecord {
        WidthRecord {
            graph_id: graph_id.to_string(),
            parameter,
            value: out.value,
            certificate: Certificate::Term(out.witness.to_string()),
            elapsed_ms: None,
            states_explored: out.states_explored,
        }
    }

    pub fn from_rank_width(graph_id: &str, out: &RankWidth) -> WidthRecord {
        WidthRecord {
            graph_id: graph_id.to_string(),
            parameter: Parameter::Rwd,
            value: out.value,
            certificate: Certificate::Decomposition(out.certificate.clone()),
            elapsed_ms: None,
            states_explored: out.states_explored,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageStat {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
}

/// A width fact established along a pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthFact {
    pub graph: String,
    /// For example `cwd<=`, `lcwd<=`, `rwd`, `rwd>=`.
    pub relation: String,
    pub value: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub pipeline: String,
    pub size: usize,
    pub stages: Vec<StageStat>,
    /// Name-exact equality of the final graph with the expected one, and
    /// every intermediate audit passing.
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failing_stage: Option<String>,
    pub widths: Vec<WidthFact>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

/// Outcome of an exhaustive property suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub graphs_checked: usize,
    pub steps_checked: usize,
    pub violations: usize,
    /// First few violations, human readable.
    pub examples: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}
