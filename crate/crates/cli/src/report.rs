use rstab_core::approx::SearchStats;
use rstab_core::Instance;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Solved,
    NoWitness,
    Infeasible,
    Error,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Solved => "solved",
            Outcome::NoWitness => "no-witness",
            Outcome::Infeasible => "infeasible",
            Outcome::Error => "error",
        }
    }
}

/// Summary of one solver run, printed as a single JSON line.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub rects: usize,
    pub lines: usize,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertical_guesses: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub horizontal_guesses: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sat_calls: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
}

impl RunReport {
    pub fn new(command: String, inst: &Instance) -> Self {
        RunReport {
            command,
            rects: inst.rects.len(),
            lines: inst.num_lines(),
            outcome: Outcome::Error,
            reason: None,
            k: None,
            size: None,
            wall_ms: None,
            splits: None,
            vertical_guesses: None,
            horizontal_guesses: None,
            sat_calls: None,
            nodes: None,
        }
    }

    pub fn set_stats(&mut self, s: &SearchStats) {
        self.splits = Some(s.splits);
        self.vertical_guesses = Some(s.vertical_guesses);
        self.horizontal_guesses = Some(s.horizontal_guesses);
        self.sat_calls = Some(s.sat_calls);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
