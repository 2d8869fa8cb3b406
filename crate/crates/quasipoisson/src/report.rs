//! Check reports: every verification command produces a list of named
//! checks, each symbolic (exact polynomial identity) or sampled (exact
//! rational equality at sample points), with a printable witness on failure.
//!
//! JSON serialization deliberately omits timing so that identical flags and
//! seed produce byte-identical reports.

use serde::Serialize;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub mode: Mode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

impl Check {
    pub fn new(name: &str, mode: Mode, status: Status, witness: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            mode,
            status,
            witness,
            elapsed_ms: 0,
        }
    }

    pub fn pass(name: &str, mode: Mode) -> Self {
        Check::new(name, mode, Status::Pass, None)
    }

    pub fn fail(name: &str, mode: Mode, witness: String) -> Self {
        Check::new(name, mode, Status::Fail, Some(witness))
    }

    pub fn inconclusive(name: &str, mode: Mode, witness: String) -> Self {
        Check::new(name, mode, Status::Inconclusive, Some(witness))
    }

    pub fn from_bool(name: &str, mode: Mode, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Check::pass(name, mode)
        } else {
            Check::fail(name, mode, witness())
        }
    }
}

/// Report for one command run; checks appear in registration order.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub command: String,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl CheckReport {
    pub fn new(command: &str) -> Self {
        CheckReport {
            command: command.to_string(),
            checks: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn push(&mut self, check: Check) {
        match (self.status, check.status) {
            (_, Status::Fail) => self.status = Status::Fail,
            (Status::Pass, Status::Inconclusive) => self.status = Status::Inconclusive,
            _ => {}
        }
        self.checks.push(check);
    }

    /// Run a closure, timing it, and record the produced check.
    pub fn run(&mut self, f: impl FnOnce() -> Check) {
        let t0 = Instant::now();
        let mut c = f();
        c.elapsed_ms = t0.elapsed().as_millis();
        self.push(c);
    }

    pub fn extend(&mut self, checks: Vec<Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn all_passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Process exit code: 0 all pass, 1 any failed check.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.command)?;
        for c in &self.checks {
            let mode = match c.mode {
                Mode::Symbolic => "symbolic",
                Mode::Sampled => "sampled ",
            };
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Inconclusive => "INCONCLUSIVE",
            };
            write!(f, "[{}] {:<56} {}", mode, c.name, status)?;
            if c.elapsed_ms > 0 {
                write!(f, "  ({} ms)", c.elapsed_ms)?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                writeln!(f, "           witness: {}", w)?;
            }
        }
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        writeln!(f, "overall: {}", status)
    }
}
