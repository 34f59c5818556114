//! Check reports: one JSON record per verified claim, shared by the check
//! suites, the integration tests, and the command-line harness.

use serde::Serialize;
use serde_json::{json, Value};

/// Version tag for the report file format.
pub const SCHEMA: &str = "qgrass-report/1";

/// Outcome of one named check at one parameter point.  `expected` and
/// `got` are JSON values so that dimensions, booleans, and value tables
/// all fit the same shape; `witness` carries the exact scalars or index
/// tuples behind a nonzero claim, so a report can be audited without
/// rerunning.  Timing lives in its own field to keep the rest of the
/// record byte-stable across runs.
#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub check: String,
    pub params: Value,
    pub expected: Value,
    pub got: Value,
    pub pass: bool,
    pub millis: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    /// Passes exactly when `expected` and `got` agree as JSON values.
    pub fn compare(
        check: impl Into<String>,
        params: Value,
        expected: Value,
        got: Value,
        millis: u128,
    ) -> CheckReport {
        let pass = expected == got;
        CheckReport {
            check: check.into(),
            params,
            expected,
            got,
            pass,
            millis,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Value) -> CheckReport {
        self.witness = Some(witness);
        self
    }
}

/// One grid point worth of checks: the unit of work the harness
/// parallelizes over.
#[derive(Serialize, Debug)]
pub struct JobReport {
    pub params: Value,
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

impl JobReport {
    pub fn new(params: Value, checks: Vec<CheckReport>) -> JobReport {
        let pass = checks.iter().all(|c| c.pass);
        JobReport {
            params,
            pass,
            checks,
        }
    }
}

/// Whole-run envelope written by the harness, one sub-report per grid
/// point.
#[derive(Serialize, Debug)]
pub struct ReportFile {
    pub schema: &'static str,
    pub command: String,
    pub seed: u64,
    pub pass: bool,
    pub jobs: Vec<JobReport>,
}

impl ReportFile {
    pub fn new(command: impl Into<String>, seed: u64, jobs: Vec<JobReport>) -> ReportFile {
        let pass = jobs.iter().all(|j| j.pass);
        ReportFile {
            schema: SCHEMA,
            command: command.into(),
            seed,
            pass,
            jobs,
        }
    }
}

/// Runs a closure and reports its result with wall-clock timing attached.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let start = std::time::Instant::now();
    let out = f();
    (out, start.elapsed().as_millis())
}

/// Shorthand for the ubiquitous (n, r) parameter object.
pub fn params_nr(n: u8, r: u8) -> Value {
    json!({ "n": n, "r": r })
}

/// (n, r, k) parameter object.
pub fn params_nrk(n: u8, r: u8, k: i64) -> Value {
    json!({ "n": n, "r": r, "k": k })
}
