//! The registry of re-checkable claims.
//!
//! Each claim is either a prime-set claim (a word family, a parameter set
//! and a target group, bundled in `data/claims.toml`) or a coded check
//! comparing computed values against transcribed ones. Claims are
//! independent and [`run_all`] executes them in parallel.
//!
//! ```
//! use sympgen::claims::{run_claim, Status};
//! let r = run_claim("subfield7").unwrap();
//! assert_eq!(r.status, Status::Pass);
//! ```

pub mod coded;
pub mod lemmas;
pub mod primeset;
pub mod quadform;
pub mod word;

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::construct::ConstructError;
use crate::expr::ExprError;
use crate::gf::GfError;
use crate::grouporder::GroupError;
use crate::matrix::MatError;

pub use lemmas::search_parameter;
pub use quadform::{quadratic_form_obstruction, FormResult};

#[derive(Debug, Error)]
pub enum ClaimError {
    #[error("unknown claim {0}")]
    UnknownClaim(String),
    #[error("unknown lemma {0}")]
    UnknownLemma(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("quadratic forms need even characteristic, got q = {0}")]
    OddCharacteristic(u64),
    #[error("bad claim data: {0}")]
    Data(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Word(#[from] word::WordError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Field(#[from] GfError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Passed, and settled a reading the source leaves open.
    OpenQuestionResolved(String),
}

impl Status {
    pub fn is_fail(&self) -> bool {
        *self == Status::Fail
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimResult {
    pub id: String,
    pub label: String,
    pub status: Status,
    pub expected: BTreeMap<String, String>,
    pub computed: BTreeMap<String, String>,
    /// Only filled in when timings are requested, so reports stay
    /// byte-stable by default.
    pub wall_time_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// The named comparisons a claim performs.
#[derive(Clone, Debug, Default)]
pub struct Checks {
    items: Vec<Check>,
    open: Option<String>,
}

impl Checks {
    pub fn new() -> Checks {
        Checks::default()
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
    ) {
        let mut name = name.into();
        if self.items.iter().any(|c| c.name == name) {
            let mut i = 2;
            while self.items.iter().any(|c| c.name == format!("{name} #{i}")) {
                i += 1;
            }
            name = format!("{name} #{i}");
        }
        self.items.push(Check {
            name,
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        });
    }

    /// Equality of two displayable values.
    pub fn eq<T: Display + PartialEq>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        computed: T,
    ) {
        let pass = expected == computed;
        self.push(name, expected, computed, pass);
    }

    /// Equality of two values shown with `Debug`.
    pub fn eq_dbg<T: std::fmt::Debug + PartialEq>(
        &mut self,
        name: impl Into<String>,
        expected: T,
        computed: T,
    ) {
        let pass = expected == computed;
        self.push(name, format!("{expected:?}"), format!("{computed:?}"), pass);
    }

    pub fn truth(&mut self, name: impl Into<String>, holds: bool) {
        self.push(name, true, holds, holds);
    }

    /// Record the outcome of a fallible step; an error becomes a failed check.
    pub fn attempt<T>(&mut self, name: impl Into<String>, r: Result<T, ClaimError>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.push(name, "completes", format!("error: {e}"), false);
                None
            }
        }
    }

    pub fn resolve_open(&mut self, detail: impl Into<String>) {
        self.open = Some(detail.into());
    }

    pub fn items(&self) -> &[Check] {
        &self.items
    }

    pub fn all_pass(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|c| c.pass)
    }

    fn status(&self) -> Status {
        if !self.all_pass() {
            Status::Fail
        } else if let Some(d) = &self.open {
            Status::OpenQuestionResolved(d.clone())
        } else {
            Status::Pass
        }
    }
}

pub(crate) enum Runner {
    Data(Box<primeset::PrimeSetClaim>),
    Coded(coded::CodedFn),
}

pub struct ClaimDef {
    pub id: String,
    pub label: String,
    runner: Runner,
}

impl ClaimDef {
    fn run(&self) -> Result<Checks, ClaimError> {
        match &self.runner {
            Runner::Data(c) => c.run(),
            Runner::Coded(f) => f(),
        }
    }
}

fn registry() -> &'static [ClaimDef] {
    static R: OnceLock<Vec<ClaimDef>> = OnceLock::new();
    R.get_or_init(|| {
        let mut v: Vec<ClaimDef> = primeset::load()
            .expect("bundled claim table")
            .into_iter()
            .map(|c| ClaimDef {
                id: c.id.clone(),
                label: c.label.clone(),
                runner: Runner::Data(Box::new(c)),
            })
            .collect();
        for (id, label, f) in coded::all().expect("bundled coded claims") {
            v.push(ClaimDef {
                id,
                label,
                runner: Runner::Coded(f),
            });
        }
        v.sort_by(|a, b| a.id.cmp(&b.id));
        v
    })
}

/// All registered claim ids, sorted.
pub fn claim_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id.as_str()).collect()
}

pub fn claim(id: &str) -> Result<&'static ClaimDef, ClaimError> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| ClaimError::UnknownClaim(id.into()))
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Record wall times in the results.
    pub timings: bool,
}

fn execute(def: &ClaimDef, timings: bool) -> ClaimResult {
    let start = Instant::now();
    let mut checks = match def.run() {
        Ok(c) => c,
        Err(e) => {
            let mut c = Checks::new();
            c.push("run", "completes", format!("error: {e}"), false);
            c
        }
    };
    if checks.items.is_empty() {
        checks.push("run", "at least one check", "none", false);
    }
    let status = checks.status();
    ClaimResult {
        id: def.id.clone(),
        label: def.label.clone(),
        status,
        expected: checks
            .items
            .iter()
            .map(|c| (c.name.clone(), c.expected.clone()))
            .collect(),
        computed: checks
            .items
            .iter()
            .map(|c| (c.name.clone(), c.computed.clone()))
            .collect(),
        wall_time_ms: timings.then(|| start.elapsed().as_millis() as u64),
    }
}

pub fn run_claim(id: &str) -> Result<ClaimResult, ClaimError> {
    Ok(execute(claim(id)?, false))
}

pub fn run_claim_with(id: &str, opts: &RunOptions) -> Result<ClaimResult, ClaimError> {
    Ok(execute(claim(id)?, opts.timings))
}

/// Ids matching a glob pattern.
pub fn matching_ids(filter: &str) -> Result<Vec<&'static str>, ClaimError> {
    let pat = glob::Pattern::new(filter)
        .map_err(|e| ClaimError::Data(format!("bad filter {filter:?}: {e}")))?;
    Ok(claim_ids()
        .into_iter()
        .filter(|id| pat.matches(id))
        .collect())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub open_question_resolved: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub summary: Summary,
    pub claims: Vec<ClaimResult>,
}

impl Report {
    pub fn any_fail(&self) -> bool {
        self.summary.fail > 0
    }

    /// The per-claim results as a JSON array.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.claims).expect("report serializes")
    }
}

/// Run every claim whose id matches `filter`; results are sorted by id.
pub fn run_all(filter: &str, opts: &RunOptions) -> Result<Report, ClaimError> {
    let ids = matching_ids(filter)?;
    let defs: Vec<&ClaimDef> = ids.iter().map(|id| claim(id)).collect::<Result<_, _>>()?;
    let go = || -> Vec<ClaimResult> { defs.par_iter().map(|d| execute(d, opts.timings)).collect() };
    let mut claims = match opts.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| ClaimError::Data(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    };
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    let mut summary = Summary {
        total: claims.len(),
        ..Summary::default()
    };
    for c in &claims {
        match c.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::OpenQuestionResolved(_) => summary.open_question_resolved += 1,
        }
    }
    Ok(Report { summary, claims })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids = claim_ids();
        let mut d = ids.clone();
        d.dedup();
        assert_eq!(ids, d);
    }

    #[test]
    fn unknown_claim() {
        assert!(matches!(
            run_claim("no-such-claim"),
            Err(ClaimError::UnknownClaim(_))
        ));
    }

    #[test]
    fn empty_filter_gives_empty_summary() {
        let r = run_all("nothing-matches-*", &RunOptions::default()).unwrap();
        assert_eq!(r.summary, Summary::default());
        assert_eq!(r.to_json(), "[]");
    }

    #[test]
    fn duplicate_check_names_are_kept_apart() {
        let mut c = Checks::new();
        c.eq("x", 1, 1);
        c.eq("x", 2, 3);
        assert_eq!(c.items()[1].name, "x #2");
        assert_eq!(c.status(), Status::Fail);
    }

    #[test]
    fn errors_become_failures_with_both_sides() {
        let mut c = Checks::new();
        let v: Option<()> = c.attempt("step", Err(ClaimError::Data("boom".into())));
        assert!(v.is_none());
        assert_eq!(c.items()[0].expected, "completes");
        assert!(c.items()[0].computed.contains("boom"));
    }
}
