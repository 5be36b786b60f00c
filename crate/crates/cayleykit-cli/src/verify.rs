//! The verify-all runner: every assertion the toolkit makes, over a corpus
//! directory, as deterministic JSON lines.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use cayleykit::bounds::{check_volume_bound, Verdict};
use cayleykit::cayley::{decompose, minimal_cayley_codim};
use cayleykit::ehrhart::{ehrhart_reciprocity_check, h_star};
use cayleykit::error::Error;
use cayleykit::gorenstein::{
    gorenstein_dual, involution_map, verify_gorenstein_cayley_bound, BoundStatus,
};
use cayleykit::io::{coord_to_value, read_polytope_file, PolytopeDocument};
use rayon::prelude::*;
use serde_json::{Map, Value};

const PASS: &str = "pass";
const FAIL: &str = "fail";
const INCONCLUSIVE: &str = "inconclusive";

/// Outcome of a verify-all run: report lines (JSON-lines, summary last) and
/// the process exit code.
pub struct VerifyOutcome {
    pub lines: Vec<String>,
    pub exit_code: i32,
}

struct RecordBuilder {
    fields: Map<String, Value>,
    verdicts: BTreeMap<String, &'static str>,
}

impl RecordBuilder {
    fn new(file_name: &str) -> RecordBuilder {
        let mut fields = Map::new();
        fields.insert("file".into(), Value::from(file_name));
        RecordBuilder {
            fields,
            verdicts: BTreeMap::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.fields.insert(key.into(), value);
    }

    fn verdict(&mut self, name: &str, v: &'static str) {
        self.verdicts.insert(name.to_string(), v);
    }

    fn verdict_bool(&mut self, name: &str, ok: bool) {
        self.verdict(name, if ok { PASS } else { FAIL });
    }

    fn finish(mut self) -> (Value, bool, bool) {
        let any_fail = self.verdicts.values().any(|v| *v == FAIL);
        let any_inconclusive = self.verdicts.values().any(|v| *v == INCONCLUSIVE);
        let verdicts: Map<String, Value> = self
            .verdicts
            .into_iter()
            .map(|(k, v)| (k, Value::from(v)))
            .collect();
        self.fields.insert("verdicts".into(), Value::from(verdicts));
        (Value::from(self.fields), any_fail, any_inconclusive)
    }
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => PASS,
        Verdict::Fail => FAIL,
        Verdict::Inconclusive => INCONCLUSIVE,
    }
}

fn status_str(s: BoundStatus) -> &'static str {
    match s {
        BoundStatus::Pass => PASS,
        BoundStatus::Fail => FAIL,
        BoundStatus::Inconclusive => INCONCLUSIVE,
    }
}

// Every check for one corpus member. Each assertion lands in the verdict
// map; computational errors become failing verdicts rather than aborting
// the run.
fn check_document(rec: &mut RecordBuilder, doc: &PolytopeDocument, oracle_budget: usize) {
    let p = &doc.polytope;
    if let Some(name) = &doc.name {
        rec.set("name", Value::from(name.clone()));
    }
    rec.set("n", Value::from(p.ambient_dim() as u64));
    rec.set("vertices", Value::from(p.n_vertices() as u64));

    let hs = match h_star(p) {
        Ok(hs) => hs,
        Err(e) => {
            rec.set("error", Value::from(format!("h*: {e}")));
            rec.verdict("h_star_computes", FAIL);
            return;
        }
    };
    rec.verdict("h_star_computes", PASS);
    rec.set(
        "h_star",
        Value::from(hs.coefficients().iter().map(coord_to_value).collect::<Vec<_>>()),
    );
    rec.set("d", Value::from(hs.degree() as u64));
    rec.set("k", coord_to_value(hs.leading()));
    rec.set("vol", coord_to_value(&hs.normalized_volume()));
    rec.set("gorenstein", Value::from(hs.is_palindromic()));

    // expect block: regression against the values stored at generation time
    let exp = &doc.expect;
    if let Some(want) = &exp.h_star {
        rec.verdict_bool("expect_h_star", want == hs.coefficients());
    }
    if let Some(want) = exp.degree {
        rec.verdict_bool("expect_degree", want == hs.degree());
    }
    if let Some(want) = &exp.normalized_volume {
        rec.verdict_bool("expect_volume", *want == hs.normalized_volume());
    }
    if let Some(want) = exp.gorenstein {
        rec.verdict_bool("expect_gorenstein", want == hs.is_palindromic());
    }

    match ehrhart_reciprocity_check(p) {
        Ok(ok) => rec.verdict_bool("reciprocity", ok),
        Err(e) => {
            rec.set("reciprocity_error", Value::from(e.to_string()));
            rec.verdict("reciprocity", FAIL);
        }
    }

    // the constructive decomposition, with all hard stage bounds enforced
    let dec = match decompose(p) {
        Ok(dec) => dec,
        Err(e) => {
            rec.set("decompose_error", Value::from(e.to_string()));
            rec.verdict("decompose_verified", FAIL);
            return;
        }
    };
    rec.verdict("decompose_verified", PASS);
    rec.set("q_pipeline", Value::from(dec.q() as u64));
    rec.verdict_bool("q_le_n", dec.q() <= p.affine_dim());
    rec.verdict_bool("degree_le_q", hs.degree() <= dec.q());

    let f3_held = dec
        .bounds()
        .iter()
        .find(|c| c.name == "dim F3 <= 4d-2+(z^2+11z)/2")
        .is_none_or(|c| c.held);
    let q_bound_check = dec
        .bounds()
        .iter()
        .find(|c| c.name == "q <= (d^2+19d-4)/2");
    rec.verdict(
        "q_le_cayley_bound",
        match q_bound_check {
            _ if !f3_held => INCONCLUSIVE,
            Some(c) if c.held => PASS,
            Some(_) => FAIL,
            None => PASS,
        },
    );

    // the exhaustive minimum, when the vertex budget allows it
    match minimal_cayley_codim(p, Some(oracle_budget)) {
        Ok((q_star, _)) => {
            rec.set("q_oracle", Value::from(q_star as u64));
            rec.verdict_bool("oracle_le_pipeline", q_star <= dec.q());
            rec.verdict_bool("degree_le_q_star", hs.degree() <= q_star);
        }
        Err(Error::BudgetExceeded { .. }) => {
            rec.verdict("oracle_le_pipeline", INCONCLUSIVE);
            rec.verdict("degree_le_q_star", INCONCLUSIVE);
        }
        Err(e) => {
            rec.set("oracle_error", Value::from(e.to_string()));
            rec.verdict("oracle_le_pipeline", FAIL);
            rec.verdict("degree_le_q_star", FAIL);
        }
    }

    match check_volume_bound(p) {
        Ok(report) => {
            rec.verdict(
                "volume_within_bound",
                verdict_str(report.verdicts.volume_within_bound),
            );
            if let Some(v) = report.verdicts.gorenstein_volume_within_bound {
                rec.verdict("gorenstein_volume_within_bound", verdict_str(v));
            }
        }
        Err(e) => {
            rec.set("volume_bound_error", Value::from(e.to_string()));
            rec.verdict("volume_within_bound", FAIL);
        }
    }

    if hs.is_palindromic() {
        // dualize in normalized coordinates when the input is lower-dimensional
        let normalized;
        let fp = if p.is_full_dimensional() {
            p
        } else {
            match cayleykit::affine::normalize_full_dim(p) {
                Ok(n) => {
                    normalized = n.polytope;
                    &normalized
                }
                Err(e) => {
                    rec.set("gorenstein_error", Value::from(e.to_string()));
                    rec.verdict("gorenstein_duality", FAIL);
                    return;
                }
            }
        };
        match gorenstein_dual(fp).and_then(|cert| {
            let degree_ok = cert.degree() == hs.degree();
            involution_map(fp, &cert).map(|_| degree_ok)
        }) {
            Ok(true) => rec.verdict("gorenstein_duality", PASS),
            Ok(false) => rec.verdict("gorenstein_duality", FAIL),
            Err(e) => {
                rec.set("gorenstein_error", Value::from(e.to_string()));
                rec.verdict("gorenstein_duality", FAIL);
            }
        }
        match verify_gorenstein_cayley_bound(fp, Some(oracle_budget)) {
            Ok(report) => rec.verdict("gorenstein_cayley_bound", status_str(report.status)),
            Err(e) => {
                rec.set("gorenstein_bound_error", Value::from(e.to_string()));
                rec.verdict("gorenstein_cayley_bound", FAIL);
            }
        }
    }
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in
        std::fs::read_dir(dir).with_context(|| format!("reading corpus dir {}", dir.display()))?
    {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Run every check over each document in `dir`, in parallel, reporting in
/// file-name order.
pub fn run_verify_all(dir: &Path, oracle_budget: usize, timings: bool) -> Result<VerifyOutcome> {
    let files = corpus_files(dir)?;

    let records: Vec<(Value, bool, bool)> = files
        .par_iter()
        .map(|path| {
            let file_name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let started = Instant::now();
            let mut rec = RecordBuilder::new(&file_name);
            match read_polytope_file(path) {
                Ok(doc) => {
                    check_document(&mut rec, &doc, oracle_budget);
                }
                Err(e) => {
                    rec.set("error", Value::from(e.to_string()));
                    rec.verdict("parse", FAIL);
                }
            }
            if timings {
                rec.set(
                    "wall_ms",
                    Value::from(started.elapsed().as_millis() as u64),
                );
            }
            rec.finish()
        })
        .collect();

    let mut lines = Vec::with_capacity(records.len() + 1);
    let mut fails = 0usize;
    let mut inconclusive = 0usize;
    for (value, any_fail, any_inconclusive) in &records {
        if *any_fail {
            fails += 1;
        } else if *any_inconclusive {
            inconclusive += 1;
        }
        lines.push(serde_json::to_string(value).expect("record serializes"));
    }

    let exit_code = if fails > 0 {
        2
    } else if inconclusive > 0 {
        3
    } else {
        0
    };
    let mut summary = Map::new();
    summary.insert("tool".into(), Value::from("cayleykit"));
    summary.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    summary.insert("total".into(), Value::from(records.len() as u64));
    summary.insert(
        "passed".into(),
        Value::from((records.len() - fails - inconclusive) as u64),
    );
    summary.insert("failed".into(), Value::from(fails as u64));
    summary.insert("inconclusive".into(), Value::from(inconclusive as u64));
    summary.insert("exit_code".into(), Value::from(exit_code));
    let mut wrapper = Map::new();
    wrapper.insert("summary".into(), Value::from(summary));
    lines.push(serde_json::to_string(&Value::from(wrapper)).expect("summary serializes"));

    Ok(VerifyOutcome { lines, exit_code })
}
