use std::path::PathBuf;

use anyhow::Context;
use rayon::prelude::*;
use serde_json::{json, Value};

use ndepth_core::certificates::{
    check_certificate, example_5_1_erratum, example_5_4_erratum, paper_corpus, parse_certificate,
    serialize_certificate, CertificateReport, ClaimVerdict,
};
use ndepth_core::formulas::{
    chain_power_ndepth, closed_form, sorted_grid, sorted_grid_len, theorem_formula, upper_bound,
};
use ndepth_core::oracle::{derive_formula, grid_agreement, raw_formula, MAX_ENUMERATION_ARITY};
use ndepth_core::solver::{exact_ndepth_with, SolveResult, SolverConfig};
use ndepth_core::{Error, GoodPartition, WeightVector};

use crate::output::Output;
use crate::Settings;

/// Largest grid `sweep` will take on.
pub const SWEEP_BUDGET: u128 = 250_000;

impl Settings {
    fn solver(&self, parallel: bool) -> SolverConfig {
        SolverConfig { node_limit: self.node_limit, parallel, deterministic: self.deterministic, prune: true }
    }
}

fn witness_strings(p: &GoodPartition) -> Vec<String> {
    p.intervals().iter().map(|iv| iv.to_string()).collect()
}

fn or_dash(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn solve(out: &mut Output, s: &Settings, w: &WeightVector, chain: Option<(u64, usize)>) -> anyhow::Result<bool> {
    let bound = upper_bound(w);
    let closed = closed_form(w).ok();
    let chain_value = chain.map(|(n, k)| chain_power_ndepth(n, k)).transpose()?;

    let r = match exact_ndepth_with(w, &s.solver(s.parallel)) {
        Ok(r) => r,
        Err(e @ Error::NodeLimit { .. }) => {
            let Error::NodeLimit { limit, threshold, nodes, upper } = e else { unreachable!() };
            out.record(json!({
                "command": "solve",
                "status": "node_limit",
                "weights": w.as_slice(),
                "upper_bound": bound,
                "closed_form": closed,
                "node_limit": limit,
                "threshold": threshold,
                "value_at_most": upper,
            }));
            out.human(format!("weights      {w}"));
            out.human(format!("upper bound  {bound}"));
            out.human(format!("closed form  {}", or_dash(closed)));
            out.human(format!("search       stopped after {nodes} nodes at threshold {threshold}; value is at most {upper}"));
            return Err(e.into());
        }
        Err(e) => return Err(e.into()),
    };

    let mut record = json!({
        "command": "solve",
        "status": "ok",
        "weights": w.as_slice(),
        "value": r.value,
        "upper_bound": r.upper_bound,
        "closed_form": closed,
        "witness": witness_strings(&r.witness),
    });
    if let Some(v) = chain_value {
        record["chain_formula"] = json!(v);
    }
    if !s.deterministic {
        record["nodes"] = json!(r.stats.nodes);
        record["elapsed_ms"] = json!(r.stats.elapsed.as_secs_f64() * 1e3);
    }
    out.record(record);

    out.human(format!("weights      {w}"));
    out.human(format!("ndepth       {}", r.value));
    out.human(format!("upper bound  {}", r.upper_bound));
    out.human(format!("closed form  {}", or_dash(closed)));
    if let Some(v) = chain_value {
        out.human(format!("chain form   {v}"));
    }
    out.human(format!("witness      {}", r.witness));
    if !s.deterministic {
        out.human(format!("search       {} nodes in {:.3?}", r.stats.nodes, r.stats.elapsed));
    }
    Ok(true)
}

pub fn bound(out: &mut Output, w: &WeightVector) -> anyhow::Result<bool> {
    let b = upper_bound(w);
    out.record(json!({ "command": "bound", "weights": w.as_slice(), "upper_bound": b }));
    out.human(format!("upper bound of {w}: {b}"));
    Ok(true)
}

pub fn formula(out: &mut Output, w: &WeightVector) -> anyhow::Result<bool> {
    let value = closed_form(w)?;
    let f = theorem_formula(w.arity())?;
    out.record(json!({
        "command": "formula",
        "weights": w.as_slice(),
        "formula": f.to_string(),
        "value": value,
    }));
    out.human(format!("formula  {f}  (over sorted weights)"));
    out.human(format!("value    {value} at {w}"));
    Ok(true)
}

fn status(r: &CertificateReport, allow_errata: bool) -> (&'static str, bool) {
    if r.verified() {
        ("verified", true)
    } else if r.documented_discrepancy() {
        ("documented discrepancy", allow_errata)
    } else {
        ("failed", false)
    }
}

fn report_certificate(out: &mut Output, r: &CertificateReport, allow_errata: bool, variant: bool) -> bool {
    let (label, ok) = status(r, allow_errata);
    let structure = if r.structure_ok() { "valid".to_string() } else { r.structure.to_string() };
    out.record(json!({
        "command": "certify",
        "name": r.name,
        "variant": variant,
        "structure": structure,
        "claim": r.claim.to_string(),
        "status": label,
        "erratum": r.erratum,
    }));
    let claim = match r.claim {
        ClaimVerdict::Verified => "ok",
        ClaimVerdict::Skipped => "skipped",
        _ => "MISMATCH",
    };
    let shape = if r.structure_ok() { "ok" } else { "INVALID" };
    out.human(format!("{:<22} structure {shape:<7} claim {claim:<8} {label}", r.name));
    if !r.structure_ok() {
        out.human(format!("    structure: {}", r.structure));
    }
    if !r.verified() && r.structure_ok() {
        out.human(format!("    claim: {}", r.claim));
    }
    if let (Some(note), false) = (&r.erratum, r.verified()) {
        out.human(format!("    erratum: {note}"));
    }
    ok
}

pub fn certify(out: &mut Output, s: &Settings, paths: &[PathBuf], paper_corpus_flag: bool) -> anyhow::Result<bool> {
    let mut all_ok = true;
    let mut reports = Vec::new();

    if paper_corpus_flag {
        for c in paper_corpus() {
            let r = check_certificate(&c);
            all_ok &= report_certificate(out, &r, s.allow_errata, false);
            reports.push(r);
        }
        out.human("erratum variants:");
        for c in [example_5_1_erratum(), example_5_4_erratum()] {
            all_ok &= report_certificate(out, &check_certificate(&c), s.allow_errata, true);
        }
    } else {
        for path in paths {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            match parse_certificate(&text) {
                Ok(c) => {
                    let r = check_certificate(&c);
                    all_ok &= report_certificate(out, &r, s.allow_errata, false);
                    reports.push(r);
                }
                Err(e) => {
                    all_ok = false;
                    out.record(json!({
                        "command": "certify",
                        "path": path.display().to_string(),
                        "status": "parse error",
                        "error": e.to_string(),
                    }));
                    out.human(format!("{}: parse error: {e}", path.display()));
                }
            }
        }
    }

    let structural = reports.iter().filter(|r| r.structure_ok()).count();
    let verified = reports.iter().filter(|r| r.verified()).count();
    let documented = reports.iter().filter(|r| r.documented_discrepancy()).count();
    let failed = reports.len() - verified - documented;
    out.record(json!({
        "command": "certify-summary",
        "certificates": reports.len(),
        "structurally_valid": structural,
        "verified": verified,
        "documented_discrepancies": documented,
        "failed": failed,
        "passed": all_ok,
    }));
    out.human(format!(
        "{} certificates: {structural} structurally valid, {verified} verified, {documented} documented discrepancies, {failed} failed",
        reports.len()
    ));
    Ok(all_ok)
}

pub fn derive(out: &mut Output, s: &Settings, k: usize) -> anyhow::Result<bool> {
    if k > MAX_ENUMERATION_ARITY {
        return Err(Error::Resource(format!(
            "enumerating every good partition is only supported up to k = {MAX_ENUMERATION_ARITY}; \
             for k = {k} use `ndepth solve` (exact search) on specific weights, or `ndepth sweep {k} N` \
             to compare it with the closed form"
        ))
        .into());
    }
    let derived = derive_formula(k)?;
    let raw = raw_formula(k)?;
    let vs_raw = grid_agreement(k, s.grid_max, |w| derived.evaluate(w), |w| raw.evaluate(w));
    let theorem = theorem_formula(k)?;
    let vs_theorem = grid_agreement(k, s.grid_max, |w| derived.evaluate(w), |w| theorem.evaluate(w));

    let mismatch = |g: &ndepth_core::oracle::GridAgreement| -> Value {
        match &g.mismatch {
            Some((w, a, b)) => json!({ "weights": w.as_slice(), "derived": a, "reference": b }),
            None => Value::Null,
        }
    };
    out.record(json!({
        "command": "derive",
        "k": k,
        "formula": derived.to_string(),
        "min_terms": derived.terms().len(),
        "unreduced_min_terms": raw.terms().len(),
        "grid_max": s.grid_max,
        "grid_points": vs_theorem.points,
        "agrees_with_unreduced": vs_raw.agrees(),
        "agrees_with_closed_form": vs_theorem.agrees(),
        "mismatch_unreduced": mismatch(&vs_raw),
        "mismatch_closed_form": mismatch(&vs_theorem),
    }));
    out.human(derived.to_string());
    let verdict = |g: &ndepth_core::oracle::GridAgreement| match &g.mismatch {
        None => "agrees".to_string(),
        Some((w, a, b)) => format!("DISAGREES at {w}: {a} vs {b}"),
    };
    out.human(format!(
        "grid 1..{} ({} sorted points): {} with the unreduced formula ({} min-terms), {} with the closed form",
        s.grid_max,
        vs_theorem.points,
        verdict(&vs_raw),
        raw.terms().len(),
        verdict(&vs_theorem)
    ));
    Ok(vs_raw.agrees() && vs_theorem.agrees())
}

struct Row {
    weights: WeightVector,
    result: Result<SolveResult, Error>,
    closed: u64,
    bound: u64,
}

pub fn sweep(out: &mut Output, s: &Settings, k: usize, max_entry: u64) -> anyhow::Result<bool> {
    if k == 0 || k > 5 {
        return Err(Error::NoClosedForm(k)).context("sweep compares against the closed form, which exists for 1 <= k <= 5");
    }
    if max_entry == 0 {
        return Err(Error::Domain("the largest entry must be at least 1".into()).into());
    }
    let size = sorted_grid_len(k, max_entry);
    if size > SWEEP_BUDGET {
        return Err(Error::Resource(format!("grid has {size} points, more than the budget of {SWEEP_BUDGET}")).into());
    }
    let config = s.solver(false);
    let rows: Vec<Row> = sorted_grid(k, max_entry)
        .into_par_iter()
        .map(|weights| Row {
            result: exact_ndepth_with(&weights, &config),
            closed: closed_form(&weights).expect("k <= 5"),
            bound: upper_bound(&weights),
            weights,
        })
        .collect();

    let (mut disagreements, mut limit_hits) = (0usize, 0usize);
    let mut first_error = None;
    for row in rows {
        let w = row.weights.as_slice();
        match row.result {
            Ok(r) => {
                let agree = r.value == row.closed && r.value <= row.bound;
                disagreements += usize::from(!agree);
                out.record(json!({
                    "command": "sweep",
                    "weights": w,
                    "exact": r.value,
                    "closed_form": row.closed,
                    "upper_bound": row.bound,
                    "agree": agree,
                }));
                out.human(format!(
                    "{:<20} exact {:>4}  closed {:>4}  bound {:>4}  {}",
                    row.weights.to_string(),
                    r.value,
                    row.closed,
                    row.bound,
                    if agree { "ok" } else { "DISAGREE" }
                ));
            }
            Err(e) => {
                limit_hits += 1;
                out.record(json!({
                    "command": "sweep",
                    "weights": w,
                    "error": e.to_string(),
                    "closed_form": row.closed,
                    "upper_bound": row.bound,
                }));
                out.human(format!("{:<20} {e}", row.weights.to_string()));
                first_error.get_or_insert(e);
            }
        }
    }
    out.record(json!({
        "command": "sweep-summary",
        "k": k,
        "max_entry": max_entry,
        "instances": size as u64,
        "disagreements": disagreements,
        "unfinished": limit_hits,
    }));
    out.human(format!("{size} instances, {disagreements} disagreements, {limit_hits} unfinished"));
    match first_error {
        Some(e) => Err(e.into()),
        None => Ok(disagreements == 0),
    }
}

fn check(out: &mut Output, name: &str, result: Result<(), String>) -> bool {
    let passed = result.is_ok();
    let detail = result.err();
    out.record(json!({ "command": "selftest", "check": name, "passed": passed, "detail": detail }));
    match &detail {
        None => out.human(format!("ok    {name}")),
        Some(d) => out.human(format!("FAIL  {name}: {d}")),
    }
    passed
}

pub fn selftest(out: &mut Output, s: &Settings) -> anyhow::Result<bool> {
    let config = s.solver(false);
    let mut ok = true;

    ok &= check(out, "example corpus", {
        let bad: Vec<String> = paper_corpus()
            .iter()
            .map(check_certificate)
            .filter(|r| !r.verified() && !r.documented_discrepancy())
            .map(|r| r.name)
            .collect();
        let variants = [example_5_1_erratum(), example_5_4_erratum()].iter().all(|c| check_certificate(c).verified());
        match (bad.is_empty(), variants) {
            (true, true) => Ok(()),
            (false, _) => Err(format!("unexpected failures: {}", bad.join(", "))),
            (true, false) => Err("an erratum variant does not verify".into()),
        }
    });

    ok &= check(out, "certificate round trip", {
        paper_corpus()
            .iter()
            .find(|c| parse_certificate(&serialize_certificate(c)).as_ref() != Ok(*c))
            .map_or(Ok(()), |c| Err(format!("{} does not survive serialization", c.name)))
    });

    let grids: [(usize, u64); 5] = [(1, 3), (2, 3), (3, 3), (4, 3), (5, 2)];
    for (k, max) in grids {
        let name = format!("exact search vs closed form, k = {k}, entries 1..{max}");
        let result = sorted_grid(k, max).par_iter().find_map_first(|w| {
            let closed = closed_form(w).expect("k <= 5");
            match exact_ndepth_with(w, &config) {
                Ok(r) if r.value == closed && r.value <= upper_bound(w) => None,
                Ok(r) => Some(format!("{w}: exact {} closed {closed}", r.value)),
                Err(e) => Some(format!("{w}: {e}")),
            }
        });
        ok &= check(out, &name, result.map_or(Ok(()), Err));
    }

    ok &= check(out, "chain powers (n-1)ceil(k/2), n <= 4, k <= 4", {
        let mut failure = None;
        'outer: for n in 2..=4u64 {
            for k in 1..=4usize {
                let w = WeightVector::uniform(n - 1, k).expect("valid");
                let expected = chain_power_ndepth(n, k).expect("valid");
                match exact_ndepth_with(&w, &config) {
                    Ok(r) if r.value == expected => {}
                    Ok(r) => failure = Some(format!("n={n} k={k}: exact {} expected {expected}", r.value)),
                    Err(e) => failure = Some(format!("n={n} k={k}: {e}")),
                }
                if failure.is_some() {
                    break 'outer;
                }
            }
        }
        failure.map_or(Ok(()), Err)
    });

    for k in 1..=3 {
        let name = format!("derived formula, k = {k}, grid 1..{}", s.grid_max);
        let result = derive_formula(k).map_err(|e| e.to_string()).and_then(|f| {
            let theorem = theorem_formula(k).map_err(|e| e.to_string())?;
            let g = grid_agreement(k, s.grid_max, |w| f.evaluate(w), |w| theorem.evaluate(w));
            match g.mismatch {
                None => Ok(()),
                Some((w, a, b)) => Err(format!("{w}: derived {a} closed form {b}")),
            }
        });
        ok &= check(out, &name, result);
    }

    out.record(json!({ "command": "selftest-summary", "passed": ok }));
    out.human(if ok { "all checks passed" } else { "some checks FAILED" });
    Ok(ok)
}
