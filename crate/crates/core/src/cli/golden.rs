//! Replays the four worked examples and compares against committed values.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::criterion::{build_m, example1_bound, example1_exact_bound, verdict, VerdictKind};
use crate::error::{Error, Result};
use crate::moment::{moment_constants, omega_threshold};
use crate::nonlinearity::{find_ratios, ratio_for_mu, HomogeneousNonlinearity, ProportionalRatio};

const GOLDEN: [&str; 4] = [
    include_str!("../../golden/example1.json"),
    include_str!("../../golden/example2.json"),
    include_str!("../../golden/example3.json"),
    include_str!("../../golden/example4.json"),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenCase {
    pub label: String,
    pub expected: Value,
    /// Absolute tolerance for numbers; strings compare exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldenFile {
    pub example: u8,
    pub title: String,
    pub cases: Vec<GoldenCase>,
}

pub fn golden(n: u8) -> Result<GoldenFile> {
    let text = GOLDEN
        .get((n as usize).wrapping_sub(1))
        .ok_or_else(|| Error::Schema(format!("example must be 1..=4, got {n}")))?;
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("golden file {n}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoldenCheck {
    pub label: String,
    pub computed: Value,
    pub expected: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub example: u8,
    pub title: String,
    pub checks: Vec<GoldenCheck>,
    /// Computed quantities that are reported but not pinned.
    pub notes: Vec<(String, Value)>,
    pub all_pass: bool,
}

impl ExampleReport {
    pub fn mismatches(&self) -> Vec<&GoldenCheck> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

type Computed = Vec<(String, Value)>;

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

fn kind_tag(k: &VerdictKind) -> Value {
    Value::String(
        match k {
            VerdictKind::StableAllSpeeds => "stable_all_speeds",
            VerdictKind::ThresholdStable { .. } => "threshold_stable",
            VerdictKind::CriterionFails => "criterion_fails",
            VerdictKind::NotAdmissible => "not_admissible",
        }
        .into(),
    )
}

/// `(det M, verdict)` with `omega_p` filled in from the moment constants.
fn classify(h: &HomogeneousNonlinearity, r: &ProportionalRatio) -> Result<(f64, VerdictKind)> {
    let m = build_m(h, r)?;
    let p = h.p();
    let omega_p = if p > 4 {
        omega_threshold(&moment_constants(p, r.mu, r.hu)?)
    } else {
        None
    };
    Ok((m.det, verdict(&m, p, omega_p)?.kind))
}

/// Counts grid points where `det M < 1/(p+1)` (with `H_u > 0`) disagrees with
/// `-(p+2) b2 < b1 < bound(p, b2)`. Points within `1e-9` of either edge are skipped.
pub fn example1_scan(bound: fn(u32, f64) -> f64) -> Result<(usize, usize)> {
    let mut disagree = 0;
    let mut total = 0;
    for p in [1u32, 2, 3, 4, 5, 6] {
        for &b2 in &[0.25, 0.5, 1.0, 2.0, 3.0] {
            let hi = bound(p, b2);
            let lo = -(p as f64 + 2.0) * b2;
            for i in -400..=400 {
                let b1 = i as f64 * 0.05;
                if (b1 - hi).abs() < 1e-9 || (b1 - lo).abs() < 1e-9 {
                    continue;
                }
                let h = HomogeneousNonlinearity::coupled_power(p, b1, b2)?;
                let r = ProportionalRatio::at(&h, 1.0);
                let holds = r.admissible && build_m(&h, &r)?.det < 1.0 / (p as f64 + 1.0);
                let predicted = lo < b1 && b1 < hi;
                total += 1;
                if holds != predicted {
                    disagree += 1;
                }
            }
        }
    }
    Ok((disagree, total))
}

fn example1(out: &mut Computed, notes: &mut Computed) -> Result<()> {
    let h = HomogeneousNonlinearity::coupled_power(1, 1.0, 1.0)?;
    let r = ratio_for_mu(&h, 1.0)?;
    let (det, kind) = classify(&h, &r)?;
    let pre = "p=1 b1=1 b2=1 mu=1";
    out.push((format!("{pre}: H_u(1,mu)"), num(r.hu)));
    out.push((format!("{pre}: det M"), num(det)));
    out.push((format!("{pre}: verdict"), kind_tag(&kind)));
    for p in [1, 3, 5] {
        out.push((format!("stated bound p={p} b2=1"), num(example1_bound(p, 1.0))));
    }
    for p in [1, 3, 5] {
        out.push((format!("exact bound p={p} b2=1"), num(example1_exact_bound(p, 1.0))));
    }
    let (bad, total) = example1_scan(example1_exact_bound)?;
    out.push(("region scan disagreements with exact bound".into(), num(bad as f64)));
    let (bad_stated, _) = example1_scan(example1_bound)?;
    notes.push(("region scan points".into(), num(total as f64)));
    notes.push(("region scan disagreements with stated bound".into(), num(bad_stated as f64)));
    Ok(())
}

fn example2(out: &mut Computed, notes: &mut Computed) -> Result<()> {
    for q in 1..=4u32 {
        let h = HomogeneousNonlinearity::symmetric_product(q)?;
        let admissible: Vec<_> = find_ratios(&h)?.into_iter().filter(|r| r.admissible).collect();
        let r = admissible
            .iter()
            .find(|r| (r.mu - 1.0).abs() < 1e-9)
            .copied()
            .ok_or(Error::NoAdmissibleRatio)?;
        let (det, kind) = classify(&h, &r)?;
        out.push((format!("q={q}: p"), num(h.p() as f64)));
        out.push((format!("q={q}: mu"), num(r.mu)));
        out.push((format!("q={q}: det M"), num(det)));
        out.push((format!("q={q}: verdict"), kind_tag(&kind)));
        if let VerdictKind::ThresholdStable { omega_p } = kind {
            out.push((format!("q={q}: omega_p"), num(omega_p)));
        }
        notes.push((format!("q={q}: -1/q"), num(-1.0 / q as f64)));
        notes.push((format!("q={q}: admissible ratios"), num(admissible.len() as f64)));
    }
    Ok(())
}

fn example3(out: &mut Computed, _notes: &mut Computed) -> Result<()> {
    let h = HomogeneousNonlinearity::decoupled(2, 1.0, 1.0)?;
    let ratios = find_ratios(&h)?;
    out.push(("ratio count".into(), num(ratios.len() as f64)));
    for r in &ratios {
        let (det, kind) = classify(&h, r)?;
        let mu = r.mu.round() as i64;
        out.push((format!("mu={mu}: det M"), num(det)));
        out.push((format!("mu={mu}: verdict"), kind_tag(&kind)));
    }
    Ok(())
}

fn example4(out: &mut Computed, notes: &mut Computed) -> Result<()> {
    let h = HomogeneousNonlinearity::cubic_coupling(1.0)?;
    notes.push((
        "beta=1: ratio detection".into(),
        Value::String(match find_ratios(&h) {
            Err(e) => e.kind().into(),
            Ok(r) => format!("{} ratios", r.len()),
        }),
    ));
    let (det, kind) = classify(&h, &ratio_for_mu(&h, 1.0)?)?;
    out.push(("beta=1 mu=1: det M".into(), num(det)));
    out.push(("beta=1 mu=1: verdict".into(), kind_tag(&kind)));
    for beta in [0.5, 2.0, 3.0] {
        let h = HomogeneousNonlinearity::cubic_coupling(beta)?;
        for r in find_ratios(&h)? {
            let (det, kind) = classify(&h, &r)?;
            let mu = r.mu.round() as i64;
            out.push((format!("beta={beta} mu={mu}: det M"), num(det)));
            if mu == 1 {
                out.push((format!("beta={beta} mu={mu}: verdict"), kind_tag(&kind)));
            }
        }
    }
    let mut bad = 0;
    for i in 1..=100 {
        let beta = 0.05 * i as f64;
        if (beta - 1.0).abs() < 1e-9 {
            continue;
        }
        let h = HomogeneousNonlinearity::cubic_coupling(beta)?;
        for mu in [-1.0, 1.0] {
            let m = build_m(&h, &ratio_for_mu(&h, mu)?)?;
            let closed = (3.0 - beta) / (3.0 * (1.0 + beta));
            if (m.det < 1.0 / 3.0) != (beta > 1.0) || (m.det - closed).abs() > 1e-12 {
                bad += 1;
            }
        }
    }
    out.push((
        "beta sweep disagreements of (det M < 1/3) with (beta > 1) at mu=+-1".into(),
        num(bad as f64),
    ));
    Ok(())
}

fn compare(case: &GoldenCase, computed: Option<&Value>) -> bool {
    match (computed, &case.expected) {
        (Some(Value::Number(a)), Value::Number(b)) => {
            let (a, b) = (a.as_f64().unwrap_or(f64::NAN), b.as_f64().unwrap_or(f64::NAN));
            (a - b).abs() <= case.tol.unwrap_or(0.0)
        }
        (Some(a), b) => a == b,
        (None, _) => false,
    }
}

/// Recomputes example `n` and checks every pinned case.
pub fn run_example(n: u8) -> Result<ExampleReport> {
    let file = golden(n)?;
    let mut computed = Computed::new();
    let mut notes = Computed::new();
    match n {
        1 => example1(&mut computed, &mut notes)?,
        2 => example2(&mut computed, &mut notes)?,
        3 => example3(&mut computed, &mut notes)?,
        _ => example4(&mut computed, &mut notes)?,
    }
    let lookup = |label: &str| computed.iter().find(|(l, _)| l == label).map(|(_, v)| v);
    let checks: Vec<GoldenCheck> = file
        .cases
        .iter()
        .map(|case| {
            let got = lookup(&case.label);
            GoldenCheck {
                label: case.label.clone(),
                computed: got.cloned().unwrap_or(Value::Null),
                expected: case.expected.clone(),
                tol: case.tol,
                pass: compare(case, got),
            }
        })
        .collect();
    // Computed values without a golden entry are surfaced, not silently dropped.
    for (label, v) in &computed {
        if !file.cases.iter().any(|c| &c.label == label) {
            notes.push((format!("unpinned: {label}"), v.clone()));
        }
    }
    Ok(ExampleReport {
        example: n,
        title: file.title,
        all_pass: checks.iter().all(|c| c.pass),
        checks,
        notes,
    })
}
