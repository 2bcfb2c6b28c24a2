//! Acceptance run: executes the bundled full suite twice and grades each
//! criterion from the report, printing one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};

use finsler_ineq::inequalities::{self as ineq, Tolerances};
use finsler_ineq::{NormSpec, Vector};
use serde_json::Value;

struct Totals {
    count: u64,
    violations: u64,
    unexpected: u64,
}

/// A flat view of every (run, outcome) aggregate in a report.
struct Report {
    rows: Vec<Row>,
}

struct Row {
    family: String,
    dim: u64,
    spec: Value,
    tolerances: Value,
    check: String,
    count: u64,
    violations: u64,
    unexpected: u64,
}

impl Report {
    fn parse(text: &str) -> Report {
        let v: Value = serde_json::from_str(text).expect("report is JSON");
        let mut rows = Vec::new();
        for run in v["runs"].as_array().expect("runs") {
            let spec = run["manifest"]["spec"].clone();
            for c in run["checks"].as_array().expect("checks") {
                rows.push(Row {
                    family: spec["family"].as_str().unwrap().to_string(),
                    dim: spec["dim"].as_u64().unwrap(),
                    spec: spec.clone(),
                    tolerances: run["tolerances"].clone(),
                    check: c["name"].as_str().unwrap().to_string(),
                    count: c["count"].as_u64().unwrap(),
                    violations: c["violations"].as_u64().unwrap(),
                    unexpected: c["unexpected_equalities"].as_u64().unwrap(),
                });
            }
        }
        Report { rows }
    }

    fn rows<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Row> + 'a {
        self.rows.iter().filter(move |r| r.check == check)
    }

    /// Totals per key for one outcome name.
    fn totals<K: Ord>(&self, check: &str, key: impl Fn(&Row) -> K) -> BTreeMap<K, Totals> {
        let mut out: BTreeMap<K, Totals> = BTreeMap::new();
        for r in self.rows(check) {
            let t = out.entry(key(r)).or_insert(Totals {
                count: 0,
                violations: 0,
                unexpected: 0,
            });
            t.count += r.count;
            t.violations += r.violations;
            t.unexpected += r.unexpected;
        }
        out
    }

    /// Every row of `check` used the default value of tolerance `key`.
    fn default_tol(&self, check: &str, key: &str, want: f64) -> bool {
        self.rows(check).all(|r| r.tolerances[key].as_f64() == Some(want))
    }
}

const FAMILIES: [&str; 9] = [
    "minkowski_bilinear",
    "degenerate_minkowski",
    "p_pseudo_norm",
    "euclidean_p",
    "berwald_moor",
    "weighted_geometric",
    "bimetric",
    "kropina",
    "stationary",
];

struct Grade {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Grade {
    fn new() -> Self {
        Grade {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    /// Zero violations and at least `min` samples per key.
    fn totals<K: Ord + std::fmt::Debug>(
        &mut self,
        label: &str,
        totals: &BTreeMap<K, Totals>,
        min: u64,
        strict: bool,
    ) {
        self.require(!totals.is_empty(), format!("{label}: no runs"));
        let mut n = 0;
        for (k, t) in totals {
            n += t.count;
            self.require(t.count >= min, format!("{label} {k:?}: {} samples < {min}", t.count));
            self.require(t.violations == 0, format!("{label} {k:?}: {} violations", t.violations));
            if strict {
                self.require(
                    t.unexpected == 0,
                    format!("{label} {k:?}: {} non-collinear equalities", t.unexpected),
                );
            }
        }
        self.note(format!("{label}: {n} evaluations"));
    }
}

fn families_in<K>(totals: &BTreeMap<K, Totals>, family: impl Fn(&K) -> &str) -> BTreeSet<String> {
    totals.keys().map(|k| family(k).to_string()).collect()
}

fn all_families(g: &mut Grade, label: &str, seen: BTreeSet<String>) {
    for f in FAMILIES {
        g.require(seen.contains(f), format!("{label}: family {f} missing"));
    }
}

fn by_family(r: &Row) -> String {
    r.family.clone()
}

fn by_family_dim(r: &Row) -> (String, u64) {
    (r.family.clone(), r.dim)
}

fn criterion_1(rep: &Report) -> Grade {
    let mut g = Grade::new();
    g.require(rep.default_tol("oracle.tensor", "fd", 1e-5), "fd tolerance is not 1e-5");
    let t = rep.totals("oracle.tensor", by_family_dim);
    g.totals("oracle.tensor", &t, 100, false);
    all_families(&mut g, "oracle", families_in(&t, |k| &k.0));
    for f in FAMILIES {
        let dims: BTreeSet<u64> = t.keys().filter(|k| k.0 == f).map(|k| k.1).collect();
        g.note(format!("{f} dims {dims:?}"));
    }
    g
}

fn criterion_2(rep: &Report) -> Grade {
    let mut g = Grade::new();
    let t = rep.totals("signature", by_family);
    g.totals("signature", &t, 1000, false);
    all_families(&mut g, "signature", families_in(&t, |k| k.as_str()));
    g
}

fn lorentzian(r: &Row) -> bool {
    r.family != "euclidean_p"
}

fn criterion_3(rep: &Report) -> Grade {
    let mut g = Grade::new();
    for check in ["fundamental", "reverse_triangle"] {
        g.require(rep.default_tol(check, "verdict", 1e-9), format!("{check}: verdict tolerance changed"));
        g.require(rep.default_tol(check, "collinear", 1e-8), format!("{check}: collinear threshold changed"));
        let mut t = rep.totals(check, by_family);
        t.retain(|f, _| rep.rows(check).any(|r| &r.family == f && lorentzian(r)));
        g.totals(check, &t, 10_000, true);
        let seen = families_in(&t, |k| k.as_str());
        for f in FAMILIES.iter().filter(|f| **f != "euclidean_p") {
            g.require(seen.contains(*f), format!("{check}: family {f} missing"));
        }
    }
    g
}

fn criterion_4() -> Grade {
    let mut g = Grade::new();
    let spec = NormSpec::degenerate_minkowski(5, 2).unwrap();
    let v = Vector::from_slice(&[1.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
    let w = Vector::from_slice(&[1.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
    match ineq::check_fundamental(&spec, &v, &w, &Tolerances::default()) {
        Ok(r) => {
            g.require(r.slack.abs() <= 1e-12, format!("slack {} exceeds 1e-12", r.slack));
            g.require(!r.collinear, "pair reported collinear");
            g.note(format!("slack {:e}, collinear {}", r.slack, r.collinear));
        }
        Err(e) => g.require(false, format!("check failed: {e}")),
    }
    g
}

fn criterion_5(rep: &Report) -> Grade {
    let mut g = Grade::new();
    for check in [
        "scaled_refinement.lower",
        "scaled_refinement.upper",
        "integral_refinement.lower",
        "integral_refinement.upper",
    ] {
        g.require(rep.default_tol(check, "refinement", 1e-6), format!("{check}: tolerance changed"));
        let t = rep.totals(check, by_family);
        g.totals(check, &t, 2000, false);
        all_families(&mut g, check, families_in(&t, |k| k.as_str()));
    }
    g
}

fn criterion_6(rep: &Report) -> Grade {
    let mut g = Grade::new();
    for prefix in [
        "aczel",
        "popoviciu",
        "bellman",
        "am_gm",
        "weighted_am_gm",
        "holder",
        "minkowski",
        "kropina",
        "bimetric",
    ] {
        let agreement = format!("{prefix}.agreement");
        let t = rep.totals(&agreement, |_| prefix.to_string());
        g.totals(&agreement, &t, 1000, false);
        for part in ["direct", "machinery"] {
            let name = format!("{prefix}.{part}");
            let t = rep.totals(&name, |_| prefix.to_string());
            g.totals(&name, &t, 1000, false);
        }
    }
    let p: BTreeSet<String> = rep
        .rows("popoviciu.agreement")
        .map(|r| r.spec["params"]["p"].to_string())
        .collect();
    for want in ["1.5", "2.0", "3.0"] {
        g.require(p.contains(want), format!("popoviciu not run at p = {want}"));
    }
    g.require(rep.default_tol("bellman.slack_gap", "lemma", 1e-10), "bellman gap tolerance changed");
    let t = rep.totals("bellman.slack_gap", |_| "bellman");
    g.totals("bellman.slack_gap", &t, 1000, false);
    g
}

fn criterion_7(rep: &Report) -> Grade {
    let mut g = Grade::new();
    let base_p = |r: &Row| r.spec["params"]["base"]["params"]["p"].to_string();
    for check in [
        "finslerian_aczel.lemma",
        "finslerian_aczel.refinement_1",
        "finslerian_aczel.refinement_2",
        "finslerian_aczel",
    ] {
        g.require(rep.default_tol(check, "lemma", 1e-10), format!("{check}: lemma tolerance changed"));
        let t = rep.totals(check, base_p);
        g.totals(check, &t, 5000, check == "finslerian_aczel");
        g.require(t.contains_key("2.0"), format!("{check}: no Euclidean base"));
        g.require(t.keys().any(|k| k != "2.0"), format!("{check}: no non-Euclidean base"));
    }
    g
}

fn criterion_8(rep: &Report) -> Grade {
    let mut g = Grade::new();
    g.require(rep.default_tol("mth_root.identity", "transfer", 1e-8), "transfer tolerance changed");
    for check in ["mth_root.identity", "mth_root.implication"] {
        let t = rep.totals(check, by_family);
        g.totals(check, &t, 1000, false);
        for f in ["p_pseudo_norm", "berwald_moor", "bimetric"] {
            g.require(t.contains_key(f), format!("{check}: family {f} missing"));
        }
    }
    g
}

fn criterion_9(rep: &Report) -> Grade {
    let mut g = Grade::new();
    g.require(rep.default_tol("angular_metric.radical", "radical", 1e-9), "radical tolerance changed");
    for check in ["angular_metric.radical", "angular_metric.sign"] {
        let t = rep.totals(check, by_family);
        g.totals(check, &t, 1, false);
        all_families(&mut g, check, families_in(&t, |k| k.as_str()));
    }
    g
}

fn run_suite(bin: &Path, manifest: &Path, out: &Path) -> Result<String, String> {
    let status = Command::new(bin)
        .arg("verify")
        .arg(manifest)
        .arg("--out")
        .arg(out)
        .stdout(std::process::Stdio::null())
        .status()
        .map_err(|e| format!("cannot run {}: {e}", bin.display()))?;
    let text = std::fs::read_to_string(out).map_err(|e| format!("no report: {e}"))?;
    if !status.success() {
        eprintln!("verify exited with {status}");
    }
    Ok(text)
}

fn main() -> ExitCode {
    let bin = PathBuf::from(env!("CARGO_BIN_EXE_finsler-ineq"));
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR")).join("manifests/full-suite.json");
    let dir = tempfile::tempdir().expect("temp dir");
    let first = run_suite(&bin, &manifest, &dir.path().join("first.json"));
    let second = run_suite(&bin, &manifest, &dir.path().join("second.json"));

    let mut grades: Vec<(&str, Grade)> = Vec::new();
    match &first {
        Ok(text) => {
            let rep = Report::parse(text);
            grades.push(("1 analytic vs finite-difference fundamental tensor", criterion_1(&rep)));
            grades.push(("2 signature classification", criterion_2(&rep)));
            grades.push(("3 reverse Cauchy-Schwarz and reverse triangle", criterion_3(&rep)));
            grades.push(("4 degenerate Minkowski equality without collinearity", criterion_4()));
            grades.push(("5 scaled and integral refinement sandwiches", criterion_5(&rep)));
            grades.push(("6 classical reductions", criterion_6(&rep)));
            grades.push(("7 Finslerian Aczel lemma and refinements", criterion_7(&rep)));
            grades.push(("8 m-th root signature transfer", criterion_8(&rep)));
            grades.push(("9 angular metric sign and radical", criterion_9(&rep)));
        }
        Err(e) => {
            for n in 1..=9 {
                let mut g = Grade::new();
                g.require(false, format!("suite did not run: {e}"));
                grades.push((["1", "2", "3", "4", "5", "6", "7", "8", "9"][n - 1], g));
            }
        }
    }
    let mut g10 = Grade::new();
    match (&first, &second) {
        (Ok(a), Ok(b)) => {
            g10.require(a == b, "reports differ between runs");
            g10.note(format!("{} bytes", a.len()));
        }
        _ => g10.require(false, "suite did not run twice"),
    }
    grades.push(("10 byte-identical verify output", g10));

    let mut all = true;
    for (name, g) in &grades {
        let ok = g.failures.is_empty();
        all &= ok;
        let detail = if ok { g.notes.join("; ") } else { g.failures.join("; ") };
        println!("criterion {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
