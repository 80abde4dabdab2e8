//! Serializable reports. Text and CSV are rendered from the report fields
//! alone, so a report read back from JSON renders identically.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Analyze(AnalyzeReport),
    Growth(GrowthReport),
    Classify(ClassifyReport),
    Cover(CoverReport),
    Knot(KnotReport),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Growth {
    Linear { rate: usize },
    Bounded { max: u64, period: u64 },
}

impl fmt::Display for Growth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Growth::Linear { rate } => write!(f, "Linear (rate {rate})"),
            Growth::Bounded { max, period } => write!(f, "Bounded (max {max}, period {period})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub factor: String,
    pub cyclotomic_orders: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrices {
    pub d1: Vec<Vec<String>>,
    pub d2: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub name: String,
    pub generators: usize,
    pub relators: usize,
    pub map: String,
    pub betti: usize,
    pub torsion: Vec<String>,
    pub abelianization: String,
    pub module: String,
    pub rank: usize,
    pub torsion_factors: Vec<String>,
    /// Largest `k` with `Λ/((t-1)^k)` a summand.
    pub n: u32,
    pub flagged: bool,
    pub equivalence_holds: bool,
    pub growth: Growth,
    pub witnesses: Vec<Witness>,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Matrices>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub betti_formula: u64,
    pub betti_oracle: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub name: String,
    pub module: String,
    pub verified: bool,
    pub rows: Vec<Row>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub name: String,
    pub module: String,
    pub growth: Growth,
    pub witnesses: Vec<Witness>,
    pub seed: Option<u64>,
    /// Spot checks, present with `--verify`.
    pub checks: Vec<Row>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub name: String,
    pub quotient: String,
    pub order: u64,
    pub generators: usize,
    pub relators: usize,
    pub betti: usize,
    pub abelianization: String,
    /// Cover presentation, unless it was written to `output`.
    pub presentation: Option<String>,
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotReport {
    pub delta: String,
    pub grows: bool,
    /// `(d, β₁(M_d))` for each cyclotomic order `d`.
    pub witnesses: Vec<(u64, u64)>,
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn orders(w: &Witness) -> String {
    let v: Vec<String> = w.cyclotomic_orders.iter().map(u64::to_string).collect();
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

fn oracle_cell(o: Option<u64>) -> String {
    o.map_or_else(|| "-".into(), |v| v.to_string())
}

fn rows_table(out: &mut String, rows: &[Row]) {
    let _ = writeln!(out, "{:>4}  {:>8}  {:>8}", "n", "formula", "oracle");
    for r in rows {
        let _ = writeln!(out, "{:>4}  {:>8}  {:>8}", r.n, r.betti_formula, oracle_cell(r.betti_oracle));
    }
}

fn witness_lines(out: &mut String, witnesses: &[Witness]) {
    for w in witnesses {
        let _ = writeln!(out, "  {}: cyclotomic orders {}", w.factor, orders(w));
    }
}

fn warning_lines(out: &mut String, warnings: &[String]) {
    for w in warnings {
        let _ = writeln!(out, "warning: {w}");
    }
}

fn matrix_lines(out: &mut String, label: &str, m: &[Vec<String>]) {
    let _ = writeln!(out, "{label}:");
    for row in m {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(r) => {
                let _ = writeln!(out, "presentation: {} ({} generators, {} relators)", r.name, r.generators, r.relators);
                let _ = writeln!(out, "map: {}", r.map);
                let _ = writeln!(out, "H_1: {}", r.abelianization);
                let _ = writeln!(out, "β₁: {}", r.betti);
                let _ = writeln!(out, "module: {}", r.module);
                let _ = writeln!(out, "rank r₁: {}", r.rank);
                let _ = writeln!(out, "torsion: {}", list(&r.torsion_factors));
                let _ = writeln!(out, "N: {}", r.n);
                let verdict = if r.equivalence_holds { "holds" } else { "fails" };
                let scope = if r.flagged { "flagged" } else { "not flagged, informational" };
                let _ = writeln!(out, "(r₁ > 0) ⟺ (N = 0): {verdict} ({scope})");
                let _ = writeln!(out, "growth: {}", r.growth);
                witness_lines(&mut out, &r.witnesses);
                if let Some(m) = &r.matrices {
                    matrix_lines(&mut out, "d1", &m.d1);
                    matrix_lines(&mut out, "d2", &m.d2);
                }
                warning_lines(&mut out, &r.warnings);
            }
            Report::Growth(r) => {
                let _ = writeln!(out, "{}: {}", r.name, r.module);
                rows_table(&mut out, &r.rows);
                warning_lines(&mut out, &r.warnings);
            }
            Report::Classify(r) => {
                let _ = writeln!(out, "{}: {}", r.name, r.module);
                let _ = writeln!(out, "growth: {}", r.growth);
                witness_lines(&mut out, &r.witnesses);
                if !r.checks.is_empty() {
                    let seed = r.seed.map_or_else(|| "-".into(), |s| s.to_string());
                    let _ = writeln!(out, "spot checks (seed {seed}):");
                    rows_table(&mut out, &r.checks);
                }
                warning_lines(&mut out, &r.warnings);
            }
            Report::Cover(r) => {
                if let Some(p) = &r.presentation {
                    out.push_str(p);
                }
                let _ = writeln!(out, "# cover of {} by {}", r.name, r.quotient);
                let _ = writeln!(out, "# order {}, {} generators, {} relators", r.order, r.generators, r.relators);
                let _ = writeln!(out, "# H_1 = {}, β₁ = {}", r.abelianization, r.betti);
                if let Some(path) = &r.output {
                    let _ = writeln!(out, "# written to {path}");
                }
            }
            Report::Knot(r) => {
                let _ = writeln!(out, "Δ = {}", r.delta);
                let _ = writeln!(out, "grows: {}", if r.grows { "yes" } else { "no" });
                if !r.witnesses.is_empty() {
                    let _ = writeln!(out, "{:>4}  {:>8}", "n", "β₁");
                    for (d, b) in &r.witnesses {
                        let _ = writeln!(out, "{d:>4}  {b:>8}");
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// Tables become CSV records; scalar reports become `field,value` pairs.
    pub fn to_csv(&self) -> csv::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match self {
            Report::Growth(GrowthReport { rows, .. }) | Report::Classify(ClassifyReport { checks: rows, .. }) => {
                w.write_record(["n", "betti_formula", "betti_oracle"])?;
                for r in rows {
                    let oracle = r.betti_oracle.map(|v| v.to_string()).unwrap_or_default();
                    w.write_record([r.n.to_string(), r.betti_formula.to_string(), oracle])?;
                }
            }
            Report::Knot(r) => {
                w.write_record(["n", "betti"])?;
                for (d, b) in &r.witnesses {
                    w.write_record([d.to_string(), b.to_string()])?;
                }
            }
            Report::Analyze(r) => {
                w.write_record(["field", "value"])?;
                let fields = [
                    ("name", r.name.clone()),
                    ("betti", r.betti.to_string()),
                    ("abelianization", r.abelianization.clone()),
                    ("module", r.module.clone()),
                    ("rank", r.rank.to_string()),
                    ("torsion", r.torsion_factors.join("; ")),
                    ("n", r.n.to_string()),
                    ("growth", r.growth.to_string()),
                ];
                for (k, v) in fields {
                    w.write_record([k, v.as_str()])?;
                }
            }
            Report::Cover(r) => {
                w.write_record(["field", "value"])?;
                let fields = [
                    ("name", r.name.clone()),
                    ("quotient", r.quotient.clone()),
                    ("order", r.order.to_string()),
                    ("generators", r.generators.to_string()),
                    ("relators", r.relators.to_string()),
                    ("betti", r.betti.to_string()),
                    ("abelianization", r.abelianization.clone()),
                ];
                for (k, v) in fields {
                    w.write_record([k, v.as_str()])?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }
}
