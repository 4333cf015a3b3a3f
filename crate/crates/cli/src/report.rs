//! Tabular reports rendered as CSV or as a structured JSON document.
//!
//! Rendering is a pure function of the report, so identical runs produce
//! byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use intlat_core::bounds::{BoundReport, BoundSet};
use intlat_core::roots::{K2Report, RootSystemDecomposition};
use intlat_core::theta::{ConjectureRow, CorollaryReport, ThetaEvaluation};
use intlat_core::Census;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Structured,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Decimal integer of any size.
    Int(String),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(v: impl ToString) -> Cell {
        Cell::Int(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Cell {
        Cell::Text(v.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Float(x) => format_float(*x),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(s) => Value::Number(Number::from_str(s).expect("decimal integer")),
            Cell::Float(x) => float_json(*x),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else if x > 0.0 {
        "inf".into()
    } else if x < 0.0 {
        "-inf".into()
    } else {
        "nan".into()
    }
}

fn float_json(x: f64) -> Value {
    if x.is_finite() {
        Value::Number(Number::from_str(&format!("{x:e}")).expect("finite float"))
    } else {
        Value::String(format_float(x))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Table {
        Table {
            name,
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width for table {}",
            self.name
        );
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub command: &'static str,
    /// Scalar context such as the lattice name, only shown in structured
    /// output.
    pub meta: Vec<(&'static str, Value)>,
    pub tables: Vec<Table>,
    /// One-line findings; `# `-prefixed in CSV.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Report {
        Report {
            command,
            ..Report::default()
        }
    }

    pub fn meta(mut self, key: &'static str, value: impl Into<Value>) -> Report {
        self.meta.push((key, value.into()));
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
                s.push('\n');
                s
            }
        }
    }

    /// A single table prints bare; several tables get a `# name` line each.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let labelled = self.tables.len() > 1;
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            if labelled {
                let _ = writeln!(out, "# {}", t.name);
            }
            let _ = writeln!(out, "{}", t.columns.join(","));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(self.command.into()));
        for (k, v) in &self.meta {
            obj.insert((*k).into(), v.clone());
        }
        for t in &self.tables {
            let rows = t
                .rows
                .iter()
                .map(|row| {
                    Value::Object(
                        t.columns
                            .iter()
                            .zip(row)
                            .map(|(c, v)| ((*c).to_string(), v.json()))
                            .collect(),
                    )
                })
                .collect();
            obj.insert(t.name.into(), Value::Array(rows));
        }
        if !self.notes.is_empty() {
            obj.insert(
                "notes".into(),
                Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
            );
        }
        Value::Object(obj)
    }
}

fn big(v: &impl ToString) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer"))
}

pub fn census_table(census: &Census) -> Table {
    let mut t = Table::new("census", &["k", "on_sphere", "in_ball"]);
    for (k, ball) in census.in_ball_all().iter().enumerate() {
        t.push(vec![
            Cell::int(k),
            Cell::int(census.on_sphere(k as u64)),
            Cell::int(ball),
        ]);
    }
    t
}

pub fn census_report(lattice: &str, census: &Census) -> Report {
    let mut r = Report::new("census")
        .meta("lattice", lattice)
        .meta("n", census.rank())
        .meta("max_norm", census.max_norm())
        .meta("method", census.method().name())
        .meta(
            "on_sphere",
            Value::Array(census.counts().iter().map(big).collect()),
        );
    r.tables.push(census_table(census));
    r
}

pub fn bound_verdict(row: &intlat_core::bounds::BoundRow) -> &'static str {
    if !row.pass() {
        "fail"
    } else if row.tight() {
        "tight"
    } else {
        "pass"
    }
}

pub fn bound_report_table(report: &BoundReport) -> Table {
    let mut t = Table::new(
        "bounds",
        &[
            "k",
            "on_sphere",
            "sphere_upper",
            "in_ball",
            "ball_upper",
            "verdict",
        ],
    );
    for row in &report.rows {
        t.push(vec![
            Cell::int(row.k),
            Cell::int(&row.on_sphere),
            Cell::int(&row.sphere_upper),
            Cell::int(&row.in_ball),
            Cell::int(&row.ball_upper),
            Cell::text(bound_verdict(row)),
        ]);
    }
    t
}

pub fn bound_set_table(sets: &[BoundSet]) -> Table {
    let mut t = Table::new(
        "bounds",
        &[
            "n",
            "k",
            "sphere_upper",
            "ball_upper",
            "asymptotic_leading",
            "zn_sphere_lower",
            "dgs",
            "minkowski_lower",
            "rm_upper",
        ],
    );
    for s in sets {
        t.push(vec![
            Cell::int(s.n),
            Cell::int(s.k),
            Cell::int(&s.sphere_upper),
            Cell::int(&s.ball_upper),
            Cell::int(&s.asymptotic_leading),
            s.zn_sphere_lower.as_ref().map_or(Cell::Empty, Cell::int),
            Cell::int(&s.dgs),
            Cell::Float(s.minkowski_lower),
            Cell::Float(s.rm_upper),
        ]);
    }
    t
}

pub fn theta_table(evals: &[ThetaEvaluation]) -> Table {
    let mut t = Table::new(
        "theta",
        &[
            "tau",
            "truncation",
            "partial_mass",
            "tail_upper",
            "lower",
            "upper",
            "certified",
        ],
    );
    for e in evals {
        t.push(vec![
            Cell::Float(e.tau),
            Cell::int(e.truncation),
            Cell::Float(e.partial_mass),
            Cell::Float(e.tail_upper),
            Cell::Float(e.lower()),
            Cell::Float(e.upper()),
            Cell::Bool(e.certified),
        ]);
    }
    t
}

pub fn corollary_table(c: &CorollaryReport) -> Table {
    let mut t = Table::new(
        "corollary",
        &[
            "tau",
            "partial_mass",
            "tail_upper",
            "closed_form",
            "slack",
            "implied_constant",
            "verdict",
        ],
    );
    t.push(vec![
        Cell::Float(c.tau()),
        Cell::Float(c.evaluation.partial_mass),
        Cell::Float(c.evaluation.tail_upper),
        Cell::Float(c.closed_form),
        Cell::Float(c.slack),
        Cell::Float(c.implied_constant),
        Cell::text(if c.pass() { "pass" } else { "fail" }),
    ]);
    t
}

pub fn conjecture_table(rows: &[ConjectureRow]) -> Table {
    let mut t = Table::new(
        "conjecture",
        &[
            "tau",
            "partial_mass",
            "tail_upper",
            "zn_mass",
            "zn_tail",
            "verdict",
        ],
    );
    for r in rows {
        t.push(vec![
            Cell::Float(r.tau),
            Cell::Float(r.lattice.partial_mass),
            Cell::Float(r.lattice.tail_upper),
            Cell::Float(r.zn.partial_mass),
            Cell::Float(r.zn.tail_upper),
            Cell::text(r.verdict.name()),
        ]);
    }
    t
}

pub fn roots_table(system: &RootSystemDecomposition) -> Table {
    let mut t = Table::new("roots", &["rank", "size", "norm1_count", "label"]);
    for c in &system.components {
        t.push(vec![
            Cell::int(c.rank),
            Cell::int(c.size),
            Cell::int(c.norm1_count),
            Cell::text(c.label.to_string()),
        ]);
    }
    t
}

pub fn k2_verdict(k2: &K2Report) -> String {
    let verdict = if !k2.pass() {
        "fail"
    } else if k2.tight() {
        "tight"
    } else {
        "pass"
    };
    format!(
        "N2={} f(n)+1={} rank_sum={} g_sum={} verdict={verdict}",
        k2.n2, k2.bound, k2.rank_sum, k2.g_sum
    )
}
