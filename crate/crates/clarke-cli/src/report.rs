//! Reports and their TSV and JSON renderings.

use clarke_core::table::{parse_rat, rat_to_string};
use clarke_core::{Bidegree, HodgeTable};
use serde::{Deserialize, Serialize};

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// Tab-separated `lambda mu dim` rows.
    Tsv,
    /// A JSON document with metadata.
    Json,
}

/// Overall outcome of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// Everything checked passed.
    Pass,
    /// A validation or duality predicate failed.
    Fail,
}

/// A Hodge table with a label such as `space` or `mirror`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTable {
    /// Label.
    pub label: String,
    /// Table.
    pub table: HodgeTable,
}

/// A cell of a regular subdivision, in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    /// Dimension.
    pub dim: usize,
    /// Point indices.
    pub points: Vec<usize>,
    /// Coordinates of the vertices.
    pub vertices: Vec<Vec<i64>>,
}

/// Jordan block sizes at one eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanRecord {
    /// Eigenvalue.
    pub eigenvalue: i64,
    /// Block sizes in decreasing order.
    pub blocks: Vec<usize>,
}

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    /// Verb that produced the report.
    pub verb: String,
    /// SHA-256 of the input bytes.
    pub input_hash: String,
    /// Lattice rank, when meaningful.
    pub rank: Option<usize>,
    /// Pass or fail.
    pub status: Status,
    /// Tables in output order.
    pub tables: Vec<LabeledTable>,
    /// Human-readable findings.
    pub diagnostics: Vec<String>,
    /// Subdivision cells, when requested.
    pub cells: Option<Vec<CellRecord>>,
    /// Jordan profiles, for the `jordan` verb.
    pub jordan: Option<Vec<JordanRecord>>,
}

impl Report {
    /// An empty passing report.
    pub fn new(verb: &str, input_hash: String) -> Self {
        Self {
            verb: verb.to_string(),
            input_hash,
            rank: None,
            status: Status::Pass,
            tables: Vec::new(),
            diagnostics: Vec::new(),
            cells: None,
            jordan: None,
        }
    }

    /// Appends a labeled table.
    pub fn table(&mut self, label: &str, table: HodgeTable) {
        self.tables.push(LabeledTable { label: label.to_string(), table });
    }

    /// Records a failure with a diagnostic.
    pub fn fail(&mut self, msg: impl Into<String>) {
        self.status = Status::Fail;
        self.diagnostics.push(msg.into());
    }

    /// Records a diagnostic without changing the status.
    pub fn note(&mut self, msg: impl Into<String>) {
        self.diagnostics.push(msg.into());
    }

    /// Exit code: 0 on pass, 1 on fail.
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

/// The human-readable Jordan line, `λ=−1: [2]; λ=1: [3,1,1]`.
pub fn jordan_line(records: &[JordanRecord]) -> String {
    records
        .iter()
        .map(|r| {
            let ev = if r.eigenvalue < 0 { format!("\u{2212}{}", -r.eigenvalue) } else { r.eigenvalue.to_string() };
            let blocks: Vec<String> = r.blocks.iter().map(usize::to_string).collect();
            format!("λ={ev}: [{}]", blocks.join(","))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// TSV rows of one table: header then rows sorted by `λ`, then `μ`.
pub fn table_tsv(table: &HodgeTable) -> String {
    let mut out = String::from("lambda\tmu\tdim\n");
    for (b, d) in table.iter() {
        out.push_str(&format!("{}\t{}\t{}\n", rat_to_string(&b.lambda), rat_to_string(&b.mu), d));
    }
    out
}

/// Standard output for the TSV form. With several tables each is preceded
/// by a `# label` line; cells and Jordan profiles have their own layouts.
pub fn emit_tsv(report: &Report) -> String {
    let mut out = String::new();
    if let Some(j) = &report.jordan {
        out.push_str(&jordan_line(j));
        out.push('\n');
    }
    if let Some(cells) = &report.cells {
        out.push_str("cell\tdim\tvertices\n");
        for (i, c) in cells.iter().enumerate() {
            let verts: Vec<String> = c
                .vertices
                .iter()
                .map(|v| v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                .collect();
            out.push_str(&format!("{i}\t{}\t{}\n", c.dim, verts.join(";")));
        }
        return out;
    }
    let labeled = report.tables.len() > 1;
    for (i, t) in report.tables.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if labeled {
            out.push_str(&format!("# {}\n", t.label));
        }
        out.push_str(&table_tsv(&t.table));
    }
    out
}

/// Diagnostics for standard error in the TSV form.
pub fn emit_diagnostics(report: &Report) -> String {
    let mut out = format!("status: {}\n", if report.status == Status::Pass { "pass" } else { "fail" });
    for d in &report.diagnostics {
        out.push_str(d);
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    lambda: String,
    mu: String,
    dim: u64,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    side: String,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    verb: String,
    input_hash: String,
    rank: Option<usize>,
    status: Status,
    tables: Vec<TableJson>,
    diagnostics: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<CellRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    jordan: Option<Vec<JordanRecord>>,
}

/// The JSON form: the same triples as the TSV form plus metadata, with
/// rationals as strings.
pub fn emit_json(report: &Report) -> String {
    let doc = ReportJson {
        verb: report.verb.clone(),
        input_hash: report.input_hash.clone(),
        rank: report.rank,
        status: report.status,
        tables: report
            .tables
            .iter()
            .map(|t| TableJson {
                side: t.label.clone(),
                entries: t
                    .table
                    .iter()
                    .map(|(b, d)| EntryJson { lambda: rat_to_string(&b.lambda), mu: rat_to_string(&b.mu), dim: d })
                    .collect(),
            })
            .collect(),
        diagnostics: report.diagnostics.clone(),
        cells: report.cells.clone(),
        jordan: report.jordan.clone(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

/// Parses a JSON report back into a [`Report`].
pub fn parse_json(text: &str) -> Result<Report, String> {
    let doc: ReportJson = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let mut tables = Vec::with_capacity(doc.tables.len());
    for t in doc.tables {
        let mut table = HodgeTable::new();
        for e in t.entries {
            let l = parse_rat(&e.lambda).ok_or_else(|| format!("bad rational {:?}", e.lambda))?;
            let m = parse_rat(&e.mu).ok_or_else(|| format!("bad rational {:?}", e.mu))?;
            table.add(Bidegree::new(l, m), e.dim);
        }
        tables.push(LabeledTable { label: t.side, table });
    }
    Ok(Report {
        verb: doc.verb,
        input_hash: doc.input_hash,
        rank: doc.rank,
        status: doc.status,
        tables,
        diagnostics: doc.diagnostics,
        cells: doc.cells,
        jordan: doc.jordan,
    })
}

/// Renders a report in the chosen format.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Tsv => emit_tsv(report),
        Format::Json => emit_json(report),
    }
}
