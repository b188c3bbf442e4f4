//! Command definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clarke_core::constructions::{
    bhk_pair, cayley_pair, stacky_hypersurface_pair, weak_fano_pair, CayleyVariant,
};
use clarke_core::duality::{stalk_mismatches, ClarkePair, DualityReport, PairReport, Side};
use clarke_core::fan::StackyFan;
use clarke_core::linalg::{jordan_profile, rat, RatMatrix};
use clarke_core::polytope::Hull;
use clarke_core::table::rat_to_string;
use clarke_core::tropical::{
    clarke_heights, clarke_tropical_poset, jacobian_sheaf, regular_subdivision, trop_poset_0, HeightedPoints,
    RegularSubdivision,
};
use clarke_core::HodgeTable;
use sha2::{Digest, Sha256};

use crate::bundled::{find, EXAMPLES};
use crate::compute::hodge_table;
use crate::formats::{Document, FormatError, HypersurfaceDoc, PairDoc};
use crate::report::{emit, emit_diagnostics, CellRecord, Format, JordanRecord, Report, Status};

/// Exact irregular Hodge numbers of toric Landau–Ginzburg pairs.
#[derive(Debug, Clone, Parser)]
#[command(name = "clarke", version, about)]
pub struct Cli {
    /// The verb.
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    pub format: Format,
    /// Worker threads for per-block cohomology.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
}

/// Which tables to print.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    /// Only the space side.
    Space,
    /// Only the mirror side.
    Mirror,
    /// Space side then mirror side.
    Both,
}

impl SideArg {
    fn sides(self) -> &'static [Side] {
        match self {
            SideArg::Space => &[Side::Space],
            SideArg::Mirror => &[Side::Mirror],
            SideArg::Both => &[Side::Space, Side::Mirror],
        }
    }
}

/// Cayley pair variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// Full fan with the open dual fan.
    Compact,
    /// Open fan with the full dual fan.
    OpenSpace,
    /// Both open.
    OpenBoth,
}

impl From<VariantArg> for CayleyVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Compact => CayleyVariant::Compact,
            VariantArg::OpenSpace => CayleyVariant::OpenSpace,
            VariantArg::OpenBoth => CayleyVariant::OpenBoth,
        }
    }
}

/// Input path and strictness shared by the pair verbs.
#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// Input document.
    pub input: PathBuf,
    /// Treat convexity and quasiprojectivity failures as errors.
    #[arg(long)]
    pub strict: bool,
}

/// Verbs.
#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check fan or pair predicates and report witnesses.
    Validate(PairArgs),
    /// Hodge tables of a pair or stacky hypersurface.
    Hodge {
        #[command(flatten)]
        pair: PairArgs,
        /// Tables to print.
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Table and stalkwise duality check.
    Duality(PairArgs),
    /// Build the weak Fano pair of a fan and compute its tables.
    WeakFano {
        /// Fan or pair document.
        input: PathBuf,
        /// Tables to print.
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
    },
    /// Build the BHK pair and compute its tables.
    Bhk {
        #[command(flatten)]
        pair: PairArgs,
        /// Tables to print.
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        /// Replace the group by the maximal diagonal group.
        #[arg(long)]
        maximal_group: bool,
    },
    /// Build the Cayley pair of a nef partition and compute its tables.
    Nef {
        #[command(flatten)]
        pair: PairArgs,
        /// Tables to print.
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        /// Cayley variant.
        #[arg(long, value_enum, default_value = "compact")]
        variant: VariantArg,
        /// Also print the space table shifted by the codimension.
        #[arg(long)]
        regrade: bool,
    },
    /// Regular subdivision cells and the tropical Hodge table.
    Trop {
        /// Heighted-points or pair document.
        input: PathBuf,
        /// Use the orbifold Jacobian sheaf.
        #[arg(long)]
        orbifold: bool,
        /// Print cell coordinates instead of tables.
        #[arg(long)]
        emit_cells: bool,
    },
    /// List the bundled examples or run one by name.
    Examples {
        /// Example to run.
        name: Option<String>,
        /// Print the bundled document instead of running it.
        #[arg(long)]
        show: bool,
    },
    /// Jordan block sizes at −1 and 1 of a matrix.
    Jordan {
        /// Matrix document.
        input: PathBuf,
    },
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Hodge { .. } => "hodge",
            Command::Duality(_) => "duality",
            Command::WeakFano { .. } => "weak-fano",
            Command::Bhk { .. } => "bhk",
            Command::Nef { .. } => "nef",
            Command::Trop { .. } => "trop",
            Command::Examples { .. } => "examples",
            Command::Jordan { .. } => "jordan",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate(p) | Command::Duality(p) => Some(&p.input),
            Command::Hodge { pair, .. }
            | Command::Bhk { pair, .. }
            | Command::Nef { pair, .. } => Some(&pair.input),
            Command::WeakFano { input, .. } | Command::Trop { input, .. } | Command::Jordan { input } => Some(input),
            Command::Examples { .. } => None,
        }
    }
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Exit code: 0 success, 1 validation or duality failure, 2 parse error.
    pub code: i32,
    /// Standard output.
    pub stdout: String,
    /// Standard error.
    pub stderr: String,
}

impl Outcome {
    fn parse_error(e: impl std::fmt::Display) -> Self {
        Self { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") }
    }

    fn from_report(report: &Report, format: Format) -> Self {
        let stderr = if format == Format::Tsv { emit_diagnostics(report) } else { String::new() };
        Self { code: report.exit_code(), stdout: emit(report, format), stderr }
    }
}

/// Hex SHA-256 of the input bytes.
pub fn input_hash(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs a parsed command line, reading inputs from disk.
pub fn run(cli: &Cli) -> Outcome {
    if let Command::Examples { name, show } = &cli.command {
        return run_examples(name.as_deref(), *show, cli);
    }
    let path = cli.command.input().expect("every other verb has an input path");
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::parse_error(format!("cannot read {}: {e}", path.display())),
    };
    run_on_text(cli, &text)
}

/// Runs a parsed command line on the given document text.
pub fn run_on_text(cli: &Cli, text: &str) -> Outcome {
    match execute(&cli.command, text, cli.jobs as usize) {
        Ok(report) => Outcome::from_report(&report, cli.format),
        Err(e) => Outcome::parse_error(e),
    }
}

fn run_examples(name: Option<&str>, show: bool, cli: &Cli) -> Outcome {
    let Some(name) = name else {
        let stdout = match cli.format {
            Format::Tsv => {
                let mut s = String::from("name\tfile\tcommand\tdescription\n");
                for e in EXAMPLES {
                    s.push_str(&format!("{}\t{}\t{}\t{}\n", e.name, e.file, e.args.join(" "), e.description));
                }
                s
            }
            Format::Json => {
                let list: Vec<serde_json::Value> = EXAMPLES
                    .iter()
                    .map(|e| {
                        serde_json::json!({
                            "name": e.name, "file": e.file, "command": e.args.join(" "), "description": e.description
                        })
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&list).expect("list serializes");
                s.push('\n');
                s
            }
        };
        return Outcome { code: 0, stdout, stderr: String::new() };
    };
    let Some(example) = find(name) else {
        return Outcome::parse_error(format!("unknown example {name:?}; run `clarke examples` for the list"));
    };
    if show {
        return Outcome { code: 0, stdout: example.content.to_string(), stderr: String::new() };
    }
    let inner = example_cli(example, cli.format, cli.jobs);
    run_on_text(&inner, example.content)
}

/// The command line that runs a bundled example.
pub fn example_cli(example: &crate::bundled::Example, format: Format, jobs: u16) -> Cli {
    let mut args: Vec<String> = vec!["clarke".into()];
    args.extend(example.args.iter().map(|s| s.to_string()));
    args.push(example.file.into());
    let mut cli = Cli::try_parse_from(args).expect("bundled command lines parse");
    cli.format = format;
    cli.jobs = jobs;
    cli
}

/// Executes one verb on a document. Parse and format problems are errors;
/// failed predicates are recorded in the report.
pub fn execute(cmd: &Command, text: &str, jobs: usize) -> Result<Report, FormatError> {
    let doc = Document::parse(text)?;
    let mut report = Report::new(cmd.verb(), input_hash(text));
    let wrong = |expected: &str| FormatError(format!("{} expects {expected}, got a {} document", cmd.verb(), doc.kind()));
    match cmd {
        Command::Validate(args) => match &doc {
            Document::Fan(f) => validate_fan(&f.to_fan()?, args.strict, &mut report),
            Document::Pair(p) => {
                let (m, n) = pair_fans(p)?;
                report.rank = Some(m.rank());
                validate_pair(&ClarkePair::report(&m, &n), args.strict, &mut report);
            }
            _ => return Err(wrong("a fan or pair document")),
        },
        Command::Hodge { pair, side } => {
            let p = match &doc {
                Document::Pair(p) => build_pair(p, pair.strict, &mut report)?,
                Document::Hypersurface(h) => build_hypersurface(h, &mut report)?,
                _ => return Err(wrong("a pair or hypersurface document")),
            };
            if let Some(p) = p {
                strict_audit(&p, pair.strict, &mut report);
                tables(&p, *side, jobs, &mut report);
            }
        }
        Command::Duality(args) => {
            let p = match &doc {
                Document::Pair(p) => build_pair(p, args.strict, &mut report)?,
                Document::Hypersurface(h) => build_hypersurface(h, &mut report)?,
                _ => return Err(wrong("a pair or hypersurface document")),
            };
            if let Some(p) = p {
                strict_audit(&p, args.strict, &mut report);
                duality(&p, jobs, &mut report);
            }
        }
        Command::WeakFano { side, .. } => {
            let fan = match &doc {
                Document::Fan(f) => f.to_fan()?,
                Document::Pair(p) => p.sigma.to_fan()?,
                _ => return Err(wrong("a fan document")),
            };
            report.rank = Some(fan.rank());
            match weak_fano_pair(fan.clone()) {
                Ok(p) => {
                    tables(&p, *side, jobs, &mut report);
                    volume_check(&p, &fan, jobs, &mut report);
                }
                Err(e) => report.fail(format!("weak Fano construction: {e}")),
            }
        }
        Command::Bhk { pair, side, maximal_group } => {
            let Document::Bhk(b) = &doc else { return Err(wrong("a BHK document")) };
            report.rank = Some(b.matrix.len());
            match b.to_data(*maximal_group)?.and_then(|d| bhk_pair(&d).map_err(|e| e.to_string())) {
                Ok(p) => {
                    strict_audit(&p, pair.strict, &mut report);
                    tables(&p, *side, jobs, &mut report);
                }
                Err(e) => report.fail(format!("BHK construction: {e}")),
            }
        }
        Command::Nef { pair, side, variant, regrade } => {
            let Document::Nef(n) = &doc else { return Err(wrong("a nef partition document")) };
            let built = n
                .to_partition()
                .and_then(|np| cayley_pair(&np, (*variant).into()).map(|p| (np.k(), p)).map_err(|e| e.to_string()));
            match built {
                Ok((k, p)) => {
                    report.rank = Some(p.rank());
                    strict_audit(&p, pair.strict, &mut report);
                    tables(&p, *side, jobs, &mut report);
                    if *regrade {
                        let space = match report.tables.iter().find(|t| t.label == "space") {
                            Some(t) => t.table.clone(),
                            None => side_table(&p, Side::Space, jobs),
                        };
                        report.table("space-regraded", space.cayley_regrade(k as u32));
                    }
                }
                Err(e) => report.fail(format!("Cayley construction: {e}")),
            }
        }
        Command::Trop { orbifold, emit_cells, .. } => match &doc {
            Document::Points(pd) => {
                let hp = pd.to_points()?;
                report.rank = Some(hp.rank());
                let sd = regular_subdivision(&hp);
                if *emit_cells {
                    report.cells = Some(cell_records(&hp, &sd));
                }
                match &pd.fan {
                    Some(f) => {
                        let fan = f.to_fan()?;
                        match trop_poset_0(&fan, &hp, &sd).and_then(|tp| jacobian_sheaf(&tp, *orbifold)) {
                            Ok(sheaf) => report.table("tropical", hodge_table(&sheaf, jobs)),
                            Err(e) => report.fail(format!("tropical poset: {e}")),
                        }
                    }
                    None => report.note("no fan given; only the subdivision is computed"),
                }
            }
            Document::Pair(p) => {
                if let Some(pair) = build_pair(p, false, &mut report)? {
                    trop_pair(&pair, *orbifold, *emit_cells, jobs, &mut report);
                }
            }
            _ => return Err(wrong("a heighted-points or pair document")),
        },
        Command::Jordan { .. } => {
            let Document::Matrix(m) = &doc else { return Err(wrong("a matrix document")) };
            let rows = m.to_rows()?;
            report.rank = Some(rows.len());
            let a = RatMatrix::from_rows(rows);
            let target = if m.seifert {
                match a.inverse() {
                    Ok(inv) => inv.mul(&a.transpose()),
                    Err(_) => {
                        report.fail("the Seifert matrix is singular");
                        return Ok(report);
                    }
                }
            } else {
                a
            };
            let mut records = Vec::new();
            for ev in [-1i64, 1] {
                let blocks = jordan_profile(&target, &rat(ev)).map_err(|e| FormatError(e.to_string()))?;
                records.push(JordanRecord { eigenvalue: ev, blocks });
            }
            report.jordan = Some(records);
        }
        Command::Examples { .. } => return Err(FormatError("examples has no input document".into())),
    }
    Ok(report)
}

fn pair_fans(p: &PairDoc) -> Result<(StackyFan, StackyFan), FormatError> {
    Ok((p.sigma.to_fan()?, p.sigma_check.to_fan()?))
}

fn build_pair(p: &PairDoc, strict: bool, report: &mut Report) -> Result<Option<ClarkePair>, FormatError> {
    let (m, n) = pair_fans(p)?;
    report.rank = Some(m.rank());
    let built = if strict { ClarkePair::new_strict(m, n) } else { ClarkePair::new(m, n) };
    Ok(match built {
        Ok(pair) => Some(pair),
        Err(e) => {
            report.fail(format!("pair rejected: {e}"));
            None
        }
    })
}

fn build_hypersurface(h: &HypersurfaceDoc, report: &mut Report) -> Result<Option<ClarkePair>, FormatError> {
    let sigma = h.sigma.to_fan()?;
    report.rank = Some(sigma.rank() + 1);
    Ok(match stacky_hypersurface_pair(&sigma, &h.phi) {
        Ok(pair) => Some(pair),
        Err(e) => {
            report.fail(format!("hypersurface construction: {e}"));
            None
        }
    })
}

fn strict_audit(pair: &ClarkePair, strict: bool, report: &mut Report) {
    if strict {
        let pr = ClarkePair::report(pair.fan_m(), pair.fan_n());
        for f in pr.failures(true) {
            report.fail(format!("predicate failed: {f}"));
        }
    }
}

fn validate_fan(fan: &StackyFan, strict: bool, report: &mut Report) {
    report.rank = Some(fan.rank());
    let violations = fan.validate();
    if violations.is_empty() {
        report.note("validity: pass");
    } else {
        report.fail(format!("validity: fail {violations:?}"));
    }
    match fan.convexity_check() {
        Ok(c) if c.convex => report.note("convexity: pass"),
        Ok(c) => {
            let msg = format!(
                "convexity: fail (pure {}, simplex volume {}, hull volume {})",
                c.pure, c.simplex_volume_sum, c.hull_volume
            );
            if strict {
                report.fail(msg)
            } else {
                report.note(msg)
            }
        }
        Err(e) => report.fail(format!("convexity: error {e}")),
    }
    match fan.find_support_function(true) {
        Some(phi) => {
            let vals: Vec<String> = phi.values.iter().map(ToString::to_string).collect();
            report.note(format!("quasiprojectivity: pass (support function values [{}])", vals.join(",")));
        }
        None if strict => report.fail("quasiprojectivity: fail"),
        None => report.note("quasiprojectivity: fail"),
    }
}

fn validate_pair(pr: &PairReport, strict: bool, report: &mut Report) {
    let flag = |b: bool| if b { "pass" } else { "fail" };
    report.note(format!("space validity: {} {:?}", flag(pr.space_violations.is_empty()), pr.space_violations));
    report.note(format!("mirror validity: {} {:?}", flag(pr.mirror_violations.is_empty()), pr.mirror_violations));
    report.note(format!("regularity: {}", flag(pr.regular)));
    report.note(format!("space convexity: {}", flag(pr.space_convex)));
    report.note(format!("mirror convexity: {}", flag(pr.mirror_convex)));
    report.note(format!("space quasiprojectivity: {}", flag(pr.space_quasiprojective)));
    report.note(format!("mirror quasiprojectivity: {}", flag(pr.mirror_quasiprojective)));
    let failures = pr.failures(strict);
    if !failures.is_empty() {
        report.status = Status::Fail;
        report.note(format!("failing predicates: {}", failures.join(", ")));
    }
}

fn side_table(pair: &ClarkePair, side: Side, jobs: usize) -> HodgeTable {
    hodge_table(&pair.sheaf(side).1, jobs)
}

fn tables(pair: &ClarkePair, side: crate::run::SideArg, jobs: usize, report: &mut Report) {
    report.rank = Some(pair.rank());
    for &s in side.sides() {
        report.table(s.name(), side_table(pair, s, jobs));
    }
}

fn duality(pair: &ClarkePair, jobs: usize, report: &mut Report) {
    let pp = pair.pair_poset();
    let xi = pair.sheaf_on(&pp, Side::Space);
    let xi_check = pair.sheaf_on(&pp, Side::Mirror);
    let d = pair.rank();
    let r = DualityReport::from_parts(
        d,
        hodge_table(&xi, jobs),
        hodge_table(&xi_check, jobs),
        stalk_mismatches(d, &xi, &xi_check),
    );
    for (b, x, y) in &r.table_mismatches {
        report.fail(format!("table duality fails at {b}: space {x}, reflected mirror {y}"));
    }
    for (x, b, u, v) in &r.stalk_mismatches {
        report.fail(format!("stalk duality fails at element {x}, bidegree {b}: {u} vs {v}"));
    }
    if r.passed() {
        report.note(format!("duality holds at {} poset elements", pp.elements.len()));
    }
    report.table("space", r.space);
    report.table("mirror", r.mirror);
}

fn volume_check(pair: &ClarkePair, fan: &StackyFan, jobs: usize, report: &mut Report) {
    let mirror = match report.tables.iter().find(|t| t.label == "mirror") {
        Some(t) => t.table.clone(),
        None => side_table(pair, Side::Mirror, jobs),
    };
    let mut pts = vec![vec![0; fan.rank()]];
    pts.extend((0..fan.rays().len()).map(|i| fan.scaled_ray(i)));
    match Hull::of_lattice(&pts).normalized_volume() {
        Ok(v) => {
            let msg = format!("mirror total {} against normalized volume {v}", mirror.total());
            if clarke_core::Int::from(mirror.total()) == v {
                report.note(msg)
            } else {
                report.fail(msg)
            }
        }
        Err(e) => report.fail(format!("volume: {e}")),
    }
}

fn cell_records(hp: &HeightedPoints, sd: &RegularSubdivision) -> Vec<CellRecord> {
    sd.cells
        .iter()
        .map(|c| CellRecord {
            dim: c.dim,
            points: c.points.clone(),
            vertices: c.vertices.iter().map(|&v| hp.points()[v].clone()).collect(),
        })
        .collect()
}

fn trop_pair(pair: &ClarkePair, orbifold: bool, emit_cells: bool, jobs: usize, report: &mut Report) {
    let hp = match clarke_heights(pair) {
        Ok(hp) => hp,
        Err(e) => return report.fail(format!("heights: {e}")),
    };
    let heights: Vec<String> = hp.heights().iter().map(rat_to_string).collect();
    report.note(format!("heights from a strictly convex support function: [{}]", heights.join(",")));
    if emit_cells {
        report.cells = Some(cell_records(&hp, &regular_subdivision(&hp)));
    }
    let sheaf = match clarke_tropical_poset(pair).and_then(|tp| jacobian_sheaf(&tp, orbifold)) {
        Ok(s) => s,
        Err(e) => return report.fail(format!("tropical poset: {e}")),
    };
    let trop = hodge_table(&sheaf, jobs);
    if orbifold {
        let mirror = side_table(pair, Side::Mirror, jobs);
        let diffs = trop.differences(&mirror);
        for (b, x, y) in &diffs {
            report.fail(format!("tropical table differs from the mirror table at {b}: {x} vs {y}"));
        }
        if diffs.is_empty() {
            report.note("tropical table equals the mirror table");
        }
    }
    report.table("tropical", trop);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("clarke").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_are_verb_specific() {
        assert!(Cli::try_parse_from(["clarke", "jordan", "x", "--side", "both"]).is_err());
        assert!(Cli::try_parse_from(["clarke", "hodge", "x", "--orbifold"]).is_err());
        assert!(Cli::try_parse_from(["clarke", "hodge", "x", "--jobs", "0"]).is_err());
        assert!(Cli::try_parse_from(["clarke", "trop", "x", "--orbifold", "--emit-cells", "--jobs", "4"]).is_ok());
    }

    #[test]
    fn wrong_document_kind_is_a_parse_error() {
        let cli = parse(&["jordan", "x"]);
        let out = run_on_text(&cli, include_str!("../data/p2-weakfano.pair"));
        assert_eq!(out.code, 2);
    }

    #[test]
    fn irregular_pair_fails_validation() {
        let text = r#"{"sigma": {"rank": 1, "rays": [[1]], "cones": [[0]]},
                      "sigma_check": {"rank": 1, "rays": [[-1]], "cones": [[0]]}}"#;
        let out = run_on_text(&parse(&["validate", "x"]), text);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("regularity"));
        let out = run_on_text(&parse(&["hodge", "x"]), text);
        assert_eq!(out.code, 1);
    }

    #[test]
    fn strict_validation_of_a_nonconvex_fan() {
        let text = r#"{"rank": 2, "rays": [[1, 0], [0, 1], [-1, 0], [3, -1]],
                      "cones": [[0, 1], [1, 2], [2, 3], [3, 0]]}"#;
        assert_eq!(run_on_text(&parse(&["validate", "x"]), text).code, 0);
        let out = run_on_text(&parse(&["validate", "x", "--strict"]), text);
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("convexity: fail"));
    }

    #[test]
    fn hash_is_sha256() {
        assert_eq!(input_hash(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
