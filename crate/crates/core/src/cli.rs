//! Command line interface: a thin adapter over the library. Every command
//! reads the map file format, calls the corresponding library operation,
//! and prints a text or JSON report. Exit codes: 0 on success or an
//! affirmative finding, 1 on a negative finding (not polyhedral, cycle not
//! Hamiltonian, nothing found), 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::audit::run_audit;
use crate::dual::{build_dual, CycleSpec, EdgeSubgraph};
use crate::map::{
    check_polyhedral, equivelar_type, is_orientable, parse_map, validate_surface, Edge,
    EquivelarType, Label, SurfaceMap,
};
use crate::proper::{classify_proper_type, ProperType};
use crate::search::{
    generate_equivelar_torus, run_search, Algorithm, SearchMode, SearchRequest, TargetClass,
};
use crate::topology::{classify_cycle, region_euler_characteristic, regions_of_cycle};
use crate::{AuditStatus, Error};

#[derive(Parser)]
#[command(
    name = "polymap",
    about = "Polyhedral maps on closed surfaces: duals, Hamiltonian cycles, cycle topology",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file is a valid polyhedral map of a closed surface
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Report f-vector, Euler characteristic, equivelar type, orientability
    Info {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Compute the dual map and the face-to-vertex correspondence
    Dual {
        file: PathBuf,
        /// Write the dual map here instead of stdout
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write the correspondence as TSV (face boundary, dual vertex)
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Classify a cycle: contractible, non-separating, or noncontractible separating
    Classify {
        file: PathBuf,
        /// Comma-separated vertex labels; quote a token with backticks if
        /// it contains a comma or dash
        #[arg(long)]
        cycle: String,
        #[arg(long)]
        json: bool,
    },
    /// Check an edge set of a dual map for admissibility and proper type
    Proper {
        file: PathBuf,
        /// Comma-separated edges, each "a-b"; backtick-quote tokens that
        /// contain a dash
        #[arg(long)]
        edges: String,
        /// Number of vertices of the primal map (one per dual face)
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Search for Hamiltonian cycles in the edge graph
    Hamiltonian {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ClassArg::Any)]
        class: ClassArg,
        #[arg(long, value_enum, default_value_t = AlgoArg::DualSubset)]
        algo: AlgoArg,
        /// Stop at the first matching cycle
        #[arg(long, conflicts_with = "all")]
        first: bool,
        /// Collect all matching cycles (default)
        #[arg(long)]
        all: bool,
        /// Cap the number of results
        #[arg(long)]
        limit: Option<usize>,
        /// Run even above the exhaustive-search size limit
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Generate parametric maps
    Generate {
        #[command(subcommand)]
        what: GenerateCommand,
    },
    /// Re-run the recorded example suite on the shipped fixtures
    Audit {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Grid-quotient torus map of type {3,6}, {4,4}, or {6,3}
    Torus {
        /// Face/vertex type, e.g. 3,6
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        /// Column shift applied where the rows wrap around
        #[arg(long, default_value_t = 0)]
        shift: i64,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassArg {
    Any,
    Contractible,
    NonSeparating,
    NcSeparating,
}

impl From<ClassArg> for TargetClass {
    fn from(c: ClassArg) -> TargetClass {
        match c {
            ClassArg::Any => TargetClass::Any,
            ClassArg::Contractible => TargetClass::Contractible,
            ClassArg::NonSeparating => TargetClass::NonSeparating,
            ClassArg::NcSeparating => TargetClass::NoncontractibleSeparating,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgoArg {
    Enumerate,
    DualSubset,
    DiskGrow,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Algorithm {
        match a {
            AlgoArg::Enumerate => Algorithm::Enumerate,
            AlgoArg::DualSubset => Algorithm::DualSubset,
            AlgoArg::DiskGrow => Algorithm::DiskGrow,
        }
    }
}

/// Run one command. `args` excludes the binary name. Returns the process
/// exit code; all output goes to the two streams.
pub fn run<S: AsRef<str>>(args: &[S], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let argv = std::iter::once("polymap").chain(args.iter().map(|s| s.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Error> {
    match cmd {
        Command::Validate { file, json } => cmd_validate(&file, json, out),
        Command::Info { file, json } => cmd_info(&file, json, out),
        Command::Dual { file, out: out_file, table } => {
            cmd_dual(&file, out_file.as_deref(), table.as_deref(), out, err)
        }
        Command::Classify { file, cycle, json } => cmd_classify(&file, &cycle, json, out, err),
        Command::Proper { file, edges, n, json } => cmd_proper(&file, &edges, n, json, out, err),
        Command::Hamiltonian { file, class, algo, first, all: _, limit, force, json } => {
            let req = SearchRequest {
                target_class: class.into(),
                mode: if first { SearchMode::First } else { SearchMode::All },
                limit,
                algorithm: algo.into(),
                force,
            };
            cmd_hamiltonian(&file, &req, json, out, err)
        }
        Command::Generate { what } => match what {
            GenerateCommand::Torus { kind, rows, cols, shift, out: out_file } => {
                cmd_generate_torus(&kind, rows, cols, shift, &out_file, out)
            }
        },
        Command::Audit { json } => cmd_audit(json, out),
    }
}

fn read_map(path: &Path) -> Result<SurfaceMap, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::BadParameters(format!("cannot read {}: {e}", path.display())))?;
    parse_map(&text)
}

/// Commands whose results lean on duality theory warn when the input is a
/// valid surface but not polyhedral.
fn warn_if_not_polyhedral(map: &SurfaceMap, err: &mut dyn Write) {
    if !check_polyhedral(map).is_polyhedral {
        let _ = writeln!(
            err,
            "warning: input map is not polyhedral; classification guarantees do not apply"
        );
    }
}

fn require_valid(map: &SurfaceMap) -> Result<(), Error> {
    let report = validate_surface(map);
    if let Some(failure) = report.first_failure() {
        return Err(Error::InvalidSurface(failure));
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_validate(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, Error> {
    let map = read_map(path)?;
    let report = validate_surface(&map);
    let poly = check_polyhedral(&map);
    let ok = report.is_valid() && poly.is_polyhedral;
    if json {
        let value = json!({
            "schema": 1,
            "valid_surface": report.is_valid(),
            "polyhedral": poly.is_polyhedral,
            "first_failure": report.first_failure(),
        });
        let _ = writeln!(out, "{value}");
    } else {
        let _ = writeln!(out, "valid closed surface: {}", yes_no(report.is_valid()));
        if let Some(failure) = report.first_failure() {
            let _ = writeln!(out, "  {failure}");
        }
        let _ = writeln!(out, "polyhedral: {}", yes_no(poly.is_polyhedral));
        if let Some(v) = poly.violations.first() {
            let _ = writeln!(out, "  faces ({}) and ({}) meet badly", v.faces.0, v.faces.1);
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn cmd_info(path: &Path, json: bool, out: &mut dyn Write) -> Result<i32, Error> {
    let map = read_map(path)?;
    let valid = validate_surface(&map).is_valid();
    let poly = check_polyhedral(&map).is_polyhedral;
    let kind = equivelar_type(&map);
    if json {
        let value = json!({
            "schema": 1,
            "vertices": map.vertex_count(),
            "edges": map.edge_count(),
            "faces": map.face_count(),
            "euler_characteristic": map.euler_characteristic(),
            "equivelar_type": kind.map(|t| t.to_string()),
            "orientable": valid.then(|| is_orientable(&map)),
            "valid_surface": valid,
            "polyhedral": poly,
        });
        let _ = writeln!(out, "{value}");
    } else {
        let _ = writeln!(
            out,
            "f-vector: ({}, {}, {})",
            map.vertex_count(),
            map.edge_count(),
            map.face_count()
        );
        let _ = writeln!(out, "euler characteristic: {}", map.euler_characteristic());
        let _ = writeln!(
            out,
            "equivelar type: {}",
            kind.map_or_else(|| "none".to_string(), |t| t.to_string())
        );
        if valid {
            let _ = writeln!(out, "orientable: {}", yes_no(is_orientable(&map)));
        }
        let _ = writeln!(out, "valid closed surface: {}", yes_no(valid));
        let _ = writeln!(out, "polyhedral: {}", yes_no(poly));
    }
    Ok(0)
}

fn cmd_dual(
    path: &Path,
    out_file: Option<&Path>,
    table: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let map = read_map(path)?;
    require_valid(&map)?;
    warn_if_not_polyhedral(&map, err);
    let d = match build_dual(&map) {
        Ok(d) => d,
        Err(Error::DualMultiEdge(a, b)) => {
            let _ = writeln!(out, "no dual: faces {a} and {b} share more than one edge");
            return Ok(1);
        }
        Err(e) => return Err(e),
    };
    let text = crate::map::write_map(d.dual());
    match out_file {
        Some(p) => {
            fs::write(p, &text)
                .map_err(|e| Error::BadParameters(format!("cannot write {}: {e}", p.display())))?;
            let _ = writeln!(
                out,
                "wrote dual with {} vertices, {} edges, {} faces to {}",
                d.dual().vertex_count(),
                d.dual().edge_count(),
                d.dual().face_count(),
                p.display()
            );
        }
        None => {
            let _ = write!(out, "{text}");
        }
    }
    if let Some(p) = table {
        let mut tsv = String::new();
        for (face, label) in d.correspondence_table() {
            tsv.push_str(&format!("{face}\t{label}\n"));
        }
        fs::write(p, tsv)
            .map_err(|e| Error::BadParameters(format!("cannot write {}: {e}", p.display())))?;
        let _ = writeln!(out, "wrote correspondence table to {}", p.display());
    }
    Ok(0)
}

/// Split on `sep`, treating backtick-quoted stretches as opaque.
fn split_quoted(s: &str, sep: char) -> Result<Vec<String>, Error> {
    let mut parts = Vec::new();
    let mut current = String::new();
    let mut quoted = false;
    for c in s.chars() {
        if c == '`' {
            quoted = !quoted;
        } else if c == sep && !quoted {
            parts.push(std::mem::take(&mut current));
        } else {
            current.push(c);
        }
    }
    if quoted {
        return Err(Error::BadParameters("unbalanced backtick quote".into()));
    }
    parts.push(current);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::BadParameters(format!("empty token in {s:?}")));
    }
    Ok(parts)
}

fn parse_cycle_arg(map: &SurfaceMap, arg: &str) -> Result<CycleSpec, Error> {
    let order: Vec<Label> = split_quoted(arg, ',')?
        .into_iter()
        .map(Label::new)
        .collect::<Result<_, _>>()?;
    CycleSpec::new(map, order)
}

fn parse_edges_arg(host: &SurfaceMap, arg: &str) -> Result<EdgeSubgraph, Error> {
    let mut edges = Vec::new();
    for pair in split_quoted(arg, ',')? {
        let ends = split_quoted(&pair, '-')?;
        if ends.len() != 2 {
            return Err(Error::BadParameters(format!(
                "edge {pair:?} must be two labels joined by '-'"
            )));
        }
        edges.push(Edge::new(Label::new(ends[0].clone())?, Label::new(ends[1].clone())?)?);
    }
    EdgeSubgraph::new(host, edges)
}

fn region_profile(map: &SurfaceMap, cycle: &CycleSpec) -> Result<Vec<(usize, i64)>, Error> {
    let regions = regions_of_cycle(map, cycle)?;
    regions
        .iter()
        .map(|r| Ok((r.faces.len(), region_euler_characteristic(map, r, cycle)?)))
        .collect()
}

fn cmd_classify(
    path: &Path,
    cycle_arg: &str,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let map = read_map(path)?;
    require_valid(&map)?;
    warn_if_not_polyhedral(&map, err);
    let cycle = parse_cycle_arg(&map, cycle_arg)?;
    let class = classify_cycle(&map, &cycle)?;
    let profile = region_profile(&map, &cycle)?;
    let hamiltonian = cycle.is_hamiltonian(&map);
    let missing: Vec<String> = map
        .vertices()
        .iter()
        .filter(|v| !cycle.contains(v))
        .map(|v| v.to_string())
        .collect();
    if json {
        let value = json!({
            "schema": 1,
            "class": class,
            "regions": profile
                .iter()
                .map(|(size, euler)| json!({"size": size, "euler": euler}))
                .collect::<Vec<_>>(),
            "hamiltonian": hamiltonian,
            "missing_vertices": missing,
        });
        let _ = writeln!(out, "{value}");
    } else {
        let _ = writeln!(out, "class: {class}");
        for (i, (size, euler)) in profile.iter().enumerate() {
            let _ = writeln!(out, "region {}: {size} faces, euler characteristic {euler}", i + 1);
        }
        if !hamiltonian {
            let _ = writeln!(
                out,
                "not a Hamiltonian cycle: omits {{{}}} of the {} vertices",
                missing.join(", "),
                map.vertex_count()
            );
        }
    }
    Ok(if hamiltonian { 0 } else { 1 })
}

fn cmd_proper(
    path: &Path,
    edges_arg: &str,
    n: usize,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let map = read_map(path)?;
    require_valid(&map)?;
    warn_if_not_polyhedral(&map, err);
    let g = parse_edges_arg(&map, edges_arg)?;
    let verdict = classify_proper_type(&map, &g, n);
    let negative = matches!(
        verdict.verdict,
        ProperType::NotAdmissible | ProperType::Anomalous
    );
    if json {
        let value = json!({
            "schema": 1,
            "verdict": verdict.verdict,
            "report": verdict,
        });
        let _ = writeln!(out, "{value}");
    } else {
        let _ = writeln!(out, "verdict: {}", verdict.verdict);
        let adm = &verdict.admissibility;
        let _ = writeln!(
            out,
            "edges: {} of {} required",
            adm.edge_count, adm.expected_edge_count
        );
        let _ = writeln!(out, "two edges per face: {}", yes_no(adm.two_per_face));
        let _ = writeln!(out, "single closed face chain: {}", yes_no(adm.chain_ok));
        if !adm.is_admissible() {
            let _ = writeln!(out, "not admissible: {}", adm.describe_failure());
        } else {
            let _ = writeln!(
                out,
                "complement components: {}",
                verdict.complement_component_count
            );
            for (i, (component, flags)) in
                verdict.components.iter().zip(&verdict.tree_flags).enumerate()
            {
                let _ = writeln!(
                    out,
                    "component {}: {} vertices, {} edges, proper tree: {}",
                    i + 1,
                    component.vertex_count(),
                    component.edge_count(),
                    yes_no(flags.verdict)
                );
            }
        }
    }
    Ok(if negative { 1 } else { 0 })
}

fn cmd_hamiltonian(
    path: &Path,
    req: &SearchRequest,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Error> {
    let map = read_map(path)?;
    require_valid(&map)?;
    warn_if_not_polyhedral(&map, err);
    let results = run_search(&map, req)?;
    if json {
        let mut rendered = Vec::new();
        for r in &results {
            let profile = region_profile(&map, &r.cycle)?;
            rendered.push(json!({
                "cycle": r.cycle,
                "class": r.cycle_class,
                "dual_edges": r
                    .dual_graph
                    .edges()
                    .iter()
                    .map(|e| {
                        let (a, b) = e.ends();
                        json!([a, b])
                    })
                    .collect::<Vec<_>>(),
                "proper_type": r.proper_verdict.verdict,
                "regions": profile
                    .iter()
                    .map(|(size, euler)| json!({"size": size, "euler": euler}))
                    .collect::<Vec<_>>(),
            }));
        }
        let value = json!({
            "schema": 1,
            "count": results.len(),
            "results": rendered,
        });
        let _ = writeln!(out, "{value}");
    } else if results.is_empty() {
        let _ = writeln!(out, "no matching Hamiltonian cycle found");
    } else {
        let _ = writeln!(out, "found {} matching cycles", results.len());
        for r in &results {
            let _ = writeln!(out, "{}  {}  ({})", r.cycle, r.cycle_class, r.proper_verdict.verdict);
        }
    }
    Ok(if results.is_empty() { 1 } else { 0 })
}

fn cmd_generate_torus(
    kind: &str,
    rows: usize,
    cols: usize,
    shift: i64,
    out_file: &Path,
    out: &mut dyn Write,
) -> Result<i32, Error> {
    let parts: Vec<&str> = kind.split(',').collect();
    let (p, q) = match parts.as_slice() {
        [p, q] => match (p.trim().parse::<usize>(), q.trim().parse::<usize>()) {
            (Ok(p), Ok(q)) => (p, q),
            _ => {
                return Err(Error::BadParameters(format!(
                    "cannot parse type {kind:?}; expected e.g. 3,6"
                )));
            }
        },
        _ => {
            return Err(Error::BadParameters(format!(
                "cannot parse type {kind:?}; expected e.g. 3,6"
            )));
        }
    };
    match generate_equivelar_torus(EquivelarType { p, q }, rows, cols, shift) {
        Ok(map) => {
            fs::write(out_file, crate::map::write_map(&map)).map_err(|e| {
                Error::BadParameters(format!("cannot write {}: {e}", out_file.display()))
            })?;
            let _ = writeln!(
                out,
                "wrote {{{p},{q}}} torus with {} vertices, {} edges, {} faces to {}",
                map.vertex_count(),
                map.edge_count(),
                map.face_count(),
                out_file.display()
            );
            Ok(0)
        }
        Err(Error::BadParameters(msg)) => {
            let _ = writeln!(out, "rejected: {msg}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn cmd_audit(json: bool, out: &mut dyn Write) -> Result<i32, Error> {
    let report = run_audit();
    if json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        for c in &report.checks {
            let _ = writeln!(out, "{:<12} {}: {}", c.status.to_string(), c.id, c.details);
        }
        let _ = writeln!(
            out,
            "{} pass, {} discrepancies, {} failures",
            report.count(AuditStatus::Pass),
            report.discrepancies(),
            report.failures()
        );
    }
    Ok(if report.failures() == 0 { 0 } else { 1 })
}
