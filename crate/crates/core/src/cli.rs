//! Command-line front end.
//!
//! Exit codes: 0 success, 1 property violated, 2 usage or input error,
//! 3 search budget exhausted.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{apex_grid, build_bn, build_bn_prime, build_g, build_gg, pd_grid, ConstructionBundle};
use crate::error::{Error, Result};
use crate::formats::{named_graph, read_graph, read_graph_any, write_graph, Format};
use crate::graph::Graph;
use crate::lifting::{lift_to_bprime, normalize_model, Normalization, SubdividedCliqueModel};
use crate::minor::{find_model_with, verify_model, MinorModel, ModelKind, SearchConfig, SearchOutcome};
use crate::ops::{girth, GirthValue};
use crate::rig::{find_rig_representation, verify_representation, RigRepresentation};
use crate::suite::{render_table, run_criterion, Level, CRITERIA};
use crate::td::{verify_td, TreeDecomposition};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub payload: String,
}

impl CommandResult {
    fn new(exit_code: i32, payload: impl Into<String>) -> Self {
        let mut payload = payload.into();
        if !payload.is_empty() && !payload.ends_with('\n') {
            payload.push('\n');
        }
        CommandResult { exit_code, payload }
    }
}

#[derive(Parser, Debug)]
#[command(name = "rigkit", version, about = "Subdivided-clique minors, region representations and tree decompositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a graph family member.
    Gen(GenArgs),
    /// Convert a graph read from stdin.
    Convert(ConvertArgs),
    /// Run a check or search.
    #[command(subcommand)]
    Check(Check),
    /// Run the verification battery and print one row per criterion.
    PaperSuite(SuiteArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    ApexGrid,
    PdGrid,
    Bn,
    BnPrime,
    G,
    Gg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Graph6,
    Dimacs,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Graph6 => Format::Graph6,
            FormatArg::Dimacs => Format::Dimacs,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    /// Subdivision parameter (bn, bn-prime, gg).
    #[arg(long, default_value_t = 1)]
    g: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Args, Debug)]
struct ConvertArgs {
    /// Input format; guessed from the content when omitted.
    #[arg(long, value_enum)]
    from: Option<FormatArg>,
    #[arg(long, value_enum)]
    to: FormatArg,
}

#[derive(Args, Debug)]
struct SearchFlags {
    /// Search node budget.
    #[arg(long, env = "RIGKIT_BUDGET")]
    budget: Option<u64>,
    /// Worker threads; witnesses may differ between runs when above 1.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Check {
    /// Shortest cycle length.
    Girth {
        /// Graph file (`-` for stdin) or pattern name.
        input: String,
        #[arg(long)]
        json: bool,
    },
    /// Search for a minor model.
    Minor {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Search for an induced minor model.
    InducedMinor {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Search for a region intersection representation over a host.
    RigFind {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        max_region: Option<usize>,
        #[command(flatten)]
        flags: SearchFlags,
    },
    /// Verify a minor model (JSON) of a pattern in a host.
    VerifyModel {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        host: String,
        #[arg(long)]
        model: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify a region intersection representation (JSON).
    VerifyRep {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify a tree decomposition (JSON).
    VerifyTd {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        td: String,
        #[arg(long)]
        json: bool,
    },
    /// Normalise an induced model of a 1-subdivided clique in G, check the
    /// interval claims and lift it to the traceable supergraph.
    Lift {
        /// Clique size.
        #[arg(long)]
        s: usize,
        #[arg(long)]
        model: String,
        /// Bundle JSON from `gen g` or `gen gg`.
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        bundle: Option<String>,
        /// Use `G(n)` directly.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct SuiteArgs {
    #[arg(long, value_enum, default_value = "fast")]
    level: LevelArg,
    /// Run only these criteria (1-based).
    #[arg(long = "criterion")]
    criteria: Vec<u8>,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

/// Parses `argv` (including the program name) and runs the command, reading
/// stdin where a command asks for it.
pub fn dispatch<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    dispatch_with_input(argv, &mut std::io::stdin())
}

pub fn dispatch_with_input<I, T>(argv: I, stdin: &mut dyn Read) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return CommandResult::new(code, e.render().to_string());
        }
    };
    let mut input = Input { stdin, cached: None };
    match run(cli.command, &mut input) {
        Ok(r) => r,
        Err(e) => CommandResult::new(EXIT_USAGE, format!("error: {e}")),
    }
}

struct Input<'a> {
    stdin: &'a mut dyn Read,
    cached: Option<String>,
}

impl Input<'_> {
    fn text(&mut self, path: &str) -> Result<String> {
        if path != "-" {
            return Ok(std::fs::read_to_string(path)?);
        }
        if self.cached.is_none() {
            let mut s = String::new();
            self.stdin.read_to_string(&mut s)?;
            self.cached = Some(s);
        }
        Ok(self.cached.clone().unwrap())
    }

    /// A pattern name (`k6`, `c4`, `p4`, optionally `-sub<l>`), or a graph file.
    fn graph(&mut self, arg: &str) -> Result<Graph> {
        if let Some(g) = named_graph(arg)? {
            return Ok(g);
        }
        let text = self.text(arg)?;
        read_graph_any(&text)
    }

    fn bundle(&mut self, path: &str) -> Result<ConstructionBundle> {
        Ok(serde_json::from_str(&self.text(path)?)?)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("report serialises")
}

fn run(command: Command, input: &mut Input) -> Result<CommandResult> {
    match command {
        Command::Gen(a) => gen(a),
        Command::Convert(a) => {
            let text = input.text("-")?;
            let g = match a.from.map(Format::from) {
                Some(f) if f != Format::Json => read_graph(&text, f)?,
                _ => read_graph_any(&text)?,
            };
            Ok(CommandResult::new(EXIT_OK, write_graph(&g, a.to.into())))
        }
        Command::Check(c) => check(c, input),
        Command::PaperSuite(a) => {
            let level = match a.level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let ids: Vec<u8> = if a.criteria.is_empty() { (1..=CRITERIA.len() as u8).collect() } else { a.criteria };
            if let Some(bad) = ids.iter().find(|&&i| i == 0 || usize::from(i) > CRITERIA.len()) {
                return Err(Error::InvalidParameter(format!("no criterion {bad}")));
            }
            let rows: Vec<_> = ids.into_iter().map(|id| run_criterion(id, level)).collect();
            let code = if rows.iter().all(|r| r.passed) { EXIT_OK } else { EXIT_VIOLATED };
            let payload = if a.json { to_json(&rows) } else { render_table(&rows) };
            Ok(CommandResult::new(code, payload))
        }
    }
}

fn gen(a: GenArgs) -> Result<CommandResult> {
    let format: Format = a.format.into();
    let bundle = match a.family {
        Family::ApexGrid => return Ok(CommandResult::new(EXIT_OK, write_graph(&apex_grid(a.n)?, format))),
        Family::PdGrid => return Ok(CommandResult::new(EXIT_OK, write_graph(&pd_grid(a.n)?, format))),
        Family::Bn => return Ok(CommandResult::new(EXIT_OK, write_graph(&build_bn(a.g, a.n)?, format))),
        Family::BnPrime => build_bn_prime(a.g, a.n)?,
        Family::G => build_g(a.n)?,
        Family::Gg => build_gg(a.g, a.n)?,
    };
    let payload = match format {
        Format::Json => to_json(&bundle),
        f => write_graph(&bundle.graph, f),
    };
    Ok(CommandResult::new(EXIT_OK, payload))
}

fn search_report<T: serde::Serialize>(out: &SearchOutcome<T>, json: bool) -> CommandResult {
    let code = match out {
        SearchOutcome::Unknown { .. } => EXIT_BUDGET,
        _ => EXIT_OK,
    };
    if json {
        return CommandResult::new(code, to_json(out));
    }
    let text = match out {
        SearchOutcome::Found { witness } => format!("Found\n{}", to_json(witness)),
        SearchOutcome::Absent => "Absent".to_string(),
        SearchOutcome::Unknown { spent } => format!("Unknown (budget exhausted after {spent} nodes)"),
    };
    CommandResult::new(code, text)
}

fn verdict(valid: bool, json: bool, report: String, text: String) -> CommandResult {
    let code = if valid { EXIT_OK } else { EXIT_VIOLATED };
    CommandResult::new(code, if json { report } else { text })
}

fn check(c: Check, input: &mut Input) -> Result<CommandResult> {
    match c {
        Check::Girth { input: path, json } => {
            let g = girth(&input.graph(&path)?);
            let payload = match (json, g) {
                (false, g) => g.to_string(),
                (true, GirthValue::Finite(v)) => json!({ "girth": v }).to_string(),
                (true, GirthValue::Unbounded) => json!({ "girth": "unbounded" }).to_string(),
            };
            Ok(CommandResult::new(EXIT_OK, payload))
        }
        Check::Minor { pattern, host, flags } => minor(input, &pattern, &host, &flags, ModelKind::Ordinary),
        Check::InducedMinor { pattern, host, flags } => minor(input, &pattern, &host, &flags, ModelKind::Induced),
        Check::RigFind { graph, host, max_region, flags } => {
            let g = input.graph(&graph)?;
            let h = input.graph(&host)?;
            let out = find_rig_representation(&g, &h, max_region, flags.budget)?;
            Ok(search_report(&out, flags.json))
        }
        Check::VerifyModel { pattern, host, model, json } => {
            let p = input.graph(&pattern)?;
            let h = input.graph(&host)?;
            let m = MinorModel::from_json(&input.text(&model)?)?;
            let r = verify_model(&p, &h, &m)?;
            let text = match &r.violation {
                None => "valid".to_string(),
                Some(v) => format!("invalid: {v}"),
            };
            Ok(verdict(r.valid, json, to_json(&r), text))
        }
        Check::VerifyRep { graph, rep, json } => {
            let g = input.graph(&graph)?;
            let rep = RigRepresentation::from_json(&input.text(&rep)?)?;
            let r = verify_representation(&g, &rep)?;
            let text = if r.valid { "valid".to_string() } else { format!("invalid: {}", r.summary()) };
            Ok(verdict(r.valid, json, to_json(&r), text))
        }
        Check::VerifyTd { graph, td, json } => {
            let g = input.graph(&graph)?;
            let td = TreeDecomposition::from_json(&input.text(&td)?)?;
            let r = verify_td(&g, &td)?;
            let text = match (&r.violation, r.width, r.adhesion) {
                (None, Some(w), Some(a)) => format!("valid width {w} adhesion {a}"),
                (v, _, _) => format!("invalid: {}", v.as_deref().unwrap_or("unknown")),
            };
            Ok(verdict(r.valid, json, to_json(&r), text))
        }
        Check::Lift { s, model, bundle, n, json } => {
            let bundle = match (bundle, n) {
                (Some(path), _) => input.bundle(&path)?,
                (None, Some(n)) => build_g(n)?,
                (None, None) => return Err(Error::InvalidParameter("give --bundle or --n".into())),
            };
            let m = MinorModel::from_json(&input.text(&model)?)?;
            let m = SubdividedCliqueModel::new(s, m, &bundle)?;
            let norm = normalize_model(&m, &bundle)?;
            let report = lift_to_bprime(norm.model(), &bundle)?;
            let obstruction = match &norm {
                Normalization::Normalized(_) => None,
                Normalization::Obstructed { reason, .. } => Some(reason.clone()),
            };
            let payload = if json {
                json!({ "normalized": norm.model(), "obstruction": obstruction, "lift": report }).to_string()
            } else {
                lift_text(obstruction.as_deref(), &report)
            };
            Ok(CommandResult::new(if report.valid { EXIT_OK } else { EXIT_VIOLATED }, payload))
        }
    }
}

fn lift_text(obstruction: Option<&str>, r: &crate::lifting::LiftReport) -> String {
    let mut out = String::new();
    match obstruction {
        None => out.push_str("normalization: ok\n"),
        Some(reason) => out.push_str(&format!("normalization: obstructed ({reason})\n")),
    }
    for (name, v) in [("nested", &r.claims.nested), ("two-cover", &r.claims.two_cover), ("triple", &r.claims.triple)] {
        match &v.witness {
            None => out.push_str(&format!("claim {name}: holds\n")),
            Some(w) => out.push_str(&format!("claim {name}: violated ({})\n", w.detail)),
        }
    }
    for (k, y) in r.branch_sets.iter().enumerate() {
        let list: Vec<String> = y.iter().map(|v| v.to_string()).collect();
        out.push_str(&format!("Y'{k} = {{{}}}\n", list.join(", ")));
    }
    let yes = |b: bool| if b { "yes" } else { "no" };
    out.push_str(&format!(
        "disjoint: {}, connected: {}, adjacent: {}\n",
        yes(r.disjoint),
        yes(r.connected),
        yes(r.adjacent)
    ));
    match &r.violation {
        None => out.push_str("lift: valid"),
        Some(v) => out.push_str(&format!("lift: invalid ({v})")),
    }
    out
}

fn minor(input: &mut Input, pattern: &str, host: &str, flags: &SearchFlags, kind: ModelKind) -> Result<CommandResult> {
    let p = input.graph(pattern)?;
    let h = input.graph(host)?;
    let config = SearchConfig { budget: flags.budget, jobs: flags.jobs.max(1) };
    let out = find_model_with(&p, &h, kind, &config)?;
    Ok(search_report(&out, flags.json))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> CommandResult {
        let argv = std::iter::once("rigkit").chain(args.iter().copied());
        dispatch_with_input(argv, &mut std::io::empty())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(&["gen", "nope", "--n", "2"]).exit_code, EXIT_USAGE);
        assert_eq!(run(&["gen", "g"]).exit_code, EXIT_USAGE);
        assert_eq!(run(&["check", "girth", "/no/such/file"]).exit_code, EXIT_USAGE);
        assert_eq!(run(&["gen", "gg", "--g", "1", "--n", "2"]).exit_code, EXIT_USAGE);
        assert_eq!(run(&["--help"]).exit_code, EXIT_OK);
    }

    #[test]
    fn minor_on_named_graphs() {
        let r = run(&["check", "minor", "--pattern", "k3", "--host", "c5"]);
        assert_eq!(r.exit_code, EXIT_OK);
        assert!(r.payload.starts_with("Found\n"));
        let r = run(&["check", "induced-minor", "--pattern", "c4", "--host", "k4"]);
        assert_eq!(r.payload, "Absent\n");
        let r = run(&["check", "minor", "--pattern", "k5", "--host", "k6-sub1", "--budget", "3"]);
        assert_eq!(r.exit_code, EXIT_BUDGET);
    }

    #[test]
    fn girth_of_named_graphs() {
        assert_eq!(run(&["check", "girth", "c7"]).payload, "7\n");
        assert_eq!(run(&["check", "girth", "p4"]).payload, "unbounded\n");
        assert_eq!(run(&["check", "girth", "k4", "--json"]).payload, "{\"girth\":3}\n");
    }
}
