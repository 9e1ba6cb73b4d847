//! The `matchcut` command line. [`run`] does the work and returns the exit
//! code so tests can drive it without spawning a process.
//!
//! Exit codes: 0 answered, 1 internal error, 2 parse or usage error,
//! 3 oracle budget or size bound exceeded, 4 crosscheck disagreement.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{solve_dpm_4chordal, solve_mc_4chordal};
use crate::generate::{instance, GenParams};
use crate::graph::{components, Cut, Edge, Graph};
use crate::io;
use crate::oracle::{
    contains_induced, find_cut, find_dpm, has_dpm, has_mc, has_pmc, longest_induced_cycle, longest_induced_path,
    CutKind, OracleConfig,
};
use crate::pmc::{build_pmc_formula, solve_pmc_4chordal_with, PmcFormula, PmcOptions, ScanOrder};
use crate::reduction::build_reduction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "matchcut", version, about = "Matching cut solvers, oracles and the 1-in-3SAT reduction")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Time budget per oracle call, in seconds.
    #[arg(long, global = true, default_value_t = 60.0)]
    pub budget_seconds: f64,
    /// Largest vertex count the oracles accept.
    #[arg(long, global = true, default_value_t = 30)]
    pub max_oracle_n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mc,
    Pmc,
    Dpm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Auto,
    Fourchordal,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide mc, pmc or dpm on a graph file.
    Solve {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Root of the pmc sweep.
        #[arg(long, default_value_t = 0)]
        root: usize,
        /// Process each BFS level in descending vertex order (pmc).
        #[arg(long)]
        reverse_order: bool,
        /// Write the pmc 2-CNF to PREFIX.cnf and the variable map to PREFIX.map.json.
        #[arg(long, value_name = "PREFIX")]
        emit_2cnf: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Check induced-subgraph classes with the oracle.
    Check {
        /// Check that no induced path has T vertices.
        #[arg(long, value_name = "T")]
        pt_free: Option<usize>,
        /// Check that no induced cycle is longer than K.
        #[arg(long, value_name = "K")]
        k_chordal: Option<usize>,
        /// Check that the graph in this file is not an induced subgraph.
        #[arg(long, value_name = "FILE")]
        pattern: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        graph: PathBuf,
    },
    /// Build the reduction graph of a positive 1-in-3 CNF.
    Reduce {
        /// Writes PREFIX.graph and PREFIX.layout.json.
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
        cnf: PathBuf,
    },
    /// Compare the 4-chordal solvers with the oracles on random instances.
    Crosscheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted(_) | Error::OracleBound { .. } => EXIT_BUDGET,
        Error::Invariant(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn oracle_config(g: &GlobalOpts) -> Result<OracleConfig> {
    if !g.budget_seconds.is_finite() || g.budget_seconds < 0.0 {
        return Err(Error::Parse { line: 0, message: format!("invalid --budget-seconds {}", g.budget_seconds) });
    }
    Ok(OracleConfig::default().with_max_n(g.max_oracle_n).with_budget(Duration::from_secs_f64(g.budget_seconds)))
}

fn emit(report: &str, out: &Option<PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => write_file(path, report),
        None => stdout.write_all(report.as_bytes()).map_err(Error::from),
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let cfg = oracle_config(&cli.global)?;
    let format = cli.global.format;
    match &cli.command {
        Command::Solve { problem, algo, root, reverse_order, emit_2cnf, out, graph } => {
            let g = io::parse_graph(&read(graph)?)?;
            let order = if *reverse_order { ScanOrder::Descending } else { ScanOrder::Ascending };
            let opts = PmcOptions { root: *root, order };
            let report = solve(&g, *problem, *algo, opts, &cfg, stderr)?;
            if let Some(prefix) = emit_2cnf {
                write_2cnf(&g, *problem, opts, prefix)?;
            }
            emit(&report.render(format), out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Check { pt_free, k_chordal, pattern, out, graph } => {
            let g = io::parse_graph(&read(graph)?)?;
            if pt_free.is_none() && k_chordal.is_none() && pattern.is_none() {
                return Err(Error::Parse {
                    line: 0,
                    message: "give at least one of --pt-free, --k-chordal, --pattern".into(),
                });
            }
            let pattern = match pattern {
                Some(p) => Some(io::parse_graph(&read(p)?)?),
                None => None,
            };
            let report = check(&g, *pt_free, *k_chordal, pattern.as_ref(), &cfg)?;
            emit(&report.render(format), out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Reduce { out, cnf } => {
            let f = io::parse_cnf13(&read(cnf)?)?;
            let layout = build_reduction(&f)?;
            write_file(&with_ext(out, ".graph"), &io::write_graph(&layout.graph))?;
            write_file(&with_ext(out, ".layout.json"), &io::write_layout_json(&layout))?;
            let summary = ReduceSummary {
                clauses: f.clauses().len(),
                variables: f.var_count(),
                vertices: layout.graph.n(),
                edges: layout.graph.m(),
                f_size: layout.f_clique.len(),
                t_size: layout.t_clique.len(),
                q_sizes: layout.q_cliques.iter().map(Vec::len).collect(),
            };
            emit(&summary.render(format), &None, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Crosscheck { seed, count, min_n, max_n, out } => {
            if !(2 <= *min_n && min_n <= max_n) {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("need 2 <= --min-n <= --max-n, got {min_n}..{max_n}"),
                });
            }
            let report = crosscheck(*seed, *count, GenParams { min_n: *min_n, max_n: *max_n }, &cfg);
            emit(&report.render(format), out, stdout)?;
            Ok(if !report.disagreements.is_empty() {
                EXIT_DISAGREEMENT
            } else if report.undecided > 0 {
                EXIT_BUDGET
            } else {
                EXIT_OK
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub problem: Problem,
    pub algo: Algo,
    pub answer: bool,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub crossing: Vec<Edge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<Edge>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SolveReport {
    fn no(problem: Problem, algo: Algo) -> Self {
        SolveReport {
            problem,
            algo,
            answer: false,
            x: vec![],
            y: vec![],
            crossing: vec![],
            matching: None,
            notes: vec![],
        }
    }

    fn yes(problem: Problem, algo: Algo, cut: &Cut) -> Self {
        let cut = cut.normalized();
        SolveReport {
            problem,
            algo,
            answer: true,
            x: cut.x(),
            y: cut.y(),
            crossing: cut.crossing_edges().to_vec(),
            matching: None,
            notes: vec![],
        }
    }

    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string(self).expect("report serializes") + "\n";
        }
        let mut s = format!("{}\n", if self.answer { "YES" } else { "NO" });
        if self.answer {
            s += &format!("X {}\nY {}\ncrossing {}\n", join(&self.x), join(&self.y), edges(&self.crossing));
            if let Some(m) = &self.matching {
                s += &format!("matching {}\n", edges(m));
            }
        }
        for n in &self.notes {
            s += &format!("note {n}\n");
        }
        s
    }
}

fn join(vs: &[usize]) -> String {
    vs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn edges(es: &[Edge]) -> String {
    es.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

/// The component of vertex 0 in `g` minus `m` against the rest.
fn cut_around_matching(g: &Graph, m: &[Edge]) -> Result<Cut> {
    let rest = g.without_edges(m);
    let comp = components(&rest).into_iter().next().unwrap_or_default();
    Cut::from_x(g, &comp)
}

fn is_four_chordal(g: &Graph, cfg: &OracleConfig) -> Result<bool> {
    Ok(longest_induced_cycle(g, cfg)?.is_none_or(|c| c.len() <= 4))
}

pub fn solve(
    g: &Graph,
    problem: Problem,
    algo: Algo,
    opts: PmcOptions,
    cfg: &OracleConfig,
    stderr: &mut dyn Write,
) -> Result<SolveReport> {
    if problem == Problem::Pmc && g.n() % 2 == 1 {
        let mut r = SolveReport::no(problem, algo);
        r.notes.push("odd vertex count".into());
        return Ok(r);
    }
    let algo = match algo {
        Algo::Auto => match is_four_chordal(g, cfg) {
            Ok(true) => Algo::Fourchordal,
            Ok(false) => Algo::Oracle,
            Err(e) => {
                let _ = writeln!(stderr, "warning: could not verify 4-chordality ({e}); using the oracle");
                Algo::Oracle
            }
        },
        a => a,
    };
    let mut report = match (problem, algo) {
        (Problem::Mc, Algo::Fourchordal) => {
            let out = solve_mc_4chordal(g)?;
            warn_skipped(out.skipped.len(), stderr);
            let mut r = out.cut.map_or_else(|| SolveReport::no(problem, algo), |c| SolveReport::yes(problem, algo, &c));
            note_skipped(&mut r, out.skipped.len());
            r
        }
        (Problem::Dpm, Algo::Fourchordal) => {
            let out = solve_dpm_4chordal(g)?;
            warn_skipped(out.skipped.len(), stderr);
            let mut r = match out.dpm {
                Some((m, cut)) => {
                    SolveReport { matching: Some(m.edges().to_vec()), ..SolveReport::yes(problem, algo, &cut) }
                }
                None => SolveReport::no(problem, algo),
            };
            note_skipped(&mut r, out.skipped.len());
            r
        }
        (Problem::Pmc, Algo::Fourchordal) => match solve_pmc_4chordal_with(g, opts)? {
            Some(c) => SolveReport::yes(problem, algo, &c),
            None => SolveReport::no(problem, algo),
        },
        (Problem::Mc, _) => match find_cut(g, CutKind::Matching, cfg)? {
            Some(c) => SolveReport::yes(problem, algo, &c),
            None => SolveReport::no(problem, algo),
        },
        (Problem::Pmc, _) => match find_cut(g, CutKind::Perfect, cfg)? {
            Some(c) => SolveReport::yes(problem, algo, &c),
            None => SolveReport::no(problem, algo),
        },
        (Problem::Dpm, _) => match find_dpm(g, cfg)? {
            Some(m) => {
                let cut = cut_around_matching(g, m.edges())?;
                SolveReport { matching: Some(m.edges().to_vec()), ..SolveReport::yes(problem, algo, &cut) }
            }
            None => SolveReport::no(problem, algo),
        },
    };
    report.algo = algo;
    Ok(report)
}

fn warn_skipped(skipped: usize, stderr: &mut dyn Write) {
    if skipped > 0 {
        let _ = writeln!(
            stderr,
            "warning: {skipped} seed edge(s) skipped; the input may not be 4-chordal and a NO is not conclusive"
        );
    }
}

fn note_skipped(r: &mut SolveReport, skipped: usize) {
    if skipped > 0 {
        r.notes.push(format!("{skipped} seed edges skipped"));
    }
}

fn write_2cnf(g: &Graph, problem: Problem, opts: PmcOptions, prefix: &Path) -> Result<()> {
    if problem != Problem::Pmc {
        return Err(Error::Parse { line: 0, message: "--emit-2cnf applies to --problem pmc".into() });
    }
    let formula = build_pmc_formula(g, opts)?;
    let inst = formula.formula();
    let mut text = io::write_2cnf(inst);
    if let PmcFormula::NoPmc { witness, .. } = &formula {
        text.insert_str(0, &format!("c sweep stopped: vertex {witness} cannot be matched; no perfect matching cut\n"));
    }
    write_file(&with_ext(prefix, ".cnf"), &text)?;
    let map = serde_json::to_string_pretty(&io::var_map(g.n())).expect("map serializes") + "\n";
    write_file(&with_ext(prefix, ".map.json"), &map)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub holds: bool,
    /// An induced path, cycle or pattern copy: the longest one found, or the
    /// violating one.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<CheckItem>,
}

impl CheckReport {
    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string(self).expect("report serializes") + "\n";
        }
        self.checks.iter().map(|c| format!("{}: {} witness [{}]\n", c.check, c.holds, join(&c.witness))).collect()
    }
}

pub fn check(
    g: &Graph,
    pt_free: Option<usize>,
    k_chordal: Option<usize>,
    pattern: Option<&Graph>,
    cfg: &OracleConfig,
) -> Result<CheckReport> {
    let mut checks = Vec::new();
    if let Some(t) = pt_free {
        let p = longest_induced_path(g, cfg)?;
        checks.push(CheckItem { check: format!("pt_free({t})"), holds: p.len() < t, witness: p });
    }
    if let Some(k) = k_chordal {
        let c = longest_induced_cycle(g, cfg)?.unwrap_or_default();
        checks.push(CheckItem { check: format!("k_chordal({k})"), holds: c.len() <= k, witness: c });
    }
    if let Some(h) = pattern {
        let found = contains_induced(g, h, cfg)?;
        checks.push(CheckItem {
            check: "pattern_free".into(),
            holds: found.is_none(),
            witness: found.unwrap_or_default(),
        });
    }
    Ok(CheckReport { checks })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceSummary {
    pub clauses: usize,
    pub variables: usize,
    pub vertices: usize,
    pub edges: usize,
    pub f_size: usize,
    pub t_size: usize,
    pub q_sizes: Vec<usize>,
}

impl ReduceSummary {
    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string(self).expect("summary serializes") + "\n";
        }
        format!(
            "clauses {}\nvariables {}\nvertices {}\nedges {}\n|F| {}\n|T| {}\n|Q| {}\n",
            self.clauses,
            self.variables,
            self.vertices,
            self.edges,
            self.f_size,
            self.t_size,
            join(&self.q_sizes)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub index: usize,
    pub problem: Problem,
    pub solver: Option<bool>,
    pub oracle: Option<bool>,
    pub detail: String,
    /// The instance in graph-file format.
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceVerdicts {
    pub index: usize,
    pub n: usize,
    pub m: usize,
    /// `[mc, pmc, dpm]` oracle verdicts; `None` if the oracle gave up.
    pub oracle: [Option<bool>; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub seed: u64,
    pub count: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub instances: Vec<InstanceVerdicts>,
    pub undecided: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrosscheckReport {
    pub fn render(&self, format: Format) -> String {
        if format == Format::Json {
            return serde_json::to_string(self).expect("report serializes") + "\n";
        }
        let flag = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "?",
        };
        let mut s = format!("crosscheck seed {} count {} n {}..{}\n", self.seed, self.count, self.min_n, self.max_n);
        for i in &self.instances {
            s += &format!(
                "#{} n={} m={} mc={} pmc={} dpm={}\n",
                i.index,
                i.n,
                i.m,
                flag(i.oracle[0]),
                flag(i.oracle[1]),
                flag(i.oracle[2])
            );
        }
        for d in &self.disagreements {
            s += &format!(
                "DISAGREE #{} {:?}: solver={} oracle={} {}\n{}",
                d.index,
                d.problem,
                flag(d.solver),
                flag(d.oracle),
                d.detail,
                d.graph
            );
        }
        s += &format!("undecided {}\ndisagreements {}\n", self.undecided, self.disagreements.len());
        s
    }
}

fn check_instance(index: usize, g: &Graph, cfg: &OracleConfig) -> (InstanceVerdicts, usize, Vec<Disagreement>) {
    let solver: [Result<bool>; 3] = [
        solve_mc_4chordal(g).map(|o| o.cut.is_some()),
        solve_pmc_4chordal_with(g, PmcOptions::default()).map(|c| c.is_some()),
        solve_dpm_4chordal(g).map(|o| o.dpm.is_some()),
    ];
    let oracle = [has_mc(g, cfg), has_pmc(g, cfg), has_dpm(g, cfg)];
    let mut disagreements = Vec::new();
    let mut undecided = 0;
    let mut verdicts = [None; 3];
    for (k, problem) in [Problem::Mc, Problem::Pmc, Problem::Dpm].into_iter().enumerate() {
        let o = oracle[k].as_ref().ok().copied();
        verdicts[k] = o;
        let s = solver[k].as_ref().ok().copied();
        let detail = match (&solver[k], &oracle[k]) {
            (Err(e), _) => format!("solver error: {e}"),
            (_, Err(_)) => {
                undecided += 1;
                continue;
            }
            (Ok(a), Ok(b)) if a == b => continue,
            _ => "verdicts differ".into(),
        };
        disagreements.push(Disagreement { index, problem, solver: s, oracle: o, detail, graph: io::write_graph(g) });
    }
    (InstanceVerdicts { index, n: g.n(), m: g.m(), oracle: verdicts }, undecided, disagreements)
}

/// Runs instances in parallel; the report lists them in index order.
pub fn crosscheck(seed: u64, count: usize, params: GenParams, cfg: &OracleConfig) -> CrosscheckReport {
    let results: Vec<_> =
        (0..count).into_par_iter().map(|i| check_instance(i, &instance(seed, i, params), cfg)).collect();
    let mut report = CrosscheckReport {
        seed,
        count,
        min_n: params.min_n,
        max_n: params.max_n,
        instances: Vec::with_capacity(count),
        undecided: 0,
        disagreements: Vec::new(),
    };
    for (v, u, d) in results {
        report.instances.push(v);
        report.undecided += u;
        report.disagreements.extend(d);
    }
    report
}
