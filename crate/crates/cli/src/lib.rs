//! `asl-kit`: command-line front end for `asl-core`.
//!
//! [`run`] parses an argument vector, runs one command and returns its
//! [`Report`] together with the process exit code (0 ok, 1 verification
//! failure, 2 usage error, 3 cap exceeded).

pub mod eval;
pub mod parse;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use asl_core::derived::derived_series;
use asl_core::fp::{self, GSet};
use asl_core::lp::{corollary_decomposition, search_lp, validate_lp, LpReport};
use asl_core::normal::all_normal_subgroups;
use asl_core::series::{
    abelian_simple_length, factor_structure, generalized_derived_series, subnormal_certificate, FactorDescriptor,
    FactorKind, SeriesReport,
};
use asl_core::verify::{self, Options, Suite, SuiteReport};
use asl_core::wreath::{self, GroupAction};
use asl_core::{matrix, Caps, Error, Group, Subgroup};

use crate::parse::{parse_group_spec, ParseError};
pub use crate::report::{Report, Status};

/// Environment variable holding the worker-thread hint for `verify`.
pub const THREADS_VAR: &str = "ASL_KIT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "asl-kit", version, about = "Abelian-simple length and related finite group computations")]
struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include elapsed time in the output.
    #[arg(long, global = true)]
    timing: bool,
    /// Largest order that gets a dense multiplication table.
    #[arg(long, global = true, default_value_t = Caps::default().dense)]
    dense_cap: usize,
    /// Largest order any construction may reach.
    #[arg(long, global = true, default_value_t = Caps::default().closure)]
    closure_cap: usize,
    /// Largest class count accepted by the brute-force oracle.
    #[arg(long, global = true, default_value_t = Caps::default().oracle_classes)]
    oracle_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Abelian-simple length l(G).
    Length {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Generalized derived series with factor labels.
    Series {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        /// Ordinary derived series instead.
        #[arg(long)]
        derived: bool,
    },
    /// All normal subgroups, as sorted label lists.
    Normals {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Structure of G/D(G) and a subnormal certificate for the series.
    Factors {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Twisted wreath product A wr_G0 G.
    Wreath {
        #[command(flatten)]
        w: WreathArgs,
    },
    /// Checks [G^(m)G0 : G0] > 2^m => H^(m+1) ∩ Ind != 1.
    Msigma {
        #[command(flatten)]
        w: WreathArgs,
        #[arg(short = 'm')]
        m: usize,
    },
    /// The chain V_i(G, X) of F_p[X] for X a coset space.
    Vchain {
        #[arg(long)]
        g: String,
        /// `coset:ELEMS`, the right cosets of the subgroup they generate.
        #[arg(long)]
        x: String,
        #[arg(short = 'p')]
        p: u32,
        #[arg(short = 'd')]
        d: usize,
    },
    /// Order and l-group check of ker(GL_n(Z/l^k) -> GL_n(Z/l)).
    Kernelcheck {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'l')]
        l: u32,
        #[arg(short = 'k')]
        k: u32,
    },
    /// Searches and validates a Larsen-Pink type filtration.
    Lp {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
        #[arg(short = 'l')]
        l: u32,
        #[arg(short = 'J')]
        j: usize,
    },
    /// Runs a verification suite, or `all`.
    Verify {
        suite: String,
        /// Order bound for catalog-driven cases.
        #[arg(long, default_value_t = Options::default().max_order)]
        max_order: usize,
    },
}

#[derive(clap::Args, Debug)]
struct WreathArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    g: String,
    /// Generators of G0 <= G, separated by `;`.
    #[arg(long)]
    g0: String,
    /// Table of lines `a ^ s = b`; the trivial action if omitted.
    #[arg(long)]
    action: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Core(e) if e.is_cap() => Status::Cap,
            CliError::Core(Error::PropositionViolated(_)) => Status::Fail,
            _ => Status::Usage,
        }
    }
}

struct Outcome {
    status: Status,
    result: Value,
    text: String,
}

impl Outcome {
    fn ok(result: Value, text: String) -> Outcome {
        Outcome { status: Status::Ok, result, text }
    }

    fn checked(pass: bool, result: Value, text: String) -> Outcome {
        Outcome { status: if pass { Status::Ok } else { Status::Fail }, result, text }
    }
}

/// Runs one invocation. `argv[0]` is the program name. Reads the thread
/// hint from `ASL_KIT_THREADS`.
pub fn run(argv: &[String]) -> (Report, i32) {
    let threads = std::env::var(THREADS_VAR).ok().and_then(|v| v.trim().parse().ok()).filter(|&n| n > 0);
    run_with_threads(argv, threads)
}

/// [`run`] with an explicit thread hint.
pub fn run_with_threads(argv: &[String], threads: Option<usize>) -> (Report, i32) {
    let start = Instant::now();
    let command: Vec<String> = argv.iter().skip(1).cloned().collect();
    let (status, result, text) = match Cli::try_parse_from(argv) {
        Ok(cli) => {
            let caps = Caps {
                dense: cli.dense_cap,
                closure: cli.closure_cap,
                oracle_classes: cli.oracle_cap,
                ..Caps::default()
            };
            match dispatch(&cli.command, caps, threads) {
                Ok(o) => (o.status, o.result, o.text),
                Err(e) => (e.status(), json!({ "error": e.to_string() }), format!("error: {e}")),
            }
        }
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (Status::Ok, json!({ "message": text }), text),
                _ => (Status::Usage, json!({ "error": text.trim_end() }), text),
            }
        }
    };
    let report = Report { command, status, result, text, elapsed: start.elapsed() };
    let code = report.exit_code();
    (report, code)
}

/// Whether `--json` / `--timing` appear among the arguments; used by the
/// binary to pick the output form even when parsing fails.
pub fn output_flags(argv: &[String]) -> (bool, bool) {
    let has = |f: &str| argv.iter().skip(1).take_while(|a| *a != "--").any(|a| a == f);
    (has("--json"), has("--timing"))
}

fn dispatch(cmd: &Command, caps: Caps, threads: Option<usize>) -> Result<Outcome, CliError> {
    match cmd {
        Command::Length { spec } => length(&group(spec, caps)?),
        Command::Series { spec, derived } => series(&group(spec, caps)?, *derived),
        Command::Normals { spec } => normals(&group(spec, caps)?),
        Command::Factors { spec } => factors(&group(spec, caps)?),
        Command::Wreath { w } => wreath_cmd(w, caps),
        Command::Msigma { w, m } => msigma(w, *m, caps),
        Command::Vchain { g, x, p, d } => vchain(g, x, *p, *d, caps),
        Command::Kernelcheck { n, l, k } => kernelcheck(*n, *l, *k, caps),
        Command::Lp { spec, l, j } => lp(&group(spec, caps)?, *l, *j),
        Command::Verify { suite, max_order } => verify_cmd(suite, Options { max_order: *max_order, caps, threads }),
    }
}

fn group(words: &[String], caps: Caps) -> Result<Group, CliError> {
    let text = words.join(" ");
    Ok(eval::eval(&parse_group_spec(&text)?, caps)?)
}

fn sorted_labels(s: &Subgroup) -> Vec<String> {
    let mut labels = s.labels();
    labels.sort();
    labels
}

fn generator_labels(s: &Subgroup) -> Vec<String> {
    let g = s.parent();
    s.generators().iter().map(|&x| g.label(x)).collect()
}

fn kind_name(k: FactorKind) -> &'static str {
    match k {
        FactorKind::Trivial => "trivial",
        FactorKind::Abelian => "abelian",
        FactorKind::Semisimple => "semisimple",
        FactorKind::Mixed => "mixed",
    }
}

fn factor_json(f: &FactorDescriptor) -> Value {
    json!({
        "order": f.order,
        "label": f.label(),
        "kind": kind_name(f.kind()),
        "abelian_invariants": f.abelian_invariants,
        "simple_orders": f.simple_orders,
    })
}

fn length(g: &Group) -> Result<Outcome, CliError> {
    let l = abelian_simple_length(g)?;
    Ok(Outcome::ok(
        json!({ "group": g.name(), "order": g.order(), "length": l }),
        format!("{} (order {})\nl = {l}", g.name(), g.order()),
    ))
}

fn series(g: &Group, derived: bool) -> Result<Outcome, CliError> {
    let s: SeriesReport = if derived { derived_series(g)? } else { generalized_derived_series(g)? };
    let mut text = format!("{} (order {})\n", g.name(), g.order());
    let sup = if derived { "" } else { "^" };
    for (i, t) in s.terms.iter().enumerate() {
        text.push_str(&format!("  G{sup}({i})  order {}", t.order()));
        if let Some(f) = s.factors.get(i) {
            text.push_str(&format!("  factor {}", f.label()));
        }
        text.push('\n');
    }
    if derived {
        if s.terminates {
            text.push_str(&format!("solvable, derived length {}", s.length));
        } else {
            text.push_str(&format!("not solvable, stabilizes at order {}", s.terms.last().map_or(1, |t| t.order())));
        }
    } else {
        text.push_str(&format!("l = {}", s.length));
    }
    let terms: Vec<Value> = s
        .terms
        .iter()
        .enumerate()
        .map(|(i, t)| json!({ "index": i, "order": t.order(), "generators": generator_labels(t) }))
        .collect();
    Ok(Outcome::ok(
        json!({
            "group": g.name(),
            "order": g.order(),
            "series": if derived { "derived" } else { "generalized-derived" },
            "terms": terms,
            "orders": s.orders(),
            "factors": s.factors.iter().map(factor_json).collect::<Vec<_>>(),
            "length": s.length,
            "terminates": s.terminates,
        }),
        text,
    ))
}

const TEXT_MEMBERS: usize = 12;

fn normals(g: &Group) -> Result<Outcome, CliError> {
    let lattice = all_normal_subgroups(g)?;
    let mut text = format!("{} (order {}): {} normal subgroups\n", g.name(), g.order(), lattice.len());
    let mut list = Vec::new();
    for (i, n) in lattice.subgroups().iter().enumerate() {
        let labels = sorted_labels(n);
        let shown: Vec<&str> = labels.iter().take(TEXT_MEMBERS).map(String::as_str).collect();
        let more = labels.len().saturating_sub(TEXT_MEMBERS);
        text.push_str(&format!("  N{i}  order {}: {}", n.order(), shown.join(", ")));
        if more > 0 {
            text.push_str(&format!(", ... ({more} more)"));
        }
        text.push('\n');
        list.push(json!({ "order": n.order(), "members": labels }));
    }
    Ok(Outcome::ok(
        json!({ "group": g.name(), "order": g.order(), "count": lattice.len(), "normal_subgroups": list }),
        text.trim_end().to_string(),
    ))
}

fn factors(g: &Group) -> Result<Outcome, CliError> {
    let fs = factor_structure(g)?;
    let cert = subnormal_certificate(g)?;
    let ok = cert.check();
    let steps: Vec<Value> = cert.series.factors.iter().map(factor_json).collect();
    let text = format!(
        "{} (order {})\nG/D(G) = {}\n|G'| = {}, |D0(G)| = {}, |D(G)| = {}\nrefined series factors: {}\ncertificate: {}",
        g.name(),
        g.order(),
        fs.descriptor.label(),
        fs.derived.order(),
        fs.d0.order(),
        fs.d.order(),
        cert.series.factors.iter().map(|f| f.label()).collect::<Vec<_>>().join(", "),
        if ok { "verified" } else { "FAILED" },
    );
    Ok(Outcome::checked(
        ok,
        json!({
            "group": g.name(),
            "order": g.order(),
            "top_factor": factor_json(&fs.descriptor),
            "derived_order": fs.derived.order(),
            "d0_order": fs.d0.order(),
            "d_order": fs.d.order(),
            "series_factors": steps,
            "certificate_verified": ok,
        }),
        text,
    ))
}

/// Builds the action of `G0` on `A` from the command arguments.
fn action(w: &WreathArgs, caps: Caps) -> Result<GroupAction, CliError> {
    let a = group(std::slice::from_ref(&w.a), caps)?;
    let g = group(std::slice::from_ref(&w.g), caps)?;
    let g0 = eval::subgroup(&g, &w.g0)?;
    let Some(path) = &w.action else {
        return Ok(GroupAction::trivial(&a, &g0));
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || CliError::Usage(format!("{}:{}: expected `a ^ s = b`", path.display(), no + 1));
        let (lhs, b) = line.rsplit_once('=').ok_or_else(bad)?;
        let (x, s) = lhs.split_once('^').ok_or_else(bad)?;
        entries.push((eval::element(&a, x)?, eval::element(&g, s)?, eval::element(&a, b)?));
    }
    Ok(GroupAction::from_entries(&a, &g0, &entries)?)
}

fn wreath_cmd(w: &WreathArgs, caps: Caps) -> Result<Outcome, CliError> {
    let act = action(w, caps)?;
    let h = wreath::twisted_wreath_product(&act)?;
    let chain = wreath::realization_chain(&h);
    let l = abelian_simple_length(&h.group)?;
    let (a, g, g0) = (act.space(), act.group(), act.actor());
    let text = format!(
        "A = {} (order {}), G = {} (order {}), |G0| = {}, action {}\n\
         |Ind| = {}, |H| = {}, [G : G0] = {}\nchain indices: {:?}\nl(H) = {l}",
        a.name(),
        a.order(),
        g.name(),
        g.order(),
        g0.order(),
        if act.is_trivial() { "trivial" } else { "nontrivial" },
        h.ind.group.order(),
        h.group.order(),
        h.ind.rank(),
        chain.indices,
    );
    Ok(Outcome::ok(
        json!({
            "a": a.name(),
            "a_order": a.order(),
            "g": g.name(),
            "g_order": g.order(),
            "g0_order": g0.order(),
            "g0_generators": generator_labels(g0),
            "action_trivial": act.is_trivial(),
            "index": h.ind.rank(),
            "induced_order": h.ind.group.order(),
            "order": h.group.order(),
            "chain_indices": chain.indices,
            "length": l,
        }),
        text,
    ))
}

fn msigma(w: &WreathArgs, m: usize, caps: Caps) -> Result<Outcome, CliError> {
    let act = action(w, caps)?;
    let hypothesis = wreath::msigma_hypothesis(act.group(), act.actor(), m)?;
    // msigma_witness fails with PropositionViolated when the hypothesis
    // holds without a witness.
    let witness = wreath::msigma_witness(&act, m)?;
    let label = witness.as_ref().map(|x| x.label.clone());
    let text = format!(
        "m = {m}: [G^({m})G0 : G0] > 2^{m} is {hypothesis}\nH^({}) ∩ Ind: {}",
        m + 1,
        label.as_deref().map_or("trivial".to_string(), |l| format!("contains {l}")),
    );
    Ok(Outcome::ok(json!({ "m": m, "hypothesis": hypothesis, "witness": label }), text))
}

fn vchain(g: &str, x: &str, p: u32, d: usize, caps: Caps) -> Result<Outcome, CliError> {
    let g = group(&[g.to_string()], caps)?;
    let elems = x
        .strip_prefix("coset:")
        .ok_or_else(|| CliError::Usage(format!("--x must be coset:ELEMS, got {x:?}")))?;
    let g0 = eval::subgroup(&g, elems)?;
    let set = GSet::right_cosets(&g0)?;
    let chain = fp::v_chain(&set, p, d)?;
    let dims: Vec<usize> = chain.iter().map(|v| v.dimension()).collect();
    let mut checks = Vec::new();
    let mut ok = true;
    let mut text = format!("X = G0\\{} ({} points), p = {p}\ndim V_i: {dims:?}\n", g.name(), set.len());
    for m in 0..d {
        let hyp = fp::orbit_hypothesis(&set, m)?;
        let nonzero = !chain[m + 1].is_zero();
        ok &= !hyp || nonzero;
        text.push_str(&format!("  m = {m}: orbit > 2^{m}: {hyp}, V_{} != 0: {nonzero}\n", m + 1));
        checks.push(json!({ "m": m, "hypothesis": hyp, "nonzero": nonzero }));
    }
    text.push_str(if ok { "consistent" } else { "VIOLATED" });
    Ok(Outcome::checked(
        ok,
        json!({ "group": g.name(), "points": set.len(), "p": p, "dimensions": dims, "checks": checks, "consistent": ok }),
        text,
    ))
}

fn kernelcheck(n: usize, ell: u32, k: u32, caps: Caps) -> Result<Outcome, CliError> {
    if n == 0 || k == 0 {
        return Err(CliError::Usage("n and k must be positive".into()));
    }
    let (g, ker) = matrix::residue_kernel(n, ell, k, caps)?;
    let expected = (ell as usize).pow((n * n) as u32 * (k - 1));
    let l_group = matrix::is_l_group(&ker.to_group().0, ell);
    let normal = ker.is_normal();
    let ok = ker.order() == expected && l_group && normal;
    let text = format!(
        "GL({n}, Z/{ell}^{k}) order {}\n|ker| = {} (expected {ell}^{} = {expected}), {ell}-group: {l_group}, normal: {normal}",
        g.order(),
        ker.order(),
        n * n * (k as usize - 1),
    );
    Ok(Outcome::checked(
        ok,
        json!({
            "n": n, "l": ell, "k": k,
            "group_order": g.order(),
            "kernel_order": ker.order(),
            "expected": expected,
            "l_group": l_group,
            "normal": normal,
        }),
        text,
    ))
}

fn lp_report_json(r: &LpReport) -> Value {
    json!({
        "index": r.index,
        "index_ok": r.index_ok,
        "simple_orders": r.simple_orders,
        "semisimple_ok": r.semisimple_ok,
        "proxy": r.proxy,
        "abelian_invariants": r.abelian_invariants,
        "abelian_ok": r.abelian_ok,
        "lambda3_order": r.lambda3_order,
        "l_group_ok": r.l_group_ok,
        "valid": r.valid(),
    })
}

fn lp(g: &Group, ell: u32, j: usize) -> Result<Outcome, CliError> {
    let mut text = format!("{} (order {}), l = {ell}, J = {j}\n", g.name(), g.order());
    let mut ok = true;
    let filtration = match search_lp(g, ell, j)? {
        Some(f) => {
            let report = validate_lp(g, ell, j, &f)?;
            ok &= report.valid();
            text.push_str(&format!(
                "filtration orders {:?}: index {} <= J {}, semisimple (proxy) {}, abelian prime to l {}, l-group {}\n",
                f.orders(),
                report.index,
                report.index_ok,
                report.semisimple_ok,
                report.abelian_ok,
                report.l_group_ok,
            ));
            json!({ "orders": f.orders(), "report": lp_report_json(&report) })
        }
        None => {
            text.push_str("no filtration with these parameters\n");
            Value::Null
        }
    };
    let decomposition = if matrix::matrix_ring(g).is_some() {
        match corollary_decomposition(&g.whole(), ell, j) {
            Ok(d) => {
                text.push_str(&format!(
                    "decomposition: |residue kernel| = {}, |N| = {}, l(G/N) = {} <= {:.3}",
                    d.residue_kernel.order(),
                    d.n.order(),
                    d.length,
                    d.bound
                ));
                json!({
                    "available": true,
                    "residue_kernel_order": d.residue_kernel.order(),
                    "n_order": d.n.order(),
                    "length": d.length,
                    "bound": d.bound,
                    "filtration_orders": d.filtration.orders(),
                })
            }
            Err(Error::SearchFailed(why) | Error::InvalidInput(why)) => {
                text.push_str(&format!("decomposition unavailable: {why}"));
                json!({ "available": false, "reason": why })
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        text.push_str("decomposition: not a matrix group");
        Value::Null
    };
    Ok(Outcome::checked(
        ok,
        json!({
            "group": g.name(),
            "order": g.order(),
            "l": ell,
            "J": j,
            "filtration": filtration,
            "decomposition": decomposition,
        }),
        text.trim_end().to_string(),
    ))
}

fn suite_json(r: &SuiteReport) -> Value {
    let cases: Vec<Value> = r
        .cases
        .iter()
        .map(|c| json!({ "case": c.case, "status": c.status.as_str(), "detail": c.detail }))
        .collect();
    json!({
        "suite": r.suite.name(),
        "claim": r.claim,
        "pass": r.count(verify::Status::Pass),
        "fail": r.count(verify::Status::Fail),
        "skip": r.count(verify::Status::Skip),
        "cases": cases,
    })
}

fn verify_cmd(name: &str, opts: Options) -> Result<Outcome, CliError> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        let s = Suite::from_name(name).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite {name:?}; expected one of {}, all", names.join(", ")))
        })?;
        vec![s]
    };
    let reports = verify::run_many(&suites, &opts)?;
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("== {}: {}\n", r.suite, r.claim));
        for c in &r.cases {
            text.push_str(&format!("  {:4} {}: {}\n", c.status.as_str().to_uppercase(), c.case, c.detail));
        }
    }
    let count = |s| reports.iter().map(|r| r.count(s)).sum::<usize>();
    let (pass, fail, skip) = (count(verify::Status::Pass), count(verify::Status::Fail), count(verify::Status::Skip));
    text.push_str(&format!("{} suites: {pass} passed, {fail} failed, {skip} skipped", reports.len()));
    let status = if fail > 0 {
        Status::Fail
    } else if skip > 0 {
        Status::Cap
    } else {
        Status::Ok
    };
    Ok(Outcome {
        status,
        result: json!({
            "max_order": opts.max_order,
            "suites": reports.iter().map(suite_json).collect::<Vec<_>>(),
            "pass": pass,
            "fail": fail,
            "skip": skip,
        }),
        text,
    })
}
