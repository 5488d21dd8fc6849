use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use extauto::autos::{aut_group, out_group};
use extauto::compat::{Analysis, Theorem};
use extauto::corpus::{self, identify, Tag};
use extauto::extensions::{is_split, make_extension, realize, Extension};
use extauto::groups::is_isomorphic;
use extauto::io::{read_group, write_corpus};
use extauto::{Caps, Error, Group, GroupSpec};

/// `println!` that stops quietly when stdout is closed, e.g. under `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout().lock(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "extauto", version, about = "Automorphisms of finite group extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone)]
struct Opts {
    /// Catalog example name
    #[arg(long, global = true)]
    example: Option<String>,
    /// Group file (JSON or plain-text Cayley table); repeat for `group iso`
    #[arg(long = "group", global = true)]
    groups: Vec<PathBuf>,
    /// Group recipe such as `dihedral(8)`; repeat for `group iso`
    #[arg(long = "spec", global = true)]
    specs: Vec<String>,
    /// Generators of the normal subgroup H, as comma-separated element indices
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Largest group order accepted (default 512)
    #[arg(long, global = true)]
    cap_order: Option<usize>,
    /// Largest order for automorphism and isomorphism searches (default 256)
    #[arg(long, global = true)]
    cap_search: Option<usize>,
    /// Largest candidate space for the connecting-map search (default 1e7)
    #[arg(long, global = true)]
    cap_sigma: Option<u128>,
    /// Largest cochain space enumerated by brute force (default 1e6)
    #[arg(long, global = true)]
    cap_cochain: Option<u128>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enable examples that need raised caps
    #[arg(long, global = true)]
    heavy: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Single-group computations
    #[command(subcommand)]
    Group(GroupCmd),
    /// Extension analysis
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Theorem checks on an extension, or on the whole catalog with `all`
    Verify { which: Which },
    /// The built-in catalog
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand)]
enum GroupCmd {
    Info,
    Aut,
    Iso,
}

#[derive(Subcommand)]
enum ExtCmd {
    Analyze,
    Classes,
    Orbits,
    /// Split classes per S-orbit of the fiber
    SplitOrbits,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Cycle,
    Basic,
    Counting,
    Series,
    Solvability,
    All,
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    /// Check the expected values of the named entries (all if none given)
    Run {
        names: Vec<String>,
        /// Also write the catalog as JSON files into this directory
        #[arg(long)]
        save: Option<PathBuf>,
    },
}

/// A failed run: either an error or a verification failure.
enum Failure {
    Error(Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<Value, (Value, Failure)>;

fn exit_code(e: &Error) -> u8 {
    if e.is_cap() {
        return EXIT_CAP;
    }
    match e {
        Error::NotAGroup(_)
        | Error::UnsupportedSpec(_)
        | Error::NotNormal
        | Error::UnknownExample(_)
        | Error::InvalidInput(_)
        | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_VERIFY,
    }
}

impl Opts {
    fn caps(&self) -> Caps {
        let mut caps = if self.heavy { Caps::heavy() } else { Caps::default() };
        if let Some(n) = self.cap_order {
            caps.order = n;
            caps.search_order = caps.search_order.min(n);
        }
        if let Some(n) = self.cap_search {
            caps.search_order = n;
        }
        if let Some(n) = self.cap_sigma {
            caps.sigma = n;
        }
        if let Some(n) = self.cap_cochain {
            caps.cochain_enum = n;
        }
        caps
    }

    fn groups(&self, caps: &Caps) -> Result<Vec<Group>, Error> {
        let mut out = Vec::new();
        for s in &self.specs {
            out.push(s.parse::<GroupSpec>()?.build(caps)?);
        }
        for p in &self.groups {
            out.push(read_group(p)?);
        }
        if let Some(name) = &self.example {
            out.push(corpus::example(name)?.g().clone());
        }
        Ok(out)
    }

    fn group(&self, caps: &Caps) -> Result<Group, Error> {
        let gs = self.groups(caps)?;
        match gs.len() {
            1 => Ok(gs.into_iter().next().unwrap()),
            n => Err(Error::InvalidInput(format!("expected one group, got {n}"))),
        }
    }

    fn extension(&self, caps: &Caps) -> Result<Extension, Error> {
        if let Some(name) = &self.example {
            if self.subgroup.is_none() && self.specs.is_empty() && self.groups.is_empty() {
                return corpus::example(name);
            }
        }
        let g = self.group(caps)?;
        let gens = self
            .subgroup
            .as_deref()
            .ok_or_else(|| Error::InvalidInput("--subgroup is required with --spec or --group".into()))?
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .ok()
                    .filter(|&x| x < g.order())
                    .ok_or_else(|| Error::InvalidInput(format!("bad element index `{}`", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let h = g.subgroup_generated(&gens);
        make_extension(&g, &h)
    }
}

fn group_info(g: &Group, caps: &Caps) -> Result<Value, Error> {
    let prof: Vec<(usize, usize)> = g.order_profile().into_iter().enumerate().filter(|&(_, c)| c > 0).collect();
    Ok(json!({
        "label": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "solvable": g.is_solvable(),
        "center_order": g.center().order(),
        "derived_series": g.derived_series().iter().map(|s| s.order()).collect::<Vec<_>>(),
        "element_orders": prof,
        "identified_as": identify(g, caps).unwrap_or(None),
    }))
}

fn run_group(cmd: &GroupCmd, opts: &Opts, caps: &Caps) -> Result<Value, Error> {
    match cmd {
        GroupCmd::Info => group_info(&opts.group(caps)?, caps),
        GroupCmd::Aut => {
            let g = opts.group(caps)?;
            let a = aut_group(&g, caps)?;
            let o = out_group(&a, caps)?;
            let view = a.group_view();
            Ok(json!({
                "group": g.label(),
                "aut_order": a.order(),
                "inn_order": a.inner().len(),
                "out_order": o.order(),
                "aut_solvable": a.is_solvable(),
                "aut_identified_as": view.and_then(|v| identify(v, caps).unwrap_or(None)),
            }))
        }
        GroupCmd::Iso => {
            let gs = opts.groups(caps)?;
            if gs.len() != 2 {
                return Err(Error::InvalidInput(format!("`group iso` needs two groups, got {}", gs.len())));
            }
            let iso = is_isomorphic(&gs[0], &gs[1], caps)?;
            Ok(json!({
                "isomorphic": iso.is_some(),
                "map": iso.map(|h| (0..gs[0].order()).map(|x| h.apply(x)).collect::<Vec<_>>()),
            }))
        }
    }
}

fn analyze(a: &Analysis) -> Result<Value, Error> {
    let e = a.extension();
    let os = a.orbit_and_stabilizer()?;
    let rel = a.relative();
    Ok(json!({
        "G": e.g().order(),
        "H": e.h().order(),
        "Q": e.q().order(),
        "centric": a.is_centric(),
        "outer_action_trivial": a.outer().is_trivial(),
        "outer_action_injective": a.outer().is_injective(),
        "aut_h": a.aut_h().order(),
        "out_h": a.out_h().order(),
        "aut_q": a.aut_q().order(),
        "zH": a.module().m().order(),
        "S": a.s().order(),
        "B": a.s().b().len(),
        "inn_h": a.s().inn_h().len(),
        "H1": a.h1().order(),
        "H2": a.h2().order(),
        "fiber_classes": a.fiber().classes().len(),
        "orbit_size": os.orbit.len(),
        "stabilizer_order": os.stabilizer.len(),
        "aut_gh": match rel {
            Ok(r) => json!(r.perms.order()),
            Err(e) if e.is_cap() => json!("undetermined"),
            Err(e) => return Err(e.clone()),
        },
    }))
}

fn classes(a: &Analysis) -> Result<Value, Error> {
    let caps = a.caps();
    let mut out = Vec::new();
    for (i, fs) in a.fiber().classes().iter().enumerate() {
        let g = realize(fs)?;
        out.push(json!({
            "class": i,
            "split": is_split(fs, caps)?,
            "group": identify(g.g(), caps).unwrap_or(None),
            "abelian": g.g().is_abelian(),
        }));
    }
    Ok(json!({ "count": out.len(), "classes": out }))
}

fn orbits(a: &Analysis, with_split: bool) -> Result<Value, Error> {
    let caps = a.caps();
    let orbits = a.fiber_orbits()?;
    let mut rows = Vec::new();
    for o in &orbits {
        let mut row = json!({ "size": o.len(), "classes": o });
        if with_split {
            let mut split = Vec::new();
            for &c in o {
                if is_split(&a.fiber().classes()[c], caps)? {
                    split.push(c);
                }
            }
            row["split_classes"] = json!(split);
        }
        rows.push(row);
    }
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let mut v = json!({ "sizes": sizes, "orbits": rows });
    if with_split {
        let fixed: Vec<usize> = orbits.iter().filter(|o| o.len() == 1).map(|o| o[0]).collect();
        let mut fixed_split = Vec::new();
        for &c in &fixed {
            fixed_split.push(is_split(&a.fiber().classes()[c], caps)?);
        }
        v["fixed_points"] = json!(fixed);
        v["fixed_points_split"] = json!(fixed_split);
    }
    Ok(v)
}

fn theorems(which: Which) -> Vec<Theorem> {
    match which {
        Which::Cycle => vec![Theorem::Cycle],
        Which::Basic => vec![Theorem::Basic],
        Which::Counting => vec![Theorem::Counting],
        Which::Series => vec![Theorem::Series],
        Which::Solvability => vec![Theorem::Solvability],
        Which::All => Theorem::ALL.to_vec(),
    }
}

/// Runs the theorem checks on one extension, plus the catalog claims
/// when `name` is given. Text goes to stdout as it is produced.
fn verify_one(e: &Extension, name: Option<&str>, which: Which, caps: &Caps, text: bool) -> Outcome {
    let a = Analysis::new(e, caps).map_err(|err| (Value::Null, err.into()))?;
    let mut passed = true;
    let mut results = Vec::new();
    for t in theorems(which) {
        match a.verify(t) {
            Ok(v) => {
                if text {
                    out!("[{}] {}", if v.passed { "pass" } else { "FAIL" }, t.name());
                    for line in v.summary.lines() {
                        out!("    {line}");
                    }
                }
                passed &= v.passed;
                results.push(serde_json::to_value(&v).unwrap_or(Value::Null));
            }
            Err(err) => {
                if text {
                    out!("[{}] {}: {err}", if err.is_cap() { "cap" } else { "ERROR" }, t.name());
                }
                return Err((json!({ "results": results }), err.into()));
            }
        }
    }
    let mut out = json!({ "passed": passed, "results": results });
    if let (Some(name), Which::All) = (name, which) {
        let claims = claims_of(name, caps, text).map_err(|err| (out.clone(), err.into()))?;
        passed &= claims["passed"].as_bool().unwrap_or(false);
        out["claims"] = claims;
        out["passed"] = json!(passed);
    }
    if passed {
        Ok(out)
    } else {
        Err((out, Failure::Verify))
    }
}

fn claims_of(name: &str, caps: &Caps, text: bool) -> Result<Value, Error> {
    let outcomes = corpus::check_claims(name, caps)?;
    let passed = outcomes.iter().all(|o| o.passed);
    if text {
        for o in &outcomes {
            let tag = match o.claim.tag {
                Tag::Cited => "cited",
                Tag::Derived => "derived",
                Tag::Trivial => "trivial",
            };
            let seen = o.observed.as_ref().map_or_else(|| o.note.clone().unwrap_or_default(), |v| v.to_string());
            out!(
                "[{}] claim {:?} = {} ({tag}); observed {seen}",
                if o.passed { "pass" } else { "FAIL" },
                o.claim.quantity,
                o.claim.value
            );
        }
    }
    Ok(json!({ "passed": passed, "outcomes": outcomes }))
}

/// Runs `f` over the catalog, skipping heavy entries unless enabled.
fn over_catalog(names: &[String], heavy: bool, text: bool, mut f: impl FnMut(&str) -> Outcome) -> Outcome {
    let list: Vec<String> = if names.is_empty() {
        corpus::NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        names.to_vec()
    };
    let mut all = serde_json::Map::new();
    let mut worst: Option<Failure> = None;
    for name in &list {
        let d = corpus::descriptor(name).map_err(|e| (Value::Null, e.into()))?;
        if d.heavy && !heavy {
            if text {
                out!("== {name}: skipped (heavy; pass --heavy)");
            }
            all.insert(name.clone(), json!("skipped"));
            continue;
        }
        if text {
            out!("== {name}: {}", d.description);
        }
        match f(name) {
            Ok(v) => {
                all.insert(name.clone(), v);
            }
            Err((v, fail)) => {
                if let Failure::Error(e) = &fail {
                    if text {
                        out!("   error: {e}");
                    }
                    all.insert(name.clone(), json!({ "error": e.to_string(), "partial": v }));
                } else {
                    all.insert(name.clone(), v);
                }
                worst = Some(match (worst, fail) {
                    (Some(Failure::Verify), _) | (_, Failure::Verify) => Failure::Verify,
                    (_, f) => f,
                });
            }
        }
    }
    match worst {
        None => Ok(Value::Object(all)),
        Some(f) => Err((Value::Object(all), f)),
    }
}

fn lift<T>(r: Result<T, Error>) -> Result<T, (Value, Failure)> {
    r.map_err(|e| (Value::Null, Failure::Error(e)))
}

fn run(cli: &Cli) -> Outcome {
    let opts = &cli.opts;
    let caps = opts.caps();
    let text = opts.format == Format::Text;
    match &cli.command {
        Command::Group(cmd) => lift(run_group(cmd, opts, &caps)),
        Command::Ext(cmd) => {
            let e = lift(opts.extension(&caps))?;
            let a = lift(Analysis::new(&e, &caps))?;
            lift(match cmd {
                ExtCmd::Analyze => analyze(&a),
                ExtCmd::Classes => classes(&a),
                ExtCmd::Orbits => orbits(&a, false),
                ExtCmd::SplitOrbits => orbits(&a, true),
            })
        }
        Command::Verify { which } => {
            let single = opts.example.is_some() || !opts.specs.is_empty() || !opts.groups.is_empty();
            if single {
                let e = lift(opts.extension(&caps))?;
                let name = opts.example.as_deref().filter(|_| opts.subgroup.is_none());
                verify_one(&e, name, *which, &caps, text)
            } else {
                over_catalog(&[], opts.heavy, text, |name| {
                    let d = corpus::descriptor(name).map_err(|e| (Value::Null, e.into()))?;
                    let caps = if d.heavy { Caps::heavy() } else { caps.clone() };
                    let e = corpus::example(name).map_err(|e| (Value::Null, e.into()))?;
                    verify_one(&e, Some(name), *which, &caps, text)
                })
            }
        }
        Command::Corpus(CorpusCmd::List) => Ok(json!(corpus::catalog()
            .iter()
            .map(|d| json!({
                "name": d.name,
                "description": d.description,
                "heavy": d.heavy,
                "claims": d.claims.len(),
            }))
            .collect::<Vec<_>>())),
        Command::Corpus(CorpusCmd::Run { names, save }) => {
            if let Some(dir) = save {
                let written = lift(write_corpus(dir))?;
                if text {
                    out!("wrote {} files to {}", written.len(), dir.display());
                }
            }
            over_catalog(names, opts.heavy, text, |name| {
                let d = corpus::descriptor(name).map_err(|e| (Value::Null, e.into()))?;
                let caps = if d.heavy { Caps::heavy() } else { caps.clone() };
                let v = claims_of(name, &caps, text).map_err(|e| (Value::Null, e.into()))?;
                if v["passed"].as_bool() == Some(true) {
                    Ok(v)
                } else {
                    Err((v, Failure::Verify))
                }
            })
        }
    }
}

fn print_text(v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                out!("{k}: {}", compact(x));
            }
        }
        Value::Array(xs) => {
            for x in xs {
                out!("{}", compact(x));
            }
        }
        other => out!("{other}"),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = std::env::var("EXTAUTO_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let json_out = cli.opts.format == Format::Json;
    // verification commands stream their text as they go
    let streams = matches!(cli.command, Command::Verify { .. } | Command::Corpus(CorpusCmd::Run { .. }));
    match run(&cli) {
        Ok(v) => {
            if json_out {
                out!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            } else if !streams {
                print_text(&v);
            } else {
                out!("all checks passed");
            }
            ExitCode::SUCCESS
        }
        Err((v, fail)) => {
            if json_out && !v.is_null() {
                out!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            }
            match fail {
                Failure::Verify => {
                    eprintln!("verification failed");
                    ExitCode::from(EXIT_VERIFY)
                }
                Failure::Error(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(exit_code(&e))
                }
            }
        }
    }
}
