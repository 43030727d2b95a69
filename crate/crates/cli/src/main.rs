use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use qmodel::algebra::{Algebra, GroundAlgebra, DEFAULT_LENGTH_CAP};
use qmodel::cotorsion::{self, CotorsionPair};
use qmodel::exec::Execution;
use qmodel::field::FieldSpec;
use qmodel::fixtures;
use qmodel::homalg::{self, HomAlgError, ProjResolution};
use qmodel::io::{self, IoError, RepDoc};
use qmodel::modcat::{self, ModError, Representation};
use qmodel::suites::{self, SuiteConfig, SuiteError, SuiteReport, TOWER_MAX_STABILIZATION};
use qmodel::tower;

#[derive(Parser)]
#[command(name = "qmodel", version, about = "Representations of self-injective quiver algebras over a ground algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report finiteness, the radical condition, self-injectivity and the Nakayama permutation.
    Check(Common),
    /// Minimal projective resolution of a representation or of a simple.
    Resolve {
        #[command(flatten)]
        common: Common,
        /// Resolve the simple at this vertex instead of `--rep`.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// `C_q`, `K_q` and their derived functors at a vertex.
    Functor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vertex: String,
    },
    /// Membership verdicts for `ℰ` and the classes of each built-in cotorsion pair.
    Classify(Common),
    /// Build and verify the tower starting from `M_0` (default: the simple at the first vertex).
    Tower {
        #[command(flatten)]
        common: Common,
        /// Initial R-module `B^0`: `k` (residue field) or `R` (regular module).
        #[arg(long, default_value = "k")]
        b0: String,
    },
    /// Run a named verification suite.
    Verify {
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// Built-in fixture: C<N>, CN:<N>, Z6, ZA3:<jmin>:<jmax>, A2.
    #[arg(long)]
    fixture: Option<String>,
    /// Quiver presentation JSON file.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Representation JSON file.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// `q` or `fp:<p>`.
    #[arg(long)]
    field: Option<String>,
    /// `k` or `dual`.
    #[arg(long)]
    ground: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    depth: Option<usize>,
    /// Number of vertices of the cycle fixture.
    #[arg(long = "N")]
    n: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Run trials on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Invalid(ModError::Precondition(m)) => CliError::Precondition(m),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<ModError> for CliError {
    fn from(e: ModError) -> Self {
        match e {
            ModError::Precondition(m) => CliError::Precondition(m),
            ModError::Algebra(a) => CliError::Parse(a.to_string()),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<HomAlgError> for CliError {
    fn from(e: HomAlgError) -> Self {
        match e {
            HomAlgError::Mod(m) => m.into(),
            other => CliError::Failure(other.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::UnknownSuite(s) => {
                CliError::Parse(format!("unknown suite `{s}`; expected one of {}", suites::SUITES.join(", ")))
            }
            SuiteError::Precondition(m) => CliError::Precondition(m),
            SuiteError::Algebra(a) => CliError::Parse(a.to_string()),
            SuiteError::Hom(h) => h.into(),
        }
    }
}

/// A command result: the report and whether its checks passed.
struct Outcome {
    report: Value,
    table: String,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = match &cli.command {
        Command::Check(c) | Command::Classify(c) => c.format,
        Command::Resolve { common, .. }
        | Command::Functor { common, .. }
        | Command::Tower { common, .. }
        | Command::Verify { common, .. } => common.format,
    };
    match run(cli.command) {
        Ok(out) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&out.report).expect("serializable") + "\n",
                Format::Table => out.table,
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Check(c) => check(&c),
        Command::Resolve { common, vertex } => resolve(&common, vertex.as_deref()),
        Command::Functor { common, vertex } => functor(&common, &vertex),
        Command::Classify(c) => classify(&c),
        Command::Tower { common, b0 } => run_tower(&common, &b0),
        Command::Verify { suite, common } => verify(&suite, &common),
    }
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_field(text: &str) -> Result<FieldSpec, CliError> {
    FieldSpec::parse(text).map_err(|e| CliError::Parse(format!("--field: {e}")))
}

/// Loaded inputs: the algebra, its ground, and the representation if one was given.
struct Inputs {
    algebra: Arc<Algebra>,
    ground: Arc<GroundAlgebra>,
    rep: Option<Arc<Representation>>,
}

fn load(c: &Common) -> Result<Inputs, CliError> {
    let rep_doc: Option<RepDoc> = match &c.rep {
        Some(p) => Some(serde_json::from_str(&read(p)?).map_err(IoError::from)?),
        None => None,
    };
    let field = match (&c.field, &rep_doc) {
        (Some(f), _) => parse_field(f)?,
        (None, Some(d)) => parse_field(&d.field)?,
        (None, None) => FieldSpec::Rationals,
    };
    let algebra = match (&c.quiver, &c.fixture) {
        (Some(_), Some(_)) => return Err(CliError::Parse("give either --quiver or --fixture, not both".into())),
        (Some(p), None) => {
            let pres = io::parse_quiver(&read(p)?)?;
            Algebra::build(pres, field, DEFAULT_LENGTH_CAP).map_err(|e| CliError::Precondition(e.to_string()))?
        }
        (None, Some(f)) => fixtures::by_name(f, field).map_err(|e| CliError::Parse(e.to_string()))?,
        (None, None) => match c.n {
            Some(n) if n > 0 => fixtures::cycle(n, field).map_err(|e| CliError::Parse(e.to_string()))?,
            _ => return Err(CliError::Parse("an algebra is required: --fixture or --quiver".into())),
        },
    };
    let rep = match &rep_doc {
        Some(d) => Some(Arc::new(io::representation_from_doc(d, &algebra)?)),
        None => None,
    };
    let ground_name = match (&c.ground, &rep) {
        (Some(g), _) => g.clone(),
        (None, Some(r)) => r.ground().name.clone(),
        (None, None) => "k".into(),
    };
    let ground = fixtures::ground_by_name(&ground_name, field)
        .ok_or_else(|| CliError::Parse(format!("--ground: unknown ground algebra `{ground_name}`")))?;
    if let Some(r) = &rep {
        if r.ground().name != ground.name {
            return Err(CliError::Parse(format!(
                "--ground `{}` differs from the representation's ground `{}`",
                ground.name,
                r.ground().name
            )));
        }
    }
    Ok(Inputs { algebra, ground, rep })
}

fn vertex_of(alg: &Algebra, name: &str) -> Result<usize, CliError> {
    alg.presentation().vertex_index(name).map_err(|e| CliError::Parse(format!("--vertex: {e}")))
}

fn require_rep(inputs: &Inputs) -> Result<Arc<Representation>, CliError> {
    inputs.rep.clone().ok_or_else(|| CliError::Parse("--rep is required".into()))
}

fn table_of(pairs: &[(String, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    pairs.iter().map(|(k, v)| format!("{k:<w$}  {v}\n")).collect()
}

fn check(c: &Common) -> Result<Outcome, CliError> {
    let inputs = load(c)?;
    let alg = &inputs.algebra;
    let r = alg.check_conditions();
    let name = |v: usize| alg.vertex_name(v).to_string();
    let nakayama: BTreeMap<String, Option<String>> =
        (0..alg.num_vertices()).map(|q| (name(q), r.nakayama[q].map(name))).collect();
    let projective_dims: BTreeMap<String, usize> =
        (0..alg.num_vertices()).map(|q| (name(q), (0..alg.num_vertices()).map(|p| alg.hom_dim(q, p)).sum())).collect();
    let report = json!({
        "field": alg.field().to_string(),
        "dimension": r.dimension,
        "finite": r.finite,
        "radical_condition": r.radical_condition,
        "selfinj": r.self_injective,
        "loewy_length": r.loewy_length,
        "nakayama": nakayama,
        "projective_dims": projective_dims,
    });
    let table = table_of(&[
        ("dimension".into(), r.dimension.to_string()),
        ("finite".into(), r.finite.to_string()),
        ("radical_condition".into(), r.radical_condition.to_string()),
        ("selfinj".into(), r.self_injective.to_string()),
        ("loewy_length".into(), r.loewy_length.to_string()),
        (
            "nakayama".into(),
            nakayama
                .iter()
                .map(|(k, v)| format!("{k}->{}", v.as_deref().unwrap_or("-")))
                .collect::<Vec<_>>()
                .join(" "),
        ),
    ]);
    // condition verdicts are reported, not enforced
    Ok(Outcome { report, table, passed: true })
}

fn resolve(c: &Common, vertex: Option<&str>) -> Result<Outcome, CliError> {
    let inputs = load(c)?;
    let alg = &inputs.algebra;
    let depth = c.depth.unwrap_or(4);
    let res = match vertex {
        Some(v) => homalg::simple_resolution(alg, vertex_of(alg, v)?, depth)?,
        None => {
            let x = require_rep(&inputs)?;
            Arc::new(ProjResolution::new(&x, depth)?)
        }
    };
    let mut terms = Vec::new();
    let mut rows = Vec::new();
    for i in 0..=depth {
        let gens: Vec<String> = res.gens(i).iter().map(|&g| alg.vertex_name(g).to_string()).collect();
        let dim = res.terms.get(i).map_or(0, |t| t.rep.total_dim());
        rows.push((format!("P_{i}"), format!("dim {dim}: {}", if gens.is_empty() { "0".into() } else { gens.join(" + ") })));
        terms.push(json!({"degree": i, "generators": gens, "dim": dim}));
    }
    rows.push(("minimal".into(), res.minimal.to_string()));
    let report = json!({"depth": depth, "minimal": res.minimal, "terms": terms});
    Ok(Outcome { report, table: table_of(&rows), passed: res.minimal })
}

fn functor(c: &Common, vertex: &str) -> Result<Outcome, CliError> {
    let inputs = load(c)?;
    let x = require_rep(&inputs)?;
    let q = vertex_of(&inputs.algebra, vertex)?;
    let depth = c.depth.unwrap_or(2);
    let mut report = serde_json::Map::new();
    let mut rows = Vec::new();
    let mut put = |key: String, m: Representation| {
        rows.push((key.clone(), format!("dim {}", m.total_dim())));
        report.insert(key, json!({"dim": m.total_dim(), "module": io::representation_to_doc(&m)}));
    };
    put("C".into(), homalg::c_module(q, &x)?);
    put("K".into(), homalg::k_module(q, &x)?);
    for i in 1..=depth {
        put(format!("L{i}C"), homalg::derived_c(i, q, &x)?);
        put(format!("R{i}K"), homalg::derived_k(i, q, &x)?);
    }
    Ok(Outcome { report: Value::Object(report), table: table_of(&rows), passed: true })
}

fn classify(c: &Common) -> Result<Outcome, CliError> {
    let inputs = load(c)?;
    let x = require_rep(&inputs)?;
    let e = homalg::e_criteria(&x)?;
    let mut passed = e.agree();
    let mut rows = vec![("E".into(), format!("{} (criteria agree: {})", e.flat, e.agree()))];
    let mut pairs = BTreeMap::new();
    for name in ["projective-all", "all-injective"] {
        let pair = CotorsionPair::by_name(name, &inputs.ground)?;
        let o = cotorsion::orthogonality_check(&x, &pair)?;
        let w = cotorsion::trivial_class_membership(&x, &pair)?;
        passed &= o.agree() && w.verified == w.in_e;
        rows.push((format!("{name} Phi"), o.phi_definition.to_string()));
        rows.push((format!("{name} Psi"), o.psi_definition.to_string()));
        rows.push((format!("{name} W"), w.verified.to_string()));
        pairs.insert(
            name,
            json!({"phi": o.phi_definition, "psi": o.psi_definition, "w": w.verified, "orthogonality": o, "w_witness": w}),
        );
    }
    let report = json!({"e": e.flat, "e_criteria": e, "pairs": pairs});
    Ok(Outcome { report, table: table_of(&rows), passed })
}

fn run_tower(c: &Common, b0: &str) -> Result<Outcome, CliError> {
    let inputs = load(c)?;
    let alg = &inputs.algebra;
    if !alg.check_conditions().self_injective {
        return Err(CliError::Precondition("the tower requires a self-injective algebra".into()));
    }
    let depth = c.depth.unwrap_or(8);
    let m0 = match &inputs.rep {
        Some(x) => x.clone(),
        None => Arc::new(modcat::simple(alg, 0)),
    };
    let b0 = match b0 {
        "k" => Arc::new(modcat::residue_module(&inputs.ground)?),
        "R" => Arc::new(modcat::regular_module(&inputs.ground)),
        other => return Err(CliError::Parse(format!("--b0: expected `k` or `R`, found `{other}`"))),
    };
    let t = tower::build_tower(&m0, &b0, depth)?;
    let r = tower::verify_tower(&t)?;
    let passed = r.passed(TOWER_MAX_STABILIZATION);
    let rows = vec![
        ("dims T".into(), format!("{:?}", r.stages.iter().map(|s| s.dim_t).collect::<Vec<_>>())),
        ("dims E".into(), format!("{:?}", r.stages.iter().map(|s| s.dim_e).collect::<Vec<_>>())),
        ("stabilization".into(), format!("{:?}", r.stabilization.iter().map(|s| s.index).collect::<Vec<_>>())),
        ("delta iso".into(), format!("{:?}", r.delta_iso)),
        ("passed".into(), passed.to_string()),
    ];
    let report = json!({"passed": passed, "report": r});
    Ok(Outcome { report, table: table_of(&rows), passed })
}

fn verify(suite: &str, c: &Common) -> Result<Outcome, CliError> {
    if c.quiver.is_some() || c.rep.is_some() {
        return Err(CliError::Parse("suites run on built-in fixtures; use --fixture".into()));
    }
    let cfg = SuiteConfig {
        fixture: c.fixture.clone(),
        field: c.field.as_deref().map(parse_field).transpose()?,
        ground: c.ground.clone(),
        trials: c.trials,
        seed: c.seed,
        depth: c.depth,
        n: c.n,
        execution: if c.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let r: SuiteReport = suites::run_suite(suite, &cfg)?;
    Ok(Outcome { report: serde_json::to_value(&r).expect("serializable"), table: r.to_table(), passed: r.passed })
}
