use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use trihopf::atlas::{run_atlas, AtlasConfig};
use trihopf::constructions::{
    apply_twist, exterior_algebra, group_algebra, modified_supergroup_algebra, semisimple_triangular,
    septuple_pipeline, supergroup_algebra, validate_septuple, verify_twist,
};
use trihopf::hopf::verify_hopf;
use trihopf::report::analyze;
use trihopf::triangular::{modify_r, triangular_report};
use trihopf::wire::{
    group_from_value, hopf_from_json, hopf_to_json, load_value, read_text, rep_from_value, septuple_from_value,
    tensor_from_json, tensor_to_json, to_canonical_json, write_atomic,
};
use trihopf::{Error, HopfData, RMatrix, Tensor2};

const DEFAULT_MAX_DIM: usize = 32;

#[derive(Parser)]
#[command(name = "trihopf", version, about = "Exact finite-dimensional triangular Hopf algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    GroupAlgebra,
    Exterior,
    Supergroup,
    ModifiedSupergroup,
    SemisimpleTriangular,
    SeptuplePipeline,
}

#[derive(Subcommand)]
enum Command {
    /// Build an algebra from a data file and write its dump.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Where to write the R-matrix; defaults to `<out stem>_R.json`.
        #[arg(long)]
        r_out: Option<PathBuf>,
    },
    /// Check the Hopf axioms, and optionally an R-matrix and a twist.
    Verify {
        dump: PathBuf,
        #[arg(long)]
        r: Option<PathBuf>,
        #[arg(long)]
        twist: Option<PathBuf>,
        /// Treat the dump as a superalgebra even if it has no odd elements.
        #[arg(long = "super")]
        is_super: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print structural invariants and, with `--r`, the theorem suite.
    Analyze {
        dump: PathBuf,
        #[arg(long)]
        r: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Twist an algebra (and optionally its R-matrix) by `J`.
    Twist {
        dump: PathBuf,
        #[arg(long)]
        twist: PathBuf,
        #[arg(long)]
        r: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        r_out: Option<PathBuf>,
    },
    /// Replace `R` by `R·R_u` for a group-like involution `u` given as a basis index.
    Modify {
        dump: PathBuf,
        #[arg(long)]
        r: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        out: PathBuf,
    },
    Septuple {
        #[command(subcommand)]
        action: SeptupleCommand,
    },
    /// Enumerate the built-in catalog and write one dump and report per instance.
    Atlas {
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SeptupleCommand {
    /// Check every septuple invariant.
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Failures that end the process, with their exit codes.
enum Failure {
    Verification(String),
    Input(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnsupportedStratum(_) => Failure::Unsupported(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn max_dim() -> Result<usize, Failure> {
    match std::env::var("HOPF_MAX_DIM") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("HOPF_MAX_DIM={s} is not a number"))),
        Err(_) => Ok(DEFAULT_MAX_DIM),
    }
}

fn check_dim(dim: usize) -> Result<(), Failure> {
    let bound = max_dim()?;
    if dim > bound {
        return Err(Failure::Input(format!("dimension {dim} exceeds HOPF_MAX_DIM = {bound}")));
    }
    Ok(())
}

fn load_hopf(path: &Path) -> Result<HopfData, Failure> {
    let h = hopf_from_json(&read_text(path)?)?;
    check_dim(h.dim())?;
    Ok(h)
}

fn load_tensor(path: &Path, h: &HopfData) -> Result<Tensor2, Failure> {
    let t = tensor_from_json(&read_text(path)?)?;
    if t.dim() != h.dim() {
        return Err(Failure::Input(format!(
            "{} lives in a {}-dimensional host, the algebra has dimension {}",
            path.display(),
            t.dim(),
            h.dim()
        )));
    }
    Ok(t)
}

fn write(path: &Path, text: &str) -> Outcome {
    write_atomic(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn default_r_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("hopf");
    out.with_file_name(format!("{stem}_R.json"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::Input(format!("missing key \"{key}\"")))
}

fn index_field(v: &Value, key: &str) -> Result<usize, Failure> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Failure::Input(format!("\"{key}\" must be a non-negative integer")))
}

fn cmd_build(kind: Kind, spec: &Path, out: &Path, r_out: Option<&Path>) -> Outcome {
    let v = load_value(spec)?;
    let base = spec.parent();
    let (h, r) = match kind {
        Kind::GroupAlgebra => {
            let g = group_from_value(v.get("group").unwrap_or(&v), base)?;
            check_dim(g.order())?;
            (group_algebra(&g), None)
        }
        Kind::Exterior => {
            let n = index_field(&v, "n")?;
            if n >= usize::BITS as usize {
                return Err(Failure::Input(format!("n = {n} is too large")));
            }
            check_dim(1 << n)?;
            (exterior_algebra(n), None)
        }
        Kind::Supergroup | Kind::ModifiedSupergroup => {
            let group = v.get("group").map(|g| group_from_value(g, base)).transpose()?;
            let (g, rep) = rep_from_value(field(&v, "rep")?, group.as_ref(), base)?;
            if rep.degree() < usize::BITS as usize {
                check_dim(g.order() << rep.degree())?;
            }
            if let Kind::Supergroup = kind {
                (supergroup_algebra(&g, &rep)?, None)
            } else {
                let (h, ru) = modified_supergroup_algebra(&g, &rep, index_field(&v, "u")?)?;
                (h, Some(ru))
            }
        }
        Kind::SemisimpleTriangular => {
            let s = septuple_from_value(&v, base)?;
            if s.w.degree() != 0 {
                return Err(Failure::Input("semisimple-triangular takes a septuple with W = 0".into()));
            }
            check_dim(s.group.order())?;
            let a = s.abelian_subgroup()?;
            let (h, r) = semisimple_triangular(&s.group, &a, &s.beta, s.u)?;
            (h, Some(r))
        }
        Kind::SeptuplePipeline => {
            let s = septuple_from_value(&v, base)?;
            if s.w.degree() < usize::BITS as usize {
                check_dim(s.group.order() << s.w.degree())?;
            }
            let (h, r) = septuple_pipeline(&s)?;
            (h, Some(r))
        }
    };
    write(out, &hopf_to_json(&h))?;
    println!("wrote {} (dim {})", out.display(), h.dim());
    if let Some(r) = r {
        let path = r_out.map(Path::to_path_buf).unwrap_or_else(|| default_r_path(out));
        write(&path, &tensor_to_json(&r))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn witness_text(w: &Option<Vec<usize>>) -> String {
    match w {
        Some(w) => format!("FAIL witness {w:?}"),
        None => "ok".into(),
    }
}

fn cmd_verify(dump: &Path, r: Option<&Path>, twist: Option<&Path>, is_super: bool, format: Format) -> Outcome {
    let mut h = load_hopf(dump)?;
    if is_super {
        h = h.as_super();
    }
    let axioms = verify_hopf(&h);
    let mut ok = axioms.all_ok();
    let mut lines: Vec<(String, String)> =
        axioms.checks().iter().map(|(n, c)| (n.to_string(), witness_text(&c.witness))).collect();
    let mut out = json!({ "hopf": axioms });

    if let Some(path) = r {
        let rm = RMatrix::new(&h, load_tensor(path, &h)?)
            .map_err(|_| Failure::Verification("R is not invertible".into()))?;
        let tri = triangular_report(&h, &rm);
        ok &= tri.triangular();
        for (n, c) in tri.checks() {
            lines.push((format!("R.{n}"), witness_text(&c.witness)));
        }
        out["triangular"] = serde_json::to_value(&tri).expect("serializable");
    }
    if let Some(path) = twist {
        let j = load_tensor(path, &h)?;
        let valid = match verify_twist(&h, &j) {
            Ok(b) => b,
            Err(Error::NotInvertible) => false,
            Err(e) => return Err(e.into()),
        };
        ok &= valid;
        lines.push(("twist".into(), if valid { "ok".into() } else { "FAIL".into() }));
        out["twist"] = json!(valid);
    }
    out["ok"] = json!(ok);

    match format {
        Format::Json => print!("{}", to_canonical_json(&out)),
        Format::Text => {
            for (name, status) in &lines {
                println!("{name}: {status}");
            }
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("verification failed".into()))
    }
}

fn cmd_analyze(dump: &Path, r: Option<&Path>, format: Format) -> Outcome {
    let h = load_hopf(dump)?;
    let rm = match r {
        Some(path) => Some(RMatrix::new(&h, load_tensor(path, &h)?)?),
        None => None,
    };
    let report = analyze(&h, rm.as_ref());
    match format {
        Format::Json => print!("{}", to_canonical_json(&serde_json::to_value(&report).expect("serializable"))),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.theorems_ok() {
        Ok(())
    } else {
        Err(Failure::Verification("a structure theorem check failed".into()))
    }
}

fn cmd_twist(dump: &Path, twist: &Path, r: Option<&Path>, out: &Path, r_out: Option<&Path>) -> Outcome {
    let h = load_hopf(dump)?;
    let j = load_tensor(twist, &h)?;
    let r = r.map(|p| load_tensor(p, &h)).transpose()?;
    let (twisted, r) = match apply_twist(&h, &j, r.as_ref()) {
        Ok(x) => x,
        Err(Error::Twist(m)) => return Err(Failure::Verification(format!("invalid twist: {m}"))),
        Err(e) => return Err(e.into()),
    };
    write(out, &hopf_to_json(&twisted))?;
    println!("wrote {}", out.display());
    if let Some(r) = r {
        let path = r_out.map(Path::to_path_buf).unwrap_or_else(|| default_r_path(out));
        write(&path, &tensor_to_json(&r))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn cmd_modify(dump: &Path, r: &Path, u: usize, out: &Path) -> Outcome {
    let h = load_hopf(dump)?;
    if u >= h.dim() {
        return Err(Failure::Input(format!("u = {u} is not a basis index of a {}-dimensional algebra", h.dim())));
    }
    let rm = RMatrix::new(&h, load_tensor(r, &h)?)?;
    let modified = modify_r(&h, &rm, &h.basis(u))?;
    write(out, &tensor_to_json(modified.value()))?;
    println!("wrote {}", out.display());
    Ok(())
}

fn cmd_septuple_validate(file: &Path, format: Format) -> Outcome {
    let s = septuple_from_value(&load_value(file)?, file.parent())?;
    let report = validate_septuple(&s);
    match format {
        Format::Json => print!("{}", to_canonical_json(&serde_json::to_value(&report).expect("serializable"))),
        Format::Text => {
            for c in &report.checks {
                match &c.witness {
                    Some(w) => println!("{}: FAIL {w}", c.name),
                    None => println!("{}: ok", c.name),
                }
            }
        }
    }
    if report.all_ok() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("invalid septuple: {}", report.failures().join(", "))))
    }
}

fn cmd_atlas(max_order: usize, out: &Path, workers: Option<usize>) -> Outcome {
    let workers = workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let config = AtlasConfig { max_order, workers, max_dim: max_dim()? };
    let summary = run_atlas(&config, out)?;
    println!("{} instances, {} skipped", summary.outcomes.len(), summary.skipped.len());
    for id in &summary.skipped {
        println!("skipped {id}: dimension above HOPF_MAX_DIM");
    }
    let failures = summary.failures();
    if failures.is_empty() {
        Ok(())
    } else {
        for id in &failures {
            println!("FAIL {id}");
        }
        Err(Failure::Verification(format!("{} instances failed", failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Build { kind, spec, out, r_out } => cmd_build(*kind, spec, out, r_out.as_deref()),
        Command::Verify { dump, r, twist, is_super, format } => {
            cmd_verify(dump, r.as_deref(), twist.as_deref(), *is_super, *format)
        }
        Command::Analyze { dump, r, format } => cmd_analyze(dump, r.as_deref(), *format),
        Command::Twist { dump, twist, r, out, r_out } => cmd_twist(dump, twist, r.as_deref(), out, r_out.as_deref()),
        Command::Modify { dump, r, u, out } => cmd_modify(dump, r, *u, out),
        Command::Septuple { action: SeptupleCommand::Validate { file, format } } => cmd_septuple_validate(file, *format),
        Command::Atlas { max_order, out, workers } => cmd_atlas(*max_order, out, *workers),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
