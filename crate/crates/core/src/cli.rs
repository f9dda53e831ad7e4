//! Command-line front end. `run` does all the work and returns the text the
//! binary should print, so the whole surface is testable in-process.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::charrep::{qdim, tensor_decompose};
use crate::error::Error;
use crate::qnum::QContext;
use crate::spectra::{
    box_grid, classify_su3_detailed, cube_grid, fiber_dimension_allowed, is_cospherical, is_l_irreducible,
    is_spherical_cyclic, isolation_witness, prv_determinant, prv_invertible, scan, spherical_multiplicity, write_csv,
    Axis, ScanGroup, ScanRow, SphericalMultiplicity, UnitaryClass,
};
use crate::suq2::{classify_su2, intertwiner_closed_form, intertwiner_numeric, principal_series};
use crate::weyl::{CartanData, DominantWeight, Weight};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qspherical",
    version,
    about = "Spherical unitary duals of quantum Lorentz-type groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Deformation parameter, 0.001 ≤ q ≤ 0.999.
    #[arg(long, global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Spin cutoff S_max of the truncated principal series.
    #[arg(long = "cutoff", global = true, default_value_t = 8)]
    pub s_max: u32,
    /// Write the report here instead of standard output.
    #[arg(long = "out", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Group {
    Su2,
    Su3,
}

impl Group {
    fn scan_group(self) -> ScanGroup {
        match self {
            Group::Su2 => ScanGroup::Su2,
            Group::Su3 => ScanGroup::Su3,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the spherical principal series V(0,ν).
    Classify {
        group: Group,
        /// Comma-separated complex literals such as "2,-2,0" or "0.5+1.2i".
        #[arg(allow_hyphen_values = true)]
        nu: String,
    },
    /// Classify every point of a grid; rows in lexicographic grid order.
    Scan {
        group: Group,
        #[arg(long, allow_hyphen_values = true)]
        center: String,
        /// Direction of a box axis; pair each with a --range.
        #[arg(long, allow_hyphen_values = true)]
        dir: Vec<String>,
        /// "lo:hi" for the matching --dir.
        #[arg(long, allow_hyphen_values = true)]
        range: Vec<String>,
        #[arg(long)]
        step: f64,
        /// Scan the cube of this half-width around the center instead of a box.
        #[arg(long, conflicts_with_all = ["dir", "range"])]
        radius: Option<f64>,
    },
    /// Compare the closed-form and least-squares intertwiners.
    Intertwiner {
        #[arg(allow_hyphen_values = true)]
        nu: String,
    },
    /// Matrices of a, b, c, d on the truncated principal series.
    DumpModel {
        #[arg(allow_hyphen_values = true)]
        nu: String,
    },
    /// Classical and quantum dimension of V(λ).
    Qdim {
        #[arg(long)]
        n: usize,
        /// Partition, e.g. "2,1".
        lambda: String,
    },
    /// Decompose V(λ) ⊗ V(μ).
    Tensor {
        #[arg(long)]
        n: usize,
        lambda: String,
        mu: String,
    },
    /// PRV determinant, cyclicity and spherical multiplicity.
    Prv {
        #[arg(long)]
        n: usize,
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        nu: String,
    },
    /// Can N be the dimension of the fundamental object under a fiber functor?
    Fiber { dim: f64 },
    /// Replay the isolation argument near 2ρ.
    Isolation {
        #[arg(long)]
        n: usize,
        #[arg(allow_hyphen_values = true)]
        nu: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Degenerate(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Argument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Degenerate(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<String, Failure>;

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

/// Parse `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i`.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse complex number {text:?}");
    if s.is_empty() {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

pub fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, String> {
    text.split(',').map(parse_complex).collect()
}

fn parse_nu(text: &str, arity: usize) -> std::result::Result<Vec<Complex64>, Failure> {
    let v = parse_complex_list(text).map_err(Failure::Usage)?;
    if v.len() != arity {
        return usage(format!("expected {arity} coordinates, got {} in {text:?}", v.len()));
    }
    Ok(v)
}

fn parse_weight(text: &str, n: usize) -> std::result::Result<Weight, Failure> {
    Ok(Weight::new(parse_nu(text, n)?)?)
}

fn parse_partition(cd: &CartanData, text: &str) -> std::result::Result<DominantWeight, Failure> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("cannot parse partition {text:?}")))?;
    Ok(DominantWeight::new(cd, &parts)?)
}

fn parse_range(text: &str) -> std::result::Result<(f64, f64), Failure> {
    let bad = || Failure::Usage(format!("range must look like lo:hi, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        lo.trim().parse().map_err(|_| bad())?,
        hi.trim().parse().map_err(|_| bad())?,
    ))
}

fn context(cfg: &CliConfig) -> std::result::Result<QContext, Failure> {
    let Some(q) = cfg.q else {
        return usage("--q is required for this command");
    };
    Ok(QContext::with_tol(q, cfg.tol)?)
}

fn s_max(cfg: &CliConfig) -> std::result::Result<u32, Failure> {
    if cfg.s_max < 2 {
        return usage(format!("--cutoff must be at least 2, got {}", cfg.s_max));
    }
    Ok(cfg.s_max)
}

fn cd(n: usize) -> std::result::Result<CartanData, Failure> {
    Ok(CartanData::new(n)?)
}

fn z(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

fn report(mut body: Value) -> String {
    body["schema_version"] = json!(SCHEMA_VERSION);
    let mut s = serde_json::to_string_pretty(&body).expect("json values always serialize");
    s.push('\n');
    s
}

fn class_json(class: &UnitaryClass) -> Value {
    let (t, s) = match class {
        UnitaryClass::Complementary { t, s } => (json!(t), json!(s)),
        _ => (Value::Null, Value::Null),
    };
    json!({
        "class": class.name(),
        "t": t,
        "s": s,
        "reason": class.reason().map(|r| r.name()),
    })
}

fn csv_rows(arity: usize, rows: &[ScanRow]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, arity, rows).expect("writing to memory");
    String::from_utf8(buf).expect("csv is UTF-8")
}

fn cmd_classify(cfg: &CliConfig, group: Group, text: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let sg = group.scan_group();
    let nu = parse_nu(text, sg.arity())?;
    let (class, w, shift) = match group {
        Group::Su2 => (classify_su2(&ctx, nu[0]), None, None),
        Group::Su3 => {
            let r = classify_su3_detailed(&ctx, &Weight::new(nu.clone())?)?;
            (r.class, r.weyl_element, r.lattice_shift)
        }
    };
    if cfg.format == Format::Csv {
        return Ok(csv_rows(sg.arity(), &[ScanRow { nu, class }]));
    }
    let mut body = class_json(&class);
    body["group"] = json!(format!("{group:?}").to_lowercase());
    body["q"] = json!(ctx.q());
    body["nu"] = json!(nu.iter().map(|&v| z(v)).collect::<Vec<_>>());
    body["weyl_element"] = json!(w);
    body["lattice_shift"] = json!(shift);
    Ok(report(body))
}

fn cmd_scan(
    cfg: &CliConfig,
    group: Group,
    center: &str,
    dirs: &[String],
    ranges: &[String],
    step: f64,
    radius: Option<f64>,
) -> CmdResult {
    let ctx = context(cfg)?;
    let sg = group.scan_group();
    let center = parse_nu(center, sg.arity())?;
    let points = match radius {
        Some(r) => cube_grid(sg, &center, r, step)?,
        None => {
            if dirs.len() != ranges.len() {
                return usage(format!("{} --dir but {} --range", dirs.len(), ranges.len()));
            }
            let mut axes = Vec::new();
            for (d, r) in dirs.iter().zip(ranges) {
                let (lo, hi) = parse_range(r)?;
                axes.push(Axis {
                    dir: parse_nu(d, sg.arity())?,
                    lo,
                    hi,
                });
            }
            box_grid(&center, &axes, step)?
        }
    };
    let rows = scan(&ctx, sg, &points)?;
    if cfg.format == Format::Csv {
        return Ok(csv_rows(sg.arity(), &rows));
    }
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let mut v = class_json(&r.class);
            v["nu"] = json!(r.nu.iter().map(|&c| z(c)).collect::<Vec<_>>());
            v
        })
        .collect();
    Ok(report(
        json!({ "group": format!("{group:?}").to_lowercase(), "q": ctx.q(), "rows": rows }),
    ))
}

fn cmd_intertwiner(cfg: &CliConfig, text: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let s_max = s_max(cfg)?;
    let nu = parse_nu(text, 1)?[0];
    let numeric = intertwiner_numeric(&ctx, nu, s_max)?;
    let mut rows = Vec::new();
    for (s, &num) in numeric.iter().enumerate() {
        let closed = intertwiner_closed_form(&ctx, nu, s as u32)?;
        rows.push((s, closed, num, (closed - num).norm()));
    }
    if cfg.format == Format::Csv {
        let mut out = String::from("s,closed_re,closed_im,numeric_re,numeric_im,abs_diff\n");
        for (s, c, n, d) in &rows {
            writeln!(out, "{s},{},{},{},{},{d:e}", c.re, c.im, n.re, n.im).unwrap();
        }
        return Ok(out);
    }
    let max_diff = rows.iter().map(|r| r.3).fold(0.0, f64::max);
    let rows: Vec<Value> = rows
        .iter()
        .map(|(s, c, n, d)| json!({ "s": s, "closed_form": z(*c), "numeric": z(*n), "abs_diff": d }))
        .collect();
    Ok(report(json!({
        "q": ctx.q(),
        "nu": z(nu),
        "s_max": s_max,
        "rows": rows,
        "max_abs_diff": max_diff,
    })))
}

fn cmd_dump_model(cfg: &CliConfig, text: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let nu = parse_nu(text, 1)?[0];
    let model = principal_series(&ctx, nu, s_max(cfg)?)?;
    let dump = model.dump();
    if cfg.format == Format::Csv {
        let mut out = String::from("generator,truncated,row,col,re,im\n");
        for g in &dump.generators {
            for (r, row) in g.matrix.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    if v[0] != 0.0 || v[1] != 0.0 {
                        writeln!(out, "{},{},{r},{c},{},{}", g.name, g.truncated, v[0], v[1]).unwrap();
                    }
                }
            }
        }
        return Ok(out);
    }
    Ok(report(serde_json::to_value(&dump).expect("dump serializes")))
}

fn cmd_qdim(cfg: &CliConfig, n: usize, lambda: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let cd = cd(n)?;
    let lam = parse_partition(&cd, lambda)?;
    let qd = qdim(&ctx, &cd, &lam)?;
    if cfg.format == Format::Csv {
        return Ok(format!("lambda,dim,qdim\n\"{lam}\",{},{qd}\n", lam.weyl_dimension()));
    }
    Ok(report(
        json!({ "n": n, "q": ctx.q(), "lambda": lam.to_string(), "dim": lam.weyl_dimension(), "qdim": qd }),
    ))
}

fn cmd_tensor(cfg: &CliConfig, n: usize, lambda: &str, mu: &str) -> CmdResult {
    let cd = cd(n)?;
    let (lam, mu) = (parse_partition(&cd, lambda)?, parse_partition(&cd, mu)?);
    let fusion = tensor_decompose(&cd, &lam, &mu)?;
    if cfg.format == Format::Csv {
        let mut out = String::from("summand,dim,multiplicity\n");
        for (k, m) in &fusion.summands {
            writeln!(out, "\"{k}\",{},{m}", k.weyl_dimension()).unwrap();
        }
        return Ok(out);
    }
    let summands: Vec<Value> = fusion
        .summands
        .iter()
        .map(|(k, m)| json!({ "weight": k.to_string(), "dim": k.weyl_dimension(), "multiplicity": m }))
        .collect();
    Ok(report(json!({
        "n": n,
        "lambda": lam.to_string(),
        "mu": mu.to_string(),
        "dim": fusion.dim(),
        "summands": summands,
    })))
}

fn cmd_prv(cfg: &CliConfig, n: usize, lambda: &str, text: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let cd = cd(n)?;
    let lam = parse_partition(&cd, lambda)?;
    let nu = parse_weight(text, n)?;
    let det = prv_determinant(&ctx, &cd, &lam, &nu)?;
    let mult = match spherical_multiplicity(&ctx, &cd, &lam, &nu)? {
        SphericalMultiplicity::Exact(m) => Some(m),
        SphericalMultiplicity::NotComputed => None,
    };
    let fields = [
        ("prv_invertible", prv_invertible(&ctx, &cd, &nu)?),
        ("spherical_cyclic", is_spherical_cyclic(&ctx, &cd, &nu)?),
        ("cospherical", is_cospherical(&ctx, &cd, &nu)?),
        ("irreducible", is_l_irreducible(&ctx, &cd, &nu)?),
    ];
    if cfg.format == Format::Csv {
        let mut out =
            String::from("det_re,det_im,prv_invertible,spherical_cyclic,cospherical,irreducible,multiplicity\n");
        let flags: Vec<String> = fields.iter().map(|(_, b)| b.to_string()).collect();
        let m = mult.map(|m| m.to_string()).unwrap_or_default();
        writeln!(out, "{},{},{},{m}", det.re, det.im, flags.join(",")).unwrap();
        return Ok(out);
    }
    let mut body = json!({
        "n": n,
        "q": ctx.q(),
        "lambda": lam.to_string(),
        "nu": nu,
        "prv_determinant": z(det),
        "spherical_multiplicity": mult,
    });
    for (k, b) in fields {
        body[k] = json!(b);
    }
    Ok(report(body))
}

fn cmd_fiber(cfg: &CliConfig, dim: f64) -> CmdResult {
    let ctx = context(cfg)?;
    let v = fiber_dimension_allowed(&ctx, dim)?;
    if cfg.format == Format::Csv {
        return Ok(format!("dim,t,allowed\n{dim},{},{}\n", v.t, v.allowed));
    }
    Ok(report(
        json!({ "q": ctx.q(), "dim": dim, "t": v.t, "allowed": v.allowed }),
    ))
}

fn cmd_isolation(cfg: &CliConfig, n: usize, text: &str) -> CmdResult {
    let ctx = context(cfg)?;
    let cd = cd(n)?;
    let nu = parse_weight(text, n)?;
    let cert = isolation_witness(&ctx, &cd, &nu)?;
    if cfg.format == Format::Csv {
        return usage("isolation certificates are only available as json");
    }
    let mut body = serde_json::to_value(&cert).expect("certificate serializes");
    body["q"] = json!(ctx.q());
    Ok(report(body))
}

fn dispatch(cli: &Cli) -> CmdResult {
    let cfg = &cli.config;
    match &cli.command {
        Command::Classify { group, nu } => cmd_classify(cfg, *group, nu),
        Command::Scan {
            group,
            center,
            dir,
            range,
            step,
            radius,
        } => cmd_scan(cfg, *group, center, dir, range, *step, *radius),
        Command::Intertwiner { nu } => cmd_intertwiner(cfg, nu),
        Command::DumpModel { nu } => cmd_dump_model(cfg, nu),
        Command::Qdim { n, lambda } => cmd_qdim(cfg, *n, lambda),
        Command::Tensor { n, lambda, mu } => cmd_tensor(cfg, *n, lambda, mu),
        Command::Prv { n, lambda, nu } => cmd_prv(cfg, *n, lambda, nu),
        Command::Fiber { dim } => cmd_fiber(cfg, *dim),
        Command::Isolation { n, nu } => cmd_isolation(cfg, *n, nu),
    }
}

/// Parse `args` (including the program name) and execute.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome { code, stdout, stderr };
        }
    };
    let (code, text) = match dispatch(&cli) {
        Ok(text) => (EXIT_OK, text),
        Err(Failure::Usage(m)) => {
            return Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
        Err(Failure::Degenerate(m)) => {
            return Outcome {
                code: EXIT_DEGENERATE,
                stdout: String::new(),
                stderr: format!("error: {m}\n"),
            }
        }
    };
    match &cli.config.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr: format!("error: cannot write {}: {e}\n", path.display()),
            },
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}
