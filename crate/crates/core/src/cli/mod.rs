//! Command-line front end.
//!
//! Exit status: `0` success, `1` configuration error, `2` computation error,
//! `3` reproduction mismatch.

pub mod output;
pub mod render;
pub mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::conescan::{classify_ray, scan};
use crate::cscs::{condition_numerator, csc_roots, denominator_exponent};
use crate::error::Error;
use crate::exactmath::{parse_rational, rat, Rational};
use crate::joinsetup::{cone_dim, join_is_smooth, join_vectors, ke_join_weights, JoinSpec, ProductSetup, SetupConfig};
use crate::twins::{
    cp1_twins, find_profile_twins, general_scal1, toric_csc_solutions, toric_weighted_scal, twin_weights,
    ToricPotential,
};

use output::{json_bytes, ArtifactSet};

#[derive(Debug, Parser)]
#[command(name = "sasjoin", version, about = "Exact extremal and cscS ray detection on Sasaki joins")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Momentum profile, extremality and cscS status of one ray.
    Profile {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Rational,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Classify the whole c-line: extremal components, moats and cscS rays.
    Scan {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, default_value_t = 33)]
        grid_n: usize,
        #[arg(long, value_parser = rational_arg, default_value = "1/2048")]
        width: Rational,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Certified roots of the cscS condition in (-1, 1).
    CscRoots {
        #[command(flatten)]
        setup: SetupArgs,
        #[arg(long, value_parser = rational_arg, default_value = "1/10000")]
        width: Rational,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rays sharing the profile of a given ray.
    Twins {
        #[command(flatten)]
        setup: SetupArgs,
        /// Use the closed-form CP^1 family with this surface scalar curvature.
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        cp1_k: Option<Rational>,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Rational,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Twin weights and cscS candidates on N x CP^n.
    Toric {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = rational_arg, default_value = "1")]
        lambda: Rational,
        /// Comma-separated coefficients of an affine potential to test.
        #[arg(long, value_delimiter = ',', value_parser = rational_arg, allow_hyphen_values = true)]
        v: Vec<Rational>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Smoothness and vectors of a join.
    Join {
        #[arg(long)]
        l1: Option<u64>,
        #[arg(long)]
        l2: Option<u64>,
        #[arg(long, default_value_t = 1)]
        order1: u64,
        #[arg(long, default_value_t = 1)]
        order2: u64,
        /// Negative Kähler-Einstein index of the base factor.
        #[arg(long, allow_hyphen_values = true)]
        ke_index: Option<i64>,
        /// Complex dimension of the base factor.
        #[arg(long)]
        base_dim: Option<u32>,
        #[arg(long)]
        cone1: Option<u32>,
        #[arg(long)]
        cone2: Option<u32>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Rerun every worked example and write its artifacts.
    Reproduce {
        #[arg(long, default_value = "reproduction")]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SetupArgs {
    /// JSON setup file with fields d, a, g2, k, x and optional l1, l2.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub a: Option<Rational>,
    #[arg(long)]
    pub g2: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
    pub x: Option<Rational>,
}

#[derive(Debug, Clone, Args)]
pub struct OutArgs {
    /// Directory for artifacts; the JSON report goes to stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|_| format!("`{s}` is not an integer or p/q rational"))
}

#[derive(Debug)]
pub enum Failure {
    Config(String),
    Compute(Error),
    Mismatch(Vec<String>),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 1,
            Failure::Compute(_) => 2,
            Failure::Mismatch(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure::Config(format!("cannot write output: {e}"))
}

impl SetupArgs {
    fn given(&self) -> bool {
        self.d.is_some() || self.a.is_some() || self.g2.is_some() || self.k.is_some() || self.x.is_some()
    }

    fn resolve(&self) -> Result<ProductSetup, Failure> {
        let cfg = |e: Error| Failure::Config(e.to_string());
        if let Some(path) = &self.config {
            if self.given() {
                return Err(Failure::Config("--config cannot be combined with setup flags".into()));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))?;
            let config = SetupConfig::from_json(&text).map_err(cfg)?;
            config.join().map_err(cfg)?;
            return config.setup().map_err(cfg);
        }
        let missing = |name: &str| Failure::Config(format!("missing --{name} (or --config)"));
        let d = self.d.ok_or_else(|| missing("d"))?;
        let a = self.a.clone().ok_or_else(|| missing("a"))?;
        let g2 = self.g2.ok_or_else(|| missing("g2"))?;
        let k = self.k.ok_or_else(|| missing("k"))?;
        let x = self.x.clone().ok_or_else(|| missing("x"))?;
        crate::joinsetup::make_setup(d, a, g2, k, x).map_err(cfg)
    }
}

fn check_ray_arg(c: &Rational) -> Result<(), Failure> {
    if *c <= rat(-1, 1) || *c >= rat(1, 1) {
        return Err(Failure::Config(format!("--c must lie in (-1, 1), got {c}")));
    }
    Ok(())
}

/// Writes `report` as `<name>.json` under `out`, or prints it.
fn emit(out: &OutArgs, name: &str, report: &Value, extra: &[(&str, Vec<u8>)]) -> Result<(), Failure> {
    match &out.out {
        None => {
            print!("{}", String::from_utf8_lossy(&json_bytes(report)));
            Ok(())
        }
        Some(dir) => write_set(dir, name, report, extra),
    }
}

fn write_set(dir: &Path, name: &str, report: &Value, extra: &[(&str, Vec<u8>)]) -> Result<(), Failure> {
    let mut set = ArtifactSet::new(dir, name);
    set.write(&format!("{name}.json"), &json_bytes(report)).map_err(io_failure)?;
    for (file, bytes) in extra {
        set.write(file, bytes).map_err(io_failure)?;
    }
    set.finish().map_err(io_failure)
}

fn header(command: &str) -> Value {
    json!({ "schema": render::SCHEMA, "command": command })
}

fn merge(mut base: Value, body: Value) -> Value {
    if let (Value::Object(b), Value::Object(extra)) = (&mut base, body) {
        b.extend(extra);
    }
    base
}

fn run_profile(setup: &SetupArgs, c: &Rational, out: &OutArgs) -> Result<(), Failure> {
    let s = setup.resolve()?;
    check_ray_arg(c)?;
    let r = classify_ray(&s, c)?;
    let body = json!({
        "setup": render::setup(&s),
        "c": render::rational(c),
        "F": render::poly(r.f(), "z"),
        "F_factored": render::factored_profile(&r.profile),
        "A1": render::rational(&r.profile.a1),
        "A2": render::rational(&r.profile.a2),
        "extremal": r.extremal,
        "cscS": r.csc_s,
        "csc_condition": render::rational(&r.csc_value),
    });
    emit(out, "profile", &merge(header("profile"), body), &[])
}

fn run_scan(setup: &SetupArgs, grid_n: usize, width: &Rational, out: &OutArgs) -> Result<(), Failure> {
    let s = setup.resolve()?;
    if grid_n < 8 {
        return Err(Failure::Config("--grid-n must be at least 8".into()));
    }
    if *width <= rat(0, 1) {
        return Err(Failure::Config("--width must be positive".into()));
    }
    let rep = scan(&s, grid_n, width)?;
    let csv = render::scan_csv(&rep).map_err(|e| Failure::Config(format!("cannot render CSV: {e}")))?;
    let svg = render::scan_svg(&rep).into_bytes();
    emit(out, "scan", &render::scan(&rep), &[("scan.csv", csv), ("scan.svg", svg)])
}

fn run_csc_roots(setup: &SetupArgs, width: &Rational, out: &OutArgs) -> Result<(), Failure> {
    let s = setup.resolve()?;
    if *width <= rat(0, 1) {
        return Err(Failure::Config("--width must be positive".into()));
    }
    let numerator = condition_numerator(&s, None)?;
    let roots = csc_roots(&s, width)?;
    let body = json!({
        "setup": render::setup(&s),
        "width": render::rational(width),
        "numerator": render::poly(&numerator, "c"),
        "denominator": format!("(1 - c^2)^{}", denominator_exponent(s.p)),
        "roots": roots.iter().map(render::root).collect::<Vec<_>>(),
    });
    emit(out, "csc-roots", &merge(header("csc-roots"), body), &[])
}

fn run_twins(setup: &SetupArgs, cp1_k: Option<&Rational>, c: &Rational, out: &OutArgs) -> Result<(), Failure> {
    check_ray_arg(c)?;
    let body = match cp1_k {
        Some(k) => {
            if setup.given() || setup.config.is_some() {
                return Err(Failure::Config("--cp1-k cannot be combined with a product setup".into()));
            }
            if !crate::twins::cp1_admissible(k, c) {
                return Err(Failure::Config(format!("CP^1 profile is not positive at k = {k}, c = {c}")));
            }
            let rep = cp1_twins(k, c)?;
            json!({ "family": "cp1", "k": render::rational(k), "report": render::twins(&rep, "z") })
        }
        None => {
            let s = setup.resolve()?;
            let rep = find_profile_twins(&s, c)?;
            json!({ "family": "admissible", "setup": render::setup(&s), "report": render::twins(&rep, "z") })
        }
    };
    emit(out, "twins", &merge(header("twins"), body), &[])
}

fn run_toric(d: u32, n: u32, lambda: &Rational, v: &[Rational], out: &OutArgs) -> Result<(), Failure> {
    if n < 1 {
        return Err(Failure::Config("--n must be at least 1".into()));
    }
    let (lo, hi, scal1) = twin_weights(d, n);
    let mut body = json!({
        "d": d,
        "n": n,
        "p_low": lo,
        "p_high": hi,
        "scal1": render::rational(&scal1),
        "scal1_at_p_low": render::rational(&general_scal1(n, lo)),
        "scal1_at_p_high": render::rational(&general_scal1(n, hi)),
    });
    if !v.is_empty() {
        if v.len() != n as usize {
            return Err(Failure::Config(format!("--v needs {n} coefficients, got {}", v.len())));
        }
        let pot = ToricPotential::new(v.to_vec(), lambda.clone()).map_err(|e| Failure::Config(e.to_string()))?;
        let at = |p: i64| {
            let s = toric_weighted_scal(p, &scal1, &pot);
            json!({ "p": p, "affine": s.is_affine(), "scal": s.to_string() })
        };
        body["potential"] = json!({ "v": render::rationals(v), "lambda": render::rational(lambda) });
        body["weighted_scal"] = json!([at(lo), at(hi)]);
    }
    if *lambda <= rat(0, 1) {
        return Err(Failure::Config("--lambda must be positive".into()));
    }
    let mut csc = Vec::new();
    for l in 1..n {
        let sol = toric_csc_solutions(n, lambda, l)?;
        csc.push(json!({
            "l": l,
            "candidates": sol.candidates.iter().map(|(v, ok)| json!({
                "v": render::rational(v),
                "admissible": ok,
            })).collect::<Vec<_>>(),
            "any_admissible": sol.any_admissible,
        }));
    }
    body["cscS_candidates"] = Value::Array(csc);
    emit(out, "toric", &merge(header("toric"), body), &[])
}

struct JoinArgs {
    l1: Option<u64>,
    l2: Option<u64>,
    order1: u64,
    order2: u64,
    ke_index: Option<i64>,
    base_dim: Option<u32>,
    cone1: Option<u32>,
    cone2: Option<u32>,
}

fn run_join(a: JoinArgs, out: &OutArgs) -> Result<(), Failure> {
    let cfg = |e: Error| Failure::Config(e.to_string());
    let mut body = header("join");
    let weights = match (a.l1, a.l2, a.ke_index) {
        (Some(l1), Some(l2), None) => (l1, l2),
        (None, None, Some(index)) => {
            let d = a.base_dim.ok_or_else(|| Failure::Config("--ke-index needs --base-dim".into()))?;
            let w = ke_join_weights(index, d).map_err(cfg)?;
            body["ke_weights"] = json!({ "index": index, "base_dim": d, "l1": w.0, "l2": w.1 });
            w
        }
        _ => return Err(Failure::Config("give either --l1 and --l2, or --ke-index".into())),
    };
    let spec = JoinSpec::new(weights.0, weights.1, a.order1, a.order2).map_err(cfg)?;
    let vectors = join_vectors(weights.0, weights.1).map_err(cfg)?;
    body["l1"] = json!(weights.0);
    body["l2"] = json!(weights.1);
    body["order1"] = json!(a.order1);
    body["order2"] = json!(a.order2);
    body["smooth"] = json!(join_is_smooth(&spec));
    body["reeb"] = json!([render::rational(&vectors.reeb.0), render::rational(&vectors.reeb.1)]);
    body["lvec"] = json!([render::rational(&vectors.lvec.0), render::rational(&vectors.lvec.1)]);
    body["contact"] = json!([vectors.contact.0, vectors.contact.1]);
    match (a.cone1, a.cone2) {
        (Some(c1), Some(c2)) if c1 >= 1 && c2 >= 1 => body["cone_dim"] = json!(cone_dim(c1, c2)),
        (None, None) => {}
        _ => return Err(Failure::Config("--cone1 and --cone2 must both be at least 1".into())),
    }
    emit(out, "join", &body, &[])
}

fn run_reproduce(dir: &Path) -> Result<(), Failure> {
    let (checks, moat) = reproduce::run_checks();
    let report = merge(
        header("reproduce"),
        json!({
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed(),
                "failures": c.failures,
            })).collect::<Vec<_>>(),
        }),
    );
    let mut extra = Vec::new();
    if let Some(rep) = &moat {
        extra.push(("moat_scan.json", json_bytes(&render::scan(rep))));
        extra.push((
            "moat_scan.csv",
            render::scan_csv(rep).map_err(|e| Failure::Config(format!("cannot render CSV: {e}")))?,
        ));
        extra.push(("moat.svg", render::scan_svg(rep).into_bytes()));
    }
    write_set(dir, "reproduce", &report, &extra)?;
    for c in &checks {
        println!("{} {}", if c.passed() { "ok  " } else { "FAIL" }, c.name);
    }
    let failures: Vec<String> = checks
        .iter()
        .flat_map(|c| c.failures.iter().map(move |f| format!("{}: {f}", c.name)))
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(failures))
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Profile { setup, c, out } => run_profile(&setup, &c, &out),
        Command::Scan { setup, grid_n, width, out } => run_scan(&setup, grid_n, &width, &out),
        Command::CscRoots { setup, width, out } => run_csc_roots(&setup, &width, &out),
        Command::Twins { setup, cp1_k, c, out } => run_twins(&setup, cp1_k.as_ref(), &c, &out),
        Command::Toric { d, n, lambda, v, out } => run_toric(d, n, &lambda, &v, &out),
        Command::Join {
            l1,
            l2,
            order1,
            order2,
            ke_index,
            base_dim,
            cone1,
            cone2,
            out,
        } => run_join(
            JoinArgs {
                l1,
                l2,
                order1,
                order2,
                ke_index,
                base_dim,
                cone1,
                cone2,
            },
            &out,
        ),
        Command::Reproduce { out } => run_reproduce(&out),
    }
}

/// Parses arguments, runs the command and maps failures to exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Config(msg) => eprintln!("configuration error: {msg}"),
                Failure::Compute(e) => eprintln!("computation error: {e}"),
                Failure::Mismatch(list) => {
                    eprintln!("reproduction mismatch:");
                    for m in list {
                        eprintln!("  {m}");
                    }
                }
            }
            ExitCode::from(f.code())
        }
    }
}
