//! `frkt` — friable-integer asymptotics from the command line.
//!
//! Subcommand grammar: `frkt <module> <op> [--flags]`. Numeric output is CSV
//! with a header row (complex values split into re/im columns); `report`
//! emits a JSON summary. Exit status: 0 on success, 1 on domain/range
//! errors, 2 on usage errors.

mod complex_arg;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use std::io::Write;
use std::process::ExitCode;

use complex_arg::parse_complex;
use frkt_core::arith::{self, SieveMode};
use frkt_core::asymptotics;
use frkt_core::coeffs;
use frkt_core::dde::{self, Kind, PsiEvaluator, Side, SolutionTable};
use frkt_core::specfun;
use frkt_core::{Config, Error, ZParams};

#[derive(Parser)]
#[command(
    name = "frkt",
    about = "Friable-integer counts, Dickman-type delay equations, and Selberg-Delange expansions",
    version
)]
struct Cli {
    /// JSON config file; command-line tolerance flags override its fields.
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[arg(long, global = true)]
    newton_tol: Option<f64>,
    #[arg(long, global = true)]
    quad_tol: Option<f64>,
    #[arg(long, global = true)]
    euler_p: Option<u64>,
    #[arg(long, global = true)]
    cauchy_m: Option<usize>,
    #[arg(long, global = true)]
    cheb_degree: Option<usize>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Special functions: saddle points, exponential integrals, zeta, Gamma.
    Specfun {
        #[command(subcommand)]
        op: SpecfunOp,
    },
    /// Delay-equation tables: solve, derivatives, jumps, Taylor data.
    Dde {
        #[command(subcommand)]
        op: DdeOp,
    },
    /// Selberg-Delange coefficients and Euler products.
    Coeffs {
        #[command(subcommand)]
        op: CoeffsOp,
    },
    /// Exact friable sieve: counts, histograms, partial sums, cache.
    Sieve {
        #[command(subcommand)]
        op: SieveOp,
    },
    /// Exact counts against the smoothed and main-term predictions.
    Compare(CompareArgs),
    /// Distribution of omega(n) over the friable set against its laws.
    Omega(OmegaArgs),
    /// JSON self-check report (inputs, tolerances, pass/fail per check).
    Report {
        /// Include the 1e7-scale sieve comparisons.
        #[arg(long)]
        full: bool,
    },
}

#[derive(Subcommand)]
enum SpecfunOp {
    /// Real saddle point: e^xi = 1 + u xi, xi(1) = 0.
    Xi {
        #[arg(long)]
        u: f64,
    },
    /// Principal complex saddle of e^z = 1 + w z.
    Zeta0 {
        #[arg(long, value_parser = parse_complex)]
        w: Complex64,
    },
    /// Entire integral I(w) = int_0^w (e^t - 1) dt/t.
    I {
        #[arg(long, value_parser = parse_complex)]
        w: Complex64,
    },
    /// Exponential integral J(s) = E1(s), Re s > 0.
    J {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Dickman Laplace transform rho_hat(s) = e^(gamma + I(-s)).
    Rhohat {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Riemann zeta (Euler-Maclaurin) or its partial Euler product over p <= y.
    Zeta {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long)]
        y: Option<f64>,
    },
    /// Complex Gamma function.
    Gamma {
        #[arg(long, value_parser = parse_complex)]
        s: Complex64,
    },
    /// Standard normal CDF.
    Phi {
        #[arg(long)]
        v: f64,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s.to_ascii_lowercase().as_str() {
        "g" => Ok(Kind::G),
        "rho" => Ok(Kind::Rho),
        "phi" => Ok(Kind::Phi),
        other => Err(format!("unknown kind '{other}' (expected g, rho, phi)")),
    }
}

fn parse_side(s: &str) -> Result<Side, String> {
    match s.to_ascii_lowercase().as_str() {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        other => Err(format!("unknown side '{other}' (expected left, right)")),
    }
}

#[derive(Subcommand)]
enum DdeOp {
    /// Solve a system and emit (v, Re f, Im f) on a uniform grid.
    Solve {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long)]
        vmax: f64,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
    /// First-kind jumps (h, j, Re delta, Im delta) for integer z.
    Jumps {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = 6)]
        jmax: u32,
    },
    /// j-th derivative at v (one-sided at integers via --side).
    Deriv {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long)]
        j: usize,
        #[arg(long)]
        v: f64,
        #[arg(long, value_parser = parse_side)]
        side: Option<Side>,
    },
    /// Taylor coefficients c_j of rho_hat(s)^z at the origin.
    C {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = 6)]
        jmax: usize,
    },
    /// Saddle-point asymptotic of rho_z and the decay scale R_z at v.
    Asym {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long)]
        v: f64,
    },
}

#[derive(Subcommand)]
enum CoeffsOp {
    /// Expansion coefficients a_j of s^z F(s+1)/(s+1) -- (j, Re, Im) CSV.
    A {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = 0, value_name = "J")]
        jmax: usize,
    },
    /// Laurent data of s zeta(s+1) (Stieltjes constants).
    Szeta {
        #[arg(long, default_value_t = 8)]
        jmax: usize,
    },
    /// Truncated Euler product B_z(s) with its tail bound.
    B {
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, default_value = "1")]
        s: Complex64,
        #[arg(long)]
        p: Option<u64>,
    },
}

#[derive(Subcommand)]
enum SieveOp {
    /// Count of y-friable integers up to x.
    Psi {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value = "spf")]
        mode: String,
    },
    /// Histogram (k, count) of omega over the friable set.
    Hist {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        y: f64,
        #[arg(long, default_value = "spf")]
        mode: String,
    },
    /// Partial sum M(x; f_z) = sum_{n <= x} z^omega(n).
    M {
        #[arg(long)]
        x: f64,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
    },
    /// Write the smallest-prime-factor cache file (magic FRKT1).
    Cache {
        #[arg(long)]
        x: u64,
        #[arg(long)]
        file: std::path::PathBuf,
    },
}

#[derive(Args)]
struct CompareArgs {
    /// Comma-separated x values (integers; evaluated at x + 1/2).
    #[arg(long, value_delimiter = ',')]
    xs: Vec<u64>,
    /// Comma-separated y values; paired with every x >= y.
    #[arg(long, value_delimiter = ',')]
    ys: Vec<f64>,
    /// Real z of the family f_z(n) = z^omega(n).
    #[arg(long, value_parser = parse_complex, default_value = "1")]
    z: Complex64,
    /// Expansion order of the mainJ column.
    #[arg(long, default_value_t = 1)]
    jmax: usize,
}

#[derive(Args)]
struct OmegaArgs {
    #[arg(long)]
    x: u64,
    #[arg(long)]
    y: f64,
}

struct Out {
    target: Box<dyn Write>,
}

impl Out {
    fn new(path: &Option<std::path::PathBuf>) -> Result<Out, Error> {
        Ok(Out {
            target: match path {
                Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
                None => Box::new(std::io::stdout().lock()),
            },
        })
    }

    fn line(&mut self, s: &str) -> Result<(), Error> {
        writeln!(self.target, "{s}")?;
        Ok(())
    }
}

/// Names the first config field whose JSON value has the wrong shape.
fn blame_config_field(text: &str) -> Option<String> {
    let value: serde_json::Value = serde_json::from_str(text).ok()?;
    let obj = value.as_object()?;
    let float_fields = ["newton_tol", "quad_tol", "beta", "delta"];
    let int_fields = ["cheb_degree", "euler_p", "cauchy_m"];
    for f in float_fields {
        if let Some(v) = obj.get(f) {
            if !v.is_number() {
                return Some(format!("field '{f}' must be a number, got {v}"));
            }
        }
    }
    for f in int_fields {
        if let Some(v) = obj.get(f) {
            if !v.is_u64() {
                return Some(format!("field '{f}' must be a non-negative integer, got {v}"));
            }
        }
    }
    if let Some(v) = obj.get("constants") {
        if !v.is_object() {
            return Some(format!("field 'constants' must be an object, got {v}"));
        }
    }
    None
}

fn build_config(cli: &Cli) -> Result<Config, Error> {
    let mut cfg: Config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text).map_err(|e| {
                let blame = blame_config_field(&text).unwrap_or_else(|| e.to_string());
                Error::Config(format!("malformed config: {blame}"))
            })?
        }
        None => Config::default(),
    };
    if let Some(v) = cli.newton_tol {
        cfg.newton_tol = v;
    }
    if let Some(v) = cli.quad_tol {
        cfg.quad_tol = v;
    }
    if let Some(v) = cli.euler_p {
        cfg.euler_p = v;
    }
    if let Some(v) = cli.cauchy_m {
        cfg.cauchy_m = v;
    }
    if let Some(v) = cli.cheb_degree {
        cfg.cheb_degree = v;
    }
    if let Some(v) = cli.beta {
        cfg.beta = v;
    }
    if let Some(v) = cli.delta {
        cfg.delta = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), Error> {
    let cfg = build_config(&cli)?;
    let mut out = Out::new(&cli.out)?;
    match cli.command {
        Command::Specfun { op } => run_specfun(op, &cfg, &mut out),
        Command::Dde { op } => run_dde(op, &cfg, &mut out),
        Command::Coeffs { op } => run_coeffs(op, &cfg, &mut out),
        Command::Sieve { op } => run_sieve(op, &mut out),
        Command::Compare(args) => run_compare(args, &cfg, &mut out),
        Command::Omega(args) => run_omega(args, &cfg, &mut out),
        Command::Report { full } => run_report(full, &cfg, &mut out),
    }
}

fn run_specfun(op: SpecfunOp, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    match op {
        SpecfunOp::Xi { u } => {
            let (xi, xi_prime) = specfun::solve_xi(u)?;
            out.line("u,xi,xi_prime")?;
            out.line(&format!("{u},{xi},{xi_prime}"))?;
        }
        SpecfunOp::Zeta0 { w } => {
            let s = specfun::solve_zeta0(w, cfg.newton_tol)?;
            out.line("re_w,im_w,re_root,im_root,residual,re_deriv,im_deriv")?;
            out.line(&format!(
                "{},{},{},{},{},{},{}",
                w.re, w.im, s.root.re, s.root.im, s.residual, s.derivative.re, s.derivative.im
            ))?;
        }
        SpecfunOp::I { w } => emit_map(out, w, specfun::exp_integral_i(w)?)?,
        SpecfunOp::J { s } => emit_map(out, s, specfun::exp_integral_e1(s)?)?,
        SpecfunOp::Rhohat { s } => emit_map(out, s, specfun::dickman_laplace(s)?)?,
        SpecfunOp::Zeta { s, y } => {
            let v = match y {
                Some(yv) => specfun::zeta_y(s, yv)?,
                None => specfun::zeta(s)?,
            };
            emit_map(out, s, v)?;
        }
        SpecfunOp::Gamma { s } => emit_map(out, s, specfun::gamma(s)?)?,
        SpecfunOp::Phi { v } => {
            out.line("v,phi")?;
            out.line(&format!("{v},{}", specfun::normal_cdf(v)))?;
        }
    }
    Ok(())
}

fn emit_map(out: &mut Out, input: Complex64, value: Complex64) -> Result<(), Error> {
    out.line("re_in,im_in,re_out,im_out")?;
    out.line(&format!("{},{},{},{}", input.re, input.im, value.re, value.im))?;
    Ok(())
}

fn run_dde(op: DdeOp, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    match op {
        DdeOp::Solve { kind, z, vmax, step } => {
            // rejects NaN along with nonpositive steps
            if step.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::Domain("step must be positive".into()));
            }
            let tab = SolutionTable::solve(kind, ZParams::new(z)?, vmax, cfg)?;
            out.line("v,re_f,im_f")?;
            for (v, f) in tab.sample(step) {
                out.line(&format!("{v},{},{}", f.re, f.im))?;
            }
        }
        DdeOp::Jumps { kind, z, jmax } => {
            let tab = SolutionTable::solve(kind, ZParams::new(z)?, jmax as f64 + 2.0, cfg)?;
            let jumps = tab.jump_table(jmax)?;
            out.line("h,j,re_delta,im_delta")?;
            for jm in jumps {
                out.line(&format!("{},{},{},{}", jm.h, jm.j, jm.delta.re, jm.delta.im))?;
            }
        }
        DdeOp::Deriv { kind, z, j, v, side } => {
            let tab = SolutionTable::solve(kind, ZParams::new(z)?, v.ceil().max(1.0), cfg)?;
            let d = tab.derivative(j, v, side)?;
            out.line("v,j,re,im")?;
            out.line(&format!("{v},{j},{},{}", d.re, d.im))?;
        }
        DdeOp::C { z, jmax } => {
            let c = dde::taylor_c(ZParams::new(z)?, jmax);
            out.line("j,re_c,im_c")?;
            for j in 0..=jmax {
                out.line(&format!("{j},{},{}", c.coeff(j).re, c.coeff(j).im))?;
            }
        }
        DdeOp::Asym { z, v } => {
            let zpv = ZParams::new(z)?;
            let asym = dde::rho_asym(zpv, v, cfg)?;
            let r = dde::big_r(zpv, v, cfg)?;
            out.line("v,re_asym,im_asym,big_r")?;
            out.line(&format!("{v},{},{},{r}", asym.re, asym.im))?;
        }
    }
    Ok(())
}

fn run_coeffs(op: CoeffsOp, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    match op {
        CoeffsOp::A { z, jmax } => {
            let a = coeffs::a_coeffs(z, jmax, cfg)?;
            out.line("j,re_a,im_a")?;
            for j in 0..=jmax {
                out.line(&format!("{j},{},{}", a.coeff(j).re, a.coeff(j).im))?;
            }
        }
        CoeffsOp::Szeta { jmax } => {
            let s = coeffs::szeta_series(jmax)?;
            out.line("j,re,im")?;
            for j in 0..=jmax {
                out.line(&format!("{j},{},{}", s.coeff(j).re, s.coeff(j).im))?;
            }
        }
        CoeffsOp::B { z, s, p } => {
            let v = coeffs::euler_b(z, s, p.unwrap_or(cfg.euler_p))?;
            out.line("re_value,im_value,tail_bound,prime_cutoff")?;
            out.line(&format!(
                "{},{},{},{}",
                v.value.re, v.value.im, v.tail_bound, v.prime_cutoff
            ))?;
        }
    }
    Ok(())
}

fn parse_mode(mode: &str) -> Result<SieveMode, Error> {
    match mode.to_ascii_lowercase().as_str() {
        "spf" => Ok(SieveMode::SpfSieve),
        "enum" => Ok(SieveMode::SmoothEnum),
        other => Err(Error::Domain(format!(
            "unknown sieve mode '{other}' (expected spf or enum)"
        ))),
    }
}

fn run_sieve(op: SieveOp, out: &mut Out) -> Result<(), Error> {
    match op {
        SieveOp::Psi { x, y, mode } => {
            let tab = arith::build_table(x, y, parse_mode(&mode)?)?;
            let st = arith::friable_stats(&tab, None, None)?;
            out.line("psi")?;
            out.line(&format!("{}", st.psi))?;
        }
        SieveOp::Hist { x, y, mode } => {
            let tab = arith::build_table(x, y, parse_mode(&mode)?)?;
            let st = arith::friable_stats(&tab, None, None)?;
            out.line("k,count")?;
            for (k, c) in st.histogram.iter().enumerate() {
                out.line(&format!("{k},{c}"))?;
            }
        }
        SieveOp::M { x, z } => {
            let prof = arith::OmegaProfile::build(x.floor() as u64)?;
            let m = prof.partial_m(x, z)?;
            out.line("re_m,im_m")?;
            out.line(&format!("{},{}", m.re, m.im))?;
        }
        SieveOp::Cache { x, file } => {
            arith::write_spf_cache(&file, x)?;
            out.line("x_max,file")?;
            out.line(&format!("{x},{}", file.display()))?;
        }
    }
    Ok(())
}

fn run_compare(args: CompareArgs, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    if args.z.im != 0.0 {
        return Err(Error::Domain(
            "compare emits single-column CSV and is limited to real z".into(),
        ));
    }
    if args.xs.is_empty() || args.ys.is_empty() {
        return Err(Error::Domain("compare needs at least one x and one y".into()));
    }
    let zp = ZParams::new(args.z)?;
    eprintln!("compare: evaluating the continuum formulas at x + 1/2 (half-integer normalization)");
    out.line("x,y,u,exact,lambda,mainJ0,mainJ,envelope")?;
    let u_top = args
        .xs
        .iter()
        .map(|&x| (x as f64 + 0.5).ln())
        .fold(0.0f64, f64::max)
        / args.ys.iter().map(|y| y.ln()).fold(f64::INFINITY, f64::min);
    let g = SolutionTable::solve(Kind::G, zp, u_top + 2.0, cfg)?;
    let psi_eval = PsiEvaluator::new(zp, u_top + 2.0, cfg)?;
    let a = coeffs::a_coeffs(args.z, args.jmax.max(1), cfg)?;
    for &x in &args.xs {
        let ys: Vec<f64> = args.ys.iter().copied().filter(|&y| y <= x as f64).collect();
        if ys.is_empty() {
            continue;
        }
        let tables = arith::build_tables_multi_y(x, &ys)?;
        let profile = arith::OmegaProfile {
            x_max: x,
            omega: tables[0].omega.clone(),
        };
        let x_eff = x as f64 + 0.5;
        for tab in &tables {
            let u = x_eff.ln() / tab.y.ln();
            let exact = arith::friable_stats(tab, Some(args.z), None)?.psi_f.re;
            let lambda = asymptotics::lambda_f(x_eff, tab.y, zp, &g, &profile)?.re;
            let e0 = asymptotics::main_expansion(x_eff, tab.y, zp, 0, &psi_eval, &a, Some(&profile), cfg)?;
            let ej = asymptotics::main_expansion(
                x_eff,
                tab.y,
                zp,
                args.jmax,
                &psi_eval,
                &a,
                Some(&profile),
                cfg,
            )?;
            out.line(&format!(
                "{x},{},{u},{exact},{lambda},{},{},{}",
                tab.y,
                e0.total().re,
                ej.total().re,
                ej.error_envelope
            ))?;
        }
    }
    Ok(())
}

fn run_omega(args: OmegaArgs, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    let xf = args.x as f64;
    let tab = arith::build_table(args.x, args.y, SieveMode::SpfSieve)?;
    let st = arith::friable_stats(&tab, None, None)?;
    let rho1 = SolutionTable::solve(Kind::Rho, ZParams::from_parts(1.0, 0.0)?, 4.0, cfg)?;
    let u = xf.ln() / args.y.ln();
    out.line("k,count,gauss,tilted,in_range_2_6")?;
    for (k, &count) in st.histogram.iter().enumerate() {
        let gauss = asymptotics::predict_local_gauss(xf, args.y, k as u32)?;
        let in_range = asymptotics::tilted_in_range(xf, args.y, k as u32, cfg)?;
        let mut tilted = 0.0;
        if in_range {
            if let Ok(r) = asymptotics::solve_r_for_k(xf, args.y, k as f64, (0.25, 4.0)) {
                let rho_r =
                    SolutionTable::solve(Kind::Rho, ZParams::from_parts(r, 0.0)?, u.max(2.0) + 2.0, cfg)?;
                if let Ok(t) =
                    asymptotics::predict_local_tilted(xf, args.y, k as u32, &rho_r, &rho1, r, cfg)
                {
                    tilted = t;
                }
            }
        }
        out.line(&format!(
            "{k},{count},{gauss},{tilted},{}",
            if in_range { 1 } else { 0 }
        ))?;
    }
    Ok(())
}

fn run_report(full: bool, cfg: &Config, out: &mut Out) -> Result<(), Error> {
    let checks = frkt_core::report::run_all(cfg, full);
    let mut failed = 0;
    let checks_json: Vec<serde_json::Value> = checks
        .iter()
        .map(|c| {
            if !c.pass {
                failed += 1;
            }
            serde_json::json!({
                "id": c.id,
                "pass": c.pass,
                "detail": c.detail,
                "elapsed_s": c.elapsed_s,
            })
        })
        .collect();
    let doc = serde_json::json!({
        "inputs": {
            "full": full,
            "config": serde_json::to_value(cfg).map_err(|e| Error::Config(e.to_string()))?,
        },
        "tolerances": {
            "newton_tol": cfg.newton_tol,
            "quad_tol": cfg.quad_tol,
        },
        "outputs": {
            "checks_run": checks.len(),
            "checks_failed": failed,
        },
        "checks": checks_json,
    });
    out.line(&serde_json::to_string_pretty(&doc).map_err(|e| Error::Config(e.to_string()))?)?;
    if failed > 0 {
        return Err(Error::Range(format!("{failed} self-checks failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
