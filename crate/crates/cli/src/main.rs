//! `lcf`: evaluate, differentiate and check real expressions over the
//! Levi-Civita field from the command line.
//!
//! Every numeric argument is an LC literal such as `2 + 3d^(1/2)`.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levicivita::*;

const USAGE_ERROR: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lcf", version, about = "Levi-Civita field calculator")]
struct Cli {
    /// Knowledge horizon for literals.
    #[arg(long, global = true, env = "LC_HORIZON", default_value = "32")]
    horizon: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression at LC arguments.
    Eval {
        expr: String,
        /// Binding `VAR=LC`; repeat for several variables.
        #[arg(long = "at", value_name = "VAR=LC")]
        at: Vec<String>,
    },
    /// The j-th derivative at a point.
    Derive {
        expr: String,
        #[arg(long)]
        var: String,
        #[arg(long, value_name = "LC")]
        at: String,
        #[arg(long, default_value_t = 1)]
        order: usize,
    },
    /// Taylor coefficients f⁽ʲ⁾(x₀)/j! for j = 0..=order.
    Taylor {
        expr: String,
        #[arg(long)]
        var: String,
        #[arg(long, value_name = "LC")]
        at: String,
        #[arg(long)]
        order: usize,
    },
    /// Limit of f/g at a point where both vanish.
    Limit {
        f: String,
        g: String,
        #[arg(long)]
        var: String,
        #[arg(long, value_name = "LC")]
        at: String,
    },
    /// Sampled WLUD check at a point.
    WludCheck {
        expr: String,
        #[command(flatten)]
        point: Point,
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "LC", default_value = "1")]
        eps: String,
        #[arg(long, value_name = "LC", default_value = "d")]
        delta: String,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Analyticity certificate at a point.
    Analyticity {
        expr: String,
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 32)]
        jmax: usize,
        #[arg(long, default_value_t = 8)]
        kmax: usize,
        /// Trailing window of the growth estimate.
        #[arg(long)]
        window: Option<usize>,
        #[command(flatten)]
        sampling: Sampling,
    },
}

/// Variables and center coordinates, paired in order.
#[derive(Args, Debug)]
struct Point {
    #[arg(long = "var", required = true)]
    vars: Vec<String>,
    #[arg(long = "at", value_name = "LC", required = true)]
    at: Vec<String>,
}

#[derive(Args, Debug)]
struct Sampling {
    /// Random sample points besides the grid.
    #[arg(long, default_value_t = 6)]
    samples: usize,
    #[arg(long, default_value_t = levicivita::wlud::DEFAULT_SEED)]
    seed: u64,
}

enum Failure {
    Usage(String),
    Eval(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Eval(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

struct Ctx {
    horizon: ExpQ,
    format: Format,
}

impl Ctx {
    fn lc(&self, flag: &str, text: &str) -> Result<LcNumber, Failure> {
        parse_lc_with_horizon(text, self.horizon)
            .map_err(|e| usage(format!("invalid value '{text}' for '{flag}': {e}")))
    }

    fn expr(&self, text: &str) -> Result<Expr, Failure> {
        parse_expr(text).map_err(|e| usage(format!("invalid expression '{text}': {e}")))
    }

    fn point<'a>(&self, p: &'a Point) -> Result<(Vec<&'a str>, Vec<LcNumber>), Failure> {
        if p.vars.len() != p.at.len() {
            return Err(usage(format!(
                "'--var' given {} times but '--at' given {} times",
                p.vars.len(),
                p.at.len()
            )));
        }
        let x0 = p.at.iter().map(|a| self.lc("--at", a)).collect::<Result<_, _>>()?;
        Ok((p.vars.iter().map(String::as_str).collect(), x0))
    }

    fn value(&self, x: &LcNumber) -> String {
        match self.format {
            Format::Text => format!("{x}\n"),
            Format::Json => json(&serde_json::json!({ "value": x })),
        }
    }
}

fn json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn plan(s: &Sampling, window: Option<usize>) -> SamplingPlan {
    SamplingPlan {
        seed: s.seed,
        random_points: s.samples,
        window,
    }
}

fn join(xs: &[LcNumber]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn wlud_text(r: &WludReport) -> String {
    let result = match r.result {
        WludResult::Pass => "pass",
        WludResult::Fail => "fail",
        WludResult::Inconclusive => "inconclusive",
    };
    let mut s = format!(
        "result: {result}\npoint: ({})\nk: {}\nepsilon: {}\ndelta: {}\nsamples: {}\ninconclusive samples: {}\nmargin: {}\n",
        join(&r.point),
        r.k,
        r.epsilon,
        r.delta,
        r.samples,
        r.inconclusive_samples,
        r.margin
    );
    if let Some(w) = &r.worst_pair {
        let _ = writeln!(s, "worst pair: x = ({}), y = ({})", join(&w.x), join(&w.y));
        let _ = writeln!(s, "  lhs: {}\n  rhs: {}", w.lhs, w.rhs);
    }
    s
}

fn certificate_text(c: &AnalyticityCertificate) -> String {
    let verdict = match c.verdict {
        CertificateVerdict::CertifiedAtScale => "certified_at_scale",
        CertificateVerdict::Refuted => "refuted",
        CertificateVerdict::Inconclusive => "inconclusive",
    };
    let opt = |x: Option<String>| x.unwrap_or_else(|| "none".into());
    let mut s = format!(
        "verdict: {verdict}\npoint: ({})\njmax: {}\nkmax: {}\nlambda0: {} (window {})\nlambda0 over all orders: {}\n",
        join(&c.x0),
        c.jmax,
        c.kmax,
        c.lambda0,
        c.window,
        c.lambda0_head
    );
    for e in &c.delta_ladder {
        let _ = writeln!(s, "delta_{}: {}", e.k, e.delta);
    }
    let _ = writeln!(s, "t: {}", opt(c.t.map(|t| t.to_string())));
    let _ = writeln!(s, "radius: lambda > {}", opt(c.required_radius_lambda.map(|r| r.to_string())));
    let _ = writeln!(s, "delta: {}", opt(c.delta.as_ref().map(ToString::to_string)));
    let visible = c.identity_checks.iter().filter(|i| i.residual_lambda.is_finite()).count();
    let _ = writeln!(
        s,
        "identity checks: {} ({visible} with a visible residual)",
        c.identity_checks.len()
    );
    s
}

fn run(cli: &Cli) -> Result<(u8, String), Failure> {
    let horizon: ExpQ = cli
        .horizon
        .parse()
        .map_err(|_| usage(format!("invalid value '{}' for '--horizon'", cli.horizon)))?;
    if horizon <= ExpQ::ZERO {
        return Err(usage("'--horizon' must be positive"));
    }
    let ctx = Ctx {
        horizon,
        format: cli.format,
    };
    match &cli.command {
        Command::Eval { expr, at } => {
            let f = ctx.expr(expr)?;
            let mut env = Env::new();
            for b in at {
                let (v, x) = b
                    .split_once('=')
                    .ok_or_else(|| usage(format!("invalid value '{b}' for '--at': expected VAR=LC")))?;
                env.insert(v.trim().to_string(), ctx.lc("--at", x)?);
            }
            Ok((0, ctx.value(&eval_lc(&f, &env)?)))
        }
        Command::Derive { expr, var, at, order } => {
            let f = ctx.expr(expr)?;
            let x0 = ctx.lc("--at", at)?;
            Ok((0, ctx.value(&derivative_at(&f, var, &x0, *order)?)))
        }
        Command::Taylor { expr, var, at, order } => {
            let f = ctx.expr(expr)?;
            let x0 = ctx.lc("--at", at)?;
            let jet = taylor_jet(&f, var, &x0, *order)?;
            let out = match ctx.format {
                Format::Text => jet.coeffs().iter().map(|c| format!("{c}\n")).collect(),
                Format::Json => json(&serde_json::json!({ "center": x0, "coeffs": jet.coeffs() })),
            };
            Ok((0, out))
        }
        Command::Limit { f, g, var, at } => {
            let (f, g) = (ctx.expr(f)?, ctx.expr(g)?);
            let a = ctx.lc("--at", at)?;
            Ok((0, ctx.value(&lhopital_limit(&f, &g, var, &a)?)))
        }
        Command::WludCheck { expr, point, k, eps, delta, sampling } => {
            let f = ctx.expr(expr)?;
            let (vars, x0) = ctx.point(point)?;
            let eps = ctx.lc("--eps", eps)?;
            let delta = ctx.lc("--delta", delta)?;
            let plan = plan(sampling, None);
            let r = if vars.len() == 1 {
                wlud_check_1d(&f, vars[0], &x0[0], *k, &eps, &delta, &plan)?
            } else {
                wlud_check_nd(&f, &vars, &x0, *k, &eps, &delta, &plan)?
            };
            let code = match r.result {
                WludResult::Pass => 0,
                WludResult::Fail => 1,
                WludResult::Inconclusive => 2,
            };
            let out = match ctx.format {
                Format::Text => wlud_text(&r),
                Format::Json => json(&r),
            };
            Ok((code, out))
        }
        Command::Analyticity { expr, point, jmax, kmax, window, sampling } => {
            if *jmax < 1 {
                return Err(usage("'--jmax' must be at least 1"));
            }
            let f = ctx.expr(expr)?;
            let (vars, x0) = ctx.point(point)?;
            let plan = plan(sampling, *window);
            let ladder = default_ladder();
            let c = if vars.len() == 1 {
                analyticity_certificate_1d(&f, vars[0], &x0[0], *jmax, *kmax, &ladder, &plan)?
            } else {
                analyticity_certificate_nd(&f, &vars, &x0, *jmax, *kmax, &ladder, &plan)?
            };
            let code = match c.verdict {
                CertificateVerdict::CertifiedAtScale => 0,
                CertificateVerdict::Refuted => 1,
                CertificateVerdict::Inconclusive => 2,
            };
            let out = match ctx.format {
                Format::Text => certificate_text(&c),
                Format::Json => json(&c),
            };
            Ok((code, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match run(&cli) {
        Ok((code, out)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE_ERROR)
        }
        Err(Failure::Eval(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}
