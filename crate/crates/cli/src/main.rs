use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use macdonald_core::demazure::{km_character, pbw_character, DemazureError};
use macdonald_core::diagram::{Composition, DominantWeight};
use macdonald_core::format::{series_json, series_text, tri_json, tri_text, Render};
use macdonald_core::hhl::{
    e_limit_combinatorial, hhl_polynomial, limit_t_infinity_symbolic, specialize_t0,
};
use macdonald_core::series::XSeries;
use macdonald_core::verify::{self, FamilyRegistry, RunOptions, Status};

const OK: u8 = 0;
const MISMATCH: u8 = 1;
const MALFORMED: u8 = 2;
const UNSUPPORTED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "macdonald",
    version,
    about = "Nonsymmetric Macdonald polynomials and Demazure characters"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for verify-co.
    #[arg(long, global = true, default_value_t = 1, value_name = "K")]
    workers: usize,
    /// Refuse inputs whose filling space N^|mu| exceeds M.
    #[arg(long, global = true, default_value_t = 10_000_000, value_name = "M")]
    cap: u128,
    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// E_mu(x; q, t) from the filling formula.
    Emacdonald {
        /// Composition as a comma list, e.g. 0,1,2.
        composition: String,
    },
    /// The t -> 0 or t -> infinity specialisation.
    Limit {
        composition: String,
        #[arg(long, conflicts_with = "tinf", required_unless_present = "tinf")]
        t0: bool,
        /// Printed in q, i.e. after q -> 1/q.
        #[arg(long)]
        tinf: bool,
    },
    /// Kac-Moody or PBW character of a level-one Demazure module.
    Char {
        #[arg(long = "N")]
        n: usize,
        /// Weight such as 1w1+2w3.
        #[arg(long)]
        weight: String,
        #[arg(long, value_enum, default_value_t = Kind::Km)]
        kind: Kind,
    },
    /// Check E(x; q^-1, infinity) = ch_PBW(p = q) over a parameter grid.
    VerifyCo {
        /// rect, two-row, or all.
        #[arg(long, default_value = "all")]
        family: String,
        /// Range a..b or a single value.
        #[arg(long = "N", default_value = "2..3")]
        n: String,
        /// Multiplicity range: m for rect, both m1 and m2 for two-row.
        #[arg(long, default_value = "0..2")]
        m: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Km,
    Pbw,
}

struct Failure {
    code: u8,
    message: String,
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: MALFORMED,
        message: message.into(),
    }
}

fn unsupported(message: impl Into<String>) -> Failure {
    Failure {
        code: UNSUPPORTED,
        message: message.into(),
    }
}

struct Output {
    body: String,
    code: u8,
}

fn parse_composition(s: &str) -> Result<Composition, Failure> {
    s.parse::<Composition>()
        .map_err(|e| malformed(format!("bad composition {s:?}: {e}")))
}

fn parse_range<T: std::str::FromStr + PartialOrd + Copy>(
    s: &str,
) -> Result<RangeInclusive<T>, Failure> {
    let bad = || malformed(format!("bad range {s:?}; expected a..b or a single value"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: T = a.trim().parse().map_err(|_| bad())?;
    let b: T = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn check_cap(mu: &Composition, cap: u128) -> Result<(), Failure> {
    let work = (mu.n() as u128).saturating_pow(mu.size());
    if work > cap {
        return Err(unsupported(format!(
            "{mu}: filling space {work} exceeds cap {cap}"
        )));
    }
    Ok(())
}

fn render<C: Render>(s: &XSeries<C>, json: bool, header: Option<&str>) -> String {
    if json {
        let mut v: Value = serde_json::from_str(&series_json(s)).expect("valid JSON");
        if let Some(h) = header {
            v["specialization"] = Value::String(h.to_string());
        }
        v.to_string()
    } else {
        match header {
            Some(h) => format!("# {h}\n{}", series_text(s)),
            None => series_text(s),
        }
    }
}

fn emacdonald(composition: &str, common: &Common) -> Result<Output, Failure> {
    let mu = parse_composition(composition)?;
    check_cap(&mu, common.cap)?;
    Ok(Output {
        body: render(&hhl_polynomial(&mu), common.json, None),
        code: OK,
    })
}

fn limit(composition: &str, t0: bool, common: &Common) -> Result<Output, Failure> {
    let mu = parse_composition(composition)?;
    check_cap(&mu, common.cap)?;
    let internal = |e: &dyn std::fmt::Display| Failure {
        code: UNSUPPORTED,
        message: e.to_string(),
    };
    let (series, header) = if t0 {
        (specialize_t0(&mu).map_err(|e| internal(&e))?, "E(x; q, 0)")
    } else {
        // shapes pi^r(antidominant) have the direct combinatorial form
        let s = match mu.as_scrolled_antidominant() {
            Some(_) => e_limit_combinatorial(&mu),
            None => limit_t_infinity_symbolic(&mu).map(|s| s.substitute_q_inverse()),
        };
        (
            s.map_err(|e| internal(&e))?,
            "E(x; q^-1, t -> infinity), shown in q",
        )
    };
    Ok(Output {
        body: render(&series, common.json, Some(header)),
        code: OK,
    })
}

fn character(n: usize, weight: &str, kind: Kind, common: &Common) -> Result<Output, Failure> {
    let w = DominantWeight::parse(n, weight).map_err(|e| malformed(e.to_string()))?;
    let lambda = w.to_composition(true);
    check_cap(&lambda, common.cap)?;
    let body = match kind {
        Kind::Km => {
            let c = km_character(&lambda).map_err(|e| malformed(e.to_string()))?;
            render(&c, common.json, None)
        }
        Kind::Pbw => {
            let c = pbw_character(&w).map_err(|e| match e {
                DemazureError::UnsupportedShape(_) => {
                    unsupported(format!("unsupported-shape: {e}"))
                }
                e => malformed(e.to_string()),
            })?;
            if common.json {
                tri_json(&c)
            } else {
                tri_text(&c)
            }
        }
    };
    Ok(Output { body, code: OK })
}

fn verify_co(family: &str, n: &str, m: &str, common: &Common) -> Result<Output, Failure> {
    let registry = FamilyRegistry::default();
    let families = registry.select(family).ok_or_else(|| {
        let names = registry.names().join(", ");
        malformed(format!("unknown family {family:?}; known: {names}, all"))
    })?;
    let n = parse_range::<usize>(n)?;
    let m = parse_range::<u32>(m)?;
    if *n.start() < 2 {
        return Err(malformed("N must be at least 2"));
    }
    let start = Instant::now();
    let opts = RunOptions {
        workers: common.workers,
        cap: common.cap,
    };
    let reports = verify::run(&families, n, m, opts);
    let elapsed = start.elapsed();
    let (equal, mismatch, unsup) = verify::tally(&reports);
    let code = if mismatch > 0 { MISMATCH } else { OK };

    let body = if common.json {
        let cases: Vec<Value> = reports
            .iter()
            .map(|r| {
                let params: serde_json::Map<String, Value> =
                    r.case.params.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                let side = |s: &XSeries<_>| -> Value { serde_json::from_str(&series_json(s)).unwrap() };
                json!({
                    "case": r.case.to_string(),
                    "family": r.case.family,
                    "N": r.case.n,
                    "weight": r.case.weight.to_string(),
                    "params": params,
                    "status": r.status.as_str(),
                    "lhs": r.sides.as_ref().map(|s| side(&s.lhs)),
                    "rhs": r.sides.as_ref().map(|s| side(&s.rhs)),
                    "first_difference": r.first_difference.as_ref().map(|(against, x)| json!({"against": against, "x": x})),
                    "note": r.note,
                })
            })
            .collect();
        let case_ms: Vec<f64> = reports
            .iter()
            .map(|r| r.wall_time.as_secs_f64() * 1e3)
            .collect();
        json!({
            "cases": cases,
            "summary": {"cases": reports.len(), "equal": equal, "mismatch": mismatch, "unsupported": unsup},
            "footer": {"wall_ms": elapsed.as_secs_f64() * 1e3, "case_wall_ms": case_ms},
        })
        .to_string()
    } else {
        let mut lines = Vec::with_capacity(reports.len() + 2);
        for r in &reports {
            let mut line = format!("{} [{}]: {}", r.case, r.case.weight, r.status.as_str());
            if let (Status::Mismatch, Some((against, x)), Some(s)) =
                (r.status, &r.first_difference, &r.sides)
            {
                let other = if *against == "rhs" {
                    &s.rhs
                } else {
                    &s.extra
                        .iter()
                        .find(|(n, _)| n == against)
                        .expect("named side")
                        .1
                };
                line.push_str(&format!(
                    " at x^{x:?}: lhs {} vs {against} {}",
                    s.lhs.coeff(x),
                    other.coeff(x)
                ));
            }
            if let Some(note) = &r.note {
                line.push_str(&format!(" ({note})"));
            }
            lines.push(line);
        }
        lines.push(format!(
            "summary: {} case{}, {equal} equal, {mismatch} mismatch, {unsup} unsupported",
            reports.len(),
            if reports.len() == 1 { "" } else { "s" }
        ));
        lines.push(format!("# wall time {:.3}s", elapsed.as_secs_f64()));
        lines.join("\n")
    };
    Ok(Output { body, code })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let common = &cli.common;
    match &cli.cmd {
        Cmd::Emacdonald { composition } => emacdonald(composition, common),
        Cmd::Limit {
            composition, t0, ..
        } => limit(composition, *t0, common),
        Cmd::Char { n, weight, kind } => character(*n, weight, *kind, common),
        Cmd::VerifyCo { family, n, m } => verify_co(family, n, m, common),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { MALFORMED } else { OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut text = out.body;
            text.push('\n');
            let written = match &cli.common.out {
                Some(path) => fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(MALFORMED);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
