//! Command-line front end: dimension tables, ring arithmetic, tangency
//! computations, invariance verification, line solvers, duality, screening,
//! and witness construction.

mod input;
mod journal;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use std::path::PathBuf;

use input::{load_curve, load_foliation, load_ode, load_web, Record};
use journal::{Appended, Journal};
use webode::algebra::{parse_poly, vars, Field};
use webode::chow::{
    self, chow_mul, dim_ode_space, dim_sections, tangency_class_pair, tangency_class_surface,
    Bidegree, ChowClass,
};
use webode::contact::{tangency_section_pair, CurveOnM, Tangency};
use webode::invariants::{
    find_invariant_lines_ode, genericity_witness, is_invariant_curve_web, is_solution_ode,
    product_web_witness, screen_finite_field, Certificate, ScreenConfig, ScreenObject,
    WitnessMode,
};
use webode::webs::{
    dual_foliation_of_degree1_web, dual_web_of_curve, invariant_lines_of_web, singularity_count,
    web_of_foliation, WebInvariantLines,
};

/// Exit code for domain or IO failures, distinct from the screening codes
/// (0 = certified empty, 1 = invariant object found, 2 = inconclusive).
const EXIT_ERROR: i32 = 3;

#[derive(Parser)]
#[command(
    name = "webode",
    version,
    about = "Second-order equations and webs on the projective plane, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Section-space and equation-space dimensions for a bidegree.
    Dims {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate an expression in the cohomology ring (variables h, hd).
    Chow {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Tangency classes, counts, and divisors.
    #[command(subcommand)]
    Tangency(TangencyCmd),
    /// Check a curve against an equation or a web.
    Verify {
        #[arg(long, value_name = "FILE")]
        ode: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        web: Option<PathBuf>,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        json: bool,
    },
    /// Invariant lines of an equation or a web.
    Lines {
        #[arg(long, value_name = "FILE")]
        ode: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        web: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Duality: curve -> web of tangents, degree-1 web <-> dual foliation.
    Dualize {
        #[arg(long)]
        curve: Option<String>,
        #[arg(long, value_name = "FILE")]
        web: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        foliation: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive finite-field screening with a certificate.
    Screen {
        #[arg(long, value_name = "FILE")]
        ode: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        web: Option<PathBuf>,
        #[command(flatten)]
        screen: ScreenArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a screened random equation witness in E(a, b).
    Witness {
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Construction: v (F.X_V from a (b+2)-web of degree a-1) or
        /// l (F.X_L from a (b-1)-web of degree a+2).
        #[arg(long, default_value = "v")]
        mode: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the equation record here.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[command(flatten)]
        screen: ScreenArgs,
        #[arg(long)]
        json: bool,
    },
    /// Product-web construction: clean factor times an avoiding pencil.
    ProductWeb {
        #[arg(long)]
        k: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ScreenArgs {
    /// Degree bound for the enumerated curves.
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Comma-separated primes; defaults to WEBODE_PRIMES or 5,7.
    #[arg(long)]
    primes: Option<String>,
    /// Enumeration budget per prime.
    #[arg(long, default_value_t = 2_000_000)]
    budget: u64,
    /// Certificate journal; defaults to WEBODE_JOURNAL when set.
    #[arg(long, value_name = "FILE")]
    journal: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TangencyCmd {
    /// Class of tang(F, T) for a surface class T = alpha h + beta hd.
    ClassSurface {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        alpha: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        beta: i64,
    },
    /// Bidegree of the tangency divisor between two equations, with the
    /// wedge section.
    Pair {
        #[arg(long, value_name = "FILE")]
        ode1: PathBuf,
        #[arg(long, value_name = "FILE")]
        ode2: PathBuf,
    },
    /// Tangency divisor along the lift of the line y = m x + c.
    OnLine {
        #[arg(long, value_name = "FILE")]
        ode: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
    },
    /// Tangency divisor along the fiber over (x, y).
    OnFiber {
        #[arg(long, value_name = "FILE")]
        ode: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(EXIT_ERROR);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let field = Field::Rational;
    match cli.command {
        Command::Dims { a, b, json } => {
            let sections = dim_sections(a, b);
            let ode = dim_ode_space(a, b).ok();
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "dims",
                        "a": a,
                        "b": b,
                        "sections_dim": sections.value,
                        "extrapolated": sections.extrapolated,
                        "ode_space_dim": ode,
                    })
                );
            } else {
                if sections.extrapolated {
                    println!("h0(O_M({a},{b})) = 0 (outside the proven range a, b >= 0)");
                } else {
                    println!("h0(O_M({a},{b})) = {}", sections.value);
                }
                match ode {
                    Some(v) => println!("dim E({a},{b}) = {v}"),
                    None => println!("dim E({a},{b}): defined for a, b >= 1 only"),
                }
            }
            Ok(0)
        }
        Command::Chow { expr, json } => {
            let class = eval_chow_expr(&expr)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "chow",
                        "expr": expr,
                        "class": class.0.to_vec(),
                        "display": class.to_string(),
                    })
                );
            } else {
                println!("{class}  [coefficients {:?}]", class.0);
            }
            Ok(0)
        }
        Command::Tangency(cmd) => run_tangency(cmd, field),
        Command::Verify { ode, web, curve, json } => {
            let curve_parsed = load_curve(&curve, field)?;
            match (ode, web) {
                (Some(path), None) => {
                    let e = load_ode(&Record::load(&path)?, field)?;
                    let solution = is_solution_ode(&e, &curve_parsed)?;
                    if json {
                        println!(
                            "{}",
                            json!({
                                "command": "verify",
                                "kind": "ode",
                                "curve": curve,
                                "solution": solution,
                            })
                        );
                    } else {
                        println!("{}", if solution { "solution" } else { "not a solution" });
                    }
                    Ok(if solution { 0 } else { 1 })
                }
                (None, Some(path)) => {
                    let w = load_web(&Record::load(&path)?, field)?;
                    let inv = is_invariant_curve_web(&w, &curve_parsed)?;
                    if json {
                        println!(
                            "{}",
                            json!({
                                "command": "verify",
                                "kind": "web",
                                "curve": curve,
                                "invariant": inv.invariant,
                                "cofactor": inv.cofactor.as_ref().map(|c| c.to_string()),
                            })
                        );
                    } else if inv.invariant {
                        match &inv.cofactor {
                            Some(c) => println!("invariant; cofactor {c}"),
                            None => println!("invariant"),
                        }
                    } else {
                        println!("not invariant");
                    }
                    Ok(if inv.invariant { 0 } else { 1 })
                }
                _ => bail!("give exactly one of --ode or --web"),
            }
        }
        Command::Lines { ode, web, json } => run_lines(ode, web, json, field),
        Command::Dualize { curve, web, foliation, json } => {
            run_dualize(curve, web, foliation, json, field)
        }
        Command::Screen { ode, web, screen, json } => {
            let config = screen_config(&screen)?;
            let cert = match (ode, web) {
                (Some(path), None) => {
                    let e = load_ode(&Record::load(&path)?, field)?;
                    screen_finite_field(ScreenObject::Ode(&e), &config)?
                }
                (None, Some(path)) => {
                    let w = load_web(&Record::load(&path)?, field)?;
                    screen_finite_field(ScreenObject::Web(&w), &config)?
                }
                _ => bail!("give exactly one of --ode or --web"),
            };
            store_certificate(&screen, &cert)?;
            report_certificate(&cert, json)
        }
        Command::Witness { a, b, mode, seed, out, screen, json } => {
            let config = screen_config(&screen)?;
            let mode = match mode.as_str() {
                "v" | "vertical" => WitnessMode::Vertical,
                "l" | "lines" => WitnessMode::Lines,
                other => bail!("unknown mode `{other}` (use v or l)"),
            };
            let (ode, cert) = genericity_witness(a, b, seed, mode, &config)?;
            let record = ode_record(&ode);
            if let Some(path) = &out {
                std::fs::write(path, &record)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            store_certificate(&screen, &cert)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "witness",
                        "a": a, "b": b, "seed": seed,
                        "bidegree": [ode.bidegree().a, ode.bidegree().b],
                        "record": record,
                        "certificate": serde_json::to_value(&cert)?,
                    })
                );
                Ok(certificate_exit(&cert))
            } else {
                println!("witness equation in E({a},{b}):");
                print!("{record}");
                for note in &cert.notes {
                    println!("note: {note}");
                }
                report_certificate(&cert, false)
            }
        }
        Command::ProductWeb { k, d, seed, json } => {
            let witness = product_web_witness(k, d, seed)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "product-web",
                        "k": k, "d": d, "seed": seed,
                        "section": witness.web.section().to_string(),
                        "factor": witness.factor.section().to_string(),
                        "pencil_point": witness.pencil_point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("product web: {}", witness.web);
                println!("factor:      {}", witness.factor);
                println!(
                    "pencil through ({} : {} : {})",
                    witness.pencil_point[0], witness.pencil_point[1], witness.pencil_point[2]
                );
            }
            Ok(0)
        }
    }
}

fn run_tangency(cmd: TangencyCmd, field: Field) -> Result<i32> {
    match cmd {
        TangencyCmd::ClassSurface { a, b, alpha, beta } => {
            let t = ChowClass::surface(alpha, beta);
            let class = tangency_class_surface(Bidegree::new(a, b), &t)?;
            println!("[tang(F, T)] = {class}");
            Ok(0)
        }
        TangencyCmd::Pair { ode1, ode2 } => {
            let e1 = load_ode(&Record::load(&ode1)?, field)?;
            let e2 = load_ode(&Record::load(&ode2)?, field)?;
            let class = tangency_class_pair(e1.bidegree(), e2.bidegree());
            let section = tangency_section_pair(&e1, &e2)?;
            println!("tangency divisor bidegree: {class}");
            println!("wedge section: {section}");
            Ok(0)
        }
        TangencyCmd::OnLine { ode, m, c } => {
            let e = load_ode(&Record::load(&ode)?, field)?;
            let expected = e.bidegree().a - 1;
            report_tangency(&e, &CurveOnM::line_slope_intercept(field, m, c), expected)
        }
        TangencyCmd::OnFiber { ode, x, y } => {
            let e = load_ode(&Record::load(&ode)?, field)?;
            let expected = e.bidegree().b - 1;
            report_tangency(&e, &CurveOnM::fiber_at(field, x, y), expected)
        }
    }
}

fn report_tangency(
    e: &webode::contact::SecondOrderODE,
    curve: &CurveOnM,
    expected: i64,
) -> Result<i32> {
    match webode::contact::tangency_on_curve(e, curve)? {
        Tangency::CurveInvariant => {
            println!("curve is invariant (tangency function vanishes identically)");
            Ok(0)
        }
        Tangency::Divisor(d) => {
            println!("total tangency count: {} (expected {expected})", d.total);
            for (mult, factor) in &d.factors {
                println!("  multiplicity {mult}: roots of {factor}");
            }
            if d.at_infinity > 0 {
                println!(
                    "  multiplicity {} at the infinity of the parametrization",
                    d.at_infinity
                );
            }
            Ok(0)
        }
    }
}

fn run_lines(
    ode: Option<PathBuf>,
    web: Option<PathBuf>,
    json: bool,
    field: Field,
) -> Result<i32> {
    match (ode, web) {
        (Some(path), None) => {
            let e = load_ode(&Record::load(&path)?, field)?;
            let sols = find_invariant_lines_ode(&e)?;
            let lines: Vec<String> = sols.rational_lines.iter().map(format_line).collect();
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "lines",
                        "kind": "ode",
                        "family": sols.family,
                        "rational_lines": lines,
                    })
                );
            } else if sols.family {
                println!("a positive-dimensional family of invariant lines");
                for l in lines {
                    println!("  including {l}");
                }
            } else {
                println!("{} invariant rational line(s)", lines.len());
                for l in lines {
                    println!("  {l}");
                }
            }
            Ok(0)
        }
        (None, Some(path)) => {
            let w = load_web(&Record::load(&path)?, field)?;
            match invariant_lines_of_web(&w)? {
                WebInvariantLines::Family => {
                    if json {
                        println!(
                            "{}",
                            json!({ "command": "lines", "kind": "web", "family": true })
                        );
                    } else {
                        println!("a one-parameter family of invariant lines");
                    }
                }
                WebInvariantLines::Finite { count, rational_lines } => {
                    let lines: Vec<String> = rational_lines.iter().map(format_line).collect();
                    if json {
                        println!(
                            "{}",
                            json!({
                                "command": "lines",
                                "kind": "web",
                                "family": false,
                                "count_with_multiplicity": count,
                                "rational_lines": lines,
                            })
                        );
                    } else {
                        match count {
                            Some(c) => println!("{c} invariant line(s) with multiplicity"),
                            None => println!("finitely many invariant lines"),
                        }
                        for l in lines {
                            println!("  {l}");
                        }
                    }
                }
            }
            Ok(0)
        }
        _ => bail!("give exactly one of --ode or --web"),
    }
}

fn run_dualize(
    curve: Option<String>,
    web: Option<PathBuf>,
    foliation: Option<PathBuf>,
    json: bool,
    field: Field,
) -> Result<i32> {
    match (curve, web, foliation) {
        (Some(expr), None, None) => {
            let c = load_curve(&expr, field)?;
            let dw = dual_web_of_curve(c.form())?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "dualize", "input": "curve",
                        "k": dw.web.rank(), "d": dw.web.degree(),
                        "section": dw.web.section().to_string(),
                        "linear_factor_lines": dw.rational_linear_factors.iter().map(format_line).collect::<Vec<_>>(),
                    })
                );
            } else {
                println!("dual web on the dual plane: {}", dw.web);
                if !dw.rational_linear_factors.is_empty() {
                    println!("note: the curve has rational line components:");
                    for l in &dw.rational_linear_factors {
                        println!("  {}", format_line(l));
                    }
                }
            }
            Ok(0)
        }
        (None, Some(path), None) => {
            let w = load_web(&Record::load(&path)?, field)?;
            let f = dual_foliation_of_degree1_web(&w)?;
            let sing = singularity_count(&f).ok();
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "dualize", "input": "web",
                        "degree": f.degree(),
                        "components": f.components().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                        "saturated": f.is_saturated(),
                        "singularities": sing.as_ref().map(|s| s.total()),
                    })
                );
            } else {
                println!("dual foliation of degree {}:", f.degree());
                for (name, comp) in ["X0", "X1", "X2"].iter().zip(f.components()) {
                    println!("  {name} = {comp}");
                }
                println!("saturated: {}", f.is_saturated());
                if let Some(s) = sing {
                    println!("singularities (with multiplicity): {}", s.total());
                }
            }
            Ok(0)
        }
        (None, None, Some(path)) => {
            let f = load_foliation(&Record::load(&path)?, field)?;
            let w = web_of_foliation(&f)?;
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "dualize", "input": "foliation",
                        "k": w.rank(), "d": w.degree(),
                        "section": w.section().to_string(),
                    })
                );
            } else {
                println!("web of the foliation: {w}");
            }
            Ok(0)
        }
        _ => bail!("give exactly one of --curve, --web, --foliation"),
    }
}

fn screen_config(args: &ScreenArgs) -> Result<ScreenConfig> {
    let primes_text = match &args.primes {
        Some(p) => p.clone(),
        None => std::env::var("WEBODE_PRIMES").unwrap_or_else(|_| "5,7".to_string()),
    };
    let primes: Vec<u64> = primes_text
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|_| anyhow!("bad prime `{p}`")))
        .collect::<Result<_>>()?;
    if primes.is_empty() {
        bail!("no primes given");
    }
    Ok(ScreenConfig { degree_bound: args.r, primes, budget: args.budget })
}

fn store_certificate(args: &ScreenArgs, cert: &Certificate) -> Result<()> {
    let path = match &args.journal {
        Some(p) => Some(p.clone()),
        None => std::env::var("WEBODE_JOURNAL").ok().map(PathBuf::from),
    };
    if let Some(path) = path {
        let journal = Journal::at(&path);
        match journal.append(cert)? {
            Appended::Written => eprintln!("certificate appended to {}", path.display()),
            Appended::Duplicate => {
                eprintln!("already certified: identical record in {}", path.display())
            }
        }
    }
    Ok(())
}

fn certificate_exit(cert: &Certificate) -> i32 {
    if cert.found_invariant() {
        1
    } else if cert.is_clean() {
        0
    } else {
        2
    }
}

fn report_certificate(cert: &Certificate, json: bool) -> Result<i32> {
    if json {
        println!("{}", serde_json::to_string(cert)?);
    } else {
        println!(
            "screened {} (hash {}) to degree {} over {:?}",
            cert.kind,
            &cert.object_hash[..12],
            cert.degree_bound,
            cert.primes
        );
        for report in &cert.per_prime {
            if report.bad_reduction {
                println!("  p = {}: skipped (bad reduction)", report.prime);
                continue;
            }
            println!(
                "  p = {}: {} curves enumerated, {} findings",
                report.prime,
                report.enumerated,
                report.findings.len()
            );
            for f in &report.findings {
                println!("    degree {}: {}", f.degree, f.curve);
            }
        }
        println!("semantics: {}", cert.semantics);
    }
    Ok(certificate_exit(cert))
}

fn format_line(line: &[webode::algebra::FieldElem; 3]) -> String {
    format!("({} : {} : {})", line[0], line[1], line[2])
}

/// The key-value record for an equation, in the input grammar.
fn ode_record(e: &webode::contact::SecondOrderODE) -> String {
    let b = e.bidegree();
    let mut out = format!("a = {}\nb = {}\n", b.a, b.b);
    if !e.lines_part().is_zero() {
        out.push_str(&format!("F1 = \"{}\"\n", e.lines_part().as_poly()));
    }
    if !e.vertical_part().is_zero() {
        out.push_str(&format!("F2 = \"{}\"\n", e.vertical_part().as_poly()));
    }
    out
}

/// Evaluates an expression in h, hd into the canonical class basis.
fn eval_chow_expr(expr: &str) -> Result<ChowClass> {
    let hv = vars(&["h", "hd"]);
    let poly = parse_poly(expr, Field::Rational, &hv).context("parsing ring expression")?;
    let mut acc = ChowClass::zero();
    for (mono, coeff) in &poly.terms {
        let c = coeff
            .as_i64()
            .ok_or_else(|| anyhow!("non-integer coefficient {coeff} in a ring expression"))?;
        let mut term = chow::ONE;
        for _ in 0..mono.0[0] {
            term = chow_mul(&term, &chow::H);
        }
        for _ in 0..mono.0[1] {
            term = chow_mul(&term, &chow::HD);
        }
        acc = acc.add(&term.scale(c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chow_expression_evaluation() {
        // (h + hd)^3 = 6 pt
        let c = eval_chow_expr("(h + hd)^3").unwrap();
        assert_eq!(c, chow::PT.scale(6));
        // hd^2 = h*hd - h^2
        let c = eval_chow_expr("hd^2").unwrap();
        assert_eq!(c, ChowClass([0, 0, 0, -1, 1, 0]));
        assert!(eval_chow_expr("1/2*h").is_err());
    }

    #[test]
    fn ode_record_round_trips() {
        let field = Field::Rational;
        let mut rng = webode::sample::rng_from_seed(11);
        let e = webode::sample::random_ode(&mut rng, field, 2, 2);
        let record = ode_record(&e);
        let parsed = load_ode(&Record::parse(&record).unwrap(), field).unwrap();
        assert_eq!(parsed, e);
    }
}
