use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use valuadef_core::defcheck::{
    check_thm_i, check_thm_ii, check_thm_iii, cor32_report, default_b_thm_i, delta_gamma_report,
    density_convex_hull_check, density_phi_scan, select_param_ii, vp_report, ThmIIIInstance,
};
use valuadef_core::hahn::{eval_series_expr, parse_series};
use valuadef_core::ovf::convexity_scan;
use valuadef_core::ratfunc::{parse_ratfunc, undefinability_demo, weighted_valuation, WeightAssignment};
use valuadef_core::rational::fmt_rational;
use valuadef_core::{Bound, CheckReport, CoefficientField, Error, Field, Group, ValuationSpec};

use crate::args::{Check, Cli, Command, Format, Output, SpecArgs};

/// Bound of `|numerator|, denominator` for the scan over the rationals.
const DENSITY_SCAN_BOUND: i64 = 50;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Group { group, gamma, p } => {
            print_lines(&describe_group(&group, gamma.as_deref(), p)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { field, weights, precision, expr } => {
            let lines = match (field, weights) {
                (Some(f), _) => eval_series(&f, &expr, precision)?,
                (None, Some(w)) => eval_ratfunc(&w, &expr)?,
                (None, None) => unreachable!("clap requires one of --field, --weights"),
            };
            print_lines(&lines);
            Ok(ExitCode::SUCCESS)
        }
        Command::Check(check) => {
            let (report, output) = run_check(check)?;
            emit(&report, &output)
        }
        Command::Report { path, output } => {
            let text = fs::read_to_string(&path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let report = CheckReport::from_json(&text)
                .map_err(|e| Error::InvalidArgument(format!("{}: not a report: {e}", path.display())))?;
            emit(&report, &output)
        }
    }
}

fn print_lines(lines: &[String]) {
    for l in lines {
        println!("{l}");
    }
}

fn describe_group(text: &str, gamma: Option<&str>, p: Option<u32>) -> Result<Vec<String>> {
    let g = Group::parse(text)?;
    let opt = |x: Option<String>| x.unwrap_or_else(|| "none".into());
    let mut out = vec![
        format!("group: {g}"),
        format!("rank: {}", g.rank()),
        format!("discrete: {}", g.is_discrete()),
        format!("divisible: {}", g.is_divisible()),
        format!("least positive: {}", opt(g.least_positive().map(|e| e.to_string()))),
    ];
    if let Some(p) = p {
        out.push(format!("maximal {p}-divisible convex subgroup: {}", g.max_p_divisible_convex(p)?));
    }
    match (gamma, p) {
        (Some(gm), Some(p)) => {
            let gm = g.parse_element(gm)?;
            out.push(format!("delta_gamma: {}", g.delta_gamma(&gm, p)?));
        }
        (Some(_), None) => return Err(Error::InvalidArgument("--gamma needs --p".into()).into()),
        _ => {}
    }
    Ok(out)
}

fn decided<T: Display>(r: valuadef_core::Result<T>) -> String {
    match r {
        Ok(x) => x.to_string(),
        Err(e) => format!("undecided ({e})"),
    }
}

fn eval_series(field: &str, expr: &str, precision: Option<i64>) -> Result<Vec<String>> {
    let f = Field::parse(field)?;
    let relative = match precision {
        None => None,
        Some(k) if k < 1 => return Err(Error::InvalidArgument(format!("precision {k} must be at least 1")).into()),
        Some(k) => {
            let unit = f
                .group()
                .unit()
                .ok_or_else(|| Error::InvalidArgument("trivial value group has no precision".into()))?;
            Some(Bound::Finite(unit.scale_i(k)))
        }
    };
    let x = eval_series_expr(&f, expr, relative.as_ref())?;
    let v = if x.is_exact_zero() { "infinity".to_string() } else { decided(x.valuation()) };
    Ok(vec![
        format!("x = {x}"),
        format!("v(x) = {v}"),
        format!("sign = {}", decided(x.sign().map(|s| s.symbol()))),
        format!("residue = {}", decided(x.residue())),
    ])
}

fn eval_ratfunc(weights: &str, expr: &str) -> Result<Vec<String>> {
    let w = WeightAssignment::parse(weights)?;
    let f = parse_ratfunc(expr)?;
    let v = if f.is_zero() { "infinity".to_string() } else { fmt_rational(&weighted_valuation(&f, &w)?) };
    Ok(vec![format!("f = {f}"), format!("v(f) = {v}")])
}

fn spec_of(args: &SpecArgs) -> Result<ValuationSpec> {
    let f = Field::parse(&args.field)?;
    Ok(match args.coarsen {
        None => ValuationSpec::canonical(&f),
        Some(k) => {
            let h = f.group().subgroup(k)?;
            ValuationSpec::coarsening(&f, h)?
        }
    })
}

fn run_check(check: Check) -> Result<(CheckReport, Output)> {
    Ok(match check {
        Check::ThmI { spec, b, run } => {
            let spec = spec_of(&spec)?;
            let b = match b {
                Some(b) => parse_series(spec.field(), &b)?,
                None => default_b_thm_i(&spec)?,
            };
            (check_thm_i(&spec, &b, run.samples, run.seed)?, run.output)
        }
        Check::ThmIi { spec, b, n, run } => {
            let spec = spec_of(&spec)?;
            let b = match b {
                Some(b) => parse_series(spec.field(), &b)?,
                None => select_param_ii(&spec, n)?.1,
            };
            (check_thm_ii(&spec, &b, n, run.samples, run.seed)?, run.output)
        }
        Check::ThmIii { spec, f, a, b0, run } => {
            let spec = spec_of(&spec)?;
            let inst = ThmIIIInstance::parse(&f, &a, &b0)?;
            (check_thm_iii(&spec, &inst, run.samples, run.seed)?, run.output)
        }
        Check::DeltaGamma { group, gamma, p, run } => {
            let g = Group::parse(&group)?;
            let gamma = g.parse_element(&gamma)?;
            (delta_gamma_report(&g, &gamma, p, run.samples, run.seed)?, run.output)
        }
        Check::Vp { field, p, run } => {
            let spec = ValuationSpec::canonical(&Field::parse(&field)?);
            (vp_report(&spec, p, run.samples, run.seed)?, run.output)
        }
        Check::Convexity { spec, run } => (convexity_scan(&spec_of(&spec)?, run.samples, run.seed)?, run.output),
        Check::Density { field, run } => {
            let f = Field::parse(&field)?;
            let lex_q = Group::parse("lex[Q]")?;
            if f.group() != &lex_q {
                return Err(Error::Precondition(format!("density runs over lex[Q], not {}", f.group())).into());
            }
            let report = match f.coefficients() {
                CoefficientField::Rationals => density_phi_scan(DENSITY_SCAN_BOUND, run.seed)?,
                mode => density_convex_hull_check(mode, run.samples, run.seed)?,
            };
            (report, run.output)
        }
        Check::Cor32 { spec, run } => (cor32_report(&spec_of(&spec)?, run.seed), run.output),
        Check::Undefinable { weights, n, run } => {
            let w = WeightAssignment::parse(&weights)?;
            (undefinability_demo(&w, n, run.samples, run.seed)?, run.output)
        }
    })
}

fn emit(report: &CheckReport, output: &Output) -> Result<ExitCode> {
    let body = match output.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match &output.out {
        Some(path) => write_file(path, &body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
        }
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}
