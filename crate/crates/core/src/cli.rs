//! The `c2stems` command-line front end.
//!
//! Exit codes: 0 success, 1 domain or verification failure, 2 usage or
//! parse error.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::divisibility::{
    self, check_nm_compatibility, check_table_invariants, NTable, Patched, Standard,
};
use crate::expr::{is_integral, parse, EvalError, Evaluator, ExprError};
use crate::oracle::check_oracle_equivalence;
use crate::rational::{check_rational_iso, presentation_of};
use crate::report::{Report, Status};
use crate::ring::{
    char_underlying, check_axioms, check_characters, check_presentation, BasisElement, Coefficient,
    LinearCombination, RingModel,
};
use crate::spectral::{
    adams_name, bundled_catalog, enumerate_e1_minus, load_catalog, validate_e1_support, TriWindow,
};

pub const SUCCESS: i32 = 0;
pub const FAILURE: i32 = 1;
pub const USAGE: i32 = 2;

pub const DEFAULT_WINDOW: u32 = 24;
pub const WINDOW_ENV: &str = "C2STEMS_WINDOW";

#[derive(Parser, Debug)]
#[command(
    name = "c2stems",
    version,
    about = "Exact arithmetic in the reduced ring of C2-equivariant stable stems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOptions {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Window bound used by `check`, `basis`, `divtable` and `e1`.
    #[arg(long, global = true, env = WINDOW_ENV, default_value_t = DEFAULT_WINDOW,
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    pub window: u32,
    /// Coefficient ring for `eval`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Integral)]
    pub mode: Mode,
    /// Replace n(I) by V in the divisibility table (test hook).
    #[arg(long = "corrupt-n", global = true, hide = true, value_name = "I=V", value_parser = parse_override)]
    pub corrupt_n: Vec<(u32, u32)>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Integral,
    Rational,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    All,
    Divisibility,
    Axioms,
    Presentation,
    Characters,
    Rational,
    Oracle,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression and print its canonical form, degree and characters.
    Eval { expression: String },
    /// List basis elements in a box of degrees, with Adams names.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        smin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        smax: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        wmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        wmax: Option<i64>,
    },
    /// Products of all basis pairs with |stem|, |weight| <= bound.
    Multable {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(0..=64))]
        bound: u32,
    },
    /// Table of i, n(i), m(i), b(i).
    Divtable {
        /// Largest i (defaults to the window).
        #[arg(long)]
        max: Option<u32>,
    },
    /// Adams names of basis elements.
    Name {
        #[arg(required = true)]
        expressions: Vec<String>,
    },
    /// Enumerate E1-minus generators over an Ext catalog.
    E1 {
        /// Catalog file (`label s f w free|torsion:k` per line); bundled catalog if absent.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Evaluate over Q and express the result in rho, eta, w+, w-.
    Rational { expression: String },
    /// Run verification suites.
    Check {
        #[arg(value_enum)]
        suites: Vec<Suite>,
    },
}

fn parse_override(s: &str) -> Result<(u32, u32), String> {
    let (i, v) = s.split_once('=').ok_or("expected I=V")?;
    let i: u32 = i.trim().parse().map_err(|e| format!("bad index: {e}"))?;
    let v: u32 = v.trim().parse().map_err(|e| format!("bad value: {e}"))?;
    if i == 0 {
        return Err("index must be >= 1".into());
    }
    Ok((i, v))
}

/// A command failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: FAILURE,
            message: message.into(),
        }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse(p) => Failure::usage(format!("parse error: {p}")),
            ExprError::Eval(e) => Failure::domain(format!("evaluation error: {e}")),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::domain(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::domain(format!("csv error: {e}"))
    }
}

struct Table {
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(headers: Vec<&'static str>) -> Self {
        Table {
            headers,
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Format::Text => {
                let mut widths: Vec<usize> =
                    self.headers.iter().map(|h| h.chars().count()).collect();
                for row in &self.rows {
                    for (w, cell) in widths.iter_mut().zip(row) {
                        *w = (*w).max(cell.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_owned()
                };
                writeln!(out, "{}", line(self.headers.clone()))?;
                for row in &self.rows {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
                }
            }
        }
        Ok(())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                USAGE
            } else {
                let _ = write!(out, "{rendered}");
                SUCCESS
            };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = &cli.global;
    let patched;
    let table: &dyn NTable = if g.corrupt_n.is_empty() {
        &Standard
    } else {
        patched = g
            .corrupt_n
            .iter()
            .fold(Patched::new(), |p, &(i, v)| p.with(i, v));
        &patched
    };
    let model = RingModel::unchecked(table);
    let window = g.window;
    match &cli.command {
        Command::Eval { expression } => cmd_eval(expression, g, model, out).map(|_| SUCCESS),
        Command::Rational { expression } => {
            cmd_rational(expression, g, model, out).map(|_| SUCCESS)
        }
        Command::Basis {
            smin,
            smax,
            wmin,
            wmax,
        } => {
            let w = i64::from(window);
            let mut t = Table::new(vec!["element", "stem", "weight", "adams_name"]);
            for b in BasisElement::in_box(
                smin.unwrap_or(-w),
                smax.unwrap_or(w),
                wmin.unwrap_or(-w),
                wmax.unwrap_or(w),
            ) {
                let d = b.degree();
                t.push(vec![
                    b.to_string(),
                    d.stem.to_string(),
                    d.weight.to_string(),
                    adams_name(&b).map_or_else(|| "-".to_owned(), |n| n.to_string()),
                ]);
            }
            t.write(g.format, out)?;
            Ok(SUCCESS)
        }
        Command::Multable { bound } => {
            let basis = BasisElement::window(i64::from(*bound), i64::from(*bound));
            let mut t = Table::new(vec!["left", "right", "product"]);
            for (k, a) in basis.iter().enumerate() {
                for b in &basis[k..] {
                    let p = model
                        .try_mul_basis(a, b)
                        .map_err(|e| Failure::domain(e.to_string()))?;
                    t.push(vec![a.to_string(), b.to_string(), p.to_string()]);
                }
            }
            t.write(g.format, out)?;
            Ok(SUCCESS)
        }
        Command::Divtable { max } => {
            let max = max.unwrap_or(window);
            let mut t = Table::new(vec!["i", "n", "m", "b"]);
            for i in 1..=max {
                let m =
                    divisibility::m_of(i64::from(i)).map_err(|e| Failure::usage(e.to_string()))?;
                t.push(vec![
                    i.to_string(),
                    table.n(i).to_string(),
                    m.to_string(),
                    table.b(i).to_string(),
                ]);
            }
            t.write(g.format, out)?;
            Ok(SUCCESS)
        }
        Command::Name { expressions } => {
            let evaluator = Evaluator::new(model);
            let mut t = Table::new(vec!["element", "adams_name"]);
            for text in expressions {
                let e = parse(text).map_err(ExprError::from)?;
                let a = evaluator.integral(&e).map_err(ExprError::from)?;
                let b = match a.terms().next() {
                    Some((b, c)) if a.len() == 1 && c == &1.into() => *b,
                    _ => {
                        return Err(Failure::domain(format!("{a} is not a basis element")));
                    }
                };
                t.push(vec![
                    b.to_string(),
                    adams_name(&b).map_or_else(|| "undefined".to_owned(), |n| n.to_string()),
                ]);
            }
            t.write(g.format, out)?;
            Ok(SUCCESS)
        }
        Command::E1 { catalog } => {
            let generators = match catalog {
                Some(path) => load_catalog(path).map_err(|e| Failure::usage(e.to_string()))?,
                None => bundled_catalog(),
            };
            let w = i64::from(window);
            let bounds = TriWindow {
                stem: -w..=w,
                filtration: -w..=w,
                weight: -w..=w,
            };
            let classes = enumerate_e1_minus(&generators, &bounds)
                .map_err(|e| Failure::domain(e.to_string()))?;
            let mut t = Table::new(vec![
                "class",
                "family",
                "a",
                "b",
                "stem",
                "filtration",
                "weight",
            ]);
            for c in &classes {
                t.push(vec![
                    c.name(),
                    c.family.to_string(),
                    c.rho_exponent.to_string(),
                    c.tau_exponent.to_string(),
                    c.degree.stem.to_string(),
                    c.degree.filtration.to_string(),
                    c.degree.weight.to_string(),
                ]);
            }
            t.write(g.format, out)?;
            Ok(if validate_e1_support(&classes).passed() {
                SUCCESS
            } else {
                FAILURE
            })
        }
        Command::Check { suites } => cmd_check(suites, window, table, model, g.format, out),
    }
}

fn describe<C: Coefficient>(
    a: &LinearCombination<C>,
    model: RingModel<'_>,
) -> Result<(String, String, String, String), Failure> {
    let phi_fix = model
        .try_char_fixed(a)
        .map_err(|e| Failure::domain(EvalError::from(e).to_string()))?;
    let (stem, weight) = match a.degree() {
        Some(d) => (d.stem.to_string(), d.weight.to_string()),
        None => ("-".to_owned(), "-".to_owned()),
    };
    Ok((
        stem,
        weight,
        char_underlying(a).to_string(),
        phi_fix.to_string(),
    ))
}

fn write_description<C: Coefficient>(
    a: &LinearCombination<C>,
    model: RingModel<'_>,
    format: Format,
    extra: Option<(&'static str, String)>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let (stem, weight, phi_e, phi_fix) = describe(a, model)?;
    match format {
        Format::Text => {
            let degree = if stem == "-" {
                "-".to_owned()
            } else {
                format!("({stem},{weight})")
            };
            write!(
                out,
                "{a}  degree {degree}  phi_e={phi_e}  phi_fix={phi_fix}"
            )?;
            if let Some((key, value)) = &extra {
                write!(out, "  {key}={value}")?;
            }
            writeln!(out)?;
            Ok(())
        }
        Format::Csv => {
            let mut headers = vec!["value", "stem", "weight", "phi_e", "phi_fix"];
            let mut row = vec![a.to_string(), stem, weight, phi_e, phi_fix];
            if let Some((key, value)) = extra {
                headers.push(key);
                row.push(value);
            }
            let mut t = Table::new(headers);
            t.push(row);
            t.write(Format::Csv, out)
        }
    }
}

fn cmd_eval(
    text: &str,
    g: &GlobalOptions,
    model: RingModel<'_>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let e = parse(text).map_err(ExprError::from)?;
    let evaluator = Evaluator::new(model);
    match g.mode {
        Mode::Integral => {
            let a = evaluator.integral(&e).map_err(ExprError::from)?;
            write_description(&a, model, g.format, None, out)
        }
        Mode::Rational => {
            let a = evaluator.rational(&e).map_err(ExprError::from)?;
            let integral = if is_integral(&a) { "yes" } else { "no" };
            write_description(
                &a,
                model,
                g.format,
                Some(("integral", integral.to_owned())),
                out,
            )
        }
    }
}

fn cmd_rational(
    text: &str,
    g: &GlobalOptions,
    model: RingModel<'_>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let e = parse(text).map_err(ExprError::from)?;
    let a = Evaluator::new(model)
        .rational(&e)
        .map_err(ExprError::from)?;
    let word = presentation_of(&a).to_string();
    write_description(&a, model, g.format, Some(("presentation", word)), out)
}

fn cmd_check(
    suites: &[Suite],
    window: u32,
    table: &dyn NTable,
    model: RingModel<'_>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut selected: Vec<Suite> = suites.to_vec();
    if selected.is_empty() || selected.contains(&Suite::All) {
        selected = vec![
            Suite::Divisibility,
            Suite::Axioms,
            Suite::Presentation,
            Suite::Characters,
            Suite::Rational,
            Suite::Oracle,
        ];
    }
    selected.sort();
    selected.dedup();
    if selected.contains(&Suite::Presentation) && window < 8 {
        return Err(Failure::usage("the presentation suite needs --window >= 8"));
    }
    let w = i64::from(window);
    let mut report = Report::new();
    for suite in selected {
        report.extend(match suite {
            Suite::All => unreachable!("expanded above"),
            Suite::Divisibility => {
                let mut r = check_nm_compatibility(window.max(8));
                r.extend(check_table_invariants(table, window));
                r
            }
            Suite::Axioms => check_axioms(&model, window, window / 2),
            Suite::Presentation => check_presentation(&model, window),
            Suite::Characters => check_characters(&model, window),
            Suite::Rational => check_rational_iso(window),
            Suite::Oracle => check_oracle_equivalence(&model, w, w),
        });
    }
    match format {
        Format::Text => {
            write!(out, "{report}")?;
            writeln!(
                out,
                "{} passed, {} failed, {} notes",
                report.count(Status::Pass),
                report.count(Status::Fail),
                report.count(Status::Note)
            )?;
        }
        Format::Csv => {
            let mut t = Table::new(vec!["suite", "check", "status", "detail"]);
            for item in &report.items {
                t.push(vec![
                    item.suite.clone(),
                    item.name.clone(),
                    item.status.to_string(),
                    item.detail.clone(),
                ]);
            }
            t.write(Format::Csv, out)?;
        }
    }
    Ok(if report.passed() { SUCCESS } else { FAILURE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("c2stems").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn eval_line() {
        let (code, out, _) = run_args(&["eval", "2 - rho*eta"]);
        assert_eq!(code, 0);
        assert_eq!(out, "w[0]  degree (0,0)  phi_e=2  phi_fix=0\n");
    }

    #[test]
    fn override_parser() {
        assert_eq!(parse_override("9=3"), Ok((9, 3)));
        assert!(parse_override("0=1").is_err());
        assert!(parse_override("9").is_err());
    }
}
