//! Command-line front end: `korbit <command> --family <f> --n <n>`.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a failure, 2 for bad
//! arguments, 3 when an internal consistency check of the engine fails.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use korbit::export::{self, SCHEMA_VERSION};
use korbit::{
    closed_orbit_classes, closure_conditions, compute_classes, parameter_flag, to_chern_formula,
    verify_closed_orbit_class, verify_table, ClassTable, Component, Error, Family, OrbitParameter,
    SymmetricPairConfig, WeakOrderGraph,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "korbit",
    version,
    about = "Equivariant classes of orthogonal and symplectic orbit closures on flag varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the orbit parameters with representative flags.
    Orbits(Common),
    /// Compute the class of every orbit closure.
    Classes(Common),
    /// Emit the weak-order graph.
    Graph(Common),
    /// Run the localization and table checks.
    Verify(Common),
    /// Closure rank conditions and the Chern-class formula of one orbit.
    Locus {
        #[command(flatten)]
        common: Common,
        /// Orbit parameter, e.g. "(1,3)(2,4)", "3412" or "+(1,4)(2,3)".
        #[arg(long)]
        involution: String,
        /// Component of a split `so-even` orbit, if not given in the parameter.
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
    },
}

#[derive(clap::Args, Debug)]
pub struct Common {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Rank n; the ambient group is GL(2n+1) for o-odd and (S)L(2n) otherwise.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Output format; `dot` is only valid for `graph`.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "o-odd")]
    OOdd,
    #[value(name = "o-even")]
    OEven,
    #[value(name = "so-even")]
    SoEven,
    #[value(name = "sp")]
    Sp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::OOdd => Family::OOdd,
            FamilyArg::OEven => Family::OEven,
            FamilyArg::SoEven => Family::SoEven,
            FamilyArg::Sp => Family::Sp,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Latex,
    Dot,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "plus")]
    Plus,
    #[value(name = "-", alias = "minus")]
    Minus,
}

enum Failure {
    Usage(String),
    Engine(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = target.write_all(text.as_bytes());
            return code;
        }
    };
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            EXIT_USAGE
        }
        Err(Failure::Engine(e)) => {
            let label = if e.is_internal() {
                "internal error"
            } else {
                "error"
            };
            let _ = writeln!(err, "{label}: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

/// Exit status for an engine error: 3 for failed internal checks, 2 for
/// rejected input.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else {
        EXIT_USAGE
    }
}

fn config(common: &Common) -> Result<SymmetricPairConfig, Failure> {
    Ok(SymmetricPairConfig::new(
        common.family.into(),
        common.n as usize,
    )?)
}

fn format(
    common: &Common,
    command: &str,
    allowed: &[Format],
    default: Format,
) -> Result<Format, Failure> {
    let chosen = common.format.unwrap_or(default);
    if allowed.contains(&chosen) {
        Ok(chosen)
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| f.to_possible_value().unwrap().get_name().to_string())
            .collect();
        Err(Failure::Usage(format!(
            "format '{}' is not available for '{command}' (expected one of {})",
            chosen.to_possible_value().unwrap().get_name(),
            names.join(", ")
        )))
    }
}

fn tables(config: &SymmetricPairConfig) -> Result<(WeakOrderGraph, ClassTable), Failure> {
    Ok(compute_classes(config)?)
}

fn write_json(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

const TABLE_FORMATS: [Format; 4] = [Format::Text, Format::Json, Format::Markdown, Format::Latex];

fn dispatch(command: &Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Orbits(common) => {
            let fmt = format(common, "orbits", &TABLE_FORMATS, Format::Text)?;
            let config = config(common)?;
            let (_, table) = tables(&config)?;
            match fmt {
                Format::Json => write_json(out, &export::orbits_json(&table)?)?,
                Format::Markdown => out.write_all(export::orbits_text(&table, true)?.as_bytes())?,
                Format::Latex => out.write_all(export::orbits_latex(&table)?.as_bytes())?,
                _ => out.write_all(export::orbits_text(&table, false)?.as_bytes())?,
            }
        }
        Command::Classes(common) => {
            let fmt = format(common, "classes", &TABLE_FORMATS, Format::Text)?;
            let config = config(common)?;
            let (_, table) = tables(&config)?;
            match fmt {
                Format::Json => write_json(out, &export::classes_json(&table)?)?,
                Format::Markdown => out.write_all(export::classes_markdown(&table)?.as_bytes())?,
                Format::Latex => out.write_all(export::classes_latex(&table)?.as_bytes())?,
                _ => out.write_all(export::classes_text(&table).as_bytes())?,
            }
        }
        Command::Graph(common) => {
            let allowed = [
                Format::Dot,
                Format::Text,
                Format::Json,
                Format::Markdown,
                Format::Latex,
            ];
            let fmt = format(common, "graph", &allowed, Format::Dot)?;
            let config = config(common)?;
            let (graph, _) = tables(&config)?;
            match fmt {
                Format::Json => write_json(out, &export::graph_json(&graph))?,
                Format::Markdown => out.write_all(export::graph_markdown(&graph).as_bytes())?,
                Format::Latex => out.write_all(export::graph_latex(&graph).as_bytes())?,
                Format::Text => out.write_all(export::graph_text(&graph).as_bytes())?,
                Format::Dot => out.write_all(graph.to_dot().as_bytes())?,
            }
        }
        Command::Verify(common) => {
            let fmt = format(
                common,
                "verify",
                &[Format::Text, Format::Json],
                Format::Text,
            )?;
            let config = config(common)?;
            return verify(&config, fmt, out);
        }
        Command::Locus {
            common,
            involution,
            sign,
        } => {
            let fmt = format(common, "locus", &TABLE_FORMATS, Format::Text)?;
            let config = config(common)?;
            locus(&config, involution, *sign, fmt, out)?;
        }
    }
    Ok(EXIT_OK)
}

struct SuiteSummary {
    name: String,
    checked: usize,
    failures: Vec<String>,
}

fn verify(config: &SymmetricPairConfig, fmt: Format, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut suites = Vec::new();

    let mut localization = SuiteSummary {
        name: "closed-orbit localization".into(),
        checked: 0,
        failures: Vec::new(),
    };
    for datum in closed_orbit_classes(config) {
        let report = verify_closed_orbit_class(&datum.class, config, datum.parameter.component());
        localization.checked += report.len();
        localization.failures.extend(report.failures().map(|r| {
            format!(
                "{} at {}: expected {}, got {}",
                datum.parameter, r.w, r.expected, r.actual
            )
        }));
    }
    suites.push(localization);

    let (graph, table) = tables(config)?;
    let report = verify_table(&table, &graph, config)?;
    let mut names: Vec<&str> = Vec::new();
    for check in &report.checks {
        if !names.contains(&check.check.as_str()) {
            names.push(&check.check);
        }
    }
    for name in names {
        let checks: Vec<_> = report.checks.iter().filter(|c| c.check == name).collect();
        suites.push(SuiteSummary {
            name: name.to_string(),
            checked: checks.len(),
            failures: checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| format!("{}: {}", c.subject, c.detail))
                .collect(),
        });
    }

    let passed = suites.iter().all(|s| s.failures.is_empty());
    match fmt {
        Format::Json => {
            let value = json!({
                "schema": SCHEMA_VERSION,
                "family": config.family.name(),
                "n": config.rank,
                "orbits": graph.nodes().len(),
                "passed": passed,
                "suites": suites.iter().map(|s| json!({
                    "name": s.name,
                    "checked": s.checked,
                    "failed": s.failures.len(),
                    "failures": s.failures,
                })).collect::<Vec<_>>(),
            });
            write_json(out, &value)?;
        }
        _ => {
            writeln!(
                out,
                "{config}: {} orbits, {} edges",
                graph.nodes().len(),
                graph.edges().len()
            )?;
            let width = suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
            for s in &suites {
                let status = if s.failures.is_empty() {
                    "ok"
                } else {
                    "FAILED"
                };
                writeln!(
                    out,
                    "  {:<width$}  {status:<6}  {} checked, {} failed",
                    s.name,
                    s.checked,
                    s.failures.len()
                )?;
                for f in &s.failures {
                    writeln!(out, "    {f}")?;
                }
            }
            writeln!(
                out,
                "{}",
                if passed {
                    "all checks passed"
                } else {
                    "verification failed"
                }
            )?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn parse_parameter(
    config: &SymmetricPairConfig,
    text: &str,
    sign: Option<SignArg>,
) -> Result<OrbitParameter, Failure> {
    let text = text.trim();
    let inline = text.starts_with('+') || text.starts_with('-');
    let text = match (sign, inline) {
        (Some(_), true) => {
            return Err(Failure::Usage(
                "give the component either in --involution or with --sign, not both".into(),
            ))
        }
        (Some(SignArg::Plus), false) => format!("+{text}"),
        (Some(SignArg::Minus), false) => format!("-{text}"),
        (None, _) => text.to_string(),
    };
    Ok(OrbitParameter::parse(&text, config)?)
}

fn locus(
    config: &SymmetricPairConfig,
    involution: &str,
    sign: Option<SignArg>,
    fmt: Format,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let node = parse_parameter(config, involution, sign)?;
    let (_, table) = tables(config)?;
    let class = table
        .get(&node)
        .ok_or_else(|| Error::Internal(format!("no class computed for {node}")))?;
    let flag = parameter_flag(&node, config)?;
    let conditions = closure_conditions(node.involution(), config)?;
    let formula = to_chern_formula(class, config)?;
    let component_note = node.component().map(|c| {
        let other = match c {
            Component::Plus => "-",
            Component::Minus => "+",
        };
        format!(
            "the rank conditions cut out the union of the closures of {node} and {other}{}",
            node.involution().cycle_notation()
        )
    });
    match fmt {
        Format::Json => {
            let value = json!({
                "schema": SCHEMA_VERSION,
                "family": config.family.name(),
                "n": config.rank,
                "parameter": node.to_string(),
                "flag": flag.to_string(),
                "conditions": conditions,
                "class": korbit::render::factor(class).to_string(),
                "terms": class.to_records(),
                "chern": {
                    "text": formula.to_text(),
                    "expanded": formula.to_expanded_text(),
                    "latex": formula.to_latex(),
                    "degree": formula.degree(),
                    "euler_class": formula.mentions_euler_class(),
                },
                "note": component_note,
            });
            write_json(out, &value)?;
        }
        Format::Latex => {
            writeln!(out, "\\begin{{align*}}")?;
            for c in &conditions {
                writeln!(
                    out,
                    "&\\operatorname{{rank}}(\\gamma|_{{F_{{{}}} \\times F_{{{}}}}}) \\le {} \\\\",
                    c.i, c.j, c.bound
                )?;
            }
            writeln!(out, "&[D_{{{node}}}] = {}", formula.to_latex())?;
            writeln!(out, "\\end{{align*}}")?;
        }
        Format::Markdown => {
            writeln!(out, "**Orbit** {node} ({config})\n")?;
            writeln!(out, "**Representative flag** {flag}\n")?;
            writeln!(out, "| i | j | rank(γ\\|F_i × F_j) ≤ |\n|---|---|---|")?;
            for c in &conditions {
                writeln!(out, "| {} | {} | {} |", c.i, c.j, c.bound)?;
            }
            writeln!(out, "\n**Class** {}\n", korbit::render::factor(class))?;
            writeln!(out, "**Degeneracy locus** {formula}")?;
            if let Some(note) = &component_note {
                writeln!(out, "\nNote: {note}.")?;
            }
        }
        _ => {
            writeln!(out, "orbit: {node} ({config})")?;
            writeln!(out, "representative flag: {flag}")?;
            writeln!(out, "closure conditions:")?;
            if conditions.is_empty() {
                writeln!(out, "  none")?;
            }
            for c in &conditions {
                writeln!(out, "  {c}")?;
            }
            writeln!(out, "class: {}", korbit::render::factor(class))?;
            writeln!(out, "degeneracy locus: {formula}")?;
            if let Some(note) = &component_note {
                writeln!(out, "note: {note}")?;
            }
        }
    }
    Ok(())
}
