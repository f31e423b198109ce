//! The `qcone` command line: parsing, command dispatch and report rendering.
//!
//! [`run`] returns the exit code and both output streams so the binary and
//! the tests share one code path.

pub mod parse;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use qcone_core::expsolve::{self, Extras};
use qcone_core::presets::{momentum_map, preset_with};
use qcone_core::verify::{check_confluence, Category, CheckReport, Status};
use qcone_core::{
    build_preset, run_all, OperatorAlgebra, OperatorExpr, PresetName, PresetOptions, SuiteOptions,
};

pub use parse::{parse, parse_element, ExprAst, ParseError, TermAst};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEXPECTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qcone",
    version,
    about = "Exact checks for q-deformed calculi on the quantum plane and the light-cone"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression in a preset.
    Normalize {
        #[arg(long)]
        preset: PresetName,
        expr: String,
    },
    /// Run the verification suite, or the checks about some presets.
    Verify {
        #[arg(long, conflicts_with = "all")]
        preset: Vec<PresetName>,
        #[arg(long)]
        all: bool,
        /// Restrict to these check categories.
        #[arg(long)]
        category: Vec<Category>,
        /// Use the derivative table exactly as printed.
        #[arg(long)]
        printed_typo: bool,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Critical-pair check for one preset.
    Confluence {
        #[arg(long)]
        preset: PresetName,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long)]
        printed_typo: bool,
    },
    /// Derive the twistor commutation exponents.
    SolveExponents {
        #[arg(long)]
        with_reality: bool,
        #[arg(long)]
        with_star_closure: bool,
    },
    /// Expand an operator under q = exp(ih) up to h^order.
    Limit {
        #[arg(long)]
        order: usize,
        /// `box` or an expression in D11..D22 or P11..P22.
        #[arg(default_value = "box")]
        target: String,
    },
    /// Presets, their generator tokens and check categories.
    ListPresets,
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome::usage(text),
            };
        }
    };
    dispatch(&cli)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Normalize { preset, expr } => normalize(cli.format, *preset, expr),
        Command::Verify {
            preset,
            all: _,
            category,
            printed_typo,
            max_degree,
        } => {
            let opts = SuiteOptions {
                printed_typo: *printed_typo,
                max_degree: *max_degree,
                categories: (!category.is_empty()).then(|| category.clone()),
                presets: (!preset.is_empty()).then(|| preset.clone()),
                ..SuiteOptions::default()
            };
            let result = run_all(&opts);
            let code = if result.all_as_expected() {
                EXIT_OK
            } else {
                EXIT_UNEXPECTED
            };
            let stdout = match cli.format {
                Format::Json => to_json(&json!({
                    "options": result.options,
                    "all_as_expected": result.all_as_expected(),
                    "reports": result.reports,
                })),
                Format::Text => render_reports(&result.reports),
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Command::Confluence {
            preset,
            max_degree,
            printed_typo,
        } => {
            let p = preset_with(
                *preset,
                PresetOptions {
                    printed_typo: *printed_typo,
                },
            );
            let mut report = check_confluence(&p.presentation, *max_degree);
            report.context.printed_typo = *printed_typo;
            if *preset == PresetName::CoordDeriv {
                report = report.expecting(Status::Fail);
            }
            let code = if report.as_expected() {
                EXIT_OK
            } else {
                EXIT_UNEXPECTED
            };
            let stdout = match cli.format {
                Format::Json => to_json(&report),
                Format::Text => render_reports(std::slice::from_ref(&report)),
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Command::SolveExponents {
            with_reality,
            with_star_closure,
        } => solve_exponents(
            cli.format,
            Extras {
                reality: *with_reality,
                star_closure: *with_star_closure,
            },
        ),
        Command::Limit { order, target } => limit(cli.format, *order, target),
        Command::ListPresets => list_presets(cli.format),
    }
}

fn normalize(format: Format, name: PresetName, expr: &str) -> Outcome {
    let p = build_preset(name);
    let e = match parse_element(expr, &p) {
        Ok(e) => e,
        Err(err) => return Outcome::usage(format!("error: {err}\n")),
    };
    let nf = p.render(&p.normalize(&e));
    match format {
        Format::Text => Outcome::ok(format!("{nf}\n")),
        Format::Json => Outcome::ok(to_json(
            &json!({ "preset": name, "input": expr, "normal_form": nf }),
        )),
    }
}

fn render_reports(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = match (r.status, r.expected) {
            (Status::Pass, Status::Pass) => "PASS ",
            (Status::Fail, Status::Fail) => "XFAIL",
            (Status::Fail, Status::Pass) => "FAIL ",
            (Status::Pass, Status::Fail) => "XPASS",
        };
        let _ = writeln!(out, "{tag} {} ({} examined)", r.check, r.context.examined);
        for w in &r.witnesses {
            let _ = writeln!(out, "      {} => {}", w.input, w.difference);
        }
    }
    let bad = reports.iter().filter(|r| !r.as_expected()).count();
    let _ = writeln!(out, "{} checks, {} unexpected", reports.len(), bad);
    out
}

fn solve_exponents(format: Format, extras: Extras) -> Outcome {
    match expsolve::derive(extras) {
        Ok(d) => {
            let pinned = !(extras.reality || extras.star_closure) || d.free.is_empty();
            let code = if d.matches_reference && pinned {
                EXIT_OK
            } else {
                EXIT_UNEXPECTED
            };
            let stdout = match format {
                Format::Json => to_json(&json!({ "extras": extras, "derivation": d })),
                Format::Text => {
                    let mut s = String::from("equations:\n");
                    for (eq, src) in &d.equations {
                        let _ = writeln!(s, "  {eq}    [{src}]");
                    }
                    s.push_str("reduced:\n");
                    for eq in &d.reduced {
                        let _ = writeln!(s, "  {eq}");
                    }
                    s.push_str("solution:\n");
                    for v in &d.family {
                        let _ = writeln!(s, "  {v}");
                    }
                    s
                }
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: EXIT_UNEXPECTED,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Parses an operator in `D` or `P` tokens; momenta become `−i∂`.
pub fn parse_operator(ops: &OperatorAlgebra, target: &str) -> Result<OperatorExpr, ParseError> {
    if target.trim() == "box" {
        return Ok(ops.box_q());
    }
    let derivs = ops.derivatives();
    match parse_element(target, derivs) {
        Ok(e) => Ok(ops
            .operator(&e)
            .expect("parsed over the derivative alphabet")),
        Err(err @ ParseError::UnknownToken { .. }) => {
            let momenta = build_preset(PresetName::Momentum);
            let Ok(e) = parse_element(target, &momenta) else {
                return Err(err);
            };
            let mapped = momentum_map()
                .apply(&e, &momenta, derivs)
                .expect("every momentum has an image");
            Ok(ops.operator(&mapped).expect("images are derivative words"))
        }
        Err(err) => Err(err),
    }
}

fn limit(format: Format, order: usize, target: &str) -> Outcome {
    let ops = OperatorAlgebra::new();
    let op = match parse_operator(&ops, target) {
        Ok(op) => op,
        Err(err) => return Outcome::usage(format!("error: {err}\n")),
    };
    let parts: BTreeMap<String, String> = ops
        .classical_limit(&op, order)
        .iter()
        .map(|(k, v)| (format!("h^{k}"), ops.render(v)))
        .collect();
    match format {
        Format::Json => Outcome::ok(to_json(&json!({
            "operator": ops.render(&op),
            "order": order,
            "parts": parts,
        }))),
        Format::Text => {
            let mut s = format!("operator: {}\n", ops.render(&op));
            for (k, v) in &parts {
                let _ = writeln!(s, "  {k}: {v}");
            }
            Outcome::ok(s)
        }
    }
}

fn list_presets(format: Format) -> Outcome {
    let rows: Vec<serde_json::Value> = PresetName::ALL
        .iter()
        .map(|&n| {
            let p = build_preset(n);
            let tokens: Vec<&str> = p.alphabet().iter().map(|g| g.name.as_str()).collect();
            json!({ "name": n, "description": n.description(), "tokens": tokens })
        })
        .collect();
    let notes = [
        "dotted indices are flattened: x^{1 2-dot} is X12, dx^{21} is dX21, d/dx^{22} is D22, P_{11} is P11",
        "b marks a conjugate twistor component: xb is the conjugate of x",
        "scalars: rationals like 3/2, i, q, q^k, q^-k, q^k/2, q^(1/2); juxtaposition or * multiplies",
    ];
    let categories: Vec<&str> = Category::ALL.iter().map(|c| c.as_str()).collect();
    match format {
        Format::Json => Outcome::ok(to_json(
            &json!({ "presets": rows, "notes": notes, "categories": categories }),
        )),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let tokens: Vec<&str> = r["tokens"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .filter_map(|t| t.as_str())
                    .collect();
                let _ = writeln!(
                    s,
                    "{:<16} {}",
                    r["name"].as_str().unwrap(),
                    r["description"].as_str().unwrap()
                );
                let _ = writeln!(s, "{:<16} tokens: {}", "", tokens.join(" "));
            }
            s.push('\n');
            for n in notes {
                let _ = writeln!(s, "{n}");
            }
            let _ = writeln!(s, "check categories: {}", categories.join(", "));
            Outcome::ok(s)
        }
    }
}
