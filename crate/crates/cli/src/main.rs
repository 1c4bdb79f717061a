//! Command-line front end: `compare`, `refute`, `oracle`, and `eval` over
//! problem files, with exit codes that encode the logical outcome.
//!
//! Exit codes: 0 success (compare/eval), 10 refuted/unsat, 20 saturated/sat,
//! 30 budget or enumeration cap exhausted, 2 usage, parse, or I/O errors.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hedgeres::algebra::{Algebra, TruthTerm};
use hedgeres::ground_oracle::{
    check_sat, eval_clause, eval_formula, ground_instances, herbrand_universe, CheckOutcome,
    Interpretation, OracleError, SatMode,
};
use hedgeres::normalize::{clausify, SkolemGen};
use hedgeres::parser::{parse_algebra, Problem, ProblemParser};
use hedgeres::saturate::{
    proof_json, render_proof_text, saturate, SaturationResult, SearchBudget, Strategy,
};
use hedgeres::syntax::{print_annotated, print_formula, vacuous_quantifiers, AnnotatedClause};

#[derive(Parser)]
#[command(name = "hedgeres", version, about = "Resolution prover over hedge-algebra truth values")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    /// Stop at the first refutation.
    First,
    /// Exhaust the budget and keep the most reliable refutation.
    Best,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Clause values must exceed W.
    Strict,
    /// Clause values must reach W.
    Weak,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two truth terms; prints "<", "=", or ">".
    Compare {
        term1: String,
        term2: String,
        /// Algebra definition file (defaults to the built-in algebra).
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Search for a refutation of the problem's clauses.
    Refute {
        /// Problem files, parsed as one problem in order.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "first")]
        strategy: StrategyArg,
        /// Stop once this many clauses are retained.
        #[arg(long, default_value_t = 10_000)]
        max_clauses: usize,
        /// Skip inferences nested deeper than this.
        #[arg(long, default_value_t = 100)]
        max_depth: usize,
        /// Also write the proof object (JSON) here when refuted.
        #[arg(long)]
        proof: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide satisfiability of the grounded problem by enumeration.
    Oracle {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// Hedge depth of the truth-value sample enumerated per atom.
        #[arg(long, default_value_t = 2)]
        truth_depth: usize,
        /// Herbrand universe level used to ground non-ground clauses.
        #[arg(long, default_value_t = 0)]
        herbrand_level: usize,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate every statement under an interpretation file.
    Eval {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Interpretation file (JSON: domain, functions, atoms).
        #[arg(long)]
        interp: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn paint(s: &str, code: &str) -> String {
    if std::env::var_os("HEDGERES_NO_COLOR").is_some() || !std::io::stdout().is_terminal() {
        s.to_string()
    } else {
        format!("\x1b[{}m{}\x1b[0m", code, s)
    }
}

fn load_algebra(path: &Option<PathBuf>) -> Result<Algebra> {
    match path {
        None => Ok(Algebra::standard()),
        Some(p) => {
            let src = fs::read_to_string(p)
                .with_context(|| format!("reading algebra file {}", p.display()))?;
            Ok(parse_algebra(&p.display().to_string(), &src)?)
        }
    }
}

fn load_problem(files: &[PathBuf], algebra: &Algebra) -> Result<Problem> {
    let mut parser = ProblemParser::new(algebra);
    for p in files {
        let src =
            fs::read_to_string(p).with_context(|| format!("reading problem file {}", p.display()))?;
        parser.feed(&p.display().to_string(), &src)?;
    }
    Ok(parser.finish())
}

/// Clause statements plus the clause forms of every formula statement.
/// Formulas clausify at reliability ⊤ with one Skolem counter across the
/// whole problem.
fn all_clauses(problem: &Problem) -> Result<Vec<AnnotatedClause>> {
    let mut clauses = problem.clauses.clone();
    let mut gen = SkolemGen::new();
    gen.reserve_problem_symbols(&problem.clauses, &problem.formulas);
    for f in &problem.formulas {
        for q in vacuous_quantifiers(f) {
            eprintln!(
                "warning: quantifier {} binds no occurrence in formula {}",
                q,
                print_formula(&problem.algebra, f)
            );
        }
        clauses.extend(clausify(f, TruthTerm::Top, &problem.algebra, &mut gen)?);
    }
    Ok(clauses)
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Compare { term1, term2, algebra } => {
            let alg = load_algebra(&algebra)?;
            let a = alg.parse_term(&term1)?;
            let b = alg.parse_term(&term2)?;
            println!(
                "{}",
                match alg.cmp_terms(&a, &b) {
                    std::cmp::Ordering::Less => "<",
                    std::cmp::Ordering::Equal => "=",
                    std::cmp::Ordering::Greater => ">",
                }
            );
            Ok(0)
        }
        Command::Refute { files, algebra, strategy, max_clauses, max_depth, proof, format } => {
            if max_clauses == 0 || max_depth == 0 {
                bail!("--max-clauses and --max-depth must be positive");
            }
            let alg = load_algebra(&algebra)?;
            let problem = load_problem(&files, &alg)?;
            let clauses = all_clauses(&problem)?;
            let budget = SearchBudget {
                max_clauses,
                max_depth,
                strategy: match strategy {
                    StrategyArg::First => Strategy::First,
                    StrategyArg::Best => Strategy::Best,
                },
            };
            let outcome = saturate(&problem.algebra, &clauses, &budget);
            for w in &outcome.warnings {
                eprintln!("warning: {}", w);
            }
            eprintln!(
                "info: {} clauses retained, {} inferences generated",
                outcome.kept, outcome.generated
            );
            let report = proof_json(&problem.algebra, &outcome);
            let (code, verdict, color) = match &outcome.result {
                SaturationResult::Refuted(_) => (10, "REFUTED", "31"),
                SaturationResult::Saturated => (20, "SATURATED", "32"),
                SaturationResult::BudgetExhausted => (30, "BUDGET EXHAUSTED", "33"),
            };
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                Format::Text => {
                    println!("{}", paint(verdict, color));
                    if let SaturationResult::Refuted(tree) = &outcome.result {
                        println!(
                            "reliability: {}",
                            problem.algebra.print_term(tree.reliability())
                        );
                        print!("{}", render_proof_text(&problem.algebra, tree));
                    }
                }
            }
            if let SaturationResult::Refuted(_) = &outcome.result {
                if let Some(path) = proof {
                    write_text(&path, &serde_json::to_string_pretty(&report)?)?;
                }
            }
            Ok(code)
        }
        Command::Oracle { files, algebra, truth_depth, herbrand_level, mode, format } => {
            let alg = load_algebra(&algebra)?;
            let problem = load_problem(&files, &alg)?;
            let clauses = all_clauses(&problem)?;
            let bare: Vec<_> = clauses.iter().map(|c| c.clause.clone()).collect();
            let universe = herbrand_universe(&bare, herbrand_level);
            let mut ground = Vec::new();
            for c in &bare {
                ground.extend(ground_instances(c, &universe.terms));
            }
            let mode = match mode {
                ModeArg::Strict => SatMode::Strict,
                ModeArg::Weak => SatMode::Weak,
            };
            match check_sat(&problem.algebra, &ground, truth_depth, mode) {
                Ok(CheckOutcome::Unsatisfiable) => {
                    match format {
                        Format::Json => println!("{}", json!({"result": "unsat"})),
                        Format::Text => println!("{}", paint("UNSAT", "31")),
                    }
                    Ok(10)
                }
                Ok(CheckOutcome::Satisfiable(witness)) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({
                                "result": "sat",
                                "witness": witness.to_json(&problem.algebra),
                            }))?
                        ),
                        Format::Text => {
                            println!("{}", paint("SAT", "32"));
                            for (atom, value) in witness.atoms() {
                                println!(
                                    "  {} = {}",
                                    atom,
                                    problem.algebra.print_term(value)
                                );
                            }
                        }
                    }
                    Ok(20)
                }
                Err(e @ OracleError::EnumerationCap { .. }) => {
                    eprintln!("warning: {}", e);
                    match format {
                        Format::Json => println!("{}", json!({"result": "unknown"})),
                        Format::Text => println!("{}", paint("CAP EXHAUSTED", "33")),
                    }
                    Ok(30)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Eval { files, interp, algebra, format } => {
            let alg = load_algebra(&algebra)?;
            let problem = load_problem(&files, &alg)?;
            let src = fs::read_to_string(&interp)
                .with_context(|| format!("reading interpretation file {}", interp.display()))?;
            let value: serde_json::Value = serde_json::from_str(&src)
                .with_context(|| format!("parsing {}", interp.display()))?;
            let model = Interpretation::from_json(&problem.algebra, &value)?;
            let mut rows = Vec::new();
            for c in &problem.clauses {
                rows.push((
                    print_annotated(&problem.algebra, c),
                    eval_clause(&problem.algebra, &c.clause, &model)?,
                ));
            }
            for f in &problem.formulas {
                rows.push((
                    print_formula(&problem.algebra, f),
                    eval_formula(&problem.algebra, f, &model)?,
                ));
            }
            match format {
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(s, v)| {
                            json!({"statement": s, "value": problem.algebra.print_term(v)})
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&json!(items))?);
                }
                Format::Text => {
                    for (s, v) in &rows {
                        println!("{} = {}", s, problem.algebra.print_term(v));
                    }
                }
            }
            Ok(0)
        }
    }
}

fn write_text(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}
