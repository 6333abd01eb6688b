//! `alc`: batch commands over `.alcm` model files and theory files.
//!
//! Exit codes: 0 for success or a positive verdict, 1 for a negative
//! verdict, 2 for input errors, 3 when a search budget runs out.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use alc_core::basis::{basis, covariety_basis, BasisError, BasisOptions, BasisReport, Mode};
use alc_core::models::{
    check_morphism, coarsest_bisimulation, coproduct, quotient, IndividualMap, MorphismCheck,
};
use alc_core::reasoner::{bounded_countermodel_over, Budget, Reasoner, ReasonerError, Verdict};
use alc_core::semantics::{
    check_theory, eval_concept, fixpoint_value, parse_model, satisfies_fixpoint, write_model,
    Interpretation,
};
use alc_core::syntax::{
    parse_concept, parse_definition, parse_gci, parse_gci_inferring, parse_theory, FixSemantics,
    SyntaxError,
};
use alc_core::{Gci, Signature, Theory};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "alc",
    version,
    about = "Finite models, GCI bases and entailment for ALC"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the extension of a concept.
    Eval {
        model: PathBuf,
        #[arg(short = 'c', long = "concept")]
        concept: String,
    },
    /// Check every axiom of a theory against a model.
    Check { model: PathBuf, theory: PathBuf },
    /// Compute a fixpoint definition and whether the model satisfies it.
    Fixpoint {
        model: PathBuf,
        #[arg(long, conflicts_with = "lfp", required_unless_present = "lfp")]
        gfp: bool,
        #[arg(long)]
        lfp: bool,
        /// `name = body`.
        definition: String,
    },
    /// Print a finite basis of the GCIs a model satisfies.
    Basis {
        model: PathBuf,
        #[command(flatten)]
        opts: BasisArgs,
    },
    /// Print a finite basis of the GCIs all the given models satisfy.
    CovarietyBasis {
        #[arg(required = true)]
        models: Vec<PathBuf>,
        #[command(flatten)]
        opts: BasisArgs,
    },
    /// Classify an individual map between two models.
    Morphism {
        src: PathBuf,
        dst: PathBuf,
        map: PathBuf,
    },
    /// Write the disjoint union of models.
    Coproduct {
        #[arg(required = true)]
        models: Vec<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Write the quotient by the coarsest bisimulation.
    BisimQuotient {
        model: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether a theory entails a GCI.
    Entails {
        theory: PathBuf,
        gci: String,
        #[arg(long, default_value_t = Budget::default().0)]
        budget: u64,
        /// Also print a countermodel when the GCI is not entailed.
        #[arg(long)]
        witness: bool,
    },
    /// Search for a small model of a theory violating a GCI.
    Countermodel {
        theory: PathBuf,
        gci: String,
        #[arg(long = "max-size", value_parser = clap::value_parser!(u8).range(1..=16))]
        max_size: u8,
    },
}

#[derive(Args)]
struct BasisArgs {
    /// Drop axioms entailed by the others.
    #[arg(long)]
    minimize: bool,
    /// Defaults to separating when the model allows it.
    #[arg(long)]
    mode: Option<Mode>,
    /// Print only the statistics record.
    #[arg(long)]
    json: bool,
    /// Reasoner budget per redundancy check.
    #[arg(long, default_value_t = Budget::default().0)]
    budget: u64,
}

enum Failure {
    Input(String),
    Budget(String),
}

type Run = Result<bool, Failure>;

/// `path:line:column: message` for positioned errors, `path: message` otherwise.
fn input(path: &Path, e: impl Display) -> Failure {
    let msg = e.to_string();
    let sep = if msg.starts_with(|c: char| c.is_ascii_digit()) {
        ":"
    } else {
        ": "
    };
    Failure::Input(format!("{}{sep}{msg}", path.display()))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(path, e))
}

fn load_model(path: &Path) -> Result<Interpretation, Failure> {
    parse_model(&read(path)?).map_err(|e| input(path, e))
}

fn load_theory(path: &Path, sig: Option<&Signature>) -> Result<(Signature, Theory), Failure> {
    parse_theory(&read(path)?, sig).map_err(|e| input(path, e))
}

fn arg_error(what: &str, e: impl Display) -> Failure {
    Failure::Input(format!("{what}: {e}"))
}

/// A GCI over `sig`, or over names inferred from its own text when it
/// mentions names outside `sig`.
fn query_gci(text: &str, sig: &Signature) -> Result<Gci, Failure> {
    match parse_gci(text, sig) {
        Err(SyntaxError::UnknownName { .. }) => parse_gci_inferring(text).map(|(_, g)| g),
        other => other,
    }
    .map_err(|e| arg_error("GCI", e))
}

fn write_output(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| input(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn basis_failure(e: BasisError) -> Failure {
    match e {
        BasisError::Reasoner(ReasonerError::SearchBudgetExceeded) => Failure::Budget(e.to_string()),
        e => Failure::Input(e.to_string()),
    }
}

fn print_basis(report: &BasisReport, sig: &Signature, json: bool) {
    let s = &report.stats;
    if json {
        let record = serde_json::json!({
            "classes": s.classes,
            "raw_count": s.raw_count,
            "minimized_count": s.minimized_count,
            "mode": report.mode,
        });
        println!("{record}");
        return;
    }
    print!("{}", report.theory().render(sig));
    println!("# mode {}", report.mode);
    println!("# classes {}", s.classes);
    println!(
        "# raw {} (names {}, binary {}, complements {}, restrictions {}, inclusions {})",
        s.raw_count, s.names, s.binary, s.complements, s.restrictions, s.inclusions
    );
    if let Some(m) = &report.minimized {
        println!(
            "# minimized {} (eliminated {})",
            m.theory.len(),
            m.eliminated
        );
        for g in &m.undecided {
            println!("# kept after timeout: {g}");
        }
    }
}

fn options(a: &BasisArgs) -> BasisOptions {
    BasisOptions {
        mode: a.mode,
        minimize: a.minimize,
        budget: Budget(a.budget),
        ..BasisOptions::default()
    }
}

fn run(cmd: Command) -> Run {
    match cmd {
        Command::Eval { model, concept } => {
            let i = load_model(&model)?;
            let c = parse_concept(&concept, i.signature()).map_err(|e| arg_error("concept", e))?;
            println!("{}", i.format_set(&eval_concept(&c, &i)));
            Ok(true)
        }
        Command::Check { model, theory } => {
            let i = load_model(&model)?;
            let (_, t) = load_theory(&theory, Some(i.signature()))?;
            let verdicts = check_theory(&i, &t).map_err(|e| input(&theory, e))?;
            for (g, ok) in t.iter().zip(&verdicts) {
                println!("{}  {g}", if *ok { "satisfied" } else { "violated " });
            }
            Ok(verdicts.iter().all(|&ok| ok))
        }
        Command::Fixpoint {
            model,
            gfp,
            definition,
            ..
        } => {
            let i = load_model(&model)?;
            let sem = if gfp {
                FixSemantics::Gfp
            } else {
                FixSemantics::Lfp
            };
            let d = parse_definition(&definition, i.signature(), sem)
                .map_err(|e| arg_error("definition", e))?;
            let value = fixpoint_value(&i, &d).map_err(|e| arg_error("definition", e))?;
            let ok = satisfies_fixpoint(&i, &d).map_err(|e| arg_error("definition", e))?;
            println!("{}", i.format_set(&value.set));
            println!("{}", if ok { "satisfied" } else { "not satisfied" });
            Ok(ok)
        }
        Command::Basis { model, opts } => {
            let i = load_model(&model)?;
            let report = basis(&i, &options(&opts)).map_err(basis_failure)?;
            print_basis(&report, i.signature(), opts.json);
            Ok(true)
        }
        Command::CovarietyBasis { models, opts } => {
            let ks = models
                .iter()
                .map(|p| load_model(p))
                .collect::<Result<Vec<_>, _>>()?;
            let report = covariety_basis(&ks, &options(&opts)).map_err(basis_failure)?;
            print_basis(&report, ks[0].signature(), opts.json);
            Ok(true)
        }
        Command::Morphism { src, dst, map } => {
            let (s, d) = (load_model(&src)?, load_model(&dst)?);
            let m = IndividualMap::parse(&read(&map)?, &s, &d).map_err(|e| input(&map, e))?;
            match check_morphism(&m, &s, &d).map_err(|e| arg_error("morphism", e))? {
                MorphismCheck::Morphism(flags) => {
                    println!("{flags}");
                    Ok(true)
                }
                MorphismCheck::NotMorphism(w) => {
                    println!("not a morphism: {w}");
                    Ok(false)
                }
            }
        }
        Command::Coproduct { models, output } => {
            let ks = models
                .iter()
                .map(|p| load_model(p))
                .collect::<Result<Vec<_>, _>>()?;
            let sum = coproduct(&ks).map_err(|e| arg_error("coproduct", e))?;
            write_output(output.as_deref(), &write_model(&sum))?;
            Ok(true)
        }
        Command::BisimQuotient { model, output } => {
            let i = load_model(&model)?;
            let (q, _) = quotient(&i, &coarsest_bisimulation(&i))
                .expect("the coarsest bisimulation is valid");
            write_output(output.as_deref(), &write_model(&q))?;
            Ok(true)
        }
        Command::Entails {
            theory,
            gci,
            budget,
            witness,
        } => {
            let (sig, t) = load_theory(&theory, None)?;
            let g = query_gci(&gci, &sig)?;
            let mut r = Reasoner::with_signature(&sig, &t, Budget(budget))
                .map_err(|e| input(&theory, e))?;
            let result = r.entails(&g).map_err(|e| arg_error("GCI", e))?;
            println!("{}", result.verdict);
            match result.verdict {
                Verdict::Entailed => Ok(true),
                Verdict::Timeout => Err(Failure::Budget(format!("budget of {budget} exhausted"))),
                _ => {
                    if let (true, Some(w)) = (witness, &result.witness) {
                        print!("{}", write_model(w));
                    }
                    Ok(false)
                }
            }
        }
        Command::Countermodel {
            theory,
            gci,
            max_size,
        } => {
            let (sig, t) = load_theory(&theory, None)?;
            let g = query_gci(&gci, &sig)?;
            match bounded_countermodel_over(&sig, &t, &g, usize::from(max_size)) {
                Ok(Some(w)) => {
                    print!("{}", write_model(&w));
                    Ok(true)
                }
                Ok(None) => {
                    println!("no countermodel with at most {max_size} individuals");
                    Ok(false)
                }
                Err(ReasonerError::SearchBudgetExceeded) => Err(Failure::Budget(
                    ReasonerError::SearchBudgetExceeded.to_string(),
                )),
                Err(e) => Err(input(&theory, e)),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
