use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use symbreak::cnf::{parse_dimacs, write_dimacs, write_dimacs_fragment};
use symbreak::dpll::{compare_runs, solve};
use symbreak::sbp::{conjoin, lex_leader_sbp, pairwise_sbp, SbpClauses, SbpError};
use symbreak::{detect_symmetries, CnfFormula, ColoredGraph, GeneratorSet};

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_INPUT: u8 = 1;
const EXIT_INAPPLICABLE: u8 = 2;

/// Symmetry breaking for DIMACS CNF formulas.
#[derive(Parser)]
#[command(name = "symbreak", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the colored clause/literal graph
    Encode(EncodeArgs),
    /// Print symmetry generators, one per line
    Syms(SymsArgs),
    /// Print the formula conjoined with a symmetry-breaking predicate
    Sbp(SbpArgs),
    /// Solve the formula
    Solve(SolveArgs),
    /// Compare solver runs with and without the predicate
    Compare(CompareArgs),
}

#[derive(Args)]
struct Input {
    /// DIMACS file, or `-` for standard input
    input: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Lex-leader predicate built from every generator
    Lex,
    /// One clause per variable swap; generators with longer cycles are rejected
    Pairwise,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Dimacs,
}

#[derive(Args)]
struct EncodeArgs {
    /// `dot` or `text` (adjacency lists)
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,
    #[command(flatten)]
    input: Input,
}

#[derive(Args)]
struct SymsArgs {
    /// `text` for cycle notation, `dimacs` for `p` lines of signed images
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    input: Input,
}

#[derive(Args)]
struct SbpArgs {
    #[arg(long, value_enum, default_value = "lex")]
    method: Method,
    /// Print only the predicate clauses, without a header
    #[arg(long)]
    fragment: bool,
    #[command(flatten)]
    input: Input,
}

#[derive(Args)]
struct SolveArgs {
    /// Detect symmetries and add a predicate before solving
    #[arg(long)]
    auto_sbp: bool,
    #[arg(long, value_enum, default_value = "lex")]
    method: Method,
    #[command(flatten)]
    input: Input,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, value_enum, default_value = "lex")]
    method: Method,
    #[command(flatten)]
    input: Input,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            eprintln!("symbreak: {e:#}");
            let inapplicable = matches!(
                e.downcast_ref::<SbpError>(),
                Some(SbpError::UnsupportedCycle { .. })
            );
            ExitCode::from(if inapplicable { EXIT_INAPPLICABLE } else { EXIT_INPUT })
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<u8> {
    match command {
        Command::Encode(args) => {
            let graph = ColoredGraph::encode(&read_formula(&args.input)?);
            match args.format {
                Format::Dot => write!(out, "{}", graph.to_dot())?,
                Format::Text => write!(out, "{}", graph.to_adjacency_text())?,
                Format::Dimacs => bail!("encode supports --format dot or text"),
            }
        }
        Command::Syms(args) => {
            let gens = detect_symmetries(&read_formula(&args.input)?)?;
            for g in gens.generators() {
                match args.format {
                    Format::Text => writeln!(out, "{}", g.cycle_notation())?,
                    Format::Dimacs => writeln!(out, "{}", g.to_p_line())?,
                    Format::Dot => bail!("syms supports --format text or dimacs"),
                }
            }
        }
        Command::Sbp(args) => {
            let f = read_formula(&args.input)?;
            let (_, sbp) = build_sbp(&f, args.method)?;
            if args.fragment {
                write!(out, "{}", write_dimacs_fragment(&sbp.clauses))?;
            } else {
                write!(out, "{}", write_dimacs(&conjoin(&f, &sbp)?))?;
            }
        }
        Command::Solve(args) => return cmd_solve(&args, out),
        Command::Compare(args) => {
            let f = read_formula(&args.input)?;
            let (_, sbp) = build_sbp(&f, args.method)?;
            write!(out, "{}", compare_runs(&f, &sbp)?)?;
        }
    }
    Ok(0)
}

fn cmd_solve(args: &SolveArgs, out: &mut impl Write) -> Result<u8> {
    let f = read_formula(&args.input)?;
    let n = f.num_vars();
    writeln!(out, "c variables: {n}")?;
    writeln!(out, "c clauses: {}", f.num_clauses())?;
    let target = if args.auto_sbp {
        let (gens, sbp) = build_sbp(&f, args.method)?;
        writeln!(out, "c symmetry generators: {}", gens.len())?;
        writeln!(out, "c sbp clauses added: {} ({})", sbp.len(), sbp.method)?;
        writeln!(out, "c auxiliary variables: {}", sbp.num_aux_vars)?;
        conjoin(&f, &sbp)?
    } else {
        f
    };
    let result = solve(&target);
    writeln!(out, "s {}", result.status)?;
    if let Some(model) = &result.model {
        let lits: Vec<String> = model
            .truncated(n)
            .to_dimacs()
            .into_iter()
            .map(|l| l.to_string())
            .chain(["0".to_string()])
            .collect();
        writeln!(out, "v {}", lits.join(" "))?;
    }
    let stats = result.stats;
    writeln!(out, "c decisions: {}", stats.decisions)?;
    writeln!(out, "c propagations: {}", stats.propagations)?;
    writeln!(out, "c conflicts: {}", stats.conflicts)?;
    writeln!(out, "c leaves: {}", stats.leaves_visited)?;
    Ok(if result.status.is_sat() { EXIT_SAT } else { EXIT_UNSAT })
}

fn build_sbp(f: &CnfFormula, method: Method) -> Result<(GeneratorSet, SbpClauses)> {
    let gens = detect_symmetries(f)?;
    let sbp = match method {
        Method::Lex => lex_leader_sbp(&gens, f.num_vars())?,
        Method::Pairwise => pairwise_sbp(&gens)?,
    };
    Ok((gens, sbp))
}

fn read_formula(input: &Input) -> Result<CnfFormula> {
    let text = if input.input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(&input.input)
            .with_context(|| format!("reading {}", input.input.display()))?
    };
    parse_dimacs(&text).with_context(|| format!("parsing {}", input.input.display()))
}
