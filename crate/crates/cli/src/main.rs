//! `semilin`: command-line access to the model, the solver and the
//! classifiers.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semilin_core::behavior::{
    behavior_consistent, contradiction_patterns, one_constant_checks, rewrite, Behavior,
};
use semilin_core::classifier::{chain_classify, classify, model_complete_core_hint, ClassifyConfig};
use semilin_core::convex::{convex_extensions, ConvexExtension};
use semilin_core::csp::{brute_force_oracle, solve, Instance};
use semilin_core::engine::embed_structure;
use semilin_core::enumerate::{age_classes, enumerate_age_structures};
use semilin_core::transform::{five_point_flip, flatten, project_to_chain, reroot, RerootSpec};
use semilin_core::{axioms, Error, FiniteStructure, Formula, Node, RelationName};

/// Exact computations in the generic binary branching semilinear order.
///
/// Nodes are written as JSON, `{"turns":["1/2"],"depth":"1"}`, or in the
/// short form `<{1/2},1>`. Turn positions have even denominators, depths odd
/// ones.
#[derive(Parser)]
#[command(name = "semilin", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a relation (eq, neq, leq, lt, gt, geq, perp, B, C, R, D) on nodes
    Eval { relation: String, nodes: Vec<String> },
    /// Solve a constraint file: one atom per line, e.g. `x < y`, `x || y`,
    /// `C(z, x y)`, `B(x,y,z)`, `D(x,y,u,v)`; `#` starts a comment.
    /// Exit 0 if satisfiable, 1 if not
    Solve { file: String },
    /// Decide a constraint file (at most 5 variables) by brute force over the enumerated age
    Oracle { file: String },
    /// Realize a finite structure given as {"n":..,"leq":[[..]],"C":[[z,x,y],..]}
    Embed { file: String },
    /// List the convex linear extensions of a finite structure
    Extensions { file: String },
    /// Count the realizable structures on N points (one labeling per order type)
    Enumerate {
        n: usize,
        /// Print every structure as JSON
        #[arg(long)]
        list: bool,
        /// Count isomorphism classes instead
        #[arg(long)]
        classes: bool,
    },
    /// Reroot a JSON list of nodes at the points above the pivot
    Reroot {
        file: String,
        #[arg(long)]
        pivot: String,
    },
    /// Map a JSON list of nodes onto an antichain turning R into C
    Flatten { file: String },
    /// Map a JSON list of nodes onto one chain, keeping comparabilities
    Project { file: String },
    /// Find a flippable pair among five incomparable nodes
    Flip { file: String },
    /// Classify the relation defined by a quantifier-free formula, e.g.
    /// "x < y | x || y"; connectives &, |, ! and parentheses
    Classify {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = semilin_core::classifier::DEFAULT_SAMPLE_SIZE)]
        samples: usize,
        #[arg(long, default_value_t = semilin_core::classifier::DEFAULT_STRUCTURE_BOUND)]
        bound: usize,
    },
    /// Classify a formula over < and = on the rationals
    ChainClassify {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Guess the model-complete core of the structure defined by the formulas (heuristic)
    CoreHint {
        #[arg(long = "formula", required = true)]
        formulas: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Table of behaviors on pair types and whether they survive on small configurations
    Behaviors {
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// Run the randomized axiom checks
    Axioms {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &str) -> Result<String, Error> {
    let mut s = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Parse(format!("stdin: {e}")))?;
    } else {
        s = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    }
    Ok(s)
}

fn read_nodes(path: &str) -> Result<Vec<Node>, Error> {
    Ok(serde_json::from_str(&read(path)?)?)
}

fn describe(ext: &ConvexExtension) -> String {
    let s = &ext.base;
    let n = s.len();
    let mut facts = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            facts.push(if s.lt(x, y) {
                format!("{x}<{y}")
            } else if s.lt(y, x) {
                format!("{y}<{x}")
            } else {
                format!("{x}||{y}")
            });
        }
    }
    for [z, x, y] in s.c_triples() {
        if x < y {
            facts.push(format!("C({z},{x}{y})"));
        }
    }
    let order: Vec<String> = ext.order.iter().map(|i| i.to_string()).collect();
    format!("{}; order {}", facts.join(" "), order.join(" "))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let ok = ExitCode::SUCCESS;
    match cli.command {
        Command::Eval { relation, nodes } => {
            let rel: RelationName = relation.parse()?;
            let nodes: Vec<Node> = nodes.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            if nodes.len() != rel.arity() {
                return Err(Error::Dimension(format!("{rel} takes {} nodes, got {}", rel.arity(), nodes.len())));
            }
            let refs: Vec<&Node> = nodes.iter().collect();
            println!("{}", rel.eval(&refs));
        }
        Command::Solve { file } => {
            let inst = Instance::parse(&read(&file)?)?;
            return Ok(match solve(&inst)? {
                Some(a) => {
                    println!("SAT\n{}", serde_json::to_string_pretty(&a)?);
                    ok
                }
                None => {
                    println!("UNSAT");
                    ExitCode::from(1)
                }
            });
        }
        Command::Oracle { file } => {
            let inst = Instance::parse(&read(&file)?)?;
            let sat = brute_force_oracle(&inst)?;
            println!("{}", if sat { "SAT" } else { "UNSAT" });
            return Ok(if sat { ok } else { ExitCode::from(1) });
        }
        Command::Embed { file } => {
            let s = FiniteStructure::from_json(&read(&file)?)?;
            println!("{}", serde_json::to_string_pretty(&embed_structure(&s)?)?);
        }
        Command::Extensions { file } => {
            let s = FiniteStructure::from_json(&read(&file)?)?;
            let ext = convex_extensions(&s)?;
            println!("{}", ext.len());
            for e in ext {
                println!("{}", e.order.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" "));
            }
        }
        Command::Enumerate { n, list, classes } => {
            let all = if classes { age_classes(n)? } else { enumerate_age_structures(n)? };
            println!("{}", all.len());
            if list {
                for s in all {
                    println!("{}", serde_json::to_string(&s)?);
                }
            }
        }
        Command::Reroot { file, pivot } => {
            let m = reroot(&read_nodes(&file)?, &RerootSpec::Pivot(pivot.parse()?))?;
            println!("{}", m.to_json());
        }
        Command::Flatten { file } => println!("{}", flatten(&read_nodes(&file)?)?.to_json()),
        Command::Project { file } => println!("{}", project_to_chain(&read_nodes(&file)?)?.to_json()),
        Command::Flip { file } => {
            let pts = read_nodes(&file)?;
            let (i, j, _) = five_point_flip(&pts)?;
            println!("flip {} {}\n{}\n{}", i, j, pts[i], pts[j]);
        }
        Command::Classify { formula, seed, samples, bound } => {
            let phi = Formula::parse(&formula)?;
            let cfg = ClassifyConfig { sample_size: samples, structure_bound: bound, seed };
            println!("{}", classify(&phi, &cfg)?);
        }
        Command::ChainClassify { formula, seed, samples } => {
            let (class, evidence) = chain_classify(&Formula::parse(&formula)?, samples, seed)?;
            println!("{class}");
            for (map, kept) in evidence {
                println!("  {:<12} {}", format!("{map:?}"), if kept { "preserved" } else { "violated" });
            }
        }
        Command::CoreHint { formulas, seed } => {
            let phis: Vec<Formula> = formulas.iter().map(|f| Formula::parse(f)).collect::<Result<_, _>>()?;
            let hint = model_complete_core_hint(&phis, seed)?;
            println!("{} (heuristic)", hint.label);
            for n in hint.notes {
                println!("  {n}");
            }
        }
        Command::Behaviors { k } => {
            for b in Behavior::all() {
                match behavior_consistent(&b, k)? {
                    None => println!("survives  {:<17} {b}", b.class().to_string()),
                    Some(cert) => println!("refuted   {:<17} {b}  certificate: {}", b.class().to_string(), describe(&cert)),
                }
            }
            println!();
            for p in contradiction_patterns() {
                let verdict = if rewrite(&p.behavior, &p.configuration).is_none() { "rejected" } else { "NOT REJECTED" };
                println!("{verdict:<9} {}: {}  on {}", p.name, p.behavior, describe(&p.configuration));
            }
            println!();
            for c in one_constant_checks()? {
                println!("{c}");
            }
        }
        Command::Axioms { samples, seed } => {
            let report = axioms::run_suite(samples, seed);
            println!("{report}");
            if report.violations() > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
