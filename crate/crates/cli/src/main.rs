use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tvcsp::clone::{build_hat, eval_expression, feas, opt, scale, shift};
use tvcsp::config::Caps;
use tvcsp::cost::{parse_rational, Cost};
use tvcsp::error::Error;
use tvcsp::gen::{gen_feedback_arc_set, parse_edges};
use tvcsp::io::{parse_expression, parse_instance, parse_structure, serialize_instance, serialize_structure};
use tvcsp::ops::{improves, preserves, CanonicalOp};
use tvcsp::relation::ValuedStructure;
use tvcsp::solve::{solve_dispatch, solve_oracle, Instance};

/// Exit codes: 0 answered, 1 rejected or unsatisfiable, 2 input error,
/// 3 capacity exceeded.
#[derive(Parser)]
#[command(name = "tvcsp", version, about = "Temporal valued constraint satisfaction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the VCSP of a structure is in P or NP-complete.
    Classify {
        structure: PathBuf,
        /// Use the equality classification (needs equality-invariant relations).
        #[arg(long)]
        equality: bool,
    },
    /// Compute the optimal cost of an instance.
    Solve {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        instance: PathBuf,
        /// Overrides the threshold of the instance file.
        #[arg(long)]
        threshold: Option<String>,
        #[arg(long, value_enum, default_value_t = Backend::Dispatch)]
        backend: Backend,
    },
    /// Test whether an operation preserves or improves relations.
    Check {
        #[arg(long)]
        op: String,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        relation: Option<String>,
    },
    /// Evaluate an expression into a table.
    Expr {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        expr: PathBuf,
        #[arg(long)]
        opt: bool,
        #[arg(long)]
        feas: bool,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long)]
        scale: Option<String>,
    },
    /// Print the crisp structure of feasibility and optimality relations of
    /// all minors.
    Hat {
        #[arg(long)]
        structure: PathBuf,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Subcommand)]
enum Gen {
    /// Minimum feedback arc set of a directed multigraph.
    Fas {
        /// Edges as `a-b,b-c,c-a`.
        #[arg(long)]
        edges: String,
        /// Write `fas.structure.toml` and `fas.instance.toml` here instead of
        /// printing them.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Dispatch,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Preserve,
    Improve,
}

/// An error tagged with the file it came from.
struct Failure {
    file: Option<PathBuf>,
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Failure { file: None, error }
    }
}

fn in_file(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |error| Failure {
        file: Some(path.to_path_buf()),
        error,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        file: Some(path.to_path_buf()),
        error: Error::Parse {
            line: 0,
            column: 0,
            message: format!("cannot read file: {e}"),
        },
    })
}

fn load_structure(path: &Path) -> Result<ValuedStructure, Failure> {
    Ok(parse_structure(&read(path)?).map_err(in_file(path))?.structure)
}

fn cost_arg(s: &str) -> Result<Cost, Failure> {
    s.parse().map_err(|_| Error::InvalidCost(s.to_string()).into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::from_env();
    match run(cli.command, &caps) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { file, error }) => {
            match (&file, &error) {
                (Some(f), Error::Parse { line, column, message }) if *line > 0 => {
                    eprintln!("error: {}:{line}:{column}: {message}", f.display())
                }
                (Some(f), Error::Parse { message, .. }) => eprintln!("error: {}: {message}", f.display()),
                (Some(f), e) => eprintln!("error: {}: {e}", f.display()),
                (None, e) => eprintln!("error: {e}"),
            }
            ExitCode::from(if error.is_capacity() { 3 } else { 2 })
        }
    }
}

fn run(command: Command, caps: &Caps) -> Result<u8, Failure> {
    match command {
        Command::Classify { structure, equality } => {
            let s = load_structure(&structure)?;
            let v = if equality {
                tvcsp::classify::classify_equality(&s, caps)?
            } else {
                tvcsp::classify::classify_temporal(&s, caps)?
            };
            println!("complexity: {}", v.complexity);
            println!("case: {}", v.case_tag);
            println!("witness: {}", v.witness_op.map_or("none", |op| op.name()));
            println!("note: {}", v.note);
            Ok(0)
        }
        Command::Solve {
            structure,
            instance,
            threshold,
            backend,
        } => {
            let s = load_structure(&structure)?;
            let mut inst = parse_instance(&read(&instance)?, &s).map_err(in_file(&instance))?;
            if let Some(t) = threshold {
                inst = inst.with_threshold(Some(cost_arg(&t)?))?;
            }
            let out = match backend {
                Backend::Dispatch => solve_dispatch(&s, &inst, caps)?,
                Backend::Oracle => solve_oracle(&s, &inst, caps)?,
            };
            println!("optimal cost: {}", out.optimal_cost);
            match &out.argmin {
                Some(w) => println!("argmin: {} {}", w, assignment(&inst, w.ranks())),
                None => println!("argmin: none"),
            }
            println!("method: {}", out.method);
            if let Some(d) = out.decision {
                println!("decision: {}", if d { "accept" } else { "reject" });
            }
            if let Some(w) = &out.warning {
                println!("warning: {w}");
            }
            let rejected = out.decision == Some(false) || out.optimal_cost.is_infinite();
            Ok(u8::from(rejected))
        }
        Command::Check {
            op,
            mode,
            structure,
            relation,
        } => {
            let op: CanonicalOp = op.parse()?;
            let s = load_structure(&structure)?;
            let rels: Vec<_> = match &relation {
                Some(name) => vec![s.get(name).ok_or_else(|| Error::UnknownRelation(name.clone()))?],
                None => s.relations().collect(),
            };
            let mut all = true;
            for r in rels {
                let check = match mode {
                    Mode::Preserve => preserves(op, r, caps)?,
                    Mode::Improve => improves(op, r, caps)?,
                };
                match check.counterexample {
                    None => println!("{}: true", r.name()),
                    Some(cx) => {
                        all = false;
                        println!("{}: false  {cx}", r.name());
                    }
                }
            }
            Ok(u8::from(!all))
        }
        Command::Expr {
            structure,
            expr,
            opt: take_opt,
            feas: take_feas,
            shift: shift_by,
            scale: scale_by,
        } => {
            let s = load_structure(&structure)?;
            let e = parse_expression(&read(&expr)?).map_err(in_file(&expr))?;
            let mut r = eval_expression(&s, &e, caps)?.renamed("expr");
            if let Some(f) = scale_by {
                r = scale(&r, &parse_rational(&f)?)?;
            }
            if let Some(d) = shift_by {
                r = shift(&r, &parse_rational(&d)?);
            }
            if take_feas {
                r = feas(&r);
            }
            if take_opt {
                r = opt(&r);
            }
            let out = ValuedStructure::new([r.renamed("expr")])?;
            print!("{}", serialize_structure("expr", &out));
            Ok(0)
        }
        Command::Hat { structure } => {
            let s = load_structure(&structure)?;
            let hat = build_hat(&s).into_structure()?;
            print!("{}", serialize_structure("hat", &hat));
            Ok(0)
        }
        Command::Gen(Gen::Fas { edges, out_dir }) => {
            let (s, inst) = gen_feedback_arc_set(&parse_edges(&edges)?)?;
            let structure = serialize_structure("feedback arc set", &s);
            let instance = serialize_instance(&inst);
            match out_dir {
                Some(dir) => {
                    let write = |name: &str, text: &str| {
                        let path = dir.join(name);
                        fs::write(&path, text).map_err(|e| Failure {
                            file: Some(path.clone()),
                            error: Error::Parse {
                                line: 0,
                                column: 0,
                                message: format!("cannot write file: {e}"),
                            },
                        })
                    };
                    write("fas.structure.toml", &structure)?;
                    write("fas.instance.toml", &instance)?;
                }
                None => {
                    println!("# fas.structure.toml\n{structure}");
                    print!("# fas.instance.toml\n{instance}");
                }
            }
            Ok(0)
        }
    }
}

fn assignment(inst: &Instance, ranks: &[u8]) -> String {
    inst.variables()
        .iter()
        .zip(ranks)
        .map(|(v, r)| format!("{v}={r}"))
        .collect::<Vec<_>>()
        .join(" ")
}
