//! `sdaut`: command-line front end for the sd-automata library.
//!
//! Exit codes: 0 for yes/success, 1 for no (a witness is printed), 2 for
//! errors. An exhausted state budget prints `budget-exceeded LIMIT` on stdout.

mod experiment;

use std::error::Error as StdError;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sd_automata::buchi::{encode_infty, encode_infty_dollar, encode_infty_statebased, extract_nfw_infty};
use sd_automata::cobuchi::{bad_infix_optimize, encode_bowtie, encode_bowtie_statebased, extract_nfw_bowtie, has_bad_infix};
use sd_automata::families::{Family, FamilySpec};
use sd_automata::finite::nfw_equivalent;
use sd_automata::format::{AutFile, Body, Kind};
use sd_automata::random::{random_lasso, random_nfw, random_omega};
use sd_automata::semantics::{complement, contains, is_empty, is_sd, is_universal, lasso_membership, SdOrigin};
use sd_automata::structure::{is_weak, normalize, to_state_based, to_transition_based, Touch};
use sd_automata::weak::{
    complement_sd_nww, determinize_sd_nww, determinize_sd_nww_checked, generate_sd_nww, minimize_dww, SdNwwParams,
};
use sd_automata::{Alphabet, Budget, Error, Lasso, Nfw, OmegaAutomaton};

#[derive(Parser)]
#[command(name = "sdaut", version, about = "Semantically deterministic ω-automata toolkit")]
struct Cli {
    /// Maximum number of states an exponential construction may build.
    #[arg(long, global = true, default_value_t = Budget::default().0)]
    budget: usize,
    /// Length bound for bounded searches (bad infixes).
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of one automaton.
    Check {
        #[arg(value_enum)]
        property: Property,
        file: String,
    },
    /// Whether L(A) ⊆ L(B); prints a lasso in L(A) \ L(B) otherwise.
    Contains { a: String, b: String },
    /// Whether L(A) = L(B).
    Equiv { a: String, b: String },
    /// Whether the automaton accepts PREFIX·PERIOD^ω (or WORD, for an nfw).
    Member {
        file: String,
        #[arg(long, default_value = "")]
        prefix: String,
        #[arg(long)]
        period: Option<String>,
        #[arg(long)]
        word: Option<String>,
    },
    /// Encode the language of an NFW as an ω-automaton.
    Encode {
        #[arg(value_enum)]
        how: Encoding,
        file: String,
    },
    /// Recover an NFW from an ω-automaton built for one of the encodings.
    Extract {
        #[command(subcommand)]
        from: Extract,
    },
    /// Determinize an SD-NWW by merging δ-close states.
    DetWeak {
        file: String,
        /// Verify semantic determinism first (exponential).
        #[arg(long)]
        checked: bool,
    },
    /// Complement an ω-automaton.
    Complement {
        file: String,
        /// The input is an SD-NWW: complement through its determinization.
        #[arg(long)]
        sd_weak: bool,
    },
    /// Minimize a deterministic weak automaton.
    MinimizeDww { file: String },
    /// Move acceptance between states and transitions.
    Convert {
        #[arg(long, value_enum)]
        to: Placement,
        file: String,
    },
    /// Make a tNCW normal: no ᾱ-transition between distinct ᾱ-components.
    Normalize { file: String },
    /// Print a member of a parameterized family.
    Family {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
    /// Run an experiment and print a TSV table.
    Experiment {
        #[command(subcommand)]
        which: ExperimentKind,
    },
    /// Print a seeded random automaton or lasso.
    Generate {
        #[arg(value_enum)]
        what: Generated,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        /// Acceptance of `omega` output.
        #[arg(long, default_value = "tnbw", value_parser = parse_kind)]
        kind: Kind,
        /// Probability of a second successor per state and letter.
        #[arg(long, default_value_t = 0.3)]
        branching: f64,
        /// Duplicated states in `sd-nww` output.
        #[arg(long, default_value_t = 2)]
        duplicates: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Sd,
    Empty,
    Universal,
    Weak,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Infty,
    InftyDollar,
    InftyState,
    Bowtie,
    BowtieState,
}

#[derive(Subcommand)]
enum Extract {
    /// From an SD-tNBW for ∞($·R·$), given an NFW for R.
    Buchi {
        file: String,
        #[arg(long)]
        lang: String,
    },
    /// From an SD-tNCW for the $-separated language of R.
    Cobuchi {
        file: String,
        /// Reuse a trap state for a bad infix instead of a fresh sink.
        #[arg(long)]
        optimize_bad_infix: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Placement {
    State,
    Transition,
}

#[derive(Subcommand)]
enum ExperimentKind {
    /// Sizes of the SD encodings against the deterministic family automata.
    Succinctness {
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = experiment::Condition::Buchi)]
        condition: experiment::Condition,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Generated {
    Nfw,
    Omega,
    SdNww,
    Lasso,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s.parse::<Kind>() {
        Ok(Kind::Nfw) => Err("expected an ω-automaton kind".into()),
        Ok(k) => Ok(k),
        Err(e) => Err(e.to_string()),
    }
}

type BoxError = Box<dyn StdError + Send + Sync>;

/// Yes/no answer of a command, mapped to exit codes 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Answer {
    Yes,
    No,
}

struct Ctx {
    budget: Budget,
    bound: Option<usize>,
    out: String,
}

impl Ctx {
    fn say(&mut self, line: impl AsRef<str>) {
        self.out.push_str(line.as_ref());
        self.out.push('\n');
    }

    fn emit(&mut self, f: &AutFile) {
        self.out.push_str(&f.render());
    }

    fn lasso(&mut self, w: &Lasso, sigma: &Alphabet) {
        self.say(w.render(sigma));
    }
}

fn read_input(path: &str) -> Result<String, BoxError> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    }
    Ok(text)
}

fn load(path: &str) -> Result<AutFile, BoxError> {
    let text = read_input(path)?;
    AutFile::parse(&text).map_err(|e| format!("{path}: {e}").into())
}

fn load_omega(path: &str) -> Result<(String, OmegaAutomaton), BoxError> {
    let f = load(path)?;
    let a = f.omega_automaton()?.clone();
    Ok((f.name, a))
}

fn load_nfw(path: &str) -> Result<(String, Nfw), BoxError> {
    let f = load(path)?;
    let n = f.nfw()?.clone();
    Ok((f.name, n))
}

/// Either the output of an automaton-producing command, or a weak kind
/// when the result is known to be weak.
fn omega_file(name: String, a: OmegaAutomaton) -> AutFile {
    if is_weak(&a) {
        AutFile::new(name.clone(), Kind::weak(a.kind()), Body::Omega(a)).expect("weak automaton")
    } else {
        AutFile::omega(name, a)
    }
}

fn run(cli: Cli, ctx: &mut Ctx) -> Result<Answer, BoxError> {
    match cli.command {
        Command::Check { property, file } => check(ctx, property, &file),
        Command::Contains { a, b } => {
            let (_, a) = load_omega(&a)?;
            let (_, b) = load_omega(&b)?;
            Ok(match contains(&a, &b, ctx.budget)? {
                None => {
                    ctx.say("contained");
                    Answer::Yes
                }
                Some(w) => {
                    ctx.say("not-contained");
                    ctx.lasso(&w, a.alphabet());
                    Answer::No
                }
            })
        }
        Command::Equiv { a, b } => equiv(ctx, &a, &b),
        Command::Member { file, prefix, period, word } => member(ctx, &file, &prefix, period, word),
        Command::Encode { how, file } => {
            let (name, n) = load_nfw(&file)?;
            let (suffix, a) = match how {
                Encoding::Infty => ("infty", encode_infty(&n)),
                Encoding::InftyDollar => ("infty-dollar", encode_infty_dollar(&n)?),
                Encoding::InftyState => ("infty-state", encode_infty_statebased(&n)?),
                Encoding::Bowtie => ("bowtie", encode_bowtie(&n)?),
                Encoding::BowtieState => ("bowtie-state", encode_bowtie_statebased(&n)?),
            };
            ctx.emit(&AutFile::omega(format!("{name}-{suffix}"), a));
            Ok(Answer::Yes)
        }
        Command::Extract { from } => extract(ctx, from),
        Command::DetWeak { file, checked } => {
            let (name, a) = load_omega(&file)?;
            let a = if a.kind().is_state_based() { a } else { to_state_based(&a)? };
            let d = if checked { determinize_sd_nww_checked(&a, ctx.budget)? } else { determinize_sd_nww(&a)? };
            let origin: Vec<String> = d.origin.iter().map(ToString::to_string).collect();
            ctx.say(format!("# origin {}", origin.join(" ")));
            ctx.emit(&omega_file(format!("{name}-det"), d.automaton));
            Ok(Answer::Yes)
        }
        Command::Complement { file, sd_weak } => {
            let (name, a) = load_omega(&file)?;
            let c = if sd_weak {
                let a = if a.kind().is_state_based() { a } else { to_state_based(&a)? };
                complement_sd_nww(&a)?
            } else {
                complement(&a, ctx.budget)?
            };
            ctx.emit(&omega_file(format!("{name}-complement"), c));
            Ok(Answer::Yes)
        }
        Command::MinimizeDww { file } => {
            let (name, a) = load_omega(&file)?;
            ctx.emit(&omega_file(format!("{name}-min"), minimize_dww(&a)?));
            Ok(Answer::Yes)
        }
        Command::Convert { to, file } => {
            let (name, a) = load_omega(&file)?;
            let b = match (to, a.kind().is_state_based()) {
                (Placement::State, false) => to_state_based(&a)?,
                (Placement::Transition, true) => to_transition_based(&a, Touch::default())?,
                _ => a,
            };
            ctx.emit(&AutFile::omega(name, b));
            Ok(Answer::Yes)
        }
        Command::Normalize { file } => {
            let (name, a) = load_omega(&file)?;
            ctx.emit(&AutFile::omega(name, normalize(&a)?));
            Ok(Answer::Yes)
        }
        Command::Family { family, n } => {
            let body = FamilySpec { family, n }.build(ctx.budget)?;
            let name = format!("{family}-{n}");
            let kind = match &body {
                Body::Finite(_) => Kind::Nfw,
                Body::Omega(a) => Kind::of(a.kind()),
            };
            ctx.emit(&AutFile::new(name, kind, body)?);
            Ok(Answer::Yes)
        }
        Command::Experiment { which: ExperimentKind::Succinctness { max_n, condition } } => {
            ctx.out.push_str(&experiment::succinctness(max_n, condition, ctx.budget));
            Ok(Answer::Yes)
        }
        Command::Generate { what, seed, states, letters, kind, branching, duplicates } => {
            if !(0.0..=1.0).contains(&branching) {
                return Err("--branching must lie in [0, 1]".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let name = format!("random-{seed}");
            match what {
                Generated::Nfw => ctx.emit(&AutFile::finite(name, random_nfw(&mut rng, states, letters, branching))),
                Generated::Omega => {
                    let acc = kind.acceptance().expect("ω-kind");
                    let a = random_omega(&mut rng, acc, states, letters, branching);
                    ctx.emit(&AutFile::omega(name, a));
                }
                Generated::SdNww => {
                    let a = generate_sd_nww(SdNwwParams { states, letters, duplicates, seed });
                    ctx.emit(&AutFile::new(name, Kind::Nww, Body::Omega(a))?);
                }
                Generated::Lasso => {
                    let w = random_lasso(&mut rng, letters, states, states);
                    ctx.lasso(&w, &Alphabet::numbered(letters.max(1)));
                }
            }
            Ok(Answer::Yes)
        }
    }
}

fn check(ctx: &mut Ctx, property: Property, file: &str) -> Result<Answer, BoxError> {
    let f = load(file)?;
    if let Body::Finite(n) = &f.body {
        // Emptiness and universality of an NFW: compare with the trivial
        // automata, reading the distinguishing word as the witness.
        let accept_all = match property {
            Property::Empty => false,
            Property::Universal => true,
            _ => return Err("this check needs an ω-automaton".into()),
        };
        let trivial = Nfw::trivial(n.alphabet().clone(), accept_all);
        return Ok(match nfw_equivalent(n, &trivial)? {
            None => {
                ctx.say(if accept_all { "universal" } else { "empty" });
                Answer::Yes
            }
            Some(w) => {
                ctx.say(if accept_all { "not-universal" } else { "nonempty" });
                ctx.say(format!("word {}", n.alphabet().render(&w)).trim_end());
                Answer::No
            }
        });
    }
    let a = f.omega_automaton()?;
    let sigma = a.alphabet();
    Ok(match property {
        Property::Weak => {
            let weak = is_weak(a);
            ctx.say(if weak { "weak" } else { "not-weak" });
            if weak {
                Answer::Yes
            } else {
                Answer::No
            }
        }
        Property::Empty => match is_empty(a) {
            None => {
                ctx.say("empty");
                Answer::Yes
            }
            Some(w) => {
                ctx.say("nonempty");
                ctx.lasso(&w, sigma);
                Answer::No
            }
        },
        Property::Universal => match is_universal(a, ctx.budget)? {
            None => {
                ctx.say("universal");
                Answer::Yes
            }
            Some(w) => {
                ctx.say("not-universal");
                ctx.lasso(&w, sigma);
                Answer::No
            }
        },
        Property::Sd => match is_sd(a, ctx.budget)? {
            None => {
                ctx.say("sd");
                Answer::Yes
            }
            Some(c) => {
                ctx.say("not-sd");
                match c.origin {
                    SdOrigin::Initial => ctx.say("origin initial"),
                    SdOrigin::Transition { state, letter } => {
                        ctx.say(format!("origin state {state} letter {}", sigma.name(letter)))
                    }
                }
                ctx.say(format!("choices {} {}", c.succ_a, c.succ_b));
                ctx.lasso(&c.witness, sigma);
                Answer::No
            }
        },
    })
}

fn equiv(ctx: &mut Ctx, a: &str, b: &str) -> Result<Answer, BoxError> {
    let (fa, fb) = (load(a)?, load(b)?);
    match (&fa.body, &fb.body) {
        (Body::Finite(x), Body::Finite(y)) => {
            let y = y.reorder(x.alphabet())?;
            Ok(match nfw_equivalent(x, &y)? {
                None => {
                    ctx.say("equivalent");
                    Answer::Yes
                }
                Some(w) => {
                    ctx.say("not-equivalent");
                    ctx.say(format!("word {}", x.alphabet().render(&w)).trim_end());
                    Answer::No
                }
            })
        }
        (Body::Omega(x), Body::Omega(y)) => {
            if let Some(w) = contains(x, y, ctx.budget)? {
                ctx.say("not-equivalent");
                ctx.say("only-in A");
                ctx.lasso(&w, x.alphabet());
                return Ok(Answer::No);
            }
            if let Some(w) = contains(y, x, ctx.budget)? {
                ctx.say("not-equivalent");
                ctx.say("only-in B");
                ctx.lasso(&w, y.alphabet());
                return Ok(Answer::No);
            }
            ctx.say("equivalent");
            Ok(Answer::Yes)
        }
        _ => Err("cannot compare an nfw with an ω-automaton".into()),
    }
}

fn member(
    ctx: &mut Ctx,
    file: &str,
    prefix: &str,
    period: Option<String>,
    word: Option<String>,
) -> Result<Answer, BoxError> {
    let f = load(file)?;
    let sigma = f.alphabet();
    let accepted = match (&f.body, period, word) {
        (Body::Finite(n), None, Some(w)) => n.accepts(&sigma.parse_word(&w)?),
        (Body::Omega(a), Some(v), None) => {
            let w = Lasso::new(sigma.parse_word(prefix)?, sigma.parse_word(&v)?)?;
            lasso_membership(a, &w)?
        }
        (Body::Finite(_), _, _) => return Err("an nfw takes --word".into()),
        (Body::Omega(_), _, _) => return Err("an ω-automaton takes --prefix and --period".into()),
    };
    ctx.say(if accepted { "accept" } else { "reject" });
    Ok(if accepted { Answer::Yes } else { Answer::No })
}

fn extract(ctx: &mut Ctx, from: Extract) -> Result<Answer, BoxError> {
    match from {
        Extract::Buchi { file, lang } => {
            let (name, a) = load_omega(&file)?;
            let (_, r) = load_nfw(&lang)?;
            let n = extract_nfw_infty(&a, &r, ctx.budget)?;
            ctx.emit(&AutFile::finite(format!("{name}-extracted"), n));
        }
        Extract::Cobuchi { file, optimize_bad_infix } => {
            let (name, a) = load_omega(&file)?;
            let mut n = extract_nfw_bowtie(&a)?;
            if optimize_bad_infix {
                match has_bad_infix(&n, ctx.bound) {
                    Some(w) => {
                        ctx.say(format!("# bad infix {}", n.alphabet().render(&w.word)).trim_end());
                        n = bad_infix_optimize(&a, &n, &w)?;
                    }
                    None => ctx.say("# no bad infix within the bound; q_rej kept"),
                }
            }
            ctx.emit(&AutFile::finite(format!("{name}-extracted"), n));
        }
    }
    Ok(Answer::Yes)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut ctx = Ctx { budget: Budget(cli.budget), bound: cli.bound, out: String::new() };
    let result = run(cli, &mut ctx);
    let mut stdout = io::stdout().lock();
    let _ = stdout.write_all(ctx.out.as_bytes());
    match result {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Err(e) => {
            if let Some(Error::BudgetExceeded { limit }) = e.downcast_ref::<Error>() {
                let _ = writeln!(stdout, "budget-exceeded {limit}");
            }
            let _ = stdout.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
