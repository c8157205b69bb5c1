//! Command-line front end. [`run`] parses arguments, writes results to the
//! given sink and returns the process exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::builder::build_rho;
use crate::classifier::{degree, degree_by_search, level_member, ordinal_degree_k2, DEFAULT_SEARCH_CAP};
use crate::error::{Error, Result};
use crate::forest::{
    canonical, enumerate_upto, leq_h, leq_variant, op_oplus, op_p, op_plus, op_s, DegreeInvariant, Forest, Tree,
    Variant,
};
use crate::games::{build_game, dump_strategy, solve, Player};
use crate::muller::{cycles, Acceptor, Automaton, Prio, UpWord};
use crate::ordinal::CnfOrdinal;
use crate::words::{infix_leq, minimal_elements, parse_word_set, subword_leq, upward_closure_automaton, Alphabet};

#[derive(Parser, Debug)]
#[command(name = "fhier", version, about = "Labeled forests, ordinals and Wagner degrees of regular k-partitions")]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when a yes/no query answers no.
    #[arg(long, global = true)]
    exit_code: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordinal arithmetic below epsilon_0.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// Labeled forests.
    #[command(subcommand)]
    Forest(ForestCmd),
    /// Finite words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Muller acceptors.
    #[command(subcommand)]
    Aut(AutCmd),
    /// Degrees, reductions and levels.
    #[command(subcommand)]
    Wagner(WagnerCmd),
}

#[derive(Subcommand, Debug)]
enum OrdCmd {
    /// Compare: prints <, = or >.
    Cmp { a: String, b: String },
    Add { a: String, b: String },
    Mul { a: String, b: String },
    /// a^b.
    Pow { a: String, b: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rel {
    H,
    #[value(name = "0")]
    Zero,
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
}

#[derive(Subcommand, Debug)]
enum ForestCmd {
    /// F ≤ G under the chosen relation.
    Cmp {
        #[arg(long, value_enum, default_value = "h")]
        rel: Rel,
        /// Number of colors for the relabeling relations.
        #[arg(long)]
        k: Option<usize>,
        f: String,
        g: String,
    },
    /// Canonical representative of the class of F.
    Canon { f: String },
    /// plus F G | oplus F G | p<i> F | s T.
    Op {
        op: String,
        #[arg(required = true)]
        args: Vec<String>,
    },
    /// One representative per class, smallest first.
    Enum {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 0)]
        level: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WordRel {
    Subword,
    Infix,
}

#[derive(Subcommand, Debug)]
enum WordCmd {
    Leq {
        #[arg(long, value_enum, default_value = "subword")]
        rel: WordRel,
        /// Alphabet symbols; inferred when absent.
        #[arg(long)]
        alphabet: Option<String>,
        u: String,
        v: String,
    },
    /// Minimal elements of a word-set file.
    Minimal { file: PathBuf },
    /// Minimal DFA of the upward closure of a word-set file.
    Closure {
        file: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum AutCmd {
    /// Realizable cycles with their colors.
    Cycles { file: PathBuf },
    /// Color of the word u·v^ω.
    Eval {
        file: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// A random priority acceptor, reproducible through --seed.
    Random {
        #[arg(long, default_value_t = 3)]
        states: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Via {
    Invariant,
    Game,
    Both,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Find the degree by enumeration and games instead of structure.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
    cap: usize,
}

#[derive(Subcommand, Debug)]
enum WagnerCmd {
    /// Canonical acceptor of an invariant given as text or a file.
    Build {
        t: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// A ≤ B.
    Leq {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value = "game")]
        via: Via,
        /// Write the winning strategy of the reduction game here.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Degree invariant of an acceptor.
    Degree {
        a: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Membership of A in the level of an invariant.
    Level { a: PathBuf, t: String },
    /// Ordinal degree of a 2-acceptor.
    Ord { a: PathBuf },
}

enum Outcome {
    Text(String, Value),
    Bool(bool),
}

fn text(s: impl Into<String>) -> Outcome {
    let s = s.into();
    Outcome::Text(s.clone(), json!({ "result": s }))
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Outcome::Text(s, v)) => {
            let line = if cli.json { v.to_string() } else { s };
            let _ = writeln!(out, "{}", line.trim_end_matches('\n'));
            0
        }
        Ok(Outcome::Bool(b)) => {
            let _ = if cli.json { writeln!(out, "{}", json!({ "result": b })) } else { writeln!(out, "{b}") };
            if !b && cli.exit_code {
                1
            } else {
                0
            }
        }
        Err(e) => {
            let _ = if cli.json {
                writeln!(out, "{}", json!({ "error": e.to_string(), "code": e.exit_code() }))
            } else {
                writeln!(err, "error: {e}")
            };
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn acceptor(path: &Path) -> Result<Acceptor> {
    read(path)?.parse()
}

/// An argument that names an existing file is read; anything else is text.
fn inline_or_file(arg: &str) -> Result<String> {
    let p = Path::new(arg);
    if p.is_file() {
        Ok(read(p)?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn invariant(arg: &str) -> Result<DegreeInvariant> {
    DegreeInvariant::from_any(inline_or_file(arg)?.parse()?)
}

fn write_or_text(o: &Option<PathBuf>, content: String, summary: Value) -> Result<Outcome> {
    match o {
        Some(path) => {
            fs::write(path, &content)?;
            Ok(Outcome::Text(format!("wrote {}", path.display()), summary))
        }
        None => Ok(Outcome::Text(content.clone(), json!({ "result": content }))),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ord(cmd) => ord(cmd),
        Command::Forest(cmd) => forest(cmd),
        Command::Word(cmd) => word(cmd),
        Command::Aut(cmd) => aut(cmd, cli.seed),
        Command::Wagner(cmd) => wagner(cmd),
    }
}

fn ord(cmd: &OrdCmd) -> Result<Outcome> {
    let parse = |s: &str| s.parse::<CnfOrdinal>();
    Ok(match cmd {
        OrdCmd::Cmp { a, b } => {
            let sign = match parse(a)?.cmp(&parse(b)?) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            text(sign)
        }
        OrdCmd::Add { a, b } => text(parse(a)?.add(&parse(b)?).to_string()),
        OrdCmd::Mul { a, b } => text(parse(a)?.mul(&parse(b)?).to_string()),
        OrdCmd::Pow { a, b } => text(parse(a)?.pow(&parse(b)?)?.to_string()),
    })
}

fn forest(cmd: &ForestCmd) -> Result<Outcome> {
    match cmd {
        ForestCmd::Cmp { rel, k, f, g } => {
            let f: Forest = f.parse()?;
            let g: Forest = g.parse()?;
            let k = k.unwrap_or_else(|| f.min_k().max(g.min_k()));
            let variant = match rel {
                Rel::H => return Ok(Outcome::Bool(leq_h(&f, &g)?)),
                Rel::Zero => Variant::V0,
                Rel::One => Variant::V1,
                Rel::Two => Variant::V2,
            };
            Ok(Outcome::Bool(leq_variant(&f, &g, variant, k)?))
        }
        ForestCmd::Canon { f } => Ok(text(canonical(&f.parse()?).to_string())),
        ForestCmd::Op { op, args } => {
            let arity = |n: usize| {
                if args.len() == n {
                    Ok(())
                } else {
                    Err(Error::Parse(format!("{op} takes {n} argument(s)")))
                }
            };
            let result = match op.as_str() {
                "plus" | "oplus" => {
                    arity(2)?;
                    let (f, g): (Forest, Forest) = (args[0].parse()?, args[1].parse()?);
                    if op == "plus" {
                        op_plus(&f, &g)?
                    } else {
                        op_oplus(&f, &g)?
                    }
                }
                "s" => {
                    arity(1)?;
                    let t: Tree = args[0].parse()?;
                    Forest::single(op_s(&t))
                }
                p if p.starts_with('p') => {
                    arity(1)?;
                    let i: u32 = p[1..].parse().map_err(|_| Error::Parse(format!("unknown operation {op}")))?;
                    Forest::single(op_p(i, &args[0].parse()?)?)
                }
                _ => return Err(Error::Parse(format!("unknown operation {op}"))),
            };
            Ok(text(result.to_string()))
        }
        ForestCmd::Enum { k, max, level } => {
            if *level > 1 {
                return Err(Error::Unsupported("enumeration is available for levels 0 and 1".into()));
            }
            let all: Vec<String> = enumerate_upto(*level, *k, *max).map(|f| f.to_string()).collect();
            Ok(Outcome::Text(all.join("\n"), json!({ "result": all })))
        }
    }
}

fn word(cmd: &WordCmd) -> Result<Outcome> {
    match cmd {
        WordCmd::Leq { rel, alphabet, u, v } => {
            let a = match alphabet {
                Some(s) => Alphabet::from_symbols(s)?,
                None => Alphabet::infer(&[u, v])?,
            };
            let (u, v) = (a.parse(u)?, a.parse(v)?);
            Ok(Outcome::Bool(match rel {
                WordRel::Subword => subword_leq(&u, &v)?,
                WordRel::Infix => infix_leq(&u, &v)?,
            }))
        }
        WordCmd::Minimal { file } => {
            let (a, words) = parse_word_set(&read(file)?)?;
            let min: Vec<String> = minimal_elements(&words)?.iter().map(|w| a.render(w)).collect();
            Ok(Outcome::Text(min.join("\n"), json!({ "result": min })))
        }
        WordCmd::Closure { file, o } => {
            let (a, words) = parse_word_set(&read(file)?)?;
            let dfa = upward_closure_automaton(&words, a.len())?;
            write_or_text(o, dfa.render(&a), json!({ "states": dfa.num_states() }))
        }
    }
}

fn aut(cmd: &AutCmd, seed: u64) -> Result<Outcome> {
    match cmd {
        AutCmd::Cycles { file } => {
            let acc = acceptor(file)?;
            let aut = acc.automaton();
            let mut lines = Vec::new();
            let mut items = Vec::new();
            for c in cycles(aut)? {
                let names: Vec<&str> = c.iter().map(|&q| aut.name(q)).collect();
                let color = acc.color_of(&c)?;
                lines.push(format!("{{{}}} {color}", names.join(" ")));
                items.push(json!({ "states": names, "color": color }));
            }
            Ok(Outcome::Text(lines.join("\n"), json!({ "result": items })))
        }
        AutCmd::Eval { file, word } => {
            let acc = acceptor(file)?;
            let w: UpWord = word.parse()?;
            let c = acc.evaluate(&w)?;
            Ok(Outcome::Text(c.to_string(), json!({ "result": c })))
        }
        AutCmd::Random { states, k } => {
            if *states == 0 || *states > 64 {
                return Err(Error::Malformed("states must be between 1 and 64".into()));
            }
            let mut rng = StdRng::seed_from_u64(seed);
            let delta = (0..*states).map(|_| [rng.gen_range(0..*states), rng.gen_range(0..*states)]).collect();
            let aut = Automaton::from_table(delta, 0)?;
            let prios = (0..*states)
                .map(|_| {
                    let p = rng.gen_range(0..2 * k) as u32;
                    Prio { priority: p, color: p % *k as u32 }
                })
                .collect();
            Ok(text(Acceptor::from_priorities(aut, *k, prios)?.to_string()))
        }
    }
}

fn wagner(cmd: &WagnerCmd) -> Result<Outcome> {
    match cmd {
        WagnerCmd::Build { t, k, o } => {
            let t = invariant(t)?;
            let k = k.unwrap_or_else(|| t.forest().min_k());
            let acc = build_rho(&t, k)?;
            write_or_text(o, acc.to_string(), json!({ "states": acc.num_states(), "k": k }))
        }
        WagnerCmd::Leq { a, b, via, strategy } => {
            let (a, b) = (acceptor(a)?, acceptor(b)?);
            let by_invariant = match via {
                Via::Game => None,
                _ => Some(leq_h(degree(&a)?.forest(), degree(&b)?.forest())?),
            };
            let by_game = if *via != Via::Invariant || strategy.is_some() {
                let game = build_game(&a, &b)?;
                let result = solve(&game)?;
                if let Some(path) = strategy {
                    fs::write(path, dump_strategy(&game, &result))?;
                }
                Some(result.winner == Player::II)
            } else {
                if a.k() != b.k() {
                    return Err(Error::KMismatch(a.k(), b.k()));
                }
                None
            };
            match (by_invariant, by_game) {
                (Some(x), Some(y)) if x != y => Err(Error::Unsupported(format!(
                    "invariant says {x} but the game says {y}"
                ))),
                (Some(x), _) | (None, Some(x)) => Ok(Outcome::Bool(x)),
                (None, None) => unreachable!("at least one method runs"),
            }
        }
        WagnerCmd::Degree { a, search } => {
            let a = acceptor(a)?;
            let d = if search.search {
                degree_by_search(&a, search.cap)?
            } else {
                degree(&a)?
            };
            Ok(text(d.to_string()))
        }
        WagnerCmd::Level { a, t } => {
            let a = acceptor(a)?;
            Ok(Outcome::Bool(level_member(&a, &invariant(t)?)?))
        }
        WagnerCmd::Ord { a } => {
            let d = ordinal_degree_k2(&acceptor(a)?)?;
            let s = if d.self_dual {
                format!("{} self-dual", d.ordinal)
            } else {
                d.ordinal.to_string()
            };
            Ok(Outcome::Text(
                s,
                json!({ "ordinal": d.ordinal.to_string(), "self_dual": d.self_dual }),
            ))
        }
    }
}

/// Convenience for tests: runs and captures stdout, stderr and the code.
pub fn run_captured(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("fhier").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).expect("utf-8 output"),
        String::from_utf8(err).expect("utf-8 output"),
    )
}

#[cfg(test)]
mod tests {
    use super::run_captured;

    #[test]
    fn examples() {
        assert_eq!(run_captured(&["forest", "cmp", "--rel", "h", "0(1)", "1(0(1))"]).1, "true\n");
        assert_eq!(run_captured(&["ord", "add", "w^{1}*1", "1"]).1, "w^{1}*1 + 1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_captured(&["nope"]).0, 2);
        assert_eq!(run_captured(&["forest", "cmp", "1", "0"]).0, 0);
        assert_eq!(run_captured(&["--exit-code", "forest", "cmp", "1", "0"]).0, 1);
        assert_eq!(run_captured(&["forest", "canon", "0(("]).0, 2);
        assert_eq!(run_captured(&["--help"]).0, 0);
    }

    #[test]
    fn json_mirror() {
        let (_, out, _) = run_captured(&["--json", "ord", "cmp", "1", "w^{1}*1"]);
        assert_eq!(out, "{\"result\":\"<\"}\n");
    }
}
