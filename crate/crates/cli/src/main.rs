use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use supergame::equilibria::{equilibrium_report, extremal_equilibrium, Direction};
use supergame::format::load_game_with_cap;
use supergame::gallery::{self, Fixture, NAMES};
use supergame::game::Game;
use supergame::poset::{DEFAULT_EXHAUSTIVE_CAP, DEFAULT_PRODUCT_CAP};
use supergame::verify::{run_counterexample_suite, run_lemma_suite, SuiteReport};
use supergame::Error;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "supergame", version)]
#[command(about = "Equilibrium analysis for finite supermodular games")]
struct Cli {
    /// Directory for written reports and fixtures
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Largest product of strategy sets that will be enumerated
    #[arg(long, global = true, default_value_t = DEFAULT_PRODUCT_CAP,
          value_parser = positive)]
    cap_product: usize,

    /// Largest set whose subsets are enumerated by exhaustive checks
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_CAP,
          value_parser = exhaustive_cap)]
    cap_exhaustive: usize,

    /// Print nothing; report through the exit code only
    #[arg(long, short, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err("expected a positive integer".into()),
    }
}

/// Subsets of at most 20 elements, about a million, are still enumerable.
fn exhaustive_cap(s: &str) -> Result<usize, String> {
    positive(s).and_then(|n| {
        if n <= 20 {
            Ok(n)
        } else {
            Err("at most 20".into())
        }
    })
}

#[derive(Subcommand)]
enum Command {
    /// Check the supermodularity hypotheses of a game file
    Check { path: PathBuf },
    /// Enumerate equilibria and describe their order structure
    Equilibria {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Run the randomized lemma checks and the symbolic counterexample
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Write a built-in fixture, or `list` them
    Gallery { name: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Dot,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Iterate,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Counterexample,
    All,
}

/// Exit status plus the message for stderr.
enum Failure {
    Analysis(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::PreconditionViolated(_) | Error::InternalContradiction(_) => {
                Failure::Analysis(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

struct Output<'a> {
    cli: &'a Cli,
    /// Stdout text, printed unless quiet.
    text: String,
}

impl Output<'_> {
    fn print(&mut self, s: &str) {
        self.text.push_str(s);
    }

    fn write_file(&mut self, name: &str, contents: &str) -> Result<(), Failure> {
        let dir = self.cli.out.as_deref().unwrap_or(Path::new("."));
        fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let path = dir.join(name);
        fs::write(&path, contents).map_err(|e| io_err(&path, e))?;
        self.print(&format!("wrote {}\n", path.display()));
        Ok(())
    }
}

fn header(path: &Path, bytes: &[u8]) -> String {
    format!(
        "supergame {VERSION}\ninput: {} sha256:{}\n",
        path.display(),
        hex::encode(Sha256::digest(bytes))
    )
}

fn load(cli: &Cli, path: &Path) -> Result<(Game, String), Failure> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Failure::Usage(format!("{}: not valid UTF-8", path.display())))?;
    let game = load_game_with_cap(&text, cli.cap_product)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok((game, header(path, &bytes)))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map_or("game".into(), |s| s.to_string_lossy().into_owned())
}

fn check(cli: &Cli, out: &mut Output, path: &Path) -> Result<(), Failure> {
    let (g, head) = load(cli, path)?;
    let report = g.validate_supermodular();
    out.print(&head);
    out.print(&report.render(&g));
    if report.is_supermodular() {
        Ok(())
    } else {
        Err(Failure::Analysis(String::new()))
    }
}

fn equilibria(cli: &Cli, out: &mut Output, path: &Path, method: Method) -> Result<(), Failure> {
    let (g, head) = load(cli, path)?;
    let mut text = head;
    let validation = g.validate_supermodular();
    let mut failure = None;
    if method == Method::Iterate {
        if !validation.is_supermodular() {
            return Err(Failure::Analysis(format!(
                "iteration needs a supermodular game: {}",
                validation.failures(&g).join("; ")
            )));
        }
        for (dir, label) in [
            (Direction::Greatest, "greatest"),
            (Direction::Least, "least"),
        ] {
            let e = extremal_equilibrium(&g, dir)?;
            let trace: Vec<String> = e.trace.iter().map(|&x| g.profile_name(x)).collect();
            text.push_str(&format!(
                "{label}: {}\niteration: {}\n",
                g.profile_name(e.profile),
                trace.join(" -> ")
            ));
        }
    } else {
        let report = equilibrium_report(&g, cli.cap_exhaustive)?;
        let mut body = report.render(&g);
        if method == Method::Brute {
            body = body
                .lines()
                .filter(|l| !l.starts_with("iteration from"))
                .map(|l| format!("{l}\n"))
                .collect();
        }
        text.push_str(&body);
        if method == Method::Both {
            if report.supermodular {
                let agree = [
                    (Direction::Greatest, report.max),
                    (Direction::Least, report.min),
                ]
                .into_iter()
                .all(|(d, want)| {
                    extremal_equilibrium(&g, d).is_ok_and(|e| Some(e.profile) == want)
                });
                text.push_str(if agree {
                    "cross-check: OK\n"
                } else {
                    "cross-check: MISMATCH\n"
                });
                if !agree {
                    failure = Some(Failure::Analysis(
                        "iteration disagrees with enumeration".into(),
                    ));
                }
            } else {
                text.push_str("cross-check: skipped (game is not supermodular)\n");
            }
        }
        let name = stem(path);
        if cli.format != OutputFormat::Text {
            let dot = report.to_dot(&g)?;
            if cli.out.is_some() {
                out.write_file(&format!("{name}.dot"), &dot)?;
            } else if cli.format == OutputFormat::Dot {
                out.print(&dot);
            } else {
                text.push_str(&dot);
            }
        }
        if cli.out.is_some() {
            let json = serde_json::to_string_pretty(&report.to_value(&g)).unwrap() + "\n";
            out.write_file(&format!("{name}.equilibria.json"), &json)?;
        }
    }
    if cli.format != OutputFormat::Dot || method == Method::Iterate {
        if cli.out.is_some() {
            out.write_file(&format!("{}.equilibria.txt", stem(path)), &text)?;
        } else {
            out.print(&text);
        }
    }
    failure.map_or(Ok(()), Err)
}

fn verify(out: &mut Output, suite: Suite, seed: u64, trials: usize) -> Result<(), Failure> {
    out.print(&format!("supergame {VERSION}\nseed: {seed}\n"));
    let mut report = SuiteReport::default();
    if suite != Suite::Counterexample {
        report.extend(run_lemma_suite(seed, trials)?);
    }
    if suite != Suite::Lemmas {
        for kind in [1, 2] {
            out.print(&supergame::omega::refute_statement(kind)?.render());
        }
        report.extend(run_counterexample_suite()?);
    }
    out.print(&report.render());
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Analysis(String::new()))
    }
}

fn gallery_cmd(out: &mut Output, name: &str) -> Result<(), Failure> {
    if name == "list" {
        for (n, about) in NAMES {
            out.print(&format!("{n:<28}{about}\n"));
        }
        return Ok(());
    }
    match gallery::get(name)? {
        f @ Fixture::Game(_) => out.write_file(&format!("{name}.json"), &f.render()),
        f @ Fixture::Report(_) => {
            let text = f.render();
            out.write_file(&format!("{name}.txt"), &text)?;
            out.print(&text);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut out = Output {
        cli: &cli,
        text: String::new(),
    };
    let result = match &cli.command {
        Command::Check { path } => check(&cli, &mut out, path),
        Command::Equilibria { path, method } => equilibria(&cli, &mut out, path, *method),
        Command::Verify {
            suite,
            seed,
            trials,
        } => verify(&mut out, *suite, *seed, *trials),
        Command::Gallery { name } => gallery_cmd(&mut out, name),
    };
    if !cli.quiet {
        print!("{}", out.text);
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Analysis(msg)) => {
            if !msg.is_empty() && !cli.quiet {
                eprintln!("error: {msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            if !cli.quiet {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}
