use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num::BigRational;

use schmidt_cli::{
    cmd_facts, cmd_lemmas, cmd_play, cmd_verify, resolve_scan_cap, AdversaryChoice, PlayOptions,
};

#[derive(Parser)]
#[command(name = "schmidt", about = "Exact Schmidt (alpha,beta)-games on the circle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play a game and write transcript + certificate files.
    Play {
        /// Theta as cf:[a1,a2,...] or cfper:[pre|period]
        #[arg(long)]
        theta: Option<String>,
        /// White's ratio as p/q (the proof is stated for 1/8)
        #[arg(long, default_value = "1/8")]
        alpha: String,
        /// Black's ratio as p/q
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 40)]
        rounds: usize,
        /// random | greedy | replay:PATH | scripted:PATH
        #[arg(long, default_value = "random")]
        adversary: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        lookahead: u32,
        #[arg(long, default_value = "transcript.json")]
        out: PathBuf,
        /// Dovetail the strategy with its x -> -x conjugate
        #[arg(long, default_value_t = false)]
        two_sided: bool,
        /// Comma-separated theta list for a multi-theta dovetail
        #[arg(long)]
        thetas: Option<String>,
        #[arg(long)]
        scan_cap: Option<u64>,
        /// Radius of Black's opening ball (rational, at most 1/2)
        #[arg(long, default_value = "1/2")]
        initial_radius: String,
        /// Center of Black's opening ball (rational)
        #[arg(long, default_value = "0/1")]
        initial_center: String,
    },
    /// Referee-revalidate, re-simulate and re-certify a stored transcript.
    Verify { transcript: PathBuf },
    /// Print the convergent/Delta table.
    Facts {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 25)]
        depth: usize,
        #[arg(long, default_value_t = false)]
        json: bool,
    },
    /// Run the continued-fraction fact batteries.
    Lemmas {
        #[arg(long)]
        theta: String,
        #[arg(long, default_value_t = 25)]
        depth: usize,
        #[arg(long)]
        scan_cap: Option<u64>,
        #[arg(long, default_value_t = false)]
        json: bool,
    },
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    game_engine::json::rational_from_string(s).map_err(|e| e.to_string())
}

fn parse_adversary(s: &str) -> Result<AdversaryChoice, String> {
    if s == "random" {
        Ok(AdversaryChoice::Random)
    } else if s == "greedy" {
        Ok(AdversaryChoice::Greedy)
    } else if let Some(path) = s.strip_prefix("replay:") {
        Ok(AdversaryChoice::Replay(PathBuf::from(path)))
    } else if let Some(path) = s.strip_prefix("scripted:") {
        Ok(AdversaryChoice::Scripted(PathBuf::from(path)))
    } else {
        Err(format!("unknown adversary '{s}'"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Play {
            theta,
            alpha,
            beta,
            rounds,
            adversary,
            seed,
            lookahead,
            out,
            two_sided,
            thetas,
            scan_cap,
            initial_radius,
            initial_center,
        } => {
            let parsed = (|| -> Result<PlayOptions, String> {
                let theta = match (&theta, &thetas) {
                    (Some(t), _) => t.clone(),
                    (None, Some(list)) => list
                        .split(',')
                        .next()
                        .map(str::to_string)
                        .ok_or("empty --thetas list")?,
                    (None, None) => return Err("--theta (or --thetas) is required".into()),
                };
                Ok(PlayOptions {
                    theta,
                    alpha: parse_rational(&alpha)?,
                    beta: parse_rational(&beta)?,
                    rounds,
                    adversary: parse_adversary(&adversary)?,
                    seed,
                    lookahead,
                    out,
                    two_sided,
                    thetas: thetas
                        .map(|l| l.split(',').map(str::to_string).collect())
                        .unwrap_or_default(),
                    scan_cap: resolve_scan_cap(scan_cap),
                    initial_radius: parse_rational(&initial_radius)?,
                    initial_center: parse_rational(&initial_center)?,
                })
            })();
            match parsed {
                Ok(opts) => cmd_play(&opts),
                Err(msg) => {
                    eprintln!("{{\"error\":{{\"kind\":\"config\",\"detail\":\"{msg}\"}}}}");
                    schmidt_cli::exit_code::CONFIG
                }
            }
        }
        Command::Verify { transcript } => cmd_verify(&transcript),
        Command::Facts { theta, depth, json } => cmd_facts(&theta, depth, json),
        Command::Lemmas { theta, depth, scan_cap, json } => {
            cmd_lemmas(&theta, depth, resolve_scan_cap(scan_cap), json)
        }
    };
    ExitCode::from(code as u8)
}
