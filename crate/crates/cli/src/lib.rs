//! Command-line adapter over `cone-spectra`. [`run`] is the whole program;
//! the binary only prints its output and exits with its code.

pub mod args;
pub mod commands;
pub mod config;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format, G2Cmd, HlCmd, LawlorCmd, SpectrumCmd};
use commands::Output;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const THREADS_ENV: &str = "CONE_SPECTRA_THREADS";

/// What the process should print and how it should exit.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_object(kind: &str, message: &str) -> String {
    let v = json!({
        "tool": "cone-spectra",
        "version": env!("CARGO_PKG_VERSION"),
        "error": {"kind": kind, "message": message},
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Spectrum(s) => format!("spectrum {}", match s {
            SpectrumCmd::Torus(_) => "torus",
            SpectrumCmd::Sphere(_) => "sphere",
            SpectrumCmd::Mesh(_) => "mesh",
        }),
        Command::Indicial(_) => "indicial".into(),
        Command::Stability(_) => "stability".into(),
        Command::Index(_) => "index".into(),
        Command::Lawlor(l) => format!("lawlor {}", match l {
            LawlorCmd::Angles(_) => "angles",
            LawlorCmd::Solve(_) => "solve",
            LawlorCmd::Profile(_) => "profile",
            LawlorCmd::Verify(_) => "verify",
        }),
        Command::Hl(h) => format!("hl {}", match h {
            HlCmd::Verify(_) => "verify",
            HlCmd::XiRelation(_) => "xi-relation",
        }),
        Command::G2(G2Cmd::Check(_)) => "g2 check".into(),
        Command::Planes(_) => "planes".into(),
    }
}

fn command_config(c: &Command) -> Value {
    let v = match c {
        Command::Spectrum(SpectrumCmd::Torus(a)) => serde_json::to_value(a),
        Command::Spectrum(SpectrumCmd::Sphere(a)) => serde_json::to_value(a),
        Command::Spectrum(SpectrumCmd::Mesh(a)) => serde_json::to_value(a),
        Command::Indicial(a) => serde_json::to_value(a),
        Command::Stability(a) => serde_json::to_value(a),
        Command::Index(a) => serde_json::to_value(a),
        Command::Lawlor(LawlorCmd::Angles(a)) => serde_json::to_value(a),
        Command::Lawlor(LawlorCmd::Solve(a)) => serde_json::to_value(a),
        Command::Lawlor(LawlorCmd::Profile(a)) => serde_json::to_value(a),
        Command::Lawlor(LawlorCmd::Verify(a)) => serde_json::to_value(a),
        Command::Hl(HlCmd::Verify(a)) => serde_json::to_value(a),
        Command::Hl(HlCmd::XiRelation(a)) => serde_json::to_value(a),
        Command::G2(G2Cmd::Check(a)) => serde_json::to_value(a),
        Command::Planes(a) => serde_json::to_value(a),
    };
    v.expect("arguments serialize")
}

/// Runs the library call behind a parsed command.
pub fn dispatch(command: &Command, seed: u64) -> cone_spectra::Result<Output> {
    match command {
        Command::Spectrum(s) => commands::spectrum(s),
        Command::Indicial(a) => commands::indicial(a),
        Command::Stability(a) => commands::stability(a),
        Command::Index(a) => commands::index(a),
        Command::Lawlor(l) => commands::lawlor(l, seed),
        Command::Hl(h) => commands::hl(h, seed),
        Command::G2(g) => commands::g2(g, seed),
        Command::Planes(a) => commands::planes(a),
    }
}

fn resolve_threads(flag: Option<usize>, env: Option<String>) -> Result<Option<usize>, String> {
    if let Some(n) = flag {
        return if n == 0 { Err("--threads must be positive".into()) } else { Ok(Some(n)) };
    }
    match env {
        None => Ok(None),
        Some(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!("{THREADS_ENV} must be a positive integer, got '{s}'")),
        },
    }
}

/// Parses `argv` (including the program name), runs the command and renders the report.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let fail = |code: i32, kind: &str, msg: &str| Outcome { code, stdout: error_object(kind, msg), stderr: format!("error: {msg}\n") };
    let argv = match config::merge_config(argv) {
        Ok(a) => a,
        Err(e) => return fail(EXIT_VALIDATION, "InvalidConfig", &e.0),
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
                    if e.exit_code() == 0 =>
                {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let threads = match resolve_threads(cli.global.threads, std::env::var(THREADS_ENV).ok()) {
        Ok(t) => t,
        Err(m) => return fail(EXIT_VALIDATION, "InvalidInput", &m),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => return fail(EXIT_VALIDATION, "InvalidInput", &e.to_string()),
    };
    let name = command_name(&cli.command);
    let result = pool.install(|| dispatch(&cli.command, cli.global.seed));
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_VALIDATION };
            return fail(code, e.kind(), &e.to_string());
        }
    };
    match cli.global.format {
        Format::Csv => match out.csv {
            Some(text) => Outcome { code: EXIT_OK, stdout: text, stderr: String::new() },
            None => fail(EXIT_VALIDATION, "InvalidInput", &format!("'{name}' has no CSV output; use --format json")),
        },
        Format::Json => {
            let mut config = command_config(&cli.command);
            let global = serde_json::to_value(&cli.global).expect("globals serialize");
            if let (Value::Object(c), Value::Object(g)) = (&mut config, global) {
                c.extend(g);
            }
            let report = json!({
                "tool": "cone-spectra",
                "version": env!("CARGO_PKG_VERSION"),
                "command": name,
                "config": config,
                "provenance": out.provenance,
                "result": out.result,
            });
            Outcome { code: EXIT_OK, stdout: serde_json::to_string_pretty(&report).expect("json") + "\n", stderr: String::new() }
        }
    }
}
