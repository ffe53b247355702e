//! Argument parsing into a [`RunConfig`] and [`Command`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use verma_core::root_datum::Graph;

use crate::commands::{parse_op, parse_op_word, run, CliError, Command, Format, RunConfig};
use crate::formats::{parse_config, parse_graph, parse_int_list, parse_weight};

#[derive(Parser, Debug)]
#[command(name = "verma", version, about = "Verma modules from preprojective algebra modules")]
pub struct Cli {
    /// Builtin type: An, Dn (n >= 4), E6, A1~.
    #[arg(long = "type", global = true)]
    pub kind: Option<String>,
    /// Graph file with `vertices:` and `edge:` lines.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Highest weight, comma separated.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub cutoff: Option<u32>,
    /// Primes for point counting, comma separated.
    #[arg(long, global = true)]
    pub primes: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutFormat>,
    /// Key=value file with the same fields; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// List the iso-classes of every slice with fingerprints.
    Catalog,
    /// Check every relation family and invariant; exit 0 iff all pass.
    Verify,
    /// Graded dimensions of M(λ) and L(λ).
    Character,
    /// Apply an operator word to a delta function.
    Act {
        /// E.g. `f2,f1,e1`; the rightmost operator acts first.
        #[arg(long)]
        word: String,
        /// `zero`, a class name such as `q1+s1`, or a module literal file.
        #[arg(long, default_value = "zero")]
        on: String,
    },
    /// Recompute the A2 worked example and compare with the golden file.
    ExampleA2,
    /// Words × classes evaluation matrix per slice.
    PairingMatrix,
    /// Matrix of a dual operator between delta bases per slice.
    OperatorMatrix {
        #[arg(long)]
        op: String,
    },
}

fn setting(flag: Option<String>, file: &std::collections::BTreeMap<String, String>, key: &str) -> Option<String> {
    flag.or_else(|| file.get(key).cloned())
}

pub fn config_from(cli: &Cli) -> Result<(RunConfig, Command), CliError> {
    let file = match &cli.config {
        Some(p) => parse_config(&std::fs::read_to_string(p)?)?,
        None => Default::default(),
    };
    for k in file.keys() {
        if !["type", "graph", "lambda", "cutoff", "primes", "format", "jobs"].contains(&k.as_str()) {
            return Err(CliError::Config(format!("unknown config key `{k}`")));
        }
    }
    let graph_path = cli.graph.clone().or_else(|| file.get("graph").map(PathBuf::from));
    let kind = setting(cli.kind.clone(), &file, "type");
    let graph = match (kind, graph_path) {
        (Some(_), Some(_)) => return Err(CliError::Config("give either --type or --graph".into())),
        (Some(t), None) => Graph::builtin(&t).map_err(|_| CliError::Config(format!("unknown type `{t}`")))?,
        (None, Some(p)) => parse_graph(&std::fs::read_to_string(p)?)?,
        (None, None) if matches!(cli.command, Cmd::ExampleA2) => Graph::builtin("A2")?,
        (None, None) => return Err(CliError::Config("missing --type or --graph".into())),
    };
    let mut cfg = RunConfig::new(graph);
    if let Some(l) = setting(cli.lambda.clone(), &file, "lambda") {
        cfg.lambda = Some(parse_weight(&l)?);
    }
    if let Some(c) = cli.cutoff {
        cfg.cutoff = c;
    } else if let Some(c) = file.get("cutoff") {
        cfg.cutoff = c.parse().map_err(|_| CliError::Config(format!("bad cutoff `{c}`")))?;
    }
    if let Some(p) = setting(cli.primes.clone(), &file, "primes") {
        cfg.primes = parse_int_list(&p)?;
    }
    cfg.format = match (cli.format, file.get("format").map(String::as_str)) {
        (Some(OutFormat::Json), _) | (None, Some("json")) => Format::Json,
        (Some(OutFormat::Text), _) | (None, Some("text") | None) => Format::Text,
        (None, Some(f)) => return Err(CliError::Config(format!("unknown format `{f}`"))),
    };
    if let Some(j) = cli.jobs {
        cfg.jobs = j;
    } else if let Some(j) = file.get("jobs") {
        cfg.jobs = j.parse().map_err(|_| CliError::Config(format!("bad jobs `{j}`")))?;
    }
    let cmd = match &cli.command {
        Cmd::Catalog => Command::Catalog,
        Cmd::Verify => Command::Verify,
        Cmd::Character => Command::Character,
        Cmd::Act { word, on } => Command::Act { word: parse_op_word(word)?, on: on.clone() },
        Cmd::ExampleA2 => Command::ExampleA2,
        Cmd::PairingMatrix => Command::PairingMatrix,
        Cmd::OperatorMatrix { op } => Command::OperatorMatrix { op: parse_op(op)? },
    };
    Ok((cfg, cmd))
}

/// Parses `args`, runs, and returns the process exit code. Errors go to
/// `err` as one JSON object.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 4;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    let result = config_from(&cli).and_then(|(cfg, cmd)| run(&cfg, &cmd, out));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            e.exit_code()
        }
    }
}
