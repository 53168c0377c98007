use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use transrel::cli::{self, CliError, Outcome, RunConfig};
use transrel::ingest::resources::ResourcePaths;
use transrel::ingest::{CorpusRole, ExportFormat};
use transrel::metrics::DiscrepancyPolicy;

#[derive(Parser)]
#[command(
    name = "transrel",
    version,
    about = "Translation-relation annotation and corpus comparison"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check both corpora for complete, non-overlapping annotation.
    Validate(Common),
    /// Relation distributions, literal splits and token tables.
    Stats(Common),
    /// Discrepancies and edit distances between reference and candidate.
    Diff(Common),
    /// Sub-category and unaligned-token profiles.
    Subcat(Common),
    /// Draft annotations from the word alignments.
    Suggest(Common),
    /// Serve the annotation API.
    Serve {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        #[arg(long, value_enum, default_value_t = Role::Reference)]
        corpus: Role,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Denominator {
    Reference,
    Candidate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Role {
    Reference,
    Candidate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Tsv,
    Jsonl,
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Denominator::Reference)]
    denominator: Denominator,
    #[arg(long, default_value_t = 3)]
    decimals: u8,
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    require_ling: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Named-entity spans (`id<TAB>start-end`).
    #[arg(long)]
    ne_spans: Option<PathBuf>,
    /// Fixed expressions, one per line.
    #[arg(long)]
    fixed_expressions: Option<PathBuf>,
    /// Hyperonym lexicon (`lemma<TAB>hyperonym...`).
    #[arg(long)]
    hypernyms: Option<PathBuf>,
    /// Literal gloss table (`lemma<TAB>gloss...`).
    #[arg(long)]
    glosses: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            denominator: match self.denominator {
                Denominator::Reference => DiscrepancyPolicy::Reference,
                Denominator::Candidate => DiscrepancyPolicy::Candidate,
            },
            decimals: self.decimals,
            top_k: self.top_k,
            require_ling: self.require_ling,
            format: match self.format {
                Format::Csv => ExportFormat::Csv,
                Format::Tsv => ExportFormat::Tsv,
                Format::Jsonl => ExportFormat::JsonLines,
            },
            resources: ResourcePaths {
                named_entities: self.ne_spans.clone(),
                fixed_expressions: self.fixed_expressions.clone(),
                hypernyms: self.hypernyms.clone(),
                glosses: self.glosses.clone(),
            },
            ..RunConfig::new(&self.manifest, &self.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                cli::EXIT_CONFIG as u8
            } else {
                0
            });
        }
    };
    let result: Result<Outcome, CliError> = match &cli.command {
        Command::Validate(c) => cli::cmd_validate(&c.config()),
        Command::Stats(c) => cli::cmd_stats(&c.config()),
        Command::Diff(c) => cli::cmd_diff(&c.config()),
        Command::Subcat(c) => cli::cmd_subcat(&c.config()),
        Command::Suggest(c) => cli::cmd_suggest(&c.config()),
        Command::Serve {
            common,
            port,
            host,
            corpus,
        } => {
            let role = match corpus {
                Role::Reference => CorpusRole::Reference,
                Role::Candidate => CorpusRole::Candidate,
            };
            cli::cmd_serve(&common.config(), SocketAddr::new(*host, *port), role)
        }
    };
    match result {
        Ok(outcome) => {
            for m in &outcome.messages {
                eprintln!("{}", m);
            }
            for f in &outcome.files {
                println!("{}", f.display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
