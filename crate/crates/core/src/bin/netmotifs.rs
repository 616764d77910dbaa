use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use netmotifs::census::{census, MotifSize};
use netmotifs::graphio::{normalize, read_edge_list};
use netmotifs::nullmodel::RandomizationConfig;
use netmotifs::report::{
    counts_csv, counts_json, run_pipeline, stability_table_csv, write_outputs, OutputFormat, PipelineConfig,
};
use netmotifs::significance::FilterThresholds;
use netmotifs::Error;

#[derive(Parser)]
#[command(name = "netmotifs", version, about = "Network motif census, significance and stability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count motifs in one graph.
    Census {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = parse_size)]
        size: MotifSize,
        #[arg(long)]
        retain_instances: bool,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: TableFormat,
    },
    /// Run the full pipeline and write tables and charts.
    Run {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', value_parser = parse_size, default_value = "3,4")]
        sizes: Vec<MotifSize>,
        #[arg(long, default_value_t = 100)]
        random: usize,
        #[arg(long, default_value_t = 100)]
        swap_factor: usize,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        preserve_mutual: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
        z_min: f64,
        #[arg(long, default_value_t = 1.1)]
        mfactor_min: f64,
        #[arg(long, default_value_t = 4)]
        uniq_min: u64,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "csv,json,svg")]
        formats: Vec<OutputFormat>,
    },
    /// Write the graph-independent motif stability table.
    Stability {
        #[arg(long, value_parser = parse_size)]
        size: MotifSize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_size(s: &str) -> Result<MotifSize, String> {
    s.trim()
        .parse::<usize>()
        .map_err(|e| e.to_string())
        .and_then(|k| MotifSize::from_nodes(k).map_err(|e| e.to_string()))
}

fn exit_code(err: &Error) -> u8 {
    match err.root() {
        Error::InvalidArgument(_) | Error::InvalidSize(_) => 1,
        Error::Numerical(_) => 3,
        _ => 2,
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Census {
            input,
            size,
            retain_instances,
            out,
            format,
        } => {
            let raw = read_edge_list(&input)?;
            let (graph, labels) = normalize(&raw)?;
            let result = census(&graph, size, retain_instances)?;
            let text = match format {
                TableFormat::Csv => counts_csv(&result)?,
                TableFormat::Json => counts_json(&result, &labels)?,
            };
            std::fs::write(out, text)?;
        }
        Command::Run {
            input,
            sizes,
            random,
            swap_factor,
            preserve_mutual,
            seed,
            z_min,
            mfactor_min,
            uniq_min,
            out_dir,
            formats,
        } => {
            let cfg = PipelineConfig {
                input,
                sizes,
                randomization: RandomizationConfig {
                    replicates: random,
                    swap_factor,
                    preserve_mutual,
                    master_seed: seed,
                },
                thresholds: FilterThresholds {
                    z_min,
                    mfactor_min,
                    uniq_min,
                },
                out_dir,
                formats,
            };
            let bundle = run_pipeline(&cfg)?;
            for path in write_outputs(&bundle, &cfg)? {
                println!("{}", path.display());
            }
        }
        Command::Stability { size, out } => {
            std::fs::write(out, stability_table_csv(size)?)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
