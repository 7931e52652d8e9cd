use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use fracspec_bench::{run_bench, write_csv, Method};

/// Compare the folded spectrum path against per-frequency naive DFT and
/// emit the measurements as CSV.
#[derive(Parser)]
#[command(name = "fracspec-bench", version)]
struct Args {
    /// Sequence lengths, comma separated.
    #[arg(long = "m", value_delimiter = ',', default_value = "10000,100000")]
    lengths: Vec<usize>,

    /// Moduli, comma separated.
    #[arg(long = "l", value_delimiter = ',', default_value = "18,36")]
    moduli: Vec<usize>,

    /// Timed repeats per method; the median is reported.
    #[arg(long, default_value_t = 5)]
    repeats: usize,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let records = match run_bench(&args.lengths, &args.moduli, args.repeats) {
        Ok(records) => records,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };

    for pair in records.chunks(2) {
        let naive = &pair[0];
        let folded = &pair[1];
        debug_assert_eq!(naive.method, Method::NaiveDft);
        eprintln!(
            "m = {}, l = {}: naive {:.3} ms (min {:.3}, max {:.3}), folded {:.3} ms, speedup {:.1}x",
            naive.m,
            naive.l,
            naive.ns_median as f64 / 1e6,
            naive.ns_min as f64 / 1e6,
            naive.ns_max as f64 / 1e6,
            folded.ns_median as f64 / 1e6,
            naive.ns_median as f64 / folded.ns_median.max(1) as f64,
        );
    }

    let result = match &args.output {
        Some(path) => match File::create(path) {
            Ok(file) => write_csv(&records, BufWriter::new(file)),
            Err(e) => {
                eprintln!("error: cannot create {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        },
        None => write_csv(&records, io::stdout().lock()),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
