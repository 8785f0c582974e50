//! Command-line interface for the LDCL codec.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ldcl_core::matrix::{self, CodecParams, MultiplierProfile};
use ldcl_core::metrics::{format_ratio, rmse, Rmse};
use ldcl_core::numeric::GiantNumber;
use ldcl_core::sequence;
use ldcl_core::BitSequence;

use ldcl::bench::{self, BenchSpec, InputSource};
use ldcl::container::{self, ContainerError};

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_FORMAT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ldcl",
    about = "Lossy digit-stream codec: compress, decompress, inspect, measure, benchmark",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Digits per set (the threshold T)
    #[arg(long, default_value_t = 300)]
    set_size: usize,
    /// Stored fraction digits per log value (the rate/distortion knob p)
    #[arg(long, default_value_t = 12)]
    precision: usize,
    /// Store the multiplier row as log values instead of raw counts
    #[arg(long)]
    m_log: bool,
}

impl ParamArgs {
    fn to_params(&self) -> Result<CodecParams, String> {
        if self.set_size < 2 {
            return Err("--set-size must be at least 2".into());
        }
        if self.precision < 1 {
            return Err("--precision must be at least 1".into());
        }
        Ok(CodecParams::new(
            self.set_size,
            self.precision,
            if self.m_log {
                MultiplierProfile::Log
            } else {
                MultiplierProfile::Raw
            },
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an .ldcl archive
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Reconstruct a file from an .ldcl archive
    Decompress { archive: PathBuf, output: PathBuf },
    /// Dump the header and per-set records of an archive
    Inspect { archive: PathBuf },
    /// Compare an original file against an archive: compression ratio and RMSE
    Metrics {
        original: PathBuf,
        archive: PathBuf,
        /// Emit CSV instead of plain text
        #[arg(long)]
        csv: bool,
    },
    /// Sweep a parameter grid and emit CSV measurements
    Bench {
        /// Comma-separated set sizes to sweep
        #[arg(long, value_delimiter = ',', default_value = "20,100,300")]
        set_sizes: Vec<usize>,
        /// Comma-separated precisions to sweep
        #[arg(long, value_delimiter = ',', default_value = "8")]
        precisions: Vec<usize>,
        /// Compress this file in every cell (default: seeded random bytes)
        #[arg(long, conflicts_with = "random_bytes")]
        input: Option<PathBuf>,
        /// Size of the seeded random payload per trial
        #[arg(long, default_value_t = 1 << 20)]
        random_bytes: usize,
        /// PRNG seed for random payloads
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per grid cell
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Write CSV here instead of stdout
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        m_log: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not usage errors
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

fn usage_err(message: impl Into<String>) -> CliError {
    CliError {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn io_err(context: &str, e: std::io::Error) -> CliError {
    CliError {
        code: EXIT_IO,
        message: format!("{context}: {e}"),
    }
}

impl From<ContainerError> for CliError {
    fn from(e: ContainerError) -> Self {
        let code = match e {
            ContainerError::Io(_) => EXIT_IO,
            _ => EXIT_FORMAT,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compress {
            input,
            output,
            params,
        } => cmd_compress(&input, &output, &params),
        Command::Decompress { archive, output } => cmd_decompress(&archive, &output),
        Command::Inspect { archive } => cmd_inspect(&archive),
        Command::Metrics {
            original,
            archive,
            csv,
        } => cmd_metrics(&original, &archive, csv),
        Command::Bench {
            set_sizes,
            precisions,
            input,
            random_bytes,
            seed,
            trials,
            csv,
            m_log,
        } => {
            let spec = BenchSpec {
                set_sizes,
                precisions,
                input: match input {
                    Some(path) => InputSource::File(path),
                    None => InputSource::Random {
                        bytes: random_bytes,
                        seed,
                    },
                },
                trials,
                m_profile: if m_log {
                    MultiplierProfile::Log
                } else {
                    MultiplierProfile::Raw
                },
            };
            cmd_bench(&spec, csv.as_deref())
        }
    }
}

fn cmd_compress(input: &PathBuf, output: &PathBuf, params: &ParamArgs) -> Result<(), CliError> {
    let params = params.to_params().map_err(usage_err)?;
    let payload = fs::read(input).map_err(|e| io_err(&input.display().to_string(), e))?;
    let archive = ldcl::parallel::compress(&BitSequence::from_bytes(&payload), &params)
        .map_err(|e| usage_err(e.to_string()))?;
    let mut sink =
        fs::File::create(output).map_err(|e| io_err(&output.display().to_string(), e))?;
    let written = container::write_archive(&archive, &mut sink)?;
    sink.flush().map_err(|e| io_err("flush", e))?;

    let original = payload.len() as u64;
    let cr = if original == 0 {
        eprintln!("warning: empty input; compression ratio is degenerate");
        "0.00".to_string()
    } else {
        format_ratio(original, written).unwrap()
    };
    println!(
        "original {} bytes, compressed {} bytes, cr {}, sets {}",
        original,
        written,
        cr,
        archive.matrix.set_count()
    );
    Ok(())
}

fn cmd_decompress(archive_path: &PathBuf, output: &PathBuf) -> Result<(), CliError> {
    let mut source =
        fs::File::open(archive_path).map_err(|e| io_err(&archive_path.display().to_string(), e))?;
    let archive = container::read_archive(&mut source)?;
    let bits = ldcl::parallel::decompress(&archive);
    debug_assert_eq!(bits.len() as u64, archive.original_bit_len);
    fs::write(output, bits.as_bytes()).map_err(|e| io_err(&output.display().to_string(), e))?;
    Ok(())
}

fn cmd_inspect(archive_path: &PathBuf) -> Result<(), CliError> {
    let mut source =
        fs::File::open(archive_path).map_err(|e| io_err(&archive_path.display().to_string(), e))?;
    let archive = container::read_archive(&mut source)?;
    let n = archive.matrix.set_count();
    println!("magic/version:      LDCL v{}", container::VERSION);
    println!("odd-pad flag:       {}", archive.odd_pad);
    let m_desc = match archive.params.m_profile {
        MultiplierProfile::Raw => "raw counts",
        MultiplierProfile::Log => "log-encoded",
    };
    println!("multiplier profile: {m_desc}");
    println!("set size T:         {}", archive.params.set_size);
    println!("precision p:        {}", archive.params.precision);
    println!("original bits:      {}", archive.original_bit_len);
    println!("mapped digits:      {}", archive.mapped_digit_len);
    println!("set count n:        {n}");
    println!("final set digits:   {}", archive.last_set_digit_len());
    println!("archive bytes:      {}", container::archive_size(&archive));
    if n == 0 {
        return Ok(());
    }
    print!("multipliers ({m_desc}):");
    for rec in &archive.matrix.records {
        match (&rec.verbatim_digit, &rec.multiplier_log) {
            (Some(d), _) => print!(" verbatim:{d}"),
            (None, Some(l)) => print!(" {l}"),
            (None, None) => print!(" {}", rec.multiplier),
        }
    }
    println!();
    let sentinels: Vec<usize> = archive
        .matrix
        .records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.r_is_zero)
        .map(|(i, _)| i)
        .collect();
    println!("zero-residue sets:  {sentinels:?}");
    let first = &archive.matrix.records[0];
    if let Some(l) = &first.residue_log {
        println!("first residue log:  {l}");
    }
    if let Some(l) = archive.matrix.records[n - 1].residue_log.as_ref() {
        println!("last residue log:   {l}");
    }
    Ok(())
}

fn cmd_metrics(original: &PathBuf, archive_path: &PathBuf, csv: bool) -> Result<(), CliError> {
    let payload = fs::read(original).map_err(|e| io_err(&original.display().to_string(), e))?;
    let mut source =
        fs::File::open(archive_path).map_err(|e| io_err(&archive_path.display().to_string(), e))?;
    let compressed_bytes = fs::metadata(archive_path)
        .map_err(|e| io_err(&archive_path.display().to_string(), e))?
        .len();
    let archive = container::read_archive(&mut source)?;

    // rebuild the original per-set values under the archive's parameters
    let mapped = sequence::map_bits(&BitSequence::from_bytes(&payload));
    let rle = sequence::rle_encode(&mapped);
    let sets = matrix::decompose_sets(&rle, archive.params.set_size);
    let reconstructed = matrix::reconstruct_sets(&archive.matrix, &archive.params);
    if sets.len() != reconstructed.len() {
        return Err(CliError {
            code: EXIT_FORMAT,
            message: format!(
                "archive does not match original: {} sets vs {}",
                reconstructed.len(),
                sets.len()
            ),
        });
    }
    let to_giants = |v: &[Vec<u8>]| -> Vec<GiantNumber> {
        v.iter()
            .map(|s| GiantNumber::from_decimal_digits(s).expect("digit sets"))
            .collect()
    };
    let measured = if sets.is_empty() {
        Rmse::zero(1)
    } else {
        rmse(&to_giants(&sets), &to_giants(&reconstructed))
            .map_err(|e| usage_err(e.to_string()))?
    };
    let report = ldcl_core::metrics::MetricsReport {
        original_bytes: payload.len() as u64,
        compressed_bytes,
        set_count: archive.matrix.set_count(),
        rmse: measured,
    };
    if csv {
        print!("{}", report.render_csv());
    } else {
        print!("{}", report.render_text());
    }
    Ok(())
}

fn cmd_bench(spec: &BenchSpec, csv_path: Option<&std::path::Path>) -> Result<(), CliError> {
    spec.validate().map_err(usage_err)?;
    let rows = bench::run_bench(spec).map_err(usage_err)?;
    let csv = bench::render_csv(spec, &rows);
    match csv_path {
        Some(path) => {
            fs::write(path, csv).map_err(|e| io_err(&path.display().to_string(), e))?;
        }
        None => print!("{csv}"),
    }
    Ok(())
}
