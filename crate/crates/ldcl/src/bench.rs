//! Parameter-sweep benchmarking: compression ratio and per-set RMSE over a
//! grid of set sizes and precisions.
//!
//! Rows come out in `(T, p, trial)` order regardless of how cells are
//! scheduled; random corpora are generated from a named, seeded generator
//! so every trend is reproducible.

use std::fmt::Write as _;
use std::path::PathBuf;

use ldcl_core::matrix::{self, CodecParams, MultiplierProfile};
use ldcl_core::metrics::{format_ratio, rmse, Rmse};
use ldcl_core::numeric::GiantNumber;
use ldcl_core::sequence;
use ldcl_core::BitSequence;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::container;

/// What each grid cell compresses.
#[derive(Debug, Clone)]
pub enum InputSource {
    File(PathBuf),
    Random { bytes: usize, seed: u64 },
}

/// The experiment grid.
#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub set_sizes: Vec<usize>,
    pub precisions: Vec<usize>,
    pub input: InputSource,
    pub trials: usize,
    pub m_profile: MultiplierProfile,
}

impl BenchSpec {
    pub fn validate(&self) -> Result<(), String> {
        if self.set_sizes.iter().any(|&t| t < 2) {
            return Err("all set sizes must be at least 2".into());
        }
        if self.precisions.iter().any(|&p| p < 1) {
            return Err("all precisions must be at least 1".into());
        }
        if self.trials < 1 {
            return Err("trials must be at least 1".into());
        }
        Ok(())
    }
}

/// One measured grid cell.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub set_size: usize,
    pub precision: usize,
    pub trial: usize,
    pub outcome: Result<BenchMeasurement, String>,
}

#[derive(Debug, Clone)]
pub struct BenchMeasurement {
    pub original_bytes: u64,
    pub compressed_bytes: u64,
    pub rmse: Rmse,
}

/// Runs one cell: compress, serialize for the exact byte count, decompress,
/// and measure RMSE over the per-set integer values.
pub fn run_cell(
    payload: &[u8],
    set_size: usize,
    precision: usize,
    m_profile: MultiplierProfile,
) -> Result<BenchMeasurement, String> {
    let params = CodecParams::new(set_size, precision, m_profile);
    let input = BitSequence::from_bytes(payload);
    let mapped = sequence::map_bits(&input);
    let rle = sequence::rle_encode(&mapped);
    let sets = matrix::decompose_sets(&rle, set_size);
    let archive = matrix::compress(&input, &params).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    let compressed_bytes =
        container::write_archive(&archive, &mut buf).map_err(|e| e.to_string())?;
    let reconstructed = matrix::reconstruct_sets(&archive.matrix, &params);

    let originals: Vec<GiantNumber> = sets
        .iter()
        .map(|s| GiantNumber::from_decimal_digits(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let rebuilt: Vec<GiantNumber> = reconstructed
        .iter()
        .map(|s| GiantNumber::from_decimal_digits(s).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let rmse = if originals.is_empty() {
        Rmse::zero(1)
    } else {
        rmse(&originals, &rebuilt).map_err(|e| e.to_string())?
    };
    Ok(BenchMeasurement {
        original_bytes: payload.len() as u64,
        compressed_bytes,
        rmse,
    })
}

/// Deterministic payload for a trial: the file contents, or seeded random
/// bytes with the trial index folded into the seed.
pub fn trial_payload(input: &InputSource, trial: usize) -> Result<Vec<u8>, String> {
    match input {
        InputSource::File(path) => {
            std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))
        }
        InputSource::Random { bytes, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
            let mut buf = vec![0u8; *bytes];
            rng.fill_bytes(&mut buf);
            Ok(buf)
        }
    }
}

/// Runs the whole grid; cells execute in parallel but rows keep
/// `(T, p, trial)` order.
pub fn run_bench(spec: &BenchSpec) -> Result<Vec<BenchRow>, String> {
    spec.validate()?;
    let mut cells = Vec::new();
    for &t in &spec.set_sizes {
        for &p in &spec.precisions {
            for trial in 0..spec.trials {
                cells.push((t, p, trial));
            }
        }
    }
    let rows: Vec<BenchRow> = cells
        .par_iter()
        .map(|&(set_size, precision, trial)| {
            let outcome = trial_payload(&spec.input, trial)
                .and_then(|payload| run_cell(&payload, set_size, precision, spec.m_profile));
            BenchRow {
                set_size,
                precision,
                trial,
                outcome,
            }
        })
        .collect();
    Ok(rows)
}

/// CSV rendering; the generator name and seed ride in a comment line so the
/// run can be reproduced from the file alone.
pub fn render_csv(spec: &BenchSpec, rows: &[BenchRow]) -> String {
    let mut out = String::new();
    match &spec.input {
        InputSource::File(path) => {
            writeln!(out, "# input=file:{}", path.display()).unwrap();
        }
        InputSource::Random { bytes, seed } => {
            writeln!(out, "# input=random,rng=chacha8,seed={seed},bytes={bytes}").unwrap();
        }
    }
    writeln!(
        out,
        "T,p,trial,original_bytes,compressed_bytes,cr,rmse"
    )
    .unwrap();
    for row in rows {
        match &row.outcome {
            Ok(m) => {
                let cr = format_ratio(m.original_bytes, m.compressed_bytes)
                    .unwrap_or_else(|_| "0.00".into());
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    row.set_size,
                    row.precision,
                    row.trial,
                    m.original_bytes,
                    m.compressed_bytes,
                    cr,
                    m.rmse.to_scientific(3)
                )
                .unwrap();
            }
            Err(e) => {
                writeln!(
                    out,
                    "{},{},{},,,,ERROR:{}",
                    row.set_size,
                    row.precision,
                    row.trial,
                    e.replace(['\n', ','], " ")
                )
                .unwrap();
            }
        }
    }
    out
}

/// Median by exact value comparison; even counts take the lower middle.
pub fn median_rmse(values: &mut [Rmse]) -> Option<Rmse> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(|a, b| a.cmp_value(b));
    Some(values[(values.len() - 1) / 2].clone())
}
