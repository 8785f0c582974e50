//! The end-to-end pipeline: set decomposition, the per-set log matrix,
//! and reconstruction with digit repair.
//!
//! Each set of `L >= 2` digits is reduced against the default number with
//! `L - 1` nines; what is kept is the subtraction count and the residue's
//! base-D log at `p` fraction digits. Single-digit sets (only ever the final
//! set) are stored verbatim. Reconstruction is total: out-of-alphabet digits
//! produced by lossy rounding are rewritten by a deterministic repair pass
//! before the inverse run-length and pair-mapping stages run.

use alloc::vec::Vec;

use crate::bits::BitSequence;
use crate::error::CodecError;
use crate::numeric::{
    add_multiples, divmod_default, DefaultNumber, GiantNumber, LogDecoder, LogEncoder, LogFraction,
};
use crate::sequence::{self, RleDigits};

/// How the multiplier row of the matrix is stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MultiplierProfile {
    /// The subtraction count as a small integer.
    #[default]
    Raw,
    /// `log_D(m)` at the same precision as the residue log. Recovering a
    /// multiplier from its log needs roughly as many fraction digits as the
    /// default number has nines, so this profile is lossy at practical
    /// precisions.
    Log,
}

/// Codec parameters: the set size threshold and the stored log precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecParams {
    pub set_size: usize,
    pub precision: usize,
    pub m_profile: MultiplierProfile,
}

impl CodecParams {
    pub fn new(set_size: usize, precision: usize, m_profile: MultiplierProfile) -> Self {
        assert!(set_size >= 2, "set size must be at least 2");
        assert!(precision >= 1, "precision must be at least 1");
        CodecParams {
            set_size,
            precision,
            m_profile,
        }
    }

    /// Precision at or above which reconstruction is exact for this set size.
    pub fn lossless_precision(set_size: usize) -> usize {
        set_size + 5
    }
}

impl Default for CodecParams {
    fn default() -> Self {
        CodecParams::new(300, 12, MultiplierProfile::Raw)
    }
}

/// One column of the compressed matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetRecord {
    pub digit_len: usize,
    /// Present iff `digit_len == 1`; the set passes through unreduced.
    pub verbatim_digit: Option<u8>,
    /// Subtraction count; always kept raw on the record even when the log
    /// profile stores it as a fraction on the wire.
    pub multiplier: u64,
    /// `log_D(m)`, present in the log profile only.
    pub multiplier_log: Option<LogFraction>,
    /// Set when the residue was exactly zero (the set is a multiple of D).
    pub r_is_zero: bool,
    /// `log_D(r)`; all zeros when `r_is_zero` is set. `None` for verbatim
    /// records.
    pub residue_log: Option<LogFraction>,
}

/// The compressed representation: one record per set, in input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LogMatrix {
    pub records: Vec<SetRecord>,
}

impl LogMatrix {
    pub fn set_count(&self) -> usize {
        self.records.len()
    }

    /// Total digit count of the underlying run-length stream.
    pub fn stream_len(&self) -> usize {
        self.records.iter().map(|r| r.digit_len).sum()
    }
}

/// The complete compressed form of one input, ready for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Archive {
    pub params: CodecParams,
    pub odd_pad: bool,
    pub original_bit_len: u64,
    pub mapped_digit_len: u64,
    pub matrix: LogMatrix,
}

impl Archive {
    pub fn last_set_digit_len(&self) -> usize {
        self.matrix.records.last().map_or(0, |r| r.digit_len)
    }
}

/// Splits the stream into consecutive chunks of exactly `set_size` digits,
/// with a shorter final chunk when the length is not a multiple.
pub fn decompose_sets(stream: &RleDigits, set_size: usize) -> Vec<Vec<u8>> {
    assert!(set_size >= 2);
    stream
        .digits
        .chunks(set_size)
        .map(<[u8]>::to_vec)
        .collect()
}

/// Concatenates reconstructed sets back into the titan digit string.
pub fn assemble_titan(sets: &[Vec<u8>]) -> Vec<u8> {
    let mut out = Vec::with_capacity(sets.iter().map(Vec::len).sum());
    for s in sets {
        out.extend_from_slice(s);
    }
    out
}

/// Compresses individual sets against a shared, precomputed log encoder.
/// Immutable after construction; sets may be processed from any thread as
/// long as results are collected in set order.
pub struct SetCompressor {
    params: CodecParams,
    full_d: DefaultNumber,
    full_enc: LogEncoder,
}

impl SetCompressor {
    pub fn new(params: CodecParams) -> Self {
        let full_d = DefaultNumber::for_set_len(params.set_size);
        let full_enc = LogEncoder::new(&full_d, params.precision);
        SetCompressor {
            params,
            full_d,
            full_enc,
        }
    }

    pub fn compress_set(&self, digits: &[u8]) -> Result<SetRecord, CodecError> {
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 || d > 9 {
                return Err(CodecError::InvalidDigit {
                    digit: d,
                    position: i,
                });
            }
        }
        if digits.is_empty() {
            return Err(CodecError::Domain("empty set"));
        }
        if digits.len() == 1 {
            return Ok(SetRecord {
                digit_len: 1,
                verbatim_digit: Some(digits[0]),
                multiplier: 0,
                multiplier_log: None,
                r_is_zero: false,
                residue_log: None,
            });
        }
        let one_off;
        let (d, enc) = if digits.len() == self.params.set_size {
            (&self.full_d, &self.full_enc)
        } else {
            let d = DefaultNumber::for_set_len(digits.len());
            let enc = LogEncoder::new(&d, self.params.precision);
            one_off = (d, enc);
            (&one_off.0, &one_off.1)
        };
        let value = GiantNumber::from_decimal_digits(digits)?;
        let (m, r) = divmod_default(&value, d)?;
        let (r_is_zero, residue_log) = if r.is_zero() {
            (true, LogFraction::zeros(self.params.precision))
        } else {
            (false, enc.log(&r, d)?)
        };
        let multiplier_log = match self.params.m_profile {
            MultiplierProfile::Raw => None,
            MultiplierProfile::Log => Some(log_of_multiplier(m, d, enc, self.params.precision)?),
        };
        Ok(SetRecord {
            digit_len: digits.len(),
            verbatim_digit: None,
            multiplier: m,
            multiplier_log,
            r_is_zero,
            residue_log: Some(residue_log),
        })
    }
}

/// `log_D(m)` for the multiplier row. A two-digit set can have `m` up to 11,
/// which exceeds `D = 9`; its log is then at least 1 and is clamped to all
/// nines, one more way the log profile loses information.
fn log_of_multiplier(
    m: u64,
    d: &DefaultNumber,
    enc: &LogEncoder,
    precision: usize,
) -> Result<LogFraction, CodecError> {
    let m_giant = GiantNumber::from(m);
    if m_giant.as_biguint() >= d.value() {
        return Ok(LogFraction::all_nines(precision));
    }
    enc.log(&m_giant, d)
}

/// Reduces every set in order; the compressed matrix.
pub fn compress_sets(sets: &[Vec<u8>], params: &CodecParams) -> Result<LogMatrix, CodecError> {
    let compressor = SetCompressor::new(*params);
    let records = sets
        .iter()
        .map(|s| compressor.compress_set(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LogMatrix { records })
}

/// Rebuilds individual sets from their records; the mirror of
/// [`SetCompressor`].
pub struct SetReconstructor {
    params: CodecParams,
    full_d: DefaultNumber,
    full_dec: LogDecoder,
}

impl SetReconstructor {
    pub fn new(params: CodecParams) -> Self {
        let full_d = DefaultNumber::for_set_len(params.set_size);
        let full_dec = LogDecoder::new(&full_d, params.precision);
        SetReconstructor {
            params,
            full_d,
            full_dec,
        }
    }

    /// Always yields exactly `digit_len` digits: short values are left-padded
    /// with 0 and over-long values keep their least significant digits.
    pub fn reconstruct_set(&self, record: &SetRecord) -> Vec<u8> {
        if let Some(d) = record.verbatim_digit {
            return alloc::vec![d];
        }
        let one_off;
        let (d, dec) = if record.digit_len == self.params.set_size {
            (&self.full_d, &self.full_dec)
        } else {
            let d = DefaultNumber::for_set_len(record.digit_len);
            let dec = LogDecoder::new(&d, self.params.precision);
            one_off = (d, dec);
            (&one_off.0, &one_off.1)
        };
        let residue = if record.r_is_zero {
            GiantNumber::zero()
        } else {
            let log = record.residue_log.as_ref().expect("reduced record");
            dec.antilog(log, d)
        };
        let multiplier = match (&self.params.m_profile, &record.multiplier_log) {
            (MultiplierProfile::Log, Some(l)) => {
                let m = dec.antilog(l, d);
                m.as_biguint().try_into().unwrap_or(u64::MAX)
            }
            _ => record.multiplier,
        };
        let value = add_multiples(&residue, multiplier, d);
        let mut digits = value.to_decimal_digits();
        if digits.len() > record.digit_len {
            digits.drain(..digits.len() - record.digit_len);
        }
        while digits.len() < record.digit_len {
            digits.insert(0, 0);
        }
        digits
    }
}

/// Rebuilds every set in order.
pub fn reconstruct_sets(matrix: &LogMatrix, params: &CodecParams) -> Vec<Vec<u8>> {
    let reconstructor = SetReconstructor::new(*params);
    matrix
        .records
        .iter()
        .map(|r| reconstructor.reconstruct_set(r))
        .collect()
}

/// One length-preserving pass of the repair table: a `1` opening a
/// well-formed `1xn1` token is kept along with the token; an unparseable `1`
/// and any `0` become `2`; `6..9` outside a token's count position become
/// `5`; `2..5` pass through.
fn repair_pass(digits: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(digits.len());
    let mut i = 0;
    while i < digits.len() {
        match digits[i] {
            1 => {
                if i + 3 < digits.len()
                    && (2..=5).contains(&digits[i + 1])
                    && (5..=9).contains(&digits[i + 2])
                    && digits[i + 3] == 1
                {
                    out.extend_from_slice(&digits[i..i + 4]);
                    i += 4;
                } else {
                    out.push(2);
                    i += 1;
                }
            }
            0 => {
                out.push(2);
                i += 1;
            }
            d @ 2..=5 => {
                out.push(d);
                i += 1;
            }
            _ => {
                out.push(5);
                i += 1;
            }
        }
    }
    out
}

/// Deterministic repair of a possibly loss-corrupted digit string into a
/// valid run-length stream of exactly `expected_len` digits. Valid input of
/// the right length is a fixed point.
pub fn repair_digits(raw: &[u8], expected_len: usize) -> RleDigits {
    let mut digits = repair_pass(raw);
    if digits.len() > expected_len {
        digits.truncate(expected_len);
        // truncation can cut a trailing token in half; one more pass turns
        // the orphaned sentinel digits back into literals
        digits = repair_pass(&digits);
    }
    digits.resize(expected_len, 2);
    RleDigits { digits }
}

/// The full forward pipeline: pair mapping, run-length tokenization, set
/// decomposition, and per-set log reduction.
pub fn compress(input: &BitSequence, params: &CodecParams) -> Result<Archive, CodecError> {
    let mapped = sequence::map_bits(input);
    let rle = sequence::rle_encode(&mapped);
    let sets = decompose_sets(&rle, params.set_size);
    let matrix = compress_sets(&sets, params)?;
    Ok(Archive {
        params: *params,
        odd_pad: mapped.odd_pad,
        original_bit_len: input.len() as u64,
        mapped_digit_len: mapped.digits.len() as u64,
        matrix,
    })
}

/// The full inverse pipeline; total for any structurally valid archive, and
/// always yields exactly the recorded original bit length.
pub fn decompress(archive: &Archive) -> BitSequence {
    let sets = reconstruct_sets(&archive.matrix, &archive.params);
    let titan = assemble_titan(&sets);
    let rle = repair_digits(&titan, archive.matrix.stream_len());
    let mut mapped = sequence::rle_decode(&rle).expect("repair yields a valid stream");
    mapped.odd_pad = archive.odd_pad;
    let mut bits = sequence::unmap_digits(&mapped).expect("rle_decode yields mapped digits");
    bits.resize(archive.original_bit_len as usize);
    bits
}
