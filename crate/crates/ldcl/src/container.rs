//! The `.ldcl` archive format.
//!
//! Layout, all integers big-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "LDCL"
//! 4       1     version (1)
//! 5       1     flags: bit0 odd-pad, bit1 log multiplier profile
//! 6       4     set size T
//! 10      2     precision p
//! 12      8     original bit length
//! 20      8     mapped digit length
//! 28      4     set count n
//! 32      4     final set digit length (0 when n == 0)
//! 36      ...   n set records
//! end     4     CRC32 of all preceding bytes
//! ```
//!
//! Each record starts with one multiplier byte: low four bits carry the
//! subtraction count, bit 7 flags a zero residue, and the value `0xFF`
//! marks a verbatim single-digit final set. A verbatim record is followed
//! by one ASCII digit; any other record by the `p` ASCII fraction digits of
//! the residue log, plus another `p` digits for the multiplier log under
//! the log profile. One byte per decimal digit keeps the format auditable;
//! denser packing is out of scope.

use std::io::{Read, Write};

use ldcl_core::matrix::{Archive, CodecParams, LogMatrix, MultiplierProfile, SetRecord};
use ldcl_core::numeric::LogFraction;

pub const MAGIC: [u8; 4] = *b"LDCL";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 36;

const FLAG_ODD_PAD: u8 = 0b01;
const FLAG_M_LOG: u8 = 0b10;
const M_BYTE_VERBATIM: u8 = 0xFF;
const M_BYTE_R_ZERO: u8 = 0x80;

#[derive(Debug, thiserror::Error)]
pub enum ContainerError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("not an ldcl archive (bad magic)")]
    BadMagic,
    #[error("unsupported version {0}")]
    UnsupportedVersion(u8),
    #[error("archive truncated")]
    Truncated,
    #[error("crc mismatch: stored {stored:08x}, computed {computed:08x}")]
    CrcMismatch { stored: u32, computed: u32 },
    #[error("field out of range: {0}")]
    FieldRange(&'static str),
    #[error("invalid record: {0}")]
    InvalidRecord(&'static str),
}

/// Exact serialized size in bytes, as used for compression-ratio reports.
pub fn archive_size(archive: &Archive) -> u64 {
    let p = archive.params.precision as u64;
    let per_log = match archive.params.m_profile {
        MultiplierProfile::Raw => 0,
        MultiplierProfile::Log => p,
    };
    let records: u64 = archive
        .matrix
        .records
        .iter()
        .map(|r| {
            if r.verbatim_digit.is_some() {
                2
            } else {
                1 + p + per_log
            }
        })
        .sum();
    HEADER_LEN as u64 + records + 4
}

fn fraction_ascii(l: &LogFraction) -> Vec<u8> {
    l.digits().iter().map(|d| d + b'0').collect()
}

/// Serializes header, records, and CRC trailer; returns total bytes written.
pub fn write_archive(archive: &Archive, sink: &mut dyn Write) -> Result<u64, ContainerError> {
    let mut buf: Vec<u8> = Vec::with_capacity(archive_size(archive) as usize);
    buf.extend_from_slice(&MAGIC);
    buf.push(VERSION);
    let mut flags = 0u8;
    if archive.odd_pad {
        flags |= FLAG_ODD_PAD;
    }
    if archive.params.m_profile == MultiplierProfile::Log {
        flags |= FLAG_M_LOG;
    }
    buf.push(flags);
    let t = u32::try_from(archive.params.set_size)
        .map_err(|_| ContainerError::FieldRange("set size"))?;
    buf.extend_from_slice(&t.to_be_bytes());
    let p = u16::try_from(archive.params.precision)
        .map_err(|_| ContainerError::FieldRange("precision"))?;
    buf.extend_from_slice(&p.to_be_bytes());
    buf.extend_from_slice(&archive.original_bit_len.to_be_bytes());
    buf.extend_from_slice(&archive.mapped_digit_len.to_be_bytes());
    let n = u32::try_from(archive.matrix.set_count())
        .map_err(|_| ContainerError::FieldRange("set count"))?;
    buf.extend_from_slice(&n.to_be_bytes());
    let last = u32::try_from(archive.last_set_digit_len())
        .map_err(|_| ContainerError::FieldRange("final set length"))?;
    buf.extend_from_slice(&last.to_be_bytes());
    debug_assert_eq!(buf.len(), HEADER_LEN);

    for rec in &archive.matrix.records {
        if let Some(d) = rec.verbatim_digit {
            buf.push(M_BYTE_VERBATIM);
            buf.push(d + b'0');
            continue;
        }
        if rec.multiplier > 0x0F {
            return Err(ContainerError::FieldRange("multiplier"));
        }
        let mut m_byte = rec.multiplier as u8;
        if rec.r_is_zero {
            m_byte |= M_BYTE_R_ZERO;
        }
        buf.push(m_byte);
        let log = rec
            .residue_log
            .as_ref()
            .ok_or(ContainerError::InvalidRecord("missing residue log"))?;
        buf.extend_from_slice(&fraction_ascii(log));
        if archive.params.m_profile == MultiplierProfile::Log {
            let ml = rec
                .multiplier_log
                .as_ref()
                .ok_or(ContainerError::InvalidRecord("missing multiplier log"))?;
            buf.extend_from_slice(&fraction_ascii(ml));
        }
    }

    let crc = crc32fast::hash(&buf);
    buf.extend_from_slice(&crc.to_be_bytes());
    sink.write_all(&buf)?;
    Ok(buf.len() as u64)
}

fn take<'a>(buf: &'a [u8], pos: &mut usize, len: usize) -> Result<&'a [u8], ContainerError> {
    if buf.len() < *pos + len {
        return Err(ContainerError::Truncated);
    }
    let s = &buf[*pos..*pos + len];
    *pos += len;
    Ok(s)
}

fn parse_fraction(bytes: &[u8]) -> Result<LogFraction, ContainerError> {
    let mut digits = Vec::with_capacity(bytes.len());
    for &b in bytes {
        if !b.is_ascii_digit() {
            return Err(ContainerError::InvalidRecord("non-digit payload byte"));
        }
        digits.push(b - b'0');
    }
    LogFraction::from_digits(digits)
        .map_err(|_| ContainerError::InvalidRecord("empty log fraction"))
}

/// Exact inverse of [`write_archive`]; validates magic, version, field
/// ranges, and the CRC trailer.
pub fn read_archive(source: &mut dyn Read) -> Result<Archive, ContainerError> {
    let mut raw = Vec::new();
    source.read_to_end(&mut raw)?;
    let mut pos = 0usize;

    let header = take(&raw, &mut pos, HEADER_LEN)?;
    if header[0..4] != MAGIC {
        return Err(ContainerError::BadMagic);
    }
    if header[4] != VERSION {
        return Err(ContainerError::UnsupportedVersion(header[4]));
    }
    let flags = header[5];
    if flags & !(FLAG_ODD_PAD | FLAG_M_LOG) != 0 {
        return Err(ContainerError::FieldRange("flags"));
    }
    let set_size = u32::from_be_bytes(header[6..10].try_into().unwrap()) as usize;
    let precision = u16::from_be_bytes(header[10..12].try_into().unwrap()) as usize;
    let original_bit_len = u64::from_be_bytes(header[12..20].try_into().unwrap());
    let mapped_digit_len = u64::from_be_bytes(header[20..28].try_into().unwrap());
    let set_count = u32::from_be_bytes(header[28..32].try_into().unwrap()) as usize;
    let last_len = u32::from_be_bytes(header[32..36].try_into().unwrap()) as usize;

    if set_size < 2 {
        return Err(ContainerError::FieldRange("set size"));
    }
    if precision < 1 {
        return Err(ContainerError::FieldRange("precision"));
    }
    if set_count > 0 && (last_len < 1 || last_len > set_size) {
        return Err(ContainerError::FieldRange("final set length"));
    }
    if set_count == 0 && last_len != 0 {
        return Err(ContainerError::FieldRange("final set length"));
    }
    if mapped_digit_len != original_bit_len.div_ceil(2) {
        return Err(ContainerError::FieldRange("mapped digit length"));
    }
    let m_profile = if flags & FLAG_M_LOG != 0 {
        MultiplierProfile::Log
    } else {
        MultiplierProfile::Raw
    };

    let mut records = Vec::with_capacity(set_count);
    for i in 0..set_count {
        let is_last = i + 1 == set_count;
        let digit_len = if is_last { last_len } else { set_size };
        let m_byte = take(&raw, &mut pos, 1)?[0];
        if m_byte == M_BYTE_VERBATIM {
            if digit_len != 1 {
                return Err(ContainerError::InvalidRecord(
                    "verbatim record on a multi-digit set",
                ));
            }
            let b = take(&raw, &mut pos, 1)?[0];
            if !b.is_ascii_digit() {
                return Err(ContainerError::InvalidRecord("verbatim byte not a digit"));
            }
            records.push(SetRecord {
                digit_len: 1,
                verbatim_digit: Some(b - b'0'),
                multiplier: 0,
                multiplier_log: None,
                r_is_zero: false,
                residue_log: None,
            });
            continue;
        }
        if digit_len == 1 {
            return Err(ContainerError::InvalidRecord(
                "single-digit set must be verbatim",
            ));
        }
        if m_byte & !(M_BYTE_R_ZERO | 0x0F) != 0 {
            return Err(ContainerError::InvalidRecord("reserved multiplier bits"));
        }
        let r_is_zero = m_byte & M_BYTE_R_ZERO != 0;
        let multiplier = u64::from(m_byte & 0x0F);
        let residue_log = parse_fraction(take(&raw, &mut pos, precision)?)?;
        if r_is_zero && !residue_log.is_zero() {
            return Err(ContainerError::InvalidRecord(
                "zero-residue record with nonzero log",
            ));
        }
        let multiplier_log = match m_profile {
            MultiplierProfile::Raw => None,
            MultiplierProfile::Log => Some(parse_fraction(take(&raw, &mut pos, precision)?)?),
        };
        records.push(SetRecord {
            digit_len,
            verbatim_digit: None,
            multiplier,
            multiplier_log,
            r_is_zero,
            residue_log: Some(residue_log),
        });
    }

    let body_len = pos;
    let stored = u32::from_be_bytes(take(&raw, &mut pos, 4)?.try_into().unwrap());
    let computed = crc32fast::hash(&raw[..body_len]);
    if stored != computed {
        return Err(ContainerError::CrcMismatch { stored, computed });
    }

    Ok(Archive {
        params: CodecParams::new(set_size, precision, m_profile),
        odd_pad: flags & FLAG_ODD_PAD != 0,
        original_bit_len,
        mapped_digit_len,
        matrix: LogMatrix { records },
    })
}
