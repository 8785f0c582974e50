//! Exact repunit arithmetic and finite-precision base-D logarithms.
//!
//! Each digit set is reduced against a default number `D` made of all nines:
//! `s = m*D + r`. The residue is stored as `log_D(r)` rounded to `p`
//! fraction digits and recovered with `round(D^L)`. Guard digits on the
//! internal fixed-point evaluation keep the stored value within one ulp of
//! the true rounding and make residue recovery exact whenever
//! `p >= nines + 5`.

mod fixed;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::CodecError;
pub use fixed::{decimal_digits, pow10, FixedCtx};

/// Arbitrary-size non-negative integer carried as decimal digits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GiantNumber(BigUint);

impl GiantNumber {
    pub fn zero() -> Self {
        GiantNumber(BigUint::zero())
    }

    /// Builds from big-endian decimal digits (values 0..=9).
    pub fn from_decimal_digits(digits: &[u8]) -> Result<Self, CodecError> {
        for (i, &d) in digits.iter().enumerate() {
            if d > 9 {
                return Err(CodecError::InvalidDigit {
                    digit: d,
                    position: i,
                });
            }
        }
        Ok(GiantNumber(
            BigUint::from_radix_be(digits, 10).unwrap_or_default(),
        ))
    }

    /// Big-endian decimal digits, no leading zeros (a lone 0 for zero).
    pub fn to_decimal_digits(&self) -> Vec<u8> {
        self.0.to_radix_be(10)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn digit_count(&self) -> usize {
        decimal_digits(&self.0)
    }
}

impl From<BigUint> for GiantNumber {
    fn from(v: BigUint) -> Self {
        GiantNumber(v)
    }
}

impl From<u64> for GiantNumber {
    fn from(v: u64) -> Self {
        GiantNumber(BigUint::from(v))
    }
}

impl fmt::Display for GiantNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The repunit-of-nines subtrahend and logarithm base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultNumber {
    nines: usize,
    value: BigUint,
}

impl DefaultNumber {
    /// `nines` digits of 9, i.e. `10^nines - 1`. Requires `nines >= 1`.
    pub fn new(nines: usize) -> Self {
        assert!(nines >= 1, "default number needs at least one digit");
        DefaultNumber {
            nines,
            value: pow10(nines) - BigUint::one(),
        }
    }

    /// Default number for a digit set of the given length (one digit fewer).
    pub fn for_set_len(len: usize) -> Self {
        assert!(len >= 2, "single-digit sets are stored verbatim");
        Self::new(len - 1)
    }

    pub fn nines(&self) -> usize {
        self.nines
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }
}

/// A logarithm value in `[0, 1)` held as exactly `p` decimal fraction
/// digits after an implicit `0.`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogFraction {
    digits: Vec<u8>,
}

impl LogFraction {
    pub fn from_digits(digits: Vec<u8>) -> Result<Self, CodecError> {
        if digits.is_empty() {
            return Err(CodecError::Domain("log fraction needs at least 1 digit"));
        }
        for (i, &d) in digits.iter().enumerate() {
            if d > 9 {
                return Err(CodecError::InvalidDigit {
                    digit: d,
                    position: i,
                });
            }
        }
        Ok(LogFraction { digits })
    }

    pub fn zeros(precision: usize) -> Self {
        LogFraction {
            digits: alloc::vec![0; precision],
        }
    }

    pub fn all_nines(precision: usize) -> Self {
        LogFraction {
            digits: alloc::vec![9; precision],
        }
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// The fraction as an integer numerator over `10^p`.
    pub fn numerator(&self) -> BigUint {
        BigUint::from_radix_be(&self.digits, 10).unwrap_or_default()
    }
}

impl fmt::Display for LogFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// `s = m*D + r` with `0 <= r < D`; the subtraction count and residue.
pub fn divmod_default(s: &GiantNumber, d: &DefaultNumber) -> Result<(u64, GiantNumber), CodecError> {
    if s.is_zero() {
        return Err(CodecError::Domain("divmod needs s >= 1"));
    }
    let (q, r) = num_integer::Integer::div_rem(s.as_biguint(), d.value());
    let m: u64 = q
        .try_into()
        .map_err(|_| CodecError::Domain("subtraction count exceeds u64"))?;
    Ok((m, GiantNumber(r)))
}

/// `r + m*D`, exact.
pub fn add_multiples(r: &GiantNumber, m: u64, d: &DefaultNumber) -> GiantNumber {
    GiantNumber(r.as_biguint() + d.value() * BigUint::from(m))
}

/// Guard digits carried beyond the target precision of a stored logarithm.
const LOG_GUARD: usize = 20;
/// Guard digits for exponentiation beyond the magnitude of the result.
const EXP_GUARD: usize = 16;

/// Computes base-D logarithms of residues at a fixed precision, with the
/// base's natural log cached. Immutable after construction; share freely
/// across threads.
pub struct LogEncoder {
    ctx: FixedCtx,
    ln_d: BigUint,
    precision: usize,
}

impl LogEncoder {
    pub fn new(d: &DefaultNumber, precision: usize) -> Self {
        assert!(precision >= 1);
        let ctx = FixedCtx::new(precision + LOG_GUARD);
        let ln_d = ctx.ln_int(d.value());
        LogEncoder {
            ctx,
            ln_d,
            precision,
        }
    }

    /// `round_p(ln r / ln D)` for `1 <= r < D`.
    pub fn log(&self, r: &GiantNumber, d: &DefaultNumber) -> Result<LogFraction, CodecError> {
        if r.is_zero() {
            return Err(CodecError::Domain("log of zero; use the r-zero sentinel"));
        }
        if r.as_biguint() >= d.value() {
            return Err(CodecError::Domain("residue must be below the base"));
        }
        let ln_r = self.ctx.ln_int(r.as_biguint());
        let q = self.ctx.div(&ln_r, &self.ln_d);
        LogFraction::from_digits(self.ctx.round_fraction(&q, self.precision))
    }
}

/// Recovers integers from stored base-D logarithms: `round(D^L)`, clamped
/// to `[1, D-1]`. Immutable after construction.
pub struct LogDecoder {
    ctx: FixedCtx,
    ln_d: BigUint,
}

impl LogDecoder {
    pub fn new(d: &DefaultNumber, precision: usize) -> Self {
        // enough working digits that rounding to the nearest integer is
        // exact for the stored p-digit fraction
        let w = core::cmp::max(precision, d.nines()) + EXP_GUARD;
        let ctx = FixedCtx::new(w);
        let ln_d = ctx.ln_int(d.value());
        LogDecoder { ctx, ln_d }
    }

    /// `round(D^L)` clamped to `[1, D-1]`.
    pub fn antilog(&self, l: &LogFraction, d: &DefaultNumber) -> GiantNumber {
        let p = l.precision();
        debug_assert!(p <= self.ctx.w);
        let l_fp = l.numerator() * pow10(self.ctx.w - p);
        let y = self.ctx.mul(&l_fp, &self.ln_d);
        let e = self.ctx.exp(&y);
        let rounded = (e + (&self.ctx.scale >> 1)) / &self.ctx.scale;
        let one = BigUint::one();
        let max = d.value() - &one;
        let clamped = if rounded < one {
            one
        } else if rounded > max {
            max
        } else {
            rounded
        };
        GiantNumber(clamped)
    }
}

/// One-shot form of [`LogEncoder::log`].
pub fn log_base_default(
    r: &GiantNumber,
    d: &DefaultNumber,
    precision: usize,
) -> Result<LogFraction, CodecError> {
    LogEncoder::new(d, precision).log(r, d)
}

/// One-shot form of [`LogDecoder::antilog`].
pub fn antilog_default(l: &LogFraction, d: &DefaultNumber) -> GiantNumber {
    LogDecoder::new(d, l.precision()).antilog(l, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn giant(v: u64) -> GiantNumber {
        GiantNumber::from(v)
    }

    #[test]
    fn divmod_worked_example() {
        let d = DefaultNumber::new(3);
        let (m, r) = divmod_default(&giant(5324), &d).unwrap();
        assert_eq!(m, 5);
        assert_eq!(r, giant(329));
    }

    #[test]
    fn divmod_exact_multiple() {
        let d = DefaultNumber::new(3);
        let (m, r) = divmod_default(&giant(1998), &d).unwrap();
        assert_eq!(m, 2);
        assert!(r.is_zero());
    }

    #[test]
    fn divmod_small() {
        let d = DefaultNumber::new(2);
        assert_eq!(divmod_default(&giant(100), &d).unwrap(), (1, giant(1)));
    }

    #[test]
    fn divmod_rejects_zero() {
        let d = DefaultNumber::new(3);
        assert!(divmod_default(&GiantNumber::zero(), &d).is_err());
    }

    #[test]
    fn add_multiples_inverts_divmod() {
        let d = DefaultNumber::new(3);
        assert_eq!(add_multiples(&giant(329), 5, &d), giant(5324));
        assert_eq!(add_multiples(&GiantNumber::zero(), 1, &d), giant(999));
        assert_eq!(add_multiples(&giant(1), 0, &d), giant(1));
    }

    #[test]
    fn log_of_one_is_zero() {
        let d = DefaultNumber::new(3);
        let l = log_base_default(&giant(1), &d, 6).unwrap();
        assert_eq!(l.digits(), &[0, 0, 0, 0, 0, 0]);
        assert!(l.is_zero());
    }

    #[test]
    fn log_matches_reference_rounding() {
        // ln 329 / ln 999 = 0.83918684483821908...
        let d = DefaultNumber::new(3);
        let l = log_base_default(&giant(329), &d, 6).unwrap();
        assert_eq!(l.digits(), &[8, 3, 9, 1, 8, 7]);
        let l10 = log_base_default(&giant(329), &d, 10).unwrap();
        assert_eq!(l10.digits(), &[8, 3, 9, 1, 8, 6, 8, 4, 4, 8]);
    }

    #[test]
    fn log_near_base_starts_with_nine() {
        let d = DefaultNumber::new(3);
        let l = log_base_default(&giant(998), &d, 8).unwrap();
        assert_eq!(l.digits()[0], 9);
    }

    #[test]
    fn log_rejects_out_of_domain() {
        let d = DefaultNumber::new(3);
        assert!(log_base_default(&giant(999), &d, 4).is_err());
        assert!(log_base_default(&GiantNumber::zero(), &d, 4).is_err());
    }

    #[test]
    fn antilog_of_zero_fraction_is_one() {
        let d = DefaultNumber::new(3);
        assert_eq!(antilog_default(&LogFraction::zeros(8), &d), giant(1));
    }

    #[test]
    fn antilog_recovers_worked_residue() {
        let d = DefaultNumber::new(3);
        let l = log_base_default(&giant(329), &d, 10).unwrap();
        assert_eq!(antilog_default(&l, &d), giant(329));
    }

    #[test]
    fn low_precision_antilog_rounds_the_true_power() {
        // log_99(50) at p=2 is 0.85 and 99^0.85 = 49.69..., which still
        // rounds back to 50
        let d = DefaultNumber::new(2);
        let l = log_base_default(&giant(50), &d, 2).unwrap();
        assert_eq!(l.digits(), &[8, 5]);
        assert_eq!(antilog_default(&l, &d), giant(50));
    }

    #[test]
    fn low_precision_loses_information() {
        // at p=2 many residues in [1, 98] collide after rounding
        let d = DefaultNumber::new(2);
        let enc = LogEncoder::new(&d, 2);
        let dec = LogDecoder::new(&d, 2);
        let mut mismatches = 0;
        for r in 1u64..=98 {
            let l = enc.log(&giant(r), &d).unwrap();
            if dec.antilog(&l, &d) != giant(r) {
                mismatches += 1;
            }
        }
        assert!(mismatches > 0, "p=2 over D=99 cannot be lossless");
    }

    #[test]
    fn log_is_monotonic() {
        let d = DefaultNumber::new(3);
        let enc = LogEncoder::new(&d, 6);
        let mut prev = BigUint::zero();
        for r in 1u64..=998 {
            let l = enc.log(&giant(r), &d).unwrap();
            let n = l.numerator();
            assert!(n >= prev, "log not monotone at r={r}");
            prev = n;
        }
    }

    #[test]
    fn giant_digit_roundtrip() {
        let g = GiantNumber::from_decimal_digits(&[5, 3, 2, 4]).unwrap();
        assert_eq!(g, giant(5324));
        assert_eq!(g.to_decimal_digits(), vec![5, 3, 2, 4]);
        assert!(GiantNumber::from_decimal_digits(&[5, 12]).is_err());
    }
}
