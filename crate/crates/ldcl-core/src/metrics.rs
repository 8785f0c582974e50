//! Compression-ratio and distortion measurement.
//!
//! The ratio is original size over compressed size. Distortion is the root
//! mean squared error between original and reconstructed per-set integer
//! values; set values reach hundreds of digits, so the sum of squares is
//! kept exact and the square root is extracted at arbitrary precision.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::CodecError;
use crate::numeric::{decimal_digits, pow10, GiantNumber};

/// Original size over compressed size.
pub fn compression_ratio(original_bytes: u64, compressed_bytes: u64) -> Result<f64, CodecError> {
    if compressed_bytes == 0 {
        return Err(CodecError::Domain("compressed size must be at least 1"));
    }
    Ok(original_bytes as f64 / compressed_bytes as f64)
}

/// The ratio rounded half-up to two decimals, as displayed in reports.
pub fn format_ratio(original_bytes: u64, compressed_bytes: u64) -> Result<String, CodecError> {
    if compressed_bytes == 0 {
        return Err(CodecError::Domain("compressed size must be at least 1"));
    }
    let a = original_bytes as u128;
    let b = compressed_bytes as u128;
    let scaled = (a * 200 + b) / (2 * b); // half-up at 2 decimals
    let mut s = String::new();
    write!(s, "{}.{:02}", scaled / 100, scaled % 100).unwrap();
    Ok(s)
}

/// Root mean squared error held exactly as a sum of squared differences
/// over a count; digits are extracted on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rmse {
    sum_sq: BigUint,
    count: usize,
}

/// RMSE over corresponding per-set integer values.
pub fn rmse(original: &[GiantNumber], reconstructed: &[GiantNumber]) -> Result<Rmse, CodecError> {
    if original.len() != reconstructed.len() {
        return Err(CodecError::LengthMismatch {
            left: original.len(),
            right: reconstructed.len(),
        });
    }
    if original.is_empty() {
        return Err(CodecError::Domain("rmse needs at least one pair"));
    }
    let mut sum_sq = BigUint::zero();
    for (l, t) in original.iter().zip(reconstructed) {
        let (l, t) = (l.as_biguint(), t.as_biguint());
        let diff = if l >= t { l - t } else { t - l };
        sum_sq += &diff * &diff;
    }
    Ok(Rmse {
        sum_sq,
        count: original.len(),
    })
}

impl Rmse {
    pub fn zero(count: usize) -> Self {
        Rmse {
            sum_sq: BigUint::zero(),
            count: count.max(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sum_sq.is_zero()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Exact value comparison via cross-multiplied squares.
    pub fn cmp_value(&self, other: &Rmse) -> Ordering {
        let left = &self.sum_sq * BigUint::from(other.count);
        let right = &other.sum_sq * BigUint::from(self.count);
        left.cmp(&right)
    }

    /// Leading significant digits and the power-of-ten exponent, so that
    /// the value is `0.d1 d2 ... * 10^(exp+1)`. Digits are rounded half-up
    /// at the last place.
    pub fn significant_digits(&self, sig: usize) -> (Vec<u8>, i64) {
        assert!(sig >= 1);
        if self.is_zero() {
            return (alloc::vec![0; sig], 0);
        }
        // value = sqrt(sum_sq / count); scale so the integer square root
        // carries sig digits plus guard
        let guard = sig + 10;
        let scaled = (&self.sum_sq * pow10(2 * guard)) / BigUint::from(self.count);
        let root = scaled.sqrt(); // value * 10^guard, truncated
        let d = decimal_digits(&root);
        let exp = d as i64 - 1 - guard as i64;
        let digits = if d > sig {
            let unit = pow10(d - sig);
            let half = BigUint::from(5u32) * pow10(d - sig - 1);
            let mut rounded = (&root + half) / unit;
            // rounding can carry into one more digit (e.g. 999 -> 100E+1)
            if decimal_digits(&rounded) > sig {
                rounded /= BigUint::from(10u32);
                let mut v = rounded.to_radix_be(10);
                v.resize(sig, 0);
                return (v, exp + 1);
            }
            rounded.to_radix_be(10)
        } else {
            let mut v = root.to_radix_be(10);
            v.resize(sig, 0);
            v
        };
        (digits, exp)
    }

    /// Scientific notation in the `1.80E+296` style.
    pub fn to_scientific(&self, sig: usize) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let (digits, exp) = self.significant_digits(sig);
        let mut s = String::new();
        write!(s, "{}.", digits[0]).unwrap();
        for d in &digits[1..] {
            write!(s, "{d}").unwrap();
        }
        if exp >= 0 {
            write!(s, "E+{exp}").unwrap();
        } else {
            write!(s, "E{exp}").unwrap();
        }
        s
    }

    /// Approximate value for quick inspection; exact paths should use
    /// [`Rmse::cmp_value`] or [`Rmse::significant_digits`].
    pub fn to_f64(&self) -> f64 {
        let (digits, exp) = self.significant_digits(15);
        let mut mantissa = 0f64;
        for &d in &digits {
            mantissa = mantissa * 10.0 + f64::from(d);
        }
        mantissa * libm_pow10(exp - (digits.len() as i64 - 1))
    }
}

fn libm_pow10(e: i64) -> f64 {
    let mut r = 1f64;
    let base = if e >= 0 { 10f64 } else { 0.1f64 };
    for _ in 0..e.unsigned_abs() {
        r *= base;
    }
    r
}

/// Summary of one compression run.
#[derive(Debug, Clone)]
pub struct MetricsReport {
    pub original_bytes: u64,
    pub compressed_bytes: u64,
    pub set_count: usize,
    pub rmse: Rmse,
}

impl MetricsReport {
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let cr = format_ratio(self.original_bytes, self.compressed_bytes)
            .unwrap_or_else(|_| String::from("n/a"));
        writeln!(s, "original bytes:   {}", self.original_bytes).unwrap();
        writeln!(s, "compressed bytes: {}", self.compressed_bytes).unwrap();
        writeln!(s, "compression ratio: {cr}").unwrap();
        writeln!(s, "sets compared:    {}", self.rmse.count()).unwrap();
        writeln!(s, "set count:        {}", self.set_count).unwrap();
        writeln!(s, "rmse:             {}", self.rmse.to_scientific(3)).unwrap();
        s
    }

    pub fn render_csv(&self) -> String {
        let mut s = String::from("original_bytes,compressed_bytes,cr,set_count,v_size,rmse\n");
        let cr = format_ratio(self.original_bytes, self.compressed_bytes)
            .unwrap_or_else(|_| String::from("n/a"));
        writeln!(
            s,
            "{},{},{},{},{},{}",
            self.original_bytes,
            self.compressed_bytes,
            cr,
            self.set_count,
            self.rmse.count(),
            self.rmse.to_scientific(3)
        )
        .unwrap();
        s
    }
}
