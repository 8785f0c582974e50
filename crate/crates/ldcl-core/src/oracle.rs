//! Brute-force reference implementations for validating the optimized
//! codec at small scale. Test harness only; nothing here is fast.

use alloc::vec::Vec;

use crate::error::CodecError;
use crate::matrix::{compress_sets, reconstruct_sets, CodecParams, MultiplierProfile};
use crate::numeric::{DefaultNumber, GiantNumber};

/// Literal repeated subtraction: subtracts D until the value drops below D,
/// counting iterations. The long-division path must agree with this.
pub fn naive_subtract_count(
    s: &GiantNumber,
    d: &DefaultNumber,
) -> Result<(u64, GiantNumber), CodecError> {
    if s.is_zero() {
        return Err(CodecError::Domain("subtraction count needs s >= 1"));
    }
    let mut remaining = s.as_biguint().clone();
    let mut count = 0u64;
    while &remaining >= d.value() {
        remaining -= d.value();
        count += 1;
    }
    Ok((count, GiantNumber::from(remaining)))
}

/// Distortion tally from an exhaustive sweep over every digit set of a
/// given size.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoundtripReport {
    pub cases: usize,
    pub failures: usize,
    /// Count of cases per decimal magnitude of the absolute set-value
    /// error: index 0 is error 0, index k counts errors in
    /// `[10^(k-1), 10^k)`.
    pub error_histogram: Vec<usize>,
}

/// Runs every digit string of length `set_size` over `{1..9}` through set
/// compression and reconstruction at precision `p`.
pub fn exhaustive_roundtrip(set_size: usize, precision: usize) -> RoundtripReport {
    assert!(
        set_size <= 6,
        "exhaustive sweeps beyond 6 digits are not desk-scale"
    );
    let params = if set_size >= 2 {
        CodecParams::new(set_size, precision, MultiplierProfile::Raw)
    } else {
        CodecParams::new(2, precision, MultiplierProfile::Raw)
    };
    let mut report = RoundtripReport::default();
    let mut digits = alloc::vec![1u8; set_size];
    loop {
        let matrix = compress_sets(core::slice::from_ref(&digits), &params)
            .expect("digit sets over {1..9} are always compressible");
        let out = &reconstruct_sets(&matrix, &params)[0];
        report.cases += 1;
        let original = GiantNumber::from_decimal_digits(&digits).unwrap();
        let rebuilt = GiantNumber::from_decimal_digits(out).unwrap();
        let (o, r) = (original.as_biguint(), rebuilt.as_biguint());
        let err = if o >= r { o - r } else { r - o };
        let bucket = if num_traits::Zero::is_zero(&err) {
            0
        } else {
            report.failures += 1;
            crate::numeric::decimal_digits(&err)
        };
        if report.error_histogram.len() <= bucket {
            report.error_histogram.resize(bucket + 1, 0);
        }
        report.error_histogram[bucket] += 1;

        // next digit string over {1..9}, odometer-style
        let mut pos = set_size;
        loop {
            if pos == 0 {
                return report;
            }
            pos -= 1;
            if digits[pos] < 9 {
                digits[pos] += 1;
                break;
            }
            digits[pos] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_matches_examples() {
        let d = DefaultNumber::new(3);
        assert_eq!(
            naive_subtract_count(&GiantNumber::from(5324u64), &d).unwrap(),
            (5, GiantNumber::from(329u64))
        );
        assert_eq!(
            naive_subtract_count(&GiantNumber::from(100u64), &d).unwrap(),
            (0, GiantNumber::from(100u64))
        );
        assert_eq!(
            naive_subtract_count(&GiantNumber::from(999u64), &d).unwrap(),
            (1, GiantNumber::zero())
        );
    }

    #[test]
    fn verbatim_sets_never_fail() {
        let report = exhaustive_roundtrip(1, 1);
        assert_eq!(report.cases, 9);
        assert_eq!(report.failures, 0);
    }

    #[test]
    fn three_digit_sweep_is_exact_at_high_precision() {
        let report = exhaustive_roundtrip(3, 8);
        assert_eq!(report.cases, 729);
        assert_eq!(report.failures, 0, "histogram {:?}", report.error_histogram);
    }

    #[test]
    fn three_digit_sweep_distorts_at_p1() {
        let report = exhaustive_roundtrip(3, 1);
        assert_eq!(report.cases, 729);
        assert!(report.failures > 0);
        assert!(report.error_histogram.len() > 1);
    }
}
