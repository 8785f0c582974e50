//! Bit-pair mapping and run-length tokenization.
//!
//! Bit pairs map to digits: `00→2`, `01→3`, `10→4`, `11→5`. An odd-length
//! input gets a synthetic `1` prepended and the `odd_pad` flag set. Runs of
//! five or more equal digits are rewritten as `1xn1` tokens where `x` is the
//! digit and `n ∈ 5..=9` the run length; longer runs are chunked into
//! several tokens so `n` stays a single digit and the sentinel grammar stays
//! uniquely parseable.

use alloc::vec::Vec;

use crate::bits::BitSequence;
use crate::error::CodecError;

/// Digit stream over `{2,3,4,5}` produced by pair mapping.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MappedDigits {
    pub digits: Vec<u8>,
    /// Set when the input bit count was odd and a leading `1` was added.
    pub odd_pad: bool,
}

/// Digit stream over `{1..9}` after run-length tokenization.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RleDigits {
    pub digits: Vec<u8>,
}

fn pair_to_digit(hi: bool, lo: bool) -> u8 {
    match (hi, lo) {
        (false, false) => 2,
        (false, true) => 3,
        (true, false) => 4,
        (true, true) => 5,
    }
}

fn digit_to_pair(d: u8) -> (bool, bool) {
    debug_assert!((2..=5).contains(&d));
    let v = d - 2;
    (v & 2 != 0, v & 1 != 0)
}

/// Maps bit pairs to digits `2..=5`, prepending a synthetic `1` when the
/// bit count is odd.
pub fn map_bits(input: &BitSequence) -> MappedDigits {
    let odd_pad = input.len() % 2 == 1;
    let mut digits = Vec::with_capacity(input.len().div_ceil(2));
    let mut bits = input.iter();
    if odd_pad {
        digits.push(pair_to_digit(true, bits.next().unwrap()));
    }
    while let Some(hi) = bits.next() {
        digits.push(pair_to_digit(hi, bits.next().unwrap()));
    }
    MappedDigits { digits, odd_pad }
}

/// Exact inverse of [`map_bits`]; strips the synthetic leading bit when the
/// pad flag is set.
pub fn unmap_digits(input: &MappedDigits) -> Result<BitSequence, CodecError> {
    let mut out = BitSequence::new();
    for (i, &d) in input.digits.iter().enumerate() {
        if !(2..=5).contains(&d) {
            return Err(CodecError::InvalidDigit {
                digit: d,
                position: i,
            });
        }
        let (hi, lo) = digit_to_pair(d);
        if !(i == 0 && input.odd_pad) {
            out.push(hi);
        }
        out.push(lo);
    }
    Ok(out)
}

pub const TOKEN_MIN_RUN: usize = 5;
pub const TOKEN_MAX_RUN: usize = 9;

/// Tokenizes maximal runs of five or more equal digits as `1xn1`, chunking
/// longer runs; runs of four or fewer are copied verbatim.
pub fn rle_encode(input: &MappedDigits) -> RleDigits {
    let mut out = Vec::with_capacity(input.digits.len());
    let mut i = 0;
    while i < input.digits.len() {
        let d = input.digits[i];
        let mut run = 1;
        while i + run < input.digits.len() && input.digits[i + run] == d {
            run += 1;
        }
        i += run;
        while run >= TOKEN_MIN_RUN {
            let n = run.min(TOKEN_MAX_RUN);
            out.extend_from_slice(&[1, d, n as u8, 1]);
            run -= n;
        }
        out.extend(core::iter::repeat_n(d, run));
    }
    RleDigits { digits: out }
}

/// Expands `1xn1` tokens back into runs. Strict: rejects digits outside
/// `{2..5}` and any `1` that does not open a well-formed token.
pub fn rle_decode(input: &RleDigits) -> Result<MappedDigits, CodecError> {
    let d = &input.digits;
    let mut out = Vec::with_capacity(d.len());
    let mut i = 0;
    while i < d.len() {
        match d[i] {
            1 => {
                if i + 3 < d.len()
                    && (2..=5).contains(&d[i + 1])
                    && (5..=9).contains(&d[i + 2])
                    && d[i + 3] == 1
                {
                    out.extend(core::iter::repeat_n(d[i + 1], d[i + 2] as usize));
                    i += 4;
                } else {
                    return Err(CodecError::MalformedToken { position: i });
                }
            }
            x @ 2..=5 => {
                out.push(x);
                i += 1;
            }
            other => {
                return Err(CodecError::InvalidDigit {
                    digit: other,
                    position: i,
                })
            }
        }
    }
    Ok(MappedDigits {
        digits: out,
        odd_pad: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn bits(s: &str) -> BitSequence {
        BitSequence::from_bits(s.chars().map(|c| c == '1'))
    }

    #[test]
    fn maps_the_worked_sequence() {
        let m = map_bits(&bits("11010010111111111100"));
        assert_eq!(m.digits, vec![5, 3, 2, 4, 5, 5, 5, 5, 5, 2]);
        assert!(!m.odd_pad);
    }

    #[test]
    fn empty_input_is_identity() {
        let m = map_bits(&BitSequence::new());
        assert!(m.digits.is_empty());
        assert!(!m.odd_pad);
        assert_eq!(unmap_digits(&m).unwrap(), BitSequence::new());
    }

    #[test]
    fn odd_length_gets_padded() {
        let m = map_bits(&bits("0"));
        assert_eq!(m.digits, vec![4]);
        assert!(m.odd_pad);
        assert_eq!(unmap_digits(&m).unwrap(), bits("0"));
    }

    #[test]
    fn unmap_inverts_the_worked_sequence() {
        let m = MappedDigits {
            digits: vec![5, 3, 2, 4, 5, 5, 5, 5, 5, 2],
            odd_pad: false,
        };
        assert_eq!(unmap_digits(&m).unwrap(), bits("11010010111111111100"));
    }

    #[test]
    fn unmap_all_twos() {
        let m = MappedDigits {
            digits: vec![2, 2, 2, 2],
            odd_pad: false,
        };
        assert_eq!(unmap_digits(&m).unwrap(), bits("00000000"));
    }

    #[test]
    fn unmap_rejects_out_of_alphabet() {
        let m = MappedDigits {
            digits: vec![2, 7],
            odd_pad: false,
        };
        assert!(matches!(
            unmap_digits(&m),
            Err(CodecError::InvalidDigit {
                digit: 7,
                position: 1
            })
        ));
    }

    #[test]
    fn encodes_the_worked_run() {
        let m = MappedDigits {
            digits: vec![5, 3, 2, 4, 5, 5, 5, 5, 5, 2],
            odd_pad: false,
        };
        assert_eq!(rle_encode(&m).digits, vec![5, 3, 2, 4, 1, 5, 5, 1, 2]);
    }

    #[test]
    fn run_of_four_stays_literal() {
        let m = MappedDigits {
            digits: vec![5, 5, 5, 5],
            odd_pad: false,
        };
        assert_eq!(rle_encode(&m).digits, vec![5, 5, 5, 5]);
    }

    #[test]
    fn long_run_is_chunked() {
        let m = MappedDigits {
            digits: vec![5; 12],
            odd_pad: false,
        };
        let enc = rle_encode(&m);
        assert_eq!(enc.digits, vec![1, 5, 9, 1, 5, 5, 5]);
        assert_eq!(rle_decode(&enc).unwrap().digits, vec![5; 12]);
    }

    #[test]
    fn decode_expands_token() {
        let r = RleDigits {
            digits: vec![5, 3, 2, 4, 1, 5, 5, 1, 2],
        };
        assert_eq!(
            rle_decode(&r).unwrap().digits,
            vec![5, 3, 2, 4, 5, 5, 5, 5, 5, 2]
        );
    }

    #[test]
    fn decode_empty() {
        assert_eq!(rle_decode(&RleDigits::default()).unwrap().digits, vec![]);
    }

    #[test]
    fn decode_rejects_malformed_token() {
        let r = RleDigits {
            digits: vec![1, 2, 3, 4],
        };
        assert!(matches!(
            rle_decode(&r),
            Err(CodecError::MalformedToken { position: 0 })
        ));
    }

    #[test]
    fn decode_rejects_zero() {
        let r = RleDigits { digits: vec![2, 0] };
        assert!(matches!(
            rle_decode(&r),
            Err(CodecError::InvalidDigit {
                digit: 0,
                position: 1
            })
        ));
    }
}
