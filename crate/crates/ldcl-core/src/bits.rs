use alloc::vec::Vec;
use core::fmt;

/// A bit stream of arbitrary length, packed MSB-first into bytes.
///
/// Bit `i` of the sequence is bit `7 - (i % 8)` of byte `i / 8`. Trailing
/// bits of the last byte beyond `bit_len` are always zero.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct BitSequence {
    bytes: Vec<u8>,
    bit_len: usize,
}

impl BitSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// Takes every bit of `bytes`, MSB first within each byte.
    pub fn from_bytes(bytes: &[u8]) -> Self {
        Self {
            bytes: bytes.to_vec(),
            bit_len: bytes.len() * 8,
        }
    }

    /// Builds a sequence from `0`/`1` symbols.
    pub fn from_bits(bits: impl IntoIterator<Item = bool>) -> Self {
        let mut seq = Self::new();
        for b in bits {
            seq.push(b);
        }
        seq
    }

    pub fn len(&self) -> usize {
        self.bit_len
    }

    pub fn is_empty(&self) -> bool {
        self.bit_len == 0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        if i >= self.bit_len {
            return None;
        }
        Some(self.bytes[i / 8] >> (7 - (i % 8)) & 1 == 1)
    }

    pub fn push(&mut self, bit: bool) {
        if self.bit_len % 8 == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 1 << (7 - (self.bit_len % 8));
        }
        self.bit_len += 1;
    }

    /// Underlying bytes; the last partial byte is zero-padded on the right.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.bit_len).map(|i| self.get(i).unwrap())
    }

    /// Truncates to `bit_len` bits or extends with zero bits.
    pub fn resize(&mut self, bit_len: usize) {
        if bit_len < self.bit_len {
            self.bit_len = bit_len;
            self.bytes.truncate(bit_len.div_ceil(8));
            // clear the now-unused tail bits of the last byte
            let tail = bit_len % 8;
            if tail != 0 {
                let last = self.bytes.last_mut().unwrap();
                *last &= !(0xffu8 >> tail);
            }
        } else {
            while self.bit_len < bit_len {
                self.push(false);
            }
        }
    }
}

impl fmt::Debug for BitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSequence(\"")?;
        for b in self.iter() {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        write!(f, "\")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn msb_first_packing() {
        let s = BitSequence::from_bytes(&[0b1010_0001]);
        let bits: Vec<bool> = s.iter().collect();
        assert_eq!(
            bits,
            vec![true, false, true, false, false, false, false, true]
        );
    }

    #[test]
    fn push_roundtrip() {
        let mut s = BitSequence::new();
        for b in [true, true, false, true, false] {
            s.push(b);
        }
        assert_eq!(s.len(), 5);
        assert_eq!(s.as_bytes(), &[0b1101_0000]);
    }

    #[test]
    fn resize_truncates_and_clears_tail() {
        let mut s = BitSequence::from_bytes(&[0xff, 0xff]);
        s.resize(5);
        assert_eq!(s.len(), 5);
        assert_eq!(s.as_bytes(), &[0b1111_1000]);
        s.resize(8);
        assert_eq!(s.as_bytes(), &[0b1111_1000]);
    }
}
