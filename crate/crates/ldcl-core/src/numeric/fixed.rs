//! Fixed-point decimal evaluation of ln and exp over big integers.
//!
//! Values are non-negative reals represented as `v / 10^w` for an integer
//! `v` and a working precision of `w` fraction digits. `ln` normalizes its
//! argument to a mantissa in `[1, 10)`, pulls it toward 1 with repeated
//! square roots, and sums the atanh series; `exp` splits off a power of ten,
//! halves the remainder until the Taylor series converges quickly, then
//! squares back up. Truncation error stays within a few hundred ulps, which
//! the callers cover with guard digits on top of their target precision.

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, Zero};

pub struct FixedCtx {
    /// Working fraction digits.
    pub w: usize,
    /// `10^w`.
    pub scale: BigUint,
    /// `ln 10` at scale `10^w`.
    pub ln10: BigUint,
    /// Square-root reduction stops once the mantissa is at most `1.1`.
    sqrt_threshold: BigUint,
}

pub fn pow10(e: usize) -> BigUint {
    BigUint::from(10u32).pow(e as u32)
}

pub fn decimal_digits(n: &BigUint) -> usize {
    if n.is_zero() {
        return 1;
    }
    // bits/log2(10) brackets the digit count; settle with one comparison.
    let lo = (n.bits() as usize - 1) * 30103 / 100000 + 1;
    if *n >= pow10(lo) {
        lo + 1
    } else {
        lo
    }
}

impl FixedCtx {
    pub fn new(w: usize) -> Self {
        let scale = pow10(w);
        let sqrt_threshold = &scale * 11u32 / 10u32;
        let mut ctx = FixedCtx {
            w,
            scale,
            ln10: BigUint::zero(),
            sqrt_threshold,
        };
        ctx.ln10 = ctx.ln_reduced(&ctx.scale * 10u32);
        ctx
    }

    /// `a * b / 10^w`, truncated.
    pub fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * b / &self.scale
    }

    /// `a / b` as a fixed-point value, truncated.
    pub fn div(&self, a: &BigUint, b: &BigUint) -> BigUint {
        a * &self.scale / b
    }

    /// `ln n` for an integer `n >= 1`, at scale `10^w`.
    pub fn ln_int(&self, n: &BigUint) -> BigUint {
        if n.is_one() {
            return BigUint::zero();
        }
        let d = decimal_digits(n);
        // mantissa n / 10^(d-1) in [1, 10), as a fixed-point value
        let mantissa = if self.w >= d - 1 {
            n * pow10(self.w - (d - 1))
        } else {
            n * &self.scale / pow10(d - 1)
        };
        self.ln_reduced(mantissa) + &self.ln10 * BigUint::from(d - 1)
    }

    /// `ln x` for a fixed-point `x >= 1`, valid for mantissas up to ~100.
    fn ln_reduced(&self, mut x: BigUint) -> BigUint {
        let mut doublings = 0u32;
        while x > self.sqrt_threshold {
            x = (&x * &self.scale).sqrt();
            doublings += 1;
        }
        // ln x = 2 atanh((x-1)/(x+1)); |z| <= 0.048 after reduction
        let z = self.div(&(&x - &self.scale), &(&x + &self.scale));
        let zz = self.mul(&z, &z);
        let mut term = z.clone();
        let mut sum = z;
        let mut k = 3u32;
        loop {
            term = self.mul(&term, &zz);
            let contrib = &term / BigUint::from(k);
            if contrib.is_zero() {
                break;
            }
            sum += contrib;
            k += 2;
        }
        sum << (doublings + 1)
    }

    /// `e^y` for a fixed-point `y >= 0`, at scale `10^w`. The result integer
    /// grows with the magnitude of `e^y`; callers bound `y` themselves.
    pub fn exp(&self, y: &BigUint) -> BigUint {
        // e^y = 10^q * e^f with f in [0, ln 10)
        let q = y / &self.ln10;
        let f = y - &q * &self.ln10;
        // halve until the Taylor series gains >2 digits per term
        let halvings = 9u32;
        let g = f >> halvings;
        let mut term = self.scale.clone();
        let mut sum = self.scale.clone();
        let mut i = 1u32;
        loop {
            term = self.mul(&term, &g) / BigUint::from(i);
            if term.is_zero() {
                break;
            }
            sum += &term;
            i += 1;
        }
        for _ in 0..halvings {
            sum = self.mul(&sum, &sum);
        }
        let q: usize = q.try_into().expect("exponent fits usize");
        sum * pow10(q)
    }

    /// Rounds a fixed-point value in `[0, 1)` to `p` fraction digits,
    /// half away from zero, clamping to all nines on overflow.
    pub fn round_fraction(&self, v: &BigUint, p: usize) -> Vec<u8> {
        assert!(p >= 1 && p <= self.w);
        let unit = pow10(self.w - p);
        // half away from zero: add 5*10^(w-p-1) before truncating
        let half = if self.w == p {
            BigUint::zero()
        } else {
            BigUint::from(5u32) * pow10(self.w - p - 1)
        };
        let rounded = (v + half) / &unit;
        let max = pow10(p) - BigUint::one();
        let clamped = if rounded > max { max } else { rounded };
        let mut digits = clamped.to_radix_be(10);
        while digits.len() < p {
            digits.insert(0, 0);
        }
        digits
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn digit_counts() {
        assert_eq!(decimal_digits(&BigUint::from(0u32)), 1);
        assert_eq!(decimal_digits(&BigUint::from(9u32)), 1);
        assert_eq!(decimal_digits(&BigUint::from(10u32)), 2);
        assert_eq!(decimal_digits(&BigUint::from(999u32)), 3);
        assert_eq!(decimal_digits(&BigUint::from(1000u32)), 4);
        assert_eq!(decimal_digits(&pow10(100)), 101);
    }

    #[test]
    fn ln_of_one_is_zero() {
        let ctx = FixedCtx::new(30);
        assert!(ctx.ln_int(&BigUint::one()).is_zero());
    }

    #[test]
    fn ln10_matches_reference() {
        let ctx = FixedCtx::new(40);
        // ln 10 = 2.302585092994045684017991454684364207601...
        let expected: BigUint = "23025850929940456840179914546843642076011"
            .parse()
            .unwrap();
        let diff = if ctx.ln10 > expected {
            &ctx.ln10 - &expected
        } else {
            &expected - &ctx.ln10
        };
        assert!(diff < BigUint::from(100_000u32), "diff {diff}");
    }

    #[test]
    fn exp_inverts_ln() {
        let ctx = FixedCtx::new(40);
        for n in [2u64, 7, 999, 123_456_789, 10_000_000_019] {
            let y = ctx.ln_int(&BigUint::from(n));
            let e = ctx.exp(&y);
            let rounded = (&e + (&ctx.scale >> 1)) / &ctx.scale;
            assert_eq!(rounded, BigUint::from(n), "exp(ln({n}))");
        }
    }

    #[test]
    fn round_fraction_half_up() {
        let ctx = FixedCtx::new(6);
        // 0.123450 at p=4 -> 0.1235 (tie away from zero)
        let v = BigUint::from(123_450u32);
        assert_eq!(ctx.round_fraction(&v, 4), vec![1, 2, 3, 5]);
        // 0.999999 at p=2 clamps to 0.99
        let v = BigUint::from(999_999u32);
        assert_eq!(ctx.round_fraction(&v, 2), vec![9, 9]);
    }
}
