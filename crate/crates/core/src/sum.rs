//! Exact fixed-point accumulation of `f64` terms.
//!
//! `ExactSum` stores a running sum as a wide fixed-point integer covering the
//! whole finite `f64` range, so adding terms is exactly associative and
//! commutative: any ordering, grouping, or thread-partitioning of the same
//! multiset of terms yields bitwise-identical results. This is what makes
//! reorganized sums (e.g. a Schur sum versus its stratified rearrangement)
//! comparable for exact equality, and parallel reductions reproducible.

/// Number of 64-bit limbs. Limb `i` carries weight `2^(64*i - BIAS)`; the
/// lowest limb reaches below `2^-1074`, the highest above `f64::MAX` with
/// room for carries.
const LIMBS: usize = 34;

/// Fixed-point offset: bit `p` of the accumulator has weight `2^(p - BIAS)`.
const BIAS: i32 = 1088;

/// Exact accumulator for finite `f64` values.
///
/// Each limb is an `i128` holding a partial sum of 64-bit slices; carries are
/// deferred until [`ExactSum::value`], so up to `2^62` terms can be added
/// without normalization.
#[derive(Clone)]
pub struct ExactSum {
    limbs: [i128; LIMBS],
}

impl Default for ExactSum {
    fn default() -> Self {
        Self::new()
    }
}

impl ExactSum {
    pub fn new() -> Self {
        ExactSum { limbs: [0; LIMBS] }
    }

    /// Adds a finite term. Panics on NaN or infinity.
    #[inline]
    pub fn add(&mut self, x: f64) {
        let bits = x.to_bits();
        let exp_raw = ((bits >> 52) & 0x7ff) as i32;
        assert!(exp_raw != 0x7ff, "ExactSum::add: non-finite term");
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp_raw == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_raw - 1075)
        };
        if mantissa == 0 {
            return;
        }
        let pos = (exp + BIAS) as usize;
        let (limb, off) = (pos / 64, pos % 64);
        let wide = (mantissa as u128) << off;
        let lo = wide as u64 as i128;
        let hi = (wide >> 64) as u64 as i128;
        if bits >> 63 == 0 {
            self.limbs[limb] += lo;
            self.limbs[limb + 1] += hi;
        } else {
            self.limbs[limb] -= lo;
            self.limbs[limb + 1] -= hi;
        }
    }

    /// Merges another accumulator into this one; exact and commutative.
    pub fn merge(&mut self, other: &ExactSum) {
        for (a, b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            *a += *b;
        }
    }

    /// Rounds the exact sum to the nearest `f64` (ties to even).
    pub fn value(&self) -> f64 {
        // Normalize deferred carries into canonical u64 digits.
        let mut digits = [0u64; LIMBS];
        let mut carry: i128 = 0;
        for (i, &l) in self.limbs.iter().enumerate() {
            let t = l + carry;
            let lo = t as u64;
            digits[i] = lo;
            carry = (t - lo as i128) >> 64;
        }
        // The magnitude is bounded well below the top limb, so the final
        // carry is 0 for non-negative sums and -1 for negative ones.
        let negative = carry < 0;
        if negative {
            // Two's complement negate to get the magnitude.
            let mut borrow = true;
            for d in digits.iter_mut() {
                let inv = !*d;
                let (v, overflow) = inv.overflowing_add(borrow as u64);
                *d = v;
                borrow = overflow;
            }
        }
        let h = match (0..LIMBS).rev().find(|&i| digits[i] != 0) {
            Some(h) => h,
            None => return 0.0,
        };
        let at = |i: isize| -> u64 {
            if i >= 0 {
                digits[i as usize]
            } else {
                0
            }
        };
        let lz = digits[h].leading_zeros();
        let mut window = ((digits[h] as u128) << 64) | at(h as isize - 1) as u128;
        let mut sticky = false;
        if lz > 0 {
            window = (window << lz) | (at(h as isize - 2) as u128 >> (64 - lz));
            sticky |= at(h as isize - 2) << lz != 0;
        } else {
            sticky |= at(h as isize - 2) != 0;
        }
        for i in 0..(h as isize - 2).max(0) {
            sticky |= digits[i as usize] != 0;
        }
        let mut mant = (window >> 75) as u64;
        let round_bit = (window >> 74) & 1 == 1;
        sticky |= window & ((1u128 << 74) - 1) != 0;
        // Exponent of the most significant bit in fixed-point coordinates.
        let mut msb = 64 * h as i32 + 63 - lz as i32 - BIAS;
        if round_bit && (sticky || mant & 1 == 1) {
            mant += 1;
            if mant == 1 << 53 {
                mant >>= 1;
                msb += 1;
            }
        }
        let magnitude = ldexp_exact(mant, msb - 52);
        if negative {
            -magnitude
        } else {
            magnitude
        }
    }

    /// Sums an iterator of terms.
    pub fn sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
        let mut acc = ExactSum::new();
        for x in iter {
            acc.add(x);
        }
        acc.value()
    }
}

/// `mant * 2^exp` for a 53-bit mantissa with the top bit set.
fn ldexp_exact(mant: u64, exp: i32) -> f64 {
    debug_assert!(mant >> 52 == 1);
    let biased = exp + 52 + 1023;
    if (1..=2046).contains(&biased) {
        f64::from_bits(((biased as u64) << 52) | (mant & ((1u64 << 52) - 1)))
    } else if biased > 2046 {
        f64::INFINITY
    } else {
        // Subnormal result: two-step scaling may double-round the last bit,
        // but stays a pure function of the canonical digits.
        mant as f64 * 2f64.powi(-1074) * 2f64.powi(exp + 1074 - 52 + 52)
    }
}
