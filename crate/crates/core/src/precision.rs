//! High-precision real arithmetic used for field embeddings, unit powers and
//! character exponents, where 50-digit working precision is the default.

pub use rug::Float;
pub use rug::Integer;

/// Default working precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

/// Converts decimal digits to MPFR mantissa bits, with guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    // log2(10) = 3.3219...
    (digits as f64 * 3.3219280948873626).ceil() as u32 + 16
}

/// A float with value `v` at `bits` of precision.
pub fn hf<T>(bits: u32, v: T) -> Float
where
    Float: rug::Assign<T>,
{
    Float::with_val(bits, v)
}

/// High-precision pi.
pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, rug::float::Constant::Pi)
}

/// 2*pi at the given precision.
pub fn two_pi(bits: u32) -> Float {
    pi(bits) * 2u32
}

/// Reduces `x` into `[0, m)` for a positive modulus `m`.
pub fn reduce_mod(x: &Float, m: &Float) -> Float {
    let bits = x.prec().max(m.prec());
    let q = Float::with_val(bits, x / m).floor();
    let mut r = Float::with_val(bits, x - q * m);
    // guard against rounding placing r exactly at m
    if r >= *m {
        r -= m;
    }
    if r < 0u32 {
        r += m;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_conversion_covers_request() {
        let bits = digits_to_bits(50);
        assert!(bits >= 167);
        let x = hf(bits, 1u32) / 3u32;
        let s = x.to_string_radix(10, Some(52));
        assert!(s.starts_with("3.333333333333333333333333333333333333333333333333") || s.starts_with("0.333") || s.contains("e-1"));
    }

    #[test]
    fn mod_reduction() {
        let bits = 128;
        let m = two_pi(bits);
        let x = hf(bits, 100u32);
        let r = reduce_mod(&x, &m);
        assert!(r >= 0u32 && r < m);
        let fr: f64 = r.to_f64();
        assert!((fr - (100.0f64).rem_euclid(std::f64::consts::TAU)).abs() < 1e-12);
    }
}
