//! Complex log-gamma: a fast double-precision path (Stirling with downward
//! recurrence) and an independent high-precision Spouge-series oracle.

use crate::{Error, Result};
use num_complex::Complex64;

/// Bernoulli numbers B_2 .. B_16 over 2n(2n-1).
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

/// Principal-branch complex log-gamma.
///
/// Uses the Stirling series after shifting `z` by downward recurrence until
/// `|z| >= 12`; for arguments left of the imaginary axis on the real line the
/// reflection formula is applied. Poles at nonpositive integers are signaled.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::DomainError(format!("log-gamma pole at {z}")));
    }
    if z.re <= 0.01 {
        // reflection: log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z).
        // Only the exponential of this branch is meaningful; the shift path
        // below stays principal and continuous on Re z > 0, which is where
        // every gamma-factor argument of this crate lives.
        let pi = std::f64::consts::PI;
        let lg = log_gamma_complex(Complex64::new(1.0, 0.0) - z)?;
        let log_sin = log_sin_pi(z);
        return Ok(Complex64::new(pi.ln(), 0.0) - log_sin - lg);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 12.0 {
        shift += w.ln();
        w += 1.0;
    }
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let w2 = w * w;
    let mut zp = w;
    for c in STIRLING_COEFFS {
        s += c / zp;
        zp *= w2;
    }
    Ok(s - shift)
}

/// log(sin(pi z)) avoiding overflow for large imaginary parts.
fn log_sin_pi(z: Complex64) -> Complex64 {
    let pi = std::f64::consts::PI;
    let piz = z * pi;
    if piz.im.abs() < 20.0 {
        piz.sin().ln()
    } else {
        // sin w = (e^{iw} - e^{-iw}) / 2i; dominant term e^{|Im w|}
        let iw = Complex64::new(0.0, 1.0) * piz;
        if piz.im > 0.0 {
            // sin w = -e^{-iw}/(2i) (1 - e^{2iw})
            (-iw) + ((Complex64::new(1.0, 0.0) - (iw * 2.0).exp()) / Complex64::new(0.0, 2.0)).ln()
        } else {
            iw + ((Complex64::new(1.0, 0.0) - (-iw * 2.0).exp()) * Complex64::new(0.0, 0.5)).ln()
        }
    }
}

/// Independent high-precision complex arithmetic and Spouge-series log-gamma,
/// used as an oracle against the double-precision path and for spot
/// recomputations of gamma factors at elevated precision.
///
/// The imaginary part of [`hp_oracle::log_gamma_hp`] is assembled from
/// principal logarithms of the Spouge pieces and may differ from the
/// principal branch by a multiple of `2 pi i`; every consumer exponentiates.
pub mod hp_oracle {
    use crate::precision::{hf, pi, Float};

    /// Complex number with high-precision parts.
    #[derive(Debug, Clone)]
    pub struct CF {
        pub re: Float,
        pub im: Float,
    }

    impl CF {
        pub fn new(re: Float, im: Float) -> Self {
            CF { re, im }
        }

        pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
            CF { re: hf(bits, re), im: hf(bits, im) }
        }

        pub fn bits(&self) -> u32 {
            self.re.prec()
        }

        pub fn add(&self, o: &CF) -> CF {
            CF::new(
                Float::with_val(self.bits(), &self.re + &o.re),
                Float::with_val(self.bits(), &self.im + &o.im),
            )
        }

        pub fn sub(&self, o: &CF) -> CF {
            CF::new(
                Float::with_val(self.bits(), &self.re - &o.re),
                Float::with_val(self.bits(), &self.im - &o.im),
            )
        }

        pub fn mul(&self, o: &CF) -> CF {
            let b = self.bits();
            CF::new(
                Float::with_val(b, &self.re * &o.re) - Float::with_val(b, &self.im * &o.im),
                Float::with_val(b, &self.re * &o.im) + Float::with_val(b, &self.im * &o.re),
            )
        }

        pub fn div(&self, o: &CF) -> CF {
            let b = self.bits();
            let den = Float::with_val(b, &o.re * &o.re) + Float::with_val(b, &o.im * &o.im);
            CF::new(
                (Float::with_val(b, &self.re * &o.re) + Float::with_val(b, &self.im * &o.im)) / &den,
                (Float::with_val(b, &self.im * &o.re) - Float::with_val(b, &self.re * &o.im)) / &den,
            )
        }

        pub fn ln(&self) -> CF {
            let b = self.bits();
            let norm2 = Float::with_val(b, &self.re * &self.re) + Float::with_val(b, &self.im * &self.im);
            let re = norm2.ln() / 2u32;
            let im = Float::with_val(b, self.im.clone().atan2(&self.re));
            CF::new(re, im)
        }

        pub fn exp(&self) -> CF {
            let b = self.bits();
            let r = self.re.clone().exp();
            CF::new(
                Float::with_val(b, &r * &self.im.clone().cos()),
                Float::with_val(b, &r * &self.im.clone().sin()),
            )
        }

        pub fn scale(&self, k: &Float) -> CF {
            let b = self.bits();
            CF::new(Float::with_val(b, &self.re * k), Float::with_val(b, &self.im * k))
        }

        pub fn to_c64(&self) -> num_complex::Complex64 {
            num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
        }
    }

    /// Spouge parameter; error roughly (2 pi)^{-a}, far below 50 digits.
    const SPOUGE_A: u32 = 81;

    /// High-precision log-gamma for `Re z > 0` via the Spouge series.
    pub fn log_gamma_hp(z: &CF) -> CF {
        let bits = z.bits() + 64;
        let z = CF::new(Float::with_val(bits, &z.re), Float::with_val(bits, &z.im));
        // Gamma(z) = (z+a-1)^{z-1/2} e^{-(z+a-1)} sqrt(2pi) [c0 + sum ck/(z-1+k)]
        let a = SPOUGE_A;
        let mut sum = CF::new(hf(bits, 1u32), hf(bits, 0u32)); // c0 = 1 with sqrt(2pi) factored out
        let mut factorial = hf(bits, 1u32);
        for k in 1..a {
            // c_k = (-1)^{k-1}/(k-1)! (a-k)^{k-1/2} e^{a-k} / sqrt(2pi)
            let ak = hf(bits, a - k);
            let power = Float::with_val(bits, &ak.clone().ln() * &hf(bits, k as f64 - 0.5)).exp();
            let ck = power * ak.exp() / &factorial / pi(bits).sqrt() / hf(bits, 2u32).sqrt()
                * if k % 2 == 1 { 1.0 } else { -1.0 };
            let den = CF::new(Float::with_val(bits, &z.re + (k - 1)), z.im.clone());
            sum = sum.add(&CF::new(ck, hf(bits, 0u32)).div(&den));
            factorial *= k;
        }
        let za = CF::new(Float::with_val(bits, &z.re + (a - 1)), z.im.clone());
        let half = hf(bits, 0.5f64);
        let zm = CF::new(Float::with_val(bits, &z.re - &half), z.im.clone());
        let log_pow = zm.mul(&za.ln());
        let two_pi_half = (pi(bits) * 2u32).ln() / 2u32;
        let mut out = log_pow.sub(&za).add(&sum.ln());
        out.re += two_pi_half;
        CF::new(
            Float::with_val(z.bits() - 64, &out.re),
            Float::with_val(z.bits() - 64, &out.im),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::hp_oracle::{log_gamma_hp, CF};
    use super::*;
    use crate::precision::hf;

    #[test]
    fn known_values() {
        let v = log_gamma_complex(Complex64::new(0.5, 0.0)).unwrap();
        assert!((v.re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!(v.im.abs() < 1e-14);
        let v = log_gamma_complex(Complex64::new(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        let v = log_gamma_complex(Complex64::new(5.0, 0.0)).unwrap();
        assert!((v.re - 24f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn pole_is_signaled() {
        assert!(log_gamma_complex(Complex64::new(0.0, 0.0)).is_err());
        assert!(log_gamma_complex(Complex64::new(-3.0, 0.0)).is_err());
    }

    #[test]
    fn agrees_with_hp_oracle() {
        // the oracle's imaginary part is branch-normalized only modulo 2 pi
        // (both paths feed exponentials), so compare Re exactly and Im mod 2 pi
        let bits = 256;
        let tau = std::f64::consts::TAU;
        for (re, im) in [
            (3.0, 4.0),
            (0.25, 7.0),
            (0.25, -13.5),
            (1.5, 0.0),
            (12.0, 40.0),
            (0.5, 100.0),
            (0.05, 3.0),
            (6.25, -2.0),
        ] {
            let fast = log_gamma_complex(Complex64::new(re, im)).unwrap();
            let slow = log_gamma_hp(&CF::from_f64(bits, re, im)).to_c64();
            let dre = (fast.re - slow.re).abs();
            let mut dim = (fast.im - slow.im).rem_euclid(tau);
            if dim > tau / 2.0 {
                dim = tau - dim;
            }
            let scale = 1.0 + slow.norm();
            assert!(
                dre < 1e-14 * scale && dim < 1e-13 * scale,
                "z = {re}+{im}i: {fast} vs {slow} (dre {dre:.2e}, dim {dim:.2e})"
            );
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for (re, im) in [(0.25, 5.0), (3.0, 11.0), (0.8, 0.3)] {
            let a = log_gamma_complex(Complex64::new(re, im)).unwrap();
            let b = log_gamma_complex(Complex64::new(re, -im)).unwrap();
            assert!((a - b.conj()).norm() < 1e-13 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn gamma_magnitude_half_line() {
        // |Gamma(1/2 + it)|^2 = pi / cosh(pi t)
        let t = 4.0;
        let lg = log_gamma_complex(Complex64::new(0.5, t)).unwrap();
        let expect = 0.5 * (std::f64::consts::PI / (std::f64::consts::PI * t).cosh()).ln();
        assert!((lg.re - expect).abs() < 1e-13);
    }

    #[test]
    fn hp_oracle_fifty_digits_selfconsistent() {
        // Gamma(1/2) = sqrt(pi) at high precision
        let bits = 256;
        let v = log_gamma_hp(&CF::new(hf(bits, 0.5f64), hf(bits, 0u32)));
        let expect = crate::precision::pi(bits).ln() / 2u32;
        let diff = (v.re - expect).abs().to_f64();
        assert!(diff < 1e-50, "diff {diff:e}");
        assert!(v.im.to_f64().abs() < 1e-50);
    }
}
