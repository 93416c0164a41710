//! Gamma factors of the Rankin–Selberg convolution, the adjoint gamma factor,
//! analytic conductors, the quotient `G(n)`, and the smoothed cutoff
//! `V_s(y, x)` of the approximate functional equation.

pub mod lgamma;
pub mod vfunc;

pub use lgamma::log_gamma_complex;
pub use vfunc::{VConfig, VKernel, VResult, QuadRule};

use crate::quadfield::QuadField;
use crate::{Error, Result};
use num_complex::Complex64;

/// Parameters of the archimedean factor `gamma(s, f, x)`: the spectral
/// parameter `t` of the Maass form and the frequency proxy `x`, converted to
/// the theta spectral parameter `r = pi x / log(eps_D)`.
#[derive(Debug, Clone, Copy)]
pub struct GammaFactorParams {
    pub t: f64,
    pub log_eps: f64,
    pub x: f64,
}

impl GammaFactorParams {
    pub fn new(field: &QuadField, t: f64, x: f64) -> Self {
        GammaFactorParams { t, log_eps: field.log_eps_f64(), x }
    }

    /// `r(x) = pi x / log(eps_D)`.
    pub fn r(&self) -> f64 {
        std::f64::consts::PI * self.x / self.log_eps
    }
}

/// Complex logarithm of `gamma(s, f, x) = pi^{-2s} prod_{±} Gamma((s + i(t ± r))/2) Gamma((s - i(t ± r))/2)`.
pub fn log_gamma_s_f_x(s: Complex64, p: &GammaFactorParams) -> Result<Complex64> {
    let r = p.r();
    let mut acc = -s * 2.0 * std::f64::consts::PI.ln();
    for pm in [1.0, -1.0] {
        for sg in [1.0, -1.0] {
            let arg = (s + Complex64::new(0.0, sg * (p.t + pm * r))) / 2.0;
            acc += log_gamma_complex(arg)?;
        }
    }
    Ok(acc)
}

/// The factor `gamma(s, f, x)` itself.
pub fn gamma_s_f_x(s: Complex64, p: &GammaFactorParams) -> Result<Complex64> {
    Ok(log_gamma_s_f_x(s, p)?.exp())
}

/// High-precision recomputation of `gamma(s, f, x)` through the Spouge
/// oracle, for cross-checks of the double-precision path.
pub fn gamma_s_f_x_hp(bits: u32, s: Complex64, p: &GammaFactorParams) -> Complex64 {
    use lgamma::hp_oracle::{log_gamma_hp, CF};
    let r = p.r();
    let mut acc = CF::from_f64(bits, 0.0, 0.0);
    for pm in [1.0, -1.0] {
        for sg in [1.0, -1.0] {
            let arg = CF::from_f64(bits, s.re / 2.0, (s.im + sg * (p.t + pm * r)) / 2.0);
            acc = acc.add(&log_gamma_hp(&arg));
        }
    }
    let lnpi = crate::precision::pi(bits).ln();
    let twos = CF::from_f64(bits, 2.0 * s.re, 2.0 * s.im);
    acc = acc.sub(&twos.mul(&CF::new(lnpi, crate::precision::hf(bits, 0u32))));
    acc.exp().to_c64()
}

/// Log of the degree-3 adjoint gamma factor at `s = 1` in the normalization
/// `Gamma_R(2) Gamma_R(1 + 2it) Gamma_R(1 - 2it) = 1 / (pi cosh(pi t))`.
pub fn log_gamma_adjoint_1(t: f64) -> f64 {
    let pt = std::f64::consts::PI * t.abs();
    // ln(pi cosh(pi t)) = ln(pi/2) + pi|t| + ln(1 + e^{-2 pi |t|})
    -(std::f64::consts::PI / 2.0).ln() - pt - (-2.0 * pt).exp().ln_1p()
}

/// The adjoint gamma factor at 1; strictly positive, decaying like
/// `e^{-pi |t|}`.
pub fn gamma_adjoint_1(t: f64) -> f64 {
    log_gamma_adjoint_1(t).exp()
}

/// Analytic conductor representative `(1 + (t+r)^2)(1 + (t-r)^2)`.
pub fn analytic_conductor(t: f64, r: f64) -> f64 {
    (1.0 + (t + r) * (t + r)) * (1.0 + (t - r) * (t - r))
}

/// `log G(n) = log gamma(1/2, f, n) - log gamma(1, Ad f)`, evaluated in
/// log-space with real arithmetic (the four gamma factors pair into two
/// squared moduli at real `s`).
pub fn log_g_ratio(n: f64, t: f64, field: &QuadField) -> Result<f64> {
    let p = GammaFactorParams { t, log_eps: field.log_eps_f64(), x: n };
    let r = p.r();
    let lg_plus = log_gamma_complex(Complex64::new(0.25, (t + r) / 2.0))?;
    let lg_minus = log_gamma_complex(Complex64::new(0.25, (t - r) / 2.0))?;
    let log_num = -std::f64::consts::PI.ln() + 2.0 * lg_plus.re + 2.0 * lg_minus.re;
    Ok(log_num - log_gamma_adjoint_1(t))
}

/// The quotient of gamma factors `G(n) >= 0`; underflows flush to zero.
pub fn g_ratio(n: f64, t: f64, field: &QuadField) -> Result<f64> {
    let lg = log_g_ratio(n, t, field)?;
    if lg < -700.0 {
        Ok(0.0)
    } else {
        Ok(lg.exp())
    }
}

/// Checks that `gamma(1/2, f, x)` is within a pole neighborhood; the factors
/// at `s = 1/2` are never at poles for real `t, r`, so this is always fine,
/// but shifted contours can collide (see [`VConfig`]).
pub fn assert_not_pole(s: Complex64, p: &GammaFactorParams) -> Result<()> {
    let r = p.r();
    for pm in [1.0, -1.0] {
        for sg in [1.0, -1.0] {
            let arg = (s + Complex64::new(0.0, sg * (p.t + pm * r))) / 2.0;
            if arg.im.abs() < 1e-9 && arg.re <= 1e-9 && (arg.re - arg.re.round()).abs() < 1e-9 {
                return Err(Error::DomainError(format!(
                    "gamma factor at a pole: argument {arg} for s={s}"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field5() -> QuadField {
        QuadField::new(5).unwrap()
    }

    #[test]
    fn gamma_even_in_x() {
        let k = field5();
        let s = Complex64::new(0.7, 0.3);
        for x in [0.5, 1.0, 3.25] {
            let a = gamma_s_f_x(s, &GammaFactorParams::new(&k, 10.0, x)).unwrap();
            let b = gamma_s_f_x(s, &GammaFactorParams::new(&k, 10.0, -x)).unwrap();
            assert!((a - b).norm() < 1e-13 * a.norm());
        }
    }

    #[test]
    fn gamma_real_nonnegative_at_half() {
        let k = field5();
        for (t, x) in [(10.0, 3.0), (2.0, 0.0), (25.0, 7.0)] {
            let v = gamma_s_f_x(Complex64::new(0.5, 0.0), &GammaFactorParams::new(&k, t, x)).unwrap();
            assert!(v.im.abs() < 1e-12 * v.re.abs());
            assert!(v.re > 0.0);
        }
    }

    #[test]
    fn gamma_matches_hp_recomputation() {
        let k = field5();
        let p = GammaFactorParams::new(&k, 10.0, 3.0);
        let s = Complex64::new(0.5, 0.0);
        let fast = gamma_s_f_x(s, &p).unwrap();
        let slow = gamma_s_f_x_hp(256, s, &p);
        assert!(
            (fast - slow).norm() < 1e-12 * slow.norm(),
            "{fast} vs {slow}"
        );
    }

    #[test]
    fn conjugate_symmetry_of_gamma() {
        let k = field5();
        let p = GammaFactorParams::new(&k, 7.0, 2.0);
        let s = Complex64::new(0.6, 1.1);
        let a = gamma_s_f_x(s, &p).unwrap();
        let b = gamma_s_f_x(s.conj(), &p).unwrap();
        assert!((a - b.conj()).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn adjoint_gamma_values() {
        // gamma(1, Ad) = 1/(pi cosh(pi t)); finite positive at t = 0
        assert!((gamma_adjoint_1(0.0) - 1.0 / std::f64::consts::PI).abs() < 1e-15);
        // monotone decay and e^{-pi t} shape on [2, 50]
        let mut prev = gamma_adjoint_1(2.0);
        let mut t = 2.5;
        while t <= 50.0 {
            let v = gamma_adjoint_1(t);
            assert!(v < prev && v > 0.0);
            // shape: v * e^{pi t} in [1/(2pi)*2*(1-eps), 2/pi]
            let scaled = v * (std::f64::consts::PI * t).exp();
            assert!(scaled > 0.5 && scaled < 0.7, "t={t} scaled={scaled}");
            prev = v;
            t += 0.5;
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(analytic_conductor(10.0, 0.0), 10201.0);
        let t = 3.7;
        assert!((analytic_conductor(t, t) - (1.0 + 4.0 * t * t)).abs() < 1e-12);
        assert_eq!(analytic_conductor(4.0, 1.5), analytic_conductor(4.0, -1.5));
    }

    #[test]
    fn g_ratio_even_nonnegative() {
        let k = field5();
        for t in [5.0, 13.779751] {
            for n in 0..30 {
                let a = g_ratio(n as f64, t, &k).unwrap();
                let b = g_ratio(-(n as f64), t, &k).unwrap();
                assert!(a >= 0.0);
                assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
            }
        }
    }

    #[test]
    fn g_ratio_finite_for_extreme_arguments() {
        let k = field5();
        for n in [0i64, 1, 1000, 100_000, 1_000_000] {
            for t in [2.0, 100.0, 1000.0] {
                let v = g_ratio(n as f64, t, &k).unwrap();
                assert!(v.is_finite(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn g_ratio_geometric_decay_past_transition() {
        // G(n+2)/G(n) <= e^{-pi/c_D} for n >= 4 c_D t + 10 (D=5, t=10)
        let k = field5();
        let t = 10.0;
        let c_d = k.c_d_f64();
        let bound = (-std::f64::consts::PI / c_d).exp();
        let n0 = (4.0 * c_d * t + 10.0).ceil() as i64;
        for n in n0..(n0 + 40) {
            let g1 = log_g_ratio(n as f64, t, &k).unwrap();
            let g2 = log_g_ratio(n as f64 + 2.0, t, &k).unwrap();
            assert!(
                g2 - g1 <= bound.ln() + 1e-9,
                "n={n}: ratio {}",
                (g2 - g1).exp()
            );
        }
    }
}
