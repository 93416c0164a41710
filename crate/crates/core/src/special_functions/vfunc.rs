//! The smoothed cutoff `V_s(y, x)` of the approximate functional equation at
//! `s = 1/2`, with `G(u) = e^{u^2}` damping:
//!
//! `V(y, x) = (2 pi i)^{-1} int_{Re u = sigma} [gamma(1/2+u,f,x)/gamma(1/2,f,x)] y^{-u} e^{u^2} du/u`.
//!
//! For `y` below a switch point the contour is moved left of the origin,
//! picking up the residue 1 at `u = 0`; the remaining integral is a small
//! correction. Two independent quadrature rules are provided.

use super::{log_gamma_s_f_x, GammaFactorParams};
use crate::quadfield::QuadField;
use crate::{Error, Result};
use num_complex::Complex64;

/// Quadrature rule selector for the contour integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    /// Trapezoid with step halving (spectrally accurate on the Gaussian tail).
    Trapezoid,
    /// Adaptive Simpson with local error control.
    AdaptiveSimpson,
}

/// Contour and tolerance configuration.
#[derive(Debug, Clone, Copy)]
pub struct VConfig {
    /// Contour abscissa for `y` above the switch point. Default 3.
    pub sigma: f64,
    /// Contour abscissa in `(-1/2, 0)` used for small `y` (the residue path).
    pub sigma_left: f64,
    /// Below this `y` the residue path is used. Default 0.02.
    pub y_switch: f64,
    /// Quadrature tolerance.
    pub tol: f64,
    /// Hard cap on the truncation height.
    pub max_height: f64,
    pub rule: QuadRule,
}

impl Default for VConfig {
    fn default() -> Self {
        VConfig {
            sigma: 3.0,
            sigma_left: -0.45,
            y_switch: 0.02,
            tol: 1e-12,
            max_height: 60.0,
            rule: QuadRule::Trapezoid,
        }
    }
}

impl VConfig {
    fn validate(&self) -> Result<()> {
        if self.sigma < 0.05 {
            return Err(Error::ConfigError(format!(
                "right contour sigma = {} collides with the pole at u = 0",
                self.sigma
            )));
        }
        if !(-0.5 + 0.02..=-0.02).contains(&self.sigma_left) {
            return Err(Error::ConfigError(format!(
                "left contour sigma = {} must lie in (-1/2, 0) away from poles",
                self.sigma_left
            )));
        }
        Ok(())
    }
}

/// Evaluation result with an error estimate from rule refinement and tail
/// truncation.
#[derive(Debug, Clone, Copy)]
pub struct VResult {
    pub value: f64,
    pub error_estimate: f64,
}

/// Evaluator of `V(y, x)` for a fixed form/field pair `(t, D)`.
#[derive(Debug, Clone)]
pub struct VKernel {
    pub t: f64,
    pub log_eps: f64,
    pub cfg: VConfig,
}

impl VKernel {
    pub fn new(field: &QuadField, t: f64, cfg: VConfig) -> Self {
        VKernel { t, log_eps: field.log_eps_f64(), cfg }
    }

    fn params(&self, x: f64) -> GammaFactorParams {
        GammaFactorParams { t: self.t, log_eps: self.log_eps, x }
    }

    /// `V(1/2; y, x)` with the configured rule and contour placement.
    pub fn v(&self, y: f64, x: f64) -> Result<VResult> {
        self.v_with_rule(y, x, self.cfg.rule)
    }

    pub fn v_with_rule(&self, y: f64, x: f64, rule: QuadRule) -> Result<VResult> {
        if y <= 0.0 {
            return Err(Error::DomainError(format!("V requires y > 0, got {y}")));
        }
        self.cfg.validate()?;
        let p = self.params(x);
        let base = log_gamma_s_f_x(Complex64::new(0.5, 0.0), &p)?;
        if y < self.cfg.y_switch {
            let (corr, err) = self.contour(self.cfg.sigma_left, y, base, &p, rule)?;
            Ok(VResult { value: 1.0 + corr, error_estimate: err })
        } else {
            // The integral is contour-independent on Re u > 0; placing the
            // abscissa near the saddle of y^{-sigma} e^{sigma^2} Q^sigma keeps
            // the integrand at the scale of the result (the reference contour
            // sigma = 3 is exact but ~q_infty^3 ill-conditioned for small y).
            let r = p.r();
            let q_base = ((1.0 + (self.t * self.t - r * r).abs()) / (4.0 * std::f64::consts::PI.powi(2))).max(0.1);
            let saddle = 0.5 * (y.ln() - q_base.ln());
            let sigma = saddle.clamp(0.3, self.cfg.sigma.max(0.3));
            let (val, err) = self.contour(sigma, y, base, &p, rule)?;
            Ok(VResult { value: val, error_estimate: err })
        }
    }

    /// Integrand `F(sigma+iv) y^{-u} e^{u^2} / u` through log-space.
    fn integrand(&self, sigma: f64, v: f64, y: f64, base: Complex64, p: &GammaFactorParams) -> Complex64 {
        let u = Complex64::new(sigma, v);
        let lg = match log_gamma_s_f_x(Complex64::new(0.5, 0.0) + u, p) {
            Ok(l) => l,
            Err(_) => return Complex64::new(0.0, 0.0), // at a pole: measure-zero, skipped
        };
        let log_h = lg - base - u * y.ln() + u * u;
        if log_h.re < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        log_h.exp() / u
    }

    /// `(1/pi) Re int_0^Y h(v) dv` with adaptive truncation height.
    fn contour(
        &self,
        sigma: f64,
        y: f64,
        base: Complex64,
        p: &GammaFactorParams,
        rule: QuadRule,
    ) -> Result<(f64, f64)> {
        // find the truncation height: scan until the integrand is dead
        let mut peak: f64 = 0.0;
        let mut v = 0.0;
        let mut height = sigma.abs().max(4.0);
        let mut dead_run = 0;
        while v < self.cfg.max_height {
            let m = self.integrand(sigma, v, y, base, p).norm();
            peak = peak.max(m);
            if v >= height {
                if m < 1e-18 * peak.max(1e-300) {
                    dead_run += 1;
                    if dead_run >= 3 {
                        height = v;
                        break;
                    }
                } else {
                    dead_run = 0;
                    height = v;
                }
            }
            v += 0.5;
        }
        let f = |v: f64| self.integrand(sigma, v, y, base, p);
        // coarse pass to set the absolute tolerance relative to the result,
        // floored at the cancellation limit of the integrand scale
        let coarse = crate::util::integrate_gl_complex(&f, 0.0, height, 8, 32);
        let floor = 1e-15 * peak * height.max(1.0);
        let tol_abs = (self.cfg.tol * coarse.norm()).max(floor).max(1e-300);
        // the full-line integral is real by conjugate symmetry:
        // int_{-Y}^{Y} = 2 int_0^Y Re f dv
        let (total, rule_err) = match rule {
            QuadRule::Trapezoid => {
                // symmetric whole-line trapezoid (no interior endpoint), which
                // converges spectrally for integrands analytic in a strip
                let (t, err) = trapezoid_symmetric(&f, height, tol_abs, 64, 14)?;
                (t, err)
            }
            QuadRule::AdaptiveSimpson => {
                let v = crate::util::adaptive_simpson_complex(&f, 0.0, height, tol_abs, 40);
                (2.0 * v.re, tol_abs)
            }
        };
        let tail = self.integrand(sigma, height, y, base, p).norm();
        let value = total / (2.0 * std::f64::consts::PI);
        Ok((value, (rule_err + tail).max(1e-15) / (2.0 * std::f64::consts::PI)))
    }

    /// Central finite-difference measurement of `|d^j/dx^j V(y, x)|`.
    pub fn derivative_measure(&self, y: f64, x: f64, j: u32, h: f64) -> Result<f64> {
        let v = |xx: f64| -> Result<f64> { Ok(self.v(y, xx)?.value) };
        let out = match j {
            0 => v(x)?.abs(),
            1 => ((v(x + h)? - v(x - h)?) / (2.0 * h)).abs(),
            2 => ((v(x + h)? - 2.0 * v(x)? + v(x - h)?) / (h * h)).abs(),
            3 => ((v(x + 2.0 * h)? - 2.0 * v(x + h)? + 2.0 * v(x - h)? - v(x - 2.0 * h)?)
                / (2.0 * h * h * h))
                .abs(),
            _ => {
                return Err(Error::ConfigError(format!(
                    "derivative order {j} not supported by the stencil set"
                )))
            }
        };
        if h < 1e-12 {
            return Err(Error::ConfigError("finite-difference step underflow".into()));
        }
        Ok(out)
    }
}

/// Whole-line trapezoid `h [Re f(0) + 2 sum_{i>=1} Re f(i h)]` over `[-Y, Y]`
/// for conjugate-symmetric integrands, with step halving and node reuse.
/// Returns the (real) value and the last refinement difference.
fn trapezoid_symmetric<F: Fn(f64) -> Complex64>(
    f: &F,
    height: f64,
    tol: f64,
    n0: usize,
    max_halvings: u32,
) -> Result<(f64, f64)> {
    let mut n = n0;
    let mut h = height / n as f64;
    let mut sum = f(0.0).re + f(height).re;
    for i in 1..n {
        sum += 2.0 * f(i as f64 * h).re;
    }
    let mut t_prev = sum * h;
    for _ in 0..max_halvings {
        let mut mid = 0.0;
        for i in 0..n {
            mid += 2.0 * f((i as f64 + 0.5) * h).re;
        }
        let t_next = 0.5 * t_prev + mid * (0.5 * h);
        let diff = (t_next - t_prev).abs();
        t_prev = t_next;
        n *= 2;
        h *= 0.5;
        if diff < tol {
            return Ok((t_prev, diff));
        }
    }
    Err(Error::QuadratureFailure(format!(
        "trapezoid refinement did not reach tolerance {tol} with {n} nodes"
    )))
}
