//! Arithmetic of the real quadratic field `K = Q(sqrt(D))` for a positive
//! fundamental discriminant `D`: Pell data and the totally positive
//! fundamental unit, exact embeddings, the cone-and-lattice fundamental
//! domain for the unit action, and lattice enumeration.

pub mod classgroup;
pub mod forms;
pub mod ideals;
pub mod pell;

use crate::precision::{digits_to_bits, hf, pi, Float, DEFAULT_DIGITS};
use crate::util::is_squarefree;
use crate::{Error, Result};
use rug::Integer;

/// A validated positive fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Discriminant(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn get(&self) -> i64 {
        self.0
    }
}

/// True iff `d > 0` is a fundamental discriminant (and not a square).
pub fn is_fundamental(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    let r = crate::util::isqrt_i128(d as i128);
    if r * r == d as i128 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            let mm = m.rem_euclid(4);
            (mm == 2 || mm == 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// An integer of `K` in coordinates over the basis `{1, beta_D}`, where
/// `beta_D = (1+sqrt(D))/2` for odd `D` and `sqrt(D)/2` for even `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub a: i64,
    pub b: i64,
}

impl FieldElement {
    pub fn new(a: i64, b: i64) -> Self {
        FieldElement { a, b }
    }

    pub fn one() -> Self {
        FieldElement { a: 1, b: 0 }
    }

    /// Exact norm `(a + b beta)(a + b beta*)`.
    pub fn norm(&self, d: i64) -> i128 {
        let a = self.a as i128;
        let b = self.b as i128;
        if d % 2 == 1 {
            a * a + a * b + b * b * ((1 - d as i128) / 4)
        } else {
            a * a - b * b * (d as i128 / 4)
        }
    }

    /// Exact trace `2a + sigma b`.
    pub fn trace(&self, d: i64) -> i128 {
        2 * self.a as i128 + (d.rem_euclid(2) as i128) * self.b as i128
    }

    /// Representation `(P + Q sqrt(D))/2`.
    pub fn pq(&self, d: i64) -> (i128, i128) {
        (self.trace(d), self.b as i128)
    }
}

/// Sign of `r + s * sqrt(d)` computed exactly.
pub fn sign_quad(r: &Integer, s: &Integer, d: i64) -> i32 {
    use std::cmp::Ordering::*;
    let sr = r.cmp0();
    let ss = s.cmp0();
    match (sr, ss) {
        (Equal, Equal) => 0,
        (Less | Equal, Less | Equal) => -1,
        (Greater | Equal, Greater | Equal) => 1,
        (Greater, Less) | (Less, Greater) => {
            // compare r^2 with s^2 d; sign follows the dominant term
            let r2 = Integer::from(r * r);
            let s2d = Integer::from(s * s) * d;
            match r2.cmp(&s2d) {
                Equal => 0, // impossible for nonsquare d unless r = s = 0
                Greater => sr as i32,
                Less => ss as i32,
            }
        }
    }
}

/// The field `Q(sqrt(D))` with its Pell data and high-precision constants.
#[derive(Debug, Clone)]
pub struct QuadField {
    disc: Discriminant,
    bits: u32,
    x_d: Integer,
    y_d: Integer,
    // 2 * eps^2 = p_eps2 + q_eps2 sqrt(D), exact
    p_eps2: Integer,
    q_eps2: Integer,
    sqrt_d: Float,
    beta: Float,
    beta_star: Float,
    eps: Float,
    eps_sq: Float,
    log_eps: Float,
    c_d: Float,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self> {
        Self::with_digits(d, DEFAULT_DIGITS)
    }

    pub fn with_digits(d: i64, digits: u32) -> Result<Self> {
        let disc = Discriminant::new(d)?;
        let bits = digits_to_bits(digits);
        let (x_d, y_d) = pell::pell_fundamental(d);
        let sqrt_d = hf(bits, d).sqrt();
        let (beta, beta_star) = if d % 2 == 1 {
            (
                (hf(bits, 1u32) + &sqrt_d) / 2u32,
                (hf(bits, 1u32) - &sqrt_d) / 2u32,
            )
        } else {
            (
                Float::with_val(bits, &sqrt_d / 2u32),
                Float::with_val(bits, &sqrt_d / 2u32) * -1i32,
            )
        };
        let eps = (hf(bits, &x_d) + hf(bits, &y_d) * &sqrt_d) / 2u32;
        let eps_sq = Float::with_val(bits, &eps * &eps);
        let log_eps = eps.clone().ln();
        let c_d = Float::with_val(bits, &log_eps / &pi(bits));
        // eps^2 = (2 + D y^2 + x y sqrt(D)) / 2
        let p_eps2 = Integer::from(2) + Integer::from(&y_d * &y_d) * d;
        let q_eps2 = Integer::from(&x_d * &y_d);
        Ok(QuadField {
            disc,
            bits,
            x_d,
            y_d,
            p_eps2,
            q_eps2,
            sqrt_d,
            beta,
            beta_star,
            eps,
            eps_sq,
            log_eps,
            c_d,
        })
    }

    pub fn disc(&self) -> i64 {
        self.disc.get()
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Minimal positive solution of `x^2 - D y^2 = 4`.
    pub fn pell(&self) -> (&Integer, &Integer) {
        (&self.x_d, &self.y_d)
    }

    pub fn sqrt_d(&self) -> &Float {
        &self.sqrt_d
    }

    pub fn beta(&self) -> &Float {
        &self.beta
    }

    pub fn beta_star(&self) -> &Float {
        &self.beta_star
    }

    /// The totally positive fundamental unit `eps_D > 1`.
    pub fn eps(&self) -> &Float {
        &self.eps
    }

    pub fn eps_sq(&self) -> &Float {
        &self.eps_sq
    }

    pub fn log_eps(&self) -> &Float {
        &self.log_eps
    }

    pub fn log_eps_f64(&self) -> f64 {
        self.log_eps.to_f64()
    }

    /// `c_D = log(eps_D) / pi`.
    pub fn c_d(&self) -> &Float {
        &self.c_d
    }

    pub fn c_d_f64(&self) -> f64 {
        self.c_d.to_f64()
    }

    /// Length of each closed geodesic, `log(eps_D^2)`.
    pub fn geodesic_length(&self) -> Float {
        Float::with_val(self.bits, &self.log_eps * 2u32)
    }

    /// The two real embeddings of `e`.
    pub fn embed(&self, e: FieldElement) -> (Float, Float) {
        let x = hf(self.bits, e.a) + hf(self.bits, e.b) * &self.beta;
        let y = hf(self.bits, e.a) + hf(self.bits, e.b) * &self.beta_star;
        (x, y)
    }

    /// Exact total positivity test.
    pub fn is_totally_positive(&self, e: FieldElement) -> bool {
        let (p, q) = e.pq(self.disc());
        let (p, q) = (Integer::from(p), Integer::from(q));
        sign_quad(&p, &q, self.disc()) > 0 && sign_quad(&p, &(-q.clone()), self.disc()) > 0
    }

    /// Exact membership test for the fundamental domain
    /// `F_D = { totally positive alpha : alpha* <= alpha < eps^2 alpha* }`.
    pub fn fd_contains(&self, e: FieldElement) -> bool {
        if e.b < 0 {
            return false; // y <= x fails: x - y = b sqrt(D)
        }
        if !self.is_totally_positive(e) {
            return false;
        }
        // strict upper bound: eps^2 alpha* - alpha > 0
        let d = self.disc();
        let (p, q) = e.pq(d);
        let (p, q) = (Integer::from(p), Integer::from(q));
        let r = Integer::from(&self.p_eps2 * &p) - Integer::from(&self.q_eps2 * &q) * d
            - Integer::from(2) * &p;
        let s = Integer::from(&self.q_eps2 * &p) - Integer::from(&self.p_eps2 * &q)
            - Integer::from(2) * &q;
        sign_quad(&r, &s, d) > 0
    }

    /// `log(x/x*)` for a totally positive element, computed from the exact
    /// integer norm as `2 ln x - ln N` to avoid cancellation in `x*`.
    pub fn log_ratio(&self, e: FieldElement) -> Float {
        let (x, _) = self.embed(e);
        let n = e.norm(self.disc());
        assert!(n > 0, "log_ratio requires a totally positive element");
        x.ln() * 2u32 - hf(self.bits, n).ln()
    }

    /// `log(x/x*) / (2 log eps)`, in `[0, 1)` exactly when `e` lies in `F_D`.
    pub fn theta_coordinate(&self, e: FieldElement) -> Float {
        let lr = self.log_ratio(e);
        lr / (Float::with_val(self.bits, &self.log_eps * 2u32))
    }

    /// Every element of `F_D` with norm in `[lo, hi]`, in lexicographic
    /// `(a, b)` order. Boundary conditions are exact.
    pub fn elements_in_fd(&self, lo: i128, hi: i128) -> Result<Vec<FieldElement>> {
        if hi < lo || hi < 1 {
            return Ok(Vec::new());
        }
        let lo = lo.max(1);
        let eps = self.eps.to_f64();
        let x_max = eps * (hi as f64).sqrt();
        if !x_max.is_finite() || x_max > 4.0e15 {
            return Err(Error::ConfigError(format!(
                "fundamental-domain enumeration bound {x_max:.3e} too large for D={}",
                self.disc()
            )));
        }
        let sqrt_d = self.sqrt_d.to_f64();
        let beta = self.beta.to_f64();
        let x_min = (lo as f64).sqrt();
        let b_max = (x_max / sqrt_d).ceil() as i64 + 1;
        let mut out = Vec::new();
        for b in 0..=b_max {
            let a_lo = (x_min - b as f64 * beta).floor() as i64 - 1;
            let a_hi = (x_max - b as f64 * beta).ceil() as i64 + 1;
            for a in a_lo..=a_hi {
                let e = FieldElement::new(a, b);
                let n = e.norm(self.disc());
                if n < lo || n > hi {
                    continue;
                }
                if self.fd_contains(e) {
                    out.push(e);
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Lattice points of `L_D` that are totally positive, have norm in
    /// `[lo, hi]`, and whose embedding ratio `x/y` lies in the given cone.
    /// Cone bounds are compared at working precision; `strict_*` control
    /// boundary inclusion. Deterministic lexicographic order.
    pub fn elements_in_region(
        &self,
        lo: i128,
        hi: i128,
        ratio_lo: &Float,
        ratio_hi: &Float,
        strict_lo: bool,
        strict_hi: bool,
    ) -> Result<Vec<FieldElement>> {
        if hi < lo || hi < 1 || ratio_hi < ratio_lo || *ratio_hi <= 0u32 {
            return Ok(Vec::new());
        }
        let lo = lo.max(1);
        let rlo = ratio_lo.to_f64().max(1e-300);
        let rhi = ratio_hi.to_f64();
        let x_max = (hi as f64 * rhi).sqrt();
        let x_min = (lo as f64 * rlo).sqrt();
        if !x_max.is_finite() || x_max > 4.0e15 {
            return Err(Error::ConfigError(format!(
                "region enumeration bound {x_max:.3e} too large for D={}",
                self.disc()
            )));
        }
        let sqrt_d = self.sqrt_d.to_f64();
        let beta = self.beta.to_f64();
        // y ranges over [x_min/rhi, x_max/rlo]; b = (x - y)/sqrt(D)
        let y_max = x_max / rlo;
        let b_min = ((x_min - y_max) / sqrt_d).floor() as i64 - 1;
        let b_max = ((x_max - x_min / rhi) / sqrt_d).ceil() as i64 + 1;
        let mut out = Vec::new();
        for b in b_min..=b_max {
            let a_lo = (x_min - b as f64 * beta).floor() as i64 - 1;
            let a_hi = (x_max - b as f64 * beta).ceil() as i64 + 1;
            for a in a_lo..=a_hi {
                let e = FieldElement::new(a, b);
                let n = e.norm(self.disc());
                if n < lo || n > hi {
                    continue;
                }
                if !self.is_totally_positive(e) {
                    continue;
                }
                let (x, y) = self.embed(e);
                // compare x against ratio * y at working precision
                let lo_val = Float::with_val(self.bits, ratio_lo * &y);
                let hi_val = Float::with_val(self.bits, ratio_hi * &y);
                let lo_ok = if strict_lo { x > lo_val } else { x >= lo_val };
                let hi_ok = if strict_hi { x < hi_val } else { x <= hi_val };
                if lo_ok && hi_ok {
                    out.push(e);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}
