//! The dictionary between primitive indefinite quadratic forms, primitive
//! hyperbolic matrices, and closed geodesics on the modular surface.

use crate::precision::{hf, Float};
use crate::quadfield::classgroup::NarrowClassGroup;
use crate::quadfield::forms::QForm;
use crate::quadfield::QuadField;
use crate::{Error, Result};
use rug::Integer;

/// An integer matrix of determinant one with `|trace| > 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicMatrix {
    pub m: [[Integer; 2]; 2],
}

impl HyperbolicMatrix {
    pub fn new(m: [[Integer; 2]; 2]) -> Result<Self> {
        let det = Integer::from(&m[0][0] * &m[1][1]) - Integer::from(&m[0][1] * &m[1][0]);
        if det != 1 {
            return Err(Error::InvalidForm(0, 0, 0, format!("determinant {det} != 1")));
        }
        let tr = Integer::from(&m[0][0] + &m[1][1]);
        if tr.clone().abs() <= 2 {
            return Err(Error::NotHyperbolic(tr.to_i64().unwrap_or(0)));
        }
        Ok(HyperbolicMatrix { m })
    }

    pub fn trace(&self) -> Integer {
        Integer::from(&self.m[0][0] + &self.m[1][1])
    }

    /// Conjugate `A^{-1} M A` for `A` in SL2(Z).
    pub fn conjugate_by(&self, a: [[i64; 2]; 2]) -> Self {
        let [[p, q], [r, s]] = a;
        // A^{-1} = [[s, -q], [-r, p]]
        let mm = &self.m;
        let t00 = Integer::from(s) * &mm[0][0] - Integer::from(q) * &mm[1][0];
        let t01 = Integer::from(s) * &mm[0][1] - Integer::from(q) * &mm[1][1];
        let t10 = Integer::from(-r) * &mm[0][0] + Integer::from(p) * &mm[1][0];
        let t11 = Integer::from(-r) * &mm[0][1] + Integer::from(p) * &mm[1][1];
        let n00 = Integer::from(&t00 * p) + Integer::from(&t01 * r);
        let n01 = Integer::from(&t00 * q) + Integer::from(&t01 * s);
        let n10 = Integer::from(&t10 * p) + Integer::from(&t11 * r);
        let n11 = Integer::from(&t10 * q) + Integer::from(&t11 * s);
        HyperbolicMatrix { m: [[n00, n01], [n10, n11]] }
    }
}

/// The stabilizer generator of a form `[a, b, c]` of discriminant `D`:
/// `[[(x - b y)/2, -c y], [a y, (x + b y)/2]]` with `(x, y)` the fundamental
/// Pell solution.
pub fn matrix_of_form(field: &QuadField, q: &QForm) -> Result<HyperbolicMatrix> {
    if q.disc() != field.disc() {
        return Err(Error::InvalidForm(q.a, q.b, q.c, "discriminant mismatch".into()));
    }
    let (x, y) = field.pell();
    let by = Integer::from(q.b) * y;
    let num0 = Integer::from(x - &by);
    let num1 = Integer::from(x + &by);
    if num0.is_odd() || num1.is_odd() {
        return Err(Error::InvalidForm(
            q.a,
            q.b,
            q.c,
            "parity failure of x_D - b y_D (bad discriminant)".into(),
        ));
    }
    let m = [
        [num0 / 2u32, Integer::from(-q.c) * y],
        [Integer::from(q.a) * y, num1 / 2u32],
    ];
    HyperbolicMatrix::new(m)
}

/// The norm `N(M) = lambda^2` where `lambda` is the eigenvalue with
/// `|lambda| > 1`, at working precision.
pub fn matrix_norm(field: &QuadField, m: &HyperbolicMatrix) -> Result<Float> {
    let bits = field.bits();
    let tr = m.trace().abs();
    if tr <= 2 {
        return Err(Error::NotHyperbolic(tr.to_i64().unwrap_or(0)));
    }
    let t = hf(bits, &tr);
    let disc = (t.clone() * &t - 4u32).sqrt();
    let lambda = (t + disc) / 2u32;
    Ok(lambda.clone() * lambda)
}

/// A closed geodesic of the modular surface attached to a narrow ideal class.
#[derive(Debug, Clone)]
pub struct ClosedGeodesic {
    pub form: QForm,
    pub matrix: HyperbolicMatrix,
    /// Endpoints of the lift, `omega > omega_star`.
    pub omega: Float,
    pub omega_star: Float,
    /// The normalizing matrix mapping `(omega, omega_star)` to `(0, infinity)`.
    pub kappa: [[Float; 2]; 2],
    /// Length `log(eps_D^2)`.
    pub length: Float,
}

impl ClosedGeodesic {
    fn from_form(field: &QuadField, form: QForm) -> Result<Self> {
        let bits = field.bits();
        let matrix = matrix_of_form(field, &form)?;
        // roots of a x^2 + b x + c; for a > 0 the convention omega > omega*
        // picks (-b + sqrt D)/(2a)
        let sq = field.sqrt_d();
        let two_a = hf(bits, 2 * form.a);
        let (omega, omega_star) = if form.a > 0 {
            (
                (hf(bits, -form.b) + sq) / &two_a,
                (hf(bits, -form.b) - sq) / &two_a,
            )
        } else {
            (
                (hf(bits, -form.b) - sq) / &two_a,
                (hf(bits, -form.b) + sq) / &two_a,
            )
        };
        let scale = Float::with_val(bits, &omega - &omega_star).sqrt().recip();
        let kappa = [
            [scale.clone(), Float::with_val(bits, -&omega) * &scale],
            [scale.clone(), Float::with_val(bits, -&omega_star) * &scale],
        ];
        let length = field.geodesic_length();
        Ok(ClosedGeodesic { form, matrix, omega, omega_star, kappa, length })
    }

    /// The point `kappa^{-1} . (i e^{L x})` on the upper half-plane, `L` the
    /// geodesic length and `x` in `[0, 1)`.
    pub fn point(&self, x: f64) -> (f64, f64) {
        let bits = self.length.prec();
        let w_im = Float::with_val(bits, &self.length * x).exp();
        // kappa^{-1} = [[-omega*, omega], [-1, 1]] * scale (det-1 inverse)
        // Moebius action on w = i * w_im:
        //   z = (-omega* (i w) + omega * s2...) with the scale cancelling
        // kappa = s [[1, -omega], [1, -omega*]]; kappa^{-1} = s [[-omega*, omega], [-1, 1]]
        // z = (-omega* * w + omega) / (-w + 1), w = i w_im
        let om = self.omega.to_f64();
        let oms = self.omega_star.to_f64();
        let wv = w_im.to_f64();
        // complex arithmetic: w = i wv
        let num = num_complex::Complex64::new(om, -oms * wv);
        let den = num_complex::Complex64::new(1.0, -wv);
        let z = num / den;
        (z.re, z.im)
    }
}

/// One closed geodesic per narrow ideal class, built from the
/// positive-leading-coefficient class representatives.
pub fn geodesics_for_discriminant(
    field: &QuadField,
    group: &NarrowClassGroup,
) -> Result<Vec<ClosedGeodesic>> {
    group
        .positive_representatives()
        .iter()
        .map(|f| ClosedGeodesic::from_form(field, *f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::forms::reduced_forms;

    #[test]
    fn matrix_of_form_d5() {
        let field = QuadField::new(5).unwrap();
        let f = QForm::new(1, 1, -1).unwrap();
        let m = matrix_of_form(&field, &f).unwrap();
        assert_eq!(m.m[0][0], 1);
        assert_eq!(m.m[0][1], 1);
        assert_eq!(m.m[1][0], 1);
        assert_eq!(m.m[1][1], 2);
    }

    #[test]
    fn matrix_norm_is_eps_squared() {
        for d in [5i64, 8, 12, 13, 40] {
            let field = QuadField::new(d).unwrap();
            for f in reduced_forms(d) {
                let m = matrix_of_form(&field, &f).unwrap();
                let n = matrix_norm(&field, &m).unwrap();
                let diff = Float::with_val(field.bits(), &n - field.eps_sq())
                    .abs()
                    .to_f64();
                assert!(diff / field.eps_sq().to_f64() < 1e-40, "D={d} f={f:?}");
                // trace is x_D
                assert_eq!(m.trace(), *field.pell().0);
            }
        }
    }

    #[test]
    fn norm_invariant_under_conjugation() {
        let field = QuadField::new(5).unwrap();
        let f = QForm::new(1, 1, -1).unwrap();
        let m = matrix_of_form(&field, &f).unwrap();
        let c = m.conjugate_by([[1, 1], [0, 1]]);
        let n1 = matrix_norm(&field, &m).unwrap().to_f64();
        let n2 = matrix_norm(&field, &c).unwrap().to_f64();
        assert!((n1 - n2).abs() < 1e-12);
    }

    #[test]
    fn equivariance_spot_check() {
        // (q.A) maps to A^{-1} M A for A = [[1,1],[0,1]]
        let field = QuadField::new(5).unwrap();
        let q = QForm::new(1, 1, -1).unwrap();
        let a = [[1i64, 1], [0, 1]];
        let qa = q.act(a);
        let m_qa = matrix_of_form(&field, &qa).unwrap();
        let m_q = matrix_of_form(&field, &q).unwrap();
        assert_eq!(m_qa, m_q.conjugate_by(a));
    }

    #[test]
    fn matrix_fixes_roots() {
        // Moebius action evaluated at working precision: residual < 1e-15
        for d in [5i64, 8, 12, 13, 17, 40, 60] {
            let field = QuadField::new(d).unwrap();
            let bits = field.bits();
            for f in reduced_forms(d) {
                let m = matrix_of_form(&field, &f).unwrap();
                for sign in [1i32, -1] {
                    let root = (hf(bits, -f.b) + hf(bits, sign) * field.sqrt_d())
                        / hf(bits, 2 * f.a);
                    let p = hf(bits, &m.m[0][0]) * &root + hf(bits, &m.m[0][1]);
                    let q = hf(bits, &m.m[1][0]) * &root + hf(bits, &m.m[1][1]);
                    let image = p / q;
                    let resid = Float::with_val(bits, &image - &root).abs().to_f64();
                    assert!(resid < 1e-15, "D={d} f={f:?} residual {resid:.3e}");
                }
            }
        }
    }

    #[test]
    fn geodesic_count_and_length() {
        for (d, h) in [(5i64, 1usize), (12, 2), (40, 2)] {
            let field = QuadField::new(d).unwrap();
            let group = NarrowClassGroup::new(d).unwrap();
            let gs = geodesics_for_discriminant(&field, &group).unwrap();
            assert_eq!(gs.len(), h);
            let expect = (field.eps_sq().to_f64()).ln();
            for g in &gs {
                assert!((g.length.to_f64() - expect).abs() / expect < 1e-12);
            }
        }
        // D=5: length = 2 log((3+sqrt5)/2) = 1.9248...
        let field = QuadField::new(5).unwrap();
        let l = field.geodesic_length().to_f64();
        assert!((l - 1.9248473002384139).abs() < 1e-12);
    }

    #[test]
    fn kappa_maps_endpoints_and_has_det_one() {
        for d in [5i64, 12, 40] {
            let field = QuadField::new(d).unwrap();
            let group = NarrowClassGroup::new(d).unwrap();
            for g in geodesics_for_discriminant(&field, &group).unwrap() {
                let bits = field.bits();
                let det = Float::with_val(bits, &g.kappa[0][0] * &g.kappa[1][1])
                    - Float::with_val(bits, &g.kappa[0][1] * &g.kappa[1][0]);
                assert!((det - 1u32).abs().to_f64() < 1e-30);
                // kappa . omega = 0, kappa . omega* = infinity (denominator 0)
                let num = Float::with_val(bits, &g.kappa[0][0] * &g.omega) + &g.kappa[0][1];
                let den = Float::with_val(bits, &g.kappa[1][0] * &g.omega_star) + &g.kappa[1][1];
                assert!(num.abs().to_f64() < 1e-30);
                assert!(den.abs().to_f64() < 1e-30);
            }
        }
    }

    #[test]
    fn geodesic_points_on_semicircle() {
        for d in [5i64, 12] {
            let field = QuadField::new(d).unwrap();
            let group = NarrowClassGroup::new(d).unwrap();
            for g in geodesics_for_discriminant(&field, &group).unwrap() {
                let center = (g.omega.to_f64() + g.omega_star.to_f64()) / 2.0;
                let radius = (g.omega.to_f64() - g.omega_star.to_f64()) / 2.0;
                for k in 0..32 {
                    let x = k as f64 / 32.0;
                    let (px, py) = g.point(x);
                    assert!(py > 0.0);
                    let dist = ((px - center).powi(2) + py * py).sqrt();
                    assert!((dist - radius).abs() < 1e-13 * radius.max(1.0), "D={d} x={x}");
                }
                // x = 0 maps to kappa^{-1} i
                let (px, py) = g.point(0.0);
                // kappa^{-1} . i = (omega - i omega*) / (1 - i) -- check via kappa action
                let z = num_complex::Complex64::new(px, py);
                let k00 = g.kappa[0][0].to_f64();
                let k01 = g.kappa[0][1].to_f64();
                let k10 = g.kappa[1][0].to_f64();
                let k11 = g.kappa[1][1].to_f64();
                let w = (z * k00 + k01) / (z * k10 + k11);
                assert!((w - num_complex::Complex64::new(0.0, 1.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn arclength_pullback_matches_length() {
        // numerically integrate |dPhi/dx| / Im(Phi) over [0,1]
        let field = QuadField::new(5).unwrap();
        let group = NarrowClassGroup::new(5).unwrap();
        let g = &geodesics_for_discriminant(&field, &group).unwrap()[0];
        let f = |x: f64| {
            // interior finite differences; Gauss nodes stay inside (0, 1)
            let h = 1e-5;
            let (x1, y1) = g.point(x - h);
            let (x2, y2) = g.point(x + h);
            let dx = (x2 - x1) / (2.0 * h);
            let dy = (y2 - y1) / (2.0 * h);
            let (_, y) = g.point(x);
            (dx * dx + dy * dy).sqrt() / y
        };
        let val = crate::util::integrate_gl(&f, 0.0, 1.0, 16, 64);
        let expect = field.geodesic_length().to_f64();
        assert!((val - expect).abs() < 1e-8, "{val} vs {expect}");
    }
}
