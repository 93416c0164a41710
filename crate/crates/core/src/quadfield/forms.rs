//! Binary quadratic forms of positive discriminant: reduction, cycles,
//! Gauss composition, and the fundamental automorph of a cycle.

use crate::util::{isqrt_i128, xgcd_i128};
use crate::{Error, Result};
use rug::Integer;

/// A primitive integral binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let f = QForm { a, b, c };
        let d = f.disc();
        if d <= 0 {
            return Err(Error::InvalidForm(a, b, c, format!("discriminant {d} not positive")));
        }
        let g = gcd3(a, b, c);
        if g != 1 {
            return Err(Error::InvalidForm(a, b, c, format!("content {g} > 1")));
        }
        Ok(f)
    }

    pub fn disc(&self) -> i64 {
        (self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128) as i64
    }

    /// Reduced in the indefinite sense: `0 < b < sqrt(D)` and
    /// `sqrt(D) - b < 2|a| < sqrt(D) + b`, checked exactly.
    pub fn is_reduced(&self) -> bool {
        let d = self.disc() as i128;
        let b = self.b as i128;
        if b <= 0 || b * b >= d {
            return false;
        }
        let ta = 2 * (self.a as i128).abs();
        // 2|a| + b > sqrt(D)  and  2|a| - b < sqrt(D)
        (ta + b) * (ta + b) > d && (ta <= b || (ta - b) * (ta - b) < d)
    }

    /// The reduction/cycle step. Returns the successor form and the column
    /// parameter `t` of the applied transformation [[0,-1],[1,t]].
    pub fn rho(&self) -> (QForm, i64) {
        let d = self.disc() as i128;
        let s = isqrt_i128(d); // floor(sqrt(D)), D not a square here
        let c = self.c as i128;
        let ca = c.abs();
        let b = self.b as i128;
        // b' = -b + 2|c| k, maximal with b' < sqrt(D) if |c| < sqrt(D),
        // otherwise the representative in (-|c|, |c|].
        let bp = if ca * ca < d {
            let k = (s + b).div_euclid(2 * ca);
            -b + 2 * ca * k
        } else {
            let mut r = (-b).rem_euclid(2 * ca);
            if r > ca {
                r -= 2 * ca;
            }
            r
        };
        let cp = (bp * bp - d) / (4 * c);
        let t = (b + bp) / (2 * c);
        (
            QForm { a: self.c, b: bp as i64, c: cp as i64 },
            t as i64,
        )
    }

    /// Reduces by iterating `rho`; returns the reduced form.
    pub fn reduce(&self) -> QForm {
        let mut f = *self;
        for _ in 0..20_000 {
            if f.is_reduced() {
                return f;
            }
            f = f.rho().0;
        }
        panic!("form reduction did not terminate for {self:?}");
    }

    /// The cycle of a reduced form under `rho`.
    pub fn cycle(&self) -> Vec<QForm> {
        assert!(self.is_reduced(), "cycle requires a reduced form");
        let mut out = vec![*self];
        let mut f = self.rho().0;
        while f != *self {
            out.push(f);
            f = f.rho().0;
            assert!(out.len() < 100_000, "cycle did not close");
        }
        out
    }

    /// Action by A = [[p,q],[r,s]] in SL2(Z): (Q.A)(v) = Q(Av).
    pub fn act(&self, m: [[i64; 2]; 2]) -> QForm {
        let [[p, q], [r, s]] = m;
        let (a, b, c) = (self.a as i128, self.b as i128, self.c as i128);
        let (p, q, r, s) = (p as i128, q as i128, r as i128, s as i128);
        let a2 = a * p * p + b * p * r + c * r * r;
        let c2 = a * q * q + b * q * s + c * s * s;
        let b2 = 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s;
        QForm { a: a2 as i64, b: b2 as i64, c: c2 as i64 }
    }

    /// Gauss composition followed by reduction.
    pub fn compose(&self, other: &QForm) -> QForm {
        compose_raw(self, other).reduce()
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(a: i64, b: i64) -> i64 {
        let (mut a, mut b) = (a.abs(), b.abs());
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    g(g(a, b), c)
}

/// Composition of two forms of the same discriminant (Gauss/Dirichlet
/// composition), without the final reduction.
pub fn compose_raw(f1: &QForm, f2: &QForm) -> QForm {
    debug_assert_eq!(f1.disc(), f2.disc());
    let (mut f1, mut f2) = (*f1, *f2);
    if f1.a.abs() > f2.a.abs() {
        std::mem::swap(&mut f1, &mut f2);
    }
    let (a1, b1, _c1) = (f1.a as i128, f1.b as i128, f1.c as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2.rem_euclid(a1) == 0 {
        (0, a1)
    } else {
        let (g, u, _v) = xgcd_i128(a2, a1);
        (u, g)
    };
    let (x2, y2, d1) = if s.rem_euclid(d) == 0 {
        (0, -1, d)
    } else {
        let (g, u, v) = xgcd_i128(s, d);
        (u, -v, g)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let c3 = (c2 * d1 + r * (b2 + v2 * r)) / v1;
    QForm { a: a3 as i64, b: b3 as i64, c: c3 as i64 }
}

/// Walks one full period of the cycle of `reduced` and returns the
/// accumulated SL2(Z) transformation (the fundamental automorph of the form,
/// up to sign and inversion).
pub fn cycle_automorph(reduced: &QForm) -> [[Integer; 2]; 2] {
    assert!(reduced.is_reduced());
    let mut m = [
        [Integer::from(1), Integer::from(0)],
        [Integer::from(0), Integer::from(1)],
    ];
    let mut f = *reduced;
    loop {
        let (next, t) = f.rho();
        // right-multiply by [[0,-1],[1,t]]
        let m00 = Integer::from(&m[0][1]);
        let m01 = Integer::from(-&m[0][0]) + Integer::from(&m[0][1]) * t;
        let m10 = Integer::from(&m[1][1]);
        let m11 = Integer::from(-&m[1][0]) + Integer::from(&m[1][1]) * t;
        m = [[m00, m01], [m10, m11]];
        f = next;
        if f == *reduced {
            break;
        }
    }
    m
}

/// Enumerates every reduced form of fundamental discriminant `d > 0`.
pub fn reduced_forms(d: i64) -> Vec<QForm> {
    let dd = d as i128;
    let sq = isqrt_i128(dd);
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while (b as i128) <= sq {
        let prod4 = b as i128 * b as i128 - dd; // = 4ac < 0
        debug_assert_eq!(prod4.rem_euclid(4), 0);
        let prod = prod4 / 4;
        for aa in 1..=(-prod) {
            if (-prod) % aa != 0 {
                continue;
            }
            for a in [aa, -aa] {
                let c = prod / a;
                let f = QForm { a: a as i64, b, c: c as i64 };
                if f.is_reduced() {
                    out.push(f);
                }
            }
        }
        b += 2;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_examples() {
        // D = 5
        let f = QForm::new(1, 1, -1).unwrap();
        assert!(f.is_reduced());
        let cyc = f.cycle();
        assert_eq!(cyc.len(), 2);
        assert!(cyc.contains(&QForm { a: -1, b: 1, c: 1 }));
    }

    #[test]
    fn d12_two_cycles() {
        let forms = reduced_forms(12);
        assert_eq!(forms.len(), 4);
        let f = QForm::new(1, 2, -2).unwrap();
        let cyc = f.cycle();
        assert_eq!(cyc.len(), 2);
    }

    #[test]
    fn compose_identity_d12() {
        let p2 = QForm::new(2, 2, -1).unwrap();
        let r = p2.compose(&p2);
        // square of the ramified class is principal
        let principal = QForm::new(1, 2, -2).unwrap().reduce();
        assert_eq!(r.cycle().contains(&principal) || r == principal, true);
    }

    #[test]
    fn compose_preserves_disc() {
        let f = QForm::new(11, 7, 1).unwrap();
        let g = QForm::new(11, 15, 5).unwrap();
        let h = compose_raw(&f, &g);
        assert_eq!(h.disc(), 5);
    }

    #[test]
    fn rho_preserves_disc_and_closes() {
        for d in [5i64, 8, 12, 13, 40, 60, 205] {
            for f in reduced_forms(d) {
                let (g, _) = f.rho();
                assert_eq!(g.disc(), d);
                assert!(g.is_reduced(), "rho left reduced set: {f:?} -> {g:?}");
            }
        }
    }

    #[test]
    fn act_matches_rho_transform() {
        let f = QForm::new(1, 1, -1).unwrap();
        let (g, t) = f.rho();
        let h = f.act([[0, -1], [1, t]]);
        assert_eq!(g, h);
    }
}
