//! Integral ideals of the maximal order in two-generator normal form
//! `d * [n0, (b + sqrt(D))/2]`, their enumeration by norm, multiplication,
//! the dictionary to quadratic forms, narrow class indices, and totally
//! positive generators in the fundamental domain.

use super::classgroup::NarrowClassGroup;
use super::forms::QForm;
use super::{FieldElement, QuadField};
use crate::util::{gcd_i128, xgcd_i128};
use crate::{Error, Result};

/// An integral ideal `d * (Z n0 + Z (b + sqrt(D))/2)` with `b^2 = D mod 4 n0`
/// and `0 <= b < 2 n0`. Its norm is `d^2 n0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealRep {
    pub content: i64,
    pub n0: i64,
    pub b: i64,
}

impl IdealRep {
    pub fn new(content: i64, n0: i64, b: i64, d: i64) -> Result<Self> {
        if content < 1 || n0 < 1 {
            return Err(Error::IdealInconsistency(format!(
                "nonpositive parts: content {content}, n0 {n0}"
            )));
        }
        let b = b.rem_euclid(2 * n0);
        let chk = (b as i128 * b as i128 - d as i128).rem_euclid(4 * n0 as i128);
        if chk != 0 {
            return Err(Error::IdealInconsistency(format!(
                "b^2 != D mod 4 n0 for (d={content}, n0={n0}, b={b}) at D={d}"
            )));
        }
        Ok(IdealRep { content, n0, b })
    }

    /// The unit ideal.
    pub fn unit(d: i64) -> Self {
        IdealRep { content: 1, n0: 1, b: d.rem_euclid(2) }
    }

    pub fn norm(&self) -> i128 {
        self.content as i128 * self.content as i128 * self.n0 as i128
    }

    /// The Galois-conjugate ideal.
    pub fn conjugate(&self) -> Self {
        IdealRep {
            content: self.content,
            n0: self.n0,
            b: (-self.b).rem_euclid(2 * self.n0),
        }
    }

    /// The quadratic form `[n0, b, (b^2-D)/(4 n0)]` of the primitive part.
    pub fn form(&self, d: i64) -> QForm {
        let c = ((self.b as i128 * self.b as i128 - d as i128) / (4 * self.n0 as i128)) as i64;
        QForm { a: self.n0, b: self.b, c }
    }

    /// The primitive ideal attached to a form with positive leading
    /// coefficient.
    pub fn from_form(f: &QForm) -> Result<Self> {
        if f.a <= 0 {
            return Err(Error::InvalidForm(f.a, f.b, f.c, "need a > 0 for an ideal".into()));
        }
        Ok(IdealRep { content: 1, n0: f.a, b: f.b.rem_euclid(2 * f.a) })
    }
}

/// All ideals of norm `n >= 1`, via content-primitive decomposition and the
/// roots of `b^2 = D mod 4 n0`. Deterministic order.
pub fn ideals_of_norm(d: i64, n: i64) -> Vec<IdealRep> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut f = 1i64;
    while f * f <= n {
        if n % (f * f) == 0 {
            let n0 = n / (f * f);
            for b in 0..(2 * n0) {
                if (b as i128 * b as i128 - d as i128).rem_euclid(4 * n0 as i128) == 0 {
                    out.push(IdealRep { content: f, n0, b });
                }
            }
        }
        f += 1;
    }
    out.sort();
    out
}

/// Number of ideals of norm `n` (the divisor function of the field).
pub fn ideal_count(d: i64, n: i64) -> usize {
    ideals_of_norm(d, n).len()
}

/// Ideal multiplication via Hermite normal form of the product module.
pub fn ideal_mul(d: i64, x: &IdealRep, y: &IdealRep) -> Result<IdealRep> {
    let sigma = d.rem_euclid(2) as i128;
    // omega = beta_D; for odd D: omega^2 = omega + (D-1)/4, for even D: omega^2 = D/4
    let k0 = if sigma == 1 { (d as i128 - 1) / 4 } else { d as i128 / 4 };
    let mul = |u1: i128, v1: i128, u2: i128, v2: i128| -> (i128, i128) {
        (u1 * u2 + k0 * v1 * v2, u1 * v2 + u2 * v1 + sigma * v1 * v2)
    };
    // basis of an ideal over {1, omega}: (d n0, 0), (d bb, d), bb = (b - sigma)/2
    let basis = |i: &IdealRep| -> [(i128, i128); 2] {
        let bb = (i.b as i128 - sigma) / 2;
        [
            (i.content as i128 * i.n0 as i128, 0),
            (i.content as i128 * bb, i.content as i128),
        ]
    };
    let bx = basis(x);
    let by = basis(y);
    let mut gens: Vec<(i128, i128)> = Vec::with_capacity(4);
    for g1 in &bx {
        for g2 in &by {
            gens.push(mul(g1.0, g1.1, g2.0, g2.1));
        }
    }
    // HNF: find w with omega-part = gcd of omega-parts
    let mut w = (0i128, 0i128);
    for g in &gens {
        if g.1 == 0 {
            continue;
        }
        if w.1 == 0 {
            w = *g;
        } else {
            let (g_, u, v) = xgcd_i128(w.1, g.1);
            w = (u * w.0 + v * g.0, g_);
        }
    }
    if w.1 == 0 {
        return Err(Error::IdealInconsistency("product module has rank < 2".into()));
    }
    if w.1 < 0 {
        w = (-w.0, -w.1);
    }
    let c = w.1;
    let mut a = 0i128;
    for g in &gens {
        debug_assert_eq!(g.1 % c, 0);
        let reduced = g.0 - (g.1 / c) * w.0;
        a = gcd_i128(a, reduced);
    }
    if a == 0 {
        return Err(Error::IdealInconsistency("product module has rank < 2".into()));
    }
    let b_over = w.0.rem_euclid(a);
    // normal form: content = c', n0 = a/c, b = 2*(B/c) + sigma
    if a % c != 0 || b_over % c != 0 {
        return Err(Error::IdealInconsistency("product module is not an ideal".into()));
    }
    let content = c;
    let n0 = a / c;
    let b = (2 * (b_over / c) + sigma).rem_euclid(2 * n0);
    let rep = IdealRep::new(content as i64, n0 as i64, b as i64, d)?;
    debug_assert_eq!(rep.norm(), x.norm() * y.norm(), "norms must multiply");
    Ok(rep)
}

/// Power of an ideal.
pub fn ideal_pow(d: i64, x: &IdealRep, k: u32) -> Result<IdealRep> {
    let mut acc = IdealRep::unit(d);
    for _ in 0..k {
        acc = ideal_mul(d, &acc, x)?;
    }
    Ok(acc)
}

/// The principal ideal generated by a nonzero integral element.
pub fn ideal_of_element(d: i64, e: FieldElement) -> Result<IdealRep> {
    let sigma = d.rem_euclid(2) as i128;
    let k0 = if sigma == 1 { (d as i128 - 1) / 4 } else { d as i128 / 4 };
    // generators e and e*omega over {1, omega}
    let (a, b) = (e.a as i128, e.b as i128);
    let gens = [(a, b), (k0 * b, a + sigma * b)];
    let (g_, u, v) = xgcd_i128(gens[0].1, gens[1].1);
    let mut w = (u * gens[0].0 + v * gens[1].0, g_);
    if w.1 == 0 {
        return Err(Error::IdealInconsistency("zero element".into()));
    }
    if w.1 < 0 {
        w = (-w.0, -w.1);
    }
    let c = w.1;
    let mut aa = 0i128;
    for g in &gens {
        let reduced = g.0 - (g.1 / c) * w.0;
        aa = gcd_i128(aa, reduced);
    }
    let b_over = w.0.rem_euclid(aa);
    let content = c;
    let n0 = aa / c;
    let bb = (2 * (b_over / c) + sigma).rem_euclid(2 * n0);
    IdealRep::new(content as i64, n0 as i64, bb as i64, d)
}

/// Exact membership test.
pub fn element_in_ideal(d: i64, e: FieldElement, i: &IdealRep) -> bool {
    let sigma = d.rem_euclid(2) as i128;
    let (a, b) = (e.a as i128, e.b as i128);
    let dc = i.content as i128;
    if b.rem_euclid(dc) != 0 {
        return false;
    }
    let y = b / dc;
    let bb = (i.b as i128 - sigma) / 2;
    (a - y * dc * bb).rem_euclid(dc * i.n0 as i128) == 0
}

/// Narrow ideal class index via the form dictionary.
pub fn ideal_class(group: &NarrowClassGroup, i: &IdealRep) -> Result<usize> {
    group.class_of_form(&i.form(group.disc()))
}

/// Exponent vector of the ideal class in the group's fixed decomposition.
pub fn ideal_class_index(group: &NarrowClassGroup, i: &IdealRep) -> Result<Vec<u32>> {
    Ok(group.exponents_of_class(ideal_class(group, i)?).to_vec())
}

/// True iff the ideal has a totally positive generator.
pub fn is_narrowly_principal(group: &NarrowClassGroup, i: &IdealRep) -> Result<bool> {
    Ok(ideal_class(group, i)? == group.principal_class())
}

/// The unique totally positive generator lying in the fundamental domain,
/// found by bounded lattice enumeration. Fails if the ideal is not narrowly
/// principal (no generator exists) or if the search bound is exceeded.
pub fn totally_positive_generator(field: &QuadField, i: &IdealRep) -> Result<FieldElement> {
    let n = i.norm();
    let cands = field.elements_in_fd(n, n).map_err(|_| Error::GeneratorNotFound {
        norm: n,
        bound: n,
    })?;
    let mut hits = cands
        .into_iter()
        .filter(|e| element_in_ideal(field.disc(), *e, i));
    match (hits.next(), hits.next()) {
        (Some(g), None) => Ok(g),
        (None, _) => Err(Error::GeneratorNotFound { norm: n, bound: n }),
        (Some(a), Some(b)) => Err(Error::IdealInconsistency(format!(
            "two fundamental-domain generators {a:?}, {b:?} for one ideal"
        ))),
    }
}
