//! Hecke characters `chi_{psi,n}` of the real quadratic field and Fourier
//! coefficients of the associated theta series.
//!
//! A character is a narrow class group character `psi` together with a
//! frequency `n`; on an ideal `a = x J_1^{t_1} ... J_s^{t_s}` it takes the
//! value `psi([a]) |x/x*|^{pi i n / log eps}`. The generators `J_i` and the
//! fractional generator `x` are fixed deterministically (lexicographically
//! minimal reduced forms, totally positive generators in the fundamental
//! domain), so individual character values depend on that choice; summed
//! quantities do not.

use crate::precision::{hf, pi, reduce_mod, Float};
use crate::quadfield::classgroup::NarrowClassGroup;
use crate::quadfield::ideals::{
    ideal_class_index, ideal_mul, ideal_pow, ideals_of_norm, totally_positive_generator, IdealRep,
};
use crate::quadfield::QuadField;
use crate::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// A narrow class group character, given by exponents against the group's
/// fixed cyclic decomposition: `psi([J_i]) = e(e_i / h_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassCharacter {
    pub exps: Vec<u32>,
}

impl ClassCharacter {
    pub fn trivial(group: &NarrowClassGroup) -> Self {
        ClassCharacter { exps: vec![0; group.factors().len()] }
    }

    /// Every character of the group, in lexicographic exponent order.
    pub fn all(group: &NarrowClassGroup) -> Vec<Self> {
        let mut out = Vec::with_capacity(group.h_plus());
        let s = group.factors().len();
        let mut counters = vec![0u32; s];
        loop {
            out.push(ClassCharacter { exps: counters.clone() });
            let mut i = 0;
            loop {
                if i == s {
                    return out;
                }
                counters[i] += 1;
                if counters[i] < group.factors()[i].order {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }

    /// The inverse character.
    pub fn inverse(&self, group: &NarrowClassGroup) -> Self {
        ClassCharacter {
            exps: self
                .exps
                .iter()
                .zip(group.factors())
                .map(|(&e, f)| if e == 0 { 0 } else { f.order - e })
                .collect(),
        }
    }

    /// Rational multiple of a full turn: `sum e_i t_i / h_i mod 1`.
    fn phase_fraction(&self, group: &NarrowClassGroup, class: usize) -> (i64, i64) {
        let ts = group.exponents_of_class(class);
        let mut num = 0i64;
        let mut den = 1i64;
        for ((&e, &t), f) in self.exps.iter().zip(ts).zip(group.factors()) {
            let h = f.order as i64;
            num = num * h + den * (e as i64 * t as i64).rem_euclid(h);
            den *= h;
        }
        (num.rem_euclid(den), den)
    }

    /// `psi([class])` in double precision.
    pub fn value_on_class(&self, group: &NarrowClassGroup, class: usize) -> Complex64 {
        let (num, den) = self.phase_fraction(group, class);
        let ang = std::f64::consts::TAU * num as f64 / den as f64;
        Complex64::new(ang.cos(), ang.sin())
    }

    pub fn is_real(&self, group: &NarrowClassGroup) -> bool {
        self.exps
            .iter()
            .zip(group.factors())
            .all(|(&e, f)| e == 0 || 2 * e == f.order)
    }
}

/// A Hecke character: class character and integer frequency.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeckeCharacter {
    pub psi: ClassCharacter,
    pub n: i64,
}

impl HeckeCharacter {
    /// Spectral parameter `r = pi n / log(eps_D)` of the theta series.
    pub fn spectral_parameter(&self, field: &QuadField) -> f64 {
        std::f64::consts::PI * self.n as f64 / field.log_eps_f64()
    }
}

/// Which of the two displayed coefficient normalizations to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaVariant {
    /// `(1/2) sum chi([a])` — pairs with even forms.
    Plain,
    /// `sgn(n)/(2i) sum chi([a])` — pairs with odd forms.
    SignWeighted,
}

/// A value on the unit circle carried as a high-precision phase.
#[derive(Debug, Clone)]
pub struct UnitComplex {
    /// Phase in radians, reduced into `[0, 2 pi)` at working precision.
    pub phase: Float,
}

impl UnitComplex {
    pub fn to_c64(&self) -> Complex64 {
        let p = self.phase.to_f64();
        Complex64::new(p.cos(), p.sin())
    }

    /// Phase distance to another unit complex, modulo a full turn.
    pub fn phase_distance(&self, other: &UnitComplex) -> Float {
        let bits = self.phase.prec();
        let tau = crate::precision::two_pi(bits);
        let mut d = reduce_mod(&Float::with_val(bits, &self.phase - &other.phase), &tau);
        let half = Float::with_val(bits, &tau / 2u32);
        if d > half {
            d = tau - d;
        }
        d
    }
}

/// Per-ideal character data: narrow class exponents and the coordinate
/// `theta_a = log(x/x*) / (2 log eps)` of the fixed fractional generator.
#[derive(Debug, Clone)]
pub struct IdealClassData {
    pub exps: Vec<u32>,
    pub theta: Float,
}

/// Context bundling the field, its narrow class group, the fixed cyclic
/// generators with their anchor data, and caches for per-ideal data and
/// theta coefficient tables.
pub struct HeckeContext {
    field: QuadField,
    group: NarrowClassGroup,
    /// Generator ideals `J_i`, one per cyclic factor.
    j_ideals: Vec<IdealRep>,
    /// Powers `J_i^k` for `0 <= k <= h_i`.
    j_pows: Vec<Vec<IdealRep>>,
    /// `log(delta_i / delta_i*)` for the totally positive generator of `J_i^{h_i}`.
    delta_log_ratio: Vec<Float>,
    ideal_cache: RwLock<HashMap<IdealRep, Arc<IdealClassData>>>,
    table_cache: RwLock<HashMap<(Vec<u32>, i64, ThetaVariant), Arc<Vec<Complex64>>>>,
}

impl HeckeContext {
    pub fn new(d: i64) -> Result<Self> {
        Self::with_field(QuadField::new(d)?)
    }

    pub fn with_field(field: QuadField) -> Result<Self> {
        let group = NarrowClassGroup::new(field.disc())?;
        let mut j_ideals = Vec::new();
        let mut j_pows = Vec::new();
        let mut delta_log_ratio = Vec::new();
        for f in group.factors() {
            let form = group.positive_representatives()[f.class_idx];
            let j = IdealRep::from_form(&form)?;
            let mut pows = vec![IdealRep::unit(field.disc())];
            for k in 1..=f.order {
                let prev = pows[(k - 1) as usize];
                pows.push(ideal_mul(field.disc(), &prev, &j)?);
            }
            let delta = totally_positive_generator(&field, &pows[f.order as usize])?;
            delta_log_ratio.push(field.log_ratio(delta));
            j_ideals.push(j);
            j_pows.push(pows);
        }
        Ok(HeckeContext {
            field,
            group,
            j_ideals,
            j_pows,
            delta_log_ratio,
            ideal_cache: RwLock::new(HashMap::new()),
            table_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &QuadField {
        &self.field
    }

    pub fn group(&self) -> &NarrowClassGroup {
        &self.group
    }

    pub fn generator_ideals(&self) -> &[IdealRep] {
        &self.j_ideals
    }

    /// Class exponents and generator coordinate for an ideal, cached.
    pub fn ideal_data(&self, ideal: &IdealRep) -> Result<Arc<IdealClassData>> {
        if let Some(hit) = self.ideal_cache.read().unwrap().get(ideal) {
            return Ok(hit.clone());
        }
        let d = self.field.disc();
        let exps = ideal_class_index(&self.group, ideal)?;
        // P = ideal * prod_{t_i > 0} J_i^{h_i - t_i} is narrowly principal
        let mut p = *ideal;
        for (i, &t) in exps.iter().enumerate() {
            if t > 0 {
                let k = self.group.factors()[i].order - t;
                p = ideal_mul(d, &p, &self.j_pows[i][k as usize])?;
            }
        }
        let g = totally_positive_generator(&self.field, &p)?;
        let bits = self.field.bits();
        let mut log_ratio = self.field.log_ratio(g);
        for (i, &t) in exps.iter().enumerate() {
            if t > 0 {
                log_ratio -= &self.delta_log_ratio[i];
            }
        }
        let theta = log_ratio / Float::with_val(bits, self.field.log_eps() * 2u32);
        let data = Arc::new(IdealClassData { exps, theta });
        self.ideal_cache
            .write()
            .unwrap()
            .insert(*ideal, data.clone());
        Ok(data)
    }

    /// `chi_{psi,n}([a])` as a unit complex with high-precision phase.
    pub fn eval_character(&self, chi: &HeckeCharacter, ideal: &IdealRep) -> Result<UnitComplex> {
        let data = self.ideal_data(ideal)?;
        let bits = self.field.bits();
        let tau = crate::precision::two_pi(bits);
        // psi part: sum e_i t_i / h_i of a turn
        let mut frac = Float::with_val(bits, 0u32);
        for ((&e, &t), f) in chi.psi.exps.iter().zip(data.exps.iter()).zip(self.group.factors()) {
            frac += hf(bits, e as u64 * t as u64) / hf(bits, f.order);
        }
        // archimedean part: n * theta_a turns
        let mut phase = Float::with_val(bits, &frac + Float::with_val(bits, &data.theta * chi.n));
        phase *= &tau;
        Ok(UnitComplex { phase: reduce_mod(&phase, &tau) })
    }

    /// Theta coefficient `lambda_theta(m)` for `m != 0`.
    pub fn theta_coefficient(
        &self,
        chi: &HeckeCharacter,
        variant: ThetaVariant,
        m: i64,
    ) -> Result<Complex64> {
        assert!(m != 0, "theta coefficient needs m != 0");
        let mm = m.abs();
        let mut sum = Complex64::new(0.0, 0.0);
        for ideal in ideals_of_norm(self.field.disc(), mm) {
            sum += self.eval_character(chi, &ideal)?.to_c64();
        }
        Ok(match variant {
            ThetaVariant::Plain => sum / 2.0,
            ThetaVariant::SignWeighted => {
                sum * m.signum() as f64 / Complex64::new(0.0, 2.0)
            }
        })
    }

    /// Coefficient table `lambda_theta(1..=m_max)`, cached per
    /// `(psi, n, variant)`.
    pub fn theta_table(
        &self,
        chi: &HeckeCharacter,
        variant: ThetaVariant,
        m_max: usize,
    ) -> Result<Arc<Vec<Complex64>>> {
        let key = (chi.psi.exps.clone(), chi.n, variant);
        if let Some(hit) = self.table_cache.read().unwrap().get(&key) {
            if hit.len() >= m_max {
                return Ok(hit.clone());
            }
        }
        let mut table = Vec::with_capacity(m_max);
        for m in 1..=m_max {
            table.push(self.theta_coefficient(chi, variant, m as i64)?);
        }
        let arc = Arc::new(table);
        self.table_cache.write().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Hecke-normalized eigenvalue table `lambda(m) = sum_{N(a)=m} chi([a])`,
    /// i.e. the plain table divided by its value at 1 (= 1/2). This is the
    /// table that is multiplicative on coprime arguments and that enters the
    /// Rankin-Selberg Dirichlet series.
    pub fn normalized_theta_table(
        &self,
        chi: &HeckeCharacter,
        m_max: usize,
    ) -> Result<Vec<Complex64>> {
        let plain = self.theta_table(chi, ThetaVariant::Plain, m_max)?;
        Ok(plain.iter().map(|v| v * 2.0).collect())
    }

    /// `Omega_a = sum_psi psi([a])`: the class number for narrowly principal
    /// ideals and zero otherwise, computed by the literal character sum.
    pub fn character_orthogonality_sum(&self, ideal: &IdealRep) -> Result<f64> {
        let data = self.ideal_data(ideal)?;
        let bits = self.field.bits();
        let tau = crate::precision::two_pi(bits);
        let mut re = Float::with_val(bits, 0u32);
        for psi in ClassCharacter::all(&self.group) {
            let mut frac = Float::with_val(bits, 0u32);
            for ((&e, &t), f) in psi.exps.iter().zip(data.exps.iter()).zip(self.group.factors()) {
                frac += hf(bits, e as u64 * t as u64) / hf(bits, f.order);
            }
            let ang = Float::with_val(bits, &frac * &tau);
            re += ang.cos();
        }
        Ok(re.to_f64())
    }
}

/// Convenience: number of ideals of norm `m` (`d_K(m)`), bounding
/// `|lambda_theta(m)| <= d_K(m) / 2`.
pub fn ideal_divisor_count(d: i64, m: i64) -> usize {
    ideals_of_norm(d, m.abs()).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: i64) -> HeckeContext {
        HeckeContext::new(d).unwrap()
    }

    #[test]
    fn unit_ideal_takes_value_one() {
        for d in [5i64, 12, 40] {
            let c = ctx(d);
            let unit = IdealRep::unit(d);
            for psi in ClassCharacter::all(c.group()) {
                for n in [-3i64, 0, 2, 5] {
                    let chi = HeckeCharacter { psi: psi.clone(), n };
                    let v = c.eval_character(&chi, &unit).unwrap();
                    assert!(v.phase.to_f64().min(std::f64::consts::TAU - v.phase.to_f64()) < 1e-30);
                }
            }
        }
    }

    #[test]
    fn character_value_matches_doubled_precision() {
        // D=5, psi trivial, n=2, ideal of norm 11
        let d = 5;
        let c50 = HeckeContext::with_field(QuadField::with_digits(d, 50).unwrap()).unwrap();
        let c100 = HeckeContext::with_field(QuadField::with_digits(d, 100).unwrap()).unwrap();
        let ideals = ideals_of_norm(d, 11);
        assert_eq!(ideals.len(), 2);
        for ideal in &ideals {
            let chi = HeckeCharacter { psi: ClassCharacter::trivial(c50.group()), n: 2 };
            let a = c50.eval_character(&chi, ideal).unwrap();
            let b = c100.eval_character(&chi, ideal).unwrap();
            let d_phase = a.phase_distance(&UnitComplex { phase: b.phase.clone() });
            assert!(d_phase.to_f64() < 1e-20, "phase mismatch {:.3e}", d_phase.to_f64());
        }
    }

    #[test]
    fn theta_examples_d5() {
        let c = ctx(5);
        let chi = HeckeCharacter { psi: ClassCharacter::trivial(c.group()), n: 0 };
        let v1 = c.theta_coefficient(&chi, ThetaVariant::Plain, 1).unwrap();
        assert!((v1 - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        // no ideals of norm 2 (2 inert in Q(sqrt 5))
        let v2 = c.theta_coefficient(&chi, ThetaVariant::Plain, 2).unwrap();
        assert!(v2.norm() < 1e-15);
        // two split ideals of norm 11, chi = 1 on each for n = 0
        let v11 = c.theta_coefficient(&chi, ThetaVariant::Plain, 11).unwrap();
        assert!((v11 - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn plain_coefficients_are_real() {
        for d in [5i64, 12, 40] {
            let c = ctx(d);
            for psi in ClassCharacter::all(c.group()) {
                for n in [-2i64, 1, 3] {
                    let chi = HeckeCharacter { psi: psi.clone(), n };
                    for m in 1..=40i64 {
                        let v = c.theta_coefficient(&chi, ThetaVariant::Plain, m).unwrap();
                        assert!(
                            v.im.abs() < 1e-14,
                            "D={d} n={n} m={m}: imaginary part {:.3e}",
                            v.im
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn hecke_multiplicativity() {
        // lambda(m1 m2) lambda(1) = lambda(m1) lambda(m2): variant-agnostic
        // statement of multiplicativity relative to the value at 1
        for d in [5i64, 8, 12, 40] {
            let c = ctx(d);
            for psi in ClassCharacter::all(c.group()) {
                for n in [-6i64, -1, 0, 2, 6] {
                    let chi = HeckeCharacter { psi: psi.clone(), n };
                    for variant in [ThetaVariant::Plain, ThetaVariant::SignWeighted] {
                        let table = c.theta_table(&chi, variant, 200).unwrap();
                        for m1 in 2..=14i64 {
                            for m2 in 2..=(200 / m1) {
                                if crate::util::gcd_i128(m1 as i128, m2 as i128) != 1 {
                                    continue;
                                }
                                let lhs = table[(m1 * m2 - 1) as usize] * table[0];
                                let rhs = table[(m1 - 1) as usize] * table[(m2 - 1) as usize];
                                assert!(
                                    (lhs - rhs).norm() < 1e-13,
                                    "D={d} n={n} {variant:?} m1={m1} m2={m2}: {lhs} vs {rhs}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn normalized_table_is_multiplicative() {
        let c = ctx(5);
        let chi = HeckeCharacter { psi: ClassCharacter::trivial(c.group()), n: 2 };
        let t = c.normalized_theta_table(&chi, 200).unwrap();
        assert!((t[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        for m1 in 2..=14usize {
            for m2 in 2..=(200 / m1) {
                if crate::util::gcd_i128(m1 as i128, m2 as i128) != 1 {
                    continue;
                }
                assert!((t[m1 * m2 - 1] - t[m1 - 1] * t[m2 - 1]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn coefficient_bound_by_ideal_count() {
        for d in [5i64, 12, 40] {
            let c = ctx(d);
            for psi in ClassCharacter::all(c.group()) {
                for n in [-4i64, 0, 3] {
                    let chi = HeckeCharacter { psi: psi.clone(), n };
                    for m in 1..=100i64 {
                        let v = c.theta_coefficient(&chi, ThetaVariant::Plain, m).unwrap();
                        let bound = ideal_divisor_count(d, m) as f64 / 2.0;
                        assert!(v.norm() <= bound + 1e-13, "D={d} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for d in [5i64, 12, 40] {
            let c = ctx(d);
            for psi in ClassCharacter::all(c.group()) {
                let inv = psi.inverse(c.group());
                for n in [-5i64, 2, 7] {
                    let chi = HeckeCharacter { psi: psi.clone(), n };
                    let chi_conj = HeckeCharacter { psi: inv.clone(), n: -n };
                    for m in 1..=60i64 {
                        let a = c.theta_coefficient(&chi, ThetaVariant::Plain, m).unwrap();
                        let b = c.theta_coefficient(&chi_conj, ThetaVariant::Plain, m).unwrap();
                        assert!((a - b.conj()).norm() < 1e-13, "D={d} n={n} m={m}");
                    }
                }
            }
        }
    }

    #[test]
    fn plain_tables_even_in_n() {
        // theta_{chi_{psi,n}} = theta_{chi_{psi,-n}} on the real-character grid
        for d in [5i64, 8, 12, 40] {
            let c = ctx(d);
            for psi in ClassCharacter::all(c.group()) {
                assert!(psi.is_real(c.group()), "grid D={d} should have real psi only");
                for n in 1..=6i64 {
                    let a = c
                        .theta_table(&HeckeCharacter { psi: psi.clone(), n }, ThetaVariant::Plain, 120)
                        .unwrap();
                    let b = c
                        .theta_table(&HeckeCharacter { psi: psi.clone(), n: -n }, ThetaVariant::Plain, 120)
                        .unwrap();
                    for m in 0..120 {
                        assert!((a[m] - b[m]).norm() < 1e-13, "D={d} n={n} m={}", m + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_sums() {
        let c = ctx(12);
        let unit = IdealRep::unit(12);
        assert!((c.character_orthogonality_sum(&unit).unwrap() - 2.0).abs() < 1e-18);
        // ramified prime above 2 is non-principal
        let p2 = &ideals_of_norm(12, 2)[0];
        assert!(c.character_orthogonality_sum(p2).unwrap().abs() < 1e-18);
        // over a full set of class representatives only the identity class
        // contributes, so the total is h+
        let total = c.character_orthogonality_sum(&unit).unwrap()
            + c.character_orthogonality_sum(p2).unwrap();
        assert!((total - 2.0).abs() < 1e-15);
    }
}
