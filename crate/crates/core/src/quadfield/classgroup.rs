//! The narrow class group of `Q(sqrt(D))`, realized concretely as proper
//! equivalence classes of primitive indefinite forms of discriminant `D`.
//! Reduction cycles identify the classes and Gauss composition gives the law.

use super::forms::{reduced_forms, QForm};
use crate::{Error, Result};
use std::collections::HashMap;

/// One cyclic factor of the narrow class group.
#[derive(Debug, Clone)]
pub struct CyclicFactor {
    /// Order `h_i` of the factor.
    pub order: u32,
    /// Class index of the chosen generator.
    pub class_idx: usize,
}

/// The narrow class group `H^+(K)`, with its composition table and a fixed
/// decomposition into cyclic factors.
#[derive(Debug, Clone)]
pub struct NarrowClassGroup {
    d: i64,
    cycles: Vec<Vec<QForm>>,
    reps: Vec<QForm>,
    pos_reps: Vec<QForm>,
    form_to_class: HashMap<QForm, usize>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    principal: usize,
    factors: Vec<CyclicFactor>,
    class_exps: Vec<Vec<u32>>,
}

impl NarrowClassGroup {
    pub fn new(d: i64) -> Result<Self> {
        if !super::is_fundamental(d) {
            return Err(Error::NotFundamental(d));
        }
        let forms = reduced_forms(d);
        let mut seen: HashMap<QForm, usize> = HashMap::new();
        let mut raw_cycles: Vec<Vec<QForm>> = Vec::new();
        for f in &forms {
            if seen.contains_key(f) {
                continue;
            }
            let cyc = f.cycle();
            let idx = raw_cycles.len();
            for g in &cyc {
                seen.insert(*g, idx);
            }
            raw_cycles.push(cyc);
        }
        // deterministic ordering: sort cycles by lexicographically minimal member
        let mut order: Vec<usize> = (0..raw_cycles.len()).collect();
        let min_of = |c: &Vec<QForm>| *c.iter().min().unwrap();
        order.sort_by_key(|&i| min_of(&raw_cycles[i]));
        let cycles: Vec<Vec<QForm>> = order.into_iter().map(|i| raw_cycles[i].clone()).collect();
        let mut form_to_class = HashMap::new();
        for (idx, cyc) in cycles.iter().enumerate() {
            for g in cyc {
                form_to_class.insert(*g, idx);
            }
        }
        let reps: Vec<QForm> = cycles.iter().map(|c| *c.iter().min().unwrap()).collect();
        let pos_reps: Vec<QForm> = cycles
            .iter()
            .map(|c| *c.iter().filter(|f| f.a > 0).min().unwrap())
            .collect();
        let sigma = d.rem_euclid(2);
        let principal_form = QForm { a: 1, b: sigma, c: (sigma * sigma - d) / 4 }.reduce();
        let principal = *form_to_class
            .get(&principal_form)
            .ok_or_else(|| Error::IdealInconsistency("principal cycle not found".into()))?;
        let h = cycles.len();
        let mut table = vec![vec![0usize; h]; h];
        for i in 0..h {
            for j in 0..h {
                let comp = reps[i].compose(&reps[j]);
                table[i][j] = *form_to_class.get(&comp).ok_or_else(|| {
                    Error::IdealInconsistency(format!("composition left the class set: {comp:?}"))
                })?;
            }
        }
        let mut inverse = vec![0usize; h];
        for i in 0..h {
            let inv_form = QForm { a: reps[i].a, b: -reps[i].b, c: reps[i].c }.reduce();
            inverse[i] = *form_to_class.get(&inv_form).unwrap();
        }
        let mut g = NarrowClassGroup {
            d,
            cycles,
            reps,
            pos_reps,
            form_to_class,
            table,
            inverse,
            principal,
            factors: Vec::new(),
            class_exps: Vec::new(),
        };
        g.decompose()?;
        Ok(g)
    }

    pub fn disc(&self) -> i64 {
        self.d
    }

    /// The narrow class number `h^+`.
    pub fn h_plus(&self) -> usize {
        self.cycles.len()
    }

    pub fn principal_class(&self) -> usize {
        self.principal
    }

    pub fn cycles(&self) -> &[Vec<QForm>] {
        &self.cycles
    }

    /// Lexicographically minimal reduced form of each class.
    pub fn representatives(&self) -> &[QForm] {
        &self.reps
    }

    /// Lexicographically minimal reduced form with positive leading
    /// coefficient (used for the ideal dictionary and geodesics).
    pub fn positive_representatives(&self) -> &[QForm] {
        &self.pos_reps
    }

    /// Class index of an arbitrary form of discriminant `D`.
    pub fn class_of_form(&self, f: &QForm) -> Result<usize> {
        if f.disc() != self.d {
            return Err(Error::InvalidForm(f.a, f.b, f.c, "wrong discriminant".into()));
        }
        self.form_to_class
            .get(&f.reduce())
            .copied()
            .ok_or_else(|| Error::IdealInconsistency("reduced form not in class set".into()))
    }

    pub fn compose_classes(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn class_pow(&self, i: usize, mut k: u64) -> usize {
        let mut acc = self.principal;
        let mut base = i;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.table[acc][base];
            }
            base = self.table[base][base];
            k >>= 1;
        }
        acc
    }

    pub fn class_order(&self, i: usize) -> u32 {
        let mut k = 1u32;
        let mut cur = i;
        while cur != self.principal {
            cur = self.table[cur][i];
            k += 1;
            assert!(k as usize <= self.h_plus() + 1);
        }
        k
    }

    /// The fixed cyclic decomposition `H^+ = Z/h_1 + ... + Z/h_s`.
    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    /// Exponent vector of a class with respect to the fixed decomposition:
    /// the unique `(t_1, ..., t_s)`, `0 <= t_i < h_i`, with
    /// `class = prod J_i^{t_i}`.
    pub fn exponents_of_class(&self, class: usize) -> &[u32] {
        &self.class_exps[class]
    }

    fn decompose(&mut self) -> Result<()> {
        let h = self.h_plus();
        if h == 1 {
            self.factors = Vec::new();
            self.class_exps = vec![Vec::new()];
            return Ok(());
        }
        let orders: Vec<u32> = (0..h).map(|i| self.class_order(i)).collect();
        // DFS over candidate generator sequences, orders non-increasing, each
        // new generator independent of the span so far.
        fn extend(
            g: &NarrowClassGroup,
            orders: &[u32],
            span: &mut Vec<usize>,
            gens: &mut Vec<usize>,
            max_order: u32,
        ) -> bool {
            let h = g.h_plus();
            if span.len() == h {
                return true;
            }
            let mut cands: Vec<usize> = (0..h)
                .filter(|&c| orders[c] <= max_order && orders[c] > 1)
                .collect();
            cands.sort_by_key(|&c| (std::cmp::Reverse(orders[c]), c));
            for &cand in &cands {
                let od = orders[cand];
                // direct-sum condition: no nontrivial power of cand in the span
                let mut ok = true;
                let mut cur = cand;
                for _ in 1..od {
                    if span.contains(&cur) {
                        ok = false;
                        break;
                    }
                    cur = g.table[cur][cand];
                }
                if !ok {
                    continue;
                }
                let old_span = span.clone();
                let mut new_span = Vec::new();
                for &s in old_span.iter() {
                    let mut p = s;
                    for _ in 0..od {
                        new_span.push(p);
                        p = g.table[p][cand];
                    }
                }
                new_span.sort_unstable();
                new_span.dedup();
                if new_span.len() != old_span.len() * od as usize {
                    continue;
                }
                *span = new_span;
                gens.push(cand);
                if extend(g, orders, span, gens, od) {
                    return true;
                }
                gens.pop();
                *span = old_span;
            }
            false
        }
        let mut span = vec![self.principal];
        let mut gens = Vec::new();
        let max_ord = *orders.iter().max().unwrap();
        if !extend(self, &orders, &mut span, &mut gens, max_ord) {
            return Err(Error::IdealInconsistency(
                "no cyclic decomposition found (composition table broken)".into(),
            ));
        }
        self.factors = gens
            .iter()
            .map(|&c| CyclicFactor { order: orders[c], class_idx: c })
            .collect();
        // exponent vectors for every class
        let mut class_exps: Vec<Option<Vec<u32>>> = vec![None; h];
        let s = self.factors.len();
        let mut counters = vec![0u32; s];
        'sweep: loop {
            let mut cls = self.principal;
            for (i, &t) in counters.iter().enumerate() {
                cls = self.table[cls][self.class_pow(self.factors[i].class_idx, t as u64)];
            }
            if class_exps[cls].is_some() {
                return Err(Error::IdealInconsistency("exponent map not injective".into()));
            }
            class_exps[cls] = Some(counters.clone());
            let mut i = 0;
            loop {
                if i == s {
                    break 'sweep;
                }
                counters[i] += 1;
                if counters[i] < self.factors[i].order {
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
        self.class_exps = class_exps
            .into_iter()
            .map(|e| e.ok_or_else(|| Error::IdealInconsistency("exponent map not surjective".into())))
            .collect::<Result<_>>()?;
        Ok(())
    }
}
