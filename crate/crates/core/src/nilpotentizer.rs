//! Nilpotentizers: `nil(x) = { y : <x, y> nilpotent }` and
//! `nil(G) = { x : nil(x) = G }`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::Analysis;
use crate::element_set::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::quotient::Quotient;
use crate::subgroup::Subgroup;
use crate::verdict::Outcome;

/// Default cap on commutator evaluations for [`Analysis::commutator_condition`].
pub const DEFAULT_WORK_CAP: u128 = 1_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilProfile {
    pub fingerprint: String,
    pub element: usize,
    pub label: String,
    pub element_order: usize,
    pub nil_set: ElementSet,
    pub size: usize,
    pub is_subgroup: bool,
    pub generated: Subgroup,
    pub generated_is_maximal: bool,
    pub equals_centralizer: bool,
    /// Class of `nil(x)` when it is a subgroup and nilpotent.
    pub nilpotency_class: Option<usize>,
}

/// Outcome of testing `[l_1, .., l_n] = 1` over all words in `S^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorCondition {
    pub holds: bool,
    /// First word (in enumeration order) whose commutator is not the identity.
    pub witness: Option<Vec<usize>>,
    pub evaluations: u128,
}

/// A quotient `G/N` with its own analysis context.
pub struct QuotientAnalysis {
    pub quotient: Quotient,
    pub analysis: Analysis,
}

impl Analysis {
    /// Whether `<x, y>` is nilpotent.
    ///
    /// Commuting pairs are accepted outright. Otherwise necessary conditions
    /// of nilpotency reject most pairs cheaply (coprime-order parts commute,
    /// the primes of `xy` and `[x, y]` occur in `o(x) o(y)`, the order is
    /// bounded by the matching p-parts of |G|) before the subgroup is closed
    /// and its lower central series computed.
    pub fn pair_is_nilpotent(&self, x: usize, y: usize) -> bool {
        let g = self.group();
        if g.commutes(x, y) {
            return true;
        }
        let mask = self.prime_mask(x) | self.prime_mask(y);
        if self.prime_mask(g.mul(x, y)) & !mask != 0 || self.prime_mask(g.commutator(x, y)) & !mask != 0 {
            return false;
        }
        for &(p, xp) in self.p_components(x) {
            for &(q, yq) in self.p_components(y) {
                if p != q && !g.commutes(xp, yq) {
                    return false;
                }
            }
        }
        let bound = self.nilpotent_order_bound(mask);
        match g.bounded_closure(&[x, y], bound) {
            Some(h) => bound % h.order() == 0 && self.is_nilpotent(&h),
            None => false,
        }
    }

    pub fn nil_element(&self, x: usize) -> ElementSet {
        if let Some(s) = self.nil_cache.read().expect("cache poisoned").get(&x) {
            return s.clone();
        }
        let g = self.group();
        let set = g.set_of((0..g.order()).filter(|&y| self.pair_is_nilpotent(x, y)));
        self.nil_cache.write().expect("cache poisoned").insert(x, set.clone());
        set
    }

    /// `nil(x)` for every `x`, one test per unordered pair.
    pub fn nil_all(&self) -> Vec<ElementSet> {
        let g = self.group();
        let n = g.order();
        {
            let cache = self.nil_cache.read().expect("cache poisoned");
            if cache.len() == n {
                return (0..n).map(|x| cache[&x].clone()).collect();
            }
        }
        let rows: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|x| ((x + 1)..n).filter(|&y| self.pair_is_nilpotent(x, y)).collect())
            .collect();
        let mut sets: Vec<ElementSet> = (0..n).map(|x| g.set_of([x])).collect();
        for (x, row) in rows.iter().enumerate() {
            for &y in row {
                sets[x].insert(y);
                sets[y].insert(x);
            }
        }
        let mut cache = self.nil_cache.write().expect("cache poisoned");
        for (x, s) in sets.iter().enumerate() {
            cache.insert(x, s.clone());
        }
        sets
    }

    /// `nil(G)`.
    pub fn nil_group(&self) -> ElementSet {
        let g = self.group();
        let all = self.nil_all();
        g.set_of((0..g.order()).filter(|&x| all[x].is_full()))
    }

    /// Whether every 2-generated subgroup is nilpotent, tested directly on
    /// `<a, b>` without the pair filters.
    pub fn is_weakly_nilpotent(&self) -> bool {
        let g = self.group();
        (0..g.order()).all(|a| {
            ((a + 1)..g.order()).all(|b| g.commutes(a, b) || self.is_nilpotent(&g.generated_subgroup(&[a, b])))
        })
    }

    pub fn is_nil_subgroup(&self, x: usize) -> bool {
        self.group().is_closed(&self.nil_element(x))
    }

    /// `Ok(())` if `nil(x)` is a subgroup for every `x`, else the smallest
    /// `x` for which it is not.
    pub fn is_n_group(&self) -> std::result::Result<(), usize> {
        self.nil_all();
        match (0..self.group().order()).find(|&x| !self.is_nil_subgroup(x)) {
            Some(x) => Err(x),
            None => Ok(()),
        }
    }

    /// `<nil(x)>`.
    pub fn nil_generated(&self, x: usize) -> Subgroup {
        self.group().generated_by_set(&self.nil_element(x))
    }

    /// Memoized maximality test; the whole group counts as not maximal.
    pub fn is_maximal(&self, h: &Subgroup) -> bool {
        if h.is_whole() {
            return false;
        }
        if let Some(&m) = self.maximal_cache.read().expect("cache poisoned").get(h.set()) {
            return m;
        }
        let m = self.group().is_maximal_subgroup(h).expect("proper");
        self.maximal_cache.write().expect("cache poisoned").insert(h.set().clone(), m);
        m
    }

    pub fn nil_profile(&self, x: usize) -> Result<NilProfile> {
        let g = self.group();
        g.check_element(x)?;
        let nil_set = self.nil_element(x);
        let generated = self.nil_generated(x);
        let is_subgroup = g.is_closed(&nil_set);
        let nilpotency_class = if is_subgroup { self.nilpotency_class(&generated) } else { None };
        Ok(NilProfile {
            fingerprint: g.fingerprint().to_string(),
            element: x,
            label: g.label(x),
            element_order: g.element_order(x),
            size: nil_set.len(),
            is_subgroup,
            generated_is_maximal: self.is_maximal(&generated),
            equals_centralizer: g.centralizer(x).set() == &nil_set,
            generated,
            nil_set,
            nilpotency_class,
        })
    }

    /// Extends `<x, y>` to a maximal nilpotent subgroup for each `y` in
    /// `nil(x)` not yet covered, and reports whether the union of those
    /// subgroups is exactly `nil(x)`.
    pub fn nil_as_union_of_maximal_nilpotents(&self, x: usize) -> (bool, Vec<Subgroup>) {
        let g = self.group();
        let nil = self.nil_element(x);
        let mut union = g.empty_set();
        let mut found: Vec<Subgroup> = Vec::new();
        for y in nil.iter() {
            if union.contains(y) {
                continue;
            }
            let start = g.generated_subgroup(&[x, y]);
            let m = self
                .extend_to_maximal_nilpotent(&start)
                .expect("<x, y> is nilpotent for y in nil(x)");
            union.union_with(m.set());
            if !found.iter().any(|f| f.set() == m.set()) {
                found.push(m);
            }
        }
        (union == nil, found)
    }

    /// Tests `[l_1, .., l_n] = 1` for all `l_i` in `s`.
    ///
    /// The left-normed commutator of a word depends only on the value of its
    /// `(n-1)`-prefix and the last letter, so the words of `S^n` are covered
    /// exactly by propagating the set of distinct prefix values level by
    /// level. Each value keeps the first word that produced it as a witness.
    /// For `n = 2` this is the pairwise commuting test.
    pub fn commutator_condition(&self, s: &ElementSet, n: usize, work_cap: u128) -> Result<CommutatorCondition> {
        if n < 2 {
            return Err(GroupError::Unsupported(format!("commutator weight {n} < 2")));
        }
        let g = self.group();
        if !g.owns(s) {
            return Err(GroupError::ForeignSet);
        }
        let members = s.to_vec();
        let size = members.len() as u128;
        let order = g.order() as u128;
        let mut work: u128 = 0;
        let mut level_bound = size;
        for _ in 2..=n {
            work = work.saturating_add(level_bound.saturating_mul(size));
            level_bound = level_bound.saturating_mul(size).min(order);
        }
        if work > work_cap {
            return Err(GroupError::Infeasible { work, cap: work_cap });
        }

        if n == 2 {
            let mut evaluations = 0;
            for &a in &members {
                for &b in &members {
                    evaluations += 1;
                    if !g.commutes(a, b) {
                        return Ok(CommutatorCondition { holds: false, witness: Some(vec![a, b]), evaluations });
                    }
                }
            }
            return Ok(CommutatorCondition { holds: true, witness: None, evaluations });
        }

        let mut evaluations = 0u128;
        let mut level: Vec<(usize, Vec<usize>)> = members.iter().map(|&a| (a, vec![a])).collect();
        for weight in 2..=n {
            if level.iter().all(|(v, _)| *v == 0) {
                return Ok(CommutatorCondition { holds: true, witness: None, evaluations });
            }
            let mut seen = g.empty_set();
            let mut next = Vec::new();
            for (v, word) in &level {
                for &l in &members {
                    evaluations += 1;
                    let c = g.commutator(*v, l);
                    if weight == n && c != 0 {
                        let mut w = word.clone();
                        w.push(l);
                        return Ok(CommutatorCondition { holds: false, witness: Some(w), evaluations });
                    }
                    if seen.insert(c) {
                        let mut w = word.clone();
                        w.push(l);
                        next.push((c, w));
                    }
                }
            }
            level = next;
        }
        Ok(CommutatorCondition { holds: true, witness: None, evaluations })
    }

    /// If all weight-`n` left-normed commutators of `nil(x)` vanish, then
    /// `nil(x)` is a subgroup, nilpotent of class at most `n - 1`, and
    /// already maximal nilpotent.
    pub fn check_nil_commutator_law(&self, x: usize, n: usize, work_cap: u128) -> Outcome {
        let g = self.group();
        let nil = self.nil_element(x);
        let cond = match self.commutator_condition(&nil, n, work_cap) {
            Ok(c) => c,
            Err(GroupError::Infeasible { work, .. }) => {
                return Outcome::infeasible("commutator enumeration above work cap").with("work", work.to_string())
            }
            Err(e) => return Outcome::not_applicable(&e.to_string()),
        };
        if !cond.holds {
            return Outcome::not_applicable("commutator condition fails on nil(x)")
                .with("word", cond.witness.unwrap_or_default());
        }
        if !g.is_closed(&nil) {
            return Outcome::fail(json!({"reason": "nil(x) not closed", "nil": nil.to_vec()}));
        }
        let h = g.closed_set_to_subgroup(nil.clone());
        let class = self.nilpotency_class(&h);
        match class {
            Some(c) if c < n => {}
            _ => return Outcome::fail(json!({"reason": "class bound violated", "class": class, "n": n})),
        }
        let m = self.extend_to_maximal_nilpotent(&h).expect("nilpotent");
        if m.set() != h.set() {
            return Outcome::fail(json!({
                "reason": "nil(x) is not maximal nilpotent",
                "extension": m.elements(),
            }));
        }
        Outcome::pass().with("class", class).with("size", h.order())
    }

    /// For `G = HK` with `[H, K] = 1` and `x` in `H`:
    /// `nil_G(x) = K nil_H(x)`, with `nil_H(x)` computed in `H` as a group
    /// of its own.
    pub fn check_direct_factor_law(&self, h: &Subgroup, k: &Subgroup, x: usize) -> Outcome {
        let g = self.group();
        if !h.contains(x) {
            return Outcome::not_applicable("x not in H");
        }
        if let Some((a, b)) = first_noncommuting(g, h, k) {
            return Outcome::not_applicable("[H, K] != 1").with("pair", vec![a, b]);
        }
        if !g.product_set(h.set(), k.set()).is_full() {
            return Outcome::not_applicable("HK != G");
        }
        let (inner, back) = g.induced_group(h);
        let x_inner = back.iter().position(|&a| a == x).expect("x in H");
        let nil_h_inner = Analysis::new(inner).nil_element(x_inner);
        let nil_h = g.set_of(nil_h_inner.iter().map(|i| back[i]));
        let rhs = g.product_set(k.set(), &nil_h);
        let lhs = self.nil_element(x);
        let out = Outcome::check(lhs == rhs, || {
            json!({
                "x": x,
                "only_in_nil_g": lhs.difference(&rhs).to_vec(),
                "only_in_k_nil_h": rhs.difference(&lhs).to_vec(),
            })
        });
        out.with("size", lhs.len()).with("nil_is_whole", lhs.is_full())
    }

    pub fn quotient_analysis(&self, n: &Subgroup) -> Result<QuotientAnalysis> {
        let quotient = self.group().quotient(n)?;
        let analysis = Analysis::from_arc(quotient.group.clone());
        Ok(QuotientAnalysis { quotient, analysis })
    }

    /// `{ yN : y in nil_G(x) N }` is contained in `nil_{G/N}(xN)`.
    pub fn check_quotient_containment(&self, qa: &QuotientAnalysis, x: usize) -> Outcome {
        let g = self.group();
        let q = &qa.quotient;
        let saturated = g.product_set(&self.nil_element(x), q.kernel.set());
        let lhs = q.project_set(&saturated);
        let rhs = qa.analysis.nil_element(q.project(x));
        Outcome::check(lhs.is_subset(&rhs), || {
            json!({"x": x, "cosets_outside": lhs.difference(&rhs).to_vec()})
        })
    }

    /// For `K` inside the hypercenter: `nil_{G/K}(xK) = nil_G(x)/K`.
    /// Not applicable unless `nil_G(x)` is a union of `K`-cosets.
    pub fn check_quotient_equality(&self, qa: &QuotientAnalysis, hypercenter: &Subgroup, x: usize) -> Outcome {
        let g = self.group();
        let q = &qa.quotient;
        if !q.kernel.is_subgroup_of(hypercenter) {
            return Outcome::not_applicable("K not contained in the hypercenter");
        }
        let nil = self.nil_element(x);
        if g.product_set(&nil, q.kernel.set()) != nil {
            return Outcome::not_applicable("nil(x) is not a union of K-cosets");
        }
        let lhs = qa.analysis.nil_element(q.project(x));
        let rhs = q.project_set(&nil);
        Outcome::check(lhs == rhs, || {
            json!({
                "x": x,
                "only_in_quotient_nil": lhs.difference(&rhs).to_vec(),
                "only_in_image": rhs.difference(&lhs).to_vec(),
            })
        })
    }
}

fn first_noncommuting(g: &Group, h: &Subgroup, k: &Subgroup) -> Option<(usize, usize)> {
    for a in h.set().iter() {
        for b in k.set().iter() {
            if !g.commutes(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}
