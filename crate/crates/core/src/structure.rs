//! Central and derived series, nilpotency, solvability, Sylow and Fitting
//! subgroups, and maximal nilpotent overgroups.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::arith;
use crate::error::{GroupError, Result};
use crate::subgroup::{Subgroup, SubgroupBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
    UpperCentral,
}

/// A chain of subgroups. Consecutive terms are distinct; a series that
/// stabilizes before its natural endpoint ends at the stable term with
/// `terminated == false`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    /// Reached the trivial subgroup (lower central, derived) or the whole
    /// group (upper central).
    pub terminated: bool,
    /// Number of strict steps, `terms.len() - 1`.
    pub length: usize,
}

impl SeriesReport {
    fn new(kind: SeriesKind, terms: Vec<Subgroup>, terminated: bool) -> Self {
        let length = terms.len() - 1;
        Self { kind, terms, terminated, length }
    }

    pub fn last(&self) -> &Subgroup {
        self.terms.last().expect("series is never empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowData {
    pub prime: usize,
    pub order: usize,
    pub representative: Subgroup,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    pub fingerprint: String,
    pub order: usize,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub is_solvable: bool,
    pub derived_length: Option<usize>,
    pub is_simple: bool,
    pub center_size: usize,
    pub hypercenter_size: usize,
    pub fitting: Subgroup,
    pub sylow: Vec<SylowData>,
}

impl Analysis {
    /// `[A, B]`, enumerating every pair. `within` is an overgroup known to
    /// contain the result; the scan stops once the closure fills it.
    fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup, within: usize) -> Subgroup {
        let g = self.group();
        let mut builder = SubgroupBuilder::new(g);
        let bs = b.elements();
        'outer: for x in a.set().iter() {
            for &y in &bs {
                let c = g.commutator(x, y);
                if !builder.contains(c) {
                    builder.add(c);
                    if builder.len() == within {
                        break 'outer;
                    }
                }
            }
        }
        builder.finish().expect("no limit")
    }

    /// `gamma_1 = H`, `gamma_{k+1} = [gamma_k, H]`.
    pub fn lower_central_series(&self, h: &Subgroup) -> SeriesReport {
        let mut terms = vec![h.clone()];
        loop {
            let cur = terms.last().unwrap();
            if cur.is_trivial() {
                return SeriesReport::new(SeriesKind::LowerCentral, terms, true);
            }
            let next = self.commutator_subgroup(cur, h, cur.order());
            if next.set() == cur.set() {
                return SeriesReport::new(SeriesKind::LowerCentral, terms, false);
            }
            terms.push(next);
        }
    }

    /// Nilpotency class of `H`, or `None` when `H` is not nilpotent. Memoized.
    pub fn nilpotency_class(&self, h: &Subgroup) -> Option<usize> {
        if let Some(&c) = self.class_cache.read().expect("cache poisoned").get(h.set()) {
            return c;
        }
        let series = self.lower_central_series(h);
        let class = series.terminated.then_some(series.length);
        self.class_cache
            .write()
            .expect("cache poisoned")
            .insert(h.set().clone(), class);
        class
    }

    pub fn is_nilpotent(&self, h: &Subgroup) -> bool {
        self.nilpotency_class(h).is_some()
    }

    /// Independent route: `H` is nilpotent iff each of its Sylow subgroups
    /// is normal in `H`.
    pub fn is_nilpotent_by_sylow(&self, h: &Subgroup) -> bool {
        arith::prime_divisors(h.order()).into_iter().all(|p| {
            let sylow = self.sylow_subgroup_in(h, p);
            self.group().is_normal_in(&sylow, h)
        })
    }

    pub fn derived_series(&self, h: &Subgroup) -> SeriesReport {
        let mut terms = vec![h.clone()];
        loop {
            let cur = terms.last().unwrap();
            if cur.is_trivial() {
                return SeriesReport::new(SeriesKind::Derived, terms, true);
            }
            let next = self.commutator_subgroup(cur, cur, cur.order());
            if next.set() == cur.set() {
                return SeriesReport::new(SeriesKind::Derived, terms, false);
            }
            terms.push(next);
        }
    }

    pub fn is_solvable(&self, h: &Subgroup) -> bool {
        self.derived_series(h).terminated
    }

    pub fn derived_length(&self, h: &Subgroup) -> Option<usize> {
        let s = self.derived_series(h);
        s.terminated.then_some(s.length)
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let whole = self.group().whole_group();
        self.commutator_subgroup(&whole, &whole, whole.order())
    }

    /// `Z_0 = 1`, `Z_{k+1} = { x : [x, g] in Z_k for all g }`. Testing `g`
    /// over a generating set of `G` is enough.
    pub fn upper_central_series(&self) -> SeriesReport {
        let g = self.group();
        let mut terms = vec![g.trivial_subgroup()];
        loop {
            let cur = terms.last().unwrap();
            if cur.is_whole() {
                return SeriesReport::new(SeriesKind::UpperCentral, terms, true);
            }
            let next_set = g.set_of(
                (0..g.order()).filter(|&x| g.generators().iter().all(|&y| cur.contains(g.commutator(x, y)))),
            );
            if &next_set == cur.set() {
                return SeriesReport::new(SeriesKind::UpperCentral, terms, false);
            }
            terms.push(g.closed_set_to_subgroup(next_set));
        }
    }

    /// `Z*(G)`, the terminal term of the upper central series.
    pub fn hypercenter(&self) -> Subgroup {
        self.upper_central_series().last().clone()
    }

    /// A Sylow p-subgroup of `H`, grown greedily: repeatedly adjoin the
    /// smallest element of p-power order that keeps the closure a p-group.
    pub fn sylow_subgroup_in(&self, h: &Subgroup, p: usize) -> Subgroup {
        let g = self.group();
        let target = arith::p_part(h.order(), p);
        let mut current = g.trivial_subgroup();
        while current.order() < target {
            let next = h
                .set()
                .iter()
                .filter(|&a| !current.contains(a) && arith::is_p_power(g.element_order(a), p))
                .find_map(|a| {
                    let mut b = SubgroupBuilder::from_subgroup(g, &current).with_limit(target);
                    b.add(a);
                    b.finish().filter(|s| arith::is_p_power(s.order(), p))
                })
                .expect("a p-subgroup below Sylow order always extends");
            current = next;
        }
        current
    }

    pub fn sylow_subgroup(&self, p: usize) -> Result<Subgroup> {
        let n = self.group().order();
        if !arith::is_prime(p) || n % p != 0 {
            return Err(GroupError::PrimeDoesNotDivide { p, order: n });
        }
        Ok(self.sylow_subgroup_in(&self.group().whole_group(), p))
    }

    /// All Sylow p-subgroups, as the distinct conjugates of the greedy one,
    /// in order of first appearance over conjugating elements.
    pub fn sylow_subgroups(&self, p: usize) -> Result<Arc<Vec<Subgroup>>> {
        if let Some(v) = self.sylow_cache.read().expect("cache poisoned").get(&p) {
            return Ok(v.clone());
        }
        let rep = self.sylow_subgroup(p)?;
        let g = self.group();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 0..g.order() {
            let conj = g.conjugate_set(rep.set(), x);
            if seen.insert(conj.clone()) {
                let gens: Vec<usize> = rep.generators().iter().map(|&a| g.conjugate(a, x)).collect();
                let s = g.generated_subgroup(&gens);
                debug_assert_eq!(s.set(), &conj);
                out.push(s);
            }
        }
        let out = Arc::new(out);
        self.sylow_cache.write().expect("cache poisoned").insert(p, out.clone());
        Ok(out)
    }

    pub fn sylow_count(&self, p: usize) -> Result<usize> {
        Ok(self.sylow_subgroups(p)?.len())
    }

    /// `O_p(G)`, the intersection of all Sylow p-subgroups.
    pub fn p_core(&self, p: usize) -> Result<Subgroup> {
        let all = self.sylow_subgroups(p)?;
        let mut set = all[0].set().clone();
        for s in all.iter().skip(1) {
            set.intersect_with(s.set());
        }
        Ok(self.group().closed_set_to_subgroup(set))
    }

    /// `F(G)`, generated by the p-cores.
    pub fn fitting_subgroup(&self) -> Subgroup {
        let g = self.group();
        let mut b = SubgroupBuilder::new(g);
        for p in self.primes().to_vec() {
            let core = self.p_core(p).expect("p divides |G|");
            for &x in core.generators() {
                b.add(x);
            }
        }
        b.finish().expect("no limit")
    }

    /// Whether `<M, z>` is nilpotent. Cheap necessary conditions are checked
    /// first: in a nilpotent group, elements of coprime order commute, and
    /// the order is bounded by the p-parts of |G| for the primes involved.
    pub(crate) fn join_is_nilpotent(&self, m: &Subgroup, z: usize) -> Option<Subgroup> {
        let g = self.group();
        if m.contains(z) {
            return self.is_nilpotent(m).then(|| m.clone());
        }
        let zc = self.p_components(z);
        for &x in m.generators() {
            for &(p, xp) in self.p_components(x) {
                for &(q, zq) in zc {
                    if p != q && !g.commutes(xp, zq) {
                        return None;
                    }
                }
            }
        }
        let mask = self.order_mask(m.order()) | self.prime_mask(z);
        let bound = self.nilpotent_order_bound(mask);
        let mut b = SubgroupBuilder::from_subgroup(g, m).with_limit(bound);
        b.add(z);
        let joined = b.finish()?;
        if bound % joined.order() != 0 {
            return None;
        }
        self.is_nilpotent(&joined).then_some(joined)
    }

    /// Greedily enlarges a nilpotent `H` to a maximal nilpotent subgroup,
    /// adjoining the smallest admissible element each time. One ascending
    /// pass reaches the fixpoint: an element rejected for `M` stays rejected
    /// for every nilpotent overgroup of `M`.
    pub fn extend_to_maximal_nilpotent(&self, h: &Subgroup) -> Result<Subgroup> {
        if !self.is_nilpotent(h) {
            return Err(GroupError::NotNilpotent);
        }
        let mut m = h.clone();
        for z in 0..self.group().order() {
            if m.contains(z) {
                continue;
            }
            if let Some(bigger) = self.join_is_nilpotent(&m, z) {
                m = bigger;
            }
        }
        Ok(m)
    }

    pub fn is_simple(&self) -> bool {
        let g = self.group();
        if g.order() == 1 {
            return false;
        }
        g.conjugacy_classes()
            .iter()
            .skip(1)
            .all(|class| g.normal_closure(&g.set_of([class[0]])).is_whole())
    }

    pub fn structure_profile(&self) -> StructureProfile {
        let g = self.group();
        let whole = g.whole_group();
        let nilpotency_class = self.nilpotency_class(&whole);
        let derived_length = self.derived_length(&whole);
        let sylow = self
            .primes()
            .to_vec()
            .into_iter()
            .map(|p| {
                let all = self.sylow_subgroups(p).expect("p divides |G|");
                SylowData {
                    prime: p,
                    order: all[0].order(),
                    representative: all[0].clone(),
                    count: all.len(),
                }
            })
            .collect();
        StructureProfile {
            fingerprint: g.fingerprint().to_string(),
            order: g.order(),
            is_abelian: g.is_abelian(),
            is_nilpotent: nilpotency_class.is_some(),
            nilpotency_class,
            is_solvable: derived_length.is_some(),
            derived_length,
            is_simple: self.is_simple(),
            center_size: g.center().order(),
            hypercenter_size: self.hypercenter().order(),
            fitting: self.fitting_subgroup(),
            sylow,
        }
    }
}
