//! Per-group analysis context: an immutable group plus memo caches.
//!
//! Caches are keyed by member sets; every entry is a pure function of the
//! group and the key, so concurrent inserts of the same key are harmless.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::arith;
use crate::element_set::ElementSet;
use crate::group::Group;
use crate::subgroup::Subgroup;

pub struct Analysis {
    group: Arc<Group>,
    primes: Vec<usize>,
    /// Full p-part of |G| for each prime in `primes`.
    prime_parts: Vec<usize>,
    /// Bit i set iff `primes[i]` divides the element's order.
    prime_mask: Vec<u64>,
    /// `(prime index, generator of the p-part of <a>)` per element.
    p_components: Vec<Vec<(usize, usize)>>,
    pub(crate) class_cache: RwLock<HashMap<ElementSet, Option<usize>>>,
    pub(crate) maximal_cache: RwLock<HashMap<ElementSet, bool>>,
    pub(crate) nil_cache: RwLock<HashMap<usize, ElementSet>>,
    pub(crate) sylow_cache: RwLock<HashMap<usize, Arc<Vec<Subgroup>>>>,
}

impl Analysis {
    pub fn new(group: Group) -> Self {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<Group>) -> Self {
        let factors = arith::factorize(group.order());
        let primes: Vec<usize> = factors.iter().map(|&(p, _)| p).collect();
        assert!(primes.len() <= 64);
        let prime_parts = factors.iter().map(|&(p, e)| p.pow(e)).collect();
        let n = group.order();
        let mut prime_mask = vec![0u64; n];
        let mut p_components = vec![Vec::new(); n];
        for a in 0..n {
            let o = group.element_order(a);
            for (i, &p) in primes.iter().enumerate() {
                if o % p == 0 {
                    prime_mask[a] |= 1 << i;
                    let pp = arith::p_part(o, p);
                    p_components[a].push((i, group.pow(a, o / pp)));
                }
            }
        }
        Self {
            group,
            primes,
            prime_parts,
            prime_mask,
            p_components,
            class_cache: RwLock::default(),
            maximal_cache: RwLock::default(),
            nil_cache: RwLock::default(),
            sylow_cache: RwLock::default(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    pub(crate) fn prime_mask(&self, a: usize) -> u64 {
        self.prime_mask[a]
    }

    pub(crate) fn p_components(&self, a: usize) -> &[(usize, usize)] {
        &self.p_components[a]
    }

    /// Product of the full p-parts of |G| over the primes in `mask`. Any
    /// nilpotent subgroup whose order involves only those primes has order
    /// dividing this bound.
    pub(crate) fn nilpotent_order_bound(&self, mask: u64) -> usize {
        (0..self.primes.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| self.prime_parts[i])
            .product()
    }

    pub(crate) fn order_mask(&self, order: usize) -> u64 {
        self.primes
            .iter()
            .enumerate()
            .filter(|(_, &p)| order % p == 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Every subgroup whose nilpotency class has been computed so far, with
    /// the memoized result. Sorted by member list for reproducibility.
    pub fn nilpotency_cache_snapshot(&self) -> Vec<(Subgroup, Option<usize>)> {
        let cache = self.class_cache.read().expect("cache poisoned");
        let mut out: Vec<_> = cache
            .iter()
            .map(|(set, class)| (self.group.closed_set_to_subgroup(set.clone()), *class))
            .collect();
        out.sort_by_key(|(h, _)| h.elements());
        out
    }
}
