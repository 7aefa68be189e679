//! Subgroups as closed element sets, and the closure machinery behind them.

use serde::{Deserialize, Serialize};

use crate::element_set::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::Group;

/// An element set certified closed under products and inverses, together
/// with the generators that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    set: ElementSet,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_set(self) -> ElementSet {
        self.set
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, a: usize) -> bool {
        self.set.contains(a)
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.to_vec()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.set.is_full()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }
}

/// Incremental right-multiplication closure.
///
/// Once the partial closure holds more than half the group, Lagrange forces
/// the whole group and the builder saturates immediately. An optional limit
/// aborts the closure as soon as it grows past a given size.
pub struct SubgroupBuilder<'g> {
    group: &'g Group,
    set: ElementSet,
    elems: Vec<usize>,
    gens: Vec<usize>,
    limit: Option<usize>,
    exceeded: bool,
}

impl<'g> SubgroupBuilder<'g> {
    pub fn new(group: &'g Group) -> Self {
        let mut set = group.empty_set();
        set.insert(0);
        Self {
            group,
            set,
            elems: vec![0],
            gens: Vec::new(),
            limit: None,
            exceeded: false,
        }
    }

    pub fn from_subgroup(group: &'g Group, h: &Subgroup) -> Self {
        Self {
            group,
            set: h.set.clone(),
            elems: h.set.to_vec(),
            gens: h.generators.clone(),
            limit: None,
            exceeded: false,
        }
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: usize) -> bool {
        self.set.contains(a)
    }

    pub fn is_whole_group(&self) -> bool {
        self.elems.len() == self.group.order()
    }

    /// True once a limit was set and the closure outgrew it.
    pub fn exceeded(&self) -> bool {
        self.exceeded
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    fn push(&mut self, p: usize) -> bool {
        if self.set.insert(p) {
            self.elems.push(p);
            if let Some(limit) = self.limit {
                if self.elems.len() > limit {
                    self.exceeded = true;
                    return false;
                }
            }
            if 2 * self.elems.len() > self.group.order() && !self.is_whole_group() {
                self.set = self.group.full_set();
                self.elems = (0..self.group.order()).collect();
                return false;
            }
        }
        true
    }

    /// Adds a generator and re-closes. Returns whether the subgroup grew.
    pub fn add(&mut self, x: usize) -> bool {
        if self.exceeded || self.set.contains(x) {
            return false;
        }
        let g = self.group;
        self.gens.push(x);
        let before = self.elems.len();
        for i in 0..before {
            let p = g.mul(self.elems[i], x);
            if !self.push(p) {
                return true;
            }
        }
        let mut head = before;
        while head < self.elems.len() {
            let e = self.elems[head];
            for gi in 0..self.gens.len() {
                let p = g.mul(e, self.gens[gi]);
                if !self.push(p) {
                    return true;
                }
            }
            head += 1;
        }
        true
    }

    pub fn finish(self) -> Option<Subgroup> {
        if self.exceeded {
            None
        } else {
            Some(Subgroup {
                set: self.set,
                generators: self.gens,
            })
        }
    }
}

impl Group {
    pub fn trivial_subgroup(&self) -> Subgroup {
        SubgroupBuilder::new(self).finish().expect("no limit")
    }

    pub fn whole_group(&self) -> Subgroup {
        Subgroup {
            set: self.full_set(),
            generators: self.generators().to_vec(),
        }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for &g in gens {
            if b.is_whole_group() {
                break;
            }
            b.add(g);
        }
        b.finish().expect("no limit")
    }

    /// `<set>`.
    pub fn generated_by_set(&self, set: &ElementSet) -> Subgroup {
        self.generated_subgroup(&set.to_vec())
    }

    /// `<gens>` if it has at most `limit` elements.
    pub fn bounded_closure(&self, gens: &[usize], limit: usize) -> Option<Subgroup> {
        let mut b = SubgroupBuilder::new(self).with_limit(limit);
        for &g in gens {
            b.add(g);
            if b.exceeded() {
                return None;
            }
        }
        b.finish()
    }

    /// `<H, x>`.
    pub fn join_element(&self, h: &Subgroup, x: usize) -> Subgroup {
        let mut b = SubgroupBuilder::from_subgroup(self, h);
        b.add(x);
        b.finish().expect("no limit")
    }

    pub fn join(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        let mut b = SubgroupBuilder::from_subgroup(self, h);
        for &x in k.generators() {
            b.add(x);
        }
        b.finish().expect("no limit")
    }

    /// Certifies a closed set as a subgroup, picking generators greedily.
    pub fn subgroup_from_set(&self, set: &ElementSet) -> Option<Subgroup> {
        if !self.owns(set) || !self.is_closed(set) {
            return None;
        }
        Some(self.closed_set_to_subgroup(set.clone()))
    }

    /// `set` must be known to be closed (intersections of subgroups, centralizers).
    pub(crate) fn closed_set_to_subgroup(&self, set: ElementSet) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for a in set.iter() {
            if b.len() == set.len() {
                break;
            }
            b.add(a);
        }
        let out = b.finish().expect("no limit");
        debug_assert_eq!(out.set, set);
        Subgroup { set, generators: out.generators }
    }

    pub fn intersect_subgroups(&self, h: &Subgroup, k: &Subgroup) -> Subgroup {
        self.closed_set_to_subgroup(h.set.intersection(&k.set))
    }

    /// `C_G(a)`.
    pub fn centralizer(&self, a: usize) -> Subgroup {
        let set = self.set_of((0..self.order()).filter(|&g| self.commutes(g, a)));
        self.closed_set_to_subgroup(set)
    }

    /// Elements commuting with every member of `s`.
    pub fn centralizer_of_set(&self, s: &ElementSet) -> Subgroup {
        let members = s.to_vec();
        let set = self.set_of((0..self.order()).filter(|&g| members.iter().all(|&a| self.commutes(g, a))));
        self.closed_set_to_subgroup(set)
    }

    /// `Z(G)`.
    pub fn center(&self) -> Subgroup {
        let gens = self.generators().to_vec();
        let set = self.set_of((0..self.order()).filter(|&g| gens.iter().all(|&a| self.commutes(g, a))));
        self.closed_set_to_subgroup(set)
    }

    /// Whether `h` is normalized by every element of `k` (checked on generators).
    pub fn is_normal_in(&self, h: &Subgroup, k: &Subgroup) -> bool {
        k.generators()
            .iter()
            .all(|&g| h.generators().iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators()
            .iter()
            .all(|&g| h.generators().iter().all(|&x| h.contains(self.conjugate(x, g))))
    }

    /// Smallest normal subgroup containing `s`.
    pub fn normal_closure(&self, s: &ElementSet) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for x in s.iter() {
            b.add(x);
        }
        loop {
            let current = b.generators().to_vec();
            let mut grew = false;
            for &x in &current {
                for &g in self.generators() {
                    grew |= b.add(self.conjugate(x, g));
                }
            }
            if !grew {
                break;
            }
        }
        b.finish().expect("no limit")
    }

    /// Smallest member of each right coset `H g`, ascending.
    pub fn right_coset_representatives(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = self.empty_set();
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if covered.contains(g) {
                continue;
            }
            reps.push(g);
            for x in h.set.iter() {
                covered.insert(self.mul(x, g));
            }
        }
        reps
    }

    /// True iff `<H, g> = G` for every `g` outside `H`. One representative per
    /// right coset suffices since `<H, g> = <H, hg>`.
    pub fn is_maximal_subgroup(&self, h: &Subgroup) -> Result<bool> {
        if h.is_whole() {
            return Err(GroupError::NotProper);
        }
        for g in self.right_coset_representatives(h) {
            if h.contains(g) {
                continue;
            }
            let mut b = SubgroupBuilder::from_subgroup(self, h);
            b.add(g);
            if !b.is_whole_group() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The subgroup as a group in its own right. Elements are renumbered in
    /// ascending order of their index in `self`; the returned vector maps new
    /// indices back.
    pub fn induced_group(&self, h: &Subgroup) -> (Group, Vec<usize>) {
        let members = h.elements();
        let n = members.len();
        let mut back = vec![usize::MAX; self.order()];
        for (i, &m) in members.iter().enumerate() {
            back[m] = i;
        }
        let mut mul = vec![0u32; n * n];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                mul[i * n + j] = back[self.mul(a, b)] as u32;
            }
        }
        let mut group = Group::from_validated_table(n, mul);
        if self.labels().is_some() {
            group = group.with_labels(members.iter().map(|&m| self.label(m)).collect());
        }
        (group, members)
    }
}
