//! Finite groups as full multiplication tables.
//!
//! Elements are indices `0..order` with `0` the identity. For groups built from
//! permutations, `mul(a, b)` is "apply `a`, then `b`", and elements are numbered
//! in breadth-first discovery order from the identity, right-multiplying by the
//! generators in the order given.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::description::{
    BuildOptions, GroupDescription, EXHAUSTIVE_ASSOCIATIVITY_LIMIT, SAMPLED_ASSOCIATIVITY_TRIPLES,
};
use crate::element_set::ElementSet;
use crate::error::{GroupError, Result};
use crate::perm::Perm;
use crate::subgroup::SubgroupBuilder;

pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    element_orders: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
    perms: Option<Vec<Perm>>,
    perm_index: HashMap<Perm, usize>,
    fingerprint: String,
    owner: u64,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("fingerprint", &self.fingerprint)
            .finish_non_exhaustive()
    }
}

impl Group {
    pub fn build(description: &GroupDescription, opts: &BuildOptions) -> Result<Group> {
        match description {
            GroupDescription::Permutation { degree, generators } => {
                let perms = generators
                    .iter()
                    .map(|g| {
                        let p = Perm::parse_cycles(g, *degree)?;
                        if p.degree() != *degree {
                            return Err(GroupError::NotAPermutation(g.clone()));
                        }
                        Ok(p)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Group::from_permutations(*degree, &perms, opts)
            }
            GroupDescription::Cayley { order, identity, table } => {
                if table.len() != *order {
                    return Err(GroupError::InvalidTable(format!(
                        "declared order {order} but table has {} rows",
                        table.len()
                    )));
                }
                Group::from_table(table, *identity, opts)
            }
        }
    }

    /// Closes the generators under right multiplication and tabulates the
    /// product. Each row is filled from the breadth-first spanning tree, so no
    /// permutation lookups happen after the closure itself.
    pub fn from_permutations(degree: usize, gens: &[Perm], opts: &BuildOptions) -> Result<Group> {
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::NotAPermutation(g.to_string()));
            }
        }
        let k = gens.len();
        let mut elements = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<u32> = Vec::new();

        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let p = elements[head].then(g);
                let idx = match index.get(&p) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= opts.max_order {
                            return Err(GroupError::OrderCapExceeded { cap: opts.max_order });
                        }
                        index.insert(p.clone(), i);
                        elements.push(p);
                        parent.push((head, gi));
                        i
                    }
                };
                right.push(idx as u32);
            }
            head += 1;
        }

        let n = elements.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut mul[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, gi) = parent[b];
                let ab_parent = row[pb] as usize;
                row[b] = right[ab_parent * k + gi];
            }
        }
        let generators = (0..k).map(|gi| right[gi] as usize).collect();
        let labels = elements.iter().map(|p| p.to_string()).collect();
        Ok(Group::assemble(n, mul, generators, Some(labels), Some(elements), index))
    }

    /// Builds from an explicit table, validating every group axiom. Indices
    /// are kept as given except that `identity` is swapped into slot 0.
    pub fn from_table(table: &[Vec<usize>], identity: usize, opts: &BuildOptions) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        if n > opts.max_order {
            return Err(GroupError::OrderCapExceeded { cap: opts.max_order });
        }
        if identity >= n {
            return Err(GroupError::InvalidTable(format!("identity {identity} out of range")));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= n) {
                return Err(GroupError::InvalidTable(format!("entry {bad} out of range")));
            }
        }
        // relabel identity <-> 0
        let swap = |i: usize| {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[swap(a) * n + swap(b)] = swap(table[a][b]) as u32;
            }
        }
        validate_table(n, &mul, opts.seed)?;
        Ok(Group::from_validated_table(n, mul))
    }

    /// `mul` must already satisfy the group axioms with identity 0.
    pub(crate) fn from_validated_table(n: usize, mul: Vec<u32>) -> Group {
        let mut g = Group::assemble(n, mul, Vec::new(), None, None, HashMap::new());
        g.generators = g.greedy_generators();
        g
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Group {
        debug_assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    fn assemble(
        n: usize,
        mul: Vec<u32>,
        generators: Vec<usize>,
        labels: Option<Vec<String>>,
        perms: Option<Vec<Perm>>,
        perm_index: HashMap<Perm, usize>,
    ) -> Group {
        let mut inv = vec![0u32; n];
        for a in 0..n {
            let row = &mul[a * n..(a + 1) * n];
            inv[a] = row.iter().position(|&v| v == 0).expect("row without identity") as u32;
        }
        let mut element_orders = vec![0u32; n];
        for a in 0..n {
            let mut k = 1u32;
            let mut x = a;
            while x != 0 {
                x = mul[x * n + a] as usize;
                k += 1;
            }
            element_orders[a] = k;
        }
        let mut hasher = Sha256::new();
        hasher.update((n as u64).to_le_bytes());
        for v in &mul {
            hasher.update(v.to_le_bytes());
        }
        let digest = hasher.finalize();
        let fingerprint = hex::encode(digest);
        let owner = u64::from_be_bytes(digest[..8].try_into().expect("8 bytes"));
        Group {
            order: n,
            mul,
            inv,
            element_orders,
            generators,
            labels,
            perms,
            perm_index,
            fingerprint,
            owner,
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut b = SubgroupBuilder::new(self);
        for a in 1..self.order {
            if b.is_whole_group() {
                break;
            }
            b.add(a);
        }
        b.generators().to_vec()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    /// Smallest `k >= 1` with `a^k = 1`.
    #[inline]
    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a] as usize
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        let k = k % self.element_order(a);
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `a^{-1} b^{-1} a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let t = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(t, a), b)
    }

    /// `[a_1] = a_1`, `[a_1, .., a_n] = [a_1, .., a_{n-1}]^{-1} a_n^{-1} [a_1, .., a_{n-1}] a_n`.
    pub fn left_normed_commutator(&self, word: &[usize]) -> Result<usize> {
        let (&first, rest) = word.split_first().ok_or(GroupError::EmptyWord)?;
        Ok(rest.iter().fold(first, |acc, &a| self.commutator(acc, a)))
    }

    /// `g^{-1} a g`.
    #[inline]
    pub fn conjugate(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.commutes(a, b)))
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    /// First 64 bits of the fingerprint; tags every [`ElementSet`] of this group.
    pub fn owner(&self) -> u64 {
        self.owner
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("#{a}"),
        }
    }

    pub fn permutation(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].degree())
    }

    pub fn find_permutation(&self, p: &Perm) -> Option<usize> {
        self.perm_index.get(p).copied()
    }

    pub fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange { index: a, order: self.order })
        }
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.owner, self.order)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.owner, self.order)
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, it: I) -> ElementSet {
        ElementSet::from_indices(self.owner, self.order, it)
    }

    pub fn owns(&self, set: &ElementSet) -> bool {
        set.owner() == self.owner && set.domain() == self.order
    }

    /// `{ g^{-1} s g : s in set }`.
    pub fn conjugate_set(&self, set: &ElementSet, g: usize) -> ElementSet {
        self.set_of(set.iter().map(|s| self.conjugate(s, g)))
    }

    /// Elementwise product set `{ a b : a in left, b in right }`.
    pub fn product_set(&self, left: &ElementSet, right: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for a in left {
            for b in right {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    /// Whether the raw set is closed under products and inverses.
    pub fn is_closed(&self, set: &ElementSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        let members = set.to_vec();
        members.iter().all(|&a| set.contains(self.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| set.contains(self.mul(a, b))))
    }

    /// Conjugacy classes, each listed ascending, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        for a in 0..self.order {
            if seen.contains(a) {
                continue;
            }
            let mut class = self.empty_set();
            for g in 0..self.order {
                class.insert(self.conjugate(a, g));
            }
            seen.union_with(&class);
            out.push(class.to_vec());
        }
        out
    }

    /// Raw table, row-major.
    pub fn table(&self) -> &[u32] {
        &self.mul
    }
}

fn validate_table(n: usize, mul: &[u32], seed: u64) -> Result<()> {
    let at = |a: usize, b: usize| mul[a * n + b] as usize;
    for a in 0..n {
        if at(0, a) != a || at(a, 0) != a {
            return Err(GroupError::InvalidTable(format!("identity law fails at {a}")));
        }
    }
    let mut seen = vec![0usize; n];
    for a in 0..n {
        for b in 0..n {
            let v = at(a, b);
            if seen[v] == a + 1 {
                return Err(GroupError::InvalidTable(format!("row {a} is not a permutation")));
            }
            seen[v] = a + 1;
        }
    }
    seen.iter_mut().for_each(|s| *s = 0);
    for b in 0..n {
        for a in 0..n {
            let v = at(a, b);
            if seen[v] == b + 1 {
                return Err(GroupError::InvalidTable(format!("column {b} is not a permutation")));
            }
            seen[v] = b + 1;
        }
    }
    let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
    if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        return Err(GroupError::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if !assoc(a, b, c) {
                return Err(GroupError::InvalidTable(format!(
                    "associativity fails at ({a}, {b}, {c})"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_group(degree: usize, gens: &[&str]) -> Group {
        Group::build(&GroupDescription::permutation(degree, gens.iter().copied()), &BuildOptions::default()).unwrap()
    }

    #[test]
    fn cyclic_six_is_abelian() {
        let g = perm_group(6, &["(1 2 3 4 5 6)"]);
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(g.mul(a, b), g.mul(b, a));
            }
        }
        assert!(g.is_abelian());
    }

    #[test]
    fn identity_at_zero_and_generator_indices() {
        let g = perm_group(4, &["(1 2 3 4)", "(1 2)"]);
        assert!(g.permutation(0).unwrap().is_identity());
        assert_eq!(g.label(g.generators()[0]), "(1 2 3 4)");
        assert_eq!(g.label(g.generators()[1]), "(1 2)");
    }

    #[test]
    fn element_orders_in_s4() {
        let g = perm_group(4, &["(1 2 3 4)", "(1 2)"]);
        let find = |s: &str| g.find_permutation(&Perm::parse_cycles(s, 4).unwrap()).unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(find("(1 2)(3 4)")), 2);
        assert_eq!(g.element_order(find("(1 3 2 4)")), 4);
    }

    #[test]
    fn commutator_trivial_cases() {
        let g = perm_group(4, &["(1 2 3 4)", "(1 2)"]);
        for a in 0..g.order() {
            assert_eq!(g.commutator(a, a), 0);
            assert_eq!(g.commutator(a, 0), 0);
        }
        assert!(matches!(g.left_normed_commutator(&[]), Err(GroupError::EmptyWord)));
        assert_eq!(g.left_normed_commutator(&[5]).unwrap(), 5);
    }

    #[test]
    fn order_cap_enforced() {
        let opts = BuildOptions { max_order: 10, ..Default::default() };
        let d = GroupDescription::permutation(4, ["(1 2 3 4)", "(1 2)"]);
        assert!(matches!(Group::build(&d, &opts), Err(GroupError::OrderCapExceeded { cap: 10 })));
    }

    #[test]
    fn cayley_table_rejections() {
        let opts = BuildOptions::default();
        // not Latin
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(Group::from_table(&bad, 0, &opts).is_err());
        // Latin square with identity but not associative (order 5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::from_table(&loop5, 0, &opts).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn cayley_identity_relabel() {
        // Z/3 written with identity at index 2
        let t = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let g = Group::from_table(&t, 2, &BuildOptions::default()).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.element_order(1), 3);
        assert_eq!(g.element_order(2), 3);
    }

    #[test]
    fn non_permutation_generator() {
        let d = GroupDescription::permutation(3, ["(1 2)(2 3)"]);
        assert!(Group::build(&d, &BuildOptions::default()).is_err());
    }
}
