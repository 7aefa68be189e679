use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

const WORD: usize = u64::BITS as usize;

/// A subset of a group's element indices, stored as a fixed-width bit vector.
///
/// `owner` is the 64-bit prefix of the owning group's fingerprint; set algebra
/// between sets of different groups is a logic error and panics in debug builds.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    owner: u64,
    domain: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(owner: u64, domain: usize) -> Self {
        Self {
            owner,
            domain,
            words: vec![0; domain.div_ceil(WORD)],
        }
    }

    pub fn full(owner: u64, domain: usize) -> Self {
        let mut set = Self::empty(owner, domain);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.clear_tail();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(owner: u64, domain: usize, it: I) -> Self {
        let mut set = Self::empty(owner, domain);
        for i in it {
            set.insert(i);
        }
        set
    }

    fn clear_tail(&mut self) {
        let rem = self.domain % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn owner(&self) -> u64 {
        self.owner
    }

    /// Size of the ambient group.
    pub fn domain(&self) -> usize {
        self.domain
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.domain);
        self.words[i / WORD] & (1u64 << (i % WORD)) != 0
    }

    /// Returns true if `i` was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.domain, "element {i} outside domain {}", self.domain);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.domain);
        let w = &mut self.words[i / WORD];
        let mask = 1u64 << (i % WORD);
        let present = *w & mask != 0;
        *w &= !mask;
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.domain
    }

    fn same_owner(&self, other: &Self) {
        debug_assert_eq!(self.owner, other.owner, "element sets from different groups");
        debug_assert_eq!(self.domain, other.domain);
    }

    pub fn union_with(&mut self, other: &Self) {
        self.same_owner(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.same_owner(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.same_owner(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_owner(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            idx: 0,
            cur: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a ElementSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    owner: String,
    domain: usize,
    members: Vec<usize>,
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            owner: format!("{:016x}", self.owner),
            domain: self.domain,
            members: self.to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(d)?;
        let owner = u64::from_str_radix(&w.owner, 16).map_err(D::Error::custom)?;
        if let Some(&bad) = w.members.iter().find(|&&m| m >= w.domain) {
            return Err(D::Error::custom(format!("member {bad} outside domain {}", w.domain)));
        }
        Ok(ElementSet::from_indices(owner, w.domain, w.members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_set_respects_domain() {
        let s = ElementSet::full(1, 70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.iter().last(), Some(69));
        assert!(s.is_full());
    }

    #[test]
    fn empty_domain() {
        let s = ElementSet::full(1, 0);
        assert!(s.is_empty());
        assert_eq!(s.first(), None);
    }

    proptest! {
        #[test]
        fn algebra_matches_btreeset(
            a in proptest::collection::btree_set(0usize..200, 0..80),
            b in proptest::collection::btree_set(0usize..200, 0..80),
        ) {
            let sa = ElementSet::from_indices(7, 200, a.iter().copied());
            let sb = ElementSet::from_indices(7, 200, b.iter().copied());
            prop_assert_eq!(sa.union(&sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.len(), a.len());
        }

        #[test]
        fn serde_round_trip(a in proptest::collection::btree_set(0usize..300, 0..50)) {
            let s = ElementSet::from_indices(0xdead_beef, 300, a);
            let text = serde_json::to_string(&s).unwrap();
            let back: ElementSet = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
