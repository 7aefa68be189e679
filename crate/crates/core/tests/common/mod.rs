//! Independent oracles over raw permutations. Nothing here touches the
//! Cayley tables, closures or series code of the library.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use nilpotentizer::{catalog, BuildOptions, Group, GroupDescription, Perm};

pub type P = Vec<usize>;

pub fn compose(a: &P, b: &P) -> P {
    a.iter().map(|&i| b[i]).collect()
}

pub fn inverse(a: &P) -> P {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j] = i;
    }
    r
}

pub fn identity(n: usize) -> P {
    (0..n).collect()
}

pub fn parse(s: &str, n: usize) -> P {
    let mut p = identity(n);
    for chunk in s.split('(').skip(1) {
        let pts: Vec<usize> = chunk
            .trim_end_matches(|c: char| c == ')' || c.is_whitespace())
            .split_whitespace()
            .map(|t| t.parse::<usize>().unwrap() - 1)
            .collect();
        for k in 0..pts.len() {
            p[pts[k]] = pts[(k + 1) % pts.len()];
        }
    }
    p
}

pub fn close(gens: &[P], n: usize) -> HashSet<P> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(identity(n));
    queue.push_back(identity(n));
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn order_of(a: &P) -> usize {
    let id = identity(a.len());
    let mut x = a.clone();
    let mut k = 1;
    while x != id {
        x = compose(&x, a);
        k += 1;
    }
    k
}

fn primes_of(mut n: usize) -> Vec<usize> {
    let mut out = vec![];
    let mut p = 2;
    while n > 1 {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    out
}

/// A finite group is nilpotent iff each Sylow subgroup is unique, i.e. the
/// elements of p-power order number exactly the p-part of the order.
pub fn is_nilpotent(h: &HashSet<P>) -> bool {
    let n = h.len();
    primes_of(n).into_iter().all(|p| {
        let mut pp = 1;
        while n % (pp * p) == 0 {
            pp *= p;
        }
        let count = h.iter().filter(|x| primes_of(order_of(x)).iter().all(|&q| q == p)).count();
        count == pp
    })
}

/// `{ y : <x, y> nilpotent }` as a set of permutations.
pub fn nil(group: &HashSet<P>, x: &P) -> HashSet<P> {
    let n = x.len();
    group
        .iter()
        .filter(|y| is_nilpotent(&close(&[x.clone(), (*y).clone()], n)))
        .cloned()
        .collect()
}

pub fn centralizer(group: &HashSet<P>, x: &P) -> HashSet<P> {
    group.iter().filter(|g| compose(g, x) == compose(x, g)).cloned().collect()
}

/// Left-normed commutator of a word, by the defining recursion.
pub fn left_normed(word: &[P]) -> P {
    let mut acc = word[0].clone();
    for a in &word[1..] {
        acc = compose(&compose(&compose(&inverse(&acc), &inverse(a)), &acc), a);
    }
    acc
}

/// Brute force over every word of `S^n` in lexicographic order.
pub fn all_words_vanish(s: &[usize], n: usize, g: &Group) -> bool {
    fn rec(s: &[usize], n: usize, g: &Group, prefix: &mut Vec<usize>) -> bool {
        if prefix.len() == n {
            let mut acc = prefix[0];
            for &a in &prefix[1..] {
                let t = g.mul(g.mul(g.inv(acc), g.inv(a)), acc);
                acc = g.mul(t, a);
            }
            return acc == 0;
        }
        for &a in s {
            prefix.push(a);
            let ok = rec(s, n, g, prefix);
            prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    rec(s, n, g, &mut Vec::new())
}

pub fn build(d: &GroupDescription) -> Group {
    Group::build(d, &BuildOptions::default()).unwrap()
}

pub fn builtin(name: &str) -> catalog::BuiltGroup {
    catalog::find_builtin(name).unwrap().build(&BuildOptions::default()).unwrap()
}

/// Raw permutation of an element of a permutation-built group.
pub fn raw(g: &Group, a: usize) -> P {
    g.permutation(a).unwrap().images().iter().map(|&i| i as usize).collect()
}

pub fn index_of(g: &Group, p: &P) -> usize {
    let perm = Perm::from_images(p.iter().map(|&i| i as u32).collect()).unwrap();
    g.find_permutation(&perm).unwrap()
}

pub fn to_indices(g: &Group, s: &HashSet<P>) -> BTreeSet<usize> {
    s.iter().map(|p| index_of(g, p)).collect()
}
