//! The built-in group corpus, group-file ingestion and corpus manifests.

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::analysis::Analysis;
use crate::arith;
use crate::description::{BuildOptions, GroupDescription};
use crate::error::{GroupError, Result};
use crate::group::Group;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Solvable,
    NonSolvable,
    Nilpotent,
    Simple,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Solvable => "solvable",
            Tag::NonSolvable => "non-solvable",
            Tag::Nilpotent => "nilpotent",
            Tag::Simple => "simple",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Construction {
    Description { description: GroupDescription },
    DirectProduct { left: Box<Construction>, right: Box<Construction> },
}

impl Construction {
    fn build(&self, opts: &BuildOptions) -> Result<(Group, Option<(Subgroup, Subgroup)>)> {
        match self {
            Construction::Description { description } => Ok((Group::build(description, opts)?, None)),
            Construction::DirectProduct { left, right } => {
                let (l, _) = left.build(opts)?;
                let (r, _) = right.build(opts)?;
                let p = l.direct_product(&r, opts)?;
                Ok((p.group, Some((p.left, p.right))))
            }
        }
    }
}

impl From<GroupDescription> for Construction {
    fn from(description: GroupDescription) -> Self {
        Construction::Description { description }
    }
}

/// A named corpus group with its expected order and tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub construction: Construction,
    pub order: usize,
    pub tags: BTreeSet<Tag>,
}

impl CorpusEntry {
    fn new(name: impl Into<String>, construction: impl Into<Construction>, order: usize, tags: &[Tag]) -> Self {
        Self {
            name: name.into(),
            construction: construction.into(),
            order,
            tags: tags.iter().copied().collect(),
        }
    }

    /// Builds the group and recomputes its tags; disagreement with the
    /// expected order or tags is an error.
    pub fn build(&self, opts: &BuildOptions) -> Result<BuiltGroup> {
        let (group, factors) = self.construction.build(opts)?;
        let built = BuiltGroup::from_group(self.name.clone(), group, factors);
        if built.group().order() != self.order {
            return Err(GroupError::CorpusMismatch {
                name: self.name.clone(),
                reason: format!("expected order {}, built {}", self.order, built.group().order()),
            });
        }
        if built.tags != self.tags {
            return Err(GroupError::CorpusMismatch {
                name: self.name.clone(),
                reason: format!("expected tags {:?}, computed {:?}", self.tags, built.tags),
            });
        }
        Ok(built)
    }
}

/// A corpus group ready for analysis.
pub struct BuiltGroup {
    pub name: String,
    pub analysis: Analysis,
    pub tags: BTreeSet<Tag>,
    /// The embedded factors when the group was built as a direct product.
    pub factors: Option<(Subgroup, Subgroup)>,
}

impl BuiltGroup {
    pub fn from_group(name: String, group: Group, factors: Option<(Subgroup, Subgroup)>) -> Self {
        let analysis = Analysis::new(group);
        let tags = compute_tags(&analysis);
        Self { name, analysis, tags, factors }
    }

    pub fn group(&self) -> &Group {
        self.analysis.group()
    }

    pub fn group_arc(&self) -> &Arc<Group> {
        self.analysis.group_arc()
    }

    pub fn is_solvable(&self) -> bool {
        self.tags.contains(&Tag::Solvable)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.tags.contains(&Tag::Nilpotent)
    }
}

pub fn compute_tags(a: &Analysis) -> BTreeSet<Tag> {
    let whole = a.group().whole_group();
    let mut tags = BTreeSet::new();
    tags.insert(if a.is_solvable(&whole) { Tag::Solvable } else { Tag::NonSolvable });
    if a.is_nilpotent(&whole) {
        tags.insert(Tag::Nilpotent);
    }
    if a.is_simple() {
        tags.insert(Tag::Simple);
    }
    tags
}

fn cycle_string(points: &[usize]) -> String {
    let body: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    format!("({})", body.join(" "))
}

pub fn cyclic(n: usize) -> GroupDescription {
    if n == 1 {
        return GroupDescription::permutation(1, ["()"]);
    }
    GroupDescription::permutation(n, [cycle_string(&(1..=n).collect::<Vec<_>>())])
}

/// Symmetries of a regular `n`-gon, order `2n`.
pub fn dihedral(n: usize) -> GroupDescription {
    let rotation = cycle_string(&(1..=n).collect::<Vec<_>>());
    let reflection: String = (1..=n / 2).map(|i| cycle_string(&[i, n + 1 - i])).collect();
    GroupDescription::permutation(n, [rotation, reflection])
}

pub fn symmetric(n: usize) -> GroupDescription {
    GroupDescription::permutation(n, [cycle_string(&(1..=n).collect::<Vec<_>>()), "(1 2)".to_string()])
}

pub fn alternating(n: usize) -> GroupDescription {
    assert!(n >= 3);
    // (1 2 3) together with an (n-1)- or n-cycle of even parity
    let long: Vec<usize> = if n % 2 == 1 { (1..=n).collect() } else { (2..=n).collect() };
    GroupDescription::permutation(n, ["(1 2 3)".to_string(), cycle_string(&long)])
}

/// `C_p x C_p` on `2p` points.
pub fn elementary_abelian_square(p: usize) -> GroupDescription {
    let first: Vec<usize> = (1..=p).collect();
    let second: Vec<usize> = (p + 1..=2 * p).collect();
    GroupDescription::permutation(2 * p, [cycle_string(&first), cycle_string(&second)])
}

/// Generalized quaternion (dicyclic) group of order `4m`:
/// `<a, x | a^{2m} = 1, x^2 = a^m, x a x^{-1} = a^{-1}>`, element `a^i x^j`
/// stored at index `i + 2m j`.
pub fn dicyclic(m: usize) -> GroupDescription {
    let r = 2 * m;
    let n = 2 * r;
    let idx = |i: usize, j: usize| (i % r) + r * j;
    let mut table = vec![vec![0; n]; n];
    for (u, row) in table.iter_mut().enumerate() {
        let (i, j) = (u % r, u / r);
        for (v, cell) in row.iter_mut().enumerate() {
            let (k, l) = (v % r, v / r);
            *cell = match (j, l) {
                (0, _) => idx(i + k, l),
                (1, 0) => idx(i + r - k, 1),
                _ => idx(i + r - k + m, 0),
            };
        }
    }
    GroupDescription::Cayley { order: n, identity: 0, table }
}

fn check_odd_prime(q: usize, max: usize) -> Result<()> {
    if q < 3 || !arith::is_prime(q) || q > max {
        return Err(GroupError::Unsupported(format!("q = {q}: expected an odd prime <= {max}")));
    }
    Ok(())
}

/// Largest field size accepted by [`psl2`] and [`sl2`].
pub const MAX_FIELD: usize = 97;

/// `PSL(2, q)` acting on the `q + 1` points of the projective line over
/// `F_q`, generated by `z -> z + 1` and `z -> -1/z`. Point `z` of `F_q` is
/// numbered `z + 1`; infinity is `q + 1`.
pub fn psl2(q: usize) -> Result<GroupDescription> {
    check_odd_prime(q, MAX_FIELD)?;
    let inf = q;
    let translate: Vec<u32> = (0..=q).map(|z| if z == inf { inf } else { (z + 1) % q } as u32).collect();
    let invert: Vec<u32> = (0..=q)
        .map(|z| {
            if z == inf {
                0
            } else if z == 0 {
                inf
            } else {
                (q - mod_inverse(z, q)) % q
            }
        } as u32)
        .collect();
    let t = Perm::from_images(translate).expect("bijection");
    let s = Perm::from_images(invert).expect("bijection");
    Ok(GroupDescription::permutation(q + 1, [t.to_string(), s.to_string()]))
}

/// `SL(2, q)` acting on the nonzero row vectors of `F_q^2` by `v -> vM`,
/// generated by `[[1, 1], [0, 1]]` and `[[0, -1], [1, 0]]`.
pub fn sl2(q: usize) -> Result<GroupDescription> {
    check_odd_prime(q, MAX_FIELD)?;
    let vectors: Vec<(usize, usize)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&w| w == v).expect("nonzero vector");
    let act = |m: [[usize; 2]; 2]| {
        let images: Vec<u32> = vectors
            .iter()
            .map(|&(a, b)| index(((a * m[0][0] + b * m[1][0]) % q, (a * m[0][1] + b * m[1][1]) % q)) as u32)
            .collect();
        Perm::from_images(images).expect("invertible matrix").to_string()
    };
    let t = act([[1, 1], [0, 1]]);
    let s = act([[0, q - 1], [1, 0]]);
    Ok(GroupDescription::permutation(vectors.len(), [t, s]))
}

fn mod_inverse(a: usize, q: usize) -> usize {
    (1..q).find(|&b| a * b % q == 1).expect("q prime")
}

/// Every built-in group. Expected tags are checked against recomputed ones
/// when an entry is built.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    use Tag::*;
    let mut out = Vec::new();
    for n in 1..=32 {
        let mut tags = vec![Solvable, Nilpotent];
        if arith::is_prime(n) {
            tags.push(Simple);
        }
        out.push(CorpusEntry::new(format!("C{n}"), cyclic(n), n, &tags));
    }
    for n in 3..=16usize {
        let tags: &[Tag] = if n.is_power_of_two() { &[Solvable, Nilpotent] } else { &[Solvable] };
        out.push(CorpusEntry::new(format!("D{}", 2 * n), dihedral(n), 2 * n, tags));
    }
    out.push(CorpusEntry::new("Q8", dicyclic(2), 8, &[Solvable, Nilpotent]));
    out.push(CorpusEntry::new("Q16", dicyclic(4), 16, &[Solvable, Nilpotent]));
    for p in [2, 3, 5] {
        out.push(CorpusEntry::new(format!("C{p}^2"), elementary_abelian_square(p), p * p, &[Solvable, Nilpotent]));
    }
    out.push(CorpusEntry::new("S3", symmetric(3), 6, &[Solvable]));
    out.push(CorpusEntry::new("S4", symmetric(4), 24, &[Solvable]));
    out.push(CorpusEntry::new("S5", symmetric(5), 120, &[NonSolvable]));
    out.push(CorpusEntry::new("A4", alternating(4), 12, &[Solvable]));
    out.push(CorpusEntry::new("A5", alternating(5), 60, &[NonSolvable, Simple]));
    out.push(CorpusEntry::new("A6", alternating(6), 360, &[NonSolvable, Simple]));
    out.push(CorpusEntry::new("SL(2,3)", sl2(3).expect("q = 3"), 24, &[Solvable]));
    out.push(CorpusEntry::new("SL(2,5)", sl2(5).expect("q = 5"), 120, &[NonSolvable]));
    for q in [5, 7, 11, 13, 17] {
        out.push(CorpusEntry::new(
            format!("PSL(2,{q})"),
            psl2(q).expect("odd prime"),
            q * (q * q - 1) / 2,
            &[NonSolvable, Simple],
        ));
    }
    let product = |l: GroupDescription, r: GroupDescription| Construction::DirectProduct {
        left: Box::new(l.into()),
        right: Box::new(r.into()),
    };
    out.push(CorpusEntry::new("S3xC2", product(symmetric(3), cyclic(2)), 12, &[Solvable]));
    out.push(CorpusEntry::new("Q8xS3", product(dicyclic(2), symmetric(3)), 48, &[Solvable]));
    out.push(CorpusEntry::new("A5xC2", product(alternating(5), cyclic(2)), 120, &[NonSolvable]));
    out.push(CorpusEntry::new("S5xC2", product(symmetric(5), cyclic(2)), 240, &[NonSolvable]));
    out
}

pub fn find_builtin(name: &str) -> Option<CorpusEntry> {
    builtin_corpus().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Builds entries in parallel, preserving order.
pub fn build_all(entries: &[CorpusEntry], opts: &BuildOptions) -> Result<Vec<BuiltGroup>> {
    entries.par_iter().map(|e| e.build(opts)).collect()
}

/// Reads a group file; the entry is named after the file stem and its tags
/// are computed.
pub fn ingest(path: &Path, opts: &BuildOptions) -> Result<BuiltGroup> {
    let description = GroupDescription::read(path)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let group = Group::build(&description, opts)?;
    Ok(BuiltGroup::from_group(name, group, None))
}

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tags: Option<BTreeSet<Tag>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: u32,
    pub entries: Vec<ManifestEntry>,
}

/// Loads a corpus directory. With a `manifest.json`, every listed file is
/// built and checked against the listed order and tags; otherwise every
/// `*.json` file is ingested in name order.
pub fn load_corpus_dir(dir: &Path, opts: &BuildOptions) -> Result<Vec<BuiltGroup>> {
    let manifest_path = dir.join(MANIFEST_FILE);
    if manifest_path.exists() {
        let manifest: Manifest = serde_json::from_str(&std::fs::read_to_string(&manifest_path)?)?;
        return manifest
            .entries
            .par_iter()
            .map(|e| {
                let mut built = ingest(&dir.join(&e.file), opts)?;
                built.name = e.name.clone();
                if let Some(order) = e.order {
                    if order != built.group().order() {
                        return Err(GroupError::CorpusMismatch {
                            name: e.name.clone(),
                            reason: format!("expected order {order}, built {}", built.group().order()),
                        });
                    }
                }
                if let Some(tags) = &e.tags {
                    if tags != &built.tags {
                        return Err(GroupError::CorpusMismatch {
                            name: e.name.clone(),
                            reason: format!("expected tags {tags:?}, computed {:?}", built.tags),
                        });
                    }
                }
                Ok(built)
            })
            .collect();
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files.par_iter().map(|p| ingest(p, opts)).collect()
}

/// Stable hash over corpus names, orders, fingerprints and tags.
pub fn corpus_hash(groups: &[BuiltGroup]) -> String {
    let mut h = Sha256::new();
    for g in groups {
        h.update(g.name.as_bytes());
        h.update([0]);
        h.update((g.group().order() as u64).to_le_bytes());
        h.update(g.group().fingerprint().as_bytes());
        for t in &g.tags {
            h.update(t.to_string().as_bytes());
        }
        h.update([0xff]);
    }
    hex::encode(h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psl2_small_orders() {
        let opts = BuildOptions::default();
        for (q, order) in [(5, 60), (7, 168)] {
            let g = Group::build(&psl2(q).unwrap(), &opts).unwrap();
            assert_eq!(g.order(), order);
        }
        assert!(psl2(4).is_err());
        assert!(psl2(2).is_err());
    }

    #[test]
    fn dicyclic_tables_are_groups() {
        let opts = BuildOptions::default();
        let q8 = Group::build(&dicyclic(2), &opts).unwrap();
        assert_eq!(q8.order(), 8);
        // exactly one involution
        assert_eq!((0..8).filter(|&a| q8.element_order(a) == 2).count(), 1);
        let q16 = Group::build(&dicyclic(4), &opts).unwrap();
        assert_eq!((0..16).filter(|&a| q16.element_order(a) == 2).count(), 1);
    }

    #[test]
    fn sl2_orders() {
        let opts = BuildOptions::default();
        assert_eq!(Group::build(&sl2(3).unwrap(), &opts).unwrap().order(), 24);
        assert_eq!(Group::build(&sl2(5).unwrap(), &opts).unwrap().order(), 120);
    }

    #[test]
    fn builtin_names_unique() {
        let names: BTreeSet<String> = builtin_corpus().into_iter().map(|e| e.name).collect();
        assert_eq!(names.len(), builtin_corpus().len());
        assert!(find_builtin("psl(2,17)").is_some());
    }

    #[test]
    fn tag_mismatch_is_reported() {
        let mut e = find_builtin("S3").unwrap();
        e.tags.insert(Tag::Nilpotent);
        assert!(matches!(e.build(&BuildOptions::default()), Err(GroupError::CorpusMismatch { .. })));
    }
}
