//! Executable checks over a corpus. Each suite maps one statement to a
//! sweep producing one verdict per instance; hypotheses that do not hold
//! yield `not-applicable`, never `pass`.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{bail, Result};
use nilpotentizer::arith;
use nilpotentizer::catalog::BuiltGroup;
use nilpotentizer::{Analysis, GroupError, Outcome, Subgroup, DEFAULT_WORK_CAP};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report::{SuiteReport, SuiteVerdict};

/// Default order bound for the per-element sweeps of the `thm-1.1` family
/// and `lem-2.3`.
pub const SWEEP_ORDER: usize = 360;
/// Default order bound for the remaining sweeps; excludes PSL(2,17).
pub const SHALLOW_ORDER: usize = 1100;
/// Default order bound for the `properties` family.
pub const PROPERTY_ORDER: usize = 120;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Lift every order bound.
    pub deep: bool,
    pub work_cap: u128,
    pub conjecture_size: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self { deep: false, work_cap: DEFAULT_WORK_CAP, conjecture_size: 8 }
    }
}

pub struct Context<'a> {
    pub corpus: &'a [BuiltGroup],
    pub opts: &'a RunOptions,
}

impl<'a> Context<'a> {
    fn groups(&self, bound: usize) -> impl Iterator<Item = &'a BuiltGroup> + '_ {
        self.corpus.iter().filter(move |b| self.opts.deep || b.group().order() <= bound)
    }

    fn non_solvable(&self, bound: usize) -> impl Iterator<Item = &'a BuiltGroup> + '_ {
        self.groups(bound).filter(|b| !b.is_solvable())
    }
}

type Params = BTreeMap<String, Value>;
type RunFn = fn(&Context, &str) -> Vec<SuiteVerdict>;

pub struct Suite {
    pub id: &'static str,
    pub description: &'static str,
    run: RunFn,
}

impl Suite {
    pub fn run(&self, ctx: &Context) -> SuiteReport {
        SuiteReport {
            id: self.id.to_string(),
            description: self.description.to_string(),
            verdicts: (self.run)(ctx, self.id),
        }
    }
}

/// Every suite, in execution order.
pub fn registry() -> Vec<Suite> {
    macro_rules! suite {
        ($id:literal, $desc:literal, $f:expr) => {
            Suite { id: $id, description: $desc, run: $f }
        };
    }
    vec![
        suite!("thm-1.1.1", "<x> <= <x, Z(G)> <= C(x) <= nil(x)", thm_1_1_1),
        suite!("thm-1.1.2", "nil(x) is the union of the maximal nilpotent subgroups containing x", thm_1_1_2),
        suite!("thm-1.1.3", "o(x) divides |nil(x)|", thm_1_1_3),
        suite!("thm-1.1.4a", "nil(x)N/N is contained in nil(xN) in G/N", thm_1_1_4a),
        suite!("thm-1.1.4b", "nil(xK) in G/K equals nil(x)/K for K inside the hypercenter", thm_1_1_4b),
        suite!("nilpotency-oracle", "series and Sylow nilpotency tests agree on every memoized subgroup", nilpotency_oracle),
        suite!("lem-2.1", "nil_G(x) = K nil_H(x) for G = HK, [H, K] = 1, x in H", lem_2_1),
        suite!("cor-2.2", "nil_G(x) = G for x in a nilpotent direct factor", cor_2_2),
        suite!("lem-2.3", "weight-n commutators vanishing on nil(x) make it a maximal nilpotent subgroup of class < n", lem_2_3),
        suite!("thm-1.2.1", "<nil(x)> maximal and nil(x) abelian implies G solvable", thm_1_2_1),
        suite!("thm-1.2.2", "<nil(x)> maximal and weight-3 commutators vanish on nil(x) implies G solvable", thm_1_2_2),
        suite!("thm-1.3", "non-solvable G, <nil(x)> maximal: |nil(x)| is not p or p^2", thm_1_3),
        suite!("lem-2.12", "non-solvable G, nil(x) a maximal subgroup: |nil(x)| is not an odd prime power", lem_2_12),
        suite!("lem-2.13", "x of prime order p, |nil(x)| <= p^2 implies nil(x) = C(x)", lem_2_13),
        suite!("cor-2.6.1", "non-solvable G, <nil(x)> maximal: <x> is a proper subset of nil(x)", cor_2_6_1),
        suite!("cor-2.6.2", "non-solvable G, <nil(x)> maximal: some nilpotent subgroup properly contains <x>", cor_2_6_2),
        suite!("cor-2.14.1", "non-solvable G, M = <nil(x)> maximal, 1 != Z* <= M: |nil(x)| != p^3", cor_2_14_1),
        suite!("cor-2.14.2", "non-solvable G, M = <nil(x)> maximal, 1 != Z* <= M: |nil(x)| != pq", cor_2_14_2),
        suite!("prop-2.15", "non-solvable G, order-3 elements self-centralizing, <nil(x)> maximal: |nil(x)| != 6", prop_2_15),
        suite!("cor-2.16", "non-solvable G, M = <nil(x)> maximal, 1 != Z* <= M: |nil(x)| >= 12", cor_2_16),
        suite!("thm-2.5", "a nilpotent maximal subgroup with Sylow 2-subgroup of class <= 2 forces solvability", thm_2_5),
        suite!("remark-psl-2-17", "PSL(2,17), x of order 8: nil(x) is the Sylow 2-subgroup, maximal, of class 3", remark_psl_2_17),
        suite!("conjecture", "no non-solvable G has |nil(x)| = size with <nil(x)> maximal", conjecture),
        suite!("conjecture.prime", "no non-solvable G has |nil(x)| prime with <nil(x)> maximal", conjecture_prime),
        suite!("defs.weakly-nilpotent", "nil(G) = G exactly when every 2-generated subgroup is nilpotent", defs_weakly_nilpotent),
        suite!("defs.n-group", "n-group test agrees with per-element closure and holds for nilpotent G", defs_n_group),
        suite!("properties.symmetry", "y in nil(x) iff x in nil(y)", properties_symmetry),
        suite!("properties.conjugation", "nil(x^g) = nil(x)^g", properties_conjugation),
        suite!("properties.order-divides", "o(x) divides |nil(x)|", properties_order_divides),
        suite!("properties.lagrange", "element and subgroup orders divide |G|", properties_lagrange),
        suite!("properties.odd-order", "groups of odd order are solvable", properties_odd_order),
    ]
}

/// Resolves a selector: `all`, an exact id, or an id prefix ending at a `.`
/// boundary (`thm-1.1` selects `thm-1.1.1` .. `thm-1.1.4b`).
pub fn select(selector: &str) -> Result<Vec<Suite>> {
    let all = registry();
    if selector == "all" {
        return Ok(all);
    }
    let chosen: Vec<Suite> = all
        .into_iter()
        .filter(|s| s.id == selector || s.id.starts_with(&format!("{selector}.")))
        .collect();
    if chosen.is_empty() {
        bail!("unknown suite {selector:?}; known: all, {}", registry().iter().map(|s| s.id).collect::<Vec<_>>().join(", "));
    }
    Ok(chosen)
}

pub fn run_suites(suites: &[Suite], ctx: &Context) -> Vec<SuiteReport> {
    suites.iter().map(|s| s.run(ctx)).collect()
}

fn element_params(a: &Analysis, x: usize) -> Params {
    BTreeMap::from([("x".to_string(), json!(x)), ("element".to_string(), json!(a.group().label(x)))])
}

/// Runs `check` for every element in parallel, merging in element order.
fn sweep<F>(suite: &str, b: &BuiltGroup, elements: &[usize], check: F) -> Vec<SuiteVerdict>
where
    F: Fn(usize) -> Vec<(Params, Outcome)> + Sync,
{
    let a = &b.analysis;
    elements
        .par_iter()
        .map(|&x| {
            let start = Instant::now();
            let results = check(x);
            let ms = start.elapsed().as_millis() as u64;
            results
                .into_iter()
                .map(|(extra, outcome)| {
                    let mut params = element_params(a, x);
                    params.extend(extra);
                    SuiteVerdict::new(suite, &b.name, params, outcome, ms)
                })
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn sweep_all<F>(suite: &str, b: &BuiltGroup, check: F) -> Vec<SuiteVerdict>
where
    F: Fn(usize) -> Outcome + Sync,
{
    let elements: Vec<usize> = (0..b.group().order()).collect();
    sweep(suite, b, &elements, |x| vec![(Params::new(), check(x))])
}

fn per_group(suite: &str, b: &BuiltGroup, params: Params, check: impl FnOnce() -> Outcome) -> SuiteVerdict {
    let start = Instant::now();
    let outcome = check();
    SuiteVerdict::new(suite, &b.name, params, outcome, start.elapsed().as_millis() as u64)
}

fn order_param(b: &BuiltGroup) -> Params {
    BTreeMap::from([("order".to_string(), json!(b.group().order()))])
}

fn condition_outcome(a: &Analysis, x: usize, n: usize, cap: u128) -> std::result::Result<bool, Outcome> {
    match a.commutator_condition(&a.nil_element(x), n, cap) {
        Ok(c) => Ok(c.holds),
        Err(GroupError::Infeasible { work, .. }) => {
            Err(Outcome::infeasible("commutator enumeration above work cap").with("work", work.to_string()))
        }
        Err(e) => Err(Outcome::not_applicable(&e.to_string())),
    }
}

fn not_maximal() -> Outcome {
    Outcome::not_applicable("<nil(x)> is not a maximal subgroup")
}

fn sweep_limit(ctx: &Context) -> usize {
    if ctx.opts.deep {
        usize::MAX
    } else {
        SWEEP_ORDER
    }
}

fn thm_1_1_1(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(sweep_limit(ctx)) {
        let a = &b.analysis;
        let g = a.group();
        let center = g.center();
        out.extend(sweep_all(id, b, |x| {
            let cyclic = g.generated_subgroup(&[x]);
            let with_center = g.join(&cyclic, &center);
            let centralizer = g.centralizer(x);
            let nil = a.nil_element(x);
            let links = [
                ("<x> <= <x, Z>", cyclic.is_subgroup_of(&with_center)),
                ("<x, Z> <= C(x)", with_center.is_subgroup_of(&centralizer)),
                ("C(x) <= nil(x)", centralizer.set().is_subset(&nil)),
            ];
            match links.iter().find(|(_, ok)| !ok) {
                None => Outcome::pass(),
                Some((link, _)) => Outcome::fail(json!({"x": x, "broken": link})),
            }
        }));
    }
    out
}

fn thm_1_1_2(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(sweep_limit(ctx)) {
        let a = &b.analysis;
        out.extend(sweep_all(id, b, |x| {
            let (equal, pieces) = a.nil_as_union_of_maximal_nilpotents(x);
            Outcome::check(equal, || {
                json!({"x": x, "nil": a.nil_element(x).to_vec(), "pieces": pieces.iter().map(Subgroup::elements).collect::<Vec<_>>()})
            })
            .with("maximal_nilpotents", pieces.len())
        }));
    }
    out
}

fn thm_1_1_3(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(sweep_limit(ctx)) {
        let a = &b.analysis;
        out.extend(sweep_all(id, b, |x| {
            let size = a.nil_element(x).len();
            let order = a.group().element_order(x);
            Outcome::check(size % order == 0, || json!({"x": x, "size": size, "order": order}))
        }));
    }
    out
}

/// Normal subgroups probed by the quotient checks, first name wins on
/// duplicates.
pub fn normal_candidates(a: &Analysis) -> Vec<(&'static str, Subgroup)> {
    let g = a.group();
    let all = [
        ("trivial", g.trivial_subgroup()),
        ("center", g.center()),
        ("fitting", a.fitting_subgroup()),
        ("derived", a.derived_subgroup()),
        ("hypercenter", a.hypercenter()),
        ("whole", g.whole_group()),
    ];
    let mut out: Vec<(&'static str, Subgroup)> = Vec::new();
    for (name, h) in all {
        if g.is_normal(&h) && !out.iter().any(|(_, k)| k.set() == h.set()) {
            out.push((name, h));
        }
    }
    out
}

fn quotient_sweep(ctx: &Context, id: &str, hyper_only: bool) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(sweep_limit(ctx)) {
        let a = &b.analysis;
        let hyper = a.hypercenter();
        let normals: Vec<_> = normal_candidates(a)
            .into_iter()
            .filter(|(_, n)| !hyper_only || n.is_subgroup_of(&hyper))
            .map(|(name, n)| {
                let qa = a.quotient_analysis(&n).expect("candidates are normal");
                (name, n.order(), qa)
            })
            .collect();
        let elements: Vec<usize> = (0..a.group().order()).collect();
        out.extend(sweep(id, b, &elements, |x| {
            normals
                .iter()
                .map(|(name, order, qa)| {
                    let params = BTreeMap::from([
                        ("normal".to_string(), json!(name)),
                        ("normal_order".to_string(), json!(order)),
                    ]);
                    let outcome = if hyper_only {
                        a.check_quotient_equality(qa, &hyper, x)
                    } else {
                        a.check_quotient_containment(qa, x)
                    };
                    (params, outcome)
                })
                .collect()
        }));
    }
    out
}

fn thm_1_1_4a(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    quotient_sweep(ctx, id, false)
}

fn thm_1_1_4b(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    quotient_sweep(ctx, id, true)
}

/// Audits the memoized class of every subgroup met so far against the
/// Sylow-normality criterion. Computes all nilpotentizers first, so the
/// audit is never empty.
fn nilpotency_oracle(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    ctx.groups(sweep_limit(ctx))
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                a.nil_all();
                let snapshot = a.nilpotency_cache_snapshot();
                let disagree: Vec<Vec<usize>> = snapshot
                    .iter()
                    .filter(|(h, class)| a.is_nilpotent_by_sylow(h) != class.is_some())
                    .map(|(h, _)| h.elements())
                    .collect();
                let agree = snapshot.len() - disagree.len();
                Outcome::check(disagree.is_empty(), || json!({"disagreeing_subgroups": disagree}))
                    .with("subgroups", snapshot.len())
                    .with("agree", agree)
            })
        })
        .collect()
}

fn factor_pairs(b: &BuiltGroup) -> Vec<(&'static str, &Subgroup, &Subgroup)> {
    match &b.factors {
        Some((l, r)) => vec![("left", l, r), ("right", r, l)],
        None => Vec::new(),
    }
}

fn lem_2_1(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(SHALLOW_ORDER) {
        for (side, h, k) in factor_pairs(b) {
            out.extend(sweep(id, b, &h.elements(), |x| {
                let params = BTreeMap::from([("factor".to_string(), json!(side))]);
                vec![(params, b.analysis.check_direct_factor_law(h, k, x))]
            }));
        }
    }
    out
}

fn cor_2_2(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(SHALLOW_ORDER) {
        let a = &b.analysis;
        for (side, h, _) in factor_pairs(b) {
            let nilpotent = a.is_nilpotent(h);
            out.extend(sweep(id, b, &h.elements(), |x| {
                let params = BTreeMap::from([("factor".to_string(), json!(side))]);
                let outcome = if nilpotent {
                    let nil = a.nil_element(x);
                    Outcome::check(nil.is_full(), || json!({"x": x, "missing": nil.difference(&a.group().full_set()).to_vec(), "size": nil.len()}))
                } else {
                    Outcome::not_applicable("factor is not nilpotent")
                };
                vec![(params, outcome)]
            }));
        }
    }
    out
}

fn lem_2_3(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    let cap = ctx.opts.work_cap;
    for b in ctx.groups(sweep_limit(ctx)) {
        let elements: Vec<usize> = (0..b.group().order()).collect();
        out.extend(sweep(id, b, &elements, |x| {
            (2..=4)
                .map(|n| {
                    let params = BTreeMap::from([("n".to_string(), json!(n))]);
                    (params, b.analysis.check_nil_commutator_law(x, n, cap))
                })
                .collect()
        }));
    }
    out
}

fn solvability_criterion(ctx: &Context, id: &str, weight: usize) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    let cap = ctx.opts.work_cap;
    for b in ctx.groups(SHALLOW_ORDER) {
        let a = &b.analysis;
        let solvable = b.is_solvable();
        out.extend(sweep_all(id, b, |x| {
            if !a.is_maximal(&a.nil_generated(x)) {
                return not_maximal();
            }
            let holds = match condition_outcome(a, x, weight, cap) {
                Ok(h) => h,
                Err(o) => return o,
            };
            match (solvable, holds) {
                (true, true) => Outcome::pass().with("confirming", true),
                (true, false) => Outcome::not_applicable("commutator condition fails"),
                (false, holds) => Outcome::check(!holds, || {
                    json!({"x": x, "reason": "condition holds in a non-solvable group", "nil": a.nil_element(x).to_vec()})
                })
                .with("condition_holds", holds),
            }
        }));
    }
    out
}

fn thm_1_2_1(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    solvability_criterion(ctx, id, 2)
}

fn thm_1_2_2(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    solvability_criterion(ctx, id, 3)
}

/// Sweeps non-solvable groups over elements whose nilpotentizer generates a
/// maximal subgroup; `check` sees `x` and `|nil(x)|`.
fn maximal_sweep<F>(ctx: &Context, id: &str, check: F) -> Vec<SuiteVerdict>
where
    F: Fn(&BuiltGroup, usize, usize) -> Outcome + Sync,
{
    let mut out = Vec::new();
    for b in ctx.non_solvable(SHALLOW_ORDER) {
        let a = &b.analysis;
        out.extend(sweep_all(id, b, |x| {
            if !a.is_maximal(&a.nil_generated(x)) {
                return not_maximal();
            }
            check(b, x, a.nil_element(x).len()).with("size", a.nil_element(x).len())
        }));
    }
    out
}

fn size_witness(x: usize, size: usize) -> Value {
    json!({"x": x, "size": size})
}

fn thm_1_3(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    maximal_sweep(ctx, id, |_, x, size| {
        let bad = arith::prime_power(size).is_some_and(|(_, k)| k <= 2);
        Outcome::check(!bad, || size_witness(x, size))
    })
}

fn lem_2_12(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.non_solvable(SHALLOW_ORDER) {
        let a = &b.analysis;
        let g = a.group();
        out.extend(sweep_all(id, b, |x| {
            let nil = a.nil_element(x);
            if !g.is_closed(&nil) {
                return Outcome::not_applicable("nil(x) is not a subgroup");
            }
            if !a.is_maximal(&a.nil_generated(x)) {
                return Outcome::not_applicable("nil(x) is not a maximal subgroup");
            }
            let size = nil.len();
            let bad = arith::prime_power(size).is_some_and(|(p, _)| p % 2 == 1);
            Outcome::check(!bad, || size_witness(x, size)).with("size", size)
        }));
    }
    out
}

fn lem_2_13(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(SHALLOW_ORDER) {
        let a = &b.analysis;
        let g = a.group();
        out.extend(sweep_all(id, b, |x| {
            let p = g.element_order(x);
            if !arith::is_prime(p) {
                return Outcome::not_applicable("x does not have prime order");
            }
            let nil = a.nil_element(x);
            if nil.len() > p * p {
                return Outcome::not_applicable("|nil(x)| > p^2");
            }
            let c = g.centralizer(x);
            Outcome::check(c.set() == &nil, || {
                json!({"x": x, "nil": nil.to_vec(), "centralizer": c.elements()})
            })
            .with("size", nil.len())
        }));
    }
    out
}

fn cor_2_6_1(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    maximal_sweep(ctx, id, |b, x, _| {
        let a = &b.analysis;
        let cyclic = a.group().generated_subgroup(&[x]);
        let nil = a.nil_element(x);
        Outcome::check(cyclic.set().is_proper_subset(&nil), || json!({"x": x, "nil": nil.to_vec()}))
    })
}

fn cor_2_6_2(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    maximal_sweep(ctx, id, |b, x, _| {
        let a = &b.analysis;
        let cyclic = a.group().generated_subgroup(&[x]);
        let m = a.extend_to_maximal_nilpotent(&cyclic).expect("cyclic groups are nilpotent");
        Outcome::check(m.order() > cyclic.order(), || json!({"x": x, "maximal_nilpotent": m.elements()}))
            .with("overgroup_order", m.order())
    })
}

/// Sweep for statements that additionally need `1 != Z* <= <nil(x)>`.
fn hypercentral_sweep<F>(ctx: &Context, id: &str, check: F) -> Vec<SuiteVerdict>
where
    F: Fn(usize, usize) -> Outcome + Sync,
{
    let mut out = Vec::new();
    for b in ctx.non_solvable(SHALLOW_ORDER) {
        let a = &b.analysis;
        let hyper = a.hypercenter();
        out.extend(sweep_all(id, b, |x| {
            if hyper.is_trivial() {
                return Outcome::not_applicable("hypercenter is trivial");
            }
            let m = a.nil_generated(x);
            if !a.is_maximal(&m) {
                return not_maximal();
            }
            if !hyper.is_subgroup_of(&m) {
                return Outcome::not_applicable("hypercenter not inside <nil(x)>");
            }
            let size = a.nil_element(x).len();
            check(x, size).with("size", size)
        }));
    }
    out
}

fn cor_2_14_1(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    hypercentral_sweep(ctx, id, |x, size| {
        let bad = arith::prime_power(size).is_some_and(|(_, k)| k == 3);
        Outcome::check(!bad, || size_witness(x, size))
    })
}

fn cor_2_14_2(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    hypercentral_sweep(ctx, id, |x, size| {
        let f = arith::factorize(size);
        let bad = f.len() == 2 && f.iter().all(|&(_, k)| k == 1);
        Outcome::check(!bad, || size_witness(x, size))
    })
}

fn cor_2_16(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    hypercentral_sweep(ctx, id, |x, size| Outcome::check(size >= 12, || size_witness(x, size)))
}

/// Universal reading: every element of order 3 is self-centralizing. The
/// existential reading (some such element) is reported in the detail of
/// otherwise not-applicable instances, never asserted.
fn prop_2_15(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.non_solvable(SHALLOW_ORDER) {
        let a = &b.analysis;
        let g = a.group();
        let threes: Vec<usize> = (0..g.order()).filter(|&y| g.element_order(y) == 3).collect();
        let self_centralizing = threes.iter().filter(|&&y| g.centralizer(y).order() == 3).count();
        let universal = !threes.is_empty() && self_centralizing == threes.len();
        let existential = self_centralizing > 0;
        out.extend(sweep_all(id, b, |x| {
            if !a.is_maximal(&a.nil_generated(x)) {
                return not_maximal();
            }
            let size = a.nil_element(x).len();
            if universal {
                return Outcome::check(size != 6, || size_witness(x, size)).with("size", size);
            }
            let base = Outcome::not_applicable("some element of order 3 is not self-centralizing");
            if existential {
                let reading = if size != 6 { "holds" } else { "violated" };
                base.with("existential_reading", reading).with("size", size)
            } else {
                base
            }
        }));
    }
    out
}

/// Spot check over the maximal nilpotent subgroups reached by extending
/// `<x>` for one `x` per conjugacy class; those that are maximal subgroups
/// are tested.
fn thm_2_5(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let mut out = Vec::new();
    for b in ctx.groups(SHALLOW_ORDER) {
        let a = &b.analysis;
        let g = a.group();
        let start = Instant::now();
        let mut found: Vec<(usize, Subgroup)> = Vec::new();
        for class in g.conjugacy_classes() {
            let x = class[0];
            let m = a.extend_to_maximal_nilpotent(&g.generated_subgroup(&[x])).expect("cyclic");
            if !m.is_whole() && a.is_maximal(&m) && !found.iter().any(|(_, f)| f.set() == m.set()) {
                found.push((x, m));
            }
        }
        let ms = start.elapsed().as_millis() as u64;
        if found.is_empty() {
            let outcome = Outcome::not_applicable("no nilpotent maximal subgroup found");
            out.push(SuiteVerdict::new(id, &b.name, order_param(b), outcome, ms));
            continue;
        }
        for (x, m) in found {
            let mut params = element_params(a, x);
            params.insert("maximal_order".into(), json!(m.order()));
            out.push(per_group(id, b, params, || {
                let s2 = a.sylow_subgroup_in(&m, 2);
                let class = a.nilpotency_class(&s2).expect("p-groups are nilpotent");
                let outcome = if class <= 2 {
                    Outcome::check(b.is_solvable(), || json!({"maximal": m.elements(), "sylow2_class": class}))
                } else {
                    Outcome::not_applicable("Sylow 2-subgroup of M has class above 2")
                };
                outcome.with("sylow2_order", s2.order()).with("sylow2_class", class)
            }));
        }
    }
    out
}

pub const REMARK_GROUP: &str = "PSL(2,17)";

fn remark_psl_2_17(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let Some(b) = ctx.corpus.iter().find(|b| b.name == REMARK_GROUP) else {
        return Vec::new();
    };
    let a = &b.analysis;
    let g = a.group();
    let Some(x) = (0..g.order()).find(|&i| g.element_order(i) == 8) else {
        return vec![per_group(id, b, order_param(b), || Outcome::not_applicable("no element of order 8"))];
    };
    vec![per_group(id, b, element_params(a, x), || {
        let nil = a.nil_element(x);
        let sylow = a
            .sylow_subgroups(2)
            .expect("2 divides the order")
            .iter()
            .find(|s| s.contains(x))
            .cloned()
            .expect("x lies in some Sylow 2-subgroup");
        let class = a.nilpotency_class(&sylow);
        let maximal = a.is_maximal(&sylow);
        let cap = ctx.opts.work_cap;
        let weight3 = a.commutator_condition(&nil, 3, cap).map(|c| c.holds).ok();
        let weight4 = a.commutator_condition(&nil, 4, cap).map(|c| c.holds).ok();
        let checks = [
            ("nil(x) is the Sylow 2-subgroup containing x", &nil == sylow.set()),
            ("|nil(x)| = 16", nil.len() == 16),
            ("class 3", class == Some(3)),
            ("maximal subgroup", maximal),
            ("some weight-3 commutator is nontrivial", weight3 == Some(false)),
            ("all weight-4 commutators vanish", weight4 == Some(true)),
        ];
        let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
        Outcome::check(failed.is_empty(), || json!({"x": x, "failed": failed, "nil": nil.to_vec()}))
            .with("size", nil.len())
            .with("class", class)
            .with("maximal", maximal)
    })]
}

/// Elements with `|nil(x)|` accepted by `hit` and `<nil(x)>` maximal.
fn search(b: &BuiltGroup, hit: impl Fn(usize) -> bool + Sync) -> (usize, Vec<usize>) {
    let a = &b.analysis;
    let sizes: Vec<usize> = a.nil_all().iter().map(|s| s.len()).collect();
    let candidates: Vec<usize> = (0..sizes.len()).filter(|&x| hit(sizes[x])).collect();
    let hits = candidates.par_iter().copied().filter(|&x| a.is_maximal(&a.nil_generated(x))).collect();
    (candidates.len(), hits)
}

fn conjecture_verdict(id: &str, b: &BuiltGroup, params: Params, hit: impl Fn(usize) -> bool + Sync) -> SuiteVerdict {
    per_group(id, b, params, || {
        let (size_matches, hits) = search(b, hit);
        let a = &b.analysis;
        let witness = || {
            json!(hits
                .iter()
                .map(|&x| json!({"x": x, "element": a.group().label(x), "size": a.nil_element(x).len()}))
                .collect::<Vec<_>>())
        };
        Outcome::check(hits.is_empty(), witness)
            .with("scanned", a.group().order())
            .with("size_matches", size_matches)
            .with("counterexamples", hits.len())
    })
}

/// Covers the whole non-solvable corpus regardless of `deep`.
fn conjecture(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    let size = ctx.opts.conjecture_size;
    ctx.corpus
        .iter()
        .filter(|b| !b.is_solvable())
        .map(|b| {
            let mut params = order_param(b);
            params.insert("size".into(), json!(size));
            conjecture_verdict(id, b, params, |s| s == size)
        })
        .collect()
}

fn conjecture_prime(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    ctx.corpus
        .iter()
        .filter(|b| !b.is_solvable())
        .map(|b| conjecture_verdict(id, b, order_param(b), arith::is_prime))
        .collect()
}

fn defs_weakly_nilpotent(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    ctx.groups(SHALLOW_ORDER)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                let whole = a.nil_group().is_full();
                let weak = a.is_weakly_nilpotent();
                Outcome::check(whole == weak, || json!({"nil_group_is_whole": whole, "weakly_nilpotent": weak}))
                    .with("weakly_nilpotent", weak)
            })
        })
        .collect()
}

fn defs_n_group(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    ctx.groups(SHALLOW_ORDER)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                let verdict = a.is_n_group();
                let first_open = (0..a.group().order()).find(|&x| !a.is_nil_subgroup(x));
                let consistent = verdict.err() == first_open;
                let nilpotent_ok = !b.is_nilpotent() || verdict.is_ok();
                Outcome::check(consistent && nilpotent_ok, || json!({"n_group_witness": verdict.err(), "first_non_subgroup": first_open}))
                    .with("n_group", verdict.is_ok())
            })
        })
        .collect()
}

fn property_groups<'a>(ctx: &'a Context) -> impl Iterator<Item = &'a BuiltGroup> + 'a {
    ctx.groups(PROPERTY_ORDER)
}

fn properties_symmetry(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    property_groups(ctx)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let all = b.analysis.nil_all();
                let n = all.len();
                let bad = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| all[x].contains(y) != all[y].contains(x));
                Outcome::check(bad.is_none(), || json!({"pair": bad}))
            })
        })
        .collect()
}

fn properties_conjugation(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    property_groups(ctx)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                let g = a.group();
                let all = a.nil_all();
                let n = g.order();
                let bad = (0..n)
                    .into_par_iter()
                    .flat_map_iter(|x| (0..n).map(move |c| (x, c)))
                    .find_first(|&(x, c)| all[g.conjugate(x, c)] != g.conjugate_set(&all[x], c));
                Outcome::check(bad.is_none(), || json!({"x_and_conjugator": bad}))
            })
        })
        .collect()
}

fn properties_order_divides(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    property_groups(ctx)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                let g = a.group();
                let bad = (0..g.order()).find(|&x| a.nil_element(x).len() % g.element_order(x) != 0);
                Outcome::check(bad.is_none(), || json!({"x": bad}))
            })
        })
        .collect()
}

fn properties_lagrange(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    property_groups(ctx)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                let a = &b.analysis;
                let g = a.group();
                let n = g.order();
                let bad = (0..n).find(|&x| {
                    [g.element_order(x), g.centralizer(x).order(), a.nil_generated(x).order()]
                        .iter()
                        .any(|&k| n % k != 0)
                });
                Outcome::check(bad.is_none(), || json!({"x": bad}))
            })
        })
        .collect()
}

fn properties_odd_order(ctx: &Context, id: &str) -> Vec<SuiteVerdict> {
    property_groups(ctx)
        .map(|b| {
            per_group(id, b, order_param(b), || {
                if b.group().order() % 2 == 0 {
                    Outcome::not_applicable("even order")
                } else {
                    Outcome::check(b.is_solvable(), || json!({"order": b.group().order()}))
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn selectors() {
        assert_eq!(select("all").unwrap().len(), registry().len());
        let ids: Vec<_> = select("thm-1.1").unwrap().iter().map(|s| s.id).collect();
        assert_eq!(ids, ["thm-1.1.1", "thm-1.1.2", "thm-1.1.3", "thm-1.1.4a", "thm-1.1.4b"]);
        assert_eq!(select("thm-1.2.1").unwrap().len(), 1);
        assert_eq!(select("conjecture").unwrap().len(), 2);
        assert!(select("thm-9").is_err());
        assert!(select("thm-1.").is_err());
        assert!(select("thm-1").unwrap().iter().all(|s| s.id.starts_with("thm-1.")));
        assert_eq!(select("thm-1").unwrap().len(), 8);
    }

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<_> = registry().iter().map(|s| s.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
    }
}
