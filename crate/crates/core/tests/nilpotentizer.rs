mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use nilpotentizer::{catalog, Analysis, GroupDescription, Perm, Status, DEFAULT_WORK_CAP};
use proptest::prelude::*;

fn oracle_nil(a: &Analysis, x: usize) -> BTreeSet<usize> {
    let g = a.group();
    let elems: HashSet<P> = (0..g.order()).map(|i| raw(g, i)).collect();
    to_indices(g, &nil(&elems, &raw(g, x)))
}

#[test]
fn s4_double_transposition() {
    let a = Analysis::new(build(&catalog::symmetric(4)));
    let g = a.group();
    let x = g.resolve_element("(1 2)(3 4)").unwrap();
    let n = a.nil_element(x);
    assert_eq!(n.len(), 16);
    assert!(!g.is_closed(&n));
    assert_eq!(n.iter().collect::<BTreeSet<_>>(), oracle_nil(&a, x));
    let (equal, pieces) = a.nil_as_union_of_maximal_nilpotents(x);
    assert!(equal);
    assert_eq!(pieces.len(), 3);
    let sylows = a.sylow_subgroups(2).unwrap();
    for p in &pieces {
        assert!(sylows.iter().any(|s| s.set() == p.set()));
    }
}

#[test]
fn nil_matches_oracle_on_small_groups() {
    for name in ["S3", "S4", "A4", "D10", "D12", "SL(2,3)", "A5"] {
        let b = builtin(name);
        let a = &b.analysis;
        for x in 0..a.group().order() {
            assert_eq!(a.nil_element(x).iter().collect::<BTreeSet<_>>(), oracle_nil(a, x), "{name} x={x}");
        }
    }
}

#[test]
fn nil_all_agrees_with_nil_element() {
    let b = builtin("PSL(2,7)");
    let fresh = Analysis::new(build(&catalog::psl2(7).unwrap()));
    let all = b.analysis.nil_all();
    for (x, set) in all.iter().enumerate() {
        assert_eq!(set, &fresh.nil_element(x));
    }
}

#[test]
fn a5_five_cycle() {
    let b = builtin("A5");
    let a = &b.analysis;
    let x = a.group().resolve_element("(1 2 3 4 5)").unwrap();
    let p = a.nil_profile(x).unwrap();
    assert_eq!(p.size, 5);
    assert!(p.is_subgroup);
    assert!(p.equals_centralizer);
    assert!(!p.generated_is_maximal);
    let (equal, pieces) = a.nil_as_union_of_maximal_nilpotents(x);
    assert!(equal);
    assert_eq!(pieces.len(), 1);
    assert_eq!(pieces[0].set(), a.group().generated_subgroup(&[x]).set());
}

#[test]
fn nil_of_group() {
    assert_eq!(builtin("S3").analysis.nil_group().len(), 1);
    assert_eq!(builtin("S4").analysis.nil_group().len(), 1);
    assert!(builtin("D8").analysis.nil_group().is_full());
    let sl = builtin("SL(2,5)");
    assert_eq!(sl.analysis.nil_group().len(), 2);
}

#[test]
fn n_groups() {
    let s4 = builtin("S4");
    let w = s4.analysis.is_n_group().unwrap_err();
    assert!(!s4.group().is_closed(&s4.analysis.nil_element(w)));
    assert_eq!(s4.analysis.nil_element(w).len(), 16);
    assert!(builtin("S3").analysis.is_n_group().is_ok());
    assert!(builtin("Q8").analysis.is_n_group().is_ok());
}

#[test]
fn psl2_17_order_8_element() {
    let b = builtin("PSL(2,17)");
    let a = &b.analysis;
    let g = a.group();
    let x = (0..g.order()).find(|&i| g.element_order(i) == 8).unwrap();
    let n = a.nil_element(x);
    assert_eq!(n.len(), 16);
    let s = g.subgroup_from_set(&n).unwrap();
    assert_eq!(a.nilpotency_class(&s), Some(3));
    assert!(g.is_maximal_subgroup(&s).unwrap());
    assert!(a.sylow_subgroups(2).unwrap().iter().any(|p| p.set() == &n));
}

#[test]
fn commutator_condition_matches_brute_force() {
    for name in ["S3", "S4", "D8", "Q8", "A4", "D12"] {
        let b = builtin(name);
        let a = &b.analysis;
        let g = a.group();
        for x in 0..g.order() {
            let s = a.nil_element(x);
            let members = s.to_vec();
            for n in 2..=4 {
                if members.len().pow(n as u32) > 400_000 {
                    continue;
                }
                let c = a.commutator_condition(&s, n, DEFAULT_WORK_CAP).unwrap();
                assert_eq!(c.holds, all_words_vanish(&members, n, g), "{name} x={x} n={n}");
                if let Some(w) = c.witness {
                    assert_eq!(w.len(), n);
                    assert_ne!(g.left_normed_commutator(&w).unwrap(), 0);
                }
            }
        }
    }
}

#[test]
fn commutator_condition_reports_infeasible() {
    let b = builtin("A5");
    let a = &b.analysis;
    let whole = a.group().full_set();
    assert!(a.commutator_condition(&whole, 4, 1000).is_err());
    assert!(a.commutator_condition(&whole, 1, DEFAULT_WORK_CAP).is_err());
}

#[test]
fn commutator_law_examples() {
    let s3 = builtin("S3");
    let a = &s3.analysis;
    let x = a.group().resolve_element("(1 2 3)").unwrap();
    let o = a.check_nil_commutator_law(x, 2, DEFAULT_WORK_CAP);
    assert_eq!(o.status, Status::Pass);
    let t = a.group().resolve_element("(1 2)").unwrap();
    assert_eq!(a.check_nil_commutator_law(t, 2, DEFAULT_WORK_CAP).status, Status::Pass);

    let s4 = builtin("S4");
    let x = s4.group().resolve_element("(1 2)(3 4)").unwrap();
    assert_eq!(s4.analysis.check_nil_commutator_law(x, 3, DEFAULT_WORK_CAP).status, Status::NotApplicable);
}

#[test]
fn direct_factor_law_on_products() {
    for name in ["S3xC2", "Q8xS3", "A5xC2"] {
        let b = builtin(name);
        let (h, k) = b.factors.clone().unwrap();
        for x in h.elements() {
            let o = b.analysis.check_direct_factor_law(&h, &k, x);
            assert_eq!(o.status, Status::Pass, "{name} x={x}");
        }
        let o = b.analysis.check_direct_factor_law(&k, &h, k.elements()[0]);
        assert_eq!(o.status, Status::Pass);
    }
    // a nilpotent factor makes every one of its elements nilpotentize everything
    let b = builtin("Q8xS3");
    let (h, k) = b.factors.clone().unwrap();
    assert_eq!(h.order(), 8);
    for x in h.elements() {
        let o = b.analysis.check_direct_factor_law(&h, &k, x);
        assert_eq!(o.detail["nil_is_whole"], serde_json::json!(true));
        assert!(b.analysis.nil_element(x).is_full());
    }
}

#[test]
fn quotient_laws_on_s4_and_sl25() {
    let s4 = builtin("S4");
    let a = &s4.analysis;
    let f = a.fitting_subgroup();
    let qa = a.quotient_analysis(&f).unwrap();
    for x in 0..24 {
        assert_eq!(a.check_quotient_containment(&qa, x).status, Status::Pass);
    }
    let sl = builtin("SL(2,5)");
    let a = &sl.analysis;
    let z = a.hypercenter();
    let qa = a.quotient_analysis(&z).unwrap();
    assert_eq!(qa.analysis.group().order(), 60);
    for x in 0..a.group().order() {
        assert_eq!(a.check_quotient_containment(&qa, x).status, Status::Pass);
        assert_eq!(a.check_quotient_equality(&qa, &z, x).status, Status::Pass);
    }
}

#[test]
fn element_order_divides_nil_size_across_corpus() {
    for built in catalog::build_all(&catalog::builtin_corpus(), &Default::default()).unwrap() {
        let a = &built.analysis;
        let g = a.group();
        if g.order() > 120 {
            continue;
        }
        for x in 0..g.order() {
            let n = a.nil_element(x);
            assert_eq!(n.len() % g.element_order(x), 0, "{} x={x}", built.name);
            assert!(g.centralizer(x).set().is_subset(&n));
        }
    }
}

fn perm_strategy(degree: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((0..degree as u32).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pair_test_matches_subgroup_nilpotency(a in perm_strategy(6), b in perm_strategy(6)) {
        let gens: Vec<String> = [a, b].into_iter().map(|p| Perm::from_images(p).unwrap().to_string()).collect();
        let g = build(&GroupDescription::permutation(6, gens.iter().map(String::as_str)));
        let an = Analysis::new(g);
        let g = an.group();
        for x in (0..g.order()).step_by(1 + g.order() / 12) {
            for y in (0..g.order()).step_by(1 + g.order() / 20) {
                let sub: HashSet<P> = close(&[raw(g, x), raw(g, y)], 6);
                prop_assert_eq!(an.pair_is_nilpotent(x, y), is_nilpotent(&sub));
                prop_assert_eq!(an.pair_is_nilpotent(x, y), an.pair_is_nilpotent(y, x));
            }
        }
    }

    #[test]
    fn nil_is_conjugation_equivariant(name in prop::sample::select(vec!["S4", "D12", "SL(2,3)", "A4", "Q16"]), x in 0usize..1000, c in 0usize..1000) {
        let b = builtin(name);
        let a = &b.analysis;
        let g = a.group();
        let x = x % g.order();
        let c = c % g.order();
        let lhs = a.nil_element(g.conjugate(x, c));
        let rhs = g.conjugate_set(&a.nil_element(x), c);
        prop_assert_eq!(lhs, rhs);
    }
}
