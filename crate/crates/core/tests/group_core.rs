mod common;

use common::*;
use nilpotentizer::{catalog, BuildOptions, Group, GroupDescription};

fn el(g: &Group, s: &str) -> usize {
    g.resolve_element(s).unwrap()
}

#[test]
fn s4_order_matches_closure_oracle() {
    let g = build(&GroupDescription::permutation(4, ["(1 2 3 4)", "(1 2)"]));
    let oracle = close(&[parse("(1 2 3 4)", 4), parse("(1 2)", 4)], 4);
    assert_eq!(oracle.len(), 24);
    assert_eq!(g.order(), oracle.len());
}

#[test]
fn psl2_17_order_matches_closure_oracle() {
    let d = catalog::psl2(17).unwrap();
    let GroupDescription::Permutation { degree, generators } = &d else { unreachable!() };
    assert_eq!(*degree, 18);
    let gens: Vec<P> = generators.iter().map(|s| parse(s, 18)).collect();
    let oracle = close(&gens, 18);
    assert_eq!(oracle.len(), 17 * 16 * 18 / 2);
    assert_eq!(build(&d).order(), oracle.len());
}

#[test]
fn psl2_order_formula_for_all_shipped_fields() {
    for q in [5usize, 7, 11, 13, 17] {
        assert_eq!(build(&catalog::psl2(q).unwrap()).order(), q * (q * q - 1) / 2, "q = {q}");
    }
}

#[test]
fn table_matches_permutation_products() {
    let g = build(&catalog::symmetric(4));
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(raw(&g, g.mul(a, b)), compose(&raw(&g, a), &raw(&g, b)));
        }
    }
}

#[test]
fn commutator_in_s3_matches_direct_evaluation() {
    let g = build(&catalog::symmetric(3));
    let (a, b) = (el(&g, "(1 2)"), el(&g, "(1 2 3)"));
    let oracle = left_normed(&[parse("(1 2)", 3), parse("(1 2 3)", 3)]);
    // a^-1 b^-1 a b, applied left to right
    assert_eq!(oracle, parse("(1 3 2)", 3));
    assert_eq!(raw(&g, g.commutator(a, b)), oracle);
    assert_eq!(g.label(g.commutator(a, b)), "(1 3 2)");
}

#[test]
fn left_normed_agrees_with_recursion_oracle() {
    let g = build(&catalog::symmetric(4));
    for a in (0..24).step_by(5) {
        for b in (0..24).step_by(3) {
            for c in (0..24).step_by(7) {
                let word = [a, b, c];
                let expect = left_normed(&word.map(|i| raw(&g, i)));
                assert_eq!(raw(&g, g.left_normed_commutator(&word).unwrap()), expect);
            }
            assert_eq!(g.left_normed_commutator(&[a, b]).unwrap(), g.commutator(a, b));
        }
    }
}

#[test]
fn group_axioms_hold_exhaustively_up_to_256() {
    let opts = BuildOptions::default();
    for entry in catalog::builtin_corpus().into_iter().filter(|e| e.order <= 256) {
        let built = entry.build(&opts).unwrap();
        let g = built.group();
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            assert_eq!(n % g.element_order(a), 0, "Lagrange for element order");
            let mut row: Vec<u32> = g.row(a).to_vec();
            row.sort_unstable();
            assert!(row.iter().enumerate().all(|(i, &v)| i as u32 == v), "{} row {a}", entry.name);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                assert_eq!(g.commutator(a, b) == 0, ab == g.mul(b, a));
                for c in 0..n {
                    assert_eq!(g.mul(ab, c), g.mul(a, g.mul(b, c)), "{}", entry.name);
                }
            }
        }
    }
}

#[test]
fn generated_subgroup_examples() {
    let g = build(&catalog::symmetric(4));
    assert!(g.generated_subgroup(&[]).is_trivial());
    let h = g.generated_subgroup(&[el(&g, "(1 2 3)"), el(&g, "(1 2)")]);
    assert_eq!(h.order(), close(&[parse("(1 2 3)", 4), parse("(1 2)", 4)], 4).len());
    assert_eq!(h.order(), 6);
    assert_eq!(24 % h.order(), 0);
}

#[test]
fn centralizer_examples() {
    let a5 = builtin("A5");
    let g = a5.group();
    let x = el(g, "(1 2 3 4 5)");
    let oracle = centralizer(&close(&[parse("(1 2 3)", 5), parse("(1 2 3 4 5)", 5)], 5), &raw(g, x));
    assert_eq!(oracle.len(), 5);
    assert_eq!(g.centralizer(x).set().to_vec(), to_indices(g, &oracle).into_iter().collect::<Vec<_>>());
    assert_eq!(g.centralizer(x).set(), g.generated_subgroup(&[x]).set());

    let psl7 = builtin("PSL(2,7)");
    let g = psl7.group();
    let threes: Vec<usize> = (0..g.order()).filter(|&a| g.element_order(a) == 3).collect();
    assert!(!threes.is_empty());
    for &x in &threes {
        let brute = (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
        assert_eq!(brute, 3);
        assert_eq!(g.centralizer(x).order(), 3);
    }
}

#[test]
fn center_examples() {
    let c12 = builtin("C12");
    assert!(c12.group().center().is_whole());
    assert!(builtin("A5").group().center().is_trivial());
    let sl = builtin("SL(2,5)");
    let g = sl.group();
    let brute = (0..g.order()).filter(|&z| (0..g.order()).all(|y| g.commutes(z, y))).count();
    assert_eq!(brute, 2);
    assert_eq!(g.center().order(), 2);
}

#[test]
fn centralizer_of_set_is_intersection() {
    let g = build(&catalog::symmetric(4));
    let s = g.set_of([el(&g, "(1 2)"), el(&g, "(3 4)")]);
    let c = g.centralizer_of_set(&s);
    let expect = g.centralizer(el(&g, "(1 2)")).set().intersection(g.centralizer(el(&g, "(3 4)")).set());
    assert_eq!(c.set(), &expect);
    assert_eq!(c.order(), 4);
}

#[test]
fn quotient_examples() {
    let g = build(&catalog::symmetric(4));
    let v4 = g.generated_subgroup(&[el(&g, "(1 2)(3 4)"), el(&g, "(1 3)(2 4)")]);
    let q = g.quotient(&v4).unwrap();
    assert_eq!(q.group.order(), 6);
    assert!(!q.group.is_abelian());
    for a in 0..24 {
        for b in 0..24 {
            assert_eq!(q.project(g.mul(a, b)), q.group.mul(q.project(a), q.project(b)));
        }
    }
    // coset representatives are the smallest members, ascending
    assert_eq!(q.representatives[0], 0);
    assert!(q.representatives.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn maximality_examples() {
    let g = build(&catalog::symmetric(4));
    let a4 = g.generated_subgroup(&[el(&g, "(1 2 3)"), el(&g, "(1 2)(3 4)")]);
    assert!(g.is_maximal_subgroup(&a4).unwrap());
    let v4 = g.generated_subgroup(&[el(&g, "(1 2)(3 4)"), el(&g, "(1 3)(2 4)")]);
    assert!(!g.is_maximal_subgroup(&v4).unwrap());
}

#[test]
fn direct_product_examples() {
    let opts = BuildOptions::default();
    let q8 = build(&catalog::dicyclic(2));
    let s3 = build(&catalog::symmetric(3));
    let p = q8.direct_product(&s3, &opts).unwrap();
    assert_eq!(p.group.order(), 48);
    assert_eq!(p.left.order(), 8);
    assert_eq!(p.right.order(), 6);
    // embeddings are homomorphisms
    for a in 0..8 {
        for b in 0..8 {
            assert_eq!(p.left_embedding[q8.mul(a, b)], p.group.mul(p.left_embedding[a], p.left_embedding[b]));
        }
    }
    let c2 = build(&catalog::cyclic(2));
    let s3c2 = s3.direct_product(&c2, &opts).unwrap();
    assert_eq!(s3c2.group.order(), 12);
}

#[test]
fn cayley_file_round_trip_builds_same_table() {
    let g = build(&catalog::symmetric(3));
    let n = g.order();
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.mul(a, b)).collect()).collect();
    let d = GroupDescription::Cayley { order: n, identity: 0, table };
    let text = serde_json::to_string(&d).unwrap();
    assert!(text.contains("\"type\":\"cayley\""));
    let back = build(&GroupDescription::from_json(&text).unwrap());
    assert_eq!(back.fingerprint(), g.fingerprint());
}

#[test]
fn bfs_numbering_is_deterministic() {
    let a = build(&catalog::psl2(7).unwrap());
    let b = build(&catalog::psl2(7).unwrap());
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert_eq!(a.labels(), b.labels());
}
