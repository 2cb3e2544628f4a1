use std::collections::BTreeMap;

use gelmod::algebra::{series_expand, Matrix, RationalFunction, Scalar, ScalarPoly};
use gelmod::coxeter::{conjugacy_classes, descriptor, matrix_group, CoxeterDescriptor, Family, MatrixGroup, DEFAULT_CAP};
use gelmod::fakedeg::gelfand_dimension;
use gelmod::weylmodel::{
    dihedral_model_basis, invariant_operator_bases, invariant_operator_basis, invariant_operator_basis_group, model_via_theorem2,
    product_model_check, truncated_model, truncated_model_group, weyl_act_group, weyl_apply, Polynomial,
    WeylOperator,
};
use num::BigInt;
use proptest::prelude::*;

fn g(f: Family, n: usize) -> CoxeterDescriptor {
    descriptor(f, n).unwrap()
}

/// `<chi_{A_q}, chi_{A_p}>` from class sizes and `1/det(1 - tA)`.
fn hom_dimension(grp: &CoxeterDescriptor, p: usize, q: usize) -> usize {
    let up_to = p.max(q);
    let mut total = Scalar::zero();
    for c in conjugacy_classes(grp) {
        let f = RationalFunction::new(ScalarPoly::one(), c.det_poly()).unwrap();
        let s = series_expand(&f, up_to).unwrap();
        total += &(&Scalar::from_int(c.size as i64) * &(&s[q] * &s[p].conj()));
    }
    let d = &total / &Scalar::from_int(grp.order() as i64);
    d.as_integer().and_then(|x| usize::try_from(x).ok()).expect("non-integral inner product")
}

/// Same inner product over an explicit element list.
fn hom_dimension_group(group: &MatrixGroup, p: usize, q: usize) -> usize {
    let up_to = p.max(q);
    let mut total = Scalar::zero();
    for m in &group.elements {
        let f = RationalFunction::new(ScalarPoly::one(), m.det_one_minus_t()).unwrap();
        let s = series_expand(&f, up_to).unwrap();
        total += &(&s[q] * &s[p].conj());
    }
    let d = &total / &Scalar::from_int(group.order() as i64);
    d.as_integer().and_then(|x| usize::try_from(x).ok()).expect("non-integral inner product")
}

#[test]
fn euler_spans_degree_one_one() {
    for grp in [g(Family::A, 3), g(Family::B, 3), g(Family::D, 4), g(Family::Dihedral, 7), g(Family::H3, 3)] {
        let basis = invariant_operator_basis(&grp, 1, 1).unwrap();
        assert_eq!(basis.len(), 1, "{grp}");
        assert_eq!(hom_dimension(&grp, 1, 1), 1);
        let op = &basis[0];
        let euler = WeylOperator::euler(grp.rank());
        let (k, c) = euler.terms().iter().next().unwrap();
        let ratio = op.terms().get(k).unwrap() / c;
        assert_eq!(*op, euler.scale(&ratio), "{grp}");
    }
}

#[test]
fn small_bidegree_examples() {
    assert_eq!(invariant_operator_basis(&g(Family::A, 2), 0, 2).unwrap().len(), 1);
    for grp in [g(Family::A, 2), g(Family::B, 2), g(Family::Dihedral, 5), g(Family::H3, 3)] {
        assert!(invariant_operator_basis(&grp, 0, 1).unwrap().is_empty(), "{grp}");
    }
}

/// Bidegrees `(p, q)` checked per group; the dense icosahedral and A4
/// realizations are held to smaller bounds to keep the run short.
fn bidegree_limit(grp: &CoxeterDescriptor) -> usize {
    match (grp.family(), grp.param()) {
        (Family::H3, _) => 4,
        (Family::A, 4) => 5,
        _ => 6,
    }
}

#[test]
fn invariant_counts_match_characters() {
    let mut groups: Vec<_> = (1..=4).map(|n| g(Family::A, n)).collect();
    groups.extend([g(Family::B, 2), g(Family::B, 3), g(Family::D, 4), g(Family::H3, 3)]);
    groups.extend((3..=12).chain([30]).map(|n| g(Family::Dihedral, n)));
    for grp in groups {
        assert!(grp.order() <= 200);
        let limit = bidegree_limit(&grp);
        let bases = invariant_operator_bases(&grp, limit).unwrap();
        for ((p, q), basis) in bases {
            assert_eq!(basis.len(), hom_dimension(&grp, p, q), "{grp} ({p},{q})");
            for op in &basis {
                assert!(op.degree() == Some(p as i64 - q as i64));
            }
        }
    }
}

#[test]
fn averaged_operators_are_invariant() {
    for grp in [g(Family::A, 3), g(Family::B, 2), g(Family::Dihedral, 6), g(Family::H3, 3)] {
        let group = matrix_group(&grp, DEFAULT_CAP).unwrap();
        for (p, q) in [(1, 2), (0, 3), (2, 2)] {
            for op in invariant_operator_basis(&grp, p, q).unwrap() {
                for s in &group.generators {
                    assert_eq!(weyl_act_group(s, &op).unwrap(), op, "{grp} ({p},{q})");
                }
            }
        }
    }
}

fn kernel_groups() -> Vec<CoxeterDescriptor> {
    let mut out = vec![g(Family::A, 2), g(Family::A, 3), g(Family::B, 2)];
    out.extend((3..=6).map(|n| g(Family::Dihedral, n)));
    out
}

#[test]
fn model_examples() {
    let a2 = g(Family::A, 2);
    assert_eq!(model_via_theorem2(&a2).unwrap(), BTreeMap::from([(0, 1), (1, 2), (3, 1)]));
    assert_eq!(
        model_via_theorem2(&g(Family::H3, 3)).unwrap(),
        BTreeMap::from([(0, 1), (1, 3), (2, 5), (3, 7), (4, 4), (5, 5), (6, 3), (8, 3), (15, 1)])
    );
    assert_eq!(
        model_via_theorem2(&g(Family::Dihedral, 4)).unwrap(),
        BTreeMap::from([(0, 1), (1, 2), (2, 2), (4, 1)])
    );
    assert_eq!(
        truncated_model(&g(Family::B, 2), 4, 4).unwrap().basis.dims(),
        BTreeMap::from([(0, 1), (1, 2), (2, 2), (4, 1)])
    );
    assert_eq!(
        truncated_model(&g(Family::Dihedral, 5), 5, 5).unwrap().basis.dims(),
        BTreeMap::from([(0, 1), (1, 2), (2, 2), (5, 1)])
    );
}

#[test]
fn kernel_matches_first_occurrences() {
    for grp in kernel_groups() {
        let expected = model_via_theorem2(&grp).unwrap();
        let bound = *expected.keys().max().unwrap();
        let model = truncated_model(&grp, bound, bound).unwrap();
        assert_eq!(model.basis.dims(), expected, "{grp}");
        let total: u64 = expected.values().sum();
        assert_eq!(BigInt::from(total), gelfand_dimension(&grp).unwrap());
        for (d, p) in model.basis.iter() {
            assert_eq!(p.homogeneous_degree(), Some(d as u32));
            for ops in model.operators.values() {
                for op in ops {
                    assert!(weyl_apply(op, p).unwrap().is_zero(), "{grp}: {op} on {p}");
                }
            }
        }
        assert!(model.budget().iter().all(|&(p, q, _)| p < q && q <= bound));
    }
}

#[test]
fn dihedral_explicit_basis() {
    for n in 3..=10usize {
        let model = dihedral_model_basis(n).unwrap();
        assert_eq!(model.basis.total() as usize, 2 * (n / 2) + 2);
        assert!(model.annihilated, "I2({n})");
        assert_eq!(BigInt::from(model.basis.total()), gelfand_dimension(&g(Family::Dihedral, n)).unwrap());
        if n <= 6 {
            let kernel = truncated_model(&g(Family::Dihedral, n), n, n).unwrap();
            assert!(kernel.basis.same_span(&model.basis), "I2({n})");
        }
    }
    let five = dihedral_model_basis(5).unwrap();
    let names = ["z", "zb"];
    let shown: Vec<String> = five.basis.iter().map(|(_, p)| p.display_with(&names)).collect();
    assert_eq!(shown, ["1", "z", "zb", "z^2", "zb^2", "z^5 - zb^5"]);
    assert_eq!(dihedral_model_basis(3).unwrap().basis.total(), 4);
    assert!(dihedral_model_basis(2).is_err());
}

#[test]
fn products_convolve() {
    let a1 = g(Family::A, 1);
    let a2 = g(Family::A, 2);
    let r = product_model_check(&a1, &a1, DEFAULT_CAP).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.expected, BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    let r = product_model_check(&a1, &a2, DEFAULT_CAP).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.expected, BTreeMap::from([(0, 1), (1, 3), (2, 2), (3, 1), (4, 1)]));

    let group = matrix_group(&a2, DEFAULT_CAP).unwrap();
    let with_trivial = MatrixGroup::trivial().direct_product(&group, DEFAULT_CAP).unwrap();
    assert_eq!(truncated_model_group(&with_trivial, 3, 3).unwrap().basis.dims(), model_via_theorem2(&a2).unwrap());
}

#[test]
fn product_invariant_counts() {
    let a1 = matrix_group(&g(Family::A, 1), DEFAULT_CAP).unwrap();
    let a2 = matrix_group(&g(Family::A, 2), DEFAULT_CAP).unwrap();
    let group = a1.direct_product(&a2, DEFAULT_CAP).unwrap();
    for p in 0..=3 {
        for q in 0..=3 {
            let basis = invariant_operator_basis_group(&group, p, q).unwrap();
            assert_eq!(basis.len(), hom_dimension_group(&group, p, q), "({p},{q})");
        }
    }
}

fn random_operator(n: usize, seed: &[(u8, u8, i8)]) -> WeylOperator {
    let mut op = WeylOperator::zero(n);
    for &(a, b, c) in seed {
        let x: Vec<u32> = (0..n).map(|i| ((a as u32) >> (2 * i)) & 3).collect();
        let d: Vec<u32> = (0..n).map(|i| ((b as u32) >> (2 * i)) & 3).collect();
        op.add_term(x, d, Scalar::from_int(c as i64));
    }
    op
}

fn element(grp: &CoxeterDescriptor, k: usize) -> Matrix {
    let elems = matrix_group(grp, DEFAULT_CAP).unwrap().elements;
    elems[k % elems.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 50, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn conjugation_preserves_degree(
        fam in 0usize..3,
        k in 0usize..1000,
        seed in prop::collection::vec((any::<u8>(), any::<u8>(), -3i8..=3), 1..4),
    ) {
        let grp = [g(Family::A, 2), g(Family::B, 3), g(Family::Dihedral, 5)][fam].clone();
        let op = random_operator(grp.rank(), &seed);
        let m = element(&grp, k);
        let moved = weyl_act_group(&m, &op).unwrap();
        prop_assert_eq!(moved.degree(), op.degree());
        let back = weyl_act_group(&m.inverse().unwrap(), &moved).unwrap();
        prop_assert_eq!(back, op);
    }

    #[test]
    fn application_respects_filtration(
        seed in prop::collection::vec((any::<u8>(), any::<u8>(), -3i8..=3), 1..4),
        exps in prop::collection::vec((0u32..4, 0u32..4, 0u32..4), 1..4),
    ) {
        let op = random_operator(3, &seed);
        let mut p = Polynomial::zero(3);
        for (a, b, c) in exps {
            p.add_term(vec![a, b, c], Scalar::one());
        }
        let out = weyl_apply(&op, &p).unwrap();
        if let (Some(d), Some(m), Some(top)) = (op.degree(), p.degree(), out.degree()) {
            prop_assert!(top as i64 <= m as i64 + d);
        }
    }
}
