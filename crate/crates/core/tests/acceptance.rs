//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Runs without the libtest harness so the lines always print.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gelmod::algebra::{series_expand, IntPolynomial, RationalFunction, Scalar, ScalarPoly};
use gelmod::characters::{character, dimension, labels, orthogonality_check, IrreducibleLabel, SplitTag};
use gelmod::coxeter::{conjugacy_classes, descriptor, matrix_group, CoxeterDescriptor, Family, DEFAULT_CAP};
use gelmod::fakedeg::{
    fake_degree, first_occurrence, gelfand_dimension, gelfand_verdict, gelfand_verdict_classification,
    gelfand_verdict_computed, MolienSum,
};
use gelmod::weylmodel::{dihedral_model_basis, model_via_theorem2, product_model_check, truncated_model, weyl_apply};
use num::{BigInt, ToPrimitive};

fn g(f: Family, n: usize) -> CoxeterDescriptor {
    descriptor(f, n).unwrap()
}

fn poly(exps: &[usize]) -> IntPolynomial {
    exps.iter().map(|&k| IntPolynomial::t_pow(k)).sum()
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn h3_table() -> BTreeMap<&'static str, IntPolynomial> {
    BTreeMap::from([
        ("U1", poly(&[0])),
        ("U1'", poly(&[15])),
        ("V4", poly(&[4, 6, 8, 12])),
        ("V4'", poly(&[3, 7, 9, 11])),
        ("W5", poly(&[2, 4, 6, 8, 10])),
        ("W5'", poly(&[5, 7, 9, 11, 13])),
        ("Y3", poly(&[6, 10, 14])),
        ("Y3'", poly(&[1, 5, 9])),
        ("Z3", poly(&[8, 10, 12])),
        ("Z3'", poly(&[3, 5, 7])),
    ])
}

/// `|G|^-1 prod (1 - t^{d_i}) sum_g chi(g) / det(1 - t g)` summed element by
/// element over the enumerated group.
fn elementwise_molien(grp: &CoxeterDescriptor, label: &IrreducibleLabel, elems: &[(ScalarPoly, Vec<Scalar>)]) -> IntPolynomial {
    let top = grp.reflection_count();
    let classes = conjugacy_classes(grp);
    let mut sum = vec![Scalar::zero(); top + 1];
    for (det, series) in elems {
        let class = classes.iter().find(|c| c.det_poly() == *det).expect("element class");
        let chi = character(grp, label, &class.label).unwrap();
        for (s, c) in sum.iter_mut().zip(series) {
            *s += &(&chi * c);
        }
    }
    let num = grp.degrees().iter().fold(ScalarPoly::one(), |acc, &d| &acc * &ScalarPoly::one_minus_t_pow(d));
    let f = ScalarPoly::new(sum).mul_truncated(&num, top);
    let order = Scalar::from_int(grp.order() as i64);
    IntPolynomial::new((0..=top).map(|k| (&f.coeff(k) / &order).as_integer().expect("integral")).collect())
}

fn criterion_1() -> Outcome {
    let grp = g(Family::H3, 3);
    let elems = matrix_group(&grp, DEFAULT_CAP).unwrap().elements;
    ensure(elems.len() == 120, || format!("{} elements", elems.len()))?;
    let top = grp.reflection_count();
    let series: Vec<(ScalarPoly, Vec<Scalar>)> = elems
        .iter()
        .map(|m| {
            let det = m.det_one_minus_t();
            let s = series_expand(&RationalFunction::new(ScalarPoly::one(), det.clone()).unwrap(), top).unwrap();
            (det, s)
        })
        .collect();
    let table = h3_table();
    let mut rows = 0;
    for l in labels(&grp) {
        let got = elementwise_molien(&grp, &l, &series);
        let name = l.to_string();
        let expected = table.get(name.as_str()).ok_or_else(|| format!("unexpected label {name}"))?;
        ensure(got == *expected, || format!("{name}: got {got}, table {expected}"))?;
        rows += 1;
    }
    ensure(rows == 10, || format!("{rows} rows"))?;
    Ok("all 10 rows reproduced from the 120 elements".into())
}

fn criterion_2() -> Outcome {
    let mut groups: Vec<_> = (1..=5).map(|n| g(Family::A, n)).collect();
    groups.extend((2..=4).map(|n| g(Family::B, n)));
    groups.extend((3..=12).map(|n| g(Family::Dihedral, n)));
    let mut compared = 0;
    for grp in &groups {
        let molien = MolienSum::new(grp).unwrap();
        for l in labels(grp) {
            let (a, b) = (fake_degree(grp, &l).unwrap(), molien.fake_degree(&l).unwrap());
            ensure(a == b, || format!("{grp} {l}: closed {a}, sum {b}"))?;
            compared += 1;
        }
    }
    for n in [4, 5] {
        let grp = g(Family::D, n);
        let molien = MolienSum::new(&grp).unwrap();
        for l in labels(&grp) {
            let IrreducibleLabel::D { pair, split } = &l else { unreachable!() };
            let closed = fake_degree(&grp, &l).unwrap();
            let expected = match split {
                Some(SplitTag::Prime) => closed.scale(&BigInt::from(2)),
                Some(SplitTag::DoublePrime) => continue,
                None => closed,
            };
            let sum = molien.fake_degree(&l).unwrap();
            ensure(sum == expected, || format!("D{n} {pair}: expected {expected}, restricted character {sum}"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} labels agree"))
}

fn max_first_multiplicity(grp: &CoxeterDescriptor) -> BigInt {
    labels(grp).iter().map(|l| first_occurrence(&fake_degree(grp, l).unwrap()).unwrap().1).max().unwrap()
}

fn criterion_3() -> Outcome {
    let mut one: Vec<_> = (1..=6).map(|n| g(Family::A, n)).collect();
    one.extend((2..=5).map(|n| g(Family::B, n)));
    one.extend([g(Family::D, 5), g(Family::D, 7)]);
    for grp in &one {
        let m = max_first_multiplicity(grp);
        ensure(m == BigInt::from(1), || format!("{grp}: multiplicity {m}"))?;
    }
    for n in [4, 6, 8] {
        let grp = g(Family::D, n);
        let has_two = labels(&grp)
            .iter()
            .any(|l| first_occurrence(&fake_degree(&grp, l).unwrap()).unwrap().1 == BigInt::from(2));
        ensure(has_two, || format!("D{n}: no label of first multiplicity 2"))?;
    }
    Ok(format!("{} groups multiplicity-free; D4, D6, D8 each have multiplicity 2", one.len()))
}

fn all_groups_1_to_3() -> Vec<CoxeterDescriptor> {
    let mut out = vec![g(Family::H3, 3)];
    out.extend((1..=6).map(|n| g(Family::A, n)));
    out.extend((2..=5).map(|n| g(Family::B, n)));
    out.extend((3..=12).map(|n| g(Family::Dihedral, n)));
    out.extend((4..=8).map(|n| g(Family::D, n)));
    out
}

fn int_product(factors: &[Vec<i64>]) -> Vec<i64> {
    factors.iter().fold(vec![1], |acc, f| {
        let mut out = vec![0; acc.len() + f.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    })
}

fn criterion_4() -> Outcome {
    let groups = all_groups_1_to_3();
    for grp in &groups {
        let rhs = int_product(&grp.degrees().iter().map(|&d| vec![1i64; d]).collect::<Vec<_>>());
        let mut lhs = vec![0i64; rhs.len()];
        for l in labels(grp) {
            let d = dimension(grp, &l).unwrap().to_i64().unwrap();
            for (k, c) in fake_degree(grp, &l).unwrap().coeffs().iter().enumerate() {
                ensure(k < lhs.len(), || format!("{grp} {l}: degree {k} too large"))?;
                lhs[k] += d * c.to_i64().unwrap();
            }
        }
        ensure(lhs == rhs, || format!("{grp}: {lhs:?} != {rhs:?}"))?;
    }
    Ok(format!("{} groups", groups.len()))
}

fn criterion_5() -> Outcome {
    let mut groups = vec![g(Family::A, 2), g(Family::A, 3), g(Family::B, 2)];
    groups.extend((3..=6).map(|n| g(Family::Dihedral, n)));
    let mut shown = Vec::new();
    for grp in &groups {
        let expected = model_via_theorem2(grp).unwrap();
        let bound = *expected.keys().max().unwrap();
        let model = truncated_model(grp, bound, bound).unwrap();
        let got = model.basis.dims();
        ensure(got == expected, || format!("{grp}: kernel {got:?}, first occurrences {expected:?}"))?;
        shown.push(format!("{grp} {}", got.values().sum::<u64>()));
    }
    Ok(shown.join(", "))
}

fn criterion_6() -> Outcome {
    for n in 3..=10usize {
        let model = dihedral_model_basis(n).unwrap();
        let dim = model.basis.total() as usize;
        ensure(dim == 2 * (n / 2) + 2, || format!("I2({n}): dimension {dim}"))?;
        for op in &model.operators {
            for (_, p) in model.basis.iter() {
                ensure(weyl_apply(op, p).unwrap().is_zero(), || format!("I2({n}): {op} does not kill {p}"))?;
            }
        }
        if n <= 6 {
            let kernel = truncated_model(&g(Family::Dihedral, n), n, n).unwrap();
            ensure(kernel.basis.same_span(&model.basis), || format!("I2({n}): basis differs from kernel"))?;
        }
    }
    Ok("n = 3..10 annihilated, n <= 6 equal to the kernel".into())
}

fn criterion_7() -> Outcome {
    for grp in all_groups_1_to_3() {
        let computed = gelfand_verdict_computed(&grp).unwrap();
        let classified = gelfand_verdict_classification(&computed.group);
        ensure(computed.is_gelfand == classified.is_gelfand, || format!("{grp}: computed and classified disagree"))?;
    }
    let cases = [
        ("D4", false),
        ("D6", false),
        ("A2xD8", false),
        ("E7", false),
        ("E8", false),
        ("B3xE7", false),
        ("A5", true),
        ("B4xD5xH3", true),
        ("H4", true),
    ];
    for (expr, expected) in cases {
        let v = gelfand_verdict(&expr.parse().unwrap()).unwrap();
        ensure(v.is_gelfand == expected, || format!("verdict {expr}: {}", v.is_gelfand))?;
    }
    Ok(format!("consistent on {} groups, {} expressions", all_groups_1_to_3().len(), cases.len()))
}

fn convolution(a: &[(usize, u64)], b: &[(usize, u64)]) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for (da, ka) in a {
        for (db, kb) in b {
            *out.entry(da + db).or_insert(0) += ka * kb;
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let a1 = [(0, 1), (1, 1)];
    let a2 = [(0, 1), (1, 2), (3, 1)];
    for (h, model, name) in [(g(Family::A, 1), &a1[..], "A1xA1"), (g(Family::A, 2), &a2[..], "A1xA2")] {
        let r = product_model_check(&g(Family::A, 1), &h, DEFAULT_CAP).unwrap();
        let expected = convolution(&a1, model);
        ensure(r.computed == expected, || format!("{name}: kernel {:?}, convolution {expected:?}", r.computed))?;
    }
    Ok("A1xA1 and A1xA2 match the convolution".into())
}

fn criterion_9() -> Outcome {
    let mut groups: Vec<_> = (1..=5).map(|n| g(Family::A, n)).collect();
    groups.extend((2..=4).map(|n| g(Family::B, n)));
    groups.extend([g(Family::D, 4), g(Family::D, 5), g(Family::H3, 3)]);
    let brute = groups.clone();
    groups.extend((3..=1000).map(|n| g(Family::Dihedral, n)));
    for grp in &groups {
        ensure(grp.order() <= 2000, || format!("{grp} too large"))?;
        let r = orthogonality_check(grp).unwrap();
        ensure(r.passed(), || format!("{grp}: {:?}", r.failures.first()))?;
    }
    for grp in brute.iter().copied().chain((3..=12).map(|n| g(Family::Dihedral, n))) {
        let elems = matrix_group(&grp, DEFAULT_CAP).unwrap().elements;
        let involutions = elems.iter().filter(|m| (*m * *m).is_identity()).count();
        let dim = gelfand_dimension(&grp).unwrap();
        ensure(dim == BigInt::from(involutions), || format!("{grp}: {dim} vs {involutions} involutions"))?;
    }
    Ok(format!("orthogonality on {} groups, involution counts on {}", groups.len(), brute.len() + 10))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 9] = [
        ("1 H3 table from the element-wise character sum", criterion_1, Some(Duration::from_secs(5))),
        ("2 closed forms equal the character sum", criterion_2, Some(Duration::from_secs(60))),
        ("3 first-multiplicity dichotomy", criterion_3, Some(Duration::from_secs(30))),
        ("4 regular-representation identity", criterion_4, None),
        ("5 kernel equals first-occurrence model", criterion_5, Some(Duration::from_secs(120))),
        ("6 explicit dihedral model", criterion_6, None),
        ("7 verdict consistency", criterion_7, None),
        ("8 product models convolve", criterion_8, None),
        ("9 orthogonality and involution counts", criterion_9, None),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS  criterion {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {name} ({elapsed:.2?}): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
