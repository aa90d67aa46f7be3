use cohomolab::invariants::*;
use proptest::prelude::*;

fn count_pairs(d: usize, s: usize, t: usize) -> usize {
    (0..=d / s).filter(|i| (d - i * s) % t == 0).count()
}

#[test]
fn trivial_action_fixes_everything() {
    let alg = GradedAlgebra::new(3, vec![1, 1], vec![1]).unwrap();
    let id = MatrixAction::new(3, vec![vec![vec![1, 0], vec![0, 1]]], vec![ExteriorCharacter::DetPower(1)]).unwrap();
    for d in 0..6 {
        assert_eq!(fixed_subspace(&alg, &id.generators(), d).len(), alg.basis(d).len());
    }
}

#[test]
fn sl2_3_low_degrees() {
    let (alg, a, _) = dickson_pair(3);
    let sl = sl2_action(3).generators();
    assert_eq!(fixed_subspace(&alg, &sl, 1).len(), 0);
    let f4 = fixed_subspace(&alg, &sl, 4);
    assert_eq!(f4.len(), 1);
    assert!(in_span(&alg, 4, &f4, &a));
    assert_eq!(sl2_action(3).group_order(), 24);
    assert_eq!(gl2_action(3).group_order(), 48);
    assert_eq!(gl2_action(5).group_order(), 480);
}

#[test]
fn subalgebra_examples() {
    let (alg, a, b) = dickson_pair(3);
    assert_eq!(subalgebra_dims(&alg, &[alg.var(0)], 10).unwrap(), vec![1; 11]);
    let dims = subalgebra_dims(&alg, &[a.clone(), b.clone()], 24).unwrap();
    for (d, &n) in dims.iter().enumerate() {
        assert_eq!(n, count_pairs(d, 4, 6), "degree {d}");
    }
    let a2 = alg.pow(&a, 2);
    let dims = subalgebra_dims(&alg, &[a2, b.clone()], 24).unwrap();
    for (d, &n) in dims.iter().enumerate() {
        assert_eq!(n, count_pairs(d, 8, 6), "degree {d}");
    }
    assert_eq!(
        subalgebra_dims(&alg, &[a.add(&alg.var(0))], 4),
        Err(InvariantError::NotHomogeneous)
    );
}

#[test]
fn dickson_pair_degrees() {
    for p in [3u32, 5, 7] {
        let (alg, a, b) = dickson_pair(p);
        assert_eq!(alg.degree_of(&a).unwrap(), Some(p as usize + 1));
        assert_eq!(alg.degree_of(&b).unwrap(), Some((p * (p - 1)) as usize));
    }
}

#[test]
fn dickson_checks_pass() {
    let r = dickson_check(3, 24).unwrap();
    assert!(r.passed, "{:?}", r.first_mismatch);
    assert!(dickson_check(5, 30).unwrap().passed);
    assert!(dickson_check(7, 60).unwrap().passed);
    assert!(matches!(dickson_check(3, 61), Err(InvariantError::Infeasible { .. })));
}

#[test]
fn dickson_negative_control_fails() {
    let (alg, a, b) = dickson_pair(3);
    let x2 = alg.pow(&alg.var(0), 2);
    let bad = b.add(&alg.mul(&x2, &a));
    let r = dickson_check_with(3, 24, &a, &bad).unwrap();
    assert!(!r.passed);
    assert!(!r.generators_invariant);
    assert!(r.first_mismatch.is_some_and(|d| d <= 24));
}

#[test]
fn held_check() {
    let r = held_5_part_check(120).unwrap();
    assert_eq!(r.group_order, 48);
    assert_eq!(r.rows[16].fixed, 1);
    // χ lives in degree 15
    assert_eq!(r.rows[15].fixed, 1);
    assert_eq!(r.rows[39].fixed, r.rows[39].presented);
    assert_eq!(r.rows[24].fixed, 2);
    assert!(r.relation.is_some());
    assert!(r.passed);
    assert_ne!(r.printed_relation_degrees.0, r.printed_relation_degrees.1);
}

#[test]
fn averaging_matches_fixed_dimension() {
    let held = held_matrices();
    let alg = GradedAlgebra::new(5, vec![2, 2], vec![3]).unwrap();
    let d8 = MatrixAction::new(3, vec![vec![vec![1, 0], vec![0, -1]], vec![vec![0, 1], vec![-1, 0]]], vec![]).unwrap();
    assert_eq!(d8.group_order(), 8);
    let poly3 = GradedAlgebra::polynomial(3, 2).unwrap();
    for d in 0..=20 {
        assert_eq!(held.averaging_rank(&alg, d), Some(fixed_subspace(&alg, &held.generators(), d).len()), "degree {d}");
        assert_eq!(d8.averaging_rank(&poly3, d), Some(fixed_subspace(&poly3, &d8.generators(), d).len()));
    }
    assert_eq!(sl2_action(3).averaging_rank(&poly3, 2), None);
}

#[test]
fn exterior_generators_anticommute() {
    let alg = GradedAlgebra::new(5, vec![2], vec![3, 3]).unwrap();
    let (e, f) = (alg.ext(0), alg.ext(1));
    assert_eq!(alg.mul(&e, &f), alg.mul(&f, &e).scale(-1));
    assert!(alg.mul(&e, &e).is_zero());
    let x = alg.var(0);
    assert_eq!(alg.mul(&x, &e), alg.mul(&e, &x));
}

#[test]
fn subalgebra_is_monotone_and_bounded_by_invariants() {
    let (alg, a, b) = dickson_pair(3);
    let sl = sl2_action(3).generators();
    let small = subalgebra_dims(&alg, &[a.clone()], 20).unwrap();
    let big = subalgebra_dims(&alg, &[a.clone(), b.clone()], 20).unwrap();
    for d in 0..=20 {
        assert!(small[d] <= big[d]);
        assert!(big[d] <= fixed_subspace(&alg, &sl, d).len());
    }
}

fn inverse2(m: [[i64; 2]; 2], p: i64) -> Option<[[i64; 2]; 2]> {
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).rem_euclid(p);
    let inv = (1..p).find(|k| k * det % p == 1)?;
    Some([[m[1][1] * inv, -m[0][1] * inv], [-m[1][0] * inv, m[0][0] * inv]])
}

fn mul2(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> Vec<Vec<i64>> {
    (0..2).map(|i| (0..2).map(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn fixed_dimension_is_basis_independent(entries in prop::array::uniform4(0i64..5), d in 0usize..16) {
        let q = [[entries[0], entries[1]], [entries[2], entries[3]]];
        let Some(qi) = inverse2(q, 5) else { return Ok(()) };
        let held = held_matrices();
        let conj: Vec<Vec<Vec<i64>>> = held
            .matrices
            .iter()
            .map(|m| {
                let m = [[m[0][0] as i64, m[0][1] as i64], [m[1][0] as i64, m[1][1] as i64]];
                let t = mul2(qi, m);
                mul2([[t[0][0], t[0][1]], [t[1][0], t[1][1]]], q)
            })
            .collect();
        let other = MatrixAction::new(5, conj, held.exterior.clone()).unwrap();
        let alg = GradedAlgebra::new(5, vec![2, 2], vec![3]).unwrap();
        prop_assert_eq!(
            fixed_subspace(&alg, &other.generators(), d).len(),
            fixed_subspace(&alg, &held.generators(), d).len()
        );
    }
}
