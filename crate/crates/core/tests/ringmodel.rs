use cohomolab::bar::{cohomology_dims_mod_p, BarOptions};
use cohomolab::groups::p2;
use cohomolab::invariants::{Element, GradedRing, LinearAction};
use cohomolab::ringmodel::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_monomial(ring: &RingModel, rng: &mut ChaCha8Rng, max_degree: usize) -> RingMonomial {
    loop {
        let b = ring.basis(rng.gen_range(0..=max_degree));
        if !b.is_empty() {
            return b[rng.gen_range(0..b.len())];
        }
    }
}

fn random_automorphism(p: u32, rng: &mut ChaCha8Rng) -> RingAutomorphism {
    loop {
        let m = [[0; 2]; 2].map(|r: [i64; 2]| r.map(|_| rng.gen_range(0..p as i64)));
        if let Ok(g) = RingAutomorphism::new(p, m, None) {
            return g;
        }
    }
}

#[test]
fn small_examples() {
    let r3 = RingModel::new(3, 1).unwrap();
    assert_eq!(r3.basis(4).len(), 4);
    assert!(r3.basis(4).iter().any(|m| m.chi == 2));
    assert!(r3.mul(&r3.mu(), &r3.nu()).is_zero());

    let r7 = RingModel::new(7, 1).unwrap();
    assert!(r7.mul(&r7.beta(), &r7.chi(3)).is_zero());
    assert_eq!(r7.mul(&r7.beta(), &r7.chi(6)), r7.pow(&r7.beta(), 7).scale(-1));
    assert_eq!(r7.mul(&r7.mu(), &r7.nu()), r7.chi(3));
    let r7b = RingModel::new(7, 3).unwrap();
    assert_eq!(r7b.mul(&r7b.nu(), &r7b.mu()), r7b.chi(3).scale(-3));
    assert!(RingModel::new(9, 1).is_err());
    assert!(RingModel::new(5, 5).is_err());
}

/// Closed-form count: ζ-multiples of 1, χ_j, α^aβ^b (at most p + 1 per degree) in even
/// degrees and of α^mν, β^mμ and α^aβ^bμ (a ≥ 1, b ≤ p − 2) in odd degrees.
fn expected_dim(p: usize, d: usize) -> usize {
    let mut total = 0;
    for i in 0..=d / (2 * p) {
        let rem = d - 2 * p * i;
        if rem == 0 {
            total += 1;
        } else if rem % 2 == 0 {
            let m = rem / 2;
            total += usize::from((2..p).contains(&m)) + 1 + m.min(p);
        } else if rem >= 3 {
            let m = (rem - 3) / 2;
            total += 2 + m.min(p - 1);
        }
    }
    total
}

#[test]
fn basis_sizes_follow_the_closed_form() {
    for p in [3u32, 5, 7] {
        let r = RingModel::new(p, 1).unwrap();
        for d in 0..=8 * p as usize {
            assert_eq!(r.basis(d).len(), expected_dim(p as usize, d), "p = {p}, d = {d}");
        }
    }
}

#[test]
fn basis_matches_bar_cohomology_of_p2_3() {
    // For n ≥ 1, dim H^n(G; F_p) = c_n + c_{n+1} with c_n = dim H^n(G; Z) ⊗ F_p.
    let r = RingModel::new(3, 1).unwrap();
    let g = p2(3).unwrap();
    let bar = cohomology_dims_mod_p(&g, 3, 4, &BarOptions::without_cache()).unwrap();
    for n in 1..=4 {
        assert_eq!(r.basis(n).len() + r.basis(n + 1).len(), bar[n], "degree {n}");
    }
}

#[test]
fn relations_reduce_to_zero() {
    for (p, lambda) in [(3, 1), (3, 2), (5, 1), (5, 4), (7, 1), (7, 3), (11, 1)] {
        let r = RingModel::new(p, lambda).unwrap();
        for (name, res) in r.relation_residues() {
            assert!(res.is_zero(), "p = {p}: {name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn associative_and_graded_commutative(pi in 0usize..4, seed in any::<u64>()) {
        let p = [3u32, 5, 7, 11][pi];
        let r = RingModel::new(p, 1 + seed as u32 % (p - 1)).unwrap();
        prop_assert!(r.verify(200, 6 * p as usize, seed).is_ok());
    }

    #[test]
    fn automorphisms_are_multiplicative_and_compose(pi in 0usize..3, seed in any::<u64>()) {
        let p = [3u32, 5, 7][pi];
        let r = RingModel::new(p, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_automorphism(p, &mut rng);
        let h = random_automorphism(p, &mut rng);
        let gh = g.compose(&h, p);
        for _ in 0..20 {
            let x = random_monomial(&r, &mut rng, 4 * p as usize);
            let y = random_monomial(&r, &mut rng, 4 * p as usize);
            let xy = r.mul_monomials(&x, &y);
            prop_assert_eq!(g.apply(&r, &xy), r.mul(&g.apply_monomial(&r, &x), &g.apply_monomial(&r, &y)));
            let ex = Element::monomial(p, x);
            prop_assert_eq!(gh.apply(&r, &ex), g.apply(&r, &h.apply(&r, &ex)));
        }
    }
}

#[test]
fn fixed_subring_of_identity_is_everything() {
    let r = RingModel::new(5, 1).unwrap();
    let fixed = fixed_subring(&r, &[RingAutomorphism::identity()], 30).unwrap();
    for (d, f) in fixed.iter().enumerate() {
        assert_eq!(f.len(), r.basis(d).len());
    }
}

#[test]
fn fixed_subring_shrinks_with_more_generators() {
    let r = RingModel::new(3, 1).unwrap();
    let gens = d8_action();
    let one = fixed_subring(&r, &gens[..1], 20).unwrap();
    let all = fixed_subring(&r, &gens, 20).unwrap();
    for d in 0..=20 {
        assert!(all[d].len() <= one[d].len());
        for e in &all[d] {
            assert_eq!(gens[0].apply(&r, e), *e);
        }
    }
    assert!(fixed_subring(&r, &gens, RING_MAX_DEGREE + 1).is_err());
}

#[test]
fn shear_fixed_ring() {
    for (p, d) in [(3, 30), (5, 40)] {
        let rep = shear_check(p, d).unwrap();
        assert!(rep.passed, "p = {p}: {:?}", rep.first_mismatch);
        assert_eq!(rep.rows.last().unwrap().degree, d);
    }
    // β ↦ β fixes everything, so the fixed ring is strictly larger
    let rep = shear_check_with(3, 30, &[RingAutomorphism::identity()]).unwrap();
    assert!(!rep.passed);
    let row = rep.rows.iter().find(|r| Some(r.degree) == rep.first_mismatch).unwrap();
    assert!(row.fixed > row.generated);
}

#[test]
fn d8_fixed_ring() {
    let rep = held_3_part_check(24).unwrap();
    assert!(rep.consistent);
    assert!(rep.generation_matches);
    assert!(rep.completed_span_matches);
    // the spanning list without ζ^{2i+1}α^{2j}βμ is short exactly in those degrees
    assert_eq!(rep.span_missing, vec![15, 19, 23]);
    // ζ(αν − βμ) is not invariant; negating ζ under M_3 instead leaves ζα^{2j+1}β fixed
    assert!(!rep.minus_generator_fixed);
    assert_eq!(rep.negated_zeta_mismatches, vec![10, 14, 18, 22]);
    let dims: Vec<usize> = rep.rows.iter().map(|r| r.fixed).collect();
    assert_eq!(&dims[..13], &[1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 1, 3]);
}

#[test]
fn s3c3_fixed_ring_and_restriction() {
    let rep = held_7_part_check(60, 1).unwrap();
    assert!(rep.generators_fixed);
    assert!(rep.generation_matches);
    assert!(rep.twelve_extend);
    assert!(rep.restriction_multiplicative);
    assert_eq!(rep.membership.len(), 12);
    assert!(rep.membership.iter().all(|m| m.in_subring));
    assert!(rep.passed);
    let image = |name: &str| rep.membership.iter().find(|m| m.element == name).unwrap().image.clone();
    assert_eq!(image("α³+β³"), "0");
    assert_eq!(image("ζ²αβ"), "6·ζ′^2·ε^2");
    assert_eq!(image("ζ⁶−α³⁹β³"), "ε^42 + ζ′^6");
}

#[test]
fn fixed_rings_do_not_depend_on_lambda() {
    let a = held_7_part_check(60, 1).unwrap();
    let b = held_7_part_check(60, 3).unwrap();
    assert!(b.passed);
    let dims = |r: &Held7Report| r.rows.iter().map(|x| (x.fixed, x.generated)).collect::<Vec<_>>();
    assert_eq!(dims(&a), dims(&b));
    let r1 = RingModel::new(5, 1).unwrap();
    let r2 = RingModel::new(5, 2).unwrap();
    let g = shear_action(5).unwrap();
    let f1 = fixed_subring(&r1, &[g.clone()], 30).unwrap();
    let f2 = fixed_subring(&r2, &[g], 30).unwrap();
    assert_eq!(f1, f2);
}

#[test]
fn restriction_maps_are_multiplicative() {
    let r3 = RingModel::new(3, 1).unwrap();
    let bc = RestrictionMap::p2_3_to_bc();
    assert!(bc.check_multiplicative(&r3, 400, 24, 1).is_ok());
    // χ_2 ↦ −β′², ζ ↦ γ³ − β′²γ
    assert_eq!(format_target(&bc.apply(&r3.chi(2)), &["β′", "γ"], &["δ"]), "2·β′^2");
    assert_eq!(format_target(&bc.apply(&r3.zeta()), &["β′", "γ"], &["δ"]), "γ^3 + 2·β′^2·γ");
    let r7 = RingModel::new(7, 1).unwrap();
    let k = RestrictionMap::p2_7_to_k();
    assert!(k.check_multiplicative(&r7, 400, 60, 2).is_ok());
    // α³β³ ↦ −ε⁶, (α⁵β − α²β⁴)μ ↦ −2ε⁶δ, ζ(α⁵β² − α²β⁵) ↦ 2ζ′ε⁷
    let f = fifteen_elements(&r7);
    let get = |n: &str| f.iter().find(|e| e.0 == n).unwrap().1.clone();
    let show = |e: &Element<RingMonomial>| format_target(&k.apply(e), &["ζ′", "ε"], &["δ"]);
    assert_eq!(show(&get("α³β³")), "6·ε^6");
    assert_eq!(show(&get("α⁵βμ−α²β⁴μ")), "5·ε^6·δ");
    assert_eq!(show(&get("ζ(α⁵β²−α²β⁵)")), "2·ζ′·ε^7");
}

#[test]
fn named_actions() {
    for (name, alias, _) in ACTION_NAMES {
        assert!(named_action(name, None).is_ok());
        assert!(named_action(alias, None).is_ok());
    }
    assert!(named_action("D8-5.10", Some(5)).is_err());
    assert!(named_action("nope", None).is_err());
    match named_action("c3-shear", Some(7)).unwrap() {
        NamedAction::Ring { p, generators } => {
            assert_eq!(p, 7);
            assert_eq!(generators.len(), 1);
        }
        NamedAction::Matrix(_) => panic!("shear acts on the ring model"),
    }
}
