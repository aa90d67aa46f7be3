use cohomolab::chern::*;
use cohomolab::groups::*;
use num_rational::BigRational;
use std::sync::Arc;

fn degrees(chars: &[ClassFunction]) -> Vec<usize> {
    chars.iter().map(|c| c.degree()).collect()
}

fn c3c3() -> FiniteGroup {
    direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap()
}

#[test]
fn character_degrees() {
    let c6 = Arc::new(cyclic(6).unwrap());
    assert_eq!(degrees(&irreducible_characters(&c6).unwrap()), vec![1; 6]);
    let p = Arc::new(p2(3).unwrap());
    let mut expect = vec![1; 9];
    expect.extend([3, 3]);
    assert_eq!(degrees(&irreducible_characters(&p).unwrap()), expect);
    let s = Arc::new(singer(3, 2).unwrap());
    let mut expect = vec![1; 8];
    expect.push(8);
    assert_eq!(degrees(&irreducible_characters(&s).unwrap()), expect);
    let s3 = Arc::new(semidirect(3, &[vec![vec![2]]]).unwrap());
    assert_eq!(degrees(&irreducible_characters(&s3).unwrap()), vec![1, 1, 2]);
}

#[test]
fn column_orthogonality() {
    for g in [p2(3).unwrap(), singer(3, 2).unwrap(), m_family(3, 3).unwrap()] {
        let g = Arc::new(g);
        let chars = irreducible_characters(&g).unwrap();
        let n = g.exponent();
        for x in [0, 1, g.order() / 2, g.order() - 1] {
            let mut s = Cyclotomic::zero(n);
            for chi in &chars {
                s = s.add(&chi.at(x).mul(chi.at(g.inv(x))));
            }
            let centralizer = (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count();
            assert_eq!(s.to_rational(), Some(BigRational::from_integer(centralizer.into())));
        }
    }
}

#[test]
fn supplied_sources_must_suffice() {
    let g = Arc::new(p2(3).unwrap());
    assert!(matches!(irreducible_characters_from(&g, &[]), Err(ChernError::Incomplete { .. })));
    let gens = g.generators();
    let bc = subgroup_closure(&g, &[gens[1], gens[2]]);
    assert_eq!(degrees(&irreducible_characters_from(&g, &[bc]).unwrap()).len(), 11);
}

#[test]
fn multiplicities_are_consistent() {
    for (g, p) in [(p2(3).unwrap(), 3u64), (singer(3, 2).unwrap(), 3), (semidirect(3, &[vec![vec![2]]]).unwrap(), 3)] {
        let g = Arc::new(g);
        let chars = irreducible_characters(&g).unwrap();
        for c in order_p_subgroup_classes(&g, p).unwrap() {
            let r = chern_exponents_at(&chars, &c, p).unwrap();
            for (chi, a) in chars.iter().zip(&r.multiplicities) {
                assert_eq!(a.iter().sum::<u64>(), chi.degree() as u64);
            }
            if let Some(m) = r.m {
                assert!(r.exponents.iter().all(|e| e % m == 0));
            }
        }
    }
}

#[test]
fn singer_group_restricts_through_its_big_character() {
    let g = Arc::new(singer(3, 2).unwrap());
    let chars = irreducible_characters(&g).unwrap();
    let classes = order_p_subgroup_classes(&g, 3).unwrap();
    assert_eq!(classes.len(), 1);
    let r = chern_exponents_at(&chars, &classes[0], 3).unwrap();
    assert_eq!(r.exponents, vec![6]);
    assert_eq!(r.m, Some(6));
}

#[test]
fn pc_values() {
    let cases: Vec<(FiniteGroup, u64, u64)> = vec![
        (cyclic(9).unwrap(), 3, 2),
        (c3c3(), 3, 2),
        (p2(3).unwrap(), 3, 6),
        (p2(5).unwrap(), 5, 10),
        (singer(3, 2).unwrap(), 3, 12),
    ];
    for (g, p, expect) in cases {
        let name = g.name().to_string();
        let r = pc(&Arc::new(g), p).unwrap();
        assert_eq!(r.pc, expect, "{name}");
        assert_eq!(r.lcm_of_doubled, r.pc);
    }
}

#[test]
fn pc_of_p2_at_center() {
    let g = Arc::new(p2(3).unwrap());
    let chars = irreducible_characters(&g).unwrap();
    let z = center(&g);
    let r = chern_exponents_at(&chars, &z, 3).unwrap();
    // linear characters are trivial on the centre, the degree-3 ones are (1 + j u)^3
    assert_eq!(r.exponents, vec![3]);
    assert_eq!(r.m, Some(3));
}

#[test]
fn pc_divides_the_regular_representation_bound() {
    let groups: Vec<(FiniteGroup, u64)> = vec![
        (p2(3).unwrap(), 3),
        (m_family(3, 3).unwrap(), 3),
        (m_family(4, 3).unwrap(), 3),
        (p_family(4, 3).unwrap(), 3),
        (b_family(4, 1, 3).unwrap(), 3),
        (singer(3, 2).unwrap(), 3),
        (semidirect(3, &[vec![vec![2]]]).unwrap(), 3),
        (semidirect(3, &[vec![vec![2]]]).unwrap(), 2),
        (cyclic(25).unwrap(), 5),
    ];
    for (g, p) in groups {
        let order = g.order() as u64;
        let mut pn = 1;
        while order % (pn * p) == 0 {
            pn *= p;
        }
        let bound = 2 * (p - 1) * pn / p;
        let r = pc(&Arc::new(g), p).unwrap();
        assert_eq!(bound % r.pc, 0, "pc {} vs bound {bound}", r.pc);
    }
}

#[test]
fn pc_ignores_coprime_abelian_factors() {
    let g = p2(3).unwrap();
    let prod = Arc::new(direct_product(&g, &cyclic(2).unwrap()).unwrap());
    assert_eq!(pc(&prod, 3).unwrap().pc, pc(&Arc::new(g), 3).unwrap().pc);
}

#[test]
fn minimal_non_abelian_groups_have_pc_2p() {
    for g in [p2(3).unwrap(), m_family(3, 3).unwrap(), m_family(4, 3).unwrap()] {
        let name = g.name().to_string();
        assert_eq!(pc(&Arc::new(g), 3).unwrap().pc, 6, "{name}");
    }
}
