use cohomolab::groups::*;
use std::collections::BTreeSet;

/// Every order-p subgroup, as sorted member lists, and the partition into conjugacy classes.
fn brute_force_classes(g: &FiniteGroup, p: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let mut subs: BTreeSet<Vec<usize>> = BTreeSet::new();
    for x in 1..g.order() {
        if g.element_order(x) == p {
            let mut m: Vec<usize> = (0..p).map(|k| g.pow(x, k as i64)).collect();
            m.sort();
            subs.insert(m);
        }
    }
    let mut classes: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for s in subs {
        if classes.iter().any(|c| c.contains(&s)) {
            continue;
        }
        let class = (0..g.order())
            .map(|y| {
                let mut c: Vec<usize> = s.iter().map(|&h| g.conj(h, y)).collect();
                c.sort();
                c
            })
            .collect();
        classes.push(class);
    }
    classes
}

fn family_groups() -> Vec<FiniteGroup> {
    vec![
        cyclic(9).unwrap(),
        direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap(),
        p2(3).unwrap(),
        p2(5).unwrap(),
        p_family(4, 3).unwrap(),
        m_family(3, 3).unwrap(),
        m_family(4, 3).unwrap(),
        b_family(4, 1, 3).unwrap(),
        b_family(4, 2, 3).unwrap(),
        g_a1(2, 3).unwrap(),
        singer(3, 2).unwrap(),
        semidirect(3, &[vec![vec![2]]]).unwrap(),
    ]
}

#[test]
fn build_examples() {
    let g = p2(3).unwrap();
    assert_eq!(g.order(), 27);
    assert_eq!(center(&g).order(), 3);
    assert_eq!(g_a1(2, 3).unwrap().order(), 81);
    let s = singer(3, 2).unwrap();
    assert_eq!(s.order(), 72);
    // the eight non-zero vectors are the elements of order 3 and form a single class
    let threes: Vec<usize> = (1..72).filter(|&x| s.element_order(x) == 3).collect();
    assert_eq!(threes.len(), 8);
    let class: BTreeSet<usize> = (0..72).map(|y| s.conj(threes[0], y)).collect();
    assert_eq!(class.len(), 8);
}

#[test]
fn json_spec_builds_the_same_group() {
    let spec: GroupSpec = serde_json::from_str(r#"{"family": "P", "p": 3, "n": 3}"#).unwrap();
    assert_eq!(build_group(&spec).unwrap().fingerprint(), p2(3).unwrap().fingerprint());
    let spec: GroupSpec = serde_json::from_str(
        r#"{"family": "product", "factors": [{"family": "cyclic", "n": 3}, {"family": "cyclic", "n": 3}]}"#,
    )
    .unwrap();
    assert_eq!(build_group(&spec).unwrap().order(), 9);
    let spec: GroupSpec = serde_json::from_str(r#"{"family": "semidirect", "p": 3, "n": 2}"#).unwrap();
    assert_eq!(build_group(&spec).unwrap().order(), 72);
    assert!(build_group(&GroupSpec::family("P").with_p(4)).is_err());
}

#[test]
fn closure_examples() {
    let g = p2(3).unwrap();
    assert_eq!(subgroup_closure(&g, &[0]).order(), 1);
    let gens = g.generators();
    let bc = subgroup_closure(&g, &[gens[1], gens[2]]);
    assert_eq!(bc.order(), 9);
    assert!(bc.as_group(&g, "BC").is_abelian());
    let c6 = cyclic(6).unwrap();
    assert_eq!(subgroup_closure(&c6, &[3]).order(), 2);
    assert_eq!(bc.index() * bc.order(), 27);
}

#[test]
fn order_p_classes_match_brute_force() {
    assert_eq!(order_p_subgroup_classes(&cyclic(9).unwrap(), 3).unwrap().len(), 1);
    let c3c3 = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
    assert_eq!(order_p_subgroup_classes(&c3c3, 3).unwrap().len(), 4);
    assert!(order_p_subgroup_classes(&c3c3, 2).is_err());
    for g in family_groups().into_iter().filter(|g| g.order() <= 200) {
        for p in [2usize, 3, 5] {
            if g.order() % p != 0 {
                continue;
            }
            let reps = order_p_subgroup_classes(&g, p as u64).unwrap();
            let classes = brute_force_classes(&g, p);
            assert_eq!(reps.len(), classes.len(), "{}", g.name());
            for c in &classes {
                assert_eq!(reps.iter().filter(|r| c.contains(&r.members)).count(), 1);
            }
        }
    }
}

#[test]
fn center_and_derived_examples() {
    let c9 = cyclic(9).unwrap();
    let (z, d) = center_and_derived(&c9);
    assert_eq!((z.order(), d.order()), (9, 1));
    let p4 = p_family(4, 3).unwrap();
    let (z, d) = center_and_derived(&p4);
    assert_eq!((z.order(), d.order()), (9, 3));
    let c = p4.generators()[2];
    assert_eq!(z.members, subgroup_closure(&p4, &[c]).members);
    let b4 = b_family(4, 1, 3).unwrap();
    let c = b4.generators()[2];
    assert_eq!(center(&b4).members, subgroup_closure(&b4, &[b4.pow(c, 3)]).members);
}

#[test]
fn family_invariants() {
    for n in 3..=5u32 {
        let g = p_family(n, 3).unwrap();
        let c = g.generators()[2];
        let (z, d) = center_and_derived(&g);
        assert_eq!(g.order(), 3usize.pow(n));
        assert_eq!(z.members, subgroup_closure(&g, &[c]).members);
        assert_eq!(d.members, subgroup_closure(&g, &[g.pow(c, 3i64.pow(n - 3))]).members);
        assert_eq!(d.order(), 3);
        assert_eq!(g.exponent(), 3usize.pow(n - 2).max(3));
    }
    for g in family_groups() {
        for x in 0..g.order() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
        assert_eq!(subgroup_closure(&g, g.generators()).order(), g.order());
        let (z, d) = center_and_derived(&g);
        assert_eq!(g.order() % z.order(), 0);
        assert_eq!(g.order() % d.order(), 0);
    }
}
