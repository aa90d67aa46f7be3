use cohomolab::davis::*;
use cohomolab::linalg::{rank_mod_p, Domain, SparseMatrix};
use num_bigint::BigInt;
use num_rational::Rational64;
use proptest::prelude::*;

fn sphere_homology() -> Vec<HomologyGroup> {
    vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(1)]
}

fn all_simplices(k: &SimplicialComplex) -> Vec<Vec<u32>> {
    (0..=k.dimension().unwrap_or(0)).flat_map(|d| k.simplices(d).to_vec()).collect()
}

/// Counts chains σ_0 < … < σ_i by brute force over pairs of simplices.
fn chain_counts(k: &SimplicialComplex) -> Vec<usize> {
    let all = all_simplices(k);
    let below = |a: &Vec<u32>, b: &Vec<u32>| a.len() < b.len() && a.iter().all(|v| b.contains(v));
    let mut order: Vec<usize> = (0..all.len()).collect();
    order.sort_by_key(|&i| all[i].len());
    // table[s][i] = chains of length i + 1 ending at s
    let mut table = vec![Vec::new(); all.len()];
    for &s in &order {
        let mut row = vec![1usize];
        for &t in &order {
            if below(&all[t], &all[s]) {
                for (i, &c) in table[t].iter().enumerate() {
                    if row.len() <= i + 1 {
                        row.push(0);
                    }
                    row[i + 1] += c;
                }
            }
        }
        table[s] = row;
    }
    let mut out = Vec::new();
    for row in table {
        for (i, c) in row.into_iter().enumerate() {
            if out.len() <= i {
                out.push(0);
            }
            out[i] += c;
        }
    }
    out
}

/// Boundary matrix built independently of the library ordering.
fn boundary(k: &SimplicialComplex, n: usize) -> SparseMatrix {
    let rows = k.simplices(n - 1);
    let cols: Vec<Vec<(u32, i64)>> = k
        .simplices(n)
        .iter()
        .map(|s| {
            let mut c: Vec<(u32, i64)> = (0..s.len())
                .map(|i| {
                    let mut f = s.clone();
                    f.remove(i);
                    (rows.iter().position(|r| *r == f).unwrap() as u32, if i % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            c.sort_unstable();
            c
        })
        .collect();
    SparseMatrix::from_columns(rows.len(), Domain::Integers, cols)
}

fn betti_mod_p(k: &SimplicialComplex, p: u32) -> Vec<usize> {
    let dim = k.dimension().unwrap();
    let ranks: Vec<usize> = (0..=dim + 1)
        .map(|n| if n == 0 || n > dim { 0 } else { rank_mod_p(&boundary(k, n).reduce_mod(p), p).unwrap() })
        .collect();
    (0..=dim).map(|n| k.simplices(n).len() - ranks[n] - ranks[n + 1]).collect()
}

fn p_part(h: &HomologyGroup, p: u32) -> usize {
    h.torsion.iter().filter(|t| (*t % p) == BigInt::from(0)).count()
}

/// A random complex on `l` vertices from facets given as bitmasks.
fn complex_from_masks(l: usize, masks: &[u32]) -> SimplicialComplex {
    let mut facets: Vec<Vec<u32>> = (0..l as u32).map(|v| vec![v]).collect();
    for &m in masks {
        facets.push((0..l as u32).filter(|v| m >> v & 1 == 1).collect());
    }
    facets.retain(|f| !f.is_empty());
    SimplicialComplex::from_facets(l, &facets).unwrap()
}

/// Clique complex of a graph given by an edge bitmask: full by construction.
fn flag_complex(l: usize, edges: u64) -> SimplicialComplex {
    let adj = |a: usize, b: usize| {
        let (a, b) = (a.min(b), a.max(b));
        let idx = a * l + b;
        edges >> (idx % 64) & 1 == 1
    };
    let facets: Vec<Vec<u32>> = (1u32..1 << l)
        .map(|m| (0..l as u32).filter(|v| m >> v & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.iter().enumerate().all(|(i, &a)| s[i + 1..].iter().all(|&b| adj(a as usize, b as usize))))
        .collect();
    SimplicialComplex::from_facets(l, &facets).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn homology_agrees_with_ranks_mod_p(masks in prop::collection::vec(1u32..128, 1..6)) {
        let k = complex_from_masks(7, &masks);
        let h = homology(&k);
        let chi: i64 = h.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
        prop_assert_eq!(chi, k.euler_characteristic());
        for p in [2u32, 3] {
            let b = betti_mod_p(&k, p);
            for n in 0..h.len() {
                let tor_below = if n == 0 { 0 } else { p_part(&h[n - 1], p) };
                prop_assert_eq!(b[n], h[n].rank + p_part(&h[n], p) + tor_below);
            }
        }
    }

    #[test]
    fn subdivision_preserves_homology(masks in prop::collection::vec(1u32..64, 1..4)) {
        let k = complex_from_masks(6, &masks);
        let sd = barycentric_subdivision(&k).unwrap();
        prop_assert!(sd.is_full());
        prop_assert_eq!(sd.counts(), chain_counts(&k));
        prop_assert_eq!(homology(&sd), homology(&k));
    }

    #[test]
    fn euler_characteristics_agree(l in 1usize..7, edges in any::<u64>()) {
        let k = flag_complex(l, edges);
        prop_assert!(k.is_full());
        let gp = racg_from_complex(&k).unwrap();
        let c = torsion_free_coloring(&k);
        prop_assert!(c.is_proper(&k));
        let q = davis_quotient(&gp, &c).unwrap();
        let rep = euler_report(&k, Some(&q));
        prop_assert!(rep.consistent);
        prop_assert_eq!(chiswell_chi(&k), orbifold_chi(&k));
        prop_assert_eq!(homology(&q.complex)[0].clone(), HomologyGroup::free(1));
        if gp.is_finite() {
            // kernel is trivial only when k = l; in general χ(G) = 1/|G|
            prop_assert_eq!(orbifold_chi(&k), Rational64::new(1, 1 << l));
        }
    }
}

#[test]
fn subdivision_face_counts() {
    let sd = barycentric_subdivision(&SimplicialComplex::simplex_boundary(3)).unwrap();
    assert_eq!(sd.counts(), vec![14, 36, 24]);
    assert!(sd.is_full());
    assert_eq!(homology(&sd), sphere_homology());
}

#[test]
fn moore_complexes_certify() {
    for n in 2..=4 {
        let k = moore_complex(n).unwrap();
        let h = homology(&k);
        assert!(is_moore_homology(&h, n));
        assert_eq!(h[1], HomologyGroup::cyclic(n as u64));
        assert!(k.is_full());
        assert_eq!(torsion_free_coloring(&k).k, 3);
    }
    assert!(moore_complex(1).is_err());
}

#[test]
fn cohomology_uses_universal_coefficients() {
    let k = moore_complex(3).unwrap();
    assert_eq!(cohomology_degree(&k, 0), HomologyGroup::free(1));
    assert_eq!(cohomology_degree(&k, 1), HomologyGroup::free(0));
    assert_eq!(cohomology_degree(&k, 2), HomologyGroup::cyclic(3));
}

#[test]
fn coxeter_groups_from_small_complexes() {
    let point = racg_from_complex(&SimplicialComplex::point()).unwrap();
    assert_eq!(point.order(), Some(2));
    let two = racg_from_complex(&SimplicialComplex::two_points()).unwrap();
    assert_eq!(two.order(), None);
    assert!(two.commuting_pairs().is_empty());
    let full = racg_from_complex(&SimplicialComplex::full_simplex(4)).unwrap();
    assert_eq!(full.order(), Some(16));
    assert_eq!(full.spherical_subsets().len(), 16);
    assert!(matches!(racg_from_complex(&SimplicialComplex::simplex_boundary(2)), Err(DavisError::NotFull)));
    assert!(GraphProduct::new(vec![3, 2], SimplicialComplex::two_points()).is_ok());
}

#[test]
fn colorings() {
    let sd = barycentric_subdivision(&SimplicialComplex::full_simplex(3)).unwrap();
    assert_eq!(torsion_free_coloring(&sd).k, 3);
    assert_eq!(torsion_free_coloring(&SimplicialComplex::edge()).k, 2);
    let edges: Vec<Vec<u32>> = (0..6u32).flat_map(|a| (a + 1..6).map(move |b| vec![a, b])).collect();
    let k6 = SimplicialComplex::from_facets(6, &edges).unwrap();
    assert!(!k6.is_full());
    assert!(matches!(racg_from_complex(&k6), Err(DavisError::NotFull)));
    let c = torsion_free_coloring(&k6);
    assert_eq!(c.k, 6);
    assert!(c.is_proper(&k6));
}

#[test]
fn small_quotients() {
    // C_2 × C_2 with trivial kernel: D(G) itself, a cone
    let edge = SimplicialComplex::edge();
    let q = davis_quotient(&racg_from_complex(&edge).unwrap(), &torsion_free_coloring(&edge)).unwrap();
    assert_eq!(homology(&q.complex), vec![HomologyGroup::free(1), HomologyGroup::free(0), HomologyGroup::free(0)]);
    // D_∞ acting on a line, modulo Z
    let two = SimplicialComplex::two_points();
    let q = davis_quotient(&racg_from_complex(&two).unwrap(), &torsion_free_coloring(&two)).unwrap();
    assert_eq!(homology(&q.complex), vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
    let bad = Coloring { colors: vec![0, 0], k: 1 };
    assert!(davis_quotient(&racg_from_complex(&edge).unwrap(), &bad).is_err());
    let gp = GraphProduct::new(vec![3], SimplicialComplex::point()).unwrap();
    assert!(davis_quotient(&gp, &Coloring { colors: vec![0], k: 1 }).is_err());
}

#[test]
fn forced_euler_characteristics() {
    let r = Rational64::new;
    for (k, want) in [
        (SimplicialComplex::point(), r(1, 2)),
        (SimplicialComplex::edge(), r(1, 4)),
        (SimplicialComplex::two_points(), r(0, 1)),
        (SimplicialComplex::full_simplex(3), r(1, 8)),
    ] {
        assert_eq!(chiswell_chi(&k), want);
        assert_eq!(orbifold_chi(&k), want);
    }
    let s3 = barycentric_subdivision(&SimplicialComplex::simplex_boundary(4)).unwrap();
    assert!(chiswell_chi(&s3) > r(0, 1));
    assert_eq!(chiswell_chi(&s3), orbifold_chi(&s3));
    // the relations n_0 − n_1 + n_2 − n_3 = 0 and 2n_3 = n_2 for a 3-sphere
    let n = s3.counts();
    assert_eq!(n[0] + n[2], n[1] + n[3]);
    assert_eq!(2 * n[3], n[2]);
}

#[test]
fn links() {
    let s2 = SimplicialComplex::simplex_boundary(3);
    assert_eq!(homology(&s2.link(&[0]).unwrap()), vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
    let e = s2.link(&[1, 0]).unwrap();
    assert_eq!(e.counts(), vec![2]);
    assert!(matches!(s2.link(&[0, 1, 2, 3]), Err(DavisError::AbsentSimplex(_))));
    assert!(s2.link(&[0, 1, 2]).unwrap().dimension().is_none());
}

#[test]
fn sphere_quotient_is_a_closed_three_manifold() {
    let k = barycentric_subdivision(&SimplicialComplex::simplex_boundary(3)).unwrap();
    let q = davis_quotient(&racg_from_complex(&k).unwrap(), &torsion_free_coloring(&k)).unwrap();
    assert_eq!(q.complex.euler_characteristic(), 0);
    let h = homology(&q.complex);
    assert_eq!(h.len(), 4);
    assert_eq!(h[3], HomologyGroup::free(1));
    for v in 0..q.complex.vertex_count() as u32 {
        assert_eq!(homology(&q.complex.link(&[v]).unwrap()), sphere_homology(), "vertex {v}");
    }
    // every triangle lies in exactly two tetrahedra
    let mut cover = std::collections::HashMap::new();
    for t in q.complex.simplices(3) {
        for i in 0..4 {
            let mut f = t.clone();
            f.remove(i);
            *cover.entry(f).or_insert(0) += 1;
        }
    }
    assert!(cover.values().all(|&c| c == 2));
}

#[test]
fn bestvina_quotients() {
    for n in 2..=4 {
        let r = bestvina(n).unwrap();
        assert!(r.moore_certified);
        assert!(r.h0_is_z && r.vanishes_above_3);
        assert!(r.h3_exponent_divides_n);
        assert_eq!(r.h3_cohomology, HomologyGroup::cyclic(n as u64));
        assert_eq!(r.rank_h3, 0);
        assert!(r.euler.consistent);
        assert!(r.passed);
    }
}

#[test]
fn json_round_trip() {
    let k = moore_complex(2).unwrap();
    let text = serde_json::to_string(&k.to_json()).unwrap();
    let back = SimplicialComplex::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back.counts(), k.counts());
    assert_eq!(homology(&back), homology(&k));
}
