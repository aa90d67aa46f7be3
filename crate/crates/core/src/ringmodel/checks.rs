//! Fixed subrings of the ring model under named automorphism groups, and the checks that
//! compare them with explicit generator lists.

use super::restriction::format_target;
use super::{format_element, RestrictionMap, RingAutomorphism, RingError, RingModel, RingMonomial};
use crate::invariants::{
    fixed_subspace, held_matrices, in_span, span_dim, subalgebra_basis, Element, GradedRing, InvariantError, LinearAction,
    MatrixAction,
};
use rayon::prelude::*;
use serde::Serialize;

/// Largest degree accepted by the fixed-subring computations.
pub const RING_MAX_DEGREE: usize = 120;

fn check_degree(d: usize) -> Result<(), RingError> {
    if d > RING_MAX_DEGREE {
        return Err(InvariantError::Infeasible { degree: d, limit: RING_MAX_DEGREE }.into());
    }
    Ok(())
}

/// Per degree `0..=max_degree`, a basis of the elements fixed by every generator.
pub fn fixed_subring(
    ring: &RingModel,
    gens: &[RingAutomorphism],
    max_degree: usize,
) -> Result<Vec<Vec<Element<RingMonomial>>>, RingError> {
    check_degree(max_degree)?;
    Ok((0..=max_degree).into_par_iter().map(|d| fixed_subspace(ring, gens, d)).collect())
}

/// `D_8 ≤ GL_2(3)` acting on the model of `P_2(3)`: `M_1` negates α, μ, ζ; `M_2` negates β,
/// ν, ζ; `M_3` sends α ↦ −β, β ↦ α, μ ↦ ν, ν ↦ −μ and fixes χ_2 and ζ (`j = det = 1`).
pub fn d8_action() -> Vec<RingAutomorphism> {
    let p = 3;
    vec![
        RingAutomorphism::new(p, [[-1, 0], [0, 1]], None).expect("invertible"),
        RingAutomorphism::new(p, [[1, 0], [0, -1]], None).expect("invertible"),
        RingAutomorphism::new(p, [[0, -1], [1, 0]], None).expect("invertible"),
    ]
}

/// [`d8_action`] with `M_3` also negating ζ, as it is sometimes written; this disagrees with
/// `ζ ↦ j^pζ` for `j = det M_3 = 1`.
pub fn d8_action_negating_zeta() -> Vec<RingAutomorphism> {
    let mut gens = d8_action();
    gens[2] = gens[2].clone().with_zeta(3, -1);
    gens
}

/// `S_3 × C_3 ≤ GL_2(7)` acting on the model of `P_2(7)`: `diag(2, 1)`, `diag(1, 2)` and the
/// swap `α ↔ β`.
pub fn s3c3_action() -> Vec<RingAutomorphism> {
    let p = 7;
    vec![
        RingAutomorphism::new(p, [[2, 0], [0, 1]], None).expect("invertible"),
        RingAutomorphism::new(p, [[1, 0], [0, 2]], None).expect("invertible"),
        RingAutomorphism::new(p, [[0, 1], [1, 0]], None).expect("invertible"),
    ]
}

/// Conjugation by `C` in `B(n, ε)` restricted to its `P(n−1)`: fixes α, ν, χ_i, ζ and sends
/// β ↦ β + α, μ ↦ μ + ν.
pub fn shear_action(p: u32) -> Result<RingAutomorphism, RingError> {
    RingAutomorphism::new(p, [[1, 0], [1, 1]], None)
}

pub enum NamedAction {
    Ring { p: u32, generators: Vec<RingAutomorphism> },
    Matrix(MatrixAction),
}

/// Built-in actions: `(name, alias, description)`.
pub const ACTION_NAMES: [(&str, &str, &str); 4] = [
    ("d8-p3", "D8-5.10", "D8 in GL2(3) on the P2(3) model"),
    ("s3xc3-p7", "S3xC3-5.12", "S3 x C3 in GL2(7) on the P2(7) model"),
    ("c3-shear", "C3-shear-3.4", "beta -> beta + alpha on the P2(p) model (default p = 3)"),
    ("c4a4-p5", "C4A4-5.8", "C4A4 in GL2(5) on F5[d, d'] (x) L[e]"),
];

pub fn named_action(name: &str, p: Option<u32>) -> Result<NamedAction, RingError> {
    let key = ACTION_NAMES
        .iter()
        .find(|(n, alias, _)| n.eq_ignore_ascii_case(name) || alias.eq_ignore_ascii_case(name))
        .map(|e| e.0)
        .ok_or_else(|| RingError::Invalid(format!("unknown action {name}")))?;
    let fixed_prime = |q: u32| match p {
        Some(x) if x != q => Err(RingError::Invalid(format!("{name} is defined only for p = {q}"))),
        _ => Ok(q),
    };
    Ok(match key {
        "d8-p3" => NamedAction::Ring { p: fixed_prime(3)?, generators: d8_action() },
        "s3xc3-p7" => NamedAction::Ring { p: fixed_prime(7)?, generators: s3c3_action() },
        "c3-shear" => {
            let p = p.unwrap_or(3);
            NamedAction::Ring { p, generators: vec![shear_action(p)?] }
        }
        _ => {
            fixed_prime(5)?;
            NamedAction::Matrix(held_matrices())
        }
    })
}

fn all_fixed(ring: &RingModel, gens: &[RingAutomorphism], elems: &[Element<RingMonomial>]) -> bool {
    elems.iter().all(|e| gens.iter().all(|g| g.apply(ring, e) == *e))
}

/// Whether two sets of elements of degree `d` span the same subspace.
fn same_span(ring: &RingModel, d: usize, a: &[Element<RingMonomial>], b: &[Element<RingMonomial>]) -> bool {
    let both: Vec<_> = a.iter().chain(b).cloned().collect();
    let u = span_dim(ring, d, &both);
    u == span_dim(ring, d, a) && u == span_dim(ring, d, b)
}

fn by_degree(ring: &RingModel, elems: Vec<Element<RingMonomial>>, max_degree: usize) -> Vec<Vec<Element<RingMonomial>>> {
    let mut out = vec![Vec::new(); max_degree + 1];
    for e in elems {
        if let Ok(Some(d)) = ring.degree_of(&e) {
            if d <= max_degree {
                out[d].push(e);
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ShearRow {
    pub degree: usize,
    pub fixed: usize,
    pub generated: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShearReport {
    pub p: u32,
    /// Even degrees only.
    pub rows: Vec<ShearRow>,
    pub generators_fixed: bool,
    pub first_mismatch: Option<usize>,
    pub passed: bool,
}

/// Even-degree fixed subring of the `P_2(p)` model under `β ↦ β + α`, compared with the
/// subring generated by α, χ_i, ζ and `β^m(β^p − α^{p−1}β)`.
pub fn shear_check(p: u32, max_degree: usize) -> Result<ShearReport, RingError> {
    shear_check_with(p, max_degree, &[shear_action(p)?])
}

pub fn shear_check_with(p: u32, max_degree: usize, gens: &[RingAutomorphism]) -> Result<ShearReport, RingError> {
    check_degree(max_degree)?;
    let ring = RingModel::new(p, 1)?;
    let mut generators = vec![ring.alpha(), ring.zeta()];
    generators.extend((2..p).map(|i| ring.chi(i)));
    let norm = ring.term(1, 0, 0, p, false, false).sub(&ring.term(1, 0, p - 1, 1, false, false));
    let mut m = 0;
    while 2 * (p as usize + 1 + m) <= max_degree {
        generators.push(ring.mul(&ring.term(1, 0, 0, m as u32, false, false), &norm));
        m += 1;
    }
    let generated = subalgebra_basis(&ring, &generators, max_degree)?;
    let fixed = fixed_subring(&ring, gens, max_degree)?;
    let rows: Vec<ShearRow> = (0..=max_degree)
        .step_by(2)
        .map(|d| ShearRow {
            degree: d,
            fixed: fixed[d].len(),
            generated: generated[d].len(),
            equal: same_span(&ring, d, &fixed[d], &generated[d]),
        })
        .collect();
    let generators_fixed = all_fixed(&ring, gens, &generators);
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| r.degree);
    Ok(ShearReport { p, rows, generators_fixed, first_mismatch, passed: generators_fixed && first_mismatch.is_none() })
}

#[derive(Clone, Debug, Serialize)]
pub struct Held3Row {
    pub degree: usize,
    pub fixed: usize,
    pub listed: usize,
    pub generated: usize,
    pub listed_equal: bool,
    pub generated_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Held3Report {
    pub rows: Vec<Held3Row>,
    pub listed_fixed: bool,
    pub generators_fixed: bool,
    /// Every degree: fixed = span of `ζ^{2i}χ_2`, `ζ^{2i+1}(α^{2j+1}ν + β^{2j+1}μ)`,
    /// `ζ^{2i}(α^{2j} + β^{2j})`, `ζ^{2i}α^{2j}β²`.
    pub span_matches: bool,
    /// Degrees where that list falls short.
    pub span_missing: Vec<usize>,
    /// Every degree: fixed = span of the list together with `ζ^{2i+1}α^{2j}βμ` (j ≥ 1).
    pub completed_span_matches: bool,
    /// Every degree: fixed = subring generated by χ_2, α²+β², α²β², ζ(αν+βμ), ζ².
    pub generation_matches: bool,
    /// Whether ζ(αν−βμ), the sign-flipped generator, is fixed by [`d8_action`].
    pub minus_generator_fixed: bool,
    /// Degrees where the fixed space of [`d8_action_negating_zeta`] differs from the span
    /// of the list with `ζ^{2i+1}(α^{2j+1}ν − β^{2j+1}μ)`.
    pub negated_zeta_mismatches: Vec<usize>,
    /// Generation, completed span and invariance of everything listed.
    pub consistent: bool,
}

/// `ζ^{2i}χ_2`, `ζ^{2i+1}(α^{2j+1}ν + s·β^{2j+1}μ)`, `ζ^{2i}(α^{2j} + β^{2j})` and
/// `ζ^{2i}α^{2j}β²` (j ≥ 1), for the sign `s = ±1`; with `completed`, also
/// `ζ^{2i+1}α^{2j}βμ` (j ≥ 1).
fn d8_listed(ring: &RingModel, max_degree: usize, s: i64, completed: bool) -> Vec<Element<RingMonomial>> {
    let mut out = Vec::new();
    let top = max_degree as u32;
    for i in (0..=top / 6).step_by(2) {
        out.push(ring.mul(&ring.term(1, i, 0, 0, false, false), &ring.chi(2)));
        for j in (0..=top / 2).step_by(2) {
            out.push(ring.term(1, i, j, 0, false, false).add(&ring.term(1, i, 0, j, false, false)));
            if j > 0 {
                out.push(ring.term(1, i, j, 2, false, false));
            }
            let (z, k) = (i + 1, j + 1);
            out.push(ring.term(1, z, k, 0, false, true).add(&ring.term(s, z, 0, k, true, false)));
            if completed && j > 0 {
                out.push(ring.term(1, z, j, 1, true, false));
            }
        }
    }
    out
}

/// Fixed points of the `P_2(3)` model under `D_8` against the explicit spanning list and the
/// five generators.
pub fn held_3_part_check(max_degree: usize) -> Result<Held3Report, RingError> {
    check_degree(max_degree)?;
    let ring = RingModel::new(3, 1)?;
    let gens = d8_action();
    let fixed = fixed_subring(&ring, &gens, max_degree)?;
    let completed_all = d8_listed(&ring, max_degree, 1, true);
    let listed_fixed = all_fixed(&ring, &gens, &completed_all);
    let listed = by_degree(&ring, d8_listed(&ring, max_degree, 1, false), max_degree);
    let completed = by_degree(&ring, completed_all, max_degree);
    let twisted = |s: i64| ring.term(1, 1, 1, 0, false, true).add(&ring.term(s, 1, 0, 1, true, false));
    let generators = vec![
        ring.chi(2),
        ring.term(1, 0, 2, 0, false, false).add(&ring.term(1, 0, 0, 2, false, false)),
        ring.term(1, 0, 2, 2, false, false),
        twisted(1),
        ring.term(1, 2, 0, 0, false, false),
    ];
    let generators_fixed = all_fixed(&ring, &gens, &generators);
    let minus_generator_fixed = all_fixed(&ring, &gens, &[twisted(-1)]);
    let generated = subalgebra_basis(&ring, &generators, max_degree)?;
    let rows: Vec<Held3Row> = (0..=max_degree)
        .map(|d| Held3Row {
            degree: d,
            fixed: fixed[d].len(),
            listed: span_dim(&ring, d, &listed[d]),
            generated: generated[d].len(),
            listed_equal: same_span(&ring, d, &fixed[d], &listed[d]),
            generated_equal: same_span(&ring, d, &fixed[d], &generated[d]),
        })
        .collect();
    let negated = fixed_subring(&ring, &d8_action_negating_zeta(), max_degree)?;
    let minus_list = by_degree(&ring, d8_listed(&ring, max_degree, -1, false), max_degree);
    let negated_zeta_mismatches =
        (0..=max_degree).filter(|&d| !same_span(&ring, d, &negated[d], &minus_list[d])).collect();
    let span_missing: Vec<usize> = rows.iter().filter(|r| !r.listed_equal).map(|r| r.degree).collect();
    let completed_span_matches = (0..=max_degree).all(|d| same_span(&ring, d, &fixed[d], &completed[d]));
    let generation_matches = rows.iter().all(|r| r.generated_equal);
    Ok(Held3Report {
        rows,
        listed_fixed,
        generators_fixed,
        span_matches: span_missing.is_empty(),
        span_missing,
        completed_span_matches,
        generation_matches,
        minus_generator_fixed,
        negated_zeta_mismatches,
        consistent: listed_fixed && generators_fixed && completed_span_matches && generation_matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Held7Row {
    pub degree: usize,
    pub fixed: usize,
    pub generated: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipRow {
    pub element: String,
    pub degree: usize,
    pub image: String,
    pub in_subring: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Held7Report {
    pub lambda: u32,
    pub rows: Vec<Held7Row>,
    /// The fifteen elements are fixed by `S_3 × C_3`.
    pub generators_fixed: bool,
    /// The fifteen elements generate the fixed subring in every degree.
    pub generation_matches: bool,
    /// The twelve elements together with α³β³, (α⁵β − α²β⁴)μ and ζ(α⁵β² − α²β⁵) generate
    /// the same subring.
    pub twelve_extend: bool,
    /// Restrictions of the twelve elements to `K` and their membership in
    /// `S = ⟨ζ′ε, ζ′⁶ + ε⁴², δ⟩`.
    pub membership: Vec<MembershipRow>,
    pub restriction_multiplicative: bool,
    pub passed: bool,
}

fn named(ring: &RingModel, name: &str, e: Element<RingMonomial>) -> (String, Element<RingMonomial>) {
    debug_assert!(ring.degree_of(&e).is_ok());
    (name.to_string(), e)
}

/// The fifteen generators of the `S_3 × C_3`-fixed subring of the `P_2(7)` model.
pub fn fifteen_elements(ring: &RingModel) -> Vec<(String, Element<RingMonomial>)> {
    let t = |c, z, a, b, mu, nu| ring.term(c, z, a, b, mu, nu);
    let zchi = |z, i| ring.mul(&t(1, z, 0, 0, false, false), &ring.chi(i));
    vec![
        named(ring, "α³+β³", t(1, 0, 3, 0, false, false).add(&t(1, 0, 0, 3, false, false))),
        named(ring, "α³β³", t(1, 0, 3, 3, false, false)),
        named(ring, "χ6", ring.chi(6)),
        named(ring, "α⁵βμ−α²β⁴μ", t(1, 0, 5, 1, true, false).sub(&t(1, 0, 2, 4, true, false))),
        named(ring, "ζαμ", t(1, 1, 1, 0, true, false)),
        named(ring, "ζχ5", zchi(1, 5)),
        named(ring, "ζ(α⁵β²−α²β⁵)", t(1, 1, 5, 2, false, false).sub(&t(1, 1, 2, 5, false, false))),
        named(ring, "ζ²αβ", t(1, 2, 1, 1, false, false)),
        named(ring, "ζ²(α²ν−β²μ)", t(1, 2, 2, 0, false, true).sub(&t(1, 2, 0, 2, true, false))),
        named(ring, "ζ²χ4", zchi(2, 4)),
        named(ring, "ζ³χ3", zchi(3, 3)),
        named(ring, "ζ³(α³−β³)", t(1, 3, 3, 0, false, false).sub(&t(1, 3, 0, 3, false, false))),
        named(ring, "ζ⁴χ2", zchi(4, 2)),
        named(ring, "ζ⁵(α²ν+β²μ)", t(1, 5, 2, 0, false, true).add(&t(1, 5, 0, 2, true, false))),
        named(ring, "ζ⁶", t(1, 6, 0, 0, false, false)),
    ]
}

/// The twelve generators of the image of the 7-local cohomology of the whole group.
pub fn twelve_elements(ring: &RingModel) -> Vec<(String, Element<RingMonomial>)> {
    let fifteen = fifteen_elements(ring);
    let get = |name: &str| fifteen.iter().find(|e| e.0 == name).expect("listed").1.clone();
    let t = |c, z, a, b| ring.term(c, z, a, b, false, false);
    vec![
        named(ring, "α³+β³", get("α³+β³")),
        named(ring, "χ6−α³β³", ring.chi(6).sub(&t(1, 0, 3, 3))),
        named(ring, "ζαμ", get("ζαμ")),
        named(ring, "ζχ5", get("ζχ5")),
        named(ring, "ζ²αβ", get("ζ²αβ")),
        named(ring, "ζ²(α²ν−β²μ)", get("ζ²(α²ν−β²μ)")),
        named(ring, "ζ²χ4", get("ζ²χ4")),
        named(ring, "ζ³χ3", get("ζ³χ3")),
        named(ring, "ζ³(α³−β³)", get("ζ³(α³−β³)")),
        named(ring, "ζ⁴χ2", get("ζ⁴χ2")),
        named(ring, "ζ⁵(α²ν+β²μ)", get("ζ⁵(α²ν+β²μ)")),
        named(ring, "ζ⁶−α³⁹β³", t(1, 6, 0, 0).sub(&t(1, 0, 39, 3))),
    ]
}

/// `S_3 × C_3`-fixed subring of the `P_2(7)` model through `max_degree` against the fifteen
/// elements, and restriction of the twelve elements into `S ⊂ H^*(K)`.
pub fn held_7_part_check(max_degree: usize, lambda: u32) -> Result<Held7Report, RingError> {
    check_degree(max_degree)?;
    let ring = RingModel::new(7, lambda)?;
    let gens = s3c3_action();
    let fixed = fixed_subring(&ring, &gens, max_degree)?;
    let fifteen: Vec<_> = fifteen_elements(&ring).into_iter().map(|e| e.1).collect();
    let generators_fixed = all_fixed(&ring, &gens, &fifteen);
    let generated = subalgebra_basis(&ring, &fifteen, max_degree)?;
    let rows: Vec<Held7Row> = (0..=max_degree)
        .map(|d| Held7Row {
            degree: d,
            fixed: fixed[d].len(),
            generated: generated[d].len(),
            equal: same_span(&ring, d, &fixed[d], &generated[d]),
        })
        .collect();
    let generation_matches = rows.iter().all(|r| r.equal);

    let twelve = twelve_elements(&ring);
    let mut extended: Vec<_> = twelve.iter().map(|e| e.1.clone()).collect();
    let f = fifteen_elements(&ring);
    for name in ["α³β³", "α⁵βμ−α²β⁴μ", "ζ(α⁵β²−α²β⁵)"] {
        extended.push(f.iter().find(|e| e.0 == name).expect("listed").1.clone());
    }
    let ext_basis = subalgebra_basis(&ring, &extended, max_degree)?;
    let twelve_extend = (0..=max_degree).all(|d| same_span(&ring, d, &generated[d], &ext_basis[d]));

    let res = RestrictionMap::p2_7_to_k();
    let restriction_multiplicative = res.check_multiplicative(&ring, 300, 60, 7).is_ok();
    let t = &res.target;
    let s_gens = vec![
        t.poly(&[(vec![1, 1], 1)]),
        t.poly(&[(vec![6, 0], 1), (vec![0, 42], 1)]),
        t.ext(0),
    ];
    let top = twelve.iter().map(|e| ring.degree_of(&e.1).unwrap().unwrap()).max().unwrap();
    let s = subalgebra_basis(t, &s_gens, top)?;
    let membership: Vec<MembershipRow> = twelve
        .iter()
        .map(|(name, e)| {
            let d = ring.degree_of(e).unwrap().unwrap();
            let image = res.apply(e);
            MembershipRow {
                element: name.clone(),
                degree: d,
                image: format_target(&image, &["ζ′", "ε"], &["δ"]),
                in_subring: in_span(t, d, &s[d], &image),
            }
        })
        .collect();
    let passed = generators_fixed
        && generation_matches
        && twelve_extend
        && restriction_multiplicative
        && membership.iter().all(|m| m.in_subring);
    Ok(Held7Report {
        lambda: ring.lambda(),
        rows,
        generators_fixed,
        generation_matches,
        twelve_extend,
        membership,
        restriction_multiplicative,
        passed,
    })
}

/// Readable list of a fixed-subring basis in one degree.
pub fn describe_basis(elems: &[Element<RingMonomial>]) -> Vec<String> {
    elems.iter().map(format_element).collect()
}
