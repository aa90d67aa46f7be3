//! Dickson invariants of `SL_2(p)` and `GL_2(p)`, and the 5-local invariants of the Held
//! group's normaliser acting on `H^*((C_5)^2)`.

use super::algebra::{ExteriorCharacter, GradedAlgebra, MatrixAction, Monomial};
use super::{fixed_subspace, span_dim, subalgebra_basis, subalgebra_dims, Element, GradedRing, InvariantError, LinearAction};
use serde::Serialize;

/// `a = x^p x' - x'^p x` and `b = Σ_{i=0}^{p} x^{(p-1)(p-i)} x'^{(p-1)i}` in `F_p[x, x']`.
pub fn dickson_pair(p: u32) -> (GradedAlgebra, Element<Monomial>, Element<Monomial>) {
    let alg = GradedAlgebra::polynomial(p, 2).expect("prime");
    let a = alg.poly(&[(vec![p, 1], 1), (vec![1, p], -1)]);
    let b = alg.poly(&(0..=p).map(|i| (vec![(p - 1) * (p - i), (p - 1) * i], 1)).collect::<Vec<_>>());
    (alg, a, b)
}

fn primitive_root(p: u32) -> u32 {
    (2..p)
        .find(|&g| (1..p - 1).all(|k| (0..k).fold(1u64, |acc, _| acc * g as u64 % p as u64) != 1))
        .unwrap_or(1)
}

/// `SL_2(p)` by its two elementary transvections.
pub fn sl2_action(p: u32) -> MatrixAction {
    MatrixAction::new(p, vec![vec![vec![1, 1], vec![0, 1]], vec![vec![1, 0], vec![1, 1]]], vec![]).expect("valid")
}

/// `GL_2(p)`: `SL_2(p)` and `diag(1, λ)` for a primitive root `λ`.
pub fn gl2_action(p: u32) -> MatrixAction {
    let mut m = sl2_action(p);
    m.matrices.push(vec![vec![1, 0], vec![0, primitive_root(p)]]);
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct DicksonRow {
    pub degree: usize,
    pub sl_fixed: usize,
    pub sl_generated: usize,
    pub gl_fixed: usize,
    pub gl_generated: usize,
    /// The generated subspaces coincide with the fixed subspaces (not just in dimension).
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DicksonReport {
    pub p: u32,
    pub rows: Vec<DicksonRow>,
    /// `a` and `b` are `SL_2` invariant and `a^{p-1}`, `b` are `GL_2` invariant.
    pub generators_invariant: bool,
    pub first_mismatch: Option<usize>,
    pub passed: bool,
}

/// Largest degree accepted by the Dickson check.
pub const DICKSON_MAX_DEGREE: usize = 60;

pub fn dickson_check(p: u32, max_degree: usize) -> Result<DicksonReport, InvariantError> {
    let (_, a, b) = dickson_pair(p);
    dickson_check_with(p, max_degree, &a, &b)
}

/// Compares fixed dimensions of `SL_2(p)` and `GL_2(p)` with the subalgebras generated by
/// `{a, b}` and `{a^{p-1}, b}` in every degree up to `max_degree`.
pub fn dickson_check_with(p: u32, max_degree: usize, a: &Element<Monomial>, b: &Element<Monomial>) -> Result<DicksonReport, InvariantError> {
    if !(3..=7).contains(&p) || !crate::linalg::is_prime(p as u64) {
        return Err(InvariantError::Invalid(format!("Dickson check supports p = 3, 5, 7, not {p}")));
    }
    if max_degree > DICKSON_MAX_DEGREE {
        return Err(InvariantError::Infeasible { degree: max_degree, limit: DICKSON_MAX_DEGREE });
    }
    let alg = GradedAlgebra::polynomial(p, 2)?;
    let sl = sl2_action(p).generators();
    let gl = gl2_action(p).generators();
    let ap = alg.pow(a, p as usize - 1);
    let sl_gens = vec![a.clone(), b.clone()];
    let gl_gens = vec![ap.clone(), b.clone()];
    let invariant = |gens: &[super::algebra::MatrixGenerator], e: &Element<Monomial>| gens.iter().all(|g| g.apply(&alg, e) == *e);
    let generators_invariant = invariant(&sl, a) && invariant(&sl, b) && invariant(&gl, &ap) && invariant(&gl, b);
    let sl_sub = subalgebra_basis(&alg, &sl_gens, max_degree)?;
    let gl_sub = subalgebra_basis(&alg, &gl_gens, max_degree)?;
    let same = |d: usize, a: &[Element<Monomial>], b: &[Element<Monomial>]| {
        let union: Vec<Element<Monomial>> = a.iter().chain(b).cloned().collect();
        a.len() == b.len() && span_dim(&alg, d, &union) == a.len()
    };
    let rows: Vec<DicksonRow> = (0..=max_degree)
        .map(|d| {
            let slf = fixed_subspace(&alg, &sl, d);
            let glf = fixed_subspace(&alg, &gl, d);
            DicksonRow {
                degree: d,
                sl_fixed: slf.len(),
                sl_generated: sl_sub[d].len(),
                gl_fixed: glf.len(),
                gl_generated: gl_sub[d].len(),
                equal: same(d, &slf, &sl_sub[d]) && same(d, &glf, &gl_sub[d]),
            }
        })
        .collect();
    let first_mismatch = rows.iter().find(|r| !r.equal).map(|r| r.degree);
    let passed = generators_invariant && first_mismatch.is_none();
    Ok(DicksonReport { p, rows, generators_invariant, first_mismatch, passed })
}

/// `M_1..M_4` generating `C_4 A_4 ≤ GL_2(5)`, with the degree-3 exterior class twisted by the
/// determinant.
pub fn held_matrices() -> MatrixAction {
    MatrixAction::new(
        5,
        vec![
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![0, 1], vec![-1, 0]],
            vec![vec![1, 1], vec![2, -2]],
        ],
        vec![ExteriorCharacter::DetPower(1)],
    )
    .expect("valid matrices")
}

#[derive(Clone, Debug, Serialize)]
pub struct HeldRow {
    pub degree: usize,
    pub fixed: usize,
    pub presented: usize,
    pub generated: usize,
}

/// Explicit generators `β' = u_0 β + u_1 γ`, `γ' = v_0 β + v_1 γ`, `α' = λ α` satisfying
/// `γ'^2 = 3(β'^2 + α'^3)`, where `α, β, γ` are the computed invariant bases in degrees 16
/// and 24.
#[derive(Clone, Debug, Serialize)]
pub struct RelationWitness {
    pub lambda: u32,
    pub beta: [u32; 2],
    pub gamma: [u32; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct HeldReport {
    pub group_order: usize,
    pub rows: Vec<HeldRow>,
    pub relation: Option<RelationWitness>,
    pub printed_relation: &'static str,
    /// Degrees of the two sides of the printed relation; they differ.
    pub printed_relation_degrees: (usize, usize),
    pub used_relation: &'static str,
    pub passed: bool,
}

pub const HELD_MAX_DEGREE: usize = 120;

/// Fixed points of `F_5[δ, δ'] ⊗ Λ[ε]` (degrees 2, 2, 3) under `M_1..M_4`, compared degree by
/// degree with `F_5[α, β, γ]/(γ^2 - 3β^2 - 3α^3) ⊗ Λ[χ]` (degrees 16, 24, 24, 15), with the
/// subalgebra generated by the computed low-degree invariants, and with the relation.
pub fn held_5_part_check(max_degree: usize) -> Result<HeldReport, InvariantError> {
    if max_degree > HELD_MAX_DEGREE {
        return Err(InvariantError::Infeasible { degree: max_degree, limit: HELD_MAX_DEGREE });
    }
    let act = held_matrices();
    let group_order = act.group_order();
    let gens = act.generators();
    let alg = GradedAlgebra::new(5, vec![2, 2], vec![3])?;
    let fixed: Vec<Vec<Element<Monomial>>> = (0..=max_degree.max(24)).map(|d| fixed_subspace(&alg, &gens, d)).collect();

    let presented = presented_dims(max_degree)?;

    // generators of the invariant ring from its low-degree pieces
    let (alpha, pair, chi) = match (&fixed[16][..], &fixed[24][..], &fixed[15][..]) {
        ([a], [b, c], [x]) => (a.clone(), [b.clone(), c.clone()], x.clone()),
        _ => {
            let rows = rows_without_generation(&fixed, &presented, max_degree);
            return Ok(report(group_order, rows, None));
        }
    };
    let generated = subalgebra_dims(&alg, &[alpha.clone(), pair[0].clone(), pair[1].clone(), chi], max_degree)?;
    let rows = (0..=max_degree)
        .map(|d| HeldRow { degree: d, fixed: fixed[d].len(), presented: presented[d], generated: generated[d] })
        .collect();
    let relation = find_relation(&alg, &alpha, &pair);
    Ok(report(group_order, rows, relation))
}

fn report(group_order: usize, rows: Vec<HeldRow>, relation: Option<RelationWitness>) -> HeldReport {
    let passed = group_order == 48
        && relation.is_some()
        && rows.iter().all(|r| r.fixed == r.presented && r.fixed == r.generated);
    HeldReport {
        group_order,
        rows,
        relation,
        printed_relation: "γ² = 3(β² + γ³)",
        printed_relation_degrees: (48, 72),
        used_relation: "γ² = 3(β² + α³)",
        passed,
    }
}

fn rows_without_generation(fixed: &[Vec<Element<Monomial>>], presented: &[usize], max_degree: usize) -> Vec<HeldRow> {
    (0..=max_degree)
        .map(|d| HeldRow { degree: d, fixed: fixed[d].len(), presented: presented[d], generated: 0 })
        .collect()
}

/// Dimensions of `F_5[α, β, γ]/(γ^2 - 3β^2 - 3α^3) ⊗ Λ[χ]`: each component minus the
/// image of multiplication by the relation.
fn presented_dims(max_degree: usize) -> Result<Vec<usize>, InvariantError> {
    let ring = GradedAlgebra::new(5, vec![16, 24, 24], vec![15])?;
    let (a, b, c) = (ring.var(0), ring.var(1), ring.var(2));
    let rel = ring.pow(&c, 2).sub(&ring.pow(&b, 2).scale(3)).sub(&ring.pow(&a, 3).scale(3));
    Ok((0..=max_degree)
        .map(|d| {
            let total = ring.basis(d).len();
            if d < 48 {
                return total;
            }
            let image: Vec<Element<Monomial>> = ring
                .basis(d - 48)
                .into_iter()
                .map(|m| ring.mul(&rel, &Element::monomial(5, m)))
                .collect();
            total - span_dim(&ring, d, &image)
        })
        .collect())
}

fn find_relation(alg: &GradedAlgebra, alpha: &Element<Monomial>, pair: &[Element<Monomial>; 2]) -> Option<RelationWitness> {
    let a3 = alg.pow(alpha, 3);
    let bb = alg.mul(&pair[0], &pair[0]);
    let bc = alg.mul(&pair[0], &pair[1]);
    let cc = alg.mul(&pair[1], &pair[1]);
    // (u_0 β + u_1 γ)^2 in terms of β^2, βγ, γ^2
    let square = |u: [u32; 2]| {
        let (x, y) = (u[0] as i64, u[1] as i64);
        bb.scale(x * x).add(&bc.scale(2 * x * y)).add(&cc.scale(y * y))
    };
    for lambda in 1..5u32 {
        let rhs_alpha = a3.scale(3 * (lambda as i64).pow(3));
        for u in (0..25).map(|k| [k / 5, k % 5]) {
            let beta_sq = square(u);
            for v in (0..25).map(|k| [k / 5, k % 5]) {
                if (u[0] as i64 * v[1] as i64 - u[1] as i64 * v[0] as i64).rem_euclid(5) == 0 {
                    continue;
                }
                if square(v) == beta_sq.scale(3).add(&rhs_alpha) {
                    return Some(RelationWitness { lambda, beta: u, gamma: v });
                }
            }
        }
    }
    None
}
