use super::complex::moore_raw;
use super::{
    barycentric_subdivision, cohomology_from_homology, davis_quotient, euler_report, homology, racg_from_complex,
    torsion_free_coloring, DavisError, EulerReport, HomologyGroup, SimplicialComplex,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

/// Extra boundary refinements tried before giving up on a Moore-space triangulation.
const MAX_REFINEMENTS: u32 = 3;

/// A full triangulation of the space obtained by attaching a disc to a circle along
/// `z ↦ z^n`, certified to have homology `(Z, Z/n, 0)`. It is the barycentric subdivision
/// of a smaller triangulation, so it carries the 3-colouring by dimension.
pub fn moore_complex(n: usize) -> Result<SimplicialComplex, DavisError> {
    if n < 2 {
        return Err(DavisError::Invalid(format!("Moore complex needs n ≥ 2, got {n}")));
    }
    let raw = (0..=MAX_REFINEMENTS)
        .find_map(|r| moore_raw(n, r))
        .ok_or_else(|| DavisError::Construction(format!("no simplicial triangulation found for n = {n}")))?;
    let k = barycentric_subdivision(&raw)?;
    let h = homology(&k);
    if !is_moore_homology(&h, n) {
        let shown: Vec<String> = h.iter().map(ToString::to_string).collect();
        return Err(DavisError::CrossCheck(format!("Moore complex for n = {n} has homology {shown:?}")));
    }
    Ok(k)
}

pub fn is_moore_homology(h: &[HomologyGroup], n: usize) -> bool {
    h.len() == 3 && h[0] == HomologyGroup::free(1) && h[1] == HomologyGroup::cyclic(n as u64) && h[2].is_zero()
}

/// Homology of the Davis quotient for a right-angled Coxeter group whose nerve is the
/// Moore complex for `n`.
#[derive(Clone, Debug, Serialize)]
pub struct BestvinaReport {
    pub n: usize,
    pub moore_counts: Vec<usize>,
    pub moore_homology: Vec<String>,
    pub moore_certified: bool,
    pub colors: usize,
    pub quotient_counts: Vec<usize>,
    pub homology: Vec<HomologyGroup>,
    pub homology_text: Vec<String>,
    pub h0_is_z: bool,
    pub vanishes_above_3: bool,
    pub h3_cohomology: HomologyGroup,
    #[serde(serialize_with = "as_string")]
    pub h3_exponent: BigInt,
    pub h3_exponent_divides_n: bool,
    /// Expected 0; recorded, not implied by any theorem used here.
    pub rank_h3: usize,
    pub euler: EulerReport,
    pub passed: bool,
}

fn as_string<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bestvina(n: usize) -> Result<BestvinaReport, DavisError> {
    let k = moore_complex(n)?;
    let moore_h = homology(&k);
    let gp = racg_from_complex(&k)?;
    let coloring = torsion_free_coloring(&k);
    let q = davis_quotient(&gp, &coloring)?;
    let h = homology(&q.complex);
    let h3 = cohomology_from_homology(&h, 3);
    let exponent = h3.torsion_exponent();
    let divides = (BigInt::from(n) % &exponent).is_zero();
    let h0_is_z = h.first() == Some(&HomologyGroup::free(1));
    let vanishes_above_3 = h.iter().skip(4).all(HomologyGroup::is_zero);
    let euler = euler_report(&k, Some(&q));
    let passed = h0_is_z && vanishes_above_3 && divides && euler.consistent;
    Ok(BestvinaReport {
        n,
        moore_counts: k.counts(),
        moore_homology: moore_h.iter().map(ToString::to_string).collect(),
        moore_certified: is_moore_homology(&moore_h, n),
        colors: coloring.k,
        quotient_counts: q.complex.counts(),
        homology_text: h.iter().map(ToString::to_string).collect(),
        rank_h3: h.get(3).map_or(0, |g| g.rank),
        homology: h,
        h0_is_z,
        vanishes_above_3,
        h3_exponent: exponent.clone(),
        h3_exponent_divides_n: divides && exponent.gcd(&BigInt::from(n)) == exponent,
        h3_cohomology: h3,
        euler,
        passed,
    })
}
