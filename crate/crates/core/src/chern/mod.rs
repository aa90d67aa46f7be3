//! Characters over cyclotomic fields and the restriction of Chern classes to subgroups of
//! prime order, leading to the invariant `pc(G) = 2 lcm{m(i)}`.
//!
//! For `i: C_p → G` and `u` a generator of `H^2(C_p; Z)`, `m(i)` is the largest `m` with
//! the image of the Chern subring inside `Z[u^m]/(p u^m)`. The total Chern class of a
//! representation restricted to `C_p = ⟨g⟩` is `∏_j (1 + j u)^{a_j}` where `a_j` is the
//! multiplicity of the eigenvalue `ζ_p^j` of `g`.

mod characters;
mod cyclotomic;

pub use characters::{irreducible_characters, irreducible_characters_from, ClassFunction, Classes, MAX_ENUMERATED_ORDER};
pub use cyclotomic::{cyclotomic_polynomial, totient, Cyclotomic};

use crate::groups::{order_p_subgroup_classes, FiniteGroup, GroupError, Subgroup};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChernError {
    #[error("group of order {order} exceeds the subgroup enumeration limit {limit}; supply induction sources")]
    TooLarge { order: usize, limit: usize },
    #[error("induced characters are incomplete: squared degrees sum to {degree_square_sum}, not {order}")]
    Incomplete { degree_square_sum: usize, order: usize },
    #[error("characters {0} and {1} are not orthonormal")]
    NotOrthonormal(usize, usize),
    #[error("eigenvalue multiplicity is not a non-negative integer: {0}")]
    Multiplicity(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Restriction of the Chern subring to one subgroup of order p.
#[derive(Clone, Debug)]
pub struct ChernReport {
    pub subgroup: Subgroup,
    /// The element `g` whose eigenvalue `ζ_p` defines `u`.
    pub generator: usize,
    /// Per character, the multiplicities `a_0..a_{p-1}` of `ζ_p^j` on `g`.
    pub multiplicities: Vec<Vec<u64>>,
    /// Powers of `u` with a non-zero coefficient in some restricted total Chern class.
    pub exponents: Vec<usize>,
    /// gcd of `exponents`; `None` when the image is trivial in positive degrees.
    pub m: Option<usize>,
}

/// `pc(G)` at the prime `p` with its per-class data.
#[derive(Clone, Debug)]
pub struct PcReport {
    pub p: u64,
    pub pc: u64,
    /// `lcm{2 m(i)}`, the alternative normalization.
    pub lcm_of_doubled: u64,
    pub per_class: Vec<ChernReport>,
}

/// Multiplicities of the eigenvalues `ζ_p^j` of `g` on a character:
/// `a_j = (1/p) Σ_k χ(g^k) ζ_p^{-jk}`.
pub fn eigenvalue_multiplicities(chi: &ClassFunction, g: usize, p: u64) -> Result<Vec<u64>, ChernError> {
    let group = chi.group();
    let n = group.exponent();
    let p_us = p as usize;
    assert_eq!(n % p_us, 0, "p must divide the exponent");
    let step = (n / p_us) as i64;
    let mut out = Vec::with_capacity(p_us);
    for j in 0..p as i64 {
        let mut s = Cyclotomic::zero(n);
        for k in 0..p as i64 {
            let root = Cyclotomic::root(n, -j * k * step);
            s = s.add(&chi.at(group.pow(g, k)).mul(&root));
        }
        let a = s
            .scale(&BigRational::new(1.into(), (p as i64).into()))
            .to_rational()
            .filter(|a| a.is_integer() && !a.is_negative())
            .ok_or_else(|| ChernError::Multiplicity(s.to_string()))?;
        out.push(a.to_integer().to_u64().expect("multiplicity fits"));
    }
    if out.iter().sum::<u64>() != chi.degree() as u64 {
        return Err(ChernError::Multiplicity(format!("{out:?} does not sum to the degree")));
    }
    Ok(out)
}

/// Coefficients mod p of `∏_j (1 + j u)^{a_j}`.
pub fn restricted_chern_polynomial(mult: &[u64], p: u64) -> Vec<u64> {
    let mut poly = vec![1u64];
    for (j, &a) in mult.iter().enumerate() {
        for _ in 0..a {
            let mut next = vec![0u64; poly.len() + 1];
            for (i, &c) in poly.iter().enumerate() {
                next[i] = (next[i] + c) % p;
                next[i + 1] = (next[i + 1] + c * j as u64) % p;
            }
            poly = next;
        }
    }
    while poly.len() > 1 && poly.last() == Some(&0) {
        poly.pop();
    }
    poly
}

/// The per-subgroup part of `pc`. Since `c(ρ ⊕ σ) = c(ρ) c(σ)` and degrees add under
/// products, the gcd over the Chern subring equals the gcd over irreducible characters.
pub fn chern_exponents_at(chars: &[ClassFunction], c: &Subgroup, p: u64) -> Result<ChernReport, ChernError> {
    let generator = *c.members.iter().find(|&&x| x != 0).expect("subgroup of order p");
    let mut multiplicities = Vec::with_capacity(chars.len());
    let mut exponents = std::collections::BTreeSet::new();
    for chi in chars {
        let mult = eigenvalue_multiplicities(chi, generator, p)?;
        let poly = restricted_chern_polynomial(&mult, p);
        exponents.extend(poly.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).map(|(i, _)| i));
        multiplicities.push(mult);
    }
    let exponents: Vec<usize> = exponents.into_iter().collect();
    let m = exponents.iter().copied().reduce(|a, b| a.gcd(&b));
    Ok(ChernReport { subgroup: c.clone(), generator, multiplicities, exponents, m })
}

/// `pc(G)` from a given list of irreducible characters.
pub fn pc_with(chars: &[ClassFunction], p: u64) -> Result<PcReport, ChernError> {
    let group = chars[0].group();
    let per_class = order_p_subgroup_classes(group, p)?
        .iter()
        .map(|c| chern_exponents_at(chars, c, p))
        .collect::<Result<Vec<_>, _>>()?;
    let ms = per_class.iter().filter_map(|r| r.m.map(|m| m as u64));
    let l = ms.clone().fold(1u64, |a, b| a.lcm(&b));
    let lcm_of_doubled = ms.fold(1u64, |a, b| a.lcm(&(2 * b)));
    Ok(PcReport { p, pc: 2 * l, lcm_of_doubled, per_class })
}

/// `pc(G) = 2 lcm{m(i) | i: C_p → G}`, one `i` per conjugacy class of subgroups of order p.
pub fn pc(group: &Arc<FiniteGroup>, p: u64) -> Result<PcReport, ChernError> {
    order_p_subgroup_classes(group, p)?;
    pc_with(&irreducible_characters(group)?, p)
}
