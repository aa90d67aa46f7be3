//! Graded algebras over F_p, fixed subspaces of linear actions on them, and degreewise
//! closures of subalgebras.

mod algebra;
mod checks;

pub use algebra::{ExteriorCharacter, GradedAlgebra, MatrixAction, MatrixGenerator, Monomial};
pub use checks::{dickson_check, gl2_action, sl2_action, RelationWitness, DICKSON_MAX_DEGREE, HELD_MAX_DEGREE, dickson_check_with, dickson_pair, held_5_part_check, held_matrices, DicksonReport, DicksonRow, HeldReport, HeldRow};

use crate::linalg::{DenseFp, FpEchelon};
use std::collections::BTreeMap;
use std::fmt::Debug;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("invalid algebra or action: {0}")]
    Invalid(String),
    #[error("degree {degree} exceeds the supported bound {limit}")]
    Infeasible { degree: usize, limit: usize },
}

/// A finite linear combination of basis monomials with coefficients in F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element<M: Ord> {
    p: u32,
    terms: BTreeMap<M, u32>,
}

impl<M: Ord + Clone> Element<M> {
    pub fn zero(p: u32) -> Self {
        Element { p, terms: BTreeMap::new() }
    }

    pub fn monomial(p: u32, m: M) -> Self {
        Self::from_terms(p, [(m, 1i64)])
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (M, i64)>) -> Self {
        let mut e = Self::zero(p);
        for (m, c) in terms {
            e.add_term(m, c.rem_euclid(p as i64) as u32);
        }
        e
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<M, u32> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &M) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: M, c: u32) {
        if c % self.p == 0 {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert(0);
        *entry = (*entry + c % self.p) % self.p;
        if *entry == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        let c = c.rem_euclid(self.p as i64) as u64;
        Element {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, &v)| (m.clone(), (v as u64 * c % self.p as u64) as u32))
                .filter(|e| e.1 != 0)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    /// Coordinates in a sorted monomial basis.
    pub fn coordinates(&self, basis: &[M]) -> Vec<(u32, u32)> {
        self.terms
            .iter()
            .map(|(m, &c)| (basis.binary_search(m).expect("monomial in basis") as u32, c))
            .collect()
    }

    pub fn from_coordinates(p: u32, basis: &[M], coords: &[(u32, u32)]) -> Self {
        Self::from_terms(p, coords.iter().map(|&(i, c)| (basis[i as usize].clone(), c as i64)))
    }
}

/// A graded F_p-algebra with a monomial basis in each degree.
pub trait GradedRing {
    type Mono: Clone + Ord + Debug;

    fn prime(&self) -> u32;

    /// Sorted monomial basis of the degree-`d` component.
    fn basis(&self, d: usize) -> Vec<Self::Mono>;

    fn degree(&self, m: &Self::Mono) -> usize;

    fn one(&self) -> Self::Mono;

    fn mul_monomials(&self, a: &Self::Mono, b: &Self::Mono) -> Element<Self::Mono>;

    fn mul(&self, a: &Element<Self::Mono>, b: &Element<Self::Mono>) -> Element<Self::Mono> {
        let p = self.prime() as u64;
        let mut out = Element::zero(self.prime());
        for (ma, &ca) in a.terms() {
            for (mb, &cb) in b.terms() {
                let c = ca as u64 * cb as u64 % p;
                for (m, &v) in self.mul_monomials(ma, mb).terms() {
                    out.add_term(m.clone(), (c * v as u64 % p) as u32);
                }
            }
        }
        out
    }

    fn pow(&self, a: &Element<Self::Mono>, k: usize) -> Element<Self::Mono> {
        let mut out = Element::monomial(self.prime(), self.one());
        for _ in 0..k {
            out = self.mul(&out, a);
        }
        out
    }

    /// Degree of a non-zero homogeneous element.
    fn degree_of(&self, e: &Element<Self::Mono>) -> Result<Option<usize>, InvariantError> {
        let mut degs = e.terms().keys().map(|m| self.degree(m));
        let Some(d) = degs.next() else { return Ok(None) };
        if degs.all(|x| x == d) {
            Ok(Some(d))
        } else {
            Err(InvariantError::NotHomogeneous)
        }
    }
}

/// A degree-preserving linear map, given on monomials.
pub trait LinearAction<R: GradedRing> {
    fn apply_monomial(&self, ring: &R, m: &R::Mono) -> Element<R::Mono>;

    fn apply(&self, ring: &R, e: &Element<R::Mono>) -> Element<R::Mono> {
        let mut out = Element::zero(ring.prime());
        for (m, &c) in e.terms() {
            out = out.add(&self.apply_monomial(ring, m).scale(c as i64));
        }
        out
    }
}

/// Matrix of `g - 1` on the degree-`d` basis, one column per basis monomial.
fn action_minus_identity<R: GradedRing, A: LinearAction<R>>(ring: &R, g: &A, basis: &[R::Mono]) -> DenseFp {
    let p = ring.prime();
    let n = basis.len();
    let mut m = DenseFp::zeros(p, n, n);
    for (j, mono) in basis.iter().enumerate() {
        let img = g.apply_monomial(ring, mono).sub(&Element::monomial(p, mono.clone()));
        for (i, c) in img.coordinates(basis) {
            m.set(i as usize, j, c);
        }
    }
    m
}

/// Basis of the vectors of degree `d` fixed by every action in `gens`: the kernel of the
/// stacked `g - 1`.
pub fn fixed_subspace<R: GradedRing, A: LinearAction<R>>(ring: &R, gens: &[A], d: usize) -> Vec<Element<R::Mono>> {
    let basis = ring.basis(d);
    if basis.is_empty() {
        return Vec::new();
    }
    let p = ring.prime();
    let mut stacked = DenseFp::zeros(p, 0, basis.len());
    for g in gens {
        stacked.stack(&action_minus_identity(ring, g, &basis));
    }
    stacked
        .kernel()
        .into_iter()
        .map(|v| {
            let coords: Vec<(u32, u32)> =
                v.iter().enumerate().filter(|e| *e.1 != 0).map(|(i, &c)| (i as u32, c)).collect();
            Element::from_coordinates(p, &basis, &coords)
        })
        .collect()
}

/// Per degree `0..=max_degree`, a basis of the span of all products of `gens`.
pub fn subalgebra_basis<R: GradedRing>(
    ring: &R,
    gens: &[Element<R::Mono>],
    max_degree: usize,
) -> Result<Vec<Vec<Element<R::Mono>>>, InvariantError> {
    let p = ring.prime();
    let mut graded = Vec::with_capacity(gens.len());
    for g in gens {
        if let Some(d) = ring.degree_of(g)? {
            if d == 0 {
                return Err(InvariantError::Invalid("generators must have positive degree".into()));
            }
            graded.push((d, g));
        }
    }
    let mut out: Vec<Vec<Element<R::Mono>>> = vec![vec![Element::monomial(p, ring.one())]];
    for d in 1..=max_degree {
        let basis = ring.basis(d);
        let mut ech = FpEchelon::new(basis.len(), p, false);
        let mut span = Vec::new();
        for &(e, g) in &graded {
            if e > d {
                continue;
            }
            for s in &out[d - e] {
                let prod = ring.mul(g, s);
                if ech.insert(&prod.coordinates(&basis)) {
                    span.push(prod);
                }
            }
        }
        out.push(span);
    }
    Ok(out)
}

/// Dimension per degree `0..=max_degree` of the subalgebra generated by `gens`.
pub fn subalgebra_dims<R: GradedRing>(ring: &R, gens: &[Element<R::Mono>], max_degree: usize) -> Result<Vec<usize>, InvariantError> {
    Ok(subalgebra_basis(ring, gens, max_degree)?.iter().map(|b| b.len()).collect())
}

/// Dimension of the span of homogeneous elements of degree `d`.
pub fn span_dim<R: GradedRing>(ring: &R, d: usize, elems: &[Element<R::Mono>]) -> usize {
    let basis = ring.basis(d);
    let mut ech = FpEchelon::new(basis.len(), ring.prime(), false);
    elems.iter().filter(|e| ech.insert(&e.coordinates(&basis))).count()
}

/// Whether `target` lies in the span of `elems`, all of degree `d`.
pub fn in_span<R: GradedRing>(ring: &R, d: usize, elems: &[Element<R::Mono>], target: &Element<R::Mono>) -> bool {
    let basis = ring.basis(d);
    let mut ech = FpEchelon::new(basis.len(), ring.prime(), false);
    for e in elems {
        ech.insert(&e.coordinates(&basis));
    }
    ech.reduce(&target.coordinates(&basis)).is_empty()
}
