//! The free graded-commutative algebra `F_p[x_1..x_n] ⊗ Λ[e_1..e_k]` and matrix actions on it.

use super::{Element, GradedRing, InvariantError, LinearAction};
use crate::linalg::is_prime;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};

/// Polynomial exponents and a set of exterior generators (bit i for `e_i`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub poly: Vec<u32>,
    pub ext: u32,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    p: u32,
    poly_degrees: Vec<usize>,
    ext_degrees: Vec<usize>,
}

impl GradedAlgebra {
    pub fn new(p: u32, poly_degrees: Vec<usize>, ext_degrees: Vec<usize>) -> Result<Self, InvariantError> {
        if !is_prime(p as u64) {
            return Err(InvariantError::Invalid(format!("{p} is not prime")));
        }
        if poly_degrees.iter().chain(&ext_degrees).any(|&d| d == 0) || ext_degrees.len() > 31 {
            return Err(InvariantError::Invalid("generators need positive degrees".into()));
        }
        Ok(GradedAlgebra { p, poly_degrees, ext_degrees })
    }

    /// `F_p[x_1..x_n]` with every generator in degree 1.
    pub fn polynomial(p: u32, n: usize) -> Result<Self, InvariantError> {
        Self::new(p, vec![1; n], vec![])
    }

    pub fn poly_count(&self) -> usize {
        self.poly_degrees.len()
    }

    pub fn ext_count(&self) -> usize {
        self.ext_degrees.len()
    }

    /// The polynomial generator `x_i`.
    pub fn var(&self, i: usize) -> Element<Monomial> {
        let mut poly = vec![0; self.poly_count()];
        poly[i] = 1;
        Element::monomial(self.p, Monomial { poly, ext: 0 })
    }

    /// The exterior generator `e_i`.
    pub fn ext(&self, i: usize) -> Element<Monomial> {
        Element::monomial(self.p, Monomial { poly: vec![0; self.poly_count()], ext: 1 << i })
    }

    /// `Σ c x^e` in the polynomial part.
    pub fn poly(&self, terms: &[(Vec<u32>, i64)]) -> Element<Monomial> {
        Element::from_terms(self.p, terms.iter().map(|(e, c)| (Monomial { poly: e.clone(), ext: 0 }, *c)))
    }

    fn ext_degree(&self, mask: u32) -> usize {
        (0..self.ext_count()).filter(|i| mask >> i & 1 == 1).map(|i| self.ext_degrees[i]).sum()
    }

    fn poly_exponents(&self, i: usize, d: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == self.poly_count() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let deg = self.poly_degrees[i];
        for e in 0..=d / deg {
            cur.push(e as u32);
            self.poly_exponents(i + 1, d - e * deg, cur, out);
            cur.pop();
        }
    }
}

impl GradedRing for GradedAlgebra {
    type Mono = Monomial;

    fn prime(&self) -> u32 {
        self.p
    }

    fn basis(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for ext in 0..(1u32 << self.ext_count()) {
            let e = self.ext_degree(ext);
            if e > d {
                continue;
            }
            let mut polys = Vec::new();
            self.poly_exponents(0, d - e, &mut Vec::new(), &mut polys);
            out.extend(polys.into_iter().map(|poly| Monomial { poly, ext }));
        }
        out.sort();
        out
    }

    fn degree(&self, m: &Monomial) -> usize {
        m.poly.iter().zip(&self.poly_degrees).map(|(&e, &d)| e as usize * d).sum::<usize>() + self.ext_degree(m.ext)
    }

    fn one(&self) -> Monomial {
        Monomial { poly: vec![0; self.poly_count()], ext: 0 }
    }

    /// Polynomial generators commute; exterior generators anticommute and square to zero.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element<Monomial> {
        if a.ext & b.ext != 0 {
            return Element::zero(self.p);
        }
        // sign of sorting e_a e_b: one transposition per pair (i in a, j in b) with j < i
        let mut swaps = 0;
        for j in 0..self.ext_count() {
            if b.ext >> j & 1 == 1 {
                swaps += (a.ext >> (j + 1)).count_ones();
            }
        }
        let poly = a.poly.iter().zip(&b.poly).map(|(x, y)| x + y).collect();
        let c = if swaps % 2 == 0 { 1 } else { -1 };
        Element::from_terms(self.p, [(Monomial { poly, ext: a.ext | b.ext }, c)])
    }
}

/// How an exterior generator transforms: `e ↦ det(g)^k e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExteriorCharacter {
    DetPower(u32),
}

/// A group generated by invertible matrices over F_p acting on the polynomial generators
/// (`x_i ↦ Σ_j g[j][i] x_j`, so columns are images) and on exterior generators by characters.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixAction {
    pub p: u32,
    pub matrices: Vec<Vec<Vec<u32>>>,
    #[serde(default)]
    pub exterior: Vec<ExteriorCharacter>,
}

fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((0..n).map(|k| a[i][k] as u64 * b[k][j] as u64).sum::<u64>() % p as u64) as u32)
                .collect()
        })
        .collect()
}

fn det(m: &[Vec<u32>], p: u32) -> u32 {
    // Laplace expansion; matrices here are tiny
    let n = m.len();
    if n == 1 {
        return m[0][0] % p;
    }
    let mut total = 0i64;
    for j in 0..n {
        let minor: Vec<Vec<u32>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &v)| v).collect())
            .collect();
        let term = m[0][j] as i64 * det(&minor, p) as i64;
        total += if j % 2 == 0 { term } else { -term };
    }
    total.rem_euclid(p as i64) as u32
}

impl MatrixAction {
    pub fn new(p: u32, matrices: Vec<Vec<Vec<i64>>>, exterior: Vec<ExteriorCharacter>) -> Result<Self, InvariantError> {
        let matrices = matrices
            .into_iter()
            .map(|m| m.into_iter().map(|r| r.into_iter().map(|v| v.rem_euclid(p as i64) as u32).collect()).collect())
            .collect();
        let a = MatrixAction { p, matrices, exterior };
        a.validate()?;
        Ok(a)
    }

    pub fn validate(&self) -> Result<(), InvariantError> {
        if !is_prime(self.p as u64) {
            return Err(InvariantError::Invalid(format!("{} is not prime", self.p)));
        }
        let n = self.matrices.first().map_or(0, |m| m.len());
        for m in &self.matrices {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(InvariantError::Invalid("matrices must be square of one size".into()));
            }
            if det(m, self.p) == 0 {
                return Err(InvariantError::Invalid("matrix is not invertible".into()));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.matrices.first().map_or(0, |m| m.len())
    }

    /// One action per generator matrix, for use with `fixed_subspace`.
    pub fn generators(&self) -> Vec<MatrixGenerator> {
        self.matrices
            .iter()
            .map(|m| MatrixGenerator { matrix: m.clone(), det: det(m, self.p), exterior: self.exterior.clone() })
            .collect()
    }

    /// All elements of the generated group.
    pub fn closure(&self) -> Vec<Vec<Vec<u32>>> {
        let n = self.dimension();
        let id: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
        let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::from([id.clone()]);
        let mut all = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.matrices {
                let y = mat_mul(&x, g, self.p);
                if seen.insert(y.clone()) {
                    all.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        all.sort();
        all
    }

    pub fn group_order(&self) -> usize {
        self.closure().len()
    }
}

/// A single matrix acting on a `GradedAlgebra`.
#[derive(Clone, Debug)]
pub struct MatrixGenerator {
    matrix: Vec<Vec<u32>>,
    det: u32,
    exterior: Vec<ExteriorCharacter>,
}

impl MatrixGenerator {
    pub fn from_matrix(p: u32, matrix: Vec<Vec<u32>>, exterior: Vec<ExteriorCharacter>) -> Self {
        let d = det(&matrix, p);
        MatrixGenerator { matrix, det: d, exterior }
    }
}

impl LinearAction<GradedAlgebra> for MatrixGenerator {
    fn apply_monomial(&self, ring: &GradedAlgebra, m: &Monomial) -> Element<Monomial> {
        let p = ring.prime();
        assert_eq!(self.matrix.len(), ring.poly_count(), "matrix size must match the polynomial generators");
        let mut out = Element::monomial(p, ring.one());
        for (i, &e) in m.poly.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let image = Element::from_terms(
                p,
                (0..ring.poly_count()).map(|j| {
                    let mut poly = vec![0; ring.poly_count()];
                    poly[j] = 1;
                    (Monomial { poly, ext: 0 }, self.matrix[j][i] as i64)
                }),
            );
            out = ring.mul(&out, &ring.pow(&image, e as usize));
        }
        let mut scalar = 1u64;
        for i in (0..ring.ext_count()).filter(|i| m.ext >> i & 1 == 1) {
            let ExteriorCharacter::DetPower(k) = self.exterior.get(i).copied().unwrap_or(ExteriorCharacter::DetPower(0));
            for _ in 0..k {
                scalar = scalar * self.det as u64 % p as u64;
            }
        }
        let ext = Element::monomial(p, Monomial { poly: vec![0; ring.poly_count()], ext: m.ext });
        ring.mul(&out, &ext).scale(scalar as i64)
    }
}

impl MatrixAction {
    /// Rank of the averaging operator `(1/|G|) Σ_g g` in degree `d`; equals the fixed
    /// dimension when p does not divide the group order.
    pub fn averaging_rank(&self, ring: &GradedAlgebra, d: usize) -> Option<usize> {
        let group = self.closure();
        if group.len() as u64 % self.p as u64 == 0 {
            return None;
        }
        let basis = ring.basis(d);
        let n = basis.len();
        let mut sum = vec![vec![0u64; n]; n];
        for g in group.iter().map(|m| MatrixGenerator::from_matrix(self.p, m.clone(), self.exterior.clone())) {
            for (j, mono) in basis.iter().enumerate() {
                for (i, c) in g.apply_monomial(ring, mono).coordinates(&basis) {
                    sum[i as usize][j] = (sum[i as usize][j] + c as u64) % self.p as u64;
                }
            }
        }
        let rows: Vec<Vec<i64>> = sum.into_iter().map(|r| r.into_iter().map(|v| v as i64).collect()).collect();
        Some(crate::linalg::DenseFp::from_rows(self.p, &rows).rank())
    }
}
