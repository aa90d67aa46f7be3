//! Explicit bar (co)boundary matrices and cochain-level linear algebra: coboundary
//! membership, class comparison and cohomology bases.

use super::cochain::{cell_count, decode, encode};
use super::morse::bar_faces;
use super::{BarError, Cochain};
use crate::groups::FiniteGroup;
use crate::linalg::{self, Domain, FpEchelon, SparseMatrix};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::sync::Arc;

/// Column of `d_n` for one cell: faces of `cell`, as (row, value), repeated rows merged.
pub(crate) fn boundary_column(g: &FiniteGroup, cell: &[usize]) -> Vec<(u32, i64)> {
    let m = g.order() - 1;
    let mut col: Vec<(u32, i64)> = Vec::with_capacity(cell.len() + 1);
    bar_faces(g, cell, |f, s| col.push((encode(m, f) as u32, s)));
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

/// Boundary `d_n : C_n -> C_{n-1}` of the normalized bar complex, cells numbered as in
/// [`Cochain`].
pub fn boundary_matrix(g: &FiniteGroup, n: usize, domain: Domain) -> SparseMatrix {
    assert!(n >= 1);
    let m = g.order() - 1;
    let mut cell = vec![0; n];
    let cols = (0..cell_count(g, n))
        .map(|idx| {
            decode(m, idx, &mut cell);
            let col = boundary_column(g, &cell);
            match domain {
                Domain::Prime(p) => col
                    .into_iter()
                    .map(|(r, v)| (r, v.rem_euclid(p as i64)))
                    .filter(|e| e.1 != 0)
                    .collect(),
                Domain::Integers => col,
            }
        })
        .collect();
    SparseMatrix::from_columns(cell_count(g, n - 1), domain, cols)
}

/// Coboundary `δ : C^n -> C^{n+1}`, the transpose of `d_{n+1}`.
pub fn coboundary_matrix(g: &FiniteGroup, n: usize, domain: Domain) -> SparseMatrix {
    boundary_matrix(g, n + 1, domain).transpose()
}

fn sparse_fp(c: &Cochain, p: u32) -> Vec<(u32, u32)> {
    c.values()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v != 0)
        .map(|(i, &v)| (i as u32, v.rem_euclid(p as i64) as u32))
        .collect()
}

/// Image of `δ : C^{n-1} -> C^n` over F_p, kept in echelon form with witnesses.
pub struct Coboundaries {
    group: Arc<FiniteGroup>,
    degree: usize,
    p: u32,
    ech: FpEchelon,
}

impl Coboundaries {
    pub fn new(group: &Arc<FiniteGroup>, degree: usize, p: u32) -> Self {
        let mut ech = FpEchelon::new(cell_count(group, degree), p, true);
        if degree >= 1 {
            let d = coboundary_matrix(group, degree - 1, Domain::Prime(p));
            for idx in 0..d.cols() {
                let col: Vec<(u32, u32)> = d.column(idx).iter().map(|&(r, v)| (r, v as u32)).collect();
                ech.insert(&col);
            }
        }
        Coboundaries { group: group.clone(), degree, p, ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    fn check(&self, c: &Cochain) -> Result<(), BarError> {
        if c.ring() != Domain::Prime(self.p) {
            return Err(BarError::RingMismatch);
        }
        if c.group().fingerprint() != self.group.fingerprint() {
            return Err(BarError::GroupMismatch);
        }
        if c.degree() != self.degree {
            return Err(BarError::DegreeMismatch(self.degree, c.degree()));
        }
        Ok(())
    }

    /// Some `a` with `δa = c`, or `None` when `c` is not a coboundary.
    pub fn witness(&mut self, c: &Cochain) -> Result<Option<Cochain>, BarError> {
        self.check(c)?;
        if self.degree == 0 {
            return Ok(c.is_zero().then(|| Cochain::zero(&self.group, 0, c.ring())));
        }
        let target = sparse_fp(c, self.p);
        Ok(self.ech.express(&target).map(|combo| {
            let mut values = vec![0i64; cell_count(&self.group, self.degree - 1)];
            for (j, v) in combo {
                values[j as usize] = v as i64;
            }
            Cochain::from_values(&self.group, self.degree - 1, c.ring(), values)
        }))
    }

    pub fn contains(&mut self, c: &Cochain) -> Result<bool, BarError> {
        self.check(c)?;
        Ok(self.ech.reduce(&sparse_fp(c, self.p)).is_empty())
    }

    /// Whether `c` lies in the span of `extra` plus the coboundaries.
    pub fn contains_mod(&mut self, c: &Cochain, extra: &[Cochain]) -> Result<bool, BarError> {
        self.check(c)?;
        let mut ech = FpEchelon::new(cell_count(&self.group, self.degree), self.p, false);
        for e in extra {
            self.check(e)?;
            let r = self.ech.reduce(&sparse_fp(e, self.p));
            ech.insert(&r);
        }
        let r = self.ech.reduce(&sparse_fp(c, self.p));
        Ok(ech.reduce(&r).is_empty())
    }

    /// Members of `cs` independent modulo coboundaries (a basis of their span in cohomology).
    pub fn independent(&mut self, cs: &[Cochain]) -> Result<Vec<Cochain>, BarError> {
        let mut ech = FpEchelon::new(cell_count(&self.group, self.degree), self.p, false);
        let mut out = Vec::new();
        for c in cs {
            self.check(c)?;
            let r = self.ech.reduce(&sparse_fp(c, self.p));
            if ech.insert(&r) {
                out.push(c.clone());
            }
        }
        Ok(out)
    }
}

/// Some `a` with `δa = c`, or `None`. Over Z the solve is exact and integral.
pub fn coboundary_witness(c: &Cochain) -> Result<Option<Cochain>, BarError> {
    match c.ring() {
        Domain::Prime(p) => Coboundaries::new(c.group(), c.degree(), p).witness(c),
        Domain::Integers => {
            let g = c.group();
            let n = c.degree();
            if n == 0 {
                return Ok(c.is_zero().then(|| c.clone()));
            }
            let d = coboundary_matrix(g, n - 1, Domain::Integers);
            let b: Vec<BigInt> = c.values().iter().map(|&v| BigInt::from(v)).collect();
            let x = linalg::solve(&d, &b).expect("dimensions agree");
            Ok(x.map(|x| {
                let values = x.iter().map(|v| v.to_i64().expect("witness entry fits in i64")).collect();
                Cochain::from_values(g, n - 1, Domain::Integers, values)
            }))
        }
    }
}

/// Whether two cocycles represent the same cohomology class.
pub fn class_equal(u: &Cochain, v: &Cochain) -> Result<bool, BarError> {
    let diff = u.sub(v)?;
    if !u.is_cocycle() || !v.is_cocycle() {
        return Err(BarError::NotCocycle);
    }
    Ok(coboundary_witness(&diff)?.is_some())
}

/// Cocycle representatives of a basis of `H^n(G; F_p)`.
pub fn cohomology_basis(group: &Arc<FiniteGroup>, n: usize, p: u32) -> Vec<Cochain> {
    let ring = Domain::Prime(p);
    let d = coboundary_matrix(group, n, ring);
    let mut ech = FpEchelon::new(d.rows(), p, true);
    let mut cocycles = Vec::new();
    for c in 0..d.cols() {
        let col: Vec<(u32, u32)> = d.column(c).iter().map(|&(r, v)| (r, v as u32)).collect();
        if let Some(rel) = ech.insert_or_relation(&col) {
            let mut values = vec![0i64; d.cols()];
            for (j, v) in rel {
                values[j as usize] = v as i64;
            }
            cocycles.push(Cochain::from_values(group, n, ring, values));
        }
    }
    Coboundaries::new(group, n, p).independent(&cocycles).expect("same space")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn boundary_squares_to_zero() {
        let g = cyclic(4).unwrap();
        for n in 2..=4 {
            let a = boundary_matrix(&g, n - 1, Domain::Integers).to_dense();
            let b = boundary_matrix(&g, n, Domain::Integers).to_dense();
            for i in 0..a.len() {
                for j in 0..b[0].len() {
                    let s: i64 = (0..b.len()).map(|k| a[i][k] * b[k][j]).sum();
                    assert_eq!(s, 0);
                }
            }
        }
    }

    #[test]
    fn coboundary_matrix_matches_cochain_coboundary() {
        let g = Arc::new(cyclic(3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = Cochain::random(&g, 2, Domain::Integers, &mut rng);
        let d = coboundary_matrix(&g, 2, Domain::Integers).to_dense();
        let df = f.coboundary();
        for (i, row) in d.iter().enumerate() {
            let s: i64 = row.iter().zip(f.values()).map(|(a, b)| a * b).sum();
            assert_eq!(s, df.values()[i]);
        }
    }

    #[test]
    fn cohomology_basis_sizes() {
        let g = Arc::new(direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap());
        assert_eq!(cohomology_basis(&g, 1, 3).len(), 2);
        assert_eq!(cohomology_basis(&g, 2, 3).len(), 3);
    }

    #[test]
    fn integral_witness_is_exact() {
        let g = Arc::new(cyclic(3).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = Cochain::random(&g, 1, Domain::Integers, &mut rng);
        let w = coboundary_witness(&a.coboundary()).unwrap().unwrap();
        assert_eq!(w.coboundary(), a.coboundary());
        // 3 times the Bockstein generator is a coboundary, the generator itself is not.
        let y = Cochain::from_fn(&g, 1, Domain::Prime(3), |c| c[0] as i64);
        let b = y.bockstein_integral().unwrap();
        assert!(coboundary_witness(&b).unwrap().is_none());
        assert!(coboundary_witness(&b.scale(3)).unwrap().is_some());
    }
}
