//! Triple and matrix Massey products at the cochain level.

use super::complex::{cohomology_basis, Coboundaries};
use super::{BarError, Cochain, CohomologyClass};
use crate::linalg::Domain;

/// A Massey product: one representative and a basis (in cohomology) of its indeterminacy.
#[derive(Clone, Debug)]
pub struct MasseyResult {
    pub representative: CohomologyClass,
    pub indeterminacy: Vec<Cochain>,
}

impl MasseyResult {
    pub fn degree(&self) -> usize {
        self.representative.degree()
    }

    /// Whether `c` represents an element of the Massey product.
    pub fn contains(&self, c: &Cochain) -> Result<bool, BarError> {
        if !c.is_cocycle() {
            return Err(BarError::NotCocycle);
        }
        let rep = self.representative.cochain();
        let diff = rep.sub(c)?;
        let Domain::Prime(p) = rep.ring() else { unreachable!() };
        Coboundaries::new(rep.group(), rep.degree(), p).contains_mod(&diff, &self.indeterminacy)
    }
}

fn prime_of(c: &Cochain) -> Result<u32, BarError> {
    match c.ring() {
        Domain::Prime(p) => Ok(p),
        Domain::Integers => Err(BarError::Unsupported("Massey products are computed over F_p".into())),
    }
}

fn sign(deg: usize) -> i64 {
    if deg % 2 == 0 {
        1
    } else {
        -1
    }
}

fn require_cocycles(cs: &[&Cochain]) -> Result<(), BarError> {
    if cs.iter().all(|c| c.is_cocycle()) {
        Ok(())
    } else {
        Err(BarError::NotCocycle)
    }
}

fn sum(cs: impl IntoIterator<Item = Result<Cochain, BarError>>) -> Result<Option<Cochain>, BarError> {
    let mut acc: Option<Cochain> = None;
    for c in cs {
        let c = c?;
        acc = Some(match acc {
            None => c,
            Some(a) => a.add(&c)?,
        });
    }
    Ok(acc)
}

fn witness(cob: &mut Coboundaries, c: &Cochain, what: &str) -> Result<Cochain, BarError> {
    cob.witness(c)?
        .ok_or_else(|| BarError::Hypotheses(format!("{what} is not a coboundary")))
}

/// Indeterminacy `u H^{*} + H^{*} w` in the product degree, reduced to a basis modulo
/// coboundaries.
fn indeterminacy(us: &[&Cochain], ws: &[&Cochain], deg_uv: usize, deg_vw: usize) -> Result<Vec<Cochain>, BarError> {
    let u0 = us.first().or(ws.first()).expect("at least one cochain");
    let group = u0.group();
    let p = prime_of(u0)?;
    let mut spanning = Vec::new();
    if deg_vw >= 1 {
        let h = cohomology_basis(group, deg_vw - 1, p);
        for u in us {
            for x in &h {
                spanning.push(u.cup(x)?);
            }
        }
    }
    if deg_uv >= 1 {
        let h = cohomology_basis(group, deg_uv - 1, p);
        for w in ws {
            for x in &h {
                spanning.push(x.cup(w)?);
            }
        }
    }
    let target = us[0].degree() + deg_vw - 1;
    Coboundaries::new(group, target, p).independent(&spanning)
}

/// `⟨u, v, w⟩` from given witnesses `δa = uv`, `δb = vw`: the class of `(-1)^{|u|} u b - a w`.
pub fn massey_with(u: &Cochain, v: &Cochain, w: &Cochain, a: &Cochain, b: &Cochain) -> Result<MasseyResult, BarError> {
    prime_of(u)?;
    require_cocycles(&[u, v, w])?;
    if a.coboundary() != u.cup(v)? || b.coboundary() != v.cup(w)? {
        return Err(BarError::Hypotheses("witnesses do not bound uv and vw".into()));
    }
    let rep = u.cup(b)?.scale(sign(u.degree())).sub(&a.cup(w)?)?;
    let indeterminacy = indeterminacy(&[u], &[w], u.degree() + v.degree(), v.degree() + w.degree())?;
    Ok(MasseyResult { representative: CohomologyClass::new(rep)?, indeterminacy })
}

/// `⟨u, v, w⟩` with witnesses found by a deterministic solve.
pub fn massey(u: &Cochain, v: &Cochain, w: &Cochain) -> Result<MasseyResult, BarError> {
    let p = prime_of(u)?;
    require_cocycles(&[u, v, w])?;
    let uv = u.cup(v)?;
    let vw = v.cup(w)?;
    let a = witness(&mut Coboundaries::new(u.group(), uv.degree(), p), &uv, "uv")?;
    let b = witness(&mut Coboundaries::new(u.group(), vw.degree(), p), &vw, "vw")?;
    massey_with(u, v, w, &a, &b)
}

/// Matrix Massey product `⟨U, V, W⟩` of a row `U`, a matrix `V` and a column `W` of
/// cocycles, each entry family homogeneous. Requires `Σ_i u_i v_ij ~ 0` for every `j` and
/// `Σ_j v_ij w_j ~ 0` for every `i`; the representative is
/// `(-1)^{|u|} Σ_i u_i b_i - Σ_j a_j w_j` with `δa_j = Σ_i u_i v_ij`, `δb_i = Σ_j v_ij w_j`.
pub fn matrix_massey(us: &[Cochain], vs: &[Vec<Cochain>], ws: &[Cochain]) -> Result<MasseyResult, BarError> {
    let (k, l) = (us.len(), ws.len());
    if k == 0 || l == 0 || vs.len() != k || vs.iter().any(|r| r.len() != l) {
        return Err(BarError::Hypotheses("shapes of U, V, W do not match".into()));
    }
    let p = prime_of(&us[0])?;
    let all: Vec<&Cochain> = us.iter().chain(vs.iter().flatten()).chain(ws).collect();
    require_cocycles(&all)?;
    let (du, dv, dw) = (us[0].degree(), vs[0][0].degree(), ws[0].degree());
    if us.iter().any(|c| c.degree() != du)
        || vs.iter().flatten().any(|c| c.degree() != dv)
        || ws.iter().any(|c| c.degree() != dw)
    {
        return Err(BarError::Hypotheses("entries of U, V, W must be homogeneous".into()));
    }
    let group = us[0].group();
    let mut cob_uv = Coboundaries::new(group, du + dv, p);
    let mut cob_vw = Coboundaries::new(group, dv + dw, p);
    let mut a = Vec::with_capacity(l);
    for j in 0..l {
        let s = sum((0..k).map(|i| us[i].cup(&vs[i][j])))?.unwrap();
        a.push(witness(&mut cob_uv, &s, &format!("column {j} of UV"))?);
    }
    let mut b = Vec::with_capacity(k);
    for (i, row) in vs.iter().enumerate() {
        let s = sum((0..l).map(|j| row[j].cup(&ws[j])))?.unwrap();
        b.push(witness(&mut cob_vw, &s, &format!("row {i} of VW"))?);
    }
    let ub = sum((0..k).map(|i| us[i].cup(&b[i])))?.unwrap();
    let aw = sum((0..l).map(|j| a[j].cup(&ws[j])))?.unwrap();
    let rep = ub.scale(sign(du)).sub(&aw)?;
    let ur: Vec<&Cochain> = us.iter().collect();
    let wr: Vec<&Cochain> = ws.iter().collect();
    let indeterminacy = indeterminacy(&ur, &wr, du + dv, dv + dw)?;
    Ok(MasseyResult { representative: CohomologyClass::new(rep)?, indeterminacy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::cyclic;
    use std::sync::Arc;

    fn generator(p: u64) -> Cochain {
        let g = Arc::new(cyclic(p).unwrap());
        Cochain::from_fn(&g, 1, Domain::Prime(p as u32), |c| c[0] as i64)
    }

    #[test]
    fn triple_y_on_c3_is_bockstein() {
        let y = generator(3);
        let m = massey(&y, &y, &y).unwrap();
        assert!(m.indeterminacy.is_empty());
        assert!(m.contains(&y.bockstein().unwrap()).unwrap());
    }

    #[test]
    fn matrix_massey_with_one_entry_agrees() {
        let y = generator(5);
        let m = matrix_massey(&[y.clone()], &[vec![y.clone()]], &[y.clone()]).unwrap();
        let t = massey(&y, &y, &y).unwrap();
        assert!(m.contains(t.representative.cochain()).unwrap());
    }
}
