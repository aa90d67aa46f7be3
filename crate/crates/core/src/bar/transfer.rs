//! Restriction, transfer and conjugation of bar cochains along a subgroup.

use super::{BarError, Cochain};
use crate::groups::{FiniteGroup, Subgroup};
use std::sync::Arc;

/// A subgroup `H ≤ G` with `H` realized as a group of its own (element i is `members[i]`)
/// and the right-coset decomposition `x = ρ(x) s(x)` of every `x ∈ G`.
pub struct Embedding {
    parent: Arc<FiniteGroup>,
    sub: Arc<FiniteGroup>,
    members: Vec<usize>,
    /// Per parent element: (ρ(x) as an index into `sub`, coset representative s(x)).
    split: Vec<(usize, usize)>,
    reps: Vec<usize>,
}

impl Embedding {
    pub fn new(parent: &Arc<FiniteGroup>, h: &Subgroup, name: &str) -> Self {
        let sub = Arc::new(h.as_group(parent, name));
        let split: Vec<(usize, usize)> = h
            .right_coset_split(parent)
            .into_iter()
            .map(|(hh, s)| (h.members.binary_search(&hh).unwrap(), s))
            .collect();
        let mut reps: Vec<usize> = split.iter().map(|e| e.1).collect();
        reps.sort_unstable();
        reps.dedup();
        Embedding { parent: parent.clone(), sub, members: h.members.clone(), split, reps }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn subgroup(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Parent index of subgroup element `i`.
    pub fn include(&self, i: usize) -> usize {
        self.members[i]
    }

    /// Subgroup index of a parent element lying in `H`.
    pub fn locate(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    fn on_parent(&self, c: &Cochain) -> Result<(), BarError> {
        if c.group().fingerprint() != self.parent.fingerprint() {
            return Err(BarError::SubgroupMismatch("cochain does not live on the parent group".into()));
        }
        Ok(())
    }

    fn on_sub(&self, c: &Cochain) -> Result<(), BarError> {
        if c.group().fingerprint() != self.sub.fingerprint() {
            return Err(BarError::SubgroupMismatch("cochain does not live on the subgroup".into()));
        }
        Ok(())
    }

    /// `Res f [h_1|...|h_n] = f[h_1|...|h_n]`.
    pub fn restrict(&self, f: &Cochain) -> Result<Cochain, BarError> {
        self.on_parent(f)?;
        let mut cell = vec![0; f.degree()];
        Ok(Cochain::from_fn(&self.sub, f.degree(), f.ring(), |c| {
            for (x, &h) in cell.iter_mut().zip(c) {
                *x = self.members[h];
            }
            f.get(&cell)
        }))
    }

    /// Chain-level transfer
    /// `Cor f [g_1|...|g_n] = Σ_s f[ρ(s x_0)^{-1} ρ(s x_1) | ... | ρ(s x_{n-1})^{-1} ρ(s x_n)]`
    /// over right-coset representatives `s`, with `x_i = g_1 ⋯ g_i`.
    pub fn transfer(&self, f: &Cochain) -> Result<Cochain, BarError> {
        self.on_sub(f)?;
        let g = &self.parent;
        let h = &self.sub;
        let n = f.degree();
        let mut cell = vec![0; n];
        Ok(Cochain::from_fn(g, n, f.ring(), |c| {
            let mut total = 0i64;
            for &s in &self.reps {
                let mut x = s;
                let mut prev = self.split[x].0;
                for (i, &gi) in c.iter().enumerate() {
                    x = g.mul(x, gi);
                    let cur = self.split[x].0;
                    cell[i] = h.mul(h.inv(prev), cur);
                    prev = cur;
                }
                total += f.get(&cell);
            }
            total
        }))
    }

    /// Pullback along conjugation `h ↦ g h g^{-1}` of `H`, for `g` normalizing `H`:
    /// `(c_g^* f)[h_1|...|h_n] = f[g h_1 g^{-1}|...|g h_n g^{-1}]`.
    pub fn conj_pullback(&self, f: &Cochain, g: usize) -> Result<Cochain, BarError> {
        self.on_sub(f)?;
        let pg = &self.parent;
        let gi = pg.inv(g);
        let image: Vec<usize> = (0..self.sub.order())
            .map(|i| self.locate(pg.mul(pg.mul(g, self.members[i]), gi)))
            .collect::<Option<Vec<usize>>>()
            .ok_or_else(|| BarError::SubgroupMismatch("element does not normalize the subgroup".into()))?;
        let mut cell = vec![0; f.degree()];
        Ok(Cochain::from_fn(&self.sub, f.degree(), f.ring(), |c| {
            for (x, &h) in cell.iter_mut().zip(c) {
                *x = image[h];
            }
            f.get(&cell)
        }))
    }

    /// Right-coset representatives of `H` in `G`.
    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::complex::class_equal;
    use crate::groups::{cyclic, p2, subgroup_closure};
    use crate::linalg::Domain;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn transfer_is_a_chain_map() {
        let g = Arc::new(p2(3).unwrap());
        let h = subgroup_closure(&g, &[g.generators()[1], g.generators()[2]]);
        let e = Embedding::new(&g, &h, "BC");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..3 {
            let f = Cochain::random(e.subgroup(), n, Domain::Integers, &mut rng);
            assert_eq!(e.transfer(&f.coboundary()).unwrap(), e.transfer(&f).unwrap().coboundary());
        }
        // non-normal subgroup of S3
        let s3 = Arc::new(crate::groups::semidirect(3, &[vec![vec![2]]]).unwrap());
        let t = (0..s3.order()).find(|&x| s3.element_order(x) == 2).unwrap();
        let e = Embedding::new(&s3, &subgroup_closure(&s3, &[t]), "T");
        for n in 0..3 {
            let f = Cochain::random(e.subgroup(), n, Domain::Integers, &mut rng);
            assert_eq!(e.transfer(&f.coboundary()).unwrap(), e.transfer(&f).unwrap().coboundary());
        }
    }

    #[test]
    fn cor_res_is_multiplication_by_index() {
        let g = Arc::new(cyclic(9).unwrap());
        let h = subgroup_closure(&g, &[3]);
        let e = Embedding::new(&g, &h, "C3");
        let y = Cochain::from_fn(&g, 1, Domain::Prime(3), |c| c[0] as i64);
        let x = y.bockstein().unwrap();
        let back = e.transfer(&e.restrict(&x).unwrap()).unwrap();
        assert!(class_equal(&back, &x.scale(3)).unwrap());
        assert!(back.coboundary().is_zero());
    }
}
