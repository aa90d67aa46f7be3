//! Dimensions and integral structure of group cohomology from bar boundary ranks.
//!
//! `H^n(G; F_p)` has the dimension of `H_n(G; F_p)`, and for finite `G` and `n ≥ 1`,
//! `H^n(G; Z) ≅ Ext(H_{n-1}(G; Z), Z)`, the torsion of `H_{n-1}`. Both come from the
//! boundaries `d_n`, which are reduced through the Morse matching before any elimination.

use super::cochain::cell_count;
use super::complex::boundary_matrix;
use super::morse::Matching;
use super::BarError;
use crate::groups::FiniteGroup;
use crate::linalg::{rank_mod_p, smith_normal_form, Domain, SparseMatrix};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::path::PathBuf;

/// Environment variable naming the boundary-matrix cache directory.
pub const CACHE_ENV: &str = "COHOMOLAB_CACHE";

#[derive(Clone, Debug)]
pub struct BarOptions {
    /// Largest number of bar cells in a single degree that a computation may touch.
    pub max_cells: u128,
    pub cache_dir: Option<PathBuf>,
}

impl Default for BarOptions {
    fn default() -> Self {
        BarOptions { max_cells: 50_000_000, cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from) }
    }
}

impl BarOptions {
    pub fn without_cache() -> Self {
        BarOptions { cache_dir: None, ..Default::default() }
    }
}

/// `d_n` up to a change of basis over the coefficient ring: `d_n ≅ 1^{units} ⊕ core`.
#[derive(Clone, Debug)]
pub struct ReducedBoundary {
    pub units: usize,
    pub core: SparseMatrix,
}

fn cells(g: &FiniteGroup, n: usize) -> u128 {
    (g.order() as u128 - 1).pow(n as u32)
}

fn check_limit(g: &FiniteGroup, n: usize, opts: &BarOptions) -> Result<(), BarError> {
    let needed = cells(g, n);
    if needed > opts.max_cells {
        return Err(BarError::ResourceLimit { needed, limit: opts.max_cells });
    }
    Ok(())
}

fn cache_path(opts: &BarOptions, g: &FiniteGroup, n: usize, kind: &str, ring: Domain) -> Option<PathBuf> {
    opts.cache_dir
        .as_ref()
        .map(|d| d.join(format!("{}-{kind}-d{n}-{}.coo", g.fingerprint(), ring.tag())))
}

fn load_cached(path: &Option<PathBuf>) -> Option<SparseMatrix> {
    let text = std::fs::read_to_string(path.as_ref()?).ok()?;
    SparseMatrix::from_coordinate(&text).ok()
}

fn store_cached(path: &Option<PathBuf>, m: &SparseMatrix) {
    // The cache is an optimization; failures to write it are ignored.
    if let Some(path) = path {
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let tmp = path.with_extension("tmp");
        if std::fs::write(&tmp, m.to_coordinate()).is_ok() {
            let _ = std::fs::rename(&tmp, path);
        }
    }
}

/// Morse-reduced boundaries of one group, shared across degrees.
struct Reducer<'a> {
    group: &'a FiniteGroup,
    matching: Option<Matching<'a>>,
    critical: Vec<Vec<Vec<usize>>>,
    units: Vec<usize>,
}

impl<'a> Reducer<'a> {
    fn new(group: &'a FiniteGroup) -> Self {
        Reducer { group, matching: Matching::new(group), critical: Vec::new(), units: vec![0, 0] }
    }

    fn critical(&mut self, n: usize) -> &[Vec<usize>] {
        let m = self.matching.as_ref().unwrap();
        while self.critical.len() <= n {
            let d = self.critical.len();
            self.critical.push(m.critical_cells(d));
        }
        &self.critical[n]
    }

    /// Matched pairs between degrees n and n-1: every non-critical (n-1)-cell is the lower
    /// end of a pair with an n-cell or the upper end of a pair with an (n-2)-cell.
    fn units(&mut self, n: usize) -> usize {
        while self.units.len() <= n {
            let k = self.units.len();
            let below = cell_count(self.group, k - 1) - self.critical(k - 1).len() - self.units[k - 1];
            self.units.push(below);
        }
        self.units[n]
    }

    fn reduced(&mut self, n: usize, ring: Domain, opts: &BarOptions) -> Result<ReducedBoundary, BarError> {
        check_limit(self.group, n, opts)?;
        if self.matching.is_none() {
            let path = cache_path(opts, self.group, n, "bar", ring);
            let core = match load_cached(&path) {
                Some(m) => m,
                None => {
                    let m = boundary_matrix(self.group, n, ring);
                    store_cached(&path, &m);
                    m
                }
            };
            return Ok(ReducedBoundary { units: 0, core });
        }
        let units = self.units(n);
        // Cache the integral core when possible; an F_p core only after overflow.
        let zpath = cache_path(opts, self.group, n, "morse", Domain::Integers);
        if let Some(m) = load_cached(&zpath) {
            return Ok(ReducedBoundary { units, core: reduce_to(m, ring) });
        }
        if let Domain::Prime(_) = ring {
            let ppath = cache_path(opts, self.group, n, "morse", ring);
            if let Some(m) = load_cached(&ppath) {
                return Ok(ReducedBoundary { units, core: m });
            }
        }
        match self.core(n, None) {
            Ok(m) => {
                store_cached(&zpath, &m);
                Ok(ReducedBoundary { units, core: reduce_to(m, ring) })
            }
            Err(_) => match ring {
                Domain::Prime(p) => {
                    let m = self.core(n, Some(p)).map_err(|_| unreachable_overflow())?;
                    store_cached(&cache_path(opts, self.group, n, "morse", ring), &m);
                    Ok(ReducedBoundary { units, core: m })
                }
                Domain::Integers => Err(BarError::Unsupported(
                    "Morse boundary coefficients exceed 64 bits".into(),
                )),
            },
        }
    }

    fn core(&mut self, n: usize, p: Option<u32>) -> Result<SparseMatrix, ()> {
        let rows = self.critical(n - 1).to_vec();
        let cols = self.critical(n).to_vec();
        let m = self.matching.as_ref().unwrap();
        let mut columns = Vec::with_capacity(cols.len());
        for tau in &cols {
            let b = m.morse_boundary(tau, p.map(|p| p as i64)).map_err(|_| ())?;
            let col: Vec<(u32, i64)> = b
                .into_iter()
                .map(|(c, v)| (rows.binary_search(&c).expect("critical face") as u32, v))
                .collect();
            columns.push(col);
        }
        let domain = p.map_or(Domain::Integers, Domain::Prime);
        Ok(SparseMatrix::from_columns(rows.len(), domain, columns))
    }
}

fn unreachable_overflow() -> BarError {
    BarError::Unsupported("coefficient overflow in modular Morse reduction".into())
}

fn reduce_to(m: SparseMatrix, ring: Domain) -> SparseMatrix {
    match ring {
        Domain::Integers => m,
        Domain::Prime(p) => m.reduce_mod(p),
    }
}

/// `d_n` of the normalized bar complex in reduced form.
pub fn reduced_boundary(g: &FiniteGroup, n: usize, ring: Domain, opts: &BarOptions) -> Result<ReducedBoundary, BarError> {
    assert!(n >= 1);
    Reducer::new(g).reduced(n, ring, opts)
}

/// `dim H^n(G; F_p)` for `n = 0..=max_degree`.
pub fn cohomology_dims_mod_p(g: &FiniteGroup, p: u32, max_degree: usize, opts: &BarOptions) -> Result<Vec<usize>, BarError> {
    if !crate::linalg::is_prime(p as u64) {
        return Err(BarError::Unsupported(format!("{p} is not prime")));
    }
    check_limit(g, max_degree + 1, opts)?;
    let mut red = Reducer::new(g);
    let mut ranks = vec![0usize];
    for n in 1..=max_degree + 1 {
        let r = red.reduced(n, Domain::Prime(p), opts)?;
        ranks.push(r.units + rank_mod_p(&r.core, p).expect("prime checked"));
    }
    Ok((0..=max_degree)
        .map(|n| cell_count(g, n) - ranks[n] - ranks[n + 1])
        .collect())
}

/// `H^n(G; Z) ≅ Z^rank ⊕ ⊕ Z/d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegralCohomology {
    pub degree: usize,
    pub rank: usize,
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl IntegralCohomology {
    /// Order of the torsion part.
    pub fn order(&self) -> BigInt {
        self.torsion.iter().product()
    }
}

/// `H^n(G; Z)`: free part of rank `rank H_n`, torsion from the Smith form of `d_n`.
pub fn integral_cohomology(g: &FiniteGroup, n: usize, opts: &BarOptions) -> Result<IntegralCohomology, BarError> {
    if n == 0 {
        return Ok(IntegralCohomology { degree: 0, rank: 1, torsion: vec![] });
    }
    check_limit(g, n + 1, opts)?;
    let mut red = Reducer::new(g);
    let here = red.reduced(n, Domain::Integers, opts)?;
    let above = red.reduced(n + 1, Domain::Integers, opts)?;
    let snf_here = smith_normal_form(&here.core).expect("integral matrix");
    let snf_above = smith_normal_form(&above.core).expect("integral matrix");
    let rank_here = here.units + snf_here.rank;
    let rank_above = above.units + snf_above.rank;
    let torsion = snf_here.elementary_divisors.into_iter().filter(|d| !d.is_one()).collect();
    Ok(IntegralCohomology { degree: n, rank: cell_count(g, n) - rank_here - rank_above, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, direct_product, semidirect};

    fn direct_rank(g: &FiniteGroup, n: usize, p: u32) -> usize {
        rank_mod_p(&boundary_matrix(g, n, Domain::Prime(p)), p).unwrap()
    }

    #[test]
    fn morse_ranks_match_direct_elimination() {
        let s3 = semidirect(3, &[vec![vec![2]]]).unwrap();
        let c3c3 = direct_product(&cyclic(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        for (g, p, top) in [(&s3, 3u32, 4usize), (&s3, 2, 4), (&c3c3, 3, 3)] {
            let mut red = Reducer::new(g);
            for n in 1..=top {
                let r = red.reduced(n, Domain::Prime(p), &BarOptions::without_cache()).unwrap();
                assert_eq!(r.units + rank_mod_p(&r.core, p).unwrap(), direct_rank(g, n, p), "n={n}");
            }
        }
    }

    #[test]
    fn morse_smith_matches_direct_smith() {
        let g = cyclic(6).unwrap();
        for n in 1..=3 {
            let r = reduced_boundary(&g, n, Domain::Integers, &BarOptions::without_cache()).unwrap();
            let mut ours = smith_normal_form(&r.core).unwrap().torsion();
            ours.sort();
            let mut direct = smith_normal_form(&boundary_matrix(&g, n, Domain::Integers)).unwrap().torsion();
            direct.sort();
            assert_eq!(ours, direct);
        }
    }

    #[test]
    fn limit_is_reported() {
        let g = cyclic(5).unwrap();
        let opts = BarOptions { max_cells: 100, cache_dir: None };
        assert_eq!(
            cohomology_dims_mod_p(&g, 5, 3, &opts),
            Err(BarError::ResourceLimit { needed: 256, limit: 100 })
        );
    }
}
