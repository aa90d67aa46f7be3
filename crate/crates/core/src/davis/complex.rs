use super::DavisError;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};

/// Largest facet size accepted when closing under faces.
const MAX_FACET: usize = 16;

/// A finite abstract simplicial complex on the vertices `0..l`, stored as sorted vertex
/// lists grouped by dimension.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    vertices: usize,
    simplices: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
    origin: Option<Vec<Vec<u32>>>,
}

/// Wire format: `{"vertices": l, "facets": [[v, ...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: usize,
    pub facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Closes `facets` under faces. Every label in `0..vertices` must occur.
    pub fn from_facets(vertices: usize, facets: &[Vec<u32>]) -> Result<Self, DavisError> {
        let mut layers: Vec<HashSet<Vec<u32>>> = Vec::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(DavisError::Invalid(format!("facet {f:?} repeats a vertex")));
            }
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertices) {
                return Err(DavisError::Invalid(format!("vertex {v} out of range 0..{vertices}")));
            }
            if f.len() > MAX_FACET {
                return Err(DavisError::Invalid(format!("facet of size {} exceeds {MAX_FACET}", f.len())));
            }
            if layers.len() < f.len() {
                layers.resize_with(f.len(), HashSet::new);
            }
            if layers.get(f.len().saturating_sub(1)).is_some_and(|l| l.contains(&f)) {
                continue;
            }
            for mask in 1u32..(1 << f.len()) {
                let face: Vec<u32> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                layers[face.len() - 1].insert(face);
            }
        }
        let used = layers.first().map_or(0, |l| l.len());
        if used != vertices {
            return Err(DavisError::Invalid(format!("{} of the {vertices} vertices occur in no facet", vertices - used)));
        }
        let simplices: Vec<Vec<Vec<u32>>> = layers
            .into_iter()
            .map(|l| {
                let mut v: Vec<Vec<u32>> = l.into_iter().collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        Ok(SimplicialComplex { vertices, simplices, index, origin: None })
    }

    pub fn from_json(j: &ComplexJson) -> Result<Self, DavisError> {
        Self::from_facets(j.vertices, &j.facets)
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { vertices: self.vertices, facets: self.facets() }
    }

    pub fn empty() -> Self {
        SimplicialComplex { vertices: 0, simplices: Vec::new(), index: Vec::new(), origin: None }
    }

    /// Single vertex.
    pub fn point() -> Self {
        Self::full_simplex(1)
    }

    pub fn edge() -> Self {
        Self::full_simplex(2)
    }

    pub fn two_points() -> Self {
        Self::from_facets(2, &[vec![0], vec![1]]).expect("valid complex")
    }

    /// The full simplex on `l ≥ 1` vertices.
    pub fn full_simplex(l: usize) -> Self {
        Self::from_facets(l, &[(0..l as u32).collect()]).expect("valid complex")
    }

    /// `∂Δ^d`, a triangulated `(d−1)`-sphere on `d + 1` vertices.
    pub fn simplex_boundary(d: usize) -> Self {
        let facets: Vec<Vec<u32>> = (0..=d as u32).map(|skip| (0..=d as u32).filter(|&v| v != skip).collect()).collect();
        Self::from_facets(d + 1, &facets).expect("valid complex")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    /// `n_i`, the number of `i`-simplices.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.simplices.get(dim).map_or(&[], |v| v.as_slice())
    }

    pub fn index_of(&self, simplex: &[u32]) -> Option<usize> {
        let d = simplex.len().checked_sub(1)?;
        self.index.get(d)?.get(simplex).map(|&i| i as usize)
    }

    pub fn contains(&self, simplex: &[u32]) -> bool {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        self.index_of(&s).is_some()
    }

    /// For a barycentric subdivision, the simplex of the original complex behind each vertex.
    pub fn origin(&self) -> Option<&[Vec<u32>]> {
        self.origin.as_deref()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(i, &n)| if i % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let covered: HashSet<&[u32]> = if d + 1 < self.simplices.len() {
                let mut c = HashSet::new();
                for s in &self.simplices[d + 1] {
                    for skip in 0..s.len() {
                        let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        if let Some(&k) = self.index[d].get(&face) {
                            c.insert(self.simplices[d][k as usize].as_slice());
                        }
                    }
                }
                c
            } else {
                HashSet::new()
            };
            out.extend(self.simplices[d].iter().filter(|s| !covered.contains(s.as_slice())).cloned());
        }
        out
    }

    /// Neighbours of each vertex in the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for e in self.simplices(1) {
            adj[e[0] as usize].push(e[1]);
            adj[e[1] as usize].push(e[0]);
        }
        adj
    }

    /// Whether every clique of the 1-skeleton spans a simplex. It suffices that every
    /// simplex extended by a larger vertex adjacent to all of its vertices is a simplex.
    pub fn is_full(&self) -> bool {
        let adj: Vec<HashSet<u32>> = self.adjacency().into_iter().map(|a| a.into_iter().collect()).collect();
        for layer in &self.simplices {
            for s in layer {
                let last = *s.last().unwrap();
                for &w in adj[s[0] as usize].iter().filter(|&&w| w > last) {
                    if s.iter().all(|v| adj[*v as usize].contains(&w)) {
                        let mut t = s.clone();
                        t.push(w);
                        if self.index_of(&t).is_none() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Number of connected components, by union-find on the 1-skeleton.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.vertices;
        for e in self.simplices(1) {
            let (a, b) = (find(&mut parent, e[0] as usize), find(&mut parent, e[1] as usize));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// The link of `simplex`: simplices disjoint from it whose union with it is a simplex.
    /// Vertices are relabelled to `0..m` in increasing order.
    pub fn link(&self, simplex: &[u32]) -> Result<SimplicialComplex, DavisError> {
        let mut s = simplex.to_vec();
        s.sort_unstable();
        if s.is_empty() || self.index_of(&s).is_none() {
            return Err(DavisError::AbsentSimplex(s));
        }
        let mut facets = Vec::new();
        for t in self.facets() {
            if s.iter().all(|v| t.contains(v)) {
                let rest: Vec<u32> = t.into_iter().filter(|v| !s.contains(v)).collect();
                if !rest.is_empty() {
                    facets.push(rest);
                }
            }
        }
        let mut labels: Vec<u32> = facets.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();
        let relabel: HashMap<u32, u32> = labels.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
        let facets: Vec<Vec<u32>> = facets.iter().map(|f| f.iter().map(|v| relabel[v]).collect()).collect();
        if facets.is_empty() {
            return Ok(SimplicialComplex::empty());
        }
        SimplicialComplex::from_facets(labels.len(), &facets)
    }
}

/// Barycentric subdivision. Vertices are the simplices of `k` (in order of dimension, then
/// lexicographically) and simplices are chains; the output is always full.
pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SimplicialComplex, DavisError> {
    let mut offset = Vec::with_capacity(k.simplices.len());
    let mut total = 0;
    for layer in &k.simplices {
        offset.push(total);
        total += layer.len();
    }
    let id = |s: &[u32]| (offset[s.len() - 1] + k.index_of(s).expect("face of a simplex")) as u32;
    let mut facets = Vec::new();
    for f in k.facets() {
        // maximal chains inside f: remove the vertices of f one at a time
        let n = f.len();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            let mut chain = Vec::with_capacity(n);
            let mut cur = f.clone();
            chain.push(id(&cur));
            for &i in &perm[..n - 1] {
                cur.retain(|&v| v != f[i]);
                chain.push(id(&cur));
            }
            facets.push(chain);
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    let mut sd = SimplicialComplex::from_facets(total, &facets)?;
    sd.origin = Some(k.simplices.iter().flatten().cloned().collect());
    if !sd.is_full() {
        return Err(DavisError::CrossCheck("barycentric subdivision is not full".into()));
    }
    Ok(sd)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A disc whose boundary circle (`3·2^r` vertices) is wrapped `n` times around a circle:
/// a central fan over an inner ring of `n·3·2^r` vertices, and a band from the ring to the
/// boundary. Returns `None` if the identification repeats a face.
pub(super) fn moore_raw(n: usize, r: u32) -> Option<SimplicialComplex> {
    let m = 3usize << r;
    let ring = n * m;
    let c = |i: usize| 1 + (i % m) as u32;
    let rv = |i: usize| (1 + m + i % ring) as u32;
    let mut tris = Vec::with_capacity(3 * ring);
    for i in 0..ring {
        tris.push(vec![0, rv(i), rv(i + 1)]);
        tris.push(vec![rv(i), c(i), c(i + 1)]);
        tris.push(vec![rv(i), rv(i + 1), c(i + 1)]);
    }
    let mut seen = HashSet::new();
    for t in &tris {
        let mut s = t.clone();
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) || !seen.insert(s) {
            return None;
        }
    }
    SimplicialComplex::from_facets(1 + m + ring, &tris).ok()
}
