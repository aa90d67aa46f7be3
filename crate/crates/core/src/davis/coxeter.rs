use super::{DavisError, SimplicialComplex};
use num_rational::Rational64;
use serde::Serialize;
use std::collections::HashMap;

/// Largest number of colours (so `(C_2)^k` has at most `2^k` elements) in a quotient.
pub const MAX_COLORS: usize = 16;

/// A graph product of finite groups whose commuting graph is the 1-skeleton of a full
/// complex `K`. All orders 2 is a right-angled Coxeter group.
#[derive(Clone, Debug)]
pub struct GraphProduct {
    pub orders: Vec<u32>,
    pub complex: SimplicialComplex,
}

impl GraphProduct {
    pub fn new(orders: Vec<u32>, complex: SimplicialComplex) -> Result<Self, DavisError> {
        if orders.len() != complex.vertex_count() {
            return Err(DavisError::Invalid(format!("{} orders for {} vertices", orders.len(), complex.vertex_count())));
        }
        if orders.iter().any(|&o| o < 2) {
            return Err(DavisError::Invalid("vertex groups must be nontrivial".into()));
        }
        if !complex.is_full() {
            return Err(DavisError::NotFull);
        }
        Ok(GraphProduct { orders, complex })
    }

    pub fn generators(&self) -> usize {
        self.orders.len()
    }

    pub fn is_racg(&self) -> bool {
        self.orders.iter().all(|&o| o == 2)
    }

    /// Pairs of commuting vertex groups.
    pub fn commuting_pairs(&self) -> Vec<(u32, u32)> {
        self.complex.simplices(1).iter().map(|e| (e[0], e[1])).collect()
    }

    /// The group is finite exactly when all vertex groups commute.
    pub fn is_finite(&self) -> bool {
        let l = self.generators();
        self.complex.simplices(1).len() == l * l.saturating_sub(1) / 2
    }

    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| self.orders.iter().map(|&o| o as u128).product())
    }

    /// Subsets generating finite special subgroups: `∅` and the simplices of `K`.
    pub fn spherical_subsets(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for d in 0..=self.complex.dimension().unwrap_or(0) {
            out.extend(self.complex.simplices(d).iter().cloned());
        }
        out
    }
}

/// Right-angled Coxeter group with `K(G) = K`.
pub fn racg_from_complex(k: &SimplicialComplex) -> Result<GraphProduct, DavisError> {
    GraphProduct::new(vec![2; k.vertex_count()], k.clone())
}

/// A colouring of the vertices by `0..k`, defining `G → (C_2)^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<u32>,
    pub k: usize,
}

impl Coloring {
    pub fn is_proper(&self, complex: &SimplicialComplex) -> bool {
        complex.simplices(1).iter().all(|e| self.colors[e[0] as usize] != self.colors[e[1] as usize])
    }
}

/// Proper colouring of the 1-skeleton: the dimension of the original face for a
/// barycentric subdivision, otherwise greedy in vertex order.
pub fn torsion_free_coloring(k: &SimplicialComplex) -> Coloring {
    if let Some(origin) = k.origin() {
        let colors: Vec<u32> = origin.iter().map(|s| s.len() as u32 - 1).collect();
        let k = colors.iter().max().map_or(0, |&c| c as usize + 1);
        return Coloring { colors, k };
    }
    greedy_coloring(k)
}

pub fn greedy_coloring(k: &SimplicialComplex) -> Coloring {
    let adj = k.adjacency();
    let mut colors = vec![u32::MAX; k.vertex_count()];
    for v in 0..colors.len() {
        let mut c = 0;
        while adj[v].iter().any(|&w| colors[w as usize] == c) {
            c += 1;
        }
        colors[v] = c;
    }
    let k = colors.iter().max().map_or(0, |&c| c as usize + 1);
    Coloring { colors, k }
}

/// `1 − ½ Σ n_i / (−2)^i`.
pub fn chiswell_chi(k: &SimplicialComplex) -> Rational64 {
    chiswell_sum(k, -2)
}

/// The formula with all signs positive, `1 − ½ Σ n_i / 2^i`.
pub fn chiswell_chi_unsigned(k: &SimplicialComplex) -> Rational64 {
    chiswell_sum(k, 2)
}

fn chiswell_sum(k: &SimplicialComplex, base: i64) -> Rational64 {
    let mut sum = Rational64::from_integer(0);
    let mut scale = Rational64::from_integer(1);
    for n in k.counts() {
        sum += scale * n as i64;
        scale /= base;
    }
    Rational64::from_integer(1) - sum / 2
}

/// `Σ (−1)^n / 2^{|S_0|}` over chains `S_0 < … < S_n` of spherical subsets (`S_0` may be
/// empty): the Euler characteristic of `D(G)/G` counted with stabiliser weights.
pub fn orbifold_chi(k: &SimplicialComplex) -> Rational64 {
    // g(S) = Σ over chains starting at S of (−1)^n = 1 − Σ_{T ⊋ S} g(T)
    let dim = k.dimension().map_or(0, |d| d + 1);
    let mut g: HashMap<Vec<u32>, i64> = HashMap::new();
    let mut total = Rational64::from_integer(0);
    for size in (0..=dim).rev() {
        let layer: Vec<Vec<u32>> = if size == 0 { vec![Vec::new()] } else { k.simplices(size - 1).to_vec() };
        for s in layer {
            let above = g.get(&s).copied().unwrap_or(0);
            let value = 1 - above;
            total += Rational64::new(value, 1 << size);
            // propagate to proper subsets
            for mask in 0u32..(1 << size) - 1 {
                let sub: Vec<u32> = s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                *g.entry(sub).or_insert(0) += value;
            }
        }
    }
    total
}

/// Quotient of the Davis complex by the kernel of a proper colouring `G → (C_2)^k`.
///
/// Vertices are pairs `(S, x)` with `S` spherical and `x` a coset of the image `A_S` of
/// `G(S)`, represented by the bits of `x` outside `A_S`. An `n`-simplex is a chain
/// `S_0 < … < S_n` with a coset of `A_{S_0}`.
#[derive(Clone, Debug)]
pub struct DavisQuotient {
    pub source: GraphProduct,
    pub coloring: Coloring,
    pub complex: SimplicialComplex,
    /// `(S, coset representative)` for each vertex of `complex`.
    pub vertex_types: Vec<(Vec<u32>, u32)>,
}

pub fn davis_quotient(gp: &GraphProduct, coloring: &Coloring) -> Result<DavisQuotient, DavisError> {
    if !gp.is_racg() {
        return Err(DavisError::Invalid("quotients are built for right-angled Coxeter groups only".into()));
    }
    let k = &gp.complex;
    if coloring.colors.len() != k.vertex_count() || coloring.colors.iter().any(|&c| c as usize >= coloring.k) {
        return Err(DavisError::Invalid("colouring does not match the complex".into()));
    }
    if !coloring.is_proper(k) {
        return Err(DavisError::Invalid("colouring is not proper on edges".into()));
    }
    if coloring.k > MAX_COLORS {
        return Err(DavisError::Invalid(format!("{} colours exceed the limit {MAX_COLORS}", coloring.k)));
    }
    let mask = |s: &[u32]| s.iter().fold(0u32, |m, &v| m | 1 << coloring.colors[v as usize]);
    let mut ids: HashMap<(Vec<u32>, u32), u32> = HashMap::new();
    let mut vertex_types = Vec::new();
    for s in gp.spherical_subsets() {
        let a = mask(&s);
        for x in 0u32..1 << coloring.k {
            if x & a == 0 {
                ids.insert((s.clone(), x), vertex_types.len() as u32);
                vertex_types.push((s.clone(), x));
            }
        }
    }
    let flags = barycentric_flags(k);
    let mut facets = Vec::with_capacity(flags.len() << coloring.k);
    for chain in &flags {
        for x in 0u32..1 << coloring.k {
            let mut f = Vec::with_capacity(chain.len() + 1);
            f.push(ids[&(Vec::new(), x)]);
            for s in chain {
                f.push(ids[&(s.clone(), x & !mask(s))]);
            }
            facets.push(f);
        }
    }
    let complex = if facets.is_empty() {
        // K empty: G trivial, the quotient is a point
        SimplicialComplex::point()
    } else {
        SimplicialComplex::from_facets(vertex_types.len(), &facets)?
    };
    let q = DavisQuotient { source: gp.clone(), coloring: coloring.clone(), complex, vertex_types };
    q.check()?;
    Ok(q)
}

/// Maximal chains `{v_1} < {v_1, v_2} < … < σ` of nonempty simplices ending at facets.
fn barycentric_flags(k: &SimplicialComplex) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    fn grow(k: &SimplicialComplex, cur: &mut Vec<Vec<u32>>, top: &[u32], out: &mut Vec<Vec<Vec<u32>>>) {
        let last = cur.last().cloned().unwrap_or_default();
        if last.len() == top.len() {
            out.push(cur.clone());
            return;
        }
        for &v in top.iter().filter(|v| !last.contains(v)) {
            let mut next = last.clone();
            next.push(v);
            next.sort_unstable();
            debug_assert!(k.index_of(&next).is_some());
            cur.push(next);
            grow(k, cur, top, out);
            cur.pop();
        }
    }
    for f in k.facets() {
        grow(k, &mut Vec::new(), &f, &mut out);
    }
    out
}

impl DavisQuotient {
    pub fn index(&self) -> u64 {
        1 << self.coloring.k
    }

    /// χ of the quotient divided by the index `2^k`.
    pub fn chi_over_index(&self) -> Rational64 {
        Rational64::new(self.complex.euler_characteristic(), self.index() as i64)
    }

    /// Vertices of type `S` number `2^{k−|S|}`, χ equals `2^k` times the orbifold χ and the
    /// quotient is connected.
    fn check(&self) -> Result<(), DavisError> {
        let mut by_type: HashMap<&[u32], u64> = HashMap::new();
        for v in 0..self.complex.vertex_count() as u32 {
            if self.complex.index_of(&[v]).is_some() {
                *by_type.entry(self.vertex_types[v as usize].0.as_slice()).or_insert(0) += 1;
            }
        }
        for s in self.source.spherical_subsets() {
            let want = 1u64 << (self.coloring.k - s.len());
            let got = by_type.get(s.as_slice()).copied().unwrap_or(0);
            if got != want && !self.source.complex.simplices(0).is_empty() {
                return Err(DavisError::CrossCheck(format!("{got} vertices of type {s:?}, expected {want}")));
            }
        }
        let orbifold = orbifold_chi(&self.source.complex);
        if self.chi_over_index() != orbifold {
            return Err(DavisError::CrossCheck(format!(
                "χ(quotient)/2^k = {} but the orbifold χ is {orbifold}",
                self.chi_over_index()
            )));
        }
        if self.complex.components() != 1 {
            return Err(DavisError::CrossCheck("quotient is disconnected".into()));
        }
        Ok(())
    }
}

/// `n_i` of `K` with the Euler characteristic of the Coxeter group computed three ways.
#[derive(Clone, Debug, Serialize)]
pub struct EulerReport {
    pub n: Vec<usize>,
    pub chi_chiswell: String,
    pub chi_unsigned: String,
    pub chi_orbifold: String,
    pub chi_quotient_over_index: Option<String>,
    pub consistent: bool,
}

pub fn euler_report(k: &SimplicialComplex, quotient: Option<&DavisQuotient>) -> EulerReport {
    let chis = chiswell_chi(k);
    let orb = orbifold_chi(k);
    let q = quotient.map(DavisQuotient::chi_over_index);
    EulerReport {
        n: k.counts(),
        chi_chiswell: chis.to_string(),
        chi_unsigned: chiswell_chi_unsigned(k).to_string(),
        chi_orbifold: orb.to_string(),
        chi_quotient_over_index: q.map(|x| x.to_string()),
        consistent: chis == orb && q.is_none_or(|x| x == orb),
    }
}
