use super::SimplicialComplex;
use crate::linalg::{smith_stream, SmithReport};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        HomologyGroup { rank: 0, torsion: vec![BigInt::from(n)] }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Least common multiple of the torsion coefficients (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |a, t| a.lcm(t))
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Smith form of `∂_n : C_n → C_{n−1}`, with faces ordered lexicographically and
/// `∂[v_0..v_n] = Σ (−1)^i [.. v̂_i ..]`.
pub fn boundary_smith(k: &SimplicialComplex, n: usize) -> SmithReport {
    if n == 0 || k.simplices(n).is_empty() {
        return SmithReport { elementary_divisors: Vec::new(), rank: 0 };
    }
    let rows = k.simplices(n - 1).len();
    let columns = k.simplices(n).iter().map(|s| {
        (0..s.len())
            .map(|skip| {
                let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                let sign = if skip % 2 == 0 { 1 } else { -1 };
                (k.index_of(&face).expect("complex is face-closed") as u32, sign)
            })
            .collect::<Vec<_>>()
    });
    smith_stream(rows, columns, None)
}

/// Integral homology `H_0, …, H_dim` (empty for the empty complex).
pub fn homology(k: &SimplicialComplex) -> Vec<HomologyGroup> {
    let Some(dim) = k.dimension() else {
        return Vec::new();
    };
    let smith: Vec<SmithReport> = (0..=dim + 1).into_par_iter().map(|n| boundary_smith(k, n)).collect();
    (0..=dim)
        .map(|n| HomologyGroup {
            rank: k.simplices(n).len() - smith[n].rank - smith[n + 1].rank,
            torsion: smith[n + 1].torsion(),
        })
        .collect()
}

/// `H^n(K; Z)`: the free part of `H_n` plus the torsion of `H_{n−1}`.
pub fn cohomology_degree(k: &SimplicialComplex, n: usize) -> HomologyGroup {
    let h = homology(k);
    cohomology_from_homology(&h, n)
}

pub fn cohomology_from_homology(h: &[HomologyGroup], n: usize) -> HomologyGroup {
    let rank = h.get(n).map_or(0, |g| g.rank);
    let torsion = n.checked_sub(1).and_then(|m| h.get(m)).map_or(Vec::new(), |g| g.torsion.clone());
    HomologyGroup { rank, torsion }
}
