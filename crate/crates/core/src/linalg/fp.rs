use std::cmp::Reverse;
use std::collections::BinaryHeap;

const NONE: u32 = u32::MAX;

pub fn inv_mod(a: u32, p: u32) -> u32 {
    // p prime, a != 0 mod p
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u32, mut e: u32, p: u32) -> u32 {
    let mut r: u64 = 1 % p as u64;
    let m = p as u64;
    let mut b = a as u64 % m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    a = r as u32;
    a
}

/// Incremental column echelon form over F_p.
///
/// Basis vectors are stored with their pivot entry normalized to 1; vector `i` vanishes on
/// the pivot rows of all vectors `j < i`, so reduction proceeds in increasing basis order.
/// With tracking enabled, each basis vector also records its expression in the inserted
/// columns, which makes `express` and `insert_or_relation` available.
pub struct FpEchelon {
    p: u32,
    pivot_of_row: Vec<u32>,
    pivot_row: Vec<u32>,
    basis: Vec<Vec<(u32, u32)>>,
    combos: Option<Vec<Vec<(u32, u32)>>>,
    n_inserted: u32,
    row_weights: Option<Vec<u32>>,
    acc: Vec<u32>,
    stamp: Vec<u32>,
    generation: u32,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
    used: Vec<(u32, u32)>,
}

impl FpEchelon {
    pub fn new(n_rows: usize, p: u32, track: bool) -> Self {
        FpEchelon {
            p,
            pivot_of_row: vec![NONE; n_rows],
            pivot_row: Vec::new(),
            basis: Vec::new(),
            combos: track.then(Vec::new),
            n_inserted: 0,
            row_weights: None,
            acc: vec![0; n_rows],
            stamp: vec![0; n_rows],
            generation: 0,
            touched: Vec::new(),
            heap: BinaryHeap::new(),
            used: Vec::new(),
        }
    }

    /// Pivots are chosen among the nonzero entries of a reduced column by least weight.
    pub fn set_row_weights(&mut self, w: Vec<u32>) {
        assert_eq!(w.len(), self.acc.len());
        self.row_weights = Some(w);
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn stored_entries(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    fn load(&mut self, col: &[(u32, u32)]) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.touched.clear();
        self.used.clear();
        let p = self.p as u64;
        for &(r, v) in col {
            let ri = r as usize;
            if self.stamp[ri] != self.generation {
                self.stamp[ri] = self.generation;
                self.acc[ri] = 0;
                self.touched.push(r);
            }
            self.acc[ri] = ((self.acc[ri] as u64 + v as u64) % p) as u32;
            let b = self.pivot_of_row[ri];
            if b != NONE {
                self.heap.push(Reverse(b));
            }
        }
    }

    fn eliminate(&mut self) {
        let p = self.p as u64;
        let track = self.combos.is_some();
        let mut last = NONE;
        while let Some(Reverse(i)) = self.heap.pop() {
            if i == last {
                continue;
            }
            last = i;
            let r = self.pivot_row[i as usize] as usize;
            let c = self.acc[r];
            if c == 0 {
                continue;
            }
            if track {
                self.used.push((i, c));
            }
            let neg = p - c as u64;
            for &(s, w) in &self.basis[i as usize] {
                let si = s as usize;
                if self.stamp[si] != self.generation {
                    self.stamp[si] = self.generation;
                    self.acc[si] = 0;
                    self.touched.push(s);
                }
                let was_zero = self.acc[si] == 0;
                self.acc[si] = ((self.acc[si] as u64 + neg * w as u64) % p) as u32;
                if was_zero && self.acc[si] != 0 {
                    let b = self.pivot_of_row[si];
                    if b != NONE && b > i {
                        self.heap.push(Reverse(b));
                    }
                }
            }
        }
    }

    fn remainder(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self
            .touched
            .iter()
            .filter(|&&r| self.acc[r as usize] != 0)
            .map(|&r| (r, self.acc[r as usize]))
            .collect();
        v.sort_unstable_by_key(|e| e.0);
        v
    }

    /// Remainder of `col` after reduction against the current span.
    pub fn reduce(&mut self, col: &[(u32, u32)]) -> Vec<(u32, u32)> {
        self.load(col);
        self.eliminate();
        self.remainder()
    }

    /// Inserts a column; returns whether the rank increased.
    pub fn insert(&mut self, col: &[(u32, u32)]) -> bool {
        self.insert_or_relation(col).is_none()
    }

    /// Inserts a column. If it is dependent, returns the linear relation among the
    /// inserted columns (indexed by insertion order) that it completes; with tracking
    /// disabled the relation is empty.
    pub fn insert_or_relation(&mut self, col: &[(u32, u32)]) -> Option<Vec<(u32, u32)>> {
        let idx = self.n_inserted;
        self.n_inserted += 1;
        self.load(col);
        self.eliminate();
        let rem = self.remainder();
        let p = self.p as u64;
        let combo = self.combos.as_ref().map(|combos| {
            let mut terms: Vec<(u32, u32)> = vec![(idx, 1)];
            for &(i, c) in &self.used {
                let neg = p - c as u64;
                for &(j, w) in &combos[i as usize] {
                    terms.push((j, (neg * w as u64 % p) as u32));
                }
            }
            merge_terms(terms, self.p)
        });
        if rem.is_empty() {
            return Some(combo.unwrap_or_default());
        }
        let (k, &(pr, pv)) = rem
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| {
                (self.row_weights.as_ref().map_or(0, |w| w[e.0 as usize]), e.0)
            })
            .unwrap();
        let _ = k;
        let s = inv_mod(pv, self.p) as u64;
        let vec: Vec<(u32, u32)> = rem.iter().map(|&(r, v)| (r, (v as u64 * s % p) as u32)).collect();
        let b = self.basis.len() as u32;
        self.pivot_of_row[pr as usize] = b;
        self.pivot_row.push(pr);
        self.basis.push(vec);
        if let (Some(combos), Some(combo)) = (self.combos.as_mut(), combo) {
            combos.push(combo.into_iter().map(|(j, w)| (j, (w as u64 * s % p) as u32)).collect());
        }
        None
    }

    /// Expresses `target` as a combination of the inserted columns. Requires tracking.
    pub fn express(&mut self, target: &[(u32, u32)]) -> Option<Vec<(u32, u32)>> {
        assert!(self.combos.is_some(), "express requires tracking");
        self.load(target);
        self.eliminate();
        if !self.remainder().is_empty() {
            return None;
        }
        let combos = self.combos.as_ref().unwrap();
        let mut terms = Vec::new();
        for &(i, c) in &self.used {
            for &(j, w) in &combos[i as usize] {
                terms.push((j, (c as u64 * w as u64 % self.p as u64) as u32));
            }
        }
        Some(merge_terms(terms, self.p))
    }
}

fn merge_terms(mut terms: Vec<(u32, u32)>, p: u32) -> Vec<(u32, u32)> {
    terms.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(terms.len());
    for (j, w) in terms {
        match out.last_mut() {
            Some(last) if last.0 == j => last.1 = ((last.1 as u64 + w as u64) % p as u64) as u32,
            _ => out.push((j, w)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_prime() {
        for p in [2u32, 3, 5, 7, 101] {
            for a in 1..p {
                assert_eq!(a as u64 * inv_mod(a, p) as u64 % p as u64, 1);
            }
        }
    }

    #[test]
    fn relation_and_expression() {
        let mut e = FpEchelon::new(3, 5, true);
        assert!(e.insert(&[(0, 1), (1, 2)]));
        assert!(e.insert(&[(1, 1), (2, 1)]));
        // 2*c0 + 3*c1 = (2, 4+3, 3) = (2, 2, 3)
        let rel = e.insert_or_relation(&[(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(rel, vec![(0, 3), (1, 2), (2, 1)]);
        assert_eq!(e.express(&[(0, 1), (1, 2)]), Some(vec![(0, 1)]));
        assert_eq!(e.express(&[(2, 1), (0, 1)]), None);
        assert_eq!(e.rank(), 2);
    }
}
