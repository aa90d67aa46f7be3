//! Pivot structure for bar-complex boundaries coming from a polycyclic rewriting system.
//!
//! Every non-identity element has a normal form `x_1^{e_1} ... x_k^{e_k}` in a polycyclic
//! generating sequence, read as a word in letters `x_i`. A cell `[w_1|...|w_n]` is either
//! critical (an Anick chain), the lower or the upper end of a matched pair. The matched
//! face of a pair always has coefficient ±1, so eliminating all matched pairs is Gaussian
//! elimination with forced unit pivots; what remains is the small Morse boundary between
//! critical cells, computed by expanding gradient paths.

use crate::groups::{derived_subgroup, subgroup_closure, FiniteGroup};
use std::collections::BTreeMap;

/// Polycyclic generating sequence with prime relative orders.
#[derive(Clone, Debug)]
pub struct Pcgs {
    pub gens: Vec<usize>,
    pub rel_orders: Vec<u32>,
    /// Per element: letters of its normal form, each letter an index into `gens`.
    words: Vec<Vec<u8>>,
    /// Element of each letter word prefix: `prefix[g][m]` is the product of the first m letters.
    prefix: Vec<Vec<u16>>,
}

impl Pcgs {
    /// Composition series refining the derived series; `None` for non-solvable groups.
    pub fn new(g: &FiniteGroup) -> Option<Pcgs> {
        let n = g.order();
        let mut series = vec![subgroup_closure(g, g.generators())];
        loop {
            let last = series.last().unwrap();
            if last.order() == 1 {
                break;
            }
            let sub = last.as_group(g, "D");
            let d = derived_subgroup(&sub);
            if d.order() == last.order() {
                return None;
            }
            let members: Vec<usize> = d.members.iter().map(|&i| last.members[i]).collect();
            series.push(subgroup_closure(g, &members));
        }
        // Refine each abelian section bottom-up into prime steps.
        let mut gens_rev: Vec<usize> = Vec::new();
        let mut orders_rev: Vec<u32> = Vec::new();
        for w in series.windows(2).rev() {
            let (top, bottom) = (&w[0], &w[1]);
            let mut cur: Vec<usize> = bottom.members.clone();
            let mut cur_gens: Vec<usize> = gens_rev.clone();
            while cur.len() < top.order() {
                let inside = |set: &[usize], x: usize| set.binary_search(&x).is_ok();
                let y = *top.members.iter().find(|&&y| !inside(&cur, y)).unwrap();
                let mut t = 1;
                let mut yy = y;
                while !inside(&cur, yy) {
                    yy = g.mul(yy, y);
                    t += 1;
                }
                let q = smallest_prime_factor(t);
                let z = g.pow(y, (t / q) as i64);
                cur_gens.push(z);
                cur = subgroup_closure(g, &cur_gens_with(&cur_gens, &bottom.members)).members;
                gens_rev.push(z);
                orders_rev.push(q as u32);
            }
        }
        let gens: Vec<usize> = gens_rev.into_iter().rev().collect();
        let rel_orders: Vec<u32> = orders_rev.into_iter().rev().collect();
        // G_i = <x_i, ..., x_k>
        let k = gens.len();
        let mut layers: Vec<Vec<bool>> = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let sub = subgroup_closure(g, &gens[i..]);
            let mut mask = vec![false; n];
            sub.members.iter().for_each(|&m| mask[m] = true);
            layers.push(mask);
        }
        let mut words = Vec::with_capacity(n);
        let mut prefix = Vec::with_capacity(n);
        for x in 0..n {
            let mut rem = x;
            let mut word = Vec::new();
            for i in 0..k {
                let xi_inv = g.inv(gens[i]);
                let mut e = 0;
                while !layers[i + 1][rem] {
                    rem = g.mul(xi_inv, rem);
                    e += 1;
                    debug_assert!(e < rel_orders[i]);
                }
                word.extend(std::iter::repeat_n(i as u8, e as usize));
            }
            debug_assert_eq!(rem, 0);
            let mut pre = vec![0u16];
            let mut acc = 0;
            for &l in &word {
                acc = g.mul(acc, gens[l as usize]);
                pre.push(acc as u16);
            }
            debug_assert_eq!(acc, x);
            words.push(word);
            prefix.push(pre);
        }
        Some(Pcgs { gens, rel_orders, words, prefix })
    }

    pub fn word(&self, g: usize) -> &[u8] {
        &self.words[g]
    }

    fn lead(&self, g: usize) -> (u8, usize) {
        let w = &self.words[g];
        let t = w.iter().take_while(|&&l| l == w[0]).count();
        (w[0], t)
    }

    fn tail(&self, g: usize) -> (u8, usize) {
        let w = &self.words[g];
        let l = *w.last().unwrap();
        (l, w.iter().rev().take_while(|&&x| x == l).count())
    }

    /// Splits `g` as (first m letters, remaining letters).
    fn split(&self, g: &FiniteGroup, x: usize, m: usize) -> (usize, usize) {
        let pre = self.prefix[x][m] as usize;
        (pre, g.mul(g.inv(pre), x))
    }
}

fn cur_gens_with(gens: &[usize], base: &[usize]) -> Vec<usize> {
    let mut v = gens.to_vec();
    v.extend_from_slice(base);
    v
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n % d == 0).unwrap()
}

enum Step {
    Chain,
    Split(usize),
    Irreducible,
}

#[derive(Debug, PartialEq, Eq)]
pub enum CellKind {
    Critical,
    /// Matched with the higher cell; the matched face has sign `sign`.
    Lower { upper: Vec<usize>, sign: i64 },
    Upper,
}

pub struct Matching<'a> {
    pub group: &'a FiniteGroup,
    pub pcgs: Pcgs,
}

impl<'a> Matching<'a> {
    pub fn new(group: &'a FiniteGroup) -> Option<Self> {
        Some(Matching { group, pcgs: Pcgs::new(group)? })
    }

    fn step(&self, a: usize, b: usize) -> Step {
        let (la, s) = self.pcgs.tail(a);
        let (fb, t) = self.pcgs.lead(b);
        let len_b = self.pcgs.words[b].len();
        if fb < la {
            return if len_b == 1 { Step::Chain } else { Step::Split(1) };
        }
        if fb == la {
            let m = self.pcgs.rel_orders[la as usize] as usize - s;
            if t >= m {
                return if len_b == m { Step::Chain } else { Step::Split(m) };
            }
        }
        Step::Irreducible
    }

    pub fn classify(&self, c: &[usize]) -> CellKind {
        if c.is_empty() {
            return CellKind::Critical;
        }
        if self.pcgs.words[c[0]].len() >= 2 {
            return CellKind::Lower { upper: self.split_at(c, 0, 1), sign: -1 };
        }
        for j in 1..c.len() {
            match self.step(c[j - 1], c[j]) {
                Step::Chain => continue,
                Step::Split(m) => {
                    let sign = if (j + 1) % 2 == 0 { 1 } else { -1 };
                    return CellKind::Lower { upper: self.split_at(c, j, m), sign };
                }
                Step::Irreducible => return CellKind::Upper,
            }
        }
        CellKind::Critical
    }

    fn split_at(&self, c: &[usize], j: usize, m: usize) -> Vec<usize> {
        let (u, v) = self.pcgs.split(self.group, c[j], m);
        let mut out = Vec::with_capacity(c.len() + 1);
        out.extend_from_slice(&c[..j]);
        out.push(u);
        out.push(v);
        out.extend_from_slice(&c[j + 1..]);
        out
    }

    /// Critical cells of degree n, in lexicographic order.
    pub fn critical_cells(&self, n: usize) -> Vec<Vec<usize>> {
        let g = self.group;
        if n == 0 {
            return vec![vec![]];
        }
        let letters: Vec<usize> = (1..g.order()).filter(|&x| self.pcgs.words[x].len() == 1).collect();
        let mut level: Vec<Vec<usize>> = letters.iter().map(|&x| vec![x]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for c in &level {
                let a = *c.last().unwrap();
                for b in 1..g.order() {
                    if let Step::Chain = self.step(a, b) {
                        let mut d = c.clone();
                        d.push(b);
                        next.push(d);
                    }
                }
            }
            level = next;
        }
        level.sort();
        level
    }

    /// Number of critical cells in each degree 0..=n.
    pub fn critical_counts(&self, n: usize) -> Vec<usize> {
        (0..=n).map(|d| self.critical_cells(d).len()).collect()
    }
}

/// Faces of a normalized bar cell with their signs; degenerate faces are dropped and
/// repeated faces are not merged.
pub fn bar_faces(g: &FiniteGroup, c: &[usize], mut f: impl FnMut(&[usize], i64)) {
    let n = c.len();
    if n == 0 {
        return;
    }
    let mut face = Vec::with_capacity(n);
    face.extend_from_slice(&c[1..]);
    f(&face, 1);
    for i in 0..n - 1 {
        let prod = g.mul(c[i], c[i + 1]);
        if prod == 0 {
            continue;
        }
        face.clear();
        face.extend_from_slice(&c[..i]);
        face.push(prod);
        face.extend_from_slice(&c[i + 2..]);
        f(&face, if (i + 1) % 2 == 0 { 1 } else { -1 });
    }
    face.clear();
    face.extend_from_slice(&c[..n - 1]);
    f(&face, if n % 2 == 0 { 1 } else { -1 });
}

pub(crate) fn encode_cell(base: u64, c: &[usize]) -> u64 {
    c.iter().fold(0u64, |a, &x| a * base + x as u64)
}

fn decode_cell(base: u64, mut key: u64, n: usize) -> Vec<usize> {
    let mut c = vec![0usize; n];
    for i in (0..n).rev() {
        c[i] = (key % base) as usize;
        key /= base;
    }
    c
}

/// Error raised when a coefficient leaves the i64 range during path expansion.
#[derive(Debug)]
pub struct CoefficientOverflow;

impl<'a> Matching<'a> {
    /// Morse boundary of a critical n-cell: coefficients on critical (n-1)-cells, as
    /// integers (reduce afterwards for F_p) or directly mod `modulus` when given.
    pub fn morse_boundary(
        &self,
        tau: &[usize],
        modulus: Option<i64>,
    ) -> Result<BTreeMap<Vec<usize>, i64>, CoefficientOverflow> {
        let g = self.group;
        let base = g.order() as u64;
        let n = tau.len();
        let norm = |x: i64| match modulus {
            Some(m) => x.rem_euclid(m),
            None => x,
        };
        let mut pending: BTreeMap<u64, i64> = BTreeMap::new();
        let overflow = std::cell::Cell::new(false);
        let add = |pending: &mut BTreeMap<u64, i64>, face: &[usize], w: i64| {
            let e = pending.entry(encode_cell(base, face)).or_insert(0);
            match e.checked_add(w) {
                Some(x) => *e = norm(x),
                None => overflow.set(true),
            }
        };
        bar_faces(g, tau, |f, s| add(&mut pending, f, s));
        let mut result: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        while let Some((key, coef)) = pending.pop_last() {
            if coef == 0 {
                continue;
            }
            let cell = decode_cell(base, key, n - 1);
            match self.classify(&cell) {
                CellKind::Critical => {
                    let e = result.entry(cell).or_insert(0);
                    *e = norm(e.checked_add(coef).ok_or(CoefficientOverflow)?);
                }
                CellKind::Upper => {}
                CellKind::Lower { upper, sign } => {
                    let factor = -coef * sign;
                    let skip = key;
                    bar_faces(g, &upper, |f, s| {
                        if encode_cell(base, f) != skip {
                            match factor.checked_mul(s) {
                                Some(w) => add(&mut pending, f, w),
                                None => overflow.set(true),
                            }
                        }
                    });
                }
            }
            if overflow.get() {
                return Err(CoefficientOverflow);
            }
        }
        result.retain(|_, v| *v != 0);
        Ok(result)
    }
}
