use super::{Domain, LinalgError, SparseMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::BinaryHeap;

const NONE: u32 = u32::MAX;

/// Nonzero diagonal of the Smith form, as a divisibility chain `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithReport {
    #[serde(serialize_with = "serialize_bigints")]
    pub elementary_divisors: Vec<BigInt>,
    pub rank: usize,
}

fn serialize_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl SmithReport {
    /// Divisors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.elementary_divisors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// Product of the divisors different from 1.
    pub fn torsion_order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> Result<SmithReport, LinalgError> {
    match m.domain() {
        Domain::Integers => Ok(smith_stream(
            m.rows(),
            (0..m.cols()).map(|c| m.column(c).to_vec()),
            None,
        )),
        Domain::Prime(p) => {
            let rank = super::rank_mod_p(m, p)?;
            Ok(SmithReport { elementary_divisors: vec![BigInt::one(); rank], rank })
        }
    }
}

/// Smith form of an integer matrix supplied column by column.
///
/// Columns are reduced against a basis whose pivots are units; a column whose remainder
/// has no unit entry is set aside and the leftover block is finished by dense elimination.
pub fn smith_stream(
    n_rows: usize,
    columns: impl IntoIterator<Item = Vec<(u32, i64)>>,
    row_weights: Option<Vec<u32>>,
) -> SmithReport {
    let mut ech = UnitEchelon::new(n_rows, row_weights);
    let mut hard: Vec<Vec<(u32, BigInt)>> = Vec::new();
    for col in columns {
        match ech.insert(&col) {
            Outcome::Inserted | Outcome::Dependent => {}
            Outcome::Hard(rem) => hard.push(rem.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect()),
            Outcome::Overflow => hard.push(col.iter().map(|&(r, v)| (r, BigInt::from(v))).collect()),
        }
    }
    // Later unit pivots may touch earlier hard remainders; re-reduce until no unit appears.
    loop {
        let mut progress = false;
        let mut rest = Vec::new();
        for h in hard {
            let rem = ech.reduce_big(&h);
            if rem.is_empty() {
                continue;
            }
            let small: Option<Vec<(u32, i64)>> = rem
                .iter()
                .map(|(r, v)| i64::try_from(v).ok().map(|x| (*r, x)))
                .collect();
            if let Some(small) = small {
                if small.iter().any(|e| e.1.abs() == 1) {
                    if let Outcome::Inserted = ech.insert(&small) {
                        progress = true;
                        continue;
                    }
                }
            }
            rest.push(rem);
        }
        hard = rest;
        if !progress {
            break;
        }
    }
    let ones = ech.rank();
    let mut rows: Vec<u32> = hard.iter().flat_map(|h| h.iter().map(|e| e.0)).collect();
    rows.sort_unstable();
    rows.dedup();
    let mut dense = vec![vec![BigInt::zero(); hard.len()]; rows.len()];
    for (j, h) in hard.iter().enumerate() {
        for (r, v) in h {
            let i = rows.binary_search(r).unwrap();
            dense[i][j] = v.clone();
        }
    }
    let mut divisors = vec![BigInt::one(); ones];
    divisors.extend(dense_smith_diagonal(dense));
    divisors.sort();
    SmithReport { rank: divisors.len(), elementary_divisors: divisors }
}

enum Outcome {
    Inserted,
    Dependent,
    Hard(Vec<(u32, i64)>),
    Overflow,
}

/// Integer column echelon whose pivots are 1; vector `i` vanishes on pivot rows of `j < i`.
struct UnitEchelon {
    pivot_of_row: Vec<u32>,
    pivot_row: Vec<u32>,
    basis: Vec<Vec<(u32, i64)>>,
    row_weights: Option<Vec<u32>>,
    acc: Vec<i64>,
    stamp: Vec<u32>,
    generation: u32,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl UnitEchelon {
    fn new(n_rows: usize, row_weights: Option<Vec<u32>>) -> Self {
        UnitEchelon {
            pivot_of_row: vec![NONE; n_rows],
            pivot_row: Vec::new(),
            basis: Vec::new(),
            row_weights,
            acc: vec![0; n_rows],
            stamp: vec![0; n_rows],
            generation: 0,
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn next_generation(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
        self.touched.clear();
        self.heap.clear();
    }

    fn touch(&mut self, r: u32) {
        let ri = r as usize;
        if self.stamp[ri] != self.generation {
            self.stamp[ri] = self.generation;
            self.acc[ri] = 0;
            self.touched.push(r);
        }
    }

    /// Returns false on i64 overflow.
    fn reduce_small(&mut self, col: &[(u32, i64)]) -> bool {
        self.next_generation();
        for &(r, v) in col {
            self.touch(r);
            let a = &mut self.acc[r as usize];
            match a.checked_add(v) {
                Some(x) => *a = x,
                None => return false,
            }
            let b = self.pivot_of_row[r as usize];
            if b != NONE {
                self.heap.push(Reverse(b));
            }
        }
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
            for k in 0..self.basis[i as usize].len() {
                let (s, w) = self.basis[i as usize][k];
                self.touch(s);
                let si = s as usize;
                let was_zero = self.acc[si] == 0;
                let Some(x) = c.checked_mul(w).and_then(|t| self.acc[si].checked_sub(t)) else {
                    return false;
                };
                self.acc[si] = x;
                if was_zero && x != 0 {
                    let b = self.pivot_of_row[si];
                    if b != NONE && b > i {
                        self.heap.push(Reverse(b));
                    }
                }
            }
        }
        true
    }

    fn insert(&mut self, col: &[(u32, i64)]) -> Outcome {
        if !self.reduce_small(col) {
            return Outcome::Overflow;
        }
        let mut rem: Vec<(u32, i64)> = self
            .touched
            .iter()
            .filter(|&&r| self.acc[r as usize] != 0)
            .map(|&r| (r, self.acc[r as usize]))
            .collect();
        if rem.is_empty() {
            return Outcome::Dependent;
        }
        rem.sort_unstable_by_key(|e| e.0);
        let pivot = rem
            .iter()
            .filter(|e| e.1.abs() == 1)
            .min_by_key(|e| (self.row_weights.as_ref().map_or(0, |w| w[e.0 as usize]), e.0))
            .copied();
        let Some((pr, pv)) = pivot else {
            return Outcome::Hard(rem);
        };
        if pv == -1 {
            rem.iter_mut().for_each(|e| e.1 = -e.1);
        }
        self.pivot_of_row[pr as usize] = self.basis.len() as u32;
        self.pivot_row.push(pr);
        self.basis.push(rem);
        Outcome::Inserted
    }

    fn reduce_big(&mut self, col: &[(u32, BigInt)]) -> Vec<(u32, BigInt)> {
        use std::collections::BTreeMap;
        let mut acc: BTreeMap<u32, BigInt> = col.iter().cloned().collect();
        let mut heap: BinaryHeap<Reverse<u32>> = BinaryHeap::new();
        for r in acc.keys() {
            let b = self.pivot_of_row[*r as usize];
            if b != NONE {
                heap.push(Reverse(b));
            }
        }
        let mut last = NONE;
        while let Some(Reverse(i)) = heap.pop() {
            if i == last {
                continue;
            }
            last = i;
            let r = self.pivot_row[i as usize];
            let c = match acc.get(&r) {
                Some(c) if !c.is_zero() => c.clone(),
                _ => continue,
            };
            for &(s, w) in &self.basis[i as usize] {
                let e = acc.entry(s).or_insert_with(BigInt::zero);
                let was_zero = e.is_zero();
                *e -= &c * w;
                if was_zero && !e.is_zero() {
                    let b = self.pivot_of_row[s as usize];
                    if b != NONE && b > i {
                        heap.push(Reverse(b));
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Nonzero Smith divisors of a dense integer matrix.
pub(crate) fn dense_smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let (head, tail) = a.split_at_mut(i);
                let pivot_row = &head[t];
                for (x, y) in tail[0].iter_mut().zip(pivot_row.iter()).skip(t) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let mut best = (t, t);
            for i in t..m {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..n {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}
