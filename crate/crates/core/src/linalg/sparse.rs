use super::{is_prime, LinalgError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    Integers,
    Prime(u32),
}

impl Domain {
    pub fn tag(&self) -> String {
        match self {
            Domain::Integers => "Z".to_string(),
            Domain::Prime(p) => format!("F{p}"),
        }
    }

    pub fn parse(s: &str) -> Result<Domain, LinalgError> {
        if s == "Z" {
            return Ok(Domain::Integers);
        }
        let p: u32 = s
            .strip_prefix('F')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| LinalgError::Parse(format!("unknown domain {s:?}")))?;
        if !is_prime(p as u64) {
            return Err(LinalgError::NotPrime(p as u64));
        }
        Ok(Domain::Prime(p))
    }
}

/// Column-major sparse matrix. Each column is sorted by row with no explicit zeros;
/// over F_p entries lie in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, domain: Domain) -> Self {
        SparseMatrix { rows, cols, domain, data: vec![Vec::new(); cols] }
    }

    /// Builds from (row, col, value) triples; duplicates are rejected, zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        domain: Domain,
        triplets: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Result<Self, LinalgError> {
        if let Domain::Prime(p) = domain {
            if !is_prime(p as u64) {
                return Err(LinalgError::NotPrime(p as u64));
            }
        }
        let mut data = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            let v = match domain {
                Domain::Prime(p) => v.rem_euclid(p as i64),
                Domain::Integers => v,
            };
            data[c].push((r as u32, v));
        }
        for (c, col) in data.iter_mut().enumerate() {
            col.sort_unstable_by_key(|e| e.0);
            if let Some(w) = col.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(LinalgError::Duplicate(w[0].0 as usize, c));
            }
            col.retain(|e| e.1 != 0);
        }
        Ok(SparseMatrix { rows, cols, domain, data })
    }

    /// Builds from columns that may contain repeated rows; repeated entries are summed.
    pub fn from_columns(rows: usize, domain: Domain, columns: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = columns.len();
        let data = columns
            .into_iter()
            .map(|c| normalize_column(c, domain))
            .collect();
        SparseMatrix { rows, cols, domain, data }
    }

    pub fn from_dense(domain: Domain, rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != nc {
                return Err(LinalgError::DimensionMismatch { expected: nc, got: row.len() });
            }
            for (j, &v) in row.iter().enumerate() {
                trip.push((i, j, v));
            }
        }
        Self::from_triplets(nr, nc, domain, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn domain(&self) -> Domain {
        self.domain
    }
    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.data[c]
    }
    pub fn nnz(&self) -> usize {
        self.data.iter().map(|c| c.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.data[c];
        col.binary_search_by_key(&(r as u32), |e| e.0)
            .map(|i| col[i].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                out[r as usize][c] = v;
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data = vec![Vec::new(); self.rows];
        for (c, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                data[r as usize].push((c as u32, v));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, domain: self.domain, data }
    }

    /// Reduces an integer matrix modulo `p`.
    pub fn reduce_mod(&self, p: u32) -> SparseMatrix {
        let data = self
            .data
            .iter()
            .map(|col| {
                col.iter()
                    .map(|&(r, v)| (r, v.rem_euclid(p as i64)))
                    .filter(|e| e.1 != 0)
                    .collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: self.cols, domain: Domain::Prime(p), data }
    }

    /// Appends a column (used to form augmented matrices).
    pub fn push_column(&mut self, col: Vec<(u32, i64)>) {
        self.data.push(normalize_column(col, self.domain));
        self.cols += 1;
    }

    /// Coordinate text format: header `rows cols nnz domain`, then `row col value` lines.
    pub fn to_coordinate(&self) -> String {
        let mut s = format!("{} {} {} {}\n", self.rows, self.cols, self.nnz(), self.domain.tag());
        for (c, col) in self.data.iter().enumerate() {
            for &(r, v) in col {
                writeln!(s, "{r} {c} {v}").unwrap();
            }
        }
        s
    }

    pub fn from_coordinate(text: &str) -> Result<SparseMatrix, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LinalgError::Parse("empty input".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 4 {
            return Err(LinalgError::Parse(format!("bad header {header:?}")));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|e| LinalgError::Parse(e.to_string()));
        let (rows, cols, nnz) = (num(h[0])?, num(h[1])?, num(h[2])?);
        let domain = Domain::parse(h[3])?;
        let mut trip = Vec::with_capacity(nnz);
        for line in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f.len() != 3 {
                return Err(LinalgError::Parse(format!("bad entry {line:?}")));
            }
            let v = f[2].parse::<i64>().map_err(|e| LinalgError::Parse(e.to_string()))?;
            trip.push((num(f[0])?, num(f[1])?, v));
        }
        if trip.len() != nnz {
            return Err(LinalgError::Parse(format!("expected {nnz} entries, found {}", trip.len())));
        }
        Self::from_triplets(rows, cols, domain, trip)
    }
}

fn normalize_column(mut col: Vec<(u32, i64)>, domain: Domain) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    if let Domain::Prime(p) = domain {
        for e in out.iter_mut() {
            e.1 = e.1.rem_euclid(p as i64);
        }
    }
    out.retain(|e| e.1 != 0);
    out
}
