//! Exact sparse linear algebra over the integers and prime fields.

mod dense;
mod fp;
mod smith;
mod sparse;

pub use dense::DenseFp;
pub use fp::{inv_mod, FpEchelon};
pub use smith::{smith_normal_form, smith_stream, SmithReport};
pub use sparse::{Domain, SparseMatrix};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("entry ({row}, {col}) out of bounds for {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({0}, {1})")]
    Duplicate(usize, usize),
    #[error("operation requires domain {0}")]
    WrongDomain(&'static str),
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rank over F_p of an integer or F_p matrix (entries reduced mod p).
pub fn rank_mod_p(m: &SparseMatrix, p: u32) -> Result<usize, LinalgError> {
    if !is_prime(p as u64) {
        return Err(LinalgError::NotPrime(p as u64));
    }
    if let Domain::Prime(q) = m.domain() {
        if q != p {
            return Err(LinalgError::WrongDomain("Z or matching F_p"));
        }
    }
    let mut ech = FpEchelon::new(m.rows(), p, false);
    let mut buf = Vec::new();
    for c in 0..m.cols() {
        buf.clear();
        buf.extend(
            m.column(c)
                .iter()
                .map(|&(r, v)| (r, v.rem_euclid(p as i64) as u32)),
        );
        ech.insert(&buf);
    }
    Ok(ech.rank())
}

/// Solves `m x = b` exactly. Over Z the solution is integral; `None` when inconsistent.
pub fn solve(m: &SparseMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), got: b.len() });
    }
    match m.domain() {
        Domain::Prime(p) => {
            let pb = BigInt::from(p);
            let bb: Vec<u32> = b
                .iter()
                .map(|x| {
                    let r = ((x % &pb) + &pb) % &pb;
                    u32::try_from(r).unwrap()
                })
                .collect();
            Ok(solve_mod_p(m, &bb)?.map(|x| x.into_iter().map(BigInt::from).collect()))
        }
        Domain::Integers => Ok(dense::solve_integral(m, b)),
    }
}

/// Solves `m x = b` over F_p for a matrix of domain F_p or Z (reduced mod p).
pub fn solve_mod_p(m: &SparseMatrix, b: &[u32]) -> Result<Option<Vec<u32>>, LinalgError> {
    let p = match m.domain() {
        Domain::Prime(p) => p,
        Domain::Integers => return Err(LinalgError::WrongDomain("F_p")),
    };
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), got: b.len() });
    }
    let mut ech = FpEchelon::new(m.rows(), p, true);
    for c in 0..m.cols() {
        let col: Vec<(u32, u32)> = m.column(c).iter().map(|&(r, v)| (r, v as u32)).collect();
        ech.insert(&col);
    }
    let target: Vec<(u32, u32)> = b
        .iter()
        .enumerate()
        .filter(|(_, &v)| v % p != 0)
        .map(|(i, &v)| (i as u32, v % p))
        .collect();
    Ok(ech.express(&target).map(|combo| {
        let mut x = vec![0u32; m.cols()];
        for (c, v) in combo {
            x[c as usize] = v;
        }
        x
    }))
}

/// Basis of the right kernel over F_p, one dense vector per basis element.
pub fn kernel_mod_p(m: &SparseMatrix) -> Result<Vec<Vec<u32>>, LinalgError> {
    let p = match m.domain() {
        Domain::Prime(p) => p,
        Domain::Integers => return Err(LinalgError::WrongDomain("F_p")),
    };
    let mut ech = FpEchelon::new(m.rows(), p, true);
    let mut out = Vec::new();
    for c in 0..m.cols() {
        let col: Vec<(u32, u32)> = m.column(c).iter().map(|&(r, v)| (r, v as u32)).collect();
        if let Some(rel) = ech.insert_or_relation(&col) {
            let mut x = vec![0u32; m.cols()];
            for (j, v) in rel {
                x[j as usize] = v;
            }
            out.push(x);
        }
    }
    Ok(out)
}
