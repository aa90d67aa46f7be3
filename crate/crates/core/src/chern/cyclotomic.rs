//! Elements of the cyclotomic field `Q(ζ_N) = Q[x]/Φ_N(x)` in the power basis.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Integer coefficients of `Φ_n`, constant term first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let q = rem[i + dd];
        quot[i] = q;
        for (j, &c) in den.iter().enumerate() {
            rem[i + j] -= q * c;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// Remainder of an integer polynomial modulo the monic `phi`.
pub(crate) fn reduce_integer(mut poly: Vec<i128>, phi: &[i64]) -> Vec<i128> {
    let d = phi.len() - 1;
    for i in (d..poly.len()).rev() {
        let q = poly[i];
        if q != 0 {
            for (j, &c) in phi.iter().enumerate() {
                poly[i - d + j] -= q * c as i128;
            }
        }
    }
    poly.resize(d, 0);
    poly
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: usize,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(n: usize) -> Self {
        Cyclotomic { conductor: n, coeffs: vec![BigRational::zero(); totient(n)] }
    }

    pub fn from_rational(n: usize, q: BigRational) -> Self {
        let mut c = Self::zero(n);
        c.coeffs[0] = q;
        c
    }

    pub fn from_integer(n: usize, k: i64) -> Self {
        Self::from_rational(n, BigRational::from_integer(k.into()))
    }

    /// `ζ_n^k`.
    pub fn root(n: usize, k: i64) -> Self {
        let mut poly = vec![0i128; n];
        poly[k.rem_euclid(n as i64) as usize] = 1;
        Self::from_group_ring(n, &poly, 1)
    }

    /// `(Σ counts[k] ζ^k) / denom`.
    pub fn from_group_ring(n: usize, counts: &[i128], denom: i64) -> Self {
        let phi = cyclotomic_polynomial(n);
        let red = reduce_integer(counts.to_vec(), &phi);
        let den = BigInt::from(denom);
        Cyclotomic {
            conductor: n,
            coeffs: red.into_iter().map(|c| BigRational::new(BigInt::from(c), den.clone())).collect(),
        }
    }

    pub fn conductor(&self) -> usize {
        self.conductor
    }

    /// Coordinates in the basis `1, ζ, ..., ζ^{φ(N)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The value if it lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductors differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Cyclotomic { conductor: self.conductor, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Cyclotomic { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::reduced(self.conductor, prod)
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor;
        let mut poly = vec![BigRational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[(n - i) % n] += c;
        }
        Self::reduced(n, poly)
    }

    fn reduced(n: usize, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(n);
        let d = phi.len() - 1;
        for i in (d..poly.len()).rev() {
            let q = std::mem::take(&mut poly[i]);
            if !q.is_zero() {
                for (j, &c) in phi[..d].iter().enumerate() {
                    poly[i - d + j] -= &q * BigInt::from(c);
                }
            }
        }
        poly.truncate(d);
        poly.resize(d, BigRational::zero());
        Cyclotomic { conductor: n, coeffs: poly }
    }
}

impl fmt::Display for Cyclotomic {
    /// Written in `z = ζ_N`, e.g. `-1 - 2*z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mon = match i {
                0 => String::new(),
                1 => "z".into(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mon}")?;
            } else {
                write!(f, "{a}*{mon}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(24), 8);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        for n in [3usize, 8, 9, 12] {
            let mut s = Cyclotomic::zero(n);
            for k in 0..n as i64 {
                s = s.add(&Cyclotomic::root(n, k));
            }
            assert!(s.is_zero(), "n = {n}");
            let z = Cyclotomic::root(n, 1);
            assert_eq!(z.mul(&z.conj()), Cyclotomic::from_integer(n, 1));
        }
    }

    #[test]
    fn display() {
        let z = Cyclotomic::root(3, 1);
        assert_eq!(z.to_string(), "z");
        assert_eq!(z.mul(&z).to_string(), "-1 - z");
    }
}
