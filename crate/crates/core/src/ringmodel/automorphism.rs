use super::{RingError, RingModel, RingMonomial};
use crate::invariants::{Element, GradedRing, LinearAction};
use crate::linalg::inv_mod;
use serde::{Deserialize, Serialize};

/// The action of an automorphism of `P_2(p)` on the ring model.
///
/// `α ↦ n₁α + n₂β`, `β ↦ n₃α + n₄β` for `matrix = [[n₁, n₂], [n₃, n₄]]`; with `j` the
/// power induced on the centre, `χ_i ↦ j^iχ_i`, `μ ↦ j(n₄μ + n₃ν)`, `ν ↦ j(n₂μ + n₁ν)`
/// and `ζ ↦ zeta·ζ`, where `zeta = j^p` unless overridden.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingAutomorphism {
    pub matrix: [[u32; 2]; 2],
    pub j: u32,
    pub zeta: u32,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl RingAutomorphism {
    /// `j` defaults to the determinant, which is the power the automorphism induces on the
    /// commutator subgroup.
    pub fn new(p: u32, matrix: [[i64; 2]; 2], j: Option<i64>) -> Result<Self, RingError> {
        let m = matrix.map(|row| row.map(|x| x.rem_euclid(p as i64) as u32));
        let det = (m[0][0] as i64 * m[1][1] as i64 - m[0][1] as i64 * m[1][0] as i64).rem_euclid(p as i64) as u32;
        if det == 0 {
            return Err(RingError::Invalid("matrix is singular mod p".into()));
        }
        let j = j.map_or(det, |j| j.rem_euclid(p as i64) as u32);
        if j == 0 {
            return Err(RingError::Invalid("j must be a unit mod p".into()));
        }
        let zeta = pow_mod(j as u64, p as u64, p as u64) as u32;
        Ok(RingAutomorphism { matrix: m, j, zeta })
    }

    /// Overrides the scalar on `ζ`, which appears in no relation mod p.
    pub fn with_zeta(mut self, p: u32, c: i64) -> Self {
        self.zeta = c.rem_euclid(p as i64) as u32;
        self
    }

    pub fn identity() -> Self {
        RingAutomorphism { matrix: [[1, 0], [0, 1]], j: 1, zeta: 1 }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self, p: u32) -> Self {
        let (a, b) = (&other.matrix, &self.matrix);
        let mut m = [[0u32; 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (k, x) in row.iter_mut().enumerate() {
                *x = ((a[i][0] as u64 * b[0][k] as u64 + a[i][1] as u64 * b[1][k] as u64) % p as u64) as u32;
            }
        }
        let mul = |x: u32, y: u32| (x as u64 * y as u64 % p as u64) as u32;
        RingAutomorphism { matrix: m, j: mul(self.j, other.j), zeta: mul(self.zeta, other.zeta) }
    }

    pub fn inverse(&self, p: u32) -> Self {
        let [[a, b], [c, d]] = self.matrix.map(|r| r.map(|x| x as i64));
        let di = inv_mod(((a * d - b * c).rem_euclid(p as i64)) as u32, p) as i64;
        let m = [[d * di, -b * di], [-c * di, a * di]].map(|r| r.map(|x| x.rem_euclid(p as i64) as u32));
        RingAutomorphism { matrix: m, j: inv_mod(self.j, p), zeta: inv_mod(self.zeta, p) }
    }

    fn images(&self, ring: &RingModel) -> [Element<RingMonomial>; 4] {
        let p = ring.prime() as i64;
        let [[n1, n2], [n3, n4]] = self.matrix.map(|r| r.map(|x| x as i64));
        let j = self.j as i64;
        let lin = |x: i64, y: i64, u: Element<RingMonomial>, v: Element<RingMonomial>| u.scale(x % p).add(&v.scale(y % p));
        [
            lin(n1, n2, ring.alpha(), ring.beta()),
            lin(n3, n4, ring.alpha(), ring.beta()),
            lin(j * n4, j * n3, ring.mu(), ring.nu()),
            lin(j * n2, j * n1, ring.mu(), ring.nu()),
        ]
    }
}

impl LinearAction<RingModel> for RingAutomorphism {
    fn apply_monomial(&self, ring: &RingModel, m: &RingMonomial) -> Element<RingMonomial> {
        let p = ring.prime();
        let [a, b, mu, nu] = self.images(ring);
        let scalar = pow_mod(self.zeta as u64, m.zeta as u64, p as u64) * pow_mod(self.j as u64, m.chi as u64, p as u64);
        let base = RingMonomial { zeta: m.zeta, chi: m.chi, ..RingMonomial::ONE };
        let mut out = Element::monomial(p, base).scale(scalar as i64);
        out = ring.mul(&out, &ring.pow(&a, m.alpha as usize));
        out = ring.mul(&out, &ring.pow(&b, m.beta as usize));
        if m.mu {
            out = ring.mul(&out, &mu);
        }
        if m.nu {
            out = ring.mul(&out, &nu);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_undoes() {
        let p = 7;
        let g = RingAutomorphism::new(p, [[1, 2], [3, 5]], None).unwrap();
        assert_eq!(g.compose(&g.inverse(p), p), RingAutomorphism::identity());
        assert!(RingAutomorphism::new(p, [[1, 2], [2, 4]], None).is_err());
    }
}
