//! The integral cohomology ring of `P_2(p)` (the extraspecial group of order p³ and
//! exponent p) reduced mod p, as a monomial basis with normal-form multiplication.
//!
//! Generators are α, β (degree 2), μ, ν (degree 3), χ_i for 2 ≤ i ≤ p−1 (degree 2i) and
//! ζ (degree 2p), subject mod p to
//!
//! * αμ = βν, α^pβ = β^pα, α^pμ = β^pν, μ² = ν² = 0;
//! * αχ_i, βχ_i, μχ_i, νχ_i vanish for i < p−1, and αχ_{p−1} = −α^p, βχ_{p−1} = −β^p,
//!   μχ_{p−1} = −β^{p−1}μ, νχ_{p−1} = −α^{p−1}ν;
//! * χ_iχ_j = 0 except χ_{p−1}² = α^{2p−2} + β^{2p−2} − α^{p−1}β^{p−1};
//! * μν = λχ_3 for p > 3 and μν = 0 for p = 3.

mod automorphism;
mod checks;
mod restriction;

pub use automorphism::RingAutomorphism;
pub use checks::{
    d8_action, d8_action_negating_zeta, describe_basis, fifteen_elements, fixed_subring, held_3_part_check, held_7_part_check, named_action,
    s3c3_action, shear_action, shear_check, shear_check_with, twelve_elements, Held3Report, Held3Row, Held7Report,
    Held7Row, MembershipRow, NamedAction, ShearReport, ShearRow, ACTION_NAMES, RING_MAX_DEGREE,
};
pub use restriction::{format_target, RestrictionImages, RestrictionMap};

use crate::invariants::{Element, GradedRing, InvariantError};
use crate::linalg::is_prime;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid ring model: {0}")]
    Invalid(String),
    #[error("structure constants fail {0}")]
    Structure(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// A normal-form basis monomial `ζ^zeta χ_chi α^alpha β^beta μ^mu ν^nu` (`chi = 0` for no χ).
///
/// Normal forms are `ζ^i`, `ζ^iχ_j`, `ζ^iα^jν` and `ζ^iα^jβ^kμ^ε` with `j = 0` or
/// `k + ε ≤ p − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RingMonomial {
    pub zeta: u32,
    pub chi: u32,
    pub alpha: u32,
    pub beta: u32,
    pub mu: bool,
    pub nu: bool,
}

impl RingMonomial {
    pub const ONE: RingMonomial = RingMonomial { zeta: 0, chi: 0, alpha: 0, beta: 0, mu: false, nu: false };

    pub fn is_odd(&self) -> bool {
        self.mu || self.nu
    }
}

impl fmt::Display for RingMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let power = |name: &str, e: u32| match e {
            0 => None,
            1 => Some(name.to_string()),
            _ => Some(format!("{name}^{e}")),
        };
        let chi = (self.chi > 0).then(|| format!("χ{}", self.chi));
        let parts: Vec<String> = [
            power("ζ", self.zeta),
            chi,
            power("α", self.alpha),
            power("β", self.beta),
            power("μ", self.mu as u32),
            power("ν", self.nu as u32),
        ]
        .into_iter()
        .flatten()
        .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("·"))
        }
    }
}

/// Render an element as `c·m + ...` with coefficients in `0..p`.
pub fn format_element(e: &Element<RingMonomial>) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .iter()
        .map(|(m, &c)| if c == 1 { m.to_string() } else { format!("{c}·{m}") })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// A product of generators before normalization; `chi` holds at most one index.
#[derive(Clone, Copy)]
struct Raw {
    zeta: u32,
    chi: u32,
    alpha: u32,
    beta: u32,
    mu: bool,
    nu: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingModel {
    p: u32,
    lambda: u32,
}

/// Random triples checked when a model is built.
pub const BUILD_SAMPLES: usize = 500;

impl RingModel {
    /// The model of `P_2(p)` mod p with `μν = λχ_3`, after a randomized check of
    /// associativity and graded commutativity on monomials of degree ≤ 4p.
    pub fn new(p: u32, lambda: u32) -> Result<Self, RingError> {
        if p < 3 || !is_prime(p as u64) {
            return Err(RingError::Invalid(format!("p = {p} must be an odd prime")));
        }
        if lambda % p == 0 {
            return Err(RingError::Invalid("λ must be a unit mod p".into()));
        }
        let model = RingModel { p, lambda: lambda % p };
        model.verify(BUILD_SAMPLES, 4 * p as usize, 0x5eed)?;
        Ok(model)
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// Checks `(ab)c = a(bc)` and `ab = (−1)^{|a||b|} ba` on `samples` random triples of
    /// basis monomials with degrees ≤ `max_degree`.
    pub fn verify(&self, samples: usize, max_degree: usize, seed: u64) -> Result<(), RingError> {
        let bases: Vec<Vec<RingMonomial>> = (0..=max_degree).map(|d| self.basis(d)).collect();
        let nonempty: Vec<usize> = (0..=max_degree).filter(|&d| !bases[d].is_empty()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = |rng: &mut ChaCha8Rng| {
            let d = nonempty[rng.gen_range(0..nonempty.len())];
            let b = &bases[d];
            Element::monomial(self.p, b[rng.gen_range(0..b.len())])
        };
        for _ in 0..samples {
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let left = self.mul(&self.mul(&a, &b), &c);
            let right = self.mul(&a, &self.mul(&b, &c));
            if left != right {
                return Err(RingError::Structure(format!(
                    "associativity: ({})({})({})",
                    format_element(&a),
                    format_element(&b),
                    format_element(&c)
                )));
            }
            let (da, db) = (self.degree_of(&a)?.unwrap(), self.degree_of(&b)?.unwrap());
            let ba = self.mul(&b, &a).scale(if da * db % 2 == 1 { -1 } else { 1 });
            if self.mul(&a, &b) != ba {
                return Err(RingError::Structure(format!(
                    "graded commutativity: {} and {}",
                    format_element(&a),
                    format_element(&b)
                )));
            }
        }
        Ok(())
    }

    fn gen(&self, m: RingMonomial) -> Element<RingMonomial> {
        Element::monomial(self.p, m)
    }

    pub fn alpha(&self) -> Element<RingMonomial> {
        self.gen(RingMonomial { alpha: 1, ..RingMonomial::ONE })
    }

    pub fn beta(&self) -> Element<RingMonomial> {
        self.gen(RingMonomial { beta: 1, ..RingMonomial::ONE })
    }

    pub fn mu(&self) -> Element<RingMonomial> {
        self.gen(RingMonomial { mu: true, ..RingMonomial::ONE })
    }

    pub fn nu(&self) -> Element<RingMonomial> {
        self.gen(RingMonomial { nu: true, ..RingMonomial::ONE })
    }

    pub fn zeta(&self) -> Element<RingMonomial> {
        self.gen(RingMonomial { zeta: 1, ..RingMonomial::ONE })
    }

    /// `χ_i` for `2 ≤ i ≤ p − 1`.
    pub fn chi(&self, i: u32) -> Element<RingMonomial> {
        assert!((2..self.p).contains(&i), "χ_{i} is not a generator");
        self.gen(RingMonomial { chi: i, ..RingMonomial::ONE })
    }

    /// `c · ζ^z α^a β^b μ^mu ν^nu`, in normal form.
    pub fn term(&self, c: i64, z: u32, a: u32, b: u32, mu: bool, nu: bool) -> Element<RingMonomial> {
        let mut out = Element::monomial(self.p, RingMonomial { zeta: z, alpha: a, ..RingMonomial::ONE }).scale(c);
        out = self.mul(&out, &self.gen(RingMonomial { beta: b, ..RingMonomial::ONE }));
        if mu {
            out = self.mul(&out, &self.mu());
        }
        if nu {
            out = self.mul(&out, &self.nu());
        }
        out
    }

    /// Each defining relation evaluated as `lhs − rhs`; all should vanish.
    pub fn relation_residues(&self) -> Vec<(String, Element<RingMonomial>)> {
        let p = self.p;
        let (a, b, m, n) = (self.alpha(), self.beta(), self.mu(), self.nu());
        let pw = |x: &Element<RingMonomial>, k: u32| self.pow(x, k as usize);
        let mut out = vec![
            ("αμ = βν".to_string(), self.mul(&a, &m).sub(&self.mul(&b, &n))),
            ("α^pβ = β^pα".into(), self.mul(&pw(&a, p), &b).sub(&self.mul(&pw(&b, p), &a))),
            ("α^pμ = β^pν".into(), self.mul(&pw(&a, p), &m).sub(&self.mul(&pw(&b, p), &n))),
            ("μ² = 0".into(), self.mul(&m, &m)),
            ("ν² = 0".into(), self.mul(&n, &n)),
        ];
        let mu_nu = if p > 3 { self.chi(3).scale(self.lambda as i64) } else { Element::zero(p) };
        out.push(("μν = λχ3".into(), self.mul(&m, &n).sub(&mu_nu)));
        for i in 2..p {
            let top = i == p - 1;
            let expect = |x: Element<RingMonomial>| if top { x.scale(-1) } else { Element::zero(p) };
            let chi = self.chi(i);
            out.push((format!("αχ{i}"), self.mul(&a, &chi).sub(&expect(pw(&a, p)))));
            out.push((format!("βχ{i}"), self.mul(&b, &chi).sub(&expect(pw(&b, p)))));
            out.push((format!("μχ{i}"), self.mul(&m, &chi).sub(&expect(self.mul(&pw(&b, p - 1), &m)))));
            out.push((format!("νχ{i}"), self.mul(&n, &chi).sub(&expect(self.mul(&pw(&a, p - 1), &n)))));
            for j in 2..p {
                let prod = self.mul(&chi, &self.chi(j));
                let expect = if top && j == p - 1 {
                    pw(&a, 2 * p - 2).add(&pw(&b, 2 * p - 2)).sub(&self.mul(&pw(&a, p - 1), &pw(&b, p - 1)))
                } else {
                    Element::zero(p)
                };
                out.push((format!("χ{i}χ{j}"), prod.sub(&expect)));
            }
        }
        out
    }

    /// Adds `c` times the normal form of `raw` to `out`.
    fn reduce(&self, c: i64, mut raw: Raw, out: &mut Element<RingMonomial>) {
        let p = self.p;
        let mut c = c;
        debug_assert!(!(raw.mu && raw.nu));
        if raw.chi > 0 && (raw.alpha + raw.beta > 0 || raw.mu || raw.nu) {
            if raw.chi < p - 1 {
                return;
            }
            c = -c;
            raw.chi = 0;
            if raw.alpha > 0 {
                raw.alpha += p - 1;
            } else if raw.beta > 0 || raw.mu {
                raw.beta += p - 1;
            } else {
                raw.alpha += p - 1;
            }
        }
        if raw.nu && raw.beta > 0 {
            // βν = αμ
            raw.nu = false;
            raw.mu = true;
            raw.alpha += 1;
            raw.beta -= 1;
        }
        // αβ^{p−1}μ = α^pμ and αβ^p = α^pβ
        let limit = if raw.mu { p - 1 } else { p };
        if !raw.nu && raw.alpha >= 1 && raw.beta >= limit {
            let steps = (raw.beta - limit) / (p - 1) + 1;
            raw.alpha += steps * (p - 1);
            raw.beta -= steps * (p - 1);
        }
        let m = RingMonomial { zeta: raw.zeta, chi: raw.chi, alpha: raw.alpha, beta: raw.beta, mu: raw.mu, nu: raw.nu };
        out.add_term(m, c.rem_euclid(p as i64) as u32);
    }
}

impl GradedRing for RingModel {
    type Mono = RingMonomial;

    fn prime(&self) -> u32 {
        self.p
    }

    fn basis(&self, d: usize) -> Vec<RingMonomial> {
        let p = self.p as usize;
        let mut out = Vec::new();
        for i in 0..=d / (2 * p) {
            let rem = d - 2 * p * i;
            let z = i as u32;
            let mono = |chi: usize, a: usize, b: usize, mu: bool, nu: bool| RingMonomial {
                zeta: z,
                chi: chi as u32,
                alpha: a as u32,
                beta: b as u32,
                mu,
                nu,
            };
            if rem % 2 == 0 {
                let m = rem / 2;
                if m == 0 {
                    out.push(mono(0, 0, 0, false, false));
                    continue;
                }
                if (2..p).contains(&m) {
                    out.push(mono(m, 0, 0, false, false));
                }
                out.push(mono(0, 0, m, false, false));
                for a in 1..=m {
                    if m - a <= p - 1 {
                        out.push(mono(0, a, m - a, false, false));
                    }
                }
            } else if rem >= 3 {
                let m = (rem - 3) / 2;
                out.push(mono(0, m, 0, false, true));
                out.push(mono(0, 0, m, true, false));
                for a in 1..=m {
                    if m - a + 1 <= p - 1 {
                        out.push(mono(0, a, m - a, true, false));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn degree(&self, m: &RingMonomial) -> usize {
        let p = self.p as usize;
        2 * p * m.zeta as usize
            + 2 * m.chi as usize
            + 2 * (m.alpha + m.beta) as usize
            + 3 * (m.mu as usize + m.nu as usize)
    }

    fn one(&self) -> RingMonomial {
        RingMonomial::ONE
    }

    fn mul_monomials(&self, a: &RingMonomial, b: &RingMonomial) -> Element<RingMonomial> {
        let p = self.p;
        let mut out = Element::zero(p);
        if (a.mu && b.mu) || (a.nu && b.nu) {
            return out;
        }
        // moving b's μ past a's ν
        let mut c: i64 = if a.nu && b.mu { -1 } else { 1 };
        let mut raw = Raw {
            zeta: a.zeta + b.zeta,
            chi: a.chi.max(b.chi),
            alpha: a.alpha + b.alpha,
            beta: a.beta + b.beta,
            mu: a.mu || b.mu,
            nu: a.nu || b.nu,
        };
        if raw.mu && raw.nu {
            raw.mu = false;
            raw.nu = false;
            if p == 3 || a.chi > 0 || b.chi > 0 {
                // μν = 0 for p = 3, and χ_3χ_j = 0 for p > 3
                return out;
            }
            c *= self.lambda as i64;
            raw.chi = 3;
        }
        if a.chi > 0 && b.chi > 0 {
            if a.chi != p - 1 || b.chi != p - 1 {
                return out;
            }
            raw.chi = 0;
            let q = p - 1;
            for (da, db, s) in [(2 * q, 0, 1), (0, 2 * q, 1), (q, q, -1)] {
                self.reduce(c * s, Raw { alpha: raw.alpha + da, beta: raw.beta + db, ..raw }, &mut out);
            }
            return out;
        }
        self.reduce(c, raw, &mut out);
        out
    }
}
