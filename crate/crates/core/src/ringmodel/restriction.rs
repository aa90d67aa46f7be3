use super::{RingModel, RingMonomial};
use crate::invariants::{Element, GradedAlgebra, GradedRing, Monomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Images of the generators in the target algebra. `chi[i]` is the image of `χ_i`;
/// missing entries map to zero.
#[derive(Clone, Debug)]
pub struct RestrictionImages {
    pub alpha: Element<Monomial>,
    pub beta: Element<Monomial>,
    pub mu: Element<Monomial>,
    pub nu: Element<Monomial>,
    pub zeta: Element<Monomial>,
    pub chi: Vec<(u32, Element<Monomial>)>,
}

/// A ring map from the model to a free graded-commutative algebra, determined by the
/// images of the generators.
#[derive(Clone, Debug)]
pub struct RestrictionMap {
    pub name: String,
    pub target: GradedAlgebra,
    pub images: RestrictionImages,
}

impl RestrictionMap {
    pub fn new(name: &str, target: GradedAlgebra, images: RestrictionImages) -> Self {
        RestrictionMap { name: name.into(), target, images }
    }

    /// Restriction of `P_2(3)` to `⟨B, C⟩`, with target `F_3[β′, γ] ⊗ Λ[δ]`:
    /// `α ↦ 0, β ↦ β′, μ ↦ δ, ν ↦ 0, ζ ↦ γ³ − β′²γ, χ_2 ↦ −β′²`.
    pub fn p2_3_to_bc() -> Self {
        let t = GradedAlgebra::new(3, vec![2, 2], vec![3]).expect("valid algebra");
        let images = RestrictionImages {
            alpha: Element::zero(3),
            beta: t.var(0),
            mu: t.ext(0),
            nu: Element::zero(3),
            zeta: t.poly(&[(vec![0, 3], 1), (vec![2, 1], -1)]),
            chi: vec![(2, t.poly(&[(vec![2, 0], -1)]))],
        };
        RestrictionMap::new("P2(3) -> <B,C>", t, images)
    }

    /// Restriction of `P_2(7)` to `K = ⟨AB⁻¹, C⟩`, with target `F_7[ζ′, ε] ⊗ Λ[δ]`
    /// (degrees 14, 2, 3): `ζ ↦ ζ′`, `α ↦ ε`, `β ↦ −ε`, `μ ↦ δ`, `ν ↦ −δ`.
    ///
    /// `χ_i` for `i < p − 1` is a transfer from `⟨B, C⟩`; the double coset formula makes
    /// its restriction to `K` a transfer from `⟨C⟩`, which is `p` times a class of
    /// exponent p, so zero. `χ_{p−1}` adds `−α^{p−1}` and restricts to `−ε^{p−1}`.
    pub fn p2_7_to_k() -> Self {
        let t = GradedAlgebra::new(7, vec![14, 2], vec![3]).expect("valid algebra");
        let images = RestrictionImages {
            alpha: t.var(1),
            beta: t.var(1).scale(-1),
            mu: t.ext(0),
            nu: t.ext(0).scale(-1),
            zeta: t.var(0),
            chi: vec![(6, t.poly(&[(vec![0, 6], -1)]))],
        };
        RestrictionMap::new("P2(7) -> <AB^-1,C>", t, images)
    }

    pub fn apply_monomial(&self, m: &RingMonomial) -> Element<Monomial> {
        let t = &self.target;
        let im = &self.images;
        let mut out = t.pow(&im.zeta, m.zeta as usize);
        if m.chi > 0 {
            let chi = im.chi.iter().find(|(i, _)| *i == m.chi).map(|e| e.1.clone());
            out = t.mul(&out, &chi.unwrap_or_else(|| Element::zero(t.prime())));
        }
        out = t.mul(&out, &t.pow(&im.alpha, m.alpha as usize));
        out = t.mul(&out, &t.pow(&im.beta, m.beta as usize));
        if m.mu {
            out = t.mul(&out, &im.mu);
        }
        if m.nu {
            out = t.mul(&out, &im.nu);
        }
        out
    }

    pub fn apply(&self, e: &Element<RingMonomial>) -> Element<Monomial> {
        let mut out = Element::zero(self.target.prime());
        for (m, &c) in e.terms() {
            out = out.add(&self.apply_monomial(m).scale(c as i64));
        }
        out
    }

    /// Checks `Res(xy) = Res(x)Res(y)` on random pairs of basis monomials of degree
    /// ≤ `max_degree`; returns the first failing pair.
    pub fn check_multiplicative(
        &self,
        ring: &RingModel,
        samples: usize,
        max_degree: usize,
        seed: u64,
    ) -> Result<(), (RingMonomial, RingMonomial)> {
        let bases: Vec<Vec<RingMonomial>> = (0..=max_degree).map(|d| ring.basis(d)).filter(|b| !b.is_empty()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let mut pick = || {
                let b = &bases[rng.gen_range(0..bases.len())];
                b[rng.gen_range(0..b.len())]
            };
            let (x, y) = (pick(), pick());
            let lhs = self.apply(&ring.mul_monomials(&x, &y));
            let rhs = self.target.mul(&self.apply_monomial(&x), &self.apply_monomial(&y));
            if lhs != rhs {
                return Err((x, y));
            }
        }
        Ok(())
    }
}

/// Render an element of a target algebra with the given generator names.
pub fn format_target(e: &Element<Monomial>, poly: &[&str], ext: &[&str]) -> String {
    if e.is_zero() {
        return "0".into();
    }
    e.terms()
        .iter()
        .map(|(m, &c)| {
            let mut parts: Vec<String> = m
                .poly
                .iter()
                .zip(poly)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.to_string() } else { format!("{n}^{k}") })
                .collect();
            parts.extend(ext.iter().enumerate().filter(|(i, _)| m.ext >> i & 1 == 1).map(|(_, n)| n.to_string()));
            let mono = if parts.is_empty() { "1".to_string() } else { parts.join("·") };
            if c == 1 {
                mono
            } else {
                format!("{c}·{mono}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}
