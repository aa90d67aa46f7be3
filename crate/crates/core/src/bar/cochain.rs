use super::BarError;
use crate::groups::FiniteGroup;
use crate::linalg::Domain;
use rand::Rng;
use std::sync::Arc;

/// Normalized bar cochain, stored densely over the cells `(g_1, ..., g_n)` with all
/// `g_i` non-identity. Cells are numbered in base `|G| - 1` with digit `g_i - 1`.
#[derive(Clone, Debug)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    ring: Domain,
    values: Vec<i64>,
}

pub(crate) fn cell_count(group: &FiniteGroup, n: usize) -> usize {
    (group.order() - 1).pow(n as u32)
}

pub(crate) fn decode(m: usize, mut idx: usize, cell: &mut [usize]) {
    for i in (0..cell.len()).rev() {
        cell[i] = idx % m + 1;
        idx /= m;
    }
}

pub(crate) fn encode(m: usize, cell: &[usize]) -> usize {
    cell.iter().fold(0, |a, &g| a * m + g - 1)
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.same_space(other) && self.values == other.values
    }
}

impl Cochain {
    pub fn zero(group: &Arc<FiniteGroup>, degree: usize, ring: Domain) -> Self {
        Cochain { group: group.clone(), degree, ring, values: vec![0; cell_count(group, degree)] }
    }

    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        degree: usize,
        ring: Domain,
        mut f: impl FnMut(&[usize]) -> i64,
    ) -> Self {
        let mut c = Self::zero(group, degree, ring);
        let m = group.order() - 1;
        let mut cell = vec![0; degree];
        for idx in 0..c.values.len() {
            decode(m, idx, &mut cell);
            c.values[idx] = c.norm(f(&cell));
        }
        c
    }

    /// Uniformly random values (in `-3..=3` over Z).
    pub fn random(group: &Arc<FiniteGroup>, degree: usize, ring: Domain, rng: &mut impl Rng) -> Self {
        let mut c = Self::zero(group, degree, ring);
        for v in c.values.iter_mut() {
            *v = match ring {
                Domain::Prime(p) => rng.gen_range(0..p as i64),
                Domain::Integers => rng.gen_range(-3..=3),
            };
        }
        c
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn ring(&self) -> Domain {
        self.ring
    }
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub(crate) fn from_values(group: &Arc<FiniteGroup>, degree: usize, ring: Domain, values: Vec<i64>) -> Self {
        assert_eq!(values.len(), cell_count(group, degree));
        let mut c = Cochain { group: group.clone(), degree, ring, values };
        for i in 0..c.values.len() {
            c.values[i] = c.norm(c.values[i]);
        }
        c
    }

    #[inline]
    fn norm(&self, x: i64) -> i64 {
        match self.ring {
            Domain::Prime(p) => x.rem_euclid(p as i64),
            Domain::Integers => x,
        }
    }

    /// Value on a cell; cells containing the identity are degenerate and give 0.
    pub fn get(&self, cell: &[usize]) -> i64 {
        assert_eq!(cell.len(), self.degree);
        if cell.contains(&0) {
            return 0;
        }
        self.values[encode(self.group.order() - 1, cell)]
    }

    pub fn set(&mut self, cell: &[usize], v: i64) {
        assert!(!cell.contains(&0), "degenerate cell");
        let i = encode(self.group.order() - 1, cell);
        self.values[i] = self.norm(v);
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Nonzero values with their cells.
    pub fn support(&self) -> Vec<(Vec<usize>, i64)> {
        let m = self.group.order() - 1;
        let mut cell = vec![0; self.degree];
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| {
                decode(m, i, &mut cell);
                (cell.clone(), v)
            })
            .collect()
    }

    fn same_space(&self, other: &Cochain) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group.fingerprint() == other.group.fingerprint()
    }

    pub(crate) fn check_same(&self, other: &Cochain) -> Result<(), BarError> {
        if !self.same_space(other) {
            return Err(BarError::GroupMismatch);
        }
        if self.ring != other.ring {
            return Err(BarError::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, BarError> {
        self.check_same(other)?;
        if self.degree != other.degree {
            return Err(BarError::DegreeMismatch(self.degree, other.degree));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| self.norm(a + b)).collect();
        Ok(Cochain { values, ..self.clone_shell() })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, BarError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cochain {
        let values = self.values.iter().map(|&a| self.norm(a.checked_mul(k).expect("overflow"))).collect();
        Cochain { values, ..self.clone_shell() }
    }

    fn clone_shell(&self) -> Cochain {
        Cochain { group: self.group.clone(), degree: self.degree, ring: self.ring, values: Vec::new() }
    }

    /// Mod-p reduction of an integral cochain.
    pub fn reduce_mod(&self, p: u32) -> Cochain {
        let values = self.values.iter().map(|&a| a.rem_euclid(p as i64)).collect();
        Cochain { values, ring: Domain::Prime(p), ..self.clone_shell() }
    }

    /// Integral lift with values in `0..p`.
    pub fn lift(&self) -> Cochain {
        Cochain { values: self.values.clone(), ring: Domain::Integers, ..self.clone_shell() }
    }

    /// `(δf)[g_1|...|g_{n+1}] = f[g_2|...] + Σ (-1)^i f[..|g_i g_{i+1}|..] + (-1)^{n+1} f[g_1|...|g_n]`
    pub fn coboundary(&self) -> Cochain {
        let g = &self.group;
        let n = self.degree;
        let m = g.order() - 1;
        let mut out = Cochain::zero(g, n + 1, self.ring);
        let mut cell = vec![0; n + 1];
        let mut face = vec![0; n];
        for idx in 0..out.values.len() {
            decode(m, idx, &mut cell);
            let mut s: i64 = self.values[encode(m, &cell[1..])];
            for i in 0..n {
                let prod = g.mul(cell[i], cell[i + 1]);
                if prod == 0 {
                    continue;
                }
                face[..i].copy_from_slice(&cell[..i]);
                face[i] = prod;
                face[i + 1..].copy_from_slice(&cell[i + 2..]);
                let v = self.values[encode(m, &face)];
                if (i + 1) % 2 == 0 {
                    s += v;
                } else {
                    s -= v;
                }
            }
            let last = self.values[encode(m, &cell[..n])];
            if (n + 1) % 2 == 0 {
                s += last;
            } else {
                s -= last;
            }
            out.values[idx] = out.norm(s);
        }
        out
    }

    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Alexander–Whitney product `(uv)[g_1|...|g_{p+q}] = u[g_1|...|g_p] v[g_{p+1}|...|g_{p+q}]`.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain, BarError> {
        self.check_same(other)?;
        let mut out = Cochain::zero(&self.group, self.degree + other.degree, self.ring);
        let w = other.values.len();
        for (i, &a) in self.values.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.values.iter().enumerate() {
                if b != 0 {
                    out.values[i * w + j] = out.norm(a.checked_mul(b).expect("overflow"));
                }
            }
        }
        Ok(out)
    }

    /// Steenrod's cup-1 transported to bar cells:
    /// `(a ⌣₁ b)[g_1|...|g_n] = Σ_{i<p} (-1)^{(i+1)(q+1)+pq} a[g_1|..|g_i|g_{i+1}⋯g_{i+q}|..|g_n] b[g_{i+1}|..|g_{i+q}]`
    /// for `deg a = p`, `deg b = q`, `n = p + q - 1`; zero when either degree is 0.
    ///
    /// Satisfies `δ(a⌣₁b) = -δa⌣₁b - (-1)^a a⌣₁δb + ab - (-1)^{ab} ba` and
    /// `(ab)⌣₁c = (-1)^a a(b⌣₁c) + (-1)^{bc} (a⌣₁c)b` exactly.
    pub fn cup1(&self, other: &Cochain) -> Result<Cochain, BarError> {
        self.check_same(other)?;
        Ok(cup1_signed(self, other, |i, p, q| ((i + 1) * (q + 1) + p * q) % 2 == 1))
    }

    /// Bockstein `δ_p(u) = (1/p) δ(ũ)` of an F_p cocycle, using the lift with values in `0..p`.
    pub fn bockstein_integral(&self) -> Result<Cochain, BarError> {
        let Domain::Prime(p) = self.ring else {
            return Err(BarError::RingMismatch);
        };
        self.lift().divided_coboundary(p)
    }

    /// `(1/p) δ(self)` for an integral cochain whose coboundary is divisible by `p`, i.e.
    /// `δ_p` applied to the reduction of `self` computed from this particular lift.
    pub fn divided_coboundary(&self, p: u32) -> Result<Cochain, BarError> {
        if self.ring != Domain::Integers {
            return Err(BarError::RingMismatch);
        }
        let d = self.coboundary();
        if d.values.iter().any(|&v| v % p as i64 != 0) {
            return Err(BarError::NotCocycle);
        }
        let values = d.values.iter().map(|&v| v / p as i64).collect();
        Ok(Cochain { values, ..d.clone_shell() })
    }

    /// `β(u)`, the mod-p reduction of `δ_p(u)`.
    pub fn bockstein(&self) -> Result<Cochain, BarError> {
        let Domain::Prime(p) = self.ring else {
            return Err(BarError::RingMismatch);
        };
        Ok(self.bockstein_integral()?.reduce_mod(p))
    }
}

pub(crate) fn cup1_signed(a: &Cochain, b: &Cochain, negative: impl Fn(usize, usize, usize) -> bool) -> Cochain {
    let (p, q) = (a.degree, b.degree);
    let g = &a.group;
    if p == 0 || q == 0 {
        let deg = (p + q).saturating_sub(1);
        return Cochain::zero(g, deg, a.ring);
    }
    let n = p + q - 1;
    let m = g.order() - 1;
    let mut out = Cochain::zero(g, n, a.ring);
    let mut cell = vec![0; n];
    let mut aface = vec![0; p];
    for idx in 0..out.values.len() {
        decode(m, idx, &mut cell);
        let mut s = 0i64;
        for i in 0..p {
            let block = &cell[i..i + q];
            let bv = b.values[encode(m, block)];
            if bv == 0 {
                continue;
            }
            let prod = block.iter().fold(0, |acc, &x| g.mul(acc, x));
            if prod == 0 {
                continue;
            }
            aface[..i].copy_from_slice(&cell[..i]);
            aface[i] = prod;
            aface[i + 1..].copy_from_slice(&cell[i + q..]);
            let t = a.values[encode(m, &aface)].checked_mul(bv).expect("overflow");
            if negative(i, p, q) {
                s -= t;
            } else {
                s += t;
            }
        }
        out.values[idx] = out.norm(s);
    }
    out
}
