//! Finite groups as multiplication tables, built from polycyclic normal forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use thiserror::Error;

pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("collection failure: {0}")]
    CollectionFailure(String),
    #[error("{p} does not divide the group order {order}")]
    PrimeDoesNotDivide { p: u64, order: usize },
}

/// Multiplication-complete finite group. Element 0 is the identity; elements are numbered
/// lexicographically by their normal-form exponent vectors.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    generators: Vec<usize>,
    coords: Vec<Vec<u32>>,
    coord_names: Vec<String>,
}

impl FiniteGroup {
    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.order
    }
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }
    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }
    pub fn identity(&self) -> usize {
        0
    }

    /// `g^{-1} h g`
    pub fn conj(&self, h: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// `[x, y] = x^{-1} y^{-1} x y`
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut r = 0;
        for _ in 0..k.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&x| g.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Normal-form exponent vector of an element.
    pub fn coords(&self, g: usize) -> &[u32] {
        &self.coords[g]
    }

    pub fn coord_names(&self) -> &[String] {
        &self.coord_names
    }

    pub fn element_from_coords(&self, c: &[u32]) -> Option<usize> {
        self.coords.binary_search_by(|x| x.as_slice().cmp(c)).ok()
    }

    /// Human-readable word such as `A^2 B C^4`; identity is `1`.
    pub fn label(&self, g: usize) -> String {
        let parts: Vec<String> = self.coords[g]
            .iter()
            .zip(&self.coord_names)
            .filter(|(e, _)| **e != 0)
            .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }

    /// Stable fingerprint of the multiplication table (FNV-1a, hex).
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for &x in self.mul.iter().chain(std::iter::once(&(self.order as u16))) {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        format!("{h:016x}")
    }

    fn from_table(
        name: String,
        order: usize,
        mul: Vec<u16>,
        generators: Vec<usize>,
        coords: Vec<Vec<u32>>,
        coord_names: Vec<String>,
    ) -> Result<Self, GroupError> {
        let mut inv = vec![u16::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u16;
                    break;
                }
            }
            if inv[a] == u16::MAX {
                return Err(GroupError::CollectionFailure(format!("element {a} has no inverse")));
            }
        }
        let g = FiniteGroup { name, order, mul, inv, generators, coords, coord_names };
        g.spot_check()?;
        Ok(g)
    }

    fn spot_check(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::CollectionFailure("0 is not an identity".into()));
            }
        }
        for a in 0..n {
            let mut seen = vec![false; n];
            for b in 0..n {
                let c = self.mul(a, b);
                if seen[c] {
                    return Err(GroupError::CollectionFailure("table is not a Latin square".into()));
                }
                seen[c] = true;
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b97f4a7c15 ^ n as u64);
        let trials = if n <= 16 { n * n * n } else { 4000 };
        for t in 0..trials {
            let (a, b, c) = if n <= 16 {
                (t / (n * n), (t / n) % n, t % n)
            } else {
                (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))
            };
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(GroupError::CollectionFailure(format!(
                    "associativity fails on ({a}, {b}, {c})"
                )));
            }
        }
        if subgroup_closure(self, &self.generators).order() != n {
            return Err(GroupError::CollectionFailure("generators do not generate".into()));
        }
        Ok(())
    }
}

/// Builds a group from a normal form on the mixed-radix box `radices`, numbered
/// lexicographically, with `mul` giving the (unreduced) exponent vector of a product.
fn from_normal_form(
    name: String,
    radices: &[u64],
    coord_names: &[&str],
    gens: &[Vec<u64>],
    mul: impl Fn(&[u64], &[u64]) -> Vec<i128>,
) -> Result<FiniteGroup, GroupError> {
    let order: u64 = radices.iter().product();
    if order as usize > MAX_ORDER {
        return Err(GroupError::InvalidParameters(format!("order {order} exceeds {MAX_ORDER}")));
    }
    let order = order as usize;
    let decode = |mut x: usize| {
        let mut v = vec![0u64; radices.len()];
        for i in (0..radices.len()).rev() {
            v[i] = x as u64 % radices[i];
            x /= radices[i] as usize;
        }
        v
    };
    let encode = |v: &[i128]| {
        let mut x = 0usize;
        for (e, &r) in v.iter().zip(radices) {
            x = x * r as usize + e.rem_euclid(r as i128) as usize;
        }
        x
    };
    let elems: Vec<Vec<u64>> = (0..order).map(decode).collect();
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            table[a * order + b] = encode(&mul(&elems[a], &elems[b])) as u16;
        }
    }
    let generators = gens
        .iter()
        .map(|g| encode(&g.iter().map(|&x| x as i128).collect::<Vec<_>>()))
        .collect();
    let coords = elems.iter().map(|v| v.iter().map(|&x| x as u32).collect()).collect();
    FiniteGroup::from_table(
        name,
        order,
        table,
        generators,
        coords,
        coord_names.iter().map(|s| s.to_string()).collect(),
    )
}

fn require_odd_prime(p: u64) -> Result<(), GroupError> {
    if p < 3 || !crate::linalg::is_prime(p) {
        return Err(GroupError::InvalidParameters(format!("{p} is not an odd prime")));
    }
    Ok(())
}

fn unit(i: usize, len: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

pub fn cyclic(m: u64) -> Result<FiniteGroup, GroupError> {
    if m == 0 {
        return Err(GroupError::InvalidParameters("cyclic order must be positive".into()));
    }
    from_normal_form(format!("C{m}"), &[m], &["x"], &[vec![1 % m]], |a, b| {
        vec![a[0] as i128 + b[0] as i128]
    })
}

/// P(n) = <A,B,C | A^p = B^p = C^{p^{n-2}} = [A,C] = [B,C] = 1, [A,B] = C^{p^{n-3}}>.
pub fn p_family(n: u32, p: u64) -> Result<FiniteGroup, GroupError> {
    require_odd_prime(p)?;
    if n < 3 {
        return Err(GroupError::InvalidParameters("P(n) needs n >= 3".into()));
    }
    let c_ord = p.pow(n - 2);
    let q = p.pow(n - 3) as i128;
    let name = if n == 3 { format!("P2(p={p})") } else { format!("P({n}, p={p})") };
    let g = from_normal_form(
        name,
        &[p, p, c_ord],
        &["A", "B", "C"],
        &[unit(0, 3), unit(1, 3), unit(2, 3)],
        // B^j A^i' = A^i' B^j C^{-q j i'}
        |x, y| {
            let (i, j, k) = (x[0] as i128, x[1] as i128, x[2] as i128);
            let (i2, j2, k2) = (y[0] as i128, y[1] as i128, y[2] as i128);
            vec![i + i2, j + j2, k + k2 - q * j * i2]
        },
    )?;
    let [a, b, c] = [g.generators[0], g.generators[1], g.generators[2]];
    check_relation(&g, g.commutator(a, b) == g.pow(c, q as i64), "[A,B] = C^{p^{n-3}}")?;
    check_relation(&g, g.commutator(a, c) == 0 && g.commutator(b, c) == 0, "C central")?;
    check_order(&g, p.pow(n))?;
    Ok(g)
}

pub fn p2(p: u64) -> Result<FiniteGroup, GroupError> {
    p_family(3, p)
}

/// M(n) = <A,B | A^p = B^{p^{n-1}} = 1, [B,A] = B^{p^{n-2}}>.
pub fn m_family(n: u32, p: u64) -> Result<FiniteGroup, GroupError> {
    require_odd_prime(p)?;
    if n < 3 {
        return Err(GroupError::InvalidParameters("M(n) needs n >= 3".into()));
    }
    let b_ord = p.pow(n - 1);
    let q = p.pow(n - 2) as i128;
    let g = from_normal_form(
        format!("M({n}, p={p})"),
        &[p, b_ord],
        &["A", "B"],
        &[unit(0, 2), unit(1, 2)],
        // A^{-1} B A = B^{1+q}, so B^j A^i' = A^i' B^{j (1+q)^i'}
        |x, y| {
            let m = b_ord as i128;
            let mut f = 1i128;
            for _ in 0..y[0] {
                f = f * (1 + q) % m;
            }
            vec![x[0] as i128 + y[0] as i128, x[1] as i128 * f + y[1] as i128]
        },
    )?;
    let [a, b] = [g.generators[0], g.generators[1]];
    check_relation(&g, g.commutator(b, a) == g.pow(b, q as i64), "[B,A] = B^{p^{n-2}}")?;
    check_order(&g, p.pow(n))?;
    Ok(g)
}

/// B(n,e) = <A,B,C | A^p = B^p = C^{p^{n-2}} = [B,C] = 1, [A,C^{-1}] = B, [B,A] = C^{e p^{n-3}}>.
pub fn b_family(n: u32, epsilon: i64, p: u64) -> Result<FiniteGroup, GroupError> {
    require_odd_prime(p)?;
    if n < 4 {
        return Err(GroupError::InvalidParameters("B(n,e) needs n >= 4".into()));
    }
    if epsilon.rem_euclid(p as i64) == 0 {
        return Err(GroupError::InvalidParameters("epsilon must be a unit mod p".into()));
    }
    let c_ord = p.pow(n - 2) as i128;
    let q = p.pow(n - 3) as i128;
    let e = epsilon as i128;
    // phi(x) = A^{-1} x A on N = <B,C>: phi(C) = BC, phi(B) = B C^{e q}.
    let phi = move |j: i128, k: i128| -> (i128, i128) {
        ((j + k).rem_euclid(p as i128), (e * q * j + k).rem_euclid(c_ord))
    };
    let mut it = (1i128, 0i128);
    for _ in 0..p {
        it = phi(it.0, it.1);
    }
    let mut it2 = (0i128, 1i128);
    for _ in 0..p {
        it2 = phi(it2.0, it2.1);
    }
    if it != (1, 0) || it2 != (0, 1) {
        return Err(GroupError::CollectionFailure("conjugation by A does not have order p".into()));
    }
    let g = from_normal_form(
        format!("B({n}, {epsilon}, p={p})"),
        &[p, p, c_ord as u64],
        &["A", "B", "C"],
        &[unit(0, 3), unit(1, 3), unit(2, 3)],
        // (A^i x)(A^i' y) = A^{i+i'} phi^{i'}(x) y
        move |x, y| {
            let (mut j, mut k) = (x[1] as i128, x[2] as i128);
            for _ in 0..y[0] {
                (j, k) = phi(j, k);
            }
            vec![x[0] as i128 + y[0] as i128, j + y[1] as i128, k + y[2] as i128]
        },
    )?;
    let [a, b, c] = [g.generators[0], g.generators[1], g.generators[2]];
    check_relation(&g, g.commutator(a, g.inv(c)) == b, "[A,C^{-1}] = B")?;
    check_relation(&g, g.commutator(b, a) == g.pow(c, (e * q) as i64), "[B,A] = C^{e p^{n-3}}")?;
    check_relation(&g, g.commutator(b, c) == 0, "[B,C] = 1")?;
    check_order(&g, p.pow(n))?;
    Ok(g)
}

/// G(a,1) = <A,B,C | A^{p^a} = B^p = C^p = [A,C] = [B,C] = 1, [A,B] = C>.
pub fn g_a1(a: u32, p: u64) -> Result<FiniteGroup, GroupError> {
    require_odd_prime(p)?;
    if a < 1 {
        return Err(GroupError::InvalidParameters("G(a,1) needs a >= 1".into()));
    }
    let g = from_normal_form(
        format!("G({a},1, p={p})"),
        &[p.pow(a), p, p],
        &["A", "B", "C"],
        &[unit(0, 3), unit(1, 3), unit(2, 3)],
        |x, y| {
            let (i, j, k) = (x[0] as i128, x[1] as i128, x[2] as i128);
            let (i2, j2, k2) = (y[0] as i128, y[1] as i128, y[2] as i128);
            vec![i + i2, j + j2, k + k2 - j * i2]
        },
    )?;
    let [ga, gb, gc] = [g.generators[0], g.generators[1], g.generators[2]];
    check_relation(&g, g.commutator(ga, gb) == gc, "[A,B] = C")?;
    check_order(&g, p.pow(a + 2))?;
    Ok(g)
}

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (m, n) = (g.order, h.order);
    if m * n > MAX_ORDER {
        return Err(GroupError::InvalidParameters(format!("order {} exceeds {MAX_ORDER}", m * n)));
    }
    let order = m * n;
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let (a1, a2, b1, b2) = (a / n, a % n, b / n, b % n);
            table[a * order + b] = (g.mul(a1, b1) * n + h.mul(a2, b2)) as u16;
        }
    }
    let mut gens: Vec<usize> = g.generators.iter().map(|&x| x * n).collect();
    gens.extend(h.generators.iter().copied());
    let coords = (0..order)
        .map(|a| {
            let mut c = g.coords[a / n].clone();
            c.extend_from_slice(&h.coords[a % n]);
            c
        })
        .collect();
    let mut names: Vec<String> = g.coord_names.iter().map(|s| format!("{s}1")).collect();
    names.extend(h.coord_names.iter().map(|s| format!("{s}2")));
    FiniteGroup::from_table(format!("{}x{}", g.name, h.name), order, table, gens, coords, names)
}

type Mat = Vec<Vec<u64>>;

fn mat_mul(a: &Mat, b: &Mat, p: u64) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p).collect())
        .collect()
}

fn mat_vec(a: &Mat, v: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum::<u64>() % p).collect()
}

/// V ⋊ Q with V = F_p^k and Q the matrix group generated by `matrices`;
/// (v, g)(w, h) = (v + g w, g h). Q is enumerated breadth-first from the identity.
pub fn semidirect(p: u64, matrices: &[Mat]) -> Result<FiniteGroup, GroupError> {
    if !crate::linalg::is_prime(p) {
        return Err(GroupError::InvalidParameters(format!("{p} is not prime")));
    }
    let k = matrices.first().map_or(0, |m| m.len());
    if k == 0 || matrices.iter().any(|m| m.len() != k || m.iter().any(|r| r.len() != k)) {
        return Err(GroupError::InvalidParameters("matrices must be square of equal size".into()));
    }
    let mats: Vec<Mat> = matrices
        .iter()
        .map(|m| m.iter().map(|r| r.iter().map(|x| x % p).collect()).collect())
        .collect();
    let id: Mat = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut q = vec![id.clone()];
    let mut index: HashMap<Mat, usize> = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for m in &mats {
            let x = mat_mul(&q[i], m, p);
            if !index.contains_key(&x) {
                if q.len() * (p as usize).pow(k as u32) > MAX_ORDER {
                    return Err(GroupError::InvalidParameters("semidirect product too large".into()));
                }
                index.insert(x.clone(), q.len());
                queue.push_back(q.len());
                q.push(x);
            }
        }
    }
    let qn = q.len();
    let qmul: Vec<usize> = (0..qn * qn).map(|t| index[&mat_mul(&q[t / qn], &q[t % qn], p)]).collect();
    let mut radices = vec![p; k];
    radices.push(qn as u64);
    let mut names: Vec<String> = (1..=k).map(|i| format!("v{i}")).collect();
    names.push("q".into());
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut gens: Vec<Vec<u64>> = (0..k).map(|i| unit(i, k + 1)).collect();
    for m in &mats {
        let mut v = vec![0; k + 1];
        v[k] = index[m] as u64;
        gens.push(v);
    }
    let g = from_normal_form(
        format!("F{p}^{k}:Q{qn}"),
        &radices,
        &name_refs,
        &gens,
        |x, y| {
            let gw = mat_vec(&q[x[k] as usize], &y[..k], p);
            let mut out: Vec<i128> = (0..k).map(|i| (x[i] + gw[i]) as i128).collect();
            out.push(qmul[x[k] as usize * qn + y[k] as usize] as i128);
            out
        },
    )?;
    check_order(&g, p.pow(k as u32) * qn as u64)?;
    Ok(g)
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // f monic of degree n, given as coefficients c_0..c_{n-1} of the non-leading terms
    let n = f.len();
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (n..2 * n).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for i in 0..n {
                prod[d - n + i] = (prod[d - n + i] + (p - c) * f[i]) % p;
            }
        }
    }
    prod.truncate(n);
    prod
}

fn poly_pow_x(e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len();
    let mut result = vec![0u64; n];
    result[0] = 1;
    let mut base = vec![0u64; n];
    if n == 1 {
        base[0] = (p - f[0]) % p;
    } else {
        base[1] = 1;
    }
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &base, f, p);
        }
        base = poly_mulmod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic primitive polynomial of degree n over F_p in lexicographic order of its
/// non-leading coefficients `c_0..c_{n-1}` (highest first).
pub fn primitive_polynomial(p: u64, n: u32) -> Vec<u64> {
    let n = n as usize;
    let total = p.pow(n as u32) - 1;
    let factors = prime_factors(total);
    let mut one = vec![0u64; n];
    one[0] = 1;
    for code in 0..p.pow(n as u32) {
        let mut f = vec![0u64; n];
        let mut c = code;
        for i in (0..n).rev() {
            f[i] = c % p;
            c /= p;
        }
        if f[0] == 0 {
            continue;
        }
        if poly_pow_x(total, &f, p) == one && factors.iter().all(|&r| poly_pow_x(total / r, &f, p) != one) {
            return f;
        }
    }
    unreachable!("primitive polynomials exist over every finite field")
}

/// F_p^n ⋊ C_{p^n - 1} with the cyclic factor acting as multiplication by a primitive
/// element of F_{p^n} (companion matrix of a primitive polynomial).
pub fn singer(p: u64, n: u32) -> Result<FiniteGroup, GroupError> {
    if !crate::linalg::is_prime(p) || n == 0 {
        return Err(GroupError::InvalidParameters("singer needs prime p and n >= 1".into()));
    }
    let f = primitive_polynomial(p, n);
    let k = n as usize;
    let mut m = vec![vec![0u64; k]; k];
    for i in 1..k {
        m[i][i - 1] = 1;
    }
    for i in 0..k {
        m[i][k - 1] = (p - f[i]) % p;
    }
    let mut g = semidirect(p, &[m])?;
    g.name = format!("F{p}^{n}:C{}", p.pow(n) - 1);
    Ok(g)
}

fn check_relation(g: &FiniteGroup, ok: bool, what: &str) -> Result<(), GroupError> {
    if ok {
        Ok(())
    } else {
        Err(GroupError::CollectionFailure(format!("{}: relation {what} fails", g.name)))
    }
}

fn check_order(g: &FiniteGroup, expected: u64) -> Result<(), GroupError> {
    if g.order as u64 != expected {
        return Err(GroupError::CollectionFailure(format!(
            "{} has order {} instead of {expected}",
            g.name, g.order
        )));
    }
    Ok(())
}

/// JSON description of a group family.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<GroupSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub matrices: Vec<Vec<Vec<u64>>>,
}

impl GroupSpec {
    pub fn family(family: &str) -> Self {
        GroupSpec { family: family.into(), ..Default::default() }
    }
    pub fn with_p(mut self, p: u64) -> Self {
        self.p = Some(p);
        self
    }
    pub fn with_n(mut self, n: u32) -> Self {
        self.n = Some(n);
        self
    }
}

/// Builds a group from its JSON description.
///
/// Families: `cyclic` (order `n`), `P` (`n` default 3), `P2`, `M`, `B` (`epsilon` default 1),
/// `G_a1` (`a`, or `n` as a fallback), `product` (`factors`), and `semidirect`
/// (explicit `matrices`, or the Singer action on F_{p^n} when none are given).
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    let need_p = || spec.p.ok_or_else(|| GroupError::InvalidParameters("missing p".into()));
    let need_n = || spec.n.ok_or_else(|| GroupError::InvalidParameters("missing n".into()));
    match spec.family.as_str() {
        "cyclic" => cyclic(need_n()? as u64),
        "P" => p_family(spec.n.unwrap_or(3), need_p()?),
        "P2" => p2(need_p()?),
        "M" => m_family(need_n()?, need_p()?),
        "B" => b_family(need_n()?, spec.epsilon.unwrap_or(1), need_p()?),
        "G_a1" => g_a1(spec.a.or(spec.n).ok_or_else(|| GroupError::InvalidParameters("missing a".into()))?, need_p()?),
        "product" => {
            let mut it = spec.factors.iter();
            let first = it
                .next()
                .ok_or_else(|| GroupError::InvalidParameters("product needs factors".into()))?;
            let mut g = build_group(first)?;
            for f in it {
                g = direct_product(&g, &build_group(f)?)?;
            }
            Ok(g)
        }
        "semidirect" => {
            if spec.matrices.is_empty() {
                singer(need_p()?, need_n()?)
            } else {
                semidirect(need_p()?, &spec.matrices)
            }
        }
        other => Err(GroupError::InvalidParameters(format!("unknown family {other:?}"))),
    }
}

/// A subgroup given by its sorted member list, with least-index left-coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub members: Vec<usize>,
    pub transversal: Vec<usize>,
    pub generators: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    /// The subgroup as a group in its own right; element i corresponds to `members[i]`.
    pub fn as_group(&self, parent: &FiniteGroup, name: &str) -> FiniteGroup {
        let n = self.members.len();
        let pos = |g: usize| self.members.binary_search(&g).unwrap();
        let mut table = vec![0u16; n * n];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                table[i * n + j] = pos(parent.mul(a, b)) as u16;
            }
        }
        let mut gens: Vec<usize> = self.generators.iter().map(|&g| pos(g)).filter(|&g| g != 0).collect();
        if gens.is_empty() && n > 1 {
            gens = (1..n).collect();
        }
        let coords = self.members.iter().map(|&g| parent.coords[g].clone()).collect();
        FiniteGroup::from_table(name.into(), n, table, gens, coords, parent.coord_names.clone())
            .expect("subgroup of a valid group is a valid group")
    }

    /// Right-coset decomposition `g = h(g) s(g)` with `s(g)` the least element of `H g`.
    pub fn right_coset_split(&self, g: &FiniteGroup) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); g.order()];
        for x in 0..g.order() {
            if out[x].0 != usize::MAX {
                continue;
            }
            // x is the least element of its coset H x
            for &h in &self.members {
                out[g.mul(h, x)] = (h, x);
            }
        }
        out
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    assert_eq!(n % members.len(), 0, "Lagrange violated: subgroup order does not divide |G|");
    let mut covered = vec![false; n];
    let mut transversal = Vec::new();
    for x in 0..n {
        if covered[x] {
            continue;
        }
        transversal.push(x);
        for &h in &members {
            covered[g.mul(x, h)] = true;
        }
    }
    assert_eq!(transversal.len() * members.len(), n);
    Subgroup { members, transversal, generators: gens.iter().copied().filter(|&x| x != 0).collect() }
}

/// Conjugacy class representatives of subgroups of order p, ordered by least generator.
pub fn order_p_subgroup_classes(g: &FiniteGroup, p: u64) -> Result<Vec<Subgroup>, GroupError> {
    if p < 2 || g.order() as u64 % p != 0 || !crate::linalg::is_prime(p) {
        return Err(GroupError::PrimeDoesNotDivide { p, order: g.order() });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut reps = Vec::new();
    for x in 1..g.order() {
        if g.element_order(x) as u64 != p {
            continue;
        }
        let sub = subgroup_closure(g, &[x]);
        if seen.contains(&sub.members) {
            continue;
        }
        for y in 0..g.order() {
            let mut conj: Vec<usize> = sub.members.iter().map(|&h| g.conj(h, y)).collect();
            conj.sort_unstable();
            seen.insert(conj);
        }
        reps.push(sub);
    }
    Ok(reps)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    let z: Vec<usize> = (0..g.order())
        .filter(|&x| g.generators().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    subgroup_closure(g, &z)
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let mut seeds: Vec<usize> = Vec::new();
    for &a in gens {
        for &b in gens {
            seeds.push(g.commutator(a, b));
        }
    }
    let mut sub = subgroup_closure(g, &seeds);
    loop {
        let extra: Vec<usize> = sub
            .members
            .iter()
            .flat_map(|&h| gens.iter().map(move |&s| (h, s)))
            .map(|(h, s)| g.conj(h, s))
            .filter(|&c| !sub.contains(c))
            .collect();
        if extra.is_empty() {
            return sub;
        }
        seeds.extend(extra);
        sub = subgroup_closure(g, &seeds);
    }
}

pub fn center_and_derived(g: &FiniteGroup) -> (Subgroup, Subgroup) {
    (center(g), derived_subgroup(g))
}

/// Every subgroup, found by joining cyclic subgroups until nothing new appears. Ordered by
/// decreasing order, then by member list.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic_gens = Vec::new();
    let mut frontier = Vec::new();
    for x in 0..g.order() {
        let c = subgroup_closure(g, &[x]);
        if seen.insert(c.members.clone()) {
            cyclic_gens.push(x);
            frontier.push(c);
        }
    }
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for h in &frontier {
            for &x in &cyclic_gens {
                if h.contains(x) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(x);
                let k = subgroup_closure(g, &gens);
                if seen.insert(k.members.clone()) {
                    next.push(k);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.members.cmp(&b.members)));
    all
}

/// Conjugacy classes, each sorted, ordered by least element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut class_of = vec![usize::MAX; g.order()];
    let mut classes = Vec::new();
    for x in 0..g.order() {
        if class_of[x] != usize::MAX {
            continue;
        }
        let mut cls: Vec<usize> = (0..g.order()).map(|y| g.conj(x, y)).collect();
        cls.sort_unstable();
        cls.dedup();
        for &c in &cls {
            class_of[c] = classes.len();
        }
        classes.push(cls);
    }
    classes
}
