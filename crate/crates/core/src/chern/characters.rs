//! Complex characters of finite groups, found by inducing linear characters of subgroups.

use super::cyclotomic::{cyclotomic_polynomial, reduce_integer, Cyclotomic};
use super::ChernError;
use crate::groups::{all_subgroups, conjugacy_classes, derived_subgroup, subgroup_closure, FiniteGroup, Subgroup};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Largest group whose subgroups are enumerated automatically.
pub const MAX_ENUMERATED_ORDER: usize = 200;

/// Conjugacy classes of a group together with the class of every element and of inverses.
#[derive(Debug)]
pub struct Classes {
    group: Arc<FiniteGroup>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse: Vec<usize>,
}

impl Classes {
    pub fn new(group: &Arc<FiniteGroup>) -> Self {
        let classes = conjugacy_classes(group);
        let mut class_of = vec![0; group.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x] = i;
            }
        }
        let inverse = classes.iter().map(|c| class_of[group.inv(c[0])]).collect();
        Classes { group: group.clone(), classes, class_of, inverse }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// The class of `g^{-1}` for `g` in class `i`.
    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }
}

/// A class function with values in `Q(ζ_N)`, `N` the exponent of the group.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    classes: Arc<Classes>,
    values: Vec<Cyclotomic>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.classes, &other.classes) && self.values == other.values
    }
}

impl ClassFunction {
    pub fn classes(&self) -> &Arc<Classes> {
        &self.classes
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.classes.group
    }

    /// One value per conjugacy class.
    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn at(&self, g: usize) -> &Cyclotomic {
        &self.values[self.classes.class_of(g)]
    }

    /// `χ(1)`, for characters.
    pub fn degree(&self) -> usize {
        let d = self.values[0].to_rational().expect("value at the identity is rational");
        assert!(d.is_integer());
        usize::try_from(d.to_integer()).expect("non-negative degree")
    }

    /// `⟨χ, ψ⟩ = (1/|G|) Σ_g χ(g) ψ(g^{-1})`.
    pub fn inner(&self, other: &ClassFunction) -> Cyclotomic {
        assert!(Arc::ptr_eq(&self.classes, &other.classes), "class functions on different class data");
        let n = self.values[0].conductor();
        let mut total = Cyclotomic::zero(n);
        for i in 0..self.classes.len() {
            let size = Cyclotomic::from_integer(n, self.classes.class(i).len() as i64);
            let term = self.values[i].mul(&other.values[self.classes.inverse(i)]);
            total = total.add(&term.mul(&size));
        }
        total.scale(&BigRational::new(1.into(), self.group().order().into()))
    }
}

/// Irreducible characters, inducing from every subgroup (for `|G| ≤ 200`) until the squared
/// degrees account for `|G|`.
pub fn irreducible_characters(group: &Arc<FiniteGroup>) -> Result<Vec<ClassFunction>, ChernError> {
    if group.is_abelian() {
        return irreducible_characters_from(group, &[]);
    }
    if group.order() > MAX_ENUMERATED_ORDER {
        return Err(ChernError::TooLarge { order: group.order(), limit: MAX_ENUMERATED_ORDER });
    }
    irreducible_characters_from(group, &all_subgroups(group))
}

/// Irreducible characters induced from linear characters of `group` itself and of `sources`,
/// ordered by degree then by values. Fails unless the result is certified complete:
/// orthonormal with `Σ χ(1)^2 = |G|`.
pub fn irreducible_characters_from(group: &Arc<FiniteGroup>, sources: &[Subgroup]) -> Result<Vec<ClassFunction>, ChernError> {
    let classes = Arc::new(Classes::new(group));
    let n = group.exponent();
    let phi = cyclotomic_polynomial(n);
    let order = group.order();
    let whole = subgroup_closure(group, group.generators());
    // key: integral power-basis coordinates of every value
    let mut found: BTreeMap<(usize, Vec<Vec<i128>>), ()> = BTreeMap::new();
    let mut total = 0usize;
    for h in std::iter::once(&whole).chain(sources) {
        if total == order {
            break;
        }
        let deg = h.index();
        if deg * deg > order - total {
            continue;
        }
        let ind = Inducer::new(group, &classes, h);
        for lam in linear_characters(group, h, n) {
            if !ind.irreducible(&lam) {
                continue;
            }
            let key: Vec<Vec<i128>> = ind
                .counts(&lam, n)
                .into_iter()
                .map(|c| {
                    reduce_integer(c, &phi)
                        .into_iter()
                        .map(|x| {
                            assert_eq!(x % h.order() as i128, 0, "induced values are algebraic integers");
                            x / h.order() as i128
                        })
                        .collect()
                })
                .collect();
            if found.insert((deg, key), ()).is_none() {
                total += deg * deg;
            }
        }
    }
    let chars: Vec<ClassFunction> = found
        .into_keys()
        .map(|(_, key)| ClassFunction {
            classes: classes.clone(),
            values: key.iter().map(|c| Cyclotomic::from_group_ring(n, c, 1)).collect(),
        })
        .collect();
    certify(&chars, order)?;
    Ok(chars)
}

fn certify(chars: &[ClassFunction], order: usize) -> Result<(), ChernError> {
    let sum: usize = chars.iter().map(|c| c.degree() * c.degree()).sum();
    if sum != order {
        return Err(ChernError::Incomplete { degree_square_sum: sum, order });
    }
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate().skip(i) {
            let ip = a.inner(b).to_rational();
            let expect = if i == j { BigRational::one() } else { BigRational::zero() };
            if ip != Some(expect) {
                return Err(ChernError::NotOrthonormal(i, j));
            }
        }
    }
    Ok(())
}

/// Linear characters of `h` as exponents of `ζ_n`, indexed by position in `h.members`.
fn linear_characters(g: &FiniteGroup, h: &Subgroup, n: usize) -> Vec<Vec<usize>> {
    let hg = h.as_group(g, "H");
    let derived = derived_subgroup(&hg);
    // generators of H modulo H', with their orders in H/H'
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut span = derived.clone();
    for x in 0..hg.order() {
        if span.contains(x) {
            continue;
        }
        let mut k = 1;
        let mut y = x;
        while !derived.contains(y) {
            y = hg.mul(y, x);
            k += 1;
        }
        chosen.push((x, k));
        let gens: Vec<usize> = derived.generators.iter().copied().chain(chosen.iter().map(|c| c.0)).collect();
        span = subgroup_closure(&hg, &gens);
    }
    let mut out = Vec::new();
    let mut t = vec![0usize; chosen.len()];
    loop {
        let mut edges: Vec<(usize, usize)> = chosen.iter().zip(&t).map(|(&(x, o), &ti)| (x, ti * (n / o))).collect();
        edges.extend(derived.generators.iter().map(|&x| (x, 0)));
        if let Some(lam) = extend_homomorphism(&hg, &edges, n) {
            out.push(lam);
        }
        // next assignment
        let mut i = 0;
        loop {
            if i == t.len() {
                return out;
            }
            t[i] += 1;
            if t[i] < chosen[i].1 {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

/// The homomorphism to `Z/n` with the given generator values, if one exists.
fn extend_homomorphism(hg: &FiniteGroup, edges: &[(usize, usize)], n: usize) -> Option<Vec<usize>> {
    let mut lam = vec![usize::MAX; hg.order()];
    lam[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &(s, v) in edges {
            let y = hg.mul(x, s);
            let want = (lam[x] + v) % n;
            if lam[y] == usize::MAX {
                lam[y] = want;
                queue.push_back(y);
            } else if lam[y] != want {
                return None;
            }
        }
    }
    debug_assert!(lam.iter().all(|&l| l != usize::MAX));
    Some(lam)
}

/// Precomputed conjugation data for inducing from one subgroup.
struct Inducer {
    /// Per class representative r: positions in H of the conjugates x r x^{-1} lying in H.
    hits: Vec<Vec<usize>>,
    /// Per s outside H: pairs (h, s^{-1} h s) of positions with both in H.
    mackey: Vec<Vec<(usize, usize)>>,
}

impl Inducer {
    fn new(g: &FiniteGroup, classes: &Classes, h: &Subgroup) -> Self {
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &x) in h.members.iter().enumerate() {
            pos[x] = i;
        }
        let hits = (0..classes.len())
            .map(|c| {
                let r = classes.class(c)[0];
                (0..g.order())
                    .map(|x| pos[g.conj(r, g.inv(x))])
                    .filter(|&i| i != usize::MAX)
                    .collect()
            })
            .collect();
        let mackey = (0..g.order())
            .filter(|&s| pos[s] == usize::MAX)
            .map(|s| {
                h.members
                    .iter()
                    .filter_map(|&x| {
                        let y = g.conj(x, s);
                        (pos[y] != usize::MAX).then(|| (pos[x], pos[y]))
                    })
                    .collect()
            })
            .collect();
        Inducer { hits, mackey }
    }

    /// Mackey's criterion: the induced character is irreducible iff `λ` and its conjugate by
    /// every `s ∉ H` differ on `H ∩ sHs^{-1}`.
    fn irreducible(&self, lam: &[usize]) -> bool {
        self.mackey.iter().all(|pairs| pairs.iter().any(|&(a, b)| lam[a] != lam[b]))
    }

    /// `|H| Ind λ` at each class, in the group ring `Z[C_n]`.
    fn counts(&self, lam: &[usize], n: usize) -> Vec<Vec<i128>> {
        self.hits
            .iter()
            .map(|hs| {
                let mut c = vec![0i128; n];
                for &i in hs {
                    c[lam[i]] += 1;
                }
                c
            })
            .collect()
    }
}
