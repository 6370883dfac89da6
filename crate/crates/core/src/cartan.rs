//! Irreducible root systems in Bourbaki coordinates and their Weyl groups.
//!
//! Roots are produced by closing the simple roots under the simple
//! reflections; the resulting count is checked against the classification
//! rather than assumed. Weyl group elements are permutations of the root list,
//! which is their canonical form; reduced words are kept only as witnesses.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, dot, frac, int, Rational, Vector};

/// Default bound on the number of Weyl group elements we are willing to list.
/// Large enough for E6 (51840) and B6/C6 (46080).
pub const DEFAULT_ENUMERATION_CAP: usize = 60_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.letter() == c.to_ascii_uppercase())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Classification label of an irreducible crystallographic root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let bound = match family {
            Family::A if rank < 1 => Some("A_n requires n >= 1"),
            Family::B if rank < 2 => Some("B_n requires n >= 2"),
            Family::C if rank < 2 => Some("C_n requires n >= 2"),
            Family::D if rank < 3 => Some("D_n requires n >= 3"),
            Family::E if !(6..=8).contains(&rank) => Some("E_n requires n in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F_n requires n = 4"),
            Family::G if rank != 2 => Some("G_n requires n = 2"),
            _ => None,
        };
        match bound {
            Some(bound) => Err(Error::InvalidRank {
                family,
                rank,
                bound,
            }),
            None => Ok(CartanType { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of roots according to the classification.
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1),
            Family::B | Family::C => 2 * n * n,
            Family::D => 2 * n * (n - 1),
            Family::E => match n {
                6 => 72,
                7 => 126,
                _ => 240,
            },
            Family::F => 48,
            Family::G => 12,
        }
    }

    /// Order of the Weyl group according to the classification.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Bourbaki simple roots, in Bourbaki numbering.
    fn simple_roots(&self) -> (usize, Vec<Vector>) {
        let n = self.rank;
        let unit = |dim: usize, i: usize, c: i64| {
            let mut v = linalg::zeros(dim);
            v[i] = int(c);
            v
        };
        let diff = |dim: usize, i: usize, j: usize| linalg::sub(&unit(dim, i, 1), &unit(dim, j, 1));
        match self.family {
            Family::A => (n + 1, (0..n).map(|i| diff(n + 1, i, i + 1)).collect()),
            Family::B | Family::C | Family::D => {
                let mut s: Vec<Vector> = (0..n - 1).map(|i| diff(n, i, i + 1)).collect();
                s.push(match self.family {
                    Family::B => unit(n, n - 1, 1),
                    Family::C => unit(n, n - 1, 2),
                    _ => linalg::add(&unit(n, n - 2, 1), &unit(n, n - 1, 1)),
                });
                (n, s)
            }
            Family::E => {
                let h = frac(1, 2);
                let mut a1 = vec![-h; 8];
                a1[0] = h;
                a1[7] = h;
                let mut s = vec![a1, linalg::add(&unit(8, 0, 1), &unit(8, 1, 1))];
                for i in 0..n - 2 {
                    s.push(diff(8, i + 1, i));
                }
                (8, s)
            }
            Family::F => {
                let h = frac(1, 2);
                (
                    4,
                    vec![diff(4, 1, 2), diff(4, 2, 3), unit(4, 3, 1), vec![h, -h, -h, -h]],
                )
            }
            Family::G => (3, vec![diff(3, 0, 1), vec![int(-2), int(1), int(1)]]),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadCartanType(s.to_string());
        let mut chars = s.trim().chars();
        let family = chars.next().and_then(Family::from_letter).ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// An element of the Weyl group, stored as the permutation it induces on the
/// root list: `perm[i]` is the index of `w(root_i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement {
    perm: Vec<u16>,
}

impl WeylElement {
    pub fn identity(num_roots: usize) -> Self {
        WeylElement {
            perm: (0..num_roots as u16).collect(),
        }
    }

    /// Wrap a raw permutation. Returns `None` if `perm` is not a permutation.
    pub fn from_perm(perm: Vec<u16>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            let slot = seen.get_mut(p as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(WeylElement { perm })
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    #[inline]
    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            perm: other.perm.iter().map(|&i| self.perm[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        WeylElement { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// Images of the simple roots; these determine the element.
    pub fn simple_images(&self, rs: &RootSystem) -> Vec<u16> {
        rs.simple.iter().map(|&s| self.perm[s]).collect()
    }

    /// Whether the permutation comes from an isometry: all pairwise inner
    /// products of roots are preserved.
    pub fn preserves_inner_products(&self, rs: &RootSystem) -> bool {
        (0..rs.num_roots()).all(|i| {
            (0..rs.num_roots()).all(|j| rs.inner(i, j) == rs.inner(self.apply(i), self.apply(j)))
        })
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, rs: &RootSystem) -> usize {
        rs.positive_roots()
            .filter(|&i| !rs.is_positive(self.apply(i)))
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan: CartanType,
    ambient_dim: usize,
    roots: Vec<Vector>,
    simple: Vec<usize>,
    coefficients: Vec<Vec<i64>>,
    norms: Vec<Rational>,
    negation: Vec<usize>,
    index: BTreeMap<Vector, usize>,
    simple_reflections: Vec<WeylElement>,
}

impl RootSystem {
    /// Build the root system of `t` by closure of its Bourbaki simple roots.
    pub fn new(t: CartanType) -> Result<Self> {
        let (ambient_dim, simple_vecs) = t.simple_roots();
        let n = simple_vecs.len();

        let reflect = |beta: &[Rational], alpha: &[Rational]| -> Vector {
            let c = int(2) * dot(beta, alpha) / dot(alpha, alpha);
            linalg::sub(beta, &linalg::scale(&c, alpha))
        };
        let mut found: BTreeSet<Vector> = simple_vecs.iter().cloned().collect();
        let mut queue: VecDeque<Vector> = simple_vecs.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for alpha in &simple_vecs {
                let image = reflect(&beta, alpha);
                if found.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        if found.len() != t.root_count() {
            return Err(Error::Invariant(format!(
                "closure of the simple roots of {t} has {} elements, expected {}",
                found.len(),
                t.root_count()
            )));
        }

        let gram: Vec<Vector> = simple_vecs
            .iter()
            .map(|a| simple_vecs.iter().map(|b| dot(a, b)).collect())
            .collect();
        let mut keyed = Vec::with_capacity(found.len());
        for beta in found {
            let rhs: Vector = simple_vecs.iter().map(|a| dot(&beta, a)).collect();
            let c = linalg::solve(&gram, &rhs)
                .ok_or_else(|| Error::Invariant(format!("simple roots of {t} are dependent")))?;
            if c.iter().any(|x| !x.is_integer()) {
                return Err(Error::Invariant(format!("non-integral root coefficients in {t}")));
            }
            let c: Vec<i64> = c.iter().map(|x| x.to_integer() as i64).collect();
            let pos = c.iter().all(|&x| x >= 0);
            let negv = c.iter().all(|&x| x <= 0);
            if !(pos || negv) {
                return Err(Error::Invariant(format!("root of {t} with mixed-sign coefficients")));
            }
            let height: i64 = c.iter().sum();
            keyed.push((height, beta, c));
        }
        keyed.sort();

        let roots: Vec<Vector> = keyed.iter().map(|(_, v, _)| v.clone()).collect();
        let coefficients: Vec<Vec<i64>> = keyed.into_iter().map(|(_, _, c)| c).collect();
        let index: BTreeMap<Vector, usize> =
            roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let simple: Vec<usize> = simple_vecs.iter().map(|v| index[v]).collect();
        let negation: Vec<usize> = roots.iter().map(|v| index[&linalg::neg(v)]).collect();
        let norms = roots.iter().map(|v| dot(v, v)).collect();

        let mut rs = RootSystem {
            cartan: t,
            ambient_dim,
            roots,
            simple,
            coefficients,
            norms,
            negation,
            index,
            simple_reflections: Vec::new(),
        };
        for i in 0..rs.num_roots() {
            for j in 0..rs.num_roots() {
                let p = int(2) * rs.inner(i, j) / rs.norms[j];
                if !p.is_integer() {
                    return Err(Error::Invariant(format!("non-integral Cartan integer in {t}")));
                }
            }
        }
        rs.simple_reflections = (0..n).map(|k| rs.reflection(rs.simple[k])).collect();
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Vector {
        &self.roots[i]
    }

    /// Root indices of the simple roots, in Bourbaki numbering.
    pub fn simple_roots(&self) -> &[usize] {
        &self.simple
    }

    /// Coefficients of root `i` on the simple roots.
    pub fn coefficients(&self, i: usize) -> &[i64] {
        &self.coefficients[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.coefficients[i].iter().sum()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.height(i) > 0
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.num_roots()).filter(move |&i| self.is_positive(i))
    }

    pub fn negation(&self, i: usize) -> usize {
        self.negation[i]
    }

    pub fn find(&self, v: &[Rational]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn inner(&self, i: usize, j: usize) -> Rational {
        dot(&self.roots[i], &self.roots[j])
    }

    pub fn norm(&self, i: usize) -> Rational {
        self.norms[i]
    }

    /// Cartan integer `<root_i, root_j^vee>`.
    pub fn cartan_integer(&self, i: usize, j: usize) -> i64 {
        (int(2) * self.inner(i, j) / self.norms[j]).to_integer() as i64
    }

    /// Reflection in root `i`, as a permutation of the roots.
    pub fn reflection(&self, i: usize) -> WeylElement {
        let perm = (0..self.num_roots())
            .map(|b| {
                let c = int(self.cartan_integer(b, i));
                let image = linalg::sub(&self.roots[b], &linalg::scale(&c, &self.roots[i]));
                self.index[&image] as u16
            })
            .collect();
        WeylElement { perm }
    }

    /// Reflection in the `k`-th simple root.
    pub fn simple_reflection(&self, k: usize) -> &WeylElement {
        &self.simple_reflections[k]
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.num_roots())
    }

    /// Checked version of [`RootSystem::reflection`].
    pub fn reflection_checked(&self, i: usize) -> Result<WeylElement> {
        if i >= self.num_roots() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.num_roots(),
            });
        }
        Ok(self.reflection(i))
    }

    /// Image of an arbitrary vector of the root span under `w`, computed from
    /// the images of the simple roots.
    pub fn act(&self, w: &WeylElement, v: &[Rational]) -> Vector {
        let coords = self.simple_coordinates(v);
        let images: Vec<Vector> = self.simple.iter().map(|&s| self.roots[w.apply(s)].clone()).collect();
        linalg::combine(&coords, &images, self.ambient_dim)
    }

    /// Coordinates of `v` (assumed in the root span) on the simple roots.
    pub fn simple_coordinates(&self, v: &[Rational]) -> Vector {
        let gram: Vec<Vector> = self
            .simple
            .iter()
            .map(|&a| self.simple.iter().map(|&b| self.inner(a, b)).collect())
            .collect();
        let rhs: Vector = self.simple.iter().map(|&a| dot(v, &self.roots[a])).collect();
        linalg::solve(&gram, &rhs).expect("simple roots form a basis")
    }
}

/// Exponent `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`.
pub fn pairing(beta: &[Rational], alpha: &[Rational]) -> Result<Rational> {
    let n = dot(alpha, alpha);
    if n.is_zero() {
        return Err(Error::ZeroRoot);
    }
    Ok(int(2) * dot(beta, alpha) / n)
}

/// Coroot `2 alpha / (alpha, alpha)`.
pub fn coroot(alpha: &[Rational]) -> Vector {
    let c = int(2) / dot(alpha, alpha);
    linalg::scale(&c, alpha)
}

/// The element of the subgroup generated by the reflections in `simple`
/// (root indices forming a simple system of a subsystem) that sends every
/// positive root of that subsystem to a negative root.
pub fn longest_element_of(rs: &RootSystem, simple: &[usize]) -> WeylElement {
    let reflections: Vec<WeylElement> = simple.iter().map(|&s| rs.reflection(s)).collect();
    let mut w = rs.identity();
    // Right-multiplying by s_g with w(g) > 0 lengthens w by one.
    while let Some(k) = simple.iter().position(|&g| rs.is_positive(w.apply(g))) {
        w = w.compose(&reflections[k]);
    }
    w
}

/// Longest element of the parabolic subgroup `W_theta`, `theta` given as
/// positions into the simple roots.
pub fn longest_element(rs: &RootSystem, theta: &[usize]) -> Result<WeylElement> {
    let simple = theta
        .iter()
        .map(|&k| {
            rs.simple.get(k).copied().ok_or(Error::IndexOutOfRange {
                index: k,
                len: rs.rank(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(longest_element_of(rs, &simple))
}

/// A fully listed finite Weyl group.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    elements: Vec<WeylElement>,
    words: Vec<Vec<u8>>,
    index: BTreeMap<Vec<u16>, usize>,
}

impl WeylGroup {
    /// Breadth-first closure over the simple reflections in Bourbaki order.
    pub fn generate(rs: &RootSystem, cap: usize) -> Result<Self> {
        let order: Vec<usize> = (0..rs.rank()).collect();
        Self::generate_with_order(rs, cap, &order)
    }

    /// Breadth-first closure with the generators tried in `generator_order`
    /// (positions into the simple roots). The element order depends on the
    /// generator order; the element set does not.
    pub fn generate_with_order(rs: &RootSystem, cap: usize, generator_order: &[usize]) -> Result<Self> {
        let t = rs.cartan_type();
        let expected = t.weyl_order();
        if expected > cap as u64 {
            return Err(Error::EnumerationTooLarge {
                group: t.to_string(),
                order: expected,
                cap,
            });
        }
        let id = rs.identity();
        let mut index = BTreeMap::new();
        index.insert(id.simple_images(rs), 0);
        let mut elements = vec![id];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut head = 0;
        while head < elements.len() {
            for &k in generator_order {
                let next = elements[head].compose(rs.simple_reflection(k));
                let key = next.simple_images(rs);
                if index.contains_key(&key) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::EnumerationTooLarge {
                        group: t.to_string(),
                        order: expected,
                        cap,
                    });
                }
                index.insert(key, elements.len());
                let mut word = words[head].clone();
                word.push(k as u8);
                words.push(word);
                elements.push(next);
            }
            head += 1;
        }
        if elements.len() as u64 != expected {
            return Err(Error::Invariant(format!(
                "closure gave |W({t})| = {}, expected {expected}",
                elements.len()
            )));
        }
        Ok(WeylGroup {
            elements,
            words,
            index,
        })
    }

    /// Rebuild from previously generated parts (e.g. a cache), checking that
    /// the data is consistent with `rs`.
    pub fn from_parts(rs: &RootSystem, perms: Vec<Vec<u16>>, words: Vec<Vec<u8>>) -> Result<Self> {
        let bad = |m: &str| Error::Invariant(format!("inconsistent Weyl group data: {m}"));
        if perms.len() as u64 != rs.cartan_type().weyl_order() || words.len() != perms.len() {
            return Err(bad("wrong element count"));
        }
        let mut elements = Vec::with_capacity(perms.len());
        let mut index = BTreeMap::new();
        for (i, p) in perms.into_iter().enumerate() {
            if p.len() != rs.num_roots() {
                return Err(bad("wrong permutation length"));
            }
            let w = WeylElement::from_perm(p).ok_or_else(|| bad("not a permutation"))?;
            if words[i].iter().any(|&k| k as usize >= rs.rank()) {
                return Err(bad("word letter out of range"));
            }
            if index.insert(w.simple_images(rs), i).is_some() {
                return Err(bad("duplicate element"));
            }
            elements.push(w);
        }
        if !elements.first().is_some_and(WeylElement::is_identity) {
            return Err(bad("first element is not the identity"));
        }
        Ok(WeylGroup {
            elements,
            words,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    /// Reduced word (positions into the simple roots) witnessing element `i`.
    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn index_of(&self, rs: &RootSystem, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.simple_images(rs)).copied()
    }
}

/// Evaluate a word in the simple reflections.
pub fn word_to_element(rs: &RootSystem, word: &[u8]) -> WeylElement {
    word.iter()
        .fold(rs.identity(), |w, &k| w.compose(rs.simple_reflection(k as usize)))
}
