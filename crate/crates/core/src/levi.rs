//! Relative structures attached to a standard Levi subgroup.
//!
//! A standard Levi is given by a subset `theta` of the simple roots. Relative
//! roots are the nonzero orthogonal projections of the remaining roots onto
//! `a_M* = theta^⊥ ∩ span(Φ)`, reduced by keeping only the indivisible
//! projection on each ray (this drops `p` whenever `p / 2` is present, and
//! also `3p` in type G2). Projections are tracked by their coefficients on the
//! simple roots outside `theta`, which are integers and coincide with the
//! coordinates on the relative simple roots `Δ_M`.
//!
//! The relative Weyl group `W_M` is the setwise stabilizer of `theta` in `W`.
//! A relative root `α` lies in `Φ_M⁰` when the product of longest elements
//! `w₀^{M_α} w₀^M` stabilizes `theta`; these products generate `W_M⁰`, and
//! `W_M¹` is the subgroup of `W_M` keeping `(Φ_M⁰)⁺` positive.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_traits::Zero;

use crate::cartan::{longest_element_of, RootSystem, WeylElement, WeylGroup};
use crate::error::{Error, Result};
use crate::linalg::{self, dot, int, Rational, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeRoot {
    /// Coordinates on `Δ_M` (equivalently, coefficients on the simple roots
    /// outside `theta` of any root projecting onto it).
    pub coefficients: Vec<i64>,
    /// The projection itself, in ambient coordinates.
    pub vector: Vector,
    /// An absolute root whose projection is exactly this relative root.
    pub representative: usize,
}

impl RelativeRoot {
    pub fn is_positive(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coefficients.iter().sum()
    }
}

/// A standard Levi subgroup together with its derived relative data.
#[derive(Debug, Clone)]
pub struct LeviDatum<'r> {
    rs: &'r RootSystem,
    theta: Vec<usize>,
    theta_roots: Vec<usize>,
    complement: Vec<usize>,
    in_levi: Vec<bool>,
    a_m_star: Vec<Vector>,
    weights: Vec<Vector>,
    relative: Vec<RelativeRoot>,
    rel_index: BTreeMap<Vec<i64>, usize>,
    rel_negation: Vec<usize>,
    root_class: Vec<Option<(usize, Rational)>>,
    delta_m: Vec<usize>,
    w0_levi: WeylElement,
    reflections: Vec<WeylElement>,
    in_phi0: Vec<bool>,
    phi_m0: Vec<usize>,
    delta_m0: Vec<usize>,
    small_space: Vec<Vector>,
}

/// Build the Levi datum for `theta` (positions into the simple roots).
pub fn make_levi<'r>(rs: &'r RootSystem, theta: &[usize]) -> Result<LeviDatum<'r>> {
    LeviDatum::new(rs, theta)
}

impl<'r> LeviDatum<'r> {
    pub fn new(rs: &'r RootSystem, theta: &[usize]) -> Result<Self> {
        let n = rs.rank();
        let mut theta: Vec<usize> = theta.to_vec();
        theta.sort_unstable();
        theta.dedup();
        if let Some(&bad) = theta.iter().find(|&&k| k >= n) {
            return Err(Error::InvalidLevi(format!(
                "simple root index {bad} out of range for {} (rank {n})",
                rs.cartan_type()
            )));
        }
        let complement: Vec<usize> = (0..n).filter(|k| !theta.contains(k)).collect();
        let theta_roots: Vec<usize> = {
            let mut v: Vec<usize> = theta.iter().map(|&k| rs.simple_roots()[k]).collect();
            v.sort_unstable();
            v
        };
        let in_levi: Vec<bool> = (0..rs.num_roots())
            .map(|i| complement.iter().all(|&k| rs.coefficients(i)[k] == 0))
            .collect();

        // Projections of the simple roots outside theta: a basis of a_M*.
        let gram: Vec<Vector> = theta_roots
            .iter()
            .map(|&a| theta_roots.iter().map(|&b| rs.inner(a, b)).collect())
            .collect();
        let project = |v: &Vector| -> Vector {
            if theta_roots.is_empty() {
                return v.clone();
            }
            let rhs: Vector = theta_roots.iter().map(|&a| dot(v, rs.root(a))).collect();
            let c = linalg::solve(&gram, &rhs).expect("simple roots are independent");
            let levi_part: Vec<Vector> = theta_roots.iter().map(|&a| rs.root(a).clone()).collect();
            linalg::sub(v, &linalg::combine(&c, &levi_part, rs.ambient_dim()))
        };
        let a_m_star: Vec<Vector> = complement
            .iter()
            .map(|&k| project(rs.root(rs.simple_roots()[k])))
            .collect();

        let key_of = |i: usize| -> Vec<i64> { complement.iter().map(|&k| rs.coefficients(i)[k]).collect() };
        let mut projections: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
        for i in 0..rs.num_roots() {
            if !in_levi[i] {
                projections.entry(key_of(i)).or_insert(i);
            }
        }
        // On each ray keep the projection with the smallest multiple of the
        // primitive coefficient vector.
        let mut shortest: BTreeMap<Vec<i64>, (i64, usize)> = BTreeMap::new();
        for (k, &rep) in &projections {
            let (ray, m) = primitive(k);
            let slot = shortest.entry(ray).or_insert((m, rep));
            if m < slot.0 {
                *slot = (m, rep);
            }
        }
        // Canonical order: height, then coefficients in decreasing lex order,
        // so that Δ_M comes out in the order of the complement.
        let mut kept: Vec<(i64, Reverse<Vec<i64>>, usize)> = shortest
            .iter()
            .map(|(ray, &(m, rep))| {
                let k: Vec<i64> = ray.iter().map(|c| c * m).collect();
                (k.iter().sum(), Reverse(k), rep)
            })
            .collect();
        kept.sort();
        let relative: Vec<RelativeRoot> = kept
            .into_iter()
            .map(|(_, Reverse(coefficients), representative)| {
                let c: Vec<Rational> = coefficients.iter().map(|&x| int(x)).collect();
                let vector = linalg::combine(&c, &a_m_star, rs.ambient_dim());
                RelativeRoot {
                    coefficients,
                    vector,
                    representative,
                }
            })
            .collect();
        let rel_index: BTreeMap<Vec<i64>, usize> = relative
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coefficients.clone(), i))
            .collect();
        let rel_negation: Vec<usize> = relative
            .iter()
            .map(|r| {
                let neg: Vec<i64> = r.coefficients.iter().map(|c| -c).collect();
                rel_index[&neg]
            })
            .collect();
        let mut root_class = vec![None; rs.num_roots()];
        for (i, slot) in root_class.iter_mut().enumerate() {
            if in_levi[i] {
                continue;
            }
            let k = key_of(i);
            let (ray, m) = primitive(&k);
            let (m0, _) = shortest[&ray];
            let r = ray.iter().map(|c| c * m0).collect::<Vec<i64>>();
            let r = rel_index
                .get(&r)
                .ok_or_else(|| Error::Invariant(format!("projection {k:?} has no reduced class")))?;
            *slot = Some((*r, linalg::frac(m, m0)));
        }
        let delta_m: Vec<usize> = complement
            .iter()
            .map(|&k| rs.simple_roots()[k])
            .map(|s| root_class[s].expect("simple root outside theta").0)
            .collect();

        // Dual basis to the coroots of Δ_M inside a_M*.
        let cartan: Vec<Vector> = a_m_star
            .iter()
            .map(|bk| a_m_star.iter().map(|bj| int(2) * dot(bk, bj) / dot(bj, bj)).collect())
            .collect();
        let weights: Vec<Vector> = match linalg::inverse(&cartan) {
            Some(x) => x
                .iter()
                .map(|row| linalg::combine(row, &a_m_star, rs.ambient_dim()))
                .collect(),
            None if a_m_star.is_empty() => Vec::new(),
            None => return Err(Error::Invariant("relative simple roots are dependent".into())),
        };

        let w0_levi = longest_element_of(rs, &theta_roots);
        let mut ld = LeviDatum {
            rs,
            theta,
            theta_roots,
            complement,
            in_levi,
            a_m_star,
            weights,
            relative,
            rel_index,
            rel_negation,
            root_class,
            delta_m,
            w0_levi,
            reflections: Vec::new(),
            in_phi0: Vec::new(),
            phi_m0: Vec::new(),
            delta_m0: Vec::new(),
            small_space: Vec::new(),
        };

        ld.reflections = (0..ld.relative.len()).map(|a| ld.corank_one_product(a)).collect();
        ld.in_phi0 = ld.reflections.iter().map(|w| ld.stabilizes_theta(w)).collect();
        ld.phi_m0 = (0..ld.relative.len()).filter(|&a| ld.in_phi0[a]).collect();
        let positive0: Vec<usize> = ld.phi_m0.iter().copied().filter(|&a| ld.is_positive(a)).collect();
        let mut delta_m0 = Vec::new();
        for &a in &positive0 {
            let perm = ld.relative_permutation(&ld.reflections[a])?;
            if perm[a] as usize != ld.rel_negation[a] {
                return Err(Error::Invariant(format!(
                    "relative reflection of {:?} does not negate it",
                    ld.relative[a].coefficients
                )));
            }
            if positive0
                .iter()
                .all(|&b| b == a || ld.is_positive(perm[b] as usize))
            {
                delta_m0.push(a);
            }
        }
        ld.delta_m0 = delta_m0;
        let phi0_vectors: Vec<Vector> = ld.phi_m0.iter().map(|&a| ld.relative[a].vector.clone()).collect();
        ld.small_space = linalg::echelon(&phi0_vectors).rows;
        Ok(ld)
    }

    pub fn root_system(&self) -> &'r RootSystem {
        self.rs
    }

    /// Positions (into the simple roots) making up `theta`.
    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// Positions of the simple roots outside `theta`, in order; `Δ_M` follows
    /// this order.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    /// `ι = dim a_M*`.
    pub fn iota(&self) -> usize {
        self.complement.len()
    }

    /// Basis of `a_M*` made of the projections of the simple roots outside
    /// `theta`.
    pub fn a_m_star(&self) -> &[Vector] {
        &self.a_m_star
    }

    /// Basis of `a_M*` dual to the coroots of `Δ_M`. Coordinates on this
    /// basis are the pairings with the relative simple coroots.
    pub fn weight_basis(&self) -> &[Vector] {
        &self.weights
    }

    /// Basis (echelon form) of the span of `Φ_M⁰`.
    pub fn small_space(&self) -> &[Vector] {
        &self.small_space
    }

    /// Whether absolute root `i` belongs to `Φ_θ`.
    pub fn in_levi(&self, i: usize) -> bool {
        self.in_levi[i]
    }

    pub fn relative_roots(&self) -> &[RelativeRoot] {
        &self.relative
    }

    pub fn relative_root(&self, a: usize) -> &RelativeRoot {
        &self.relative[a]
    }

    pub fn num_relative(&self) -> usize {
        self.relative.len()
    }

    pub fn is_positive(&self, a: usize) -> bool {
        self.relative[a].is_positive()
    }

    pub fn negation(&self, a: usize) -> usize {
        self.rel_negation[a]
    }

    pub fn find_by_coefficients(&self, c: &[i64]) -> Option<usize> {
        self.rel_index.get(c).copied()
    }

    /// Locate a relative root from its ambient vector.
    pub fn find_by_vector(&self, v: &[Rational]) -> Option<usize> {
        self.relative.iter().position(|r| r.vector.as_slice() == v)
    }

    /// Class of absolute root `i`: the relative root whose positive multiple
    /// it projects to, with the multiplier, or `None` for roots of the Levi.
    pub fn class_of(&self, i: usize) -> Option<(usize, Rational)> {
        self.root_class[i]
    }

    /// `Δ_M`, in the order of [`LeviDatum::complement`].
    pub fn delta_m(&self) -> &[usize] {
        &self.delta_m
    }

    pub fn phi_m0(&self) -> &[usize] {
        &self.phi_m0
    }

    pub fn in_phi_m0(&self, a: usize) -> bool {
        self.in_phi0[a]
    }

    /// `(Φ_M⁰)⁺` in canonical order.
    pub fn positive_phi_m0(&self) -> Vec<usize> {
        self.phi_m0.iter().copied().filter(|&a| self.is_positive(a)).collect()
    }

    pub fn delta_m0(&self) -> &[usize] {
        &self.delta_m0
    }

    pub fn inner(&self, a: usize, b: usize) -> Rational {
        dot(&self.relative[a].vector, &self.relative[b].vector)
    }

    /// Coroot `2α/(α,α)` of relative root `a`, inside `a_M*`.
    pub fn coroot(&self, a: usize) -> Vector {
        crate::cartan::coroot(&self.relative[a].vector)
    }

    /// `<x, α^vee>` for `x` in `a_M*`.
    pub fn pair(&self, x: &[Rational], a: usize) -> Rational {
        let v = &self.relative[a].vector;
        int(2) * dot(x, v) / dot(v, v)
    }

    /// Coordinates of `x ∈ a_M*` on [`LeviDatum::weight_basis`].
    pub fn weight_coordinates(&self, x: &[Rational]) -> Vector {
        self.delta_m.iter().map(|&b| self.pair(x, b)).collect()
    }

    /// The vector of `a_M*` with the given weight-basis coordinates.
    pub fn from_weight_coordinates(&self, c: &[Rational]) -> Result<Vector> {
        if c.len() != self.iota() {
            return Err(Error::OmegaDimension {
                got: c.len(),
                expected: self.iota(),
            });
        }
        Ok(linalg::combine(c, &self.weights, self.rs.ambient_dim()))
    }

    /// Whether `x` is orthogonal to `theta` and lies in the root span.
    pub fn in_a_m_star(&self, x: &[Rational]) -> bool {
        self.theta_roots.iter().all(|&t| dot(x, self.rs.root(t)).is_zero())
            && linalg::in_span(&self.a_m_star, x)
    }

    pub fn stabilizes_theta(&self, w: &WeylElement) -> bool {
        let mut image: Vec<usize> = self.theta_roots.iter().map(|&t| w.apply(t)).collect();
        image.sort_unstable();
        image == self.theta_roots
    }

    /// Longest element of the Levi, `w₀^M`.
    pub fn w0_levi(&self) -> &WeylElement {
        &self.w0_levi
    }

    /// Root indices of the co-rank one Levi `M_α`: the roots of `theta`
    /// together with every root whose projection lies on the line of `α`.
    pub fn corank_one_roots(&self, a: usize) -> Vec<usize> {
        let target = &self.relative[a].coefficients;
        (0..self.rs.num_roots())
            .filter(|&i| {
                self.in_levi[i] || {
                    let k: Vec<i64> = self.complement.iter().map(|&c| self.rs.coefficients(i)[c]).collect();
                    proportional(&k, target)
                }
            })
            .collect()
    }

    /// `w₀^{M_α} w₀^M`, whether or not it normalizes the Levi.
    pub fn corank_one_product(&self, a: usize) -> WeylElement {
        let roots = self.corank_one_roots(a);
        let positive: Vec<usize> = roots.iter().copied().filter(|&i| self.rs.is_positive(i)).collect();
        // Simple roots of the subsystem are its indecomposable positive roots.
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&g| {
                !positive.iter().any(|&b| {
                    b != g
                        && self
                            .rs
                            .find(&linalg::sub(self.rs.root(g), self.rs.root(b)))
                            .is_some_and(|d| positive.contains(&d))
                })
            })
            .collect();
        longest_element_of(self.rs, &simple).compose(&self.w0_levi)
    }

    /// The relative reflection `ω_α`, or `None` when it does not lie in `W_M`.
    pub fn relative_reflection(&self, a: usize) -> Result<Option<&WeylElement>> {
        if a >= self.relative.len() {
            return Err(Error::NotRelativeRoot(format!(
                "index {a} (there are {} relative roots)",
                self.relative.len()
            )));
        }
        Ok(self.in_phi0[a].then_some(&self.reflections[a]))
    }

    /// Permutation of the relative roots induced by `w ∈ W_M`.
    pub fn relative_permutation(&self, w: &WeylElement) -> Result<Vec<u16>> {
        self.relative
            .iter()
            .map(|r| match self.root_class[w.apply(r.representative)] {
                Some((b, m)) if m == int(1) => Ok(b as u16),
                _ => Err(Error::Invariant(
                    "element does not normalize the Levi: relative roots are not permuted".into(),
                )),
            })
            .collect()
    }
}

/// Split a nonzero integer vector as `m * ray` with `ray` primitive, `m > 0`.
fn primitive(k: &[i64]) -> (Vec<i64>, i64) {
    use num_integer::Integer;
    let g = k.iter().fold(0i64, |acc, x| acc.gcd(x));
    (k.iter().map(|c| c / g).collect(), g)
}

fn proportional(k: &[i64], target: &[i64]) -> bool {
    if k.iter().all(|&x| x == 0) {
        return false;
    }
    // k = c * target for some rational c: all 2x2 minors vanish and the
    // supports agree.
    k.iter().zip(target).all(|(&x, &t)| (x == 0) == (t == 0))
        && (0..k.len()).all(|i| (0..k.len()).all(|j| k[i] * target[j] == k[j] * target[i]))
}

/// `Φ_M⁰` and `Δ_M⁰` as relative root indices.
pub fn phi_m0(ld: &LeviDatum<'_>) -> (Vec<usize>, Vec<usize>) {
    (ld.phi_m0.clone(), ld.delta_m0.clone())
}

/// The relative Weyl group `W_M` with its splitting `W_M = W_M⁰ ⋊ W_M¹`.
#[derive(Debug, Clone)]
pub struct RelativeWeylGroup {
    elements: Vec<WeylElement>,
    words: Vec<Vec<u8>>,
    rel_perms: Vec<Vec<u16>>,
    inverse: Vec<usize>,
    index: BTreeMap<Vec<u16>, usize>,
    simple_images_of: Vec<Vec<u16>>,
    simple_reflections: Vec<usize>,
    small: Vec<usize>,
    small_words: Vec<Vec<usize>>,
    small_position: Vec<Option<usize>>,
    complement: Vec<usize>,
    in_complement: Vec<bool>,
    decomposition: Vec<(usize, usize)>,
}

/// Filter `W` down to the stabilizer of `theta` and split it.
pub fn relative_weyl_group(ld: &LeviDatum<'_>, weyl: &WeylGroup) -> Result<RelativeWeylGroup> {
    RelativeWeylGroup::new(ld, weyl)
}

impl RelativeWeylGroup {
    pub fn new(ld: &LeviDatum<'_>, weyl: &WeylGroup) -> Result<Self> {
        let rs = ld.rs;
        let mut elements = Vec::new();
        let mut words = Vec::new();
        for (i, w) in weyl.elements().iter().enumerate() {
            if ld.stabilizes_theta(w) {
                elements.push(w.clone());
                words.push(weyl.word(i).to_vec());
            }
        }
        if !elements.first().is_some_and(WeylElement::is_identity) {
            return Err(Error::Invariant("identity missing from W_M".into()));
        }
        let simple_images_of: Vec<Vec<u16>> = elements.iter().map(|w| w.simple_images(rs)).collect();
        let index: BTreeMap<Vec<u16>, usize> = simple_images_of
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let rel_perms = elements
            .iter()
            .map(|w| ld.relative_permutation(w))
            .collect::<Result<Vec<_>>>()?;
        let mut g = RelativeWeylGroup {
            elements,
            words,
            rel_perms,
            inverse: Vec::new(),
            index,
            simple_images_of,
            simple_reflections: Vec::new(),
            small: Vec::new(),
            small_words: Vec::new(),
            small_position: Vec::new(),
            complement: Vec::new(),
            in_complement: Vec::new(),
            decomposition: Vec::new(),
        };
        g.inverse = (0..g.len())
            .map(|i| g.lookup(&g.elements[i].inverse()))
            .collect::<Result<Vec<_>>>()?;
        g.simple_reflections = ld
            .delta_m0
            .iter()
            .map(|&a| g.lookup(&ld.reflections[a]))
            .collect::<Result<Vec<_>>>()?;

        // W_M⁰: closure of the simple relative reflections, with words.
        let mut small_position = vec![None; g.len()];
        small_position[0] = Some(0);
        let mut small = vec![0usize];
        let mut small_words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut head = 0;
        while head < small.len() {
            for (k, &s) in g.simple_reflections.iter().enumerate() {
                let next = g.product(small[head], s);
                if small_position[next].is_none() {
                    small_position[next] = Some(small.len());
                    let mut word = small_words[head].clone();
                    word.push(k);
                    small.push(next);
                    small_words.push(word);
                }
            }
            head += 1;
        }
        g.small = small;
        g.small_words = small_words;
        g.small_position = small_position;

        let positive0 = ld.positive_phi_m0();
        g.in_complement = g
            .rel_perms
            .iter()
            .map(|p| positive0.iter().all(|&a| ld.is_positive(p[a] as usize)))
            .collect();
        g.complement = (0..g.len()).filter(|&i| g.in_complement[i]).collect();
        g.decomposition = (0..g.len())
            .map(|w| decompose_element(ld, &g, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(g)
    }

    fn lookup(&self, w: &WeylElement) -> Result<usize> {
        // The identity's simple images are the simple roots themselves.
        let key: Vec<u16> = self.simple_images_of[0]
            .iter()
            .map(|&s| w.apply(s as usize) as u16)
            .collect();
        self.index
            .get(&key)
            .copied()
            .ok_or_else(|| Error::Invariant("element expected in W_M is missing".into()))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &WeylElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    /// Reduced word of element `i` in the absolute simple reflections.
    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Index of the product `element(i) ∘ element(j)`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        let wi = &self.elements[i];
        let key: Vec<u16> = self.simple_images_of[j]
            .iter()
            .map(|&s| wi.apply(s as usize) as u16)
            .collect();
        self.index[&key]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.lookup(w).ok()
    }

    /// Image of relative root `a` under element `i`.
    pub fn act(&self, i: usize, a: usize) -> usize {
        self.rel_perms[i][a] as usize
    }

    pub fn relative_permutation(&self, i: usize) -> &[u16] {
        &self.rel_perms[i]
    }

    /// `W_M⁰` as indices into `W_M`, in breadth-first order.
    pub fn small(&self) -> &[usize] {
        &self.small
    }

    pub fn in_small(&self, i: usize) -> bool {
        self.small_position[i].is_some()
    }

    /// Word in the simple relative reflections (positions into `Δ_M⁰`) for
    /// an element of `W_M⁰`.
    pub fn small_word(&self, i: usize) -> Option<&[usize]> {
        self.small_position[i].map(|p| self.small_words[p].as_slice())
    }

    /// `W_M¹` as indices into `W_M`.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn in_complement(&self, i: usize) -> bool {
        self.in_complement[i]
    }

    /// Indices in `W_M` of the simple relative reflections, in `Δ_M⁰` order.
    pub fn simple_reflections(&self) -> &[usize] {
        &self.simple_reflections
    }

    /// `(w⁰, w¹)` with `w = w⁰ w¹`.
    pub fn decomposition(&self, i: usize) -> (usize, usize) {
        self.decomposition[i]
    }
}

/// Split `w ∈ W_M` as `w⁰ w¹` by peeling off simple relative reflections on
/// the left until what remains keeps `(Φ_M⁰)⁺` positive.
pub fn decompose_element(ld: &LeviDatum<'_>, g: &RelativeWeylGroup, w: usize) -> Result<(usize, usize)> {
    let mut cur = w;
    let mut acc = g.identity();
    let bound = ld.positive_phi_m0().len();
    for _ in 0..=bound {
        let inv = g.inverse(cur);
        let descent = ld
            .delta_m0
            .iter()
            .position(|&b| !ld.is_positive(g.act(inv, b)));
        match descent {
            None => {
                if !g.in_complement(cur) || !g.in_small(acc) {
                    break;
                }
                return Ok((acc, cur));
            }
            Some(k) => {
                let s = g.simple_reflections[k];
                cur = g.product(s, cur);
                acc = g.product(acc, s);
            }
        }
    }
    Err(Error::Invariant(format!(
        "descent failed to split element {w} of W_M into W_M⁰ · W_M¹"
    )))
}

/// The full table `w ↦ (w⁰, w¹)`.
pub fn decompose_w_m(ld: &LeviDatum<'_>, g: &RelativeWeylGroup) -> Result<Vec<(usize, usize)>> {
    (0..g.len()).map(|w| decompose_element(ld, g, w)).collect()
}
