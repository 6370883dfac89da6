//! Reference computations for the acceptance suite, written directly from the
//! definitions and sharing no code with the Levi, chamber or pole modules.
//!
//! * `W_M` is the set of `w ∈ W` with `w(θ) = θ`, cross-checked against
//!   `|N_W(Φ_θ)| / |W_θ|`.
//! * `a_M*` is spanned by the projections of `α_k` (`k ∉ θ`) orthogonally to
//!   `θ`, and `y ∈ a_M*` pairs to 1 with each of them.
//! * `W_M⁰` is generated by the elements of `W_M` acting on `a_M*` as a
//!   reflection; their `-1` eigenvectors, oriented by `y`, are the positive
//!   rays of `Φ_M⁰`.
//! * `W_M¹` is the set of elements keeping every positive ray positive.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use rodier_core::cartan::DEFAULT_ENUMERATION_CAP;
use rodier_core::{CartanType, Rational, RootSystem, WeylElement, WeylGroup};

pub type V = Vec<Rational>;
pub type Key = Vec<u16>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> V {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn axpy(c: Rational, x: &[Rational], y: &mut [Rational]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

/// Row echelon form by plain Gaussian elimination; returns the nonzero rows.
fn eliminate(rows: &[V]) -> Vec<V> {
    let mut m: Vec<V> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c] / pivot;
                let row = m[r].clone();
                axpy(-f, &row, &mut m[i]);
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

pub fn rank(rows: &[V]) -> usize {
    eliminate(rows).len()
}

/// Solve the square system `a x = b` (rows of `a`), if uniquely solvable.
pub fn solve(a: &[V], b: &[Rational]) -> Option<V> {
    let n = a.len();
    let aug: Vec<V> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| r.iter().copied().chain([bi]).collect())
        .collect();
    let e = eliminate(&aug);
    if e.len() != n || (0..n).any(|i| e[i][i].is_zero()) {
        return None;
    }
    Some((0..n).map(|i| e[i][n] / e[i][i]).collect())
}

/// The vector scaled so that its first nonzero entry is `±1`, keeping sign.
pub fn ray(v: &[Rational]) -> V {
    let lead = v.iter().find(|x| !x.is_zero()).copied().unwrap_or_else(Rational::one);
    v.iter().map(|x| x / lead.abs()).collect()
}

/// Smallest integral vector on the same ray.
pub fn primitive(v: &[Rational]) -> Vec<i128> {
    use num_integer::Integer;
    let l = v.iter().fold(1i128, |l, x| l.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (x * Rational::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i128, |g, x| g.gcd(x));
    ints.iter().map(|x| x / g.max(1)).collect()
}

pub struct Absolute {
    pub t: CartanType,
    pub rs: RootSystem,
    pub weyl: WeylGroup,
    /// Gram matrix of the simple roots.
    gram: Vec<V>,
}

impl Absolute {
    pub fn new(t: &str) -> Self {
        let t: CartanType = t.parse().unwrap();
        let rs = RootSystem::new(t).unwrap();
        let weyl = WeylGroup::generate(&rs, DEFAULT_ENUMERATION_CAP).unwrap();
        let simple: Vec<V> = rs.simple_roots().iter().map(|&s| rs.root(s).clone()).collect();
        let gram = simple.iter().map(|a| simple.iter().map(|b| dot(a, b)).collect()).collect();
        Absolute { t, rs, weyl, gram }
    }

    pub fn simple(&self, k: usize) -> &V {
        self.rs.root(self.rs.simple_roots()[k])
    }

    /// Coordinates of a vector of the root span on the simple roots.
    pub fn coords(&self, v: &[Rational]) -> V {
        let rhs: V = (0..self.rs.rank()).map(|k| dot(v, self.simple(k))).collect();
        solve(&self.gram, &rhs).expect("simple roots are a basis")
    }

    /// `w·v`, for `v` given by its simple-root coordinates.
    pub fn act(&self, w: &WeylElement, c: &[Rational]) -> V {
        let mut out = vec![Rational::zero(); self.rs.ambient_dim()];
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                axpy(*ck, self.rs.root(w.apply(self.rs.simple_roots()[k])), &mut out);
            }
        }
        out
    }
}

pub struct LeviOracle {
    pub theta: Vec<usize>,
    pub complement: Vec<usize>,
    /// Projections of `α_k`, `k ∉ θ`.
    pub x: Vec<V>,
    pub y: V,
    pub w_m: Vec<WeylElement>,
    pub index: BTreeMap<Key, usize>,
    /// Indices into `w_m` of the elements acting as reflections on `a_M*`.
    pub reflections: Vec<usize>,
    /// Positive rays of `Φ_M⁰`, normalized by [`ray`].
    pub rays: Vec<V>,
    pub w0: BTreeSet<usize>,
    pub w1: BTreeSet<usize>,
}

fn key(w: &WeylElement) -> Key {
    w.perm().to_vec()
}

/// Orthogonal projection onto the complement of the span of `basis`.
pub fn project_away(v: &[Rational], basis: &[V]) -> V {
    if basis.is_empty() {
        return v.to_vec();
    }
    let gram: Vec<V> = basis.iter().map(|a| basis.iter().map(|b| dot(a, b)).collect()).collect();
    let rhs: V = basis.iter().map(|a| dot(v, a)).collect();
    let c = solve(&gram, &rhs).unwrap();
    let mut out = v.to_vec();
    for (ci, b) in c.iter().zip(basis) {
        axpy(-*ci, b, &mut out);
    }
    out
}

impl LeviOracle {
    pub fn new(a: &Absolute, theta: &[usize]) -> Self {
        let rs = &a.rs;
        let n = rs.rank();
        let complement: Vec<usize> = (0..n).filter(|k| !theta.contains(k)).collect();
        let theta_vecs: Vec<V> = theta.iter().map(|&k| a.simple(k).clone()).collect();
        let x: Vec<V> = complement.iter().map(|&k| project_away(a.simple(k), &theta_vecs)).collect();
        let y = if x.is_empty() {
            vec![Rational::zero(); rs.ambient_dim()]
        } else {
            let gram: Vec<V> = x.iter().map(|p| x.iter().map(|q| dot(p, q)).collect()).collect();
            let c = solve(&gram, &vec![Rational::one(); x.len()]).unwrap();
            let mut y = vec![Rational::zero(); rs.ambient_dim()];
            for (ci, xi) in c.iter().zip(&x) {
                axpy(*ci, xi, &mut y);
            }
            y
        };

        let theta_idx: BTreeSet<usize> = theta.iter().map(|&k| rs.simple_roots()[k]).collect();
        let w_m: Vec<WeylElement> = a
            .weyl
            .elements()
            .iter()
            .filter(|w| theta_idx.iter().map(|&t| w.apply(t)).collect::<BTreeSet<_>>() == theta_idx)
            .cloned()
            .collect();
        // Cross-check: |W_M| · |W_θ| = |N_W(Φ_θ)|.
        let phi_theta: BTreeSet<usize> = (0..rs.num_roots())
            .filter(|&i| {
                let c = rs.coefficients(i);
                (0..n).all(|k| c[k] == 0 || theta.contains(&k))
            })
            .collect();
        let normalizer = a
            .weyl
            .elements()
            .iter()
            .filter(|w| phi_theta.iter().map(|&i| w.apply(i)).collect::<BTreeSet<_>>() == phi_theta)
            .count();
        // Any reduced word of an element of W_θ uses only letters of θ.
        let w_theta = (0..a.weyl.order())
            .filter(|&i| a.weyl.word(i).iter().all(|&k| theta.contains(&(k as usize))))
            .count();
        assert_eq!(normalizer, w_m.len() * w_theta, "{} {theta:?}", a.t);
        let index: BTreeMap<Key, usize> = w_m.iter().enumerate().map(|(i, w)| (key(w), i)).collect();

        let xc: Vec<V> = x.iter().map(|v| a.coords(v)).collect();
        let mut reflections = Vec::new();
        let mut rays: Vec<V> = Vec::new();
        for (i, w) in w_m.iter().enumerate() {
            let d: Vec<V> = x.iter().zip(&xc).map(|(v, c)| sub(&a.act(w, c), v)).collect();
            if rank(&d) != 1 {
                continue;
            }
            reflections.push(i);
            let v = d.iter().find(|r| r.iter().any(|e| !e.is_zero())).unwrap();
            let mut r = ray(v);
            if dot(&y, &r).is_negative() {
                r.iter_mut().for_each(|e| *e = -*e);
            }
            if !rays.contains(&r) {
                rays.push(r);
            }
        }
        let mut oracle = LeviOracle {
            theta: theta.to_vec(),
            complement,
            x,
            y,
            w_m,
            index,
            reflections,
            rays,
            w0: BTreeSet::new(),
            w1: BTreeSet::new(),
        };
        oracle.w0 = oracle.closure(&oracle.reflections.clone());
        let yc = a.coords(&oracle.y);
        oracle.w1 = (0..oracle.w_m.len())
            .filter(|&i| {
                // (y, w·r) = (w⁻¹·y, r)
                let wy = a.act(&oracle.w_m[i].inverse(), &yc);
                oracle.rays.iter().all(|r| dot(&wy, r).is_positive())
            })
            .collect();
        oracle
    }

    pub fn identity(&self) -> usize {
        self.index[&(0..self.w_m[0].perm().len() as u16).collect::<Key>()]
    }

    pub fn product(&self, i: usize, j: usize) -> usize {
        self.index[&key(&self.w_m[i].compose(&self.w_m[j]))]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.index[&key(&self.w_m[i].inverse())]
    }

    pub fn lookup(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&key(w)).copied()
    }

    /// Subgroup of `W_M` generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let e = self.identity();
        let mut seen = BTreeSet::from([e]);
        let mut queue = VecDeque::from([e]);
        while let Some(u) = queue.pop_front() {
            for &s in gens {
                let v = self.product(u, s);
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Point `w·y` of the chamber of `w`.
    pub fn point(&self, a: &Absolute, i: usize) -> V {
        a.act(&self.w_m[i], &a.coords(&self.y))
    }

    /// Problems with `W_M = W_M⁰ ⋊ W_M¹`, empty when the splitting holds.
    pub fn splitting_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let e = self.identity();
        let meet: Vec<usize> = self.w0.intersection(&self.w1).copied().collect();
        if meet != [e] {
            out.push(format!("W_M⁰ ∩ W_M¹ = {meet:?}"));
        }
        for i in 0..self.w_m.len() {
            for &r in &self.reflections {
                let c = self.product(self.product(i, r), self.inverse(i));
                if !self.w0.contains(&c) {
                    out.push(format!("conjugate of reflection {r} by {i} leaves W_M⁰"));
                    return out;
                }
            }
        }
        let mut hit = vec![false; self.w_m.len()];
        for &u in &self.w0 {
            for &v in &self.w1 {
                let p = self.product(u, v);
                if std::mem::replace(&mut hit[p], true) {
                    out.push(format!("(u, v) ↦ uv not injective at {p}"));
                    return out;
                }
            }
        }
        if hit.iter().any(|h| !h) {
            out.push("(u, v) ↦ uv not surjective".into());
        }
        out
    }
}
