//! Relative chambers of `Φ_M⁰` and the components cut out by a wall set `S`.
//!
//! Chambers are indexed by `W_M⁰`: the chamber of `w⁰` contains the point
//! `w⁰·p₀`, where `p₀` is the sum of `(Φ_M⁰)⁺`. An element `w` of `W_M`
//! lies on the positive side of the wall of `α` exactly when `w⁻¹·α` is
//! positive, so every separation test is a positivity test on a root.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::levi::{LeviDatum, RelativeWeylGroup};
use crate::linalg::{self, dot, Vector};

/// Side of a wall. `Plus` sorts first, so the all-`Plus` component gets id 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(positive: bool) -> Sign {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Index in `W_M` of the element of `W_M⁰` owning the chamber.
    pub owner: usize,
    pub interior_point: Vector,
    /// Signs on `(Φ_M⁰)⁺`, in canonical order.
    pub signs: Vec<Sign>,
}

/// A set of walls, given by positive roots of `Φ_M⁰` (relative root indices,
/// sorted). Each wall is the kernel of the corresponding coroot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WallSet {
    roots: Vec<usize>,
}

impl WallSet {
    pub fn empty() -> Self {
        WallSet::default()
    }

    pub fn new(ld: &LeviDatum<'_>, roots: &[usize]) -> Result<Self> {
        let mut roots = roots.to_vec();
        roots.sort_unstable();
        roots.dedup();
        for &a in &roots {
            if a >= ld.num_relative() || !ld.in_phi_m0(a) || !ld.is_positive(a) {
                return Err(Error::InvalidWallSet(format!(
                    "relative root {a} is not a positive root of Φ_M⁰"
                )));
            }
        }
        Ok(WallSet { roots })
    }

    /// Build from coroot vectors in `a_M*` (ambient coordinates).
    pub fn from_coroots(ld: &LeviDatum<'_>, coroots: &[Vector]) -> Result<Self> {
        let positive = ld.positive_phi_m0();
        let roots = coroots
            .iter()
            .map(|c| {
                positive
                    .iter()
                    .copied()
                    .find(|&a| &ld.coroot(a) == c)
                    .ok_or_else(|| {
                        Error::InvalidWallSet(format!(
                            "{} is not the coroot of a positive root of Φ_M⁰",
                            fmt_vector(&ld.weight_coordinates(c))
                        ))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        WallSet::new(ld, &roots)
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn coroots(&self, ld: &LeviDatum<'_>) -> Vec<Vector> {
        self.roots.iter().map(|&a| ld.coroot(a)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub id: usize,
    /// Signs on the walls of `S`, in wall-set order.
    pub sign_vector: Vec<Sign>,
    /// Chamber indices (positions in [`Arrangement::chambers`]).
    pub chambers: Vec<usize>,
}

impl Component {
    pub fn is_positive(&self) -> bool {
        self.sign_vector.iter().all(|&s| s == Sign::Plus)
    }
}

/// Jer/Jim split of `W_M` for a pair of chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub jer: Vec<usize>,
    pub jim: Vec<usize>,
}

/// Which right descent to strip first when building a reduced word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Descent {
    First,
    Last,
}

/// The relative chamber structure of a Levi datum.
#[derive(Debug, Clone)]
pub struct Arrangement<'a> {
    ld: &'a LeviDatum<'a>,
    g: &'a RelativeWeylGroup,
    positive: Vec<usize>,
    p0: Vector,
    chambers: Vec<Chamber>,
    chamber_of: Vec<usize>,
}

/// Enumerate the chambers of `Φ_M⁰`, one per element of `W_M⁰`.
pub fn enumerate_chambers<'a>(ld: &'a LeviDatum<'a>, g: &'a RelativeWeylGroup) -> Result<Arrangement<'a>> {
    Arrangement::new(ld, g)
}

impl<'a> Arrangement<'a> {
    pub fn new(ld: &'a LeviDatum<'a>, g: &'a RelativeWeylGroup) -> Result<Self> {
        let dim = ld.root_system().ambient_dim();
        let positive = ld.positive_phi_m0();
        let p0 = positive
            .iter()
            .fold(linalg::zeros(dim), |acc, &a| linalg::add(&acc, &ld.relative_root(a).vector));
        let mut chambers = Vec::with_capacity(g.small().len());
        for &w in g.small() {
            let point = positive.iter().fold(linalg::zeros(dim), |acc, &a| {
                linalg::add(&acc, &ld.relative_root(g.act(w, a)).vector)
            });
            let mut signs = Vec::with_capacity(positive.len());
            for &a in &positive {
                let v = dot(&point, &ld.relative_root(a).vector);
                if v.is_zero() {
                    return Err(Error::Invariant(format!(
                        "chamber point of element {w} lies on the wall of relative root {a}"
                    )));
                }
                let s = Sign::of(v.is_positive());
                if s != Sign::of(ld.is_positive(g.act(g.inverse(w), a))) {
                    return Err(Error::Invariant(format!(
                        "exact and combinatorial signs disagree for element {w} on relative root {a}"
                    )));
                }
                signs.push(s);
            }
            chambers.push(Chamber {
                owner: w,
                interior_point: point,
                signs,
            });
        }
        let position: BTreeMap<usize, usize> = g.small().iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let chamber_of = (0..g.len()).map(|w| position[&g.decomposition(w).0]).collect();
        Ok(Arrangement {
            ld,
            g,
            positive,
            p0,
            chambers,
            chamber_of,
        })
    }

    pub fn levi(&self) -> &'a LeviDatum<'a> {
        self.ld
    }

    pub fn group(&self) -> &'a RelativeWeylGroup {
        self.g
    }

    /// `p₀ = Σ (Φ_M⁰)⁺`.
    pub fn base_point(&self) -> &Vector {
        &self.p0
    }

    /// `(Φ_M⁰)⁺`, the order used by [`Chamber::signs`].
    pub fn positive_roots(&self) -> &[usize] {
        &self.positive
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    /// Chamber containing `w·p₀` for `w ∈ W_M`.
    pub fn chamber_of(&self, w: usize) -> usize {
        self.chamber_of[w]
    }

    /// Side of the wall of `a ∈ Φ_M⁰` on which `w·C_M⁺` lies.
    pub fn sign(&self, w: usize, a: usize) -> Sign {
        Sign::of(self.ld.is_positive(self.g.act(self.g.inverse(w), a)))
    }

    pub fn sign_vector(&self, w: usize, walls: &WallSet) -> Vec<Sign> {
        walls.roots().iter().map(|&a| self.sign(w, a)).collect()
    }

    /// Group the chambers by their signs on `walls`.
    pub fn components(&self, walls: &WallSet) -> Vec<Component> {
        let mut groups: BTreeMap<Vec<Sign>, Vec<usize>> = BTreeMap::new();
        for (c, ch) in self.chambers.iter().enumerate() {
            groups.entry(self.sign_vector(ch.owner, walls)).or_default().push(c);
        }
        groups
            .into_iter()
            .enumerate()
            .map(|(id, (sign_vector, chambers))| Component {
                id,
                sign_vector,
                chambers,
            })
            .collect()
    }

    /// `{α ∈ (Φ_M⁰)⁺ : (w⁻¹w′)·α < 0}` for `w, w′ ∈ W_M⁰`.
    pub fn inversion_set(&self, w: usize, w2: usize) -> Vec<usize> {
        let u = self.g.product(self.g.inverse(w), w2);
        self.positive
            .iter()
            .copied()
            .filter(|&a| !self.ld.is_positive(self.g.act(u, a)))
            .collect()
    }

    /// Reduced word for `w⁻¹w′` in the simple relative reflections
    /// (positions into `Δ_M⁰`), stripping the first right descent each time.
    pub fn minimal_gallery(&self, w: usize, w2: usize) -> Vec<usize> {
        self.minimal_gallery_with(w, w2, Descent::First)
    }

    pub fn minimal_gallery_with(&self, w: usize, w2: usize, choice: Descent) -> Vec<usize> {
        let delta0 = self.ld.delta_m0();
        let mut u = self.g.product(self.g.inverse(w), w2);
        let mut word = Vec::new();
        loop {
            let mut descents = (0..delta0.len()).filter(|&k| !self.ld.is_positive(self.g.act(u, delta0[k])));
            let k = match choice {
                Descent::First => descents.next(),
                Descent::Last => descents.last(),
            };
            let Some(k) = k else { break };
            word.push(k);
            u = self.g.product(u, self.g.simple_reflections()[k]);
        }
        word.reverse();
        word
    }

    /// Element reached from `w` by following `word`.
    pub fn follow(&self, w: usize, word: &[usize]) -> usize {
        word.iter()
            .fold(w, |cur, &k| self.g.product(cur, self.g.simple_reflections()[k]))
    }

    /// Walls crossed (as positive roots) walking from `w·C_M⁺` along `word`.
    pub fn gallery_walls(&self, w: usize, word: &[usize]) -> Vec<usize> {
        let delta0 = self.ld.delta_m0();
        let mut cur = w;
        let mut walls = Vec::with_capacity(word.len());
        for &k in word {
            let a = self.g.act(cur, delta0[k]);
            walls.push(if self.ld.is_positive(a) { a } else { self.ld.negation(a) });
            cur = self.g.product(cur, self.g.simple_reflections()[k]);
        }
        walls
    }

    /// Closed-form Jer/Jim: `w″` is in Jer when some wall of `walls`
    /// separates `w·C_M⁺` from `w′·C_M⁺` and has `w″·C_M⁺` on the side of `w`.
    pub fn kernel_image_partition(&self, w: usize, w2: usize, walls: &WallSet) -> Partition {
        let separating: Vec<(usize, Sign)> = walls
            .roots()
            .iter()
            .filter_map(|&a| {
                let s = self.sign(w, a);
                (s != self.sign(w2, a)).then_some((a, s))
            })
            .collect();
        let (jer, jim) = (0..self.g.len()).partition(|&x| separating.iter().any(|&(a, s)| self.sign(x, a) == s));
        Partition { jer, jim }
    }

    /// Jim computed by intersecting the one-step images along a gallery.
    pub fn image_along_gallery(&self, w: usize, word: &[usize], walls: &WallSet) -> Vec<usize> {
        let mut keep: Vec<bool> = alloc::vec![true; self.g.len()];
        let mut cur = w;
        for &k in word {
            let next = self.g.product(cur, self.g.simple_reflections()[k]);
            let step = self.kernel_image_partition(cur, next, walls);
            for &x in &step.jer {
                keep[x] = false;
            }
            cur = next;
        }
        (0..self.g.len()).filter(|&x| keep[x]).collect()
    }
}

/// The all-positive component; it always exists and has id 0.
pub fn gamma_plus(components: &[Component]) -> &Component {
    components
        .iter()
        .find(|c| c.is_positive())
        .expect("the dominant chamber realizes the all-positive sign vector")
}

pub(crate) fn fmt_vector(v: &[crate::linalg::Rational]) -> alloc::string::String {
    let parts: Vec<alloc::string::String> = v.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", parts.join(", "))
}
