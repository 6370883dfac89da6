//! Reducibility walls from exponent and pole data.
//!
//! The inducing datum carries the real exponent `ω` (a dominant vector of
//! `a_M*`) and a pole location for each `W_M`-orbit of `Φ_M⁰`. A positive
//! root `α` of `Φ_M⁰` is a reducibility wall when `⟨ω, α∨⟩` equals the pole
//! of its orbit. The remaining operations check the regularity obstruction,
//! linear independence of the walls with a certificate, and run a seeded
//! randomized search for counterexamples to independence.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{fmt_vector, WallSet};
use crate::error::{Error, Result};
use crate::levi::{LeviDatum, RelativeWeylGroup};
use crate::linalg::{self, frac, Rational, Vector};

/// How the reducibility walls are specified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoleSpec {
    /// The walls themselves.
    Explicit(WallSet),
    /// Pole location for each `W_M`-orbit of `Φ_M⁰`, keyed by orbit id (see
    /// [`relative_orbits`]). Orbits without an entry have no pole.
    Orbits(BTreeMap<usize, Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducingDatum {
    /// The real exponent, in ambient coordinates. Optional only when the
    /// walls are given explicitly.
    pub omega: Option<Vector>,
    pub poles: PoleSpec,
    pub assume_regular: bool,
    pub assume_generic: bool,
}

/// `W_M`-orbits of `Φ_M⁰`, each sorted, ordered by smallest member.
pub fn relative_orbits(ld: &LeviDatum<'_>, g: &RelativeWeylGroup) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for &a in ld.phi_m0() {
        if seen.contains(&a) {
            continue;
        }
        let orbit: BTreeSet<usize> = (0..g.len()).map(|w| g.act(w, a)).collect();
        seen.extend(orbit.iter().copied());
        orbits.push(orbit.into_iter().collect());
    }
    orbits
}

/// Orbit id of each relative root of `Φ_M⁰` (`None` outside `Φ_M⁰`).
pub fn orbit_ids(ld: &LeviDatum<'_>, orbits: &[Vec<usize>]) -> Vec<Option<usize>> {
    let mut ids = vec![None; ld.num_relative()];
    for (k, orbit) in orbits.iter().enumerate() {
        for &a in orbit {
            ids[a] = Some(k);
        }
    }
    ids
}

/// Reject `ω` unless it lies in `a_M*` and pairs nonnegatively with `Δ_M`.
pub fn check_dominant(ld: &LeviDatum<'_>, omega: &[Rational]) -> Result<()> {
    if omega.len() != ld.root_system().ambient_dim() || !ld.in_a_m_star(omega) {
        return Err(Error::InvalidPoles("omega does not lie in a_M*".into()));
    }
    for &b in ld.delta_m() {
        let v = ld.pair(omega, b);
        if v.is_negative() {
            return Err(Error::NotDominant {
                root: fmt_vector(&ld.relative_root(b).vector),
                value: format!("{v}"),
            });
        }
    }
    Ok(())
}

/// `S = {α ∈ (Φ_M⁰)⁺ : |⟨ω, α∨⟩| = pole(orbit(α))}`.
pub fn derive_s(
    ld: &LeviDatum<'_>,
    g: &RelativeWeylGroup,
    omega: &[Rational],
    poles: &BTreeMap<usize, Rational>,
) -> Result<WallSet> {
    check_dominant(ld, omega)?;
    let orbits = relative_orbits(ld, g);
    for (&k, p) in poles {
        if k >= orbits.len() {
            return Err(Error::InvalidPoles(format!(
                "orbit{k} does not exist ({} orbits of Φ_M⁰)",
                orbits.len()
            )));
        }
        if !p.is_positive() {
            return Err(Error::InvalidPoles(format!("pole of orbit{k} must be positive, got {p}")));
        }
    }
    let walls = walls_unchecked(ld, &orbit_ids(ld, &orbits), omega, poles);
    WallSet::new(ld, &walls)
}

/// [`derive_s`] for a datum asserted regular: the walls must pass the
/// regularity check, and then at most `dim a_M*` of them can occur.
pub fn derive_regular_s(
    ld: &LeviDatum<'_>,
    g: &RelativeWeylGroup,
    omega: &[Rational],
    poles: &BTreeMap<usize, Rational>,
) -> Result<WallSet> {
    let walls = derive_s(ld, g, omega, poles)?;
    let closure = phi_s(ld, g, &walls)?;
    if let Some(&b) = closure.iter().find(|&&b| ld.pair(omega, b).is_zero()) {
        return Err(Error::InvalidPoles(format!(
            "omega pairs to zero with the coroot of {} in the closure of S, which is impossible for a regular datum",
            fmt_vector(&ld.weight_coordinates(&ld.relative_root(b).vector))
        )));
    }
    if walls.len() > ld.iota() {
        return Err(Error::Invariant(format!(
            "{} reducibility walls exceed dim a_M* = {}",
            walls.len(),
            ld.iota()
        )));
    }
    Ok(walls)
}

fn walls_unchecked(
    ld: &LeviDatum<'_>,
    ids: &[Option<usize>],
    omega: &[Rational],
    poles: &BTreeMap<usize, Rational>,
) -> Vec<usize> {
    ld.positive_phi_m0()
        .into_iter()
        .filter(|&a| {
            let pole = ids[a].and_then(|k| poles.get(&k));
            pole.is_some_and(|p| &ld.pair(omega, a).abs() == p)
        })
        .collect()
}

/// Indices in `W_M` of the group `W_S` generated by the reflections of `S`.
pub fn wall_group(ld: &LeviDatum<'_>, g: &RelativeWeylGroup, walls: &WallSet) -> Result<Vec<usize>> {
    let gens = walls
        .roots()
        .iter()
        .map(|&a| {
            let w = ld
                .relative_reflection(a)?
                .ok_or_else(|| Error::InvalidWallSet(format!("relative root {a} has no reflection in W_M")))?;
            g.index_of(w)
                .ok_or_else(|| Error::Invariant("relative reflection missing from W_M".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = BTreeSet::from([g.identity()]);
    let mut out = vec![g.identity()];
    let mut head = 0;
    while head < out.len() {
        for &s in &gens {
            let next = g.product(out[head], s);
            if seen.insert(next) {
                out.push(next);
            }
        }
        head += 1;
    }
    Ok(out)
}

/// `Φ_S = W_S·(S ∪ −S)`, sorted.
pub fn phi_s(ld: &LeviDatum<'_>, g: &RelativeWeylGroup, walls: &WallSet) -> Result<Vec<usize>> {
    let ws = wall_group(ld, g, walls)?;
    let mut out = BTreeSet::new();
    for &a in walls.roots() {
        for &w in &ws {
            out.insert(g.act(w, a));
            out.insert(g.act(w, ld.negation(a)));
        }
    }
    Ok(out.into_iter().collect())
}

/// True iff `⟨ω, β∨⟩ ≠ 0` for every `β ∈ Φ_S`.
pub fn check_regularity_cc(ld: &LeviDatum<'_>, omega: &[Rational], phi_s: &[usize]) -> bool {
    phi_s.iter().all(|&b| !ld.pair(omega, b).is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Reduced echelon basis of the span; its size equals the input size.
    Basis(Vec<Vector>),
    /// Coprime integer coefficients of a vanishing combination.
    Relation(Vector),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    pub certificate: Certificate,
}

/// Exact rank test for a family of vectors.
pub fn verify_linear_independence(vectors: &[Vector]) -> Independence {
    match linalg::vanishing_combination(vectors) {
        Some(c) => Independence {
            independent: false,
            certificate: Certificate::Relation(c),
        },
        None => Independence {
            independent: true,
            certificate: Certificate::Basis(linalg::echelon(vectors).rows),
        },
    }
}

/// Members of `S ∪ −S` on which `ω` pairs positively.
pub fn s_plus(ld: &LeviDatum<'_>, omega: &[Rational], walls: &WallSet) -> Vec<usize> {
    walls
        .roots()
        .iter()
        .filter_map(|&a| {
            let v = ld.pair(omega, a);
            if v.is_positive() {
                Some(a)
            } else if v.is_negative() {
                Some(ld.negation(a))
            } else {
                None
            }
        })
        .collect()
}

/// Same-length pairs in `S⁺` must pair non-positively. Returns the first
/// offending pair, if any.
pub fn obtuseness_violation(ld: &LeviDatum<'_>, splus: &[usize]) -> Option<(usize, usize)> {
    for (i, &a) in splus.iter().enumerate() {
        for &b in &splus[i + 1..] {
            if ld.inner(a, a) == ld.inner(b, b) && ld.inner(a, b).is_positive() {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn obtuseness_check(ld: &LeviDatum<'_>, splus: &[usize]) -> bool {
    obtuseness_violation(ld, splus).is_none()
}

/// Irreducible components of a root subsystem (as sorted index lists).
pub fn irreducible_components(ld: &LeviDatum<'_>, roots: &[usize]) -> Vec<Vec<usize>> {
    let mut component = vec![usize::MAX; roots.len()];
    let mut out = Vec::new();
    for start in 0..roots.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        component[start] = id;
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(i) = stack.pop() {
            members.push(roots[i]);
            for j in 0..roots.len() {
                if component[j] == usize::MAX && !ld.inner(roots[i], roots[j]).is_zero() {
                    component[j] = id;
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Compare `W_S`-orbits on each irreducible component of `Φ_S` with the
/// number of root lengths there. Returns the first mismatching component.
pub fn orbit_length_mismatch(
    ld: &LeviDatum<'_>,
    g: &RelativeWeylGroup,
    walls: &WallSet,
    phi_s: &[usize],
) -> Result<Option<Vec<usize>>> {
    let ws = wall_group(ld, g, walls)?;
    for comp in irreducible_components(ld, phi_s) {
        let lengths: BTreeSet<Rational> = comp.iter().map(|&a| ld.inner(a, a)).collect();
        let mut seen = BTreeSet::new();
        let mut orbits = 0;
        for &a in &comp {
            if seen.insert(a) {
                orbits += 1;
                for &w in &ws {
                    seen.insert(g.act(w, a));
                }
            }
        }
        if orbits != lengths.len() {
            return Ok(Some(comp));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// A regular draw produced linearly dependent walls.
    Dependent { relation: Vector },
    /// More walls than `dim a_M*`.
    TooManyWalls { count: usize, iota: usize },
    /// Two walls of the same length pair positively.
    NotObtuse { first: usize, second: usize },
    /// Orbit count on a component of `Φ_S` disagrees with its root lengths.
    OrbitLengths { component: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub trial: usize,
    /// `ω` in weight-basis coordinates.
    pub omega: Vector,
    pub poles: BTreeMap<usize, Rational>,
    pub walls: Vec<usize>,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StressReport {
    pub trials: usize,
    pub seed: u64,
    /// Draws with a nonempty wall set.
    pub nonempty: usize,
    /// Draws with a nonempty wall set passing the regularity check.
    pub regular: usize,
    /// Largest wall set seen on a regular draw.
    pub max_walls: usize,
    pub violations: Vec<Violation>,
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    frac(rng.gen_range(1..=4), rng.gen_range(1..=2))
}

fn random_coordinate(rng: &mut ChaCha8Rng) -> Rational {
    let r: f64 = rng.gen();
    if r < 0.2 {
        Rational::zero()
    } else if r < 0.8 {
        small_rational(rng)
    } else {
        frac(rng.gen_range(1..=64), rng.gen_range(1..=64))
    }
}

/// Draw random dominant `ω` and orbit poles, derive `S`, and whenever the
/// regularity check passes assert independence, the `|S| ≤ ι` bound,
/// obtuseness and the orbit/length rule.
pub fn independence_stress_test(
    ld: &LeviDatum<'_>,
    g: &RelativeWeylGroup,
    trials: usize,
    seed: u64,
) -> Result<StressReport> {
    let mut report = StressReport {
        trials,
        seed,
        ..StressReport::default()
    };
    let orbits = relative_orbits(ld, g);
    if orbits.is_empty() {
        return Ok(report);
    }
    let ids = orbit_ids(ld, &orbits);
    let positive_by_orbit: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| o.iter().copied().filter(|&a| ld.is_positive(a)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let coords: Vector = (0..ld.iota()).map(|_| random_coordinate(&mut rng)).collect();
        let omega = ld.from_weight_coordinates(&coords)?;
        let mut poles = BTreeMap::new();
        for (k, members) in positive_by_orbit.iter().enumerate() {
            let r: f64 = rng.gen();
            let pole = if r < 0.75 {
                let a = members[rng.gen_range(0..members.len())];
                let v = ld.pair(&omega, a);
                if v.is_positive() {
                    v
                } else {
                    small_rational(&mut rng)
                }
            } else if r < 0.9 {
                small_rational(&mut rng)
            } else {
                continue;
            };
            poles.insert(k, pole);
        }
        let walls = walls_unchecked(ld, &ids, &omega, &poles);
        if walls.is_empty() {
            continue;
        }
        report.nonempty += 1;
        let wall_set = WallSet::new(ld, &walls)?;
        let closure = phi_s(ld, g, &wall_set)?;
        if !check_regularity_cc(ld, &omega, &closure) {
            continue;
        }
        report.regular += 1;
        report.max_walls = report.max_walls.max(walls.len());
        let violation = |kind| Violation {
            trial,
            omega: coords.clone(),
            poles: poles.clone(),
            walls: walls.clone(),
            kind,
        };
        let vectors = wall_set.coroots(ld);
        if let Certificate::Relation(relation) = verify_linear_independence(&vectors).certificate {
            report.violations.push(violation(ViolationKind::Dependent { relation }));
        }
        if walls.len() > ld.iota() {
            report.violations.push(violation(ViolationKind::TooManyWalls {
                count: walls.len(),
                iota: ld.iota(),
            }));
        }
        let splus = s_plus(ld, &omega, &wall_set);
        if let Some((first, second)) = obtuseness_violation(ld, &splus) {
            report.violations.push(violation(ViolationKind::NotObtuse { first, second }));
        }
        if let Some(component) = orbit_length_mismatch(ld, g, &wall_set, &closure)? {
            report.violations.push(violation(ViolationKind::OrbitLengths { component }));
        }
    }
    Ok(report)
}

/// Short human-readable description of a violation.
pub fn describe(ld: &LeviDatum<'_>, v: &Violation) -> String {
    let walls: Vec<String> = v
        .walls
        .iter()
        .map(|&a| fmt_vector(&ld.weight_coordinates(&ld.relative_root(a).vector)))
        .collect();
    format!(
        "trial {}: omega = {}, walls = [{}]: {:?}",
        v.trial,
        fmt_vector(&v.omega),
        walls.join(", "),
        v.kind
    )
}
