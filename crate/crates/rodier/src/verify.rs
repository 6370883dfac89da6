//! Exhaustive and randomized verification sweep.
//!
//! For every type of the sweep and every `θ ⊆ Δ`, the Levi and chamber
//! invariants are checked and the pole stress test is run. Levis are
//! processed in parallel; results are reported sorted by type, then by `θ`
//! as a bitmask.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rodier_core::arrangement::Descent;
use rodier_core::constituents::decompose_gps;
use rodier_core::levi::{make_levi, relative_weyl_group};
use rodier_core::linalg::int;
use rodier_core::poles::{independence_stress_test, verify_linear_independence, Violation, ViolationKind};
use rodier_core::{
    Arrangement, CartanType, Family, InducingDatum, LeviDatum, PoleSpec, RelativeWeylGroup, RootSystem, WallSet,
    WeylGroup,
};
use serde::Serialize;

use crate::cache::Cache;
use crate::error::CliError;
use crate::report::Tool;
use crate::spec::{to_q, Q};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_rank: usize,
    pub families: Vec<Family>,
    pub trials: usize,
    pub seed: u64,
    pub cap: usize,
    pub timing: bool,
}

/// Irreducible types of rank at most `max_rank` in the given families, one
/// per isomorphism class (`C_n` from 3, `D_n` from 4).
pub fn sweep_types(max_rank: usize, families: &[Family]) -> Vec<CartanType> {
    let mut out = Vec::new();
    for &f in families {
        let ranks: Vec<usize> = match f {
            Family::A => (1..=max_rank).collect(),
            Family::B => (2..=max_rank).collect(),
            Family::C => (3..=max_rank).collect(),
            Family::D => (4..=max_rank).collect(),
            Family::E => (6..=max_rank.min(8)).take(1).collect(),
            Family::F => (4..=max_rank).take(1).collect(),
            Family::G => (2..=max_rank).take(1).collect(),
        };
        out.extend(ranks.into_iter().filter_map(|n| CartanType::new(f, n).ok()));
    }
    out.sort();
    out
}

/// Seed of the stress test on the Levi with bitmask `mask`.
pub fn levi_seed(seed: u64, mask: u64) -> u64 {
    seed.wrapping_add(mask.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn fail(out: &mut Vec<String>, msg: String) {
    if out.len() < 8 {
        out.push(msg);
    }
}

/// Structural invariants of the relative roots and of `W_M = W_M⁰ ⋊ W_M¹`.
pub fn check_levi(ld: &LeviDatum<'_>, g: &RelativeWeylGroup) -> Vec<String> {
    let mut out = Vec::new();
    for (a, r) in ld.relative_roots().iter().enumerate() {
        let twice: Vec<_> = r.vector.iter().map(|x| x * int(2)).collect();
        if ld.find_by_vector(&twice).is_some() {
            fail(&mut out, format!("relative root {a} has its double in Φ_M"));
        }
        if !r.is_positive() && r.coefficients.iter().any(|&c| c > 0) {
            fail(&mut out, format!("relative root {a} has mixed-sign coefficients"));
        }
    }
    for w in 0..g.len() {
        for &a in ld.phi_m0() {
            if !ld.in_phi_m0(g.act(w, a)) {
                fail(&mut out, format!("element {w} moves {a} out of Φ_M⁰"));
            }
        }
    }
    for &s in g.simple_reflections() {
        if g.product(s, s) != g.identity() {
            fail(&mut out, format!("simple reflection {s} is not an involution"));
        }
    }

    let small: BTreeSet<usize> = g.small().iter().copied().collect();
    let complement: BTreeSet<usize> = g.complement().iter().copied().collect();
    if small.intersection(&complement).ne([g.identity()].iter()) {
        fail(&mut out, "W_M⁰ ∩ W_M¹ is not trivial".into());
    }
    if small.len() * complement.len() != g.len() {
        fail(
            &mut out,
            format!("|W_M⁰| · |W_M¹| = {} · {} ≠ |W_M| = {}", small.len(), complement.len(), g.len()),
        );
    }
    let mut seen = vec![false; g.len()];
    for &u in &small {
        for &v in &complement {
            let p = g.product(u, v);
            if std::mem::replace(&mut seen[p], true) {
                fail(&mut out, format!("product map not injective at element {p}"));
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        fail(&mut out, "product map W_M⁰ × W_M¹ → W_M not surjective".into());
    }
    for w in 0..g.len() {
        for &s in g.simple_reflections() {
            let c = g.product(g.product(w, s), g.inverse(w));
            if !small.contains(&c) {
                fail(&mut out, format!("W_M⁰ not normal: conjugate of {s} by {w} leaves it"));
            }
        }
        let (u, v) = g.decomposition(w);
        if !small.contains(&u) || !complement.contains(&v) || g.product(u, v) != w {
            fail(&mut out, format!("decomposition of element {w} is wrong"));
        }
    }
    let positive: BTreeSet<usize> = ld.positive_phi_m0().into_iter().collect();
    for &v in &complement {
        if positive.iter().any(|&a| !positive.contains(&g.act(v, a))) {
            fail(&mut out, format!("element {v} of W_M¹ moves the dominant chamber"));
        }
    }
    out
}

/// Chamber, component and gallery invariants, using `S = Δ_M⁰`.
pub fn check_arrangement(arr: &Arrangement<'_>) -> Vec<String> {
    let mut out = Vec::new();
    let ld = arr.levi();
    let g = arr.group();
    if arr.chambers().len() != g.small().len() {
        fail(&mut out, "chamber count differs from |W_M⁰|".into());
    }
    let profiles: BTreeSet<_> = arr.chambers().iter().map(|c| &c.signs).collect();
    if profiles.len() != arr.chambers().len() {
        fail(&mut out, "two chambers share a sign profile".into());
    }
    let s = match WallSet::new(ld, ld.delta_m0()) {
        Ok(s) => s,
        Err(e) => {
            fail(&mut out, format!("Δ_M⁰ is not a wall set: {e}"));
            return out;
        }
    };
    if !verify_linear_independence(&s.coroots(ld)).independent {
        fail(&mut out, "Δ_M⁰ is linearly dependent".into());
    }
    let datum = InducingDatum {
        omega: None,
        poles: PoleSpec::Explicit(s.clone()),
        assume_regular: true,
        assume_generic: true,
    };
    match decompose_gps(arr, &s, &datum) {
        Err(e) => fail(&mut out, format!("decomposition with S = Δ_M⁰ failed: {e}")),
        Ok(r) => {
            if r.induced && r.length != 1 << s.len() {
                fail(&mut out, format!("{} constituents, expected 2^{}", r.length, s.len()));
            }
            let mut all: Vec<usize> = r.constituents.iter().flat_map(|c| c.jacquet.iter().copied()).collect();
            all.sort_unstable();
            if all != (0..g.len()).collect::<Vec<_>>() {
                fail(&mut out, "Jacquet sets do not partition W_M".into());
            }
            for c in &r.constituents {
                if c.jacquet.len() != g.complement().len() * c.chambers.len() {
                    fail(&mut out, format!("Jacquet set of component {} has the wrong size", c.id));
                }
                if r.constituents[c.aubert_dual].aubert_dual != c.id || (!s.is_empty() && c.aubert_dual == c.id) {
                    fail(&mut out, format!("Aubert pairing broken at component {}", c.id));
                }
                if c.id != 0 && c.flags != Default::default() {
                    fail(&mut out, format!("flag set off Γ₊ on component {}", c.id));
                }
            }
            let f = r.gamma_plus().flags;
            if r.induced && (f.square_integrable && !f.tempered || !f.generic || !f.subrepresentation_witness) {
                fail(&mut out, format!("inconsistent flags on Γ₊: {f:?}"));
            }
        }
    }
    let small = g.small();
    let step = (small.len() / 16).max(1);
    for (i, &w) in small.iter().enumerate().step_by(step) {
        let w2 = small[(i * 7 + small.len() / 2) % small.len()];
        let p = arr.kernel_image_partition(w, w2, &s);
        let inv = arr.inversion_set(w, w2);
        for choice in [Descent::First, Descent::Last] {
            let word = arr.minimal_gallery_with(w, w2, choice);
            if word.len() != inv.len() || arr.follow(w, &word) != w2 {
                fail(&mut out, format!("gallery from {w} to {w2} is not minimal"));
            }
            if arr.image_along_gallery(w, &word, &s) != p.jim {
                fail(&mut out, format!("gallery image from {w} to {w2} depends on the gallery"));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationDetail {
    Dependent { relation: Vec<Q> },
    TooManyWalls { count: usize, iota: usize },
    NotObtuse { first: Vec<Q>, second: Vec<Q> },
    OrbitLengths { component: Vec<Vec<Q>> },
}

/// A stress-test violation with every vector in weight-basis coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct ViolationEntry {
    pub trial: usize,
    pub omega: Vec<Q>,
    pub poles: BTreeMap<String, Q>,
    #[serde(rename = "S")]
    pub walls: Vec<Vec<Q>>,
    #[serde(flatten)]
    pub detail: ViolationDetail,
}

impl ViolationEntry {
    pub fn new(ld: &LeviDatum<'_>, v: &Violation) -> Self {
        let coroot = |a: usize| to_q(&ld.weight_coordinates(&ld.coroot(a)));
        let detail = match &v.kind {
            ViolationKind::Dependent { relation } => ViolationDetail::Dependent {
                relation: to_q(relation),
            },
            ViolationKind::TooManyWalls { count, iota } => ViolationDetail::TooManyWalls {
                count: *count,
                iota: *iota,
            },
            ViolationKind::NotObtuse { first, second } => ViolationDetail::NotObtuse {
                first: coroot(*first),
                second: coroot(*second),
            },
            ViolationKind::OrbitLengths { component } => ViolationDetail::OrbitLengths {
                component: component.iter().map(|&a| coroot(a)).collect(),
            },
        };
        ViolationEntry {
            trial: v.trial,
            omega: to_q(&v.omega),
            poles: v.poles.iter().map(|(k, p)| (format!("orbit{k}"), Q(*p))).collect(),
            walls: v.walls.iter().map(|&a| coroot(a)).collect(),
            detail,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StressEntry {
    #[serde(rename = "type")]
    pub cartan: String,
    pub theta: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub nonempty: usize,
    pub regular: usize,
    pub max_walls: usize,
    pub violations: Vec<ViolationEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LeviEntry {
    #[serde(rename = "type")]
    pub cartan: String,
    pub theta: Vec<usize>,
    pub w_m: usize,
    pub w_m0: usize,
    pub w_m1: usize,
    pub failures: Vec<String>,
    pub stress: StressEntry,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    #[serde(rename = "type")]
    pub cartan: String,
    pub theta: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<ViolationEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Totals {
    pub types: usize,
    pub levis: usize,
    pub draws: usize,
    pub regular: usize,
    pub failures: usize,
    pub violations: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub tool: Tool,
    pub max_rank: usize,
    pub families: Vec<String>,
    pub trials: usize,
    pub seed: u64,
    pub types: Vec<String>,
    pub totals: Totals,
    pub passed: bool,
    pub first_counterexample: Option<Counterexample>,
    pub levis: Vec<LeviEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

struct Absolute {
    rs: RootSystem,
    weyl: WeylGroup,
}

fn ms(t: Instant) -> f64 {
    (t.elapsed().as_secs_f64() * 1e4).round() / 10.0
}

fn run_levi(a: &Absolute, mask: u64, opts: &VerifyOptions) -> Result<LeviEntry, CliError> {
    let start = Instant::now();
    let n = a.rs.rank();
    let theta: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
    let cartan = a.rs.cartan_type().to_string();
    let ld = make_levi(&a.rs, &theta)?;
    let mut failures = Vec::new();
    let g = match relative_weyl_group(&ld, &a.weyl) {
        Ok(g) => g,
        Err(e) => {
            return Err(CliError::Verify(format!("{cartan} θ = {theta:?}: relative Weyl group: {e}")));
        }
    };
    failures.extend(check_levi(&ld, &g));
    match Arrangement::new(&ld, &g) {
        Ok(arr) => failures.extend(check_arrangement(&arr)),
        Err(e) => failures.push(format!("chamber enumeration failed: {e}")),
    }
    let seed = levi_seed(opts.seed, mask);
    let stress = independence_stress_test(&ld, &g, opts.trials, seed)?;
    Ok(LeviEntry {
        cartan: cartan.clone(),
        theta: theta.clone(),
        w_m: g.len(),
        w_m0: g.small().len(),
        w_m1: g.complement().len(),
        failures,
        stress: StressEntry {
            cartan,
            theta,
            trials: stress.trials,
            seed,
            nonempty: stress.nonempty,
            regular: stress.regular,
            max_walls: stress.max_walls,
            violations: stress.violations.iter().map(|v| ViolationEntry::new(&ld, v)).collect(),
            elapsed_ms: opts.timing.then(|| ms(start)),
        },
    })
}

pub fn verify(opts: &VerifyOptions, cache: &Cache) -> Result<VerifyReport, CliError> {
    let start = Instant::now();
    let types = sweep_types(opts.max_rank, &opts.families);
    let mut absolutes = Vec::with_capacity(types.len());
    for &t in &types {
        let rs = RootSystem::new(t)?;
        let weyl = cache.weyl_group(&rs, opts.cap)?;
        absolutes.push(Absolute { rs, weyl });
    }
    let tasks: Vec<(usize, u64)> = absolutes
        .iter()
        .enumerate()
        .flat_map(|(i, a)| (0..1u64 << a.rs.rank()).map(move |m| (i, m)))
        .collect();
    let results: Mutex<Vec<Option<Result<LeviEntry, CliError>>>> =
        Mutex::new(tasks.iter().map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(tasks.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(i, mask)) = tasks.get(k) else { break };
                let r = run_levi(&absolutes[i], mask, opts);
                results.lock().unwrap()[k] = Some(r);
            });
        }
    });

    let mut levis = Vec::with_capacity(tasks.len());
    for r in results.into_inner().unwrap() {
        levis.push(r.expect("every task ran")?);
    }
    let mut first_counterexample = None;
    for l in &levis {
        let invariant = l.failures.first().cloned();
        let violation = l.stress.violations.first().cloned();
        if invariant.is_some() || violation.is_some() {
            first_counterexample = Some(Counterexample {
                cartan: l.cartan.clone(),
                theta: l.theta.clone(),
                invariant,
                violation,
            });
            break;
        }
    }
    let totals = Totals {
        types: types.len(),
        levis: levis.len(),
        draws: levis.iter().map(|l| l.stress.trials).sum(),
        regular: levis.iter().map(|l| l.stress.regular).sum(),
        failures: levis.iter().map(|l| l.failures.len()).sum(),
        violations: levis.iter().map(|l| l.stress.violations.len()).sum(),
    };
    Ok(VerifyReport {
        tool: Tool::current(),
        max_rank: opts.max_rank,
        families: opts.families.iter().map(|f| f.to_string()).collect(),
        trials: opts.trials,
        seed: opts.seed,
        types: types.iter().map(|t| t.to_string()).collect(),
        passed: first_counterexample.is_none(),
        totals,
        first_counterexample,
        levis,
        elapsed_ms: opts.timing.then(|| ms(start)),
    })
}
