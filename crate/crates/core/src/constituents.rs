//! Constituents of a regular generalized principal series.
//!
//! Constituents are indexed by the components cut out of the relative
//! chambers by the reducibility walls. The Jacquet module of a constituent is
//! modeled by the set of `w ∈ W_M` whose chamber `w·C_M⁺` lies in its
//! component. Flags for square-integrability, temperedness and genericity
//! only ever sit on the all-positive component `Γ₊`, and Aubert duality
//! sends a component to the one with the opposite sign vector.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Sign, WallSet};
use crate::error::{Error, Result};
use crate::levi::{LeviDatum, RelativeWeylGroup};
use crate::linalg::{self, Vector};
use crate::poles::{check_dominant, derive_regular_s, InducingDatum, PoleSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub square_integrable: bool,
    pub tempered: bool,
    pub generic: bool,
    /// The identity lies in this constituent's Jacquet set, so the
    /// inducing representation maps to it: it is a subrepresentation.
    pub subrepresentation_witness: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constituent {
    /// Component id; 0 is always `Γ₊`.
    pub id: usize,
    /// Signs on the walls of `S`, in wall-set order.
    pub sign_vector: Vec<Sign>,
    /// Owners (indices in `W_M`) of the chambers in the component.
    pub chambers: Vec<usize>,
    /// Elements of `W_M` whose chamber lies in the component, sorted.
    pub jacquet: Vec<usize>,
    pub flags: Flags,
    pub aubert_dual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub walls: WallSet,
    pub omega: Option<Vector>,
    pub constituents: Vec<Constituent>,
    pub length: usize,
    pub irreducible: bool,
    /// False when `M = G`, in which case nothing is induced.
    pub induced: bool,
    pub notes: Vec<String>,
}

impl DecompositionReport {
    pub fn gamma_plus(&self) -> &Constituent {
        &self.constituents[0]
    }
}

/// The reducibility walls of a datum: either given, or derived from `ω` and
/// the orbit poles (which then must pass the regularity check).
pub fn resolve_walls(ld: &LeviDatum<'_>, g: &RelativeWeylGroup, datum: &InducingDatum) -> Result<WallSet> {
    if let Some(omega) = &datum.omega {
        check_dominant(ld, omega)?;
    }
    match &datum.poles {
        PoleSpec::Explicit(walls) => WallSet::new(ld, walls.roots()),
        PoleSpec::Orbits(poles) => {
            let omega = datum
                .omega
                .as_ref()
                .ok_or_else(|| Error::InvalidPoles("orbit poles need omega".into()))?;
            derive_regular_s(ld, g, omega, poles)
        }
    }
}

/// Build the full report: constituents, Jacquet sets, all flags and the
/// Aubert pairing.
pub fn decompose_gps(arr: &Arrangement<'_>, walls: &WallSet, datum: &InducingDatum) -> Result<DecompositionReport> {
    if !datum.assume_regular {
        return Err(Error::RegularityNotAsserted);
    }
    let ld = arr.levi();
    let g = arr.group();
    if let Some(omega) = &datum.omega {
        check_dominant(ld, omega)?;
    }
    let walls = WallSet::new(ld, walls.roots())?;

    if ld.iota() == 0 {
        return Ok(DecompositionReport {
            walls,
            omega: datum.omega.clone(),
            constituents: vec![Constituent {
                id: 0,
                sign_vector: Vec::new(),
                chambers: vec![g.identity()],
                jacquet: vec![g.identity()],
                flags: Flags::default(),
                aubert_dual: 0,
            }],
            length: 1,
            irreducible: true,
            induced: false,
            notes: vec!["M = G: no induction performed".into()],
        });
    }

    let components = arr.components(&walls);
    let by_signs: BTreeMap<Vec<Sign>, usize> = components
        .iter()
        .map(|c| (c.sign_vector.clone(), c.id))
        .collect();
    let mut jacquet: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for w in 0..g.len() {
        let id = by_signs
            .get(&arr.sign_vector(w, &walls))
            .ok_or_else(|| Error::Invariant(format!("element {w} lies in no component")))?;
        jacquet[*id].push(w);
    }
    let mut constituents = Vec::with_capacity(components.len());
    for (c, jac) in components.into_iter().zip(jacquet) {
        let expected = g.complement().len() * c.chambers.len();
        if jac.len() != expected {
            return Err(Error::Invariant(format!(
                "component {} has {} Jacquet elements, expected |W_M¹| · {} = {expected}",
                c.id,
                jac.len(),
                c.chambers.len()
            )));
        }
        constituents.push(Constituent {
            id: c.id,
            sign_vector: c.sign_vector,
            chambers: c.chambers.iter().map(|&k| arr.chambers()[k].owner).collect(),
            jacquet: jac,
            flags: Flags::default(),
            aubert_dual: c.id,
        });
    }
    if !constituents[0].sign_vector.iter().all(|&s| s == Sign::Plus) {
        return Err(Error::Invariant("component 0 is not the all-positive component".into()));
    }
    let length = constituents.len();
    let mut report = DecompositionReport {
        walls,
        omega: datum.omega.clone(),
        constituents,
        length,
        irreducible: length == 1,
        induced: true,
        notes: Vec::new(),
    };
    flag_square_integrable(&mut report, ld);
    flag_tempered(&mut report, ld);
    flag_generic(&mut report, datum.assume_generic, g)?;
    aubert_pairing(&mut report)?;
    Ok(report)
}

fn wall_roots(report: &DecompositionReport, ld: &LeviDatum<'_>) -> Vec<Vector> {
    report
        .walls
        .roots()
        .iter()
        .map(|&a| ld.relative_root(a).vector.clone())
        .collect()
}

/// Flag `Γ₊` when the roots of `S` span `a_M*` (which forces `°a_M* = a_M*`).
pub fn flag_square_integrable(report: &mut DecompositionReport, ld: &LeviDatum<'_>) {
    if !report.induced {
        return;
    }
    let span = linalg::rank(&wall_roots(report, ld));
    let flag = span == ld.iota() && ld.small_space().len() == ld.iota();
    report.constituents[0].flags.square_integrable = flag;
}

/// Flag `Γ₊` when `ω` lies in the span of the roots of `S`.
pub fn flag_tempered(report: &mut DecompositionReport, ld: &LeviDatum<'_>) {
    if !report.induced {
        return;
    }
    let roots = wall_roots(report, ld);
    // When S spans a_M*, every omega lies in the span.
    if linalg::rank(&roots) == ld.iota() {
        report.constituents[0].flags.tempered = true;
        return;
    }
    let Some(omega) = &report.omega else {
        report
            .notes
            .push("tempered flag not evaluated: no omega given".into());
        return;
    };
    let flag = if roots.is_empty() {
        linalg::is_zero(omega)
    } else {
        linalg::in_span(&roots, omega)
    };
    report.constituents[0].flags.tempered = flag;
}

/// Flag `Γ₊` as the generic constituent and record the subrepresentation
/// witness. Skipped with a note unless genericity is assumed.
pub fn flag_generic(report: &mut DecompositionReport, assume_generic: bool, g: &RelativeWeylGroup) -> Result<()> {
    if !report.induced {
        return Ok(());
    }
    if !assume_generic {
        report
            .notes
            .push("generic flag not evaluated: assume_generic is not set".into());
        return Ok(());
    }
    let plus = &mut report.constituents[0];
    if plus.jacquet.binary_search(&g.identity()).is_err() {
        return Err(Error::Invariant("the identity is not in the Jacquet set of Γ₊".into()));
    }
    plus.flags.generic = true;
    plus.flags.subrepresentation_witness = true;
    Ok(())
}

/// Pair each constituent with the one carrying the negated sign vector.
pub fn aubert_pairing(report: &mut DecompositionReport) -> Result<()> {
    let by_signs: BTreeMap<Vec<Sign>, usize> = report
        .constituents
        .iter()
        .map(|c| (c.sign_vector.clone(), c.id))
        .collect();
    for c in report.constituents.iter_mut() {
        let neg: Vec<Sign> = c.sign_vector.iter().map(|s| s.flip()).collect();
        c.aubert_dual = *by_signs
            .get(&neg)
            .ok_or_else(|| Error::Invariant(format!("no component opposite to component {}", c.id)))?;
    }
    Ok(())
}

/// Simple roots (positions into `Δ`) appearing in some absolute root that
/// projects onto the line of relative root `a`.
pub fn contribution_support(ld: &LeviDatum<'_>, a: usize) -> Vec<usize> {
    let rs = ld.root_system();
    let neg = ld.negation(a);
    let mut support = vec![false; rs.rank()];
    for i in 0..rs.num_roots() {
        if ld.class_of(i).is_some_and(|(b, _)| b == a || b == neg) {
            for (k, &c) in rs.coefficients(i).iter().enumerate() {
                if c != 0 {
                    support[k] = true;
                }
            }
        }
    }
    (0..rs.rank()).filter(|&k| support[k]).collect()
}

/// Whether every wall of `S` comes from roots inside the standard Levi
/// `theta_prime ⊇ theta`.
pub fn universal_irreducibility_check(ld: &LeviDatum<'_>, walls: &WallSet, theta_prime: &[usize]) -> Result<bool> {
    if let Some(&k) = ld.theta().iter().find(|k| !theta_prime.contains(k)) {
        return Err(Error::InvalidLevi(format!(
            "theta' must contain theta; simple root {k} is missing"
        )));
    }
    if let Some(&k) = theta_prime.iter().find(|&&k| k >= ld.root_system().rank()) {
        return Err(Error::InvalidLevi(format!("simple root index {k} out of range")));
    }
    Ok(walls
        .roots()
        .iter()
        .all(|&a| contribution_support(ld, a).iter().all(|k| theta_prime.contains(k))))
}
