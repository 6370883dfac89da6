//! From a parsed problem spec to a decomposition.

use rodier_core::cartan::DEFAULT_ENUMERATION_CAP;
use rodier_core::constituents::{decompose_gps, resolve_walls};
use rodier_core::levi::{make_levi, relative_weyl_group};
use rodier_core::{
    Arrangement, CartanType, DecompositionReport, InducingDatum, LeviDatum, PoleSpec, RelativeWeylGroup,
    RootSystem, WallSet,
};

use crate::cache::Cache;
use crate::error::CliError;
use crate::spec::{InducingForm, ProblemSpec};

/// Everything computed for one spec, borrowed for the duration of a callback.
pub struct Context<'a> {
    pub spec: &'a ProblemSpec,
    pub levi: &'a LeviDatum<'a>,
    pub group: &'a RelativeWeylGroup,
    pub arrangement: &'a Arrangement<'a>,
    pub report: DecompositionReport,
}

/// The inducing datum described by a spec, with `ω` and the walls converted
/// from weight-basis coordinates.
pub fn inducing_datum(spec: &ProblemSpec, ld: &LeviDatum<'_>) -> Result<InducingDatum, CliError> {
    let (omega, poles) = match spec.inducing_form()? {
        InducingForm::Orbits { omega, poles } => (Some(omega), PoleSpec::Orbits(poles)),
        InducingForm::Walls { omega, coroots } => {
            let coroots = coroots
                .iter()
                .map(|c| {
                    ld.from_weight_coordinates(c).map_err(|_| {
                        CliError::Spec(format!(
                            "inducing: S entries need {} coordinates, got {}",
                            ld.iota(),
                            c.len()
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            (omega, PoleSpec::Explicit(WallSet::from_coroots(ld, &coroots)?))
        }
    };
    let omega = omega.map(|c| ld.from_weight_coordinates(&c)).transpose()?;
    Ok(InducingDatum {
        omega,
        poles,
        assume_regular: spec.assume_regular,
        assume_generic: spec.assume_generic,
    })
}

/// Run the full pipeline for `spec` and hand the result to `f`.
pub fn with_decomposition<T>(
    spec: &ProblemSpec,
    cache: &Cache,
    f: impl FnOnce(&Context<'_>) -> T,
) -> Result<T, CliError> {
    let t: CartanType = spec.cartan.parse()?;
    let rs = RootSystem::new(t)?;
    let weyl = cache.weyl_group(&rs, DEFAULT_ENUMERATION_CAP)?;
    let ld = make_levi(&rs, &spec.levi)?;
    let g = relative_weyl_group(&ld, &weyl)?;
    let arr = Arrangement::new(&ld, &g)?;
    let datum = inducing_datum(spec, &ld)?;
    if !datum.assume_regular {
        return Err(rodier_core::Error::RegularityNotAsserted.into());
    }
    let walls = resolve_walls(&ld, &g, &datum)?;
    let report = decompose_gps(&arr, &walls, &datum)?;
    Ok(f(&Context {
        spec,
        levi: &ld,
        group: &g,
        arrangement: &arr,
        report,
    }))
}
