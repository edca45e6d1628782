//! Level-zero dictionary between tame Weil-group parameters and
//! representations of the finite models.
//!
//! An indecomposable tame parameter is `Sp(d) ⊗ ρ` with `ρ` irreducible of
//! dimension `f = n/d`, recorded by the Frobenius orbit of its inertia
//! character and an unramified twist `s`. Its transfer to the division
//! algebra side is the `f`-dimensional irrep with the same coordinates, and
//! its formal dimension is `f`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupParams;
use crate::reps::{enumerate_orbits, regular_orbit_count, FrobOrbit, IrrepLabel};
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TameParam {
    pub orbit: FrobOrbit,
    pub d: u32,
    pub s: u32,
}

impl TameParam {
    pub fn new(params: &GroupParams, orbit: FrobOrbit, d: u32, s: u32) -> Result<Self> {
        let f = orbit.size();
        if f * d != params.n {
            return Err(Error::InvalidParams(format!(
                "orbit size {f} times depth {d} must equal n = {}",
                params.n
            )));
        }
        IrrepLabel::new(params, orbit.clone(), s)?;
        Ok(TameParam { orbit, d, s })
    }

    pub fn is_irreducible(&self) -> bool {
        self.d == 1
    }

    /// `Sp(n)`: trivial inertia, full Steinberg depth.
    pub fn steinberg(params: &GroupParams) -> Self {
        TameParam {
            orbit: FrobOrbit::of(params, 0),
            d: params.n,
            s: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GlobalTameParam {
    pub orbit: FrobOrbit,
    pub s: u32,
}

/// Irreducible tame parameters: regular orbits, every twist `s ∈ Z/N`.
pub fn classify_irreducibles(params: &GroupParams) -> Vec<TameParam> {
    enumerate_orbits(params)
        .into_iter()
        .filter(|o| o.size() == params.n)
        .flat_map(|orbit| {
            (0..params.level).map(move |s| TameParam {
                orbit: orbit.clone(),
                d: 1,
                s,
            })
        })
        .collect()
}

/// Expected size of [`classify_irreducibles`] from the necklace formula.
pub fn expected_irreducible_count(params: &GroupParams) -> u64 {
    regular_orbit_count(params.q, params.n) * params.level as u64
}

/// Formal dimension at level zero.
pub fn r_value(p: &TameParam) -> u32 {
    p.orbit.size()
}

pub fn jl_transfer(p: &TameParam) -> IrrepLabel {
    IrrepLabel {
        orbit: p.orbit.clone(),
        s: p.s,
    }
}

/// Inverse of [`jl_transfer`]: the depth is forced by `f d = n`.
pub fn jl_inverse(label: &IrrepLabel, params: &GroupParams) -> Result<TameParam> {
    label.validate(params)?;
    let f = label.orbit.size();
    Ok(TameParam {
        orbit: label.orbit.clone(),
        d: params.n / f,
        s: label.s,
    })
}

pub fn katz_special_extension(rho0: &TameParam) -> Result<GlobalTameParam> {
    if !rho0.is_irreducible() {
        return Err(Error::Precondition(format!(
            "special extension needs an irreducible parameter, got depth {}",
            rho0.d
        )));
    }
    Ok(GlobalTameParam {
        orbit: rho0.orbit.clone(),
        s: rho0.s,
    })
}

/// Inertia at `∞` is inverse to inertia at `0`, so the orbit is negated;
/// the twist is carried over unchanged.
pub fn restrict_at_infinity(g: &GlobalTameParam, params: &GroupParams) -> TameParam {
    let orbit = g.orbit.negated(params);
    TameParam {
        d: params.n / orbit.size(),
        orbit,
        s: g.s,
    }
}

/// Predicted `∞` label of the automorphic block attached to `σ`. For
/// `d > 1` the same orbit negation is applied.
pub fn predicted_infinity_label(sigma: &IrrepLabel, params: &GroupParams) -> IrrepLabel {
    IrrepLabel {
        orbit: sigma.orbit.negated(params),
        s: sigma.s,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AEntry {
    pub global: GlobalTameParam,
    pub at_infinity: TameParam,
    pub r: u32,
}

/// Global extensions of `ρ₀` with indecomposable restriction at `∞`, in
/// the everywhere-tame sector: only the special extension.
pub fn enumerate_a_tame(rho0: &TameParam, params: &GroupParams) -> Result<Vec<AEntry>> {
    let global = katz_special_extension(rho0)?;
    let at_infinity = restrict_at_infinity(&global, params);
    let r = r_value(&at_infinity);
    Ok(vec![AEntry {
        global,
        at_infinity,
        r,
    }])
}

#[derive(Clone, Debug, Serialize)]
pub struct TameEntryReport {
    pub rho0: TameParam,
    pub r: u32,
    pub transfer: IrrepLabel,
    pub a_set: Vec<AEntry>,
    pub sum: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TameReport {
    pub schema_version: u32,
    pub params: GroupParams,
    pub expected_count: u64,
    pub parameters: Vec<TameEntryReport>,
    pub count_ok: bool,
    pub all_ok: bool,
}

impl TameReport {
    pub fn compute(params: &GroupParams) -> Result<Self> {
        let irreducibles = classify_irreducibles(params);
        let expected_count = expected_irreducible_count(params);
        let mut parameters = vec![];
        for rho0 in irreducibles {
            let a_set = enumerate_a_tame(&rho0, params)?;
            let sum: u32 = a_set.iter().map(|e| e.r).sum();
            let r = r_value(&rho0);
            let ok = sum == r && a_set.iter().all(|e| params.n % e.r == 0);
            parameters.push(TameEntryReport {
                transfer: jl_transfer(&rho0),
                rho0,
                r,
                a_set,
                sum,
                ok,
            });
        }
        let count_ok = parameters.len() as u64 == expected_count;
        let all_ok = count_ok && parameters.iter().all(|p| p.ok);
        Ok(TameReport {
            schema_version: SCHEMA_VERSION,
            params: *params,
            expected_count,
            parameters,
            count_ok,
            all_ok,
        })
    }
}
