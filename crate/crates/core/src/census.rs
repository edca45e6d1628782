//! Census reports over the irreps of one group.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::group::GroupParams;
use crate::reps::{
    enumerate_orbits, necklace_exponent_count, regular_orbit_count, restricted_multiplicities,
    CharacterTable, FrobOrbit, IrrepLabel,
};
use crate::SCHEMA_VERSION;

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityRow {
    pub label: IrrepLabel,
    /// Characters `χ` with nonzero multiplicity, each multiplicity being 1.
    pub support: Vec<u32>,
    pub max_multiplicity: u32,
    pub total: u32,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IrrepsReport {
    pub schema_version: u32,
    pub params: GroupParams,
    pub group_order: usize,
    pub irrep_count: usize,
    pub class_count: usize,
    pub dims: Vec<usize>,
    pub sum_of_squares: usize,
    pub census_ok: bool,
    pub orthonormal: bool,
    pub multiplicity_free: bool,
    pub multiplicities: Vec<MultiplicityRow>,
    pub character_table: CharacterTable,
    pub all_ok: bool,
}

impl IrrepsReport {
    pub fn compute(params: &GroupParams) -> Result<Self> {
        let table = CharacterTable::compute(params)?;
        let dims: Vec<usize> = table.rows.iter().map(|r| r.dim).collect();
        let sum_of_squares = dims.iter().map(|d| d * d).sum();
        let group_order = params.order();
        let census_ok = sum_of_squares == group_order && table.rows.len() == table.classes.len();
        let gram = table.gram()?;
        let orthonormal = gram.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() })
        });
        let multiplicities = table
            .rows
            .iter()
            .map(|row| {
                let mult = restricted_multiplicities(&row.label, params)?;
                let support: Vec<u32> = (0..mult.len() as u32).filter(|&c| mult[c as usize] > 0).collect();
                let max_multiplicity = mult.iter().copied().max().unwrap_or(0);
                let total = mult.iter().sum();
                Ok(MultiplicityRow {
                    ok: max_multiplicity <= 1
                        && total as usize == row.dim
                        && support == row.label.orbit.members(),
                    label: row.label.clone(),
                    support,
                    max_multiplicity,
                    total,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let multiplicity_free = multiplicities.iter().all(|m| m.ok);
        Ok(IrrepsReport {
            schema_version: SCHEMA_VERSION,
            params: *params,
            group_order,
            irrep_count: table.rows.len(),
            class_count: table.classes.len(),
            dims,
            sum_of_squares,
            census_ok,
            orthonormal,
            multiplicity_free,
            multiplicities,
            all_ok: census_ok && orthonormal && multiplicity_free,
            character_table: table,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitsReport {
    pub schema_version: u32,
    pub params: GroupParams,
    pub orbits: Vec<FrobOrbit>,
    pub regular_count: usize,
    pub necklace_count: u64,
    /// Exponents whose orbit has size exactly `n`.
    pub regular_exponents: u64,
    pub ok: bool,
}

impl OrbitsReport {
    pub fn compute(params: &GroupParams) -> Self {
        let orbits = enumerate_orbits(params);
        let regular_count = orbits.iter().filter(|o| o.size() == params.n).count();
        let necklace_count = regular_orbit_count(params.q, params.n);
        OrbitsReport {
            schema_version: SCHEMA_VERSION,
            params: *params,
            regular_exponents: necklace_exponent_count(params.q, params.n),
            ok: regular_count as u64 == necklace_count,
            orbits,
            regular_count,
            necklace_count,
        }
    }
}
