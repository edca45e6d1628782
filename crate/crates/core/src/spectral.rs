//! Spectral decomposition of functions on `X_N` under the left group, the
//! Hecke operators and the action at `∞`.
//!
//! For a representation `σ` of `Γ = Γ(q, 2, N)` the space
//! `Hom_Γ(σ, C[X_N])` is computed exactly as the kernel of the intertwining
//! equations. Hecke operators and the `∞` action act on it by
//! post-composition. The space is split into lines under the Teichmüller
//! units at `∞`, the lines are grouped by their Hecke eigenvalues, and each
//! group is checked to be an irreducible representation at `∞`.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::adelic::{
    int_mat_mul, left_translation_matrix, right_shift_matrix, Factorizer, HeckeOperator,
    InfinityAction, SearchBounds,
};
use crate::cyclo::{inner_product, CycNumber, CycScalar};
use crate::error::{Error, Result};
use crate::finite_field::{monic_irreducibles, Poly};
use crate::group::GroupElement;
use crate::linalg::{coordinates_in, identity, kernel_of_dense, mat_mul, mat_vec, trace, Echelon, Matrix, SparseRow};
use crate::quaternion::AlgebraParams;
use crate::reps::{build_model, enumerate_irreps, CharacterTable, FrobOrbit, IrrepLabel};
use crate::tame::{enumerate_a_tame, jl_inverse, predicted_infinity_label};
use crate::SCHEMA_VERSION;

/// Everything shared by all `σ` at fixed `(q, N)`.
pub struct SpectralContext {
    pub alg: AlgebraParams,
    pub bounds: SearchBounds,
    pub hecke: Vec<HeckeOperator>,
    /// Hecke shifts recomputed under a second local splitting.
    pub alt_shifts: Vec<Vec<GroupElement>>,
    pub infinity: InfinityAction,
    pub table: CharacterTable,
    pub order: usize,
}

/// Monic irreducibles of degree `1..=max_degree` other than `t`.
pub fn default_places(alg: &AlgebraParams, max_degree: usize) -> Vec<Poly> {
    (1..=max_degree)
        .flat_map(|d| monic_irreducibles(&alg.fq, d))
        .filter(|p| *p != Poly::t())
        .collect()
}

impl SpectralContext {
    pub fn new(alg: AlgebraParams, places: Option<Vec<Poly>>, bounds: SearchBounds) -> Result<Self> {
        let places = places.unwrap_or_else(|| default_places(&alg, 2));
        let mut seen = BTreeSet::new();
        for p in &places {
            if !seen.insert(p.coeffs().to_vec()) {
                return Err(Error::InvalidParams(format!("place {} given twice", p.display())));
            }
        }
        let fz = Factorizer::new(alg.clone());
        let alt = Factorizer::with_splitting_index(alg.clone(), 1);
        let hecke = places
            .iter()
            .map(|p| HeckeOperator::compute(&fz, p, &bounds))
            .collect::<Result<Vec<_>>>()?;
        let alt_shifts = places
            .iter()
            .map(|p| HeckeOperator::compute(&alt, p, &bounds).map(|h| h.shifts))
            .collect::<Result<Vec<_>>>()?;
        let infinity = InfinityAction::compute(&fz, &bounds)?;
        let table = CharacterTable::compute(&alg.group)?;
        let order = alg.group.cyclotomic_order();
        Ok(SpectralContext {
            alg,
            bounds,
            hecke,
            alt_shifts,
            infinity,
            table,
            order,
        })
    }

    pub fn places(&self) -> Vec<Poly> {
        self.hecke.iter().map(|h| h.place.clone()).collect()
    }

    /// The same context with the degree-3 places appended.
    pub fn extended(&self) -> Result<Self> {
        let mut places = self.places();
        if places.iter().any(|p| p.degree() == Some(3)) {
            return Err(Error::NeedsMorePlaces(
                "eigensystems still coincide after adding degree-3 places".into(),
            ));
        }
        places.extend(monic_irreducibles(&self.alg.fq, 3));
        Self::new(self.alg.clone(), Some(places), self.bounds)
    }
}

/// `Hom_Γ(σ, C[X_N])`; vectors are indexed by `d·f + i` for `Φ(e_i)(d)`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub sigma: IrrepLabel,
    pub dim_sigma: usize,
    /// Free coordinates of the echelon form; a vector is determined by
    /// its values there.
    pub free: Vec<usize>,
    pub basis: Vec<Vec<CycNumber>>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, v: &[CycNumber]) -> Vec<CycNumber> {
        self.free.iter().map(|&c| v[c].clone()).collect()
    }
}

/// Solves `Φ(σ(g)v)(d) = Φ(v)(g⁻¹d)` for both generators of `Γ`.
pub fn hom_space(ctx: &SpectralContext, sigma: &IrrepLabel) -> Result<HomSpace> {
    let g = &ctx.alg.group;
    let model = build_model(sigma, g)?;
    let f = model.dim();
    let n = g.order();
    let order = ctx.order;
    let mut ech = Echelon::new(order, n * f);
    for gen in [g.frobenius(), g.field_generator()] {
        let mono = model.element_monomial(gen);
        let ginv = g.inv(gen);
        for d in 0..n {
            let src = g.index(g.mul(ginv, g.element_at(d)));
            for i in 0..f {
                let mut row = SparseRow::new();
                row.insert(src * f + i, CycNumber::one(order));
                let col = d * f + mono.perm[i];
                let term = CycNumber::root(order, mono.exps[i] as i64).neg();
                let entry = row.entry(col).or_insert_with(|| CycNumber::zero(order));
                *entry = entry.add(&term);
                ech.push(row);
            }
        }
    }
    let space = HomSpace {
        sigma: sigma.clone(),
        dim_sigma: f,
        free: ech.free_columns(),
        basis: ech.kernel(),
    };
    if space.dim() != f {
        return Err(Error::Consistency(format!(
            "Hom space for {sigma:?} has dimension {}, expected {f}",
            space.dim()
        )));
    }
    Ok(space)
}

/// `(Σ_r R_r Φ)(d) = Σ_r Φ(d·r⁻¹)`.
fn apply_shifts(ctx: &SpectralContext, f: usize, v: &[CycNumber], shifts: &[GroupElement]) -> Vec<CycNumber> {
    let g = &ctx.alg.group;
    let n = g.order();
    let mut out = vec![CycNumber::zero(ctx.order); v.len()];
    let inv: Vec<GroupElement> = shifts.iter().map(|&r| g.inv(r)).collect();
    for d in 0..n {
        let x = g.element_at(d);
        for &ri in &inv {
            let src = g.index(g.mul(x, ri));
            for i in 0..f {
                let val = &v[src * f + i];
                if !val.is_zero() {
                    out[d * f + i] = out[d * f + i].add(val);
                }
            }
        }
    }
    out
}

/// Matrix of a sum of right shifts on the coordinates of `hom`.
pub fn action_matrix(ctx: &SpectralContext, hom: &HomSpace, shifts: &[GroupElement]) -> Matrix {
    let k = hom.dim();
    let mut m = vec![vec![CycNumber::zero(ctx.order); k]; k];
    for (b, v) in hom.basis.iter().enumerate() {
        let image = hom.coords(&apply_shifts(ctx, hom.dim_sigma, v, shifts));
        for (r, x) in image.into_iter().enumerate() {
            m[r][b] = x;
        }
    }
    m
}

/// First nonzero coordinate scaled to 1.
fn normalize(v: Vec<CycNumber>) -> Vec<CycNumber> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).and_then(CycNumber::inv) else {
        return v;
    };
    v.iter().map(|x| x.mul(&lead)).collect()
}

fn eigenvalue_on(order: usize, m: &Matrix, v: &[CycNumber]) -> Result<CycNumber> {
    let w = mat_vec(order, m, v);
    let k = v
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Consistency("zero eigenvector".into()))?;
    let lambda = w[k].div(&v[k]).expect("nonzero pivot");
    if w.iter().zip(v).any(|(a, b)| *a != lambda.mul(b)) {
        return Err(Error::Consistency(
            "a Hecke operator does not preserve a unit eigenline".into(),
        ));
    }
    Ok(lambda)
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceEigenvalue {
    pub place: Poly,
    pub value: CycScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenLine {
    /// The unit character `g^e ↦ ζ^{χe}` at `∞`.
    pub chi: u32,
    pub line_coordinates: Vec<CycNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigensystemBlock {
    pub a: usize,
    pub eigenvalues: Vec<PlaceEigenvalue>,
    pub dim: usize,
    pub infinity_label: IrrepLabel,
    pub infinity_orbit: FrobOrbit,
    pub lines: Vec<EigenLine>,
    /// Eigenvalues recomputed under the second splitting agree.
    pub splitting_independent: bool,
}

/// Splits `hom` into Hecke eigensystems.
///
/// Fails with [`Error::NeedsMorePlaces`] when a block is reducible at `∞`,
/// and with [`Error::Falsified`] when a unit eigenspace is not a line.
pub fn decompose(ctx: &SpectralContext, hom: &HomSpace) -> Result<Vec<EigensystemBlock>> {
    let order = ctx.order;
    let g = &ctx.alg.group;
    let m = g.field_order();
    let scale = (order / m as usize) as i64;
    let a_unit = action_matrix(ctx, hom, &[ctx.infinity.unit_shifts[1]]);
    let a_pi = action_matrix(ctx, hom, &[ctx.infinity.pi_shift]);

    let mut lines: Vec<(u32, Vec<CycNumber>)> = vec![];
    let id = identity(order, hom.dim());
    for c in 0..m {
        let z = CycNumber::root(order, c as i64 * scale);
        let shifted: Matrix = a_unit
            .iter()
            .zip(&id)
            .map(|(row, irow)| row.iter().zip(irow).map(|(x, e)| x.sub(&e.mul(&z))).collect())
            .collect();
        let ker = kernel_of_dense(order, &shifted);
        if ker.len() > 1 {
            return Err(Error::Falsified(format!(
                "unit eigenspace for χ = {c} has dimension {}",
                ker.len()
            )));
        }
        if let Some(v) = ker.into_iter().next() {
            lines.push((c, normalize(v)));
        }
    }
    if lines.len() != hom.dim() {
        return Err(Error::Falsified(format!(
            "{} unit eigenlines in a space of dimension {}",
            lines.len(),
            hom.dim()
        )));
    }

    let hecke: Vec<Matrix> = ctx.hecke.iter().map(|h| action_matrix(ctx, hom, &h.shifts)).collect();
    let mut groups: BTreeMap<Vec<CycNumber>, Vec<usize>> = BTreeMap::new();
    for (idx, (_, v)) in lines.iter().enumerate() {
        let key = hecke
            .iter()
            .map(|h| eigenvalue_on(order, h, v))
            .collect::<Result<Vec<_>>>()?;
        groups.entry(key).or_default().push(idx);
    }

    let weights = ctx.table.weights();
    let group_order = g.order() as u64;
    let mut blocks = vec![];
    for (a, (key, members)) in groups.into_iter().enumerate() {
        let basis: Vec<Vec<CycNumber>> = members.iter().map(|&i| lines[i].1.clone()).collect();
        let restrict = |big: &Matrix| -> Result<Matrix> {
            let mut small = vec![vec![CycNumber::zero(order); basis.len()]; basis.len()];
            for (col, v) in basis.iter().enumerate() {
                let coords = coordinates_in(order, &basis, &mat_vec(order, big, v)).ok_or_else(|| {
                    Error::Consistency("Hecke eigenspace is not stable at ∞".into())
                })?;
                for (row, x) in coords.into_iter().enumerate() {
                    small[row][col] = x;
                }
            }
            Ok(small)
        };
        let r_unit = restrict(&a_unit)?;
        let r_pi = restrict(&a_pi)?;
        let chars = ctx
            .table
            .classes
            .iter()
            .map(|cls| {
                let h = cls.representative;
                let mut acc = identity(order, basis.len());
                for _ in 0..h.k {
                    acc = mat_mul(order, &acc, &r_pi);
                }
                for _ in 0..h.e {
                    acc = mat_mul(order, &acc, &r_unit);
                }
                trace(order, &acc)
                    .to_scalar()
                    .ok_or_else(|| Error::Consistency("non-integral character value at ∞".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let norm = inner_product(&chars, &chars, &weights, group_order)?;
        if norm != crate::cyclo::Rational::from_integer(1.into()) {
            return Err(Error::NeedsMorePlaces(format!(
                "block {a} of {:?} is reducible at ∞ (norm {norm})",
                hom.sigma
            )));
        }
        let mut label = None;
        for row in &ctx.table.rows {
            if inner_product(&chars, &row.traces, &weights, group_order)?.is_integer()
                && inner_product(&chars, &row.traces, &weights, group_order)?
                    == crate::cyclo::Rational::from_integer(1.into())
            {
                label = Some(row.label.clone());
                break;
            }
        }
        let infinity_label =
            label.ok_or_else(|| Error::Consistency("∞ character not found in the table".into()))?;

        let eigenvalues = key
            .iter()
            .zip(&ctx.hecke)
            .map(|(v, h)| {
                v.to_scalar()
                    .map(|value| PlaceEigenvalue {
                        place: h.place.clone(),
                        value,
                    })
                    .ok_or_else(|| Error::Consistency("non-integral Hecke eigenvalue".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let first = &basis[0];
        let mut splitting_independent = true;
        for (alt, v) in ctx.alt_shifts.iter().zip(&key) {
            let m_alt = action_matrix(ctx, hom, alt);
            if eigenvalue_on(order, &m_alt, first)? != *v {
                splitting_independent = false;
            }
        }
        blocks.push(EigensystemBlock {
            a,
            eigenvalues,
            dim: basis.len(),
            infinity_orbit: infinity_label.orbit.clone(),
            infinity_label,
            lines: members
                .iter()
                .map(|&i| EigenLine {
                    chi: lines[i].0,
                    line_coordinates: lines[i].1.clone(),
                })
                .collect(),
            splitting_independent,
        });
    }
    Ok(blocks)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub a: usize,
    pub eigenvalues: Vec<PlaceEigenvalue>,
    pub dim: usize,
    pub infinity_orbit: FrobOrbit,
    pub infinity_label: IrrepLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisLine {
    pub a: usize,
    pub chi: u32,
    pub line_coordinates: Vec<CycNumber>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossValidation {
    pub predicted_blocks: usize,
    pub predicted_orbit: FrobOrbit,
    pub count_ok: bool,
    pub orbit_ok: bool,
    /// Informational: the twist coordinate is a convention.
    pub twist_matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub sigma: IrrepLabel,
    pub dim: usize,
    pub blocks: Vec<BlockSummary>,
    pub claim_sum: usize,
    pub claim_ok: bool,
    #[serde(rename = "theorem12_sum")]
    pub block_dim_sum: u32,
    pub block_dims_ok: bool,
    pub projective_basis: Vec<BasisLine>,
    pub basis_ok: bool,
    pub splitting_independent: bool,
    pub cross_validation: CrossValidation,
    pub ok: bool,
}

pub fn projective_basis(blocks: &[EigensystemBlock]) -> Vec<BasisLine> {
    blocks
        .iter()
        .flat_map(|b| {
            b.lines.iter().map(move |l| BasisLine {
                a: b.a,
                chi: l.chi,
                line_coordinates: l.line_coordinates.clone(),
            })
        })
        .collect()
}

fn basis_is_valid(order: usize, dim: usize, lines: &[BasisLine]) -> bool {
    let labels: BTreeSet<(usize, u32)> = lines.iter().map(|l| (l.a, l.chi)).collect();
    if labels.len() != lines.len() || lines.len() != dim {
        return false;
    }
    let rows: Matrix = lines.iter().map(|l| l.line_coordinates.clone()).collect();
    kernel_of_dense(order, &rows).is_empty()
}

pub fn verify_claim(ctx: &SpectralContext, sigma: &IrrepLabel) -> Result<SigmaReport> {
    let hom = hom_space(ctx, sigma)?;
    let blocks = decompose(ctx, &hom)?;
    let g = &ctx.alg.group;
    let dim = sigma.dim();
    let claim_sum: usize = blocks.iter().map(|b| b.dim).sum();
    let block_dim_sum: u32 = blocks.iter().map(|b| b.dim as u32).sum();
    let rho0 = jl_inverse(sigma, g)?;
    let r0 = crate::tame::r_value(&rho0);

    let predicted = predicted_infinity_label(sigma, g);
    let predicted_blocks = if rho0.is_irreducible() {
        enumerate_a_tame(&rho0, g)?.len()
    } else {
        1
    };
    let cross_validation = CrossValidation {
        predicted_blocks,
        count_ok: blocks.len() == predicted_blocks,
        orbit_ok: blocks.iter().all(|b| b.infinity_orbit == predicted.orbit),
        twist_matches: blocks.iter().all(|b| b.infinity_label.s == predicted.s),
        predicted_orbit: predicted.orbit,
    };
    let projective = projective_basis(&blocks);
    let basis_ok = basis_is_valid(ctx.order, dim, &projective);
    let splitting_independent = blocks.iter().all(|b| b.splitting_independent);
    let claim_ok = claim_sum == dim;
    let block_dims_ok = block_dim_sum == r0;
    let ok = claim_ok
        && block_dims_ok
        && basis_ok
        && splitting_independent
        && cross_validation.count_ok
        && cross_validation.orbit_ok;
    Ok(SigmaReport {
        sigma: sigma.clone(),
        dim,
        blocks: blocks
            .iter()
            .map(|b| BlockSummary {
                a: b.a,
                eigenvalues: b.eigenvalues.clone(),
                dim: b.dim,
                infinity_orbit: b.infinity_orbit.clone(),
                infinity_label: b.infinity_label.clone(),
            })
            .collect(),
        claim_sum,
        claim_ok,
        block_dim_sum,
        block_dims_ok,
        projective_basis: projective,
        basis_ok,
        splitting_independent,
        cross_validation,
        ok,
    })
}

/// Dimension of the commutant of the left translations, over `Q`.
pub fn left_commutant_dim(alg: &AlgebraParams) -> usize {
    let g = &alg.group;
    let n = g.order();
    let mut ech = Echelon::new(1, n * n);
    // X·L_x = L_x·X reads X[i][x·j] = X[x⁻¹·i][j]
    for x in [g.frobenius(), g.field_generator()] {
        let xinv = g.inv(x);
        for i in 0..n {
            let src = g.index(g.mul(xinv, g.element_at(i)));
            for j in 0..n {
                let xj = g.index(g.mul(x, g.element_at(j)));
                let a = i * n + xj;
                let b = src * n + j;
                if a == b {
                    continue;
                }
                let row: SparseRow = [(a, CycNumber::one(1)), (b, CycNumber::from_int(1, -1))]
                    .into_iter()
                    .collect();
                ech.push(row);
            }
        }
    }
    n * n - ech.rank()
}

#[derive(Clone, Debug, Serialize)]
pub struct BimoduleCheck {
    pub commutant_dim: usize,
    pub sum_of_squares: usize,
    pub left_right_commute: bool,
    pub ok: bool,
}

pub fn bimodule_check(ctx: &SpectralContext) -> BimoduleCheck {
    let alg = &ctx.alg;
    let g = &alg.group;
    let commutant_dim = left_commutant_dim(alg);
    let sum_of_squares = ctx.table.rows.iter().map(|r| r.dim * r.dim).sum();
    let mut rights = vec![
        right_shift_matrix(alg, &[ctx.infinity.pi_shift]),
        right_shift_matrix(alg, &[ctx.infinity.unit_shifts[1]]),
    ];
    rights.extend(ctx.hecke.iter().map(|h| h.matrix(alg)));
    let left_right_commute = [g.frobenius(), g.field_generator()].iter().all(|&x| {
        let l = left_translation_matrix(alg, x);
        rights
            .iter()
            .all(|r| int_mat_mul(&l, r) == int_mat_mul(r, &l))
    });
    BimoduleCheck {
        commutant_dim,
        sum_of_squares,
        left_right_commute,
        ok: left_right_commute && commutant_dim == sum_of_squares,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralReport {
    pub schema_version: u32,
    pub q: u32,
    #[serde(rename = "N")]
    pub level: u32,
    pub eps: u32,
    pub places: Vec<Poly>,
    pub infinity: InfinityAction,
    pub bimodule: Option<BimoduleCheck>,
    pub sigmas: Vec<SigmaReport>,
    pub all_ok: bool,
}

impl SpectralReport {
    /// Runs every `σ` (or the given ones) in parallel; output order follows
    /// the canonical irrep order. Places are extended once if needed.
    pub fn compute(
        ctx: &SpectralContext,
        sigmas: Option<Vec<IrrepLabel>>,
        with_bimodule: bool,
    ) -> Result<Self> {
        let sigmas = sigmas.unwrap_or_else(|| enumerate_irreps(&ctx.alg.group));
        let first: Vec<Result<SigmaReport>> = sigmas.par_iter().map(|s| verify_claim(ctx, s)).collect();
        let extended = if first.iter().any(|r| matches!(r, Err(Error::NeedsMorePlaces(_)))) {
            Some(ctx.extended()?)
        } else {
            None
        };
        let reports = match &extended {
            None => first.into_iter().collect::<Result<Vec<_>>>()?,
            Some(ext) => sigmas.par_iter().map(|s| verify_claim(ext, s)).collect::<Result<Vec<_>>>()?,
        };
        let used = extended.as_ref().unwrap_or(ctx);
        let bimodule = with_bimodule.then(|| bimodule_check(used));
        let all_ok = reports.iter().all(|r| r.ok) && bimodule.as_ref().map_or(true, |b| b.ok);
        Ok(SpectralReport {
            schema_version: SCHEMA_VERSION,
            q: used.alg.q,
            level: used.alg.level,
            eps: used.alg.eps,
            places: used.places(),
            infinity: used.infinity.clone(),
            bimodule,
            sigmas: reports,
            all_ok,
        })
    }
}

/// Runs `f` on a pool with the given worker count, or on the global pool.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}
