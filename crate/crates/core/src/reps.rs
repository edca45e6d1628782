//! Irreducible representations of `Γ(q, n, N)` by Clifford theory.
//!
//! The field part `Z/M` is a cyclic normal subgroup. Its characters
//! `e ↦ ζ_M^{ce}` are permuted by Frobenius via `c ↦ qc`; an orbit of size
//! `f` has stabilizer `⟨Φ^f⟩ · Z/M`, and the extensions of the character to
//! the stabilizer are indexed by `s ∈ Z/(R/f)`. Inducing gives an
//! `f`-dimensional irreducible, realized here as a monomial model.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::One;

use crate::cyclo::{sparse_inner_product, CycScalar, SparseCyc};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClass, GroupElement, GroupParams};

/// A Frobenius orbit of character exponents, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FrobOrbit(Vec<u32>);

impl FrobOrbit {
    /// The orbit of `c` under `c ↦ qc mod M`.
    pub fn of(params: &GroupParams, c: u32) -> Self {
        let m = params.field_order() as u64;
        let c = c as u64 % m;
        let mut members = vec![c as u32];
        let mut x = c * params.q as u64 % m;
        while x != c {
            members.push(x as u32);
            x = x * params.q as u64 % m;
        }
        members.sort_unstable();
        FrobOrbit(members)
    }

    /// Validate a user-supplied member list: it must be a full orbit.
    pub fn from_members(params: &GroupParams, mut members: Vec<u32>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let Some(&first) = members.first() else {
            return Err(Error::InvalidLabel("empty orbit".into()));
        };
        let orbit = Self::of(params, first);
        if first >= params.field_order() || orbit.0 != members {
            return Err(Error::InvalidLabel(format!(
                "{members:?} is not a Frobenius orbit modulo {}",
                params.field_order()
            )));
        }
        Ok(orbit)
    }

    pub fn members(&self) -> &[u32] {
        &self.0
    }

    pub fn representative(&self) -> u32 {
        self.0[0]
    }

    pub fn size(&self) -> u32 {
        self.0.len() as u32
    }

    pub fn contains(&self, c: u32) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// `{-c mod M}`.
    pub fn negated(&self, params: &GroupParams) -> Self {
        let m = params.field_order();
        Self::of(params, (m - self.representative()) % m)
    }
}

/// All Frobenius orbits on `Z/M`, ordered by smallest member.
pub fn enumerate_orbits(params: &GroupParams) -> Vec<FrobOrbit> {
    let m = params.field_order();
    let mut seen = vec![false; m as usize];
    let mut out = vec![];
    for c in 0..m {
        if seen[c as usize] {
            continue;
        }
        let orbit = FrobOrbit::of(params, c);
        for &x in orbit.members() {
            seen[x as usize] = true;
        }
        out.push(orbit);
    }
    out
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of exponents in `Z/(q^n - 1)` whose orbit has size exactly `d`
/// (`d | n`): `Σ_{d'|d} μ(d/d') (q^{d'} - 1)`.
pub fn necklace_exponent_count(q: u32, d: u32) -> u64 {
    let mut total: i64 = 0;
    for dp in 1..=d {
        if d % dp == 0 {
            total += mobius((d / dp) as u64) * ((q as i64).pow(dp) - 1);
        }
    }
    total as u64
}

/// Number of regular orbits (size exactly `n`).
pub fn regular_orbit_count(q: u32, n: u32) -> u64 {
    necklace_exponent_count(q, n) / n as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub orbit: FrobOrbit,
    pub s: u32,
}

impl IrrepLabel {
    pub fn new(params: &GroupParams, orbit: FrobOrbit, s: u32) -> Result<Self> {
        let label = IrrepLabel { orbit, s };
        label.validate(params)?;
        Ok(label)
    }

    pub fn dim(&self) -> usize {
        self.orbit.size() as usize
    }

    pub fn validate(&self, params: &GroupParams) -> Result<()> {
        FrobOrbit::from_members(params, self.orbit.0.clone())?;
        let bound = params.frob_order() / self.orbit.size();
        if self.s >= bound {
            return Err(Error::InvalidLabel(format!(
                "twist s = {} out of range Z/{bound}",
                self.s
            )));
        }
        Ok(())
    }

    /// The trivial representation.
    pub fn trivial(params: &GroupParams) -> Self {
        IrrepLabel {
            orbit: FrobOrbit::of(params, 0),
            s: 0,
        }
    }

    /// Parses `trivial`, `c`, `c1,c2,…` or either form followed by `:s`,
    /// with optional braces around the orbit. A single member stands for
    /// its whole orbit.
    pub fn parse(text: &str, params: &GroupParams) -> Result<Self> {
        let text = text.trim();
        if text == "trivial" {
            return Ok(Self::trivial(params));
        }
        let bad = || Error::InvalidLabel(format!("cannot parse '{text}'"));
        let (orbit_part, s) = match text.rsplit_once(':') {
            Some((o, s)) => (o, s.trim().parse::<u32>().map_err(|_| bad())?),
            None => (text, 0),
        };
        let members = orbit_part
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .split(',')
            .map(|m| m.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let orbit = match members.as_slice() {
            [c] if *c < params.field_order() => FrobOrbit::of(params, *c),
            [_] => return Err(Error::InvalidLabel(format!("{text}: character out of range"))),
            _ => FrobOrbit::from_members(params, members)?,
        };
        Self::new(params, orbit, s)
    }
}

/// Labels in canonical order `(orbit representative, s)`.
pub fn enumerate_irreps(params: &GroupParams) -> Vec<IrrepLabel> {
    let r = params.frob_order();
    enumerate_orbits(params)
        .into_iter()
        .flat_map(|orbit| {
            let count = r / orbit.size();
            (0..count).map(move |s| IrrepLabel {
                orbit: orbit.clone(),
                s,
            })
        })
        .collect()
}

/// A monomial matrix over roots of unity of a fixed order `m`:
/// column `i` holds `ζ_m^{exps[i]}` in row `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub order: usize,
    pub perm: Vec<usize>,
    pub exps: Vec<usize>,
}

impl Monomial {
    pub fn identity(order: usize, dim: usize) -> Self {
        Monomial {
            order,
            perm: (0..dim).collect(),
            exps: vec![0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut perm = vec![0; other.dim()];
        let mut exps = vec![0; other.dim()];
        for i in 0..other.dim() {
            let j = other.perm[i];
            perm[i] = self.perm[j];
            exps[i] = (other.exps[i] + self.exps[j]) % self.order;
        }
        Monomial {
            order: self.order,
            perm,
            exps,
        }
    }

    pub fn trace(&self) -> CycScalar {
        let mut t = CycScalar::zero(self.order);
        let one = BigInt::one();
        for i in 0..self.dim() {
            if self.perm[i] == i {
                t.add_root(self.exps[i] as i64, &one);
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<CycScalar>> {
        let n = self.dim();
        let mut out = vec![vec![CycScalar::zero(self.order); n]; n];
        for i in 0..n {
            out[self.perm[i]][i] = CycScalar::root(self.order, self.exps[i] as i64);
        }
        out
    }
}

/// Dense product of square cyclotomic matrices.
pub fn dense_mul(a: &[Vec<CycScalar>], b: &[Vec<CycScalar>]) -> Result<Vec<Vec<CycScalar>>> {
    let n = a.len();
    let order = a[0][0].order();
    let mut out = vec![vec![CycScalar::zero(order); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = CycScalar::zero(order);
            for k in 0..n {
                acc = acc.checked_add(&a[i][k].checked_mul(&b[k][j])?)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepModel {
    pub label: IrrepLabel,
    pub params: GroupParams,
    /// Ambient cyclotomic order `lcm(M, R)`.
    pub order: usize,
    /// Line `i` carries the field-part character `c·q^i`.
    pub basis_tags: Vec<u32>,
    frobenius: Monomial,
    field: Monomial,
}

/// Monomial model of the representation induced from the stabilizer.
///
/// `Φ e_i = e_{i+1}` for `i < f - 1` and `Φ e_{f-1} = ζ_{R/f}^s e_0`;
/// `u e_i = ζ_M^{t_i} e_i` with `t_i = c q^i`, `c` the orbit representative.
pub fn build_model(label: &IrrepLabel, params: &GroupParams) -> Result<IrrepModel> {
    label.validate(params)?;
    let order = params.cyclotomic_order();
    let m = params.field_order() as usize;
    let r = params.frob_order() as usize;
    let f = label.dim();
    let c = label.orbit.representative() as u64;
    let basis_tags: Vec<u32> = (0..f)
        .map(|i| (c * params.q_pow(i as u32) as u64 % m as u64) as u32)
        .collect();
    let field = Monomial {
        order,
        perm: (0..f).collect(),
        exps: basis_tags
            .iter()
            .map(|&t| t as usize * (order / m) % order)
            .collect(),
    };
    let mut exps = vec![0; f];
    exps[f - 1] = label.s as usize * (order * f / r) % order;
    let frobenius = Monomial {
        order,
        perm: (0..f).map(|i| (i + 1) % f).collect(),
        exps,
    };
    Ok(IrrepModel {
        label: label.clone(),
        params: *params,
        order,
        basis_tags,
        frobenius,
        field,
    })
}

impl IrrepModel {
    pub fn dim(&self) -> usize {
        self.basis_tags.len()
    }

    pub fn frobenius_monomial(&self) -> &Monomial {
        &self.frobenius
    }

    pub fn field_monomial(&self) -> &Monomial {
        &self.field
    }

    pub fn frobenius_matrix(&self) -> Vec<Vec<CycScalar>> {
        self.frobenius.to_dense()
    }

    pub fn field_matrix(&self) -> Vec<Vec<CycScalar>> {
        self.field.to_dense()
    }

    /// Matrix of `Φ^k u^e` in closed form.
    pub fn element_monomial(&self, g: GroupElement) -> Monomial {
        let f = self.dim();
        let m = self.params.field_order() as usize;
        let r = self.params.frob_order() as usize;
        let step = self.label.s as usize * (self.order * f / r) % self.order;
        let k = g.k as usize;
        let mut perm = vec![0; f];
        let mut exps = vec![0; f];
        for i in 0..f {
            let wraps = (i + k) / f;
            perm[i] = (i + k) % f;
            let field = self.basis_tags[i] as usize * g.e as usize % m * (self.order / m);
            exps[i] = (field + wraps % self.order * step) % self.order;
        }
        Monomial {
            order: self.order,
            perm,
            exps,
        }
    }

    /// Matrix of `Φ^k u^e` as a word in the generator matrices.
    pub fn element_monomial_by_word(&self, g: GroupElement) -> Monomial {
        let mut acc = Monomial::identity(self.order, self.dim());
        for _ in 0..g.k {
            acc = acc.mul(&self.frobenius);
        }
        for _ in 0..g.e {
            acc = acc.mul(&self.field);
        }
        acc
    }

    pub fn trace(&self, g: GroupElement) -> CycScalar {
        self.element_monomial(g).trace()
    }
}

/// Character value from the induced-character formula, evaluated by
/// conjugating into the stabilizer with the group law alone.
pub fn induced_character(label: &IrrepLabel, params: &GroupParams, g: GroupElement) -> CycScalar {
    let order = params.cyclotomic_order();
    let m = params.field_order() as usize;
    let r = params.frob_order() as usize;
    let f = label.dim();
    let c = label.orbit.representative() as usize;
    let mut value = CycScalar::zero(order);
    let one = BigInt::one();
    for i in 0..f {
        let x = params.element(i as i64, 0);
        let h = params.mul(params.mul(params.inv(x), g), x);
        if h.k as usize % f != 0 {
            continue;
        }
        let j = h.k as usize / f;
        let exp = label.s as usize * j * (order * f / r) + c * h.e as usize * (order / m);
        value.add_root((exp % order) as i64, &one);
    }
    value
}

/// Traces on the conjugacy classes, in class order.
pub fn character_of(model: &IrrepModel, classes: &[ConjugacyClass]) -> Vec<(GroupElement, CycScalar)> {
    classes
        .iter()
        .map(|cl| (cl.representative, model.trace(cl.representative)))
        .collect()
}

/// Multiplicities of every field-part character in the restriction, by
/// the inner product of restricted characters.
pub fn restricted_multiplicities(label: &IrrepLabel, params: &GroupParams) -> Result<Vec<u32>> {
    let model = build_model(label, params)?;
    let m = params.field_order();
    let order = model.order;
    let restricted: Vec<SparseCyc> = (0..m)
        .map(|e| SparseCyc::from(&model.trace(GroupElement { k: 0, e })))
        .collect();
    let weights = vec![1u64; m as usize];
    (0..m)
        .map(|chi| {
            let lin: Vec<SparseCyc> = (0..m)
                .map(|e| {
                    let exp = chi as u64 * e as u64 % m as u64 * (order as u64 / m as u64);
                    SparseCyc {
                        order,
                        terms: vec![(exp as usize, BigInt::one())],
                    }
                })
                .collect();
            let ip = sparse_inner_product(&restricted, &lin, &weights, m as u64)?;
            rational_to_count(&ip)
        })
        .collect()
}

fn rational_to_count(r: &crate::cyclo::Rational) -> Result<u32> {
    use num_traits::ToPrimitive;
    if !r.is_integer() {
        return Err(Error::Consistency(format!("multiplicity {r} is not an integer")));
    }
    r.to_integer()
        .to_u32()
        .ok_or_else(|| Error::Consistency(format!("multiplicity {r} out of range")))
}

/// Dimension of the `χ`-eigenspace of the field part, computed from the
/// restricted character and from the basis tags; the two must agree.
pub fn chi_multiplicity(label: &IrrepLabel, chi: u32, params: &GroupParams) -> Result<u32> {
    let m = params.field_order();
    if chi >= m {
        return Err(Error::InvalidParams(format!("χ = {chi} out of range Z/{m}")));
    }
    let by_character = restricted_multiplicities(label, params)?[chi as usize];
    let model = build_model(label, params)?;
    let by_tags = model.basis_tags.iter().filter(|&&t| t == chi).count() as u32;
    if by_character != by_tags {
        return Err(Error::Consistency(format!(
            "χ = {chi}: character gives {by_character}, basis tags give {by_tags}"
        )));
    }
    Ok(by_tags)
}

/// `(tag, line)` for every coordinate line of the model.
pub fn eigenlines(model: &IrrepModel) -> Vec<(u32, usize)> {
    model
        .basis_tags
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassInfo {
    pub representative: GroupElement,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub label: IrrepLabel,
    pub dim: usize,
    pub traces: Vec<CycScalar>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub params: GroupParams,
    pub order: usize,
    pub classes: Vec<ClassInfo>,
    pub rows: Vec<CharacterRow>,
}

impl CharacterTable {
    pub fn compute(params: &GroupParams) -> Result<Self> {
        let classes = params.conjugacy_classes();
        let labels = enumerate_irreps(params);
        let rows = labels
            .par_iter()
            .map(|label| {
                let model = build_model(label, params)?;
                Ok(CharacterRow {
                    label: label.clone(),
                    dim: model.dim(),
                    traces: character_of(&model, &classes)
                        .into_iter()
                        .map(|(_, v)| v)
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacterTable {
            params: *params,
            order: params.cyclotomic_order(),
            classes: classes
                .iter()
                .map(|c| ClassInfo {
                    representative: c.representative,
                    size: c.size(),
                })
                .collect(),
            rows,
        })
    }

    pub fn weights(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.size as u64).collect()
    }

    /// The full Gram matrix of character inner products.
    pub fn gram(&self) -> Result<Vec<Vec<crate::cyclo::Rational>>> {
        let w = self.weights();
        let n = self.params.order() as u64;
        let sparse: Vec<Vec<SparseCyc>> = self
            .rows
            .iter()
            .map(|r| r.traces.iter().map(SparseCyc::from).collect())
            .collect();
        sparse
            .par_iter()
            .map(|a| {
                sparse
                    .iter()
                    .map(|b| sparse_inner_product(a, b, &w, n))
                    .collect::<Result<Vec<_>>>()
            })
            .collect()
    }
}
