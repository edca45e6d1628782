//! Strong-approximation factorization for `D = (ε, t)` and the resulting
//! finite model `X_N = Γ(q, 2, N)` of the adelic double coset space.
//!
//! An adele supported at `0`, `∞` and at most one split place `s` is
//! described by its class in `X_N` at `0`, its class in `Z ⋉ F_{q²}^*` at
//! `∞`, and at `s` by a line `ℓ ∈ P¹(k_s)` naming the lattice `g_s^{-1} O_s²`.
//! The factorization finds the unique global `γ` with `g γ ∈ D_0^* K¹`:
//!
//! * at `∞`, `reduce_∞(γ)` is the inverse of the class of `g_∞`;
//! * at `s`, `γ` is integral, `v_s(nrd γ) = 1` and `ψ_s(γ) mod π_s` has image `ℓ`;
//! * at every other finite place except `0`, `γ` is a unit.
//!
//! The point of `X_N` is then `g_0 · r(γ)` with `r` the reduction at `0`.
//!
//! The search runs over `γ = t^{-m}(A + B i + (C + D i) j)`. For fixed `m`
//! the norm `N(A + Bi) - t N(C + Di)` is a known polynomial `P`, so a sorted
//! table of `N(A + Bi)` is matched against `P + t N(C + Di)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{is_irreducible, FiniteField, Poly};
use crate::group::GroupElement;
use crate::quaternion::{
    infinity_class, infinity_inverse, residue_field_at, zero_class, AlgebraParams,
    LocalReduction, OrderElement,
};
use crate::SCHEMA_VERSION;

/// Largest norm table or scan the search will attempt.
pub const MAX_SEARCH_SPACE: u64 = 1 << 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    pub degree_bound: usize,
    pub depth_bound: usize,
    /// Scan every level within the bounds and require a single witness.
    pub exhaustive: bool,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            degree_bound: 6,
            depth_bound: 16,
            exhaustive: false,
        }
    }
}

impl SearchBounds {
    fn exceeded(&self) -> Error {
        Error::SearchBoundExceeded {
            degree_bound: self.degree_bound,
            depth_bound: self.depth_bound,
        }
    }
}

/// A point of `P¹(k_s)`: `Finite(x)` is the span of `(1, x)`, `Infinity`
/// the span of `(0, 1)`. Finite points come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CosetLabel {
    Finite(u32),
    Infinity,
}

/// `ψ_s: D → M_2(k_s)` with `i ↦ [[0, ε], [1, 0]]` and
/// `j ↦ [[p, -εw], [w, -p]]`, `p² - εw² = t mod π_s`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalSplitting {
    pub place: Poly,
    pub degree: usize,
    #[serde(skip)]
    pub field: FiniteField,
    pub t_bar: u32,
    pub p: u32,
    pub w: u32,
    /// Position of `(p, w)` among all solutions in lexicographic order.
    pub index: usize,
    #[serde(skip)]
    i_mat: [[u32; 2]; 2],
    #[serde(skip)]
    j_mat: [[u32; 2]; 2],
}

/// Validate a finite place other than `0`.
pub fn check_place(alg: &AlgebraParams, place: &Poly) -> Result<()> {
    if place.degree().unwrap_or(0) == 0 || place.lead() != 1 {
        return Err(Error::InvalidParams(format!(
            "place {} must be monic of positive degree",
            place.display()
        )));
    }
    if *place == Poly::t() {
        return Err(Error::InvalidParams("t is ramified, not a split place".into()));
    }
    if !is_irreducible(&alg.fq, place) {
        return Err(Error::InvalidParams(format!(
            "place {} is reducible",
            place.display()
        )));
    }
    Ok(())
}

impl LocalSplitting {
    pub fn new(alg: &AlgebraParams, place: &Poly, index: usize) -> Result<Self> {
        check_place(alg, place)?;
        let (k, t_bar) = residue_field_at(alg, place)?;
        let eps = alg.eps;
        let (p, w) = (0..k.order())
            .flat_map(|p| (0..k.order()).map(move |w| (p, w)))
            .filter(|&(p, w)| k.sub(k.mul(p, p), k.mul(eps, k.mul(w, w))) == t_bar)
            .nth(index)
            .ok_or_else(|| {
                Error::InvalidParams(format!("no splitting with index {index}"))
            })?;
        let i_mat = [[0, eps], [1, 0]];
        let j_mat = [[p, k.neg(k.mul(eps, w))], [w, k.neg(p)]];
        Ok(LocalSplitting {
            place: place.clone(),
            degree: place.degree().unwrap_or(0),
            field: k,
            t_bar,
            p,
            w,
            index,
            i_mat,
            j_mat,
        })
    }

    /// `q^{deg s} + 1` labels in canonical order.
    pub fn labels(&self) -> Vec<CosetLabel> {
        (0..self.field.order())
            .map(CosetLabel::Finite)
            .chain(std::iter::once(CosetLabel::Infinity))
            .collect()
    }

    pub fn matrix(&self, x: &OrderElement) -> Option<[[u32; 2]; 2]> {
        x.eval_matrix(&self.field, self.t_bar, &self.i_mat, &self.j_mat)
    }

    /// Column space of `ψ_s(x) mod π_s` when it has rank one.
    pub fn image_line(&self, x: &OrderElement) -> Option<CosetLabel> {
        let k = &self.field;
        let m = self.matrix(x)?;
        let det = k.sub(k.mul(m[0][0], m[1][1]), k.mul(m[0][1], m[1][0]));
        if det != 0 {
            return None;
        }
        let col = (0..2).map(|c| (m[0][c], m[1][c])).find(|&v| v != (0, 0))?;
        Some(match col {
            (0, _) => CosetLabel::Infinity,
            (a, b) => CosetLabel::Finite(k.div(b, a).expect("a is nonzero")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceCoset {
    pub place: Poly,
    pub line: CosetLabel,
}

/// An adele trivial outside `{0, ∞, s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adele {
    pub zero: GroupElement,
    pub infinity: LocalReduction,
    pub place: Option<PlaceCoset>,
}

impl Adele {
    pub fn identity() -> Self {
        Adele {
            zero: GroupElement { k: 0, e: 0 },
            infinity: LocalReduction { k: 0, e: 0 },
            place: None,
        }
    }

    pub fn at_infinity(h: LocalReduction) -> Self {
        Adele {
            infinity: h,
            ..Self::identity()
        }
    }

    pub fn hecke(place: Poly, line: CosetLabel) -> Self {
        Adele {
            place: Some(PlaceCoset { place, line }),
            ..Self::identity()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// `g_0 · r(γ)` in `X_N`.
    pub point: GroupElement,
    pub witness: OrderElement,
    /// `r(γ)`.
    pub shift: GroupElement,
}

/// `c · t^a · π^δ` for a norm of the required shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormShape {
    pub constant: u32,
    pub t_power: usize,
    pub place: Option<Poly>,
}

/// Split a nonzero polynomial as `c t^a π` (or `c t^a`) with `π` monic
/// irreducible and not `t`; `None` if it has any other shape.
pub fn classify_norm(alg: &AlgebraParams, p: &Poly) -> Option<NormShape> {
    let f = &alg.fq;
    let a = p.valuation()?;
    let rest = p.unshift(a);
    let c = rest.lead();
    let monic = rest.scale(f.inv(c)?, f);
    if monic.degree() == Some(0) {
        return Some(NormShape {
            constant: c,
            t_power: a,
            place: None,
        });
    }
    is_irreducible(f, &monic).then_some(NormShape {
        constant: c,
        t_power: a,
        place: Some(monic),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct TableKey {
    d_ab: usize,
    top: Option<u32>,
    len: usize,
}

/// Sorted `(encoded N(A + Bi), index)` pairs.
struct NormTable {
    free: usize,
    entries: Vec<(u64, u32)>,
}

struct Level {
    m: usize,
    d_p: usize,
    d_ab: usize,
    d_cd: Option<usize>,
    target: Poly,
}

/// Caches norm tables and local splittings for one algebra.
pub struct Factorizer {
    pub alg: AlgebraParams,
    pub splitting_index: usize,
    tables: Mutex<HashMap<TableKey, Arc<OnceLock<NormTable>>>>,
    splittings: Mutex<HashMap<Poly, Arc<LocalSplitting>>>,
}

impl Factorizer {
    pub fn new(alg: AlgebraParams) -> Self {
        Self::with_splitting_index(alg, 0)
    }

    pub fn with_splitting_index(alg: AlgebraParams, splitting_index: usize) -> Self {
        Factorizer {
            alg,
            splitting_index,
            tables: Mutex::new(HashMap::new()),
            splittings: Mutex::new(HashMap::new()),
        }
    }

    pub fn splitting(&self, place: &Poly) -> Result<Arc<LocalSplitting>> {
        if let Some(s) = self.splittings.lock().expect("lock").get(place) {
            return Ok(s.clone());
        }
        let s = Arc::new(LocalSplitting::new(&self.alg, place, self.splitting_index)?);
        self.splittings
            .lock()
            .expect("lock")
            .insert(place.clone(), s.clone());
        Ok(s)
    }

    /// Levels `m` whose norm target fits the bounds, lowest first.
    fn levels(
        &self,
        target: LocalReduction,
        place: Option<&Poly>,
        bounds: &SearchBounds,
    ) -> Vec<Level> {
        let f = &self.alg.fq;
        let w = self.alg.residue_exp(target.e as i64);
        let k = target.k;
        let sign = if k.rem_euclid(2) == 0 { 1 } else { f.neg(1) };
        let c = f.mul(sign, self.alg.residue_norm(w));
        let deg_s = place.map_or(0, |p| p.degree().unwrap_or(0)) as i64;
        let a = -k - deg_s;
        let m0 = if a >= 0 { 0 } else { (-a + 1) / 2 };
        let mut out = vec![];
        for m in m0.. {
            let d_p = 2 * m - k;
            let d_ab = d_p / 2;
            if d_ab as usize > bounds.degree_bound || m as usize > bounds.depth_bound {
                break;
            }
            let t_pow = (a + 2 * m) as usize;
            let mut poly = Poly::monomial(c, t_pow);
            if let Some(p) = place {
                poly = poly.mul(p, f);
            }
            out.push(Level {
                m: m as usize,
                d_p: d_p as usize,
                d_ab: d_ab as usize,
                d_cd: (d_p >= 1).then(|| ((d_p - 1) / 2) as usize),
                target: poly,
            });
        }
        out
    }

    fn q(&self) -> u64 {
        self.alg.q as u64
    }

    fn table(&self, key: TableKey) -> Result<Arc<OnceLock<NormTable>>> {
        let q = self.q();
        let free = if key.top.is_some() { key.d_ab } else { key.d_ab + 1 };
        let size = q.checked_pow(2 * free as u32).filter(|&s| s <= MAX_SEARCH_SPACE);
        if size.is_none() {
            return Err(Error::SearchBoundExceeded {
                degree_bound: key.d_ab,
                depth_bound: 0,
            });
        }
        let cell = self
            .tables
            .lock()
            .expect("lock")
            .entry(key)
            .or_default()
            .clone();
        cell.get_or_init(|| self.build_table(key, free));
        Ok(cell)
    }

    fn build_table(&self, key: TableKey, free: usize) -> NormTable {
        let q = self.q();
        let count = q.pow(2 * free as u32);
        let top = key.top.map(|u| self.alg.residue_parts(u));
        let kernel = &NormKernel::new(&self.alg);
        let mut entries: Vec<(u64, u32)> = chunk_starts(count)
            .into_par_iter()
            .flat_map_iter(|(start, end)| {
                let mut odo = Odometer::new(self.alg.q, free, key.d_ab, top, start);
                let mut buf = [0u32; MAX_COEFFS];
                (start..end).map(move |idx| {
                    kernel.norm_into(odo.x(), odo.y(), &mut buf);
                    let k = encode_window(&buf, 0, key.len, q);
                    odo.advance();
                    (k, idx as u32)
                })
            })
            .collect();
        entries.par_sort_unstable();
        NormTable { free, entries }
    }

    /// Coefficient vectors of length `deg + 1` from a base-`q` index; the
    /// top coefficients are fixed when `top` is given.
    fn decode_pair(
        &self,
        idx: u64,
        free: usize,
        deg: usize,
        top: Option<(u32, u32)>,
    ) -> (Vec<u32>, Vec<u32>) {
        let odo = Odometer::new(self.alg.q, free, deg, top, idx);
        (odo.x().to_vec(), odo.y().to_vec())
    }

    /// All canonical `γ` at level `m` with the prescribed norm and
    /// reduction at `∞`, in canonical order.
    fn candidates(&self, level: &Level, target: LocalReduction) -> Result<Vec<OrderElement>> {
        let alg = &self.alg;
        let q = self.q();
        let w = alg.residue_exp(target.e as i64);
        let len = level.d_p + 1;
        if len > MAX_COEFFS / 2 || (len as f64) * (q as f64).log2() >= 63.0 {
            return Err(Error::SearchBoundExceeded {
                degree_bound: level.d_ab,
                depth_bound: level.m,
            });
        }
        let even = level.d_p % 2 == 0;
        let key = TableKey {
            d_ab: level.d_ab,
            top: even.then_some(w),
            len,
        };
        let cell = self.table(key)?;
        let table = cell.get().expect("table initialized");
        let (cd_free, cd_top) = match (level.d_cd, even) {
            (None, _) => (0, None),
            (Some(d), true) => (d + 1, None),
            (Some(d), false) => (d, Some(alg.residue_parts(alg.residue_conj(w)))),
        };
        let cd_deg = level.d_cd.unwrap_or(0);
        let count = q
            .checked_pow(2 * cd_free as u32)
            .filter(|&s| s <= MAX_SEARCH_SPACE)
            .ok_or(Error::SearchBoundExceeded {
                degree_bound: level.d_ab,
                depth_bound: level.m,
            })?;
        let mut target_buf = [0u32; MAX_COEFFS];
        for (k, &c) in level.target.coeffs().iter().enumerate() {
            target_buf[k] = c;
        }
        let kernel = NormKernel::new(alg);
        let ab_top = even.then(|| alg.residue_parts(w));
        // (C, D) index and matching (A, B) table indices
        let hits: Vec<(u64, u32)> = chunk_starts(count)
            .into_par_iter()
            .flat_map_iter(|(start, end)| {
                let mut odo = Odometer::new(alg.q, cd_free, cd_deg, cd_top, start);
                let mut buf = [0u32; MAX_COEFFS];
                let mut out = vec![];
                for idx in start..end {
                    if level.d_cd.is_some() {
                        kernel.norm_into(odo.x(), odo.y(), &mut buf);
                    } else {
                        buf.fill(0);
                    }
                    // key of P + t N(C + D i)
                    let mut key = 0u64;
                    for k in (0..len).rev() {
                        let s = if k >= 1 { buf[k - 1] } else { 0 };
                        key = key * q + kernel.add(target_buf[k], s) as u64;
                    }
                    let lo = table.entries.partition_point(|e| e.0 < key);
                    out.extend(
                        table.entries[lo..]
                            .iter()
                            .take_while(|e| e.0 == key)
                            .map(|e| (idx, e.1)),
                    );
                    odo.advance();
                }
                out
            })
            .collect();
        let mut found: Vec<OrderElement> = hits
            .into_iter()
            .map(|(cd_idx, ab_idx)| {
                let (a, b) = self.decode_pair(ab_idx as u64, table.free, level.d_ab, ab_top);
                let (c, d) = if level.d_cd.is_some() {
                    self.decode_pair(cd_idx, cd_free, cd_deg, cd_top)
                } else {
                    (vec![], vec![])
                };
                OrderElement {
                    m: level.m as u32,
                    a: Poly::from_coeffs(a),
                    b: Poly::from_coeffs(b),
                    c: Poly::from_coeffs(c),
                    d: Poly::from_coeffs(d),
                }
            })
            .collect();
        found.retain(|g| {
            g.m == 0 || g.parts().iter().any(|p| !p.is_zero() && p.coeff(0) != 0)
        });
        for g in &found {
            if g.nrd_numerator(alg) != level.target {
                return Err(Error::Consistency(format!(
                    "norm mismatch for {}",
                    g.display()
                )));
            }
            if infinity_class(g, alg)? != target {
                return Err(Error::Consistency(format!(
                    "reduction at infinity mismatch for {}",
                    g.display()
                )));
            }
        }
        found.sort();
        Ok(found)
    }

    /// The factorization of `g`: the unique `γ` with `g γ ∈ D_0^* K¹`.
    pub fn factorize(&self, g: &Adele, bounds: &SearchBounds) -> Result<Factorization> {
        let alg = &self.alg;
        let target = infinity_inverse(g.infinity, alg);
        let splitting = match &g.place {
            Some(pc) => Some((self.splitting(&pc.place)?, pc.line)),
            None => None,
        };
        let place = splitting.as_ref().map(|(s, _)| s.place.clone());
        let mut witnesses = vec![];
        for level in self.levels(target, place.as_ref(), bounds) {
            for gamma in self.candidates(&level, target)? {
                let ok = match &splitting {
                    Some((s, line)) => s.image_line(&gamma) == Some(*line),
                    None => true,
                };
                if ok {
                    witnesses.push(gamma);
                }
            }
            if !bounds.exhaustive && !witnesses.is_empty() {
                break;
            }
        }
        match witnesses.len() {
            0 => Err(bounds.exceeded()),
            1 => {
                let witness = witnesses.pop().expect("one witness");
                let shift = zero_class(&witness, alg)?;
                Ok(Factorization {
                    point: alg.group.mul(g.zero, shift),
                    witness,
                    shift,
                })
            }
            count => Err(Error::NonUnique { count }),
        }
    }

    /// Witnesses for every coset of the Hecke operator at `place`, found
    /// in one pass over the levels.
    pub fn hecke_witnesses(
        &self,
        place: &Poly,
        bounds: &SearchBounds,
    ) -> Result<Vec<(CosetLabel, OrderElement)>> {
        let splitting = self.splitting(place)?;
        let labels = splitting.labels();
        let target = LocalReduction { k: 0, e: 0 };
        let mut by_line: BTreeMap<CosetLabel, Vec<OrderElement>> = BTreeMap::new();
        for level in self.levels(target, Some(place), bounds) {
            for gamma in self.candidates(&level, target)? {
                let line = splitting.image_line(&gamma).ok_or_else(|| {
                    Error::Consistency(format!("{} has no image line", gamma.display()))
                })?;
                by_line.entry(line).or_default().push(gamma);
            }
            if !bounds.exhaustive && by_line.len() == labels.len() {
                break;
            }
        }
        if let Some(v) = by_line.values().find(|v| v.len() > 1) {
            return Err(Error::NonUnique { count: v.len() });
        }
        if by_line.len() != labels.len() {
            return Err(bounds.exceeded());
        }
        Ok(by_line
            .into_iter()
            .map(|(l, mut v)| (l, v.pop().expect("one witness")))
            .collect())
    }
}

/// Capacity of the fixed coefficient buffers used by the search.
const MAX_COEFFS: usize = 64;

/// Index ranges for the parallel scans.
fn chunk_starts(count: u64) -> Vec<(u64, u64)> {
    const CHUNK: u64 = 1 << 14;
    (0..count.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(count)))
        .collect()
}

fn encode_window(buf: &[u32], shift: usize, len: usize, q: u64) -> u64 {
    let mut key = 0u64;
    for k in (0..len).rev() {
        let c = if k >= shift { buf[k - shift] } else { 0 };
        key = key * q + c as u64;
    }
    key
}

/// `N(x + y i) = x² - ε y²` on coefficient arrays, with plain integer
/// arithmetic when `q` is prime.
struct NormKernel<'a> {
    f: &'a FiniteField,
    q: u32,
    prime: bool,
    neps: u32,
}

impl<'a> NormKernel<'a> {
    fn new(alg: &'a AlgebraParams) -> Self {
        NormKernel {
            f: &alg.fq,
            q: alg.q,
            prime: alg.fq.characteristic() == alg.q,
            neps: alg.fq.neg(alg.eps),
        }
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.prime {
            (a + b) % self.q
        } else {
            self.f.add(a, b)
        }
    }

    fn norm_into(&self, x: &[u32], y: &[u32], out: &mut [u32; MAX_COEFFS]) {
        let n = x.len();
        out[..2 * n].fill(0);
        if self.prime {
            for i in 0..n {
                let (xi, yi) = (x[i], y[i] * self.neps);
                for j in 0..n {
                    out[i + j] += xi * x[j] + yi * y[j];
                }
            }
            for c in out[..2 * n].iter_mut() {
                *c %= self.q;
            }
        } else {
            let f = self.f;
            for i in 0..n {
                let yi = f.mul(y[i], self.neps);
                for j in 0..n {
                    let v = f.add(f.mul(x[i], x[j]), f.mul(yi, y[j]));
                    out[i + j] = f.add(out[i + j], v);
                }
            }
        }
    }
}

/// Base-`q` counter over the free low coefficients of a pair of
/// polynomials of degree `deg`, with optional fixed top coefficients.
struct Odometer {
    q: u32,
    free: usize,
    x: [u32; MAX_COEFFS / 2],
    y: [u32; MAX_COEFFS / 2],
    len: usize,
}

impl Odometer {
    fn new(q: u32, free: usize, deg: usize, top: Option<(u32, u32)>, mut idx: u64) -> Self {
        let mut o = Odometer {
            q,
            free,
            x: [0; MAX_COEFFS / 2],
            y: [0; MAX_COEFFS / 2],
            len: deg + 1,
        };
        for k in 0..free {
            o.x[k] = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        for k in 0..free {
            o.y[k] = (idx % q as u64) as u32;
            idx /= q as u64;
        }
        if let Some((a, b)) = top {
            o.x[deg] = a;
            o.y[deg] = b;
        }
        o
    }

    fn x(&self) -> &[u32] {
        &self.x[..self.len]
    }

    fn y(&self) -> &[u32] {
        &self.y[..self.len]
    }

    /// Step to the next index: `x` holds the low digits.
    fn advance(&mut self) {
        for k in 0..2 * self.free {
            let slot = if k < self.free {
                &mut self.x[k]
            } else {
                &mut self.y[k - self.free]
            };
            *slot += 1;
            if *slot < self.q {
                return;
            }
            *slot = 0;
        }
    }
}

/// Integer matrix with a canonical row/column order on `X_N`.
pub type IntMatrix = Vec<Vec<u32>>;

/// Matrix of `e_d ↦ Σ_r e_{d·r}` over the given shifts.
pub fn right_shift_matrix(alg: &AlgebraParams, shifts: &[GroupElement]) -> IntMatrix {
    let g = &alg.group;
    let n = g.order();
    let mut out = vec![vec![0u32; n]; n];
    for d in 0..n {
        let x = g.element_at(d);
        for &r in shifts {
            out[g.index(g.mul(x, r))][d] += 1;
        }
    }
    out
}

/// `e_d ↦ e_{x·d}`.
pub fn left_translation_matrix(alg: &AlgebraParams, x: GroupElement) -> IntMatrix {
    let g = &alg.group;
    let n = g.order();
    let mut out = vec![vec![0u32; n]; n];
    for d in 0..n {
        out[g.index(g.mul(x, g.element_at(d)))][d] = 1;
    }
    out
}

pub fn int_mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![0u32; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeWitness {
    pub line: CosetLabel,
    pub gamma: String,
    pub shift: GroupElement,
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeOperator {
    pub place: Poly,
    pub splitting: LocalSplitting,
    pub witnesses: Vec<HeckeWitness>,
    /// `r(γ)` per coset, in label order.
    pub shifts: Vec<GroupElement>,
}

impl HeckeOperator {
    pub fn compute(fz: &Factorizer, place: &Poly, bounds: &SearchBounds) -> Result<Self> {
        let splitting = (*fz.splitting(place)?).clone();
        let found = fz.hecke_witnesses(place, bounds)?;
        let mut witnesses = vec![];
        let mut shifts = vec![];
        for (line, gamma) in found {
            let shift = zero_class(&gamma, &fz.alg)?;
            shifts.push(shift);
            witnesses.push(HeckeWitness {
                line,
                gamma: gamma.display(),
                shift,
            });
        }
        Ok(HeckeOperator {
            place: place.clone(),
            splitting,
            witnesses,
            shifts,
        })
    }

    pub fn matrix(&self, alg: &AlgebraParams) -> IntMatrix {
        right_shift_matrix(alg, &self.shifts)
    }

    pub fn expected_row_sum(&self, alg: &AlgebraParams) -> u32 {
        alg.q.pow(self.splitting.degree as u32) + 1
    }
}

/// The action of `D_∞^* / K_∞¹` on functions on `X_N`.
#[derive(Clone, Debug, Serialize)]
pub struct InfinityAction {
    /// `r(γ)` for the uniformizer `Π_∞ = j/t`.
    pub pi_shift: GroupElement,
    /// `r(γ)` for each Teichmüller unit `g^e`, `e = 0..q²-2`.
    pub unit_shifts: Vec<GroupElement>,
}

impl InfinityAction {
    pub fn compute(fz: &Factorizer, bounds: &SearchBounds) -> Result<Self> {
        let alg = &fz.alg;
        let pi = fz
            .factorize(&Adele::at_infinity(LocalReduction { k: 1, e: 0 }), bounds)?
            .shift;
        let m = alg.group.field_order();
        let unit_shifts = (0..m)
            .into_par_iter()
            .map(|e| {
                fz.factorize(&Adele::at_infinity(LocalReduction { k: 0, e }), bounds)
                    .map(|f| f.shift)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InfinityAction {
            pi_shift: pi,
            unit_shifts,
        })
    }

    /// Shift of `Π^k g^e`: shifts compose in reverse order.
    pub fn shift(&self, alg: &AlgebraParams, h: GroupElement) -> GroupElement {
        let g = &alg.group;
        let unit = self.unit_shifts[h.e as usize];
        g.mul(unit, g.pow(self.pi_shift, h.k as u64))
    }

    pub fn matrix(&self, alg: &AlgebraParams, h: GroupElement) -> IntMatrix {
        right_shift_matrix(alg, &[self.shift(alg, h)])
    }
}

/// Row-major TSV with a commented header.
pub fn matrix_tsv(alg: &AlgebraParams, label: &str, m: &IntMatrix) -> String {
    let mut out = format!(
        "# schema_version={SCHEMA_VERSION}\n# q={} N={} eps={} {label}\n# rows/columns: X_N in order k*(q^2-1)+e\n",
        alg.q, alg.level, alg.eps
    );
    for row in m {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HeckeReport {
    pub schema_version: u32,
    pub q: u32,
    #[serde(rename = "N")]
    pub level: u32,
    pub eps: u32,
    pub place: Poly,
    pub splitting: LocalSplitting,
    pub expected_row_sum: u32,
    pub row_sums_ok: bool,
    pub commutes_with_left: bool,
    pub witnesses: Vec<HeckeWitness>,
}

impl HeckeReport {
    pub fn new(alg: &AlgebraParams, op: &HeckeOperator) -> Self {
        let m = op.matrix(alg);
        let expected = op.expected_row_sum(alg);
        let row_sums_ok = m.iter().all(|r| r.iter().sum::<u32>() == expected);
        let commutes_with_left = [alg.group.frobenius(), alg.group.field_generator()]
            .iter()
            .all(|&x| {
                let l = left_translation_matrix(alg, x);
                int_mat_mul(&m, &l) == int_mat_mul(&l, &m)
            });
        HeckeReport {
            schema_version: SCHEMA_VERSION,
            q: alg.q,
            level: alg.level,
            eps: alg.eps,
            place: op.place.clone(),
            splitting: op.splitting.clone(),
            expected_row_sum: expected,
            row_sums_ok,
            commutes_with_left,
            witnesses: op.witnesses.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::parse_poly;

    fn fz(q: u32, level: u32) -> Factorizer {
        Factorizer::new(AlgebraParams::new(q, level).unwrap())
    }

    fn p(s: &str, f: &Factorizer) -> Poly {
        parse_poly(s, &f.alg.fq).unwrap()
    }

    #[test]
    fn identity_factorizes_trivially() {
        let f = fz(3, 1);
        let r = f.factorize(&Adele::identity(), &SearchBounds::default()).unwrap();
        assert_eq!(r.witness, OrderElement::one());
        assert_eq!(r.point, GroupElement { k: 0, e: 0 });
    }

    #[test]
    fn uniformizer_at_infinity() {
        let f = fz(3, 1);
        let r = f
            .factorize(
                &Adele::at_infinity(LocalReduction { k: 1, e: 0 }),
                &SearchBounds::default(),
            )
            .unwrap();
        assert_eq!(r.witness, OrderElement::j());
        assert_eq!(r.shift, GroupElement { k: 1, e: 0 });
    }

    #[test]
    fn constant_unit_at_infinity() {
        let f = fz(5, 1);
        let alg = &f.alg;
        for lam in 1..5u32 {
            let e = alg.residue_dlog(lam).unwrap();
            let r = f
                .factorize(
                    &Adele::at_infinity(LocalReduction { k: 0, e }),
                    &SearchBounds::default(),
                )
                .unwrap();
            let inv = alg.fq.inv(lam).unwrap();
            assert_eq!(r.witness, OrderElement::scalar(inv));
            assert_eq!(
                r.shift,
                GroupElement {
                    k: 0,
                    e: alg.residue_dlog(inv).unwrap()
                }
            );
        }
    }

    #[test]
    fn hecke_row_sums_and_commutation() {
        let f = fz(3, 1);
        let alg = &f.alg;
        let bounds = SearchBounds::default();
        let mut mats = vec![];
        for (s, sum) in [("t-1", 4), ("t+1", 4), ("t^2+1", 10)] {
            let op = HeckeOperator::compute(&f, &p(s, &f), &bounds).unwrap();
            let report = HeckeReport::new(alg, &op);
            assert_eq!(report.expected_row_sum, sum);
            assert!(report.row_sums_ok && report.commutes_with_left, "{s}");
            mats.push(op.matrix(alg));
        }
        for a in &mats {
            for b in &mats {
                assert_eq!(int_mat_mul(a, b), int_mat_mul(b, a));
            }
        }
    }

    #[test]
    fn alternate_splitting_gives_same_operator() {
        let alg = AlgebraParams::new(3, 1).unwrap();
        let a = Factorizer::new(alg.clone());
        let b = Factorizer::with_splitting_index(alg.clone(), 1);
        let place = p("t^2+1", &a);
        let bounds = SearchBounds::default();
        let ma = HeckeOperator::compute(&a, &place, &bounds).unwrap().matrix(&alg);
        let mb = HeckeOperator::compute(&b, &place, &bounds).unwrap().matrix(&alg);
        assert_eq!(ma, mb);
    }

    #[test]
    fn infinity_action_is_a_homomorphism() {
        let f = fz(3, 1);
        let alg = &f.alg;
        let act = InfinityAction::compute(&f, &SearchBounds::default()).unwrap();
        assert_eq!(act.pi_shift, GroupElement { k: 1, e: 0 });
        assert_eq!(act.unit_shifts[0], GroupElement { k: 0, e: 0 });
        let g = &alg.group;
        for x in g.elements().step_by(3) {
            for y in g.elements().step_by(5) {
                let lhs = act.matrix(alg, g.mul(x, y));
                let rhs = int_mat_mul(&act.matrix(alg, x), &act.matrix(alg, y));
                assert_eq!(lhs, rhs);
            }
        }
        // direct factorization agrees with the composed shift
        for (k, e) in [(1, 3), (2, 5), (3, 1)] {
            let direct = f
                .factorize(
                    &Adele::at_infinity(LocalReduction { k, e }),
                    &SearchBounds::default(),
                )
                .unwrap()
                .shift;
            assert_eq!(direct, act.shift(alg, g.element(k, e as i64)));
        }
    }

    #[test]
    fn splitting_is_valid() {
        let f = fz(5, 1);
        for s in ["t-1", "t^2+2", "t+3"] {
            let place = p(s, &f);
            let sp = f.splitting(&place).unwrap();
            let k = &sp.field;
            let j = sp.matrix(&OrderElement::j()).unwrap();
            let jj = crate::quaternion::mat_mul(k, &j, &j);
            assert_eq!(jj, [[sp.t_bar, 0], [0, sp.t_bar]]);
            assert_eq!(sp.labels().len(), k.order() as usize + 1);
        }
        assert!(f.splitting(&Poly::t()).is_err());
        assert!(f.splitting(&p("t^2-1", &f)).is_err());
    }

    #[test]
    fn norm_shapes() {
        let f = fz(3, 1);
        let alg = &f.alg;
        let s = classify_norm(alg, &p("2*t^3+2*t", &f)).unwrap();
        assert_eq!(s.constant, 2);
        assert_eq!(s.t_power, 1);
        assert_eq!(s.place, Some(p("t^2+1", &f)));
        assert!(classify_norm(alg, &p("t^2-1", &f)).is_none());
        assert_eq!(classify_norm(alg, &p("2*t^4", &f)).unwrap().place, None);
    }

    #[test]
    fn tsv_shape() {
        let f = fz(3, 1);
        let m = left_translation_matrix(&f.alg, f.alg.group.frobenius());
        let tsv = matrix_tsv(&f.alg, "left", &m);
        assert!(tsv.starts_with("# schema_version=1"));
        assert_eq!(tsv.lines().filter(|l| !l.starts_with('#')).count(), 16);
    }
}
