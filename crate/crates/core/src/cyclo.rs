//! Exact arithmetic with cyclotomic numbers.
//!
//! Two representations are provided:
//!
//! * [`CycScalar`] lives in the group ring `Z[Z/m]`: coefficient `k` is the
//!   multiplicity of `ζ_m^k`. Multiplication is a cyclic convolution and the
//!   representation is redundant; it is reduced modulo the `m`-th cyclotomic
//!   polynomial only when equality or rationality is tested. Character values
//!   are stored this way.
//! * [`CycNumber`] is an element of the field `Q(ζ_m)` in the reduced power
//!   basis `1, ζ, …, ζ^{φ(m)-1}` with rational coefficients. Exact linear
//!   algebra (kernels, eigenlines) runs over this type.
//!
//! No floating point is used anywhere.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

struct CycloData {
    /// Coefficients of Φ_m, low degree first; monic.
    phi: Vec<BigInt>,
    /// `x^k mod Φ_m` for `k in 0..m`, each of length `φ(m)`.
    powers: Vec<Vec<BigInt>>,
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<CycloData>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<CycloData>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn data(m: usize) -> Arc<CycloData> {
    assert!(m > 0, "cyclotomic order must be positive");
    if let Some(d) = cache().read().expect("cyclotomic cache poisoned").get(&m) {
        return d.clone();
    }
    let phi = compute_cyclotomic(m);
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(m);
    let mut cur = vec![BigInt::zero(); deg];
    if deg > 0 {
        cur[0] = BigInt::one();
    }
    for _ in 0..m {
        powers.push(cur.clone());
        // multiply by x and reduce the overflowing top coefficient
        let top = if deg > 0 { cur[deg - 1].clone() } else { BigInt::zero() };
        let mut next = vec![BigInt::zero(); deg];
        for i in (1..deg).rev() {
            next[i] = cur[i - 1].clone();
        }
        if !top.is_zero() {
            for i in 0..deg {
                next[i] -= &top * &phi[i];
            }
        }
        cur = next;
    }
    let d = Arc::new(CycloData { phi, powers });
    cache()
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(m, d.clone());
    d
}

/// Exact quotient of two integer polynomials, the divisor being monic.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        return vec![];
    }
    let mut quo = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quo[k] = c;
    }
    assert!(
        rem.iter().all(Zero::is_zero),
        "cyclotomic division left a remainder"
    );
    quo
}

fn compute_cyclotomic(m: usize) -> Vec<BigInt> {
    // x^m - 1, then divide out Φ_d for every proper divisor d
    let mut p = vec![BigInt::zero(); m + 1];
    p[0] = -BigInt::one();
    p[m] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let phi_d = data(d).phi.clone();
            p = exact_div_monic(&p, &phi_d);
        }
    }
    p
}

/// The `m`-th cyclotomic polynomial, low degree coefficient first.
pub fn cyclotomic_polynomial(m: usize) -> Vec<BigInt> {
    data(m).phi.clone()
}

/// Euler's totient, read off as the degree of Φ_m.
pub fn totient(m: usize) -> usize {
    data(m).phi.len() - 1
}

fn reduce_small(coeffs: &[BigInt], phi: &[BigInt]) -> Option<Vec<BigInt>> {
    let deg = phi.len() - 1;
    let mut r = coeffs
        .iter()
        .map(|c| c.to_i64().map(i128::from))
        .collect::<Option<Vec<i128>>>()?;
    let nz = phi[..deg]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| c.to_i64().map(|v| (i, i128::from(v))))
        .collect::<Option<Vec<_>>>()?;
    for k in (deg..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        r[k] = 0;
        for &(i, p) in &nz {
            let t = c.checked_mul(p)?;
            r[k - deg + i] = r[k - deg + i].checked_sub(t)?;
        }
    }
    r.resize(deg, 0);
    Some(r.into_iter().map(BigInt::from).collect())
}

fn reduce_big(coeffs: &[BigInt], phi: &[BigInt]) -> Vec<BigInt> {
    let deg = phi.len() - 1;
    let mut r = coeffs.to_vec();
    for k in (deg..r.len()).rev() {
        if r[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut r[k]);
        for (i, p) in phi[..deg].iter().enumerate() {
            if !p.is_zero() {
                r[k - deg + i] -= &c * p;
            }
        }
    }
    r.resize(deg, BigInt::zero());
    r
}

/// Reduce a redundant coefficient vector of length `m` modulo Φ_m.
fn reduce(m: usize, coeffs: &[BigInt]) -> Vec<BigInt> {
    let d = data(m);
    reduce_small(coeffs, &d.phi).unwrap_or_else(|| reduce_big(coeffs, &d.phi))
}

/// Element of the group ring `Z[Z/m]`, read as a cyclotomic integer.
#[derive(Clone, Debug)]
pub struct CycScalar {
    order: usize,
    coeffs: Vec<BigInt>,
}

impl CycScalar {
    pub fn zero(order: usize) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycScalar {
            order,
            coeffs: vec![BigInt::zero(); order],
        }
    }

    pub fn from_int(order: usize, value: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = value.into();
        s
    }

    pub fn one(order: usize) -> Self {
        Self::from_int(order, 1)
    }

    /// `ζ_m^k`, with `k` taken modulo `m`.
    pub fn root(order: usize, k: i64) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[k.rem_euclid(order as i64) as usize] = BigInt::one();
        s
    }

    pub fn from_coeffs(order: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != order || order == 0 {
            return Err(Error::InvalidParams(format!(
                "expected {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(CycScalar { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Redundant coefficients; entry `k` multiplies `ζ_m^k`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Add `c · ζ^k` in place.
    pub fn add_root(&mut self, k: i64, c: &BigInt) {
        let idx = k.rem_euclid(self.order as i64) as usize;
        self.coeffs[idx] += c;
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycScalar {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycScalar {
            order: self.order,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let m = self.order;
        let mut out = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[(i + j) % m] += a * b;
            }
        }
        Ok(CycScalar {
            order: m,
            coeffs: out,
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        CycScalar {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Complex conjugation: `ζ^k ↦ ζ^{-k}`.
    pub fn conj(&self) -> Self {
        let m = self.order;
        let mut out = vec![BigInt::zero(); m];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[(m - k) % m] = a.clone();
        }
        CycScalar {
            order: m,
            coeffs: out,
        }
    }

    /// Same number viewed inside `Z[ζ_{m'}]` for a multiple `m'` of `m`.
    pub fn lift(&self, new_order: usize) -> Result<Self> {
        if new_order % self.order != 0 {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: new_order,
            });
        }
        let step = new_order / self.order;
        let mut out = vec![BigInt::zero(); new_order];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[k * step] = a.clone();
        }
        Ok(CycScalar {
            order: new_order,
            coeffs: out,
        })
    }

    /// Power-basis coordinates after reduction modulo Φ_m (length φ(m)).
    pub fn reduced(&self) -> Vec<BigInt> {
        reduce(self.order, &self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero) || self.reduced().iter().all(Zero::is_zero)
    }

    /// The rational value of `self`, if its reduction is a constant.
    pub fn to_rational(&self) -> Result<Rational> {
        let r = self.reduced();
        if r.iter().skip(1).any(|c| !c.is_zero()) {
            return Err(Error::NotRational(format!("{self}")));
        }
        Ok(Rational::from_integer(r.first().cloned().unwrap_or_default()))
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self
                .checked_sub(other)
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }
}

impl Eq for CycScalar {}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.reduced().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "{c}*z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialized as `{"order": m, "coeffs": [...]}` with the reduced power-basis
/// coordinates; integers outside the `i64` range become decimal strings.
impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.reduced().iter().map(int_json).collect();
        let mut st = serializer.serialize_struct("CycScalar", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

fn int_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => v.into(),
        None => c.to_string().into(),
    }
}

fn rational_json(r: &Rational) -> serde_json::Value {
    if r.is_integer() {
        int_json(r.numer())
    } else {
        r.to_string().into()
    }
}

/// Coefficientwise sum.
pub fn cyc_add(a: &CycScalar, b: &CycScalar) -> Result<CycScalar> {
    a.checked_add(b)
}

/// Cyclic convolution.
pub fn cyc_mul(a: &CycScalar, b: &CycScalar) -> Result<CycScalar> {
    a.checked_mul(b)
}

pub fn cyc_to_rational(a: &CycScalar) -> Result<Rational> {
    a.to_rational()
}

/// Nonzero terms `(k, c)` of a [`CycScalar`], for repeated products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseCyc {
    pub order: usize,
    pub terms: Vec<(usize, BigInt)>,
}

impl From<&CycScalar> for SparseCyc {
    fn from(s: &CycScalar) -> Self {
        SparseCyc {
            order: s.order,
            terms: s
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k, c.clone()))
                .collect(),
        }
    }
}

/// `(1/|G|) Σ_c w_c f_c conj(g_c)` as an exact rational.
pub fn inner_product(
    f: &[CycScalar],
    g: &[CycScalar],
    weights: &[u64],
    group_order: u64,
) -> Result<Rational> {
    let f: Vec<SparseCyc> = f.iter().map(SparseCyc::from).collect();
    let g: Vec<SparseCyc> = g.iter().map(SparseCyc::from).collect();
    sparse_inner_product(&f, &g, weights, group_order)
}

/// [`inner_product`] on values already in sparse form.
pub fn sparse_inner_product(
    f: &[SparseCyc],
    g: &[SparseCyc],
    weights: &[u64],
    group_order: u64,
) -> Result<Rational> {
    if f.len() != g.len() || f.len() != weights.len() {
        return Err(Error::InvalidParams(format!(
            "inner product over {} / {} values with {} weights",
            f.len(),
            g.len(),
            weights.len()
        )));
    }
    if group_order == 0 {
        return Err(Error::InvalidParams("group order must be positive".into()));
    }
    let Some(m) = f.first().map(|s| s.order) else {
        return Ok(Rational::zero());
    };
    let mut acc = CycScalar::zero(m);
    for ((a, b), &w) in f.iter().zip(g).zip(weights) {
        if a.order != m || b.order != m {
            return Err(Error::OrderMismatch {
                left: m,
                right: if a.order != m { a.order } else { b.order },
            });
        }
        let w = BigInt::from(w);
        for (i, x) in &a.terms {
            let wx = &w * x;
            for (j, y) in &b.terms {
                // ζ^i · conj(ζ^j) = ζ^{i-j}
                acc.coeffs[(i + m - j) % m] += &wx * y;
            }
        }
    }
    let total = acc
        .to_rational()
        .map_err(|e| Error::Consistency(format!("inner product not rational: {e}")))?;
    Ok(total / Rational::from_integer(BigInt::from(group_order)))
}

/// Element of the cyclotomic field `Q(ζ_m)` in the reduced power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNumber {
    order: usize,
    coeffs: Vec<Rational>,
}

impl CycNumber {
    pub fn zero(order: usize) -> Self {
        CycNumber {
            order,
            coeffs: vec![Rational::zero(); totient(order)],
        }
    }

    pub fn from_rational(order: usize, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: usize, v: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(v)))
    }

    pub fn one(order: usize) -> Self {
        Self::from_int(order, 1)
    }

    /// `ζ_m^k`.
    pub fn root(order: usize, k: i64) -> Self {
        let d = data(order);
        let idx = k.rem_euclid(order as i64) as usize;
        CycNumber {
            order,
            coeffs: d.powers[idx]
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn from_scalar(s: &CycScalar) -> Self {
        CycNumber {
            order: s.order,
            coeffs: s
                .reduced()
                .into_iter()
                .map(Rational::from_integer)
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The same number as a cyclotomic integer, if all coordinates are integral.
    pub fn to_scalar(&self) -> Option<CycScalar> {
        let mut s = CycScalar::zero(self.order);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_integer() {
                return None;
            }
            s.coeffs[k] = c.to_integer();
        }
        Some(s)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        CycNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        CycNumber {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        let deg = self.coeffs.len();
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut full = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                full[i + j] += a * b;
            }
        }
        let d = data(self.order);
        let mut out: Vec<Rational> = full[..deg].to_vec();
        for (k, c) in full.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (i, p) in d.powers[k % self.order].iter().enumerate() {
                if !p.is_zero() {
                    out[i] += c * Rational::from_integer(p.clone());
                }
            }
        }
        CycNumber {
            order: self.order,
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_m.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(self.order, r.recip()));
        }
        let phi: Vec<Rational> = data(self.order)
            .phi
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: s_i · a ≡ r_i (mod Φ_m)
        let mut r0 = phi.clone();
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<Rational> = vec![];
        let mut s1: Vec<Rational> = vec![Rational::one()];
        while r1.len() > 1 {
            let (quo, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // a shares a factor with Φ_m, impossible for a nonzero reduced element
                return None;
            }
        }
        let c = r1[0].recip();
        let s1 = poly_divrem(&s1, &phi).1;
        let mut coeffs = vec![Rational::zero(); self.coeffs.len()];
        for (i, v) in s1.into_iter().enumerate() {
            coeffs[i] = v * &c;
        }
        Some(CycNumber {
            order: self.order,
            coeffs,
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Lexicographic comparison of power-basis coordinates; used only to
    /// produce canonical orderings.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Same shape as [`CycScalar`]; non-integral coordinates are `"p/q"` strings.
impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs: Vec<serde_json::Value> = self.coeffs.iter().map(rational_json).collect();
        let mut st = serializer.serialize_struct("CycNumber", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})*z{}^{k}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let lead_inv = b[b.len() - 1].recip();
    let mut quo = vec![Rational::zero(); rem.len() - b.len() + 1];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + b.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quo[k] = c;
    }
    (trim(quo), trim(rem))
}

/// Least common multiple helper used to choose an ambient cyclotomic order.
pub fn lcm(a: usize, b: usize) -> usize {
    a.lcm(&b)
}
