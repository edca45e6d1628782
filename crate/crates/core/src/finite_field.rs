//! Small finite fields with discrete-logarithm tables, and dense polynomials
//! over them.
//!
//! Elements of a field of order `Q = b^d` built as an extension of a base
//! field of order `b` are encoded as integers `Σ c_k b^k` where `c_k` are the
//! base-field codes of the coordinates in the power basis of the defining
//! polynomial. Zero is `0`, one is `1`. The generator of the multiplicative
//! group is the smallest code of multiplicative order `Q - 1`.

use crate::error::{Error, Result};

/// Largest field order for which full tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 13;

#[derive(Clone, Debug)]
pub struct FiniteField {
    characteristic: u32,
    order: u32,
    /// Order of the field the digits are taken from.
    digit_base: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Smallest prime factor, and whether `n` is a power of it.
fn prime_power(n: u32) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut r = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        r += 1;
    }
    (m == 1).then_some((p, r))
}

pub fn is_prime_power(n: u32) -> bool {
    prime_power(n).is_some()
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// `F_q` for a prime power `q`, realized over the smallest monic
    /// irreducible polynomial of the required degree when `q` is not prime.
    pub fn new(q: u32) -> Result<Self> {
        let (p, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidParams(format!("field order {q} too large")));
        }
        let fp = Self::prime(p);
        if r == 1 {
            return Ok(fp);
        }
        let modulus = monic_irreducibles(&fp, r as usize)
            .into_iter()
            .next()
            .expect("irreducible polynomials exist in every degree");
        Self::extension(&fp, &modulus)
    }

    pub fn prime(p: u32) -> Self {
        let q = p as usize;
        let mut add = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = ((a + b) % q) as u32;
            }
        }
        let neg = (0..p).map(|a| (p - a) % p).collect();
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        let (exp, log) = build_log_tables(p, mul);
        FiniteField {
            characteristic: p,
            order: p,
            digit_base: p,
            add,
            neg,
            exp,
            log,
        }
    }

    /// The quotient `base[x] / (modulus)`; `modulus` must be monic irreducible.
    pub fn extension(base: &FiniteField, modulus: &Poly) -> Result<Self> {
        let d = modulus.degree().ok_or_else(|| {
            Error::InvalidParams("extension modulus must be nonzero".into())
        })?;
        if d == 0 || modulus.lead() != 1 {
            return Err(Error::InvalidParams(
                "extension modulus must be monic of positive degree".into(),
            ));
        }
        if !is_irreducible(base, modulus) {
            return Err(Error::InvalidParams(format!(
                "modulus {modulus:?} is reducible"
            )));
        }
        let b = base.order;
        let order = (b as u64).pow(d as u32);
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::InvalidParams(format!(
                "field order {order} too large"
            )));
        }
        let order = order as u32;
        let digits = |mut x: u32| {
            let mut v = vec![0u32; d];
            for c in v.iter_mut() {
                *c = x % b;
                x /= b;
            }
            v
        };
        let encode = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &c| acc * b + c);
        let n = order as usize;
        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for x in 0..order {
            let dx = digits(x);
            neg[x as usize] = encode(&dx.iter().map(|&c| base.neg(c)).collect::<Vec<_>>());
            for y in 0..order {
                let dy = digits(y);
                let s: Vec<u32> = dx.iter().zip(&dy).map(|(&u, &v)| base.add(u, v)).collect();
                add[x as usize * n + y as usize] = encode(&s);
            }
        }
        let mul = |x: u32, y: u32| {
            let prod = Poly::from_coeffs(digits(x)).mul(&Poly::from_coeffs(digits(y)), base);
            let r = prod.rem(modulus, base);
            let mut v = r.coeffs().to_vec();
            v.resize(d, 0);
            encode(&v)
        };
        let (exp, log) = build_log_tables(order, mul);
        Ok(FiniteField {
            characteristic: base.characteristic,
            order,
            digit_base: b,
            add,
            neg,
            exp,
            log,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    /// Order of the field whose codes make up the digits of an element code.
    pub fn digit_base(&self) -> u32 {
        self.digit_base
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(s % (self.order - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let l = self.log[a as usize];
        Some(self.exp[((self.order - 1 - l) % (self.order - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = self.log[a as usize] as u64 * (e % (self.order as u64 - 1));
        self.exp[(l % (self.order as u64 - 1)) as usize]
    }

    /// The fixed generator of the multiplicative group.
    pub fn generator(&self) -> u32 {
        if self.order == 2 {
            1
        } else {
            self.exp[1]
        }
    }

    /// Discrete logarithm with respect to [`generator`](Self::generator).
    pub fn dlog(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^k`.
    pub fn exp(&self, k: i64) -> u32 {
        let m = (self.order - 1) as i64;
        self.exp[k.rem_euclid(m) as usize]
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.characteristic == 2 || self.log[a as usize] % 2 == 0
    }

    /// Smallest non-square code, if the field has odd characteristic.
    pub fn smallest_nonsquare(&self) -> Option<u32> {
        self.elements().find(|&a| !self.is_square(a))
    }

    /// The integer `k` as a field element.
    pub fn from_int(&self, k: i64) -> u32 {
        let p = self.characteristic as i64;
        // prime-field codes sit in the lowest digit of every tower level
        k.rem_euclid(p) as u32
    }
}

fn build_log_tables(order: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let n = order as usize;
    if order == 2 {
        return (vec![1], vec![0, 0]);
    }
    let group = order - 1;
    let primes = prime_factors(group);
    let pow = |g: u32, mut e: u32| {
        let mut acc = 1u32;
        let mut base = g;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            e >>= 1;
        }
        acc
    };
    let gen = (2..order)
        .find(|&g| primes.iter().all(|&r| pow(g, group / r) != 1))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; group as usize];
    let mut log = vec![0u32; n];
    let mut x = 1u32;
    for (k, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = k as u32;
        x = mul(x, gen);
    }
    (exp, log)
}

/// Dense polynomial over a [`FiniteField`], lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![])
    }

    pub fn constant(c: u32) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Poly(vec![0, 1])
    }

    /// `c · t^k`.
    pub fn monomial(c: u32, k: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_coeffs(v)
    }

    pub fn from_coeffs(mut v: Vec<u32>) -> Self {
        while v.last() == Some(&0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lead(&self) -> u32 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `t`-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    pub fn add(&self, other: &Self, f: &FiniteField) -> Self {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs(
            (0..n)
                .map(|k| f.add(self.coeff(k), other.coeff(k)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &FiniteField) -> Self {
        Poly(self.0.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self, f: &FiniteField) -> Self {
        self.add(&other.neg(f), f)
    }

    pub fn scale(&self, c: u32, f: &FiniteField) -> Self {
        Poly::from_coeffs(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0; k];
        v.extend_from_slice(&self.0);
        Poly(v)
    }

    /// Divide by `t^k`, which must divide `self`.
    pub fn unshift(&self, k: usize) -> Self {
        debug_assert!(self.0.iter().take(k).all(|&c| c == 0));
        Poly::from_coeffs(self.0.iter().skip(k).copied().collect())
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![0u32; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(v)
    }

    pub fn divrem(&self, divisor: &Self, f: &FiniteField) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quo = vec![0u32; rem.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(rem[k + dd], inv);
            if c == 0 {
                continue;
            }
            for (i, &d) in divisor.0.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, d));
            }
            quo[k] = c;
        }
        (Poly::from_coeffs(quo), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, divisor: &Self, f: &FiniteField) -> Self {
        self.divrem(divisor, f).1
    }

    pub fn eval(&self, x: u32, f: &FiniteField) -> u32 {
        self.0.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Multiplicity of `p` as a factor of `self` (`self` nonzero).
    pub fn multiplicity(&self, p: &Self, f: &FiniteField) -> usize {
        let mut k = 0;
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.divrem(p, f);
            if !r.is_zero() {
                break;
            }
            cur = q;
            k += 1;
        }
        k
    }

    /// Human-readable form in the variable `t`; coefficients are field codes.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = vec![];
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            };
            terms.push(match (c, k) {
                (_, 0) => format!("{c}"),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        terms.join("+")
    }
}

/// Serialized as its [`display`](Poly::display) string.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.display())
    }
}

/// Encode polynomials with degree `< len` as integers in base `q`.
pub fn encode_coeffs(coeffs: &[u32], q: u32) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * q as u64 + c as u64)
}

pub fn is_irreducible(f: &FiniteField, p: &Poly) -> bool {
    let Some(d) = p.degree() else { return false };
    if d == 0 {
        return false;
    }
    for k in 1..=d / 2 {
        for g in monic_polys(f, k) {
            if p.rem(&g, f).is_zero() {
                return false;
            }
        }
    }
    true
}

/// All monic polynomials of exact degree `d`, in code order.
pub fn monic_polys(f: &FiniteField, d: usize) -> impl Iterator<Item = Poly> + '_ {
    let q = f.order() as u64;
    let count = q.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = vec![0u32; d + 1];
        for c in v.iter_mut().take(d) {
            *c = (idx % q) as u32;
            idx /= q;
        }
        v[d] = 1;
        Poly::from_coeffs(v)
    })
}

/// All monic irreducible polynomials of exact degree `d`, in code order.
pub fn monic_irreducibles(f: &FiniteField, d: usize) -> Vec<Poly> {
    monic_polys(f, d).filter(|p| is_irreducible(f, p)).collect()
}

/// Parse a polynomial in `t` such as `t^2+1`, `t-1`, `2*t+3` or `t^2 + 2t`.
/// Integer coefficients are read in the prime field; `-` negates.
pub fn parse_poly(s: &str, f: &FiniteField) -> Result<Poly> {
    let bad = || Error::InvalidParams(format!("cannot parse polynomial '{s}'"));
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(bad());
    }
    let mut terms = vec![];
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    terms.push(cur);
    let mut acc = Poly::zero();
    for term in terms {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, term.trim_start_matches('+').to_string()),
        };
        let (coef, power) = if let Some(idx) = body.find('t') {
            let c = body[..idx].trim_end_matches('*');
            let c: i64 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
            let rest = &body[idx + 1..];
            let k: usize = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            (c, k)
        } else {
            (body.parse::<i64>().map_err(|_| bad())?, 0)
        };
        let mut c = f.from_int(coef);
        if negative {
            c = f.neg(c);
        }
        acc = acc.add(&Poly::monomial(c, power), f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order(), q);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.exp(f.dlog(a).unwrap() as i64), a);
                }
                for b in f.elements() {
                    for c in [0, 1, q - 1] {
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c)),
                            "distributivity in F_{q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        for q in [3u32, 4, 5, 9, 49, 81] {
            let f = FiniteField::new(q).unwrap();
            let g = f.generator();
            let mut seen = std::collections::BTreeSet::new();
            let mut x = 1;
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u32, q - 1);
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(!is_prime_power(12));
        assert!(is_prime_power(16));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // number of monic irreducibles of degree d over F_q: (1/d) Σ μ(d/e) q^e
        let f3 = FiniteField::new(3).unwrap();
        assert_eq!(monic_irreducibles(&f3, 1).len(), 3);
        assert_eq!(monic_irreducibles(&f3, 2).len(), 3);
        assert_eq!(monic_irreducibles(&f3, 3).len(), 8);
        let f4 = FiniteField::new(4).unwrap();
        assert_eq!(monic_irreducibles(&f4, 2).len(), 6);
    }

    #[test]
    fn poly_division_roundtrip() {
        let f = FiniteField::new(5).unwrap();
        let a = Poly::from_coeffs(vec![1, 2, 3, 4, 1]);
        let b = Poly::from_coeffs(vec![3, 0, 2]);
        let (q, r) = a.divrem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn parse_polys() {
        let f = FiniteField::new(3).unwrap();
        assert_eq!(parse_poly("t-1", &f).unwrap(), Poly::from_coeffs(vec![2, 1]));
        assert_eq!(parse_poly("t^2+1", &f).unwrap(), Poly::from_coeffs(vec![1, 0, 1]));
        assert_eq!(parse_poly("2*t + 2", &f).unwrap(), Poly::from_coeffs(vec![2, 2]));
        assert_eq!(parse_poly("t^2+2t+2", &f).unwrap(), Poly::from_coeffs(vec![2, 2, 1]));
        assert!(parse_poly("x+1", &f).is_err());
    }
}
