//! The quaternion algebra `D = (ε, t)` over `F_q(t)` for odd `q`, its order
//! `F_q[t]⟨1, i, j, ij⟩`, and reductions at the two ramified places.
//!
//! Elements carry a denominator `t^m` so that the localization away from
//! `t = 0` is representable. The residue field at both ramified places is
//! `F_q(i)`, encoded as `a + b·q` for `a + b i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::{monic_irreducibles, FiniteField, Poly};
use crate::group::GroupParams;

#[derive(Clone, Debug)]
pub struct AlgebraParams {
    pub q: u32,
    pub level: u32,
    pub fq: FiniteField,
    /// Smallest non-square of `F_q`; `i² = ε`.
    pub eps: u32,
    /// `F_q(i)`; its fixed generator is the smallest primitive code.
    pub residue: FiniteField,
    pub group: GroupParams,
}

impl AlgebraParams {
    pub fn new(q: u32, level: u32) -> Result<Self> {
        let group = GroupParams::new(q, 2, level)?;
        if q % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "q = {q} is even; only odd q is supported"
            )));
        }
        if q > 9 {
            return Err(Error::InvalidParams(format!("q = {q} exceeds 9")));
        }
        let fq = FiniteField::new(q)?;
        let eps = fq
            .smallest_nonsquare()
            .expect("odd-order fields have non-squares");
        let modulus = Poly::from_coeffs(vec![fq.neg(eps), 0, 1]);
        let residue = FiniteField::extension(&fq, &modulus)?;
        Ok(AlgebraParams {
            q,
            level,
            fq,
            eps,
            residue,
            group,
        })
    }

    /// `a + b i` as a residue-field code.
    pub fn residue_code(&self, a: u32, b: u32) -> u32 {
        a + b * self.q
    }

    pub fn residue_parts(&self, u: u32) -> (u32, u32) {
        (u % self.q, u / self.q)
    }

    /// Galois conjugation `a + b i ↦ a - b i`.
    pub fn residue_conj(&self, u: u32) -> u32 {
        let (a, b) = self.residue_parts(u);
        self.residue_code(a, self.fq.neg(b))
    }

    /// `N(a + b i) = a² - ε b²`.
    pub fn residue_norm(&self, u: u32) -> u32 {
        let (a, b) = self.residue_parts(u);
        let f = &self.fq;
        f.sub(f.mul(a, a), f.mul(self.eps, f.mul(b, b)))
    }

    pub fn residue_generator(&self) -> u32 {
        self.residue.generator()
    }

    /// Exponent of `u` with respect to the fixed generator.
    pub fn residue_dlog(&self, u: u32) -> Option<u32> {
        self.residue.dlog(u)
    }

    pub fn residue_exp(&self, e: i64) -> u32 {
        self.residue.exp(e)
    }

    /// Initial `t`-adic precision for local reductions.
    pub fn initial_precision(&self) -> usize {
        4 * (self.level as usize + 2)
    }
}

/// `t^{-m}(a + b i + c j + d ij)` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrderElement {
    pub m: u32,
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

/// `num / t^den`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TLaurent {
    pub num: Poly,
    pub den: u32,
}

impl TLaurent {
    pub fn canonical(mut self) -> Self {
        while self.den > 0 && !self.num.is_zero() && self.num.coeff(0) == 0 {
            self.num = self.num.unshift(1);
            self.den -= 1;
        }
        if self.num.is_zero() {
            self.den = 0;
        }
        self
    }

    pub fn mul(&self, other: &Self, f: &FiniteField) -> Self {
        TLaurent {
            num: self.num.mul(&other.num, f),
            den: self.den + other.den,
        }
        .canonical()
    }

    /// Valuation at `∞` (`-deg num + den`); `None` for zero.
    pub fn infinity_valuation(&self) -> Option<i64> {
        self.num.degree().map(|d| self.den as i64 - d as i64)
    }

    pub fn display(&self) -> String {
        if self.den == 0 {
            self.num.display()
        } else {
            format!("({})/t^{}", self.num.display(), self.den)
        }
    }
}

impl OrderElement {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Self {
        OrderElement { m: 0, a, b, c, d }
    }

    pub fn with_denominator(mut self, m: u32) -> Self {
        self.m += m;
        self
    }

    pub fn scalar(c: u32) -> Self {
        Self::new(Poly::constant(c), Poly::zero(), Poly::zero(), Poly::zero())
    }

    pub fn one() -> Self {
        Self::scalar(1)
    }

    pub fn i() -> Self {
        Self::new(Poly::zero(), Poly::one(), Poly::zero(), Poly::zero())
    }

    pub fn j() -> Self {
        Self::new(Poly::zero(), Poly::zero(), Poly::one(), Poly::zero())
    }

    pub fn ij() -> Self {
        Self::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::one())
    }

    pub fn t_power(k: u32) -> Self {
        Self::new(Poly::monomial(1, k as usize), Poly::zero(), Poly::zero(), Poly::zero())
    }

    /// The basis `1, i, j, ij` of the order.
    pub fn basis() -> [Self; 4] {
        [Self::one(), Self::i(), Self::j(), Self::ij()]
    }

    pub fn parts(&self) -> [&Poly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|p| p.is_zero())
    }

    /// Cancel common factors of `t` against the denominator.
    pub fn canonical(mut self) -> Self {
        while self.m > 0
            && !self.is_zero()
            && self.parts().iter().all(|p| p.is_zero() || p.coeff(0) == 0)
        {
            self.a = self.a.unshift(1);
            self.b = self.b.unshift(1);
            self.c = self.c.unshift(1);
            self.d = self.d.unshift(1);
            self.m -= 1;
        }
        if self.is_zero() {
            self.m = 0;
        }
        self
    }

    pub fn mul(&self, o: &Self, alg: &AlgebraParams) -> Self {
        let f = &alg.fq;
        let eps = alg.eps;
        let m = |x: &Poly, y: &Poly| x.mul(y, f);
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (a2, b2, c2, d2) = (&o.a, &o.b, &o.c, &o.d);
        let one = m(a, a2)
            .add(&m(b, b2).scale(eps, f), f)
            .add(&m(c, c2).shift(1), f)
            .sub(&m(d, d2).scale(eps, f).shift(1), f);
        let i = m(a, b2)
            .add(&m(b, a2), f)
            .sub(&m(c, d2).shift(1), f)
            .add(&m(d, c2).shift(1), f);
        let j = m(a, c2)
            .add(&m(c, a2), f)
            .add(&m(b, d2).scale(eps, f), f)
            .sub(&m(d, b2).scale(eps, f), f);
        let k = m(a, d2)
            .add(&m(d, a2), f)
            .add(&m(b, c2), f)
            .sub(&m(c, b2), f);
        OrderElement {
            m: self.m + o.m,
            a: one,
            b: i,
            c: j,
            d: k,
        }
        .canonical()
    }

    pub fn conj(&self, alg: &AlgebraParams) -> Self {
        let f = &alg.fq;
        OrderElement {
            m: self.m,
            a: self.a.clone(),
            b: self.b.neg(f),
            c: self.c.neg(f),
            d: self.d.neg(f),
        }
    }

    /// Numerator `a² - εb² - t c² + εt d²` of the reduced norm.
    pub fn nrd_numerator(&self, alg: &AlgebraParams) -> Poly {
        let f = &alg.fq;
        let sq = |x: &Poly| x.mul(x, f);
        let alpha = sq(&self.a).sub(&sq(&self.b).scale(alg.eps, f), f);
        let beta = sq(&self.c).sub(&sq(&self.d).scale(alg.eps, f), f);
        alpha.sub(&beta.shift(1), f)
    }

    pub fn nrd(&self, alg: &AlgebraParams) -> TLaurent {
        TLaurent {
            num: self.nrd_numerator(alg),
            den: 2 * self.m,
        }
        .canonical()
    }

    pub fn trd(&self, alg: &AlgebraParams) -> TLaurent {
        TLaurent {
            num: self.a.scale(alg.fq.from_int(2), &alg.fq),
            den: self.m,
        }
        .canonical()
    }

    /// Image in `M_2(k)` for the residue field `k` of a place where `t`
    /// maps to `t_bar`, under `i ↦ I`, `j ↦ J`. Entries are `k`-codes.
    pub fn eval_matrix(
        &self,
        k: &FiniteField,
        t_bar: u32,
        i_mat: &[[u32; 2]; 2],
        j_mat: &[[u32; 2]; 2],
    ) -> Option<[[u32; 2]; 2]> {
        let scale = k.inv(k.pow(t_bar, self.m as u64))?;
        let ev = |p: &Poly| k.mul(eval_in(p, k, t_bar), scale);
        let (a, b, c, d) = (ev(&self.a), ev(&self.b), ev(&self.c), ev(&self.d));
        let ij = mat_mul(k, i_mat, j_mat);
        let mut out = [[0u32; 2]; 2];
        for r in 0..2 {
            for s in 0..2 {
                let mut v = if r == s { a } else { 0 };
                v = k.add(v, k.mul(b, i_mat[r][s]));
                v = k.add(v, k.mul(c, j_mat[r][s]));
                v = k.add(v, k.mul(d, ij[r][s]));
                out[r][s] = v;
            }
        }
        Some(out)
    }

    pub fn display(&self) -> String {
        let parts = [("", &self.a), ("i", &self.b), ("j", &self.c), ("ij", &self.d)];
        let body: Vec<String> = parts
            .iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(name, p)| {
                if name.is_empty() {
                    format!("({})", p.display())
                } else {
                    format!("({}){name}", p.display())
                }
            })
            .collect();
        let body = if body.is_empty() {
            "0".to_string()
        } else {
            body.join(" + ")
        };
        if self.m == 0 {
            body
        } else {
            format!("t^-{}*[{body}]", self.m)
        }
    }
}

/// Evaluate an `F_q`-polynomial at an element of an extension whose prime
/// subfield codes agree with those of `F_q`.
pub fn eval_in(p: &Poly, k: &FiniteField, x: u32) -> u32 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

pub fn mat_mul(k: &FiniteField, x: &[[u32; 2]; 2], y: &[[u32; 2]; 2]) -> [[u32; 2]; 2] {
    let mut out = [[0u32; 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            out[r][s] = k.add(k.mul(x[r][0], y[0][s]), k.mul(x[r][1], y[1][s]));
        }
    }
    out
}

/// The image of an element in `D_v^* / K_v^1 ≅ Z ⋉ F_{q²}^*`: it is
/// congruent to `Π^k g^e`, `g` the fixed residue generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LocalReduction {
    pub k: i64,
    pub e: u32,
}

fn residue_of(alg: &AlgebraParams, x: &Poly, y: &Poly, deg: usize) -> u32 {
    alg.residue_code(x.coeff(deg), y.coeff(deg))
}

fn lowest_index(p: &Poly, q: &Poly, precision: usize) -> Option<usize> {
    (0..precision).find(|&k| p.coeff(k) != 0 || q.coeff(k) != 0)
}

/// Reduction at `t = 0` with uniformizer `j`.
///
/// Writing `x = α + βj` with `α = a + b i`, `β = c + d i`, the valuation is
/// `min(2 v(α), 2 v(β) + 1) - 2m` and the residue is that of `j^{-k} x`:
/// the lowest coefficient of `α`, or the conjugate of the lowest
/// coefficient of `β`. Only the first `precision` coefficients are examined.
pub fn reduce_at_zero(
    x: &OrderElement,
    alg: &AlgebraParams,
    precision: usize,
) -> Result<LocalReduction> {
    if x.is_zero() {
        return Err(Error::Precondition("cannot reduce zero".into()));
    }
    let va = lowest_index(&x.a, &x.b, precision);
    let vb = lowest_index(&x.c, &x.d, precision);
    let (k, u) = match (va, vb) {
        (None, None) => return Err(Error::PrecisionExhausted { precision }),
        (Some(a), b) if b.map_or(true, |b| a <= b) => {
            (2 * a as i64, residue_of(alg, &x.a, &x.b, a))
        }
        (_, Some(b)) => (
            2 * b as i64 + 1,
            alg.residue_conj(residue_of(alg, &x.c, &x.d, b)),
        ),
        _ => unreachable!(),
    };
    let e = alg.residue_dlog(u).expect("leading residue is nonzero");
    Ok(LocalReduction {
        k: k - 2 * x.m as i64,
        e,
    })
}

/// Reduction at `∞` with parameter `1/t` and uniformizer `Π = j/t`.
///
/// `x = t^{-m}α + (t^{1-m}β) Π`, so `v(α-part) = m - deg α` and
/// `v(β-part) = m - 1 - deg β`. The `1/t`-adic expansion is read from the
/// top degree downwards; `precision` bounds how many coefficients are read
/// below the highest degree present.
pub fn reduce_at_infinity(
    x: &OrderElement,
    alg: &AlgebraParams,
    precision: usize,
) -> Result<LocalReduction> {
    if x.is_zero() {
        return Err(Error::Precondition("cannot reduce zero".into()));
    }
    let deg2 = |p: &Poly, q: &Poly| p.degree().max(q.degree());
    let top = [deg2(&x.a, &x.b), deg2(&x.c, &x.d).map(|d| d + 1)]
        .into_iter()
        .flatten()
        .max()
        .expect("nonzero element has a degree");
    let in_window = |d: Option<usize>, shift: usize| {
        d.filter(|&d| top - (d + shift) < precision.max(1))
    };
    let da = in_window(deg2(&x.a, &x.b), 0);
    let db = in_window(deg2(&x.c, &x.d), 1);
    let m = x.m as i64;
    let va = da.map(|d| 2 * (m - d as i64));
    let vb = db.map(|d| 2 * (m - 1 - d as i64) + 1);
    let (k, u) = match (va, vb) {
        (None, None) => return Err(Error::PrecisionExhausted { precision }),
        (Some(a), b) if b.map_or(true, |b| a < b) => {
            (a, residue_of(alg, &x.a, &x.b, da.unwrap()))
        }
        (_, Some(b)) => (
            b,
            alg.residue_conj(residue_of(alg, &x.c, &x.d, db.unwrap())),
        ),
        _ => unreachable!(),
    };
    let e = alg.residue_dlog(u).expect("leading residue is nonzero");
    Ok(LocalReduction { k, e })
}

/// Retry a reduction with doubling precision.
pub fn with_precision<T>(
    alg: &AlgebraParams,
    mut f: impl FnMut(usize) -> Result<T>,
) -> Result<T> {
    let mut precision = alg.initial_precision();
    loop {
        match f(precision) {
            Err(Error::PrecisionExhausted { .. }) if precision < 1 << 16 => precision *= 2,
            other => return other,
        }
    }
}

/// Class of `x` in `Γ(q, 2, N)` at the place `0`.
pub fn zero_class(x: &OrderElement, alg: &AlgebraParams) -> Result<crate::group::GroupElement> {
    let r = with_precision(alg, |p| reduce_at_zero(x, alg, p))?;
    Ok(alg.group.element(r.k, r.e as i64))
}

pub fn infinity_class(x: &OrderElement, alg: &AlgebraParams) -> Result<LocalReduction> {
    with_precision(alg, |p| reduce_at_infinity(x, alg, p))
}

/// Inverse in `Z ⋉ Z/M`: `(k, e)^{-1} = (-k, -e q^{-k})`.
pub fn infinity_inverse(r: LocalReduction, alg: &AlgebraParams) -> LocalReduction {
    let m = alg.group.field_order() as i64;
    let qk = alg.group.q_pow((-r.k).rem_euclid(2) as u32) as i64;
    LocalReduction {
        k: -r.k,
        e: ((-(r.e as i64) * qk).rem_euclid(m)) as u32,
    }
}

/// Product in `Z ⋉ Z/M`.
pub fn infinity_mul(x: LocalReduction, y: LocalReduction, alg: &AlgebraParams) -> LocalReduction {
    let m = alg.group.field_order() as i64;
    let qk = alg.group.q_pow(y.k.rem_euclid(2) as u32) as i64;
    LocalReduction {
        k: x.k + y.k,
        e: ((x.e as i64 * qk + y.e as i64).rem_euclid(m)) as u32,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceCertificate {
    pub place: String,
    pub degree: usize,
    /// A nontrivial zero `(a, b, c)` of `a² - εb² - t c²` over the residue field.
    pub isotropic_vector: Option<[u32; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationCertificate {
    pub q: u32,
    pub eps: u32,
    pub split_places: Vec<PlaceCertificate>,
    pub division_at_zero: bool,
    pub division_at_infinity: bool,
    pub discriminant_ok: bool,
    pub closure_ok: bool,
    pub ok: bool,
}

/// Brute-force check that the norm form has no nontrivial zero modulo the
/// square of a uniformizer, for a place where `i² = ε` stays inert and the
/// uniformizer squares to `t` (or `1/t`). This is the division criterion.
fn local_division(f: &FiniteField, eps: u32) -> bool {
    let n = f.order();
    let norm = |x: u32, y: u32| f.sub(f.mul(x, x), f.mul(eps, f.mul(y, y)));
    // nrd ≡ N(a0, b0) + π (2(a0 a1 - ε b0 b1) - N(c0, d0)) mod π²
    for a0 in 0..n {
        for b0 in 0..n {
            for c0 in 0..n {
                for d0 in 0..n {
                    if (a0, b0, c0, d0) == (0, 0, 0, 0) || norm(a0, b0) != 0 {
                        continue;
                    }
                    if (a0, b0) != (0, 0) || norm(c0, d0) == 0 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Reduced discriminant test and closure of the basis under products.
fn order_checks(alg: &AlgebraParams) -> (bool, bool) {
    let f = &alg.fq;
    let basis = OrderElement::basis();
    let mut closure_ok = true;
    let mut gram = vec![vec![Poly::zero(); 4]; 4];
    for (r, x) in basis.iter().enumerate() {
        for (s, y) in basis.iter().enumerate() {
            let p = x.mul(y, alg);
            closure_ok &= p.m == 0;
            gram[r][s] = p.trd(alg).num;
        }
    }
    let det = poly_det(&gram, f);
    // det = c t² with c a nonzero constant: reduced discriminant (t)
    let disc_ok = det.degree() == Some(2) && det.coeff(0) == 0 && det.coeff(1) == 0;
    (disc_ok, closure_ok)
}

fn poly_det(m: &[Vec<Poly>], f: &FiniteField) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let term = m[0][col].mul(&poly_det(&minor, f), f);
        acc = if col % 2 == 0 {
            acc.add(&term, f)
        } else {
            acc.sub(&term, f)
        };
    }
    acc
}

/// Residue field of a finite place `π ≠ t` with the image of `t`.
pub fn residue_field_at(alg: &AlgebraParams, place: &Poly) -> Result<(FiniteField, u32)> {
    let k = FiniteField::extension(&alg.fq, place)?;
    let t_bar = crate::finite_field::encode_coeffs(Poly::t().rem(place, &alg.fq).coeffs(), alg.q);
    Ok((k, t_bar as u32))
}

pub fn ramification_certificate(alg: &AlgebraParams, max_degree: usize) -> Result<RamificationCertificate> {
    let f = &alg.fq;
    let mut split_places = vec![];
    for deg in 1..=max_degree {
        for place in monic_irreducibles(f, deg) {
            if place == Poly::t() {
                continue;
            }
            let (k, t_bar) = residue_field_at(alg, &place)?;
            let eps = alg.eps;
            let mut witness = None;
            'search: for a in 0..k.order() {
                for b in 0..k.order() {
                    for c in 0..k.order() {
                        if a == 0 && b == 0 && c == 0 {
                            continue;
                        }
                        let v = k.sub(
                            k.sub(k.mul(a, a), k.mul(eps, k.mul(b, b))),
                            k.mul(t_bar, k.mul(c, c)),
                        );
                        if v == 0 {
                            witness = Some([a, b, c]);
                            break 'search;
                        }
                    }
                }
            }
            split_places.push(PlaceCertificate {
                place: place.display(),
                degree: deg,
                isotropic_vector: witness,
            });
        }
    }
    let division = local_division(f, alg.eps);
    let (discriminant_ok, closure_ok) = order_checks(alg);
    let ok = split_places.iter().all(|p| p.isotropic_vector.is_some())
        && division
        && discriminant_ok
        && closure_ok;
    Ok(RamificationCertificate {
        q: alg.q,
        eps: alg.eps,
        split_places,
        division_at_zero: division,
        division_at_infinity: division,
        discriminant_ok,
        closure_ok,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::parse_poly;

    fn alg(q: u32) -> AlgebraParams {
        AlgebraParams::new(q, 1).unwrap()
    }

    fn p(s: &str, a: &AlgebraParams) -> Poly {
        parse_poly(s, &a.fq).unwrap()
    }

    #[test]
    fn rejects_even_q() {
        assert!(matches!(AlgebraParams::new(2, 1), Err(Error::InvalidParams(_))));
        assert!(matches!(AlgebraParams::new(4, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn nrd_examples() {
        let a = alg(3);
        // ε = 2 for q = 3
        assert_eq!(a.eps, 2);
        assert_eq!(OrderElement::j().nrd(&a).num, p("-t", &a));
        assert_eq!(OrderElement::i().nrd(&a).num, Poly::constant(a.fq.neg(a.eps)));
        let x = OrderElement::new(Poly::one(), Poly::t(), Poly::zero(), Poly::zero());
        assert_eq!(x.nrd(&a).num, p("1-2*t^2", &a));
    }

    #[test]
    fn presentation_relations() {
        let a = alg(5);
        let i = OrderElement::i();
        let j = OrderElement::j();
        assert_eq!(i.mul(&i, &a), OrderElement::scalar(a.eps));
        assert_eq!(j.mul(&j, &a), OrderElement::t_power(1));
        let ij = i.mul(&j, &a);
        assert_eq!(ij, OrderElement::ij());
        assert_eq!(j.mul(&i, &a), OrderElement::ij().mul(&OrderElement::scalar(a.fq.neg(1)), &a));
    }

    #[test]
    fn x_times_conj_is_nrd() {
        let a = alg(3);
        let x = OrderElement::new(p("1+t", &a), p("2", &a), p("t^2", &a), p("1", &a))
            .with_denominator(1);
        let prod = x.mul(&x.conj(&a), &a);
        let n = x.nrd(&a);
        assert_eq!(prod.a, n.num);
        assert_eq!(prod.m, n.den);
        assert!(prod.b.is_zero() && prod.c.is_zero() && prod.d.is_zero());
    }

    #[test]
    fn reduce_at_zero_examples() {
        let a = alg(3);
        let pr = a.initial_precision();
        assert_eq!(
            reduce_at_zero(&OrderElement::j(), &a, pr).unwrap(),
            LocalReduction { k: 1, e: 0 }
        );
        let i = reduce_at_zero(&OrderElement::i(), &a, pr).unwrap();
        assert_eq!(i.k, 0);
        // i has order 4 in F_9^*: exponent is 2 or 6
        assert!(i.e == 2 || i.e == 6);
        assert_eq!(a.residue_exp(i.e as i64), a.residue_code(0, 1));
        let one_plus_j = OrderElement::new(Poly::one(), Poly::zero(), Poly::one(), Poly::zero());
        assert_eq!(
            reduce_at_zero(&one_plus_j, &a, pr).unwrap(),
            LocalReduction { k: 0, e: 0 }
        );
        assert_eq!(
            reduce_at_zero(&OrderElement::t_power(1), &a, pr).unwrap(),
            LocalReduction { k: 2, e: 0 }
        );
        assert!(matches!(
            reduce_at_zero(&OrderElement::t_power(5), &a, 3),
            Err(Error::PrecisionExhausted { precision: 3 })
        ));
    }

    #[test]
    fn reduce_at_infinity_examples() {
        let a = alg(3);
        let pr = a.initial_precision();
        let pi = OrderElement::j().with_denominator(1);
        assert_eq!(
            reduce_at_infinity(&pi, &a, pr).unwrap(),
            LocalReduction { k: 1, e: 0 }
        );
        let i = reduce_at_infinity(&OrderElement::i(), &a, pr).unwrap();
        assert_eq!(i.k, 0);
        assert_eq!(a.residue_exp(i.e as i64), a.residue_code(0, 1));
        let lam = reduce_at_infinity(&OrderElement::scalar(2), &a, pr).unwrap();
        assert_eq!(lam.k, 0);
        assert_eq!(a.residue_exp(lam.e as i64), 2);
        // t has valuation -2 at ∞
        assert_eq!(
            reduce_at_infinity(&OrderElement::t_power(1), &a, pr).unwrap(),
            LocalReduction { k: -2, e: 0 }
        );
    }

    #[test]
    fn reductions_are_homomorphisms() {
        let a = alg(3);
        let xs = [
            OrderElement::new(p("1+t", &a), p("2", &a), p("t^2", &a), p("1", &a)),
            OrderElement::new(p("t", &a), p("1", &a), p("2", &a), p("0", &a)).with_denominator(1),
            OrderElement::new(p("0", &a), p("t", &a), p("1+t", &a), p("t", &a)),
            OrderElement::i(),
            OrderElement::j(),
        ];
        for x in &xs {
            for y in &xs {
                let xy = x.mul(y, &a);
                let lhs = zero_class(&xy, &a).unwrap();
                let rhs = a
                    .group
                    .mul(zero_class(x, &a).unwrap(), zero_class(y, &a).unwrap());
                assert_eq!(lhs, rhs);
                let lhs = infinity_class(&xy, &a).unwrap();
                let rhs = infinity_mul(
                    infinity_class(x, &a).unwrap(),
                    infinity_class(y, &a).unwrap(),
                    &a,
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn infinity_group_inverse() {
        let a = alg(5);
        for k in -3..4 {
            for e in [0u32, 1, 7, 23] {
                let x = LocalReduction { k, e };
                let y = infinity_inverse(x, &a);
                assert_eq!(infinity_mul(x, y, &a), LocalReduction { k: 0, e: 0 });
                assert_eq!(infinity_mul(y, x, &a), LocalReduction { k: 0, e: 0 });
            }
        }
    }

    #[test]
    fn certificates() {
        for q in [3, 5] {
            let c = ramification_certificate(&alg(q), 2).unwrap();
            assert!(c.ok, "{c:?}");
            let expected = (q - 1) as usize + (q * q - q) as usize / 2;
            assert_eq!(c.split_places.len(), expected);
        }
    }

    #[test]
    fn residue_helpers() {
        let a = alg(3);
        for u in 1..9 {
            let n = a.residue_norm(u);
            let prod = a.residue.mul(u, a.residue_conj(u));
            assert_eq!(prod, n);
            assert_eq!(a.residue.pow(u, 3), a.residue_conj(u));
        }
    }
}
