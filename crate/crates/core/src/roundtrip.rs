//! Seeded round-trip checks for the factorization.
//!
//! A random global element `γ` with an admissible norm and a random point
//! `d` of `X_N` determine an adele whose factorization must return `d`
//! with witness `γ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::adelic::{classify_norm, Adele, Factorizer, PlaceCoset, SearchBounds};
use crate::error::{Error, Result};
use crate::finite_field::Poly;
use crate::group::GroupElement;
use crate::quaternion::{infinity_class, infinity_inverse, zero_class, AlgebraParams, OrderElement};

const MAX_PART_DEGREE: usize = 2;
const MAX_DENOMINATOR: u32 = 2;

fn random_poly(alg: &AlgebraParams, rng: &mut impl Rng) -> Poly {
    Poly::from_coeffs((0..=MAX_PART_DEGREE).map(|_| rng.gen_range(0..alg.q)).collect())
}

/// A canonical `γ` whose norm is `c·t^a·π^δ` with `deg π ≤ 2`.
pub fn sample_gamma(alg: &AlgebraParams, rng: &mut impl Rng) -> OrderElement {
    loop {
        let x = OrderElement::new(
            random_poly(alg, rng),
            random_poly(alg, rng),
            random_poly(alg, rng),
            random_poly(alg, rng),
        )
        .with_denominator(rng.gen_range(0..=MAX_DENOMINATOR))
        .canonical();
        if x.is_zero() {
            continue;
        }
        match classify_norm(alg, &x.nrd_numerator(alg)) {
            Some(shape) if shape.place.as_ref().map_or(true, |p| p.degree() <= Some(2)) => {
                return x
            }
            _ => {}
        }
    }
}

/// The adele `d · r(γ)⁻¹` at 0, `r_∞(γ)⁻¹` at `∞`, and the coset of `γ` at
/// the place dividing its norm.
pub fn adele_for(fz: &Factorizer, gamma: &OrderElement, d: GroupElement) -> Result<Adele> {
    let alg = &fz.alg;
    let g = &alg.group;
    let shift = zero_class(gamma, alg)?;
    let infinity = infinity_inverse(infinity_class(gamma, alg)?, alg);
    let shape = classify_norm(alg, &gamma.nrd_numerator(alg))
        .ok_or_else(|| Error::Precondition(format!("{} has an inadmissible norm", gamma.display())))?;
    let place = match shape.place {
        None => None,
        Some(place) => {
            let line = fz.splitting(&place)?.image_line(gamma).ok_or_else(|| {
                Error::Precondition(format!("{} is divisible by {}", gamma.display(), place.display()))
            })?;
            Some(PlaceCoset { place, line })
        }
    };
    Ok(Adele {
        zero: g.mul(d, g.inv(shift)),
        infinity,
        place,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub gamma: String,
    pub expected: GroupElement,
    pub recovered: GroupElement,
    pub witness: String,
    pub ok: bool,
}

pub fn round_trip(fz: &Factorizer, gamma: &OrderElement, d: GroupElement, bounds: &SearchBounds) -> Result<RoundTrip> {
    let adele = adele_for(fz, gamma, d)?;
    let f = fz.factorize(&adele, bounds)?;
    Ok(RoundTrip {
        gamma: gamma.display(),
        expected: d,
        recovered: f.point,
        witness: f.witness.display(),
        ok: f.point == d && f.witness == *gamma,
    })
}

/// `count` round trips from a fixed seed; identical seeds give identical runs.
pub fn round_trips(fz: &Factorizer, seed: u64, count: usize, bounds: &SearchBounds) -> Result<Vec<RoundTrip>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = &fz.alg.group;
    let cases: Vec<(OrderElement, GroupElement)> = (0..count)
        .map(|_| {
            let gamma = sample_gamma(&fz.alg, &mut rng);
            let d = g.element_at(rng.gen_range(0..g.order()));
            (gamma, d)
        })
        .collect();
    cases
        .iter()
        .map(|(gamma, d)| round_trip(fz, gamma, *d, bounds))
        .collect()
}
