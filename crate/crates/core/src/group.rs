//! The finite metacyclic groups `Γ(q, n, N) = Z/(nN) ⋉ Z/(q^n - 1)`.
//!
//! These are the quotients of `Z ⋉ F_{q^n}^*` (the unit group of a division
//! algebra of index `n` over `F_q((t))` modulo its first congruence subgroup)
//! by the central subgroup generated by the `nN`-th power of a uniformizer.
//! The multiplicative group of `F_{q^n}` is treated abstractly as the cyclic
//! group of exponents of a fixed generator, with Frobenius acting as
//! multiplication by `q`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_field::is_prime_power;

/// Largest supported `q^n - 1`.
pub const MAX_FIELD_UNITS: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    pub q: u32,
    pub n: u32,
    #[serde(rename = "N")]
    pub level: u32,
}

impl GroupParams {
    pub fn new(q: u32, n: u32, level: u32) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
        }
        if n == 0 || level == 0 {
            return Err(Error::InvalidParams("n and N must be positive".into()));
        }
        let m = (q as u64).checked_pow(n).map(|v| v - 1);
        match m {
            Some(m) if m <= MAX_FIELD_UNITS => {}
            _ => {
                return Err(Error::InvalidParams(format!(
                    "q^n - 1 exceeds {MAX_FIELD_UNITS}"
                )))
            }
        }
        if (n as u64) * (level as u64) > 1 << 12 {
            return Err(Error::InvalidParams("nN too large".into()));
        }
        Ok(GroupParams { q, n, level })
    }

    /// `M = q^n - 1`, the order of the field part.
    pub fn field_order(&self) -> u32 {
        (self.q as u64).pow(self.n) as u32 - 1
    }

    /// `R = nN`, the order of the Frobenius part.
    pub fn frob_order(&self) -> u32 {
        self.n * self.level
    }

    pub fn order(&self) -> usize {
        self.field_order() as usize * self.frob_order() as usize
    }

    /// `q^k mod M`; well defined for `k` modulo `R` since `n | R`.
    pub fn q_pow(&self, k: u32) -> u32 {
        let m = self.field_order() as u64;
        if m == 1 {
            return 0;
        }
        let mut acc = 1u64;
        for _ in 0..(k % self.n) {
            acc = acc * self.q as u64 % m;
        }
        acc as u32
    }

    /// Ambient cyclotomic order `lcm(M, R)` used for all character values.
    pub fn cyclotomic_order(&self) -> usize {
        crate::cyclo::lcm(self.field_order() as usize, self.frob_order() as usize)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { k: 0, e: 0 }
    }

    pub fn frobenius(&self) -> GroupElement {
        GroupElement {
            k: 1 % self.frob_order(),
            e: 0,
        }
    }

    pub fn field_generator(&self) -> GroupElement {
        GroupElement {
            k: 0,
            e: 1 % self.field_order(),
        }
    }

    pub fn element(&self, k: i64, e: i64) -> GroupElement {
        GroupElement {
            k: k.rem_euclid(self.frob_order() as i64) as u32,
            e: e.rem_euclid(self.field_order() as i64) as u32,
        }
    }

    /// `(k, e)·(k', e') = (k + k', e·q^{k'} + e')`.
    pub fn mul(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        let r = self.frob_order();
        let m = self.field_order() as u64;
        GroupElement {
            k: (a.k + b.k) % r,
            e: ((a.e as u64 * self.q_pow(b.k) as u64 + b.e as u64) % m) as u32,
        }
    }

    pub fn inv(&self, a: GroupElement) -> GroupElement {
        let r = self.frob_order();
        let m = self.field_order() as u64;
        let k = (r - a.k) % r;
        let e = (m - (a.e as u64 * self.q_pow(k) as u64) % m) % m;
        GroupElement { k, e: e as u32 }
    }

    pub fn pow(&self, a: GroupElement, mut p: u64) -> GroupElement {
        let mut acc = self.identity();
        let mut base = a;
        while p > 0 {
            if p & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            p >>= 1;
        }
        acc
    }

    /// Elements in canonical order: index `k·M + e`.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let m = self.field_order();
        (0..self.frob_order()).flat_map(move |k| (0..m).map(move |e| GroupElement { k, e }))
    }

    pub fn index(&self, a: GroupElement) -> usize {
        a.k as usize * self.field_order() as usize + a.e as usize
    }

    pub fn element_at(&self, idx: usize) -> GroupElement {
        let m = self.field_order() as usize;
        GroupElement {
            k: (idx / m) as u32,
            e: (idx % m) as u32,
        }
    }

    /// Conjugacy classes by breadth-first closure under conjugation by the
    /// two generators. Classes are listed by smallest element index and each
    /// class is sorted.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let gens = [self.frobenius(), self.field_generator()];
        let mut classes = vec![];
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                let x = self.element_at(i);
                for g in gens {
                    let y = self.mul(self.mul(g, x), self.inv(g));
                    let j = self.index(y);
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                        queue.push_back(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass {
                representative: self.element_at(members[0]),
                members: members.into_iter().map(|i| self.element_at(i)).collect(),
            });
        }
        classes
    }
}

/// `(k, e)` stands for `Φ^k u^e` where `Φ` is the Frobenius generator and
/// `u` the fixed generator of the field part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub k: u32,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: GroupElement,
    pub members: Vec<GroupElement>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}
