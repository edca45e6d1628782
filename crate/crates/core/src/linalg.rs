//! Exact sparse Gauss–Jordan elimination over `Q(ζ_m)`.

use std::collections::BTreeMap;

use crate::cyclo::CycNumber;

/// Sparse row: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, CycNumber>;

/// Reduced row echelon form built one equation at a time.
///
/// Every stored row has coefficient 1 at its pivot and no entries in other
/// pivot columns, so reducing a new row is a single pass over its entries.
#[derive(Clone, Debug)]
pub struct Echelon {
    order: usize,
    n_vars: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(order: usize, n_vars: usize) -> Self {
        Echelon {
            order,
            n_vars,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation `Σ row[c]·x_c = 0`; returns whether the rank grew.
    pub fn push(&mut self, mut row: SparseRow) -> bool {
        row.retain(|_, v| !v.is_zero());
        let hits: Vec<(usize, CycNumber)> = row
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (c, coef) in hits {
            let pivot_row = &self.rows[&c];
            for (col, v) in pivot_row {
                let prod = coef.mul(v);
                let entry = row
                    .entry(*col)
                    .or_insert_with(|| CycNumber::zero(self.order));
                *entry = entry.sub(&prod);
            }
            row.retain(|_, v| !v.is_zero());
        }
        let Some((&pivot, lead)) = row.iter().next() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero pivot");
        for v in row.values_mut() {
            *v = v.mul(&inv);
        }
        for other in self.rows.values_mut() {
            if let Some(coef) = other.remove(&pivot) {
                for (col, v) in &row {
                    if *col == pivot {
                        continue;
                    }
                    let prod = coef.mul(v);
                    let entry = other
                        .entry(*col)
                        .or_insert_with(|| CycNumber::zero(self.order));
                    *entry = entry.sub(&prod);
                }
                other.retain(|_, v| !v.is_zero());
            }
        }
        self.rows.insert(pivot, row);
        true
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n_vars)
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }

    /// Kernel basis: one vector per free column, equal to 1 there and 0 at
    /// the other free columns.
    pub fn kernel(&self) -> Vec<Vec<CycNumber>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![CycNumber::zero(self.order); self.n_vars];
                v[f] = CycNumber::one(self.order);
                for (&p, row) in &self.rows {
                    if let Some(c) = row.get(&f) {
                        v[p] = c.neg();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn kernel_of_dense(order: usize, m: &[Vec<CycNumber>]) -> Vec<Vec<CycNumber>> {
    let n_vars = m.first().map_or(0, Vec::len);
    let mut ech = Echelon::new(order, n_vars);
    for r in m {
        ech.push(
            r.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.clone()))
                .collect(),
        );
    }
    ech.kernel()
}

/// Coordinates of `v` in the span of `basis` (assumed independent).
pub fn coordinates_in(order: usize, basis: &[Vec<CycNumber>], v: &[CycNumber]) -> Option<Vec<CycNumber>> {
    let b = basis.len();
    let mut ech = Echelon::new(order, b + 1);
    for (r, target) in v.iter().enumerate() {
        let mut row = SparseRow::new();
        for (j, col) in basis.iter().enumerate() {
            if !col[r].is_zero() {
                row.insert(j, col[r].clone());
            }
        }
        if !target.is_zero() {
            row.insert(b, target.neg());
        }
        ech.push(row);
    }
    let sol = ech.kernel().into_iter().find(|k| !k[b].is_zero())?;
    let y = sol[b].inv()?;
    Some(sol[..b].iter().map(|x| x.mul(&y)).collect())
}

pub type Matrix = Vec<Vec<CycNumber>>;

pub fn identity(order: usize, n: usize) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        CycNumber::one(order)
                    } else {
                        CycNumber::zero(order)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(order: usize, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![CycNumber::zero(order); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = out[i][j].add(&aik.mul(&b[k][j]));
                }
            }
        }
    }
    out
}

pub fn mat_vec(order: usize, a: &Matrix, v: &[CycNumber]) -> Vec<CycNumber> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(CycNumber::zero(order), |acc, (x, y)| acc.add(&x.mul(y)))
        })
        .collect()
}

pub fn trace(order: usize, a: &Matrix) -> CycNumber {
    (0..a.len()).fold(CycNumber::zero(order), |acc, i| acc.add(&a[i][i]))
}
