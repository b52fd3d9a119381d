//! Exact linear algebra over `k`.
//!
//! [`mat_kernel`] and [`mat_solve`] clear denominators row by row and run
//! fraction-free (Bareiss) elimination over `F_q[t1..tr]`, so intermediate
//! entries stay polynomial. [`ColumnSpace`] is an incremental echelon basis
//! used where columns arrive one at a time and the first dependency matters.

use std::collections::BTreeMap;

use super::mpoly::MPoly;
use super::{FieldCtx, RatFunc};

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<RatFunc>>;

struct Echelon {
    rows: Vec<Vec<MPoly>>,
    /// `(row, column)` of each pivot, in order.
    pivots: Vec<(usize, usize)>,
}

fn clear_denominators(k: &FieldCtx, row: &[RatFunc]) -> Vec<MPoly> {
    let gf = k.gf();
    let r = k.r();
    let mut l = MPoly::one(r);
    for x in row {
        if !x.den().is_one() {
            let g = l.gcd(x.den(), r, gf);
            l = l.mul(&x.den().div_exact(&g, gf).unwrap(), gf);
        }
    }
    row.iter()
        .map(|x| x.num().mul(&l.div_exact(x.den(), gf).unwrap(), gf))
        .collect()
}

fn bareiss(k: &FieldCtx, m: &Matrix, ncols: usize) -> Echelon {
    let gf = k.gf();
    let mut rows: Vec<Vec<MPoly>> = m.iter().map(|row| clear_denominators(k, row)).collect();
    let mut pivots = Vec::new();
    let mut prev = MPoly::one(k.r());
    let mut top = 0;
    for c in 0..ncols {
        if top == rows.len() {
            break;
        }
        let Some(pr) = (top..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(top, pr);
        let (head, tail) = rows.split_at_mut(top + 1);
        let prow = &head[top];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for l in c + 1..ncols {
                let a = prow[c].mul(&row[l], gf);
                let b = if factor.is_zero() { MPoly::zero() } else { factor.mul(&prow[l], gf) };
                let num = a.sub(&b, gf);
                row[l] = num.div_exact(&prev, gf).expect("Bareiss division is exact");
            }
            row[c] = MPoly::zero();
        }
        prev = rows[top][c].clone();
        pivots.push((top, c));
        top += 1;
    }
    Echelon { rows, pivots }
}

fn back_substitute(k: &FieldCtx, ech: &Echelon, ncols: usize, mut v: Vec<RatFunc>, rhs: Option<usize>) -> Vec<RatFunc> {
    for &(row, col) in ech.pivots.iter().rev() {
        let mut acc = match rhs {
            Some(b) => k.poly(ech.rows[row][b].clone()),
            None => k.zero(),
        };
        for l in col + 1..ncols {
            let a = &ech.rows[row][l];
            if a.is_zero() || v[l].is_zero() {
                continue;
            }
            acc = k.sub(&acc, &k.mul(&k.poly(a.clone()), &v[l]));
        }
        v[col] = k.div(&acc, &k.poly(ech.rows[row][col].clone())).unwrap();
    }
    v
}

/// A basis of `{v : M v = 0}`, one vector per non-pivot column.
pub fn mat_kernel(k: &FieldCtx, m: &Matrix, ncols: usize) -> Vec<Vec<RatFunc>> {
    let ech = bareiss(k, m, ncols);
    let pivot_cols: Vec<usize> = ech.pivots.iter().map(|p| p.1).collect();
    (0..ncols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = vec![k.zero(); ncols];
            v[free] = k.one();
            back_substitute(k, &ech, ncols, v, None)
        })
        .collect()
}

/// Some `x` with `M x = b`, free variables set to zero; `None` when
/// inconsistent.
pub fn mat_solve(k: &FieldCtx, m: &Matrix, ncols: usize, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let ech = bareiss(k, &aug, ncols + 1);
    if ech.pivots.iter().any(|p| p.1 == ncols) {
        return None;
    }
    // rows hold M x = b, so move b to the accumulator side
    let v = vec![k.zero(); ncols];
    Some(back_substitute(k, &ech, ncols, v, Some(ncols)))
}

pub fn mat_vec(k: &FieldCtx, m: &Matrix, v: &[RatFunc]) -> Vec<RatFunc> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(k.zero(), |acc, (a, x)| {
                if a.is_zero() || x.is_zero() {
                    acc
                } else {
                    k.add(&acc, &k.mul(a, x))
                }
            })
        })
        .collect()
}

/// Sparse linear combination of inserted columns, keyed by insertion index.
pub type Combination = BTreeMap<usize, RatFunc>;

/// Echelon basis of the span of a growing list of column vectors, tracking
/// each basis vector as a combination of the inserted columns.
#[derive(Clone)]
pub struct ColumnSpace {
    k: FieldCtx,
    dim: usize,
    basis: Vec<Vec<RatFunc>>,
    pivots: Vec<usize>,
    combos: Vec<Combination>,
    inserted: usize,
}

pub enum Insertion {
    /// The column enlarged the span.
    Independent,
    /// The column equals this combination of earlier columns.
    Dependent(Combination),
}

fn axpy(k: &FieldCtx, target: &mut Combination, coef: &RatFunc, src: &Combination) {
    for (&i, x) in src {
        let entry = target.entry(i).or_insert_with(|| k.zero());
        *entry = k.add(entry, &k.mul(coef, x));
        if entry.is_zero() {
            target.remove(&i);
        }
    }
}

impl ColumnSpace {
    pub fn new(k: &FieldCtx, dim: usize) -> Self {
        ColumnSpace { k: k.clone(), dim, basis: Vec::new(), pivots: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the basis; returns the residual and the
    /// combination `c` with `v = residual + sum c_i col_i`.
    pub fn reduce(&self, v: &[RatFunc]) -> (Vec<RatFunc>, Combination) {
        let k = &self.k;
        let mut v = v.to_vec();
        let mut combo = Combination::new();
        for ((b, &piv), bc) in self.basis.iter().zip(&self.pivots).zip(&self.combos) {
            if v[piv].is_zero() {
                continue;
            }
            let coef = v[piv].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = k.sub(x, &k.mul(&coef, y));
                }
            }
            axpy(k, &mut combo, &coef, bc);
        }
        (v, combo)
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        self.reduce(v).0.iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` in terms of inserted columns, if `v` is in the span.
    pub fn solve(&self, v: &[RatFunc]) -> Option<Combination> {
        let (res, combo) = self.reduce(v);
        res.iter().all(|x| x.is_zero()).then_some(combo)
    }

    pub fn insert(&mut self, v: &[RatFunc]) -> Insertion {
        assert_eq!(v.len(), self.dim);
        let k = self.k.clone();
        let idx = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let Some(piv) = res.iter().position(|x| !x.is_zero()) else {
            return Insertion::Dependent(combo);
        };
        let inv = k.inv(&res[piv]).unwrap();
        let b: Vec<RatFunc> = res.iter().map(|x| k.mul(x, &inv)).collect();
        // b = (col_idx - combo) * inv
        let mut bc = Combination::new();
        bc.insert(idx, inv.clone());
        axpy(&k, &mut bc, &k.neg(&inv), &combo);
        self.basis.push(b);
        self.pivots.push(piv);
        self.combos.push(bc);
        Insertion::Independent
    }
}
