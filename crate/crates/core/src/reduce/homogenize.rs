//! Replacing each variable of degree `p^d` by the standard universal form of
//! level `N - d`, which turns a monogeneous `P` into a homogeneous one of
//! degree `p^N` whose zeros and values are linear algebra over `k`.

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, IndexSet, Matrix, RatFunc};
use crate::ppoly::{MonoPPoly, PPoly};

/// The block of new variables standing for one original variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub var: usize,
    pub exp: u32,
    pub coeff: RatFunc,
    /// Level `m = N - exp` of the universal form substituted.
    pub level: u32,
    pub offset: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct Homogenized {
    ctx: FieldCtx,
    orig_nvars: usize,
    level: u32,
    blocks: Vec<Block>,
    poly: MonoPPoly,
}

impl Homogenized {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The homogeneous p-polynomial of degree `p^N`.
    pub fn poly(&self) -> &MonoPPoly {
        &self.poly
    }

    pub fn ncols(&self) -> usize {
        self.poly.nvars()
    }

    pub fn nrows(&self) -> usize {
        self.ctx.index_set(self.level).len()
    }

    /// Column for block variable `(b, f)`: the level-`N` expansion of
    /// `c_b * t^(f * p^d_b)`, as a dense vector indexed by `I_N`.
    pub fn column(&self, block: usize, f: usize) -> Vec<RatFunc> {
        let k = &self.ctx;
        let b = &self.blocks[block];
        let idx_m = k.index_set(b.level);
        let shift = k.p().pow(b.exp);
        let exps: Vec<u32> = idx_m.exps(f).iter().map(|e| e * shift).collect();
        let value = k.mul(&b.coeff, &k.monomial(&exps));
        self.expand(&value)
    }

    /// Dense level-`N` expansion vector of `a`.
    pub fn expand(&self, a: &RatFunc) -> Vec<RatFunc> {
        let k = &self.ctx;
        let mut v = vec![k.zero(); self.nrows()];
        for (g, c) in k.p_basis_expand(a, self.level).coeffs {
            v[g] = c;
        }
        v
    }

    /// All columns in block order.
    pub fn columns(&self) -> Vec<Vec<RatFunc>> {
        let mut out = Vec::with_capacity(self.ncols());
        for (bi, b) in self.blocks.iter().enumerate() {
            for f in 0..b.len {
                out.push(self.column(bi, f));
            }
        }
        out
    }

    /// Row-major coefficient matrix (`rows = I_N`).
    pub fn matrix(&self) -> Matrix {
        let cols = self.columns();
        (0..self.nrows()).map(|g| cols.iter().map(|c| c[g].clone()).collect()).collect()
    }

    /// Sends a point of the homogenized space to the original one via
    /// `y_i = sum_f t^f x_(i,f)^(p^m_i)`; variables absent from `P` get 0.
    pub fn back_map(&self, x: &[RatFunc]) -> Vec<RatFunc> {
        let k = &self.ctx;
        let mut y = vec![k.zero(); self.orig_nvars];
        for b in &self.blocks {
            let idx = k.index_set(b.level);
            let mut acc = k.zero();
            for f in 0..b.len {
                let xv = &x[b.offset + f];
                if xv.is_zero() {
                    continue;
                }
                let term = k.mul(&k.monomial(&idx.exps(f)), &k.frobenius(xv, b.level));
                acc = k.add(&acc, &term);
            }
            y[b.var] = acc;
        }
        y
    }
}

/// `sum_{f in I_m} t^f X_f^(p^m)` in `p^(rm)` variables: the standard
/// reduced universal form of level `m`.
pub fn universal_form(ctx: &FieldCtx, m: u32) -> PPoly {
    let idx = ctx.index_set(m);
    PPoly::from_terms(ctx, idx.len(), (0..idx.len()).map(|f| (f, m, ctx.monomial(&idx.exps(f)))))
}

pub fn homogenize(p: &MonoPPoly) -> Result<Homogenized> {
    if p.is_zero() {
        return Err(Error::precondition("cannot homogenize the zero p-polynomial"));
    }
    let ctx = p.as_ppoly().ctx().clone();
    let level = p.max_exp().unwrap();
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (var, exp, coeff) in p.entries() {
        let m = level - exp;
        let len = IndexSet::new(ctx.p(), ctx.r(), m).len();
        blocks.push(Block { var, exp, coeff, level: m, offset, len });
        offset += len;
    }
    let idx_of = |b: &Block, f: usize| ctx.index_set(b.level).exps(f);
    let mut terms = Vec::with_capacity(offset);
    for b in &blocks {
        let shift = ctx.p().pow(b.exp);
        for f in 0..b.len {
            let exps: Vec<u32> = idx_of(b, f).iter().map(|e| e * shift).collect();
            terms.push((b.offset + f, level, ctx.mul(&b.coeff, &ctx.monomial(&exps))));
        }
    }
    let poly = MonoPPoly::new(PPoly::from_terms(&ctx, offset, terms))?;
    Ok(Homogenized { ctx, orig_nvars: p.nvars(), level, blocks, poly })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_input_is_unchanged() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let p = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, t.clone())]).principal_part();
        let h = homogenize(&p).unwrap();
        assert_eq!(h.poly().as_ppoly(), p.as_ppoly());
        assert_eq!(h.back_map(&[t.clone(), k.one()]), vec![t, k.one()]);
    }

    #[test]
    fn degree_one_variable_is_expanded() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        // X + Y^2
        let p = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (1, 1, k.one())]).principal_part();
        let h = homogenize(&p).unwrap();
        let expect = PPoly::from_terms(&k, 3, [(0, 1, k.one()), (1, 1, t.clone()), (2, 1, k.one())]);
        assert_eq!(h.poly().as_ppoly(), &expect);
        assert_eq!(h.level(), 1);
        // (x0, x1, y) = (1, 0, 1) is a zero of the homogenized form
        let x = vec![k.one(), k.zero(), k.one()];
        assert!(h.poly().as_ppoly().eval(&x).unwrap().is_zero());
        let y = h.back_map(&x);
        assert!(y.iter().any(|c| !c.is_zero()));
        assert!(p.as_ppoly().eval(&y).unwrap().is_zero());
    }

    #[test]
    fn matrix_encodes_values() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let t = k.var(0);
        let p = PPoly::from_terms(&k, 2, [(0, 0, t.clone()), (1, 1, k.one())]).principal_part();
        let h = homogenize(&p).unwrap();
        let x: Vec<RatFunc> = (0..h.ncols()).map(|i| k.add(&k.int(i as i64), &t)).collect();
        let value = h.poly().as_ppoly().eval(&x).unwrap();
        let ax = crate::funcfield::linalg::mat_vec(&k, &h.matrix(), &x);
        assert_eq!(ax, h.expand(&value));
        assert_eq!(p.as_ppoly().eval(&h.back_map(&x)).unwrap(), value);
    }
}
