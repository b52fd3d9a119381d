use crate::error::{Error, Result};
use crate::funcfield::linalg::{ColumnSpace, Insertion};
use crate::funcfield::RatFunc;
use crate::ppoly::{MonoPPoly, PPoly};

use super::homogenize::homogenize;

/// A nonzero `x` in `k^n` with `P(x) = 0`, or `None` when `P` is reduced.
///
/// Variables of the ambient space that do not occur in `P` give the obvious
/// unit-vector zero.
pub fn principal_zero(p: &MonoPPoly) -> Result<Option<Vec<RatFunc>>> {
    let poly = p.as_ppoly();
    let k = poly.ctx();
    let n = poly.nvars();
    if let Some(free) = (0..n).find(|&i| !poly.involves(i)) {
        let mut v = vec![k.zero(); n];
        v[free] = k.one();
        return Ok(Some(v));
    }
    if n == 0 {
        return Ok(None);
    }
    let h = homogenize(p)?;
    let mut space = ColumnSpace::new(k, h.nrows());
    let mut col = 0;
    for (bi, b) in h.blocks().iter().enumerate() {
        for f in 0..b.len {
            if let Insertion::Dependent(combo) = space.insert(&h.column(bi, f)) {
                let mut x = vec![k.zero(); h.ncols()];
                x[col] = k.one();
                for (i, c) in combo {
                    x[i] = k.neg(&c);
                }
                let y = h.back_map(&x);
                if y.iter().all(|c| c.is_zero()) || !poly.eval(&y)?.is_zero() {
                    return Err(Error::invariant("transported zero is not a nontrivial zero"));
                }
                return Ok(Some(y));
            }
            col += 1;
        }
    }
    Ok(None)
}

/// Whether the principal part of `f` has only the trivial zero in `k^n`.
/// A variable of the ambient space that `f` does not involve is a zero
/// direction, so such `f` is never reduced.
pub fn is_reduced(f: &PPoly) -> Result<bool> {
    Ok(principal_zero(&f.principal_part())?.is_none())
}

/// `f` renumbered onto the variables it involves, with the index map back.
pub fn restrict_to_involved(f: &PPoly) -> (PPoly, Vec<usize>) {
    let vars = f.vars();
    let mut pos = vec![usize::MAX; f.nvars()];
    for (new, &old) in vars.iter().enumerate() {
        pos[old] = new;
    }
    let renamed = PPoly::from_terms(
        f.ctx(),
        vars.len(),
        f.terms().map(|(i, j, c)| (pos[i], j, c.clone())),
    );
    (renamed, vars)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::FieldCtx;

    #[test]
    fn examples() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let p = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, t.clone())]).principal_part();
        assert_eq!(principal_zero(&p).unwrap(), None);

        let q = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, k.one())]).principal_part();
        assert_eq!(principal_zero(&q).unwrap(), Some(vec![k.one(), k.one()]));

        let k3 = FieldCtx::standard(3, 1).unwrap();
        let t = k3.var(0);
        let e = PPoly::from_terms(
            &k3,
            3,
            [(0, 1, t.clone()), (1, 1, k3.one()), (2, 1, k3.neg(&k3.mul(&t, &t)))],
        )
        .principal_part();
        assert_eq!(principal_zero(&e).unwrap(), None);
    }

    #[test]
    fn mixed_degrees() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        // X^2 + t^2 Y vanishes at (t, 1)
        let p = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 0, k.mul(&t, &t))]).principal_part();
        let z = principal_zero(&p).unwrap().unwrap();
        assert!(p.as_ppoly().eval(&z).unwrap().is_zero());
        // X + t Y^2 vanishes at (t, 1)
        let p = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (1, 1, t.clone())]).principal_part();
        assert!(principal_zero(&p).unwrap().is_some());
    }
}
