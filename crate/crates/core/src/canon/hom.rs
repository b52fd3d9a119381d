//! Checking candidate homomorphisms between hypersurface groups.

use crate::error::{Error, Result};
use crate::ppoly::{ore_left_divmod, PPoly};

/// Whether `X -> candidate(X)` maps `{G = 0}` into `{F = 0}`: substitutes
/// the candidate into `F` and divides by `G` in the distinguished variable
/// (the first variable of `G` unless given). True iff the remainder is zero.
pub fn hom_verify(g: &PPoly, f: &PPoly, candidate: &[PPoly], var: Option<usize>) -> Result<bool> {
    if candidate.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: candidate.len() });
    }
    for c in candidate {
        if c.nvars() != g.nvars() {
            return Err(Error::ArityMismatch { expected: g.nvars(), found: c.nvars() });
        }
    }
    let var = match var {
        Some(v) if g.involves(v) => v,
        Some(v) => return Err(Error::precondition(format!("G does not involve X{}", v + 1))),
        None => *g
            .vars()
            .first()
            .ok_or_else(|| Error::precondition("source relation is zero"))?,
    };
    let image = f.compose_components(candidate, g.nvars())?;
    let (_, rem) = ore_left_divmod(&image, g, var)?;
    Ok(rem.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::FieldCtx;
    use crate::universal::standard::standard_v;

    #[test]
    fn standard_v_maps() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let v = standard_v(&k, None, None).unwrap();
        let e = &v.presentation.equations()[0];
        let id: Vec<PPoly> = (0..2).map(|i| PPoly::var(&k, 2, i)).collect();
        assert!(hom_verify(e, e, &id, None).unwrap());
        let zero = vec![PPoly::zero(&k, 2); 2];
        assert!(hom_verify(e, e, &zero, None).unwrap());
        let swap = vec![PPoly::var(&k, 2, 1), PPoly::var(&k, 2, 0)];
        assert!(!hom_verify(e, e, &swap, None).unwrap());
    }
}
