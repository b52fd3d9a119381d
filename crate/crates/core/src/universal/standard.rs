//! Constructors for the basic groups: `V_{P,L}`, Weil restrictions of
//! `alpha_p`, the `G_m` quotient, and the two small example groups.

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, IndexSet, RatFunc};
use crate::ppoly::{GroupPresentation, PPoly};
use crate::reduce::zero::is_reduced;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardKind {
    Vpl,
    WeilRestrictAlphaP(u32),
    WeilRestrictGmQuotient,
    ExampleW,
    ExampleE,
}

#[derive(Clone, Debug)]
pub struct StandardGroup {
    pub kind: StandardKind,
    pub presentation: GroupPresentation,
    /// The p-basis used for the coefficients (empty for the examples).
    pub lambda: Vec<RatFunc>,
    /// For `V_{P,L}`-shaped groups, the homogeneous part and linear part.
    pub principal: Option<PPoly>,
    pub linear: Option<PPoly>,
    pub zero_based: bool,
}

impl StandardGroup {
    /// One line per equation; `V_{P,L}` shapes print as `P - (-L)`.
    pub fn render(&self) -> Vec<String> {
        match (&self.principal, &self.linear) {
            (Some(p), Some(l)) => vec![render_vpl(p, l, self.zero_based)],
            _ => self.presentation.render(self.zero_based),
        }
    }
}

fn render_vpl(p: &PPoly, l: &PPoly, zero_based: bool) -> String {
    let k = p.ctx();
    let base = if zero_based { 0 } else { 1 };
    let mut out = p.render(zero_based);
    for (i, _, c) in l.terms() {
        let shown = k.neg(c);
        out.push_str(" - ");
        if !shown.is_one() {
            if k.is_small_int(&shown) {
                out.push_str(&k.render(&shown));
            } else {
                out.push_str(&format!("({})", k.render(&shown)));
            }
            out.push('*');
        }
        out.push_str(&format!("X{}", i + base));
    }
    out
}

/// `sum_f lambda^f X_f^p` over `f` in `I_1`, variables in index-set order.
pub fn level_one_form(ctx: &FieldCtx, lambda: &[RatFunc]) -> PPoly {
    let idx = ctx.index_set(1);
    PPoly::from_terms(
        ctx,
        idx.len(),
        (0..idx.len()).map(|f| (f, 1, lambda_power(ctx, lambda, &idx.exps(f)))),
    )
}

fn lambda_power(ctx: &FieldCtx, lambda: &[RatFunc], exps: &[u32]) -> RatFunc {
    lambda.iter().zip(exps).fold(ctx.one(), |acc, (l, &e)| {
        ctx.mul(&acc, &ctx.pow(l, e as i64).expect("nonnegative power"))
    })
}

fn standard_lambda(ctx: &FieldCtx) -> Vec<RatFunc> {
    (0..ctx.r()).map(|i| ctx.var(i)).collect()
}

fn check_lambda(ctx: &FieldCtx, lambda: &[RatFunc]) -> Result<PPoly> {
    if lambda.len() != ctx.r() {
        return Err(Error::precondition(format!(
            "expected {} elements for the p-basis, found {}",
            ctx.r(),
            lambda.len()
        )));
    }
    let p = level_one_form(ctx, lambda);
    if !is_reduced(&p)? {
        return Err(Error::precondition("the given elements are not a p-basis"));
    }
    Ok(p)
}

/// `{P + L = 0}` with `P` the level-one universal form; `L` defaults to
/// `-X_0`.
pub fn standard_v(
    ctx: &FieldCtx,
    lambda: Option<&[RatFunc]>,
    linear: Option<PPoly>,
) -> Result<StandardGroup> {
    if ctx.r() == 0 {
        return Err(Error::precondition("V_{P,L} needs a positive degree of imperfection"));
    }
    let lambda = lambda.map(<[RatFunc]>::to_vec).unwrap_or_else(|| standard_lambda(ctx));
    let p = check_lambda(ctx, &lambda)?;
    let n = p.nvars();
    let l = linear.unwrap_or_else(|| PPoly::var(ctx, n, 0).neg());
    if l.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: l.nvars() });
    }
    if l.is_zero() || !l.is_linear() {
        return Err(Error::precondition("L must be a nonzero linear form"));
    }
    vpl_group(ctx, StandardKind::Vpl, lambda, p, l)
}

fn vpl_group(
    ctx: &FieldCtx,
    kind: StandardKind,
    lambda: Vec<RatFunc>,
    p: PPoly,
    l: PPoly,
) -> Result<StandardGroup> {
    let n = p.nvars();
    let presentation = GroupPresentation::new(ctx, n, vec![p.add(&l)?])?;
    Ok(StandardGroup {
        kind,
        presentation,
        lambda,
        principal: Some(p),
        linear: Some(l),
        zero_based: true,
    })
}

/// `R(G_m)/G_m` for degree of imperfection one:
/// `sum_(i<p) lambda^i X_i^p - X_(p-1)`.
pub fn weil_restrict_gm_quotient(ctx: &FieldCtx, lambda: Option<&RatFunc>) -> Result<StandardGroup> {
    if ctx.r() != 1 {
        return Err(Error::precondition("the G_m quotient needs degree of imperfection 1"));
    }
    let lam = lambda.cloned().unwrap_or_else(|| ctx.var(0));
    if ctx.pn_root(&lam, 1).is_some() {
        return Err(Error::precondition("lambda must not be a p-th power"));
    }
    let p = check_lambda(ctx, std::slice::from_ref(&lam))?;
    let n = p.nvars();
    let l = PPoly::var(ctx, n, n - 1).neg();
    vpl_group(ctx, StandardKind::WeilRestrictGmQuotient, vec![lam], p, l)
}

/// One factor of the product decomposition at level `n`.
#[derive(Clone, Debug)]
pub struct WeilBlock {
    /// Residue class `g` in `I_(n-1)`, as an index.
    pub residue: usize,
    /// `vars[h]` is the ambient variable `f` with `(f - g) / p^(n-1) = h`.
    pub vars: Vec<usize>,
    /// The block equation in the ambient variables.
    pub equation: PPoly,
    /// The same equation pulled back along `h -> vars[h]`.
    pub local: PPoly,
}

#[derive(Clone, Debug)]
pub struct WeilRestriction {
    pub level: u32,
    pub nvars: usize,
    pub blocks: Vec<WeilBlock>,
}

impl WeilRestriction {
    pub fn presentation(&self, ctx: &FieldCtx) -> Result<GroupPresentation> {
        GroupPresentation::new(ctx, self.nvars, self.blocks.iter().map(|b| b.equation.clone()).collect())
    }

    /// One presentation per block, in that block's own variables.
    pub fn block_presentations(&self, ctx: &FieldCtx) -> Result<Vec<GroupPresentation>> {
        self.blocks
            .iter()
            .map(|b| GroupPresentation::new(ctx, b.local.nvars(), vec![b.local.clone()]))
            .collect()
    }
}

/// Equations for the Weil restriction of `alpha_p` along `k^(1/p^n)/k`,
/// split into `p^(r(n-1))` blocks of the level-one shape.
pub fn weil_restrict_alpha_p(ctx: &FieldCtx, n: u32) -> Result<WeilRestriction> {
    if n == 0 {
        return Err(Error::precondition("level must be at least 1"));
    }
    if ctx.r() == 0 {
        return Err(Error::precondition("Weil restriction needs a positive degree of imperfection"));
    }
    let lambda = standard_lambda(ctx);
    let top = ctx.index_set(n);
    let lower = ctx.index_set(n - 1);
    let one = ctx.index_set(1);
    let shift = ctx.p().pow(n - 1);
    let nvars = top.len();
    let blocks = (0..lower.len())
        .map(|g| {
            let ge = lower.exps(g);
            let vars: Vec<usize> = (0..one.len())
                .map(|h| block_index(&top, &ge, &one.exps(h), shift))
                .collect();
            let coeff = |h: usize| lambda_power(ctx, &lambda, &one.exps(h));
            let equation = PPoly::from_terms(ctx, nvars, (0..one.len()).map(|h| (vars[h], 1, coeff(h))));
            let local = PPoly::from_terms(ctx, one.len(), (0..one.len()).map(|h| (h, 1, coeff(h))));
            WeilBlock { residue: g, vars, equation, local }
        })
        .collect();
    Ok(WeilRestriction { level: n, nvars, blocks })
}

fn block_index(top: &IndexSet, g: &[u32], h: &[u32], shift: u32) -> usize {
    let f: Vec<u32> = g.iter().zip(h).map(|(a, b)| a + shift * b).collect();
    top.index(&f)
}

/// `X1 + X1^p + a X2^p`.
pub fn example_w(ctx: &FieldCtx, a: &RatFunc) -> Result<StandardGroup> {
    let one = ctx.one();
    let f = PPoly::from_terms(ctx, 2, [(0, 0, one.clone()), (0, 1, one), (1, 1, a.clone())]);
    example(ctx, StandardKind::ExampleW, f)
}

/// `X1 + a X1^p + X2^p - b X3^p`.
pub fn example_e(ctx: &FieldCtx, a: &RatFunc, b: &RatFunc) -> Result<StandardGroup> {
    let one = ctx.one();
    let f = PPoly::from_terms(
        ctx,
        3,
        [(0, 0, one.clone()), (0, 1, a.clone()), (1, 1, one), (2, 1, ctx.neg(b))],
    );
    example(ctx, StandardKind::ExampleE, f)
}

fn example(ctx: &FieldCtx, kind: StandardKind, f: PPoly) -> Result<StandardGroup> {
    let n = f.nvars();
    Ok(StandardGroup {
        kind,
        presentation: GroupPresentation::new(ctx, n, vec![f])?,
        lambda: Vec::new(),
        principal: None,
        linear: None,
        zero_based: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::classify::classify;

    #[test]
    fn v_display() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let v = standard_v(&k, None, None).unwrap();
        assert_eq!(v.render(), vec!["X0^2 + (t)*X1^2 - X0".to_string()]);
        let k3 = FieldCtx::standard(3, 1).unwrap();
        let v3 = standard_v(&k3, None, None).unwrap();
        assert_eq!(v3.render(), vec!["X0^3 + (t)*X1^3 + (t^2)*X2^3 - X0".to_string()]);
        let c = classify(&v3.presentation.equations()[0]).unwrap();
        assert_eq!(c.permawound, Some(true));
    }

    #[test]
    fn v_two_variables() {
        let k = FieldCtx::standard(2, 2).unwrap();
        let v = standard_v(&k, None, None).unwrap();
        let p = v.principal.as_ref().unwrap();
        let coeffs: Vec<String> = p.terms().map(|(_, _, c)| k.render(c)).collect();
        assert_eq!(coeffs, vec!["1", "t1", "t2", "t1*t2"]);
    }

    #[test]
    fn bad_lambda() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t2 = k.mul(&k.var(0), &k.var(0));
        assert!(standard_v(&k, Some(&[t2]), None).is_err());
        assert!(standard_v(&FieldCtx::standard(2, 0).unwrap(), None, None).is_err());
    }

    #[test]
    fn weil_blocks() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let w1 = weil_restrict_alpha_p(&k, 1).unwrap();
        assert_eq!(w1.blocks.len(), 1);
        assert_eq!(w1.blocks[0].equation.render(true), "X0^2 + (t)*X1^2");
        let w2 = weil_restrict_alpha_p(&k, 2).unwrap();
        assert_eq!(w2.nvars, 4);
        assert_eq!(w2.blocks.len(), 2);
        for b in &w2.blocks {
            assert_eq!(b.local, w1.blocks[0].equation);
        }
        assert_eq!(w2.blocks[1].vars, vec![1, 3]);
    }

    #[test]
    fn gm_quotient() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let g = weil_restrict_gm_quotient(&k, None).unwrap();
        assert_eq!(g.render(), vec!["X0^3 + (t)*X1^3 + (t^2)*X2^3 - X2".to_string()]);
        assert!(weil_restrict_gm_quotient(&k, Some(&k.one())).is_err());
    }
}
