//! Linear changes of variables between `P + L` hypersurfaces.

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::gfq::PrimeFieldCtx;
use crate::ppoly::{AdditiveSubst, PPoly};
use crate::reduce::zero::is_reduced;

/// A pair `(P, L)` with `P` reduced homogeneous of degree `p^n` in `p^(rn)`
/// variables and `L` a nonzero linear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VplPair {
    pub principal: PPoly,
    pub linear: PPoly,
}

impl VplPair {
    pub fn new(principal: PPoly, linear: PPoly) -> Result<Self> {
        let pair = VplPair { principal, linear };
        pair.level()?;
        Ok(pair)
    }

    /// The `n` with `deg P = p^n`; validates the shape.
    pub fn level(&self) -> Result<u32> {
        let p = &self.principal;
        let l = &self.linear;
        if p.nvars() != l.nvars() {
            return Err(Error::ArityMismatch { expected: p.nvars(), found: l.nvars() });
        }
        if l.is_zero() || !l.is_linear() {
            return Err(Error::precondition("L must be a nonzero linear form"));
        }
        let mut exps = p.terms().map(|(_, j, _)| j);
        let n = exps.next().ok_or_else(|| Error::precondition("P is zero"))?;
        if n == 0 || exps.any(|j| j != n) || !p.is_monogeneous() {
            return Err(Error::precondition("P must be homogeneous of degree p^n with n >= 1"));
        }
        let ctx = p.ctx();
        let expected = (ctx.p() as usize).pow(ctx.r() as u32 * n);
        if p.nvars() != expected {
            return Err(Error::precondition(format!("P must have {expected} variables")));
        }
        if !is_reduced(p)? {
            return Err(Error::precondition("P is not reduced"));
        }
        Ok(n)
    }

    pub fn equation(&self) -> PPoly {
        self.principal.add(&self.linear).expect("arity checked")
    }

    fn embed(&self, target: &FieldCtx, f: &dyn Fn(&RatFunc) -> RatFunc) -> VplPair {
        VplPair {
            principal: self.principal.map_field(target, f),
            linear: self.linear.map_field(target, f),
        }
    }
}

/// Whether `(P1 + L1) o sigma = c (P2 + L2)` with `sigma` invertible linear.
pub fn verify_vpl_change_of_vars(
    source: &VplPair,
    target: &VplPair,
    c: &RatFunc,
    sigma: &AdditiveSubst,
) -> Result<bool> {
    source.level()?;
    target.level()?;
    let n = source.principal.nvars();
    if target.principal.nvars() != n {
        return Err(Error::ArityMismatch { expected: n, found: target.principal.nvars() });
    }
    if sigma.source_arity() != n || sigma.target_arity() != n {
        return Ok(false);
    }
    if c.is_zero() || !sigma.is_invertible_linear() {
        return Ok(false);
    }
    let lhs = source.equation().compose(sigma)?;
    Ok(lhs == target.equation().scale(c))
}

#[derive(Clone, Debug)]
pub struct VplSolution {
    /// Degree `m` of the constant extension used.
    pub extension_degree: u32,
    pub field: FieldCtx,
    pub source: VplPair,
    pub target: VplPair,
    pub scalar: RatFunc,
    pub c: RatFunc,
    pub sigma: AdditiveSubst,
}

/// `s` in `F_(q^m)` with `s^(p^n - 1) = rho`, least encoding first.
fn scalar_root(gf: &PrimeFieldCtx, rho: crate::gfq::Fq, exp: u64) -> Option<crate::gfq::Fq> {
    gf.elements().filter(|s| !s.is_zero()).find(|&s| gf.pow(s, exp) == rho)
}

/// Searches for `sigma = s I` and `c = s mu` over constant extensions of
/// degree at most `max_ext`. Handles target pairs with `P1 = kappa P2`,
/// `L1 = mu L2` and `mu / kappa` constant.
pub fn solve_vpl_scalar(source: &VplPair, target: &VplPair, max_ext: u32) -> Result<VplSolution> {
    let n = source.level()?;
    if target.level()? != n {
        return Err(Error::precondition("pairs have different levels"));
    }
    let k = source.principal.ctx();
    let kappa = proportion(&source.principal, &target.principal)
        .ok_or_else(|| Error::Unsupported("principal parts are not proportional".into()))?;
    let mu = proportion(&source.linear, &target.linear)
        .ok_or_else(|| Error::Unsupported("linear parts are not proportional".into()))?;
    let rho = k.div(&mu, &kappa).expect("kappa is nonzero");
    let rho_c = rho
        .is_constant()
        .then(|| rho.num().constant_value())
        .flatten()
        .ok_or_else(|| Error::Unsupported("requires non-constant separable extension".into()))?;
    let gf = k.gf();
    let exp = (k.p() as u64).pow(n) - 1;
    for m in 1..=max_ext.max(1) {
        let Ok(ext) = PrimeFieldCtx::with_degree(gf.p(), gf.e() * m) else {
            break;
        };
        let emb = gf
            .embedding_into(&ext)
            .ok_or_else(|| Error::invariant("constant field does not embed in its extension"))?;
        let Some(s) = scalar_root(&ext, emb.apply(rho_c), exp) else {
            continue;
        };
        let big = k.with_constants(ext.clone());
        let lift = |a: &RatFunc| k.embed(a, &emb, &big);
        let src = source.embed(&big, &lift);
        let tgt = target.embed(&big, &lift);
        let scalar = big.constant(s);
        let c = big.mul(&scalar, &lift(&mu));
        let nv = src.principal.nvars();
        let inv = big.inv(&scalar).expect("nonzero");
        let sigma = AdditiveSubst::new(
            nv,
            (0..nv).map(|i| PPoly::term(&big, nv, i, 0, scalar.clone())).collect(),
        )
        .with_inverse((0..nv).map(|i| PPoly::term(&big, nv, i, 0, inv.clone())).collect());
        if !verify_vpl_change_of_vars(&src, &tgt, &c, &sigma)? {
            return Err(Error::invariant("scalar solution fails verification"));
        }
        return Ok(VplSolution {
            extension_degree: m,
            field: big,
            source: src,
            target: tgt,
            scalar,
            c,
            sigma,
        });
    }
    Err(Error::Unsupported(format!(
        "no scalar solution over constant extensions of degree <= {max_ext}"
    )))
}

/// `kappa` with `a = kappa b`, if any.
fn proportion(a: &PPoly, b: &PPoly) -> Option<RatFunc> {
    let k = a.ctx();
    let (i, j, cb) = b.terms().next()?;
    let ca = a.coeff(i, j)?;
    let kappa = k.div(ca, cb)?;
    (b.scale(&kappa) == *a).then_some(kappa)
}
