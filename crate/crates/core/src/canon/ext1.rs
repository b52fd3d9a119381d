//! One-variable p-polynomials modulo `F_*(Hom(G_a, G_a^n))`: reduction
//! below `p^N` when the principal part is universal, and certificates of
//! independence when it is not.

use crate::error::{Error, Result};
use crate::funcfield::linalg::ColumnSpace;
use crate::funcfield::RatFunc;
use crate::ppoly::{MonoPPoly, PPoly};
use crate::reduce::homogenize::homogenize;
use crate::reduce::zero::is_reduced;
use crate::universal::verdict::{find_unrepresented, is_universal, Representer};

#[derive(Clone, Debug)]
pub struct Ext1Reduction {
    pub input: PPoly,
    /// Degree below `p^N`.
    pub representative: PPoly,
    /// One-variable p-polynomials `Y_i(T)` with
    /// `input = representative + F(Y_1, ..., Y_n)`.
    pub certificate: Vec<PPoly>,
}

impl Ext1Reduction {
    pub fn verify(&self, f: &PPoly) -> Result<bool> {
        let image = f.compose_components(&self.certificate, 1)?;
        Ok(self.representative.add(&image)? == self.input)
    }
}

fn top_level(f: &PPoly) -> Result<u32> {
    (0..f.nvars())
        .filter_map(|i| f.top_exp(i))
        .max()
        .ok_or_else(|| Error::precondition("F is zero"))
}

/// Strips the top term `a T^(p^m)`, `m >= N`, by subtracting
/// `F(c_1 T^(p^(m-d_1)), ...)` with `P(c) = a`, until the degree drops
/// below `p^N`.
pub fn ext1_reduce(f1: &PPoly, f: &PPoly) -> Result<Ext1Reduction> {
    if f1.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: f1.nvars() });
    }
    let pp = f.principal_part();
    if !is_universal(&pp)?.universal {
        return Err(Error::precondition("principal part of F is not universal"));
    }
    let ctx = f.ctx();
    let n = f.nvars();
    let big_n = top_level(f)?;
    let rep = Representer::new(&pp)?;
    let mut cur = f1.clone();
    let mut cert = vec![PPoly::zero(ctx, 1); n];
    while let Some(m) = cur.top_exp(0).filter(|&m| m >= big_n) {
        let a = cur.coeff(0, m).unwrap().clone();
        let c = rep.represent(&a)?;
        let ys: Vec<PPoly> = (0..n)
            .map(|i| match f.top_exp(i) {
                Some(d) => PPoly::term(ctx, 1, 0, m - d, c[i].clone()),
                None => PPoly::zero(ctx, 1),
            })
            .collect();
        let sub = f.compose_components(&ys, 1)?;
        let next = cur.sub(&sub)?;
        if next.top_exp(0).is_some_and(|e| e >= m) {
            return Err(Error::invariant("top term was not removed"));
        }
        for (acc, y) in cert.iter_mut().zip(&ys) {
            *acc = acc.add(y)?;
        }
        cur = next;
    }
    Ok(Ext1Reduction { input: f1.clone(), representative: cur, certificate: cert })
}

/// For each listed power `p^s` as the top of a combination
/// `sum lambda_i^(p^i) T^(p^i)`, equating leading coefficients in
/// `mu F(Y) = ...` would give `(mu P)(c_1 / lambda_s^(p^(s-d_1)), ...) = 1`.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub power: u32,
    /// `s - d_i` for each variable.
    pub shifts: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct IndependenceCertificate {
    /// Normalizing constant: `1` is not a value of `mu P`.
    pub mu: RatFunc,
    /// The exponents `s` of the powers `T^(p^s)`.
    pub powers: Vec<u32>,
    pub obstructions: Vec<Obstruction>,
}

pub fn ext1_independence(f: &PPoly, powers: &[u32]) -> Result<IndependenceCertificate> {
    if !is_reduced(f)? {
        return Err(Error::precondition("F must be reduced"));
    }
    let pp = f.principal_part();
    if is_universal(&pp)?.universal {
        return Err(Error::precondition("principal part of F is universal"));
    }
    let big_n = top_level(f)?;
    let a = find_unrepresented(&pp)?;
    let mu = f.ctx().inv(&a).ok_or_else(|| Error::invariant("unrepresented element is zero"))?;
    let mut obstructions = Vec::new();
    for &s in powers {
        if s < big_n {
            return Err(Error::precondition(format!("power p^{s} is below p^{big_n}")));
        }
        let shifts = pp.entries().iter().map(|(_, d, _)| s - d).collect();
        obstructions.push(Obstruction { power: s, shifts });
    }
    let cert = IndependenceCertificate { mu, powers: powers.to_vec(), obstructions };
    if !check_independence(f, &cert)? {
        return Err(Error::invariant("fresh independence certificate does not check"));
    }
    Ok(cert)
}

/// Independent check: `mu P` is reduced, `1` lies outside its image (the
/// represent system for `1` is inconsistent), and every obstruction's
/// shifts match the degrees of `P`.
pub fn check_independence(f: &PPoly, cert: &IndependenceCertificate) -> Result<bool> {
    let ctx = f.ctx();
    if cert.mu.is_zero() || cert.powers.len() != cert.obstructions.len() {
        return Ok(false);
    }
    let pp = f.principal_part();
    let scaled = MonoPPoly::new(pp.as_ppoly().scale(&cert.mu))?;
    if !is_reduced(scaled.as_ppoly())? {
        return Ok(false);
    }
    let h = homogenize(&scaled)?;
    let mut space = ColumnSpace::new(ctx, h.nrows());
    for col in h.columns() {
        space.insert(&col);
    }
    if space.contains(&h.expand(&ctx.one())) {
        return Ok(false);
    }
    let big_n = top_level(f)?;
    let degs: Vec<u32> = pp.entries().iter().map(|(_, d, _)| *d).collect();
    for (s, ob) in cert.powers.iter().zip(&cert.obstructions) {
        if ob.power != *s || *s < big_n || ob.shifts.len() != degs.len() {
            return Ok(false);
        }
        if degs.iter().zip(&ob.shifts).any(|(d, sh)| d + sh != *s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Leading coefficient of `F(Y_1(T), ..., Y_n(T))` together with the `c_i`
/// (coefficient of `T^(D / deg X_i)` in `Y_i`), checking that it equals
/// `P(c) != 0`.
pub fn leading_coefficient(f: &PPoly, ys: &[PPoly]) -> Result<(u32, RatFunc, Vec<RatFunc>)> {
    if !is_reduced(f)? {
        return Err(Error::precondition("F must be reduced"));
    }
    if ys.len() != f.nvars() {
        return Err(Error::ArityMismatch { expected: f.nvars(), found: ys.len() });
    }
    let ctx = f.ctx();
    let top = |i: usize| f.top_exp(i).unwrap() + ys[i].top_exp(0).unwrap_or(0);
    let d = (0..f.nvars())
        .filter(|&i| !ys[i].is_zero())
        .map(top)
        .max()
        .ok_or_else(|| Error::precondition("all Y_i are zero"))?;
    let c: Vec<RatFunc> = (0..f.nvars())
        .map(|i| {
            let di = f.top_exp(i).unwrap();
            if d < di {
                return ctx.zero();
            }
            ys[i].coeff(0, d - di).cloned().unwrap_or_else(|| ctx.zero())
        })
        .collect();
    let value = f.principal_part().as_ppoly().eval(&c)?;
    let image = f.compose_components(ys, 1)?;
    let lead = image.coeff(0, d).cloned().unwrap_or_else(|| ctx.zero());
    if lead != value || lead.is_zero() || image.top_exp(0) != Some(d) {
        return Err(Error::invariant("leading coefficient identity fails"));
    }
    Ok((d, lead, c))
}
