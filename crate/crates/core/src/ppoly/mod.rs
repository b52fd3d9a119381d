//! Additive polynomials `sum c_ij X_i^(p^j)` over `k`.

mod mono;
mod presentation;
mod subst;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};

pub use mono::MonoPPoly;
pub use presentation::GroupPresentation;
pub use subst::AdditiveSubst;

/// A p-polynomial in a fixed ambient number of variables. Terms are keyed by
/// `(variable, j)` for the monomial `X_variable^(p^j)`; the ambient arity is
/// part of the value, so `X1` in one variable and `X1` in two differ.
#[derive(Clone, PartialEq, Eq)]
pub struct PPoly {
    ctx: FieldCtx,
    nvars: usize,
    terms: BTreeMap<(usize, u32), RatFunc>,
}

impl fmt::Debug for PPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [in {} vars]", self.render(false), self.nvars)
    }
}

impl PPoly {
    pub fn zero(ctx: &FieldCtx, nvars: usize) -> Self {
        PPoly { ctx: ctx.clone(), nvars, terms: BTreeMap::new() }
    }

    /// `X_var` itself.
    pub fn var(ctx: &FieldCtx, nvars: usize, var: usize) -> Self {
        Self::term(ctx, nvars, var, 0, ctx.one())
    }

    /// `c * X_var^(p^j)`.
    pub fn term(ctx: &FieldCtx, nvars: usize, var: usize, j: u32, c: RatFunc) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut out = Self::zero(ctx, nvars);
        if !c.is_zero() {
            out.terms.insert((var, j), c);
        }
        out
    }

    pub fn from_terms(
        ctx: &FieldCtx,
        nvars: usize,
        terms: impl IntoIterator<Item = (usize, u32, RatFunc)>,
    ) -> Self {
        let mut out = Self::zero(ctx, nvars);
        for (i, j, c) in terms {
            out.add_term(i, j, &c);
        }
        out
    }

    pub fn add_term(&mut self, var: usize, j: u32, c: &RatFunc) {
        assert!(var < self.nvars, "variable index out of range");
        if c.is_zero() {
            return;
        }
        let k = &self.ctx;
        match self.terms.get_mut(&(var, j)) {
            Some(old) => {
                let s = k.add(old, c);
                if s.is_zero() {
                    self.terms.remove(&(var, j));
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert((var, j), c.clone());
            }
        }
    }

    #[inline]
    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in rendering order: variable ascending, power descending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, u32, &RatFunc)> {
        let mut v: Vec<_> = self.terms.iter().map(|(&(i, j), c)| (i, j, c)).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        v.into_iter()
    }

    pub fn coeff(&self, var: usize, j: u32) -> Option<&RatFunc> {
        self.terms.get(&(var, j))
    }

    /// Largest `j` with `X_var^(p^j)` present.
    pub fn top_exp(&self, var: usize) -> Option<u32> {
        self.terms.range((var, 0)..=(var, u32::MAX)).next_back().map(|(&(_, j), _)| j)
    }

    pub fn degree_in(&self, var: usize) -> u64 {
        self.top_exp(var).map_or(0, |j| (self.ctx.p() as u64).pow(j))
    }

    pub fn involves(&self, var: usize) -> bool {
        self.top_exp(var).is_some()
    }

    /// Variables appearing in some term, ascending.
    pub fn vars(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.terms.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    /// `sum_i deg_{X_i}`.
    pub fn degree_sum(&self) -> u64 {
        self.vars().into_iter().map(|i| self.degree_in(i)).sum()
    }

    pub fn is_separable(&self) -> bool {
        self.terms.keys().any(|k| k.1 == 0)
    }

    pub fn is_linear(&self) -> bool {
        self.terms.keys().all(|k| k.1 == 0)
    }

    pub fn is_monogeneous(&self) -> bool {
        self.terms.keys().zip(self.terms.keys().skip(1)).all(|(a, b)| a.0 != b.0)
    }

    /// Keeps only each variable's highest-power term.
    pub fn principal_part(&self) -> MonoPPoly {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for i in self.vars() {
            let j = self.top_exp(i).unwrap();
            out.terms.insert((i, j), self.terms[&(i, j)].clone());
        }
        MonoPPoly::new(out).expect("principal part is monogeneous")
    }

    /// The terms with `j = 0`.
    pub fn linear_part(&self) -> PPoly {
        let mut out = Self::zero(&self.ctx, self.nvars);
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                out.terms.insert((i, j), c.clone());
            }
        }
        out
    }

    fn check_same(&self, other: &PPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn add(&self, other: &PPoly) -> Result<PPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PPoly) -> Result<PPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> PPoly {
        self.map_coeffs(|c| self.ctx.neg(c))
    }

    /// `c * F`.
    pub fn scale(&self, c: &RatFunc) -> PPoly {
        if c.is_zero() {
            return Self::zero(&self.ctx, self.nvars);
        }
        self.map_coeffs(|x| self.ctx.mul(x, c))
    }

    fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> PPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        PPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// `F^(p^s)` as a polynomial: every term `c X^(p^j)` becomes
    /// `c^(p^s) X^(p^(j+s))`.
    pub fn pth_power(&self, s: u32) -> PPoly {
        if s == 0 {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(&(i, j), c)| ((i, j + s), self.ctx.frobenius(c, s)))
            .collect();
        PPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// Raises every coefficient to `p^n`, keeping the monomials.
    pub fn frobenius_twist(&self, n: u32) -> PPoly {
        self.map_coeffs(|c| self.ctx.frobenius(c, n))
    }

    pub fn eval(&self, point: &[RatFunc]) -> Result<RatFunc> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: point.len() });
        }
        let k = &self.ctx;
        let mut acc = k.zero();
        for (&(i, j), c) in &self.terms {
            if point[i].is_zero() {
                continue;
            }
            acc = k.add(&acc, &k.mul(c, &k.frobenius(&point[i], j)));
        }
        Ok(acc)
    }

    /// `F(Phi_1, ..., Phi_n)` for `Phi` mapping `m` variables to `n`.
    pub fn compose(&self, phi: &AdditiveSubst) -> Result<PPoly> {
        if phi.target_arity() != self.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: phi.target_arity() });
        }
        self.compose_components(phi.components(), phi.source_arity())
    }

    /// `F(comps[0], ..., comps[n-1])` with every component in `m` variables.
    pub fn compose_components(&self, comps: &[PPoly], m: usize) -> Result<PPoly> {
        let mut out = Self::zero(&self.ctx, m);
        for (&(i, j), c) in &self.terms {
            let comp = &comps[i];
            if comp.nvars != m {
                return Err(Error::ArityMismatch { expected: m, found: comp.nvars });
            }
            for (&(v, l), d) in &comp.terms {
                let coef = self.ctx.mul(c, &self.ctx.frobenius(d, j));
                out.add_term(v, l + j, &coef);
            }
        }
        Ok(out)
    }

    /// Same terms in a larger ambient space, variable `i` placed at
    /// `offset + i`.
    pub fn embed(&self, nvars: usize, offset: usize) -> PPoly {
        assert!(offset + self.nvars <= nvars);
        let terms = self.terms.iter().map(|(&(i, j), c)| ((i + offset, j), c.clone())).collect();
        PPoly { ctx: self.ctx.clone(), nvars, terms }
    }

    /// Renames `X_i` to `X_{perm[i]}`.
    pub fn rename(&self, perm: &[usize], nvars: usize) -> PPoly {
        let terms = self.terms.iter().map(|(&(i, j), c)| ((perm[i], j), c.clone())).collect();
        PPoly { ctx: self.ctx.clone(), nvars, terms }
    }

    /// Sets the listed variables to zero (the ambient arity is unchanged).
    pub fn specialize_zero(&self, vars: impl Fn(usize) -> bool) -> PPoly {
        let terms = self
            .terms
            .iter()
            .filter(|(&(i, _), _)| !vars(i))
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        PPoly { ctx: self.ctx.clone(), nvars: self.nvars, terms }
    }

    /// Keeps variables `lo..hi`, renumbered from zero.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<PPoly> {
        if let Some(&(i, _)) = self.terms.keys().find(|k| k.0 < lo || k.0 >= hi) {
            return Err(Error::precondition(format!("variable {} outside {lo}..{hi}", i + 1)));
        }
        let terms = self.terms.iter().map(|(&(i, j), c)| ((i - lo, j), c.clone())).collect();
        Ok(PPoly { ctx: self.ctx.clone(), nvars: hi - lo, terms })
    }

    /// Maps the coefficients into another field with the same parameters.
    pub fn map_field(&self, ctx: &FieldCtx, f: impl Fn(&RatFunc) -> RatFunc) -> PPoly {
        let terms = self
            .terms
            .iter()
            .map(|(&k, c)| (k, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        PPoly { ctx: ctx.clone(), nvars: self.nvars, terms }
    }

    /// Canonical text: terms ordered by variable then descending power,
    /// variables named `X1..` (or `X0..` when `zero_based`).
    pub fn render(&self, zero_based: bool) -> String {
        render_sum(&[self], zero_based)
    }
}

/// Renders `parts[0] + parts[1] + ...` keeping each part's terms together,
/// in the order given. All parts must share a field.
pub fn render_sum(parts: &[&PPoly], zero_based: bool) -> String {
    let Some(first) = parts.first() else {
        return "0".to_string();
    };
    let k = &first.ctx;
    let base = if zero_based { 0 } else { 1 };
    let mut out = String::new();
    for (n, (i, j, c)) in parts.iter().flat_map(|p| p.terms()).enumerate() {
        let minus = n > 0 && k.prefers_minus(c);
        let shown = if minus { k.neg(c) } else { c.clone() };
        if n > 0 {
            out.push_str(if minus { " - " } else { " + " });
        }
        if !shown.is_one() {
            if k.is_small_int(&shown) {
                out.push_str(&k.render(&shown));
            } else {
                out.push('(');
                out.push_str(&k.render(&shown));
                out.push(')');
            }
            out.push('*');
        }
        out.push_str(&format!("X{}", i + base));
        let power = (k.p() as u64).pow(j);
        if power > 1 {
            out.push_str(&format!("^{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Left division in the twisted polynomial ring, in the distinguished
/// variable `var`: returns `(Q, R)` with `g = Q(g1) + R` and
/// `deg_var R < deg_var g1`. `Q` is a one-variable p-polynomial.
pub fn ore_left_divmod(g: &PPoly, g1: &PPoly, var: usize) -> Result<(PPoly, PPoly)> {
    g.check_same(g1)?;
    let k = g.ctx();
    let d = g1
        .top_exp(var)
        .ok_or_else(|| Error::precondition(format!("divisor does not involve X{}", var + 1)))?;
    let b = g1.coeff(var, d).unwrap().clone();
    let mut q = PPoly::zero(k, 1);
    let mut rem = g.clone();
    while let Some(m) = rem.top_exp(var) {
        if m < d {
            break;
        }
        let s = m - d;
        let a = rem.coeff(var, m).unwrap();
        let c = k.div(a, &k.frobenius(&b, s)).unwrap();
        q.add_term(0, s, &c);
        rem = rem.sub(&g1.pth_power(s).scale(&c))?;
        debug_assert!(rem.top_exp(var).is_none_or(|e| e < m));
    }
    Ok((q, rem))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2t() -> FieldCtx {
        FieldCtx::standard(2, 1).unwrap()
    }

    #[test]
    fn principal_part_examples() {
        let k = f2t();
        let t = k.var(0);
        let w = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t.clone())]);
        let pp = w.principal_part();
        let expect = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, t.clone())]);
        assert_eq!(pp.as_ppoly(), &expect);
        let x = PPoly::var(&k, 1, 0);
        assert_eq!(x.principal_part().as_ppoly(), &x);
        assert!(PPoly::zero(&k, 3).principal_part().as_ppoly().is_zero());
    }

    #[test]
    fn separability_examples() {
        let k = f2t();
        let t = k.var(0);
        let w = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t.clone())]);
        assert!(w.is_separable());
        assert!(!w.principal_part().as_ppoly().is_separable());
        assert!(!PPoly::zero(&k, 2).is_separable());
    }

    #[test]
    fn eval_examples() {
        let k = f2t();
        let t = k.var(0);
        let p = PPoly::from_terms(&k, 2, [(0, 1, k.one()), (1, 1, t.clone())]);
        assert_eq!(p.eval(&[t.clone(), k.one()]).unwrap(), k.add(&k.mul(&t, &t), &t));
        assert!(p.eval(&[k.zero(), k.zero()]).unwrap().is_zero());
        assert!(p.eval(&[k.one()]).is_err());
    }

    #[test]
    fn compose_examples() {
        let k = f2t();
        let one = k.one();
        // X1^2 + X2^2 + X1 with X2 -> X2 + X1
        let f = PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (1, 1, one.clone()), (0, 0, one.clone())]);
        let sigma = AdditiveSubst::new(
            2,
            vec![PPoly::var(&k, 2, 0), PPoly::from_terms(&k, 2, [(1, 0, one.clone()), (0, 0, one.clone())])],
        );
        let g = f.compose(&sigma).unwrap();
        assert_eq!(g, PPoly::from_terms(&k, 2, [(0, 0, one.clone()), (1, 1, one.clone())]));

        // X1 + X2^2 with X1 -> X1 + X2^2
        let f = PPoly::from_terms(&k, 2, [(0, 0, one.clone()), (1, 1, one.clone())]);
        let sigma = AdditiveSubst::new(
            2,
            vec![PPoly::from_terms(&k, 2, [(0, 0, one.clone()), (1, 1, one.clone())]), PPoly::var(&k, 2, 1)],
        );
        assert_eq!(f.compose(&sigma).unwrap(), PPoly::var(&k, 2, 0));
        assert_eq!(f.compose(&AdditiveSubst::identity(&k, 2)).unwrap(), f);
    }

    #[test]
    fn ore_division_examples() {
        let k = f2t();
        let t = k.var(0);
        let one = k.one();
        let g = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (1, 0, one.clone())]);
        let g1 = PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (1, 0, t.clone())]);
        let (q, r) = ore_left_divmod(&g, &g1, 0).unwrap();
        assert_eq!(q, PPoly::term(&k, 1, 0, 1, one.clone()));
        let expect = PPoly::from_terms(&k, 2, [(1, 0, one.clone()), (1, 1, k.mul(&t, &t))]);
        assert_eq!(r, expect);

        let (q, r) = ore_left_divmod(&g1, &g1, 0).unwrap();
        assert_eq!(q, PPoly::var(&k, 1, 0));
        assert!(r.is_zero());

        let h = PPoly::var(&k, 2, 1);
        let (q, r) = ore_left_divmod(&h, &g1, 0).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, h);
    }

    #[test]
    fn twist_examples() {
        let k = f2t();
        let t = k.var(0);
        let w = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t.clone())]);
        let tw = w.frobenius_twist(1);
        assert_eq!(tw.coeff(1, 1), Some(&k.mul(&t, &t)));
        assert_eq!(w.frobenius_twist(0), w);
        assert!(PPoly::zero(&k, 2).frobenius_twist(3).is_zero());
    }

    #[test]
    fn rendering() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let t = k.var(0);
        let e = PPoly::from_terms(
            &k,
            3,
            [(0, 0, k.one()), (0, 1, t.clone()), (1, 1, k.one()), (2, 1, k.neg(&k.mul(&t, &t)))],
        );
        assert_eq!(e.render(false), "(t)*X1^3 + X1 + X2^3 - (t^2)*X3^3");
        assert_eq!(PPoly::zero(&k, 2).render(false), "0");
    }
}
