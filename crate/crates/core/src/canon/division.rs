//! Canonical representatives modulo `F(R, ..., R)` for `R = k[Y1..Ym]`.

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::funcfield::RatFunc;
use crate::ppoly::PPoly;
use crate::reduce::zero::is_reduced;
use crate::universal::verdict::{phi_value, Representer};

use super::kpoly::{eval_ppoly, KPoly};

const MAX_STEPS: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub input: KPoly,
    pub h: KPoly,
    /// `input - h = F(preimage)`.
    pub preimage: Vec<KPoly>,
    pub steps: usize,
}

impl CanonicalForm {
    /// Re-expands `F(preimage)` and compares.
    pub fn verify(&self, f: &PPoly) -> Result<bool> {
        let image = eval_ppoly(f, &self.preimage)?;
        Ok(self.input.sub(&self.h)? == image)
    }
}

/// A violation: the coefficient of `Y^u`, with `u = p^(d_i) s`, has a
/// nonzero slot `i` in its representation.
#[derive(Clone, Debug)]
struct Violation {
    exps: Vec<u32>,
    var: usize,
    slot: RatFunc,
}

/// Division by a reduced `F` with universal principal part.
#[derive(Clone)]
pub struct Divider {
    f: PPoly,
    tops: Vec<u32>,
    rep: Representer,
}

impl Divider {
    pub fn new(f: &PPoly) -> Result<Self> {
        if f.is_zero() || !is_reduced(f)? {
            return Err(Error::precondition("F must be reduced"));
        }
        let pp = f.principal_part();
        if !phi_value(&pp)?.is_one() {
            return Err(Error::precondition("principal part of F is not universal"));
        }
        let rep = Representer::new(&pp)?;
        let tops = (0..f.nvars()).map(|i| f.top_exp(i).expect("reduced F involves every variable")).collect();
        Ok(Divider { f: f.clone(), tops, rep })
    }

    pub fn f(&self) -> &PPoly {
        &self.f
    }

    /// The unique `c` with `P(c) = b`.
    pub fn representation(&self, b: &RatFunc) -> Result<Vec<RatFunc>> {
        self.rep.represent(b)
    }

    fn violations_of(&self, exps: &[u32], c: &RatFunc, out: &mut Vec<Violation>) -> Result<()> {
        let p = self.f.ctx().p();
        let mut rep: Option<Vec<RatFunc>> = None;
        for (i, &d) in self.tops.iter().enumerate() {
            let q = p.pow(d);
            if exps.iter().any(|e| e % q != 0) {
                continue;
            }
            if rep.is_none() {
                rep = Some(self.representation(c)?);
            }
            let slot = &rep.as_ref().unwrap()[i];
            if !slot.is_zero() {
                out.push(Violation { exps: exps.to_vec(), var: i, slot: slot.clone() });
            }
        }
        Ok(())
    }

    /// Violations of the largest total degree that has any.
    fn top_violations(&self, h: &KPoly) -> Result<Vec<Violation>> {
        let mut out = Vec::new();
        let mut current: Option<u32> = None;
        for (e, c) in h.terms() {
            let deg: u32 = e.iter().sum();
            if current.is_some_and(|d| d != deg) && !out.is_empty() {
                break;
            }
            current = Some(deg);
            self.violations_of(e, c, &mut out)?;
        }
        Ok(out)
    }

    pub fn is_canonical(&self, h: &KPoly) -> Result<bool> {
        Ok(self.top_violations(h)?.is_empty())
    }

    /// Fixes violations highest total degree first. Without a seed the
    /// first violation in term order is fixed; with a seed one is picked at
    /// random among those of maximal degree.
    pub fn canonical_form(&self, g: &KPoly, seed: Option<u64>) -> Result<CanonicalForm> {
        if g.constant_term().is_some() {
            return Err(Error::precondition("input has a nonzero constant term"));
        }
        let k = self.f.ctx();
        let m = g.nvars();
        let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
        let mut h = g.clone();
        let mut preimage = vec![KPoly::zero(k, m); self.f.nvars()];
        let mut steps = 0;
        loop {
            let viol = self.top_violations(&h)?;
            if viol.is_empty() {
                break;
            }
            let pick = match rng.as_mut() {
                Some(r) => r.gen_range(0..viol.len()),
                None => 0,
            };
            let v = &viol[pick];
            let q = k.p().pow(self.tops[v.var]);
            let s: Vec<u32> = v.exps.iter().map(|e| e / q).collect();
            let piece = KPoly::monomial(k, &s, v.slot.clone());
            let mut args = vec![KPoly::zero(k, m); self.f.nvars()];
            args[v.var] = piece.clone();
            h = h.sub(&eval_ppoly(&self.f, &args)?)?;
            preimage[v.var] = preimage[v.var].add(&piece)?;
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::invariant("division did not terminate"));
            }
        }
        Ok(CanonicalForm { input: g.clone(), h, preimage, steps })
    }

    /// `Some(preimage)` exactly when `g` lies in `F(R, ..., R)`.
    pub fn preimage(&self, g: &KPoly) -> Result<Option<Vec<KPoly>>> {
        let cf = self.canonical_form(g, None)?;
        if !cf.h.is_zero() {
            return Ok(None);
        }
        if eval_ppoly(&self.f, &cf.preimage)? != *g {
            return Err(Error::invariant("preimage does not map to the input"));
        }
        Ok(Some(cf.preimage))
    }
}

pub fn canonical_form(g: &KPoly, f: &PPoly) -> Result<CanonicalForm> {
    Divider::new(f)?.canonical_form(g, None)
}

pub fn is_in_image(g: &KPoly, f: &PPoly) -> Result<Option<Vec<KPoly>>> {
    Divider::new(f)?.preimage(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::FieldCtx;

    fn setup() -> (FieldCtx, PPoly) {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let f = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t)]);
        (k, f)
    }

    #[test]
    fn examples() {
        let (k, f) = setup();
        let t = k.var(0);
        let y2 = KPoly::monomial(&k, &[2], k.one());
        let cf = canonical_form(&y2, &f).unwrap();
        assert_eq!(cf.h, KPoly::var(&k, 1, 0));
        assert_eq!(cf.preimage, vec![KPoly::var(&k, 1, 0), KPoly::zero(&k, 1)]);
        assert!(cf.verify(&f).unwrap());

        let ty2 = KPoly::monomial(&k, &[2], t);
        let cf = canonical_form(&ty2, &f).unwrap();
        assert!(cf.h.is_zero());
        assert_eq!(cf.preimage, vec![KPoly::zero(&k, 1), KPoly::var(&k, 1, 0)]);

        let y = KPoly::var(&k, 1, 0);
        let cf = canonical_form(&y, &f).unwrap();
        assert_eq!(cf.h, y);
        assert_eq!(cf.steps, 0);
    }

    #[test]
    fn membership() {
        let (k, f) = setup();
        let t = k.var(0);
        assert!(is_in_image(&KPoly::monomial(&k, &[2], t), &f).unwrap().is_some());
        assert!(is_in_image(&KPoly::var(&k, 1, 0), &f).unwrap().is_none());
        assert!(is_in_image(&KPoly::zero(&k, 1), &f).unwrap().is_some());
        assert!(canonical_form(&KPoly::monomial(&k, &[0], k.one()), &f).is_err());
    }

    #[test]
    fn seeds_agree() {
        let (k, f) = setup();
        let t = k.var(0);
        let g = KPoly::from_terms(
            &k,
            2,
            [(vec![4, 2], t.clone()), (vec![2, 2], k.one()), (vec![8, 0], k.add(&t, &k.one()))],
        );
        let d = Divider::new(&f).unwrap();
        let base = d.canonical_form(&g, None).unwrap();
        assert!(base.verify(&f).unwrap());
        for seed in 0..5 {
            assert_eq!(d.canonical_form(&g, Some(seed)).unwrap().h, base.h);
        }
    }
}
