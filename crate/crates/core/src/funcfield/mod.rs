//! The coefficient field `k = F_q(t1..tr)`.

pub mod linalg;
pub mod mpoly;
pub mod pbasis;
pub mod ratfunc;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gfq::{FieldEmbedding, Fq, PrimeFieldCtx};

pub use linalg::{mat_kernel, mat_solve, ColumnSpace, Matrix};
pub use mpoly::{MPoly, Mono};
pub use pbasis::{IndexSet, PBasisExpansion};
pub use ratfunc::RatFunc;

/// Names longer than this many parameters are refused; the algorithms scale
/// like `p^(r*N)`.
pub const MAX_IMPERFECTION: usize = 8;

struct FieldData {
    gf: PrimeFieldCtx,
    names: Vec<String>,
}

/// Shared handle describing `F_q(t1..tr)`.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldData>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.gf == other.0.gf && self.0.names == other.0.names)
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

impl FieldCtx {
    pub fn new(gf: PrimeFieldCtx, names: Vec<String>) -> Result<Self> {
        if names.len() > MAX_IMPERFECTION {
            return Err(Error::Unsupported(format!(
                "degree of imperfection {} exceeds {MAX_IMPERFECTION}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().next().unwrap().is_ascii_alphabetic() {
                return Err(Error::precondition(format!("invalid parameter name {n:?}")));
            }
            if n == "g" || n.starts_with('X') || n.starts_with('Y') {
                return Err(Error::precondition(format!("parameter name {n:?} is reserved")));
            }
            if names[..i].contains(n) {
                return Err(Error::precondition(format!("duplicate parameter name {n:?}")));
            }
        }
        Ok(FieldCtx(Arc::new(FieldData { gf, names })))
    }

    /// `F_q(t)` for `r = 1`, `F_q(t1..tr)` otherwise.
    pub fn standard(q: u32, r: usize) -> Result<Self> {
        let names = match r {
            1 => vec!["t".to_string()],
            _ => (1..=r).map(|i| format!("t{i}")).collect(),
        };
        FieldCtx::new(PrimeFieldCtx::new(q)?, names)
    }

    /// Same parameters over another constant field.
    pub fn with_constants(&self, gf: PrimeFieldCtx) -> FieldCtx {
        FieldCtx(Arc::new(FieldData { gf, names: self.0.names.clone() }))
    }

    #[inline]
    pub fn gf(&self) -> &PrimeFieldCtx {
        &self.0.gf
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.0.gf.p()
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.gf.q()
    }
    #[inline]
    pub fn r(&self) -> usize {
        self.0.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    /// Field spec string, e.g. `F9(t,u)`.
    pub fn spec(&self) -> String {
        if self.r() == 0 {
            format!("F{}", self.q())
        } else {
            format!("F{}({})", self.q(), self.0.names.join(","))
        }
    }

    pub fn zero(&self) -> RatFunc {
        RatFunc { num: MPoly::zero(), den: MPoly::one(self.r()) }
    }

    pub fn one(&self) -> RatFunc {
        self.constant(Fq::ONE)
    }

    pub fn constant(&self, c: Fq) -> RatFunc {
        RatFunc { num: MPoly::constant(self.r(), c), den: MPoly::one(self.r()) }
    }

    pub fn int(&self, n: i64) -> RatFunc {
        self.constant(self.gf().from_int(n))
    }

    /// The parameter `t_{i+1}`.
    pub fn var(&self, i: usize) -> RatFunc {
        self.poly(MPoly::monomial(Mono::var(self.r(), i), Fq::ONE))
    }

    pub fn monomial(&self, exps: &[u32]) -> RatFunc {
        self.poly(MPoly::monomial(Mono::new(exps), Fq::ONE))
    }

    pub fn poly(&self, num: MPoly) -> RatFunc {
        RatFunc { num, den: MPoly::one(self.r()) }
    }

    /// `num / den`, or `None` when `den = 0`.
    pub fn frac(&self, num: MPoly, den: MPoly) -> Option<RatFunc> {
        if den.is_zero() {
            return None;
        }
        Some(self.normalize(num, den))
    }

    fn normalize(&self, num: MPoly, den: MPoly) -> RatFunc {
        let gf = self.gf();
        if num.is_zero() {
            return self.zero();
        }
        if let Some(c) = den.constant_value() {
            let ic = gf.inv(c).expect("nonzero denominator");
            return RatFunc { num: num.scale(ic, gf), den: MPoly::one(self.r()) };
        }
        let g = num.gcd(&den, self.r(), gf);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g, gf).unwrap(), den.div_exact(&g, gf).unwrap())
        };
        let lc = den.lc();
        if lc == Fq::ONE {
            RatFunc { num, den }
        } else {
            let ic = gf.inv(lc).unwrap();
            RatFunc { num: num.scale(ic, gf), den: den.scale(ic, gf) }
        }
    }

    pub fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let gf = self.gf();
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.add(&b.num, gf);
            if a.den.is_one() {
                return RatFunc { num, den: a.den.clone() };
            }
            return self.normalize(num, a.den.clone());
        }
        let num = a.num.mul(&b.den, gf).add(&b.num.mul(&a.den, gf), gf);
        self.normalize(num, a.den.mul(&b.den, gf))
    }

    pub fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: a.num.neg(self.gf()), den: a.den.clone() }
    }

    pub fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let gf = self.gf();
        let r = self.r();
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFunc { num: a.num.mul(&b.num, gf), den: a.den.clone() };
        }
        let g1 = a.num.gcd(&b.den, r, gf);
        let g2 = b.num.gcd(&a.den, r, gf);
        let an = a.num.div_exact(&g1, gf).unwrap();
        let bd = b.den.div_exact(&g1, gf).unwrap();
        let bn = b.num.div_exact(&g2, gf).unwrap();
        let ad = a.den.div_exact(&g2, gf).unwrap();
        let num = an.mul(&bn, gf);
        let den = ad.mul(&bd, gf);
        // cancelling monic factors keeps the denominator monic up to a unit
        let lc = den.lc();
        if lc == Fq::ONE {
            RatFunc { num, den }
        } else {
            let ic = gf.inv(lc).unwrap();
            RatFunc { num: num.scale(ic, gf), den: den.scale(ic, gf) }
        }
    }

    pub fn scale(&self, a: &RatFunc, c: Fq) -> RatFunc {
        if c.is_zero() {
            return self.zero();
        }
        RatFunc { num: a.num.scale(c, self.gf()), den: a.den.clone() }
    }

    pub fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        Some(self.normalize(a.den.clone(), a.num.clone()))
    }

    pub fn div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    pub fn pow(&self, a: &RatFunc, n: i64) -> Option<RatFunc> {
        let base = if n < 0 { self.inv(a)? } else { a.clone() };
        let e = n.unsigned_abs();
        let gf = self.gf();
        // coprime numerator and denominator stay coprime under powers
        let num = base.num.pow(e, self.r(), gf);
        let den = base.den.pow(e, self.r(), gf);
        Some(RatFunc { num, den })
    }

    /// `a^(p^n)`.
    pub fn frobenius(&self, a: &RatFunc, n: u32) -> RatFunc {
        let gf = self.gf();
        RatFunc { num: a.num.frobenius(n, gf), den: a.den.frobenius(n, gf) }
    }

    /// Image of `a` under a constant-field embedding into `target`.
    pub fn embed(&self, a: &RatFunc, emb: &FieldEmbedding, target: &FieldCtx) -> RatFunc {
        let num = a.num.map_coeffs(|c| emb.apply(c));
        let den = a.den.map_coeffs(|c| emb.apply(c));
        target.normalize(num, den)
    }

    /// Renders `num` or `(num)/(den)`.
    pub fn render(&self, a: &RatFunc) -> String {
        let num = a.num.render(self.names(), self.gf());
        if a.den.is_one() {
            num
        } else {
            format!("({num})/({})", a.den.render(self.names(), self.gf()))
        }
    }

    /// True when the element renders as a bare prime-field integer.
    pub fn is_small_int(&self, a: &RatFunc) -> bool {
        self.gf().e() == 1 && a.is_constant()
    }

    /// Whether `a` is displayed with a leading minus sign in p-polynomial
    /// output: `-1` always, and for prime fields with `p > 2` whenever the
    /// numerator's leading coefficient exceeds `(p-1)/2`.
    pub fn prefers_minus(&self, a: &RatFunc) -> bool {
        let gf = self.gf();
        if a.is_zero() || gf.p() == 2 {
            return false;
        }
        let lc = a.num.lc();
        if gf.e() == 1 {
            lc.0 > (gf.p() - 1) / 2
        } else {
            lc == gf.neg(Fq::ONE)
        }
    }
}
