//! Finite fields `F_q`, `q = p^e`, at desk scale (`q <= 2^16`).
//!
//! Elements are stored as [`Fq`], a plain integer whose base-`p` digits are the
//! coefficients of the element in the polynomial basis `1, g, g^2, ...`, where
//! `g` is the class of `x` modulo a fixed monic irreducible of degree `e`. The
//! irreducible is the least one under the integer encoding of its lower
//! coefficients, so every run picks the same modulus.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// An element of `F_q` in canonical encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u32);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct GfData {
    p: u32,
    e: u32,
    q: u32,
    /// Lower coefficients `c_0..c_{e-1}` of the monic modulus.
    modulus: Vec<u32>,
    /// `exp[i] = w^i` for a fixed primitive element `w`, length `q - 1`.
    exp: Vec<u32>,
    /// `log[v]` for `v != 0`.
    log: Vec<u32>,
    artin_schreier: OnceLock<Vec<u32>>,
}

/// Shared handle to the arithmetic tables of one finite field.
#[derive(Clone)]
pub struct PrimeFieldCtx(Arc<GfData>);

impl PartialEq for PrimeFieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.e == other.0.e)
    }
}
impl Eq for PrimeFieldCtx {}

impl fmt::Debug for PrimeFieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q())
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, lowest coefficient first; used only while
// building the tables.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv_lead = mod_inv(b[db], p);
    while r.len() > db {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let c = lead * inv_lead % p;
            let shift = r.len() - 1 - db;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is small, Fermat is fine.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // every monic polynomial of degree d
        let count = (p as u64).pow(d as u32);
        for k in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut kk = k;
            for _ in 0..d {
                g.push((kk % p as u64) as u32);
                kk /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl PrimeFieldCtx {
    /// Builds `F_q`; fails unless `q` is a prime power within [`MAX_ORDER`].
    pub fn new(q: u32) -> Result<Self> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(Error::Precondition(format!("field order {q} outside 2..={MAX_ORDER}")));
        }
        let p = (2..=q).find(|d| q % d == 0).unwrap();
        let mut e = 0;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::Precondition(format!("{q} is not a prime power")));
        }
        Self::with_degree(p, e)
    }

    pub fn with_degree(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::Precondition("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_ORDER as u64).ok_or_else(|| {
            Error::Precondition(format!("{p}^{e} exceeds the supported field size"))
        })? as u32;

        let modulus = if e == 1 {
            vec![0]
        } else {
            let mut found = None;
            for k in 0..q {
                let mut f = Vec::with_capacity(e as usize + 1);
                let mut kk = k;
                for _ in 0..e {
                    f.push(kk % p);
                    kk /= p;
                }
                f.push(1);
                if f[0] != 0 && is_irreducible(&f, p) {
                    f.pop();
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of every degree exists")
        };

        let mut data = GfData {
            p,
            e,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            artin_schreier: OnceLock::new(),
        };
        data.build_tables();
        Ok(PrimeFieldCtx(Arc::new(data)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }
    #[inline]
    pub fn e(&self) -> u32 {
        self.0.e
    }
    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// The modulus rendered as a polynomial in `x`, e.g. `x^2+x+1`.
    pub fn modulus_string(&self) -> String {
        let d = &self.0;
        if d.e == 1 {
            return "x".to_string();
        }
        let mut parts = vec![format!("x^{}", d.e)];
        for i in (0..d.e as usize).rev() {
            let c = d.modulus[i];
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    pub fn from_int(&self, n: i64) -> Fq {
        let p = self.0.p as i64;
        Fq(n.rem_euclid(p) as u32)
    }

    /// The class of `x`, i.e. the polynomial-basis generator `g`.
    pub fn generator(&self) -> Fq {
        if self.0.e == 1 {
            Fq(0)
        } else {
            Fq(self.0.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(Fq)
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let d = &self.0;
        if d.e == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= d.p { s - d.p } else { s });
        }
        if d.p == 2 {
            return Fq(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % d.p + y % d.p) % d.p) * place;
            x /= d.p;
            y /= d.p;
            place *= d.p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let d = &self.0;
        if d.p == 2 {
            return a;
        }
        if d.e == 1 {
            return Fq(if a.0 == 0 { 0 } else { d.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((d.p - x % d.p) % d.p) * place;
            x /= d.p;
            place *= d.p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        let d = &self.0;
        if d.e == 1 {
            return Fq(a.0 * b.0 % d.p);
        }
        let s = (d.log[a.0 as usize] as u64 + d.log[b.0 as usize] as u64) % (d.q as u64 - 1);
        Fq(d.exp[s as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        let d = &self.0;
        let l = d.log[a.0 as usize];
        Some(Fq(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: Fq, b: Fq) -> Option<Fq> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Fq, n: u64) -> Fq {
        if n == 0 {
            return Fq::ONE;
        }
        if a.0 == 0 {
            return Fq::ZERO;
        }
        let d = &self.0;
        let l = d.log[a.0 as usize] as u64;
        Fq(d.exp[((l * (n % (d.q as u64 - 1))) % (d.q as u64 - 1)) as usize])
    }

    /// `x^(p^n)`.
    pub fn frobenius(&self, x: Fq, n: u32) -> Fq {
        let d = &self.0;
        if d.e == 1 || x.0 == 0 {
            return x;
        }
        let shift = n % d.e;
        let mut l = d.log[x.0 as usize] as u64;
        for _ in 0..shift {
            l = l * d.p as u64 % (d.q as u64 - 1);
        }
        Fq(d.exp[l as usize])
    }

    /// The unique `y` with `y^p = x`.
    pub fn pth_root(&self, x: Fq) -> Fq {
        self.frobenius(x, self.0.e - 1)
    }

    /// The unique `y` with `y^(p^n) = x`.
    pub fn pn_root(&self, x: Fq, n: u32) -> Fq {
        let e = self.0.e;
        self.frobenius(x, (e - n % e) % e)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, x: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        let mut y = x;
        for _ in 0..self.0.e {
            acc = self.add(acc, y);
            y = self.frobenius(y, 1);
        }
        acc
    }

    fn artin_schreier_table(&self) -> &[u32] {
        self.0.artin_schreier.get_or_init(|| {
            let mut table = vec![u32::MAX; self.0.q as usize];
            for y in self.elements() {
                let v = self.sub(self.frobenius(y, 1), y);
                if table[v.0 as usize] == u32::MAX {
                    table[v.0 as usize] = y.0;
                }
            }
            table
        })
    }

    /// Some `y` with `y^p - y = x`, or `None` when `x` is outside the image.
    ///
    /// The preimage returned is the least one in the integer encoding.
    pub fn artin_schreier_preimage(&self, x: Fq) -> Option<Fq> {
        let y = self.artin_schreier_table()[x.0 as usize];
        (y != u32::MAX).then_some(Fq(y))
    }

    /// Least element (integer encoding) outside the Artin–Schreier image.
    pub fn artin_schreier_nonimage(&self) -> Fq {
        self.elements()
            .find(|&x| self.artin_schreier_preimage(x).is_none())
            .expect("x^p - x is never surjective on a finite field")
    }

    /// Finds the image of this field's generator inside `target`, which must
    /// contain `F_q` as a subfield.
    pub fn embedding_into(&self, target: &PrimeFieldCtx) -> Option<FieldEmbedding> {
        if self.p() != target.p() || target.e() % self.e() != 0 {
            return None;
        }
        let images: Vec<Fq> = if self.e() == 1 {
            self.elements().map(|x| Fq(x.0)).collect()
        } else {
            // least root of the modulus in the target
            let root = target.elements().find(|&z| {
                let mut acc = target.pow(z, self.e() as u64);
                for (i, &c) in self.0.modulus.iter().enumerate() {
                    let term = target.mul(Fq(c), target.pow(z, i as u64));
                    acc = target.add(acc, term);
                }
                acc.is_zero()
            })?;
            self.elements()
                .map(|x| {
                    let mut acc = Fq::ZERO;
                    let mut power = Fq::ONE;
                    let mut v = x.0;
                    while v > 0 {
                        let digit = Fq(v % self.p());
                        acc = target.add(acc, target.mul(digit, power));
                        power = target.mul(power, root);
                        v /= self.p();
                    }
                    acc
                })
                .collect()
        };
        Some(FieldEmbedding { images })
    }

    /// Renders an element: an integer for prime fields, a polynomial in `g`
    /// otherwise.
    pub fn format(&self, x: Fq) -> String {
        let d = &self.0;
        if d.e == 1 {
            return x.0.to_string();
        }
        if x.0 == 0 {
            return "0".to_string();
        }
        let mut digits = Vec::new();
        let mut v = x.0;
        while v > 0 {
            digits.push(v % d.p);
            v /= d.p;
        }
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// True when [`format`](Self::format) produces a sum that needs
    /// parentheses inside a product.
    pub fn is_compound(&self, x: Fq) -> bool {
        if self.0.e == 1 {
            return false;
        }
        let mut v = x.0;
        let mut nonzero = 0;
        while v > 0 {
            if v % self.0.p != 0 {
                nonzero += 1;
            }
            v /= self.0.p;
        }
        nonzero > 1
    }
}

impl GfData {
    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let to_digits = |mut v: u32| {
            let mut out = vec![0; self.e as usize];
            for slot in out.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            out
        };
        let (da, db) = (to_digits(a), to_digits(b));
        let mut prod = vec![0u32; 2 * self.e as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut modulus = self.modulus.clone();
        modulus.push(1);
        let r = poly_rem(&poly_trim(prod), &modulus, p);
        r.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    fn build_tables(&mut self) {
        let q = self.q;
        if self.e == 1 {
            // primitive root mod p
            let w = (1..q)
                .find(|&w| {
                    let mut x = 1u32;
                    for k in 1..q - 1 {
                        x = x * w % q;
                        if x == 1 && k < q - 1 {
                            return false;
                        }
                    }
                    true
                })
                .unwrap_or(1);
            self.fill_tables(w, |a, b| a * b % q);
            return;
        }
        let w = (2..q)
            .find(|&w| {
                let mut x = 1u32;
                for k in 1..q - 1 {
                    x = self.mul_slow(x, w);
                    if x == 1 && k < q - 1 {
                        return false;
                    }
                }
                true
            })
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1u32;
        for _ in 0..q - 1 {
            exp.push(x);
            x = self.mul_slow(x, w);
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        self.exp = exp;
        self.log = log;
    }

    fn fill_tables(&mut self, w: u32, mul: impl Fn(u32, u32) -> u32) {
        let q = self.q;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut x = 1u32;
        for _ in 0..q - 1 {
            exp.push(x);
            x = mul(x, w);
        }
        let mut log = vec![0u32; q as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        self.exp = exp;
        self.log = log;
    }
}

/// A field homomorphism `F_q -> F_{q^m}` given by a lookup table.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    images: Vec<Fq>,
}

impl FieldEmbedding {
    #[inline]
    pub fn apply(&self, x: Fq) -> Fq {
        self.images[x.0 as usize]
    }
}
