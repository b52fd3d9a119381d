//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use addpoly::canon::KPoly;
use addpoly::funcfield::{FieldCtx, RatFunc};
use addpoly::gfq::Fq;
use addpoly::ppoly::{MonoPPoly, PPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(q: u32, r: usize) -> FieldCtx {
    FieldCtx::standard(q, r).unwrap()
}

pub fn nonzero_const(rng: &mut ChaCha8Rng, k: &FieldCtx) -> Fq {
    Fq(rng.gen_range(1..k.q()))
}

/// Random polynomial in the parameters of total degree at most `deg`.
pub fn poly(rng: &mut ChaCha8Rng, k: &FieldCtx, deg: u32, terms: usize) -> RatFunc {
    let mut acc = k.zero();
    for _ in 0..terms {
        let mut e = vec![0u32; k.r()];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut() {
            let take = rng.gen_range(0..=left);
            *slot = take;
            left -= take;
        }
        let c = k.constant(Fq(rng.gen_range(0..k.q())));
        acc = k.add(&acc, &k.mul(&c, &k.monomial(&e)));
    }
    acc
}

pub fn nonzero_poly(rng: &mut ChaCha8Rng, k: &FieldCtx, deg: u32, terms: usize) -> RatFunc {
    loop {
        let a = poly(rng, k, deg, terms);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Random element of `k`; a quarter of the time a genuine fraction.
pub fn ratfunc(rng: &mut ChaCha8Rng, k: &FieldCtx, deg: u32) -> RatFunc {
    let num = poly(rng, k, deg, 3);
    if k.r() > 0 && rng.gen_bool(0.25) {
        let den = nonzero_poly(rng, k, deg.max(1), 2);
        k.div(&num, &den).unwrap()
    } else {
        num
    }
}

pub fn nonzero_ratfunc(rng: &mut ChaCha8Rng, k: &FieldCtx, deg: u32) -> RatFunc {
    loop {
        let a = ratfunc(rng, k, deg);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Monogeneous `sum c_i X_i^(p^d_i)` with `d_i <= max_d`.
pub fn mono(rng: &mut ChaCha8Rng, k: &FieldCtx, n: usize, max_d: u32, coeff_deg: u32) -> MonoPPoly {
    let f = PPoly::from_terms(
        k,
        n,
        (0..n).map(|i| (i, rng.gen_range(0..=max_d), nonzero_ratfunc(rng, k, coeff_deg))),
    );
    MonoPPoly::new(f).unwrap()
}

/// Random p-polynomial in `n` variables with exponents `j <= max_j`.
pub fn ppoly(rng: &mut ChaCha8Rng, k: &FieldCtx, n: usize, max_j: u32, terms: usize, coeff_deg: u32) -> PPoly {
    let mut f = PPoly::zero(k, n);
    for _ in 0..terms {
        let c = nonzero_ratfunc(rng, k, coeff_deg);
        f.add_term(rng.gen_range(0..n), rng.gen_range(0..=max_j), &c);
    }
    f
}

pub fn nonzero_ppoly(rng: &mut ChaCha8Rng, k: &FieldCtx, n: usize, max_j: u32, terms: usize, coeff_deg: u32) -> PPoly {
    loop {
        let f = ppoly(rng, k, n, max_j, terms, coeff_deg);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random polynomial in `Y1..Ym` without constant term.
pub fn kpoly(rng: &mut ChaCha8Rng, k: &FieldCtx, m: usize, max_deg: u32, support: usize) -> KPoly {
    let mut g = KPoly::zero(k, m);
    for _ in 0..support {
        let mut e: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=max_deg)).collect();
        if e.iter().all(|&x| x == 0) {
            e[rng.gen_range(0..m)] = 1;
        }
        g.add_term(&e, &ratfunc(rng, k, 2));
    }
    g
}

/// `X1 + X1^p + a X2^p`.
pub fn example_w(k: &FieldCtx, a: RatFunc) -> PPoly {
    PPoly::from_terms(k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, a)])
}
