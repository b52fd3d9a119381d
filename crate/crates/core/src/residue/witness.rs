//! Elements outside the image of `P + L` detected by residues.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::funcfield::{FieldCtx, RatFunc};
use crate::gfq::Fq;
use crate::ppoly::PPoly;
use crate::universal::standard::level_one_form;

use super::laurent::{eval_f_laurent, SparseLaurent};

#[derive(Clone, Debug)]
pub struct ResidueWitness {
    pub ctx: FieldCtx,
    /// `c_i` with `lambda_i = t_i + c_i`.
    pub consts: Vec<Fq>,
    pub lambda: Vec<RatFunc>,
    pub principal: PPoly,
    pub linear: PPoly,
    /// Index of the variable carrying `L`: the constant function `p - 1`.
    pub linear_var: usize,
    pub beta: Fq,
    pub w: SparseLaurent,
    pub claim: String,
}

impl ResidueWitness {
    pub fn equation(&self) -> PPoly {
        self.principal.add(&self.linear).expect("same arity")
    }

    /// `w` as an element of `k`.
    pub fn w_element(&self) -> RatFunc {
        let k = &self.ctx;
        let den = (0..k.r()).fold(k.one(), |acc, i| k.mul(&acc, &k.var(i)));
        k.div(&k.constant(self.beta), &den).expect("nonzero denominator")
    }
}

pub fn h1_witness(ctx: &FieldCtx, consts: &[Fq]) -> Result<ResidueWitness> {
    let r = ctx.r();
    if r == 0 {
        return Err(Error::precondition("residue witness needs r >= 1"));
    }
    if consts.len() != r {
        return Err(Error::precondition(format!("expected {r} constants, found {}", consts.len())));
    }
    let gf = ctx.gf();
    if consts.iter().any(|c| c.0 >= gf.q()) {
        return Err(Error::precondition("constant outside F_q"));
    }
    let lambda: Vec<RatFunc> =
        (0..r).map(|i| ctx.add(&ctx.var(i), &ctx.constant(consts[i]))).collect();
    let principal = level_one_form(ctx, &lambda);
    let n = principal.nvars();
    let linear_var = ctx.index_set(1).constant_fn(ctx.p() - 1);
    let linear = PPoly::var(ctx, n, linear_var).neg();
    let beta = gf.artin_schreier_nonimage();
    let w = SparseLaurent::monomial(gf, &vec![-1; r], beta);
    let claim = format!(
        "{} is not a value of P + L on k^{n}: every value has residue in the image of x^p - x, and {} is not",
        w.render(ctx.names()),
        gf.format(beta)
    );
    Ok(ResidueWitness { ctx: ctx.clone(), consts: consts.to_vec(), lambda, principal, linear, linear_var, beta, w, claim })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub samples: usize,
    /// Samples whose residue lies in the Artin–Schreier image.
    pub in_image: usize,
    /// Samples whose residue equals `a^p - a` for the coefficient `a` of
    /// `alpha_(c_(p-1))` at `(-1, ..., -1)`.
    pub formula_matches: usize,
    pub witness_residue: Fq,
    pub witness_ok: bool,
}

impl ResidueReport {
    pub fn passed(&self) -> bool {
        self.witness_ok && self.in_image == self.samples && self.formula_matches == self.samples
    }
}

/// Structural checks plus `samples` random finite-support tuples.
pub fn check_witness(wit: &ResidueWitness, samples: usize, seed: u64) -> Result<ResidueReport> {
    let ctx = &wit.ctx;
    let gf = ctx.gf();
    let r = ctx.r();
    let reference = h1_witness(ctx, &wit.consts)?;
    let structure_ok = reference.principal == wit.principal
        && reference.linear == wit.linear
        && reference.linear_var == wit.linear_var
        && wit.w == SparseLaurent::monomial(gf, &vec![-1; r], wit.beta);
    let witness_residue = wit.w.residue();
    let witness_ok = structure_ok
        && witness_residue == wit.beta
        && gf.artin_schreier_preimage(witness_residue).is_none();

    let f = wit.equation();
    let n = f.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_image = 0;
    let mut formula_matches = 0;
    let g_minus = vec![-1i64; r];
    for _ in 0..samples {
        let alpha: Vec<SparseLaurent> = (0..n).map(|_| random_laurent(&mut rng, ctx)).collect();
        let res = eval_f_laurent(&f, &alpha)?.residue();
        if gf.artin_schreier_preimage(res).is_some() {
            in_image += 1;
        }
        let a = alpha[wit.linear_var].coeff(&g_minus);
        if res == gf.sub(gf.frobenius(a, 1), a) {
            formula_matches += 1;
        }
    }
    Ok(ResidueReport { samples, in_image, formula_matches, witness_residue, witness_ok })
}

fn random_laurent(rng: &mut ChaCha8Rng, ctx: &FieldCtx) -> SparseLaurent {
    let gf = ctx.gf();
    let r = ctx.r();
    let mut out = SparseLaurent::zero(gf, r);
    let nterms = rng.gen_range(0..=4);
    for _ in 0..nterms {
        let e: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..=2)).collect();
        out.add_term(&e, Fq(rng.gen_range(0..gf.q())));
    }
    // make the residue slot hit often
    if rng.gen_bool(0.5) {
        out.add_term(&vec![-1; r], Fq(rng.gen_range(0..gf.q())));
    }
    out
}
