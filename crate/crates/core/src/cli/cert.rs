//! Serialization of transcripts into certificate lines, and the independent
//! checks behind `check-cert`.

use num_traits::One;

use crate::canon::{check_independence, eval_ppoly, Divider, IndependenceCertificate, KPoly, Obstruction};
use crate::error::{Error, Result};
use crate::funcfield::linalg::ColumnSpace;
use crate::funcfield::{FieldCtx, RatFunc};
use crate::gfq::Fq;
use crate::ppoly::{AdditiveSubst, MonoPPoly, PPoly};
use crate::reduce::homogenize::homogenize;
use crate::reduce::single::{ReductionStep, ReductionTranscript};
use crate::reduce::system::{check_normalized, replay_normalization, NormStep, NormalizationCertificate};
use crate::reduce::zero::is_reduced;
use crate::residue::{check_witness, h1_witness};
use crate::universal::verdict::phi_value;
use crate::universal::{classify, verify_vpl_change_of_vars, VplPair};

use super::document::{Document, Section};
use super::parse::{parse_field, parse_kpoly, parse_ppoly_system, parse_ratfunc, Indexing};
use super::standard_document;

pub fn push_transcript(sec: &mut Section, k: &FieldCtx, t: &ReductionTranscript) {
    for step in &t.steps {
        sec.push("step", format!("{} {}", step.pivot, k.render(&step.scale)));
        for (i, r, e) in &step.shifts {
            sec.push("shift", format!("{i} {e} {}", k.render(r)));
        }
    }
    sec.push("permutation", join(&t.permutation));
}

pub fn push_normalization(sec: &mut Section, k: &FieldCtx, cert: &NormalizationCertificate) {
    for step in &cert.steps {
        match step {
            NormStep::Drop { index } => sec.push("drop", index),
            NormStep::Swap { a, b } => sec.push("swap", format!("{a} {b}")),
            NormStep::Divide { target, by, quotient } => {
                sec.push("divide", format!("{target} {by} {}", quotient.render(false)))
            }
            NormStep::Emit { index } => sec.push("emit", index),
            NormStep::Reduce { offset, transcript } => {
                sec.push("reduce", offset);
                push_transcript(sec, k, transcript);
            }
        }
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn bad(msg: impl Into<String>) -> Error {
    Error::invariant(msg)
}

fn words(v: &str) -> Vec<&str> {
    v.split_whitespace().collect()
}

fn num<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| bad(format!("expected a number, found {s:?}")))
}

fn nums<T: std::str::FromStr>(v: &str) -> Result<Vec<T>> {
    words(v).into_iter().map(num).collect()
}

/// Splits `"a b rest..."` into `n` leading words and the remainder.
fn split_words(v: &str, n: usize) -> Result<(Vec<&str>, &str)> {
    let mut rest = v.trim_start();
    let mut out = Vec::new();
    for _ in 0..n {
        let (w, r) = rest.split_once(' ').ok_or_else(|| bad(format!("malformed certificate line {v:?}")))?;
        out.push(w);
        rest = r.trim_start();
    }
    Ok((out, rest))
}

/// Reads `step`/`shift`/`permutation` lines.
fn read_transcript<'a>(
    k: &FieldCtx,
    lines: &mut std::iter::Peekable<impl Iterator<Item = &'a (String, String)>>,
) -> Result<ReductionTranscript> {
    let mut steps: Vec<ReductionStep> = Vec::new();
    while let Some((key, v)) = lines.next_if(|(key, _)| key == "step" || key == "shift") {
        if key == "step" {
            let (w, rest) = split_words(v, 1)?;
            steps.push(ReductionStep { pivot: num(w[0])?, scale: parse_ratfunc(rest, k)?, shifts: Vec::new() });
        } else {
            let (w, rest) = split_words(v, 2)?;
            let last = steps.last_mut().ok_or_else(|| bad("shift before step"))?;
            last.shifts.push((num(w[0])?, parse_ratfunc(rest, k)?, num(w[1])?));
        }
    }
    let (key, v) = lines.next().ok_or_else(|| bad("transcript without permutation"))?;
    if key != "permutation" {
        return Err(bad(format!("unexpected {key:?} in transcript")));
    }
    Ok(ReductionTranscript { steps, permutation: nums(v)? })
}

pub fn parse_transcript(k: &FieldCtx, sec: &Section) -> Result<ReductionTranscript> {
    let mut it = sec.lines.iter().filter(|(key, _)| matches!(key.as_str(), "step" | "shift" | "permutation")).peekable();
    read_transcript(k, &mut it)
}

pub fn parse_normalization(k: &FieldCtx, sec: &Section) -> Result<NormalizationCertificate> {
    let mut it = sec.lines.iter().peekable();
    let mut steps = Vec::new();
    while let Some((key, v)) = it.next() {
        steps.push(match key.as_str() {
            "drop" => NormStep::Drop { index: num(v)? },
            "emit" => NormStep::Emit { index: num(v)? },
            "swap" => {
                let ns: Vec<usize> = nums(v)?;
                let [a, b] = ns[..] else { return Err(bad("swap needs two indices")) };
                NormStep::Swap { a, b }
            }
            "divide" => {
                let (w, rest) = split_words(v, 2)?;
                let (q, _) = parse_ppoly_system(&[rest], k, Some(1), Some(Indexing::OneBased))?;
                NormStep::Divide { target: num(w[0])?, by: num(w[1])?, quotient: q.into_iter().next().unwrap() }
            }
            "reduce" => NormStep::Reduce { offset: num(v)?, transcript: read_transcript(k, &mut it)? },
            other => return Err(bad(format!("unknown normalization step {other:?}"))),
        });
    }
    Ok(NormalizationCertificate { steps })
}

/// Inputs recorded in a document body.
struct Inputs {
    ctx: FieldCtx,
    indexing: Indexing,
    nvars: usize,
    polys: Vec<PPoly>,
}

impl Inputs {
    fn ppoly(&self, text: &str, nvars: usize) -> Result<PPoly> {
        Ok(parse_ppoly_system(&[text], &self.ctx, Some(nvars), Some(self.indexing))?.0.remove(0))
    }

    fn single(&self) -> Result<&PPoly> {
        match &self.polys[..] {
            [f] => Ok(f),
            _ => Err(bad("expected exactly one input")),
        }
    }
}

fn read_inputs(doc: &Document) -> Result<Inputs> {
    let ctx = parse_field(doc.body.require("field")?)?;
    let indexing = match doc.body.get("indexing") {
        Some("0") => Indexing::ZeroBased,
        Some("1") | None => Indexing::OneBased,
        Some(other) => return Err(bad(format!("bad indexing {other:?}"))),
    };
    let nvars = doc.body.get("nvars").map(num).transpose()?.unwrap_or(1);
    let texts: Vec<&str> = doc.body.all("input").collect();
    let polys = if texts.is_empty() {
        Vec::new()
    } else {
        parse_ppoly_system(&texts, &ctx, Some(nvars), Some(indexing))?.0
    };
    Ok(Inputs { ctx, indexing, nvars, polys })
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

/// Verifies the certificate carried by `doc`; `Err(Invariant)` on rejection.
pub fn check_document(doc: &Document) -> Result<String> {
    let (kind, cert) = doc.certificate.as_ref().ok_or_else(|| bad("document carries no certificate"))?;
    if doc.body.get("addpoly-version").is_none() {
        return Err(bad("missing version header"));
    }
    let inp = read_inputs(doc)?;
    let body = &doc.body;
    match kind.as_str() {
        "reduce" => check_reduce(&inp, body, cert, false)?,
        "classify" => check_reduce(&inp, body, cert, true)?,
        "normalize" => check_normalize(&inp, body, cert)?,
        "complete" => check_complete(&inp, body, cert)?,
        "embed" => check_embed(&inp, body)?,
        "canon" => check_canon(&inp, body, cert)?,
        "ext1" => check_ext1(&inp, body, cert)?,
        "independence" => check_indep(&inp, cert)?,
        "represent" => check_represent(&inp, body, cert)?,
        "unrepresented" => check_unrepresented(&inp, body, cert)?,
        "witness" => check_residue(&inp, body, cert)?,
        "standard" => check_standard(doc)?,
        "vpl-scalar" => check_vpl(&inp, body, cert)?,
        other => return Err(bad(format!("unknown certificate kind {other:?}"))),
    }
    Ok(kind.clone())
}

fn check_reduce(inp: &Inputs, body: &Section, cert: &Section, verdicts: bool) -> Result<()> {
    let f = inp.single()?;
    let n = f.nvars();
    let t = parse_transcript(&inp.ctx, cert)?;
    let (sigma, red) = t.replay(f)?;
    check(sigma.verify_inverse(), "substitution is not invertible")?;
    let claimed = inp.ppoly(body.require("reduced-form")?, n)?;
    check(red == claimed, "replayed reduction differs from the claimed form")?;
    let fa: usize = num(body.require("first-active")?)?;
    check(fa < n && (0..fa).all(|i| !red.involves(i)), "inactive variable occurs")?;
    let active = red.restrict(fa, n)?;
    check(is_reduced(&active)?, "active part is not reduced")?;
    if !verdicts {
        return Ok(());
    }
    let phi = phi_value(&active.principal_part())?;
    check(body.get("principal-phi") == Some(phi.to_string().as_str()), "principal-phi mismatch")?;
    let universal = phi.is_one();
    let wound = fa == 0;
    let separable = f.is_separable();
    let show = |v: Option<bool>| v.map_or("unknown".to_string(), |b| b.to_string());
    let expect = [
        ("separable", separable.to_string()),
        ("reduced", is_reduced(f)?.to_string()),
        ("split-rank", fa.to_string()),
        ("principal-universal", universal.to_string()),
        ("permawound", show((separable && wound).then_some(universal))),
        ("quasi-weakly-permawound", show(wound.then_some(universal))),
        ("connected", show((wound && universal).then_some(true))),
        ("semiwound", show(Some(wound))),
    ];
    for (key, want) in expect {
        check(body.get(key) == Some(want.as_str()), &format!("{key} disagrees with the replayed reduction"))?;
    }
    Ok(())
}

fn check_normalize(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let nc = parse_normalization(&inp.ctx, cert)?;
    let (sigma, system) = replay_normalization(&inp.ctx, inp.nvars, &inp.polys, &nc)?;
    check(sigma.verify_inverse(), "substitution is not invertible")?;
    let claimed: Vec<PPoly> = body.all("equation").map(|s| inp.ppoly(s, inp.nvars)).collect::<Result<_>>()?;
    check(claimed == system, "replayed system differs from the claimed one")?;
    check_normalized(&system)?;
    Ok(())
}

fn check_complete(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let p = MonoPPoly::new(inp.single()?.clone())?;
    check(is_reduced(p.as_ppoly())?, "input is not reduced")?;
    let level: u32 = num(body.require("level")?)?;
    check(p.max_exp() <= Some(level), "level below the degree of P")?;
    let added: Vec<RatFunc> = cert.all("added").map(|s| parse_ratfunc(s, k)).collect::<Result<_>>()?;
    let n = p.nvars();
    let total = n + added.len();
    let mut w = p.as_ppoly().embed(total, 0);
    for (i, c) in added.iter().enumerate() {
        w.add_term(n + i, level, c);
    }
    let claimed = inp.ppoly(body.require("completed")?, total)?;
    check(claimed == w, "completed form differs from P plus the added terms")?;
    let completed = MonoPPoly::new(w)?;
    check(is_reduced(completed.as_ppoly())?, "completion is not reduced")?;
    check(phi_value(&completed)?.is_one(), "completion does not have phi = 1")?;
    let size = num_rational::BigRational::from_integer((k.p() as u64).pow(k.r() as u32 * level).into());
    let expected = (num_rational::BigRational::one() - phi_value(&p)?) * size;
    check(expected == num_rational::BigRational::from_integer(added.len().into()), "step count disagrees with phi")?;
    Ok(())
}

fn check_embed(inp: &Inputs, body: &Section) -> Result<()> {
    let f = inp.single()?;
    let n = f.nvars();
    let proj: Vec<usize> = nums(body.require("projection")?)?;
    let total = n + proj.len();
    check(proj == (n..total).collect::<Vec<_>>(), "projection is not onto the fresh variables")?;
    let w = inp.ppoly(body.require("w")?, total)?;
    check(w.specialize_zero(|v| v >= n).restrict(0, n)? == *f, "W does not specialize to F")?;
    check(classify(&w)?.permawound == Some(true), "W is not permawound")?;
    Ok(())
}

fn kpolys(k: &FieldCtx, sec: &Section, key: &str, m: usize) -> Result<Vec<KPoly>> {
    sec.all(key).map(|s| parse_kpoly(s, k, Some(m))).collect()
}

fn check_canon(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let f = inp.single()?;
    let m: usize = num(body.require("ring-vars")?)?;
    let g = parse_kpoly(body.require("g")?, k, Some(m))?;
    let h = parse_kpoly(body.require("canonical")?, k, Some(m))?;
    let pre = kpolys(k, cert, "preimage", m)?;
    check(pre.len() == f.nvars(), "preimage has the wrong length")?;
    check(g.sub(&h)? == eval_ppoly(f, &pre)?, "g - h differs from F(preimage)")?;
    check(Divider::new(f)?.is_canonical(&h)?, "h is not canonical")?;
    Ok(())
}

fn check_ext1(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let f = inp.single()?;
    let f1 = inp.ppoly(body.require("class")?, 1)?;
    let rep = inp.ppoly(body.require("representative")?, 1)?;
    let ys: Vec<PPoly> = cert.all("y").map(|s| inp.ppoly(s, 1)).collect::<Result<_>>()?;
    check(ys.len() == f.nvars(), "certificate has the wrong length")?;
    check(rep.add(&f.compose_components(&ys, 1)?)? == f1, "representative plus F(Y) differs from the input")?;
    let big_n = (0..f.nvars()).filter_map(|i| f.top_exp(i)).max().ok_or_else(|| bad("F is zero"))?;
    check(rep.top_exp(0).is_none_or(|e| e < big_n), "representative is not below p^N")?;
    Ok(())
}

fn check_indep(inp: &Inputs, cert: &Section) -> Result<()> {
    let f = inp.single()?;
    let mu = parse_ratfunc(cert.require("mu")?, &inp.ctx)?;
    let mut powers = Vec::new();
    let mut obstructions = Vec::new();
    for v in cert.all("power") {
        let ns: Vec<u32> = nums(v)?;
        let (&s, shifts) = ns.split_first().ok_or_else(|| bad("empty power line"))?;
        powers.push(s);
        obstructions.push(Obstruction { power: s, shifts: shifts.to_vec() });
    }
    let c = IndependenceCertificate { mu, powers, obstructions };
    check(check_independence(f, &c)?, "independence certificate does not check")
}

fn check_represent(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let f = inp.single()?;
    let a = parse_ratfunc(body.require("target")?, k)?;
    let x: Vec<RatFunc> = cert.all("x").map(|s| parse_ratfunc(s, k)).collect::<Result<_>>()?;
    let claimed: Vec<RatFunc> = body.all("x").map(|s| parse_ratfunc(s, k)).collect::<Result<_>>()?;
    check(claimed.is_empty() || claimed == x, "reported solution differs from the certified one")?;
    check(f.eval(&x)? == a, "P(x) differs from the target")
}

/// Replays the reduction, then checks that the target's expansion lies
/// outside the span of the homogenized reduced form.
fn check_unrepresented(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let f = inp.single()?;
    check(f.is_monogeneous(), "P is not monogeneous")?;
    let a = parse_ratfunc(body.require("target")?, k)?;
    let t = parse_transcript(k, cert)?;
    let (sigma, red) = t.replay(f)?;
    check(sigma.verify_inverse(), "substitution is not invertible")?;
    let fa: usize = num(cert.require("first-active")?)?;
    let n = f.nvars();
    check(fa < n && (0..fa).all(|i| !red.involves(i)), "inactive variable occurs")?;
    let active = MonoPPoly::new(red.restrict(fa, n)?)?;
    check(is_reduced(active.as_ppoly())?, "active part is not reduced")?;
    let h = homogenize(&active)?;
    let mut space = ColumnSpace::new(k, h.nrows());
    for col in h.columns() {
        space.insert(&col);
    }
    check(!space.contains(&h.expand(&a)), "target lies in the image")
}

/// Space-separated constants of `F_q`, written as rational-function
/// expressions (`0`, `1`, `g`, `g+1`, ...).
pub(super) fn consts_from(k: &FieldCtx, v: &str) -> Result<Vec<Fq>> {
    v.split_whitespace()
        .map(|s| {
            let c = parse_ratfunc(s, k)?;
            c.is_constant()
                .then(|| c.num().constant_value())
                .flatten()
                .ok_or_else(|| Error::precondition(format!("{s:?} is not a constant")))
        })
        .collect()
}

fn check_residue(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let consts = consts_from(k, body.require("consts")?)?;
    let wit = h1_witness(k, &consts)?;
    check(body.get("w") == Some(wit.w.render(k.names()).as_str()), "witness element differs")?;
    check(body.get("equation") == Some(wit.equation().render(false).as_str()), "equation differs")?;
    let samples: usize = num(cert.require("samples")?)?;
    let seed: u64 = num(cert.require("sample-seed")?)?;
    let rep = check_witness(&wit, samples, seed)?;
    check(rep.passed(), "residue checks fail")?;
    check(cert.get("in-image") == Some(rep.in_image.to_string().as_str()), "sample count mismatch")
}

fn check_standard(doc: &Document) -> Result<()> {
    let k = parse_field(doc.body.require("field")?)?;
    let kind = doc.body.require("kind")?;
    let args: Vec<String> = doc.body.all("arg").map(str::to_string).collect();
    let rebuilt = standard_document(&k, kind, &args, 0, 1)?;
    let want: Vec<&str> = rebuilt.body.all("equation").collect();
    let have: Vec<&str> = doc.body.all("equation").collect();
    check(want == have, "equations differ from the reconstruction")
}

fn check_vpl(inp: &Inputs, body: &Section, cert: &Section) -> Result<()> {
    let k = &inp.ctx;
    let big = parse_field(cert.require("extension-field")?)?;
    check(big.p() == k.p() && big.q() % k.q() == 0 && big.names() == k.names(), "not a constant extension")?;
    let emb = k.gf().embedding_into(big.gf()).ok_or_else(|| bad("constant field does not embed"))?;
    let lift = |a: &RatFunc| k.embed(a, &emb, &big);
    let v = crate::universal::standard_v(k, None, None)?;
    let p = v.principal.expect("V has a principal part");
    let n = p.nvars();
    let src_l = v.linear.expect("V has a linear part");
    let tgt_l = inp.ppoly(body.require("target-linear")?, n)?;
    let src = VplPair::new(p.map_field(&big, lift), src_l.map_field(&big, lift))?;
    let tgt = VplPair::new(p.map_field(&big, lift), tgt_l.map_field(&big, lift))?;
    let s = parse_ratfunc(cert.require("scalar")?, &big)?;
    let c = parse_ratfunc(cert.require("c")?, &big)?;
    let inv = big.inv(&s).ok_or_else(|| bad("zero scalar"))?;
    let sigma = AdditiveSubst::new(n, (0..n).map(|i| PPoly::term(&big, n, i, 0, s.clone())).collect())
        .with_inverse((0..n).map(|i| PPoly::term(&big, n, i, 0, inv.clone())).collect());
    check(verify_vpl_change_of_vars(&src, &tgt, &c, &sigma)?, "change of variables does not verify")
}
