//! Acceptance gate: twelve criteria, each with a pinned time bound. Prints
//! one PASS/FAIL line per criterion and exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use addpoly::canon::{check_independence, eval_ppoly, ext1_independence, ext1_reduce, Divider, KPoly};
use addpoly::cli::cert::{parse_normalization, push_normalization};
use addpoly::cli::document::Section;
use addpoly::funcfield::FieldCtx;
use addpoly::gfq::PrimeFieldCtx;
use addpoly::ppoly::{MonoPPoly, PPoly};
use addpoly::reduce::{
    check_normalized, is_reduced, normalize_system, principal_zero, replay_normalization, universal_form,
};
use addpoly::residue::{check_witness, h1_witness};
use addpoly::universal::{
    classify, homogenized_rank, is_universal, phi_value, represent, ubiquity_embed, weil_restrict_alpha_p,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn c1_example_fidelity() -> Outcome {
    for (p, want) in [(2, true), (3, false), (5, false)] {
        let k = field(p, 1);
        let c = ok(classify(&example_w(&k, k.var(0))))?;
        ensure(c.permawound == Some(want), || format!("p = {p}: permawound = {:?}", c.permawound))?;
    }
    Ok("p=2 true, p=3,5 false".into())
}

fn c2_example_e() -> Outcome {
    let k = field(3, 1);
    let t = k.var(0);
    let e = PPoly::from_terms(
        &k,
        3,
        [(0, 0, k.one()), (0, 1, t.clone()), (1, 1, k.one()), (2, 1, k.neg(&k.mul(&t, &t)))],
    );
    let c = ok(classify(&e))?;
    ensure(c.reduced, || "E is not reported reduced".into())?;
    let z = ok(principal_zero(&e.principal_part()))?;
    ensure(z.is_none(), || "principal part of E has a zero".into())?;
    Ok(format!("reduced, no principal zero, permawound = {:?}", c.permawound))
}

fn c3_phi_bound() -> Outcome {
    let mut rng = rng(3);
    let setups = [(2u32, 1usize), (3, 1), (2, 2)];
    let mut tested = 0;
    let mut universal = 0;
    let mut attempts = 0;
    while tested < 510 {
        attempts += 1;
        ensure(attempts < 20_000, || format!("only {tested} reduced samples found"))?;
        let (q, r) = setups[attempts % 3];
        let k = field(q, r);
        let n = rng.gen_range(1..=6);
        let max_d = 3;
        let p = mono(&mut rng, &k, n, max_d, 2);
        if !ok(is_reduced(p.as_ppoly()))? {
            continue;
        }
        tested += 1;
        let phi = ok(phi_value(&p))?;
        ensure(phi <= BigRational::one(), || format!("phi = {phi} > 1 for reduced {}", p.as_ppoly().render(false)))?;
        let v = ok(is_universal(&p))?;
        let (rank, rows) = ok(homogenized_rank(&p))?;
        let oracle = rank == rows;
        ensure(v.universal == phi.is_one() && v.universal == oracle, || {
            format!("verdict {} phi {phi} rank {rank}/{rows} for {}", v.universal, p.as_ppoly().render(false))
        })?;
        universal += usize::from(v.universal);
    }
    Ok(format!("{tested} reduced samples ({universal} universal) from {attempts} draws"))
}

fn c4_represent() -> Outcome {
    let mut rng = rng(4);
    let mut count = 0;
    for (q, r, level) in [(2, 1, 1), (2, 1, 2), (3, 1, 1), (3, 1, 2), (2, 2, 1)] {
        let k = field(q, r);
        let p = ok(MonoPPoly::new(universal_form(&k, level)))?;
        for _ in 0..100 {
            let a = ratfunc(&mut rng, &k, 4);
            let x = ok(represent(&p, &a))?;
            ensure(ok(p.as_ppoly().eval(&x))? == a, || format!("P(x) != {} over {}", k.render(&a), k.spec()))?;
            count += 1;
        }
    }
    Ok(format!("{count} targets solved exactly"))
}

fn c5_normalize() -> Outcome {
    let mut rng = rng(5);
    let fields = [field(2, 1), field(3, 1)];
    for i in 0..200 {
        let k = &fields[i % 2];
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(1..=3);
        let system: Vec<PPoly> = (0..m)
            .map(|_| {
                let terms = rng.gen_range(1..=4);
                ppoly(&mut rng, k, n, 2, terms, 1)
            })
            .collect();
        if system.iter().all(PPoly::is_zero) {
            continue;
        }
        let norm = ok(normalize_system(k, n, &system))?;
        ok(check_normalized(&norm.system))?;
        ensure(norm.sigma.verify_inverse(), || "sigma does not verify as invertible".into())?;
        let mut sec = Section::default();
        push_normalization(&mut sec, k, &norm.certificate);
        let parsed = ok(parse_normalization(k, &sec))?;
        let mut again = Section::default();
        push_normalization(&mut again, k, &parsed);
        ensure(again == sec, || "certificate does not survive serialization".into())?;
        let (sigma, replayed) = ok(replay_normalization(k, n, &system, &parsed))?;
        let render = |s: &[PPoly]| s.iter().map(|f| f.render(false)).collect::<Vec<_>>().join("\n");
        ensure(render(&replayed) == render(&norm.system), || "replayed system differs".into())?;
        ensure(sigma.components() == norm.sigma.components(), || "replayed sigma differs".into())?;
    }
    Ok("200 systems normalized and replayed".into())
}

fn c6_completion() -> Outcome {
    let mut rng = rng(6);
    let fields = [field(2, 1), field(3, 1), field(2, 2)];
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        ensure(attempts < 10_000, || format!("only {done} reduced separable samples"))?;
        let k = &fields[attempts % 3];
        let n = rng.gen_range(1..=3);
        let max_j = if k.r() == 2 { 1 } else { 2 };
        let terms = rng.gen_range(1..=5);
        let mut f = ppoly(&mut rng, k, n, max_j, terms, 1);
        f.add_term(0, 0, &k.one());
        if !f.is_separable() || (0..n).any(|i| !f.involves(i)) || !ok(is_reduced(&f))? {
            continue;
        }
        let u = ok(ubiquity_embed(&f))?;
        let c = ok(classify(&u.w))?;
        ensure(c.permawound == Some(true), || format!("W not permawound for {}", f.render(false)))?;
        ensure(ok(u.w.specialize_zero(|v| v >= n).restrict(0, n))? == f, || "W does not specialize to F".into())?;
        let level = u.completion.level;
        let size = BigInt::from(k.p()).pow(k.r() as u32 * level);
        let expected = (BigRational::one() - ok(phi_value(&f.principal_part()))?) * BigRational::from_integer(size);
        ensure(expected == BigRational::from_integer(u.projection.len().into()), || {
            format!("step count {} vs {expected}", u.projection.len())
        })?;
        done += 1;
    }
    Ok(format!("{done} embeddings from {attempts} draws"))
}

fn c7_canonical() -> Outcome {
    let mut rng = rng(7);
    let k2 = field(2, 1);
    let k3 = field(3, 1);
    let fs = [example_w(&k2, k2.var(0)), example_w(&k2, k2.add(&k2.var(0), &k2.one())), {
        let t = k3.var(0);
        PPoly::from_terms(&k3, 3, [(0, 0, k3.one()), (0, 1, t.clone()), (1, 1, k3.one()), (2, 1, k3.neg(&k3.mul(&t, &t)))])
    }];
    for i in 0..300 {
        let f = &fs[i % fs.len()];
        let k = f.ctx();
        let d = ok(Divider::new(f))?;
        let m = rng.gen_range(1..=2);
        let support = rng.gen_range(1..=12);
        let g = kpoly(&mut rng, k, m, 6, support);
        let cf = ok(d.canonical_form(&g, None))?;
        ensure(ok(cf.verify(f))?, || "g - h != F(preimage)".into())?;
        ensure(ok(d.canonical_form(&cf.h, None))?.h == cf.h, || "not idempotent".into())?;
        let tuple: Vec<KPoly> = (0..f.nvars()).map(|_| kpoly(&mut rng, k, m, 2, 2)).collect();
        let shifted = ok(g.add(&ok(eval_ppoly(f, &tuple))?))?;
        ensure(ok(d.canonical_form(&shifted, None))?.h == cf.h, || "not shift invariant".into())?;
        for _ in 0..5 {
            let seed = rng.gen();
            ensure(ok(d.canonical_form(&g, Some(seed)))?.h == cf.h, || format!("seed {seed} changes h"))?;
        }
    }
    Ok("300 inputs: identity, idempotence, shift and tie-break invariance".into())
}

fn c8_ext1() -> Outcome {
    let mut rng = rng(8);
    let k = field(2, 1);
    let mut level_two = universal_form(&k, 2);
    level_two.add_term(1, 0, &k.var(0));
    level_two.add_term(2, 1, &k.one());
    let fs = [example_w(&k, k.var(0)), level_two];
    let mut count = 0;
    for f in &fs {
        let big_n = (0..f.nvars()).filter_map(|i| f.top_exp(i)).max().unwrap();
        ensure(ok(is_universal(&f.principal_part()))?.universal, || "principal part not universal".into())?;
        for _ in 0..50 {
            let terms = rng.gen_range(1..=5);
            let f1 = ppoly(&mut rng, &k, 1, 7, terms, 2);
            let r = ok(ext1_reduce(&f1, f))?;
            ensure(r.representative.top_exp(0).is_none_or(|e| e < big_n), || "degree not below p^N".into())?;
            ensure(ok(r.verify(f))?, || "certificate does not re-expand".into())?;
            count += 1;
        }
    }
    let x4 = PPoly::from_terms(&k, 1, [(0, 0, k.one()), (0, 2, k.one())]);
    let cert = ok(ext1_independence(&x4, &[2, 3, 4]))?;
    ensure(ok(check_independence(&x4, &cert))?, || "independence certificate rejected".into())?;
    Ok(format!("{count} reductions; X+X^4 independence for T^4, T^8, T^16 with mu = {}", k.render(&cert.mu)))
}

fn c9_residue() -> Outcome {
    let mut out = Vec::new();
    for q in [2, 3] {
        let k = field(q, 1);
        let wit = ok(h1_witness(&k, &[addpoly::gfq::Fq(0)]))?;
        let rep = ok(check_witness(&wit, 10_000, 9))?;
        ensure(rep.passed(), || format!("F{q}: {rep:?}"))?;
        out.push(format!("F{q}: w = {}", wit.w.render(k.names())));
    }
    Ok(format!("10^4 samples each; {}", out.join(", ")))
}

fn c10_weil() -> Outcome {
    let k = field(2, 1);
    let w2 = ok(weil_restrict_alpha_p(&k, 2))?;
    let w1 = ok(weil_restrict_alpha_p(&k, 1))?;
    ensure(w2.blocks.len() == 2, || format!("{} blocks", w2.blocks.len()))?;
    let base = &w1.blocks[0].local;
    for b in &w2.blocks {
        ensure(&b.local == base, || format!("block {} differs from level one", b.residue))?;
        let pulled = b.equation.restrict(0, w2.nvars).map_err(|e| e.to_string())?;
        let mut perm = vec![usize::MAX; w2.nvars];
        for (h, &v) in b.vars.iter().enumerate() {
            perm[v] = h;
        }
        let local: PPoly = PPoly::from_terms(&k, b.vars.len(), pulled.terms().map(|(v, j, c)| (perm[v], j, c.clone())));
        ensure(&local == base, || "bijection does not carry the block to the level-one equation".into())?;
    }
    Ok(format!("2 blocks equal to {}", base.render(true)))
}

fn c11_extension() -> Outcome {
    let mut rng = rng(11);
    let mut agree = 0;
    for i in 0..100 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let k = field(q, 1);
        let big = k.with_constants(ok(PrimeFieldCtx::new(q * q))?);
        let emb = k.gf().embedding_into(big.gf()).ok_or("no embedding")?;
        let n = rng.gen_range(1..=4);
        let p = mono(&mut rng, &k, n, 2, 2);
        let lifted = ok(MonoPPoly::new(p.as_ppoly().map_field(&big, |a| k.embed(a, &emb, &big))))?;
        let a = ok(is_universal(&p))?.universal;
        let b = ok(is_universal(&lifted))?.universal;
        ensure(a == b, || format!("verdicts differ for {}", p.as_ppoly().render(false)))?;
        agree += 1;
    }
    Ok(format!("{agree} verdicts agree"))
}

fn c12_golden() -> Outcome {
    for (name, args) in common::golden::CASES {
        let expected = std::fs::read_to_string(common::golden::dir().join(format!("{name}.out")))
            .map_err(|e| format!("{name}: {e}"))?;
        let (a, code_a) = common::golden::run(args);
        let (b, code_b) = common::golden::run(args);
        ensure(code_a == 0 && code_b == 0, || format!("{name}: exit {code_a}/{code_b}"))?;
        ensure(a == b, || format!("{name}: runs differ"))?;
        ensure(a == expected, || format!("{name}: output differs from golden file"))?;
    }
    Ok(format!("{} commands byte-identical", common::golden::CASES.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("example fidelity", 1, c1_example_fidelity),
        ("example E", 1, c2_example_e),
        ("phi bound suite", 60, c3_phi_bound),
        ("representation solver", 30, c4_represent),
        ("normalization", 120, c5_normalize),
        ("completion/ubiquity", 60, c6_completion),
        ("canonical form", 120, c7_canonical),
        ("ext1 reduction", 30, c8_ext1),
        ("residue suite", 30, c9_residue),
        ("structural decomposition", 1, c10_weil),
        ("extension stability", 60, c11_extension),
        ("CLI golden files", 10, c12_golden),
    ];
    let _ = FieldCtx::standard(2, 1);
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or(e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or("panic".into()))
        });
        let elapsed = start.elapsed();
        let bound = Duration::from_secs(*limit);
        let verdict = match (&result, elapsed <= bound) {
            (Ok(detail), true) => format!("PASS ({:.2}s < {limit}s) {detail}", elapsed.as_secs_f64()),
            (Ok(detail), false) => format!("FAIL (time {:.2}s > {limit}s) {detail}", elapsed.as_secs_f64()),
            (Err(e), _) => format!("FAIL ({:.2}s) {e}", elapsed.as_secs_f64()),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {:>2} [{name}]: {verdict}", i + 1);
    }
    println!("acceptance: {} of 12 passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
