//! Command-line front end: argument handling, dispatch, and output
//! documents.

pub mod cert;
pub mod document;
pub mod parse;

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::canon::{ext1_independence, ext1_reduce, Divider};
use crate::error::{Error, Result};
use crate::funcfield::FieldCtx;
use crate::ppoly::{AdditiveSubst, MonoPPoly, PPoly};
use crate::reduce::{check_normalized, normalize_system, reduce_ppoly};
use crate::residue::{check_witness, h1_witness};
use crate::universal::{
    classify, complete_to_universal, example_e, example_w, is_universal, solve_vpl_scalar, standard_v,
    ubiquity_embed, weil_restrict_alpha_p, weil_restrict_gm_quotient, Representer, StandardGroup, VplPair,
};

use cert::{join, push_normalization, push_transcript};
use document::{Document, Section};
use parse::{parse_field, parse_kpoly, parse_ppoly_system, parse_ratfunc, Indexing};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "addpoly", version, about = "Additive polynomials over F_q(t1..tr)")]
pub struct Cli {
    /// Base field, e.g. `F2(t)` or `F9(t,u)`.
    #[arg(long, global = true, default_value = "F2(t)")]
    pub field: String,
    /// Seed for randomized tie-breaking and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Append a certificate block to the output.
    #[arg(long, global = true)]
    pub cert: bool,
    /// Largest constant field extension degree tried by `standard v-iso`.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_const_ext: u32,
    /// Number of variables of the ambient space (default: largest index used).
    #[arg(long, global = true)]
    pub nvars: Option<usize>,
    /// Read expressions from this file instead of the command line or stdin.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Make a p-polynomial reduced by an invertible change of variables.
    Reduce {
        exprs: Vec<String>,
    },
    /// Normalize a system of p-polynomials.
    Normalize {
        exprs: Vec<String>,
    },
    /// Permawoundness verdicts for the group cut out by one p-polynomial.
    Classify {
        exprs: Vec<String>,
    },
    /// Complete a reduced monogeneous p-polynomial to a universal one.
    Complete {
        exprs: Vec<String>,
    },
    /// Embed a group into a permawound one with vector-group quotient.
    Embed {
        exprs: Vec<String>,
    },
    /// Canonical form of G modulo F(R, ..., R); arguments `F G`.
    Canon {
        exprs: Vec<String>,
        /// Treat G as a one-variable p-polynomial and reduce it below p^N.
        #[arg(long)]
        ext1: bool,
        /// Certify independence of T^(p^s) for these s (F only).
        #[arg(long, value_delimiter = ',')]
        powers: Option<Vec<u32>>,
    },
    /// Solve P(x) = a; arguments `P a`.
    Solve {
        exprs: Vec<String>,
    },
    /// Residue witness of a value missed by P + L.
    Witness {
        /// Constants c_i with lambda_i = t_i + c_i (default all zero).
        #[arg(long, value_delimiter = ',')]
        consts: Option<Vec<String>>,
        /// Random finite-support samples to check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Standard groups: `v [L]`, `weil N`, `gm`, `w A`, `e A B`, `v-iso L`.
    Standard {
        kind: String,
        args: Vec<String>,
    },
    /// Re-verify the certificate in a document (file or stdin).
    CheckCert { file: Option<PathBuf> },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::Precondition(_) | Error::ArityMismatch { .. } | Error::Unsupported(_) => EXIT_PRECONDITION,
        Error::Invariant(_) => EXIT_INVARIANT,
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run(args: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match execute(&cli, stdin) {
        Ok((doc, code)) => Outcome { stdout: doc.render(), stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) },
    }
}

fn read_exprs(cli: &Cli, exprs: &[String], stdin: &mut dyn Read) -> Result<Vec<String>> {
    if !exprs.is_empty() {
        return Ok(exprs.to_vec());
    }
    let mut text = String::new();
    match &cli.input {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            stdin.read_to_string(&mut text).map_err(|e| Error::precondition(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

fn arity(exprs: &[String], n: usize, what: &str) -> Result<()> {
    if exprs.len() != n {
        return Err(Error::precondition(format!("{what} expects {n} expression(s), found {}", exprs.len())));
    }
    Ok(())
}

/// Parsed p-polynomial inputs together with their display conventions.
struct Polys {
    polys: Vec<PPoly>,
    indexing: Indexing,
}

impl Polys {
    fn zero_based(&self) -> bool {
        self.indexing.zero_based()
    }

    fn show(&self, f: &PPoly) -> String {
        f.render(self.zero_based())
    }

    fn var_name(&self, i: usize) -> String {
        format!("X{}", i + self.indexing.base())
    }

    fn record(&self, doc: &mut Document) {
        doc.push("indexing", self.indexing.base());
        doc.push("nvars", self.polys[0].nvars());
        for f in &self.polys {
            doc.push("input", self.show(f));
        }
    }

    fn sigma(&self, doc: &mut Document, sigma: &AdditiveSubst) {
        for (i, c) in sigma.components().iter().enumerate() {
            doc.push("sigma", format!("{} -> {}", self.var_name(i), self.show(c)));
        }
    }
}

fn polys(ctx: &FieldCtx, texts: &[String], nvars: Option<usize>) -> Result<Polys> {
    let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
    let (polys, indexing) = parse_ppoly_system(&refs, ctx, nvars, None)?;
    Ok(Polys { polys, indexing })
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<(Document, i32)> {
    if let Command::CheckCert { file } = &cli.command {
        return check_cert(cli, file.as_ref(), stdin);
    }
    let ctx = parse_field(&cli.field)?;
    let doc = match &cli.command {
        Command::Reduce { exprs } => cmd_reduce(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Normalize { exprs } => cmd_normalize(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Classify { exprs } => cmd_classify(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Complete { exprs } => cmd_complete(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Embed { exprs } => cmd_embed(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Canon { exprs, ext1, powers } => {
            cmd_canon(cli, &ctx, &read_exprs(cli, exprs, stdin)?, *ext1, powers.as_deref())?
        }
        Command::Solve { exprs } => cmd_solve(cli, &ctx, &read_exprs(cli, exprs, stdin)?)?,
        Command::Witness { consts, samples } => cmd_witness(cli, &ctx, consts.as_deref(), *samples)?,
        Command::Standard { kind, args } => {
            let mut doc = standard_document(&ctx, kind, args, cli.seed, cli.max_const_ext)?;
            if !cli.cert {
                doc.certificate = None;
            }
            doc
        }
        Command::CheckCert { .. } => unreachable!(),
    };
    Ok((doc, EXIT_OK))
}

fn with_cert(cli: &Cli, doc: &mut Document, kind: &str, sec: Section) {
    if cli.cert {
        doc.certificate = Some((kind.to_string(), sec));
    }
}

fn cmd_reduce(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    arity(exprs, 1, "reduce")?;
    let ps = polys(ctx, exprs, cli.nvars)?;
    let red = reduce_ppoly(&ps.polys[0])?;
    let mut doc = Document::new("reduce", ctx, cli.seed);
    ps.record(&mut doc);
    doc.push("reduced-form", ps.show(&red.reduced));
    doc.push("first-active", red.first_active);
    doc.push("steps", red.transcript.steps.len());
    ps.sigma(&mut doc, &red.sigma);
    let mut sec = Section::default();
    push_transcript(&mut sec, ctx, &red.transcript);
    with_cert(cli, &mut doc, "reduce", sec);
    Ok(doc)
}

fn show_opt(v: Option<bool>) -> String {
    v.map_or("unknown".to_string(), |b| b.to_string())
}

fn cmd_classify(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    arity(exprs, 1, "classify")?;
    let ps = polys(ctx, exprs, cli.nvars)?;
    let c = classify(&ps.polys[0])?;
    let mut doc = Document::new("classify", ctx, cli.seed);
    ps.record(&mut doc);
    doc.push("separable", c.separable);
    doc.push("reduced", c.reduced);
    doc.push("split-rank", c.split_rank);
    doc.push("principal-phi", &c.principal_phi);
    doc.push("principal-universal", c.principal_universal);
    doc.push("permawound", show_opt(c.permawound));
    doc.push("quasi-weakly-permawound", show_opt(c.quasi_weakly_permawound));
    doc.push("connected", show_opt(c.connected));
    doc.push("semiwound", show_opt(c.semiwound));
    doc.push("reduced-form", ps.show(&c.reduction.reduced));
    doc.push("first-active", c.reduction.first_active);
    let mut sec = Section::default();
    push_transcript(&mut sec, ctx, &c.reduction.transcript);
    with_cert(cli, &mut doc, "classify", sec);
    Ok(doc)
}

fn cmd_normalize(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    if exprs.is_empty() {
        return Err(Error::precondition("normalize expects at least one expression"));
    }
    let ps = polys(ctx, exprs, cli.nvars)?;
    let n = ps.polys[0].nvars();
    let norm = normalize_system(ctx, n, &ps.polys)?;
    let offset = check_normalized(&norm.system)?;
    let mut doc = Document::new("normalize", ctx, cli.seed);
    ps.record(&mut doc);
    for f in &norm.system {
        doc.push("equation", ps.show(f));
    }
    doc.push("last-offset", offset);
    ps.sigma(&mut doc, &norm.sigma);
    let mut sec = Section::default();
    push_normalization(&mut sec, ctx, &norm.certificate);
    with_cert(cli, &mut doc, "normalize", sec);
    Ok(doc)
}

fn cmd_complete(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    arity(exprs, 1, "complete")?;
    let ps = polys(ctx, exprs, cli.nvars)?;
    let p = MonoPPoly::new(ps.polys[0].clone())?;
    let c = complete_to_universal(&p)?;
    let mut doc = Document::new("complete", ctx, cli.seed);
    ps.record(&mut doc);
    doc.push("level", c.level);
    doc.push("steps", c.added.len());
    doc.push("addition", ps.show(&c.addition()));
    doc.push("completed", ps.show(c.completed.as_ppoly()));
    let mut sec = Section::default();
    for a in &c.added {
        sec.push("added", ctx.render(a));
    }
    with_cert(cli, &mut doc, "complete", sec);
    Ok(doc)
}

fn cmd_embed(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    arity(exprs, 1, "embed")?;
    let ps = polys(ctx, exprs, cli.nvars)?;
    let u = ubiquity_embed(&ps.polys[0])?;
    let mut doc = Document::new("embed", ctx, cli.seed);
    ps.record(&mut doc);
    doc.push("w", ps.show(&u.w));
    doc.push("projection", join(&u.projection));
    doc.push("projection-vars", u.projection.iter().map(|&i| ps.var_name(i)).collect::<Vec<_>>().join(" "));
    doc.push("fresh", u.projection.len());
    let mut sec = Section::default();
    sec.push("level", u.completion.level);
    with_cert(cli, &mut doc, "embed", sec);
    Ok(doc)
}

fn cmd_canon(
    cli: &Cli,
    ctx: &FieldCtx,
    exprs: &[String],
    ext1: bool,
    powers: Option<&[u32]>,
) -> Result<Document> {
    if let Some(powers) = powers {
        arity(exprs, 1, "canon --powers")?;
        let ps = polys(ctx, exprs, cli.nvars)?;
        let c = ext1_independence(&ps.polys[0], powers)?;
        let mut doc = Document::new("canon", ctx, cli.seed);
        ps.record(&mut doc);
        doc.push("mode", "independence");
        doc.push("powers", join(powers));
        doc.push("independent", true);
        let mut sec = Section::default();
        sec.push("mu", ctx.render(&c.mu));
        for ob in &c.obstructions {
            let mut row = vec![ob.power];
            row.extend(&ob.shifts);
            sec.push("power", join(&row));
        }
        with_cert(cli, &mut doc, "independence", sec);
        return Ok(doc);
    }
    arity(exprs, 2, "canon")?;
    let ps = polys(ctx, &exprs[..1], cli.nvars)?;
    let f = &ps.polys[0];
    let mut doc = Document::new("canon", ctx, cli.seed);
    ps.record(&mut doc);
    if ext1 {
        let (mut g1, _) = parse_ppoly_system(&[exprs[1].as_str()], ctx, Some(1), Some(ps.indexing))?;
        let g1 = g1.remove(0);
        let r = ext1_reduce(&g1, f)?;
        doc.push("mode", "ext1");
        doc.push("class", ps.show(&g1));
        doc.push("representative", ps.show(&r.representative));
        let mut sec = Section::default();
        for y in &r.certificate {
            sec.push("y", ps.show(y));
        }
        with_cert(cli, &mut doc, "ext1", sec);
        return Ok(doc);
    }
    let g = parse_kpoly(&exprs[1], ctx, None)?;
    let cf = Divider::new(f)?.canonical_form(&g, Some(cli.seed))?;
    doc.push("mode", "division");
    doc.push("ring-vars", g.nvars());
    doc.push("g", g.render());
    doc.push("canonical", cf.h.render());
    doc.push("in-image", cf.h.is_zero());
    doc.push("steps", cf.steps);
    let mut sec = Section::default();
    for y in &cf.preimage {
        sec.push("preimage", y.render());
    }
    with_cert(cli, &mut doc, "canon", sec);
    Ok(doc)
}

fn cmd_solve(cli: &Cli, ctx: &FieldCtx, exprs: &[String]) -> Result<Document> {
    arity(exprs, 2, "solve")?;
    let ps = polys(ctx, &exprs[..1], cli.nvars)?;
    let a = parse_ratfunc(&exprs[1], ctx)?;
    let p = MonoPPoly::new(ps.polys[0].clone())?;
    let verdict = is_universal(&p)?;
    let rep = Representer::partial(&p)?;
    let mut doc = Document::new("solve", ctx, cli.seed);
    ps.record(&mut doc);
    doc.push("target", ctx.render(&a));
    doc.push("phi", &verdict.phi);
    doc.push("reduced-phi", &verdict.reduced_phi);
    doc.push("universal", verdict.universal);
    let mut sec = Section::default();
    match rep.try_represent(&a)? {
        Some(x) => {
            doc.push("solvable", true);
            for v in &x {
                doc.push("x", ctx.render(v));
                sec.push("x", ctx.render(v));
            }
            with_cert(cli, &mut doc, "represent", sec);
        }
        None => {
            doc.push("solvable", false);
            sec.push("first-active", rep.reduction().first_active);
            push_transcript(&mut sec, ctx, &rep.reduction().transcript);
            with_cert(cli, &mut doc, "unrepresented", sec);
        }
    }
    Ok(doc)
}

fn cmd_witness(cli: &Cli, ctx: &FieldCtx, consts: Option<&[String]>, samples: usize) -> Result<Document> {
    let text = match consts {
        Some(cs) => cs.join(" "),
        None => vec!["0"; ctx.r()].join(" "),
    };
    let cs = cert::consts_from(ctx, &text)?;
    let wit = h1_witness(ctx, &cs)?;
    let rep = check_witness(&wit, samples, cli.seed)?;
    let mut doc = Document::new("witness", ctx, cli.seed);
    doc.push("consts", cs.iter().map(|c| ctx.gf().format(*c)).collect::<Vec<_>>().join(" "));
    doc.push("lambda", wit.lambda.iter().map(|l| ctx.render(l)).collect::<Vec<_>>().join(" "));
    doc.push("equation", wit.equation().render(false));
    doc.push("beta", ctx.gf().format(wit.beta));
    doc.push("w", wit.w.render(ctx.names()));
    doc.push("claim", &wit.claim);
    doc.push("samples", rep.samples);
    doc.push("checks-passed", rep.passed());
    let mut sec = Section::default();
    sec.push("samples", samples);
    sec.push("sample-seed", cli.seed);
    sec.push("in-image", rep.in_image);
    sec.push("formula-matches", rep.formula_matches);
    sec.push("witness-residue", ctx.gf().format(rep.witness_residue));
    with_cert(cli, &mut doc, "witness", sec);
    if !rep.passed() {
        return Err(Error::invariant("residue checks failed"));
    }
    Ok(doc)
}

fn group_lines(doc: &mut Document, g: &StandardGroup) {
    for line in g.render() {
        doc.push("equation", line);
    }
}

/// The `standard` subcommand's document; always carries a certificate.
pub fn standard_document(ctx: &FieldCtx, kind: &str, args: &[String], seed: u64, max_ext: u32) -> Result<Document> {
    let mut doc = Document::new("standard", ctx, seed);
    doc.push("kind", kind);
    for a in args {
        doc.push("arg", a);
    }
    let want = |n: usize| -> Result<()> {
        if args.len() != n {
            return Err(Error::precondition(format!("standard {kind} expects {n} argument(s), found {}", args.len())));
        }
        Ok(())
    };
    let mut kind_cert = "standard";
    let mut sec = Section::default();
    match kind {
        "v" => {
            let g = if args.is_empty() {
                standard_v(ctx, None, None)?
            } else {
                want(1)?;
                let n = standard_v(ctx, None, None)?.presentation.nvars();
                let (l, _) = parse_ppoly_system(&[args[0].as_str()], ctx, Some(n), Some(Indexing::ZeroBased))?;
                standard_v(ctx, None, l.into_iter().next())?
            };
            doc.push("indexing", 0);
            doc.push("nvars", g.presentation.nvars());
            group_lines(&mut doc, &g);
        }
        "gm" => {
            want(0)?;
            let g = weil_restrict_gm_quotient(ctx, None)?;
            doc.push("indexing", 0);
            doc.push("nvars", g.presentation.nvars());
            group_lines(&mut doc, &g);
        }
        "w" | "e" => {
            want(if kind == "w" { 1 } else { 2 })?;
            let vals = args.iter().map(|a| parse_ratfunc(a, ctx)).collect::<Result<Vec<_>>>()?;
            let g = if kind == "w" { example_w(ctx, &vals[0])? } else { example_e(ctx, &vals[0], &vals[1])? };
            doc.push("indexing", 1);
            doc.push("nvars", g.presentation.nvars());
            group_lines(&mut doc, &g);
        }
        "weil" => {
            want(1)?;
            let n: u32 = args[0].parse().map_err(|_| Error::parse(0, "level must be a positive integer"))?;
            let w = weil_restrict_alpha_p(ctx, n)?;
            doc.push("indexing", 0);
            doc.push("nvars", w.nvars);
            doc.push("level", w.level);
            doc.push("blocks", w.blocks.len());
            for b in &w.blocks {
                doc.push("equation", b.equation.render(true));
            }
            for b in &w.blocks {
                doc.push("block", format!("{} vars={} local={}", b.residue, join(&b.vars), b.local.render(true)));
            }
        }
        "v-iso" => {
            want(1)?;
            let v = standard_v(ctx, None, None)?;
            let n = v.presentation.nvars();
            let (l, _) = parse_ppoly_system(&[args[0].as_str()], ctx, Some(n), Some(Indexing::ZeroBased))?;
            let l = l.into_iter().next().unwrap();
            let p = v.principal.clone().expect("V has a principal part");
            let src = VplPair::new(p.clone(), v.linear.clone().expect("V has a linear part"))?;
            let tgt = VplPair::new(p, l.clone())?;
            let sol = solve_vpl_scalar(&src, &tgt, max_ext)?;
            doc.push("indexing", 0);
            doc.push("nvars", n);
            doc.push("source", src.equation().render(true));
            doc.push("target-linear", l.render(true));
            doc.push("target", tgt.equation().render(true));
            doc.push("extension-degree", sol.extension_degree);
            doc.push("extension-field", sol.field.spec());
            doc.push("extension-modulus", sol.field.gf().modulus_string());
            doc.push("scalar", sol.field.render(&sol.scalar));
            doc.push("c", sol.field.render(&sol.c));
            kind_cert = "vpl-scalar";
            sec.push("extension-field", sol.field.spec());
            sec.push("scalar", sol.field.render(&sol.scalar));
            sec.push("c", sol.field.render(&sol.c));
        }
        other => return Err(Error::precondition(format!("unknown standard group {other:?}"))),
    }
    if kind_cert == "standard" {
        sec.push("equations", doc.body.all("equation").count());
    }
    doc.certificate = Some((kind_cert.to_string(), sec));
    Ok(doc)
}

fn check_cert(cli: &Cli, file: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<(Document, i32)> {
    let mut text = String::new();
    match file.or(cli.input.as_ref()) {
        Some(path) => {
            text = std::fs::read_to_string(path)
                .map_err(|e| Error::precondition(format!("cannot read {}: {e}", path.display())))?
        }
        None => {
            stdin.read_to_string(&mut text).map_err(|e| Error::precondition(format!("cannot read stdin: {e}")))?;
        }
    }
    let input = Document::parse(&text)?;
    let field = input.body.get("field").map(parse_field).transpose()?;
    let ctx = field.unwrap_or(parse_field(&cli.field)?);
    let mut doc = Document::new("check-cert", &ctx, cli.seed);
    doc.push("checked-command", input.body.get("command").unwrap_or("unknown"));
    match cert::check_document(&input) {
        Ok(kind) => {
            doc.push("certificate-kind", kind);
            doc.push("certificate", "accepted");
            Ok((doc, EXIT_OK))
        }
        Err(e @ Error::Invariant(_)) | Err(e @ Error::Precondition(_)) | Err(e @ Error::ArityMismatch { .. }) => {
            doc.push("certificate-kind", input.certificate.as_ref().map_or("none", |(k, _)| k.as_str()));
            doc.push("certificate", "rejected");
            doc.push("reason", e);
            Ok((doc, EXIT_INVARIANT))
        }
        Err(e) => Err(e),
    }
}

pub fn main_entry() -> i32 {
    let args: Vec<String> = std::env::args().collect();
    let out = run(&args, &mut std::io::stdin().lock());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
