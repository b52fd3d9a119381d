//! Gaussian-elimination style normalization of systems of p-polynomials.
//!
//! The output `F_1..F_m` satisfies: for `i < m`, `F_i` involves `X_i` and no
//! earlier variable; `F_m` lies in `k[X_(m+j)..X_n]` for some `j >= 0`,
//! involves all of those variables, and is reduced there. The substitution `sigma` is invertible and
//! the `F_i` generate the same relations as the input after composing with it.

use crate::error::{Error, Result};
use crate::ppoly::{ore_left_divmod, AdditiveSubst, PPoly};

use super::single::{reduce_ppoly, ReductionTranscript};
use super::zero::is_reduced;

/// One logged elimination move. Indices refer to the list of pending
/// polynomials at the time of the step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormStep {
    /// Remove the zero polynomial at this position.
    Drop { index: usize },
    /// Exchange variables `a` and `b` everywhere.
    Swap { a: usize, b: usize },
    /// `pending[target] -= Q(pending[by])`.
    Divide { target: usize, by: usize, quotient: PPoly },
    /// Move `pending[index]` to the output.
    Emit { index: usize },
    /// Reduce the last pending polynomial inside variables `offset..n`, then
    /// emit it.
    Reduce { offset: usize, transcript: ReductionTranscript },
}

#[derive(Clone, Debug)]
pub struct NormalizationCertificate {
    pub steps: Vec<NormStep>,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub sigma: AdditiveSubst,
    pub system: Vec<PPoly>,
    pub certificate: NormalizationCertificate,
}

struct State {
    pending: Vec<PPoly>,
    output: Vec<PPoly>,
    sigma: AdditiveSubst,
}

impl State {
    fn apply(&mut self, step: &NormStep) -> Result<()> {
        match step {
            NormStep::Drop { index } => {
                let p = self.pending.get(*index).ok_or_else(|| Error::invariant("bad index"))?;
                if !p.is_zero() {
                    return Err(Error::invariant("dropping a nonzero polynomial"));
                }
                self.pending.remove(*index);
            }
            NormStep::Swap { a, b } => {
                let n = self.sigma.source_arity();
                if *a >= n || *b >= n {
                    return Err(Error::invariant("swap out of range"));
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(*a, *b);
                let s = AdditiveSubst::permutation(self.sigma.components()[0].ctx(), &perm);
                self.substitute(&s)?;
            }
            NormStep::Divide { target, by, quotient } => {
                if target == by || *target >= self.pending.len() || *by >= self.pending.len() {
                    return Err(Error::invariant("bad division indices"));
                }
                let g1 = &self.pending[*by];
                let q_of_g1 = quotient.compose_components(std::slice::from_ref(g1), g1.nvars())?;
                self.pending[*target] = self.pending[*target].sub(&q_of_g1)?;
            }
            NormStep::Emit { index } => {
                if *index >= self.pending.len() {
                    return Err(Error::invariant("bad emit index"));
                }
                let p = self.pending.remove(*index);
                self.output.push(p);
            }
            NormStep::Reduce { offset, transcript } => {
                if self.pending.len() != 1 {
                    return Err(Error::invariant("reduce step with more than one pending polynomial"));
                }
                let n = self.sigma.source_arity();
                let g = self.pending[0].restrict(*offset, n)?;
                let (s, _) = transcript.replay(&g)?;
                let lifted = s.lift(*offset, n);
                self.substitute(&lifted)?;
                let p = self.pending.remove(0);
                self.output.push(p);
            }
        }
        Ok(())
    }

    fn substitute(&mut self, s: &AdditiveSubst) -> Result<()> {
        for p in self.pending.iter_mut().chain(self.output.iter_mut()) {
            *p = p.compose(s)?;
        }
        self.sigma = self.sigma.then(s)?;
        Ok(())
    }
}

pub fn normalize_system(ctx: &crate::funcfield::FieldCtx, nvars: usize, system: &[PPoly]) -> Result<Normalized> {
    for p in system {
        if p.nvars() != nvars {
            return Err(Error::ArityMismatch { expected: nvars, found: p.nvars() });
        }
    }
    let mut st = State {
        pending: system.to_vec(),
        output: Vec::new(),
        sigma: AdditiveSubst::identity(ctx, nvars),
    };
    let mut log = Vec::new();
    let mut run = |st: &mut State, step: NormStep| -> Result<()> {
        st.apply(&step)?;
        log.push(step);
        Ok(())
    };
    let mut cur = 0;
    loop {
        while let Some(index) = st.pending.iter().position(|p| p.is_zero()) {
            run(&mut st, NormStep::Drop { index })?;
        }
        if st.pending.is_empty() {
            break;
        }
        if st.pending.len() == 1 {
            let g = st.pending[0].restrict(cur, nvars)?;
            let red = reduce_ppoly(&g)?;
            run(&mut st, NormStep::Reduce { offset: cur, transcript: red.transcript })?;
            break;
        }
        let v = st
            .pending
            .iter()
            .flat_map(|p| p.vars())
            .min()
            .expect("nonzero polynomials involve a variable");
        if v < cur {
            return Err(Error::invariant("pending polynomial involves an eliminated variable"));
        }
        if v != cur {
            run(&mut st, NormStep::Swap { a: cur, b: v })?;
        }
        loop {
            let involved: Vec<usize> =
                (0..st.pending.len()).filter(|&i| st.pending[i].involves(cur)).collect();
            if involved.len() <= 1 {
                break;
            }
            let by = *involved
                .iter()
                .min_by_key(|&&i| (st.pending[i].top_exp(cur).unwrap(), i))
                .unwrap();
            for &target in &involved {
                if target == by {
                    continue;
                }
                let (quotient, _) = ore_left_divmod(&st.pending[target], &st.pending[by], cur)?;
                run(&mut st, NormStep::Divide { target, by, quotient })?;
            }
        }
        let remaining_nonzero = st.pending.iter().filter(|p| !p.is_zero()).count();
        if remaining_nonzero >= 2 {
            let index = st.pending.iter().position(|p| p.involves(cur)).unwrap();
            run(&mut st, NormStep::Emit { index })?;
            cur += 1;
        }
    }
    let normalized = Normalized {
        sigma: st.sigma,
        system: st.output,
        certificate: NormalizationCertificate { steps: log },
    };
    check_normalized(&normalized.system)?;
    Ok(normalized)
}

/// Replays a certificate against the input, returning the final system and
/// substitution.
pub fn replay_normalization(
    ctx: &crate::funcfield::FieldCtx,
    nvars: usize,
    system: &[PPoly],
    cert: &NormalizationCertificate,
) -> Result<(AdditiveSubst, Vec<PPoly>)> {
    let mut st = State {
        pending: system.to_vec(),
        output: Vec::new(),
        sigma: AdditiveSubst::identity(ctx, nvars),
    };
    for step in &cert.steps {
        st.apply(step)?;
    }
    if !st.pending.is_empty() {
        return Err(Error::invariant("certificate leaves pending polynomials"));
    }
    Ok((st.sigma, st.output))
}

/// Syntactic check of the normalized shape (see the module docs). Returns
/// the offset `j` of the last equation.
pub fn check_normalized(system: &[PPoly]) -> Result<usize> {
    let Some((last, init)) = system.split_last() else {
        return Ok(0);
    };
    for (i, f) in init.iter().enumerate() {
        if f.vars().first() != Some(&i) {
            return Err(Error::invariant(format!(
                "equation {} does not have X{} as its first variable",
                i + 1,
                i + 1
            )));
        }
    }
    let m = system.len() - 1;
    let first = *last
        .vars()
        .first()
        .ok_or_else(|| Error::invariant("last equation is zero"))?;
    if first < m {
        return Err(Error::invariant(format!("last equation involves X{}", first + 1)));
    }
    let tail = last.restrict(first, last.nvars())?;
    if !is_reduced(&tail)? {
        return Err(Error::invariant("last equation is not reduced in its variables"));
    }
    Ok(first - m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcfield::FieldCtx;

    #[test]
    fn coordinate_system() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let sys = vec![PPoly::var(&k, 2, 0), PPoly::var(&k, 2, 1)];
        let out = normalize_system(&k, 2, &sys).unwrap();
        assert_eq!(out.system, sys);
    }

    #[test]
    fn one_division_then_reduce() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let t = k.var(0);
        let one = k.one();
        let h1 = PPoly::from_terms(&k, 2, [(0, 1, one.clone()), (1, 0, t.clone())]);
        let h2 = PPoly::from_terms(&k, 2, [(0, 2, one.clone()), (1, 0, one.clone())]);
        let out = normalize_system(&k, 2, &[h1.clone(), h2.clone()]).unwrap();
        assert_eq!(out.system.len(), 2);
        assert_eq!(out.system[0], h1);
        // X2 + t^2 X2^2 is already reduced
        let r = PPoly::from_terms(&k, 2, [(1, 0, one.clone()), (1, 1, k.mul(&t, &t))]);
        assert_eq!(out.system[1], r);
        let (s, replay) = replay_normalization(&k, 2, &[h1, h2], &out.certificate).unwrap();
        assert_eq!(replay, out.system);
        assert_eq!(s, out.sigma);
    }

    #[test]
    fn duplicates_collapse() {
        let k = FieldCtx::standard(3, 1).unwrap();
        let t = k.var(0);
        let h = PPoly::from_terms(&k, 2, [(0, 0, k.one()), (0, 1, k.one()), (1, 1, t)]);
        let out = normalize_system(&k, 2, &[h.clone(), h.clone()]).unwrap();
        assert_eq!(out.system, vec![h.clone()]);
        let (_, replay) = replay_normalization(&k, 2, &[h.clone(), h], &out.certificate).unwrap();
        assert_eq!(replay, out.system);
    }

    #[test]
    fn empty_system() {
        let k = FieldCtx::standard(2, 1).unwrap();
        let out = normalize_system(&k, 3, &[]).unwrap();
        assert!(out.system.is_empty());
        assert!(out.sigma.is_identity());
    }
}
