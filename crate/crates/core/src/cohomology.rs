//! Reduction rules and integration for the ambient spaces `D_k x X` and
//! `D_k x P(TX)`.
//!
//! Three rewrite rules give canonical representatives: `H^{k+1} = 0` on the
//! point-condition slice, weight truncation at `m` for classes pulled back
//! from `X`, and the projective-bundle relation for powers of `lam`. The
//! relation is stored in terms of `x_i = c_i(T*X)`:
//!
//! `lam^m = x1 lam^{m-1} - x2 lam^{m-2} + ... + (-1)^{m+1} x_m`
//!
//! which rewrites strictly downward in `lam`-degree, so reduction
//! terminates.

use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{x_name, Coeff, Context, GenKind, Monomial, PolyOf, RingError, H, LAMBDA};
use crate::targets::{ChernTarget, TargetError};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("class involves `lam` but the ambient space is not projectivized")]
    LambdaNotAllowed,
    #[error("surviving monomial `{mono}` has weight {got}, expected {want} (homogeneity bug upstream)")]
    OffWeightMonomial { mono: String, got: u32, want: u32 },
    #[error("target has dimension {target} but the ambient space has m = {ambient}")]
    DimensionMismatch { target: u32, ambient: u32 },
    #[error("integrand is not homogeneous of weight {want}")]
    InhomogeneousIntegrand { want: u32 },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Target(#[from] TargetError),
}

/// The space integrated over: `D_k x X`, or `D_k x P(TX)` when
/// `projectivized` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ambient {
    /// Complex dimension of `X`.
    pub m: u32,
    /// Codimension of the singularity; the slice is `D_k = P^k`.
    pub k: u32,
    /// Whether classes may involve `lam`.
    pub projectivized: bool,
}

impl Ambient {
    pub fn new(m: u32, k: u32, projectivized: bool) -> Self {
        assert!(m >= 1, "X must have positive dimension");
        Ambient { m, k, projectivized }
    }

    /// Complex dimension of the whole ambient space.
    pub fn dimension(&self) -> u32 {
        if self.projectivized {
            self.k + 2 * self.m - 1
        } else {
            self.k + self.m
        }
    }

    /// True when a monomial survives `H`-nilpotency and weight truncation.
    pub fn keeps(&self, ctx: &Arc<Context>, mono: &Monomial) -> bool {
        mono.exp(H) <= self.k
            && ctx
                .mono_weight_excluding(mono, &[H, LAMBDA])
                .map(|w| w <= self.m)
                .unwrap_or(false)
    }

    /// `lam^m` rewritten one step: `sum_i (-1)^{i+1} x_i lam^{m-i}`.
    fn lambda_relation<C: Coeff>(&self, ctx: &Arc<Context>) -> Result<PolyOf<C>, CohomologyError> {
        let mut rel = PolyOf::zero(ctx);
        for i in 1..=self.m {
            let mut mono = Monomial::generator(&x_name(i));
            if self.m - i > 0 {
                mono = mono.with_exp(LAMBDA, self.m - i);
            }
            let c = if i % 2 == 1 { C::one() } else { -C::one() };
            rel = rel.try_add(&PolyOf::term(ctx, c, mono))?;
        }
        Ok(rel)
    }

    /// Canonical representative: `H`-exponent at most `k`, `lam`-exponent at
    /// most `m-1`, `{c1, x_i}`-weight at most `m` (higher weight dropped).
    pub fn reduce<C: Coeff>(&self, p: &PolyOf<C>) -> Result<PolyOf<C>, CohomologyError> {
        let ctx = p.context();
        if !self.projectivized && p.uses_generator(LAMBDA) {
            return Err(CohomologyError::LambdaNotAllowed);
        }
        let rel = if self.projectivized {
            Some(self.lambda_relation::<C>(ctx)?)
        } else {
            None
        };
        let mut out = PolyOf::zero(ctx);
        let mut work: Vec<(Monomial, C)> = p
            .terms()
            .filter(|(m, _)| self.keeps(ctx, m))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        while let Some((mono, c)) = work.pop() {
            let le = mono.exp(LAMBDA);
            if le < self.m {
                out = out.try_add(&PolyOf::term(ctx, c, mono))?;
                continue;
            }
            let rel = rel.as_ref().expect("lam present implies projectivized");
            let rest = PolyOf::term(ctx, c, mono.with_exp(LAMBDA, le - self.m));
            let expanded = rest.mul_filtered(rel, |m| self.keeps(ctx, m))?;
            for (m, c) in expanded.terms() {
                work.push((m.clone(), c.clone()));
            }
        }
        Ok(out)
    }

    /// Evaluates a class on the fundamental class of the ambient space:
    /// reduce, extract `H^k` (and `lam^{m-1}` when projectivized), then send
    /// each surviving weight-`m` monomial through the target's Chern-number
    /// table. The result is a polynomial in the target's parameters.
    pub fn integrate<C: Coeff>(
        &self,
        p: &PolyOf<C>,
        target: &ChernTarget<C>,
    ) -> Result<PolyOf<C>, CohomologyError> {
        if target.dimension() != self.m {
            return Err(CohomologyError::DimensionMismatch {
                target: target.dimension(),
                ambient: self.m,
            });
        }
        let ctx = p.context();
        let reduced = self.reduce(p)?;
        let mut top = reduced.coefficient_of(H, self.k)?;
        if self.projectivized {
            top = top.coefficient_of(LAMBDA, self.m - 1)?;
        }
        let mut out = PolyOf::zero(ctx);
        for (mono, c) in top.terms() {
            let (classes, params) = split_monomial(ctx, mono)?;
            let got = ctx.mono_weight(&classes)?;
            if got != self.m {
                return Err(CohomologyError::OffWeightMonomial {
                    mono: mono.to_string(),
                    got,
                    want: self.m,
                });
            }
            let value = target.eval_monomial(ctx, &classes)?;
            let contrib = value
                .try_mul(&PolyOf::term(ctx, c.clone(), params))?;
            out = out.try_add(&contrib)?;
        }
        Ok(out)
    }
}

fn split_monomial(
    ctx: &Arc<Context>,
    mono: &Monomial,
) -> Result<(Monomial, Monomial), RingError> {
    let mut classes = Vec::new();
    let mut params = Vec::new();
    for (name, &e) in mono.iter() {
        let g = ctx
            .generator(name)
            .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
        match g.kind {
            GenKind::Cohomology => classes.push((name.clone(), e)),
            GenKind::Parameter => params.push((name.clone(), e)),
        }
    }
    Ok((Monomial::from_pairs(classes), Monomial::from_pairs(params)))
}
