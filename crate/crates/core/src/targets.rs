//! Chern-number evaluators: maps from weight-`m` monomials in
//! `{c1, x1..xm}` to parameter polynomials, for concrete or symbolic pairs
//! of a manifold and a line bundle.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use crate::polyring::{
    binomial, Coeff, Context, GenKind, Generator, Monomial, PolyOf, RingError, C1,
};

#[derive(Debug, Error)]
pub enum TargetError {
    #[error("monomial `{mono}` has weight {got}, expected {want}")]
    WeightMismatch { mono: String, got: u32, want: u32 },
    #[error("monomial `{0}` uses a generator outside c1, x1..xm")]
    ForeignGenerator(String),
    #[error("no table entry for monomial `{0}`")]
    MissingEntry(String),
    #[error("table file error: {0}")]
    TableFile(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A degree parameter: a fixed integer or a named symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree<C> {
    Num(C),
    Symbol(String),
}

impl<C: Coeff> Degree<C> {
    pub fn num(n: i32) -> Self {
        Degree::Num(C::from(n))
    }

    pub fn symbol(name: &str) -> Self {
        Degree::Symbol(name.to_string())
    }

    fn to_poly(&self, ctx: &Arc<Context>) -> Result<PolyOf<C>, RingError> {
        match self {
            Degree::Num(n) => Ok(PolyOf::constant(ctx, n.clone())),
            Degree::Symbol(s) => PolyOf::generator(ctx, s),
        }
    }
}

/// Chern-number table of a pair `(X, L)`, queried one weight-`m` monomial
/// at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChernTarget<C> {
    /// `X = P^m`, `L` the `d`-th power of the dual tautological bundle.
    ProjectiveSpace { m: u32, d: Degree<C> },
    /// A product of projective spaces with a product polarization.
    Product { factors: Vec<(u32, Degree<C>)> },
    /// Explicit monomial-to-integer table.
    Table {
        m: u32,
        entries: BTreeMap<Monomial, C>,
    },
    /// Formal evaluator: returns the queried monomial unchanged.
    Generic { m: u32 },
}

pub fn make_pm<C: Coeff>(m: u32, d: Degree<C>) -> ChernTarget<C> {
    ChernTarget::ProjectiveSpace { m, d }
}

pub fn make_product<C: Coeff>(factors: Vec<(u32, Degree<C>)>) -> ChernTarget<C> {
    ChernTarget::Product { factors }
}

pub fn make_generic<C: Coeff>(m: u32) -> ChernTarget<C> {
    ChernTarget::Generic { m }
}

/// Builds a table target from monomial strings (`c1^a*x1^b*...`).
pub fn make_table<C: Coeff>(
    m: u32,
    entries: &BTreeMap<String, C>,
) -> Result<ChernTarget<C>, TargetError> {
    let probe = Context::for_classes(m, &[]);
    let mut table = BTreeMap::new();
    for (key, value) in entries {
        let mono = Monomial::parse(key)?;
        check_class_monomial(&probe, &mono, m)?;
        table.insert(mono, value.clone());
    }
    Ok(ChernTarget::Table { m, entries: table })
}

fn check_class_monomial(
    ctx: &Arc<Context>,
    mono: &Monomial,
    m: u32,
) -> Result<(), TargetError> {
    for (name, _) in mono.iter() {
        match ctx.generator(name) {
            Some(g) if g.kind == GenKind::Cohomology => {}
            _ => return Err(TargetError::ForeignGenerator(mono.to_string())),
        }
    }
    let got = ctx.mono_weight(mono)?;
    if got != m {
        return Err(TargetError::WeightMismatch {
            mono: mono.to_string(),
            got,
            want: m,
        });
    }
    Ok(())
}

#[derive(Deserialize)]
struct TableFile {
    dimension: u32,
    entries: BTreeMap<String, i64>,
}

/// Loads a table target from a JSON document with fields `dimension` and
/// `entries` (monomial string to integer).
pub fn load_table<C: Coeff>(path: &Path) -> Result<ChernTarget<C>, TargetError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| TargetError::TableFile(format!("{}: {e}", path.display())))?;
    let parsed: TableFile = serde_json::from_str(&text)
        .map_err(|e| TargetError::TableFile(format!("{}: {e}", path.display())))?;
    let entries: BTreeMap<String, C> = parsed
        .entries
        .into_iter()
        .map(|(k, v)| {
            let c = C::from(i32::try_from(v).map_err(|_| {
                TargetError::TableFile(format!("entry `{k}` out of range"))
            })?);
            Ok((k, c))
        })
        .collect::<Result<_, TargetError>>()?;
    make_table(parsed.dimension, &entries)
}

impl<C: Coeff> ChernTarget<C> {
    pub fn dimension(&self) -> u32 {
        match self {
            ChernTarget::ProjectiveSpace { m, .. } => *m,
            ChernTarget::Product { factors } => factors.iter().map(|(mj, _)| mj).sum(),
            ChernTarget::Table { m, .. } => *m,
            ChernTarget::Generic { m } => *m,
        }
    }

    /// Weight-0 parameter generators this target's values are written in.
    pub fn param_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |d: &Degree<C>| {
            if let Degree::Symbol(s) = d {
                if !out.contains(s) {
                    out.push(s.clone());
                }
            }
        };
        match self {
            ChernTarget::ProjectiveSpace { d, .. } => push(d),
            ChernTarget::Product { factors } => factors.iter().for_each(|(_, d)| push(d)),
            ChernTarget::Table { .. } | ChernTarget::Generic { .. } => {}
        }
        out
    }

    /// Evaluates one weight-`m` monomial in `{c1, x1..xm}` to a parameter
    /// polynomial in `ctx` (which must contain the target's parameters, and
    /// `c1, x_i` for the generic kind).
    pub fn eval_monomial(
        &self,
        ctx: &Arc<Context>,
        mono: &Monomial,
    ) -> Result<PolyOf<C>, TargetError> {
        let m = self.dimension();
        match self {
            ChernTarget::Generic { .. } => {
                check_class_monomial(ctx, mono, m)?;
                Ok(PolyOf::term(ctx, C::one(), mono.clone()))
            }
            ChernTarget::Table { entries, .. } => {
                let probe = Context::for_classes(m, &[]);
                check_class_monomial(&probe, mono, m)?;
                let v = entries
                    .get(mono)
                    .ok_or_else(|| TargetError::MissingEntry(mono.to_string()))?;
                Ok(PolyOf::constant(ctx, v.clone()))
            }
            ChernTarget::ProjectiveSpace { m, d } => {
                // c1 -> d*h, x_i -> (-1)^i C(m+1, i) h^i; the h-exponent of
                // a weight-m monomial is exactly m, so the h^m coefficient
                // is a plain product.
                let mut h_exp = 0u32;
                let mut scalar = C::one();
                let mut d_exp = 0u32;
                for (name, &e) in mono.iter() {
                    if name == C1 {
                        d_exp = e;
                        h_exp += e;
                    } else if let Some(i) = parse_x(name) {
                        if i > *m {
                            return Err(TargetError::ForeignGenerator(mono.to_string()));
                        }
                        let mut base: C = binomial(i64::from(*m) + 1, i64::from(i));
                        if i % 2 == 1 {
                            base = -base;
                        }
                        for _ in 0..e {
                            scalar = scalar * base.clone();
                        }
                        h_exp += i * e;
                    } else {
                        return Err(TargetError::ForeignGenerator(mono.to_string()));
                    }
                }
                if h_exp != *m {
                    return Err(TargetError::WeightMismatch {
                        mono: mono.to_string(),
                        got: h_exp,
                        want: *m,
                    });
                }
                let dp = d.to_poly(ctx)?;
                Ok(dp.pow(d_exp).scale(&scalar))
            }
            ChernTarget::Product { factors } => {
                let probe = Context::for_classes(m, &[]);
                check_class_monomial(&probe, mono, m)?;
                self.eval_product(ctx, mono, factors)
            }
        }
    }

    // Expands c1 and the x_i in an auxiliary ring with one hyperplane class
    // per factor, then reads off the coefficient of h_1^{m_1}...h_r^{m_r}.
    fn eval_product(
        &self,
        ctx: &Arc<Context>,
        mono: &Monomial,
        factors: &[(u32, Degree<C>)],
    ) -> Result<PolyOf<C>, TargetError> {
        let m = self.dimension();
        let h_names: Vec<String> = (1..=factors.len()).map(|j| format!("h{j}")).collect();
        let mut gens: Vec<Generator> = h_names
            .iter()
            .map(|n| Generator::cohomology(n.clone(), 1))
            .collect();
        for p in self.param_names() {
            gens.push(Generator::parameter(p));
        }
        let scratch = Context::new(gens)?;

        // drop any h_j power beyond the factor dimension
        let keep = |mo: &Monomial| {
            h_names
                .iter()
                .zip(factors)
                .all(|(h, (mj, _))| mo.exp(h) <= *mj)
        };

        // c1(L) = sum_j d_j h_j
        let mut c1_sub = PolyOf::zero(&scratch);
        for (j, (_, d)) in factors.iter().enumerate() {
            let h = PolyOf::generator(&scratch, &h_names[j])?;
            c1_sub = c1_sub.try_add(&h.try_mul(&d.to_poly(&scratch)?)?)?;
        }

        // total Chern class of T*X: prod_j (1 - h_j)^{m_j + 1}
        let mut total: PolyOf<C> = PolyOf::one(&scratch);
        for (j, (mj, _)) in factors.iter().enumerate() {
            let h = PolyOf::generator(&scratch, &h_names[j])?;
            let factor = PolyOf::one(&scratch).try_sub(&h)?;
            for _ in 0..(mj + 1) {
                total = total.mul_filtered(&factor, keep)?;
            }
        }
        let x_sub = |i: u32| -> Result<PolyOf<C>, RingError> {
            let mut part = PolyOf::zero(&scratch);
            for (mo, c) in total.terms() {
                if scratch.mono_weight(mo)? == i {
                    part = part.try_add(&PolyOf::term(&scratch, c.clone(), mo.clone()))?;
                }
            }
            Ok(part)
        };

        let mut value = PolyOf::one(&scratch);
        for (name, &e) in mono.iter() {
            let sub = if name == C1 {
                c1_sub.clone()
            } else {
                x_sub(parse_x(name).expect("checked above"))?
            };
            for _ in 0..e {
                value = value.mul_filtered(&sub, keep)?;
            }
        }
        for (j, (mj, _)) in factors.iter().enumerate() {
            value = value.coefficient_of(&h_names[j], *mj)?;
        }
        debug_assert!(m == self.dimension());
        Ok(value.into_context(ctx)?)
    }
}

fn parse_x(name: &str) -> Option<u32> {
    name.strip_prefix('x').and_then(|s| s.parse().ok())
}
