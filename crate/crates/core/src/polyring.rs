//! Exact arithmetic in a commutative polynomial ring whose generators are
//! split into graded cohomology generators and weight-0 parameters.
//!
//! A [`Context`] fixes the generator set; every [`PolyOf`] value carries a
//! shared handle to its context and two polynomials only interoperate when
//! their contexts agree. Coefficients are any signed integer type satisfying
//! [`Coeff`]; the crate-root alias uses `BigInt`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use thiserror::Error;

/// Hyperplane class of the point-condition slice `D_k`.
pub const H: &str = "H";
/// First Chern class of the dual tautological bundle on the projectivized
/// tangent bundle.
pub const LAMBDA: &str = "lam";
/// First Chern class of the line bundle cutting out the linear system.
pub const C1: &str = "c1";

/// Name of the i-th Chern class of the cotangent bundle.
pub fn x_name(i: u32) -> String {
    format!("x{i}")
}

/// Coefficient ring: exact signed integers.
pub trait Coeff:
    num_integer::Integer
    + Signed
    + Clone
    + fmt::Debug
    + fmt::Display
    + std::str::FromStr
    + From<i32>
    + 'static
{
}

impl<T> Coeff for T where
    T: num_integer::Integer
        + Signed
        + Clone
        + fmt::Debug
        + fmt::Display
        + std::str::FromStr
        + From<i32>
        + 'static
{
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("polynomials belong to different generator contexts")]
    ContextMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has invalid weight {weight} for its kind")]
    InvalidWeight { name: String, weight: u32 },
    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Cohomology,
    Parameter,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub kind: GenKind,
    pub weight: u32,
}

impl Generator {
    pub fn cohomology(name: impl Into<String>, weight: u32) -> Self {
        Generator {
            name: name.into(),
            kind: GenKind::Cohomology,
            weight,
        }
    }

    pub fn parameter(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            kind: GenKind::Parameter,
            weight: 0,
        }
    }
}

/// Immutable generator table shared by all polynomials of one ring.
#[derive(Debug, PartialEq, Eq)]
pub struct Context {
    gens: Vec<Generator>,
    by_name: BTreeMap<String, usize>,
}

impl Context {
    pub fn new(gens: Vec<Generator>) -> Result<Arc<Self>, RingError> {
        let mut by_name = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            match g.kind {
                GenKind::Cohomology if g.weight == 0 => {
                    return Err(RingError::InvalidWeight {
                        name: g.name.clone(),
                        weight: g.weight,
                    })
                }
                GenKind::Parameter if g.weight != 0 => {
                    return Err(RingError::InvalidWeight {
                        name: g.name.clone(),
                        weight: g.weight,
                    })
                }
                _ => {}
            }
            if by_name.insert(g.name.clone(), i).is_some() {
                return Err(RingError::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Arc::new(Context { gens, by_name }))
    }

    /// Full computation context for an `m`-fold: the slice class `H`, the
    /// fiber class `lam` when projectivized, `c1`, `x1..xm`, and the given
    /// weight-0 parameters.
    pub fn standard(m: u32, projectivized: bool, params: &[String]) -> Arc<Self> {
        let mut gens = vec![Generator::cohomology(H, 1)];
        if projectivized {
            gens.push(Generator::cohomology(LAMBDA, 1));
        }
        gens.push(Generator::cohomology(C1, 1));
        for i in 1..=m {
            gens.push(Generator::cohomology(x_name(i), i));
        }
        for p in params {
            gens.push(Generator::parameter(p.clone()));
        }
        Context::new(gens).expect("standard context is well formed")
    }

    /// Result context: `c1`, `x1..xm` and parameters, without the ambient
    /// classes `H` and `lam`. Counts and closed forms live here.
    pub fn for_classes(m: u32, params: &[String]) -> Arc<Self> {
        let mut gens = vec![Generator::cohomology(C1, 1)];
        for i in 1..=m {
            gens.push(Generator::cohomology(x_name(i), i));
        }
        for p in params {
            gens.push(Generator::parameter(p.clone()));
        }
        Context::new(gens).expect("class context is well formed")
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.by_name.get(name).map(|&i| &self.gens[i])
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn has(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    /// Total cohomology weight of a monomial.
    pub fn mono_weight(&self, mono: &Monomial) -> Result<u32, RingError> {
        self.mono_weight_excluding(mono, &[])
    }

    /// Cohomology weight ignoring the named generators (used for the
    /// `{c1, x_i}`-weight with `H` and `lam` excluded).
    pub fn mono_weight_excluding(
        &self,
        mono: &Monomial,
        excluded: &[&str],
    ) -> Result<u32, RingError> {
        let mut w = 0;
        for (name, &e) in mono.iter() {
            if excluded.contains(&name.as_str()) {
                continue;
            }
            let g = self
                .generator(name)
                .ok_or_else(|| RingError::UnknownGenerator(name.clone()))?;
            if g.kind == GenKind::Cohomology {
                w += g.weight * e;
            }
        }
        Ok(w)
    }
}

/// Exponent map with no zero entries; the empty map is the unit monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn generator(name: &str) -> Self {
        Monomial::from_pairs([(name.to_string(), 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (String, u32)>) -> Self {
        let mut exps = BTreeMap::new();
        for (name, e) in pairs {
            if e > 0 {
                *exps.entry(name).or_insert(0) += e;
            }
        }
        Monomial { exps }
    }

    pub fn is_unit(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exp(&self, name: &str) -> u32 {
        self.exps.get(name).copied().unwrap_or(0)
    }

    /// Sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &u32)> {
        self.exps.iter()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (name, &e) in other.iter() {
            *exps.entry(name.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    /// Copy with the exponent of `name` set to `e` (removed when 0).
    pub fn with_exp(&self, name: &str, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        if e == 0 {
            exps.remove(name);
        } else {
            exps.insert(name.to_string(), e);
        }
        Monomial { exps }
    }

    pub fn without(&self, name: &str) -> Monomial {
        self.with_exp(name, 0)
    }

    /// Parses the canonical monomial grammar `c1^2*x1` (`^1` optional,
    /// `1` for the unit monomial).
    pub fn parse(input: &str) -> Result<Self, RingError> {
        let s = input.trim();
        let err = |message: &str| RingError::Parse {
            input: input.to_string(),
            message: message.to_string(),
        };
        if s == "1" {
            return Ok(Monomial::unit());
        }
        let mut pairs = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let exp: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| err("exponent is not a positive integer"))?;
                    (n.trim(), exp)
                }
                None => (factor, 1),
            };
            if name.is_empty()
                || !name.chars().next().unwrap().is_ascii_alphabetic()
                || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(err("malformed generator name"));
            }
            if exp == 0 {
                return Err(err("zero exponent"));
            }
            pairs.push((name.to_string(), exp));
        }
        if pairs.is_empty() {
            return Err(err("empty monomial"));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial in canonical form: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyOf<C: Coeff> {
    ctx: Arc<Context>,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Coeff> PolyOf<C> {
    pub fn zero(ctx: &Arc<Context>) -> Self {
        PolyOf {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &Arc<Context>) -> Self {
        Self::constant(ctx, C::one())
    }

    pub fn constant(ctx: &Arc<Context>, c: C) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term_in_place(Monomial::unit(), c);
        p
    }

    pub fn from_int(ctx: &Arc<Context>, n: i32) -> Self {
        Self::constant(ctx, C::from(n))
    }

    pub fn generator(ctx: &Arc<Context>, name: &str) -> Result<Self, RingError> {
        if !ctx.has(name) {
            return Err(RingError::UnknownGenerator(name.to_string()));
        }
        Ok(Self::term(ctx, C::one(), Monomial::generator(name)))
    }

    pub fn term(ctx: &Arc<Context>, c: C, mono: Monomial) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term_in_place(mono, c);
        p
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> C {
        self.terms.get(mono).cloned().unwrap_or_else(C::zero)
    }

    /// Constant value when the polynomial has no generators; `None` otherwise.
    pub fn as_constant(&self) -> Option<C> {
        if self.is_zero() {
            return Some(C::zero());
        }
        if self.terms.len() == 1 {
            if let Some(c) = self.terms.get(&Monomial::unit()) {
                return Some(c.clone());
            }
        }
        None
    }

    fn add_term_in_place(&mut self, mono: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<(), RingError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(RingError::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (mono, c) in other.terms() {
            out.add_term_in_place(mono.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (mono, c) in self.terms() {
            out.terms.insert(mono.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (mono, a) in self.terms() {
            out.add_term_in_place(mono.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.mul_filtered(other, |_| true)
    }

    /// Term-convolution product keeping only monomials accepted by `keep`.
    /// Used for eager truncation against ambient reduction rules.
    pub fn mul_filtered(
        &self,
        other: &Self,
        keep: impl Fn(&Monomial) -> bool,
    ) -> Result<Self, RingError> {
        self.check_ctx(other)?;
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let mono = ma.mul(mb);
                if keep(&mono) {
                    out.add_term_in_place(mono, ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(&self.ctx);
        for _ in 0..n {
            out = out.try_mul(self).expect("same context");
        }
        out
    }

    /// The polynomial `q` with `p = q*g^e + (terms of other g-exponent)`;
    /// `q` is free of `g`. Returns 0 when no term matches.
    pub fn coefficient_of(&self, name: &str, e: u32) -> Result<Self, RingError> {
        if !self.ctx.has(name) {
            return Err(RingError::UnknownGenerator(name.to_string()));
        }
        let mut out = Self::zero(&self.ctx);
        for (mono, c) in self.terms() {
            if mono.exp(name) == e {
                out.add_term_in_place(mono.without(name), c.clone());
            }
        }
        Ok(out)
    }

    pub fn uses_generator(&self, name: &str) -> bool {
        self.terms.keys().any(|m| m.exp(name) > 0)
    }

    /// Substitutes a polynomial for a generator.
    pub fn substitute(&self, name: &str, value: &Self) -> Result<Self, RingError> {
        self.check_ctx(value)?;
        let mut out = Self::zero(&self.ctx);
        for (mono, c) in self.terms() {
            let e = mono.exp(name);
            let rest = Self::term(&self.ctx, c.clone(), mono.without(name));
            let replaced = rest.try_mul(&value.pow(e))?;
            out = out.try_add(&replaced)?;
        }
        Ok(out)
    }

    /// `Some(w)` when every term has cohomology weight `w`; `None` when
    /// mixed. The zero polynomial reports `Some(0)`.
    pub fn homogeneous_weight(&self) -> Result<Option<u32>, RingError> {
        let mut seen: Option<u32> = None;
        for (mono, _) in self.terms() {
            let w = self.ctx.mono_weight(mono)?;
            match seen {
                None => seen = Some(w),
                Some(prev) if prev != w => return Ok(None),
                _ => {}
            }
        }
        Ok(Some(seen.unwrap_or(0)))
    }

    /// Re-homes the polynomial into `new_ctx`; every generator it uses must
    /// exist there with the same kind and weight.
    pub fn into_context(&self, new_ctx: &Arc<Context>) -> Result<Self, RingError> {
        let mut out = Self::zero(new_ctx);
        for (mono, c) in self.terms() {
            for (name, _) in mono.iter() {
                let old = self.ctx.generator(name).expect("own generator");
                match new_ctx.generator(name) {
                    Some(g) if g == old => {}
                    _ => return Err(RingError::UnknownGenerator(name.clone())),
                }
            }
            out.add_term_in_place(mono.clone(), c.clone());
        }
        Ok(out)
    }

    /// Terms in printing order: total weight descending, then total degree
    /// descending, then exponent-lexicographic.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &C)> {
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| display_order(&self.ctx, a, b));
        terms
    }
}

fn display_order(ctx: &Context, a: &Monomial, b: &Monomial) -> Ordering {
    let wa = ctx.mono_weight(a).unwrap_or(0);
    let wb = ctx.mono_weight(b).unwrap_or(0);
    wb.cmp(&wa)
        .then(b.degree().cmp(&a.degree()))
        .then_with(|| cmp_exps_desc(a, b))
}

// Earlier generator with the higher exponent wins.
fn cmp_exps_desc(a: &Monomial, b: &Monomial) -> Ordering {
    let names: BTreeMap<&String, ()> = a.iter().chain(b.iter()).map(|(n, _)| (n, ())).collect();
    for (name, _) in names {
        let o = b.exp(name).cmp(&a.exp(name));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

impl<C: Coeff> fmt::Display for PolyOf<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_unit() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coeff> std::ops::Add for &PolyOf<C> {
    type Output = PolyOf<C>;
    fn add(self, rhs: Self) -> PolyOf<C> {
        self.try_add(rhs).expect("context mismatch in +")
    }
}

impl<C: Coeff> std::ops::Sub for &PolyOf<C> {
    type Output = PolyOf<C>;
    fn sub(self, rhs: Self) -> PolyOf<C> {
        self.try_sub(rhs).expect("context mismatch in -")
    }
}

impl<C: Coeff> std::ops::Mul for &PolyOf<C> {
    type Output = PolyOf<C>;
    fn mul(self, rhs: Self) -> PolyOf<C> {
        self.try_mul(rhs).expect("context mismatch in *")
    }
}

/// Parses the canonical text form produced by `Display`.
pub fn parse_poly<C: Coeff>(ctx: &Arc<Context>, input: &str) -> Result<PolyOf<C>, RingError> {
    let err = |message: String| RingError::Parse {
        input: input.to_string(),
        message,
    };
    let mut out = PolyOf::zero(ctx);
    let mut rest = input.trim();
    if rest.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut sign_next = 1i32;
    let mut first = true;
    while !rest.is_empty() {
        // optional leading sign / separator
        if let Some(r) = rest.strip_prefix('+') {
            if first && sign_next == 1 {
                // a bare leading '+' is fine
            }
            rest = r.trim_start();
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign_next = -sign_next;
            rest = r.trim_start();
            continue;
        }
        // one term: factors joined by '*'
        let end = rest
            .find(['+', '-'])
            .unwrap_or(rest.len());
        let term_str = rest[..end].trim();
        rest = rest[end..].trim_start();
        if term_str.is_empty() {
            return Err(err("dangling sign".into()));
        }
        let mut coeff: Option<C> = None;
        let mut mono_pairs: Vec<(String, u32)> = Vec::new();
        for factor in term_str.split('*') {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(err("empty factor".into()));
            }
            if factor.chars().next().unwrap().is_ascii_digit() {
                if !mono_pairs.is_empty() || coeff.is_some() {
                    return Err(err(format!("unexpected numeric factor `{factor}`")));
                }
                let c: C = factor
                    .parse()
                    .map_err(|_| err(format!("bad coefficient `{factor}`")))?;
                coeff = Some(c);
            } else {
                let m = Monomial::parse(factor)?;
                for (name, &e) in m.iter() {
                    if !ctx.has(name) {
                        return Err(RingError::UnknownGenerator(name.clone()));
                    }
                    mono_pairs.push((name.clone(), e));
                }
            }
        }
        let mut c = coeff.unwrap_or_else(C::one);
        if sign_next < 0 {
            c = -c;
        }
        out = out.try_add(&PolyOf::term(ctx, c, Monomial::from_pairs(mono_pairs)))?;
        sign_next = 1;
        first = false;
    }
    let _ = first;
    Ok(out)
}

/// `C(n, k)` with `C(n, k) = 0` for `k < 0`, `n < 0` or `k > n`.
pub fn binomial<C: Coeff>(n: i64, k: i64) -> C {
    if k < 0 || n < 0 || k > n {
        return C::zero();
    }
    let k = k.min(n - k);
    let mut r = C::one();
    for i in 0..k {
        // exact at every step: the running value is C(n, i+1)
        let num = C::from(i32::try_from(n - i).expect("binomial argument fits i32"));
        let den = C::from(i32::try_from(i + 1).expect("binomial argument fits i32"));
        r = (r * num).div_floor(&den);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P = PolyOf<BigInt>;

    fn ctx2() -> Arc<Context> {
        Context::standard(2, true, &["d".to_string()])
    }

    fn gen(ctx: &Arc<Context>, name: &str) -> P {
        P::generator(ctx, name).unwrap()
    }

    #[test]
    fn add_cancels() {
        let ctx = ctx2();
        let h = gen(&ctx, H);
        let c1 = gen(&ctx, C1);
        let sum = &(&h + &c1) + &(&h - &c1);
        assert_eq!(sum, h.scale(&BigInt::from(2)));
    }

    #[test]
    fn add_identity_and_doubling() {
        let ctx = ctx2();
        let x1 = gen(&ctx, "x1");
        let p = &gen(&ctx, C1) + &x1;
        assert_eq!(p.try_add(&P::zero(&ctx)).unwrap(), p);
        assert_eq!(&x1 + &x1, x1.scale(&BigInt::from(2)));
    }

    #[test]
    fn mul_binomial_square() {
        let ctx = ctx2();
        let s = &gen(&ctx, H) + &gen(&ctx, C1);
        let sq = &s * &s;
        assert_eq!(sq, parse_poly(&ctx, "H^2 + 2*H*c1 + c1^2").unwrap());
        assert_eq!(s.try_mul(&P::one(&ctx)).unwrap(), s);
    }

    #[test]
    fn mul_derived_example() {
        // oracle: brute-force term convolution done by hand
        let ctx = ctx2();
        let l = gen(&ctx, LAMBDA);
        let h = gen(&ctx, H);
        let c1 = gen(&ctx, C1);
        let a = &(&l + &h) + &c1;
        let b = &(&l.scale(&BigInt::from(3)) + &h) + &c1;
        let expect = parse_poly(
            &ctx,
            "3*lam^2 + 4*lam*H + 4*lam*c1 + H^2 + 2*H*c1 + c1^2",
        )
        .unwrap();
        assert_eq!(a.try_mul(&b).unwrap(), expect);
    }

    #[test]
    fn pow_examples() {
        let ctx = ctx2();
        let s = &gen(&ctx, H) + &gen(&ctx, C1);
        assert_eq!(s.pow(0), P::one(&ctx));
        assert_eq!(s.pow(2), &s * &s);
        let one_minus_h = &P::one(&ctx) - &gen(&ctx, H);
        assert_eq!(
            one_minus_h.pow(3),
            parse_poly(&ctx, "1 - 3*H + 3*H^2 - H^3").unwrap()
        );
    }

    #[test]
    fn coefficient_extraction() {
        let ctx = ctx2();
        let s = &gen(&ctx, H) + &gen(&ctx, C1);
        let sq = s.pow(2);
        assert_eq!(
            sq.coefficient_of(H, 1).unwrap(),
            gen(&ctx, C1).scale(&BigInt::from(2))
        );
        assert_eq!(
            sq.coefficient_of(LAMBDA, 2).unwrap(),
            P::zero(&ctx)
        );
        let p = parse_poly::<BigInt>(&ctx, "3*lam^2 + 4*lam*H").unwrap();
        assert_eq!(p.coefficient_of(LAMBDA, 2).unwrap(), P::from_int(&ctx, 3));
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Context::standard(2, false, &[]);
        let b = Context::standard(3, false, &[]);
        let pa = P::generator(&a, C1).unwrap();
        let pb = P::generator(&b, C1).unwrap();
        assert_eq!(pa.try_add(&pb), Err(RingError::ContextMismatch));
        assert_eq!(pa.try_mul(&pb), Err(RingError::ContextMismatch));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial::<BigInt>(4, 2), BigInt::from(6));
        assert_eq!(binomial::<BigInt>(3, 5), BigInt::from(0));
        assert_eq!(binomial::<BigInt>(-1, 0), BigInt::from(0));
        assert_eq!(binomial::<BigInt>(0, -2), BigInt::from(0));
        // Eq-13-style coefficient at m = 2, i = 2
        assert_eq!(binomial::<BigInt>(3, 2), BigInt::from(3));
    }

    #[test]
    fn binomial_pascal() {
        for n in 0..=30i64 {
            for k in 0..=n {
                let lhs: BigInt = binomial(n, k);
                let rhs: BigInt = binomial::<BigInt>(n - 1, k - 1) + binomial::<BigInt>(n - 1, k);
                if n > 0 {
                    assert_eq!(lhs, rhs, "Pascal fails at C({n},{k})");
                }
            }
        }
    }

    #[test]
    fn display_ordering() {
        let ctx = Context::for_classes(2, &["d".to_string()]);
        let p = parse_poly::<BigInt>(&ctx, "x2 + 2*c1*x1 + 3*c1^2").unwrap();
        assert_eq!(p.to_string(), "3*c1^2 + 2*c1*x1 + x2");
        let q = parse_poly::<BigInt>(&ctx, "24 + 12*d^2 - 36*d").unwrap();
        assert_eq!(q.to_string(), "12*d^2 - 36*d + 24");
    }

    #[test]
    fn homogeneity() {
        let ctx = ctx2();
        let p = parse_poly::<BigInt>(&ctx, "c1^2 + x1").unwrap();
        assert_eq!(p.homogeneous_weight().unwrap(), None);
        let q = parse_poly::<BigInt>(&ctx, "c1^2 + 2*x2 + c1*x1").unwrap();
        assert_eq!(q.homogeneous_weight().unwrap(), Some(2));
    }

    // random small polynomials over a 3-generator ring
    fn arb_poly() -> impl Strategy<Value = P> {
        let ctx = Context::standard(3, false, &["d".to_string()]);
        let mono = proptest::collection::btree_map(
            prop_oneof![
                Just(C1.to_string()),
                Just("x1".to_string()),
                Just("x2".to_string()),
                Just("d".to_string())
            ],
            1u32..=3,
            0..=3usize,
        );
        proptest::collection::vec((mono, -9i32..=9), 0..=5).prop_map(move |terms| {
            let mut p = P::zero(&ctx);
            for (m, c) in terms {
                p = p
                    .try_add(&P::term(
                        &ctx,
                        BigInt::from(c),
                        Monomial::from_pairs(m),
                    ))
                    .unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in (arb_poly(), arb_poly(), arb_poly())) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn no_zero_coefficients_stored((a, b) in (arb_poly(), arb_poly())) {
            for p in [&a + &b, &a * &b, &a - &a] {
                for (_, c) in p.terms() {
                    prop_assert!(!c.is_zero());
                }
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb_poly()) {
            let printed = a.to_string();
            let reparsed = parse_poly::<BigInt>(a.context(), &printed).unwrap();
            prop_assert_eq!(reparsed, a);
        }
    }
}
