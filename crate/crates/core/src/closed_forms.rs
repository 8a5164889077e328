//! The printed closed forms for the three counts, implemented verbatim as
//! independent references, plus a comparator that produces discrepancy
//! reports. Two of the printed specializations are internally inconsistent
//! with the general formulas; they are reproduced as printed and the
//! disagreement is reported, never corrected silently.

use std::sync::Arc;

use thiserror::Error;

use crate::counts::SingClass;
use crate::polyring::{binomial, x_name, Coeff, Context, PolyOf, RingError, C1};
use crate::targets::Degree;

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("closed form for {sing} requires dimension at least {min}, got {m}")]
    DimensionTooSmall { sing: SingClass, min: u32, m: u32 },
    #[error("non-integral coefficient while expanding a printed formula")]
    NonIntegral,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Result of comparing an engine value against a printed reference.
#[derive(Debug, Clone)]
pub struct DiscrepancyReport<C: Coeff> {
    pub context: String,
    pub engine_value: PolyOf<C>,
    pub printed_value: PolyOf<C>,
    pub equal: bool,
}

pub fn compare<C: Coeff>(
    engine: &PolyOf<C>,
    reference: &PolyOf<C>,
    context: &str,
) -> DiscrepancyReport<C> {
    DiscrepancyReport {
        context: context.to_string(),
        engine_value: engine.clone(),
        printed_value: reference.clone(),
        equal: engine == reference,
    }
}

fn gen<C: Coeff>(ctx: &Arc<Context>, name: &str) -> PolyOf<C> {
    PolyOf::generator(ctx, name).expect("generator present")
}

fn x_or_one<C: Coeff>(ctx: &Arc<Context>, i: u32) -> PolyOf<C> {
    if i == 0 {
        PolyOf::one(ctx)
    } else {
        gen(ctx, &x_name(i))
    }
}

/// The general formulas in `{c1, x1..xm}`, summed exactly as printed.
/// Out-of-range summation indices contribute empty sums, so `m = 1` is
/// well defined for all three classes.
pub fn formula_closed<C: Coeff>(sing: SingClass, m: u32) -> PolyOf<C> {
    let ctx = Context::for_classes(m, &[]);
    let c1 = gen::<C>(&ctx, C1);
    let mi = i64::from(m);
    let mut sum = PolyOf::zero(&ctx);
    match sing {
        SingClass::A1 => {
            // sum_i (m+1-i) x_i c1^{m-i}
            for i in 0..=m {
                let coeff = C::from((m + 1 - i) as i32);
                sum = sum
                    .try_add(&x_or_one::<C>(&ctx, i).try_mul(&c1.pow(m - i)).unwrap().scale(&coeff))
                    .unwrap();
            }
        }
        SingClass::A2 => {
            // sum_i m C(m+2-i, 2) x_i c1^{m-i}
            //   + sum_{i<m} 2 C(m+1-i, 2) x1 x_i c1^{m-i-1}
            for i in 0..=m {
                let coeff = C::from(m as i32) * binomial::<C>(mi + 2 - i64::from(i), 2);
                sum = sum
                    .try_add(&x_or_one::<C>(&ctx, i).try_mul(&c1.pow(m - i)).unwrap().scale(&coeff))
                    .unwrap();
            }
            let x1 = gen::<C>(&ctx, "x1");
            for i in 0..m {
                let coeff = C::from(2) * binomial::<C>(mi + 1 - i64::from(i), 2);
                let term = x1
                    .try_mul(&x_or_one::<C>(&ctx, i))
                    .unwrap()
                    .try_mul(&c1.pow(m - i - 1))
                    .unwrap()
                    .scale(&coeff);
                sum = sum.try_add(&term).unwrap();
            }
        }
        SingClass::A3 => {
            // three sums with the printed t_2, t_1, t_0 blocks; the halved
            // coefficient (3m^2 - m)/2 is computed as m(3m - 1)/2, which is
            // integral for every m
            let x1 = gen::<C>(&ctx, "x1");
            let half_3m2_m = C::from((m * (3 * m - 1) / 2) as i32);
            let six_m_1 = C::from((6 * m - 1) as i32);
            let full_3m2_m = C::from((3 * m * m - m) as i32);
            for i in 0..(m.saturating_sub(1)) {
                let b3 = binomial::<C>(mi + 1 - i64::from(i), 3);
                let t2 = c1
                    .pow(2)
                    .scale(&half_3m2_m)
                    .try_add(&c1.try_mul(&x1).unwrap().scale(&six_m_1))
                    .unwrap()
                    .try_add(&x1.pow(2).scale(&C::from(6)))
                    .unwrap()
                    .scale(&b3);
                let term = t2
                    .try_mul(&c1.pow(m - i - 2))
                    .unwrap()
                    .try_mul(&x_or_one::<C>(&ctx, i))
                    .unwrap();
                sum = sum.try_add(&term).unwrap();
            }
            for i in 0..m {
                let b2 = binomial::<C>(mi + 1 - i64::from(i), 2);
                let t1 = c1
                    .scale(&full_3m2_m)
                    .try_add(&x1.scale(&six_m_1))
                    .unwrap()
                    .scale(&b2);
                let term = t1
                    .try_mul(&c1.pow(m - i - 1))
                    .unwrap()
                    .try_mul(&x_or_one::<C>(&ctx, i))
                    .unwrap();
                sum = sum.try_add(&term).unwrap();
            }
            for i in 0..=m {
                let t0 = binomial::<C>(mi + 1 - i64::from(i), 1) * half_3m2_m.clone();
                let term = c1
                    .pow(m - i)
                    .try_mul(&x_or_one::<C>(&ctx, i))
                    .unwrap()
                    .scale(&t0);
                sum = sum.try_add(&term).unwrap();
            }
        }
    }
    sum
}

fn degree_poly<C: Coeff>(ctx: &Arc<Context>, d: &Degree<C>) -> Result<PolyOf<C>, RingError> {
    match d {
        Degree::Num(n) => Ok(PolyOf::constant(ctx, n.clone())),
        Degree::Symbol(s) => PolyOf::generator(ctx, s),
    }
}

fn params_of<C: Coeff>(degrees: &[&Degree<C>]) -> Vec<String> {
    let mut out = Vec::new();
    for d in degrees {
        if let Degree::Symbol(s) = d {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
    }
    out
}

/// Exact division of every coefficient; errors when a coefficient is not
/// divisible.
fn divide_exact<C: Coeff>(p: &PolyOf<C>, by: i32) -> Result<PolyOf<C>, ClosedFormError> {
    let by = C::from(by);
    let mut out = PolyOf::zero(p.context());
    for (mono, c) in p.terms() {
        let (q, r) = c.div_rem(&by);
        if !r.is_zero() {
            return Err(ClosedFormError::NonIntegral);
        }
        out = out.try_add(&PolyOf::term(p.context(), q, mono.clone()))?;
    }
    Ok(out)
}

/// The printed specializations for `P^m` with a degree-`d` polarization,
/// expanded. The tacnode line reproduces the printed quadratic block
/// `m_2 d^2 + m_1 d + m_0` even though it disagrees with the general
/// formula; it needs `m >= 2`.
pub fn pm_closed<C: Coeff>(
    sing: SingClass,
    m: u32,
    d: &Degree<C>,
) -> Result<PolyOf<C>, ClosedFormError> {
    let ctx = Context::for_classes(m, &params_of(&[d]));
    let dp = degree_poly(&ctx, d)?;
    let one = PolyOf::one(&ctx);
    let d_minus_1 = dp.try_sub(&one)?;
    let mi = m as i32;
    match sing {
        // (m+1)(d-1)^m
        SingClass::A1 => Ok(d_minus_1.pow(m).scale(&C::from(mi + 1))),
        // m(m+1)(m+2)/2 (d-1)^{m-1}(d-2)
        SingClass::A2 => {
            let d_minus_2 = dp.try_sub(&PolyOf::from_int(&ctx, 2))?;
            let lead = C::from(mi * (mi + 1) * (mi + 2) / 2);
            Ok(d_minus_1.pow(m - 1).try_mul(&d_minus_2)?.scale(&lead))
        }
        // m(m+1)(m+2)/12 (d-1)^{m-2}(m_2 d^2 + m_1 d + m_0) as printed
        SingClass::A3 => {
            if m < 2 {
                return Err(ClosedFormError::DimensionTooSmall {
                    sing,
                    min: 2,
                    m,
                });
            }
            let m2 = mi * mi + 2 * mi - 1;
            let m1 = -12 * mi * mi - 28 * mi + 8;
            let m0 = 3 * mi * mi + 8 * mi - 3;
            let quad = dp
                .pow(2)
                .scale(&C::from(m2))
                .try_add(&dp.scale(&C::from(m1)))?
                .try_add(&PolyOf::from_int(&ctx, m0))?;
            let lead = C::from(mi * (mi + 1) * (mi + 2));
            let product = d_minus_1.pow(m - 2).try_mul(&quad)?.scale(&lead);
            divide_exact(&product, 12)
        }
    }
}

/// The printed formulas for `P^1 x P^1` with a bidegree-`(d1, d2)`
/// polarization, expanded. The tacnode constant is the printed 136.
pub fn p1p1_closed<C: Coeff>(
    sing: SingClass,
    d1: &Degree<C>,
    d2: &Degree<C>,
) -> Result<PolyOf<C>, ClosedFormError> {
    let ctx = Context::for_classes(2, &params_of(&[d1, d2]));
    let p1 = degree_poly(&ctx, d1)?;
    let p2 = degree_poly(&ctx, d2)?;
    let one = PolyOf::one(&ctx);
    match sing {
        // 6 d1 d2 - 4 (d1 + d2) + 4
        SingClass::A1 => Ok(p1
            .try_mul(&p2)?
            .scale(&C::from(6))
            .try_sub(&p1.try_add(&p2)?.scale(&C::from(4)))?
            .try_add(&PolyOf::from_int(&ctx, 4))?),
        // 24 (d1 - 1)(d2 - 1)
        SingClass::A2 => Ok(p1
            .try_sub(&one)?
            .try_mul(&p2.try_sub(&one)?)?
            .scale(&C::from(24))),
        // 100 d1 d2 - 128 (d1 + d2) + 136
        SingClass::A3 => Ok(p1
            .try_mul(&p2)?
            .scale(&C::from(100))
            .try_sub(&p1.try_add(&p2)?.scale(&C::from(128)))?
            .try_add(&PolyOf::from_int(&ctx, 136))?),
    }
}
