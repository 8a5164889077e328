//! The counting pipelines: nodes by the direct route, cusps by both the
//! determinant and the projectivized route, tacnodes on the projectivized
//! ambient space, and the generic-formula extractor.

use std::sync::Arc;

use thiserror::Error;

use crate::bundles::{euler_la0, euler_la2, euler_lpa3, euler_va1, euler_vpa2};
use crate::cohomology::{Ambient, CohomologyError};
use crate::polyring::{Coeff, Context, PolyOf, RingError};
use crate::targets::{make_generic, ChernTarget, TargetError};

#[derive(Debug, Error)]
pub enum CountError {
    #[error("target dimension must be at least 1")]
    DimensionTooSmall,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Target(#[from] TargetError),
}

/// Singularity type; the codimension equals the index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingClass {
    A1,
    A2,
    A3,
}

impl SingClass {
    pub fn codim(self) -> u32 {
        match self {
            SingClass::A1 => 1,
            SingClass::A2 => 2,
            SingClass::A3 => 3,
        }
    }
}

impl std::str::FromStr for SingClass {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A1" | "a1" => Ok(SingClass::A1),
            "A2" | "a2" => Ok(SingClass::A2),
            "A3" | "a3" => Ok(SingClass::A3),
            other => Err(format!("unknown singularity `{other}` (expected A1, A2 or A3)")),
        }
    }
}

impl std::fmt::Display for SingClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingClass::A1 => write!(f, "A1"),
            SingClass::A2 => write!(f, "A2"),
            SingClass::A3 => write!(f, "A3"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    A1,
    A2Det,
    A2Proj,
    A3,
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::A1 => write!(f, "A1"),
            Route::A2Det => write!(f, "A2_det"),
            Route::A2Proj => write!(f, "A2_proj"),
            Route::A3 => write!(f, "A3"),
        }
    }
}

/// A computed count with its provenance.
#[derive(Debug, Clone)]
pub struct CountResult<C: Coeff> {
    /// The count, as a polynomial in the target's parameters (a constant
    /// when every degree is numeric). Lives in the class/parameter context.
    pub value: PolyOf<C>,
    pub route: Route,
    pub checks: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

fn run_route<C: Coeff>(
    target: &ChernTarget<C>,
    route: Route,
) -> Result<CountResult<C>, CountError> {
    let m = target.dimension();
    if m < 1 {
        return Err(CountError::DimensionTooSmall);
    }
    let params = target.param_names();
    let (k, projectivized) = match route {
        Route::A1 => (1, false),
        Route::A2Det => (2, false),
        Route::A2Proj => (2, true),
        Route::A3 => (3, true),
    };
    let amb = Ambient::new(m, k, projectivized);
    let ctx = Context::standard(m, projectivized, &params);

    let factors: Vec<PolyOf<C>> = match route {
        Route::A1 => vec![euler_la0(&ctx), euler_va1(&ctx, m)],
        Route::A2Det => vec![euler_la0(&ctx), euler_va1(&ctx, m), euler_la2(&ctx, m)],
        Route::A2Proj => vec![euler_la0(&ctx), euler_va1(&ctx, m), euler_vpa2(&ctx, m)],
        Route::A3 => vec![
            euler_la0(&ctx),
            euler_va1(&ctx, m),
            euler_vpa2(&ctx, m),
            euler_lpa3(&ctx),
        ],
    };

    // multiply with eager truncation against the ambient's reduction rules
    let mut integrand = PolyOf::one(&ctx);
    for f in &factors {
        integrand = integrand.mul_filtered(f, |mono| amb.keeps(&ctx, mono))?;
    }

    // the integrand must be homogeneous of the ambient dimension
    let want = amb.dimension();
    let homogeneous = integrand.is_zero()
        || integrand.homogeneous_weight()? == Some(want);
    if !homogeneous {
        return Err(CountError::Cohomology(
            CohomologyError::InhomogeneousIntegrand { want },
        ));
    }

    let value = amb.integrate(&integrand, target)?;
    let result_ctx = Context::for_classes(m, &params);
    Ok(CountResult {
        value: value.into_context(&result_ctx)?,
        route,
        checks: vec![("integrand_homogeneous".to_string(), true)],
        notes: Vec::new(),
    })
}

/// Number of members with a node, over `D_1 x X`.
pub fn count_a1<C: Coeff>(target: &ChernTarget<C>) -> Result<CountResult<C>, CountError> {
    run_route(target, Route::A1)
}

/// Number of members with a cusp, via the Hessian-determinant line bundle.
pub fn count_a2_det<C: Coeff>(target: &ChernTarget<C>) -> Result<CountResult<C>, CountError> {
    run_route(target, Route::A2Det)
}

/// Number of members with a cusp, via the projectivized tangent bundle.
pub fn count_a2_proj<C: Coeff>(target: &ChernTarget<C>) -> Result<CountResult<C>, CountError> {
    run_route(target, Route::A2Proj)
}

/// Cusp count on the default (determinant) route; with `verify` set the
/// projectivized route is run as well and agreement is recorded.
pub fn count_a2<C: Coeff>(
    target: &ChernTarget<C>,
    verify: bool,
) -> Result<CountResult<C>, CountError> {
    let mut result = count_a2_det(target)?;
    if verify {
        let proj = count_a2_proj(target)?;
        let agree = result.value == proj.value;
        result.checks.push(("route_agreement".to_string(), agree));
        if !agree {
            result.notes.push(format!(
                "determinant route {} != projectivized route {}",
                result.value, proj.value
            ));
        }
    }
    Ok(result)
}

/// Number of members with a tacnode, over `D_3 x P(TX)`.
pub fn count_a3<C: Coeff>(target: &ChernTarget<C>) -> Result<CountResult<C>, CountError> {
    run_route(target, Route::A3)
}

pub fn count<C: Coeff>(
    sing: SingClass,
    target: &ChernTarget<C>,
    route: Option<Route>,
) -> Result<CountResult<C>, CountError> {
    match (sing, route) {
        (SingClass::A1, _) => count_a1(target),
        (SingClass::A2, Some(Route::A2Proj)) => count_a2_proj(target),
        (SingClass::A2, _) => count_a2_det(target),
        (SingClass::A3, _) => count_a3(target),
    }
}

/// The generic-target count: the universal formula as a polynomial in
/// `{c1, x1..xm}`.
pub fn formula<C: Coeff>(sing: SingClass, m: u32) -> Result<PolyOf<C>, CountError> {
    let target = make_generic::<C>(m);
    Ok(count(sing, &target, None)?.value)
}

/// Context the formula and count values live in.
pub fn formula_context(m: u32, params: &[String]) -> Arc<Context> {
    Context::for_classes(m, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::targets::{make_pm, make_product, Degree};
    use num_bigint::BigInt;

    type T = ChernTarget<BigInt>;

    fn d() -> Degree<BigInt> {
        Degree::symbol("d")
    }

    #[test]
    fn a1_p2_quartic() {
        let t: T = make_pm(2, Degree::num(4));
        let r = count_a1(&t).unwrap();
        assert_eq!(r.value.as_constant(), Some(BigInt::from(27)));
        assert_eq!(r.route, Route::A1);
    }

    #[test]
    fn a1_p1xp1_bidegree_one() {
        let t: T = make_product(vec![(1, Degree::num(1)), (1, Degree::num(1))]);
        assert_eq!(
            count_a1(&t).unwrap().value.as_constant(),
            Some(BigInt::from(2))
        );
    }

    #[test]
    fn a1_generic_surface() {
        let f = formula::<BigInt>(SingClass::A1, 2).unwrap();
        let ctx = formula_context(2, &[]);
        assert_eq!(f, parse_poly(&ctx, "3*c1^2 + 2*c1*x1 + x2").unwrap());
    }

    #[test]
    fn a1_p1_is_discriminant_degree() {
        // oracle: the discriminant of binary degree-d forms has degree 2d-2
        let t: T = make_pm(1, d());
        let ctx = formula_context(1, &["d".to_string()]);
        assert_eq!(
            count_a1(&t).unwrap().value,
            parse_poly(&ctx, "2*d - 2").unwrap()
        );
    }

    #[test]
    fn a2_p2_symbolic() {
        let t: T = make_pm(2, d());
        let ctx = formula_context(2, &["d".to_string()]);
        let want = parse_poly::<BigInt>(&ctx, "12*d^2 - 36*d + 24").unwrap();
        assert_eq!(count_a2_det(&t).unwrap().value, want);
        assert_eq!(count_a2_proj(&t).unwrap().value, want);
    }

    #[test]
    fn a2_p1xp1_symbolic() {
        let t: T = make_product(vec![(1, Degree::symbol("d1")), (1, Degree::symbol("d2"))]);
        let ctx = formula_context(2, &t.param_names());
        assert_eq!(
            count_a2_det(&t).unwrap().value,
            parse_poly(&ctx, "24*d1*d2 - 24*d1 - 24*d2 + 24").unwrap()
        );
    }

    #[test]
    fn a2_p3_quadric_vanishes() {
        let t: T = make_pm(3, Degree::num(2));
        assert_eq!(
            count_a2_det(&t).unwrap().value.as_constant(),
            Some(BigInt::from(0))
        );
    }

    #[test]
    fn a2_verify_flag_records_agreement() {
        let t: T = make_pm(2, Degree::num(3));
        let r = count_a2(&t, true).unwrap();
        assert_eq!(r.value.as_constant(), Some(BigInt::from(24)));
        assert!(r
            .checks
            .iter()
            .any(|(name, ok)| name == "route_agreement" && *ok));
        assert!(r.notes.is_empty());
    }

    #[test]
    fn a2_proj_p2_cubic() {
        let t: T = make_pm(2, Degree::num(3));
        assert_eq!(
            count_a2_proj(&t).unwrap().value.as_constant(),
            Some(BigInt::from(24))
        );
    }

    #[test]
    fn a2_proj_p1xp1_bidegree_one_vanishes() {
        let t: T = make_product(vec![(1, Degree::num(1)), (1, Degree::num(1))]);
        assert_eq!(
            count_a2_proj(&t).unwrap().value.as_constant(),
            Some(BigInt::from(0))
        );
    }

    #[test]
    fn a3_p2_symbolic() {
        let t: T = make_pm(2, d());
        let ctx = formula_context(2, &["d".to_string()]);
        assert_eq!(
            count_a3(&t).unwrap().value,
            parse_poly(&ctx, "50*d^2 - 192*d + 168").unwrap()
        );
    }

    #[test]
    fn a3_p1xp1() {
        let one: T = make_product(vec![(1, Degree::num(1)), (1, Degree::num(1))]);
        assert_eq!(
            count_a3(&one).unwrap().value.as_constant(),
            Some(BigInt::from(0))
        );
        // symbolic: the constant term is forced to 156 by the vanishing at
        // (1, 1); cross-checked against the closed forms in closed_forms
        let t: T = make_product(vec![(1, Degree::symbol("d1")), (1, Degree::symbol("d2"))]);
        let ctx = formula_context(2, &t.param_names());
        assert_eq!(
            count_a3(&t).unwrap().value,
            parse_poly(&ctx, "100*d1*d2 - 128*d1 - 128*d2 + 156").unwrap()
        );
    }

    #[test]
    fn formula_small_dimensions() {
        let ctx1 = formula_context(1, &[]);
        assert_eq!(
            formula::<BigInt>(SingClass::A1, 1).unwrap(),
            parse_poly(&ctx1, "2*c1 + x1").unwrap()
        );
        let ctx2 = formula_context(2, &[]);
        assert_eq!(
            formula::<BigInt>(SingClass::A2, 2).unwrap(),
            parse_poly(&ctx2, "12*c1^2 + 12*c1*x1 + 2*x1^2 + 2*x2").unwrap()
        );
        // derived by independent expansion of the tacnode product
        assert_eq!(
            formula::<BigInt>(SingClass::A3, 2).unwrap(),
            parse_poly(&ctx2, "50*c1^2 + 64*c1*x1 + 17*x1^2 + 5*x2").unwrap()
        );
    }

    #[test]
    fn route_agreement_generic() {
        for m in 1..=5u32 {
            let t: T = make_generic(m);
            assert_eq!(
                count_a2_det(&t).unwrap().value,
                count_a2_proj(&t).unwrap().value,
                "m = {m}"
            );
        }
    }

    #[test]
    fn pm_nodal_closed_form_shape() {
        // (m+1)(d-1)^m expanded
        for m in 1..=6u32 {
            let t: T = make_pm(m, d());
            let ctx = formula_context(m, &["d".to_string()]);
            let dm1 = &parse_poly::<BigInt>(&ctx, "d").unwrap() - &PolyOf::one(&ctx);
            let want = dm1.pow(m).scale(&BigInt::from(m + 1));
            assert_eq!(count_a1(&t).unwrap().value, want, "m = {m}");
        }
    }
}
