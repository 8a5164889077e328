//! Euler classes of the five bundles whose transverse sections cut out the
//! singular loci, built via the splitting principle as polynomials in
//! `{H, lam, c1, x1..xm}`.

use std::sync::Arc;

use thiserror::Error;

use crate::polyring::{x_name, Coeff, Context, PolyOf, RingError, C1, H, LAMBDA};

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("base_chern must have length rank+1 with leading entry 1")]
    BadChernSequence,
    #[error("base_chern[{0}] is not homogeneous of weight {0}")]
    InhomogeneousChern(usize),
    #[error("twist is not homogeneous of weight 1")]
    InhomogeneousTwist,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A vector bundle `E` twisted by a line bundle `M`, described by the Chern
/// classes of `E` and `c1(M)`.
#[derive(Debug, Clone)]
pub struct TwistedBundleSpec<C: Coeff> {
    pub rank: u32,
    /// `c_0 = 1, c_1, ..., c_rank` of the untwisted bundle.
    pub base_chern: Vec<PolyOf<C>>,
    /// First Chern class of the twisting line bundle.
    pub twist: PolyOf<C>,
}

/// `e(E (x) M) = sum_{i=0..r} c_i(E) c1(M)^{r-i}`, from splitting `E` into
/// formal line-bundle roots.
pub fn euler_twisted<C: Coeff>(spec: &TwistedBundleSpec<C>) -> Result<PolyOf<C>, BundleError> {
    let r = spec.rank as usize;
    if spec.base_chern.len() != r + 1 {
        return Err(BundleError::BadChernSequence);
    }
    let ctx = spec.twist.context();
    if spec.base_chern[0] != PolyOf::one(ctx) {
        return Err(BundleError::BadChernSequence);
    }
    for (i, ci) in spec.base_chern.iter().enumerate() {
        if !ci.is_zero() && ci.homogeneous_weight()? != Some(i as u32) {
            return Err(BundleError::InhomogeneousChern(i));
        }
    }
    if !spec.twist.is_zero() && spec.twist.homogeneous_weight()? != Some(1) {
        return Err(BundleError::InhomogeneousTwist);
    }
    let mut out = PolyOf::zero(ctx);
    for (i, ci) in spec.base_chern.iter().enumerate() {
        out = out.try_add(&ci.try_mul(&spec.twist.pow((r - i) as u32))?)?;
    }
    Ok(out)
}

fn gen<C: Coeff>(ctx: &Arc<Context>, name: &str) -> PolyOf<C> {
    PolyOf::generator(ctx, name).unwrap_or_else(|_| panic!("context is missing `{name}`"))
}

/// Chern sequence `1, x1, ..., xm` of the cotangent bundle.
fn cotangent_chern<C: Coeff>(ctx: &Arc<Context>, m: u32) -> Vec<PolyOf<C>> {
    std::iter::once(PolyOf::one(ctx))
        .chain((1..=m).map(|i| gen(ctx, &x_name(i))))
        .collect()
}

/// `e(L_A0)`: the line bundle whose section evaluates `f` at the point.
pub fn euler_la0<C: Coeff>(ctx: &Arc<Context>) -> PolyOf<C> {
    &gen(ctx, H) + &gen(ctx, C1)
}

/// `e(V_A1)`: the twisted cotangent bundle carrying the first derivative.
pub fn euler_va1<C: Coeff>(ctx: &Arc<Context>, m: u32) -> PolyOf<C> {
    let spec = TwistedBundleSpec {
        rank: m,
        base_chern: cotangent_chern(ctx, m),
        twist: euler_la0(ctx),
    };
    euler_twisted(&spec).expect("cotangent twist is well formed")
}

/// `e(L_A2)`: the determinant line bundle carrying `det` of the Hessian.
pub fn euler_la2<C: Coeff>(ctx: &Arc<Context>, m: u32) -> PolyOf<C> {
    let mi = i32::try_from(m).expect("dimension fits i32");
    let h = gen::<C>(ctx, H).scale(&C::from(mi));
    let x1 = gen::<C>(ctx, "x1").scale(&C::from(2));
    let c1 = gen::<C>(ctx, C1).scale(&C::from(mi));
    &(&h + &x1) + &c1
}

/// `e(V_PA2)`: the cotangent bundle twisted additionally by the fiber class,
/// carrying the Hessian contracted with the marked direction.
pub fn euler_vpa2<C: Coeff>(ctx: &Arc<Context>, m: u32) -> PolyOf<C> {
    let spec = TwistedBundleSpec {
        rank: m,
        base_chern: cotangent_chern(ctx, m),
        twist: &gen(ctx, LAMBDA) + &euler_la0(ctx),
    };
    euler_twisted(&spec).expect("cotangent twist is well formed")
}

/// `e(L_PA3)`: the line bundle carrying the third derivative along the
/// marked direction.
pub fn euler_lpa3<C: Coeff>(ctx: &Arc<Context>) -> PolyOf<C> {
    &(&gen::<C>(ctx, LAMBDA).scale(&C::from(3)) + &gen(ctx, H)) + &gen(ctx, C1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_poly, Generator};
    use num_bigint::BigInt;

    type P = PolyOf<BigInt>;

    fn ctx(m: u32) -> Arc<Context> {
        Context::standard(m, true, &[])
    }

    #[test]
    fn la0_is_h_plus_c1() {
        for m in [1, 2, 5] {
            let c = ctx(m);
            assert_eq!(euler_la0::<BigInt>(&c), parse_poly(&c, "H + c1").unwrap());
            assert_eq!(
                euler_la0::<BigInt>(&c).homogeneous_weight().unwrap(),
                Some(1)
            );
        }
    }

    #[test]
    fn va1_small_cases() {
        let c1ctx = ctx(1);
        assert_eq!(
            euler_va1::<BigInt>(&c1ctx, 1),
            parse_poly(&c1ctx, "H + c1 + x1").unwrap()
        );
        let c2 = ctx(2);
        let s = parse_poly::<BigInt>(&c2, "H + c1").unwrap();
        let want = &(&s.pow(2) + &(&P::generator(&c2, "x1").unwrap() * &s))
            + &P::generator(&c2, "x2").unwrap();
        assert_eq!(euler_va1::<BigInt>(&c2, 2), want);
        for m in 1..=4 {
            let c = ctx(m);
            assert_eq!(
                euler_va1::<BigInt>(&c, m).homogeneous_weight().unwrap(),
                Some(m)
            );
        }
    }

    #[test]
    fn la2_values() {
        let c2 = ctx(2);
        assert_eq!(
            euler_la2::<BigInt>(&c2, 2),
            parse_poly(&c2, "2*H + 2*x1 + 2*c1").unwrap()
        );
        let c3 = ctx(3);
        assert_eq!(
            euler_la2::<BigInt>(&c3, 3),
            parse_poly(&c3, "3*H + 2*x1 + 3*c1").unwrap()
        );
        assert_eq!(
            euler_la2::<BigInt>(&c3, 3).homogeneous_weight().unwrap(),
            Some(1)
        );
    }

    #[test]
    fn vpa2_small_cases() {
        let c1ctx = ctx(1);
        assert_eq!(
            euler_vpa2::<BigInt>(&c1ctx, 1),
            parse_poly(&c1ctx, "lam + H + c1 + x1").unwrap()
        );
        let c2 = ctx(2);
        let s = parse_poly::<BigInt>(&c2, "lam + H + c1").unwrap();
        let want = &(&s.pow(2) + &(&P::generator(&c2, "x1").unwrap() * &s))
            + &P::generator(&c2, "x2").unwrap();
        assert_eq!(euler_vpa2::<BigInt>(&c2, 2), want);
        assert_eq!(
            euler_vpa2::<BigInt>(&c2, 2).homogeneous_weight().unwrap(),
            Some(2)
        );
    }

    #[test]
    fn lpa3_values() {
        for m in [1, 2, 4] {
            let c = ctx(m);
            let e = euler_lpa3::<BigInt>(&c);
            assert_eq!(e, parse_poly(&c, "3*lam + H + c1").unwrap());
            assert_eq!(e.homogeneous_weight().unwrap(), Some(1));
            assert_eq!(
                e.coefficient_of(LAMBDA, 1).unwrap(),
                P::from_int(&c, 3)
            );
        }
    }

    #[test]
    fn va1_is_vpa2_at_lambda_zero() {
        for m in 1..=4 {
            let c = ctx(m);
            let substituted = euler_vpa2::<BigInt>(&c, m)
                .substitute(LAMBDA, &P::zero(&c))
                .unwrap();
            assert_eq!(substituted, euler_va1::<BigInt>(&c, m));
        }
    }

    #[test]
    fn twist_zero_gives_top_chern_class() {
        for m in 1..=4 {
            let c = ctx(m);
            let spec = TwistedBundleSpec {
                rank: m,
                base_chern: cotangent_chern::<BigInt>(&c, m),
                twist: P::zero(&c),
            };
            assert_eq!(
                euler_twisted(&spec).unwrap(),
                P::generator(&c, &x_name(m)).unwrap()
            );
        }
    }

    #[test]
    fn rank_one_twist() {
        let c = ctx(1);
        let spec = TwistedBundleSpec {
            rank: 1,
            base_chern: vec![P::one(&c), P::generator(&c, "x1").unwrap()],
            twist: P::generator(&c, H).unwrap(),
        };
        assert_eq!(
            euler_twisted(&spec).unwrap(),
            parse_poly(&c, "x1 + H").unwrap()
        );
    }

    #[test]
    fn inhomogeneous_inputs_rejected() {
        let c = ctx(2);
        let bad_twist = TwistedBundleSpec {
            rank: 2,
            base_chern: cotangent_chern::<BigInt>(&c, 2),
            twist: parse_poly(&c, "H + x2").unwrap(),
        };
        assert!(matches!(
            euler_twisted(&bad_twist),
            Err(BundleError::InhomogeneousTwist)
        ));
        let bad_chern = TwistedBundleSpec {
            rank: 2,
            base_chern: vec![
                P::one(&c),
                parse_poly(&c, "x2").unwrap(),
                P::generator(&c, "x2").unwrap(),
            ],
            twist: P::generator(&c, H).unwrap(),
        };
        assert!(matches!(
            euler_twisted(&bad_chern),
            Err(BundleError::InhomogeneousChern(1))
        ));
    }

    // Splitting-principle oracle: adjoin formal roots a1..am with
    // elementary-symmetric Chern classes and multiply the (a_i + t) factors.
    #[test]
    fn closed_formula_matches_root_construction() {
        for m in 1..=4u32 {
            let mut gens = vec![
                Generator::cohomology(H, 1),
                Generator::cohomology(LAMBDA, 1),
                Generator::cohomology(C1, 1),
            ];
            for i in 1..=m {
                gens.push(Generator::cohomology(format!("a{i}"), 1));
            }
            let rc = Context::new(gens).unwrap();
            let roots: Vec<P> = (1..=m)
                .map(|i| P::generator(&rc, &format!("a{i}")).unwrap())
                .collect();
            // c_i(E) = e_i(a_1..a_m)
            let mut chern = vec![P::one(&rc)];
            for i in 1..=m as usize {
                let mut e_i = P::zero(&rc);
                for combo in combinations(m as usize, i) {
                    let mut prod = P::one(&rc);
                    for &j in &combo {
                        prod = &prod * &roots[j];
                    }
                    e_i = &e_i + &prod;
                }
                chern.push(e_i);
            }
            let twist = parse_poly::<BigInt>(&rc, "lam + H + c1").unwrap();
            let spec = TwistedBundleSpec {
                rank: m,
                base_chern: chern,
                twist: twist.clone(),
            };
            let closed = euler_twisted(&spec).unwrap();
            let mut product = P::one(&rc);
            for r in &roots {
                product = &product * &(r + &twist);
            }
            assert_eq!(closed, product, "m = {m}");
        }
    }

    fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in combinations_from(first + 1, n, k - 1) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }

    fn combinations_from(start: usize, n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in start..n {
            for mut rest in combinations_from(first + 1, n, k - 1) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }

    #[test]
    fn derived_m3_expansion() {
        // oracle above (root construction); the closed sum for m = 3
        let c = ctx(3);
        let s = parse_poly::<BigInt>(&c, "lam + H + c1").unwrap();
        let mut want = s.pow(3);
        for (i, name) in [(1u32, "x1"), (2, "x2"), (3, "x3")] {
            want = &want + &(&P::generator(&c, name).unwrap() * &s.pow(3 - i));
        }
        assert_eq!(euler_vpa2::<BigInt>(&c, 3), want);
    }
}
