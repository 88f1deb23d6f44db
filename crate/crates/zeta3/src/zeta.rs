//! Assembly and analysis of subalgebra zeta functions.
//!
//! The central identity: for a 3-dimensional Z_p-algebra `L` with associated
//! ternary quadratic form `f` and scaling exponent `i >= 0`,
//!
//! ```text
//!   zeta_{p^i L}(s) = zeta_{Z_p^3}(s)
//!       - Z_f(s-2) zeta_p(2s-2) zeta_p(s-2) p^((2-s)(i+1)) (1-p^(-1))^(-1),
//! ```
//!
//! everything rational in `t = p^(-s)`: `zeta_p(bs-a) = 1/(1-p^a t^b)`,
//! `Z_f(s-2)` is the Igusa zeta at `t -> p^2 t`, and
//! `p^((2-s)(i+1)) = (p^2 t)^(i+1)`.
//!
//! [`zeta_via_cases`] recomputes the same function through the lattice-class
//! decomposition (classes sorted by elementary divisor type, the class sum
//! split over which divisor exponents vanish), which shares no intermediate
//! algebra with the product assembly; exact equality of the two routes is a
//! strong end-to-end check.

use crate::igusa::{self, IgusaResult};
use crate::lie3::LieAlgebra3;
use crate::ratfunc::{pole_profile, Polynomial, PoleClass, RationalFunction};
use crate::{pow_rat, rat, ratio, Error, Rat, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Number of Dirichlet coefficients a report carries by default.
pub const DEFAULT_COEFFS: usize = 12;

/// The generalized local Riemann factor `zeta_p(bs - a) = 1/(1 - p^a t^b)`.
pub fn local_riemann(p: u64, a: i64, b: u32) -> RationalFunction {
    RationalFunction::new(Polynomial::one(), crate::ratfunc::candidate_factor(p, a, b))
        .expect("candidate factor is nonzero")
}

/// `zeta_{Z_p^3}(s) = zeta_p(s) zeta_p(s-1) zeta_p(s-2)`.
pub fn zeta_abelian(p: u64) -> RationalFunction {
    let prod = &(&local_riemann(p, 0, 1) * &local_riemann(p, 1, 1)) * &local_riemann(p, 2, 1);
    prod
}

/// Everything the pipeline knows about one algebra at one prime.
#[derive(Clone, Debug)]
pub struct ZetaReport {
    pub zeta: RationalFunction,
    pub prime: u64,
    pub scale: u32,
    pub igusa: IgusaResult,
    pub poles: Vec<PoleClass>,
    pub abscissa: Rat,
    pub coefficients: Vec<BigUint>,
}

impl ZetaReport {
    /// Multiplicity of the positive real root `t = p^(-sigma)`.
    pub fn real_pole_order(&self, sigma: &Rat) -> u32 {
        self.poles
            .iter()
            .find(|c| &c.sigma == sigma)
            .map_or(0, |c| c.real_root_order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.prime,
            "scale": self.scale,
            "zeta": self.zeta.to_json(),
            "poles": self.poles.iter().map(|c| serde_json::json!({
                "sigma": format!("{}/{}", c.sigma.numer(), c.sigma.denom()),
                "factor_mult": c.factor_mult,
                "real_root_order": c.real_root_order,
            })).collect::<Vec<_>>(),
            "abscissa": format!("{}/{}", self.abscissa.numer(), self.abscissa.denom()),
            "coefficients": self.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Assembles the subalgebra zeta function of `p^i L` from the Igusa zeta of
/// the associated form.
pub fn subalgebra_zeta(alg: &LieAlgebra3, p: u64) -> Result<ZetaReport> {
    alg.validate()?;
    let form = alg.extract_form(p);
    let ig = igusa::igusa_zeta(&form)?;
    // The scale is already inside the form (content p^i), so the remaining
    // explicit power is (p^2 t)^1.
    let zs2 = ig.zeta.substitute_scaled(&pow_rat(p, 2))?;
    let p2t = RationalFunction::from_poly(Polynomial::monomial(pow_rat(p, 2), 1));
    let unit = RationalFunction::constant(Rat::one() - pow_rat(p, -1));
    let corr = &(&(&zs2 * &p2t) * &(&local_riemann(p, 2, 2) * &local_riemann(p, 2, 1)))
        .div(&unit)?;
    let zeta = &zeta_abelian(p) - corr;
    finish_report(zeta, p, alg.scale, ig)
}

fn finish_report(
    zeta: RationalFunction,
    p: u64,
    scale: u32,
    ig: IgusaResult,
) -> Result<ZetaReport> {
    let poles = pole_profile(&zeta, p)?;
    let abscissa = poles
        .iter()
        .map(|c| c.sigma.clone())
        .max()
        .ok_or_else(|| Error::InvalidZetaExpansion("zeta function has no poles".into()))?;
    let coefficients = dirichlet_coefficients(&zeta, DEFAULT_COEFFS)?;
    Ok(ZetaReport {
        zeta,
        prime: p,
        scale,
        igusa: ig,
        poles,
        abscissa,
        coefficients,
    })
}

/// Exact Dirichlet coefficients `a_0..a_n` (`a_k` counts subalgebras of
/// index `p^k`); errors if any coefficient is negative or non-integral.
pub fn dirichlet_coefficients(zeta: &RationalFunction, n: usize) -> Result<Vec<BigUint>> {
    let series = zeta.series(n)?;
    let mut out = Vec::with_capacity(n + 1);
    for (k, c) in series.iter().enumerate() {
        if !c.denom().is_one() || c.is_negative() {
            return Err(Error::InvalidZetaExpansion(format!(
                "coefficient a_{k} = {c} is not a nonnegative integer"
            )));
        }
        out.push(c.numer().to_biguint().expect("nonnegative"));
    }
    if out.first().map(|a| a != &BigUint::one()).unwrap_or(true) {
        return Err(Error::InvalidZetaExpansion("a_0 != 1".into()));
    }
    Ok(out)
}

/// Pole analysis of a report: sigma classes, abscissa, and any violations of
/// the admissible set {0, 1/2, 1, 3/2, 2}.
#[derive(Clone, Debug)]
pub struct PoleAnalysis {
    pub classes: Vec<PoleClass>,
    pub abscissa: Rat,
    pub violations: Vec<Rat>,
}

pub fn analyze_poles(report: &ZetaReport) -> PoleAnalysis {
    let allowed: Vec<Rat> = [rat(0), ratio(1, 2), rat(1), ratio(3, 2), rat(2)].to_vec();
    let violations = report
        .poles
        .iter()
        .map(|c| c.sigma.clone())
        .filter(|s| !allowed.contains(s))
        .collect();
    PoleAnalysis {
        classes: report.poles.clone(),
        abscissa: report.abscissa.clone(),
        violations,
    }
}

/// Partial-sum growth ratios: min and max of
/// `sigma_n / (p^(b n) n^e)` over `n0 <= n <= n1` where
/// `sigma_n = sum_(k<=n) a_k`. The defaults `b = 1`, `e` in {1, 2} match the
/// soluble families whose abscissa is 1; `b = 2, e = 0` gives the abelian
/// lattice-growth baseline.
pub fn growth_ratios(
    zeta: &RationalFunction,
    p: u64,
    b: u32,
    e: u32,
    n0: usize,
    n1: usize,
) -> Result<(Rat, Rat)> {
    if n0 == 0 || n1 < n0 {
        return Err(Error::Input("growth range must satisfy 1 <= n0 <= n1".into()));
    }
    let coeffs = dirichlet_coefficients(zeta, n1)?;
    let mut partial = BigUint::zero();
    let mut lo: Option<Rat> = None;
    let mut hi: Option<Rat> = None;
    for (n, a) in coeffs.iter().enumerate() {
        partial += a;
        if n < n0 {
            continue;
        }
        let denom = pow_rat(p, (b as i64) * n as i64)
            * Rat::from_integer(BigInt::from(n).pow(e));
        let ratio = Rat::from_integer(BigInt::from(partial.clone())) / denom;
        lo = Some(match lo {
            Some(v) => v.min(ratio.clone()),
            None => ratio.clone(),
        });
        hi = Some(match hi {
            Some(v) => v.max(ratio.clone()),
            None => ratio,
        });
    }
    Ok((lo.unwrap(), hi.unwrap()))
}

/// Growth check at abscissa 1: bounds for `sigma_n / (p^n n^e)`.
pub fn growth_check(report: &ZetaReport, e: u32, n0: usize, n1: usize) -> Result<(Rat, Rat)> {
    growth_ratios(&report.zeta, report.prime, 1, e, n0, n1)
}

/// Independent route: the lattice-class decomposition
/// `zeta_L = (A_∅ + A_{1} + A_{2} + A_{1,2}) / (1 - t^3)` with
///
/// ```text
///   A_∅    = 1,
///   A_{2}  = (p^(-2) + p^(-1) + 1) p^2 t^2 / (1 - p^2 t^2),
///   A_{1}  = (1-p^(-3))/(1-p^(-1)) [ p^2 t/(1-p^2 t)
///            - Z*_f(s-2) p^2 t (1-t^3) / ((1-p^(-3))(1-p^2 t^4)(1-p^2 t)) ],
///   A_{1,2}= (p^(-1)+1) p^2 t^2/(1-p^2 t^2) A_{1},
/// ```
///
/// where `Z*_f(s-2) = (1 - p t^2) Z_f(s-2)`. Stated for the algebra itself
/// (scale 0).
pub fn zeta_via_cases(alg: &LieAlgebra3, p: u64) -> Result<RationalFunction> {
    alg.validate()?;
    if alg.scale != 0 {
        return Err(Error::Input(
            "the case decomposition route requires scale 0".into(),
        ));
    }
    let form = alg.extract_form(p);
    let ig = igusa::igusa_zeta(&form)?;
    let zs2 = ig.zeta.substitute_scaled(&pow_rat(p, 2))?;
    let zstar_s2 = &RationalFunction::from_poly(Polynomial::from_coeffs(vec![
        rat(1),
        Rat::zero(),
        -pow_rat(p, 1),
    ])) * &zs2;

    let p2t = RationalFunction::from_poly(Polynomial::monomial(pow_rat(p, 2), 1));
    let head = p2t.div(&one_minus(p, 2, 1))?;
    let tail_num = &(&zstar_s2 * &p2t)
        * &RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, 0, -1]));
    let tail_den = &(&RationalFunction::constant(Rat::one() - pow_rat(p, -3))
        * &one_minus(p, 2, 4))
        * &one_minus(p, 2, 1);
    let tail = tail_num.div(&tail_den)?;
    let scale = RationalFunction::constant(
        (Rat::one() - pow_rat(p, -3)) / (Rat::one() - pow_rat(p, -1)),
    );
    let a1 = &scale * &(&head - &tail);

    let grass = RationalFunction::constant(pow_rat(p, -2) + pow_rat(p, -1) + Rat::one());
    let p2t2 = RationalFunction::from_poly(Polynomial::monomial(pow_rat(p, 2), 2));
    let a2 = &grass * &p2t2.div(&one_minus(p, 2, 2))?;

    // A_{1} + A_{1,2} = A_{1} (1 + p t^2)/(1 - p^2 t^2).
    let fib = RationalFunction::new(
        Polynomial::from_coeffs(vec![rat(1), Rat::zero(), pow_rat(p, 1)]),
        crate::ratfunc::candidate_factor(p, 2, 2),
    )?;
    let total = &(&RationalFunction::one() + &a2) + &(&a1 * &fib);
    total.div(&RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, 0, -1])))
}

fn one_minus(p: u64, a: i64, b: u32) -> RationalFunction {
    RationalFunction::from_poly(crate::ratfunc::candidate_factor(p, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie3::testutil::{heisenberg, sl2};
    use crate::lie3::LieAlgebra3;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn heis_product(p: u64) -> RationalFunction {
        // zeta_p(s) zeta_p(s-1) zeta_p(2s-3) zeta_p(2s-2) / zeta_p(3s-3)
        let num = &(&(&local_riemann(p, 0, 1) * &local_riemann(p, 1, 1))
            * &local_riemann(p, 3, 2))
            * &local_riemann(p, 2, 2);
        &num * &RationalFunction::from_poly(crate::ratfunc::candidate_factor(p, 3, 3))
    }

    fn sl2_product_odd(p: u64) -> RationalFunction {
        let num = &(&(&local_riemann(p, 0, 1) * &local_riemann(p, 1, 1))
            * &local_riemann(p, 1, 2))
            * &local_riemann(p, 2, 2);
        &num * &RationalFunction::from_poly(crate::ratfunc::candidate_factor(p, 1, 3))
    }

    fn sl1_product_odd(p: u64) -> RationalFunction {
        &(&local_riemann(p, 0, 1) * &local_riemann(p, 1, 2)) * &local_riemann(p, 2, 2)
    }

    #[test]
    fn local_riemann_values() {
        assert_eq!(
            local_riemann(3, 0, 1),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, -1])).unwrap()
        );
        assert_eq!(
            local_riemann(2, 2, 2),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, 0, -4])).unwrap()
        );
        assert_eq!(
            local_riemann(5, 2, 1),
            RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[1, -25])).unwrap()
        );
    }

    #[test]
    fn abelian_products_and_series() {
        let z2 = zeta_abelian(2);
        let expect = RationalFunction::new(
            Polynomial::one(),
            &(&Polynomial::from_ints(&[1, -1]) * &Polynomial::from_ints(&[1, -2]))
                * &Polynomial::from_ints(&[1, -4]),
        )
        .unwrap();
        assert_eq!(z2, expect);
        assert_eq!(
            dirichlet_coefficients(&z2, 1).unwrap(),
            vec![big(1), big(7)]
        );
        assert_eq!(
            dirichlet_coefficients(&zeta_abelian(3), 2).unwrap(),
            vec![big(1), big(13), big(130)]
        );
    }

    #[test]
    fn heisenberg_matches_product() {
        for p in [2u64, 3, 5] {
            let rep = subalgebra_zeta(&heisenberg(), p).unwrap();
            assert_eq!(rep.zeta, heis_product(p), "p = {p}");
        }
    }

    #[test]
    fn sl2_matches_products() {
        for p in [3u64, 5] {
            let rep = subalgebra_zeta(&sl2(), p).unwrap();
            assert_eq!(rep.zeta, sl2_product_odd(p), "p = {p}");
        }
        // p = 2: zeta_2(s) zeta_2(s-1) zeta_2(2s-2) zeta_2(2s-1) (1+6t^2-8t^3).
        let rep = subalgebra_zeta(&sl2(), 2).unwrap();
        let base = &(&(&local_riemann(2, 0, 1) * &local_riemann(2, 1, 1))
            * &local_riemann(2, 2, 2))
            * &local_riemann(2, 1, 2);
        let poly = RationalFunction::from_poly(Polynomial::from_ints(&[1, 0, 6, -8]));
        assert_eq!(rep.zeta, &base * &poly);
    }

    #[test]
    fn sl1_delta_two_formula() {
        let alg = LieAlgebra3::from_brackets(
            &[
                (1, 2, 2, -2),
                (1, 2, 3, 4),
                (1, 3, 2, -4),
                (1, 3, 3, 2),
                (2, 3, 1, -2),
            ],
            0,
        )
        .unwrap();
        let rep = subalgebra_zeta(&alg, 2).unwrap();
        let base = &(&local_riemann(2, 0, 1) * &local_riemann(2, 1, 2)) * &local_riemann(2, 2, 2);
        let poly = RationalFunction::from_poly(Polynomial::from_ints(&[1, 6, 6, -12]));
        assert_eq!(rep.zeta, &base * &poly);
    }

    #[test]
    fn sl1_delta_odd_formula() {
        for p in [3u64, 5] {
            let r = crate::igusa::rho(p);
            let alg = LieAlgebra3::from_brackets(
                &[(1, 2, 3, 1), (1, 3, 2, r), (2, 3, 1, -(p as i64))],
                0,
            )
            .unwrap();
            let rep = subalgebra_zeta(&alg, p).unwrap();
            assert_eq!(rep.zeta, sl1_product_odd(p), "p = {p}");
        }
    }

    #[test]
    fn abelian_for_zero_form() {
        // Zero form: zeta = zeta_{Z_p^3} for any scale.
        for scale in [0u32, 2] {
            let rep = subalgebra_zeta(&LieAlgebra3::abelian().with_scale(scale), 3).unwrap();
            assert_eq!(rep.zeta, zeta_abelian(3));
        }
        // Same for the scalar ad-action algebra with f = 0.
        let l1 = LieAlgebra3::from_brackets(&[(1, 2, 2, 1), (1, 3, 3, 1)], 0).unwrap();
        assert_eq!(subalgebra_zeta(&l1, 2).unwrap().zeta, zeta_abelian(2));
    }

    #[test]
    fn route_equality() {
        for p in [2u64, 3] {
            assert_eq!(
                zeta_via_cases(&heisenberg(), p).unwrap(),
                subalgebra_zeta(&heisenberg(), p).unwrap().zeta,
                "heisenberg p = {p}"
            );
            assert_eq!(
                zeta_via_cases(&LieAlgebra3::abelian(), p).unwrap(),
                zeta_abelian(p),
                "abelian p = {p}"
            );
        }
        assert_eq!(
            zeta_via_cases(&sl2(), 5).unwrap(),
            subalgebra_zeta(&sl2(), 5).unwrap().zeta
        );
    }

    #[test]
    fn route_requires_scale_zero() {
        assert!(zeta_via_cases(&heisenberg().with_scale(1), 3).is_err());
    }

    #[test]
    fn dirichlet_examples() {
        let heis2 = subalgebra_zeta(&heisenberg(), 2).unwrap();
        assert_eq!(heis2.coefficients[0], big(1));
        assert_eq!(heis2.coefficients[1], big(3));
        let r = crate::igusa::rho(3);
        let sl1 = LieAlgebra3::from_brackets(&[(1, 2, 3, 1), (1, 3, 2, r), (2, 3, 1, -3)], 0)
            .unwrap();
        assert_eq!(
            dirichlet_coefficients(&subalgebra_zeta(&sl1, 3).unwrap().zeta, 0).unwrap(),
            vec![big(1)]
        );
    }

    #[test]
    fn heisenberg_pole_analysis() {
        // Factored exactly: sigma set {0, 1, 3/2}, abscissa 3/2, sigma = 1
        // carried by (1-pt)(1-p^2 t^2).
        let rep = subalgebra_zeta(&heisenberg(), 3).unwrap();
        let analysis = analyze_poles(&rep);
        let sigmas: Vec<Rat> = analysis.classes.iter().map(|c| c.sigma.clone()).collect();
        assert_eq!(sigmas, vec![rat(0), rat(1), ratio(3, 2)]);
        assert_eq!(rep.real_pole_order(&rat(1)), 2);
        assert_eq!(analysis.abscissa, ratio(3, 2));
        assert!(analysis.violations.is_empty());
    }

    #[test]
    fn soluble_pole_orders() {
        // f = x2^2 - p^2 x3^2 (square class, even k): triple pole at s = 1.
        let l4_2 = LieAlgebra3::from_brackets(&[(1, 2, 3, -9), (1, 3, 2, -1)], 0).unwrap();
        let rep = subalgebra_zeta(&l4_2, 3).unwrap();
        assert_eq!(rep.abscissa, rat(1));
        assert_eq!(rep.real_pole_order(&rat(1)), 3);
        // f = x2^2 - p rho x3^2 (k odd): double pole.
        let l5_1 = LieAlgebra3::from_brackets(&[(1, 2, 3, -6), (1, 3, 2, -1)], 0).unwrap();
        let rep = subalgebra_zeta(&l5_1, 3).unwrap();
        assert_eq!(rep.abscissa, rat(1));
        assert_eq!(rep.real_pole_order(&rat(1)), 2);
    }

    #[test]
    fn scaling_consistency() {
        // Theorem route with scale i equals recomputation with constants
        // multiplied by p^i.
        for (alg, p) in [(heisenberg(), 3u64), (sl2(), 2)] {
            for i in [1u32, 2] {
                let via_scale = subalgebra_zeta(&alg.clone().with_scale(i), p).unwrap();
                let mut entries = vec![];
                for a in 0..3 {
                    for b in (a + 1)..3 {
                        for k in 0..3 {
                            let v = alg.lambda(a, b, k);
                            if v != 0 {
                                entries.push((a + 1, b + 1, k + 1, v * (p as i64).pow(i)));
                            }
                        }
                    }
                }
                let scaled = LieAlgebra3::from_brackets(&entries, 0).unwrap();
                let direct = subalgebra_zeta(&scaled, p).unwrap();
                assert_eq!(via_scale.zeta, direct.zeta, "p = {p}, i = {i}");
            }
        }
    }

    #[test]
    fn growth_baseline_abelian() {
        let rep = subalgebra_zeta(&LieAlgebra3::abelian(), 2).unwrap();
        let (lo, hi) = growth_ratios(&rep.zeta, 2, 2, 0, 5, 12).unwrap();
        assert!(lo > Rat::zero());
        assert!(hi >= lo);
        assert!(hi < rat(10));
    }

    #[test]
    fn growth_soluble_bounded() {
        let l4_2 = LieAlgebra3::from_brackets(&[(1, 2, 3, -9), (1, 3, 2, -1)], 0).unwrap();
        let rep = subalgebra_zeta(&l4_2, 3).unwrap();
        let (lo, hi) = growth_check(&rep, 2, 5, 30).unwrap();
        assert!(lo > Rat::zero());
        assert!(hi < rat(100));
    }

    #[test]
    fn coefficient_domination_by_abelian() {
        let ab = dirichlet_coefficients(&zeta_abelian(2), 12).unwrap();
        for alg in [heisenberg(), sl2()] {
            let rep = subalgebra_zeta(&alg, 2).unwrap();
            for (k, a) in rep.coefficients.iter().enumerate() {
                assert!(a <= &ab[k], "a_{k} exceeds the sublattice count");
            }
        }
    }
}
