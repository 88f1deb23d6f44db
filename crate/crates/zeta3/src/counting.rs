//! Exact solution counts of `f(x) ≡ 0 mod p^m` for ternary quadratic forms,
//! in affine space and in the primitive cone, plus truncated Poincaré
//! series.
//!
//! Two backends:
//!
//! * naive enumeration over `(Z/p^m)^3`, allowed while `p^(3m) <= 10^8`;
//! * recursive descent, polynomial in `m`: residue classes mod `p` are
//!   classified as non-zeros, smooth zeros (gradient a unit vector, where
//!   Hensel lifting gives exactly `p^(2(m-1))` solutions), or singular
//!   zeros, which recurse two levels down on a shifted quadratic
//!   `f(z) + h.z + c` with the same quadratic part.
//!
//! The affine and cone counts satisfy `N_m = N*_m + p^3 N_(m-2)` for
//! homogeneous quadratics; both sides are computed independently here, so
//! the identity stays a meaningful cross-check.

use crate::lie3::QuadraticForm3;
use crate::{Error, Rat, Result};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Exact counts at one level: `N_m` over `(Z/p^m)^3` and `N*_m` over the
/// primitive classes (some coordinate a unit). `N_0 = N*_0 = 1` by the
/// empty-congruence convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountProfile {
    pub p: u64,
    pub m: u32,
    pub affine: BigUint,
    pub cone: BigUint,
}

impl CountProfile {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "m": self.m,
            "N": self.affine.to_string(),
            "Nstar": self.cone.to_string(),
        })
    }
}

/// Largest `p^(3m)` the naive backend will enumerate.
pub const NAIVE_BOUND: u128 = 100_000_000;

fn pm(p: u64, e: u32) -> BigUint {
    BigUint::from(p).pow(e)
}

/// `N_m` by recursive descent (no level bound).
pub fn count_affine(f: &QuadraticForm3, m: u32) -> BigUint {
    Descent::new(f).count(m, false)
}

/// `N*_m` by recursive descent (no level bound).
pub fn count_cone(f: &QuadraticForm3, m: u32) -> BigUint {
    Descent::new(f).count(m, true)
}

pub fn profile(f: &QuadraticForm3, m: u32) -> CountProfile {
    CountProfile {
        p: f.p,
        m,
        affine: count_affine(f, m),
        cone: count_cone(f, m),
    }
}

/// `N_m` by full enumeration; errors once `p^(3m)` exceeds [`NAIVE_BOUND`].
pub fn count_affine_naive(f: &QuadraticForm3, m: u32) -> Result<BigUint> {
    naive(f, m, false)
}

/// `N*_m` by full enumeration over primitive residues.
pub fn count_cone_naive(f: &QuadraticForm3, m: u32) -> Result<BigUint> {
    naive(f, m, true)
}

fn naive(f: &QuadraticForm3, m: u32, cone: bool) -> Result<BigUint> {
    let p = f.p;
    if m == 0 {
        return Ok(BigUint::one());
    }
    let size = (p as u128).checked_pow(3 * m).filter(|&s| s <= NAIVE_BOUND);
    if size.is_none() {
        return Err(Error::CountInfeasible { p, m });
    }
    let modulus = (p as i128).pow(m);
    let c = f.coefficients().map(|v| v as i128);
    let pp = p as i128;
    let mut count: u64 = 0;
    for x1 in 0..modulus {
        for x2 in 0..modulus {
            // f(x) = q2(x1,x2) + x3*l(x1,x2) + c33*x3^2 mod p^m.
            let q2 = (c[0] * x1 % modulus * x1 + c[1] * x2 % modulus * x2
                + c[3] * x1 % modulus * x2)
                % modulus;
            let l = (c[4] * x1 + c[5] * x2) % modulus;
            for x3 in 0..modulus {
                if cone && x1 % pp == 0 && x2 % pp == 0 && x3 % pp == 0 {
                    continue;
                }
                let v = (q2 + l * x3 + c[2] * x3 % modulus * x3) % modulus;
                if v.rem_euclid(modulus) == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(BigUint::from(count))
}

/// The cone measure `mu*_m = N*_m / p^(3m) - N*_(m+1) / p^(3(m+1)) -
/// delta_(m,0) p^(-3)`, the Haar measure of the primitive vectors where
/// `v_p(f) = m` exactly.
pub fn cone_measure(f: &QuadraticForm3, m: u32) -> Rat {
    let p3m = Rat::from_integer(BigInt::from(pm(f.p, 3 * m)));
    let p3m1 = Rat::from_integer(BigInt::from(pm(f.p, 3 * (m + 1))));
    let nm = Rat::from_integer(BigInt::from(count_cone(f, m)));
    let nm1 = Rat::from_integer(BigInt::from(count_cone(f, m + 1)));
    let mut out = nm / p3m - nm1 / p3m1;
    if m == 0 {
        out -= crate::pow_rat(f.p, -3);
    }
    out
}

/// Coefficients `N_m p^(-3m)` (or `N*_m p^(-3m)` with `cone`) of the
/// Poincaré series, for `m = 0..=level`.
pub fn poincare_truncation(f: &QuadraticForm3, level: u32, cone: bool) -> Vec<Rat> {
    (0..=level)
        .map(|m| {
            let n = if cone { count_cone(f, m) } else { count_affine(f, m) };
            Rat::from_integer(BigInt::from(n)) * crate::pow_rat(f.p, -3 * m as i64)
        })
        .collect()
}

/// A reusable counting engine for one form; the descent memo persists
/// across levels, so sweeping `m = 0..M` costs little more than the deepest
/// level alone.
pub struct Counter {
    inner: Descent,
}

impl Counter {
    pub fn new(f: &QuadraticForm3) -> Self {
        Counter {
            inner: Descent::new(f),
        }
    }

    pub fn affine(&mut self, m: u32) -> BigUint {
        self.inner.count(m, false)
    }

    pub fn cone(&mut self, m: u32) -> BigUint {
        self.inner.count(m, true)
    }
}

/// Descent state: counts of `f(z) + h.z + c ≡ 0 mod p^m` over
/// `(Z/p^m)^3`, with `f` the fixed quadratic part. The pairs `(h, c)`
/// produced by the recursion stay bounded (each step contracts them by a
/// factor `p` up to an additive constant), so memoization terminates.
struct Descent {
    p: i128,
    c: [i128; 6],
    s: [[i128; 3]; 3],
    memo: HashMap<([i128; 3], i128, u32), BigUint>,
}

impl Descent {
    fn new(f: &QuadraticForm3) -> Self {
        let c = f.coefficients().map(|v| v as i128);
        let s = [
            [2 * c[0], c[3], c[4]],
            [c[3], 2 * c[1], c[5]],
            [c[4], c[5], 2 * c[2]],
        ];
        Descent {
            p: f.p as i128,
            c,
            s,
            memo: HashMap::new(),
        }
    }

    fn eval(&self, h: &[i128; 3], c: i128, y: [i128; 3]) -> i128 {
        let q = self.c[0] * y[0] * y[0]
            + self.c[1] * y[1] * y[1]
            + self.c[2] * y[2] * y[2]
            + self.c[3] * y[0] * y[1]
            + self.c[4] * y[0] * y[2]
            + self.c[5] * y[1] * y[2];
        q + h[0] * y[0] + h[1] * y[1] + h[2] * y[2] + c
    }

    fn gradient(&self, h: &[i128; 3], y: [i128; 3]) -> [i128; 3] {
        std::array::from_fn(|i| {
            self.s[i][0] * y[0] + self.s[i][1] * y[1] + self.s[i][2] * y[2] + h[i]
        })
    }

    fn count(&mut self, m: u32, cone: bool) -> BigUint {
        self.count_inner([0, 0, 0], 0, m, cone)
    }

    fn count_inner(&mut self, h: [i128; 3], c: i128, m: u32, skip_zero: bool) -> BigUint {
        if m == 0 {
            return BigUint::one();
        }
        if !skip_zero {
            if let Some(hit) = self.memo.get(&(h, c, m)) {
                return hit.clone();
            }
        }
        let p = self.p;
        let mut total = BigUint::zero();
        let mut y = [0i128; 3];
        for y0 in 0..p {
            y[0] = y0;
            for y1 in 0..p {
                y[1] = y1;
                for y2 in 0..p {
                    y[2] = y2;
                    if skip_zero && y0 == 0 && y1 == 0 && y2 == 0 {
                        continue;
                    }
                    let w = self.eval(&h, c, y);
                    if w.rem_euclid(p) != 0 {
                        continue;
                    }
                    if m == 1 {
                        total += BigUint::one();
                        continue;
                    }
                    let g = self.gradient(&h, y);
                    if g.iter().any(|v| v.rem_euclid(p) != 0) {
                        // Smooth zero: exactly p^(2(m-1)) lifts.
                        total += pm(p as u64, 2 * (m - 1));
                    } else if w.rem_euclid(p * p) == 0 {
                        let h2 = std::array::from_fn(|i| g[i] / p);
                        let sub = self.count_inner(h2, w / (p * p), m - 2, false);
                        total += sub * pm(p as u64, 3);
                    }
                    // Singular with v_p(w) = 1: no lifts beyond level 1.
                }
            }
        }
        if !skip_zero {
            self.memo.insert((h, c, m), total.clone());
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie3::testutil::{heisenberg, sl2};
    use crate::ratio;

    fn sl1_form(p: u64, rho: i64) -> QuadraticForm3 {
        // x3^2 - rho x2^2 - p x1^2
        QuadraticForm3::diagonal([-(p as i64), -rho, 1], p)
    }

    #[test]
    fn heisenberg_level_one() {
        let f = heisenberg().extract_form(3);
        assert_eq!(count_affine(&f, 1), BigUint::from(9u32));
        assert_eq!(count_affine_naive(&f, 1).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn zero_form_counts() {
        let f = QuadraticForm3::zero(2);
        assert_eq!(count_affine(&f, 2), BigUint::from(64u32));
        assert_eq!(count_cone(&f, 2), BigUint::from(56u32));
        assert_eq!(count_affine(&f, 0), BigUint::one());
    }

    #[test]
    fn sl2_level_one_at_five() {
        // Smooth conic with p + 1 projective points: N*_1 = (p+1)(p-1),
        // N_1 = N*_1 + 1 = 25; frozen from full enumeration.
        let f = sl2().extract_form(5);
        assert_eq!(count_affine_naive(&f, 1).unwrap(), BigUint::from(25u32));
        assert_eq!(count_affine(&f, 1), BigUint::from(25u32));
        assert_eq!(count_cone(&f, 1), BigUint::from(24u32));
    }

    #[test]
    fn anisotropic_cone_vanishing() {
        let f = sl1_form(3, 2);
        assert_eq!(count_cone(&f, 0), BigUint::one());
        assert_eq!(count_cone(&f, 1), BigUint::from(2u32)); // p - 1
        assert_eq!(count_cone(&f, 2), BigUint::zero());
        assert_eq!(count_cone(&f, 3), BigUint::zero());
        let f5 = sl1_form(5, 2);
        assert_eq!(count_cone(&f5, 3), BigUint::zero());
    }

    #[test]
    fn cone_measure_values() {
        // f = x3^2 at p = 3: N*_1 = 8, so mu*_0 = 1 - 8/27 - 1/27 = 2/3.
        let f = heisenberg().extract_form(3);
        assert_eq!(count_cone_naive(&f, 1).unwrap(), BigUint::from(8u32));
        assert_eq!(cone_measure(&f, 0), ratio(2, 3));
        assert_eq!(cone_measure(&sl1_form(3, 2), 2), Rat::zero());
        assert_eq!(cone_measure(&sl1_form(5, 2), 3), Rat::zero());
    }

    #[test]
    fn poincare_truncations() {
        let zero = QuadraticForm3::zero(3);
        assert_eq!(
            poincare_truncation(&zero, 2, false),
            vec![crate::rat(1), crate::rat(1), crate::rat(1)]
        );
        let f = heisenberg().extract_form(2);
        assert_eq!(
            poincare_truncation(&f, 1, false),
            vec![crate::rat(1), ratio(1, 2)]
        );
        assert_eq!(
            poincare_truncation(&sl1_form(3, 2), 3, true),
            vec![crate::rat(1), ratio(2, 27), Rat::zero(), Rat::zero()]
        );
    }

    #[test]
    fn backends_agree() {
        let forms = vec![
            heisenberg().extract_form(2),
            heisenberg().extract_form(3),
            sl2().extract_form(2),
            sl2().extract_form(3),
            sl1_form(2, -3),
            sl1_form(3, 2),
            QuadraticForm3::new([[1, 2, 0], [0, -1, 3], [1, 0, 2]], 2),
            QuadraticForm3::new([[1, 2, 0], [0, -1, 3], [1, 0, 2]], 3),
            QuadraticForm3::diagonal([4, 6, 9], 3),
            QuadraticForm3::diagonal([0, 1, -3], 3),
        ];
        for f in &forms {
            for m in 0..=3 {
                assert_eq!(
                    count_affine(f, m),
                    count_affine_naive(f, m).unwrap(),
                    "affine mismatch for {:?} m={}",
                    f.a,
                    m
                );
                assert_eq!(
                    count_cone(f, m),
                    count_cone_naive(f, m).unwrap(),
                    "cone mismatch for {:?} m={}",
                    f.a,
                    m
                );
            }
        }
    }

    #[test]
    fn homogeneity_recursion() {
        let forms = vec![
            heisenberg().extract_form(2),
            sl2().extract_form(3),
            sl1_form(5, 2),
            QuadraticForm3::diagonal([1, -1, 3], 3),
            QuadraticForm3::diagonal([2, 6, 18], 2),
        ];
        for f in &forms {
            let p3 = BigUint::from(f.p).pow(3);
            assert_eq!(
                count_affine(f, 1),
                count_cone(f, 1) + BigUint::one(),
                "level 1 for {:?}",
                f.a
            );
            for m in 2..=4 {
                assert_eq!(
                    count_affine(f, m),
                    count_cone(f, m) + &p3 * count_affine(f, m - 2),
                    "recursion for {:?} at m={}",
                    f.a,
                    m
                );
            }
        }
    }

    #[test]
    fn naive_bound_enforced() {
        let f = sl2().extract_form(5);
        assert!(matches!(
            count_affine_naive(&f, 5),
            Err(Error::CountInfeasible { .. })
        ));
    }

    #[test]
    fn deep_levels_stay_polynomial() {
        // Descent handles levels far beyond naive reach.
        let f = sl2().extract_form(2);
        let n20 = count_affine(&f, 20);
        assert!(n20 > BigUint::zero());
        assert!(n20 < BigUint::from(2u32).pow(60));
    }
}
