//! Exact polynomials and rational functions in one variable `t` over
//! arbitrary-precision rationals.
//!
//! The variable is `t = p^(-s)` for a fixed prime `p`; a shift `s -> s - a`
//! becomes the substitution `t -> p^a t` (see [`RationalFunction::substitute_scaled`]).
//!
//! Canonical form of a [`RationalFunction`]: numerator and denominator are
//! coprime over Q, and the denominator is normalized to constant term 1
//! (leading coefficient 1 when the constant term vanishes). Two equal
//! rational functions therefore have identical representations, so `==` is
//! exact mathematical equality.

use crate::{rat, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense polynomial over Q, coefficients ascending by degree.
///
/// Invariant: the trailing stored coefficient is nonzero, except for the
/// zero polynomial which stores an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Polynomial::monomial(rat(1), 1)
    }

    /// Builds a polynomial, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Substitutes `t -> c * t`, i.e. multiplies the degree-`k` coefficient
    /// by `c^k`.
    pub fn substitute_scaled(&self, c: &Rat) -> Self {
        let mut pow = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Polynomial::from_coeffs(out)
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = rat(1) / d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem.last().unwrap() * &lead_inv;
            if !q.is_zero() {
                for i in 0..=dd {
                    let v = &d.coeffs[i] * &q;
                    rem[k + i] -= v;
                }
                quot[k] = q;
            }
            // The leading term cancels by construction.
            rem.pop();
            while rem.last().map_or(false, |c| c.is_zero()) {
                rem.pop();
            }
            if rem.len() <= dd {
                break;
            }
        }
        (Polynomial::from_coeffs(quot), Polynomial { coeffs: rem })
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &Polynomial) -> Polynomial {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd over Q by the Euclidean algorithm.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let inv = rat(1) / a.leading();
            a.scale(&inv)
        }
    }

    pub fn pow(&self, mut n: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Clears denominators and integer content; the result is an integer
    /// polynomial, primitive, with positive leading coefficient, equal to
    /// `self` up to a positive rational factor.
    pub fn primitive_integer(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &ints {
            g = num_integer::gcd(g, v.clone());
        }
        if self.leading().is_negative() {
            g = -g;
        }
        Polynomial::from_coeffs(ints.iter().map(|v| Rat::from_integer(v / &g)).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Polynomial::from_coeffs(out)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Polynomial::from_coeffs(out)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{}", k)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Reduced rational function `num/den` in `t` over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Builds the canonical reduced form of `num/den`.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let c0 = den.coeff(0);
        let norm = if c0.is_zero() { den.leading() } else { c0 };
        let inv = rat(1) / norm;
        num = num.scale(&inv);
        den = den.scale(&inv);
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction::from_poly(Polynomial::zero())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn constant(c: Rat) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn inverse(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Evaluates the substitution `t -> c * t` (exactly; for `c = p^a` this
    /// realizes the shift `s -> s - a`).
    pub fn substitute_scaled(&self, c: &Rat) -> Result<Self> {
        RationalFunction::new(
            self.num.substitute_scaled(c),
            self.den.substitute_scaled(c),
        )
    }

    /// First `n + 1` Taylor coefficients at `t = 0`.
    ///
    /// Requires the denominator to have a nonzero constant term (the
    /// canonical form then has constant term exactly 1).
    pub fn series(&self, n: usize) -> Result<Vec<Rat>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::NotPowerSeries);
        }
        let mut out = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut c = self.num.coeff(k);
            for j in 1..=k {
                let dj = self.den.coeff(j);
                if !dj.is_zero() {
                    c -= dj * &out[k - j];
                }
            }
            out.push(c / &d0);
        }
        Ok(out)
    }

    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Polynomial::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// One pole class of a zeta-like rational function at a fixed prime.
///
/// `sigma` is the common value `a/b` over the matched denominator factors
/// `(1 - p^a t^b)`; every complex root of such a factor has absolute value
/// `p^(-sigma)`. `factor_mult` counts matched factors; `real_root_order` is
/// the multiplicity of the positive real root `t = p^(-sigma)` of the
/// denominator, which governs pole order at real `s = sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleClass {
    pub sigma: Rat,
    pub factor_mult: u32,
    pub real_root_order: u32,
}

/// Factors the denominator of `r` as a product of terms `(1 - p^a t^b)`
/// with `|a| <= 6`, `1 <= b <= 6`, and groups the factors by
/// `sigma = a/b`. Errors with numerical root moduli when no such
/// factorization exists.
pub fn pole_profile(r: &RationalFunction, p: u64) -> Result<Vec<PoleClass>> {
    let den = r.denominator().clone();
    if den.degree() == Some(0) {
        return Ok(vec![]);
    }
    if den.coeff(0).is_zero() {
        return Err(Error::NonStandardPole {
            moduli: root_moduli(&den),
        });
    }
    let mut candidates: Vec<(i64, u32)> = Vec::new();
    for b in 1..=6u32 {
        for a in -6..=6i64 {
            candidates.push((a, b));
        }
    }
    let mut factors: Vec<(i64, u32)> = Vec::new();
    if !peel(&den, p, &candidates, 0, &mut factors) {
        return Err(Error::NonStandardPole {
            moduli: root_moduli(&den),
        });
    }
    let mut classes: Vec<PoleClass> = Vec::new();
    for &(a, b) in &factors {
        let sigma = Rat::new(BigInt::from(a), BigInt::from(b));
        match classes.iter_mut().find(|c| c.sigma == sigma) {
            Some(c) => {
                c.factor_mult += 1;
                // (1 - p^a t^b) has p^(-sigma) as a simple positive root.
                c.real_root_order += 1;
            }
            None => classes.push(PoleClass {
                sigma,
                factor_mult: 1,
                real_root_order: 1,
            }),
        }
    }
    classes.sort_by(|x, y| x.sigma.cmp(&y.sigma));
    Ok(classes)
}

/// The candidate factor `1 - p^a t^b`.
pub fn candidate_factor(p: u64, a: i64, b: u32) -> Polynomial {
    let mut coeffs = vec![Rat::zero(); b as usize + 1];
    coeffs[0] = rat(1);
    coeffs[b as usize] = -crate::pow_rat(p, a);
    Polynomial::from_coeffs(coeffs)
}

fn peel(
    den: &Polynomial,
    p: u64,
    candidates: &[(i64, u32)],
    start: usize,
    out: &mut Vec<(i64, u32)>,
) -> bool {
    if den.degree() == Some(0) {
        return true;
    }
    for idx in start..candidates.len() {
        let (a, b) = candidates[idx];
        if (b as usize) > den.degree().unwrap_or(0) {
            continue;
        }
        let f = candidate_factor(p, a, b);
        let (q, r) = den.div_rem(&f);
        if r.is_zero() {
            out.push((a, b));
            if peel(&q, p, candidates, idx, out) {
                return true;
            }
            out.pop();
        }
    }
    false
}

fn root_moduli(den: &Polynomial) -> Vec<f64> {
    // Durand-Kerner on f64; diagnostics only.
    let n = match den.degree() {
        Some(n) if n > 0 => n,
        _ => return vec![],
    };
    let to_f = |r: &Rat| -> f64 {
        let num: f64 = r.numer().to_string().parse().unwrap_or(0.0);
        let den: f64 = r.denom().to_string().parse().unwrap_or(1.0);
        num / den
    };
    let lead = to_f(&den.leading());
    let coeffs: Vec<f64> = (0..=n).map(|k| to_f(&den.coeff(k)) / lead).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for c in coeffs.iter().rev() {
            acc = (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let ang = 0.4 + 2.0 * std::f64::consts::PI * (k as f64) / (n as f64);
            (ang.cos(), ang.sin())
        })
        .collect();
    for _ in 0..200 {
        for i in 0..n {
            let mut d = (1.0f64, 0.0f64);
            for j in 0..n {
                if i != j {
                    let diff = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                    d = (d.0 * diff.0 - d.1 * diff.1, d.0 * diff.1 + d.1 * diff.0);
                }
            }
            let v = eval(roots[i]);
            let norm = d.0 * d.0 + d.1 * d.1;
            if norm > 1e-300 {
                let q = ((v.0 * d.0 + v.1 * d.1) / norm, (v.1 * d.0 - v.0 * d.1) / norm);
                roots[i] = (roots[i].0 - q.0, roots[i].1 - q.1);
            }
        }
    }
    let mut moduli: Vec<f64> = roots
        .iter()
        .map(|z| (z.0 * z.0 + z.1 * z.1).sqrt())
        .collect();
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
    moduli
}

// JSON encoding: polynomials as arrays of "num/den" strings ascending by
// degree, rational functions as {"num": [...], "den": [...]}.

pub fn rat_to_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |txt: &str| -> Result<BigInt> {
        txt.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Input(format!("bad rational component: {txt:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Input("rational with zero denominator".into()));
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

impl Polynomial {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(rat_to_string(c)))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Input("polynomial must be a JSON array".into()))?;
        let mut coeffs = Vec::with_capacity(arr.len());
        for c in arr {
            let s = c
                .as_str()
                .ok_or_else(|| Error::Input("polynomial coefficients must be strings".into()))?;
            coeffs.push(rat_from_str(s)?);
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

impl RationalFunction {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "num": self.num.to_json(),
            "den": self.den.to_json(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let num = Polynomial::from_json(
            v.get("num")
                .ok_or_else(|| Error::Input("missing \"num\"".into()))?,
        )?;
        let den = Polynomial::from_json(
            v.get("den")
                .ok_or_else(|| Error::Input("missing \"den\"".into()))?,
        )?;
        RationalFunction::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    #[test]
    fn make_cancels_common_factor() {
        // (1 - t^2)/(1 - t) = 1 + t
        let r = rf(&[1, 0, -1], &[1, -1]);
        assert_eq!(r, rf(&[1, 1], &[1]));
    }

    #[test]
    fn make_zero_numerator() {
        let r = rf(&[], &[1, -1]);
        assert!(r.is_zero());
        assert_eq!(r.denominator(), &Polynomial::one());
    }

    #[test]
    fn make_scalar_normalization() {
        // 2/(2 - 2t) = 1/(1 - t)
        let r = rf(&[2], &[2, -2]);
        assert_eq!(r, rf(&[1], &[1, -1]));
        assert_eq!(r.denominator().coeff(0), rat(1));
    }

    #[test]
    fn zero_denominator_rejected() {
        let e = RationalFunction::new(Polynomial::one(), Polynomial::zero());
        assert!(matches!(e, Err(Error::DivisionByZero)));
    }

    #[test]
    fn arith_examples() {
        // 1/(1-t) - 1 = t/(1-t)
        let a = rf(&[1], &[1, -1]);
        let d = &a - &RationalFunction::one();
        assert_eq!(d, rf(&[0, 1], &[1, -1]));
        // (1/(1-t)) * (1/(1-2t)) = 1/(1 - 3t + 2t^2)
        let b = rf(&[1], &[1, -2]);
        assert_eq!(&a * &b, rf(&[1], &[1, -3, 2]));
        // x + (-x) = 0
        let x = rf(&[3, 1], &[1, 0, 7]);
        assert!((&x + &(-&x)).is_zero());
    }

    #[test]
    fn substitute_scaled_examples() {
        // 1/(1 - p^{-1} t^2) at t -> p^2 t with p = 3 gives 1/(1 - 27 t^2).
        let r = RationalFunction::new(
            Polynomial::one(),
            Polynomial::from_coeffs(vec![rat(1), rat(0), -ratio(1, 3)]),
        )
        .unwrap();
        let s = r.substitute_scaled(&rat(9)).unwrap();
        assert_eq!(s, rf(&[1], &[1, 0, -27]));
        // Identity substitution.
        let x = rf(&[1, 5], &[1, -1, 4]);
        assert_eq!(x.substitute_scaled(&rat(1)).unwrap(), x);
        // t -> p t on the monomial t.
        let t = RationalFunction::from_poly(Polynomial::t());
        assert_eq!(
            t.substitute_scaled(&rat(5)).unwrap(),
            RationalFunction::from_poly(Polynomial::from_ints(&[0, 5]))
        );
    }

    #[test]
    fn series_geometric() {
        let r = rf(&[1], &[1, -1]);
        assert_eq!(r.series(3).unwrap(), vec![rat(1), rat(1), rat(1), rat(1)]);
        let r2 = rf(&[1, 1], &[1, -1]);
        assert_eq!(r2.series(2).unwrap(), vec![rat(1), rat(2), rat(2)]);
    }

    #[test]
    fn series_requires_power_series() {
        let r = rf(&[1], &[0, 1]);
        assert!(matches!(r.series(2), Err(Error::NotPowerSeries)));
    }

    #[test]
    fn pole_profile_abelian_factors() {
        // 1/((1-t)(1-3t)(1-9t)) at p = 3: sigma 0, 1, 2, each simple.
        let den = &(&Polynomial::from_ints(&[1, -1]) * &Polynomial::from_ints(&[1, -3]))
            * &Polynomial::from_ints(&[1, -9]);
        let r = RationalFunction::new(Polynomial::one(), den).unwrap();
        let prof = pole_profile(&r, 3).unwrap();
        let sigmas: Vec<Rat> = prof.iter().map(|c| c.sigma.clone()).collect();
        assert_eq!(sigmas, vec![rat(0), rat(1), rat(2)]);
        assert!(prof.iter().all(|c| c.factor_mult == 1 && c.real_root_order == 1));
    }

    #[test]
    fn pole_profile_even_factor() {
        // 1/(1 - 4t^2) at p = 2: sigma = 1 with one factor and one positive
        // real root at t = 1/2.
        let r = rf(&[1], &[1, 0, -4]);
        let prof = pole_profile(&r, 2).unwrap();
        assert_eq!(prof.len(), 1);
        assert_eq!(prof[0].sigma, rat(1));
        assert_eq!(prof[0].factor_mult, 1);
        assert_eq!(prof[0].real_root_order, 1);
    }

    #[test]
    fn pole_profile_nonstandard_errors() {
        let r = rf(&[1], &[1, -1, -1]);
        match pole_profile(&r, 2) {
            Err(Error::NonStandardPole { moduli }) => assert_eq!(moduli.len(), 2),
            other => panic!("expected non-standard pole, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip() {
        let r = rf(&[1, 0, -7], &[2, 3]);
        let v = r.to_json();
        assert_eq!(RationalFunction::from_json(&v).unwrap(), r);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_laws(an in prop::collection::vec(-9i64..=9, 0..4),
                      bn in prop::collection::vec(-9i64..=9, 0..4),
                      cn in prop::collection::vec(-9i64..=9, 0..4)) {
            let mk = |v: &Vec<i64>, shift: i64| {
                let mut den = v.clone();
                den.push(shift.abs() + 1);
                rf(v, &den)
            };
            let a = mk(&an, 1);
            let b = mk(&bn, 2);
            let c = mk(&cn, 3);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!(&(a.div(&b).unwrap()) * &b, a);
            }
        }

        #[test]
        fn canonicalization_idempotent(n in prop::collection::vec(-9i64..=9, 1..5),
                                       d in prop::collection::vec(-9i64..=9, 1..5)) {
            prop_assume!(d.iter().any(|&x| x != 0));
            let r = rf(&n, &d);
            let rebuilt = RationalFunction::new(r.numerator().clone(), r.denominator().clone()).unwrap();
            prop_assert_eq!(rebuilt, r);
        }

        #[test]
        fn substitute_compose(c1 in 1i64..=6, c2 in 1i64..=6,
                              n in prop::collection::vec(-5i64..=5, 1..4)) {
            let r = rf(&n, &[1, 2, 3]);
            let lhs = r.substitute_scaled(&rat(c1)).unwrap().substitute_scaled(&rat(c2)).unwrap();
            let rhs = r.substitute_scaled(&rat(c1 * c2)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn series_cauchy_product(n1 in prop::collection::vec(-5i64..=5, 1..4),
                                 n2 in prop::collection::vec(-5i64..=5, 1..4)) {
            let a = rf(&n1, &[1, -1, 2]);
            let b = rf(&n2, &[1, 3]);
            let n = 8usize;
            let sa = a.series(n).unwrap();
            let sb = b.series(n).unwrap();
            let sp = (&a * &b).series(n).unwrap();
            for k in 0..=n {
                let mut acc = Rat::zero();
                for j in 0..=k {
                    acc += &sa[j] * &sb[k - j];
                }
                prop_assert_eq!(&acc, &sp[k]);
            }
        }
    }
}
