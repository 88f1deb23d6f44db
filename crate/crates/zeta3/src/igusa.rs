//! Igusa's local zeta function `Z_f(s) = ∫ |f(x)|_p^s dμ` over `Z_p^3` for a
//! ternary quadratic form `f`, as an exact rational function in `t = p^(-s)`.
//!
//! Strategy: strip the content `p^e` (which contributes a factor `t^e`);
//! the zero form integrates to 0. For odd `p` the form is diagonalized and
//! dispatched by rank: rank 1 has the classical closed form
//! `(1-p^(-1))/(1-p^(-1)t^2)`, rank 2 reduces to the binary-form family
//! `Z_(□,k)`/`Z_(⊠,k)` with its length-two recursion, rank 3 runs a
//! fixed-point descent over residue cells. For `p = 2` the function is
//! reconstructed from exact congruence counts against the pole ansatz
//! denominator `(1-p^(-3)t^2)(1-p^(-1)t)(1-p^(-1)t^2)(1-p^(-2)t^2)`.
//!
//! Every result, regardless of method, is verified against independent
//! counts through the Poincaré-series identity
//! `P_f(t) = (1 - t Z_f(s))/(1 - t)` up to the configured level.

use crate::counting;
use crate::lie3::QuadraticForm3;
use crate::ratfunc::{Polynomial, RationalFunction};
use crate::{pow_rat, rat, Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Verification depth used by [`igusa_zeta`]: the result is checked against
/// `N_0..N_level` through the Poincaré identity.
pub const DEFAULT_VERIFY_LEVEL: u32 = 6;

/// Square class of a p-adic unit, for odd `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    Square,
    NonSquare,
}

/// How a result was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Recursion,
    FixedPoint,
    Reconstruction,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Recursion => "recursion",
            Method::FixedPoint => "fixed_point",
            Method::Reconstruction => "reconstruction",
        }
    }
}

/// An Igusa zeta value together with the cone variant
/// `Z*_f = (1 - p^(-3) t^2) Z_f` and the verification depth reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IgusaResult {
    pub zeta: RationalFunction,
    pub cone_zeta: RationalFunction,
    pub method: Method,
    pub verification_level: u32,
}

impl IgusaResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "zeta": self.zeta.to_json(),
            "method": self.method.as_str(),
            "verified_to": self.verification_level,
        })
    }
}

/// Legendre symbol `(a/p)` for odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i32 {
    assert!(p > 2, "Legendre symbol needs an odd prime");
    let p = p as i128;
    let mut a = (a as i128).rem_euclid(p);
    if a == 0 {
        return 0;
    }
    // Euler criterion by square-and-multiply.
    let mut e = (p - 1) / 2;
    let mut base = a;
    a = 1;
    while e > 0 {
        if e & 1 == 1 {
            a = a * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    if a == 1 {
        1
    } else {
        -1
    }
}

/// Smallest positive non-residue mod `p` for odd `p`; 5 for `p = 2`
/// (representing the non-square unit class of -3 in `Z_2`).
pub fn rho(p: u64) -> i64 {
    if p == 2 {
        return 5;
    }
    (2..).find(|&r| legendre(r, p) == -1).unwrap()
}

fn class_of(a: i64, p: u64) -> SquareClass {
    if legendre(a, p) == 1 {
        SquareClass::Square
    } else {
        SquareClass::NonSquare
    }
}

/// A diagonalized form `u_1 p^(a_1) x_1^2 + u_2 p^(a_2) x_2^2 +
/// u_3 p^(a_3) x_3^2` equivalent to the input over `Z_p` (odd `p`).
///
/// `entries` lists the present variables sorted by exponent with their exact
/// unit parts and square classes; rank deficits appear as absent variables.
/// The integer witness conjugates the symmetrized input matrix to the
/// diagonal modulo `p^precision`.
#[derive(Clone, Debug)]
pub struct DiagonalForm {
    pub p: u64,
    pub entries: Vec<DiagEntry>,
    pub witness: [[BigInt; 3]; 3],
    pub precision: u32,
}

#[derive(Clone, Debug)]
pub struct DiagEntry {
    pub exponent: u32,
    pub class: SquareClass,
    pub unit: Rat,
}

impl DiagonalForm {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.exponent).collect()
    }
}

fn vp_rat(r: &Rat, p: u64) -> i64 {
    assert!(!r.is_zero());
    let p = BigInt::from(p);
    let mut v = 0i64;
    let mut n = r.numer().clone();
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    let mut d = r.denom().clone();
    while (&d % &p).is_zero() {
        d /= &p;
        v -= 1;
    }
    v
}

fn unit_part(r: &Rat, p: u64) -> Rat {
    let v = vp_rat(r, p);
    r * pow_rat(p, -v)
}

/// Residue of a p-integral rational mod `p^k`.
fn residue_mod(r: &Rat, p: u64, k: u32) -> BigInt {
    let m = BigInt::from(p).pow(k);
    let num = r.numer().mod_floor_big(&m);
    let den = r.denom().mod_floor_big(&m);
    let inv = mod_inverse(&den, &m).expect("denominator must be a p-adic unit");
    (num * inv) % m
}

trait ModFloor {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloor for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    // Extended Euclid.
    let (mut r0, mut r1) = (m.clone(), a.mod_floor_big(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.is_one() {
        Some(s0.mod_floor_big(m))
    } else {
        None
    }
}

/// Diagonalizes the symmetrized Gram matrix of `f` by congruence over the
/// p-local rationals (odd `p` only; the dyadic case goes through
/// reconstruction instead).
pub fn diagonalize(f: &QuadraticForm3) -> Result<DiagonalForm> {
    let p = f.p;
    if p == 2 {
        return Err(Error::IgusaFailed(
            "diagonalization unsupported at 2".into(),
        ));
    }
    // G = S/2, so f(x) = x G x^t with G symmetric over Z_(p).
    let s = f.symmetrized();
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let mut g: [[Rat; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| rat(s[i][j]) * &half));
    // Basis accumulator: columns are the new basis vectors, P^t G P = D.
    let mut basis: [[Rat; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() })
    });

    let col_op = |g: &mut [[Rat; 3]; 3], basis: &mut [[Rat; 3]; 3], dst: usize, src: usize, c: &Rat| {
        // e_dst <- e_dst + c * e_src, applied congruently.
        for r in 0..3 {
            let v = &g[r][src] * c;
            g[r][dst] += v;
        }
        for cc in 0..3 {
            let v = &g[src][cc] * c;
            g[dst][cc] += v;
        }
        for r in 0..3 {
            let v = &basis[r][src] * c;
            basis[r][dst] += v;
        }
    };
    let swap = |g: &mut [[Rat; 3]; 3], basis: &mut [[Rat; 3]; 3], a: usize, b: usize| {
        if a == b {
            return;
        }
        for r in 0..3 {
            g[r].swap(a, b);
        }
        g.swap(a, b);
        for r in 0..3 {
            basis[r].swap(a, b);
        }
    };

    for k in 0..3 {
        // Locate a minimal-valuation entry in the active block.
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..3 {
            for j in k..3 {
                if g[i][j].is_zero() {
                    continue;
                }
                let v = vp_rat(&g[i][j], p);
                if best.as_ref().map_or(true, |(bv, _, _)| v < *bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, bi, bj)) = best else {
            break; // remaining block vanishes: rank deficit
        };
        if bi != bj {
            // Move the minimal valuation onto the diagonal. One of the two
            // signs keeps it (their difference is 4 g_ij, a unit multiple).
            let v = vp_rat(&g[bi][bj], p);
            col_op(&mut g, &mut basis, bi, bj, &Rat::one());
            if g[bi][bi].is_zero() || vp_rat(&g[bi][bi], p) > v {
                col_op(&mut g, &mut basis, bi, bj, &rat(-2));
            }
        }
        swap(&mut g, &mut basis, k, bi);
        let pivot = g[k][k].clone();
        for j in (k + 1)..3 {
            if !g[k][j].is_zero() {
                let c = -(&g[k][j] / &pivot);
                col_op(&mut g, &mut basis, j, k, &c);
            }
        }
    }

    let mut entries: Vec<DiagEntry> = Vec::new();
    let mut max_exp = 0u32;
    for i in 0..3 {
        if g[i][i].is_zero() {
            continue;
        }
        let v = vp_rat(&g[i][i], p);
        debug_assert!(v >= 0, "diagonal entry with negative valuation");
        let u = unit_part(&g[i][i], p);
        let num_mod = residue_mod(&u, p, 1);
        let class = class_of(
            i64::try_from(num_mod).expect("residue fits in i64"),
            p,
        );
        max_exp = max_exp.max(v as u32);
        entries.push(DiagEntry {
            exponent: v as u32,
            class,
            unit: u,
        });
    }
    entries.sort_by_key(|e| e.exponent);

    let precision = 2 * max_exp + 6;
    let witness: [[BigInt; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| residue_mod(&basis[i][j], p, precision)));

    // Witness congruence: W^t S W ≡ 2D mod p^precision, checked exactly.
    let modulus = BigInt::from(p).pow(precision);
    let mut check = [[BigInt::zero(), BigInt::zero(), BigInt::zero()],
                     [BigInt::zero(), BigInt::zero(), BigInt::zero()],
                     [BigInt::zero(), BigInt::zero(), BigInt::zero()]];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = BigInt::zero();
            for a in 0..3 {
                for b in 0..3 {
                    acc += &witness[a][i] * BigInt::from(s[a][b]) * &witness[b][j];
                }
            }
            check[i][j] = acc.mod_floor_big(&modulus);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let expect = if i == j {
                residue_mod(&(&g[i][i] * rat(2)), p, precision)
            } else {
                BigInt::zero()
            };
            if check[i][j] != expect {
                return Err(Error::IgusaFailed(format!(
                    "diagonalization witness failed at ({i},{j})"
                )));
            }
        }
    }

    Ok(DiagonalForm {
        p,
        entries,
        witness,
        precision,
    })
}

/// `Z` of the binary form `x^2 - d y^2` with `v_p(d) = k` and unit part of
/// the given square class, for odd `p`, viewed inside `Z_p^3` with a dummy
/// variable (which leaves the value unchanged).
///
/// Base cases: `Z_(□,0) = ((1-p^(-1))/(1-p^(-1)t))^2`,
/// `Z_(⊠,0) = (1-p^(-2))/(1-p^(-2)t^2)`, `Z_(*,1) = (1-p^(-1))/(1-p^(-1)t)`,
/// and the length-two recursion `Z_(*,k+2) = p^(-1) t^2 Z_(*,k) + 1 - p^(-1)`.
pub fn binary_zeta(class: SquareClass, k: u32, p: u64) -> RationalFunction {
    assert!(p > 2, "binary form family is for odd p");
    let one_minus = |e: i64| -> RationalFunction {
        // 1 - p^e t as a rational function factor.
        RationalFunction::from_poly(Polynomial::from_coeffs(vec![rat(1), -pow_rat(p, e)]))
    };
    match k {
        0 => match class {
            SquareClass::Square => {
                let zeta1 = RationalFunction::constant(Rat::one() - pow_rat(p, -1))
                    .div(&one_minus(-1))
                    .unwrap();
                &zeta1 * &zeta1
            }
            SquareClass::NonSquare => {
                let num = RationalFunction::constant(Rat::one() - pow_rat(p, -2));
                let den = RationalFunction::from_poly(Polynomial::from_coeffs(vec![
                    rat(1),
                    Rat::zero(),
                    -pow_rat(p, -2),
                ]));
                num.div(&den).unwrap()
            }
        },
        1 => RationalFunction::constant(Rat::one() - pow_rat(p, -1))
            .div(&one_minus(-1))
            .unwrap(),
        _ => {
            let prev = binary_zeta(class, k - 2, p);
            let t2 = RationalFunction::from_poly(Polynomial::monomial(pow_rat(p, -1), 2));
            &(&t2 * &prev) + &RationalFunction::constant(Rat::one() - pow_rat(p, -1))
        }
    }
}

/// Unary closed form: `Z` of `u x^2` for a unit `u` equals
/// `(1-p^(-1))/(1-p^(-1)t^2)` at every prime.
fn unary_zeta(p: u64) -> RationalFunction {
    let num = RationalFunction::constant(Rat::one() - pow_rat(p, -1));
    let den = RationalFunction::from_poly(Polynomial::from_coeffs(vec![
        rat(1),
        Rat::zero(),
        -pow_rat(p, -1),
    ]));
    num.div(&den).unwrap()
}

/// Fixed-point descent over residue cells.
///
/// States are shifted quadratics `f(y) + h.y + c` with the quadratic part
/// fixed; a cell `y ≡ ȳ (mod p)` contributes `p^(-3)` when the value is a
/// unit, `p^(-3) t` on exact valuation 1 at a singular point,
/// `p^(-3) t (1-p^(-1))/(1-p^(-1)t)` at a smooth zero (Hensel tail), and
/// `p^(-3) t^2 Z_(state')` at a deeper singular point. The reachable state
/// set is finite, so the resulting linear system over Q(t) is solved
/// exactly; the self-loop of the initial state realizes the homogeneity
/// fixed point.
fn descent_zeta(f: &QuadraticForm3) -> Result<RationalFunction> {
    const MAX_STATES: usize = 512;
    let p = f.p as i128;
    let c = f.coefficients().map(|v| v as i128);
    let s = [
        [2 * c[0], c[3], c[4]],
        [c[3], 2 * c[1], c[5]],
        [c[4], c[5], 2 * c[2]],
    ];
    let eval = |h: &[i128; 3], k: i128, y: [i128; 3]| -> i128 {
        c[0] * y[0] * y[0]
            + c[1] * y[1] * y[1]
            + c[2] * y[2] * y[2]
            + c[3] * y[0] * y[1]
            + c[4] * y[0] * y[2]
            + c[5] * y[1] * y[2]
            + h[0] * y[0]
            + h[1] * y[1]
            + h[2] * y[2]
            + k
    };
    let grad = |h: &[i128; 3], y: [i128; 3]| -> [i128; 3] {
        std::array::from_fn(|i| s[i][0] * y[0] + s[i][1] * y[1] + s[i][2] * y[2] + h[i])
    };

    let mut index: BTreeMap<([i128; 3], i128), usize> = BTreeMap::new();
    let mut order: Vec<([i128; 3], i128)> = vec![([0, 0, 0], 0)];
    index.insert(([0, 0, 0], 0), 0);
    struct Row {
        konst: RationalFunction,
        edges: BTreeMap<usize, u64>,
    }
    let mut rows: Vec<Row> = Vec::new();
    let p_u64 = f.p;
    let pm3 = pow_rat(p_u64, -3);
    let zeta1 = unary_smooth_tail(p_u64);

    let mut cursor = 0;
    while cursor < order.len() {
        let (h, k) = order[cursor];
        cursor += 1;
        let mut n_unit = 0u64;
        let mut n_val1 = 0u64;
        let mut n_smooth = 0u64;
        let mut edges: BTreeMap<([i128; 3], i128), u64> = BTreeMap::new();
        for y0 in 0..p {
            for y1 in 0..p {
                for y2 in 0..p {
                    let y = [y0, y1, y2];
                    let w = eval(&h, k, y);
                    if w.rem_euclid(p) != 0 {
                        n_unit += 1;
                        continue;
                    }
                    let g = grad(&h, y);
                    if g.iter().any(|v| v.rem_euclid(p) != 0) {
                        n_smooth += 1;
                    } else if w.rem_euclid(p * p) != 0 {
                        n_val1 += 1;
                    } else {
                        let succ = (std::array::from_fn(|i| g[i] / p), w / (p * p));
                        *edges.entry(succ).or_insert(0) += 1;
                    }
                }
            }
        }
        let mut konst = RationalFunction::constant(rat(n_unit as i64) * &pm3);
        if n_val1 > 0 {
            konst = &konst
                + &RationalFunction::from_poly(Polynomial::monomial(
                    rat(n_val1 as i64) * &pm3,
                    1,
                ));
        }
        if n_smooth > 0 {
            let tail = RationalFunction::from_poly(Polynomial::monomial(
                rat(n_smooth as i64) * &pm3,
                1,
            ));
            konst = &konst + &(&tail * &zeta1);
        }
        let mut edge_idx: BTreeMap<usize, u64> = BTreeMap::new();
        for (state, mult) in edges {
            let id = *index.entry(state).or_insert_with(|| {
                order.push(state);
                order.len() - 1
            });
            *edge_idx.entry(id).or_insert(0) += mult;
        }
        if order.len() > MAX_STATES {
            return Err(Error::IgusaFailed("descent state explosion".into()));
        }
        rows.push(Row {
            konst,
            edges: edge_idx,
        });
    }

    // Solve (I - p^(-3) t^2 M) Z = konst.
    let n = rows.len();
    let t2 = Polynomial::monomial(pm3.clone(), 2);
    let mut a: Vec<Vec<RationalFunction>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v = if i == j {
                        RationalFunction::one()
                    } else {
                        RationalFunction::zero()
                    };
                    if let Some(&mult) = rows[i].edges.get(&j) {
                        let m = RationalFunction::from_poly(t2.scale(&rat(mult as i64)));
                        v = &v - &m;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let mut b: Vec<RationalFunction> = rows.iter().map(|r| r.konst.clone()).collect();

    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::IgusaFailed("singular descent system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&a[col][col])?;
            for cc in col..n {
                let v = &factor * &a[col][cc];
                a[r][cc] = &a[r][cc] - &v;
            }
            let v = &factor * &b[col];
            b[r] = &b[r] - &v;
        }
    }
    let mut x = vec![RationalFunction::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for cc in (r + 1)..n {
            let v = &a[r][cc] * &x[cc];
            acc = &acc - &v;
        }
        x[r] = acc.div(&a[r][r])?;
    }
    Ok(x[0].clone())
}

/// The Hensel tail `∫ |g|^s` for a polynomial with unit gradient:
/// `(1-p^(-1))/(1-p^(-1)t)`.
fn unary_smooth_tail(p: u64) -> RationalFunction {
    RationalFunction::constant(Rat::one() - pow_rat(p, -1))
        .div(&RationalFunction::from_poly(Polynomial::from_coeffs(vec![
            rat(1),
            -pow_rat(p, -1),
        ])))
        .unwrap()
}

/// Content of the form: the minimal `v_p` over the six coefficients.
fn content(f: &QuadraticForm3) -> u32 {
    let p = f.p as i64;
    f.coefficients()
        .iter()
        .filter(|&&c| c != 0)
        .map(|&c| {
            let mut v = 0u32;
            let mut c = c;
            while c % p == 0 {
                c /= p;
                v += 1;
            }
            v
        })
        .min()
        .unwrap_or(0)
}

fn strip_content(f: &QuadraticForm3, e: u32) -> QuadraticForm3 {
    let d = (f.p as i64).pow(e);
    let c = f.coefficients();
    QuadraticForm3::from_coefficients(c.map(|v| v / d), f.p)
}

/// The pole ansatz denominator
/// `(1-p^(-3)t^2)(1-p^(-1)t)(1-p^(-1)t^2)(1-p^(-2)t^2)`.
fn ansatz_denominator(p: u64) -> Polynomial {
    let f1 = Polynomial::from_coeffs(vec![rat(1), Rat::zero(), -pow_rat(p, -3)]);
    let f2 = Polynomial::from_coeffs(vec![rat(1), -pow_rat(p, -1)]);
    let f3 = Polynomial::from_coeffs(vec![rat(1), Rat::zero(), -pow_rat(p, -1)]);
    let f4 = Polynomial::from_coeffs(vec![rat(1), Rat::zero(), -pow_rat(p, -2)]);
    &(&(&f1 * &f2) * &f3) * &f4
}

/// Rational reconstruction of `Z_f` from exact counts: writes
/// `t Z = 1 - (1-t) P_f(t)` with `Z = U/V` for the ansatz denominator `V`,
/// reads off the numerator coefficients (degree <= deg V + 1) and verifies
/// the four following levels.
pub fn reconstruct_from_counts(f: &QuadraticForm3) -> Result<IgusaResult> {
    let zeta = reconstruct_zeta(f)?;
    finish(f, zeta, Method::Reconstruction, DEFAULT_VERIFY_LEVEL)
}

fn reconstruct_zeta(f: &QuadraticForm3) -> Result<RationalFunction> {
    if f.is_zero_form() {
        return Ok(RationalFunction::zero());
    }
    let e = content(f);
    let g = strip_content(f, e);
    let p = f.p;
    let v = ansatz_denominator(p);
    let deg_v = v.degree().unwrap();
    let deg_u = deg_v + 1;
    let solve_to = deg_u + 1; // coefficients t^1..t^(deg_u+1) determine U
    let check_to = solve_to + 4;
    let mut counter = counting::Counter::new(&g);
    let pser: Vec<Rat> = (0..=check_to as u32)
        .map(|m| {
            Rat::from_integer(BigInt::from(counter.affine(m))) * pow_rat(p, -3 * m as i64)
        })
        .collect();
    // rhs = V - V (1-t) P, truncated.
    let one_minus_t = Polynomial::from_ints(&[1, -1]);
    let vp = &v * &one_minus_t;
    let mut rhs = vec![Rat::zero(); check_to + 1];
    for k in 0..=check_to {
        let mut acc = v.coeff(k);
        for j in 0..=k {
            let c = vp.coeff(j);
            if !c.is_zero() {
                acc -= c * &pser[k - j];
            }
        }
        rhs[k] = acc;
    }
    if !rhs[0].is_zero() {
        return Err(Error::ReconstructionInconsistent(
            "constant term of t*U is nonzero".into(),
        ));
    }
    let u = Polynomial::from_coeffs(rhs[1..=deg_u + 1].to_vec());
    for (k, item) in rhs.iter().enumerate().take(check_to + 1).skip(deg_u + 2) {
        if !item.is_zero() {
            return Err(Error::ReconstructionInconsistent(format!(
                "verification level {k} fails for the ansatz denominator"
            )));
        }
    }
    let base = RationalFunction::new(u, v)?;
    let shift = RationalFunction::from_poly(Polynomial::monomial(Rat::one(), e as usize));
    Ok(&shift * &base)
}

/// Igusa's local zeta function of `f`, with the method recorded and the
/// result verified against counts up to [`DEFAULT_VERIFY_LEVEL`].
pub fn igusa_zeta(f: &QuadraticForm3) -> Result<IgusaResult> {
    igusa_zeta_verified(f, DEFAULT_VERIFY_LEVEL)
}

pub fn igusa_zeta_verified(f: &QuadraticForm3, verify_level: u32) -> Result<IgusaResult> {
    if f.is_zero_form() {
        // |0|^s integrates to 0.
        return Ok(IgusaResult {
            zeta: RationalFunction::zero(),
            cone_zeta: RationalFunction::zero(),
            method: Method::ClosedForm,
            verification_level: verify_level,
        });
    }
    let e = content(f);
    let g = strip_content(f, e);
    let p = f.p;
    let (z_g, method) = if p == 2 {
        (reconstruct_zeta(&g)?, Method::Reconstruction)
    } else {
        let diag = diagonalize(&g)?;
        match diag.rank() {
            1 => (unary_zeta(p), Method::ClosedForm),
            2 => {
                let u1 = &diag.entries[0].unit;
                let u2 = &diag.entries[1].unit;
                let d_unit = -(u1 * u2);
                let d_res = i64::try_from(residue_mod(&d_unit, p, 1)).expect("small residue");
                (
                    binary_zeta(class_of(d_res, p), diag.entries[1].exponent, p),
                    Method::Recursion,
                )
            }
            3 => {
                let model: Vec<i64> = diag
                    .entries
                    .iter()
                    .map(|en| {
                        let u = match en.class {
                            SquareClass::Square => 1i64,
                            SquareClass::NonSquare => rho(p),
                        };
                        u * (p as i64).pow(en.exponent)
                    })
                    .collect();
                let diag_form = QuadraticForm3::diagonal([model[0], model[1], model[2]], p);
                match descent_zeta(&diag_form) {
                    Ok(z) => (z, Method::FixedPoint),
                    Err(_) => (reconstruct_zeta(&g)?, Method::Reconstruction),
                }
            }
            r => {
                return Err(Error::IgusaFailed(format!(
                    "unexpected rank {r} for a nonzero form"
                )))
            }
        }
    };
    let shift = RationalFunction::from_poly(Polynomial::monomial(Rat::one(), e as usize));
    let zeta = &shift * &z_g;
    finish(f, zeta, method, verify_level)
}

/// Attaches the cone zeta and runs the count verification.
fn finish(
    f: &QuadraticForm3,
    zeta: RationalFunction,
    method: Method,
    verify_level: u32,
) -> Result<IgusaResult> {
    verify_against_counts(f, &zeta, verify_level)?;
    let cone_factor = RationalFunction::from_poly(Polynomial::from_coeffs(vec![
        rat(1),
        Rat::zero(),
        -pow_rat(f.p, -3),
    ]));
    let cone_zeta = if f.is_zero_form() {
        RationalFunction::zero()
    } else {
        &cone_factor * &zeta
    };
    Ok(IgusaResult {
        zeta,
        cone_zeta,
        method,
        verification_level: verify_level,
    })
}

/// Checks `P_f(t) = (1 - t Z)/(1 - t)` coefficient-wise against independent
/// counts for `m <= level`.
pub fn verify_against_counts(
    f: &QuadraticForm3,
    zeta: &RationalFunction,
    level: u32,
) -> Result<()> {
    let t = RationalFunction::from_poly(Polynomial::t());
    let one_minus_t =
        RationalFunction::from_poly(Polynomial::from_ints(&[1, -1]));
    let poincare = (&RationalFunction::one() - &(&t * zeta)).div(&one_minus_t)?;
    let series = poincare.series(level as usize)?;
    let mut counter = counting::Counter::new(f);
    for (m, coeff) in series.iter().enumerate() {
        let expect = Rat::from_integer(BigInt::from(counter.affine(m as u32)))
            * pow_rat(f.p, -3 * m as i64);
        if coeff != &expect {
            return Err(Error::Verification(format!(
                "Poincare identity fails at level {m}: series gives {coeff}, counts give {expect}"
            )));
        }
    }
    Ok(())
}
