//! 3-dimensional Lie algebras over Z_p and their associated ternary
//! quadratic forms.
//!
//! An algebra is stored through its structure constants `lambda[i][j][k]`
//! with `[e_i, e_j] = sum_k lambda[i][j][k] e_k`. Only antisymmetry is ever
//! used; the Jacobi identity is reported informationally but nothing
//! depends on it.
//!
//! The associated form is
//!
//! ```text
//!     f(x) = L_23(x) x_1 - L_13(x) x_2 + L_12(x) x_3,
//! ```
//!
//! where `L_ij(y) = sum_k lambda[i][j][k] y_k` are the entries of the
//! commutator matrix `R(y)`. In matrix terms `f(x) = x A x^t` where the
//! columns of `A` are `(lambda_23^k)`, `(lambda_31^k)`, `(lambda_12^k)`.
//! A change of basis by `P` transforms `A` into
//! `A' = det(P) P^(-1) A (P^(-1))^t`; forms related this way are called
//! equivalent, and the subalgebra zeta function depends only on the
//! equivalence class.

use crate::{Error, Rat, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A 3-dimensional algebra given by an antisymmetric structure tensor,
/// together with the scaling exponent `i` marking the algebra `p^i * L`.
///
/// The tensor is stored unscaled; the exponent is applied where it has
/// mathematical effect (form extraction, oracle brackets, zeta assembly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra3 {
    lambda: [[[i64; 3]; 3]; 3],
    pub scale: u32,
    pub label: Option<String>,
}

impl LieAlgebra3 {
    /// Builds an algebra from bracket entries `(i, j, k, value)` with
    /// 1-based indices and `i < j`; the antisymmetric completion is implied.
    pub fn from_brackets(entries: &[(usize, usize, usize, i64)], scale: u32) -> Result<Self> {
        let mut lambda = [[[0i64; 3]; 3]; 3];
        for &(i, j, k, v) in entries {
            if !(1..=3).contains(&i) || !(1..=3).contains(&j) || !(1..=3).contains(&k) {
                return Err(Error::Input(format!(
                    "lambda index out of range: ({i},{j},{k})"
                )));
            }
            if i >= j {
                return Err(Error::Input(format!(
                    "lambda entries must have i < j, got ({i},{j},{k})"
                )));
            }
            lambda[i - 1][j - 1][k - 1] += v;
            lambda[j - 1][i - 1][k - 1] -= v;
        }
        Ok(LieAlgebra3 {
            lambda,
            scale,
            label: None,
        })
    }

    /// Wraps a full tensor, validating antisymmetry.
    pub fn from_tensor(lambda: [[[i64; 3]; 3]; 3], scale: u32) -> Result<Self> {
        let alg = LieAlgebra3 {
            lambda,
            scale,
            label: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    pub fn with_scale(mut self, scale: u32) -> Self {
        self.scale = scale;
        self
    }

    /// The abelian algebra (all brackets zero).
    pub fn abelian() -> Self {
        LieAlgebra3 {
            lambda: [[[0; 3]; 3]; 3],
            scale: 0,
            label: None,
        }
    }

    pub fn lambda(&self, i: usize, j: usize, k: usize) -> i64 {
        self.lambda[i][j][k]
    }

    /// Checks antisymmetry (`lambda_ij^k = -lambda_ji^k`, hence zero
    /// diagonal). Violations name the offending 1-based `(i, j, k)`.
    pub fn validate(&self) -> Result<()> {
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if self.lambda[i][j][k] != -self.lambda[j][i][k] {
                        return Err(Error::Antisymmetry(i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether the Jacobi identity holds. Informational: the zeta theory
    /// needs antisymmetry only.
    pub fn jacobi_holds(&self) -> bool {
        // With antisymmetry, the only nontrivial instance is (e1, e2, e3).
        for k in 0..3 {
            let mut acc: i128 = 0;
            for m in 0..3 {
                acc += self.lambda[0][1][m] as i128 * self.lambda[m][2][k] as i128;
                acc += self.lambda[1][2][m] as i128 * self.lambda[m][0][k] as i128;
                acc += self.lambda[2][0][m] as i128 * self.lambda[m][1][k] as i128;
            }
            if acc != 0 {
                return false;
            }
        }
        true
    }

    /// The antisymmetric matrix `R(y)` with entries `L_ij(y)`.
    pub fn commutator_matrix(&self, y: [i64; 3]) -> [[i64; 3]; 3] {
        let mut r = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc: i128 = 0;
                for k in 0..3 {
                    acc += self.lambda[i][j][k] as i128 * y[k] as i128;
                }
                r[i][j] = i128_to_i64(acc);
            }
        }
        r
    }

    /// Bracket of two coordinate vectors, including the `p^i` scale.
    pub fn bracket(&self, p: u64, u: [i64; 3], v: [i64; 3]) -> [i128; 3] {
        let s = (p as i128).pow(self.scale);
        let mut out = [0i128; 3];
        for i in 0..3 {
            for j in 0..3 {
                let c = u[i] as i128 * v[j] as i128;
                if c == 0 {
                    continue;
                }
                for k in 0..3 {
                    out[k] += c * self.lambda[i][j][k] as i128 * s;
                }
            }
        }
        out
    }

    /// The associated ternary quadratic form at the prime `p`, scaled by
    /// `p^i` when the algebra carries a scaling exponent `i`.
    pub fn extract_form(&self, p: u64) -> QuadraticForm3 {
        let s = (p as i64).pow(self.scale);
        let l = &self.lambda;
        let mut a = [[0i64; 3]; 3];
        for k in 0..3 {
            a[k][0] = l[1][2][k] * s;
            a[k][1] = l[2][0][k] * s;
            a[k][2] = l[0][1][k] * s;
        }
        QuadraticForm3 { a, p }
    }
}

fn i128_to_i64(v: i128) -> i64 {
    i64::try_from(v).expect("structure constant overflow")
}

/// A ternary quadratic form `f(x) = x A x^t` with integer coefficient
/// matrix `A` (not necessarily symmetric) at a fixed prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm3 {
    pub a: [[i64; 3]; 3],
    pub p: u64,
}

impl QuadraticForm3 {
    pub fn new(a: [[i64; 3]; 3], p: u64) -> Self {
        QuadraticForm3 { a, p }
    }

    pub fn zero(p: u64) -> Self {
        QuadraticForm3 { a: [[0; 3]; 3], p }
    }

    /// Diagonal form `d1 x1^2 + d2 x2^2 + d3 x3^2`.
    pub fn diagonal(d: [i64; 3], p: u64) -> Self {
        let mut a = [[0i64; 3]; 3];
        for i in 0..3 {
            a[i][i] = d[i];
        }
        QuadraticForm3 { a, p }
    }

    /// Rebuilds a form from its six coefficients
    /// `(c11, c22, c33, c12, c13, c23)` as an upper-triangular matrix.
    pub fn from_coefficients(c: [i64; 6], p: u64) -> Self {
        QuadraticForm3 {
            a: [[c[0], c[3], c[4]], [0, c[1], c[5]], [0, 0, c[2]]],
            p,
        }
    }

    pub fn eval(&self, x: [i64; 3]) -> i128 {
        let mut acc: i128 = 0;
        for i in 0..3 {
            for j in 0..3 {
                acc += x[i] as i128 * self.a[i][j] as i128 * x[j] as i128;
            }
        }
        acc
    }

    /// The six form coefficients `(c11, c22, c33, c12, c13, c23)` with
    /// `f = sum c_ii x_i^2 + sum_{i<j} c_ij x_i x_j`.
    pub fn coefficients(&self) -> [i64; 6] {
        let a = &self.a;
        [
            a[0][0],
            a[1][1],
            a[2][2],
            a[0][1] + a[1][0],
            a[0][2] + a[2][0],
            a[1][2] + a[2][1],
        ]
    }

    /// Whether `f` vanishes identically (equivalently `A` is antisymmetric).
    pub fn is_zero_form(&self) -> bool {
        self.coefficients().iter().all(|&c| c == 0)
    }

    /// The symmetrized matrix `S = A + A^t`, so `f(x) = x S x^t / 2`.
    pub fn symmetrized(&self) -> [[i64; 3]; 3] {
        let mut s = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                s[i][j] = self.a[i][j] + self.a[j][i];
            }
        }
        s
    }

    /// Multiplies the form by `p^e`.
    pub fn scaled_by_prime_power(&self, e: u32) -> Self {
        let s = (self.p as i64).pow(e);
        let mut a = self.a;
        for row in a.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        QuadraticForm3 { a, p: self.p }
    }
}

/// An integral basis change at a fixed prime. For the equivalence action the
/// determinant must be a p-adic unit, but lattice-changing matrices (det
/// divisible by p) are accepted whenever the transformed object stays
/// integral; that is exactly the condition under which the result is again
/// an algebra over Z_p in the new basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub m: [[i64; 3]; 3],
    pub p: u64,
}

impl BasisChange {
    pub fn new(m: [[i64; 3]; 3], p: u64) -> Self {
        BasisChange { m, p }
    }

    pub fn identity(p: u64) -> Self {
        BasisChange {
            m: [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            p,
        }
    }

    pub fn det(&self) -> i128 {
        det3_i64(&self.m)
    }

    pub fn is_unit(&self) -> bool {
        let d = self.det();
        d != 0 && d.rem_euclid(self.p as i128) != 0
    }
}

fn det3_i64(m: &[[i64; 3]; 3]) -> i128 {
    let m = |i: usize, j: usize| m[i][j] as i128;
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

fn rat_mat(m: &[[i64; 3]; 3]) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| crate::rat(m[i][j])))
}

pub(crate) fn mat_mul(a: &[[Rat; 3]; 3], b: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum::<Rat>())
    })
}

pub(crate) fn mat_transpose(a: &[[Rat; 3]; 3]) -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Exact inverse of an integer 3x3 matrix with nonzero determinant.
pub(crate) fn mat_inverse(m: &[[i64; 3]; 3]) -> Result<[[Rat; 3]; 3]> {
    let det = det3_i64(m);
    if det == 0 {
        return Err(Error::NotInvertible("determinant is zero".into()));
    }
    let det = Rat::from_integer(BigInt::from(det));
    let c = |i: usize, j: usize| m[i][j] as i128;
    // Adjugate entries: inv[j][i] = cofactor(i, j) / det.
    let cof = |i: usize, j: usize| -> i128 {
        let (r1, r2) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let (c1, c2) = match j {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let minor = c(r1, c1) * c(r2, c2) - c(r1, c2) * c(r2, c1);
        if (i + j) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| Rat::from_integer(BigInt::from(cof(j, i))) / &det)
    }))
}

fn rat_to_i64(r: &Rat) -> Option<i64> {
    if !r.denom().is_one() {
        return None;
    }
    r.numer().to_string().parse::<i64>().ok()
}

/// Structure constants of the same bracket in the basis
/// `e_i' = sum_j P_ij e_j`.
///
/// Computed exactly over Q; errors if the new constants are not integers
/// (for det(P) a p-adic unit that only happens when P is not invertible
/// over Z, for det(P) divisible by p it means the rows do not span a
/// bracket-closed lattice).
pub fn change_basis(alg: &LieAlgebra3, ch: &BasisChange) -> Result<LieAlgebra3> {
    alg.validate()?;
    let det = ch.det();
    if det == 0 {
        return Err(Error::NotInvertible("determinant is zero".into()));
    }
    let pinv = mat_inverse(&ch.m)?;
    let p = &ch.m;
    let mut lambda = [[[0i64; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // [e_i', e_j'] = sum_{a,b} P_ia P_jb [e_a, e_b], re-expressed in
            // the primed basis via P^(-1).
            let mut coeff_c = [Rat::zero(), Rat::zero(), Rat::zero()];
            for a in 0..3 {
                for b in 0..3 {
                    let w = p[i][a] as i128 * p[j][b] as i128;
                    if w == 0 {
                        continue;
                    }
                    let w = Rat::from_integer(BigInt::from(w));
                    for (cc, coeff) in coeff_c.iter_mut().enumerate() {
                        if alg.lambda[a][b][cc] != 0 {
                            *coeff += &w * crate::rat(alg.lambda[a][b][cc]);
                        }
                    }
                }
            }
            for d in 0..3 {
                let mut v = Rat::zero();
                for (cc, coeff) in coeff_c.iter().enumerate() {
                    v += coeff * &pinv[cc][d];
                }
                lambda[i][j][d] = rat_to_i64(&v).ok_or_else(|| {
                    if det.rem_euclid(ch.p as i128) == 0 {
                        Error::NotInvertible("not invertible over Z_p".into())
                    } else {
                        Error::NotIntegral(format!(
                            "new constant lambda_{}{}^{} = {} is not an integer",
                            i + 1,
                            j + 1,
                            d + 1,
                            v
                        ))
                    }
                })?;
            }
        }
    }
    Ok(LieAlgebra3 {
        lambda,
        scale: alg.scale,
        label: alg.label.clone(),
    })
}

/// The equivalence action on forms: `A' = det(P) (P^(-1))^t A P^(-1)`.
///
/// This is the unique scaling of the classical congruence action that makes
/// form extraction equivariant: with `e_i' = sum_j P_ij e_j`, the form of
/// the transformed structure constants equals the transform of the form,
/// entry for entry (checked in the tests and in the acceptance suite).
pub fn transform_form(f: &QuadraticForm3, ch: &BasisChange) -> Result<QuadraticForm3> {
    let det = ch.det();
    if det == 0 {
        return Err(Error::NotInvertible("determinant is zero".into()));
    }
    let pinv = mat_inverse(&ch.m)?;
    let a = rat_mat(&f.a);
    let prod = mat_mul(&mat_mul(&mat_transpose(&pinv), &a), &pinv);
    let det = Rat::from_integer(BigInt::from(det));
    let mut out = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let v = &prod[i][j] * &det;
            out[i][j] = rat_to_i64(&v).ok_or_else(|| {
                Error::NotIntegral(format!("transformed entry A'[{}][{}] = {}", i + 1, j + 1, v))
            })?;
        }
    }
    Ok(QuadraticForm3 { a: out, p: f.p })
}

// Algebra JSON: {"p": int, "scale": int, "lambda": [[i, j, k, value], ...]}
// listing only i < j entries; the antisymmetric completion is implied.

pub fn algebra_to_json(alg: &LieAlgebra3, p: u64) -> serde_json::Value {
    let mut entries = vec![];
    for i in 0..3 {
        for j in (i + 1)..3 {
            for k in 0..3 {
                let v = alg.lambda[i][j][k];
                if v != 0 {
                    entries.push(serde_json::json!([i + 1, j + 1, k + 1, v]));
                }
            }
        }
    }
    let mut obj = serde_json::json!({
        "p": p,
        "scale": alg.scale,
        "lambda": entries,
    });
    if let Some(label) = &alg.label {
        obj["label"] = serde_json::Value::String(label.clone());
    }
    obj
}

pub fn algebra_from_json(v: &serde_json::Value) -> Result<(LieAlgebra3, u64)> {
    let p = v
        .get("p")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::Input("missing or invalid \"p\"".into()))?;
    let scale = v.get("scale").and_then(|x| x.as_u64()).unwrap_or(0) as u32;
    let lambda = v
        .get("lambda")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Input("missing \"lambda\" array".into()))?;
    let mut entries = Vec::with_capacity(lambda.len());
    for item in lambda {
        let quad = item
            .as_array()
            .filter(|a| a.len() == 4)
            .ok_or_else(|| Error::Input("lambda entries must be [i, j, k, value]".into()))?;
        let idx = |n: usize| -> Result<usize> {
            quad[n]
                .as_u64()
                .map(|v| v as usize)
                .ok_or_else(|| Error::Input("lambda indices must be integers".into()))
        };
        let val = quad[3]
            .as_i64()
            .ok_or_else(|| Error::Input("lambda value must be an integer".into()))?;
        entries.push((idx(0)?, idx(1)?, idx(2)?, val));
    }
    let mut alg = LieAlgebra3::from_brackets(&entries, scale)?;
    if let Some(label) = v.get("label").and_then(|x| x.as_str()) {
        alg = alg.with_label(label);
    }
    alg.validate()?;
    Ok((alg, p))
}

pub fn form_to_json(f: &QuadraticForm3) -> serde_json::Value {
    serde_json::json!({
        "p": f.p,
        "matrix": f.a.iter().map(|row| row.to_vec()).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
pub(crate) mod testutil {
    use super::*;

    pub fn heisenberg() -> LieAlgebra3 {
        LieAlgebra3::from_brackets(&[(1, 2, 3, 1)], 0).unwrap()
    }

    pub fn sl2() -> LieAlgebra3 {
        LieAlgebra3::from_brackets(&[(1, 2, 3, 1), (1, 3, 1, -2), (2, 3, 2, 2)], 0).unwrap()
    }
}
