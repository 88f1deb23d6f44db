//! Exact computation of subalgebra zeta functions of 3-dimensional Lie
//! algebras over the p-adic integers.
//!
//! For a Z_p-algebra `L` free of rank 3 as a Z_p-module, the subalgebra zeta
//! function is the Dirichlet series
//!
//! ```text
//!     zeta_L(s) = sum over finite-index subalgebras H of |L : H|^(-s),
//! ```
//!
//! a rational function in `t = p^(-s)`. Every such zeta function is governed
//! by a single ternary quadratic form `f` built from the structure constants
//! of `L`:
//!
//! ```text
//!     zeta_{p^i L}(s) = zeta_{Z_p^3}(s)
//!         - Z_f(s-2) zeta_p(2s-2) zeta_p(s-2) p^((2-s)(i+1)) (1-p^(-1))^(-1),
//! ```
//!
//! where `Z_f` is Igusa's local zeta function of `f`. This crate implements
//! the whole pipeline in exact arithmetic:
//!
//! * [`ratfunc`] — polynomials and rational functions in `t` over exact
//!   rationals, with series expansion and pole factorization;
//! * [`lie3`] — the algebra model, the associated quadratic form, and basis
//!   changes;
//! * [`counting`] — exact counts of `f ≡ 0 mod p^m`, affine and in the
//!   primitive cone, with a naive and a recursive-descent backend;
//! * [`igusa`] — Igusa local zeta functions of ternary quadratic forms via
//!   diagonalization, binary-form recursions, fixed-point descent, and
//!   rational reconstruction from counts;
//! * [`zeta`] — assembly of the subalgebra zeta function, a fully
//!   independent second route through the lattice-class decomposition, and
//!   pole/coefficient/growth analysis;
//! * [`oracle`] — brute-force ground truth by Hermite-normal-form sublattice
//!   enumeration and bracket-closure testing;
//! * [`catalog`] — built-in constructors for the standard algebras
//!   (abelian, Heisenberg, sl2, sl1 of the quaternion order, and the soluble
//!   families) together with their published zeta functions;
//! * [`render`] — LaTeX and plain-text emitters.
//!
//! Everything is deterministic and exact; no floating point enters any
//! result (a numerical root finder is used only to format diagnostics when a
//! denominator fails to factor into the expected shape).

pub mod catalog;
pub mod counting;
pub mod igusa;
pub mod lie3;
pub mod oracle;
pub mod ratfunc;
pub mod render;
pub mod zeta;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar used throughout.
pub type Rat = BigRational;

/// Convenience constructor for an integer rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Convenience constructor for `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `p^k` as an exact rational, `k` possibly negative.
pub fn pow_rat(p: u64, k: i64) -> Rat {
    let b = BigInt::from(p);
    if k >= 0 {
        Rat::from_integer(b.pow(k as u32))
    } else {
        Rat::new(BigInt::from(1), b.pow((-k) as u32))
    }
}

/// Errors produced by the engine.
///
/// Exit-code mapping in the CLI: mathematical verification failures map to
/// exit 1, input/usage problems to exit 2.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("not a power series: denominator constant term is zero")]
    NotPowerSeries,
    #[error("non-standard pole: denominator does not factor into (1 - p^a t^b) terms; root moduli: {moduli:?}")]
    NonStandardPole { moduli: Vec<f64> },
    #[error("antisymmetry violation at (i,j,k) = ({0}, {1}, {2})")]
    Antisymmetry(usize, usize, usize),
    #[error("not invertible over Z_p: {0}")]
    NotInvertible(String),
    #[error("basis change does not preserve integral structure: {0}")]
    NotIntegral(String),
    #[error("count infeasible: level {m} at p = {p} exceeds the naive bound")]
    CountInfeasible { p: u64, m: u32 },
    #[error("igusa evaluation failed: {0}")]
    IgusaFailed(String),
    #[error("reconstruction inconsistent: {0}")]
    ReconstructionInconsistent(String),
    #[error("invalid zeta expansion: {0}")]
    InvalidZetaExpansion(String),
    #[error("oracle budget exceeded: {0} sublattices requested, budget {1}")]
    OracleBudget(u64, u64),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
