//! Odd Jacobi theta function and the bracket family entering every face
//! weight: the normalized elliptic bracket `[z]`, and its trigonometric and
//! hyperbolic degenerations.

use crate::error::{Error, Result};
use crate::fiber::C64;

/// Default truncation tolerance; downstream checks use tolerances at least
/// ten times looser.
pub const THETA_TOL_DEFAULT: f64 = 1e-13;

const MAX_TERM_PAIRS: usize = 10_000;

/// Odd Jacobi theta function
/// `theta(z, tau) = -sum_n exp(i pi (n+1/2)^2 tau + 2 pi i (n+1/2)(z+1/2))`.
///
/// The sum runs symmetrically over the pairs `n = m` and `n = -1-m`, which
/// share the half-integer index magnitude `m + 1/2`, and stops once the last
/// included pair has magnitude below `tol * (|partial sum| + 1)`.
pub fn theta(z: C64, tau: C64, tol: f64) -> Result<C64> {
    theta_series(z, tau, tol).map(|(value, _)| value)
}

/// Derivative `theta'(0, tau)` by the term-wise differentiated series:
/// `theta'(0, tau) = 4 pi sum_{m>=0} (-1)^m (m+1/2) exp(i pi (m+1/2)^2 tau)`.
pub fn theta_deriv0(tau: C64, tol: f64) -> Result<C64> {
    check_tau_tol(tau, tol)?;
    let mut sum = C64::new(0.0, 0.0);
    for m in 0..MAX_TERM_PAIRS {
        let nu = m as f64 + 0.5;
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let term = (C64::new(0.0, 1.0) * std::f64::consts::PI * nu * nu * tau).exp() * (sign * nu);
        sum += term;
        if term.norm() < tol * (sum.norm() + 1.0) {
            return Ok(4.0 * std::f64::consts::PI * sum);
        }
    }
    Err(Error::Numeric(
        "theta'(0) series did not converge within 10^4 terms".into(),
    ))
}

fn theta_series(z: C64, tau: C64, tol: f64) -> Result<(C64, usize)> {
    check_tau_tol(tau, tol)?;
    let i = C64::new(0.0, 1.0);
    let pi = std::f64::consts::PI;
    let mut sum = C64::new(0.0, 0.0);
    for m in 0..MAX_TERM_PAIRS {
        let nu = m as f64 + 0.5;
        // n = m and n = -1-m carry indices +nu and -nu
        let gauss = (i * pi * nu * nu * tau).exp();
        let phase = (2.0 * pi * i * nu * (z + 0.5)).exp();
        let pair = gauss * (phase + phase.inv());
        sum += pair;
        if pair.norm() < tol * (sum.norm() + 1.0) {
            return Ok((-sum, m + 1));
        }
    }
    Err(Error::Numeric(
        "theta series did not converge within 10^4 terms".into(),
    ))
}

fn check_tau_tol(tau: C64, tol: f64) -> Result<()> {
    if tau.im <= 0.0 {
        return Err(Error::Domain(format!(
            "theta requires Im(tau) > 0, got {}",
            tau.im
        )));
    }
    if tol <= 0.0 {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    Ok(())
}

/// Parameters of the elliptic bracket: modulus `tau`, level `L >= 2`, and the
/// generic height shift `b` that keeps bracket arguments away from zeros.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticParams {
    pub tau: C64,
    pub l: u32,
    pub shift_b: f64,
}

impl EllipticParams {
    pub fn new(tau: C64, l: u32, shift_b: f64) -> Result<EllipticParams> {
        if l < 2 {
            return Err(Error::Input(format!("level L must be >= 2, got {l}")));
        }
        check_tau_tol(tau, THETA_TOL_DEFAULT)?;
        // 1/(L+1) must stay away from the zero lattice Z + tau Z of theta
        let probe = theta(
            C64::new(1.0 / (l as f64 + 1.0), 0.0),
            tau,
            THETA_TOL_DEFAULT,
        )?;
        if probe.norm() < 1e-10 {
            return Err(Error::Domain(
                "1/(L+1) lies on the zero lattice of theta for this tau".into(),
            ));
        }
        Ok(EllipticParams { tau, l, shift_b })
    }
}

/// Normalized elliptic bracket
/// `[z] = theta(z/(L+1), tau) / (theta'(0, tau)/(L+1))`,
/// normalized so that `[z]/z -> 1` as `z -> 0`.
pub fn bracket_ell(z: C64, params: &EllipticParams) -> Result<C64> {
    let scale = params.l as f64 + 1.0;
    let num = theta(z / scale, params.tau, THETA_TOL_DEFAULT)?;
    let den = theta_deriv0(params.tau, THETA_TOL_DEFAULT)? / scale;
    Ok(num / den)
}

/// Trigonometric bracket `sin(pi z / (L+1))`.
pub fn bracket_tri(z: f64, l: u32) -> f64 {
    (std::f64::consts::PI * z / (l as f64 + 1.0)).sin()
}

/// Hyperbolic bracket `sinh(pi z / (L+1))`.
pub fn bracket_hyp(z: f64, l: u32) -> f64 {
    (std::f64::consts::PI * z / (l as f64 + 1.0)).sinh()
}
