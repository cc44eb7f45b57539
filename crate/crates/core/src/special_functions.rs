//! The scaled complementary error function Λ(z) = e^{z²} erfc(z) and the
//! identities and integrals built on it.

use crate::error::{Error, Result};
use errorfunctions::ComplexErrorFunctions;
use num_complex::Complex64;
use std::f64::consts::PI;

/// 2/√π
pub const TWO_OVER_SQRT_PI: f64 = 1.128_379_167_095_512_6;

/// Largest exponent accepted for e^x before we call it an overflow.
const EXP_LIMIT: f64 = 709.0;

/// Half-width of the band where divided differences of Λ switch to
/// the midpoint Taylor series.
const TAYLOR_BAND: f64 = 1e-3;

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// z² with the real part formed as (x−y)(x+y).
#[inline]
pub fn square(z: Complex64) -> Complex64 {
    Complex64::new((z.re - z.im) * (z.re + z.im), 2.0 * z.re * z.im)
}

/// e^{w}, erroring instead of returning infinity.
pub fn checked_exp(w: Complex64, what: &'static str) -> Result<Complex64> {
    check_finite(w, what)?;
    if w.re > EXP_LIMIT {
        return Err(Error::Overflow(what));
    }
    Ok(w.exp())
}

/// e^{z²} erfc(z).
///
/// The right half-plane goes straight to the Faddeeva kernel. For Re z < 0
/// the reflection Λ(z) = 2e^{z²} − Λ(−z) is used, and an overflow of e^{z²}
/// is reported as [`Error::Overflow`].
pub fn erfcx(z: Complex64) -> Result<Complex64> {
    check_finite(z, "erfcx")?;
    if z.re >= 0.0 {
        return Ok(z.erfcx());
    }
    let e = checked_exp(square(z), "erfcx")?;
    let r = 2.0 * e - (-z).erfcx();
    if r.re.is_finite() && r.im.is_finite() {
        Ok(r)
    } else {
        Err(Error::Overflow("erfcx"))
    }
}

/// Real erfcx, used for bounds.
pub fn erfcx_real(x: f64) -> f64 {
    errorfunctions::RealErrorFunctions::erfcx(x)
}

/// ln Λ(x) for real x, finite where Λ(x) itself overflows.
pub fn ln_lambda_real(x: f64) -> f64 {
    if x >= 0.0 {
        erfcx_real(x).ln()
    } else {
        // Λ(x) = e^{x²}(2 − e^{−x²}Λ(−x))
        x * x + (2.0 - erfcx_real(-x) * (-x * x).exp()).ln()
    }
}

/// Λ(z) = e^{z²}(1 − erf z).
pub fn lambda_fn(z: Complex64) -> Result<Complex64> {
    erfcx(z)
}

/// Λ′(z) = 2zΛ(z) − 2/√π.
pub fn lambda_derivative(z: Complex64) -> Result<Complex64> {
    Ok(2.0 * z * lambda_fn(z)? - TWO_OVER_SQRT_PI)
}

/// Λ and its derivatives up to order `n`, by Λ⁽ᵐ⁺¹⁾ = 2zΛ⁽ᵐ⁾ + 2mΛ⁽ᵐ⁻¹⁾.
pub fn lambda_derivatives(z: Complex64, n: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(lambda_fn(z)?);
    if n >= 1 {
        out.push(2.0 * z * out[0] - TWO_OVER_SQRT_PI);
    }
    for m in 1..n {
        let next = 2.0 * z * out[m] + 2.0 * (m as f64) * out[m - 1];
        out.push(next);
    }
    Ok(out)
}

/// The divided difference (Λ(u) − Λ(v))/(u − v), continued by Λ′ at u = v.
///
/// Close to coincidence the midpoint series
/// Λ′(m) + h²Λ‴(m)/24 + h⁴Λ⁽⁵⁾(m)/1920 is used, h = u − v.
pub fn lambda_divided_difference(u: Complex64, v: Complex64) -> Result<Complex64> {
    let h = u - v;
    if h.norm() < TAYLOR_BAND * (1.0 + u.norm()) {
        let m = 0.5 * (u + v);
        let d = lambda_derivatives(m, 5)?;
        let h2 = h * h;
        return Ok(d[1] + h2 / 24.0 * d[3] + h2 * h2 / 1920.0 * d[5]);
    }
    Ok((lambda_fn(u)? - lambda_fn(v)?) / h)
}

/// ∫₀^∞ e^{−ax²−bx} dx = √π/(2√a) · Λ(b/(2√a)).
pub fn lambda_gaussian_integral(a: f64, b: Complex64) -> Result<Complex64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveA(a));
    }
    let sa = a.sqrt();
    Ok(PI.sqrt() / (2.0 * sa) * lambda_fn(b / (2.0 * sa))?)
}

/// ∫₀^∞ e^{−ax²−bx} Λ(√a·x + c) dx = −(Λ(c) − Λ(b/2√a)) / (2√a (c − b/2√a)).
pub fn lambda_lambda_integral(a: f64, b: Complex64, c: Complex64) -> Result<Complex64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::NonPositiveA(a));
    }
    let sa = a.sqrt();
    let d = lambda_divided_difference(c, b / (2.0 * sa))?;
    Ok(-d / (2.0 * sa))
}
