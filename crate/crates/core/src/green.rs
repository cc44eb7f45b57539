//! The component kernels G0, G1, Gfree and the assembled Green's function.
//!
//! Branches: √(it) = √t·e^{iπ/4} and √(iπt) = √(πt)·e^{iπ/4}.

use crate::error::{Error, Result};
use crate::interaction::{GreenCoefficients, Sign, SignPair, UnitaryInteraction};
use crate::matrix::Mat2;
use crate::special_functions::{checked_exp, lambda_fn, square, TWO_OVER_SQRT_PI};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// √(it) on the principal branch.
#[inline]
pub fn sqrt_it(t: f64) -> Complex64 {
    Complex64::from_polar(t.sqrt(), FRAC_PI_4)
}

/// √(iπt) on the principal branch.
#[inline]
pub fn sqrt_ipit(t: f64) -> Complex64 {
    Complex64::from_polar((PI * t).sqrt(), FRAC_PI_4)
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("time must be positive and finite, got {t}")))
    }
}

fn check_source(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite("source point"));
    }
    if z.im != 0.0 && (z.im < 0.0 || z.re < 0.0) {
        return Err(Error::Domain(format!("complex source point {z} outside the sector 0 <= arg z <= pi/2")));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite("x"))
    }
}

/// e^{−w²/(4it)} = e^{iw²/(4t)}
#[inline]
fn gauss(t: f64, w: Complex64) -> Result<Complex64> {
    checked_exp(I * square(w) / (4.0 * t), "kernel exponent")
}

/// G0(t,x,z) = e^{−(|x|+z)²/(4it)} / (2√(iπt))
pub fn g0(t: f64, x: f64, z: Complex64) -> Result<Complex64> {
    check_time(t)?;
    check_x(x)?;
    check_source(z)?;
    Ok(gauss(t, x.abs() + z)? / (2.0 * sqrt_ipit(t)))
}

/// Gfree(t,x,z) = e^{−(x−z)²/(4it)} / (2√(iπt))
pub fn gfree(t: f64, x: f64, z: Complex64) -> Result<Complex64> {
    check_time(t)?;
    check_x(x)?;
    check_source(z)?;
    Ok(gauss(t, x - z)? / (2.0 * sqrt_ipit(t)))
}

/// G1(t,x,z;ω) = Λ(s)·e^{−(|x|+z)²/(4it)} with s = (|x|+z)/(2√(it)) + ω√(it).
///
/// For Re s < 0 the reflected form 2e^{ω(|x|+z)+iω²t} − Λ(−s)e^{−(|x|+z)²/(4it)}
/// is used; it avoids forming e^{s²} on its own.
pub fn g1(t: f64, x: f64, z: Complex64, omega: f64) -> Result<Complex64> {
    check_time(t)?;
    check_x(x)?;
    check_source(z)?;
    g1_unchecked(t, x.abs() + z, omega)
}

fn g1_unchecked(t: f64, w: Complex64, omega: f64) -> Result<Complex64> {
    let sit = sqrt_it(t);
    let s = w / (2.0 * sit) + omega * sit;
    let e = gauss(t, w)?;
    if s.re >= 0.0 {
        Ok(lambda_fn(s)? * e)
    } else {
        let stationary = checked_exp(omega * w + I * (omega * omega * t), "G1")?;
        Ok(2.0 * stationary - lambda_fn(-s)? * e)
    }
}

/// A kernel value with its derivatives in |x| (or x for Gfree) and t.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Jet {
    pub value: Complex64,
    pub dx: Complex64,
    pub dxx: Complex64,
    pub dt: Complex64,
}

impl Jet {
    fn scale(self, c: Complex64) -> Jet {
        Jet { value: c * self.value, dx: c * self.dx, dxx: c * self.dxx, dt: c * self.dt }
    }

    fn add(self, o: Jet) -> Jet {
        Jet {
            value: self.value + o.value,
            dx: self.dx + o.dx,
            dxx: self.dxx + o.dxx,
            dt: self.dt + o.dt,
        }
    }

    fn flip_dx(self, sign: f64) -> Jet {
        Jet { dx: sign * self.dx, ..self }
    }
}

/// Gaussian kernel e^{iw²/(4t)}/(2√(iπt)) and derivatives in w, t (real w).
pub fn gaussian_jet(t: f64, w: f64) -> Result<Jet> {
    let v = gauss(t, Complex64::new(w, 0.0))? / (2.0 * sqrt_ipit(t));
    let d1 = I * w / (2.0 * t);
    Ok(Jet {
        value: v,
        dx: v * d1,
        dxx: v * (I / (2.0 * t) - w * w / (4.0 * t * t)),
        dt: v * (-1.0 / (2.0 * t) - I * w * w / (4.0 * t * t)),
    })
}

/// G1 and derivatives in w = |x| + y and t, for real w ≥ 0.
///
/// ∂w G1 = ωG1 − e^{E}/√(iπt) and ∂w² G1 = ω²G1 − (ω + iw/2t)e^{E}/√(iπt);
/// ∂t G1 is formed independently by the chain rule through s and E.
pub fn g1_jet(t: f64, w: f64, omega: f64) -> Result<Jet> {
    let wc = Complex64::new(w, 0.0);
    let v = g1_unchecked(t, wc, omega)?;
    let e = gauss(t, wc)?;
    let sit = sqrt_it(t);
    let q = e / sqrt_ipit(t);
    let s = wc / (2.0 * sit) + omega * sit;
    let ds_dt = -wc / (4.0 * sit * t) + omega * sit / (2.0 * t);
    let de_dt = -I * w * w / (4.0 * t * t);
    let lambda_prime_e = 2.0 * s * v - TWO_OVER_SQRT_PI * e;
    Ok(Jet {
        value: v,
        dx: omega * v - q,
        dxx: omega * omega * v - (omega + I * w / (2.0 * t)) * q,
        dt: lambda_prime_e * ds_dt + v * de_dt,
    })
}

fn validate_point(t: f64, x: f64, y: f64) -> Result<()> {
    check_time(t)?;
    if !x.is_finite() || !y.is_finite() {
        return Err(Error::NonFinite("green"));
    }
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain(format!("x and y must be nonzero, got x={x}, y={y}")));
    }
    Ok(())
}

/// G and its derivatives, with x entering as (|x|, sign) so that the
/// one-sided limits at the origin are the case |x| = 0.
fn green_jet_parts(c: &GreenCoefficients, t: f64, ax: f64, sx: Sign, y: f64) -> Result<Jet> {
    let s = SignPair::new(sx, Sign::of(y));
    let w = ax + y.abs();
    let sg = sx.value();
    let mut out = gaussian_jet(t, w)?.flip_dx(sg).scale(c.mu0(s));
    for (b, omega) in c.active() {
        let mu = c.mu(b, s);
        if mu != Complex64::new(0.0, 0.0) {
            out = out.add(g1_jet(t, w, omega)?.flip_dx(sg).scale(mu));
        }
    }
    Ok(out.add(gaussian_jet(t, sg * ax - y)?))
}

/// G(t,x,y) with ∂x, ∂x², ∂t, for real x, y ≠ 0.
pub fn green_jet(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<Jet> {
    validate_point(t, x, y)?;
    green_jet_parts(c, t, x.abs(), Sign::of(x), y)
}

/// G(t,x,y) = Σ± μ±G1(t,x,|y|;ω±) + μ0G0(t,x,|y|) + Gfree(t,x,y).
pub fn green(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<Complex64> {
    validate_point(t, x, y)?;
    let s = SignPair::of(x, y);
    let ay = Complex64::new(y.abs(), 0.0);
    let mut g = c.mu0(s) * g0(t, x, ay)? + gfree(t, x, Complex64::new(y, 0.0))?;
    for (b, omega) in c.active() {
        let mu = c.mu(b, s);
        if mu != Complex64::new(0.0, 0.0) {
            g += mu * g1(t, x, ay, omega)?;
        }
    }
    Ok(g)
}

pub fn green_dx(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<Complex64> {
    Ok(green_jet(c, t, x, y)?.dx)
}

pub fn green_dxx(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<Complex64> {
    Ok(green_jet(c, t, x, y)?.dxx)
}

pub fn green_dt(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<Complex64> {
    Ok(green_jet(c, t, x, y)?.dt)
}

/// |i∂tG + ∂x²G| from the analytic derivatives.
pub fn pde_residual(c: &GreenCoefficients, t: f64, x: f64, y: f64) -> Result<f64> {
    let j = green_jet(c, t, x, y)?;
    Ok((I * j.dt + j.dxx).norm())
}

/// |i∂tG + ∂x²G| from centered finite differences of G with step h.
pub fn pde_residual_fd(c: &GreenCoefficients, t: f64, x: f64, y: f64, h: f64) -> Result<f64> {
    let g = |tt: f64, xx: f64| green(c, tt, xx, y);
    let dt = (g(t + h, x)? - g(t - h, x)?) / (2.0 * h);
    let dxx = (g(t, x + h)? - 2.0 * g(t, x)? + g(t, x - h)?) / (h * h);
    Ok((I * dt + dxx).norm())
}

/// One-sided limits (G(t,0±,y), ∂xG(t,0±,y)).
pub fn green_limit(c: &GreenCoefficients, t: f64, side: Sign, y: f64) -> Result<(Complex64, Complex64)> {
    validate_point(t, side.value(), y)?;
    let j = green_jet_parts(c, t, 0.0, side, y)?;
    Ok((j.value, j.dx))
}

/// (I−J)[G(0⁺); G(0⁻)] − i(I+J)[∂xG(0⁺); −∂xG(0⁻)].
pub fn jump_residual(c: &GreenCoefficients, u: &UnitaryInteraction, t: f64, y: f64) -> Result<[Complex64; 2]> {
    let (gp, dp) = green_limit(c, t, Sign::Plus, y)?;
    let (gm, dm) = green_limit(c, t, Sign::Minus, y)?;
    Ok(interface_residual(&u.matrix(), [gp, gm], [dp, -dm]))
}

/// (I−J)u − i(I+J)v for boundary values u and outward derivatives v.
pub fn interface_residual(j: &Mat2, u: [Complex64; 2], v: [Complex64; 2]) -> [Complex64; 2] {
    let id = Mat2::identity();
    let a = (id - *j).apply(u);
    let b = (id + *j).apply(v);
    [a[0] - I * b[0], a[1] - I * b[1]]
}
