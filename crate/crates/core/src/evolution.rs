//! Solutions Ψ(t,x;F) of the time-dependent problem: quadrature of the
//! eight-term decomposition, the closed plane-wave form and its long-time
//! asymptotics.

use crate::contour_quadrature::{fresnel_ray, GaussianEnvelope, HolomorphicDatum, QuadResult, QuadratureConfig};
use crate::error::{Error, Result};
use crate::green::{g0, g1, gfree, sqrt_it, sqrt_ipit};
use crate::interaction::{GreenCoefficients, Sign, SignPair, UnitaryInteraction};
use crate::special_functions::{checked_exp, lambda_divided_difference, lambda_fn, ln_lambda_real};
use crate::superoscillation::{self, SuperoscillatingSequence};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Below this |h| = √t·|ω ± ik| (relative to 1 + |argument|) the Ψ1 plane-wave
/// term is evaluated as a divided difference of Λ.
const NEAR_POLE: f64 = 1e-3;

/// The three kernels of the decomposition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Component {
    Zero,
    One(f64),
    Free,
}

/// A value together with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn check_tx(t: f64, x: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::Domain(format!("time must be positive and finite, got {t}")));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("x must be finite and nonzero, got {x}")));
    }
    Ok(())
}

/// The ray angle and integrand envelope for one component.
///
/// With b the net exponential growth in Im z, |G_j·F| ≤ A·c_j·e^{−Im z²/4t + b·Im z}.
/// For b > 0 the angle is reduced until the factor e^{t b² tan θ} stays below
/// e^{envelope_cap}.
fn ray_plan(c: Component, t: f64, x: f64, f: &HolomorphicDatum, cfg: &QuadratureConfig) -> (f64, GaussianEnvelope) {
    let ln_kernel = match c {
        Component::Zero | Component::Free => -(2.0 * (PI * t).sqrt()).ln(),
        Component::One(omega) => ln_lambda_real(omega * (t / 2.0).sqrt()),
    };
    let b = match c {
        Component::Zero | Component::One(_) => f.bound_b - x.abs() / (2.0 * t),
        Component::Free => f.bound_b + x / (2.0 * t),
    };
    let log_a = f.bound_a.max(f64::MIN_POSITIVE).ln() + ln_kernel;
    let mut theta = cfg.theta_rot.min(f.sector);
    if b > 0.0 {
        theta = theta.min((cfg.envelope_cap / (t * b * b)).atan());
        (theta, GaussianEnvelope { log_amp: log_a + t * b * b * theta.tan(), rate: 1.0 / (8.0 * t) })
    } else {
        (theta, GaussianEnvelope { log_amp: log_a, rate: 1.0 / (4.0 * t) })
    }
}

/// Ψ_j(t,x;F) = e^{iθ}∫₀^∞ G_j(t,x,ye^{iθ})F(ye^{iθ}) dy.
pub fn psi_component(c: Component, t: f64, x: f64, f: &HolomorphicDatum, cfg: &QuadratureConfig) -> Result<QuadResult> {
    check_tx(t, x)?;
    if f.bound_a == 0.0 {
        return Ok(QuadResult { value: ZERO, error: 0.0, radius: 0.0, theta: cfg.theta_rot, panels: 0 });
    }
    let (theta, env) = ray_plan(c, t, x, f, cfg);
    match c {
        Component::Zero => fresnel_ray(|z| Ok(g0(t, x, z)? * f.eval(z)), env, theta, cfg),
        Component::One(omega) => fresnel_ray(|z| Ok(g1(t, x, z, omega)? * f.eval(z)), env, theta, cfg),
        Component::Free => fresnel_ray(|z| Ok(gfree(t, x, z)? * f.eval(z)), env, theta, cfg),
    }
}

/// Ψ(t,x;F) from the eight-term decomposition into Ψ1(ω±), Ψ0 and Ψfree,
/// each evaluated at F and at the mirrored datum F̃(z) = F(−z).
pub fn psi(u: &UnitaryInteraction, t: f64, x: f64, f: &HolomorphicDatum, cfg: &QuadratureConfig) -> Result<Estimate> {
    psi_with(&u.coefficients(), t, x, f, cfg)
}

pub fn psi_with(c: &GreenCoefficients, t: f64, x: f64, f: &HolomorphicDatum, cfg: &QuadratureConfig) -> Result<Estimate> {
    check_tx(t, x)?;
    cfg.validate()?;
    let fm = f.mirrored();
    let sx = Sign::of(x);
    let pp = SignPair::new(sx, Sign::Plus);
    let pm = SignPair::new(sx, Sign::Minus);
    let mut value = ZERO;
    let mut error = 0.0;
    let mut add = |coef: Complex64, comp: Component, xx: f64, datum: &HolomorphicDatum| -> Result<()> {
        if coef == ZERO {
            return Ok(());
        }
        let r = psi_component(comp, t, xx, datum, cfg)?;
        value += coef * r.value;
        error += coef.norm() * r.error;
        Ok(())
    };
    for (b, omega) in c.active() {
        add(c.mu(b, pm), Component::One(omega), x, &fm)?;
        add(c.mu(b, pp), Component::One(omega), x, f)?;
    }
    add(c.mu0(pm), Component::Zero, x, &fm)?;
    add(c.mu0(pp), Component::Zero, x, f)?;
    add(Complex64::new(1.0, 0.0), Component::Free, -x, &fm)?;
    add(Complex64::new(1.0, 0.0), Component::Free, x, f)?;
    Ok(Estimate { value, error })
}

/// Shared quantities of the closed plane-wave form at (t, |x|, k):
/// a = |x|/(2√(it)), q = ik√(it), E = e^{−x²/(4it)}.
struct PlaneWave {
    t: f64,
    ax: f64,
    k: f64,
    sit: Complex64,
    a: Complex64,
    q: Complex64,
    e: Complex64,
}

impl PlaneWave {
    fn new(t: f64, ax: f64, k: f64) -> Self {
        let sit = sqrt_it(t);
        PlaneWave {
            t,
            ax,
            k,
            sit,
            a: ax / (2.0 * sit),
            q: I * k * sit,
            e: Complex64::from_polar(1.0, ax * ax / (4.0 * t)),
        }
    }

    /// E·Λ(u), where `exponent` is the exact value of u² − x²/(4it).
    fn scaled(&self, u: Complex64, exponent: Complex64) -> Result<Complex64> {
        if u.re >= 0.0 {
            Ok(lambda_fn(u)? * self.e)
        } else {
            Ok(2.0 * checked_exp(exponent, "plane wave")? - lambda_fn(-u)? * self.e)
        }
    }

    /// E·Λ(a − ik√(it)·sign)
    fn oscillating(&self, sign: f64) -> Result<Complex64> {
        let u = self.a - sign * self.q;
        self.scaled(u, -I * sign * self.k * self.ax - I * self.k * self.k * self.t)
    }

    /// E·Λ(a + ω√(it))
    fn stationary(&self, omega: f64) -> Result<Complex64> {
        let u = self.a + omega * self.sit;
        self.scaled(u, Complex64::new(omega * self.ax, omega * omega * self.t))
    }

    /// Ψ0(t,x;e^{±ik·}) = E·Λ(a ∓ q)/2, with its |x|-derivative.
    fn psi0(&self, sign: f64) -> Result<(Complex64, Complex64)> {
        let v = self.oscillating(sign)?;
        let d = -I * sign * self.k * v - self.e / sqrt_ipit(self.t);
        Ok((0.5 * v, 0.5 * d))
    }

    /// Ψ1(t,x;ω,e^{±ik·}) = E(Λ(a ∓ q) − Λ(a + ω√(it)))/(ω ± ik), with its |x|-derivative.
    fn psi1(&self, omega: f64, sign: f64) -> Result<(Complex64, Complex64)> {
        let kk = sign * self.k;
        let den = Complex64::new(omega, kk);
        let u = self.a - sign * self.q;
        let v = self.a + omega * self.sit;
        let st = self.stationary(omega)?;
        let value = if (self.sit * den).norm() < NEAR_POLE * (1.0 + u.norm()) {
            -self.sit * self.e * lambda_divided_difference(u, v)?
        } else {
            (self.oscillating(sign)? - st) / den
        };
        Ok((value, -I * kk * value - st))
    }
}

/// One-sided value and x-derivative of the closed form, with x entering as (|x|, sign).
fn plane_wave_parts(c: &GreenCoefficients, t: f64, ax: f64, sx: Sign, k: f64) -> Result<(Complex64, Complex64)> {
    let pw = PlaneWave::new(t, ax, k);
    let pp = SignPair::new(sx, Sign::Plus);
    let pm = SignPair::new(sx, Sign::Minus);
    let mut v = ZERO;
    let mut d = ZERO;
    for (b, omega) in c.active() {
        for (s, sign) in [(pp, 1.0), (pm, -1.0)] {
            let mu = c.mu(b, s);
            if mu != ZERO {
                let (pv, pd) = pw.psi1(omega, sign)?;
                v += mu * pv;
                d += mu * pd;
            }
        }
    }
    for (s, sign) in [(pp, 1.0), (pm, -1.0)] {
        let mu = c.mu0(s);
        if mu != ZERO {
            let (pv, pd) = pw.psi0(sign)?;
            v += mu * pv;
            d += mu * pd;
        }
    }
    let x = sx.value() * ax;
    let free = Complex64::from_polar(1.0, k * x - k * k * t);
    Ok((v + free, sx.value() * d + I * k * free))
}

/// The closed form of Ψ(t,x;e^{ik·}).
pub fn psi_plane_wave(u: &UnitaryInteraction, t: f64, x: f64, k: f64) -> Result<Complex64> {
    psi_plane_wave_with(&u.coefficients(), t, x, k)
}

pub fn psi_plane_wave_with(c: &GreenCoefficients, t: f64, x: f64, k: f64) -> Result<Complex64> {
    check_tx(t, x)?;
    Ok(plane_wave_parts(c, t, x.abs(), Sign::of(x), k)?.0)
}

/// ∂xΨ(t,x;e^{ik·}) from the closed form.
pub fn psi_plane_wave_dx(u: &UnitaryInteraction, t: f64, x: f64, k: f64) -> Result<Complex64> {
    check_tx(t, x)?;
    Ok(plane_wave_parts(&u.coefficients(), t, x.abs(), Sign::of(x), k)?.1)
}

/// (Ψ(t,0±), ∂xΨ(t,0±)) of the plane-wave solution.
pub fn psi_plane_wave_limit(u: &UnitaryInteraction, t: f64, side: Sign, k: f64) -> Result<(Complex64, Complex64)> {
    check_tx(t, side.value())?;
    plane_wave_parts(&u.coefficients(), t, 0.0, side, k)
}

/// Interface-condition residual of the plane-wave solution at time t.
pub fn plane_wave_jump_residual(u: &UnitaryInteraction, t: f64, k: f64) -> Result<[Complex64; 2]> {
    let (vp, dp) = psi_plane_wave_limit(u, t, Sign::Plus, k)?;
    let (vm, dm) = psi_plane_wave_limit(u, t, Sign::Minus, k)?;
    Ok(crate::green::interface_residual(&u.matrix(), [vp, vm], [dp, -dm]))
}

/// Leading long-time behaviour of the plane-wave solution.
pub fn psi_asymptotic(u: &UnitaryInteraction, t: f64, x: f64, k: f64) -> Complex64 {
    psi_asymptotic_with(&u.coefficients(), t, x, k)
}

pub fn psi_asymptotic_with(c: &GreenCoefficients, t: f64, x: f64, k: f64) -> Complex64 {
    let sx = Sign::of(x);
    let pp = SignPair::new(sx, Sign::Plus);
    let pm = SignPair::new(sx, Sign::Minus);
    let stationary = |omega: f64| Complex64::new(omega * x.abs(), omega * omega * t).exp();
    if k == 0.0 {
        let mut v = Complex64::new(1.0, 0.0) + (c.mu0(pp) + c.mu0(pm)) / 2.0;
        for (b, omega) in c.active() {
            let m = (c.mu(b, pp) + c.mu(b, pm)) / omega;
            v += m;
            if omega < 0.0 {
                v -= 2.0 * m * stationary(omega);
            }
        }
        return v;
    }
    let pk = SignPair::new(sx, Sign::of(-k));
    let mut r = c.mu0(pk) / 2.0;
    for (b, omega) in c.active() {
        r += c.mu(b, pk) / Complex64::new(omega, -k.abs());
    }
    let mut v = Complex64::from_polar(1.0, k * x - k * k * t) + 2.0 * r * Complex64::from_polar(1.0, (k * x).abs() - k * k * t);
    for (b, omega) in c.active() {
        if omega < 0.0 {
            let m = c.mu(b, pm) / Complex64::new(omega, -k) + c.mu(b, pp) / Complex64::new(omega, k);
            v -= 2.0 * m * stationary(omega);
        }
    }
    v
}

/// √t·|Ψ − Ψ_asymptotic| for each t.
pub fn asymptotic_defect(u: &UnitaryInteraction, k: f64, x: f64, ts: &[f64]) -> Result<Vec<f64>> {
    let c = u.coefficients();
    ts.iter()
        .map(|&t| Ok(t.sqrt() * (psi_plane_wave_with(&c, t, x, k)? - psi_asymptotic_with(&c, t, x, k)).norm()))
        .collect()
}

/// Initial data understood by [`evolve_field`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DatumSpec {
    PlaneWave { k: f64 },
    Superoscillation { n: u32, k: f64 },
    Constant,
}

impl DatumSpec {
    pub fn holomorphic(&self) -> Result<HolomorphicDatum> {
        match *self {
            DatumSpec::PlaneWave { k } => Ok(HolomorphicDatum::plane_wave(k)),
            DatumSpec::Constant => Ok(HolomorphicDatum::constant(Complex64::new(1.0, 0.0))),
            DatumSpec::Superoscillation { n, k } => Ok(SuperoscillatingSequence::new(n, k)?.datum()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Closed forms (plane wave, constant, spectral sum for superoscillations).
    Closed,
    Quadrature,
    /// Closed form where it is well conditioned, quadrature otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub x: f64,
    pub value: Complex64,
    pub error: f64,
}

/// Ψ sampled on a (t, x) grid, in row-major order (t outer).
#[derive(Debug, Clone)]
pub struct WaveField {
    pub interaction: UnitaryInteraction,
    pub datum: DatumSpec,
    pub method: Method,
    /// Σ|C_l| of a superoscillating datum, 1 otherwise.
    pub conditioning: f64,
    pub samples: Vec<Sample>,
}

/// Closed-form rounding estimate.
fn closed_error(v: Complex64, scale: f64) -> f64 {
    64.0 * f64::EPSILON * scale.max(v.norm()).max(1.0)
}

/// Evaluate one sample with the chosen method.
pub fn evolve_point(u: &UnitaryInteraction, datum: &DatumSpec, method: Method, t: f64, x: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let c = u.coefficients();
    let quad = |d: &DatumSpec| -> Result<Estimate> { psi_with(&c, t, x, &d.holomorphic()?, cfg) };
    match (*datum, method) {
        (_, Method::Quadrature) => quad(datum),
        (DatumSpec::PlaneWave { k }, _) => {
            let v = psi_plane_wave_with(&c, t, x, k)?;
            Ok(Estimate { value: v, error: closed_error(v, 1.0) })
        }
        (DatumSpec::Constant, _) => {
            let v = psi_plane_wave_with(&c, t, x, 0.0)?;
            Ok(Estimate { value: v, error: closed_error(v, 1.0) })
        }
        (DatumSpec::Superoscillation { n, k }, m) => {
            let seq = SuperoscillatingSequence::new(n, k)?;
            if m == Method::Auto && seq.conditioning() > superoscillation::SPECTRAL_CONDITIONING_LIMIT {
                return quad(datum);
            }
            let e = superoscillation::evolve_spectral_with(&c, &seq, t, x)?;
            Ok(e)
        }
    }
}

/// Evaluate Ψ on the grid ts × xs in parallel; output order is t-major.
pub fn evolve_field(
    u: &UnitaryInteraction,
    datum: DatumSpec,
    method: Method,
    ts: &[f64],
    xs: &[f64],
    cfg: &QuadratureConfig,
) -> Result<WaveField> {
    let points: Vec<(f64, f64)> = ts.iter().flat_map(|&t| xs.iter().map(move |&x| (t, x))).collect();
    let samples = points
        .par_iter()
        .map(|&(t, x)| {
            let e = evolve_point(u, &datum, method, t, x, cfg)?;
            Ok(Sample { t, x, value: e.value, error: e.error })
        })
        .collect::<Result<Vec<_>>>()?;
    let conditioning = match datum {
        DatumSpec::Superoscillation { n, k } => SuperoscillatingSequence::new(n, k)?.conditioning(),
        _ => 1.0,
    };
    Ok(WaveField { interaction: *u, datum, method, conditioning, samples })
}
