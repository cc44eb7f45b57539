//! Improper integrals ∫₀^∞ f(y) dy of holomorphic integrands, evaluated on the
//! rotated ray y·e^{iθ} where they decay like a Gaussian.

use crate::error::{Error, Result};
use crate::special_functions::erfcx_real;
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::Arc;

/// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077600525452442,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Rotation angle of the integration ray.
    pub theta_rot: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Upper limit on the number of panels of the adaptive rule.
    pub max_panels: usize,
    /// The truncation target is abs_tol / (2·safety).
    pub safety: f64,
    /// Largest log-envelope e^{t b² tan θ} tolerated before θ is reduced.
    pub envelope_cap: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            theta_rot: FRAC_PI_4,
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            max_panels: 20_000,
            safety: 1.0,
            envelope_cap: 2.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta_rot > 0.0 && self.theta_rot < FRAC_PI_2) {
            return Err(Error::Domain(format!("theta_rot must lie in (0, pi/2), got {}", self.theta_rot)));
        }
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        if self.max_panels == 0 || !(self.safety >= 1.0) || !(self.envelope_cap > 0.0) {
            return Err(Error::Domain("max_panels, safety and envelope_cap must be positive (safety >= 1)".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Quadrature estimate plus certified tail bound.
    pub error: f64,
    /// Truncation radius along the ray.
    pub radius: f64,
    /// Angle of the ray actually used.
    pub theta: f64,
    pub panels: usize,
}

/// An initial datum F, holomorphic on the double sector of half-angle
/// `sector`, with |F(z)| ≤ A·e^{B|Im z|} there.
#[derive(Clone)]
pub struct HolomorphicDatum {
    eval: Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>,
    pub bound_a: f64,
    pub bound_b: f64,
    pub sector: f64,
}

impl std::fmt::Debug for HolomorphicDatum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HolomorphicDatum")
            .field("bound_a", &self.bound_a)
            .field("bound_b", &self.bound_b)
            .field("sector", &self.sector)
            .finish()
    }
}

impl HolomorphicDatum {
    pub fn new<F>(eval: F, bound_a: f64, bound_b: f64, sector: f64) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        if !(bound_a >= 0.0) || !(bound_b >= 0.0) || !bound_a.is_finite() || !bound_b.is_finite() {
            return Err(Error::Domain(format!("datum bounds must be finite and >= 0, got A={bound_a}, B={bound_b}")));
        }
        if !(sector > 0.0 && sector <= FRAC_PI_2) {
            return Err(Error::Domain(format!("sector half-angle must lie in (0, pi/2], got {sector}")));
        }
        Ok(HolomorphicDatum { eval: Arc::new(eval), bound_a, bound_b, sector })
    }

    /// e^{ikz}, with A = 1 and B = |k|.
    pub fn plane_wave(k: f64) -> Self {
        let i = Complex64::new(0.0, 1.0);
        HolomorphicDatum {
            eval: Arc::new(move |z| (i * k * z).exp()),
            bound_a: 1.0,
            bound_b: k.abs(),
            sector: FRAC_PI_2,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        HolomorphicDatum { eval: Arc::new(move |_| c), bound_a: c.norm(), bound_b: 0.0, sector: FRAC_PI_2 }
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }

    /// F̃(z) = F(−z), with the same bounds.
    pub fn mirrored(&self) -> Self {
        let f = self.eval.clone();
        HolomorphicDatum { eval: Arc::new(move |z| f(-z)), ..self.clone() }
    }

    /// a·F + b·G, bounds added.
    pub fn combine(&self, a: Complex64, other: &HolomorphicDatum, b: Complex64) -> Self {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        HolomorphicDatum {
            eval: Arc::new(move |z| a * f(z) + b * g(z)),
            bound_a: a.norm() * self.bound_a + b.norm() * other.bound_a,
            bound_b: self.bound_b.max(other.bound_b),
            sector: self.sector.min(other.sector),
        }
    }

    /// Largest ratio |F(z)|/(A e^{B|Im z|}) over a deterministic sample of the double sector.
    pub fn bound_ratio(&self, radius: f64, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..=samples {
            let r = radius * i as f64 / samples as f64;
            for j in 0..=samples {
                let th = self.sector * j as f64 / samples as f64;
                for &z in &[Complex64::from_polar(r, th), -Complex64::from_polar(r, th)] {
                    let bound = self.bound_a * (self.bound_b * z.im.abs()).exp();
                    let v = self.eval(z).norm();
                    if bound > 0.0 {
                        worst = worst.max(v / bound);
                    } else if v > 0.0 {
                        worst = f64::INFINITY;
                    }
                }
            }
        }
        worst
    }
}

fn gk21<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut kron = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut vals = [Complex64::new(0.0, 0.0); 21];
    vals[20] = fc;
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx)?;
        let f2 = f(c + dx)?;
        vals[2 * j] = f1;
        vals[2 * j + 1] = f2;
        kron += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut resasc = WGK[10] * (fc - mean).norm();
    for j in 0..10 {
        resasc += WGK[j] * ((vals[2 * j] - mean).norm() + (vals[2 * j + 1] - mean).norm());
    }
    let resabs: f64 = WGK[10] * fc.norm()
        + (0..10).map(|j| WGK[j] * (vals[2 * j].norm() + vals[2 * j + 1].norm())).sum::<f64>();
    let value = kron * h;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(Error::NonFinite("quadrature integrand"));
    }
    let (resasc, resabs) = (resasc * h.abs(), resabs * h.abs());
    let mut err = ((kron - gauss) * h).norm();
    if resasc > 0.0 && err > 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    err = err.max(50.0 * f64::EPSILON * resabs);
    Ok((value, err))
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Global adaptive Gauss–Kronrod (10/21) quadrature of a complex integrand on
/// [a, b], starting from `initial` equal panels.
pub fn adaptive<F>(f: F, a: f64, b: f64, initial: usize, abs_tol: f64, rel_tol: f64, max_panels: usize) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let n0 = initial.max(1);
    let mut heap = BinaryHeap::with_capacity(n0 * 2);
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..n0 {
        let pa = a + (b - a) * i as f64 / n0 as f64;
        let pb = a + (b - a) * (i + 1) as f64 / n0 as f64;
        let (v, e) = gk21(&f, pa, pb)?;
        total += v;
        err += e;
        heap.push(Panel { a: pa, b: pb, value: v, err: e });
    }
    while err > abs_tol.max(rel_tol * total.norm()) {
        if heap.len() >= max_panels {
            return Err(Error::ToleranceNotMet { estimate: err, target: abs_tol.max(rel_tol * total.norm()) });
        }
        let worst = heap.pop().expect("nonempty");
        let m = 0.5 * (worst.a + worst.b);
        if m <= worst.a || m >= worst.b {
            // The panel cannot be split further in double precision.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, m)?;
        let (v2, e2) = gk21(&f, m, worst.b)?;
        total = total - worst.value + v1 + v2;
        err = err - worst.err + e1 + e2;
        heap.push(Panel { a: worst.a, b: m, value: v1, err: e1 });
        heap.push(Panel { a: m, b: worst.b, value: v2, err: e2 });
    }
    // The running sums drift; resum once.
    let value = heap.iter().fold(Complex64::new(0.0, 0.0), |s, p| s + p.value);
    let error = heap.iter().map(|p| p.err).sum();
    Ok(QuadResult { value, error, radius: b, theta: 0.0, panels: heap.len() })
}

/// Smallest R with ∫_R^∞ e^{log_amp − rate·y²} dy ≤ target.
pub fn gaussian_tail_radius(log_amp: f64, rate: f64, target: f64) -> Result<f64> {
    if !(rate > 0.0) || !rate.is_finite() {
        return Err(Error::NoDecay(rate));
    }
    let sa = rate.sqrt();
    let log_tail = |r: f64| log_amp + (PI.sqrt() / (2.0 * sa)).ln() + erfcx_real(r * sa).ln() - rate * r * r;
    let goal = target.ln();
    if log_tail(0.0) <= goal {
        return Ok(0.0);
    }
    let mut hi = 1.0 / sa;
    while log_tail(hi) > goal {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if log_tail(mid) > goal {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// A bound |f(z)| ≤ e^{log_amp}·e^{−rate·Im(z²)} on the sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    pub log_amp: f64,
    pub rate: f64,
}

/// e^{iθ}∫₀^∞ f(y e^{iθ}) dy at θ = `theta`, truncated at the certified radius.
pub fn fresnel_ray<F>(f: F, env: GaussianEnvelope, theta: f64, cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    cfg.validate()?;
    if !(env.rate > 0.0) {
        return Err(Error::NoDecay(env.rate));
    }
    if !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain(format!("ray angle must lie in (0, pi/2), got {theta}")));
    }
    let decay = env.rate * (2.0 * theta).sin();
    let tail_target = cfg.abs_tol / (2.0 * cfg.safety);
    let radius = gaussian_tail_radius(env.log_amp, decay, tail_target)?;
    let rot = Complex64::from_polar(1.0, theta);
    if radius == 0.0 {
        return Ok(QuadResult { value: Complex64::new(0.0, 0.0), error: tail_target, radius, theta, panels: 0 });
    }
    // Panels of roughly one oscillation of the Gaussian phase at the far end.
    let phase_scale = env.rate * (2.0 * theta).cos().abs() * radius * radius;
    let initial = ((phase_scale / PI).ceil() as usize).clamp(8, cfg.max_panels / 2);
    let g = |y: f64| Ok(f(rot * y)? * rot);
    let mut r = adaptive(g, 0.0, radius, initial, cfg.abs_tol / 2.0, cfg.rel_tol, cfg.max_panels)?;
    r.error += tail_target;
    r.radius = radius;
    r.theta = theta;
    Ok(r)
}

/// e^{iθ}∫₀^∞ f(y e^{iθ}) dy with θ = cfg.theta_rot, for |f(z)| ≤ A e^{−ε Im z²}.
pub fn fresnel_semiaxis<F>(f: F, bound_a: f64, eps: f64, cfg: &QuadratureConfig) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !(eps > 0.0) {
        return Err(Error::NoDecay(eps));
    }
    let env = GaussianEnvelope { log_amp: bound_a.max(f64::MIN_POSITIVE).ln(), rate: eps };
    fresnel_ray(f, env, cfg.theta_rot, cfg)
}

/// Truncation radius for the integrand bound A·e^{t(B+|x|/2t)² tan θ}·e^{−Im(z²)/8t}
/// of a solution component; `a` is the product of the datum and kernel constants.
pub fn psi_tail_radius(t: f64, x: f64, a: f64, b: f64, theta: f64, eps_target: f64) -> Result<f64> {
    if !(t > 0.0) || !(theta > 0.0 && theta < FRAC_PI_2) {
        return Err(Error::Domain(format!("need t > 0 and theta in (0, pi/2), got t={t}, theta={theta}")));
    }
    let growth = b + x.abs() / (2.0 * t);
    let log_amp = a.max(f64::MIN_POSITIVE).ln() + t * growth * growth * theta.tan();
    gaussian_tail_radius(log_amp, (2.0 * theta).sin() / (8.0 * t), eps_target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::lambda_fn;

    #[test]
    fn nodes_integrate_polynomials() {
        // GK21 is exact through degree 31 on [−1, 1].
        for deg in 0..=31u32 {
            let (v, _) = gk21(&|x: f64| Ok(Complex64::new(x.powi(deg as i32), 0.0)), -1.0, 1.0).unwrap();
            let want = if deg % 2 == 1 { 0.0 } else { 2.0 / (deg as f64 + 1.0) };
            assert!((v.re - want).abs() < 1e-15, "degree {deg}");
        }
    }

    #[test]
    fn gaussian_on_ray() {
        // |e^{−z²}| = e^{−cot(2θ)·Im z²} on the ray, so ε = 1 at θ = π/8.
        let cfg = QuadratureConfig { theta_rot: PI / 8.0, abs_tol: 1e-14, ..Default::default() };
        let r = fresnel_semiaxis(|z: Complex64| Ok((-z * z).exp()), 1.0, 1.0, &cfg).unwrap();
        assert!((r.value - PI.sqrt() / 2.0).norm() < 1e-12);
        let r = fresnel_semiaxis(|z: Complex64| Ok((-z * z - 2.0 * z).exp()), 1.0, 1.0, &cfg).unwrap();
        let want = PI.sqrt() / 2.0 * lambda_fn(Complex64::new(1.0, 0.0)).unwrap();
        assert!((r.value - want).norm() < 1e-12);
    }

    #[test]
    fn fresnel_integral() {
        let cfg = QuadratureConfig { abs_tol: 1e-14, ..Default::default() };
        let i = Complex64::new(0.0, 1.0);
        let r = fresnel_semiaxis(|z: Complex64| Ok((i * z * z).exp()), 1.0, 1.0, &cfg).unwrap();
        let want = PI.sqrt() / 2.0 * Complex64::from_polar(1.0, FRAC_PI_4);
        assert!((r.value - want).norm() < 1e-12);
        assert!(r.error < 1e-10);
    }

    #[test]
    fn no_decay_rejected() {
        let cfg = QuadratureConfig::default();
        let r = fresnel_semiaxis(|_z: Complex64| Ok(Complex64::new(1.0, 0.0)), 1.0, 0.0, &cfg);
        assert_eq!(r, Err(Error::NoDecay(0.0)));
    }

    #[test]
    fn budget_exhaustion_reported() {
        let r = adaptive(|x: f64| Ok(Complex64::new((1.0 / x.max(1e-300)).sin(), 0.0)), 0.0, 1.0, 1, 1e-15, 1e-15, 10);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }

    #[test]
    fn tail_radius_certifies() {
        let r = psi_tail_radius(1.0, 1.0, 1.0, 3.0, FRAC_PI_4, 1e-12).unwrap();
        assert!(r.is_finite() && r > 0.0);
        let growth: f64 = 3.0 + 0.5;
        let rate = (FRAC_PI_2).sin() / 8.0;
        let amp = (growth * growth * FRAC_PI_4.tan()).exp();
        // Direct evaluation of the tail integral of the envelope beyond r.
        let sa = f64::sqrt(rate);
        let tail = amp * PI.sqrt() / (2.0 * sa) * libm_erfc(r * sa);
        assert!(tail <= 1e-12 * (1.0 + 1e-9), "tail {tail:e}");
        let tail_before = amp * PI.sqrt() / (2.0 * sa) * libm_erfc(0.99 * r * sa);
        assert!(tail_before > 1e-12);
    }

    fn libm_erfc(x: f64) -> f64 {
        erfcx_real(x) * (-x * x).exp()
    }

    #[test]
    fn tail_radius_monotone() {
        let mut prev = 0.0;
        for &t in &[0.1, 0.5, 1.0, 4.0, 20.0] {
            let r = psi_tail_radius(t, 1.0, 1.0, 1.0, FRAC_PI_4, 1e-10).unwrap();
            assert!(r >= prev);
            prev = r;
        }
        let a = psi_tail_radius(1.0, 1.0, 1.0, 1.0, FRAC_PI_4, 1e-10).unwrap();
        let b = psi_tail_radius(1.0, 1.0, 1.0, 1.0, FRAC_PI_4, 0.5e-10).unwrap();
        assert!(b >= a);
    }

    #[test]
    fn datum_mirror_and_bound() {
        let f = HolomorphicDatum::plane_wave(2.0);
        let g = f.mirrored();
        let z = Complex64::new(0.3, 0.7);
        assert_eq!(g.eval(z), f.eval(-z));
        assert!(f.bound_ratio(3.0, 20) <= 1.0 + 1e-9);
        assert_eq!(HolomorphicDatum::zero().eval(z), Complex64::new(0.0, 0.0));
    }
}
