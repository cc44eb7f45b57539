//! The superoscillating sequence F_n(z) = Σ_l C_l(n,k) e^{i(1−2l/n)z}.

use crate::contour_quadrature::{HolomorphicDatum, QuadratureConfig};
use crate::error::{Error, Result};
use crate::evolution::{psi_plane_wave_with, psi_with, Estimate};
use crate::interaction::{GreenCoefficients, UnitaryInteraction};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

/// Σ|C_l| above which the spectral sum is abandoned for quadrature.
pub const SPECTRAL_CONDITIONING_LIMIT: f64 = 1e8;
/// Largest n accepted by [`SuperoscillatingSequence::new`].
pub const MAX_N: u32 = 120;

/// ln|C_l(n,k)| and the sign of C_l; the magnitude is −∞ for C_l = 0.
pub fn coefficient_log(l: u32, n: u32, k: f64) -> Result<(f64, f64)> {
    if l > n {
        return Err(Error::IndexOutOfRange { l: l as i64, n });
    }
    let ln_binom: f64 = (1..=l).map(|i| (((n - l + i) as f64) / i as f64).ln()).sum();
    let (a, b) = ((1.0 + k) / 2.0, (1.0 - k) / 2.0);
    let factor = |base: f64, p: u32| -> (f64, f64) {
        if p == 0 {
            (0.0, 1.0)
        } else if base == 0.0 {
            (f64::NEG_INFINITY, 1.0)
        } else {
            let s = if base < 0.0 && p % 2 == 1 { -1.0 } else { 1.0 };
            (p as f64 * base.abs().ln(), s)
        }
    };
    let (la, sa) = factor(a, n - l);
    let (lb, sb) = factor(b, l);
    Ok((ln_binom + la + lb, sa * sb))
}

/// C_l(n,k) = binom(n,l)·((1+k)/2)^{n−l}·((1−k)/2)^l.
pub fn coefficient(l: i64, n: u32, k: f64) -> Result<f64> {
    if l < 0 || l > n as i64 {
        return Err(Error::IndexOutOfRange { l, n });
    }
    let (lm, s) = coefficient_log(l as u32, n, k)?;
    Ok(s * lm.exp())
}

/// k_l(n) = 1 − 2l/n
pub fn frequency(l: u32, n: u32) -> f64 {
    1.0 - 2.0 * l as f64 / n as f64
}

/// Neumaier-compensated sum of terms taken in ascending modulus.
pub fn compensated_sum(mut terms: Vec<Complex64>) -> Complex64 {
    terms.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    let mut sum = (0.0f64, 0.0f64);
    let mut comp = (0.0f64, 0.0f64);
    for t in terms {
        for (s, c, v) in [(&mut sum.0, &mut comp.0, t.re), (&mut sum.1, &mut comp.1, t.im)] {
            let next = *s + v;
            if s.abs() >= v.abs() {
                *c += (*s - next) + v;
            } else {
                *c += (v - next) + *s;
            }
            *s = next;
        }
    }
    Complex64::new(sum.0 + comp.0, sum.1 + comp.1)
}

/// F_n(z) = (cos(z/n) + ik·sin(z/n))^n, the closed form of the binomial sum.
pub fn f_n(z: Complex64, n: u32, k: f64) -> Complex64 {
    let w = z / n as f64;
    (w.cos() + Complex64::new(0.0, k) * w.sin()).powu(n)
}

/// F_n(z) summed term by term; loses about log10(Σ|C_l|) digits.
pub fn f_n_series(z: Complex64, n: u32, k: f64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let terms = (0..=n)
        .map(|l| {
            let c = coefficient(l as i64, n, k).expect("l in range");
            c * (i * frequency(l, n) * z).exp()
        })
        .collect();
    compensated_sum(terms)
}

/// Σ_l |C_l(n,k)|, which equals max(1,|k|)^n.
pub fn conditioning(n: u32, k: f64) -> f64 {
    (0..=n).map(|l| coefficient(l as i64, n, k).expect("l in range").abs()).sum()
}

/// sup of |F_n(z) − e^{ikz}|·e^{−C|z|} over a polar grid of the double sector.
pub fn convergence_metric(n: u32, k: f64, big_c: f64, sector: f64, radius: f64) -> f64 {
    const NR: usize = 40;
    const NA: usize = 16;
    let i = Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for ir in 1..=NR {
        let r = radius * ir as f64 / NR as f64;
        for ia in 0..=NA {
            let th = sector * ia as f64 / NA as f64;
            for z in [Complex64::from_polar(r, th), -Complex64::from_polar(r, th)] {
                let d = (f_n(z, n, k) - (i * k * z).exp()).norm() * (-big_c * r).exp();
                worst = worst.max(d);
            }
        }
    }
    worst
}

/// Default weight C = |k| + 1 of the convergence metric.
pub fn default_metric_weight(k: f64) -> f64 {
    k.abs() + 1.0
}

/// sup over a uniform grid of [−1, 1] of |F_n(x) − e^{ikx}|.
pub fn sup_error_real(n: u32, k: f64, points: usize) -> f64 {
    let i = Complex64::new(0.0, 1.0);
    (0..=points)
        .map(|j| {
            let x = -1.0 + 2.0 * j as f64 / points as f64;
            let z = Complex64::new(x, 0.0);
            (f_n(z, n, k) - (i * k * z).exp()).norm()
        })
        .fold(0.0, f64::max)
}

/// Validated parameters (n, k) with |k| > 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperoscillatingSequence {
    n: u32,
    k: f64,
}

impl SuperoscillatingSequence {
    pub fn new(n: u32, k: f64) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Domain(format!("n must lie in 1..={MAX_N}, got {n}")));
        }
        if !k.is_finite() || k.abs() <= 1.0 {
            return Err(Error::Domain(format!("superoscillation needs |k| > 1, got {k}")));
        }
        Ok(SuperoscillatingSequence { n, k })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..=self.n).map(|l| frequency(l, self.n)).collect()
    }

    pub fn coefficients(&self) -> Vec<f64> {
        (0..=self.n).map(|l| coefficient(l as i64, self.n, self.k).expect("l in range")).collect()
    }

    pub fn conditioning(&self) -> f64 {
        conditioning(self.n, self.k)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        f_n(z, self.n, self.k)
    }

    /// F_n as an initial datum, with |F_n(z)| ≤ |k|^n e^{|Im z|}.
    pub fn datum(&self) -> HolomorphicDatum {
        let (n, k) = (self.n, self.k);
        let f = Arc::new(move |z: Complex64| f_n(z, n, k));
        HolomorphicDatum::new(move |z| f(z), self.conditioning(), 1.0, FRAC_PI_2).expect("valid bounds")
    }
}

/// Σ_l C_l·Ψ(t,x;e^{ik_l·}) with a rounding estimate ε·Σ|C_l Ψ_l|.
pub fn evolve_spectral_with(c: &GreenCoefficients, seq: &SuperoscillatingSequence, t: f64, x: f64) -> Result<Estimate> {
    let coeffs = seq.coefficients();
    let terms = coeffs
        .iter()
        .enumerate()
        .map(|(l, &cl)| Ok(cl * psi_plane_wave_with(c, t, x, frequency(l as u32, seq.n))?))
        .collect::<Result<Vec<_>>>()?;
    let scale: f64 = terms.iter().map(|v| v.norm()).sum();
    Ok(Estimate { value: compensated_sum(terms), error: 64.0 * f64::EPSILON * scale.max(1.0) })
}

/// Ψ(t,x;F_n) by linearity through the closed plane-wave solutions.
pub fn evolve_superoscillation(u: &UnitaryInteraction, t: f64, x: f64, n: u32, k: f64) -> Result<Complex64> {
    let seq = SuperoscillatingSequence::new(n, k)?;
    Ok(evolve_spectral_with(&u.coefficients(), &seq, t, x)?.value)
}

/// Ψ(t,x;F_n) by contour quadrature of the entire extension of F_n.
pub fn evolve_superoscillation_quadrature(
    u: &UnitaryInteraction,
    t: f64,
    x: f64,
    n: u32,
    k: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    let seq = SuperoscillatingSequence::new(n, k)?;
    psi_with(&u.coefficients(), t, x, &seq.datum(), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_examples() {
        assert!((coefficient(0, 1, 3.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((coefficient(2, 4, 2.0).unwrap() - 27.0 / 8.0).abs() < 1e-14);
        assert!(matches!(coefficient(5, 4, 2.0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(coefficient(-1, 4, 2.0), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(coefficient(0, 7, 1.0).unwrap(), 1.0);
        assert_eq!(coefficient(3, 7, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn binomial_sums() {
        for n in 1..=30 {
            for &k in &[1.5, 2.0, -3.0] {
                let c: Vec<f64> = (0..=n).map(|l| coefficient(l as i64, n, k).unwrap()).collect();
                let plain: Vec<Complex64> = c.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                assert!((compensated_sum(plain).re - 1.0).abs() < 1e-9 * conditioning(n, k));
                // Σ C_l·k_l = k.
                let first: Vec<Complex64> =
                    c.iter().enumerate().map(|(l, &v)| Complex64::new(v * frequency(l as u32, n), 0.0)).collect();
                assert!((compensated_sum(first).re - k).abs() < 1e-9 * conditioning(n, k));
                assert!((conditioning(n, k) - k.abs().powi(n as i32)).abs() < 1e-9 * conditioning(n, k));
            }
        }
    }

    #[test]
    fn product_form_equals_series() {
        for &(n, k) in &[(5, 2.0), (12, -1.7), (20, 3.0)] {
            for &z in &[Complex64::new(0.4, 0.0), Complex64::new(-1.0, 0.3), Complex64::new(2.0, -0.5)] {
                let a = f_n(z, n, k);
                let b = f_n_series(z, n, k);
                assert!((a - b).norm() < 1e-13 * conditioning(n, k) * (z.im.abs()).exp());
            }
        }
        assert_eq!(f_n(Complex64::new(0.0, 0.0), 40, 2.0), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn real_axis_error_improves() {
        let e20 = sup_error_real(20, 2.0, 400);
        let e40 = sup_error_real(40, 2.0, 400);
        assert!(e40 < e20);
    }

    #[test]
    fn metric_trend() {
        let c = 3.0;
        let m: Vec<f64> = [10, 20, 40].iter().map(|&n| convergence_metric(n, 2.0, c, FRAC_PI_2, 2.0)).collect();
        assert!(m[0] > m[1] && m[1] > m[2], "{m:?}");
        assert!(convergence_metric(60, 4.0, 5.0, FRAC_PI_2, 2.0).is_finite());
        assert!(convergence_metric(50, 1.0, 2.0, FRAC_PI_2, 2.0) < 1e-13);
    }

    #[test]
    fn free_evolution_of_sequence() {
        let u = UnitaryInteraction::free();
        let (t, x, n, k) = (0.6, 0.9, 12, 2.0);
        let got = evolve_superoscillation(&u, t, x, n, k).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let want: Complex64 = (0..=n)
            .map(|l| {
                let kl = frequency(l, n);
                coefficient(l as i64, n, k).unwrap() * (i * (kl * x - kl * kl * t)).exp()
            })
            .sum();
        assert!((got - want).norm() < 1e-12);
    }

    #[test]
    fn bad_parameters() {
        assert!(SuperoscillatingSequence::new(10, 0.5).is_err());
        assert!(SuperoscillatingSequence::new(0, 2.0).is_err());
        assert!(SuperoscillatingSequence::new(MAX_N + 1, 2.0).is_err());
        let s = SuperoscillatingSequence::new(10, 2.0).unwrap();
        assert!(s.frequencies().iter().all(|f| f.abs() <= 1.0));
    }
}
