//! Negative bound states of the point-interaction Hamiltonian.

use crate::green::interface_residual;
use crate::interaction::{Sign, SignPair, UnitaryInteraction, EPS_CASE};
use crate::matrix::{max_abs, Mat2};
use num_complex::Complex64;

/// Relative tolerance for declaring ω+ = ω−.
pub const EPS_DEGENERATE: f64 = 1e-10;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// ψ(x) = (even + odd·sgn x)·e^{ω|x|}
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfunction {
    pub even: Complex64,
    pub odd: Complex64,
}

impl Eigenfunction {
    pub fn eval(&self, omega: f64, x: f64) -> Complex64 {
        let s = if x < 0.0 { -1.0 } else { 1.0 };
        (self.even + s * self.odd) * (omega * x.abs()).exp()
    }

    /// (ψ(0⁺), ψ(0⁻))
    pub fn boundary_values(&self) -> [Complex64; 2] {
        [self.even + self.odd, self.even - self.odd]
    }

    /// (ψ′(0⁺), ψ′(0⁻))
    pub fn boundary_derivatives(&self, omega: f64) -> [Complex64; 2] {
        [omega * (self.even + self.odd), -omega * (self.even - self.odd)]
    }

    pub fn norm(&self) -> f64 {
        (self.even.norm_sqr() + self.odd.norm_sqr()).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub energy: f64,
    pub omega: f64,
    pub multiplicity: usize,
    pub eigenfunctions: Vec<Eigenfunction>,
}

/// det((I−J) + is(I+J))
pub fn bound_state_determinant(u: &UnitaryInteraction, s: f64) -> Complex64 {
    let j = u.matrix();
    let id = Mat2::identity();
    ((id - j) + (id + j).scale(Complex64::new(0.0, s))).det()
}

/// A null vector [A; B] of (I−J) − iω(I+J), as (even, odd) coefficients.
fn null_vector(u: &UnitaryInteraction, omega: f64) -> Eigenfunction {
    let j = u.matrix();
    let id = Mat2::identity();
    let m = ((id - j) - (id + j).scale(I * omega)).0;
    let r0 = m[0][0].norm() + m[0][1].norm();
    let r1 = m[1][0].norm() + m[1][1].norm();
    let (a, b) = if r0 >= r1 { (-m[0][1], m[0][0]) } else { (-m[1][1], m[1][0]) };
    let (a, b) = if a.norm() + b.norm() == 0.0 { (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)) } else { (a, b) };
    Eigenfunction { even: (a + b) / 2.0, odd: (a - b) / 2.0 }
}

/// The negative eigenvalues E = −ω² read off from ω± < 0.
pub fn bound_states(u: &UnitaryInteraction) -> Vec<BoundState> {
    let c = u.coefficients();
    let (wp, wm) = (c.omega_plus, c.omega_minus);
    let mut out = Vec::new();
    if wp < 0.0 && wm < 0.0 && (wp - wm).abs() < EPS_DEGENERATE * wp.abs().max(1.0) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        out.push(BoundState {
            energy: -wp * wp,
            omega: wp,
            multiplicity: 2,
            eigenfunctions: vec![Eigenfunction { even: one, odd: zero }, Eigenfunction { even: zero, odd: one }],
        });
        return out;
    }
    let (alpha, beta) = (u.alpha(), u.beta());
    let r = (1.0 - alpha.re * alpha.re).max(0.0).sqrt();
    for (omega, sign) in [(wp, -1.0), (wm, 1.0)] {
        if omega >= 0.0 {
            continue;
        }
        let ef = if r > EPS_CASE {
            Eigenfunction {
                even: Complex64::new(1.0 + sign * beta.im / r, 0.0),
                odd: sign * Complex64::new(alpha.im, beta.re) / r,
            }
        } else {
            null_vector(u, omega)
        };
        out.push(BoundState { energy: -omega * omega, omega, multiplicity: 1, eigenfunctions: vec![ef] });
    }
    out
}

/// Residuals of one bound state: the interface condition for each
/// eigenfunction, and the linear system (I−J)[A;B] = −i√(−E)(I+J)[A;B].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenResidual {
    pub interface: f64,
    pub linear_system: f64,
    pub determinant: f64,
}

pub fn eigenfunction_residual(u: &UnitaryInteraction, s: &BoundState) -> EigenResidual {
    let j = u.matrix();
    let id = Mat2::identity();
    let root = (-s.energy).sqrt();
    let mut interface: f64 = 0.0;
    let mut linear: f64 = 0.0;
    for ef in &s.eigenfunctions {
        let scale = ef.norm().max(f64::MIN_POSITIVE);
        let d = ef.boundary_derivatives(s.omega);
        let r = interface_residual(&j, ef.boundary_values(), [d[0], -d[1]]);
        interface = interface.max(max_abs(&r) / scale);
        let ab = ef.boundary_values();
        let lhs = (id - j).apply(ab);
        let rhs = (id + j).scale(Complex64::new(0.0, -root)).apply(ab);
        linear = linear.max(max_abs(&[lhs[0] - rhs[0], lhs[1] - rhs[1]]) / scale);
    }
    EigenResidual { interface, linear_system: linear, determinant: bound_state_determinant(u, root).norm() }
}

/// Number of mismatches between the stationary terms of the long-time
/// asymptotics (ω_j < 0 with nonzero weight) and the reported bound states.
pub fn asymptotic_consistency(u: &UnitaryInteraction, k: f64, x: f64, _t: f64) -> usize {
    let c = u.coefficients();
    let states = bound_states(u);
    let xs = Sign::of(x);
    let mut mismatches = 0;
    for (b, omega) in c.active() {
        let stationary = omega < 0.0;
        let has_state = states.iter().any(|s| (s.omega - omega).abs() <= EPS_DEGENERATE * omega.abs().max(1.0));
        if stationary != has_state {
            mismatches += 1;
        }
        if stationary {
            // The weight must be finite; for k ≠ 0 no pole can occur.
            let pm = SignPair::new(xs, Sign::Minus);
            let pp = SignPair::new(xs, Sign::Plus);
            let w = c.mu(b, pm) / Complex64::new(omega, -k) + c.mu(b, pp) / Complex64::new(omega, k);
            if !w.re.is_finite() || !w.im.is_finite() {
                mismatches += 1;
            }
        }
    }
    for s in &states {
        let present = c.active().any(|(_, w)| w < 0.0 && (s.omega - w).abs() <= EPS_DEGENERATE * w.abs().max(1.0));
        if !present {
            mismatches += 1;
        }
    }
    mismatches
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_negative_has_one_state() {
        for &c in &[-1.0, -2.0, -0.3] {
            let u = UnitaryInteraction::delta(c).unwrap();
            let s = bound_states(&u);
            assert_eq!(s.len(), 1);
            assert!((s[0].energy + c * c).abs() < 1e-14, "{:?}", s[0]);
            let r = eigenfunction_residual(&u, &s[0]);
            assert!(r.interface <= 1e-12 && r.linear_system <= 1e-12 && r.determinant <= 1e-10);
        }
        assert!(bound_states(&UnitaryInteraction::delta(1.0).unwrap()).is_empty());
    }

    #[test]
    fn neumann_and_free_have_none() {
        assert!(bound_states(&UnitaryInteraction::neumann()).is_empty());
        assert!(bound_states(&UnitaryInteraction::free()).is_empty());
        assert!(bound_states(&UnitaryInteraction::dirichlet()).is_empty());
    }

    #[test]
    fn robin_states_follow_signs() {
        // Robin(a, b) has exponents a and −b.
        let u = UnitaryInteraction::robin(-1.5, 2.0).unwrap();
        let s = bound_states(&u);
        let mut omegas: Vec<f64> = s.iter().map(|b| b.omega).collect();
        omegas.sort_by(f64::total_cmp);
        assert_eq!(omegas.len(), 2);
        assert!((omegas[0] + 2.0).abs() < 1e-12 && (omegas[1] + 1.5).abs() < 1e-12);
        for b in &s {
            let r = eigenfunction_residual(&u, b);
            assert!(r.interface <= 1e-12, "{r:?}");
        }
        let u = UnitaryInteraction::robin(0.5, -2.0).unwrap();
        assert!(bound_states(&u).is_empty());
    }

    #[test]
    fn degenerate_state() {
        // Robin(a, −a) with a < 0 gives ω+ = ω− = a.
        let u = UnitaryInteraction::robin(-1.0, 1.0).unwrap();
        let s = bound_states(&u);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].multiplicity, 2);
        let r = eigenfunction_residual(&u, &s[0]);
        assert!(r.interface <= 1e-12 && r.determinant <= 1e-10, "{r:?}");
    }

    #[test]
    fn consistency_delta() {
        for &c in &[1.0, -1.0] {
            let u = UnitaryInteraction::delta(c).unwrap();
            assert_eq!(asymptotic_consistency(&u, 2.0, 0.5, 100.0), 0);
        }
    }
}
