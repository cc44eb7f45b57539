//! Unitary interface matrices J = e^{iφ}[[α, −β̄], [β, ᾱ]] and the
//! coefficient tables of the associated Green's function.

use crate::error::{Error, Result};
use crate::matrix::Mat2;
use num_complex::Complex64;
use std::f64::consts::PI;
use std::fmt;

/// Tolerance separating the three cases.
pub const EPS_CASE: f64 = 1e-10;
/// Tolerance on |α|² + |β|² − 1 accepted by the constructors.
pub const EPS_UNITARY: f64 = 1e-10;
/// Exponents ω with |ω| at or below this are treated as zero.
pub const EPS_OMEGA: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Sign of a nonzero real; zero counts as positive.
    pub fn of(v: f64) -> Sign {
        if v < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// The signs (sgn x, sgn y) selecting one quadrant of the coefficient tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignPair {
    pub sx: Sign,
    pub sy: Sign,
}

impl SignPair {
    pub const ALL: [SignPair; 4] = [
        SignPair { sx: Sign::Plus, sy: Sign::Plus },
        SignPair { sx: Sign::Plus, sy: Sign::Minus },
        SignPair { sx: Sign::Minus, sy: Sign::Plus },
        SignPair { sx: Sign::Minus, sy: Sign::Minus },
    ];

    pub fn new(sx: Sign, sy: Sign) -> Self {
        SignPair { sx, sy }
    }

    pub fn of(x: f64, y: f64) -> Self {
        SignPair { sx: Sign::of(x), sy: Sign::of(y) }
    }

    pub fn index(self) -> usize {
        match (self.sx, self.sy) {
            (Sign::Plus, Sign::Plus) => 0,
            (Sign::Plus, Sign::Minus) => 1,
            (Sign::Minus, Sign::Plus) => 2,
            (Sign::Minus, Sign::Minus) => 3,
        }
    }

    /// Θ(xy)
    pub fn same(self) -> f64 {
        if self.sx == self.sy {
            1.0
        } else {
            0.0
        }
    }

    /// sgn(xy)
    pub fn product(self) -> f64 {
        self.sx.value() * self.sy.value()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteractionCase {
    /// rank(I + J) = 2
    CaseI,
    /// rank(I + J) = 1
    CaseII,
    /// J = −I
    CaseIII,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryInteraction {
    phi: f64,
    alpha: Complex64,
    beta: Complex64,
}

impl fmt::Display for UnitaryInteraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "phi={:.16e} alpha=({:.16e},{:.16e}) beta=({:.16e},{:.16e})",
            self.phi, self.alpha.re, self.alpha.im, self.beta.re, self.beta.im
        )
    }
}

impl UnitaryInteraction {
    /// Validate (φ, α, β), reducing φ into [0, π).
    ///
    /// A shift of φ by π is compensated by negating α and β. The pair is
    /// renormalized onto |α|² + |β|² = 1.
    pub fn from_parameters(phi: f64, alpha: Complex64, beta: Complex64) -> Result<Self> {
        let finite = [phi, alpha.re, alpha.im, beta.re, beta.im].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::NonFinite("from_parameters"));
        }
        let n2 = alpha.norm_sqr() + beta.norm_sqr();
        if (n2 - 1.0).abs() > EPS_UNITARY {
            return Err(Error::NotUnitary((n2 - 1.0).abs()));
        }
        let n = n2.sqrt();
        let (mut alpha, mut beta) = (alpha / n, beta / n);
        let k = (phi / PI).floor();
        let mut phi = phi - k * PI;
        if phi >= PI {
            phi -= PI;
            alpha = -alpha;
            beta = -beta;
        }
        if phi < 0.0 {
            phi = 0.0;
        }
        if (k as i64).rem_euclid(2) == 1 {
            alpha = -alpha;
            beta = -beta;
        }
        Ok(UnitaryInteraction { phi, alpha, beta })
    }

    /// Recover the parameters from a unitary matrix, with e^{2iφ} = det J.
    pub fn from_matrix(j: &Mat2) -> Result<Self> {
        if j.0.iter().flatten().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("from_matrix"));
        }
        let defect = (*j * j.adjoint() - Mat2::identity()).max_norm();
        if defect > EPS_UNITARY {
            return Err(Error::NotUnitary(defect));
        }
        let mut phi = j.det().arg() / 2.0;
        if phi < 0.0 {
            phi += PI;
        }
        let rot = Complex64::from_polar(1.0, -phi);
        Self::from_parameters(phi, rot * j.0[0][0], rot * j.0[1][0])
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// The matrix J.
    pub fn matrix(&self) -> Mat2 {
        let (a, b) = (self.alpha, self.beta);
        Mat2::new(a, -b.conj(), b, a.conj()).scale(Complex64::from_polar(1.0, self.phi))
    }

    /// Continuous u and u′ across the origin.
    pub fn free() -> Self {
        UnitaryInteraction { phi: PI / 2.0, alpha: ZERO, beta: Complex64::new(0.0, -1.0) }
    }

    /// The δ-interaction u′(0⁺) − u′(0⁻) = 2c·u(0), cot φ = c.
    pub fn delta(c: f64) -> Result<Self> {
        if c == 0.0 {
            return Err(Error::ZeroStrength);
        }
        if !c.is_finite() {
            return Err(Error::NonFinite("delta"));
        }
        let phi = 1f64.atan2(c);
        let alpha = Complex64::new(-phi.cos(), 0.0);
        let beta = Complex64::new(0.0, -phi.sin());
        Self::from_parameters(phi, alpha, beta)
    }

    /// The δ′-interaction, tan φ = −c.
    pub fn delta_prime(c: f64) -> Result<Self> {
        if c == 0.0 {
            return Err(Error::ZeroStrength);
        }
        if !c.is_finite() {
            return Err(Error::NonFinite("delta_prime"));
        }
        let mut phi = (-c).atan();
        if phi < 0.0 {
            phi += PI;
        }
        let alpha = Complex64::new(phi.cos(), 0.0);
        let beta = Complex64::new(0.0, -phi.sin());
        Self::from_parameters(phi, alpha, beta)
    }

    /// u(0⁺) = u(0⁻) = 0
    pub fn dirichlet() -> Self {
        UnitaryInteraction { phi: 0.0, alpha: Complex64::new(-1.0, 0.0), beta: ZERO }
    }

    /// u′(0⁺) = u′(0⁻) = 0
    pub fn neumann() -> Self {
        UnitaryInteraction { phi: 0.0, alpha: Complex64::new(1.0, 0.0), beta: ZERO }
    }

    /// Decoupled Robin conditions u′(0⁺) = a·u(0⁺), u′(0⁻) = b·u(0⁻).
    pub fn robin(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite("robin"));
        }
        let s = if b - a < 0.0 { -1.0 } else { 1.0 };
        let n = ((1.0 + a * a) * (1.0 + b * b)).sqrt();
        let one_ia = Complex64::new(1.0, -a);
        let alpha = s * one_ia * Complex64::new(1.0, -b) / n;
        let phase = s * one_ia * Complex64::new(1.0, b) / n;
        Self::from_parameters(phase.arg(), alpha, ZERO)
    }

    /// |Re α + cos φ|, the distance from the Case I boundary.
    pub fn case_margin(&self) -> f64 {
        (self.alpha.re + self.phi.cos()).abs()
    }

    pub fn classify(&self) -> InteractionCase {
        if self.case_margin() > EPS_CASE {
            InteractionCase::CaseI
        } else if (self.alpha.re + 1.0).abs() > EPS_CASE {
            InteractionCase::CaseII
        } else {
            InteractionCase::CaseIII
        }
    }

    pub fn eta(&self, s: SignPair) -> Complex64 {
        let ra = self.alpha.re;
        if (1.0 - ra.abs()).abs() <= EPS_CASE {
            return ZERO;
        }
        let i = Complex64::new(0.0, 1.0);
        let num = match s.index() {
            0 => Complex64::new(-self.alpha.im, 0.0),
            1 => -i * self.beta.conj(),
            2 => i * self.beta,
            _ => Complex64::new(self.alpha.im, 0.0),
        };
        num / (1.0 - ra * ra).sqrt()
    }

    pub fn coefficients(&self) -> GreenCoefficients {
        let case = self.classify();
        let margin = self.case_margin();
        let (sp, cp) = self.phi.sin_cos();
        let ra = self.alpha.re;
        let eta: [Complex64; 4] = SignPair::ALL.map(|s| self.eta(s));
        let mut out = GreenCoefficients {
            omega_plus: 0.0,
            omega_minus: 0.0,
            mu_plus: [ZERO; 4],
            mu_minus: [ZERO; 4],
            mu_zero: [Complex64::new(-1.0, 0.0); 4],
            case,
            margin,
        };
        match case {
            InteractionCase::CaseI => {
                let d = cp + ra;
                let r = (1.0 - ra * ra).max(0.0).sqrt();
                // ω− never cancels since sin φ ≥ 0; ω+ from ω+ω− = (Re α − cos φ)/d.
                let wm = (-sp - r) / d;
                let wp = if sp + r > 0.0 { (ra - cp) / (-sp - r) } else { 0.0 };
                out.omega_plus = snap(wp);
                out.omega_minus = snap(wm);
                for s in SignPair::ALL {
                    let k = s.index();
                    out.mu_plus[k] = -(out.omega_plus / 2.0) * (s.same() + eta[k]);
                    out.mu_minus[k] = -(out.omega_minus / 2.0) * (s.same() - eta[k]);
                    out.mu_zero[k] = Complex64::new(s.product(), 0.0);
                }
            }
            InteractionCase::CaseII => {
                out.omega_plus = snap(cp / sp);
                for s in SignPair::ALL {
                    let k = s.index();
                    out.mu_plus[k] = -(out.omega_plus / 2.0) * (s.same() + eta[k]);
                    out.mu_zero[k] = eta[k] - (1.0 - s.same());
                }
            }
            InteractionCase::CaseIII => {}
        }
        out
    }
}

fn snap(w: f64) -> f64 {
    if w.abs() <= EPS_OMEGA {
        0.0
    } else {
        w
    }
}

/// Which of the two exponential kernels a coefficient belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Exponents ω± and the quadrant tables μ±, μ0 of the Green's function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreenCoefficients {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub mu_plus: [Complex64; 4],
    pub mu_minus: [Complex64; 4],
    pub mu_zero: [Complex64; 4],
    pub case: InteractionCase,
    /// |Re α + cos φ| of the source interaction.
    pub margin: f64,
}

impl GreenCoefficients {
    pub fn omega(&self, b: Branch) -> f64 {
        match b {
            Branch::Plus => self.omega_plus,
            Branch::Minus => self.omega_minus,
        }
    }

    pub fn mu(&self, b: Branch, s: SignPair) -> Complex64 {
        match b {
            Branch::Plus => self.mu_plus[s.index()],
            Branch::Minus => self.mu_minus[s.index()],
        }
    }

    pub fn mu0(&self, s: SignPair) -> Complex64 {
        self.mu_zero[s.index()]
    }

    /// The branches with a nonzero exponent.
    pub fn active(&self) -> impl Iterator<Item = (Branch, f64)> + '_ {
        [Branch::Plus, Branch::Minus]
            .into_iter()
            .map(|b| (b, self.omega(b)))
            .filter(|&(_, w)| w != 0.0)
    }

    /// The table as the matrix [[T(+,+), T(+,−)], [T(−,+), T(−,−)]].
    pub fn table_matrix(t: &[Complex64; 4]) -> Mat2 {
        Mat2::new(t[0], t[1], t[2], t[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &Mat2, b: &Mat2, tol: f64) -> bool {
        (*a - *b).max_norm() <= tol
    }

    #[test]
    fn named_matrices() {
        let o = c(1.0, 0.0);
        let z = c(0.0, 0.0);
        let f = UnitaryInteraction::from_parameters(PI / 2.0, z, c(0.0, -1.0)).unwrap();
        assert!(close(&f.matrix(), &Mat2::new(z, o, o, z), 1e-15));
        assert!(close(&UnitaryInteraction::neumann().matrix(), &Mat2::identity(), 0.0));
        assert!(close(&UnitaryInteraction::dirichlet().matrix(), &Mat2::scalar(-o), 0.0));
    }

    #[test]
    fn phi_reduction() {
        let u = UnitaryInteraction::from_parameters(PI / 2.0 + PI, c(0.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!((u.phi() - PI / 2.0).abs() < 1e-15);
        assert!(close(&u.matrix(), &UnitaryInteraction::free().matrix(), 1e-15));
        let v = UnitaryInteraction::from_parameters(-0.3, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        assert!(v.phi() >= 0.0 && v.phi() < PI);
        let direct = Mat2::new(c(0.6, 0.0), c(0.0, 0.8), c(0.0, 0.8), c(0.6, 0.0))
            .scale(Complex64::from_polar(1.0, -0.3));
        assert!(close(&v.matrix(), &direct, 1e-15));
    }

    #[test]
    fn not_unitary() {
        let r = UnitaryInteraction::from_parameters(0.0, c(1.0, 0.0), c(0.1, 0.0));
        assert!(matches!(r, Err(Error::NotUnitary(_))));
    }

    #[test]
    fn from_matrix_examples() {
        let o = c(1.0, 0.0);
        let z = c(0.0, 0.0);
        let f = UnitaryInteraction::from_matrix(&Mat2::new(z, o, o, z)).unwrap();
        assert!((f.phi() - PI / 2.0).abs() < 1e-15);
        assert!(f.alpha().norm() < 1e-15 && (f.beta() - c(0.0, -1.0)).norm() < 1e-15);
        let n = UnitaryInteraction::from_matrix(&Mat2::identity()).unwrap();
        assert_eq!((n.phi(), n.alpha(), n.beta()), (0.0, o, z));
        let i = c(0.0, 1.0);
        let cc = c(1.0, 0.0);
        let jd = Mat2::new(cc, i, i, cc).scale(1.0 / (i - cc));
        let d = UnitaryInteraction::from_matrix(&jd).unwrap();
        assert!(close(&d.matrix(), &jd, 1e-12));
        assert!(close(&UnitaryInteraction::delta(1.0).unwrap().matrix(), &jd, 1e-15));
    }

    #[test]
    fn classification_of_named() {
        use InteractionCase::*;
        assert_eq!(UnitaryInteraction::free().classify(), CaseII);
        assert_eq!(UnitaryInteraction::delta(1.0).unwrap().classify(), CaseII);
        assert_eq!(UnitaryInteraction::delta_prime(1.0).unwrap().classify(), CaseI);
        assert_eq!(UnitaryInteraction::dirichlet().classify(), CaseIII);
        assert_eq!(UnitaryInteraction::neumann().classify(), CaseI);
        assert_eq!(UnitaryInteraction::delta(0.0), Err(Error::ZeroStrength));
        assert_eq!(UnitaryInteraction::delta_prime(0.0), Err(Error::ZeroStrength));
    }

    #[test]
    fn eta_examples() {
        let f = UnitaryInteraction::free();
        for s in SignPair::ALL {
            let want = 1.0 - s.same();
            assert!((f.eta(s) - want).norm() < 1e-15);
        }
        let n = UnitaryInteraction::neumann();
        assert!(SignPair::ALL.iter().all(|&s| n.eta(s) == ZERO));
        let dp = UnitaryInteraction::delta_prime(1.0).unwrap();
        let pp = SignPair::new(Sign::Plus, Sign::Plus);
        assert!(dp.eta(pp).norm() < 1e-15);
        let pm = SignPair::new(Sign::Plus, Sign::Minus);
        assert!((dp.eta(pm) - 1.0).norm() < 1e-15);
    }

    #[test]
    fn delta_coefficients() {
        for &cc in &[2.0, -0.5, 1.0] {
            let g = UnitaryInteraction::delta(cc).unwrap().coefficients();
            assert!((g.omega_plus - cc).abs() < 1e-14);
            assert_eq!(g.omega_minus, 0.0);
            for s in SignPair::ALL {
                assert!((g.mu(Branch::Plus, s) + cc / 2.0).norm() < 1e-14);
                assert!(g.mu0(s).norm() < 1e-14);
                assert_eq!(g.mu(Branch::Minus, s), ZERO);
            }
        }
    }

    #[test]
    fn delta_prime_coefficients() {
        for &cc in &[1.0, -3.0] {
            let g = UnitaryInteraction::delta_prime(cc).unwrap().coefficients();
            assert_eq!(g.omega_plus, 0.0);
            assert!((g.omega_minus - cc).abs() < 1e-14);
            for s in SignPair::ALL {
                assert!((g.mu(Branch::Minus, s) + cc * s.product() / 2.0).norm() < 1e-14);
                assert!((g.mu0(s) - s.product()).norm() < 1e-15);
                assert_eq!(g.mu(Branch::Plus, s), ZERO);
            }
        }
    }

    #[test]
    fn neumann_and_dirichlet_coefficients() {
        let g = UnitaryInteraction::neumann().coefficients();
        assert_eq!((g.omega_plus, g.omega_minus), (0.0, 0.0));
        for s in SignPair::ALL {
            assert_eq!(g.mu0(s), c(s.product(), 0.0));
            assert_eq!(g.mu(Branch::Plus, s), ZERO);
        }
        let g = UnitaryInteraction::dirichlet().coefficients();
        assert_eq!(g.case, InteractionCase::CaseIII);
        assert!(g.mu_zero.iter().all(|&m| m == c(-1.0, 0.0)));
    }

    #[test]
    fn robin_matrix_and_limits() {
        let i = c(0.0, 1.0);
        for &(a, b) in &[(0.5, -2.0), (3.0, 1.0), (-1.0, -1.0), (0.0, 0.0)] {
            let r = UnitaryInteraction::robin(a, b).unwrap();
            let want = Mat2::new((i + a) / (i - a), c(0.0, 0.0), c(0.0, 0.0), (i - b) / (i + b));
            assert!(close(&r.matrix(), &want, 1e-14), "a={a} b={b}");
        }
        let r00 = UnitaryInteraction::robin(0.0, 0.0).unwrap();
        let back = UnitaryInteraction::from_matrix(&r00.matrix()).unwrap();
        assert!(close(&back.matrix(), &UnitaryInteraction::neumann().matrix(), 1e-15));
    }

    #[test]
    fn case_margin_reported() {
        let g = UnitaryInteraction::delta(1.0).unwrap().coefficients();
        assert!(g.margin <= EPS_CASE);
        let g = UnitaryInteraction::neumann().coefficients();
        assert!((g.margin - 2.0).abs() < 1e-15);
    }
}
