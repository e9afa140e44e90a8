//! Bound states along a parametrised contour.
//!
//! With `x = x(s)` the equation `-ψ'' + Vψ = Eψ` becomes
//!
//! ```text
//! -φ''/x'² + (x''/x'³) φ' + V(x(s)) φ = E φ
//! ```
//!
//! which is discretised with central differences on a uniform `s` grid and
//! Dirichlet ends. Both decay classes admit a solution that vanishes at
//! infinity inside its wedge, so truncating to zero selects it.

use faer::Mat;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::contour::{ContourPoint, ContourSpec};
use crate::potential::{Basis, PotentialSpec};
use crate::wedges::decay_margin;
use crate::{rational, Error, Result};

/// Default relative reality tolerance: `|Im E| ≤ tol·(1 + |E|)`.
pub const REALITY_TOL: f64 = 1e-6;

/// Smallest accepted `|cos(pφ + arg c/2)|` at the contour's ends.
const DECAY_MARGIN_MIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(s_min: f64, s_max: f64, points: usize) -> Result<Self> {
        if !(s_min.is_finite() && s_max.is_finite() && s_min < 0.0 && 0.0 < s_max) {
            return Err(Error::InvalidParameter(format!("grid needs s_min < 0 < s_max, got [{s_min}, {s_max}]")));
        }
        if points < 3 {
            return Err(Error::InvalidParameter(format!("grid needs at least 3 points, got {points}")));
        }
        Ok(Self { s_min, s_max, points })
    }

    /// `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, points)
    }

    pub fn step(&self) -> f64 {
        (self.s_max - self.s_min) / (self.points - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.s_max
        } else {
            self.s_min + i as f64 * self.step()
        }
    }

    /// Same window, half the spacing.
    pub fn refined(&self) -> Self {
        Self { points: 2 * self.points - 1, ..*self }
    }

    pub fn fingerprint(&self) -> String {
        format!("s in [{}, {}], {} points", self.s_min, self.s_max, self.points)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Spectrum {
    /// Sorted by real part, then imaginary part.
    pub eigenvalues: Vec<Complex64>,
    pub contour: String,
    pub grid: String,
    pub reality_tolerance: f64,
}

impl Spectrum {
    /// Real parts of the eigenvalues that pass the stored tolerance.
    pub fn real_levels(&self) -> Vec<f64> {
        filter_real(&self.eigenvalues, self.reality_tolerance)
    }
}

/// Real parts of the eigenvalues with `|Im E| ≤ tol·(1 + |E|)`, ascending.
pub fn filter_real(eigenvalues: &[Complex64], tol: f64) -> Vec<f64> {
    let mut out: Vec<f64> = eigenvalues
        .iter()
        .filter(|e| e.im.abs() <= tol * (1.0 + e.norm()))
        .map(|e| e.re)
        .collect();
    out.sort_by(f64::total_cmp);
    out
}

/// The three diagonals of the discretised operator on the interior nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub sub: Vec<Complex64>,
    pub diag: Vec<Complex64>,
    pub sup: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Mat<Complex64> {
        let n = self.dim();
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if j + 1 == i {
                self.sub[j]
            } else if i + 1 == j {
                self.sup[i]
            } else {
                Complex64::zero()
            }
        })
    }
}

/// Rejects potentials with no growing leading term and contours whose ends
/// sit on a Stokes line of it.
fn check_endpoints(potential: &PotentialSpec<f64>, contour: &ContourSpec<f64>) -> Result<()> {
    let lead = potential
        .leading()
        .ok_or_else(|| Error::Configuration("empty potential".into()))?;
    let d = lead.exponent;
    if d <= rational::Rational::zero() || lead.coupling == 0.0 {
        return Err(Error::Configuration(format!(
            "leading term {}·{}^{} does not confine",
            lead.coupling,
            potential.basis(),
            rational::display(d)
        )));
    }
    // c·x^D with c = g·i^D in the (ix) basis
    let c = match potential.basis() {
        Basis::X => Complex64::new(lead.coupling, 0.0),
        Basis::Ix => Complex64::from_polar(lead.coupling, std::f64::consts::FRAC_PI_2 * rational::to_f64(d)),
    };
    let (lo, hi) = contour.asymptotic_angles();
    for angle in [lo, hi] {
        let margin = decay_margin(angle, d, c);
        if margin < DECAY_MARGIN_MIN {
            return Err(Error::Configuration(format!(
                "contour {contour} ends at x-angle {angle} on a Stokes line of the leading term (margin {margin:.1e})"
            )));
        }
    }
    Ok(())
}

/// Assembles the operator from contour samples at uniform spacing `h`.
pub(crate) fn assemble(potential: &PotentialSpec<f64>, points: &[ContourPoint<f64>], h: f64) -> Result<Tridiagonal> {
    if points.len() < 3 {
        return Err(Error::InvalidParameter("need at least three grid points".into()));
    }
    let inner = &points[1..points.len() - 1];
    let n = inner.len();
    let (mut sub, mut diag, mut sup) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    let h2 = h * h;
    for p in inner {
        let norm = p.dx.norm();
        if !(norm > 1e-12 * (1.0 + p.x.norm())) || !norm.is_finite() {
            return Err(Error::Configuration(format!("x'(s) vanishes at s = {}", p.s)));
        }
        let a = (p.dx * p.dx).inv();
        let b = p.ddx / (p.dx * p.dx * p.dx);
        let v = potential.eval(&p.point)?;
        diag.push(a * (2.0 / h2) + v);
        sub.push(-a / h2 - b / (2.0 * h));
        sup.push(-a / h2 + b / (2.0 * h));
    }
    // sub[i] couples row i to i-1, sup[i] row i to i+1; trim the ends
    sub.remove(0);
    sup.pop();
    Ok(Tridiagonal { sub, diag, sup })
}

/// Tridiagonal form of the discretised operator.
pub fn tridiagonal(potential: &PotentialSpec<f64>, contour: &ContourSpec<f64>, grid: &GridSpec) -> Result<Tridiagonal> {
    check_endpoints(potential, contour)?;
    let points: Vec<_> = (0..grid.points).map(|i| contour.at(grid.node(i))).collect();
    assemble(potential, &points, grid.step())
}

/// Dense `(points-2)²` matrix of the discretised operator.
pub fn discretize(potential: &PotentialSpec<f64>, contour: &ContourSpec<f64>, grid: &GridSpec) -> Result<Mat<Complex64>> {
    Ok(tridiagonal(potential, contour, grid)?.to_dense())
}

/// Eigenvalues of a dense matrix sorted by real part, then imaginary part.
///
/// With `k > 0` only `k` are kept: the lowest ones passing the default
/// reality filter first, then the lowest of the rest. Truncated contours
/// produce complex pairs far down the real axis, which would otherwise
/// crowd out the bound states.
pub fn eigen_spectrum(matrix: &Mat<Complex64>, k: usize) -> Result<Vec<Complex64>> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::InvalidParameter(format!("matrix is {}×{}", matrix.nrows(), matrix.ncols())));
    }
    let mut ev = matrix
        .eigenvalues()
        .map_err(|e| Error::NonConvergence(format!("dense eigensolver ({}×{}): {e:?}", matrix.nrows(), matrix.ncols())))?;
    let order = |a: &Complex64, b: &Complex64| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
    ev.sort_by(order);
    if k > 0 && k < ev.len() {
        let is_real = |e: &Complex64| e.im.abs() <= REALITY_TOL * (1.0 + e.norm());
        let (mut kept, rest): (Vec<_>, Vec<_>) = ev.into_iter().partition(is_real);
        kept.extend(rest);
        kept.truncate(k);
        kept.sort_by(order);
        ev = kept;
    }
    Ok(ev)
}

/// Discretise and solve in one step.
pub fn compute_spectrum(
    potential: &PotentialSpec<f64>,
    contour: &ContourSpec<f64>,
    grid: &GridSpec,
    k: usize,
) -> Result<Spectrum> {
    let m = discretize(potential, contour, grid)?;
    Ok(Spectrum {
        eigenvalues: eigen_spectrum(&m, k)?,
        contour: contour.fingerprint(),
        grid: grid.fingerprint(),
        reality_tolerance: REALITY_TOL,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolation {
    pub coarse: Spectrum,
    pub fine: Spectrum,
    /// `(4 E_fine - E_coarse)/3` for each coarse real level and its nearest
    /// fine partner.
    pub levels: Vec<f64>,
}

/// One Richardson step between `grid` and its refinement.
pub fn extrapolate(
    potential: &PotentialSpec<f64>,
    contour: &ContourSpec<f64>,
    grid: &GridSpec,
    k: usize,
) -> Result<Extrapolation> {
    let coarse = compute_spectrum(potential, contour, grid, k)?;
    let fine = compute_spectrum(potential, contour, &grid.refined(), k)?;
    let fine_levels = fine.real_levels();
    let levels = coarse
        .real_levels()
        .into_iter()
        .filter_map(|c| {
            fine_levels
                .iter()
                .copied()
                .min_by(|a, b| (a - c).abs().total_cmp(&(b - c).abs()))
                .map(|f| (4.0 * f - c) / 3.0)
        })
        .collect();
    Ok(Extrapolation { coarse, fine, levels })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShootOutcome {
    pub energy: Complex64,
    pub iterations: usize,
    /// Final matching mismatch.
    pub mismatch: f64,
    /// The guess was not clearly inside one level's basin: Newton needed
    /// damping, or its first step was far from the eventual displacement.
    pub basin_ambiguous: bool,
}

/// Contour data the integrator needs at one abscissa.
#[derive(Clone, Copy)]
struct Coefficients {
    /// `x''/x'`
    drift: Complex64,
    /// `x'²`
    metric: Complex64,
    /// `x'² V`
    load: Complex64,
    dx: Complex64,
    v: Complex64,
}

struct Shooter {
    /// Values at nodes and midpoints: index `2i` is node `i`.
    half: Vec<Coefficients>,
    h: f64,
    mid: usize,
    kappa: f64,
}

impl Shooter {
    fn new(potential: &PotentialSpec<f64>, contour: &ContourSpec<f64>, grid: &GridSpec, e_guess: Complex64) -> Result<Self> {
        check_endpoints(potential, contour)?;
        let h = grid.step();
        let count = 2 * grid.points - 1;
        let mut half = Vec::with_capacity(count);
        for j in 0..count {
            let s = if j + 1 == count { grid.s_max } else { grid.s_min + 0.5 * h * j as f64 };
            let p = contour.at(s);
            if !(p.dx.norm() > 0.0) {
                return Err(Error::Configuration(format!("x'(s) vanishes at s = {s}")));
            }
            let v = potential.eval(&p.point)?;
            let metric = p.dx * p.dx;
            half.push(Coefficients { drift: p.ddx / p.dx, metric, load: metric * v, dx: p.dx, v });
        }
        let mid = (grid.points - 1) / 2;
        let c = half[2 * mid];
        let kappa = 1.0 + (c.metric * (c.v - e_guess)).norm().sqrt();
        Ok(Self { half, h, mid, kappa })
    }

    fn rhs(c: &Coefficients, e: Complex64, y: [Complex64; 2]) -> [Complex64; 2] {
        [y[1], c.drift * y[1] + (c.load - c.metric * e) * y[0]]
    }

    /// Decaying WKB data `(φ, φ')` at an end, growing towards the inside.
    fn seed(c: &Coefficients, e: Complex64, inward: f64) -> [Complex64; 2] {
        let mut kq = c.dx * (c.v - e).sqrt();
        if kq.re < 0.0 {
            kq = -kq;
        }
        [Complex64::new(1.0, 0.0), kq * inward]
    }

    /// RK4 from one end to the matching node.
    fn integrate(&self, e: Complex64, from_left: bool) -> [Complex64; 2] {
        let last = (self.half.len() - 1) / 2;
        let (start, dir) = if from_left { (0usize, 1.0) } else { (last, -1.0) };
        let mut y = Self::seed(&self.half[2 * start], e, dir);
        let h = self.h * dir;
        let mut i = start;
        while i != self.mid {
            let j = 2 * i;
            let (a, b, c) = if from_left {
                (&self.half[j], &self.half[j + 1], &self.half[j + 2])
            } else {
                (&self.half[j], &self.half[j - 1], &self.half[j - 2])
            };
            let k1 = Self::rhs(a, e, y);
            let y2 = [y[0] + k1[0] * (h / 2.0), y[1] + k1[1] * (h / 2.0)];
            let k2 = Self::rhs(b, e, y2);
            let y3 = [y[0] + k2[0] * (h / 2.0), y[1] + k2[1] * (h / 2.0)];
            let k3 = Self::rhs(b, e, y3);
            let y4 = [y[0] + k3[0] * h, y[1] + k3[1] * h];
            let k4 = Self::rhs(c, e, y4);
            for (n, yn) in y.iter_mut().enumerate() {
                *yn += (k1[n] + k2[n] * 2.0 + k3[n] * 2.0 + k4[n]) * (h / 6.0);
            }
            i = if from_left { i + 1 } else { i - 1 };
        }
        y
    }

    /// Normalised Wronskian of the two one-sided solutions.
    fn mismatch(&self, e: Complex64) -> Complex64 {
        let l = self.integrate(e, true);
        let r = self.integrate(e, false);
        let k2 = self.kappa * self.kappa;
        (l[0] * r[1] - l[1] * r[0]) / (l[0] * r[0] + l[1] * r[1] / k2)
    }
}

/// Refines an eigenvalue by shooting from both ends and Newton iteration
/// on the matching condition at the middle node.
pub fn shoot_refine(
    potential: &PotentialSpec<f64>,
    contour: &ContourSpec<f64>,
    e_guess: Complex64,
    grid: &GridSpec,
) -> Result<ShootOutcome> {
    const MAX_ITER: usize = 60;
    let shooter = Shooter::new(potential, contour, grid, e_guess)?;
    let mut e = e_guess;
    let mut m = shooter.mismatch(e);
    let mut first_step: Option<f64> = None;
    let mut damped = false;
    for it in 1..=MAX_ITER {
        if !(m.norm().is_finite()) {
            break;
        }
        let delta = 1e-7 * (1.0 + e.norm());
        let dm = (shooter.mismatch(e + delta) - shooter.mismatch(e - delta)) / (2.0 * delta);
        if dm.norm() == 0.0 || !dm.norm().is_finite() {
            break;
        }
        let mut step = -m / dm;
        first_step.get_or_insert(step.norm());
        let mut trial = e + step;
        let mut mt = shooter.mismatch(trial);
        let mut halvings = 0;
        while !(mt.norm() < m.norm()) && halvings < 10 && m.norm() > 1e-10 {
            step *= 0.5;
            trial = e + step;
            mt = shooter.mismatch(trial);
            halvings += 1;
            damped = true;
        }
        e = trial;
        m = mt;
        if m.norm() < 1e-10 || step.norm() <= 1e-14 * (1.0 + e.norm()) {
            let moved = (e - e_guess).norm();
            let ratio_off = match first_step {
                Some(f) if moved > 1e-6 * (1.0 + e.norm()) => {
                    let ratio = f / moved;
                    !(0.5..=2.0).contains(&ratio)
                }
                _ => false,
            };
            return Ok(ShootOutcome {
                energy: e,
                iterations: it,
                mismatch: m.norm(),
                basin_ambiguous: damped || ratio_off,
            });
        }
    }
    Err(Error::NewtonDiverged { last: e, iterations: MAX_ITER })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumComparison {
    pub pairs: Vec<(f64, f64)>,
    pub max_difference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Compares the `k` lowest levels of two ascending level lists.
pub fn compare_levels(a: &[f64], b: &[f64], k: usize, tol: f64) -> Result<SpectrumComparison> {
    let found = a.len().min(b.len());
    if found < k {
        return Err(Error::InsufficientLevels { needed: k, found });
    }
    let pairs: Vec<(f64, f64)> = a.iter().copied().zip(b.iter().copied()).take(k).collect();
    let max_difference = pairs.iter().map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(SpectrumComparison { pairs, max_difference, tolerance: tol, pass: max_difference < tol })
}

/// [`compare_levels`] on the real levels of two spectra.
pub fn compare_spectra(a: &Spectrum, b: &Spectrum, k: usize, tol: f64) -> Result<SpectrumComparison> {
    compare_levels(&a.real_levels(), &b.real_levels(), k, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::UnwrappedPoint;
    use crate::qe::{decadic_potential, QeParams};
    use crate::Rational;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn harmonic(gamma: Option<f64>) -> PotentialSpec<f64> {
        PotentialSpec::with_basis(vec![(1.0, Rational::from_integer(2))], gamma, Basis::X).unwrap()
    }

    #[test]
    fn filter_examples() {
        assert_eq!(filter_real(&[c(1.0, 1e-9), c(2.0, 0.5)], 1e-6), vec![1.0]);
        assert!(filter_real(&[], 1e-6).is_empty());
        assert_eq!(filter_real(&[c(3.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1e-6), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn diagonal_eigenvalues() {
        let m = Mat::from_fn(2, 2, |i, j| if i != j { c(0.0, 0.0) } else if i == 0 { c(1.0, 0.0) } else { c(2.0, 1.0) });
        let ev = eigen_spectrum(&m, 0).unwrap();
        assert!((ev[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((ev[1] - c(2.0, 1.0)).norm() < 1e-14);
        assert!(eigen_spectrum(&Mat::<Complex64>::zeros(2, 3), 0).is_err());
        // the real eigenvalue is kept ahead of a lower complex one
        let m = Mat::from_fn(2, 2, |i, j| if i != j { c(0.0, 0.0) } else if i == 0 { c(-5.0, 3.0) } else { c(2.0, 0.0) });
        assert_eq!(eigen_spectrum(&m, 1).unwrap(), vec![c(2.0, 0.0)]);
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 2.0, 10).is_err());
        assert!(GridSpec::new(-1.0, 1.0, 2).is_err());
        let g = GridSpec::symmetric(8.0, 801).unwrap();
        assert_eq!(g.step(), 0.02);
        assert_eq!(g.node(800), 8.0);
        assert_eq!(g.refined().points, 1601);
    }

    #[test]
    fn matrix_is_tridiagonal() {
        let toboggan = ContourSpec::wedge_join(3, 2.0, 1.0, 1.0).unwrap();
        for contour in [ContourSpec::bg_line(0.1).unwrap(), toboggan] {
            let grid = GridSpec::symmetric(8.0, 41).unwrap();
            let m = discretize(&harmonic(None), &contour, &grid).unwrap();
            assert_eq!((m.nrows(), m.ncols()), (39, 39));
            for i in 0..39usize {
                for j in 0..39 {
                    if i.abs_diff(j) > 1 {
                        assert_eq!(m[(i, j)], c(0.0, 0.0));
                    } else {
                        assert!(m[(i, j)].norm() > 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn toboggan_diagonal_uses_unwrapped_phase() {
        // (ix)^{1/2} differs between sheets; the diagonal must follow the path
        let v = PotentialSpec::new(vec![(-1.0, Rational::from_integer(2)), (1.0, Rational::new(1, 2))], None).unwrap();
        let contour = ContourSpec::wedge_join(3, 2.0, 1.0, 1.0).unwrap();
        let grid = GridSpec::symmetric(4.0, 21).unwrap();
        let t = tridiagonal(&v, &contour, &grid).unwrap();
        for (i, d) in t.diag.iter().enumerate() {
            let p = contour.at(grid.node(i + 1));
            let a = (p.dx * p.dx).inv();
            let want = a * (2.0 / (grid.step() * grid.step())) + v.eval(&p.point).unwrap();
            assert!((d - want).norm() < 1e-9 * want.norm());
        }
    }

    #[test]
    fn vanishing_derivative_rejected() {
        let pts: Vec<ContourPoint<f64>> = (0..5)
            .map(|i| {
                let s = i as f64 - 2.0;
                let x = c(s, -0.1);
                ContourPoint {
                    s,
                    x,
                    dx: if i == 2 { c(0.0, 0.0) } else { c(1.0, 0.0) },
                    ddx: c(0.0, 0.0),
                    point: UnwrappedPoint::from_x(x),
                }
            })
            .collect();
        assert!(matches!(assemble(&harmonic(None), &pts, 1.0), Err(Error::Configuration(_))));
    }

    #[test]
    fn stokes_endpoint_rejected() {
        // x² has Stokes lines at x-angle ±π/4 + kπ/2
        let contour = ContourSpec::wedge_join(1, 4.0, 1.0, 1.0).unwrap();
        let grid = GridSpec::symmetric(4.0, 21).unwrap();
        assert!(matches!(discretize(&harmonic(None), &contour, &grid), Err(Error::Configuration(_))));
        let flat = PotentialSpec::with_basis(vec![(1.0, Rational::from_integer(-1))], None, Basis::X).unwrap();
        assert!(discretize(&flat, &ContourSpec::bg_line(0.1).unwrap(), &grid).is_err());
    }

    #[test]
    fn harmonic_levels_coarse() {
        let grid = GridSpec::symmetric(8.0, 801).unwrap();
        let s = compute_spectrum(&harmonic(None), &ContourSpec::bg_line(0.1).unwrap(), &grid, 8).unwrap();
        let levels = s.real_levels();
        for (n, want) in [1.0, 3.0, 5.0].iter().enumerate() {
            assert!((levels[n] - want).abs() < 1e-2, "{levels:?}");
        }
        assert!(s.grid.contains("801"));
    }

    #[test]
    fn second_order_convergence() {
        let contour = ContourSpec::bg_line(0.1).unwrap();
        let lowest = |points| {
            let grid = GridSpec::symmetric(8.0, points).unwrap();
            compute_spectrum(&harmonic(None), &contour, &grid, 1).unwrap().eigenvalues[0]
        };
        let e1 = (lowest(201) - 1.0).norm();
        let e2 = (lowest(401) - 1.0).norm();
        let ratio = e1 / e2;
        assert!((3.0..=5.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn shooting_harmonic() {
        let contour = ContourSpec::bg_line(0.1).unwrap();
        let grid = GridSpec::symmetric(8.0, 8001).unwrap();
        let out = shoot_refine(&harmonic(None), &contour, c(0.9, 0.0), &grid).unwrap();
        assert!((out.energy - 1.0).norm() < 1e-8, "{out:?}");
        assert!(!out.basin_ambiguous, "{out:?}");

        let out = shoot_refine(&harmonic(None), &contour, c(2.0, 0.0), &grid).unwrap();
        let near = |v: f64| (out.energy - v).norm() < 1e-8;
        assert!(near(1.0) || near(3.0), "{out:?}");
        assert!(out.basin_ambiguous, "{out:?}");
    }

    #[test]
    fn shooting_decadic_qe_level() {
        let params = QeParams::new(1, 1, 0.0, 0.0).unwrap();
        let v = decadic_potential(&params, 0.0).unwrap();
        let contour = ContourSpec::bg_line(0.5).unwrap();
        let grid = GridSpec::symmetric(2.5, 10001).unwrap();
        let out = shoot_refine(&v, &contour, c(0.1, 0.0), &grid).unwrap();
        assert!(out.energy.norm() < 1e-6, "{out:?}");
    }

    #[test]
    fn comparisons() {
        let a = [1.0, 3.0, 5.0, 7.0];
        let same = compare_levels(&a, &a, 4, 1e-12).unwrap();
        assert!(same.pass && same.max_difference == 0.0);
        let shifted: Vec<f64> = a.iter().map(|x| x + 1.0).collect();
        let diff = compare_levels(&a, &shifted, 4, 1e-2).unwrap();
        assert!(!diff.pass && (diff.max_difference - 1.0).abs() < 1e-14);
        assert!(matches!(compare_levels(&a, &a[..2], 4, 1.0), Err(Error::InsufficientLevels { needed: 4, found: 2 })));
    }
}
