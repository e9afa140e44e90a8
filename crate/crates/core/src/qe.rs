//! Quasi-exact solutions of the decadic oscillator
//!
//! ```text
//! -ψ'' + [L(L+1)/x² + x¹⁰ + g₈x⁸ + g₆x⁶ + g₄x⁴ + g₂x²] ψ = E ψ,   L = M - ½
//! ```
//!
//! with the polynomial ansatz `ψ = e^{-x⁶/6 - αx⁴/4 - βx²/2} Σ_{n<N} h_n x^{2n-L}`.
//! Matching powers fixes `g₈ = 2α`, `g₆ = 2β + α²`, `g₄ = 2αβ + 2M - 4N - 2`
//! and leaves the four-term recurrence
//!
//! ```text
//! A_n h_{n+1} + B_n h_n + C_n h_{n-1} + D_n h_{n-2} = 0,   n = 0..=N
//! ```
//!
//! i.e. `N+1` homogeneous equations in `N` unknowns. `A_{M-1} = 0`, so the
//! leading `m×m` block (`m = min(M, N)`) decouples; requiring it and the
//! remaining rows to be singular simultaneously pins down `(E, g₂)`.

use num_complex::{Complex, Complex64};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::potential::{eval_x_power, Basis, PotentialSpec, UnwrappedPoint};
use crate::{Error, Rational, Real, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeParams<T> {
    pub m: u32,
    pub n: u32,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> QeParams<T> {
    pub fn new(m: u32, n: u32, alpha: T, beta: T) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!("M and N must be positive, got M = {m}, N = {n}")));
        }
        Ok(Self { m, n, alpha, beta })
    }

    /// `L = M - ½` as an exact rational.
    pub fn angular_momentum(&self) -> Rational {
        Rational::new(2 * self.m as i64 - 1, 2)
    }

    /// `L(L+1) = M² - ¼`.
    pub fn centrifugal(&self) -> T {
        let l = self.angular_momentum();
        T::from_rational(l * (l + Rational::one()))
    }

    pub fn g8(&self) -> T {
        T::int(2) * self.alpha.clone()
    }

    pub fn g6(&self) -> T {
        T::int(2) * self.beta.clone() + self.alpha.clone() * self.alpha.clone()
    }

    pub fn g4(&self) -> T {
        fix_g4(self)
    }

    pub fn to_f64(&self) -> QeParams<f64> {
        QeParams { m: self.m, n: self.n, alpha: self.alpha.to_f64_lossy(), beta: self.beta.to_f64_lossy() }
    }

    fn cast<F: Scalar>(&self) -> QeParams<F> {
        QeParams {
            m: self.m,
            n: self.n,
            alpha: F::from_f64(self.alpha.to_f64_lossy()).unwrap_or_else(F::zero),
            beta: F::from_f64(self.beta.to_f64_lossy()).unwrap_or_else(F::zero),
        }
    }
}

/// `g₄ = 2αβ + 2M - 4N - 2`.
pub fn fix_g4<T: Scalar>(params: &QeParams<T>) -> T {
    T::int(2) * params.alpha.clone() * params.beta.clone()
        + T::int(2 * params.m as i64 - 4 * params.n as i64 - 2)
}

/// The decadic potential in the `x` basis for a given `g₂`.
pub fn decadic_potential<T: Scalar>(params: &QeParams<T>, g2: T) -> Result<PotentialSpec<T>> {
    let terms = vec![
        (T::one(), Rational::from_integer(10)),
        (params.g8(), Rational::from_integer(8)),
        (params.g6(), Rational::from_integer(6)),
        (params.g4(), Rational::from_integer(4)),
        (g2, Rational::from_integer(2)),
    ];
    Ok(PotentialSpec::with_basis(terms, Some(params.centrifugal()), Basis::X)?.pruned())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCoeffs<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

/// Coefficients of row `n` of the recurrence.
pub fn recurrence_coeffs<T: Scalar>(params: &QeParams<T>, n: u32, energy: &T, g2: &T) -> RecurrenceCoeffs<T> {
    let (m, nn, n) = (params.m as i64, params.n as i64, n as i64);
    let (alpha, beta) = (params.alpha.clone(), params.beta.clone());
    RecurrenceCoeffs {
        a: T::int((2 * n + 2) * (2 * n + 2 - 2 * m)),
        b: energy.clone() - beta.clone() * T::int(4 * n + 2 - 2 * m),
        c: beta.clone() * beta - g2.clone() - alpha * T::int(4 * n - 2 * m),
        d: T::int(4 * (nn + 1 - n)),
    }
}

/// The `(N+1) × N` matrix of the recurrence, row-major.
pub fn recurrence_matrix<T: Scalar>(params: &QeParams<T>, energy: &T, g2: &T) -> Vec<Vec<T>> {
    let n = params.n as usize;
    (0..=n)
        .map(|row| {
            let k = recurrence_coeffs(params, row as u32, energy, g2);
            let mut line = vec![T::zero(); n];
            let mut put = |col: isize, v: T| {
                if col >= 0 && (col as usize) < n {
                    line[col as usize] = v;
                }
            };
            let r = row as isize;
            put(r + 1, k.a);
            put(r, k.b);
            put(r - 1, k.c);
            put(r - 2, k.d);
            line
        })
        .collect()
}

/// Determinant of the leading `size × size` block. The block is lower
/// Hessenberg with bandwidth two below the diagonal, so
/// `d_k = B d_{k-1} - C A d_{k-2} + D A A d_{k-3}`.
pub fn leading_det<T: Scalar>(params: &QeParams<T>, energy: &T, g2: &T, size: u32) -> T {
    let rows: Vec<_> = (0..size).map(|n| recurrence_coeffs(params, n, energy, g2)).collect();
    let mut d: Vec<T> = vec![T::one()];
    for k in 1..=size as usize {
        let row = &rows[k - 1];
        let mut v = row.b.clone() * d[k - 1].clone();
        if k >= 2 {
            v = v - row.c.clone() * rows[k - 2].a.clone() * d[k - 2].clone();
        }
        if k >= 3 {
            v = v + row.d.clone() * rows[k - 3].a.clone() * rows[k - 2].a.clone() * d[k - 3].clone();
        }
        d.push(v);
    }
    d.pop().unwrap_or_else(T::one)
}

/// Determinant of the `M × M` secular block; its zero set is the locus of
/// `(E, g₂)` compatible with the first `M` rows.
pub fn secular_det_small<T: Scalar>(params: &QeParams<T>, energy: &T, g2: &T) -> T {
    leading_det(params, energy, g2, params.m)
}

/// Plain Gaussian elimination with largest-magnitude pivoting. Exact for
/// rationals.
pub fn determinant<T: Scalar>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    let mut det = T::one();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal)
        });
        let Some(p) = pivot else { return T::zero() };
        if a[p][col].is_zero() {
            return T::zero();
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col].clone();
        det = det * piv.clone();
        for row in col + 1..n {
            let f = a[row][col].clone() / piv.clone();
            if f.is_zero() {
                continue;
            }
            for k in col..n {
                let sub = f.clone() * a[col][k].clone();
                a[row][k] = a[row][k].clone() - sub;
            }
        }
    }
    det
}

/// Search window and options for [`qe_solve`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QeSearch {
    pub energy_min: f64,
    pub energy_max: f64,
    /// Scan spacing; scan points are integer multiples of it, so a larger
    /// window never loses roots found in a smaller one.
    pub energy_step: f64,
    pub g2_min: f64,
    pub g2_max: f64,
    /// Also look for complex-conjugate pairs by Newton iteration.
    pub include_complex: bool,
}

impl Default for QeSearch {
    fn default() -> Self {
        Self { energy_min: -50.0, energy_max: 50.0, energy_step: 0.01, g2_min: -1.0e4, g2_max: 1.0e4, include_complex: false }
    }
}

impl QeSearch {
    fn validate(&self) -> Result<()> {
        let ok = self.energy_min.is_finite()
            && self.energy_max.is_finite()
            && self.energy_min < self.energy_max
            && self.energy_step > 0.0
            && self.g2_min <= self.g2_max;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("bad search window {self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeSolution {
    pub energy: f64,
    pub g2: f64,
    pub g4: f64,
    /// Polynomial coefficients, largest entry scaled to +1.
    pub h: Vec<f64>,
    /// Worst row of the recurrence relative to the size of its coefficients.
    pub residual: f64,
    /// Residual above tolerance or a degenerate null space.
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexQeSolution {
    pub energy: Complex64,
    pub g2: Complex64,
    /// Relative distance between the two conditions' `g₂` roots.
    pub mismatch: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QeReport {
    pub params: QeParams<f64>,
    pub search: QeSearch,
    pub solutions: Vec<QeSolution>,
    pub complex_solutions: Vec<ComplexQeSolution>,
    pub diagnostics: Vec<String>,
}

const RESIDUAL_FLAG: f64 = 1e-8;
const RESIDUAL_REJECT: f64 = 1e-4;
const PAIRING_TOL: f64 = 1e-6;

/// Finds every real `(E, g₂)` in the search window for which the recurrence
/// has a non-trivial solution.
pub fn qe_solve<T: Scalar>(params: &QeParams<T>, search: &QeSearch) -> Result<QeReport> {
    search.validate()?;
    let p: QeParams<f64> = params.cast();
    let block = p.m.min(p.n);
    let mut diagnostics = Vec::new();
    let mut candidates: Vec<(f64, f64)> = Vec::new();

    if block == 1 {
        // The leading block is B₀ alone: E is fixed, g₂ runs over the
        // eigenvalues of the remaining rows.
        let e = p.beta * (2.0 - 2.0 * p.m as f64);
        if e >= search.energy_min && e <= search.energy_max {
            for mu in eigenvalues(&r0_matrix(&p, Complex64::new(e, 0.0)))? {
                if is_real(mu) {
                    candidates.push((e, mu.re));
                }
            }
        }
    } else {
        let roots = scan_real_roots(&p, search);
        if roots.is_empty() {
            diagnostics.push(format!(
                "no sign change of the compatibility determinant for E in [{}, {}] at step {}; \
                 tangential (double) roots are not detected by the scan",
                search.energy_min, search.energy_max, search.energy_step
            ));
        }
        for e in roots {
            for g in paired_roots(&p, Complex64::new(e, 0.0))? {
                if is_real(g) {
                    candidates.push((e, g.re));
                }
            }
        }
    }

    let mut solutions: Vec<QeSolution> = Vec::new();
    let mut rejected = 0;
    for (e, g2) in candidates {
        if g2 < search.g2_min || g2 > search.g2_max {
            continue;
        }
        let (h, residual, degenerate) = null_vector(&p, e, g2)?;
        if residual > RESIDUAL_REJECT {
            rejected += 1;
            continue;
        }
        let dup = solutions.iter().any(|s| {
            (s.energy - e).abs() <= 1e-9 * (1.0 + e.abs()) && (s.g2 - g2).abs() <= 1e-9 * (1.0 + g2.abs())
        });
        if dup {
            continue;
        }
        solutions.push(QeSolution {
            energy: e,
            g2,
            g4: p.g4(),
            h,
            residual,
            flagged: degenerate || residual > RESIDUAL_FLAG,
        });
    }
    if rejected > 0 {
        diagnostics.push(format!(
            "{rejected} candidate(s) satisfied both determinant conditions but not the full recurrence"
        ));
    }
    solutions.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.g2.total_cmp(&b.g2)));

    let complex_solutions = if search.include_complex { complex_search(&p, search)? } else { Vec::new() };
    if solutions.is_empty() && !diagnostics.iter().any(|d| d.starts_with("no ")) {
        diagnostics.push("no real solution inside the search window".into());
    }
    Ok(QeReport { params: p, search: search.clone(), solutions, complex_solutions, diagnostics })
}

fn is_real(z: Complex64) -> bool {
    z.im.abs() <= 1e-8 * (1.0 + z.re.abs())
}

type C = Complex64;

fn coeffs_c(p: &QeParams<f64>, n: i64, e: C) -> (f64, C, f64, f64) {
    // C_n is returned without the -g₂ term.
    let (m, nn) = (p.m as i64, p.n as i64);
    let a = ((2 * n + 2) * (2 * n + 2 - 2 * m)) as f64;
    let b = e - p.beta * (4 * n + 2 - 2 * m) as f64;
    let c = p.beta * p.beta - p.alpha * (4 * n - 2 * m) as f64;
    let d = (4 * (nn + 1 - n)) as f64;
    (a, b, c, d)
}

/// Leading-block determinant as a polynomial in `g₂`, ascending powers.
fn block_poly(p: &QeParams<f64>, e: C) -> Vec<C> {
    let size = p.m.min(p.n) as usize;
    let rows: Vec<_> = (0..size as i64).map(|n| coeffs_c(p, n, e)).collect();
    let mut d: Vec<Vec<C>> = vec![vec![C::one()]];
    for k in 1..=size {
        let (_, b, c, dd) = rows[k - 1];
        let mut v = poly_scale(&d[k - 1], b);
        if k >= 2 {
            let a = rows[k - 2].0;
            // C_{k-1}(g) = c - g
            let cg = vec![C::new(c, 0.0), C::new(-1.0, 0.0)];
            let t = poly_mul(&cg, &d[k - 2]);
            v = poly_add(&v, &poly_scale(&t, C::new(-a, 0.0)));
        }
        if k >= 3 {
            let f = dd * rows[k - 3].0 * rows[k - 2].0;
            v = poly_add(&v, &poly_scale(&d[k - 3], C::new(f, 0.0)));
        }
        d.push(v);
    }
    let mut out = d.pop().unwrap_or_else(|| vec![C::one()]);
    while out.len() > 1 && out.last().is_some_and(|c| c.norm() == 0.0) {
        out.pop();
    }
    out
}

fn poly_scale(a: &[C], s: C) -> Vec<C> {
    a.iter().map(|&x| x * s).collect()
}

fn poly_add(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); a.len().max(b.len())];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn poly_mul(a: &[C], b: &[C]) -> Vec<C> {
    let mut out = vec![C::zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_eval(a: &[C], x: C) -> C {
    a.iter().rev().fold(C::zero(), |acc, &c| acc * x + c)
}

/// Rows 1..=N of the recurrence at `g₂ = 0`; with `g₂` it is `R₀ - g₂ I`.
fn r0_matrix(p: &QeParams<f64>, e: C) -> Vec<Vec<C>> {
    let n = p.n as usize;
    (1..=n)
        .map(|row| {
            let (a, b, c, d) = coeffs_c(p, row as i64, e);
            let mut line = vec![C::zero(); n];
            let r = row as isize;
            for (col, v) in [(r + 1, C::new(a, 0.0)), (r, b), (r - 1, C::new(c, 0.0)), (r - 2, C::new(d, 0.0))] {
                if col >= 0 && (col as usize) < n {
                    line[col as usize] = v;
                }
            }
            line
        })
        .collect()
}

fn det_c(mut a: Vec<Vec<C>>) -> C {
    let n = a.len();
    let mut det = C::one();
    for col in 0..n {
        let p = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .unwrap_or(col);
        if a[p][col].norm() == 0.0 {
            return C::zero();
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let piv = a[col][col];
        det *= piv;
        for row in col + 1..n {
            let f = a[row][col] / piv;
            for k in col..n {
                let sub = f * a[col][k];
                a[row][k] -= sub;
            }
        }
    }
    det
}

fn mat_mul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// `det P(R₀)` where `P` is the block polynomial: zero exactly when the two
/// conditions share a root `g₂`.
fn compatibility(p: &QeParams<f64>, e: C) -> C {
    let poly = block_poly(p, e);
    let r0 = r0_matrix(p, e);
    let n = r0.len();
    let identity = |s: C| -> Vec<Vec<C>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { s } else { C::zero() }).collect()).collect()
    };
    let mut acc = identity(*poly.last().unwrap_or(&C::one()));
    for &c in poly.iter().rev().skip(1) {
        acc = mat_mul(&acc, &r0);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    det_c(acc)
}

fn scan_real_roots(p: &QeParams<f64>, search: &QeSearch) -> Vec<f64> {
    let step = search.energy_step;
    let k0 = (search.energy_min / step).ceil() as i64;
    let k1 = (search.energy_max / step).floor() as i64;
    let f = |e: f64| compatibility(p, C::new(e, 0.0)).re;
    let mut roots = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in k0..=k1 {
        let e = k as f64 * step;
        let v = f(e);
        if v == 0.0 {
            roots.push(e);
            prev = None;
            continue;
        }
        if let Some((pe, pv)) = prev {
            if pv.signum() != v.signum() {
                roots.push(bisect(&f, pe, e, pv));
            }
        }
        prev = Some((e, v));
    }
    roots
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn eigenvalues(m: &[Vec<C>]) -> Result<Vec<C>> {
    let n = m.len();
    let mat = faer::Mat::<C>::from_fn(n, n, |i, j| m[i][j]);
    mat.eigenvalues().map_err(|e| Error::NonConvergence(format!("eigenvalues: {e:?}")))
}

fn poly_roots(poly: &[C]) -> Result<Vec<C>> {
    match poly.len() {
        0 | 1 => Ok(Vec::new()),
        2 => Ok(vec![-poly[0] / poly[1]]),
        3 => {
            let (c, b, a) = (poly[0], poly[1], poly[2]);
            let disc = (b * b - a * c * 4.0).sqrt();
            // avoid cancellation
            let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) * 0.5 } else { -(b - disc) * 0.5 };
            if q.norm() == 0.0 {
                return Ok(vec![C::zero(), C::zero()]);
            }
            Ok(vec![q / a, c / q])
        }
        len => {
            let d = len - 1;
            let lead = poly[d];
            let comp: Vec<Vec<C>> = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            if i == 0 {
                                -poly[d - 1 - j] / lead
                            } else if j + 1 == i {
                                C::one()
                            } else {
                                C::zero()
                            }
                        })
                        .collect()
                })
                .collect();
            let mut roots = eigenvalues(&comp)?;
            let dpoly: Vec<C> = poly.iter().enumerate().skip(1).map(|(k, &c)| c * k as f64).collect();
            for r in roots.iter_mut() {
                for _ in 0..3 {
                    let dv = poly_eval(&dpoly, *r);
                    if dv.norm() == 0.0 {
                        break;
                    }
                    *r -= poly_eval(poly, *r) / dv;
                }
            }
            Ok(roots)
        }
    }
}

/// Roots `g₂` of the block polynomial that are also eigenvalues of `R₀`.
fn paired_roots(p: &QeParams<f64>, e: C) -> Result<Vec<C>> {
    let mu = eigenvalues(&r0_matrix(p, e))?;
    let roots = poly_roots(&block_poly(p, e))?;
    let mut out = Vec::new();
    for g in roots {
        let close = mu.iter().map(|m| (g - m).norm() / (1.0 + m.norm())).fold(f64::INFINITY, f64::min);
        if close < PAIRING_TOL {
            out.push(g);
        }
    }
    Ok(out)
}

/// Null vector of the full recurrence matrix, its relative residual and
/// whether the null space looks more than one-dimensional.
fn null_vector(p: &QeParams<f64>, e: f64, g2: f64) -> Result<(Vec<f64>, f64, bool)> {
    let t = recurrence_matrix(p, &e, &g2);
    let (rows, cols) = (t.len(), p.n as usize);
    let mat = faer::Mat::<f64>::from_fn(rows, cols, |i, j| t[i][j]);
    let svd = mat.svd().map_err(|e| Error::NonConvergence(format!("svd: {e:?}")))?;
    let s = svd.S().column_vector();
    let sv: Vec<f64> = (0..cols).map(|i| s[i]).collect();
    let (imin, smin) = sv.iter().copied().enumerate().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap_or((0, 0.0));
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let v = svd.V();
    let mut h: Vec<f64> = (0..cols).map(|i| v[(i, imin)]).collect();
    // the first entry of (near-)maximal magnitude becomes +1
    let top = h.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let big = h.iter().copied().find(|x| x.abs() >= top * (1.0 - 1e-9)).unwrap_or(0.0);
    if big != 0.0 {
        h.iter_mut().for_each(|x| *x /= big);
    }
    // backward error per row: |Σ T h| / (Σ |T|·max|h|), and max|h| = 1
    let mut residual = 0.0f64;
    for row in &t {
        let (sum, scale) = row
            .iter()
            .zip(&h)
            .fold((0.0, 0.0), |(s, a), (&tij, &hj)| (s + tij * hj, a + tij.abs()));
        if scale > 0.0 {
            residual = residual.max(sum.abs() / scale);
        }
    }
    let second = sv
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != imin)
        .map(|(_, &x)| x)
        .fold(f64::INFINITY, f64::min);
    let degenerate = cols > 1 && smax > 0.0 && second / smax < 1e-10;
    let _ = smin;
    Ok((h, residual, degenerate))
}

fn complex_search(p: &QeParams<f64>, search: &QeSearch) -> Result<Vec<ComplexQeSolution>> {
    let width = search.energy_max - search.energy_min;
    let mut found: Vec<ComplexQeSolution> = Vec::new();
    if p.m.min(p.n) == 1 {
        // E is pinned; only g₂ can leave the real axis.
        let e = C::new(p.beta * (2.0 - 2.0 * p.m as f64), 0.0);
        if e.re >= search.energy_min && e.re <= search.energy_max {
            for g in eigenvalues(&r0_matrix(p, e))? {
                if !is_real(g) && g.re >= search.g2_min && g.re <= search.g2_max {
                    found.push(ComplexQeSolution { energy: e, g2: g, mismatch: 0.0 });
                }
            }
        }
        found.sort_by(|a, b| a.g2.re.total_cmp(&b.g2.re).then(a.g2.im.total_cmp(&b.g2.im)));
        return Ok(found);
    }
    let f = |e: C| compatibility(p, e);
    for i in 0..=16 {
        let re = search.energy_min + width * i as f64 / 16.0;
        for im in [0.25, 1.0, 4.0, 16.0] {
            let Some(e) = newton_complex(&f, C::new(re, im * width / 100.0 + im)) else { continue };
            if e.re < search.energy_min || e.re > search.energy_max {
                continue;
            }
            let mu = eigenvalues(&r0_matrix(p, e))?;
            let roots = poly_roots(&block_poly(p, e))?;
            for g in roots {
                let mismatch = mu.iter().map(|m| (g - m).norm() / (1.0 + m.norm())).fold(f64::INFINITY, f64::min);
                if mismatch > PAIRING_TOL || (is_real(e) && is_real(g)) {
                    continue;
                }
                if g.re < search.g2_min || g.re > search.g2_max {
                    continue;
                }
                for cand in [(e, g), (e.conj(), g.conj())] {
                    let dup = found.iter().any(|s| {
                        (s.energy - cand.0).norm() <= 1e-7 * (1.0 + cand.0.norm())
                            && (s.g2 - cand.1).norm() <= 1e-7 * (1.0 + cand.1.norm())
                    });
                    if !dup {
                        found.push(ComplexQeSolution { energy: cand.0, g2: cand.1, mismatch });
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| {
        a.energy.re.total_cmp(&b.energy.re).then(a.energy.im.total_cmp(&b.energy.im)).then(a.g2.re.total_cmp(&b.g2.re))
    });
    Ok(found)
}

fn newton_complex(f: &dyn Fn(C) -> C, mut z: C) -> Option<C> {
    for _ in 0..80 {
        let h = 1e-6 * (1.0 + z.norm());
        let fz = f(z);
        let df = (f(z + h) - f(z - h)) / (2.0 * h);
        if df.norm() == 0.0 || !df.norm().is_finite() {
            return None;
        }
        let step = fz / df;
        z -= step;
        if !z.norm().is_finite() {
            return None;
        }
        if step.norm() <= 1e-13 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// `ψ(x)` for a solution, evaluated on unwrapped points so that the
/// fractional powers `x^{2n-L}` follow the contour across sheets.
#[derive(Clone, Debug)]
pub struct QeWavefunction<F> {
    alpha: F,
    beta: F,
    energy: F,
    couplings: [F; 4],
    centrifugal: F,
    h: Vec<F>,
    powers: Vec<Rational>,
}

pub fn qe_wavefunction<F: Real>(solution: &QeSolution, params: &QeParams<F>) -> Result<QeWavefunction<F>> {
    if solution.h.len() != params.n as usize {
        return Err(Error::InvalidParameter(format!(
            "solution has {} coefficients, expected N = {}",
            solution.h.len(),
            params.n
        )));
    }
    let l = params.angular_momentum();
    Ok(QeWavefunction {
        alpha: params.alpha,
        beta: params.beta,
        energy: F::lit(solution.energy),
        couplings: [params.g8(), params.g6(), params.g4(), F::lit(solution.g2)],
        centrifugal: params.centrifugal(),
        h: solution.h.iter().map(|&v| F::lit(v)).collect(),
        powers: (0..params.n as i64).map(|k| Rational::from_integer(2 * k) - l).collect(),
    })
}

impl<F: Real> QeWavefunction<F> {
    pub fn eval(&self, point: &UnwrappedPoint<F>) -> Result<Complex<F>> {
        Ok(self.parts(point)?.0)
    }

    /// `(ψ, ψ'')` from exact termwise derivatives.
    fn parts(&self, point: &UnwrappedPoint<F>) -> Result<(Complex<F>, Complex<F>)> {
        let x = point.x();
        let x2 = x * x;
        let x3 = x2 * x;
        let x4 = x2 * x2;
        let (a, b) = (self.alpha, self.beta);
        let six = F::lit(6.0);
        let four = F::lit(4.0);
        let two = F::lit(2.0);
        let pe = -(x4 * x2) / six - x4 * (a / four) - x2 * (b / two);
        let dp = -(x4 * x) - x3 * a - x * b;
        let ddp = -(x4 * F::lit(5.0)) - x2 * (a * F::lit(3.0)) - Complex::new(b, F::zero());
        let one = Rational::one();
        let (mut s, mut ds, mut dds) = (Complex::<F>::zero(), Complex::<F>::zero(), Complex::<F>::zero());
        for (&h, &k) in self.h.iter().zip(&self.powers) {
            if h.is_zero() {
                continue;
            }
            let kf = F::from_rational(k);
            s = s + eval_x_power(point, k)? * h;
            ds = ds + eval_x_power(point, k - one)? * (h * kf);
            dds = dds + eval_x_power(point, k - one - one)? * (h * kf * (kf - F::one()));
        }
        let e = pe.exp();
        let psi = e * s;
        let d2 = e * (dds + dp * ds * two + (ddp + dp * dp) * s);
        Ok((psi, d2))
    }

    /// `(residual, scale)` of the equation at a point; the scale is the sum
    /// of the magnitudes of its terms.
    pub fn equation_terms(&self, point: &UnwrappedPoint<F>) -> Result<(Complex<F>, F)> {
        let (psi, d2) = self.parts(point)?;
        let x = point.x();
        let x2 = x * x;
        let mut terms = vec![-d2, psi * self.centrifugal / x2, -(psi * self.energy)];
        let mut xp = x2 * x2 * x2 * x2 * x2;
        terms.push(xp * psi);
        for &g in &self.couplings {
            xp = xp / x2;
            terms.push(xp * psi * g);
        }
        let sum = terms.iter().fold(Complex::zero(), |acc: Complex<F>, &t| acc + t);
        let scale = terms.iter().fold(F::zero(), |acc, t| acc + t.norm());
        Ok((sum, scale))
    }
}

/// Largest relative residual of the differential equation over the points.
pub fn ode_residual<F: Real>(solution: &QeSolution, params: &QeParams<F>, points: &[UnwrappedPoint<F>]) -> Result<F> {
    let wf = qe_wavefunction(solution, params)?;
    let mut worst = F::zero();
    for p in points {
        let (sum, scale) = wf.equation_terms(p)?;
        if scale > F::zero() {
            worst = worst.max(sum.norm() / scale);
        }
    }
    Ok(worst)
}
