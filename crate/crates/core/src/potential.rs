//! PT-symmetric multinomial potentials `V = Σ g_β (ix)^β + γ/x²`.
//!
//! Powers are taken in log-polar form with an *unwrapped* angle, so a point
//! that has wound once around the origin evaluates `(ix)^{1/2}` to the
//! opposite sign from the principal branch.

use std::fmt;

use num_complex::Complex;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, Real, Result, Scalar};

/// A point in the cut plane, stored through `w = i·x`.
///
/// `theta` is the unwrapped argument of `w`; it is never reduced modulo 2π.
/// The branch cut of `x` runs straight up the imaginary axis, i.e. along
/// `theta = π (mod 2π)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnwrappedPoint<F> {
    pub radius: F,
    pub theta: F,
}

impl<F: Real> UnwrappedPoint<F> {
    pub fn new(radius: F, theta: F) -> Self {
        Self { radius, theta }
    }

    /// From `x = radius · e^{i·x_angle}` with an unwrapped `x_angle`.
    pub fn from_x_polar(radius: F, x_angle: F) -> Self {
        Self { radius, theta: x_angle + F::FRAC_PI_2() }
    }

    /// Principal-sheet point for a complex `x` (x-angle in `(-3π/2, π/2]`).
    pub fn from_x(x: Complex<F>) -> Self {
        let w = Complex::new(-x.im, x.re);
        Self { radius: w.norm(), theta: w.arg() }
    }

    /// Unwrapped argument of `x` itself.
    pub fn x_angle(&self) -> F {
        self.theta - F::FRAC_PI_2()
    }

    pub fn w(&self) -> Complex<F> {
        Complex::from_polar(self.radius, self.theta)
    }

    pub fn x(&self) -> Complex<F> {
        Complex::from_polar(self.radius, self.x_angle())
    }

    /// Net number of upward-cut crossings: 0 on the principal sheet.
    pub fn sheet(&self) -> i64 {
        let two_pi = F::PI() + F::PI();
        ((self.theta + F::PI()) / two_pi).floor().to_i64().unwrap_or(0)
    }

    /// Image under `x ↦ -conj(x)`.
    pub fn pt_image(&self) -> Self {
        Self { radius: self.radius, theta: -self.theta }
    }

    /// Same complex value, one more turn counter-clockwise.
    pub fn wound(&self, turns: i32) -> Self {
        let two_pi = F::PI() + F::PI();
        Self { radius: self.radius, theta: self.theta + two_pi * F::lit(turns as f64) }
    }
}

/// `(ix)^β = exp(β (ln r + iθ))` on the sheet encoded by the unwrapped θ.
pub fn eval_ix_power<F: Real>(point: &UnwrappedPoint<F>, beta: Rational) -> Result<Complex<F>> {
    power_polar(point.radius, point.theta, beta)
}

/// `x^β` with the unwrapped x-angle.
pub fn eval_x_power<F: Real>(point: &UnwrappedPoint<F>, beta: Rational) -> Result<Complex<F>> {
    power_polar(point.radius, point.x_angle(), beta)
}

fn power_polar<F: Real>(radius: F, angle: F, beta: Rational) -> Result<Complex<F>> {
    if beta.is_zero() {
        return Ok(Complex::one());
    }
    if radius.is_zero() {
        if beta.is_negative() {
            return Err(Error::Singular(format!("0^({})", rational::display(beta))));
        }
        return Ok(Complex::zero());
    }
    let b = F::from_rational(beta);
    Ok(Complex::from_polar((b * radius.ln()).exp(), b * angle))
}

/// Which monomials the couplings multiply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `(ix)^β`
    Ix,
    /// `x^β`
    X,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::Ix => "ix",
            Basis::X => "x",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PotentialTerm<T> {
    pub coupling: T,
    pub exponent: Rational,
}

/// Real couplings at distinct exact exponents, sorted by descending
/// exponent, plus an optional centrifugal strength `γ = L(L+1)` of `γ/x²`.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec<T> {
    terms: Vec<PotentialTerm<T>>,
    centrifugal: Option<T>,
    basis: Basis,
}

impl<T: Scalar> PotentialSpec<T> {
    /// Potential in the `(ix)^β` basis.
    pub fn new(terms: Vec<(T, Rational)>, centrifugal: Option<T>) -> Result<Self> {
        Self::with_basis(terms, centrifugal, Basis::Ix)
    }

    pub fn with_basis(terms: Vec<(T, Rational)>, centrifugal: Option<T>, basis: Basis) -> Result<Self> {
        let mut terms: Vec<_> = terms
            .into_iter()
            .map(|(coupling, exponent)| PotentialTerm { coupling, exponent })
            .collect();
        terms.sort_by(|a, b| b.exponent.cmp(&a.exponent));
        if let Some(w) = terms.windows(2).find(|w| w[0].exponent == w[1].exponent) {
            return Err(Error::DuplicateExponent(w[0].exponent));
        }
        Ok(Self { terms, centrifugal, basis })
    }

    pub fn terms(&self) -> &[PotentialTerm<T>] {
        &self.terms
    }

    pub fn centrifugal(&self) -> Option<&T> {
        self.centrifugal.as_ref()
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coupling_at(&self, exponent: Rational) -> Option<&T> {
        self.terms.iter().find(|t| t.exponent == exponent).map(|t| &t.coupling)
    }

    /// Highest-exponent term.
    pub fn leading(&self) -> Option<&PotentialTerm<T>> {
        self.terms.first()
    }

    pub fn leading_exponent(&self) -> Option<Rational> {
        self.leading().map(|t| t.exponent)
    }

    /// Same potential with zero couplings dropped.
    pub fn pruned(&self) -> Self {
        Self {
            terms: self.terms.iter().filter(|t| !t.coupling.is_zero()).cloned().collect(),
            centrifugal: self.centrifugal.clone().filter(|g| !g.is_zero()),
            basis: self.basis,
        }
    }

    /// Value at a point of the cut plane.
    pub fn eval<F: Real>(&self, point: &UnwrappedPoint<F>) -> Result<Complex<F>> {
        let mut v = Complex::zero();
        for term in &self.terms {
            let g = F::lit(term.coupling.to_f64_lossy());
            let p = match self.basis {
                Basis::Ix => eval_ix_power(point, term.exponent)?,
                Basis::X => eval_x_power(point, term.exponent)?,
            };
            v = v + p * g;
        }
        if let Some(gamma) = &self.centrifugal {
            // γ/x² = -γ (ix)^{-2}
            let inv = eval_ix_power(point, Rational::from_integer(-2))?;
            v = v - inv * F::lit(gamma.to_f64_lossy());
        }
        Ok(v)
    }

    /// Rewrites between the `(ix)^β` and `x^β` bases; every exponent must be
    /// an even integer, for which `(ix)^β = (-1)^{β/2} x^β`.
    pub fn basis_convert(&self) -> Result<Self> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if !rational::is_even_integer(t.exponent) {
                return Err(Error::NotEvenExponent(t.exponent));
            }
            let flip = (t.exponent.numer() / 2) % 2 != 0;
            let coupling = if flip { -t.coupling.clone() } else { t.coupling.clone() };
            terms.push(PotentialTerm { coupling, exponent: t.exponent });
        }
        let basis = match self.basis {
            Basis::Ix => Basis::X,
            Basis::X => Basis::Ix,
        };
        Ok(Self { terms, centrifugal: self.centrifugal.clone(), basis })
    }

    pub fn map_couplings<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PotentialSpec<U> {
        PotentialSpec {
            terms: self
                .terms
                .iter()
                .map(|t| PotentialTerm { coupling: f(&t.coupling), exponent: t.exponent })
                .collect(),
            centrifugal: self.centrifugal.as_ref().map(&f),
            basis: self.basis,
        }
    }

    pub fn to_f64(&self) -> PotentialSpec<f64> {
        self.map_couplings(|c| c.to_f64_lossy())
    }

    pub fn to_document(&self) -> PotentialDocument {
        PotentialDocument {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|t| (t.coupling.to_f64_lossy(), *t.exponent.numer(), *t.exponent.denom()))
                .collect(),
            centrifugal: self.centrifugal.as_ref().map(|g| g.to_f64_lossy()),
        }
    }

    pub fn from_document(doc: &PotentialDocument) -> Result<Self> {
        let mut terms = Vec::with_capacity(doc.terms.len());
        for &(c, num, den) in &doc.terms {
            if !c.is_finite() {
                return Err(Error::Parse(format!("coupling {c} is not a finite real number")));
            }
            if den <= 0 {
                return Err(Error::Parse(format!("exponent denominator {den} must be positive")));
            }
            let coupling = T::from_f64(c).ok_or_else(|| Error::Parse(format!("coupling {c}")))?;
            terms.push((coupling, Rational::new(num, den)));
        }
        let centrifugal = match doc.centrifugal {
            Some(g) if !g.is_finite() => return Err(Error::Parse("centrifugal must be finite".into())),
            Some(g) => Some(T::from_f64(g).ok_or_else(|| Error::Parse(format!("centrifugal {g}")))?),
            None => None,
        };
        Self::with_basis(terms, centrifugal, doc.basis)
    }

    pub fn to_json(&self) -> Result<String> {
        crate::format::to_json(&self.to_document())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PotentialDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

impl<T: Scalar> fmt::Display for PotentialSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.basis {
            Basis::Ix => "(ix)",
            Basis::X => "x",
        };
        let mut first = true;
        for t in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}·{}^{}", t.coupling, var, rational::display(t.exponent))?;
        }
        if let Some(g) = &self.centrifugal {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{g}/x^2")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// On-disk form: `{"basis": "ix", "terms": [[coupling, num, den], …], "centrifugal": γ|null}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialDocument {
    pub basis: Basis,
    pub terms: Vec<(f64, i64, i64)>,
    #[serde(default)]
    pub centrifugal: Option<f64>,
}
