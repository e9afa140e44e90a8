//! The change of variables `ix = (iy)^α`, `ψ(x) = y^ρ φ(y)` with
//! `ρ = (α-1)/2`.
//!
//! Applied to `-ψ'' + V(x) ψ = E ψ` it produces, after multiplying through
//! by `α² (iy)^{2α-2}`,
//!
//! ```text
//! -φ'' + (α²-1)/(4y²) φ + α² (iy)^{2α-2} [V((iy)^α) - E] φ = 0
//! ```
//!
//! so a term `g (ix)^β` becomes `α² g (iy)^{αβ+2α-2}`. The new equation is
//! kept in "zero-energy" form; whichever term lands on exponent 0 plays the
//! role of the new energy.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::potential::{Basis, PotentialSpec};
use crate::rational::{self, Rational};
use crate::{Error, Real, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct TransformJob<T> {
    pub alpha: Rational,
    /// Multiplies every term whose exponent is not in `exempt`.
    pub lambda: T,
    /// `(α-1)/2`, the power that removes first derivatives.
    pub rho: Rational,
    /// Exponents of λ-free terms (the unperturbed `-(ix)²`, say).
    pub exempt: Vec<Rational>,
}

impl<T: Scalar> TransformJob<T> {
    /// Every term is scaled by λ.
    pub fn new(alpha: Rational, lambda: T) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::InvalidParameter(format!("alpha must be positive, got {}", rational::display(alpha))));
        }
        let rho = (alpha - Rational::one()) / Rational::from_integer(2);
        Ok(Self { alpha, lambda, rho, exempt: Vec::new() })
    }

    /// `-(ix)² + λ W(ix)`: the exponent-2 term is left unscaled.
    pub fn anharmonic(alpha: Rational, lambda: T) -> Result<Self> {
        Self::new(alpha, lambda).map(|j| j.with_exempt(vec![Rational::from_integer(2)]))
    }

    pub fn with_exempt(mut self, exempt: Vec<Rational>) -> Self {
        self.exempt = exempt;
        self
    }

    /// `β ↦ αβ + 2α - 2`.
    pub fn map_exponent(&self, beta: Rational) -> Result<Rational> {
        let two = Rational::from_integer(2);
        let ab = rational::checked_mul(self.alpha, beta)?;
        let shift = rational::checked_sub(rational::checked_mul(two, self.alpha)?, two)?;
        rational::checked_add(ab, shift)
    }

    fn alpha_sq(&self) -> Result<T> {
        Ok(T::from_rational(rational::checked_mul(self.alpha, self.alpha)?))
    }
}

/// Where the old energy sits in the new, zero-energy equation.
#[derive(Clone, Debug, PartialEq)]
pub enum EnergySlot<T> {
    /// Keep `E` symbolic: reported as a coefficient, not folded in.
    Symbolic,
    Value(T),
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyRole<T> {
    /// `2α - 2`.
    pub exponent: Rational,
    /// `-α²`: the old energy enters as `factor · E · (iy)^exponent`.
    pub factor: T,
    /// True when a numeric `E` was merged into `potential`.
    pub folded: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MappedTerm<T> {
    pub old_exponent: Rational,
    pub new_exponent: Rational,
    /// Multiplier applied to the old coupling (`λα²` or `α²`).
    pub factor: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformResult<T> {
    /// Zero-energy form in the `(iy)^β` basis, centrifugal including
    /// the generated `(α²-1)/4`.
    pub potential: PotentialSpec<T>,
    pub energy: EnergyRole<T>,
    pub terms: Vec<MappedTerm<T>>,
    /// Old exponent mapped onto 0, if any.
    pub energy_source: Option<Rational>,
    /// Minus the exponent-0 coupling: the eigenvalue of the new problem.
    pub new_energy: Option<T>,
}

impl<T: Scalar> TransformResult<T> {
    /// The new problem written as `-φ'' + V φ = E_new φ`.
    pub fn eigenproblem(&self) -> Result<(PotentialSpec<T>, T)> {
        let zero = Rational::zero();
        let e = self.new_energy.clone().unwrap_or_else(T::zero);
        let terms = self
            .potential
            .terms()
            .iter()
            .filter(|t| t.exponent != zero)
            .map(|t| (t.coupling.clone(), t.exponent))
            .collect();
        Ok((PotentialSpec::with_basis(terms, self.potential.centrifugal().cloned(), Basis::Ix)?, e))
    }
}

/// Maps an `(ix)^β` potential through `ix = (iy)^α`.
///
/// A centrifugal `γ/x²` in `old` is carried as `α²γ/y²`, added to the
/// generated `(α²-1)/4`.
pub fn transform_potential<T: Scalar>(
    old: &PotentialSpec<T>,
    energy: EnergySlot<T>,
    job: &TransformJob<T>,
) -> Result<TransformResult<T>> {
    if old.basis() != Basis::Ix {
        return Err(Error::InvalidParameter("transform expects a potential in the (ix) basis".into()));
    }
    let alpha_sq = job.alpha_sq()?;
    let scaled = job.lambda.clone() * alpha_sq.clone();
    let mut acc: BTreeMap<Rational, T> = BTreeMap::new();
    let mut terms = Vec::with_capacity(old.terms().len());
    let mut energy_source = None;
    for t in old.terms() {
        let new_exponent = job.map_exponent(t.exponent)?;
        let factor = if job.exempt.contains(&t.exponent) { alpha_sq.clone() } else { scaled.clone() };
        let slot = acc.entry(new_exponent).or_insert_with(T::zero);
        *slot = slot.clone() + factor.clone() * t.coupling.clone();
        if new_exponent.is_zero() {
            energy_source = Some(t.exponent);
        }
        terms.push(MappedTerm { old_exponent: t.exponent, new_exponent, factor });
    }
    let energy_exponent = job.map_exponent(Rational::zero())?;
    let factor = -alpha_sq.clone();
    let folded = match &energy {
        EnergySlot::Symbolic => false,
        EnergySlot::Value(e) => {
            let slot = acc.entry(energy_exponent).or_insert_with(T::zero);
            *slot = slot.clone() + factor.clone() * e.clone();
            true
        }
    };
    let generated = T::from_rational((job.alpha * job.alpha - Rational::one()) / Rational::from_integer(4));
    let centrifugal = match old.centrifugal() {
        Some(g) => generated + alpha_sq * g.clone(),
        None => generated,
    };
    let new_energy = acc.get(&Rational::zero()).map(|c| -c.clone());
    let potential = PotentialSpec::with_basis(
        acc.into_iter().rev().map(|(e, c)| (c, e)).collect(),
        (!centrifugal.is_zero()).then_some(centrifugal),
        Basis::Ix,
    )?;
    Ok(TransformResult {
        potential,
        energy: EnergyRole { exponent: energy_exponent, factor, folded },
        terms,
        energy_source,
        new_energy,
    })
}

/// Merges the `(iy)^{-2}` term into the centrifugal strength using
/// `(iy)^{-2} = -y^{-2}`.
pub fn fold_centrifugal<T: Scalar>(result: &TransformResult<T>) -> Result<PotentialSpec<T>> {
    let minus_two = Rational::from_integer(-2);
    let spec = &result.potential;
    let from_term = spec.coupling_at(minus_two).cloned().unwrap_or_else(T::zero);
    let strength = spec.centrifugal().cloned().unwrap_or_else(T::zero) - from_term;
    let terms = spec
        .terms()
        .iter()
        .filter(|t| t.exponent != minus_two)
        .map(|t| (t.coupling.clone(), t.exponent))
        .collect();
    PotentialSpec::with_basis(terms, Some(strength), spec.basis())
}

/// Under `x = σy` the coupling of exponent β becomes `g σ^{β+2}` and the
/// energies scale by `σ²`; returns the new potential and that energy scale.
pub fn scale_coordinates<F: Real>(spec: &PotentialSpec<F>, sigma: F) -> Result<(PotentialSpec<F>, F)> {
    if !(sigma.is_finite() && sigma > F::zero()) {
        return Err(Error::InvalidParameter(format!("sigma must be positive, got {sigma}")));
    }
    let terms = spec
        .terms()
        .iter()
        .map(|t| {
            let p = F::from_rational(t.exponent) + F::lit(2.0);
            (t.coupling * sigma.powf(p), t.exponent)
        })
        .collect();
    let out = PotentialSpec::with_basis(terms, spec.centrifugal().copied(), spec.basis())?;
    Ok((out, sigma * sigma))
}

/// Rescales so the leading coupling has unit magnitude. Returns
/// `(potential, σ, energy_scale)`.
pub fn normalize_leading<F: Real>(spec: &PotentialSpec<F>) -> Result<(PotentialSpec<F>, F, F)> {
    let lead = spec
        .leading()
        .ok_or_else(|| Error::InvalidParameter("empty potential".into()))?;
    let p = F::from_rational(lead.exponent) + F::lit(2.0);
    if !(p > F::zero()) || lead.coupling.is_zero() {
        return Err(Error::InvalidParameter("leading term cannot be normalised".into()));
    }
    let sigma = lead.coupling.abs().powf(-F::one() / p);
    let (out, scale) = scale_coordinates(spec, sigma)?;
    Ok((out, sigma, scale))
}

/// One row of the screened-harmonic ↔ decadic correspondence.
#[derive(Clone, Debug, PartialEq)]
pub struct DictionaryEntry {
    /// Old coupling symbol (`a` … `f`, `E`, or a structural term).
    pub symbol: &'static str,
    pub old_exponent: Option<Rational>,
    pub new_exponent: Option<Rational>,
    /// Target quantity in the decadic problem written in powers of `y`.
    pub target: &'static str,
    /// Coefficient of the old symbol in the target, as produced by the map.
    pub produced: Rational,
    /// The same coefficient in the conventional identification.
    pub conventional: Rational,
}

impl DictionaryEntry {
    pub fn agrees(&self) -> bool {
        self.produced == self.conventional
    }
}

/// The `α = 3`, `λ = 1/9` dictionary between
/// `-(ix)² + λ[a(ix)^{4/3} + b(ix)^{2/3} + c + d(ix)^{-2/3} + e(ix)^{-4/3} + f(ix)^{-2}]`
/// and the decadic oscillator `y^{10} + g₈y⁸ + g₆y⁶ + g₄y⁴ + g₂y² + L(L+1)/y²`.
///
/// Every `produced` factor comes from running [`transform_potential`] on the
/// corresponding unit-coupling term. The harmonic and energy rows differ from
/// the conventional identification by the uniform factor α² = 9 carried by
/// λ-exempt terms; rescaling with [`normalize_leading`] moves it around but
/// cannot remove it from both rows at once.
pub fn dictionary() -> Result<Vec<DictionaryEntry>> {
    let alpha = Rational::from_integer(3);
    let lambda = Rational::new(1, 9);
    let job = TransformJob::anharmonic(alpha, lambda)?;
    let r = Rational::new;
    let one = Rational::one();

    // (symbol, exponent, target, conventional coefficient)
    let rows: [(&'static str, Rational, &'static str, Rational); 7] = [
        ("harmonic", r(2, 1), "coefficient of y^10", one),
        ("a", r(4, 3), "g8", one),
        ("b", r(2, 3), "g6", -one),
        ("c", r(0, 1), "g4", one),
        ("d", r(-2, 3), "g2", -one),
        ("e", r(-4, 3), "E_new", -one),
        ("f", r(-2, 1), "L(L+1)", -one),
    ];
    let mut out = Vec::new();
    for (symbol, exponent, target, conventional) in rows {
        let coupling = if symbol == "harmonic" { -one } else { one };
        let single = PotentialSpec::new(vec![(coupling, exponent)], None)?;
        let res = transform_potential(&single, EnergySlot::Symbolic, &job)?;
        let new_exponent = job.map_exponent(exponent)?;
        let produced = match target {
            "E_new" => res.new_energy.unwrap_or_else(Rational::zero),
            "L(L+1)" => {
                let folded = fold_centrifugal(&res)?;
                folded.centrifugal().copied().unwrap_or_else(Rational::zero)
                    - res.potential.centrifugal().copied().unwrap_or_else(Rational::zero)
            }
            _ => {
                let y = res.potential.basis_convert()?;
                y.coupling_at(new_exponent).copied().unwrap_or_else(Rational::zero)
            }
        };
        out.push(DictionaryEntry {
            symbol,
            old_exponent: Some(exponent),
            new_exponent: Some(new_exponent),
            target,
            produced,
            conventional,
        });
    }

    // Energy: -α² E at exponent 2α - 2 = 4, i.e. a y^4 term.
    let empty = PotentialSpec::<Rational>::new(vec![], None)?;
    let res = transform_potential(&empty, EnergySlot::Value(one), &job)?;
    let y = res.potential.basis_convert()?;
    out.push(DictionaryEntry {
        symbol: "E",
        old_exponent: None,
        new_exponent: Some(res.energy.exponent),
        target: "g4",
        produced: y.coupling_at(res.energy.exponent).copied().unwrap_or_else(Rational::zero),
        conventional: -r(1, 9),
    });

    // Generated centrifugal constant (α²-1)/4.
    let generated = res.potential.centrifugal().copied().unwrap_or_else(Rational::zero);
    out.push(DictionaryEntry {
        symbol: "(α²-1)/4",
        old_exponent: None,
        new_exponent: Some(r(-2, 1)),
        target: "L(L+1)",
        produced: generated,
        conventional: r(2, 1),
    });
    Ok(out)
}

/// Plain-text table of a transform and, for `α = 3`, the dictionary.
pub fn report<T: Scalar>(result: &TransformResult<T>, job: &TransformJob<T>) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "ix = (iy)^{}   rho = {}   lambda = {}",
        rational::display(job.alpha),
        rational::display(job.rho),
        job.lambda
    );
    let _ = writeln!(s, "old exponent -> new exponent   factor");
    for t in &result.terms {
        let _ = writeln!(
            s,
            "{:>12} -> {:<12}   {}",
            rational::display(t.old_exponent),
            rational::display(t.new_exponent),
            t.factor
        );
    }
    let _ = writeln!(
        s,
        "energy: {} * E_old at exponent {}{}",
        result.energy.factor,
        rational::display(result.energy.exponent),
        if result.energy.folded { " (folded)" } else { "" }
    );
    match (&result.energy_source, &result.new_energy) {
        (Some(src), Some(e)) => {
            let _ = writeln!(s, "new energy: E_new = {e} (from old exponent {})", rational::display(*src));
        }
        (None, Some(e)) => {
            let _ = writeln!(s, "new energy: E_new = {e}");
        }
        _ => {
            let _ = writeln!(s, "new energy: none (no term reaches exponent 0)");
        }
    }
    let _ = writeln!(s, "new potential: {}", result.potential);
    if let Ok(folded) = fold_centrifugal(result) {
        let _ = writeln!(s, "folded: {folded}");
    }
    if job.alpha == Rational::from_integer(3) {
        let _ = writeln!(s, "\ndictionary (alpha = 3, lambda = 1/9):");
        let _ = writeln!(s, "{:<10} {:>8} {:>8} {:<22} {:>10} {:>12}  ok", "symbol", "old", "new", "target", "produced", "conventional");
        for e in dictionary()? {
            let _ = writeln!(
                s,
                "{:<10} {:>8} {:>8} {:<22} {:>10} {:>12}  {}",
                e.symbol,
                e.old_exponent.map(rational::display).unwrap_or_else(|| "-".into()),
                e.new_exponent.map(rational::display).unwrap_or_else(|| "-".into()),
                e.target,
                rational::display(e.produced),
                rational::display(e.conventional),
                if e.agrees() { "yes" } else { "NO" }
            );
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::UnwrappedPoint;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// `-(ix)^2 + λ[a(ix)^{4/3} + … + f(ix)^{-2}]` with symbolic-looking
    /// distinct rational couplings.
    fn screened(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational, f: Rational) -> PotentialSpec<Rational> {
        PotentialSpec::new(
            vec![
                (-Rational::one(), r(2, 1)),
                (a, r(4, 3)),
                (b, r(2, 3)),
                (c, r(0, 1)),
                (d, r(-2, 3)),
                (e, r(-4, 3)),
                (f, r(-2, 1)),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn screened_exponents_map_to_decadic() {
        let job = TransformJob::anharmonic(r(3, 1), r(1, 9)).unwrap();
        let old = screened(r(2, 1), r(3, 1), r(5, 1), r(7, 1), r(11, 1), r(13, 1));
        let res = transform_potential(&old, EnergySlot::Symbolic, &job).unwrap();
        let got: Vec<_> = res.terms.iter().map(|t| (t.old_exponent, t.new_exponent)).collect();
        assert_eq!(
            got,
            vec![
                (r(2, 1), r(10, 1)),
                (r(4, 3), r(8, 1)),
                (r(2, 3), r(6, 1)),
                (r(0, 1), r(4, 1)),
                (r(-2, 3), r(2, 1)),
                (r(-4, 3), r(0, 1)),
                (r(-2, 1), r(-2, 1)),
            ]
        );
        // λα² = 1 exactly for the W terms, α² = 9 for the harmonic one
        assert_eq!(res.potential.coupling_at(r(8, 1)), Some(&r(2, 1)));
        assert_eq!(res.potential.coupling_at(r(10, 1)), Some(&r(-9, 1)));
        assert_eq!(res.energy_source, Some(r(-4, 3)));
        assert_eq!(res.new_energy, Some(r(-11, 1)));
        assert_eq!(res.energy.exponent, r(4, 1));
        assert_eq!(res.energy.factor, r(-9, 1));
        assert_eq!(res.potential.centrifugal(), Some(&r(2, 1)));
    }

    #[test]
    fn fold_gives_two_minus_f() {
        let job = TransformJob::anharmonic(r(3, 1), r(1, 9)).unwrap();
        for f in [r(0, 1), r(2, 1), r(5, 7), r(-3, 1)] {
            let old = screened(r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1), f);
            let res = transform_potential(&old, EnergySlot::Symbolic, &job).unwrap();
            let folded = fold_centrifugal(&res).unwrap();
            assert_eq!(folded.centrifugal(), Some(&(r(2, 1) - f)));
            assert!(folded.coupling_at(r(-2, 1)).is_none());
        }
    }

    #[test]
    fn identity_transform() {
        let job = TransformJob::new(r(1, 1), r(1, 1)).unwrap();
        assert_eq!(job.rho, r(0, 1));
        let old = PotentialSpec::new(vec![(r(3, 2), r(4, 3)), (r(-1, 1), r(2, 1))], None).unwrap();
        let res = transform_potential(&old, EnergySlot::Symbolic, &job).unwrap();
        assert_eq!(res.potential, old);
        assert_eq!(res.energy.exponent, r(0, 1));
        assert!(res.potential.centrifugal().is_none());
    }

    #[test]
    fn energy_value_is_folded_into_exponent_four() {
        let job = TransformJob::anharmonic(r(3, 1), r(1, 9)).unwrap();
        let old = screened(r(0, 1), r(0, 1), r(4, 1), r(0, 1), r(0, 1), r(0, 1));
        let res = transform_potential(&old, EnergySlot::Value(r(1, 2)), &job).unwrap();
        // c - 9E at (iy)^4
        assert_eq!(res.potential.coupling_at(r(4, 1)), Some(&(r(4, 1) - r(9, 2))));
        assert!(res.energy.folded);
    }

    #[test]
    fn round_trip_is_exact() {
        let alpha = r(3, 1);
        let lambda = r(1, 9);
        let old = screened(r(2, 1), r(-3, 1), r(5, 4), r(7, 1), r(11, 3), r(13, 1));
        let fwd = TransformJob::anharmonic(alpha, lambda).unwrap();
        let there = transform_potential(&old, EnergySlot::Symbolic, &fwd).unwrap();

        // Back with the harmonic image λ-exempt.
        let back_job = TransformJob::new(Rational::one() / alpha, Rational::one() / lambda)
            .unwrap()
            .with_exempt(vec![fwd.map_exponent(r(2, 1)).unwrap()]);
        let back = transform_potential(&there.potential, EnergySlot::Symbolic, &back_job).unwrap();
        assert_eq!(back.potential, old);
        // the old energy reappears through the new one
        assert_eq!(back_job.map_exponent(there.energy.exponent).unwrap(), r(0, 1));
        assert_eq!(back.energy.exponent, r(-4, 3));
    }

    #[test]
    fn overflow_rejected() {
        let job = TransformJob::<Rational>::new(Rational::new(i64::MAX / 3, 7), Rational::one()).unwrap();
        let old = PotentialSpec::new(vec![(Rational::one(), Rational::new(5, 3))], None).unwrap();
        assert!(matches!(
            transform_potential(&old, EnergySlot::Symbolic, &job),
            Err(Error::RationalOverflow)
        ));
        assert!(TransformJob::<Rational>::new(r(0, 1), r(1, 1)).is_err());
    }

    #[test]
    fn x_basis_rejected() {
        let job = TransformJob::<f64>::new(r(3, 1), 1.0).unwrap();
        let old = PotentialSpec::with_basis(vec![(1.0, r(2, 1))], None, Basis::X).unwrap();
        assert!(transform_potential(&old, EnergySlot::Symbolic, &job).is_err());
    }

    #[test]
    fn scale_examples() {
        let h = PotentialSpec::new(vec![(1.0, r(2, 1))], None).unwrap();
        let (same, es) = scale_coordinates(&h, 1.0).unwrap();
        assert_eq!(same, h);
        assert_eq!(es, 1.0);
        let (big, es) = scale_coordinates(&h, 2.0).unwrap();
        assert_eq!(big.coupling_at(r(2, 1)), Some(&16.0));
        assert_eq!(es, 4.0);

        let dec = PotentialSpec::with_basis(vec![(9.0, r(10, 1)), (1.0, r(4, 1))], Some(2.0), Basis::X).unwrap();
        let sigma = 9f64.powf(-1.0 / 12.0);
        let (unit, _) = scale_coordinates(&dec, sigma).unwrap();
        assert!((unit.coupling_at(r(10, 1)).unwrap() - 1.0).abs() < 1e-14);
        let (unit2, s2, es2) = normalize_leading(&dec).unwrap();
        assert!((s2 - sigma).abs() < 1e-15);
        assert!((es2 - sigma * sigma).abs() < 1e-15);
        assert_eq!(unit2.centrifugal(), Some(&2.0));
        assert!(scale_coordinates(&h, 0.0).is_err());
    }

    #[test]
    fn dictionary_rows() {
        let dict = dictionary().unwrap();
        let get = |sym: &str| dict.iter().find(|e| e.symbol == sym).unwrap().clone();
        assert!(get("a").agrees());
        assert_eq!(get("a").new_exponent, Some(r(8, 1)));
        assert!(get("b").agrees());
        assert_eq!(get("b").produced, r(-1, 1));
        assert!(get("c").agrees());
        assert!(get("d").agrees());
        assert_eq!(get("d").produced, r(-1, 1));
        assert!(get("e").agrees());
        assert!(get("f").agrees());
        assert!(get("(α²-1)/4").agrees());
        // the α² bookkeeping on λ-exempt terms
        assert_eq!(get("harmonic").produced, r(9, 1));
        assert!(!get("harmonic").agrees());
        assert_eq!(get("E").produced, r(-9, 1));
        assert!(!get("E").agrees());
    }

    #[test]
    fn report_mentions_dictionary() {
        let job = TransformJob::anharmonic(r(3, 1), r(1, 9)).unwrap();
        let old = screened(r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1));
        let res = transform_potential(&old, EnergySlot::Symbolic, &job).unwrap();
        let text = report(&res, &job).unwrap();
        assert!(text.contains("dictionary"));
        assert!(text.contains("L(L+1)"));
    }

    /// Evaluates both sides of `O_new φ = α²(iy)^{2α-2} y^{-ρ} O_old ψ` at a
    /// point on the y-plane, with derivatives by complex central differences
    /// taken along y and converted to x-derivatives by the chain rule.
    fn liouville_identity(alpha: Rational, y0: Complex64, old: &PotentialSpec<f64>, e_old: f64) -> (Complex64, Complex64) {
        let a = rational::to_f64(alpha);
        let rho = (a - 1.0) / 2.0;
        let phi = |y: Complex64| (-(y * y) * 0.3).exp() * (y * 0.7 + 1.0);
        let unwrap = |y: Complex64| UnwrappedPoint::<f64>::from_x(y);
        let ypow = |y: Complex64, g: f64| {
            let p = unwrap(y);
            Complex64::from_polar(p.radius.powf(g), g * p.x_angle())
        };
        let iypow = |y: Complex64, g: f64| {
            let p = unwrap(y);
            Complex64::from_polar(p.radius.powf(g), g * p.theta)
        };
        let psi = |y: Complex64| ypow(y, rho) * phi(y);
        let dxdy = |y: Complex64| iypow(y, a - 1.0) * a;
        let h = 1e-3;
        let d1 = |f: &dyn Fn(Complex64) -> Complex64, y: Complex64| (f(y + h) - f(y - h)) / (2.0 * h);
        // ψ_x = ψ_y / x'(y); ψ_xx = (ψ_x)_y / x'(y)
        let psi_x = |y: Complex64| d1(&psi, y) / dxdy(y);
        let psi_xx = d1(&psi_x, y0) / dxdy(y0);
        let x_point = {
            let p = unwrap(y0);
            UnwrappedPoint::new(p.radius.powf(a), a * p.theta)
        };
        let v_old = old.eval(&x_point).unwrap();
        let o_old = -psi_xx + (v_old - e_old) * psi(y0);

        let job = TransformJob::new(alpha, 1.0).unwrap().with_exempt(old.terms().iter().map(|t| t.exponent).collect());
        let res = transform_potential(old, EnergySlot::Value(e_old), &job).unwrap();
        let v_new = res.potential.eval(&unwrap(y0)).unwrap();
        let phi_yy = (phi(y0 + h) - phi(y0) * 2.0 + phi(y0 - h)) / (h * h);
        let o_new = -phi_yy + v_new * phi(y0);
        let rhs = iypow(y0, 2.0 * a - 2.0) * (a * a) * ypow(y0, -rho) * o_old;
        (o_new, rhs)
    }

    #[test]
    fn rho_removes_first_derivatives() {
        let old = PotentialSpec::new(
            vec![(-1.0, r(2, 1)), (0.4, r(4, 3)), (-0.3, r(2, 3)), (0.2, r(-2, 3)), (0.1, r(-2, 1))],
            Some(0.35),
        )
        .unwrap();
        for alpha in [r(3, 1), r(2, 1), r(1, 2), r(2, 3)] {
            for y0 in [Complex64::new(0.8, 0.3), Complex64::new(-0.6, -0.5), Complex64::new(1.1, -0.2)] {
                let (lhs, rhs) = liouville_identity(alpha, y0, &old, 0.7);
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                assert!((lhs - rhs).norm() / scale < 1e-4, "alpha={alpha} y={y0}: {lhs} vs {rhs}");
            }
        }
    }

    proptest! {
        #[test]
        fn exponent_map_inverts(num in -40i64..40, den in 1i64..12, an in 1i64..7, ad in 1i64..7) {
            let alpha = r(an, ad);
            let beta = r(num, den);
            let fwd = TransformJob::<Rational>::new(alpha, Rational::one()).unwrap();
            let inv = TransformJob::<Rational>::new(Rational::one() / alpha, Rational::one()).unwrap();
            let there = fwd.map_exponent(beta).unwrap();
            prop_assert_eq!(inv.map_exponent(there).unwrap(), beta);
            // -2 is the fixed point
            prop_assert_eq!(fwd.map_exponent(r(-2, 1)).unwrap(), r(-2, 1));
        }
    }
}
