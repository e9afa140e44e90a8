//! Serializable output documents shared by the command-line tool and the
//! determinism checks. Render them with [`crate::format::to_json`].

use serde::Serialize;

use crate::contour::{analyze, sample, ContourSpec};
use crate::liouville::{TransformJob, TransformResult};
use crate::potential::PotentialDocument;
use crate::rational::{self, Rational};
use crate::spectra::{Extrapolation, Spectrum};
use crate::wedges::{AnsatzSign, Side, Wedge};
use crate::{format, Result, Scalar};

/// An angle both as a number and, where rational, as a multiple of π.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Angle {
    pub radians: f64,
    pub exact: String,
}

impl Angle {
    pub fn from_pi_multiple(r: Rational) -> Self {
        Self { radians: rational::to_f64(r) * std::f64::consts::PI, exact: rational::display_pi(r) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedgeEntry {
    pub label: String,
    pub side: Side,
    pub index: u32,
    pub sign: AnsatzSign,
    pub lower: Angle,
    pub upper: Angle,
    pub center: Angle,
}

impl From<&Wedge> for WedgeEntry {
    fn from(w: &Wedge) -> Self {
        Self {
            label: w.label(),
            side: w.side,
            index: w.index,
            sign: w.sign,
            lower: Angle::from_pi_multiple(w.lower()),
            upper: Angle::from_pi_multiple(w.upper()),
            center: Angle::from_pi_multiple(w.center),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WedgesDocument {
    pub dominant_exponent: i64,
    pub power: i64,
    pub sign: AnsatzSign,
    pub wedges: Vec<WedgeEntry>,
}

impl WedgesDocument {
    pub fn new(d: i64, sign: AnsatzSign, wedges: &[Wedge]) -> Result<Self> {
        Ok(Self {
            dominant_exponent: d,
            power: crate::wedges::decay_power(d)?,
            sign,
            wedges: wedges.iter().map(WedgeEntry::from).collect(),
        })
    }

    /// Fixed-width text table, one wedge per line.
    pub fn table(&self) -> String {
        let mut s = format!("D = {}, p = {}, exp({}x^{}/{})\n", self.dominant_exponent, self.power, sign_char(self.sign), self.power, self.power);
        s.push_str(&format!("{:<14} {:>12} {:>12}\n", "wedge", "lower", "upper"));
        for w in &self.wedges {
            s.push_str(&format!("{:<14} {:>12} {:>12}\n", w.label, w.lower.exact, w.upper.exact));
        }
        s
    }
}

fn sign_char(sign: AnsatzSign) -> char {
    match sign {
        AnsatzSign::Minus => '-',
        AnsatzSign::Plus => '+',
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourAnalysis {
    pub left_wedge: String,
    pub right_wedge: String,
    pub sign: AnsatzSign,
    pub total_sweep: f64,
    pub cut_crossings: u32,
    pub tobogganic: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourSample {
    pub s: f64,
    pub re: f64,
    pub im: f64,
    /// Unwrapped argument of `ix`.
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourDocument {
    pub contour: String,
    pub dominant_exponent: i64,
    /// Absent when an endpoint lies on a Stokes line.
    pub analysis: Option<ContourAnalysis>,
    pub samples: Vec<ContourSample>,
}

impl ContourDocument {
    pub fn new(contour: &ContourSpec<f64>, d: i64, s_range: (f64, f64), count: usize) -> Result<Self> {
        let analysis = match analyze(contour, d) {
            Ok(r) => Some(ContourAnalysis {
                left_wedge: r.left_wedge.label(),
                right_wedge: r.right_wedge.label(),
                sign: r.right_wedge.sign,
                total_sweep: r.total_sweep,
                cut_crossings: r.cut_crossings,
                tobogganic: r.tobogganic,
            }),
            Err(crate::Error::StokesBoundary { .. }) => None,
            Err(e) => return Err(e),
        };
        let samples = sample(contour, s_range.0, s_range.1, count)
            .into_iter()
            .map(|p| ContourSample { s: p.s, re: p.x.re, im: p.x.im, theta: p.point.theta })
            .collect();
        Ok(Self { contour: contour.fingerprint(), dominant_exponent: d, analysis, samples })
    }

    /// `s,re,im,theta` rows with a header line.
    pub fn csv(&self) -> String {
        let mut s = String::from("s,re,im,theta\n");
        for p in &self.samples {
            s.push_str(&format!("{},{},{},{}\n", format::sci(p.s), format::sci(p.re), format::sci(p.im), format::sci(p.theta)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumDocument {
    pub contour: String,
    pub grid: String,
    pub reality_tolerance: f64,
    /// `[re, im]` pairs, sorted by real then imaginary part.
    pub eigenvalues: Vec<(f64, f64)>,
    pub filtered_real: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extrapolated: Option<Vec<f64>>,
}

impl SpectrumDocument {
    pub fn new(spectrum: &Spectrum) -> Self {
        Self {
            contour: spectrum.contour.clone(),
            grid: spectrum.grid.clone(),
            reality_tolerance: spectrum.reality_tolerance,
            eigenvalues: spectrum.eigenvalues.iter().map(|e| (e.re, e.im)).collect(),
            filtered_real: spectrum.real_levels(),
            extrapolated: None,
        }
    }

    /// The fine-grid spectrum together with the extrapolated levels.
    pub fn extrapolated(ex: &Extrapolation) -> Self {
        Self { extrapolated: Some(ex.levels.clone()), ..Self::new(&ex.fine) }
    }

    /// `index,re,im,real` rows; `real` is 1 when the level passes the filter.
    pub fn csv(&self) -> String {
        let mut s = String::from("index,re,im,real\n");
        for (i, (re, im)) in self.eigenvalues.iter().enumerate() {
            let real = im.abs() <= self.reality_tolerance * (1.0 + re.hypot(*im));
            s.push_str(&format!("{i},{},{},{}\n", format::sci(*re), format::sci(*im), u8::from(real)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MappedTermEntry {
    pub old_exponent: String,
    pub new_exponent: String,
    pub factor: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransformDocument {
    pub alpha: String,
    pub lambda: String,
    pub rho: String,
    pub terms: Vec<MappedTermEntry>,
    pub energy_exponent: String,
    pub energy_factor: String,
    pub energy_folded: bool,
    pub new_energy: Option<String>,
    /// The new potential with couplings rounded to `f64`.
    pub potential: PotentialDocument,
    /// Exact rendering of the new potential.
    pub potential_exact: String,
}

impl TransformDocument {
    pub fn new<T: Scalar>(result: &TransformResult<T>, job: &TransformJob<T>) -> Self {
        Self {
            alpha: rational::display(job.alpha),
            lambda: job.lambda.to_string(),
            rho: rational::display(job.rho),
            terms: result
                .terms
                .iter()
                .map(|t| MappedTermEntry {
                    old_exponent: rational::display(t.old_exponent),
                    new_exponent: rational::display(t.new_exponent),
                    factor: t.factor.to_string(),
                })
                .collect(),
            energy_exponent: rational::display(result.energy.exponent),
            energy_factor: result.energy.factor.to_string(),
            energy_folded: result.energy.folded,
            new_energy: result.new_energy.as_ref().map(|e| e.to_string()),
            potential: result.potential.to_f64().to_document(),
            potential_exact: result.potential.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wedges::asymptotic_wedges;

    #[test]
    fn wedge_table_prints_exact_angles() {
        let ws = asymptotic_wedges(10, AnsatzSign::Minus, 2).unwrap();
        let doc = WedgesDocument::new(10, AnsatzSign::Minus, &ws).unwrap();
        let table = doc.table();
        assert!(table.contains("first right"));
        assert!(table.contains("-5π/12"));
        assert!(table.contains("-π/4"));
        let json = format::to_json(&doc).unwrap();
        assert!(json.contains("\"exact\": \"-5π/12\""));
    }

    #[test]
    fn contour_document_has_analysis_and_samples() {
        let c = ContourSpec::wedge_join(3, 2.0, 1.0, 1.0).unwrap();
        let doc = ContourDocument::new(&c, 2, (-4.0, 4.0), 9).unwrap();
        let a = doc.analysis.as_ref().unwrap();
        assert_eq!(a.left_wedge, "third left");
        assert!(a.tobogganic);
        assert_eq!(doc.samples.len(), 9);
        assert_eq!(doc.csv().lines().count(), 10);
    }
}
