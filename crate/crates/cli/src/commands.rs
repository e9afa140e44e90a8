use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use num_complex::Complex64;
use serde::Serialize;
use toboggan::acceptance;
use toboggan::contour::{export_svg, ContourSpec, SvgOptions};
use toboggan::documents::{ContourDocument, SpectrumDocument, TransformDocument, WedgesDocument};
use toboggan::format::{self, to_json};
use toboggan::liouville::{self, transform_potential, EnergySlot, TransformJob};
use toboggan::potential::{Basis, PotentialSpec};
use toboggan::qe::{qe_solve, QeParams, QeSearch};
use toboggan::spectra::{compute_spectrum, extrapolate, shoot_refine, GridSpec, ShootOutcome};
use toboggan::wedges::{asymptotic_wedges, AnsatzSign};
use toboggan::{figures, rational, Rational, Scalar};

use crate::*;

/// Accepts `0.5`, `-3` or `1/9`.
pub fn number(text: &str) -> Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .or_else(|_| rational::parse(text).map(rational::to_f64))
        .map_err(|_| format!("not a number: {text:?}"))
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

struct Output {
    dir: PathBuf,
}

impl Output {
    fn resolve(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.dir.join(path)
        }
    }

    fn write_file(&self, path: &Path, text: &str) -> anyhow::Result<PathBuf> {
        let full = self.resolve(path);
        if let Some(parent) = full.parent() {
            fs::create_dir_all(parent).with_context(|| format!("cannot create {}", parent.display()))?;
        }
        fs::write(&full, text).with_context(|| format!("cannot write {}", full.display()))?;
        Ok(full)
    }

    /// To `path` when given, otherwise to stdout.
    fn emit(&self, path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
        match path {
            Some(p) => {
                let full = self.write_file(p, text)?;
                eprintln!("wrote {}", full.display());
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
            }
        }
        Ok(())
    }
}

fn check_format(format: Format, allowed: &[Format]) -> anyhow::Result<()> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(usage(format!("format {format:?} is not available here; choose one of {allowed:?}")))
    }
}

pub fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let out = Output { dir: cli.out_dir.unwrap_or_else(|| PathBuf::from(".")) };
    match cli.command {
        Command::Wedges(a) => wedges(&out, a),
        Command::Contour(a) => contour(&out, a),
        Command::Transform(a) => transform(&out, a),
        Command::Qe(a) => qe(&out, a),
        Command::Spectrum(a) => spectrum(&out, a),
        Command::Figures(a) => write_figures(&out, a),
        Command::Verify(a) => verify(&out, a),
    }
}

fn sign(s: SignArg) -> AnsatzSign {
    match s {
        SignArg::Minus => AnsatzSign::Minus,
        SignArg::Plus => AnsatzSign::Plus,
    }
}

fn wedges(out: &Output, a: WedgesArgs) -> anyhow::Result<ExitCode> {
    check_format(a.format, &[Format::Text, Format::Json])?;
    if a.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let sign = sign(a.sign);
    let doc = WedgesDocument::new(a.d, sign, &asymptotic_wedges(a.d, sign, a.count)?)?;
    let text = match a.format {
        Format::Json => to_json(&doc)?,
        _ => doc.table(),
    };
    out.emit(a.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build_contour(a: &ContourArgs) -> anyhow::Result<ContourSpec<f64>> {
    let base = match a.variant {
        Variant::Bg => ContourSpec::bg_line(a.eps)?,
        Variant::Join => ContourSpec::wedge_join(a.n, a.p, a.eps, a.ell)?,
    };
    Ok(match a.liouville {
        Some(alpha) => ContourSpec::liouville_image(base, alpha)?,
        None => base,
    })
}

fn contour(out: &Output, a: ContourCmd) -> anyhow::Result<ExitCode> {
    check_format(a.format, &[Format::Json, Format::Csv, Format::Svg])?;
    let c = build_contour(&a.contour)?;
    let s_min = a.s_min.unwrap_or(-a.s_max);
    if !(s_min < a.s_max) || a.samples < 2 {
        return Err(usage("need s_min < s_max and at least 2 samples"));
    }
    let svg = || {
        let d = a.d;
        let wedge_sign = toboggan::contour::analyze(&c, d).map(|r| r.right_wedge.sign).unwrap_or(AnsatzSign::Minus);
        let opts = SvgOptions {
            s_min,
            s_max: a.s_max,
            wedges: Some((d, vec![wedge_sign])),
            title: Some(c.fingerprint()),
            ..SvgOptions::default()
        };
        export_svg(std::slice::from_ref(&c), a.cut_rotation, &opts)
    };
    if let Some(path) = &a.svg {
        let full = out.write_file(path, &svg())?;
        eprintln!("wrote {}", full.display());
    }
    let text = match a.format {
        Format::Svg => svg(),
        f => {
            let doc = ContourDocument::new(&c, a.d, (s_min, a.s_max), a.samples)?;
            if f == Format::Csv {
                doc.csv()
            } else {
                to_json(&doc)?
            }
        }
    };
    out.emit(a.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// Inline terms or a potential document, with couplings of type `T`.
fn read_potential<T: Scalar>(a: &PotentialArgs, coupling: impl Fn(&str) -> anyhow::Result<T>) -> anyhow::Result<PotentialSpec<T>> {
    if let Some(path) = &a.potential {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let spec = PotentialSpec::<f64>::from_json(&text)?;
        let centrifugal = a.centrifugal.or(spec.centrifugal().copied());
        let terms = spec
            .terms()
            .iter()
            .map(|t| Ok((coupling(&t.coupling.to_string())?, t.exponent)))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let centrifugal = centrifugal.map(|g| coupling(&g.to_string())).transpose()?;
        return Ok(PotentialSpec::with_basis(terms, centrifugal, spec.basis())?);
    }
    if a.term.is_empty() {
        return Err(usage("give a potential with --potential FILE or one or more --term C@E"));
    }
    let mut terms = Vec::with_capacity(a.term.len());
    for t in &a.term {
        let (c, e) = t.split_once('@').ok_or_else(|| usage(format!("term {t:?} is not of the form COUPLING@EXPONENT")))?;
        terms.push((coupling(c)?, rational::parse(e)?));
    }
    let basis = match a.basis {
        BasisArg::Ix => Basis::Ix,
        BasisArg::X => Basis::X,
    };
    let centrifugal = a.centrifugal.map(|g| coupling(&g.to_string())).transpose()?;
    Ok(PotentialSpec::with_basis(terms, centrifugal, basis)?)
}

fn exact(text: &str) -> anyhow::Result<Rational> {
    Ok(rational::parse(text)?)
}

fn float(text: &str) -> anyhow::Result<f64> {
    number(text).map_err(usage)
}

fn transform(out: &Output, a: TransformArgs) -> anyhow::Result<ExitCode> {
    check_format(a.format, &[Format::Json, Format::Text])?;
    let alpha = rational::parse(&a.alpha)?;
    let exempt = a.exempt.iter().map(|e| rational::parse(e)).collect::<toboggan::Result<Vec<_>>>()?;
    // Exact arithmetic whenever every number on the command line is rational.
    let all_exact = a.potential.potential.is_none()
        && a.potential.centrifugal.map_or(true, |g| g.fract() == 0.0)
        && a.potential.term.iter().all(|t| t.split_once('@').is_some_and(|(c, _)| rational::parse(c).is_ok()))
        && rational::parse(&a.lambda).is_ok()
        && a.energy.as_deref().map_or(true, |e| rational::parse(e).is_ok());
    let text = if all_exact {
        run_transform(&a, alpha, exempt, exact)?
    } else {
        run_transform(&a, alpha, exempt, float)?
    };
    out.emit(a.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_transform<T: Scalar>(
    a: &TransformArgs,
    alpha: Rational,
    exempt: Vec<Rational>,
    parse: impl Fn(&str) -> anyhow::Result<T> + Copy,
) -> anyhow::Result<String> {
    let old = read_potential(&a.potential, parse)?;
    let job = TransformJob::new(alpha, parse(&a.lambda)?)?.with_exempt(exempt);
    let energy = match &a.energy {
        Some(e) => EnergySlot::Value(parse(e)?),
        None => EnergySlot::Symbolic,
    };
    let result = transform_potential(&old, energy, &job)?;
    Ok(match a.format {
        Format::Text => liouville::report(&result, &job)?,
        _ => to_json(&TransformDocument::new(&result, &job))?,
    })
}

fn qe(out: &Output, a: QeArgs) -> anyhow::Result<ExitCode> {
    check_format(a.format, &[Format::Json, Format::Csv, Format::Text])?;
    let params = QeParams::new(a.m, a.n, a.alpha, a.beta)?;
    let search = QeSearch {
        energy_min: a.e_min,
        energy_max: a.e_max,
        energy_step: a.e_step,
        g2_min: a.g2_min,
        g2_max: a.g2_max,
        include_complex: a.complex,
    };
    let report = qe_solve(&params, &search)?;
    let text = match a.format {
        Format::Json => to_json(&report)?,
        Format::Csv => {
            let mut s = String::from("energy,g2,g4,residual,flagged\n");
            for sol in &report.solutions {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    format::sci(sol.energy),
                    format::sci(sol.g2),
                    format::sci(sol.g4),
                    format::sci(sol.residual),
                    u8::from(sol.flagged)
                ));
            }
            s
        }
        _ => {
            let mut s = format!("M = {}, N = {}, alpha = {}, beta = {}\n", a.m, a.n, a.alpha, a.beta);
            for sol in &report.solutions {
                s.push_str(&format!(
                    "E = {:>22}  g2 = {:>22}  g4 = {:>22}  residual {:.1e}{}\n",
                    format::sci(sol.energy),
                    format::sci(sol.g2),
                    format::sci(sol.g4),
                    sol.residual,
                    if sol.flagged { "  (flagged)" } else { "" }
                ));
            }
            for d in &report.diagnostics {
                s.push_str(&format!("note: {d}\n"));
            }
            s
        }
    };
    out.emit(a.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SpectrumOutput {
    #[serde(flatten)]
    spectrum: SpectrumDocument,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    refined: Vec<ShootOutcome>,
}

fn spectrum(out: &Output, a: SpectrumArgs) -> anyhow::Result<ExitCode> {
    check_format(a.format, &[Format::Json, Format::Csv])?;
    if !(a.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let v = match a.harmonic {
        Some(alpha) => acceptance::screened_harmonic(alpha)?,
        None => read_potential(&a.potential, float)?,
    };
    let contour = build_contour(&a.contour)?;
    let grid = GridSpec::symmetric(a.s_max, a.points)?;
    let shoot_grid = GridSpec::symmetric(a.s_max, a.shoot_points)?;
    let mut doc = if a.extrapolate {
        let ex = extrapolate(&v, &contour, &grid, a.k)?;
        SpectrumDocument::extrapolated(&ex)
    } else {
        SpectrumDocument::new(&compute_spectrum(&v, &contour, &grid, a.k)?)
    };
    if a.tol != doc.reality_tolerance {
        doc.reality_tolerance = a.tol;
        let eigen: Vec<Complex64> = doc.eigenvalues.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
        doc.filtered_real = toboggan::spectra::filter_real(&eigen, a.tol);
    }
    let refined = a
        .shoot
        .iter()
        .map(|&g| shoot_refine(&v, &contour, Complex64::new(g, 0.0), &shoot_grid))
        .collect::<toboggan::Result<Vec<_>>>()?;
    let text = match a.format {
        Format::Csv => doc.csv(),
        _ => to_json(&SpectrumOutput { spectrum: doc, refined })?,
    };
    out.emit(a.output.as_ref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn write_figures(out: &Output, a: FiguresArgs) -> anyhow::Result<ExitCode> {
    let numbers: Vec<u32> = if a.only.is_empty() { (1..=7).collect() } else { a.only };
    for n in numbers {
        let fig = figures::figure(n)?;
        let path = out.write_file(Path::new(&fig.file_name()), &fig.render())?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(out: &Output, a: VerifyArgs) -> anyhow::Result<ExitCode> {
    for id in &a.only {
        if acceptance::name(*id).is_none() {
            bail!(UsageError(format!("no check with id {id}; ids run from 1 to {}", acceptance::ids().end())));
        }
    }
    let results = acceptance::run_with(&a.only, |r| println!("{}", acceptance::format_line(r)))?;
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} checks passed", results.len());
    if let Some(path) = &a.output {
        let full = out.write_file(path, &to_json(&results)?)?;
        eprintln!("wrote {}", full.display());
    }
    Ok(if passed == results.len() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
