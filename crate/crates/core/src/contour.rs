//! PT-symmetric integration contours `x(s)`, `s ∈ ℝ`.
//!
//! Every contour satisfies `x(-s) = -conj(x(s))`, passes below the branch
//! point and carries a continuous (unwrapped) angle, so a contour that
//! winds around the origin is tracked onto the correct Riemann sheet.

use std::fmt;
use std::fmt::Write as _;

use num_complex::Complex;
use num_traits::Zero;

use crate::potential::UnwrappedPoint;
use crate::wedges::{self, AnsatzSign, Wedge};
use crate::{Error, Real, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum ContourSpec<F> {
    /// `x(s) = s - iε`.
    BgLine { epsilon: F },
    /// Joins the n-th left and right wedges of `exp(∓x^p/p)` with
    /// x-angle `-π/2 + (nπ/p)·tanh(s/ℓ)` and radius `√(ε² + s²)`.
    WedgeJoin { n: u32, p: F, epsilon: F, ell: F },
    /// Image of `base` under `ix = (iy)^α`.
    LiouvilleImage { base: Box<ContourSpec<F>>, alpha: F },
}

/// Position and derivatives at one parameter value.
#[derive(Clone, Copy, Debug)]
pub struct ContourPoint<F> {
    pub s: F,
    pub x: Complex<F>,
    pub dx: Complex<F>,
    pub ddx: Complex<F>,
    pub point: UnwrappedPoint<F>,
}

fn positive<F: Real>(name: &str, v: F) -> Result<()> {
    if v.is_finite() && v > F::zero() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

impl<F: Real> ContourSpec<F> {
    pub fn bg_line(epsilon: F) -> Result<Self> {
        positive("epsilon", epsilon)?;
        Ok(Self::BgLine { epsilon })
    }

    pub fn wedge_join(n: u32, p: F, epsilon: F, ell: F) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("wedge index n must be ≥ 1".into()));
        }
        positive("p", p)?;
        if p < F::one() {
            return Err(Error::InvalidParameter(format!("p must be ≥ 1, got {p}")));
        }
        positive("epsilon", epsilon)?;
        positive("ell", ell)?;
        Ok(Self::WedgeJoin { n, p, epsilon, ell })
    }

    pub fn liouville_image(base: ContourSpec<F>, alpha: F) -> Result<Self> {
        positive("alpha", alpha)?;
        if !(base.min_radius() > F::zero()) {
            return Err(Error::Singular("base contour passes through the origin".into()));
        }
        Ok(Self::LiouvilleImage { base: Box::new(base), alpha })
    }

    /// Distance of closest approach to the branch point.
    pub fn min_radius(&self) -> F {
        match self {
            Self::BgLine { epsilon } | Self::WedgeJoin { epsilon, .. } => *epsilon,
            Self::LiouvilleImage { base, alpha } => base.min_radius().powf(*alpha),
        }
    }

    pub fn at(&self, s: F) -> ContourPoint<F> {
        let i = Complex::<F>::i();
        match self {
            Self::BgLine { epsilon } => {
                let x = Complex::new(s, -*epsilon);
                let theta = s.atan2(*epsilon);
                ContourPoint {
                    s,
                    x,
                    dx: Complex::new(F::one(), F::zero()),
                    ddx: Complex::zero(),
                    point: UnwrappedPoint::new(x.norm(), theta),
                }
            }
            Self::WedgeJoin { n, p, epsilon, ell } => {
                let k = F::lit(*n as f64) * F::PI() / *p;
                let t = (s / *ell).tanh();
                let sech2 = F::one() - t * t;
                let phi = -F::FRAC_PI_2() + k * t;
                let dphi = k / *ell * sech2;
                let ddphi = -(F::lit(2.0) * k / (*ell * *ell)) * sech2 * t;
                let r = (*epsilon * *epsilon + s * s).sqrt();
                let dr = s / r;
                let ddr = *epsilon * *epsilon / (r * r * r);
                let e = Complex::from_polar(F::one(), phi);
                let x = e * r;
                let dx = e * Complex::new(dr, r * dphi);
                let ddx = e * Complex::new(ddr - r * dphi * dphi, F::lit(2.0) * dr * dphi + r * ddphi);
                ContourPoint { s, x, dx, ddx, point: UnwrappedPoint::from_x_polar(r, phi) }
            }
            Self::LiouvilleImage { base, alpha } => {
                let b = base.at(s);
                let (ry, ty) = (b.point.radius, b.point.theta);
                let a = *alpha;
                let wpow = |g: F| Complex::from_polar(ry.powf(g), g * ty);
                let point = UnwrappedPoint::new(ry.powf(a), a * ty);
                let x = point.x();
                let w1 = wpow(a - F::one());
                let w2 = wpow(a - F::lit(2.0));
                let dx = w1 * b.dx * a;
                let ddx = (w2 * i * b.dx * b.dx * (a - F::one()) + w1 * b.ddx) * a;
                ContourPoint { s, x, dx, ddx, point }
            }
        }
    }

    pub fn x(&self, s: F) -> Complex<F> {
        self.at(s).x
    }

    /// Limiting unwrapped x-angles at `s → -∞` and `s → +∞`.
    pub fn asymptotic_angles(&self) -> (F, F) {
        match self {
            Self::BgLine { .. } => (-F::PI(), F::zero()),
            Self::WedgeJoin { n, p, .. } => {
                let k = F::lit(*n as f64) * F::PI() / *p;
                (-F::FRAC_PI_2() - k, -F::FRAC_PI_2() + k)
            }
            Self::LiouvilleImage { base, alpha } => {
                let (l, r) = base.asymptotic_angles();
                let map = |phi: F| *alpha * (phi + F::FRAC_PI_2()) - F::FRAC_PI_2();
                (map(l), map(r))
            }
        }
    }

    /// Compact description used as spectrum provenance.
    pub fn fingerprint(&self) -> String {
        match self {
            Self::BgLine { epsilon } => format!("bg_line(eps={epsilon})"),
            Self::WedgeJoin { n, p, epsilon, ell } => {
                format!("wedge_join(n={n},p={p},eps={epsilon},ell={ell})")
            }
            Self::LiouvilleImage { base, alpha } => {
                format!("liouville_image({},alpha={alpha})", base.fingerprint())
            }
        }
    }
}

impl<F: Real> fmt::Display for ContourSpec<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fingerprint())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourReport {
    pub left_wedge: Wedge,
    pub right_wedge: Wedge,
    /// `φ(+∞) - φ(-∞)`.
    pub total_sweep: f64,
    pub cut_crossings: u32,
    pub tobogganic: bool,
}

/// Number of upward-cut directions `π/2 + 2πk` strictly between two angles.
pub fn cut_crossings(lo: f64, hi: f64) -> u32 {
    use std::f64::consts::{FRAC_PI_2, PI};
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let tol = 1e-9;
    let first = ((lo - FRAC_PI_2) / (2.0 * PI) + tol).floor() as i64 + 1;
    let last = ((hi - FRAC_PI_2) / (2.0 * PI) - tol).ceil() as i64 - 1;
    (last - first + 1).max(0) as u32
}

/// Endpoint wedges, sweep and sheet count for dominant exponent `D`.
pub fn analyze<F: Real>(contour: &ContourSpec<F>, d: i64) -> Result<ContourReport> {
    let (lo, hi) = contour.asymptotic_angles();
    let (lo, hi) = (lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN));
    let classify = |a: f64| -> Result<Wedge> {
        wedges::classify_direction(a, d)?.ok_or(Error::StokesBoundary { angle: a })
    };
    let left_wedge = classify(lo)?;
    let right_wedge = classify(hi)?;
    let crossings = cut_crossings(lo, hi);
    Ok(ContourReport {
        left_wedge,
        right_wedge,
        total_sweep: hi - lo,
        cut_crossings: crossings,
        tobogganic: crossings >= 1,
    })
}

/// Samples on a uniform parameter grid.
pub fn sample<F: Real>(contour: &ContourSpec<F>, s_min: F, s_max: F, count: usize) -> Vec<ContourPoint<F>> {
    if count == 1 {
        return vec![contour.at((s_min + s_max) / F::lit(2.0))];
    }
    let h = (s_max - s_min) / F::lit((count - 1) as f64);
    (0..count).map(|k| contour.at(s_min + h * F::lit(k as f64))).collect()
}

/// Rendering options for [`export_svg`].
#[derive(Clone, Debug)]
pub struct SvgOptions {
    pub width: u32,
    pub height: u32,
    /// Half-width of the displayed square in world units.
    pub extent: f64,
    pub s_min: f64,
    pub s_max: f64,
    pub samples: usize,
    /// Dominant exponent and wedge signs to shade.
    pub wedges: Option<(i64, Vec<AnsatzSign>)>,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            width: 480,
            height: 480,
            extent: 4.0,
            s_min: -8.0,
            s_max: 8.0,
            samples: 2001,
            wedges: None,
            title: None,
        }
    }
}

const CONTOUR_COLORS: [&str; 4] = ["#b2182b", "#2166ac", "#1b7837", "#762a83"];

/// Cut-plane diagram: shaded wedges of the visible sheet, the branch cut
/// rotated by `cut_rotation` radians (positive = anticlockwise) from the
/// upward direction, and the part of each contour lying on the visible sheet.
/// The output is a pure function of its inputs.
pub fn export_svg(contours: &[ContourSpec<f64>], cut_rotation: f64, opts: &SvgOptions) -> String {
    use std::f64::consts::{FRAC_PI_2, PI};
    let (w, h) = (opts.width as f64, opts.height as f64);
    let scale = w.min(h) / (2.0 * opts.extent);
    let (cx, cy) = (w / 2.0, h / 2.0);
    let to_screen = |z: Complex<f64>| (cx + z.re * scale, cy - z.im * scale);
    let cut = FRAC_PI_2 + cut_rotation;
    let (vis_lo, vis_hi) = (cut - 2.0 * PI, cut);
    let big = opts.extent * 2.0;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(svg, r#"<defs><clipPath id="frame"><rect x="0" y="0" width="{}" height="{}"/></clipPath></defs>"#, opts.width, opts.height);
    let _ = writeln!(svg, r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#, opts.width, opts.height);
    let _ = writeln!(svg, r#"<g clip-path="url(#frame)">"#);

    if let Some((d, signs)) = &opts.wedges {
        let _ = writeln!(svg, r#"<g id="wedges">"#);
        for w in visible_wedges(*d, signs, vis_lo, vis_hi) {
            let lo = (wedges_f64(w.lower())).max(vis_lo);
            let hi = (wedges_f64(w.upper())).min(vis_hi);
            let steps = 24;
            let mut pts = vec![format!("{:.3},{:.3}", cx, cy)];
            for k in 0..=steps {
                let a = lo + (hi - lo) * k as f64 / steps as f64;
                let (x, y) = to_screen(Complex::from_polar(big, a));
                pts.push(format!("{x:.3},{y:.3}"));
            }
            let fill = match w.sign {
                AnsatzSign::Minus => "#9ecae1",
                AnsatzSign::Plus => "#fdae6b",
            };
            let _ = writeln!(
                svg,
                r#"<polygon class="wedge {}" data-label="{}" points="{}" fill="{}" fill-opacity="0.55" stroke="none"/>"#,
                w.sign,
                w.label(),
                pts.join(" "),
                fill
            );
            let mid = 0.5 * (lo + hi);
            let (lx, ly) = to_screen(Complex::from_polar(opts.extent * 0.8, mid));
            let _ = writeln!(
                svg,
                r##"<text x="{lx:.3}" y="{ly:.3}" font-size="11" text-anchor="middle" fill="#333">{}</text>"##,
                w.label()
            );
        }
        let _ = writeln!(svg, "</g>");
    }

    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="0" y1="{cy:.3}" x2="{w:.3}" y2="{cy:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
    );
    let _ = writeln!(
        svg,
        r##"<line class="axis" x1="{cx:.3}" y1="0" x2="{cx:.3}" y2="{h:.3}" stroke="#bbbbbb" stroke-width="1"/>"##
    );

    let (ex, ey) = to_screen(Complex::from_polar(big, cut));
    let _ = writeln!(
        svg,
        r##"<line class="cut" x1="{cx:.3}" y1="{cy:.3}" x2="{ex:.3}" y2="{ey:.3}" stroke="#000000" stroke-width="3" stroke-dasharray="8 4"/>"##
    );

    for (idx, c) in contours.iter().enumerate() {
        let color = CONTOUR_COLORS[idx % CONTOUR_COLORS.len()];
        let mut runs: Vec<Vec<String>> = Vec::new();
        let mut current: Vec<String> = Vec::new();
        for p in sample(c, opts.s_min, opts.s_max, opts.samples.max(2)) {
            let a = p.point.x_angle();
            if a > vis_lo && a < vis_hi {
                let (x, y) = to_screen(p.x);
                current.push(format!("{x:.3},{y:.3}"));
            } else if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        }
        if !current.is_empty() {
            runs.push(current);
        }
        for run in runs.into_iter().filter(|r| r.len() >= 2) {
            let _ = writeln!(
                svg,
                r#"<polyline class="contour" data-contour="{}" points="{}" fill="none" stroke="{}" stroke-width="2"/>"#,
                c.fingerprint(),
                run.join(" "),
                color
            );
        }
    }

    let _ = writeln!(svg, r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="3" fill="#000000"/>"##);
    let _ = writeln!(svg, "</g>");
    if let Some(title) = &opts.title {
        let _ = writeln!(
            svg,
            r#"<text x="8" y="16" font-size="13" font-family="sans-serif">{}</text>"#,
            escape(title)
        );
    }
    svg.push_str("</svg>\n");
    svg
}

fn wedges_f64(r: crate::Rational) -> f64 {
    crate::rational::to_f64(r) * std::f64::consts::PI
}

fn visible_wedges(d: i64, signs: &[AnsatzSign], lo: f64, hi: f64) -> Vec<Wedge> {
    use crate::wedges::Side;
    let mut out = Vec::new();
    let mut push = |w: Wedge| {
        if signs.contains(&w.sign) && wedges_f64(w.upper()) > lo && wedges_f64(w.lower()) < hi {
            out.push(w);
        }
    };
    if let Ok(b) = wedges::wedge(d, Side::Bottom, 0) {
        push(b);
    }
    for n in 1..=(4 * d as u32 + 8) {
        for side in [Side::Right, Side::Left] {
            if let Ok(w) = wedges::wedge(d, side, n) {
                push(w);
            }
        }
    }
    out
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
