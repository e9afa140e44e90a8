//! The seven cut-plane diagrams: decadic wedges (1–2) and the harmonic
//! toboggans (3–7).

use std::f64::consts::{FRAC_PI_2, PI};

use crate::contour::{export_svg, ContourSpec, SvgOptions};
use crate::wedges::AnsatzSign;
use crate::{Error, Result};

/// Everything needed to draw one figure.
#[derive(Clone, Debug)]
pub struct Figure {
    pub number: u32,
    pub contours: Vec<ContourSpec<f64>>,
    pub cut_rotation: f64,
    pub options: SvgOptions,
}

impl Figure {
    pub fn file_name(&self) -> String {
        format!("fig{}.svg", self.number)
    }

    pub fn render(&self) -> String {
        export_svg(&self.contours, self.cut_rotation, &self.options)
    }
}

fn join(n: u32, p: f64, epsilon: f64) -> Result<ContourSpec<f64>> {
    ContourSpec::wedge_join(n, p, epsilon, 1.0)
}

/// Figure `number` (1–7).
pub fn figure(number: u32) -> Result<Figure> {
    let decadic = |sign, title: &str| SvgOptions {
        extent: 2.5,
        wedges: Some((10, vec![sign])),
        title: Some(title.to_string()),
        ..SvgOptions::default()
    };
    let harmonic = |sign, title: &str| SvgOptions {
        extent: 4.0,
        wedges: Some((2, vec![sign])),
        title: Some(title.to_string()),
        ..SvgOptions::default()
    };
    use AnsatzSign::{Minus, Plus};
    let (contours, cut_rotation, options) = match number {
        1 => (
            vec![join(1, 6.0, 0.5)?, ContourSpec::bg_line(0.5)?, join(5, 6.0, 0.5)?],
            0.0,
            decadic(Minus, "decadic wedges, exp(-x^6/6): first-first, BG, fifth-fifth"),
        ),
        2 => (
            vec![join(2, 6.0, 0.5)?, join(4, 6.0, 0.5)?],
            0.0,
            decadic(Plus, "decadic wedges, exp(+x^6/6): second-second, fourth-fourth"),
        ),
        3 => (
            vec![ContourSpec::bg_line(1.0)?, join(3, 2.0, 1.0)?],
            0.0,
            harmonic(Minus, "harmonic wedges: BG line and the third-third toboggan"),
        ),
        4 => (vec![join(2, 2.0, 1.0)?], 0.0, harmonic(Plus, "second-second contour, exp(+x^2/2)")),
        5 => (vec![join(3, 2.0, 1.0)?], -FRAC_PI_2, harmonic(Minus, "third-third toboggan, cut rotated clockwise by 90°")),
        6 => (
            vec![join(3, 2.0, 1.0)?],
            FRAC_PI_2,
            harmonic(Minus, "third-third toboggan, cut rotated anticlockwise by 90°"),
        ),
        7 => (vec![join(4, 2.0, 1.0)?], -PI, harmonic(Plus, "fourth-fourth toboggan, cut rotated clockwise by 180°")),
        _ => return Err(Error::InvalidParameter(format!("figures are numbered 1 to 7, got {number}"))),
    };
    Ok(Figure { number, contours, cut_rotation, options })
}

/// `(file name, SVG)` for all seven figures.
pub fn render_all() -> Result<Vec<(String, String)>> {
    (1..=7).map(|n| figure(n).map(|f| (f.file_name(), f.render()))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::analyze;

    #[test]
    fn captions_match_contours() {
        let idx = |fig: u32, k: usize, d: i64| {
            let f = figure(fig).unwrap();
            let r = analyze(&f.contours[k], d).unwrap();
            (r.left_wedge.index, r.right_wedge.index, r.right_wedge.sign, r.tobogganic)
        };
        assert_eq!(idx(1, 0, 10), (1, 1, AnsatzSign::Minus, false));
        assert_eq!(idx(1, 1, 10), (3, 3, AnsatzSign::Minus, false));
        assert_eq!(idx(1, 2, 10), (5, 5, AnsatzSign::Minus, false));
        assert_eq!(idx(2, 0, 10), (2, 2, AnsatzSign::Plus, false));
        assert_eq!(idx(2, 1, 10), (4, 4, AnsatzSign::Plus, false));
        assert_eq!(idx(3, 1, 2), (3, 3, AnsatzSign::Minus, true));
        assert_eq!(idx(4, 0, 2), (2, 2, AnsatzSign::Plus, false));
        assert_eq!(idx(7, 0, 2), (4, 4, AnsatzSign::Plus, true));
    }

    #[test]
    fn all_figures_render_deterministically() {
        let a = render_all().unwrap();
        let b = render_all().unwrap();
        assert_eq!(a.len(), 7);
        assert_eq!(a, b);
        for (name, svg) in &a {
            assert!(name.starts_with("fig") && name.ends_with(".svg"));
            assert!(svg.contains("class=\"cut\""));
        }
        assert!(figure(8).is_err());
    }
}
