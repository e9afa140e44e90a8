//! Asymptotic Stokes sectors of `V ≈ x^D`.
//!
//! With `p = D/2 + 1` the two WKB solutions behave as `exp(∓x^p/p)`. The
//! `-` solution decays where `cos(pφ) > 0`, the `+` solution where
//! `cos(pφ) < 0`. Wedges are numbered outward from the downward direction
//! `φ = -π/2` on each side; angles are unwrapped, so high indices live on
//! other Riemann sheets. All angles are exact rational multiples of π.

use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::rational::{self, Rational};
use crate::{Error, Real, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    /// The wedge straddling `-π/2` itself (index 0), present when `p` is even.
    Bottom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AnsatzSign {
    /// Decay of `exp(-x^p/p)`.
    Minus,
    /// Decay of `exp(+x^p/p)`.
    Plus,
}

impl fmt::Display for AnsatzSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnsatzSign::Minus => "minus",
            AnsatzSign::Plus => "plus",
        })
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
            Side::Bottom => "bottom",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub side: Side,
    pub index: u32,
    /// Center angle divided by π.
    pub center: Rational,
    /// Half opening angle divided by π.
    pub half_width: Rational,
    pub sign: AnsatzSign,
}

impl Wedge {
    /// Lower edge divided by π.
    pub fn lower(&self) -> Rational {
        self.center - self.half_width
    }

    /// Upper edge divided by π.
    pub fn upper(&self) -> Rational {
        self.center + self.half_width
    }

    pub fn center_angle(&self) -> f64 {
        rational::to_f64(self.center) * std::f64::consts::PI
    }

    pub fn contains(&self, angle: f64) -> bool {
        let pi = std::f64::consts::PI;
        angle > rational::to_f64(self.lower()) * pi && angle < rational::to_f64(self.upper()) * pi
    }

    /// PT mirror `φ ↦ -π - φ`. The sign flips when `p` is odd.
    pub fn mirror(&self) -> Wedge {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bottom => Side::Bottom,
        };
        let center = -Rational::from_integer(1) - self.center;
        Wedge { side, center, sign: sign_at(self.power(), center), ..*self }
    }

    /// `p = D/2 + 1`, recovered from the width.
    pub fn power(&self) -> i64 {
        (Rational::from_integer(1) / (self.half_width * Rational::from_integer(2))).to_integer()
    }

    /// "third right", "second left", "zeroth bottom" …
    pub fn label(&self) -> String {
        format!("{} {}", ordinal(self.index), self.side)
    }
}

impl fmt::Display for Wedge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({}, {}) {}",
            self.label(),
            rational::display_pi(self.lower()),
            rational::display_pi(self.upper()),
            self.sign
        )
    }
}

pub fn ordinal(n: u32) -> String {
    const NAMES: [&str; 11] = [
        "zeroth", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth", "ninth", "tenth",
    ];
    match NAMES.get(n as usize) {
        Some(s) => (*s).to_string(),
        None => format!("{n}th"),
    }
}

/// `p = D/2 + 1` for an even positive dominant exponent `D`.
pub fn decay_power(d: i64) -> Result<i64> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidParameter(format!("dominant exponent D = {d} must be even and ≥ 2")));
    }
    Ok(d / 2 + 1)
}

fn sign_at(p: i64, center: Rational) -> AnsatzSign {
    // p·center is an integer k for every center below, and cos(kπ) = (-1)^k.
    let k = center * Rational::from_integer(p);
    debug_assert!(k.is_integer());
    if k.to_integer().rem_euclid(2) == 0 {
        AnsatzSign::Minus
    } else {
        AnsatzSign::Plus
    }
}

/// The wedge with the given side and index for dominant exponent `D`.
pub fn wedge(d: i64, side: Side, index: u32) -> Result<Wedge> {
    let p = decay_power(d)?;
    let half = Rational::new(1, 2);
    let n = index as i64;
    let offset = if p % 2 == 0 {
        Rational::new(n, p)
    } else {
        if index == 0 {
            return Err(Error::InvalidParameter(format!("no bottom wedge for D = {d}")));
        }
        Rational::new(2 * n - 1, 2 * p)
    };
    let center = match side {
        Side::Right => -half + offset,
        Side::Left => -half - offset,
        Side::Bottom if index == 0 && p % 2 == 0 => -half,
        Side::Bottom => return Err(Error::InvalidParameter("bottom wedge has index 0".into())),
    };
    if index == 0 && side != Side::Bottom {
        return Err(Error::InvalidParameter("left/right wedges are indexed from 1".into()));
    }
    Ok(Wedge { side, index, center, half_width: Rational::new(1, 2 * p), sign: sign_at(p, center) })
}

/// The first `count` right wedges followed by the first `count` left wedges
/// of the requested sign, in increasing index order.
pub fn asymptotic_wedges(d: i64, sign: AnsatzSign, count: usize) -> Result<Vec<Wedge>> {
    decay_power(d)?;
    let mut out = Vec::with_capacity(2 * count);
    for side in [Side::Right, Side::Left] {
        let mut n = 1;
        let mut found = 0;
        while found < count {
            let w = wedge(d, side, n)?;
            if w.sign == sign {
                out.push(w);
                found += 1;
            }
            n += 1;
        }
    }
    Ok(out)
}

/// The wedge (of either sign) strictly containing the unwrapped x-angle, or
/// `None` on a Stokes boundary `cos(pφ) = 0`.
pub fn classify_direction<F: Real>(angle: F, d: i64) -> Result<Option<Wedge>> {
    let p = decay_power(d)?;
    let u = angle.to_f64().unwrap_or(f64::NAN) / std::f64::consts::PI + 0.5;
    if !u.is_finite() {
        return Ok(None);
    }
    let mut v = u * p as f64;
    if p % 2 != 0 {
        v += 0.5;
    }
    let k = v.round();
    if (v - k).abs() >= 0.5 - 1e-9 {
        return Ok(None);
    }
    let k = k as i64;
    let (side, index) = if p % 2 == 0 {
        match k {
            0 => (Side::Bottom, 0),
            k if k > 0 => (Side::Right, k),
            k => (Side::Left, -k),
        }
    } else if k >= 1 {
        (Side::Right, k)
    } else {
        (Side::Left, 1 - k)
    };
    let index = u32::try_from(index).map_err(|_| Error::InvalidParameter("angle too large".into()))?;
    wedge(d, side, index).map(Some)
}

/// Normalised distance from a Stokes boundary for `V ≈ c·x^D` in direction
/// `x_angle`: `|Re(√c e^{ipφ})| / |√c|`, with `p = D/2 + 1`. Zero means both
/// WKB branches oscillate and no decaying solution is singled out.
pub fn decay_margin(x_angle: f64, exponent: Rational, coefficient: Complex64) -> f64 {
    if coefficient.is_zero() {
        return 0.0;
    }
    let p = rational::to_f64(exponent) / 2.0 + 1.0;
    let phase = p * x_angle + coefficient.arg() / 2.0;
    phase.cos().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn decadic_minus_wedges_match_printed_intervals() {
        let ws = asymptotic_wedges(10, AnsatzSign::Minus, 3).unwrap();
        let first = ws[0];
        assert_eq!((first.side, first.index), (Side::Right, 1));
        assert_eq!(first.lower(), r(-1, 2) + r(1, 12));
        assert_eq!(first.upper(), r(-1, 2) + r(3, 12));
        let third = ws[1];
        assert_eq!((third.side, third.index), (Side::Right, 3));
        assert_eq!(third.lower(), r(-1, 2) + r(5, 12));
        assert_eq!(third.upper(), r(-1, 2) + r(7, 12));
        assert!(third.contains(0.0));
        assert_eq!(ws[2].index, 5);
        assert!(ws[3..].iter().all(|w| w.side == Side::Left));
    }

    #[test]
    fn harmonic_first_right_wedge() {
        let w = asymptotic_wedges(2, AnsatzSign::Minus, 1).unwrap()[0];
        assert_eq!((w.lower(), w.upper()), (r(-1, 4), r(1, 4)));
        assert_eq!(w.center, r(0, 1));
    }

    #[test]
    fn parity_rule_for_decadic_and_harmonic() {
        for d in [2, 10] {
            for n in 1..8 {
                let w = wedge(d, Side::Right, n).unwrap();
                let expect = if n % 2 == 1 { AnsatzSign::Minus } else { AnsatzSign::Plus };
                assert_eq!(w.sign, expect, "D={d} n={n}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        let w = classify_direction(0.0, 10).unwrap().unwrap();
        assert_eq!((w.side, w.index, w.sign), (Side::Right, 3, AnsatzSign::Minus));
        let w = classify_direction(-2.0 * PI, 2).unwrap().unwrap();
        assert_eq!((w.side, w.index, w.sign), (Side::Left, 3, AnsatzSign::Minus));
        assert!((2.0f64 * (-2.0 * PI)).cos() > 0.0);
        assert_eq!(classify_direction(PI / 4.0, 2).unwrap(), None);
        let w = classify_direction(-PI / 2.0, 2).unwrap().unwrap();
        assert_eq!((w.side, w.index, w.sign), (Side::Bottom, 0, AnsatzSign::Plus));
        assert!(classify_direction(0.0, 3).is_err());
        assert!(classify_direction(0.0, 0).is_err());
    }

    #[test]
    fn odd_p_wedges() {
        // D = 4: p = 3, the downward direction is a Stokes line.
        assert_eq!(classify_direction(-PI / 2.0, 4).unwrap(), None);
        let w = wedge(4, Side::Right, 1).unwrap();
        assert_eq!(w.center, r(-1, 3));
        assert_eq!(classify_direction(w.center_angle(), 4).unwrap(), Some(w));
        let l = wedge(4, Side::Left, 1).unwrap();
        assert_eq!(l, w.mirror());
        assert_ne!(l.sign, w.sign);
    }

    #[test]
    fn display_uses_pi_multiples() {
        let w = asymptotic_wedges(10, AnsatzSign::Minus, 1).unwrap()[0];
        assert_eq!(w.to_string(), "first right (-5π/12, -π/4) minus");
    }

    #[test]
    fn decay_margin_agrees_with_cosine() {
        for &phi in &[0.0, 0.3, -1.2, 2.9] {
            let m = decay_margin(phi, r(2, 1), Complex64::new(1.0, 0.0));
            assert!((m - (2.0 * phi).cos().abs()).abs() < 1e-14);
        }
        assert!(decay_margin(PI / 4.0, r(2, 1), Complex64::new(1.0, 0.0)) < 1e-12);
    }

    proptest! {
        #[test]
        fn tiling(angle in -20.0f64..20.0, half_d in 1i64..7) {
            let d = 2 * half_d;
            let p = (d / 2 + 1) as f64;
            prop_assume!((p * angle).cos().abs() > 1e-6);
            let hit = classify_direction(angle, d).unwrap();
            let w = hit.expect("non-boundary angle must be classified");
            prop_assert!(w.contains(angle));
            let expect = if (p * angle).cos() > 0.0 { AnsatzSign::Minus } else { AnsatzSign::Plus };
            prop_assert_eq!(w.sign, expect);
            // exactly one wedge among neighbours contains the angle
            let mut count = 0;
            for side in [Side::Left, Side::Right] {
                for n in 1..200u32 {
                    if let Ok(other) = wedge(d, side, n) {
                        if other.contains(angle) { count += 1; }
                    }
                }
            }
            if let Ok(b) = wedge(d, Side::Bottom, 0) {
                if b.contains(angle) { count += 1; }
            }
            prop_assert_eq!(count, 1);
        }

        #[test]
        fn pt_mirror(n in 1u32..30, half_d in 1i64..7) {
            let d = 2 * half_d;
            let right = wedge(d, Side::Right, n).unwrap();
            let left = wedge(d, Side::Left, n).unwrap();
            prop_assert_eq!(right.mirror(), left);
            prop_assert_eq!(left.mirror(), right);
            // (-1)^p: same sign for even p, opposite for odd
            let p = d / 2 + 1;
            prop_assert_eq!(right.sign == left.sign, p % 2 == 0);
        }
    }
}
