//! Deterministic SVG rendering of corner-locus strata. Coordinates are the
//! tangible plane with the y axis pointing up, scaled by 100 SVG units per
//! tangible unit; endpoints are printed with two fixed decimals. All
//! geometry stays exact until the final formatting step.

use crate::scalar::Rational;
use crate::strata::{Stratum2D, StratumGeometry, Window};
use num_bigint::BigInt;
use num_traits::Signed;
use std::fmt::Write;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SvgError {
    #[error("EmptyWindow")]
    EmptyWindow,
}

/// Stroke style per source polynomial, cycling solid, dashed, dotted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineStyle {
    Solid,
    Dashed,
    Dotted,
}

impl LineStyle {
    pub fn for_index(i: usize) -> Self {
        match i % 3 {
            0 => LineStyle::Solid,
            1 => LineStyle::Dashed,
            _ => LineStyle::Dotted,
        }
    }

    fn dasharray(&self) -> Option<&'static str> {
        match self {
            LineStyle::Solid => None,
            LineStyle::Dashed => Some("24,12"),
            LineStyle::Dotted => Some("4,10"),
        }
    }
}

/// `q * 100`, fixed to two decimals.
fn scaled(q: &Rational) -> String {
    let scaled = q * Rational::from_integer(100.into());
    // round half away from zero at two decimals
    let numer = scaled.numer() * BigInt::from(100) * BigInt::from(2)
        + scaled.denom() * BigInt::from(scaled.numer().signum());
    let cents = numer / (scaled.denom() * BigInt::from(2));
    let sign = if cents.is_negative() { "-" } else { "" };
    let abs = cents.abs();
    let whole = &abs / BigInt::from(100);
    let frac = &abs % BigInt::from(100);
    format!("{}{}.{:02}", sign, whole, frac)
}

fn svg_x(q: &Rational) -> String {
    scaled(q)
}

fn svg_y(q: &Rational) -> String {
    scaled(&-q)
}

/// Renders groups of strata, one style per group, clipped to the window.
pub fn emit_svg(groups: &[(Vec<Stratum2D>, LineStyle)], window: &Window) -> Result<String, SvgError> {
    if window.is_empty() {
        return Err(SvgError::EmptyWindow);
    }
    let width = (&window.x_max - &window.x_min) * Rational::from_integer(100.into());
    let height = (&window.y_max - &window.y_min) * Rational::from_integer(100.into());
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        svg_x(&window.x_min),
        svg_y(&window.y_max),
        scaled(&(&window.x_max - &window.x_min)),
        scaled(&(&window.y_max - &window.y_min)),
    )
    .unwrap();
    let _ = (width, height);
    writeln!(
        out,
        "  <rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"white\" stroke=\"#cccccc\" stroke-width=\"1\"/>",
        svg_x(&window.x_min),
        svg_y(&window.y_max),
        scaled(&(&window.x_max - &window.x_min)),
        scaled(&(&window.y_max - &window.y_min)),
    )
    .unwrap();
    for (strata, style) in groups {
        for stratum in strata {
            match &stratum.geometry {
                StratumGeometry::Vertex { point } => {
                    writeln!(
                        out,
                        "  <circle cx=\"{}\" cy=\"{}\" r=\"6\" fill=\"black\"/>",
                        svg_x(&point.0),
                        svg_y(&point.1)
                    )
                    .unwrap();
                }
                StratumGeometry::Edge { line, start, end } => {
                    let (t_lo, t_hi) = match line.clip(window) {
                        Some(interval) => interval,
                        None => continue,
                    };
                    let p_start = match start {
                        Some(p) => p.clone(),
                        None => line.at_param(&t_lo),
                    };
                    let p_end = match end {
                        Some(p) => p.clone(),
                        None => line.at_param(&t_hi),
                    };
                    let dash = match style.dasharray() {
                        Some(d) => format!(" stroke-dasharray=\"{}\"", d),
                        None => String::new(),
                    };
                    writeln!(
                        out,
                        "  <path d=\"M {} {} L {} {}\" stroke=\"black\" stroke-width=\"3\" fill=\"none\"{}/>",
                        svg_x(&p_start.0),
                        svg_y(&p_start.1),
                        svg_x(&p_end.0),
                        svg_y(&p_end.1),
                        dash
                    )
                    .unwrap();
                }
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{EltPoly, MultiIndex};
    use crate::scalar::{rat, rat_int, EltScalar};
    use crate::strata::corner_locus_strata;

    #[test]
    fn scaled_formatting() {
        assert_eq!(scaled(&rat_int(1)), "100.00");
        assert_eq!(scaled(&rat(1, 3)), "33.33");
        assert_eq!(scaled(&rat(-1, 3)), "-33.33");
        assert_eq!(scaled(&rat(1, 200)), "0.50");
        assert_eq!(scaled(&rat_int(0)), "0.00");
    }

    #[test]
    fn diagonal_renders_one_path() {
        let f = EltPoly::from_terms(
            2,
            vec![
                (MultiIndex(vec![1, 0]), EltScalar::one()),
                (MultiIndex(vec![0, 1]), EltScalar::one()),
            ],
        )
        .unwrap();
        let strata = corner_locus_strata(&f, &Window::square(3)).unwrap();
        let svg = emit_svg(&[(strata, LineStyle::Solid)], &Window::square(3)).unwrap();
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("M -300.00 300.00 L 300.00 -300.00"));
        // determinism
        let strata2 = corner_locus_strata(&f, &Window::square(3)).unwrap();
        let svg2 = emit_svg(&[(strata2, LineStyle::Solid)], &Window::square(3)).unwrap();
        assert_eq!(svg, svg2);
    }

    #[test]
    fn empty_window_rejected() {
        let w = Window::new(rat_int(1), rat_int(1), rat_int(0), rat_int(2));
        assert_eq!(emit_svg(&[], &w), Err(SvgError::EmptyWindow));
    }

    #[test]
    fn no_strata_still_renders_frame() {
        let svg = emit_svg(&[], &Window::square(2)).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("<rect"));
        assert!(!svg.contains("<path"));
    }
}
