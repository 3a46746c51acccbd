//! Static SVG charts of the charges of semistable catalogue objects.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::coxeter::CoxeterGraph;
use crate::error::Result;
use crate::stability::{is_semistable, Catalogue, StabilityData};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 150.0;

/// One labelled ray of the chart.
#[derive(Clone, Debug, PartialEq)]
pub struct Ray {
    pub label: String,
    pub charge: Complex64,
}

fn object_label(sd: &StabilityData, entry_label: &str) -> String {
    if sd.heart.word.is_empty() {
        format!("Z({entry_label})")
    } else {
        format!("Z({}({entry_label}))", sd.heart.word)
    }
}

/// Charges of the semistable catalogue objects, sorted by label.
pub fn chart_rays(g: &CoxeterGraph, sd: &StabilityData, cat: &Catalogue) -> Result<Vec<Ray>> {
    let mut rays = Vec::new();
    for e in &cat.entries {
        if is_semistable(g, sd, &e.object, cat)?.semistable {
            rays.push(Ray {
                label: object_label(sd, &e.label),
                charge: sd.z.eval_complex(g, &e.object),
            });
        }
    }
    rays.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(rays)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('\'', "&apos;")
}

pub fn render_svg(rays: &[Ray]) -> String {
    let c = SIZE / 2.0;
    let scale = rays
        .iter()
        .map(|r| r.charge.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"  <rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"  <line x1="10" y1="{c}" x2="390" y2="{c}" stroke="#999" stroke-width="1"/>"##
    );
    let _ = writeln!(
        s,
        r##"  <line x1="{c}" y1="10" x2="{c}" y2="390" stroke="#999" stroke-width="1"/>"##
    );
    for r in rays {
        let v = r.charge / scale * RADIUS;
        let (x, y) = (c + v.re, c - v.im);
        let (lx, ly) = (c + v.re * 1.12, c - v.im * 1.12);
        let _ = writeln!(
            s,
            r#"  <line x1="{c}" y1="{c}" x2="{x:.3}" y2="{y:.3}" stroke="black" stroke-width="2"/>"#
        );
        let _ = writeln!(s, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="black"/>"#);
        let _ = writeln!(
            s,
            r#"  <text x="{lx:.3}" y="{ly:.3}" font-family="monospace" font-size="12" text-anchor="middle">{}</text>"#,
            escape(&r.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Write the chart to `out` and return the document.
pub fn emit_chart(
    g: &CoxeterGraph,
    sd: &StabilityData,
    cat: &Catalogue,
    out: &Path,
) -> Result<String> {
    let svg = render_svg(&chart_rays(g, sd, cat)?);
    std::fs::write(out, &svg)?;
    Ok(svg)
}
