//! SVG scatter plot of a two-dimensional ideal and its standard pairs.

use std::fmt::Write;

use stdpairs::{MonomialIdeal, StandardPairSet};

use crate::failure::Failure;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;
const RADIUS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ideal,
    Standard,
    Hole,
}

fn classify(ideal: &MonomialIdeal, p: &[i64]) -> anyhow::Result<Option<Kind>> {
    let config = ideal.configuration();
    if config.is_member(p)?.is_some() {
        let kind = if ideal.contains(p)? {
            Kind::Ideal
        } else {
            Kind::Standard
        };
        return Ok(Some(kind));
    }
    if config.in_cone(p)? && config.lattice_change().to_lattice(p)?.is_some() {
        return Ok(Some(Kind::Hole));
    }
    Ok(None)
}

fn reduce(v: [i64; 2]) -> [i64; 2] {
    let g = gcd(v[0].abs(), v[1].abs()).max(1);
    [v[0] / g, v[1] / g]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest `t` with `root + t * dir` inside `[0, w] x [0, h]`.
fn reach(root: [i64; 2], dir: [i64; 2], w: i64, h: i64) -> f64 {
    let mut t = f64::INFINITY;
    for (r, d, top) in [(root[0], dir[0], w), (root[1], dir[1], h)] {
        if d > 0 {
            t = t.min((top - r) as f64 / d as f64);
        } else if d < 0 {
            t = t.min(r as f64 / -d as f64);
        }
    }
    t.max(0.0)
}

pub fn svg(ideal: &MonomialIdeal, std: &StandardPairSet) -> anyhow::Result<String> {
    let config = ideal.configuration();
    if config.dimension() != 2 {
        return Err(Failure::UnsupportedDimension(config.dimension()).into());
    }
    let mut extent = [4i64, 4];
    let points = ideal
        .degrees()
        .into_iter()
        .chain(std.pairs.iter().map(|p| p.root.clone()))
        .chain(config.matrix().columns());
    for p in points {
        extent[0] = extent[0].max(p[0]);
        extent[1] = extent[1].max(p[1]);
    }
    let (w, h) = (extent[0] + 2, extent[1] + 2);
    let px = |x: f64| MARGIN + x * SCALE;
    let py = |y: f64| MARGIN + (h as f64 - y) * SCALE;
    let width = 2.0 * MARGIN + w as f64 * SCALE;
    let height = 2.0 * MARGIN + h as f64 * SCALE;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    )?;
    writeln!(
        out,
        r##"<rect width="100%" height="100%" fill="#ffffff"/>"##
    )?;
    for x in 0..=w {
        let x = px(x as f64);
        writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            py(0.0),
            py(h as f64)
        )?;
    }
    for y in 0..=h {
        let y = py(y as f64);
        writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd" stroke-width="1"/>"##,
            px(0.0),
            px(w as f64)
        )?;
    }

    for pair in &std.pairs {
        let root = [pair.root[0], pair.root[1]];
        let columns = config.face_columns(pair.face);
        if columns.is_empty() {
            writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" fill="none" stroke="#2e8b57" stroke-width="3"/>"##,
                px(root[0] as f64),
                py(root[1] as f64),
                2.0 * RADIUS
            )?;
            continue;
        }
        let mut dirs: Vec<[i64; 2]> = columns.iter().map(|c| reduce([c[0], c[1]])).collect();
        dirs.sort();
        dirs.dedup();
        for dir in dirs {
            let t = reach(root, dir, w, h);
            writeln!(
                out,
                r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c0392b" stroke-width="4"/>"##,
                px(root[0] as f64),
                py(root[1] as f64),
                px(root[0] as f64 + t * dir[0] as f64),
                py(root[1] as f64 + t * dir[1] as f64)
            )?;
        }
    }

    for y in 0..=h {
        for x in 0..=w {
            let Some(kind) = classify(ideal, &[x, y])? else {
                continue;
            };
            let (fill, stroke) = match kind {
                Kind::Ideal => ("#3b5998", "#000000"),
                Kind::Standard => ("#f5deb3", "#000000"),
                Kind::Hole => ("#ffffff", "#000000"),
            };
            writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{RADIUS:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1" class="{}"/>"#,
                px(x as f64),
                py(y as f64),
                match kind {
                    Kind::Ideal => "ideal",
                    Kind::Standard => "standard",
                    Kind::Hole => "hole",
                }
            )?;
        }
    }
    writeln!(out, "</svg>")?;
    Ok(out)
}
