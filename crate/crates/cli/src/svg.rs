//! Minimal self-contained SVG line plots.

use std::fmt::Write;

use estgame_core::ExtendedValue;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const MARGIN: f64 = 56.0;

/// Plots `points` as a polyline, breaking it wherever the value is infinite,
/// and circles `marker` when given.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, points: &[(f64, ExtendedValue)], marker: Option<(f64, f64)>) -> String {
    let finite: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|&(x, y)| y.finite().map(|y| (x, y)))
        .collect();
    let (x_min, x_max) = range(finite.iter().map(|p| p.0));
    let (y_min, y_max) = range(finite.iter().map(|p| p.1).chain(marker.map(|m| m.1)));
    let pad = 0.05 * (y_max - y_min);
    let (y_min, y_max) = (y_min - pad, y_max + pad);
    let sx = |x: f64| MARGIN + (x - x_min) / (x_max - x_min) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="15" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        out,
        r#"<path d="M{left},{top} L{left},{bottom} L{right},{bottom}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let fx = x_min + (x_max - x_min) * i as f64 / 4.0;
        let fy = y_min + (y_max - y_min) * i as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{:.2}</text>"#,
            sx(fx),
            bottom + 16.0,
            fx
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{:.3}</text>"#,
            left - 6.0,
            sy(fy) + 4.0,
            fy
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 14.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{}" font-family="sans-serif" font-size="13" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    );

    let mut segment = String::new();
    let flush = |segment: &mut String, out: &mut String| {
        if !segment.is_empty() {
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="2"/>"#,
                segment.trim_end()
            );
            segment.clear();
        }
    };
    for &(x, y) in points {
        match y.finite() {
            Some(y) => {
                let _ = write!(segment, "{:.2},{:.2} ", sx(x), sy(y));
            }
            None => flush(&mut segment, &mut out),
        }
    }
    flush(&mut segment, &mut out);

    if let Some((mx, my)) = marker {
        let _ = writeln!(
            out,
            r#"<circle cx="{:.2}" cy="{:.2}" r="5" fill="crimson"><title>equilibrium p1={mx}</title></circle>"#,
            sx(mx),
            sy(my)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
