//! Static SVG line plots.

use std::fmt::Write;

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 320.0;
const PAD: f64 = 40.0;

/// A single polyline through `(x, y)` with axis ranges in the corners.
/// Non-finite samples are skipped.
pub fn line_plot(title: &str, x: &[f64], y: &[f64]) -> String {
    let pts: Vec<(f64, f64)> = x
        .iter()
        .zip(y)
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .map(|(a, b)| (*a, *b))
        .collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(a, b) in &pts {
        x0 = x0.min(a);
        x1 = x1.max(a);
        y0 = y0.min(b);
        y1 = y1.max(b);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 <= 0.0 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 <= 0.0 {
        y1 = y0 + 1.0;
    }
    let sx = |a: f64| PAD + (a - x0) / (x1 - x0) * (WIDTH - 2.0 * PAD);
    let sy = |b: f64| HEIGHT - PAD - (b - y0) / (y1 - y0) * (HEIGHT - 2.0 * PAD);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{PAD}" y="{PAD}" width="{}" height="{}" fill="none" stroke="gray"/>"#,
        WIDTH - 2.0 * PAD,
        HEIGHT - 2.0 * PAD
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, v: f64| {
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{v:.4}</text>"#
        );
    };
    label(&mut s, PAD, HEIGHT - PAD + 14.0, "start", x0);
    label(&mut s, WIDTH - PAD, HEIGHT - PAD + 14.0, "end", x1);
    label(&mut s, PAD - 4.0, HEIGHT - PAD, "end", y0);
    label(&mut s, PAD - 4.0, PAD + 8.0, "end", y1);
    let mut path = String::new();
    for (i, &(a, b)) in pts.iter().enumerate() {
        let _ = write!(path, "{}{:.2},{:.2}", if i == 0 { "" } else { " " }, sx(a), sy(b));
    }
    let _ = writeln!(s, r#"<polyline points="{path}" fill="none" stroke="steelblue" stroke-width="1.5"/>"#);
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_every_finite_point() {
        let svg = line_plot("F <t>", &[0.0, 1.0, 2.0, 3.0], &[1.0, f64::NAN, 0.5, 2.0]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("F &lt;t&gt;"));
        let points = svg.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
        assert_eq!(points.split(' ').count(), 3);
    }

    #[test]
    fn flat_data_does_not_divide_by_zero() {
        let svg = line_plot("flat", &[1.0, 1.0], &[2.0, 2.0]);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }
}
