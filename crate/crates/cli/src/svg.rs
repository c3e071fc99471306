//! Static line plots rendered from CSV text. The output depends only on the
//! CSV contents and the plot options, so re-rendering is byte-identical.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 56.0;
const COLORS: [&str; 4] = ["#1f4e79", "#b03a2e", "#1e8449", "#7d3c98"];

#[derive(Debug, Clone)]
pub struct Plot<'a> {
    pub title: &'a str,
    pub x: &'a str,
    pub ys: &'a [&'a str],
    pub log_y: bool,
}

fn column(headers: &csv::StringRecord, name: &str) -> Result<usize, String> {
    headers
        .iter()
        .position(|h| h.trim() == name)
        .ok_or_else(|| format!("column {name:?} not in CSV header"))
}

/// Render the selected columns as polylines. Non-finite points (and
/// non-positive ones on a log axis) are skipped.
pub fn plot_csv(csv_text: &str, plot: &Plot) -> Result<String, String> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rdr.headers().map_err(|e| e.to_string())?.clone();
    let xi = column(&headers, plot.x)?;
    let yis: Vec<usize> = plot
        .ys
        .iter()
        .map(|y| column(&headers, y))
        .collect::<Result<_, _>>()?;
    let mut series: Vec<Vec<(f64, f64)>> = vec![Vec::new(); yis.len()];
    for rec in rdr.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        let get = |i: usize| rec.get(i).and_then(|s| s.trim().parse::<f64>().ok());
        let Some(x) = get(xi) else { continue };
        for (s, &yi) in series.iter_mut().zip(&yis) {
            if let Some(y) = get(yi) {
                let y = if plot.log_y {
                    if y > 0.0 {
                        y.log10()
                    } else {
                        f64::NAN
                    }
                } else {
                    y
                };
                if x.is_finite() && y.is_finite() {
                    s.push((x, y));
                }
            }
        }
    }
    let all = series.iter().flatten();
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 == x0 {
        x1 = x0 + 1.0;
    }
    if y1 == y0 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        w,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(
        w,
        r#"<text x="{}" y="20" text-anchor="middle" font-size="13">{}</text>"#,
        WIDTH / 2.0,
        escape(plot.title)
    );
    let _ = writeln!(
        w,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    );
    let ylab = |v: f64| {
        if plot.log_y {
            format!("1e{v:.2}")
        } else {
            format!("{v:.4e}")
        }
    };
    let labels = [
        (MARGIN, HEIGHT - MARGIN + 16.0, "start", format!("{x0:.4e}")),
        (
            WIDTH - MARGIN,
            HEIGHT - MARGIN + 16.0,
            "end",
            format!("{x1:.4e}"),
        ),
        (MARGIN - 4.0, HEIGHT - MARGIN, "end", ylab(y0)),
        (MARGIN - 4.0, MARGIN + 4.0, "end", ylab(y1)),
    ];
    for (x, y, anchor, text) in labels {
        let _ = writeln!(
            w,
            r#"<text x="{x:.1}" y="{y:.1}" text-anchor="{anchor}">{text}</text>"#
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 12.0,
        escape(plot.x)
    );
    for (k, (s, name)) in series.iter().zip(plot.ys).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = s
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            w,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.2" points="{}"/>"#,
            pts.join(" ")
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.1}" y="{:.1}" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 4.0 - 90.0,
            MARGIN + 14.0 + 14.0 * k as f64,
            escape(name)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
