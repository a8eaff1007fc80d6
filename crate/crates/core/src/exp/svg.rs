//! Minimal static SVG charts. Output depends only on the data passed in.

use std::fmt::Write;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 260.0;
const MARGIN_L: f64 = 56.0;
const MARGIN_R: f64 = 12.0;
const MARGIN_T: f64 = 28.0;
const MARGIN_B: f64 = 40.0;
const LEGEND_W: f64 = 120.0;

const PALETTE: [&str; 8] = [
    "#222222", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
];

pub fn color(i: usize) -> &'static str {
    PALETTE[i % PALETTE.len()]
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinePanel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// One group of bars; each bar has a value and an optional `(lo, hi)` whisker.
#[derive(Clone, Debug, PartialEq)]
pub struct BarGroup {
    pub label: String,
    pub bars: Vec<(f64, Option<(f64, f64)>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BarPanel {
    pub title: String,
    pub y_label: String,
    pub bar_names: Vec<String>,
    pub groups: Vec<BarGroup>,
}

fn num(x: f64) -> String {
    let s = format!("{x:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn tick_label(x: f64) -> String {
    if x != 0.0 && (x.abs() >= 1e4 || x.abs() < 1e-2) {
        format!("{x:.1e}")
    } else {
        let s = format!("{x:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 0.5, hi + 0.5);
    }
    (lo, hi)
}

struct Frame {
    x0: f64,
    w: f64,
    xr: (f64, f64),
    yr: (f64, f64),
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.x0
            + MARGIN_L
            + (x - self.xr.0) / (self.xr.1 - self.xr.0) * (self.w - MARGIN_L - MARGIN_R)
    }
    fn py(&self, y: f64) -> f64 {
        PANEL_H
            - MARGIN_B
            - (y - self.yr.0) / (self.yr.1 - self.yr.0) * (PANEL_H - MARGIN_T - MARGIN_B)
    }

    fn axes(&self, out: &mut String, title: &str, x_label: &str, y_label: &str, x_ticks: bool) {
        let (l, r) = (self.x0 + MARGIN_L, self.x0 + self.w - MARGIN_R);
        let (t, b) = (MARGIN_T, PANEL_H - MARGIN_B);
        let _ = writeln!(
            out,
            r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#888"/>"##,
            num(l),
            num(t),
            num(r - l),
            num(b - t)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="13">{}</text>"#,
            num((l + r) / 2.0),
            num(18.0),
            escape(title)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
            num((l + r) / 2.0),
            num(PANEL_H - 6.0),
            escape(x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="11" transform="rotate(-90 {} {})">{}</text>"#,
            num(self.x0 + 12.0),
            num((t + b) / 2.0),
            num(self.x0 + 12.0),
            num((t + b) / 2.0),
            escape(y_label)
        );
        for i in 0..=4 {
            let y = self.yr.0 + (self.yr.1 - self.yr.0) * i as f64 / 4.0;
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{}" text-anchor="end" font-size="10">{}</text>"#,
                num(l - 4.0),
                num(self.py(y) + 3.0),
                tick_label(y)
            );
            if x_ticks {
                let x = self.xr.0 + (self.xr.1 - self.xr.0) * i as f64 / 4.0;
                let _ = writeln!(
                    out,
                    r#"<text x="{}" y="{}" text-anchor="middle" font-size="10">{}</text>"#,
                    num(self.px(x)),
                    num(b + 13.0),
                    tick_label(x)
                );
            }
        }
    }
}

fn legend(out: &mut String, x: f64, names: &[String]) {
    for (i, name) in names.iter().enumerate() {
        let y = MARGIN_T + 8.0 + 16.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}" font-size="11">{}</text>"#,
            num(x),
            num(y - 9.0),
            color(i),
            num(x + 14.0),
            num(y),
            escape(name)
        );
    }
}

fn document(width: f64, height: f64, body: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\" font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
        num(width),
        num(height),
        num(width),
        num(height),
        body
    )
}

/// Panels side by side; a series keeps its color across panels by name.
pub fn line_chart(panels: &[LinePanel]) -> String {
    let mut names: Vec<String> = Vec::new();
    for s in panels.iter().flat_map(|p| &p.series) {
        if !names.contains(&s.name) {
            names.push(s.name.clone());
        }
    }
    let mut body = String::new();
    for (k, p) in panels.iter().enumerate() {
        let pts = || p.series.iter().flat_map(|s| s.points.iter());
        let frame = Frame {
            x0: k as f64 * PANEL_W,
            w: PANEL_W,
            xr: bounds(pts().map(|q| q.0)),
            yr: bounds(pts().map(|q| q.1)),
        };
        frame.axes(&mut body, &p.title, &p.x_label, &p.y_label, true);
        for s in &p.series {
            let c = color(names.iter().position(|n| n == &s.name).unwrap());
            let path: Vec<String> = s
                .points
                .iter()
                .filter(|q| q.0.is_finite() && q.1.is_finite())
                .map(|&(x, y)| format!("{},{}", num(frame.px(x)), num(frame.py(y))))
                .collect();
            let _ = writeln!(
                body,
                r#"<polyline fill="none" stroke="{c}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
    }
    legend(&mut body, panels.len() as f64 * PANEL_W + 4.0, &names);
    document(panels.len() as f64 * PANEL_W + LEGEND_W, PANEL_H, &body)
}

pub fn bar_chart(panel: &BarPanel) -> String {
    let mut values = Vec::new();
    for g in &panel.groups {
        for &(v, w) in &g.bars {
            values.push(v);
            if let Some((lo, hi)) = w {
                values.push(lo);
                values.push(hi);
            }
        }
    }
    values.push(0.0);
    let n_groups = panel.groups.len().max(1);
    let width = PANEL_W
        .max(MARGIN_L + MARGIN_R + 40.0 * (panel.bar_names.len() as f64 + 1.0) * n_groups as f64);
    let frame = Frame {
        x0: 0.0,
        w: width,
        xr: (0.0, n_groups as f64),
        yr: bounds(values.into_iter()),
    };
    let mut body = String::new();
    frame.axes(&mut body, &panel.title, "", &panel.y_label, false);
    let n_bars = panel.bar_names.len().max(1) as f64;
    for (gi, g) in panel.groups.iter().enumerate() {
        let slot = 1.0 / (n_bars + 1.0);
        for (bi, &(v, w)) in g.bars.iter().enumerate() {
            let x_l = frame.px(gi as f64 + slot * (bi as f64 + 0.5));
            let x_r = frame.px(gi as f64 + slot * (bi as f64 + 1.5));
            let (y_top, y_bot) = (frame.py(v.max(0.0)), frame.py(v.min(0.0)));
            let _ = writeln!(
                body,
                r#"<rect x="{}" y="{}" width="{}" height="{}" fill="{}"/>"#,
                num(x_l),
                num(y_top),
                num(x_r - x_l),
                num(y_bot - y_top),
                color(bi)
            );
            if let Some((lo, hi)) = w {
                let xm = (x_l + x_r) / 2.0;
                let _ = writeln!(
                    body,
                    r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#000"/>"##,
                    num(xm),
                    num(frame.py(lo)),
                    num(xm),
                    num(frame.py(hi))
                );
            }
        }
        let _ = writeln!(
            body,
            r#"<text x="{}" y="{}" text-anchor="middle" font-size="11">{}</text>"#,
            num(frame.px(gi as f64 + 0.5)),
            num(PANEL_H - MARGIN_B + 14.0),
            escape(&g.label)
        );
    }
    legend(&mut body, width + 4.0, &panel.bar_names);
    document(width + LEGEND_W, PANEL_H, &body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn panel() -> LinePanel {
        LinePanel {
            title: "a < b".into(),
            x_label: "x".into(),
            y_label: "y".into(),
            series: vec![
                Series {
                    name: "one".into(),
                    points: vec![(0.0, 1.0), (1.0, 0.5), (2.0, 0.25)],
                },
                Series {
                    name: "two".into(),
                    points: vec![(0.0, 1.0), (2.0, f64::NAN)],
                },
            ],
        }
    }

    #[test]
    fn line_chart_is_deterministic_and_escaped() {
        let a = line_chart(&[panel(), panel()]);
        assert_eq!(a, line_chart(&[panel(), panel()]));
        assert!(a.starts_with("<svg"));
        assert!(a.contains("a &lt; b"));
        assert_eq!(a.matches("<polyline").count(), 4);
        assert!(!a.contains("NaN"));
    }

    #[test]
    fn bar_chart_draws_every_bar() {
        let p = BarPanel {
            title: "t".into(),
            y_label: "v".into(),
            bar_names: vec!["a".into(), "b".into()],
            groups: vec![
                BarGroup {
                    label: "g1".into(),
                    bars: vec![(1.0, Some((0.8, 1.2))), (-0.5, None)],
                },
                BarGroup {
                    label: "g2".into(),
                    bars: vec![(2.0, None), (0.0, Some((0.0, 0.1)))],
                },
            ],
        };
        let s = bar_chart(&p);
        assert_eq!(s.matches("<line").count(), 2);
        // background, frame, four bars, two legend swatches
        assert_eq!(s.matches("<rect").count(), 8);
        assert_eq!(s, bar_chart(&p));
    }
}
