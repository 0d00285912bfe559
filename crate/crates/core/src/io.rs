//! Flat-file artifacts: scan CSV, key/value summary, and an SVG figure.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::integrals::BasisName;
use crate::scan::{curvature_analysis, theta_at_peak, CurvatureAnalysis, Proxy, ScanSeries, MIN_CURVATURE_POINTS};

pub const CSV_HEADER: &str =
    "ell_angstrom,e_total_hartree,e_binding_hartree,theta_rad,two_det_weight,s2,fs2,mana,d2e,kappa";

/// Twelve significant digits in scientific notation.
pub fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CsvRow {
    pub ell: f64,
    pub e_total: f64,
    pub e_binding: f64,
    pub theta: f64,
    pub two_det_weight: f64,
    pub s2: f64,
    pub fs2: f64,
    pub mana: f64,
    pub d2e: f64,
    pub kappa: f64,
}

impl CsvRow {
    fn fields(&self) -> [f64; 10] {
        [
            self.ell,
            self.e_total,
            self.e_binding,
            self.theta,
            self.two_det_weight,
            self.s2,
            self.fs2,
            self.mana,
            self.d2e,
            self.kappa,
        ]
    }
}

/// Rows of a series; derivative columns are NaN when the series is too short
/// for the five-point stencils.
pub fn csv_rows(series: &ScanSeries) -> Result<Vec<CsvRow>> {
    let analysis = if series.len() >= MIN_CURVATURE_POINTS {
        Some(curvature_analysis(series)?)
    } else {
        None
    };
    Ok(series
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| CsvRow {
            ell: p.ell,
            e_total: p.e_total,
            e_binding: p.e_binding,
            theta: p.theta,
            two_det_weight: p.two_det_weight,
            s2: p.s2,
            fs2: p.fs2,
            mana: p.mana,
            d2e: analysis.as_ref().map_or(f64::NAN, |a| a.d2[i]),
            kappa: analysis.as_ref().map_or(f64::NAN, |a| a.kappa[i]),
        })
        .collect())
}

pub fn csv_string(series: &ScanSeries) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Contract("cannot write an empty scan".into()));
    }
    let mut out = String::with_capacity(200 * series.len());
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in csv_rows(series)? {
        let cells: Vec<String> = row.fields().iter().map(|&x| format_sig12(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn write_csv(series: &ScanSeries, path: &Path) -> Result<()> {
    let text = csv_string(series)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        Some(h) => return Err(Error::Parse(format!("unexpected CSV header {h:?}"))),
        None => return Err(Error::Parse("empty CSV".into())),
    }
    let mut rows = Vec::new();
    for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let cells = line
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("row {}: {c:?}: {e}", n + 1)))
            })
            .collect::<Result<Vec<f64>>>()?;
        let [ell, e_total, e_binding, theta, two_det_weight, s2, fs2, mana, d2e, kappa]: [f64; 10] = cells
            .try_into()
            .map_err(|c: Vec<f64>| Error::Parse(format!("row {} has {} columns, expected 10", n + 1, c.len())))?;
        rows.push(CsvRow {
            ell,
            e_total,
            e_binding,
            theta,
            two_det_weight,
            s2,
            fs2,
            mana,
            d2e,
            kappa,
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<CsvRow>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub basis: BasisName,
    pub ell_min: f64,
    pub ell_max: f64,
    pub step: f64,
    pub n_points: usize,
    pub ell_star: f64,
    pub kappa_at_star: f64,
    pub ell_max_abs_d2e: f64,
    pub ell_kappa_global: f64,
    pub ell_max_abs_d2e_global: f64,
    pub ell_magic_s2: f64,
    pub ell_magic_fs2: f64,
    pub ell_magic_mana: f64,
    pub peak_s2: f64,
    pub peak_fs2: f64,
    pub peak_mana: f64,
    pub theta_at_peak: f64,
}

impl Summary {
    pub fn new(series: &ScanSeries, analysis: Option<&CurvatureAnalysis>) -> Result<Self> {
        let a = analysis.ok_or_else(|| Error::Contract("summary requires a curvature analysis".into()))?;
        if a.n_points != series.len() {
            return Err(Error::Contract(format!(
                "analysis covers {} points but the scan has {}",
                a.n_points,
                series.len()
            )));
        }
        let magic = |p: Proxy| {
            a.magic(p)
                .ok_or_else(|| Error::Contract(format!("analysis lacks the {p} peak")))
        };
        let (s2, fs2, mana) = (magic(Proxy::S2)?, magic(Proxy::Fs2)?, magic(Proxy::Mana)?);
        Ok(Self {
            basis: series.basis,
            ell_min: series.points[0].ell,
            ell_max: series.points[series.len() - 1].ell,
            step: series.step,
            n_points: series.len(),
            ell_star: a.ell_star.ell,
            kappa_at_star: a.ell_star.value,
            ell_max_abs_d2e: a.max_abs_d2.ell,
            ell_kappa_global: a.kappa_global.ell,
            ell_max_abs_d2e_global: a.max_abs_d2_global.ell,
            ell_magic_s2: s2.ell,
            ell_magic_fs2: fs2.ell,
            ell_magic_mana: mana.ell,
            peak_s2: s2.value,
            peak_fs2: fs2.value,
            peak_mana: mana.value,
            theta_at_peak: theta_at_peak(series, a)?,
        })
    }

    fn float_entries(&self) -> [(&'static str, f64); 15] {
        [
            ("ell_min", self.ell_min),
            ("ell_max", self.ell_max),
            ("step", self.step),
            ("ell_star", self.ell_star),
            ("kappa_at_star", self.kappa_at_star),
            ("ell_max_abs_d2e", self.ell_max_abs_d2e),
            ("ell_kappa_global", self.ell_kappa_global),
            ("ell_max_abs_d2e_global", self.ell_max_abs_d2e_global),
            ("ell_magic_s2", self.ell_magic_s2),
            ("ell_magic_fs2", self.ell_magic_fs2),
            ("ell_magic_mana", self.ell_magic_mana),
            ("peak_s2", self.peak_s2),
            ("peak_fs2", self.peak_fs2),
            ("peak_mana", self.peak_mana),
            ("theta_at_peak", self.theta_at_peak),
        ]
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "basis: {}", self.basis).unwrap();
        writeln!(out, "n_points: {}", self.n_points).unwrap();
        for (k, v) in self.float_entries() {
            writeln!(out, "{k}: {v:?}").unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key: value", n + 1)))?;
            map.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| {
            map.get(k)
                .map(String::as_str)
                .ok_or_else(|| Error::Parse(format!("summary is missing {k}")))
        };
        let num = |k: &str| -> Result<f64> {
            let v = get(k)?;
            v.parse().map_err(|e| Error::Parse(format!("{k}: {v:?}: {e}")))
        };
        Ok(Self {
            basis: BasisName::from_str(get("basis")?).map_err(|e| Error::Parse(e.to_string()))?,
            n_points: get("n_points")?
                .parse()
                .map_err(|e| Error::Parse(format!("n_points: {e}")))?,
            ell_min: num("ell_min")?,
            ell_max: num("ell_max")?,
            step: num("step")?,
            ell_star: num("ell_star")?,
            kappa_at_star: num("kappa_at_star")?,
            ell_max_abs_d2e: num("ell_max_abs_d2e")?,
            ell_kappa_global: num("ell_kappa_global")?,
            ell_max_abs_d2e_global: num("ell_max_abs_d2e_global")?,
            ell_magic_s2: num("ell_magic_s2")?,
            ell_magic_fs2: num("ell_magic_fs2")?,
            ell_magic_mana: num("ell_magic_mana")?,
            peak_s2: num("peak_s2")?,
            peak_fs2: num("peak_fs2")?,
            peak_mana: num("peak_mana")?,
            theta_at_peak: num("theta_at_peak")?,
        })
    }
}

pub fn write_summary(summary: &Summary, path: &Path) -> Result<()> {
    fs::write(path, summary.to_text()).map_err(|e| Error::io(path, e))
}

pub fn read_summary(path: &Path) -> Result<Summary> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Summary::parse(&text)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 80.0;
const MARGIN_TOP: f64 = 30.0;
const MARGIN_BOTTOM: f64 = 60.0;

struct Axis {
    lo: f64,
    hi: f64,
    px_lo: f64,
    px_hi: f64,
}

impl Axis {
    fn new(values: impl Iterator<Item = f64>, px_lo: f64, px_hi: f64) -> Self {
        let (mut lo, mut hi) = values
            .filter(|v| v.is_finite())
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !lo.is_finite() {
            (lo, hi) = (0.0, 1.0);
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        }
        Self { lo, hi, px_lo, px_hi }
    }

    fn map(&self, v: f64) -> f64 {
        self.px_lo + (v - self.lo) / (self.hi - self.lo) * (self.px_hi - self.px_lo)
    }
}

fn polyline(out: &mut String, xs: &[f64], ys: &[f64], x: &Axis, y: &Axis, color: &str) {
    let pts: Vec<String> = xs
        .iter()
        .zip(ys)
        .filter(|(_, v)| v.is_finite())
        .map(|(&a, &b)| format!("{:.2},{:.2}", x.map(a), y.map(b)))
        .collect();
    writeln!(
        out,
        r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        pts.join(" ")
    )
    .unwrap();
}

/// Magic proxies on the left axis, binding energy on the right, and a dashed
/// marker at the curvature peak.
pub fn svg_string(series: &ScanSeries, analysis: &CurvatureAnalysis) -> Result<String> {
    if series.is_empty() {
        return Err(Error::Contract("cannot plot an empty scan".into()));
    }
    let xs = series.ells();
    let plot_right = WIDTH - MARGIN_RIGHT;
    let plot_bottom = HEIGHT - MARGIN_BOTTOM;
    let x = Axis::new(xs.iter().copied(), MARGIN_LEFT, plot_right);
    let proxies = [
        (Proxy::S2, "#1f77b4", "S2"),
        (Proxy::Fs2, "#2ca02c", "FS2"),
        (Proxy::Mana, "#ff7f0e", "mana"),
    ];
    let y_magic = Axis::new(
        series
            .points
            .iter()
            .flat_map(|p| proxies.iter().map(move |(q, _, _)| q.value(p)))
            .chain(std::iter::once(0.0)),
        plot_bottom,
        MARGIN_TOP,
    );
    let energies: Vec<f64> = series.points.iter().map(|p| p.e_binding).collect();
    let y_energy = Axis::new(energies.iter().copied(), plot_bottom, MARGIN_TOP);

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        out,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        plot_right - MARGIN_LEFT,
        plot_bottom - MARGIN_TOP
    )
    .unwrap();

    for i in 0..=5 {
        let f = i as f64 / 5.0;
        let lx = x.lo + f * (x.hi - x.lo);
        let px = x.map(lx);
        writeln!(
            out,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{lx:.2}</text>"#,
            plot_bottom + 18.0
        )
        .unwrap();
        let ly = y_magic.lo + f * (y_magic.hi - y_magic.lo);
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{ly:.3}</text>"#,
            MARGIN_LEFT - 6.0,
            y_magic.map(ly) + 4.0
        )
        .unwrap();
        let le = y_energy.lo + f * (y_energy.hi - y_energy.lo);
        writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}">{le:.3}</text>"#,
            plot_right + 6.0,
            y_energy.map(le) + 4.0
        )
        .unwrap();
    }
    writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">bond length (angstrom)</text>"#,
        (MARGIN_LEFT + plot_right) / 2.0,
        HEIGHT - 15.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text transform="translate(18,{0:.2}) rotate(-90)" text-anchor="middle">magic (nats)</text>"#,
        (MARGIN_TOP + plot_bottom) / 2.0
    )
    .unwrap();
    writeln!(
        out,
        r#"<text transform="translate({0:.2},{1:.2}) rotate(90)" text-anchor="middle">binding energy (hartree)</text>"#,
        WIDTH - 12.0,
        (MARGIN_TOP + plot_bottom) / 2.0
    )
    .unwrap();

    for (proxy, color, _) in proxies {
        let ys: Vec<f64> = series.points.iter().map(|p| proxy.value(p)).collect();
        polyline(&mut out, &xs, &ys, &x, &y_magic, color);
    }
    polyline(&mut out, &xs, &energies, &x, &y_energy, "black");

    let star = x.map(analysis.ell_star.ell);
    writeln!(
        out,
        r#"<line x1="{star:.2}" y1="{MARGIN_TOP}" x2="{star:.2}" y2="{plot_bottom}" stroke="gray" stroke-dasharray="6,4"/>"#
    )
    .unwrap();

    let legend = proxies
        .iter()
        .map(|&(_, c, l)| (c, l))
        .chain(std::iter::once(("black", "binding energy")));
    for (i, (color, label)) in legend.enumerate() {
        let ly = MARGIN_TOP + 16.0 + 16.0 * i as f64;
        let lx = plot_right - 150.0;
        writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        )
        .unwrap();
        writeln!(out, r#"<text x="{}" y="{}">{label}</text>"#, lx + 30.0, ly + 4.0).unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_svg(series: &ScanSeries, analysis: &CurvatureAnalysis, path: &Path) -> Result<()> {
    let text = svg_string(series, analysis)?;
    fs::write(path, text).map_err(|e| Error::io(path, e))
}
