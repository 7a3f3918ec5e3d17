//! Minimal CSV-to-PNG series renderer (axes, polylines, per-series colors).

use image::{Rgb, RgbImage};
use std::path::Path;

use crate::error::InlsError;

const COLORS: [[u8; 3]; 6] = [
    [31, 119, 180],
    [255, 127, 14],
    [44, 160, 44],
    [214, 39, 40],
    [148, 103, 189],
    [140, 86, 75],
];

pub struct Series {
    pub label: String,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

/// Parses a CSV with a header row; the first column is the x axis.
pub fn read_csv_series(path: &Path) -> Result<Vec<Series>, InlsError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| InlsError::Format("empty CSV".into()))?;
    let names: Vec<&str> = header.split(',').collect();
    if names.len() < 2 {
        return Err(InlsError::Format("CSV needs at least two columns".into()));
    }
    let mut series: Vec<Series> = names[1..]
        .iter()
        .map(|n| Series {
            label: n.to_string(),
            xs: Vec::new(),
            ys: Vec::new(),
        })
        .collect();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let x: f64 = match cells[0].parse() {
            Ok(v) => v,
            Err(_) => continue,
        };
        for (i, s) in series.iter_mut().enumerate() {
            if let Some(cell) = cells.get(i + 1) {
                if let Ok(y) = cell.parse::<f64>() {
                    s.xs.push(x);
                    s.ys.push(y);
                }
            }
        }
    }
    Ok(series)
}

fn draw_line(img: &mut RgbImage, x0: f64, y0: f64, x1: f64, y1: f64, color: Rgb<u8>) {
    let steps = ((x1 - x0).abs().max((y1 - y0).abs()).ceil() as usize).max(1);
    for k in 0..=steps {
        let t = k as f64 / steps as f64;
        let x = x0 + t * (x1 - x0);
        let y = y0 + t * (y1 - y0);
        if x >= 0.0 && y >= 0.0 && (x as u32) < img.width() && (y as u32) < img.height() {
            img.put_pixel(x as u32, y as u32, color);
        }
    }
}

/// Renders the series into a PNG with a white background and framed axes.
pub fn render_series(series: &[Series], path: &Path) -> Result<(), InlsError> {
    let (w, h) = (800u32, 500u32);
    let margin = 40.0;
    let mut img = RgbImage::from_pixel(w, h, Rgb([255, 255, 255]));
    let frame = Rgb([0, 0, 0]);
    draw_line(&mut img, margin, margin, margin, h as f64 - margin, frame);
    draw_line(
        &mut img,
        margin,
        h as f64 - margin,
        w as f64 - margin,
        h as f64 - margin,
        frame,
    );
    let finite = |v: &f64| v.is_finite();
    let xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.xs.iter().cloned())
        .filter(finite)
        .collect();
    let ys: Vec<f64> = series
        .iter()
        .flat_map(|s| s.ys.iter().cloned())
        .filter(finite)
        .collect();
    if xs.is_empty() || ys.is_empty() {
        return Err(InlsError::Validation("nothing to plot".into()));
    }
    let (x_min, x_max) = bounds(&xs);
    let (y_min, y_max) = bounds(&ys);
    let to_px = |x: f64, y: f64| {
        let px = margin + (x - x_min) / (x_max - x_min) * (w as f64 - 2.0 * margin);
        let py = h as f64 - margin - (y - y_min) / (y_max - y_min) * (h as f64 - 2.0 * margin);
        (px, py)
    };
    for (i, s) in series.iter().enumerate() {
        let color = Rgb(COLORS[i % COLORS.len()]);
        for win in s.xs.iter().zip(&s.ys).collect::<Vec<_>>().windows(2) {
            let (x0, y0) = to_px(*win[0].0, *win[0].1);
            let (x1, y1) = to_px(*win[1].0, *win[1].1);
            draw_line(&mut img, x0, y0, x1, y1, color);
        }
    }
    img.save(path)
        .map_err(|e| InlsError::Format(format!("cannot write image: {e}")))?;
    Ok(())
}

fn bounds(vals: &[f64]) -> (f64, f64) {
    let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if (hi - lo).abs() < 1e-300 {
        (lo - 1.0, hi + 1.0)
    } else {
        (lo, hi)
    }
}
