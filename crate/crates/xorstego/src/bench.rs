//! Capacity/distortion benchmark over a directory of covers.
//!
//! Each requested payload size in bits is laid out as the most-square
//! `w x h` grid (w >= h) of `bits / 8` pixels, cropped from the top-left of
//! the payload image, and embedded into every cover. Reported MSE/PSNR
//! compare cover and stego over that embedded region — the distortion
//! footprint — so results are comparable across payload sizes.

use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::codec;
use crate::error::{Error, Result};
use crate::imageio;
use crate::metrics::MetricsReport;
use crate::planes::GrayImage;

/// One benchmark measurement: a cover, a payload size, and the resulting
/// distortion figures.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub cover_name: String,
    pub payload_bits: u64,
    pub mse_r: f64,
    pub mse_g: f64,
    pub mse_b: f64,
    pub psnr_r: f64,
    pub psnr_g: f64,
    pub psnr_b: f64,
    pub psnr_avg: f64,
    pub scheme: String,
}

/// Shapes a payload bit count into pixel dimensions: `bits / 8` pixels in
/// the most-square factorization with width >= height. 20,000 bits becomes
/// 50x50, 460,800 becomes 240x240, a prime pixel count degenerates to Nx1.
pub fn payload_dims_for_bits(bits: u64) -> Result<(u32, u32)> {
    if bits == 0 || bits % 8 != 0 {
        return Err(Error::InvalidPayloadBits(bits));
    }
    let pixels = bits / 8;
    if pixels > u64::from(u32::MAX) {
        return Err(Error::InvalidPayloadBits(bits));
    }
    let mut height = (pixels as f64).sqrt() as u64;
    while height > 1 && pixels % height != 0 {
        height -= 1;
    }
    Ok(((pixels / height) as u32, height as u32))
}

/// Lists the cover images (`.png`, `.ppm`) in a directory, sorted by file
/// name.
fn cover_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref(),
                Some("png") | Some("ppm")
            )
        })
        .collect();
    if paths.is_empty() {
        return Err(Error::NoCovers {
            dir: dir.to_path_buf(),
        });
    }
    paths.sort();
    Ok(paths)
}

fn measure(cover_path: &Path, payload: &GrayImage, bits: u64) -> Result<BenchRow> {
    let cover = imageio::read_rgb(cover_path)?;
    let (w, h) = payload_dims_for_bits(bits)?;
    let piece = payload.crop(w, h)?;
    let stego = codec::embed(&cover, &piece)?;
    let report = MetricsReport::compare(&cover.crop(w, h)?, &stego.as_image().crop(w, h)?)?;
    let cover_name = cover_path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("cover")
        .to_string();
    Ok(BenchRow {
        cover_name,
        payload_bits: bits,
        mse_r: report.mse_r,
        mse_g: report.mse_g,
        mse_b: report.mse_b,
        psnr_r: report.psnr_r,
        psnr_g: report.psnr_g,
        psnr_b: report.psnr_b,
        psnr_avg: report.psnr_avg,
        scheme: "xor".to_string(),
    })
}

/// Embeds every payload size into every cover in `covers_dir` and collects
/// one row per (cover, size). Covers run in parallel; rows come back sorted
/// by cover name and payload size regardless of completion order.
pub fn run(covers_dir: &Path, payload_path: &Path, sizes: &[u64]) -> Result<Vec<BenchRow>> {
    let payload = imageio::read_gray(payload_path)?;
    let covers = cover_paths(covers_dir)?;
    let mut rows = covers
        .par_iter()
        .map(|cover| {
            sizes
                .iter()
                .map(|&bits| measure(cover, &payload, bits))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    rows.sort_by(|a, b| {
        (&a.cover_name, a.payload_bits).cmp(&(&b.cover_name, b.payload_bits))
    });
    Ok(rows)
}

/// Writes rows as CSV: a comment documenting the size-to-dims rule, a
/// header matching the row fields, then one record per row with
/// two-decimal metric values.
pub fn write_csv(rows: &[BenchRow], out: impl Write) -> std::io::Result<()> {
    let mut out = out;
    writeln!(
        out,
        "# payload sizes are embedded as the most-square w x h grid (w >= h) of size/8 pixels, \
         cropped from the payload's top-left; metrics compare cover and stego over that region"
    )?;
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record([
        "cover_name",
        "payload_bits",
        "mse_r",
        "mse_g",
        "mse_b",
        "psnr_r",
        "psnr_g",
        "psnr_b",
        "psnr_avg",
        "scheme",
    ])?;
    for row in rows {
        writer.write_record([
            row.cover_name.clone(),
            row.payload_bits.to_string(),
            format!("{:.2}", row.mse_r),
            format!("{:.2}", row.mse_g),
            format!("{:.2}", row.mse_b),
            format!("{:.2}", row.psnr_r),
            format!("{:.2}", row.psnr_g),
            format!("{:.2}", row.psnr_b),
            format!("{:.2}", row.psnr_avg),
            row.scheme.clone(),
        ])?;
    }
    writer.flush()
}
