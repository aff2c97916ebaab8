//! Distortion and detectability scoring.
//!
//! MSE accumulates in integer arithmetic and divides once, so results are
//! bit-identical across platforms. PSNR is `10 * log10(255^2 / MSE)` with a
//! `+inf` sentinel for identical channels, and the RGB summary is the
//! arithmetic mean of the three channel PSNRs, not the PSNR of the mean
//! MSE. Detectability is the relative entropy `D(P_C || P_S)` between
//! 256-bin intensity histograms, with add-one smoothing so empty bins never
//! divide by zero; the default logarithm is natural (nats).

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::planes::{GrayImage, RgbImage};

/// Peak intensity of an 8-bit channel.
pub const PEAK: f64 = 255.0;

/// Mean squared error between two equally sized channels.
pub fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            expected_width: a.width(),
            expected_height: a.height(),
            actual_width: b.width(),
            actual_height: b.height(),
        });
    }
    let sum: u64 = a
        .data()
        .iter()
        .zip(b.data())
        .map(|(&x, &y)| {
            let d = i64::from(x) - i64::from(y);
            (d * d) as u64
        })
        .sum();
    Ok(sum as f64 / a.pixel_count() as f64)
}

/// PSNR in decibels for a given mean squared error; `+inf` when the error
/// is zero.
pub fn psnr_from_mse(mse: f64) -> f64 {
    if mse == 0.0 {
        f64::INFINITY
    } else {
        10.0 * (PEAK * PEAK / mse).log10()
    }
}

/// Intensity histogram of an 8-bit channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
}

impl Histogram256 {
    pub fn of(image: &GrayImage) -> Self {
        let mut counts = [0u64; 256];
        for &v in image.data() {
            counts[v as usize] += 1;
        }
        Histogram256 { counts }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Logarithm base for relative entropy: nats (natural log) or bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    E,
    Two,
}

/// Estimator settings for [`relative_entropy_with`]. `smoothing` is added
/// to every bin of both histograms before normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KlOptions {
    pub smoothing: f64,
    pub log_base: LogBase,
}

impl Default for KlOptions {
    fn default() -> Self {
        KlOptions {
            smoothing: 1.0,
            log_base: LogBase::E,
        }
    }
}

/// Relative entropy `D(P_cover || P_stego)` over 256-bin intensity
/// histograms with add-one smoothing, in nats. Zero exactly when the
/// histograms are identical, non-negative always. The two images need not
/// share dimensions; only their intensity distributions are compared.
pub fn relative_entropy(cover: &GrayImage, stego: &GrayImage) -> f64 {
    relative_entropy_with(cover, stego, &KlOptions::default())
}

/// [`relative_entropy`] with an explicit smoothing constant and log base.
pub fn relative_entropy_with(cover: &GrayImage, stego: &GrayImage, opts: &KlOptions) -> f64 {
    let hc = Histogram256::of(cover);
    let hs = Histogram256::of(stego);
    divergence(&hc, &hs, opts)
}

fn divergence(cover: &Histogram256, stego: &Histogram256, opts: &KlOptions) -> f64 {
    let total_c = cover.total() as f64 + 256.0 * opts.smoothing;
    let total_s = stego.total() as f64 + 256.0 * opts.smoothing;
    let mut nats = 0.0;
    for (&c, &s) in cover.counts.iter().zip(&stego.counts) {
        let p = (c as f64 + opts.smoothing) / total_c;
        let q = (s as f64 + opts.smoothing) / total_s;
        if p > 0.0 {
            nats += p * (p / q).ln();
        }
    }
    match opts.log_base {
        LogBase::E => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    }
}

fn serialize_db<S: Serializer>(value: &f64, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    if value.is_finite() {
        serializer.serialize_f64(*value)
    } else {
        serializer.serialize_str("inf")
    }
}

/// Full comparison of a cover/stego pair: per-channel MSE and PSNR, the
/// averaged PSNR, and per-channel relative entropy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub mse_r: f64,
    pub mse_g: f64,
    pub mse_b: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_r: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_g: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_b: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_avg: f64,
    pub kl_r: f64,
    pub kl_g: f64,
    pub kl_b: f64,
}

impl MetricsReport {
    /// Scores `stego` against `cover`; the images must agree in size.
    pub fn compare(cover: &RgbImage, stego: &RgbImage) -> Result<MetricsReport> {
        let mse_r = mse(cover.r(), stego.r())?;
        let mse_g = mse(cover.g(), stego.g())?;
        let mse_b = mse(cover.b(), stego.b())?;
        let psnr_r = psnr_from_mse(mse_r);
        let psnr_g = psnr_from_mse(mse_g);
        let psnr_b = psnr_from_mse(mse_b);
        Ok(MetricsReport {
            mse_r,
            mse_g,
            mse_b,
            psnr_r,
            psnr_g,
            psnr_b,
            psnr_avg: (psnr_r + psnr_g + psnr_b) / 3.0,
            kl_r: relative_entropy(cover.r(), stego.r()),
            kl_g: relative_entropy(cover.g(), stego.g()),
            kl_b: relative_entropy(cover.b(), stego.b()),
        })
    }

    /// Machine-readable JSON document; infinite PSNR serializes as the
    /// string `"inf"`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl std::fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (name, value) in [
            ("mse_r", self.mse_r),
            ("mse_g", self.mse_g),
            ("mse_b", self.mse_b),
            ("psnr_r", self.psnr_r),
            ("psnr_g", self.psnr_g),
            ("psnr_b", self.psnr_b),
            ("psnr_avg", self.psnr_avg),
            ("kl_r", self.kl_r),
            ("kl_g", self.kl_g),
            ("kl_b", self.kl_b),
        ] {
            writeln!(f, "{name} {value:.6}")?;
        }
        Ok(())
    }
}
