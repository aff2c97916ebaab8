//! Command-line surface: embed, extract, metrics, slice, and bench.
//!
//! Exit codes: 0 on success, 1 for usage or contract violations (bad
//! arguments, missing input paths, payload/dimension errors, format
//! rejections), 2 for I/O failures.

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use crate::bench;
use crate::codec;
use crate::error::{Error, Result};
use crate::imageio::{self, DecodedImage};
use crate::lsb::{self, LsbConfig};
use crate::metrics::MetricsReport;
use crate::planes::{GrayImage, RgbImage, PLANE_COUNT};

/// Which embedding scheme to run: the bit-plane XOR scheme (default) or
/// plain k-LSB substitution, written `lsb:<k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Xor,
    Lsb(u8),
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "xor" {
            return Ok(Scheme::Xor);
        }
        if let Some(k) = s.strip_prefix("lsb:") {
            let k: u8 = k.parse().map_err(|_| Error::InvalidScheme(s.to_string()))?;
            LsbConfig::new(k)?;
            return Ok(Scheme::Lsb(k));
        }
        Err(Error::InvalidScheme(s.to_string()))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::Xor => write!(f, "xor"),
            Scheme::Lsb(k) => write!(f, "lsb:{k}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "xorstego",
    version,
    about = "Hide a grayscale image in the bit planes of an RGB cover and get it back"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a grayscale payload into an RGB cover and report distortion
    Embed {
        /// RGB cover image (PNG or PPM)
        #[arg(long)]
        cover: PathBuf,
        /// Grayscale payload image (PNG or PGM), at most cover-sized
        #[arg(long)]
        payload: PathBuf,
        /// Stego image to write (PNG or PPM)
        #[arg(long)]
        out: PathBuf,
        /// Embedding scheme: "xor" or "lsb:<k>"
        #[arg(long, default_value = "xor")]
        scheme: Scheme,
    },
    /// Recover a payload from a stego image alone
    Extract {
        /// Stego image produced by embed
        #[arg(long)]
        stego: PathBuf,
        /// Payload width in pixels (not stored in the stego image)
        #[arg(long)]
        width: u32,
        /// Payload height in pixels
        #[arg(long)]
        height: u32,
        /// Recovered payload to write (PNG or PGM)
        #[arg(long)]
        out: PathBuf,
        /// Embedding scheme used: "xor" or "lsb:<k>"
        #[arg(long, default_value = "xor")]
        scheme: Scheme,
    },
    /// Compare two images: MSE, PSNR, and relative entropy per channel
    Metrics {
        /// First image (the reference)
        #[arg(long)]
        a: PathBuf,
        /// Second image
        #[arg(long)]
        b: PathBuf,
        /// Emit a JSON document instead of flat key-value text
        #[arg(long)]
        json: bool,
    },
    /// Write each bit plane of an image as a black-and-white PNG
    Slice {
        /// Image to slice (grayscale gives 8 planes, RGB gives 24)
        #[arg(long)]
        image: PathBuf,
        /// Directory for the plane images, created if absent
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Embed payloads of several sizes into every cover and emit a CSV
    Bench {
        /// Directory of RGB cover images (.png/.ppm)
        #[arg(long)]
        covers: PathBuf,
        /// Grayscale payload image, cropped to each requested size
        #[arg(long)]
        payload: PathBuf,
        /// Payload sizes in bits, comma separated (each a multiple of 8)
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        /// CSV file to write
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses arguments and runs the selected command, mapping errors to the
/// documented exit codes.
pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        // a nonexistent input path is a usage mistake, not an I/O failure
        Error::Io { source, .. } if source.kind() == std::io::ErrorKind::NotFound => 1,
        Error::Io { .. } => 2,
        _ => 1,
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Embed {
            cover,
            payload,
            out,
            scheme,
        } => cmd_embed(&cover, &payload, &out, scheme),
        Command::Extract {
            stego,
            width,
            height,
            out,
            scheme,
        } => cmd_extract(&stego, width, height, &out, scheme),
        Command::Metrics { a, b, json } => cmd_metrics(&a, &b, json),
        Command::Slice { image, out_dir } => cmd_slice(&image, &out_dir),
        Command::Bench {
            covers,
            payload,
            sizes,
            out,
        } => cmd_bench(&covers, &payload, &sizes, &out),
    }
}

fn cmd_embed(cover_path: &Path, payload_path: &Path, out: &Path, scheme: Scheme) -> Result<()> {
    let cover = imageio::read_rgb(cover_path)?;
    let payload = imageio::read_gray(payload_path)?;
    let (stego, report) = match scheme {
        Scheme::Xor => {
            let stego = codec::embed(&cover, &payload)?.into_inner();
            // the XOR scheme only touches the payload footprint, so the
            // report covers that region
            let (w, h) = (payload.width(), payload.height());
            let report = MetricsReport::compare(&cover.crop(w, h)?, &stego.crop(w, h)?)?;
            (stego, report)
        }
        Scheme::Lsb(k) => {
            let stego = lsb::embed_image(&cover, &payload, &LsbConfig::new(k)?)?;
            let report = MetricsReport::compare(&cover, &stego)?;
            (stego, report)
        }
    };
    imageio::write_rgb(out, &stego)?;
    print!("{report}");
    Ok(())
}

fn cmd_extract(stego_path: &Path, width: u32, height: u32, out: &Path, scheme: Scheme) -> Result<()> {
    let stego = imageio::read_rgb(stego_path)?;
    let payload = match scheme {
        Scheme::Xor => codec::extract(&stego, width, height)?,
        Scheme::Lsb(k) => lsb::extract_image(&stego, width, height, &LsbConfig::new(k)?)?,
    };
    imageio::write_gray(out, &payload)
}

fn read_as_rgb(path: &Path) -> Result<RgbImage> {
    // metrics accept grayscale files too, scored as three equal channels
    match imageio::read_image(path)? {
        DecodedImage::Rgb(img) => Ok(img),
        DecodedImage::Gray(img) => RgbImage::new(img.clone(), img.clone(), img),
    }
}

fn cmd_metrics(a_path: &Path, b_path: &Path, json: bool) -> Result<()> {
    let a = read_as_rgb(a_path)?;
    let b = read_as_rgb(b_path)?;
    let report = MetricsReport::compare(&a, &b)?;
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    Ok(())
}

fn write_plane_images(channel: &GrayImage, prefix: &str, out_dir: &Path) -> Result<()> {
    let stack = channel.bit_planes(PLANE_COUNT as u32)?;
    for level in 1..=PLANE_COUNT {
        let bits = stack.plane(level).bits().iter().map(|&b| b * 255).collect();
        let rendered = GrayImage::from_raw(channel.width(), channel.height(), bits)?;
        imageio::write_gray(out_dir.join(format!("{prefix}plane_{level}.png")), &rendered)?;
    }
    Ok(())
}

fn cmd_slice(image_path: &Path, out_dir: &Path) -> Result<()> {
    let decoded = imageio::read_image(image_path)?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    match decoded {
        DecodedImage::Gray(img) => write_plane_images(&img, "", out_dir),
        DecodedImage::Rgb(img) => {
            write_plane_images(img.r(), "r_", out_dir)?;
            write_plane_images(img.g(), "g_", out_dir)?;
            write_plane_images(img.b(), "b_", out_dir)
        }
    }
}

fn cmd_bench(covers: &Path, payload: &Path, sizes: &[u64], out: &Path) -> Result<()> {
    let rows = bench::run(covers, payload, sizes)?;
    let file = std::fs::File::create(out).map_err(|e| Error::io(out, e))?;
    bench::write_csv(&rows, std::io::BufWriter::new(file)).map_err(|e| Error::io(out, e))?;
    Ok(())
}
