//! Lossless image file I/O.
//!
//! Supported formats are binary PGM (P5), binary PPM (P6), and 8-bit PNG.
//! Round trips are bit-exact in every case; anything lossy would silently
//! destroy embedded planes, so JPEG is refused outright on both read and
//! write, as are alpha channels and sample depths other than 8 bits.
//!
//! Reads sniff the file content, accepting netpbm comments and arbitrary
//! header whitespace. Writes emit canonical headers
//! (`P5\n<w> <h>\n255\n` followed by raw rows) so golden files reproduce.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::planes::{GrayImage, RgbImage};

const JPEG_REJECTION: &str =
    "JPEG is a lossy format and recompression destroys embedded bit planes; use PNG, PGM, or PPM";

/// A decoded file: either a single 8-bit channel or an RGB triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodedImage {
    Gray(GrayImage),
    Rgb(RgbImage),
}

/// Reads any supported file, reporting what it contained.
pub fn read_image(path: impl AsRef<Path>) -> Result<DecodedImage> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.starts_with(b"\x89PNG\r\n\x1a\n") {
        decode_png(path, &bytes)
    } else if bytes.starts_with(b"P5") {
        decode_pnm(path, &bytes, 1)
    } else if bytes.starts_with(b"P6") {
        decode_pnm(path, &bytes, 3)
    } else if bytes.starts_with(&[0xFF, 0xD8]) {
        Err(Error::format(path, JPEG_REJECTION))
    } else if bytes.first() == Some(&b'P') {
        Err(Error::format(
            path,
            "only binary netpbm files (P5 grayscale, P6 color) are supported",
        ))
    } else {
        Err(Error::format(path, "unrecognized image format"))
    }
}

/// Reads an 8-bit grayscale image (PGM or grayscale PNG). A color file
/// whose channels are all identical, such as a paletted-grayscale PNG, is
/// accepted and collapsed to one channel.
pub fn read_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    match read_image(path)? {
        DecodedImage::Gray(img) => Ok(img),
        DecodedImage::Rgb(rgb) => {
            let (r, g, b) = rgb.channels();
            if r == g && g == b {
                Ok(rgb.into_channels().0)
            } else {
                Err(Error::format(path, "color image where grayscale expected"))
            }
        }
    }
}

/// Reads an 8-bit-per-channel RGB image (PPM or color PNG).
pub fn read_rgb(path: impl AsRef<Path>) -> Result<RgbImage> {
    let path = path.as_ref();
    match read_image(path)? {
        DecodedImage::Rgb(img) => Ok(img),
        DecodedImage::Gray(_) => Err(Error::format(
            path,
            "grayscale image where RGB color expected",
        )),
    }
}

/// Writes a grayscale image as canonical PGM or PNG, by extension.
pub fn write_gray(path: impl AsRef<Path>, image: &GrayImage) -> Result<()> {
    let path = path.as_ref();
    match extension(path).as_deref() {
        Some("pgm") => {
            let mut out = format!("P5\n{} {}\n255\n", image.width(), image.height()).into_bytes();
            out.extend_from_slice(image.data());
            fs::write(path, out).map_err(|e| Error::io(path, e))
        }
        Some("png") => write_png(path, encode_png_gray(path, image)?),
        Some("ppm") => Err(Error::format(
            path,
            "PPM holds color data; write grayscale as .pgm or .png",
        )),
        Some("jpg") | Some("jpeg") => Err(Error::format(path, JPEG_REJECTION)),
        _ => Err(Error::format(
            path,
            "unsupported output format; use .pgm or .png",
        )),
    }
}

/// Writes an RGB image as canonical PPM or PNG, by extension.
pub fn write_rgb(path: impl AsRef<Path>, image: &RgbImage) -> Result<()> {
    let path = path.as_ref();
    match extension(path).as_deref() {
        Some("ppm") => {
            let mut out = format!("P6\n{} {}\n255\n", image.width(), image.height()).into_bytes();
            out.reserve(image.r().data().len() * 3);
            for ((&r, &g), &b) in image
                .r()
                .data()
                .iter()
                .zip(image.g().data())
                .zip(image.b().data())
            {
                out.extend_from_slice(&[r, g, b]);
            }
            fs::write(path, out).map_err(|e| Error::io(path, e))
        }
        Some("png") => write_png(path, encode_png_rgb(path, image)?),
        Some("pgm") => Err(Error::format(
            path,
            "PGM holds grayscale data; write color as .ppm or .png",
        )),
        Some("jpg") | Some("jpeg") => Err(Error::format(path, JPEG_REJECTION)),
        _ => Err(Error::format(
            path,
            "unsupported output format; use .ppm or .png",
        )),
    }
}

fn extension(path: &Path) -> Option<String> {
    path.extension()
        .and_then(|e| e.to_str())
        .map(|e| e.to_ascii_lowercase())
}

fn write_png(path: &Path, bytes: Vec<u8>) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn encode_png_gray(path: &Path, image: &GrayImage) -> Result<Vec<u8>> {
    let buf = image::ImageBuffer::<image::Luma<u8>, _>::from_raw(
        image.width(),
        image.height(),
        image.data().to_vec(),
    )
    .expect("buffer length matches dimensions");
    encode_png(path, image::DynamicImage::ImageLuma8(buf))
}

fn encode_png_rgb(path: &Path, image: &RgbImage) -> Result<Vec<u8>> {
    let mut interleaved = Vec::with_capacity(image.r().data().len() * 3);
    for ((&r, &g), &b) in image
        .r()
        .data()
        .iter()
        .zip(image.g().data())
        .zip(image.b().data())
    {
        interleaved.extend_from_slice(&[r, g, b]);
    }
    let buf =
        image::ImageBuffer::<image::Rgb<u8>, _>::from_raw(image.width(), image.height(), interleaved)
            .expect("buffer length matches dimensions");
    encode_png(path, image::DynamicImage::ImageRgb8(buf))
}

fn encode_png(path: &Path, image: image::DynamicImage) -> Result<Vec<u8>> {
    let mut bytes = Vec::new();
    image
        .write_to(
            &mut std::io::Cursor::new(&mut bytes),
            image::ImageFormat::Png,
        )
        .map_err(|e| Error::format(path, format!("PNG encoding failed: {e}")))?;
    Ok(bytes)
}

fn decode_png(path: &Path, bytes: &[u8]) -> Result<DecodedImage> {
    let decoded = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| Error::format(path, format!("PNG decoding failed: {e}")))?;
    match decoded {
        image::DynamicImage::ImageLuma8(buf) => {
            let (w, h) = buf.dimensions();
            Ok(DecodedImage::Gray(GrayImage::from_raw(
                w,
                h,
                buf.into_raw(),
            )?))
        }
        image::DynamicImage::ImageRgb8(buf) => {
            let (w, h) = buf.dimensions();
            Ok(DecodedImage::Rgb(planar_from_interleaved(
                w,
                h,
                &buf.into_raw(),
            )?))
        }
        image::DynamicImage::ImageLumaA8(_) | image::DynamicImage::ImageRgba8(_) => {
            Err(Error::format(
                path,
                "alpha channel present; flatten the image before embedding",
            ))
        }
        other => Err(Error::format(
            path,
            format!(
                "unsupported sample format {:?}; only 8-bit grayscale or RGB",
                other.color()
            ),
        )),
    }
}

fn decode_pnm(path: &Path, bytes: &[u8], channels: u64) -> Result<DecodedImage> {
    let header = parse_pnm_header(path, bytes)?;
    let needed = header.width as u64 * header.height as u64 * channels;
    let available = (bytes.len() - header.data_offset) as u64;
    if available < needed {
        return Err(Error::format(
            path,
            format!("truncated pixel data: expected {needed} bytes, found {available}"),
        ));
    }
    let data = &bytes[header.data_offset..header.data_offset + needed as usize];
    if channels == 1 {
        Ok(DecodedImage::Gray(GrayImage::from_raw(
            header.width,
            header.height,
            data.to_vec(),
        )?))
    } else {
        Ok(DecodedImage::Rgb(planar_from_interleaved(
            header.width,
            header.height,
            data,
        )?))
    }
}

fn planar_from_interleaved(width: u32, height: u32, data: &[u8]) -> Result<RgbImage> {
    let n = width as usize * height as usize;
    let mut r = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for px in data.chunks_exact(3) {
        r.push(px[0]);
        g.push(px[1]);
        b.push(px[2]);
    }
    RgbImage::new(
        GrayImage::from_raw(width, height, r)?,
        GrayImage::from_raw(width, height, g)?,
        GrayImage::from_raw(width, height, b)?,
    )
}

struct PnmHeader {
    width: u32,
    height: u32,
    data_offset: usize,
}

/// Parses `P5`/`P6` headers: three decimal fields separated by whitespace
/// runs that may contain `#` comments, then a single whitespace byte before
/// the raw samples.
fn parse_pnm_header(path: &Path, bytes: &[u8]) -> Result<PnmHeader> {
    let mut pos = 2; // past the magic
    let mut fields = [0u32; 3];
    for field in &mut fields {
        pos = skip_whitespace_and_comments(bytes, pos);
        let (value, next) = read_decimal(path, bytes, pos)?;
        *field = value;
        pos = next;
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 {
        return Err(Error::format(path, "image has a zero dimension"));
    }
    if maxval == 0 {
        return Err(Error::format(path, "invalid maxval 0"));
    }
    if maxval > 255 {
        return Err(Error::format(
            path,
            format!("maxval {maxval} implies 16-bit samples; only 8-bit images are supported"),
        ));
    }
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => Ok(PnmHeader {
            width,
            height,
            data_offset: pos + 1,
        }),
        _ => Err(Error::format(path, "missing whitespace after maxval")),
    }
}

fn skip_whitespace_and_comments(bytes: &[u8], mut pos: usize) -> usize {
    while let Some(&b) = bytes.get(pos) {
        if b.is_ascii_whitespace() {
            pos += 1;
        } else if b == b'#' {
            while let Some(&c) = bytes.get(pos) {
                pos += 1;
                if c == b'\n' {
                    break;
                }
            }
        } else {
            break;
        }
    }
    pos
}

fn read_decimal(path: &Path, bytes: &[u8], mut pos: usize) -> Result<(u32, usize)> {
    let start = pos;
    while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
        pos += 1;
    }
    if pos == start {
        return Err(Error::format(path, "malformed netpbm header field"));
    }
    let text = std::str::from_utf8(&bytes[start..pos]).expect("digits are ASCII");
    let value = text
        .parse::<u32>()
        .map_err(|_| Error::format(path, format!("header field {text} out of range")))?;
    Ok((value, pos))
}
