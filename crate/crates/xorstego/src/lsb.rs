//! Plain k-LSB substitution, the classic baseline the XOR scheme is
//! benchmarked against.
//!
//! Bits are written in raster order from the top-left, MSB-first within
//! each pixel's k-bit group; pixels past the end of the secret keep their
//! original low bits. Per-pixel distortion is bounded by `2^k - 1`.

use crate::error::{Error, Result};
use crate::planes::{GrayImage, RgbImage};

/// Number of low bits replaced per channel pixel, 1 through 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LsbConfig {
    k: u8,
}

impl LsbConfig {
    pub fn new(k: u8) -> Result<Self> {
        if !(1..=8).contains(&k) {
            return Err(Error::InvalidLsbDepth(k));
        }
        Ok(LsbConfig { k })
    }

    pub fn bits_per_pixel(&self) -> u8 {
        self.k
    }
}

/// Unpacks bytes into bits, MSB first.
pub fn bits_from_bytes(bytes: &[u8]) -> Vec<bool> {
    bytes
        .iter()
        .flat_map(|&byte| (0..8).map(move |i| (byte >> (7 - i)) & 1 == 1))
        .collect()
}

/// Packs bits into bytes, MSB first; a partial final byte is zero-padded.
pub fn bytes_from_bits(bits: &[bool]) -> Vec<u8> {
    bits.chunks(8)
        .map(|chunk| {
            chunk
                .iter()
                .enumerate()
                .fold(0u8, |acc, (i, &bit)| acc | (u8::from(bit) << (7 - i)))
        })
        .collect()
}

/// Replaces the k low bits of successive pixels with `secret`.
pub fn embed(cover: &GrayImage, secret: &[bool], cfg: &LsbConfig) -> Result<GrayImage> {
    let k = cfg.k as usize;
    let capacity = cover.data().len() * k;
    if secret.len() > capacity {
        return Err(Error::SecretTooLarge {
            bits: secret.len(),
            capacity,
        });
    }
    let mut data = cover.data().to_vec();
    for (i, &bit) in secret.iter().enumerate() {
        let pixel = i / k;
        let shift = k - 1 - i % k; // MSB-first within the group
        let mask = 1u8 << shift;
        if bit {
            data[pixel] |= mask;
        } else {
            data[pixel] &= !mask;
        }
    }
    GrayImage::from_raw(cover.width(), cover.height(), data)
}

/// Reads back `n_bits` in the order [`embed`] wrote them.
pub fn extract(stego: &GrayImage, n_bits: usize, cfg: &LsbConfig) -> Result<Vec<bool>> {
    let k = cfg.k as usize;
    let capacity = stego.data().len() * k;
    if n_bits > capacity {
        return Err(Error::RequestTooLarge {
            bits: n_bits,
            capacity,
        });
    }
    let data = stego.data();
    Ok((0..n_bits)
        .map(|i| {
            let pixel = i / k;
            let shift = k - 1 - i % k;
            (data[pixel] >> shift) & 1 == 1
        })
        .collect())
}

/// Hides a grayscale payload image across an RGB cover: the payload bytes
/// become one bit stream that fills the R channel first, then G, then B.
pub fn embed_image(cover: &RgbImage, payload: &GrayImage, cfg: &LsbConfig) -> Result<RgbImage> {
    let bits = bits_from_bytes(payload.data());
    let per_channel = channel_capacity(cover, cfg);
    if bits.len() > 3 * per_channel {
        return Err(Error::SecretTooLarge {
            bits: bits.len(),
            capacity: 3 * per_channel,
        });
    }
    let mut chunks = [&[] as &[bool]; 3];
    for (i, chunk) in bits.chunks(per_channel.max(1)).take(3).enumerate() {
        chunks[i] = chunk;
    }
    RgbImage::new(
        embed(cover.r(), chunks[0], cfg)?,
        embed(cover.g(), chunks[1], cfg)?,
        embed(cover.b(), chunks[2], cfg)?,
    )
}

/// Recovers a `width` x `height` payload hidden by [`embed_image`].
pub fn extract_image(
    stego: &RgbImage,
    width: u32,
    height: u32,
    cfg: &LsbConfig,
) -> Result<GrayImage> {
    let n_bits = width as usize * height as usize * 8;
    let per_channel = channel_capacity(stego, cfg);
    if n_bits > 3 * per_channel {
        return Err(Error::RequestTooLarge {
            bits: n_bits,
            capacity: 3 * per_channel,
        });
    }
    let mut bits = Vec::with_capacity(n_bits);
    for channel in [stego.r(), stego.g(), stego.b()] {
        let take = (n_bits - bits.len()).min(per_channel);
        bits.extend(extract(channel, take, cfg)?);
        if bits.len() == n_bits {
            break;
        }
    }
    GrayImage::from_raw(width, height, bytes_from_bits(&bits))
}

fn channel_capacity(image: &RgbImage, cfg: &LsbConfig) -> usize {
    image.width() as usize * image.height() as usize * cfg.k as usize
}
