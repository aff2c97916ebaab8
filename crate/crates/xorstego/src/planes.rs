//! Pixel containers and the bit-plane representation layer.
//!
//! A `GrayImage` slices into a [`PlaneStack`] of exactly eight [`BitPlane`]s.
//! Plane levels are numbered 1 through 8, with level 1 the most significant
//! bit and level 8 the least significant, so level `k` of a pixel value `v`
//! is `(v >> (8 - k)) & 1`. Slicing and recombination are exact inverses.

use crate::error::{Error, Result};

/// Number of bit planes in an 8-bit channel.
pub const PLANE_COUNT: u8 = 8;

fn shift_for_level(level: u8) -> u32 {
    assert!(
        (1..=PLANE_COUNT).contains(&level),
        "plane level {level} out of range 1..=8"
    );
    (PLANE_COUNT - level) as u32
}

/// An 8-bit single-channel image, row-major from the top-left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    /// Creates a zero-filled image. At least one pixel is required.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        Ok(GrayImage {
            width,
            height,
            data: vec![0; width as usize * height as usize],
        })
    }

    /// Wraps a row-major intensity buffer; `data` must hold exactly
    /// `width * height` bytes.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let expected = width as usize * height as usize;
        if data.len() != expected {
            return Err(Error::DimensionMismatch {
                expected_width: width,
                expected_height: height,
                actual_width: data.len() as u32,
                actual_height: 1,
            });
        }
        Ok(GrayImage {
            width,
            height,
            data,
        })
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> u8) -> Result<Self> {
        let mut img = GrayImage::new(width, height)?;
        for y in 0..height {
            for x in 0..width {
                img.set(x, y, f(x, y));
            }
        }
        Ok(img)
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Pixel count as a wide integer, safe for capacity arithmetic.
    pub fn pixel_count(&self) -> u64 {
        self.width as u64 * self.height as u64
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        assert!(x < self.width && y < self.height, "pixel ({x},{y}) out of bounds");
        self.data[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, value: u8) {
        assert!(x < self.width && y < self.height, "pixel ({x},{y}) out of bounds");
        self.data[y as usize * self.width as usize + x as usize] = value;
    }

    /// Row-major intensity buffer.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_raw(self) -> Vec<u8> {
        self.data
    }

    /// Copies out the `width` x `height` region anchored at the top-left.
    pub fn crop(&self, width: u32, height: u32) -> Result<GrayImage> {
        if width > self.width || height > self.height {
            return Err(Error::RegionTooLarge {
                requested_width: width,
                requested_height: height,
                available_width: self.width,
                available_height: self.height,
            });
        }
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        let mut data = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height as usize {
            let start = y * self.width as usize;
            data.extend_from_slice(&self.data[start..start + width as usize]);
        }
        GrayImage::from_raw(width, height, data)
    }

    /// Overwrites the top-left region with `src`, which must fit.
    pub(crate) fn write_top_left(&mut self, src: &GrayImage) {
        assert!(src.width <= self.width && src.height <= self.height);
        for y in 0..src.height as usize {
            let dst_start = y * self.width as usize;
            let src_start = y * src.width as usize;
            self.data[dst_start..dst_start + src.width as usize]
                .copy_from_slice(&src.data[src_start..src_start + src.width as usize]);
        }
    }

    /// Slices the channel into its binary planes. Only `depth == 8` is
    /// defined; any other depth is rejected rather than truncated.
    pub fn bit_planes(&self, depth: u32) -> Result<PlaneStack> {
        if depth != PLANE_COUNT as u32 {
            return Err(Error::UnsupportedDepth(depth));
        }
        let planes = std::array::from_fn(|i| {
            let shift = shift_for_level(i as u8 + 1);
            let bits = self.data.iter().map(|&px| (px >> shift) & 1).collect();
            BitPlane {
                width: self.width,
                height: self.height,
                bits,
            }
        });
        Ok(PlaneStack { planes })
    }
}

/// One binary slice of a channel: every element is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPlane {
    width: u32,
    height: u32,
    bits: Vec<u8>,
}

impl BitPlane {
    /// Creates an all-zero plane.
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        Ok(BitPlane {
            width,
            height,
            bits: vec![0; width as usize * height as usize],
        })
    }

    /// Wraps a row-major bit buffer; every element must be 0 or 1.
    pub fn from_raw(width: u32, height: u32, bits: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::EmptyImage);
        }
        if bits.len() != width as usize * height as usize {
            return Err(Error::DimensionMismatch {
                expected_width: width,
                expected_height: height,
                actual_width: bits.len() as u32,
                actual_height: 1,
            });
        }
        if let Some(&bad) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidBit(bad));
        }
        Ok(BitPlane {
            width,
            height,
            bits,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn get(&self, x: u32, y: u32) -> u8 {
        assert!(x < self.width && y < self.height, "bit ({x},{y}) out of bounds");
        self.bits[y as usize * self.width as usize + x as usize]
    }

    pub fn set(&mut self, x: u32, y: u32, bit: u8) {
        assert!(x < self.width && y < self.height, "bit ({x},{y}) out of bounds");
        assert!(bit <= 1, "bit value {bit} is neither 0 nor 1");
        self.bits[y as usize * self.width as usize + x as usize] = bit;
    }

    /// Row-major bit buffer.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Elementwise exclusive-or with a plane of the same dimensions.
    pub fn xor(&self, other: &BitPlane) -> Result<BitPlane> {
        if self.width != other.width || self.height != other.height {
            return Err(Error::DimensionMismatch {
                expected_width: self.width,
                expected_height: self.height,
                actual_width: other.width,
                actual_height: other.height,
            });
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| a ^ b)
            .collect();
        Ok(BitPlane {
            width: self.width,
            height: self.height,
            bits,
        })
    }
}

/// The eight binary planes of one channel, level 1 (most significant)
/// through level 8 (least significant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneStack {
    planes: [BitPlane; 8],
}

impl PlaneStack {
    /// Assembles a stack from planes ordered level 1 to level 8; all eight
    /// must share the same dimensions.
    pub fn from_planes(planes: [BitPlane; 8]) -> Result<Self> {
        let (w, h) = (planes[0].width, planes[0].height);
        for plane in &planes[1..] {
            if plane.width != w || plane.height != h {
                return Err(Error::DimensionMismatch {
                    expected_width: w,
                    expected_height: h,
                    actual_width: plane.width,
                    actual_height: plane.height,
                });
            }
        }
        Ok(PlaneStack { planes })
    }

    pub fn width(&self) -> u32 {
        self.planes[0].width
    }

    pub fn height(&self) -> u32 {
        self.planes[0].height
    }

    /// Borrows the plane at `level`, 1 (MSB) through 8 (LSB).
    pub fn plane(&self, level: u8) -> &BitPlane {
        let _ = shift_for_level(level);
        &self.planes[level as usize - 1]
    }

    /// Replaces the plane at `level`; dimensions must match the stack.
    pub fn set_plane(&mut self, level: u8, plane: BitPlane) -> Result<()> {
        let _ = shift_for_level(level);
        if plane.width != self.width() || plane.height != self.height() {
            return Err(Error::DimensionMismatch {
                expected_width: self.width(),
                expected_height: self.height(),
                actual_width: plane.width,
                actual_height: plane.height,
            });
        }
        self.planes[level as usize - 1] = plane;
        Ok(())
    }

    /// Recombines the planes into a channel: each pixel is
    /// `sum over k of plane_k * 2^(8-k)`. Exact inverse of
    /// [`GrayImage::bit_planes`].
    pub fn to_gray(&self) -> GrayImage {
        let mut data = vec![0u8; self.width() as usize * self.height() as usize];
        for (i, plane) in self.planes.iter().enumerate() {
            let shift = shift_for_level(i as u8 + 1);
            for (px, &bit) in data.iter_mut().zip(&plane.bits) {
                *px |= bit << shift;
            }
        }
        GrayImage {
            width: self.width(),
            height: self.height(),
            data,
        }
    }
}

/// A planar RGB image: three equally sized 8-bit channels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RgbImage {
    r: GrayImage,
    g: GrayImage,
    b: GrayImage,
}

impl RgbImage {
    /// Merges three channels into an RGB image; the channels must agree in
    /// size. Inverse of [`RgbImage::into_channels`].
    pub fn new(r: GrayImage, g: GrayImage, b: GrayImage) -> Result<Self> {
        for ch in [&g, &b] {
            if ch.width != r.width || ch.height != r.height {
                return Err(Error::DimensionMismatch {
                    expected_width: r.width,
                    expected_height: r.height,
                    actual_width: ch.width,
                    actual_height: ch.height,
                });
            }
        }
        Ok(RgbImage { r, g, b })
    }

    /// Builds an image by evaluating `f(x, y) -> (r, g, b)` at every pixel.
    pub fn from_fn(
        width: u32,
        height: u32,
        mut f: impl FnMut(u32, u32) -> (u8, u8, u8),
    ) -> Result<Self> {
        let mut r = GrayImage::new(width, height)?;
        let mut g = GrayImage::new(width, height)?;
        let mut b = GrayImage::new(width, height)?;
        for y in 0..height {
            for x in 0..width {
                let (pr, pg, pb) = f(x, y);
                r.set(x, y, pr);
                g.set(x, y, pg);
                b.set(x, y, pb);
            }
        }
        Ok(RgbImage { r, g, b })
    }

    pub fn width(&self) -> u32 {
        self.r.width
    }

    pub fn height(&self) -> u32 {
        self.r.height
    }

    pub fn r(&self) -> &GrayImage {
        &self.r
    }

    pub fn g(&self) -> &GrayImage {
        &self.g
    }

    pub fn b(&self) -> &GrayImage {
        &self.b
    }

    pub fn pixel(&self, x: u32, y: u32) -> (u8, u8, u8) {
        (self.r.get(x, y), self.g.get(x, y), self.b.get(x, y))
    }

    /// Borrows all three channels at once.
    pub fn channels(&self) -> (&GrayImage, &GrayImage, &GrayImage) {
        (&self.r, &self.g, &self.b)
    }

    /// Splits the image into its component channels by value.
    pub fn into_channels(self) -> (GrayImage, GrayImage, GrayImage) {
        (self.r, self.g, self.b)
    }

    /// Copies out the top-left `width` x `height` region of every channel.
    pub fn crop(&self, width: u32, height: u32) -> Result<RgbImage> {
        Ok(RgbImage {
            r: self.r.crop(width, height)?,
            g: self.g.crop(width, height)?,
            b: self.b.crop(width, height)?,
        })
    }
}
