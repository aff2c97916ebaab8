//! Bit-plane XOR image steganography.
//!
//! An RGB cover image hides a grayscale payload of up to the same size:
//! every payload pixel's eight bits are XOR-combined with mid-level bit
//! planes of the cover and stored in the cover's low planes, 8 bits per
//! cover pixel. Recovery needs only the stego image. See the `codec`
//! module for the plane schedule, `metrics` for MSE/PSNR and the
//! relative-entropy detectability measure, `lsb` for the k-LSB baseline,
//! and `imageio` for lossless PGM/PPM/PNG files.
//!
//! ```
//! use xorstego::{codec, GrayImage, RgbImage};
//!
//! let cover = RgbImage::from_fn(64, 64, |x, y| {
//!     ((x * 3) as u8, (y * 5) as u8, (x + y) as u8)
//! })?;
//! let payload = GrayImage::from_fn(32, 32, |x, y| (x * 8 + y) as u8)?;
//!
//! let stego = codec::embed(&cover, &payload)?;
//! let recovered = codec::extract(stego.as_image(), 32, 32)?;
//! assert_eq!(recovered, payload);
//! # Ok::<(), xorstego::Error>(())
//! ```

pub mod bench;
pub mod cli;
pub mod codec;
mod error;
pub mod imageio;
pub mod lsb;
pub mod metrics;
pub mod planes;

pub use error::{Error, Result};
pub use planes::{BitPlane, GrayImage, PlaneStack, RgbImage};

// The guide in book/ doubles as a test suite: every Rust snippet in its
// chapters compiles and runs under `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/bit-planes.md")]
    pub struct BitPlanesChapter;

    #[doc = include_str!("../../../book/src/embedding.md")]
    pub struct EmbeddingChapter;

    #[doc = include_str!("../../../book/src/recovery.md")]
    pub struct RecoveryChapter;

    #[doc = include_str!("../../../book/src/metrics.md")]
    pub struct MetricsChapter;

    #[doc = include_str!("../../../book/src/baseline-and-capacity.md")]
    pub struct BaselineChapter;
}
