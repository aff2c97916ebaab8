use std::path::PathBuf;

/// Errors returned by every fallible operation in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("image must have at least one pixel")]
    EmptyImage,

    #[error("dimension mismatch: expected {expected_width}x{expected_height}, got {actual_width}x{actual_height}")]
    DimensionMismatch {
        expected_width: u32,
        expected_height: u32,
        actual_width: u32,
        actual_height: u32,
    },

    #[error("bit-plane depth {0} is not supported; only 8-plane slicing is defined")]
    UnsupportedDepth(u32),

    #[error("bit plane element {0} is neither 0 nor 1")]
    InvalidBit(u8),

    #[error("payload {payload_width}x{payload_height} does not fit cover {cover_width}x{cover_height}")]
    PayloadTooLarge {
        cover_width: u32,
        cover_height: u32,
        payload_width: u32,
        payload_height: u32,
    },

    #[error("requested region {requested_width}x{requested_height} exceeds image {available_width}x{available_height}")]
    RegionTooLarge {
        requested_width: u32,
        requested_height: u32,
        available_width: u32,
        available_height: u32,
    },

    #[error("LSB depth {0} is out of range; k must be between 1 and 8")]
    InvalidLsbDepth(u8),

    #[error("secret of {bits} bits exceeds channel capacity of {capacity} bits")]
    SecretTooLarge { bits: usize, capacity: usize },

    #[error("requested {bits} bits but the channel only carries {capacity} bits")]
    RequestTooLarge { bits: usize, capacity: usize },

    #[error("payload size of {0} bits is not a positive multiple of 8")]
    InvalidPayloadBits(u64),

    #[error("no cover images found in {}", dir.display())]
    NoCovers { dir: PathBuf },

    #[error("unknown scheme {0:?}; expected \"xor\" or \"lsb:<k>\"")]
    InvalidScheme(String),

    #[error("{}: {reason}", path.display())]
    Format { path: PathBuf, reason: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, reason: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
