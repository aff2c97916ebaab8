//! Embedding and recovery of a grayscale payload in an RGB cover.
//!
//! The embedder XORs mid-level bit planes of the cover with high-level bit
//! planes of the payload and stores the results in the cover's low planes,
//! so the keying planes survive embedding and the receiver needs only the
//! stego image:
//!
//! | channel | stored plane | = key plane XOR payload plane |
//! |---------|--------------|-------------------------------|
//! | R       | 6, 7, 8      | R5^P1, R4^P2, R3^P3           |
//! | G       | 6, 7, 8      | G5^P4, G4^P5, G3^P6           |
//! | B       | 7, 8         | B6^P7, B5^P8                  |
//!
//! Recovery XORs each stored plane with its key plane: for example
//! `R5 ^ (R5 ^ P1) = P1`. All eight payload bits land in one cover pixel,
//! so the payload maps onto the top-left region of the cover pixel for
//! pixel and the rest of the cover passes through untouched. The cover is
//! not reconstructible from the stego image.

use crate::error::{Error, Result};
use crate::planes::{BitPlane, GrayImage, PlaneStack, RgbImage, PLANE_COUNT};

/// Per-channel plane schedule: (stored plane, key plane, payload plane).
const RED_SCHEDULE: [(u8, u8, u8); 3] = [(6, 5, 1), (7, 4, 2), (8, 3, 3)];
const GREEN_SCHEDULE: [(u8, u8, u8); 3] = [(6, 5, 4), (7, 4, 5), (8, 3, 6)];
const BLUE_SCHEDULE: [(u8, u8, u8); 2] = [(7, 6, 7), (8, 5, 8)];

/// Validated placement of a payload inside a cover: the payload is anchored
/// at the top-left and must fit in both dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbedPlan {
    cover_width: u32,
    cover_height: u32,
    payload_width: u32,
    payload_height: u32,
}

impl EmbedPlan {
    pub fn new(cover_dims: (u32, u32), payload_dims: (u32, u32)) -> Result<Self> {
        let (cover_width, cover_height) = cover_dims;
        let (payload_width, payload_height) = payload_dims;
        if payload_width > cover_width || payload_height > cover_height {
            return Err(Error::PayloadTooLarge {
                cover_width,
                cover_height,
                payload_width,
                payload_height,
            });
        }
        Ok(EmbedPlan {
            cover_width,
            cover_height,
            payload_width,
            payload_height,
        })
    }

    pub fn cover_dims(&self) -> (u32, u32) {
        (self.cover_width, self.cover_height)
    }

    pub fn payload_dims(&self) -> (u32, u32) {
        (self.payload_width, self.payload_height)
    }
}

/// The cover after embedding. Same dimensions as the cover; R and G planes
/// 1-5 and B planes 1-6 are identical to the cover's everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StegoImage {
    image: RgbImage,
}

impl StegoImage {
    pub fn as_image(&self) -> &RgbImage {
        &self.image
    }

    pub fn into_inner(self) -> RgbImage {
        self.image
    }
}

fn embed_channel(
    channel: &GrayImage,
    payload_planes: &PlaneStack,
    schedule: &[(u8, u8, u8)],
    (pw, ph): (u32, u32),
) -> Result<GrayImage> {
    let mut planes = channel.crop(pw, ph)?.bit_planes(PLANE_COUNT as u32)?;
    for &(stored, key, payload) in schedule {
        let mixed = planes.plane(key).xor(payload_planes.plane(payload))?;
        planes.set_plane(stored, mixed)?;
    }
    let mut out = channel.clone();
    out.write_top_left(&planes.to_gray());
    Ok(out)
}

/// Hides `payload` in the low bit planes of `cover`. The payload must fit
/// within the cover (`PayloadTooLarge` otherwise); it occupies the top-left
/// region and every other pixel is passed through bit for bit.
pub fn embed(cover: &RgbImage, payload: &GrayImage) -> Result<StegoImage> {
    let plan = EmbedPlan::new(
        (cover.width(), cover.height()),
        (payload.width(), payload.height()),
    )?;
    let dims = plan.payload_dims();
    let payload_planes = payload.bit_planes(PLANE_COUNT as u32)?;
    let (r, g, b) = cover.channels();
    let image = RgbImage::new(
        embed_channel(r, &payload_planes, &RED_SCHEDULE, dims)?,
        embed_channel(g, &payload_planes, &GREEN_SCHEDULE, dims)?,
        embed_channel(b, &payload_planes, &BLUE_SCHEDULE, dims)?,
    )?;
    Ok(StegoImage { image })
}

fn recover_planes(
    channel_planes: &PlaneStack,
    schedule: &[(u8, u8, u8)],
    out: &mut Vec<BitPlane>,
) -> Result<()> {
    for &(stored, key, _) in schedule {
        out.push(channel_planes.plane(key).xor(channel_planes.plane(stored))?);
    }
    Ok(())
}

/// Recovers a `width` x `height` payload from the top-left region of a
/// stego image. No cover image is needed: each payload plane is the XOR of
/// a stored plane with its untouched key plane.
///
/// Asking for a region larger than the stego image is an error; asking for
/// a region beyond the truly embedded payload yields XOR noise there rather
/// than an error, since the scheme carries no length header.
pub fn extract(stego: &RgbImage, width: u32, height: u32) -> Result<GrayImage> {
    if width > stego.width() || height > stego.height() {
        return Err(Error::RegionTooLarge {
            requested_width: width,
            requested_height: height,
            available_width: stego.width(),
            available_height: stego.height(),
        });
    }
    let region = stego.crop(width, height)?;
    let r = region.r().bit_planes(PLANE_COUNT as u32)?;
    let g = region.g().bit_planes(PLANE_COUNT as u32)?;
    let b = region.b().bit_planes(PLANE_COUNT as u32)?;

    // Payload planes 1..=8 in order: three from R, three from G, two from B.
    let mut recovered = Vec::with_capacity(PLANE_COUNT as usize);
    recover_planes(&r, &RED_SCHEDULE, &mut recovered)?;
    recover_planes(&g, &GREEN_SCHEDULE, &mut recovered)?;
    recover_planes(&b, &BLUE_SCHEDULE, &mut recovered)?;
    let stack = PlaneStack::from_planes(
        recovered
            .try_into()
            .expect("schedules produce exactly eight planes"),
    )?;
    Ok(stack.to_gray())
}

/// Embedding capacity of a cover in bits: 8 payload bits ride in every
/// cover pixel.
pub fn capacity_bits(cover: &RgbImage) -> u64 {
    cover.width() as u64 * cover.height() as u64 * 8
}
