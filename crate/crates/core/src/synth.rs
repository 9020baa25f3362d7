//! Deterministic synthetic frames: a smooth "natural" test image for the
//! metrics harness and cheap LCG-filled frames for benchmark workloads.
//! Integer arithmetic only, so every platform produces identical pixels.

use crate::container::Frame;
use crate::keystream::FrameDims;

/// Knuth's MMIX linear congruential generator.
#[derive(Clone, Copy, Debug)]
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }
}

/// Triangle wave with period `2p`, range `0..=p`.
fn tri(x: i64, p: i64) -> i64 {
    let m = x.rem_euclid(2 * p);
    if m < p {
        m
    } else {
        2 * p - m
    }
}

/// A smooth, strongly neighbor-correlated image: two overlaid triangle
/// waves per channel plus 3 bits of positional LCG noise. Adjacent-pixel
/// correlation is ≈0.998, like a natural photograph.
pub fn natural_frame(dims: FrameDims) -> Frame {
    let ch = dims.channels.count();
    let mut pixels = vec![0u8; dims.frame_len()];
    for i in 0..dims.height as i64 {
        for j in 0..dims.width as i64 {
            let base = (i * dims.width as i64 + j) as usize * ch;
            for c in 0..ch as i64 {
                let ramp = tri(i + 2 * j + 37 * c, 255);
                let hump = tri(3 * i + j + 91 * c, 101);
                let noise = {
                    let mut x = (i * dims.width as i64 + j + c) as u64;
                    x = x
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((x >> 33) % 8) as i64
                };
                let v = 32 + (ramp * 3) / 4 + hump / 3 + noise;
                pixels[base + c as usize] = v.clamp(0, 255) as u8;
            }
        }
    }
    Frame::new(dims, pixels).expect("generated payload matches dims")
}

/// Pseudo-random frame filled eight bytes per LCG step; `salt` picks the
/// stream.
pub fn lcg_frame(dims: FrameDims, salt: u64) -> Frame {
    let mut rng = Lcg(salt.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x5851f42d4c957f2d));
    let len = dims.frame_len();
    let mut pixels = Vec::with_capacity(len + 7);
    while pixels.len() < len {
        pixels.extend_from_slice(&rng.next_u64().to_le_bytes());
    }
    pixels.truncate(len);
    Frame::new(dims, pixels).expect("generated payload matches dims")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{correlation, ChannelMatrix, Direction};
    use crate::keystream::ChannelCount;

    #[test]
    fn natural_frame_is_strongly_correlated() {
        let dims = FrameDims::new(128, 128, ChannelCount::Rgb).unwrap();
        let frame = natural_frame(dims);
        for c in 0..3 {
            let m = ChannelMatrix::from_frame(&frame, c).unwrap();
            let rho = correlation(&m, Direction::Horizontal).unwrap();
            assert!(rho > 0.9, "channel {c}: rho = {rho}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let dims = FrameDims::new(16, 16, ChannelCount::Rgb).unwrap();
        assert_eq!(natural_frame(dims), natural_frame(dims));
        assert_eq!(lcg_frame(dims, 7), lcg_frame(dims, 7));
        assert_ne!(lcg_frame(dims, 7), lcg_frame(dims, 8));
    }
}
