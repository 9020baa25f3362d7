//! Binary container for encrypted frame streams, plus headerless raw
//! frame ingestion.
//!
//! Layout (all integers and the fps float little-endian, total 38 bytes):
//!
//! | offset | size | field                      |
//! |--------|------|----------------------------|
//! | 0      | 4    | magic `"CVS1"`             |
//! | 4      | 1    | version (0x01)             |
//! | 5      | 4    | height m (u32)             |
//! | 9      | 4    | width n (u32)              |
//! | 13     | 8    | fps (f64)                  |
//! | 21     | 8    | seed timestamp t (u64)     |
//! | 29     | 1    | channels (1 or 3)          |
//! | 30     | 8    | frame count (u64, 0 = unknown/streaming) |
//!
//! Frames follow as raw `m·n·channels`-byte payloads with no per-frame
//! framing. The seed travels in-band: whoever holds the file can decrypt
//! it. That is the scheme as designed; see the README.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::chaos::ChaosWord;
use crate::keystream::{ChannelCount, FrameDims, KeystreamError};

pub const MAGIC: [u8; 4] = *b"CVS1";
pub const FORMAT_VERSION: u8 = 1;
pub const HEADER_LEN: usize = 38;

/// Decryption key material carried in-band: dimensions, frame rate, seed
/// timestamp, channel count, and an optional frame count.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ContainerHeader {
    pub height: u32,
    pub width: u32,
    pub fps: f64,
    pub seed: ChaosWord,
    pub channels: ChannelCount,
    /// 0 means unknown / streaming.
    pub frame_count: u64,
}

impl ContainerHeader {
    pub fn new(
        dims: FrameDims,
        fps: f64,
        seed: ChaosWord,
        frame_count: u64,
    ) -> Result<Self, ContainerError> {
        let header = ContainerHeader {
            height: dims.height,
            width: dims.width,
            fps,
            seed,
            channels: dims.channels,
            frame_count,
        };
        header.validate()?;
        Ok(header)
    }

    pub fn dims(&self) -> FrameDims {
        FrameDims { height: self.height, width: self.width, channels: self.channels }
    }

    pub fn validate(&self) -> Result<(), ContainerError> {
        if self.height == 0 {
            return Err(ContainerError::InvalidDims { field: "height", value: 0 });
        }
        if self.width == 0 {
            return Err(ContainerError::InvalidDims { field: "width", value: 0 });
        }
        if !(self.fps.is_finite() && self.fps > 0.0) {
            return Err(ContainerError::InvalidFps { value: self.fps });
        }
        Ok(())
    }
}

/// One image: `m·n·channels` bytes, row-major, channel-interleaved
/// (pixel `(i,j)` occupies consecutive channel bytes).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Frame {
    dims: FrameDims,
    pixels: Vec<u8>,
}

impl Frame {
    pub fn new(dims: FrameDims, pixels: Vec<u8>) -> Result<Self, ContainerError> {
        dims.validate()?;
        if pixels.len() != dims.frame_len() {
            return Err(ContainerError::FrameSizeMismatch {
                expected: dims.frame_len(),
                got: pixels.len(),
            });
        }
        Ok(Frame { dims, pixels })
    }

    pub fn zeroed(dims: FrameDims) -> Result<Self, ContainerError> {
        Frame::new(dims, vec![0; dims.frame_len()])
    }

    pub fn dims(&self) -> FrameDims {
        self.dims
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [u8] {
        &mut self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: u32, col: u32, ch: usize) -> u8 {
        let c = self.dims.channels.count();
        self.pixels[(row as usize * self.dims.width as usize + col as usize) * c + ch]
    }

    /// Deinterleave one channel into a contiguous `m·n` byte plane.
    pub fn channel_plane(&self, ch: usize) -> Vec<u8> {
        let c = self.dims.channels.count();
        assert!(ch < c, "channel {ch} out of range for {c}-channel frame");
        self.pixels.iter().skip(ch).step_by(c).copied().collect()
    }
}

#[derive(Error, Debug)]
pub enum ContainerError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("bad magic {found:02x?}, expected {MAGIC:02x?}")]
    BadMagic { found: [u8; 4] },
    #[error("unsupported container version {found}, expected {FORMAT_VERSION}")]
    UnsupportedVersion { found: u8 },
    #[error("invalid header field {field} = {value}")]
    InvalidDims { field: &'static str, value: u64 },
    #[error("invalid frame rate {value}")]
    InvalidFps { value: f64 },
    #[error("header truncated: got {got} of {HEADER_LEN} bytes")]
    TruncatedHeader { got: usize },
    #[error("frame truncated: got {got} of {expected} bytes")]
    TruncatedFrame { expected: usize, got: usize },
    #[error("frame payload is {got} bytes, dimensions require {expected}")]
    FrameSizeMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Keystream(#[from] KeystreamError),
}

/// Serialize a header; returns the byte count written (always 38).
pub fn write_header(sink: &mut impl Write, header: &ContainerHeader) -> Result<usize, ContainerError> {
    header.validate()?;
    let mut buf = [0u8; HEADER_LEN];
    buf[0..4].copy_from_slice(&MAGIC);
    buf[4] = FORMAT_VERSION;
    buf[5..9].copy_from_slice(&header.height.to_le_bytes());
    buf[9..13].copy_from_slice(&header.width.to_le_bytes());
    buf[13..21].copy_from_slice(&header.fps.to_le_bytes());
    buf[21..29].copy_from_slice(&header.seed.get().to_le_bytes());
    buf[29] = header.channels.as_u8();
    buf[30..38].copy_from_slice(&header.frame_count.to_le_bytes());
    sink.write_all(&buf)?;
    Ok(HEADER_LEN)
}

/// Inverse of [`write_header`]; validates magic, version, and invariants.
pub fn read_header(source: &mut impl Read) -> Result<ContainerHeader, ContainerError> {
    let mut buf = [0u8; HEADER_LEN];
    let got = read_up_to(source, &mut buf)?;
    if got < HEADER_LEN {
        return Err(ContainerError::TruncatedHeader { got });
    }
    if buf[0..4] != MAGIC {
        return Err(ContainerError::BadMagic { found: buf[0..4].try_into().unwrap() });
    }
    if buf[4] != FORMAT_VERSION {
        return Err(ContainerError::UnsupportedVersion { found: buf[4] });
    }
    let channels = ChannelCount::try_from(buf[29])
        .map_err(|_| ContainerError::InvalidDims { field: "channels", value: buf[29] as u64 })?;
    let header = ContainerHeader {
        height: u32::from_le_bytes(buf[5..9].try_into().unwrap()),
        width: u32::from_le_bytes(buf[9..13].try_into().unwrap()),
        fps: f64::from_le_bytes(buf[13..21].try_into().unwrap()),
        seed: ChaosWord(u64::from_le_bytes(buf[21..29].try_into().unwrap())),
        channels,
        frame_count: u64::from_le_bytes(buf[30..38].try_into().unwrap()),
    };
    header.validate()?;
    Ok(header)
}

/// Write a frame's raw pixel bytes; returns `m·n·channels`.
pub fn write_frame(sink: &mut impl Write, frame: &Frame) -> Result<usize, ContainerError> {
    sink.write_all(&frame.pixels)?;
    Ok(frame.pixels.len())
}

/// Read exactly one frame. Clean end-of-stream before any byte yields
/// `None`; a partial frame is an error. Never reads past the frame
/// boundary.
pub fn read_frame(
    source: &mut impl Read,
    dims: FrameDims,
) -> Result<Option<Frame>, ContainerError> {
    dims.validate()?;
    let len = dims.frame_len();
    let mut pixels = vec![0u8; len];
    let got = read_up_to(source, &mut pixels)?;
    if got == 0 {
        return Ok(None);
    }
    if got < len {
        return Err(ContainerError::TruncatedFrame { expected: len, got });
    }
    Ok(Some(Frame { dims, pixels }))
}

/// Iterator over headerless raw frames of fixed dimensions.
pub struct RawFrameReader<R> {
    source: R,
    dims: FrameDims,
    done: bool,
}

impl<R: Read> RawFrameReader<R> {
    pub fn new(source: R, dims: FrameDims) -> Self {
        RawFrameReader { source, dims, done: false }
    }
}

impl<R: Read> Iterator for RawFrameReader<R> {
    type Item = Result<Frame, ContainerError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match read_frame(&mut self.source, self.dims) {
            Ok(Some(frame)) => Some(Ok(frame)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

/// Fill `buf` as far as the source allows; short only at end of stream.
fn read_up_to(source: &mut impl Read, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match source.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}
