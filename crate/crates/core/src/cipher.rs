//! The XOR frame cipher: one matrix per stream, one XOR per frame.
//!
//! Encryption and decryption are the same operation; the decryptor
//! rebuilds the matrix from the seed carried in the container header.
//! Reusing one pad for every frame mirrors the original design and is a
//! known weakness: XOR of any two ciphertext frames equals XOR of the
//! corresponding plaintext frames.

use std::io::{Read, Write};

use thiserror::Error;

use crate::chaos::ChaosWord;
pub use crate::keystream::EncryptionMatrix;
use crate::keystream::{build_matrix, build_matrix_dual, KeystreamError, KeystreamMode};
use crate::container::{
    read_frame, write_frame, write_header, read_header, ContainerError, ContainerHeader, Frame,
};
use crate::xor;

#[derive(Error, Debug)]
pub enum CipherError {
    #[error(transparent)]
    Container(#[from] ContainerError),
    #[error(transparent)]
    Keystream(#[from] KeystreamError),
    #[error("frame {index} has dims {got:?}, stream is {expected:?}")]
    FrameDimsMismatch {
        index: u64,
        expected: (u32, u32, u8),
        got: (u32, u32, u8),
    },
    #[error("container promised {expected} frames, stream held {got}")]
    FrameCountMismatch { expected: u64, got: u64 },
    #[error("stream truncated after {frames_recovered} complete frames: {source}")]
    TruncatedStream {
        frames_recovered: u64,
        source: ContainerError,
    },
}

/// Header plus the matrix built from it; applies the XOR to frames in
/// order and counts them.
pub struct StreamSession {
    header: ContainerHeader,
    matrix: EncryptionMatrix,
    frames_processed: u64,
}

impl StreamSession {
    /// Build the matrix once from the header's in-band seed.
    pub fn new(header: ContainerHeader, mode: KeystreamMode) -> Result<Self, CipherError> {
        header.validate()?;
        let matrix = build_matrix(mode, header.dims(), header.seed)?;
        Ok(StreamSession { header, matrix, frames_processed: 0 })
    }

    /// Dual-seed session; the header still carries only `seed_a`.
    pub fn with_dual_seed(
        header: ContainerHeader,
        mode: KeystreamMode,
        seed_b: ChaosWord,
    ) -> Result<Self, CipherError> {
        header.validate()?;
        let matrix = build_matrix_dual(mode, header.dims(), header.seed, seed_b)?;
        Ok(StreamSession { header, matrix, frames_processed: 0 })
    }

    pub fn header(&self) -> &ContainerHeader {
        &self.header
    }

    pub fn matrix(&self) -> &EncryptionMatrix {
        &self.matrix
    }

    pub fn frames_processed(&self) -> u64 {
        self.frames_processed
    }

    /// XOR one frame with the session matrix.
    pub fn apply(&mut self, frame: &Frame) -> Result<Frame, CipherError> {
        let out = xor_frame(frame, &self.matrix).map_err(|e| match e {
            CipherError::FrameDimsMismatch { expected, got, .. } => {
                CipherError::FrameDimsMismatch { index: self.frames_processed, expected, got }
            }
            other => other,
        })?;
        self.frames_processed += 1;
        Ok(out)
    }
}

/// Byte-wise XOR of a frame with the matrix; encryption and decryption
/// are this same involution.
pub fn xor_frame(frame: &Frame, matrix: &EncryptionMatrix) -> Result<Frame, CipherError> {
    let (fd, md) = (frame.dims(), matrix.dims());
    if fd != md {
        return Err(CipherError::FrameDimsMismatch {
            index: 0,
            expected: (md.height, md.width, md.channels.as_u8()),
            got: (fd.height, fd.width, fd.channels.as_u8()),
        });
    }
    let mut out = frame.clone();
    xor::xor_inplace(out.pixels_mut(), matrix.bytes());
    Ok(out)
}

/// Encrypt a frame stream into a container: header first, then each
/// XORed frame in input order. Returns the number of frames written.
///
/// A nonzero `header.frame_count` is validated against the actual count.
pub fn encrypt_stream<I, W>(
    frames: I,
    header: &ContainerHeader,
    mode: KeystreamMode,
    sink: W,
) -> Result<u64, CipherError>
where
    I: IntoIterator<Item = Result<Frame, ContainerError>>,
    W: Write,
{
    encrypt_stream_dual(frames, header, mode, None, sink)
}

/// [`encrypt_stream`] with an optional independent second-plane seed.
/// The container still records only the header seed.
pub fn encrypt_stream_dual<I, W>(
    frames: I,
    header: &ContainerHeader,
    mode: KeystreamMode,
    seed_b: Option<ChaosWord>,
    mut sink: W,
) -> Result<u64, CipherError>
where
    I: IntoIterator<Item = Result<Frame, ContainerError>>,
    W: Write,
{
    let mut session = match seed_b {
        Some(b) => StreamSession::with_dual_seed(*header, mode, b)?,
        None => StreamSession::new(*header, mode)?,
    };
    write_header(&mut sink, header)?;
    for frame in frames {
        let encrypted = session.apply(&frame?)?;
        write_frame(&mut sink, &encrypted)?;
    }
    let written = session.frames_processed();
    if header.frame_count != 0 && header.frame_count != written {
        return Err(CipherError::FrameCountMismatch {
            expected: header.frame_count,
            got: written,
        });
    }
    Ok(written)
}

/// Decrypt a container: read the header, rebuild the matrix from the
/// in-band seed, XOR each frame and hand it to `on_frame`. Returns the
/// header and the number of frames recovered.
pub fn decrypt_stream<R, F>(
    source: R,
    mode: KeystreamMode,
    on_frame: F,
) -> Result<(ContainerHeader, u64), CipherError>
where
    R: Read,
    F: FnMut(&Frame) -> Result<(), ContainerError>,
{
    decrypt_stream_dual(source, mode, None, on_frame)
}

/// [`decrypt_stream`] for containers written in dual-seed mode; the
/// second seed is supplied out-of-band.
pub fn decrypt_stream_dual<R, F>(
    mut source: R,
    mode: KeystreamMode,
    seed_b: Option<ChaosWord>,
    mut on_frame: F,
) -> Result<(ContainerHeader, u64), CipherError>
where
    R: Read,
    F: FnMut(&Frame) -> Result<(), ContainerError>,
{
    let header = read_header(&mut source)?;
    let mut session = match seed_b {
        Some(b) => StreamSession::with_dual_seed(header, mode, b)?,
        None => StreamSession::new(header, mode)?,
    };
    let dims = header.dims();
    loop {
        match read_frame(&mut source, dims) {
            Ok(Some(frame)) => {
                let plain = session.apply(&frame)?;
                on_frame(&plain)?;
            }
            Ok(None) => break,
            Err(e @ ContainerError::TruncatedFrame { .. }) => {
                return Err(CipherError::TruncatedStream {
                    frames_recovered: session.frames_processed(),
                    source: e,
                })
            }
            Err(e) => return Err(e.into()),
        }
    }
    let got = session.frames_processed();
    if header.frame_count != 0 && header.frame_count != got {
        return Err(CipherError::FrameCountMismatch { expected: header.frame_count, got });
    }
    Ok((header, got))
}
