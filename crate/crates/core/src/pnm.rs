//! Binary netpbm codec for the plaintext test corpus: P5 (grayscale) and
//! P6 (RGB), maxval 255 only.

use std::io::{self, Read, Write};

use thiserror::Error;

use crate::container::Frame;
use crate::keystream::{ChannelCount, FrameDims};

#[derive(Error, Debug)]
pub enum PnmError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("unsupported netpbm format: {detail}")]
    UnsupportedFormat { detail: String },
    #[error("malformed netpbm header: {detail}")]
    MalformedHeader { detail: String },
}

/// Parse a binary PGM (P5) or PPM (P6) with maxval 255 into a frame.
/// `#` comments and arbitrary whitespace in the header are accepted.
pub fn ingest_pnm(source: &mut impl Read) -> Result<Frame, PnmError> {
    let mut magic = [0u8; 2];
    source.read_exact(&mut magic).map_err(|e| malformed_on_eof(e, "missing magic"))?;
    let channels = match &magic {
        b"P5" => ChannelCount::Gray,
        b"P6" => ChannelCount::Rgb,
        b"P1" | b"P2" | b"P3" | b"P4" | b"P7" => {
            return Err(PnmError::UnsupportedFormat {
                detail: format!("{} (only binary P5/P6 are supported)",
                                String::from_utf8_lossy(&magic)),
            })
        }
        _ => {
            return Err(PnmError::MalformedHeader {
                detail: format!("magic {:02x?} is not a netpbm signature", magic),
            })
        }
    };
    let width = read_header_number(source, "width")?;
    let height = read_header_number(source, "height")?;
    let maxval = read_header_number(source, "maxval")?;
    if maxval != 255 {
        return Err(PnmError::UnsupportedFormat { detail: format!("maxval {maxval} (only 255)") });
    }
    if width == 0 || height == 0 || width > u32::MAX as u64 || height > u32::MAX as u64 {
        return Err(PnmError::MalformedHeader {
            detail: format!("dimensions {width}x{height} out of range"),
        });
    }
    let dims = FrameDims { height: height as u32, width: width as u32, channels };
    let mut pixels = vec![0u8; dims.frame_len()];
    source
        .read_exact(&mut pixels)
        .map_err(|e| malformed_on_eof(e, "pixel payload shorter than header promises"))?;
    Frame::new(dims, pixels)
        .map_err(|e| PnmError::MalformedHeader { detail: e.to_string() })
}

/// Emit P5 or P6 by channel count. Header fields are separated by single
/// spaces with a single newline before the payload.
pub fn emit_pnm(sink: &mut impl Write, frame: &Frame) -> Result<usize, PnmError> {
    let dims = frame.dims();
    let magic = match dims.channels {
        ChannelCount::Gray => "P5",
        ChannelCount::Rgb => "P6",
    };
    let header = format!("{magic} {} {} 255\n", dims.width, dims.height);
    sink.write_all(header.as_bytes())?;
    sink.write_all(frame.pixels())?;
    Ok(header.len() + frame.pixels().len())
}

/// Read one whitespace-delimited decimal token, skipping `#` comments.
fn read_header_number(source: &mut impl Read, field: &str) -> Result<u64, PnmError> {
    let mut value: Option<u64> = None;
    let mut in_comment = false;
    loop {
        let mut byte = [0u8; 1];
        match source.read(&mut byte) {
            Ok(0) => {
                return value.ok_or_else(|| PnmError::MalformedHeader {
                    detail: format!("end of stream while reading {field}"),
                })
            }
            Ok(_) => {}
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e.into()),
        }
        let b = byte[0];
        if in_comment {
            if b == b'\n' {
                in_comment = false;
            }
            continue;
        }
        match b {
            b'#' if value.is_none() => in_comment = true,
            b'0'..=b'9' => {
                let digit = (b - b'0') as u64;
                value = Some(match value {
                    Some(v) if v > (u64::MAX - digit) / 10 => {
                        return Err(PnmError::MalformedHeader {
                            detail: format!("{field} overflows"),
                        })
                    }
                    Some(v) => v * 10 + digit,
                    None => digit,
                });
            }
            _ if b.is_ascii_whitespace() => {
                if value.is_some() {
                    // single whitespace byte terminates the token; for the
                    // maxval token it is the separator before the payload
                    return Ok(value.unwrap());
                }
            }
            _ => {
                return Err(PnmError::MalformedHeader {
                    detail: format!("unexpected byte 0x{b:02x} in {field}"),
                })
            }
        }
    }
}

fn malformed_on_eof(e: io::Error, detail: &str) -> PnmError {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        PnmError::MalformedHeader { detail: detail.to_string() }
    } else {
        PnmError::Io(e)
    }
}
