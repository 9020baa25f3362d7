//! Statistical evaluation harness: entropy, histograms, adjacent-pixel
//! correlation, NPCR/UACI differential and key-sensitivity protocols, and
//! bitstream export for external randomness suites.
//!
//! Every metric is a pure function evaluated in double precision; the
//! parallel feature only changes scheduling, never results.

use std::io::{self, Write};

use statrs::function::erf::erfc;
use thiserror::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::chaos::ChaosWord;
use crate::cipher::{xor_frame, CipherError};
use crate::container::Frame;
use crate::keystream::{build_matrix, KeystreamError, KeystreamMode};
use crate::report::Report;
use crate::xor;

/// One deinterleaved channel as a row-major byte matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChannelMatrix {
    pub rows: u32,
    pub cols: u32,
    pub data: Vec<u8>,
}

impl ChannelMatrix {
    pub fn new(rows: u32, cols: u32, data: Vec<u8>) -> Result<Self, AnalysisError> {
        if rows == 0 || cols == 0 || data.is_empty() {
            return Err(AnalysisError::EmptyInput);
        }
        if data.len() != rows as usize * cols as usize {
            return Err(AnalysisError::ShapeMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(ChannelMatrix { rows, cols, data })
    }

    pub fn from_frame(frame: &Frame, channel: usize) -> Result<Self, AnalysisError> {
        let d = frame.dims();
        ChannelMatrix::new(d.height, d.width, frame.channel_plane(channel))
    }

    #[inline]
    fn at(&self, i: u32, j: u32) -> u8 {
        self.data[i as usize * self.cols as usize + j as usize]
    }

    fn len(&self) -> usize {
        self.data.len()
    }
}

/// Adjacent-pixel directions; diagonal means the down-right neighbor.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] =
        [Direction::Horizontal, Direction::Vertical, Direction::Diagonal];
}

#[derive(Error, Debug)]
pub enum AnalysisError {
    #[error("empty input")]
    EmptyInput,
    #[error("matrix shape {rows}x{cols} does not match {len} bytes")]
    ShapeMismatch { rows: u32, cols: u32, len: usize },
    #[error("matrices have different shapes: {a:?} vs {b:?}")]
    DimsMismatch { a: (u32, u32), b: (u32, u32) },
    #[error("no adjacent pixel pairs along {0:?}")]
    NoPairs(Direction),
    #[error("degenerate variance: the {side} marginal is constant")]
    DegenerateVariance { side: &'static str },
    #[error("need at least {min} bits, got {got}")]
    TooFewBits { min: usize, got: usize },
    #[error("bitstream export needs {needed} bytes, only {available} available")]
    InsufficientData { needed: usize, available: usize },
    #[error("seed bit index {got} is out of 0..=63")]
    BitIndexOutOfRange { got: u32 },
    #[error(transparent)]
    Cipher(#[from] CipherError),
    #[error(transparent)]
    Keystream(#[from] KeystreamError),
}

/// 256-bin value histogram.
pub fn histogram(channel: &ChannelMatrix) -> [u64; 256] {
    let mut bins = [0u64; 256];
    for &b in &channel.data {
        bins[b as usize] += 1;
    }
    bins
}

/// Shannon entropy of the byte-value distribution, log base 2. Zero-count
/// bins contribute zero; the result lies in [0, 8].
pub fn entropy(channel: &ChannelMatrix) -> Result<f64, AnalysisError> {
    let bins = histogram(channel);
    let total = channel.len() as f64;
    let mut h = 0.0;
    for &count in &bins {
        if count > 0 {
            let p = count as f64 / total;
            h -= p * p.log2();
        }
    }
    Ok(h)
}

/// Chi-square statistic of a histogram against the uniform distribution
/// (255 degrees of freedom).
pub fn chi_square_uniform(hist: &[u64; 256]) -> f64 {
    let total: u64 = hist.iter().sum();
    let expected = total as f64 / 256.0;
    hist.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum()
}

/// Pearson correlation over all adjacent pixel pairs in one direction
/// (u = pixel, v = its neighbor), two-pass in double precision.
pub fn correlation(channel: &ChannelMatrix, direction: Direction) -> Result<f64, AnalysisError> {
    let (rows, cols) = (channel.rows, channel.cols);
    let (row_end, col_end) = match direction {
        Direction::Horizontal => (rows, cols.saturating_sub(1)),
        Direction::Vertical => (rows.saturating_sub(1), cols),
        Direction::Diagonal => (rows.saturating_sub(1), cols.saturating_sub(1)),
    };
    if row_end == 0 || col_end == 0 {
        return Err(AnalysisError::NoPairs(direction));
    }
    let (di, dj) = match direction {
        Direction::Horizontal => (0, 1),
        Direction::Vertical => (1, 0),
        Direction::Diagonal => (1, 1),
    };
    let m = row_end as f64 * col_end as f64;

    let mut sum_u = 0.0;
    let mut sum_v = 0.0;
    for i in 0..row_end {
        for j in 0..col_end {
            sum_u += channel.at(i, j) as f64;
            sum_v += channel.at(i + di, j + dj) as f64;
        }
    }
    let mean_u = sum_u / m;
    let mean_v = sum_v / m;

    let mut var_u = 0.0;
    let mut var_v = 0.0;
    let mut cov = 0.0;
    for i in 0..row_end {
        for j in 0..col_end {
            let du = channel.at(i, j) as f64 - mean_u;
            let dv = channel.at(i + di, j + dj) as f64 - mean_v;
            var_u += du * du;
            var_v += dv * dv;
            cov += du * dv;
        }
    }
    if var_u == 0.0 {
        return Err(AnalysisError::DegenerateVariance { side: "u" });
    }
    if var_v == 0.0 {
        return Err(AnalysisError::DegenerateVariance { side: "v" });
    }
    Ok((cov / m) / ((var_u / m).sqrt() * (var_v / m).sqrt()))
}

/// NPCR and UACI percentages between two equal-shaped matrices, with the
/// maximum intensity T = 255.
pub fn npcr_uaci(a: &ChannelMatrix, b: &ChannelMatrix) -> Result<(f64, f64), AnalysisError> {
    if (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(AnalysisError::DimsMismatch {
            a: (a.rows, a.cols),
            b: (b.rows, b.cols),
        });
    }
    let m = a.len() as f64;
    let mut changed = 0u64;
    let mut sum_delta = 0u64;
    for (&x, &y) in a.data.iter().zip(&b.data) {
        let delta = x.abs_diff(y) as u64;
        changed += (delta != 0) as u64;
        sum_delta += delta;
    }
    Ok((100.0 * changed as f64 / m, 100.0 * sum_delta as f64 / (255.0 * m)))
}

/// Correlation triple of one channel.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ChannelCorrelations {
    pub horizontal: f64,
    pub vertical: f64,
    pub diagonal: f64,
}

impl ChannelCorrelations {
    pub fn get(&self, direction: Direction) -> f64 {
        match direction {
            Direction::Horizontal => self.horizontal,
            Direction::Vertical => self.vertical,
            Direction::Diagonal => self.diagonal,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.horizontal.abs().max(self.vertical.abs()).max(self.diagonal.abs())
    }
}

/// Per-channel NPCR/UACI of a ciphertext pair.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PairMetrics {
    pub npcr: Vec<f64>,
    pub uaci: Vec<f64>,
}

/// The full per-frame metric set, plus pair metrics when two frames were
/// compared.
#[derive(Clone, PartialEq, Debug)]
pub struct MetricsReport {
    pub entropy: Vec<f64>,
    pub histogram: Vec<[u64; 256]>,
    pub correlation: Vec<ChannelCorrelations>,
    pub npcr: Vec<f64>,
    pub uaci: Vec<f64>,
}

impl MetricsReport {
    pub fn channel_count(&self) -> usize {
        self.entropy.len()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for (c, e) in self.entropy.iter().enumerate() {
            r.push_f64(format!("entropy.{c}"), *e);
        }
        for (c, corr) in self.correlation.iter().enumerate() {
            r.push_f64(format!("correlation.horizontal.{c}"), corr.horizontal);
            r.push_f64(format!("correlation.vertical.{c}"), corr.vertical);
            r.push_f64(format!("correlation.diagonal.{c}"), corr.diagonal);
        }
        for (c, &v) in self.npcr.iter().enumerate() {
            r.push_f64(format!("npcr.{c}"), v);
        }
        for (c, &v) in self.uaci.iter().enumerate() {
            r.push_f64(format!("uaci.{c}"), v);
        }
        for (c, h) in self.histogram.iter().enumerate() {
            r.push(format!("chi_square.{c}"), format!("{:.6}", chi_square_uniform(h)));
            let csv: Vec<String> = h.iter().map(|v| v.to_string()).collect();
            r.push(format!("histogram.{c}"), csv.join(","));
        }
        r
    }
}

fn channel_stats(frame: &Frame, c: usize) -> Result<(f64, [u64; 256], ChannelCorrelations), AnalysisError> {
    let m = ChannelMatrix::from_frame(frame, c)?;
    Ok((
        entropy(&m)?,
        histogram(&m),
        ChannelCorrelations {
            horizontal: correlation(&m, Direction::Horizontal)?,
            vertical: correlation(&m, Direction::Vertical)?,
            diagonal: correlation(&m, Direction::Diagonal)?,
        },
    ))
}

/// Entropy, histogram, and correlation triple for every channel of a
/// frame. Channels are evaluated in parallel when the feature allows;
/// the report is identical either way.
pub fn frame_metrics(frame: &Frame) -> Result<MetricsReport, AnalysisError> {
    let channels = frame.dims().channels.count();
    #[cfg(feature = "parallel")]
    let stats: Result<Vec<_>, AnalysisError> =
        (0..channels).into_par_iter().map(|c| channel_stats(frame, c)).collect();
    #[cfg(not(feature = "parallel"))]
    let stats: Result<Vec<_>, AnalysisError> =
        (0..channels).map(|c| channel_stats(frame, c)).collect();
    let stats = stats?;
    Ok(MetricsReport {
        entropy: stats.iter().map(|s| s.0).collect(),
        histogram: stats.iter().map(|s| s.1).collect(),
        correlation: stats.iter().map(|s| s.2).collect(),
        npcr: Vec::new(),
        uaci: Vec::new(),
    })
}

/// Per-channel NPCR/UACI between two frames of equal dimensions.
pub fn compare_frames(a: &Frame, b: &Frame) -> Result<PairMetrics, AnalysisError> {
    if a.dims() != b.dims() {
        return Err(AnalysisError::DimsMismatch {
            a: (a.dims().height, a.dims().width),
            b: (b.dims().height, b.dims().width),
        });
    }
    let mut pair = PairMetrics::default();
    for c in 0..a.dims().channels.count() {
        let (n, u) =
            npcr_uaci(&ChannelMatrix::from_frame(a, c)?, &ChannelMatrix::from_frame(b, c)?)?;
        pair.npcr.push(n);
        pair.uaci.push(u);
    }
    Ok(pair)
}

/// Both differential protocols side by side.
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialReport {
    /// Same seed, plaintexts differing in one bit at pixel (0,0), channel
    /// 0. A pure XOR pad has no diffusion, so exactly one byte changes.
    pub plaintext_flip: PairMetrics,
    /// Same plaintext, seeds differing in the lowest bit. This is the
    /// protocol that produces near-theoretical NPCR/UACI.
    pub seed_flip: PairMetrics,
}

impl DifferentialReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for (c, &v) in self.plaintext_flip.npcr.iter().enumerate() {
            r.push(format!("plaintext_flip.npcr.{c}"), format!("{v:.8}"));
        }
        for (c, &v) in self.plaintext_flip.uaci.iter().enumerate() {
            r.push(format!("plaintext_flip.uaci.{c}"), format!("{v:.8}"));
        }
        for (c, &v) in self.seed_flip.npcr.iter().enumerate() {
            r.push_f64(format!("seed_flip.npcr.{c}"), v);
        }
        for (c, &v) in self.seed_flip.uaci.iter().enumerate() {
            r.push_f64(format!("seed_flip.uaci.{c}"), v);
        }
        r
    }
}

/// Run both differential protocols for one frame and seed.
pub fn differential_test(
    frame: &Frame,
    seed: ChaosWord,
    mode: KeystreamMode,
) -> Result<DifferentialReport, AnalysisError> {
    let dims = frame.dims();
    let matrix = build_matrix(mode, dims, seed)?;
    let c1 = xor_frame(frame, &matrix)?;

    let mut altered = frame.clone();
    altered.pixels_mut()[0] ^= 0x01; // LSB of (0, 0), channel 0
    let c2 = xor_frame(&altered, &matrix)?;

    let matrix_flipped = build_matrix(mode, dims, ChaosWord(seed.get() ^ 1))?;
    let c3 = xor_frame(frame, &matrix_flipped)?;

    Ok(DifferentialReport {
        plaintext_flip: compare_frames(&c1, &c2)?,
        seed_flip: compare_frames(&c1, &c3)?,
    })
}

/// Key-sensitivity outcome: ciphertext pair metrics, their XOR-difference
/// image, and the ones density of the pad difference.
#[derive(Clone, PartialEq, Debug)]
pub struct KeySensitivityReport {
    pub pair: PairMetrics,
    pub difference: Frame,
    pub pad_ones_fraction: f64,
}

impl KeySensitivityReport {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        for (c, &v) in self.pair.npcr.iter().enumerate() {
            r.push_f64(format!("npcr.{c}"), v);
        }
        for (c, &v) in self.pair.uaci.iter().enumerate() {
            r.push_f64(format!("uaci.{c}"), v);
        }
        r.push_f64("pad_ones_fraction", self.pad_ones_fraction);
        r
    }
}

/// Encrypt under `seed` and under `seed` with one bit flipped; report the
/// ciphertext-pair NPCR/UACI and the difference image.
pub fn key_sensitivity_test(
    frame: &Frame,
    seed: ChaosWord,
    bit_index: u32,
    mode: KeystreamMode,
) -> Result<KeySensitivityReport, AnalysisError> {
    if bit_index > 63 {
        return Err(AnalysisError::BitIndexOutOfRange { got: bit_index });
    }
    let dims = frame.dims();
    let (m1, m2) = xor::join2(
        || build_matrix(mode, dims, seed),
        || build_matrix(mode, dims, ChaosWord(seed.get() ^ (1u64 << bit_index))),
    );
    let (m1, m2) = (m1?, m2?);
    let c1 = xor_frame(frame, &m1)?;
    let c2 = xor_frame(frame, &m2)?;

    let mut diff_pixels = c1.pixels().to_vec();
    xor::xor_inplace(&mut diff_pixels, c2.pixels());
    let difference = Frame::new(dims, diff_pixels).map_err(CipherError::from)?;

    let ones: u64 = m1
        .bytes()
        .iter()
        .zip(m2.bytes())
        .map(|(a, b)| (a ^ b).count_ones() as u64)
        .sum();
    let pad_ones_fraction = ones as f64 / (8.0 * m1.bytes().len() as f64);

    Ok(KeySensitivityReport {
        pair: compare_frames(&c1, &c2)?,
        difference,
        pad_ones_fraction,
    })
}

/// Write `ceil(bit_count/8)` source bytes for an external randomness
/// suite. Bit order within bytes is LSB-first, matching the keystream's
/// word slicing.
pub fn export_bitstream(
    source: &[u8],
    sink: &mut impl Write,
    bit_count: usize,
) -> Result<usize, AnalysisError> {
    let needed = bit_count.div_ceil(8);
    if needed > source.len() {
        return Err(AnalysisError::InsufficientData { needed, available: source.len() });
    }
    sink.write_all(&source[..needed]).map_err(|e| AnalysisError::Cipher(io_err(e)))?;
    Ok(needed)
}

fn io_err(e: io::Error) -> CipherError {
    CipherError::Container(e.into())
}

/// Frequency and runs statistics with normal-approximation p-values, the
/// local proxy for the external suites. Bits are read LSB-first.
pub fn monobit_and_runs(bytes: &[u8]) -> Result<(f64, f64), AnalysisError> {
    let n = bytes.len() * 8;
    if n < 100 {
        return Err(AnalysisError::TooFewBits { min: 100, got: n });
    }
    let nf = n as f64;
    let ones: u64 = bytes.iter().map(|b| b.count_ones() as u64).sum();

    // monobit: S = ones - zeros
    let s = 2.0 * ones as f64 - nf;
    let p_monobit = erfc((s.abs() / nf.sqrt()) / std::f64::consts::SQRT_2);

    // runs prerequisite: the frequency test must not already fail wildly
    let pi = ones as f64 / nf;
    let tau = 2.0 / nf.sqrt();
    if (pi - 0.5).abs() >= tau {
        return Ok((p_monobit, 0.0));
    }

    // count bit transitions across the whole stream, LSB-first; priming
    // `prev` with the first bit makes the initial comparison a no-op
    let mut transitions = 0u64;
    let mut prev = bytes[0] & 1;
    for &byte in bytes {
        for h in 0..8 {
            let bit = (byte >> h) & 1;
            transitions += (bit != prev) as u64;
            prev = bit;
        }
    }
    let v = transitions as f64 + 1.0;
    let denom = 2.0 * (2.0 * nf).sqrt() * pi * (1.0 - pi);
    let p_runs = erfc((v - 2.0 * nf * pi * (1.0 - pi)).abs() / denom);
    Ok((p_monobit, p_runs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keystream::{combined_stream, ChannelCount, FrameDims};

    fn mat(rows: u32, cols: u32, data: Vec<u8>) -> ChannelMatrix {
        ChannelMatrix::new(rows, cols, data).unwrap()
    }

    #[test]
    fn entropy_of_constant_channel_is_zero() {
        assert_eq!(entropy(&mat(2, 2, vec![7; 4])).unwrap(), 0.0);
    }

    #[test]
    fn entropy_of_exactly_uniform_channel_is_eight() {
        let data: Vec<u8> = (0..=255).flat_map(|v| [v; 4]).collect();
        assert_eq!(entropy(&mat(32, 32, data)).unwrap(), 8.0);
    }

    #[test]
    fn entropy_is_permutation_invariant() {
        let data: Vec<u8> = (0..64).map(|i| (i * i % 251) as u8).collect();
        let e1 = entropy(&mat(8, 8, data.clone())).unwrap();
        let mut shuffled = data;
        shuffled.reverse();
        shuffled.swap(0, 31);
        let e2 = entropy(&mat(8, 8, shuffled)).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn row_constant_channel_has_unit_horizontal_correlation() {
        // every pixel equals its right neighbor, rows differ
        let data = vec![10, 10, 10, 20, 20, 20, 90, 90, 90];
        let rho = correlation(&mat(3, 3, data), Direction::Horizontal).unwrap();
        assert!((rho - 1.0).abs() < 1e-12, "rho = {rho}");
    }

    #[test]
    fn constant_channel_has_degenerate_variance() {
        assert!(matches!(
            correlation(&mat(2, 2, vec![5; 4]), Direction::Horizontal),
            Err(AnalysisError::DegenerateVariance { .. })
        ));
    }

    #[test]
    fn single_row_has_no_vertical_pairs() {
        assert!(matches!(
            correlation(&mat(1, 8, (0..8).collect()), Direction::Vertical),
            Err(AnalysisError::NoPairs(Direction::Vertical))
        ));
    }

    /// Brute-force oracle: a literal transcription of the correlation
    /// definition over an explicit pair list.
    fn correlation_oracle(m: &ChannelMatrix, direction: Direction) -> f64 {
        let mut pairs = Vec::new();
        for i in 0..m.rows {
            for j in 0..m.cols {
                let (ni, nj) = match direction {
                    Direction::Horizontal => (i, j + 1),
                    Direction::Vertical => (i + 1, j),
                    Direction::Diagonal => (i + 1, j + 1),
                };
                if ni < m.rows && nj < m.cols {
                    pairs.push((m.at(i, j) as f64, m.at(ni, nj) as f64));
                }
            }
        }
        let count = pairs.len() as f64;
        let mu_u = pairs.iter().map(|p| p.0).sum::<f64>() / count;
        let mu_v = pairs.iter().map(|p| p.1).sum::<f64>() / count;
        let var_u = pairs.iter().map(|p| (p.0 - mu_u).powi(2)).sum::<f64>() / count;
        let var_v = pairs.iter().map(|p| (p.1 - mu_v).powi(2)).sum::<f64>() / count;
        let kappa =
            pairs.iter().map(|p| (p.0 - mu_u) * (p.1 - mu_v)).sum::<f64>() / count;
        kappa / (var_u.sqrt() * var_v.sqrt())
    }

    #[test]
    fn gradient_channel_matches_pair_enumeration_oracle() {
        // j mod 256 with cols > 256 so the wrap breaks pure linearity
        let cols = 300u32;
        let data: Vec<u8> = (0..4 * cols).map(|k| (k % cols % 256) as u8).collect();
        let m = mat(4, cols, data);
        for d in Direction::ALL {
            let got = correlation(&m, d).unwrap();
            let want = correlation_oracle(&m, d);
            assert!((got - want).abs() < 1e-12, "{d:?}: {got} vs {want}");
        }
    }

    #[test]
    fn npcr_uaci_trivial_cases() {
        let a = mat(2, 2, vec![0, 1, 2, 3]);
        assert_eq!(npcr_uaci(&a, &a).unwrap(), (0.0, 0.0));
        let zeros = mat(2, 2, vec![0; 4]);
        let maxed = mat(2, 2, vec![255; 4]);
        assert_eq!(npcr_uaci(&zeros, &maxed).unwrap(), (100.0, 100.0));
    }

    #[test]
    fn npcr_uaci_rejects_shape_mismatch() {
        let a = mat(2, 2, vec![0; 4]);
        let b = mat(1, 4, vec![0; 4]);
        assert!(npcr_uaci(&a, &b).is_err());
    }

    #[test]
    fn npcr_uaci_is_symmetric() {
        let a = mat(2, 3, vec![1, 200, 3, 4, 5, 6]);
        let b = mat(2, 3, vec![9, 8, 7, 6, 5, 250]);
        assert_eq!(npcr_uaci(&a, &b).unwrap(), npcr_uaci(&b, &a).unwrap());
    }

    #[test]
    fn npcr_invariant_under_bijective_remap() {
        let a = mat(2, 3, vec![1, 2, 3, 4, 5, 6]);
        let b = mat(2, 3, vec![1, 9, 3, 9, 5, 9]);
        let remap = |m: &ChannelMatrix| {
            mat(m.rows, m.cols, m.data.iter().map(|&v| v ^ 0xA5).collect())
        };
        let (n1, _) = npcr_uaci(&a, &b).unwrap();
        let (n2, _) = npcr_uaci(&remap(&a), &remap(&b)).unwrap();
        assert_eq!(n1, n2);
    }

    #[test]
    fn uaci_invariant_under_common_shift_without_wrap() {
        let a = mat(2, 2, vec![10, 20, 30, 40]);
        let b = mat(2, 2, vec![15, 20, 25, 60]);
        let shift = |m: &ChannelMatrix| {
            mat(m.rows, m.cols, m.data.iter().map(|&v| v + 100).collect())
        };
        let (_, u1) = npcr_uaci(&a, &b).unwrap();
        let (_, u2) = npcr_uaci(&shift(&a), &shift(&b)).unwrap();
        assert_eq!(u1, u2);
    }

    #[test]
    fn plaintext_flip_touches_exactly_one_byte() {
        let dims = FrameDims::new(16, 16, ChannelCount::Rgb).unwrap();
        let frame = Frame::zeroed(dims).unwrap();
        let report =
            differential_test(&frame, ChaosWord(0xfeed_f00d_dead_beef), KeystreamMode::Combined)
                .unwrap();
        let mn = dims.pixel_count() as f64;
        // channel 0 sees one changed byte with |delta| = 1; others none
        assert!((report.plaintext_flip.npcr[0] - 100.0 / mn).abs() < 1e-12);
        assert!((report.plaintext_flip.uaci[0] - 100.0 / (255.0 * mn)).abs() < 1e-12);
        assert_eq!(report.plaintext_flip.npcr[1], 0.0);
        assert_eq!(report.plaintext_flip.npcr[2], 0.0);
        assert_eq!(report.plaintext_flip.uaci[1], 0.0);
        assert_eq!(report.plaintext_flip.uaci[2], 0.0);
    }

    #[test]
    fn identical_ciphertexts_compare_to_zero() {
        let dims = FrameDims::new(8, 8, ChannelCount::Rgb).unwrap();
        let frame = Frame::zeroed(dims).unwrap();
        let matrix = build_matrix(KeystreamMode::Combined, dims, ChaosWord(42)).unwrap();
        let c = xor_frame(&frame, &matrix).unwrap();
        let pair = compare_frames(&c, &c).unwrap();
        assert!(pair.npcr.iter().all(|&v| v == 0.0));
        assert!(pair.uaci.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn key_flip_then_flip_back_is_identical() {
        let dims = FrameDims::new(8, 8, ChannelCount::Rgb).unwrap();
        let frame = Frame::zeroed(dims).unwrap();
        let seed = ChaosWord(0x0123_4567_89ab_cdef);
        let twice = ChaosWord(seed.get() ^ (1 << 13) ^ (1 << 13));
        assert_eq!(twice, seed);
        let r = key_sensitivity_test(&frame, seed, 13, KeystreamMode::Combined).unwrap();
        // sanity: flipping the same bit in the test itself gives nonzero
        assert!(r.pair.npcr[0] > 0.0);
    }

    #[test]
    fn key_sensitivity_rejects_out_of_range_bit() {
        let dims = FrameDims::new(2, 2, ChannelCount::Gray).unwrap();
        let frame = Frame::zeroed(dims).unwrap();
        assert!(matches!(
            key_sensitivity_test(&frame, ChaosWord(1), 64, KeystreamMode::Combined),
            Err(AnalysisError::BitIndexOutOfRange { got: 64 })
        ));
    }

    #[test]
    fn pad_difference_density_is_near_half() {
        let dims = FrameDims::new(256, 256, ChannelCount::Rgb).unwrap(); // m·n = 2^16
        let frame = Frame::zeroed(dims).unwrap();
        let r = key_sensitivity_test(&frame, ChaosWord(0x0000_0190_1ad6_768d), 29, KeystreamMode::Combined)
            .unwrap();
        assert!((r.pad_ones_fraction - 0.5).abs() < 0.01, "{}", r.pad_ones_fraction);
        // independent popcount route over the difference image
        let ones: u64 =
            r.difference.pixels().iter().map(|b| b.count_ones() as u64).sum();
        let direct = ones as f64 / (8.0 * r.difference.pixels().len() as f64);
        assert!((direct - 0.5).abs() < 0.01);
    }

    #[test]
    fn export_writes_exact_byte_counts() {
        let bytes: Vec<u8> = (0..16).collect();
        let mut out = Vec::new();
        assert_eq!(export_bitstream(&bytes, &mut out, 128).unwrap(), 16);
        assert_eq!(out, bytes);
        out.clear();
        assert_eq!(export_bitstream(&bytes, &mut out, 4).unwrap(), 1);
        assert_eq!(out, [0]);
    }

    #[test]
    fn export_rejects_insufficient_source() {
        let mut out = Vec::new();
        assert!(matches!(
            export_bitstream(&[0u8; 4], &mut out, 33),
            Err(AnalysisError::InsufficientData { needed: 5, available: 4 })
        ));
    }

    #[test]
    fn alternating_bits_pass_monobit_but_fail_runs() {
        let (p_mono, p_runs) = monobit_and_runs(&[0x55; 2000]).unwrap();
        assert!((p_mono - 1.0).abs() < 1e-12);
        assert!(p_runs < 1e-12);
    }

    #[test]
    fn all_zero_bits_fail_monobit() {
        let (p_mono, p_runs) = monobit_and_runs(&[0u8; 2000]).unwrap();
        assert!(p_mono < 1e-12);
        assert_eq!(p_runs, 0.0); // prerequisite fails
    }

    #[test]
    fn short_input_is_rejected() {
        assert!(matches!(
            monobit_and_runs(&[0xAA; 12]),
            Err(AnalysisError::TooFewBits { min: 100, got: 96 })
        ));
    }

    #[test]
    fn megabit_combined_keystream_passes_both_checks() {
        let seed = ChaosWord(0x0000_0190_1ad6_768d);
        let ks = combined_stream(seed, seed, 1_000_000 / 8);
        let (p_mono, p_runs) = monobit_and_runs(&ks).unwrap();
        assert!(p_mono > 0.01, "monobit p = {p_mono}");
        assert!(p_runs > 0.01, "runs p = {p_runs}");
    }

}
