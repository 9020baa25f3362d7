//! Timing benchmark for the two evaluation scenarios: the complete
//! pipeline (read + XOR + container write) and the XOR application alone.
//! Reports mean wall-clock seconds with a Student-t 95% confidence
//! interval over the repeat samples; a warm-up run is excluded.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use statrs::distribution::{ContinuousCDF, StudentsT};

use chaosvid::container::{ContainerHeader, Frame};
use chaosvid::keystream::KeystreamMode;
use chaosvid::report::Report;
use chaosvid::synth::lcg_frame;
use chaosvid::xor;
use chaosvid::{build_matrix, encrypt_stream, ChaosWord, FrameDims};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scenario {
    FullPipeline,
    XorOnly,
}

impl Scenario {
    pub fn label(self) -> &'static str {
        match self {
            Scenario::FullPipeline => "full_pipeline",
            Scenario::XorOnly => "xor_only",
        }
    }
}

/// Two-sided 95% Student-t quantile for `df` degrees of freedom.
pub fn t_quantile_975(df: f64) -> f64 {
    StudentsT::new(0.0, 1.0, df)
        .expect("df >= 1")
        .inverse_cdf(0.975)
}

#[derive(Clone, Debug)]
pub struct TimingReport {
    pub scenario: Scenario,
    pub samples: Vec<f64>,
    pub mean: f64,
    pub ci95_half_width: f64,
    pub bytes_processed: u64,
    pub throughput_bytes_per_s: f64,
    /// Video seconds per processing second; > 1 keeps up with capture.
    pub real_time_margin: Option<f64>,
}

impl TimingReport {
    /// Aggregate wall-clock samples; needs at least two so the interval
    /// is defined.
    pub fn from_samples(
        scenario: Scenario,
        samples: Vec<f64>,
        bytes_processed: u64,
        video_seconds: Option<f64>,
    ) -> Result<Self> {
        ensure!(samples.len() >= 2, "need at least 2 samples, got {}", samples.len());
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let ci95_half_width = t_quantile_975(n - 1.0) * var.sqrt() / n.sqrt();
        Ok(TimingReport {
            scenario,
            throughput_bytes_per_s: bytes_processed as f64 / mean,
            real_time_margin: video_seconds.map(|v| v / mean),
            samples,
            mean,
            ci95_half_width,
            bytes_processed,
        })
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("scenario", self.scenario.label());
        r.push("samples", self.samples.len());
        for (i, s) in self.samples.iter().enumerate() {
            r.push(format!("sample.{i}_s"), format!("{s:.6}"));
        }
        r.push("mean_s", format!("{:.6}", self.mean));
        r.push("ci95_half_width_s", format!("{:.6}", self.ci95_half_width));
        r.push("bytes_processed", self.bytes_processed);
        r.push("throughput_bytes_per_s", format!("{:.0}", self.throughput_bytes_per_s));
        r.push(
            "throughput_mb_per_s",
            format!("{:.2}", self.throughput_bytes_per_s / 1e6),
        );
        if let Some(m) = self.real_time_margin {
            r.push("real_time_margin", format!("{m:.3}"));
        }
        r
    }
}

pub struct BenchConfig {
    pub scenario: Scenario,
    pub dims: FrameDims,
    pub fps: f64,
    pub frames: u64,
    pub repeats: usize,
    pub parallel: bool,
    pub seed: ChaosWord,
}

/// Run one scenario: a warm-up pass, then `repeats` timed passes over
/// the same synthetic frame workload.
pub fn run(config: &BenchConfig, scratch_dir: &Path) -> Result<TimingReport> {
    ensure!(config.repeats >= 2, "repeats must be at least 2");
    ensure!(config.frames >= 1, "need at least one frame");
    let frames: Vec<Frame> =
        (0..config.frames).map(|i| lcg_frame(config.dims, i)).collect();
    let bytes_processed = config.frames * config.dims.frame_len() as u64;
    let video_seconds = config.frames as f64 / config.fps;

    let mut samples = Vec::with_capacity(config.repeats);
    for pass in 0..=config.repeats {
        let seconds = match config.scenario {
            Scenario::FullPipeline => {
                time_full_pipeline(config, &frames, scratch_dir, pass)?
            }
            Scenario::XorOnly => time_xor_only(config, &frames)?,
        };
        if pass > 0 {
            samples.push(seconds); // pass 0 is the warm-up
        }
    }
    TimingReport::from_samples(config.scenario, samples, bytes_processed, Some(video_seconds))
}

fn time_full_pipeline(
    config: &BenchConfig,
    frames: &[Frame],
    scratch_dir: &Path,
    pass: usize,
) -> Result<f64> {
    let header = ContainerHeader::new(config.dims, config.fps, config.seed, config.frames)
        .context("bench header")?;
    let path = scratch_dir.join(format!("bench_{}_{pass}.cvs", config.scenario.label()));
    let started = Instant::now();
    let file = File::create(&path).with_context(|| format!("create {}", path.display()))?;
    let mut sink = BufWriter::new(file);
    encrypt_stream(
        frames.iter().cloned().map(Ok),
        &header,
        KeystreamMode::Combined,
        &mut sink,
    )?;
    sink.into_inner().context("flush container")?;
    Ok(started.elapsed().as_secs_f64())
}

fn time_xor_only(config: &BenchConfig, frames: &[Frame]) -> Result<f64> {
    let matrix = build_matrix(KeystreamMode::Combined, config.dims, config.seed)?;
    let mut scratch = vec![0u8; config.dims.frame_len()];
    let started = Instant::now();
    for frame in frames {
        if config.parallel {
            xor::xor_into(&mut scratch, frame.pixels(), matrix.bytes());
        } else {
            xor::xor_into_seq(&mut scratch, frame.pixels(), matrix.bytes());
        }
        std::hint::black_box(scratch.first());
    }
    Ok(started.elapsed().as_secs_f64())
}
