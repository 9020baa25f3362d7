//! `chaosvid` — encrypt, decrypt, and evaluate raw video frame streams
//! with the chaotic keystream cipher.
//!
//! Exit codes: 0 success, 1 data/runtime error, 2 usage error.

use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use chaosvid::analysis::{
    self, differential_test, export_bitstream, key_sensitivity_test, monobit_and_runs,
    ChannelMatrix, Direction,
};
use chaosvid::chaos::{iterate, ChaosWord, MapVariant};
use chaosvid::container::{read_frame, read_header, ContainerHeader, Frame, RawFrameReader};
use chaosvid::keystream::{combined_stream, raw_stream, ChannelCount, FrameDims, KeystreamMode};
use chaosvid::pnm::{emit_pnm, ingest_pnm};
use chaosvid::report::Report;
use chaosvid::{decrypt_stream_dual, encrypt_stream_dual};

mod bench;

/// Environment variable holding a fixed hex seed; it replaces the
/// current-time default wherever `--seed` is omitted.
const SEED_ENV: &str = "CHAOSVID_SEED";

#[derive(Parser)]
#[command(
    name = "chaosvid",
    version,
    about = "Chaotic keystream cipher and evaluation harness for raw video frames"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump keystream words (map a/b) or bytes (combined)
    Keystream(KeystreamArgs),
    /// Encrypt raw frames or a PNM directory into a container
    Encrypt(EncryptArgs),
    /// Decrypt a container into raw frames or a PNM directory
    Decrypt(DecryptArgs),
    /// Statistical reports: entropy, correlation, histogram, NPCR/UACI,
    /// key sensitivity, differential protocols
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Export raw keystream or file bytes for external randomness suites
    ExportBits(ExportBitsArgs),
    /// Wall-clock benchmark with t-based 95% confidence intervals
    Bench(BenchArgs),
    /// Reference-vector and invariant suite; exits nonzero on drift
    Selftest,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum MapArg {
    A,
    B,
    Combined,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum DumpFormat {
    Hex,
    Raw,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ModeArg {
    Combined,
    OcA,
    OcB,
    #[value(name = "3l")]
    TripleLength,
}

impl From<ModeArg> for KeystreamMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Combined => KeystreamMode::Combined,
            ModeArg::OcA => KeystreamMode::OnlyMapA,
            ModeArg::OcB => KeystreamMode::OnlyMapB,
            ModeArg::TripleLength => KeystreamMode::TripleLength,
        }
    }
}

fn parse_seed(s: &str) -> Result<ChaosWord, String> {
    ChaosWord::from_hex(s).map_err(|e| e.to_string())
}

#[derive(Args)]
struct KeystreamArgs {
    /// Which sequence to dump
    #[arg(long, value_enum)]
    map: MapArg,
    /// Seed as up to 16 hex digits
    #[arg(long, value_parser = parse_seed)]
    seed: ChaosWord,
    /// Second seed for the combined stream (dual-seed mode)
    #[arg(long, value_parser = parse_seed)]
    seed_b: Option<ChaosWord>,
    /// Words (map a/b) or bytes (combined) to emit
    #[arg(long)]
    count: u64,
    #[arg(long, value_enum, default_value = "hex")]
    format: DumpFormat,
    /// Output file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum PlainFormat {
    /// Headerless frames; dimensions come from flags
    Raw,
    /// Directory of binary .pgm/.ppm files, lexicographic order
    PnmDir,
}

#[derive(Args)]
struct EncryptArgs {
    /// Plaintext source: a raw frame file or a PNM directory
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "raw")]
    input_format: PlainFormat,
    /// Container to write
    #[arg(long)]
    output: PathBuf,
    /// Frame height in pixels (required for raw input)
    #[arg(long)]
    height: Option<u32>,
    /// Frame width in pixels (required for raw input)
    #[arg(long)]
    width: Option<u32>,
    /// Channels per pixel: 1 or 3 (raw input; PNM files carry their own)
    #[arg(long, default_value_t = 3)]
    channels: u8,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
    /// Seed; defaults to $CHAOSVID_SEED, then the current Unix time in ms
    #[arg(long, value_parser = parse_seed)]
    seed: Option<ChaosWord>,
    /// Optional second seed (dual-seed mode; not stored in the container)
    #[arg(long, value_parser = parse_seed)]
    seed_b: Option<ChaosWord>,
    #[arg(long, value_enum, default_value = "combined")]
    mode: ModeArg,
}

#[derive(Args)]
struct DecryptArgs {
    /// Container to read
    #[arg(long)]
    input: PathBuf,
    /// Output file (raw) or directory (pnm-dir)
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum, default_value = "raw")]
    output_format: PlainFormat,
    /// Keystream mode the container was encrypted with
    #[arg(long, value_enum, default_value = "combined")]
    mode: ModeArg,
    /// Second seed when the container was written in dual-seed mode
    #[arg(long, value_parser = parse_seed)]
    seed_b: Option<ChaosWord>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ImageFormat {
    Pnm,
    Raw,
    Container,
}

#[derive(Args)]
struct ImageInput {
    /// Image to analyze
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "pnm")]
    input_format: ImageFormat,
    /// Frame height (raw input)
    #[arg(long)]
    height: Option<u32>,
    /// Frame width (raw input)
    #[arg(long)]
    width: Option<u32>,
    /// Channels per pixel (raw input)
    #[arg(long, default_value_t = 3)]
    channels: u8,
    /// Which frame of a container to analyze (ciphertext bytes)
    #[arg(long, default_value_t = 0)]
    frame: u64,
}

#[derive(Subcommand)]
enum AnalyzeCommand {
    /// Per-channel Shannon entropy (bits/symbol)
    Entropy(ImageInput),
    /// Adjacent-pixel correlation, three directions per channel
    Correlation(ImageInput),
    /// 256-bin histogram and uniformity chi-square per channel
    Histogram(ImageInput),
    /// NPCR/UACI between two images of equal dimensions
    NpcrUaci {
        /// First image
        #[arg(long)]
        a: PathBuf,
        /// Second image
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value = "pnm")]
        input_format: ImageFormat,
        #[arg(long)]
        height: Option<u32>,
        #[arg(long)]
        width: Option<u32>,
        #[arg(long, default_value_t = 3)]
        channels: u8,
        #[arg(long, default_value_t = 0)]
        frame: u64,
    },
    /// Encrypt under the seed and under the seed with one bit flipped;
    /// report ciphertext-pair NPCR/UACI and pad difference density
    KeySensitivity {
        #[command(flatten)]
        image: ImageInput,
        #[arg(long, value_parser = parse_seed)]
        seed: Option<ChaosWord>,
        /// Seed bit to flip (0 = least significant)
        #[arg(long, default_value_t = 0)]
        bit: u32,
        #[arg(long, value_enum, default_value = "combined")]
        mode: ModeArg,
    },
    /// Plaintext-flip and seed-flip differential protocols side by side
    Differential {
        #[command(flatten)]
        image: ImageInput,
        #[arg(long, value_parser = parse_seed)]
        seed: Option<ChaosWord>,
        #[arg(long, value_enum, default_value = "combined")]
        mode: ModeArg,
    },
}

#[derive(Args)]
struct ExportBitsArgs {
    /// Number of bits to export (rounded up to whole bytes)
    #[arg(long)]
    bits: u64,
    /// Destination file
    #[arg(long)]
    output: PathBuf,
    /// Export from an existing file (e.g. a ciphertext) instead of
    /// generating keystream
    #[arg(long)]
    input: Option<PathBuf>,
    /// Keystream seed; defaults to $CHAOSVID_SEED, then current time
    #[arg(long, value_parser = parse_seed)]
    seed: Option<ChaosWord>,
    #[arg(long, value_parser = parse_seed)]
    seed_b: Option<ChaosWord>,
    /// Keystream flavor; `3l` exports the same flat stream as `combined`
    #[arg(long, value_enum, default_value = "combined")]
    mode: ModeArg,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ScenarioArg {
    Full,
    Xor,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    scenario: ScenarioArg,
    #[arg(long, default_value_t = 600)]
    frames: u64,
    /// Timed repetitions after one excluded warm-up pass
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 360)]
    height: u32,
    #[arg(long, default_value_t = 640)]
    width: u32,
    #[arg(long, default_value_t = 3)]
    channels: u8,
    #[arg(long, default_value_t = 30.0)]
    fps: f64,
    #[arg(long, value_parser = parse_seed)]
    seed: Option<ChaosWord>,
    /// Use the data-parallel XOR path instead of the single-threaded one
    #[arg(long)]
    parallel: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Keystream(args) => cmd_keystream(args),
        Command::Encrypt(args) => cmd_encrypt(args),
        Command::Decrypt(args) => cmd_decrypt(args),
        Command::Analyze { what } => cmd_analyze(what),
        Command::ExportBits(args) => cmd_export_bits(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Selftest => {
            let mut out = io::stdout().lock();
            chaosvid::selftest::run(&mut out)
                .map_err(|name| anyhow!("selftest check failed: {name}"))
        }
    }
}

/// $CHAOSVID_SEED if set, otherwise the current Unix time in milliseconds.
fn default_seed() -> Result<ChaosWord> {
    if let Ok(value) = std::env::var(SEED_ENV) {
        return ChaosWord::from_hex(&value)
            .map_err(|e| anyhow!("{SEED_ENV}: {e}"));
    }
    let ms = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .context("system clock before the epoch")?
        .as_millis() as u64;
    Ok(ChaosWord(ms))
}

fn resolve_seed(explicit: Option<ChaosWord>) -> Result<ChaosWord> {
    match explicit {
        Some(seed) => Ok(seed),
        None => default_seed(),
    }
}

fn parse_channels(value: u8) -> Result<ChannelCount> {
    ChannelCount::try_from(value).map_err(|e| anyhow!(e))
}

fn cmd_keystream(args: KeystreamArgs) -> Result<()> {
    let count = args.count as usize;
    let mut sink: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match (args.map, args.format) {
        (MapArg::A | MapArg::B, DumpFormat::Hex) => {
            let variant = if args.map == MapArg::A { MapVariant::MapA } else { MapVariant::MapB };
            for word in iterate(variant, args.seed, count.max(1))? {
                writeln!(sink, "{word}")?;
            }
        }
        (MapArg::A | MapArg::B, DumpFormat::Raw) => {
            let variant = if args.map == MapArg::A { MapVariant::MapA } else { MapVariant::MapB };
            sink.write_all(&raw_stream(variant, args.seed, count * 8))?;
        }
        (MapArg::Combined, format) => {
            let bytes = combined_stream(args.seed, args.seed_b.unwrap_or(args.seed), count);
            match format {
                DumpFormat::Hex => {
                    for b in bytes {
                        writeln!(sink, "{b:02x}")?;
                    }
                }
                DumpFormat::Raw => sink.write_all(&bytes)?,
            }
        }
    }
    sink.flush()?;
    Ok(())
}

/// Sorted .pgm/.ppm/.pnm paths in a directory.
fn pnm_dir_entries(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("read directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            matches!(
                p.extension().and_then(|s| s.to_str()),
                Some("pgm" | "ppm" | "pnm")
            )
        })
        .collect();
    entries.sort();
    if entries.is_empty() {
        bail!("no .pgm/.ppm/.pnm files in {}", dir.display());
    }
    Ok(entries)
}

fn load_pnm(path: &Path) -> Result<Frame> {
    let mut reader = BufReader::new(
        File::open(path).with_context(|| format!("open {}", path.display()))?,
    );
    ingest_pnm(&mut reader).with_context(|| format!("parse {}", path.display()))
}

fn cmd_encrypt(args: EncryptArgs) -> Result<()> {
    let seed = resolve_seed(args.seed)?;
    let mode: KeystreamMode = args.mode.into();
    let out = File::create(&args.output)
        .with_context(|| format!("create {}", args.output.display()))?;
    let mut sink = BufWriter::new(out);

    let written;
    let dims;
    match args.input_format {
        PlainFormat::Raw => {
            let height = args.height.context("--height is required for raw input")?;
            let width = args.width.context("--width is required for raw input")?;
            dims = FrameDims::new(height, width, parse_channels(args.channels)?)?;
            let file = File::open(&args.input)
                .with_context(|| format!("open {}", args.input.display()))?;
            let len = file.metadata()?.len();
            let frame_len = dims.frame_len() as u64;
            if len % frame_len != 0 {
                bail!(
                    "{} is {len} bytes, not a multiple of the {frame_len}-byte frame size",
                    args.input.display()
                );
            }
            let header = ContainerHeader::new(dims, args.fps, seed, len / frame_len)?;
            let frames = RawFrameReader::new(BufReader::new(file), dims);
            written = encrypt_stream_dual(frames, &header, mode, args.seed_b, &mut sink)?;
        }
        PlainFormat::PnmDir => {
            let paths = pnm_dir_entries(&args.input)?;
            let first = load_pnm(&paths[0])?;
            dims = first.dims();
            if let Some(h) = args.height {
                if h != dims.height {
                    bail!("--height {h} does not match PNM height {}", dims.height);
                }
            }
            if let Some(w) = args.width {
                if w != dims.width {
                    bail!("--width {w} does not match PNM width {}", dims.width);
                }
            }
            let header = ContainerHeader::new(dims, args.fps, seed, paths.len() as u64)?;
            let frames = paths.iter().map(|p| {
                load_pnm(p).map_err(|e| {
                    io::Error::new(io::ErrorKind::InvalidData, format!("{e:#}")).into()
                })
            });
            written = encrypt_stream_dual(frames, &header, mode, args.seed_b, &mut sink)?;
        }
    }
    sink.into_inner().context("flush container")?;

    let mut report = Report::new();
    report.push("output", args.output.display());
    report.push("frames", written);
    report.push("height", dims.height);
    report.push("width", dims.width);
    report.push("channels", dims.channels.count());
    report.push("seed", format!("{seed}"));
    print!("{report}");
    Ok(())
}

fn cmd_decrypt(args: DecryptArgs) -> Result<()> {
    let file = File::open(&args.input)
        .with_context(|| format!("open {}", args.input.display()))?;
    let source = BufReader::new(file);
    let mode: KeystreamMode = args.mode.into();

    let (header, frames) = match args.output_format {
        PlainFormat::Raw => {
            let out = File::create(&args.output)
                .with_context(|| format!("create {}", args.output.display()))?;
            let mut sink = BufWriter::new(out);
            let result = decrypt_stream_dual(source, mode, args.seed_b, |frame| {
                sink.write_all(frame.pixels()).map_err(Into::into)
            })?;
            sink.into_inner().context("flush output")?;
            result
        }
        PlainFormat::PnmDir => {
            fs::create_dir_all(&args.output)
                .with_context(|| format!("create directory {}", args.output.display()))?;
            let dir = args.output.clone();
            let mut index = 0u64;
            decrypt_stream_dual(source, mode, args.seed_b, |frame| {
                let ext = match frame.dims().channels {
                    ChannelCount::Gray => "pgm",
                    ChannelCount::Rgb => "ppm",
                };
                let path = dir.join(format!("frame_{index:06}.{ext}"));
                index += 1;
                let mut out = BufWriter::new(File::create(&path).map_err(io::Error::from)?);
                emit_pnm(&mut out, frame)
                    .map_err(|e| io::Error::new(io::ErrorKind::Other, format!("{e}")))?;
                out.into_inner().map_err(|e| io::Error::from(e.into_error()))?;
                Ok(())
            })?
        }
    };

    let mut report = Report::new();
    report.push("output", args.output.display());
    report.push("frames", frames);
    report.push("height", header.height);
    report.push("width", header.width);
    report.push("channels", header.channels.count());
    report.push("fps", header.fps);
    report.push("seed", format!("{}", header.seed));
    print!("{report}");
    Ok(())
}

/// Load an image from PNM, a raw frame file, or a container (the
/// ciphertext bytes of one frame, no decryption).
fn load_image(input: &ImageInput) -> Result<Frame> {
    match input.input_format {
        ImageFormat::Pnm => load_pnm(&input.input),
        ImageFormat::Raw => {
            let height = input.height.context("--height is required for raw input")?;
            let width = input.width.context("--width is required for raw input")?;
            let dims = FrameDims::new(height, width, parse_channels(input.channels)?)?;
            let mut reader = BufReader::new(
                File::open(&input.input)
                    .with_context(|| format!("open {}", input.input.display()))?,
            );
            read_frame(&mut reader, dims)?
                .ok_or_else(|| anyhow!("{} is empty", input.input.display()))
        }
        ImageFormat::Container => {
            let mut reader = BufReader::new(
                File::open(&input.input)
                    .with_context(|| format!("open {}", input.input.display()))?,
            );
            let header = read_header(&mut reader)?;
            let dims = header.dims();
            let skip = input.frame * dims.frame_len() as u64;
            io::copy(&mut (&mut reader).take(skip), &mut io::sink())?;
            read_frame(&mut reader, dims)?
                .ok_or_else(|| anyhow!("container has no frame {}", input.frame))
        }
    }
}

fn cmd_analyze(what: AnalyzeCommand) -> Result<()> {
    let report = match what {
        AnalyzeCommand::Entropy(input) => {
            let frame = load_image(&input)?;
            let mut r = Report::new();
            for c in 0..frame.dims().channels.count() {
                let m = ChannelMatrix::from_frame(&frame, c)?;
                r.push_f64(format!("entropy.{c}"), analysis::entropy(&m)?);
            }
            r
        }
        AnalyzeCommand::Correlation(input) => {
            let frame = load_image(&input)?;
            let mut r = Report::new();
            for c in 0..frame.dims().channels.count() {
                let m = ChannelMatrix::from_frame(&frame, c)?;
                for (name, dir) in [
                    ("horizontal", Direction::Horizontal),
                    ("vertical", Direction::Vertical),
                    ("diagonal", Direction::Diagonal),
                ] {
                    r.push_f64(
                        format!("correlation.{name}.{c}"),
                        analysis::correlation(&m, dir)?,
                    );
                }
            }
            r
        }
        AnalyzeCommand::Histogram(input) => {
            let frame = load_image(&input)?;
            let mut r = Report::new();
            for c in 0..frame.dims().channels.count() {
                let m = ChannelMatrix::from_frame(&frame, c)?;
                let hist = analysis::histogram(&m);
                r.push_f64(format!("chi_square.{c}"), analysis::chi_square_uniform(&hist));
                let csv: Vec<String> = hist.iter().map(|v| v.to_string()).collect();
                r.push(format!("histogram.{c}"), csv.join(","));
            }
            r
        }
        AnalyzeCommand::NpcrUaci { a, b, input_format, height, width, channels, frame } => {
            let load = |path: PathBuf| {
                load_image(&ImageInput {
                    input: path,
                    input_format,
                    height,
                    width,
                    channels,
                    frame,
                })
            };
            let (fa, fb) = (load(a)?, load(b)?);
            let pair = analysis::compare_frames(&fa, &fb)?;
            let mut r = Report::new();
            for (c, &v) in pair.npcr.iter().enumerate() {
                r.push_f64(format!("npcr.{c}"), v);
            }
            for (c, &v) in pair.uaci.iter().enumerate() {
                r.push_f64(format!("uaci.{c}"), v);
            }
            r
        }
        AnalyzeCommand::KeySensitivity { image, seed, bit, mode } => {
            let frame = load_image(&image)?;
            let seed = resolve_seed(seed)?;
            let outcome = key_sensitivity_test(&frame, seed, bit, mode.into())?;
            let mut r = Report::new();
            r.push("seed", format!("{seed}"));
            r.push("bit", bit);
            for (k, v) in outcome.to_report().lines() {
                r.push(k, v);
            }
            r
        }
        AnalyzeCommand::Differential { image, seed, mode } => {
            let frame = load_image(&image)?;
            let seed = resolve_seed(seed)?;
            let outcome = differential_test(&frame, seed, mode.into())?;
            let mut r = Report::new();
            r.push("seed", format!("{seed}"));
            for (k, v) in outcome.to_report().lines() {
                r.push(k, v);
            }
            r
        }
    };
    print!("{report}");
    Ok(())
}

fn cmd_export_bits(args: ExportBitsArgs) -> Result<()> {
    let bits = args.bits as usize;
    let needed = bits.div_ceil(8);
    let mut report = Report::new();
    let source = match &args.input {
        Some(path) => {
            report.push("source", path.display());
            fs::read(path).with_context(|| format!("read {}", path.display()))?
        }
        None => {
            let seed = resolve_seed(args.seed)?;
            let seed_b = args.seed_b.unwrap_or(seed);
            report.push("source", "keystream");
            report.push("seed", format!("{seed}"));
            match args.mode {
                ModeArg::Combined | ModeArg::TripleLength => {
                    combined_stream(seed, seed_b, needed)
                }
                ModeArg::OcA => raw_stream(MapVariant::MapA, seed, needed),
                ModeArg::OcB => raw_stream(MapVariant::MapB, seed, needed),
            }
        }
    };
    let out = File::create(&args.output)
        .with_context(|| format!("create {}", args.output.display()))?;
    let mut sink = BufWriter::new(out);
    let written = export_bitstream(&source, &mut sink, bits)?;
    sink.into_inner().context("flush output")?;

    // local smoke check mirroring what the external suites will see
    if written * 8 >= 100 {
        let (p_mono, p_runs) = monobit_and_runs(&source[..written])?;
        report.push_f64("p_monobit", p_mono);
        report.push_f64("p_runs", p_runs);
    }
    report.push("bits", bits);
    report.push("bytes_written", written);
    report.push("bit_order", "lsb_first");
    report.push("output", args.output.display());
    print!("{report}");
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let dims = FrameDims::new(args.height, args.width, parse_channels(args.channels)?)?;
    let seed = resolve_seed(args.seed)?;
    if args.parallel && !cfg!(feature = "parallel") {
        bail!("this binary was built without the `parallel` feature");
    }
    let scenario = match args.scenario {
        ScenarioArg::Full => bench::Scenario::FullPipeline,
        ScenarioArg::Xor => bench::Scenario::XorOnly,
    };
    let scratch = tempfile::tempdir().context("create scratch directory")?;
    let config = bench::BenchConfig {
        scenario,
        dims,
        fps: args.fps,
        frames: args.frames,
        repeats: args.repeats,
        parallel: args.parallel,
        seed,
    };
    let timing = bench::run(&config, scratch.path())?;
    print!("{}", timing.to_report());
    Ok(())
}
