//! Two 1D discrete-space chaotic maps over 64-bit words.
//!
//! Both maps alternate the same pair of step functions and differ only in
//! phase: starting from the seed, [`MapVariant::MapA`] applies the affine
//! step first, [`MapVariant::MapB`] the rotate step first. All arithmetic
//! is total on `u64`; there are no bad seeds and no floating point, so the
//! sequences are bit-identical on every platform.

use std::fmt;

use thiserror::Error;

/// A 64-bit state value of the chaotic recurrence.
///
/// The value is always interpreted modulo 2^64; step functions wrap
/// instead of trapping or saturating.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ChaosWord(pub u64);

impl ChaosWord {
    pub const fn new(value: u64) -> Self {
        ChaosWord(value)
    }

    pub const fn get(self) -> u64 {
        self.0
    }

    /// Parse a word from 1–16 hex digits, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Result<Self, ChaosError> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if digits.is_empty() || digits.len() > 16 {
            return Err(ChaosError::BadHexWord { input: s.to_string() });
        }
        u64::from_str_radix(digits, 16)
            .map(ChaosWord)
            .map_err(|_| ChaosError::BadHexWord { input: s.to_string() })
    }

    /// The little-endian byte view used by the keystream slicer: byte `h`
    /// is bits `[8h, 8h+7]` counted from the least-significant bit.
    pub const fn to_le_bytes(self) -> [u8; 8] {
        self.0.to_le_bytes()
    }
}

impl fmt::Debug for ChaosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChaosWord({:016x})", self.0)
    }
}

/// Sixteen lowercase hex digits, the dump format used for cross-platform
/// sequence comparison.
impl fmt::Display for ChaosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl fmt::LowerHex for ChaosWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

impl From<u64> for ChaosWord {
    fn from(value: u64) -> Self {
        ChaosWord(value)
    }
}

impl From<ChaosWord> for u64 {
    fn from(word: ChaosWord) -> Self {
        word.0
    }
}

/// Which of the two step functions a map applies at a given index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepKind {
    Affine,
    Rotate,
}

/// The two alternating maps. They apply the same steps in opposite phase:
/// the step MapA applies at index `i` is the step MapB applies at `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MapVariant {
    MapA,
    MapB,
}

impl MapVariant {
    /// Step used to produce element `index + 1` from element `index`.
    ///
    /// MapA: affine on even indices, rotate on odd. MapB: swapped.
    pub const fn step_at(self, index: usize) -> StepKind {
        let even = index % 2 == 0;
        match (self, even) {
            (MapVariant::MapA, true) | (MapVariant::MapB, false) => StepKind::Affine,
            (MapVariant::MapA, false) | (MapVariant::MapB, true) => StepKind::Rotate,
        }
    }

    pub const fn other(self) -> MapVariant {
        match self {
            MapVariant::MapA => MapVariant::MapB,
            MapVariant::MapB => MapVariant::MapA,
        }
    }
}

impl fmt::Display for MapVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapVariant::MapA => write!(f, "a"),
            MapVariant::MapB => write!(f, "b"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ChaosError {
    #[error("iteration count {got} is below the minimum of {min}")]
    CountTooSmall { min: usize, got: usize },
    #[error("not a 64-bit hex word: {input:?}")]
    BadHexWord { input: String },
}

/// Rotate `w` left by `w mod 64` bit positions.
///
/// A rotate amount of 0 is the identity, which keeps the function total
/// where the literal shift-pair formulation would shift by 64.
pub const fn rotate_step(w: ChaosWord) -> ChaosWord {
    ChaosWord(w.0.rotate_left((w.0 % 64) as u32))
}

/// The multiplicative step: `(q + 1)·(r + 1) + 1` wrapped modulo 2^64,
/// where `q` and `r` are the quotient and remainder of the state divided
/// by 2^32 in two's-complement arithmetic (truncating division, remainder
/// carrying the dividend's sign). The signed semantics are what produced
/// the published reference iterates; for words below 2^63 they coincide
/// with a plain shift/mask split.
pub const fn affine_step(w: ChaosWord) -> ChaosWord {
    let y = w.0 as i64;
    let q = y / (1i64 << 32);
    let r = y % (1i64 << 32);
    ChaosWord((q + 1).wrapping_mul(r + 1).wrapping_add(1) as u64)
}

/// Apply the step the given variant uses at `index`.
pub const fn next_word(variant: MapVariant, index: usize, w: ChaosWord) -> ChaosWord {
    match variant.step_at(index) {
        StepKind::Affine => affine_step(w),
        StepKind::Rotate => rotate_step(w),
    }
}

/// Infinite word sequence of a map; element 0 is the seed itself.
pub fn word_stream(variant: MapVariant, seed: ChaosWord) -> impl Iterator<Item = ChaosWord> {
    let mut state = seed;
    let mut index = 0usize;
    std::iter::from_fn(move || {
        let current = state;
        state = next_word(variant, index, state);
        index += 1;
        Some(current)
    })
}

/// First `count` elements of the sequence (element 0 = seed).
pub fn iterate(
    variant: MapVariant,
    seed: ChaosWord,
    count: usize,
) -> Result<Vec<ChaosWord>, ChaosError> {
    if count == 0 {
        return Err(ChaosError::CountTooSmall { min: 1, got: 0 });
    }
    Ok(word_stream(variant, seed).take(count).collect())
}

/// Consecutive state pairs `(y_k, y_{k+1})` for plotting the map's
/// return-map scatter; `count` elements yield `count - 1` pairs.
pub fn poincare_points(
    variant: MapVariant,
    seed: ChaosWord,
    count: usize,
) -> Result<Vec<(ChaosWord, ChaosWord)>, ChaosError> {
    if count < 2 {
        return Err(ChaosError::CountTooSmall { min: 2, got: count });
    }
    let words = iterate(variant, seed, count)?;
    Ok(words.windows(2).map(|w| (w[0], w[1])).collect())
}
