//! Keystream cipher for raw video frames built on two 1D discrete-space
//! chaotic maps over 64-bit integers, plus the statistical harness used
//! to evaluate it.
//!
//! Pipeline: [`chaos`] iterates the maps; [`keystream`] slices the words
//! into byte planes, XOR-combines them and expands to channels;
//! [`cipher`] XORs one fixed matrix with every frame of a stream and
//! speaks the [`container`] format (header + raw frames, seed in-band);
//! [`analysis`] measures entropy, correlation, NPCR/UACI and exports
//! bitstreams for external randomness suites.
//!
//! Everything is integer arithmetic; sequences, containers, and reports
//! are bit-identical across platforms. The `parallel` feature (default)
//! adds rayon data-parallelism to the XOR, matrix construction, and
//! per-channel metrics; disabling it leaves a fully sequential build with
//! identical outputs.

pub mod analysis;
pub mod chaos;
pub mod cipher;
pub mod container;
pub mod keystream;
pub mod pnm;
pub mod report;
pub mod selftest;
pub mod synth;
pub mod xor;

pub use chaos::{ChaosWord, MapVariant};
pub use cipher::{
    decrypt_stream, decrypt_stream_dual, encrypt_stream, encrypt_stream_dual, xor_frame,
    CipherError, StreamSession,
};
pub use container::{ContainerHeader, Frame};
pub use keystream::{
    build_matrix, build_matrix_dual, ChannelCount, EncryptionMatrix, FrameDims, KeystreamMode,
};
