//! Bulk XOR kernels, the only hot loop in the cipher.
//!
//! `xor_inplace` picks the rayon path for large buffers when the
//! `parallel` feature is enabled; `xor_inplace_seq` is always available so
//! benchmarks can compare both.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Buffers below this size are not worth a fork-join round trip.
#[cfg(feature = "parallel")]
const PAR_THRESHOLD: usize = 1 << 16;

#[cfg(feature = "parallel")]
const PAR_CHUNK: usize = 1 << 16;

/// `dst[i] ^= pad[i]` over whole slices. Panics on length mismatch; the
/// public cipher operations validate dimensions before reaching this.
pub fn xor_inplace(dst: &mut [u8], pad: &[u8]) {
    assert_eq!(dst.len(), pad.len(), "xor operand length mismatch");
    #[cfg(feature = "parallel")]
    if dst.len() >= PAR_THRESHOLD {
        xor_inplace_par(dst, pad);
        return;
    }
    xor_words(dst, pad);
}

/// Sequential word-at-a-time XOR.
pub fn xor_inplace_seq(dst: &mut [u8], pad: &[u8]) {
    assert_eq!(dst.len(), pad.len(), "xor operand length mismatch");
    xor_words(dst, pad);
}

/// Parallel XOR over fixed-size chunks.
#[cfg(feature = "parallel")]
pub fn xor_inplace_par(dst: &mut [u8], pad: &[u8]) {
    assert_eq!(dst.len(), pad.len(), "xor operand length mismatch");
    dst.par_chunks_mut(PAR_CHUNK)
        .zip(pad.par_chunks(PAR_CHUNK))
        .for_each(|(d, p)| xor_words(d, p));
}

/// `dst[i] = src[i] ^ pad[i]`, one read pass per operand.
pub fn xor_into(dst: &mut [u8], src: &[u8], pad: &[u8]) {
    assert!(dst.len() == src.len() && dst.len() == pad.len(), "xor operand length mismatch");
    #[cfg(feature = "parallel")]
    if dst.len() >= PAR_THRESHOLD {
        dst.par_chunks_mut(PAR_CHUNK)
            .zip(src.par_chunks(PAR_CHUNK).zip(pad.par_chunks(PAR_CHUNK)))
            .for_each(|(d, (s, p))| xor_into_words(d, s, p));
        return;
    }
    xor_into_words(dst, src, pad);
}

/// Sequential variant of [`xor_into`].
pub fn xor_into_seq(dst: &mut [u8], src: &[u8], pad: &[u8]) {
    assert!(dst.len() == src.len() && dst.len() == pad.len(), "xor operand length mismatch");
    xor_into_words(dst, src, pad);
}

fn xor_into_words(dst: &mut [u8], src: &[u8], pad: &[u8]) {
    let mut d = dst.chunks_exact_mut(8);
    let mut s = src.chunks_exact(8);
    let mut p = pad.chunks_exact(8);
    for ((dc, sc), pc) in (&mut d).zip(&mut s).zip(&mut p) {
        let x = u64::from_ne_bytes(sc.try_into().unwrap())
            ^ u64::from_ne_bytes(pc.try_into().unwrap());
        dc.copy_from_slice(&x.to_ne_bytes());
    }
    for ((db, sb), pb) in
        d.into_remainder().iter_mut().zip(s.remainder()).zip(p.remainder())
    {
        *db = sb ^ pb;
    }
}

fn xor_words(dst: &mut [u8], pad: &[u8]) {
    let mut d = dst.chunks_exact_mut(8);
    let mut p = pad.chunks_exact(8);
    for (dc, pc) in (&mut d).zip(&mut p) {
        let x = u64::from_ne_bytes(dc.try_into().unwrap())
            ^ u64::from_ne_bytes(pc.try_into().unwrap());
        dc.copy_from_slice(&x.to_ne_bytes());
    }
    for (db, pb) in d.into_remainder().iter_mut().zip(p.remainder()) {
        *db ^= pb;
    }
}

/// Run two independent jobs, in parallel when the feature allows.
pub(crate) fn join2<A, B, FA, FB>(fa: FA, fb: FB) -> (A, B)
where
    A: Send,
    B: Send,
    FA: FnOnce() -> A + Send,
    FB: FnOnce() -> B + Send,
{
    #[cfg(feature = "parallel")]
    {
        rayon::join(fa, fb)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (fa(), fb())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn word_path_matches_byte_path(data in proptest::collection::vec(any::<u8>(), 0..300),
                                       pad in proptest::collection::vec(any::<u8>(), 0..300)) {
            let n = data.len().min(pad.len());
            let mut a = data[..n].to_vec();
            let mut b = a.clone();
            xor_inplace_seq(&mut a, &pad[..n]);
            for (x, y) in b.iter_mut().zip(&pad[..n]) {
                *x ^= y;
            }
            prop_assert_eq!(a, b);
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_path_matches_sequential() {
        let data: Vec<u8> = (0..(1 << 18) + 13).map(|i| (i * 31 % 251) as u8).collect();
        let pad: Vec<u8> = (0..data.len()).map(|i| (i * 17 % 241) as u8).collect();
        let mut seq = data.clone();
        let mut par = data;
        xor_inplace_seq(&mut seq, &pad);
        xor_inplace_par(&mut par, &pad);
        assert_eq!(seq, par);
    }

    #[test]
    fn xor_into_matches_inplace() {
        let src: Vec<u8> = (0..5000).map(|i| (i * 13 % 255) as u8).collect();
        let pad: Vec<u8> = (0..5000).map(|i| (i * 29 % 253) as u8).collect();
        let mut dst = vec![0u8; 5000];
        xor_into_seq(&mut dst, &src, &pad);
        let mut expected = src.clone();
        xor_inplace_seq(&mut expected, &pad);
        assert_eq!(dst, expected);
        xor_into(&mut dst, &src, &pad);
        assert_eq!(dst, expected);
    }

    #[test]
    fn xor_is_an_involution() {
        let mut data: Vec<u8> = (0..1000).map(|i| (i % 256) as u8).collect();
        let orig = data.clone();
        let pad: Vec<u8> = (0..1000).map(|i| (i * 7 % 256) as u8).collect();
        xor_inplace(&mut data, &pad);
        xor_inplace(&mut data, &pad);
        assert_eq!(data, orig);
    }
}
