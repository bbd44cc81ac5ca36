//! Byte strings to message blocks over `F_{q^m}` and back.
//!
//! Layout: a 4-byte little-endian length, the payload, then the first 8 bytes
//! of its SHA-256. The stream is cut into symbols of `symbol_bytes` bytes
//! (little-endian integers below `q^m`) and zero-padded to whole blocks of `k`.

use rankbreak_core::{Fe, Field};
use sha2::{Digest, Sha256};

const CHECKSUM_LEN: usize = 8;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum EncodingError {
    #[error("field too small to carry a byte per symbol")]
    FieldTooSmall,
    #[error("payload longer than 4 GiB")]
    TooLong,
    #[error("decoded stream is truncated or corrupt")]
    Corrupt,
    #[error("plaintext checksum mismatch")]
    ChecksumMismatch,
}

/// Whole bytes per field symbol: `⌊log_256 q^m⌋`.
pub fn symbol_bytes(field: &Field) -> usize {
    let size = field.size() as u128;
    (0..8).take_while(|&b| 256u128.pow(b + 1) <= size).count()
}

fn checksum(data: &[u8]) -> [u8; CHECKSUM_LEN] {
    let digest = Sha256::digest(data);
    let mut out = [0u8; CHECKSUM_LEN];
    out.copy_from_slice(&digest[..CHECKSUM_LEN]);
    out
}

pub fn encode_message(field: &Field, k: usize, data: &[u8]) -> Result<Vec<Vec<Fe>>, EncodingError> {
    let width = symbol_bytes(field);
    if width == 0 || k == 0 {
        return Err(EncodingError::FieldTooSmall);
    }
    let len = u32::try_from(data.len()).map_err(|_| EncodingError::TooLong)?;
    let mut stream = Vec::with_capacity(data.len() + 4 + CHECKSUM_LEN);
    stream.extend_from_slice(&len.to_le_bytes());
    stream.extend_from_slice(data);
    stream.extend_from_slice(&checksum(data));
    let mut symbols: Vec<Fe> = stream
        .chunks(width)
        .map(|chunk| {
            let raw = chunk.iter().rev().fold(0u64, |acc, &b| (acc << 8) | b as u64);
            field.elem(raw).expect("below q^m by construction")
        })
        .collect();
    let padded = symbols.len().div_ceil(k) * k;
    symbols.resize(padded, field.elem(0).expect("zero"));
    Ok(symbols.chunks(k).map(<[Fe]>::to_vec).collect())
}

pub fn decode_message(field: &Field, blocks: &[Vec<Fe>]) -> Result<Vec<u8>, EncodingError> {
    let width = symbol_bytes(field);
    if width == 0 {
        return Err(EncodingError::FieldTooSmall);
    }
    let mut stream = Vec::new();
    for x in blocks.iter().flatten() {
        let raw = x.raw();
        if width < 8 && raw >> (8 * width) != 0 {
            return Err(EncodingError::Corrupt);
        }
        stream.extend((0..width).map(|i| (raw >> (8 * i)) as u8));
    }
    if stream.len() < 4 {
        return Err(EncodingError::Corrupt);
    }
    let len = u32::from_le_bytes(stream[..4].try_into().expect("four bytes")) as usize;
    let end = 4usize.checked_add(len).and_then(|e| e.checked_add(CHECKSUM_LEN)).ok_or(EncodingError::Corrupt)?;
    if end > stream.len() {
        return Err(EncodingError::Corrupt);
    }
    let data = &stream[4..4 + len];
    if stream[4 + len..end] != checksum(data) {
        return Err(EncodingError::ChecksumMismatch);
    }
    Ok(data.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_widths() {
        assert_eq!(symbol_bytes(&Field::new(2, 8, None).unwrap()), 1);
        assert_eq!(symbol_bytes(&Field::new(2, 7, None).unwrap()), 0);
        assert_eq!(symbol_bytes(&Field::new(2, 24, None).unwrap()), 3);
        assert_eq!(symbol_bytes(&Field::new(3, 6, None).unwrap()), 1);
    }

    #[test]
    fn roundtrip_and_tamper() {
        let f = Field::new(2, 12, None).unwrap();
        for data in [&b""[..], b"a", b"hello, rank metric"] {
            let blocks = encode_message(&f, 4, data).unwrap();
            assert!(blocks.iter().all(|b| b.len() == 4));
            assert_eq!(decode_message(&f, &blocks).unwrap(), data);
        }
        let mut blocks = encode_message(&f, 4, b"payload").unwrap();
        blocks[1][0] = f.elem(blocks[1][0].raw() ^ 1).unwrap();
        assert_eq!(decode_message(&f, &blocks), Err(EncodingError::ChecksumMismatch));
        blocks[0][0] = f.elem(0xfff).unwrap();
        assert_eq!(decode_message(&f, &blocks), Err(EncodingError::Corrupt));
    }

    #[test]
    fn too_small_field() {
        let f = Field::new(2, 6, None).unwrap();
        assert_eq!(encode_message(&f, 2, b"x"), Err(EncodingError::FieldTooSmall));
    }
}
