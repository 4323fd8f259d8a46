use crate::codes::LinearScheme;
use crate::error::{Error, Result};
use crate::gf::Elem;

/// Bits per dit when `q = 2^m` with `m <= 8`.
fn bits_per_dit(q: u32) -> Result<u32> {
    if q.is_power_of_two() && (2..=256).contains(&q) {
        Ok(q.trailing_zeros())
    } else {
        Err(Error::UnsupportedAlphabet(q))
    }
}

/// Splits a dit stream into `len`-dit messages. The stream is followed by
/// a marker dit 1 and zeros up to a chunk boundary; an empty stream gives
/// no chunks.
pub fn chunk_dits(dits: &[Elem], q: u32, len: usize) -> Result<Vec<Vec<Elem>>> {
    if let Some(&bad) = dits.iter().find(|&&d| d >= q) {
        return Err(Error::ElementOutOfRange { value: bad, q });
    }
    if dits.is_empty() {
        return Ok(Vec::new());
    }
    if len == 0 {
        return Err(Error::ZeroMessageRate);
    }
    let mut padded = dits.to_vec();
    padded.push(1);
    padded.resize(padded.len().div_ceil(len) * len, 0);
    Ok(padded.chunks(len).map(<[Elem]>::to_vec).collect())
}

/// Inverse of [`chunk_dits`].
pub fn unchunk_dits(chunks: &[Vec<Elem>]) -> Result<Vec<Elem>> {
    let mut dits: Vec<Elem> = chunks.concat();
    if dits.is_empty() {
        return Ok(dits);
    }
    let marker = dits.iter().rposition(|&d| d != 0).ok_or(Error::BadPadding)?;
    if dits[marker] != 1 {
        return Err(Error::BadPadding);
    }
    dits.truncate(marker);
    Ok(dits)
}

/// Bytes as `m`-bit dits, most significant bit first; the last dit is
/// zero-filled on the right.
pub fn bytes_to_dits(bytes: &[u8], q: u32) -> Result<Vec<Elem>> {
    let m = bits_per_dit(q)?;
    let mut out = Vec::with_capacity((bytes.len() * 8).div_ceil(m as usize));
    let (mut acc, mut have) = (0u32, 0u32);
    for &b in bytes {
        acc = (acc << 8) | b as u32;
        have += 8;
        while have >= m {
            have -= m;
            out.push((acc >> have) & (q - 1));
        }
        acc &= (1 << have) - 1;
    }
    if have > 0 {
        out.push((acc << (m - have)) & (q - 1));
    }
    Ok(out)
}

/// Inverse of [`bytes_to_dits`]; trailing fill bits are dropped.
pub fn dits_to_bytes(dits: &[Elem], q: u32) -> Result<Vec<u8>> {
    let m = bits_per_dit(q)?;
    let mut out = Vec::with_capacity(dits.len() * m as usize / 8);
    let (mut acc, mut have) = (0u32, 0u32);
    for &d in dits {
        if d >= q {
            return Err(Error::ElementOutOfRange { value: d, q });
        }
        acc = (acc << m) | d;
        have += m;
        if have >= 8 {
            have -= 8;
            out.push((acc >> have) as u8);
            acc &= (1 << have) - 1;
        }
    }
    Ok(out)
}

/// Packs bytes into message vectors of the scheme.
pub fn chunk_payload(bytes: &[u8], scheme: &LinearScheme) -> Result<Vec<Vec<Elem>>> {
    let q = scheme.spec.q;
    let dits = bytes_to_dits(bytes, q)?;
    chunk_dits(&dits, q, scheme.spec.message_len())
}

pub fn unchunk_payload(chunks: &[Vec<Elem>], scheme: &LinearScheme) -> Result<Vec<u8>> {
    dits_to_bytes(&unchunk_dits(chunks)?, scheme.spec.q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::fig1;
    use proptest::prelude::*;

    #[test]
    fn empty_payload() {
        let s = fig1(2).unwrap();
        assert!(chunk_payload(&[], &s).unwrap().is_empty());
        assert!(unchunk_payload(&[], &s).unwrap().is_empty());
    }

    #[test]
    fn three_bytes_fig1() {
        let s = fig1(2).unwrap();
        let c = chunk_payload(&[0xab, 0x01, 0xff], &s).unwrap();
        assert_eq!(c.len(), 9);
        assert_eq!(c[0], vec![1, 0, 1]);
        assert_eq!(c[8], vec![1, 0, 0]);
        assert_eq!(unchunk_payload(&c, &s).unwrap(), vec![0xab, 0x01, 0xff]);
    }

    #[test]
    fn odd_alphabets_rejected() {
        assert_eq!(bytes_to_dits(&[1], 3).unwrap_err(), Error::UnsupportedAlphabet(3));
        assert_eq!(bytes_to_dits(&[1], 512).unwrap_err(), Error::UnsupportedAlphabet(512));
        let s = fig1(3).unwrap();
        assert_eq!(chunk_payload(&[1], &s).unwrap_err(), Error::UnsupportedAlphabet(3));
    }

    #[test]
    fn bad_padding_detected() {
        assert_eq!(unchunk_dits(&[vec![0, 0]]).unwrap_err(), Error::BadPadding);
        assert_eq!(unchunk_dits(&[vec![1, 2]]).unwrap_err(), Error::BadPadding);
    }

    proptest! {
        #[test]
        fn bytes_round_trip(bytes in proptest::collection::vec(any::<u8>(), 0..64), m in 1u32..=8) {
            let q = 1u32 << m;
            let dits = bytes_to_dits(&bytes, q).unwrap();
            prop_assert_eq!(dits_to_bytes(&dits, q).unwrap(), bytes);
        }

        #[test]
        fn dits_round_trip(dits in proptest::collection::vec(0u32..7, 0..50), len in 1usize..9) {
            let c = chunk_dits(&dits, 7, len).unwrap();
            prop_assert!(c.iter().all(|x| x.len() == len));
            prop_assert_eq!(unchunk_dits(&c).unwrap(), dits);
        }
    }
}
