//! Binary interchange format. After the header `>>signed_code<<` each map
//! is one byte `n` followed, for every vertex in order, by its rotation as
//! 1-based neighbour bytes and a terminating 0. Bit 7 of a neighbour byte is
//! set when that edge has signature -1.

use std::io::{self, Write};

use crate::embedding::{EmbeddedMap, Vertex};
use crate::error::SignedCodeError;

pub const HEADER: &[u8] = b">>signed_code<<";

const TWIST: u8 = 0x80;

/// Appends the encoding of one map, without the header.
pub fn encode_map(m: &EmbeddedMap, out: &mut Vec<u8>) -> Result<(), SignedCodeError> {
    let n = m.vertex_count();
    if n > 127 {
        return Err(SignedCodeError::VertexCountOverflow(n));
    }
    out.push(n as u8);
    for v in 0..n {
        for d in m.rotation(v) {
            let mut b = m.head(d) as u8 + 1;
            if m.is_twisted(d >> 1) {
                b |= TWIST;
            }
            out.push(b);
        }
        out.push(0);
    }
    Ok(())
}

/// Streams maps to a writer; the header is written before the first map,
/// or by [`finish`](Self::finish) if there were none.
pub struct SignedCodeWriter<W: Write> {
    inner: W,
    started: bool,
    buf: Vec<u8>,
}

impl<W: Write> SignedCodeWriter<W> {
    pub fn new(inner: W) -> Self {
        SignedCodeWriter {
            inner,
            started: false,
            buf: Vec::new(),
        }
    }

    pub fn write_map(&mut self, m: &EmbeddedMap) -> Result<(), SignedCodeError> {
        self.buf.clear();
        if !self.started {
            self.buf.extend_from_slice(HEADER);
            self.started = true;
        }
        encode_map(m, &mut self.buf)?;
        self.inner.write_all(&self.buf)?;
        Ok(())
    }

    pub fn finish(mut self) -> io::Result<W> {
        if !self.started {
            self.inner.write_all(HEADER)?;
        }
        self.inner.flush()?;
        Ok(self.inner)
    }
}

pub fn write_signed_code<'a, I>(maps: I) -> Result<Vec<u8>, SignedCodeError>
where
    I: IntoIterator<Item = &'a EmbeddedMap>,
{
    let mut w = SignedCodeWriter::new(Vec::new());
    for m in maps {
        w.write_map(m)?;
    }
    Ok(w.finish()?)
}

pub fn read_signed_code(bytes: &[u8]) -> Result<Vec<EmbeddedMap>, SignedCodeError> {
    let mut rest = bytes
        .strip_prefix(HEADER)
        .ok_or(SignedCodeError::BadHeader)?;
    let mut out = Vec::new();
    while let Some((&n, tail)) = rest.split_first() {
        let index = out.len();
        rest = tail;
        let n = n as usize;
        if n > 127 {
            return Err(SignedCodeError::VertexCountOverflow(n));
        }
        let mut rotations: Vec<Vec<Vertex>> = Vec::with_capacity(n);
        let mut twisted = Vec::new();
        for v in 0..n {
            let end = rest
                .iter()
                .position(|&b| b == 0)
                .ok_or(SignedCodeError::Truncated(index))?;
            let mut rot = Vec::with_capacity(end);
            for &b in &rest[..end] {
                let u = ((b & !TWIST) as usize)
                    .checked_sub(1)
                    .ok_or(SignedCodeError::BadByte(index, b))?;
                if b & TWIST != 0 && v < u {
                    twisted.push((v, u));
                }
                rot.push(u);
            }
            rotations.push(rot);
            rest = &rest[end + 1..];
        }
        let m = EmbeddedMap::from_neighbor_rotations(&rotations, &twisted)
            .map_err(|source| SignedCodeError::Invalid { index, source })?;
        out.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_bytes() {
        let k2 = EmbeddedMap::from_neighbor_rotations(&[vec![1], vec![0]], &[]).unwrap();
        let bytes = write_signed_code([&k2]).unwrap();
        let mut want = HEADER.to_vec();
        want.extend_from_slice(&[2, 2, 0, 1, 0]);
        assert_eq!(bytes, want);
    }

    #[test]
    fn k4_payload_length() {
        let k4 = EmbeddedMap::from_neighbor_rotations(
            &[vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]],
            &[],
        )
        .unwrap();
        let bytes = write_signed_code([&k4]).unwrap();
        assert_eq!(bytes.len() - HEADER.len(), 1 + 4 * 4);
    }

    #[test]
    fn twist_bit_set_at_both_ends() {
        let k3 = EmbeddedMap::from_neighbor_rotations(&[vec![1, 2], vec![2, 0], vec![0, 1]], &[(0, 1)])
            .unwrap();
        let bytes = write_signed_code([&k3]).unwrap();
        let body = &bytes[HEADER.len()..];
        assert_eq!(body, [3, 0x82, 3, 0, 3, 0x81, 0, 1, 2, 0]);
        let back = read_signed_code(&bytes).unwrap();
        assert_eq!(back[0].twisted_edges(), vec![(0, 1)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(read_signed_code(b"nope"), Err(SignedCodeError::BadHeader)));
        let mut b = HEADER.to_vec();
        b.extend_from_slice(&[2, 2, 0, 1]);
        assert!(matches!(read_signed_code(&b), Err(SignedCodeError::Truncated(0))));
        let mut b = HEADER.to_vec();
        b.extend_from_slice(&[2, 0x7f, 0, 1, 0]);
        assert!(matches!(read_signed_code(&b), Err(SignedCodeError::Invalid { .. })));
    }
}
