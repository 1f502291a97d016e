//! Versioned binary container for [`TopicModel`].
//!
//! ```text
//! magic      8 bytes  "TLDAMODL"
//! version    u32 LE
//! length     u64 LE   payload byte count
//! payload    length bytes
//! checksum   32 bytes SHA-256 of the payload
//! ```
//!
//! The payload stores topics, vocabulary size, alpha, beta, iterations and
//! seed, then the vocabulary (u32 length + UTF-8 per word), the full `phi`
//! matrix as f64 bit patterns, and the top-word list of each topic.

use sha2::{Digest, Sha256};

use super::{LdaParams, TopicError, TopicModel, Vocabulary};

pub const MODEL_MAGIC: &[u8; 8] = b"TLDAMODL";
pub const MODEL_VERSION: u32 = 1;
const HEADER_LEN: usize = 8 + 4 + 8;
const CHECKSUM_LEN: usize = 32;

pub fn checksum_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn save_model(model: &TopicModel) -> Vec<u8> {
    let params = model.params();
    let mut payload = Vec::new();
    payload.extend((params.topics as u32).to_le_bytes());
    payload.extend((model.vocab().len() as u32).to_le_bytes());
    payload.extend(params.alpha.to_le_bytes());
    payload.extend(params.beta.to_le_bytes());
    payload.extend((params.iterations as u32).to_le_bytes());
    payload.extend(params.seed.to_le_bytes());
    for word in model.vocab().words() {
        payload.extend((word.len() as u32).to_le_bytes());
        payload.extend(word.as_bytes());
    }
    for x in model.phi() {
        payload.extend(x.to_le_bytes());
    }
    for topic in 0..params.topics {
        let top = model.top_words(topic);
        payload.extend((top.len() as u32).to_le_bytes());
        for &(id, weight) in top {
            payload.extend(id.to_le_bytes());
            payload.extend(weight.to_le_bytes());
        }
    }

    let mut out = Vec::with_capacity(HEADER_LEN + payload.len() + CHECKSUM_LEN);
    out.extend(MODEL_MAGIC);
    out.extend(MODEL_VERSION.to_le_bytes());
    out.extend((payload.len() as u64).to_le_bytes());
    out.extend(&payload);
    out.extend(Sha256::digest(&payload).iter());
    out
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], TopicError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len()).ok_or_else(|| {
            TopicError::Corrupt(format!("payload ends early at byte {}", self.pos))
        })?;
        let slice = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(slice)
    }

    fn u32(&mut self) -> Result<u32, TopicError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64, TopicError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, TopicError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn load_model(bytes: &[u8]) -> Result<TopicModel, TopicError> {
    if bytes.len() < MODEL_MAGIC.len() || &bytes[..MODEL_MAGIC.len()] != MODEL_MAGIC {
        return Err(TopicError::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(TopicError::Checksum("truncated header".into()));
    }
    let version = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    if version != MODEL_VERSION {
        return Err(TopicError::Version(version));
    }
    let len = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
    let expected = (HEADER_LEN as u64).checked_add(len).and_then(|n| n.checked_add(CHECKSUM_LEN as u64));
    if expected != Some(bytes.len() as u64) {
        return Err(TopicError::Checksum(format!(
            "file is {} bytes, header declares a {len}-byte payload",
            bytes.len()
        )));
    }
    let payload = &bytes[HEADER_LEN..HEADER_LEN + len as usize];
    let stored = &bytes[HEADER_LEN + len as usize..];
    if Sha256::digest(payload).as_slice() != stored {
        return Err(TopicError::Checksum("payload digest differs".into()));
    }

    let mut r = Reader { bytes: payload, pos: 0 };
    let topics = r.u32()? as usize;
    let v = r.u32()? as usize;
    let alpha = r.f64()?;
    let beta = r.f64()?;
    let iterations = r.u32()? as usize;
    let seed = r.u64()?;
    let mut words = Vec::with_capacity(v);
    for _ in 0..v {
        let n = r.u32()? as usize;
        let word = std::str::from_utf8(r.take(n)?)
            .map_err(|_| TopicError::Corrupt("vocabulary word is not UTF-8".into()))?;
        words.push(word.to_string());
    }
    let vocab = Vocabulary::from_words(words)
        .ok_or_else(|| TopicError::Corrupt("duplicate vocabulary word".into()))?;
    let cells = topics
        .checked_mul(v)
        .ok_or_else(|| TopicError::Corrupt("matrix dimensions overflow".into()))?;
    let mut phi = Vec::with_capacity(cells.min(payload.len() / 8));
    for _ in 0..cells {
        phi.push(r.f64()?);
    }
    let mut top_words = Vec::with_capacity(topics);
    for topic in 0..topics {
        let n = r.u32()? as usize;
        let mut list = Vec::with_capacity(n.min(v));
        for _ in 0..n {
            let id = r.u32()?;
            let weight = r.f64()?;
            let consistent = (id as usize) < v && phi[topic * v + id as usize].to_bits() == weight.to_bits();
            if !consistent {
                return Err(TopicError::Corrupt(format!("top word {id} of topic {topic} disagrees with phi")));
            }
            list.push((id, weight));
        }
        top_words.push(list);
    }
    if r.pos != payload.len() {
        return Err(TopicError::Corrupt("trailing bytes in payload".into()));
    }
    let params = LdaParams { topics, alpha, beta, iterations, seed };
    Ok(TopicModel::assemble(vocab, params, phi, top_words))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model() -> TopicModel {
        let vocab = Vocabulary::from_words(["phone", "bank", "rate"].map(String::from)).unwrap();
        let phi = vec![0.7, 0.2, 0.1, 0.05, 0.5, 0.45];
        TopicModel::from_phi(vocab, LdaParams::with_topics(2, 42), phi).unwrap()
    }

    #[test]
    fn round_trip_is_exact() {
        let m = model();
        let bytes = save_model(&m);
        assert_eq!(load_model(&bytes).unwrap(), m);
        assert_eq!(save_model(&load_model(&bytes).unwrap()), bytes);
    }

    #[test]
    fn truncation_and_corruption_fail_the_checksum() {
        let bytes = save_model(&model());
        for cut in [bytes.len() - 1, bytes.len() - 40, 15] {
            assert!(matches!(load_model(&bytes[..cut]), Err(TopicError::Checksum(_))), "cut {cut}");
        }
        let mut flipped = bytes.clone();
        flipped[30] ^= 0x01;
        assert!(matches!(load_model(&flipped), Err(TopicError::Checksum(_))));
    }

    #[test]
    fn wrong_magic_or_version() {
        let mut bytes = save_model(&model());
        assert_eq!(load_model(b"hello world, not a model"), Err(TopicError::BadMagic));
        bytes[8] = 9;
        assert_eq!(load_model(&bytes), Err(TopicError::Version(9)));
    }
}
