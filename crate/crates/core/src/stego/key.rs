use std::fmt;

use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha256};

use super::StegoError;

/// 256 bits of shared secret.
#[derive(Clone, PartialEq, Eq)]
pub struct StegoKey([u8; 32]);

impl StegoKey {
    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// Lowercase hex, 64 characters.
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    /// Accepts 64 hex digits, optionally surrounded by whitespace.
    pub fn from_hex(s: &str) -> Result<Self, StegoError> {
        let s = s.trim();
        if s.len() != 64 {
            return Err(StegoError::InvalidKey(format!(
                "expected 64 hex characters, found {}",
                s.len()
            )));
        }
        let mut bytes = [0u8; 32];
        hex::decode_to_slice(s, &mut bytes).map_err(|e| StegoError::InvalidKey(e.to_string()))?;
        Ok(Self(bytes))
    }
}

// Keep key material out of logs.
impl fmt::Debug for StegoKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("StegoKey(..)")
    }
}

/// SHA-256 of the key bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyDigest([u8; 32]);

impl KeyDigest {
    pub fn of_bytes(data: &[u8]) -> Self {
        Self(Sha256::digest(data).into())
    }

    pub fn from_bytes(bytes: [u8; 32]) -> Self {
        Self(bytes)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

pub fn keygen<R: RngCore + CryptoRng>(rng: &mut R) -> Result<StegoKey, StegoError> {
    let mut bytes = [0u8; 32];
    rng.try_fill_bytes(&mut bytes)
        .map_err(|e| StegoError::EntropyUnavailable(e.to_string()))?;
    Ok(StegoKey(bytes))
}

pub fn key_digest(key: &StegoKey) -> KeyDigest {
    KeyDigest::of_bytes(key.as_bytes())
}
