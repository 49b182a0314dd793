use sha2::{Digest, Sha256};

/// First eight bytes of the SHA-256 digest of a canonical serialization.
pub fn fingerprint(canonical: &str) -> u64 {
    let digest = Sha256::digest(canonical.as_bytes());
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_be_bytes(bytes)
}

/// Short hexadecimal rendering of a fingerprint used in printed names.
pub fn tag_hex(tag: u64) -> String {
    format!("{tag:016x}")
}
