//! Bech32 (BIP-173) validation for the hardcoded-address rule.
//!
//! Implemented from the specification rather than through an encoding
//! library: the detector needs a yes/no answer on arbitrary source literals,
//! most of which are not addresses at all, and must accept long
//! validator-operator addresses that exceed BIP-173's 90-character transport
//! limit (the limit exists for error-correction guarantees, not validity of
//! the checksum itself, and Cosmos chains routinely exceed it).

const CHARSET: &[u8; 32] = b"qpzry9x8gf2tvdw0s3jn54khce6mua7l";

const GEN: [u32; 5] = [
    0x3b6a_57b2,
    0x2650_8e6d,
    0x1ea1_19fa,
    0x3d42_33dd,
    0x2a14_62b3,
];

fn charset_index(c: u8) -> Option<u8> {
    CHARSET.iter().position(|&x| x == c).map(|i| i as u8)
}

fn polymod(values: impl IntoIterator<Item = u8>) -> u32 {
    let mut chk: u32 = 1;
    for v in values {
        let b = chk >> 25;
        chk = ((chk & 0x01ff_ffff) << 5) ^ u32::from(v);
        for (i, g) in GEN.iter().enumerate() {
            if (b >> i) & 1 == 1 {
                chk ^= g;
            }
        }
    }
    chk
}

fn hrp_expand(hrp: &[u8]) -> impl Iterator<Item = u8> + '_ {
    hrp.iter()
        .map(|&b| b >> 5)
        .chain(std::iter::once(0))
        .chain(hrp.iter().map(|&b| b & 0x1f))
}

/// Is `s` a complete, checksum-valid Bech32 string?
///
/// Follows BIP-173 exactly except for the overall length cap (see module
/// docs): mixed case is rejected, the human-readable part must be 1..=83
/// characters in the visible-ASCII range, the separator is the last `'1'`,
/// and the data part needs at least the 6 checksum characters, all drawn
/// from the 32-character alphabet.
pub fn is_valid_bech32(s: &str) -> bool {
    if !s.is_ascii() {
        return false;
    }
    let has_lower = s.bytes().any(|b| b.is_ascii_lowercase());
    let has_upper = s.bytes().any(|b| b.is_ascii_uppercase());
    if has_lower && has_upper {
        return false;
    }
    let s = s.to_ascii_lowercase();
    let bytes = s.as_bytes();
    let Some(sep) = s.rfind('1') else {
        return false;
    };
    let (hrp, data) = (&bytes[..sep], &bytes[sep + 1..]);
    if hrp.is_empty() || hrp.len() > 83 || data.len() < 6 {
        return false;
    }
    if !hrp.iter().all(|&b| (33..=126).contains(&b)) {
        return false;
    }
    let mut indexed = Vec::with_capacity(data.len());
    for &b in data {
        match charset_index(b) {
            Some(i) => indexed.push(i),
            None => return false,
        }
    }
    polymod(hrp_expand(hrp).chain(indexed)) == 1
}
