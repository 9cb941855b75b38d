//! Shamir (T, M) threshold sharing over a prime field.
//!
//! A packet is split chunk by chunk: each chunk is the constant term of a
//! fresh degree-(T-1) polynomial and share `i` carries the evaluations at
//! `x = i`. Any T shares recover the packet by Lagrange interpolation at 0.

use rand::Rng;

use crate::crypto::{inv_mod, is_prime, mul_mod};
use crate::error::{Error, Result};
use crate::routing::{RouteRecord, ShareHeader};

/// 2^31 - 1.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

const PAD_MARKER: u8 = 0x80;

/// A packet as a sequence of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SecretPacket {
    pub chunks: Vec<u64>,
}

/// Payload bits carried per chunk: `floor(log2 q)`, so every chunk is < q.
pub fn chunk_bits(q: u64) -> u32 {
    63 - q.leading_zeros()
}

impl SecretPacket {
    pub fn from_chunks(chunks: Vec<u64>) -> Self {
        SecretPacket { chunks }
    }

    /// Pack bytes into chunks of `chunk_bits(q)` bits. A 0x80 marker is
    /// appended before packing so the exact length survives zero padding.
    pub fn from_bytes(bytes: &[u8], q: u64) -> Result<Self> {
        check_modulus(q)?;
        let bits = chunk_bits(q);
        let mut chunks = Vec::with_capacity(((bytes.len() + 1) * 8).div_ceil(bits as usize));
        let mut acc: u128 = 0;
        let mut held = 0u32;
        for &byte in bytes.iter().chain([PAD_MARKER].iter()) {
            acc |= (byte as u128) << held;
            held += 8;
            while held >= bits {
                chunks.push((acc & ((1u128 << bits) - 1)) as u64);
                acc >>= bits;
                held -= bits;
            }
        }
        if held > 0 {
            chunks.push(acc as u64);
        }
        Ok(SecretPacket { chunks })
    }

    pub fn to_bytes(&self, q: u64) -> Result<Vec<u8>> {
        check_modulus(q)?;
        let bits = chunk_bits(q);
        let mut out = Vec::with_capacity(self.chunks.len() * bits as usize / 8);
        let mut acc: u128 = 0;
        let mut held = 0u32;
        for &c in &self.chunks {
            if c >> bits != 0 {
                return Err(Error::InvalidShares(format!("chunk {c} exceeds {bits} payload bits")));
            }
            acc |= (c as u128) << held;
            held += bits;
            while held >= 8 {
                out.push(acc as u8);
                acc >>= 8;
                held -= 8;
            }
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        if out.pop() != Some(PAD_MARKER) {
            return Err(Error::InvalidShares("payload padding marker missing".into()));
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Share {
    /// Evaluation abscissa, 1..=M.
    pub index: u32,
    /// One evaluation per packet chunk.
    pub values: Vec<u64>,
    pub header: ShareHeader,
    /// Filled in once the share has been routed.
    pub route: Option<RouteRecord>,
}

impl Share {
    pub fn new(index: u32, values: Vec<u64>) -> Self {
        Share {
            index,
            values,
            header: ShareHeader::default(),
            route: None,
        }
    }
}

fn check_modulus(q: u64) -> Result<()> {
    if !(2..1 << 62).contains(&q) || !is_prime(q) {
        return Err(Error::Parameter(format!("modulus {q} must be a prime below 2^62")));
    }
    Ok(())
}

fn check_params(t: usize, m: usize, q: u64) -> Result<()> {
    check_modulus(q)?;
    if t == 0 || t > m {
        return Err(Error::Parameter(format!("need 1 <= T <= M, got T={t}, M={m}")));
    }
    if m as u64 >= q {
        return Err(Error::Parameter(format!("share count {m} must be below the modulus {q}")));
    }
    Ok(())
}

/// Split with coefficients drawn uniformly from `[0, q)`, chunk by chunk.
pub fn split<R: Rng + ?Sized>(secret: &SecretPacket, t: usize, m: usize, q: u64, rng: &mut R) -> Result<Vec<Share>> {
    check_params(t, m, q)?;
    let coefficients: Vec<Vec<u64>> = secret
        .chunks
        .iter()
        .map(|_| (1..t).map(|_| rng.random_range(0..q)).collect())
        .collect();
    split_with_coefficients(secret, t, m, q, &coefficients)
}

/// Split with explicit higher-order coefficients: `coefficients[c]` holds the
/// `T - 1` coefficients (degree 1 upward) of chunk `c`'s polynomial.
pub fn split_with_coefficients(
    secret: &SecretPacket,
    t: usize,
    m: usize,
    q: u64,
    coefficients: &[Vec<u64>],
) -> Result<Vec<Share>> {
    check_params(t, m, q)?;
    if coefficients.len() != secret.chunks.len() || coefficients.iter().any(|c| c.len() != t - 1) {
        return Err(Error::Parameter("need T-1 coefficients per chunk".into()));
    }
    if let Some(&bad) = secret.chunks.iter().find(|&&c| c >= q) {
        return Err(Error::Parameter(format!("chunk {bad} is not below the modulus {q}")));
    }
    let shares = (1..=m as u64)
        .map(|x| {
            let values = secret
                .chunks
                .iter()
                .zip(coefficients)
                .map(|(&constant, higher)| {
                    // Horner from the top coefficient down
                    let mut acc = 0;
                    for &k in higher.iter().rev() {
                        acc = (mul_mod(acc, x, q) + k % q) % q;
                    }
                    (mul_mod(acc, x, q) + constant) % q
                })
                .collect();
            Share::new(x as u32, values)
        })
        .collect();
    Ok(shares)
}

/// Recover the packet from at least `t` shares. The `t` lowest-indexed
/// shares are interpolated; any other valid subset yields the same packet.
pub fn reconstruct(shares: &[Share], t: usize, q: u64) -> Result<SecretPacket> {
    check_modulus(q)?;
    if t == 0 {
        return Err(Error::Parameter("threshold must be at least 1".into()));
    }
    if shares.len() < t {
        return Err(Error::InsufficientShares {
            need: t,
            got: shares.len(),
        });
    }
    let mut sorted: Vec<&Share> = shares.iter().collect();
    sorted.sort_by_key(|s| s.index);
    if let Some(w) = sorted.windows(2).find(|w| w[0].index == w[1].index) {
        return Err(Error::InvalidShares(format!("duplicate share index {}", w[0].index)));
    }
    if sorted.iter().any(|s| s.index == 0 || s.index as u64 >= q) {
        return Err(Error::InvalidShares("share index must lie in [1, q)".into()));
    }
    let width = sorted[0].values.len();
    if sorted.iter().any(|s| s.values.len() != width) {
        return Err(Error::InvalidShares("shares carry different chunk counts".into()));
    }

    let used = &sorted[..t];
    let xs: Vec<u64> = used.iter().map(|s| s.index as u64).collect();
    // Lagrange basis at zero: l_j(0) = prod_{k != j} x_k / (x_k - x_j)
    let basis: Vec<u64> = (0..t)
        .map(|j| {
            let (mut num, mut den) = (1u64, 1u64);
            for k in (0..t).filter(|&k| k != j) {
                num = mul_mod(num, xs[k], q);
                den = mul_mod(den, (xs[k] + q - xs[j]) % q, q);
            }
            mul_mod(num, inv_mod(den, q), q)
        })
        .collect();
    let chunks = (0..width)
        .map(|c| {
            used.iter()
                .zip(&basis)
                .fold(0, |acc, (s, &l)| (acc + mul_mod(s.values[c] % q, l, q)) % q)
        })
        .collect();
    Ok(SecretPacket { chunks })
}
