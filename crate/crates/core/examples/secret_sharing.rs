//! Split a message into M shares, rebuild it from any T of them, and show
//! that fewer than T are rejected.
//!
//!     cargo run --example secret_sharing -- "some text" 3 5

use hsnsim::sharing::{chunk_bits, reconstruct, split, SecretPacket, DEFAULT_MODULUS};
use hsnsim::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = args.first().cloned().unwrap_or_else(|| "meet at the north gate".into());
    let t: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let m: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(5);
    let q = DEFAULT_MODULUS;

    let secret = SecretPacket::from_bytes(text.as_bytes(), q)?;
    println!(
        "{} bytes -> {} chunks of {} bits mod {q}",
        text.len(),
        secret.chunks.len(),
        chunk_bits(q)
    );
    let shares = split(&secret, t, m, q, &mut ChaCha8Rng::seed_from_u64(42))?;
    for s in &shares {
        println!("share {}: {:?}", s.index, &s.values[..s.values.len().min(4)]);
    }

    let tail: Vec<_> = shares[m - t..].to_vec();
    let back = reconstruct(&tail, t, q)?.to_bytes(q)?;
    println!("from shares {:?}: {:?}", tail.iter().map(|s| s.index).collect::<Vec<_>>(), String::from_utf8_lossy(&back));

    match reconstruct(&shares[..t - 1], t, q) {
        Ok(_) => println!("unexpected: rebuilt from {} shares", t - 1),
        Err(e) => println!("with {} shares: {e}", t - 1),
    }
    Ok(())
}
