//! Send shares from one source under each propagation scheme and print the
//! route traces (`random phase | min-hop phase`).
//!
//!     cargo run --example propagation_schemes -- [ttl]

use hsnsim::routing::{send_packet, DropReason, PacketParams, SchemeId};
use hsnsim::topology::{build_sink_tree, generate_field, FieldRect};
use hsnsim::{Position, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let ttl: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let t = generate_field(980, 20, FieldRect::new(100.0, 100.0), 5.05, 7)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let hf = build_sink_tree(&t, &mut rng);
    let source = t.nearest_sensor(Position::new(60.0, 40.0)).unwrap();
    println!("source {source} at {:?}, {:?} hops from the sink", t.position(source), hf.hops(source));

    let params = PacketParams {
        threshold: 2,
        shares: 3,
        ttl,
        alpha1: 2,
        alpha2: 4,
    };
    for scheme in SchemeId::ALL {
        println!("{scheme}:");
        for r in send_packet(&t, &hf, source, scheme, &params, &mut rng)? {
            println!("  {:>3} hops  {}", r.hop_count(), r.trace_line());
        }
    }

    // how often does each scheme strand a share?
    let one = PacketParams { shares: 1, threshold: 1, ..params };
    for scheme in SchemeId::RANDOMIZED {
        let mut stranded = 0;
        let mut fallback = 0;
        for _ in 0..2000 {
            let r = &send_packet(&t, &hf, source, scheme, &one, &mut rng)?[0];
            stranded += (r.dropped_reason == Some(DropReason::Stranded)) as u32;
            fallback += r.fallback_hops.len();
        }
        println!("{scheme}: {stranded}/2000 stranded, {fallback} fallback relays");
    }
    Ok(())
}
