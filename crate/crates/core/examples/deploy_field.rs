//! Deploy a field, inspect its connectivity and the min-hop tree, and check
//! that the text dump reloads to the same topology.
//!
//!     cargo run --example deploy_field -- [seed]

use hsnsim::topology::{build_sink_tree, generate_field, FieldRect, NodeKind, Topology};
use hsnsim::{Result, SINK};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let t = generate_field(980, 20, FieldRect::new(100.0, 100.0), 5.05, seed)?;

    let heads = t.ids_of_kind(NodeKind::HSensor).count();
    println!("{} nodes ({heads} H-sensors), mean degree {:.2}", t.len(), t.mean_degree());
    println!("sink has {} neighbors", t.neighbors(SINK)?.len());

    let hf = build_sink_tree(&t, &mut ChaCha8Rng::seed_from_u64(seed));
    let deepest = (0..t.len()).filter_map(|id| hf.hops(id)).max().unwrap_or(0);
    println!("{} nodes cannot reach the sink; deepest node is {deepest} hops out", hf.unreachable_count());

    let far = t.nearest_sensor(hsnsim::Position::new(90.0, 0.0)).unwrap();
    match hf.hops(far) {
        Some(h) => println!("sensor {far} near (90, 0) is {h} hops away, parent {:?}", hf.parent(far)),
        None => println!("sensor {far} near (90, 0) is cut off"),
    }

    let mut dump = Vec::new();
    t.dump(&mut dump)?;
    let back = Topology::load(dump.as_slice())?;
    let mut again = Vec::new();
    back.dump(&mut again)?;
    println!("dump is {} bytes, reload identical: {}", dump.len(), dump == again);
    print!("{}", String::from_utf8_lossy(&dump).lines().take(4).collect::<Vec<_>>().join("\n"));
    println!("\n...");
    Ok(())
}
