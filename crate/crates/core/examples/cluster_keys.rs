//! Cluster a field around its H-sensors, build each cluster's routing tree
//! and agree pairwise keys between c-neighbors over the toy curve.

use std::collections::BTreeMap;

use hsnsim::clustering::{build_cluster_tree, c_neighbor_pairs, form_clusters};
use hsnsim::crypto::{establish_pairwise_keys, gen_keypair, issue_certificate, verify_certificate, CurveParams};
use hsnsim::topology::{generate_field, FieldRect};
use hsnsim::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<()> {
    let t = generate_field(980, 20, FieldRect::new(100.0, 100.0), 5.05, 3)?;
    let clusters = form_clusters(&t)?;
    let trees: Vec<_> = clusters.iter().map(|c| build_cluster_tree(c, &t)).collect();

    for (c, tree) in clusters.iter().zip(&trees).take(5) {
        let depth = c.members.iter().map(|&m| tree.depth(m)).max().unwrap_or(0);
        println!(
            "head {:>2}: {:>3} members, depth {depth}, {} virtual links",
            c.head,
            c.members.len(),
            tree.virtual_edges.len()
        );
    }

    let pairs = c_neighbor_pairs(&trees);
    let curve = CurveParams::toy();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut keyring = BTreeMap::new();
    for p in &pairs {
        for id in [p.a(), p.b()] {
            keyring.entry(id).or_insert_with(|| gen_keypair(&curve, &mut rng));
        }
    }
    let est = establish_pairwise_keys(pairs.iter().copied(), &keyring, &curve)?;
    println!(
        "{} c-neighbor pairs: {} keys agreed, {} exchanges hit the identity",
        pairs.len(),
        est.keys.len(),
        est.failed.len()
    );
    if let Some((pair, msgs)) = est.transcripts.iter().next() {
        println!("transcript for ({}, {}):", pair.a(), pair.b());
        for m in msgs {
            println!("  {m:?}");
        }
    }

    // heads vouch for member keys
    let (member, kp) = keyring.iter().next().unwrap();
    let head = clusters.iter().find(|c| c.members.contains(member)).unwrap().head;
    let mut cert = issue_certificate(head, *member, kp.public());
    println!("certificate for {member} from head {head}: valid {}", verify_certificate(&cert, head));
    cert.subject += 1;
    println!("after tampering: valid {}", verify_certificate(&cert, head));
    Ok(())
}
