//! The toy curve y^2 = x^3 + x + 1 over F_23: enumerate the group, walk the
//! multiples of the base point and run one Diffie-Hellman exchange.

use hsnsim::crypto::{ecdh_shared, CurveParams, EcPoint, KeyPair};
use hsnsim::Result;

fn main() -> Result<()> {
    let c = CurveParams::toy();
    let pts = c.points();
    println!("{} points (including infinity), base {:?} of order {}", pts.len(), c.base(), c.order());

    let orders: Vec<u64> = pts.iter().map(|p| c.point_order(p)).collect::<Result<_>>()?;
    let mut hist = std::collections::BTreeMap::new();
    for o in orders {
        *hist.entry(o).or_insert(0) += 1;
    }
    println!("point orders: {hist:?}");

    print!("multiples of the base:");
    for k in 1..=c.order() {
        match c.scalar_mul(k, &c.base())? {
            EcPoint::Infinity => print!(" O"),
            EcPoint::Affine { x, y } => print!(" ({x},{y})"),
        }
    }
    println!();

    let alice = KeyPair::from_private(&c, 5)?;
    let bob = KeyPair::from_private(&c, 9)?;
    let ab = ecdh_shared(&alice, &bob.public(), &c)?;
    let ba = ecdh_shared(&bob, &alice.public(), &c)?;
    println!("shared point {:?}, key bytes {:?}, agree: {}", ab.point(), ab.bytes(), ab == ba);

    // 28 is composite: private keys whose product is a multiple of 28 meet at O
    let k7 = KeyPair::from_private(&c, 7)?;
    let k4 = KeyPair::from_private(&c, 4)?;
    println!("7 x 4 exchange: {:?}", ecdh_shared(&k7, &k4.public(), &c).err());
    Ok(())
}
