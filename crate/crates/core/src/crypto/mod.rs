//! Elliptic-curve arithmetic, c-neighbor key agreement and key-storage cost
//! models.

mod cost;
mod curve;
mod keys;

pub use cost::{eg_share_probability, min_ring_for, storage_cost, ShareProbability, StorageScheme};
pub use curve::{CurveParams, EcPoint, MAX_ENUMERABLE_PRIME};
pub use keys::{
    ecdh_shared, establish_pairwise_keys, gen_keypair, issue_certificate, verify_certificate, Certificate,
    KeyEstablishment, KeyPair, Message, SharedKey,
};

pub(crate) use curve::{inv_mod, is_prime, mul_mod};
