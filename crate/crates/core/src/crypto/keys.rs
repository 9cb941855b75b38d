//! Per-sensor ECC key pairs, pairwise ECDH between c-neighbors, and the
//! symbolic certificates cluster heads issue for member public keys.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use rand::Rng;

use super::curve::{CurveParams, EcPoint};
use crate::clustering::CNeighborPair;
use crate::error::{Error, Result};
use crate::topology::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KeyPair {
    private: u64,
    public: EcPoint,
}

impl KeyPair {
    /// Derive the pair for an explicit private scalar in `[1, order - 1]`.
    pub fn from_private(c: &CurveParams, private: u64) -> Result<KeyPair> {
        if private == 0 || private >= c.order() {
            return Err(Error::Parameter(format!(
                "private scalar {private} outside [1, {}]",
                c.order() - 1
            )));
        }
        Ok(KeyPair {
            private,
            public: c.scalar_mul(private, &c.base())?,
        })
    }

    pub fn private(&self) -> u64 {
        self.private
    }

    pub fn public(&self) -> EcPoint {
        self.public
    }
}

pub fn gen_keypair<R: Rng + ?Sized>(c: &CurveParams, rng: &mut R) -> KeyPair {
    let private = rng.random_range(1..c.order());
    KeyPair::from_private(c, private).expect("scalar drawn in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedKey {
    point: EcPoint,
    bytes: Vec<u8>,
}

impl SharedKey {
    pub fn point(&self) -> EcPoint {
        self.point
    }

    /// Big-endian x-coordinate, padded to the field width.
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

pub fn ecdh_shared(mine: &KeyPair, theirs_public: &EcPoint, c: &CurveParams) -> Result<SharedKey> {
    if theirs_public.is_identity() {
        return Err(Error::KeyAgreement("peer public key is the identity".into()));
    }
    if !c.is_on_curve(theirs_public) {
        return Err(Error::KeyAgreement(format!("peer public key {theirs_public} is not on the curve")));
    }
    let point = c.scalar_mul(mine.private, theirs_public)?;
    let EcPoint::Affine { x, .. } = point else {
        return Err(Error::KeyAgreement("shared point is the identity".into()));
    };
    let width = c.field_bytes();
    let bytes = x.to_be_bytes()[8 - width..].to_vec();
    Ok(SharedKey { point, bytes })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Message {
    PublicKey { from: NodeId, to: NodeId, key: EcPoint },
    Derived { node: NodeId },
}

#[derive(Clone, Debug, Default)]
pub struct KeyEstablishment {
    pub keys: BTreeMap<CNeighborPair, SharedKey>,
    /// Pairs whose two derivations disagreed or could not be computed.
    pub failed: Vec<CNeighborPair>,
    pub transcripts: BTreeMap<CNeighborPair, Vec<Message>>,
}

/// Run the three-step exchange for every pair: the smaller id sends its
/// public key, the larger replies with its own, then each side multiplies
/// the peer key by its private scalar. A pair is stored only when both
/// derivations agree.
pub fn establish_pairwise_keys(
    pairs: impl IntoIterator<Item = CNeighborPair>,
    keyring: &BTreeMap<NodeId, KeyPair>,
    c: &CurveParams,
) -> Result<KeyEstablishment> {
    let mut out = KeyEstablishment::default();
    for pair in pairs {
        let (u, v) = (pair.a(), pair.b());
        let ku = keyring.get(&u).ok_or(Error::MissingKeyPair(u))?;
        let kv = keyring.get(&v).ok_or(Error::MissingKeyPair(v))?;
        let transcript = vec![
            Message::PublicKey { from: u, to: v, key: ku.public },
            Message::PublicKey { from: v, to: u, key: kv.public },
            Message::Derived { node: u },
            Message::Derived { node: v },
        ];
        out.transcripts.insert(pair, transcript);
        match (ecdh_shared(ku, &kv.public, c), ecdh_shared(kv, &ku.public, c)) {
            (Ok(at_u), Ok(at_v)) if at_u == at_v => {
                out.keys.insert(pair, at_u);
            }
            _ => out.failed.push(pair),
        }
    }
    Ok(out)
}

/// Head-issued certificate over a member's public key. Signatures are not
/// modelled; `seal` binds the fields so any later edit is detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: NodeId,
    pub subject_public: EcPoint,
    pub issuer: NodeId,
    pub valid: bool,
    seal: u64,
}

fn seal_of(issuer: NodeId, subject: NodeId, public: &EcPoint) -> u64 {
    let mut h = DefaultHasher::new();
    (issuer, subject, public).hash(&mut h);
    h.finish()
}

pub fn issue_certificate(head: NodeId, subject: NodeId, subject_public: EcPoint) -> Certificate {
    Certificate {
        subject,
        subject_public,
        issuer: head,
        valid: true,
        seal: seal_of(head, subject, &subject_public),
    }
}

pub fn verify_certificate(cert: &Certificate, head: NodeId) -> bool {
    cert.valid && cert.issuer == head && cert.seal == seal_of(cert.issuer, cert.subject, &cert.subject_public)
}
