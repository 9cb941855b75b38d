//! Short Weierstrass curves `y^2 = x^3 + ax + b` over a prime field that fits
//! in a `u64`. Arithmetic is variable-time; this is for simulation, not for
//! protecting real traffic.

use std::fmt;

use crate::error::{Error, Result};

/// Largest prime for which the group order may be found by enumeration.
pub const MAX_ENUMERABLE_PRIME: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EcPoint {
    Infinity,
    Affine { x: u64, y: u64 },
}

impl EcPoint {
    pub const fn affine(x: u64, y: u64) -> Self {
        EcPoint::Affine { x, y }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, EcPoint::Infinity)
    }
}

impl fmt::Display for EcPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EcPoint::Infinity => write!(f, "O"),
            EcPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    p: u64,
    a: u64,
    b: u64,
    base: EcPoint,
    order: u64,
}

impl CurveParams {
    /// Validate and build curve parameters. When `order` is `None` it is found
    /// by repeated addition, which is only allowed for `p < 10^4`.
    pub fn new(p: u64, a: u64, b: u64, base: EcPoint, order: Option<u64>) -> Result<CurveParams> {
        if !(3..1 << 63).contains(&p) || !is_prime(p) {
            return Err(Error::Config(format!("curve modulus {p} must be an odd prime below 2^63")));
        }
        let (a, b) = (a % p, b % p);
        let disc = add_mod(
            mul_mod(4, mul_mod(a, mul_mod(a, a, p), p), p),
            mul_mod(27, mul_mod(b, b, p), p),
            p,
        );
        if disc == 0 {
            return Err(Error::Config("singular curve: 4a^3 + 27b^2 = 0 mod p".into()));
        }
        let mut curve = CurveParams { p, a, b, base, order: 0 };
        if base.is_identity() || !curve.is_on_curve(&base) {
            return Err(Error::Config(format!("base point {base} is not a finite point on the curve")));
        }
        curve.order = match order {
            Some(n) => n,
            None if p < MAX_ENUMERABLE_PRIME => curve.point_order(&base)?,
            None => {
                return Err(Error::Config(format!(
                    "base point order must be given for p >= {MAX_ENUMERABLE_PRIME}"
                )))
            }
        };
        if curve.order < 2 || !curve.scalar_mul(curve.order, &base)?.is_identity() {
            return Err(Error::Config(format!("{} is not the order of the base point", curve.order)));
        }
        Ok(curve)
    }

    /// `y^2 = x^3 + x + 1` over F_23, with the base point chosen as the
    /// smallest point of maximal order among all enumerated points.
    pub fn toy() -> CurveParams {
        let (p, a, b) = (23, 1, 1);
        let probe = CurveParams {
            p,
            a,
            b,
            base: EcPoint::affine(0, 1),
            order: 0,
        };
        let mut best = (0, EcPoint::Infinity);
        for pt in probe.points() {
            let n = probe.point_order(&pt).expect("enumerated point is on the curve");
            if n > best.0 {
                best = (n, pt);
            }
        }
        CurveParams::new(p, a, b, best.1, Some(best.0)).expect("toy curve is valid")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn base(&self) -> EcPoint {
        self.base
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Width in bytes of a field element.
    pub fn field_bytes(&self) -> usize {
        (64 - self.p.leading_zeros() as usize).div_ceil(8)
    }

    pub fn is_on_curve(&self, pt: &EcPoint) -> bool {
        match *pt {
            EcPoint::Infinity => true,
            EcPoint::Affine { x, y } => {
                let p = self.p;
                if x >= p || y >= p {
                    return false;
                }
                let rhs = add_mod(add_mod(mul_mod(x, mul_mod(x, x, p), p), mul_mod(self.a, x, p), p), self.b, p);
                mul_mod(y, y, p) == rhs
            }
        }
    }

    fn check(&self, pt: &EcPoint) -> Result<()> {
        if self.is_on_curve(pt) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn negate(&self, pt: &EcPoint) -> EcPoint {
        match *pt {
            EcPoint::Infinity => EcPoint::Infinity,
            EcPoint::Affine { x, y } => EcPoint::affine(x, sub_mod(0, y, self.p)),
        }
    }

    /// Group law: chord rule for distinct points, tangent rule for doubling.
    pub fn add(&self, p1: &EcPoint, p2: &EcPoint) -> Result<EcPoint> {
        self.check(p1)?;
        self.check(p2)?;
        Ok(self.add_unchecked(p1, p2))
    }

    fn add_unchecked(&self, p1: &EcPoint, p2: &EcPoint) -> EcPoint {
        let p = self.p;
        let (x1, y1, x2, y2) = match (*p1, *p2) {
            (EcPoint::Infinity, q) | (q, EcPoint::Infinity) => return q,
            (EcPoint::Affine { x: x1, y: y1 }, EcPoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let slope = if x1 == x2 {
            if add_mod(y1, y2, p) == 0 {
                return EcPoint::Infinity;
            }
            let num = add_mod(mul_mod(3, mul_mod(x1, x1, p), p), self.a, p);
            mul_mod(num, inv_mod(mul_mod(2, y1, p), p), p)
        } else {
            mul_mod(sub_mod(y2, y1, p), inv_mod(sub_mod(x2, x1, p), p), p)
        };
        let x3 = sub_mod(sub_mod(mul_mod(slope, slope, p), x1, p), x2, p);
        let y3 = sub_mod(mul_mod(slope, sub_mod(x1, x3, p), p), y1, p);
        EcPoint::affine(x3, y3)
    }

    /// `k * pt` by left-to-right double-and-add.
    pub fn scalar_mul(&self, k: u64, pt: &EcPoint) -> Result<EcPoint> {
        self.check(pt)?;
        let mut acc = EcPoint::Infinity;
        for bit in (0..64 - k.leading_zeros()).rev() {
            acc = self.add_unchecked(&acc, &acc);
            if (k >> bit) & 1 == 1 {
                acc = self.add_unchecked(&acc, pt);
            }
        }
        Ok(acc)
    }

    /// Smallest `n >= 1` with `n * pt = O`, by repeated addition.
    pub fn point_order(&self, pt: &EcPoint) -> Result<u64> {
        self.check(pt)?;
        let mut acc = *pt;
        let mut n = 1;
        // Hasse: #E <= p + 1 + 2 sqrt(p)
        let bound = self.p + 2 + 2 * (self.p as f64).sqrt().ceil() as u64;
        while !acc.is_identity() {
            acc = self.add_unchecked(&acc, pt);
            n += 1;
            if n > bound {
                return Err(Error::Config("point order exceeds the Hasse bound".into()));
            }
        }
        Ok(n)
    }

    /// All points including the identity, affine points in (x, y) order.
    /// Intended for small fields only.
    pub fn points(&self) -> Vec<EcPoint> {
        let p = self.p;
        let mut out = vec![EcPoint::Infinity];
        for x in 0..p {
            let rhs = add_mod(add_mod(mul_mod(x, mul_mod(x, x, p), p), mul_mod(self.a, x, p), p), self.b, p);
            for y in 0..p {
                if mul_mod(y, y, p) == rhs {
                    out.push(EcPoint::affine(x, y));
                }
            }
        }
        out
    }
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + m as u128 - (b % m) as u128) % m as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse of `a` modulo prime `m` via the extended Euclidean algorithm.
/// `a` must be nonzero mod `m`.
pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "{a} has no inverse mod {m}");
    t0.rem_euclid(m as i128) as u64
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // deterministic Miller-Rabin bases for 64-bit inputs
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}
