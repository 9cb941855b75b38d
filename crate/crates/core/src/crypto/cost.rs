//! Closed-form storage and key-sharing models used to compare c-neighbor
//! key setup with random key pre-distribution.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StorageScheme {
    /// Random key pre-distribution: every sensor stores a ring of keys.
    Basic,
    /// ECC key pairs with keys only between c-neighbors.
    Distributed,
}

/// Key units stored network-wide. `Distributed` is `3M + 2N` and `Basic`
/// is `m(M + N)` for `M` H-sensors, `N` L-sensors and ring size `m`.
pub fn storage_cost(scheme: StorageScheme, h_count: u64, l_count: u64, ring: u64) -> u64 {
    match scheme {
        StorageScheme::Distributed => 3 * h_count + 2 * l_count,
        StorageScheme::Basic => ring * (h_count + l_count),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShareProbability {
    pub probability: f64,
    /// Set when `2 * ring > pool`: two rings must overlap.
    pub forced_overlap: bool,
}

/// Probability that two rings of `ring` keys drawn without replacement from
/// a pool of `pool` keys share at least one key:
/// `1 - prod_{i<ring} (pool - ring - i) / (pool - i)`.
///
/// The product is accumulated as a sum of `ln_1p` terms and closed with
/// `expm1`, so small probabilities keep full relative precision.
pub fn eg_share_probability(pool: u64, ring: u64) -> ShareProbability {
    assert!(ring <= pool, "ring size {ring} exceeds pool {pool}");
    if ring == 0 {
        return ShareProbability {
            probability: 0.0,
            forced_overlap: false,
        };
    }
    if 2 * ring > pool {
        return ShareProbability {
            probability: 1.0,
            forced_overlap: true,
        };
    }
    let log_disjoint: f64 = (0..ring).map(|i| (-(ring as f64) / (pool - i) as f64).ln_1p()).sum();
    ShareProbability {
        probability: -log_disjoint.exp_m1(),
        forced_overlap: false,
    }
}

/// Smallest ring size whose sharing probability reaches `target`.
pub fn min_ring_for(pool: u64, target: f64) -> Option<u64> {
    (0..=pool).find(|&m| eg_share_probability(pool, m).probability >= target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_formulas() {
        assert_eq!(storage_cost(StorageScheme::Distributed, 10, 100, 50), 230);
        assert_eq!(storage_cost(StorageScheme::Basic, 10, 100, 50), 5500);
        assert_eq!(storage_cost(StorageScheme::Basic, 0, 0, 50), 0);
        assert_eq!(storage_cost(StorageScheme::Distributed, 0, 0, 50), 0);
    }

    #[test]
    fn probability_edges() {
        assert_eq!(eg_share_probability(10_000, 0).probability, 0.0);
        let full = eg_share_probability(10_000, 10_000);
        assert_eq!(full.probability, 1.0);
        assert!(full.forced_overlap);
        // one key each from a pool of P: overlap iff same key, 1/P
        let single = eg_share_probability(10_000, 1).probability;
        assert!((single - 1e-4).abs() / 1e-4 < 1e-12);
        // exactly half the pool: rings can still be disjoint (one way out of C(2m, m))
        let half = eg_share_probability(4, 2);
        assert!(!half.forced_overlap);
        assert!((half.probability - (1.0 - 1.0 / 6.0)).abs() < 1e-15);
    }

    #[test]
    fn probability_is_monotone_in_ring() {
        let mut prev = 0.0;
        for m in 0..=1000 {
            let p = eg_share_probability(10_000, m).probability;
            assert!(p >= prev, "m={m}: {p} < {prev}");
            prev = p;
        }
    }

    #[test]
    fn ninety_percent_ring() {
        let m = min_ring_for(10_000, 0.9).unwrap();
        assert!(eg_share_probability(10_000, m).probability >= 0.9);
        assert!(eg_share_probability(10_000, m - 1).probability < 0.9);
    }
}
