//! Acceptance criteria 1-17. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::{exact_share_intercept, micro_topology, pooled};
use hsnsim::adversary::BlackHole;
use hsnsim::crypto::{
    ecdh_shared, eg_share_probability, gen_keypair, min_ring_for, storage_cost, CurveParams, EcPoint, StorageScheme,
};
use hsnsim::experiments::{
    rows_for, run_point_on, sweep_density, sweep_hops, sweep_points, sweep_radius, sweep_shares, sweep_source,
    sweep_ttl, run_points, ExperimentConfig, MetricsRow, Point, Scenario, SweepKind,
};
use hsnsim::routing::{send_packet, DropReason, PacketParams, SchemeId};
use hsnsim::sharing::{reconstruct, split, split_with_coefficients, SecretPacket, Share};
use hsnsim::topology::{build_sink_tree, generate_field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("took {took:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn subsets(m: usize, t: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == t)
        .map(|mask| (0..m).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}

// 1
fn sharing_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0u64;
    for q in [11u64, 2_147_483_647] {
        for m in 1..=6 {
            for t in 1..=m {
                for _ in 0..100 {
                    let chunks: Vec<u64> = (0..if q == 11 { 1 } else { 4 }).map(|_| rng.random_range(0..q)).collect();
                    let secret = SecretPacket::from_chunks(chunks);
                    let shares = split(&secret, t, m, q, &mut rng).map_err(|e| e.to_string())?;
                    for idx in subsets(m, t) {
                        let pick: Vec<Share> = idx.iter().map(|&i| shares[i].clone()).collect();
                        let back = reconstruct(&pick, t, q).map_err(|e| e.to_string())?;
                        if back != secret {
                            return Err(format!("q={q} T={t} M={m} subset {idx:?} failed"));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{checked} subset reconstructions exact in {:?}", start.elapsed()))
}

// 2
fn perfect_hiding() -> Outcome {
    let start = Instant::now();
    let q = 11u64;
    // (share index, share value, secret) -> number of polynomials
    let mut count: BTreeMap<(u32, u64, u64), u32> = BTreeMap::new();
    for s in 0..q {
        for a in 0..q {
            let shares = split_with_coefficients(&SecretPacket::from_chunks(vec![s]), 2, 3, q, &[vec![a]])
                .map_err(|e| e.to_string())?;
            for sh in shares {
                *count.entry((sh.index, sh.values[0], s)).or_insert(0) += 1;
            }
        }
    }
    let complete = count.len() == 3 * 11 * 11 && count.values().all(|&c| c == 1);
    within(Duration::from_secs(1), start)?;
    check(
        complete,
        format!(
            "{} (index, value, secret) triples, each explained by exactly one polynomial: {complete}",
            count.len()
        ),
    )
}

// 3
fn group_law() -> Outcome {
    let start = Instant::now();
    let c = CurveParams::toy();
    let pts = c.points();
    let add = |a: &EcPoint, b: &EcPoint| c.add(a, b).unwrap();
    let o = EcPoint::Infinity;
    let mut bad = 0;
    for p in &pts {
        bad += (add(p, &o) != *p) as u32 + (add(&o, p) != *p) as u32;
        bad += (add(p, &c.negate(p)) != o) as u32;
        for q in &pts {
            let pq = add(p, q);
            bad += (pq != add(q, p)) as u32;
            for r in &pts {
                bad += (add(&pq, r) != add(p, &add(q, r))) as u32;
            }
        }
        let mut acc = EcPoint::Infinity;
        for k in 0..c.order() {
            bad += (c.scalar_mul(k, p).unwrap() != acc) as u32;
            acc = add(&acc, p);
        }
    }
    within(Duration::from_secs(1), start)?;
    check(
        bad == 0 && pts.len() == 28,
        format!("{} points, {bad} law violations, {:?}", pts.len(), start.elapsed()),
    )
}

// 4
fn ecdh_symmetry() -> Outcome {
    let prime = CurveParams::new(9739, 1, 26, EcPoint::affine(0, 2063), None).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut mismatch, mut failed) = (0, 0);
    for _ in 0..100 {
        let (u, v) = (gen_keypair(&prime, &mut rng), gen_keypair(&prime, &mut rng));
        match (ecdh_shared(&u, &v.public(), &prime), ecdh_shared(&v, &u.public(), &prime)) {
            (Ok(a), Ok(b)) => mismatch += (a != b) as u32,
            _ => failed += 1,
        }
    }
    // toy group: order 28 is composite, so a*b = 0 mod 28 gives the identity
    let toy = CurveParams::toy();
    let (mut toy_mismatch, mut toy_identity, mut toy_unexpected) = (0, 0, 0);
    for _ in 0..100 {
        let (u, v) = (gen_keypair(&toy, &mut rng), gen_keypair(&toy, &mut rng));
        let degenerate = (u.private() * v.private()) % toy.order() == 0;
        match (ecdh_shared(&u, &v.public(), &toy), ecdh_shared(&v, &u.public(), &toy)) {
            (Ok(a), Ok(b)) => {
                toy_mismatch += (a != b) as u32;
                toy_unexpected += degenerate as u32;
            }
            (Err(_), Err(_)) if degenerate => toy_identity += 1,
            _ => toy_unexpected += 1,
        }
    }
    check(
        mismatch == 0 && failed == 0 && toy_mismatch == 0 && toy_unexpected == 0,
        format!(
            "prime-order curve (p=9739, n=9907): 100 pairs, {mismatch} mismatches, {failed} failures; \
             toy curve: {toy_mismatch} mismatches, {toy_identity} identity keys (all with 28 | ab)"
        ),
    )
}

// 5
fn storage_formulas() -> Outcome {
    let start = Instant::now();
    let basic = storage_cost(StorageScheme::Basic, 10, 100, 50);
    let dist = storage_cost(StorageScheme::Distributed, 10, 100, 50);
    let mut violations = 0;
    for h in 1..=50 {
        for l in 1..=50 {
            for m in 3..=200 {
                violations += (storage_cost(StorageScheme::Distributed, h, l, m)
                    > storage_cost(StorageScheme::Basic, h, l, m)) as u32;
            }
        }
    }
    within(Duration::from_secs(1), start)?;
    check(
        basic == 5500 && dist == 230 && violations == 0,
        format!("(10,100,50) -> Basic {basic}, Distributed {dist}; {violations} grid violations"),
    )
}

/// `sum ln k` for k in lo..=hi.
fn ln_range(lo: u64, hi: u64) -> f64 {
    (lo..=hi).map(|k| (k as f64).ln()).sum()
}

// 6
fn eg_probability() -> Outcome {
    let pool = 10_000u64;
    let mut worst = 0.0f64;
    for m in 1..=500u64 {
        // C(P-m, m) / C(P, m) = (P-m)!^2 / ((P-2m)! P!)
        let ln_disjoint = ln_range(pool - 2 * m + 1, pool - m) - ln_range(pool - m + 1, pool);
        let oracle = -ln_disjoint.exp_m1();
        let got = eg_share_probability(pool, m).probability;
        worst = worst.max(((got - oracle) / oracle).abs());
    }
    let min_ring = min_ring_for(pool, 0.9).ok_or("no ring reaches 0.9")?;
    let below = eg_share_probability(pool, min_ring - 1).probability;
    let at = eg_share_probability(pool, min_ring).probability;
    check(
        worst < 1e-9 && below < 0.9 && at >= 0.9,
        format!("max relative error {worst:.2e}; smallest ring with p >= 0.9 is {min_ring} (p = {at:.6})"),
    )
}

/// Default-sized deployments whose source can reach the sink.
fn default_deployments(count: usize) -> Vec<(hsnsim::Topology, hsnsim::topology::HopField, usize)> {
    let cfg = ExperimentConfig::default();
    (1000u64..)
        .filter_map(|seed| {
            let t = generate_field(cfg.n_l, cfg.n_h, cfg.field().unwrap(), cfg.radius, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let hf = build_sink_tree(&t, &mut rng);
            let src = t.nearest_sensor(cfg.source()).unwrap();
            hf.is_reachable(src).then_some((t, hf, src))
        })
        .take(count)
        .collect()
}

// 7
fn nrrp_no_repeat() -> Outcome {
    let deps = default_deployments(20);
    let params = PacketParams {
        threshold: 1,
        shares: 1,
        ttl: 15,
        alpha1: 2,
        alpha2: 4,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut shares, mut repeats, mut dropped) = (0u64, 0u64, 0u64);
    for (t, hf, src) in &deps {
        for _ in 0..5_000 {
            let r = &send_packet(t, hf, *src, SchemeId::Nrrp, &params, &mut rng).unwrap()[0];
            let mut walk = r.path[..=r.phase_split].to_vec();
            let n = walk.len();
            walk.sort_unstable();
            walk.dedup();
            repeats += (walk.len() != n) as u64;
            dropped += (r.dropped_reason == Some(DropReason::Stranded)) as u64;
            shares += 1;
        }
    }
    check(
        repeats == 0 && shares == 100_000,
        format!("{shares} shares, {repeats} with a repeated node, {dropped} stranded"),
    )
}

// 8
fn mtrp_band() -> Outcome {
    let deps = default_deployments(20);
    let params = PacketParams {
        threshold: 1,
        shares: 1,
        ttl: 15,
        alpha1: 2,
        alpha2: 4,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut shares, mut relays, mut outside, mut fallbacks) = (0u64, 0u64, 0u64, 0u64);
    for (t, hf, src) in &deps {
        let h = params.header(SchemeId::Mtrp, *src, hf);
        for _ in 0..5_000 {
            let r = &send_packet(t, hf, *src, SchemeId::Mtrp, &params, &mut rng).unwrap()[0];
            for i in 0..r.phase_split {
                relays += 1;
                if r.fallback_hops.contains(&i) {
                    fallbacks += 1;
                    continue;
                }
                let hop = hf.hops(r.path[i + 1]).unwrap();
                outside += (hop < h.min_hop || hop > h.max_hop) as u64;
            }
            shares += 1;
        }
    }
    check(
        outside == 0 && shares == 100_000,
        format!("{shares} shares, {relays} relays, {outside} non-fallback relays outside the band, {fallbacks} flagged fallbacks"),
    )
}

struct Sweeps {
    ttl: Vec<MetricsRow>,
    shares: Vec<MetricsRow>,
}

fn non_increasing(rows: &[&MetricsRow]) -> Vec<String> {
    rows.windows(2)
        .filter(|w| w[1].intercept_p > w[0].intercept_p + 2.0 * pooled(w[0].stderr, w[1].stderr))
        .map(|w| format!("{} {}->{}: {:.4}->{:.4}", w[0].scheme, w[0].value, w[1].value, w[0].intercept_p, w[1].intercept_p))
        .collect()
}

fn at_value(rows: &[MetricsRow], scheme: SchemeId, value: f64) -> &MetricsRow {
    rows.iter().find(|r| r.scheme == scheme && r.value == value).unwrap()
}

// 9
fn trends_ttl_shares(s: &Sweeps, elapsed: Duration) -> Outcome {
    let mut problems = Vec::new();
    for scheme in SchemeId::RANDOMIZED {
        problems.extend(non_increasing(&rows_for(&s.ttl, scheme)));
        problems.extend(non_increasing(&rows_for(&s.shares, scheme)));
    }
    let prp = at_value(&s.ttl, SchemeId::Prp, 15.0);
    let mut margins = Vec::new();
    for scheme in [SchemeId::Nrrp, SchemeId::Drp, SchemeId::Mtrp] {
        let r = at_value(&s.ttl, scheme, 15.0);
        let gap = prp.intercept_p - r.intercept_p;
        let se = pooled(prp.stderr, r.stderr);
        margins.push(format!("{scheme} {:.4} ({:.1} se)", r.intercept_p, gap / se));
        if gap <= 2.0 * se {
            problems.push(format!("{scheme} does not beat PRP at N=15"));
        }
    }
    if elapsed > Duration::from_secs(300) {
        problems.push(format!("sweeps took {elapsed:?}"));
    }
    let detail = format!(
        "PRP {:.4} at N=15 M=4 vs {}; sweeps {:.1?}",
        prp.intercept_p,
        margins.join(", "),
        elapsed
    );
    check(problems.is_empty(), if problems.is_empty() { detail } else { format!("{detail}; {}", problems.join("; ")) })
}

// 10
fn plateau(s: &Sweeps) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for scheme in SchemeId::RANDOMIZED {
        let (a, b) = (at_value(&s.ttl, scheme, 20.0), at_value(&s.ttl, scheme, 25.0));
        let tol = (2.0 * pooled(a.stderr, b.stderr)).max(0.02);
        let d = (a.intercept_p - b.intercept_p).abs();
        ok &= d < tol;
        parts.push(format!("{scheme} |d|={d:.4} tol={tol:.4}"));
    }
    check(ok, parts.join(", "))
}

// 11
fn radius_trend(cfg: &ExperimentConfig) -> Outcome {
    let rows = sweep_radius(cfg).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for scheme in SchemeId::ALL {
        let r = rows_for(&rows, scheme);
        let rising = r.windows(2).all(|w| w[1].intercept_p - w[0].intercept_p > 2.0 * pooled(w[0].stderr, w[1].stderr));
        ok &= rising;
        parts.push(format!(
            "{scheme} {}",
            r.iter().map(|x| format!("{:.3}", x.intercept_p)).collect::<Vec<_>>().join("<")
        ));
    }
    check(ok, parts.join(", "))
}

// 12
fn density_insensitivity(cfg: &ExperimentConfig) -> Outcome {
    let rows = sweep_density(cfg).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for scheme in SchemeId::RANDOMIZED {
        let p: Vec<f64> = rows_for(&rows, scheme).iter().map(|r| r.intercept_p).collect();
        let (lo, hi) = p.iter().fold((f64::MAX, f64::MIN), |(lo, hi), &x| (lo.min(x), hi.max(x)));
        let mean = p.iter().sum::<f64>() / p.len() as f64;
        let spread = (hi - lo) / mean;
        ok &= spread < 0.5;
        parts.push(format!(
            "{scheme} [{}] spread {:.0}%",
            p.iter().map(|x| format!("{x:.3}")).collect::<Vec<_>>().join(" "),
            100.0 * spread
        ));
    }
    check(ok, parts.join(", "))
}

// 13
fn source_peak(cfg: &ExperimentConfig) -> Outcome {
    let rows = sweep_source(cfg).map_err(|e| e.to_string())?;
    let nearest = cfg
        .source_x_values
        .iter()
        .copied()
        .min_by(|a, b| (a - cfg.hole_x).abs().total_cmp(&(b - cfg.hole_x).abs()))
        .unwrap();
    let mut parts = Vec::new();
    let mut ok = true;
    for scheme in SchemeId::ALL {
        let r = rows_for(&rows, scheme);
        let peak = at_value(&rows, scheme, nearest).intercept_p;
        let best = r.iter().map(|x| x.intercept_p).fold(0.0, f64::max);
        ok &= peak >= best;
        parts.push(format!("{scheme} p(x={nearest})={peak:.3} max={best:.3}"));
    }
    check(ok, parts.join(", "))
}

fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) })
}

// 14
fn hop_growth(cfg: &ExperimentConfig) -> Outcome {
    let rows = sweep_hops(cfg).map_err(|e| e.to_string())?;
    let fit = |s| {
        let r = rows_for(&rows, s);
        let x: Vec<f64> = r.iter().map(|r| r.value).collect();
        let y: Vec<f64> = r.iter().map(|r| r.mean_hops).collect();
        linear_fit(&x, &y)
    };
    let (prp, prp_r2) = fit(SchemeId::Prp);
    let (_, nrrp_r2) = fit(SchemeId::Nrrp);
    let (mtrp, _) = fit(SchemeId::Mtrp);
    let hs: Vec<f64> = rows_for(&rows, SchemeId::Hspread).iter().map(|r| r.mean_hops).collect();
    let flat = hs.windows(2).all(|w| w[0] == w[1]);
    check(
        prp_r2 > 0.95 && nrrp_r2 > 0.95 && mtrp < 0.7 * prp && flat,
        format!(
            "R2 PRP {prp_r2:.4} NRRP {nrrp_r2:.4}; slope PRP {prp:.3} MTRP {mtrp:.3} (ratio {:.2}, need < 0.70); HSPREAD constant {flat} at {:.2}",
            mtrp / prp,
            hs[0]
        ),
    )
}

// 15
fn micro_oracle() -> Outcome {
    // sink 0; 1 and 2 next to it; 3 joins both; 4 and 5 further out
    let pts = [(0.0, 0.0), (1.2, 0.0), (0.0, 1.2), (1.2, 1.2), (2.4, 1.2), (2.4, 0.0)];
    let t = micro_topology(&pts, 1.5);
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let hf = build_sink_tree(&t, &mut rng);
    let hole = BlackHole::new(t.position(2), 0.1).map_err(|e| e.to_string())?;
    let sc = Scenario::new(t.clone(), hf.clone(), 4, hole).map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    let mut ok = true;
    for scheme in [SchemeId::Prp, SchemeId::Nrrp] {
        for ttl in 0..=2 {
            let exact = exact_share_intercept(&t, &|v| hf.hops(v), 4, ttl, scheme, &hole);
            let cfg = ExperimentConfig {
                trials: 20_000,
                ttl,
                shares: 1,
                threshold: Some(1),
                ..ExperimentConfig::default()
            };
            let mut point = Point::base(&cfg, scheme);
            point.index = ttl as u64;
            let row = run_point_on(&cfg, &point, &sc).map_err(|e| e.to_string())?;
            let se = (exact * (1.0 - exact) / cfg.trials as f64).sqrt();
            let good = (row.intercept_p - exact).abs() <= 3.0 * se + 1e-12;
            ok &= good;
            parts.push(format!("{scheme} N={ttl} {:.4}/{exact:.4}", row.intercept_p));
        }
    }
    check(ok, format!("estimate/exact: {}", parts.join(", ")))
}

// 16
fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = dir.path().join("default.cfg");
    std::fs::write(&cfg, "# defaults\n").map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let out = dir.path().join(format!("ttl_{jobs}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_hsnsim"))
            .args(["run", "--config", cfg.to_str().unwrap(), "--sweep", "ttl", "--seed", "1", "--jobs", jobs])
            .args(["--out", out.to_str().unwrap()])
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return Err(format!("run with --jobs {jobs} failed"));
        }
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    check(
        outputs[0] == outputs[1],
        format!("jobs 1 vs 8: {} bytes each, identical {}", outputs[0].len(), outputs[0] == outputs[1]),
    )
}

// 17
fn minimum_over_grid(cfg: &ExperimentConfig) -> Outcome {
    let mut points = Vec::new();
    for p in sweep_points(cfg, SweepKind::Ttl).map_err(|e| e.to_string())? {
        for (j, &m) in cfg.share_values.iter().enumerate() {
            let mut q = p.clone();
            q.param = "ttl_shares";
            q.shares = m;
            q.threshold = cfg.threshold_for(m);
            q.index = p.index * 100 + j as u64;
            points.push(q);
        }
    }
    let rows = run_points(cfg, &points).map_err(|e| e.to_string())?;
    let (best, row) = points
        .iter()
        .zip(&rows)
        .min_by(|a, b| a.1.intercept_p.total_cmp(&b.1.intercept_p))
        .unwrap();
    let mut per_scheme = Vec::new();
    for scheme in SchemeId::ALL {
        let m = points
            .iter()
            .zip(&rows)
            .filter(|(p, _)| p.scheme == scheme)
            .map(|(_, r)| r.intercept_p)
            .fold(1.0, f64::min);
        per_scheme.push(format!("{scheme} {m:.4}"));
    }
    Ok(format!(
        "minimum {:.4} (stderr {:.4}) by {} at N={} M={} T={}; per scheme: {}",
        row.intercept_p,
        row.stderr,
        best.scheme,
        best.ttl,
        best.shares,
        best.threshold,
        per_scheme.join(", ")
    ))
}

fn run(n: u32, name: &str, f: impl FnOnce() -> Outcome, failures: &mut Vec<u32>) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(d) => println!("criterion {n:>2} PASS  {name} [{secs:.1}s]: {d}"),
        Err(d) => {
            println!("criterion {n:>2} FAIL  {name} [{secs:.1}s]: {d}");
            failures.push(n);
        }
    }
}

fn main() {
    let cfg = ExperimentConfig::default();
    let mut failures = Vec::new();
    run(1, "secret sharing round trip", sharing_round_trip, &mut failures);
    run(2, "perfect hiding", perfect_hiding, &mut failures);
    run(3, "EC group law", group_law, &mut failures);
    run(4, "ECDH symmetry", ecdh_symmetry, &mut failures);
    run(5, "storage formulas", storage_formulas, &mut failures);
    run(6, "E-G probability", eg_probability, &mut failures);
    run(7, "NRRP no repeats", nrrp_no_repeat, &mut failures);
    run(8, "MTRP band", mtrp_band, &mut failures);

    let start = Instant::now();
    let sweeps = sweep_ttl(&cfg).and_then(|ttl| Ok(Sweeps { ttl, shares: sweep_shares(&cfg)? }));
    let elapsed = start.elapsed();
    match &sweeps {
        Ok(s) => {
            run(9, "N and M trends", || trends_ttl_shares(s, elapsed), &mut failures);
            run(10, "N plateau", || plateau(s), &mut failures);
        }
        Err(e) => {
            for (n, name) in [(9, "N and M trends"), (10, "N plateau")] {
                run(n, name, || Err(e.to_string()), &mut failures);
            }
        }
    }
    run(11, "hole radius trend", || radius_trend(&cfg), &mut failures);
    run(12, "density insensitivity", || density_insensitivity(&cfg), &mut failures);
    run(13, "source position peak", || source_peak(&cfg), &mut failures);
    run(14, "hop-count growth", || hop_growth(&cfg), &mut failures);
    run(15, "micro-topology oracle", micro_oracle, &mut failures);
    run(16, "determinism across jobs", determinism, &mut failures);
    run(17, "minimum interception over (N, M)", || minimum_over_grid(&cfg), &mut failures);

    println!("acceptance: {} of 17 criteria passed", 17 - failures.len());
    if !failures.is_empty() {
        println!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
