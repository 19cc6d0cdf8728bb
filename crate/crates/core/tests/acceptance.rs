//! Acceptance run: one PASS/FAIL line per criterion, with timings.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use ecluster::ar_space::{classify_derived, derived_equivalent, gamma_b, BoundedSide, QuiverSpec, Turn, TurningPoint};
use ecluster::cluster_sets::{
    build_projective_cluster, membership_disagreements, verify_window, verify_with_sampler, CandidateSampler, Chart,
    ClusterDescription, ValueRange,
};
use ecluster::compat_core::{e_compatible, e_compatible_euler, e_compatible_geometric, exchange_for_pair, is_degenerate};
use ecluster::cpi_bridge::{
    build_ter, chart_window, f_inverse, f_map, f_map_symbolic, nr_incompatible, nr_incompatible_direct,
    vertical_line_oracle, CPiObject,
};
use ecluster::infinity_gon::{
    embed_arc_set, embed_arc_set_core, fountain_extras, fountain_report, no_skip_check, random_fountain,
    random_zigzag, ArcSetDescription, FountainReport, LeftTail, RightTail,
};
use ecluster::mutation_engine::{mutate, MutationError};
use ecluster::ordered_line::{int, rat, rational_to_f64, DoubledPoint, ExtendedRational, IntervalObject as I, Ladder, Side};
use ecluster::polygon_an::{
    all_diagonals, diagonals_cross, embed_diagonal, embed_triangulation, enumerate_triangulations, flip, flip_graph,
    Diagonal,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;

struct Outcome {
    pass: bool,
    detail: String,
    elapsed: Duration,
}

/// Counts shared by every criterion that performs mutations.
#[derive(Default)]
struct MutationTally {
    executed: usize,
    ambiguous: usize,
    round_trips: usize,
    round_trip_failures: usize,
}

impl MutationTally {
    fn record(&mut self, r: &Result<ecluster::mutation_engine::MutationResult, MutationError>) {
        self.executed += 1;
        if matches!(r, Err(MutationError::AmbiguousExchange { .. })) {
            self.ambiguous += 1;
        }
    }
}

fn timed(f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t0 = Instant::now();
    let (pass, detail) = f();
    Outcome { pass, detail, elapsed: t0.elapsed() }
}

fn criterion_1() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = [[false; 4]; 4];
    let mut infinite = 0usize;
    let mut disagreements = 0usize;
    let pairs = 100_000;
    for _ in 0..pairs {
        let v = common::random_interval(&mut rng);
        let w = common::random_interval(&mut rng);
        seen[common::closure_kind(&v)][common::closure_kind(&w)] = true;
        if [&v, &w].iter().any(|x| !x.left.value.is_finite() || !x.right.value.is_finite()) {
            infinite += 1;
        }
        if e_compatible_euler(&v, &w) != e_compatible_geometric(&v, &w) {
            disagreements += 1;
        }
    }
    let combos = seen.iter().flatten().filter(|s| **s).count();
    let pass = disagreements == 0 && combos == 16 && infinite > 0;
    (pass, format!("{pairs} pairs, {combos}/16 closure combinations, {infinite} with infinite ends, {disagreements} disagreements"))
}

fn criterion_2() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut pairs, mut failures, mut min_points) = (0usize, 0usize, usize::MAX);
    while pairs < 10_000 {
        let v = common::random_interval(&mut rng);
        let w = common::random_interval(&mut rng);
        let Ok(x) = exchange_for_pair(&v, &w) else { continue };
        pairs += 1;
        let points = common::sample_points(&[&v, &w], 100);
        min_points = min_points.min(points.len());
        let ok = points.iter().all(|t| {
            x.sub.dim_at(t) + x.quotient.dim_at(t) == x.middle.iter().map(|m| m.dim_at(t)).sum::<usize>()
        });
        if !ok {
            failures += 1;
        }
    }
    (failures == 0 && min_points >= 100, format!("{pairs} incompatible pairs, >= {min_points} points each, {failures} failures"))
}

fn criterion_4(tally: &mut MutationTally) -> (bool, String) {
    let p = build_projective_cluster();
    let report = verify_window(&p, &ValueRange::everything(), 10_000, 4);
    let mut exact = true;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let b = rat(rng.gen_range(-60..60), rng.gen_range(1..12));
        let r = mutate(&p, &I::projective_open(b.clone()));
        tally.record(&r);
        match r {
            Ok(r) => {
                exact &= r.added == I::singleton(b.clone()) && r.middle == vec![I::projective(b.clone())];
                let back = mutate(&r.new_cluster, &r.added);
                tally.record(&back);
                tally.round_trips += 1;
                let restored = back.map(|x| x.new_cluster.removed.is_empty() && x.new_cluster.added.is_empty()).unwrap_or(false);
                if !restored {
                    tally.round_trip_failures += 1;
                }
            }
            Err(_) => exact = false,
        }
        let frozen = mutate(&p, &I::projective(b.clone()));
        tally.record(&frozen);
        exact &= frozen == Err(MutationError::NotMutable(I::projective(b).to_string()));
    }
    let top = mutate(&p, &I::full_line());
    tally.record(&top);
    exact &= matches!(top, Err(MutationError::NotMutable(_)));
    (
        report.passed() && report.samples == 10_000 && exact,
        format!("verifyWindow {} samples, {} failures; exchanges exact: {exact}", report.samples, report.failure_count),
    )
}

/// Subset search for sets of n pairwise non-crossing diagonals.
fn brute_force_count(n: i64) -> usize {
    let ds = all_diagonals(n);
    let crosses = |d: &Diagonal, e: &Diagonal| {
        let inside = |v: i64| d.i < v && v < d.j;
        let shared = d.i == e.i || d.i == e.j || d.j == e.i || d.j == e.j;
        !shared && inside(e.i) != inside(e.j)
    };
    (0u64..1 << ds.len())
        .filter(|m| m.count_ones() as i64 == n)
        .filter(|m| {
            let chosen: Vec<&Diagonal> = (0..ds.len()).filter(|k| m >> k & 1 == 1).map(|k| &ds[k]).collect();
            chosen.iter().enumerate().all(|(a, d)| chosen[a + 1..].iter().all(|e| !crosses(d, e)))
        })
        .count()
}

/// Intervals between ladder points and limits in every closure type.
fn ladder_probes(l: &Ladder, n: i64) -> Vec<I> {
    let mut pts: Vec<ExtendedRational> = vec![ExtendedRational::NegInf, ExtendedRational::PosInf];
    pts.push(ExtendedRational::Finite(l.lower.clone()));
    pts.push(ExtendedRational::Finite(l.upper.clone()));
    pts.extend((-1..=n + 5).map(|i| ExtendedRational::Finite(l.value(i))));
    pts.sort();
    pts.dedup();
    let mut out = vec![];
    for (k, a) in pts.iter().enumerate() {
        for b in &pts[k..] {
            for (sa, sb) in [(Side::Plus, Side::Minus), (Side::Minus, Side::Plus), (Side::Minus, Side::Minus), (Side::Plus, Side::Plus)] {
                if let (Ok(l), Ok(r)) = (DoubledPoint::new(a.clone(), sa), DoubledPoint::new(b.clone(), sb)) {
                    out.extend(I::new(l, r).ok());
                }
            }
        }
    }
    out
}

fn same_members(a: &ClusterDescription, b: &ClusterDescription, probes: &[I]) -> bool {
    probes.iter().all(|x| a.member(x) == b.member(x))
}

fn criterion_5(tally: &mut MutationTally) -> (bool, String) {
    let l = Ladder::default();
    let mut crossing_mismatch = 0usize;
    for n in 1..=10 {
        let ds = all_diagonals(n);
        for d in &ds {
            for e in &ds {
                if diagonals_cross(d, e) == e_compatible(&embed_diagonal(&l, d), &embed_diagonal(&l, e)) {
                    crossing_mismatch += 1;
                }
            }
        }
    }
    let counts_ok = [(2, 5), (3, 14), (4, 42)]
        .iter()
        .all(|&(n, want)| flip_graph(n).nodes.len() == want && brute_force_count(n) == want);
    let (mut clusters, mut verify_failures, mut flips, mut square_failures) = (0usize, 0usize, 0usize, 0usize);
    for n in 1..=6 {
        let window = ValueRange::open(ExtendedRational::Finite(int(-1)), ExtendedRational::Finite(int(2)));
        let fan = embed_triangulation(&l, &enumerate_triangulations(n)[0]);
        let mut sampler = CandidateSampler::new(&fan, &window, n as u64);
        let probes = ladder_probes(&l, n);
        for t in enumerate_triangulations(n) {
            let c = embed_triangulation(&l, &t);
            clusters += 1;
            if !verify_with_sampler(&c, &mut sampler, 120).passed() {
                verify_failures += 1;
            }
            for d in &t.diagonals {
                flips += 1;
                let (t2, e) = flip(&t, d).expect("member diagonal");
                let r = mutate(&c, &embed_diagonal(&l, d));
                tally.record(&r);
                let ok = match &r {
                    Ok(r) => r.added == embed_diagonal(&l, &e) && same_members(&r.new_cluster, &embed_triangulation(&l, &t2), &probes),
                    Err(_) => false,
                };
                if !ok {
                    square_failures += 1;
                    continue;
                }
                if n <= 4 {
                    let r = r.expect("checked above");
                    let back = mutate(&r.new_cluster, &r.added);
                    tally.record(&back);
                    tally.round_trips += 1;
                    let restored = back.map(|b| same_members(&b.new_cluster, &c, &probes)).unwrap_or(false);
                    if !restored {
                        tally.round_trip_failures += 1;
                    }
                }
            }
        }
    }
    let pass = crossing_mismatch == 0 && counts_ok && verify_failures == 0 && square_failures == 0;
    (
        pass,
        format!(
            "crossing mismatches {crossing_mismatch} (n <= 10); {clusters} clusters verified, {verify_failures} failing; {flips} flips, {square_failures} square failures; counts 5/14/42 ok: {counts_ok}"
        ),
    )
}

fn criterion_3(tally: &MutationTally) -> (bool, String) {
    let pass = tally.executed >= 1000 && tally.ambiguous == 0 && tally.round_trip_failures == 0 && tally.round_trips > 0;
    (
        pass,
        format!(
            "{} mutations, {} ambiguous; {} round trips, {} not restored",
            tally.executed, tally.ambiguous, tally.round_trips, tally.round_trip_failures
        ),
    )
}

fn criterion_6() -> (bool, String) {
    let l = Ladder::default();
    let fountain = ArcSetDescription {
        finite: BTreeSet::new(),
        left_tails: [LeftTail { m: 0, i0: -2 }].into(),
        right_tails: [RightTail { n: 1, j0: 3 }].into(),
    };
    let lower = ExtendedRational::Finite(l.lower.clone());
    let upper = ExtendedRational::Finite(l.upper.clone());
    let a = |i: i64| ExtendedRational::Finite(l.value(i));
    let open = |x: ExtendedRational, y: ExtendedRational| {
        I::new(DoubledPoint::new(x, Side::Plus).unwrap(), DoubledPoint::new(y, Side::Minus).unwrap()).unwrap()
    };
    let want: BTreeSet<I> = [open(lower.clone(), a(0)), open(lower, a(1)), open(a(1), upper)].into();
    let got: BTreeSet<I> = fountain_extras(&l, 0, 1).into_iter().collect();
    let full_ok = verify_window(&embed_arc_set(&l, &fountain).unwrap(), &ValueRange::everything(), 3000, 6).passed();
    let core = embed_arc_set_core(&l, &fountain);
    let core_report = verify_window(&core, &ValueRange::everything(), 3000, 6);
    let gaps_ok = want.iter().all(|x| !core.member(x) && core.incompatible_witness(x).is_none());

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut generated, mut violations) = (0usize, 0usize);
    for k in 0..1000 {
        let b = 3 + k % 6;
        let desc = if k % 2 == 0 { random_fountain(&mut rng, b) } else { random_zigzag(&mut rng, b) };
        generated += 1;
        let (lo, hi) = desc.span();
        let no_skip = (lo + 1..hi).any(|v| no_skip_check(&desc, v));
        if no_skip && !matches!(fountain_report(&desc), Ok(FountainReport::Fountain { .. })) {
            violations += 1;
        }
    }
    let pass = got == want && full_ok && !core_report.passed() && gaps_ok && violations == 0;
    (
        pass,
        format!(
            "extras exact: {}; completed passes: {full_ok}; core misses {} samples; {generated} generated, {violations} no-skip violations",
            got == want,
            core_report.failure_count
        ),
    )
}

fn random_object<R: Rng>(rng: &mut R) -> CPiObject {
    loop {
        let x = rat(rng.gen_range(0..64), 32);
        let y = rat(rng.gen_range(-32..32), 32);
        if let Ok(o) = CPiObject::new(x, y) {
            return o;
        }
    }
}

fn criterion_7() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0usize;
    let mut max_err = 0.0f64;
    for _ in 0..100_000 {
        let (u, v) = (random_object(&mut rng), random_object(&mut rng));
        let nr = nr_incompatible(&u, &v);
        if nr != nr_incompatible_direct(&u, &v) || nr == e_compatible(&f_map_symbolic(&u), &f_map_symbolic(&v)) {
            disagreements += 1;
        }
    }
    for _ in 0..10_000 {
        let u = random_object(&mut rng);
        let (a, b) = f_map(&u);
        let (x, y) = f_inverse(a, b).expect("image of an object");
        max_err = max_err.max((x - rational_to_f64(&u.x)).abs()).max((y - rational_to_f64(&u.y)).abs());
    }
    // M(x, y) against M(y + 1, y') with y < y' only touch along an edge.
    let mut regression = true;
    for _ in 0..1000 {
        let u = random_object(&mut rng);
        let Ok(v) = CPiObject::new(&u.y + int(1), &u.y + rat(rng.gen_range(1..16), 32)) else { continue };
        let touching = (-2..=2).any(|n| {
            let w = v.shifted(n);
            u.x <= w.x && w.x <= &u.y + int(1) && u.y <= w.y && w.y <= &u.x + int(1)
        });
        regression &= !nr_incompatible(&u, &v) && !nr_incompatible_direct(&u, &v) && touching;
    }
    let closed_adjacent = !e_compatible(&I::open_closed(int(0), int(1)), &I::open(int(1), int(2)));
    let t = build_ter(&vertical_line_oracle()).unwrap();
    let mut p = build_projective_cluster();
    p.chart = Chart::Angle;
    let vertical = membership_disagreements(&t, &p, &chart_window(), 5000, 7).is_empty();
    let pass = disagreements == 0 && max_err < 1e-9 && regression && closed_adjacent && vertical;
    (
        pass,
        format!(
            "100000 pairs, {disagreements} disagreements; inverse error {max_err:.1e}; edge regression {}; vertical line = projectives: {vertical}",
            regression && closed_adjacent
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let tp = |at: i64, kind| TurningPoint { at: int(at), kind };
    let alternating = |n: i64| (0..n).map(|k| tp(k, if k % 2 == 0 { Turn::Sink } else { Turn::Source })).collect::<Vec<_>>();
    let canonical = [
        QuiverSpec::straight(),
        QuiverSpec::HalfBounded { bounded: BoundedSide::Below, seed: alternating(4) },
        QuiverSpec::UnboundedBoth { seed: alternating(4) },
    ];
    let classes: BTreeSet<String> = canonical.iter().map(|q| format!("{:?}", classify_derived(q))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let specs: Vec<QuiverSpec> = (0..100)
        .map(|_| {
            let seed = alternating(rng.gen_range(0..6));
            match rng.gen_range(0..3) {
                0 => QuiverSpec::FiniteSs { points: seed },
                1 => QuiverSpec::HalfBounded { bounded: if rng.gen() { BoundedSide::Below } else { BoundedSide::Above }, seed },
                _ => QuiverSpec::UnboundedBoth { seed },
            }
        })
        .collect();
    let mut violations = 0usize;
    for a in &specs {
        violations += usize::from(!derived_equivalent(a, a));
        for b in &specs {
            violations += usize::from(derived_equivalent(a, b) != derived_equivalent(b, a));
            for c in &specs {
                violations += usize::from(derived_equivalent(a, b) && derived_equivalent(b, c) && !derived_equivalent(a, c));
            }
        }
    }
    (classes.len() == 3 && violations == 0, format!("{} distinct classes; 100 specs, {violations} equivalence violations", classes.len()))
}

fn criterion_9() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut shift_bad, mut degenerate_bad, mut checked) = (0usize, 0usize, 0usize);
    let mut pool: Vec<I> = (0..5000).map(|_| common::random_interval(&mut rng)).collect();
    pool.extend([I::full_line(), I::singleton(int(0)), I::projective(int(1)), I::injective_open(int(2))]);
    for v in &pool {
        let p = gamma_b(v, 0);
        for n in -3i64..=3 {
            let q = gamma_b(v, n);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            checked += 1;
            if (q.alpha - (p.alpha + n as f64 * PI)).abs() > 1e-9 || (q.beta - sign * p.beta).abs() > 1e-9 {
                shift_bad += 1;
            }
        }
        if is_degenerate(v) != ((p.beta.abs() - FRAC_PI_2).abs() <= 1e-12) {
            degenerate_bad += 1;
        }
    }
    (shift_bad == 0 && degenerate_bad == 0, format!("{checked} shifted points, {shift_bad} off the shift rule; {degenerate_bad} degeneracy mismatches"))
}

fn main() {
    let mut tally = MutationTally::default();
    let mut results: Vec<(usize, &str, Outcome, Option<Duration>)> = vec![];
    results.push((1, "oracle equivalence", timed(criterion_1), Some(Duration::from_secs(10))));
    results.push((2, "exchange sequences are pointwise exact", timed(criterion_2), None));
    let c4 = timed(|| criterion_4(&mut tally));
    let c5 = timed(|| criterion_5(&mut tally));
    results.push((3, "mutation uniqueness and round trips", timed(|| criterion_3(&tally)), None));
    results.push((4, "projective cluster", c4, None));
    results.push((5, "polygon embedding", c5, Some(Duration::from_secs(120))));
    results.push((6, "infinity-gon fountains", timed(criterion_6), None));
    results.push((7, "C_pi bridge", timed(criterion_7), None));
    results.push((8, "derived classification", timed(criterion_8), None));
    results.push((9, "AR-space coordinates", timed(criterion_9), None));

    let mut all = true;
    for (k, name, o, limit) in &results {
        let in_time = limit.map_or(true, |l| o.elapsed <= l);
        let pass = o.pass && in_time;
        all &= pass;
        let budget = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "criterion {k} [{}] {name}: {} in {:.2}s{budget}",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            o.elapsed.as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
