//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//!
//! Runs without the libtest harness so every criterion line is printed even
//! when the run succeeds.

use std::time::Instant;

use bcl::constants::{self, duality_certificate, ramsey_extract};
use bcl::report::{Document, Payload};
use bcl::sampling::rng_for;
use bcl::solvers::{
    best_subset, brute_force_packing, maximin_packing, maximin_packing_seeded, separation, subspace_gap, CandidateSet,
    PackingMode, SolverConfig,
};
use bcl::spaces::{NormedSpace, SpaceSpec, Subspace};
use bcl::verify::{self, CheckRow, LipschitzConstant, Relation, RowStatus};
use rand::Rng;

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            summary: String::new(),
            details: Vec::new(),
        }
    }

    /// Records one check; failing checks are always listed.
    fn check(&mut self, ok: bool, line: String) {
        if !ok {
            self.pass = false;
            self.details.push(format!("FAIL {line}"));
        }
    }
}

fn lp(n: usize, p: f64) -> NormedSpace {
    NormedSpace::build(&SpaceSpec::lp(n, p)).unwrap()
}

fn lp_norm(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn asserted_rows(r: &verify::CheckReport) -> impl Iterator<Item = &CheckRow> {
    r.rows.iter().filter(|row| row.status != RowStatus::Reported)
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let ps = [1.0, 1.5, 2.0, 3.0, f64::INFINITY];
    let ns = [4, 5, 6, 7, 8];
    let t = Instant::now();
    let mut worst_margin = f64::INFINITY;
    for &p in &ps {
        for &n in &ns {
            let k = constants::kottman(&lp(n, p), n, &PackingMode::Plain, &config).unwrap().value;
            let target = if p.is_infinite() { 1.0 } else { 2f64.powf(1.0 / p) };
            worst_margin = worst_margin.min(k - target);
            o.check(k >= target - 1e-6, format!("p={p} n={n}: {k} < 2^(1/p) - 1e-6 = {}", target - 1e-6));
        }
    }
    let secs = t.elapsed().as_secs_f64();
    o.check(secs < 120.0, format!("runtime {secs:.1}s >= 120s"));
    o.summary = format!("25 cases, min(f_n - 2^(1/p)) = {worst_margin:.3e}, runtime {secs:.1}s (< 120s)");
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let k = constants::kottman(&lp(n, 2.0), n + 1, &PackingMode::Plain, &config).unwrap().value;
        let exact = (2.0 * (n as f64 + 1.0) / n as f64).sqrt();
        worst = worst.max((k - exact).abs());
        o.check((k - exact).abs() <= 1e-3, format!("n={n}: {k} vs simplex {exact}"));
    }
    o.summary = format!("n=2..6, max |f_(n+1) - sqrt(2(n+1)/n)| = {worst:.3e} (tol 1e-3)");
    o
}

fn random_polygon_norm(seed: u64) -> SpaceSpec {
    let mut rng = rng_for(seed, 0);
    let m = rng.random_range(3..=6);
    let functionals = (0..m)
        .map(|_| {
            let a: f64 = rng.random_range(0.0..std::f64::consts::PI);
            let r: f64 = rng.random_range(0.5..1.5);
            vec![r * a.cos(), r * a.sin()]
        })
        .collect();
    SpaceSpec::polyhedral(functionals)
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let mut worst_lp: f64 = 0.0;
    for n in 2..=5 {
        for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let c = duality_certificate(&lp(n, p), &config).unwrap();
            worst_lp = worst_lp.max((c.certified_product - 2.0).abs());
            o.check(
                (c.certified_product - 2.0).abs() <= 1e-9,
                format!("lp({n},{p}): product {}", c.certified_product),
            );
        }
    }
    let mut min_product = f64::INFINITY;
    let mut max_residual: f64 = 0.0;
    for s in 0..20 {
        let spec = random_polygon_norm(1000 + s);
        let space = NormedSpace::build(&spec).unwrap();
        match duality_certificate(&space, &config) {
            Ok(c) => {
                min_product = min_product.min(c.certified_product);
                max_residual = max_residual.max(c.system.residual);
                o.check(c.certified_product >= 2.0 - 1e-6, format!("polygon #{s}: (k+w)(k*+w) = {}", c.certified_product));
                o.check(c.system.residual <= 1e-9, format!("polygon #{s}: residual {}", c.system.residual));
            }
            Err(e) => o.check(false, format!("polygon #{s}: {e}")),
        }
    }
    o.summary = format!(
        "lp: max |product - 2| = {worst_lp:.1e} (tol 1e-9); 20 polygons: min (k+w)(k*+w) = {min_product:.6}, max residual {max_residual:.1e}"
    );
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let thetas = [0.0, 0.25, 0.5, 0.75, 1.0];
    let x0 = SpaceSpec::lp(6, 1.0);
    let x1 = SpaceSpec::lp(6, f64::INFINITY);
    let mut rng = rng_for(4, 0);
    let mut worst_norm: f64 = 0.0;
    let mut values = Vec::new();
    for &theta in &thetas {
        let space = NormedSpace::build(&SpaceSpec::interpolated(x0.clone(), x1.clone(), theta)).unwrap();
        let p_theta = 1.0 / (1.0 - theta);
        for _ in 0..100 {
            let x: Vec<f64> = (0..6).map(|_| rng.random_range(-2.0..2.0)).collect();
            let exact = lp_norm(&x, p_theta);
            // the factorization solver where the space is a genuine product, the built norm at the endpoints
            let got = space.factorization_norm(&x).unwrap_or_else(|| space.eval(&x));
            let rel = (got - exact).abs() / exact;
            worst_norm = worst_norm.max(rel);
            o.check(rel <= 1e-6, format!("theta={theta}: calderon norm {got} vs lp {exact}"));
        }
        let k = constants::kottman(&space, 3, &PackingMode::disjoint_auto(), &config).unwrap().value;
        let target = 2f64.powf(1.0 - theta);
        o.check((k - target).abs() <= 5e-3, format!("theta={theta}: K_disj {k} vs 2^(1-theta) {target}"));
        values.push(k);
    }
    let mut worst_gap: f64 = 0.0;
    for (i, &theta) in thetas.iter().enumerate() {
        let bound = values[0].powf(1.0 - theta) * values[4].powf(theta);
        worst_gap = worst_gap.max((values[i] - bound).abs());
        o.check(values[i] <= bound + 5e-3, format!("theta={theta}: {} > log-convex bound {bound}", values[i]));
        o.check((values[i] - bound).abs() <= 5e-3, format!("theta={theta}: {} not equal to bound {bound}", values[i]));
    }
    let report = verify::check_interpolation(&x0, &x1, &thetas, 3, true, &config).unwrap();
    o.check(report.passed(), "check_interpolation report failed".into());
    o.summary = format!(
        "max rel calderon error {worst_norm:.1e} (tol 1e-6); K_disj = [{}]; max |K - bound| = {worst_gap:.1e} (tol 5e-3)",
        values.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(", ")
    );
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let alphas = [0.05, 0.1, 0.2];
    let ambient = SpaceSpec::lp(4, 2.0);
    let m = Subspace::new(&ambient, verify::rotated_plane(0.0)).unwrap();
    let mut worst_gap: f64 = 0.0;
    for &a in &alphas {
        let l = Subspace::new(&ambient, verify::rotated_plane(a)).unwrap();
        let g = subspace_gap(&m, &l, &config).unwrap().g;
        worst_gap = worst_gap.max((g - a.sin()).abs());
        o.check((g - a.sin()).abs() <= 1e-6, format!("alpha={a}: gap {g} vs sin {}", a.sin()));
    }
    let report = verify::check_lipschitz(
        &ambient,
        &verify::rotated_planes(&alphas),
        3,
        &[LipschitzConstant::Kottman],
        &config,
    )
    .unwrap();
    let mut rows = 0;
    let mut worst_loss_margin = f64::INFINITY;
    for row in asserted_rows(&report).filter(|r| r.param.contains("sep(")) {
        rows += 1;
        // rhs = sep(source) - 2g, slack 2e-6, so the loss is sep(source) - lhs
        worst_loss_margin = worst_loss_margin.min(row.lhs - (row.rhs - row.slack));
        o.check(row.status == RowStatus::Pass, format!("{}: {} < {} - {}", row.param, row.lhs, row.rhs, row.slack));
    }
    o.check(rows == 12, format!("expected 12 transport rows, got {rows}"));
    o.summary = format!(
        "max |gap - sin(alpha)| = {worst_gap:.1e} (tol 1e-6); {rows} transport rows, min slack to 2(g + 1e-6) loss bound = {worst_loss_margin:.3e}"
    );
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let eps_grid = [0.5, 0.1, 0.01];
    let report = verify::check_twisted(3, 1.0, &eps_grid, 4, &config).unwrap();
    let mut gaps = Vec::new();
    for &eps in &eps_grid {
        let label = format!("eps={eps}: g(PB, Y+Z) <= eps");
        let row = report.rows.iter().find(|r| r.param == label).expect("gap row");
        gaps.push(row.lhs);
        o.check(row.lhs <= eps + 1e-6, format!("eps={eps}: gap {} > eps + 1e-6 (2eps/(1+2eps) = {:.6})", row.lhs, 2.0 * eps / (1.0 + 2.0 * eps)));
        let diff = report
            .rows
            .iter()
            .find(|r| r.param.starts_with(&format!("eps={eps} N=4: |kottman(PB)")))
            .expect("kottman difference row");
        let d = (diff.lhs - diff.rhs).abs();
        o.check(d <= 2.0 * (eps + 1e-6), format!("eps={eps}: |kottman difference| {d} > 2(eps + 1e-6)"));
    }
    o.summary = format!(
        "lp(6,1) gaps at eps=0.5,0.1,0.01: [{}] vs bound eps + 1e-6",
        gaps.iter().map(|g| format!("{g:.6}")).collect::<Vec<_>>().join(", ")
    );
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let circle = lp(2, 2.0);
    let mut worst: f64 = 0.0;
    for n in 3..=8 {
        let t = constants::thickness(&circle, n, &config).unwrap().value;
        let exact = 2.0 * (std::f64::consts::PI / (2.0 * n as f64)).sin();
        worst = worst.max((t - exact).abs());
        o.check((t - exact).abs() <= 2e-3, format!("N={n}: T_N {t} vs {exact}"));
    }
    let report = verify::check_lipschitz(
        &SpaceSpec::lp(4, 2.0),
        &verify::rotated_planes(&[0.05, 0.1, 0.2]),
        3,
        &[LipschitzConstant::Thickness],
        &config,
    )
    .unwrap();
    let mut rows = 0;
    let mut worst_diff: f64 = 0.0;
    for row in asserted_rows(&report).filter(|r| r.param.contains("T_N")) {
        rows += 1;
        worst_diff = worst_diff.max(row.lhs);
        o.check(
            row.relation == Relation::Le && row.status == RowStatus::Pass,
            format!("{}: {} > {} + {}", row.param, row.lhs, row.rhs, row.slack),
        );
    }
    o.check(rows == 6, format!("expected 6 thickness Lipschitz rows, got {rows}"));
    o.summary = format!("N=3..8, max |T_N - 2 sin(pi/2N)| = {worst:.1e} (tol 2e-3); {rows} Lipschitz rows, max |T_N(M) - T_N(L)| = {worst_diff:.1e}");
    o
}

/// Grid search of `max min(||x-y||, ||x+y||)` over the unit circle of `space`.
fn james_grid(space: &NormedSpace, steps: usize) -> f64 {
    let pt = |t: f64| {
        let v = [t.cos(), t.sin()];
        let r = space.eval(&v);
        [v[0] / r, v[1] / r]
    };
    let pts: Vec<[f64; 2]> = (0..2 * steps).map(|i| pt(std::f64::consts::PI * i as f64 / steps as f64)).collect();
    let mut best: f64 = 0.0;
    for x in &pts[..steps] {
        for y in &pts {
            let minus = space.eval(&[x[0] - y[0], x[1] - y[1]]);
            let plus = space.eval(&[x[0] + y[0], x[1] + y[1]]);
            best = best.max(minus.min(plus));
        }
    }
    best
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let config = SolverConfig::default();
    let mut worst_j: f64 = 0.0;
    let mut worst_prod: f64 = 0.0;
    for p in [1.0, 1.2, 2.0, 4.0, f64::INFINITY] {
        let space = lp(2, p);
        let (j, g) = constants::james_constants(&space, &config).unwrap();
        let oracle = james_grid(&space, 720);
        worst_j = worst_j.max((j.value - oracle).abs());
        worst_prod = worst_prod.max((j.value * g.value - 2.0).abs());
        o.check((j.value - oracle).abs() <= 2e-3, format!("p={p}: Jm {} vs grid {oracle}", j.value));
        o.check((j.value * g.value - 2.0).abs() <= 5e-3, format!("p={p}: g*Jm = {}", j.value * g.value));
    }
    o.summary = format!("max |Jm - grid| = {worst_j:.1e} (tol 2e-3), max |g*Jm - 2| = {worst_prod:.1e} (tol 5e-3)");
    o
}

fn random_lp(rng: &mut impl Rng) -> (usize, f64) {
    let n = rng.random_range(2..=4);
    let p = match rng.random_range(0..6) {
        0 => 1.0,
        1 => f64::INFINITY,
        _ => rng.random_range(1.1..6.0),
    };
    (n, p)
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let small = SolverConfig {
        restarts: 4,
        max_iters: 300,
        ..SolverConfig::default()
    };
    let mut rng = rng_for(9, 0);
    let mut counts = [0usize; 5];

    // feasibility and reporting exactness of packings
    for i in 0..100 {
        let (n, p) = random_lp(&mut rng);
        let pts = rng.random_range(2..=5);
        let mode = if i % 3 == 0 { PackingMode::Symmetric } else { PackingMode::Plain };
        let space = lp(n, p);
        let r = maximin_packing(&space, pts, &mode, &small.clone().with_seed(i)).unwrap();
        let max_norm = r.points.iter().map(|x| lp_norm(x, p)).fold(0.0, f64::max);
        o.check(max_norm <= 1.0 + 1e-9, format!("feasibility lp({n},{p}) N={pts}: max norm {max_norm}"));
        let recomputed = separation(&space, &r.points, mode.is_symmetric());
        o.check(
            (recomputed - r.separation).abs() <= 1e-12,
            format!("exactness lp({n},{p}) N={pts}: {} vs {recomputed}", r.separation),
        );
        counts[0] += 1;
    }

    // reporting exactness of rows and CSV/JSON serialization
    for i in 0..100 {
        let lhs: f64 = rng.random_range(-3.0..3.0);
        let rhs: f64 = rng.random_range(-3.0..3.0);
        let slack: f64 = rng.random_range(0.0..0.5);
        let rel = [Relation::Le, Relation::Ge, Relation::Approx][i % 3];
        let row = CheckRow::asserted("prop", format!("row {i}"), lhs, rel, rhs, slack);
        let holds = match rel {
            Relation::Le => lhs <= rhs + slack,
            Relation::Ge => lhs >= rhs - slack,
            Relation::Approx => (lhs - rhs).abs() <= slack,
        };
        o.check((row.status == RowStatus::Pass) == holds, format!("row status {i}"));
        let est = constants::ConstantEstimate {
            kind: constants::ConstantKind::Kottman,
            value: lhs,
            bound_side: constants::BoundSide::Lower,
            n: Some(3),
            seed: i as u64,
            fingerprint: String::new(),
            witnesses: vec![],
            extra: Default::default(),
        };
        let doc = Document::new(Payload::Estimates(vec![est]));
        let back = Document::from_json(&doc.to_json().unwrap()).unwrap();
        o.check(back == doc, format!("json round trip {i}"));
        let csv = doc.to_csv().unwrap();
        let cell: f64 = csv.lines().nth(1).unwrap().split(',').nth(2).unwrap().parse().unwrap();
        o.check(cell.to_bits() == lhs.to_bits(), format!("csv value {i}: {cell} vs {lhs}"));
        counts[1] += 1;
    }

    // determinism under seed, independent of worker count
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let two = rayon::ThreadPoolBuilder::new().num_threads(2).build().unwrap();
    for i in 0..100 {
        let (n, p) = random_lp(&mut rng);
        let pts = rng.random_range(2..=4);
        let space = lp(n, p);
        let config = SolverConfig {
            restarts: 3,
            max_iters: 150,
            ..SolverConfig::default()
        }
        .with_seed(rng.random());
        let a = one.install(|| maximin_packing(&space, pts, &PackingMode::Plain, &config).unwrap());
        let b = two.install(|| maximin_packing(&space, pts, &PackingMode::Plain, &config).unwrap());
        o.check(a == b, format!("determinism #{i} lp({n},{p}) N={pts}"));
        counts[2] += 1;
    }

    // oracle consistency: seeded with the brute-force optimum the solver never does worse
    for i in 0..100 {
        let (n, p) = if i % 2 == 0 { (rng.random_range(2..=3), 1.0) } else { (rng.random_range(2..=3), f64::INFINITY) };
        let space = lp(n, p);
        let pts = rng.random_range(2..=4);
        let brute = brute_force_packing(&space, pts, &CandidateSet::ExtremePoints, &PackingMode::Plain).unwrap();
        let seeded = maximin_packing_seeded(&space, pts, &PackingMode::Plain, &small, &[brute.points.clone()]).unwrap();
        o.check(
            seeded.separation >= brute.separation - 1e-9,
            format!("oracle lp({n},{p}) N={pts}: {} < brute {}", seeded.separation, brute.separation),
        );
        if pts >= 3 {
            let bigger = maximin_packing(&space, pts, &PackingMode::Plain, &small).unwrap();
            let (idx, _) = best_subset(&space, &bigger.points, pts - 1, false);
            let subset: Vec<Vec<f64>> = idx.iter().map(|&k| bigger.points[k].clone()).collect();
            let fewer = maximin_packing_seeded(&space, pts - 1, &PackingMode::Plain, &small, &[subset]).unwrap();
            o.check(
                bigger.separation <= fewer.separation + 1e-9,
                format!("monotone lp({n},{p}): sep(N={pts}) {} > sep(N-1) {}", bigger.separation, fewer.separation),
            );
        }
        counts[3] += 1;
    }

    // ramsey width contract by direct scan
    for i in 0..100 {
        let size = rng.random_range(2..=14);
        let mut d = vec![vec![0.0; size]; size];
        for a in 0..size {
            for b in (a + 1)..size {
                let v: f64 = rng.random_range(0.0..2.0);
                d[a][b] = v;
                d[b][a] = v;
            }
        }
        let target: f64 = rng.random_range(0.0..0.5);
        let s = ramsey_extract(&d, target).unwrap();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (k, &a) in s.indices.iter().enumerate() {
            for &b in &s.indices[k + 1..] {
                lo = lo.min(d[a][b]);
                hi = hi.max(d[a][b]);
            }
        }
        let sorted = s.indices.windows(2).all(|w| w[0] < w[1]) && s.indices.iter().all(|&k| k < size);
        o.check(sorted && s.indices.len() >= 2, format!("ramsey #{i}: indices {:?}", s.indices));
        o.check(lo == s.lo && hi == s.hi && s.width == hi - lo, format!("ramsey #{i}: reported band differs from scan"));
        o.check(s.width <= target || s.indices.len() == 2, format!("ramsey #{i}: width {} > target {target}", s.width));
        counts[4] += 1;
    }

    o.summary = format!(
        "instances: feasibility/exactness {}, reporting {}, determinism {}, oracle {}, ramsey {}",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    );
    o
}

fn main() {
    let started = Instant::now();
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("lp values", criterion_1),
        ("euclidean simplex", criterion_2),
        ("duality", criterion_3),
        ("interpolation", criterion_4),
        ("gap lipschitz", criterion_5),
        ("pullback renorming", criterion_6),
        ("thickness", criterion_7),
        ("james identities", criterion_8),
        ("property suites", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {} [{status}] {name}: {} [{:.1}s]", i + 1, o.summary, t.elapsed().as_secs_f64());
        for d in &o.details {
            println!("    {d}");
        }
        if !o.pass {
            failed += 1;
        }
    }
    let total = started.elapsed().as_secs_f64();
    let ok = total < 900.0;
    println!("total acceptance runtime {total:.1}s ({})", if ok { "< 15 min" } else { "EXCEEDS 15 min" });
    if failed > 0 || !ok {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
