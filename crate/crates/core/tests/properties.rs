//! Randomized properties of spaces, solvers, constants and reports.

use bcl::constants::{self, duality_certificate, ramsey_extract, BoundSide, ConstantKind};
use bcl::solvers::{
    auerbach, covering, covering_radius, maximin_packing, separation, CoverTarget, CoveringBudget, PackingMode,
    SolverConfig,
};
use bcl::spaces::{dual_space, pullback_embedding, NormedSpace, SpaceSpec, Subspace};
use bcl::verify::{self, CheckRow, Relation, RowStatus};
use proptest::prelude::*;

fn exponent() -> impl Strategy<Value = f64> {
    prop_oneof![Just(1.0), Just(f64::INFINITY), 1.05f64..8.0]
}

fn vector(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, n)
}

fn polygon_functionals() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec((0.0f64..std::f64::consts::PI, 0.5f64..1.5), 3..7)
        .prop_map(|fs| fs.into_iter().map(|(a, r)| vec![r * a.cos(), r * a.sin()]).collect())
}

/// Genuine norms on R^3 built from every constructor that yields one.
fn norm_spec() -> impl Strategy<Value = SpaceSpec> {
    let lp = exponent().prop_map(|p| SpaceSpec::lp(3, p));
    let weighted = (exponent(), prop::collection::vec(0.2f64..3.0, 3)).prop_map(|(p, w)| SpaceSpec::weighted_lp(3, p, w));
    let calderon = (exponent(), exponent(), 0.0f64..1.0)
        .prop_map(|(p, q, t)| SpaceSpec::interpolated(SpaceSpec::lp(3, p), SpaceSpec::lp(3, q), t));
    let sum = (exponent(), exponent(), exponent())
        .prop_map(|(o, p, q)| SpaceSpec::direct_sum(o, vec![SpaceSpec::lp(2, p), SpaceSpec::lp(1, q)]));
    let polyhedral = prop::collection::vec(vector(3), 3..6).prop_map(|mut fs| {
        fs.extend([vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        SpaceSpec::polyhedral(fs)
    });
    let subspace = (exponent(), vector(4), vector(4), vector(4))
        .prop_filter("independent basis", |(_, a, b, c)| {
            let m = nalgebra::DMatrix::from_fn(4, 3, |i, j| [a, b, c][j][i]);
            m.singular_values().min() > 1e-2
        })
        .prop_map(|(p, a, b, c)| SpaceSpec::subspace(SpaceSpec::lp(4, p), vec![a, b, c]));
    prop_oneof![lp, weighted, calderon, sum, polyhedral, subspace]
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norms_are_homogeneous(spec in norm_spec(), x in vector(3), lambda in -5.0f64..5.0) {
        let s = NormedSpace::build(&spec).unwrap();
        let nx = s.eval(&x);
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        prop_assert!((s.eval(&scaled) - lambda.abs() * nx).abs() <= 1e-9 * nx.max(1e-300));
    }

    #[test]
    fn twisted_quasinorm_is_homogeneous(eps in 0.05f64..1.0, x in vector(4), lambda in -5.0f64..5.0) {
        let s = NormedSpace::build(&SpaceSpec::twisted_kp(2, eps)).unwrap();
        let nx = s.eval(&x);
        let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
        prop_assert!((s.eval(&scaled) - lambda.abs() * nx).abs() <= 1e-9 * nx.max(1e-300));
    }

    #[test]
    fn triangle_inequality(spec in norm_spec(), x in vector(3), y in vector(3)) {
        let s = NormedSpace::build(&spec).unwrap();
        let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        prop_assert!(s.eval(&sum) <= s.eval(&x) + s.eval(&y) + 1e-9);
    }

    #[test]
    fn calderon_intersection_bound(
        p in exponent(), q in exponent(),
        w0 in prop::collection::vec(0.3f64..3.0, 4),
        w1 in prop::collection::vec(0.3f64..3.0, 4),
        theta in 0.0f64..1.0,
        x in vector(4),
    ) {
        let x0 = SpaceSpec::weighted_lp(4, p, w0);
        let x1 = SpaceSpec::weighted_lp(4, q, w1);
        let mid = NormedSpace::build(&SpaceSpec::interpolated(x0.clone(), x1.clone(), theta)).unwrap();
        let n0 = NormedSpace::build(&x0).unwrap().eval(&x);
        let n1 = NormedSpace::build(&x1).unwrap().eval(&x);
        prop_assert!(mid.eval(&x) <= n0.powf(1.0 - theta) * n1.powf(theta) + 1e-6);
    }

    #[test]
    fn lp_double_dual(p in exponent(), n in 2usize..5, x in vector(4)) {
        let s = NormedSpace::build(&SpaceSpec::lp(n, p)).unwrap();
        let dd = dual_space(&dual_space(&s).unwrap()).unwrap();
        prop_assert!(rel_close(dd.eval(&x[..n]), s.eval(&x[..n]), 1e-6));
    }

    #[test]
    fn dual_norm_dominates_pairing(spec in norm_spec(), f in vector(3), x in vector(3)) {
        let s = NormedSpace::build(&spec).unwrap();
        let (dn, witness) = s.support_point(&f);
        let pairing: f64 = f.iter().zip(&x).map(|(a, b)| a * b).sum();
        prop_assert!(pairing.abs() <= dn * s.eval(&x) * (1.0 + 1e-6) + 1e-9);
        prop_assert!(s.eval(&witness) <= 1.0 + 1e-6);
    }

    #[test]
    fn ramsey_width_contract(
        entries in prop::collection::vec(0.0f64..2.0, 66),
        size in 2usize..12,
        target in 0.0f64..0.5,
    ) {
        let mut d = vec![vec![0.0; size]; size];
        let mut k = 0;
        for i in 0..size {
            for j in (i + 1)..size {
                d[i][j] = entries[k];
                d[j][i] = entries[k];
                k += 1;
            }
        }
        let s = ramsey_extract(&d, target).unwrap();
        prop_assert!(s.indices.len() >= 2);
        prop_assert!(s.indices.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(s.width <= target || s.indices.len() == 2);
        for (a, &i) in s.indices.iter().enumerate() {
            for &j in &s.indices[a + 1..] {
                prop_assert!(d[i][j] >= s.lo && d[i][j] <= s.hi);
            }
        }
    }

    #[test]
    fn row_status_matches_relation(lhs in -3.0f64..3.0, rhs in -3.0f64..3.0, slack in 0.0f64..1.0, which in 0usize..3) {
        let rel = [Relation::Le, Relation::Ge, Relation::Approx][which];
        let row = CheckRow::asserted("p", "x", lhs, rel, rhs, slack);
        let reported = CheckRow::reported("p", "x", lhs, rel, rhs, slack);
        prop_assert_eq!(row.status == RowStatus::Pass, rel.holds(lhs, rhs, slack));
        prop_assert!(reported.passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pullback_embedding_is_isometric(eps in 0.01f64..2.0, p in exponent(), x in vector(4)) {
        let base = SpaceSpec::lp(4, p);
        let pb = NormedSpace::build(&SpaceSpec::pullback(base.clone(), eps)).unwrap();
        let (ambient, _, _) = pullback_embedding(&base, eps).unwrap();
        let amb = NormedSpace::build(&ambient).unwrap();
        let mut e = x.clone();
        e.extend(x[2..].iter().map(|v| v / eps));
        prop_assert!(rel_close(pb.eval(&x), amb.eval(&e), 1e-9));
    }

    #[test]
    fn polyhedral_double_dual(fs in polygon_functionals(), x in vector(2)) {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(fs)).unwrap();
        let dd = dual_space(&dual_space(&s).unwrap()).unwrap();
        prop_assert!(rel_close(dd.eval(&x), s.eval(&x), 1e-6));
    }

    #[test]
    fn auerbach_pair_products(fs in polygon_functionals()) {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(fs)).unwrap();
        let a = auerbach(&s, &SolverConfig::quick()).unwrap();
        let d = dual_space(&s).unwrap();
        let x = &a.basis;
        let f = &a.functionals;
        let diff = |u: &[f64], v: &[f64]| u.iter().zip(v).map(|(a, b)| a - b).collect::<Vec<_>>();
        prop_assert!(s.eval(&diff(&x[0], &x[1])) * d.eval(&diff(&f[0], &f[1])) >= 2.0 - 1e-6);
    }

    #[test]
    fn duality_certificate_pairs(fs in polygon_functionals()) {
        let s = NormedSpace::build(&SpaceSpec::polyhedral(fs)).unwrap();
        let c = duality_certificate(&s, &SolverConfig::quick()).unwrap();
        prop_assert!(c.min_pair_product >= 2.0 - 1e-6);
        prop_assert!(c.certified_product >= 2.0 - 1e-6);
        prop_assert!(c.certified_product >= c.product_lower);
    }
}

fn small_config(seed: u64) -> SolverConfig {
    SolverConfig {
        restarts: 4,
        max_iters: 300,
        seed,
        covering: CoveringBudget {
            restarts: 2,
            max_iters: 150,
            probe_per_dim: 1500,
            working_per_dim: 100,
            refine_rounds: 2,
            max_dim: 4,
        },
        ..SolverConfig::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn packing_is_feasible_and_exact(p in exponent(), n in 2usize..4, pts in 2usize..6, sym in any::<bool>(), seed in 0u64..1000) {
        let s = NormedSpace::build(&SpaceSpec::lp(n, p)).unwrap();
        let mode = if sym { PackingMode::Symmetric } else { PackingMode::Plain };
        let r = maximin_packing(&s, pts, &mode, &small_config(seed)).unwrap();
        prop_assert_eq!(r.points.len(), pts);
        for x in &r.points {
            prop_assert!(s.eval(x) <= 1.0 + 1e-9);
        }
        prop_assert!((separation(&s, &r.points, sym) - r.separation).abs() <= 1e-12);
    }

    #[test]
    fn covering_is_feasible_and_exact(p in exponent(), centers in 2usize..5, seed in 0u64..1000) {
        let s = NormedSpace::build(&SpaceSpec::lp(2, p)).unwrap();
        let r = covering(&s, centers, CoverTarget::Sphere, &small_config(seed)).unwrap();
        for c in &r.centers {
            prop_assert!((s.eval(c) - 1.0).abs() <= 1e-9);
        }
        let probes = r.probe.points(&s, CoverTarget::Sphere);
        prop_assert!((covering_radius(&s, &r.centers, &probes) - r.radius).abs() <= 1e-12);
        prop_assert!(r.certified_upper() >= r.radius);
    }

    #[test]
    fn packing_is_deterministic(p in exponent(), pts in 2usize..5, seed in 0u64..1000) {
        let s = NormedSpace::build(&SpaceSpec::lp(3, p)).unwrap();
        let a = maximin_packing(&s, pts, &PackingMode::Plain, &small_config(seed)).unwrap();
        let b = maximin_packing(&s, pts, &PackingMode::Plain, &small_config(seed)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kottman_embeds_in_inf_sums(p in exponent(), q in exponent(), pts in 2usize..4) {
        let config = small_config(7);
        let x = NormedSpace::build(&SpaceSpec::lp(2, p)).unwrap();
        let y = NormedSpace::build(&SpaceSpec::lp(2, q)).unwrap();
        let sum = NormedSpace::build(&SpaceSpec::direct_sum(f64::INFINITY, vec![SpaceSpec::lp(2, p), SpaceSpec::lp(2, q)])).unwrap();
        let kx = constants::kottman(&x, pts, &PackingMode::Plain, &config).unwrap();
        let ky = constants::kottman(&y, pts, &PackingMode::Plain, &config).unwrap();
        let embed = |w: &[Vec<f64>], first: bool| -> Vec<Vec<f64>> {
            w.iter()
                .map(|v| if first { vec![v[0], v[1], 0.0, 0.0] } else { vec![0.0, 0.0, v[0], v[1]] })
                .collect()
        };
        let seeds = vec![embed(&kx.witnesses, true), embed(&ky.witnesses, false)];
        let ks = constants::kottman_seeded(&sum, pts, &PackingMode::Plain, &config, &seeds).unwrap();
        prop_assert!(ks.value >= kx.value.max(ky.value) - 1e-9);
    }
}

#[test]
fn bound_sides_follow_sup_and_inf() {
    use ConstantKind::*;
    for k in [Kottman, KottmanSymmetric, KottmanDisjoint, James, Gap] {
        assert_eq!(k.bound_side(), BoundSide::Lower, "{k:?}");
    }
    for k in [Thickness, Entropy, GJames] {
        assert_eq!(k.bound_side(), BoundSide::Upper, "{k:?}");
    }
}

#[test]
fn suite_rows_are_reproducible() {
    let config = SolverConfig::quick();
    let spaces = [SpaceSpec::lp(2, 3.0)];
    let a = verify::check_identities(&spaces, &config).unwrap();
    let b = verify::check_identities(&spaces, &config).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn gap_of_a_subspace_with_itself_is_zero() {
    let amb = SpaceSpec::lp(4, 1.0);
    let m = Subspace::new(&amb, verify::rotated_plane(0.3)).unwrap();
    let g = constants::gap(&m, &m, &SolverConfig::quick()).unwrap();
    assert!(g.value.abs() <= 1e-9);
}
