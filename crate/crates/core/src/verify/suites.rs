use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::{self, duality_certificate};
use crate::error::{Error, Result};
use crate::linalg;
use crate::sampling;
use crate::solvers::{
    self, covering_seeded, distance_to_ball, maximin_packing, maximin_packing_seeded, transport_witness,
    two_point_seeded, CoverTarget, PackingMode, SolverConfig, TwoPointMode,
};
use crate::spaces::{pullback_embedding, NormedSpace, SpaceSpec, Subspace};

use super::known::known_kottman;
use super::{CheckReport, CheckRow, Relation, CLOSED_FORM_SLACK, LIPSCHITZ_SLACK, SOLVER_SLACK};

fn fmt_p(p: f64) -> String {
    if p.is_infinite() {
        "inf".into()
    } else {
        format!("{p}")
    }
}

fn describe(spec: &SpaceSpec) -> String {
    match spec {
        SpaceSpec::Lp { n, p } => format!("lp({n},{})", fmt_p(*p)),
        SpaceSpec::WeightedLp { n, p, .. } => format!("weighted_lp({n},{})", fmt_p(*p)),
        SpaceSpec::Polyhedral { n, functionals } => format!("polyhedral({n},{}f)", functionals.len()),
        other => match other.dim() {
            Ok(d) => format!("{}({d})", other.kind()),
            Err(_) => other.kind().to_string(),
        },
    }
}

fn rows_or_error(suite: &str, label: &str, r: Result<Vec<CheckRow>>) -> Vec<CheckRow> {
    r.unwrap_or_else(|e| vec![CheckRow::errored(suite, label, &e)])
}

fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// `kottman(lp(n,p), N=n) >= 2^(1/p)`, plus `N=2n` rows for `p=1` and sign-vector rows for `p=inf, n<=3`.
pub fn check_lp_values(ps: &[f64], ns: &[usize], config: &SolverConfig) -> Result<CheckReport> {
    const SUITE: &str = "lp_values";
    let started = Instant::now();
    if ps.is_empty() || ns.is_empty() {
        return Err(Error::InvalidArgument("lp_values needs nonempty p and n grids".into()));
    }
    let combos: Vec<(f64, usize)> = ps.iter().flat_map(|&p| ns.iter().map(move |&n| (p, n))).collect();
    let rows: Vec<CheckRow> = combos
        .par_iter()
        .flat_map_iter(|&(p, n)| {
            let label = format!("p={} n={n}", fmt_p(p));
            let r = (|| -> Result<Vec<CheckRow>> {
                let space = NormedSpace::build(&SpaceSpec::lp(n, p))?;
                let target = if p.is_infinite() { 1.0 } else { 2f64.powf(1.0 / p) };
                let k = constants::kottman(&space, n, &PackingMode::Plain, config)?;
                let mut out = vec![CheckRow::asserted(
                    SUITE,
                    format!("{label} N={n}: kottman_N >= 2^(1/p)"),
                    k.value,
                    Relation::Ge,
                    target,
                    CLOSED_FORM_SLACK,
                )];
                let extra = if p == 1.0 {
                    Some(2 * n)
                } else if p.is_infinite() && n <= 3 {
                    Some(1usize << n)
                } else {
                    None
                };
                if let Some(m) = extra {
                    let k = constants::kottman(&space, m, &PackingMode::Plain, config)?;
                    out.push(CheckRow::asserted(
                        SUITE,
                        format!("{label} N={m}: kottman_N >= 2"),
                        k.value,
                        Relation::Ge,
                        2.0,
                        CLOSED_FORM_SLACK,
                    ));
                }
                Ok(out)
            })();
            rows_or_error(SUITE, &label, r)
        })
        .collect();
    let p = params(&[("p", ps.iter().map(|&p| fmt_p(p)).collect::<Vec<_>>().join(",")), ("n", list(ns))]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}

/// `(k + w)(k* + w) >= 2` from the duality certificate of each space.
pub fn check_duality(spaces: &[SpaceSpec], config: &SolverConfig) -> Result<CheckReport> {
    const SUITE: &str = "duality";
    let started = Instant::now();
    let built: Vec<NormedSpace> = spaces.iter().map(NormedSpace::build).collect::<Result<_>>()?;
    let rows: Vec<CheckRow> = built
        .par_iter()
        .zip(spaces)
        .enumerate()
        .flat_map_iter(|(i, (space, spec))| {
            let label = format!("#{i} {}", describe(spec));
            let r = duality_certificate(space, config).map(|c| {
                vec![
                    CheckRow::asserted(
                        SUITE,
                        format!("{label}: (k+w)(k*+w) >= 2"),
                        c.certified_product,
                        Relation::Ge,
                        2.0,
                        CLOSED_FORM_SLACK,
                    )
                    .with_note(format!("k={} k*={} w={} |S|={}", c.k, c.k_star, c.width, c.primal.indices.len())),
                    CheckRow::asserted(
                        SUITE,
                        format!("{label}: min pair product >= 2"),
                        c.min_pair_product,
                        Relation::Ge,
                        2.0,
                        CLOSED_FORM_SLACK,
                    ),
                    CheckRow::asserted(
                        SUITE,
                        format!("{label}: auerbach residual <= 1e-9"),
                        c.system.residual,
                        Relation::Le,
                        0.0,
                        1e-9,
                    ),
                    CheckRow::reported(SUITE, format!("{label}: k k* vs 2"), c.product_lower, Relation::Approx, 2.0, 0.0),
                ]
            });
            rows_or_error(SUITE, &label, r)
        })
        .collect();
    let p = params(&[("spaces", spaces.iter().map(describe).collect::<Vec<_>>().join(";"))]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}

fn known_or_estimate(space: &NormedSpace, n_points: usize, mode: &PackingMode, config: &SolverConfig) -> Result<(f64, bool)> {
    match known_kottman(space, n_points, mode) {
        Some(v) => Ok((v, true)),
        None => Ok((constants::kottman(space, n_points, mode, config)?.value, false)),
    }
}

/// Largest relative difference between the factorization solver and the
/// closed form on `count` random vectors, or `None` without a Calderón solver.
fn calderon_agreement(space: &NormedSpace, count: usize, seed: u64) -> Option<f64> {
    let mut rng = sampling::rng_for(seed ^ 0xca1d, 0);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let x = sampling::gaussian_vec(&mut rng, space.dim());
        let solver = space.factorization_norm(&x)?;
        let exact = space.eval(&x);
        worst = worst.max((solver - exact).abs() / exact);
    }
    Some(worst)
}

/// Log-convexity of the Kottman estimate along the Calderón scale of `(x0, x1)`.
pub fn check_interpolation(
    x0: &SpaceSpec,
    x1: &SpaceSpec,
    thetas: &[f64],
    n_points: usize,
    disjoint: bool,
    config: &SolverConfig,
) -> Result<CheckReport> {
    const SUITE: &str = "interpolation";
    let started = Instant::now();
    for (field, s) in [("x0", x0), ("x1", x1)] {
        s.validate()?;
        if !s.is_coordinate() {
            return Err(Error::spec(field, "interpolation needs coordinate spaces"));
        }
    }
    if x0.dim()? != x1.dim()? {
        return Err(Error::DimensionMismatch {
            context: "interpolation couple",
            expected: x0.dim()?,
            got: x1.dim()?,
        });
    }
    if thetas.iter().any(|t| !(0.0..=1.0).contains(t)) || thetas.is_empty() {
        return Err(Error::InvalidArgument("theta grid must be nonempty and inside [0,1]".into()));
    }
    let mode = if disjoint {
        PackingMode::disjoint_auto()
    } else {
        PackingMode::Plain
    };
    let s0 = NormedSpace::build(x0)?;
    let s1 = NormedSpace::build(x1)?;
    let (k0, exact0) = known_or_estimate(&s0, n_points, &mode, config)?;
    let (k1, exact1) = known_or_estimate(&s1, n_points, &mode, config)?;
    let name = if disjoint { "kottman_disjoint_N" } else { "kottman_N" };

    let rows: Vec<CheckRow> = thetas
        .par_iter()
        .flat_map_iter(|&theta| {
            let label = format!("theta={theta}");
            let r = (|| -> Result<Vec<CheckRow>> {
                let space = NormedSpace::build(&SpaceSpec::interpolated(x0.clone(), x1.clone(), theta))?;
                let est = constants::kottman(&space, n_points, &mode, config)?.value;
                let rhs = k0.powf(1.0 - theta) * k1.powf(theta);
                let bound = format!("{label}: {name}(X_theta) <= {name}(X0)^(1-theta) {name}(X1)^theta");
                let mut out = vec![if exact0 && exact1 {
                    CheckRow::asserted(SUITE, bound, est, Relation::Le, rhs, SOLVER_SLACK)
                } else {
                    CheckRow::reported(SUITE, bound, est, Relation::Le, rhs, SOLVER_SLACK)
                        .with_note("endpoint value is a solver estimate")
                }];
                if let Some((p, _)) = space.lp_parameters() {
                    match known_kottman(&space, n_points, &mode) {
                        Some(v) => out.push(CheckRow::asserted(
                            SUITE,
                            format!("{label}: {name}(X_theta) = closed form (p_theta={})", fmt_p(p)),
                            est,
                            Relation::Approx,
                            v,
                            2e-3,
                        )),
                        None => out.push(
                            CheckRow::reported(
                                SUITE,
                                format!("{label}: {name}(X_theta) vs 2^(1/p_theta) (p_theta={})", fmt_p(p)),
                                est,
                                Relation::Approx,
                                if p.is_infinite() { 1.0 } else { 2f64.powf(1.0 / p) },
                                2e-3,
                            )
                            .with_note("no exact finite-N value"),
                        ),
                    }
                    if let Some(dev) = calderon_agreement(&space, 100, config.seed) {
                        out.push(CheckRow::asserted(
                            SUITE,
                            format!("{label}: max relative |factorization norm - closed form| on 100 vectors"),
                            dev,
                            Relation::Le,
                            0.0,
                            CLOSED_FORM_SLACK,
                        ));
                    }
                }
                Ok(out)
            })();
            rows_or_error(SUITE, &label, r)
        })
        .collect();
    let p = params(&[
        ("x0", describe(x0)),
        ("x1", describe(x1)),
        ("theta", list(thetas)),
        ("N", n_points.to_string()),
        ("mode", mode.label().to_string()),
    ]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LipschitzConstant {
    Kottman,
    Thickness,
    James,
}

/// Nearest point of `B_L` to the ambient point `x`, renormalized to the sphere
/// of `L`, in `L` coordinates.
fn onto_sphere_of(l: &Subspace, x: &[f64]) -> Result<Option<Vec<f64>>> {
    let (_, b) = distance_to_ball(l, x)?;
    let c = l.coordinates(&b);
    let n = l.space().eval(&c);
    Ok((n > 1e-12).then(|| linalg::scale(&c, 1.0 / n)))
}

fn cross_cover(m: &Subspace, l: &Subspace, n: usize, config: &SolverConfig) -> Result<(f64, f64)> {
    let rm = solvers::covering(m.space(), n, CoverTarget::Sphere, config)?;
    let rl = solvers::covering(l.space(), n, CoverTarget::Sphere, config)?;
    let carry = |from: &Subspace, to: &Subspace, centers: &[Vec<f64>]| -> Result<Option<Vec<Vec<f64>>>> {
        let mut out = Vec::with_capacity(centers.len());
        for c in centers {
            match onto_sphere_of(to, &from.embed(c))? {
                Some(v) => out.push(v),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    let mut tm = rm.radius;
    let mut tl = rl.radius;
    if let Some(seed) = carry(l, m, &rl.centers)? {
        tm = tm.min(covering_seeded(m.space(), n, CoverTarget::Sphere, config, &[seed])?.radius);
    }
    if let Some(seed) = carry(m, l, &rm.centers)? {
        tl = tl.min(covering_seeded(l.space(), n, CoverTarget::Sphere, config, &[seed])?.radius);
    }
    Ok((tm, tl))
}

fn cross_james(m: &Subspace, l: &Subspace, config: &SolverConfig) -> Result<(f64, f64)> {
    let mode = TwoPointMode::James;
    let jm = solvers::two_point_constant(m.space(), mode, config)?;
    let jl = solvers::two_point_constant(l.space(), mode, config)?;
    let carry = |from: &Subspace, to: &Subspace, x: &[f64], y: &[f64]| -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        let a = onto_sphere_of(to, &from.embed(x))?;
        let b = onto_sphere_of(to, &from.embed(y))?;
        Ok(a.zip(b).into_iter().collect())
    };
    let sm = two_point_seeded(m.space(), mode, config, &carry(l, m, &jl.x, &jl.y)?)?;
    let sl = two_point_seeded(l.space(), mode, config, &carry(m, l, &jm.x, &jm.y)?)?;
    Ok((jm.value.max(sm.value), jl.value.max(sl.value)))
}

/// Lipschitz dependence of the constants on the gap, for every pair of the
/// subspace family (bases in ambient coordinates).
pub fn check_lipschitz(
    ambient: &SpaceSpec,
    family: &[Vec<Vec<f64>>],
    n_points: usize,
    which: &[LipschitzConstant],
    config: &SolverConfig,
) -> Result<CheckReport> {
    const SUITE: &str = "lipschitz";
    let started = Instant::now();
    if family.is_empty() {
        return Err(Error::InvalidArgument("subspace family is empty".into()));
    }
    let amb = NormedSpace::build(ambient)?;
    let subs: Vec<Subspace> = family
        .iter()
        .map(|b| Subspace::from_space(&amb, b.clone()))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = if subs.len() == 1 {
        vec![(0, 0)]
    } else {
        (0..subs.len())
            .flat_map(|i| ((i + 1)..subs.len()).map(move |j| (i, j)))
            .collect()
    };
    let rows: Vec<CheckRow> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let label = format!("M={i} L={j}");
            let r = (|| -> Result<Vec<CheckRow>> {
                let (m, l) = (&subs[i], &subs[j]);
                let gap = solvers::subspace_gap(m, l, config)?;
                let g = gap.g;
                let mut out = vec![CheckRow::reported(SUITE, format!("{label}: gap"), g, Relation::Le, g, 0.0)
                    .with_note(format!("g_ML={} g_LM={}", gap.g_ml, gap.g_lm))];
                if which.contains(&LipschitzConstant::Kottman) {
                    let rm = maximin_packing(m.space(), n_points, &PackingMode::Plain, config)?;
                    let rl = maximin_packing(l.space(), n_points, &PackingMode::Plain, config)?;
                    for (dir, src, from, to) in [("L<-M", &rm, m, l), ("M<-L", &rl, l, m)] {
                        let t = transport_witness(src, from, to, g, CLOSED_FORM_SLACK)?;
                        let mut row = CheckRow::asserted(
                            SUITE,
                            format!("{label} N={n_points}: sep({dir}) >= sep(source) - 2(g + 1e-6)"),
                            t.packing.separation,
                            Relation::Ge,
                            src.separation - 2.0 * g,
                            2.0 * CLOSED_FORM_SLACK,
                        );
                        row.note = format!("max shift {}", t.max_shift);
                        if t.flagged {
                            row.note.push_str("; shift exceeds gap estimate");
                        }
                        out.push(row);
                    }
                }
                if which.contains(&LipschitzConstant::Thickness) {
                    let (tm, tl) = cross_cover(m, l, n_points, config)?;
                    out.push(CheckRow::asserted(
                        SUITE,
                        format!("{label} N={n_points}: |T_N(M) - T_N(L)| <= 4g"),
                        (tm - tl).abs(),
                        Relation::Le,
                        4.0 * g,
                        LIPSCHITZ_SLACK,
                    ));
                }
                if which.contains(&LipschitzConstant::James) {
                    let (jm, jl) = cross_james(m, l, config)?;
                    out.push(CheckRow::asserted(
                        SUITE,
                        format!("{label}: |Jm(M) - Jm(L)| <= 4g"),
                        (jm - jl).abs(),
                        Relation::Le,
                        4.0 * g,
                        LIPSCHITZ_SLACK,
                    ));
                }
                Ok(out)
            })();
            rows_or_error(SUITE, &label, r)
        })
        .collect();
    let p = params(&[
        ("ambient", describe(ambient)),
        ("family", family.len().to_string()),
        ("N", n_points.to_string()),
        (
            "constants",
            which
                .iter()
                .map(|c| format!("{c:?}").to_lowercase())
                .collect::<Vec<_>>()
                .join(","),
        ),
    ]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}

/// Pullback renormings of `lp(2n, p)`: gap to `Y (+)_inf Z`, transported
/// Kottman differences, and a reported trend for the Kalton-Peck family.
pub fn check_twisted(n: usize, p: f64, eps_grid: &[f64], n_points: usize, config: &SolverConfig) -> Result<CheckReport> {
    const SUITE: &str = "twisted";
    let started = Instant::now();
    if eps_grid.is_empty() || eps_grid.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
        return Err(Error::InvalidArgument("eps grid must be nonempty and positive".into()));
    }
    let base = SpaceSpec::lp(2 * n, p);
    base.validate()?;

    let per_eps: Vec<(f64, Option<f64>, Vec<CheckRow>)> = eps_grid
        .par_iter()
        .map(|&eps| {
            let label = format!("eps={eps}");
            let mut gap_value = None;
            let r = (|| -> Result<Vec<CheckRow>> {
                let (ambient, pb, split) = pullback_embedding(&base, eps)?;
                let amb = NormedSpace::build(&ambient)?;
                let m = Subspace::from_space(&amb, pb)?;
                let l = Subspace::from_space(&amb, split)?;
                let mut out = Vec::new();

                // the pullback norm is the ambient norm of ((a,b), b/eps)
                let pb_space = NormedSpace::build(&SpaceSpec::pullback(base.clone(), eps))?;
                let mut rng = sampling::rng_for(config.seed ^ 0x9b, (eps * 1e6) as u64);
                let mut worst: f64 = 0.0;
                for _ in 0..200 {
                    let x = sampling::gaussian_vec(&mut rng, 2 * n);
                    let mut e = x.clone();
                    e.extend(x[n..].iter().map(|v| v / eps));
                    let (a, b) = (pb_space.eval(&x), amb.eval(&e));
                    worst = worst.max((a - b).abs() / b);
                }
                out.push(CheckRow::asserted(
                    SUITE,
                    format!("{label}: pullback embedding isometry (max relative deviation)"),
                    worst,
                    Relation::Le,
                    0.0,
                    1e-12,
                ));

                let gap = solvers::subspace_gap(&m, &l, config)?;
                gap_value = Some(gap.g);
                out.push(CheckRow::asserted(
                    SUITE,
                    format!("{label}: g(PB, Y+Z) <= eps"),
                    gap.g,
                    Relation::Le,
                    eps,
                    CLOSED_FORM_SLACK,
                ));
                out.push(CheckRow::reported(
                    SUITE,
                    format!("{label}: directed gap PB -> Y+Z <= eps"),
                    gap.g_ml,
                    Relation::Le,
                    eps,
                    CLOSED_FORM_SLACK,
                ));
                out.push(CheckRow::reported(
                    SUITE,
                    format!("{label}: directed gap Y+Z -> PB <= eps"),
                    gap.g_lm,
                    Relation::Le,
                    eps,
                    CLOSED_FORM_SLACK,
                ));

                let rm = maximin_packing(m.space(), n_points, &PackingMode::Plain, config)?;
                let rl = maximin_packing(l.space(), n_points, &PackingMode::Plain, config)?;
                let tml = transport_witness(&rm, &m, &l, gap.g, CLOSED_FORM_SLACK)?;
                let tlm = transport_witness(&rl, &l, &m, gap.g, CLOSED_FORM_SLACK)?;
                for (dir, t) in [("Y+Z<-PB", &tml), ("PB<-Y+Z", &tlm)] {
                    out.push(
                        CheckRow::asserted(
                            SUITE,
                            format!("{label} N={n_points}: sep({dir}) >= sep(source) - 2 max shift"),
                            t.packing.separation,
                            Relation::Ge,
                            t.certified_lower,
                            1e-12,
                        )
                        .with_note(format!("max shift {}", t.max_shift)),
                    );
                }
                let km = rm.separation.max(tlm.packing.separation);
                let kl = rl.separation.max(tml.packing.separation);
                out.push(CheckRow::asserted(
                    SUITE,
                    format!("{label} N={n_points}: |kottman(PB) - kottman(Y+Z)| <= 2(eps + 1e-6)"),
                    km,
                    Relation::Approx,
                    kl,
                    2.0 * (eps + CLOSED_FORM_SLACK),
                ));

                let tw = NormedSpace::build(&SpaceSpec::twisted_kp(n, eps))?;
                let kt = constants::kottman(&tw, n_points, &PackingMode::Plain, config)?;
                out.push(
                    CheckRow::reported(
                        SUITE,
                        format!("{label} N={n_points}: kottman(twisted_kp) vs sqrt(2)"),
                        kt.value,
                        Relation::Approx,
                        2f64.sqrt(),
                        0.0,
                    )
                    .with_note(format!("quasinorm constant {:.4}", tw.quasinorm_constant())),
                );
                Ok(out)
            })();
            (eps, gap_value, rows_or_error(SUITE, &label, r))
        })
        .collect();

    let mut rows: Vec<CheckRow> = Vec::new();
    for (_, _, r) in &per_eps {
        rows.extend(r.iter().cloned());
    }
    let mut gaps: Vec<(f64, f64)> = per_eps.iter().filter_map(|(e, g, _)| g.map(|g| (*e, g))).collect();
    gaps.sort_by(|a, b| a.0.total_cmp(&b.0));
    for w in gaps.windows(2) {
        rows.push(CheckRow::asserted(
            SUITE,
            format!("gap(eps={}) <= gap(eps={})", w[0].0, w[1].0),
            w[0].1,
            Relation::Le,
            w[1].1,
            CLOSED_FORM_SLACK,
        ));
    }
    let prm = params(&[
        ("n", n.to_string()),
        ("p", fmt_p(p)),
        ("eps", list(eps_grid)),
        ("N", n_points.to_string()),
    ]);
    Ok(CheckReport::assemble(SUITE, prm, rows, started))
}

/// Vector-sum lower bound via embedded witnesses, plus reported direct-sum thickness rows.
pub fn check_sum_formulas(
    lambda: &SpaceSpec,
    x: &SpaceSpec,
    y: &SpaceSpec,
    n_points: usize,
    config: &SolverConfig,
) -> Result<CheckReport> {
    const SUITE: &str = "sum_formulas";
    let started = Instant::now();
    let sl = NormedSpace::build(lambda)?;
    let sx = NormedSpace::build(x)?;
    let sy = NormedSpace::build(y)?;
    let vs = NormedSpace::build(&SpaceSpec::vector_sum(lambda.clone(), x.clone()))?;
    let (m, k) = (sl.dim(), sx.dim());
    let mut rows = Vec::new();

    let kl = maximin_packing(&sl, n_points, &PackingMode::Plain, config)?;
    let kx = maximin_packing(&sx, n_points, &PackingMode::Plain, config)?;
    // a -> (a_i u)_i with ||u||_X = 1, and x -> (x / ||e_1||_lambda, 0, ..., 0)
    let u = linalg::scale(&linalg::unit(k, 0), 1.0 / sx.eval(&linalg::unit(k, 0)));
    let e1 = sl.eval(&linalg::unit(m, 0));
    let from_lambda: Vec<Vec<f64>> = kl
        .points
        .iter()
        .map(|a| a.iter().flat_map(|&ai| u.iter().map(move |&uj| ai * uj)).collect())
        .collect();
    let from_x: Vec<Vec<f64>> = kx
        .points
        .iter()
        .map(|p| {
            let mut v = vec![0.0; m * k];
            for (j, c) in p.iter().enumerate() {
                v[j] = c / e1;
            }
            v
        })
        .collect();
    let kv = maximin_packing_seeded(&vs, n_points, &PackingMode::Plain, config, &[from_lambda, from_x])?;
    rows.push(CheckRow::asserted(
        SUITE,
        format!("N={n_points}: kottman(lambda(X)) >= max(kottman(lambda), kottman(X))"),
        kv.separation,
        Relation::Ge,
        kl.separation.max(kx.separation),
        1e-9,
    ));

    let xx = NormedSpace::build(&SpaceSpec::direct_sum(f64::INFINITY, vec![x.clone(), x.clone()]))?;
    let embedded: Vec<Vec<f64>> = kx
        .points
        .iter()
        .map(|p| p.iter().cloned().chain(std::iter::repeat_n(0.0, k)).collect())
        .collect();
    let kxx = maximin_packing_seeded(&xx, n_points, &PackingMode::Plain, config, &[embedded])?;
    rows.push(CheckRow::reported(
        SUITE,
        format!("N={n_points}: kottman(X +inf X) vs kottman(X)"),
        kxx.separation,
        Relation::Approx,
        kx.separation,
        1e-2,
    ));

    let sum_dim = sx.dim() + sy.dim();
    if sum_dim <= config.covering.max_dim {
        let tx = solvers::covering(&sx, n_points, CoverTarget::Sphere, config)?.radius;
        let ty = solvers::covering(&sy, n_points, CoverTarget::Sphere, config)?.radius;
        let sinf = NormedSpace::build(&SpaceSpec::direct_sum(f64::INFINITY, vec![x.clone(), y.clone()]))?;
        let s1 = NormedSpace::build(&SpaceSpec::direct_sum(1.0, vec![x.clone(), y.clone()]))?;
        let tinf = solvers::covering(&sinf, n_points, CoverTarget::Sphere, config)?.radius;
        let t1 = solvers::covering(&s1, n_points, CoverTarget::Sphere, config)?.radius;
        rows.push(
            CheckRow::reported(
                SUITE,
                format!("N={n_points}: T_N(X +inf Y) vs min(T_N(X), T_N(Y))"),
                tinf,
                Relation::Approx,
                tx.min(ty),
                0.0,
            )
            .with_note("finite-N shadow of the infinite-dimensional identity"),
        );
        rows.push(
            CheckRow::reported(SUITE, format!("N={n_points}: T_N(X +1 Y) vs 2"), t1, Relation::Approx, 2.0, 0.0)
                .with_note("finite-N shadow of the infinite-dimensional identity"),
        );
    } else {
        rows.push(CheckRow {
            note: format!("direct sum dimension {sum_dim} exceeds the covering limit"),
            ..CheckRow::reported(SUITE, "thickness rows skipped", f64::NAN, Relation::Approx, f64::NAN, 0.0)
        });
    }
    let p = params(&[
        ("lambda", describe(lambda)),
        ("x", describe(x)),
        ("y", describe(y)),
        ("N", n_points.to_string()),
    ]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}

/// `g * Jm = 2` and `g <= Jm` on low-dimensional spaces, with the middle of
/// the chain `g <= T <= K_s <= Jm` reported at finite N.
pub fn check_identities(spaces: &[SpaceSpec], config: &SolverConfig) -> Result<CheckReport> {
    const SUITE: &str = "identities";
    const N: usize = 4;
    let started = Instant::now();
    let built: Vec<NormedSpace> = spaces.iter().map(NormedSpace::build).collect::<Result<_>>()?;
    if let Some(s) = built.iter().find(|s| !(2..=4).contains(&s.dim())) {
        return Err(Error::InvalidArgument(format!(
            "identities suite takes spaces of dimension 2 to 4, got {}",
            s.dim()
        )));
    }
    let rows: Vec<CheckRow> = built
        .par_iter()
        .zip(spaces)
        .enumerate()
        .flat_map_iter(|(i, (space, spec))| {
            let label = format!("#{i} {}", describe(spec));
            let r = (|| -> Result<Vec<CheckRow>> {
                let (jm, g) = constants::james_constants(space, config)?;
                let t = constants::thickness(space, N, config)?.value;
                let ks = constants::kottman(space, N, &PackingMode::Symmetric, config)?.value;
                Ok(vec![
                    CheckRow::asserted(
                        SUITE,
                        format!("{label}: g * Jm = 2"),
                        g.value * jm.value,
                        Relation::Approx,
                        2.0,
                        SOLVER_SLACK,
                    )
                    .with_note(format!("Jm={} g={}", jm.value, g.value)),
                    CheckRow::asserted(SUITE, format!("{label}: g <= Jm"), g.value, Relation::Le, jm.value, 1e-9),
                    CheckRow::reported(SUITE, format!("{label}: g <= T_{N}"), g.value, Relation::Le, t, 0.0),
                    CheckRow::reported(SUITE, format!("{label}: T_{N} <= K_s,{N}"), t, Relation::Le, ks, 0.0),
                    CheckRow::reported(SUITE, format!("{label}: K_s,{N} <= Jm"), ks, Relation::Le, jm.value, 0.0),
                ])
            })();
            rows_or_error(SUITE, &label, r)
        })
        .collect();
    let p = params(&[("spaces", spaces.iter().map(describe).collect::<Vec<_>>().join(";"))]);
    Ok(CheckReport::assemble(SUITE, p, rows, started))
}
