//! Verification battery: each named group runs a set of checks and reports
//! pass/fail with a one-line detail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{appendix_b_segment_checks, check_discriminants, lower_bound_one_step, qb_gap_check, two_step_certificate};
use crate::constructions::{
    build_random_regular_girth, build_star, build_star_triangles_leaves, golden_recursion, root_via_sinks,
    rooting_exceedance, split_pipeline, theorem64_best_p,
};
use crate::error::{Error, Result};
use crate::flow::{flow_power, superpose, unit_current_flow};
use crate::multigraph::{Multigraph, RootedGraph};
use crate::resistance::{pair_resistance, resistance_summary, rooted_summary, WeightedNetwork};
use crate::search::{enumerate_classes, nonconvexity_from_point, verify_small_claims, ClaimCheck, Objective};
use crate::spanning::spanning_tree_currents;
use crate::spectral::kirchhoff_index_by_eigenvalues;

/// Names accepted by [`run_group`], in battery order.
pub const GROUPS: [&str; 9] = [
    "golden",
    "appendixA",
    "appendixB",
    "small",
    "certificates",
    "theorem2",
    "lemma63",
    "corollary65",
    "theorem1",
];

/// Default vertex count for the split-construction reproduction.
pub const DEFAULT_THEOREM1_N: usize = 3000;

/// Sink probabilities tried by the split-construction reproduction.
pub const THEOREM1_P_GRID: [f64; 1] = [0.1];

/// Sink probabilities tried at `α = 3`.
pub const COROLLARY65_P_GRID: [f64; 4] = [0.02, 0.05, 0.1, 0.2];

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Vertex count for the size-dependent groups; `None` uses each
    /// group's default.
    pub n: Option<usize>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { n: None, seed: 0 }
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> ClaimCheck {
    ClaimCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

pub fn run_group(name: &str, opts: VerifyOptions) -> Result<Vec<ClaimCheck>> {
    match name {
        "golden" => golden_checks(),
        "appendixA" => appendix_a_checks(opts.seed),
        "appendixB" => appendix_b_checks(),
        "small" => small_checks(),
        "certificates" => certificate_checks(6, 8, 3),
        "theorem2" => sink_rooting_checks(20, 500, opts.seed),
        "lemma63" => tree_rooting_checks(10_000, opts.seed),
        "corollary65" => cubic_rooting_checks(opts.n.unwrap_or(2000), opts.seed),
        "theorem1" => split_checks(opts.n.unwrap_or(DEFAULT_THEOREM1_N), opts.seed),
        other => Err(Error::InvalidParameter(format!(
            "unknown verification group {other:?}; expected one of {}",
            GROUPS.join(", ")
        ))),
    }
}

pub fn golden_checks() -> Result<Vec<ClaimCheck>> {
    let g = golden_recursion();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let avg = (-3.0 + 7.0 * 5f64.sqrt()) / 24.0;
    Ok(vec![
        check("golden_x", (g.x - phi).abs() < 1e-10, format!("x = {:.15}", g.x)),
        check("golden_avg", (g.avg - avg).abs() < 1e-10, format!("avg = {:.15}", g.avg)),
        check(
            "closed_forms",
            closed_form_checks()?,
            "star A = 2 − 2/n (n = 3..50), star of triangles B = 2/3, complete weighted A = (n − 1)/m",
        ),
    ])
}

fn closed_form_checks() -> Result<bool> {
    let mut ok = true;
    for n in 3..=50 {
        let a = resistance_summary(&build_star(n, 1)?)?.a;
        ok &= (a - (2.0 - 2.0 / n as f64)).abs() < 1e-9;
    }
    let tri = build_star_triangles_leaves(12, 18)?;
    ok &= (rooted_summary(&tri)?.b - 2.0 / 3.0).abs() < 1e-9;
    for (n, c) in [(5usize, 0.5), (8, 2.0)] {
        let w = WeightedNetwork::complete(n, c)?;
        let m = w.total_conductance();
        ok &= (crate::resistance::weighted_average_resistance(&w)? - (n as f64 - 1.0) / m).abs() < 1e-9;
    }
    Ok(ok)
}

/// A connected multigraph on `n` vertices with `m ≥ n − 1` edges: a random
/// tree plus random extra edges.
pub fn random_connected_multigraph(n: usize, m: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    if n < 2 || m + 1 < n {
        return Err(Error::InvalidParameter(format!("no connected graph with n={n}, m={m}")));
    }
    let mut g = Multigraph::new(n);
    for v in 1..n {
        g.add_edge(rng.gen_range(0..v), v, 1)?;
    }
    for _ in n - 1..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        g.add_edge(u, v, 1)?;
    }
    Ok(g)
}

fn path_flow_power(g: &Multigraph, x: usize, y: usize) -> f64 {
    let adj = g.adjacency();
    let mut parent = vec![usize::MAX; g.n_vertices()];
    parent[x] = x;
    let mut queue = std::collections::VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in &adj[u] {
            if parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut power = 0.0;
    let mut cur = y;
    while cur != x {
        power += 1.0 / g.multiplicity(cur, parent[cur]) as f64;
        cur = parent[cur];
    }
    power
}

/// Flow and resistance identities on random small multigraphs.
pub fn appendix_a_checks(seed: u64) -> Result<Vec<ClaimCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let graphs: Vec<Multigraph> = (0..40)
        .map(|i| {
            let n = 3 + i % 5;
            let m = n - 1 + rng.gen_range(0..=n + 1);
            random_connected_multigraph(n, m, &mut rng)
        })
        .collect::<Result<_>>()?;
    let mut tri = 0.0f64;
    let mut sup = 0.0f64;
    let mut oracle = 0.0f64;
    let mut residual = 0.0f64;
    let mut power_ok = true;
    let mut mono_ok = true;
    for g in &graphs {
        let n = g.n_vertices();
        let mut r = vec![vec![0.0; n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let v = pair_resistance(g, x, y)?.finite().ok_or(Error::Disconnected)?;
                r[x][y] = v;
                r[y][x] = v;
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    tri = tri.max(r[x][z] - r[x][y] - r[y][z]);
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                let f = unit_current_flow(g, x, y)?;
                residual = residual.max(f.kcl_residual()).max(f.ohm_residual());
                oracle = oracle.max((flow_power(&f) - r[x][y]).abs());
                let st = spanning_tree_currents(g, x, y)?;
                let st_power: f64 = st.iter().map(|(&(u, v), i)| i * i / g.multiplicity(u, v) as f64).sum();
                oracle = oracle.max((st_power - r[x][y]).abs());
                power_ok &= path_flow_power(g, x, y) >= r[x][y] - 1e-12;
                let mut h = g.clone();
                h.add_edge(x, (y + 1) % n, 1).ok();
                for a in 0..n {
                    for b in a + 1..n {
                        let ra = pair_resistance(&h, a, b)?.finite().ok_or(Error::Disconnected)?;
                        mono_ok &= ra <= r[a][b] + 1e-12;
                    }
                }
            }
        }
        let f1 = unit_current_flow(g, 0, 1)?;
        let f2 = unit_current_flow(g, 1, 2)?;
        let s = superpose(&f1, &f2)?;
        let p = s.potentials();
        sup = sup.max((p[0] - p[2] - r[0][2]).abs());
        let total: f64 = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).map(|(x, y)| r[x][y]).sum();
        oracle = oracle.max((kirchhoff_index_by_eigenvalues(g)? - total).abs());
    }
    let series = (pair_resistance(&Multigraph::from_pairs(5, (0..4).map(|i| (i, i + 1)))?, 0, 4)?
        .finite()
        .unwrap_or(f64::INFINITY)
        - 4.0)
        .abs();
    let parallel = (pair_resistance(&Multigraph::from_edges(2, [(0, 1, 3)])?, 0, 1)?
        .finite()
        .unwrap_or(f64::INFINITY)
        - 1.0 / 3.0)
        .abs();
    Ok(vec![
        check("triangle_inequality", tri <= 1e-10, format!("max excess {tri:.3e}")),
        check("superposition", sup <= 1e-10, format!("max deviation {sup:.3e}")),
        check(
            "series_parallel",
            series < 1e-12 && parallel < 1e-12,
            format!("path {series:.1e}, triple edge {parallel:.1e}"),
        ),
        check("power_minimisation", power_ok, "path flows never beat the electrical flow"),
        check("monotonicity", mono_ok, "adding an edge never raises a resistance"),
        check("kirchhoff_ohm", residual <= 1e-10, format!("max residual {residual:.3e}")),
        check(
            "oracle_agreement",
            oracle <= 1e-9,
            format!("solver, flow power, spanning trees, eigenvalues: max deviation {oracle:.3e}"),
        ),
    ])
}

pub fn appendix_b_checks() -> Result<Vec<ClaimCheck>> {
    let d = check_discriminants(4, 10_000)?;
    let s = appendix_b_segment_checks();
    Ok(vec![
        check(
            "discriminant_negative",
            d.all_negative && d.forms_agree,
            format!("t = {}..{}: value at {} is {}", d.t_min, d.t_max, d.t_min, d.value_at_min),
        ),
        check(
            "segment_quadratic",
            s.quadratic_matches && s.quadratic_discriminant < 0.0,
            format!("{:?}, discriminant {:.6}", s.quadratic, s.quadratic_discriminant),
        ),
        check(
            "segment_line",
            s.line_matches && s.line_root > 3.5,
            format!("{:?}, root {:.6}", s.line, s.line_root),
        ),
    ])
}

/// Small-case optima plus the strict Queen-Bee gap on `(2.01, 12]`.
pub fn small_checks() -> Result<Vec<ClaimCheck>> {
    let mut out = verify_small_claims()?.checks;
    let grid: Vec<f64> = (1..=999).map(|i| 2.0 + 0.01 * (i + 1) as f64).collect();
    let gap = qb_gap_check(&grid)?;
    out.push(check(
        "queen_bee_gap",
        gap.all_strict,
        format!("min margin {:.6} at alpha {:.2}", gap.min_margin, gap.min_margin_alpha),
    ));
    Ok(out)
}

/// All connected multigraphs with at most `max_n` vertices, at most
/// `max_m` edges and multiplicity at most `cap`.
pub fn small_corpus(max_n: usize, max_m: usize, cap: u32) -> Result<Vec<Multigraph>> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in n - 1..=max_m {
            out.extend(enumerate_classes(Objective::A, n, m, cap, &mut |_| {})?);
        }
    }
    Ok(out)
}

/// `A ≥ 1/α` and the two-step budget over every graph of the corpus and
/// every choice of root.
pub fn certificate_checks(max_n: usize, max_m: usize, cap: u32) -> Result<Vec<ClaimCheck>> {
    let corpus = small_corpus(max_n, max_m, cap)?;
    let results: Vec<(usize, usize, usize, usize)> = corpus
        .par_iter()
        .map(|g| -> Result<(usize, usize, usize, usize)> {
            let s = resistance_summary(g)?;
            let one = usize::from(s.a < lower_bound_one_step(s.alpha.max(2.0))? - 1e-12);
            let (mut applicable, mut over, mut unsound) = (0, 0, 0);
            for root in 0..g.n_vertices() {
                let rg = RootedGraph::new(g.clone(), root)?;
                let c = two_step_certificate(&rg)?;
                let b = rooted_summary(&rg)?.b;
                if c.mean_b_lower > b + 1e-9 {
                    unsound += 1;
                }
                if c.applicable {
                    applicable += 1;
                    if !c.within_budget {
                        over += 1;
                    }
                }
            }
            Ok((one, applicable, over, unsound))
        })
        .collect::<Result<_>>()?;
    let one: usize = results.iter().map(|r| r.0).sum();
    let applicable: usize = results.iter().map(|r| r.1).sum();
    let over: usize = results.iter().map(|r| r.2).sum();
    let unsound: usize = results.iter().map(|r| r.3).sum();
    Ok(vec![
        check(
            "one_step_lower_bound",
            one == 0,
            format!("{one} violations of A >= 1/alpha over {} graphs", corpus.len()),
        ),
        check(
            "two_step_budget",
            over == 0,
            format!("{over} of {applicable} applicable rooted instances over budget"),
        ),
        check("two_step_soundness", unsound == 0, format!("{unsound} rooted instances with B below the certified lower bound")),
    ])
}

/// Sampled sink rootings against `A′/2 + A′/(2s) + 1/s`, allowing three
/// standard errors.
pub fn sink_rooting_checks(graphs: usize, trials: usize, seed: u64) -> Result<Vec<ClaimCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::NEG_INFINITY;
    let mut failures = 0;
    let mut count = 0;
    for _ in 0..graphs {
        let n = rng.gen_range(10..=60);
        let m = rng.gen_range(n..=3 * n);
        let g = random_connected_multigraph(n, m, &mut rng)?;
        for s in [1usize, 2, 5, 10] {
            let rep = root_via_sinks(&g, s, trials, rng.gen(), true)?;
            let slack = rep.mean_b - rep.bound - 3.0 * rep.std_error;
            worst = worst.max(rep.mean_b - rep.bound);
            failures += usize::from(slack > 0.0);
            count += 1;
        }
    }
    Ok(vec![check(
        "sink_rooting_mean",
        failures == 0,
        format!("{failures} of {count} (graph, s) cases above bound + 3 SE; max mean − bound {worst:.4}"),
    )])
}

/// Exceedance frequency of random ε-rootings of 3-regular trees.
pub fn tree_rooting_checks(samples: usize, seed: u64) -> Result<Vec<ClaimCheck>> {
    let mut out = Vec::new();
    for eps in [0.2, 0.4] {
        for depth in 4..=8 {
            let f = rooting_exceedance(3, depth, eps, samples, seed.wrapping_add(depth as u64))?;
            out.push(check(
                format!("tree_rooting_l{depth}_eps{eps}"),
                f.frequency <= f.bound,
                format!("frequency {:.4} vs bound {:.4}", f.frequency, f.bound),
            ));
        }
    }
    Ok(out)
}

/// Local rooting of a random cubic graph.
///
/// Depth 5 needs girth at least 12, which also meets the girth-8 request.
pub fn cubic_rooting_checks(n: usize, seed: u64) -> Result<Vec<ClaimCheck>> {
    let g = build_random_regular_girth(n, 3, 12, seed, crate::constructions::DEFAULT_MAX_ATTEMPTS)?;
    let r = theorem64_best_p(&g, 5, 0.05, &COROLLARY65_P_GRID, seed)?;
    let target = 2.0 / 3.0;
    Ok(vec![
        check(
            "cubic_rooting_range",
            (0.5..=0.70).contains(&r.b),
            format!("B = {:.4} at rooted alpha {:.4} (p = {}, {} sinks, {} repaired)", r.b, r.alpha_rooted, r.p, r.sinks, r.repaired),
        ),
        check(
            "cubic_rooting_certificate",
            r.max_ratio <= 1.05 + 1e-9,
            format!("max ratio {:.4}", r.max_ratio),
        ),
        check(
            "cubic_ball_target",
            (r.ball_mean - target).abs() <= 0.05 * target,
            format!("mean ball resistance {:.4} vs 2/3 at depth 5", r.ball_mean),
        ),
    ])
}

/// The split construction: rooted at depth 4 with ε = 0.02, then mixed
/// with leaves to α = 3. `n` is the vertex count of the split graph.
pub fn split_checks(n: usize, seed: u64) -> Result<Vec<ClaimCheck>> {
    let n_base = (2 * n).div_ceil(3).next_multiple_of(2);
    let run = split_pipeline(n_base, 10, 4, 0.02, &THEOREM1_P_GRID, 3.0, seed)?;
    let witness = nonconvexity_from_point(run.mixed_n_nonroot, run.mixed_alpha, run.mixed_b);
    let mut out = vec![
        check(
            "split_mixed_B",
            run.mixed_b <= 0.66,
            format!(
                "n = {}, stage alpha {:.4}, stage B {:.4}, mixed alpha {:.4}, mixed B {:.4}",
                run.n, run.stage.alpha_rooted, run.stage.b, run.mixed_alpha, run.mixed_b
            ),
        ),
        check(
            "split_A_within_2B",
            run.a_within_twice_b(),
            format!(
                "A = {:.4}, 2B = {:.4}, non-convexity gap {}",
                run.mixed_a,
                2.0 * run.mixed_b,
                witness.map_or("none".to_string(), |w| format!("{:.3e}", w.gap))
            ),
        ),
    ];
    if run.n >= 10_000 {
        out.push(check(
            "split_stage_B",
            run.stage.b <= 0.54,
            format!("stage B {:.4} at alpha {:.4}", run.stage.b, run.stage.alpha_rooted),
        ));
    }
    Ok(out)
}
