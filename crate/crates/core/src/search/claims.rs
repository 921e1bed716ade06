//! Checks of the small-case claims against exhaustive search.

use serde::{Deserialize, Serialize};

use super::{enumerate_optimal, Objective, TIE_TOLERANCE};
use crate::constructions::{build_cycle_with_leaves, build_star_triangles_leaves};
use crate::error::Result;
use crate::multigraph::RootedGraph;
use crate::resistance::{resistance_summary, rooted_summary};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallClaimsReport {
    pub checks: Vec<ClaimCheck>,
    pub all_passed: bool,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> ClaimCheck {
    ClaimCheck {
        name: name.into(),
        passed,
        detail: detail.into(),
    }
}

/// `A` of the cycle of length 3 and of length 4 with the remaining
/// vertices as leaves on one cycle vertex.
fn cycle_pair(n: usize) -> Result<(f64, f64)> {
    Ok((
        resistance_summary(&build_cycle_with_leaves(n, 3)?)?.a,
        resistance_summary(&build_cycle_with_leaves(n, 4)?)?.a,
    ))
}

/// Cycle-with-leaves crossover: the 4-cycle wins below `tie_at`, the
/// 3-cycle above, and they tie at `tie_at`. The detail names every `n`
/// where the two tie.
pub fn check_cycle_crossover(range: std::ops::RangeInclusive<usize>, tie_at: usize) -> Result<ClaimCheck> {
    let mut bad = Vec::new();
    let mut ties = Vec::new();
    for n in range.clone() {
        let (three, four) = cycle_pair(n)?;
        if (four - three).abs() < TIE_TOLERANCE {
            ties.push(n);
        }
        let ok = match n.cmp(&tie_at) {
            std::cmp::Ordering::Less => four < three - TIE_TOLERANCE,
            std::cmp::Ordering::Equal => (four - three).abs() < TIE_TOLERANCE,
            std::cmp::Ordering::Greater => three < four - TIE_TOLERANCE,
        };
        if !ok {
            bad.push(format!("n={n}: A3={three:.12} A4={four:.12}"));
        }
    }
    let detail = format!("expected tie at n={tie_at}, ties found at {ties:?}");
    Ok(check(
        "cycle_crossover",
        bad.is_empty(),
        if bad.is_empty() { detail } else { format!("{detail}; {}", bad.join("; ")) },
    ))
}

/// Smallest `A` over cycles of every length with the other vertices as
/// leaves on one cycle vertex.
pub fn best_cycle_with_leaves(n: usize) -> Result<(usize, f64)> {
    let mut best = (0, f64::INFINITY);
    for len in 3..=n {
        let a = resistance_summary(&build_cycle_with_leaves(n, len)?)?.a;
        if a < best.1 - TIE_TOLERANCE {
            best = (len, a);
        }
    }
    Ok(best)
}

/// Exhaustive search at `m = n` agrees with the best cycle-with-leaves.
pub fn check_unicyclic_optimum(max_n: usize) -> Result<ClaimCheck> {
    let mut bad = Vec::new();
    let mut lengths = Vec::new();
    for n in 4..=max_n {
        let best = enumerate_optimal(Objective::A, n, n, n as u32)?.best_value;
        let (len, a) = best_cycle_with_leaves(n)?;
        lengths.push(len);
        if (best - a).abs() > TIE_TOLERANCE {
            bad.push(format!("n={n}: search {best:.12} vs cycle-with-leaves {a:.12}"));
        }
    }
    Ok(check(
        "unicyclic_optimum",
        bad.is_empty(),
        if bad.is_empty() {
            format!("4 ≤ n ≤ {max_n}; optimal cycle lengths {lengths:?}")
        } else {
            bad.join("; ")
        },
    ))
}

/// Among trees the star, `A = 2 − 2/n`, is the unique optimum.
pub fn check_star_optimal(max_n: usize) -> Result<ClaimCheck> {
    let mut bad = Vec::new();
    for n in 2..=max_n {
        let r = enumerate_optimal(Objective::A, n, n - 1, (n - 1) as u32)?;
        let target = 2.0 - 2.0 / n as f64;
        let unique_star = r.witnesses.len() == 1 && r.witnesses[0].graph().degrees().iter().any(|&d| d == n - 1);
        if (r.best_value - target).abs() > TIE_TOLERANCE || !unique_star {
            bad.push(format!("n={n}: best {} with {} witnesses", r.best_value, r.witnesses.len()));
        }
    }
    Ok(check("star_optimal", bad.is_empty(), if bad.is_empty() { format!("2 ≤ n ≤ {max_n}") } else { bad.join("; ") }))
}

/// With one edge beyond a tree, a triangle through the root plus leaves is
/// optimal: `B = 1 − 2/(3n)`.
pub fn check_rooted_triangle(max_n: usize) -> Result<ClaimCheck> {
    let mut bad = Vec::new();
    for n in 2..=max_n {
        let r = enumerate_optimal(Objective::B, n, n + 1, (n + 1) as u32)?;
        let target = 1.0 - 2.0 / (3.0 * n as f64);
        let witness = build_star_triangles_leaves(n, n + 1)?;
        let w = rooted_summary(&witness)?.b;
        if (r.best_value - target).abs() > TIE_TOLERANCE || (w - target).abs() > TIE_TOLERANCE {
            bad.push(format!("n={n}: best {} target {target}", r.best_value));
        }
    }
    Ok(check("rooted_triangle", bad.is_empty(), if bad.is_empty() { format!("2 ≤ n ≤ {max_n}") } else { bad.join("; ") }))
}

/// Queen-Bee optimum equals `(5 − α)/3` for `α ≤ 3` and is never below it.
pub fn check_queen_bee(max_n: usize, max_m: usize) -> Result<ClaimCheck> {
    let mut bad = Vec::new();
    let mut cases = 0;
    for n in 1..=max_n {
        for m in n..=max_m.min(12) {
            let r = enumerate_optimal(Objective::BQueenBee, n, m, m as u32)?;
            let alpha = 2.0 * m as f64 / n as f64;
            let target = (5.0 - alpha) / 3.0;
            cases += 1;
            let attainable = 2 * (m - n) <= n;
            let ok = if attainable {
                (r.best_value - target).abs() < TIE_TOLERANCE
            } else {
                r.best_value > target - TIE_TOLERANCE
            };
            if !ok {
                bad.push(format!("n={n} m={m}: best {} vs {target}", r.best_value));
            }
        }
    }
    Ok(check(
        "queen_bee_star_of_triangles",
        bad.is_empty(),
        if bad.is_empty() { format!("{cases} cases, n ≤ {max_n}, m ≤ {max_m}") } else { bad.join("; ") },
    ))
}

/// Three sizes at fixed `n` where the middle optimum lies strictly above
/// the chord of the outer two: `b_n` is not convex in `α`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonConvexityWitness {
    pub n: usize,
    /// `(α, b_n(α))` for the three sizes; the last value may be an upper
    /// bound, which only widens the gap.
    pub points: [(f64, f64); 3],
    pub gap: f64,
}

fn chord_gap(points: [(f64, f64); 3]) -> f64 {
    let [a, b, c] = points;
    b.1 - (a.1 + (c.1 - a.1) * (b.0 - a.0) / (c.0 - a.0))
}

/// Exhaustive scan of `n ≤ max_n`, `n ≤ m ≤ max_m` for a non-convex
/// triple of optimal values.
pub fn nonconvexity_witness(max_n: usize, max_m: usize) -> Result<Option<NonConvexityWitness>> {
    for n in 1..=max_n {
        let mut pts = Vec::new();
        for m in n..=max_m {
            let r = enumerate_optimal(Objective::B, n, m, m as u32)?;
            pts.push((2.0 * m as f64 / n as f64, r.best_value));
        }
        let mut best: Option<NonConvexityWitness> = None;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let points = [pts[i], pts[j], pts[k]];
                    let gap = chord_gap(points);
                    if gap > TIE_TOLERANCE && best.as_ref().map_or(true, |w| gap > w.gap) {
                        best = Some(NonConvexityWitness { n, points, gap });
                    }
                }
            }
        }
        if best.is_some() {
            return Ok(best);
        }
    }
    Ok(None)
}

/// Non-convexity from one rooted graph with `n` non-root vertices, average
/// degree `α` and value `b`.
///
/// Trees give `b_n(2) = 1`, and with one edge more the best is a triangle
/// through the root, `b_n(2 + 2/n) = 1 − 2/(3n)` (a single cycle of length
/// `k` through the root saves `(k − 1)(5 − k)/6`, largest at `k = 3`). Any
/// graph below the line `(5 − α)/3` therefore puts the middle point above
/// a chord.
pub fn nonconvexity_from_point(n: usize, alpha: f64, b: f64) -> Option<NonConvexityWitness> {
    let nf = n as f64;
    let middle = 2.0 + 2.0 / nf;
    if n < 2 || alpha <= middle {
        return None;
    }
    let points = [(2.0, 1.0), (middle, 1.0 - 2.0 / (3.0 * nf)), (alpha, b)];
    let gap = chord_gap(points);
    (gap > TIE_TOLERANCE).then_some(NonConvexityWitness { n, points, gap })
}

pub fn nonconvexity_from(g: &RootedGraph) -> Result<Option<NonConvexityWitness>> {
    Ok(nonconvexity_from_point(g.n_nonroot(), g.alpha(), rooted_summary(g)?.b))
}

/// Runs every small-case check at its default size.
pub fn verify_small_claims() -> Result<SmallClaimsReport> {
    let mut checks = vec![
        check_cycle_crossover(9..=20, 13)?,
        check_unicyclic_optimum(8)?,
        check_star_optimal(8)?,
        check_rooted_triangle(6)?,
        check_queen_bee(6, 9)?,
    ];
    let qb = enumerate_optimal(Objective::BQueenBee, 4, 6, 6)?;
    checks.push(check(
        "queen_bee_4_6",
        (qb.best_value - 2.0 / 3.0).abs() < TIE_TOLERANCE,
        format!("B = {}", qb.best_value),
    ));
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(SmallClaimsReport { checks, all_passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    use num_rational::Ratio;

    /// Exact total pairwise resistance of a `k`-cycle with `n − k` leaves
    /// on one cycle vertex.
    fn exact_total(n: i64, k: i64) -> Ratio<i64> {
        let l = n - k;
        Ratio::new(k * k * k - k, 12) + Ratio::from(l * k) + Ratio::new(l * (k * k - 1), 6) + Ratio::from(l * (l - 1))
    }

    #[test]
    fn three_and_four_cycles_tie_at_twelve() {
        for n in 9..=20i64 {
            let diff = exact_total(n, 3) - exact_total(n, 4);
            assert_eq!(diff, Ratio::new(12 - n, 6));
            let (three, four) = cycle_pair(n as usize).unwrap();
            let pairs = (n * (n - 1) / 2) as f64;
            assert!((three - four - (12 - n) as f64 / 6.0 / pairs).abs() < 1e-12);
        }
        let c = check_cycle_crossover(9..=20, 12).unwrap();
        assert!(c.passed, "{}", c.detail);
        let c = check_cycle_crossover(9..=20, 13).unwrap();
        assert!(!c.passed);
        assert!(c.detail.contains("ties found at [12]"));
    }

    #[test]
    fn full_cycle_wins_for_small_n() {
        for n in 4..=8 {
            assert_eq!(best_cycle_with_leaves(n).unwrap().0, n);
        }
        assert_eq!(best_cycle_with_leaves(9).unwrap().0, 4);
        assert_eq!(best_cycle_with_leaves(14).unwrap().0, 3);
    }

    #[test]
    fn nonconvexity_needs_a_point_below_the_triangle_line() {
        assert_eq!(nonconvexity_witness(4, 8).unwrap(), None);
        let tri = build_star_triangles_leaves(10, 15).unwrap();
        assert_eq!(nonconvexity_from(&tri).unwrap(), None);
        let w = nonconvexity_from_point(10_000, 3.0, 0.6454).unwrap();
        assert!((w.gap - (2.0 / 3.0 - 0.6454) * 2.0 / 10_000.0).abs() < 1e-9);
    }

    #[test]
    fn small_optima() {
        for c in [
            check_star_optimal(6).unwrap(),
            check_rooted_triangle(4).unwrap(),
            check_queen_bee(4, 6).unwrap(),
            check_unicyclic_optimum(6).unwrap(),
        ] {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
