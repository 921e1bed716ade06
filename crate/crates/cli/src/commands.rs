use std::fs;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use resnet_core::bounds::bound_sweep as sweep_rows;
use resnet_core::constructions::{root_via_sinks, theorem64_best_p, theorem64_rooting, ConstructionSpec, LocalRooting};
use resnet_core::edgelist::{parse_edge_list, write_edge_list, write_rooted, EdgeList};
use resnet_core::resistance::{pair_resistance, resistance_summary, rooted_summary, Resistance};
use resnet_core::search::{enumerate_optimal_with_progress, local_improve, ClaimCheck, Objective};
use resnet_core::verify::{run_group, VerifyOptions, GROUPS};
use resnet_core::{ResistanceSummary, RootedGraph, RootedSummary};

use crate::output::{render, round15, Format};
use crate::{BoxResult, Common, EXIT_INFINITE, EXIT_VERIFY};

/// Probabilities tried by `p=auto`.
const AUTO_P_GRID: [f64; 6] = [0.01, 0.02, 0.05, 0.1, 0.2, 0.3];

fn read_graph(path: &Path) -> BoxResult<EdgeList> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_edge_list(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn write_file(path: &Path, text: &str) -> BoxResult<()> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()).into())
}

fn emit(value: impl Serialize, common: &Common, default: Format) -> BoxResult<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    render(value, common.format.unwrap_or(default), &mut lock)?;
    lock.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct PairReport {
    x: usize,
    y: usize,
    #[serde(rename = "R")]
    r: f64,
}

#[derive(Serialize)]
struct Analysis {
    summary: ResistanceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    rooted: Option<RootedSummary>,
}

pub fn analyze(common: &Common, input: &Path, pair: Option<&[usize]>) -> BoxResult<u8> {
    let list = read_graph(input)?;
    if let Some(&[x, y]) = pair {
        return match pair_resistance(&list.graph, x, y)? {
            Resistance::Finite(r) => {
                emit(PairReport { x, y, r }, common, Format::Json)?;
                Ok(0)
            }
            Resistance::Infinite => {
                eprintln!("error: infinite resistance between {x} and {y}");
                Ok(EXIT_INFINITE)
            }
        };
    }
    let summary = resistance_summary(&list.graph)?;
    let rooted = match list.rooted() {
        Some(rg) => Some(rooted_summary(&rg?)?),
        None => None,
    };
    emit(Analysis { summary, rooted }, common, Format::Json)?;
    Ok(0)
}

/// Rooted summary without the per-vertex table.
#[derive(Serialize)]
struct RootedBrief {
    n_nonroot: usize,
    m: usize,
    alpha: f64,
    #[serde(rename = "B")]
    b: f64,
    #[serde(rename = "R_tot")]
    r_tot: f64,
}

impl RootedBrief {
    fn of(g: &RootedGraph) -> BoxResult<Self> {
        let s = rooted_summary(g)?;
        Ok(RootedBrief {
            n_nonroot: s.n_nonroot,
            m: g.edge_count(),
            alpha: g.alpha(),
            b: s.b,
            r_tot: s.r_tot,
        })
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Summary {
    Unrooted(ResistanceSummary),
    Rooted(RootedBrief),
}

#[derive(Serialize)]
struct ConstructReport {
    spec: String,
    n: usize,
    m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    root: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    analysis: Option<Summary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theorem64: Option<LocalRooting>,
}

#[derive(Debug, PartialEq)]
enum PChoice {
    Default,
    Auto,
    Fixed(f64),
}

/// Parses `ℓ=4 eps=0.05 [p=0.1|auto|default]`.
fn parse_theorem64(text: &str) -> BoxResult<(usize, f64, PChoice)> {
    let (mut depth, mut eps, mut p) = (None, None, PChoice::Default);
    for token in text.split_whitespace() {
        let (k, v) = token.split_once('=').ok_or_else(|| format!("expected key=value, got `{token}`"))?;
        match k {
            "ℓ" | "l" | "ell" | "depth" => depth = Some(v.parse().map_err(|_| format!("bad depth `{v}`"))?),
            "eps" | "ε" | "epsilon" => eps = Some(v.parse().map_err(|_| format!("bad epsilon `{v}`"))?),
            "p" => {
                p = match v {
                    "auto" => PChoice::Auto,
                    "default" => PChoice::Default,
                    _ => PChoice::Fixed(v.parse().map_err(|_| format!("bad probability `{v}`"))?),
                }
            }
            _ => return Err(format!("unknown rooting parameter `{k}`").into()),
        }
    }
    Ok((
        depth.ok_or("rooting needs ℓ=<depth>")?,
        eps.ok_or("rooting needs eps=<epsilon>")?,
        p,
    ))
}

pub fn construct(
    common: &Common,
    spec_text: &str,
    output: Option<&Path>,
    analyze: bool,
    theorem64: Option<&str>,
) -> BoxResult<u8> {
    let spec = ConstructionSpec::parse(spec_text)?;
    let started = Instant::now();
    let built = spec.build(common.seed)?;
    eprintln!(
        "built {} with {} vertices and {} edges in {:.2?}",
        spec.family,
        built.graph.n_vertices(),
        built.graph.edge_count(),
        started.elapsed()
    );
    let mut report = ConstructReport {
        spec: spec_text.trim().to_string(),
        n: built.graph.n_vertices(),
        m: built.graph.edge_count(),
        root: built.root,
        analysis: None,
        theorem64: None,
    };
    let mut rooted: Option<RootedGraph> = match built.root {
        Some(r) => Some(RootedGraph::new(built.graph.clone(), r)?),
        None => None,
    };
    if let Some(text) = theorem64 {
        let (depth, eps, p) = parse_theorem64(text)?;
        let r = match p {
            PChoice::Default => theorem64_rooting(&built.graph, depth, eps, None, common.seed)?,
            PChoice::Fixed(p) => theorem64_rooting(&built.graph, depth, eps, Some(p), common.seed)?,
            PChoice::Auto => theorem64_best_p(&built.graph, depth, eps, &AUTO_P_GRID, common.seed)?,
        };
        eprintln!(
            "rooted with p = {} ({} sinks, {} repaired): B = {:.6}, max ratio {:.6}",
            r.p, r.sinks, r.repaired, r.b, r.max_ratio
        );
        rooted = r.rooted.clone();
        report.theorem64 = Some(r);
    }
    if analyze {
        report.analysis = Some(match &rooted {
            Some(g) => Summary::Rooted(RootedBrief::of(g)?),
            None => Summary::Unrooted(resistance_summary(&built.graph)?),
        });
    }
    let edges = match &rooted {
        Some(g) => write_rooted(g),
        None => write_edge_list(&built.graph, None),
    };
    match output {
        Some(path) => write_file(path, &edges)?,
        None if !analyze && theorem64.is_none() => {
            print!("{edges}");
            return Ok(0);
        }
        None => {}
    }
    emit(report, common, Format::Json)?;
    Ok(0)
}

#[derive(Serialize)]
struct RootReport {
    sinks: resnet_core::constructions::SinkRooting,
    #[serde(skip_serializing_if = "Option::is_none")]
    improvement: Option<resnet_core::search::LocalImprovement>,
}

pub fn root(
    common: &Common,
    input: &Path,
    output: Option<&Path>,
    sinks: usize,
    trials: usize,
    with_replacement: bool,
    improve: Option<usize>,
) -> BoxResult<u8> {
    let list = read_graph(input)?;
    let rep = root_via_sinks(&list.graph, sinks, trials, common.seed, with_replacement)?;
    let mut best = rep.best.clone().expect("sink rooting keeps its best graph");
    let improvement = match improve {
        Some(steps) => {
            let imp = local_improve(&best, steps)?;
            eprintln!("improved B from {:.6} to {:.6} in {} steps", imp.b_initial, imp.b, imp.steps);
            best = imp.rooted.clone().expect("local search keeps its graph");
            Some(imp)
        }
        None => None,
    };
    if let Some(path) = output {
        write_file(path, &write_rooted(&best))?;
    }
    emit(RootReport { sinks: rep, improvement }, common, Format::Json)?;
    Ok(0)
}

#[derive(Serialize)]
struct SweepLine {
    alpha: f64,
    lower_two_step: f64,
    qb_lower: f64,
    upper_envelope: f64,
    conjecture_f: f64,
    qb_margin: f64,
    /// `lower_two_step ≤ conjecture_f ≤ upper_envelope`.
    ordered: bool,
    /// Positive Queen-Bee margin (vacuous at `α = 2`).
    qb_strict: bool,
}

pub fn bound_sweep(common: &Common, lo: f64, hi: f64, step: f64, output: Option<&Path>) -> BoxResult<u8> {
    const TOL: f64 = 1e-12;
    let rows: Vec<SweepLine> = sweep_rows(lo, hi, step)?
        .into_iter()
        .map(|r| SweepLine {
            ordered: r.lower_two_step <= r.conjecture_f + TOL && r.conjecture_f <= r.upper_envelope + TOL,
            qb_strict: r.qb_margin > 0.0 || r.alpha <= 2.0 + TOL,
            alpha: round15(r.alpha),
            lower_two_step: round15(r.lower_two_step),
            qb_lower: round15(r.qb_lower),
            upper_envelope: round15(r.upper_envelope),
            conjecture_f: round15(r.conjecture_f),
            qb_margin: round15(r.qb_margin),
        })
        .collect();
    let failing = rows.iter().filter(|r| !(r.ordered && r.qb_strict)).count();
    eprintln!("{} rows, {} with a failing consistency flag", rows.len(), failing);
    let format = common.format.unwrap_or(Format::Csv);
    let mut buf = Vec::new();
    if format == Format::Csv {
        // Keep the column order of the row type.
        let mut w = csv::Writer::from_writer(&mut buf);
        for r in &rows {
            w.serialize(r)?;
        }
        w.flush()?;
    } else {
        render(&rows, format, &mut buf)?;
    }
    match output {
        Some(path) => write_file(path, std::str::from_utf8(&buf)?)?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(0)
}

pub fn search(common: &Common, objective: &str, n: usize, m: usize, mult_cap: Option<u32>, progress: bool) -> BoxResult<u8> {
    let objective: Objective = objective.parse()?;
    let cap = mult_cap.unwrap_or(u32::try_from(m).unwrap_or(u32::MAX));
    let started = Instant::now();
    let result = enumerate_optimal_with_progress(objective, n, m, cap, &mut |p| {
        if progress {
            eprintln!(
                "[{:>8.2?}] {} vertices, {} edges: {} classes",
                started.elapsed(),
                p.vertices,
                p.edges,
                p.classes
            );
        }
    })?;
    eprintln!(
        "{} classes explored, optimum {:.12} ({} witnesses)",
        result.explored,
        result.best_value,
        result.witnesses.len()
    );
    emit(result, common, Format::Json)?;
    Ok(0)
}

#[derive(Serialize)]
struct VerifyRow {
    group: String,
    name: String,
    passed: bool,
    detail: String,
}

pub fn verify(common: &Common, filter: Option<&str>, n: Option<usize>) -> BoxResult<u8> {
    let groups: Vec<&str> = match filter {
        Some(f) => f.split(',').map(str::trim).filter(|s| !s.is_empty()).collect(),
        None => GROUPS.to_vec(),
    };
    if let Some(bad) = groups.iter().find(|g| !GROUPS.contains(g)) {
        return Err(format!("unknown filter `{bad}`; expected one of {}", GROUPS.join(", ")).into());
    }
    let opts = VerifyOptions { n, seed: common.seed };
    let mut rows = Vec::new();
    for group in groups {
        let started = Instant::now();
        let checks: Vec<ClaimCheck> = run_group(group, opts)?;
        let passed = checks.iter().filter(|c| c.passed).count();
        eprintln!("{group}: {passed}/{} passed in {:.2?}", checks.len(), started.elapsed());
        rows.extend(checks.into_iter().map(|c| VerifyRow {
            group: group.to_string(),
            name: c.name,
            passed: c.passed,
            detail: c.detail,
        }));
    }
    let failures: Vec<&VerifyRow> = rows.iter().filter(|r| !r.passed).collect();
    for f in &failures {
        eprintln!("FAILED {}/{}: {}", f.group, f.name, f.detail);
    }
    let code = if failures.is_empty() { 0 } else { EXIT_VERIFY };
    emit(&rows, common, Format::Json)?;
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooting_parameters() {
        assert_eq!(parse_theorem64("ℓ=4 eps=0.05").unwrap(), (4, 0.05, PChoice::Default));
        assert_eq!(parse_theorem64("l=3 eps=0.1 p=auto").unwrap(), (3, 0.1, PChoice::Auto));
        assert_eq!(parse_theorem64("depth=2 ε=0.2 p=0.3").unwrap(), (2, 0.2, PChoice::Fixed(0.3)));
        assert!(parse_theorem64("eps=0.1").is_err());
        assert!(parse_theorem64("ℓ=4 eps=0.1 q=1").is_err());
    }
}
