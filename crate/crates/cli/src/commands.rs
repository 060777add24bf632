//! Subcommand bodies. Each prints its report to standard output in the
//! selected format and returns a [`Failure`] for the exit code otherwise.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use geodex::arithmetic::moore_bound;
use geodex::automorphism::{
    check_path_order_divisibility, classify_fix_subdigraph, classify_outlier_structure,
    permutation_vector, FixTag, OutlierTag, PermutationVector, VertexPermutation,
};
use geodex::digraph::{
    excess_profile, is_k_geodetic, load_digraph, outlier_map, verify_path_identity, vertex_type,
    Digraph, VertexType,
};
use geodex::feasibility::{
    charpoly_j_minus_p, check_at_divisibility, degree3_nonexistence, k2_charpoly,
    k2_enumerate_cases, scan_type1_divisibility_with, scan_vt_feasible_with,
    two_outlier_regular_feasible, type2_report, FeasibilityReport,
};
use geodex::par::Workers;
use geodex::search::{search_excess_one, search_geodetic, SearchConfig, SearchError};
use serde_json::json;

use crate::{
    CheckArgs, Degree3Args, Failure, Format, K2Args, OutlierArgs, PairArgs, ScanArgs, ScanVtArgs,
    SearchArgs, SpectrumArgs,
};

pub struct Context {
    pub format: Format,
    pub workers: Workers,
}

type Outcome = Result<(), Failure>;

fn out() -> BufWriter<io::StdoutLock<'static>> {
    BufWriter::new(io::stdout().lock())
}

fn emit(w: &mut impl Write, line: impl AsRef<str>) -> Outcome {
    writeln!(w, "{}", line.as_ref())
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn finish(mut w: impl Write) -> Outcome {
    w.flush()
        .map_err(|e| Failure::Input(format!("cannot write output: {e}")))
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn read_digraph(path: &Path) -> Result<Digraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    load_digraph(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit_report(w: &mut impl Write, ctx: &Context, r: &FeasibilityReport) -> Outcome {
    match ctx.format {
        Format::Plain => emit(w, r.to_plain().trim_end()),
        Format::Machine => emit(w, r.to_machine()),
    }
}

pub fn check(ctx: &Context, a: CheckArgs) -> Outcome {
    let g = read_digraph(&a.file)?;
    let p = excess_profile(&g, a.d, a.k);
    let witness = is_k_geodetic(&g, a.k).witness;
    let mut w = out();
    match ctx.format {
        Format::Plain => {
            emit(
                &mut w,
                format!(
                    "d={} k={} order={} moore={} excess={} diregular={} geodetic={} excess-one={}",
                    p.d, p.k, p.order, p.moore, p.excess, p.diregular, p.geodetic, p.is_excess_one
                ),
            )?;
            if let Some(x) = &witness {
                emit(
                    &mut w,
                    format!(
                        "  witness from={} to={} first={} second={}",
                        x.from,
                        x.to,
                        join(&x.first),
                        join(&x.second)
                    ),
                )?;
            }
        }
        Format::Machine => {
            let v = json!({
                "d": p.d,
                "k": p.k,
                "order": p.order,
                "moore": p.moore.to_string(),
                "excess": p.excess.to_string(),
                "diregular": p.diregular,
                "geodetic": p.geodetic,
                "excess_one": p.is_excess_one,
                "witness": witness,
            });
            emit(&mut w, v.to_string())?;
        }
    }
    finish(w)
}

fn outlier_tag(tag: OutlierTag) -> String {
    match tag {
        OutlierTag::OutlierRegular(w) => format!("outlier-regular-{w}"),
        OutlierTag::TypeA => "type-a".into(),
        OutlierTag::TypeB => "type-b".into(),
        OutlierTag::Other => "other".into(),
    }
}

fn fix_tag(tag: FixTag) -> String {
    match tag {
        FixTag::Null => "null".into(),
        FixTag::TwoIsolated => "two-isolated".into(),
        FixTag::CycleKplus2 => "cycle".into(),
        FixTag::SubExcessOne(d) => format!("excess-one-degree-{d}"),
        FixTag::WholeGraph => "whole".into(),
        FixTag::Inconsistent => "inconsistent".into(),
    }
}

pub fn outlier(ctx: &Context, a: OutlierArgs) -> Outcome {
    let g = read_digraph(&a.file)?;
    let o =
        outlier_map(&g, a.k).map_err(|e| Failure::Input(format!("{}: {e}", a.file.display())))?;
    let perm = o.as_permutation();
    let cycles: String = perm
        .cycles()
        .iter()
        .map(|c| {
            format!(
                "({})",
                c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
            )
        })
        .collect();
    let pv = permutation_vector(&perm);
    let structure = classify_outlier_structure(&perm, a.k)
        .map_err(|e| Failure::Input(format!("{}: {e}", a.file.display())))?;
    let type_ii: Vec<usize> = (0..g.order())
        .filter(|&u| vertex_type(&g, &o, u) == VertexType::TypeII)
        .collect();
    let fixes = power_fix_classes(&g, a.k, &perm, &pv)?;
    let divisibility = check_path_order_divisibility(&g, a.k, &perm);
    let identity = verify_path_identity(&g, a.k, &o);
    let mut w = out();
    match ctx.format {
        Format::Plain => {
            emit(&mut w, format!("outlier {}", join(o.images())))?;
            emit(&mut w, format!("  cycles {cycles}"))?;
            emit(&mut w, format!("  pv {pv}"))?;
            emit(
                &mut w,
                format!(
                    "  structure {} index={}",
                    outlier_tag(structure.tag),
                    structure.index
                ),
            )?;
            emit(&mut w, format!("  type-ii {}", join(&type_ii)))?;
            for (r, tag, size) in &fixes {
                emit(&mut w, format!("  fix power={r} size={size} class={tag}"))?;
            }
            emit(&mut w, format!("  path-order-divisibility {divisibility}"))?;
            emit(&mut w, format!("  path-identity {identity}"))?;
        }
        Format::Machine => {
            let fix: Vec<_> = fixes
                .iter()
                .map(|(r, tag, size)| json!({"power": r, "size": size, "class": tag}))
                .collect();
            let v = json!({
                "outlier": o.images(),
                "cycles": cycles,
                "pv": pv.to_string(),
                "structure": outlier_tag(structure.tag),
                "index": structure.index,
                "type_ii": type_ii,
                "fix": fix,
                "path_order_divisibility": divisibility,
                "path_identity": identity,
            });
            emit(&mut w, v.to_string())?;
        }
    }
    finish(w)
}

/// Fix-subdigraph classes of `o^j` for each cycle length `j` that leaves
/// `o^j` non-trivial.
fn power_fix_classes(
    g: &Digraph,
    k: usize,
    perm: &VertexPermutation,
    pv: &PermutationVector,
) -> Result<Vec<(u64, String, usize)>, Failure> {
    let mut classes = Vec::new();
    for (j, _) in pv.iter() {
        let power = perm.pow(j);
        if power.is_identity() {
            continue;
        }
        let c = classify_fix_subdigraph(g, k, &power).map_err(|e| Failure::Input(e.to_string()))?;
        classes.push((j, fix_tag(c.tag), c.fix_size));
    }
    Ok(classes)
}

pub fn scan_div(ctx: &Context, a: ScanArgs) -> Outcome {
    let mut w = out();
    for d in a.d.values() {
        let mut ks = Vec::new();
        for run in a.k.runs() {
            scan_type1_divisibility_with(d..=d, run, ctx.workers, |_, k| ks.push(k));
        }
        let line = match ctx.format {
            Format::Plain if ks.is_empty() => format!("d = {d}: none"),
            Format::Plain => format!("d = {d}: k = {}", join(&ks)),
            Format::Machine => json!({"d": d, "ks": ks}).to_string(),
        };
        emit(&mut w, line)?;
    }
    finish(w)
}

pub fn scan_vt(ctx: &Context, a: ScanVtArgs) -> Outcome {
    let mut by_k: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    match a.arc_transitive_excess {
        None => {
            for d_run in a.scan.d.runs() {
                for k_run in a.scan.k.runs() {
                    scan_vt_feasible_with(d_run.clone(), k_run, ctx.workers, |d, k| {
                        by_k.entry(k).or_default().push(d)
                    });
                }
            }
        }
        Some(epsilon) => {
            for d in a.scan.d.values() {
                for k in a.scan.k.values() {
                    let r = check_at_divisibility(d, k, epsilon)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    if r.is_feasible() {
                        by_k.entry(k).or_default().push(d);
                    }
                }
            }
        }
    }
    let mut w = out();
    for (k, ds) in &mut by_k {
        ds.sort_unstable();
        ds.dedup();
        let line = match ctx.format {
            Format::Plain => format!("k = {k}: d = {}", join(ds)),
            Format::Machine => json!({"k": k, "ds": ds}).to_string(),
        };
        emit(&mut w, line)?;
    }
    finish(w)
}

pub fn type2(ctx: &Context, a: PairArgs) -> Outcome {
    let mut w = out();
    for d in a.d.values() {
        for k in a.k.values() {
            emit_report(&mut w, ctx, &type2_report(d, k))?;
        }
    }
    finish(w)
}

pub fn degree3(ctx: &Context, a: Degree3Args) -> Outcome {
    let mut w = out();
    if a.summary {
        let ks: Vec<u64> =
            a.k.values()
                .into_iter()
                .filter(|&k| !degree3_nonexistence(k).is_feasible())
                .collect();
        let line = match ctx.format {
            Format::Plain => format!("k = {}", join(&ks)),
            Format::Machine => json!({ "infeasible_k": ks }).to_string(),
        };
        emit(&mut w, line)?;
    } else {
        for k in a.k.values() {
            emit_report(&mut w, ctx, &degree3_nonexistence(k))?;
        }
    }
    finish(w)
}

pub fn spectrum(ctx: &Context, a: SpectrumArgs) -> Outcome {
    let pv: PermutationVector =
        a.pv.parse()
            .map_err(|e| Failure::Usage(format!("--pv: {e}")))?;
    let s = charpoly_j_minus_p(a.d, a.k, &pv).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut w = out();
    match ctx.format {
        Format::Plain => {
            let mut line = format!(
                "d={} k={} pv={}",
                a.d,
                a.k,
                pv.to_string().replace(' ', ",")
            );
            let _ = write!(line, " j-minus-p {s}");
            emit(&mut w, line)?;
        }
        Format::Machine => {
            let v = json!({"d": a.d, "k": a.k, "pv": pv.to_string(), "j_minus_p": s});
            emit(&mut w, v.to_string())?;
        }
    }
    if a.k == 2 {
        let r = k2_charpoly(a.d, &pv).map_err(|e| Failure::Usage(e.to_string()))?;
        emit_report(&mut w, ctx, &r)?;
    }
    if pv.iter().all(|(j, _)| j == 2) {
        emit_report(&mut w, ctx, &two_outlier_regular_feasible(a.d, a.k))?;
    }
    finish(w)
}

pub fn k2_cases(ctx: &Context, a: K2Args) -> Outcome {
    let mut w = out();
    for d in a.d.values() {
        for r in k2_enumerate_cases(d) {
            emit_report(&mut w, ctx, &r)?;
        }
    }
    finish(w)
}

pub fn search(ctx: &Context, a: SearchArgs) -> Outcome {
    let mut cfg = SearchConfig::new(a.d, a.k);
    cfg.workers = ctx.workers;
    cfg.node_budget = a.budget;
    cfg.checkpoint = a.checkpoint;
    cfg.resume = a.resume;
    cfg.max_tasks = a.max_tasks;
    cfg.prefix_depth = a.prefix_depth;
    cfg.common_out_rule = !a.no_common_out_rule;
    cfg.transposition_rule = !a.no_transposition_rule;
    let result = match a.order {
        Some(n) => search_geodetic(&cfg, n),
        None => search_excess_one(&cfg),
    };
    let r = result.map_err(|e| match e {
        SearchError::InvalidConfig(_) => Failure::Usage(e.to_string()),
        _ => Failure::Input(e.to_string()),
    })?;
    let order = match a.order {
        Some(n) => n.to_string(),
        None => (moore_bound(a.d, a.k) + 1u32).to_string(),
    };
    eprintln!("wall time {:.3}s", r.wall_time.as_secs_f64());
    let mut w = out();
    match ctx.format {
        Format::Plain => {
            emit(
                &mut w,
                format!(
                    "d={} k={} order={order} exhausted={} found={} nodes={} tasks={}/{}",
                    a.d,
                    a.k,
                    r.exhausted,
                    r.found.len(),
                    r.nodes,
                    r.tasks_completed,
                    r.tasks_total
                ),
            )?;
            if !r.exhausted && r.found.is_empty() {
                emit(
                    &mut w,
                    "  note stopped early: no digraph found within the budget",
                )?;
            }
            for (i, g) in r.found.iter().enumerate() {
                emit(&mut w, format!("  digraph {}", i + 1))?;
                for line in g.store().lines() {
                    emit(&mut w, format!("    {line}"))?;
                }
            }
        }
        Format::Machine => {
            let found: Vec<String> = r.found.iter().map(Digraph::store).collect();
            let v = json!({
                "d": a.d,
                "k": a.k,
                "order": order,
                "exhausted": r.exhausted,
                "nodes": r.nodes,
                "tasks_total": r.tasks_total,
                "tasks_completed": r.tasks_completed,
                "found": found,
            });
            emit(&mut w, v.to_string())?;
        }
    }
    finish(w)
}

pub fn moore(ctx: &Context, a: PairArgs) -> Outcome {
    let mut w = out();
    let single = a.d.single().is_some() && a.k.single().is_some();
    for d in a.d.values() {
        for k in a.k.values() {
            let m = moore_bound(d, k);
            let line = match ctx.format {
                Format::Plain if single => m.to_string(),
                Format::Plain => format!("d={d} k={k} moore={m}"),
                Format::Machine => json!({"d": d, "k": k, "moore": m.to_string()}).to_string(),
            };
            emit(&mut w, line)?;
        }
    }
    finish(w)
}
