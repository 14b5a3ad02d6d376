//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are always shown.
//! It exits nonzero when a criterion fails, except for failures listed as
//! known gaps, which are still printed as FAIL.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use orderpoly_core::order_poly::order_polynomial;
use orderpoly_core::psi::{delta_ordering, psi_digraph};
use orderpoly_core::scan::{run_scan, Class, Limits, ScanConfig, ScanReport};
use orderpoly_core::{AcyclicDigraph, BinomPoly, Ordering, Vertex};

struct Outcome {
    pass: bool,
    /// Failing, but recorded as a known gap in the construction being checked.
    known_gap: bool,
    detail: String,
}

/// (instances, failures, first failure, summed counters).
type Totals = (u64, u64, Option<String>, Vec<u64>);
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);
/// Arcs, then each extension with its δ value.
type TableColumn = (&'static [(Vertex, Vertex)], [([Vertex; 3], usize); 3]);

fn pass_if(pass: bool, detail: String) -> Outcome {
    Outcome { pass, known_gap: false, detail }
}

fn scan(class: Class, order: usize, check: &str) -> ScanReport {
    let cfg = ScanConfig { class, order, pool: 6, check: check.into() };
    run_scan(&cfg, &Limits::default()).unwrap_or_else(|e| panic!("{class} {order} {check}: {e}"))
}

/// Scans orders lo..=hi, summing the named counters.
fn scan_range(class: Class, lo: usize, hi: usize, check: &str, counters: &[&str]) -> Totals {
    let mut inst = 0;
    let mut fail = 0;
    let mut first = None;
    let mut sums = vec![0; counters.len()];
    for n in lo..=hi {
        let r = scan(class, n, check);
        inst += r.instances;
        fail += r.failures;
        if first.is_none() {
            first = r.first_failure.as_ref().map(|f| format!("{f} on {:?}", f.instance));
        }
        for (s, k) in sums.iter_mut().zip(counters) {
            *s += r.count(k);
        }
    }
    (inst, fail, first, sums)
}

fn digraph(arcs: &[(Vertex, Vertex)]) -> AcyclicDigraph {
    AcyclicDigraph::new(&[1, 2, 3], arcs).unwrap()
}

fn table_rows() -> Outcome {
    // D1 = {1→3}, D2 = {3→1}, D3 = {2→1}: the single-arc digraphs on {1,2,3}
    // whose extensions and δ values reproduce the table
    let rows: [TableColumn; 3] = [
        (&[(1, 3)], [([2, 1, 3], 1), ([1, 2, 3], 2), ([1, 3, 2], 1)]),
        (&[(3, 1)], [([2, 3, 1], 2), ([3, 2, 1], 0), ([3, 1, 2], 2)]),
        (&[(2, 1)], [([3, 2, 1], 1), ([2, 3, 1], 1), ([2, 1, 3], 2)]),
    ];
    let mut matched = 0;
    for (arcs, expect) in rows {
        let d = digraph(arcs);
        let got: BTreeSet<Vec<Vertex>> = d.linear_extensions().iter().map(|o| o.as_slice().to_vec()).collect();
        let want: BTreeSet<Vec<Vertex>> = expect.iter().map(|(p, _)| p.to_vec()).collect();
        if got != want {
            return pass_if(false, format!("OP({arcs:?}) = {got:?}"));
        }
        for (p, delta) in expect {
            let pi = Ordering::new(p.to_vec()).unwrap();
            if delta_ordering(&d, &pi).unwrap() == delta {
                matched += 1;
            }
        }
    }
    pass_if(matched == 9, format!("{matched}/9 rows match"))
}

fn psi_fixture() -> Outcome {
    let (d1, d2, d3) = (digraph(&[(1, 3)]), digraph(&[(3, 1)]), digraph(&[(2, 1)]));
    let low = BinomPoly::from_ints(3, &[(2, 1), (1, 2)]);
    let high = BinomPoly::from_ints(3, &[(2, 2), (0, 1)]);
    let omega = |d: &AcyclicDigraph| order_polynomial(&d.poset()).unwrap();
    let checks = [
        psi_digraph(&d1) == low,
        psi_digraph(&d3) == low,
        psi_digraph(&d2) == high,
        psi_digraph(&d1).to_monomial() == omega(&d1),
        psi_digraph(&d2).to_monomial() != omega(&d2),
    ];
    let ok = checks.iter().filter(|&&c| c).count();
    pass_if(ok == checks.len(), format!("{ok}/{} fixture equalities", checks.len()))
}

fn plain(class: Class, lo: usize, hi: usize, check: &str, counters: &[&str]) -> Outcome {
    let (inst, fail, first, sums) = scan_range(class, lo, hi, check, counters);
    let extra: Vec<String> = counters.iter().zip(&sums).map(|(k, v)| format!("{k} {v}")).collect();
    let mut detail = format!("{check}: {inst} instances, {fail} failures");
    if !extra.is_empty() {
        detail += &format!(" ({})", extra.join(", "));
    }
    if let Some(f) = first {
        detail += &format!("; first: {f}");
    }
    pass_if(fail == 0, detail)
}

fn all_of(parts: Vec<Outcome>) -> Outcome {
    Outcome {
        pass: parts.iter().all(|p| p.pass),
        known_gap: false,
        detail: parts.iter().map(|p| p.detail.as_str()).collect::<Vec<_>>().join(" | "),
    }
}

fn closed_forms() -> Outcome {
    let (inst, fail, first, sums) = scan_range(
        Class::Digraphs,
        1,
        4,
        "large-relabel",
        &["triples", "literal-mismatch", "degenerate-nonzero", "fixture-square"],
    );
    let turning = plain(Class::Digraphs, 1, 4, "turning", &["pairs", "converse-fails"]);
    let corrected = fail == 0 && sums[3] == 1 && turning.pass;
    let literal = sums[1] == 0;
    let mut detail = format!(
        "literal single-vertex sum differs from direct Δ on {} of {} (D, a, m) triples (only where the extension leaves no gap); \
         summing over proper gaps only: {} failures over {inst} digraphs, D2/a=2/m=4 gives (z-1)^2: {} | {}",
        sums[1],
        sums[0],
        fail,
        sums[3] == 1,
        turning.detail
    );
    if let Some(f) = first {
        detail += &format!("; first: {f}");
    }
    Outcome { pass: literal && corrected, known_gap: !literal && corrected, detail }
}

fn tree_suite() -> Outcome {
    let conj = scan(Class::Trees, 7, "conjecture");
    let mut parts = vec![
        plain(Class::Graphs, 1, 6, "characterization", &["vanishing"]),
        plain(Class::Graphs, 1, 6, "multipartite", &["multipartite", "relabelings"]),
        plain(Class::Trees, 1, 8, "caterpillar", &["caterpillars"]),
    ];
    // a disagreement would be a counterexample to the conjecture: reported, not failed
    parts.push(pass_if(
        conj.passed(),
        format!(
            "conjecture ≤ 7: {} classes, {} members, {} disagreements",
            conj.instances,
            conj.count("members"),
            conj.count("disagreements")
        ),
    ));
    all_of(parts)
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("extension and δ table for D1, D2, D3", Box::new(table_rows)),
        ("Ψ fixtures and Ψ vs Ω for D1, D2", Box::new(psi_fixture)),
        (
            "graph identity iff W(G) = ∅, defect ≥ 0, n ≤ 5",
            Box::new(|| plain(Class::Graphs, 1, 5, "identity-iff", &["identity-holds", "defect-nonzero"])),
        ),
        (
            "digraph defect nonnegative and zero iff W(D) = ∅, n ≤ 4, labels ≤ 6",
            Box::new(|| plain(Class::Digraphs, 1, 4, "defect", &["defect-nonzero"])),
        ),
        (
            "Re(D) = ∅ ⇒ Ψ = Ω and W(D) = ∅ ⇒ Ψ = Ω on the same scan",
            Box::new(|| plain(Class::Digraphs, 1, 4, "implications", &["no-descent", "witness-free", "equal"])),
        ),
        ("closed-form Δ differences vs brute force", Box::new(closed_forms)),
        (
            "Γ sequences over every sink-elimination ordering",
            Box::new(|| plain(Class::Digraphs, 1, 4, "gamma", &["orderings", "steps"])),
        ),
        (
            "reciprocity, descent form, AO sums and |AO|",
            Box::new(|| {
                all_of(vec![
                    plain(Class::Digraphs, 1, 4, "reciprocity", &[]),
                    plain(Class::Digraphs, 1, 4, "stanley", &[]),
                    plain(Class::Graphs, 1, 5, "decomposition", &["orientations"]),
                ])
            }),
        ),
        ("relabelling family: characterization, multipartite, caterpillars, trees", Box::new(tree_suite)),
        (
            "defect counts orderings through u under its hypothesis",
            Box::new(|| plain(Class::Digraphs, 1, 4, "interpretation", &["pairs", "nonzero"])),
        ),
    ];
    let mut hard_failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        let note = if o.known_gap { " [known gap, see README]" } else { "" };
        println!("criterion {:>2}: {verdict}{note} — {name} — {} ({secs:.2}s)", i + 1, o.detail);
        if !o.pass && !o.known_gap {
            hard_failures += 1;
        }
    }
    if hard_failures > 0 {
        println!("{hard_failures} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
