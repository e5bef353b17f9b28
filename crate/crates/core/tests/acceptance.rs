//! Acceptance battery: one PASS/FAIL line per criterion, with wall-clock
//! limits pinned below. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use aprtilt::apr::{apr_tilting_module, tilted_algebra_homological, two_apr_tilt_presentation};
use aprtilt::covering::{cut_of_slice, full_sweep, mutate_slice, slice_of_cut, Slice};
use aprtilt::homalg::cluster::{
    cluster_tilting_candidate, endomorphism_presentation, is_napr_tiltable, is_self_injective, verify_nrf,
};
use aprtilt::homalg::resolution::global_dimension;
use aprtilt::quiver::AlgebraPresentation;
use aprtilt::suite::{check_walks, DEFAULT_SEED};
use aprtilt::{Algebra, AlgebraSignature, Dir, GlobalDimension, Quiver, Rational, TypeA};

const WALKS_PER_CUT: usize = 1000;
const WALK_LEN: usize = 12;
const GLDIM_BOUND: usize = 20;

type Outcome = Result<(), String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn sig(p: &AlgebraPresentation) -> Result<AlgebraSignature, String> {
    Algebra::<Rational>::new(p).map(|a| AlgebraSignature::of_algebra(&a)).map_err(|e| e.to_string())
}

fn type_a(n: usize, s: usize) -> Result<TypeA, String> {
    TypeA::new(n, s).map_err(|e| e.to_string())
}

fn cut_algebra(t: &TypeA, c: &aprtilt::Cut) -> Result<Algebra<Rational>, String> {
    let p = t.cut_algebra(c).map_err(|e| e.to_string())?;
    Algebra::new(&p).map_err(|e| e.to_string())
}

/// Arrow sets of closed paths of length `n+1` using every arrow type once.
fn brute_cycles(t: &TypeA) -> Vec<BTreeSet<usize>> {
    let q = t.quiver();
    let k = t.n + 1;
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, usize, u32, Vec<usize>)> = (0..q.vertex_count()).map(|v| (v, v, 0, vec![])).collect();
    while let Some((start, at, used, path)) = stack.pop() {
        if path.len() == k {
            if at == start {
                out.insert(path.into_iter().collect::<BTreeSet<_>>());
            }
            continue;
        }
        for a in q.arrows_from(at) {
            let ty = t.arrow_type(a);
            if used & (1 << ty) == 0 {
                let mut p = path.clone();
                p.push(a);
                stack.push((start, q.arrow(a).target, used | (1 << ty), p));
            }
        }
    }
    out.into_iter().collect()
}

fn powerset_cuts(t: &TypeA) -> BTreeSet<BTreeSet<usize>> {
    let m = t.quiver().arrow_count();
    let cycles = brute_cycles(t);
    (0u32..1 << m)
        .map(|mask| (0..m).filter(|&a| mask & (1 << a) != 0).collect::<BTreeSet<usize>>())
        .filter(|c| cycles.iter().all(|cy| cy.intersection(c).count() == 1))
        .collect()
}

/// One arrow from each pair of opposite arrows of `Q^(1,s)`.
fn orientations(q: &Quiver) -> BTreeSet<BTreeSet<usize>> {
    let mut pairs = Vec::new();
    for a in 0..q.arrow_count() {
        for b in a + 1..q.arrow_count() {
            let (x, y) = (q.arrow(a), q.arrow(b));
            if x.source == y.target && x.target == y.source {
                pairs.push((a, b));
            }
        }
    }
    (0u32..1 << pairs.len())
        .map(|mask| pairs.iter().enumerate().map(|(i, &(a, b))| if mask & (1 << i) != 0 { a } else { b }).collect())
        .collect()
}

fn cut_set(t: &TypeA) -> BTreeSet<BTreeSet<usize>> {
    t.enumerate_cuts().into_iter().map(|c| c.0).collect()
}

const MUTATION_INSTANCES: [(usize, usize); 10] =
    [(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3)];

fn c1_counts() -> Outcome {
    for n in 1..=4 {
        for s in 2..=6 {
            let t = type_a(n, s)?;
            let got = (t.quiver().vertex_count(), t.quiver().arrow_count());
            let want = (binomial(s - 1 + n, n), (n + 1) * binomial(s - 2 + n, n));
            ensure(got == want, || format!("({n},{s}): {got:?} vs {want:?}"))?;
        }
    }
    for (n, s, want) in [(2, 4, (10, 18)), (3, 3, (10, 16))] {
        let t = type_a(n, s)?;
        let got = (t.quiver().vertex_count(), t.quiver().arrow_count());
        ensure(got == want, || format!("({n},{s}): {got:?} vs {want:?}"))?;
    }
    Ok(())
}

fn c2_cut_counts() -> Outcome {
    for s in 2..=6 {
        let t = type_a(1, s)?;
        let got = cut_set(&t);
        ensure(got.len() == 1 << (s - 1), || format!("(1,{s}): {} cuts", got.len()))?;
        ensure(got == orientations(t.quiver()), || format!("(1,{s}): cuts differ from orientations"))?;
    }
    for (n, s, count) in [(2, 2, 3), (2, 3, 12)] {
        let t = type_a(n, s)?;
        let got = cut_set(&t);
        ensure(got.len() == count, || format!("({n},{s}): {} cuts", got.len()))?;
        ensure(got == powerset_cuts(&t), || format!("({n},{s}): cuts differ from the power-set filter"))?;
    }
    Ok(())
}

fn c3_mutation() -> Outcome {
    for (n, s) in MUTATION_INSTANCES {
        let t = type_a(n, s)?;
        let cuts = t.enumerate_cuts();
        let all: BTreeSet<_> = cuts.iter().cloned().collect();
        for c in &cuts {
            for x in 0..t.vertex_count() {
                for (dir, back) in [(Dir::Plus, Dir::Minus), (Dir::Minus, Dir::Plus)] {
                    let allowed = match dir {
                        Dir::Plus => t.is_source_of_cut(c, x),
                        Dir::Minus => t.is_sink_of_cut(c, x),
                    };
                    match t.mutate_cut(c, x, dir) {
                        Ok(m) => {
                            ensure(allowed, || format!("({n},{s}): mutation at a non-source/sink"))?;
                            ensure(t.is_cut(&m) && all.contains(&m), || format!("({n},{s}): mutation left the cut set"))?;
                            ensure(t.mutate_cut(&m, x, back).ok().as_ref() == Some(c), || {
                                format!("({n},{s}): mutation is not involutive")
                            })?;
                        }
                        Err(_) => ensure(!allowed, || format!("({n},{s}): mutation refused at a valid vertex"))?,
                    }
                }
            }
        }
        let g = t.mutation_graph();
        ensure(g.cuts.len() == cuts.len(), || format!("({n},{s}): graph has {} cuts", g.cuts.len()))?;
        ensure(g.is_connected(), || format!("({n},{s}): mutation graph is disconnected"))?;
    }
    Ok(())
}

fn c4_slices() -> Outcome {
    for (n, s) in MUTATION_INSTANCES {
        let t = type_a(n, s)?;
        for c in t.enumerate_cuts() {
            let sl = slice_of_cut(&t, &c, 0, 0).map_err(|e| e.to_string())?;
            ensure(cut_of_slice(&t, &sl).ok().as_ref() == Some(&c), || format!("({n},{s}): round trip failed"))?;
            for x in 0..t.vertex_count() {
                for dir in [Dir::Plus, Dir::Minus] {
                    let by_cut = t.mutate_cut(&c, x, dir).ok();
                    let by_slice = mutate_slice(&t, &sl, x, dir).ok().and_then(|m| cut_of_slice(&t, &m).ok());
                    ensure(by_cut == by_slice, || format!("({n},{s}): slice mutation disagrees at {x}"))?;
                }
            }
        }
    }
    Ok(())
}

fn c5_walks() -> Outcome {
    for (n, s) in [(2, 3), (3, 3)] {
        let t = type_a(n, s)?;
        let cuts = t.enumerate_cuts();
        let r = check_walks(&t, &cuts, WALKS_PER_CUT, WALK_LEN, DEFAULT_SEED);
        ensure(r.walks == WALKS_PER_CUT * cuts.len(), || format!("({n},{s}): {} walks", r.walks))?;
        ensure(r.ok(), || format!("({n},{s}): {r:?}"))?;
    }
    Ok(())
}

fn c6_sweep() -> Outcome {
    for (n, s) in [(2, 3), (3, 3)] {
        let t = type_a(n, s)?;
        let zero = Slice::zero(&t);
        let (end, order) = full_sweep(&t, &zero).ok_or_else(|| format!("({n},{s}): sweep got stuck"))?;
        ensure(order.len() == t.vertex_count(), || format!("({n},{s}): sweep visited {}", order.len()))?;
        ensure(end == zero.shift(1), || format!("({n},{s}): sweep ended at {:?}", end.0))?;
    }
    Ok(())
}

fn c7_homological() -> Outcome {
    for (n, s) in [(2, 2), (2, 3), (1, 2), (1, 3), (1, 4), (3, 2)] {
        let t = type_a(n, s)?;
        for c in t.enumerate_cuts() {
            let alg = cut_algebra(&t, &c)?;
            let gl = global_dimension(&alg, GLDIM_BOUND);
            ensure(gl == GlobalDimension::Finite(n), || format!("({n},{s}) {:?}: gldim {gl:?}", c.ids(t.quiver())))?;
            ensure(verify_nrf(&alg, n).is_nrf(), || format!("({n},{s}) {:?}: not {n}-RF", c.ids(t.quiver())))?;
        }
    }
    let a2 = type_a(1, 2)?;
    let alg = cut_algebra(&a2, &a2.standard_cut())?;
    ensure(!verify_nrf(&alg, 2).is_nrf(), || "kA2 reported 2-RF".into())
}

fn c8_tower() -> Outcome {
    for s in [2, 3] {
        let lower = type_a(1, s)?;
        let upper = type_a(2, s)?;
        let alg = cut_algebra(&lower, &lower.standard_cut())?;
        let summands = cluster_tilting_candidate(&alg, 1, 64).map_err(|e| e.to_string())?;
        let names: Vec<String> = summands.iter().map(|m| m.name(alg.quiver())).collect();
        let mods: Vec<_> = summands.into_iter().map(|m| m.module).collect();
        let end = endomorphism_presentation(&alg, &mods, &names).map_err(|e| e.to_string())?;
        let got = AlgebraSignature::from_parts(&end.quiver, end.dimension, end.cartan);
        let want = sig(&upper.cut_algebra(&upper.standard_cut()).map_err(|e| e.to_string())?)?;
        ensure(got.agrees_with(&want), || format!("s = {s}: End has dimension {}", end.dimension))?;
    }
    Ok(())
}

fn c9_triple() -> Outcome {
    let t = type_a(2, 3)?;
    let mut tilts = 0;
    for c in t.enumerate_cuts() {
        let p = t.cut_algebra(&c).map_err(|e| e.to_string())?;
        let alg = Algebra::<Rational>::new(&p).map_err(|e| e.to_string())?;
        for x in (0..t.vertex_count()).filter(|&x| t.is_source_of_cut(&c, x)) {
            let here = || format!("{:?} at {}", c.ids(t.quiver()), t.quiver().vertex(x).id);
            let combinatorial = sig(&two_apr_tilt_presentation(&p, x, true).map_err(|e| format!("{}: {e}", here()))?)?;
            let mutated = t.mutate_cut(&c, x, Dir::Plus).map_err(|e| e.to_string())?;
            let by_cut = sig(&t.cut_algebra(&mutated).map_err(|e| e.to_string())?)?;
            let e = tilted_algebra_homological(&alg, x, 2).map_err(|e| format!("{}: {e}", here()))?;
            let homological = AlgebraSignature::from_parts(&e.quiver, e.dimension, e.cartan);
            ensure(combinatorial.agrees_with(&by_cut), || format!("{}: quiver tilt disagrees", here()))?;
            ensure(homological.agrees_with(&by_cut), || format!("{}: End(T) disagrees", here()))?;
            let tm = apr_tilting_module(&alg, x, 2).map_err(|e| e.to_string())?;
            let checks = tm.checks(&alg).map_err(|e| e.to_string())?;
            ensure(checks.hold_for(2), || format!("{}: {checks:?}", here()))?;
            tilts += 1;
        }
    }
    ensure(tilts > 0, || "no tilts checked".into())
}

fn c10_self_injective() -> Outcome {
    for (n, s) in [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3)] {
        let t = type_a(n, s)?;
        let alg = Algebra::<Rational>::new(&t.preprojective_presentation()).map_err(|e| e.to_string())?;
        ensure(is_self_injective(&alg), || format!("({n},{s}) not self-injective"))?;
        if n == 1 {
            let want = s * (s + 1) * (s + 2) / 6;
            ensure(alg.dimension() == want, || format!("(1,{s}): dimension {} vs {want}", alg.dimension()))?;
        }
    }
    Ok(())
}

fn c11_table() -> Outcome {
    let t = type_a(2, 3)?;
    for c in t.enumerate_cuts() {
        let alg = cut_algebra(&t, &c)?;
        for x in (0..t.vertex_count()).filter(|&x| alg.quiver().is_source(x)) {
            ensure(is_napr_tiltable(&alg, x, 2), || {
                format!("{:?}: source {} not 2-tiltable", c.ids(t.quiver()), t.quiver().vertex(x).id)
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("vertex and arrow counts", 1, c1_counts),
        ("cut counts", 5, c2_cut_counts),
        ("mutation closure and connectivity", 120, c3_mutation),
        ("cut and slice bijection", 60, c4_slices),
        ("walk invariants", 60, c5_walks),
        ("full mutation sweep", 10, c6_sweep),
        ("global dimension and n-representation-finiteness", 300, c7_homological),
        ("higher Auslander tower", 120, c8_tower),
        ("tilt triple agreement", 300, c9_triple),
        ("self-injective preprojective algebras", 60, c10_self_injective),
        ("every source of every cut is tiltable", 120, c11_table),
    ];
    let mut failed = 0;
    for (i, (name, limit, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let verdict = match result {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over the {limit:?} limit)"),
            Err(e) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict} {:>2} {name} [{:.3}s, limit {}s]", i + 1, elapsed.as_secs_f64(), limit.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
