//! The full battery of checks for one instance `Q^(n,s)`: counts, cuts,
//! mutation, slices, walks and the homological properties of every cut
//! algebra.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::apr::{apr_tilting_module, two_apr_tilt_presentation};
use crate::covering::{
    cut_of_slice, ell_cut, full_sweep, mutate_slice, phi, phi_cut, random_cyclic_walk, slice_of_cut, Slice,
};
use crate::homalg::cluster::{endomorphism_presentation, is_napr_tiltable, is_self_injective, verify_nrf};
use crate::homalg::resolution::global_dimension;
use crate::homalg::{Algebra, AlgebraSignature, Rational, DEFAULT_RESOLUTION_BOUND};
use crate::typea::{Cut, Dir, TypeA, TypeAError};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_110_907;

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub walks: usize,
    pub walk_len: usize,
    pub seed: u64,
    pub jobs: usize,
    /// Run the per-cut homological checks.
    pub homological: bool,
    pub self_injective: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { walks: 100, walk_len: 12, seed: DEFAULT_SEED, jobs: 1, homological: true, self_injective: true }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TiltRecord {
    pub source: String,
    pub tiltable: bool,
    /// Homological tilt agrees with the mutated cut algebra (and with the
    /// 2-APR presentation when `n = 2`).
    pub agrees: Option<bool>,
    /// `pd T = n`, `Ext^i(T, Λ) = 0` for `0 < i < n`, `Hom(τ_n⁻P, Λ) = 0`.
    pub module_checks: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CutRecord {
    pub cut: Vec<String>,
    pub dimension: usize,
    pub gldim: String,
    pub nrf: bool,
    pub tilts: Vec<TiltRecord>,
}

impl CutRecord {
    fn ok(&self, n: usize) -> bool {
        self.gldim == n.to_string()
            && self.nrf
            && self.tilts.iter().all(|t| t.tiltable && t.agrees == Some(true) && t.module_checks == Some(true))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub n: usize,
    pub s: usize,
    pub seed: u64,
    pub vertices: usize,
    pub arrows: usize,
    pub cuts: usize,
    pub checks: Vec<Check>,
    pub cut_records: Vec<CutRecord>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn check(name: &str, ok: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), ok, detail: detail.into() }
}

fn signature_of(p: &crate::quiver::AlgebraPresentation) -> Option<AlgebraSignature> {
    Algebra::<Rational>::new(p).ok().map(|a| AlgebraSignature::of_algebra(&a))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WalkReport {
    pub walks: usize,
    /// Walks that are not closed or have `Φ(p) ≠ 0`.
    pub phi_failures: usize,
    /// Walks violating `Σ φ_i(p) = φ_C(p) + (n+1) ℓ_C(p)`.
    pub identity_failures: usize,
}

impl WalkReport {
    pub fn ok(&self) -> bool {
        self.phi_failures == 0 && self.identity_failures == 0
    }
}

/// `walks` seeded random cyclic walks of `Q_C` for each cut, about `len`
/// steps each.
pub fn check_walks(t: &TypeA, cuts: &[Cut], walks: usize, len: usize, seed: u64) -> WalkReport {
    let q = t.quiver();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = WalkReport::default();
    for c in cuts {
        for _ in 0..walks {
            let w = random_cyclic_walk(t, c, len, &mut rng);
            let ph = phi(t, &w);
            r.walks += 1;
            if !w.is_cyclic(q) || ph.iter().any(|&v| v != 0) {
                r.phi_failures += 1;
            }
            if ph.iter().sum::<i64>() != phi_cut(t, &w, c) + (t.n as i64 + 1) * ell_cut(&w, c) {
                r.identity_failures += 1;
            }
        }
    }
    r
}

/// Homological record for one cut algebra.
pub fn cut_record(t: &TypeA, c: &Cut) -> Result<CutRecord, TypeAError> {
    let n = t.n;
    let q = t.quiver();
    let p = t.cut_algebra(c)?;
    let Ok(alg) = Algebra::<Rational>::new(&p) else {
        return Ok(CutRecord { cut: c.ids(q), dimension: 0, gldim: "unknown".into(), nrf: false, tilts: vec![] });
    };
    let gldim = global_dimension(&alg, DEFAULT_RESOLUTION_BOUND).to_string();
    let nrf = verify_nrf(&alg, n).is_nrf();
    let mut tilts = Vec::new();
    for x in (0..q.vertex_count()).filter(|&x| t.is_source_of_cut(c, x)) {
        let tiltable = is_napr_tiltable(&alg, x, n);
        let mut rec = TiltRecord { source: q.vertex(x).id.clone(), tiltable, agrees: None, module_checks: None };
        if tiltable {
            if let Ok(tm) = apr_tilting_module(&alg, x, n) {
                rec.module_checks = Some(tm.checks(&alg).is_ok_and(|ch| ch.hold_for(n)));
                let mutated = t.mutate_cut(c, x, Dir::Plus).ok().and_then(|m| t.cut_algebra(&m).ok());
                let target = mutated.as_ref().and_then(signature_of);
                let homological = endomorphism_presentation(&alg, &tm.summands, &tm.names(q))
                    .ok()
                    .map(|e| AlgebraSignature::from_parts(&e.quiver, e.dimension, e.cartan));
                let mut agrees = matches!((&target, &homological), (Some(a), Some(b)) if a.agrees_with(b));
                if n == 2 {
                    let quiver_tilt = two_apr_tilt_presentation(&p, x, false).ok();
                    let sig = quiver_tilt.as_ref().and_then(signature_of);
                    agrees &= matches!((&target, &sig), (Some(a), Some(b)) if a.agrees_with(b));
                }
                rec.agrees = Some(agrees);
            }
        }
        tilts.push(rec);
    }
    Ok(CutRecord { cut: c.ids(q), dimension: alg.dimension(), gldim, nrf, tilts })
}

/// Runs `f` on `0..count` across `jobs` threads; results in index order.
pub fn parallel_map<T: Send, G: Fn(usize) -> T + Sync>(count: usize, jobs: usize, f: G) -> Vec<T> {
    let jobs = jobs.clamp(1, count.max(1));
    if jobs == 1 {
        return (0..count).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= count {
                    break;
                }
                let r = f(i);
                slots.lock().expect("no poisoned lock")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no poisoned lock").into_iter().map(|r| r.expect("every slot filled")).collect()
}

pub fn run_suite(n: usize, s: usize, opts: &SuiteOptions) -> Result<SuiteReport, TypeAError> {
    let t = TypeA::new(n, s)?;
    let q = t.quiver();
    let mut checks = Vec::new();

    let (nv, na) = (q.vertex_count(), q.arrow_count());
    let (ev, ea) = (binomial((s - 1 + n) as u64, n as u64), (n as u64 + 1) * binomial((s - 2 + n) as u64, n as u64));
    checks.push(check("counts", nv as u64 == ev && na as u64 == ea, format!("{nv} vertices, {na} arrows")));

    let cuts = t.enumerate_cuts();
    let all_cuts = cuts.iter().all(|c| t.is_cut(c));
    let mut detail = format!("{} cuts", cuts.len());
    let mut ok = all_cuts && !cuts.is_empty();
    if n == 1 {
        let expected = 1usize << (s - 1);
        ok &= cuts.len() == expected;
        detail.push_str(&format!(" (expected {expected})"));
    }
    checks.push(check("cuts", ok, detail));

    let mut closed = true;
    for c in &cuts {
        for x in 0..nv {
            if t.is_source_of_cut(c, x) {
                let m = t.mutate_cut(c, x, Dir::Plus);
                closed &= m.as_ref().is_ok_and(|m| t.is_cut(m) && t.mutate_cut(m, x, Dir::Minus).as_ref() == Ok(c));
            }
            if t.is_sink_of_cut(c, x) {
                let m = t.mutate_cut(c, x, Dir::Minus);
                closed &= m.as_ref().is_ok_and(|m| t.is_cut(m) && t.mutate_cut(m, x, Dir::Plus).as_ref() == Ok(c));
            }
        }
    }
    checks.push(check("mutation", closed, "mutations are cuts and mutually inverse"));
    let graph = t.mutation_graph();
    checks.push(check("connected", graph.is_connected(), format!("{} edges", graph.edges.len())));

    let mut bijective = true;
    let mut commutes = true;
    for c in &cuts {
        let Ok(slice) = slice_of_cut(&t, c, 0, 0) else {
            bijective = false;
            continue;
        };
        bijective &= cut_of_slice(&t, &slice).as_ref() == Ok(c);
        for x in (0..nv).filter(|&x| t.is_source_of_cut(c, x)) {
            let by_slice = mutate_slice(&t, &slice, x, Dir::Plus).ok().and_then(|m| cut_of_slice(&t, &m).ok());
            commutes &= by_slice == t.mutate_cut(c, x, Dir::Plus).ok();
        }
    }
    checks.push(check("slices", bijective && commutes, "cut_of_slice(slice_of_cut(C)) = C, mutation commutes"));

    let walks = check_walks(&t, &cuts, opts.walks, opts.walk_len, opts.seed);
    checks.push(check("walks", walks.ok(), format!("{} walks per cut", opts.walks)));

    let zero = Slice::zero(&t);
    let sweep = full_sweep(&t, &zero);
    let swept = sweep.as_ref().is_some_and(|(end, _)| *end == zero.shift(1));
    checks.push(check("sweep", swept, "mutating every vertex once shifts the slice"));

    let mut cut_records = Vec::new();
    if opts.homological {
        let records = parallel_map(cuts.len(), opts.jobs, |i| cut_record(&t, &cuts[i]));
        cut_records = records.into_iter().collect::<Result<Vec<_>, _>>()?;
        let bad: Vec<usize> = (0..cut_records.len()).filter(|&i| !cut_records[i].ok(n)).collect();
        let detail = if bad.is_empty() {
            format!("all {} cut algebras: gldim {n}, {n}-representation-finite, tilts agree", cut_records.len())
        } else {
            format!("failing cuts: {bad:?}")
        };
        checks.push(check("homological", bad.is_empty(), detail));
    }
    if opts.self_injective {
        let ok = Algebra::<Rational>::new(&t.preprojective_presentation()).is_ok_and(|a| is_self_injective(&a));
        checks.push(check("self-injective", ok, "preprojective algebra"));
    }

    Ok(SuiteReport { n, s, seed: opts.seed, vertices: nv, arrows: na, cuts: cuts.len(), checks, cut_records })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn suite_on_the_triangle() {
        let r = run_suite(2, 2, &SuiteOptions { walks: 10, ..Default::default() }).unwrap();
        assert!(r.passed(), "{:#?}", r.checks);
        assert_eq!(r.cuts, 3);
        assert!(r.cut_records.iter().all(|c| c.gldim == "2"));
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let one = SuiteOptions { walks: 5, jobs: 1, ..Default::default() };
        let four = SuiteOptions { jobs: 4, ..one.clone() };
        assert_eq!(run_suite(1, 3, &one).unwrap(), run_suite(1, 3, &four).unwrap());
    }

    #[test]
    fn parallel_map_keeps_order() {
        assert_eq!(parallel_map(10, 3, |i| i * i), (0..10).map(|i| i * i).collect::<Vec<_>>());
        assert!(parallel_map(0, 3, |i| i).is_empty());
    }
}
