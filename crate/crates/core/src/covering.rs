//! The covering quiver `Q̃^(n,s)`: vertices `(x : i)` for `x ∈ Q_0` and
//! `i ∈ Z`. Arrows of type `≤ n` keep the level and arrows of type `n+1`
//! raise it by one; `ν_n` lowers every level by one.
//!
//! A slice is stored as a level map `Q_0 -> Z`, so it meets each
//! `ν_n`-orbit exactly once by construction.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::quiver::{Direction, Quiver, Walk};
use crate::typea::{Cut, Dir, TypeA};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoveringError {
    #[error("empty level range {lo}..={hi}")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("level map is not a slice")]
    NotASlice,
    #[error("arrow set is not a cut")]
    NotACut,
    #[error("cut quiver is disconnected")]
    DisconnectedQuotient,
    #[error("vertex `{0}` is not a source of the slice")]
    NotASource(String),
    #[error("vertex `{0}` is not a sink of the slice")]
    NotASink(String),
    #[error("walk does not start at the projection of the start vertex")]
    StartMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoveringVertex {
    pub vertex: usize,
    pub level: i64,
}

impl CoveringVertex {
    pub fn new(vertex: usize, level: i64) -> Self {
        CoveringVertex { vertex, level }
    }

    /// Level raised by `k`; `ν_n` is `shift(-1)`.
    pub fn shift(self, k: i64) -> Self {
        CoveringVertex { vertex: self.vertex, level: self.level + k }
    }

    pub fn nu(self) -> Self {
        self.shift(-1)
    }

    pub fn project(self) -> usize {
        self.vertex
    }
}

/// `1` for arrows of type `n+1`, else `0`.
pub fn level_step(t: &TypeA, a: usize) -> i64 {
    i64::from(t.arrow_type(a) == t.n as u32 + 1)
}

/// The full subquiver of `Q̃` on the levels `lo..=hi`.
#[derive(Clone, Debug)]
pub struct CoveringWindow {
    pub n: usize,
    pub s: usize,
    pub lo: i64,
    pub hi: i64,
    pub quiver: Quiver,
    pub vertices: Vec<CoveringVertex>,
    /// Arrow of `Q` each window arrow lies over.
    pub arrow_base: Vec<usize>,
}

impl CoveringWindow {
    pub fn index(&self, v: CoveringVertex) -> Option<usize> {
        if v.level < self.lo || v.level > self.hi {
            return None;
        }
        let per_level = self.vertices.len() / (self.hi - self.lo + 1) as usize;
        Some((v.level - self.lo) as usize * per_level + v.vertex)
    }
}

pub fn covering_vertex_id(t: &TypeA, v: CoveringVertex) -> String {
    format!("{}:{}", t.quiver().vertex(v.vertex).id, v.level)
}

pub fn window(t: &TypeA, lo: i64, hi: i64) -> Result<CoveringWindow, CoveringError> {
    if hi < lo {
        return Err(CoveringError::EmptyRange { lo, hi });
    }
    let q = t.quiver();
    let mut quiver = Quiver::new();
    let mut vertices = Vec::new();
    for level in lo..=hi {
        for v in 0..q.vertex_count() {
            let cv = CoveringVertex::new(v, level);
            let mut label = q.vertex(v).label.clone().unwrap_or_default();
            label.push(level);
            quiver.add_vertex(covering_vertex_id(t, cv), Some(label)).expect("distinct");
            vertices.push(cv);
        }
    }
    let nv = q.vertex_count();
    let mut arrow_base = Vec::new();
    for level in lo..=hi {
        for (a, arr) in q.arrows().iter().enumerate() {
            let tl = level + level_step(t, a);
            if tl > hi {
                continue;
            }
            let src = (level - lo) as usize * nv + arr.source;
            let tgt = (tl - lo) as usize * nv + arr.target;
            quiver.add_arrow(format!("{}:{}", arr.id, level), src, tgt, arr.ty).expect("distinct");
            arrow_base.push(a);
        }
    }
    Ok(CoveringWindow { n: t.n, s: t.s, lo, hi, quiver, vertices, arrow_base })
}

/// The unique lift of a walk on `Q`, as the sequence of visited vertices.
pub fn lift_walk(t: &TypeA, p: &Walk, start: CoveringVertex) -> Result<Vec<CoveringVertex>, CoveringError> {
    if start.vertex != p.start {
        return Err(CoveringError::StartMismatch);
    }
    let q = t.quiver();
    let mut at = start;
    let mut out = vec![at];
    for &(a, d) in &p.steps {
        let arr = q.arrow(a);
        at = match d {
            Direction::Forward => CoveringVertex::new(arr.target, at.level + level_step(t, a)),
            Direction::Backward => CoveringVertex::new(arr.source, at.level - level_step(t, a)),
        };
        out.push(at);
    }
    Ok(out)
}

/// `Φ(p)`: signed count of each arrow type along the walk.
pub fn phi(t: &TypeA, p: &Walk) -> Vec<i64> {
    let mut v = vec![0; t.n + 1];
    for &(a, d) in &p.steps {
        v[t.arrow_type(a) as usize - 1] += d.sign();
    }
    v
}

/// `φ_C`: `+1` per arrow outside `C`, `-n` per arrow of `C`, signed by direction.
pub fn phi_cut(t: &TypeA, p: &Walk, c: &Cut) -> i64 {
    p.steps.iter().map(|&(a, d)| d.sign() * if c.contains(a) { -(t.n as i64) } else { 1 }).sum()
}

/// `ℓ_C`: signed count of cut arrows along the walk.
pub fn ell_cut(p: &Walk, c: &Cut) -> i64 {
    p.steps.iter().filter(|(a, _)| c.contains(*a)).map(|(_, d)| d.sign()).sum()
}

/// A level map on `Q_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slice(pub Vec<i64>);

impl Slice {
    pub fn zero(t: &TypeA) -> Self {
        Slice(vec![0; t.vertex_count()])
    }

    pub fn level(&self, v: usize) -> i64 {
        self.0[v]
    }

    pub fn shift(&self, k: i64) -> Self {
        Slice(self.0.iter().map(|l| l + k).collect())
    }

    /// Shifted so that the minimum level is zero.
    pub fn normalized(&self) -> Self {
        let m = self.0.iter().copied().min().unwrap_or(0);
        self.shift(-m)
    }

    pub fn min_level(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max_level(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Whether the lift of `a` starting at `(source : S(source))` ends in the slice.
    pub fn contains_arrow(&self, t: &TypeA, a: usize) -> bool {
        let arr = t.quiver().arrow(a);
        self.0[arr.target] - self.0[arr.source] == level_step(t, a)
    }
}

/// Convexity inside the window `[min - margin, max + margin]`: no path of
/// `Q̃` leaves the slice and comes back.
pub fn is_slice(t: &TypeA, s: &Slice, margin: i64) -> bool {
    if s.0.len() != t.vertex_count() {
        return false;
    }
    if t.vertex_count() == 0 {
        return true;
    }
    let (lo, hi) = (s.min_level() - margin, s.max_level() + margin);
    let w = window(t, lo, hi).expect("nonempty range");
    let nw = w.vertices.len();
    let in_slice: Vec<bool> = w.vertices.iter().map(|cv| s.0[cv.vertex] == cv.level).collect();
    let reach = |forward: bool| {
        let mut seen = in_slice.clone();
        let mut queue: VecDeque<usize> = (0..nw).filter(|&i| in_slice[i]).collect();
        let mut adj = vec![Vec::new(); nw];
        for arr in w.quiver.arrows() {
            if forward {
                adj[arr.source].push(arr.target);
            } else {
                adj[arr.target].push(arr.source);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        seen
    };
    let (fwd, bwd) = (reach(true), reach(false));
    (0..nw).all(|i| !(fwd[i] && bwd[i]) || in_slice[i])
}

pub const DEFAULT_MARGIN: i64 = 1;

/// `C_S`: the arrows of `Q` whose lift at the slice leaves it.
pub fn cut_of_slice(t: &TypeA, s: &Slice) -> Result<Cut, CoveringError> {
    if !is_slice(t, s, DEFAULT_MARGIN) {
        return Err(CoveringError::NotASlice);
    }
    Ok(Cut((0..t.quiver().arrow_count()).filter(|&a| !s.contains_arrow(t, a)).collect()))
}

/// The slice `ι(Q_C)` through `(basepoint : base_level)`, levels found by
/// lifting walks of `Q_C`.
pub fn slice_of_cut(t: &TypeA, c: &Cut, basepoint: usize, base_level: i64) -> Result<Slice, CoveringError> {
    if !t.is_cut(c) {
        return Err(CoveringError::NotACut);
    }
    let q = t.quiver();
    let mut level: Vec<Option<i64>> = vec![None; q.vertex_count()];
    level[basepoint] = Some(base_level);
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        let lv = level[v].unwrap();
        let steps = q
            .arrows_from(v)
            .filter(|&a| !c.contains(a))
            .map(|a| (q.arrow(a).target, lv + level_step(t, a)))
            .chain(q.arrows_to(v).filter(|&a| !c.contains(a)).map(|a| (q.arrow(a).source, lv - level_step(t, a))))
            .collect::<Vec<_>>();
        for (w, lw) in steps {
            if level[w].is_none() {
                level[w] = Some(lw);
                queue.push_back(w);
            }
        }
    }
    level.into_iter().collect::<Option<Vec<_>>>().map(Slice).ok_or(CoveringError::DisconnectedQuotient)
}

/// Whether `(x : S(x))` is a source (`Plus`) or sink (`Minus`) of the slice.
pub fn is_slice_source(t: &TypeA, s: &Slice, x: usize) -> bool {
    t.quiver().arrows_to(x).all(|a| !s.contains_arrow(t, a))
}

pub fn is_slice_sink(t: &TypeA, s: &Slice, x: usize) -> bool {
    t.quiver().arrows_from(x).all(|a| !s.contains_arrow(t, a))
}

/// `μ⁺ₓ` replaces `(x : i)` by `ν_n⁻(x : i) = (x : i+1)`; `μ⁻ₓ` by `ν_n(x : i)`.
pub fn mutate_slice(t: &TypeA, s: &Slice, x: usize, dir: Dir) -> Result<Slice, CoveringError> {
    let mut out = s.clone();
    match dir {
        Dir::Plus => {
            if !is_slice_source(t, s, x) {
                return Err(CoveringError::NotASource(t.quiver().vertex(x).id.clone()));
            }
            out.0[x] += 1;
        }
        Dir::Minus => {
            if !is_slice_sink(t, s, x) {
                return Err(CoveringError::NotASink(t.quiver().vertex(x).id.clone()));
            }
            out.0[x] -= 1;
        }
    }
    Ok(out)
}

/// Mutates at every vertex once, always choosing the first unmutated
/// source. Returns the final slice and the order used, or `None` if the
/// sweep gets stuck.
pub fn full_sweep(t: &TypeA, s: &Slice) -> Option<(Slice, Vec<usize>)> {
    let mut cur = s.clone();
    let mut done = vec![false; t.vertex_count()];
    let mut order = Vec::new();
    while order.len() < t.vertex_count() {
        let x = (0..t.vertex_count()).find(|&x| !done[x] && is_slice_source(t, &cur, x))?;
        cur = mutate_slice(t, &cur, x, Dir::Plus).ok()?;
        done[x] = true;
        order.push(x);
    }
    Some((cur, order))
}

/// Normalized slices reachable from the zero slice by mutations.
pub fn slice_closure(t: &TypeA) -> BTreeSet<Slice> {
    let start = Slice::zero(t);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        for x in 0..t.vertex_count() {
            for dir in [Dir::Plus, Dir::Minus] {
                if let Ok(m) = mutate_slice(t, &s, x, dir) {
                    let m = m.normalized();
                    if seen.insert(m.clone()) {
                        queue.push_back(m);
                    }
                }
            }
        }
    }
    seen
}

/// A random walk on `Q_C` of `len` steps closed up by a shortest return
/// path in the underlying graph of `Q_C`.
pub fn random_cyclic_walk<R: Rng>(t: &TypeA, c: &Cut, len: usize, rng: &mut R) -> Walk {
    let q = t.quiver();
    let nv = q.vertex_count();
    let mut adj: Vec<Vec<(usize, Direction, usize)>> = vec![Vec::new(); nv];
    for (a, arr) in q.arrows().iter().enumerate() {
        if c.contains(a) {
            continue;
        }
        adj[arr.source].push((a, Direction::Forward, arr.target));
        adj[arr.target].push((a, Direction::Backward, arr.source));
    }
    let start = rng.gen_range(0..nv);
    let mut steps = Vec::new();
    let mut at = start;
    for _ in 0..len {
        let Some(&(a, d, w)) = adj[at].choose(rng) else { break };
        steps.push((a, d));
        at = w;
    }
    // shortest way back
    let mut prev: HashMap<usize, (usize, Direction, usize)> = HashMap::new();
    let mut queue = VecDeque::from([at]);
    let mut seen = vec![false; nv];
    seen[at] = true;
    while let Some(v) = queue.pop_front() {
        if v == start {
            break;
        }
        for &(a, d, w) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                prev.insert(w, (a, d, v));
                queue.push_back(w);
            }
        }
    }
    let mut back = Vec::new();
    let mut v = start;
    while v != at {
        let (a, d, u) = prev[&v];
        back.push((a, d));
        v = u;
    }
    back.reverse();
    steps.extend(back);
    Walk { start, steps }
}
