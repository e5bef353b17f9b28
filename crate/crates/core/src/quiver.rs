//! Quivers, paths, walks and presented path-algebra quotients.
//!
//! Paths compose left to right: `p·q` is "first `p`, then `q`". Vertex and
//! arrow ids are opaque tokens; integer labels are metadata only.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::Zero;
use thiserror::Error;

use crate::homalg::field::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` references missing vertex `{vertex}`")]
    DanglingArrow { arrow: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("arrows do not compose at position {position}")]
    BrokenPath { position: usize },
    #[error("walk endpoints do not match: first ends at `{end}`, second starts at `{start}`")]
    EndpointMismatch { end: String, start: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation {relation}: arrow index {arrow} does not exist")]
    DanglingArrow { relation: usize, arrow: usize },
    #[error("relation {relation}: arrows do not compose in term {term}")]
    BrokenPath { relation: usize, term: usize },
    #[error("relation {relation}: paths are not parallel")]
    NonParallelRelation { relation: usize },
    #[error("relation {relation}: paths have different lengths")]
    NonHomogeneousRelation { relation: usize },
    #[error("relation {relation}: has no terms")]
    EmptyRelation { relation: usize },
    #[error("relation {relation}: zero coefficient in term {term}")]
    ZeroCoefficient { relation: usize, term: usize },
    #[error("relation {relation}: path repeated in term {term}")]
    RepeatedPath { relation: usize, term: usize },
    #[error("relation {relation}: contains a lazy path")]
    LazyPath { relation: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub id: String,
    pub label: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    /// Type tag in `1..=n+1` for the type-A quivers.
    pub ty: Option<u32>,
}

#[derive(Clone, Debug, Default)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, label: Option<Vec<i64>>) -> Result<usize, QuiverError> {
        let id = id.into();
        if self.vertex_index.contains_key(&id) {
            return Err(QuiverError::DuplicateVertex(id));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(id.clone(), idx);
        self.vertices.push(Vertex { id, label });
        Ok(idx)
    }

    pub fn add_arrow(
        &mut self,
        id: impl Into<String>,
        source: usize,
        target: usize,
        ty: Option<u32>,
    ) -> Result<usize, QuiverError> {
        let id = id.into();
        if self.arrow_index.contains_key(&id) {
            return Err(QuiverError::DuplicateArrow(id));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(QuiverError::DanglingArrow { arrow: id, vertex: format!("#{v}") });
            }
        }
        let idx = self.arrows.len();
        self.arrow_index.insert(id.clone(), idx);
        self.arrows.push(Arrow { id, source, target, ty });
        Ok(idx)
    }

    /// Adds an arrow whose endpoints are given by vertex id.
    pub fn add_arrow_by_ids(
        &mut self,
        id: impl Into<String>,
        source: &str,
        target: &str,
        ty: Option<u32>,
    ) -> Result<usize, QuiverError> {
        let id = id.into();
        let s = self
            .vertex_by_id(source)
            .ok_or_else(|| QuiverError::DanglingArrow { arrow: id.clone(), vertex: source.to_string() })?;
        let t = self
            .vertex_by_id(target)
            .ok_or_else(|| QuiverError::DanglingArrow { arrow: id.clone(), vertex: target.to_string() })?;
        self.add_arrow(id, s, t, ty)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_by_id(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows_to(v).next().is_none()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows_from(v).next().is_none()
    }

    /// Same vertices, every arrow reversed; ids and tags are kept.
    pub fn reversed(&self) -> Quiver {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.id.clone(), v.label.clone()).expect("ids unique");
        }
        for a in &self.arrows {
            q.add_arrow(a.id.clone(), a.target, a.source, a.ty).expect("ids unique");
        }
        q
    }

    /// Same vertices, keeping only arrows for which `keep` holds. Returns
    /// the new quiver and the map old arrow index -> new arrow index.
    pub fn filter_arrows(&self, keep: impl Fn(usize) -> bool) -> (Quiver, Vec<Option<usize>>) {
        let mut q = Quiver::new();
        for v in &self.vertices {
            q.add_vertex(v.id.clone(), v.label.clone()).expect("ids unique");
        }
        let mut map = vec![None; self.arrows.len()];
        for (i, a) in self.arrows.iter().enumerate() {
            if keep(i) {
                map[i] = Some(q.add_arrow(a.id.clone(), a.source, a.target, a.ty).expect("ids unique"));
            }
        }
        (q, map)
    }

    /// Connectedness of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// True if the quiver has no oriented cycles.
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for a in self.arrows_from(v).collect::<Vec<_>>() {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
        seen == n
    }
}

/// A path: a base vertex plus a composable arrow sequence. The empty
/// sequence is the lazy path at the base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(v: usize) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let arr = q.arrow(a);
        Path { start: arr.source, end: arr.target, arrows: vec![a] }
    }

    /// A nonempty path from its arrows.
    pub fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> Result<Self, QuiverError> {
        let first = *arrows.first().ok_or(QuiverError::BrokenPath { position: 0 })?;
        if arrows.iter().any(|&a| a >= q.arrow_count()) {
            let bad = arrows.iter().find(|&&a| a >= q.arrow_count()).unwrap();
            return Err(QuiverError::UnknownArrow(format!("#{bad}")));
        }
        for (k, w) in arrows.windows(2).enumerate() {
            if q.arrow(w[0]).target != q.arrow(w[1]).source {
                return Err(QuiverError::BrokenPath { position: k + 1 });
            }
        }
        let start = q.arrow(first).source;
        let end = q.arrow(*arrows.last().unwrap()).target;
        Ok(Path { start, end, arrows })
    }

    pub fn from_ids(q: &Quiver, ids: &[&str]) -> Result<Self, QuiverError> {
        let arrows = ids
            .iter()
            .map(|id| q.arrow_by_id(id).ok_or_else(|| QuiverError::UnknownArrow(id.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(q, arrows)
    }

    pub fn source(&self) -> usize {
        self.start
    }

    pub fn target(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` then `other`; `None` if the endpoints do not meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    /// The same arrows read backwards, as a path in the opposite quiver.
    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { start: self.end, end: self.start, arrows }
    }

    pub fn contains_arrow(&self, a: usize) -> bool {
        self.arrows.contains(&a)
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e_{}", q.vertex(self.start).id)
        } else {
            self.arrows.iter().map(|&a| q.arrow(a).id.as_str()).collect::<Vec<_>>().join("·")
        }
    }

    /// Re-indexes arrows through `map` (old index -> new index); `None` if
    /// some arrow is dropped.
    pub fn remap(&self, map: &[Option<usize>]) -> Option<Path> {
        let arrows = self.arrows.iter().map(|&a| map[a]).collect::<Option<Vec<_>>>()?;
        Some(Path { start: self.start, end: self.end, arrows })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Direction::Forward => 1,
            Direction::Backward => -1,
        }
    }
}

/// A walk: arrows traversed forwards or backwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: usize,
    pub steps: Vec<(usize, Direction)>,
}

impl Walk {
    pub fn lazy(v: usize) -> Self {
        Walk { start: v, steps: Vec::new() }
    }

    pub fn new(q: &Quiver, start: usize, steps: Vec<(usize, Direction)>) -> Result<Self, QuiverError> {
        let mut at = start;
        for (k, &(a, d)) in steps.iter().enumerate() {
            let arr = q.arrow(a);
            let (from, to) = match d {
                Direction::Forward => (arr.source, arr.target),
                Direction::Backward => (arr.target, arr.source),
            };
            if from != at {
                return Err(QuiverError::BrokenPath { position: k });
            }
            at = to;
        }
        Ok(Walk { start, steps })
    }

    pub fn from_path(p: &Path) -> Self {
        Walk {
            start: p.source(),
            steps: p.arrows().iter().map(|&a| (a, Direction::Forward)).collect(),
        }
    }

    pub fn end(&self, q: &Quiver) -> usize {
        self.steps.iter().fold(self.start, |at, &(a, d)| {
            let arr = q.arrow(a);
            match d {
                Direction::Forward => {
                    debug_assert_eq!(arr.source, at);
                    arr.target
                }
                Direction::Backward => {
                    debug_assert_eq!(arr.target, at);
                    arr.source
                }
            }
        })
    }

    pub fn is_cyclic(&self, q: &Quiver) -> bool {
        self.end(q) == self.start
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn concat(&self, q: &Quiver, other: &Walk) -> Result<Walk, QuiverError> {
        let end = self.end(q);
        if end != other.start {
            return Err(QuiverError::EndpointMismatch {
                end: q.vertex(end).id.clone(),
                start: q.vertex(other.start).id.clone(),
            });
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk { start: self.start, steps })
    }

    pub fn inverse(&self, q: &Quiver) -> Walk {
        Walk {
            start: self.end(q),
            steps: self.steps.iter().rev().map(|&(a, d)| (a, d.flip())).collect(),
        }
    }

    /// Cancels adjacent `a·a⁻¹` and `a⁻¹·a` pairs until none remain.
    pub fn reduced(&self) -> Walk {
        let mut out: Vec<(usize, Direction)> = Vec::with_capacity(self.steps.len());
        for &(a, d) in &self.steps {
            if let Some(&(b, e)) = out.last() {
                if b == a && e == d.flip() {
                    out.pop();
                    continue;
                }
            }
            out.push((a, d));
        }
        Walk { start: self.start, steps: out }
    }
}

/// `p` followed by `q`.
pub fn concat_walks(quiver: &Quiver, p: &Walk, q: &Walk) -> Result<Walk, QuiverError> {
    p.concat(quiver, q)
}

pub fn invert_walk(quiver: &Quiver, p: &Walk) -> Walk {
    p.inverse(quiver)
}

/// A linear combination of parallel paths of equal length, set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationElement {
    pub terms: Vec<(Rational, Path)>,
}

impl RelationElement {
    pub fn new(terms: Vec<(Rational, Path)>) -> Self {
        RelationElement { terms }
    }

    pub fn monomial(p: Path) -> Self {
        RelationElement { terms: vec![(num_traits::One::one(), p)] }
    }

    /// `p - q`.
    pub fn commutation(p: Path, q: Path) -> Self {
        RelationElement {
            terms: vec![(num_traits::One::one(), p), (-Rational::from_integer(1.into()), q)],
        }
    }

    pub fn source(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.source())
    }

    pub fn target(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.target())
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.len())
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.terms
            .iter()
            .map(|(c, p)| format!("({c})·{}", p.display(q)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A quiver with homogeneous relations: the presentation of `kQ/(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    pub quiver: Quiver,
    pub relations: Vec<RelationElement>,
}

impl AlgebraPresentation {
    pub fn new(quiver: Quiver, relations: Vec<RelationElement>) -> Self {
        AlgebraPresentation { quiver, relations }
    }

    pub fn path_algebra(quiver: Quiver) -> Self {
        AlgebraPresentation { quiver, relations: Vec::new() }
    }

    pub fn validate(&self) -> Result<(), PresentationError> {
        validate_presentation(self)
    }

    pub fn opposite(&self) -> AlgebraPresentation {
        opposite(self)
    }

    /// Relations whose paths start at `v`.
    pub fn relations_from(&self, v: usize) -> impl Iterator<Item = (usize, &RelationElement)> {
        self.relations.iter().enumerate().filter(move |(_, r)| r.source() == Some(v))
    }

    /// Largest relation degree, zero without relations.
    pub fn max_relation_degree(&self) -> usize {
        self.relations.iter().filter_map(RelationElement::degree).max().unwrap_or(0)
    }
}

pub fn validate_presentation(p: &AlgebraPresentation) -> Result<(), PresentationError> {
    let q = &p.quiver;
    for (ri, rel) in p.relations.iter().enumerate() {
        if rel.terms.is_empty() {
            return Err(PresentationError::EmptyRelation { relation: ri });
        }
        let mut seen = HashSet::new();
        for (ti, (c, path)) in rel.terms.iter().enumerate() {
            if let Some(&bad) = path.arrows().iter().find(|&&a| a >= q.arrow_count()) {
                return Err(PresentationError::DanglingArrow { relation: ri, arrow: bad });
            }
            if path.is_empty() {
                return Err(PresentationError::LazyPath { relation: ri });
            }
            let consistent = Path::from_arrows(q, path.arrows().to_vec())
                .map(|checked| checked.source() == path.source() && checked.target() == path.target())
                .unwrap_or(false);
            if !consistent {
                return Err(PresentationError::BrokenPath { relation: ri, term: ti });
            }
            if c.is_zero() {
                return Err(PresentationError::ZeroCoefficient { relation: ri, term: ti });
            }
            if !seen.insert(path.arrows().to_vec()) {
                return Err(PresentationError::RepeatedPath { relation: ri, term: ti });
            }
        }
        let (_, first) = &rel.terms[0];
        if rel.terms.iter().any(|(_, path)| path.source() != first.source() || path.target() != first.target()) {
            return Err(PresentationError::NonParallelRelation { relation: ri });
        }
        if rel.terms.iter().any(|(_, path)| path.len() != first.len()) {
            return Err(PresentationError::NonHomogeneousRelation { relation: ri });
        }
    }
    Ok(())
}

/// All paths of length at most `max_len`, grouped by `(source, target, length)`.
pub fn enumerate_paths(q: &Quiver, max_len: usize) -> BTreeMap<(usize, usize, usize), Vec<Path>> {
    let mut out: BTreeMap<(usize, usize, usize), Vec<Path>> = BTreeMap::new();
    let mut frontier: Vec<Path> = (0..q.vertex_count()).map(Path::lazy).collect();
    for len in 0..=max_len {
        for p in &frontier {
            out.entry((p.source(), p.target(), len)).or_default().push(p.clone());
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                next.push(p.concat(&Path::arrow(q, a)).expect("composable"));
            }
        }
        frontier = next;
    }
    out
}

/// The opposite presentation: arrows reversed, relation paths read
/// backwards, coefficients unchanged.
pub fn opposite(p: &AlgebraPresentation) -> AlgebraPresentation {
    AlgebraPresentation {
        quiver: p.quiver.reversed(),
        relations: p
            .relations
            .iter()
            .map(|r| RelationElement {
                terms: r.terms.iter().map(|(c, path)| (c.clone(), path.reversed())).collect(),
            })
            .collect(),
    }
}
