//! The type-A quivers `Q^(n,s)`, their preprojective presentations, cuts
//! and cut mutation.
//!
//! Vertices are compositions `ℓ` of `s-1` into `n+1` nonnegative parts,
//! listed in descending lexicographic order. The arrow of type `i` goes
//! `x -> x + f_i` with `f_i = -e_i + e_{i+1}` (indices mod `n+1`).

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::quiver::{AlgebraPresentation, Path, Quiver, RelationElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TypeAError {
    #[error("n and s must be at least 1")]
    InvalidParameters,
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex `{0}` is not a source of the cut quiver")]
    NotASource(String),
    #[error("vertex `{0}` is not a sink of the cut quiver")]
    NotASink(String),
    #[error("arrow set is not a cut")]
    NotACut,
    #[error("type sequence does not extend to a cycle through the vertex")]
    InvalidPrefix,
}

/// Mutation direction: `Plus` at sources, `Minus` at sinks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    Plus,
    Minus,
}

impl std::str::FromStr for Dir {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "+" | "plus" => Ok(Dir::Plus),
            "-" | "minus" => Ok(Dir::Minus),
            _ => Err(format!("direction must be + or -, got `{s}`")),
        }
    }
}

/// A set of arrows of `Q^(n,s)`, by arrow index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Cut(pub BTreeSet<usize>);

impl Cut {
    pub fn contains(&self, a: usize) -> bool {
        self.0.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn arrows(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// Sorted arrow ids.
    pub fn ids(&self, q: &Quiver) -> Vec<String> {
        let mut ids: Vec<String> = self.0.iter().map(|&a| q.arrow(a).id.clone()).collect();
        ids.sort();
        ids
    }

    pub fn from_ids<S: AsRef<str>>(q: &Quiver, ids: &[S]) -> Result<Cut, TypeAError> {
        ids.iter()
            .map(|id| q.arrow_by_id(id.as_ref()).ok_or_else(|| TypeAError::UnknownArrow(id.as_ref().to_string())))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(Cut)
    }
}

/// An `(n+1)`-cycle: start vertex, type sequence and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub start: usize,
    pub types: Vec<u32>,
    pub arrows: Vec<usize>,
}

/// Vertex id: digits run together, or comma-separated if any part exceeds 9.
pub fn vertex_id(label: &[i64]) -> String {
    if label.iter().all(|&v| (0..10).contains(&v)) {
        label.iter().map(|v| v.to_string()).collect()
    } else {
        label.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `Q^(n,s)` with lookup tables.
#[derive(Clone, Debug)]
pub struct TypeA {
    pub n: usize,
    pub s: usize,
    quiver: Quiver,
    labels: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// `by_type[v][i-1]`: the arrow of type `i` out of `v`.
    by_type: Vec<Vec<Option<usize>>>,
}

impl TypeA {
    pub fn new(n: usize, s: usize) -> Result<Self, TypeAError> {
        if n == 0 || s == 0 {
            return Err(TypeAError::InvalidParameters);
        }
        let labels = compositions(s as i64 - 1, n + 1);
        let mut quiver = Quiver::new();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            quiver.add_vertex(vertex_id(l), Some(l.clone())).expect("distinct compositions");
            index.insert(l.clone(), i);
        }
        let mut by_type = vec![vec![None; n + 1]; labels.len()];
        for (v, l) in labels.iter().enumerate() {
            for t in 1..=n + 1 {
                if let Some(w) = Self::step(&index, n, l, t) {
                    let id = format!("{}>{}", vertex_id(l), vertex_id(&labels[w]));
                    by_type[v][t - 1] = Some(quiver.add_arrow(id, v, w, Some(t as u32)).expect("distinct arrows"));
                }
            }
        }
        Ok(TypeA { n, s, quiver, labels, index, by_type })
    }

    fn step(index: &HashMap<Vec<i64>, usize>, n: usize, l: &[i64], t: usize) -> Option<usize> {
        let mut m = l.to_vec();
        m[t - 1] -= 1;
        m[t % (n + 1)] += 1;
        index.get(&m).copied()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn label(&self, v: usize) -> &[i64] {
        &self.labels[v]
    }

    pub fn vertex_by_label(&self, l: &[i64]) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Accepts a vertex id such as `200` or `1,0,10`.
    pub fn vertex(&self, id: &str) -> Result<usize, TypeAError> {
        self.quiver.vertex_by_id(id).ok_or_else(|| TypeAError::UnknownVertex(id.to_string()))
    }

    /// Arrow of type `t` out of `v`, if `v + f_t` is a vertex.
    pub fn arrow_of_type(&self, v: usize, t: u32) -> Option<usize> {
        self.by_type[v][t as usize - 1]
    }

    pub fn arrow_type(&self, a: usize) -> u32 {
        self.quiver.arrow(a).ty.expect("type-A arrows carry a type")
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Type-`i` arrows followed by type-`j` arrows, keyed by start vertex.
    fn path_of_types(&self, x: usize, types: &[u32]) -> Option<Vec<usize>> {
        let mut at = x;
        let mut arrows = Vec::with_capacity(types.len());
        for &t in types {
            let a = self.arrow_of_type(at, t)?;
            arrows.push(a);
            at = self.quiver.arrow(a).target;
        }
        Some(arrows)
    }

    /// `Λ̂^(n,s)`: for each `x` and types `i ≠ j`, the paths of types
    /// `(i, j)` and `(j, i)` from `x` commute when both exist; a lone one is zero.
    pub fn preprojective_presentation(&self) -> AlgebraPresentation {
        let q = &self.quiver;
        let mut rels = Vec::new();
        let k = self.n as u32 + 1;
        for x in 0..self.vertex_count() {
            for i in 1..=k {
                for j in i + 1..=k {
                    let p = self.path_of_types(x, &[i, j]);
                    let r = self.path_of_types(x, &[j, i]);
                    let path = |arrows: Vec<usize>| Path::from_arrows(q, arrows).expect("composable");
                    match (p, r) {
                        (Some(p), Some(r)) => rels.push(RelationElement::commutation(path(p), path(r))),
                        (Some(p), None) | (None, Some(p)) => rels.push(RelationElement::monomial(path(p))),
                        (None, None) => {}
                    }
                }
            }
        }
        AlgebraPresentation::new(q.clone(), rels)
    }

    /// All `(n+1)`-cycles, each using every type once, starting at its
    /// lexicographically smallest vertex label; ordered by arrow set.
    pub fn cycles(&self) -> Vec<Cycle> {
        let k = self.n as u32 + 1;
        let mut seen: BTreeMap<Vec<usize>, Cycle> = BTreeMap::new();
        let mut perm: Vec<u32> = (1..=k).collect();
        let mut perms = Vec::new();
        permutations(&mut perm, 0, &mut perms);
        for x in 0..self.vertex_count() {
            for sigma in &perms {
                let Some(arrows) = self.path_of_types(x, sigma) else { continue };
                let mut key = arrows.clone();
                key.sort_unstable();
                if seen.contains_key(&key) {
                    continue;
                }
                let verts: Vec<usize> = arrows.iter().map(|&a| self.quiver.arrow(a).source).collect();
                let rot = (0..verts.len()).min_by_key(|&i| &self.labels[verts[i]]).unwrap();
                let mut arrows = arrows;
                arrows.rotate_left(rot);
                let types = arrows.iter().map(|&a| self.arrow_type(a)).collect();
                seen.insert(key, Cycle { start: verts[rot], types, arrows });
            }
        }
        seen.into_values().collect()
    }

    pub fn is_cut(&self, c: &Cut) -> bool {
        self.cycles().iter().all(|cy| cy.arrows.iter().filter(|&&a| c.contains(a)).count() == 1)
    }

    /// `C₀`: all arrows of type `n+1`.
    pub fn standard_cut(&self) -> Cut {
        let t = self.n as u32 + 1;
        Cut((0..self.quiver.arrow_count()).filter(|&a| self.arrow_type(a) == t).collect())
    }

    /// All cuts, by exact cover of the cycles; sorted.
    pub fn enumerate_cuts(&self) -> Vec<Cut> {
        let cycles = self.cycles();
        let na = self.quiver.arrow_count();
        let mut cycles_of: Vec<Vec<usize>> = vec![Vec::new(); na];
        for (ci, cy) in cycles.iter().enumerate() {
            for &a in &cy.arrows {
                cycles_of[a].push(ci);
            }
        }
        let mut out = Vec::new();
        let mut covered = vec![false; cycles.len()];
        let mut chosen = Vec::new();
        exact_cover(&cycles, &cycles_of, &mut covered, &mut chosen, &mut out);
        let mut cuts: Vec<Cut> = out.into_iter().map(|v| Cut(v.into_iter().collect())).collect();
        cuts.sort();
        cuts.dedup();
        cuts
    }

    /// `Q_C`: the quiver without the cut arrows, and the old -> new arrow map.
    pub fn cut_quiver(&self, c: &Cut) -> (Quiver, Vec<Option<usize>>) {
        self.quiver.filter_arrows(|a| !c.contains(a))
    }

    pub fn is_source_of_cut(&self, c: &Cut, x: usize) -> bool {
        self.quiver.arrows_to(x).all(|a| c.contains(a))
    }

    pub fn is_sink_of_cut(&self, c: &Cut, x: usize) -> bool {
        self.quiver.arrows_from(x).all(|a| c.contains(a))
    }

    /// `μ⁺ₓ` at a source of `Q_C` moves the cut from the arrows into `x`
    /// to the arrows out of `x`; `μ⁻ₓ` is the reverse at a sink.
    pub fn mutate_cut(&self, c: &Cut, x: usize, dir: Dir) -> Result<Cut, TypeAError> {
        let q = &self.quiver;
        let (into, out): (Vec<usize>, Vec<usize>) = (q.arrows_to(x).collect(), q.arrows_from(x).collect());
        let (remove, add) = match dir {
            Dir::Plus => {
                if !self.is_source_of_cut(c, x) {
                    return Err(TypeAError::NotASource(q.vertex(x).id.clone()));
                }
                (into, out)
            }
            Dir::Minus => {
                if !self.is_sink_of_cut(c, x) {
                    return Err(TypeAError::NotASink(q.vertex(x).id.clone()));
                }
                (out, into)
            }
        };
        let mut next = c.0.clone();
        for a in remove {
            next.remove(&a);
        }
        next.extend(add);
        Ok(Cut(next))
    }

    /// `Λ_C = Λ̂/(C)`: cut arrows deleted, terms through them dropped,
    /// emptied relations discarded.
    pub fn cut_algebra(&self, c: &Cut) -> Result<AlgebraPresentation, TypeAError> {
        if !self.is_cut(c) {
            return Err(TypeAError::NotACut);
        }
        let full = self.preprojective_presentation();
        let (q, map) = self.cut_quiver(c);
        let relations = full
            .relations
            .iter()
            .filter_map(|r| {
                let terms: Vec<_> =
                    r.terms.iter().filter_map(|(coef, p)| p.remap(&map).map(|p| (coef.clone(), p))).collect();
                (!terms.is_empty()).then(|| RelationElement::new(terms))
            })
            .collect();
        Ok(AlgebraPresentation::new(q, relations))
    }

    /// Cuts as nodes, an edge `{C, μ⁺ₓ(C)}` for every source `x` of `Q_C`.
    pub fn mutation_graph(&self) -> MutationGraph {
        let cuts = self.enumerate_cuts();
        let pos: HashMap<&Cut, usize> = cuts.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut edges = BTreeSet::new();
        for (i, c) in cuts.iter().enumerate() {
            for x in 0..self.vertex_count() {
                if let Ok(m) = self.mutate_cut(c, x, Dir::Plus) {
                    let j = pos[&m];
                    if i != j {
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
        let edges = edges.into_iter().collect();
        MutationGraph { cuts, edges }
    }

    /// Extends `prefix` to a permutation of types whose partial sums from
    /// `x` all stay in `Q_0`.
    pub fn complete_to_cycle(&self, x: usize, prefix: &[u32]) -> Result<Vec<u32>, TypeAError> {
        let k = self.n as u32 + 1;
        let mut used = vec![false; k as usize + 1];
        let mut at = x;
        for &t in prefix {
            if t == 0 || t > k || used[t as usize] {
                return Err(TypeAError::InvalidPrefix);
            }
            used[t as usize] = true;
            at = self.quiver.arrow(self.arrow_of_type(at, t).ok_or(TypeAError::InvalidPrefix)?).target;
        }
        let mut seq = prefix.to_vec();
        if self.extend_cycle(at, &mut used, &mut seq) {
            Ok(seq)
        } else {
            Err(TypeAError::InvalidPrefix)
        }
    }

    fn extend_cycle(&self, at: usize, used: &mut [bool], seq: &mut Vec<u32>) -> bool {
        if seq.len() == self.n + 1 {
            return true;
        }
        for t in 1..=self.n as u32 + 1 {
            if used[t as usize] {
                continue;
            }
            if let Some(a) = self.arrow_of_type(at, t) {
                used[t as usize] = true;
                seq.push(t);
                if self.extend_cycle(self.quiver.arrow(a).target, used, seq) {
                    return true;
                }
                seq.pop();
                used[t as usize] = false;
            }
        }
        false
    }
}

fn permutations(v: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn exact_cover(
    cycles: &[Cycle],
    cycles_of: &[Vec<usize>],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    // most constrained uncovered cycle first
    let next = (0..cycles.len())
        .filter(|&c| !covered[c])
        .min_by_key(|&c| cycles[c].arrows.iter().filter(|&&a| cycles_of[a].iter().all(|&d| !covered[d])).count());
    let Some(c) = next else {
        out.push(chosen.clone());
        return;
    };
    for &a in &cycles[c].arrows {
        if cycles_of[a].iter().any(|&d| covered[d]) {
            continue;
        }
        for &d in &cycles_of[a] {
            covered[d] = true;
        }
        chosen.push(a);
        exact_cover(cycles, cycles_of, covered, chosen, out);
        chosen.pop();
        for &d in &cycles_of[a] {
            covered[d] = false;
        }
    }
}

/// Cuts linked by single mutations; `edges` are index pairs `(i, j)`, `i < j`.
#[derive(Clone, Debug)]
pub struct MutationGraph {
    pub cuts: Vec<Cut>,
    pub edges: Vec<(usize, usize)>,
}

impl MutationGraph {
    pub fn is_connected(&self) -> bool {
        let n = self.cuts.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn counts_match_binomials() {
        for n in 1..=4 {
            for s in 2..=6 {
                let t = TypeA::new(n, s).unwrap();
                assert_eq!(t.vertex_count(), binom(s - 1 + n, n));
                assert_eq!(t.quiver().arrow_count(), (n + 1) * binom(s - 2 + n, n));
            }
        }
        let t = TypeA::new(2, 1).unwrap();
        assert_eq!((t.vertex_count(), t.quiver().arrow_count()), (1, 0));
    }

    #[test]
    fn q14_vertices_and_arrows() {
        let t = TypeA::new(1, 4).unwrap();
        let ids: Vec<_> = t.quiver().vertices().iter().map(|v| v.id.as_str()).collect();
        assert_eq!(ids, ["30", "21", "12", "03"]);
        for ty in 1..=2 {
            assert_eq!(t.quiver().arrows().iter().filter(|a| a.ty == Some(ty)).count(), 3);
        }
        let c0 = t.standard_cut();
        assert_eq!(c0.ids(t.quiver()), ["03>12", "12>21", "21>30"]);
    }

    #[test]
    fn wide_labels_use_commas() {
        assert_eq!(vertex_id(&[10, 0]), "10,0");
        assert_eq!(vertex_id(&[2, 0, 1]), "201");
    }

    #[test]
    fn cycles_of_small_instances() {
        assert_eq!(TypeA::new(2, 2).unwrap().cycles().len(), 1);
        let t = TypeA::new(2, 3).unwrap();
        let cycles = t.cycles();
        assert_eq!(cycles.len(), 4);
        let mut sets: Vec<Vec<&str>> = cycles
            .iter()
            .map(|c| {
                let mut v: Vec<&str> = c.arrows.iter().map(|&a| t.quiver().vertex(t.quiver().arrow(a).source).id.as_str()).collect();
                v.sort();
                v
            })
            .collect();
        sets.sort();
        assert_eq!(sets, vec![vec!["002", "011", "101"], vec!["011", "020", "110"], vec!["011", "101", "110"], vec!["101", "110", "200"]]);
        for s in 2..=6 {
            assert_eq!(TypeA::new(1, s).unwrap().cycles().len(), s - 1);
        }
    }

    #[test]
    fn cut_examples() {
        let t = TypeA::new(2, 2).unwrap();
        assert!(t.is_cut(&t.standard_cut()));
        assert!(!t.is_cut(&Cut::default()));
        assert_eq!(t.enumerate_cuts().len(), 3);
        assert_eq!(TypeA::new(2, 3).unwrap().enumerate_cuts().len(), 12);
        for s in 2..=6 {
            assert_eq!(TypeA::new(1, s).unwrap().enumerate_cuts().len(), 1 << (s - 1));
        }
    }

    #[test]
    fn two_arrows_of_one_cycle_is_not_a_cut() {
        let t = TypeA::new(2, 3).unwrap();
        let q = t.quiver();
        // two arrows of the inner cycle 110 -> 101 -> 011 -> 110
        let c = Cut::from_ids(q, &["110>101", "011>110"]).unwrap();
        assert!(!t.is_cut(&c));
    }

    #[test]
    fn mutation_on_the_triangle() {
        let t = TypeA::new(2, 2).unwrap();
        let q = t.quiver();
        let c0 = t.standard_cut();
        assert_eq!(c0.ids(q), ["001>100"]);
        let x = t.vertex("100").unwrap();
        let m = t.mutate_cut(&c0, x, Dir::Plus).unwrap();
        assert_eq!(m.ids(q), ["100>010"]);
        assert_eq!(t.mutate_cut(&m, x, Dir::Minus).unwrap(), c0);
        let sink = t.vertex("001").unwrap();
        assert_eq!(t.mutate_cut(&c0, sink, Dir::Plus), Err(TypeAError::NotASource("001".into())));
    }

    #[test]
    fn mutation_graphs_are_connected() {
        for (n, s, count) in [(2, 2, 3), (2, 3, 12), (1, 3, 4)] {
            let g = TypeA::new(n, s).unwrap().mutation_graph();
            assert_eq!(g.cuts.len(), count);
            assert!(g.is_connected());
        }
        assert_eq!(TypeA::new(2, 2).unwrap().mutation_graph().edges.len(), 3);
    }

    #[test]
    fn preprojective_small_cases() {
        let p = TypeA::new(1, 2).unwrap().preprojective_presentation();
        assert_eq!(p.relations.len(), 2);
        assert!(p.relations.iter().all(|r| r.terms.len() == 1));
        let p = TypeA::new(2, 2).unwrap().preprojective_presentation();
        assert_eq!(p.relations.len(), 3);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn cut_algebra_of_triangle_is_rad_square_a3() {
        let t = TypeA::new(2, 2).unwrap();
        let p = t.cut_algebra(&t.standard_cut()).unwrap();
        assert_eq!(p.quiver.arrow_count(), 2);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].terms.len(), 1);
        assert_eq!(p.relations[0].terms[0].1.len(), 2);
        assert_eq!(t.cut_algebra(&Cut::default()), Err(TypeAError::NotACut));
    }

    #[test]
    fn cycle_completion() {
        let t = TypeA::new(2, 2).unwrap();
        assert_eq!(t.complete_to_cycle(t.vertex("100").unwrap(), &[1]).unwrap(), vec![1, 2, 3]);
        let t = TypeA::new(2, 3).unwrap();
        let c = t.complete_to_cycle(t.vertex("110").unwrap(), &[2]).unwrap();
        assert_eq!(c[0], 2);
        assert_eq!(c.len(), 3);
        assert_eq!(t.complete_to_cycle(t.vertex("200").unwrap(), &[2]), Err(TypeAError::InvalidPrefix));
    }
}
