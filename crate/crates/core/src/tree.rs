//! Finite balls of the Cayley tree `Γ^k`.
//!
//! A [`TreeVolume`] materializes the ball `V_n` around the root `x⁰` together
//! with the halo sphere `W_{n+1}` and every edge into it, so that all edges of
//! `L_{n+1}` are present. Vertices are numbered breadth-first with the root at
//! index 0, which makes every ball `V_m` a prefix of the vertex range. Each
//! non-root vertex owns exactly one edge, the one to its parent, and edges are
//! identified by that child vertex.

use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Budget, Error, Result};

/// A vertex of a [`TreeVolume`], by breadth-first index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(u32);

impl Vertex {
    pub const ROOT: Vertex = Vertex(0);

    #[inline]
    pub fn new(index: usize) -> Self {
        Vertex(index as u32)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An edge of a [`TreeVolume`], identified by its endpoint farther from the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(u32);

impl EdgeId {
    /// The edge joining `child` to its parent. `child` must not be the root.
    #[inline]
    pub fn above(child: Vertex) -> Self {
        debug_assert!(child != Vertex::ROOT);
        EdgeId(child.0)
    }

    #[inline]
    pub fn child(self) -> Vertex {
        Vertex(self.0)
    }

    /// Dense 0-based edge index.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct TreeVolume {
    k: usize,
    n: usize,
    parent: Vec<u32>,
    depth: Vec<u32>,
    /// Generator label of the edge to the parent; 0 for the root.
    label: Vec<u8>,
    /// First child of each vertex of `V_n`.
    first_child: Vec<u32>,
    /// `level_start[m]` is the index of the first vertex of `W_m`, for
    /// `m = 0..=n+2`; the last entry is the total vertex count.
    level_start: Vec<usize>,
}

/// `|V_m|` for the Cayley tree of order `k`, or `None` on overflow.
pub fn ball_size(k: usize, m: usize) -> Option<u128> {
    let mut total: u128 = 1;
    let mut sphere: u128 = 1;
    for level in 1..=m {
        sphere = if level == 1 {
            (k as u128).checked_add(1)?
        } else {
            sphere.checked_mul(k as u128)?
        };
        total = total.checked_add(sphere)?;
    }
    Some(total)
}

/// `|W_m|` for the Cayley tree of order `k`, or `None` on overflow.
pub fn sphere_size(k: usize, m: usize) -> Option<u128> {
    if m == 0 {
        return Some(1);
    }
    let mut s = (k as u128).checked_add(1)?;
    for _ in 1..m {
        s = s.checked_mul(k as u128)?;
    }
    Some(s)
}

/// Builds `V_n` plus its halo with the default [`Budget`].
pub fn build_volume(k: usize, n: usize) -> Result<TreeVolume> {
    build_volume_with(k, n, &Budget::default())
}

pub fn build_volume_with(k: usize, n: usize, budget: &Budget) -> Result<TreeVolume> {
    if k < 2 {
        return Err(Error::Domain(alloc::format!(
            "tree order k must be at least 2, got {k}"
        )));
    }
    let total = ball_size(k, n + 1).unwrap_or(u128::MAX);
    if total > budget.max_vertices as u128 || total > u32::MAX as u128 {
        return Err(Error::BudgetExceeded {
            quantity: "|V_{n+1}|",
            requested: total,
            limit: budget.max_vertices as u128,
        });
    }
    let total = total as usize;

    let mut parent = Vec::with_capacity(total);
    let mut depth = Vec::with_capacity(total);
    let mut label = Vec::with_capacity(total);
    let mut first_child = Vec::with_capacity(ball_size(k, n).unwrap() as usize);
    let mut level_start = Vec::with_capacity(n + 3);

    parent.push(NO_PARENT);
    depth.push(0u32);
    label.push(0u8);
    level_start.push(0);

    // Breadth-first: the children of vertex v are appended when v is visited,
    // so they occupy a contiguous block.
    let mut v = 0usize;
    while v < parent.len() {
        let d = depth[v] as usize;
        if d > n {
            break;
        }
        if level_start.len() <= d + 1 {
            level_start.push(parent.len());
        }
        first_child.push(parent.len() as u32);
        let own = label[v];
        for g in 1..=(k + 1) as u8 {
            if g == own {
                continue;
            }
            parent.push(v as u32);
            depth.push(d as u32 + 1);
            label.push(g);
        }
        v += 1;
    }
    level_start.push(parent.len());
    debug_assert_eq!(parent.len(), total);
    debug_assert_eq!(level_start.len(), n + 3);

    Ok(TreeVolume {
        k,
        n,
        parent,
        depth,
        label,
        first_child,
        level_start,
    })
}

impl TreeVolume {
    /// Order of the tree: every vertex has `k + 1` neighbours.
    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Radius `n` of the ball `V_n`; the halo is `W_{n+1}`.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// `|V_{n+1}|`, the number of materialized vertices.
    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.parent.len()
    }

    /// `|L_{n+1}| = |V_{n+1}| - 1`.
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.parent.len() - 1
    }

    /// `|V_m|` for `m <= n + 1`.
    pub fn ball_len(&self, m: usize) -> usize {
        assert!(m <= self.n + 1, "ball radius {m} beyond the volume");
        self.level_start[m + 1]
    }

    /// `|V_n|`, the number of free sites.
    #[inline]
    pub fn inner_len(&self) -> usize {
        self.level_start[self.n + 1]
    }

    /// Vertices of the sphere `W_m` for `m <= n + 1`.
    pub fn sphere(&self, m: usize) -> impl Iterator<Item = Vertex> {
        assert!(m <= self.n + 1, "sphere radius {m} beyond the volume");
        (self.level_start[m]..self.level_start[m + 1]).map(Vertex::new)
    }

    pub fn sphere_range(&self, m: usize) -> Range<usize> {
        self.level_start[m]..self.level_start[m + 1]
    }

    /// The halo sphere `W_{n+1}`.
    pub fn halo(&self) -> impl Iterator<Item = Vertex> {
        self.sphere(self.n + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.num_vertices()).map(Vertex::new)
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v.index() < self.num_vertices()
    }

    /// Whether `v` lies in `V_n` (not in the halo).
    #[inline]
    pub fn is_inner(&self, v: Vertex) -> bool {
        v.index() < self.inner_len()
    }

    #[inline]
    pub fn is_halo(&self, v: Vertex) -> bool {
        self.contains(v) && !self.is_inner(v)
    }

    /// `d(x⁰, v)`.
    #[inline]
    pub fn depth(&self, v: Vertex) -> usize {
        self.depth[v.index()] as usize
    }

    #[inline]
    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        match self.parent[v.index()] {
            NO_PARENT => None,
            p => Some(Vertex(p)),
        }
    }

    /// Children of `v` inside the volume; empty for halo vertices.
    pub fn children(&self, v: Vertex) -> Range<usize> {
        if !self.is_inner(v) {
            return 0..0;
        }
        let start = self.first_child[v.index()] as usize;
        let count = if v == Vertex::ROOT { self.k + 1 } else { self.k };
        start..start + count
    }

    /// Neighbours of `v` inside the volume: parent first, then children.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.parent(v)
            .into_iter()
            .chain(self.children(v).map(Vertex::new))
    }

    /// Edges incident to `v` inside the volume.
    pub fn incident_edges(&self, v: Vertex) -> impl Iterator<Item = EdgeId> + '_ {
        let up = self.parent(v).map(|_| EdgeId::above(v));
        up.into_iter()
            .chain(self.children(v).map(|c| EdgeId::above(Vertex::new(c))))
    }

    /// Endpoints `(parent, child)` of an edge.
    #[inline]
    pub fn endpoints(&self, e: EdgeId) -> (Vertex, Vertex) {
        let c = e.child();
        (Vertex(self.parent[c.index()]), c)
    }

    /// Generator label `1..=k+1` carried by the edge.
    #[inline]
    pub fn edge_label(&self, e: EdgeId) -> u8 {
        self.label[e.child().index()]
    }

    pub fn edge_between(&self, u: Vertex, v: Vertex) -> Option<EdgeId> {
        if self.parent(v) == Some(u) {
            Some(EdgeId::above(v))
        } else if self.parent(u) == Some(v) {
            Some(EdgeId::above(u))
        } else {
            None
        }
    }

    /// All edges of `L_{n+1}` in breadth-first order of their child endpoint.
    pub fn edges(&self) -> impl Iterator<Item = EdgeId> {
        (1..self.num_vertices()).map(|c| EdgeId::above(Vertex::new(c)))
    }

    /// `(u, v, label)` triples for every edge, `u` the parent endpoint.
    pub fn edge_list(&self) -> impl Iterator<Item = (Vertex, Vertex, u8)> + '_ {
        self.edges().map(move |e| {
            let (u, v) = self.endpoints(e);
            (u, v, self.edge_label(e))
        })
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::Domain(alloc::format!(
                "vertex {} outside the volume of {} vertices",
                v.index(),
                self.num_vertices()
            )))
        }
    }

    fn check_inner(&self, v: Vertex) -> Result<()> {
        self.check_vertex(v)?;
        if self.is_inner(v) {
            Ok(())
        } else {
            Err(Error::Domain(alloc::format!(
                "vertex {} lies on the halo W_{}",
                v.index(),
                self.n + 1
            )))
        }
    }

    /// Length of the unique path between `x` and `y`.
    pub fn distance(&self, x: Vertex, y: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let (mut a, mut b) = (x, y);
        let mut d = 0;
        while self.depth(a) > self.depth(b) {
            a = self.parent(a).unwrap();
            d += 1;
        }
        while self.depth(b) > self.depth(a) {
            b = self.parent(b).unwrap();
            d += 1;
        }
        while a != b {
            a = self.parent(a).unwrap();
            b = self.parent(b).unwrap();
            d += 2;
        }
        Ok(d)
    }

    /// `∂(A)`: vertices outside `A` adjacent to some vertex of `A`.
    ///
    /// `A` must lie in `V_n`, otherwise part of its boundary would be outside
    /// the materialized volume.
    pub fn vertex_boundary(&self, set: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut members = set.to_vec();
        members.sort_unstable();
        members.dedup();
        for &v in &members {
            self.check_inner(v)?;
        }
        let mut out = Vec::new();
        for &v in &members {
            for w in self.neighbors(v) {
                if members.binary_search(&w).is_err() {
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// `b(K)`: edges outside `E(K)` sharing an endpoint with an edge of `K`.
    ///
    /// On a tree these are the edges incident to `V(K)` that are not in
    /// `E(K)`. For a single-vertex `K` the result is the `k + 1` edges at that
    /// vertex.
    pub fn incident_edge_boundary(&self, sub: &SubgraphHandle) -> Result<Vec<EdgeId>> {
        for &v in sub.vertices() {
            self.check_inner(v)?;
        }
        let mut out = Vec::new();
        for &v in sub.vertices() {
            for e in self.incident_edges(v) {
                if sub.edges().binary_search(&e).is_err() {
                    out.push(e);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Counts connected subgraphs containing `x`, by edge count `1..=max_edges`.
    ///
    /// Entry `s - 1` of the result is the number of connected subgraphs with
    /// exactly `s` edges. `x` must be at least `max_edges` levels away from the
    /// halo so that no subgraph is clipped by the volume.
    pub fn enumerate_connected_subgraphs(&self, x: Vertex, max_edges: usize) -> Result<Vec<u64>> {
        self.check_unclipped(x, max_edges)?;
        let mut counts = alloc::vec![0u64; max_edges];
        if max_edges == 0 {
            return Ok(counts);
        }
        self.for_each_connected_set(x, max_edges + 1, &[], |set| {
            if set.len() >= 2 {
                counts[set.len() - 2] += 1;
            }
        });
        Ok(counts)
    }

    pub(crate) fn check_unclipped(&self, x: Vertex, reach: usize) -> Result<()> {
        self.check_vertex(x)?;
        if self.depth(x) + reach > self.n {
            return Err(Error::Domain(alloc::format!(
                "vertex {} at depth {} is too close to the halo for reach {} in V_{}",
                x.index(),
                self.depth(x),
                reach,
                self.n
            )));
        }
        Ok(())
    }

    /// Visits every connected vertex set containing `x` with at most
    /// `max_vertices` vertices and avoiding `forbidden`, exactly once each.
    ///
    /// Sets grow from `x` through an ordered candidate list: choosing the
    /// `i`-th candidate bans the earlier ones for the rest of that branch, so
    /// each set is reached along a single canonical sequence. The callback
    /// sees the vertices in insertion order. The caller guarantees that no
    /// set can reach the halo's outer side (see [`Self::check_unclipped`]).
    pub fn for_each_connected_set<F>(
        &self,
        x: Vertex,
        max_vertices: usize,
        forbidden: &[Vertex],
        mut visit: F,
    ) where
        F: FnMut(&[Vertex]),
    {
        if max_vertices == 0 || forbidden.contains(&x) {
            return;
        }
        let mut set = alloc::vec![x];
        let candidates: Vec<Vertex> = self
            .neighbors(x)
            .filter(|w| !forbidden.contains(w))
            .collect();
        self.grow(&mut set, &candidates, max_vertices, forbidden, &mut visit);
    }

    fn grow<F>(
        &self,
        set: &mut Vec<Vertex>,
        candidates: &[Vertex],
        max_vertices: usize,
        forbidden: &[Vertex],
        visit: &mut F,
    ) where
        F: FnMut(&[Vertex]),
    {
        visit(set);
        if set.len() == max_vertices {
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            // On a tree the new neighbours of v are fresh: none of them can be
            // adjacent to the current set or to an earlier candidate.
            let mut next: Vec<Vertex> = candidates[i + 1..].to_vec();
            next.extend(
                self.neighbors(v)
                    .filter(|w| !set.contains(w) && !forbidden.contains(w)),
            );
            set.push(v);
            self.grow(set, &next, max_vertices, forbidden, visit);
            set.pop();
        }
    }
}

/// A connected subgraph `K` of a volume, with sorted vertex and edge sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphHandle {
    vertices: Vec<Vertex>,
    edges: Vec<EdgeId>,
}

impl SubgraphHandle {
    /// The subgraph induced by a vertex set, which must be connected.
    ///
    /// On a tree a connected subgraph contains every edge between its
    /// vertices, so this is the only connected subgraph on `vertices`.
    pub fn induced(vol: &TreeVolume, vertices: &[Vertex]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        for &v in &vs {
            vol.check_vertex(v)?;
        }
        let edges: Vec<EdgeId> = vs
            .iter()
            .filter_map(|&v| {
                vol.parent(v)
                    .filter(|p| vs.binary_search(p).is_ok())
                    .map(|_| EdgeId::above(v))
            })
            .collect();
        Self::checked(vs, edges)
    }

    /// The subgraph spanned by an edge set, which must be connected.
    pub fn from_edges(vol: &TreeVolume, edges: &[EdgeId]) -> Result<Self> {
        let mut es = edges.to_vec();
        es.sort_unstable();
        es.dedup();
        let mut vs = Vec::with_capacity(es.len() + 1);
        for &e in &es {
            vol.check_vertex(e.child())?;
            if e.child() == Vertex::ROOT {
                return Err(Error::Domain("the root owns no edge".into()));
            }
            let (u, v) = vol.endpoints(e);
            vs.push(u);
            vs.push(v);
        }
        vs.sort_unstable();
        vs.dedup();
        Self::checked(vs, es)
    }

    fn checked(vertices: Vec<Vertex>, edges: Vec<EdgeId>) -> Result<Self> {
        // A forest on |V| vertices with c components has |V| - c edges.
        if vertices.is_empty() || edges.len() + 1 != vertices.len() {
            return Err(Error::Domain(alloc::format!(
                "subgraph with {} vertices and {} edges is not connected",
                vertices.len(),
                edges.len()
            )));
        }
        Ok(SubgraphHandle { vertices, edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    #[test]
    fn small_volumes_have_closed_form_sizes() {
        let vol = build_volume(2, 2).unwrap();
        assert_eq!(vol.inner_len(), 10);
        assert_eq!(vol.ball_len(2), 10);
        assert_eq!(vol.sphere(3).count(), 12);
        let inner_edges = vol
            .edges()
            .filter(|&e| vol.is_inner(e.child()))
            .count();
        assert_eq!(inner_edges, 9);

        let vol = build_volume(2, 0).unwrap();
        assert_eq!(vol.inner_len(), 1);
        assert_eq!(vol.halo().count(), 3);

        let vol = build_volume(3, 2).unwrap();
        assert_eq!(vol.inner_len(), 17);
        assert_eq!(vol.halo().count(), 36);
    }

    #[test]
    fn breadth_first_count_matches_closed_form() {
        for k in 2..=4 {
            for n in 0..=4 {
                let vol = build_volume(k, n).unwrap();
                // independent BFS over the neighbour relation
                let mut seen = std::vec![false; vol.num_vertices()];
                let mut per_level = std::vec![0usize; n + 2];
                let mut queue = VecDeque::from([(Vertex::ROOT, 0usize)]);
                seen[0] = true;
                while let Some((v, d)) = queue.pop_front() {
                    per_level[d] += 1;
                    for w in vol.neighbors(v) {
                        if !seen[w.index()] {
                            seen[w.index()] = true;
                            queue.push_back((w, d + 1));
                        }
                    }
                }
                for (m, &count) in per_level.iter().enumerate() {
                    assert_eq!(count as u128, sphere_size(k, m).unwrap());
                }
                assert_eq!(vol.num_vertices() as u128, ball_size(k, n + 1).unwrap());
                assert_eq!(
                    vol.inner_len() as u128,
                    1 + (k as u128 + 1) * ((k as u128).pow(n as u32) - 1) / (k as u128 - 1)
                );
            }
        }
    }

    #[test]
    fn every_inner_vertex_has_full_degree() {
        let vol = build_volume(3, 3).unwrap();
        for v in vol.vertices() {
            let deg = vol.neighbors(v).count();
            if vol.is_inner(v) {
                assert_eq!(deg, 4);
            } else {
                assert_eq!(deg, 1);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget {
            max_vertices: 9,
            ..Budget::default()
        };
        match build_volume_with(2, 1, &tight) {
            Err(Error::BudgetExceeded { requested, .. }) => assert_eq!(requested, 10),
            other => panic!("expected budget error, got {other:?}"),
        }
        assert!(build_volume(1, 2).is_err());
    }

    #[test]
    fn distances() {
        let vol = build_volume(2, 2).unwrap();
        assert_eq!(vol.distance(Vertex::ROOT, Vertex::ROOT).unwrap(), 0);
        for w in vol.sphere(2) {
            assert_eq!(vol.distance(Vertex::ROOT, w).unwrap(), 2);
        }
        assert_eq!(vol.distance(Vertex::new(1), Vertex::new(2)).unwrap(), 2);
        let (a, b) = (Vertex::new(4), Vertex::new(20));
        assert_eq!(
            vol.distance(a, b).unwrap(),
            vol.distance(b, a).unwrap()
        );
        assert!(vol.distance(Vertex::ROOT, Vertex::new(1000)).is_err());
    }

    #[test]
    fn vertex_boundary_examples() {
        let vol = build_volume(2, 3).unwrap();
        let b = vol.vertex_boundary(&[Vertex::ROOT]).unwrap();
        assert_eq!(b, std::vec![Vertex::new(1), Vertex::new(2), Vertex::new(3)]);
        assert!(vol.vertex_boundary(&[]).unwrap().is_empty());
        // root, two children, and a grandchild: connected, 5 vertices
        let c = vol.children(Vertex::new(1)).start;
        let set = [
            Vertex::ROOT,
            Vertex::new(1),
            Vertex::new(2),
            Vertex::new(3),
            Vertex::new(c),
        ];
        assert_eq!(vol.vertex_boundary(&set).unwrap().len(), 7);
        let halo_vertex = vol.halo().next().unwrap();
        assert!(vol.vertex_boundary(&[halo_vertex]).is_err());
    }

    #[test]
    fn edge_boundary_examples() {
        let vol = build_volume(2, 3).unwrap();
        let single = SubgraphHandle::induced(&vol, &[Vertex::ROOT]).unwrap();
        assert_eq!(vol.incident_edge_boundary(&single).unwrap().len(), 3);
        let edge = SubgraphHandle::from_edges(&vol, &[EdgeId::above(Vertex::new(1))]).unwrap();
        assert_eq!(vol.incident_edge_boundary(&edge).unwrap().len(), 4);

        let vol3 = build_volume(3, 3).unwrap();
        let c = Vertex::new(vol3.children(Vertex::new(1)).start);
        let path = SubgraphHandle::induced(&vol3, &[Vertex::ROOT, Vertex::new(1), c]).unwrap();
        let b = vol3.incident_edge_boundary(&path).unwrap();
        // explicit adjacency scan
        let scan: Vec<EdgeId> = vol3
            .edges()
            .filter(|&e| {
                let (u, v) = vol3.endpoints(e);
                let inside = |x: Vertex| path.vertices().contains(&x);
                (inside(u) || inside(v)) && !path.edges().contains(&e)
            })
            .collect();
        assert_eq!(b, scan);
        assert_eq!(b.len(), 8);

        assert!(SubgraphHandle::induced(&vol, &[Vertex::new(1), Vertex::new(2)]).is_err());
    }

    #[test]
    fn labels_follow_the_convention() {
        let vol = build_volume(2, 2).unwrap();
        let root_labels: Vec<u8> = vol
            .children(Vertex::ROOT)
            .map(|c| vol.edge_label(EdgeId::above(Vertex::new(c))))
            .collect();
        assert_eq!(root_labels, std::vec![1, 2, 3]);
        let via2 = Vertex::new(2);
        let labels: Vec<u8> = vol
            .children(via2)
            .map(|c| vol.edge_label(EdgeId::above(Vertex::new(c))))
            .collect();
        assert_eq!(labels, std::vec![1, 3]);
    }

    #[test]
    fn subgraph_counts_small_sizes() {
        let vol = build_volume(2, 3).unwrap();
        let counts = vol.enumerate_connected_subgraphs(Vertex::ROOT, 3).unwrap();
        assert_eq!(counts[0], 3);
        // both-at-root 3, plus root edge then one of its 2 child edges 6
        assert_eq!(counts[1], 9);
        assert!(vol
            .enumerate_connected_subgraphs(Vertex::ROOT, 0)
            .unwrap()
            .is_empty());
        assert!(vol.enumerate_connected_subgraphs(Vertex::ROOT, 4).is_err());
    }

    #[test]
    fn subgraph_counts_match_edge_subset_scan() {
        // Brute force: all edge subsets of size s within distance s of x.
        let vol = build_volume(2, 4).unwrap();
        let x = Vertex::new(1);
        let counts = vol.enumerate_connected_subgraphs(x, 3).unwrap();
        let local: Vec<EdgeId> = vol
            .edges()
            .filter(|&e| {
                let (u, _) = vol.endpoints(e);
                vol.distance(x, u).unwrap() < 3 || vol.distance(x, e.child()).unwrap() < 3
            })
            .collect();
        let m = local.len();
        let mut brute = [0u64; 3];
        for mask in 1u64..(1 << m) {
            let s = mask.count_ones() as usize;
            if s > 3 {
                continue;
            }
            let es: Vec<EdgeId> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| local[b]).collect();
            if let Ok(sub) = SubgraphHandle::from_edges(&vol, &es) {
                if sub.vertices().contains(&x) {
                    brute[s - 1] += 1;
                }
            }
        }
        assert_eq!(counts, brute.to_vec());
    }
}
