//! Boundaries, subcontours and contours of boundary-extended configurations.
//!
//! A configuration `σ` on `V_n` is extended by a constant spin `i` on the halo
//! `W_{n+1}`. Its boundary is the set of edges of `L_{n+1}` whose endpoints
//! disagree. Every maximal monochromatic connected set inside `V_n` that does
//! not reach the halo contributes one subcontour: its interior is the set
//! itself, its support the edges incident to it that leave it, and its mark
//! the common spin. The components that reach the halo form the sea and
//! contribute nothing. Subcontours sharing a support edge are adjacent, and a
//! contour is a maximal adjacency-connected family of subcontours.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::tree::{EdgeId, SubgraphHandle, TreeVolume, Vertex};

/// An unordered pair of distinct spins, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpinPair {
    lo: u8,
    hi: u8,
}

impl SpinPair {
    /// `None` when `a == b`.
    pub fn new(a: u8, b: u8) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(SpinPair { lo: a, hi: b }),
            core::cmp::Ordering::Greater => Some(SpinPair { lo: b, hi: a }),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(self) -> u8 {
        self.lo
    }

    pub fn hi(self) -> u8 {
        self.hi
    }
}

/// Boundary edges of an extended configuration with their spin-pair classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryEdgeSet {
    edges: Vec<(EdgeId, SpinPair)>,
}

impl BoundaryEdgeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in increasing order, with their classes.
    pub fn edges(&self) -> &[(EdgeId, SpinPair)] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.binary_search_by_key(&e, |&(f, _)| f).is_ok()
    }

    /// `|Γ_ε|` for every class that occurs.
    pub fn class_sizes(&self) -> BTreeMap<SpinPair, usize> {
        let mut out = BTreeMap::new();
        for &(_, p) in &self.edges {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    pub fn class_size(&self, pair: SpinPair) -> usize {
        self.edges.iter().filter(|&&(_, p)| p == pair).count()
    }
}

/// `σ` on `V_n` extended by the constant spin `i` on the halo.
pub fn extend_configuration(
    vol: &TreeVolume,
    sigma: &Configuration,
    boundary_spin: u8,
) -> Result<Configuration> {
    if sigma.len() != vol.inner_len() {
        return Err(Error::Domain(alloc::format!(
            "configuration has {} sites, V_{} has {}",
            sigma.len(),
            vol.n(),
            vol.inner_len()
        )));
    }
    let mut spins = Vec::with_capacity(vol.num_vertices());
    spins.extend_from_slice(sigma.spins());
    spins.resize(vol.num_vertices(), boundary_spin);
    Ok(Configuration::new(spins))
}

fn check_extended(vol: &TreeVolume, ext: &Configuration) -> Result<()> {
    if ext.len() != vol.num_vertices() {
        return Err(Error::Domain(alloc::format!(
            "extended configuration has {} sites, V_{} has {}",
            ext.len(),
            vol.n() + 1,
            vol.num_vertices()
        )));
    }
    Ok(())
}

/// Edges of `L_{n+1}` whose endpoints carry different spins.
pub fn boundary(vol: &TreeVolume, ext: &Configuration) -> Result<BoundaryEdgeSet> {
    check_extended(vol, ext)?;
    let edges = vol
        .edges()
        .filter_map(|e| {
            let (u, v) = vol.endpoints(e);
            SpinPair::new(ext.spin(u), ext.spin(v)).map(|p| (e, p))
        })
        .collect();
    Ok(BoundaryEdgeSet { edges })
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subcontour {
    interior: Vec<Vertex>,
    mark: u8,
    support: Vec<EdgeId>,
    labels: Vec<SpinPair>,
}

impl Subcontour {
    /// The common spin of the interior.
    pub fn mark(&self) -> u8 {
        self.mark
    }

    /// Interior vertices in increasing order.
    pub fn interior(&self) -> &[Vertex] {
        &self.interior
    }

    /// Support edges in increasing order.
    pub fn support(&self) -> &[EdgeId] {
        &self.support
    }

    /// Spin-pair class of each support edge, parallel to [`Self::support`].
    pub fn labels(&self) -> &[SpinPair] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }
}

/// Monochromatic components of an extended configuration.
///
/// In breadth-first order each vertex either joins its parent's component
/// (same spin) or opens a new one, so component ids follow the order of
/// their topmost vertices.
struct Components {
    id: Vec<u32>,
    count: usize,
    sea: Vec<bool>,
}

fn components(vol: &TreeVolume, ext: &Configuration) -> Components {
    let len = vol.num_vertices();
    let mut id = alloc::vec![0u32; len];
    let mut count = 1usize;
    for v in 1..len {
        let p = vol.parent(Vertex::new(v)).unwrap().index();
        if ext.spins()[v] == ext.spins()[p] {
            id[v] = id[p];
        } else {
            id[v] = count as u32;
            count += 1;
        }
    }
    let mut sea = alloc::vec![false; count];
    for h in vol.sphere_range(vol.n() + 1) {
        sea[id[h] as usize] = true;
    }
    Components { id, count, sea }
}

/// One subcontour per finite monochromatic component, ordered by the
/// component's topmost vertex.
pub fn subcontours(vol: &TreeVolume, ext: &Configuration) -> Result<Vec<Subcontour>> {
    check_extended(vol, ext)?;
    let comps = components(vol, ext);
    let mut slot = alloc::vec![usize::MAX; comps.count];
    let mut out: Vec<Subcontour> = Vec::new();
    for v in 0..vol.inner_len() {
        let c = comps.id[v] as usize;
        if comps.sea[c] {
            continue;
        }
        if slot[c] == usize::MAX {
            slot[c] = out.len();
            out.push(Subcontour {
                interior: Vec::new(),
                mark: ext.spins()[v],
                support: Vec::new(),
                labels: Vec::new(),
            });
        }
        let sub = &mut out[slot[c]];
        let vx = Vertex::new(v);
        sub.interior.push(vx);
        for w in vol.neighbors(vx) {
            if comps.id[w.index()] as usize != c {
                let e = vol.edge_between(vx, w).unwrap();
                sub.support.push(e);
                sub.labels
                    .push(SpinPair::new(ext.spin(vx), ext.spin(w)).unwrap());
            }
        }
    }
    for sub in &mut out {
        let mut pairs: Vec<(EdgeId, SpinPair)> =
            sub.support.iter().copied().zip(sub.labels.iter().copied()).collect();
        pairs.sort_unstable();
        sub.support = pairs.iter().map(|p| p.0).collect();
        sub.labels = pairs.iter().map(|p| p.1).collect();
    }
    Ok(out)
}

/// A maximal adjacency-connected family of subcontours.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Contour {
    subcontours: Vec<Subcontour>,
    support: Vec<EdgeId>,
    interior: Vec<Vertex>,
}

impl Contour {
    pub fn subcontours(&self) -> &[Subcontour] {
        &self.subcontours
    }

    /// `supp Υ`: the union of the subcontour supports, in increasing order.
    pub fn support(&self) -> &[EdgeId] {
        &self.support
    }

    /// `Int Υ`: the union of the interiors, in increasing order.
    pub fn interior(&self) -> &[Vertex] {
        &self.interior
    }

    /// `|Υ| = |supp Υ|`.
    pub fn size(&self) -> usize {
        self.support.len()
    }

    /// Number of subcontours `m`.
    pub fn num_subcontours(&self) -> usize {
        self.subcontours.len()
    }

    /// Whether `x` is an endpoint of some support edge.
    pub fn touches(&self, vol: &TreeVolume, x: Vertex) -> bool {
        self.support.iter().any(|&e| {
            let (u, v) = vol.endpoints(e);
            u == x || v == x
        })
    }

    /// `|γ_ε|`: number of distinct support edges in each class.
    pub fn class_sizes(&self) -> BTreeMap<SpinPair, usize> {
        let mut labelled: BTreeMap<EdgeId, SpinPair> = BTreeMap::new();
        for sub in &self.subcontours {
            for (&e, &p) in sub.support.iter().zip(&sub.labels) {
                labelled.insert(e, p);
            }
        }
        let mut out = BTreeMap::new();
        for p in labelled.into_values() {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// Interiors of the subcontours, ignoring marks.
    pub fn shape(&self) -> Vec<Vec<Vertex>> {
        self.subcontours.iter().map(|s| s.interior.clone()).collect()
    }

    /// Rebuilds a contour from marked interiors; the result is validated
    /// against the canonical realization by [`realize`].
    pub fn from_marked_interiors(
        vol: &TreeVolume,
        parts: &[(u8, Vec<Vertex>)],
        boundary_spin: u8,
    ) -> Result<Contour> {
        let ext = realize(vol, parts, boundary_spin)?;
        let mut found = decompose(vol, &ext)?;
        let mut wanted: Vec<Vec<Vertex>> = parts
            .iter()
            .map(|(_, vs)| {
                let mut vs = vs.clone();
                vs.sort_unstable();
                vs
            })
            .collect();
        wanted.sort();
        match found.iter().position(|c| {
            let mut s = c.shape();
            s.sort();
            s == wanted
        }) {
            Some(i) if found.len() == 1 => Ok(found.swap_remove(i)),
            _ => Err(Error::Domain(
                "marked interiors do not form a single realizable contour".into(),
            )),
        }
    }
}

/// The extended configuration that is `i` everywhere except on the given
/// marked interiors.
pub fn realize(
    vol: &TreeVolume,
    parts: &[(u8, Vec<Vertex>)],
    boundary_spin: u8,
) -> Result<Configuration> {
    let mut ext = Configuration::constant(vol.num_vertices(), boundary_spin);
    for (mark, vs) in parts {
        for &v in vs {
            if !vol.is_inner(v) {
                return Err(Error::Domain(alloc::format!(
                    "interior vertex {} is not in V_{}",
                    v.index(),
                    vol.n()
                )));
            }
            ext.set(v, *mark);
        }
    }
    Ok(ext)
}

/// Groups subcontours into contours: the connected components of the relation
/// "supports share exactly one edge".
pub fn assemble_contours(subs: Vec<Subcontour>) -> Result<Vec<Contour>> {
    let m = subs.len();
    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut parent: Vec<usize> = (0..m).collect();

    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }

    for (s, sub) in subs.iter().enumerate() {
        for &e in &sub.support {
            match owner.get(&e) {
                None => {
                    owner.insert(e, s);
                }
                Some(&t) => {
                    let count = shared.entry((t, s)).or_insert(0);
                    *count += 1;
                    if *count > 1 {
                        return Err(Error::Structural(alloc::format!(
                            "subcontours {t} and {s} share more than one support edge"
                        )));
                    }
                    let (a, b) = (find(&mut parent, t), find(&mut parent, s));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
    }

    let mut root_slot: BTreeMap<usize, usize> = BTreeMap::new();
    let mut groups: Vec<Vec<Subcontour>> = Vec::new();
    for (s, sub) in subs.into_iter().enumerate() {
        let r = find(&mut parent, s);
        let slot = *root_slot.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[slot].push(sub);
    }

    Ok(groups
        .into_iter()
        .map(|subcontours| {
            let mut support: Vec<EdgeId> = subcontours
                .iter()
                .flat_map(|s| s.support.iter().copied())
                .collect();
            support.sort_unstable();
            support.dedup();
            let mut interior: Vec<Vertex> = subcontours
                .iter()
                .flat_map(|s| s.interior.iter().copied())
                .collect();
            interior.sort_unstable();
            Contour {
                subcontours,
                support,
                interior,
            }
        })
        .collect())
}

/// All contours of an extended configuration.
pub fn decompose(vol: &TreeVolume, ext: &Configuration) -> Result<Vec<Contour>> {
    assemble_contours(subcontours(vol, ext)?)
}

/// `K_Υ`: the support together with the edges inside each interior.
///
/// Verifies the integer identity `(k-1)|E(K_Υ)| = k|Υ| - (k m + 1)`.
pub fn spanning_subgraph(vol: &TreeVolume, contour: &Contour) -> Result<SubgraphHandle> {
    if contour.subcontours.is_empty() {
        return Err(Error::Domain("contour without subcontours".into()));
    }
    let mut edges: Vec<EdgeId> = contour.support.clone();
    for sub in &contour.subcontours {
        for &v in &sub.interior {
            if let Some(p) = vol.parent(v) {
                if sub.interior.binary_search(&p).is_ok() {
                    edges.push(EdgeId::above(v));
                }
            }
        }
    }
    let handle = SubgraphHandle::from_edges(vol, &edges)
        .map_err(|e| Error::Structural(alloc::format!("K_Υ is not connected: {e}")))?;
    let k = vol.k() as i64;
    let size = contour.size() as i64;
    let m = contour.num_subcontours() as i64;
    let lhs = (k - 1) * handle.edges().len() as i64;
    let rhs = k * size - (k * m + 1);
    if lhs != rhs {
        return Err(Error::Structural(alloc::format!(
            "edge count {} of K_Υ violates (k-1)|E| = k|Υ| - (km+1) with |Υ| = {size}, m = {m}",
            handle.edges().len()
        )));
    }
    Ok(handle)
}

/// `α = (2ke)^{k/(k-1)}` and `θ = 1 / (2 α^{1/k} (α - 1))`.
pub fn contour_bound_constants(k: usize) -> (f64, f64) {
    let kf = k as f64;
    let alpha = libm::pow(2.0 * kf * core::f64::consts::E, kf / (kf - 1.0));
    let theta = 1.0 / (2.0 * libm::pow(alpha, 1.0 / kf) * (alpha - 1.0));
    (alpha, theta)
}

/// `θ α^r`.
pub fn contour_count_bound(k: usize, r: usize) -> f64 {
    let (alpha, theta) = contour_bound_constants(k);
    theta * libm::pow(alpha, r as f64)
}

/// `(e k)^s`, the bound on connected subgraphs with `s` edges through a point.
pub fn subgraph_count_bound(k: usize, s: usize) -> f64 {
    libm::pow(core::f64::consts::E * k as f64, s as f64)
}

/// Largest interior size compatible with a contour of size `r`.
fn max_interior(k: usize, r: usize) -> usize {
    if r < 2 {
        0
    } else {
        (r - 2) / (k - 1)
    }
}

/// `N_r(x)`: number of geometric contours of size `r` with `x ∈ Υ`, among
/// those realizable with `q` spin values.
///
/// A contour is identified by its support and the partition of the support
/// into subcontour supports; marks are not distinguished. Enumeration is
/// structural: the union `U` of the interiors is a connected set meeting the
/// closed neighbourhood of `x`, the subcontours are the blocks obtained by
/// cutting some edges inside `U`, and `|Υ|` is the number of edges leaving
/// `U` plus the number of cut edges. With `q >= 3` every block structure is
/// realizable; with `q = 2` the blocks touching the outside must all fall in
/// one class of the block tree's bipartition.
pub fn count_contours_at(vol: &TreeVolume, x: Vertex, r: usize, q: usize) -> Result<u64> {
    if q < 2 {
        return Err(Error::Domain("q must be at least 2".into()));
    }
    let k = vol.k();
    let reach = max_interior(k, r);
    vol.check_unclipped(x, reach)?;
    if r < k + 1 {
        return Ok(0);
    }
    let mut count = 0u64;
    let mut tally = |set: &[Vertex]| {
        count += count_partitions(vol, set, x, r, q);
    };
    vol.for_each_connected_set(x, reach, &[], &mut tally);
    let neighbours: Vec<Vertex> = vol.neighbors(x).collect();
    for y in neighbours {
        vol.for_each_connected_set(y, reach, &[x], &mut tally);
    }
    Ok(count)
}

/// Block partitions of the connected set `set` giving a contour of size `r`
/// through `x`.
fn count_partitions(vol: &TreeVolume, set: &[Vertex], x: Vertex, r: usize, q: usize) -> u64 {
    let mut members = set.to_vec();
    members.sort_unstable();
    let pos = |v: Vertex| members.binary_search(&v).ok();

    let mut outside = 0usize;
    let mut touches_outside = alloc::vec![false; members.len()];
    let mut inner_edges: Vec<(usize, usize)> = Vec::new();
    for (a, &v) in members.iter().enumerate() {
        for w in vol.neighbors(v) {
            match pos(w) {
                None => {
                    outside += 1;
                    touches_outside[a] = true;
                }
                Some(b) if a < b => inner_edges.push((a, b)),
                Some(_) => {}
            }
        }
    }
    if outside > r || r - outside > inner_edges.len() {
        return 0;
    }
    let cuts = r - outside;
    let x_pos = pos(x);

    let mut total = 0u64;
    let mut chosen: Vec<usize> = Vec::with_capacity(cuts);
    for_each_combination(inner_edges.len(), cuts, &mut chosen, &mut |chosen| {
        if let Some(xp) = x_pos {
            let on_cut = chosen.iter().any(|&c| {
                let (a, b) = inner_edges[c];
                a == xp || b == xp
            });
            if !touches_outside[xp] && !on_cut {
                return;
            }
        }
        if q >= 3 || two_colorable(members.len(), &inner_edges, chosen, &touches_outside) {
            total += 1;
        }
    });
    total
}

/// With two spins, blocks touching the sea need the non-sea spin and adjacent
/// blocks need different spins, so all sea-touching blocks must lie on the
/// same side of the block tree's bipartition.
fn two_colorable(
    len: usize,
    inner_edges: &[(usize, usize)],
    cuts: &[usize],
    touches_outside: &[bool],
) -> bool {
    // parity of the number of cut edges on the path from member 0
    let mut parity = alloc::vec![u8::MAX; len];
    parity[0] = 0;
    let mut stack = alloc::vec![0usize];
    while let Some(a) = stack.pop() {
        for (idx, &(u, v)) in inner_edges.iter().enumerate() {
            let other = if u == a {
                v
            } else if v == a {
                u
            } else {
                continue;
            };
            if parity[other] == u8::MAX {
                parity[other] = parity[a] ^ cuts.contains(&idx) as u8;
                stack.push(other);
            }
        }
    }
    let mut side = None;
    for a in 0..len {
        if touches_outside[a] {
            match side {
                None => side = Some(parity[a]),
                Some(s) if s != parity[a] => return false,
                _ => {}
            }
        }
    }
    true
}

pub(crate) fn for_each_combination(
    n: usize,
    k: usize,
    chosen: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    let start = chosen.last().map_or(0, |&c| c + 1);
    let remaining = k - chosen.len();
    if n < remaining {
        return;
    }
    for c in start..=(n - remaining) {
        chosen.push(c);
        for_each_combination(n, k, chosen, f);
        chosen.pop();
    }
}
