//! Vertices as reduced words in the free product of `k + 1` copies of `Z_2`,
//! and periodic configurations induced by homomorphisms onto finite groups.
//!
//! Edge labels follow one global convention: the root's `k + 1` edges carry
//! the generators `1..=k+1`, and a vertex reached along generator `i` labels
//! its `k` child edges with `{1..=k+1} \ {i}` in increasing order. Reading the
//! labels along the root-to-vertex path gives the vertex's word.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::tree::{EdgeId, TreeVolume, Vertex};

/// A reduced word: generator indices in `1..=k+1`, no two consecutive equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedWord {
    letters: Vec<u8>,
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord {
            letters: Vec::new(),
        }
    }

    /// Validates an already reduced word over the generators of `G_k`.
    pub fn new(k: usize, letters: Vec<u8>) -> Result<Self> {
        for (pos, &g) in letters.iter().enumerate() {
            if g == 0 || g as usize > k + 1 {
                return Err(Error::Domain(alloc::format!(
                    "generator {g} at position {pos} outside 1..={}",
                    k + 1
                )));
            }
            if pos > 0 && letters[pos - 1] == g {
                return Err(Error::Domain(alloc::format!(
                    "word is not reduced: generator {g} repeated at position {pos}"
                )));
            }
        }
        Ok(ReducedWord { letters })
    }

    /// Reduces an arbitrary generator sequence using `a_i² = e`.
    pub fn reduce(letters: impl IntoIterator<Item = u8>) -> Self {
        let mut out: Vec<u8> = Vec::new();
        for g in letters {
            if out.last() == Some(&g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        ReducedWord { letters: out }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Group product: concatenate, then cancel.
    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        ReducedWord::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    /// Every generator is an involution, so the inverse is the reversal.
    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }
}

/// The word read along the path from the root to `x`.
pub fn vertex_word(vol: &TreeVolume, x: Vertex) -> Result<ReducedWord> {
    if !vol.contains(x) {
        return Err(Error::Domain(alloc::format!(
            "vertex {} outside the volume",
            x.index()
        )));
    }
    let mut letters = Vec::with_capacity(vol.depth(x));
    let mut v = x;
    while v != Vertex::ROOT {
        letters.push(vol.edge_label(EdgeId::above(v)));
        v = vol.parent(v).unwrap();
    }
    letters.reverse();
    Ok(ReducedWord { letters })
}

/// The vertex whose word is `w`, if it lies in the volume.
pub fn word_vertex(vol: &TreeVolume, w: &ReducedWord) -> Result<Vertex> {
    let k = vol.k();
    let mut v = Vertex::ROOT;
    let mut previous = 0u8;
    for &g in w.letters() {
        if g == 0 || g as usize > k + 1 || g == previous {
            return Err(Error::Domain("word is not a reduced word of G_k".into()));
        }
        let children = vol.children(v);
        if children.is_empty() {
            return Err(Error::Domain(alloc::format!(
                "word of length {} leaves the volume",
                w.len()
            )));
        }
        // children are labelled in increasing order, skipping `previous`
        let slot = if previous != 0 && g > previous { g - 2 } else { g - 1 };
        v = Vertex::new(children.start + slot as usize);
        previous = g;
    }
    Ok(v)
}

/// A finite group given by its multiplication table, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(alloc::format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= order {
                    return Err(Error::InvalidGroup(alloc::format!(
                        "entry ({a}, {b}) = {c} is not an element"
                    )));
                }
                table.push(c);
            }
        }
        let g = FiniteGroup { order, table };
        for a in 0..order {
            if g.mul(0, a) != a || g.mul(a, 0) != a {
                return Err(Error::InvalidGroup(alloc::format!(
                    "element 0 is not an identity for element {a}"
                )));
            }
            if !(0..order).any(|b| g.mul(a, b) == 0) {
                return Err(Error::InvalidGroup(alloc::format!(
                    "element {a} has no inverse"
                )));
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                        return Err(Error::InvalidGroup(alloc::format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `Z_2` as `{0, 1}` under addition.
    pub fn z2() -> Self {
        FiniteGroup {
            order: 2,
            table: alloc::vec![0, 1, 1, 0],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }
}

/// `G_k / F_k` realized as the image of a homomorphism `G_k → group`.
///
/// The homomorphism is fixed by the images of the `k + 1` generators, each an
/// involution or the identity. Its image is the subgroup they generate; the
/// cosets of the kernel `F_k` are labelled `0..r` in breadth-first order of
/// that subgroup, so the identity coset `F_k` itself gets label 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    group: FiniteGroup,
    images: Vec<usize>,
    /// element → coset label, for elements of the image.
    label_of: Vec<Option<usize>>,
    /// coset label → element.
    element_of: Vec<usize>,
}

impl FiniteQuotient {
    pub fn new(k: usize, group: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        if images.len() != k + 1 {
            return Err(Error::InvalidGroup(alloc::format!(
                "expected {} generator images, got {}",
                k + 1,
                images.len()
            )));
        }
        for (i, &a) in images.iter().enumerate() {
            if a >= group.order() {
                return Err(Error::InvalidGroup(alloc::format!(
                    "image of generator {} is not an element",
                    i + 1
                )));
            }
            if group.mul(a, a) != 0 {
                return Err(Error::InvalidGroup(alloc::format!(
                    "image {a} of generator {} does not square to the identity",
                    i + 1
                )));
            }
        }
        let mut label_of = alloc::vec![None; group.order()];
        let mut element_of = alloc::vec![0usize];
        label_of[0] = Some(0);
        let mut head = 0;
        while head < element_of.len() {
            let a = element_of[head];
            for &g in &images {
                let b = group.mul(a, g);
                if label_of[b].is_none() {
                    label_of[b] = Some(element_of.len());
                    element_of.push(b);
                }
            }
            head += 1;
        }
        Ok(FiniteQuotient {
            group,
            images,
            label_of,
            element_of,
        })
    }

    /// The index-2 subgroup of even-length words: every generator ↦ `1 ∈ Z_2`.
    pub fn parity(k: usize) -> Self {
        Self::new(k, FiniteGroup::z2(), alloc::vec![1; k + 1]).unwrap()
    }

    /// The trivial quotient (`F_k = G_k`).
    pub fn trivial(k: usize) -> Self {
        let group = FiniteGroup::new(&[alloc::vec![0]]).unwrap();
        Self::new(k, group, alloc::vec![0; k + 1]).unwrap()
    }

    /// Index `r` of the subgroup, i.e. the number of cosets.
    pub fn index(&self) -> usize {
        self.element_of.len()
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.images
    }

    /// Coset label of `a · b` for coset labels `a`, `b`.
    pub fn compose(&self, a: usize, b: usize) -> usize {
        let e = self.group.mul(self.element_of[a], self.element_of[b]);
        self.label_of[e].expect("image of a homomorphism is closed")
    }

    /// Coset label after right-multiplying by generator `g` (`1..=k+1`).
    #[inline]
    pub fn step(&self, label: usize, g: u8) -> usize {
        let e = self
            .group
            .mul(self.element_of[label], self.images[g as usize - 1]);
        self.label_of[e].expect("image of a homomorphism is closed")
    }

    /// Label of the coset containing `w`; the empty word maps to 0.
    pub fn coset_index(&self, w: &ReducedWord) -> usize {
        w.letters().iter().fold(0, |label, &g| self.step(label, g))
    }
}

/// Coset label of every vertex of the volume.
pub fn coset_labels(vol: &TreeVolume, quot: &FiniteQuotient) -> Vec<usize> {
    let mut labels = alloc::vec![0usize; vol.num_vertices()];
    for v in 1..vol.num_vertices() {
        let v = Vertex::new(v);
        let p = vol.parent(v).unwrap();
        labels[v.index()] = quot.step(labels[p.index()], vol.edge_label(EdgeId::above(v)));
    }
    labels
}

/// The `F_k`-periodic configuration on `V_{n+1}` taking value
/// `assignment[c]` on coset `c`.
pub fn periodic_configuration(
    vol: &TreeVolume,
    quot: &FiniteQuotient,
    assignment: &[u8],
    q: usize,
) -> Result<Configuration> {
    if assignment.len() != quot.index() {
        return Err(Error::Domain(alloc::format!(
            "assignment covers {} cosets, the quotient has {}",
            assignment.len(),
            quot.index()
        )));
    }
    if let Some(&s) = assignment.iter().find(|&&s| s as usize >= q) {
        return Err(Error::Domain(alloc::format!(
            "spin index {} outside 1..={q}",
            s as usize + 1
        )));
    }
    let spins = coset_labels(vol, quot)
        .into_iter()
        .map(|c| assignment[c])
        .collect();
    Ok(Configuration::new(spins))
}

/// All injective maps `0..r → 0..q`, in lexicographic order.
pub fn injective_assignments(q: usize, r: usize) -> Vec<Vec<u8>> {
    fn rec(q: usize, r: usize, cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for s in 0..q {
            if !used[s] {
                used[s] = true;
                cur.push(s as u8);
                rec(q, r, cur, used, out);
                cur.pop();
                used[s] = false;
            }
        }
    }
    let mut out = Vec::new();
    if r <= q {
        rec(q, r, &mut Vec::new(), &mut alloc::vec![false; q], &mut out);
    }
    out
}

/// Distinct periodic configurations produced by the injective assignments.
pub fn distinct_injective_configurations(
    vol: &TreeVolume,
    quot: &FiniteQuotient,
    q: usize,
) -> Result<BTreeSet<Configuration>> {
    let mut out = BTreeSet::new();
    for a in injective_assignments(q, quot.index()) {
        out.insert(periodic_configuration(vol, quot, &a, q)?);
    }
    Ok(out)
}
