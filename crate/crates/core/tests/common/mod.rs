//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cayley_core::contour;
use cayley_core::tree::build_volume;
use cayley_core::{Configuration, TreeVolume, Vertex};

/// Number of subtrees of the `(k+1)`-regular tree that contain a fixed vertex,
/// by vertex count `1..=max`, from the generating function
/// `R(x) = x (1 + T(x))^{k+1}` with `T = x (1 + T)^k`.
pub fn rooted_subtree_counts(k: usize, max: usize) -> Vec<u64> {
    let len = max + 1;
    let mul = |a: &[u64], b: &[u64]| {
        let mut c = vec![0u64; len];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate().take(len - i) {
                c[i + j] += x * y;
            }
        }
        c
    };
    let pow_shift = |t: &[u64], e: usize| {
        let mut one_plus = t.to_vec();
        one_plus[0] += 1;
        let mut acc = vec![0u64; len];
        acc[0] = 1;
        for _ in 0..e {
            acc = mul(&acc, &one_plus);
        }
        // multiply by x
        let mut out = vec![0u64; len];
        out[1..].copy_from_slice(&acc[..len - 1]);
        out
    };
    let mut t = vec![0u64; len];
    for _ in 0..len {
        t = pow_shift(&t, k);
    }
    pow_shift(&t, k + 1)[1..].to_vec()
}

/// Geometric contours of size `r` touching `x`, found by scanning every
/// configuration whose non-boundary spins sit on at most `(r-2)/(k-1)`
/// vertices near `x`. The shape of a contour is the sorted list of its
/// sorted interiors.
pub fn contour_shapes_by_scan(k: usize, r: usize, q: usize) -> BTreeSet<Vec<Vec<Vertex>>> {
    let mut found = BTreeSet::new();
    if r < 2 {
        return found;
    }
    let reach = (r - 2) / (k - 1);
    let vol = build_volume(k, reach).unwrap();
    let x = Vertex::ROOT;
    let sites: Vec<Vertex> = (0..vol.inner_len()).map(Vertex::new).collect();
    let mut chosen = Vec::new();
    subsets(&sites, reach, 0, &mut chosen, &mut |set| {
        colourings(&vol, set, q, &mut |ext| {
            for c in contour::decompose(&vol, ext).unwrap() {
                if c.size() == r && c.touches(&vol, x) {
                    let mut shape = c.shape();
                    shape.sort();
                    found.insert(shape);
                }
            }
        });
    });
    found
}

fn subsets(
    sites: &[Vertex],
    max: usize,
    start: usize,
    chosen: &mut Vec<Vertex>,
    f: &mut impl FnMut(&[Vertex]),
) {
    if !chosen.is_empty() {
        f(chosen);
    }
    if chosen.len() == max {
        return;
    }
    for i in start..sites.len() {
        chosen.push(sites[i]);
        subsets(sites, max, i + 1, chosen, f);
        chosen.pop();
    }
}

/// Every way to colour `set` with spins `1..q` over a sea of spin 0.
fn colourings(vol: &TreeVolume, set: &[Vertex], q: usize, f: &mut impl FnMut(&Configuration)) {
    let mut digits = vec![1u8; set.len()];
    let mut ext = Configuration::constant(vol.num_vertices(), 0);
    loop {
        for (v, &d) in set.iter().zip(&digits) {
            ext.set(*v, d);
        }
        f(&ext);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            if (digits[i] as usize) < q - 1 {
                digits[i] += 1;
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

/// Decodes configuration index `idx` into spins on `sites` sites, site 0 the
/// least significant base-`q` digit.
pub fn decode(mut idx: u64, q: usize, sites: usize) -> Configuration {
    let spins = (0..sites)
        .map(|_| {
            let s = (idx % q as u64) as u8;
            idx /= q as u64;
            s
        })
        .collect();
    Configuration::new(spins)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
