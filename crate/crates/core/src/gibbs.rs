//! Finite-volume Gibbs measures under constant boundary conditions.
//!
//! The measure on `V_n` with boundary spin `i` weighs a configuration `σ` by
//! `exp(-β H_n(σ))`, where `H_n` is the edge-form energy of `σ` extended by `i`
//! on the halo. Two independent routes are provided: exhaustive enumeration of
//! all `q^{|V_n|}` configurations, and the exact bottom-up recursion on the
//! tree. Contour probabilities and the erasure map `χ_γ` work on the
//! enumerated ensemble.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use crate::config::Configuration;
use crate::contour::{self, Contour, SpinPair};
use crate::error::{Budget, Error, Result};
use crate::logsum::{log_sum_exp, LogSum};
use crate::model::{self, ModelSpec};
use crate::tree::TreeVolume;

fn check_pairing(spec: &ModelSpec, vol: &TreeVolume, boundary_spin: u8) -> Result<()> {
    if spec.k() != vol.k() {
        return Err(Error::Domain(alloc::format!(
            "model order k = {} does not match the volume's k = {}",
            spec.k(),
            vol.k()
        )));
    }
    if boundary_spin as usize >= spec.q() {
        return Err(Error::Domain(alloc::format!(
            "boundary spin {} outside 1..={}",
            boundary_spin as usize + 1,
            spec.q()
        )));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!(
            "inverse temperature must be finite and nonnegative, got {beta}"
        )))
    }
}

/// Energy of `σ` on `V_n` extended by the boundary spin, from the boundary
/// class sizes: `Σ_ε (U_ε - U_ii)|Γ_ε| + (|V_{n+1}| - 1) U_ii`.
///
/// This form counts every non-boundary edge at `U_ii`, so it agrees with the
/// edge sum only when all diagonal energies coincide.
pub fn contour_hamiltonian(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &Configuration,
    boundary_spin: u8,
) -> Result<f64> {
    check_pairing(spec, vol, boundary_spin)?;
    let ext = contour::extend_configuration(vol, sigma, boundary_spin)?;
    let gamma = contour::boundary(vol, &ext)?;
    let i = boundary_spin as usize;
    let uii = spec.u(i, i);
    let mut total = vol.num_edges() as f64 * uii;
    for (pair, size) in gamma.class_sizes() {
        total += (spec.u(pair.lo() as usize, pair.hi() as usize) - uii) * size as f64;
    }
    Ok(total)
}

/// `Σ_{l ∈ L_{n+1}} U(σ_l)` for `σ` on `V_n` extended by the boundary spin.
pub fn direct_hamiltonian(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &Configuration,
    boundary_spin: u8,
) -> Result<f64> {
    check_pairing(spec, vol, boundary_spin)?;
    let ext = contour::extend_configuration(vol, sigma, boundary_spin)?;
    model::hamiltonian(spec, vol, &ext)
}

/// All configurations on `V_n`, indexed `0..q^{|V_n|}` with site 0 as the
/// least significant base-`q` digit.
#[derive(Debug, Clone)]
pub struct ConfigurationSpace<'a> {
    vol: &'a TreeVolume,
    q: usize,
    count: u64,
}

impl<'a> ConfigurationSpace<'a> {
    pub fn new(vol: &'a TreeVolume, q: usize, budget: &Budget) -> Result<Self> {
        let count = (q as u128)
            .checked_pow(vol.inner_len() as u32)
            .unwrap_or(u128::MAX);
        budget.check_configurations(count)?;
        Ok(ConfigurationSpace {
            vol,
            q,
            count: count as u64,
        })
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn volume(&self) -> &TreeVolume {
        self.vol
    }

    /// Calls `f` with the extended spins (halo fixed to `boundary_spin`) of
    /// every configuration whose index lies in `range`.
    pub fn for_each_extended(
        &self,
        range: Range<u64>,
        boundary_spin: u8,
        mut f: impl FnMut(u64, &[u8]),
    ) {
        let end = range.end.min(self.count);
        if range.start >= end {
            return;
        }
        let sites = self.vol.inner_len();
        let mut spins = alloc::vec![boundary_spin; self.vol.num_vertices()];
        let mut rest = range.start;
        for s in spins.iter_mut().take(sites) {
            *s = (rest % self.q as u64) as u8;
            rest /= self.q as u64;
        }
        let top = self.q as u8 - 1;
        for index in range.start..end {
            f(index, &spins);
            for s in spins.iter_mut().take(sites) {
                if *s == top {
                    *s = 0;
                } else {
                    *s += 1;
                    break;
                }
            }
        }
    }

    /// Splits `0..count` into `parts` contiguous ranges of near-equal size.
    pub fn chunks(&self, parts: usize) -> Vec<Range<u64>> {
        let parts = parts.max(1) as u64;
        let step = self.count.div_ceil(parts);
        (0..parts)
            .map(|p| (p * step).min(self.count)..((p + 1) * step).min(self.count))
            .filter(|r| !r.is_empty())
            .collect()
    }
}

/// Partial sums of `exp(-β H_n)` over a range of configurations, total and
/// split by the root spin, for several `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSums {
    pub betas: Vec<f64>,
    pub total: Vec<LogSum>,
    /// `by_root[b][s]`: configurations with root spin `s` at `betas[b]`.
    pub by_root: Vec<Vec<LogSum>>,
}

impl EnsembleSums {
    pub fn new(betas: &[f64], q: usize) -> Self {
        EnsembleSums {
            betas: betas.to_vec(),
            total: alloc::vec![LogSum::new(); betas.len()],
            by_root: alloc::vec![alloc::vec![LogSum::new(); q]; betas.len()],
        }
    }

    pub fn merge(&mut self, other: &EnsembleSums) {
        for (a, b) in self.total.iter_mut().zip(&other.total) {
            a.merge(b);
        }
        for (ra, rb) in self.by_root.iter_mut().zip(&other.by_root) {
            for (a, b) in ra.iter_mut().zip(rb) {
                a.merge(b);
            }
        }
    }

    pub fn log_partition(&self, b: usize) -> f64 {
        self.total[b].value()
    }

    pub fn root_marginal(&self, b: usize) -> Vec<f64> {
        let logs: Vec<f64> = self.by_root[b].iter().map(LogSum::value).collect();
        let norm = log_sum_exp(&logs);
        logs.iter().map(|&l| libm::exp(l - norm)).collect()
    }
}

/// Accumulates [`EnsembleSums`] over a range of configuration indices.
pub fn accumulate_ensemble(
    spec: &ModelSpec,
    space: &ConfigurationSpace<'_>,
    boundary_spin: u8,
    betas: &[f64],
    range: Range<u64>,
) -> Result<EnsembleSums> {
    let vol = space.volume();
    check_pairing(spec, vol, boundary_spin)?;
    betas.iter().try_for_each(|&b| check_beta(b))?;
    if space.q != spec.q() {
        return Err(Error::Domain("configuration space and model disagree on q".into()));
    }
    let mut sums = EnsembleSums::new(betas, spec.q());
    space.for_each_extended(range, boundary_spin, |_, spins| {
        let h = model::edge_sum(spec, vol, spins);
        let root = spins[0] as usize;
        for (b, &beta) in betas.iter().enumerate() {
            let w = -beta * h;
            sums.total[b].add(w);
            sums.by_root[b][root].add(w);
        }
    });
    Ok(sums)
}

/// Exhaustive ensemble sums over every configuration.
pub fn ensemble_bruteforce(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    betas: &[f64],
    budget: &Budget,
) -> Result<EnsembleSums> {
    let space = ConfigurationSpace::new(vol, spec.q(), budget)?;
    accumulate_ensemble(spec, &space, boundary_spin, betas, 0..space.count())
}

/// `log Z` by enumeration.
pub fn log_partition_bruteforce(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    beta: f64,
    budget: &Budget,
) -> Result<f64> {
    Ok(ensemble_bruteforce(spec, vol, boundary_spin, &[beta], budget)?.log_partition(0))
}

/// Distribution of the root spin by enumeration.
pub fn root_marginal_bruteforce(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    beta: f64,
    budget: &Budget,
) -> Result<Vec<f64>> {
    Ok(ensemble_bruteforce(spec, vol, boundary_spin, &[beta], budget)?.root_marginal(0))
}

/// Summary of a finite-volume Gibbs computation.
#[derive(Debug, Clone, PartialEq)]
pub struct GibbsReport {
    pub n: usize,
    pub boundary_spin: u8,
    pub beta: f64,
    pub log_partition: f64,
    pub root_marginal: Vec<f64>,
}

/// Root marginal and `log Z` by exact recursion from the halo inwards.
///
/// Every vertex at depth `m` roots an identical subtree, so one message per
/// level suffices. `L_m(s)` is the log partition function of such a subtree
/// with its top vertex fixed to `s`; halo vertices are pinned to the boundary
/// spin, and `L_m(s) = d_m · log Σ_{s'} exp(-β U(s, s') + L_{m+1}(s'))` with
/// `d_m = k + 1` at the root and `k` elsewhere. Each level is shifted so its
/// maximum is 0 and the shifts are carried into `log Z`.
pub fn root_marginal_recursion(
    spec: &ModelSpec,
    n: usize,
    boundary_spin: u8,
    beta: f64,
    budget: &Budget,
) -> Result<GibbsReport> {
    check_beta(beta)?;
    if boundary_spin as usize >= spec.q() {
        return Err(Error::Domain(alloc::format!(
            "boundary spin {} outside 1..={}",
            boundary_spin as usize + 1,
            spec.q()
        )));
    }
    if n > budget.max_depth {
        return Err(Error::BudgetExceeded {
            quantity: "recursion depth",
            requested: n as u128,
            limit: budget.max_depth as u128,
        });
    }
    let q = spec.q();
    let k = spec.k() as f64;
    let mut level: Vec<f64> = (0..q)
        .map(|s| {
            if s == boundary_spin as usize {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let mut shift = 0.0;
    let mut terms = alloc::vec![0.0; q];
    for m in (0..=n).rev() {
        let degree = if m == 0 { k + 1.0 } else { k };
        let next: Vec<f64> = (0..q)
            .map(|s| {
                for (t, term) in terms.iter_mut().enumerate() {
                    *term = -beta * spec.u(s, t) + level[t];
                }
                degree * log_sum_exp(&terms)
            })
            .collect();
        let top = next.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        shift = degree * shift + top;
        level = next.into_iter().map(|x| x - top).collect();
    }
    let norm = log_sum_exp(&level);
    Ok(GibbsReport {
        n,
        boundary_spin,
        beta,
        log_partition: shift + norm,
        root_marginal: level.iter().map(|&l| libm::exp(l - norm)).collect(),
    })
}

/// Whether `γ` (with its marks) is one of the contours of `ext`.
pub fn contains_contour(vol: &TreeVolume, ext: &Configuration, gamma: &Contour) -> Result<bool> {
    Ok(contour::decompose(vol, ext)?.iter().any(|c| c == gamma))
}

/// `χ_γ`: overwrite `Int γ` with the boundary spin.
///
/// `γ` must be a contour of `ext`; then every support edge of `γ` joins
/// `Int γ` to the sea, and erasing the interior removes exactly those edges
/// from the boundary.
pub fn chi_gamma(
    vol: &TreeVolume,
    ext: &Configuration,
    gamma: &Contour,
    boundary_spin: u8,
) -> Result<Configuration> {
    if !contains_contour(vol, ext, gamma)? {
        return Err(Error::Domain(
            "the contour is not part of the configuration's boundary".into(),
        ));
    }
    Ok(erase(ext, gamma, boundary_spin))
}

fn erase(ext: &Configuration, gamma: &Contour, boundary_spin: u8) -> Configuration {
    let mut out = ext.clone();
    for &v in gamma.interior() {
        out.set(v, boundary_spin);
    }
    out
}

/// `Σ_ε (U_ε - U_ii)|γ_ε|`, the energy a contour costs over the sea.
pub fn contour_energy(spec: &ModelSpec, gamma: &Contour, boundary_spin: u8) -> f64 {
    let i = boundary_spin as usize;
    gamma
        .class_sizes()
        .into_iter()
        .map(|(p, size)| (spec.u(p.lo() as usize, p.hi() as usize) - spec.u(i, i)) * size as f64)
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourProbability {
    pub beta: f64,
    pub log_p: f64,
    pub p: f64,
    /// `p · exp(β λ₀ |γ|)`; at most 1 when the Peierls bound holds.
    pub ratio: f64,
    /// Number of configurations in which `γ` occurs.
    pub occurrences: u64,
}

fn peierls_ratio(log_p: f64, beta: f64, lambda0: f64, size: usize) -> f64 {
    libm::exp(log_p + beta * lambda0 * size as f64)
}

/// `p_i(γ)`: the Gibbs probability that `γ` is one of the contours.
pub fn contour_probability(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    beta: f64,
    gamma: &Contour,
    budget: &Budget,
) -> Result<ContourProbability> {
    check_pairing(spec, vol, boundary_spin)?;
    check_beta(beta)?;
    let lambda0 = spec.lambda0()?;
    let parts: Vec<(u8, Vec<_>)> = gamma
        .subcontours()
        .iter()
        .map(|s| (s.mark(), s.interior().to_vec()))
        .collect();
    let canonical = contour::realize(vol, &parts, boundary_spin)?;
    if !contains_contour(vol, &canonical, gamma)? {
        return Err(Error::Domain(
            "the contour cannot be realized in this volume with this boundary spin".into(),
        ));
    }
    let space = ConfigurationSpace::new(vol, spec.q(), budget)?;
    let mut total = LogSum::new();
    let mut hit = LogSum::new();
    let mut occurrences = 0u64;
    space.for_each_extended(0..space.count(), boundary_spin, |_, spins| {
        let w = -beta * model::edge_sum(spec, vol, spins);
        total.add(w);
        // cheap filter: the interior must carry the marks
        let marked = gamma
            .subcontours()
            .iter()
            .all(|s| s.interior().iter().all(|v| spins[v.index()] == s.mark()));
        if marked {
            let ext = Configuration::new(spins.to_vec());
            if contour::decompose(vol, &ext)
                .map(|cs| cs.iter().any(|c| c == gamma))
                .unwrap_or(false)
            {
                hit.add(w);
                occurrences += 1;
            }
        }
    });
    let log_p = hit.value() - total.value();
    Ok(ContourProbability {
        beta,
        log_p,
        p: libm::exp(log_p),
        ratio: peierls_ratio(log_p, beta, lambda0, gamma.size()),
        occurrences,
    })
}

/// Per-contour partial sums for a Peierls sweep over a range of
/// configurations.
#[derive(Debug, Clone)]
pub struct PeierlsSums {
    pub betas: Vec<f64>,
    pub total: Vec<LogSum>,
    pub per_contour: BTreeMap<Contour, (u64, Vec<LogSum>)>,
}

impl PeierlsSums {
    pub fn new(betas: &[f64]) -> Self {
        PeierlsSums {
            betas: betas.to_vec(),
            total: alloc::vec![LogSum::new(); betas.len()],
            per_contour: BTreeMap::new(),
        }
    }

    pub fn merge(&mut self, other: PeierlsSums) {
        for (a, b) in self.total.iter_mut().zip(&other.total) {
            a.merge(b);
        }
        for (gamma, (count, sums)) in other.per_contour {
            let entry = self
                .per_contour
                .entry(gamma)
                .or_insert_with(|| (0, alloc::vec![LogSum::new(); sums.len()]));
            entry.0 += count;
            for (a, b) in entry.1.iter_mut().zip(&sums) {
                a.merge(b);
            }
        }
    }
}

pub fn accumulate_peierls(
    spec: &ModelSpec,
    space: &ConfigurationSpace<'_>,
    boundary_spin: u8,
    betas: &[f64],
    range: Range<u64>,
) -> Result<PeierlsSums> {
    let vol = space.volume();
    check_pairing(spec, vol, boundary_spin)?;
    betas.iter().try_for_each(|&b| check_beta(b))?;
    let mut sums = PeierlsSums::new(betas);
    let mut failure = None;
    space.for_each_extended(range, boundary_spin, |_, spins| {
        if failure.is_some() {
            return;
        }
        let h = model::edge_sum(spec, vol, spins);
        let weights: Vec<f64> = betas.iter().map(|&b| -b * h).collect();
        for (acc, &w) in sums.total.iter_mut().zip(&weights) {
            acc.add(w);
        }
        let ext = Configuration::new(spins.to_vec());
        match contour::decompose(vol, &ext) {
            Ok(contours) => {
                for gamma in contours {
                    let entry = sums
                        .per_contour
                        .entry(gamma)
                        .or_insert_with(|| (0, alloc::vec![LogSum::new(); betas.len()]));
                    entry.0 += 1;
                    for (acc, &w) in entry.1.iter_mut().zip(&weights) {
                        acc.add(w);
                    }
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(sums),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContourRecord {
    pub contour: Contour,
    pub occurrences: u64,
    /// One entry per `β` of the sweep.
    pub probabilities: Vec<ContourProbability>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PeierlsSweep {
    pub n: usize,
    pub boundary_spin: u8,
    pub betas: Vec<f64>,
    pub lambda0: f64,
    pub ground_condition: bool,
    pub log_partition: Vec<f64>,
    pub records: Vec<ContourRecord>,
}

impl PeierlsSweep {
    /// Largest Peierls ratio over all contours, per `β`.
    pub fn max_ratio(&self) -> Vec<f64> {
        (0..self.betas.len())
            .map(|b| {
                self.records
                    .iter()
                    .map(|r| r.probabilities[b].ratio)
                    .fold(0.0, f64::max)
            })
            .collect()
    }
}

pub fn finish_peierls(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    sums: PeierlsSums,
) -> Result<PeierlsSweep> {
    let lambda0 = spec.lambda0()?;
    let log_partition: Vec<f64> = sums.total.iter().map(LogSum::value).collect();
    let records = sums
        .per_contour
        .into_iter()
        .map(|(contour, (occurrences, acc))| {
            let probabilities = acc
                .iter()
                .enumerate()
                .map(|(b, s)| {
                    let log_p = s.value() - log_partition[b];
                    let beta = sums.betas[b];
                    ContourProbability {
                        beta,
                        log_p,
                        p: libm::exp(log_p),
                        ratio: peierls_ratio(log_p, beta, lambda0, contour.size()),
                        occurrences,
                    }
                })
                .collect();
            ContourRecord {
                contour,
                occurrences,
                probabilities,
            }
        })
        .collect();
    Ok(PeierlsSweep {
        n: vol.n(),
        boundary_spin,
        betas: sums.betas,
        lambda0,
        ground_condition: spec.check_ground_condition().holds(),
        log_partition,
        records,
    })
}

/// `p_i(γ)` and the Peierls ratio for every contour realized in `V_n`.
pub fn peierls_sweep(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    betas: &[f64],
    budget: &Budget,
) -> Result<PeierlsSweep> {
    let space = ConfigurationSpace::new(vol, spec.q(), budget)?;
    let sums = accumulate_peierls(spec, &space, boundary_spin, betas, 0..space.count())?;
    finish_peierls(spec, vol, boundary_spin, sums)
}

/// Outcome of checking `χ_γ` over every configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiCheck {
    /// Number of (configuration, contour) pairs examined.
    pub pairs: u64,
    pub distinct_contours: usize,
    /// Pairs where `|Γ_ε(σ)| = |Γ_ε(χ_γ σ)| + |γ_ε|` failed for some `ε`.
    pub class_size_failures: u64,
    /// Pairs where `γ` still meets the boundary of `χ_γ σ`.
    pub residual_failures: u64,
    /// Contours on whose occurrence set `χ_γ` is not injective.
    pub injectivity_failures: usize,
}

impl ChiCheck {
    pub fn holds(&self) -> bool {
        self.class_size_failures == 0
            && self.residual_failures == 0
            && self.injectivity_failures == 0
    }
}

/// Applies `χ_γ` to every contour of every configuration on `V_n`.
pub fn chi_check(
    vol: &TreeVolume,
    q: usize,
    boundary_spin: u8,
    budget: &Budget,
) -> Result<ChiCheck> {
    let space = ConfigurationSpace::new(vol, q, budget)?;
    let mut images: BTreeMap<Contour, (u64, alloc::collections::BTreeSet<Vec<u8>>)> =
        BTreeMap::new();
    let mut check = ChiCheck {
        pairs: 0,
        distinct_contours: 0,
        class_size_failures: 0,
        residual_failures: 0,
        injectivity_failures: 0,
    };
    let mut failure = None;
    space.for_each_extended(0..space.count(), boundary_spin, |_, spins| {
        if failure.is_some() {
            return;
        }
        let ext = Configuration::new(spins.to_vec());
        let (contours, before) = match contour::decompose(vol, &ext)
            .and_then(|c| Ok((c, contour::boundary(vol, &ext)?)))
        {
            Ok(x) => x,
            Err(e) => {
                failure = Some(e);
                return;
            }
        };
        let before = before.class_sizes();
        for gamma in contours {
            check.pairs += 1;
            let image = erase(&ext, &gamma, boundary_spin);
            let after_set = contour::boundary(vol, &image).unwrap();
            let after = after_set.class_sizes();
            let removed = gamma.class_sizes();
            let classes: alloc::collections::BTreeSet<SpinPair> = before
                .keys()
                .chain(after.keys())
                .chain(removed.keys())
                .copied()
                .collect();
            let ok = classes.iter().all(|p| {
                before.get(p).copied().unwrap_or(0)
                    == after.get(p).copied().unwrap_or(0) + removed.get(p).copied().unwrap_or(0)
            });
            if !ok {
                check.class_size_failures += 1;
            }
            if gamma.support().iter().any(|&e| after_set.contains(e)) {
                check.residual_failures += 1;
            }
            let entry = images.entry(gamma).or_default();
            entry.0 += 1;
            entry.1.insert(image.into_spins());
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    check.distinct_contours = images.len();
    check.injectivity_failures = images
        .values()
        .filter(|(count, set)| *count != set.len() as u64)
        .count();
    Ok(check)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{build_volume, Vertex};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn contour_hamiltonian_examples() {
        let vol = build_volume(2, 2).unwrap();
        let potts = ModelSpec::potts(2, 2);
        let constant = Configuration::constant(vol.inner_len(), 0);
        assert_eq!(contour_hamiltonian(&potts, &vol, &constant, 0).unwrap(), -21.0);

        let mut flipped = constant.clone();
        flipped.set(Vertex::ROOT, 1);
        let contour_form = contour_hamiltonian(&potts, &vol, &flipped, 0).unwrap();
        let direct = direct_hamiltonian(&potts, &vol, &flipped, 0).unwrap();
        assert_eq!(contour_form, -18.0);
        assert_eq!(direct, -18.0);

        let potts3 = ModelSpec::potts(2, 3);
        let all_two = Configuration::constant(vol.inner_len(), 1);
        assert_eq!(contour_hamiltonian(&potts3, &vol, &all_two, 0).unwrap(), -9.0);
        assert_eq!(direct_hamiltonian(&potts3, &vol, &all_two, 0).unwrap(), -9.0);
    }

    #[test]
    fn contour_form_has_a_residual_with_unequal_diagonals() {
        let vol = build_volume(2, 1).unwrap();
        let s = ModelSpec::new(2, 2, &[std::vec![-1.0, 0.0], std::vec![0.0, -2.0]], &[0.0, 0.0])
            .unwrap();
        let sigma = Configuration::constant(vol.inner_len(), 1);
        let contour_form = contour_hamiltonian(&s, &vol, &sigma, 0).unwrap();
        let direct = direct_hamiltonian(&s, &vol, &sigma, 0).unwrap();
        // three interior edges at U_22 = -2 are counted at U_11 = -1
        assert!(close(contour_form - direct, 3.0, 1e-12));
    }

    #[test]
    fn log_partition_examples() {
        let budget = Budget::default();
        let potts = ModelSpec::potts(2, 2);
        let vol = build_volume(2, 2).unwrap();
        let lz = log_partition_bruteforce(&potts, &vol, 0, 0.0, &budget).unwrap();
        assert!(close(lz, 10.0 * 2f64.ln(), 1e-12));

        // single free spin with three edges to the halo
        let vol0 = build_volume(2, 0).unwrap();
        let beta: f64 = 0.7;
        // weights e^{3β} (root agrees with the halo) and 1
        let expected = (3.0 * beta).exp().ln_1p();
        let lz = log_partition_bruteforce(&potts, &vol0, 0, beta, &budget).unwrap();
        assert!(close(lz, expected, 1e-12));
    }

    #[test]
    fn recursion_matches_enumeration() {
        let budget = Budget::default();
        for q in [2, 3] {
            let potts = ModelSpec::potts(2, q);
            for n in [0, 1, 2] {
                let vol = build_volume(2, n).unwrap();
                for beta in [0.0, 0.5, 1.0, 2.0, 5.0] {
                    for i in 0..q as u8 {
                        let sums = ensemble_bruteforce(&potts, &vol, i, &[beta], &budget).unwrap();
                        let rec = root_marginal_recursion(&potts, n, i, beta, &budget).unwrap();
                        let brute = sums.root_marginal(0);
                        for (a, b) in rec.root_marginal.iter().zip(&brute) {
                            assert!(close(*a, *b, 1e-10));
                        }
                        assert!(close(rec.log_partition, sums.log_partition(0), 1e-9));
                    }
                }
            }
        }
    }

    #[test]
    fn recursion_at_infinite_temperature_is_uniform() {
        let s = ModelSpec::new(
            2,
            3,
            &[std::vec![0.3, -1.0, 2.0], std::vec![-1.0, 0.0, 0.5], std::vec![2.0, 0.5, 1.0]],
            &[0.1, 0.2, -0.3],
        )
        .unwrap();
        let rep = root_marginal_recursion(&s, 8, 2, 0.0, &Budget::default()).unwrap();
        assert!(rep.root_marginal.iter().all(|&p| close(p, 1.0 / 3.0, 1e-15)));
        assert!(root_marginal_recursion(&s, 8, 3, 0.0, &Budget::default()).is_err());
        assert!(root_marginal_recursion(&s, 8, 0, -1.0, &Budget::default()).is_err());
    }

    #[test]
    fn chunked_enumeration_covers_the_space() {
        let vol = build_volume(2, 1).unwrap();
        let space = ConfigurationSpace::new(&vol, 3, &Budget::default()).unwrap();
        assert_eq!(space.count(), 81);
        let mut seen = std::collections::BTreeSet::new();
        for r in space.chunks(5) {
            space.for_each_extended(r, 0, |i, spins| {
                let decoded: u64 = spins[..4]
                    .iter()
                    .rev()
                    .fold(0, |acc, &s| acc * 3 + s as u64);
                assert_eq!(decoded, i);
                assert!(spins[4..].iter().all(|&s| s == 0));
                seen.insert(i);
            });
        }
        assert_eq!(seen.len(), 81);
        let tight = Budget {
            max_configurations: 80,
            ..Budget::default()
        };
        assert!(ConfigurationSpace::new(&vol, 3, &tight).is_err());
    }

    #[test]
    fn chi_gamma_examples() {
        let vol = build_volume(2, 3).unwrap();
        let mut ext = Configuration::constant(vol.num_vertices(), 0);
        ext.set(Vertex::ROOT, 1);
        let gamma = contour::decompose(&vol, &ext).unwrap().remove(0);
        let image = chi_gamma(&vol, &ext, &gamma, 0).unwrap();
        assert!(image.spins().iter().all(|&s| s == 0));

        // two distant contours: erase one, the other is untouched
        let far = Vertex::new(vol.sphere_range(3).start);
        ext.set(far, 1);
        let contours = contour::decompose(&vol, &ext).unwrap();
        assert_eq!(contours.len(), 2);
        let image = chi_gamma(&vol, &ext, &contours[0], 0).unwrap();
        let after = contour::decompose(&vol, &image).unwrap();
        assert_eq!(after, std::vec![contours[1].clone()]);
        let before = contour::boundary(&vol, &ext).unwrap();
        let now = contour::boundary(&vol, &image).unwrap();
        assert_eq!(before.len(), now.len() + contours[0].size());
        assert!(contours[0].support().iter().all(|&e| !now.contains(e)));

        assert!(chi_gamma(&vol, &image, &contours[0], 0).is_err());
    }

    #[test]
    fn contour_probability_examples() {
        let budget = Budget::default();
        let vol = build_volume(2, 2).unwrap();
        let potts = ModelSpec::potts(2, 2);
        let mut ext = Configuration::constant(vol.num_vertices(), 0);
        ext.set(Vertex::ROOT, 1);
        let star = contour::decompose(&vol, &ext).unwrap().remove(0);

        let p0 = contour_probability(&potts, &vol, 0, 0.0, &star, &budget).unwrap();
        // each neighbour of the root must stay joined to the sea: 3 of the 4
        // choices for its two children
        assert_eq!(p0.occurrences, 27);
        assert!(close(p0.p, 27.0 / 1024.0, 1e-12));
        assert!(close(p0.ratio, p0.p, 1e-15));

        for beta in [1.0, 2.0] {
            let p = contour_probability(&potts, &vol, 0, beta, &star, &budget).unwrap();
            assert!(p.p <= (-3.0 * beta).exp() * (1.0 + 1e-10));
            assert!(p.ratio <= 1.0 + 1e-10);
        }

        // a mark equal to the boundary spin cannot touch the sea
        let bad = contour::Contour::from_marked_interiors(&vol, &[(0, std::vec![Vertex::ROOT])], 1)
            .unwrap();
        assert!(contour_probability(&potts, &vol, 0, 1.0, &bad, &budget).is_err());
    }

    #[test]
    fn sweep_agrees_with_single_contour_probability() {
        let budget = Budget::default();
        let vol = build_volume(2, 1).unwrap();
        let potts = ModelSpec::potts(2, 3);
        let sweep = peierls_sweep(&potts, &vol, 0, &[0.5, 2.0], &budget).unwrap();
        assert!(sweep.ground_condition);
        for rec in sweep.records.iter().take(20) {
            for (b, &beta) in sweep.betas.iter().enumerate() {
                let single =
                    contour_probability(&potts, &vol, 0, beta, &rec.contour, &budget).unwrap();
                assert!(close(single.p, rec.probabilities[b].p, 1e-12));
                assert_eq!(single.occurrences, rec.occurrences);
            }
        }
        assert!(sweep.max_ratio().iter().all(|&r| r <= 1.0 + 1e-10));
    }

    #[test]
    fn chi_check_small() {
        let vol = build_volume(2, 1).unwrap();
        let c = chi_check(&vol, 3, 0, &Budget::default()).unwrap();
        assert!(c.holds(), "{c:?}");
        assert!(c.pairs > 0);
    }
}
