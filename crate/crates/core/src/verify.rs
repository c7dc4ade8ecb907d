//! Exhaustive checks of the counting identities, bounds and energy identities.
//!
//! Every check returns a report with enough detail to print a verdict and to
//! locate a counterexample. Checks over configuration space take an index
//! range so that a driver can split them across threads and merge the
//! partial reports in range order.

use alloc::vec::Vec;
use core::ops::Range;

use crate::config::Configuration;
use crate::contour::{self, for_each_combination};
use crate::error::{Budget, Error, Result};
use crate::gibbs::{self, ConfigurationSpace};
use crate::group::{self, FiniteQuotient};
use crate::model::{self, ModelSpec};
use crate::tree::{build_volume_with, SubgraphHandle, TreeVolume, Vertex};

/// Connected sets `K ∋ x⁰` checked against `|∂V(K)| = (k-1)|V(K)| + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySizeReport {
    pub k: usize,
    pub max_vertices: usize,
    /// Number of sets by vertex count, index `s - 1` for `s` vertices.
    pub by_size: Vec<u64>,
    /// Sets whose vertex boundary has the wrong size.
    pub failures: u64,
    /// Sets where the vertex boundary and the incident-edge boundary differ
    /// in size.
    pub edge_mismatches: u64,
    pub first_failure: Option<Vec<Vertex>>,
}

impl BoundarySizeReport {
    pub fn total(&self) -> u64 {
        self.by_size.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.failures == 0 && self.edge_mismatches == 0
    }
}

pub fn boundary_sizes(k: usize, max_vertices: usize, budget: &Budget) -> Result<BoundarySizeReport> {
    if max_vertices == 0 {
        return Err(Error::Domain("need at least one vertex per set".into()));
    }
    let vol = build_volume_with(k, max_vertices - 1, budget)?;
    let mut report = BoundarySizeReport {
        k,
        max_vertices,
        by_size: alloc::vec![0; max_vertices],
        failures: 0,
        edge_mismatches: 0,
        first_failure: None,
    };
    let mut err = None;
    vol.for_each_connected_set(Vertex::ROOT, max_vertices, &[], |set| {
        if err.is_some() {
            return;
        }
        let outcome = vol.vertex_boundary(set).and_then(|vb| {
            let sub = SubgraphHandle::induced(&vol, set)?;
            Ok((vb.len(), vol.incident_edge_boundary(&sub)?.len()))
        });
        let (vb, eb) = match outcome {
            Ok(x) => x,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        report.by_size[set.len() - 1] += 1;
        if vb != (k - 1) * set.len() + 2 {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(set.to_vec());
            }
        }
        if vb != eb {
            report.edge_mismatches += 1;
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

/// `Ñ(x⁰)` by edge count against `(ek)^s`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgraphCountReport {
    pub k: usize,
    /// `(size, count, bound)` for sizes `1..=max_edges`.
    pub rows: Vec<(usize, u64, f64)>,
}

impl SubgraphCountReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, c, b)| c as f64 <= b)
    }
}

pub fn subgraph_counts(k: usize, max_edges: usize, budget: &Budget) -> Result<SubgraphCountReport> {
    let vol = build_volume_with(k, max_edges, budget)?;
    let counts = vol.enumerate_connected_subgraphs(Vertex::ROOT, max_edges)?;
    let rows = counts
        .into_iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c, contour::subgraph_count_bound(k, i + 1)))
        .collect();
    Ok(SubgraphCountReport { k, rows })
}

/// `N_r(x⁰)` against `θ α^r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourCountReport {
    pub k: usize,
    pub q: usize,
    pub alpha: f64,
    pub theta: f64,
    /// `(r, count, bound)`.
    pub rows: Vec<(usize, u64, f64)>,
}

impl ContourCountReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&(_, c, b)| c as f64 <= b)
    }
}

pub fn contour_counts(k: usize, q: usize, max_r: usize, budget: &Budget) -> Result<ContourCountReport> {
    if k < 2 {
        return Err(Error::Domain(alloc::format!("tree order k = {k} must be at least 2")));
    }
    let reach = max_r.saturating_sub(2) / (k - 1);
    let vol = build_volume_with(k, reach, budget)?;
    let (alpha, theta) = contour::contour_bound_constants(k);
    let rows = (1..=max_r)
        .map(|r| {
            let c = contour::count_contours_at(&vol, Vertex::ROOT, r, q)?;
            Ok((r, c, contour::contour_count_bound(k, r)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContourCountReport {
        k,
        q,
        alpha,
        theta,
        rows,
    })
}

/// Contours checked against `(k-1)|E(K_Υ)| = k|Υ| - (km + 1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpanningReport {
    pub configurations: u64,
    pub contours: u64,
    pub failures: u64,
    pub first_failure: Option<Vec<u8>>,
}

impl SpanningReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(&mut self, other: SpanningReport) {
        self.configurations += other.configurations;
        self.contours += other.contours;
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    /// Adds one extended configuration to the report.
    pub fn record(&mut self, vol: &TreeVolume, ext: &Configuration) -> Result<()> {
        self.configurations += 1;
        for c in contour::decompose(vol, ext)? {
            self.contours += 1;
            match contour::spanning_subgraph(vol, &c) {
                Ok(_) => {}
                Err(Error::Structural(_)) => {
                    self.failures += 1;
                    if self.first_failure.is_none() {
                        self.first_failure = Some(ext.spins().to_vec());
                    }
                }
                Err(e) => return Err(e),
            }
        }
        Ok(())
    }
}

/// The spanning-subgraph identity over the configurations with indices in `range`.
pub fn spanning_identity_range(
    space: &ConfigurationSpace<'_>,
    boundary_spin: u8,
    range: Range<u64>,
) -> Result<SpanningReport> {
    let vol = space.volume();
    let mut report = SpanningReport::default();
    let mut err = None;
    space.for_each_extended(range, boundary_spin, |_, spins| {
        if err.is_none() {
            if let Err(e) = report.record(vol, &Configuration::new(spins.to_vec())) {
                err = Some(e);
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

pub fn spanning_identity_exhaustive(
    vol: &TreeVolume,
    q: usize,
    boundary_spin: u8,
    budget: &Budget,
) -> Result<SpanningReport> {
    let space = ConfigurationSpace::new(vol, q, budget)?;
    spanning_identity_range(&space, boundary_spin, 0..space.count())
}

/// The spanning-subgraph identity over caller-supplied configurations on `V_n`.
pub fn spanning_identity_on<I>(vol: &TreeVolume, boundary_spin: u8, configs: I) -> Result<SpanningReport>
where
    I: IntoIterator<Item = Configuration>,
{
    let mut report = SpanningReport::default();
    for sigma in configs {
        let ext = contour::extend_configuration(vol, &sigma, boundary_spin)?;
        report.record(vol, &ext)?;
    }
    Ok(report)
}

/// Contour-form energy against the edge sum.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct HamiltonianReport {
    pub configurations: u64,
    pub max_abs_diff: f64,
    pub failures: u64,
    pub first_failure: Option<Vec<u8>>,
}

impl HamiltonianReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    pub fn merge(&mut self, other: HamiltonianReport) {
        self.configurations += other.configurations;
        self.max_abs_diff = self.max_abs_diff.max(other.max_abs_diff);
        self.failures += other.failures;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }
}

pub fn hamiltonian_equiv_range(
    spec: &ModelSpec,
    space: &ConfigurationSpace<'_>,
    boundary_spin: u8,
    tol: f64,
    range: Range<u64>,
) -> Result<HamiltonianReport> {
    let vol = space.volume();
    let inner = vol.inner_len();
    let mut report = HamiltonianReport::default();
    let mut err = None;
    space.for_each_extended(range, boundary_spin, |_, spins| {
        if err.is_some() {
            return;
        }
        let sigma = Configuration::new(spins[..inner].to_vec());
        let contour_form = match gibbs::contour_hamiltonian(spec, vol, &sigma, boundary_spin) {
            Ok(h) => h,
            Err(e) => {
                err = Some(e);
                return;
            }
        };
        let direct = model::edge_sum(spec, vol, spins);
        let diff = libm::fabs(contour_form - direct);
        report.configurations += 1;
        report.max_abs_diff = report.max_abs_diff.max(diff);
        if diff > tol {
            report.failures += 1;
            if report.first_failure.is_none() {
                report.first_failure = Some(spins[..inner].to_vec());
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(report),
    }
}

pub fn hamiltonian_equiv(
    spec: &ModelSpec,
    vol: &TreeVolume,
    boundary_spin: u8,
    tol: f64,
    budget: &Budget,
) -> Result<HamiltonianReport> {
    let space = ConfigurationSpace::new(vol, spec.q(), budget)?;
    hamiltonian_equiv_range(spec, &space, boundary_spin, tol, 0..space.count())
}

/// Constant configurations checked against every perturbation on small sets.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateReport {
    pub ground_condition: bool,
    pub max_set_size: usize,
    pub sets: u64,
    pub perturbations: u64,
    /// Constant configurations (by spin) that satisfy the all-edges-minimal
    /// property.
    pub all_edges_minimal: Vec<bool>,
    /// `(spin, D, witness)` for each failing constant configuration.
    pub failures: Vec<(u8, Vec<Vertex>, Configuration)>,
}

impl GroundStateReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the ground-state check for every constant configuration and every
/// `D ⊆ V_n` with `1 <= |D| <= max_set_size`.
pub fn ground_states(
    spec: &ModelSpec,
    vol: &TreeVolume,
    max_set_size: usize,
    tol: f64,
    budget: &Budget,
) -> Result<GroundStateReport> {
    let inner = vol.inner_len();
    let mut report = GroundStateReport {
        ground_condition: spec.check_ground_condition().holds(),
        max_set_size,
        sets: 0,
        perturbations: 0,
        all_edges_minimal: Vec::new(),
        failures: Vec::new(),
    };
    for s in 0..spec.q() as u8 {
        let phi = Configuration::constant(vol.num_vertices(), s);
        report.all_edges_minimal.push(model::all_edges_minimal(spec, vol, &phi)?);
        let mut err = None;
        let mut failure = None;
        for size in 1..=max_set_size.min(inner) {
            for_each_combination(inner, size, &mut Vec::new(), &mut |idx| {
                if err.is_some() || failure.is_some() {
                    return;
                }
                let d: Vec<Vertex> = idx.iter().map(|&i| Vertex::new(i)).collect();
                match model::ground_state_bruteforce(spec, vol, &phi, &d, tol, budget) {
                    Ok(v) => {
                        report.sets += 1;
                        report.perturbations += v.checked;
                        if let Some(w) = v.witness {
                            failure = Some((s, d, w));
                        }
                    }
                    Err(e) => err = Some(e),
                }
            });
        }
        if let Some(e) = err {
            return Err(e);
        }
        report.failures.extend(failure);
    }
    Ok(report)
}

/// Distinct periodic configurations from injective coset assignments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCountReport {
    pub q: usize,
    pub index: usize,
    /// `q! / (q - r)!`, zero when `r > q`.
    pub expected: u64,
    pub found: u64,
}

impl PeriodicCountReport {
    pub fn holds(&self) -> bool {
        self.found == self.expected
    }
}

pub fn periodic_count(vol: &TreeVolume, quot: &FiniteQuotient, q: usize) -> Result<PeriodicCountReport> {
    let r = quot.index();
    let expected = if r > q {
        0
    } else {
        ((q - r + 1)..=q).map(|x| x as u64).product()
    };
    let found = group::distinct_injective_configurations(vol, quot, q)?.len() as u64;
    Ok(PeriodicCountReport {
        q,
        index: r,
        expected,
        found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::build_volume;

    #[test]
    fn boundary_sizes_small() {
        let r = boundary_sizes(2, 4, &Budget::default()).unwrap();
        // subtrees of the 3-regular tree containing the root, by size
        assert_eq!(r.by_size, std::vec![1, 3, 9, 28]);
        assert!(r.holds());
    }

    #[test]
    fn subgraph_counts_small() {
        let r = subgraph_counts(2, 2, &Budget::default()).unwrap();
        assert_eq!(r.rows[0].1, 3);
        assert_eq!(r.rows[1].1, 9);
        assert!(r.holds());
    }

    #[test]
    fn contour_counts_small() {
        let r = contour_counts(2, 2, 4, &Budget::default()).unwrap();
        let counts: Vec<u64> = r.rows.iter().map(|x| x.1).collect();
        assert_eq!(counts, std::vec![0, 0, 4, 9]);
        assert!(r.holds());
    }

    #[test]
    fn spanning_identity_and_hamiltonian_small() {
        let vol = build_volume(2, 1).unwrap();
        let e = spanning_identity_exhaustive(&vol, 3, 0, &Budget::default()).unwrap();
        assert_eq!(e.configurations, 81);
        assert!(e.holds() && e.contours > 0);
        let h = hamiltonian_equiv(&ModelSpec::potts(2, 3), &vol, 0, 1e-9, &Budget::default())
            .unwrap();
        assert!(h.holds());
        assert_eq!(h.configurations, 81);
    }

    #[test]
    fn hamiltonian_equiv_flags_unequal_diagonals() {
        let vol = build_volume(2, 1).unwrap();
        let s = ModelSpec::new(2, 2, &[std::vec![-1.0, 0.0], std::vec![0.0, -2.0]], &[0.0, 0.0])
            .unwrap();
        let h = hamiltonian_equiv(&s, &vol, 0, 1e-9, &Budget::default()).unwrap();
        assert!(!h.holds());
    }

    #[test]
    fn ground_states_small() {
        let vol = build_volume(2, 1).unwrap();
        let r = ground_states(&ModelSpec::potts(2, 2), &vol, 2, 1e-9, &Budget::default()).unwrap();
        assert!(r.holds() && r.ground_condition);
        assert_eq!(r.sets, 2 * (4 + 6));
        // anti-ferromagnetic: constants are not ground states
        let anti = ModelSpec::new(2, 2, &[std::vec![1.0, 0.0], std::vec![0.0, 1.0]], &[0.0, 0.0])
            .unwrap();
        let r = ground_states(&anti, &vol, 1, 1e-9, &Budget::default()).unwrap();
        assert!(!r.holds());
    }

    #[test]
    fn periodic_count_parity() {
        let vol = build_volume(2, 2).unwrap();
        for q in [2, 3] {
            let r = periodic_count(&vol, &FiniteQuotient::parity(2), q).unwrap();
            assert_eq!(r.expected, if q == 2 { 2 } else { 6 });
            assert!(r.holds());
        }
    }
}
