//! Model specifications, edge energies and Hamiltonians.
//!
//! Site fields are folded into the edges: an edge carrying spins `(i, j)` has
//! energy `U_ij = λ_ij + (h_i + h_j)/(k + 1)`, and the finite-volume
//! Hamiltonian is the sum of `U` over the edges touching the volume. This is
//! the form used for every Gibbs computation in the crate; the form with
//! separate site terms is available as [`site_form_hamiltonian`] and differs
//! from it only by the fields of the outside endpoints of crossing edges.

use alloc::vec::Vec;

use crate::config::{Configuration, PartialConfiguration};
use crate::error::{Error, Result};
use crate::tree::{TreeVolume, Vertex};

/// Default absolute tolerance for comparing edge energies.
pub const ENERGY_EQ_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSpec {
    k: usize,
    q: usize,
    lambda: Vec<f64>,
    h: Vec<f64>,
    u: Vec<f64>,
    u_min: f64,
    tol: f64,
}

impl ModelSpec {
    /// Validates dimensions, finiteness and symmetry (within `1e-12`).
    pub fn new(k: usize, q: usize, lambda: &[Vec<f64>], h: &[f64]) -> Result<Self> {
        Self::with_tolerance(k, q, lambda, h, ENERGY_EQ_TOL)
    }

    pub fn with_tolerance(
        k: usize,
        q: usize,
        lambda: &[Vec<f64>],
        h: &[f64],
        tol: f64,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidModel(alloc::format!(
                "order k must be at least 2, got {k}"
            )));
        }
        if !(2..=255).contains(&q) {
            return Err(Error::InvalidModel(alloc::format!(
                "q must lie in 2..=255, got {q}"
            )));
        }
        if lambda.len() != q {
            return Err(Error::InvalidModel(alloc::format!(
                "lambda has {} rows, expected {q}",
                lambda.len()
            )));
        }
        if let Some((r, row)) = lambda.iter().enumerate().find(|(_, row)| row.len() != q) {
            return Err(Error::InvalidModel(alloc::format!(
                "lambda row {} has {} entries, expected {q}",
                r + 1,
                row.len()
            )));
        }
        if h.len() != q {
            return Err(Error::InvalidModel(alloc::format!(
                "h has {} entries, expected {q}",
                h.len()
            )));
        }
        if lambda.iter().flatten().chain(h).any(|x| !x.is_finite()) {
            return Err(Error::InvalidModel("non-finite coupling or field".into()));
        }
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::InvalidModel("tolerance must be nonnegative".into()));
        }
        for (i, row) in lambda.iter().enumerate() {
            for (j, other) in lambda.iter().enumerate().skip(i + 1) {
                let (lij, lji) = (row[j], other[i]);
                if (lij - lji).abs() > ENERGY_EQ_TOL {
                    return Err(Error::Asymmetric { i, j, lij, lji });
                }
            }
        }
        let flat: Vec<f64> = lambda.iter().flatten().copied().collect();
        let mut u = alloc::vec![0.0; q * q];
        let scale = 1.0 / (k as f64 + 1.0);
        for i in 0..q {
            for j in 0..q {
                // symmetrize so that U_ij == U_ji holds bit for bit
                let l = if i <= j { flat[i * q + j] } else { flat[j * q + i] };
                u[i * q + j] = l + (h[i] + h[j]) * scale;
            }
        }
        let u_min = u.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(ModelSpec {
            k,
            q,
            lambda: flat,
            h: h.to_vec(),
            u,
            u_min,
            tol,
        })
    }

    /// Potts-type spec: `λ_ij = -δ_ij`, zero field.
    pub fn potts(k: usize, q: usize) -> Self {
        let lambda: Vec<Vec<f64>> = (0..q)
            .map(|i| (0..q).map(|j| if i == j { -1.0 } else { 0.0 }).collect())
            .collect();
        Self::new(k, q, &lambda, &alloc::vec![0.0; q]).unwrap()
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn lambda(&self, i: usize, j: usize) -> f64 {
        self.lambda[i * self.q + j]
    }

    pub fn field(&self, i: usize) -> f64 {
        self.h[i]
    }

    /// `U_ij` without bounds checking beyond the slice index.
    #[inline]
    pub fn u(&self, i: usize, j: usize) -> f64 {
        self.u[i * self.q + j]
    }

    /// `U_ij`, checking that both spins are in range.
    pub fn edge_energy(&self, i: usize, j: usize) -> Result<f64> {
        if i >= self.q || j >= self.q {
            return Err(Error::Domain(alloc::format!(
                "spin pair ({}, {}) outside 1..={}",
                i + 1,
                j + 1,
                self.q
            )));
        }
        Ok(self.u(i, j))
    }

    /// Minimum of `U_ij` over all pairs, diagonal included.
    pub fn u_min(&self) -> f64 {
        self.u_min
    }

    /// Distinct values of the `U` table (within tolerance), ascending.
    pub fn energy_levels(&self) -> Vec<f64> {
        let mut values = self.u.clone();
        values.sort_by(f64::total_cmp);
        let mut levels: Vec<f64> = Vec::new();
        for v in values {
            match levels.last() {
                Some(&last) if (v - last).abs() <= self.tol => {}
                _ => levels.push(v),
            }
        }
        levels
    }

    /// Gap between the smallest non-minimal `U` value and `U^min`.
    pub fn lambda0(&self) -> Result<f64> {
        let next = self
            .u
            .iter()
            .copied()
            .filter(|&v| v - self.u_min > self.tol)
            .fold(f64::INFINITY, f64::min);
        if next.is_infinite() {
            return Err(Error::DegenerateSpectrum);
        }
        Ok(next - self.u_min)
    }

    /// Checks that all `U_ii` coincide and every `U_ij` (`i < j`) lies
    /// strictly above them.
    pub fn check_ground_condition(&self) -> GroundCondition {
        let mut violations = Vec::new();
        let base = self.u(0, 0);
        for i in 1..self.q {
            if (self.u(i, i) - base).abs() > self.tol {
                violations.push(GroundConditionViolation::DiagonalMismatch { i });
            }
        }
        let diag_max = (0..self.q)
            .map(|i| self.u(i, i))
            .fold(f64::NEG_INFINITY, f64::max);
        for i in 0..self.q {
            for j in (i + 1)..self.q {
                if self.u(i, j) - diag_max <= self.tol {
                    violations.push(GroundConditionViolation::NoGap { i, j });
                }
            }
        }
        GroundCondition { violations }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroundConditionViolation {
    /// `U_ii` differs from `U_00`.
    DiagonalMismatch { i: usize },
    /// `U_ij` does not exceed the diagonal energies.
    NoGap { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundCondition {
    pub violations: Vec<GroundConditionViolation>,
}

impl GroundCondition {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

fn check_spins(spec: &ModelSpec, spins: impl IntoIterator<Item = u8>) -> Result<()> {
    for s in spins {
        if s as usize >= spec.q() {
            return Err(Error::Domain(alloc::format!(
                "spin {} outside 1..={}",
                s as usize + 1,
                spec.q()
            )));
        }
    }
    Ok(())
}

fn check_total(vol: &TreeVolume, config: &Configuration) -> Result<()> {
    if config.len() != vol.num_vertices() {
        return Err(Error::Domain(alloc::format!(
            "configuration has {} sites, the volume has {}",
            config.len(),
            vol.num_vertices()
        )));
    }
    Ok(())
}

/// `Σ_{l ∈ L_{n+1}} U(σ_l)` for a configuration on all of `V_{n+1}`.
pub fn hamiltonian(spec: &ModelSpec, vol: &TreeVolume, config: &Configuration) -> Result<f64> {
    check_total(vol, config)?;
    check_spins(spec, config.spins().iter().copied())?;
    Ok(edge_sum(spec, vol, config.spins()))
}

#[inline]
pub(crate) fn edge_sum(spec: &ModelSpec, vol: &TreeVolume, spins: &[u8]) -> f64 {
    let mut total = 0.0;
    for e in vol.edges() {
        let (u, v) = vol.endpoints(e);
        total += spec.u(spins[u.index()] as usize, spins[v.index()] as usize);
    }
    total
}

/// Splits the edges touching `Λ = supp(sigma)` into interior and crossing
/// parts and feeds each `(x, y, σ(x), value at y)` to `visit`.
fn visit_region_edges(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &PartialConfiguration,
    omega: &PartialConfiguration,
    mut visit: impl FnMut(Vertex, Vertex, u8, u8, bool),
) -> Result<()> {
    if sigma.len() != vol.num_vertices() || omega.len() != vol.num_vertices() {
        return Err(Error::Domain(
            "partial configurations must be indexed by the volume".into(),
        ));
    }
    for x in sigma.support() {
        if !vol.is_inner(x) {
            return Err(Error::Domain(alloc::format!(
                "region vertex {} lies on the halo",
                x.index()
            )));
        }
        if omega.get(x).is_some() {
            return Err(Error::Domain(alloc::format!(
                "vertex {} is assigned both inside and outside the region",
                x.index()
            )));
        }
    }
    check_spins(spec, sigma.support().map(|v| sigma.get(v).unwrap()))?;
    check_spins(spec, omega.support().map(|v| omega.get(v).unwrap()))?;
    for e in vol.edges() {
        let (u, v) = vol.endpoints(e);
        match (sigma.get(u), sigma.get(v)) {
            (Some(a), Some(b)) => visit(u, v, a, b, true),
            (Some(a), None) | (None, Some(a)) => {
                let (x, y) = if sigma.get(u).is_some() { (u, v) } else { (v, u) };
                let b = omega.get(y).ok_or_else(|| {
                    Error::Domain(alloc::format!(
                        "edge ({}, {}) leaves the region but vertex {} has no boundary value",
                        u.index(),
                        v.index(),
                        y.index()
                    ))
                })?;
                visit(x, y, a, b, false);
            }
            (None, None) => {}
        }
    }
    Ok(())
}

/// Energy of `σ` on `Λ = supp(sigma)` in the presence of the boundary
/// values `omega`, in the edge form: `U` summed over every edge with at least
/// one endpoint in `Λ`.
pub fn boundary_hamiltonian(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &PartialConfiguration,
    omega: &PartialConfiguration,
) -> Result<f64> {
    let mut total = 0.0;
    visit_region_edges(spec, vol, sigma, omega, |_, _, a, b, _| {
        total += spec.u(a as usize, b as usize);
    })?;
    Ok(total)
}

/// Energy with separate couplings and site fields: `λ` over interior and
/// crossing edges plus `h` over the sites of `Λ`.
pub fn site_form_hamiltonian(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &PartialConfiguration,
    omega: &PartialConfiguration,
) -> Result<f64> {
    let mut total = 0.0;
    visit_region_edges(spec, vol, sigma, omega, |_, _, a, b, _| {
        total += spec.lambda(a as usize, b as usize);
    })?;
    for x in sigma.support() {
        total += spec.field(sigma.get(x).unwrap() as usize);
    }
    Ok(total)
}

/// Vertices where two total configurations differ.
pub fn difference_set(sigma: &Configuration, phi: &Configuration) -> Vec<Vertex> {
    sigma
        .spins()
        .iter()
        .zip(phi.spins())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| Vertex::new(i))
        .collect()
}

/// `H(σ, φ) = Σ_l (U(σ_l) - U(φ_l))` for configurations differing on a
/// finite set inside `V_n`.
pub fn relative_hamiltonian(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &Configuration,
    phi: &Configuration,
) -> Result<f64> {
    check_total(vol, sigma)?;
    check_total(vol, phi)?;
    check_spins(spec, sigma.spins().iter().chain(phi.spins()).copied())?;
    let diff = difference_set(sigma, phi);
    if let Some(v) = diff.iter().find(|v| !vol.is_inner(**v)) {
        return Err(Error::Domain(alloc::format!(
            "configurations differ on halo vertex {}",
            v.index()
        )));
    }
    Ok(relative_on(spec, vol, sigma, phi, &diff))
}

fn relative_on(
    spec: &ModelSpec,
    vol: &TreeVolume,
    sigma: &Configuration,
    phi: &Configuration,
    diff: &[Vertex],
) -> f64 {
    let mut edges: Vec<_> = diff.iter().flat_map(|&v| vol.incident_edges(v)).collect();
    edges.sort_unstable();
    edges.dedup();
    edges
        .into_iter()
        .map(|e| {
            let (u, v) = vol.endpoints(e);
            spec.u(sigma.spin(u) as usize, sigma.spin(v) as usize)
                - spec.u(phi.spin(u) as usize, phi.spin(v) as usize)
        })
        .sum()
}

/// Outcome of an exhaustive ground-state check.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundStateVerdict {
    pub holds: bool,
    /// A perturbation with `H(φ, σ) > 0`, when one exists.
    pub witness: Option<Configuration>,
    /// Number of perturbations examined.
    pub checked: u64,
}

/// Checks `H(φ, σ) <= tol` for every `σ` that differs from `φ` only on `D`.
///
/// `tol` absorbs floating-point noise in the edge sums; use a small value
/// such as `1e-9`.
pub fn ground_state_bruteforce(
    spec: &ModelSpec,
    vol: &TreeVolume,
    phi: &Configuration,
    perturbed: &[Vertex],
    tol: f64,
    budget: &crate::error::Budget,
) -> Result<GroundStateVerdict> {
    check_total(vol, phi)?;
    check_spins(spec, phi.spins().iter().copied())?;
    let mut d = perturbed.to_vec();
    d.sort_unstable();
    d.dedup();
    if let Some(v) = d.iter().find(|v| !vol.is_inner(**v)) {
        return Err(Error::Domain(alloc::format!(
            "perturbation set touches halo vertex {}",
            v.index()
        )));
    }
    let q = spec.q();
    let total = (q as u128).checked_pow(d.len() as u32).unwrap_or(u128::MAX);
    budget.check_configurations(total)?;

    let mut sigma = phi.clone();
    let mut digits = alloc::vec![0usize; d.len()];
    let mut checked = 0u64;
    loop {
        for (slot, &v) in d.iter().enumerate() {
            sigma.set(v, digits[slot] as u8);
        }
        checked += 1;
        let diff = difference_set(&sigma, phi);
        let h = relative_on(spec, vol, phi, &sigma, &diff);
        if h > tol {
            return Ok(GroundStateVerdict {
                holds: false,
                witness: Some(sigma),
                checked,
            });
        }
        // odometer
        let mut slot = 0;
        loop {
            if slot == digits.len() {
                return Ok(GroundStateVerdict {
                    holds: true,
                    witness: None,
                    checked,
                });
            }
            digits[slot] += 1;
            if digits[slot] < q {
                break;
            }
            digits[slot] = 0;
            slot += 1;
        }
    }
}

/// Whether every edge of the volume realizes `U^min`.
pub fn all_edges_minimal(spec: &ModelSpec, vol: &TreeVolume, config: &Configuration) -> Result<bool> {
    check_total(vol, config)?;
    check_spins(spec, config.spins().iter().copied())?;
    Ok(vol.edges().all(|e| {
        let (u, v) = vol.endpoints(e);
        spec.u(config.spin(u) as usize, config.spin(v) as usize) - spec.u_min() <= spec.tol
    }))
}
