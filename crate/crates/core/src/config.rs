//! Spin configurations on prefixes of the breadth-first vertex order.
//!
//! Because vertices are numbered breadth-first, every ball `V_m` is the prefix
//! `0..|V_m|`; a configuration on `V_n` is a vector of length `|V_n|` and its
//! boundary extension is a vector of length `|V_{n+1}|`.

use alloc::vec::Vec;

use crate::tree::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Configuration {
    spins: Vec<u8>,
}

impl Configuration {
    pub fn new(spins: Vec<u8>) -> Self {
        Configuration { spins }
    }

    pub fn constant(len: usize, spin: u8) -> Self {
        Configuration {
            spins: alloc::vec![spin; len],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.spins.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    #[inline]
    pub fn spin(&self, v: Vertex) -> u8 {
        self.spins[v.index()]
    }

    #[inline]
    pub fn set(&mut self, v: Vertex, spin: u8) {
        self.spins[v.index()] = spin;
    }

    pub fn spins(&self) -> &[u8] {
        &self.spins
    }

    pub fn into_spins(self) -> Vec<u8> {
        self.spins
    }

    /// The restriction to the first `len` vertices.
    pub fn restrict(&self, len: usize) -> Configuration {
        Configuration {
            spins: self.spins[..len].to_vec(),
        }
    }

    /// Largest spin index plus one, or 0 for an empty configuration.
    pub fn spin_bound(&self) -> usize {
        self.spins.iter().map(|&s| s as usize + 1).max().unwrap_or(0)
    }
}

impl From<Vec<u8>> for Configuration {
    fn from(spins: Vec<u8>) -> Self {
        Configuration::new(spins)
    }
}

/// A configuration defined on a subset of the volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialConfiguration {
    spins: Vec<Option<u8>>,
}

impl PartialConfiguration {
    /// The empty assignment on a volume with `len` vertices.
    pub fn empty(len: usize) -> Self {
        PartialConfiguration {
            spins: alloc::vec![None; len],
        }
    }

    /// Assigns `spin` to every vertex in `vertices`.
    pub fn on(len: usize, vertices: impl IntoIterator<Item = Vertex>, spin: u8) -> Self {
        let mut p = Self::empty(len);
        for v in vertices {
            p.set(v, spin);
        }
        p
    }

    /// Restricts a total configuration to `vertices`.
    pub fn from_configuration(
        config: &Configuration,
        vertices: impl IntoIterator<Item = Vertex>,
    ) -> Self {
        let mut p = Self::empty(config.len());
        for v in vertices {
            p.set(v, config.spin(v));
        }
        p
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.spins.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> Option<u8> {
        self.spins.get(v.index()).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, spin: u8) {
        self.spins[v.index()] = Some(spin);
    }

    pub fn clear(&mut self, v: Vertex) {
        self.spins[v.index()] = None;
    }

    /// Vertices carrying a value, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.spins
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| Vertex::new(i))
    }
}
