use alloc::vec::Vec;

use crate::{Error, Result};

/// Quasi-uniformity limit on the ratio of the longest to the shortest element.
pub const MAX_ELEMENT_RATIO: f64 = 10.0;

/// Nodes `0 = x_0 < x_1 < ... < x_M = L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialMesh {
    nodes: Vec<f64>,
}

impl SpatialMesh {
    /// Uniform mesh with `elements` cells of width `length / elements`.
    pub fn uniform(length: f64, elements: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidMesh("domain length must be positive"));
        }
        if elements < 2 {
            return Err(Error::InvalidMesh("need at least two elements"));
        }
        let m = elements as f64;
        let nodes = (0..=elements)
            .map(|j| if j == elements { length } else { j as f64 * length / m })
            .collect();
        Ok(Self { nodes })
    }

    /// Mesh from explicit node coordinates, checked for ordering and quasi-uniformity.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(Error::InvalidMesh("need at least two elements"));
        }
        if nodes[0] != 0.0 {
            return Err(Error::InvalidMesh("first node must be 0"));
        }
        let mut hmin = f64::INFINITY;
        let mut hmax: f64 = 0.0;
        for pair in nodes.windows(2) {
            let h = pair[1] - pair[0];
            if !(h > 0.0) {
                return Err(Error::InvalidMesh("nodes must be strictly increasing"));
            }
            hmin = hmin.min(h);
            hmax = hmax.max(h);
        }
        if hmax / hmin > MAX_ELEMENT_RATIO {
            return Err(Error::InvalidMesh("mesh is not quasi-uniform"));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn length(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    /// Number of elements M.
    pub fn elements(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Number of interior degrees of freedom, M - 1.
    pub fn dofs(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Largest element width.
    pub fn h(&self) -> f64 {
        self.nodes
            .windows(2)
            .fold(0.0, |m, p| m.max(p[1] - p[0]))
    }

    pub fn interior(&self) -> &[f64] {
        &self.nodes[1..self.nodes.len() - 1]
    }

    /// Nodal interpolant of `g` at the interior nodes.
    pub fn interpolate(&self, g: impl Fn(f64) -> f64) -> super::FemVector {
        self.interior().iter().map(|&x| g(x)).collect::<Vec<_>>().into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_meshes() {
        let m = SpatialMesh::uniform(1.0, 2).unwrap();
        assert_eq!(m.nodes(), &[0.0, 0.5, 1.0]);
        assert_eq!(m.dofs(), 1);
        assert_eq!(SpatialMesh::uniform(1.0, 8).unwrap().h(), 0.125);
        assert_eq!(SpatialMesh::uniform(2.0, 4).unwrap().nodes()[3], 1.5);
        assert!(SpatialMesh::uniform(1.0, 1).is_err());
        assert!(SpatialMesh::uniform(-1.0, 4).is_err());
    }

    #[test]
    fn explicit_nodes() {
        assert!(SpatialMesh::from_nodes(alloc::vec![0.0, 0.3, 1.0]).is_ok());
        assert!(SpatialMesh::from_nodes(alloc::vec![0.0, 0.05, 1.0]).is_err());
        assert!(SpatialMesh::from_nodes(alloc::vec![0.0, 0.6, 0.5, 1.0]).is_err());
        assert!(SpatialMesh::from_nodes(alloc::vec![0.1, 0.6, 1.0]).is_err());
    }
}
