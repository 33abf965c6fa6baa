//! The polyhedra `P_b = {x ∈ R^d : ⟨x, h(e_i)⟩ ≥ −b_i}` cut out by a
//! calibration and a parameter `b`.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::index_set::IndexSet;
use crate::linalg::{self, Calibration, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub point: Vector,
    /// Constraints with zero slack at the point.
    pub tight: IndexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    /// Positions into [`HPolytope::vertices`].
    pub vertices: Vec<usize>,
    pub dim: i32,
    /// Facet-defining constraints tight on the whole face.
    pub tight: IndexSet,
}

#[derive(Clone, Debug, Serialize)]
pub struct HPolytope {
    d: usize,
    b: Vector,
    vertices: Vec<Vertex>,
    rays: Vec<Vector>,
    dimension: i32,
    facet_dims: Vec<i32>,
}

impl HPolytope {
    pub fn new(c: &Calibration, b: &[Scalar]) -> Result<Self> {
        c.check_b(b)?;
        let d = c.dim();
        let mut seen: HashMap<Vector, ()> = HashMap::new();
        let mut vertices = Vec::new();
        for (set, inv) in c.bases() {
            let rhs: Vector = set.iter().map(|i| -&b[i]).collect();
            let x = inv.mul_vec(&rhs)?;
            if seen.contains_key(&x) {
                continue;
            }
            let mut tight = IndexSet::empty();
            let mut feasible = true;
            for i in 0..c.len() {
                match c.slack(&x, b, i).sign() {
                    -1 => {
                        feasible = false;
                        break;
                    }
                    0 => tight.insert(i),
                    _ => {}
                }
            }
            seen.insert(x.clone(), ());
            if feasible {
                vertices.push(Vertex { point: x, tight });
            }
        }
        vertices.sort_by(|a, b| a.tight.cmp(&b.tight).then_with(|| a.point.cmp(&b.point)));
        let rays = c.dual_cone_rays().to_vec();
        // a vertex with exactly d tight constraints has a simplicial tangent
        // cone: P is full-dimensional and each of those constraints is a facet
        let simple_tight = vertices
            .iter()
            .filter(|v| v.tight.len() == d)
            .fold(IndexSet::empty(), |acc, v| acc.union(v.tight));
        let dimension = if simple_tight.is_empty() {
            affine_dim(vertices.iter().map(|v| &v.point), rays.iter())
        } else {
            d as i32
        };
        let facet_dims = (0..c.len())
            .map(|i| {
                if simple_tight.contains(i) {
                    return d as i32 - 1;
                }
                let pts = vertices.iter().filter(|v| v.tight.contains(i)).map(|v| &v.point);
                let dirs = rays.iter().filter(|r| linalg::dot(r, c.column(i)).is_zero());
                affine_dim(pts, dirs)
            })
            .collect();
        Ok(HPolytope { d, b: b.to_vec(), vertices, rays, dimension, facet_dims })
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    /// Vertices sorted by tight set.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Extreme rays of the recession cone.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Affine dimension, `−1` when empty.
    pub fn dimension(&self) -> i32 {
        self.dimension
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension == self.d as i32
    }

    /// Dimension of `P_b ∩ {⟨x, h(e_i)⟩ = −b_i}` (zero-based `i`), `−1` when empty.
    pub fn facet_dim(&self, i: usize) -> i32 {
        self.facet_dims[i]
    }

    pub fn facet_dims(&self) -> &[i32] {
        &self.facet_dims
    }

    /// Constraints defining genuine facets.
    pub fn facet_set(&self) -> IndexSet {
        (0..self.facet_dims.len()).filter(|&i| self.facet_dims[i] == self.d as i32 - 1).collect()
    }

    /// Constraints whose face has dimension below `d − 1` (possibly empty).
    pub fn virtual_facets(&self) -> IndexSet {
        (0..self.facet_dims.len()).filter(|&i| self.facet_dims[i] < self.d as i32 - 1).collect()
    }

    /// Every vertex lies on exactly `d` facets. False unless full-dimensional.
    pub fn is_simple(&self) -> bool {
        if !self.is_full_dimensional() {
            return false;
        }
        let facets = self.facet_set();
        self.vertices.iter().all(|v| v.tight.intersection(facets).len() == self.d)
    }

    pub fn contains(&self, c: &Calibration, x: &[Scalar]) -> bool {
        (0..c.len()).all(|i| !c.slack(x, &self.b, i).is_negative())
    }

    /// All nonempty faces of a bounded polytope, including the polytope itself,
    /// as intersections of facets. Sorted by vertex lists.
    pub fn faces(&self) -> Vec<Face> {
        if self.is_empty() {
            return Vec::new();
        }
        let facets = self.facet_set();
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let facet_vertices: Vec<Vec<usize>> = facets
            .iter()
            .map(|i| all.iter().copied().filter(|&v| self.vertices[v].tight.contains(i)).collect())
            .collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack = vec![all];
        while let Some(f) = stack.pop() {
            if !found.insert(f.clone()) {
                continue;
            }
            for fv in &facet_vertices {
                let g: Vec<usize> = f.iter().copied().filter(|v| fv.contains(v)).collect();
                if !g.is_empty() && g.len() < f.len() && !found.contains(&g) {
                    stack.push(g);
                }
            }
        }
        found
            .into_iter()
            .map(|vs| {
                let dim = affine_dim(vs.iter().map(|&v| &self.vertices[v].point), std::iter::empty());
                let tight = vs.iter().fold(facets, |acc, &v| acc.intersection(self.vertices[v].tight));
                Face { vertices: vs, dim, tight }
            })
            .collect()
    }
}

/// Affine dimension of `conv(points) + cone(directions)`, `−1` with no points.
fn affine_dim<'a>(
    mut points: impl Iterator<Item = &'a Vector>,
    directions: impl Iterator<Item = &'a Vector>,
) -> i32 {
    let Some(p0) = points.next() else { return -1 };
    let mut rows: Vec<Vector> = points.map(|p| linalg::sub(p, p0)).collect();
    rows.extend(directions.cloned());
    let refs: Vec<&[Scalar]> = rows.iter().map(|r| r.as_slice()).collect();
    linalg::rank_of(&refs) as i32
}

pub fn vertices(c: &Calibration, b: &[Scalar]) -> Result<Vec<Vertex>> {
    Ok(HPolytope::new(c, b)?.vertices)
}

pub fn dimension(c: &Calibration, b: &[Scalar]) -> Result<i32> {
    Ok(HPolytope::new(c, b)?.dimension)
}

/// Zero-based `i`.
pub fn facet_dim(c: &Calibration, b: &[Scalar], i: usize) -> Result<i32> {
    Ok(HPolytope::new(c, b)?.facet_dim(i))
}

pub fn is_simple(c: &Calibration, b: &[Scalar]) -> Result<bool> {
    Ok(HPolytope::new(c, b)?.is_simple())
}
