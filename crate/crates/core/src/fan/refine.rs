use serde::Serialize;

use super::QuantumFan;
use crate::cone;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{self, normalize_direction, Vector};

/// A fan given by explicit ray vectors; intersections of cones from two
/// fans over the same columns generally need rays that are not columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinedFan {
    /// Each cone's rays, normalized and sorted; cones sorted.
    pub cones: Vec<Vec<Vector>>,
    /// For each ray, the column it is a positive multiple of, if any.
    pub labels: Vec<Vec<Option<usize>>>,
}

impl RefinedFan {
    /// Cones as index sets when every ray is a column.
    pub fn index_cones(&self) -> Option<Vec<IndexSet>> {
        let mut out: Vec<IndexSet> = self
            .labels
            .iter()
            .map(|ls| ls.iter().map(|l| l.ok_or(())).collect::<std::result::Result<IndexSet, ()>>().ok())
            .collect::<Option<Vec<_>>>()?;
        out.sort();
        Some(out)
    }

    /// Every cone lies inside some maximal cone of `f`.
    pub fn refines(&self, f: &QuantumFan) -> bool {
        self.cones.iter().all(|rays| {
            f.cones().iter().any(|&c| {
                let gens = f.vectors(c);
                rays.iter().all(|r| cone::contains(&gens, r))
            })
        })
    }

    /// The cone of `f` spanned by `set` appears unchanged.
    pub fn has_cone(&self, f: &QuantumFan, set: IndexSet) -> bool {
        let mut rays: Vec<Vector> = set.iter().map(|i| normalize_direction(f.calibration().column(i))).collect();
        rays.sort();
        self.cones.contains(&rays)
    }
}

/// Full-dimensional intersections `σ ∩ σ'` of maximal cones of two fans over
/// the same columns. Supported for `d ≤ 3`.
pub fn common_refinement(f1: &QuantumFan, f2: &QuantumFan) -> Result<RefinedFan> {
    let c = f1.calibration();
    if c.columns() != f2.calibration().columns() {
        return Err(Error::InvalidInput("fans over different columns".into()));
    }
    let d = c.dim();
    if d > 3 {
        return Err(Error::Unsupported(format!("common refinement in dimension {d}")));
    }
    let normals = |f: &QuantumFan, s: IndexSet| -> Vec<Vector> {
        cone::facets(&f.vectors(s), d).into_iter().map(|(_, w)| w).collect()
    };
    let mut cones: Vec<Vec<Vector>> = Vec::new();
    for &s in f1.cones() {
        let ns = normals(f1, s);
        for &t in f2.cones() {
            let mut h = ns.clone();
            h.extend(normals(f2, t));
            let rays = cone::extreme_rays(&h, d);
            let refs: Vec<&[crate::scalar::Scalar]> = rays.iter().map(|r| r.as_slice()).collect();
            if linalg::rank_of(&refs) == d && !cones.contains(&rays) {
                cones.push(rays);
            }
        }
    }
    cones.sort();
    let labels = cones
        .iter()
        .map(|rays| {
            rays.iter()
                .map(|r| (0..c.len()).find(|&j| linalg::positive_multiple(c.column(j), r).is_some()))
                .collect()
        })
        .collect();
    Ok(RefinedFan { cones, labels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Calibration;

    fn sets(v: &[&[usize]]) -> Vec<IndexSet> {
        v.iter().map(|s| IndexSet::from_one_based(s)).collect()
    }

    #[test]
    fn refinement_with_itself() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let f = QuantumFan::new(c, sets(&[&[1, 2], &[2, 3], &[1, 3]]), IndexSet::empty()).unwrap();
        let r = common_refinement(&f, &f).unwrap();
        assert_eq!(r.index_cones().unwrap(), f.cones().to_vec());
    }

    #[test]
    fn two_diagonals_of_a_square_cone() {
        let c = Calibration::from_i64(&[&[1, 1, 1], &[-1, 1, 1], &[-1, -1, 1], &[1, -1, 1]]).unwrap();
        let f = QuantumFan::new(c.clone(), sets(&[&[1, 2, 3], &[1, 3, 4]]), IndexSet::empty()).unwrap();
        let g = QuantumFan::new(c, sets(&[&[1, 2, 4], &[2, 3, 4]]), IndexSet::empty()).unwrap();
        let r = common_refinement(&f, &g).unwrap();
        assert_eq!(r.cones.len(), 4);
        assert!(r.index_cones().is_none());
        assert!(r.cones.iter().all(|rays| rays.contains(&crate::linalg::Matrix::from_i64(&[&[0, 0, 1]]).row(0).to_vec())));
        assert!(r.refines(&f) && r.refines(&g));
    }
}
