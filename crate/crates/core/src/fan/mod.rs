//! Quantum fans: maximal cones as generator index sets over a calibration,
//! plus the set of virtual generators that carry no ray.

mod combinatorics;
mod refine;
mod strata;
mod support;

pub use combinatorics::{fan_automorphisms, fans_isomorphic, CombinatorialType, FanIsomorphism};
pub use refine::{common_refinement, RefinedFan};
pub use strata::{s_variety_strata, stabilizer_profiles, StabilizerProfile, StabilizerReport};
pub use support::{
    d_admissibility, strictly_convex_support, support_function, DAdmissibility, SupportFunction,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cone;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::Calibration;
use crate::polytope::HPolytope;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantumFan {
    cal: Calibration,
    cones: Vec<IndexSet>,
    virtual_set: IndexSet,
    complete: bool,
}

/// Outcome of the exact fan axioms on a [`QuantumFan`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanChecks {
    pub strongly_convex: bool,
    /// Generators used by the cones are exactly the non-virtual indices.
    pub generators_match: bool,
    pub intersections_are_faces: bool,
    pub complete: bool,
}

impl FanChecks {
    pub fn all(&self) -> bool {
        self.strongly_convex && self.generators_match && self.intersections_are_faces && self.complete
    }
}

impl QuantumFan {
    /// Cones are deduplicated and sorted; no geometric validation happens here
    /// (see [`QuantumFan::checks`]).
    pub fn new(cal: Calibration, cones: impl IntoIterator<Item = IndexSet>, virtual_set: IndexSet) -> Result<Self> {
        let cones: BTreeSet<IndexSet> = cones.into_iter().collect();
        let all = cal.all();
        if cones.iter().any(|c| !c.is_subset(all)) || !virtual_set.is_subset(all) {
            return Err(Error::InvalidInput("cone index out of range".into()));
        }
        let mut fan = QuantumFan { cal, cones: cones.into_iter().collect(), virtual_set, complete: false };
        fan.complete = fan.check_complete();
        Ok(fan)
    }

    pub fn calibration(&self) -> &Calibration {
        &self.cal
    }

    pub fn dim(&self) -> usize {
        self.cal.dim()
    }

    pub fn len(&self) -> usize {
        self.cal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Maximal cones in lexicographic order.
    pub fn cones(&self) -> &[IndexSet] {
        &self.cones
    }

    pub fn virtual_set(&self) -> IndexSet {
        self.virtual_set
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Generators appearing in some cone.
    pub fn rays(&self) -> IndexSet {
        self.cones.iter().fold(IndexSet::empty(), |acc, c| acc.union(*c))
    }

    pub fn vectors(&self, set: IndexSet) -> Vec<&[Scalar]> {
        set.iter().map(|i| self.cal.column(i)).collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| self.cal.rank_of(*c) == c.len())
    }

    /// Same maximal cones and virtual set.
    pub fn same_combinatorics(&self, other: &QuantumFan) -> bool {
        self.cones == other.cones && self.virtual_set == other.virtual_set
    }

    /// Every maximal cone that contains `v`.
    pub fn cones_containing(&self, v: &[Scalar]) -> Vec<IndexSet> {
        self.cones.iter().copied().filter(|c| cone::contains(&self.vectors(*c), v)).collect()
    }

    /// Facets of a full-dimensional cone, as index sets.
    pub fn cone_facets(&self, c: IndexSet) -> Vec<IndexSet> {
        let idx = c.to_vec();
        cone::facets(&self.vectors(c), self.dim())
            .into_iter()
            .map(|(on, _)| on.iter().map(|&p| idx[p]).collect())
            .collect()
    }

    /// Every facet of every maximal cone lies in exactly one other maximal
    /// cone, and every maximal cone is full-dimensional.
    pub fn check_complete(&self) -> bool {
        if self.cones.is_empty() {
            return false;
        }
        let d = self.dim();
        self.cones.iter().all(|&c| {
            self.cal.rank_of(c) == d
                && self.cone_facets(c).iter().all(|f| {
                    self.cones.iter().filter(|&&o| o != c && f.is_subset(o)).count() == 1
                })
        })
    }

    pub fn checks(&self) -> FanChecks {
        let d = self.dim();
        let strongly_convex = self.cones.iter().all(|c| cone::is_strongly_convex(&self.vectors(*c), d));
        let generators_match = self.rays() == self.cal.all().difference(self.virtual_set);
        let mut intersections_are_faces = true;
        'outer: for (a, &s) in self.cones.iter().enumerate() {
            for &t in &self.cones[a + 1..] {
                let common = s.intersection(t);
                if !cone::separated(
                    &self.vectors(common),
                    &self.vectors(s.difference(common)),
                    &self.vectors(t.difference(common)),
                    d,
                ) {
                    intersections_are_faces = false;
                    break 'outer;
                }
            }
        }
        FanChecks { strongly_convex, generators_match, intersections_are_faces, complete: self.complete }
    }

    /// Face poset of the fan as index sets.
    pub fn combinatorial_type(&self) -> CombinatorialType {
        let d = self.dim();
        let mut faces: BTreeSet<IndexSet> = BTreeSet::new();
        faces.insert(IndexSet::empty());
        for &c in &self.cones {
            let simplicial = self.cal.rank_of(c) == c.len();
            let idx = c.to_vec();
            let gens = self.vectors(c);
            for sub in c.subsets() {
                if faces.contains(&sub) {
                    continue;
                }
                let face = simplicial || {
                    let pos: Vec<usize> = sub.iter().map(|i| idx.binary_search(&i).expect("subset")).collect();
                    cone::is_face(&gens, &pos, d)
                };
                if face {
                    faces.insert(sub);
                }
            }
        }
        CombinatorialType::from_faces(self.len(), faces)
    }

    /// Star subdivision at the virtual generator `i` (zero-based): cones not
    /// containing `h(e_i)` stay, every other cone `σ` is replaced by the cones
    /// over `h(e_i)` and the facets of `σ` that miss it.
    pub fn star_subdivision(&self, i: usize) -> Result<QuantumFan> {
        if i >= self.len() {
            return Err(Error::InvalidInput(format!("generator {} out of range", i + 1)));
        }
        if self.rays().contains(i) {
            return Ok(self.clone());
        }
        let v = self.cal.column(i);
        let mut cones = Vec::new();
        let mut hit = false;
        for &c in &self.cones {
            if !cone::contains(&self.vectors(c), v) {
                cones.push(c);
                continue;
            }
            hit = true;
            for f in self.cone_facets(c) {
                if !cone::contains(&self.vectors(f), v) {
                    cones.push(f.with(i));
                }
            }
        }
        if !hit {
            return Err(Error::InvalidInput(format!("h(e_{}) lies outside the support", i + 1)));
        }
        QuantumFan::new(self.cal.clone(), cones, self.virtual_set.without(i))
    }

    /// Each maximal cone lies inside some maximal cone of `coarser`.
    pub fn refines(&self, coarser: &QuantumFan) -> bool {
        self.cones.iter().all(|c| coarser.cones.iter().any(|o| c.is_subset(*o)))
    }
}

/// The normal fan of `P_b`: one maximal cone per vertex, spanned by the
/// tight constraints whose faces are genuine facets; the remaining
/// constraints are virtual.
pub fn normal_fan(c: &Calibration, b: &[Scalar]) -> Result<QuantumFan> {
    let p = HPolytope::new(c, b)?;
    normal_fan_of(c, &p)
}

pub fn normal_fan_of(c: &Calibration, p: &HPolytope) -> Result<QuantumFan> {
    if !p.is_bounded() {
        return Err(Error::NotAdmissible("P_b is unbounded".into()));
    }
    if !p.is_full_dimensional() {
        return Err(Error::NotAdmissible(format!(
            "P_b has dimension {} < {}",
            p.dimension(),
            c.dim()
        )));
    }
    let facets = p.facet_set();
    let cones: BTreeSet<IndexSet> = p.vertices().iter().map(|v| v.tight.intersection(facets)).collect();
    // a normal fan of a full-dimensional polytope is complete by construction
    Ok(QuantumFan { cal: c.clone(), cones: cones.into_iter().collect(), virtual_set: p.virtual_facets(), complete: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Vector;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn vs(ts: &[&str]) -> Vector {
        ts.iter().map(|t| s(t)).collect()
    }

    fn cal(cols: &[&[&str]]) -> Calibration {
        Calibration::new(cols.iter().map(|c| vs(c)).collect(), IndexSet::empty()).unwrap()
    }

    fn sets(v: &[&[usize]]) -> Vec<IndexSet> {
        let mut out: Vec<IndexSet> = v.iter().map(|s| IndexSet::from_one_based(s)).collect();
        out.sort();
        out
    }

    #[test]
    fn p2_normal_fan() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let f = normal_fan(&c, &vs(&["0", "0", "1"])).unwrap();
        assert_eq!(f.cones(), sets(&[&[1, 2], &[1, 3], &[2, 3]]).as_slice());
        assert!(f.virtual_set().is_empty());
        assert!(f.checks().all());
        assert!(f.combinatorial_type().isomorphic(&CombinatorialType::simplex(2)));
    }

    #[test]
    fn sqrt2_cycle_fan() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        let f = normal_fan(&c, &vs(&["0", "0", "1", "1"])).unwrap();
        assert_eq!(f.cones(), sets(&[&[1, 2], &[2, 3], &[3, 4], &[4, 1]]).as_slice());
        assert!(f.checks().all());
        assert!(f.combinatorial_type().isomorphic(&CombinatorialType::cycle(4)));
    }

    #[test]
    fn redundant_constraint_becomes_virtual() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-2/3", "-2sqrt2/3"]]);
        let f = normal_fan(&c, &vs(&["0", "0", "1", "1"])).unwrap();
        assert_eq!(f.cones(), sets(&[&[1, 2], &[2, 3], &[3, 1]]).as_slice());
        assert_eq!(f.virtual_set(), IndexSet::from_one_based(&[4]));
        assert!(f.checks().all());
    }

    #[test]
    fn lower_dimensional_polytope_is_rejected() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        assert!(matches!(normal_fan(&c, &vs(&["0", "0", "0", "0"])), Err(Error::NotAdmissible(_))));
        let open = Calibration::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(normal_fan(&open, &vs(&["0", "0"])), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn cycle_face_poset() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        let f = normal_fan(&c, &vs(&["0", "0", "1", "1"])).unwrap();
        let t = f.combinatorial_type();
        assert_eq!(t.faces().len(), 9);
        assert!(t.faces().contains(&IndexSet::from_one_based(&[4, 1])));
    }

    #[test]
    fn star_subdivision_interior_and_existing_ray() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, 1]]).unwrap();
        let f = QuantumFan::new(
            c.clone(),
            sets(&[&[1, 2], &[2, 3], &[3, 1]]),
            IndexSet::from_one_based(&[4]),
        )
        .unwrap();
        let g = f.star_subdivision(3).unwrap();
        assert_eq!(g.cones(), sets(&[&[1, 2], &[2, 4], &[4, 3], &[3, 1]]).as_slice());
        assert!(g.virtual_set().is_empty());
        assert!(g.checks().all());
        assert_eq!(g.star_subdivision(3).unwrap(), g);
    }

    #[test]
    fn star_subdivision_outside_support_fails() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let f = QuantumFan::new(c, sets(&[&[1, 2]]), IndexSet::from_one_based(&[3])).unwrap();
        assert!(f.star_subdivision(2).is_err());
        assert!(!f.is_complete());
    }

    #[test]
    fn overlapping_cones_fail_the_face_check() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap();
        let f = QuantumFan::new(c, sets(&[&[1, 2], &[2, 3], &[3, 1], &[4, 3]]), IndexSet::empty()).unwrap();
        assert!(!f.checks().intersections_are_faces);
    }
}
