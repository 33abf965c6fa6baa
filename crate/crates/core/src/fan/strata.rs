use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{Calibration, Vector};
use crate::lp::LinearSystem;
use crate::polytope::HPolytope;
use crate::scalar::Scalar;

/// Index sets `I` of the coordinate strata making up the `𝒮`-variety of
/// `P_b`: `h_I` has rank `d`, the constraints in `I` can be tight
/// simultaneously inside `P_b`, and each of them defines a genuine facet.
/// Only inclusion-maximal sets are returned, sorted.
///
/// Feasibility is decided by a linear program per candidate rather than
/// from the vertex list, so this is an independent route to the maximal
/// cones of the normal fan.
pub fn s_variety_strata(c: &Calibration, b: &[Scalar]) -> Result<Vec<IndexSet>> {
    let p = HPolytope::new(c, b)?;
    if !p.is_full_dimensional() {
        return Err(Error::NotAdmissible(format!("P_b has dimension {}", p.dimension())));
    }
    let d = c.dim();
    let facets = p.facet_set();
    let mut found: Vec<IndexSet> = Vec::new();
    let mut candidates: Vec<IndexSet> = facets.subsets().filter(|s| s.len() >= d).collect();
    candidates.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    for set in candidates {
        if found.iter().any(|f| set.is_subset(*f)) {
            continue;
        }
        if c.rank_of(set) != d {
            continue;
        }
        let mut sys = LinearSystem::new(d);
        for i in 0..c.len() {
            let row: Vector = c.column(i).to_vec();
            if set.contains(i) {
                sys.eq(row, -&b[i]);
            } else {
                sys.ge(row, -&b[i]);
            }
        }
        if sys.is_feasible() {
            found.push(set);
        }
    }
    found.sort();
    Ok(found)
}

/// The group `C^a × (C*)^t × Z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilizerProfile {
    pub a: usize,
    pub t: usize,
    pub z: usize,
}

impl StabilizerProfile {
    /// Such groups are isomorphic exactly when the triples agree: the torsion
    /// of `C*` and the discreteness of `Z` both survive.
    pub fn isomorphic(&self, other: &StabilizerProfile) -> bool {
        self == other
    }
}

/// Stabilizers of the most special point of the chart attached to `I`
/// under the two quotient presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    /// Presentation through `Z^{|I|−d} × E(ker h_{I,C})`.
    pub old: StabilizerProfile,
    /// Presentation through the `C^{n−d}` action.
    pub new: StabilizerProfile,
    pub isomorphic: bool,
    /// Rank of the integer image `h(Z^I)`.
    pub image_rank: usize,
    /// Rank of the integer kernel of `h_I`.
    pub integer_kernel_rank: usize,
    /// `dim_C ker h_{I,C} = |I| − d`.
    pub complex_kernel_dim: usize,
}

pub fn stabilizer_profiles(c: &Calibration, set: IndexSet) -> Result<StabilizerReport> {
    let d = c.dim();
    if !set.is_subset(c.all()) {
        return Err(Error::InvalidInput("index out of range".into()));
    }
    if c.rank_of(set) != d {
        return Err(Error::DimensionMismatch(format!("cone {set} is not full-dimensional")));
    }
    let size = set.len();
    let ikr = c.restrict(set).integer_kernel_rank();
    let r = size - ikr;
    let old = StabilizerProfile { a: r - d, t: size - r, z: size - d };
    let new = StabilizerProfile { a: size - d, t: 0, z: 0 };
    Ok(StabilizerReport {
        old,
        new,
        isomorphic: old.isomorphic(&new),
        image_rank: r,
        integer_kernel_rank: ikr,
        complex_kernel_dim: size - d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn cal(cols: &[&[&str]]) -> Calibration {
        Calibration::new(cols.iter().map(|c| c.iter().map(|t| s(t)).collect()).collect(), IndexSet::empty())
            .unwrap()
    }

    #[test]
    fn strata_match_normal_fan() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        let b: Vec<Scalar> = ["0", "0", "1", "1"].iter().map(|t| s(t)).collect();
        assert_eq!(s_variety_strata(&c, &b).unwrap(), normal_fan(&c, &b).unwrap().cones().to_vec());
        let zero = vec![Scalar::zero(); 4];
        assert!(matches!(s_variety_strata(&c, &zero), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn square_pyramid_apex_is_one_stratum() {
        let c = Calibration::from_i64(&[&[0, 0, 1], &[1, 0, -1], &[-1, 0, -1], &[0, 1, -1], &[0, -1, -1]])
            .unwrap();
        let b: Vec<Scalar> = [0, 1, 1, 1, 1].iter().map(|&x| Scalar::from_int(x)).collect();
        let strata = s_variety_strata(&c, &b).unwrap();
        assert!(strata.contains(&IndexSet::from_one_based(&[2, 3, 4, 5])));
        assert_eq!(strata, normal_fan(&c, &b).unwrap().cones().to_vec());
    }

    #[test]
    fn simplicial_cones_have_matching_profiles() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let rep = stabilizer_profiles(&c, IndexSet::from_one_based(&[1, 2])).unwrap();
        assert!(rep.isomorphic);
        assert_eq!(rep.old, StabilizerProfile { a: 0, t: 0, z: 0 });
    }

    #[test]
    fn irrational_versus_rational_fourth_column() {
        let all = IndexSet::from_one_based(&[1, 2, 3, 4]);
        let irr = cal(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["sqrt2", "-1", "1"]]);
        let rep = stabilizer_profiles(&irr, all).unwrap();
        assert_eq!(rep.old, StabilizerProfile { a: 1, t: 0, z: 1 });
        assert_eq!(rep.new, StabilizerProfile { a: 1, t: 0, z: 0 });
        assert!(!rep.isomorphic);
        let rat = cal(&[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "1"], &["2", "-3", "1/2"]]);
        let rep = stabilizer_profiles(&rat, all).unwrap();
        assert_eq!(rep.old, StabilizerProfile { a: 0, t: 1, z: 1 });
        assert!(!rep.isomorphic);
        assert!(stabilizer_profiles(&rat, IndexSet::from_one_based(&[1, 2])).is_err());
    }
}
