//! The secondary fan in character space `R^{n−d}`: admissibility,
//! genericity, chambers, walls and affine paths between chambers.

mod enumerate;
mod walls;

pub use enumerate::{enumerate_chambers, wall_path, Adjacency, SecondaryFan};
pub use walls::{
    classify_wall, cobordism_from_path, cross_wall, AffinePath, Circuit, CobordismReport, Crossing,
    CrossingChecks, Wall, WallCrossingReport, WallKind,
};

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cone;
use crate::error::{Error, Result};
use crate::fan::{self, CombinatorialType, QuantumFan};
use crate::index_set::IndexSet;
use crate::linalg::{self, normalize_direction, Calibration, Vector};
use crate::lp::LinearSystem;
use crate::polytope::HPolytope;
use crate::scalar::Scalar;

/// Maximal cones and virtual set of a normal fan: the data a chamber is
/// labelled by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Combinatorics {
    pub cones: Vec<IndexSet>,
    #[serde(rename = "virtual")]
    pub virtual_set: IndexSet,
}

impl Combinatorics {
    pub fn of(f: &QuantumFan) -> Self {
        Combinatorics { cones: f.cones().to_vec(), virtual_set: f.virtual_set() }
    }
}

/// The cone `Cone(k^⊤e_1, …, k^⊤e_n)` with its facet normals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaleCone {
    pub generators: Vec<Vector>,
    /// Inward normals; empty when the cone is the whole space.
    pub facets: Vec<Vector>,
}

impl GaleCone {
    pub fn is_whole_space(&self) -> bool {
        self.facets.is_empty()
    }

    /// Strictly inside every facet.
    pub fn interior_contains(&self, chi: &[Scalar]) -> bool {
        self.facets.iter().all(|y| linalg::dot(y, chi).is_positive())
    }

    pub fn contains(&self, chi: &[Scalar]) -> bool {
        self.facets.iter().all(|y| !linalg::dot(y, chi).is_negative())
    }

    /// `y` is (a positive multiple of) a facet normal of the cone.
    pub fn is_boundary_normal(&self, y: &[Scalar]) -> bool {
        self.generators.iter().all(|g| !linalg::dot(y, g).is_negative())
    }
}

pub fn gale_cone(c: &Calibration) -> GaleCone {
    let generators = c.gale_generators();
    let r = c.corank();
    let facets = if r == 0 {
        Vec::new()
    } else {
        let refs: Vec<&[Scalar]> = generators.iter().map(|g| g.as_slice()).collect();
        cone::facets(&refs, r).into_iter().map(|(_, y)| y).collect()
    };
    GaleCone { generators, facets }
}

/// `χ` lies in the interior of the Gale cone.
pub fn is_admissible(chi: &[Scalar], c: &Calibration) -> Result<bool> {
    check_chi(chi, c)?;
    Ok(gale_cone(c).interior_contains(chi))
}

/// Same predicate through the polytope: `P_χ` is full-dimensional.
pub fn is_admissible_by_polytope(chi: &[Scalar], c: &Calibration) -> Result<bool> {
    let b = c.preimage(chi)?;
    Ok(HPolytope::new(c, &b)?.is_full_dimensional())
}

/// Linearly independent generator subsets of size below `n − d` whose cone
/// contains `χ`; the first one found, if any. By Carathéodory, `χ` lies in
/// a lower-dimensional cone of generators exactly when such a set exists.
pub fn genericity_obstruction(chi: &[Scalar], c: &Calibration) -> Result<Option<IndexSet>> {
    check_chi(chi, c)?;
    let r = c.corank();
    if linalg::is_zero(chi) {
        return Ok(Some(IndexSet::empty()));
    }
    let gens = c.gale_generators();
    for size in 1..r {
        for subset in (0..c.len()).combinations(size) {
            let cols: Vec<&[Scalar]> = subset.iter().map(|&i| gens[i].as_slice()).collect();
            if linalg::rank_of(&cols) != size {
                continue;
            }
            if let Some(w) = linalg::coordinates_in(&cols, chi) {
                if w.iter().all(|x| !x.is_negative()) {
                    return Ok(Some(subset.into_iter().collect()));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_generic(chi: &[Scalar], c: &Calibration) -> Result<bool> {
    Ok(genericity_obstruction(chi, c)?.is_none())
}

fn check_chi(chi: &[Scalar], c: &Calibration) -> Result<()> {
    if chi.len() != c.corank() {
        return Err(Error::DimensionMismatch(format!(
            "character of length {} for n − d = {}",
            chi.len(),
            c.corank()
        )));
    }
    Ok(())
}

/// Where an inequality of a chamber comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FacetSource {
    /// Convexity of the support function across the wall between two
    /// adjacent maximal cones.
    Convexity { cones: (IndexSet, IndexSet) },
    /// The virtual constraint `i` stays redundant.
    Virtual { index: IndexSet },
}

/// One inequality `⟨normal, χ⟩ ≥ 0` of a chamber, with the linear forms in
/// `b` that induce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberFacet {
    pub normal: Vector,
    pub b_forms: Vec<(Vector, FacetSource)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    /// Irredundant facets, sorted by normal.
    pub facets: Vec<ChamberFacet>,
    /// Extreme rays, for `n − d ≤ 3`.
    pub rays: Vec<Vector>,
    pub rep_point: Vector,
    pub combinatorics: Combinatorics,
    pub comb_type: CombinatorialType,
}

impl Chamber {
    pub fn contains(&self, chi: &[Scalar]) -> bool {
        self.facets.iter().all(|f| !linalg::dot(&f.normal, chi).is_negative())
    }

    pub fn interior_contains(&self, chi: &[Scalar]) -> bool {
        self.facets.iter().all(|f| linalg::dot(&f.normal, chi).is_positive())
    }

    /// The split `Γ_(Δ,ℐ) = Γ_(Δ,∅) × R_{≥0}^ℐ` read off the inequalities:
    /// convexity forms ignore virtual coordinates, each virtual generator owns
    /// exactly one facet, whose form involves no other virtual coordinate.
    pub fn has_product_split(&self) -> bool {
        let virt = self.combinatorics.virtual_set;
        let mut owners: BTreeMap<usize, usize> = BTreeMap::new();
        for (k, f) in self.facets.iter().enumerate() {
            for (form, src) in &f.b_forms {
                match src {
                    FacetSource::Convexity { .. } => {
                        if virt.iter().any(|i| !form[i].is_zero()) {
                            return false;
                        }
                    }
                    FacetSource::Virtual { index } => {
                        let i = index.iter().next().expect("one index");
                        if !form[i].is_positive() || virt.iter().any(|j| j != i && !form[j].is_zero()) {
                            return false;
                        }
                        if owners.insert(i, k).is_some_and(|prev| prev != k) {
                            return false;
                        }
                    }
                }
            }
        }
        owners.len() == virt.len()
    }

    /// Interior points drawn as random positive combinations of the rays.
    pub fn sample_interior(&self, rng: &mut impl rand::Rng, count: usize) -> Vec<Vector> {
        let dim = self.rep_point.len();
        (0..count)
            .map(|_| {
                let mut p = vec![Scalar::zero(); dim];
                for r in &self.rays {
                    let w = Scalar::ratio(rng.gen_range(1..=1000), rng.gen_range(1..=97));
                    p = linalg::add(&p, &linalg::scale(r, &w));
                }
                if self.rays.is_empty() {
                    p = self.rep_point.clone();
                }
                p
            })
            .collect()
    }
}

/// Point location: the chamber containing a generic admissible character.
pub fn chamber_of(chi: &[Scalar], c: &Calibration) -> Result<Chamber> {
    if !is_admissible(chi, c)? {
        return Err(Error::NotAdmissible(format!("character {} is outside the open Gale cone", show(chi))));
    }
    if let Some(set) = genericity_obstruction(chi, c)? {
        return Err(Error::OnWall(format!("character {} lies in the cone of Gale generators {set}", show(chi))));
    }
    let b = c.preimage(chi)?;
    let f = fan::normal_fan(c, &b)?;
    chamber_of_fan(&f)
}

/// The chamber whose interior yields the simplicial fan `f`.
pub(crate) fn chamber_of_fan(f: &QuantumFan) -> Result<Chamber> {
    let c = f.calibration();
    if !f.is_simplicial() {
        return Err(Error::OnWall("normal fan is not simplicial".into()));
    }
    let mut forms: Vec<(Vector, FacetSource)> = Vec::new();
    for (s, t, _) in fan_adjacent(f) {
        let u = t.difference(s).iter().next().expect("adjacent simplicial cones");
        forms.push((slack_form(c, s, u)?, FacetSource::Convexity { cones: (s, t) }));
    }
    for i in f.virtual_set() {
        let s = *f
            .cones_containing(c.column(i))
            .first()
            .ok_or_else(|| Error::Degenerate(format!("h(e_{}) outside the fan", i + 1)))?;
        forms.push((slack_form(c, s, i)?, FacetSource::Virtual { index: IndexSet::singleton(i) }));
    }

    let mut groups: BTreeMap<Vector, Vec<(Vector, FacetSource)>> = BTreeMap::new();
    for (form, src) in forms {
        let y = c.kernel_coordinates(&form);
        if linalg::is_zero(&y) {
            continue;
        }
        groups.entry(normalize_direction(&y)).or_default().push((form, src));
    }
    let normals: Vec<Vector> = groups.keys().cloned().collect();
    let r = c.corank();
    let mut facets = Vec::new();
    for (k, y) in normals.iter().enumerate() {
        let mut sys = LinearSystem::new(r);
        for (j, z) in normals.iter().enumerate() {
            if j != k {
                sys.ge(z.clone(), Scalar::zero());
            }
        }
        sys.lt(y.clone(), Scalar::zero());
        if sys.is_feasible() {
            facets.push(ChamberFacet { normal: y.clone(), b_forms: groups[y].clone() });
        }
    }
    let rays = if r <= 3 {
        cone::extreme_rays(&facets.iter().map(|f| f.normal.clone()).collect::<Vec<_>>(), r)
    } else {
        Vec::new()
    };
    let mut chamber = Chamber {
        facets,
        rays,
        rep_point: Vec::new(),
        combinatorics: Combinatorics::of(f),
        comb_type: f.combinatorial_type(),
    };
    chamber.rep_point = representative_point(&chamber, c)?;
    Ok(chamber)
}

fn fan_adjacent(f: &QuantumFan) -> Vec<(IndexSet, IndexSet, IndexSet)> {
    let mut out = Vec::new();
    for (a, &s) in f.cones().iter().enumerate() {
        for &t in &f.cones()[a + 1..] {
            let common = s.intersection(t);
            if common.len() + 1 == s.len() && s.len() == t.len() && c_rank(f, common) + 1 == s.len() {
                out.push((s, t, common));
            }
        }
    }
    out
}

fn c_rank(f: &QuantumFan, set: IndexSet) -> usize {
    f.calibration().rank_of(set)
}

/// `e_i − Σ_{j∈s} w_j e_j` where `h(e_i) = Σ w_j h(e_j)`: the slack of
/// constraint `i` at the vertex dual to the simplicial cone `s`, as a
/// linear form in `b`.
pub(crate) fn slack_form(c: &Calibration, s: IndexSet, i: usize) -> Result<Vector> {
    let cols: Vec<&[Scalar]> = s.iter().map(|j| c.column(j)).collect();
    let w = linalg::coordinates_in(&cols, c.column(i))
        .ok_or_else(|| Error::Degenerate(format!("h(e_{}) outside the span of cone {s}", i + 1)))?;
    let mut form = vec![Scalar::zero(); c.len()];
    form[i] = Scalar::one();
    for (k, j) in s.iter().enumerate() {
        form[j] = -&w[k];
    }
    Ok(form)
}

/// A generic interior point: the sum of normalized rays when available,
/// otherwise a witness of the strict system; reweighted until generic.
fn representative_point(ch: &Chamber, c: &Calibration) -> Result<Vector> {
    let r = c.corank();
    let mut candidates: Vec<Vector> = Vec::new();
    if !ch.rays.is_empty() {
        for shift in 0..8i64 {
            let mut p = vec![Scalar::zero(); r];
            for (j, ray) in ch.rays.iter().enumerate() {
                let w = Scalar::from_int(1 + shift * j as i64);
                p = linalg::add(&p, &linalg::scale(ray, &w));
            }
            candidates.push(p);
        }
    }
    let mut sys = LinearSystem::new(r);
    for f in &ch.facets {
        sys.gt(f.normal.clone(), Scalar::zero());
    }
    if let Some(p) = sys.solve() {
        candidates.push(p);
    }
    for p in candidates {
        if ch.interior_contains(&p) && genericity_obstruction(&p, c)?.is_none() {
            return Ok(p);
        }
    }
    Err(Error::Degenerate("no generic interior point found".into()))
}

pub(crate) fn show(v: &[Scalar]) -> String {
    format!("({})", v.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", "))
}
