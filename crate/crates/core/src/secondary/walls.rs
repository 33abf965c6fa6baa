use serde::{Deserialize, Serialize};

use super::{chamber_of, genericity_obstruction, is_admissible, show, Chamber, Combinatorics, FacetSource};
use crate::error::{Error, Result};
use crate::fan::{common_refinement, normal_fan, QuantumFan};
use crate::index_set::{one_based, IndexSet};
use crate::linalg::{self, Calibration, Matrix, Vector};
use crate::scalar::Scalar;

/// A minimal signed linear dependence among generators, split by sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub positive: IndexSet,
    pub negative: IndexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WallKind {
    /// A facet of the Gale cone: beyond it `P_b` is no longer full-dimensional.
    Boundary,
    /// Crossing toggles one virtual generator: `gained` when it becomes a ray
    /// (star subdivision), otherwise the ray disappears.
    Divisorial {
        #[serde(with = "one_based")]
        virtual_index: usize,
        gained: bool,
    },
    /// Crossing exchanges the two triangulations of a circuit.
    Flipping { circuit: Circuit },
}

impl std::fmt::Display for WallKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WallKind::Boundary => write!(f, "boundary"),
            WallKind::Divisorial { virtual_index, gained: true } => write!(f, "divisorial, gains ray {}", virtual_index + 1),
            WallKind::Divisorial { virtual_index, gained: false } => write!(f, "divisorial, loses ray {}", virtual_index + 1),
            WallKind::Flipping { circuit } => write!(f, "flip of {} against {}", circuit.positive, circuit.negative),
        }
    }
}

/// A facet of a chamber, seen from that chamber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    pub normal: Vector,
    pub kind: WallKind,
    /// `(a, b)`: the circuit has `a` maximal cones on the side being left and
    /// `b` on the side being entered. Divisorial walls give `(1, d)` when a
    /// ray is gained and `(d, 1)` when one is lost.
    pub index: Option<(usize, usize)>,
}

pub fn classify_wall(ch: &Chamber, k: usize, c: &Calibration) -> Result<Wall> {
    let facet = ch
        .facets
        .get(k)
        .ok_or_else(|| Error::InvalidInput(format!("chamber has no facet {k}")))?;
    let normal = facet.normal.clone();
    if c.gale_generators().iter().all(|g| !linalg::dot(&normal, g).is_negative()) {
        return Ok(Wall { normal, kind: WallKind::Boundary, index: None });
    }
    let (form, src) = facet
        .b_forms
        .iter()
        .find(|(_, s)| matches!(s, FacetSource::Virtual { .. }))
        .or_else(|| facet.b_forms.first())
        .ok_or_else(|| Error::Degenerate("facet without a defining form".into()))?;
    let positive: IndexSet = (0..form.len()).filter(|&i| form[i].is_positive()).collect();
    let negative: IndexSet = (0..form.len()).filter(|&i| form[i].is_negative()).collect();
    let index = Some((positive.len(), negative.len()));
    let kind = match src {
        FacetSource::Virtual { index: i } => {
            WallKind::Divisorial { virtual_index: i.iter().next().expect("one index"), gained: true }
        }
        FacetSource::Convexity { .. } if negative.len() == 1 => WallKind::Divisorial {
            virtual_index: negative.iter().next().expect("one index"),
            gained: false,
        },
        FacetSource::Convexity { .. } => WallKind::Flipping { circuit: Circuit { positive, negative } },
    };
    Ok(Wall { normal, kind, index })
}

/// `χ(t) = k^⊤(β + tα)` for `t ∈ [−1, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffinePath {
    pub beta: Vector,
    pub alpha: Vector,
}

impl AffinePath {
    pub fn new(beta: Vector, alpha: Vector) -> Self {
        AffinePath { beta, alpha }
    }

    /// The path with `χ(−1) = χ_start` and `χ(1) = χ_end`, through the
    /// minimum-norm preimages.
    pub fn between(c: &Calibration, chi_start: &[Scalar], chi_end: &[Scalar]) -> Result<Self> {
        let b0 = c.preimage(chi_start)?;
        let b1 = c.preimage(chi_end)?;
        let half = Scalar::ratio(1, 2);
        Ok(AffinePath {
            beta: linalg::scale(&linalg::add(&b0, &b1), &half),
            alpha: linalg::scale(&linalg::sub(&b1, &b0), &half),
        })
    }

    pub fn b_at(&self, t: &Scalar) -> Vector {
        linalg::add(&self.beta, &linalg::scale(&self.alpha, t))
    }

    pub fn chi_at(&self, c: &Calibration, t: &Scalar) -> Result<Vector> {
        c.chi_of(&self.b_at(t))
    }

    fn check(&self, c: &Calibration) -> Result<()> {
        c.check_b(&self.beta)?;
        c.check_b(&self.alpha)
    }
}

/// Outcome of the structural checks at one crossing; `None` marks checks
/// that do not apply to the wall type.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingChecks {
    /// Same rays and virtual generators before, on and after the wall.
    pub rays_preserved: Option<bool>,
    pub on_wall_non_simplicial: Option<bool>,
    /// Both side fans subdivide the fan on the wall.
    pub sides_refine_on_wall: Option<bool>,
    /// The common refinement of the side fans subdivides the fan on the wall
    /// and keeps its simplicial cones.
    pub common_refinement_consistent: Option<bool>,
    /// The finer side is the star subdivision of the coarser one.
    pub star_subdivision: Option<bool>,
    /// The fan on the wall coincides with the coarser side.
    pub on_wall_is_coarse_side: Option<bool>,
}

impl CrossingChecks {
    pub fn passed(&self) -> bool {
        [
            self.rays_preserved,
            self.on_wall_non_simplicial,
            self.sides_refine_on_wall,
            self.common_refinement_consistent,
            self.star_subdivision,
            self.on_wall_is_coarse_side,
        ]
        .iter()
        .all(|c| c.unwrap_or(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub t: Scalar,
    pub chi: Vector,
    pub wall: Wall,
    pub before: Combinatorics,
    pub on: Combinatorics,
    pub after: Combinatorics,
    pub checks: CrossingChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CobordismReport {
    pub start: Combinatorics,
    pub end: Combinatorics,
    pub crossings: Vec<Crossing>,
    pub index_convention: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCrossingReport {
    pub start: Combinatorics,
    pub end: Combinatorics,
    /// `None` when the path stays in one chamber.
    pub crossing: Option<Crossing>,
}

const INDEX_CONVENTION: &str =
    "circuit-based: (maximal cones of the circuit on the side left, on the side entered)";

/// Every wall crossed by the path, in order of increasing `t`.
pub fn cobordism_from_path(path: &AffinePath, c: &Calibration) -> Result<CobordismReport> {
    path.check(c)?;
    let one = Scalar::one();
    let minus = -&one;
    for t in [&minus, &one] {
        let chi = path.chi_at(c, t)?;
        if !is_admissible(&chi, c)? {
            return Err(Error::NotAdmissible(format!("endpoint {} is not admissible", show(&chi))));
        }
        if let Some(set) = genericity_obstruction(&chi, c)? {
            return Err(Error::DegeneratePath(format!(
                "endpoint {} lies in the cone of Gale generators {set}",
                show(&chi)
            )));
        }
    }
    let params = candidate_parameters(path, c)?;
    // one evaluation point per open interval between consecutive candidates
    let mut stops = vec![minus.clone()];
    stops.extend(params.iter().cloned());
    stops.push(one.clone());
    let mut samples = Vec::with_capacity(stops.len() - 1);
    for w in stops.windows(2) {
        let t = (&w[0] + &w[1]) * Scalar::ratio(1, 2);
        samples.push(comb_at(path, c, &t)?);
    }
    let mut crossings = Vec::new();
    for (j, t_star) in params.iter().enumerate() {
        if samples[j] == samples[j + 1] {
            continue;
        }
        let eps = (t_star - &stops[j]).min(&stops[j + 2] - t_star) * Scalar::ratio(1, 2);
        crossings.push(crossing_at(path, c, t_star, &eps)?);
    }
    Ok(CobordismReport {
        start: comb_at(path, c, &minus)?,
        end: comb_at(path, c, &one)?,
        crossings,
        index_convention: INDEX_CONVENTION.into(),
    })
}

/// A path crossing at most one wall, with the fans before, on and after it.
pub fn cross_wall(path: &AffinePath, c: &Calibration) -> Result<WallCrossingReport> {
    let mut report = cobordism_from_path(path, c)?;
    if report.crossings.len() > 1 {
        return Err(Error::InvalidInput(format!(
            "path crosses {} walls; split it or request the full cobordism",
            report.crossings.len()
        )));
    }
    Ok(WallCrossingReport { start: report.start, end: report.end, crossing: report.crossings.pop() })
}

fn comb_at(path: &AffinePath, c: &Calibration, t: &Scalar) -> Result<Combinatorics> {
    let f = normal_fan(c, &c.preimage(&path.chi_at(c, t)?)?)?;
    Ok(Combinatorics::of(&f))
}

/// Parameters in `(−1, 1)` where `χ(t)` meets a hyperplane spanned by Gale
/// generators; every wall lies in one of these hyperplanes.
fn candidate_parameters(path: &AffinePath, c: &Calibration) -> Result<Vec<Scalar>> {
    let r = c.corank();
    let chi0 = path.chi_at(c, &Scalar::zero())?;
    let dir = c.chi_of(&path.alpha)?;
    let mut normals: Vec<Vector> = Vec::new();
    if r == 1 {
        normals.push(vec![Scalar::one()]);
    } else {
        let gens = c.gale_generators();
        for subset in itertools::Itertools::combinations(0..c.len(), r - 1) {
            let m = Matrix::from_rows(subset.iter().map(|&i| gens[i].clone()).collect())?;
            let ker = m.kernel_basis();
            if ker.len() == 1 {
                let y = &ker[0];
                let lead = y.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
                let y = linalg::scale(y, &lead.inv()?);
                if !normals.contains(&y) {
                    normals.push(y);
                }
            }
        }
    }
    let one = Scalar::one();
    let mut ts: Vec<Scalar> = normals
        .iter()
        .filter_map(|y| {
            let slope = linalg::dot(y, &dir);
            if slope.is_zero() {
                return None;
            }
            let t = -(linalg::dot(y, &chi0) / slope);
            (t > -&one && t < one).then_some(t)
        })
        .collect();
    ts.sort();
    ts.dedup();
    Ok(ts)
}

fn crossing_at(path: &AffinePath, c: &Calibration, t: &Scalar, eps: &Scalar) -> Result<Crossing> {
    let chi = path.chi_at(c, t)?;
    let left = chamber_of(&path.chi_at(c, &(t - eps))?, c)?;
    let right = chamber_of(&path.chi_at(c, &(t + eps))?, c)?;
    let hit: Vec<usize> =
        (0..left.facets.len()).filter(|&k| linalg::dot(&left.facets[k].normal, &chi).is_zero()).collect();
    if hit.len() != 1 {
        return Err(Error::DegeneratePath(format!(
            "path meets {} walls at once at t = {}",
            hit.len(),
            t.to_text()
        )));
    }
    let wall = classify_wall(&left, hit[0], c)?;
    let opposite = linalg::normalize_direction(&linalg::neg(&wall.normal));
    if !right.facets.iter().any(|f| f.normal == opposite) {
        return Err(Error::DegeneratePath(format!(
            "chambers on both sides of t = {} are not adjacent",
            t.to_text()
        )));
    }
    let f_minus = normal_fan(c, &c.preimage(&path.chi_at(c, &(t - eps))?)?)?;
    let f_zero = normal_fan(c, &c.preimage(&chi)?)?;
    let f_plus = normal_fan(c, &c.preimage(&path.chi_at(c, &(t + eps))?)?)?;
    let checks = crossing_checks(&wall, &f_minus, &f_zero, &f_plus)?;
    Ok(Crossing {
        t: t.clone(),
        chi,
        wall,
        before: Combinatorics::of(&f_minus),
        on: Combinatorics::of(&f_zero),
        after: Combinatorics::of(&f_plus),
        checks,
    })
}

pub(crate) fn crossing_checks(
    wall: &Wall,
    f_minus: &QuantumFan,
    f_zero: &QuantumFan,
    f_plus: &QuantumFan,
) -> Result<CrossingChecks> {
    let mut checks = CrossingChecks::default();
    match &wall.kind {
        WallKind::Boundary => {}
        WallKind::Flipping { .. } => {
            checks.rays_preserved = Some(
                f_minus.rays() == f_zero.rays()
                    && f_zero.rays() == f_plus.rays()
                    && f_minus.virtual_set() == f_zero.virtual_set()
                    && f_zero.virtual_set() == f_plus.virtual_set(),
            );
            checks.on_wall_non_simplicial = Some(!f_zero.is_simplicial());
            checks.sides_refine_on_wall = Some(f_minus.refines(f_zero) && f_plus.refines(f_zero));
            if f_zero.dim() <= 3 {
                let cr = common_refinement(f_minus, f_plus)?;
                let simplicial_kept = f_zero
                    .cones()
                    .iter()
                    .filter(|&&s| f_zero.calibration().rank_of(s) == s.len())
                    .all(|&s| cr.has_cone(f_zero, s));
                checks.common_refinement_consistent = Some(cr.refines(f_zero) && simplicial_kept);
            }
        }
        WallKind::Divisorial { virtual_index, gained } => {
            let (coarse, fine) = if *gained { (f_minus, f_plus) } else { (f_plus, f_minus) };
            let star = coarse.star_subdivision(*virtual_index)?;
            checks.star_subdivision = Some(star.same_combinatorics(fine));
            checks.on_wall_is_coarse_side = Some(f_zero.same_combinatorics(coarse));
        }
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::secondary::enumerate_chambers;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn vs(ts: &[&str]) -> Vector {
        ts.iter().map(|t| s(t)).collect()
    }

    fn sqrt2() -> Calibration {
        let cols = [["1", "0"], ["0", "1"], ["-sqrt2", "-1"], ["-1", "-sqrt2"]];
        Calibration::new(cols.iter().map(|c| vs(c)).collect(), IndexSet::empty()).unwrap()
    }

    fn pentagon() -> Calibration {
        Calibration::from_i64(&[&[1, 0], &[0, 1], &[-3, 1], &[1, -3], &[-2, -1]]).unwrap()
    }

    #[test]
    fn sqrt2_instance_has_three_chambers() {
        let c = sqrt2();
        let sf = enumerate_chambers(&c).unwrap();
        assert_eq!(sf.chambers.len(), 3);
        let mid = sf.locate(&vs(&["1", "1"])).unwrap();
        assert!(sf.chambers[mid].combinatorics.virtual_set.is_empty());
        assert_eq!(sf.neighbors(mid).len(), 2);
        assert_eq!(sf.boundary.len(), 2);
        for a in &sf.adjacency {
            assert!(matches!(a.wall.kind, WallKind::Divisorial { .. }));
        }
    }

    #[test]
    fn leaving_the_middle_chamber_loses_a_ray() {
        let c = sqrt2();
        let path = AffinePath::between(&c, &vs(&["1", "1"]), &vs(&["2", "1/2"])).unwrap();
        let r = cross_wall(&path, &c).unwrap();
        let x = r.crossing.expect("one wall");
        assert_eq!(x.wall.kind, WallKind::Divisorial { virtual_index: 2, gained: false });
        assert_eq!(x.wall.index, Some((2, 1)));
        assert!(x.checks.passed());
        assert_eq!(x.checks.star_subdivision, Some(true));
        assert_eq!(r.end.virtual_set, IndexSet::from_iter([2]));

        let back = AffinePath::new(path.beta.clone(), linalg::neg(&path.alpha));
        let x = cross_wall(&back, &c).unwrap().crossing.unwrap();
        assert_eq!(x.wall.kind, WallKind::Divisorial { virtual_index: 2, gained: true });
        assert_eq!(x.wall.index, Some((1, 2)));
        assert!(x.checks.passed());
    }

    #[test]
    fn path_inside_one_chamber_has_no_crossing() {
        let c = sqrt2();
        let path = AffinePath::between(&c, &vs(&["1", "1"]), &vs(&["4", "5"])).unwrap();
        let r = cross_wall(&path, &c).unwrap();
        assert!(r.crossing.is_none());
        assert_eq!(r.start, r.end);
    }

    #[test]
    fn endpoint_errors() {
        let c = sqrt2();
        let bad = AffinePath::between(&c, &vs(&["1", "1"]), &vs(&["-1", "1"])).unwrap();
        assert!(matches!(cross_wall(&bad, &c), Err(Error::NotAdmissible(_))));
        let on_wall = AffinePath::between(&c, &vs(&["1", "1"]), &vs(&["sqrt2", "1"])).unwrap();
        assert!(matches!(cross_wall(&on_wall, &c), Err(Error::DegeneratePath(_))));
    }

    fn check_all_walls(c: &Calibration) -> (usize, usize) {
        let sf = enumerate_chambers(c).unwrap();
        let (mut flips, mut divisorial) = (0, 0);
        for a in &sf.adjacency {
            let from = &sf.chambers[a.from];
            let to = &sf.chambers[a.to];
            let path = AffinePath::between(c, &from.rep_point, &to.rep_point).unwrap();
            let r = cobordism_from_path(&path, c).unwrap();
            for x in &r.crossings {
                assert!(x.checks.passed(), "{x:?}");
                match x.wall.kind {
                    WallKind::Flipping { .. } => {
                        flips += 1;
                        assert_eq!(x.checks.on_wall_non_simplicial, Some(true));
                        assert_eq!(x.checks.common_refinement_consistent, Some(true));
                    }
                    WallKind::Divisorial { .. } => divisorial += 1,
                    WallKind::Boundary => panic!("interior path met the boundary"),
                }
            }
        }
        (flips, divisorial)
    }

    #[test]
    fn pentagon_instance_walls_are_divisorial() {
        let (flips, divisorial) = check_all_walls(&pentagon());
        assert_eq!(flips, 0);
        assert!(divisorial > 0);
    }

    #[test]
    fn square_pyramid_flip() {
        let c = Calibration::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1], &[0, 0, -1]]).unwrap();
        let sf = enumerate_chambers(&c).unwrap();
        let flip = sf
            .adjacency
            .iter()
            .find_map(|a| match &a.wall.kind {
                WallKind::Flipping { circuit } => Some((circuit.clone(), a.wall.index)),
                _ => None,
            })
            .expect("a flipping wall");
        assert_eq!(flip.1, Some((2, 2)));
        let pairs = [flip.0.positive, flip.0.negative];
        assert!(pairs.contains(&IndexSet::from_iter([0, 2])) && pairs.contains(&IndexSet::from_iter([1, 3])));
        let (flips, _) = check_all_walls(&c);
        assert!(flips > 0);
    }
}
