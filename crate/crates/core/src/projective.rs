//! Linkability to quantum projective space: a certificate that some `P_b`
//! is a simplex, the parameter realizing it, the classification in
//! dimension two and verified paths toward a projective chamber.

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::cone;
use crate::error::{Error, Result};
use crate::fan::{d_admissibility, normal_fan, CombinatorialType, QuantumFan};
use crate::index_set::IndexSet;
use crate::linalg::{self, solve_square, Calibration, Vector};
use crate::scalar::Scalar;
use crate::secondary::{chamber_of, cobordism_from_path, AffinePath, CobordismReport, Combinatorics};

/// `0 = Σ λ_i h(e_i)` over `i ∈ indices`, with `λ > 0` and `Σ λ = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveCertificate {
    pub indices: IndexSet,
    pub weights: Vector,
}

impl ProjectiveCertificate {
    pub fn verify(&self, c: &Calibration) -> bool {
        let idx = self.indices.to_vec();
        if idx.len() != c.dim() + 1 || self.weights.len() != idx.len() {
            return false;
        }
        if !self.weights.iter().all(Scalar::is_positive) {
            return false;
        }
        let total = self.weights.iter().fold(Scalar::zero(), |a, w| a + w);
        let mut sum = vec![Scalar::zero(); c.dim()];
        for (w, &i) in self.weights.iter().zip(&idx) {
            sum = linalg::add(&sum, &linalg::scale(c.column(i), w));
        }
        total.is_one() && linalg::is_zero(&sum) && c.rank_of(self.indices) == c.dim()
    }
}

/// First `(d+1)`-subset, in lexicographic order, whose columns have the
/// origin in the interior of their convex hull.
pub fn projective_certificate(c: &Calibration) -> Option<ProjectiveCertificate> {
    let d = c.dim();
    for subset in (0..c.len()).combinations(d + 1) {
        let set: IndexSet = subset.iter().copied().collect();
        let ker = c.restrict(set).kernel_basis();
        if ker.len() != 1 {
            continue;
        }
        let v = &ker[0];
        let sign = v[0].sign();
        if sign == 0 || v.iter().any(|x| x.sign() != sign) {
            continue;
        }
        let total = v.iter().fold(Scalar::zero(), |a, w| a + w);
        let inv = total.inv().expect("nonzero sum");
        return Some(ProjectiveCertificate { indices: set, weights: linalg::scale(v, &inv) });
    }
    None
}

/// `b` with `b_i = 1` on the certificate and every other constraint strictly
/// redundant over the simplex it cuts out.
pub fn simplex_parameter(c: &Calibration, cert: &ProjectiveCertificate) -> Result<Vector> {
    if !cert.verify(c) {
        return Err(Error::Degenerate(format!("certificate on {} does not cut out a simplex", cert.indices)));
    }
    let d = c.dim();
    let idx = cert.indices.to_vec();
    let minus_one = vec![-Scalar::one(); d];
    let mut verts = Vec::with_capacity(d + 1);
    for skip in 0..idx.len() {
        let rows: Vec<&[Scalar]> =
            idx.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &i)| c.column(i)).collect();
        verts.push(solve_square(&rows, &minus_one).ok_or_else(|| Error::Degenerate("singular simplex facet".into()))?);
    }
    let mut b = Vec::with_capacity(c.len());
    for j in 0..c.len() {
        if cert.indices.contains(j) {
            b.push(Scalar::one());
        } else {
            let worst = verts.iter().map(|v| -linalg::dot(v, c.column(j))).max().expect("d+1 vertices");
            b.push(worst + Scalar::one());
        }
    }
    Ok(b)
}

/// A complete simplicial fan on `d + 1` rays.
pub fn is_projective_type(f: &QuantumFan) -> bool {
    let d = f.dim();
    f.is_complete() && f.rays().len() == d + 1 && f.cones().len() == d + 1 && f.cones().iter().all(|s| s.len() == d)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Dim2Class {
    ProjectiveLinkable { certificate: ProjectiveCertificate },
    ExceptionalN4,
    /// Not expected to occur; kept so that a counterexample is reported
    /// instead of hidden.
    NotLinkable,
}

/// The complete fan using every column, in angular order, if it exists.
pub fn angular_cycle(c: &Calibration) -> Option<CombinatorialType> {
    if c.dim() != 2 || c.len() < 3 {
        return None;
    }
    let order: Vec<usize> = (0..c.len()).sorted_by(|&i, &j| cone::angle_cmp(c.column(i), c.column(j))).collect();
    let n = order.len();
    let cones: Vec<IndexSet> = (0..n).map(|k| IndexSet::singleton(order[k]).with(order[(k + 1) % n])).collect();
    Some(CombinatorialType::from_simplicial_cones(n, &cones))
}

/// Some `P_b` has all `n` columns as rays and normal fan of cycle type.
pub fn is_cycle_admissible(c: &Calibration) -> Result<bool> {
    match angular_cycle(c) {
        Some(t) => Ok(d_admissibility(c, &t)?.constructible),
        None => Ok(false),
    }
}

pub fn classify_dim2(c: &Calibration) -> Result<Dim2Class> {
    if c.dim() != 2 {
        return Err(Error::InvalidInput(format!("classification needs d = 2, got d = {}", c.dim())));
    }
    if !c.is_standard() {
        return Err(Error::InvalidInput("calibration is not standard".into()));
    }
    if !is_cycle_admissible(c)? {
        return Err(Error::NotAdmissible("no polytope realizes the cycle type on all columns".into()));
    }
    if c.len() == 4 && negative_axis(c.column(2), 0) && negative_axis(c.column(3), 1) {
        return Ok(Dim2Class::ExceptionalN4);
    }
    Ok(match projective_certificate(c) {
        Some(certificate) => Dim2Class::ProjectiveLinkable { certificate },
        None => Dim2Class::NotLinkable,
    })
}

fn negative_axis(v: &[Scalar], axis: usize) -> bool {
    v.iter().enumerate().all(|(k, x)| if k == axis { x.is_negative() } else { x.is_zero() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathStatus {
    AlreadyProjective,
    Found,
    NoPathFound,
}

/// Straight segment `(1 − s)h + s h'` checked at `steps` equally spaced `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CalibrationSegment {
    pub target: Vec<Vector>,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivePath {
    pub status: PathStatus,
    pub start: Combinatorics,
    pub calibration_segment: Option<CalibrationSegment>,
    pub certificate: Option<ProjectiveCertificate>,
    pub simplex_parameter: Option<Vector>,
    pub chi_path: Option<AffinePath>,
    pub cobordism: Option<CobordismReport>,
    pub message: Option<String>,
}

const SEGMENT_STEPS: usize = 16;

/// Tries to connect `(h, b)` to a fan of projective type: first along a
/// validated straight calibration segment if `h` has no certificate, then
/// along an affine character path.
pub fn path_to_projective(c: &Calibration, b: &[Scalar]) -> Result<ProjectivePath> {
    let f = normal_fan(c, b)?;
    if !f.is_simplicial() {
        return Err(Error::Degenerate("the normal fan is not simplicial".into()));
    }
    let start = Combinatorics::of(&f);
    let mut report = ProjectivePath {
        status: PathStatus::AlreadyProjective,
        start: start.clone(),
        calibration_segment: None,
        certificate: None,
        simplex_parameter: None,
        chi_path: None,
        cobordism: None,
        message: None,
    };
    if is_projective_type(&f) {
        return Ok(report);
    }
    let (target, cert) = match projective_certificate(c) {
        Some(cert) => (c.clone(), cert),
        None => match perturbation_target(c, b, &start)? {
            Some((target, cert)) => {
                report.calibration_segment =
                    Some(CalibrationSegment { target: target.columns().to_vec(), steps: SEGMENT_STEPS });
                (target, cert)
            }
            None => {
                report.status = PathStatus::NoPathFound;
                report.message = Some("no validated calibration segment toward a certified calibration".into());
                return Ok(report);
            }
        },
    };
    let sb = simplex_parameter(&target, &cert)?;
    report.certificate = Some(cert);
    report.simplex_parameter = Some(sb.clone());
    let chi_start = target.chi_of(b)?;
    let chi_end = target.chi_of(&sb)?;
    let goal = chamber_of(&chi_end, &target)?;
    let mut rng = StdRng::seed_from_u64(0);
    let mut ends = vec![chi_end, goal.rep_point.clone()];
    ends.extend(goal.sample_interior(&mut rng, 8));
    let mut last_err = None;
    for end in ends {
        let path = AffinePath::between(&target, &chi_start, &end)?;
        match cobordism_from_path(&path, &target) {
            Ok(cob) => {
                report.status = PathStatus::Found;
                report.chi_path = Some(path);
                report.cobordism = Some(cob);
                return Ok(report);
            }
            Err(Error::DegeneratePath(m)) => last_err = Some(m),
            Err(e) => return Err(e),
        }
    }
    report.status = PathStatus::NoPathFound;
    report.message = last_err.map(|m| format!("every character path was degenerate: {m}"));
    Ok(report)
}

/// Small moves of one coordinate of one column, smallest first, keeping the
/// combinatorics of `P_b` along the whole segment.
fn perturbation_target(
    c: &Calibration,
    b: &[Scalar],
    start: &Combinatorics,
) -> Result<Option<(Calibration, ProjectiveCertificate)>> {
    let d = c.dim();
    for den in [16i64, 8, 4, 2, 1] {
        for j in 0..c.len() {
            let scale = c.column(j).iter().map(Scalar::abs).max().expect("d >= 1");
            for k in 0..d {
                for sign in [1i64, -1] {
                    let mut cols = c.columns().to_vec();
                    let delta = &scale * Scalar::ratio(sign, den);
                    cols[j][k] = &cols[j][k] + &delta;
                    let Ok(target) = Calibration::new(cols, c.virtual_set()) else { continue };
                    let Some(cert) = projective_certificate(&target) else { continue };
                    if segment_preserves(c, &target, b, start) {
                        return Ok(Some((target, cert)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn segment_preserves(c: &Calibration, target: &Calibration, b: &[Scalar], start: &Combinatorics) -> bool {
    (1..=SEGMENT_STEPS).all(|step| {
        let s = Scalar::ratio(step as i64, SEGMENT_STEPS as i64);
        let r = Scalar::one() - &s;
        let cols: Vec<Vector> = c
            .columns()
            .iter()
            .zip(target.columns())
            .map(|(u, v)| linalg::add(&linalg::scale(u, &r), &linalg::scale(v, &s)))
            .collect();
        match Calibration::new(cols, c.virtual_set()).and_then(|cs| normal_fan(&cs, b)) {
            Ok(f) => Combinatorics::of(&f) == *start,
            Err(_) => false,
        }
    })
}
