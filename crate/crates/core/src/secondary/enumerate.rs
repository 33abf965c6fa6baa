use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::{chamber_of, gale_cone, genericity_obstruction, is_admissible, Chamber, Combinatorics};
use super::walls::{classify_wall, AffinePath, Wall};
use crate::error::{Error, Result};
use crate::linalg::{self, normalize_direction, Calibration, Vector};
use crate::lp::LinearSystem;
use crate::scalar::Scalar;

/// Two chambers sharing the facet `facet` of `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjacency {
    pub from: usize,
    pub to: usize,
    pub facet: usize,
    pub wall: Wall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondaryFan {
    pub chambers: Vec<Chamber>,
    /// One entry per ordered pair of adjacent chambers.
    pub adjacency: Vec<Adjacency>,
    /// Facets of the Gale cone met by the chambers, as `(chamber, facet)`.
    pub boundary: Vec<(usize, usize)>,
}

impl SecondaryFan {
    pub fn find(&self, comb: &Combinatorics) -> Option<usize> {
        self.chambers.iter().position(|c| c.combinatorics == *comb)
    }

    pub fn locate(&self, chi: &[Scalar]) -> Option<usize> {
        self.chambers.iter().position(|c| c.interior_contains(chi))
    }

    pub fn neighbors(&self, i: usize) -> Vec<&Adjacency> {
        self.adjacency.iter().filter(|a| a.from == i).collect()
    }
}

/// Breadth-first walk through chambers, crossing each facet at a point just
/// beyond its relative interior. Chambers are keyed by their combinatorics.
pub fn enumerate_chambers(c: &Calibration) -> Result<SecondaryFan> {
    if c.corank() == 0 {
        return Err(Error::Unsupported("n = d: the character space is a point".into()));
    }
    let start = starting_point(c)?;
    let first = chamber_of(&start, c)?;
    let mut chambers = vec![first];
    let mut index: BTreeMap<Combinatorics, usize> = BTreeMap::new();
    index.insert(chambers[0].combinatorics.clone(), 0);
    let mut adjacency = Vec::new();
    let mut boundary = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let gale = gale_cone(c);
    while let Some(a) = queue.pop_front() {
        for k in 0..chambers[a].facets.len() {
            let y = chambers[a].facets[k].normal.clone();
            if gale.is_boundary_normal(&y) {
                boundary.push((a, k));
                continue;
            }
            let next = cross_facet(&chambers[a], k, c)?;
            let b = match index.get(&next.combinatorics) {
                Some(&b) => b,
                None => {
                    let b = chambers.len();
                    index.insert(next.combinatorics.clone(), b);
                    chambers.push(next);
                    queue.push_back(b);
                    b
                }
            };
            let wall = classify_wall(&chambers[a], k, c)?;
            adjacency.push(Adjacency { from: a, to: b, facet: k, wall });
        }
    }
    Ok(SecondaryFan { chambers, adjacency, boundary })
}

/// Some generic admissible point: a weighted sum of the Gale generators.
fn starting_point(c: &Calibration) -> Result<Vector> {
    let gens = c.gale_generators();
    let r = c.corank();
    for attempt in 0..64i64 {
        let mut p = vec![Scalar::zero(); r];
        for (i, g) in gens.iter().enumerate() {
            let w = Scalar::ratio(1 + ((i as i64 + 1) * (attempt + 1)) % 7, 1 + attempt % 3);
            p = linalg::add(&p, &linalg::scale(g, &w));
        }
        if is_admissible(&p, c)? && genericity_obstruction(&p, c)?.is_none() {
            return Ok(p);
        }
    }
    Err(Error::NotAdmissible("the Gale cone has empty interior".into()))
}

/// A point in the relative interior of facet `k` of `ch`.
pub(crate) fn facet_point(ch: &Chamber, k: usize) -> Option<Vector> {
    let y = &ch.facets[k].normal;
    let on: Vec<&Vector> = ch.rays.iter().filter(|r| linalg::dot(y, r).is_zero()).collect();
    if !ch.rays.is_empty() {
        let r = y.len();
        let mut p = vec![Scalar::zero(); r];
        for ray in &on {
            p = linalg::add(&p, ray);
        }
        if ch.facets.iter().enumerate().all(|(j, f)| j == k || linalg::dot(&f.normal, &p).is_positive()) {
            return Some(p);
        }
    }
    let mut sys = LinearSystem::new(y.len());
    sys.eq(y.clone(), Scalar::zero());
    for (j, f) in ch.facets.iter().enumerate() {
        if j != k {
            sys.gt(f.normal.clone(), Scalar::zero());
        }
    }
    sys.solve()
}

/// A short path through the relative interior of facet `k`, from inside
/// `ch` to the neighboring chamber, meeting the wall at `t = 0`.
pub fn wall_path(ch: &Chamber, k: usize, c: &Calibration) -> Result<AffinePath> {
    let y = &ch.facets[k].normal;
    let p = facet_point(ch, k).ok_or_else(|| Error::Degenerate("facet with empty relative interior".into()))?;
    let scale = p.iter().map(Scalar::abs).max().unwrap_or_else(Scalar::one);
    let target = normalize_direction(&linalg::neg(y));
    let mut eps = Scalar::ratio(1, 4);
    for _ in 0..64 {
        let step = &eps * &scale;
        let inside = linalg::add(&p, &linalg::scale(y, &step));
        let outside = linalg::sub(&p, &linalg::scale(y, &step));
        if ch.interior_contains(&inside)
            && genericity_obstruction(&inside, c)?.is_none()
            && is_admissible(&outside, c)?
            && genericity_obstruction(&outside, c)?.is_none()
            && lands_across(&chamber_of(&outside, c)?, &target, &p)
        {
            return AffinePath::between(c, &inside, &outside);
        }
        eps = eps * Scalar::ratio(1, 2);
    }
    Err(Error::Degenerate("could not place a path across the facet".into()))
}

// the step may overshoot into another chamber on the same hyperplane
fn lands_across(next: &Chamber, normal: &[Scalar], p: &[Scalar]) -> bool {
    next.contains(p) && next.facets.iter().any(|f| f.normal == normal)
}

/// The chamber on the other side of facet `k`.
pub(crate) fn cross_facet(ch: &Chamber, k: usize, c: &Calibration) -> Result<Chamber> {
    let y = &ch.facets[k].normal;
    let p = facet_point(ch, k).ok_or_else(|| Error::Degenerate("facet with empty relative interior".into()))?;
    let scale = p.iter().map(Scalar::abs).max().unwrap_or_else(Scalar::one);
    let target = normalize_direction(&linalg::neg(y));
    let mut eps = Scalar::ratio(1, 4);
    for _ in 0..64 {
        let step = &eps * &scale;
        let q = linalg::sub(&p, &linalg::scale(y, &step));
        if is_admissible(&q, c)? && genericity_obstruction(&q, c)?.is_none() {
            let next = chamber_of(&q, c)?;
            if lands_across(&next, &target, &p) {
                return Ok(next);
            }
        }
        eps = eps * Scalar::ratio(1, 2);
    }
    Err(Error::Degenerate("could not step across a facet".into()))
}
