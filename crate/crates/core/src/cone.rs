//! Predicates on polyhedral cones `Cone(v_1, …, v_k) ⊂ R^d` given by
//! generators. Everything reduces to exact linear feasibility problems.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::linalg::{self, dot, neg, normalize_direction, Matrix, Vector};
use crate::lp::LinearSystem;
use crate::scalar::Scalar;

/// `v ∈ Cone(gens)`.
pub fn contains(gens: &[&[Scalar]], v: &[Scalar]) -> bool {
    let d = v.len();
    if linalg::is_zero(v) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let k = gens.len();
    let mut sys = LinearSystem::new(k);
    for r in 0..d {
        sys.eq(gens.iter().map(|g| g[r].clone()).collect(), v[r].clone());
    }
    for j in 0..k {
        sys.ge(unit(k, j), Scalar::zero());
    }
    sys.is_feasible()
}

/// `v` lies in the relative interior of `Cone(gens)`: a combination with all
/// coefficients strictly positive exists.
pub fn contains_in_relative_interior(gens: &[&[Scalar]], v: &[Scalar]) -> bool {
    let d = v.len();
    let k = gens.len();
    if k == 0 {
        return linalg::is_zero(v);
    }
    let mut sys = LinearSystem::new(k);
    for r in 0..d {
        sys.eq(gens.iter().map(|g| g[r].clone()).collect(), v[r].clone());
    }
    for j in 0..k {
        sys.gt(unit(k, j), Scalar::zero());
    }
    sys.is_feasible()
}

/// Some `w` with `⟨w, g⟩ > 0` for every generator, i.e. the cone contains no
/// line and no generator is zero.
pub fn strongly_convex_witness(gens: &[&[Scalar]], d: usize) -> Option<Vector> {
    let mut sys = LinearSystem::new(d);
    for g in gens {
        sys.gt(g.to_vec(), Scalar::zero());
    }
    sys.solve()
}

pub fn is_strongly_convex(gens: &[&[Scalar]], d: usize) -> bool {
    strongly_convex_witness(gens, d).is_some()
}

/// Whether the generators selected by `face` (positions into `gens`) are
/// exactly the generators on some face: `∃w` vanishing on them and strictly
/// positive on the others.
pub fn is_face(gens: &[&[Scalar]], face: &[usize], d: usize) -> bool {
    let mut sys = LinearSystem::new(d);
    for (j, g) in gens.iter().enumerate() {
        if face.contains(&j) {
            sys.eq(g.to_vec(), Scalar::zero());
        } else {
            sys.gt(g.to_vec(), Scalar::zero());
        }
    }
    sys.is_feasible()
}

/// `∃w`: `⟨w,·⟩ = 0` on `common`, `> 0` on `left`, `< 0` on `right`. Two
/// cones admitting such a hyperplane meet exactly in `Cone(common)`, a face
/// of both.
pub fn separated(common: &[&[Scalar]], left: &[&[Scalar]], right: &[&[Scalar]], d: usize) -> bool {
    let mut sys = LinearSystem::new(d);
    for g in common {
        sys.eq(g.to_vec(), Scalar::zero());
    }
    for g in left {
        sys.gt(g.to_vec(), Scalar::zero());
    }
    for g in right {
        sys.lt(g.to_vec(), Scalar::zero());
    }
    sys.is_feasible()
}

/// Facets of a full-dimensional cone as `(positions of generators on the
/// facet, inward normal)`. Normals are normalized with
/// [`normalize_direction`]; the list is sorted by generator positions.
pub fn facets(gens: &[&[Scalar]], d: usize) -> Vec<(Vec<usize>, Vector)> {
    let mut out: Vec<(Vec<usize>, Vector)> = Vec::new();
    if d == 1 {
        // Facet of a ray in R^1 is the origin, normal ±1.
        for sign in [1i64, -1] {
            let w = vec![Scalar::from_int(sign)];
            if gens.iter().all(|g| !dot(g, &w).is_negative()) && gens.iter().any(|g| dot(g, &w).is_positive()) {
                let on: Vec<usize> = (0..gens.len()).filter(|&j| dot(gens[j], &w).is_zero()).collect();
                out.push((on, w));
            }
        }
        return out;
    }
    for subset in (0..gens.len()).combinations(d - 1) {
        let rows: Vec<Vector> = subset.iter().map(|&j| gens[j].to_vec()).collect();
        let m = Matrix::from_rows(rows).expect("equal lengths");
        let ker = m.kernel_basis();
        if ker.len() != 1 {
            continue;
        }
        let w = ker.into_iter().next().expect("one vector");
        let signs: Vec<i8> = gens.iter().map(|g| dot(g, &w).sign()).collect();
        let w = if signs.iter().all(|&s| s >= 0) {
            w
        } else if signs.iter().all(|&s| s <= 0) {
            neg(&w)
        } else {
            continue;
        };
        if signs.iter().all(|&s| s == 0) {
            continue;
        }
        let on: Vec<usize> = (0..gens.len()).filter(|&j| signs[j] == 0).collect();
        if !out.iter().any(|(o, _)| *o == on) {
            out.push((on, normalize_direction(&w)));
        }
    }
    out.sort();
    out
}

/// Extreme rays of `{x ∈ R^d : ⟨a, x⟩ ≥ 0 for a in normals}`, assumed pointed.
/// Rays are normalized and sorted.
pub fn extreme_rays(normals: &[Vector], d: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    let feasible = |x: &Vector| normals.iter().all(|a| !dot(a, x).is_negative());
    if d == 1 {
        for s in [1i64, -1] {
            let x = vec![Scalar::from_int(s)];
            if feasible(&x) {
                out.push(x);
            }
        }
        return out;
    }
    for subset in (0..normals.len()).combinations(d - 1) {
        let rows: Vec<Vector> = subset.iter().map(|&j| normals[j].clone()).collect();
        let ker = Matrix::from_rows(rows).expect("equal lengths").kernel_basis();
        if ker.len() != 1 {
            continue;
        }
        let r = normalize_direction(&ker[0]);
        for cand in [r.clone(), neg(&r)] {
            if feasible(&cand) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out.sort();
    out
}

/// Counter-clockwise angular order of nonzero vectors in `R^2`, starting at
/// the positive x-axis.
pub fn angle_cmp(u: &[Scalar], v: &[Scalar]) -> Ordering {
    let half = |p: &[Scalar]| -> u8 {
        // 0 for angles in [0, π), 1 for [π, 2π)
        if p[1].is_positive() || (p[1].is_zero() && p[0].is_positive()) {
            0
        } else {
            1
        }
    };
    match half(u).cmp(&half(v)) {
        Ordering::Equal => {
            let cross = &u[0] * &v[1] - &u[1] * &v[0];
            match cross.sign() {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            }
        }
        o => o,
    }
}

/// `u × v` in the plane.
pub fn cross2(u: &[Scalar], v: &[Scalar]) -> Scalar {
    &u[0] * &v[1] - &u[1] * &v[0]
}

fn unit(k: usize, j: usize) -> Vector {
    let mut v = vec![Scalar::zero(); k];
    v[j] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn membership_and_interior() {
        let (a, b) = (v(&[1, 0]), v(&[1, 1]));
        let gens: Vec<&[Scalar]> = vec![&a, &b];
        assert!(contains(&gens, &v(&[2, 1])));
        assert!(contains(&gens, &v(&[1, 0])));
        assert!(!contains(&gens, &v(&[0, 1])));
        assert!(contains_in_relative_interior(&gens, &v(&[3, 1])));
        assert!(!contains_in_relative_interior(&gens, &v(&[1, 0])));
    }

    #[test]
    fn strong_convexity() {
        let (a, b, c) = (v(&[1, 0]), v(&[0, 1]), v(&[-1, 0]));
        assert!(is_strongly_convex(&[&a, &b], 2));
        assert!(!is_strongly_convex(&[&a, &b, &c], 2));
    }

    #[test]
    fn square_pyramid_faces() {
        let g = [v(&[1, 1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1]), v(&[1, -1, 1])];
        let gens: Vec<&[Scalar]> = g.iter().map(|x| x.as_slice()).collect();
        assert!(is_face(&gens, &[0, 1], 3));
        assert!(!is_face(&gens, &[0, 2], 3));
        assert!(is_face(&gens, &[], 3));
        let f = facets(&gens, 3);
        assert_eq!(f.len(), 4);
        assert_eq!(f[0].0, vec![0, 1]);
    }

    #[test]
    fn rays_of_quadrant() {
        let rays = extreme_rays(&[v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], 2);
        assert_eq!(rays, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn angular_order() {
        let mut pts = vec![v(&[0, -1]), v(&[-1, 0]), v(&[1, 1]), v(&[1, 0]), v(&[1, -1])];
        pts.sort_by(|a, b| angle_cmp(a, b));
        assert_eq!(pts, vec![v(&[1, 0]), v(&[1, 1]), v(&[-1, 0]), v(&[0, -1]), v(&[1, -1])]);
    }
}
