//! Named calibrations used throughout the examples and tests, and seeded
//! random generators of calibrations, parameters and characters.

use rand::Rng;

use crate::index_set::IndexSet;
use crate::linalg::{self, Calibration, Vector};
use crate::lp::LinearSystem;
use crate::scalar::Scalar;
use crate::secondary::is_generic;

fn cal(cols: &[&[&str]]) -> Calibration {
    let cols = cols.iter().map(|c| c.iter().map(|t| t.parse().expect("literal")).collect()).collect();
    Calibration::new(cols, IndexSet::empty()).expect("valid named calibration")
}

/// `e₁, e₂, (−√2, −1), (−1, −√2)`: two side chambers around a blow-up.
pub fn sqrt2_blowup() -> Calibration {
    cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]])
}

/// The other end of the blow-up family: `h(e₄) = (−2/3, −2√2/3)`.
pub fn sqrt2_blowup_far() -> Calibration {
    cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-2/3", "-2sqrt2/3"]])
}

pub fn projective_plane() -> Calibration {
    Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).expect("valid")
}

pub fn projective_space(d: usize) -> Calibration {
    let mut cols: Vec<Vector> = (0..d)
        .map(|i| (0..d).map(|j| Scalar::from_int((i == j) as i64)).collect())
        .collect();
    cols.push(vec![-Scalar::one(); d]);
    Calibration::new(cols, IndexSet::empty()).expect("valid")
}

/// `e₁, e₂, (−3, 1), (1, −3), (−2, −1)`: a Hirzebruch surface, its blow-up
/// and a quantum projective plane all appear as chambers.
pub fn pentagon() -> Calibration {
    Calibration::from_i64(&[&[1, 0], &[0, 1], &[-3, 1], &[1, -3], &[-2, -1]]).expect("valid")
}

/// `e₁, e₂, (−a, 0), (0, −b)` with `a, b > 0`: the four-generator family
/// without a projective certificate.
pub fn exceptional_n4(a: Scalar, b: Scalar) -> Calibration {
    let z = Scalar::zero;
    let cols = vec![
        vec![Scalar::one(), z()],
        vec![z(), Scalar::one()],
        vec![-a, z()],
        vec![z(), -b],
    ];
    Calibration::new(cols, IndexSet::empty()).expect("a, b must be nonzero")
}

/// `e₁, e₂, e₃, (a₁, −a₂, a₃)`: one non-simplicial cone on four generators.
pub fn stabilizer_example(a1: Scalar, a2: Scalar, a3: Scalar) -> Calibration {
    let z = Scalar::zero;
    let cols = vec![
        vec![Scalar::one(), z(), z()],
        vec![z(), Scalar::one(), z()],
        vec![z(), z(), Scalar::one()],
        vec![a1, -a2, a3],
    ];
    Calibration::new(cols, IndexSet::empty()).expect("valid")
}

/// A square pyramid fan: the apex cone flips between its two triangulations.
pub fn square_pyramid() -> Calibration {
    Calibration::from_i64(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1], &[0, 0, -1]]).expect("valid")
}

/// `p + q√m` with `|p|, |q| ≤ bound`; `q = 0` half the time, always when `m = 0`.
pub fn random_scalar(rng: &mut impl Rng, m: u32, bound: i64) -> Scalar {
    let p = Scalar::from_int(rng.gen_range(-bound..=bound));
    if m == 0 || rng.gen_bool(0.5) {
        return p;
    }
    let q = rng.gen_range(-bound..=bound);
    p + Scalar::quadratic(0, q, m)
}

/// A positive rational `num/den` with `1 ≤ num ≤ 60`, `1 ≤ den ≤ 20`.
pub fn random_positive(rng: &mut impl Rng) -> Scalar {
    Scalar::ratio(rng.gen_range(1..=60), rng.gen_range(1..=20))
}

/// Whether the columns positively span `R^d`, i.e. every `P_b` is bounded.
pub fn positively_spanning(c: &Calibration) -> bool {
    let mut sys = LinearSystem::new(c.len());
    for r in 0..c.dim() {
        sys.eq(c.columns().iter().map(|col| col[r].clone()).collect(), Scalar::zero());
    }
    for i in 0..c.len() {
        let mut e = vec![Scalar::zero(); c.len()];
        e[i] = Scalar::one();
        sys.gt(e, Scalar::zero());
    }
    sys.is_feasible()
}

/// A random calibration whose polyhedra are all bounded and whose columns
/// are pairwise independent.
pub fn random_bounded_calibration(rng: &mut impl Rng, d: usize, n: usize, m: u32) -> Calibration {
    assert!(n > d, "bounded polyhedra need n > d");
    loop {
        let cols: Vec<Vector> = (0..n)
            .map(|_| (0..d).map(|_| random_scalar(rng, m, 3)).collect())
            .collect();
        let Ok(c) = Calibration::new(cols, IndexSet::empty()) else { continue };
        if c.is_geometric() && positively_spanning(&c) {
            return c;
        }
    }
}

/// `e₁, …, e_d` followed by `n − d` random columns.
pub fn random_standard_calibration(rng: &mut impl Rng, d: usize, n: usize, m: u32, bound: i64) -> Calibration {
    loop {
        let mut cols: Vec<Vector> = (0..d)
            .map(|i| (0..d).map(|j| Scalar::from_int((i == j) as i64)).collect())
            .collect();
        for _ in d..n {
            cols.push((0..d).map(|_| random_scalar(rng, m, bound)).collect());
        }
        if let Ok(c) = Calibration::new(cols, IndexSet::empty()) {
            return c;
        }
    }
}

/// `b > 0`, so `P_b` contains the origin in its interior.
pub fn random_interior_b(rng: &mut impl Rng, n: usize) -> Vector {
    (0..n).map(|_| random_positive(rng)).collect()
}

/// A positive combination of all Gale generators: an interior character.
pub fn random_admissible_chi(rng: &mut impl Rng, c: &Calibration) -> Vector {
    random_admissible_pair(rng, c).1
}

/// Positive weights `b` together with `χ = kᵀb`. The weights are a parameter
/// with small entries, cheaper to work with than the minimum-norm preimage.
pub fn random_admissible_pair(rng: &mut impl Rng, c: &Calibration) -> (Vector, Vector) {
    let b = random_interior_b(rng, c.len());
    let mut chi = vec![Scalar::zero(); c.corank()];
    for (g, w) in c.gale_generators().iter().zip(&b) {
        chi = linalg::add(&chi, &linalg::scale(g, w));
    }
    (b, chi)
}

/// An interior character avoiding every wall.
pub fn random_generic_chi(rng: &mut impl Rng, c: &Calibration) -> Vector {
    random_generic_pair(rng, c).1
}

/// As [`random_admissible_pair`], with a generic character.
pub fn random_generic_pair(rng: &mut impl Rng, c: &Calibration) -> (Vector, Vector) {
    loop {
        let (b, chi) = random_admissible_pair(rng, c);
        if is_generic(&chi, c).unwrap_or(false) {
            return (b, chi);
        }
    }
}
