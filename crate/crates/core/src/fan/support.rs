use serde::{Deserialize, Serialize};

use super::{CombinatorialType, QuantumFan};
use crate::cone;
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::linalg::{self, Vector};
use crate::lp::LinearSystem;
use crate::scalar::Scalar;

/// A piecewise linear function `φ(u) = ⟨m_σ, u⟩` on each maximal cone `σ`,
/// determined by `φ(h(e_j)) = −b_j` for the generators of `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportFunction {
    pub forms: Vec<(IndexSet, Vector)>,
    /// `φ` is the minimum of its linear pieces across every wall and lies
    /// above `−b_i` at each virtual generator.
    pub convex: bool,
    /// The same with all inequalities strict.
    pub strictly_convex: bool,
}

/// Pairs of maximal cones sharing a facet, with the facet.
pub(crate) fn adjacent_pairs(f: &QuantumFan) -> Vec<(IndexSet, IndexSet, IndexSet)> {
    let mut out = Vec::new();
    for (a, &s) in f.cones().iter().enumerate() {
        let facets = f.cone_facets(s);
        for &t in &f.cones()[a + 1..] {
            if let Some(&fc) = facets.iter().find(|fc| fc.is_subset(t)) {
                out.push((s, t, fc));
            }
        }
    }
    out
}

pub fn support_function(f: &QuantumFan, b: &[Scalar]) -> Result<SupportFunction> {
    let c = f.calibration();
    c.check_b(b)?;
    let mut forms = Vec::new();
    for &s in f.cones() {
        let m = linalg::Matrix::from_rows(s.iter().map(|j| c.column(j).to_vec()).collect())?;
        let rhs: Vector = s.iter().map(|j| -&b[j]).collect();
        let sol = m
            .solve(&rhs)?
            .filter(|sol| sol.kernel.is_empty())
            .ok_or_else(|| Error::Degenerate(format!("no linear piece on cone {s}")))?;
        forms.push((s, sol.particular));
    }
    let form = |s: IndexSet| &forms.iter().find(|(t, _)| *t == s).expect("cone").1;
    let (mut convex, mut strict) = (true, true);
    let mut check = |x: &Vector, i: usize| match c.slack(x, b, i).sign() {
        -1 => {
            convex = false;
            strict = false;
        }
        0 => strict = false,
        _ => {}
    };
    for (s, t, _) in adjacent_pairs(f) {
        for u in t.difference(s) {
            check(form(s), u);
        }
        for u in s.difference(t) {
            check(form(t), u);
        }
    }
    for i in f.virtual_set() {
        for s in f.cones_containing(c.column(i)) {
            check(form(s), i);
        }
    }
    Ok(SupportFunction { forms, convex, strictly_convex: strict })
}

/// A parameter `b` whose polytope has exactly `f` as normal fan with every
/// virtual constraint strictly redundant, when one exists.
///
/// Each vertex `x_σ` is linear in `b`, and each slack `⟨x_σ, h(e_i)⟩ + b_i`
/// is a linear form in `ker h`, hence a linear form in `χ = k^⊤ b`; the
/// search runs over `χ`.
pub fn strictly_convex_support(f: &QuantumFan) -> Option<Vector> {
    let c = f.calibration();
    let n = c.len();
    let mut sys = LinearSystem::new(c.corank());
    for &s in f.cones() {
        let basis = first_basis(f, s)?;
        let cols: Vec<&[Scalar]> = basis.iter().map(|&j| c.column(j)).collect();
        for i in 0..n {
            if basis.contains(&i) {
                continue;
            }
            // h_i = Σ w_k h_k over the basis, slack form e_i − Σ w_k e_k.
            let w = linalg::coordinates_in(&cols, c.column(i))?;
            let mut form = vec![Scalar::zero(); n];
            form[i] = Scalar::one();
            for (k, &j) in basis.iter().enumerate() {
                form[j] = -&w[k];
            }
            let y = c.kernel_coordinates(&form);
            if s.contains(i) {
                sys.eq(y, Scalar::zero());
            } else {
                sys.gt(y, Scalar::zero());
            }
        }
    }
    let chi = sys.solve()?;
    c.preimage(&chi).ok()
}

fn first_basis(f: &QuantumFan, s: IndexSet) -> Option<Vec<usize>> {
    let c = f.calibration();
    let mut basis: Vec<usize> = Vec::new();
    for j in s {
        let mut trial = basis.clone();
        trial.push(j);
        let rows: Vec<&[Scalar]> = trial.iter().map(|&k| c.column(k)).collect();
        if linalg::rank_of(&rows) == trial.len() {
            basis = trial;
        }
    }
    (basis.len() == c.dim()).then_some(basis)
}

/// Whether a combinatorial type can be realized over a calibration. The
/// weak reading asks only that each maximal face spans a strongly convex
/// cone; the strong reading asks for a genuine complete fan of that type;
/// `constructible` further asks for a polytope realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DAdmissibility {
    pub strongly_convex: bool,
    pub fan_valid: bool,
    pub constructible: bool,
}

pub fn d_admissibility(c: &crate::linalg::Calibration, t: &CombinatorialType) -> Result<DAdmissibility> {
    if t.n() != c.len() {
        return Err(Error::DimensionMismatch(format!("type on {} labels, {} columns", t.n(), c.len())));
    }
    let d = c.dim();
    let max = t.max_faces();
    let strongly_convex = max
        .iter()
        .all(|s| cone::is_strongly_convex(&s.iter().map(|i| c.column(i)).collect::<Vec<_>>(), d));
    let virtual_set = c.all().difference(t.ground());
    let fan = QuantumFan::new(c.clone(), max, virtual_set)?;
    let fan_valid = strongly_convex && fan.checks().all() && fan.combinatorial_type() == *t;
    let constructible = fan_valid && strictly_convex_support(&fan).is_some();
    Ok(DAdmissibility { strongly_convex, fan_valid, constructible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::linalg::Calibration;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn sqrt2() -> Calibration {
        let cols = [["1", "0"], ["0", "1"], ["-sqrt2", "-1"], ["-1", "-sqrt2"]];
        Calibration::new(cols.iter().map(|c| c.iter().map(|t| s(t)).collect()).collect(), IndexSet::empty())
            .unwrap()
    }

    #[test]
    fn support_function_of_a_normal_fan_is_strictly_convex() {
        let c = sqrt2();
        let b: Vec<Scalar> = ["0", "0", "1", "1"].iter().map(|t| s(t)).collect();
        let f = normal_fan(&c, &b).unwrap();
        let phi = support_function(&f, &b).unwrap();
        assert!(phi.convex && phi.strictly_convex);
        let other: Vec<Scalar> = ["0", "0", "1", "3"].iter().map(|t| s(t)).collect();
        assert!(!support_function(&f, &other).unwrap().convex);
    }

    #[test]
    fn constructible_types() {
        let c = sqrt2();
        let ok = d_admissibility(&c, &CombinatorialType::cycle(4)).unwrap();
        assert_eq!(ok, DAdmissibility { strongly_convex: true, fan_valid: true, constructible: true });
        let b = strictly_convex_support(
            &QuantumFan::new(c.clone(), CombinatorialType::cycle(4).max_faces(), IndexSet::empty()).unwrap(),
        )
        .unwrap();
        assert!(normal_fan(&c, &b).unwrap().combinatorial_type().isomorphic(&CombinatorialType::cycle(4)));
        // {1,3} and {2,4} with 1,2 adjacent: cones overlap.
        let bad = CombinatorialType::from_simplicial_cones(
            4,
            &[IndexSet::from_one_based(&[1, 3]), IndexSet::from_one_based(&[2, 4]), IndexSet::from_one_based(&[1, 2])],
        );
        let r = d_admissibility(&c, &bad).unwrap();
        assert!(r.strongly_convex && !r.fan_valid && !r.constructible);
    }
}
