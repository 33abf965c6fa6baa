use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::QuantumFan;
use crate::index_set::IndexSet;
use crate::linalg::{Matrix, Vector};

/// The face poset of a fan, recorded as the family of generator index sets
/// of its cones (always containing the empty set).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CombinatorialType {
    n: usize,
    faces: BTreeSet<IndexSet>,
}

impl CombinatorialType {
    pub fn from_faces(n: usize, faces: impl IntoIterator<Item = IndexSet>) -> Self {
        let mut faces: BTreeSet<IndexSet> = faces.into_iter().collect();
        faces.insert(IndexSet::empty());
        CombinatorialType { n, faces }
    }

    /// Family generated by simplicial maximal cones: every subset is a face.
    pub fn from_simplicial_cones(n: usize, cones: &[IndexSet]) -> Self {
        Self::from_faces(n, cones.iter().flat_map(|c| c.subsets()))
    }

    /// `S_d`: the proper subsets of `{1, …, d+1}`, the type of projective space.
    pub fn simplex(d: usize) -> Self {
        let all = IndexSet::full(d + 1);
        let cones: Vec<IndexSet> = (0..=d).map(|i| all.without(i)).collect();
        Self::from_simplicial_cones(d + 1, &cones)
    }

    /// `C_n`: the `n` cyclically consecutive pairs, the type of a complete
    /// surface with `n` rays in cyclic order `1, …, n`.
    pub fn cycle(n: usize) -> Self {
        let cones: Vec<IndexSet> = (0..n).map(|i| IndexSet::singleton(i).with((i + 1) % n)).collect();
        Self::from_simplicial_cones(n, &cones)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> &BTreeSet<IndexSet> {
        &self.faces
    }

    /// Inclusion-maximal faces.
    pub fn max_faces(&self) -> Vec<IndexSet> {
        self.faces
            .iter()
            .copied()
            .filter(|f| !self.faces.iter().any(|g| g != f && f.is_subset(*g)))
            .collect()
    }

    /// Labels that occur in some face.
    pub fn ground(&self) -> IndexSet {
        self.faces.iter().fold(IndexSet::empty(), |a, f| a.union(*f))
    }

    /// Contains `∅`, every face of a face in the family is listed (for index
    /// families this means closure under subsets of simplicial faces is not
    /// required), and the family is closed under intersection.
    pub fn is_closed_under_intersection(&self) -> bool {
        self.faces.contains(&IndexSet::empty())
            && self
                .faces
                .iter()
                .tuple_combinations()
                .all(|(a, b)| self.faces.contains(&a.intersection(*b)))
    }

    /// A bijection of ground sets carrying faces onto faces, as
    /// `(label, image)` pairs; the lexicographically first one.
    pub fn isomorphism(&self, other: &CombinatorialType) -> Option<Vec<(usize, usize)>> {
        let mut found = None;
        for_each_isomorphism(self, other, &mut |map| {
            found = Some(map.to_vec());
            true
        });
        found
    }

    pub fn isomorphic(&self, other: &CombinatorialType) -> bool {
        self.isomorphism(other).is_some()
    }

    fn degree_profile(&self, x: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.faces.iter().filter(|f| f.contains(x)).map(|f| f.len()).collect();
        v.sort_unstable();
        v
    }
}

/// Enumerate ground-set isomorphisms in lexicographic order; the callback
/// returns `true` to stop.
fn for_each_isomorphism(
    a: &CombinatorialType,
    b: &CombinatorialType,
    visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
) {
    let dom = a.ground().to_vec();
    let cod = b.ground().to_vec();
    if dom.len() != cod.len() || a.faces.len() != b.faces.len() {
        return;
    }
    let prof_a: Vec<Vec<usize>> = dom.iter().map(|&x| a.degree_profile(x)).collect();
    let prof_b: Vec<Vec<usize>> = cod.iter().map(|&y| b.degree_profile(y)).collect();
    let mut sorted_a = prof_a.clone();
    let mut sorted_b = prof_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return;
    }
    let mut map: Vec<(usize, usize)> = Vec::with_capacity(dom.len());
    let mut used = vec![false; cod.len()];
    search(a, b, &dom, &cod, &prof_a, &prof_b, &mut map, &mut used, visit);
}

#[allow(clippy::too_many_arguments)]
fn search(
    a: &CombinatorialType,
    b: &CombinatorialType,
    dom: &[usize],
    cod: &[usize],
    prof_a: &[Vec<usize>],
    prof_b: &[Vec<usize>],
    map: &mut Vec<(usize, usize)>,
    used: &mut [bool],
    visit: &mut dyn FnMut(&[(usize, usize)]) -> bool,
) -> bool {
    let k = map.len();
    if k == dom.len() {
        return visit(map);
    }
    let x = dom[k];
    for (j, &y) in cod.iter().enumerate() {
        if used[j] || prof_a[k] != prof_b[j] {
            continue;
        }
        map.push((x, y));
        if consistent(a, b, map) {
            used[j] = true;
            if search(a, b, dom, cod, prof_a, prof_b, map, used, visit) {
                return true;
            }
            used[j] = false;
        }
        map.pop();
    }
    false
}

/// Faces inside the assigned part correspond in both directions.
fn consistent(a: &CombinatorialType, b: &CombinatorialType, map: &[(usize, usize)]) -> bool {
    let (x, y) = *map.last().expect("nonempty");
    let src: IndexSet = map.iter().map(|p| p.0).collect();
    let dst: IndexSet = map.iter().map(|p| p.1).collect();
    let fwd = |f: IndexSet| -> IndexSet { f.iter().map(|i| map.iter().find(|p| p.0 == i).expect("assigned").1).collect() };
    let back = |g: IndexSet| -> IndexSet { g.iter().map(|i| map.iter().find(|p| p.1 == i).expect("assigned").0).collect() };
    a.faces.iter().filter(|f| f.contains(x) && f.is_subset(src)).all(|f| b.faces.contains(&fwd(*f)))
        && b.faces.iter().filter(|g| g.contains(y) && g.is_subset(dst)).all(|g| a.faces.contains(&back(*g)))
}

/// All permutations of `{0, …, n−1}` (as image vectors) mapping the face
/// family onto itself. Labels outside the ground set may be permuted freely
/// among themselves.
pub fn fan_automorphisms(t: &CombinatorialType) -> Vec<Vec<usize>> {
    let n = t.n;
    let unused: Vec<usize> = (0..n).filter(|&i| !t.ground().contains(i)).collect();
    let mut ground_autos: Vec<Vec<(usize, usize)>> = Vec::new();
    for_each_isomorphism(t, t, &mut |m| {
        ground_autos.push(m.to_vec());
        false
    });
    let mut out = Vec::new();
    for g in &ground_autos {
        for perm in unused.iter().copied().permutations(unused.len()) {
            let mut p: Vec<usize> = (0..n).collect();
            for &(x, y) in g {
                p[x] = y;
            }
            for (&x, &y) in unused.iter().zip(&perm) {
                p[x] = y;
            }
            out.push(p);
        }
    }
    out.sort();
    out
}

/// A linear isomorphism between two quantum fans over calibrations of the
/// same shape: `L h(e_i) = h'(e_{σ(i)})` on rays, plus a bijection of
/// virtual generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanIsomorphism {
    pub linear: Vec<Vector>,
    /// `(i, σ(i))` on rays, zero-based.
    pub generators: Vec<(usize, usize)>,
    /// `(i, τ(i))` on virtual generators, zero-based.
    pub virtual_map: Vec<(usize, usize)>,
}

pub fn fans_isomorphic(f1: &QuantumFan, f2: &QuantumFan) -> Option<FanIsomorphism> {
    if f1.dim() != f2.dim() || f1.len() != f2.len() || f1.virtual_set().len() != f2.virtual_set().len() {
        return None;
    }
    let d = f1.dim();
    let t1 = f1.combinatorial_type();
    let t2 = f2.combinatorial_type();
    let mut witness = None;
    for_each_isomorphism(&t1, &t2, &mut |map| {
        // Row r of L solves ⟨L_r, h(e_i)⟩ = h'(e_σ(i))_r for all rays i.
        let m = Matrix::from_rows(map.iter().map(|&(i, _)| f1.calibration().column(i).to_vec()).collect())
            .expect("rectangular");
        let mut rows = Vec::with_capacity(d);
        for r in 0..d {
            let rhs: Vector = map.iter().map(|&(_, j)| f2.calibration().column(j)[r].clone()).collect();
            match m.solve(&rhs) {
                Ok(Some(sol)) => rows.push(sol.particular),
                _ => return false,
            }
        }
        let l = Matrix::from_rows(rows.clone()).expect("square");
        if l.rank() != d {
            return false;
        }
        let virtual_map = f1.virtual_set().iter().zip(f2.virtual_set().iter()).collect();
        witness = Some(FanIsomorphism { linear: rows, generators: map.to_vec(), virtual_map });
        true
    });
    witness
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::linalg::Calibration;
    use crate::scalar::Scalar;

    #[test]
    fn named_types() {
        let s2 = CombinatorialType::simplex(2);
        assert_eq!(s2.faces().len(), 7);
        assert!(s2.is_closed_under_intersection());
        let c4 = CombinatorialType::cycle(4);
        assert_eq!(c4.faces().len(), 9);
        assert!(!s2.isomorphic(&c4));
        assert!(CombinatorialType::cycle(3).isomorphic(&s2));
    }

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(fan_automorphisms(&CombinatorialType::simplex(2)).len(), 6);
        assert_eq!(fan_automorphisms(&CombinatorialType::cycle(4)).len(), 8);
        assert_eq!(fan_automorphisms(&CombinatorialType::cycle(5)).len(), 10);
        assert_eq!(fan_automorphisms(&CombinatorialType::simplex(3)).len(), 24);
    }

    fn unit_b(n: usize) -> Vec<Scalar> {
        vec![Scalar::one(); n]
    }

    #[test]
    fn fan_isomorphic_to_itself_by_identity() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let f = normal_fan(&c, &unit_b(3)).unwrap();
        let w = fans_isomorphic(&f, &f).unwrap();
        assert_eq!(w.generators, vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(Matrix::from_rows(w.linear).unwrap(), Matrix::identity(2));
    }

    #[test]
    fn rescaled_column_is_not_isomorphic() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let c2 = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-2, -2]]).unwrap();
        let f = normal_fan(&c, &unit_b(3)).unwrap();
        let g = normal_fan(&c2, &unit_b(3)).unwrap();
        assert!(f.combinatorial_type().isomorphic(&g.combinatorial_type()));
        assert!(fans_isomorphic(&f, &g).is_none());
    }

    #[test]
    fn cyclic_relabeling() {
        let col = |a: &str, b: &str| vec![a.parse::<Scalar>().unwrap(), b.parse().unwrap()];
        let cols = vec![col("1", "0"), col("0", "1"), col("-sqrt2", "-1"), col("-1", "-sqrt2")];
        let mut shifted = cols.clone();
        shifted.rotate_right(1);
        let c = Calibration::new(cols, IndexSet::empty()).unwrap();
        let c2 = Calibration::new(shifted, IndexSet::empty()).unwrap();
        let f = normal_fan(&c, &unit_b(4)).unwrap();
        let g = normal_fan(&c2, &unit_b(4)).unwrap();
        let w = fans_isomorphic(&f, &g).unwrap();
        assert_eq!(w.generators, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(Matrix::from_rows(w.linear).unwrap(), Matrix::identity(2));
    }
}
