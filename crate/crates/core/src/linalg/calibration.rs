use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;

use super::{dot, Matrix, Vector};
use crate::error::{Error, Result};
use crate::index_set::IndexSet;
use crate::scalar::Scalar;

/// A surjective linear map `h: R^n → R^d`, given by its columns `h(e_i)`,
/// together with the set of virtual generators.
#[derive(Clone)]
pub struct Calibration {
    d: usize,
    columns: Vec<Vector>,
    virtual_set: IndexSet,
    field: u32,
    gale: OnceLock<Matrix>,
    preimage: OnceLock<Matrix>,
    bases: OnceLock<Vec<(IndexSet, Matrix)>>,
    dual_rays: OnceLock<Vec<Vector>>,
}

impl Calibration {
    /// Columns are `h(e_1), …, h(e_n)`, each of length `d`.
    pub fn new(columns: Vec<Vector>, virtual_set: IndexSet) -> Result<Self> {
        let n = columns.len();
        if n == 0 {
            return Err(Error::InvalidCalibration("no generators".into()));
        }
        if n > 64 {
            return Err(Error::Unsupported(format!("{n} generators (at most 64)")));
        }
        let d = columns[0].len();
        if d == 0 {
            return Err(Error::InvalidCalibration("ambient dimension 0".into()));
        }
        if columns.iter().any(|c| c.len() != d) {
            return Err(Error::InvalidCalibration("columns of unequal length".into()));
        }
        if let Some(i) = columns.iter().position(|c| super::is_zero(c)) {
            return Err(Error::InvalidCalibration(format!("column {} is zero", i + 1)));
        }
        if virtual_set.iter().any(|i| i >= n) {
            return Err(Error::InvalidCalibration("virtual index out of range".into()));
        }
        let mut field = 0;
        for x in columns.iter().flatten() {
            if let Some(m) = x.field() {
                if field != 0 && field != m {
                    return Err(Error::InvalidCalibration(format!(
                        "entries from Q(sqrt{field}) and Q(sqrt{m})"
                    )));
                }
                field = m;
            }
        }
        let h = Matrix::from_columns(d, &columns)?;
        if h.rank() != d {
            return Err(Error::InvalidCalibration(format!("rank {} < {d}", h.rank())));
        }
        Ok(Calibration {
            d,
            columns,
            virtual_set,
            field,
            gale: OnceLock::new(),
            preimage: OnceLock::new(),
            bases: OnceLock::new(),
            dual_rays: OnceLock::new(),
        })
    }

    pub fn from_i64(columns: &[&[i64]]) -> Result<Self> {
        let cols = columns.iter().map(|c| c.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::new(cols, IndexSet::empty())
    }

    pub fn with_virtual(&self, virtual_set: IndexSet) -> Result<Self> {
        Self::new(self.columns.clone(), virtual_set)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Dimension `n − d` of the character space.
    pub fn corank(&self) -> usize {
        self.len() - self.d
    }

    /// The `m` of `Q(√m)`, `0` when every entry is rational.
    pub fn field(&self) -> u32 {
        self.field
    }

    /// Zero-based access to `h(e_{i+1})`.
    pub fn column(&self, i: usize) -> &[Scalar] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn virtual_set(&self) -> IndexSet {
        self.virtual_set
    }

    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.len())
    }

    pub fn matrix(&self) -> Matrix {
        Matrix::from_columns(self.d, &self.columns).expect("validated")
    }

    /// `h_I` as a `d × |I|` matrix.
    pub fn restrict(&self, set: IndexSet) -> Matrix {
        let cols: Vec<Vector> = set.iter().map(|i| self.columns[i].clone()).collect();
        Matrix::from_columns(self.d, &cols).expect("validated")
    }

    pub fn rank_of(&self, set: IndexSet) -> usize {
        let rows: Vec<&[Scalar]> = set.iter().map(|i| self.column(i)).collect();
        super::rank_of(&rows)
    }

    /// No column is a multiple of another.
    pub fn is_geometric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (i + 1..n).all(|j| self.rank_of(IndexSet::singleton(i).with(j)) == 2))
    }

    /// `h(e_i) = e_i` for `i ≤ d` and the virtual set is a terminal segment.
    pub fn is_standard(&self) -> bool {
        let n = self.len();
        let unit = (0..self.d).all(|i| {
            (0..self.d).all(|r| {
                let x = &self.columns[i][r];
                if r == i { x.is_one() } else { x.is_zero() }
            })
        });
        let k = self.virtual_set.len();
        unit && self.virtual_set == (n - k..n).collect::<IndexSet>()
    }

    /// A basis `k` of `ker h` as an `n × (n − d)` matrix, from the reduced
    /// echelon form of `h` (leftmost pivots, free variables increasing).
    pub fn gale(&self) -> &Matrix {
        self.gale.get_or_init(|| {
            let basis = self.matrix().kernel_basis();
            Matrix::from_columns(self.len(), &basis).expect("kernel vectors of length n")
        })
    }

    /// `k^⊤ e_i`, the i-th row of the Gale matrix (zero-based `i`).
    pub fn gale_generator(&self, i: usize) -> &[Scalar] {
        self.gale().row(i)
    }

    pub fn gale_generators(&self) -> Vec<Vector> {
        self.gale().row_vectors()
    }

    /// `χ = k^⊤ b`.
    pub fn chi_of(&self, b: &[Scalar]) -> Result<Vector> {
        self.check_b(b)?;
        self.gale().transpose().mul_vec(b)
    }

    /// Minimum-norm preimage `b = k (k^⊤k)^{-1} χ` of a character.
    pub fn preimage(&self, chi: &[Scalar]) -> Result<Vector> {
        if chi.len() != self.corank() {
            return Err(Error::DimensionMismatch(format!(
                "character of length {} for n − d = {}",
                chi.len(),
                self.corank()
            )));
        }
        let p = self.preimage_matrix();
        p.mul_vec(chi)
    }

    /// Every `d`-subset `J` with `h_J` invertible, in lexicographic order,
    /// paired with `(h_J^⊤)^{-1}`, so that the point tight at `J` for
    /// parameter `b` is `−(h_J^⊤)^{-1} b_J`.
    pub fn bases(&self) -> &[(IndexSet, Matrix)] {
        self.bases.get_or_init(|| {
            let mut out = Vec::new();
            for subset in (0..self.len()).combinations(self.d) {
                let set: IndexSet = subset.iter().copied().collect();
                if let Ok(inv) = self.restrict(set).transpose().inverse() {
                    out.push((set, inv));
                }
            }
            out.sort_by(|a, b| a.0.cmp(&b.0));
            out
        })
    }

    /// Extreme rays of `{x : ⟨x, h(e_i)⟩ ≥ 0 for all i}`, the recession cone
    /// shared by every `P_b`. Empty exactly when the columns positively span.
    pub fn dual_cone_rays(&self) -> &[Vector] {
        self.dual_rays.get_or_init(|| crate::cone::extreme_rays(&self.columns, self.d))
    }

    /// `k (k^⊤k)^{-1}`, an `n × (n − d)` matrix.
    fn preimage_matrix(&self) -> &Matrix {
        self.preimage.get_or_init(|| {
            let k = self.gale();
            let gram = k.transpose().mul(k).expect("conformable");
            if gram.rows() == 0 {
                return Matrix::zeros(self.len(), 0);
            }
            k.mul(&gram.inverse().expect("Gram matrix of a basis is invertible"))
                .expect("conformable")
        })
    }

    /// Coordinates `y` with `k y = c` for a vector `c ∈ ker h`, so that
    /// `⟨c, b⟩ = ⟨y, k^⊤ b⟩` for every `b`.
    pub fn kernel_coordinates(&self, c: &[Scalar]) -> Vector {
        debug_assert!(self.matrix().mul_vec(c).map(|v| super::is_zero(&v)).unwrap_or(false));
        self.preimage_matrix().transpose().mul_vec(c).expect("length n")
    }

    pub fn check_b(&self, b: &[Scalar]) -> Result<()> {
        if b.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "parameter of length {} for n = {}",
                b.len(),
                self.len()
            )));
        }
        Ok(())
    }

    /// `⟨x, h(e_i)⟩ + b_i`, the slack of constraint `i` at `x`.
    pub fn slack(&self, x: &[Scalar], b: &[Scalar], i: usize) -> Scalar {
        dot(x, &self.columns[i]) + &b[i]
    }

    /// `h^⊤ y`. Shifting `b` by `−h^⊤ y` translates `P_b` by `y`.
    pub fn transpose_apply(&self, y: &[Scalar]) -> Vector {
        self.columns.iter().map(|c| dot(c, y)).collect()
    }
}

impl PartialEq for Calibration {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns && self.virtual_set == other.virtual_set
    }
}

impl Eq for Calibration {}

impl fmt::Debug for Calibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<String> = self
            .columns
            .iter()
            .map(|c| format!("({})", c.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "Calibration(d={}, [{}], virtual={})", self.d, cols.join(", "), self.virtual_set)
    }
}

/// The Gale matrix of `c`; see [`Calibration::gale`].
pub fn gale_transform(c: &Calibration) -> Matrix {
    c.gale().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn cal(cols: &[&[&str]]) -> Calibration {
        Calibration::new(cols.iter().map(|c| c.iter().map(|t| s(t)).collect()).collect(), IndexSet::empty())
            .unwrap()
    }

    #[test]
    fn p2_kernel_is_diagonal() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        let k = gale_transform(&c);
        assert_eq!(k.cols(), 1);
        assert_eq!(k.column(0), vec![s("1"), s("1"), s("1")]);
    }

    #[test]
    fn sqrt2_kernel_matches_printed_basis() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        let k = c.gale();
        assert!(c.matrix().mul(k).unwrap().is_zero());
        assert_eq!(k.rank(), 2);
        assert_eq!(k.column(0), vec![s("sqrt2"), s("1"), s("1"), s("0")]);
        assert_eq!(k.column(1), vec![s("1"), s("sqrt2"), s("0"), s("1")]);
    }

    #[test]
    fn identity_has_empty_kernel() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(c.gale().cols(), 0);
        assert_eq!(c.preimage(&[]).unwrap(), vec![s("0"), s("0")]);
    }

    #[test]
    fn preimage_is_a_section_of_chi() {
        let c = cal(&[&["1", "0"], &["0", "1"], &["-sqrt2", "-1"], &["-1", "-sqrt2"]]);
        let chi = vec![s("1"), s("2/3+sqrt2")];
        let b = c.preimage(&chi).unwrap();
        assert_eq!(c.chi_of(&b).unwrap(), chi);
    }

    #[test]
    fn rejects_bad_calibrations() {
        assert!(Calibration::from_i64(&[&[1, 0], &[2, 0]]).is_err());
        assert!(Calibration::from_i64(&[&[1, 0], &[0, 0], &[0, 1]]).is_err());
        let mixed = Calibration::new(
            vec![vec![s("sqrt2"), s("0")], vec![s("0"), s("sqrt3")]],
            IndexSet::empty(),
        );
        assert!(mixed.is_err());
    }

    #[test]
    fn geometric_and_standard_flags() {
        let c = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap();
        assert!(c.is_geometric());
        assert!(c.is_standard());
        let d = Calibration::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[2, 0]]).unwrap();
        assert!(!d.is_geometric());
        let v = c.with_virtual(IndexSet::from_one_based(&[1])).unwrap();
        assert!(!v.is_standard());
    }
}
