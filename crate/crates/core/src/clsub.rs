//! The lattice of closed subobjects of each object.
//!
//! A closed subobject of the object `n` is carried canonically as its
//! orthogonal projection: an `n × n` matrix `P` with `P·P = P = P†`. This
//! representation is lossless (subobjects and projections are order
//! isomorphic) and stays inside ℚ(i), so subobject equality is structural
//! matrix equality and every lattice law below is checked with tolerance
//! zero.
//!
//! The order is `M ≤ N  iff  M.proj · N.proj = M.proj`; meet is subspace
//! intersection, join is the image of the span sum, and the orthocomplement
//! of `P` is `I − P`. In finite dimension every subobject is closed, so the
//! reflection of arbitrary subobjects into closed ones collapses to the
//! closure operation [`Subobject::closure`] (the projection onto the column
//! space of a representing mono).

use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::category::Morphism;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A closed subobject: an ambient dimension together with the canonical
/// projection onto the subspace.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subobject {
    proj: Matrix<Scalar>,
}

/// Rejected constructions of subobjects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubobjectError {
    #[error("projection matrix must be square")]
    NotSquare,
    #[error("matrix is not idempotent, so it is no projection")]
    NotIdempotent,
    #[error("matrix is not self-adjoint, so it is no orthogonal projection")]
    NotSelfAdjoint,
    #[error("columns are linearly dependent: not a mono")]
    NotMono,
    #[error("morphism is not an isometry (its dagger is no retraction)")]
    NotIsometry,
}

impl Subobject {
    /// The whole object.
    pub fn top(ambient: usize) -> Self {
        Subobject { proj: Matrix::identity(ambient) }
    }

    /// The zero subobject.
    pub fn bottom(ambient: usize) -> Self {
        Subobject { proj: Matrix::zeros(ambient, ambient) }
    }

    /// Validates `P·P = P = P†` and wraps the matrix.
    pub fn from_projection(proj: Matrix<Scalar>) -> Result<Self, SubobjectError> {
        if !proj.is_square() {
            return Err(SubobjectError::NotSquare);
        }
        if &proj * &proj != proj {
            return Err(SubobjectError::NotIdempotent);
        }
        if proj.dagger() != proj {
            return Err(SubobjectError::NotSelfAdjoint);
        }
        Ok(Subobject { proj })
    }

    /// The projection onto the column space of `cols`. Dependent and zero
    /// columns are pruned to an independent subset first, so any spanning
    /// set is accepted.
    pub fn from_col_space(ambient: usize, cols: &Matrix<Scalar>) -> Self {
        assert_eq!(cols.rows(), ambient, "spanning vectors must live in the ambient space");
        let basis = cols.select_columns(&cols.rref().pivots);
        // P = A (A†A)⁻¹ A†; the Gram matrix is invertible because the form
        // x ↦ x†x is positive definite over ℚ(i)
        let gram = &basis.dagger() * &basis;
        let inv = gram.inverse().expect("independent columns have an invertible Gram matrix");
        let proj = &(&basis * &inv) * &basis.dagger();
        debug_assert_eq!(&(&proj * &proj), &proj);
        debug_assert_eq!(proj.dagger(), proj);
        Subobject { proj }
    }

    /// The projection onto the span of the given vectors.
    pub fn from_span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vectors must live in the ambient space");
        }
        let cols = Matrix::from_fn(ambient, vectors.len(), |r, c| vectors[c][r].clone());
        Subobject::from_col_space(ambient, &cols)
    }

    /// The closure of an arbitrary mono: the subobject spanned by its
    /// columns. Errors on rank-deficient input, which represents no mono.
    pub fn closure(ambient: usize, mono_cols: &Matrix<Scalar>) -> Result<Self, SubobjectError> {
        assert_eq!(mono_cols.rows(), ambient, "columns must live in the ambient space");
        if mono_cols.rank() < mono_cols.cols() {
            return Err(SubobjectError::NotMono);
        }
        Ok(Subobject::from_col_space(ambient, mono_cols))
    }

    /// The subobject represented by an isometry `m`, namely `m ∘ m†`.
    pub fn from_isometry(m: &Morphism) -> Result<Self, SubobjectError> {
        if !m.classify().dagger_mono {
            return Err(SubobjectError::NotIsometry);
        }
        Ok(Subobject { proj: m.compose(&m.dagger()).matrix().clone() })
    }

    pub fn ambient(&self) -> usize {
        self.proj.rows()
    }

    pub fn projection(&self) -> &Matrix<Scalar> {
        &self.proj
    }

    /// The dimension of the subspace. Projections have rational trace equal
    /// to their rank, so this is a trace read-off.
    pub fn rank(&self) -> usize {
        let t = self.proj.trace();
        debug_assert!(t.im.is_zero() && t.re.denom().is_one());
        let rank = t.re.numer().to_usize().expect("projection trace is a small nonnegative integer");
        debug_assert_eq!(rank, self.proj.rank());
        rank
    }

    pub fn is_top(&self) -> bool {
        self.proj == Matrix::identity(self.ambient())
    }

    pub fn is_bottom(&self) -> bool {
        self.proj.is_zero()
    }

    /// A deterministically chosen basis of the subspace: the pivot columns
    /// of the projection. (Its column count is the subobject's rank; as the
    /// domain of the representing mono, this is also the comprehension of
    /// the subobject.)
    pub fn basis(&self) -> Matrix<Scalar> {
        self.proj.select_columns(&self.proj.rref().pivots)
    }

    /// The chosen basis packaged as a mono into the ambient object.
    pub fn basis_morphism(&self) -> Morphism {
        Morphism::new(self.basis())
    }

    /// Whether every column of `cols` lies in the subspace.
    pub fn contains_cols(&self, cols: &Matrix<Scalar>) -> bool {
        assert_eq!(cols.rows(), self.ambient(), "columns must live in the ambient space");
        &(&self.proj * cols) == cols
    }

    /// The partial order: `self ≤ other` iff `self.proj · other.proj = self.proj`.
    pub fn leq(&self, other: &Subobject) -> bool {
        assert_eq!(self.ambient(), other.ambient(), "subobjects must share the ambient object");
        (&self.proj * &other.proj) == self.proj
    }

    /// Greatest lower bound: the projection onto the intersection of the two
    /// subspaces, computed from the nullspace of the stacked bases.
    pub fn meet(&self, other: &Subobject) -> Subobject {
        assert_eq!(self.ambient(), other.ambient(), "subobjects must share the ambient object");
        let a = self.basis();
        let b = other.basis();
        // solutions of a·x = b·y; the a·x parts span the intersection
        let null = a.hstack(&(-&b)).nullspace_basis();
        let x_part = null.row_block(0, a.cols());
        Subobject::from_col_space(self.ambient(), &(&a * &x_part))
    }

    /// Least upper bound: the image of the span sum (the cotuple of the two
    /// representing monos).
    pub fn join(&self, other: &Subobject) -> Subobject {
        assert_eq!(self.ambient(), other.ambient(), "subobjects must share the ambient object");
        Subobject::from_col_space(self.ambient(), &self.basis().hstack(&other.basis()))
    }

    /// The orthocomplement `I − P`: order-reversing and involutive.
    pub fn perp(&self) -> Subobject {
        Subobject { proj: &Matrix::identity(self.ambient()) - &self.proj }
    }
}

/// The subobject of `dom(f)` carried onto `target` by `f`:
/// `{x : f(x) ∈ range(target)}`, the pullback of `target` along `f`.
/// Meet- and top-preserving in `target`.
pub fn preimage(f: &Morphism, target: &Subobject) -> Subobject {
    assert_eq!(target.ambient(), f.cod(), "preimage: subobject must live in the codomain");
    let off_target = &target.perp().proj * f.matrix();
    Subobject::from_col_space(f.dom(), &off_target.nullspace_basis())
}

impl std::fmt::Display for Subobject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.proj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{imag, int, ratio};

    fn proj(rows: Vec<Vec<Scalar>>) -> Subobject {
        Subobject::from_projection(Matrix::from_rows(rows)).unwrap()
    }

    fn half_ones() -> Subobject {
        proj(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(1, 2), ratio(1, 2)],
        ])
    }

    #[test]
    fn from_span_examples() {
        assert_eq!(
            Subobject::from_span(2, &[vec![int(1), int(0)]]),
            proj(vec![vec![int(1), int(0)], vec![int(0), int(0)]])
        );
        assert_eq!(Subobject::from_span(2, &[vec![int(1), int(1)]]), half_ones());
        // A(A†A)⁻¹A† with A = (1, i)ᵀ: A†A = [2]
        assert_eq!(
            Subobject::from_span(2, &[vec![int(1), imag(1, 1)]]),
            proj(vec![
                vec![ratio(1, 2), imag(-1, 2)],
                vec![imag(1, 2), ratio(1, 2)],
            ])
        );
    }

    #[test]
    fn from_span_prunes_dependent_vectors() {
        let redundant = Subobject::from_span(
            2,
            &[
                vec![int(0), int(0)],
                vec![int(1), int(1)],
                vec![int(2), int(2)],
            ],
        );
        assert_eq!(redundant, half_ones());
        assert_eq!(redundant.rank(), 1);
    }

    #[test]
    fn order_examples() {
        let e1 = Subobject::from_span(3, &[vec![int(1), int(0), int(0)]]);
        let e12 = Subobject::from_span(
            3,
            &[
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
            ],
        );
        assert!(Subobject::bottom(3).leq(&e1));
        assert!(e1.leq(&e12));
        assert!(!e12.leq(&e1));
        let diag = Subobject::from_span(2, &[vec![int(1), int(1)]]);
        let e1 = Subobject::from_span(2, &[vec![int(1), int(0)]]);
        assert!(!diag.leq(&e1));
    }

    #[test]
    fn meet_examples() {
        let m = half_ones();
        assert_eq!(m.meet(&Subobject::top(2)), m);
        assert_eq!(m.meet(&m), m);
        let e1 = Subobject::from_span(2, &[vec![int(1), int(0)]]);
        assert_eq!(e1.meet(&m), Subobject::bottom(2));
    }

    #[test]
    fn join_examples() {
        let m = half_ones();
        assert_eq!(m.join(&Subobject::bottom(2)), m);
        assert_eq!(m.join(&m), m);
        let e1 = Subobject::from_span(2, &[vec![int(1), int(0)]]);
        assert_eq!(e1.join(&m), Subobject::top(2));
    }

    #[test]
    fn perp_examples() {
        assert_eq!(
            proj(vec![vec![int(1), int(0)], vec![int(0), int(0)]]).perp(),
            proj(vec![vec![int(0), int(0)], vec![int(0), int(1)]])
        );
        assert_eq!(Subobject::top(2).perp(), Subobject::bottom(2));
        assert_eq!(
            Subobject::from_span(2, &[vec![int(1), imag(1, 1)]]).perp(),
            proj(vec![
                vec![ratio(1, 2), imag(1, 2)],
                vec![imag(-1, 2), ratio(1, 2)],
            ])
        );
    }

    #[test]
    fn closure_examples() {
        let line = Subobject::closure(2, &Matrix::column_vector(vec![int(1), int(1)])).unwrap();
        assert_eq!(line, half_ones());
        assert_eq!(
            Subobject::closure(2, &Matrix::identity(2)).unwrap(),
            Subobject::top(2)
        );
        // idempotence through any basis of the range
        let again = Subobject::closure(2, &line.basis()).unwrap();
        assert_eq!(again, line);
        // rank-deficient input is no mono
        let dependent = Matrix::from_rows(vec![vec![int(1), int(2)], vec![int(1), int(2)]]);
        assert_eq!(Subobject::closure(2, &dependent), Err(SubobjectError::NotMono));
    }

    #[test]
    fn preimage_examples() {
        let n = half_ones();
        assert_eq!(preimage(&Morphism::identity(2), &n), n);

        let f = Morphism::row_vector(vec![int(1), int(0)]);
        assert_eq!(preimage(&f, &Subobject::top(1)), Subobject::top(2));

        // complement does not commute with preimage: the classic witness
        let m = Subobject::bottom(1);
        assert_eq!(preimage(&f, &m.perp()), Subobject::top(2));
        assert_eq!(
            preimage(&f, &m).perp(),
            proj(vec![vec![int(1), int(0)], vec![int(0), int(0)]])
        );
        assert_ne!(preimage(&f, &m.perp()), preimage(&f, &m).perp());
    }

    #[test]
    fn from_isometry_examples() {
        let b = crate::category::biproduct(1, 1);
        assert_eq!(
            Subobject::from_isometry(&b.inj_left).unwrap(),
            proj(vec![vec![int(1), int(0)], vec![int(0), int(0)]])
        );
        assert_eq!(
            Subobject::from_isometry(&Morphism::identity(2)).unwrap(),
            Subobject::top(2)
        );
        let scaled = Morphism::column_vector(vec![int(0), imag(1, 1)]);
        assert_eq!(
            Subobject::from_isometry(&scaled).unwrap(),
            proj(vec![vec![int(0), int(0)], vec![int(0), int(1)]])
        );
        let not_isometry = Morphism::column_vector(vec![int(1), int(1)]);
        assert_eq!(
            Subobject::from_isometry(&not_isometry),
            Err(SubobjectError::NotIsometry)
        );
    }

    #[test]
    fn isometry_order_correspondence() {
        // m ≤ n as isometries iff mm† ≤ nn† as subobjects
        let b = crate::category::biproduct(1, 1);
        let m = Subobject::from_isometry(&b.inj_left).unwrap();
        let n = Subobject::from_isometry(&Morphism::identity(2)).unwrap();
        assert!(m.leq(&n));
        assert!(!n.leq(&m));
    }

    #[test]
    fn projection_validation() {
        let not_idem = Matrix::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]);
        assert_eq!(
            Subobject::from_projection(not_idem),
            Err(SubobjectError::NotIdempotent)
        );
        let not_selfadj = Matrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 2)],
            vec![ratio(-1, 2), ratio(1, 2)],
        ]);
        assert!(Subobject::from_projection(not_selfadj).is_err());
        assert_eq!(
            Subobject::from_projection(Matrix::zeros(2, 3)),
            Err(SubobjectError::NotSquare)
        );
    }

    #[test]
    fn rank_is_trace() {
        let m = Subobject::from_span(
            3,
            &[vec![int(1), int(1), int(0)], vec![int(0), int(0), imag(1, 1)]],
        );
        assert_eq!(m.rank(), 2);
        assert_eq!(Subobject::top(4).rank(), 4);
        assert_eq!(Subobject::bottom(4).rank(), 0);
    }

    #[test]
    #[should_panic(expected = "ambient")]
    fn ambient_mismatch_panics() {
        let _ = Subobject::top(2).meet(&Subobject::top(3));
    }
}
