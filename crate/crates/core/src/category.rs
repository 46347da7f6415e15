//! The concrete dagger category: morphisms between finite-dimensional
//! ℚ(i)-inner-product spaces.
//!
//! Objects are dimensions: the object `n` is ℚ(i)ⁿ with the standard
//! sesquilinear form `⟨x, y⟩ = Σ conj(xᵢ)·yᵢ`, and a morphism is an exact
//! `cod × dom` matrix. The dagger is the conjugate transpose, biproducts are
//! block sums, kernels/equalisers/pullbacks come from exact nullspace
//! computations, and every morphism factors through its image.
//!
//! Isometries (morphisms with `m† ∘ m = id`) generally need irrational
//! entries, so subobject-valued operations return canonical projections (see
//! [`crate::clsub`]) rather than representing isometries, and [`factorize`]
//! returns the projection-level coimage/middle/image triple. This keeps the
//! entire model inside ℚ(i) with exact equality.
//!
//! [`factorize`]: Morphism::factorize

use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::clsub::Subobject;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// An arrow of the category: an exact matrix with `cod` rows and `dom`
/// columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Morphism {
    mat: Matrix<Scalar>,
}

/// How [`Morphism::classify`] reports a morphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MorphismFlags {
    pub mono: bool,
    pub epi: bool,
    pub dagger_mono: bool,
    pub dagger_epi: bool,
    pub dagger_iso: bool,
}

impl Morphism {
    pub fn new(mat: Matrix<Scalar>) -> Self {
        Morphism { mat }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        Morphism { mat: Matrix::from_rows(rows) }
    }

    /// The morphism `n → 1` with a single row, or `1 → n` via [`Self::dagger`].
    pub fn row_vector(entries: Vec<Scalar>) -> Self {
        Morphism { mat: Matrix::new(1, entries.len(), entries) }
    }

    pub fn column_vector(entries: Vec<Scalar>) -> Self {
        Morphism { mat: Matrix::column_vector(entries) }
    }

    pub fn identity(n: usize) -> Self {
        Morphism { mat: Matrix::identity(n) }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        Morphism { mat: Matrix::zeros(cod, dom) }
    }

    pub fn dom(&self) -> usize {
        self.mat.cols()
    }

    pub fn cod(&self) -> usize {
        self.mat.rows()
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    /// Composition `self ∘ inner`; defined when `dom(self) = cod(inner)`.
    pub fn compose(&self, inner: &Morphism) -> Morphism {
        assert_eq!(self.dom(), inner.cod(), "compose: inner dimensions must agree");
        Morphism { mat: &self.mat * &inner.mat }
    }

    /// The dagger: swaps domain and codomain, conjugate-transposes the matrix.
    pub fn dagger(&self) -> Morphism {
        Morphism { mat: self.mat.dagger() }
    }

    /// Scalar action `s • self` (entrywise). Natural: `(s • g) ∘ f = g ∘ (s • f)`,
    /// and for morphisms into the unit object it agrees with postcomposition.
    pub fn scale(&self, s: &Scalar) -> Morphism {
        Morphism { mat: self.mat.scale(s) }
    }

    /// Monoidal product: the Kronecker product of the underlying matrices.
    pub fn tensor(&self, other: &Morphism) -> Morphism {
        Morphism { mat: self.mat.kron(&other.mat) }
    }

    /// Decides mono/epi/†-mono/†-epi/†-iso, all exactly.
    pub fn classify(&self) -> MorphismFlags {
        let rank = self.mat.rank();
        let dg = self.mat.dagger();
        let dagger_mono = &dg * &self.mat == Matrix::identity(self.dom());
        let dagger_epi = &self.mat * &dg == Matrix::identity(self.cod());
        MorphismFlags {
            mono: rank == self.dom(),
            epi: rank == self.cod(),
            dagger_mono,
            dagger_epi,
            dagger_iso: dagger_mono && dagger_epi,
        }
    }

    /// The kernel as a subobject of the domain: the largest subspace the
    /// morphism annihilates.
    pub fn kernel(&self) -> Subobject {
        Subobject::from_col_space(self.dom(), &self.mat.nullspace_basis())
    }

    /// The cokernel, carried as the subobject `ker(self†)` of the codomain
    /// (the orthocomplement of the image).
    pub fn cokernel(&self) -> Subobject {
        self.dagger().kernel()
    }

    /// The image: the smallest subobject of the codomain the morphism factors
    /// through; concretely the column space.
    pub fn image(&self) -> Subobject {
        Subobject::from_col_space(self.cod(), &self.mat)
    }

    /// Factors the morphism through its coimage and image.
    ///
    /// The coimage is the orthocomplement of the kernel, the image is the
    /// column space, and `middle` is the invertible map induced between the
    /// chosen (pivot-column) bases of the two subspaces. Only the subobject
    /// endpoints are canonical; the middle map depends on the bases, which is
    /// why they are carried alongside it.
    pub fn factorize(&self) -> FactorTriple {
        let coimage = self.kernel().perp();
        let image = self.image();
        let coimage_basis = coimage.basis_morphism();
        let image_basis = image.basis_morphism();
        let mapped = self.compose(&coimage_basis);
        let middle = image_basis
            .mat
            .solve(&mapped.mat)
            .expect("a morphism maps its coimage into its image");
        FactorTriple {
            coimage,
            coimage_basis,
            middle: Morphism::new(middle),
            image_basis,
            image,
        }
    }
}

impl Add for &Morphism {
    type Output = Morphism;
    fn add(self, rhs: &Morphism) -> Morphism {
        Morphism { mat: &self.mat + &rhs.mat }
    }
}

impl Sub for &Morphism {
    type Output = Morphism;
    fn sub(self, rhs: &Morphism) -> Morphism {
        Morphism { mat: &self.mat - &rhs.mat }
    }
}

impl std::fmt::Display for Morphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.mat)
    }
}

/// The biproduct of two objects, with its coordinate inclusions and
/// projections. Projections are the daggers of the inclusions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Biproduct {
    pub inj_left: Morphism,
    pub inj_right: Morphism,
    pub proj_left: Morphism,
    pub proj_right: Morphism,
}

pub fn biproduct(left_dim: usize, right_dim: usize) -> Biproduct {
    let total = left_dim + right_dim;
    let inj_left = Morphism::new(Matrix::from_fn(total, left_dim, |r, c| {
        if r == c { crate::scalar::int(1) } else { Scalar::zero() }
    }));
    let inj_right = Morphism::new(Matrix::from_fn(total, right_dim, |r, c| {
        if r == c + left_dim { crate::scalar::int(1) } else { Scalar::zero() }
    }));
    let proj_left = inj_left.dagger();
    let proj_right = inj_right.dagger();
    Biproduct { inj_left, inj_right, proj_left, proj_right }
}

/// The equaliser of a parallel pair, as a subobject of the common domain:
/// the largest subspace where the two morphisms agree. Computed as the
/// kernel of the difference (the category is enriched over abelian groups).
pub fn equalizer(f: &Morphism, g: &Morphism) -> Subobject {
    assert_eq!(
        (f.dom(), f.cod()),
        (g.dom(), g.cod()),
        "equalizer: morphisms must be parallel"
    );
    (f - g).kernel()
}

/// A pullback square for the cospan `left : X → Z ← Y : right`.
///
/// The apex is the solution space of `left·x = right·y` inside the direct sum
/// of the domains, with its basis taken in nullspace order, so rebuilding the
/// same square is deterministic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PullbackSquare {
    pub left: Morphism,
    pub right: Morphism,
    pub leg_left: Morphism,
    pub leg_right: Morphism,
}

impl PullbackSquare {
    pub fn apex_dim(&self) -> usize {
        self.leg_left.dom()
    }

    pub fn commutes(&self) -> bool {
        self.left.compose(&self.leg_left) == self.right.compose(&self.leg_right)
    }

    /// The unique mediating morphism for a cone `(to_left, to_right)`, or
    /// `None` if the pair does not commute with the cospan.
    pub fn mediate(&self, to_left: &Morphism, to_right: &Morphism) -> Option<Morphism> {
        assert_eq!(to_left.dom(), to_right.dom(), "mediate: cone legs need a common domain");
        assert_eq!(to_left.cod(), self.leg_left.cod(), "mediate: left leg lands in the wrong object");
        assert_eq!(to_right.cod(), self.leg_right.cod(), "mediate: right leg lands in the wrong object");
        if self.left.compose(to_left) != self.right.compose(to_right) {
            return None;
        }
        let apex_basis = self.leg_left.mat.vstack(&self.leg_right.mat);
        let stacked = to_left.mat.vstack(&to_right.mat);
        apex_basis.solve(&stacked).map(Morphism::new)
    }
}

pub fn pullback(left: &Morphism, right: &Morphism) -> PullbackSquare {
    assert_eq!(left.cod(), right.cod(), "pullback: morphisms must form a cospan");
    let block = left.mat.hstack(&(-&right.mat));
    let basis = block.nullspace_basis();
    let leg_left = Morphism::new(basis.row_block(0, left.dom()));
    let leg_right = Morphism::new(basis.row_block(left.dom(), right.dom()));
    PullbackSquare { left: left.clone(), right: right.clone(), leg_left, leg_right }
}

/// The projection-level factorisation of a morphism: coimage and image
/// subobjects, chosen bases for both, and the invertible middle map between
/// the coordinate spaces. `image_basis ∘ middle ∘ coimage_coords`
/// reconstructs the original morphism exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorTriple {
    pub coimage: Subobject,
    pub coimage_basis: Morphism,
    pub middle: Morphism,
    pub image_basis: Morphism,
    pub image: Subobject,
}

impl FactorTriple {
    /// Coordinates of the orthogonal projection onto the coimage, in the
    /// carried basis.
    pub fn coimage_coords(&self) -> Morphism {
        let basis = &self.coimage_basis.mat;
        let gram = &basis.dagger() * basis;
        let inv = gram.inverse().expect("basis columns are independent");
        Morphism::new(&inv * &basis.dagger())
    }

    pub fn reconstruct(&self) -> Morphism {
        self.image_basis.compose(&self.middle).compose(&self.coimage_coords())
    }

    /// The same factorisation expressed in different bases of the same two
    /// subspaces; `on_coimage` and `on_image` must be invertible coordinate
    /// changes. The subobjects are recomputed from the new bases, so equality
    /// with the originals is a meaningful check, not a tautology.
    pub fn change_bases(&self, on_coimage: &Morphism, on_image: &Morphism) -> FactorTriple {
        let r = self.middle.dom();
        assert_eq!((on_coimage.dom(), on_coimage.cod()), (r, r), "coimage basis change has the wrong shape");
        assert_eq!((on_image.dom(), on_image.cod()), (self.middle.cod(), self.middle.cod()), "image basis change has the wrong shape");
        let inv = on_image.mat.inverse().expect("basis change must be invertible");
        assert!(on_coimage.mat.inverse().is_some(), "basis change must be invertible");
        let coimage_basis = self.coimage_basis.compose(on_coimage);
        let image_basis = self.image_basis.compose(on_image);
        let middle = Morphism::new(&(&inv * &self.middle.mat) * &on_coimage.mat);
        FactorTriple {
            coimage: Subobject::from_col_space(coimage_basis.cod(), &coimage_basis.mat),
            coimage_basis,
            middle,
            image_basis: image_basis.clone(),
            image: Subobject::from_col_space(image_basis.cod(), &image_basis.mat),
        }
    }
}
