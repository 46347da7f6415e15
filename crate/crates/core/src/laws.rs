//! The existential quantifier along a morphism, verifiers for the laws the
//! subobject lattices satisfy, and executable witnesses for the laws they
//! fail.
//!
//! The verifiers return booleans instead of asserting so that a test harness
//! can also feed deliberately broken lattice implementations. Every
//! comparison is exact; the theorems hold with tolerance zero on all inputs
//! satisfying the preconditions.

use num_traits::Zero;

use crate::category::{Morphism, PullbackSquare};
use crate::clsub::{preimage, Subobject};
use crate::matrix::Matrix;
use crate::scalar::{imag, int, Scalar};

/// Direct image: the subobject of `cod(f)` spanned by `f(range M)`.
/// Monotone in `M`, functorial in `f`, and left adjoint to [`preimage`].
pub fn exists_along(f: &Morphism, sub: &Subobject) -> Subobject {
    assert_eq!(sub.ambient(), f.dom(), "exists_along: subobject must live in the domain");
    Subobject::from_col_space(f.cod(), &(f.matrix() * &sub.basis()))
}

/// The adjunction `∃_f ⊣ f⁻¹`: whether `∃_f M ≤ N` and `M ≤ f⁻¹ N` agree.
/// A theorem, so this returns true on every well-formed input.
pub fn check_exists_adjunction(f: &Morphism, m: &Subobject, n: &Subobject) -> bool {
    assert_eq!(m.ambient(), f.dom(), "m must live in the domain");
    assert_eq!(n.ambient(), f.cod(), "n must live in the codomain");
    exists_along(f, m).leq(n) == m.leq(&preimage(f, n))
}

/// The Beck-Chevalley condition for a pullback square: pulling back a direct
/// image along the cospan equals the direct image of the pullback along the
/// legs. Holds for every genuine pullback square.
pub fn check_beck_chevalley(square: &PullbackSquare, n: &Subobject) -> bool {
    assert_eq!(n.ambient(), square.right.dom(), "n must live in the domain of the right morphism");
    let via_base = preimage(&square.left, &exists_along(&square.right, n));
    let via_apex = exists_along(&square.leg_left, &preimage(&square.leg_right, n));
    via_base == via_apex
}

/// The Frobenius identity `∃_f(M ∧ f⁻¹N) = ∃_f M ∧ N`. Holds always.
pub fn check_frobenius(f: &Morphism, m: &Subobject, n: &Subobject) -> bool {
    assert_eq!(m.ambient(), f.dom(), "m must live in the domain");
    assert_eq!(n.ambient(), f.cod(), "n must live in the codomain");
    exists_along(f, &m.meet(&preimage(f, n))) == exists_along(f, m).meet(n)
}

/// The orthomodular law: `M ∨ (M⊥ ∧ N) = N` whenever `M ≤ N`. Vacuously true
/// when the pair is not nested.
pub fn check_orthomodular(m: &Subobject, n: &Subobject) -> bool {
    assert_eq!(m.ambient(), n.ambient(), "subobjects must share the ambient object");
    if !m.leq(n) {
        return true;
    }
    m.join(&m.perp().meet(n)) == *n
}

/// The adjunction between direct images along `f` and `f†` through the
/// orthocomplement: `N ≤ (∃_f M)⊥  ⇔  M ≤ (∃_{f†} N)⊥`. Holds always.
pub fn check_perp_adjunction(f: &Morphism, m: &Subobject, n: &Subobject) -> bool {
    assert_eq!(m.ambient(), f.dom(), "m must live in the domain");
    assert_eq!(n.ambient(), f.cod(), "n must live in the codomain");
    n.leq(&exists_along(f, m).perp()) == m.leq(&exists_along(&f.dagger(), n).perp())
}

/// A triple of subobjects witnessing the failure of distributivity, together
/// with the two unequal sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistributivityWitness {
    pub first: Subobject,
    pub second: Subobject,
    pub third: Subobject,
    /// `first ∧ (second ∨ third)`
    pub lhs: Subobject,
    /// `(first ∧ second) ∨ (first ∧ third)`
    pub rhs: Subobject,
}

/// Spans of all nonzero vectors with entries in {0, ±1, ±i}, one subobject
/// per line, in a fixed enumeration order.
pub fn unit_lines(dim: usize) -> Vec<Subobject> {
    let palette = [Scalar::zero(), int(1), int(-1), imag(1, 1), imag(-1, 1)];
    let mut lines: Vec<Subobject> = Vec::new();
    let mut digits = vec![0usize; dim];
    loop {
        if digits.iter().any(|&d| d != 0) {
            let vector: Vec<Scalar> = digits.iter().map(|&d| palette[d].clone()).collect();
            let line = Subobject::from_span(dim, &[vector]);
            if !lines.contains(&line) {
                lines.push(line);
            }
        }
        // odometer over the palette, most significant digit first
        let mut k = dim;
        loop {
            if k == 0 {
                return lines;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < palette.len() {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// Searches spans with entries in {0, ±1, ±i} for a triple violating
/// `M ∧ (N ∨ P) = (M ∧ N) ∨ (M ∧ P)`. Lattices of ambient dimension < 2 are
/// chains and hence distributive, so the search returns `None` there; for
/// every dimension ≥ 2 a witness exists and the first one in enumeration
/// order is returned.
pub fn find_distributivity_counterexample(dim: usize) -> Option<DistributivityWitness> {
    if dim < 2 {
        return None;
    }
    let lines = unit_lines(dim);
    for first in &lines {
        for second in &lines {
            for third in &lines {
                let lhs = first.meet(&second.join(third));
                let rhs = first.meet(second).join(&first.meet(third));
                if lhs != rhs {
                    return Some(DistributivityWitness {
                        first: first.clone(),
                        second: second.clone(),
                        third: third.clone(),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    None
}

/// A scalar `s` with `g = s ∘ f`, and whether it is the only one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScalarFactor {
    pub scalar: Scalar,
    pub unique: bool,
}

/// For functionals `f, g : X → 1`: if `ker(f) ≤ ker(g)`, the scalar `s` with
/// `g = s ∘ f` (unique unless `f = 0`, where `s = 0` is returned by
/// convention); otherwise `None`.
pub fn solve_scalar_factor(f: &Morphism, g: &Morphism) -> Option<ScalarFactor> {
    assert_eq!(f.cod(), 1, "solve_scalar_factor: f must land in the unit object");
    assert_eq!(g.cod(), 1, "solve_scalar_factor: g must land in the unit object");
    assert_eq!(f.dom(), g.dom(), "solve_scalar_factor: functionals need a common domain");
    if !f.kernel().leq(&g.kernel()) {
        return None;
    }
    if f.is_zero() {
        // ker(f) is everything, so ker(g) is too and g = 0
        return Some(ScalarFactor { scalar: Scalar::zero(), unique: false });
    }
    let j = (0..f.dom()).find(|&j| !f.matrix().entry(0, j).is_zero()).unwrap();
    let s = g.matrix().entry(0, j).clone() / f.matrix().entry(0, j).clone();
    debug_assert_eq!(g, &f.scale(&s), "functionals with nested kernels are proportional");
    Some(ScalarFactor { scalar: s, unique: true })
}

/// Recovers `s` from `g = s • f†`, if `g` is such a scalar multiple; `None`
/// otherwise. For `f = 0` the convention is `s = 0` (and `g` must be zero).
pub fn recover_scalar(f: &Morphism, g: &Morphism) -> Option<Scalar> {
    assert_eq!(g.dom(), f.cod(), "recover_scalar: g must have the transposed profile of f");
    assert_eq!(g.cod(), f.dom(), "recover_scalar: g must have the transposed profile of f");
    let fd = f.dagger();
    if fd.is_zero() {
        return g.is_zero().then(Scalar::zero);
    }
    let (r, c) = (0..fd.cod())
        .flat_map(|r| (0..fd.dom()).map(move |c| (r, c)))
        .find(|&(r, c)| !fd.matrix().entry(r, c).is_zero())
        .unwrap();
    let s = g.matrix().entry(r, c).clone() / fd.matrix().entry(r, c).clone();
    (g == &fd.scale(&s)).then_some(s)
}

/// How a square `f : dom(M) → dom(N)` between two marked subobjects sits in
/// the fibred picture: whether it is Cartesian over `f`, and whether the
/// transported square between the orthocomplements is Cartesian.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CartesianFlags {
    pub over_cartesian: bool,
    pub perp_cartesian: bool,
}

// P_{M⊥} · f† · P_{N⊥}: the only candidate for f† in the orthocomplement
// transport.
fn perp_transport(f: &Morphism, sub_dom: &Subobject, sub_cod: &Subobject) -> Matrix<Scalar> {
    let left = sub_dom.perp();
    let right = sub_cod.perp();
    let middle = left.projection() * f.dagger().matrix();
    &middle * right.projection()
}

/// Checks the two Cartesianness conditions for `f` against subobjects of its
/// domain and codomain: `f = P_N · f · P_M`, and `f† = P_{M⊥} · f† · P_{N⊥}`.
pub fn cartesian_check(f: &Morphism, sub_dom: &Subobject, sub_cod: &Subobject) -> CartesianFlags {
    assert_eq!(sub_dom.ambient(), f.dom(), "the first subobject must live in the domain");
    assert_eq!(sub_cod.ambient(), f.cod(), "the second subobject must live in the codomain");
    let over = &(&(sub_cod.projection() * f.matrix()) * sub_dom.projection()) == f.matrix();
    let perp = perp_transport(f, sub_dom, sub_cod) == f.dagger().matrix().clone();
    CartesianFlags { over_cartesian: over, perp_cartesian: perp }
}

/// The fixed witness showing the orthocomplement is not fibred: a square that
/// is Cartesian while its orthocomplement transport is not.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonfibredWitness {
    /// `m ∘ m†` for the left coordinate inclusion `m : 1 → 1 ⊕ 1`.
    pub morphism: Morphism,
    /// The subobject `m` represents, marked in the domain.
    pub sub_dom: Subobject,
    /// The top subobject, marked in the codomain.
    pub sub_cod: Subobject,
    pub flags: CartesianFlags,
    /// `f†`, the left side of the failed equality.
    pub lhs: Matrix<Scalar>,
    /// `P_{M⊥} · f† · P_{N⊥}`, the right side.
    pub rhs: Matrix<Scalar>,
}

/// Builds the nonfibredness witness. Deterministic: no randomness involved.
pub fn nonfibred_witness() -> NonfibredWitness {
    let b = crate::category::biproduct(1, 1);
    let sub_dom = Subobject::from_isometry(&b.inj_left).expect("coordinate inclusions are isometries");
    let morphism = b.inj_left.compose(&b.inj_left.dagger());
    let sub_cod = Subobject::top(2);
    let flags = cartesian_check(&morphism, &sub_dom, &sub_cod);
    NonfibredWitness {
        lhs: morphism.dagger().matrix().clone(),
        rhs: perp_transport(&morphism, &sub_dom, &sub_cod),
        morphism,
        sub_dom,
        sub_cod,
        flags,
    }
}

/// Searches the unit-line grid (plus top and bottom) for a pair `(M, N)`
/// violating `N ≤ (∃_f M)⊥ ⇔ M ≤ (∃_g N)⊥`.
///
/// When `g` is a scalar multiple of `f†` no violation exists; when it is not,
/// this usually finds one, but absence of a witness on the sampled grid is
/// not a proof that the adjunction holds.
pub fn find_perp_adjunction_violation(
    f: &Morphism,
    g: &Morphism,
) -> Option<(Subobject, Subobject)> {
    assert_eq!(g.dom(), f.cod(), "g must have the transposed profile of f");
    assert_eq!(g.cod(), f.dom(), "g must have the transposed profile of f");
    let mut dom_grid = unit_lines(f.dom());
    dom_grid.push(Subobject::bottom(f.dom()));
    dom_grid.push(Subobject::top(f.dom()));
    let mut cod_grid = unit_lines(f.cod());
    cod_grid.push(Subobject::bottom(f.cod()));
    cod_grid.push(Subobject::top(f.cod()));
    for m in &dom_grid {
        for n in &cod_grid {
            let forward = n.leq(&exists_along(f, m).perp());
            let backward = m.leq(&exists_along(g, n).perp());
            if forward != backward {
                return Some((m.clone(), n.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn line(ambient: usize, v: Vec<Scalar>) -> Subobject {
        Subobject::from_span(ambient, &[v])
    }

    #[test]
    fn exists_along_examples() {
        let m = line(2, vec![int(1), int(1)]);
        assert_eq!(exists_along(&Morphism::identity(2), &m), m);
        let f = Morphism::row_vector(vec![int(1), int(0)]);
        assert_eq!(exists_along(&f, &m), Subobject::top(1));
        assert_eq!(exists_along(&f, &Subobject::bottom(2)), Subobject::bottom(1));
    }

    #[test]
    fn exists_adjunction_examples() {
        let m = line(2, vec![int(1), imag(1, 1)]);
        let n = line(2, vec![int(0), int(1)]);
        assert!(check_exists_adjunction(&Morphism::identity(2), &m, &n));

        // projection onto the first coordinate, with the kernel line and the
        // zero predicate on the base
        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let m = line(2, vec![int(0), int(1)]);
        let n = Subobject::bottom(1);
        assert_eq!(exists_along(&f, &m), Subobject::bottom(1));
        assert_eq!(preimage(&f, &n), m);
        assert!(check_exists_adjunction(&f, &m, &n));
    }

    #[test]
    fn beck_chevalley_examples() {
        let id = Morphism::identity(2);
        let square = crate::category::pullback(&id, &id);
        let n = line(2, vec![int(1), int(1)]);
        assert!(check_beck_chevalley(&square, &n));

        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let square = crate::category::pullback(&f, &Morphism::identity(1));
        let n = Subobject::top(1);
        let via_base = preimage(&square.left, &exists_along(&square.right, &n));
        assert_eq!(via_base, Subobject::top(2));
        assert!(check_beck_chevalley(&square, &n));
    }

    #[test]
    fn frobenius_examples() {
        let f = Morphism::identity(2);
        let m = line(2, vec![int(1), int(1)]);
        let n = line(2, vec![int(1), int(0)]);
        assert!(check_frobenius(&f, &m, &n));

        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let m = line(2, vec![int(1), int(1)]);
        let n = Subobject::top(1);
        assert_eq!(exists_along(&f, &m.meet(&preimage(&f, &n))), Subobject::top(1));
        assert!(check_frobenius(&f, &m, &n));
    }

    #[test]
    fn orthomodularity_examples() {
        // componentwise oracle in the coordinate lattice
        let m = Subobject::from_span(3, &[vec![int(1), int(0), int(0)]]);
        let n = Subobject::from_span(
            3,
            &[
                vec![int(1), int(0), int(0)],
                vec![int(0), int(1), int(0)],
            ],
        );
        assert_eq!(m.join(&m.perp().meet(&n)), n);
        assert!(check_orthomodular(&m, &n));
        assert!(check_orthomodular(&m, &m));
    }

    #[test]
    fn distributivity_counterexample_examples() {
        assert!(find_distributivity_counterexample(1).is_none());

        let w = find_distributivity_counterexample(2).expect("dimension 2 has a witness");
        assert_ne!(w.lhs, w.rhs);

        // the canonical triple, evaluated exactly
        let m = line(2, vec![int(1), int(1)]);
        let n = line(2, vec![int(1), int(0)]);
        let p = line(2, vec![int(0), int(1)]);
        assert_eq!(m.meet(&n.join(&p)), m);
        assert_eq!(m.meet(&n).join(&m.meet(&p)), Subobject::bottom(2));

        assert!(find_distributivity_counterexample(3).is_some());
    }

    #[test]
    fn perp_adjunction_examples() {
        let zero = Morphism::zero(2, 3);
        let m = line(2, vec![int(1), int(0)]);
        let n = line(3, vec![int(0), int(1), int(0)]);
        assert!(check_perp_adjunction(&zero, &m, &n));

        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let m = line(2, vec![int(0), int(1)]);
        let n = Subobject::top(1);
        assert!(n.leq(&exists_along(&f, &m).perp()));
        assert_eq!(exists_along(&f.dagger(), &n), line(2, vec![int(1), int(0)]));
        assert!(m.leq(&exists_along(&f.dagger(), &n).perp()));
        assert!(check_perp_adjunction(&f, &m, &n));
    }

    #[test]
    fn solve_scalar_factor_examples() {
        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let g = Morphism::row_vector(vec![int(2), int(0)]);
        let fac = solve_scalar_factor(&f, &g).unwrap();
        assert_eq!(fac.scalar, int(2));
        assert!(fac.unique);
        assert_eq!(g, f.scale(&fac.scalar));

        let zero = Morphism::zero(2, 1);
        let fac = solve_scalar_factor(&zero, &zero).unwrap();
        assert_eq!(fac.scalar, Scalar::zero());
        assert!(!fac.unique);

        let g = Morphism::row_vector(vec![int(0), int(1)]);
        assert!(solve_scalar_factor(&f, &g).is_none());
    }

    #[test]
    fn recover_scalar_examples() {
        let f = Morphism::from_rows(vec![vec![int(1), imag(1, 1)], vec![ratio(1, 2), int(0)]]);
        assert_eq!(recover_scalar(&f, &f.dagger()), Some(int(1)));

        let f = Morphism::row_vector(vec![int(1), int(0)]);
        let g = f.dagger().scale(&imag(1, 1));
        assert_eq!(recover_scalar(&f, &g), Some(imag(1, 1)));

        let g = Morphism::column_vector(vec![int(0), int(1)]);
        assert_eq!(recover_scalar(&f, &g), None);
    }

    #[test]
    fn recover_scalar_zero_conventions() {
        let zero = Morphism::zero(2, 1);
        assert_eq!(recover_scalar(&zero, &zero.dagger()), Some(Scalar::zero()));
        let g = Morphism::column_vector(vec![int(1), int(0)]);
        assert_eq!(recover_scalar(&zero, &g), None);
    }

    #[test]
    fn cartesian_check_examples() {
        // the appendix construction
        let w = nonfibred_witness();
        assert!(w.flags.over_cartesian);
        assert!(!w.flags.perp_cartesian);
        assert_eq!(
            w.lhs,
            Matrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]])
        );
        assert_eq!(w.rhs, Matrix::zeros(2, 2));
        // deterministic
        assert_eq!(nonfibred_witness(), w);

        let zero = Morphism::zero(2, 2);
        let flags = cartesian_check(&zero, &w.sub_dom, &w.sub_cod);
        assert!(flags.over_cartesian && flags.perp_cartesian);

        // the transported side is P_{M⊥}·f†·P_{N⊥}, which vanishes whenever
        // M is top, so the identity square over top subobjects is Cartesian
        // while its orthocomplement transport is not
        let flags = cartesian_check(&Morphism::identity(2), &Subobject::top(2), &Subobject::top(2));
        assert!(flags.over_cartesian);
        assert!(!flags.perp_cartesian);

        // both sides vanish only at the bottom pair
        let flags = cartesian_check(&zero, &Subobject::bottom(2), &Subobject::bottom(2));
        assert!(flags.over_cartesian && flags.perp_cartesian);
    }

    #[test]
    fn cartesian_check_variants_computed_directly() {
        // swapping the marked domain subobject to top makes the transported
        // right side vanish while f† does not, so the perp square is not
        // Cartesian either; with bottom (and the zero square) both sides
        // vanish and it is.
        let w = nonfibred_witness();
        let flags = cartesian_check(&w.morphism, &Subobject::top(2), &w.sub_cod);
        assert!(flags.over_cartesian);
        assert!(!flags.perp_cartesian);

        let zero = Morphism::zero(2, 2);
        let flags = cartesian_check(&zero, &Subobject::bottom(2), &w.sub_cod);
        assert!(flags.over_cartesian && flags.perp_cartesian);
    }

    #[test]
    fn perp_adjunction_violation_search() {
        let f = Morphism::row_vector(vec![int(1), int(0)]);
        // a genuine adjoint pair: no violation on the grid
        assert!(find_perp_adjunction_violation(&f, &f.dagger()).is_none());
        let scaled = f.dagger().scale(&imag(1, 1));
        assert!(find_perp_adjunction_violation(&f, &scaled).is_none());
        // not a scalar multiple of f†: a violating pair exists
        let g = Morphism::column_vector(vec![int(0), int(1)]);
        assert!(find_perp_adjunction_violation(&f, &g).is_some());
    }

    #[test]
    fn unit_lines_are_deduplicated() {
        let lines = unit_lines(2);
        assert_eq!(lines.len(), 6);
        let lines = unit_lines(1);
        assert_eq!(lines.len(), 1);
    }
}
