//! Seeded random instances for the law suites.
//!
//! Entries are drawn from the small exact palette {0, ±1, ±i, ±1/2}, which
//! keeps rationals tiny while still hitting degenerate ranks. Everything is
//! reproducible from a 64-bit seed; independent sub-streams (one per suite)
//! keep parallel runs deterministic.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::Morphism;
use crate::clsub::Subobject;
use crate::matrix::Matrix;
use crate::scalar::{imag, int, ratio, Scalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A sampler on an independent sub-stream of the same seed.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    /// One of {0, ±1, ±i, ±1/2}.
    pub fn scalar(&mut self) -> Scalar {
        match self.rng.gen_range(0..7u8) {
            0 => int(0),
            1 => int(1),
            2 => int(-1),
            3 => imag(1, 1),
            4 => imag(-1, 1),
            5 => ratio(1, 2),
            _ => ratio(-1, 2),
        }
    }

    /// One of the units {1, −1, i, −i}.
    pub fn unit(&mut self) -> Scalar {
        match self.rng.gen_range(0..4u8) {
            0 => int(1),
            1 => int(-1),
            2 => imag(1, 1),
            _ => imag(-1, 1),
        }
    }

    /// A dimension in `1..=max`.
    pub fn dim(&mut self, max: usize) -> usize {
        assert!(max >= 1);
        self.rng.gen_range(1..=max)
    }

    /// A dimension in `lo..=hi`.
    pub fn dim_between(&mut self, lo: usize, hi: usize) -> usize {
        assert!(lo <= hi);
        self.rng.gen_range(lo..=hi)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix<Scalar> {
        let data = (0..rows * cols).map(|_| self.scalar()).collect();
        Matrix::new(rows, cols, data)
    }

    pub fn morphism(&mut self, dom: usize, cod: usize) -> Morphism {
        Morphism::new(self.matrix(cod, dom))
    }

    pub fn nonzero_morphism(&mut self, dom: usize, cod: usize) -> Morphism {
        loop {
            let f = self.morphism(dom, cod);
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// A random subobject: the span of between 0 and `ambient` palette
    /// vectors, so all ranks occur.
    pub fn subobject(&mut self, ambient: usize) -> Subobject {
        let k = self.rng.gen_range(0..=ambient);
        Subobject::from_col_space(ambient, &self.matrix(ambient, k))
    }

    /// A nested pair `inner ≤ outer`, built by projecting random vectors into
    /// the outer subspace.
    pub fn nested_pair(&mut self, ambient: usize) -> (Subobject, Subobject) {
        let outer = self.subobject(ambient);
        let k = self.rng.gen_range(0..=ambient);
        let inside = outer.projection() * &self.matrix(ambient, k);
        let inner = Subobject::from_col_space(ambient, &inside);
        (inner, outer)
    }

    /// A random matrix with full column rank (a mono), `k ≤ ambient` columns.
    pub fn full_rank_cols(&mut self, ambient: usize, k: usize) -> Matrix<Scalar> {
        assert!(k <= ambient);
        loop {
            let m = self.matrix(ambient, k);
            if m.rank() == k {
                return m;
            }
        }
    }

    /// A random invertible endomorphism.
    pub fn invertible(&mut self, n: usize) -> Morphism {
        Morphism::new(self.full_rank_cols(n, n))
    }

    /// A random epimorphism `dom → cod` (requires `cod ≤ dom`).
    pub fn epi(&mut self, dom: usize, cod: usize) -> Morphism {
        assert!(cod <= dom);
        loop {
            let f = self.morphism(dom, cod);
            if f.matrix().rank() == cod {
                return f;
            }
        }
    }

    /// A rational isometry `k → n`: each column carries a single unit entry,
    /// in distinct rows. These are exactly the isometries available without
    /// leaving ℚ(i) (signed/phase permutations of coordinate inclusions).
    pub fn isometry(&mut self, dom: usize, cod: usize) -> Morphism {
        assert!(dom <= cod, "an isometry cannot shrink the dimension");
        let mut rows: Vec<usize> = (0..cod).collect();
        rows.shuffle(&mut self.rng);
        let mut m = vec![vec![int(0); dom]; cod];
        for (col, &row) in rows.iter().take(dom).enumerate() {
            m[row][col] = self.unit();
        }
        Morphism::from_rows(m)
    }
}
