//! Labeled many-particle states: tensor products with particle labels,
//! permutation operators, symmetrizers, and permutation-invariance checks of
//! expectation values.
//!
//! This is the conventional formalism, where particles carry labels and
//! indistinguishability is imposed afterwards by restricting to symmetric or
//! antisymmetric vectors and to permutation-invariant observables. It also
//! supplies [`oracle_inner`], an independent evaluation of the occupation
//! inner products by literal expansion over permutations.

use std::collections::BTreeMap;

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::fock::{OccupationMap, ParticleKind};

/// Tolerance used to decide whether an observable is hermitian and commutes
/// with a permutation.
pub const COMPATIBILITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabeledError {
    #[error("permutation acts on {permutation} labels but the state has {state} particles")]
    SizeMismatch { permutation: usize, state: usize },
    #[error("particle numbers differ ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error("{0:?} is not a permutation")]
    InvalidPermutation(Vec<usize>),
    #[error("observable does not commute with the permutation (‖OP − PO‖ = {0:e})")]
    NotPermutationCompatible(f64),
    #[error("observable is not hermitian")]
    NotHermitian,
    #[error("observable is {rows}x{cols}, expected {dim}x{dim}")]
    ShapeMismatch { rows: usize, cols: usize, dim: usize },
    #[error("level {0} outside the labeled space")]
    LevelOutOfRange(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// `assignment[k]` is the level of particle `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledAssignment(pub Vec<usize>);

impl LabeledAssignment {
    pub fn particles(&self) -> usize {
        self.0.len()
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct LabeledVector {
    terms: BTreeMap<LabeledAssignment, Complex64>,
}

impl LabeledVector {
    pub fn zero() -> Self {
        LabeledVector::default()
    }

    pub fn basis(word: &[usize]) -> Self {
        LabeledVector::from_terms([(LabeledAssignment(word.to_vec()), Complex64::new(1.0, 0.0))])
    }

    pub fn from_terms<I: IntoIterator<Item = (LabeledAssignment, Complex64)>>(terms: I) -> Self {
        let mut map = BTreeMap::new();
        for (a, c) in terms {
            *map.entry(a).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c: &mut Complex64| c.norm() > crate::fock::PRUNE_EPSILON);
        LabeledVector { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LabeledAssignment, Complex64)> {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    pub fn coeff(&self, word: &[usize]) -> Complex64 {
        self.terms.get(&LabeledAssignment(word.to_vec())).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as `is_zero`: the zero vector has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, lambda: Complex64) -> Self {
        LabeledVector::from_terms(self.terms().map(|(a, c)| (a.clone(), lambda * c)))
    }

    pub fn add(&self, other: &LabeledVector) -> Self {
        LabeledVector::from_terms(self.terms().chain(other.terms()).map(|(a, c)| (a.clone(), c)))
    }

    /// Particle number shared by every term, if there is exactly one.
    pub fn particles(&self) -> Option<usize> {
        let mut sizes = self.terms.keys().map(LabeledAssignment::particles).dedup();
        let first = sizes.next()?;
        sizes.next().is_none().then_some(first)
    }
}

/// A permutation of particle labels in one-line notation: label `k` goes to
/// position `images[k]` (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, LabeledError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(LabeledError::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Transposition of labels `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation(images)
    }

    /// All `n!` permutations, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// +1 for even, −1 for odd permutations.
    pub fn sign(&self) -> i64 {
        let inversions = (0..self.0.len())
            .flat_map(|i| (i + 1..self.0.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.0[i] > self.0[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Moves the entry for label `k` to position `images[k]`.
    pub fn permute<T: Clone>(&self, word: &[T]) -> Vec<T> {
        let mut out = word.to_vec();
        for (k, &target) in self.0.iter().enumerate() {
            out[target] = word[k].clone();
        }
        out
    }
}

/// Unnormalized (anti)symmetrization: `Σ_p s_p |p·word⟩` with `s_p = 1` for
/// [`Sign::Plus`] and the permutation sign for [`Sign::Minus`].
pub fn symmetrize(word: &[usize], sign: Sign) -> LabeledVector {
    LabeledVector::from_terms(Permutation::all(word.len()).into_iter().map(|p| {
        let s = match sign {
            Sign::Plus => 1.0,
            Sign::Minus => p.sign() as f64,
        };
        (LabeledAssignment(p.permute(word)), Complex64::new(s, 0.0))
    }))
}

/// Inner product with labeled basis states orthonormal, conjugate-linear in
/// `left`. Terms with different particle numbers contribute zero.
pub fn labeled_inner(left: &LabeledVector, right: &LabeledVector) -> Complex64 {
    left.terms().filter_map(|(a, ca)| right.terms.get(a).map(|cb| ca.conj() * cb)).sum()
}

/// Like [`labeled_inner`], but refuses vectors whose particle numbers differ.
pub fn labeled_inner_strict(left: &LabeledVector, right: &LabeledVector) -> Result<Complex64, LabeledError> {
    if let (Some(n), Some(m)) = (left.particles(), right.particles()) {
        if n != m {
            return Err(LabeledError::DimensionMismatch(n, m));
        }
    }
    Ok(labeled_inner(left, right))
}

pub fn apply_permutation(p: &Permutation, v: &LabeledVector) -> Result<LabeledVector, LabeledError> {
    if let Some((a, _)) = v.terms().find(|(a, _)| a.particles() != p.len()) {
        return Err(LabeledError::SizeMismatch { permutation: p.len(), state: a.particles() });
    }
    Ok(LabeledVector::from_terms(v.terms().map(|(a, c)| (LabeledAssignment(p.permute(&a.0)), c))))
}

/// The space of `particles` labeled particles on `levels` levels, with
/// assignments indexed lexicographically (particle 1 most significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabeledSpace {
    pub particles: usize,
    pub levels: usize,
}

impl LabeledSpace {
    pub fn new(particles: usize, levels: usize) -> Self {
        LabeledSpace { particles, levels }
    }

    pub fn dim(&self) -> usize {
        self.levels.pow(self.particles as u32)
    }

    pub fn index_of(&self, word: &[usize]) -> Result<usize, LabeledError> {
        if word.len() != self.particles {
            return Err(LabeledError::DimensionMismatch(word.len(), self.particles));
        }
        word.iter().try_fold(0usize, |acc, &l| {
            if l >= self.levels {
                Err(LabeledError::LevelOutOfRange(l))
            } else {
                Ok(acc * self.levels + l)
            }
        })
    }

    pub fn assignment(&self, mut index: usize) -> Vec<usize> {
        let mut word = vec![0; self.particles];
        for slot in word.iter_mut().rev() {
            *slot = index % self.levels;
            index /= self.levels;
        }
        word
    }

    pub fn to_dense(&self, v: &LabeledVector) -> Result<DVector<Complex64>, LabeledError> {
        let mut out = DVector::zeros(self.dim());
        for (a, c) in v.terms() {
            out[self.index_of(&a.0)?] += c;
        }
        Ok(out)
    }

    /// Matrix of [`apply_permutation`] on this space.
    pub fn permutation_matrix(&self, p: &Permutation) -> Result<DMatrix<Complex64>, LabeledError> {
        if p.len() != self.particles {
            return Err(LabeledError::SizeMismatch { permutation: p.len(), state: self.particles });
        }
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let row = self.index_of(&p.permute(&self.assignment(col)))?;
            m[(row, col)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    /// `(1/n!) Σ_p P† A P`, which commutes with every label permutation.
    pub fn group_average(&self, a: &DMatrix<Complex64>) -> Result<DMatrix<Complex64>, LabeledError> {
        self.check_shape(a)?;
        let perms = Permutation::all(self.particles);
        let mut acc = DMatrix::zeros(self.dim(), self.dim());
        for p in &perms {
            let pm = self.permutation_matrix(p)?;
            acc += pm.adjoint() * a * pm;
        }
        Ok(acc.unscale(perms.len() as f64))
    }

    fn check_shape(&self, m: &DMatrix<Complex64>) -> Result<(), LabeledError> {
        let dim = self.dim();
        if m.nrows() != dim || m.ncols() != dim {
            return Err(LabeledError::ShapeMismatch { rows: m.nrows(), cols: m.ncols(), dim });
        }
        Ok(())
    }
}

/// Expectation values of `observable` in `v` and in `P v`.
///
/// Only observables commuting with the permutation are admitted; for those
/// the two values agree.
pub fn ip_expectation_check(
    space: &LabeledSpace,
    observable: &DMatrix<Complex64>,
    v: &LabeledVector,
    p: &Permutation,
) -> Result<(f64, f64), LabeledError> {
    space.check_shape(observable)?;
    if (observable - observable.adjoint()).norm() > COMPATIBILITY_TOLERANCE {
        return Err(LabeledError::NotHermitian);
    }
    let pm = space.permutation_matrix(p)?;
    let commutator = (observable * &pm - &pm * observable).norm();
    if commutator > COMPATIBILITY_TOLERANCE {
        return Err(LabeledError::NotPermutationCompatible(commutator));
    }
    let psi = space.to_dense(v)?;
    let moved = space.to_dense(&apply_permutation(p, v)?)?;
    let expect = |x: &DVector<Complex64>| x.dotc(&(observable * x)).re;
    Ok((expect(&psi), expect(&moved)))
}

/// Permanent by summing over all `n!` permutations.
pub fn permanent_by_expansion(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|p| p.iter().enumerate().map(|(r, &c)| m[r][c] as i128).product::<i128>())
        .sum()
}

/// Determinant by the Leibniz formula.
pub fn determinant_by_expansion(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    (0..n)
        .permutations(n)
        .map(|p| {
            let sign = Permutation(p.clone()).sign() as i128;
            sign * p.iter().enumerate().map(|(r, &c)| m[r][c] as i128).product::<i128>()
        })
        .sum()
}

/// Occupation inner product evaluated from its definition: the delta matrix
/// of the two sorted level words, expanded over all permutations. Zero when
/// the particle numbers differ.
pub fn oracle_inner(kind: ParticleKind, left: &OccupationMap, right: &OccupationMap) -> i128 {
    let (a, b) = (left.word(), right.word());
    if a.len() != b.len() {
        return 0;
    }
    let m: Vec<Vec<i64>> = a.iter().map(|x| b.iter().map(|y| i64::from(x == y)).collect()).collect();
    match kind {
        ParticleKind::Boson => permanent_by_expansion(&m),
        ParticleKind::Fermion => determinant_by_expansion(&m),
    }
}
