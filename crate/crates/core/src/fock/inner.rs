use num_complex::Complex64;

use super::{FockError, FockVector, OccupationMap, ParticleKind, DEFAULT_TOLERANCE};
use crate::delta::IntMatrix;

/// Inner product of two basis states.
///
/// Zero when the particle numbers differ. Otherwise the sum over all
/// permutations `p` of `Π_k δ(word_k, p(word')_k)`, weighted by the sign of
/// `p` for fermions: the permanent, resp. determinant, of the delta matrix of
/// the two sorted level words.
pub fn basis_inner(kind: ParticleKind, left: &OccupationMap, right: &OccupationMap) -> i128 {
    if left.total() != right.total() {
        return 0;
    }
    let m = IntMatrix::delta(&left.word(), &right.word());
    match kind {
        ParticleKind::Boson => m.permanent(),
        ParticleKind::Fermion => m.determinant(),
    }
}

/// Sesquilinear extension of [`basis_inner`], conjugate-linear in `left`.
pub fn inner(kind: ParticleKind, left: &FockVector, right: &FockVector) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, ca) in left.terms() {
        for (b, cb) in right.terms() {
            let g = basis_inner(kind, a, b);
            if g != 0 {
                acc += ca.conj() * cb * g as f64;
            }
        }
    }
    acc
}

pub fn norm(kind: ParticleKind, v: &FockVector) -> Result<f64, FockError> {
    let sq = inner(kind, v, v).re;
    if sq < -DEFAULT_TOLERANCE {
        return Err(FockError::NegativeNorm(sq));
    }
    Ok(sq.max(0.0).sqrt())
}

pub fn is_null_norm(kind: ParticleKind, v: &FockVector) -> bool {
    inner(kind, v, v).norm() <= DEFAULT_TOLERANCE
}

/// The basis state of `occ` scaled to unit norm.
pub fn normalized_ket(kind: ParticleKind, occ: &OccupationMap) -> Result<FockVector, FockError> {
    let sq = basis_inner(kind, occ, occ);
    if sq == 0 {
        return Err(FockError::NullNormState);
    }
    Ok(FockVector::term(occ.clone(), Complex64::new(1.0 / (sq as f64).sqrt(), 0.0)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FermionWord {
    /// Sorted occupation and the parity of the sorting permutation.
    Signed { sign: i8, occ: OccupationMap },
    /// Some level repeats.
    NullNorm,
}

/// Sorts a fermionic level word, tracking the sign picked up on the way.
pub fn canonical_fermion_word(word: &[usize]) -> FermionWord {
    let occ = OccupationMap::from_word(word);
    if occ.has_repeat() {
        return FermionWord::NullNorm;
    }
    let inversions = word
        .iter()
        .enumerate()
        .map(|(i, a)| word[i + 1..].iter().filter(|b| *b < a).count())
        .sum::<usize>();
    let sign = if inversions % 2 == 0 { 1 } else { -1 };
    FermionWord::Signed { sign, occ }
}
