//! Occupation-number state space.
//!
//! Basis states are [`OccupationMap`]s: finitely supported maps from level
//! index to occupation count. A [`FockVector`] is a finite complex linear
//! combination of them. Bosonic and fermionic states share the representation
//! and differ in their inner product and ladder operators.
//!
//! Fermionic vectors may carry terms with a repeated level (some count above
//! one). Such terms have null norm under the fermionic inner product; they are
//! kept as produced and only dropped when comparing up to similarity.

mod bridge;
mod checks;
mod inner;
mod ladder;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::statistics::StatisticsKind;

pub use bridge::{from_quasi_function, to_quasi_function};
pub use checks::{basis_kets, check_commutators, SweepReport, Violation};
pub use inner::{basis_inner, canonical_fermion_word, inner, is_null_norm, norm, normalized_ket, FermionWord};
pub use ladder::{similar, FockSpace, Relation};

/// Coefficients at or below this magnitude are dropped from a [`FockVector`].
pub const PRUNE_EPSILON: f64 = 1e-12;

/// Default tolerance for residual and similarity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("occupation counts must be positive (level {0} has 0)")]
    InvalidOccupation(usize),
    #[error("level {level} is not in a basis of {size} levels")]
    UnknownLevel { level: usize, size: usize },
    #[error("level values must be finite and strictly increasing")]
    InvalidBasis,
    #[error("state has null norm")]
    NullNormState,
    #[error("inner product of a state with itself is negative ({0})")]
    NegativeNorm(f64),
    #[error("image of level {0} is not a pure q-set")]
    NotPure(String),
    #[error("not a valid quasi-function: {0}")]
    InvalidQuasiFunction(String),
    #[error("{0} is not a particle statistics (expected boson or fermion)")]
    NotAParticleKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParticleKind {
    Boson,
    Fermion,
}

impl fmt::Display for ParticleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParticleKind::Boson => "boson",
            ParticleKind::Fermion => "fermion",
        })
    }
}

impl FromStr for ParticleKind {
    type Err = FockError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "boson" | "be" => Ok(ParticleKind::Boson),
            "fermion" | "fd" => Ok(ParticleKind::Fermion),
            _ => Err(FockError::NotAParticleKind(s.to_string())),
        }
    }
}

impl TryFrom<StatisticsKind> for ParticleKind {
    type Error = FockError;

    fn try_from(kind: StatisticsKind) -> Result<Self, Self::Error> {
        match kind {
            StatisticsKind::BoseEinstein => Ok(ParticleKind::Boson),
            StatisticsKind::FermiDirac => Ok(ParticleKind::Fermion),
            StatisticsKind::MaxwellBoltzmann => Err(FockError::NotAParticleKind("mb".into())),
        }
    }
}

/// A single-particle level: its position in the basis and its eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub index: usize,
    pub value: f64,
}

/// Levels sorted by strictly increasing eigenvalue, so index order and value
/// order coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelBasis {
    levels: Vec<Level>,
}

impl LevelBasis {
    pub fn new(values: &[f64]) -> Result<Self, FockError> {
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(FockError::InvalidBasis);
        }
        let levels = values.iter().enumerate().map(|(index, &value)| Level { index, value }).collect();
        Ok(LevelBasis { levels })
    }

    /// Levels with eigenvalues `0, 1, ..., n - 1`.
    pub fn uniform(n: usize) -> Self {
        LevelBasis {
            levels: (0..n).map(|index| Level { index, value: index as f64 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn get(&self, index: usize) -> Option<&Level> {
        self.levels.get(index)
    }

    pub fn check(&self, index: usize) -> Result<(), FockError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(FockError::UnknownLevel { level: index, size: self.len() })
        }
    }
}

/// Occupation counts per level. Unlisted levels are empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<usize, u32>", into = "BTreeMap<usize, u32>")]
pub struct OccupationMap(BTreeMap<usize, u32>);

impl TryFrom<BTreeMap<usize, u32>> for OccupationMap {
    type Error = FockError;

    fn try_from(map: BTreeMap<usize, u32>) -> Result<Self, Self::Error> {
        if let Some((&level, _)) = map.iter().find(|(_, &n)| n == 0) {
            return Err(FockError::InvalidOccupation(level));
        }
        Ok(OccupationMap(map))
    }
}

impl From<OccupationMap> for BTreeMap<usize, u32> {
    fn from(occ: OccupationMap) -> Self {
        occ.0
    }
}

impl OccupationMap {
    pub fn vacuum() -> Self {
        OccupationMap::default()
    }

    /// From `(level, count)` pairs; a zero count is an error.
    pub fn from_counts<I: IntoIterator<Item = (usize, u32)>>(counts: I) -> Result<Self, FockError> {
        let mut map = BTreeMap::new();
        for (level, n) in counts {
            if n == 0 {
                return Err(FockError::InvalidOccupation(level));
            }
            *map.entry(level).or_insert(0) += n;
        }
        Ok(OccupationMap(map))
    }

    /// Counts how often each level occurs in `word`; order is forgotten.
    pub fn from_word(word: &[usize]) -> Self {
        let mut map = BTreeMap::new();
        for &level in word {
            *map.entry(level).or_insert(0) += 1;
        }
        OccupationMap(map)
    }

    /// Level indices repeated by their counts, ascending.
    pub fn word(&self) -> Vec<usize> {
        self.0.iter().flat_map(|(&level, &n)| std::iter::repeat_n(level, n as usize)).collect()
    }

    pub fn get(&self, level: usize) -> u32 {
        self.0.get(&level).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&l, &n)| (l, n))
    }

    pub fn max_level(&self) -> Option<usize> {
        self.0.keys().next_back().copied()
    }

    /// True if some level holds more than one particle.
    pub fn has_repeat(&self) -> bool {
        self.0.values().any(|&n| n > 1)
    }

    /// Particles on levels strictly below `level`.
    pub fn count_below(&self, level: usize) -> u32 {
        self.0.range(..level).map(|(_, &n)| n).sum()
    }

    pub fn raised(&self, level: usize) -> Self {
        let mut out = self.clone();
        *out.0.entry(level).or_insert(0) += 1;
        out
    }

    /// `None` when `level` is empty.
    pub fn lowered(&self, level: usize) -> Option<Self> {
        let n = self.get(level);
        if n == 0 {
            return None;
        }
        let mut out = self.clone();
        if n == 1 {
            out.0.remove(&level);
        } else {
            out.0.insert(level, n - 1);
        }
        Some(out)
    }
}

impl fmt::Display for OccupationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(l, n)| format!("{l}:{n}")).collect();
        write!(f, "|{})", parts.join(","))
    }
}

/// Finite complex linear combination of occupation basis states.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<OccupationMap, Complex64>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn vacuum() -> Self {
        FockVector::basis_ket(OccupationMap::vacuum())
    }

    /// The basis vector with coefficient one on `occ`.
    pub fn basis_ket(occ: OccupationMap) -> Self {
        FockVector::term(occ, Complex64::new(1.0, 0.0))
    }

    pub fn term(occ: OccupationMap, coeff: Complex64) -> Self {
        FockVector::from_terms([(occ, coeff)])
    }

    /// Sums repeated occupation maps and drops negligible coefficients.
    pub fn from_terms<I: IntoIterator<Item = (OccupationMap, Complex64)>>(terms: I) -> Self {
        let mut v = FockVector::zero();
        for (occ, c) in terms {
            v.accumulate(occ, c);
        }
        v.prune();
        v
    }

    /// The ket of a level word read in the given order.
    ///
    /// Bosonic kets ignore order. Fermionic kets pick up the sign of the
    /// permutation sorting the word; words with a repeated level give a
    /// null-norm term.
    pub fn from_word(kind: ParticleKind, word: &[usize]) -> Self {
        let occ = OccupationMap::from_word(word);
        match (kind, canonical_fermion_word(word)) {
            (ParticleKind::Fermion, FermionWord::Signed { sign, .. }) => {
                FockVector::term(occ, Complex64::new(sign as f64, 0.0))
            }
            _ => FockVector::basis_ket(occ),
        }
    }

    pub(crate) fn accumulate(&mut self, occ: OccupationMap, c: Complex64) {
        *self.terms.entry(occ).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub(crate) fn prune(&mut self) {
        self.terms.retain(|_, c| c.norm() > PRUNE_EPSILON);
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (occ, &c) in &other.terms {
            out.accumulate(occ.clone(), c);
        }
        out.prune();
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, lambda: Complex64) -> FockVector {
        FockVector::from_terms(self.terms.iter().map(|(occ, &c)| (occ.clone(), lambda * c)))
    }

    pub fn coeff(&self, occ: &OccupationMap) -> Complex64 {
        self.terms.get(occ).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OccupationMap, Complex64)> {
        self.terms.iter().map(|(o, &c)| (o, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as `is_zero`: the zero vector has no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude; zero for the zero vector.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_level(&self) -> Option<usize> {
        self.terms.keys().filter_map(OccupationMap::max_level).max()
    }

    /// Drops every term with a repeated level. For fermionic vectors this is
    /// the representative of the class modulo null-norm vectors.
    pub fn without_null_terms(&self) -> FockVector {
        FockVector {
            terms: self.terms.iter().filter(|(o, _)| !o.has_repeat()).map(|(o, &c)| (o.clone(), c)).collect(),
        }
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(occ, c)| format!("({:.6}{:+.6}i){}", c.re, c.im, occ)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Serialized form of a state together with its statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub kind: ParticleKind,
    pub terms: Vec<TermRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: [f64; 2],
    pub occ: OccupationMap,
}

impl StateFile {
    pub fn new(kind: ParticleKind, v: &FockVector) -> Self {
        let terms = v
            .terms()
            .map(|(occ, c)| TermRecord { coeff: [c.re, c.im], occ: occ.clone() })
            .collect();
        StateFile { kind, terms }
    }

    pub fn vector(&self) -> FockVector {
        FockVector::from_terms(
            self.terms.iter().map(|t| (t.occ.clone(), Complex64::new(t.coeff[0], t.coeff[1]))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn occ(pairs: &[(usize, u32)]) -> OccupationMap {
        OccupationMap::from_counts(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn basis_kets() {
        let v = FockVector::basis_ket(occ(&[(1, 2)]));
        assert_eq!(v.len(), 1);
        assert_eq!(v.coeff(&occ(&[(1, 2)])), c(1.0));
        assert_eq!(FockVector::vacuum().coeff(&OccupationMap::vacuum()), c(1.0));
        let v = FockVector::basis_ket(occ(&[(1, 1), (3, 2)]));
        assert_eq!(v.terms().count(), 1);
    }

    #[test]
    fn zero_counts_rejected() {
        assert_eq!(OccupationMap::from_counts([(2, 0)]), Err(FockError::InvalidOccupation(2)));
        assert!(serde_json::from_str::<OccupationMap>(r#"{"1":0}"#).is_err());
    }

    #[test]
    fn vector_space_laws() {
        let a = FockVector::basis_ket(occ(&[(0, 1)]));
        assert_eq!(a.add(&FockVector::zero()), a);
        assert!(a.scale(c(0.0)).is_zero());
        assert!(a.add(&a.scale(c(-1.0))).is_zero());
    }

    #[test]
    fn word_is_sorted() {
        let o = OccupationMap::from_word(&[3, 1, 3, 0]);
        assert_eq!(o.word(), vec![0, 1, 3, 3]);
        assert_eq!(o.total(), 4);
        assert_eq!(o.count_below(3), 2);
        assert!(o.has_repeat());
    }

    #[test]
    fn fermion_word_sign() {
        let ba = FockVector::from_word(ParticleKind::Fermion, &[2, 1]);
        assert_eq!(ba.coeff(&occ(&[(1, 1), (2, 1)])), c(-1.0));
        let ba = FockVector::from_word(ParticleKind::Boson, &[2, 1]);
        assert_eq!(ba.coeff(&occ(&[(1, 1), (2, 1)])), c(1.0));
    }

    #[test]
    fn basis_validation() {
        assert!(LevelBasis::new(&[0.0, 1.5, 2.0]).is_ok());
        assert_eq!(LevelBasis::new(&[1.0, 1.0]), Err(FockError::InvalidBasis));
        assert_eq!(LevelBasis::new(&[2.0, 1.0]), Err(FockError::InvalidBasis));
        assert_eq!(LevelBasis::new(&[f64::NAN]), Err(FockError::InvalidBasis));
    }

    #[test]
    fn state_file_schema() {
        let v = FockVector::from_terms([
            (occ(&[(1, 2)]), Complex64::new(0.5, -0.25)),
            (OccupationMap::vacuum(), c(1.0)),
        ]);
        let text = serde_json::to_string(&StateFile::new(ParticleKind::Boson, &v)).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"boson","terms":[{"coeff":[1.0,0.0],"occ":{}},{"coeff":[0.5,-0.25],"occ":{"1":2}}]}"#
        );
        let back: StateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.vector(), v);
    }
}
