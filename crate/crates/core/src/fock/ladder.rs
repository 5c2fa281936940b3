use std::fmt;

use super::{FockError, FockVector, LevelBasis, OccupationMap, ParticleKind, DEFAULT_TOLERANCE};

/// Which pair of ladder operators a residual compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a_α a_β† ∓ a_β† a_α − δ_αβ`
    LowerRaise,
    /// `a_α a_β ∓ a_β a_α`
    LowerLower,
    /// `a_α† a_β† ∓ a_β† a_α†`
    RaiseRaise,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::LowerRaise, Relation::LowerLower, Relation::RaiseRaise];

    pub fn label(self, kind: ParticleKind) -> &'static str {
        match (kind, self) {
            (ParticleKind::Boson, Relation::LowerRaise) => "[a_a, a_b^+] - d_ab",
            (ParticleKind::Boson, Relation::LowerLower) => "[a_a, a_b]",
            (ParticleKind::Boson, Relation::RaiseRaise) => "[a_a^+, a_b^+]",
            (ParticleKind::Fermion, Relation::LowerRaise) => "{C_a, C_b^+} - d_ab",
            (ParticleKind::Fermion, Relation::LowerLower) => "{C_a, C_b}",
            (ParticleKind::Fermion, Relation::RaiseRaise) => "{C_a^+, C_b^+}",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::LowerRaise => "lower-raise",
            Relation::LowerLower => "lower-lower",
            Relation::RaiseRaise => "raise-raise",
        })
    }
}

/// Ladder operators for one particle statistics over a fixed level basis.
///
/// Bosons: on normalized kets, `a_α† |…n_α…) = √(n_α+1) |…n_α+1…)` and
/// `a_α |…n_α…) = √n_α |…n_α−1…)`. A [`FockVector`] stores coefficients of
/// the unnormalized basis states, whose squared norm is `Π n_i!`, so in
/// stored form the rules read `a_α† f = f[n_α+1]` and
/// `a_α f = n_α f[n_α−1]`. With this, `a_α` is the adjoint of `a_α†`.
///
/// Fermions: `C_α†` prepends `α` to the level word and sorts it back, which
/// gives the sign `(−1)^(particles below α)`. If `α` is already occupied the
/// result is a null-norm term and is kept as such. `C_α` removes `α` with the
/// same sign and maps states with `α` empty, or with a repeated level, to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FockSpace {
    kind: ParticleKind,
    basis: LevelBasis,
}

impl FockSpace {
    pub fn new(kind: ParticleKind, basis: LevelBasis) -> Self {
        FockSpace { kind, basis }
    }

    pub fn kind(&self) -> ParticleKind {
        self.kind
    }

    pub fn basis(&self) -> &LevelBasis {
        &self.basis
    }

    pub fn create(&self, level: usize, v: &FockVector) -> Result<FockVector, FockError> {
        self.basis.check(level)?;
        Ok(FockVector::from_terms(v.terms().map(|(occ, c)| {
            let factor = match self.kind {
                ParticleKind::Boson => 1.0,
                ParticleKind::Fermion => parity(occ.count_below(level)),
            };
            (occ.raised(level), c * factor)
        })))
    }

    pub fn annihilate(&self, level: usize, v: &FockVector) -> Result<FockVector, FockError> {
        self.basis.check(level)?;
        Ok(FockVector::from_terms(v.terms().filter_map(|(occ, c)| {
            if self.kind == ParticleKind::Fermion && occ.has_repeat() {
                return None;
            }
            let lowered = occ.lowered(level)?;
            let factor = match self.kind {
                ParticleKind::Boson => occ.get(level) as f64,
                ParticleKind::Fermion => parity(occ.count_below(level)),
            };
            Some((lowered, c * factor))
        })))
    }

    /// Canonical representative: null-norm terms dropped for fermions, the
    /// vector itself for bosons.
    pub fn canonical(&self, v: &FockVector) -> FockVector {
        match self.kind {
            ParticleKind::Boson => v.clone(),
            ParticleKind::Fermion => v.without_null_terms(),
        }
    }

    /// Commutator (bosons) or anticommutator (fermions) of the operator pair
    /// named by `relation`, applied to `v`, minus its expected value. For
    /// fermions the result is reduced modulo null-norm terms. Should be zero.
    pub fn residual(
        &self,
        relation: Relation,
        alpha: usize,
        beta: usize,
        v: &FockVector,
    ) -> Result<FockVector, FockError> {
        let (first, second) = match relation {
            Relation::LowerRaise => {
                (self.annihilate(alpha, &self.create(beta, v)?)?, self.create(beta, &self.annihilate(alpha, v)?)?)
            }
            Relation::LowerLower => (
                self.annihilate(alpha, &self.annihilate(beta, v)?)?,
                self.annihilate(beta, &self.annihilate(alpha, v)?)?,
            ),
            Relation::RaiseRaise => {
                (self.create(alpha, &self.create(beta, v)?)?, self.create(beta, &self.create(alpha, v)?)?)
            }
        };
        let mut out = match self.kind {
            ParticleKind::Boson => first.sub(&second),
            ParticleKind::Fermion => first.add(&second),
        };
        if relation == Relation::LowerRaise && alpha == beta {
            out = out.sub(v);
        }
        Ok(self.canonical(&out))
    }

    /// `[a_α, a_β†] v − δ_αβ v` (anticommutator for fermions).
    pub fn commutator_residual(&self, alpha: usize, beta: usize, v: &FockVector) -> Result<FockVector, FockError> {
        self.residual(Relation::LowerRaise, alpha, beta, v)
    }

    /// `a_α† a_α v − N_α v`, where `N_α` multiplies each term by its
    /// occupation of `α`.
    pub fn number_residual(&self, level: usize, v: &FockVector) -> Result<FockVector, FockError> {
        let applied = self.create(level, &self.annihilate(level, v)?)?;
        let counted = FockVector::from_terms(
            self.canonical(v).terms().map(|(occ, c)| (occ.clone(), c * occ.get(level) as f64)),
        );
        Ok(self.canonical(&applied.sub(&counted)))
    }

    /// Applies a string of operators right to left: the last entry acts first.
    /// `true` means creation.
    pub fn apply_word(&self, ops: &[(bool, usize)], v: &FockVector) -> Result<FockVector, FockError> {
        ops.iter().rev().try_fold(v.clone(), |acc, &(raise, level)| {
            if raise {
                self.create(level, &acc)
            } else {
                self.annihilate(level, &acc)
            }
        })
    }

    pub fn basis_state(&self, occ: OccupationMap) -> Result<FockVector, FockError> {
        if let Some(level) = occ.max_level() {
            self.basis.check(level)?;
        }
        Ok(FockVector::basis_ket(occ))
    }
}

fn parity(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Fermionic similarity: `v` and `w` differ by a combination of null-norm
/// vectors, i.e. they agree once terms with a repeated level are dropped.
pub fn similar(v: &FockVector, w: &FockVector) -> bool {
    v.sub(w).without_null_terms().max_abs_coeff() <= DEFAULT_TOLERANCE
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::fock::{inner, normalized_ket};

    fn occ(word: &[usize]) -> OccupationMap {
        OccupationMap::from_word(word)
    }

    fn ket(word: &[usize]) -> FockVector {
        FockVector::basis_ket(occ(word))
    }

    fn bosons(n: usize) -> FockSpace {
        FockSpace::new(ParticleKind::Boson, LevelBasis::uniform(n))
    }

    fn fermions(n: usize) -> FockSpace {
        FockSpace::new(ParticleKind::Fermion, LevelBasis::uniform(n))
    }

    fn unit(kind: ParticleKind, word: &[usize]) -> FockVector {
        normalized_ket(kind, &occ(word)).unwrap()
    }

    fn close(a: &FockVector, b: &FockVector) -> bool {
        a.sub(b).max_abs_coeff() < 1e-12
    }

    #[test]
    fn boson_creation() {
        let s = bosons(3);
        assert_eq!(s.create(1, &FockVector::vacuum()).unwrap(), ket(&[1]));
        // a† |n=1) = sqrt(2) |n=2) on normalized kets
        let v = s.create(1, &unit(ParticleKind::Boson, &[1])).unwrap();
        let want = unit(ParticleKind::Boson, &[1, 1]).scale(Complex64::new(2f64.sqrt(), 0.0));
        assert!(close(&v, &want), "{v}");
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn boson_annihilation() {
        let s = bosons(3);
        assert!(s.annihilate(0, &FockVector::vacuum()).unwrap().is_zero());
        let v = s.annihilate(2, &unit(ParticleKind::Boson, &[2, 2])).unwrap();
        let want = unit(ParticleKind::Boson, &[2]).scale(Complex64::new(2f64.sqrt(), 0.0));
        assert!(close(&v, &want), "{v}");
    }

    #[test]
    fn boson_ladder_operators_are_adjoint() {
        let s = bosons(2);
        let kets = [&[][..], &[0], &[0, 0], &[0, 1], &[0, 0, 1], &[1, 1, 1]];
        for a in kets {
            for b in kets {
                for level in 0..2 {
                    let u = ket(a);
                    let v = ket(b);
                    let lhs = inner(ParticleKind::Boson, &u, &s.annihilate(level, &v).unwrap());
                    let rhs = inner(ParticleKind::Boson, &s.create(level, &u).unwrap(), &v);
                    assert_eq!(lhs, rhs, "{a:?} {b:?} {level}");
                }
            }
        }
    }

    #[test]
    fn unknown_level() {
        let s = bosons(2);
        assert_eq!(
            s.create(2, &FockVector::vacuum()),
            Err(FockError::UnknownLevel { level: 2, size: 2 })
        );
        assert!(s.annihilate(5, &FockVector::vacuum()).is_err());
    }

    #[test]
    fn fermion_creation_on_occupied_level_is_null() {
        let s = fermions(3);
        let v = s.create(1, &ket(&[1])).unwrap();
        assert!(!v.is_zero());
        assert!(similar(&v, &FockVector::zero()));
    }

    #[test]
    fn fermion_annihilation() {
        let s = fermions(3);
        assert_eq!(s.annihilate(1, &ket(&[1])).unwrap(), FockVector::vacuum());
        assert!(s.annihilate(1, &FockVector::vacuum()).unwrap().is_zero());
        assert!(s.annihilate(0, &ket(&[1, 2])).unwrap().is_zero());
        // removing level 2 from |0 2) passes one particle
        assert_eq!(s.annihilate(2, &ket(&[0, 2])).unwrap(), ket(&[0]).scale(Complex64::new(-1.0, 0.0)));
    }

    #[test]
    fn fermion_creation_sign_matches_word_order() {
        let s = fermions(3);
        // C_2† |0 1) = |2 0 1) = +|0 1 2); C_0† |1 2) = |0 1 2)
        assert_eq!(s.create(2, &ket(&[0, 1])).unwrap(), ket(&[0, 1, 2]));
        assert_eq!(s.create(0, &ket(&[1, 2])).unwrap(), ket(&[0, 1, 2]));
        // C_1† |0 2) = |1 0 2) = −|0 1 2)
        assert_eq!(s.create(1, &ket(&[0, 2])).unwrap(), FockVector::from_word(ParticleKind::Fermion, &[1, 0, 2]));
    }

    #[test]
    fn commutators_vanish() {
        let b = bosons(2);
        for n in 0..=4 {
            let v = FockVector::basis_ket(OccupationMap::from_counts([(0, n)].into_iter().filter(|p| p.1 > 0)).unwrap());
            assert!(b.commutator_residual(0, 0, &v).unwrap().max_abs_coeff() < 1e-9);
            assert!(b.commutator_residual(0, 1, &v).unwrap().max_abs_coeff() < 1e-9);
        }
        let f = fermions(3);
        assert!(f.commutator_residual(1, 1, &ket(&[1, 2])).unwrap().is_zero());
    }

    #[test]
    fn similarity() {
        let ab = FockVector::from_word(ParticleKind::Fermion, &[0, 1]);
        let ba = FockVector::from_word(ParticleKind::Fermion, &[1, 0]);
        assert!(similar(&ab.add(&ba), &FockVector::zero()));
        assert!(similar(&ab, &ba.scale(Complex64::new(-1.0, 0.0))));
        assert!(!similar(&ab, &FockVector::from_word(ParticleKind::Fermion, &[0, 2])));
        assert!(similar(&ket(&[0, 0]), &FockVector::zero()));
    }

    #[test]
    fn number_operator() {
        let b = bosons(3);
        let v = ket(&[0, 0, 0, 2]);
        let n = b.create(0, &b.annihilate(0, &v).unwrap()).unwrap();
        assert_eq!(n.coeff(&occ(&[0, 0, 0, 2])).re, 3.0);
        assert!(b.number_residual(0, &v).unwrap().max_abs_coeff() < 1e-12);
    }

    #[test]
    fn operator_words() {
        let b = bosons(2);
        // a_0 a_0† |0) = |0)
        let v = b.apply_word(&[(false, 0), (true, 0)], &FockVector::vacuum()).unwrap();
        assert_eq!(v, FockVector::vacuum());
    }
}
