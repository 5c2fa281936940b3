//! Occupation maps from quasi-functions on the level set.
//!
//! Level `i` is represented in the kernel by the classical atom labelled with
//! its eigenvalue. A quasi-function sends each level to a pure q-set whose
//! quasi-cardinal is that level's occupation number.

use super::{FockError, LevelBasis, OccupationMap};
use crate::kernel::{Kind, QSet, QuasiFunction, Thing};

impl LevelBasis {
    /// The classical atom standing for level `index`.
    pub fn atom(&self, index: usize) -> Option<Thing> {
        self.get(index).map(|l| Thing::macro_atom(l.value.to_string()))
    }

    pub fn index_of(&self, thing: &Thing) -> Option<usize> {
        match thing {
            Thing::Macro(label) => self.levels().iter().position(|l| l.value.to_string() == *label),
            _ => None,
        }
    }
}

pub fn from_quasi_function(qf: &QuasiFunction, basis: &LevelBasis) -> Result<OccupationMap, FockError> {
    let mut counts = Vec::new();
    for (arg, image) in qf.pairs() {
        let level = basis
            .index_of(arg)
            .ok_or_else(|| FockError::InvalidQuasiFunction(format!("{arg} is not a level")))?;
        let n = match image {
            Thing::Set(q) if q.is_empty() => 0,
            Thing::Set(q) => q.as_pure().ok_or_else(|| FockError::NotPure(level.to_string()))?.qcard,
            _ => return Err(FockError::NotPure(level.to_string())),
        };
        if n > 0 {
            counts.push((level, n as u32));
        }
    }
    // validated quasi-functions give every occurrence of a level the same
    // image, so keep one entry per level
    counts.sort_unstable();
    counts.dedup();
    OccupationMap::from_counts(counts)
}

/// The quasi-function assigning each level of `occ` a pure q-set of `kind`
/// atoms of the right size, and the empty q-set to every other level.
pub fn to_quasi_function(occ: &OccupationMap, basis: &LevelBasis, kind: &Kind) -> Result<QuasiFunction, FockError> {
    if let Some(level) = occ.max_level() {
        basis.check(level)?;
    }
    let pairs = (0..basis.len())
        .map(|i| {
            let image = QSet::from_counts([(kind.clone(), occ.get(i) as u64)]);
            (basis.atom(i).expect("level in range"), Thing::Set(image))
        })
        .collect();
    QuasiFunction::new(pairs).map_err(|e| FockError::InvalidQuasiFunction(e.to_string()))
}
