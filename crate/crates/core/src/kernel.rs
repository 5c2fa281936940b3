//! A finite model of quasi-sets.
//!
//! Collections here may hold two sorts of atoms. Micro-atoms (`m`-atoms) carry
//! a kind and nothing else: a q-set stores how many atoms of each kind it
//! holds, and there is no way to name, iterate over, or compare individual
//! micro-atoms. Macro-atoms (`M`-atoms) behave like the urelements of
//! classical set theory and have ordinary identity, modelled by label
//! equality.
//!
//! In this model a pure q-set *is* its `(kind, count)` pair, so permuting
//! indistinguishable atoms between collections leaves every observable value
//! unchanged. [`permutation_swap`] makes that concrete.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("identity is undefined for micro-atoms and q-sets containing them")]
    IdentityUndefined,
    #[error("no element of the q-set is indistinguishable from {0}")]
    NotAMember(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("invalid q-set encoding: {0}")]
    InvalidEncoding(String),
}

/// Kind label of a micro-atom, e.g. `"electron"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Kind(String);

impl Kind {
    pub fn new(name: impl Into<String>) -> Self {
        Kind(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Kind {
    fn from(s: &str) -> Self {
        Kind::new(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    /// No identity; only kind and multiplicity are observable.
    Micro,
    /// Classical atom with decidable identity.
    Macro,
}

/// An atom kind together with its flavor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomKind {
    pub id: String,
    pub flavor: Flavor,
}

impl AtomKind {
    pub fn micro(id: impl Into<String>) -> Self {
        AtomKind { id: id.into(), flavor: Flavor::Micro }
    }

    pub fn macro_atom(id: impl Into<String>) -> Self {
        AtomKind { id: id.into(), flavor: Flavor::Macro }
    }

    /// The value denoted by this kind: a micro-atom of kind `id`, or the
    /// macro-atom labelled `id`.
    pub fn atom(&self) -> Thing {
        match self.flavor {
            Flavor::Micro => Thing::Micro(Kind::new(self.id.clone())),
            Flavor::Macro => Thing::Macro(self.id.clone()),
        }
    }
}

/// A non-micro-atom member of a q-set: a macro-atom or a nested q-set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Member {
    Atom(String),
    Set(QSet),
}

impl Member {
    pub fn is_classical(&self) -> bool {
        match self {
            Member::Atom(_) => true,
            Member::Set(q) => q.is_classical(),
        }
    }

    pub fn into_thing(self) -> Thing {
        match self {
            Member::Atom(label) => Thing::Macro(label),
            Member::Set(q) => Thing::Set(q),
        }
    }
}

/// Anything the kernel can talk about: an atom of either flavor, or a q-set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Thing {
    Micro(Kind),
    Macro(String),
    Set(QSet),
}

impl Thing {
    pub fn micro(kind: impl Into<String>) -> Self {
        Thing::Micro(Kind::new(kind))
    }

    pub fn macro_atom(label: impl Into<String>) -> Self {
        Thing::Macro(label.into())
    }

    pub fn is_classical(&self) -> bool {
        match self {
            Thing::Micro(_) => false,
            Thing::Macro(_) => true,
            Thing::Set(q) => q.is_classical(),
        }
    }

    fn into_member(self) -> Option<Member> {
        match self {
            Thing::Micro(_) => None,
            Thing::Macro(label) => Some(Member::Atom(label)),
            Thing::Set(q) => Some(Member::Set(q)),
        }
    }
}

impl fmt::Display for Thing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Thing::Micro(k) => write!(f, "m-atom of kind {k}"),
            Thing::Macro(label) => write!(f, "M-atom {label:?}"),
            Thing::Set(q) => write!(f, "{q}"),
        }
    }
}

/// A finite q-set.
///
/// Micro-atom content is a multiset `kind -> count` with every count at least
/// one. Everything else lives in `members`. Two values compare equal exactly
/// when their micro-multisets and member sets agree, which is also how
/// [`indistinguishable`] is decided for q-sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawQSet", into = "RawQSet")]
pub struct QSet {
    micro: BTreeMap<Kind, u64>,
    members: BTreeSet<Member>,
}

#[derive(Serialize, Deserialize)]
struct RawQSet {
    #[serde(default)]
    m: BTreeMap<Kind, u64>,
    #[serde(default)]
    classical: Vec<Member>,
}

impl TryFrom<RawQSet> for QSet {
    type Error = KernelError;

    fn try_from(raw: RawQSet) -> Result<Self, Self::Error> {
        if let Some((kind, _)) = raw.m.iter().find(|(_, &c)| c == 0) {
            return Err(KernelError::InvalidEncoding(format!(
                "count for kind {kind:?} must be positive"
            )));
        }
        Ok(QSet { micro: raw.m, members: raw.classical.into_iter().collect() })
    }
}

impl From<QSet> for RawQSet {
    fn from(q: QSet) -> Self {
        RawQSet { m: q.micro, classical: q.members.into_iter().collect() }
    }
}

impl QSet {
    pub fn empty() -> Self {
        QSet::default()
    }

    /// Builds a q-set of micro-atoms from `(kind, count)` pairs. Repeated
    /// kinds accumulate; zero counts are dropped.
    pub fn from_counts<K, I>(counts: I) -> Self
    where
        K: Into<Kind>,
        I: IntoIterator<Item = (K, u64)>,
    {
        let mut q = QSet::empty();
        for (kind, n) in counts {
            q.add_micro(kind.into(), n);
        }
        q
    }

    /// A classical q-set holding the given members.
    pub fn classical<I: IntoIterator<Item = Member>>(members: I) -> Self {
        QSet { micro: BTreeMap::new(), members: members.into_iter().collect() }
    }

    /// Builds the q-set whose elements are exactly `things`. Micro-atoms of
    /// the same kind accumulate multiplicity; other things are members, and
    /// indistinguishable members collapse.
    pub fn from_things<I: IntoIterator<Item = Thing>>(things: I) -> Self {
        let mut q = QSet::empty();
        for thing in things {
            match thing {
                Thing::Micro(kind) => q.add_micro(kind, 1),
                other => {
                    if let Some(m) = other.into_member() {
                        q.members.insert(m);
                    }
                }
            }
        }
        q
    }

    pub fn with_member(mut self, member: Member) -> Self {
        self.members.insert(member);
        self
    }

    fn add_micro(&mut self, kind: Kind, n: u64) {
        if n > 0 {
            *self.micro.entry(kind).or_insert(0) += n;
        }
    }

    /// Multiplicity of `kind` among the micro-atoms; zero when absent.
    pub fn count(&self, kind: &Kind) -> u64 {
        self.micro.get(kind).copied().unwrap_or(0)
    }

    pub fn kinds(&self) -> impl Iterator<Item = (&Kind, u64)> {
        self.micro.iter().map(|(k, &n)| (k, n))
    }

    pub fn members(&self) -> impl Iterator<Item = &Member> {
        self.members.iter()
    }

    pub fn contains_member(&self, member: &Member) -> bool {
        self.members.contains(member)
    }

    pub fn is_empty(&self) -> bool {
        self.micro.is_empty() && self.members.is_empty()
    }

    /// Quasi-cardinal: micro-atom multiplicities plus the number of members.
    pub fn qcard(&self) -> u64 {
        self.micro.values().sum::<u64>() + self.members.len() as u64
    }

    /// True iff no micro-atom occurs anywhere in the transitive closure.
    pub fn is_classical(&self) -> bool {
        self.micro.is_empty() && self.members.iter().all(Member::is_classical)
    }

    /// `Some` iff this q-set holds micro-atoms of exactly one kind and nothing
    /// else.
    pub fn as_pure(&self) -> Option<PureQSet> {
        if !self.members.is_empty() || self.micro.len() != 1 {
            return None;
        }
        let (kind, &qcard) = self.micro.iter().next()?;
        Some(PureQSet { kind: kind.clone(), qcard })
    }

    /// Union. Micro multiplicities combine by maximum, members by set union.
    pub fn union(&self, other: &QSet) -> QSet {
        let mut out = self.clone();
        for (kind, &n) in &other.micro {
            let slot = out.micro.entry(kind.clone()).or_insert(0);
            *slot = (*slot).max(n);
        }
        out.members.extend(other.members.iter().cloned());
        out
    }

    /// Union of q-sets known to share no atoms: micro multiplicities add.
    pub fn disjoint_union(&self, other: &QSet) -> QSet {
        let mut out = self.clone();
        for (kind, &n) in &other.micro {
            out.add_micro(kind.clone(), n);
        }
        out.members.extend(other.members.iter().cloned());
        out
    }

    /// Difference. Micro multiplicities subtract (saturating at zero).
    pub fn difference(&self, other: &QSet) -> QSet {
        let mut out = self.clone();
        for (kind, &n) in &other.micro {
            if let Some(slot) = out.micro.get_mut(kind) {
                *slot = slot.saturating_sub(n);
                if *slot == 0 {
                    out.micro.remove(kind);
                }
            }
        }
        for m in &other.members {
            out.members.remove(m);
        }
        out
    }
}

impl fmt::Display for QSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (kind, n) in &self.micro {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{kind}:{n}")?;
        }
        for m in &self.members {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            match m {
                Member::Atom(label) => write!(f, "{label:?}")?,
                Member::Set(q) => write!(f, "{q}")?,
            }
        }
        f.write_str("}")
    }
}

/// A finite q-set of pairwise indistinguishable micro-atoms of one kind.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PureQSet {
    pub kind: Kind,
    pub qcard: u64,
}

impl PureQSet {
    pub fn new(kind: impl Into<Kind>, qcard: u64) -> Self {
        PureQSet { kind: kind.into(), qcard }
    }

    pub fn to_qset(&self) -> QSet {
        QSet::from_counts([(self.kind.clone(), self.qcard)])
    }
}

impl From<PureQSet> for QSet {
    fn from(p: PureQSet) -> Self {
        p.to_qset()
    }
}

/// Indistinguishability. Micro-atoms are indistinguishable iff they share a
/// kind, macro-atoms iff they carry the same label, q-sets iff their
/// micro-multisets and members agree. Things of different sorts never are.
pub fn indistinguishable(a: &Thing, b: &Thing) -> bool {
    match (a, b) {
        (Thing::Micro(x), Thing::Micro(y)) => x == y,
        (Thing::Macro(x), Thing::Macro(y)) => x == y,
        (Thing::Set(x), Thing::Set(y)) => x == y,
        _ => false,
    }
}

/// Identity, defined only between classical things.
pub fn identical(a: &Thing, b: &Thing) -> Result<bool, KernelError> {
    if !a.is_classical() || !b.is_classical() {
        return Err(KernelError::IdentityUndefined);
    }
    Ok(match (a, b) {
        (Thing::Macro(x), Thing::Macro(y)) => x == y,
        (Thing::Set(x), Thing::Set(y)) => x == y,
        _ => false,
    })
}

/// The weak singleton `[x]_z`: every element of `z` indistinguishable from
/// `x`.
pub fn weak_singleton(x: &Thing, z: &QSet) -> Result<QSet, KernelError> {
    match x {
        Thing::Micro(kind) => match z.count(kind) {
            0 => Err(KernelError::NotAMember(x.to_string())),
            n => Ok(QSet::from_counts([(kind.clone(), n)])),
        },
        other => {
            let member = other.clone().into_member().expect("non-micro thing");
            if z.contains_member(&member) {
                Ok(QSet::classical([]).with_member(member))
            } else {
                Err(KernelError::NotAMember(x.to_string()))
            }
        }
    }
}

/// The strong singleton `⟦x⟧_z` for a micro-atom of `kind`: a q-set of
/// quasi-cardinal one holding something of that kind from `z`. Which atom it
/// holds is not expressible.
pub fn strong_singleton(kind: &Kind, z: &QSet) -> Result<PureQSet, KernelError> {
    if z.count(kind) == 0 {
        return Err(KernelError::NotAMember(Thing::Micro(kind.clone()).to_string()));
    }
    Ok(PureQSet::new(kind.clone(), 1))
}

/// The weak pair `[x, y]_z`: elements of `z` indistinguishable from `x` or
/// from `y`.
pub fn weak_pair(x: &Thing, y: &Thing, z: &QSet) -> Result<QSet, KernelError> {
    match (weak_singleton(x, z), weak_singleton(y, z)) {
        (Ok(a), Ok(b)) => Ok(a.union(&b)),
        (Ok(a), Err(_)) | (Err(_), Ok(a)) => Ok(a),
        (Err(e), Err(_)) => Err(e),
    }
}

/// The weak ordered pair `⟨x, y⟩_z = [[x]_z, [x, y]_z]`, returned as the
/// literal nested q-set. When both components coincide the outer q-set has a
/// single member.
pub fn weak_ordered_pair(x: &Thing, y: &Thing, z: &QSet) -> Result<QSet, KernelError> {
    let first = weak_singleton(x, z)?;
    let second = weak_pair(x, y, z)?;
    Ok(QSet::classical([Member::Set(first), Member::Set(second)]))
}

/// A finite list of argument/value pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiFunction {
    pairs: Vec<(Thing, Thing)>,
}

impl QuasiFunction {
    /// Accepts `pairs` only if they map indistinguishable arguments to
    /// indistinguishable values.
    pub fn new(pairs: Vec<(Thing, Thing)>) -> Result<Self, KernelError> {
        if validate_quasi_function(&pairs) {
            Ok(QuasiFunction { pairs })
        } else {
            Err(KernelError::PreconditionFailed(
                "indistinguishable arguments have distinguishable values".into(),
            ))
        }
    }

    pub fn pairs(&self) -> &[(Thing, Thing)] {
        &self.pairs
    }

    /// Value assigned to anything indistinguishable from `arg`.
    pub fn image(&self, arg: &Thing) -> Option<&Thing> {
        self.pairs.iter().find(|(u, _)| indistinguishable(u, arg)).map(|(_, v)| v)
    }

    /// Rewrites every value with `f`, re-validating the result.
    pub fn map_values<F>(&self, mut f: F) -> Result<Self, KernelError>
    where
        F: FnMut(&Thing, &Thing) -> Thing,
    {
        QuasiFunction::new(self.pairs.iter().map(|(u, v)| (u.clone(), f(u, v))).collect())
    }
}

pub fn validate_quasi_function(pairs: &[(Thing, Thing)]) -> bool {
    pairs.iter().enumerate().all(|(i, (u, v))| {
        pairs[i + 1..]
            .iter()
            .all(|(w, z)| !indistinguishable(u, w) || indistinguishable(v, z))
    })
}

/// Swaps one `kind` atom of `x` for an indistinguishable atom of the pool `t`
/// lying outside `x`: computes `(x − ⟦z⟧_t) ∪ ⟦w⟧_t`.
///
/// Requires `kind` to occur in `x` and `t` to hold strictly more `kind` atoms
/// than `x`, so that some `w ≡ z` with `w ∉ x` exists.
pub fn permutation_swap(x: &QSet, kind: &Kind, t: &QSet) -> Result<QSet, KernelError> {
    let inside = x.count(kind);
    if inside == 0 {
        return Err(KernelError::PreconditionFailed(format!("kind {kind} does not occur in x")));
    }
    if t.count(kind) <= inside {
        return Err(KernelError::PreconditionFailed(format!(
            "the pool holds no {kind} atom outside x"
        )));
    }
    let z = strong_singleton(kind, x)?.to_qset();
    let w = strong_singleton(kind, t)?.to_qset();
    Ok(x.difference(&z).disjoint_union(&w))
}

/// Every q-set of micro-atoms drawn from `kinds` with quasi-cardinal at most
/// `max_total`, the empty q-set included.
pub fn enumerate_micro_qsets(kinds: &[Kind], max_total: u64) -> Vec<QSet> {
    fn recurse(kinds: &[Kind], remaining: u64, current: &mut Vec<(Kind, u64)>, out: &mut Vec<QSet>) {
        match kinds.split_first() {
            None => out.push(QSet::from_counts(current.iter().cloned())),
            Some((kind, rest)) => {
                for n in 0..=remaining {
                    current.push((kind.clone(), n));
                    recurse(rest, remaining - n, current, out);
                    current.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    recurse(kinds, max_total, &mut Vec::new(), &mut out);
    out
}
