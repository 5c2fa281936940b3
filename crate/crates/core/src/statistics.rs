//! Microstate counting for Maxwell–Boltzmann, Bose–Einstein and Fermi–Dirac
//! statistics. All arithmetic is exact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on the number of microstates [`enumerate_microstates`]
/// will produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatisticsError {
    #[error("{count} microstates exceed the enumeration cap of {cap}")]
    CapExceeded { count: BigUint, cap: u64 },
    #[error("unknown statistics kind {0:?} (expected mb, be or fd)")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StatisticsKind {
    #[serde(rename = "mb")]
    MaxwellBoltzmann,
    #[serde(rename = "be")]
    BoseEinstein,
    #[serde(rename = "fd")]
    FermiDirac,
}

impl StatisticsKind {
    pub const ALL: [StatisticsKind; 3] = [
        StatisticsKind::MaxwellBoltzmann,
        StatisticsKind::BoseEinstein,
        StatisticsKind::FermiDirac,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            StatisticsKind::MaxwellBoltzmann => "mb",
            StatisticsKind::BoseEinstein => "be",
            StatisticsKind::FermiDirac => "fd",
        }
    }
}

impl fmt::Display for StatisticsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for StatisticsKind {
    type Err = StatisticsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mb" => Ok(StatisticsKind::MaxwellBoltzmann),
            "be" => Ok(StatisticsKind::BoseEinstein),
            "fd" => Ok(StatisticsKind::FermiDirac),
            _ => Err(StatisticsError::UnknownKind(s.to_string())),
        }
    }
}

/// One way of distributing particles over states.
///
/// Labeled microstates record which state each particle (by position) is in.
/// Occupation microstates record only how many particles sit in each state.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Microstate {
    Labeled(Vec<usize>),
    Occupation(Vec<u32>),
}

impl Microstate {
    pub fn values(&self) -> Vec<u64> {
        match self {
            Microstate::Labeled(v) => v.iter().map(|&x| x as u64).collect(),
            Microstate::Occupation(v) => v.iter().map(|&x| x as u64).collect(),
        }
    }
}

impl fmt::Display for Microstate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Microstate::Labeled(states) => {
                let parts: Vec<String> = states
                    .iter()
                    .enumerate()
                    .map(|(p, s)| format!("{}->{}", p + 1, state_name(*s)))
                    .collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
            Microstate::Occupation(occ) => {
                let parts: Vec<String> = occ.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// `A`, `B`, ... for the first 26 states, `s26`, `s27`, ... after that.
fn state_name(index: usize) -> String {
    if index < 26 {
        char::from(b'A' + index as u8).to_string()
    } else {
        format!("s{index}")
    }
}

/// Bose–Einstein weight `(N + C − 1)! / (N! (C − 1)!)`: the number of ways to
/// place `particles` indistinguishable particles in `cells` cells.
///
/// With zero cells there is one (empty) arrangement of zero particles and none
/// otherwise.
pub fn planck_weight(particles: u32, cells: u32) -> BigUint {
    if cells == 0 {
        return if particles == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(BigUint::from(particles + cells - 1), BigUint::from(particles))
}

pub fn count_microstates(kind: StatisticsKind, particles: u32, cells: u32) -> BigUint {
    match kind {
        StatisticsKind::MaxwellBoltzmann => BigUint::from(cells).pow(particles),
        StatisticsKind::BoseEinstein => planck_weight(particles, cells),
        StatisticsKind::FermiDirac => {
            if particles > cells {
                BigUint::zero()
            } else {
                binomial(BigUint::from(cells), BigUint::from(particles))
            }
        }
    }
}

/// Lists every microstate.
///
/// Labeled microstates come in lexicographic order of the particle-to-state
/// assignment; occupation vectors in descending lexicographic order, so the
/// state with everything in the first cell comes first.
pub fn enumerate_microstates(
    kind: StatisticsKind,
    particles: u32,
    cells: u32,
    cap: u64,
) -> Result<Vec<Microstate>, StatisticsError> {
    let count = count_microstates(kind, particles, cells);
    if count > BigUint::from(cap) {
        return Err(StatisticsError::CapExceeded { count, cap });
    }
    let states = match kind {
        StatisticsKind::MaxwellBoltzmann => labeled_assignments(particles as usize, cells as usize)
            .into_iter()
            .map(Microstate::Labeled)
            .collect(),
        StatisticsKind::BoseEinstein => occupation_vectors(particles, cells as usize, particles)
            .into_iter()
            .map(Microstate::Occupation)
            .collect(),
        StatisticsKind::FermiDirac => occupation_vectors(particles, cells as usize, 1)
            .into_iter()
            .map(Microstate::Occupation)
            .collect(),
    };
    Ok(states)
}

/// Every microstate paired with its probability under equiprobability.
pub fn equiprobability_table(
    kind: StatisticsKind,
    particles: u32,
    cells: u32,
    cap: u64,
) -> Result<Vec<(Microstate, BigRational)>, StatisticsError> {
    let states = enumerate_microstates(kind, particles, cells, cap)?;
    let p = uniform_probability(states.len() as u64);
    Ok(states.into_iter().map(|s| (s, p.clone())).collect())
}

fn uniform_probability(count: u64) -> BigRational {
    if count == 0 {
        return BigRational::zero();
    }
    BigRational::new(1.into(), count.into())
}

fn labeled_assignments(particles: usize, cells: usize) -> Vec<Vec<usize>> {
    if cells == 0 {
        return if particles == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut current = vec![0usize; particles];
    loop {
        out.push(current.clone());
        // odometer increment, last particle fastest
        let mut pos = particles;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < cells {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// Occupation vectors of length `cells` summing to `total` with every entry
/// at most `max_each`, in descending lexicographic order.
fn occupation_vectors(total: u32, cells: usize, max_each: u32) -> Vec<Vec<u32>> {
    fn recurse(
        remaining: u32,
        cell: usize,
        cells: usize,
        max_each: u32,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if cell == cells {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let room_after = (cells - cell - 1) as u64 * max_each as u64;
        let hi = remaining.min(max_each);
        for n in (0..=hi).rev() {
            if ((remaining - n) as u64) > room_after {
                break;
            }
            current.push(n);
            recurse(remaining - n, cell + 1, cells, max_each, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    recurse(total, 0, cells, max_each, &mut Vec::with_capacity(cells), &mut out);
    out
}

/// Number of labeled assignments realising an occupation vector:
/// `N! / (n_1! ... n_C!)`.
pub fn multinomial(occupations: &[u32]) -> BigUint {
    let mut result = BigUint::one();
    let mut placed = 0u32;
    for &n in occupations {
        placed += n;
        result *= binomial(BigUint::from(placed), BigUint::from(n));
    }
    result
}

/// Renders a probability as `p/q`.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Lossy conversion for display.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
