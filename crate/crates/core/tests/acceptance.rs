//! Acceptance criteria. Each test prints one PASS/FAIL line; run with
//! `cargo test -p qspace --test acceptance -- --nocapture` to see them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use qspace::fock::{basis_inner, basis_kets, check_commutators, from_quasi_function, to_quasi_function};
use qspace::kernel::{
    enumerate_micro_qsets, indistinguishable, permutation_swap, weak_ordered_pair, Kind, Member, QSet, Thing,
};
use qspace::labeled::{ip_expectation_check, oracle_inner, LabeledAssignment, LabeledError, LabeledSpace, LabeledVector, Permutation};
use qspace::statistics::{equiprobability_table, planck_weight, Microstate, StatisticsKind, DEFAULT_ENUMERATION_CAP};
use qspace::{FockSpace, LevelBasis, OccupationMap, ParticleKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RESIDUAL_TOLERANCE: f64 = 1e-9;
const IP_TOLERANCE: f64 = 1e-9;

fn report(id: &str, name: &str, ok: bool, elapsed: Duration, limit: Option<Duration>, detail: String) {
    let in_time = limit.is_none_or(|l| elapsed < l);
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    let budget = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
    println!("[{status}] {id} {name}: {detail}; {elapsed:.2?}{budget}");
    assert!(ok, "{id} failed: {detail}");
    assert!(in_time, "{id} exceeded its time budget: {elapsed:?}");
}

#[test]
fn ac1_statistics_tables() {
    let start = Instant::now();
    let ratio = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut problems = Vec::new();
    for (kind, count, p) in [
        (StatisticsKind::MaxwellBoltzmann, 4, ratio(1, 4)),
        (StatisticsKind::BoseEinstein, 3, ratio(1, 3)),
        (StatisticsKind::FermiDirac, 1, ratio(1, 1)),
    ] {
        let table = equiprobability_table(kind, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap();
        if table.len() != count || table.iter().any(|(_, q)| *q != p) {
            problems.push(format!("{kind}: {} states", table.len()));
        }
    }
    let be: BTreeSet<Microstate> =
        equiprobability_table(StatisticsKind::BoseEinstein, 2, 2, 10).unwrap().into_iter().map(|(s, _)| s).collect();
    let listed: BTreeSet<Microstate> =
        [vec![2, 0], vec![0, 2], vec![1, 1]].into_iter().map(Microstate::Occupation).collect();
    if be != listed {
        problems.push("BE states differ from the three listed cases".into());
    }
    report(
        "AC1",
        "statistics tables N=2 C=2",
        problems.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(1)),
        if problems.is_empty() { "MB 4 x 1/4, BE 3 x 1/3, FD 1 x 1".into() } else { problems.join(", ") },
    );
}

/// Distinct occupation vectors over all labeled placements.
fn occupation_vectors_by_brute_force(particles: usize, cells: usize) -> usize {
    let mut seen = BTreeSet::new();
    for mut code in 0..cells.pow(particles as u32) {
        let mut occ = vec![0u32; cells];
        for _ in 0..particles {
            occ[code % cells] += 1;
            code /= cells;
        }
        seen.insert(occ);
    }
    seen.len()
}

#[test]
fn ac2_planck_formula() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 0..=6u32 {
        for c in 1..=5u32 {
            checked += 1;
            let oracle = occupation_vectors_by_brute_force(n as usize, c as usize);
            if planck_weight(n, c) != BigUint::from(oracle) {
                mismatches.push(format!("N={n} C={c}"));
            }
        }
    }
    report(
        "AC2",
        "Planck weight vs exhaustive enumeration",
        mismatches.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(5)),
        format!("{checked} grid points, mismatches: {mismatches:?}"),
    );
}

#[test]
fn ac3_oracle_equivalence() {
    let start = Instant::now();
    // every multiset of size <= 4 over 4 levels
    let occs = basis_kets(ParticleKind::Boson, 4, 4);
    let mut pairs = 0;
    let mut mismatches = Vec::new();
    for kind in [ParticleKind::Boson, ParticleKind::Fermion] {
        for a in &occs {
            for b in &occs {
                pairs += 1;
                let fast = basis_inner(kind, a, b);
                let oracle = oracle_inner(kind, a, b);
                if fast != oracle {
                    mismatches.push(format!("{kind} {a} {b}: {fast} vs {oracle}"));
                }
            }
        }
    }
    report(
        "AC3",
        "inner product = permanent/determinant oracle",
        mismatches.is_empty(),
        start.elapsed(),
        Some(Duration::from_secs(30)),
        format!("{} words, {pairs} pairs, {} mismatches", occs.len(), mismatches.len()),
    );
}

#[test]
fn ac4_bosonic_algebra() {
    let start = Instant::now();
    let space = FockSpace::new(ParticleKind::Boson, LevelBasis::uniform(4));
    let r = check_commutators(&space, 6, RESIDUAL_TOLERANCE, 10).unwrap();
    let ok = r.max_residual < RESIDUAL_TOLERANCE && r.max_number_residual < RESIDUAL_TOLERANCE;
    report(
        "AC4",
        "bosonic commutators and number operator",
        ok,
        start.elapsed(),
        None,
        format!(
            "{} kets, max commutator residual {:e}, max number residual {:e}",
            r.kets_checked, r.max_residual, r.max_number_residual
        ),
    );
}

#[test]
fn ac5_fermionic_algebra() {
    let start = Instant::now();
    let levels = 5;
    let space = FockSpace::new(ParticleKind::Fermion, LevelBasis::uniform(levels));
    let r = check_commutators(&space, levels as u32, RESIDUAL_TOLERANCE, 10).unwrap();
    // every word with a repeated level, up to length 5
    let mut repeated = 0;
    let mut not_null = Vec::new();
    for len in 2..=levels {
        for mut code in 0..levels.pow(len as u32) {
            let word: Vec<usize> = (0..len)
                .map(|_| {
                    let l = code % levels;
                    code /= levels;
                    l
                })
                .collect();
            let occ = OccupationMap::from_word(&word);
            if occ.has_repeat() {
                repeated += 1;
                if basis_inner(ParticleKind::Fermion, &occ, &occ) != 0 {
                    not_null.push(word);
                }
            }
        }
    }
    let ok = r.max_residual < RESIDUAL_TOLERANCE && r.max_number_residual < RESIDUAL_TOLERANCE && not_null.is_empty();
    report(
        "AC5",
        "fermionic anticommutators up to similarity, Pauli exclusion",
        ok,
        start.elapsed(),
        None,
        format!(
            "{} kets, max residual {:e}; {repeated} repeated words, {} not null",
            r.kets_checked,
            r.max_residual,
            not_null.len()
        ),
    );
}

#[test]
fn ac6_unobservability_of_permutations() {
    let start = Instant::now();
    let kinds: Vec<Kind> = ["a", "b", "c"].iter().map(|k| Kind::new(*k)).collect();
    let all = enumerate_micro_qsets(&kinds, 5);
    let mut swaps = 0;
    let mut failures = Vec::new();
    for x in &all {
        for t in &all {
            for kind in &kinds {
                if let Ok(out) = permutation_swap(x, kind, t) {
                    swaps += 1;
                    if out != *x || !indistinguishable(&Thing::Set(out.clone()), &Thing::Set(x.clone())) {
                        failures.push(format!("{x} in {t}"));
                    }
                }
            }
        }
    }
    report(
        "AC6",
        "permutation swap leaves q-sets unchanged",
        failures.is_empty() && swaps > 0,
        start.elapsed(),
        None,
        format!("{} multisets, {swaps} swaps, {} changed", all.len(), failures.len()),
    );
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()).unscale(2.0)
}

#[test]
fn ac7_indistinguishability_postulate() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut worst = 0.0f64;
    let mut checks = 0;
    let mut refused = 0;
    let mut accepted_raw = 0;
    for sample in 0..200 {
        let particles = if sample % 2 == 0 { 2 } else { 3 };
        let levels = rng.gen_range(2..=3);
        let space = LabeledSpace::new(particles, levels);
        let raw = random_hermitian(&mut rng, space.dim());
        let observable = space.group_average(&raw).unwrap();
        let psi = LabeledVector::from_terms((0..space.dim()).map(|i| {
            (LabeledAssignment(space.assignment(i)), Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        }));
        for p in Permutation::all(particles) {
            let (lhs, rhs) = ip_expectation_check(&space, &observable, &psi, &p).unwrap();
            worst = worst.max((lhs - rhs).abs());
            checks += 1;
            if p != Permutation::identity(particles) {
                match ip_expectation_check(&space, &raw, &psi, &p) {
                    Err(LabeledError::NotPermutationCompatible(_)) => refused += 1,
                    _ => accepted_raw += 1,
                }
            }
        }
    }
    report(
        "AC7",
        "expectation values invariant under label permutations",
        worst <= IP_TOLERANCE && accepted_raw == 0,
        start.elapsed(),
        None,
        format!("200 observables, {checks} checks, max |lhs-rhs| {worst:e}; {refused} incompatible refused, {accepted_raw} wrongly accepted"),
    );
}

#[test]
fn ac8_bridge_invariance() {
    let start = Instant::now();
    let levels = 3;
    let basis = LevelBasis::uniform(levels);
    let kind = Kind::new("e");
    let mut functions = 0;
    let mut swaps = 0;
    let mut failures = Vec::new();
    for code in 0..5usize.pow(levels as u32) {
        let counts: Vec<u32> = (0..levels).map(|i| (code / 5usize.pow(i as u32) % 5) as u32).collect();
        let occ = OccupationMap::from_counts(counts.iter().enumerate().filter(|(_, &n)| n > 0).map(|(l, &n)| (l, n)))
            .unwrap();
        let qf = to_quasi_function(&occ, &basis, &kind).unwrap();
        functions += 1;
        if from_quasi_function(&qf, &basis).unwrap() != occ {
            failures.push(format!("{occ}: round trip"));
        }
        // exchange one atom between the images of levels i and j
        for i in 0..levels {
            for j in 0..levels {
                if i == j || counts[i] == 0 || counts[j] == 0 {
                    continue;
                }
                let image = |l: usize| match qf.image(&basis.atom(l).unwrap()) {
                    Some(Thing::Set(q)) => q.clone(),
                    _ => unreachable!(),
                };
                let (x, y) = (image(i), image(j));
                let pool = x.disjoint_union(&y);
                let swapped = qf
                    .map_values(|arg, v| {
                        let level = basis.index_of(arg).unwrap();
                        match v {
                            Thing::Set(q) if level == i => Thing::Set(permutation_swap(q, &kind, &pool).unwrap()),
                            Thing::Set(q) if level == j => Thing::Set(permutation_swap(q, &kind, &pool).unwrap()),
                            other => other.clone(),
                        }
                    })
                    .unwrap();
                swaps += 1;
                if from_quasi_function(&swapped, &basis).unwrap() != occ {
                    failures.push(format!("{occ}: swap {i}<->{j}"));
                }
                // the weak ordered pairs <eps_i, x> are unchanged as well
                let eps = basis.atom(i).unwrap();
                let pair_of = |img: &QSet| {
                    let z = QSet::classical([Member::Atom(basis.levels()[i].value.to_string()), Member::Set(img.clone())]);
                    weak_ordered_pair(&eps, &Thing::Set(img.clone()), &z).unwrap()
                };
                let after = match swapped.image(&eps) {
                    Some(Thing::Set(q)) => q.clone(),
                    _ => unreachable!(),
                };
                if pair_of(&x) != pair_of(&after) {
                    failures.push(format!("{occ}: ordered pair at {i}"));
                }
            }
        }
    }
    report(
        "AC8",
        "occupation maps invariant under atom permutations",
        failures.is_empty(),
        start.elapsed(),
        None,
        format!("{functions} quasi-functions, {swaps} swaps, failures: {failures:?}"),
    );
}
