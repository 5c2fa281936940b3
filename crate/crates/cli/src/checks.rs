use anyhow::Result;
use clap::Args;
use nalgebra::DMatrix;
use num_complex::Complex64;
use qspace::fock::{basis_inner, basis_kets, canonical_fermion_word, check_commutators, FermionWord};
use qspace::kernel::{enumerate_micro_qsets, indistinguishable, permutation_swap, Kind, Thing};
use qspace::labeled::{
    ip_expectation_check, labeled_inner, oracle_inner, symmetrize, LabeledAssignment, LabeledError, LabeledSpace,
    LabeledVector, Permutation, Sign,
};
use qspace::{FockSpace, LevelBasis, OccupationMap, ParticleKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{parse_kind, parse_tolerance, OutputArgs, Outcome, DEFAULT_TOLERANCE};

#[derive(Debug, Args)]
pub struct CommutatorArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ParticleKind,
    /// Number of levels in the basis.
    #[arg(long)]
    levels: usize,
    /// Largest total occupation of the basis states checked.
    #[arg(long)]
    max_occ: u32,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    tol: f64,
    /// How many violations to print at most.
    #[arg(long, default_value_t = 10)]
    max_reported: usize,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn commutators(args: CommutatorArgs) -> Result<Outcome> {
    let space = FockSpace::new(args.kind, LevelBasis::uniform(args.levels));
    let report = check_commutators(&space, args.max_occ, args.tol, args.max_reported)?;
    let describe = |v: &qspace::fock::Violation| {
        let relation = v.relation.map_or("number".to_string(), |r| r.label(args.kind).to_string());
        (relation, v.alpha, v.beta, v.ket.to_string(), v.residual)
    };
    if args.output.json {
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| {
                let (relation, alpha, beta, ket, residual) = describe(v);
                json!({ "relation": relation, "alpha": alpha, "beta": beta, "ket": ket, "residual": residual })
            })
            .collect();
        println!(
            "{}",
            json!({
                "kind": args.kind,
                "levels": args.levels,
                "max_occ": args.max_occ,
                "kets_checked": report.kets_checked,
                "max_residual": report.max_residual,
                "max_number_residual": report.max_number_residual,
                "tolerance": args.tol,
                "passed": report.passed(),
                "violations": violations,
            })
        );
    } else {
        println!("kind: {}  levels: {}  max occupation: {}", args.kind, args.levels, args.max_occ);
        println!("kets checked: {}", report.kets_checked);
        println!("max commutator residual: {:e}", report.max_residual);
        println!("max number-operator residual: {:e}", report.max_number_residual);
        println!("tolerance: {:e}", args.tol);
        for v in &report.violations {
            let (relation, alpha, beta, ket, residual) = describe(v);
            println!("VIOLATION {relation} alpha={alpha} beta={beta} ket={ket} residual={residual:e}");
        }
        println!("{}", if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(if report.passed() { Outcome::Success } else { Outcome::CheckFailed })
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Levels used for the occupation words.
    #[arg(long, default_value_t = 4)]
    levels: usize,
    /// Longest occupation word compared.
    #[arg(long, default_value_t = 4)]
    max_len: u32,
    /// Random observables in the expectation-value check.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = parse_tolerance)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

fn sort_sign(word: &[usize]) -> i128 {
    match canonical_fermion_word(word) {
        FermionWord::Signed { sign, .. } => sign as i128,
        FermionWord::NullNorm => 0,
    }
}

fn factorial(n: usize) -> i128 {
    (1..=n as i128).product()
}

fn words(len: usize, levels: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..levels.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let l = code % levels;
                code /= levels;
                l
            })
            .collect()
    })
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + a.adjoint()).unscale(2.0)
}

pub fn oracle(args: OracleArgs) -> Result<Outcome> {
    let mut failures: Vec<String> = Vec::new();

    // occupation inner products against permanent/determinant expansion
    let occs = basis_kets(ParticleKind::Boson, args.levels, args.max_len);
    let mut pairs = 0usize;
    for kind in [ParticleKind::Boson, ParticleKind::Fermion] {
        for a in &occs {
            for b in &occs {
                pairs += 1;
                let (fast, slow) = (basis_inner(kind, a, b), oracle_inner(kind, a, b));
                if fast != slow {
                    failures.push(format!("{kind} inner {a} {b}: {fast} vs oracle {slow}"));
                }
            }
        }
    }

    // labeled symmetrizers reproduce the occupation inner product
    let mut bridged = 0usize;
    let bridge_levels = args.levels.min(3);
    for len in 0..=3usize {
        for w in words(len, bridge_levels) {
            for w2 in words(len, bridge_levels) {
                bridged += 1;
                let (o1, o2) = (OccupationMap::from_word(&w), OccupationMap::from_word(&w2));
                let sym = labeled_inner(&symmetrize(&w, Sign::Plus), &symmetrize(&w2, Sign::Plus));
                let expected = factorial(len) * oracle_inner(ParticleKind::Boson, &o1, &o2);
                if sym != Complex64::new(expected as f64, 0.0) {
                    failures.push(format!("symmetric bridge {w:?} {w2:?}: {sym} vs {expected}"));
                }
                let anti = labeled_inner(&symmetrize(&w, Sign::Minus), &symmetrize(&w2, Sign::Minus));
                let expected =
                    factorial(len) * sort_sign(&w) * sort_sign(&w2) * oracle_inner(ParticleKind::Fermion, &o1, &o2);
                if anti != Complex64::new(expected as f64, 0.0) {
                    failures.push(format!("antisymmetric bridge {w:?} {w2:?}: {anti} vs {expected}"));
                }
            }
        }
    }

    // expectation values of group-averaged observables ignore label permutations
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut worst = 0.0f64;
    let mut wrongly_accepted = 0usize;
    for sample in 0..args.samples {
        let space = LabeledSpace::new(2 + sample % 2, rng.gen_range(2..=3));
        let raw = random_hermitian(&mut rng, space.dim());
        let observable = space.group_average(&raw)?;
        let psi = LabeledVector::from_terms((0..space.dim()).map(|i| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            (LabeledAssignment(space.assignment(i)), c)
        }));
        for p in Permutation::all(space.particles) {
            let (lhs, rhs) = ip_expectation_check(&space, &observable, &psi, &p)?;
            worst = worst.max((lhs - rhs).abs());
            if p != Permutation::identity(space.particles)
                && !matches!(
                    ip_expectation_check(&space, &raw, &psi, &p),
                    Err(LabeledError::NotPermutationCompatible(_))
                )
            {
                wrongly_accepted += 1;
            }
        }
    }
    if worst > args.tol {
        failures.push(format!("expectation values differ by {worst:e}"));
    }
    if wrongly_accepted > 0 {
        failures.push(format!("{wrongly_accepted} incompatible observables were accepted"));
    }

    let passed = failures.is_empty();
    if args.output.json {
        println!(
            "{}",
            json!({
                "inner_pairs": pairs,
                "bridge_pairs": bridged,
                "observables": args.samples,
                "seed": args.seed,
                "max_expectation_difference": worst,
                "tolerance": args.tol,
                "passed": passed,
                "failures": failures,
            })
        );
    } else {
        println!("inner products compared: {pairs}");
        println!("symmetrizer pairs compared: {bridged}");
        println!("observables sampled: {} (seed {})", args.samples, args.seed);
        println!("max expectation difference: {worst:e}");
        println!("tolerance: {:e}", args.tol);
        for f in &failures {
            println!("MISMATCH {f}");
        }
        println!("{}", if passed { "PASS" } else { "FAIL" });
    }
    Ok(if passed { Outcome::Success } else { Outcome::CheckFailed })
}

#[derive(Debug, Args)]
pub struct PermutationArgs {
    /// Largest total number of atoms in the multisets.
    #[arg(long, default_value_t = 5)]
    max_atoms: u64,
    /// Number of distinct kinds, at most 26.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=26))]
    kinds: u8,
    /// Print every swap, not just the summary.
    #[arg(long)]
    verbose: bool,
    #[command(flatten)]
    output: OutputArgs,
}

pub fn permutation(args: PermutationArgs) -> Result<Outcome> {
    let kinds: Vec<Kind> = (0..args.kinds).map(|i| Kind::new(char::from(b'a' + i).to_string())).collect();
    let all = enumerate_micro_qsets(&kinds, args.max_atoms);
    let mut swaps = 0usize;
    let mut changed = Vec::new();
    for x in &all {
        for t in &all {
            for kind in &kinds {
                let Ok(out) = permutation_swap(x, kind, t) else { continue };
                swaps += 1;
                let same = indistinguishable(&Thing::Set(out.clone()), &Thing::Set(x.clone()));
                if args.verbose && !args.output.json {
                    println!("swap {kind} in {x} against {t} -> {out}{}", if same { "" } else { "  CHANGED" });
                }
                if !same {
                    changed.push(format!("{x} in {t} by {kind} -> {out}"));
                }
            }
        }
    }
    let passed = changed.is_empty();
    if args.output.json {
        println!(
            "{}",
            json!({
                "multisets": all.len(),
                "swaps": swaps,
                "changed": changed,
                "passed": passed,
            })
        );
    } else {
        println!("multisets: {}  kinds: {}  max atoms: {}", all.len(), args.kinds, args.max_atoms);
        println!("swaps performed: {swaps}");
        println!("results distinguishable from the original: {}", changed.len());
        for c in &changed {
            println!("CHANGED {c}");
        }
        println!("{}", if passed { "PASS" } else { "FAIL" });
    }
    Ok(if passed { Outcome::Success } else { Outcome::CheckFailed })
}
