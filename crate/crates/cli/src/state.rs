use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use qspace::fock::{inner, is_null_norm, norm, StateFile};
use qspace::{FockSpace, FockVector, LevelBasis, ParticleKind};
use serde_json::json;

use crate::checks::{self, CommutatorArgs};
use crate::{parse_kind, read_json, write_json, OutputArgs, Outcome};

#[derive(Debug, Subcommand)]
pub enum StateCommand {
    /// Write the state built from a word of level indices, e.g. `--word 0,0,2`.
    New(NewArgs),
    /// Inner product of two states (conjugate-linear in the first).
    Inner(InnerArgs),
    /// Norm of a state.
    Norm(NormArgs),
    /// Apply one creation or annihilation operator.
    Apply(ApplyArgs),
    /// Same as the top-level `check-commutators`.
    CheckCommutators(CommutatorArgs),
}

#[derive(Debug, Args)]
pub struct NewArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: ParticleKind,
    /// Comma-separated level indices; empty for the vacuum.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    word: Vec<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InnerArgs {
    /// Left and right state files, in that order.
    #[arg(long = "in", num_args = 1, required = true)]
    inputs: Vec<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NormArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Op {
    Create,
    Annihilate,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    level: usize,
    /// Size of the level basis; defaults to the smallest one holding the
    /// state and the target level.
    #[arg(long)]
    levels: Option<usize>,
    /// Must match the kind recorded in the input file when given.
    #[arg(long, value_parser = parse_kind)]
    kind: Option<ParticleKind>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load(path: &Path, expected: Option<ParticleKind>) -> Result<(ParticleKind, FockVector)> {
    let file: StateFile = read_json(path)?;
    if let Some(kind) = expected {
        if kind != file.kind {
            bail!("{} holds a {} state, not {kind}", path.display(), file.kind);
        }
    }
    Ok((file.kind, file.vector()))
}

pub fn run(cmd: StateCommand) -> Result<Outcome> {
    match cmd {
        StateCommand::New(args) => {
            let v = FockVector::from_word(args.kind, &args.word);
            write_json(&StateFile::new(args.kind, &v), args.out.as_ref())?;
        }
        StateCommand::Inner(args) => {
            let [left, right] = args.inputs.as_slice() else {
                bail!("inner needs exactly two --in files, got {}", args.inputs.len());
            };
            let (kind, v) = load(left, None)?;
            let (_, w) = load(right, Some(kind))?;
            let z = inner(kind, &v, &w);
            if args.output.json {
                println!("{}", json!({ "kind": kind, "inner": [z.re, z.im] }));
            } else {
                println!("inner: {} {:+}i", z.re, z.im);
            }
        }
        StateCommand::Norm(args) => {
            let (kind, v) = load(&args.input, None)?;
            let n = norm(kind, &v)?;
            let null_norm = !v.is_zero() && is_null_norm(kind, &v);
            if args.output.json {
                println!("{}", json!({ "kind": kind, "norm": n, "null_norm": null_norm }));
            } else {
                println!("norm: {n}");
                if null_norm {
                    println!("the state is nonzero but has null norm");
                }
            }
        }
        StateCommand::Apply(args) => {
            let (kind, v) = load(&args.input, args.kind)?;
            let needed = v.max_level().map_or(0, |l| l + 1).max(args.level + 1);
            let levels = args.levels.unwrap_or(needed);
            if levels < needed {
                bail!("--levels {levels} is too small for this state and level {}", args.level);
            }
            let space = FockSpace::new(kind, LevelBasis::uniform(levels));
            let out = match args.op {
                Op::Create => space.create(args.level, &v),
                Op::Annihilate => space.annihilate(args.level, &v),
            }
            .context("applying operator")?;
            write_json(&StateFile::new(kind, &out), args.out.as_ref())?;
        }
        StateCommand::CheckCommutators(args) => return checks::commutators(args),
    }
    Ok(Outcome::Success)
}
