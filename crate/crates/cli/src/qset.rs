use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Subcommand};
use qspace::kernel::{permutation_swap, strong_singleton, weak_singleton, Kind, QSet, Thing};
use serde_json::json;

use crate::{read_json, write_json, OutputArgs, Outcome};

#[derive(Debug, Subcommand)]
pub enum QsetCommand {
    /// Summarize a q-set: quasi-cardinal, kinds and classical members.
    Inspect(InspectArgs),
    /// The q-set of everything in `--in` indistinguishable from one atom of `--kind`.
    Singleton(SingletonArgs),
    /// Remove one atom of `--kind` from `--in` and add one back from `--pool`.
    Swap(SwapArgs),
}

#[derive(Debug, Args)]
pub struct InspectArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SingletonArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    kind: String,
    /// Return a q-set with exactly one such atom instead of all of them.
    #[arg(long)]
    strong: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SwapArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    pool: PathBuf,
    #[arg(long)]
    kind: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(cmd: QsetCommand) -> Result<Outcome> {
    match cmd {
        QsetCommand::Inspect(args) => {
            let q: QSet = read_json(&args.input)?;
            let pure = q.as_pure();
            if args.output.json {
                println!(
                    "{}",
                    json!({
                        "qcard": q.qcard(),
                        "classical": q.is_classical(),
                        "pure_kind": pure.as_ref().map(|p| p.kind.as_str()),
                        "kinds": q.kinds().map(|(k, n)| (k.as_str().to_string(), n)).collect::<std::collections::BTreeMap<_, _>>(),
                        "members": q.members().count(),
                        "canonical": q,
                    })
                );
            } else {
                println!("q-set: {q}");
                println!("quasi-cardinal: {}", q.qcard());
                for (kind, n) in q.kinds() {
                    println!("  {kind}: {n}");
                }
                println!("classical members: {}", q.members().count());
                println!("classical: {}", q.is_classical());
                match pure {
                    Some(p) => println!("pure: yes, of kind {}", p.kind),
                    None => println!("pure: no"),
                }
            }
        }
        QsetCommand::Singleton(args) => {
            let z: QSet = read_json(&args.input)?;
            let kind = Kind::new(args.kind);
            let s = if args.strong {
                strong_singleton(&kind, &z)?.to_qset()
            } else {
                weak_singleton(&Thing::Micro(kind), &z)?
            };
            write_json(&s, args.out.as_ref())?;
        }
        QsetCommand::Swap(args) => {
            let x: QSet = read_json(&args.input)?;
            let pool: QSet = read_json(&args.pool)?;
            let out = permutation_swap(&x, &Kind::new(args.kind), &pool)?;
            write_json(&out, args.out.as_ref())?;
            eprintln!("unchanged: {}", out == x);
        }
    }
    Ok(Outcome::Success)
}
