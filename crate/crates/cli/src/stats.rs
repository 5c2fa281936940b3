use anyhow::Result;
use clap::Args;
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use qspace::statistics::{count_microstates, enumerate_microstates, format_ratio, Microstate, StatisticsKind};
use serde::{Deserialize, Serialize};

use crate::{default_cap, parse_statistics, OutputArgs, Outcome};

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Statistics: mb, be or fd.
    #[arg(long, value_parser = parse_statistics)]
    kind: StatisticsKind,
    /// Number of particles N.
    #[arg(long)]
    particles: u32,
    /// Number of one-particle levels C.
    #[arg(long)]
    levels: u32,
    /// List every microstate, not just the count.
    #[arg(long)]
    enumerate: bool,
    /// Refuse to enumerate more microstates than this.
    #[arg(long, default_value_t = default_cap(), value_parser = clap::value_parser!(u64).range(1..))]
    cap: u64,
    #[command(flatten)]
    output: OutputArgs,
}

/// JSON shape of the `stats` output.
#[derive(Debug, Serialize, Deserialize)]
pub struct StatsOutput {
    /// Exact count; a decimal string when it does not fit in 64 bits.
    pub count: serde_json::Value,
    /// Present only with `--enumerate`.
    pub microstates: Option<Vec<Microstate>>,
    /// Probability of each microstate, `null` when there are none.
    pub probability: Option<String>,
}

fn count_value(count: &BigUint) -> serde_json::Value {
    match count.to_u64() {
        Some(n) => n.into(),
        None => count.to_string().into(),
    }
}

pub fn run(args: StatsArgs) -> Result<Outcome> {
    let count = count_microstates(args.kind, args.particles, args.levels);
    let probability = (!count.is_zero()).then(|| format_ratio(&BigRational::new(1.into(), count.clone().into())));
    let microstates = if args.enumerate {
        Some(enumerate_microstates(args.kind, args.particles, args.levels, args.cap)?)
    } else {
        None
    };
    if args.output.json {
        let out = StatsOutput { count: count_value(&count), microstates, probability };
        println!("{}", serde_json::to_string(&out)?);
        return Ok(Outcome::Success);
    }
    println!("statistics: {}", args.kind);
    println!("particles: {}", args.particles);
    println!("levels: {}", args.levels);
    println!("count: {count}");
    println!("probability: {}", probability.as_deref().unwrap_or("undefined (no microstates)"));
    if let Some(states) = microstates {
        println!("microstates:");
        for s in &states {
            println!("  {s}");
        }
    }
    Ok(Outcome::Success)
}
