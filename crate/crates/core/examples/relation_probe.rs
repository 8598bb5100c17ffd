//! Integer relations `H = pG + q` by lattice reduction, and their denominators.

use catalan_forms::group::{minimal_slack, probe_denominators, probe_vectors, RelationOutcome};
use num_bigint::BigInt;

fn main() -> catalan_forms::Result<()> {
    let rows = probe_denominators(&probe_vectors(), 256, 8, &BigInt::from(10u64.pow(12)))?;
    for r in &rows {
        match &r.relation {
            RelationOutcome::Found { p, q } => println!(
                "{:12} H = ({p})·G + ({q}); bound {} divides: {:?}; least slack {:?}",
                r.name,
                r.bound,
                r.divides,
                minimal_slack(r, 16)
            ),
            other => println!("{:12} {other:?}", r.name),
        }
    }
    Ok(())
}
