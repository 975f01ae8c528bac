//! Sweeps the kick strength of the disturbing readout and prints, for each
//! value, the largest disturbance entry and the pairwise Leggett-Garg value.
//! The `lgi-holds-d-nonzero` fixture uses a kick picked from this table: big
//! disturbance, inequality still satisfied.
//!
//!     cargo run -p lglab --example kick_sweep

use lglab::lg::{check_implication_chain, disturbance_report, DEFAULT_OPND_DEPTH};
use lglab::zoo::{fixtures::LGI_FIXTURE_KICK, kicked_readout_bundle};

fn main() -> lglab::Result<()> {
    println!("{:>6} {:>10} {:>12}  chain", "kick", "max|D|", "lg_pairwise");
    for i in 0..=20 {
        let kick = f64::from(i) / 20.0;
        let a = kicked_readout_bundle(kick)?.arrangement(None)?;
        let r = disturbance_report(&a)?;
        let chain = check_implication_chain(&a, DEFAULT_OPND_DEPTH)?;
        let mark = if kick == LGI_FIXTURE_KICK { "  <- fixture" } else { "" };
        println!(
            "{kick:>6.2} {:>10.4} {:>12.4}  {:?}{mark}",
            r.max_abs_d(),
            r.lg_pairwise,
            chain.as_tuple()
        );
    }
    Ok(())
}
