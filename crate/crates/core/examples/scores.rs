//! Human-normalized and relative scores.
//!
//! cargo run --example scores

use hyperq::exp::{normalized_score, relative_score};

fn main() -> hyperq::Result<()> {
    let (human, random) = (7_000.0, 250.0);
    for (game, ours, reference) in [
        ("a", 5_400.0, 4_100.0),
        ("b", 9_800.0, 8_700.0),
        ("c", 300.0, 900.0),
    ] {
        println!(
            "{game}: normalized {:.3} vs {:.3}, relative {:+.3}",
            normalized_score(ours, human, random)?,
            normalized_score(reference, human, random)?,
            relative_score(ours, reference, human, random)?
        );
    }
    match normalized_score(1.0, 3.0, 3.0) {
        Err(e) => println!("degenerate reference: {e}"),
        Ok(v) => println!("unexpected {v}"),
    }
    Ok(())
}
