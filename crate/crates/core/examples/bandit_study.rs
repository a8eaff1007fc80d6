//! A reduced prediction study on structured bandits: every variant on 8
//! reward functions with 5 sub-actions per dimension. Pass a directory to
//! also write the CSVs and figures.
//!
//! cargo run --release --example bandit_study -- [OUT_DIR]

use std::path::PathBuf;

use hyperq::bandit::{run_prediction_study, StudyConfig};
use hyperq::exp::cmd_predict;
use hyperq::exp::config::PredictConfig;

fn main() -> hyperq::Result<()> {
    let mut study = StudyConfig {
        sizes: vec![5],
        ..StudyConfig::default()
    };
    study.train.seeds = 8;
    study.train.iterations = 100;

    let result = match std::env::args().nth(1) {
        Some(dir) => {
            let cfg = PredictConfig {
                study,
                out: PathBuf::from(dir),
            };
            let (result, files) = cmd_predict(&cfg)?;
            for f in files {
                println!("wrote {}", f.display());
            }
            result
        }
        None => run_prediction_study(&study)?,
    };
    println!("{:<9} {:>10} {:>9}", "variant", "final RMS", "stderr");
    for s in result.summary() {
        println!(
            "{:<9} {:>10.4} {:>9.4}",
            s.variant.to_string(),
            s.mean_final,
            s.stderr_final
        );
    }
    Ok(())
}
