//! Goal and real dumps in, rearrangement plan and overlay out.
//!
//! cargo run --release --example end_to_end_match -- [out_dir]

use std::path::PathBuf;

use paca::pipeline::{cmd_match, write_dump, MatchInputs, RunConfig};
use paca::synthetic::{Blob, SyntheticScene};
use paca::types::SceneMode;

fn main() -> paca::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));

    let goal = SyntheticScene::new(128, 128)
        .object("fork", vec![Blob::elongated(40.0, 30.0, 12.0, 2.0, 1.5)])
        .object("plate", vec![Blob::round(64.0, 64.0, 10.0)])
        .object("cup", vec![Blob::elongated(30.0, 100.0, 5.0, 3.0, 0.0), Blob::round(100.0, 100.0, 4.0)]);
    // The real table is messier: fork rotated, plate off-center, cups elsewhere.
    let real = SyntheticScene::new(128, 128)
        .object("fork", vec![Blob::elongated(90.0, 25.0, 12.0, 2.0, 0.9)])
        .object("plate", vec![Blob::round(70.0, 58.0, 10.0)])
        .object("cup", vec![Blob::round(20.0, 60.0, 4.0), Blob::elongated(105.0, 70.0, 5.0, 3.0, 0.6)])
        .mode(SceneMode::Real);

    let inputs = MatchInputs {
        goal_dump: out.join("goal.paca"),
        real_dump: out.join("real.paca"),
        ..Default::default()
    };
    write_dump(&inputs.goal_dump, &goal.stack()?, "synthetic-blobs")?;
    write_dump(&inputs.real_dump, &real.stack()?, "synthetic-blobs")?;

    let plan_path = out.join("plan.json");
    let overlay = out.join("overlay.png");
    let plan = cmd_match(&inputs, &RunConfig::default(), &plan_path, Some(&overlay))?;
    for (word, m) in plan.matches() {
        let t = m.transform;
        println!(
            "{word:>6}: real {} -> goal {}  dx {:7.2} dy {:7.2} theta {:6.3}  residual {:.3}",
            m.real_instance, m.goal_instance, t.dx, t.dy, t.theta, m.residual
        );
    }
    println!("plan: {}\noverlay: {}", plan_path.display(), overlay.display());
    Ok(())
}
