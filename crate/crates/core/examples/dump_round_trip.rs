//! Writing and reading a PACA attention dump.
//!
//! cargo run --example dump_round_trip

use paca::pipeline::{read_dump, write_dump};
use paca::synthetic::{Blob, SyntheticScene};

fn main() -> paca::Result<()> {
    let dir = std::env::temp_dir().join("paca-dump-example");
    std::fs::create_dir_all(&dir).expect("create temp dir");
    let path = dir.join("goal.paca");

    let scene = SyntheticScene::new(64, 64)
        .object("mug", vec![Blob::elongated(20.0, 22.0, 5.0, 2.5, 0.3)])
        .object("plate", vec![Blob::round(42.0, 40.0, 8.0)]);
    let stack = scene.stack()?;
    write_dump(&path, &stack, "synthetic-blobs")?;

    let back = read_dump(&path)?;
    assert_eq!(back, stack);
    println!("{} bytes, tokens {:?}", std::fs::metadata(&path).unwrap().len(), back.tokens());
    println!("timesteps {:?}, dump {:?}, canon {:?}", back.timesteps(), back.dump_shape(), back.canonical_shape());
    let rep = back.representation("plate", 0.3, 0.9)?;
    println!("plate: {} region px, {} feature px", rep.count_at_least(1), rep.count_at_least(2));
    Ok(())
}
