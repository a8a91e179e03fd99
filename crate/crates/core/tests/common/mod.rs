#![allow(dead_code)]

use std::path::{Path, PathBuf};

use paca::pipeline::write_dump;
use paca::synthetic::{Blob, SyntheticScene};
use paca::types::SceneMode;

/// 128x128 dumps; at the 512 canon one dump pixel is four engine pixels.
pub const DUMP: usize = 128;

pub fn tabletop() -> SyntheticScene {
    SyntheticScene::new(DUMP, DUMP)
        .object("mug", vec![Blob::elongated(40.0, 40.0, 6.0, 3.0, 0.4)])
        .object(
            "apple",
            vec![
                Blob::round(90.0, 85.0, 4.0),
                Blob::elongated(85.0, 30.0, 7.0, 2.5, -0.6),
            ],
        )
}

/// Same objects, with the two apples in each other's places.
pub fn tabletop_swapped() -> SyntheticScene {
    SyntheticScene::new(DUMP, DUMP)
        .object("mug", vec![Blob::elongated(45.0, 42.0, 6.0, 3.0, 0.4)])
        .object(
            "apple",
            vec![
                Blob::elongated(90.0, 85.0, 7.0, 2.5, -0.6),
                Blob::round(85.0, 30.0, 4.0),
            ],
        )
        .mode(SceneMode::Real)
}

pub fn write_scene(dir: &Path, name: &str, scene: &SyntheticScene) -> PathBuf {
    let path = dir.join(format!("{name}.paca"));
    write_dump(&path, &scene.stack().unwrap(), "synthetic").unwrap();
    path
}
