//! File formats and the `hough`, `match` and `eval` commands.

pub mod config;
pub mod dump;
pub mod eval;
pub mod hough;
pub mod io;
pub mod overlay;
pub mod plan;
pub mod scene;

pub use config::{Mode, RunConfig};
pub use dump::{read_dump, write_dump, DumpManifest};
pub use eval::{cmd_eval, score_plan, Dataset, DatasetPair, EvalReport, GroundTruth};
pub use hough::{cmd_hough, perspective_control, HoughReport};
pub use overlay::render_overlay;
pub use plan::{Plan, PlanMatch, PlanObject, Provenance};
pub use scene::{cmd_match, match_stacks, shared_words, DepthInputs, MatchInputs, MatchOutput, WordInstances};
