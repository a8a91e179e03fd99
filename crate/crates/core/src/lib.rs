//! Object-level perception for zero-shot tabletop rearrangement.
//!
//! Cross-attention maps captured while a text-to-image diffusion model
//! generates (or reconstructs) a scene are thresholded into per-word object
//! representations. Goal and real representations are matched with ICP, the
//! instances of a word are paired with a minimum-cost assignment, and the
//! result is emitted as a per-object rigid-transform plan.
//!
//! The crate is organised by stage:
//!
//! - [`raster`] and [`types`]: shared rasters and domain types
//! - [`scheduler`]: DDIM denoising, inversion and clean-latent estimates
//! - [`attention`]: attention maps and the `{0, 1, 2}` representation
//! - [`perspective`]: edges, Hough lines and the control raster
//! - [`matching`]: ICP, assignment, depth alignment, accuracy metric
//! - [`pipeline`]: dump/plan formats and the `hough`, `match`, `eval` commands
//! - [`synthetic`]: blob-based attention stacks for demos and fixtures

pub mod attention;
pub mod error;
pub mod matching;
pub mod perspective;
pub mod pipeline;
pub mod raster;
pub mod scheduler;
pub mod synthetic;
pub mod types;

pub use error::{Error, Result};
pub use raster::Raster2D;
pub use types::{Frame, PixelPoint, PromptManifest, RgbdFrame, RigidTransform};
