//! Goal-versus-real scene matching: the `match` command.

use std::path::{Path, PathBuf};

use crate::attention::{grasp_point, split_instances, AttentionStack, Representation};
use crate::error::{Error, Result};
use crate::matching::{assign_instances, depth_align, lift_to_6dof, Assignment, DepthAlignment};
use crate::raster::Raster2D;

use super::config::{Mode, RunConfig};
use super::dump::read_dump;
use super::io::{read_depth_png, read_rgb, valid_mask, write_rgb, write_text};
use super::overlay::render_overlay;
use super::plan::{Plan, PlanMatch, PlanObject, Provenance, PLAN_VERSION, ENGINE_VERSION};

/// Estimated goal depth (arbitrary affine units) and measured real depth (meters).
/// Zero marks a missing reading in either raster.
#[derive(Debug, Clone)]
pub struct DepthInputs {
    pub goal_estimate: Raster2D,
    pub real: Raster2D,
}

#[derive(Debug, Clone, Default)]
pub struct MatchInputs {
    pub goal_dump: PathBuf,
    pub real_dump: PathBuf,
    /// 16-bit millimeter PNGs, required in 6dof mode.
    pub goal_depth: Option<PathBuf>,
    pub real_depth: Option<PathBuf>,
    /// Real color frame the overlay is drawn on.
    pub frame: Option<PathBuf>,
}

/// Instances of one word in both scenes, in plan index order.
#[derive(Debug, Clone, PartialEq)]
pub struct WordInstances {
    pub word: String,
    pub goal: Vec<Representation>,
    pub real: Vec<Representation>,
}

#[derive(Debug, Clone)]
pub struct MatchOutput {
    pub plan: Plan,
    pub instances: Vec<WordInstances>,
}

/// Object words present in both manifests, in goal order.
pub fn shared_words(goal: &AttentionStack, real: &AttentionStack) -> Result<Vec<String>> {
    let words: Vec<String> = goal
        .manifest()
        .object_words
        .iter()
        .filter(|g| real.manifest().object_words.iter().any(|r| r.word == g.word))
        .map(|g| g.word.clone())
        .collect();
    if words.is_empty() {
        return Err(Error::Vocabulary);
    }
    Ok(words)
}

fn match_word(
    word: &str,
    goal: &AttentionStack,
    real: &AttentionStack,
    config: &RunConfig,
) -> Result<(WordInstances, Assignment)> {
    let goal_rep = goal.representation(word, config.tau1, config.tau2)?;
    let real_rep = real.representation(word, config.tau1, config.tau2)?;
    let inst = WordInstances {
        word: word.to_owned(),
        goal: split_instances(&goal_rep, config.min_instance_area),
        real: split_instances(&real_rep, config.min_instance_area),
    };
    let assignment = match assign_instances(&inst.goal, &inst.real, config.icp_point_level, &config.icp) {
        Err(Error::EmptyRepresentation) => {
            log::warn!("{word}: empty representation, leaving every instance unmatched");
            Assignment {
                matches: Vec::new(),
                unmatched_goal: (0..inst.goal.len()).collect(),
                unmatched_real: (0..inst.real.len()).collect(),
            }
        }
        other => other?,
    };
    Ok((inst, assignment))
}

// Runs `match_word` for every word on up to `workers` threads; results keep word order.
fn match_words(
    words: &[String],
    goal: &AttentionStack,
    real: &AttentionStack,
    config: &RunConfig,
) -> Result<Vec<(WordInstances, Assignment)>> {
    let workers = config.worker_count().clamp(1, words.len().max(1));
    if workers == 1 {
        return words.iter().map(|w| match_word(w, goal, real, config)).collect();
    }
    let mut slots: Vec<Option<Result<(WordInstances, Assignment)>>> = Vec::new();
    slots.resize_with(words.len(), || None);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|k| {
                s.spawn(move || {
                    (k..words.len())
                        .step_by(workers)
                        .map(|i| (i, match_word(&words[i], goal, real, config)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (i, r) in h.join().expect("matching worker panicked") {
                slots[i] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every word is matched")).collect()
}

fn median_depth(rep: &Representation, depth: &Raster2D) -> Option<f64> {
    let mut d: Vec<f64> = rep
        .pixels_at_least(1)
        .map(|(r, c)| depth.get(r, c))
        .filter(|&v| v > 0.0)
        .collect();
    if d.is_empty() {
        return None;
    }
    d.sort_by(f64::total_cmp);
    let n = d.len();
    Some(if n % 2 == 1 {
        d[n / 2]
    } else {
        0.5 * (d[n / 2 - 1] + d[n / 2])
    })
}

fn fit_depth(depth: &DepthInputs, shape: (usize, usize)) -> Result<DepthAlignment> {
    for (name, r) in [("goal depth", &depth.goal_estimate), ("real depth", &depth.real)] {
        if r.shape() != shape {
            return Err(Error::Shape(format!(
                "{name} is {:?} but representations are {shape:?}",
                r.shape()
            )));
        }
    }
    let mask = Raster2D::new(
        shape.0,
        shape.1,
        valid_mask(&depth.goal_estimate)
            .values()
            .iter()
            .zip(valid_mask(&depth.real).values())
            .map(|(a, b)| a * b)
            .collect(),
    )?;
    depth_align(&depth.goal_estimate, &depth.real, &mask)
}

/// Matches every shared word and assembles the plan.
pub fn match_stacks(
    goal: &AttentionStack,
    real: &AttentionStack,
    config: &RunConfig,
    depth: Option<&DepthInputs>,
) -> Result<MatchOutput> {
    config.validate()?;
    for s in [goal, real] {
        if s.manifest().total_steps != config.total_steps {
            log::warn!(
                "manifest total_steps {} differs from configured T = {}; using the manifest",
                s.manifest().total_steps,
                config.total_steps
            );
        }
    }
    if goal.canonical_shape() != real.canonical_shape() {
        return Err(Error::Shape(format!(
            "goal maps are {:?} but real maps are {:?}",
            goal.canonical_shape(),
            real.canonical_shape()
        )));
    }
    let words = shared_words(goal, real)?;

    let lift = match config.mode {
        Mode::ThreeDof => None,
        Mode::SixDof => {
            let depth = depth.ok_or_else(|| Error::Config("6dof mode needs goal and real depth".into()))?;
            let align = fit_depth(depth, goal.canonical_shape())?;
            log::info!("depth alignment scale {} shift {}", align.scale, align.shift);
            Some((depth, align, config.intrinsics.expect("validated")))
        }
    };

    let mut objects = Vec::with_capacity(words.len());
    let mut instances = Vec::with_capacity(words.len());
    for (inst, assignment) in match_words(&words, goal, real, config)? {
        let mut obj = PlanObject {
            word: inst.word.clone(),
            matches: Vec::new(),
            unmatched_goal: assignment.unmatched_goal,
            unmatched_real: assignment.unmatched_real,
        };
        for m in assignment.matches {
            let grasp = grasp_point(&inst.real[m.real_instance])?;
            let place = m.transform.apply_point(&grasp);
            let transform = match &lift {
                None => m.transform,
                Some((depth, align, k)) => {
                    let lifted = match (
                        median_depth(&inst.goal[m.goal_instance], &depth.goal_estimate),
                        median_depth(&inst.real[m.real_instance], &depth.real),
                    ) {
                        (Some(g), Some(r)) => lift_to_6dof(&m.transform, &grasp, g, r, align, k),
                        _ => Err(Error::InvalidDepth("no depth readings on the instance".into())),
                    };
                    match lifted {
                        Ok(t) => t,
                        Err(e @ Error::InvalidDepth(_)) => {
                            log::warn!("{}: {e}; leaving the pair unmatched", inst.word);
                            obj.unmatched_goal.push(m.goal_instance);
                            obj.unmatched_real.push(m.real_instance);
                            continue;
                        }
                        Err(e) => return Err(e),
                    }
                }
            };
            obj.matches.push(PlanMatch {
                goal_instance: m.goal_instance,
                real_instance: m.real_instance,
                transform,
                residual: m.residual,
                rotation_observable: m.rotation_observable,
                grasp_point: grasp.into(),
                place_point: place.into(),
            });
        }
        obj.unmatched_goal.sort_unstable();
        obj.unmatched_real.sort_unstable();
        objects.push(obj);
        instances.push(inst);
    }

    let plan = Plan {
        version: PLAN_VERSION,
        mode: config.mode,
        objects,
        provenance: Provenance {
            goal_manifest: goal.manifest().clone(),
            real_manifest: real.manifest().clone(),
            config_hash: config.hash(),
            engine_version: ENGINE_VERSION.to_owned(),
            depth_alignment: lift.map(|l| l.1),
        },
    };
    Ok(MatchOutput { plan, instances })
}

fn load_depth(inputs: &MatchInputs) -> Result<Option<DepthInputs>> {
    match (&inputs.goal_depth, &inputs.real_depth) {
        (Some(g), Some(r)) => Ok(Some(DepthInputs {
            goal_estimate: read_depth_png(g)?,
            real: read_depth_png(r)?,
        })),
        (None, None) => Ok(None),
        _ => Err(Error::Config("goal and real depth must be given together".into())),
    }
}

/// Reads both dumps, matches, and writes the plan to `out` (and an overlay if asked).
pub fn cmd_match(inputs: &MatchInputs, config: &RunConfig, out: &Path, overlay: Option<&Path>) -> Result<Plan> {
    let goal = read_dump(&inputs.goal_dump)?;
    let real = read_dump(&inputs.real_dump)?;
    let depth = load_depth(inputs)?;
    let output = match_stacks(&goal, &real, config, depth.as_ref())?;
    write_text(out, &output.plan.to_canonical_json()?)?;

    if let Some(path) = overlay {
        let (h, w) = real.canonical_shape();
        let frame = match &inputs.frame {
            Some(p) => read_rgb(p)?,
            None => image::RgbImage::new(w as u32, h as u32),
        };
        let img = render_overlay(&frame, &output.instances, &output.plan)?;
        write_rgb(path, &img)?;
    }
    Ok(output.plan)
}

