//! The PACA attention dump container and its JSON sidecar manifest.
//!
//! Layout (little-endian):
//!
//! ```text
//! magic "PACA" | version u16 = 1 | flags u16 = 0
//! H u32 | W u32 | n_tokens u32 | n_timesteps u32
//! n_timesteps x u32 timesteps, strictly decreasing
//! n_tokens x (u16 byte length, UTF-8 bytes)
//! n_timesteps x n_tokens x H x W f32 maps, row-major, values in [0, 1]
//! ```
//!
//! `<name>.paca` sits next to `<name>.manifest.json`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::attention::AttentionStack;
use crate::error::{Error, Result};
use crate::types::PromptManifest;

pub const MAGIC: &[u8; 4] = b"PACA";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 24;

/// Sidecar manifest: the prompt manifest plus provenance notes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DumpManifest {
    #[serde(flatten)]
    pub prompt: PromptManifest,
    #[serde(default)]
    pub model: String,
    #[serde(default)]
    pub dump_resolution: String,
}

/// `foo/bar.paca` -> `foo/bar.manifest.json`.
pub fn manifest_path(dump: &Path) -> PathBuf {
    dump.with_extension("manifest.json")
}

/// Serializes the maps of `stack` into container bytes.
pub fn encode_dump(stack: &AttentionStack) -> Vec<u8> {
    let (h, w) = stack.dump_shape();
    let timesteps = stack.timesteps();
    let mut out = Vec::with_capacity(HEADER_LEN + stack.raw_values().len() * 4);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&0u16.to_le_bytes());
    for v in [h, w, stack.tokens().len(), timesteps.len()] {
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
    for &t in timesteps {
        out.extend_from_slice(&(t as u32).to_le_bytes());
    }
    for tok in stack.tokens() {
        let bytes = tok.as_bytes();
        out.extend_from_slice(&(bytes.len() as u16).to_le_bytes());
        out.extend_from_slice(bytes);
    }
    for v in stack.raw_values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        if self.buf.len() - self.pos < n {
            return Err(Error::Format {
                offset: self.buf.len() as u64,
                reason: format!("truncated while reading {what} (need {n} bytes at offset {})", self.pos),
            });
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

/// Container contents before they are paired with a manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDump {
    pub height: usize,
    pub width: usize,
    pub timesteps: Vec<usize>,
    pub tokens: Vec<String>,
    pub maps: Vec<f32>,
}

/// Parses container bytes. Value ranges are checked later, against the manifest.
pub fn decode_dump(bytes: &[u8]) -> Result<RawDump> {
    let mut r = Reader { buf: bytes, pos: 0 };
    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(Error::Format {
            offset: 0,
            reason: format!("bad magic {magic:?}"),
        });
    }
    let version = r.u16("version")?;
    if version != VERSION {
        return Err(Error::Format {
            offset: 4,
            reason: format!("unsupported version {version}"),
        });
    }
    let flags = r.u16("flags")?;
    if flags != 0 {
        return Err(Error::Format {
            offset: 6,
            reason: format!("unsupported flags {flags:#06x}"),
        });
    }
    let height = r.u32("height")? as usize;
    let width = r.u32("width")? as usize;
    let n_tokens = r.u32("token count")? as usize;
    let n_timesteps = r.u32("timestep count")? as usize;
    if height == 0 || width == 0 {
        return Err(Error::Format {
            offset: 8,
            reason: format!("empty map size {height}x{width}"),
        });
    }

    let mut timesteps = Vec::with_capacity(n_timesteps.min(4096));
    for _ in 0..n_timesteps {
        let at = r.pos;
        let t = r.u32("timestep table")? as usize;
        if timesteps.last().is_some_and(|&prev| t >= prev) {
            return Err(Error::Format {
                offset: at as u64,
                reason: "timesteps must be strictly decreasing".into(),
            });
        }
        timesteps.push(t);
    }

    let mut tokens = Vec::with_capacity(n_tokens.min(4096));
    for _ in 0..n_tokens {
        let len = r.u16("token length")? as usize;
        let at = r.pos;
        let raw = r.take(len, "token bytes")?;
        let tok = std::str::from_utf8(raw).map_err(|e| Error::Format {
            offset: at as u64,
            reason: format!("token is not UTF-8: {e}"),
        })?;
        tokens.push(tok.to_owned());
    }

    let count = n_timesteps
        .checked_mul(n_tokens)
        .and_then(|n| n.checked_mul(height))
        .and_then(|n| n.checked_mul(width))
        .ok_or_else(|| Error::Format {
            offset: 8,
            reason: "map payload size overflows".into(),
        })?;
    let payload = r.take(count * 4, "map payload")?;
    let maps = payload
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    if r.pos != bytes.len() {
        return Err(Error::Format {
            offset: r.pos as u64,
            reason: format!("{} trailing bytes", bytes.len() - r.pos),
        });
    }
    Ok(RawDump {
        height,
        width,
        timesteps,
        tokens,
        maps,
    })
}

/// Pairs a decoded container with its manifest and validates both.
pub fn assemble_stack(raw: RawDump, manifest: PromptManifest) -> Result<AttentionStack> {
    if raw.timesteps != manifest.recorded_timesteps {
        return Err(Error::ManifestMismatch(format!(
            "dump records timesteps {:?} but the manifest lists {:?}",
            raw.timesteps, manifest.recorded_timesteps
        )));
    }
    manifest.validate(raw.tokens.len())?;
    AttentionStack::new(manifest, raw.height, raw.width, raw.tokens, raw.maps)
}

/// Writes the container and its sidecar manifest.
pub fn write_dump(path: &Path, stack: &AttentionStack, model: &str) -> Result<()> {
    fs::write(path, encode_dump(stack)).map_err(|e| Error::io(path, e))?;
    let (h, w) = stack.dump_shape();
    let manifest = DumpManifest {
        prompt: stack.manifest().clone(),
        model: model.to_owned(),
        dump_resolution: format!("{h}x{w}"),
    };
    let mpath = manifest_path(path);
    let json = serde_json::to_string_pretty(&manifest)?;
    fs::write(&mpath, json).map_err(|e| Error::io(&mpath, e))
}

/// Reads a dump and its sidecar manifest.
pub fn read_dump(path: &Path) -> Result<AttentionStack> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let raw = decode_dump(&bytes)?;
    let mpath = manifest_path(path);
    let text = fs::read_to_string(&mpath).map_err(|e| Error::io(&mpath, e))?;
    let manifest: DumpManifest = serde_json::from_str(&text).map_err(|e| Error::Format {
        offset: 0,
        reason: format!("manifest {}: {e}", mpath.display()),
    })?;
    assemble_stack(raw, manifest.prompt)
}
