//! Binary checkpoint files for the subtree tasks of a search.
//!
//! All integers are little-endian. The header is
//!
//! | bytes | field |
//! |-------|-------|
//! | 8 | magic `GDXCKPT\0` |
//! | 4 | format version (`u32`, currently 1) |
//! | 4 | `d` (`u32`) |
//! | 4 | `k` (`u32`) |
//! | 4 | prefix depth (`u32`) |
//! | 4 | flags (`u32`: bit 0 common-out-neighbour rule, bit 1 transposition rule, bit 2 general order, bits 8 to 15 the order) |
//! | 8 | number of subtree tasks (`u64`) |
//! | 8 | nodes explored while splitting into tasks (`u64`) |
//!
//! followed by one record per completed task, in completion order:
//!
//! | bytes | field |
//! |-------|-------|
//! | 8 | task index (`u64`) |
//! | 4 | prefix length `p` (`u32`) |
//! | 8·p | out-neighbour bitsets of vertices `0..p` (`u64` each) |
//! | 8 | nodes explored inside the task (`u64`) |
//! | 4 | number of digraphs found `f` (`u32`) |
//! | f × (4 + 8·n) | each digraph: order `n` (`u32`) then `n` out-neighbour bitsets |
//!
//! The file is rewritten through a temporary sibling and renamed into place,
//! so a reader never sees a half-written record.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::digraph::Digraph;

pub const MAGIC: &[u8; 8] = b"GDXCKPT\0";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckpointHeader {
    pub d: u32,
    pub k: u32,
    pub prefix_depth: u32,
    pub flags: u32,
    pub task_count: u64,
    pub base_nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaskRecord {
    pub index: u64,
    pub prefix: Vec<u64>,
    pub nodes: u64,
    pub found: Vec<Digraph>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub header: CheckpointHeader,
    pub records: Vec<TaskRecord>,
}

#[derive(Debug, thiserror::Error)]
pub enum CheckpointError {
    #[error("checkpoint i/o: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt checkpoint: {0}")]
    Corrupt(String),
}

pub(crate) fn bits_of(g: &Digraph) -> Vec<u64> {
    (0..g.order())
        .map(|u| {
            g.out_neighbours(u)
                .iter()
                .fold(0u64, |acc, &v| acc | (1 << v))
        })
        .collect()
}

pub(crate) fn digraph_of(bits: &[u64]) -> Option<Digraph> {
    let n = bits.len();
    let adj = bits
        .iter()
        .map(|&b| (0..64).filter(|&v| b >> v & 1 == 1).collect::<Vec<usize>>())
        .collect::<Vec<_>>();
    if adj.iter().flatten().any(|&v| v >= n) {
        return None;
    }
    Digraph::from_out_adj(adj).ok()
}

impl Checkpoint {
    pub fn encode(&self) -> Vec<u8> {
        let h = &self.header;
        let mut out = MAGIC.to_vec();
        for v in [VERSION, h.d, h.k, h.prefix_depth, h.flags] {
            out.extend(v.to_le_bytes());
        }
        out.extend(h.task_count.to_le_bytes());
        out.extend(h.base_nodes.to_le_bytes());
        for r in &self.records {
            out.extend(r.index.to_le_bytes());
            out.extend((r.prefix.len() as u32).to_le_bytes());
            for b in &r.prefix {
                out.extend(b.to_le_bytes());
            }
            out.extend(r.nodes.to_le_bytes());
            out.extend((r.found.len() as u32).to_le_bytes());
            for g in &r.found {
                out.extend((g.order() as u32).to_le_bytes());
                for b in bits_of(g) {
                    out.extend(b.to_le_bytes());
                }
            }
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, CheckpointError> {
        let mut r = Reader { bytes, pos: 0 };
        if bytes.is_empty() {
            return Err(CheckpointError::Corrupt("empty file".into()));
        }
        if r.take(8)? != MAGIC {
            return Err(CheckpointError::Corrupt("bad magic".into()));
        }
        let version = r.u32()?;
        if version != VERSION {
            return Err(CheckpointError::Corrupt(format!(
                "unsupported version {version}"
            )));
        }
        let header = CheckpointHeader {
            d: r.u32()?,
            k: r.u32()?,
            prefix_depth: r.u32()?,
            flags: r.u32()?,
            task_count: r.u64()?,
            base_nodes: r.u64()?,
        };
        let mut records = Vec::new();
        while r.pos < bytes.len() {
            let index = r.u64()?;
            let p = r.u32()? as usize;
            let prefix = (0..p).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
            let nodes = r.u64()?;
            let f = r.u32()?;
            let mut found = Vec::new();
            for _ in 0..f {
                let n = r.u32()? as usize;
                if n > 64 {
                    return Err(CheckpointError::Corrupt(format!(
                        "digraph order {n} exceeds 64"
                    )));
                }
                let bits = (0..n).map(|_| r.u64()).collect::<Result<Vec<_>, _>>()?;
                let g = digraph_of(&bits)
                    .ok_or_else(|| CheckpointError::Corrupt("invalid stored digraph".into()))?;
                found.push(g);
            }
            records.push(TaskRecord {
                index,
                prefix,
                nodes,
                found,
            });
        }
        Ok(Checkpoint { header, records })
    }

    pub fn load(path: &Path) -> Result<Self, CheckpointError> {
        Self::decode(&fs::read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), CheckpointError> {
        let mut tmp = PathBuf::from(path);
        let mut name = tmp
            .file_name()
            .map(|s| s.to_os_string())
            .unwrap_or_default();
        name.push(".tmp");
        tmp.set_file_name(name);
        fs::write(&tmp, self.encode())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize) -> Result<&[u8], CheckpointError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| CheckpointError::Corrupt(format!("truncated at byte {}", self.pos)))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, CheckpointError> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("four bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64, CheckpointError> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("eight bytes"),
        ))
    }
}
