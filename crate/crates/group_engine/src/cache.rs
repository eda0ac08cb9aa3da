//! On-disk cache of closed subgroup tables.
//!
//! File layout: a header line `stabatlas-group v1 <sha256 of payload>`, then
//! the payload: generator list line, mod-phase flag line, element count line,
//! then per element the matrix bytes followed by varints dist, parent, gen.

use crate::table::SubgroupTable;
use crate::GroupError;
use clifford_core::{ExactMatrix, Gen};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

const MAGIC: &str = "stabatlas-group v1";

pub fn group_key(gens: &[Gen], mod_phase: bool) -> String {
    let mut names: Vec<String> = gens.iter().map(Gen::to_string).collect();
    names.sort();
    let mut h = Sha256::new();
    h.update(names.join(",").as_bytes());
    h.update(if mod_phase { b"|mod" } else { b"|abs" });
    hex::encode(&h.finalize()[..12])
}

pub struct GroupCache {
    dir: PathBuf,
}

impl GroupCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroupCache { dir: dir.into() }
    }

    pub fn path_for(&self, gens: &[Gen], mod_phase: bool) -> PathBuf {
        self.dir.join(format!("group-{}.bin", group_key(gens, mod_phase)))
    }

    /// Loads from cache when possible; any decoding problem triggers a
    /// recompute and rewrite. The flag reports whether the cache was used.
    pub fn load_or_close(&self, gens: &[Gen], mod_phase: bool) -> Result<(SubgroupTable, CacheOutcome), GroupError> {
        let path = self.path_for(gens, mod_phase);
        let mut outcome = CacheOutcome::Miss;
        if path.exists() {
            match read_table(&path, gens, mod_phase) {
                Ok(t) => return Ok((t, CacheOutcome::Hit)),
                Err(_) => outcome = CacheOutcome::Corrupt,
            }
        }
        let t = SubgroupTable::close(gens, mod_phase)?;
        std::fs::create_dir_all(&self.dir)?;
        write_table(&path, &t)?;
        Ok((t, outcome))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    Corrupt,
}

fn payload(t: &SubgroupTable) -> Vec<u8> {
    let (elements, dist, parent) = t.parts();
    let mut out = Vec::new();
    let names: Vec<String> = t.generators.iter().map(Gen::to_string).collect();
    out.extend_from_slice(format!("{}\n{}\n{}\n", names.join(","), t.mod_phase as u8, elements.len()).as_bytes());
    for ((m, &d), &(p, s)) in elements.iter().zip(dist).zip(parent) {
        out.extend_from_slice(&m.to_bytes());
        for v in [d as u64, p as u64, s as u64] {
            put_uvarint(&mut out, v);
        }
    }
    out
}

pub fn write_table(path: &Path, t: &SubgroupTable) -> Result<(), GroupError> {
    let body = payload(t);
    let digest = hex::encode(Sha256::digest(&body));
    let mut data = format!("{MAGIC} {digest}\n").into_bytes();
    data.extend_from_slice(&body);
    // write then rename so readers never see a partial file
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, &data)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_table(path: &Path, gens: &[Gen], mod_phase: bool) -> Result<SubgroupTable, GroupError> {
    let data = std::fs::read(path)?;
    let bad = |m: &str| GroupError::Cache(m.to_string());
    let nl = data.iter().position(|&b| b == b'\n').ok_or_else(|| bad("no header"))?;
    let header = std::str::from_utf8(&data[..nl]).map_err(|_| bad("header"))?;
    let digest = header.strip_prefix(MAGIC).map(str::trim).ok_or_else(|| bad("version"))?;
    let body = &data[nl + 1..];
    if hex::encode(Sha256::digest(body)) != digest {
        return Err(bad("checksum"));
    }
    let mut pos = 0;
    let mut line = || -> Result<String, GroupError> {
        let end = body[pos..].iter().position(|&b| b == b'\n').ok_or_else(|| bad("truncated"))? + pos;
        let s = String::from_utf8(body[pos..end].to_vec()).map_err(|_| bad("utf8"))?;
        pos = end + 1;
        Ok(s)
    };
    let names = line()?;
    let flag = line()?;
    let count: usize = line()?.parse().map_err(|_| bad("count"))?;
    let file_gens: Vec<Gen> = if names.is_empty() {
        Vec::new()
    } else {
        names.split(',').map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    if file_gens != gens || flag != (mod_phase as u8).to_string() {
        return Err(bad("key mismatch"));
    }
    let mut elements = Vec::with_capacity(count);
    let mut dist = Vec::with_capacity(count);
    let mut parent = Vec::with_capacity(count);
    for _ in 0..count {
        let (m, used) = ExactMatrix::from_bytes(&body[pos..])?;
        pos += used;
        let d = get_uvarint(body, &mut pos).ok_or_else(|| bad("dist"))?;
        let p = get_uvarint(body, &mut pos).ok_or_else(|| bad("parent"))?;
        let s = get_uvarint(body, &mut pos).ok_or_else(|| bad("gen"))?;
        elements.push(m);
        dist.push(d as u32);
        parent.push((p as u32, s as u8));
    }
    if pos != body.len() {
        return Err(bad("trailing bytes"));
    }
    SubgroupTable::from_parts(gens.to_vec(), mod_phase, elements, dist, parent)
}

fn put_uvarint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let b = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(b);
            return;
        }
        out.push(b | 0x80);
    }
}

fn get_uvarint(data: &[u8], pos: &mut usize) -> Option<u64> {
    let mut v = 0u64;
    for shift in (0..64).step_by(7) {
        let b = *data.get(*pos)?;
        *pos += 1;
        v |= ((b & 0x7f) as u64) << shift;
        if b & 0x80 == 0 {
            return Some(v);
        }
    }
    None
}
