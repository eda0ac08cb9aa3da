use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// What a subcommand produces. `files` are written under `--out`; the
/// stdout rendering is picked by `--format`.
pub struct Output {
    pub stem: String,
    pub text: String,
    pub csv: Option<String>,
    pub json: serde_json::Value,
    pub files: Vec<(String, Vec<u8>)>,
    pub inputs: Vec<PathBuf>,
    /// Set when the computation ran but its checks failed (exit code 1
    /// after the outputs are written).
    pub failure: Option<String>,
}

impl Output {
    pub fn new(stem: &str, text: String, json: serde_json::Value) -> Self {
        Output { stem: stem.into(), text, csv: None, json, files: Vec::new(), inputs: Vec::new(), failure: None }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    /// Primary artifacts first (`stem.json`, `stem.csv`), then extras.
    pub fn artifacts(&self) -> anyhow::Result<Vec<(String, Vec<u8>)>> {
        let mut json = serde_json::to_vec_pretty(&self.json)?;
        json.push(b'\n');
        let mut out = vec![(format!("{}.json", self.stem), json)];
        if let Some(c) = &self.csv {
            out.push((format!("{}.csv", self.stem), c.clone().into_bytes()));
        }
        out.extend(self.files.iter().cloned());
        Ok(out)
    }
}

#[derive(Serialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

/// The reproducible part of a run manifest.
#[derive(Serialize)]
pub struct ManifestBody {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: serde_json::Value,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
}

/// Run details that legitimately differ between reruns; kept out of the hash.
#[derive(Serialize)]
pub struct RunInfo {
    pub created_unix: u64,
    pub threads: usize,
}

#[derive(Serialize)]
pub struct RunManifest {
    #[serde(flatten)]
    pub body: ManifestBody,
    pub manifest_hash: String,
    pub run: RunInfo,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl ManifestBody {
    pub fn hash(&self) -> String {
        sha256_hex(&serde_json::to_vec(self).expect("manifest serializes"))
    }
}

/// Writes every artifact plus `manifest.json` into `dir`.
pub fn write_outputs(
    dir: &Path,
    out: &Output,
    command: &str,
    parameters: serde_json::Value,
) -> anyhow::Result<RunManifest> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut outputs = Vec::new();
    for (name, bytes) in out.artifacts()? {
        let p = dir.join(&name);
        std::fs::write(&p, &bytes).with_context(|| format!("writing {}", p.display()))?;
        outputs.push(FileHash { path: name, sha256: sha256_hex(&bytes), bytes: bytes.len() });
    }
    let mut inputs = Vec::new();
    for p in &out.inputs {
        let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
        inputs.push(FileHash { path: p.display().to_string(), sha256: sha256_hex(&bytes), bytes: bytes.len() });
    }
    let body = ManifestBody { tool: "stabatlas", version: env!("CARGO_PKG_VERSION"), command: command.into(), parameters, inputs, outputs };
    let manifest = RunManifest {
        manifest_hash: body.hash(),
        body,
        run: RunInfo {
            created_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            threads: rayon::current_num_threads(),
        },
    };
    let mut bytes = serde_json::to_vec_pretty(&manifest)?;
    bytes.push(b'\n');
    std::fs::write(dir.join("manifest.json"), bytes)?;
    Ok(manifest)
}
