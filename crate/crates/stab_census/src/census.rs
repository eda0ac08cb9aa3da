use crate::tableau::{enumerate_groups, stabilizer_state_count, PauliRow, StabTableau};
use crate::CensusError;
use entropy_lab::{check_inequalities, representatives, EntropyTable};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub vector: Vec<u32>,
    pub count: u64,
    pub holographic: bool,
    pub violated: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    pub total_states: u64,
    /// Sorted lexicographically by vector.
    pub entries: Vec<CensusEntry>,
}

/// Integer entropy vector of a stabilizer group, in the component order of
/// `entropy_lab::representatives`. Signs do not affect entropies.
pub fn group_entropy_vector(n: usize, rows: &[PauliRow]) -> Vec<u32> {
    let t = StabTableau { n, rows: rows.to_vec(), signs: 0 };
    representatives(n).into_iter().map(|m| t.entropy(m)).collect()
}

pub fn entropy_census(n: usize) -> Result<Census, CensusError> {
    let groups = enumerate_groups(n)?;
    let counts: BTreeMap<Vec<u32>, u64> = groups
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Vec<u32>, u64>, rows| {
            *acc.entry(group_entropy_vector(n, rows)).or_default() += 1u64 << n;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let entries: Vec<CensusEntry> = counts
        .into_iter()
        .map(|(vector, count)| {
            let reps = representatives(n);
            let lookup: BTreeMap<u32, f64> = reps.iter().zip(&vector).map(|(&m, &v)| (m, v as f64)).collect();
            let table = EntropyTable::from_fn(n, |m| lookup[&m]);
            let report = check_inequalities(&table);
            CensusEntry {
                holographic: report.holographic,
                violated: report.violated().into_iter().map(String::from).collect(),
                vector,
                count,
            }
        })
        .collect();
    let total_states: u64 = entries.iter().map(|e| e.count).sum();
    if total_states != stabilizer_state_count(n) {
        return Err(CensusError::CountMismatch { got: total_states, expected: stabilizer_state_count(n) });
    }
    Ok(Census { n, total_states, entries })
}

impl Census {
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn non_holographic(&self) -> impl Iterator<Item = &CensusEntry> {
        self.entries.iter().filter(|e| !e.holographic)
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<(), CensusError> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["entropy_vector", "count", "holographic", "violated_inequalities"])?;
        for e in &self.entries {
            let v: Vec<String> = e.vector.iter().map(u32::to_string).collect();
            wr.write_record([
                format!("({})", v.join(",")),
                e.count.to_string(),
                e.holographic.to_string(),
                e.violated.join(";"),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn summary_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "total_states": self.total_states,
            "distinct_vectors": self.distinct(),
            "non_holographic_vectors": self.non_holographic().count(),
            "non_holographic_states": self.non_holographic().map(|e| e.count).sum::<u64>(),
            "entries": self.entries,
        })
    }
}
