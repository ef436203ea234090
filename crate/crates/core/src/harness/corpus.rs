//! Graph collections with provenance, regenerable from their descriptions.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::generate::{generate, Family, GenerateError};
use crate::codec::{self, Format};
use crate::error::ParseError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum Provenance {
    Generated { family: Family },
    File { path: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub id: String,
    pub graph: Graph,
    pub provenance: Provenance,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("duplicate graph id `{0}`")]
    DuplicateId(String),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Corpus {
    entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::default()
    }

    pub fn entries(&self) -> &[CorpusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, entry: CorpusEntry) -> Result<(), CorpusError> {
        if self.entries.iter().any(|e| e.id == entry.id) {
            return Err(CorpusError::DuplicateId(entry.id));
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn push_family(&mut self, family: Family) -> Result<(), CorpusError> {
        let graph = generate(&family)?;
        self.push(CorpusEntry {
            id: family.to_string(),
            graph,
            provenance: Provenance::Generated { family },
        })
    }

    pub fn from_families<I: IntoIterator<Item = Family>>(families: I) -> Result<Self, CorpusError> {
        let mut corpus = Corpus::new();
        for f in families {
            corpus.push_family(f)?;
        }
        Ok(corpus)
    }

    pub fn extend(&mut self, other: Corpus) -> Result<(), CorpusError> {
        for e in other.entries {
            self.push(e)?;
        }
        Ok(())
    }

    /// True when every generated entry regenerates to the identical graph.
    pub fn regenerates(&self) -> bool {
        self.entries.iter().all(|e| match &e.provenance {
            Provenance::Generated { family } => generate(family).is_ok_and(|g| g == e.graph),
            Provenance::File { .. } => true,
        })
    }

    /// Reads every `.g6`, `.col` and `.dimacs` file in `dir` (ids are file stems).
    pub fn load_dir(dir: &Path) -> Result<Self, CorpusError> {
        let io = |path: &Path, source| CorpusError::Io {
            path: path.display().to_string(),
            source,
        };
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| format_for(p).is_some())
            .collect();
        paths.sort();
        let mut corpus = Corpus::new();
        for path in paths {
            let graph = read_graph(&path)?;
            let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            corpus.push(CorpusEntry {
                id,
                graph,
                provenance: Provenance::File {
                    path: path.display().to_string(),
                },
            })?;
        }
        Ok(corpus)
    }
}

/// Graph format implied by a file extension.
pub fn format_for(path: &Path) -> Option<Format> {
    match path.extension()?.to_str()? {
        "g6" | "graph6" => Some(Format::Graph6),
        "col" | "dimacs" => Some(Format::Dimacs),
        _ => None,
    }
}

pub fn read_graph(path: &Path) -> Result<Graph, CorpusError> {
    let shown = path.display().to_string();
    let format = format_for(path).unwrap_or(Format::Graph6);
    let bytes = std::fs::read(path).map_err(|source| CorpusError::Io {
        path: shown.clone(),
        source,
    })?;
    codec::parse(format, &bytes).map_err(|source| CorpusError::Parse { path: shown, source })
}

/// Named families with at most `max_n` vertices.
pub fn named_families(max_n: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        out.push(Family::Cycle { n });
    }
    for n in 2..=max_n {
        out.push(Family::Path { n });
    }
    for n in 1..=max_n.min(12) {
        out.push(Family::Complete { n });
    }
    for a in 1..=max_n / 2 {
        for b in a..=(max_n - a).min(8) {
            out.push(Family::CompleteBipartite { a, b });
        }
    }
    if max_n >= 10 {
        out.push(Family::Petersen);
    }
    for k in 1..=5 {
        if 1 << k <= max_n {
            out.push(Family::Hypercube { k });
        }
    }
    out
}

/// `count` random regular graphs with degrees from `degrees` and orders in
/// `min_n..=max_n`, parameters drawn from `seed`.
pub fn random_regular_families(count: usize, degrees: &[usize], min_n: usize, max_n: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = degrees[rng.gen_range(0..degrees.len())];
        let mut n = rng.gen_range(min_n.max(d + 1)..=max_n);
        if n * d % 2 == 1 {
            n = if n < max_n { n + 1 } else { n - 1 };
        }
        let s = rng.gen::<u32>() as u64;
        if seen.insert((n, d, s)) {
            out.push(Family::RandomRegular { n, d, seed: s });
        }
    }
    out
}

/// `count` random G(n, p) graphs with `n` in `min_n..=max_n`.
pub fn random_gnp_families(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(min_n..=max_n);
        let p_ppm = rng.gen_range(200_000..=800_000);
        let s = rng.gen::<u32>() as u64;
        if seen.insert((n, p_ppm, s)) {
            out.push(Family::Gnp { n, p_ppm, seed: s });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_corpus_is_unique_and_regenerable() {
        let corpus = Corpus::from_families(named_families(12)).unwrap();
        assert!(corpus.len() > 40);
        assert!(corpus.regenerates());
        assert!(corpus.entries().iter().all(|e| e.graph.n() <= 12));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut corpus = Corpus::new();
        corpus.push_family(Family::Petersen).unwrap();
        assert!(matches!(corpus.push_family(Family::Petersen), Err(CorpusError::DuplicateId(_))));
    }

    #[test]
    fn random_families_are_valid() {
        let fams = random_regular_families(50, &[3, 4, 5], 6, 24, 1);
        assert_eq!(fams.len(), 50);
        let corpus = Corpus::from_families(fams.clone()).unwrap();
        assert_eq!(corpus.len(), 50);
        assert_eq!(random_regular_families(50, &[3, 4, 5], 6, 24, 1), fams);
    }
}
