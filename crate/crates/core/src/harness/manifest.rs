use std::collections::BTreeMap;
use std::path::Path;

use super::{io_err, HarnessError};

/// Known chromatic number per benchmark graph, keyed by file stem.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Manifest {
    entries: BTreeMap<String, usize>,
}

impl Manifest {
    pub fn get(&self, graph: &str) -> Option<usize> {
        self.entries.get(graph).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, usize)> {
        self.entries.iter().map(|(name, &k)| (name.as_str(), k))
    }

    /// Panics on `k == 0`; use [`parse_manifest`] for untrusted input.
    pub fn insert(&mut self, graph: impl Into<String>, k: usize) -> Option<usize> {
        assert!(k >= 1);
        self.entries.insert(graph.into(), k)
    }
}

impl FromIterator<(String, usize)> for Manifest {
    fn from_iter<I: IntoIterator<Item = (String, usize)>>(iter: I) -> Self {
        let mut m = Manifest::default();
        for (name, k) in iter {
            m.insert(name, k);
        }
        m
    }
}

pub fn load_manifest(path: &Path) -> Result<Manifest, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_manifest(&text)
}

/// Parses CSV with header `graph,k`.
pub fn parse_manifest(text: &str) -> Result<Manifest, HarnessError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = reader.records();
    let bad = |line: usize, reason: String| HarnessError::Manifest { line, reason };

    match rows.next() {
        Some(header) => {
            let header = header?;
            if header.iter().collect::<Vec<_>>() != ["graph", "k"] {
                return Err(bad(1, "expected header `graph,k`".into()));
            }
        }
        None => return Err(bad(1, "empty manifest".into())),
    }

    let mut manifest = Manifest::default();
    for row in rows {
        let row = row?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        if row.len() != 2 {
            return Err(bad(line, format!("expected 2 fields, found {}", row.len())));
        }
        let name = &row[0];
        if name.is_empty() {
            return Err(bad(line, "empty graph name".into()));
        }
        let k: usize = row[1]
            .parse()
            .map_err(|_| bad(line, format!("invalid k {:?}", &row[1])))?;
        if k < 1 {
            return Err(bad(line, format!("k must be at least 1 for {name}")));
        }
        if manifest.insert(name, k).is_some() {
            return Err(bad(line, format!("duplicate graph {name}")));
        }
    }
    Ok(manifest)
}
