//! Character co-occurrence networks from plain text.
//!
//! The pipeline is `tokenize` → [`scan_occurrences`] → [`build_network`].
//! Names are resolved through an [`AliasTable`]; two characters co-occur
//! when their hits start at most `distance` tokens apart.
//!
//! Co-occurrences are deduplicated per hit: a single hit of `b` is linked to
//! at most one hit of any other character `a`, so "Mira ... Vale ... Tobin"
//! (Mira and Vale being one character) yields one Mira–Tobin co-occurrence.
//! Under that constraint the weight of `(a, b)` is the largest number of
//! disjoint in-window `a`–`b` hit pairs, which a left-to-right greedy scan
//! finds exactly.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};

/// Lowercased maximal runs of alphanumeric characters.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

/// Canonical character names and the token sequences that refer to them.
#[derive(Debug, Clone, Default)]
pub struct AliasTable {
    names: Vec<String>,
    aliases: Vec<Vec<Vec<String>>>,
    lookup: HashMap<Vec<String>, usize>,
    longest: usize,
}

impl AliasTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `canonical` with extra `aliases`. The canonical name is
    /// always one of its own aliases. Adding to an existing name extends it.
    pub fn add<S: AsRef<str>>(&mut self, canonical: &str, aliases: &[S]) -> Result<()> {
        let canonical = canonical.trim();
        let idx = match self.names.iter().position(|n| n == canonical) {
            Some(i) => i,
            None => {
                self.names.push(canonical.to_string());
                self.aliases.push(Vec::new());
                self.names.len() - 1
            }
        };
        let all = std::iter::once(canonical).chain(aliases.iter().map(|a| a.as_ref()));
        for alias in all {
            if alias.trim().is_empty() {
                continue;
            }
            let tokens = tokenize(alias);
            if tokens.is_empty() {
                return Err(Error::InvalidParameter(format!(
                    "alias `{alias}` of `{canonical}` contains no word characters"
                )));
            }
            match self.lookup.get(&tokens) {
                Some(&owner) if owner != idx => {
                    return Err(Error::AliasConflict {
                        alias: tokens.join(" "),
                        first: self.names[owner].clone(),
                        second: canonical.to_string(),
                    })
                }
                Some(_) => {}
                None => {
                    self.longest = self.longest.max(tokens.len());
                    self.lookup.insert(tokens.clone(), idx);
                    self.aliases[idx].push(tokens);
                }
            }
        }
        Ok(())
    }

    /// One row per character: canonical name first, aliases after. No header.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut table = Self::new();
        for record in reader.records() {
            let record = record?;
            let mut fields = record.iter();
            let Some(canonical) = fields.next().filter(|c| !c.is_empty()) else {
                continue;
            };
            let rest: Vec<&str> = fields.collect();
            table.add(canonical, &rest)?;
        }
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Tokenized aliases of character `idx`.
    pub fn aliases(&self, idx: usize) -> &[Vec<String>] {
        &self.aliases[idx]
    }

    fn resolve(&self, tokens: &[String]) -> Option<usize> {
        self.lookup.get(tokens).copied()
    }
}

/// One resolved name mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Occurrence {
    /// Token index of the alias's first token.
    pub position: usize,
    /// Index into [`OccurrenceStream::names`].
    pub character: usize,
}

/// Ordered name mentions plus the full cast they refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceStream {
    names: Vec<String>,
    hits: Vec<Occurrence>,
}

impl OccurrenceStream {
    /// Validates that positions are non-decreasing and characters exist.
    pub fn new(names: Vec<String>, hits: Vec<Occurrence>) -> Result<Self> {
        if let Some(bad) = hits.iter().find(|h| h.character >= names.len()) {
            return Err(Error::InvalidParameter(format!(
                "occurrence refers to unknown character {}",
                bad.character
            )));
        }
        if hits.windows(2).any(|w| w[1].position < w[0].position) {
            return Err(Error::InvalidParameter(
                "occurrence positions must be non-decreasing".into(),
            ));
        }
        Ok(Self { names, hits })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn hits(&self) -> &[Occurrence] {
        &self.hits
    }

    /// `(position, canonical name)` pairs.
    pub fn named_hits(&self) -> impl Iterator<Item = (usize, &str)> + '_ {
        self.hits.iter().map(|h| (h.position, self.names[h.character].as_str()))
    }
}

/// Co-occurrence window in tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    distance: usize,
}

impl WindowConfig {
    pub const DEFAULT_DISTANCE: usize = 15;

    pub fn new(distance: usize) -> Result<Self> {
        if distance == 0 {
            return Err(Error::InvalidParameter(
                "co-occurrence distance must be at least 1".into(),
            ));
        }
        Ok(Self { distance })
    }

    pub fn distance(&self) -> usize {
        self.distance
    }
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self {
            distance: Self::DEFAULT_DISTANCE,
        }
    }
}

/// Greedy longest-match alias scan. A matched alias consumes its tokens.
pub fn scan_occurrences(tokens: &[String], aliases: &AliasTable) -> OccurrenceStream {
    let mut hits = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let max_len = aliases.longest.min(tokens.len() - i);
        let matched = (1..=max_len)
            .rev()
            .find_map(|len| aliases.resolve(&tokens[i..i + len]).map(|c| (len, c)));
        match matched {
            Some((len, character)) => {
                hits.push(Occurrence { position: i, character });
                i += len;
            }
            None => i += 1,
        }
    }
    OccurrenceStream {
        names: aliases.names.clone(),
        hits,
    }
}

/// Weighted co-occurrence graph; every character becomes a node, in table order.
pub fn build_network(occs: &OccurrenceStream, cfg: WindowConfig) -> Graph {
    let mut builder = GraphBuilder::new();
    for name in &occs.names {
        builder.add_node(name.clone());
    }
    for ((a, b), weight) in pair_weights(occs.hits(), cfg.distance) {
        builder
            .add_edge(a, b, weight as f64)
            .expect("distinct in-range characters with positive weight");
    }
    builder.build()
}

/// Per character pair, the greedy matching count of in-window hit pairs.
///
/// Hits are visited left to right. A new hit of `c` is paired, for every
/// other character `p` inside the window, with the oldest `p` hit not yet
/// paired with `c`; that hit is the first to leave the window.
fn pair_weights(hits: &[Occurrence], distance: usize) -> BTreeMap<(usize, usize), u64> {
    let mut weights = BTreeMap::new();
    // paired[i] lists the characters hit i is already paired with.
    let mut paired: Vec<Vec<usize>> = vec![Vec::new(); hits.len()];
    let mut recent: VecDeque<usize> = VecDeque::new();

    for (j, hit) in hits.iter().enumerate() {
        while recent
            .front()
            .is_some_and(|&i| hit.position - hits[i].position > distance)
        {
            recent.pop_front();
        }
        for &i in &recent {
            let partner = hits[i].character;
            if partner == hit.character || paired[j].contains(&partner) || paired[i].contains(&hit.character) {
                continue;
            }
            paired[i].push(hit.character);
            paired[j].push(partner);
            let key = (partner.min(hit.character), partner.max(hit.character));
            *weights.entry(key).or_insert(0) += 1;
        }
        recent.push_back(j);
    }
    weights
}

/// tokenize → scan → build.
pub fn extract_pipeline(text: &str, aliases: &AliasTable, cfg: WindowConfig) -> Graph {
    build_network(&scan_occurrences(&tokenize(text), aliases), cfg)
}
