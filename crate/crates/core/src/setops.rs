//! Identifier lists, deduplication and the exclusive/inclusive region partition.
//!
//! Each distinct identifier in the union of the input sets is tagged with a
//! [`Mask`] (bit `i` set when set `i` contains it). Grouping identifiers by
//! mask gives the exclusive regions; an inclusive intersection for a
//! combination `c` collects every identifier whose mask is a superset of `c`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::BitOr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::color::Rgba;

pub const MIN_SETS: usize = 2;
pub const MAX_SETS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("expected between {MIN_SETS} and {MAX_SETS} sets, got {0}")]
    Cardinality(usize),
    #[error("set {0:?} contains no identifiers")]
    EmptySet(String),
    #[error("set name must not be blank")]
    BlankName,
    #[error("set name {0:?} is used more than once")]
    NameCollision(String),
}

/// Membership bitmask: bit `i` is set when set `i` participates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mask(pub u16);

impl Mask {
    pub fn single(index: usize) -> Mask {
        Mask(1 << index)
    }

    pub fn popcount(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, index: usize) -> bool {
        self.0 & (1 << index) != 0
    }

    /// True when every set in `other` is also in `self`.
    pub fn is_superset_of(self, other: Mask) -> bool {
        self.0 & other.0 == other.0
    }

    /// Set indices in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }

    /// Every non-empty submask, including `self`.
    pub fn submasks(self) -> impl Iterator<Item = Mask> {
        let full = self.0;
        let mut next = Some(full);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == 0 {
                None
            } else {
                Some((cur - 1) & full)
            };
            (cur != 0).then_some(Mask(cur))
        })
        .fuse()
    }

    /// Ordering used for every listing: fewer sets first, then mask value.
    pub fn display_key(self) -> (u32, u16) {
        (self.popcount(), self.0)
    }
}

impl BitOr for Mask {
    type Output = Mask;

    fn bitor(self, rhs: Mask) -> Mask {
        Mask(self.0 | rhs.0)
    }
}

impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#b}", self.0)
    }
}

/// One named input list after deduplication.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdSet {
    name: String,
    color: Rgba,
    ids: Vec<String>,
}

impl IdSet {
    /// Deduplicates `ids` and validates the name and non-emptiness.
    pub fn new(name: impl Into<String>, color: Rgba, ids: Vec<String>) -> Result<Self, SetError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(SetError::BlankName);
        }
        let ids = dedupe(ids);
        if ids.is_empty() {
            return Err(SetError::EmptySet(name));
        }
        Ok(IdSet { name, color, ids })
    }

    /// Parses `text` with [`parse_id_list`] and builds the set.
    pub fn parse(name: impl Into<String>, color: Rgba, text: &str) -> Result<Self, SetError> {
        IdSet::new(name, color, parse_id_list(text))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn color(&self) -> Rgba {
        self.color
    }

    pub fn set_color(&mut self, color: Rgba) {
        self.color = color;
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// Splits on newlines and commas, trims each token and drops empty ones.
pub fn parse_id_list(text: &str) -> Vec<String> {
    text.split(['\n', ','])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Keeps the first occurrence of each identifier. Comparison is byte-exact.
pub fn dedupe(ids: Vec<String>) -> Vec<String> {
    let mut seen = HashSet::with_capacity(ids.len());
    ids.into_iter().filter(|id| seen.insert(id.clone())).collect()
}

/// Exclusive regions, inclusive intersections and the pruned display list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionTable {
    names: Vec<String>,
    sizes: Vec<usize>,
    exclusive: BTreeMap<Mask, Vec<String>>,
    inclusive: BTreeMap<Mask, Vec<String>>,
    union_size: usize,
    display: Vec<(Mask, Vec<String>)>,
}

impl RegionTable {
    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Deduplicated size of each input set.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn union_size(&self) -> usize {
        self.union_size
    }

    /// Non-empty exclusive regions keyed by mask.
    pub fn exclusive(&self) -> &BTreeMap<Mask, Vec<String>> {
        &self.exclusive
    }

    /// Non-empty inclusive intersections keyed by combination.
    pub fn inclusive(&self) -> &BTreeMap<Mask, Vec<String>> {
        &self.inclusive
    }

    /// IDs common to every set of `combo`; empty when nothing is shared.
    pub fn inclusive_ids(&self, combo: Mask) -> &[String] {
        self.inclusive.get(&combo).map_or(&[], Vec::as_slice)
    }

    pub fn inclusive_count(&self, combo: Mask) -> usize {
        self.inclusive_ids(combo).len()
    }

    pub fn exclusive_count(&self, mask: Mask) -> usize {
        self.exclusive.get(&mask).map_or(0, Vec::len)
    }

    /// Entries kept after pruning, ordered by popcount then mask.
    pub fn display(&self) -> &[(Mask, Vec<String>)] {
        &self.display
    }

    pub fn is_displayed(&self, combo: Mask) -> bool {
        self.display.iter().any(|(m, _)| *m == combo)
    }

    /// Mask with every set bit.
    pub fn full_mask(&self) -> Mask {
        Mask(((1u32 << self.n()) - 1) as u16)
    }

    pub fn mask_names(&self, mask: Mask) -> Vec<&str> {
        mask.members().map(|i| self.names[i].as_str()).collect()
    }

    /// Looks a combination up by set names.
    pub fn mask_of(&self, names: &[&str]) -> Option<Mask> {
        names.iter().try_fold(Mask(0), |acc, name| {
            let i = self.names.iter().position(|n| n == name)?;
            Some(Mask(acc.0 | (1 << i)))
        })
    }
}

pub fn build_region_table(sets: &[IdSet]) -> Result<RegionTable, SetError> {
    if !(MIN_SETS..=MAX_SETS).contains(&sets.len()) {
        return Err(SetError::Cardinality(sets.len()));
    }
    let mut names = HashSet::new();
    for set in sets {
        if set.name.trim().is_empty() {
            return Err(SetError::BlankName);
        }
        if set.ids.is_empty() {
            return Err(SetError::EmptySet(set.name.clone()));
        }
        if !names.insert(set.name.as_str()) {
            return Err(SetError::NameCollision(set.name.clone()));
        }
    }

    // Union in first-seen order, each ID tagged with its membership mask.
    let mut slot: HashMap<&str, usize> = HashMap::new();
    let mut union: Vec<(&str, Mask)> = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        for id in &set.ids {
            let k = *slot.entry(id.as_str()).or_insert_with(|| {
                union.push((id.as_str(), Mask(0)));
                union.len() - 1
            });
            union[k].1 .0 |= 1 << i;
        }
    }

    let mut exclusive: BTreeMap<Mask, Vec<String>> = BTreeMap::new();
    let mut inclusive: BTreeMap<Mask, Vec<String>> = BTreeMap::new();
    for &(id, mask) in &union {
        exclusive.entry(mask).or_default().push(id.to_owned());
        for combo in mask.submasks() {
            inclusive.entry(combo).or_default().push(id.to_owned());
        }
    }

    let mut table = RegionTable {
        names: sets.iter().map(|s| s.name.clone()).collect(),
        sizes: sets.iter().map(IdSet::len).collect(),
        exclusive,
        inclusive,
        union_size: union.len(),
        display: Vec::new(),
    };
    table.display = prune_redundant(&table);
    Ok(table)
}

/// Drops every combination whose inclusive IDs are identical to those of a
/// strictly larger combination.
///
/// Inclusive lists shrink as sets are added, so an identical strict superset
/// exists iff adding a single set leaves the count unchanged.
pub fn prune_redundant(table: &RegionTable) -> Vec<(Mask, Vec<String>)> {
    let n = table.n();
    let mut kept: Vec<(Mask, Vec<String>)> = table
        .inclusive
        .iter()
        .filter(|(combo, ids)| {
            !(0..n)
                .filter(|&i| !combo.contains(i))
                .any(|i| table.inclusive_count(Mask(combo.0 | (1 << i))) == ids.len())
        })
        .map(|(combo, ids)| (*combo, ids.clone()))
        .collect();
    kept.sort_by_key(|(m, _)| m.display_key());
    kept
}
