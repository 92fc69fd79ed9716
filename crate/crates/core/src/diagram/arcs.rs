use std::collections::HashMap;

use super::{DiagramCode, Passage, Sign};

/// A piece of a long arc between consecutive cut points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    /// Power of `s` in the arc's label.
    pub degree: i32,
    pub component: usize,
    /// Position of the token that opens the arc: the underpass the long arc
    /// emanates from for the first arc, otherwise a virtual passage.
    pub opening: usize,
    /// Position of the first token inside the arc (cyclic).
    pub start: usize,
    /// Number of tokens inside the arc; all of them are overpasses.
    pub len: usize,
    /// Crossing indices this arc passes over.
    pub over: Vec<usize>,
    /// Crossing index the arc emanates from (first arc only).
    pub emanates_from: Option<usize>,
    /// Crossing index the arc comes into (last arc only).
    pub comes_into: Option<usize>,
}

impl Arc {
    pub fn is_incident(&self, crossing: usize) -> bool {
        self.emanates_from == Some(crossing)
            || self.comes_into == Some(crossing)
            || self.over.contains(&crossing)
    }
}

/// The strand running from one underpass to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongArc {
    /// Index of the crossing it emanates from; equals its own index.
    pub crossing: usize,
    pub component: usize,
    pub arcs: Vec<Arc>,
    /// Increasing virtual passages along the long arc.
    pub increasing: usize,
    /// Decreasing virtual passages along the long arc.
    pub decreasing: usize,
}

impl LongArc {
    pub fn max_degree(&self) -> i32 {
        self.arcs.iter().map(|a| a.degree).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> i32 {
        self.arcs.iter().map(|a| a.degree).min().unwrap_or(0)
    }

    /// Crossing index the long arc ends at.
    pub fn ends_at(&self) -> usize {
        self.arcs.last().and_then(|a| a.comes_into).expect("long arc ends at an underpass")
    }
}

/// Long arcs of a proper diagram, indexed by the crossing they emanate from.
///
/// Crossings are indexed `0..n` in order of first appearance (scanning
/// components, then tokens); [`LongArcDecomposition::crossing_ids`] maps an
/// index back to the id used in the code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongArcDecomposition {
    crossing_ids: Vec<u32>,
    signs: Vec<Sign>,
    long_arcs: Vec<LongArc>,
    virtual_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("diagram is not proper: components {components:?} have no underpass")]
pub struct NotProper {
    pub components: Vec<usize>,
}

impl LongArcDecomposition {
    pub fn n(&self) -> usize {
        self.crossing_ids.len()
    }

    pub fn k(&self) -> usize {
        self.virtual_count
    }

    pub fn crossing_ids(&self) -> &[u32] {
        &self.crossing_ids
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.crossing_ids.iter().position(|&c| c == id)
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn long_arcs(&self) -> &[LongArc] {
        &self.long_arcs
    }

    pub fn long_arc(&self, j: usize) -> &LongArc {
        &self.long_arcs[j]
    }
}

/// Cuts a proper code at its underpasses into long arcs, and each long arc
/// at its virtual passages into arcs labelled by their `s`-degree.
pub fn long_arcs(code: &DiagramCode) -> Result<LongArcDecomposition, NotProper> {
    let (proper, offending) = code.is_proper();
    if !proper {
        return Err(NotProper { components: offending });
    }

    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut crossing_ids = Vec::new();
    let mut signs = Vec::new();
    for p in code.passages() {
        if let Passage::Over { id, sign } | Passage::Under { id, sign } = *p {
            index.entry(id).or_insert_with(|| {
                crossing_ids.push(id);
                signs.push(sign);
                crossing_ids.len() - 1
            });
        }
    }

    let mut slots: Vec<Option<LongArc>> = vec![None; crossing_ids.len()];
    for (c, tokens) in code.components().iter().enumerate() {
        let len = tokens.len();
        for (u, p) in tokens.iter().enumerate() {
            let Passage::Under { id, .. } = *p else { continue };
            let crossing = index[&id];

            let new_arc = |degree, opening: usize| Arc {
                degree,
                component: c,
                opening,
                start: (opening + 1) % len,
                len: 0,
                over: Vec::new(),
                emanates_from: None,
                comes_into: None,
            };
            let mut arcs = Vec::new();
            let mut current = new_arc(0, u);
            current.emanates_from = Some(crossing);
            let (mut increasing, mut decreasing) = (0, 0);
            let mut pos = (u + 1) % len;
            loop {
                match tokens[pos] {
                    Passage::Under { id: end, .. } => {
                        current.comes_into = Some(index[&end]);
                        arcs.push(current);
                        break;
                    }
                    Passage::Over { id: over, .. } => {
                        current.over.push(index[&over]);
                        current.len += 1;
                    }
                    Passage::Virtual { sense, .. } => {
                        let degree = current.degree + sense.step();
                        arcs.push(std::mem::replace(&mut current, new_arc(degree, pos)));
                        match sense.step() {
                            1 => increasing += 1,
                            _ => decreasing += 1,
                        }
                    }
                }
                pos = (pos + 1) % len;
            }
            slots[crossing] = Some(LongArc { crossing, component: c, arcs, increasing, decreasing });
        }
    }

    let long_arcs = slots.into_iter().map(|s| s.expect("every crossing has an underpass")).collect();
    Ok(LongArcDecomposition { crossing_ids, signs, long_arcs, virtual_count: code.k() })
}
