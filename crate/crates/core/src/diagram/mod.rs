//! Passage-token codes for virtual link diagrams.
//!
//! A diagram is a list of components, each a cyclic sequence of passages.
//! A classical crossing is visited twice (`O<id><sign>` over, `U<id><sign>`
//! under); a virtual crossing is visited twice as `V<id>+` / `V<id>-`.
//!
//! Sense convention: a virtual passage is `Increasing` (`+`) when the other
//! strand crosses from left to right relative to the direction of travel,
//! and the `s`-label is multiplied by `s` across it. The opposite passage of
//! the same virtual crossing is `Decreasing` and multiplies by `s^-1`.
//! Swapping this convention only replaces `s` by `s^-1` throughout.

mod arcs;
mod parse;
mod random;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub use arcs::{long_arcs, Arc, LongArc, LongArcDecomposition, NotProper};
pub use parse::{parse_code, ParseError};
pub use random::{random_diagram, InfeasibleShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    Increasing,
    Decreasing,
}

impl Sense {
    /// Change of the `s`-degree across this passage.
    pub fn step(self) -> i32 {
        match self {
            Sense::Increasing => 1,
            Sense::Decreasing => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sense::Increasing => Sense::Decreasing,
            Sense::Decreasing => Sense::Increasing,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sense::Increasing => '+',
            Sense::Decreasing => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PassageKind {
    Over,
    Under,
    VirtualPass,
}

/// One passage of a strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Passage {
    Over { id: u32, sign: Sign },
    Under { id: u32, sign: Sign },
    Virtual { id: u32, sense: Sense },
}

impl Passage {
    pub fn kind(&self) -> PassageKind {
        match self {
            Passage::Over { .. } => PassageKind::Over,
            Passage::Under { .. } => PassageKind::Under,
            Passage::Virtual { .. } => PassageKind::VirtualPass,
        }
    }

    pub fn id(&self) -> u32 {
        match *self {
            Passage::Over { id, .. } | Passage::Under { id, .. } | Passage::Virtual { id, .. } => id,
        }
    }

    pub fn is_classical(&self) -> bool {
        !matches!(self, Passage::Virtual { .. })
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Passage::Over { id, sign } => write!(f, "O{id}{}", sign.symbol()),
            Passage::Under { id, sign } => write!(f, "U{id}{}", sign.symbol()),
            Passage::Virtual { id, sense } => write!(f, "V{id}{}", sense.symbol()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationError {
    #[error("diagram has no components")]
    EmptyDiagram,
    #[error("component {0} has no passages")]
    EmptyComponent(usize),
    #[error("crossing ids must be positive")]
    ZeroId,
    #[error("classical id {id} appears {count} times (expected exactly 2)")]
    ClassicalMultiplicity { id: u32, count: usize },
    #[error("classical id {id} needs one over and one under passage")]
    ClassicalRoles { id: u32 },
    #[error("classical id {id} has mismatched signs")]
    SignMismatch { id: u32 },
    #[error("virtual id {id} appears {count} times (expected exactly 2)")]
    VirtualMultiplicity { id: u32, count: usize },
    #[error("virtual id {id} lacks a {missing:?} passage")]
    SenseMismatch { id: u32, missing: Sense },
}

/// A validated diagram code.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagramCode {
    components: Vec<Vec<Passage>>,
}

impl DiagramCode {
    pub fn new(components: Vec<Vec<Passage>>) -> Result<Self, ValidationError> {
        if components.is_empty() {
            return Err(ValidationError::EmptyDiagram);
        }
        if let Some(c) = components.iter().position(|c| c.is_empty()) {
            return Err(ValidationError::EmptyComponent(c));
        }
        let mut classical: BTreeMap<u32, Vec<Passage>> = BTreeMap::new();
        let mut virtuals: BTreeMap<u32, Vec<Sense>> = BTreeMap::new();
        for p in components.iter().flatten() {
            if p.id() == 0 {
                return Err(ValidationError::ZeroId);
            }
            match *p {
                Passage::Virtual { id, sense } => virtuals.entry(id).or_default().push(sense),
                _ => classical.entry(p.id()).or_default().push(*p),
            }
        }
        for (&id, uses) in &classical {
            if uses.len() != 2 {
                return Err(ValidationError::ClassicalMultiplicity { id, count: uses.len() });
            }
            match (uses[0], uses[1]) {
                (Passage::Over { sign: a, .. }, Passage::Under { sign: b, .. })
                | (Passage::Under { sign: a, .. }, Passage::Over { sign: b, .. }) => {
                    if a != b {
                        return Err(ValidationError::SignMismatch { id });
                    }
                }
                _ => return Err(ValidationError::ClassicalRoles { id }),
            }
        }
        for (&id, senses) in &virtuals {
            if senses.len() != 2 {
                return Err(ValidationError::VirtualMultiplicity { id, count: senses.len() });
            }
            if senses[0] == senses[1] {
                return Err(ValidationError::SenseMismatch { id, missing: senses[0].flip() });
            }
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Vec<Passage>> {
        self.components
    }

    pub fn passages(&self) -> impl Iterator<Item = &Passage> + '_ {
        self.components.iter().flatten()
    }

    pub fn classical_ids(&self) -> BTreeSet<u32> {
        self.passages().filter(|p| p.is_classical()).map(Passage::id).collect()
    }

    pub fn virtual_ids(&self) -> BTreeSet<u32> {
        self.passages().filter(|p| !p.is_classical()).map(Passage::id).collect()
    }

    /// Number of classical crossings.
    pub fn n(&self) -> usize {
        self.passages().filter(|p| p.kind() == PassageKind::Over).count()
    }

    /// Number of virtual crossings.
    pub fn k(&self) -> usize {
        self.passages().filter(|p| matches!(p, Passage::Virtual { sense: Sense::Increasing, .. })).count()
    }

    /// Sum of the local writhe numbers of the classical crossings.
    pub fn writhe(&self) -> i32 {
        self.passages()
            .map(|p| match p {
                Passage::Over { sign, .. } => sign.value(),
                _ => 0,
            })
            .sum()
    }

    /// An id not used by any crossing of either kind.
    pub fn fresh_id(&self) -> u32 {
        self.passages().map(Passage::id).max().unwrap_or(0) + 1
    }

    /// Whether every component has an underpass, and the components that do not.
    pub fn is_proper(&self) -> (bool, Vec<usize>) {
        let offending: Vec<usize> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.iter().any(|p| p.kind() == PassageKind::Under))
            .map(|(i, _)| i)
            .collect();
        (offending.is_empty(), offending)
    }

    /// Appends a positive curl `O<f>+ U<f>+` with a fresh id to every
    /// component lacking an underpass.
    pub fn properize(&self) -> Self {
        let (_, offending) = self.is_proper();
        let mut out = self.clone();
        for c in offending {
            let id = out.fresh_id();
            let sign = Sign::Positive;
            out.components[c].push(Passage::Over { id, sign });
            out.components[c].push(Passage::Under { id, sign });
        }
        out
    }

    /// Flips the sense of every virtual passage.
    pub fn mirror_virtual(&self) -> Self {
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| match *p {
                        Passage::Virtual { id, sense } => Passage::Virtual { id, sense: sense.flip() },
                        other => other,
                    })
                    .collect()
            })
            .collect();
        Self { components }
    }

    /// Split union with `other`, whose classical and virtual ids are shifted
    /// past those of `self`. Components of `self` come first.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let classical_shift = self.classical_ids().last().copied().unwrap_or(0);
        let virtual_shift = self.virtual_ids().last().copied().unwrap_or(0);
        let shifted = other.components.iter().map(|c| {
            c.iter()
                .map(|p| match *p {
                    Passage::Over { id, sign } => Passage::Over { id: id + classical_shift, sign },
                    Passage::Under { id, sign } => Passage::Under { id: id + classical_shift, sign },
                    Passage::Virtual { id, sense } => Passage::Virtual { id: id + virtual_shift, sense },
                })
                .collect::<Vec<_>>()
        });
        let mut components = self.components.clone();
        components.extend(shifted);
        Self { components }
    }

    /// Canonical text: one line per component, tokens separated by spaces.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for DiagramCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, component) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            for (j, p) in component.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for DiagramCode {
    type Err = ParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_code(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> DiagramCode {
        text.parse().unwrap()
    }

    #[test]
    fn counts() {
        let e1 = code("O1+ V1+ U1+ V1-");
        assert_eq!((e1.components().len(), e1.n(), e1.k()), (1, 1, 1));
        assert_eq!(e1.writhe(), 1);
        assert_eq!(code("O1- U1-").writhe(), -1);
        assert_eq!(code("O1+ U2+ O3+ U1+ O2+ U3+").writhe(), 3);
    }

    #[test]
    fn validation_errors() {
        let err = |text: &str| DiagramCode::new(parse::tokens_only(text).unwrap()).unwrap_err();
        assert_eq!(err("O1+ U1+ O1+"), ValidationError::ClassicalMultiplicity { id: 1, count: 3 });
        assert_eq!(
            err("O1+ V1+ U1+ V1+"),
            ValidationError::SenseMismatch { id: 1, missing: Sense::Decreasing }
        );
        assert_eq!(err("O1+ U1-"), ValidationError::SignMismatch { id: 1 });
        assert_eq!(err("O1+ O1+"), ValidationError::ClassicalRoles { id: 1 });
        assert_eq!(err("V2+"), ValidationError::VirtualMultiplicity { id: 2, count: 1 });
        assert_eq!(err("O0+ U0+"), ValidationError::ZeroId);
        assert_eq!(DiagramCode::new(vec![]), Err(ValidationError::EmptyDiagram));
    }

    #[test]
    fn properness() {
        assert_eq!(code("V1+ V1-").is_proper(), (false, vec![0]));
        assert_eq!(code("O1+ V1+ U1+ V1-").is_proper(), (true, vec![]));
        assert_eq!(code("O1+ U2+ O2+ U1+\nV1+ V1-").is_proper(), (false, vec![1]));
    }

    #[test]
    fn properization() {
        assert_eq!(code("V1+ V1-").properize(), code("V1+ V1- O2+ U2+"));
        let proper = code("O1+ V1+ U1+ V1-");
        assert_eq!(proper.properize(), proper);
        let two = code("V1+ V2-\nV2+ V1-").properize();
        assert_eq!(two, code("V1+ V2- O3+ U3+\nV2+ V1- O4+ U4+"));
        assert!(two.is_proper().0);
        assert_eq!(two.virtual_ids(), code("V1+ V2-\nV2+ V1-").virtual_ids());
    }

    #[test]
    fn mirror() {
        let e1 = code("O1+ V1+ U1+ V1-");
        assert_eq!(e1.mirror_virtual(), code("O1+ V1- U1+ V1+"));
        assert_eq!(e1.mirror_virtual().mirror_virtual(), e1);
        let classical = code("O1+ U2- O2- U1+");
        assert_eq!(classical.mirror_virtual(), classical);
    }

    #[test]
    fn union_shifts_ids() {
        let a = code("O1+ V1+ U1+ V1-");
        let u = a.disjoint_union(&a);
        assert_eq!(u, code("O1+ V1+ U1+ V1-\nO2+ V2+ U2+ V2-"));
    }

    #[test]
    fn serialization() {
        for text in ["O1+ V1+ U1+ V1-", "O1+ U2+ O2+ U1+\nV1+ V1- O3- U3-"] {
            assert_eq!(code(text).serialize(), text);
            assert_eq!(code(&code(text).serialize()), code(text));
        }
    }
}
