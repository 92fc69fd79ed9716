//! Special connected sums of special diagrams and the scheme language that
//! strings several of them together.
//!
//! A sum cuts two non-critical arcs of the same kind right after their
//! opening tokens and reconnects the strands crosswise. Pre-critical sums
//! (wave edges, `~`) swap which long arc owns each critical arc, so `det T`
//! and `det M` change sign; post-critical sums (straight edges, `-`) do not.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::One;

use crate::diagram::{long_arcs, DiagramCode, LongArcDecomposition, Passage};
use crate::minimality::analyze_special;
use crate::ring::TPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArcKind {
    PreCritical,
    PostCritical,
}

/// Arc `arc` (0-based) of long arc `long_arc` (0-based crossing index).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSelector {
    pub long_arc: usize,
    pub arc: usize,
    pub kind: ArcKind,
}

impl ArcSelector {
    /// Checks the position against `decomp` and derives the kind.
    pub fn at(decomp: &LongArcDecomposition, long_arc: usize, arc: usize) -> Result<Self, ComposeError> {
        let la = decomp
            .long_arcs()
            .get(long_arc)
            .filter(|la| arc < la.arcs.len())
            .ok_or(ComposeError::NoSuchArc { long_arc, arc })?;
        let kind = match arc.cmp(&la.increasing) {
            std::cmp::Ordering::Less => ArcKind::PreCritical,
            std::cmp::Ordering::Greater => ArcKind::PostCritical,
            std::cmp::Ordering::Equal => return Err(ComposeError::CriticalArc { long_arc }),
        };
        Ok(Self { long_arc, arc, kind })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComposeError {
    #[error("diagram is not special")]
    NotSpecial,
    #[error("selector kinds differ")]
    KindMismatch,
    #[error("both selectors name the same arc")]
    SameArc,
    #[error("both selectors lie on long arc {long_arc}")]
    SameLongArc { long_arc: usize },
    #[error("no arc {arc} on long arc {long_arc}")]
    NoSuchArc { long_arc: usize, arc: usize },
    #[error("arc on long arc {long_arc} is critical")]
    CriticalArc { long_arc: usize },
    #[error("unknown base `{0}`")]
    UnknownBase(String),
    #[error("selector {0} no longer names an arc")]
    LostSelector(String),
    #[error("line {line}: {reason}")]
    SchemeSyntax { line: usize, reason: String },
}

fn special_decomposition(code: &DiagramCode) -> Result<LongArcDecomposition, ComposeError> {
    let decomp = long_arcs(code).map_err(|_| ComposeError::NotSpecial)?;
    if decomp.long_arcs().iter().any(|la| la.max_degree() != la.increasing as i32) {
        return Err(ComposeError::NotSpecial);
    }
    Ok(decomp)
}

pub fn list_selectors(code: &DiagramCode, kind: ArcKind) -> Result<Vec<ArcSelector>, ComposeError> {
    let decomp = special_decomposition(code)?;
    let mut out = Vec::new();
    for (j, la) in decomp.long_arcs().iter().enumerate() {
        for mu in 0..la.arcs.len() {
            if let Ok(sel) = ArcSelector::at(&decomp, j, mu) {
                if sel.kind == kind {
                    out.push(sel);
                }
            }
        }
    }
    Ok(out)
}

pub fn special_sum(
    code: &DiagramCode,
    sel1: ArcSelector,
    sel2: ArcSelector,
) -> Result<DiagramCode, ComposeError> {
    let decomp = special_decomposition(code)?;
    let s1 = ArcSelector::at(&decomp, sel1.long_arc, sel1.arc)?;
    let s2 = ArcSelector::at(&decomp, sel2.long_arc, sel2.arc)?;
    if s1.kind != sel1.kind || s2.kind != sel2.kind || s1.kind != s2.kind {
        return Err(ComposeError::KindMismatch);
    }
    if (s1.long_arc, s1.arc) == (s2.long_arc, s2.arc) {
        return Err(ComposeError::SameArc);
    }
    if s1.long_arc == s2.long_arc {
        return Err(ComposeError::SameLongArc { long_arc: s1.long_arc });
    }
    let a = &decomp.long_arc(s1.long_arc).arcs[s1.arc];
    let b = &decomp.long_arc(s2.long_arc).arcs[s2.arc];

    let mut components = code.components().to_vec();
    let cut_a = a.opening + 1;
    let cut_b = b.opening + 1;
    if a.component != b.component {
        let p = &components[a.component];
        let q = &components[b.component];
        let mut merged = Vec::with_capacity(p.len() + q.len());
        merged.extend_from_slice(&p[..cut_a]);
        merged.extend_from_slice(&q[cut_b..]);
        merged.extend_from_slice(&q[..cut_b]);
        merged.extend_from_slice(&p[cut_a..]);
        components[a.component] = merged;
        components.remove(b.component);
    } else {
        let p = &components[a.component];
        let len = p.len();
        let mut rotated = p[cut_a % len..].to_vec();
        rotated.extend_from_slice(&p[..cut_a % len]);
        let split = (cut_b + len - cut_a) % len;
        let second = rotated.split_off(split);
        components[a.component] = rotated;
        components.insert(a.component + 1, second);
    }
    Ok(DiagramCode::new(components).expect("crosswise reconnection keeps the code valid"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Pre-critical, drawn as `~`.
    Wave,
    /// Post-critical, drawn as `-`.
    Straight,
}

impl EdgeKind {
    pub fn arc_kind(self) -> ArcKind {
        match self {
            EdgeKind::Wave => ArcKind::PreCritical,
            EdgeKind::Straight => ArcKind::PostCritical,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            EdgeKind::Wave => '~',
            EdgeKind::Straight => '-',
        }
    }
}

/// A position `(long arc, arc)` in a base diagram, both 0-based; written
/// `[j.mu]` in scheme files with `j` counted from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseArc {
    pub long_arc: usize,
    pub arc: usize,
}

impl fmt::Display for BaseArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}.{}]", self.long_arc + 1, self.arc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeEdge {
    pub a: String,
    pub arc_a: BaseArc,
    pub b: String,
    pub arc_b: BaseArc,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scheme {
    pub nodes: Vec<String>,
    pub edges: Vec<SchemeEdge>,
}

impl Scheme {
    pub fn wave_edges(&self) -> usize {
        self.edges.iter().filter(|e| e.kind == EdgeKind::Wave).count()
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            writeln!(f, "edge {}{} {} {}{}", e.a, e.arc_a, e.kind.symbol(), e.b, e.arc_b)?;
        }
        Ok(())
    }
}

/// A parsed scheme file: the scheme plus the diagram file of each node,
/// resolved against the scheme file's directory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemeFile {
    pub scheme: Scheme,
    pub files: BTreeMap<String, PathBuf>,
}

fn parse_endpoint(text: &str, line: usize) -> Result<(String, BaseArc), ComposeError> {
    let err = |reason: &str| ComposeError::SchemeSyntax { line, reason: format!("{reason}: `{text}`") };
    let open = text.find('[').ok_or_else(|| err("expected name[j.mu]"))?;
    let inner = text[open + 1..].strip_suffix(']').ok_or_else(|| err("missing `]`"))?;
    let (j, mu) = inner.split_once('.').ok_or_else(|| err("expected j.mu"))?;
    let j: usize = j.parse().map_err(|_| err("bad long arc number"))?;
    let mu: usize = mu.parse().map_err(|_| err("bad arc number"))?;
    if j == 0 {
        return Err(err("long arcs are numbered from 1"));
    }
    let name = &text[..open];
    if name.is_empty() {
        return Err(err("missing node name"));
    }
    Ok((name.to_string(), BaseArc { long_arc: j - 1, arc: mu }))
}

/// Parses `node <name> = <file>` and `edge <a>[j.mu] ~|- <b>[j.mu]` lines;
/// `#` starts a comment.
pub fn parse_scheme(text: &str, base_dir: &Path) -> Result<SchemeFile, ComposeError> {
    let mut scheme = Scheme::default();
    let mut files = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let words: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
        let syntax = |reason: &str| ComposeError::SchemeSyntax { line, reason: reason.to_string() };
        match words.as_slice() {
            [] => {}
            ["node", name, "=", file] => {
                if files.insert(name.to_string(), base_dir.join(file)).is_some() {
                    return Err(syntax("duplicate node"));
                }
                scheme.nodes.push(name.to_string());
            }
            ["edge", a, kind, b] => {
                let kind = match *kind {
                    "~" => EdgeKind::Wave,
                    "-" => EdgeKind::Straight,
                    _ => return Err(syntax("edge kind must be `~` or `-`")),
                };
                let (a, arc_a) = parse_endpoint(a, line)?;
                let (b, arc_b) = parse_endpoint(b, line)?;
                for name in [&a, &b] {
                    if !files.contains_key(name) {
                        return Err(ComposeError::UnknownBase(name.clone()));
                    }
                }
                scheme.edges.push(SchemeEdge { a, arc_a, b, arc_b, kind });
            }
            _ => return Err(syntax("expected `node <name> = <file>` or `edge <a>[j.mu] ~|- <b>[j.mu]`")),
        }
    }
    Ok(SchemeFile { scheme, files })
}

/// The opening token of an arc identifies it across sums and renumbering.
fn opening_token(code: &DiagramCode, decomp: &LongArcDecomposition, at: BaseArc) -> Result<Passage, ComposeError> {
    let arc = decomp
        .long_arcs()
        .get(at.long_arc)
        .and_then(|la| la.arcs.get(at.arc))
        .ok_or(ComposeError::NoSuchArc { long_arc: at.long_arc, arc: at.arc })?;
    Ok(code.components()[arc.component][arc.opening])
}

fn locate(code: &DiagramCode, decomp: &LongArcDecomposition, token: Passage) -> Option<(usize, usize)> {
    decomp.long_arcs().iter().enumerate().find_map(|(j, la)| {
        la.arcs
            .iter()
            .position(|a| code.components()[a.component][a.opening] == token)
            .map(|mu| (j, mu))
    })
}

fn shift(p: Passage, classical: u32, virtual_: u32) -> Passage {
    match p {
        Passage::Over { id, sign } => Passage::Over { id: id + classical, sign },
        Passage::Under { id, sign } => Passage::Under { id: id + classical, sign },
        Passage::Virtual { id, sense } => Passage::Virtual { id: id + virtual_, sense },
    }
}

/// Takes the disjoint union of the nodes in order, then applies the edges
/// as special sums in order.
pub fn build_scheme(
    scheme: &Scheme,
    bases: &HashMap<String, DiagramCode>,
) -> Result<DiagramCode, ComposeError> {
    let mut union: Option<DiagramCode> = None;
    let mut shifts: HashMap<&str, (u32, u32)> = HashMap::new();
    for name in &scheme.nodes {
        let base = bases.get(name).ok_or_else(|| ComposeError::UnknownBase(name.clone()))?;
        special_decomposition(base)?;
        let shift_ids = match &union {
            None => (0, 0),
            Some(u) => (
                u.classical_ids().last().copied().unwrap_or(0),
                u.virtual_ids().last().copied().unwrap_or(0),
            ),
        };
        shifts.insert(name, shift_ids);
        union = Some(match union {
            None => base.clone(),
            Some(u) => u.disjoint_union(base),
        });
    }
    let mut code = union.ok_or(ComposeError::SchemeSyntax { line: 0, reason: "no nodes".into() })?;

    let mut markers = Vec::with_capacity(scheme.edges.len());
    for e in &scheme.edges {
        let mut ends = [Passage::Under { id: 0, sign: crate::diagram::Sign::Positive }; 2];
        for (slot, (name, at)) in ends.iter_mut().zip([(&e.a, e.arc_a), (&e.b, e.arc_b)]) {
            let base = bases.get(name).ok_or_else(|| ComposeError::UnknownBase(name.clone()))?;
            let decomp = special_decomposition(base)?;
            let token = opening_token(base, &decomp, at)?;
            let (cs, vs) = shifts[name.as_str()];
            *slot = shift(token, cs, vs);
        }
        markers.push(ends);
    }

    for (e, ends) in scheme.edges.iter().zip(markers) {
        let decomp = special_decomposition(&code)?;
        let mut sels = Vec::with_capacity(2);
        for (token, (name, at)) in ends.into_iter().zip([(&e.a, e.arc_a), (&e.b, e.arc_b)]) {
            let (j, mu) =
                locate(&code, &decomp, token).ok_or_else(|| ComposeError::LostSelector(format!("{name}{at}")))?;
            let sel = ArcSelector::at(&decomp, j, mu)?;
            if sel.kind != e.kind.arc_kind() {
                return Err(ComposeError::KindMismatch);
            }
            sels.push(sel);
        }
        code = special_sum(&code, sels[0], sels[1])?;
    }
    Ok(code)
}

/// `(epsilon, beta)` of a scheme from its nodes' values.
pub fn fold_eps_beta(scheme: &Scheme, values: &HashMap<String, (i8, u32)>) -> (i8, u32) {
    let mut epsilon = if scheme.wave_edges().is_multiple_of(2) { 1 } else { -1 };
    let mut beta = 0;
    for name in &scheme.nodes {
        let (e, b) = values[name];
        epsilon *= e;
        beta += b;
    }
    (epsilon, beta)
}

/// Invariants a composed diagram should have, derived from its summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub det_t: TPoly,
    pub per_m: BigUint,
    /// Present when every summand is an M-diagram.
    pub eps_beta: Option<(i8, u32)>,
}

pub fn predict(scheme: &Scheme, bases: &HashMap<String, DiagramCode>) -> Result<Prediction, ComposeError> {
    let mut det_t = if scheme.wave_edges().is_multiple_of(2) { TPoly::one() } else { -TPoly::one() };
    let mut per_m = BigUint::one();
    let mut values = HashMap::new();
    let mut all_m = true;
    for name in &scheme.nodes {
        let base = bases.get(name).ok_or_else(|| ComposeError::UnknownBase(name.clone()))?;
        let decomp = special_decomposition(base)?;
        let tdata = analyze_special(&decomp);
        let critical = tdata.critical.as_ref().ok_or(ComposeError::NotSpecial)?;
        det_t = det_t * critical.det_t();
        let p = critical.per_m();
        if tdata.cyclic_crossings.is_empty() && p.is_one() {
            match crate::minimality::epsilon_beta(&tdata, decomp.signs()) {
                Ok(eb) => {
                    values.insert(name.clone(), (eb.epsilon, eb.beta));
                }
                Err(_) => all_m = false,
            }
        } else {
            all_m = false;
        }
        per_m *= p;
    }
    let eps_beta = all_m.then(|| fold_eps_beta(scheme, &values));
    Ok(Prediction { det_t, per_m, eps_beta })
}

fn chain(prefix: &str, n: usize, first_wave: bool) -> Scheme {
    let nodes: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
    let edges = (1..n)
        .map(|i| {
            let wave = (i % 2 == 1) == first_wave;
            SchemeEdge {
                a: nodes[i - 1].clone(),
                arc_a: BaseArc { long_arc: 0, arc: 0 },
                b: nodes[i].clone(),
                arc_b: BaseArc { long_arc: 0, arc: 0 },
                kind: if wave { EdgeKind::Wave } else { EdgeKind::Straight },
            }
        })
        .collect();
    Scheme { nodes, edges }
}

/// `T ~ T - T ~ T - ...` on `n` copies. Selectors are placeholders.
pub fn t_series(n: usize) -> Scheme {
    chain("T", n, true)
}

/// `T' - T' ~ T' - T' ~ ...` on `n` copies of the second base knot.
pub fn t_tilde_series(n: usize) -> Scheme {
    chain("U", n, false)
}

/// `r` copies of a base joined along a chain with the given edge kinds,
/// plus optional extra edges closing cycles.
pub fn q_series(kinds: &[EdgeKind]) -> Scheme {
    let n = kinds.len() + 1;
    let mut scheme = chain("Q", n, true);
    for (e, &k) in scheme.edges.iter_mut().zip(kinds) {
        e.kind = k;
    }
    scheme
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> DiagramCode {
        text.parse().unwrap()
    }

    #[test]
    fn selectors_of_mirrored_example() {
        let d = code("O1+ V1- U1+ V1+");
        let pre = list_selectors(&d, ArcKind::PreCritical).unwrap();
        let post = list_selectors(&d, ArcKind::PostCritical).unwrap();
        assert_eq!(pre, vec![ArcSelector { long_arc: 0, arc: 0, kind: ArcKind::PreCritical }]);
        assert_eq!(post, vec![ArcSelector { long_arc: 0, arc: 2, kind: ArcKind::PostCritical }]);
        assert!(list_selectors(&code("O1+ U2+ O3+ U1+ O2+ U3+"), ArcKind::PreCritical).unwrap().is_empty());
        assert_eq!(list_selectors(&code("O1+ V1+ U1+ V1-"), ArcKind::PreCritical), Err(ComposeError::NotSpecial));
    }

    #[test]
    fn sum_errors() {
        let d = code("O1+ V1- U1+ V1+");
        let pre = ArcSelector { long_arc: 0, arc: 0, kind: ArcKind::PreCritical };
        let post = ArcSelector { long_arc: 0, arc: 2, kind: ArcKind::PostCritical };
        assert_eq!(special_sum(&d, pre, post), Err(ComposeError::KindMismatch));
        assert_eq!(special_sum(&d, pre, pre), Err(ComposeError::SameArc));
        let u = d.disjoint_union(&d);
        let bad = ArcSelector { long_arc: 1, arc: 1, kind: ArcKind::PreCritical };
        assert_eq!(special_sum(&u, pre, bad), Err(ComposeError::CriticalArc { long_arc: 1 }));
    }

    #[test]
    fn two_component_sum_merges() {
        let d = code("O1+ V1- U1+ V1+");
        let u = d.disjoint_union(&d);
        let s0 = ArcSelector { long_arc: 0, arc: 0, kind: ArcKind::PreCritical };
        let s1 = ArcSelector { long_arc: 1, arc: 0, kind: ArcKind::PreCritical };
        let sum = special_sum(&u, s0, s1).unwrap();
        assert_eq!(sum.components().len(), 1);
        assert_eq!(sum.to_string(), "O1+ V1- U1+ V2+ O2+ V2- U2+ V1+");
        let t = analyze_special(&long_arcs(&sum).unwrap());
        let c = t.critical.unwrap();
        assert_eq!(c.det_t(), -(TPoly::t_pow_minus_one(1) * TPoly::t_pow_minus_one(1)));
        assert!(c.per_m().is_one());
    }

    #[test]
    fn eps_folding() {
        let mut values = HashMap::new();
        values.insert("T1".to_string(), (1, 1));
        values.insert("T2".to_string(), (1, 1));
        assert_eq!(fold_eps_beta(&t_series(2), &values), (-1, 2));
        let mut straight = t_series(2);
        straight.edges[0].kind = EdgeKind::Straight;
        assert_eq!(fold_eps_beta(&straight, &values), (1, 2));
        let single = Scheme { nodes: vec!["T1".into()], edges: vec![] };
        assert_eq!(fold_eps_beta(&single, &values), (1, 1));
    }

    #[test]
    fn scheme_parsing() {
        let text = "# two copies\nnode A = a.txt\nnode B = sub/b.txt\nedge A[1.0] ~ B[2.3]\n";
        let parsed = parse_scheme(text, Path::new("/x")).unwrap();
        assert_eq!(parsed.scheme.nodes, vec!["A", "B"]);
        assert_eq!(parsed.files["B"], PathBuf::from("/x/sub/b.txt"));
        let e = &parsed.scheme.edges[0];
        assert_eq!((e.arc_a, e.arc_b, e.kind), (BaseArc { long_arc: 0, arc: 0 }, BaseArc { long_arc: 1, arc: 3 }, EdgeKind::Wave));
        assert!(parse_scheme("edge A[1.0] ~ B[1.0]", Path::new(".")).is_err());
        assert!(parse_scheme("node A = a\nedge A[0.0] - A[1.0]", Path::new(".")).is_err());
        assert!(parse_scheme("node A = a\nedge A[1.0] = A[1.0]", Path::new(".")).is_err());
    }
}
