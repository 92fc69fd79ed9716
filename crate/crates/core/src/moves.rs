//! Local rewrites: the classical curl (first Reidemeister move), the virtual
//! curl and the virtual second move. Adjacency wraps around each component.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{DiagramCode, Passage, Sense, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    V1Add,
    V1Remove,
    V2Add,
    V2Remove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Inserts `O f U f` (or `U f O f`) with the given sign.
    R1Add { sign: Sign, over_first: bool },
    R1Remove,
    /// Inserts `V f s V f -s` where `s` is `first`.
    V1Add { first: Sense },
    V1Remove,
    /// Inserts `V m s V n -s` at the first place and `V n s V m -s` at the second.
    V2Add { sense: Sense },
    V2Remove,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::R1Add { .. } => MoveKind::R1Add,
            Move::R1Remove => MoveKind::R1Remove,
            Move::V1Add { .. } => MoveKind::V1Add,
            Move::V1Remove => MoveKind::V1Remove,
            Move::V2Add { .. } => MoveKind::V2Add,
            Move::V2Remove => MoveKind::V2Remove,
        }
    }
}

/// For removals `position` is the first token of an adjacent pair; for
/// additions it is the insertion gap (tokens are inserted before it).
/// V2 moves carry a second place in `other`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoveSite {
    pub component: usize,
    pub position: usize,
    pub other: Option<(usize, usize)>,
    pub mv: Move,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("move {site:?} does not apply")]
pub struct InvalidSite {
    pub site: MoveSite,
}

/// A move applied during a walk, with the power `l` such that
/// `zeta(after) = t^l * zeta(before)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveRecord {
    pub site: MoveSite,
    pub t_shift: i32,
}

fn pair_starts(len: usize) -> std::ops::Range<usize> {
    match len {
        0 | 1 => 0..0,
        2 => 0..1,
        _ => 0..len,
    }
}

fn at(code: &DiagramCode, c: usize, i: usize) -> Passage {
    let comp = &code.components()[c];
    comp[i % comp.len()]
}

fn is_curl(a: Passage, b: Passage) -> bool {
    a.is_classical() && b.is_classical() && a.id() == b.id()
}

fn is_virtual_curl(a: Passage, b: Passage) -> bool {
    matches!((a, b), (Passage::Virtual { id: x, sense: s }, Passage::Virtual { id: y, sense: r }) if x == y && s != r)
}

/// Removal must leave every component nonempty.
fn removal_keeps_shape(code: &DiagramCode, c: usize, removed: usize) -> bool {
    code.components()[c].len() > removed
}

fn v2_partner(code: &DiagramCode, c: usize, i: usize) -> Option<(usize, usize)> {
    let (Passage::Virtual { id: m, sense: s }, Passage::Virtual { id: n, sense: r }) =
        (at(code, c, i), at(code, c, i + 1))
    else {
        return None;
    };
    if m >= n || s == r {
        return None;
    }
    for (c2, comp) in code.components().iter().enumerate() {
        for j in pair_starts(comp.len()) {
            if at(code, c2, j) == (Passage::Virtual { id: n, sense: s })
                && at(code, c2, j + 1) == (Passage::Virtual { id: m, sense: r })
            {
                return Some((c2, j));
            }
        }
    }
    None
}

fn v2_removal_ok(code: &DiagramCode, c: usize, other: (usize, usize)) -> bool {
    let removed_from = |comp: usize| 2 * ((c == comp) as usize + (other.0 == comp) as usize);
    removal_keeps_shape(code, c, removed_from(c))
        && removal_keeps_shape(code, other.0, removed_from(other.0))
}

pub fn find_sites(code: &DiagramCode, kind: MoveKind) -> Vec<MoveSite> {
    let mut out = Vec::new();
    for (c, comp) in code.components().iter().enumerate() {
        let len = comp.len();
        match kind {
            MoveKind::R1Remove | MoveKind::V1Remove | MoveKind::V2Remove => {
                for i in pair_starts(len) {
                    let (a, b) = (at(code, c, i), at(code, c, i + 1));
                    let site = match kind {
                        MoveKind::R1Remove if is_curl(a, b) && removal_keeps_shape(code, c, 2) => {
                            Some(MoveSite { component: c, position: i, other: None, mv: Move::R1Remove })
                        }
                        MoveKind::V1Remove if is_virtual_curl(a, b) && removal_keeps_shape(code, c, 2) => {
                            Some(MoveSite { component: c, position: i, other: None, mv: Move::V1Remove })
                        }
                        MoveKind::V2Remove => v2_partner(code, c, i)
                            .filter(|&o| v2_removal_ok(code, c, o))
                            .map(|o| MoveSite { component: c, position: i, other: Some(o), mv: Move::V2Remove }),
                        _ => None,
                    };
                    out.extend(site);
                }
            }
            MoveKind::R1Add => {
                for position in 0..len {
                    for sign in [Sign::Positive, Sign::Negative] {
                        for over_first in [true, false] {
                            let mv = Move::R1Add { sign, over_first };
                            out.push(MoveSite { component: c, position, other: None, mv });
                        }
                    }
                }
            }
            MoveKind::V1Add => {
                for position in 0..len {
                    for first in [Sense::Increasing, Sense::Decreasing] {
                        out.push(MoveSite { component: c, position, other: None, mv: Move::V1Add { first } });
                    }
                }
            }
            MoveKind::V2Add => {
                for position in 0..len {
                    for (c2, comp2) in code.components().iter().enumerate() {
                        for p2 in 0..comp2.len() {
                            for sense in [Sense::Increasing, Sense::Decreasing] {
                                out.push(MoveSite {
                                    component: c,
                                    position,
                                    other: Some((c2, p2)),
                                    mv: Move::V2Add { sense },
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Drops the tokens at the given `(component, position)` places.
fn remove_places(comps: &mut [Vec<Passage>], places: &[(usize, usize)]) {
    for (c, comp) in comps.iter_mut().enumerate() {
        let len = comp.len();
        let mut i = 0;
        comp.retain(|_| {
            let keep = !places.iter().any(|&(pc, pi)| pc == c && pi % len == i);
            i += 1;
            keep
        });
    }
}

fn valid_removal(code: &DiagramCode, site: &MoveSite) -> bool {
    let Some(comp) = code.components().get(site.component) else { return false };
    if !pair_starts(comp.len()).contains(&site.position) {
        return false;
    }
    let (a, b) = (at(code, site.component, site.position), at(code, site.component, site.position + 1));
    match site.mv {
        Move::R1Remove => is_curl(a, b) && removal_keeps_shape(code, site.component, 2),
        Move::V1Remove => is_virtual_curl(a, b) && removal_keeps_shape(code, site.component, 2),
        Move::V2Remove => {
            let partner = v2_partner(code, site.component, site.position);
            partner.is_some() && partner == site.other && v2_removal_ok(code, site.component, partner.unwrap())
        }
        _ => unreachable!(),
    }
}

pub fn apply(code: &DiagramCode, site: &MoveSite) -> Result<DiagramCode, InvalidSite> {
    let invalid = || InvalidSite { site: *site };
    let mut comps = code.components().to_vec();
    let gap_ok = |c: usize, p: usize| comps.get(c).is_some_and(|comp| p < comp.len());
    let fresh = code.fresh_id();
    match site.mv {
        Move::R1Remove | Move::V1Remove | Move::V2Remove => {
            if !valid_removal(code, site) {
                return Err(invalid());
            }
            let (c1, p1) = (site.component, site.position);
            let mut places = vec![(c1, p1), (c1, p1 + 1)];
            if let Some((c2, p2)) = site.other {
                places.extend([(c2, p2), (c2, p2 + 1)]);
            }
            remove_places(&mut comps, &places);
        }
        Move::R1Add { sign, over_first } => {
            if !gap_ok(site.component, site.position) {
                return Err(invalid());
            }
            let (o, u) = (Passage::Over { id: fresh, sign }, Passage::Under { id: fresh, sign });
            let pair = if over_first { [o, u] } else { [u, o] };
            comps[site.component].splice(site.position..site.position, pair);
        }
        Move::V1Add { first } => {
            if !gap_ok(site.component, site.position) {
                return Err(invalid());
            }
            let pair = [
                Passage::Virtual { id: fresh, sense: first },
                Passage::Virtual { id: fresh, sense: first.flip() },
            ];
            comps[site.component].splice(site.position..site.position, pair);
        }
        Move::V2Add { sense } => {
            let (c2, p2) = site.other.ok_or_else(invalid)?;
            if !gap_ok(site.component, site.position) || !gap_ok(c2, p2) {
                return Err(invalid());
            }
            let (m, n) = (fresh, fresh + 1);
            let first = [Passage::Virtual { id: m, sense }, Passage::Virtual { id: n, sense: sense.flip() }];
            let second = [Passage::Virtual { id: n, sense }, Passage::Virtual { id: m, sense: sense.flip() }];
            let (c1, p1) = (site.component, site.position);
            if c1 == c2 && p2 >= p1 {
                comps[c2].splice(p2..p2, second);
                comps[c1].splice(p1..p1, first);
            } else {
                comps[c1].splice(p1..p1, first);
                comps[c2].splice(p2..p2, second);
            }
        }
    }
    DiagramCode::new(comps).map_err(|_| invalid())
}

/// Power of `t` by which a move multiplies zeta. A curl read under-first
/// contributes `t^sign`; read over-first it contributes nothing.
pub fn t_shift(code: &DiagramCode, site: &MoveSite) -> i32 {
    match site.mv {
        Move::R1Add { sign, over_first: false } => sign.value(),
        Move::R1Remove => match at(code, site.component, site.position) {
            Passage::Under { sign, .. } => -sign.value(),
            _ => 0,
        },
        _ => 0,
    }
}

fn random_site(code: &DiagramCode, rng: &mut ChaCha8Rng) -> MoveSite {
    let removals: Vec<MoveSite> = [MoveKind::R1Remove, MoveKind::V1Remove, MoveKind::V2Remove]
        .into_iter()
        .flat_map(|k| find_sites(code, k))
        .filter(|s| apply(code, s).is_ok_and(|out| out.is_proper().0))
        .collect();
    if !removals.is_empty() && rng.gen_bool(0.5) {
        return *removals.choose(rng).unwrap();
    }
    let comps = code.components();
    let gap = |rng: &mut ChaCha8Rng| {
        let c = rng.gen_range(0..comps.len());
        (c, rng.gen_range(0..comps[c].len()))
    };
    let sign = |b: bool| if b { Sign::Positive } else { Sign::Negative };
    let sense = |b: bool| if b { Sense::Increasing } else { Sense::Decreasing };
    let (component, position) = gap(rng);
    match rng.gen_range(0..3) {
        0 => MoveSite {
            component,
            position,
            other: None,
            mv: Move::R1Add { sign: sign(rng.gen()), over_first: rng.gen() },
        },
        1 => MoveSite { component, position, other: None, mv: Move::V1Add { first: sense(rng.gen()) } },
        _ => MoveSite { component, position, other: Some(gap(rng)), mv: Move::V2Add { sense: sense(rng.gen()) } },
    }
}

/// Applies `steps` random moves, choosing a removal half the time when one
/// exists. Removals that would leave a component without an underpass are
/// not taken. Deterministic in `seed`.
pub fn random_walk(code: &DiagramCode, steps: usize, seed: u64) -> (DiagramCode, Vec<MoveRecord>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = code.clone();
    let mut log = Vec::with_capacity(steps);
    for _ in 0..steps {
        let site = random_site(&current, &mut rng);
        let t_shift = t_shift(&current, &site);
        current = apply(&current, &site).expect("randomly chosen sites are valid");
        log.push(MoveRecord { site, t_shift });
    }
    (current, log)
}
