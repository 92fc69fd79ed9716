//! Minimality certificates for the virtual crossing number.
//!
//! A diagram is *special* when every long arc reaches `s`-degree `p_j`
//! (its count of increasing passages); the unique arc of that degree is the
//! long arc's *critical arc*. For special diagrams the coefficient of `s^k`
//! in zeta equals `det T`, where `T_ij` is the incidence coefficient of
//! crossing `i` with critical arc `j`, so `det T != 0` certifies that `k`
//! virtual crossings are needed. The cheaper M-diagram test asks for no
//! cyclic crossings and a unique crossing/critical-arc pairing (permanent of
//! the 0/1 incidence matrix equal to 1).
//!
//! The lowest-degree side is handled by certifying the virtual mirror, whose
//! zeta is zeta(D) with `s` replaced by `s^-1`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::diagram::{long_arcs, DiagramCode, LongArcDecomposition, Sign};
use crate::invariants::{incidence_coefficient, AlexanderMatrix};
use crate::ring::{
    det, factor_eps_alpha_beta, permanent, BitMatrix, DetMethod, EpsAlphaBeta, FactorError,
    LaurentPoly2, PolyMatrix, TPoly,
};

/// Ways a crossing and an arc can meet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Incidence {
    pub emanating: bool,
    pub over: bool,
    pub incoming: bool,
}

impl Incidence {
    pub fn any(&self) -> bool {
        self.emanating || self.over || self.incoming
    }

    pub fn count(&self) -> usize {
        self.emanating as usize + self.over as usize + self.incoming as usize
    }
}

/// Critical-arc data of a special diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalArcs {
    /// Index `mu` of the critical arc on each long arc; equals `p_j`.
    pub arc_index: Vec<usize>,
    /// `incidence[i][j]`: how crossing `i` meets critical arc `j`.
    pub incidence: Vec<Vec<Incidence>>,
    pub t_matrix: PolyMatrix,
    pub m_matrix: BitMatrix,
}

impl CriticalArcs {
    pub fn det_t(&self) -> TPoly {
        det(&self.t_matrix, DetMethod::FractionFree)
            .to_tpoly()
            .expect("T-matrix entries are free of s")
    }

    pub fn per_m(&self) -> BigUint {
        permanent(&self.m_matrix)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TData {
    /// Present exactly when the diagram is special.
    pub critical: Option<CriticalArcs>,
    /// Crossings some arc emanates from, passes over and comes into.
    pub cyclic_crossings: BTreeSet<usize>,
}

impl TData {
    pub fn special(&self) -> bool {
        self.critical.is_some()
    }
}

pub fn analyze_special(decomp: &LongArcDecomposition) -> TData {
    let mut cyclic_crossings = BTreeSet::new();
    for arc in decomp.long_arcs().iter().flat_map(|la| &la.arcs) {
        if let (Some(a), Some(b)) = (arc.emanates_from, arc.comes_into) {
            if a == b && arc.over.contains(&a) {
                cyclic_crossings.insert(a);
            }
        }
    }

    let special = decomp
        .long_arcs()
        .iter()
        .all(|la| la.max_degree() == la.increasing as i32);
    if !special {
        return TData { critical: None, cyclic_crossings };
    }

    let n = decomp.n();
    let arc_index: Vec<usize> = decomp.long_arcs().iter().map(|la| la.increasing).collect();
    let mut incidence = vec![vec![Incidence::default(); n]; n];
    let mut t_matrix = PolyMatrix::zeros(n);
    let mut m_matrix = BitMatrix::zeros(n);
    for (j, la) in decomp.long_arcs().iter().enumerate() {
        let arc = &la.arcs[arc_index[j]];
        debug_assert_eq!(arc.degree, la.increasing as i32);
        for i in 0..n {
            let inc = Incidence {
                emanating: arc.emanates_from == Some(i),
                over: arc.over.contains(&i),
                incoming: arc.comes_into == Some(i),
            };
            if inc.any() {
                m_matrix.set(i, j, true);
                t_matrix[(i, j)] = incidence_coefficient(decomp, i, arc).to_poly2();
            }
            incidence[i][j] = inc;
        }
    }
    TData {
        critical: Some(CriticalArcs { arc_index, incidence, t_matrix, m_matrix }),
        cyclic_crossings,
    }
}

/// Geometric and algebraic description of `det T` for an M-diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonBeta {
    pub epsilon: i8,
    pub beta: u32,
    pub alpha: i32,
    /// Negative crossings paired with a critical arc passing over them.
    pub x: u32,
    /// Crossings paired with a critical arc coming into them.
    pub y: u32,
    pub det_m: i8,
    /// `pairing[i]` is the long arc whose critical arc is paired with crossing `i`.
    pub pairing: Vec<usize>,
    /// Crossings whose paired critical arc meets them in more than one way;
    /// for these the counts `x`, `y` and the over-passing tally are not
    /// meaningful and the factorization of `det T` is authoritative.
    pub ambiguous: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EpsilonBetaError {
    #[error("not an M-diagram: {0}")]
    NotMDiagram(&'static str),
    #[error("crossing/critical-arc pairing is not unique")]
    PairingAmbiguous,
    #[error("geometric (epsilon, beta) = {geometric:?} disagrees with det T factorization {algebraic:?}")]
    CrossCheckMismatch { geometric: (i8, u32), algebraic: EpsAlphaBeta },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// `det M * (-1)^(x + y)`.
pub fn epsilon_from_parts(det_m: i8, x: u32, y: u32) -> i8 {
    if (x + y).is_multiple_of(2) {
        det_m
    } else {
        -det_m
    }
}

/// The unique perfect matching of a 0/1 matrix, found by repeatedly taking a
/// row or column with a single remaining entry. Row `i` maps to `out[i]`.
pub fn unique_pairing(m: &BitMatrix) -> Option<Vec<usize>> {
    let n = m.dim();
    let mut row_done = vec![false; n];
    let mut col_done = vec![false; n];
    let mut out = vec![usize::MAX; n];
    for _ in 0..n {
        let open_in_row =
            |i: usize| (0..n).filter(|&j| !col_done[j] && m.get(i, j)).collect::<Vec<_>>();
        let open_in_col =
            |j: usize| (0..n).filter(|&i| !row_done[i] && m.get(i, j)).collect::<Vec<_>>();
        let forced = (0..n)
            .filter(|&i| !row_done[i])
            .find_map(|i| match open_in_row(i).as_slice() {
                [j] => Some((i, *j)),
                _ => None,
            })
            .or_else(|| {
                (0..n).filter(|&j| !col_done[j]).find_map(|j| match open_in_col(j).as_slice() {
                    [i] => Some((*i, j)),
                    _ => None,
                })
            });
        let (i, j) = forced?;
        row_done[i] = true;
        col_done[j] = true;
        out[i] = j;
    }
    Some(out)
}

fn permutation_sign(perm: &[usize]) -> i8 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1i8;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Computes epsilon, beta and alpha of an M-diagram twice: from the unique
/// pairing of crossings with critical arcs, and by factoring `det T`.
pub fn epsilon_beta(tdata: &TData, signs: &[Sign]) -> Result<EpsilonBeta, EpsilonBetaError> {
    let critical = tdata.critical.as_ref().ok_or(EpsilonBetaError::NotMDiagram("not special"))?;
    if !tdata.cyclic_crossings.is_empty() {
        return Err(EpsilonBetaError::NotMDiagram("has cyclic crossings"));
    }
    if !critical.per_m().is_one() {
        return Err(EpsilonBetaError::PairingAmbiguous);
    }
    let pairing = unique_pairing(&critical.m_matrix).ok_or(EpsilonBetaError::PairingAmbiguous)?;
    let det_m = permutation_sign(&pairing);

    let (mut beta_g, mut x, mut y) = (0u32, 0u32, 0u32);
    let mut ambiguous = Vec::new();
    for (i, &j) in pairing.iter().enumerate() {
        let inc = critical.incidence[i][j];
        if inc.count() > 1 {
            ambiguous.push(i);
            continue;
        }
        if inc.over {
            beta_g += 1;
            if signs[i] == Sign::Negative {
                x += 1;
            }
        }
        if inc.incoming {
            y += 1;
        }
    }
    let epsilon_g = epsilon_from_parts(det_m, x, y);

    let algebraic = factor_eps_alpha_beta(&critical.det_t())?;
    if ambiguous.is_empty() && (epsilon_g, beta_g) != (algebraic.epsilon, algebraic.beta) {
        return Err(EpsilonBetaError::CrossCheckMismatch {
            geometric: (epsilon_g, beta_g),
            algebraic,
        });
    }
    Ok(EpsilonBeta {
        epsilon: algebraic.epsilon,
        beta: algebraic.beta,
        alpha: algebraic.alpha,
        x,
        y,
        det_m,
        pairing,
        ambiguous,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// Highest `s`-degree, read from the diagram itself.
    DegSide,
    /// Lowest `s`-degree, read from the virtual mirror.
    MdegSide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CertificateKind {
    TDiagram,
    MDiagram,
    NoCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalityCertificate {
    pub side: Side,
    pub kind: CertificateKind,
    pub k: usize,
    pub special: bool,
    pub critical_arcs: Option<Vec<usize>>,
    pub det_t: Option<TPoly>,
    /// Only computed for special diagrams without cyclic crossings.
    pub per_m: Option<BigUint>,
    /// Crossing indices (first-appearance order).
    pub cyclic_crossings: Vec<usize>,
    pub eps_beta: Option<EpsilonBeta>,
    pub reasons: Vec<String>,
}

impl MinimalityCertificate {
    pub fn certifies(&self) -> bool {
        self.kind != CertificateKind::NoCertificate
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MinimalityError {
    #[error("{side:?}: s^{k} coefficient of zeta is {coefficient} but det T is {det_t}")]
    InternalInconsistency { side: Side, k: usize, coefficient: TPoly, det_t: TPoly },
    #[error("{side:?}: {source}")]
    EpsilonBeta { side: Side, source: EpsilonBetaError },
}

/// Classifies one side from its T-data alone.
pub fn classify(
    side: Side,
    k: usize,
    tdata: &TData,
    signs: &[Sign],
    crossing_ids: &[u32],
) -> Result<MinimalityCertificate, MinimalityError> {
    let mut cert = MinimalityCertificate {
        side,
        kind: CertificateKind::NoCertificate,
        k,
        special: tdata.special(),
        critical_arcs: None,
        det_t: None,
        per_m: None,
        cyclic_crossings: tdata.cyclic_crossings.iter().copied().collect(),
        eps_beta: None,
        reasons: Vec::new(),
    };
    let Some(critical) = &tdata.critical else {
        cert.reasons.push("not special".into());
        return Ok(cert);
    };
    cert.critical_arcs = Some(critical.arc_index.clone());
    let det_t = critical.det_t();
    if det_t.is_zero() {
        cert.reasons.push("det T = 0".into());
    } else {
        cert.kind = CertificateKind::TDiagram;
    }
    cert.det_t = Some(det_t);

    if !tdata.cyclic_crossings.is_empty() {
        for &c in &tdata.cyclic_crossings {
            let id = crossing_ids.get(c).copied().unwrap_or(c as u32 + 1);
            cert.reasons.push(format!("cyclic crossing at {id}"));
        }
        return Ok(cert);
    }
    let per_m = critical.per_m();
    if per_m.is_one() {
        debug_assert_eq!(cert.kind, CertificateKind::TDiagram);
        let eb = epsilon_beta(tdata, signs)
            .map_err(|source| MinimalityError::EpsilonBeta { side, source })?;
        cert.kind = CertificateKind::MDiagram;
        cert.eps_beta = Some(eb);
    } else {
        cert.reasons.push(format!("per M = {per_m}"));
    }
    cert.per_m = Some(per_m);
    Ok(cert)
}

fn certify_side(side: Side, code: &DiagramCode) -> Result<MinimalityCertificate, MinimalityError> {
    let decomp = long_arcs(code).expect("certify works on a properized code");
    let tdata = analyze_special(&decomp);
    let cert = classify(side, decomp.k(), &tdata, decomp.signs(), decomp.crossing_ids())?;
    if let Some(det_t) = &cert.det_t {
        let zeta: LaurentPoly2 =
            det(&AlexanderMatrix::from_decomposition(&decomp).matrix, DetMethod::FractionFree);
        let coefficient = zeta.coeff_s(decomp.k() as i32);
        if &coefficient != det_t {
            return Err(MinimalityError::InternalInconsistency {
                side,
                k: decomp.k(),
                coefficient,
                det_t: det_t.clone(),
            });
        }
    }
    Ok(cert)
}

/// Certifies both degree sides; properizes a copy first when needed.
pub fn certify(code: &DiagramCode) -> Result<[MinimalityCertificate; 2], MinimalityError> {
    let working = code.properize();
    Ok([
        certify_side(Side::DegSide, &working)?,
        certify_side(Side::MdegSide, &working.mirror_virtual())?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> DiagramCode {
        text.parse().unwrap()
    }

    fn tdata(text: &str) -> TData {
        analyze_special(&long_arcs(&code(text)).unwrap())
    }

    fn p(text: &str) -> LaurentPoly2 {
        text.parse().unwrap()
    }

    #[test]
    fn specialness() {
        assert!(!tdata("O1+ V1+ U1+ V1-").special());

        let mirrored = tdata("O1+ V1- U1+ V1+");
        let critical = mirrored.critical.unwrap();
        assert_eq!(critical.arc_index, vec![1]);
        assert_eq!(critical.t_matrix, PolyMatrix::from_rows(vec![vec![p("t - 1")]]));
        assert_eq!(critical.m_matrix, BitMatrix::from_rows(&[[1u8]]));

        let curl = tdata("O1+ U1+");
        assert_eq!(curl.cyclic_crossings, BTreeSet::from([0]));
        let critical = curl.critical.unwrap();
        assert!(critical.t_matrix[(0, 0)].is_zero());
        assert!(critical.m_matrix.get(0, 0));

        let two = tdata("O1+ V1+ U2+ O2+ V1- U1+").critical.unwrap();
        let expected = PolyMatrix::from_rows(vec![
            vec![LaurentPoly2::zero(), LaurentPoly2::zero()],
            vec![p("-t"), p("t")],
        ]);
        assert_eq!(two.t_matrix, expected);
    }

    #[test]
    fn epsilon_parts() {
        assert_eq!(epsilon_from_parts(-1, 0, 1), 1);
        assert_eq!(epsilon_from_parts(1, 1, 0), -1);
        assert_eq!(epsilon_from_parts(1, 0, 0), 1);
        assert_eq!(epsilon_from_parts(1, 0, 2), 1);
    }

    #[test]
    fn pairing_extraction() {
        let m = BitMatrix::from_rows(&[[1u8, 1], [1, 0]]);
        assert_eq!(unique_pairing(&m), Some(vec![1, 0]));
        assert_eq!(permutation_sign(&[1, 0]), -1);
        let q = BitMatrix::from_rows(&[[1u8, 0, 1], [1, 0, 0], [0, 1, 0]]);
        assert_eq!(unique_pairing(&q), Some(vec![2, 0, 1]));
        assert_eq!(permutation_sign(&[2, 0, 1]), 1);
        assert_eq!(unique_pairing(&BitMatrix::from_rows(&[[1u8, 1], [1, 1]])), None);
    }

    #[test]
    fn certify_single_crossing_example() {
        let [deg, mdeg] = certify(&code("O1+ V1+ U1+ V1-")).unwrap();
        assert_eq!(deg.kind, CertificateKind::NoCertificate);
        assert_eq!(deg.reasons, vec!["not special".to_string()]);
        assert_eq!(mdeg.kind, CertificateKind::MDiagram);
        assert_eq!(mdeg.det_t, Some("t - 1".parse().unwrap()));
        assert_eq!(mdeg.per_m, Some(BigUint::one()));
        let eb = mdeg.eps_beta.unwrap();
        assert_eq!((eb.epsilon, eb.alpha, eb.beta), (1, 0, 1));
        assert_eq!((eb.x, eb.y, eb.det_m), (0, 0, 1));
    }

    #[test]
    fn certify_singular_example() {
        let certs = certify(&code("O1+ V1+ U2+ O2+ V1- U1+")).unwrap();
        for cert in &certs {
            assert_eq!(cert.kind, CertificateKind::NoCertificate);
        }
        assert!(certs[0].reasons.contains(&"det T = 0".to_string()));
    }

    #[test]
    fn t_diagram_without_unique_pairing() {
        let rows = [
            ["1", "0", "0", "-t^-1"],
            ["0", "1", "t^-1 - 1", "0"],
            ["0", "-t^-1", "0", "t^-1 - 1"],
            ["0", "t^-1 - 1", "-t^-1", "1"],
        ];
        let t_matrix = PolyMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|e| p(e)).collect()).collect(),
        );
        let mut m_matrix = BitMatrix::zeros(4);
        let mut incidence = vec![vec![Incidence::default(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                if !t_matrix[(i, j)].is_zero() {
                    m_matrix.set(i, j, true);
                    incidence[i][j].over = true;
                }
            }
        }
        let td = TData {
            critical: Some(CriticalArcs { arc_index: vec![1; 4], incidence, t_matrix, m_matrix }),
            cyclic_crossings: BTreeSet::new(),
        };
        let cert = classify(Side::DegSide, 4, &td, &[Sign::Negative; 4], &[1, 2, 3, 4]).unwrap();
        assert_eq!(cert.kind, CertificateKind::TDiagram);
        assert_eq!(cert.det_t, Some("t^-3 - t^-2 + t^-1 - 1".parse().unwrap()));
        assert!(cert.per_m.unwrap() > BigUint::one());
    }
}
