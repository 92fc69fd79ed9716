//! The Alexander-like matrix `A(D)`, the zeta-polynomial `det A(D)` and the
//! virtual crossing number bound read off its `s`-degrees.

use serde::Serialize;

use crate::diagram::{long_arcs, Arc, DiagramCode, LongArcDecomposition, NotProper};
use crate::ring::{det, Degree, DetMethod, LaurentPoly2, PolyMatrix, TPoly};

/// Incidence coefficient `[v_i : arc]`: the sum of `1` if the arc emanates
/// from the crossing, `t^sgn - 1` if it passes over it, and `-t^sgn` if it
/// comes into it.
pub fn incidence_coefficient(decomp: &LongArcDecomposition, crossing: usize, arc: &Arc) -> TPoly {
    let sgn = decomp.sign(crossing).value();
    let mut out = TPoly::zero();
    if arc.emanates_from == Some(crossing) {
        out += &TPoly::one();
    }
    if arc.over.contains(&crossing) {
        out += &TPoly::t_pow_minus_one(sgn);
    }
    if arc.comes_into == Some(crossing) {
        out += &TPoly::monomial(-1, sgn);
    }
    out
}

/// `A_ij = sum over arcs of long arc j of [v_i : arc] * s^deg(arc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlexanderMatrix {
    pub matrix: PolyMatrix,
}

impl AlexanderMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn from_decomposition(decomp: &LongArcDecomposition) -> Self {
        let n = decomp.n();
        let mut matrix = PolyMatrix::zeros(n);
        for (j, long_arc) in decomp.long_arcs().iter().enumerate() {
            for arc in &long_arc.arcs {
                let mut touched: Vec<usize> = arc.over.clone();
                touched.extend(arc.emanates_from);
                touched.extend(arc.comes_into);
                touched.sort_unstable();
                touched.dedup();
                for i in touched {
                    let c = incidence_coefficient(decomp, i, arc);
                    matrix[(i, j)] += &c.to_poly2().mul_s_pow(arc.degree);
                }
            }
        }
        Self { matrix }
    }
}

pub fn alexander_matrix(code: &DiagramCode) -> Result<AlexanderMatrix, NotProper> {
    Ok(AlexanderMatrix::from_decomposition(&long_arcs(code)?))
}

pub fn writhe(code: &DiagramCode) -> i32 {
    code.writhe()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub zeta: LaurentPoly2,
    pub deg_s: Degree,
    pub mdeg_s: Degree,
    pub lower_bound: u64,
    pub writhe: i32,
    pub n: usize,
    pub k: usize,
    /// Whether a curl had to be added before computing.
    pub properized: bool,
}

/// `max(0, deg_s, -mdeg_s)`, and 0 for the zero polynomial.
pub fn lower_bound(deg_s: Degree, mdeg_s: Degree) -> u64 {
    match (deg_s, mdeg_s) {
        (Degree::Finite(hi), Degree::Finite(lo)) => hi.max(-lo).max(0) as u64,
        _ => 0,
    }
}

/// Computes `zeta(D) = det A(D)`, properizing a copy of the code first when
/// needed.
pub fn zeta(code: &DiagramCode) -> ZetaReport {
    zeta_with(code, DetMethod::FractionFree)
}

/// As [`zeta`], choosing the determinant algorithm; the cofactor route is
/// meant as an oracle for small diagrams.
pub fn zeta_with(code: &DiagramCode, method: DetMethod) -> ZetaReport {
    let (proper, _) = code.is_proper();
    let working = if proper { code.clone() } else { code.properize() };
    let decomp = long_arcs(&working).expect("properized code is proper");
    let a = AlexanderMatrix::from_decomposition(&decomp);
    let zeta = det(&a.matrix, method);
    let (deg_s, mdeg_s) = zeta.s_degree_range();
    ZetaReport {
        lower_bound: lower_bound(deg_s, mdeg_s),
        zeta,
        deg_s,
        mdeg_s,
        writhe: working.writhe(),
        n: decomp.n(),
        k: decomp.k(),
        properized: !proper,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> DiagramCode {
        text.parse().unwrap()
    }

    fn p(text: &str) -> LaurentPoly2 {
        text.parse().unwrap()
    }

    #[test]
    fn incidence_cases() {
        let c = code("O1+ V1+ U1+ V1-");
        let d = long_arcs(&c).unwrap();
        let arcs = &d.long_arc(0).arcs;
        assert_eq!(incidence_coefficient(&d, 0, &arcs[1]), "t - 1".parse().unwrap());
        assert_eq!(incidence_coefficient(&d, 0, &arcs[0]), TPoly::one());
        assert_eq!(incidence_coefficient(&d, 0, &arcs[2]), TPoly::monomial(-1, 1));

        // Emanating, over and incoming at once cancels out.
        let curl = long_arcs(&code("O1+ U1+")).unwrap();
        assert!(incidence_coefficient(&curl, 0, &curl.long_arc(0).arcs[0]).is_zero());
        let neg = long_arcs(&code("O1- U1-")).unwrap();
        assert!(incidence_coefficient(&neg, 0, &neg.long_arc(0).arcs[0]).is_zero());

        // Over and incoming: (t - 1) - t.
        let two = long_arcs(&code("O1+ U1+ O2+ U2+")).unwrap();
        let arc = &two.long_arc(0).arcs[0];
        assert_eq!(incidence_coefficient(&two, 1, arc), TPoly::monomial(-1, 0));
        assert_eq!(incidence_coefficient(&two, 0, arc), TPoly::one());
        let lone = long_arcs(&code("O1+ U1+\nO2+ U2+")).unwrap();
        assert!(incidence_coefficient(&lone, 1, &lone.long_arc(0).arcs[0]).is_zero());
    }

    #[test]
    fn matrices() {
        let a = alexander_matrix(&code("O1+ V1+ U1+ V1-")).unwrap();
        assert_eq!(a.matrix, PolyMatrix::from_rows(vec![vec![p("t*s^-1 - s^-1 - t + 1")]]));

        let a = alexander_matrix(&code("O1+ V1+ U2+ O2+ V1- U1+")).unwrap();
        let expected =
            PolyMatrix::from_rows(vec![vec![p("t"), p("-t*s^-1")], vec![p("-t*s"), p("t")]]);
        assert_eq!(a.matrix, expected);

        let a = alexander_matrix(&code("O1+ U1+")).unwrap();
        assert!(a.matrix[(0, 0)].is_zero());
    }

    #[test]
    fn zeta_examples() {
        let r = zeta(&code("O1+ V1+ U1+ V1-"));
        assert_eq!(r.zeta, p("t*s^-1 - s^-1 - t + 1"));
        assert_eq!((r.deg_s, r.mdeg_s, r.lower_bound), (Degree::Finite(0), Degree::Finite(-1), 1));
        assert!(!r.properized);

        let r = zeta(&code("O1+ V1+ U2+ O2+ V1- U1+"));
        assert!(r.zeta.is_zero());
        assert_eq!((r.deg_s, r.mdeg_s, r.lower_bound), (Degree::NegInf, Degree::PosInf, 0));

        let r = zeta(&code("O1+ U1+"));
        assert!(r.zeta.is_zero());
        assert_eq!(r.lower_bound, 0);
    }

    #[test]
    fn properizes_a_copy() {
        let r = zeta(&code("V1+ V1-"));
        assert!(r.properized);
        assert_eq!((r.n, r.k), (1, 1));
    }

    #[test]
    fn writhes() {
        assert_eq!(writhe(&code("O1+ V1+ U1+ V1-")), 1);
        assert_eq!(writhe(&code("O1- U1-")), -1);
        assert_eq!(writhe(&code("O1+ U2+ O3+ U1+ O2+ U3+")), 3);
    }

    #[test]
    fn classical_trefoil_has_no_s() {
        let r = zeta(&code("O1+ U2+ O3+ U1+ O2+ U3+"));
        assert_eq!(r.lower_bound, 0);
        assert!(r.zeta.to_tpoly().is_some());
    }
}
