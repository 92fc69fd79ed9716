#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcert_core::diagram::{random_diagram, DiagramCode, Passage, Sense};
use vcert_core::minimality::{analyze_special, CertificateKind};
use vcert_core::ring::{det, DetMethod, LaurentPoly2, PolyMatrix, TPoly};

/// Builds A(D) crossing by crossing: row `i` gets `1` on its own column,
/// `-t^sgn s^a` on the long arc coming into it and `(t^sgn - 1) s^a` on the
/// long arc passing over it. Crossings are ordered by id, which only
/// conjugates the matrix by a permutation.
pub fn row_oracle_matrix(code: &DiagramCode) -> PolyMatrix {
    let ids: Vec<u32> = code.classical_ids().into_iter().collect();
    let index: BTreeMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let mut sign = vec![0i32; ids.len()];
    // (long arc column, s-degree) of the strand passing over / coming into each crossing.
    let mut over = vec![(0usize, 0i32); ids.len()];
    let mut into = vec![(0usize, 0i32); ids.len()];

    for comp in code.components() {
        let start = comp
            .iter()
            .position(|p| matches!(p, Passage::Under { .. }))
            .expect("oracle expects a proper code");
        let mut long_arc = index[&comp[start].id()];
        let mut degree = 0;
        for step in 1..=comp.len() {
            match comp[(start + step) % comp.len()] {
                Passage::Under { id, sign: sg } => {
                    into[index[&id]] = (long_arc, degree);
                    sign[index[&id]] = sg.value();
                    long_arc = index[&id];
                    degree = 0;
                }
                Passage::Over { id, .. } => over[index[&id]] = (long_arc, degree),
                Passage::Virtual { sense, .. } => {
                    degree += match sense {
                        Sense::Increasing => 1,
                        Sense::Decreasing => -1,
                    }
                }
            }
        }
    }

    let mut m = PolyMatrix::zeros(ids.len());
    for i in 0..ids.len() {
        let sg = sign[i];
        m[(i, i)] += &LaurentPoly2::one();
        let (k, a) = into[i];
        m[(i, k)] += &LaurentPoly2::monomial(-1, sg, a);
        let (j, a) = over[i];
        m[(i, j)] += &(LaurentPoly2::monomial(1, sg, a) - LaurentPoly2::monomial(1, 0, a));
    }
    m
}

pub fn oracle_zeta(code: &DiagramCode) -> LaurentPoly2 {
    det(&row_oracle_matrix(code), DetMethod::Cofactor)
}

/// Seeded proper diagrams with at most 6 classical and 6 virtual crossings.
pub fn corpus(size: usize, seed: u64) -> Vec<DiagramCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(size);
    while out.len() < size {
        let n = rng.gen_range(0..=6);
        let k = rng.gen_range(0..=6);
        let components = rng.gen_range(1..=3);
        let Ok(code) = random_diagram(n, k, components, rng.gen()) else { continue };
        if code.n() <= 6 {
            out.push(code);
        }
    }
    out
}

/// Diagrams whose highest-degree side is an M-diagram with at least one
/// non-critical arc, drawn from random codes and their virtual mirrors.
pub fn m_diagrams(count: usize, seed: u64) -> Vec<DiagramCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=4);
        let Ok(code) = random_diagram(n, k, 1, rng.gen()) else { continue };
        for candidate in [code.clone(), code.mirror_virtual()] {
            let [deg, _] = vcert_core::minimality::certify(&candidate).unwrap();
            if deg.kind == CertificateKind::MDiagram && out.len() < count {
                out.push(candidate);
            }
        }
    }
    out
}

pub fn det_t(code: &DiagramCode) -> Option<TPoly> {
    let decomp = vcert_core::diagram::long_arcs(code).ok()?;
    analyze_special(&decomp).critical.map(|c| c.det_t())
}
