use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use vcert_core::diagram::{long_arcs, random_diagram, DiagramCode};
use vcert_core::invariants::{alexander_matrix, zeta};
use vcert_core::minimality::{analyze_special, certify};
use vcert_core::moves::random_walk;
use vcert_core::ring::{det, Degree, DetMethod};

pub struct FuzzArgs {
    pub count: usize,
    pub n_max: usize,
    pub k_max: usize,
    pub walk: usize,
    pub seed: u64,
}

pub struct Failure {
    pub check: &'static str,
    pub code: DiagramCode,
}

fn sample(args: &FuzzArgs, i: usize) -> DiagramCode {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed.wrapping_add(i as u64));
    loop {
        let n = rng.gen_range(0..=args.n_max);
        let k = rng.gen_range(0..=args.k_max);
        let components = rng.gen_range(1..=2);
        if let Ok(code) = random_diagram(n, k, components, rng.gen()) {
            return code;
        }
    }
}

fn check(code: &DiagramCode, walk: usize, walk_seed: u64) -> Vec<&'static str> {
    let mut failed = Vec::new();
    let r = zeta(code);
    let k = r.k as i64;
    if r.deg_s > Degree::Finite(k) || r.mdeg_s < Degree::Finite(-k) {
        failed.push("degree bound");
    }

    for side in [code.clone(), code.mirror_virtual()] {
        let decomp = long_arcs(&side).expect("generated codes are proper");
        if let Some(critical) = analyze_special(&decomp).critical {
            let z = zeta(&side);
            let det_t = critical.det_t();
            let top = z.deg_s == Degree::Finite(k);
            if z.zeta.coeff_s(r.k as i32) != det_t || top == det_t.is_zero() {
                failed.push("top coefficient equals det T");
            }
        }
    }
    if certify(code).is_err() {
        failed.push("certificate consistency");
    }

    if r.n <= 7 {
        let a = alexander_matrix(code).expect("generated codes are proper").matrix;
        if det(&a, DetMethod::Cofactor) != r.zeta {
            failed.push("determinant oracle");
        }
    }

    if walk > 0 {
        let (moved, _) = random_walk(code, walk, walk_seed);
        let after = zeta(&moved);
        if r.zeta.equal_up_to_t_power(&after.zeta).is_none()
            || (r.deg_s, r.mdeg_s, r.lower_bound) != (after.deg_s, after.mdeg_s, after.lower_bound)
        {
            failed.push("move invariance");
        }
    }
    failed
}

/// Runs all checks on `count` seeded diagrams in parallel; failures come back
/// in sample order.
pub fn run(args: &FuzzArgs) -> Vec<Failure> {
    (0..args.count)
        .into_par_iter()
        .flat_map_iter(|i| {
            let code = sample(args, i);
            let walk_seed = args.seed.wrapping_mul(31).wrapping_add(i as u64);
            check(&code, args.walk, walk_seed)
                .into_iter()
                .map(move |check| Failure { check, code: code.clone() })
                .collect::<Vec<_>>()
        })
        .collect()
}
