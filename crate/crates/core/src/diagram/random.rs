use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DiagramCode, Passage, Sense, Sign};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot place {passages} passages into {components} nonempty components")]
pub struct InfeasibleShape {
    pub passages: usize,
    pub components: usize,
}

/// A random code with classical ids `1..=n` and virtual ids `1..=k`, split
/// into `components` nonempty cycles and properized. Deterministic in `seed`.
pub fn random_diagram(
    n: usize,
    k: usize,
    components: usize,
    seed: u64,
) -> Result<DiagramCode, InfeasibleShape> {
    let passages = 2 * (n + k);
    if passages == 0 || components == 0 || components > passages {
        return Err(InfeasibleShape { passages, components });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut tokens = Vec::with_capacity(passages);
    for id in 1..=n as u32 {
        let sign = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        tokens.push(Passage::Over { id, sign });
        tokens.push(Passage::Under { id, sign });
    }
    for id in 1..=k as u32 {
        tokens.push(Passage::Virtual { id, sense: Sense::Increasing });
        tokens.push(Passage::Virtual { id, sense: Sense::Decreasing });
    }
    tokens.shuffle(&mut rng);

    let mut cuts: Vec<usize> = (1..passages).collect();
    cuts.shuffle(&mut rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(components - 1).collect();
    cuts.sort_unstable();
    cuts.push(passages);

    let mut parts = Vec::with_capacity(components);
    let mut from = 0;
    for to in cuts {
        parts.push(tokens[from..to].to_vec());
        from = to;
    }
    let code = DiagramCode::new(parts).expect("generated tokens form a valid code");
    Ok(code.properize())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(random_diagram(2, 1, 1, 7), random_diagram(2, 1, 1, 7));
        assert_ne!(random_diagram(4, 3, 1, 7), random_diagram(4, 3, 1, 8));
    }

    #[test]
    fn shapes() {
        let d = random_diagram(0, 1, 1, 3).unwrap();
        assert!(d.n() >= 1);
        assert!(d.is_proper().0);
        let d = random_diagram(3, 2, 1, 11).unwrap();
        assert_eq!((d.k(), d.components().len()), (2, 1));
        assert!(DiagramCode::new(d.components().to_vec()).is_ok());
        let d = random_diagram(2, 2, 3, 5).unwrap();
        assert_eq!(d.components().len(), 3);
    }

    #[test]
    fn infeasible() {
        assert_eq!(random_diagram(0, 0, 1, 0), Err(InfeasibleShape { passages: 0, components: 1 }));
        assert!(random_diagram(1, 0, 3, 0).is_err());
        assert!(random_diagram(1, 0, 0, 0).is_err());
    }
}
