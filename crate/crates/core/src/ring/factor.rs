use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::TPoly;

/// The triple `(epsilon, alpha, beta)` standing for `epsilon * t^alpha * (t - 1)^beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EpsAlphaBeta {
    pub epsilon: i8,
    pub alpha: i32,
    pub beta: u32,
}

impl EpsAlphaBeta {
    pub fn to_tpoly(&self) -> TPoly {
        let mut out = TPoly::monomial(self.epsilon as i64, self.alpha);
        let t_minus_one = TPoly::t_pow_minus_one(1);
        for _ in 0..self.beta {
            out = &out * &t_minus_one;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroInput,
    #[error("{0} is not of the form ±t^a (t - 1)^b")]
    NotOfForm(TPoly),
}

/// Writes `p` as `epsilon * t^alpha * (t - 1)^beta` with `beta` maximal.
pub fn factor_eps_alpha_beta(p: &TPoly) -> Result<EpsAlphaBeta, FactorError> {
    let mut terms = p.terms();
    let Some((_, shift)) = terms.next() else {
        return Err(FactorError::ZeroInput);
    };
    // Dense coefficients of t^-shift * p, lowest degree first; constant term nonzero.
    let top = p.terms().next_back().map(|(_, a)| a).unwrap_or(shift);
    let mut dense = vec![BigInt::zero(); (top - shift) as usize + 1];
    for (c, a) in p.terms() {
        dense[(a - shift) as usize] = c.clone();
    }

    let mut beta = 0u32;
    while dense.len() > 1 && dense.iter().sum::<BigInt>().is_zero() {
        dense = divide_by_t_minus_one(&dense);
        beta += 1;
    }

    let not_of_form = || FactorError::NotOfForm(p.clone());
    if dense.len() != 1 || !dense[0].abs().is_one() {
        return Err(not_of_form());
    }
    let epsilon = dense[0].to_i8().ok_or_else(not_of_form)?;
    Ok(EpsAlphaBeta { epsilon, alpha: shift, beta })
}

/// Synthetic division of a dense polynomial (ascending coefficients) by
/// `t - 1`; the caller guarantees the remainder is zero.
fn divide_by_t_minus_one(coeffs: &[BigInt]) -> Vec<BigInt> {
    let n = coeffs.len() - 1;
    let mut quotient = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        carry += &coeffs[i];
        quotient[i - 1] = carry.clone();
    }
    quotient
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(text: &str) -> TPoly {
        text.parse().unwrap()
    }

    #[test]
    fn reads_off_factored_forms() {
        assert_eq!(
            factor_eps_alpha_beta(&tp("t^-1 - 1")),
            Ok(EpsAlphaBeta { epsilon: -1, alpha: -1, beta: 1 })
        );
        assert_eq!(
            factor_eps_alpha_beta(&tp("t^2 - 2*t + 1")),
            Ok(EpsAlphaBeta { epsilon: 1, alpha: 0, beta: 2 })
        );
        assert_eq!(
            factor_eps_alpha_beta(&tp("-t^3")),
            Ok(EpsAlphaBeta { epsilon: -1, alpha: 3, beta: 0 })
        );
    }

    #[test]
    fn rejects_other_shapes() {
        let p = tp("t^-3 - t^-2 + t^-1 - 1");
        assert_eq!(factor_eps_alpha_beta(&p), Err(FactorError::NotOfForm(p.clone())));
        assert!(factor_eps_alpha_beta(&tp("2*t - 2")).is_err());
        assert!(factor_eps_alpha_beta(&tp("t + 1")).is_err());
        assert_eq!(factor_eps_alpha_beta(&TPoly::zero()), Err(FactorError::ZeroInput));
    }

    #[test]
    fn round_trip() {
        for epsilon in [-1, 1] {
            for alpha in -3..=3 {
                for beta in 0..5 {
                    let e = EpsAlphaBeta { epsilon, alpha, beta };
                    assert_eq!(factor_eps_alpha_beta(&e.to_tpoly()), Ok(e));
                }
            }
        }
    }
}
