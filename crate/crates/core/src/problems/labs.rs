use alloc::vec::Vec;

use crate::error::{invalid, Result};
use crate::poly::Polynomial;

/// Sidelobe energy `E(s) = Σ_{k=1}^{n-1} (Σ_i s_i s_{i+k})²` with `s_i = 1 - 2 x_i`.
pub fn labs_poly(n: usize) -> Result<Polynomial> {
    if n < 2 {
        return Err(invalid("LABS needs n >= 2"));
    }
    let spin: Vec<Polynomial> =
        (0..n).map(|i| Polynomial::constant(n, 1.0)?.sub(&Polynomial::var(n, i)?.scale(2.0))).collect::<Result<_>>()?;
    let mut energy = Polynomial::zero(n)?;
    for k in 1..n {
        let mut corr = Polynomial::zero(n)?;
        for i in 0..n - k {
            corr = corr.add(&spin[i].mul(&spin[i + k])?)?;
        }
        energy = energy.add(&corr.mul(&corr)?)?;
    }
    Ok(energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::direct;

    #[test]
    fn small_cases() {
        let p2 = labs_poly(2).unwrap();
        assert_eq!(p2.num_terms(), 1);
        assert_eq!(p2.constant_term(), 1.0);
        let p3 = labs_poly(3).unwrap();
        assert_eq!(p3.evaluate(&"001".parse().unwrap()).unwrap(), 1.0);
        assert!(labs_poly(1).is_err());
    }

    #[test]
    fn degree_four_and_matches_direct() {
        for n in [4, 7, 10] {
            let p = labs_poly(n).unwrap();
            assert_eq!(p.degree(), 4);
            for x in 0..1u64 << n {
                assert_eq!(p.evaluate_index(x), direct::labs(n, x));
            }
        }
    }
}
