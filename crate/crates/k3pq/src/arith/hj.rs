use num_traits::{One, Zero};

use super::{int, mod_inverse, rat, ArithError, Rational};

/// Resolution data of the cyclic quotient singularity `1/order(1, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityInvariants {
    pub order: i64,
    pub q: i64,
    pub q_prime: i64,
    /// Negated self-intersections `b_1, ..., b_k` of the Hirzebruch-Jung string.
    pub chain: Vec<i64>,
    /// Contribution to `K^2` of the resolution.
    pub h: Rational,
    /// Contribution to the topological Euler number of the resolution.
    pub e: Rational,
    pub num_curves: usize,
}

fn check_type(n: i64, q: i64) -> Result<(), ArithError> {
    if n < 2 || q <= 0 || q >= n || super::gcd(n, q) != 1 {
        return Err(ArithError::InvalidSingularity { order: n, q });
    }
    Ok(())
}

/// Hirzebruch-Jung expansion `n/q = b_1 - 1/(b_2 - 1/(...))` with all `b_i >= 2`.
pub fn continued_fraction(n: i64, q: i64) -> Result<Vec<i64>, ArithError> {
    check_type(n, q)?;
    let (mut num, mut den) = (n, q);
    let mut out = Vec::new();
    while den > 0 {
        let b = (num + den - 1) / den;
        out.push(b);
        (num, den) = (den, b * den - num);
    }
    Ok(out)
}

/// Evaluates the nested fraction back to a rational. Returns `None` when an
/// intermediate denominator vanishes.
pub fn evaluate_continued_fraction(chain: &[i64]) -> Option<Rational> {
    let (last, rest) = chain.split_last()?;
    let mut acc = int(*last);
    for b in rest.iter().rev() {
        if acc.is_zero() {
            return None;
        }
        acc = int(*b) - Rational::one() / acc;
    }
    Some(acc)
}

pub fn singularity_invariants(n: i64, q: i64) -> Result<SingularityInvariants, ArithError> {
    let chain = continued_fraction(n, q)?;
    let q_prime = mod_inverse(q, n)?;
    let excess: i64 = chain.iter().map(|b| b - 2).sum();
    let h = int(2) - rat(2 + q + q_prime, n) - int(excess);
    let e = int(chain.len() as i64 + 1) - rat(1, n);
    Ok(SingularityInvariants { order: n, q, q_prime, num_curves: chain.len(), chain, h, e })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(continued_fraction(3, 1).unwrap(), vec![3]);
        assert_eq!(continued_fraction(3, 2).unwrap(), vec![2, 2]);
        assert_eq!(continued_fraction(5, 3).unwrap(), vec![2, 3]);
        assert_eq!(continued_fraction(7, 3).unwrap(), vec![3, 2, 2]);
        assert!(continued_fraction(6, 2).is_err());
        assert!(continued_fraction(5, 0).is_err());
        assert!(continued_fraction(5, 5).is_err());
    }

    #[test]
    fn invariant_values() {
        let a = singularity_invariants(3, 1).unwrap();
        assert_eq!((a.h.clone(), a.e.clone(), a.num_curves), (rat(-1, 3), rat(5, 3), 1));
        let b = singularity_invariants(3, 2).unwrap();
        assert_eq!((b.h.clone(), b.e.clone(), b.num_curves), (int(0), rat(8, 3), 2));
        let c = singularity_invariants(5, 1).unwrap();
        assert_eq!((c.h.clone(), c.e.clone(), c.num_curves), (rat(-9, 5), rat(9, 5), 1));
        let d = singularity_invariants(5, 3).unwrap();
        // 8(6-1)(2-1)/5 + 10 h(5,1) + 5 h(5,3)
        assert_eq!(int(8) + int(10) * c.h + int(5) * d.h, int(-12));
        let two = singularity_invariants(2, 1).unwrap();
        assert_eq!((two.h, two.e), (int(0), rat(3, 2)));
    }

    #[test]
    fn evaluation_round_trip() {
        assert_eq!(evaluate_continued_fraction(&[2, 3]), Some(rat(5, 3)));
        assert_eq!(evaluate_continued_fraction(&[]), None);
    }
}
