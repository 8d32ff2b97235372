use num_integer::Integer;

use super::ArithError;

/// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least non-negative residue of `a` modulo `m`.
pub fn modulo(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// The inverse of `a` modulo `m`, as a residue in `1..m`. For `m = 1` there
/// is nothing to invert and the caller gets a `BadModulus` error.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64, ArithError> {
    if m < 2 {
        return Err(ArithError::BadModulus(m));
    }
    let r = modulo(a, m);
    let ext = r.extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(ArithError::NotInvertible { value: a, modulus: m });
    }
    Ok(modulo(ext.x, m))
}

pub fn is_odd_prime(p: i64) -> bool {
    p >= 3 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Units of `Z/n`, ascending.
pub fn units(n: i64) -> Vec<i64> {
    (1..n).filter(|&t| gcd(t, n) == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(2, 3), Ok(2));
        assert_eq!(mod_inverse(1, 7), Ok(1));
        assert_eq!(mod_inverse(4, 13), Ok(10));
        assert_eq!(mod_inverse(-1, 5), Ok(4));
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(mod_inverse(2, 4), Err(ArithError::NotInvertible { value: 2, modulus: 4 }));
        assert_eq!(mod_inverse(0, 5), Err(ArithError::NotInvertible { value: 0, modulus: 5 }));
        assert_eq!(mod_inverse(1, 1), Err(ArithError::BadModulus(1)));
    }

    #[test]
    fn inverse_exhaustive_small() {
        for m in 2..40 {
            for a in 0..m {
                match mod_inverse(a, m) {
                    Ok(u) => {
                        assert!((1..m).contains(&u));
                        assert_eq!(a * u % m, 1 % m);
                    }
                    Err(_) => assert_ne!(gcd(a, m), 1),
                }
            }
        }
    }

    #[test]
    fn primes() {
        let found: Vec<i64> = (0..24).filter(|&p| is_odd_prime(p)).collect();
        assert_eq!(found, vec![3, 5, 7, 11, 13, 17, 19, 23]);
    }
}
