//! Local toric description of a Hirzebruch-Jung string.
//!
//! Near a singular point of type `1/d(1, q)` the quotient is the toric
//! surface of the lattice `N = Z^2 + Z (1/d, q/d)` and the cone spanned by
//! `(0, 1)` and `(1, 0)`. The resolution subdivides the cone by the rays
//! `w_0 = (0, 1)`, `w_1 = (1/d, q/d)`, `w_{l+1} = b_l w_l - w_{l-1}`, ending
//! at `(1, 0)`. The first and last rays are the strict transforms of the two
//! central curves; the inner rays are the exceptional curves. An element `t`
//! of the torus `N_R / N` fixes the curve of ray `w` pointwise exactly when
//! `t` lies in `R w + N`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{continued_fraction, int, rat, ArithError, Rational};

pub type Ray = (Rational, Rational);

/// Rays of the subdivided cone, from the first-factor side to the second.
pub fn chain_rays(d: i64, q: i64) -> Result<Vec<Ray>, ArithError> {
    let mut rays = vec![(int(0), int(1))];
    if d == 1 {
        rays.push((int(1), int(0)));
        return Ok(rays);
    }
    rays.push((rat(1, d), rat(q, d)));
    for b in continued_fraction(d, q)? {
        let (prev, last) = (&rays[rays.len() - 2], &rays[rays.len() - 1]);
        let next = (int(b) * &last.0 - &prev.0, int(b) * &last.1 - &prev.1);
        rays.push(next);
    }
    debug_assert_eq!(rays.last(), Some(&(int(1), int(0))));
    Ok(rays)
}

fn frac(x: Rational) -> Rational {
    let f = x.floor();
    x - f
}

/// The element of `N_R / N` by which the automorphism acts near a singular
/// point. `c` is the power of the second-factor generator defining the
/// automorphism, `(h, a_rot)` and `(k, b_rot)` the stabilizer orders and
/// rotations of the two branch points. Returns `None` when the orbit of
/// singular points is permuted rather than fixed.
pub fn torus_element(n: i64, c: i64, h: i64, a_rot: i64, k: i64, b_rot: i64) -> Option<Ray> {
    let (a, b) = (n / h, n / k);
    if c % a.gcd(&b) != 0 {
        return None;
    }
    // Split g^c = g^kk g^(c-kk) with g^kk in the stabilizer of the first
    // point and g^(c-kk) in the stabilizer of the second.
    let kk = (0..n).find(|x| x % a == 0 && (x - c).rem_euclid(b) == 0)?;
    let u = kk / a;
    let v = (c - kk).rem_euclid(n) / b;
    Some((frac(rat(b_rot * v, k)), frac(rat(-a_rot * u, h))))
}

fn rational_gcd(values: &[Rational]) -> Rational {
    let lcm = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let g =
        values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(&(v * Rational::from_integer(lcm.clone())).to_integer()));
    Rational::new(g, lcm)
}

/// Whether the curve of ray `w` is pointwise fixed by the torus element `t`.
pub fn ray_is_fixed(w: &Ray, d: i64, q: i64, t: &Ray) -> bool {
    let psi = |x: &Rational, y: &Rational| &w.1 * x - &w.0 * y;
    let lattice = [psi(&int(1), &int(0)), psi(&int(0), &int(1)), psi(&rat(1, d), &rat(q, d))];
    let g = rational_gcd(&lattice);
    (psi(&t.0, &t.1) / g).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_end_on_axis() {
        for (d, q) in [(3, 1), (3, 2), (5, 3), (7, 3), (13, 5), (38, 9)] {
            let r = chain_rays(d, q).unwrap();
            assert_eq!(r.len(), continued_fraction(d, q).unwrap().len() + 2);
            assert_eq!(r.last().unwrap(), &(int(1), int(0)));
        }
    }

    #[test]
    fn identity_fixes_everything() {
        let r = chain_rays(5, 3).unwrap();
        assert!(r.iter().all(|w| ray_is_fixed(w, 5, 3, &(int(0), int(0)))));
    }

    #[test]
    fn permuted_orbits() {
        // Two order-2 stabilizers in Z/6: the points are swapped by g^2.
        assert_eq!(torus_element(6, 2, 2, 1, 2, 1), None);
        assert!(torus_element(6, 2, 6, 1, 3, 1).is_some());
    }
}
