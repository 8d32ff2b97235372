//! Recomputations of curve data that share no code with the engine's
//! enumeration or Chevalley-Weil routines, used as oracles by the tests.

use std::collections::BTreeSet;

use k3pq::arith::{rat, Rational};
use num_integer::Integer;
use num_traits::Signed;

/// Every exponent triple for `Z/n` with zero sum that generates the group,
/// reduced to the least sorted rescaling by a unit.
pub fn brute_force_triples(n: i64) -> BTreeSet<Vec<i64>> {
    let units: Vec<i64> = (1..n).filter(|u| u.gcd(&n) == 1).collect();
    let mut out = BTreeSet::new();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                if (a + b + c) % n != 0 || a.gcd(&b).gcd(&c).gcd(&n) != 1 {
                    continue;
                }
                let best = units
                    .iter()
                    .map(|&u| {
                        let mut v = vec![a * u % n, b * u % n, c * u % n];
                        v.sort();
                        v
                    })
                    .min()
                    .expect("Z/n has units");
                out.insert(best);
            }
        }
    }
    out
}

/// Order of vanishing of `x^i prod (x - a_j)^{b_j} dx / y^k` on the curve
/// `y^n = prod (x - a_j)^{e_j}` at the places over each `a_j` and over
/// infinity. At a place of ramification index `m` over a finite branch
/// value the local parameter satisfies `x - a_j = t^m`; at infinity
/// `x = t^-m`.
fn valuations(n: i64, e: &[i64], k: i64, b: &[i64], i: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for (&ej, &bj) in e.iter().zip(b) {
        let m = rat(n / n.gcd(&ej), 1);
        out.push(&m * (rat(bj, 1) - rat(k * ej, n)) + &m - rat(1, 1));
    }
    let total: i64 = e.iter().sum();
    let m = rat(n / n.gcd(&total), 1);
    let degree = rat(i + b.iter().sum::<i64>(), 1);
    out.push(&m * (rat(k * total, n) - degree) - &m - rat(1, 1));
    out
}

/// Dimension of the holomorphic forms `P(x) dx / y^k`: the least factor
/// exponents that clear the poles over each branch value are found one
/// value at a time, then monomials are added until one has a pole at
/// infinity.
fn forms_of_weight(n: i64, e: &[i64], k: i64) -> i64 {
    let mut b = vec![0i64; e.len()];
    for j in 0..e.len() {
        while valuations(n, e, k, &b, 0)[j].is_negative() {
            b[j] += 1;
        }
    }
    let regular = |i: i64| valuations(n, e, k, &b, i).iter().all(|v| !v.is_negative());
    (0..).take_while(|&i| regular(i)).count() as i64
}

/// Eigenspace dimensions `dim(1), ..., dim(n-1)` of the curve with the given
/// spherical exponents, read off from explicit differential forms.
///
/// The model is `y^n = prod (x - a_j)^{e_j}` with `e_j = -xi_j mod n`, and
/// the generator is `y -> zeta y`, which multiplies `dx / y^k` by
/// `zeta^-k`.
pub fn differential_profile(n: i64, exponents: &[i64]) -> Vec<i64> {
    let e: Vec<i64> = exponents.iter().map(|&x| (n - x % n) % n).collect();
    let mut dims = vec![0i64; (n - 1) as usize];
    for k in 1..n {
        dims[(n - k - 1) as usize] = forms_of_weight(n, &e, k);
    }
    dims
}
