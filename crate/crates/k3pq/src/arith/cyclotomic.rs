use std::fmt;

use num_traits::{One, Zero};

use super::modular::is_odd_prime;
use super::{modulo, ArithError, Rational};

/// An element of the field generated by a primitive `p`-th root of unity,
/// stored by its coordinates in the basis `1, z, ..., z^(p-2)`.
///
/// The representation is always reduced, so derived equality is field
/// equality. Primitive `2p`-th roots live in the same field through
/// `zeta_2p = -zeta_p^((p+1)/2)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    p: i64,
    coeffs: Vec<Rational>,
}

type Poly = Vec<Rational>;

fn trim(poly: &mut Poly) {
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
}

fn poly_sub_scaled_shift(target: &mut Poly, source: &Poly, factor: &Rational, shift: usize) {
    if target.len() < source.len() + shift {
        target.resize(source.len() + shift, Rational::zero());
    }
    for (i, c) in source.iter().enumerate() {
        target[i + shift] -= factor * c;
    }
}

fn poly_divrem(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let mut rem = num.clone();
    trim(&mut rem);
    let lead = den.last().expect("division by the zero polynomial");
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(den.len() - 1).max(1)];
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().unwrap() / lead;
        quot[shift] += &factor;
        poly_sub_scaled_shift(&mut rem, den, &factor, shift);
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    poly_sub_scaled_shift(&mut out, b, &Rational::one(), 0);
    trim(&mut out);
    out
}

impl CyclotomicNumber {
    fn check_prime(p: i64) -> Result<(), ArithError> {
        if is_odd_prime(p) {
            Ok(())
        } else {
            Err(ArithError::NotOddPrime(p))
        }
    }

    /// Reduces an arbitrary polynomial in `z` modulo `z^p - 1` and then
    /// modulo the cyclotomic polynomial.
    fn from_poly(p: i64, poly: &[Rational]) -> Self {
        let pu = p as usize;
        let mut folded = vec![Rational::zero(); pu];
        for (i, c) in poly.iter().enumerate() {
            folded[i % pu] += c;
        }
        let top = folded.pop().unwrap();
        for c in folded.iter_mut() {
            *c -= &top;
        }
        CyclotomicNumber { p, coeffs: folded }
    }

    pub fn zero(p: i64) -> Result<Self, ArithError> {
        Self::check_prime(p)?;
        Ok(CyclotomicNumber { p, coeffs: vec![Rational::zero(); (p - 1) as usize] })
    }

    pub fn from_rational(p: i64, value: Rational) -> Result<Self, ArithError> {
        let mut out = Self::zero(p)?;
        out.coeffs[0] = value;
        Ok(out)
    }

    pub fn one(p: i64) -> Result<Self, ArithError> {
        Self::from_rational(p, Rational::one())
    }

    /// `zeta_p^k` for any integer `k`.
    pub fn zeta(p: i64, k: i64) -> Result<Self, ArithError> {
        Self::check_prime(p)?;
        let e = modulo(k, p) as usize;
        let mut poly = vec![Rational::zero(); e + 1];
        poly[e] = Rational::one();
        Ok(Self::from_poly(p, &poly))
    }

    /// `zeta_n^k` for `n` equal to `p` or `2p`.
    pub fn root_of_unity(p: i64, order: i64, k: i64) -> Result<Self, ArithError> {
        if order == p {
            Self::zeta(p, k)
        } else if order == 2 * p {
            let k = modulo(k, order);
            let base = Self::zeta(p, k * ((p + 1) / 2))?;
            Ok(if k % 2 == 1 { base.neg() } else { base })
        } else if order == 1 {
            Self::one(p)
        } else if order == 2 {
            let one = Self::one(p)?;
            Ok(if modulo(k, 2) == 1 { one.neg() } else { one })
        } else {
            Err(ArithError::UnsupportedRoot { order, p })
        }
    }

    pub fn prime(&self) -> i64 {
        self.p
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn same_field(&self, other: &Self) -> Result<(), ArithError> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(ArithError::FieldMismatch(self.p, other.p))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CyclotomicNumber { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        CyclotomicNumber { p: self.p, coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        self.same_field(other)?;
        Ok(Self::from_poly(self.p, &poly_mul(&self.coeffs, &other.coeffs)))
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against the
    /// cyclotomic polynomial `1 + z + ... + z^(p-1)`.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::ZeroInverse);
        }
        let modulus: Poly = vec![Rational::one(); self.p as usize];
        let mut value = self.coeffs.clone();
        trim(&mut value);
        let (mut r0, mut r1) = (modulus, value);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let next_s = poly_sub(&s0, &poly_mul(&quot, &s1));
            (r0, r1) = (r1, rem);
            (s0, s1) = (s1, next_s);
        }
        // r0 is a non-zero constant because the cyclotomic polynomial is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let scale = Rational::one() / &r0[0];
        let poly: Poly = s0.iter().map(|c| c * &scale).collect();
        Ok(Self::from_poly(self.p, &poly))
    }

    pub fn pow(&self, exp: u32) -> Result<Self, ArithError> {
        let mut out = Self::one(self.p)?;
        for _ in 0..exp {
            out = out.mul(self)?;
        }
        Ok(out)
    }
}

pub fn cyc_mul(x: &CyclotomicNumber, y: &CyclotomicNumber) -> Result<CyclotomicNumber, ArithError> {
    x.mul(y)
}

pub fn cyc_inv(x: &CyclotomicNumber) -> Result<CyclotomicNumber, ArithError> {
    x.inv()
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `1/(1 - w)` for a root of unity `w != 1`.
pub fn geometric_inverse(w: &CyclotomicNumber) -> Result<CyclotomicNumber, ArithError> {
    CyclotomicNumber::one(w.prime())?.sub(w)?.inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn integer(p: i64, v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_rational(p, int(v)).unwrap()
    }

    #[test]
    fn sum_of_primitive_cube_roots() {
        let s = CyclotomicNumber::zeta(3, 1).unwrap().add(&CyclotomicNumber::zeta(3, 2).unwrap()).unwrap();
        assert_eq!(s, integer(3, -1));
    }

    #[test]
    fn inverse_of_one_minus_zeta() {
        for p in [3, 5, 7, 11, 13, 17, 19] {
            let x = integer(p, 1).sub(&CyclotomicNumber::zeta(p, 1).unwrap()).unwrap();
            assert_eq!(cyc_mul(&x, &cyc_inv(&x).unwrap()).unwrap(), integer(p, 1));
        }
    }

    #[test]
    fn rationalised_inverse() {
        let x = integer(3, 1).sub(&CyclotomicNumber::zeta(3, 2).unwrap()).unwrap();
        let lhs = cyc_inv(&x).unwrap().scale(&int(6));
        let rhs = integer(3, 2).sub(&CyclotomicNumber::zeta(3, 1).unwrap().scale(&int(2))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn powers_sum_to_zero() {
        for p in [3, 5, 7, 19] {
            let mut acc = CyclotomicNumber::zero(p).unwrap();
            for k in 0..p {
                acc = acc.add(&CyclotomicNumber::zeta(p, k).unwrap()).unwrap();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn doubled_root() {
        for p in [3, 5, 7, 13] {
            let z = CyclotomicNumber::root_of_unity(p, 2 * p, 1).unwrap();
            assert_eq!(z.pow(p as u32).unwrap(), integer(p, -1));
            assert_eq!(z.pow(2).unwrap(), CyclotomicNumber::zeta(p, 1).unwrap());
            for k in 0..2 * p {
                assert_eq!(z.pow(k as u32).unwrap(), CyclotomicNumber::root_of_unity(p, 2 * p, k).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(CyclotomicNumber::zero(5).unwrap().inv(), Err(ArithError::ZeroInverse));
        let a = integer(3, 1);
        let b = integer(5, 1);
        assert_eq!(a.mul(&b), Err(ArithError::FieldMismatch(3, 5)));
        assert!(CyclotomicNumber::zero(9).is_err());
        assert!(CyclotomicNumber::root_of_unity(5, 3, 1).is_err());
    }

    #[test]
    fn rational_detection() {
        let x = CyclotomicNumber::from_rational(7, rat(3, 4)).unwrap();
        assert_eq!(x.as_rational(), Some(rat(3, 4)));
        assert_eq!(CyclotomicNumber::zeta(7, 2).unwrap().as_rational(), None);
        assert_eq!(
            CyclotomicNumber::zeta(7, 6).unwrap().to_string(),
            "-1 + (-1)z + (-1)z^2 + (-1)z^3 + (-1)z^4 + (-1)z^5"
        );
    }
}
