//! Dense univariate polynomial helpers over ℤ and ℚ, lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Cyclotomic polynomial Φ_m as integer coefficients, constant term first.
///
/// Computed as (x^m − 1) divided by every Φ_d with d a proper divisor of m.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    let mut cache: Vec<(u64, Vec<BigInt>)> = Vec::new();
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = -BigInt::one();
        num[d as usize] = BigInt::one();
        for (e, phi) in &cache {
            if d % e == 0 {
                num = exact_div_monic(&num, phi);
            }
        }
        cache.push((d, num));
    }
    cache.pop().expect("divisor list contains m").1
}

/// Divides `num` by the monic integer polynomial `den`, asserting zero remainder.
fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for top in (dn..num.len()).rev() {
        let c = rem[top].clone();
        if c.is_zero() {
            continue;
        }
        quot[top - dn] = c.clone();
        for (t, d) in den.iter().enumerate() {
            rem[top - dn + t] -= &c * d;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

pub fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Reduces `p` in place modulo the monic integer polynomial `modulus`,
/// leaving exactly `deg(modulus)` coefficients.
pub fn reduce_mod_monic(p: &mut Vec<BigRational>, modulus: &[BigInt]) {
    let d = modulus.len() - 1;
    if p.len() > d {
        for top in (d..p.len()).rev() {
            if p[top].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut p[top], BigRational::zero());
            for (t, m) in modulus.iter().enumerate().take(d) {
                if !m.is_zero() {
                    p[top - d + t] -= &c * BigRational::from_integer(m.clone());
                }
            }
        }
    }
    p.resize(d, BigRational::zero());
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a / b` over ℚ; `b` must be nonzero.
fn divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<BigRational> = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        for (t, y) in b.iter().enumerate().take(db + 1) {
            rem[dr - db + t] -= &c * y;
        }
        quot[dr - db] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Inverse of `a` modulo the irreducible `modulus`, via the extended Euclidean
/// algorithm. Returns `None` when `a ≡ 0`.
pub fn inverse_mod(a: &[BigRational], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    let m: Vec<BigRational> = modulus
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r0 = m;
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while degree(&r1).is_some_and(|d| d > 0) {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        if r1.is_empty() {
            // gcd of positive degree: modulus was not irreducible.
            return None;
        }
    }
    let c = r1[0].clone();
    let mut inv: Vec<BigRational> = s1.into_iter().map(|x| x / &c).collect();
    reduce_mod_monic(&mut inv, modulus);
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        // Smallest m whose cyclotomic polynomial has a coefficient outside {-1, 0, 1}.
        let phi = cyclotomic_polynomial(105);
        assert_eq!(phi.len(), 49);
        assert_eq!(phi[7], BigInt::from(-2));
    }
}
