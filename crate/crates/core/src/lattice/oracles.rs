use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::LatticeError;
use crate::linalg::IntMatrix;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn check(p: i64, qq: i64) -> Result<(), LatticeError> {
    if p == 1 && qq == 0 {
        return Ok(());
    }
    if p < 1 || qq <= 0 || qq >= p || p.gcd(&qq) != 1 {
        return Err(LatticeError::BadParameters(format!(
            "need 0 < q < p coprime, got p={p} q={qq}"
        )));
    }
    Ok(())
}

/// Correction terms of lens spaces by the recursion
/// `d(p,q,i) = (pq - (2i+1-p-q)^2)/(4pq) - d(q, p mod q, i mod q)`, `d(1,0,0) = 0`.
///
/// The value is the correction term of the boundary of the negative definite
/// linear plumbing [`linear_plumbing`]`(p, q)` in the class labelled `i`.
pub fn lens_d_oracle(p: i64, qq: i64, i: i64) -> Result<BigRational, LatticeError> {
    check(p, qq)?;
    if !(0..p).contains(&i) {
        return Err(LatticeError::BadParameters(format!(
            "class index {i} outside 0..{p}"
        )));
    }
    Ok(lens_rec(p, qq, i))
}

fn lens_rec(p: i64, qq: i64, i: i64) -> BigRational {
    if p == 1 {
        return BigRational::zero();
    }
    let a = 2 * i + 1 - p - qq;
    q(p * qq - a * a, 4 * p * qq) - lens_rec(qq, p % qq, i % qq)
}

/// Sorted multiset `{d(p, q, i) : 0 <= i < p}`.
pub fn lens_d_multiset(p: i64, qq: i64) -> Result<Vec<BigRational>, LatticeError> {
    let mut v = (0..p)
        .map(|i| lens_d_oracle(p, qq, i))
        .collect::<Result<Vec<_>, _>>()?;
    v.sort();
    Ok(v)
}

/// Sawtooth `((x))`: zero at integers, `x - floor(x) - 1/2` otherwise.
fn sawtooth(x: &BigRational) -> BigRational {
    if x.is_integer() {
        BigRational::zero()
    } else {
        x - x.floor() - q(1, 2)
    }
}

/// Dedekind sum `s(q, p) = sum_{k=1}^{p-1} ((k/p)) ((kq/p))`.
pub fn dedekind_sum(qq: i64, p: i64) -> BigRational {
    (1..p)
        .map(|k| sawtooth(&q(k, p)) * sawtooth(&q(k * qq, p)))
        .sum()
}

/// Casson-Walker invariant of the boundary of [`linear_plumbing`]`(p, q)`,
/// normalized to take the value `-2` on the Poincare sphere oriented as the
/// boundary of the negative definite E8 plumbing. In this normalization it
/// is exactly the Dedekind sum `s(q, p)`.
pub fn casson_walker_lens_oracle(p: i64, qq: i64) -> Result<BigRational, LatticeError> {
    check(p, qq)?;
    Ok(dedekind_sum(qq, p))
}

/// Tridiagonal negative definite form of the chain `-a_1, ..., -a_n` with
/// `p/q = a_1 - 1/(a_2 - 1/(...))`, all `a_i >= 2`. Its determinant is
/// `(-1)^n p`.
pub fn linear_plumbing(p: i64, qq: i64) -> Result<IntMatrix, LatticeError> {
    check(p, qq)?;
    let (mut a, mut b) = (p, qq);
    let mut coeffs = Vec::new();
    while b != 0 {
        let c = (a + b - 1) / b;
        coeffs.push(c);
        (a, b) = (b, c * b - a);
    }
    let n = coeffs.len();
    let mut m = vec![vec![0; n]; n];
    for (i, &c) in coeffs.iter().enumerate() {
        m[i][i] = -c;
        if i + 1 < n {
            m[i][i + 1] = 1;
            m[i + 1][i] = 1;
        }
    }
    Ok(m)
}
