//! Exact integer and rational matrix routines for small symmetric forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<i64>>;
pub type RatMatrix = Vec<Vec<BigRational>>;

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn to_rat(m: &[Vec<i64>]) -> RatMatrix {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .collect()
        })
        .collect()
}

pub fn is_symmetric(m: &[Vec<i64>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Fraction-free (Bareiss) determinant. The empty matrix has determinant 1.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a = to_big(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

/// Leading principal minors, computed as the Bareiss pivots without row
/// exchanges. Stops at the first zero minor.
pub fn leading_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let n = m.len();
    let mut a = to_big(m);
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        out.push(a[k][k].clone());
        if a[k][k].is_zero() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    out
}

pub fn is_positive_definite(m: &[Vec<i64>]) -> bool {
    is_symmetric(m) && {
        let minors = leading_minors(m);
        minors.len() == m.len() && minors.iter().all(|x| x.is_positive())
    }
}

pub fn negate(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|x| -x).collect()).collect()
}

pub fn is_negative_definite(m: &[Vec<i64>]) -> bool {
    is_positive_definite(&negate(m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia of a symmetric integer matrix by rational congruence
/// diagonalization.
pub fn inertia(m: &[Vec<i64>]) -> Inertia {
    assert!(is_symmetric(m), "inertia needs a symmetric matrix");
    let n = m.len();
    let mut a = to_rat(m);
    let mut res = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // Zero diagonal: e_i + e_j has square 2 a_ij.
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[i][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][i] += v;
                }
                a.swap(i, k);
                for row in a.iter_mut() {
                    row.swap(i, k);
                }
            } else {
                res.zero += n - k;
                break;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for j in k..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
        k += 1;
    }
    res
}

pub fn signature(m: &[Vec<i64>]) -> i64 {
    inertia(m).signature()
}

/// `Q = L D L^T` for a positive definite `Q`; `L` unit lower triangular.
pub fn ldl(q: &[Vec<i64>]) -> (RatMatrix, Vec<BigRational>) {
    let n = q.len();
    let a = to_rat(q);
    let mut l = vec![vec![BigRational::zero(); n]; n];
    let mut d = vec![BigRational::zero(); n];
    for j in 0..n {
        let mut dj = a[j][j].clone();
        for k in 0..j {
            dj -= &l[j][k] * &l[j][k] * &d[k];
        }
        assert!(dj.is_positive(), "ldl needs a positive definite matrix");
        l[j][j] = BigRational::one();
        for i in j + 1..n {
            let mut s = a[i][j].clone();
            for k in 0..j {
                s -= &l[i][k] * &l[j][k] * &d[k];
            }
            l[i][j] = s / &dj;
        }
        d[j] = dj;
    }
    (l, d)
}

/// Rational inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(m: &[Vec<i64>]) -> Option<RatMatrix> {
    let n = m.len();
    let mut a = to_rat(m);
    let mut inv: RatMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        inv.swap(p, k);
        let pivot = a[k][k].clone();
        for j in 0..n {
            a[k][j] = &a[k][j] / &pivot;
            inv[k][j] = &inv[k][j] / &pivot;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in 0..n {
                let v = &f * &a[k][j];
                a[i][j] -= v;
                let w = &f * &inv[k][j];
                inv[i][j] -= w;
            }
        }
    }
    Some(inv)
}

pub fn mat_vec_rat(m: &RatMatrix, v: &[i64]) -> Vec<BigRational> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(BigRational::zero(), |acc, (a, &x)| {
                acc + a * BigInt::from(x)
            })
        })
        .collect()
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Diagonalization `U A V = diag(d)` with `U`, `V` unimodular and `d >= 0`.
/// Only `U` and its inverse are kept; the diagonal is not put into
/// divisibility order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub diag: Vec<i64>,
}

fn checked(x: Option<i64>) -> i64 {
    x.expect("integer overflow in Smith reduction")
}

pub fn smith(m: &[Vec<i64>]) -> Smith {
    let n = m.len();
    let mut a: IntMatrix = m.to_vec();
    let id = |n: usize| -> IntMatrix {
        (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect()
    };
    let mut u = id(n);
    let mut u_inv = id(n);

    // Row op r_i += k r_j, mirrored on U and (as a column op) on U^-1.
    let row_add = |a: &mut IntMatrix,
                   u: &mut IntMatrix,
                   u_inv: &mut IntMatrix,
                   i: usize,
                   j: usize,
                   k: i64| {
        for c in 0..n {
            a[i][c] = checked(a[i][c].checked_add(checked(k.checked_mul(a[j][c]))));
            u[i][c] = checked(u[i][c].checked_add(checked(k.checked_mul(u[j][c]))));
        }
        for r in 0..n {
            u_inv[r][j] = checked(u_inv[r][j].checked_sub(checked(k.checked_mul(u_inv[r][i]))));
        }
    };
    let row_swap =
        |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize, j: usize| {
            a.swap(i, j);
            u.swap(i, j);
            for row in u_inv.iter_mut() {
                row.swap(i, j);
            }
        };

    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| (a[i][j].unsigned_abs(), i, j));
            let Some((pi, pj)) = pivot else { break };
            row_swap(&mut a, &mut u, &mut u_inv, t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    row_add(&mut a, &mut u, &mut u_inv, i, t, -q);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    for row in a.iter_mut() {
                        row[j] = checked(row[j].checked_sub(checked(q.checked_mul(row[t]))));
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    Smith { u, u_inv, diag }
}
