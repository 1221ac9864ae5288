//! Negative definite integral lattices, their characteristic classes, and
//! correction terms `d = max (c.G^-1.c + r) / 4` over a class.
//!
//! A characteristic vector `c` satisfies `c_i = G_ii (mod 2)`; two are in
//! the same class when they differ by `2 G x`. Classes are indexed through
//! a Smith form `U G V = D`: the key of `c` is `U (c - c0) / 2` reduced
//! modulo the diagonal of `D`, where `c0_i = G_ii mod 2`.
//!
//! The maximum is found by minimizing `(x + t).Q.(x + t)` over integer `x`
//! with `Q = -G` and `t = G^-1 c / 2`, using an exact `LDL^T` factorization
//! and Schnorr-Euchner enumeration, so no square roots or floats appear.

mod oracles;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix, Smith};
use crate::surfaces::GoeritzForm;

pub use oracles::{
    casson_walker_lens_oracle, dedekind_sum, lens_d_multiset, lens_d_oracle, linear_plumbing,
};

pub const DEFAULT_RANK_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("form is not negative definite")]
    NotNegativeDefinite,
    #[error("rank {rank} exceeds the limit {limit}")]
    ResourceLimit { rank: usize, limit: usize },
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("vector is not characteristic")]
    NotCharacteristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharLattice {
    gram: IntMatrix,
    smith: Smith,
    c0: Vec<i64>,
}

/// A class of characteristic vectors modulo `2 G Z^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharClass {
    /// Coordinates in the cyclic factors of the discriminant group (factors
    /// of order one omitted).
    pub key: Vec<i64>,
    pub representative: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DValue {
    pub value: BigRational,
    /// Lexicographically smallest characteristic vector attaining the max.
    pub maximizer: Vec<i64>,
}

pub fn build_lattice(g: &GoeritzForm) -> Result<CharLattice, LatticeError> {
    CharLattice::new(g.matrix.clone())
}

impl CharLattice {
    pub fn new(gram: IntMatrix) -> Result<Self, LatticeError> {
        if !linalg::is_negative_definite(&gram) {
            return Err(LatticeError::NotNegativeDefinite);
        }
        let smith = linalg::smith(&gram);
        let c0 = (0..gram.len()).map(|i| gram[i][i].rem_euclid(2)).collect();
        Ok(CharLattice { gram, smith, c0 })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Order of the discriminant group, `|det G|`.
    pub fn det(&self) -> u64 {
        self.smith.diag.iter().map(|&d| d as u64).product()
    }

    /// Orders of the nontrivial cyclic factors.
    pub fn group_orders(&self) -> Vec<i64> {
        self.smith.diag.iter().copied().filter(|&d| d > 1).collect()
    }

    pub fn is_characteristic(&self, c: &[i64]) -> bool {
        c.len() == self.rank()
            && c.iter()
                .zip(&self.c0)
                .all(|(a, b)| (a - b).rem_euclid(2) == 0)
    }

    fn full_key(&self, c: &[i64]) -> Vec<i64> {
        let half: Vec<i64> = c.iter().zip(&self.c0).map(|(a, b)| (a - b) / 2).collect();
        let w = linalg::mat_vec(&self.smith.u, &half);
        w.iter()
            .zip(&self.smith.diag)
            .map(|(&x, &d)| x.rem_euclid(d))
            .collect()
    }

    fn compress(&self, full: &[i64]) -> Vec<i64> {
        full.iter()
            .zip(&self.smith.diag)
            .filter(|(_, &d)| d > 1)
            .map(|(&x, _)| x)
            .collect()
    }

    fn expand(&self, key: &[i64]) -> Vec<i64> {
        let mut it = key.iter();
        self.smith
            .diag
            .iter()
            .map(|&d| {
                if d > 1 {
                    *it.next().expect("key length")
                } else {
                    0
                }
            })
            .collect()
    }

    fn class_from_key(&self, key: Vec<i64>) -> CharClass {
        let w = self.expand(&key);
        let shift = linalg::mat_vec(&self.smith.u_inv, &w);
        let representative = self.c0.iter().zip(&shift).map(|(a, s)| a + 2 * s).collect();
        CharClass {
            key,
            representative,
        }
    }

    pub fn class_of(&self, c: &[i64]) -> Result<CharClass, LatticeError> {
        if !self.is_characteristic(c) {
            return Err(LatticeError::NotCharacteristic);
        }
        Ok(self.class_from_key(self.compress(&self.full_key(c))))
    }

    /// All `|det G|` classes, keys in lexicographic order.
    pub fn char_classes(&self) -> Vec<CharClass> {
        let orders = self.group_orders();
        let mut keys = vec![Vec::new()];
        for &n in &orders {
            keys = keys
                .into_iter()
                .flat_map(|k| (0..n).map(move |x| [k.clone(), vec![x]].concat()))
                .collect();
        }
        keys.into_iter().map(|k| self.class_from_key(k)).collect()
    }

    /// The class of `-c` for `c` in `class`.
    pub fn conjugate(&self, class: &CharClass) -> CharClass {
        let neg: Vec<i64> = class.representative.iter().map(|x| -x).collect();
        self.class_of(&neg)
            .expect("negation keeps characteristic vectors")
    }

    /// Classes fixed by conjugation.
    pub fn spin_classes(&self) -> Vec<CharClass> {
        self.char_classes()
            .into_iter()
            .filter(|c| &self.conjugate(c) == c)
            .collect()
    }

    pub fn d_invariant(
        &self,
        class: &CharClass,
        rank_limit: usize,
    ) -> Result<DValue, LatticeError> {
        let r = self.rank();
        if r > rank_limit {
            return Err(LatticeError::ResourceLimit {
                rank: r,
                limit: rank_limit,
            });
        }
        if r == 0 {
            return Ok(DValue {
                value: BigRational::zero(),
                maximizer: Vec::new(),
            });
        }
        let inv = linalg::inverse(&self.gram).expect("definite forms are invertible");
        let two = BigRational::from(BigInt::from(2));
        let t: Vec<BigRational> = linalg::mat_vec_rat(&inv, &class.representative)
            .into_iter()
            .map(|y| y / &two)
            .collect();
        let q = linalg::negate(&self.gram);
        let (l, diag) = linalg::ldl(&q);
        let mut search = Search {
            lattice: self,
            rep: &class.representative,
            t: &t,
            l: &l,
            d: &diag,
            x: vec![0; r],
            best: None,
        };
        // Seed with the representative itself and the greedy rounding.
        search.offer(&vec![0; r]);
        let babai = search.babai();
        search.offer(&babai);
        search.descend(r, BigRational::zero(), vec![BigRational::zero(); r]);
        let (m, c) = search.best.expect("seeded");
        let value = BigRational::new(BigInt::from(r as i64), BigInt::from(4)) - m;
        Ok(DValue {
            value,
            maximizer: c,
        })
    }

    /// `d` for every class, in `char_classes` order.
    pub fn all_d(&self, rank_limit: usize) -> Result<Vec<(CharClass, BigRational)>, LatticeError> {
        self.char_classes()
            .into_iter()
            .map(|c| {
                let d = self.d_invariant(&c, rank_limit)?.value;
                Ok((c, d))
            })
            .collect()
    }

    /// `d` over the Spin classes, sorted.
    pub fn spin_d_multiset(&self, rank_limit: usize) -> Result<Vec<BigRational>, LatticeError> {
        let mut v = self
            .spin_classes()
            .iter()
            .map(|c| Ok(self.d_invariant(c, rank_limit)?.value))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        v.sort();
        Ok(v)
    }

    fn characteristic_at(&self, rep: &[i64], x: &[i64]) -> Vec<i64> {
        let gx = linalg::mat_vec(&self.gram, x);
        rep.iter().zip(gx).map(|(a, b)| a + 2 * b).collect()
    }
}

struct Search<'a> {
    lattice: &'a CharLattice,
    rep: &'a [i64],
    t: &'a [BigRational],
    l: &'a [Vec<BigRational>],
    d: &'a [BigRational],
    x: Vec<i64>,
    best: Option<(BigRational, Vec<i64>)>,
}

fn round(v: &BigRational) -> i64 {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (v + half)
        .floor()
        .to_integer()
        .to_i64()
        .expect("coordinate fits in i64")
}

impl Search<'_> {
    /// `s_i = t_i + sum_{j>i} L_ji (x_j + t_j)` given the shifted tail
    /// values `z_j = x_j + t_j`.
    fn center(&self, i: usize, z: &[BigRational]) -> BigRational {
        let mut s = self.t[i].clone();
        for j in i + 1..z.len() {
            s += &self.l[j][i] * &z[j];
        }
        s
    }

    fn value(&self, x: &[i64]) -> BigRational {
        let r = x.len();
        let mut z = vec![BigRational::zero(); r];
        let mut total = BigRational::zero();
        for i in (0..r).rev() {
            let s = self.center(i, &z);
            let u = BigRational::from(BigInt::from(x[i])) + &s;
            total += &self.d[i] * &u * &u;
            z[i] = BigRational::from(BigInt::from(x[i])) + &self.t[i];
        }
        total
    }

    fn babai(&self) -> Vec<i64> {
        let r = self.t.len();
        let mut z = vec![BigRational::zero(); r];
        let mut x = vec![0; r];
        for i in (0..r).rev() {
            let s = self.center(i, &z);
            x[i] = round(&-s);
            z[i] = BigRational::from(BigInt::from(x[i])) + &self.t[i];
        }
        x
    }

    fn offer(&mut self, x: &[i64]) {
        let v = self.value(x);
        self.record(v, x);
    }

    fn record(&mut self, v: BigRational, x: &[i64]) {
        let c = self.lattice.characteristic_at(self.rep, x);
        let better = match &self.best {
            None => true,
            Some((b, bc)) => v < *b || (v == *b && c < *bc),
        };
        if better {
            self.best = Some((v, c));
        }
    }

    /// Fixes coordinates `level-1` down to 0. `partial` is the contribution
    /// of the coordinates already fixed; `z` holds their shifted values.
    fn descend(&mut self, level: usize, partial: BigRational, mut z: Vec<BigRational>) {
        if level == 0 {
            let x = self.x.clone();
            self.record(partial, &x);
            return;
        }
        let i = level - 1;
        let s = self.center(i, &z);
        let start = round(&-&s);
        let cost = |xi: i64| {
            let u = BigRational::from(BigInt::from(xi)) + &s;
            &self.d[i] * &u * &u
        };
        // Zigzag outward from the nearest integer; each side stops once the
        // quadratic term alone overshoots the current bound.
        let (mut up, mut down) = (start, start - 1);
        let (mut up_live, mut down_live) = (true, true);
        let mut take_up = true;
        while up_live || down_live {
            let xi = if (take_up && up_live) || !down_live {
                up += 1;
                up - 1
            } else {
                down -= 1;
                down + 1
            };
            let going_up = xi >= start;
            take_up = !take_up;
            let total = &partial + cost(xi);
            let bound = &self.best.as_ref().expect("seeded").0;
            if total > *bound {
                if going_up {
                    up_live = false;
                } else {
                    down_live = false;
                }
                continue;
            }
            self.x[i] = xi;
            z[i] = BigRational::from(BigInt::from(xi)) + &self.t[i];
            self.descend(i, total, z.clone());
        }
        self.x[i] = 0;
    }
}

/// Sorted multiset of `-d` values: the lattice of `-G` describes the
/// oppositely oriented manifold.
pub fn negated(v: &[BigRational]) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = v.iter().map(|x| -x).collect();
    out.sort();
    out
}
