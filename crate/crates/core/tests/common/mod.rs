//! Exhaustive enumeration of characteristic vectors in a box, with plain
//! integer arithmetic through the adjugate.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use qalink::lattice::CharLattice;
use qalink::linalg::{determinant, IntMatrix};

fn adjugate(g: &IntMatrix) -> (Vec<Vec<i128>>, i128) {
    let r = g.len();
    let det: i128 = determinant(g).try_into().unwrap();
    let mut adj = vec![vec![0i128; r]; r];
    for i in 0..r {
        for j in 0..r {
            let minor: IntMatrix = (0..r)
                .filter(|&a| a != j)
                .map(|a| (0..r).filter(|&b| b != i).map(|b| g[a][b]).collect())
                .collect();
            let m: i128 = if r == 1 {
                1
            } else {
                determinant(&minor).try_into().unwrap()
            };
            adj[i][j] = if (i + j) % 2 == 0 { m } else { -m };
        }
    }
    (adj, det)
}

/// Class key `G^-1 c / 2 mod 1`, as `adj.c mod 2 det`, mapped to the best
/// `(c.adj.c, c)` found for it.
struct BoxOracle {
    classes: BTreeMap<Vec<i128>, (i128, Vec<i64>)>,
    det: i128,
    rank: usize,
    bound: i64,
}

fn enumerate(g: &IntMatrix) -> BoxOracle {
    let r = g.len();
    let (adj, det) = adjugate(g);
    let bound = 3 * (0..r).map(|i| g[i][i].abs()).max().unwrap();
    let modulus = 2 * det.abs();
    let mut classes: BTreeMap<Vec<i128>, (i128, Vec<i64>)> = BTreeMap::new();
    let mut c = vec![-bound; r];
    loop {
        if (0..r).all(|i| (c[i] - g[i][i]).rem_euclid(2) == 0) {
            let y: Vec<i128> = (0..r)
                .map(|i| (0..r).map(|j| adj[i][j] * c[j] as i128).sum())
                .collect();
            let key: Vec<i128> = y.iter().map(|v| v.rem_euclid(modulus)).collect();
            // c.G^-1.c = c.adj.c / det; larger is better.
            let q: i128 = (0..r).map(|i| c[i] as i128 * y[i]).sum::<i128>() * det.signum();
            let e = classes.entry(key).or_insert((i128::MIN, Vec::new()));
            if q > e.0 {
                *e = (q, c.clone());
            }
        }
        let mut i = 0;
        while i < r && c[i] == bound {
            c[i] = -bound;
            i += 1;
        }
        if i == r {
            break;
        }
        c[i] += 1;
    }
    BoxOracle {
        classes,
        det,
        rank: r,
        bound,
    }
}

impl BoxOracle {
    fn d(&self, q: i128) -> BigRational {
        // (c.G^-1.c + r)/4 with c.G^-1.c = q / |det| (q carries the sign of det).
        let v = BigRational::new(BigInt::from(q), BigInt::from(self.det.abs()));
        (v + BigRational::from(BigInt::from(self.rank as i64))) / BigRational::from(BigInt::from(4))
    }
}

/// Panics unless every class of `g` has the lattice `d` the box gives.
pub fn check_against_box(g: &IntMatrix) {
    let lat = CharLattice::new(g.clone()).unwrap();
    let oracle = enumerate(g);
    assert_eq!(
        oracle.classes.len() as i128,
        oracle.det.abs(),
        "box misses classes of {g:?}"
    );
    let (adj, det) = adjugate(g);
    let modulus = 2 * det.abs();
    let mut ours = Vec::new();
    for (class, d) in lat.all_d(16).unwrap() {
        let c = &class.representative;
        let r = c.len();
        let key: Vec<i128> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| adj[i][j] * c[j] as i128)
                    .sum::<i128>()
                    .rem_euclid(modulus)
            })
            .collect();
        let (q, best) = &oracle.classes[&key];
        assert!(
            best.iter().all(|x| x.abs() < oracle.bound),
            "maximizer {best:?} on the box boundary for {g:?}"
        );
        assert_eq!(d, oracle.d(*q), "class {:?} of {g:?}", class.key);
        ours.push(key);
    }
    ours.sort();
    ours.dedup();
    assert_eq!(ours.len() as i128, det.abs());
}
