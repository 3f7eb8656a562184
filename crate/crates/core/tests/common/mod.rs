//! Shared oracles for the integration tests. Nothing here calls into the
//! library beyond constructing complexes.
#![allow(dead_code)]

use cuspcalc_core::ia::{IAComplex, OCTAHEDRON_FACES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// RNG seeded from `CUSPCALC_SEED`, default 20240.
pub fn rng() -> ChaCha8Rng {
    let seed = std::env::var("CUSPCALC_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240);
    ChaCha8Rng::seed_from_u64(seed)
}

/// Valid cusp cycle: entries in `[2, max_entry]`, some entry at least 3.
pub fn random_cycle(rng: &mut impl Rng, max_len: usize, max_entry: i64) -> Vec<i64> {
    loop {
        let n = rng.gen_range(1..=max_len);
        let w: Vec<i64> = (0..n).map(|_| rng.gen_range(2..=max_entry)).collect();
        if w.iter().any(|&d| d >= 3) {
            return w;
        }
    }
}

/// Product of `[[0,-1],[1,d]]` factors, last entry leftmost, in i128.
pub fn monodromy_i128(w: &[i64]) -> [[i128; 2]; 2] {
    let mut m = [[1i128, 0], [0, 1]];
    for &d in w {
        let d = d as i128;
        m = [[-m[1][0], -m[1][1]], [m[0][0] + d * m[1][0], m[0][1] + d * m[1][1]]];
    }
    m
}

/// Least rotation, optionally also over the reversed word.
pub fn least_rotation(w: &[i64], reflection: bool) -> Vec<i64> {
    let mut words = vec![w.to_vec()];
    if reflection {
        words.push(w.iter().rev().copied().collect());
    }
    words
        .iter()
        .flat_map(|v| (0..v.len()).map(move |k| [&v[k..], &v[..k]].concat()))
        .min()
        .unwrap()
}

/// Counterclockwise neighbours of each vertex.
pub const LINKS: [[usize; 4]; 6] = [
    [1, 2, 3, 4],
    [0, 4, 5, 2],
    [0, 1, 5, 3],
    [0, 2, 5, 4],
    [0, 3, 5, 1],
    [1, 4, 3, 2],
];

pub const HALF_TURN: [usize; 6] = [0, 3, 4, 1, 2, 5];

pub fn oracle_toric_ok(star: &[i64]) -> bool {
    let q = 12 + star.iter().map(|d| d - 3).sum::<i64>();
    if q < 0 {
        return false;
    }
    if q > 0 {
        return true;
    }
    let mut m = [[1i64, 0], [0, 1]];
    for &d in star {
        let e = [[0, -1], [1, d]];
        m = [
            [e[0][0] * m[0][0] + e[0][1] * m[1][0], e[0][0] * m[0][1] + e[0][1] * m[1][1]],
            [e[1][0] * m[0][0] + e[1][1] * m[1][0], e[1][0] * m[0][1] + e[1][1] * m[1][1]],
        ];
    }
    m == [[1, 0], [0, 1]]
}

/// Values on `a -> b` for the half-turn symmetric family with v0 star
/// (5,2,5,2); edges off the representative list are read through the
/// half-turn.
pub fn symmetric_d(x: [i64; 4]) -> impl Fn(usize, usize) -> i64 {
    let reps = [((0, 1), 5), ((0, 2), 2), ((1, 2), x[0]), ((2, 3), x[1]), ((5, 1), x[2]), ((5, 2), x[3])];
    move |a, b| {
        let look = |a: usize, b: usize| {
            reps.iter().find_map(|&(k, v)| {
                if k == (a, b) {
                    Some(v)
                } else if k == (b, a) {
                    Some(2 - v)
                } else {
                    None
                }
            })
        };
        look(a, b).unwrap_or_else(|| look(HALF_TURN[a], HALF_TURN[b]).expect("edge in some orbit"))
    }
}

pub fn build(d: &impl Fn(usize, usize) -> i64) -> IAComplex {
    let mut half = Vec::new();
    for (v, link) in LINKS.iter().enumerate() {
        for &w in link {
            half.push((v, w, d(v, w)));
        }
    }
    IAComplex::from_simplicial(6, &half, &OCTAHEDRON_FACES, 0).unwrap()
}

pub fn oracle_valid(d: &impl Fn(usize, usize) -> i64) -> bool {
    (1..6).all(|v| oracle_toric_ok(&LINKS[v].map(|w| d(v, w))))
}

/// Quotient stars: v0 -> (5,2), 5 -> half its star, the free orbits keep
/// the star of their representative.
pub fn oracle_quotient_valid(d: &impl Fn(usize, usize) -> i64) -> bool {
    let s5 = LINKS[5].map(|w| d(5, w));
    oracle_toric_ok(&s5[..2]) && (1..3).all(|v| oracle_toric_ok(&LINKS[v].map(|w| d(v, w))))
}

pub fn first_symmetric_solution() -> (usize, Option<[i64; 4]>) {
    let mut count = 0;
    let mut first = None;
    for a in -3..=5 {
        for b in -3..=5 {
            for c in -3..=5 {
                for e in -3..=5 {
                    let x = [a, b, c, e];
                    let d = symmetric_d(x);
                    if oracle_valid(&d) && oracle_quotient_valid(&d) {
                        count += 1;
                        first.get_or_insert(x);
                    }
                }
            }
        }
    }
    (count, first)
}

