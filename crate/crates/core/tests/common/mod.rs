//! Independent oracles shared by the integration tests. Nothing here calls the
//! library's elimination, rank or counting code.
#![allow(dead_code)]

use veronese_nets::atlas::OrbitLabel;
use veronese_nets::invariants::{CubicType, Od0};
use veronese_nets::Field;

/// Schoolbook carry-less product reduced by the field modulus.
pub fn slow_mul(f: &Field, a: u8, b: u8) -> u8 {
    let m = f.spec().modulus() as u32;
    let d = f.degree();
    let mut r: u32 = 0;
    for i in 0..d {
        if (b >> i) & 1 == 1 {
            r ^= (a as u32) << i;
        }
    }
    for bit in (d..2 * d).rev() {
        if (r >> bit) & 1 == 1 {
            r ^= m << (bit - d);
        }
    }
    r as u8
}

pub fn slow_pow(f: &Field, a: u8, n: u32) -> u8 {
    (0..n).fold(1, |acc, _| slow_mul(f, acc, a))
}

/// Absolute trace as the sum of the Frobenius conjugates.
pub fn slow_trace(f: &Field, a: u8) -> u8 {
    let mut t = 0;
    let mut x = a;
    for _ in 0..f.degree() {
        t ^= x;
        x = slow_mul(f, x, x);
    }
    t
}

/// Rank of the symmetric matrix [[y0,y1,y2],[y1,y3,y4],[y2,y4,y5]] from its
/// determinant and 2x2 minors.
pub fn minor_rank(f: &Field, y: [u8; 6]) -> u8 {
    let m = |a, b| slow_mul(f, a, b);
    let e = [[y[0], y[1], y[2]], [y[1], y[3], y[4]], [y[2], y[4], y[5]]];
    if e.iter().flatten().all(|&x| x == 0) {
        return 0;
    }
    let det = m(e[0][0], m(e[1][1], e[2][2]) ^ m(e[1][2], e[2][1]))
        ^ m(e[0][1], m(e[1][0], e[2][2]) ^ m(e[1][2], e[2][0]))
        ^ m(e[0][2], m(e[1][0], e[2][1]) ^ m(e[1][1], e[2][0]));
    if det != 0 {
        return 3;
    }
    for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
        for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
            if m(e[r0][c0], e[r1][c1]) ^ m(e[r0][c1], e[r1][c0]) != 0 {
                return 2;
            }
        }
    }
    1
}

/// Point-class counts [P1, P2N, P2S, P3] by scanning every nonzero vector.
pub fn slow_census(f: &Field) -> [u64; 4] {
    let q = f.order() as u32;
    let mut counts = [0u64; 4];
    for code in 1..q.pow(6) {
        let mut y = [0u8; 6];
        let mut c = code;
        for slot in y.iter_mut() {
            *slot = (c % q) as u8;
            c /= q;
        }
        let idx = match minor_rank(f, y) {
            1 => 0,
            2 if y[0] == 0 && y[3] == 0 && y[5] == 0 => 1,
            2 => 2,
            _ => 3,
        };
        counts[idx] += 1;
    }
    counts.map(|c| c / (q as u64 - 1))
}

/// Planes of PG(5,2) as sets of seven nonzero bit vectors, counting all of
/// them and those containing a vector supported off coordinates 0, 3, 5.
pub fn planes_pg52_by_bits() -> (u64, u64) {
    use std::collections::HashSet;
    let nucleus = |v: u8| v & 0b101001 == 0;
    let mut seen: HashSet<[u8; 7]> = HashSet::new();
    let mut meeting = 0;
    for a in 1u8..64 {
        for b in 1u8..64 {
            for c in 1u8..64 {
                let span = [a, b, a ^ b, c, a ^ c, b ^ c, a ^ b ^ c];
                if span.contains(&0) {
                    continue;
                }
                let mut key = span;
                key.sort_unstable();
                if key.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                if seen.insert(key) && key.iter().any(|&v| nucleus(v)) {
                    meeting += 1;
                }
            }
        }
    }
    (seen.len() as u64, meeting)
}

/// Number of k-subspaces of GF(q)^n by the product formula.
pub fn gaussian(n: u32, k: u32, q: u128) -> u128 {
    let num: u128 = (0..k).map(|i| q.pow(n - i) - 1).product();
    let den: u128 = (0..k).map(|i| q.pow(k - i) - 1).product();
    num / den
}

/// OD0 rows as printed in the orbit table.
pub fn tabulated_od0(label: OrbitLabel, q: u64) -> Od0 {
    use OrbitLabel::*;
    let qq = q * q;
    Od0(match label {
        Sigma1 => [q + 1, 1, qq - 1, 0],
        Sigma3 | Sigma4 => [2, 1, 2 * q - 2, qq - q],
        Sigma7 => [1, q + 1, qq - 1, 0],
        Sigma8 => [1, q + 1, q - 1, qq - q],
        Sigma9 | Sigma10 => [1, 1, 2 * q - 1, qq - q],
        Sigma11 | Sigma15 => [1, 1, q - 1, qq],
        SigmaN => [0, qq + q + 1, 0, 0],
        Sigma16 => [0, q + 1, 0, qq],
        Sigma17 => [0, q + 1, q, qq - q],
        Sigma18 => [0, 1, 0, qq + q],
        Sigma19 => [0, 1, 3 * q, qq - 2 * q],
        Sigma20 | Sigma22 => [0, 1, q, qq],
        Sigma21 | Sigma23 => [0, 1, 2 * q, qq - q],
    })
}

/// Cubic types named for the orbits with an empty base.
pub fn stated_cubic(label: OrbitLabel) -> Option<CubicType> {
    use OrbitLabel::*;
    Some(match label {
        Sigma16 => CubicType::TripleLine,
        Sigma17 => CubicType::LinePlusDoubleLine,
        Sigma18 => CubicType::NoRationalComponentPoint,
        Sigma19 => CubicType::ThreeConcurrentLines,
        Sigma20 => CubicType::LinePlusImaginaryPair,
        Sigma21 => CubicType::LinePlusDoubleLine,
        Sigma22 => CubicType::IrreducibleCubic,
        Sigma23 => CubicType::LinePlusConicTangent,
        _ => return None,
    })
}
