//! Embedded reference configurations: classical generator matrices, the
//! parametric code families used in regressions, and the D4 root system.
//! Everything here is generated from first principles at call time so the
//! test suite needs no external data.

use crate::code::Code;
use crate::error::Result;
use crate::exact::{rat_u, Rat};
use crate::space::HammingSpace;
use num_traits::Zero;

/// Span of a generator matrix over the prime field F_q (q = 2 or 3 here).
pub fn span(n: usize, q: u64, generator: &[Vec<u32>]) -> Result<Code> {
    let k = generator.len();
    let mut words = Vec::with_capacity((q as usize).pow(k as u32));
    let mut msg = vec![0u32; k];
    loop {
        let mut w = vec![0u32; n];
        for (row, &m) in generator.iter().zip(&msg) {
            if m != 0 {
                for (i, &g) in row.iter().enumerate() {
                    w[i] = ((w[i] as u64 + (m as u64 * g as u64) % q) % q) as u32;
                }
            }
        }
        words.push(w);
        let mut pos = 0;
        loop {
            if pos == k {
                let space = HammingSpace::new(n, q)?;
                return Code::new(space, words);
            }
            msg[pos] += 1;
            if (msg[pos] as u64) < q {
                break;
            }
            msg[pos] = 0;
            pos += 1;
        }
    }
}

/// Generator rows of a cyclic code from its generator polynomial
/// (coefficients low-to-high): row i is x^i g(x).
fn cyclic_generator(n: usize, g: &[u32], dim: usize) -> Vec<Vec<u32>> {
    (0..dim)
        .map(|i| {
            let mut row = vec![0u32; n];
            for (j, &c) in g.iter().enumerate() {
                row[i + j] = c;
            }
            row
        })
        .collect()
}

/// The [7,4,3] binary Hamming code.
pub fn hamming_7_4() -> Code {
    let gen = vec![
        vec![1, 0, 0, 0, 0, 1, 1],
        vec![0, 1, 0, 0, 1, 0, 1],
        vec![0, 0, 1, 0, 1, 1, 0],
        vec![0, 0, 0, 1, 1, 1, 1],
    ];
    span(7, 2, &gen).unwrap()
}

/// The [7,3,4] binary simplex code (dual of the Hamming code).
pub fn simplex_7_3() -> Code {
    let gen = vec![
        vec![0, 1, 1, 1, 1, 0, 0],
        vec![1, 0, 1, 1, 0, 1, 0],
        vec![1, 1, 0, 1, 0, 0, 1],
    ];
    span(7, 2, &gen).unwrap()
}

/// The [23,12,7] binary Golay code (cyclic).
pub fn golay_23() -> Code {
    let g = [1u32, 1, 0, 0, 0, 1, 1, 1, 0, 1, 0, 1]; // 1 + x + x^5 + x^6 + x^7 + x^9 + x^11
    span(23, 2, &cyclic_generator(23, &g, 12)).unwrap()
}

/// The [24,12,8] extended binary Golay code (overall parity appended).
pub fn golay_24() -> Code {
    extend_with_parity(&golay_23())
}

/// The [11,6,5] ternary Golay code (cyclic).
pub fn ternary_golay_11() -> Code {
    let g = [2u32, 0, 1, 2, 1, 1]; // 2 + x^2 + 2x^3 + x^4 + x^5
    span(11, 3, &cyclic_generator(11, &g, 6)).unwrap()
}

/// The [12,6,6] extended ternary Golay code.
pub fn ternary_golay_12() -> Code {
    extend_with_parity(&ternary_golay_11())
}

/// Append the check symbol making each word sum to 0 mod q.
pub fn extend_with_parity(code: &Code) -> Code {
    let q = code.space().q();
    let n = code.space().n();
    let words: Vec<Vec<u32>> = code
        .words()
        .iter()
        .map(|w| {
            let sum: u64 = w.iter().map(|&s| s as u64).sum();
            let parity = ((q - sum % q) % q) as u32;
            let mut out = w.clone();
            out.push(parity);
            out
        })
        .collect();
    Code::new(HammingSpace::new(n + 1, q).unwrap(), words).unwrap()
}

/// Shorten at a coordinate: keep words with symbol 0 there, drop it.
pub fn shorten(code: &Code, coord: usize) -> Result<Code> {
    let words: Vec<Vec<u32>> = code
        .words()
        .iter()
        .filter(|w| w[coord] == 0)
        .map(|w| {
            let mut out = w.clone();
            out.remove(coord);
            out
        })
        .collect();
    Code::new(
        HammingSpace::new(code.space().n() - 1, code.space().q())?,
        words,
    )
}

/// The q-ary repetition code of length n.
pub fn repetition(n: usize, q: u64) -> Code {
    let words = (0..q).map(|s| vec![s as u32; n]).collect();
    Code::new(HammingSpace::new(n, q).unwrap(), words).unwrap()
}

/// All even-weight binary words of length n.
pub fn even_weight(n: usize) -> Code {
    let words: Vec<Vec<u32>> = (0..(1u64 << n))
        .filter(|v| v.count_ones() % 2 == 0)
        .map(|v| (0..n).map(|b| ((v >> b) & 1) as u32).collect())
        .collect();
    Code::new(HammingSpace::new(n, 2).unwrap(), words).unwrap()
}

/// The full space as a code (small n only).
pub fn full_space(n: usize, q: u64) -> Code {
    let total = (q as u64).pow(n as u32);
    let words: Vec<Vec<u32>> = (0..total)
        .map(|mut v| {
            (0..n)
                .map(|_| {
                    let s = (v % q) as u32;
                    v /= q;
                    s
                })
                .collect()
        })
        .collect();
    Code::new(HammingSpace::new(n, q).unwrap(), words).unwrap()
}

/// Distance distribution of the Kerdock code of parameter ell
/// (length 2^{2 ell}, size 2^{4 ell}), from its known weight formulas.
pub fn kerdock_distribution(ell: u32) -> (HammingSpace, Rat, Vec<Rat>) {
    let n = 1usize << (2 * ell);
    let m = rat_u(1u64 << (4 * ell));
    let mut b = vec![Rat::zero(); n + 1];
    b[0] = Rat::from_integer(1.into());
    b[n] = Rat::from_integer(1.into());
    let half = 1usize << (2 * ell - 1);
    let quarter = 1usize << (ell - 1);
    let side = rat_u(1u64 << (2 * ell)) * (rat_u((1u64 << (2 * ell - 1)) - 1));
    b[half - quarter] = side.clone();
    b[half + quarter] = side;
    b[half] = rat_u((1u64 << (2 * ell + 1)) - 2);
    let space = HammingSpace::new(n, 2).unwrap();
    (space, m, b)
}

/// The 24 minimal vectors of the D4 lattice, normalized to the unit
/// sphere: all signed pairs (+-1, +-1, 0, 0) / sqrt(2).
pub fn d4_points() -> Vec<Vec<f64>> {
    let r = 1.0 / 2f64.sqrt();
    let mut pts = Vec::with_capacity(24);
    for i in 0..4 {
        for j in (i + 1)..4 {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut p = vec![0.0; 4];
                p[i] = si * r;
                p[j] = sj * r;
                pts.push(p);
            }
        }
    }
    pts
}
