//! Explicit codes: ingestion, distance distributions, the transform to the
//! dual distribution, design strength, covering radius, and energy.

use crate::error::{Error, Result};
use crate::exact::{rat_u, Rat};
use crate::kraw;
use crate::potential::DistancePotential;
use crate::report::Value;
use crate::space::HammingSpace;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::HashSet;

/// Work limits for the exhaustive operations. Exceeding a limit is an
/// explicit error, never a silent approximation.
#[derive(Debug, Clone, Copy)]
pub struct Guards {
    /// Bound on C(n,tau) * q^tau * |C| for the direct strength check.
    pub strength_work: u128,
    /// Bound on q^n for the exhaustive covering-radius scan.
    pub covering_work: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            strength_work: 100_000_000,
            covering_work: 10_000_000,
        }
    }
}

impl Guards {
    /// A single override applied to both limits.
    pub fn with_max_work(limit: u128) -> Self {
        Guards {
            strength_work: limit,
            covering_work: limit,
        }
    }
}

/// An explicit code: a duplicate-free set of length-n words over 0..q-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    space: HammingSpace,
    words: Vec<Vec<u32>>,
}

impl Code {
    pub fn new(space: HammingSpace, words: Vec<Vec<u32>>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidInput("a code needs at least one word".into()));
        }
        let mut seen = HashSet::new();
        for w in &words {
            if w.len() != space.n() {
                return Err(Error::InvalidInput(format!(
                    "word length {} does not match n = {}",
                    w.len(),
                    space.n()
                )));
            }
            if w.iter().any(|&s| s as u64 >= space.q()) {
                return Err(Error::InvalidInput(format!(
                    "symbol out of range for q = {}",
                    space.q()
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(Error::InvalidInput("duplicate codeword rejected".into()));
            }
        }
        Ok(Code { space, words })
    }

    pub fn space(&self) -> &HammingSpace {
        &self.space
    }

    pub fn words(&self) -> &[Vec<u32>] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn distance(&self, i: usize, j: usize) -> usize {
        hamming_distance(&self.words[i], &self.words[j])
    }

    /// Parse the text format: header `#n=<n> q=<q>`, one word per line
    /// (digit string for q <= 10, comma-separated integers otherwise),
    /// blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, u64)> = None;
        let mut words: Vec<Vec<u32>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if rest.starts_with("n=") && header.is_none() {
                    let mut n = None;
                    let mut q = None;
                    for tok in rest.split_whitespace() {
                        if let Some(v) = tok.strip_prefix("n=") {
                            n = v.parse::<usize>().ok();
                        } else if let Some(v) = tok.strip_prefix("q=") {
                            q = v.parse::<u64>().ok();
                        }
                    }
                    match (n, q) {
                        (Some(n), Some(q)) => header = Some((n, q)),
                        _ => {
                            return Err(Error::Parse {
                                line: lineno,
                                msg: "malformed header, expected `#n=<n> q=<q>`".into(),
                            })
                        }
                    }
                }
                continue;
            }
            let (n, q) = header.ok_or(Error::Parse {
                line: lineno,
                msg: "codeword before `#n=<n> q=<q>` header".into(),
            })?;
            let word: Vec<u32> = if q <= 10 {
                line.chars()
                    .map(|c| {
                        c.to_digit(10).ok_or(Error::Parse {
                            line: lineno,
                            msg: format!("bad symbol `{c}`"),
                        })
                    })
                    .collect::<Result<_>>()?
            } else {
                line.split(',')
                    .map(|tok| {
                        tok.trim().parse::<u32>().map_err(|_| Error::Parse {
                            line: lineno,
                            msg: format!("bad symbol `{tok}`"),
                        })
                    })
                    .collect::<Result<_>>()?
            };
            if word.len() != n {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected {n} symbols, got {}", word.len()),
                });
            }
            words.push(word);
        }
        let (n, q) = header.ok_or(Error::Parse {
            line: 1,
            msg: "missing `#n=<n> q=<q>` header".into(),
        })?;
        Code::new(HammingSpace::new(n, q)?, words)
    }

    /// Inverse of `parse`, bit-exact on round trip.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("#n={} q={}\n", self.space.n(), self.space.q());
        for w in &self.words {
            if self.space.q() <= 10 {
                for &s in w {
                    out.push(char::from_digit(s, 10).unwrap());
                }
            } else {
                let strs: Vec<String> = w.iter().map(|s| s.to_string()).collect();
                out.push_str(&strs.join(","));
            }
            out.push('\n');
        }
        out
    }
}

pub fn hamming_distance(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Distance distribution, its transform, and the derived distance and
/// design parameters.
#[derive(Debug, Clone)]
pub struct DistanceDistribution {
    pub space: HammingSpace,
    /// Code size |C| (rational so formula-derived distributions fit too).
    pub size: Rat,
    /// B_0..B_n with B_i = ordered pairs at distance i over |C|.
    pub b: Vec<Rat>,
    /// The transform B'_0..B'_n.
    pub b_dual: Vec<Rat>,
}

impl DistanceDistribution {
    /// Build from an explicit distribution vector (B_0 must be 1).
    pub fn from_b(space: HammingSpace, size: Rat, b: Vec<Rat>) -> Result<Self> {
        if b.len() != space.n() + 1 {
            return Err(Error::WrongValueCount {
                expected: space.n() + 1,
                got: b.len(),
            });
        }
        if b[0] != Rat::one() {
            return Err(Error::InvalidInput("distribution must have B_0 = 1".into()));
        }
        let b_dual = macwilliams_transform(&space, &b)?;
        Ok(DistanceDistribution {
            space,
            size,
            b,
            b_dual,
        })
    }

    /// Minimum distance d (None for a single-word code).
    pub fn min_distance(&self) -> Option<usize> {
        self.b[1..]
            .iter()
            .position(|x| !x.is_zero())
            .map(|i| i + 1)
    }

    /// Dual distance d'; the full space (all transform entries zero)
    /// reports n + 1.
    pub fn dual_distance(&self) -> usize {
        self.b_dual[1..]
            .iter()
            .position(|x| !x.is_zero())
            .map(|i| i + 1)
            .unwrap_or(self.space.n() + 1)
    }

    /// Number of nonzero B_i, i > 0.
    pub fn s(&self) -> usize {
        self.b[1..].iter().filter(|x| !x.is_zero()).count()
    }

    /// External distance s': number of nonzero B'_i, i > 0.
    pub fn s_dual(&self) -> usize {
        self.b_dual[1..].iter().filter(|x| !x.is_zero()).count()
    }

    /// delta = 1 if B_n != 0.
    pub fn delta(&self) -> usize {
        usize::from(!self.b[self.space.n()].is_zero())
    }

    /// delta' = 1 if B'_n != 0.
    pub fn delta_dual(&self) -> usize {
        usize::from(!self.b_dual[self.space.n()].is_zero())
    }

    /// Design strength tau = d' - 1 (n for the full space).
    pub fn strength(&self) -> usize {
        self.dual_distance() - 1
    }

    /// Distances realized between distinct codewords.
    pub fn distances(&self) -> Vec<usize> {
        (1..=self.space.n())
            .filter(|&i| !self.b[i].is_zero())
            .collect()
    }
}

/// Exact distance distribution of an explicit code, with its transform.
pub fn distance_distribution(code: &Code) -> DistanceDistribution {
    let n = code.space.n();
    let m = code.len();
    let mut counts = vec![0u64; n + 1];
    for i in 0..m {
        for j in (i + 1)..m {
            counts[code.distance(i, j)] += 2; // ordered pairs
        }
    }
    counts[0] = m as u64;
    let size = rat_u(m as u64);
    let b: Vec<Rat> = counts.iter().map(|&c| rat_u(c) / &size).collect();
    let b_dual = macwilliams_transform(&code.space, &b).expect("B_0 = 1 by construction");
    DistanceDistribution {
        space: code.space,
        size,
        b,
        b_dual,
    }
}

/// The transform B'_i = (1 / sum_j B_j) sum_j B_j K_i(j), exact.
pub fn macwilliams_transform(space: &HammingSpace, b: &[Rat]) -> Result<Vec<Rat>> {
    if b.len() != space.n() + 1 {
        return Err(Error::WrongValueCount {
            expected: space.n() + 1,
            got: b.len(),
        });
    }
    if b[0] != Rat::one() {
        return Err(Error::InvalidInput("transform requires B_0 = 1".into()));
    }
    let total: Rat = b.iter().fold(Rat::zero(), |acc, x| acc + x);
    let table = kraw::value_table(space);
    Ok((0..=space.n())
        .map(|i| {
            let mut acc = Rat::zero();
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    acc += bj * &table[i][j];
                }
            }
            acc / &total
        })
        .collect())
}

/// Result of the exhaustive strength check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthReport {
    /// Largest tau for which every tau-column projection is balanced.
    pub tau: usize,
    /// The index |C| / q^tau at that strength (None when tau = 0).
    pub index: Option<u64>,
}

/// Direct combinatorial strength: the largest tau such that every choice
/// of tau columns contains every tau-tuple equally often.
pub fn strength_direct(code: &Code, guards: &Guards) -> Result<StrengthReport> {
    let n = code.space.n();
    let q = code.space.q();
    let m = code.len() as u128;
    let mut tau = 0usize;
    for t in 1..=n {
        let work = binom_u128(n, t)
            .saturating_mul(q.pow(t.min(63) as u32) as u128)
            .saturating_mul(m);
        if work > guards.strength_work {
            return Err(Error::ResourceGuard {
                cost: work,
                limit: guards.strength_work,
            });
        }
        if !is_design_of_strength(code, t) {
            break;
        }
        tau = t;
    }
    let index = if tau == 0 {
        None
    } else {
        let qt = (q as u128).pow(tau as u32);
        Some((m / qt) as u64)
    };
    Ok(StrengthReport { tau, index })
}

fn binom_u128(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn is_design_of_strength(code: &Code, t: usize) -> bool {
    let q = code.space.q() as usize;
    let m = code.len();
    let qt = q.pow(t as u32);
    if m % qt != 0 {
        return false;
    }
    let lambda = (m / qt) as u64;
    let n = code.space.n();
    let mut cols: Vec<usize> = (0..t).collect();
    loop {
        let mut counts = vec![0u64; qt];
        for w in &code.words {
            let mut id = 0usize;
            for &c in &cols {
                id = id * q + w[c] as usize;
            }
            counts[id] += 1;
        }
        if counts.iter().any(|&c| c != lambda) {
            return false;
        }
        // next combination
        let mut i = t;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if cols[i] != i + n - t {
                cols[i] += 1;
                for j in (i + 1)..t {
                    cols[j] = cols[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exhaustive covering radius: max over all words of the space of the
/// distance to the code.
pub fn covering_radius_exact(code: &Code, guards: &Guards) -> Result<usize> {
    let n = code.space.n();
    let q = code.space.q();
    let total = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if total > guards.covering_work {
        return Err(Error::ResourceGuard {
            cost: total,
            limit: guards.covering_work,
        });
    }
    let mut word = vec![0u32; n];
    let mut rho = 0usize;
    loop {
        let best = code
            .words
            .iter()
            .map(|w| hamming_distance(w, &word))
            .min()
            .unwrap();
        rho = rho.max(best);
        // odometer increment
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(rho);
            }
            word[pos] += 1;
            if (word[pos] as u64) < q {
                break;
            }
            word[pos] = 0;
            pos += 1;
        }
    }
}

/// Potential energy over ordered pairs, from the distance distribution:
/// exact when every occurring distance has a rational potential value.
pub fn energy_from_distribution(
    dist: &DistanceDistribution,
    h: &DistancePotential,
) -> Result<Value> {
    let mut exact = Rat::zero();
    let mut all_exact = true;
    let mut approx = 0.0f64;
    for i in 1..=dist.space.n() {
        if dist.b[i].is_zero() {
            continue;
        }
        let pairs = &dist.size * &dist.b[i];
        let d = rat_u(i as u64);
        match h.eval_rat(&d) {
            Some(v) => {
                exact += &pairs * v;
            }
            None => {
                let v = h.eval_f64(i as f64);
                if v.is_nan() {
                    return Err(Error::InvalidInput(format!(
                        "potential undefined at occurring distance {i}"
                    )));
                }
                all_exact = false;
                approx += pairs.to_f64().unwrap() * v;
            }
        }
    }
    if all_exact {
        Ok(Value::Exact(exact))
    } else {
        Ok(Value::Real(crate::exact::to_f64(&exact) + approx))
    }
}

/// Potential energy of an explicit code.
pub fn energy_hamming(code: &Code, h: &DistancePotential) -> Result<Value> {
    energy_from_distribution(&distance_distribution(code), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

    fn space(n: usize, q: u64) -> HammingSpace {
        HammingSpace::new(n, q).unwrap()
    }

    fn code(n: usize, q: u64, words: &[&[u32]]) -> Code {
        Code::new(space(n, q), words.iter().map(|w| w.to_vec()).collect()).unwrap()
    }

    fn repetition3() -> Code {
        code(3, 2, &[&[0, 0, 0], &[1, 1, 1]])
    }

    fn even_weight3() -> Code {
        code(3, 2, &[&[0, 0, 0], &[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])
    }

    fn full3() -> Code {
        let words: Vec<Vec<u32>> = (0..8u32)
            .map(|v| (0..3).map(|b| (v >> b) & 1).collect())
            .collect();
        Code::new(space(3, 2), words).unwrap()
    }

    #[test]
    fn validation_rejects_bad_codes() {
        assert!(Code::new(space(3, 2), vec![]).is_err());
        assert!(Code::new(space(3, 2), vec![vec![0, 1]]).is_err());
        assert!(Code::new(space(3, 2), vec![vec![0, 1, 2]]).is_err());
        assert!(Code::new(space(3, 2), vec![vec![0, 1, 1], vec![0, 1, 1]]).is_err());
    }

    /// Oracle: the transform by its raw definition (1/|C|) sum_j B_j K_i(j).
    fn macwilliams_oracle(space: &HammingSpace, b: &[Rat], size: &Rat) -> Vec<Rat> {
        let table = kraw::value_table(space);
        (0..=space.n())
            .map(|i| {
                let mut acc = Rat::zero();
                for (j, bj) in b.iter().enumerate() {
                    acc += bj * &table[i][j];
                }
                acc / size
            })
            .collect()
    }

    #[test]
    fn distance_distribution_examples() {
        // repetition pair: B = (1,0,0,1); dual equals the even-weight
        // code's distribution (1,0,3,0)
        let d = distance_distribution(&repetition3());
        assert_eq!(d.b, vec![rat(1), rat(0), rat(0), rat(1)]);
        assert_eq!(
            d.b_dual,
            macwilliams_oracle(&d.space, &d.b, &d.size)
        );
        assert_eq!(d.b_dual, vec![rat(1), rat(0), rat(3), rat(0)]);
        assert_eq!(d.dual_distance(), 2);
        assert_eq!(d.strength(), 1);

        // even-weight length 3
        let d = distance_distribution(&even_weight3());
        assert_eq!(d.b, vec![rat(1), rat(0), rat(3), rat(0)]);
        assert_eq!(d.b_dual, vec![rat(1), rat(0), rat(0), rat(1)]);
        assert_eq!(d.dual_distance(), 3);
        assert_eq!(d.strength(), 2);
        assert_eq!(d.min_distance(), Some(2));
        assert_eq!((d.s(), d.s_dual()), (1, 1));
        assert_eq!((d.delta(), d.delta_dual()), (0, 1));

        // full space: dual distance reported as n + 1, strength n
        let d = distance_distribution(&full3());
        assert_eq!(d.b, vec![rat(1), rat(3), rat(3), rat(1)]);
        assert_eq!(d.b_dual, vec![rat(1), rat(0), rat(0), rat(0)]);
        assert_eq!(d.dual_distance(), 4);
        assert_eq!(d.strength(), 3);
    }

    #[test]
    fn transform_of_single_word() {
        let c = code(4, 3, &[&[0, 0, 0, 0]]);
        let d = distance_distribution(&c);
        // B'_i = K_i(0) = (q-1)^i C(n,i)
        for i in 0..=4usize {
            assert_eq!(d.b_dual[i], d.space.measure_weight(i));
        }
    }

    #[test]
    fn transform_twice_swaps_dual_pair() {
        // transform of even-weight-3 distribution gives the repetition
        // distribution and back
        let s = space(3, 2);
        let b_even = vec![rat(1), rat(0), rat(3), rat(0)];
        let t1 = macwilliams_transform(&s, &b_even).unwrap();
        assert_eq!(t1, vec![rat(1), rat(0), rat(0), rat(1)]);
        let t2 = macwilliams_transform(&s, &t1).unwrap();
        assert_eq!(t2, b_even);
    }

    #[test]
    fn dual_nonnegativity_on_random_codes() {
        // every explicit code has a nonnegative transform
        let mut state = 0x243F6A8885A308D3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..40 {
            let n = 3 + (next() % 5) as usize;
            let q = 2 + (next() % 2) as u64;
            let m = 2 + (next() % 6) as usize;
            let mut words = HashSet::new();
            while words.len() < m {
                let w: Vec<u32> = (0..n).map(|_| (next() % q) as u32).collect();
                words.insert(w);
            }
            let c = Code::new(space(n, q), words.into_iter().collect()).unwrap();
            let d = distance_distribution(&c);
            for (i, v) in d.b_dual.iter().enumerate() {
                assert!(!v.is_negative(), "trial {trial}: B'_{i} = {v} < 0");
            }
        }
    }

    #[test]
    fn strength_examples() {
        let g = Guards::default();
        assert_eq!(
            strength_direct(&even_weight3(), &g).unwrap(),
            StrengthReport { tau: 2, index: Some(1) }
        );
        assert_eq!(strength_direct(&repetition3(), &g).unwrap().tau, 1);
        assert_eq!(
            strength_direct(&full3(), &g).unwrap(),
            StrengthReport { tau: 3, index: Some(1) }
        );
        // guard trips
        let tiny = Guards::with_max_work(10);
        assert!(matches!(
            strength_direct(&full3(), &tiny),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn covering_radius_examples() {
        let g = Guards::default();
        assert_eq!(covering_radius_exact(&repetition3(), &g).unwrap(), 1);
        assert_eq!(covering_radius_exact(&full3(), &g).unwrap(), 0);
        assert_eq!(covering_radius_exact(&even_weight3(), &g).unwrap(), 1);
    }

    #[test]
    fn energy_examples() {
        let inv = DistancePotential::inverse_distance();
        assert_eq!(
            energy_hamming(&repetition3(), &inv).unwrap(),
            Value::Exact(ratio(2, 3))
        );
        // 4 words pairwise at distance 2: 12 ordered pairs, each 1/2
        assert_eq!(
            energy_hamming(&even_weight3(), &inv).unwrap(),
            Value::Exact(rat(6))
        );
    }

    #[test]
    fn file_format_round_trip() {
        let text = "# a comment\n#n=3 q=2\n\n000\n011\n# another\n101\n110\n";
        let c = Code::parse(text).unwrap();
        assert_eq!(c, even_weight3());
        let out = c.to_file_string();
        let c2 = Code::parse(&out).unwrap();
        assert_eq!(c, c2);
        assert_eq!(out, c2.to_file_string());
        // big-alphabet format
        let c = code(2, 16, &[&[0, 15], &[11, 3]]);
        let round = Code::parse(&c.to_file_string()).unwrap();
        assert_eq!(c, round);
        // errors carry line numbers
        let err = Code::parse("#n=3 q=2\n0a0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn identity_code_vs_dual_side() {
        // f(0) + sum B_i f(i) = |C| (f_0 + sum f_i B'_i) for random f and codes
        let c = even_weight3();
        let d = distance_distribution(&c);
        let s = *c.space();
        for coeffs in [
            vec![rat(1), rat(2), rat(-1), ratio(3, 7)],
            vec![rat(0), ratio(-2, 5), rat(4), rat(1)],
        ] {
            let f = kraw::KrawPoly::new(s, coeffs).unwrap();
            let values = f.values_at_ints();
            let lhs: Rat = (0..=3).fold(Rat::zero(), |acc, i| acc + &d.b[i] * &values[i]);
            let rhs_inner: Rat = (0..=3).fold(Rat::zero(), |acc, i| {
                acc + f.coeff(i) * &d.b_dual[i]
            });
            assert_eq!(lhs, &d.size * rhs_inner);
        }
    }
}
