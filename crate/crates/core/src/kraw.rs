//! Krawtchouk polynomials over a fixed Hamming space: exact evaluation,
//! basis expansion, duality, kernel sums, product (Krein) coefficients,
//! smallest roots, and the degree-interval location they induce.

use crate::error::{Error, Result};
use crate::exact::{binom_rat, int_pow, rat, rat_pow, rat_u, Rat};
use crate::ratpoly::{RatPoly, RootEnclosure};
use crate::space::HammingSpace;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// K_i^{(n,q)}(z) by the three-term recurrence; `i = n+1` uses the
/// top-degree extension (q^{n+1}/(n+1)!) * prod_{u=0}^{n} (u - z).
pub fn eval(space: &HammingSpace, i: usize, z: &Rat) -> Result<Rat> {
    let n = space.n();
    if i > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "Krawtchouk degree",
            index: i,
            max: n + 1,
        });
    }
    if i == n + 1 {
        return Ok(top_degree_eval(space, z));
    }
    Ok(eval_unchecked(space, i, z))
}

fn eval_unchecked(space: &HammingSpace, i: usize, z: &Rat) -> Rat {
    let n = space.n() as i64;
    let q = space.q() as i64;
    let mut prev = Rat::one();
    if i == 0 {
        return prev;
    }
    let mut cur = rat(n * (q - 1)) - rat(q) * z;
    for m in 1..i {
        let m = m as i64;
        let a = rat(m + (q - 1) * (n - m)) - rat(q) * z;
        let b = rat((q - 1) * (n - m + 1));
        let next = (a * &cur - b * &prev) / rat(m + 1);
        prev = cur;
        cur = next;
    }
    cur
}

fn top_degree_eval(space: &HammingSpace, z: &Rat) -> Rat {
    let n = space.n();
    let mut prod = Rat::one();
    for u in 0..=n {
        prod *= rat_u(u as u64) - z;
    }
    let mut fact = Rat::one();
    for m in 1..=(n as u64 + 1) {
        fact *= rat_u(m);
    }
    rat_pow(&space.q_rat(), n as u32 + 1) / fact * prod
}

/// Monomial form of K_i^{(n,q)} (exact coefficients), `i <= n+1`.
pub fn monomial_poly(space: &HammingSpace, i: usize) -> Result<RatPoly> {
    let n = space.n();
    if i > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "Krawtchouk degree",
            index: i,
            max: n + 1,
        });
    }
    if i == n + 1 {
        let mut p = RatPoly::one();
        for u in 0..=n {
            // (u - z)
            p = p.mul(&RatPoly::from_coeffs(vec![rat_u(u as u64), rat(-1)]));
        }
        let mut fact = Rat::one();
        for m in 1..=(n as u64 + 1) {
            fact *= rat_u(m);
        }
        return Ok(p.scale(&(rat_pow(&space.q_rat(), n as u32 + 1) / fact)));
    }
    let nq = space.n() as i64;
    let q = space.q() as i64;
    let mut prev = RatPoly::one();
    if i == 0 {
        return Ok(prev);
    }
    let mut cur = RatPoly::from_coeffs(vec![rat(nq * (q - 1)), rat(-q)]);
    for m in 1..i {
        let m = m as i64;
        let a = RatPoly::from_coeffs(vec![rat(m + (q - 1) * (nq - m)), rat(-q)]);
        let b = rat((q - 1) * (nq - m + 1));
        let next = a.mul(&cur).sub(&prev.scale(&b)).scale(&rat(m + 1).recip());
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Table of values K_i(u) for all 0 <= i, u <= n (row = degree).
pub fn value_table(space: &HammingSpace) -> Vec<Vec<Rat>> {
    let n = space.n();
    let q = space.q() as i64;
    let nn = n as i64;
    let mut table: Vec<Vec<Rat>> = Vec::with_capacity(n + 1);
    table.push(vec![Rat::one(); n + 1]);
    if n >= 1 {
        table.push((0..=nn).map(|u| rat(nn * (q - 1) - q * u)).collect());
        for m in 1..n {
            let m_i = m as i64;
            let mut row = Vec::with_capacity(n + 1);
            for u in 0..=n {
                let a = rat(m_i + (q - 1) * (nn - m_i) - q * u as i64);
                let b = rat((q - 1) * (nn - m_i + 1));
                row.push((a * &table[m][u] - b * &table[m - 1][u]) / rat(m_i + 1));
            }
            table.push(row);
        }
    }
    table
}

/// A polynomial stored by its coefficients in the Krawtchouk basis
/// K_0 .. K_n of a fixed space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrawPoly {
    space: HammingSpace,
    coeffs: Vec<Rat>,
}

impl KrawPoly {
    /// Requires exactly n+1 coefficients.
    pub fn new(space: HammingSpace, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != space.n() + 1 {
            return Err(Error::WrongValueCount {
                expected: space.n() + 1,
                got: coeffs.len(),
            });
        }
        Ok(KrawPoly { space, coeffs })
    }

    pub fn zero(space: HammingSpace) -> Self {
        let n = space.n();
        KrawPoly {
            space,
            coeffs: vec![Rat::zero(); n + 1],
        }
    }

    /// The basis element K_j.
    pub fn basis(space: HammingSpace, j: usize) -> Result<Self> {
        let mut p = Self::zero(space);
        if j > space.n() {
            return Err(Error::IndexOutOfRange {
                what: "basis index",
                index: j,
                max: space.n(),
            });
        }
        p.coeffs[j] = Rat::one();
        Ok(p)
    }

    pub fn space(&self) -> &HammingSpace {
        &self.space
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest index with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Evaluate sum_i f_i K_i(z) with a single recurrence sweep.
    pub fn eval(&self, z: &Rat) -> Rat {
        let n = self.space.n() as i64;
        let q = self.space.q() as i64;
        let mut acc = self.coeffs[0].clone();
        if self.space.n() == 0 {
            return acc;
        }
        let mut prev = Rat::one();
        let mut cur = rat(n * (q - 1)) - rat(q) * z;
        acc += &self.coeffs[1] * &cur;
        for m in 1..self.space.n() {
            let m_i = m as i64;
            let a = rat(m_i + (q - 1) * (n - m_i)) - rat(q) * z;
            let b = rat((q - 1) * (n - m_i + 1));
            let next = (a * &cur - b * &prev) / rat(m_i + 1);
            prev = cur;
            cur = next;
            acc += &self.coeffs[m + 1] * &cur;
        }
        acc
    }

    /// Values f(0), ..., f(n).
    pub fn values_at_ints(&self) -> Vec<Rat> {
        let table = value_table(&self.space);
        (0..=self.space.n())
            .map(|u| {
                let mut acc = Rat::zero();
                for (i, c) in self.coeffs.iter().enumerate() {
                    if !c.is_zero() {
                        acc += c * &table[i][u];
                    }
                }
                acc
            })
            .collect()
    }

    /// Monomial form (degree <= n).
    pub fn to_ratpoly(&self) -> RatPoly {
        let mut acc = RatPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&monomial_poly(&self.space, i).unwrap().scale(c));
            }
        }
        acc
    }

    pub fn add(&self, other: &KrawPoly) -> KrawPoly {
        assert_eq!(self.space, other.space);
        KrawPoly {
            space: self.space,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> KrawPoly {
        KrawPoly {
            space: self.space,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }
}

/// Expansion of point values f(0..n) into the Krawtchouk basis
/// (f_i = q^{-n} sum_u f(u) K_u(i)).
pub fn expand(space: &HammingSpace, values: &[Rat]) -> Result<KrawPoly> {
    let n = space.n();
    if values.len() != n + 1 {
        return Err(Error::WrongValueCount {
            expected: n + 1,
            got: values.len(),
        });
    }
    let table = value_table(space);
    let qn_inv = int_pow(space.q(), -(n as i64));
    let coeffs = (0..=n)
        .map(|i| {
            let mut acc = Rat::zero();
            for (u, v) in values.iter().enumerate() {
                if !v.is_zero() {
                    acc += v * &table[u][i];
                }
            }
            acc * &qn_inv
        })
        .collect();
    KrawPoly::new(*space, coeffs)
}

/// Same expansion through the orthogonality route
/// f_i = [q^n (q-1)^i C(n,i)]^{-1} sum_u f(u) K_i(u) (q-1)^u C(n,u);
/// agrees with `expand` identically.
pub fn expand_weighted(space: &HammingSpace, values: &[Rat]) -> Result<KrawPoly> {
    let n = space.n();
    if values.len() != n + 1 {
        return Err(Error::WrongValueCount {
            expected: n + 1,
            got: values.len(),
        });
    }
    let table = value_table(space);
    let coeffs = (0..=n)
        .map(|i| {
            let mut acc = Rat::zero();
            for (u, v) in values.iter().enumerate() {
                if !v.is_zero() {
                    acc += v * &table[i][u] * space.measure_weight(u);
                }
            }
            let norm = space.size() * space.measure_weight(i);
            acc / norm
        })
        .collect();
    KrawPoly::new(*space, coeffs)
}

/// Mean of a (monomial-form) polynomial against the binomial counting
/// measure: q^{-n} sum_u p(u) (q-1)^u C(n,u). For deg p <= n this equals
/// the 0th Krawtchouk coefficient of p.
pub fn measure_mean(space: &HammingSpace, p: &RatPoly) -> Rat {
    let mut acc = Rat::zero();
    for u in 0..=space.n() {
        let v = p.eval(&rat_u(u as u64));
        if !v.is_zero() {
            acc += v * space.measure_weight(u);
        }
    }
    acc / space.size()
}

/// A Krawtchouk-basis polynomial carrying a symbolic scale q^{half_exp/2},
/// so duals stay exact even when q^{n/2} is irrational.
/// Canonical form keeps `half_exp` in {0, -1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledKrawPoly {
    poly: KrawPoly,
    half_exp: i64,
}

impl ScaledKrawPoly {
    pub fn from_poly(poly: KrawPoly) -> Self {
        ScaledKrawPoly { poly, half_exp: 0 }
    }

    pub fn base(&self) -> &KrawPoly {
        &self.poly
    }

    pub fn half_exp(&self) -> i64 {
        self.half_exp
    }

    fn canonicalize(mut self) -> Self {
        let q = self.poly.space.q();
        // fold the even part of the exponent into the coefficients
        let r = self.half_exp.rem_euclid(2); // 0 or 1
        let target = if r == 0 { 0 } else { -1 };
        let whole = (self.half_exp - target) / 2;
        if whole != 0 {
            let s = int_pow(q, whole);
            self.poly = self.poly.scale(&s);
        }
        self.half_exp = target;
        self
    }

    /// Dual of the carried polynomial (an exact involution on this type).
    pub fn dual(&self) -> ScaledKrawPoly {
        let g = dual_base(&self.poly);
        ScaledKrawPoly {
            poly: g,
            half_exp: self.half_exp - self.poly.space.n() as i64,
        }
        .canonicalize()
    }
}

fn dual_base(f: &KrawPoly) -> KrawPoly {
    // g(z) = sum_j f(j) K_j(z): coefficients are the point values of f.
    let values = f.values_at_ints();
    KrawPoly::new(*f.space(), values).unwrap()
}

/// Dual polynomial, represented as q^{-n/2} * (exact Krawtchouk polynomial).
pub fn dual(f: &KrawPoly) -> ScaledKrawPoly {
    ScaledKrawPoly {
        poly: dual_base(f),
        half_exp: -(f.space().n() as i64),
    }
    .canonicalize()
}

/// Kernel sum T_i(z, w) = sum_{j<=i} K_j(z) K_j(w) / ((q-1)^j C(n,j)).
pub fn kernel_sum(space: &HammingSpace, i: usize, z: &Rat, w: &Rat) -> Result<Rat> {
    if i > space.n() {
        return Err(Error::IndexOutOfRange {
            what: "kernel order",
            index: i,
            max: space.n(),
        });
    }
    let mut acc = Rat::zero();
    for j in 0..=i {
        let kz = eval_unchecked(space, j, z);
        let kw = eval_unchecked(space, j, w);
        let norm = rat_pow(&rat_u(space.q() - 1), j as u32) * binom_rat(space.n() as u64, j as u64);
        acc += kz * kw / norm;
    }
    Ok(acc)
}

/// T_i(t, w) as a monomial-form polynomial in t for fixed rational w.
pub fn kernel_poly(space: &HammingSpace, i: usize, w: &Rat) -> Result<RatPoly> {
    if i > space.n() {
        return Err(Error::IndexOutOfRange {
            what: "kernel order",
            index: i,
            max: space.n(),
        });
    }
    let mut acc = RatPoly::zero();
    for j in 0..=i {
        let kw = eval_unchecked(space, j, w);
        if kw.is_zero() {
            continue;
        }
        let norm = rat_pow(&rat_u(space.q() - 1), j as u32) * binom_rat(space.n() as u64, j as u64);
        acc = acc.add(&monomial_poly(space, j)?.scale(&(kw / norm)));
    }
    Ok(acc)
}

/// Expansion coefficients p_{i,j}^u of the product K_i K_j modulo the
/// top-degree extension, obtained by expanding the product's point values.
pub fn product_coeffs(space: &HammingSpace, i: usize, j: usize) -> Result<Vec<Rat>> {
    let n = space.n();
    if i > n || j > n {
        return Err(Error::IndexOutOfRange {
            what: "product index",
            index: i.max(j),
            max: n,
        });
    }
    let table = value_table(space);
    let values: Vec<Rat> = (0..=n).map(|u| &table[i][u] * &table[j][u]).collect();
    Ok(expand(space, &values)?.coeffs().to_vec())
}

/// Smallest root of K_i^{(n,q)} with its defining polynomial, so callers
/// can make certified comparisons against rational points.
#[derive(Debug, Clone)]
pub struct KrawRoot {
    pub enclosure: RootEnclosure,
    poly: RatPoly,
}

impl KrawRoot {
    pub fn compare_to(&self, x: &Rat) -> Ordering {
        self.enclosure.compare_to(x, &self.poly)
    }

    pub fn refine(&self, width: &Rat) -> RootEnclosure {
        self.poly.refine(&self.enclosure, width)
    }

    pub fn to_f64(&self) -> f64 {
        let tol = Rat::new(1.into(), num_bigint::BigInt::from(10u64.pow(13)));
        self.refine(&tol).to_f64()
    }
}

static XI_CACHE: OnceLock<Mutex<HashMap<(usize, u64, usize), KrawRoot>>> = OnceLock::new();

/// Smallest root of K_i over length-n alphabet-q parameters.
/// By convention i = 0 yields n + 1 exactly; i = n + 1 (top-degree
/// extension) yields 0 exactly.
pub fn smallest_root_xi(n: usize, q: u64, i: usize) -> Result<KrawRoot> {
    if i == 0 {
        return Ok(KrawRoot {
            enclosure: RootEnclosure::exact(rat_u(n as u64 + 1)),
            poly: RatPoly::linear_root(&rat_u(n as u64 + 1)),
        });
    }
    if i == n + 1 {
        return Ok(KrawRoot {
            enclosure: RootEnclosure::exact(Rat::zero()),
            poly: RatPoly::x(),
        });
    }
    if i > n + 1 {
        return Err(Error::IndexOutOfRange {
            what: "Krawtchouk degree",
            index: i,
            max: n + 1,
        });
    }
    let cache = XI_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(r) = guard.get(&(n, q, i)) {
            return Ok(r.clone());
        }
    }
    let space = HammingSpace::new(n, q)?;
    let poly = monomial_poly(&space, i)?;
    let roots = poly.isolate_roots(&Rat::zero(), &rat_u(n as u64));
    let first = roots.into_iter().next().ok_or_else(|| {
        Error::Internal(format!("no root of K_{i} over (n={n}, q={q}) found in [0, n]"))
    })?;
    let width = Rat::new(1.into(), num_bigint::BigInt::from(1u64 << 48));
    let enclosure = poly.refine(&first, &width);
    let root = KrawRoot { enclosure, poly };
    cache
        .lock()
        .unwrap()
        .insert((n, q, i), root.clone());
    Ok(root)
}

/// The (k, eps) pair locating a distance value among the root intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeInterval {
    pub k: usize,
    pub eps: u8,
}

impl DegreeInterval {
    pub fn tau(&self) -> usize {
        2 * self.k - 1 + self.eps as usize
    }
}

/// Locate the unique (k, eps) with
/// xi_k^{n-1-eps} + 1 < d <= xi_{k-1+eps}^{n-2+eps} + 1.
/// The domain is (1, n]; d in [0, 1] admits no interval.
pub fn degree_interval(space: &HammingSpace, d: &Rat) -> Result<DegreeInterval> {
    let n = space.n();
    let q = space.q();
    if d < &Rat::one() || d > &rat_u(n as u64) {
        return Err(Error::InvalidInput(format!(
            "distance {d} outside [1, {n}]"
        )));
    }
    let shifted = d - Rat::one(); // compare roots against d - 1
    for k in 1..=n {
        for eps in [0u8, 1u8] {
            let lower_n = n.checked_sub(1 + eps as usize);
            let upper_n = n.checked_sub(2 - eps as usize);
            let (lower_n, upper_n) = match (lower_n, upper_n) {
                (Some(a), Some(b)) => (a, b),
                _ => continue,
            };
            let lower_i = k;
            let upper_i = k - 1 + eps as usize;
            if lower_i > lower_n + 1 || upper_i > upper_n + 1 {
                continue;
            }
            let lower = smallest_root_xi(lower_n, q, lower_i)?;
            if lower.compare_to(&shifted) != Ordering::Less {
                continue;
            }
            let upper = smallest_root_xi(upper_n, q, upper_i)?;
            if upper.compare_to(&shifted) == Ordering::Less {
                continue;
            }
            return Ok(DegreeInterval { k, eps });
        }
    }
    Err(Error::InvalidInput(format!(
        "no degree interval contains d = {d} (domain is (1, n])"
    )))
}
