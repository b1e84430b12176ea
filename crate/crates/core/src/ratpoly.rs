//! Dense univariate polynomials over exact rationals, with Sturm-sequence
//! root counting and certified bisection.
//!
//! Root results are `RootEnclosure`s: either an exact rational root or an
//! open interval with non-root rational endpoints containing exactly one
//! root, refinable to any width.

use crate::exact::{rat, rat_u, Rat};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Polynomial stored low-to-high with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The monomial `t`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    /// `t - c` as a monic linear factor.
    pub fn linear_root(c: &Rat) -> Self {
        Self::from_coeffs(vec![-c.clone(), Rat::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::exact::to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> RatPoly {
        if s.is_zero() {
            return Self::zero();
        }
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn square(&self) -> RatPoly {
        self.mul(self)
    }

    pub fn derivative(&self) -> RatPoly {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * rat_u(i as u64));
        }
        Self::from_coeffs(out)
    }

    /// Substitute `t <- a*t + b`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> RatPoly {
        let mut acc = RatPoly::zero();
        let lin = RatPoly::from_coeffs(vec![b.clone(), a.clone()]);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&RatPoly::constant(c.clone()));
        }
        acc
    }

    /// Euclidean division; panics if `div` is zero. Returns (quotient, remainder).
    pub fn div_rem(&self, div: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lead = div.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (RatPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        while rem.len() > dd {
            let rd = rem.len() - 1;
            let c = rem[rd].clone();
            if c.is_zero() {
                rem.pop();
                continue;
            }
            let factor = &c / &lead;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            for i in 0..=dd {
                let t = &div.coeffs[i] * &factor;
                rem[shift + i] -= t;
            }
            rem.pop();
        }
        (RatPoly::from_coeffs(quot), RatPoly::from_coeffs(rem))
    }

    pub fn rem(&self, div: &RatPoly) -> RatPoly {
        self.div_rem(div).1
    }

    /// Make the polynomial monic (leading coefficient 1).
    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Square-free part: self / gcd(self, self').
    pub fn square_free(&self) -> RatPoly {
        if self.degree().unwrap_or(0) < 2 {
            return self.clone();
        }
        let g = poly_gcd(self, &self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Sturm chain (the caller passes a square-free polynomial).
    fn sturm_chain(&self) -> Vec<RatPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        chain
    }

    /// Number of distinct real roots in the open interval (a, b).
    /// Endpoints must not be roots.
    pub fn count_roots_open(&self, a: &Rat, b: &Rat) -> usize {
        let sf = self.square_free();
        let chain = sf.sturm_chain();
        assert!(
            !sf.eval(a).is_zero() && !sf.eval(b).is_zero(),
            "Sturm count requires non-root endpoints"
        );
        let va = sign_variations(&chain, a);
        let vb = sign_variations(&chain, b);
        va.saturating_sub(vb)
    }

    /// Isolate all distinct real roots in the closed interval [a, b].
    /// Returned enclosures are sorted; each contains exactly one root, and
    /// interval enclosures have non-root endpoints.
    ///
    /// Any probe point that happens to hit a root exactly is recorded as an
    /// exact root and deflated out, so the bisection below always runs on a
    /// polynomial with non-root probes.
    pub fn isolate_roots(&self, a: &Rat, b: &Rat) -> Vec<RootEnclosure> {
        assert!(a <= b);
        let mut sf = self.square_free();
        if sf.is_zero() {
            panic!("cannot isolate roots of the zero polynomial");
        }
        let mut exact: Vec<Rat> = Vec::new();
        let intervals: Vec<(Rat, Rat)> = 'outer: loop {
            if sf.degree().unwrap_or(0) == 0 {
                break Vec::new();
            }
            if sf.eval(a).is_zero() {
                exact.push(a.clone());
                sf = sf.div_rem(&RatPoly::linear_root(a)).0;
                continue;
            }
            if b > a && sf.eval(b).is_zero() {
                exact.push(b.clone());
                sf = sf.div_rem(&RatPoly::linear_root(b)).0;
                continue;
            }
            if a == b {
                break Vec::new();
            }
            let chain = sf.sturm_chain();
            let mut found = Vec::new();
            let mut stack = vec![(a.clone(), b.clone())];
            while let Some((l, h)) = stack.pop() {
                let count =
                    sign_variations(&chain, &l).saturating_sub(sign_variations(&chain, &h));
                match count {
                    0 => {}
                    1 => found.push((l, h)),
                    _ => {
                        let mid = (&l + &h) / rat(2);
                        if sf.eval(&mid).is_zero() {
                            exact.push(mid.clone());
                            sf = sf.div_rem(&RatPoly::linear_root(&mid)).0;
                            continue 'outer;
                        }
                        stack.push((l, mid.clone()));
                        stack.push((mid, h));
                    }
                }
            }
            break found;
        };
        // Shrink the interval enclosures (against the final deflated
        // polynomial) until every deflated exact root lies strictly
        // outside, so each enclosure also isolates exactly one root of
        // the original polynomial and has non-root endpoints.
        let mut out: Vec<RootEnclosure> = Vec::new();
        for (lo, hi) in intervals {
            let mut enc = RootEnclosure { lo, hi };
            loop {
                let clear = exact.iter().all(|e| e < &enc.lo || e > &enc.hi);
                if clear || enc.is_exact() {
                    break;
                }
                let w = enc.width() / rat(4);
                enc = sf.refine(&enc, &w);
            }
            out.push(enc);
        }
        out.extend(exact.into_iter().map(RootEnclosure::exact));
        out.sort_by(|x, y| x.lo.cmp(&y.lo));
        out
    }

    /// Bisect an enclosure down to the requested width using exact signs.
    pub fn refine(&self, enc: &RootEnclosure, width: &Rat) -> RootEnclosure {
        if enc.is_exact() {
            return enc.clone();
        }
        let sf = self.square_free();
        let mut lo = enc.lo.clone();
        let mut hi = enc.hi.clone();
        let slo = sign(&sf.eval(&lo));
        debug_assert!(slo != 0 && sign(&sf.eval(&hi)) != 0);
        while &hi - &lo > *width {
            let mid = (&lo + &hi) / rat(2);
            let sm = sign(&sf.eval(&mid));
            if sm == 0 {
                return RootEnclosure::exact(mid);
            }
            if sm == slo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        RootEnclosure { lo, hi }
    }

    /// Certified check that the polynomial is <= 0 everywhere on [a, b].
    /// Returns Ok(()) or a witness point where the value is positive.
    pub fn nonpositive_on(&self, a: &Rat, b: &Rat) -> std::result::Result<(), (Rat, Rat)> {
        for x in self.sign_sample_points(a, b) {
            let v = self.eval(&x);
            if v.is_positive() {
                return Err((x, v));
            }
        }
        Ok(())
    }

    /// Certified check that the polynomial is >= 0 everywhere on [a, b].
    pub fn nonnegative_on(&self, a: &Rat, b: &Rat) -> std::result::Result<(), (Rat, Rat)> {
        match self.neg().nonpositive_on(a, b) {
            Ok(()) => Ok(()),
            Err((x, v)) => Err((x, -v)),
        }
    }

    /// Sample points meeting every maximal root-free subinterval of [a, b],
    /// so a sign check on the samples certifies the sign on the interval.
    fn sign_sample_points(&self, a: &Rat, b: &Rat) -> Vec<Rat> {
        let mut pts = vec![a.clone(), b.clone()];
        if self.is_zero() || self.degree().unwrap_or(0) == 0 || a >= b {
            return pts;
        }
        let mut roots = self.isolate_roots(a, b);
        // Shrink until enclosures are pairwise disjoint, so every gap
        // between consecutive roots contains a sample point.
        loop {
            let mut overlapping = false;
            for i in 1..roots.len() {
                if roots[i - 1].hi >= roots[i].lo && !(roots[i - 1].is_exact() && roots[i].is_exact())
                {
                    overlapping = true;
                }
            }
            if !overlapping {
                break;
            }
            for r in roots.iter_mut() {
                let w = r.width() / rat(8);
                if !r.is_exact() {
                    *r = self.refine(r, &w);
                }
            }
            roots.sort_by(|x, y| x.lo.cmp(&y.lo));
        }
        let mut prev_hi = a.clone();
        for r in &roots {
            if !r.is_exact() {
                pts.push(r.lo.clone());
                pts.push(r.hi.clone());
            }
            if prev_hi < r.lo {
                pts.push((&prev_hi + &r.lo) / rat(2));
            }
            prev_hi = r.hi.clone();
        }
        if prev_hi < *b {
            pts.push((&prev_hi + b) / rat(2));
        }
        pts.retain(|x| x >= a && x <= b);
        pts
    }
}

/// A certified real-root bracket: exact when `lo == hi`, otherwise an open
/// interval containing exactly one root of the defining polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootEnclosure {
    pub fn exact(v: Rat) -> Self {
        RootEnclosure { lo: v.clone(), hi: v }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / rat(2)
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn to_f64(&self) -> f64 {
        crate::exact::to_f64(&self.mid())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        if self.is_exact() {
            x == &self.lo
        } else {
            x > &self.lo && x < &self.hi
        }
    }

    /// Certified comparison of the enclosed root against a rational point.
    /// `poly` must be the polynomial this enclosure isolates a root of.
    pub fn compare_to(&self, x: &Rat, poly: &RatPoly) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(x);
        }
        if self.contains(x) && poly.eval(x).is_zero() {
            return Ordering::Equal;
        }
        let mut enc = self.clone();
        loop {
            if enc.is_exact() {
                return enc.lo.cmp(x);
            }
            if &enc.hi <= x {
                return Ordering::Less;
            }
            if &enc.lo >= x {
                return Ordering::Greater;
            }
            let w = enc.width() / rat(4);
            enc = poly.refine(&enc, &w);
        }
    }
}

pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_variations(chain: &[RatPoly], x: &Rat) -> usize {
    let mut count = 0usize;
    let mut last = 0i8;
    for p in chain {
        let s = sign(&p.eval(x));
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Polynomial gcd (monic result).
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}
