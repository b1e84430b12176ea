//! Jacobi and Gegenbauer polynomials for the sphere in dimension n,
//! normalized to take the value 1 at t = 1.
//!
//! Only the parameter offsets a, b in {0, 1} are supported: the exponents
//! are (a + (n-3)/2, b + (n-3)/2), which keeps every coefficient rational,
//! so kernels, expansions and moments can be computed exactly and emitted
//! as floats at the boundary.

use crate::error::{Error, Result};
use crate::exact::{binom_rat, rat, rat_u, Rat};
use crate::ratpoly::{RatPoly, RootEnclosure};
use num_traits::{One, Zero};

/// A Jacobi family on S^{n-1} with offsets a, b in {0, 1};
/// (0, 0) is the Gegenbauer family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobiFamily {
    dim: usize,
    a: u8,
    b: u8,
}

impl JacobiFamily {
    pub fn new(dim: usize, a: u8, b: u8) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidInput("dimension must be >= 2".into()));
        }
        if a > 1 || b > 1 {
            return Err(Error::InvalidInput("offsets a, b must be 0 or 1".into()));
        }
        Ok(JacobiFamily { dim, a, b })
    }

    pub fn gegenbauer(dim: usize) -> Result<Self> {
        Self::new(dim, 0, 0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offsets(&self) -> (u8, u8) {
        (self.a, self.b)
    }

    /// Jacobi exponent alpha = a + (n-3)/2 as an exact rational.
    pub fn alpha(&self) -> Rat {
        rat(self.a as i64) + Rat::new((self.dim as i64 - 3).into(), 2.into())
    }

    pub fn beta(&self) -> Rat {
        rat(self.b as i64) + Rat::new((self.dim as i64 - 3).into(), 2.into())
    }

    /// Exact monomial form of P_i, normalized so P_i(1) = 1.
    pub fn poly(&self, i: usize) -> RatPoly {
        if self.a == 0 && self.b == 0 {
            return gegenbauer_polys(self.dim, i)[i].clone();
        }
        let raw = self.raw_polys(i);
        let p = &raw[i];
        let at_one = p.eval(&Rat::one());
        p.scale(&at_one.recip())
    }

    /// Unnormalized classical Jacobi polynomials up to degree `deg`.
    fn raw_polys(&self, deg: usize) -> Vec<RatPoly> {
        let alpha = self.alpha();
        let beta = self.beta();
        let mut polys = Vec::with_capacity(deg + 1);
        polys.push(RatPoly::one());
        if deg >= 1 {
            // ((alpha+beta+2) t + (alpha-beta)) / 2
            polys.push(RatPoly::from_coeffs(vec![
                (&alpha - &beta) / rat(2),
                (&alpha + &beta + rat(2)) / rat(2),
            ]));
        }
        for i in 2..=deg {
            let i_r = rat_u(i as u64);
            let s = &alpha + &beta;
            let c0 = rat(2) * &i_r * (&i_r + &s) * (rat(2) * &i_r + &s - rat(2));
            let c1 = rat(2) * &i_r + &s - Rat::one();
            let c2 = (rat(2) * &i_r + &s) * (rat(2) * &i_r + &s - rat(2));
            let c3 = &alpha * &alpha - &beta * &beta;
            let c4 = rat(2)
                * (&i_r + &alpha - Rat::one())
                * (&i_r + &beta - Rat::one())
                * (rat(2) * &i_r + &s);
            // c0 P_i = c1 (c2 t + c3) P_{i-1} - c4 P_{i-2}
            let lin = RatPoly::from_coeffs(vec![&c1 * &c3, &c1 * &c2]);
            let next = lin
                .mul(&polys[i - 1])
                .sub(&polys[i - 2].scale(&c4))
                .scale(&c0.recip());
            polys.push(next);
        }
        polys
    }

    /// P_i(t) in double precision via the recurrences.
    pub fn eval_f64(&self, i: usize, t: f64) -> f64 {
        if self.a == 0 && self.b == 0 {
            return gegenbauer_eval_f64(self.dim, i, t);
        }
        // classical recurrence rescaled to value 1 at t = 1
        let p = self.poly(i);
        p.eval_f64(t)
    }

    pub fn eval_rat(&self, i: usize, t: &Rat) -> Rat {
        self.poly(i).eval(t)
    }

    /// Greatest zero t_i of P_i, with the defining polynomial.
    /// By convention the (1,1) family returns exactly -1 for i = 0.
    pub fn greatest_zero(&self, i: usize) -> Result<JacobiRoot> {
        if i == 0 {
            if self.a == 1 && self.b == 1 {
                return Ok(JacobiRoot {
                    enclosure: RootEnclosure::exact(rat(-1)),
                    poly: RatPoly::linear_root(&rat(-1)),
                });
            }
            return Err(Error::InvalidInput(
                "degree-0 polynomial has no zero (only the (1,1) family has the t_0 = -1 convention)"
                    .into(),
            ));
        }
        let p = self.poly(i);
        let roots = p.isolate_roots(&rat(-1), &Rat::one());
        let last = roots.into_iter().last().ok_or_else(|| {
            Error::Internal(format!("no zero of Jacobi P_{i} found in [-1, 1]"))
        })?;
        let width = Rat::new(1.into(), num_bigint::BigInt::from(1u64 << 48));
        Ok(JacobiRoot {
            enclosure: p.refine(&last, &width),
            poly: p,
        })
    }

    /// Kernel coefficient r_i for this family under the normalization fixed
    /// by the quadrature identity: the reciprocal of the weighted mean of
    /// P_i^2 (1-t)^a (1+t)^b, times the measure-constant ratio.
    pub fn kernel_coeff(&self, i: usize) -> Rat {
        let p = self.poly(i);
        let weighted = p.square().mul(&self.weight_poly());
        let norm = measure_mean(self.dim, &weighted);
        self.constant_ratio() / norm
    }

    /// (1-t)^a (1+t)^b as a polynomial.
    fn weight_poly(&self) -> RatPoly {
        let mut w = RatPoly::one();
        if self.a == 1 {
            w = w.mul(&RatPoly::from_coeffs(vec![Rat::one(), rat(-1)]));
        }
        if self.b == 1 {
            w = w.mul(&RatPoly::from_coeffs(vec![Rat::one(), Rat::one()]));
        }
        w
    }

    /// c^{a,b} / gamma_n: 1 for (0,0) and (1,0), n/(n-1) for (1,1).
    fn constant_ratio(&self) -> Rat {
        if self.a == 1 && self.b == 1 {
            Rat::new((self.dim as i64).into(), (self.dim as i64 - 1).into())
        } else {
            Rat::one()
        }
    }

    /// Kernel polynomial T_j(t, v) = sum_{i<=j} r_i P_i(t) P_i(v), exact in t.
    pub fn kernel_poly(&self, j: usize, v: &Rat) -> RatPoly {
        let mut acc = RatPoly::zero();
        for i in 0..=j {
            let p = self.poly(i);
            let pv = p.eval(v);
            if pv.is_zero() {
                continue;
            }
            acc = acc.add(&p.scale(&(self.kernel_coeff(i) * pv)));
        }
        acc
    }

    /// Kernel value T_j(u, v).
    pub fn kernel_sum(&self, j: usize, u: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for i in 0..=j {
            let p = self.poly(i);
            acc += self.kernel_coeff(i) * p.eval(u) * p.eval(v);
        }
        acc
    }
}

/// An enclosed Jacobi zero with its defining polynomial.
#[derive(Debug, Clone)]
pub struct JacobiRoot {
    pub enclosure: RootEnclosure,
    poly: RatPoly,
}

impl JacobiRoot {
    pub fn compare_to(&self, x: &Rat) -> std::cmp::Ordering {
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

/// Gegenbauer polynomials P_0..P_deg for dimension n, exact, normalized
/// by P_i(1) = 1, via (i+n-2) P_{i+1} = (2i+n-2) t P_i - i P_{i-1}.
pub fn gegenbauer_polys(dim: usize, deg: usize) -> Vec<RatPoly> {
    let n = dim as i64;
    let mut polys = Vec::with_capacity(deg + 1);
    polys.push(RatPoly::one());
    if deg >= 1 {
        polys.push(RatPoly::x());
    }
    for i in 1..deg {
        let i = i as i64;
        let t_term = RatPoly::from_coeffs(vec![Rat::zero(), rat(2 * i + n - 2)]);
        let next = t_term
            .mul(&polys[i as usize])
            .sub(&polys[(i - 1) as usize].scale(&rat(i)))
            .scale(&rat(i + n - 2).recip());
        polys.push(next);
    }
    polys
}

/// P_i^{(n)}(t) in double precision via the same recurrence.
pub fn gegenbauer_eval_f64(dim: usize, i: usize, t: f64) -> f64 {
    let n = dim as f64;
    let mut prev = 1.0;
    if i == 0 {
        return prev;
    }
    let mut cur = t;
    for m in 1..i {
        let m = m as f64;
        let next = ((2.0 * m + n - 2.0) * t * cur - m * prev) / (m + n - 2.0);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn gegenbauer_eval_rat(dim: usize, i: usize, t: &Rat) -> Rat {
    let n = dim as i64;
    let mut prev = Rat::one();
    if i == 0 {
        return prev;
    }
    let mut cur = t.clone();
    for m in 1..i {
        let m = m as i64;
        let next = (rat(2 * m + n - 2) * t * &cur - rat(m) * &prev) / rat(m + n - 2);
        prev = cur;
        cur = next;
    }
    cur
}

/// Moment of t^m under the normalized projected surface measure
/// (proportional to (1-t^2)^{(n-3)/2} dt): mu_0 = 1, odd moments vanish,
/// mu_m = mu_{m-2} (m-1)/(m+n-2).
pub fn measure_moment(dim: usize, m: usize) -> Rat {
    if m % 2 == 1 {
        return Rat::zero();
    }
    let n = dim as i64;
    let mut mu = Rat::one();
    let mut j = 2i64;
    while j <= m as i64 {
        mu = mu * rat(j - 1) / rat(j + n - 2);
        j += 2;
    }
    mu
}

/// Mean of a polynomial under the same measure (its Gegenbauer 0-coefficient).
pub fn measure_mean(dim: usize, p: &RatPoly) -> Rat {
    let mut acc = Rat::zero();
    for (m, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc += c * measure_moment(dim, m);
        }
    }
    acc
}

/// Harmonic-space dimension coefficient r_i = (2i+n-2)/(i+n-2) * C(i+n-2, i).
pub fn harmonic_coeff(dim: usize, i: usize) -> Rat {
    let n = dim as i64;
    if i == 0 {
        return Rat::one();
    }
    Rat::new((2 * i as i64 + n - 2).into(), (i as i64 + n - 2).into())
        * binom_rat((i + dim - 2) as u64, i as u64)
}

/// Expand a monomial-form polynomial into the Gegenbauer basis of dim n,
/// exactly. Errors if the degree exceeds `max_degree`.
pub fn gegenbauer_expand(dim: usize, p: &RatPoly, max_degree: usize) -> Result<Vec<Rat>> {
    let deg = p.degree().unwrap_or(0);
    if deg > max_degree {
        return Err(Error::Unsupported(format!(
            "degree {deg} exceeds the expansion cap {max_degree}"
        )));
    }
    let basis = gegenbauer_polys(dim, deg);
    let mut rem = p.clone();
    let mut coeffs = vec![Rat::zero(); deg + 1];
    for i in (0..=deg).rev() {
        let lead = rem.coeff(i);
        if !lead.is_zero() {
            let c = lead / basis[i].leading();
            rem = rem.sub(&basis[i].scale(&c));
            coeffs[i] = c;
        }
    }
    if !rem.is_zero() {
        return Err(Error::Internal("basis conversion left a residual".into()));
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, to_f64};

    #[test]
    fn gegenbauer_first_polys() {
        let polys = gegenbauer_polys(4, 3);
        assert_eq!(polys[0], RatPoly::one());
        assert_eq!(polys[1], RatPoly::x());
        // (1+n-2) P_2 = n t^2 - 1 at n = 4: P_2 = (4t^2 - 1)/3, zero at 1/2
        assert_eq!(
            polys[2],
            RatPoly::from_coeffs(vec![ratio(-1, 3), rat(0), ratio(4, 3)])
        );
        for p in &polys {
            assert_eq!(p.eval(&Rat::one()), Rat::one());
        }
    }

    #[test]
    fn legendre_p2_at_zero() {
        // n = 3 gives the Legendre family; P_2(0) = -1/2
        let fam = JacobiFamily::gegenbauer(3).unwrap();
        assert_eq!(fam.eval_rat(2, &rat(0)), ratio(-1, 2));
        assert!((fam.eval_f64(2, 0.0) + 0.5).abs() < 1e-14);
    }

    #[test]
    fn normalization_at_one_for_all_families() {
        for n in [3usize, 4, 5, 8] {
            for (a, b) in [(0u8, 0u8), (1, 0), (0, 1), (1, 1)] {
                let fam = JacobiFamily::new(n, a, b).unwrap();
                for i in 0..=6 {
                    assert_eq!(fam.poly(i).eval(&Rat::one()), Rat::one(), "n={n} a={a} b={b} i={i}");
                }
            }
        }
    }

    #[test]
    fn jacobi_one_zero_closed_forms() {
        // t_1^{1,0} = -1/n and t_1^{1,1} = 0
        for n in [3usize, 4, 7] {
            let f10 = JacobiFamily::new(n, 1, 0).unwrap();
            let z = f10.greatest_zero(1).unwrap();
            assert_eq!(
                z.compare_to(&Rat::new((-1i64).into(), (n as i64).into())),
                std::cmp::Ordering::Equal
            );
            let f11 = JacobiFamily::new(n, 1, 1).unwrap();
            let z = f11.greatest_zero(1).unwrap();
            assert_eq!(z.compare_to(&rat(0)), std::cmp::Ordering::Equal);
            assert_eq!(
                f11.greatest_zero(0).unwrap().compare_to(&rat(-1)),
                std::cmp::Ordering::Equal
            );
        }
    }

    #[test]
    fn greatest_zero_examples() {
        // P_1^{(n)}(t) = t has zero 0
        let fam = JacobiFamily::gegenbauer(5).unwrap();
        assert_eq!(fam.greatest_zero(1).unwrap().compare_to(&rat(0)), std::cmp::Ordering::Equal);
        // n = 4: 4P_2 = 4t^2 - 1, greatest zero 1/2
        let fam = JacobiFamily::gegenbauer(4).unwrap();
        assert_eq!(
            fam.greatest_zero(2).unwrap().compare_to(&ratio(1, 2)),
            std::cmp::Ordering::Equal
        );
    }

    #[test]
    fn greatest_zeros_increase_in_degree() {
        for n in 3..=8usize {
            for (a, b) in [(0u8, 0u8), (1, 0), (1, 1)] {
                let fam = JacobiFamily::new(n, a, b).unwrap();
                let mut prev = rat(-2);
                for i in 1..=8 {
                    let z = fam.greatest_zero(i).unwrap();
                    let enc = z.refine(&Rat::new(1.into(), num_bigint::BigInt::from(1u64 << 40)));
                    assert!(enc.lo > prev, "n={n} a={a} b={b} i={i}");
                    prev = enc.hi.clone();
                }
            }
        }
    }

    #[test]
    fn moments_and_means() {
        // second moment is 1/n
        for n in [3usize, 4, 9] {
            assert_eq!(measure_moment(n, 2), Rat::new(1.into(), (n as i64).into()));
            assert_eq!(measure_moment(n, 3), rat(0));
        }
        assert_eq!(measure_moment(3, 4), ratio(1, 5)); // uniform on [-1,1]
    }

    #[test]
    fn harmonic_coeff_matches_reciprocal_norm() {
        for n in [3usize, 4, 6] {
            let fam = JacobiFamily::gegenbauer(n).unwrap();
            for i in 0..=6 {
                let norm = measure_mean(n, &fam.poly(i).square());
                assert_eq!(norm.recip(), harmonic_coeff(n, i), "n={n} i={i}");
                assert_eq!(fam.kernel_coeff(i), harmonic_coeff(n, i), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn gegenbauer_orthogonality_exact() {
        for n in [3usize, 5] {
            let polys = gegenbauer_polys(n, 6);
            for i in 0..=6 {
                for j in 0..i {
                    let prod = polys[i].mul(&polys[j]);
                    assert_eq!(measure_mean(n, &prod), rat(0), "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn expansion_examples() {
        // constant
        let c = gegenbauer_expand(5, &RatPoly::one(), 60).unwrap();
        assert_eq!(c, vec![rat(1)]);
        // t^2 in dim n: coefficient 0 is the second moment 1/n
        for n in [3usize, 4, 7] {
            let t2 = RatPoly::from_coeffs(vec![rat(0), rat(0), rat(1)]);
            let c = gegenbauer_expand(n, &t2, 60).unwrap();
            assert_eq!(c[0], Rat::new(1.into(), (n as i64).into()));
            assert_eq!(c[1], rat(0));
            // reconstruct
            let polys = gegenbauer_polys(n, 2);
            let back = polys[0]
                .scale(&c[0])
                .add(&polys[1].scale(&c[1]))
                .add(&polys[2].scale(&c[2]));
            assert_eq!(back, t2);
        }
        // degree cap
        let t2 = RatPoly::from_coeffs(vec![rat(0), rat(0), rat(1)]);
        assert!(gegenbauer_expand(3, &t2, 1).is_err());
    }

    /// Numerical inner-product oracle: mean of p against the projected
    /// surface measure via the substitution t = cos(theta).
    fn mean_by_quadrature(dim: usize, p: &RatPoly) -> f64 {
        let steps = 200_000usize;
        let h = std::f64::consts::PI / steps as f64;
        let mut num = 0.0;
        let mut den = 0.0;
        for k in 0..=steps {
            let theta = k as f64 * h;
            let w = theta.sin().powi(dim as i32 - 2);
            let simpson = if k == 0 || k == steps {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            num += simpson * w * p.eval_f64(theta.cos());
            den += simpson * w;
        }
        num / den
    }

    #[test]
    fn expansion_matches_quadrature_oracle() {
        // f(t) = (t+1)(t-s) with n = 3, s = 0
        let f = RatPoly::from_coeffs(vec![rat(0), rat(1), rat(1)]);
        let c = gegenbauer_expand(3, &f, 60).unwrap();
        // oracle: f_i = E[f P_i] / E[P_i^2]
        let polys = gegenbauer_polys(3, 2);
        for i in 0..=2 {
            let num = mean_by_quadrature(3, &f.mul(&polys[i]));
            let den = to_f64(&measure_mean(3, &polys[i].square()));
            assert!(
                (num / den - to_f64(&c[i])).abs() < 1e-10,
                "i={i}: {} vs {}",
                num / den,
                to_f64(&c[i])
            );
        }
    }

    #[test]
    fn f64_recurrence_matches_exact_polys() {
        let fam = JacobiFamily::gegenbauer(6).unwrap();
        for i in 0..=10 {
            let p = fam.poly(i);
            for step in -10..=10 {
                let t = step as f64 / 10.0;
                assert!((fam.eval_f64(i, t) - p.eval_f64(t)).abs() < 1e-10);
            }
        }
    }
}
