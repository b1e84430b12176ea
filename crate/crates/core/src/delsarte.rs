//! The three distribution-space linear programs (codes, designs, energy)
//! and exact certificate verification, built on the rational simplex.

use crate::error::{Error, Result};
use crate::exact::{rat_u, Rat};
use crate::kraw::{self, KrawPoly};
use crate::lp::{Direction as LpDirection, LinearProgram, LpStatus, Relation};
use crate::potential::DistancePotential;
use crate::report::{BoundReport, Direction, Method, Value};
use crate::space::HammingSpace;
use num_traits::{One, Signed, Zero};

/// Maximize 1 + sum_{i >= d} B_i over distributions with nonnegative
/// transform; the dual basis yields a certificate polynomial with
/// f(0)/f_0 equal to the optimum. `degree_cap` restricts the certificate
/// support to indices <= cap (by dropping the transform constraints
/// beyond it), which can only weaken the bound.
pub fn code_lp(
    space: &HammingSpace,
    d: usize,
    degree_cap: Option<usize>,
) -> Result<(BoundReport, KrawPoly)> {
    let n = space.n();
    if d < 1 || d > n {
        return Err(Error::InvalidInput(format!("d = {d} outside [1, {n}]")));
    }
    let cap = degree_cap.unwrap_or(n).min(n);
    if cap < 1 {
        return Err(Error::InvalidInput("degree cap must be >= 1".into()));
    }
    let table = kraw::value_table(space);
    let vars = n - d + 1; // B_d .. B_n
    let mut lp = LinearProgram::new(LpDirection::Maximize, vec![Rat::one(); vars]);
    for j in 1..=cap {
        // sum_i B_i K_j(i) >= -K_j(0)
        let coeffs: Vec<Rat> = (d..=n).map(|i| table[j][i].clone()).collect();
        lp.add_row(coeffs, Relation::Ge, -table[j][0].clone())?;
    }
    let res = crate::lp::simplex_solve(&lp)?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "code LP unexpectedly {:?}",
            res.status
        )));
    }
    let value = Rat::one() + res.value;
    // certificate: f_0 = 1, f_j = -y_j (Ge-row duals are <= 0 for a max)
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[0] = Rat::one();
    for (j, y) in res.dual.iter().enumerate() {
        coeffs[j + 1] = -y.clone();
    }
    let cert = KrawPoly::new(*space, coeffs)?;
    let check = verify_certificate(&cert, &CertificateMode::Codes { d })?;
    match check.bound {
        Some(Value::Exact(ref b)) if *b == value => {}
        _ => {
            return Err(Error::Internal(
                "code LP certificate does not reproduce the optimum".into(),
            ))
        }
    }
    let report = BoundReport::new(Method::Lp, Direction::Upper, Value::Exact(value))
        .with_certificate(cert.clone());
    Ok((report, cert))
}

/// Minimum size of a design of strength tau, as the best polynomial bound:
/// maximize f(0) with f_0 = 1, f_i <= 0 for i > tau, f(i) >= 0 for i >= 1.
pub fn design_lp(space: &HammingSpace, tau: usize) -> Result<(BoundReport, KrawPoly)> {
    let n = space.n();
    if tau < 1 || tau > n {
        return Err(Error::InvalidInput(format!("tau = {tau} outside [1, {n}]")));
    }
    let table = kraw::value_table(space);
    // variables: u_j - v_j for 1 <= j <= tau (free), -w_j for j > tau
    let free = tau;
    let neg = n - tau;
    let nvars = 2 * free + neg;
    let var_coeff = |j: usize, col: usize| -> Rat {
        // contribution of variable `col` to f_j... inverse map below
        let _ = j;
        let _ = col;
        unreachable!()
    };
    let _ = var_coeff;
    // f_j coefficient row builder: returns the coefficient vector mapping
    // the LP variables to sum_j f_j K_j(i)
    let row_for = |i: usize| -> Vec<Rat> {
        let mut row = Vec::with_capacity(nvars);
        for j in 1..=tau {
            row.push(table[j][i].clone()); // u_j
            row.push(-table[j][i].clone()); // v_j
        }
        for j in (tau + 1)..=n {
            row.push(-table[j][i].clone()); // w_j with f_j = -w_j
        }
        row
    };
    // objective: f(0) = 1 + sum f_j K_j(0)
    let obj = row_for(0);
    let mut lp = LinearProgram::new(LpDirection::Maximize, obj);
    for i in 1..=n {
        // f(i) = 1 + sum f_j K_j(i) >= 0
        lp.add_row(row_for(i), Relation::Ge, -Rat::one())?;
    }
    let res = crate::lp::simplex_solve(&lp)?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "design LP unexpectedly {:?}",
            res.status
        )));
    }
    let value = Rat::one() + res.value;
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[0] = Rat::one();
    let mut col = 0;
    for j in 1..=tau {
        coeffs[j] = res.primal[col].clone() - res.primal[col + 1].clone();
        col += 2;
    }
    for j in (tau + 1)..=n {
        coeffs[j] = -res.primal[col].clone();
        col += 1;
    }
    let cert = KrawPoly::new(*space, coeffs)?;
    let check = verify_certificate(&cert, &CertificateMode::Designs { tau })?;
    match check.bound {
        Some(Value::Exact(ref b)) if *b == value => {}
        _ => {
            return Err(Error::Internal(
                "design LP certificate does not reproduce the optimum".into(),
            ))
        }
    }
    let report = BoundReport::new(Method::Lp, Direction::Lower, Value::Exact(value))
        .with_certificate(cert.clone());
    Ok((report, cert))
}

/// Best energy lower bound M(f_0 M - f(0)) over polynomials with
/// nonnegative coefficients and f(i) <= h(i): exact when h is rational
/// at the integers (irrational values are rounded down, keeping the
/// bound valid).
pub fn energy_lp(
    space: &HammingSpace,
    m: u64,
    h: &DistancePotential,
    degree_cap: Option<usize>,
) -> Result<(BoundReport, KrawPoly)> {
    let n = space.n();
    let m_rat = rat_u(m);
    if m < 2 || m_rat > space.size() {
        return Err(Error::InvalidInput(format!("M = {m} outside [2, q^n]")));
    }
    let cap = degree_cap.unwrap_or(n).min(n);
    let h_values: Vec<Rat> = (1..=n)
        .map(|i| {
            h.eval_rat(&rat_u(i as u64)).unwrap_or_else(|| {
                crate::exact::round_down(h.eval_f64(i as f64), 12)
            })
        })
        .collect();
    let table = kraw::value_table(space);
    // variables f_0 .. f_cap >= 0
    // objective: M^2 f_0 - M f(0) = M^2 f_0 - M sum_j f_j K_j(0)
    let mut obj: Vec<Rat> = (0..=cap).map(|j| -&m_rat * &table[j][0]).collect();
    obj[0] += &m_rat * &m_rat;
    let mut lp = LinearProgram::new(LpDirection::Maximize, obj);
    for i in 1..=n {
        let coeffs: Vec<Rat> = (0..=cap).map(|j| table[j][i].clone()).collect();
        lp.add_row(coeffs, Relation::Le, h_values[i - 1].clone())?;
    }
    let res = crate::lp::simplex_solve(&lp)?;
    if res.status != LpStatus::Optimal {
        return Err(Error::Internal(format!(
            "energy LP unexpectedly {:?}",
            res.status
        )));
    }
    let mut coeffs = vec![Rat::zero(); n + 1];
    for (j, x) in res.primal.iter().enumerate() {
        coeffs[j] = x.clone();
    }
    let cert = KrawPoly::new(*space, coeffs)?;
    let check = verify_certificate(
        &cert,
        &CertificateMode::Energy {
            m,
            h_values: h_values.clone(),
        },
    )?;
    match check.bound {
        Some(Value::Exact(ref b)) if *b == res.value => {}
        _ => {
            return Err(Error::Internal(
                "energy LP certificate does not reproduce the optimum".into(),
            ))
        }
    }
    let report = BoundReport::new(Method::EnergyLp, Direction::Lower, Value::Exact(res.value))
        .with_certificate(cert.clone());
    Ok((report, cert))
}

/// The polynomial-side code LP over the continuous sign class: certificates
/// of degree <= cap with nonnegative coefficients that are nonpositive on
/// the whole real interval [d, n] (not only at the integers). Solved by
/// cutting planes: the sign condition is enforced on a growing rational
/// grid, each round adding a certified violation witness, until the
/// optimizer is certifiably nonpositive on [d, n] (exactly, or up to a
/// 2^-80 defect that is then absorbed by a constant shift so the returned
/// certificate is exactly valid).
///
/// This is the class for which the capped-degree optimality statement
/// holds; the integer-condition LP can be strictly smaller at capped
/// degree.
pub fn code_lp_interval_signs(
    space: &HammingSpace,
    d: usize,
    degree_cap: Option<usize>,
) -> Result<(BoundReport, KrawPoly)> {
    let n = space.n();
    if d < 1 || d > n {
        return Err(Error::InvalidInput(format!("d = {d} outside [1, {n}]")));
    }
    let cap = degree_cap.unwrap_or(n).min(n);
    let table = kraw::value_table(space);
    let d_rat = rat_u(d as u64);
    let n_rat = rat_u(n as u64);
    // grid starts at the integers d..n
    let mut grid: Vec<Rat> = (d..=n).map(|i| rat_u(i as u64)).collect();
    let defect_tol = Rat::new(1.into(), num_bigint::BigInt::from(1u128) << 80);
    for _round in 0..400 {
        // minimize f(0) = 1 + sum_j f_j K_j(0) over f_j >= 0 with
        // f(x) = 1 + sum_j f_j K_j(x) <= 0 on the grid
        let obj: Vec<Rat> = (1..=cap).map(|j| table[j][0].clone()).collect();
        let mut lp = LinearProgram::new(LpDirection::Minimize, obj);
        for x in &grid {
            let coeffs: Vec<Rat> = (1..=cap)
                .map(|j| {
                    if crate::exact::is_integer(x) {
                        let xi: usize = num_traits::ToPrimitive::to_usize(x.numer()).unwrap();
                        table[j][xi].clone()
                    } else {
                        kraw::eval(space, j, x).unwrap()
                    }
                })
                .collect();
            lp.add_row(coeffs, Relation::Le, -Rat::one())?;
        }
        let res = crate::lp::simplex_solve(&lp)?;
        if res.status != LpStatus::Optimal {
            return Err(Error::Internal(format!(
                "interval-sign LP unexpectedly {:?}",
                res.status
            )));
        }
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[0] = Rat::one();
        for (j, x) in res.primal.iter().enumerate() {
            coeffs[j + 1] = x.clone();
        }
        let cert = KrawPoly::new(*space, coeffs)?;
        let poly = cert.to_ratpoly();
        if poly.nonpositive_on(&d_rat, &n_rat).is_ok() {
            let value = Rat::one() + res.value;
            let report = BoundReport::new(Method::Lp, Direction::Upper, Value::Exact(value))
                .with_certificate(cert.clone())
                .note("sign condition enforced on the whole interval [d, n]");
            return Ok((report, cert));
        }
        let (sup, witness) = sup_bound_on(&poly, &d_rat, &n_rat);
        if sup <= defect_tol {
            // absorb the defect: f - sup is certifiably nonpositive on
            // [d, n] and keeps nonnegative coefficients beyond index 0
            let mut fixed = cert.coeffs().to_vec();
            fixed[0] -= &sup;
            if !fixed[0].is_positive() {
                return Err(Error::Internal(
                    "defect absorption exhausted the constant coefficient".into(),
                ));
            }
            let cert = KrawPoly::new(*space, fixed)?;
            let values = cert.values_at_ints();
            let value = &values[0] / cert.coeff(0);
            let report = BoundReport::new(Method::Lp, Direction::Upper, Value::Exact(value))
                .with_certificate(cert.clone())
                .note("sign defect below 2^-80 absorbed by a constant shift");
            return Ok((report, cert));
        }
        grid.push(witness);
    }
    Err(Error::Internal(
        "interval-sign LP failed to converge in 400 rounds".into(),
    ))
}

/// A sound upper bound for max p on [a, b], with the best sampled point
/// (used as the next cutting plane). The bound covers endpoint values and
/// every critical point through refined brackets plus a derivative bound.
fn sup_bound_on(p: &crate::ratpoly::RatPoly, a: &Rat, b: &Rat) -> (Rat, Rat) {
    let mut sup = p.eval(a);
    let mut best_arg = a.clone();
    let mut best_val = sup.clone();
    let vb = p.eval(b);
    if vb > best_val {
        best_val = vb.clone();
        best_arg = b.clone();
    }
    if vb > sup {
        sup = vb;
    }
    let dp = p.derivative();
    if dp.degree().unwrap_or(0) >= 1 {
        // coarse bound on |p'| over [a, b]
        let m = a.abs().max(b.abs());
        let mut deriv_bound = Rat::zero();
        let mut pw = Rat::one();
        for c in dp.coeffs() {
            deriv_bound += c.abs() * &pw;
            pw *= &m;
        }
        let width = Rat::new(1.into(), num_bigint::BigInt::from(1u128) << 110);
        for enc in dp.isolate_roots(a, b) {
            let enc = dp.refine(&enc, &width);
            let mut local = Vec::new();
            if enc.is_exact() {
                local.push(enc.lo.clone());
            } else {
                local.push(enc.lo.clone().max(a.clone()));
                local.push(enc.hi.clone().min(b.clone()));
            }
            let mut local_max = Rat::zero();
            let mut seen = false;
            for x in local {
                let v = p.eval(&x);
                if v > best_val {
                    best_val = v.clone();
                    best_arg = x.clone();
                }
                if !seen || v > local_max {
                    local_max = v;
                    seen = true;
                }
            }
            let ub = if enc.is_exact() {
                local_max
            } else {
                local_max + enc.width() * &deriv_bound
            };
            if ub > sup {
                sup = ub;
            }
        }
    }
    (sup, best_arg)
}

/// Which condition set to verify a certificate against.
pub enum CertificateMode {
    /// Coefficients >= 0 with f_0 > 0; values <= 0 on d..n with f(0) > 0.
    Codes { d: usize },
    /// Coefficients <= 0 beyond tau with f_0 > 0; values >= 0 with f(0) > 0.
    Designs { tau: usize },
    /// Coefficients >= 0 with f_0 > 0; f(0) > 0 and f(i) <= h(i).
    Energy { m: u64, h_values: Vec<Rat> },
}

pub struct CertificateReport {
    pub passes: bool,
    /// The implied bound when the certificate passes.
    pub bound: Option<Value>,
    pub first_violation: Option<String>,
}

/// Exact check of every inequality in the selected mode; on pass, returns
/// the implied bound (f(0)/f_0, or M(f_0 M - f(0)) for energy).
pub fn verify_certificate(f: &KrawPoly, mode: &CertificateMode) -> Result<CertificateReport> {
    let n = f.space().n();
    let values = f.values_at_ints();
    let fail = |msg: String| {
        Ok(CertificateReport {
            passes: false,
            bound: None,
            first_violation: Some(msg),
        })
    };
    match mode {
        CertificateMode::Codes { d } => {
            if *d < 1 || *d > n {
                return Err(Error::InvalidInput(format!("d = {d} outside [1, {n}]")));
            }
            if !f.coeff(0).is_positive() {
                return fail("coefficient condition fails at index 0".into());
            }
            for i in 1..=n {
                if f.coeff(i).is_negative() {
                    return fail(format!("coefficient condition fails at index {i}"));
                }
            }
            if !values[0].is_positive() {
                return fail("value condition fails at 0".into());
            }
            for i in *d..=n {
                if values[i].is_positive() {
                    return fail(format!("value condition fails at {i}"));
                }
            }
            Ok(CertificateReport {
                passes: true,
                bound: Some(Value::Exact(&values[0] / f.coeff(0))),
                first_violation: None,
            })
        }
        CertificateMode::Designs { tau } => {
            if *tau < 1 || *tau > n {
                return Err(Error::InvalidInput(format!("tau = {tau} outside [1, {n}]")));
            }
            if !f.coeff(0).is_positive() {
                return fail("coefficient condition fails at index 0".into());
            }
            for i in (tau + 1)..=n {
                if f.coeff(i).is_positive() {
                    return fail(format!("coefficient condition fails at index {i}"));
                }
            }
            if !values[0].is_positive() {
                return fail("value condition fails at 0".into());
            }
            for i in 1..=n {
                if values[i].is_negative() {
                    return fail(format!("value condition fails at {i}"));
                }
            }
            Ok(CertificateReport {
                passes: true,
                bound: Some(Value::Exact(&values[0] / f.coeff(0))),
                first_violation: None,
            })
        }
        CertificateMode::Energy { m, h_values } => {
            if h_values.len() != n {
                return Err(Error::WrongValueCount {
                    expected: n,
                    got: h_values.len(),
                });
            }
            if !f.coeff(0).is_positive() {
                return fail("coefficient condition fails at index 0".into());
            }
            for i in 1..=n {
                if f.coeff(i).is_negative() {
                    return fail(format!("coefficient condition fails at index {i}"));
                }
            }
            if !values[0].is_positive() {
                return fail("value condition fails at 0".into());
            }
            for i in 1..=n {
                if values[i] > h_values[i - 1] {
                    return fail(format!("value exceeds the potential at {i}"));
                }
            }
            let m_rat = rat_u(*m);
            let bound = &m_rat * (f.coeff(0) * &m_rat - &values[0]);
            Ok(CertificateReport {
                passes: true,
                bound: Some(Value::Exact(bound)),
                first_violation: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::code::{distance_distribution, energy_from_distribution};
    use crate::exact::{rat, ratio};
    use crate::fixtures;

    fn space(n: usize, q: u64) -> HammingSpace {
        HammingSpace::new(n, q).unwrap()
    }

    #[test]
    fn code_lp_perfect_values() {
        let (rep, _) = code_lp(&space(7, 2), 3, None).unwrap();
        assert_eq!(rep.value, Value::Exact(rat(16)));
        for n in 2..=12usize {
            let (rep, _) = code_lp(&space(n, 2), n, None).unwrap();
            assert_eq!(rep.value, Value::Exact(rat(2)), "n={n}");
        }
    }

    #[test]
    fn code_lp_golay_value() {
        let (rep, cert) = code_lp(&space(23, 2), 7, None).unwrap();
        assert_eq!(rep.value, Value::Exact(rat(4096)));
        // complementary slackness against the Golay distribution
        let dist = distance_distribution(&fixtures::golay_23());
        let values = cert.values_at_ints();
        for i in 1..=23 {
            assert!((&dist.b[i] * &values[i]).is_zero(), "B_i f(i) at {i}");
            assert!((&dist.b_dual[i] * cert.coeff(i)).is_zero(), "B'_i f_i at {i}");
        }
    }

    #[test]
    fn code_lp_dominated_by_fixed_certificates() {
        for q in [2u64, 3] {
            for n in 4..=9usize {
                for d in 2..=n {
                    let s = space(n, q);
                    let (lp, _) = code_lp(&s, d, None).unwrap();
                    let lp = lp.value.as_exact().unwrap().clone();
                    let (_, singleton) = bounds::singleton_pair(&s, Some(d), None).unwrap();
                    let (_, rao) = bounds::rao_hamming_pair(&s, Some(d), None).unwrap();
                    let lev = bounds::levenshtein_bound(&s, &rat(d as i64)).unwrap();
                    assert!(&lp <= singleton.unwrap().value.as_exact().unwrap());
                    assert!(&lp <= rao.unwrap().value.as_exact().unwrap());
                    assert!(lp <= lev.value, "n={n} q={q} d={d}");
                }
            }
        }
    }

    #[test]
    fn capped_interval_lp_meets_levenshtein() {
        // over the continuous sign class, the LP capped at the bound's own
        // degree can never do better, and meets the bound up to the
        // absorbed defect; the integer-condition LP can be strictly
        // smaller (the classes differ)
        for (n, d) in [(7usize, 3usize), (8, 3), (6, 4), (9, 5)] {
            let s = space(n, 2);
            let lev = bounds::levenshtein_bound(&s, &rat(d as i64)).unwrap();
            let cap = lev.interval.tau();
            let (rep, cert) = code_lp_interval_signs(&s, d, Some(cap)).unwrap();
            let v = rep.value.as_exact().unwrap().clone();
            let gap = (crate::exact::to_f64(&v) - crate::exact::to_f64(&lev.value)).abs();
            assert!(gap <= 1e-9, "n={n} d={d}: interval LP {v} vs bound {}", lev.value);
            // the returned certificate is exactly valid on [d, n]
            let poly = cert.to_ratpoly();
            assert!(poly
                .nonpositive_on(&rat(d as i64), &rat(n as i64))
                .is_ok());
        }
        // the integer-condition LP dips below the bound at capped degree
        let s = space(7, 2);
        let (rep, _) = code_lp(&s, 3, Some(3)).unwrap();
        assert_eq!(rep.value, Value::Exact(ratio(360, 17)));
        assert!(rep.value.as_exact().unwrap() < &rat(22));
    }

    #[test]
    fn design_lp_values() {
        let (rep, _) = design_lp(&space(4, 2), 3).unwrap();
        assert_eq!(rep.value, Value::Exact(rat(8)));
        // tau = 1 gives q
        for q in [2u64, 3, 4] {
            let (rep, _) = design_lp(&space(5, q), 1).unwrap();
            assert_eq!(rep.value, Value::Exact(rat_u(q)), "q={q}");
        }
    }

    #[test]
    fn design_lp_dominates_rao_lower() {
        for q in [2u64, 3] {
            for n in 3..=8usize {
                for tau in 1..n {
                    let s = space(n, q);
                    let (rep, _) = design_lp(&s, tau).unwrap();
                    let lower = bounds::rao_index(&s, tau + 1).unwrap();
                    assert!(
                        rep.value.as_exact().unwrap() >= &lower,
                        "n={n} q={q} tau={tau}"
                    );
                }
            }
        }
    }

    #[test]
    fn energy_lp_examples() {
        let h = DistancePotential::inverse_distance();
        // the antipodal pair attains 2/3 at (3, 2, M=2)
        let (rep, _) = energy_lp(&space(3, 2), 2, &h, None).unwrap();
        assert_eq!(rep.value, Value::Exact(ratio(2, 3)));
        // full space attains for n <= 3
        for n in 2..=3usize {
            let s = space(n, 2);
            let m = 1u64 << n;
            let (rep, _) = energy_lp(&s, m, &h, None).unwrap();
            let full = fixtures::full_space(n, 2);
            let e = energy_from_distribution(&distance_distribution(&full), &h).unwrap();
            assert_eq!(rep.value, e, "n={n}");
        }
    }

    #[test]
    fn energy_lp_dominates_universal_bound() {
        let h = DistancePotential::inverse_distance();
        for n in [4usize, 6] {
            let s = space(n, 2);
            for m in [3u64, 4, 8, 12] {
                if rat_u(m) > s.size() {
                    continue;
                }
                let (lp, _) = energy_lp(&s, m, &h, None).unwrap();
                let ulb = bounds::ulb_energy(&s, m, &h).unwrap();
                let lpv = lp.value.to_f64();
                let uv = ulb.report.value.to_f64();
                assert!(
                    lpv >= uv - 1e-9,
                    "n={n} M={m}: LP {lpv} below universal bound {uv}"
                );
            }
        }
    }

    #[test]
    fn verify_certificate_paths() {
        let s = space(7, 2);
        // the extremal polynomial passes codes mode with the right bound
        let f = bounds::levenshtein_polynomial(&s, &rat(3)).unwrap();
        let rep = verify_certificate(&f, &CertificateMode::Codes { d: 3 }).unwrap();
        assert!(rep.passes);
        assert_eq!(
            rep.bound,
            Some(Value::Exact(
                bounds::levenshtein_bound(&s, &rat(3)).unwrap().value
            ))
        );
        // and the LP at degree cap can only improve on it
        let (lp, _) = code_lp(&s, 3, None).unwrap();
        assert!(lp.value.as_exact().unwrap() <= rep.bound.unwrap().as_exact().unwrap());
        // -K_1 fails the coefficient condition at index 1
        let mut coeffs = vec![Rat::zero(); 8];
        coeffs[0] = Rat::one();
        coeffs[1] = -Rat::one();
        let bad = KrawPoly::new(s, coeffs).unwrap();
        let rep = verify_certificate(&bad, &CertificateMode::Codes { d: 3 }).unwrap();
        assert!(!rep.passes);
        assert_eq!(
            rep.first_violation.unwrap(),
            "coefficient condition fails at index 1"
        );
        // dual of a valid code certificate passes designs mode
        let f = bounds::levenshtein_polynomial(&s, &rat(3)).unwrap();
        let dual = kraw::dual(&f);
        let rep =
            verify_certificate(dual.base(), &CertificateMode::Designs { tau: 2 }).unwrap();
        assert!(rep.passes);
    }

    #[test]
    fn code_lp_complementary_slackness_hamming() {
        // Hamming code distribution vs the optimal dual certificate
        let (_, cert) = code_lp(&space(7, 2), 3, None).unwrap();
        let dist = distance_distribution(&fixtures::hamming_7_4());
        let values = cert.values_at_ints();
        for i in 1..=7 {
            assert!((&dist.b[i] * &values[i]).is_zero(), "B_i f(i) at {i}");
            assert!(
                (&dist.b_dual[i] * cert.coeff(i)).is_zero(),
                "B'_i f_i at {i}"
            );
        }
    }
}
