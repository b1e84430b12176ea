//! Closed-form universal bounds in Hamming space: Singleton, Rao/Hamming,
//! the piecewise Levenshtein bound with its quadrature data and extremal
//! polynomial, test functions, the universal lower bound on energy, and
//! the code/design duality bridge.
//!
//! Quadrature data carries the exact monic node polynomial alongside the
//! isolated nodes, so aggregate sums over the nodes reduce to polynomial
//! remainders and stay exact even when individual nodes are irrational.

use crate::error::{Error, Result};
use crate::exact::{rat, rat_pow, rat_u, Rat};
use crate::kraw::{self, DegreeInterval, KrawPoly};
use crate::potential::DistancePotential;
use crate::ratpoly::{RatPoly, RootEnclosure};
use crate::report::{BoundReport, Direction, Method, Value};
use crate::space::HammingSpace;
use num_traits::{One, Signed, Zero};

/// Sphere volume V_k(n, q) = sum_{i<=k} C(n,i)(q-1)^i; saturates at q^n
/// for k >= n.
pub fn sphere_volume(space: &HammingSpace, k: usize) -> Rat {
    let mut acc = Rat::zero();
    for i in 0..=k.min(space.n()) {
        acc += space.measure_weight(i);
    }
    acc
}

/// H^{n,q}(d) = q^eps V_k(n - eps, q) where d = 2k + 1 + eps.
pub fn rao_index(space: &HammingSpace, d: usize) -> Result<Rat> {
    if d < 1 {
        return Err(Error::InvalidInput("H is defined for d >= 1".into()));
    }
    let k = (d - 1) / 2;
    let eps = (d - 1) % 2;
    if eps as usize >= space.n() {
        return Err(Error::InvalidInput(format!(
            "H^{{n,q}}({d}) needs n > {eps}"
        )));
    }
    let inner = space.shrink(eps)?;
    Ok(rat_pow(&space.q_rat(), eps as u32) * sphere_volume(&inner, k))
}

/// Singleton bounds: q^{d'-1} <= |C| <= q^{n-d+1}. Either side may be
/// absent. The MDS note flags when simultaneous attainment is possible.
pub fn singleton_pair(
    space: &HammingSpace,
    d: Option<usize>,
    d_dual: Option<usize>,
) -> Result<(Option<BoundReport>, Option<BoundReport>)> {
    let n = space.n();
    for (label, v) in [("d", d), ("d'", d_dual)] {
        if let Some(v) = v {
            if v < 1 || v > n {
                return Err(Error::InvalidInput(format!("{label} = {v} outside [1, {n}]")));
            }
        }
    }
    let lower = d_dual.map(|dd| {
        let value = rat_pow(&space.q_rat(), (dd - 1) as u32);
        BoundReport::new(Method::Singleton, Direction::Lower, Value::Exact(value))
    });
    let upper = d.map(|d| {
        let value = rat_pow(&space.q_rat(), (n - d + 1) as u32);
        let mut rep = BoundReport::new(Method::Singleton, Direction::Upper, Value::Exact(value));
        if let Some(dd) = d_dual {
            if d + dd == n + 2 {
                rep = rep.note("equality possible only simultaneously (MDS: d + d' = n + 2)");
            }
        }
        rep
    });
    Ok((lower, upper))
}

/// Rao / sphere-packing bounds: H(d') <= |C| <= q^n / H(d).
pub fn rao_hamming_pair(
    space: &HammingSpace,
    d: Option<usize>,
    d_dual: Option<usize>,
) -> Result<(Option<BoundReport>, Option<BoundReport>)> {
    let lower = match d_dual {
        Some(dd) => Some(BoundReport::new(
            Method::RaoHamming,
            Direction::Lower,
            Value::Exact(rao_index(space, dd)?),
        )),
        None => None,
    };
    let upper = match d {
        Some(d) => Some(BoundReport::new(
            Method::RaoHamming,
            Direction::Upper,
            Value::Exact(space.size() / rao_index(space, d)?),
        )),
        None => None,
    };
    Ok((lower, upper))
}

/// The k-th component L_k^{n,q}(z) =
/// V_{k-1}(n,q) - (q-1)^k C(n,k) K_{k-1}^{(n-1,q)}(z-1) / K_k^{(n,q)}(z).
pub fn levenshtein_component(space: &HammingSpace, k: usize, z: &Rat) -> Result<Rat> {
    if k < 1 || k > space.n() {
        return Err(Error::IndexOutOfRange {
            what: "component index",
            index: k,
            max: space.n(),
        });
    }
    let denom = kraw::eval(space, k, z)?;
    if denom.is_zero() {
        return Err(Error::Internal(format!(
            "K_{k} vanishes at z = {z}; the component is undefined there"
        )));
    }
    let inner = space.shrink(1)?;
    let num = kraw::eval(&inner, k - 1, &(z - Rat::one()))?;
    let factor = rat_pow(&rat_u(space.q() - 1), k as u32)
        * crate::exact::binom_rat(space.n() as u64, k as u64);
    Ok(sphere_volume(space, k - 1) - factor * num / denom)
}

/// The tau-indexed bound function L_tau^{n,q}(z) = q^eps L_k^{n-eps,q}(z),
/// tau = 2k - 1 + eps, defined for any z where the component is.
pub fn levenshtein_tau(space: &HammingSpace, tau: usize, z: &Rat) -> Result<Rat> {
    if tau < 1 {
        return Err(Error::InvalidInput("tau must be >= 1".into()));
    }
    let k = (tau + 1) / 2;
    let eps = ((tau + 1) % 2) as u8;
    let inner = space.shrink(eps as usize)?;
    Ok(rat_pow(&space.q_rat(), eps as u32) * levenshtein_component(&inner, k, z)?)
}

/// The piecewise Levenshtein upper bound L^{n,q}(d) with its interval.
#[derive(Debug, Clone)]
pub struct LevenshteinBound {
    pub value: Rat,
    pub interval: DegreeInterval,
}

pub fn levenshtein_bound(space: &HammingSpace, d: &Rat) -> Result<LevenshteinBound> {
    let interval = kraw::degree_interval(space, d)?;
    let value = levenshtein_tau(space, interval.tau(), d)?;
    Ok(LevenshteinBound { value, interval })
}

pub fn levenshtein_report(space: &HammingSpace, d: &Rat) -> Result<BoundReport> {
    let lb = levenshtein_bound(space, d)?;
    Ok(
        BoundReport::new(Method::Levenshtein, Direction::Upper, Value::Exact(lb.value))
            .note(format!("interval k={}, eps={}", lb.interval.k, lb.interval.eps)),
    )
}

/// A positive quadrature node: exact rational or certified bracket.
#[derive(Debug, Clone)]
pub enum QuadNode {
    Exact(Rat),
    Bracket(RootEnclosure),
}

impl QuadNode {
    /// A rational representative (the midpoint for brackets, refined at
    /// construction time to width 2^-100).
    pub fn value(&self) -> Rat {
        match self {
            QuadNode::Exact(v) => v.clone(),
            QuadNode::Bracket(e) => e.mid(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, QuadNode::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        crate::exact::to_f64(&self.value())
    }
}

/// Gauss-type quadrature data behind the Levenshtein-type bounds:
/// f_0 = f(0)/bound + sum_i rho_i f(alpha_i) for deg f <= 2k - 1 + eps.
#[derive(Debug, Clone)]
pub struct QuadratureData {
    pub space: HammingSpace,
    pub d: Rat,
    pub k: usize,
    pub eps: u8,
    /// The denominator of the f(0) term (the bound value L, or M for the
    /// energy-window variant).
    pub bound: Rat,
    /// Positive nodes alpha_1 < ... < alpha_{k+eps} (alpha_0 = 0 implicit).
    pub nodes: Vec<QuadNode>,
    /// Weights matching `nodes` (rational representatives).
    pub weights: Vec<Rat>,
    /// Monic node polynomial prod_i (t - alpha_i), built from the exact
    /// kernel factors (not from the isolated approximations).
    pub node_poly: RatPoly,
    /// True when the node polynomial is exact (always, except when the
    /// energy-window distance d(M) is itself irrational).
    pub structure_exact: bool,
    /// True when every individual node is an exact rational.
    pub exact: bool,
    /// Duplicate node collapsed (only at window corners).
    pub degenerate: bool,
    pub notes: Vec<String>,
}

impl QuadratureData {
    /// Exact aggregate sum_i rho_i g(alpha_i) for a polynomial g, via
    /// reduction modulo the full node polynomial t * node_poly(t).
    pub fn node_sum(&self, g: &RatPoly) -> Rat {
        let w = RatPoly::x().mul(&self.node_poly);
        let r = g.rem(&w);
        kraw::measure_mean(&self.space, &r) - r.eval(&Rat::zero()) / &self.bound
    }

    /// Residual of the quadrature identity on f (exact; zero iff the
    /// identity holds for this f).
    pub fn identity_residual(&self, f: &RatPoly) -> Rat {
        kraw::measure_mean(&self.space, f) - f.eval(&Rat::zero()) / &self.bound - self.node_sum(f)
    }

    /// sum_i rho_i h(alpha_i): exact for inverse-power potentials (via an
    /// interpolating polynomial), exact for tables when all nodes are
    /// exact integers, floating otherwise.
    pub fn potential_sum(&self, h: &DistancePotential) -> Result<Value> {
        if let Some(s) = h.inverse_power() {
            // g with g(alpha_i) = alpha_i^{-s}: repeatedly divide out t,
            // re-anchoring at 0 with the node polynomial.
            let n0 = self.node_poly.eval(&Rat::zero());
            if n0.is_zero() {
                return Err(Error::Internal("node polynomial vanishes at 0".into()));
            }
            let anchor = self.node_poly.scale(&n0.recip());
            let mut g = RatPoly::one();
            for _ in 0..s {
                let shifted = g.sub(&anchor.scale(&g.eval(&Rat::zero())));
                let (quot, rem) = shifted.div_rem(&RatPoly::x());
                debug_assert!(rem.is_zero());
                g = quot;
            }
            let total = self.node_sum(&g);
            return Ok(if self.structure_exact {
                Value::Exact(total)
            } else {
                Value::Real(crate::exact::to_f64(&total))
            });
        }
        let mut exact = Rat::zero();
        let mut all_exact = self.exact;
        let mut approx = 0.0f64;
        for (node, w) in self.nodes.iter().zip(&self.weights) {
            let x = node.value();
            match (node.is_exact() && self.structure_exact, h.eval_rat(&x)) {
                (true, Some(v)) => exact += w * v,
                _ => {
                    let v = h.eval_f64(crate::exact::to_f64(&x));
                    if v.is_nan() {
                        return Err(Error::InvalidInput(format!(
                            "potential undefined at node {}",
                            node.to_f64()
                        )));
                    }
                    all_exact = false;
                    approx += crate::exact::to_f64(w) * v;
                }
            }
        }
        if all_exact {
            Ok(Value::Exact(exact))
        } else {
            Ok(Value::Real(crate::exact::to_f64(&exact) + approx))
        }
    }
}

fn bracket_width() -> Rat {
    Rat::new(1.into(), num_bigint::BigInt::from(1u128) << 100)
}

/// Exact square root of a rational, when it is a perfect square.
fn rat_sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let sn = x.numer().sqrt();
    let sd = x.denom().sqrt();
    if &(&sn * &sn) == x.numer() && &(&sd * &sd) == x.denom() {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Recognize a rational root inside an enclosure: closed forms for
/// degrees 1 and 2, integer probes otherwise.
fn exact_root_in(p: &RatPoly, enc: &RootEnclosure) -> Option<Rat> {
    let sf = p.square_free();
    match sf.degree() {
        Some(1) => {
            let root = -sf.coeff(0) / sf.coeff(1);
            (enc.contains(&root)).then_some(root)
        }
        Some(2) => {
            let (c0, c1, c2) = (sf.coeff(0), sf.coeff(1), sf.coeff(2));
            let disc = &c1 * &c1 - rat(4) * &c0 * &c2;
            let s = rat_sqrt_exact(&disc)?;
            for root in [
                (-&c1 + &s) / (rat(2) * &c2),
                (-&c1 - &s) / (rat(2) * &c2),
            ] {
                if enc.contains(&root) {
                    return Some(root);
                }
            }
            None
        }
        _ => {
            let mut m = enc.lo.floor();
            while m <= enc.hi {
                if enc.contains(&m) && sf.eval(&m).is_zero() {
                    return Some(m);
                }
                m += Rat::one();
            }
            None
        }
    }
}

/// Isolate the roots of `p` on [lo, hi], recognizing exact rational roots
/// where cheap, and refine the remaining brackets to the working width.
fn isolated_nodes(p: &RatPoly, lo: &Rat, hi: &Rat) -> Vec<QuadNode> {
    let width = bracket_width();
    p.isolate_roots(lo, hi)
        .into_iter()
        .map(|enc| {
            if enc.is_exact() {
                return QuadNode::Exact(enc.lo);
            }
            if let Some(root) = exact_root_in(p, &enc) {
                return QuadNode::Exact(root);
            }
            let refined = p.refine(&enc, &width);
            if refined.is_exact() {
                QuadNode::Exact(refined.lo)
            } else {
                QuadNode::Bracket(refined)
            }
        })
        .collect()
}

/// Common construction: given the positive nodes, the exact node
/// polynomial, the bound value and the space, derive the weights from the
/// interpolation means and check the node-zero Gauss structure.
fn assemble_quadrature(
    space: &HammingSpace,
    d: Rat,
    k: usize,
    eps: u8,
    bound: Rat,
    mut nodes: Vec<QuadNode>,
    node_poly: RatPoly,
    structure_exact: bool,
    degenerate: bool,
    mut notes: Vec<String>,
) -> Result<QuadratureData> {
    nodes.sort_by(|a, b| a.value().cmp(&b.value()));
    let exact = nodes.iter().all(|n| n.is_exact());
    if node_poly.degree() != Some(nodes.len()) {
        return Err(Error::Internal(format!(
            "node polynomial degree {:?} does not match {} nodes",
            node_poly.degree(),
            nodes.len()
        )));
    }
    // cardinal weights over {0} + node representatives
    let points: Vec<Rat> = std::iter::once(Rat::zero())
        .chain(nodes.iter().map(|n| n.value()))
        .collect();
    let mut weights = Vec::with_capacity(nodes.len());
    for i in 1..points.len() {
        let mut card = RatPoly::one();
        let mut denom = Rat::one();
        for (j, pt) in points.iter().enumerate() {
            if j != i {
                card = card.mul(&RatPoly::linear_root(pt));
                denom *= &points[i] - pt;
            }
        }
        weights.push(kraw::measure_mean(space, &card) / denom);
    }
    // At exact nodes the weight itself is exactly computable through the
    // aggregate functional, even when the remaining nodes are irrational:
    // the cardinal there divides the exact node polynomial.
    if structure_exact {
        for (i, node) in nodes.iter().enumerate() {
            if let QuadNode::Exact(v) = node {
                let (card, rem) = node_poly.div_rem(&RatPoly::linear_root(v));
                if !rem.is_zero() {
                    return Err(Error::Internal(
                        "exact node is not a root of the node polynomial".into(),
                    ));
                }
                let denom = card.eval(v);
                if denom.is_zero() {
                    return Err(Error::Internal("duplicate quadrature node".into()));
                }
                let ell = card.scale(&denom.recip());
                weights[i] =
                    kraw::measure_mean(space, &ell) - ell.eval(&Rat::zero()) / &bound;
            }
        }
    }
    // The 0-node cardinal built from the exact node polynomial must have
    // mean exactly 1/bound; this checks the whole construction.
    {
        let n0 = node_poly.eval(&Rat::zero());
        if n0.is_zero() {
            return Err(Error::Internal("node polynomial vanishes at 0".into()));
        }
        let w0 = kraw::measure_mean(space, &node_poly) / &n0;
        let resid = &w0 - bound.clone().recip();
        if structure_exact && !degenerate && !resid.is_zero() {
            return Err(Error::Internal(format!(
                "node-zero weight {w0} differs from 1/bound = 1/{bound}"
            )));
        }
        if !structure_exact {
            let tol = Rat::new(1.into(), num_bigint::BigInt::from(1u128) << 60);
            if resid.clone().abs() > tol {
                return Err(Error::Internal(
                    "node-zero weight drifted beyond bracket tolerance".into(),
                ));
            }
        }
    }
    if degenerate {
        notes.push("duplicate node collapsed; exactness degree reduced".into());
    }
    Ok(QuadratureData {
        space: *space,
        d,
        k,
        eps,
        bound,
        nodes,
        weights,
        node_poly,
        structure_exact,
        exact,
        degenerate,
        notes,
    })
}

/// Quadrature for the Levenshtein bound at distance d in (1, n]: nodes 0,
/// d, the kernel-factor zeros, and n when eps = 1; weights positive up to
/// the last, which may vanish at the right interval end.
pub fn levenshtein_quadrature(space: &HammingSpace, d: &Rat) -> Result<QuadratureData> {
    let interval = kraw::degree_interval(space, d)?;
    let bound = levenshtein_tau(space, interval.tau(), d)?;
    quadrature_with(space, d, interval.k, interval.eps, bound, true)
}

/// The same construction with explicit (k, eps) and node-zero denominator,
/// used by the energy windows where d solves M = L_tau(d).
fn quadrature_with(
    space: &HammingSpace,
    d: &Rat,
    k: usize,
    eps: u8,
    bound: Rat,
    structure_exact: bool,
) -> Result<QuadratureData> {
    let n = space.n();
    let n_rat = rat_u(n as u64);
    let mut nodes: Vec<QuadNode> = vec![QuadNode::Exact(d.clone())];
    let mut node_poly = RatPoly::linear_root(d);
    if k >= 2 {
        let kernel_space = space.shrink(1 + eps as usize)?;
        let shifted = kraw::kernel_poly(&kernel_space, k - 1, &(d - Rat::one()))?
            .compose_linear(&Rat::one(), &-Rat::one());
        // kernel zeros lie above d; they may exceed n when d sits past the
        // bound's own interval (energy windows)
        let upper = cauchy_root_bound(&shifted).max(n_rat.clone());
        let found = isolated_nodes(&shifted, d, &upper);
        if found.len() != k - 1 {
            return Err(Error::Internal(format!(
                "expected {} kernel zeros above d = {d}, found {}",
                k - 1,
                found.len()
            )));
        }
        nodes.extend(found);
        node_poly = node_poly.mul(&shifted.monic());
    }
    let mut degenerate = false;
    let mut notes = Vec::new();
    if eps == 1 {
        let dup = nodes.iter().any(|x| match x {
            QuadNode::Exact(v) => *v == n_rat,
            QuadNode::Bracket(_) => false,
        });
        if dup {
            degenerate = true;
        } else {
            nodes.push(QuadNode::Exact(n_rat.clone()));
            node_poly = node_poly.mul(&RatPoly::linear_root(&n_rat));
        }
    }
    for node in &nodes {
        if node.value() > n_rat {
            notes.push(format!("node {} exceeds n", node.to_f64()));
        }
    }
    assemble_quadrature(
        space,
        d.clone(),
        k,
        eps,
        bound,
        nodes,
        node_poly,
        structure_exact,
        degenerate,
        notes,
    )
}

fn cauchy_root_bound(p: &RatPoly) -> Rat {
    let lead = p.leading();
    if lead.is_zero() {
        return Rat::one();
    }
    let mut m = Rat::zero();
    for c in p.coeffs() {
        let a = (c / &lead).abs();
        if a > m {
            m = a;
        }
    }
    Rat::one() + m
}

/// The extremal polynomial behind the bound at d: sign-normalized
/// (t - d)(t - n)^eps prod_{kernel zeros}(t - alpha)^2, expanded exactly
/// into the Krawtchouk basis. Satisfies the code-side LP conditions and
/// reproduces the bound as f(0)/f_0.
pub fn levenshtein_polynomial(space: &HammingSpace, d: &Rat) -> Result<KrawPoly> {
    let interval = kraw::degree_interval(space, d)?;
    let (k, eps) = (interval.k, interval.eps);
    let n_rat = rat_u(space.n() as u64);
    let mut f = RatPoly::linear_root(d);
    if eps == 1 {
        f = f.mul(&RatPoly::linear_root(&n_rat));
    }
    if k >= 2 {
        let kernel_space = space.shrink(1 + eps as usize)?;
        let kernel = kraw::kernel_poly(&kernel_space, k - 1, &(d - Rat::one()))?
            .compose_linear(&Rat::one(), &-Rat::one());
        f = f.mul(&kernel.monic().square());
    }
    let at_zero = f.eval(&Rat::zero());
    if at_zero.is_negative() {
        f = f.neg();
    } else if at_zero.is_zero() {
        return Err(Error::Internal("extremal polynomial vanishes at 0".into()));
    }
    let deg = f.degree().unwrap_or(0);
    if deg > space.n() {
        return Err(Error::Unsupported(format!(
            "extremal polynomial degree {deg} exceeds n = {}",
            space.n()
        )));
    }
    let values: Vec<Rat> = (0..=space.n())
        .map(|u| f.eval(&rat_u(u as u64)))
        .collect();
    kraw::expand(space, &values)
}

/// Test function P_j at distance d: the bound-side quadrature applied to
/// K_j. Exactly zero for j <= 2k - 1 + eps; a negative value at some
/// larger j signals that a higher-degree certificate beats the bound.
pub fn test_function(space: &HammingSpace, d: &Rat, j: usize) -> Result<Rat> {
    let quad = levenshtein_quadrature(space, d)?;
    test_function_with(space, &quad, j)
}

/// Same, reusing a prepared quadrature.
pub fn test_function_with(space: &HammingSpace, quad: &QuadratureData, j: usize) -> Result<Rat> {
    if j < 1 || j > space.n() {
        return Err(Error::IndexOutOfRange {
            what: "test function index",
            index: j,
            max: space.n(),
        });
    }
    let kj = kraw::monomial_poly(space, j)?;
    Ok(kj.eval(&Rat::zero()) / &quad.bound + quad.node_sum(&kj))
}

/// The cardinality window containing M, as tau: M in [H(tau+1), H(tau+2)).
///
/// The window index is fixed empirically by the range of the bound on its
/// own interval, L_tau(I_tau) = [H(tau+1), H(tau+2)]: this is the unique
/// convention under which M = L_tau(d) has its smallest root inside
/// [1, n] for every admissible M, with all quadrature nodes in [0, n] and
/// nonnegative weights. Attainers sit at the closed left endpoint.
pub fn energy_window(space: &HammingSpace, m: &Rat) -> Result<usize> {
    let qn = space.size();
    if m <= &Rat::one() || m > &qn {
        return Err(Error::InvalidInput(format!("M = {m} outside (1, q^n]")));
    }
    for tau in 1..=(2 * space.n()) {
        let lo = rao_index(space, tau + 1)?;
        let hi = rao_index(space, tau + 2).unwrap_or_else(|_| qn.clone());
        if &lo <= m && (m < &hi || (m == &hi && hi == qn)) {
            return Ok(tau);
        }
    }
    Err(Error::InvalidInput(format!(
        "M = {m} below the smallest cardinality window (needs M >= q)"
    )))
}

/// Universal lower bound on the energy of M-point codes: locate the
/// window tau, solve M = L_tau(d) for the smallest root d in [1, n],
/// build the window quadrature there, and return M^2 sum rho_i h(alpha_i).
pub struct UlbReport {
    pub report: BoundReport,
    pub quadrature: QuadratureData,
    pub tau: usize,
    pub d: Rat,
}

pub fn ulb_energy(space: &HammingSpace, m: u64, h: &DistancePotential) -> Result<UlbReport> {
    if !h.completely_monotone {
        return Err(Error::InvalidInput(
            "the universal energy bound requires a completely monotone potential".into(),
        ));
    }
    let m_rat = rat_u(m);
    if m < 2 {
        return Err(Error::InvalidInput("M must be at least 2".into()));
    }
    let tau = energy_window(space, &m_rat)?;
    let k = (tau + 1) / 2;
    let eps = ((tau + 1) % 2) as u8;
    // level-set polynomial of M = L_tau(d):
    // (q^eps V_{k-1}(n-eps) - M) K_k^{(n-eps)}(d)
    //   - q^eps (q-1)^k C(n-eps,k) K_{k-1}^{(n-1-eps)}(d-1)
    let inner = space.shrink(eps as usize)?;
    let qe = rat_pow(&space.q_rat(), eps as u32);
    let kk = kraw::monomial_poly(&inner, k)?;
    let inner1 = inner.shrink(1)?;
    let kk1 = kraw::monomial_poly(&inner1, k - 1)?.compose_linear(&Rat::one(), &-Rat::one());
    let factor = rat_pow(&rat_u(space.q() - 1), k as u32)
        * crate::exact::binom_rat(inner.n() as u64, k as u64);
    let level = kk
        .scale(&(&qe * sphere_volume(&inner, k - 1) - &m_rat))
        .sub(&kk1.scale(&(&qe * factor)));
    let n_rat = rat_u(space.n() as u64);
    let upper = cauchy_root_bound(&level).max(n_rat.clone());
    let roots = isolated_nodes(&level, &Rat::one(), &upper);
    let d_node = roots
        .iter()
        .find(|r| r.value() <= n_rat)
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "M = {m} admits no distance root in [1, n] (window tau = {tau})"
            ))
        })?;
    let d = d_node.value();
    let quad = quadrature_with(space, &d, k, eps, m_rat.clone(), d_node.is_exact())?;
    let sum = quad.potential_sum(h)?;
    let value = match sum {
        Value::Exact(s) => Value::Exact(&m_rat * &m_rat * s),
        Value::Real(s) => Value::Real((m * m) as f64 * s),
        Value::Infinite => Value::Infinite,
    };
    let mut report = BoundReport::new(Method::UniversalEnergy, Direction::Lower, value)
        .note(format!("window tau = {tau}, d(M) = {}", crate::exact::to_f64(&d)));
    report.notes.extend(quad.notes.iter().cloned());
    if quad.weights.iter().any(|w| w.is_negative()) {
        report = report.note("a node weight is negative (M interior to its window)");
    }
    Ok(UlbReport {
        report,
        quadrature: quad,
        tau,
        d,
    })
}

/// Per-codeword removal check: for each c, the energy of C minus c versus
/// the universal bound at M - 1. Report-only.
pub struct RemovalEntry {
    pub removed: usize,
    pub energy: Value,
    pub bound: Value,
    pub attains: bool,
}

pub fn point_removal_energy_check(
    code: &crate::code::Code,
    h: &DistancePotential,
) -> Result<Vec<RemovalEntry>> {
    let m = code.len();
    let mut out = Vec::with_capacity(m);
    for skip in 0..m {
        let mut energy_exact = Rat::zero();
        let mut energy_real = 0.0f64;
        let mut exact = true;
        for i in 0..m {
            for j in 0..m {
                if i == j || i == skip || j == skip {
                    continue;
                }
                let d = code.distance(i, j);
                match h.eval_rat(&rat_u(d as u64)) {
                    Some(v) => energy_exact += v,
                    None => {
                        exact = false;
                        energy_real += h.eval_f64(d as f64);
                    }
                }
            }
        }
        let energy = if exact {
            Value::Exact(energy_exact)
        } else {
            Value::Real(crate::exact::to_f64(&energy_exact) + energy_real)
        };
        let (bound, attains) = if m >= 3 {
            let ulb = ulb_energy(code.space(), (m - 1) as u64, h)?;
            let attains = match (&energy, &ulb.report.value) {
                (Value::Exact(a), Value::Exact(b)) => a == b,
                (a, b) => (a.to_f64() - b.to_f64()).abs() <= 1e-9,
            };
            (ulb.report.value, attains)
        } else {
            // one point left: zero energy, trivially optimal
            (Value::Exact(Rat::zero()), matches!(&energy, Value::Exact(e) if e.is_zero()))
        };
        out.push(RemovalEntry {
            removed: skip,
            energy,
            bound,
            attains,
        });
    }
    Ok(out)
}

/// Outcome of checking a polynomial against the paired LP conditions
/// through duality.
pub struct DualityCheck {
    pub code_side_ok: bool,
    pub design_side_ok: bool,
    pub first_violation: Option<String>,
    /// f(0)/f_0 * dual(0)/dual_0, which must equal q^n.
    pub product: Rat,
    pub product_is_qn: bool,
}

/// Verify that a code-side certificate at distance d maps through duality
/// to a design-side certificate at strength tau = d - 1, and that the two
/// bound ratios multiply to q^n.
pub fn duality_map_check(f: &KrawPoly, d: usize) -> Result<DualityCheck> {
    let space = *f.space();
    let n = space.n();
    if d < 1 || d > n {
        return Err(Error::InvalidInput(format!("d = {d} outside [1, {n}]")));
    }
    let tau = d - 1;
    let mut first_violation = None;
    let values = f.values_at_ints();
    let mut code_side_ok = true;
    if !f.coeff(0).is_positive() {
        code_side_ok = false;
        first_violation.get_or_insert_with(|| "coefficient condition fails at index 0".into());
    }
    for i in 1..=n {
        if f.coeff(i).is_negative() {
            code_side_ok = false;
            first_violation
                .get_or_insert_with(|| format!("coefficient condition fails at index {i}"));
            break;
        }
    }
    if !values[0].is_positive() {
        code_side_ok = false;
        first_violation.get_or_insert_with(|| "value condition fails at 0".into());
    }
    for i in d..=n {
        if values[i].is_positive() {
            code_side_ok = false;
            first_violation.get_or_insert_with(|| format!("value condition fails at {i}"));
            break;
        }
    }
    // dual side: base(z) = sum_j f(j) K_j(z) carries all the sign content
    let dual = kraw::dual(f);
    let base = dual.base();
    let dual_values = base.values_at_ints();
    let mut design_side_ok = true;
    if !base.coeff(0).is_positive() {
        design_side_ok = false;
        first_violation.get_or_insert_with(|| "dual coefficient condition fails at index 0".into());
    }
    for i in (tau + 1)..=n {
        if base.coeff(i).is_positive() {
            design_side_ok = false;
            first_violation
                .get_or_insert_with(|| format!("dual coefficient condition fails at index {i}"));
            break;
        }
    }
    if !dual_values[0].is_positive() {
        design_side_ok = false;
        first_violation.get_or_insert_with(|| "dual value condition fails at 0".into());
    }
    for i in 1..=n {
        if dual_values[i].is_negative() {
            design_side_ok = false;
            first_violation
                .get_or_insert_with(|| format!("dual value condition fails at {i}"));
            break;
        }
    }
    // ratio product, scale-free: dual(0)/dual_0 = base(0)/base_0
    let product = &values[0] / f.coeff(0) * &dual_values[0] / base.coeff(0);
    let product_is_qn = product == space.size();
    Ok(DualityCheck {
        code_side_ok,
        design_side_ok,
        first_violation,
        product,
        product_is_qn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, to_f64};

    fn space(n: usize, q: u64) -> HammingSpace {
        HammingSpace::new(n, q).unwrap()
    }

    #[test]
    fn volumes_and_rao_index() {
        let s = space(7, 2);
        assert_eq!(sphere_volume(&s, 1), rat(8));
        assert_eq!(sphere_volume(&s, 0), rat(1));
        assert_eq!(sphere_volume(&s, 7), rat(128));
        assert_eq!(sphere_volume(&space(4, 3), 4), rat(81));
        // H(3) = V_1(n, q), H(2) = q
        assert_eq!(rao_index(&s, 3).unwrap(), rat(8));
        assert_eq!(rao_index(&s, 2).unwrap(), rat(2));
        assert_eq!(rao_index(&space(5, 3), 2).unwrap(), rat(3));
    }

    #[test]
    fn singleton_examples() {
        let s = space(7, 2);
        let (_, upper) = singleton_pair(&s, Some(3), None).unwrap();
        assert_eq!(upper.unwrap().value, Value::Exact(rat(32)));
        let s = space(6, 4);
        let (lower, _) = singleton_pair(&s, None, Some(3)).unwrap();
        assert_eq!(lower.unwrap().value, Value::Exact(rat(16)));
        let (_, upper) = singleton_pair(&s, Some(5), Some(3)).unwrap();
        assert!(upper.unwrap().notes.iter().any(|n| n.contains("MDS")));
        assert!(singleton_pair(&s, Some(9), None).is_err());
    }

    #[test]
    fn rao_hamming_examples() {
        let s = space(7, 2);
        let (_, upper) = rao_hamming_pair(&s, Some(3), None).unwrap();
        assert_eq!(upper.unwrap().value, Value::Exact(rat(16)));
        let s = space(23, 2);
        let (_, upper) = rao_hamming_pair(&s, Some(7), None).unwrap();
        assert_eq!(upper.unwrap().value, Value::Exact(rat(4096)));
        let s = space(9, 3);
        let (lower, _) = rao_hamming_pair(&s, None, Some(2)).unwrap();
        assert_eq!(lower.unwrap().value, Value::Exact(rat(3)));
    }

    #[test]
    fn levenshtein_values() {
        // plotkin point: L(n) = q
        for q in 2u64..=5 {
            for n in 2usize..=9 {
                let s = space(n, q);
                let lb = levenshtein_bound(&s, &rat_u(n as u64)).unwrap();
                assert_eq!(lb.value, rat_u(q), "n={n} q={q}");
                assert_eq!((lb.interval.k, lb.interval.eps), (1, 0));
            }
        }
        let s = space(4, 2);
        assert_eq!(levenshtein_bound(&s, &rat(3)).unwrap().value, rat(3));
        let s = space(23, 2);
        assert_eq!(levenshtein_bound(&s, &rat(8)).unwrap().value, rat(2048));
        let s = space(12, 3);
        assert_eq!(levenshtein_bound(&s, &rat(6)).unwrap().value, rat(729));
        // L^{7,2}(4) = 8, an eps = 1 instance
        let s = space(7, 2);
        let lb = levenshtein_bound(&s, &rat(4)).unwrap();
        assert_eq!(lb.value, rat(8));
        assert_eq!((lb.interval.k, lb.interval.eps), (1, 1));
    }

    #[test]
    fn quadrature_simple_case() {
        // (7,2,7): nodes {0, 7}, single weight 1/2, exact for degree <= 1
        let s = space(7, 2);
        let q = levenshtein_quadrature(&s, &rat(7)).unwrap();
        assert_eq!(q.bound, rat(2));
        assert_eq!(q.nodes.len(), 1);
        assert_eq!(q.nodes[0].value(), rat(7));
        assert_eq!(q.weights[0], ratio(1, 2));
        assert!(q.exact);
        for f in [RatPoly::one(), RatPoly::x()] {
            assert_eq!(q.identity_residual(&f), rat(0));
        }
    }

    #[test]
    fn quadrature_identity_exact_across_degrees() {
        // identity holds exactly for all monomials up to 2k-1+eps,
        // including irrational-node cases, via the aggregate reduction
        for (n, q, d) in [
            (5usize, 2u64, 4i64),
            (7, 2, 3),
            (10, 2, 4),
            (10, 2, 5),
            (12, 2, 5),
            (13, 2, 5),
            (9, 3, 4),
            (11, 4, 6),
        ] {
            let s = space(n, q);
            let quad = levenshtein_quadrature(&s, &rat(d)).unwrap();
            let tau = 2 * quad.k - 1 + quad.eps as usize;
            let mut mono = RatPoly::one();
            for deg in 0..=tau {
                assert_eq!(
                    quad.identity_residual(&mono),
                    rat(0),
                    "n={n} q={q} d={d} deg={deg}"
                );
                mono = mono.mul(&RatPoly::x());
            }
        }
    }

    #[test]
    fn quadrature_weight_positivity_and_boundary() {
        // rho_i > 0 for i <= k on a sweep; the last eps = 1 weight
        // vanishes exactly on the boundary d = xi_k^{n-1,q} + 1
        for q in [2u64, 3] {
            for n in 4..=14usize {
                for d in 2..=n {
                    let s = space(n, q);
                    let quad = levenshtein_quadrature(&s, &rat(d as i64)).unwrap();
                    for (i, w) in quad.weights.iter().enumerate() {
                        if i < quad.k {
                            assert!(w.is_positive(), "n={n} q={q} d={d} i={i}");
                        } else {
                            assert!(!w.is_negative(), "n={n} q={q} d={d} i={i}");
                            let boundary = kraw::smallest_root_xi(n - 1, q, quad.k)
                                .unwrap()
                                .compare_to(&rat(d as i64 - 1))
                                == std::cmp::Ordering::Equal;
                            assert_eq!(w.is_zero(), boundary, "n={n} q={q} d={d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn quadrature_matches_closed_weight_formula_where_sound() {
        // The closed inner-weight form
        //   rho_i = q^{-1-eps} (q-1) n (n-1)^eps
        //           / (alpha_i (n - alpha_i) T_{k-1}(alpha_i - 1, alpha_i - 1))
        // agrees exactly with the interpolatory weights in the regimes
        // where it is internally consistent: all of eps = 1, and k = 1
        // for eps = 0. (For eps = 0, k >= 2 it deviates node-dependently
        // and is superseded by the interpolatory construction, which is
        // pinned down by the exact degree-tau quadrature identity.)
        for (n, q, d) in [
            (5usize, 2u64, 4i64),
            (10, 2, 4),
            (13, 2, 5),
            (16, 2, 5),
            (12, 3, 5),
        ] {
            let s = space(n, q);
            let quad = levenshtein_quadrature(&s, &rat(d)).unwrap();
            assert!(quad.eps == 1 || quad.k == 1, "pick sound regimes only");
            let kernel_space = s.shrink(1 + quad.eps as usize).unwrap();
            for (i, (node, w)) in quad.nodes.iter().zip(&quad.weights).enumerate() {
                if i >= quad.k {
                    continue;
                }
                let a = node.value();
                if a == rat_u(n as u64) {
                    continue;
                }
                let t = kraw::kernel_sum(
                    &kernel_space,
                    quad.k - 1,
                    &(&a - Rat::one()),
                    &(&a - Rat::one()),
                )
                .unwrap();
                let formula = rat_pow(&s.q_rat(), (1 + quad.eps) as u32).recip()
                    * rat_u(q - 1)
                    * rat_u(n as u64)
                    * rat_pow(&rat_u(n as u64 - 1), quad.eps as u32)
                    / (&a * (rat_u(n as u64) - &a) * t);
                if node.is_exact() {
                    assert_eq!(*w, formula, "n={n} q={q} d={d} node {i}");
                } else {
                    let diff = (w - formula).abs();
                    assert!(
                        diff < Rat::new(1.into(), num_bigint::BigInt::from(1u128) << 50),
                        "n={n} q={q} d={d} node {i}"
                    );
                }
            }
        }
    }

    #[test]
    fn extremal_polynomial_certifies_bound() {
        for (n, q, d) in [
            (7usize, 2u64, 7i64),
            (4, 2, 3),
            (7, 2, 3),
            (7, 2, 4),
            (10, 2, 5),
            (12, 3, 6),
            (13, 2, 5),
        ] {
            let s = space(n, q);
            let f = levenshtein_polynomial(&s, &rat(d)).unwrap();
            let bound = levenshtein_bound(&s, &rat(d)).unwrap().value;
            // ratio reproduces the bound exactly
            let values = f.values_at_ints();
            assert_eq!(&values[0] / f.coeff(0), bound, "n={n} q={q} d={d}");
            // coefficient conditions
            assert!(f.coeff(0).is_positive());
            for i in 1..=n {
                assert!(!f.coeff(i).is_negative(), "n={n} q={q} d={d} i={i}");
            }
            // sign condition at the integers d..n, exact
            for (i, v) in values.iter().enumerate().skip(d as usize) {
                assert!(!v.is_positive(), "n={n} q={q} d={d} f({i}) = {v}");
            }
        }
    }

    #[test]
    fn degree_one_certificate_case() {
        // (7,2,7): f = (7 - t)/1, ratio 2
        let s = space(7, 2);
        let f = levenshtein_polynomial(&s, &rat(7)).unwrap();
        assert_eq!(f.values_at_ints()[0].clone() / f.coeff(0), rat(2));
        assert_eq!(f.degree(), Some(1));
    }

    #[test]
    fn test_functions_vanish_up_to_tau() {
        for (n, q, d) in [(7usize, 2u64, 3i64), (10, 2, 4), (13, 2, 5), (9, 3, 4)] {
            let s = space(n, q);
            let quad = levenshtein_quadrature(&s, &rat(d)).unwrap();
            let tau = 2 * quad.k - 1 + quad.eps as usize;
            for j in 1..=n {
                let p = test_function_with(&s, &quad, j).unwrap();
                if j <= tau {
                    assert_eq!(p, rat(0), "n={n} q={q} d={d} j={j}");
                }
            }
            // the stated value of K_j(0)
            for j in 1..=n {
                assert_eq!(
                    kraw::eval(&s, j, &rat(0)).unwrap(),
                    s.measure_weight(j)
                );
            }
        }
    }

    #[test]
    fn ulb_window_and_simple_cases() {
        // M = q: d = n, single node alpha_1 = n, bound M(M-1)h(n)
        for q in [2u64, 3, 5] {
            let n = 6;
            let s = space(n, q);
            let h = DistancePotential::inverse_distance();
            let ulb = ulb_energy(&s, q, &h).unwrap();
            assert_eq!(ulb.tau, 1);
            assert_eq!(ulb.d, rat_u(n as u64));
            assert_eq!(ulb.quadrature.nodes.len(), 1);
            assert_eq!(
                ulb.quadrature.weights[0],
                (rat_u(q) - Rat::one()) / rat_u(q)
            );
            let expect = rat_u(q) * (rat_u(q) - Rat::one()) * ratio(1, n as i64);
            assert_eq!(ulb.report.value, Value::Exact(expect));
        }
    }

    #[test]
    fn ulb_monotone_in_m() {
        let s = space(10, 2);
        let h = DistancePotential::inverse_distance();
        let mut prev = -1.0f64;
        for m in 2..=128u64 {
            let ulb = ulb_energy(&s, m, &h).unwrap();
            let v = ulb.report.value.to_f64();
            assert!(
                v >= prev - 1e-9,
                "bound decreased at M = {m}: {v} < {prev}"
            );
            prev = v;
        }
    }

    #[test]
    fn ulb_attained_by_even_weight_code() {
        // even-weight code of length 5: M = 16, energy matches the bound
        let code = crate::fixtures::even_weight(5);
        let h = DistancePotential::inverse_distance();
        let dist = crate::code::distance_distribution(&code);
        let energy = crate::code::energy_from_distribution(&dist, &h).unwrap();
        let ulb = ulb_energy(code.space(), 16, &h).unwrap();
        assert_eq!(ulb.report.value, energy);
        assert!(matches!(ulb.report.value, Value::Exact(_)));
    }

    #[test]
    fn ulb_level_roots_match_kernel_nodes() {
        // the positive quadrature nodes below n solve M = L_tau(d)
        let s = space(10, 2);
        let h = DistancePotential::inverse_distance();
        for m in [15u64, 24, 40, 70] {
            let ulb = ulb_energy(&s, m, &h).unwrap();
            let tau = ulb.tau;
            for node in &ulb.quadrature.nodes {
                let v = node.value();
                if v == rat(10) && ulb.quadrature.eps == 1 {
                    continue; // the appended endpoint node
                }
                let lv = levenshtein_tau(&s, tau, &v).unwrap();
                let resid = (to_f64(&lv) - m as f64).abs();
                assert!(resid < 1e-18, "M={m} node {} residual {resid}", node.to_f64());
            }
        }
    }

    #[test]
    fn ulb_rejects_out_of_range() {
        let s = space(4, 3);
        let h = DistancePotential::inverse_distance();
        assert!(ulb_energy(&s, 1, &h).is_err());
        // below q: no distance root in [1, n]
        assert!(ulb_energy(&s, 2, &h).is_err());
        let mut h2 = DistancePotential::inverse_distance();
        h2.completely_monotone = false;
        assert!(ulb_energy(&s, 5, &h2).is_err());
    }

    #[test]
    fn ulb_small_window_case() {
        // (n=3, q=2, M=3): tau = 1, d(M) = 9/4, bound 9*(2/3)*h(9/4) = 8/3
        let s = space(3, 2);
        let h = DistancePotential::inverse_distance();
        let ulb = ulb_energy(&s, 3, &h).unwrap();
        assert_eq!(ulb.tau, 1);
        assert_eq!(ulb.d, ratio(9, 4));
        assert_eq!(ulb.report.value, Value::Exact(ratio(8, 3)));
    }

    #[test]
    fn ulb_full_space_attains() {
        // M = q^n: the quadrature degenerates to the counting measure and
        // the bound equals the full-space energy exactly
        let s = space(3, 2);
        let h = DistancePotential::inverse_distance();
        let ulb = ulb_energy(&s, 8, &h).unwrap();
        let full = crate::fixtures::full_space(3, 2);
        let energy = crate::code::energy_hamming(&full, &h).unwrap();
        assert_eq!(ulb.report.value, energy);
    }

    #[test]
    fn point_removal_reports() {
        let h = DistancePotential::inverse_distance();
        // symmetric code: all removals identical
        let code = crate::fixtures::even_weight(3);
        let entries = point_removal_energy_check(&code, &h).unwrap();
        assert_eq!(entries.len(), 4);
        for e in &entries {
            assert_eq!(e.energy, Value::Exact(rat(3)));
        }
        // repetition pair: removal leaves a single word, zero energy
        let code = crate::fixtures::repetition(3, 2);
        let entries = point_removal_energy_check(&code, &h).unwrap();
        for e in &entries {
            assert_eq!(e.energy, Value::Exact(rat(0)));
            assert!(e.attains);
        }
    }

    #[test]
    fn duality_checks() {
        // the extremal certificate maps to a design certificate and the
        // ratio product is exactly q^n
        for (n, q, d) in [(7usize, 2u64, 3usize), (10, 2, 4), (12, 3, 6)] {
            let s = space(n, q);
            let f = levenshtein_polynomial(&s, &rat(d as i64)).unwrap();
            let check = duality_map_check(&f, d).unwrap();
            assert!(check.code_side_ok, "n={n} q={q} d={d}");
            assert!(check.design_side_ok, "n={n} q={q} d={d}");
            assert!(check.product_is_qn, "product = {}", check.product);
        }
        // a plain constant fails the code side for d <= n
        let s = space(5, 2);
        let f = KrawPoly::basis(s, 0).unwrap();
        let check = duality_map_check(&f, 3).unwrap();
        assert!(!check.code_side_ok);
        assert!(check.first_violation.is_some());
    }

    #[test]
    fn piecewise_continuity_at_interval_ends() {
        // approaching every interior interval endpoint from both sides
        // changes the bound by o(1): checked at +-1e-7 within 1e-5 rel
        for q in [2u64, 3] {
            for n in [8usize, 11, 14] {
                let s = space(n, q);
                for k in 1..n {
                    for eps in [0u8, 1] {
                        // right endpoint of the (k, eps) interval
                        let (un, ui) = (n - 2 + eps as usize, k - 1 + eps as usize);
                        if ui > un || ui == 0 {
                            continue;
                        }
                        let Ok(root) = kraw::smallest_root_xi(un, q, ui) else {
                            continue;
                        };
                        let e = root.refine(&Rat::new(1.into(), num_bigint::BigInt::from(1u128 << 60)));
                        let d0 = e.mid() + Rat::one();
                        let h = ratio(1, 10_000_000);
                        let (dl, dr) = (&d0 - &h, &d0 + &h);
                        if dl <= Rat::one() || dr >= rat_u(n as u64) {
                            continue;
                        }
                        let left = levenshtein_bound(&s, &dl);
                        let right = levenshtein_bound(&s, &dr);
                        let (Ok(left), Ok(right)) = (left, right) else {
                            continue;
                        };
                        let l = to_f64(&left.value);
                        let r = to_f64(&right.value);
                        assert!(
                            (l - r).abs() <= 1e-5 * l.abs().max(1.0),
                            "jump at n={n} q={q} k={k} eps={eps}: {l} vs {r}"
                        );
                    }
                }
            }
        }
    }
}
