//! The anti-Vandermonde system of a type and a multistart Newton solver.
//!
//! Place the white vertices at `0, a_1, ..., a_{s-1}` and the black vertices
//! at `1, b_1, ..., b_{t-1}`, the largest weight of each color being pinned.
//! The unknowns satisfy, for `r = 1, ..., s+t-2`,
//!
//! ```text
//! sum_i k_i a_i^r - sum_j l_j b_j^r - l_t = 0.
//! ```
//!
//! These come from equating the leading coefficients `s_r`, `t_r` of
//! `prod (z - a_i)^{k_i}` and `prod (z - b_j)^{l_j}`; since `p_r = q_r(s)`,
//! the two forms are equivalent.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{newton_q, Monomial, Poly};
use crate::types::{Color, WeightedType};
use crate::weight::Weight;

pub(crate) fn weight_to_rational(w: Weight) -> BigRational {
    BigRational::new(BigInt::from(w.numer()), BigInt::from(w.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Unknown {
    pub name: String,
    pub color: Color,
    pub weight: Weight,
}

/// A square polynomial system whose solutions place the vertices of a type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AVSystem {
    pub ty: WeightedType,
    pub unknowns: Vec<Unknown>,
    /// Weight of the white vertex pinned at 0.
    pub pinned_white: Weight,
    /// Weight of the black vertex pinned at 1.
    pub pinned_black: Weight,
    /// Equation `r` is at index `r - 1`; each polynomial equals zero.
    pub equations: Vec<Poly>,
}

/// One step of the reduction from coefficient matching to power sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCheck {
    pub r: usize,
    /// `s_r - t_r`.
    pub raw: Poly,
    /// `q_r(s) - q_r(t)`, expanded.
    pub via_q: Poly,
    pub holds: bool,
}

fn unknown_names(color: Color, count: usize) -> Vec<String> {
    let letter = if color == Color::White { "a" } else { "b" };
    if count == 1 {
        vec![letter.to_string()]
    } else {
        (1..=count).map(|i| format!("{letter}_{i}")).collect()
    }
}

/// Builds the system. Weights of each color are taken in decreasing order
/// (equal weights keep their order); the first is pinned and the rest become
/// the unknowns `a_1, a_2, ...` and `b_1, b_2, ...`, or `a` and `b` when a
/// color has a single unknown. A type `⟨n|n⟩` gives the empty system.
pub fn build_system(ty: &WeightedType) -> AVSystem {
    let desc = |c: Color| ty.side(c).iter().rev().copied().collect::<Vec<_>>();
    let (white, black) = (desc(Color::White), desc(Color::Black));
    let mut unknowns = Vec::new();
    for (color, ws) in [(Color::White, &white), (Color::Black, &black)] {
        let names = unknown_names(color, ws.len() - 1);
        unknowns.extend(ws[1..].iter().zip(names).map(|(&weight, name)| Unknown { name, color, weight }));
    }
    let m = unknowns.len();
    let equations = (1..=m as u32)
        .map(|r| {
            let mut eq = Poly::constant(-weight_to_rational(black[0]));
            for (i, u) in unknowns.iter().enumerate() {
                let k = weight_to_rational(u.weight);
                let k = if u.color == Color::White { k } else { -k };
                eq = &eq + &Poly::term(k, Monomial::var(i, r));
            }
            eq
        })
        .collect();
    AVSystem { ty: ty.clone(), unknowns, pinned_white: white[0], pinned_black: black[0], equations }
}

/// Generalized binomial coefficient `C(k, r)` for rational `k`.
fn binomial(k: &BigRational, r: usize) -> BigRational {
    (0..r).fold(BigRational::one(), |acc, j| {
        acc * (k - BigRational::from_integer(j.into())) / BigRational::from_integer((j + 1).into())
    })
}

impl AVSystem {
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Product of the equation degrees, `(s+t-2)!`.
    pub fn bezout_bound(&self) -> BigInt {
        (1..=self.len()).fold(BigInt::one(), |acc, k| acc * k)
    }

    pub fn name(&self, i: usize) -> String {
        self.unknowns[i].name.clone()
    }

    /// `s_1, ..., s_n` for one color: the coefficients of
    /// `prod (1 + x z_i)^{w_i}` over its vertices, as polynomials in the
    /// unknowns. Pinned vertices contribute their fixed position.
    pub fn elementary(&self, color: Color, n: usize) -> Vec<Poly> {
        let mut factors: Vec<(Poly, BigRational)> = self
            .unknowns
            .iter()
            .enumerate()
            .filter(|(_, u)| u.color == color)
            .map(|(i, u)| (Poly::var(i), weight_to_rational(u.weight)))
            .collect();
        if color == Color::Black {
            factors.push((Poly::from_int(1), weight_to_rational(self.pinned_black)));
        }
        let mut series = vec![Poly::from_int(1)];
        series.resize(n + 1, Poly::zero());
        for (z, k) in factors {
            let factor: Vec<Poly> = (0..=n).map(|r| z.pow(r as u32).scale(&binomial(&k, r))).collect();
            let mut next = vec![Poly::zero(); n + 1];
            for (i, a) in series.iter().enumerate() {
                for (j, b) in factor.iter().enumerate().take(n + 1 - i) {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
            series = next;
        }
        series.remove(0);
        series
    }

    /// Coefficient-matching equations `s_r - t_r = 0`, `r = 1, ..., s+t-2`.
    pub fn raw_equations(&self) -> Vec<Poly> {
        let m = self.len();
        let s = self.elementary(Color::White, m);
        let t = self.elementary(Color::Black, m);
        s.iter().zip(&t).map(|(a, b)| a - b).collect()
    }

    /// Checks symbolically that `q_r(s) - q_r(t)` equals equation `r`.
    pub fn reduction_report(&self) -> Vec<ReductionCheck> {
        let m = self.len();
        let s = self.elementary(Color::White, m);
        let t = self.elementary(Color::Black, m);
        (1..=m)
            .map(|r| {
                let q = newton_q(r);
                let via_q = &q.compose(&s[..r]) - &q.compose(&t[..r]);
                let holds = via_q == self.equations[r - 1];
                ReductionCheck { r, raw: &s[r - 1] - &t[r - 1], via_q, holds }
            })
            .collect()
    }

    pub fn render_equation(&self, eq: &Poly) -> String {
        format!("{}=0", eq.render_descending(&|i| self.name(i)))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("type {}: white {} at 0, black {} at 1\n", self.ty, self.pinned_white, self.pinned_black);
        let unknowns: Vec<String> =
            self.unknowns.iter().map(|u| format!("{} ({} {})", u.name, u.color, u.weight)).collect();
        out.push_str(&format!("unknowns: {}\n", if unknowns.is_empty() { "none".into() } else { unknowns.join(", ") }));
        for eq in &self.equations {
            out.push_str(&self.render_equation(eq));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let equations: Vec<serde_json::Value> = self
            .equations
            .iter()
            .map(|eq| {
                let monomials: Vec<serde_json::Value> = eq
                    .terms()
                    .map(|(m, c)| {
                        let powers: serde_json::Map<String, serde_json::Value> =
                            m.powers().iter().map(|&(v, p)| (self.name(v), p.into())).collect();
                        serde_json::json!({ "coeff": c.to_string(), "powers": powers })
                    })
                    .collect();
                serde_json::json!({ "monomials": monomials })
            })
            .collect();
        serde_json::json!({
            "type": self.ty.literal(),
            "pinned": { "white": self.pinned_white, "black": self.pinned_black },
            "unknowns": self.unknowns,
            "equations": equations,
        })
    }

    /// Max-norm of the equations at a complex point.
    pub fn residual(&self, point: &[Complex64]) -> f64 {
        let compiled = Compiled::new(self);
        max_norm(&compiled.values(point))
    }

    /// Max-norm of the equations evaluated exactly at the rational point
    /// nearest in binary floating point to `point`.
    pub fn exact_residual(&self, point: &[Complex64]) -> f64 {
        let exact: Vec<Complex<BigRational>> = point
            .iter()
            .map(|z| {
                let part = |x: f64| BigRational::from_float(x).expect("finite coordinate");
                Complex::new(part(z.re), part(z.im))
            })
            .collect();
        self.equations
            .iter()
            .map(|eq| {
                let v = eq.eval(&exact, |c| Complex::new(c.clone(), BigRational::zero()));
                let (re, im) = (v.re.to_f64().unwrap_or(f64::INFINITY), v.im.to_f64().unwrap_or(f64::INFINITY));
                re.hypot(im)
            })
            .fold(0.0, f64::max)
    }
}

/// Terms of a polynomial as `(coefficient, powers)`.
type FloatPoly = Vec<(f64, Vec<(usize, u32)>)>;

/// Equations and Jacobian with floating coefficients, for Newton steps.
struct Compiled {
    equations: Vec<FloatPoly>,
    jacobian: Vec<Vec<FloatPoly>>,
}

fn compile(p: &Poly) -> FloatPoly {
    p.terms().map(|(m, c)| (c.to_f64().expect("finite coefficient"), m.powers().to_vec())).collect()
}

fn eval_compiled(terms: &[(f64, Vec<(usize, u32)>)], x: &[Complex64]) -> Complex64 {
    terms.iter().map(|(c, powers)| powers.iter().fold(Complex64::new(*c, 0.0), |acc, &(v, p)| acc * x[v].powu(p))).sum()
}

impl Compiled {
    fn new(sys: &AVSystem) -> Self {
        let n = sys.unknowns.len();
        Compiled {
            equations: sys.equations.iter().map(compile).collect(),
            jacobian: sys.equations.iter().map(|eq| (0..n).map(|v| compile(&eq.derivative(v))).collect()).collect(),
        }
    }

    fn values(&self, x: &[Complex64]) -> Vec<Complex64> {
        self.equations.iter().map(|eq| eval_compiled(eq, x)).collect()
    }

    fn jacobian(&self, x: &[Complex64]) -> nalgebra::DMatrix<Complex64> {
        let n = x.len();
        nalgebra::DMatrix::from_fn(n, n, |i, j| eval_compiled(&self.jacobian[i][j], x))
    }
}

fn max_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub starts: usize,
    pub tol: f64,
    pub dedup_radius: f64,
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { starts: 500, tol: 1e-10, dedup_radius: 1e-6, seed: 0, max_iterations: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    /// Coordinates as `[re, im]` pairs, in unknown order.
    #[serde(serialize_with = "serialize_point")]
    pub point: Vec<Complex64>,
    pub residual: f64,
}

fn serialize_point<S: serde::Serializer>(point: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(point.len()))?;
    for z in point {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

/// Distinct solutions found. Their number is a lower bound on the number of
/// solutions of the system, not a certified count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub unknowns: Vec<String>,
    pub solutions: Vec<Solution>,
    pub starts: usize,
    pub converged_starts: usize,
    pub lower_bound: bool,
}

const DISK_CENTER: f64 = 0.5;
const DISK_RADIUS: f64 = 3.0;
const MAX_HALVINGS: u32 = 20;
const DIVERGED: f64 = 1e8;

fn random_start(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r = DISK_RADIUS * rng.gen::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.gen::<f64>();
            Complex64::new(DISK_CENTER, 0.0) + Complex64::from_polar(r, theta)
        })
        .collect()
}

fn newton(compiled: &Compiled, mut x: Vec<Complex64>, cfg: &SolveConfig) -> Option<Solution> {
    let mut f = compiled.values(&x);
    let mut res = max_norm(&f);
    for _ in 0..cfg.max_iterations {
        if res < cfg.tol {
            return Some(Solution { point: x, residual: res });
        }
        let rhs = nalgebra::DVector::from_iterator(f.len(), f.iter().map(|z| -z));
        let step = compiled.jacobian(&x).lu().solve(&rhs)?;
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let trial: Vec<Complex64> = x.iter().zip(step.iter()).map(|(a, d)| a + d * lambda).collect();
            let ft = compiled.values(&trial);
            let rt = max_norm(&ft);
            if rt.is_finite() && rt < res {
                accepted = Some((trial, ft, rt));
                break;
            }
            lambda /= 2.0;
        }
        let (nx, nf, nr) = accepted?;
        if nx.iter().any(|z| z.norm() > DIVERGED) {
            return None;
        }
        x = nx;
        f = nf;
        res = nr;
    }
    (res < cfg.tol).then_some(Solution { point: x, residual: res })
}

fn point_cmp(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

/// Damped Newton from `cfg.starts` random points in the disk of radius 3
/// about `1/2`, each seeded from `(cfg.seed, start index)`, so the result
/// does not depend on thread scheduling.
pub fn solve_multistart(sys: &AVSystem, cfg: &SolveConfig) -> Result<SolveReport> {
    let unknowns: Vec<String> = sys.unknowns.iter().map(|u| u.name.clone()).collect();
    if sys.is_empty() {
        return Ok(SolveReport {
            unknowns,
            solutions: vec![Solution { point: Vec::new(), residual: 0.0 }],
            starts: 0,
            converged_starts: 0,
            lower_bound: true,
        });
    }
    let compiled = Compiled::new(sys);
    let n = sys.unknowns.len();
    let converged: Vec<Solution> = (0..cfg.starts)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(k as u64);
            newton(&compiled, random_start(&mut rng, n), cfg)
        })
        .collect();
    if converged.is_empty() {
        return Err(Error::NoConvergence);
    }
    let mut distinct: Vec<Solution> = Vec::new();
    for sol in &converged {
        let close = |other: &Solution| {
            sol.point.iter().zip(&other.point).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) <= cfg.dedup_radius
        };
        if !distinct.iter().any(close) {
            distinct.push(sol.clone());
        }
    }
    distinct.sort_by(|a, b| point_cmp(&a.point, &b.point));
    Ok(SolveReport {
        unknowns,
        solutions: distinct,
        starts: cfg.starts,
        converged_starts: converged.len(),
        lower_bound: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(lit: &str) -> WeightedType {
        WeightedType::parse(lit).unwrap()
    }

    fn text(sys: &AVSystem) -> Vec<String> {
        sys.equations.iter().map(|e| sys.render_equation(e)).collect()
    }

    #[test]
    fn reference_system() {
        let sys = build_system(&ty("1,2,4|2,5"));
        assert_eq!(text(&sys), ["2a_1+a_2−2b−5=0", "2a_1²+a_2²−2b²−5=0", "2a_1³+a_2³−2b³−5=0"]);
        assert_eq!(sys.bezout_bound(), 6.into());
    }

    #[test]
    fn raw_system_matches_coefficients() {
        let sys = build_system(&ty("1,2,4|2,5"));
        let raw: Vec<String> = sys.raw_equations().iter().map(|e| sys.render_equation(e)).collect();
        assert_eq!(raw, ["2a_1+a_2−2b−5=0", "a_1²+2a_1a_2−b²−10b−10=0", "a_1²a_2−5b²−20b−10=0"]);
        assert!(sys.reduction_report().iter().all(|c| c.holds));
    }

    #[test]
    fn reduction_holds_with_fractions_and_ties() {
        for lit in ["1/2,3/2|2", "1,1,2|1,3", "1,4|2,3", "2,2|1,1,2"] {
            assert!(build_system(&ty(lit)).reduction_report().iter().all(|c| c.holds), "{lit}");
        }
    }

    #[test]
    fn small_systems() {
        let sys = build_system(&ty("1,2|3"));
        assert_eq!(text(&sys), ["a−3=0"]);
        let report = solve_multistart(&sys, &SolveConfig { starts: 20, ..Default::default() }).unwrap();
        assert_eq!(report.solutions.len(), 1);
        assert!((report.solutions[0].point[0] - Complex64::new(3.0, 0.0)).norm() < 1e-9);

        let sys = build_system(&ty("4|4"));
        assert!(sys.is_empty());
        assert_eq!(solve_multistart(&sys, &SolveConfig::default()).unwrap().solutions.len(), 1);
    }

    #[test]
    fn two_by_two() {
        let sys = build_system(&ty("1,4|2,3"));
        let report = solve_multistart(&sys, &SolveConfig::default()).unwrap();
        assert_eq!(report.solutions.len(), 2);
        for s in &report.solutions {
            assert!(sys.exact_residual(&s.point) < 1e-10);
        }
    }

    #[test]
    fn deterministic_across_pools() {
        let sys = build_system(&ty("1,2,4|2,5"));
        let cfg = SolveConfig { starts: 100, ..Default::default() };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| solve_multistart(&sys, &cfg)).unwrap();
        let b = four.install(|| solve_multistart(&sys, &cfg)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn no_convergence_is_reported() {
        let sys = build_system(&ty("1,2,4|2,5"));
        let cfg = SolveConfig { starts: 3, max_iterations: 0, ..Default::default() };
        assert_eq!(solve_multistart(&sys, &cfg), Err(Error::NoConvergence));
    }

    #[test]
    fn generalized_binomial() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(binomial(&half, 2), BigRational::new((-1).into(), 8.into()));
        assert_eq!(binomial(&BigRational::from_integer(5.into()), 2), BigRational::from_integer(10.into()));
    }
}
