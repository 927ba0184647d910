//! Closed-form cardinalities of types.
//!
//! For a type whose vertices are all distinguishable (a simple or labeled
//! type) the count is a signed sum over the partitions of the type into
//! matched-sum subtypes `Ξ = Ξ_1 ∪ ... ∪ Ξ_n`, each partition contributing
//!
//! ```text
//! (-1)^(n-1) * (v - 1)^(n-2) * prod_i (v_i - 1)!
//! ```
//!
//! where `v` and `v_i` are vertex counts. The `n = 1` term is `(v - 2)!`.
//!
//! Repeated weights are handled by labeling every vertex, counting the
//! labeled type `T`, and correcting for trees with rotational symmetry:
//!
//! ```text
//! |Ξ| = T / p + sum_{i >= 2} (1 - 1/i) * S_i,     p = prod m_j!
//! ```
//!
//! with `S_i` the number of classes whose automorphism group has order exactly
//! `i`. A tree with a rotation of order `i` is determined by its quotient, a
//! tree of the quotient type `Ξ/i` with the rotation center marked, so the
//! number `U_i` of classes with `i | order` is itself the cardinality of a
//! type with one distinguished vertex; `S_i` follows by Möbius inversion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::types::{Color, LabeledType, WeightedType};
use crate::weight::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub simple: bool,
    pub decomposable: bool,
}

/// Simple: weights pairwise distinct within each color. Decomposable: some
/// proper non-empty set of white weights has the same sum as some set of
/// black weights.
pub fn classify(ty: &WeightedType) -> Classification {
    let scaled = ScaledWeights::new(ty.white(), ty.black());
    let full_w = (1u64 << ty.s()) - 1;
    let white_sums: std::collections::HashSet<i64> = (1..full_w).map(|m| scaled.white_sum(m)).collect();
    let full_b = (1u64 << ty.t()) - 1;
    let decomposable = (1..full_b).any(|m| white_sums.contains(&scaled.black_sum(m)));
    Classification { simple: ty.is_simple(), decomposable }
}

/// A subtype given by vertex indices into a labeled type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Subtype {
    pub white: Vec<usize>,
    pub black: Vec<usize>,
}

impl Subtype {
    pub fn vertex_count(&self) -> usize {
        self.white.len() + self.black.len()
    }
}

/// Matched-sum subtypes covering a labeled type, ordered by smallest white index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TypePartition {
    pub parts: Vec<Subtype>,
}

impl TypePartition {
    /// Text form such as `⟨7|7⟩ ∪ ⟨1,5|2,4⟩`.
    pub fn render(&self, labeled: &LabeledType) -> String {
        self.parts
            .iter()
            .map(|part| {
                let side = |color, idx: &[usize]| {
                    idx.iter().map(|&i| labeled.vertex_name(color, i)).collect::<Vec<_>>().join(",")
                };
                format!("⟨{}|{}⟩", side(Color::White, &part.white), side(Color::Black, &part.black))
            })
            .collect::<Vec<_>>()
            .join(" ∪ ")
    }
}

/// Integer images of the weights, scaled by their common rational divisor,
/// so that subset sums are exact machine integers.
struct ScaledWeights {
    white: Vec<i64>,
    black: Vec<i64>,
}

impl ScaledWeights {
    fn new(white: &[Weight], black: &[Weight]) -> Self {
        assert!(white.len() < 64 && black.len() < 64, "at most 63 vertices per color");
        let unit = Weight::gcd_of(white.iter().chain(black).copied()).expect("non-empty");
        let scale = |ws: &[Weight]| ws.iter().map(|w| w.multiple_of(unit).expect("gcd divides")).collect();
        ScaledWeights { white: scale(white), black: scale(black) }
    }

    fn white_sum(&self, mask: u64) -> i64 {
        bits(mask).map(|i| self.white[i]).sum()
    }

    fn black_sum(&self, mask: u64) -> i64 {
        bits(mask).map(|i| self.black[i]).sum()
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

/// Non-empty submasks of `mask`.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut sub = mask;
    let mut done = mask == 0;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let cur = sub;
        sub = (sub - 1) & mask;
        done = sub == 0;
        Some(cur)
    })
}

/// All partitions of a labeled type into matched-sum subtypes, including the
/// trivial one.
pub fn enumerate_partitions(labeled: &LabeledType) -> Vec<TypePartition> {
    let scaled = ScaledWeights::new(&labeled.white_weights(), &labeled.black_weights());
    let (s, t) = (labeled.white.len(), labeled.black.len());
    let mut out = Vec::new();
    let mut parts = Vec::new();
    partitions_rec(&scaled, (1u64 << s) - 1, (1u64 << t) - 1, &mut parts, &mut out);
    out.sort();
    out
}

fn partitions_rec(scaled: &ScaledWeights, mw: u64, mb: u64, parts: &mut Vec<Subtype>, out: &mut Vec<TypePartition>) {
    if mw == 0 && mb == 0 {
        out.push(TypePartition { parts: parts.clone() });
        return;
    }
    if mw == 0 || mb == 0 {
        return;
    }
    let low = mw & mw.wrapping_neg();
    for a in submasks(mw & !low).chain(std::iter::once(0)).map(|rest| rest | low) {
        let target = scaled.white_sum(a);
        for b in submasks(mb).filter(|&b| scaled.black_sum(b) == target) {
            parts.push(Subtype { white: bits(a).collect(), black: bits(b).collect() });
            partitions_rec(scaled, mw & !a, mb & !b, parts, out);
            parts.pop();
        }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Signed contribution of one partition of a type with `v` vertices.
pub fn partition_summand(v: usize, partition: &TypePartition) -> BigRational {
    let n = partition.parts.len() as i32;
    let product: BigInt = partition.parts.iter().map(|p| factorial(p.vertex_count() - 1)).product();
    let base = BigRational::from_integer(BigInt::from(v - 1));
    let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    BigRational::from_integer(sign * product) * base.pow(n - 2)
}

fn to_count(value: BigRational) -> Result<BigInt> {
    if value.is_integer() && !value.is_negative() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegerResult(value.to_string()))
    }
}

/// Cardinality of a labeled type by summing over an explicit partition list.
pub fn cardinality_by_listing(labeled: &LabeledType) -> Result<BigInt> {
    let v = labeled.vertex_count();
    to_count(enumerate_partitions(labeled).iter().map(|p| partition_summand(v, p)).sum())
}

/// Cardinality of a labeled (hence simple) type.
///
/// Evaluated as a dynamic program over pairs of balanced vertex subsets,
/// accumulating `prod (v_i - 1)!` by number of parts, which avoids listing
/// partitions one by one.
pub fn cardinality_labeled(labeled: &LabeledType) -> Result<BigInt> {
    let scaled = ScaledWeights::new(&labeled.white_weights(), &labeled.black_weights());
    let (s, t) = (labeled.white.len(), labeled.black.len());
    let v = s + t;
    let mut memo: HashMap<(u64, u64), Vec<BigInt>> = HashMap::new();
    let by_parts = parts_polynomial(&scaled, (1u64 << s) - 1, (1u64 << t) - 1, &mut memo);
    let base = BigRational::from_integer(BigInt::from(v - 1));
    let mut total = BigRational::zero();
    for (n, coeff) in by_parts.iter().enumerate().skip(1) {
        if coeff.is_zero() {
            continue;
        }
        let sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        total += BigRational::from_integer(sign * coeff) * base.pow(n as i32 - 2);
    }
    to_count(total)
}

/// Coefficient `k` is the sum over partitions of the vertex set `(mw, mb)`
/// into exactly `k` matched-sum parts of `prod (v_i - 1)!`.
fn parts_polynomial(
    scaled: &ScaledWeights,
    mw: u64,
    mb: u64,
    memo: &mut HashMap<(u64, u64), Vec<BigInt>>,
) -> Vec<BigInt> {
    if mw == 0 && mb == 0 {
        return vec![BigInt::one()];
    }
    if let Some(hit) = memo.get(&(mw, mb)) {
        return hit.clone();
    }
    let mut result: Vec<BigInt> = Vec::new();
    if mw != 0 && mb != 0 {
        let mut black_by_sum: HashMap<i64, Vec<u64>> = HashMap::new();
        for b in submasks(mb) {
            black_by_sum.entry(scaled.black_sum(b)).or_default().push(b);
        }
        let low = mw & mw.wrapping_neg();
        for a in submasks(mw & !low).chain(std::iter::once(0)).map(|rest| rest | low) {
            let Some(matches) = black_by_sum.get(&scaled.white_sum(a)) else { continue };
            for &b in matches {
                let rest = parts_polynomial(scaled, mw & !a, mb & !b, memo);
                if rest.iter().all(Zero::is_zero) {
                    continue;
                }
                let weight = factorial((a.count_ones() + b.count_ones()) as usize - 1);
                if result.len() < rest.len() + 1 {
                    result.resize(rest.len() + 1, BigInt::zero());
                }
                for (k, c) in rest.iter().enumerate() {
                    result[k + 1] += &weight * c;
                }
            }
        }
    }
    memo.insert((mw, mb), result.clone());
    result
}

/// Cardinality of a simple type.
pub fn cardinality_simple(ty: &WeightedType) -> Result<BigInt> {
    if !ty.is_simple() {
        return Err(Error::NotSimple);
    }
    cardinality_labeled(&LabeledType::from_type(ty))
}

/// The labeled version of a type and its label factor `p = prod m_i! prod n_j!`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTypeInfo {
    pub labeled: LabeledType,
    pub p: BigInt,
    pub white_multiplicities: Vec<(Weight, usize)>,
    pub black_multiplicities: Vec<(Weight, usize)>,
}

fn multiplicities(ws: &[Weight]) -> Vec<(Weight, usize)> {
    let mut out: Vec<(Weight, usize)> = Vec::new();
    for &w in ws {
        match out.last_mut() {
            Some((last, count)) if *last == w => *count += 1,
            _ => out.push((w, 1)),
        }
    }
    out
}

pub fn derivative_type(ty: &WeightedType) -> DerivedTypeInfo {
    let white_multiplicities = multiplicities(ty.white());
    let black_multiplicities = multiplicities(ty.black());
    let p = white_multiplicities.iter().chain(&black_multiplicities).map(|&(_, m)| factorial(m)).product();
    DerivedTypeInfo { labeled: LabeledType::from_type(ty), p, white_multiplicities, black_multiplicities }
}

/// A way for trees of a type to carry a rotation of order `order`: the center
/// class and the quotient type, in which the center weight is divided by
/// `order` and every other class multiplicity as well.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientConstruction {
    pub order: u64,
    pub center_color: Color,
    pub center_weight: Weight,
    #[serde(serialize_with = "serialize_literal")]
    pub quotient: WeightedType,
    pub center_weight_in_quotient: Weight,
}

fn serialize_literal<S: serde::Serializer>(ty: &WeightedType, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&ty.literal())
}

/// A type with at most one distinguished vertex. The marked vertex is one of
/// the type's vertices of the given color and weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct MarkedType {
    ty: WeightedType,
    mark: Option<(Color, Weight)>,
}

/// Vertex class: color, weight, and whether it is the marked vertex.
type ClassKey = (Color, Weight, bool);

impl MarkedType {
    fn classes(&self) -> BTreeMap<ClassKey, u64> {
        let mut classes = BTreeMap::new();
        for color in [Color::White, Color::Black] {
            for &w in self.ty.side(color) {
                *classes.entry((color, w, false)).or_insert(0) += 1;
            }
        }
        if let Some((color, w)) = self.mark {
            let plain = classes.get_mut(&(color, w, false)).expect("marked vertex belongs to the type");
            *plain -= 1;
            if *plain == 0 {
                classes.remove(&(color, w, false));
            }
            classes.insert((color, w, true), 1);
        }
        classes
    }

    fn label_factor(&self) -> BigInt {
        self.classes().values().map(|&m| factorial(m as usize)).product()
    }

    /// Quotients by rotations of order `i`, each with its center marked.
    fn quotients(&self, i: u64) -> Vec<(QuotientConstruction, MarkedType)> {
        let classes = self.classes();
        let unit = self.ty.weight_gcd();
        let mut out = Vec::new();
        for (&(color, w, marked), &mult) in &classes {
            if mult % i != 1 % i {
                continue;
            }
            if classes.iter().any(|(&key, &m)| key != (color, w, marked) && m % i != 0) {
                continue;
            }
            let reduced = w.div_int(i as i64);
            if reduced.multiple_of(unit).is_none() {
                continue;
            }
            let mut white = Vec::new();
            let mut black = Vec::new();
            for (&(c, cw, cm), &m) in &classes {
                let copies = if (c, cw, cm) == (color, w, marked) { (m - 1) / i } else { m / i };
                let side = if c == Color::White { &mut white } else { &mut black };
                side.extend(std::iter::repeat_n(cw, copies as usize));
            }
            if color == Color::White { &mut white } else { &mut black }.push(reduced);
            let quotient = WeightedType::new(white, black).expect("quotient sums balance");
            let construction = QuotientConstruction {
                order: i,
                center_color: color,
                center_weight: w,
                quotient: quotient.clone(),
                center_weight_in_quotient: reduced,
            };
            out.push((construction, MarkedType { ty: quotient, mark: Some((color, reduced)) }));
        }
        out
    }

    /// Largest order a rotation could have: the center's weight in units of
    /// the weight gcd.
    fn max_order(&self) -> u64 {
        let unit = self.ty.weight_gcd();
        self.ty.white().iter().chain(self.ty.black()).filter_map(|w| w.multiple_of(unit)).max().unwrap_or(1) as u64
    }
}

/// Constructions of order `i` whose center class satisfies the multiplicity
/// and divisibility conditions.
pub fn quotient_constructions(ty: &WeightedType, i: u64) -> Vec<QuotientConstruction> {
    assert!(i >= 2, "rotation order must be at least 2");
    MarkedType { ty: ty.clone(), mark: None }.quotients(i).into_iter().map(|(c, _)| c).collect()
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Full breakdown of a cardinality computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountBreakdown {
    /// Count of the labeled type.
    pub labeled_count: BigInt,
    pub p: BigInt,
    /// `U_i`: classes whose automorphism order is divisible by `i`.
    pub divisible_counts: BTreeMap<u64, BigInt>,
    /// `S_i`: classes whose automorphism order is exactly `i`, for `i >= 2`.
    pub exact_counts: BTreeMap<u64, BigInt>,
    pub cardinality: BigInt,
}

impl CountBreakdown {
    /// Labeled trees without symmetry, `N = T - sum_i M_i`.
    pub fn nonsymmetric_labeled(&self) -> BigInt {
        &self.labeled_count - self.symmetric_labeled().values().sum::<BigInt>()
    }

    /// Labeled trees with symmetry of exact order `i`, `M_i = (p / i) S_i`.
    pub fn symmetric_labeled(&self) -> BTreeMap<u64, BigInt> {
        self.exact_counts.iter().map(|(&i, s)| (i, &self.p / BigInt::from(i) * s)).collect()
    }
}

type Memo = HashMap<MarkedType, BigInt>;

fn breakdown_marked(m: &MarkedType, memo: &mut Memo) -> Result<CountBreakdown> {
    let labeled_count = cardinality_labeled(&LabeledType::from_type(&m.ty))?;
    let p = m.label_factor();
    let max_order = m.max_order();
    let mut divisible_counts = BTreeMap::new();
    for i in 2..=max_order {
        let mut u = BigInt::zero();
        for (_, quotient) in m.quotients(i) {
            u += count_marked(&quotient, memo)?;
        }
        if !u.is_zero() {
            divisible_counts.insert(i, u);
        }
    }
    let mut exact_counts = BTreeMap::new();
    for e in 2..=max_order {
        let mut s = BigInt::zero();
        let mut k = 1;
        while e * k <= max_order {
            if let Some(u) = divisible_counts.get(&(e * k)) {
                s += u * mobius(k);
            }
            k += 1;
        }
        if s.is_negative() {
            return Err(Error::NonIntegerResult(format!("negative symmetric count {s} for order {e}")));
        }
        if !s.is_zero() {
            exact_counts.insert(e, s);
        }
    }
    let mut total = BigRational::new(labeled_count.clone(), p.clone());
    for (&i, s) in &exact_counts {
        total += BigRational::new(s * BigInt::from(i - 1), BigInt::from(i));
    }
    let cardinality = to_count(total)?;
    Ok(CountBreakdown { labeled_count, p, divisible_counts, exact_counts, cardinality })
}

fn count_marked(m: &MarkedType, memo: &mut Memo) -> Result<BigInt> {
    if let Some(hit) = memo.get(m) {
        return Ok(hit.clone());
    }
    let c = breakdown_marked(m, memo)?.cardinality;
    memo.insert(m.clone(), c.clone());
    Ok(c)
}

/// Number of isotopy classes with automorphism order exactly `i`, for each
/// `i >= 2` that occurs.
pub fn symmetric_counts_via_quotients(ty: &WeightedType) -> Result<BTreeMap<u64, BigInt>> {
    Ok(count_breakdown(ty)?.exact_counts)
}

pub fn count_breakdown(ty: &WeightedType) -> Result<CountBreakdown> {
    breakdown_marked(&MarkedType { ty: ty.clone(), mark: None }, &mut Memo::new())
}

/// Number of w-trees of `ty` up to isotopy.
pub fn cardinality(ty: &WeightedType) -> Result<BigInt> {
    if ty.is_simple() {
        return cardinality_simple(ty);
    }
    Ok(count_breakdown(ty)?.cardinality)
}

/// Human-readable trace of a count: every partition with its summand and,
/// for non-simple types, the symmetry correction.
#[derive(Debug, Clone)]
pub struct Explanation {
    pub ty: WeightedType,
    pub classification: Classification,
    pub labeled: LabeledType,
    pub partitions: Vec<(TypePartition, BigRational)>,
    pub breakdown: CountBreakdown,
}

pub fn explain(ty: &WeightedType) -> Result<Explanation> {
    let labeled = LabeledType::from_type(ty);
    let v = labeled.vertex_count();
    let partitions = enumerate_partitions(&labeled)
        .into_iter()
        .map(|p| {
            let summand = partition_summand(v, &p);
            (p, summand)
        })
        .collect();
    Ok(Explanation {
        ty: ty.clone(),
        classification: classify(ty),
        labeled,
        partitions,
        breakdown: count_breakdown(ty)?,
    })
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.classification;
        writeln!(f, "type {}: simple={}, decomposable={}", self.ty, c.simple, c.decomposable)?;
        if !c.simple {
            writeln!(f, "labeled type: {}", render_labeled(&self.labeled))?;
        }
        writeln!(f, "partitions ({}):", self.partitions.len())?;
        for (p, summand) in &self.partitions {
            writeln!(f, "  {:>12}  {}", summand.to_string(), p.render(&self.labeled))?;
        }
        let b = &self.breakdown;
        if !c.simple {
            writeln!(f, "T = {}", b.labeled_count)?;
            writeln!(f, "p = {}", b.p)?;
            for (i, s) in &b.exact_counts {
                writeln!(f, "S_{i} = {s}")?;
            }
            writeln!(f, "N = {}", b.nonsymmetric_labeled())?;
            for (i, m) in b.symmetric_labeled() {
                writeln!(f, "M_{i} = {m}")?;
            }
        }
        write!(f, "count = {}", b.cardinality)
    }
}

fn render_labeled(labeled: &LabeledType) -> String {
    let side = |color, n: usize| (0..n).map(|i| labeled.vertex_name(color, i)).collect::<Vec<_>>().join(",");
    format!("⟨{}|{}⟩", side(Color::White, labeled.white.len()), side(Color::Black, labeled.black.len()))
}

/// Exact rational to `f64`, for display only.
pub fn approx(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(lit: &str) -> WeightedType {
        WeightedType::parse(lit).unwrap()
    }

    fn count(lit: &str) -> BigInt {
        cardinality(&ty(lit)).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&ty("5,12|1,7,9")), Classification { simple: true, decomposable: false });
        assert_eq!(classify(&ty("7,5,1|7,4,2")), Classification { simple: true, decomposable: true });
        assert!(!classify(&ty("6,1,1,1|3,3,3")).simple);
        assert!(!classify(&ty("6|1,2,3")).decomposable);
    }

    #[test]
    fn partition_listings() {
        let lt = |s: &str| LabeledType::from_type(&ty(s));
        let p = enumerate_partitions(&lt("3,2,1|3,2,1"));
        assert_eq!(p.len(), 6);
        let rendered: Vec<String> = p.iter().map(|x| x.render(&lt("3,2,1|3,2,1"))).collect();
        assert!(rendered.contains(&"⟨1,2|3⟩ ∪ ⟨3|1,2⟩".to_string()), "{rendered:?}");
        let p = enumerate_partitions(&lt("7,5,1|7,4,2"));
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].render(&lt("7,5,1|7,4,2")), "⟨1,5|2,4⟩ ∪ ⟨7|7⟩");
        assert_eq!(enumerate_partitions(&lt("5,12|1,7,9")).len(), 1);
    }

    #[test]
    fn partitions_are_distinct() {
        let lt = LabeledType::from_type(&ty("1,1,2,2|1,1,2,2"));
        let p = enumerate_partitions(&lt);
        let set: std::collections::BTreeSet<_> = p.iter().collect();
        assert_eq!(set.len(), p.len());
        assert_eq!(enumerate_partitions(&lt), p);
    }

    #[test]
    fn simple_counts() {
        assert_eq!(count("4,2,1|4,2,1"), 11.into());
        assert_eq!(count("3,2,1|3,2,1"), 7.into());
        assert_eq!(count("1,3,11|4,5,6"), 20.into());
        assert_eq!(count("7,5,1|7,4,2"), 18.into());
        assert_eq!(count("1,2,4|2,5"), 4.into());
        assert_eq!(count("5,12|1,7,9"), 6.into());
        assert_eq!(count("3|3"), 1.into());
    }

    #[test]
    fn dynamic_program_agrees_with_listing() {
        for lit in ["4,2,1|4,2,1", "1,2,6,10|4,5,10", "1,1,1,6|3,3,3", "1,1,2,2|1,1,2,2", "1,1,1|1,1,1", "2,3|1,4"] {
            let lt = LabeledType::from_type(&ty(lit));
            assert_eq!(cardinality_labeled(&lt).unwrap(), cardinality_by_listing(&lt).unwrap(), "{lit}");
        }
    }

    #[test]
    fn summand_of_trivial_partition() {
        let trivial = TypePartition { parts: vec![Subtype { white: vec![0, 1], black: vec![0, 1, 2] }] };
        assert_eq!(partition_summand(5, &trivial), BigRational::from_integer(6.into()));
    }

    #[test]
    fn not_simple_is_rejected() {
        assert_eq!(cardinality_simple(&ty("1,1|2")), Err(Error::NotSimple));
    }

    #[test]
    fn derivative_label_factor() {
        assert_eq!(derivative_type(&ty("6,1,1,1|3,3,3")).p, 36.into());
        assert_eq!(derivative_type(&ty("5,2,1,1|3,3,3")).p, 12.into());
        assert_eq!(derivative_type(&ty("5,12|1,7,9")).p, 1.into());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_constructions(&ty("6,1,1,1|3,3,3"), 3);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].center_color, Color::White);
        assert_eq!(q[0].center_weight, Weight::integer(6));
        assert_eq!(q[0].quotient, ty("2,1|3"));
        assert!(quotient_constructions(&ty("6,1,1,1|3,3,3"), 2).is_empty());
        let q = quotient_constructions(&ty("2|1,1"), 2);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].quotient, ty("1|1"));
    }

    #[test]
    fn non_simple_counts() {
        let b = count_breakdown(&ty("6,1,1,1|3,3,3")).unwrap();
        assert_eq!(b.labeled_count, 84.into());
        assert_eq!(b.exact_counts, [(3, 1.into())].into());
        assert_eq!(b.nonsymmetric_labeled(), 72.into());
        assert_eq!(b.symmetric_labeled(), [(3, 12.into())].into());
        assert_eq!(b.cardinality, 3.into());

        let b = count_breakdown(&ty("5,2,1,1|3,3,3")).unwrap();
        assert_eq!(b.labeled_count, 48.into());
        assert!(b.exact_counts.is_empty());
        assert_eq!(b.cardinality, 4.into());

        assert_eq!(symmetric_counts_via_quotients(&ty("2|1,1")).unwrap(), [(2, 1.into())].into());
        assert_eq!(count("1,1|1,1"), 0.into());
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(got, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }
}
