//! Sparse multivariate polynomials with exact rational coefficients, and the
//! polynomials `q_i` expressing power sums through elementary coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponents as sorted `(variable, power)` pairs with non-zero powers.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(usize, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(index: usize, power: u32) -> Self {
        if power == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(index, power)])
        }
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (v, p) in powers {
            *acc.entry(v).or_insert(0) += p;
        }
        Monomial(acc.into_iter().filter(|&(_, p)| p > 0).collect())
    }

    pub fn powers(&self) -> &[(usize, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, p)| p).sum()
    }

    /// Degree when variable `i` has weight `i + 1`, as `x_{i+1}` does in `q_n`.
    pub fn weighted_degree(&self) -> u32 {
        self.0.iter().map(|&(v, p)| (v as u32 + 1) * p).sum()
    }

    pub fn power_of(&self, var: usize) -> u32 {
        self.0.iter().find(|&&(v, _)| v == var).map_or(0, |&(_, p)| p)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.0.iter().chain(&other.0).copied())
    }

    /// Display order: by degree, then larger powers of lower-indexed
    /// variables first.
    fn display_key(&self, ascending: bool) -> (i64, std::cmp::Reverse<Vec<u32>>) {
        let top = self.0.last().map_or(0, |&(v, _)| v + 1);
        let dense: Vec<u32> = (0..top).map(|v| self.power_of(v)).collect();
        let degree = self.degree() as i64;
        (if ascending { degree } else { -degree }, std::cmp::Reverse(dense))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(BigRational::from_integer(c.into()))
    }

    pub fn var(index: usize) -> Self {
        Poly::term(BigRational::one(), Monomial::var(index, 1))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::from_int(1), |acc, _| &acc * self)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let p = m.power_of(var);
            if p == 0 {
                continue;
            }
            let rest = Monomial::from_powers(m.0.iter().map(|&(v, e)| if v == var { (v, e - 1) } else { (v, e) }));
            out.add_term(rest, c * BigRational::from_integer(p.into()));
        }
        out
    }

    /// Substitutes `values[i]` for variable `i`.
    pub fn compose(&self, values: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for &(v, p) in m.powers() {
                t = &t * &values[v].pow(p);
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates in any commutative ring, given how to embed coefficients.
    pub fn eval<T>(&self, values: &[T], embed: impl Fn(&BigRational) -> T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T>,
    {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = embed(c);
            for &(v, p) in m.powers() {
                for _ in 0..p {
                    t = t * values[v].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Renders with the given variable names in ascending degree, e.g.
    /// `3x_3−3x_1x_2+x_1³`.
    pub fn render(&self, name: &dyn Fn(usize) -> String) -> String {
        self.render_ordered(name, true)
    }

    /// Renders in descending degree, e.g. `a²+2ab−5`.
    pub fn render_descending(&self, name: &dyn Fn(usize) -> String) -> String {
        self.render_ordered(name, false)
    }

    fn render_ordered(&self, name: &dyn Fn(usize) -> String, ascending: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by_key(|(m, _)| m.display_key(ascending));
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('−'),
                (0, false) => {}
                (_, true) => out.push('−'),
                (_, false) => out.push('+'),
            }
            let magnitude = c.abs();
            let coeff =
                if magnitude.is_integer() { magnitude.to_integer().to_string() } else { format!("({magnitude})") };
            if m.powers().is_empty() {
                out.push_str(&coeff);
                continue;
            }
            if !magnitude.is_one() {
                out.push_str(&coeff);
            }
            for &(v, p) in m.powers() {
                out.push_str(&name(v));
                if p > 1 {
                    out.push_str(&superscript(p));
                }
            }
        }
        out
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string().chars().map(|d| DIGITS[d.to_digit(10).expect("decimal") as usize]).collect()
}

/// Default names `x_1, x_2, ...` for variables `0, 1, ...`.
pub fn x_name(i: usize) -> String {
    format!("x_{}", i + 1)
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&x_name))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// The polynomial `q_i` with `p_i = q_i(s_1, ..., s_i)`, where
/// `1 - s_1 x + s_2 x² - ... = prod (1 - a x)^k` and `p_i = sum k a^i`.
/// Variable `j - 1` stands for `s_j`.
///
/// Taking logarithms, `sum_i p_i x^i / i = -log(1 - u)` with
/// `u = s_1 x - s_2 x² + s_3 x³ - ...`, so `q_i` is `i` times the coefficient
/// of `x^i` in `sum_k u^k / k`.
pub fn newton_q(i: usize) -> Poly {
    assert!(i >= 1, "q_i is defined for i >= 1");
    // Truncated power series in x with polynomial coefficients.
    let u: Vec<Poly> = (0..=i)
        .map(|j| match j {
            0 => Poly::zero(),
            _ if j % 2 == 1 => Poly::var(j - 1),
            _ => -&Poly::var(j - 1),
        })
        .collect();
    let series_mul = |a: &[Poly], b: &[Poly]| -> Vec<Poly> {
        let mut out = vec![Poly::zero(); i + 1];
        for (da, pa) in a.iter().enumerate() {
            if pa.is_zero() {
                continue;
            }
            for (db, pb) in b.iter().enumerate().take(i + 1 - da) {
                if !pb.is_zero() {
                    out[da + db] = &out[da + db] + &(pa * pb);
                }
            }
        }
        out
    };
    let mut power = u.clone();
    let mut coeff = Poly::zero();
    for k in 1..=i {
        let inv_k = BigRational::new(BigInt::one(), BigInt::from(k));
        coeff = &coeff + &power[i].scale(&inv_k);
        if k < i {
            power = series_mul(&power, &u);
        }
    }
    coeff.scale(&BigRational::from_integer(BigInt::from(i)))
}
