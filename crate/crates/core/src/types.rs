//! Types of w-trees: the white and black weight multisets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::Weight;

/// Vertex color. White sorts before black.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::White => "white",
            Color::Black => "black",
        })
    }
}

/// A type `<k_1,...,k_s | l_1,...,l_t>`: two non-empty multisets of positive
/// weights with equal sums, each kept in non-decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedType {
    white: Vec<Weight>,
    black: Vec<Weight>,
}

/// Builds a normalized type from weight lists given in any order.
pub fn validate_type(white: &[Weight], black: &[Weight]) -> Result<WeightedType> {
    WeightedType::new(white.to_vec(), black.to_vec())
}

impl WeightedType {
    pub fn new(mut white: Vec<Weight>, mut black: Vec<Weight>) -> Result<Self> {
        if white.is_empty() {
            return Err(Error::EmptySide(Color::White));
        }
        if black.is_empty() {
            return Err(Error::EmptySide(Color::Black));
        }
        if let Some(&w) = white.iter().chain(&black).find(|w| !w.is_positive()) {
            return Err(Error::NonPositiveWeight(w));
        }
        let ws = checked_sum(&white)?;
        let bs = checked_sum(&black)?;
        if ws != bs {
            return Err(Error::SumMismatch { white: ws, black: bs });
        }
        white.sort();
        black.sort();
        Ok(WeightedType { white, black })
    }

    pub fn from_integers(white: &[i64], black: &[i64]) -> Result<Self> {
        WeightedType::new(
            white.iter().map(|&w| Weight::integer(w)).collect(),
            black.iter().map(|&w| Weight::integer(w)).collect(),
        )
    }

    pub fn white(&self) -> &[Weight] {
        &self.white
    }

    pub fn black(&self) -> &[Weight] {
        &self.black
    }

    pub fn side(&self, color: Color) -> &[Weight] {
        match color {
            Color::White => &self.white,
            Color::Black => &self.black,
        }
    }

    /// Number of white vertices.
    pub fn s(&self) -> usize {
        self.white.len()
    }

    /// Number of black vertices.
    pub fn t(&self) -> usize {
        self.black.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.s() + self.t()
    }

    /// The common sum of white and black weights.
    pub fn total(&self) -> Weight {
        self.white.iter().copied().sum()
    }

    /// All white weights pairwise distinct and all black weights pairwise distinct.
    pub fn is_simple(&self) -> bool {
        fn distinct(ws: &[Weight]) -> bool {
            ws.windows(2).all(|p| p[0] != p[1])
        }
        distinct(&self.white) && distinct(&self.black)
    }

    pub fn is_integral(&self) -> bool {
        self.white.iter().chain(&self.black).all(|w| w.is_integer())
    }

    /// Greatest common rational divisor of every weight in the type.
    pub fn weight_gcd(&self) -> Weight {
        Weight::gcd_of(self.white.iter().chain(&self.black).copied()).expect("type is non-empty")
    }

    /// ASCII literal form `k1,k2|l1,l2`.
    pub fn literal(&self) -> String {
        format!("{}|{}", join(&self.white), join(&self.black))
    }

    /// Parses an ASCII literal `k1,...,ks|l1,...,lt`. Weights are decimal
    /// integers or `p/q` fractions. Surrounding `<`/`>` or angle brackets are
    /// accepted. Errors carry the 1-based column of the offending token.
    pub fn parse(literal: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = literal.chars().enumerate().collect();
        let mut lo = 0;
        let mut hi = chars.len();
        while lo < hi && chars[lo].1.is_whitespace() {
            lo += 1;
        }
        while hi > lo && chars[hi - 1].1.is_whitespace() {
            hi -= 1;
        }
        if lo < hi && matches!(chars[lo].1, '<' | '⟨') {
            lo += 1;
        }
        if hi > lo && matches!(chars[hi - 1].1, '>' | '⟩') {
            hi -= 1;
        }
        let body = &chars[lo..hi];
        let bars: Vec<usize> = (0..body.len()).filter(|&i| body[i].1 == '|').collect();
        match bars.as_slice() {
            [] => {
                return Err(Error::Parse {
                    column: body.last().map_or(1, |c| c.0 + 2),
                    message: "expected `|` between white and black weights".into(),
                })
            }
            [_] => {}
            [_, second, ..] => {
                return Err(Error::Parse { column: body[*second].0 + 1, message: "more than one `|`".into() })
            }
        }
        let bar = bars[0];
        let white = parse_side(&body[..bar], body.get(bar).map_or(1, |c| c.0 + 1))?;
        let black = parse_side(&body[bar + 1..], body[bar].0 + 2)?;
        WeightedType::new(white, black).map_err(|e| match e {
            Error::NonPositiveWeight(w) => {
                let column = locate_weight(body, w).unwrap_or(1);
                Error::Parse { column, message: format!("weight {w} is not positive") }
            }
            other => other,
        })
    }
}

fn checked_sum(ws: &[Weight]) -> Result<Weight> {
    ws.iter().try_fold(Weight::default(), |acc, &w| acc.checked_add(w)).ok_or(Error::Overflow)
}

fn join(ws: &[Weight]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_side(chars: &[(usize, char)], empty_column: usize) -> Result<Vec<Weight>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..=chars.len() {
        if i == chars.len() || chars[i].1 == ',' {
            let token: String = chars[start..i].iter().map(|c| c.1).collect();
            let column = chars
                .get(start..i)
                .and_then(|tok| tok.iter().find(|c| !c.1.is_whitespace()))
                .or_else(|| chars.get(start))
                .map_or(empty_column, |c| c.0 + 1);
            if token.trim().is_empty() {
                return Err(Error::Parse { column, message: "missing weight".into() });
            }
            let w = token
                .parse::<Weight>()
                .map_err(|_| Error::Parse { column, message: format!("invalid weight `{}`", token.trim()) })?;
            out.push(w);
            start = i + 1;
        }
    }
    Ok(out)
}

fn locate_weight(chars: &[(usize, char)], w: Weight) -> Option<usize> {
    let text: String = chars.iter().map(|c| c.1).collect();
    let mut offset = 0;
    for tok in text.split([',', '|']) {
        if tok.parse::<Weight>().ok() == Some(w) {
            let lead = tok.len() - tok.trim_start().len();
            return Some(chars[offset + lead].0 + 1);
        }
        offset += tok.chars().count() + 1;
    }
    None
}

impl FromStr for WeightedType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        WeightedType::parse(s)
    }
}

impl fmt::Display for WeightedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}|{}⟩", join(&self.white), join(&self.black))
    }
}

/// A vertex of a labeled type: a unique label within its color and a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledVertex {
    pub label: u32,
    pub weight: Weight,
}

/// A type whose vertices carry distinct labels, so every vertex is
/// distinguishable and the type counts as simple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledType {
    pub white: Vec<LabeledVertex>,
    pub black: Vec<LabeledVertex>,
}

impl LabeledType {
    /// Labels the vertices of `ty` by their position within each color.
    pub fn from_type(ty: &WeightedType) -> Self {
        let label = |ws: &[Weight]| {
            ws.iter().enumerate().map(|(i, &weight)| LabeledVertex { label: i as u32, weight }).collect()
        };
        LabeledType { white: label(ty.white()), black: label(ty.black()) }
    }

    pub fn white_weights(&self) -> Vec<Weight> {
        self.white.iter().map(|v| v.weight).collect()
    }

    pub fn black_weights(&self) -> Vec<Weight> {
        self.black.iter().map(|v| v.weight).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.white.len() + self.black.len()
    }

    /// The underlying unlabeled type.
    pub fn unlabeled(&self) -> Result<WeightedType> {
        WeightedType::new(self.white_weights(), self.black_weights())
    }

    /// Renders a vertex weight with primes distinguishing repeated weights,
    /// e.g. `1`, `1′`, `1″`.
    pub fn vertex_name(&self, color: Color, index: usize) -> String {
        let side = match color {
            Color::White => &self.white,
            Color::Black => &self.black,
        };
        let w = side[index].weight;
        let rank = side[..index].iter().filter(|v| v.weight == w).count();
        let marks = match rank {
            0 => String::new(),
            1 => "′".into(),
            2 => "″".into(),
            3 => "‴".into(),
            k => format!("^({k})"),
        };
        format!("{w}{marks}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_one_type_is_valid() {
        let ty = WeightedType::from_integers(&[12, 5], &[9, 1, 7]).unwrap();
        assert_eq!(ty.total(), Weight::integer(17));
        assert_eq!(ty.vertex_count(), 5);
        assert_eq!(ty.literal(), "5,12|1,7,9");
        assert!(ty.is_simple());
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(WeightedType::from_integers(&[1], &[2]), Err(Error::SumMismatch { .. })));
        assert!(matches!(WeightedType::from_integers(&[0, 3], &[3]), Err(Error::NonPositiveWeight(_))));
        assert!(matches!(WeightedType::from_integers(&[], &[3]), Err(Error::EmptySide(Color::White))));
        assert!(matches!(WeightedType::from_integers(&[3], &[]), Err(Error::EmptySide(Color::Black))));
    }

    #[test]
    fn parse_literals() {
        let ty = WeightedType::parse("6,1,1,1|3,3,3").unwrap();
        assert_eq!(ty.literal(), "1,1,1,6|3,3,3");
        assert!(!ty.is_simple());
        let ty = WeightedType::parse("⟨1/2, 1/2 | 1⟩").unwrap();
        assert_eq!(ty.white(), &[Weight::new(1, 2), Weight::new(1, 2)]);
        assert_eq!(WeightedType::parse("<3|3>").unwrap().literal(), "3|3");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let col = |s: &str| match WeightedType::parse(s) {
            Err(Error::Parse { column, .. }) => column,
            other => panic!("expected parse error for {s:?}, got {other:?}"),
        };
        assert_eq!(col("1,x|1"), 3);
        assert_eq!(col("1,2"), 4);
        assert_eq!(col("1|1|1"), 4);
        assert_eq!(col("1,,2|3"), 3);
        assert_eq!(col("3,0|3"), 3);
        assert!(matches!(WeightedType::parse("1|2"), Err(Error::SumMismatch { .. })));
    }

    #[test]
    fn labeled_names_use_primes() {
        let ty = WeightedType::parse("6,1,1,1|3,3,3").unwrap();
        let lt = LabeledType::from_type(&ty);
        let names: Vec<_> = (0..4).map(|i| lt.vertex_name(Color::White, i)).collect();
        assert_eq!(names, ["1", "1′", "1″", "6"]);
    }
}
