//! Named models and their Chow-group bases, plus the class types.
//!
//! Basis layout for a model with `k` blowup points:
//!
//! | side | divisors                                   | curves                                   |
//! |------|--------------------------------------------|------------------------------------------|
//! | P3   | `H, E_1..E_k [, F12..F34]`                 | `h, e_1..e_k [, f12..f34]`               |
//! | Cube | `H1,H2,H3, E_1..E_k [, F13,F15,F35,F24,F26,F46]` | `h12,h13,h23, e_1..e_k [, f..]`    |
//!
//! The first four P3 points are the torus-fixed points `p123, p124, p134,
//! p234`; the first two cube points are `p135, p246`. Further points are
//! general points adjoined formally. `H1, H2, H3` pull back a point of the
//! first, second, third P¹ factor and `h_ij = H_i · H_j`, so the cube degree
//! coefficients `(d1, d2, d3)` are the coefficients of `h12, h13, h23`.

use crate::error::{Error, Result};
use crate::fan::BaseModel;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    P3,
    Cube,
}

impl Side {
    pub fn base(self) -> BaseModel {
        match self {
            Side::P3 => BaseModel::P3,
            Side::Cube => BaseModel::Cube,
        }
    }

    /// Number of degree coefficients (1 for P3, 3 for the cube).
    pub fn degree_rank(self) -> usize {
        match self {
            Side::P3 => 1,
            Side::Cube => 3,
        }
    }

    /// Number of torus-fixed blowup points available on the toric model.
    pub fn toric_points(self) -> usize {
        match self {
            Side::P3 => 4,
            Side::Cube => 2,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Side::P3 => "P3",
            Side::Cube => "CUBE",
        }
    }

    pub fn point_labels(self) -> &'static [&'static str] {
        match self {
            Side::P3 => &["123", "124", "134", "234"],
            Side::Cube => &["135", "246"],
        }
    }

    pub fn line_labels(self) -> &'static [&'static str; 6] {
        match self {
            Side::P3 => &["12", "13", "14", "23", "24", "34"],
            Side::Cube => &["13", "15", "35", "24", "26", "46"],
        }
    }

    fn degree_names(self, divisor: bool) -> Vec<String> {
        match (self, divisor) {
            (Side::P3, true) => vec!["H".into()],
            (Side::P3, false) => vec!["h".into()],
            (Side::Cube, true) => vec!["H1".into(), "H2".into(), "H3".into()],
            (Side::Cube, false) => vec!["h12".into(), "h13".into(), "h23".into()],
        }
    }
}

/// A blowup model: `side` blown up at `points` points and, if `lines`, at
/// the six invariant lines through its torus-fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Model {
    pub side: Side,
    pub points: usize,
    pub lines: bool,
}

impl Model {
    pub const fn new(side: Side, points: usize, lines: bool) -> Self {
        Model { side, points, lines }
    }

    pub const fn p3(points: usize) -> Self {
        Model::new(Side::P3, points, false)
    }

    pub const fn cube(points: usize) -> Self {
        Model::new(Side::Cube, points, false)
    }

    /// The permutohedral variety as a blowup of P³.
    pub const fn perm_p3() -> Self {
        Model::new(Side::P3, 4, true)
    }

    /// The permutohedral variety as a blowup of (P¹)³.
    pub const fn perm_cube() -> Self {
        Model::new(Side::Cube, 2, true)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lines && self.points < self.side.toric_points() {
            return Err(Error::InvalidModel(format!(
                "{} line blowups need the {} torus-fixed points blown up first",
                self.side.tag(),
                self.side.toric_points()
            )));
        }
        Ok(())
    }

    pub fn toric_points(&self) -> usize {
        self.points.min(self.side.toric_points())
    }

    pub fn formal_points(&self) -> usize {
        self.points - self.toric_points()
    }

    pub fn degree_rank(&self) -> usize {
        self.side.degree_rank()
    }

    pub fn line_count(&self) -> usize {
        if self.lines {
            6
        } else {
            0
        }
    }

    pub fn rank(&self) -> usize {
        self.degree_rank() + self.points + self.line_count()
    }

    pub fn point_slot(&self, i: usize) -> usize {
        self.degree_rank() + i
    }

    pub fn line_slot(&self, l: usize) -> usize {
        self.degree_rank() + self.points + l
    }

    fn point_name(&self, i: usize) -> String {
        match self.side.point_labels().get(i) {
            Some(l) => l.to_string(),
            None => (i + 1).to_string(),
        }
    }

    pub fn divisor_names(&self) -> Vec<String> {
        self.names(true)
    }

    pub fn curve_names(&self) -> Vec<String> {
        self.names(false)
    }

    fn names(&self, divisor: bool) -> Vec<String> {
        let (e, f) = if divisor { ("E", "F") } else { ("e", "f") };
        let mut out = self.side.degree_names(divisor);
        out.extend((0..self.points).map(|i| format!("{e}{}", self.point_name(i))));
        if self.lines {
            out.extend(self.side.line_labels().iter().map(|l| format!("{f}{l}")));
        }
        out
    }

    fn same(&self, other: &Model) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::BasisModelMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k={}", self.side.tag(), self.points)?;
        if self.lines {
            write!(f, ", lines")?;
        }
        write!(f, ")")
    }
}

fn format_terms(names: &[String], coeffs: &[i64]) -> String {
    let mut s = String::new();
    for (n, &c) in names.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        let mag = c.abs();
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        if mag != 1 {
            s.push_str(&mag.to_string());
        }
        s.push_str(n);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

macro_rules! class_type {
    ($name:ident, $names:ident) => {
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name {
            model: Model,
            coeffs: Vec<i64>,
        }

        impl $name {
            /// Signed coefficients in the model's basis.
            pub fn new(model: Model, coeffs: Vec<i64>) -> Result<Self> {
                model.validate()?;
                if coeffs.len() != model.rank() {
                    return Err(Error::BasisModelMismatch(format!(
                        "{} coefficients for {model}, which has rank {}",
                        coeffs.len(),
                        model.rank()
                    )));
                }
                Ok($name { model, coeffs })
            }

            pub fn zero(model: Model) -> Self {
                $name { model, coeffs: vec![0; model.rank()] }
            }

            /// Basis element `i`.
            pub fn basis(model: Model, i: usize) -> Self {
                let mut c = Self::zero(model);
                c.coeffs[i] = 1;
                c
            }

            /// Builds a class from `(basis name, coefficient)` terms.
            pub fn from_terms(model: Model, terms: &[(&str, i64)]) -> Result<Self> {
                let names = model.$names();
                let mut c = Self::zero(model);
                for (n, k) in terms {
                    let i = names
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| Error::BasisModelMismatch(format!("no basis element `{n}` in {model}")))?;
                    c.coeffs[i] += k;
                }
                Ok(c)
            }

            pub fn model(&self) -> Model {
                self.model
            }

            pub fn coeffs(&self) -> &[i64] {
                &self.coeffs
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                self.model.same(&other.model)?;
                Ok($name {
                    model: self.model,
                    coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
                })
            }

            pub fn scale(&self, k: i64) -> Self {
                $name { model: self.model, coeffs: self.coeffs.iter().map(|c| c * k).collect() }
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(|&c| c == 0)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", format_terms(&self.model.$names(), &self.coeffs))
            }
        }
    };
}

class_type!(DivisorClass, divisor_names);
class_type!(CurveClass, curve_names);

impl CurveClass {
    /// `β = Σ d_j h_j − Σ a_i e_i − Σ b_l f_l`, in the sign convention used
    /// throughout: degrees positive, multiplicities subtracted.
    pub fn from_parts(model: Model, degrees: &[i64], a: &[i64], b: &[i64]) -> Result<Self> {
        model.validate()?;
        if degrees.len() != model.degree_rank() || a.len() != model.points || b.len() != model.line_count() {
            return Err(Error::BasisModelMismatch(format!(
                "expected {} degrees, {} point and {} line coefficients for {model}",
                model.degree_rank(),
                model.points,
                model.line_count()
            )));
        }
        let mut coeffs = degrees.to_vec();
        coeffs.extend(a.iter().map(|x| -x));
        coeffs.extend(b.iter().map(|x| -x));
        CurveClass::new(model, coeffs)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.coeffs[..self.model.degree_rank()]
    }

    /// Point multiplicities `a_i` (the negated `e_i` coefficients).
    pub fn multiplicities(&self) -> Vec<i64> {
        let d = self.model.degree_rank();
        self.coeffs[d..d + self.model.points].iter().map(|x| -x).collect()
    }

    /// Line multiplicities `b_l`; empty when the model has no line blowups.
    pub fn line_multiplicities(&self) -> Vec<i64> {
        let s = self.model.degree_rank() + self.model.points;
        self.coeffs[s..].iter().map(|x| -x).collect()
    }

    /// The same class viewed on `model`, which may add or drop line
    /// blowups; dropped line coefficients must vanish.
    pub fn with_lines(&self, lines: bool) -> Result<Self> {
        let target = Model { lines, ..self.model };
        let b = self.line_multiplicities();
        if !lines && b.iter().any(|&x| x != 0) {
            return Err(Error::BasisModelMismatch(format!("{self} has nonzero line coefficients")));
        }
        let b = if lines { if b.is_empty() { vec![0; 6] } else { b } } else { Vec::new() };
        CurveClass::from_parts(target, self.degrees(), &self.multiplicities(), &b)
    }
}

pub(crate) fn require_model(actual: Model, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BasisModelMismatch(format!("{what} is not defined on {actual}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_names() {
        assert_eq!(
            Model::perm_p3().curve_names(),
            ["h", "e123", "e124", "e134", "e234", "f12", "f13", "f14", "f23", "f24", "f34"]
        );
        assert_eq!(Model::cube(3).divisor_names(), ["H1", "H2", "H3", "E135", "E246", "E3"]);
        assert_eq!(Model::p3(6).curve_names()[5..], ["e5", "e6"]);
    }

    #[test]
    fn parts_round_trip_and_display() {
        let m = Model::p3(6);
        let beta = CurveClass::from_parts(m, &[3], &[1; 6], &[]).unwrap();
        assert_eq!(beta.degrees(), &[3]);
        assert_eq!(beta.multiplicities(), vec![1; 6]);
        assert_eq!(beta.to_string(), "3h - e123 - e124 - e134 - e234 - e5 - e6");
    }

    #[test]
    fn cross_model_arithmetic_is_rejected() {
        let a = CurveClass::basis(Model::p3(2), 0);
        let b = CurveClass::basis(Model::p3(3), 0);
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn lines_need_points() {
        assert!(Model::new(Side::P3, 3, true).validate().is_err());
        assert!(Model::new(Side::Cube, 5, true).validate().is_ok());
    }
}
