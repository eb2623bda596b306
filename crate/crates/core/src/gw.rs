//! Stationary genus-`g` invariants as class arithmetic: virtual dimension,
//! the coefficient correspondences between the P3 and cube sides, point
//! descent, and a deterministic reduction of queries to a table of known
//! values.

use crate::classspec::{format_class, parse_table_key};
use crate::error::{Error, Result};
use crate::intersection::IntersectionTable;
use crate::model::{require_model, CurveClass, Model, Side};
use crate::symmetry::{cremona_cube, cremona_p3};
use std::fmt;

/// `⟨pt^points⟩_{genus, beta}` on the model of `beta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwQuery {
    pub genus: u32,
    pub beta: CurveClass,
    pub points: usize,
}

impl GwQuery {
    pub fn new(genus: u32, beta: CurveClass, points: usize) -> Self {
        GwQuery { genus, beta, points }
    }

    pub fn model(&self) -> Model {
        self.beta.model()
    }

    /// Dimension of the moduli space of stable maps with `points` markings,
    /// `−K·β + n` on a threefold.
    pub fn moduli_vdim(&self) -> Result<i64> {
        Ok(anticanonical_degree(&self.beta)? + self.points as i64)
    }

    /// Expected dimension of the invariant: the moduli dimension minus 3 for
    /// each point insertion, i.e. `−K·β − 2n`. Zero exactly when the
    /// invariant is a number.
    pub fn vdim(&self) -> Result<i64> {
        Ok(anticanonical_degree(&self.beta)? - 2 * self.points as i64)
    }
}

impl fmt::Display for GwQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<pt^{}>_(g={}) [{}]", self.points, self.genus, format_class(&self.beta))
    }
}

/// `−K·β` computed through the canonical class of the model.
pub fn anticanonical_degree(beta: &CurveClass) -> Result<i64> {
    IntersectionTable::cached(beta.model())?.anticanonical_degree(beta)
}

/// Whether a side condition of a correspondence holds, with a reason.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Guard {
    pub holds: bool,
    pub diagnostics: String,
}

/// Output of a coefficient map with the side conditions that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mapped {
    pub class: CurveClass,
    pub warnings: Vec<String>,
}

fn no_lines(beta: &CurveClass, what: &str) -> Result<CurveClass> {
    if beta.model().lines {
        beta.with_lines(false).map_err(|_| {
            Error::BasisModelMismatch(format!("{what} needs vanishing line coefficients, got {beta}"))
        })
    } else {
        Ok(beta.clone())
    }
}

/// P3 side: `2d = Σa` and some point beyond the four toric ones is used.
pub fn p3_side_guard(beta: &CurveClass) -> Guard {
    let m = beta.model();
    if m.side != Side::P3 {
        return Guard { holds: false, diagnostics: format!("{m} is not a P3-side model") };
    }
    let d = beta.degrees()[0];
    let a = beta.multiplicities();
    let sa: i64 = a.iter().sum();
    let extra = a.iter().skip(4).any(|&x| x != 0);
    let mut why = Vec::new();
    if 2 * d != sa {
        why.push(format!("2d = {} but sum of a = {sa}", 2 * d));
    }
    if !extra {
        why.push("a_i = 0 for every i > 4".to_string());
    }
    Guard { holds: why.is_empty(), diagnostics: if why.is_empty() { "ok".into() } else { why.join("; ") } }
}

/// Cube side: `Σd = Σa` and some point beyond the two toric ones is used.
pub fn cube_side_guard(beta: &CurveClass) -> Guard {
    let m = beta.model();
    if m.side != Side::Cube {
        return Guard { holds: false, diagnostics: format!("{m} is not a cube-side model") };
    }
    let sd: i64 = beta.degrees().iter().sum();
    let a = beta.multiplicities();
    let sa: i64 = a.iter().sum();
    let extra = a.iter().skip(2).any(|&x| x != 0);
    let mut why = Vec::new();
    if sd != sa {
        why.push(format!("sum of d = {sd} but sum of a = {sa}"));
    }
    if !extra {
        why.push("a_i = 0 for every i > 2".to_string());
    }
    Guard { holds: why.is_empty(), diagnostics: if why.is_empty() { "ok".into() } else { why.join("; ") } }
}

/// P3 side with `k` points to the cube side with `max(k, 4) − 2` points:
///
/// `d1 = d − a2 − a3`, `d2 = d − a1 − a3`, `d3 = d − a1 − a2`,
/// `ã1 = a4`, `ã2 = d − a1 − a2 − a3`, `ã_i = a_{i+2}` for `i ≥ 3`.
///
/// Inputs with fewer than four points are padded with zero multiplicities.
pub fn p3_to_cube(beta: &CurveClass) -> Result<Mapped> {
    let m = beta.model();
    require_model(m, m.side == Side::P3 && m.points >= 2, "the P3-to-cube correspondence")?;
    let beta = no_lines(beta, "the P3-to-cube correspondence")?;
    let d = beta.degrees()[0];
    let mut a = beta.multiplicities();
    a.resize(a.len().max(4), 0);
    let degrees = [d - a[1] - a[2], d - a[0] - a[2], d - a[0] - a[1]];
    let mut out = vec![a[3], d - a[0] - a[1] - a[2]];
    out.extend_from_slice(&a[4..]);
    let class = CurveClass::from_parts(Model::cube(out.len()), &degrees, &out, &[])?;
    let g = p3_side_guard(&beta);
    let warnings = if g.holds { Vec::new() } else { vec![format!("P3-side hypothesis fails: {}", g.diagnostics)] };
    Ok(Mapped { class, warnings })
}

/// Inverse of [`p3_to_cube`]: cube side with `k ≥ 2` points to P3 with
/// `k + 2` points, `d = Σd̃ − 2ã2`, `a_j = d̃_j − ã2`, `a4 = ã1`, `a_{i+2} = ã_i`.
pub fn cube_to_p3(beta: &CurveClass) -> Result<Mapped> {
    let m = beta.model();
    require_model(m, m.side == Side::Cube && m.points >= 2, "the cube-to-P3 correspondence")?;
    let beta = no_lines(beta, "the cube-to-P3 correspondence")?;
    let dt = beta.degrees();
    let at = beta.multiplicities();
    let d = dt.iter().sum::<i64>() - 2 * at[1];
    let mut a: Vec<i64> = dt.iter().map(|x| x - at[1]).collect();
    a.push(at[0]);
    a.extend_from_slice(&at[2..]);
    let class = CurveClass::from_parts(Model::p3(a.len()), &[d], &a, &[])?;
    let g = cube_side_guard(&beta);
    let warnings = if g.holds { Vec::new() } else { vec![format!("cube-side hypothesis fails: {}", g.diagnostics)] };
    Ok(Mapped { class, warnings })
}

/// The cube-side involution on four points: the Cremona formulas with no
/// line terms, followed by swapping `ã3` and `ã4`.
pub fn cube_point_involution(beta: &CurveClass) -> Result<Mapped> {
    let m = beta.model();
    require_model(m, m.side == Side::Cube && m.points == 4, "the four-point cube involution")?;
    let beta = no_lines(beta, "the four-point cube involution")?;
    let img = cremona_cube(&beta)?;
    let mut a = img.multiplicities();
    a.swap(2, 3);
    let class = CurveClass::from_parts(Model::cube(4), img.degrees(), &a, &[])?;
    let at = beta.multiplicities();
    let warnings = if at[2] == 0 && at[3] == 0 {
        vec!["hypothesis fails: a3 = a4 = 0".to_string()]
    } else {
        Vec::new()
    };
    Ok(Mapped { class, warnings })
}

/// Trades one point insertion for a new blowup point with multiplicity 1.
pub fn point_descent(q: &GwQuery) -> Result<GwQuery> {
    if q.points == 0 {
        return Ok(q.clone());
    }
    Ok(GwQuery { genus: q.genus, beta: add_points(&q.beta, 1)?, points: q.points - 1 })
}

pub fn descend_all(q: &GwQuery) -> Result<GwQuery> {
    Ok(GwQuery { genus: q.genus, beta: add_points(&q.beta, q.points)?, points: 0 })
}

fn add_points(beta: &CurveClass, count: usize) -> Result<CurveClass> {
    let m = beta.model();
    let mut a = beta.multiplicities();
    a.extend(std::iter::repeat_n(1, count));
    CurveClass::from_parts(Model::new(m.side, a.len(), m.lines), beta.degrees(), &a, &beta.line_multiplicities())
}

/// One known invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseEntry {
    pub side: Side,
    pub genus: u32,
    pub degrees: Vec<i64>,
    /// Number of point insertions (equivalently, blowup points of multiplicity 1).
    pub points: usize,
    pub value: i64,
    /// Where the value comes from, e.g. `elementary` or `cited`.
    pub provenance: String,
}

impl BaseEntry {
    pub fn key(&self) -> String {
        let d: Vec<String> = self.degrees.iter().map(|x| x.to_string()).collect();
        format!("{} {} d={};n={}", self.side.tag(), self.genus, d.join(","), self.points)
    }
}

/// A read-only table of invariants `⟨pt^n⟩_{g, d}` on the base models.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseTable {
    pub entries: Vec<BaseEntry>,
}

const BUILTIN_TABLE: &str = include_str!("../data/base_table.txt");

impl BaseTable {
    /// The table shipped with the crate.
    pub fn builtin() -> BaseTable {
        BaseTable::parse(BUILTIN_TABLE).expect("built-in table parses")
    }

    /// One entry per line: `model genus d=<degrees>;n=<points> value provenance`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<BaseTable> {
        let mut entries = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Table { line: i + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(err(format!("expected 5 fields, got {}", fields.len())));
            }
            let side = match fields[0] {
                "P3" => Side::P3,
                "CUBE" => Side::Cube,
                other => return Err(err(format!("unknown model `{other}`"))),
            };
            let genus = fields[1].parse().map_err(|_| err(format!("bad genus `{}`", fields[1])))?;
            let (degrees, points) = parse_table_key(fields[2]).map_err(err)?;
            if degrees.len() != side.degree_rank() {
                return Err(err(format!("{} degrees expected", side.degree_rank())));
            }
            let value = fields[3].parse().map_err(|_| err(format!("bad value `{}`", fields[3])))?;
            entries.push(BaseEntry { side, genus, degrees, points, value, provenance: fields[4].to_string() });
        }
        Ok(BaseTable { entries })
    }

    pub fn from_file(path: &std::path::Path) -> Result<BaseTable> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Table { line: 0, message: format!("{}: {e}", path.display()) })?;
        BaseTable::parse(&text)
    }

    pub fn has_side(&self, side: Side) -> bool {
        self.entries.iter().any(|e| e.side == side)
    }

    /// Looks up a class with no line blowups whose multiplicities are all
    /// 0 or 1, reading it as the base class with one insertion per 1.
    pub fn lookup(&self, genus: u32, beta: &CurveClass) -> Option<&BaseEntry> {
        let m = beta.model();
        if m.lines {
            return None;
        }
        let a = beta.multiplicities();
        if a.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        let n = a.iter().filter(|&&x| x == 1).count();
        self.entries
            .iter()
            .find(|e| e.side == m.side && e.genus == genus && e.degrees == beta.degrees() && e.points == n)
    }
}

/// One rewriting step of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Adds `count` blowup points of multiplicity 1, one per insertion.
    PointDescent { count: usize },
    /// Forgets line blowups whose coefficients vanish.
    DropLines,
    /// Output point `i` is input point `source[i]`; `None` is a new unused point.
    RelabelPoints { source: Vec<Option<usize>> },
    CremonaP3,
    P3ToCube,
    CubeToP3,
    CubePointInvolution,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::PointDescent { .. } => "point-descent",
            Rule::DropLines => "drop-lines",
            Rule::RelabelPoints { .. } => "relabel-points",
            Rule::CremonaP3 => "cremona-p3",
            Rule::P3ToCube => "p3-to-cube",
            Rule::CubeToP3 => "cube-to-p3",
            Rule::CubePointInvolution => "cube-point-involution",
        }
    }

    pub fn apply(&self, beta: &CurveClass) -> Result<CurveClass> {
        match self {
            Rule::PointDescent { count } => add_points(beta, *count),
            Rule::DropLines => beta.with_lines(false),
            Rule::RelabelPoints { source } => relabel(beta, source),
            Rule::CremonaP3 => cremona_p3(beta),
            Rule::P3ToCube => Ok(p3_to_cube(beta)?.class),
            Rule::CubeToP3 => Ok(cube_to_p3(beta)?.class),
            Rule::CubePointInvolution => Ok(cube_point_involution(beta)?.class),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::PointDescent { count } => write!(f, "point-descent x{count}"),
            Rule::RelabelPoints { source } => {
                let s: Vec<String> = source
                    .iter()
                    .map(|x| x.map(|i| (i + 1).to_string()).unwrap_or_else(|| "new".into()))
                    .collect();
                write!(f, "relabel-points [{}]", s.join(","))
            }
            other => f.write_str(other.name()),
        }
    }
}

fn relabel(beta: &CurveClass, source: &[Option<usize>]) -> Result<CurveClass> {
    let m = beta.model();
    if m.lines {
        return Err(Error::BasisModelMismatch("relabelling points needs a model without lines".into()));
    }
    let a = beta.multiplicities();
    let mut used = vec![false; a.len()];
    let mut out = Vec::with_capacity(source.len());
    for s in source {
        match s {
            Some(i) if *i < a.len() && !used[*i] => {
                used[*i] = true;
                out.push(a[*i]);
            }
            Some(i) => return Err(Error::BasisModelMismatch(format!("bad point relabelling at {}", i + 1))),
            None => out.push(0),
        }
    }
    if let Some(i) = (0..a.len()).find(|&i| !used[i] && a[i] != 0) {
        return Err(Error::BasisModelMismatch(format!("relabelling drops point {} with a = {}", i + 1, a[i])));
    }
    CurveClass::from_parts(Model::new(m.side, out.len(), false), beta.degrees(), &out, &[])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub input: CurveClass,
    pub output: CurveClass,
    /// Side conditions of the rule that failed; the step is then formal.
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Value { value: i64, entry: BaseEntry },
    Unresolved(CurveClass),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub query: GwQuery,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

impl ReductionTrace {
    /// Re-applies every rule and checks that the steps chain together.
    pub fn replays(&self) -> bool {
        let mut current = self.query.beta.clone();
        for s in &self.steps {
            if s.input != current {
                return false;
            }
            match s.rule.apply(&s.input) {
                Ok(out) if out == s.output => current = out,
                _ => return false,
            }
        }
        match &self.outcome {
            Outcome::Value { entry, .. } => {
                BaseTable { entries: vec![entry.clone()] }.lookup(self.query.genus, &current).is_some()
            }
            Outcome::Unresolved(c) => *c == current,
        }
    }

    pub fn value(&self) -> Option<i64> {
        match self.outcome {
            Outcome::Value { value, .. } => Some(value),
            Outcome::Unresolved(_) => None,
        }
    }
}

const MAX_STEPS: usize = 64;

struct Reducer<'a> {
    genus: u32,
    table: &'a BaseTable,
    steps: Vec<Step>,
    current: CurveClass,
}

impl Reducer<'_> {
    fn push(&mut self, rule: Rule, warnings: Vec<String>) -> Result<()> {
        let output = rule.apply(&self.current)?;
        if matches!(rule, Rule::RelabelPoints { .. }) && output == self.current {
            return Ok(());
        }
        self.steps.push(Step { rule, input: self.current.clone(), output: output.clone(), warnings });
        self.current = output;
        Ok(())
    }

    /// Sorts multiplicities in decreasing order (stable), if not already sorted.
    fn sort_points(&mut self) -> Result<()> {
        let a = self.current.multiplicities();
        let mut order: Vec<usize> = (0..a.len()).collect();
        order.sort_by(|&i, &j| a[j].cmp(&a[i]));
        if order.iter().enumerate().any(|(i, &j)| i != j) {
            self.push(Rule::RelabelPoints { source: order.into_iter().map(Some).collect() }, Vec::new())?;
        }
        Ok(())
    }

    fn hit(&self) -> Option<Outcome> {
        self.table
            .lookup(self.genus, &self.current)
            .map(|e| Outcome::Value { value: e.value, entry: e.clone() })
    }

    /// Cremona moves on the four largest multiplicities while the degree drops.
    fn p3_descend(&mut self) -> Result<Option<Outcome>> {
        loop {
            self.sort_points()?;
            if let Some(o) = self.hit() {
                return Ok(Some(o));
            }
            if self.steps.len() >= MAX_STEPS {
                return Ok(None);
            }
            let k = self.current.model().points;
            let padded = if k < 4 {
                let source: Vec<Option<usize>> = (0..4).map(|i| (i < k).then_some(i)).collect();
                relabel(&self.current, &source)?
            } else {
                self.current.clone()
            };
            let next = cremona_p3(&padded)?;
            let (d, d2) = (padded.degrees()[0], next.degrees()[0]);
            if !(0 <= d2 && d2 < d) {
                return Ok(None);
            }
            if k < 4 {
                let source = (0..4).map(|i| (i < k).then_some(i)).collect();
                self.push(Rule::RelabelPoints { source }, Vec::new())?;
            }
            let g = p3_side_guard(&self.current);
            let warnings = if g.holds { Vec::new() } else { vec![format!("P3-side hypothesis fails: {}", g.diagnostics)] };
            self.push(Rule::CremonaP3, warnings)?;
        }
    }

    /// Relabellings that put a point (or a new unused point) in each of the
    /// two toric cube slots, in trial order: slot 2 prefers the unused point,
    /// slot 1 prefers existing points.
    fn cube_candidates(&self) -> Vec<Vec<Option<usize>>> {
        let k = self.current.model().points;
        let a = self.current.multiplicities();
        let mut slot2: Vec<Option<usize>> = vec![None];
        slot2.extend((0..k).map(Some));
        let mut out = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for s2 in &slot2 {
            let mut slot1: Vec<Option<usize>> = (0..k).filter(|&i| Some(i) != *s2).map(Some).collect();
            slot1.push(None);
            for s1 in slot1 {
                let mut source = vec![s1, *s2];
                source.extend((0..k).filter(|&i| Some(i) != s1 && Some(i) != *s2).map(Some));
                let key: Vec<i64> = source.iter().map(|s| s.map_or(0, |i| a[i])).collect();
                if seen.insert(key) {
                    out.push(source);
                }
            }
        }
        out
    }

    fn cross_from_cube(&mut self) -> Result<Option<Outcome>> {
        let base_len = self.steps.len();
        let start = self.current.clone();
        let mut best: Option<(i64, Vec<Option<usize>>)> = None;
        for source in self.cube_candidates() {
            let moved = relabel(&start, &source)?;
            let mapped = cube_to_p3(&moved)?;
            let d = mapped.class.degrees()[0];
            self.push(Rule::RelabelPoints { source: source.clone() }, Vec::new())?;
            self.push(Rule::CubeToP3, mapped.warnings)?;
            self.sort_points()?;
            if let Some(o) = self.hit() {
                return Ok(Some(o));
            }
            self.steps.truncate(base_len);
            self.current = start.clone();
            if d >= 0 && best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best = Some((d, source));
            }
        }
        let Some((_, source)) = best else { return Ok(None) };
        self.push(Rule::RelabelPoints { source }, Vec::new())?;
        let w = cube_to_p3(&self.current)?.warnings;
        self.push(Rule::CubeToP3, w)?;
        self.p3_descend()
    }

    fn cross_from_p3(&mut self) -> Result<Option<Outcome>> {
        if !self.table.has_side(Side::Cube) || self.current.model().points < 2 {
            return Ok(None);
        }
        let w = p3_to_cube(&self.current)?.warnings;
        self.push(Rule::P3ToCube, w)?;
        Ok(self.hit())
    }
}

/// Normalizes `q` and looks it up in `table`.
///
/// Point insertions are descended first and the virtual dimension must then
/// vanish. Line blowups with zero coefficients are dropped and points are
/// sorted. On the P3 side, Cremona moves are applied while they lower the
/// degree; on the cube side the class crosses to the P3 side at the first
/// relabelling that reaches a table entry (or else the one of least degree).
pub fn reduce(q: &GwQuery, table: &BaseTable) -> Result<ReductionTrace> {
    let mut r = Reducer { genus: q.genus, table, steps: Vec::new(), current: q.beta.clone() };
    if q.points > 0 {
        r.push(Rule::PointDescent { count: q.points }, Vec::new())?;
    }
    let v = anticanonical_degree(&r.current)?;
    if v != 0 {
        return Err(Error::NonVdimZero(v));
    }
    let finish = |r: Reducer, outcome: Option<Outcome>| {
        let outcome = outcome.unwrap_or_else(|| Outcome::Unresolved(r.current.clone()));
        ReductionTrace { query: q.clone(), steps: r.steps, outcome }
    };
    if r.current.model().lines {
        if r.current.line_multiplicities().iter().any(|&b| b != 0) {
            return Ok(finish(r, None));
        }
        r.push(Rule::DropLines, Vec::new())?;
    }
    let outcome = match r.current.model().side {
        Side::P3 => match r.p3_descend()? {
            Some(o) => Some(o),
            None => r.cross_from_p3()?,
        },
        Side::Cube => {
            r.sort_points()?;
            match r.hit() {
                Some(o) => Some(o),
                None => r.cross_from_cube()?,
            }
        }
    };
    Ok(finish(r, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classspec::parse_class;

    fn c(s: &str) -> CurveClass {
        parse_class(s).unwrap()
    }

    #[test]
    fn vdim_examples() {
        assert_eq!(GwQuery::new(0, c("P3(k=6): d=3; a=1,1,1,1,1,1"), 0).vdim().unwrap(), 0);
        assert_eq!(GwQuery::new(0, c("P3(k=0): d=1"), 2).vdim().unwrap(), 0);
        assert_eq!(GwQuery::new(0, c("P3(k=0): d=1"), 2).moduli_vdim().unwrap(), 6);
        assert_eq!(GwQuery::new(1, c("CUBE(k=4): d=1,1,1; a=1,0,1,1"), 0).vdim().unwrap(), 0);
    }

    #[test]
    fn p3_to_cube_fixtures() {
        let m = p3_to_cube(&c("P3(k=6): d=3; a=1,1,1,1,1,1")).unwrap();
        assert_eq!(m.class, c("CUBE(k=4): d=1,1,1; a=1,0,1,1"));
        assert!(m.warnings.is_empty());
        let m = p3_to_cube(&c("P3(k=2): d=1; a=1,1")).unwrap();
        assert_eq!(m.class, c("CUBE(k=2): d=0,0,-1; a=0,-1"));
        assert!(!m.warnings.is_empty());
        let back = cube_to_p3(&c("CUBE(k=4): d=1,1,1; a=1,0,1,1")).unwrap();
        assert_eq!(back.class, c("P3(k=6): d=3; a=1,1,1,1,1,1"));
    }

    #[test]
    fn cube_point_involution_fixture() {
        let m = cube_point_involution(&c("CUBE(k=4): d=0,0,1; a=0,0,1,0")).unwrap();
        assert_eq!(m.class, c("CUBE(k=4): d=1,1,1; a=1,1,0,1"));
        assert!(cube_point_involution(&c("CUBE(k=3): d=0,0,1; a=0,0,1")).is_err());
    }

    #[test]
    fn guards() {
        assert!(p3_side_guard(&c("P3(k=6): d=3; a=1,1,1,1,1,1")).holds);
        assert!(!p3_side_guard(&c("P3(k=4): d=2; a=1,1,1,1")).holds);
        assert!(cube_side_guard(&c("CUBE(k=4): d=1,1,1; a=1,0,1,1")).holds);
    }

    #[test]
    fn descent() {
        let q = GwQuery::new(0, c("CUBE(k=0): d=1,1,1"), 3);
        let once = point_descent(&q).unwrap();
        assert_eq!((once.points, once.beta.model().points), (2, 1));
        let all = descend_all(&q).unwrap();
        assert_eq!(all, GwQuery::new(0, c("CUBE(k=3): d=1,1,1; a=1,1,1"), 0));
        let p3 = descend_all(&GwQuery::new(0, c("P3(k=0): d=3"), 6)).unwrap();
        assert_eq!(p3.beta, c("P3(k=6): d=3; a=1,1,1,1,1,1"));
        let none = GwQuery::new(0, c("P3(k=0): d=1"), 0);
        assert_eq!(point_descent(&none).unwrap(), none);
    }

    #[test]
    fn example_chain() {
        let q = GwQuery::new(0, c("CUBE(k=0): d=1,1,1"), 3);
        let t = reduce(&q, &BaseTable::builtin()).unwrap();
        assert_eq!(t.value(), Some(1));
        assert!(t.steps.len() <= 4);
        let rules: Vec<&str> = t.steps.iter().map(|s| s.rule.name()).collect();
        assert_eq!(rules, ["point-descent", "relabel-points", "cube-to-p3"]);
        assert_eq!(t.steps[1].output, c("CUBE(k=4): d=1,1,1; a=1,0,1,1"));
        assert_eq!(t.steps[2].output, c("P3(k=6): d=3; a=1,1,1,1,1,1"));
        assert!(t.replays());
        assert_eq!(reduce(&q, &BaseTable::builtin()).unwrap(), t);
    }

    #[test]
    fn line_through_two_points_and_bad_vdim() {
        let t = reduce(&GwQuery::new(0, c("P3(k=0): d=1"), 2), &BaseTable::builtin()).unwrap();
        assert_eq!(t.value(), Some(1));
        assert_eq!(reduce(&GwQuery::new(0, c("P3(k=0): d=1"), 0), &BaseTable::builtin()), Err(Error::NonVdimZero(4)));
    }

    #[test]
    fn cremona_reduces_degree() {
        let q = GwQuery::new(0, c("P3(k=8): d=5; a=2,2,2,1,1,1,1,0"), 0);
        let t = reduce(&q, &BaseTable::builtin()).unwrap();
        assert!(t.replays());
        assert!(t.steps.iter().any(|s| s.rule == Rule::CremonaP3));
    }

    #[test]
    fn table_parsing() {
        let t = BaseTable::parse("# comment\nP3 0 d=1;n=2 1 elementary\n\nCUBE 0 d=1,1,1;n=3 1 cited\n").unwrap();
        assert_eq!(t.entries.len(), 2);
        assert_eq!(t.entries[1].key(), "CUBE 0 d=1,1,1;n=3");
        assert!(matches!(BaseTable::parse("P3 0 d=1 1 x"), Err(Error::Table { line: 1, .. })));
        assert!(matches!(BaseTable::parse("\nP3 0 d=1,2;n=1 1 x"), Err(Error::Table { line: 2, .. })));
        assert_eq!(BaseTable::builtin().entries.len(), 2);
    }
}
