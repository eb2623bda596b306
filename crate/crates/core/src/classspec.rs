//! Text form of curve classes.
//!
//! ```text
//! P3(k=6): d=3; a=1,1,1,1,1,1
//! CUBE(k=4): d=1,1,1; a=1,0,1,1
//! P3(k=4): d=1; a=0,0,0,0; b=0
//! ```
//!
//! `d` lists the degree coefficients, `a` the point multiplicities and `b`
//! the line multiplicities. A `b` group selects the model with line blowups;
//! `b=0` abbreviates six zeros. The `a` group may be omitted when `k=0`.
//! Columns in errors are 1-based character positions.

use crate::error::{Error, Result};
use crate::model::{CurveClass, Model, Side};

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse { column: self.pos + 1, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer")
        })
    }

    fn int_list(&mut self) -> Result<Vec<i64>> {
        let mut out = vec![self.int()?];
        while self.eat(',') {
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }
}

/// Parses the model header `P3(k=6)` or `CUBE(k=4)`, returning the side and
/// point count.
fn header(cur: &mut Cursor) -> Result<(Side, usize)> {
    let tag_col = cur.pos;
    let side = match cur.word().as_str() {
        "P3" => Side::P3,
        "CUBE" => Side::Cube,
        other => {
            cur.pos = tag_col;
            return Err(cur.err(format!("unknown model `{other}`, expected P3 or CUBE")));
        }
    };
    cur.expect('(')?;
    let key_col = cur.pos;
    if cur.word() != "k" {
        cur.pos = key_col;
        return Err(cur.err("expected `k=`"));
    }
    cur.expect('=')?;
    let k_col = cur.pos;
    let k = cur.int()?;
    if k < 0 {
        cur.pos = k_col;
        return Err(cur.err("point count must be nonnegative"));
    }
    cur.expect(')')?;
    Ok((side, k as usize))
}

pub fn parse_class(src: &str) -> Result<CurveClass> {
    let mut cur = Cursor::new(src);
    let (side, k) = header(&mut cur)?;
    cur.expect(':')?;
    let mut groups: [Option<(usize, Vec<i64>)>; 3] = [None, None, None];
    loop {
        let col = cur.pos;
        let key = cur.word();
        let slot = match key.as_str() {
            "d" => 0,
            "a" => 1,
            "b" => 2,
            _ => {
                cur.pos = col;
                return Err(cur.err("expected one of `d=`, `a=`, `b=`"));
            }
        };
        if groups[slot].is_some() {
            cur.pos = col;
            return Err(cur.err(format!("repeated group `{key}`")));
        }
        cur.expect('=')?;
        cur.skip_ws();
        let vcol = cur.pos;
        groups[slot] = Some((vcol, cur.int_list()?));
        if !cur.eat(';') {
            break;
        }
    }
    if !cur.at_end() {
        return Err(cur.err("unexpected trailing input"));
    }
    let end = cur.chars.len();
    let (dcol, d) = groups[0].take().ok_or(Error::Parse { column: end + 1, message: "missing `d=` group".into() })?;
    let (acol, a) = match groups[1].take() {
        Some(g) => g,
        None if k == 0 => (end, Vec::new()),
        None => return Err(Error::Parse { column: end + 1, message: "missing `a=` group".into() }),
    };
    let lines = groups[2].is_some();
    let b = match groups[2].take() {
        Some((_, b)) if b == [0] => vec![0; 6],
        Some((col, b)) if b.len() != 6 => {
            return Err(Error::Parse { column: col + 1, message: format!("expected 6 line coefficients, got {}", b.len()) })
        }
        Some((_, b)) => b,
        None => Vec::new(),
    };
    if d.len() != side.degree_rank() {
        return Err(Error::Parse {
            column: dcol + 1,
            message: format!("expected {} degree coefficients, got {}", side.degree_rank(), d.len()),
        });
    }
    if a.len() != k {
        return Err(Error::Parse { column: acol + 1, message: format!("expected {k} point coefficients, got {}", a.len()) });
    }
    let model = Model::new(side, k, lines);
    model.validate().map_err(|e| Error::Parse { column: 1, message: e.to_string() })?;
    CurveClass::from_parts(model, &d, &a, &b)
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Inverse of [`parse_class`].
pub fn format_class(beta: &CurveClass) -> String {
    let m = beta.model();
    let mut s = format!("{}(k={}): d={}", m.side.tag(), m.points, join(beta.degrees()));
    if m.points > 0 {
        s.push_str(&format!("; a={}", join(&beta.multiplicities())));
    }
    if m.lines {
        let b = beta.line_multiplicities();
        if b.iter().all(|&x| x == 0) {
            s.push_str("; b=0");
        } else {
            s.push_str(&format!("; b={}", join(&b)));
        }
    }
    s
}

/// Base table key `d=<degrees>;n=<points>`.
pub(crate) fn parse_table_key(src: &str) -> std::result::Result<(Vec<i64>, usize), String> {
    let mut d = None;
    let mut n = None;
    for part in src.split(';') {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected `key=value`, got `{part}`"))?;
        match k.trim() {
            "d" => {
                let vals = v
                    .split(',')
                    .map(|x| x.trim().parse::<i64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| format!("bad degree list `{v}`"))?;
                d = Some(vals);
            }
            "n" => n = Some(v.trim().parse::<usize>().map_err(|_| format!("bad point count `{v}`"))?),
            other => return Err(format!("unknown key `{other}`")),
        }
    }
    Ok((d.ok_or("missing `d=`")?, n.ok_or("missing `n=`")?))
}
