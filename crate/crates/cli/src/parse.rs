//! Group-spec mini-language.
//!
//! ```text
//! spec    = product { "/" "<" element { ";" element } ">" }
//! product = factor { "x" factor }
//! factor  = named | perm | mat | "(" spec ")"
//! ```
//!
//! The grammar in full, with examples, is in `docs/grammar.md`.

use std::fmt;

use asl_core::perm;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// `F q`, the field with `q` elements.
    Field(u32),
    /// `Z/m`, with `m` a prime power.
    Residue(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Trivial,
    Cyclic(usize),
    /// `D n`, of order `2n`.
    Dihedral(usize),
    Quaternion,
    Klein,
    Symmetric(usize),
    Alternating(usize),
    Gl { n: usize, q: u32 },
    Sl { n: usize, q: u32 },
    Unitriangular { n: usize, p: u32 },
    /// `GL_n(Z/ell^k)`.
    Glz { n: usize, ell: u32, k: u32 },
    /// Generators as 0-based image lists.
    Perm { degree: usize, generators: Vec<Vec<u32>> },
    /// Square matrices of a common size, entries as written.
    Mat { ring: RingSpec, matrices: Vec<Vec<Vec<i64>>> },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Quotient by the normal closure of the listed elements.
    Quotient(Box<GroupSpec>, Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at line {line}, column {col}: {message}")]
    SyntaxError { line: usize, col: usize, message: String },
    #[error("unknown constructor {name:?} at line {line}, column {col}")]
    UnknownConstructor { name: String, line: usize, col: usize },
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

/// Canonical text of a spec; `parse_group_spec(&unparse(s)) == s`.
pub fn unparse(spec: &GroupSpec) -> String {
    spec.to_string()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let t = self.rest();
        self.pos += t.len() - t.trim_start().len();
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, col) = self.location(pos);
        ParseError::SyntaxError { line, col, message: message.into() }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(self.pos, message)
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {c:?}")))
        }
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let t = self.rest();
        let len = t.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(t.len());
        self.pos += len;
        &t[..len]
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let t = self.rest();
        let len = t.find(|c: char| !c.is_ascii_digit()).unwrap_or(t.len());
        if len == 0 {
            return Err(self.error("expected a number"));
        }
        let v = t[..len].parse().map_err(|_| self.error("number too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let v = self.int()?;
        u32::try_from(v).map_err(|_| self.error_at(start, "number too large"))
    }

    fn signed(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat('-');
        let start = self.pos;
        let v = self.int()?;
        let v = i64::try_from(v).map_err(|_| self.error_at(start, "number too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        let mut left = self.product()?;
        while self.eat('/') {
            self.expect('<')?;
            let elems = self.elements()?;
            left = GroupSpec::Quotient(Box::new(left), elems);
        }
        Ok(left)
    }

    /// Raw element texts up to the closing `>`, split on top-level `;`.
    fn elements(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        let mut depth = 0usize;
        let mut start = self.pos;
        for (i, c) in self.rest().char_indices() {
            let at = self.pos + i;
            match c {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth = depth.checked_sub(1).ok_or_else(|| self.error_at(at, "unbalanced bracket"))?;
                }
                ';' | '>' if depth == 0 => {
                    let text = normalize_element(&self.src[start..at]);
                    if text.is_empty() {
                        if c == '>' && out.is_empty() {
                            self.pos = at + 1;
                            return Ok(out);
                        }
                        return Err(self.error_at(at, "empty element"));
                    }
                    out.push(text);
                    start = at + 1;
                    if c == '>' {
                        self.pos = at + 1;
                        return Ok(out);
                    }
                }
                _ => {}
            }
        }
        Err(self.error_at(self.src.len(), "expected '>'"))
    }

    fn product(&mut self) -> Result<GroupSpec, ParseError> {
        let mut left = self.factor()?;
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.ident() == "x" {
                let right = self.factor()?;
                left = GroupSpec::Product(Box::new(left), Box::new(right));
            } else {
                self.pos = save;
                return Ok(left);
            }
        }
    }

    fn factor(&mut self) -> Result<GroupSpec, ParseError> {
        if self.eat('(') {
            let inner = self.spec()?;
            self.expect(')')?;
            return Ok(inner);
        }
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('1') && !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit()) {
            self.pos += 1;
            return Ok(GroupSpec::Trivial);
        }
        let name = self.ident();
        if name.is_empty() {
            return Err(self.error("expected a group"));
        }
        let size = |p: &mut Self| -> Result<usize, ParseError> {
            let at = p.pos;
            let v = p.int()?;
            usize::try_from(v).ok().filter(|&v| v > 0).ok_or_else(|| p.error_at(at, "size must be positive"))
        };
        Ok(match name {
            "C" => GroupSpec::Cyclic(size(self)?),
            "D" => GroupSpec::Dihedral(size(self)?),
            "S" => GroupSpec::Symmetric(size(self)?),
            "A" => GroupSpec::Alternating(size(self)?),
            "Q" | "V" => {
                match (name, self.int()?) {
                    ("Q", 8) => GroupSpec::Quaternion,
                    ("V", 4) => GroupSpec::Klein,
                    (_, v) => {
                        let (line, col) = self.location(start);
                        return Err(ParseError::UnknownConstructor { name: format!("{name}{v}"), line, col });
                    }
                }
            }
            "GL" | "SL" | "U" | "GLZ" => {
                self.expect('(')?;
                let n = size(self)?;
                self.expect(',')?;
                let a = self.small()?;
                let spec = if name == "GLZ" {
                    self.expect(',')?;
                    let k = self.small()?;
                    GroupSpec::Glz { n, ell: a, k }
                } else if name == "GL" {
                    GroupSpec::Gl { n, q: a }
                } else if name == "SL" {
                    GroupSpec::Sl { n, q: a }
                } else {
                    GroupSpec::Unitriangular { n, p: a }
                };
                self.expect(')')?;
                spec
            }
            "perm" => self.perm()?,
            "mat" => self.mat()?,
            _ => {
                let (line, col) = self.location(start);
                return Err(ParseError::UnknownConstructor { name: name.to_string(), line, col });
            }
        })
    }

    fn perm(&mut self) -> Result<GroupSpec, ParseError> {
        self.expect('(')?;
        let at = self.pos;
        let degree = usize::try_from(self.int()?).map_err(|_| self.error_at(at, "degree too large"))?;
        if degree == 0 {
            return Err(self.error_at(at, "degree must be positive"));
        }
        self.expect(';')?;
        let mut generators = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            // a generator is a run of parenthesised cycles
            let mut end = start;
            let bytes = self.src.as_bytes();
            loop {
                while end < bytes.len() && bytes[end].is_ascii_whitespace() {
                    end += 1;
                }
                if end < bytes.len() && bytes[end] == b'(' {
                    match self.src[end..].find(')') {
                        Some(close) => end += close + 1,
                        None => return Err(self.error_at(end, "unclosed cycle")),
                    }
                } else {
                    break;
                }
            }
            let text = self.src[start..end].trim();
            if text.is_empty() {
                return Err(self.error_at(start, "expected a cycle"));
            }
            let images = perm::parse_cycles(degree, text).map_err(|e| self.error_at(start, e.to_string()))?;
            generators.push(images);
            self.pos = end;
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        Ok(GroupSpec::Perm { degree, generators })
    }

    fn mat(&mut self) -> Result<GroupSpec, ParseError> {
        self.expect('(')?;
        self.skip_ws();
        let at = self.pos;
        let ring = match self.ident() {
            "F" => RingSpec::Field(self.small()?),
            "Z" => {
                self.expect('/')?;
                RingSpec::Residue(self.small()?)
            }
            other => return Err(self.error_at(at, format!("expected a ring 'F q' or 'Z/m', found {other:?}"))),
        };
        self.expect(';')?;
        let mut matrices = Vec::new();
        let mut size = None;
        loop {
            self.skip_ws();
            let start = self.pos;
            let m = self.matrix()?;
            let n = m.len();
            if m.iter().any(|r| r.len() != n) {
                return Err(self.error_at(start, "matrix is not square"));
            }
            if *size.get_or_insert(n) != n {
                return Err(self.error_at(start, "matrices differ in size"));
            }
            matrices.push(m);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(')')?;
        Ok(GroupSpec::Mat { ring, matrices })
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, ParseError> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.signed()?];
            while self.eat(',') {
                row.push(self.signed()?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }
}

/// Trims and collapses runs of whitespace to single spaces.
fn normalize_element(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Field(q) => write!(f, "F{q}"),
            RingSpec::Residue(m) => write!(f, "Z/{m}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Trivial => f.write_str("1"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion => f.write_str("Q8"),
            GroupSpec::Klein => f.write_str("V4"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Gl { n, q } => write!(f, "GL({n},{q})"),
            GroupSpec::Sl { n, q } => write!(f, "SL({n},{q})"),
            GroupSpec::Unitriangular { n, p } => write!(f, "U({n},{p})"),
            GroupSpec::Glz { n, ell, k } => write!(f, "GLZ({n},{ell},{k})"),
            GroupSpec::Perm { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| perm::to_cycles(g)).collect();
                write!(f, "perm({degree}; {})", gens.join(", "))
            }
            GroupSpec::Mat { ring, matrices } => {
                let ms: Vec<String> = matrices
                    .iter()
                    .map(|m| {
                        let rows: Vec<String> = m
                            .iter()
                            .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                            .collect();
                        format!("[{}]", rows.join(","))
                    })
                    .collect();
                write!(f, "mat({ring}; {})", ms.join(", "))
            }
            GroupSpec::Product(a, b) => {
                let wrap = |s: &GroupSpec| match s {
                    GroupSpec::Product(..) | GroupSpec::Quotient(..) => format!("({s})"),
                    _ => s.to_string(),
                };
                let left = match **a {
                    GroupSpec::Quotient(..) => format!("({a})"),
                    _ => a.to_string(),
                };
                write!(f, "{left} x {}", wrap(b))
            }
            GroupSpec::Quotient(g, elems) => write!(f, "{g} / <{}>", elems.join("; ")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named() {
        assert_eq!(parse_group_spec("S4").unwrap(), GroupSpec::Symmetric(4));
        assert_eq!(parse_group_spec(" GLZ(2, 3, 2) ").unwrap(), GroupSpec::Glz { n: 2, ell: 3, k: 2 });
        assert_eq!(parse_group_spec("1").unwrap(), GroupSpec::Trivial);
        assert_eq!(parse_group_spec("C12").unwrap(), GroupSpec::Cyclic(12));
    }

    #[test]
    fn perm_node() {
        let s = parse_group_spec("perm(5; (1 2 3 4 5), (1 2))").unwrap();
        let GroupSpec::Perm { degree, generators } = &s else { panic!("{s:?}") };
        assert_eq!(*degree, 5);
        assert_eq!(generators.len(), 2);
        assert_eq!(unparse(&s), "perm(5; (1 2 3 4 5), (1 2))");
        let t = parse_group_spec("perm(4; (1 2)(3 4), ())").unwrap();
        assert_eq!(unparse(&t), "perm(4; (1 2)(3 4), ())");
    }

    #[test]
    fn products_and_quotients() {
        let s = parse_group_spec("C2 x A5").unwrap();
        assert_eq!(s, GroupSpec::Product(Box::new(GroupSpec::Cyclic(2)), Box::new(GroupSpec::Alternating(5))));
        let q = parse_group_spec("S4 / <(1 2)(3 4);(1 3)(2 4)>").unwrap();
        assert_eq!(unparse(&q), "S4 / <(1 2)(3 4); (1 3)(2 4)>");
        let r = parse_group_spec("C2 x (S3 x C3)").unwrap();
        assert_eq!(unparse(&r), "C2 x (S3 x C3)");
        let m = parse_group_spec("mat(Z/4; [[1,1],[0,1]], [[1, 0], [2, -1]])").unwrap();
        assert_eq!(unparse(&m), "mat(Z/4; [[1,1],[0,1]], [[1,0],[2,-1]])");
    }

    #[test]
    fn errors_carry_positions() {
        match parse_group_spec("S4 x\n  Z9") {
            Err(ParseError::UnknownConstructor { name, line, col }) => {
                assert_eq!((name.as_str(), line, col), ("Z", 2, 3));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_group_spec("perm(3; (1 4))"), Err(ParseError::SyntaxError { line: 1, col: 9, .. })));
        assert!(matches!(parse_group_spec("S4 x"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_group_spec("mat(F3; [[1,0],[0]])"), Err(ParseError::SyntaxError { .. })));
        assert!(matches!(parse_group_spec("Q6"), Err(ParseError::UnknownConstructor { .. })));
    }
}
