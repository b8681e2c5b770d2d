//! Group specifications: `sym(4)`, `wreath(cyclic(2), 2, cyclic(2))`, ...

use std::fmt;

use profin::construct::{
    affine_semidirect, alternating, cyclic, dihedral, direct_product, is_prime, symmetric, wreath_imprimitive,
};
use profin::hom::quotient_action;
use profin::linalg::FpMatrix;
use profin::sylow::sylow_seeded;
use profin::{Caps, GroupError, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Sym(u64),
    Alt(u64),
    Dihedral(u64),
    Perm {
        degree: u64,
        gens: Vec<Permutation>,
    },
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Wreath {
        base: Box<GroupSpec>,
        copies: u64,
        top: Box<GroupSpec>,
    },
    Affine {
        p: u64,
        d: u64,
        mats: Vec<Vec<Vec<u64>>>,
    },
    SylowOf {
        group: Box<GroupSpec>,
        p: u64,
    },
    Quotient {
        group: Box<GroupSpec>,
        normal: Box<GroupSpec>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(" or "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

fn err(pos: Pos, message: impl Into<String>, expected: &[&str]) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s
                .parse::<u64>()
                .map_err(|_| err(pos, format!("number {s} is too large"), &[]))?;
            out.push((Tok::Num(n), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else {
            return Err(err(pos, format!("unexpected character `{c}`"), &[]));
        }
        column += i - start;
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

const CONSTRUCTORS: [&str; 10] = [
    "cyclic", "sym", "alt", "dihedral", "perm", "direct", "wreath", "affine", "sylow_of", "quotient",
];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        err(self.pos(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn expect(&mut self, t: Tok, name: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.i += 1;
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        match *self.peek() {
            Tok::Num(n) => {
                self.i += 1;
                Ok(n)
            }
            _ => Err(self.unexpected(&["a number"])),
        }
    }

    fn spec(&mut self) -> Result<GroupSpec, ParseError> {
        let pos = self.pos();
        let name = match self.peek() {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected(&["a group constructor"])),
        };
        if !CONSTRUCTORS.contains(&name.as_str()) {
            let expected: Vec<String> = CONSTRUCTORS.iter().map(|s| format!("`{s}`")).collect();
            return Err(ParseError {
                line: pos.line,
                column: pos.column,
                message: format!("unknown constructor `{name}`"),
                expected,
            });
        }
        self.i += 1;
        self.expect(Tok::LParen, "`(`")?;
        let spec = match name.as_str() {
            "cyclic" | "sym" | "alt" | "dihedral" => {
                let n = self.number()?;
                let (min, node) = match name.as_str() {
                    "cyclic" => (1, GroupSpec::Cyclic(n)),
                    "sym" => (1, GroupSpec::Sym(n)),
                    "alt" => (3, GroupSpec::Alt(n)),
                    _ => (3, GroupSpec::Dihedral(n)),
                };
                if n < min {
                    return Err(err(pos, format!("{name}({n}) requires n >= {min}"), &[]));
                }
                node
            }
            "perm" => {
                let degree = self.number()?;
                if degree == 0 {
                    return Err(err(pos, "perm degree must be positive", &[]));
                }
                let mut gens = Vec::new();
                while *self.peek() == Tok::Comma {
                    self.i += 1;
                    gens.push(self.permutation(degree)?);
                }
                GroupSpec::Perm { degree, gens }
            }
            "direct" => {
                let a = self.spec()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.spec()?;
                GroupSpec::Direct(Box::new(a), Box::new(b))
            }
            "wreath" => {
                let base = self.spec()?;
                self.expect(Tok::Comma, "`,`")?;
                let copies = self.number()?;
                if copies == 0 {
                    return Err(err(pos, "wreath needs at least one copy", &[]));
                }
                self.expect(Tok::Comma, "`,`")?;
                let top = self.spec()?;
                GroupSpec::Wreath {
                    base: Box::new(base),
                    copies,
                    top: Box::new(top),
                }
            }
            "affine" => {
                let p = self.number()?;
                if !is_prime(p) {
                    return Err(err(pos, format!("affine modulus {p} is not prime"), &[]));
                }
                self.expect(Tok::Comma, "`,`")?;
                let d = self.number()?;
                if d == 0 {
                    return Err(err(pos, "affine dimension must be positive", &[]));
                }
                let mut mats = Vec::new();
                while *self.peek() == Tok::Comma {
                    self.i += 1;
                    let mpos = self.pos();
                    let m = self.matrix()?;
                    if m.len() as u64 != d || m.iter().any(|r| r.len() as u64 != d) {
                        return Err(err(mpos, format!("matrix is not {d}x{d}"), &[]));
                    }
                    if m.iter().flatten().any(|&x| x >= p) {
                        return Err(err(mpos, format!("matrix entries must be below {p}"), &[]));
                    }
                    mats.push(m);
                }
                GroupSpec::Affine { p, d, mats }
            }
            "sylow_of" => {
                let g = self.spec()?;
                self.expect(Tok::Comma, "`,`")?;
                let ppos = self.pos();
                let p = self.number()?;
                if !is_prime(p) {
                    return Err(err(ppos, format!("{p} is not prime"), &[]));
                }
                GroupSpec::SylowOf { group: Box::new(g), p }
            }
            _ => {
                let g = self.spec()?;
                self.expect(Tok::Comma, "`,`")?;
                let n = self.spec()?;
                GroupSpec::Quotient {
                    group: Box::new(g),
                    normal: Box::new(n),
                }
            }
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(spec)
    }

    /// A product of cycles such as `(1 2 3)(4 5)`, or `()`.
    fn permutation(&mut self, degree: u64) -> Result<Permutation, ParseError> {
        let pos = self.pos();
        if *self.peek() != Tok::LParen {
            return Err(self.unexpected(&["a permutation in cycle notation"]));
        }
        let mut cycles = Vec::new();
        while *self.peek() == Tok::LParen {
            self.i += 1;
            let mut cycle = Vec::new();
            while let Tok::Num(n) = *self.peek() {
                if n == 0 || n > degree {
                    return Err(err(self.pos(), format!("point {n} is outside 1..{degree}"), &[]));
                }
                cycle.push((n - 1) as usize);
                self.i += 1;
            }
            self.expect(Tok::RParen, "`)` or a point")?;
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree as usize, &cycles).map_err(|e| err(pos, e.to_string(), &[]))
    }

    fn matrix(&mut self) -> Result<Vec<Vec<u64>>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut rows = vec![self.row()?];
        while *self.peek() == Tok::Comma {
            self.i += 1;
            rows.push(self.row()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(rows)
    }

    fn row(&mut self) -> Result<Vec<u64>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut row = vec![self.number()?];
        while *self.peek() == Tok::Comma {
            self.i += 1;
            row.push(self.number()?);
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(row)
    }
}

pub fn parse_spec(text: &str) -> Result<GroupSpec, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        i: 0,
    };
    let spec = p.spec()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["end of input"]));
    }
    Ok(spec)
}

impl std::str::FromStr for GroupSpec {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_spec(s)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Sym(n) => write!(f, "sym({n})"),
            GroupSpec::Alt(n) => write!(f, "alt({n})"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Perm { degree, gens } => {
                write!(f, "perm({degree}")?;
                for g in gens {
                    write!(f, ", {g}")?;
                }
                write!(f, ")")
            }
            GroupSpec::Direct(a, b) => write!(f, "direct({a}, {b})"),
            GroupSpec::Wreath { base, copies, top } => write!(f, "wreath({base}, {copies}, {top})"),
            GroupSpec::Affine { p, d, mats } => {
                write!(f, "affine({p}, {d}")?;
                for m in mats {
                    let rows: Vec<String> = m
                        .iter()
                        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
                        .collect();
                    write!(f, ", [{}]", rows.join(","))?;
                }
                write!(f, ")")
            }
            GroupSpec::SylowOf { group, p } => write!(f, "sylow_of({group}, {p})"),
            GroupSpec::Quotient { group, normal } => write!(f, "quotient({group}, {normal})"),
        }
    }
}

fn small(n: u64, caps: &Caps) -> Result<usize, GroupError> {
    if n > caps.degree as u64 {
        return Err(GroupError::CapExceeded {
            cap: "degree",
            limit: caps.degree as u64,
            required: n.to_string(),
        });
    }
    Ok(n as usize)
}

impl GroupSpec {
    /// Builds the permutation group; `seed` drives any randomized Sylow search.
    pub fn build(&self, caps: &Caps, seed: u64) -> Result<PermGroup, GroupError> {
        let g = match self {
            GroupSpec::Cyclic(n) => cyclic(small(*n, caps)?)?,
            GroupSpec::Sym(n) => symmetric(small(*n, caps)?)?,
            GroupSpec::Alt(n) => alternating(small(*n, caps)?)?,
            GroupSpec::Dihedral(n) => dihedral(small(*n, caps)?)?,
            GroupSpec::Perm { degree, gens } => PermGroup::new(small(*degree, caps)?, gens.clone())?,
            GroupSpec::Direct(a, b) => {
                let (a, b) = (a.build(caps, seed)?, b.build(caps, seed)?);
                caps.check_degree(a.degree() + b.degree())?;
                direct_product(&a, &b)
            }
            GroupSpec::Wreath { base, copies, top } => {
                let base = base.build(caps, seed)?;
                let top = top.build(caps, seed)?;
                let m = small(*copies, caps)?;
                caps.check_degree(m.saturating_mul(base.degree()))?;
                wreath_imprimitive(&base, m, &top, caps)?
            }
            GroupSpec::Affine { p, d, mats } => {
                let d = small(*d, caps)?;
                let mats = mats
                    .iter()
                    .map(|m| FpMatrix::new(*p, m.clone()))
                    .collect::<Result<Vec<_>, _>>()?;
                affine_semidirect(*p, d, &mats, caps)?
            }
            GroupSpec::SylowOf { group, p } => sylow_seeded(&group.build(caps, seed)?, *p, seed)?,
            GroupSpec::Quotient { group, normal } => {
                let g = group.build(caps, seed)?;
                let n = normal.build(caps, seed)?;
                if n.degree() != g.degree() {
                    return Err(GroupError::DegreeMismatch {
                        expected: g.degree(),
                        found: n.degree(),
                    });
                }
                quotient_action(&g, &n, caps)?.0
            }
        };
        caps.check_degree(g.degree())?;
        Ok(g)
    }
}
