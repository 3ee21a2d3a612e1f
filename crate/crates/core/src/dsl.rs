//! Line-oriented text format for superalgebras, forms and cochains.
//!
//! ```text
//! # Heisenberg algebra with a cochain
//! basis e1:even e2:even e3:even
//! bracket [e1,e2] = e3
//! form B(e1,e1) = 0
//! cochain2 w(e1,e2;e3) = 1
//! cochain3 f(e1,e2,e3) = 1/2
//! scalar2 phi(e1,e2) = -3
//! ```
//!
//! Grammar (whitespace between tokens is free):
//!
//! ```text
//! file     := { line }
//! line     := [ stmt ] [ "#" comment ]
//! stmt     := "basis" { label ":" ("even" | "odd") }
//!           | "bracket" "[" label "," label "]" "=" expr
//!           | "form" "B" "(" label "," label ")" "=" value
//!           | "cochain2" name "(" label "," label ";" label ")" "=" value
//!           | "cochain3" name "(" label "," label "," label ")" "=" value
//!           | "scalar2" name "(" label "," label ")" "=" value
//! expr     := "0" | [ "-" ] term { ("+" | "-") term }
//! term     := scalar "*" label | label
//! value    := [ "-" ] scalar
//! scalar   := digits [ "/" digits ]
//! label    := (letter | "_") { letter | digit | "_" | "'" } { "*" }
//! name     := (letter | "_") { letter | digit | "_" }
//! ```
//!
//! `basis` comes first and once. Entries not given are zero. Mirrored entries
//! are filled in from super-skew-symmetry (brackets, cochains) or
//! supersymmetry (form); an entry that contradicts an earlier one, or breaks
//! the grading, is an error at its line.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::algebra::LieSuperalgebra;
use crate::cochains::{Cochain2Dual, FreeCoords2, FreeCoords2Dual, FreeCoords3, ScalarCochain2, ScalarCochain3};
use crate::error::{Error, Result};
use crate::forms::{EvenForm, QuadraticLieSuperalgebra};
use crate::linalg::{format_scalar, zero_vec, Matrix, Scalar};
use crate::parity::{koszul, signed, GradedBasis, Parity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDocument {
    pub algebra: LieSuperalgebra,
    pub form: Option<Matrix>,
    pub cochains2: BTreeMap<String, Cochain2Dual>,
    pub cochains3: BTreeMap<String, ScalarCochain3>,
    pub scalars2: BTreeMap<String, ScalarCochain2>,
}

impl AlgebraDocument {
    pub fn from_algebra(algebra: LieSuperalgebra) -> Self {
        Self {
            algebra,
            form: None,
            cochains2: BTreeMap::new(),
            cochains3: BTreeMap::new(),
            scalars2: BTreeMap::new(),
        }
    }

    pub fn from_quadratic(q: &QuadraticLieSuperalgebra) -> Self {
        let mut d = Self::from_algebra(q.algebra().clone());
        d.form = Some(q.form().gram().clone());
        d
    }

    pub fn basis(&self) -> &GradedBasis {
        self.algebra.basis()
    }

    /// The form as an [`EvenForm`]; `None` when the document declares none.
    pub fn even_form(&self) -> Option<Result<EvenForm>> {
        self.form
            .as_ref()
            .map(|g| EvenForm::new(self.algebra.parities(), g.clone()))
    }

    pub fn quadratic(&self) -> Result<QuadraticLieSuperalgebra> {
        let form = self
            .even_form()
            .ok_or_else(|| Error::Precondition("document declares no form".into()))??;
        QuadraticLieSuperalgebra::new(self.algebra.clone(), form)
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: self.line,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.text.len()
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

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn word(&mut self, allow_star: bool) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => self.pos += c.len_utf8(),
            _ => return self.err("expected a label"),
        }
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || (allow_star && c == '\'') {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        if allow_star {
            while self.peek() == Some('*') {
                self.pos += 1;
            }
        }
        Ok(&self.text[start..self.pos])
    }

    fn scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        let digits = |c: &mut Self| {
            let s = c.pos;
            while c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
                c.pos += 1;
            }
            c.pos > s
        };
        if !digits(self) {
            return self.err("expected a number");
        }
        if self.peek() == Some('/') {
            self.pos += 1;
            if !digits(self) {
                return self.err("expected a denominator");
            }
        }
        let lit = &self.text[start..self.pos];
        match crate::linalg::parse_scalar(lit) {
            Some(x) => Ok(x),
            None => {
                self.pos = start;
                self.err(format!("invalid number `{lit}`"))
            }
        }
    }

    fn value(&mut self) -> Result<Scalar> {
        let neg = self.eat('-');
        Ok(signed(neg, self.scalar()?))
    }

    fn label(&mut self, basis: &GradedBasis) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        let w = self.word(true)?;
        match basis.index_of(w) {
            Some(i) => Ok(i),
            None => {
                self.pos = start;
                self.err(format!("undeclared label `{w}`"))
            }
        }
    }

    /// Linear combination of basis labels, together with the column of each term.
    fn expr(&mut self, basis: &GradedBasis) -> Result<Vec<(usize, Scalar, usize)>> {
        self.skip_ws();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            let neg = if first {
                self.eat('-')
            } else if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else {
                break;
            };
            self.skip_ws();
            let col = self.pos;
            let (coef, idx) = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let c = self.scalar()?;
                if !self.eat('*') {
                    if c.is_zero() && first && !neg {
                        first = false;
                        continue;
                    }
                    return self.err("expected `*` after a coefficient");
                }
                (c, self.label(basis)?)
            } else {
                (Scalar::one(), self.label(basis)?)
            };
            terms.push((idx, signed(neg, coef), col));
            first = false;
        }
        if first {
            return self.err("expected an expression");
        }
        Ok(terms)
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }
}

/// Parses a linear combination of basis labels into coordinates.
pub fn parse_combination(basis: &GradedBasis, text: &str) -> Result<Vec<Scalar>> {
    let mut c = Cursor { line: 1, text, pos: 0 };
    let terms = c.expr(basis)?;
    c.finish()?;
    let mut v = zero_vec(basis.dim());
    for (i, coef, _) in terms {
        v[i] += coef;
    }
    Ok(v)
}

#[derive(Default)]
struct Slots {
    // entry index → (value, defining line)
    set: HashMap<usize, (Scalar, usize)>,
}

impl Slots {
    fn put(&mut self, cur: &Cursor, pos: usize, value: Scalar) -> Result<()> {
        if let Some((old, line)) = self.set.get(&pos) {
            if *old != value {
                return cur.err(format!("entry contradicts line {line}"));
            }
            return Ok(());
        }
        self.set.insert(pos, (value, cur.line));
        Ok(())
    }

    fn dense(&self, len: usize) -> Vec<Scalar> {
        let mut v = zero_vec(len);
        for (pos, (x, _)) in &self.set {
            v[*pos] = x.clone();
        }
        v
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Cochain2,
    Cochain3,
    Scalar2,
}

pub fn parse(text: &str) -> Result<AlgebraDocument> {
    let mut basis: Option<GradedBasis> = None;
    let mut brackets = Slots::default();
    let mut form: Option<Slots> = None;
    let mut named: BTreeMap<String, (Kind, Slots)> = BTreeMap::new();
    let mut free = None;
    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut c = Cursor {
            line: lineno + 1,
            text: content,
            pos: 0,
        };
        if c.at_end() {
            continue;
        }
        let kw_start = c.pos;
        let kw = c.word(false)?;
        if kw == "basis" {
            if basis.is_some() {
                c.pos = kw_start;
                return c.err("basis declared twice");
            }
            let mut entries = Vec::new();
            while !c.at_end() {
                let start = c.pos;
                let name = c.word(true)?;
                c.expect(':')?;
                let p = match c.word(false)? {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    other => return c.err(format!("unknown parity `{other}`")),
                };
                if entries.iter().any(|(n, _): &(String, Parity)| n == name) {
                    c.pos = start;
                    return c.err(format!("duplicate label `{name}`"));
                }
                entries.push((name.to_string(), p));
            }
            let b = GradedBasis::new(entries)?;
            free = Some((
                FreeCoords2Dual::new(b.parities()),
                FreeCoords3::new(b.parities()),
                FreeCoords2::new(b.parities()),
            ));
            basis = Some(b);
            continue;
        }
        let Some(b) = basis.as_ref() else {
            c.pos = kw_start;
            return c.err("`basis` must come first");
        };
        let (free2d, free3, free2) = free.as_ref().expect("set with basis");
        let d = b.dim();
        let p = |i: usize| b.parity(i);
        match kw {
            "bracket" => {
                c.expect('[')?;
                let i = c.label(b)?;
                c.expect(',')?;
                let j = c.label(b)?;
                c.expect(']')?;
                c.expect('=')?;
                let terms = c.expr(b)?;
                c.finish()?;
                let mut v = zero_vec(d);
                for (k, coef, col) in terms {
                    if !coef.is_zero() && p(k) != p(i) + p(j) {
                        c.pos = col;
                        return c.err(format!(
                            "parity violation: [{},{}] is {} but {} is {}",
                            b.name(i),
                            b.name(j),
                            p(i) + p(j),
                            b.name(k),
                            p(k)
                        ));
                    }
                    v[k] += coef;
                }
                let neg = !koszul(p(i), p(j));
                if i == j && neg && v.iter().any(|x| !x.is_zero()) {
                    return c.err("the bracket of an even vector with itself must vanish");
                }
                for k in 0..d {
                    brackets.put(&c, (i * d + j) * d + k, v[k].clone())?;
                    brackets.put(&c, (j * d + i) * d + k, signed(neg, v[k].clone()))?;
                }
            }
            "form" => {
                let name_start = c.pos;
                if c.word(false)? != "B" {
                    c.pos = name_start;
                    return c.err("expected `B`");
                }
                c.expect('(')?;
                let i = c.label(b)?;
                c.expect(',')?;
                let j = c.label(b)?;
                c.expect(')')?;
                c.expect('=')?;
                let v = c.value()?;
                c.finish()?;
                if p(i) != p(j) && !v.is_zero() {
                    return c.err("parity violation: the form pairs an even vector with an odd one");
                }
                let slots = form.get_or_insert_with(Slots::default);
                slots.put(&c, i * d + j, v.clone())?;
                slots.put(&c, j * d + i, signed(koszul(p(i), p(j)), v))?;
            }
            "cochain2" | "cochain3" | "scalar2" => {
                let kind = match kw {
                    "cochain2" => Kind::Cochain2,
                    "cochain3" => Kind::Cochain3,
                    _ => Kind::Scalar2,
                };
                let name_start = c.pos;
                let name = c.word(false)?.to_string();
                c.expect('(')?;
                let mut idx = vec![c.label(b)?];
                let arity = if matches!(kind, Kind::Cochain2 | Kind::Cochain3) {
                    3
                } else {
                    2
                };
                while idx.len() < arity {
                    let sep = if kind == Kind::Cochain2 && idx.len() == 2 {
                        ';'
                    } else {
                        ','
                    };
                    c.expect(sep)?;
                    idx.push(c.label(b)?);
                }
                c.expect(')')?;
                c.expect('=')?;
                let v = c.value()?;
                c.finish()?;
                let entry = match kind {
                    Kind::Cochain2 => free2d.lookup(idx[0], idx[1], idx[2]),
                    Kind::Cochain3 => free3.lookup(idx[0], idx[1], idx[2]),
                    Kind::Scalar2 => free2.lookup(idx[0], idx[1]),
                };
                let slot = named.entry(name.clone()).or_insert_with(|| (kind, Slots::default()));
                if slot.0 != kind {
                    c.pos = name_start;
                    return c.err(format!("`{name}` already names a different kind of cochain"));
                }
                match entry {
                    Some((pos, neg)) => slot.1.put(&c, pos, signed(neg, v))?,
                    None if v.is_zero() => {}
                    None => return c.err("entry must vanish: parity violation or repeated even argument"),
                }
            }
            other => {
                c.pos = kw_start;
                return c.err(format!("unknown statement `{other}`"));
            }
        }
    }
    let basis = basis.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `basis` line".into(),
    })?;
    let d = basis.dim();
    let parities = basis.parities().to_vec();
    let (free2d, free3, free2) = free.expect("set with basis");
    let algebra = LieSuperalgebra::from_tensor(basis, brackets.dense(d * d * d))?;
    let form = form.map(|s| {
        let v = s.dense(d * d);
        let mut m = Matrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = v[i * d + j].clone();
            }
        }
        m
    });
    let mut doc = AlgebraDocument {
        algebra,
        form,
        cochains2: BTreeMap::new(),
        cochains3: BTreeMap::new(),
        scalars2: BTreeMap::new(),
    };
    for (name, (kind, slots)) in named {
        match kind {
            Kind::Cochain2 => {
                let c = Cochain2Dual::from_free(&parities, &free2d, &slots.dense(free2d.len()));
                doc.cochains2.insert(name, c);
            }
            Kind::Cochain3 => {
                let c = ScalarCochain3::from_free(&parities, &free3, &slots.dense(free3.len()));
                doc.cochains3.insert(name, c);
            }
            Kind::Scalar2 => {
                let c = ScalarCochain2::from_free(&parities, &free2, &slots.dense(free2.len()));
                doc.scalars2.insert(name, c);
            }
        }
    }
    Ok(doc)
}

fn format_expr(basis: &GradedBasis, v: &[Scalar]) -> String {
    let mut out = String::new();
    for (k, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let mag = x.abs();
        let term = if mag.is_one() {
            basis.name(k).to_string()
        } else {
            format!("{}*{}", format_scalar(&mag), basis.name(k))
        };
        match (out.is_empty(), x.is_negative()) {
            (true, false) => out.push_str(&term),
            (true, true) => out.push_str(&format!("-{term}")),
            (false, false) => out.push_str(&format!(" + {term}")),
            (false, true) => out.push_str(&format!(" - {term}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Canonical text: one line per independent nonzero entry, in index order.
pub fn emit(doc: &AlgebraDocument) -> String {
    let b = doc.basis();
    let d = b.dim();
    let p = |i: usize| b.parity(i);
    let mut out = String::from("basis");
    for i in 0..d {
        out.push_str(&format!(" {}:{}", b.name(i), p(i)));
    }
    out.push('\n');
    for i in 0..d {
        for j in i..d {
            if i == j && !p(i).is_odd() {
                continue;
            }
            let v = doc.algebra.bracket_basis_vec(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                out.push_str(&format!(
                    "bracket [{},{}] = {}\n",
                    b.name(i),
                    b.name(j),
                    format_expr(b, &v)
                ));
            }
        }
    }
    if let Some(g) = &doc.form {
        let mut any = false;
        for i in 0..d {
            for j in i..d {
                if !g[(i, j)].is_zero() {
                    any = true;
                    out.push_str(&format!(
                        "form B({},{}) = {}\n",
                        b.name(i),
                        b.name(j),
                        format_scalar(&g[(i, j)])
                    ));
                }
            }
        }
        if !any && d > 0 {
            out.push_str(&format!("form B({0},{0}) = 0\n", b.name(0)));
        }
    }
    let free2d = FreeCoords2Dual::new(b.parities());
    for (name, c) in &doc.cochains2 {
        if c.is_zero() && d > 0 {
            let (i, j, k) = free2d.triples.first().copied().unwrap_or((0, 0, 0));
            out.push_str(&format!(
                "cochain2 {name}({},{};{}) = 0\n",
                b.name(i),
                b.name(j),
                b.name(k)
            ));
        }
        for &(i, j, k) in &free2d.triples {
            let x = c.get(i, j, k);
            if !x.is_zero() {
                out.push_str(&format!(
                    "cochain2 {name}({},{};{}) = {}\n",
                    b.name(i),
                    b.name(j),
                    b.name(k),
                    format_scalar(x)
                ));
            }
        }
    }
    let free3 = FreeCoords3::new(b.parities());
    for (name, c) in &doc.cochains3 {
        if c.is_zero() && d > 0 {
            let (i, j, k) = free3.triples.first().copied().unwrap_or((0, 0, 0));
            out.push_str(&format!(
                "cochain3 {name}({},{},{}) = 0\n",
                b.name(i),
                b.name(j),
                b.name(k)
            ));
        }
        for &(i, j, k) in &free3.triples {
            let x = c.get(i, j, k);
            if !x.is_zero() {
                out.push_str(&format!(
                    "cochain3 {name}({},{},{}) = {}\n",
                    b.name(i),
                    b.name(j),
                    b.name(k),
                    format_scalar(x)
                ));
            }
        }
    }
    let free2 = FreeCoords2::new(b.parities());
    for (name, c) in &doc.scalars2 {
        if c.matrix().iter().all(|x| x.is_zero()) && d > 0 {
            let (i, j) = free2.pairs.first().copied().unwrap_or((0, 0));
            out.push_str(&format!("scalar2 {name}({},{}) = 0\n", b.name(i), b.name(j)));
        }
        for &(i, j) in &free2.pairs {
            let x = c.get(i, j);
            if !x.is_zero() {
                out.push_str(&format!(
                    "scalar2 {name}({},{}) = {}\n",
                    b.name(i),
                    b.name(j),
                    format_scalar(x)
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;
    use crate::linalg::{frac, int};

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn one_dim_abelian() {
        let d = parse("basis x:even\nbracket [x,x] = 0\n").unwrap();
        assert_eq!(d.algebra.dim(), 1);
        assert!(d.algebra.is_abelian());
    }

    #[test]
    fn heisenberg_matches_gallery() {
        let d = parse("# h3\nbasis e1:even e2:even e3:even\nbracket [e1,e2] = e3  # the only one\n").unwrap();
        assert_eq!(d.algebra, gallery::heisenberg3());
    }

    #[test]
    fn parity_violation_located() {
        let (line, col, msg) = parse_err("basis x:even y:odd z:even\nbracket [x,y] = z\n");
        assert_eq!((line, col), (2, 17));
        assert!(msg.contains("parity"));
    }

    #[test]
    fn contradictions_and_unknowns() {
        let (line, _, msg) = parse_err("basis x:even y:even\nbracket [x,y] = x\nbracket [y,x] = x\n");
        assert_eq!(line, 3);
        assert!(msg.contains("line 2"));
        let (_, col, msg) = parse_err("basis x:even\nbracket [x,q] = 0\n");
        assert_eq!(col, 12);
        assert!(msg.contains("undeclared"));
        assert!(parse("bracket [x,y] = 0").is_err());
        assert!(parse("basis x:even\nform B(x,x) = 1\nform B(x,x) = 2\n").is_err());
        assert!(parse("basis y:odd\nform B(y,y) = 1\n").is_err());
        assert!(parse("basis x:even y:odd\ncochain3 f(x,x,y) = 1\n").is_err());
        assert!(parse("basis x:even y:odd\ncochain2 w(x,y;x) = 1\n").is_err());
        assert!(parse("basis x:even\nbracket [x,x] = x\n").is_err());
        assert!(parse("basis x:even\nfrobnicate\n").is_err());
    }

    #[test]
    fn completions() {
        let d = parse(
            "basis x:even y:odd z:odd\n\
             form B(x,x) = 2\n\
             form B(y,z) = 1/2\n\
             cochain2 w(y,z;x) = 3\n\
             cochain3 f(x,z,y) = -1\n\
             scalar2 phi(z,y) = 5\n",
        )
        .unwrap();
        let g = d.form.as_ref().unwrap();
        assert_eq!(g[(2, 1)], frac(-1, 2));
        let w = &d.cochains2["w"];
        assert_eq!(*w.get(2, 1, 0), int(3)); // odd pair: symmetric
        let f = &d.cochains3["f"];
        assert_eq!(*f.get(0, 1, 2), int(-1));
        assert_eq!(*d.scalars2["phi"].get(1, 2), int(5));
    }

    #[test]
    fn emit_parse_fixed_point() {
        let text = "basis a:even b:odd c:odd\nbracket [b,c] = -2*a\nbracket [b,b] = 1/3*a\nform B(a,a) = 1\ncochain3 f(a,b,b) = 2\n";
        let d1 = parse(text).unwrap();
        let e1 = emit(&d1);
        let d2 = parse(&e1).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(emit(&d2), e1);
    }

    #[test]
    fn zero_cochains_survive_emit() {
        let text = "basis a:even b:even\nform B(a,b) = 0\ncochain2 w(a,b;a) = 0\ncochain3 f(a,b,a) = 0\nscalar2 phi(a,b) = 0\n";
        let d1 = parse(text).unwrap();
        assert!(d1.cochains2.contains_key("w") && d1.cochains3.contains_key("f"));
        let e1 = emit(&d1);
        let d2 = parse(&e1).unwrap();
        assert_eq!(d1, d2);
        assert_eq!(emit(&d2), e1);
    }

    #[test]
    fn combinations() {
        let b = gallery::heisenberg3().basis().clone();
        assert_eq!(
            parse_combination(&b, "e1 - 2*e3 + 1/2*e1").unwrap(),
            vec![frac(3, 2), int(0), int(-2)]
        );
        assert!(parse_combination(&b, "2 e1").is_err());
        let t = gallery::tstar_h3();
        let v = parse_combination(t.total.basis(), "e1* + e2").unwrap();
        assert_eq!(v[3], int(1));
    }
}
