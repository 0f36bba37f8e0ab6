//! Presentations of special biserial (SB) algebras: a textual DSL for
//! quivers with relations, a validating parser, and the presentation-level
//! queries everything else is built on (residue tests, nonzero
//! successor/predecessor maps, opposite presentations, pretty-printing).
//!
//! The file format (`.sba` by convention, `#` starts a line comment):
//!
//! ```text
//! quiver {
//!   vertices: 1 2;
//!   arrows: a: 1 -> 1; b: 1 -> 2; c: 2 -> 1; d: 2 -> 2;
//! }
//! relations {
//!   a*a; b*d; c*b; d*c;
//!   a*b*c - b*c*a;
//!   c*a*b;
//!   d^4;
//! }
//! ```
//!
//! `*` composes left to right ("p then q"), `^k` repeats a factor, and `-`
//! separates the two components of a commutativity relation. Scalar
//! coefficients are rejected: commutativity relations are normalised so
//! that both components carry coefficient 1, which is lossless for every
//! computation in this workspace.

use sbs_quiver::{Arrow, ArrowId, Quiver, VertexId};
use thiserror::Error;

/// A composable sequence of arrows, stored by id.
pub type Word = Vec<ArrowId>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativityRelation {
    pub left: Word,
    pub right: Word,
}

#[derive(Debug, Clone, Error)]
pub enum SpecError {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("semantic error at {line}:{col}: {msg}")]
    Semantic { line: usize, col: usize, msg: String },
    #[error("not special biserial: {msg}")]
    SbAxiom { msg: String },
    #[error("relation ideal is not admissible: {msg}")]
    NonAdmissible { msg: String },
}

/// A validated SB algebra presentation: a sub-2-regular quiver together
/// with monomial relations (length ≥ 2) and commutativity relations whose
/// two components share source and target but differ in first and last
/// arrow. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbAlgebraSpec {
    quiver: Quiver,
    monomials: Vec<Word>,
    commutativity: Vec<CommutativityRelation>,
    successor: Vec<Option<ArrowId>>,
    predecessor: Vec<Option<ArrowId>>,
}

impl SbAlgebraSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let tokens = tokenize(text)?;
        let ast = Parser { tokens, at: 0 }.parse_file()?;
        validate(ast)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn monomials(&self) -> &[Word] {
        &self.monomials
    }

    pub fn commutativity(&self) -> &[CommutativityRelation] {
        &self.commutativity
    }

    pub fn is_monomial_algebra(&self) -> bool {
        self.commutativity.is_empty()
    }

    /// The unique arrow β with αβ nonzero, if any.
    pub fn nonzero_successor(&self, a: ArrowId) -> Option<ArrowId> {
        self.successor[a.0]
    }

    /// The unique arrow γ with γα nonzero, if any.
    pub fn nonzero_predecessor(&self, a: ArrowId) -> Option<ArrowId> {
        self.predecessor[a.0]
    }

    pub fn word_is_composable(&self, word: &[ArrowId]) -> bool {
        word.windows(2).all(|w| self.quiver.target(w[0]) == self.quiver.source(w[1]))
    }

    /// Whether a composable word has nonzero residue in the algebra: it
    /// must contain no monomial relation as a contiguous subword and must
    /// not strictly contain a commutativity component (components are
    /// maximal nonzero paths; every proper superword of one dies).
    pub fn residue_is_nonzero(&self, word: &[ArrowId]) -> bool {
        debug_assert!(self.word_is_composable(word));
        for m in &self.monomials {
            if contains_subword(word, m) {
                return false;
            }
        }
        for c in &self.commutativity {
            for comp in [&c.left, &c.right] {
                if strictly_contains(word, comp) {
                    return false;
                }
            }
        }
        true
    }

    /// The same presentation with all arrows (and hence all relation
    /// words) reversed. Involution.
    pub fn opposite(&self) -> SbAlgebraSpec {
        let q = &self.quiver;
        let arrows = q
            .arrow_ids()
            .map(|a| Arrow {
                name: q.arrow_name(a).to_string(),
                source: q.target(a),
                target: q.source(a),
            })
            .collect();
        let vertices = q.vertices().map(|v| q.vertex_name(v).to_string()).collect();
        let rev = |w: &Word| w.iter().rev().copied().collect::<Word>();
        let quiver = Quiver::new(vertices, arrows);
        let monomials: Vec<Word> = self.monomials.iter().map(rev).collect();
        let commutativity: Vec<CommutativityRelation> = self
            .commutativity
            .iter()
            .map(|c| CommutativityRelation { left: rev(&c.left), right: rev(&c.right) })
            .collect();
        let (successor, predecessor) = successor_maps(&quiver, &monomials);
        SbAlgebraSpec { quiver, monomials, commutativity, successor, predecessor }
    }

    /// Render a word with `*` and `^` compression, e.g. `a*b*c` or `d^4`.
    pub fn word_string(&self, word: &[ArrowId]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut k = 0;
        while k < word.len() {
            let mut run = 1;
            while k + run < word.len() && word[k + run] == word[k] {
                run += 1;
            }
            let name = self.quiver.arrow_name(word[k]);
            if run >= 2 {
                parts.push(format!("{name}^{run}"));
            } else {
                parts.push(name.to_string());
            }
            k += run;
        }
        parts.join("*")
    }

    /// Canonical textual form; `parse(print(s)) == s`.
    pub fn print(&self) -> String {
        let q = &self.quiver;
        let mut out = String::new();
        out.push_str("quiver {\n  vertices:");
        for v in q.vertices() {
            out.push(' ');
            out.push_str(q.vertex_name(v));
        }
        out.push_str(";\n  arrows: ");
        let decls: Vec<String> = q
            .arrow_ids()
            .map(|a| {
                format!(
                    "{}: {} -> {}",
                    q.arrow_name(a),
                    q.vertex_name(q.source(a)),
                    q.vertex_name(q.target(a))
                )
            })
            .collect();
        out.push_str(&decls.join("; "));
        out.push_str(";\n}\nrelations {\n");
        for m in &self.monomials {
            out.push_str("  ");
            out.push_str(&self.word_string(m));
            out.push_str(";\n");
        }
        for c in &self.commutativity {
            out.push_str("  ");
            out.push_str(&self.word_string(&c.left));
            out.push_str(" - ");
            out.push_str(&self.word_string(&c.right));
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Display for SbAlgebraSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.print())
    }
}

fn contains_subword(word: &[ArrowId], sub: &[ArrowId]) -> bool {
    !sub.is_empty()
        && word.len() >= sub.len()
        && (0..=word.len() - sub.len()).any(|k| &word[k..k + sub.len()] == sub)
}

fn strictly_contains(word: &[ArrowId], sub: &[ArrowId]) -> bool {
    word.len() > sub.len() && contains_subword(word, sub)
}

fn successor_maps(
    quiver: &Quiver,
    monomials: &[Word],
) -> (Vec<Option<ArrowId>>, Vec<Option<ArrowId>>) {
    let len2: Vec<&Word> = monomials.iter().filter(|m| m.len() == 2).collect();
    let zero2 = |x: ArrowId, y: ArrowId| len2.iter().any(|m| m[0] == x && m[1] == y);
    let mut succ = vec![None; quiver.n_arrows()];
    let mut pred = vec![None; quiver.n_arrows()];
    for a in quiver.arrow_ids() {
        for b in quiver.out_arrows(quiver.target(a)) {
            if !zero2(a, b) {
                succ[a.0] = Some(b);
            }
        }
        for g in quiver.in_arrows(quiver.source(a)) {
            if !zero2(g, a) {
                pred[a.0] = Some(g);
            }
        }
    }
    (succ, pred)
}

/// Built-in example presentations, by number. Number 1 is the two-vertex,
/// four-arrow algebra used as a fixture across the whole workspace.
pub fn example_source(n: u32) -> Option<&'static str> {
    match n {
        1 => Some(
            "quiver {\n  vertices: 1 2;\n  arrows: a: 1 -> 1; b: 1 -> 2; c: 2 -> 1; d: 2 -> 2;\n}\nrelations {\n  a*a;\n  b*d;\n  c*b;\n  d*c;\n  c*a*b;\n  d^4;\n  a*b*c - b*c*a;\n}\n",
        ),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Tokenizer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    ArrowTo,
    Star,
    Caret,
    Minus,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, SpecError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l, c) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let ch = chars.next().unwrap();
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            ch
        };
        if ch.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if ch == '#' {
            while let Some(&c2) = chars.peek() {
                if c2 == '\n' {
                    break;
                }
                bump(&mut chars);
            }
            continue;
        }
        if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Number(s), line: l, col: c });
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let mut s = String::new();
            while let Some(&c2) = chars.peek() {
                if c2.is_alphanumeric() || c2 == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: l, col: c });
            continue;
        }
        let tok = match ch {
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ':' => Tok::Colon,
            ';' => Tok::Semi,
            ',' => Tok::Comma,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '-' => {
                bump(&mut chars);
                if chars.peek() == Some(&'>') {
                    bump(&mut chars);
                    out.push(Token { tok: Tok::ArrowTo, line: l, col: c });
                } else {
                    out.push(Token { tok: Tok::Minus, line: l, col: c });
                }
                continue;
            }
            other => {
                return Err(SpecError::Syntax {
                    line: l,
                    col: c,
                    msg: format!("unexpected character {other:?}"),
                })
            }
        };
        bump(&mut chars);
        out.push(Token { tok, line: l, col: c });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug)]
struct RawFactor {
    name: String,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct RawRelation {
    left: Vec<RawFactor>,
    right: Option<Vec<RawFactor>>,
    line: usize,
    col: usize,
}

#[derive(Debug)]
struct RawFile {
    vertices: Vec<(String, usize, usize)>,
    arrows: Vec<(String, String, String, usize, usize)>,
    relations: Vec<RawRelation>,
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

const MAX_POWER: usize = 4096;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.at]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.at].clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, SpecError> {
        let t = self.peek();
        Err(SpecError::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, SpecError> {
        if self.peek().tok == tok {
            Ok(self.next())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), SpecError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => {
                self.next();
                Ok(())
            }
            _ => self.err(format!("expected keyword `{kw}`")),
        }
    }

    fn name(&mut self, what: &str) -> Result<(String, usize, usize), SpecError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(s) | Tok::Number(s) => {
                self.next();
                Ok((s, t.line, t.col))
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn parse_file(mut self) -> Result<RawFile, SpecError> {
        self.expect_keyword("quiver")?;
        self.expect(Tok::LBrace, "`{`")?;
        self.expect_keyword("vertices")?;
        self.expect(Tok::Colon, "`:`")?;
        let mut vertices = Vec::new();
        loop {
            vertices.push(self.name("a vertex name")?);
            match self.peek().tok {
                Tok::Comma => {
                    self.next();
                }
                Tok::Semi => {
                    self.next();
                    break;
                }
                Tok::Ident(_) | Tok::Number(_) => {}
                _ => {
                    return self.err("expected a vertex name, `,` or `;` in vertex list");
                }
            }
        }
        self.expect_keyword("arrows")?;
        self.expect(Tok::Colon, "`:`")?;
        let mut arrows = Vec::new();
        loop {
            let (name, l, c) = self.name("an arrow name")?;
            self.expect(Tok::Colon, "`:` after arrow name")?;
            let (src, ..) = self.name("a source vertex")?;
            self.expect(Tok::ArrowTo, "`->`")?;
            let (tgt, ..) = self.name("a target vertex")?;
            arrows.push((name, src, tgt, l, c));
            match self.peek().tok {
                Tok::Semi | Tok::Comma => {
                    self.next();
                    if self.peek().tok == Tok::RBrace {
                        break;
                    }
                }
                Tok::RBrace => break,
                _ => return self.err("expected `;` or `}` after arrow declaration"),
            }
        }
        self.expect(Tok::RBrace, "`}`")?;
        self.expect_keyword("relations")?;
        self.expect(Tok::LBrace, "`{`")?;
        let mut relations = Vec::new();
        while self.peek().tok != Tok::RBrace {
            let start = self.peek().clone();
            let left = self.parse_term()?;
            let right = if self.peek().tok == Tok::Minus {
                self.next();
                Some(self.parse_term()?)
            } else {
                None
            };
            self.expect(Tok::Semi, "`;` after relation")?;
            relations.push(RawRelation { left, right, line: start.line, col: start.col });
        }
        self.expect(Tok::RBrace, "`}`")?;
        if self.peek().tok != Tok::Eof {
            return self.err("expected end of input");
        }
        Ok(RawFile { vertices, arrows, relations })
    }

    fn parse_term(&mut self) -> Result<Vec<RawFactor>, SpecError> {
        let mut factors = vec![];
        loop {
            self.parse_factor(&mut factors)?;
            if self.peek().tok == Tok::Star {
                self.next();
            } else {
                break;
            }
        }
        Ok(factors)
    }

    fn parse_factor(&mut self, out: &mut Vec<RawFactor>) -> Result<(), SpecError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Ident(name) => {
                self.next();
                let power = self.parse_power()?;
                for _ in 0..power {
                    out.push(RawFactor { name: name.clone(), line: t.line, col: t.col });
                }
                Ok(())
            }
            Tok::Number(_) => Err(SpecError::Semantic {
                line: t.line,
                col: t.col,
                msg: "scalar coefficients are not supported; commutativity relations are \
                      normalised with coefficient 1 on both components"
                    .into(),
            }),
            Tok::LParen => {
                self.next();
                let inner = self.parse_term()?;
                self.expect(Tok::RParen, "`)`")?;
                let power = self.parse_power()?;
                for _ in 0..power {
                    for f in &inner {
                        out.push(RawFactor { name: f.name.clone(), line: f.line, col: f.col });
                    }
                }
                Ok(())
            }
            _ => self.err("expected an arrow name, `(`, or a relation"),
        }
    }

    fn parse_power(&mut self) -> Result<usize, SpecError> {
        if self.peek().tok != Tok::Caret {
            return Ok(1);
        }
        self.next();
        let t = self.peek().clone();
        match t.tok {
            Tok::Number(s) => {
                self.next();
                let n: usize = s.parse().map_err(|_| SpecError::Syntax {
                    line: t.line,
                    col: t.col,
                    msg: "exponent out of range".into(),
                })?;
                if n > MAX_POWER {
                    return Err(SpecError::Semantic {
                        line: t.line,
                        col: t.col,
                        msg: format!("exponent {n} exceeds the supported maximum {MAX_POWER}"),
                    });
                }
                Ok(n)
            }
            _ => self.err("expected an exponent after `^`"),
        }
    }
}

// ---------------------------------------------------------------------------
// Validation

fn validate(ast: RawFile) -> Result<SbAlgebraSpec, SpecError> {
    let mut vertex_names = Vec::new();
    for (name, l, c) in &ast.vertices {
        if vertex_names.contains(name) {
            return Err(SpecError::Semantic {
                line: *l,
                col: *c,
                msg: format!("duplicate vertex name `{name}`"),
            });
        }
        vertex_names.push(name.clone());
    }
    let mut arrows = Vec::new();
    let mut arrow_names: Vec<String> = Vec::new();
    for (name, src, tgt, l, c) in &ast.arrows {
        if arrow_names.contains(name) || vertex_names.contains(name) {
            return Err(SpecError::Semantic {
                line: *l,
                col: *c,
                msg: format!("duplicate name `{name}`"),
            });
        }
        let source = vertex_names.iter().position(|v| v == src).ok_or(SpecError::Semantic {
            line: *l,
            col: *c,
            msg: format!("unknown vertex `{src}`"),
        })?;
        let target = vertex_names.iter().position(|v| v == tgt).ok_or(SpecError::Semantic {
            line: *l,
            col: *c,
            msg: format!("unknown vertex `{tgt}`"),
        })?;
        arrow_names.push(name.clone());
        arrows.push(Arrow { name: name.clone(), source: VertexId(source), target: VertexId(target) });
    }
    let quiver = Quiver::new(vertex_names, arrows);

    if !quiver.is_sub_m_regular(2) {
        let v = quiver
            .vertices()
            .find(|&v| quiver.in_degree(v) > 2 || quiver.out_degree(v) > 2)
            .unwrap();
        return Err(SpecError::SbAxiom {
            msg: format!(
                "vertex {} has degree above 2; the quiver of a special biserial algebra \
                 is sub-2-regular",
                quiver.vertex_name(v)
            ),
        });
    }

    let resolve = |factors: &[RawFactor]| -> Result<Word, SpecError> {
        let mut word = Word::new();
        for f in factors {
            let a = quiver.arrow_by_name(&f.name).ok_or(SpecError::Semantic {
                line: f.line,
                col: f.col,
                msg: format!("unknown arrow `{}`", f.name),
            })?;
            if let Some(&prev) = word.last() {
                if quiver.target(prev) != quiver.source(a) {
                    return Err(SpecError::Semantic {
                        line: f.line,
                        col: f.col,
                        msg: format!(
                            "`{}` does not compose with `{}` (target {} ≠ source {})",
                            quiver.arrow_name(prev),
                            f.name,
                            quiver.vertex_name(quiver.target(prev)),
                            quiver.vertex_name(quiver.source(a)),
                        ),
                    });
                }
            }
            word.push(a);
        }
        Ok(word)
    };

    let mut monomials: Vec<Word> = Vec::new();
    let mut commutativity: Vec<CommutativityRelation> = Vec::new();
    for rel in &ast.relations {
        let left = resolve(&rel.left)?;
        let right = rel.right.as_ref().map(|r| resolve(r)).transpose()?;
        let too_short = |w: &Word| w.len() < 2;
        match right {
            None => {
                if too_short(&left) {
                    return Err(SpecError::Semantic {
                        line: rel.line,
                        col: rel.col,
                        msg: "every relation component must have length at least 2".into(),
                    });
                }
                if !monomials.contains(&left) {
                    monomials.push(left);
                }
            }
            Some(right) => {
                if too_short(&left) || too_short(&right) {
                    return Err(SpecError::Semantic {
                        line: rel.line,
                        col: rel.col,
                        msg: "every relation component must have length at least 2".into(),
                    });
                }
                let (ls, lt) = (quiver.source(left[0]), quiver.target(*left.last().unwrap()));
                let (rs, rt) = (quiver.source(right[0]), quiver.target(*right.last().unwrap()));
                if ls != rs || lt != rt {
                    return Err(SpecError::Semantic {
                        line: rel.line,
                        col: rel.col,
                        msg: "the two components of a commutativity relation must be parallel \
                              (same source and target)"
                            .into(),
                    });
                }
                if left[0] == right[0] || left.last() == right.last() {
                    return Err(SpecError::Semantic {
                        line: rel.line,
                        col: rel.col,
                        msg: "the two components of a commutativity relation must differ in \
                              their first arrows and in their last arrows"
                            .into(),
                    });
                }
                let dup = commutativity.iter().any(|c| {
                    (c.left == left && c.right == right) || (c.left == right && c.right == left)
                });
                if !dup {
                    commutativity.push(CommutativityRelation { left, right });
                }
            }
        }
    }

    check_biserial_structure(&quiver, &monomials, &commutativity)?;

    let (successor, predecessor) = successor_maps(&quiver, &monomials);
    let spec =
        SbAlgebraSpec { quiver, monomials, commutativity, successor, predecessor };
    check_admissible(&spec)?;
    Ok(spec)
}

fn check_biserial_structure(
    quiver: &Quiver,
    monomials: &[Word],
    commutativity: &[CommutativityRelation],
) -> Result<(), SpecError> {
    let word_str = |w: &Word| {
        w.iter().map(|&a| quiver.arrow_name(a)).collect::<Vec<_>>().join("*")
    };
    let components: Vec<&Word> =
        commutativity.iter().flat_map(|c| [&c.left, &c.right]).collect();
    for comp in &components {
        for m in monomials {
            if contains_subword(comp, m) {
                return Err(SpecError::SbAxiom {
                    msg: format!(
                        "commutativity component {} has zero residue (it contains the \
                         monomial relation {})",
                        word_str(comp),
                        word_str(m)
                    ),
                });
            }
        }
    }
    for (i, a) in components.iter().enumerate() {
        for (j, b) in components.iter().enumerate() {
            if i != j && contains_subword(a, b) && (i / 2 != j / 2) {
                return Err(SpecError::SbAxiom {
                    msg: format!(
                        "commutativity components {} and {} overlap; components of \
                         distinct relations must be incomparable",
                        word_str(a),
                        word_str(b)
                    ),
                });
            }
        }
    }
    for (i, c) in commutativity.iter().enumerate() {
        for other in &commutativity[i + 1..] {
            let (s1, s2) = (quiver.source(c.left[0]), quiver.source(other.left[0]));
            let (t1, t2) = (
                quiver.target(*c.left.last().unwrap()),
                quiver.target(*other.left.last().unwrap()),
            );
            if s1 == s2 || t1 == t2 {
                return Err(SpecError::SbAxiom {
                    msg: format!(
                        "two commutativity relations share the {} vertex {}; a special \
                         biserial presentation admits at most one per vertex",
                        if s1 == s2 { "source" } else { "target" },
                        quiver.vertex_name(if s1 == s2 { s1 } else { t1 })
                    ),
                });
            }
        }
    }
    // The defining axiom: each arrow has at most one nonzero successor and
    // at most one nonzero predecessor, judged at length 2.
    let len2: Vec<&Word> = monomials.iter().filter(|m| m.len() == 2).collect();
    let zero2 = |x: ArrowId, y: ArrowId| len2.iter().any(|m| m[0] == x && m[1] == y);
    for a in quiver.arrow_ids() {
        let succs: Vec<ArrowId> = quiver
            .out_arrows(quiver.target(a))
            .into_iter()
            .filter(|&b| !zero2(a, b))
            .collect();
        if succs.len() > 1 {
            return Err(SpecError::SbAxiom {
                msg: format!(
                    "arrow {} has {} nonzero successors ({}); at most one is allowed",
                    quiver.arrow_name(a),
                    succs.len(),
                    succs.iter().map(|&b| quiver.arrow_name(b)).collect::<Vec<_>>().join(", ")
                ),
            });
        }
        let preds: Vec<ArrowId> = quiver
            .in_arrows(quiver.source(a))
            .into_iter()
            .filter(|&g| !zero2(g, a))
            .collect();
        if preds.len() > 1 {
            return Err(SpecError::SbAxiom {
                msg: format!(
                    "arrow {} has {} nonzero predecessors ({}); at most one is allowed",
                    quiver.arrow_name(a),
                    preds.len(),
                    preds.iter().map(|&g| quiver.arrow_name(g)).collect::<Vec<_>>().join(", ")
                ),
            });
        }
    }
    Ok(())
}

fn check_admissible(spec: &SbAlgebraSpec) -> Result<(), SpecError> {
    let longest = spec
        .monomials
        .iter()
        .map(|m| m.len())
        .chain(spec.commutativity.iter().flat_map(|c| [c.left.len(), c.right.len()]))
        .max()
        .unwrap_or(2);
    let bound = spec.quiver.n_arrows() * longest + 1;
    for a in spec.quiver.arrow_ids() {
        let mut word = vec![a];
        loop {
            let next = match spec.nonzero_successor(*word.last().unwrap()) {
                Some(b) => b,
                None => break,
            };
            word.push(next);
            if !spec.residue_is_nonzero(&word) {
                break;
            }
            if word.len() > bound {
                return Err(SpecError::NonAdmissible {
                    msg: format!(
                        "nonzero paths from arrow {} exceed length {}; no power of the \
                         arrow ideal is contained in the relation ideal",
                        spec.quiver.arrow_name(a),
                        bound
                    ),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> SbAlgebraSpec {
        SbAlgebraSpec::parse(example_source(1).unwrap()).unwrap()
    }

    #[test]
    fn parses_example_algebra() {
        let spec = example();
        assert_eq!(spec.quiver().n_vertices(), 2);
        assert_eq!(spec.quiver().n_arrows(), 4);
        assert_eq!(spec.monomials().len(), 6);
        assert_eq!(spec.commutativity().len(), 1);
        assert!(!spec.is_monomial_algebra());
    }

    #[test]
    fn print_parse_roundtrip() {
        let spec = example();
        let reparsed = SbAlgebraSpec::parse(&spec.print()).unwrap();
        assert_eq!(spec, reparsed);
        let op = spec.opposite();
        assert_eq!(op, SbAlgebraSpec::parse(&op.print()).unwrap());
    }

    #[test]
    fn residue_rule_on_example() {
        let spec = example();
        let a = |n: &str| spec.quiver().arrow_by_name(n).unwrap();
        // αβγ is a commutativity component: nonzero itself, dead beyond.
        assert!(spec.residue_is_nonzero(&[a("a"), a("b"), a("c")]));
        assert!(!spec.residue_is_nonzero(&[a("a"), a("b"), a("c"), a("a")]));
        assert!(spec.residue_is_nonzero(&[a("d"), a("d"), a("d")]));
        assert!(!spec.residue_is_nonzero(&[a("d"), a("d"), a("d"), a("d")]));
        assert!(!spec.residue_is_nonzero(&[a("c"), a("b")]));
    }

    #[test]
    fn successor_map_on_example() {
        let spec = example();
        let a = |n: &str| spec.quiver().arrow_by_name(n).unwrap();
        assert_eq!(spec.nonzero_successor(a("a")), Some(a("b")));
        assert_eq!(spec.nonzero_successor(a("b")), Some(a("c")));
        assert_eq!(spec.nonzero_successor(a("c")), Some(a("a")));
        assert_eq!(spec.nonzero_successor(a("d")), Some(a("d")));
        assert_eq!(spec.nonzero_predecessor(a("b")), Some(a("a")));
    }

    #[test]
    fn opposite_is_involution() {
        let spec = example();
        assert_eq!(spec.opposite().opposite(), spec);
        let q = spec.opposite();
        let b = q.quiver().arrow_by_name("b").unwrap();
        assert_eq!(q.quiver().vertex_name(q.quiver().source(b)), "2");
    }

    #[test]
    fn non_composable_relation_rejected() {
        let text = "quiver { vertices: 1 2; arrows: a: 1 -> 1; d: 2 -> 2; }\n\
                    relations { a*d; }";
        match SbAlgebraSpec::parse(text) {
            Err(SpecError::Semantic { msg, .. }) => assert!(msg.contains("compose")),
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_arrow_rejected() {
        let text = "quiver { vertices: 1; arrows: a: 1 -> 1; }\nrelations { a*x; }";
        assert!(matches!(SbAlgebraSpec::parse(text), Err(SpecError::Semantic { .. })));
    }

    #[test]
    fn scalar_coefficient_rejected_with_normalisation_hint() {
        let text = "quiver { vertices: 1; arrows: a: 1 -> 1; }\nrelations { 2*a*a; }";
        match SbAlgebraSpec::parse(text) {
            Err(SpecError::Semantic { msg, .. }) => assert!(msg.contains("normalised")),
            other => panic!("expected a semantic error, got {other:?}"),
        }
    }

    #[test]
    fn over_regular_quiver_rejected() {
        let text = "quiver { vertices: 1 2; arrows: a: 1 -> 2; b: 1 -> 2; c: 1 -> 2; }\n\
                    relations { }";
        assert!(matches!(SbAlgebraSpec::parse(text), Err(SpecError::SbAxiom { .. })));
    }

    #[test]
    fn sb_axiom_violation_rejected() {
        // Both successors of `a` stay nonzero: not special biserial.
        let text = "quiver { vertices: 1 2; arrows: a: 1 -> 2; b: 2 -> 1; c: 2 -> 2; }\n\
                    relations { b*a; c*c; }";
        assert!(matches!(SbAlgebraSpec::parse(text), Err(SpecError::SbAxiom { .. })));
    }

    #[test]
    fn inadmissible_ideal_rejected() {
        let text = "quiver { vertices: 1; arrows: a: 1 -> 1; }\nrelations { }";
        assert!(matches!(SbAlgebraSpec::parse(text), Err(SpecError::NonAdmissible { .. })));
    }

    #[test]
    fn acyclic_relation_free_quiver_accepted() {
        let text = "quiver { vertices: 1 2; arrows: a: 1 -> 2; }\nrelations { }";
        let spec = SbAlgebraSpec::parse(text).unwrap();
        assert!(spec.is_monomial_algebra());
        assert_eq!(spec.nonzero_successor(ArrowId(0)), None);
    }

    #[test]
    fn syntax_error_reports_location() {
        let text = "quiver {\n  vertices: 1;\n  arrows: a: 1 -> ;\n}\nrelations { }";
        match SbAlgebraSpec::parse(text) {
            Err(SpecError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn parenthesised_powers_expand() {
        let text = "quiver { vertices: 1 2; arrows: a: 1 -> 2; b: 2 -> 1; }\n\
                    relations { (a*b)^2; b*a - b*a*a*b*a; }";
        // (a*b)^2 = a*b*a*b; second relation is ill-formed (same first arrow).
        assert!(matches!(SbAlgebraSpec::parse(text), Err(SpecError::Semantic { .. })));
        let ok = "quiver { vertices: 1 2; arrows: a: 1 -> 2; b: 2 -> 1; }\n\
                  relations { (a*b)^2; }";
        let spec = SbAlgebraSpec::parse(ok).unwrap();
        assert_eq!(spec.monomials()[0].len(), 4);
        assert_eq!(spec.word_string(&spec.monomials()[0]), "a*b*a*b");
    }
}
