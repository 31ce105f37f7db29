//! Lexer and recursive-descent parser for the surface language.
//!
//! One definition per `def name : TYPE = TERM`; line comments start with
//! `--`. Interval terms use `0`, `1`, identifiers, `~r`, `r /\ s`,
//! `r \/ s`; faces use `(r = 0)`, `(r = 1)`, `/\`, `\/` and
//! `forall x. phi`.

use std::fmt;
use std::rc::Rc;

use crate::interval::{Endpoint, Name};
use crate::syntax::*;

#[derive(Clone, PartialEq, Debug)]
pub struct ParseError {
    pub span: Span,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Source text with line/column lookup for error reporting.
pub struct SourceFile {
    pub name: String,
    pub text: String,
}

impl SourceFile {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> SourceFile {
        SourceFile { name: name.into(), text: text.into() }
    }

    /// 1-based line and column of a byte offset.
    pub fn line_col(&self, offset: u32) -> (u32, u32) {
        let mut line = 1;
        let mut col = 1;
        for (i, c) in self.text.char_indices() {
            if i as u32 >= offset {
                break;
            }
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }
}

const KEYWORDS: &[&str] = &[
    "def", "U", "Nat", "zero", "suc", "natrec", "Sum", "inl", "inr", "case",
    "Path", "Id", "idPair", "refl", "idJ", "comp", "fill", "Glue", "glue",
    "unglue", "forall",
];

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Ident(String),
    Key(&'static str),
    Num(u8),
    Proj(u8),
    LParen,
    RParen,
    LBracket,
    RBracket,
    LAngle,
    RAngle,
    Lambda,
    Dot,
    Comma,
    Colon,
    Equal,
    Arrow,
    Star,
    At,
    Tilde,
    MeetOp,
    JoinOp,
    Comment(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    span: Span,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let start = i as u32;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                i += 1;
            }
            '(' => {
                toks.push(Token { tok: Tok::LParen, span: Span::new(start, start + 1) });
                i += 1;
            }
            ')' => {
                toks.push(Token { tok: Tok::RParen, span: Span::new(start, start + 1) });
                i += 1;
            }
            '[' => {
                toks.push(Token { tok: Tok::LBracket, span: Span::new(start, start + 1) });
                i += 1;
            }
            ']' => {
                toks.push(Token { tok: Tok::RBracket, span: Span::new(start, start + 1) });
                i += 1;
            }
            '<' => {
                toks.push(Token { tok: Tok::LAngle, span: Span::new(start, start + 1) });
                i += 1;
            }
            '>' => {
                toks.push(Token { tok: Tok::RAngle, span: Span::new(start, start + 1) });
                i += 1;
            }
            ',' => {
                toks.push(Token { tok: Tok::Comma, span: Span::new(start, start + 1) });
                i += 1;
            }
            ':' => {
                toks.push(Token { tok: Tok::Colon, span: Span::new(start, start + 1) });
                i += 1;
            }
            '=' => {
                toks.push(Token { tok: Tok::Equal, span: Span::new(start, start + 1) });
                i += 1;
            }
            '*' => {
                toks.push(Token { tok: Tok::Star, span: Span::new(start, start + 1) });
                i += 1;
            }
            '@' => {
                toks.push(Token { tok: Tok::At, span: Span::new(start, start + 1) });
                i += 1;
            }
            '~' => {
                toks.push(Token { tok: Tok::Tilde, span: Span::new(start, start + 1) });
                i += 1;
            }
            '.' => {
                if i + 1 < bytes.len() && (bytes[i + 1] == b'1' || bytes[i + 1] == b'2') {
                    let n = bytes[i + 1] - b'0';
                    toks.push(Token { tok: Tok::Proj(n), span: Span::new(start, start + 2) });
                    i += 2;
                } else {
                    toks.push(Token { tok: Tok::Dot, span: Span::new(start, start + 1) });
                    i += 1;
                }
            }
            '-' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'>' {
                    toks.push(Token { tok: Tok::Arrow, span: Span::new(start, start + 2) });
                    i += 2;
                } else if i + 1 < bytes.len() && bytes[i + 1] == b'-' {
                    let mut j = i + 2;
                    while j < bytes.len() && bytes[j] != b'\n' {
                        j += 1;
                    }
                    let text = src[i + 2..j].trim().to_string();
                    toks.push(Token {
                        tok: Tok::Comment(text),
                        span: Span::new(start, j as u32),
                    });
                    i = j;
                } else {
                    return Err(ParseError {
                        span: Span::new(start, start + 1),
                        msg: "unexpected `-`".into(),
                    });
                }
            }
            '/' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'\\' {
                    toks.push(Token { tok: Tok::MeetOp, span: Span::new(start, start + 2) });
                    i += 2;
                } else {
                    return Err(ParseError {
                        span: Span::new(start, start + 1),
                        msg: "unexpected `/`".into(),
                    });
                }
            }
            '\\' => {
                if i + 1 < bytes.len() && bytes[i + 1] == b'/' {
                    toks.push(Token { tok: Tok::JoinOp, span: Span::new(start, start + 2) });
                    i += 2;
                } else {
                    toks.push(Token { tok: Tok::Lambda, span: Span::new(start, start + 1) });
                    i += 1;
                }
            }
            '0' | '1' => {
                toks.push(Token {
                    tok: Tok::Num(bytes[i] - b'0'),
                    span: Span::new(start, start + 1),
                });
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < bytes.len() {
                    let b = bytes[j] as char;
                    if b.is_ascii_alphanumeric() || b == '_' || b == '\'' {
                        j += 1;
                    } else {
                        break;
                    }
                }
                let word = &src[i..j];
                let span = Span::new(start, j as u32);
                if let Some(kw) = KEYWORDS.iter().find(|k| **k == word) {
                    toks.push(Token { tok: Tok::Key(kw), span });
                } else {
                    toks.push(Token { tok: Tok::Ident(word.to_string()), span });
                }
                i = j;
            }
            _ => {
                return Err(ParseError {
                    span: Span::new(start, start + 1),
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: u32,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_span(&self) -> Span {
        self.toks
            .get(self.pos)
            .map(|t| t.span)
            .unwrap_or(Span::new(self.end, self.end))
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, ParseError> {
        let span = self.peek_span();
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(span)
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn err(&self, msg: String) -> ParseError {
        ParseError { span: self.peek_span(), msg }
    }

    fn ident(&mut self, what: &str) -> Result<(Name, Span), ParseError> {
        let span = self.peek_span();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok((Rc::from(s.as_str()), span))
            }
            Some(Tok::Key(k)) => Err(ParseError {
                span,
                msg: format!("reserved word `{k}` cannot be used as {what}"),
            }),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn endpoint(&mut self) -> Result<Endpoint, ParseError> {
        match self.peek() {
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(Endpoint::Zero)
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(Endpoint::One)
            }
            _ => Err(self.err("expected endpoint `0` or `1`".into())),
        }
    }

    // ---- interval expressions ----

    fn iexpr(&mut self) -> Result<IExpr, ParseError> {
        let mut lhs = self.imeet()?;
        while self.eat(&Tok::JoinOp) {
            let rhs = self.imeet()?;
            let span = lhs.span.merge(rhs.span);
            lhs = IExpr { span, kind: IExprKind::Join(Rc::new(lhs), Rc::new(rhs)) };
        }
        Ok(lhs)
    }

    fn imeet(&mut self) -> Result<IExpr, ParseError> {
        let mut lhs = self.iatom()?;
        while self.eat(&Tok::MeetOp) {
            let rhs = self.iatom()?;
            let span = lhs.span.merge(rhs.span);
            lhs = IExpr { span, kind: IExprKind::Meet(Rc::new(lhs), Rc::new(rhs)) };
        }
        Ok(lhs)
    }

    fn iatom(&mut self) -> Result<IExpr, ParseError> {
        let span = self.peek_span();
        match self.peek().cloned() {
            Some(Tok::Num(0)) => {
                self.pos += 1;
                Ok(IExpr { span, kind: IExprKind::Zero })
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                Ok(IExpr { span, kind: IExprKind::One })
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(IExpr { span, kind: IExprKind::Var(Rc::from(s.as_str())) })
            }
            Some(Tok::Tilde) => {
                self.pos += 1;
                let inner = self.iatom()?;
                let span = span.merge(inner.span);
                Ok(IExpr { span, kind: IExprKind::Neg(Rc::new(inner)) })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iexpr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err("expected interval expression".into())),
        }
    }

    // ---- face expressions ----

    fn fexpr(&mut self) -> Result<FExpr, ParseError> {
        if self.peek() == Some(&Tok::Key("forall")) {
            let span = self.peek_span();
            self.pos += 1;
            let (x, _) = self.ident("a direction binder")?;
            self.expect(Tok::Dot, "`.`")?;
            let body = self.fexpr()?;
            let span = span.merge(body.span);
            return Ok(FExpr { span, kind: FExprKind::Forall(x, Rc::new(body)) });
        }
        let mut lhs = self.fand()?;
        while self.eat(&Tok::JoinOp) {
            let rhs = self.fand()?;
            let span = lhs.span.merge(rhs.span);
            lhs = FExpr { span, kind: FExprKind::Or(Rc::new(lhs), Rc::new(rhs)) };
        }
        Ok(lhs)
    }

    fn fand(&mut self) -> Result<FExpr, ParseError> {
        let mut lhs = self.fatom()?;
        while self.eat(&Tok::MeetOp) {
            let rhs = self.fatom()?;
            let span = lhs.span.merge(rhs.span);
            lhs = FExpr { span, kind: FExprKind::And(Rc::new(lhs), Rc::new(rhs)) };
        }
        Ok(lhs)
    }

    fn fatom(&mut self) -> Result<FExpr, ParseError> {
        if self.peek() == Some(&Tok::Key("forall")) {
            return self.fexpr();
        }
        let open = self.expect(Tok::LParen, "`(` starting a face".into())?;
        // Try an atomic constraint `r = e` first, then a parenthesised face.
        let save = self.pos;
        if let Ok(r) = self.iexpr() {
            if self.eat(&Tok::Equal) {
                let e = self.endpoint()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                return Ok(FExpr {
                    span: open.merge(close),
                    kind: FExprKind::Eq(r, e),
                });
            }
        }
        self.pos = save;
        let inner = self.fexpr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(inner)
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Lambda) => self.lambda(),
            Some(Tok::LAngle) => self.plam(),
            _ => self.arrow(),
        }
    }

    fn lambda(&mut self) -> Result<Term, ParseError> {
        let span = self.peek_span();
        self.expect(Tok::Lambda, "`\\`")?;
        let mut names = Vec::new();
        loop {
            let (n, _) = self.ident("a binder")?;
            names.push(n);
            if self.peek() == Some(&Tok::Dot) {
                break;
            }
        }
        self.expect(Tok::Dot, "`.`")?;
        let body = self.term()?;
        let span = span.merge(body.span);
        let mut t = body;
        for n in names.into_iter().rev() {
            t = Term::new(span, TermKind::Lam(n, Rc::new(t)));
        }
        Ok(t)
    }

    fn plam(&mut self) -> Result<Term, ParseError> {
        let span = self.peek_span();
        self.expect(Tok::LAngle, "`<`")?;
        let mut names = Vec::new();
        loop {
            let (n, _) = self.ident("a direction binder")?;
            names.push(n);
            if self.peek() == Some(&Tok::RAngle) {
                break;
            }
        }
        self.expect(Tok::RAngle, "`>`")?;
        let body = self.term()?;
        let span = span.merge(body.span);
        let mut t = body;
        for n in names.into_iter().rev() {
            t = Term::new(span, TermKind::PLam(n, Rc::new(t)));
        }
        Ok(t)
    }

    /// Parse one or more binder groups `(x y : A)` if present, returning
    /// `None` (with reset position) when the input is not a telescope.
    fn try_telescope(&mut self) -> Option<Vec<(Vec<Name>, Term)>> {
        let save = self.pos;
        let mut groups = Vec::new();
        loop {
            let start = self.pos;
            if !self.eat(&Tok::LParen) {
                break;
            }
            let mut names = Vec::new();
            loop {
                match self.peek().cloned() {
                    Some(Tok::Ident(s)) => {
                        self.pos += 1;
                        names.push(Rc::from(s.as_str()));
                    }
                    _ => break,
                }
            }
            if names.is_empty() || !self.eat(&Tok::Colon) {
                self.pos = start;
                break;
            }
            let ty = match self.term() {
                Ok(t) => t,
                Err(_) => {
                    self.pos = save;
                    return None;
                }
            };
            if !self.eat(&Tok::RParen) {
                self.pos = save;
                return None;
            }
            groups.push((names, ty));
        }
        if groups.is_empty() {
            self.pos = save;
            return None;
        }
        // A telescope must be followed by an arrow or a product.
        if self.peek() == Some(&Tok::Arrow) || self.peek() == Some(&Tok::Star) {
            Some(groups)
        } else {
            self.pos = save;
            None
        }
    }

    fn arrow(&mut self) -> Result<Term, ParseError> {
        if let Some(groups) = self.try_telescope() {
            if self.eat(&Tok::Star) {
                // Dependent pair type: only a single single-name group.
                if groups.len() != 1 || groups[0].0.len() != 1 {
                    return Err(self.err(
                        "a dependent pair type binds exactly one variable".into(),
                    ));
                }
                let (names, dom) = groups.into_iter().next().unwrap();
                let body = self.arrow()?;
                let span = dom.span.merge(body.span);
                return Ok(Term::new(
                    span,
                    TermKind::Sigma(names.into_iter().next().unwrap(), Rc::new(dom), Rc::new(body)),
                ));
            }
            self.expect(Tok::Arrow, "`->`")?;
            let body = self.term()?;
            let mut t = body;
            for (names, dom) in groups.into_iter().rev() {
                for n in names.into_iter().rev() {
                    let span = dom.span.merge(t.span);
                    t = Term::new(span, TermKind::Pi(n, Rc::new(dom.clone()), Rc::new(t)));
                }
            }
            return Ok(t);
        }
        let lhs = self.product()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.term()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(Term::new(
                span,
                TermKind::Pi(Rc::from("_"), Rc::new(lhs), Rc::new(rhs)),
            ));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let lhs = self.papp()?;
        if self.eat(&Tok::Star) {
            let rhs = self.product()?;
            let span = lhs.span.merge(rhs.span);
            return Ok(Term::new(
                span,
                TermKind::Sigma(Rc::from("_"), Rc::new(lhs), Rc::new(rhs)),
            ));
        }
        Ok(lhs)
    }

    fn papp(&mut self) -> Result<Term, ParseError> {
        let mut t = self.app()?;
        while self.eat(&Tok::At) {
            let r = self.iexpr()?;
            let span = t.span.merge(r.span);
            t = Term::new(span, TermKind::PApp(Rc::new(t), r));
        }
        Ok(t)
    }

    fn app(&mut self) -> Result<Term, ParseError> {
        let mut t = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            let span = t.span.merge(arg.span);
            t = Term::new(span, TermKind::App(Rc::new(t), Rc::new(arg)));
        }
        Ok(t)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_))
                | Some(Tok::LParen)
                | Some(Tok::LAngle)
                | Some(Tok::Key(
                    "U" | "Nat" | "zero" | "suc" | "natrec" | "Sum" | "inl" | "inr"
                        | "case" | "Path" | "Id" | "idPair" | "refl" | "idJ" | "comp"
                        | "fill" | "Glue" | "glue" | "unglue",
                ))
        )
    }

    /// Parse a `<i> T` line argument for comp and fill.
    fn line_arg(&mut self) -> Result<(Name, Term), ParseError> {
        self.expect(Tok::LParen, "`(` starting a type line")?;
        self.expect(Tok::LAngle, "`<`")?;
        let (dir, _) = self.ident("a direction binder")?;
        self.expect(Tok::RAngle, "`>`")?;
        let body = self.term()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok((dir, body))
    }

    /// Parse a `[ phi -> t, ... ]` system. When `tube` is set, a leading
    /// `<j>` on a branch binds the tube direction.
    fn system(&mut self, tube: bool) -> Result<Vec<SysEntry>, ParseError> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut entries = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(entries);
        }
        loop {
            let face = self.fexpr()?;
            self.expect(Tok::Arrow, "`->`")?;
            let (dir, body) = if tube && self.peek() == Some(&Tok::LAngle) {
                let save = self.pos;
                self.pos += 1;
                let (d, _) = self.ident("a direction binder")?;
                if self.eat(&Tok::RAngle) {
                    let body = self.term()?;
                    (Some(d), body)
                } else {
                    self.pos = save;
                    (None, self.term()?)
                }
            } else {
                (None, self.term()?)
            };
            entries.push(SysEntry { face, dir, body });
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket, "`]` or `,`")?;
        Ok(entries)
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let mut t = self.base_atom()?;
        loop {
            match self.peek() {
                Some(Tok::Proj(1)) => {
                    let span = t.span.merge(self.peek_span());
                    self.pos += 1;
                    t = Term::new(span, TermKind::Fst(Rc::new(t)));
                }
                Some(Tok::Proj(2)) => {
                    let span = t.span.merge(self.peek_span());
                    self.pos += 1;
                    t = Term::new(span, TermKind::Snd(Rc::new(t)));
                }
                _ => break,
            }
        }
        Ok(t)
    }

    fn base_atom(&mut self) -> Result<Term, ParseError> {
        let span = self.peek_span();
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Term::new(span, TermKind::Var(Rc::from(s.as_str()))))
            }
            Some(Tok::Key("U")) => {
                self.pos += 1;
                Ok(Term::new(span, TermKind::U))
            }
            Some(Tok::Key("Nat")) => {
                self.pos += 1;
                Ok(Term::new(span, TermKind::Nat))
            }
            Some(Tok::Key("zero")) => {
                self.pos += 1;
                Ok(Term::new(span, TermKind::Zero))
            }
            Some(Tok::Key("suc")) => {
                self.pos += 1;
                let t = self.atom()?;
                let span = span.merge(t.span);
                Ok(Term::new(span, TermKind::Suc(Rc::new(t))))
            }
            Some(Tok::Key("natrec")) => {
                self.pos += 1;
                let p = self.atom()?;
                let z = self.atom()?;
                let s = self.atom()?;
                let n = self.atom()?;
                let span = span.merge(n.span);
                Ok(Term::new(
                    span,
                    TermKind::NatRec(Rc::new(p), Rc::new(z), Rc::new(s), Rc::new(n)),
                ))
            }
            Some(Tok::Key("Sum")) => {
                self.pos += 1;
                let a = self.atom()?;
                let b = self.atom()?;
                let span = span.merge(b.span);
                Ok(Term::new(span, TermKind::Sum(Rc::new(a), Rc::new(b))))
            }
            Some(Tok::Key("inl")) => {
                self.pos += 1;
                let t = self.atom()?;
                let span = span.merge(t.span);
                Ok(Term::new(span, TermKind::Inl(Rc::new(t))))
            }
            Some(Tok::Key("inr")) => {
                self.pos += 1;
                let t = self.atom()?;
                let span = span.merge(t.span);
                Ok(Term::new(span, TermKind::Inr(Rc::new(t))))
            }
            Some(Tok::Key("case")) => {
                self.pos += 1;
                let p = self.atom()?;
                let l = self.atom()?;
                let r = self.atom()?;
                let s = self.atom()?;
                let span = span.merge(s.span);
                Ok(Term::new(
                    span,
                    TermKind::Case(Rc::new(p), Rc::new(l), Rc::new(r), Rc::new(s)),
                ))
            }
            Some(Tok::Key("Path")) => {
                self.pos += 1;
                let a = self.atom()?;
                let x = self.atom()?;
                let y = self.atom()?;
                let span = span.merge(y.span);
                Ok(Term::new(span, TermKind::Path(Rc::new(a), Rc::new(x), Rc::new(y))))
            }
            Some(Tok::Key("Id")) => {
                self.pos += 1;
                let a = self.atom()?;
                let x = self.atom()?;
                let y = self.atom()?;
                let span = span.merge(y.span);
                Ok(Term::new(span, TermKind::Id(Rc::new(a), Rc::new(x), Rc::new(y))))
            }
            Some(Tok::Key("idPair")) => {
                self.pos += 1;
                let p = self.atom()?;
                let f = self.fatom()?;
                let span = span.merge(f.span);
                Ok(Term::new(span, TermKind::IdPair(Rc::new(p), f)))
            }
            Some(Tok::Key("refl")) => {
                self.pos += 1;
                let t = self.atom()?;
                let span = span.merge(t.span);
                Ok(Term::new(span, TermKind::Refl(Rc::new(t))))
            }
            Some(Tok::Key("idJ")) => {
                self.pos += 1;
                let b = self.atom()?;
                let base = self.atom()?;
                let target = self.atom()?;
                let span = span.merge(target.span);
                Ok(Term::new(
                    span,
                    TermKind::IdJ(Rc::new(b), Rc::new(base), Rc::new(target)),
                ))
            }
            Some(Tok::Key("comp")) => {
                self.pos += 1;
                let e = self.endpoint()?;
                let (dir, line) = self.line_arg()?;
                let sys = self.system(true)?;
                let cap = self.atom()?;
                let span = span.merge(cap.span);
                Ok(Term::new(
                    span,
                    TermKind::Comp { e, dir, line: Rc::new(line), sys, cap: Rc::new(cap) },
                ))
            }
            Some(Tok::Key("fill")) => {
                self.pos += 1;
                let e = self.endpoint()?;
                let (dir, line) = self.line_arg()?;
                let sys = self.system(true)?;
                let cap = self.atom()?;
                let at = self.iatom()?;
                let span = span.merge(at.span);
                Ok(Term::new(
                    span,
                    TermKind::Fill {
                        e,
                        dir,
                        line: Rc::new(line),
                        sys,
                        cap: Rc::new(cap),
                        at,
                    },
                ))
            }
            Some(Tok::Key("Glue")) => {
                self.pos += 1;
                let b = self.atom()?;
                self.expect(Tok::LBracket, "`[`")?;
                let mut entries = Vec::new();
                if !self.eat(&Tok::RBracket) {
                    loop {
                        let face = self.fexpr()?;
                        self.expect(Tok::Arrow, "`->`")?;
                        self.expect(Tok::LParen, "`(`")?;
                        let ty = self.term()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let fun = self.term()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let equiv = self.term()?;
                        self.expect(Tok::RParen, "`)`")?;
                        entries.push(GlueEntry { face, ty, fun, equiv });
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.expect(Tok::RBracket, "`]` or `,`")?;
                }
                let span = span.merge(self.peek_span());
                Ok(Term::new(span, TermKind::Glue(Rc::new(b), entries)))
            }
            Some(Tok::Key("glue")) => {
                self.pos += 1;
                let sys = self.system(false)?;
                let b = self.atom()?;
                let span = span.merge(b.span);
                Ok(Term::new(span, TermKind::GlueElem(sys, Rc::new(b))))
            }
            Some(Tok::Key("unglue")) => {
                self.pos += 1;
                let t = self.atom()?;
                let span = span.merge(t.span);
                Ok(Term::new(span, TermKind::Unglue(Rc::new(t))))
            }
            Some(Tok::LAngle) => self.plam(),
            Some(Tok::LParen) => {
                self.pos += 1;
                let first = self.term()?;
                if self.eat(&Tok::Comma) {
                    let mut parts = vec![first];
                    loop {
                        parts.push(self.term()?);
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    let close = self.expect(Tok::RParen, "`)`")?;
                    let mut t = parts.pop().unwrap();
                    while let Some(prev) = parts.pop() {
                        let sp = prev.span.merge(close);
                        t = Term::new(sp, TermKind::Pair(Rc::new(prev), Rc::new(t)));
                    }
                    Ok(t)
                } else {
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(first)
                }
            }
            Some(Tok::Key(k)) => Err(ParseError {
                span,
                msg: format!("unexpected keyword `{k}`"),
            }),
            _ => Err(self.err("expected a term".into())),
        }
    }

    fn file(&mut self) -> Result<Vec<Def>, ParseError> {
        let mut defs: Vec<Def> = Vec::new();
        let mut pending_doc: Vec<String> = Vec::new();
        loop {
            match self.peek().cloned() {
                None => break,
                Some(Tok::Comment(c)) => {
                    self.pos += 1;
                    pending_doc.push(c);
                }
                Some(Tok::Key("def")) => {
                    let span = self.peek_span();
                    self.pos += 1;
                    let (name, name_span) = self.ident("a definition name")?;
                    if defs.iter().any(|d| d.name == name) {
                        return Err(ParseError {
                            span: name_span,
                            msg: format!("duplicate top-level name `{name}`"),
                        });
                    }
                    self.expect(Tok::Colon, "`:`")?;
                    let ty = self.term()?;
                    self.expect(Tok::Equal, "`=`")?;
                    let body = self.term()?;
                    let span = span.merge(body.span);
                    defs.push(Def {
                        span,
                        name,
                        ty,
                        body,
                        doc: pending_doc.join("\n"),
                    });
                    pending_doc = Vec::new();
                }
                Some(_) => {
                    return Err(self.err("expected `def`".into()));
                }
            }
        }
        Ok(defs)
    }
}

fn strip_comments_for_terms(toks: Vec<Token>) -> Vec<Token> {
    toks.into_iter()
        .filter(|t| !matches!(t.tok, Tok::Comment(_)))
        .collect()
}

/// Parse a whole source file into top-level definitions.
pub fn parse_file(src: &str) -> Result<Vec<Def>, ParseError> {
    let toks = lex(src)?;
    // Keep comments: the file parser collects them as doc text, but they
    // must be invisible inside definitions, so drop any comment token that
    // does not directly precede a `def`.
    let mut kept = Vec::new();
    for (i, t) in toks.iter().enumerate() {
        if let Tok::Comment(_) = t.tok {
            let mut j = i + 1;
            while j < toks.len() && matches!(toks[j].tok, Tok::Comment(_)) {
                j += 1;
            }
            if j < toks.len() && toks[j].tok == Tok::Key("def") {
                kept.push(t.clone());
            }
        } else {
            kept.push(t.clone());
        }
    }
    let end = src.len() as u32;
    let mut p = Parser { toks: kept, pos: 0, end };
    p.file()
}

/// Parse a single term, for tests and tooling.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let toks = strip_comments_for_terms(lex(src)?);
    let end = src.len() as u32;
    let mut p = Parser { toks, pos: 0, end };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input after term".into()));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_defs() {
        let defs = parse_file("def id : (A : U) -> A -> A = \\A a. a").unwrap();
        assert_eq!(defs.len(), 1);
        assert_eq!(&*defs[0].name, "id");
    }

    #[test]
    fn parses_path_def() {
        let defs = parse_file("def p : Path Nat zero zero = <i> zero").unwrap();
        assert_eq!(defs.len(), 1);
        assert!(matches!(defs[0].body.kind, TermKind::PLam(_, _)));
    }

    #[test]
    fn rejects_malformed_def() {
        assert!(parse_file("def bad : = ").is_err());
    }

    #[test]
    fn rejects_duplicate_names() {
        let src = "def a : Nat = zero\ndef a : Nat = zero";
        let err = parse_file(src).unwrap_err();
        assert!(err.msg.contains("duplicate"));
    }

    #[test]
    fn rejects_reserved_words_as_identifiers() {
        assert!(parse_file("def comp : Nat = zero").is_err());
    }

    #[test]
    fn parses_comp_with_system() {
        let t = parse_term(
            "comp 0 (<i> Nat) [ (x = 0) -> <j> zero, (x = 1) /\\ (y = 0) -> <j> zero ] zero",
        )
        .unwrap();
        match t.kind {
            TermKind::Comp { sys, .. } => assert_eq!(sys.len(), 2),
            _ => panic!("expected comp"),
        }
    }

    #[test]
    fn parses_fill_at_point() {
        let t = parse_term("fill 1 (<i> Nat) [] zero (x /\\ ~y)").unwrap();
        assert!(matches!(t.kind, TermKind::Fill { .. }));
    }

    #[test]
    fn parses_glue_forms() {
        let t = parse_term("Glue B [ (x = 0) -> (A, f, pf) ]").unwrap();
        assert!(matches!(t.kind, TermKind::Glue(_, _)));
        let t = parse_term("glue [ (x = 0) -> a ] b").unwrap();
        assert!(matches!(t.kind, TermKind::GlueElem(_, _)));
        let t = parse_term("unglue g").unwrap();
        assert!(matches!(t.kind, TermKind::Unglue(_)));
    }

    #[test]
    fn parses_forall_faces() {
        let t = parse_term("idPair p (forall x. (x = 0) \\/ (y = 1))").unwrap();
        assert!(matches!(t.kind, TermKind::IdPair(_, _)));
    }

    #[test]
    fn parses_sigma_and_projections() {
        let t = parse_term("((a, b).1, (a, b).2)").unwrap();
        assert!(matches!(t.kind, TermKind::Pair(_, _)));
        let t = parse_term("(x : A) * Path A x y").unwrap();
        assert!(matches!(t.kind, TermKind::Sigma(_, _, _)));
    }

    #[test]
    fn parses_papp_chains() {
        let t = parse_term("p @ i /\\ j @ ~k").unwrap();
        assert!(matches!(t.kind, TermKind::PApp(_, _)));
    }

    #[test]
    fn doc_comments_attach_to_defs() {
        let src = "-- the constant path\ndef p : Path Nat zero zero = <i> zero";
        let defs = parse_file(src).unwrap();
        assert_eq!(defs[0].doc, "the constant path");
    }
}
