use std::f64::consts::PI;

use thiserror::Error;

use super::{GateCall, Node, NodeKind, Program, SourceSpan};
use crate::matrix::AffineExpr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    LParen,
    RParen,
    Semi,
    Bar,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Newline,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
    // char offsets, end exclusive
    start: usize,
    end: usize,
}

impl Token {
    fn span(&self) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.column,
            length: self.end - self.start,
        }
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let (tok_line, tok_column) = (line, column);
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
                tokens.push(Token {
                    tok: Tok::Newline,
                    line: tok_line,
                    column: tok_column,
                    start,
                    end: i,
                });
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                column += i - start;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ';' => Tok::Semi,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                column += j - i;
                i = j;
                tokens.push(Token {
                    tok: Tok::Ident(word),
                    line: tok_line,
                    column: tok_column,
                    start,
                    end: i,
                });
                continue;
            }
            c if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_digit() || chars[j] == '.') {
                    j += 1;
                }
                if j < chars.len() && (chars[j] == 'e' || chars[j] == 'E') {
                    let mut k = j + 1;
                    if k < chars.len() && (chars[k] == '+' || chars[k] == '-') {
                        k += 1;
                    }
                    if k < chars.len() && chars[k].is_ascii_digit() {
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                        j = k;
                    }
                }
                let text: String = chars[i..j].iter().collect();
                column += j - i;
                i = j;
                tokens.push(Token {
                    tok: Tok::Number(text),
                    line: tok_line,
                    column: tok_column,
                    start,
                    end: i,
                });
                continue;
            }
            other => {
                return Err(ParseError {
                    span: SourceSpan {
                        line,
                        column,
                        length: 1,
                    },
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        i += 1;
        column += 1;
        tokens.push(Token {
            tok,
            line: tok_line,
            column: tok_column,
            start,
            end: i,
        });
    }
    tokens.push(Token {
        tok: Tok::Eof,
        line,
        column,
        start: i,
        end: i,
    });
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    params: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, ahead: usize) -> &Tok {
        let i = (self.pos + ahead).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            span: self.tokens[self.pos].span(),
            message: message.into(),
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        self.error_here(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    /// Span from token `start` through the last consumed token.
    fn span_from(&self, start: usize) -> SourceSpan {
        let first = &self.tokens[start];
        let last = &self.tokens[self.pos.max(start + 1) - 1];
        SourceSpan {
            line: first.line,
            column: first.column,
            length: last.end - first.start,
        }
    }

    fn skip_newlines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    fn integer(&mut self, what: &str) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Number(text) => {
                let value = text
                    .parse::<usize>()
                    .map_err(|_| self.error_here(format!("{what} must be a non-negative integer, found `{text}`")))?;
                self.bump();
                Ok(value)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn header(&mut self) -> Result<usize, ParseError> {
        self.skip_newlines();
        match self.peek() {
            Tok::Ident(word) if word == "params" => {
                self.bump();
            }
            _ => return Err(self.unexpected("`params N` header")),
        }
        let n = self.integer("parameter count")?;
        if !matches!(self.peek(), Tok::Newline | Tok::Eof) {
            return Err(self.unexpected("end of line after header"));
        }
        Ok(n)
    }

    fn circuit(&mut self) -> Result<Node, ParseError> {
        self.joined(Tok::Semi, Parser::term, NodeKind::Seq)
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        self.joined(Tok::Bar, Parser::factor, NodeKind::Par)
    }

    fn joined(
        &mut self,
        sep: Tok,
        item: fn(&mut Parser) -> Result<Node, ParseError>,
        build: fn(Vec<Node>) -> NodeKind,
    ) -> Result<Node, ParseError> {
        let start = self.pos;
        let mut nodes = vec![item(self)?];
        while *self.peek() == sep {
            self.bump();
            nodes.push(item(self)?);
        }
        if nodes.len() == 1 {
            return Ok(nodes.pop().expect("one node"));
        }
        Ok(Node {
            kind: build(nodes),
            span: self.span_from(start),
        })
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        match self.peek() {
            Tok::LParen => {
                self.bump();
                let mut node = self.circuit()?;
                self.expect(Tok::RParen, "`)`")?;
                node.span = self.span_from(start);
                Ok(node)
            }
            Tok::Ident(_) => self.gate(),
            _ => Err(self.unexpected("a gate or `(`")),
        }
    }

    fn gate(&mut self) -> Result<Node, ParseError> {
        let start = self.pos;
        let name = match self.bump().tok {
            Tok::Ident(name) => name,
            _ => unreachable!("caller checked for an identifier"),
        };
        let takes_dims = match name.as_str() {
            "id" => Some(1),
            "swap" => Some(2),
            _ => None,
        };
        let mut call = GateCall {
            name,
            angle: None,
            dims: None,
        };
        if let Some(count) = takes_dims {
            let wanted = if count == 1 { "(n)" } else { "(n, m)" };
            if *self.peek() != Tok::LParen {
                return Err(self.error_here(format!("`{}` needs dimensions {wanted}", call.name)));
            }
            self.bump();
            let mut dims = Vec::new();
            loop {
                let at = self.pos;
                let d = self.integer("dimension")?;
                if d == 0 {
                    return Err(ParseError {
                        span: self.tokens[at].span(),
                        message: "dimensions must be positive".into(),
                    });
                }
                dims.push(d);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            if dims.len() != count {
                return Err(ParseError {
                    span: self.span_from(start),
                    message: format!("`{}` takes dimensions {wanted}, got {}", call.name, dims.len()),
                });
            }
            self.expect(Tok::RParen, "`)`")?;
            call.dims = Some(dims);
        } else if *self.peek() == Tok::LParen {
            self.bump();
            call.angle = Some(self.expr()?);
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(Node {
            kind: NodeKind::Gate(call),
            span: self.span_from(start),
        })
    }

    fn expr(&mut self) -> Result<AffineExpr, ParseError> {
        let start = self.pos;
        let mut constant = 0.0;
        let mut terms = Vec::new();
        let mut sign = 1.0;
        loop {
            let (coeff, param) = self.prod()?;
            match param {
                Some(i) => terms.push((i, sign * coeff)),
                None => constant += sign * coeff,
            }
            sign = match self.peek() {
                Tok::Plus => 1.0,
                Tok::Minus => -1.0,
                _ => break,
            };
            self.bump();
        }
        AffineExpr::new(constant, terms).map_err(|e| ParseError {
            span: self.span_from(start),
            message: e.to_string(),
        })
    }

    /// `NUM ["*" PARAM] | PARAM`, where NUM is a product or quotient of
    /// numbers and `pi`.
    fn prod(&mut self) -> Result<(f64, Option<usize>), ParseError> {
        if let Some(i) = self.param()? {
            return Ok((1.0, Some(i)));
        }
        let mut value = self.atom()?;
        loop {
            match self.peek() {
                Tok::Star if self.peek_param_at(1) => {
                    self.bump();
                    let i = self.param()?.expect("checked parameter");
                    return Ok((value, Some(i)));
                }
                Tok::Star => {
                    self.bump();
                    value *= self.atom()?;
                }
                Tok::Slash => {
                    self.bump();
                    value /= self.atom()?;
                }
                _ => return Ok((value, None)),
            }
        }
    }

    fn peek_param_at(&self, ahead: usize) -> bool {
        matches!(self.peek_at(ahead), Tok::Ident(w) if param_index(w).is_some())
    }

    fn param(&mut self) -> Result<Option<usize>, ParseError> {
        let index = match self.peek() {
            Tok::Ident(w) => match param_index(w) {
                Some(i) => i,
                None => return Ok(None),
            },
            _ => return Ok(None),
        };
        if index >= self.params {
            return Err(self.error_here(format!("parameter t{index} out of range (params {})", self.params)));
        }
        self.bump();
        Ok(Some(index))
    }

    fn atom(&mut self) -> Result<f64, ParseError> {
        match self.peek().clone() {
            Tok::Number(text) => {
                let v = text
                    .parse::<f64>()
                    .map_err(|_| self.error_here(format!("malformed number `{text}`")))?;
                self.bump();
                Ok(v)
            }
            Tok::Ident(w) if w == "pi" => {
                self.bump();
                Ok(PI)
            }
            _ => Err(self.unexpected("a number, `pi` or a parameter")),
        }
    }
}

fn param_index(word: &str) -> Option<usize> {
    let digits = word.strip_prefix('t')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    // absurdly long indices are out of range for any header
    Some(digits.parse().unwrap_or(usize::MAX))
}

/// Parses a whole program: the `params n` header line, then one circuit.
/// Line breaks after the header are insignificant.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        params: 0,
    };
    let params = parser.header()?;
    let rest: Vec<Token> = parser.tokens[parser.pos..]
        .iter()
        .filter(|t| t.tok != Tok::Newline)
        .cloned()
        .collect();
    let mut parser = Parser {
        tokens: rest,
        pos: 0,
        params,
    };
    if *parser.peek() == Tok::Eof {
        return Err(parser.error_here("empty circuit"));
    }
    let body = parser.circuit()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.unexpected("`;`, `|` or end of input"));
    }
    Ok(Program { params, body })
}
