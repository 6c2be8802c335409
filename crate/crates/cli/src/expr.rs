//! Initial-condition expressions: a small arithmetic grammar over `x`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+')* atom ('^' factor)?
//! atom   := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func   := sin cos tan exp ln sqrt sinh cosh tanh sech abs
//! number := digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so
//! `-x^2 = -(x^2)`. Errors carry the 1-based column of the offending
//! token. Expressions are single-line.

use std::fmt;

/// Parse failure with a 1-based column position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.col, self.message)
    }
}

impl std::error::Error for ExprError {}

fn err(col: usize, message: impl Into<String>) -> ExprError {
    ExprError {
        col,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Sinh,
    Cosh,
    Tanh,
    Sech,
    Abs,
}

impl Func {
    fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "sech" => Func::Sech,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn eval(self, v: f64) -> f64 {
        match self {
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Tan => v.tan(),
            Func::Exp => v.exp(),
            Func::Ln => v.ln(),
            Func::Sqrt => v.sqrt(),
            Func::Sinh => v.sinh(),
            Func::Cosh => v.cosh(),
            Func::Tanh => v.tanh(),
            Func::Sech => 1.0 / v.cosh(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    X,
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, Box<Node>),
    Call(Func, Box<Node>),
}

impl Node {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Node::Num(v) => *v,
            Node::X => x,
            Node::Neg(a) => -a.eval(x),
            Node::Add(a, b) => a.eval(x) + b.eval(x),
            Node::Sub(a, b) => a.eval(x) - b.eval(x),
            Node::Mul(a, b) => a.eval(x) * b.eval(x),
            Node::Div(a, b) => a.eval(x) / b.eval(x),
            Node::Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Node::Call(f, a) => f.eval(a.eval(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Lexer, ExprError> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i < chars.len() && chars[i] == '.' {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
            }
            // Exponent suffix: only if 'e'/'E' is followed by a digit
            // (optionally signed); a bare trailing `e` is Euler's constant.
            if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                let mut j = i + 1;
                if j < chars.len() && matches!(chars[j], '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            let text: String = chars[start..i].iter().collect();
            let value: f64 = text
                .parse()
                .map_err(|_| err(start + 1, format!("bad number literal '{text}'")))?;
            toks.push((Tok::Num(value), start + 1));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            toks.push((Tok::Ident(name), start + 1));
            continue;
        }
        match c {
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                toks.push((Tok::Sym(c), col));
                i += 1;
            }
            other => return Err(err(col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(Lexer { toks })
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn end_col(&self) -> usize {
        self.toks.last().map(|(_, c)| c + 1).unwrap_or(1)
    }

    fn eat_sym(&mut self, s: char) -> bool {
        if matches!(self.peek(), Some((Tok::Sym(c), _)) if *c == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_sym('+') {
                acc = Node::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                acc = Node::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Node, ExprError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat_sym('*') {
                acc = Node::Mul(Box::new(acc), Box::new(self.factor()?));
            } else if self.eat_sym('/') {
                acc = Node::Div(Box::new(acc), Box::new(self.factor()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Node, ExprError> {
        if self.eat_sym('-') {
            return Ok(Node::Neg(Box::new(self.factor()?)));
        }
        if self.eat_sym('+') {
            return self.factor();
        }
        let base = self.atom()?;
        if self.eat_sym('^') {
            let exponent = self.factor()?;
            return Ok(Node::Pow(Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ExprError> {
        let Some((tok, col)) = self.peek().cloned() else {
            return Err(err(self.end_col(), "unexpected end of expression"));
        };
        match tok {
            Tok::Num(v) => {
                self.pos += 1;
                Ok(Node::Num(v))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match name.as_str() {
                    "x" => Ok(Node::X),
                    "pi" => Ok(Node::Num(std::f64::consts::PI)),
                    "e" => Ok(Node::Num(std::f64::consts::E)),
                    other => {
                        let Some(f) = Func::from_name(other) else {
                            return Err(err(col, format!("unknown name '{other}'")));
                        };
                        if !self.eat_sym('(') {
                            return Err(err(
                                self.peek().map(|(_, c)| *c).unwrap_or(self.end_col()),
                                format!("'{other}' needs a parenthesized argument"),
                            ));
                        }
                        let inner = self.expr()?;
                        if !self.eat_sym(')') {
                            return Err(err(
                                self.peek().map(|(_, c)| *c).unwrap_or(self.end_col()),
                                "expected ')'",
                            ));
                        }
                        Ok(Node::Call(f, Box::new(inner)))
                    }
                }
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_sym(')') {
                    return Err(err(
                        self.peek().map(|(_, c)| *c).unwrap_or(self.end_col()),
                        "expected ')'",
                    ));
                }
                Ok(inner)
            }
            Tok::Sym(s) => Err(err(col, format!("unexpected '{s}'"))),
        }
    }
}

/// A parsed initial-condition expression in the variable `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct IcExpr {
    ast: Node,
    source: String,
}

impl IcExpr {
    pub fn parse(src: &str) -> Result<Self, ExprError> {
        let lexer = lex(src)?;
        if lexer.toks.is_empty() {
            return Err(err(1, "empty expression"));
        }
        let mut parser = Parser {
            toks: lexer.toks,
            pos: 0,
        };
        let ast = parser.expr()?;
        if let Some((tok, col)) = parser.peek() {
            let what = match tok {
                Tok::Num(v) => format!("number {v}"),
                Tok::Ident(s) => format!("'{s}'"),
                Tok::Sym(c) => format!("'{c}'"),
            };
            return Err(err(*col, format!("unexpected trailing {what}")));
        }
        Ok(IcExpr {
            ast,
            source: src.to_string(),
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.ast.eval(x)
    }

    pub fn source(&self) -> &str {
        &self.source
    }
}
