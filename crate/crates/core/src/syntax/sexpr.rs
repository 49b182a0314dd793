//! S-expressions with `;` line comments and source positions.

use std::fmt;

use super::{ErrorKind, SyntaxError};

/// Line and column, both starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub enum SExpr {
    Symbol(String, Pos),
    List(Vec<SExpr>, Pos),
}

/// Structural equality; positions are ignored.
impl PartialEq for SExpr {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (SExpr::Symbol(a, _), SExpr::Symbol(b, _)) => a == b,
            (SExpr::List(a, _), SExpr::List(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Eq for SExpr {}

impl SExpr {
    pub fn sym(s: impl Into<String>) -> Self {
        SExpr::Symbol(s.into(), Pos::default())
    }

    pub fn list(items: Vec<SExpr>) -> Self {
        SExpr::List(items, Pos::default())
    }

    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Symbol(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn as_symbol(&self) -> Option<&str> {
        match self {
            SExpr::Symbol(s, _) => Some(s),
            SExpr::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(v, _) => Some(v),
            SExpr::Symbol(..) => None,
        }
    }

    /// The head symbol of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_symbol()
    }

    pub fn expect_symbol(&self, what: &str) -> Result<&str, SyntaxError> {
        self.as_symbol().ok_or_else(|| SyntaxError::new(ErrorKind::Parse, self.pos(), format!("expected {what}, found a list")))
    }

    pub fn expect_list(&self, what: &str) -> Result<&[SExpr], SyntaxError> {
        self.as_list()
            .ok_or_else(|| SyntaxError::new(ErrorKind::Parse, self.pos(), format!("expected {what}, found `{self}`")))
    }

    pub fn expect_usize(&self, what: &str) -> Result<usize, SyntaxError> {
        let s = self.expect_symbol(what)?;
        s.parse().map_err(|_| SyntaxError::new(ErrorKind::Parse, self.pos(), format!("expected {what}, found `{s}`")))
    }

    /// Renders with line breaks so that no line exceeds `width` where possible.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0, width);
        out
    }

    fn pretty_into(&self, out: &mut String, indent: usize, width: usize) {
        let flat = self.to_string();
        match self {
            SExpr::List(items, _) if indent + flat.chars().count() > width && items.len() > 1 => {
                out.push('(');
                out.push_str(&items[0].to_string());
                let mut i = 1;
                // Keyword arguments stay on the line of their keyword.
                while i < items.len() {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    if items[i].as_symbol().is_some_and(|s| s.starts_with(':')) && i + 1 < items.len() {
                        let key = items[i].to_string();
                        out.push_str(&key);
                        out.push(' ');
                        items[i + 1].pretty_into(out, indent + 3 + key.len(), width);
                        i += 2;
                    } else {
                        items[i].pretty_into(out, indent + 2, width);
                        i += 1;
                    }
                }
                out.push(')');
            }
            _ => out.push_str(&flat),
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Symbol(s, _) => write!(f, "{s}"),
            SExpr::List(v, _) => {
                write!(f, "(")?;
                for (i, e) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || c == '(' || c == ')' || c == ';'
}

/// Reads every top-level expression of `src`.
pub fn parse(src: &str) -> Result<Vec<SExpr>, SyntaxError> {
    let mut stack: Vec<(Vec<SExpr>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let here = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let Some((items, start)) = stack.pop() else {
                    return Err(SyntaxError::new(ErrorKind::Parse, here, "unbalanced `)`"));
                };
                let e = SExpr::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if is_delimiter(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                let e = SExpr::Symbol(s, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(e),
                    None => top.push(e),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return Err(SyntaxError::new(ErrorKind::Parse, *start, "unclosed `(`"));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_positions() {
        let v = parse("; header\n(a (b c)) ; tail\n  d").unwrap();
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].to_string(), "(a (b c))");
        assert_eq!(v[0].pos(), Pos { line: 2, col: 1 });
        assert_eq!(v[1].pos(), Pos { line: 3, col: 3 });
    }

    #[test]
    fn unbalanced_input_is_located() {
        let e = parse("(a\n (b)").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 1));
        let e = parse("a)").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 2));
    }

    #[test]
    fn pretty_output_reads_back() {
        let v = parse("(proof p :rule neg-r :root (sequent (gamma (atom P c)) (delta)) :premises ((proof :rule atom)))").unwrap();
        let text = v[0].pretty(30);
        assert!(text.lines().count() > 1);
        assert_eq!(parse(&text).unwrap(), v);
    }
}
