use std::fmt;

/// Byte range `[start, end)` into the parsed text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    /// Line and column (both 1-based) of `start` within `text`.
    pub fn line_col(&self, text: &str) -> (usize, usize) {
        let upto = &text[..self.start.min(text.len())];
        let line = upto.matches('\n').count() + 1;
        let col = upto.rfind('\n').map_or(upto.len(), |i| upto.len() - i - 1) + 1;
        (line, col)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, SourceSpan),
    List(Vec<Sexp>, SourceSpan),
}

impl Sexp {
    pub fn span(&self) -> SourceSpan {
        match self {
            Sexp::Atom(_, s) | Sexp::List(_, s) => *s,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }

    /// The head symbol of a non-empty list whose first item is an atom.
    pub fn head(&self) -> Option<&str> {
        self.as_list()?.first()?.as_atom()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub message: String,
    pub span: SourceSpan,
}

/// Parse every top-level S-expression in `text`. `;` starts a line comment.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, LexError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b';' => {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            }
            b'(' => {
                stack.push((pos, Vec::new()));
                pos += 1;
            }
            b')' => {
                let (start, items) = stack.pop().ok_or_else(|| LexError {
                    message: "unbalanced ')'".into(),
                    span: SourceSpan::new(pos, pos + 1),
                })?;
                pos += 1;
                let node = Sexp::List(items, SourceSpan::new(start, pos));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
            c if c.is_ascii_whitespace() => pos += 1,
            b'|' => {
                let start = pos;
                pos += 1;
                while pos < bytes.len() && bytes[pos] != b'|' {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(LexError {
                        message: "unterminated quoted symbol".into(),
                        span: SourceSpan::new(start, pos),
                    });
                }
                pos += 1;
                let node = Sexp::Atom(text[start + 1..pos - 1].to_string(), SourceSpan::new(start, pos));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let start = pos;
                while pos < bytes.len() {
                    let b = bytes[pos];
                    if b.is_ascii_whitespace() || b == b'(' || b == b')' || b == b';' || b == b'|' {
                        break;
                    }
                    pos += 1;
                }
                let word = &text[start..pos];
                if let Some(bad) = word.chars().find(|ch| ch.is_control() || *ch == '"') {
                    return Err(LexError {
                        message: format!("unexpected character {bad:?}"),
                        span: SourceSpan::new(start, pos),
                    });
                }
                let node = Sexp::Atom(word.to_string(), SourceSpan::new(start, pos));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
        }
    }
    if let Some((start, _)) = stack.pop() {
        return Err(LexError { message: "unbalanced '('".into(), span: SourceSpan::new(start, text.len()) });
    }
    Ok(top)
}

/// Parse exactly one S-expression.
pub fn parse_one(text: &str) -> Result<Sexp, LexError> {
    let mut all = parse_all(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(LexError { message: "empty input".into(), span: SourceSpan::new(0, text.len()) }),
        _ => Err(LexError {
            message: "trailing input after expression".into(),
            span: all[1].span(),
        }),
    }
}
