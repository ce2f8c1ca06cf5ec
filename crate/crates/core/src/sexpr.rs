//! Tokenizer for the s-expression domain and problem files.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Open,
    Close,
    LBracket,
    RBracket,
    Comma,
    Atom(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Splits `text` into tokens. `;` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, cl) = (line, col);
        let single = match c {
            '(' => Some(Tok::Open),
            ')' => Some(Tok::Close),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Token {
                tok,
                line: l,
                col: cl,
            });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if c == ';' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
            continue;
        }
        let mut atom = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ',' | ';') {
                break;
            }
            atom.push(c);
            chars.next();
            col += 1;
        }
        out.push(Token {
            tok: Tok::Atom(atom),
            line: l,
            col: cl,
        });
    }
    out
}

/// Cursor over a token stream with positional error reporting.
pub struct Cursor {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Cursor {
    pub fn new(text: &str) -> Self {
        let toks = tokenize(text);
        let end = text
            .lines()
            .enumerate()
            .last()
            .map(|(i, l)| (i + 1, l.chars().count() + 1))
            .unwrap_or((1, 1));
        Self { toks, pos: 0, end }
    }

    pub fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    pub fn peek_at(&self, off: usize) -> Option<&Token> {
        self.toks.get(self.pos + off)
    }

    pub fn bump(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// Position of the next token, or end of input.
    pub fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().map(|t| &t.tok) == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn eat_commas(&mut self) {
        while self.eat(&Tok::Comma) {}
    }

    pub fn is_atom(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Atom(a), .. }) if a.eq_ignore_ascii_case(s))
    }

    /// Skips a balanced parenthesized group starting at the current `(`.
    pub fn skip_group(&mut self) -> bool {
        if !self.eat(&Tok::Open) {
            return false;
        }
        let mut depth = 1;
        while let Some(t) = self.bump() {
            match t.tok {
                Tok::Open => depth += 1,
                Tok::Close => {
                    depth -= 1;
                    if depth == 0 {
                        return true;
                    }
                }
                _ => {}
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_brackets_and_tracks_positions() {
        let t = tokenize("(pick[obj]\n  ?p, ?g) ; trailing");
        let kinds: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Open,
                Tok::Atom("pick".into()),
                Tok::LBracket,
                Tok::Atom("obj".into()),
                Tok::RBracket,
                Tok::Atom("?p".into()),
                Tok::Comma,
                Tok::Atom("?g".into()),
                Tok::Close
            ]
        );
        assert_eq!((t[5].line, t[5].col), (2, 3));
    }
}
