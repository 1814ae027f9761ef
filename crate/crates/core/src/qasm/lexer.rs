use super::QasmError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Int(String),
    Real(String),
    Str(String),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

const SYMBOLS: [&str; 15] = ["->", "==", ";", ",", "(", ")", "[", "]", "{", "}", "+", "-", "*", "/", "^"];

struct Cursor {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Cursor {
    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn bump_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(|&c| f(c)) {
            s.push(c);
            self.bump();
        }
        s
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, QasmError> {
    let mut cur = Cursor { chars: src.chars().collect(), i: 0, line: 1, col: 1 };
    let mut out = Vec::new();
    while let Some(c) = cur.peek(0) {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '/' && cur.peek(1) == Some('/') {
            cur.bump_while(|c| c != '\n');
            continue;
        }
        let (line, col) = (cur.line, cur.col);
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            Tok::Ident(cur.bump_while(|c| c.is_ascii_alphanumeric() || c == '_'))
        } else if c.is_ascii_digit() || (c == '.' && cur.peek(1).is_some_and(|d| d.is_ascii_digit())) {
            let mut s = cur.bump_while(|c| c.is_ascii_digit() || c == '.');
            let mut real = s.contains('.');
            if let Some(e @ ('e' | 'E')) = cur.peek(0) {
                real = true;
                cur.bump();
                s.push(e);
                if let Some(sign @ ('+' | '-')) = cur.peek(0) {
                    cur.bump();
                    s.push(sign);
                }
                s.push_str(&cur.bump_while(|c| c.is_ascii_digit()));
            }
            if real {
                Tok::Real(s)
            } else {
                Tok::Int(s)
            }
        } else if c == '"' {
            cur.bump();
            let s = cur.bump_while(|c| c != '"');
            if cur.bump().is_none() {
                return Err(QasmError::Syntax { line, col, msg: "unterminated string".into() });
            }
            Tok::Str(s)
        } else {
            let two: String = [Some(c), cur.peek(1)].into_iter().flatten().collect();
            let sym = SYMBOLS.iter().find(|s| two.starts_with(**s)).ok_or_else(|| QasmError::Syntax {
                line,
                col,
                msg: format!("unexpected character `{c}`"),
            })?;
            for _ in 0..sym.len() {
                cur.bump();
            }
            Tok::Sym(sym)
        };
        out.push(Token { tok, line, col });
    }
    out.push(Token { tok: Tok::Eof, line: cur.line, col: cur.col });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let toks = tokenize("h q[0]; // comment\n  rz(0.5*pi) q[1];").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("h".into()));
        assert_eq!((toks[0].line, toks[0].col), (1, 1));
        let rz = toks.iter().find(|t| t.tok == Tok::Ident("rz".into())).unwrap();
        assert_eq!((rz.line, rz.col), (2, 3));
        assert!(toks.iter().any(|t| t.tok == Tok::Real("0.5".into())));
        assert_eq!(toks.last().unwrap().tok, Tok::Eof);
    }

    #[test]
    fn bad_character() {
        let err = tokenize("h q[0];\n  @").unwrap_err();
        assert!(matches!(err, QasmError::Syntax { line: 2, col: 3, .. }));
    }
}
