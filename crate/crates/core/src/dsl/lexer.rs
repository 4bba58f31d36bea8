use super::ast::SourceSpan;
use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokenKind {
    /// Identifier or keyword; keywords are contextual. Also carries the
    /// hyphenated status word `not-applicable`.
    Word(String),
    Str(String),
    Int(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Arrow,
    Eof,
}

impl TokenKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            Self::Word(w) => format!("`{w}`"),
            Self::Str(_) => "string".to_string(),
            Self::Int(i) => format!("integer {i}"),
            Self::LBrace => "'{'".to_string(),
            Self::RBrace => "'}'".to_string(),
            Self::LBracket => "'['".to_string(),
            Self::RBracket => "']'".to_string(),
            Self::Comma => "','".to_string(),
            Self::Dot => "'.'".to_string(),
            Self::Arrow => "'->'".to_string(),
            Self::Eof => "end of file".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Pos {
    pub offset: usize,
    pub line: u32,
    pub column: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub start: Pos,
    pub end: usize,
}

pub(crate) fn span_between(file: &str, start: Pos, end: usize) -> SourceSpan {
    SourceSpan::new(file, start.line, start.column, (end - start.offset) as u32)
}

struct Lexer<'a> {
    file: &'a str,
    src: &'a str,
    offset: usize,
    line: u32,
    column: u32,
    tokens: Vec<Token>,
    errors: Vec<ParseError>,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Lexer<'a> {
    fn pos(&self) -> Pos {
        Pos {
            offset: self.offset,
            line: self.line,
            column: self.column,
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn push(&mut self, kind: TokenKind, start: Pos) {
        self.tokens.push(Token {
            kind,
            start,
            end: self.offset,
        });
    }

    fn error_at(&mut self, start: Pos, message: impl Into<String>) {
        self.errors
            .push(ParseError::new(span_between(self.file, start, self.offset), message));
    }

    /// Returns false when lexing cannot continue.
    fn next_token(&mut self) -> bool {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
        let start = self.pos();
        let Some(c) = self.bump() else {
            self.push(TokenKind::Eof, start);
            return false;
        };
        match c {
            '{' => self.push(TokenKind::LBrace, start),
            '}' => self.push(TokenKind::RBrace, start),
            '[' => self.push(TokenKind::LBracket, start),
            ']' => self.push(TokenKind::RBracket, start),
            ',' => self.push(TokenKind::Comma, start),
            '.' => self.push(TokenKind::Dot, start),
            '-' if self.peek() == Some('>') => {
                self.bump();
                self.push(TokenKind::Arrow, start);
            }
            '"' => return self.string(start),
            c if c.is_ascii_digit() => {
                let mut digits = String::from(c);
                while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                    digits.push(d);
                    self.bump();
                }
                self.push(TokenKind::Int(digits), start);
            }
            c if is_ident_start(c) => {
                let mut word = String::from(c);
                while let Some(d) = self.peek().filter(|d| is_ident_continue(*d)) {
                    word.push(d);
                    self.bump();
                }
                if word == "not" && self.src[self.offset..].starts_with("-applicable") {
                    let after = self.src[self.offset + "-applicable".len()..].chars().next();
                    if !after.is_some_and(is_ident_continue) {
                        for _ in 0.."-applicable".len() {
                            self.bump();
                        }
                        word.push_str("-applicable");
                    }
                }
                self.push(TokenKind::Word(word), start);
            }
            other => self.error_at(start, format!("unexpected character {other:?}")),
        }
        true
    }

    fn string(&mut self, start: Pos) -> bool {
        let mut value = String::new();
        loop {
            let esc_start = self.pos();
            match self.bump() {
                None => {
                    self.error_at(start, "unterminated string literal");
                    self.push(TokenKind::Eof, self.pos());
                    return false;
                }
                Some('"') => break,
                Some('\\') => match self.bump() {
                    Some('"') => value.push('"'),
                    Some('\\') => value.push('\\'),
                    Some(other) => {
                        self.error_at(esc_start, format!("invalid escape sequence `\\{other}`"));
                    }
                    None => {
                        self.error_at(start, "unterminated string literal");
                        self.push(TokenKind::Eof, self.pos());
                        return false;
                    }
                },
                Some(c) => value.push(c),
            }
        }
        self.push(TokenKind::Str(value), start);
        true
    }
}

/// Tokenizes `src`. The token list always ends with `Eof`.
pub(crate) fn tokenize(src: &str, file: &str) -> (Vec<Token>, Vec<ParseError>) {
    let mut lexer = Lexer {
        file,
        src,
        offset: 0,
        line: 1,
        column: 1,
        tokens: Vec::new(),
        errors: Vec::new(),
    };
    while lexer.next_token() {}
    (lexer.tokens, lexer.errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        let (tokens, errors) = tokenize(src, "t.csl");
        assert!(errors.is_empty(), "{errors:?}");
        tokens.into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn punctuation_words_and_comments() {
        use TokenKind::*;
        assert_eq!(
            kinds("a -> b # comment\n[X.Y, 12]{}"),
            vec![
                Word("a".into()),
                Arrow,
                Word("b".into()),
                LBracket,
                Word("X".into()),
                Dot,
                Word("Y".into()),
                Comma,
                Int("12".into()),
                RBracket,
                LBrace,
                RBrace,
                Eof
            ]
        );
    }

    #[test]
    fn not_applicable_is_one_word() {
        assert_eq!(
            kinds("not-applicable open"),
            vec![
                TokenKind::Word("not-applicable".into()),
                TokenKind::Word("open".into()),
                TokenKind::Eof,
            ]
        );
        // a longer word is not the status keyword
        let (tokens, errors) = tokenize("not-applicablex", "t.csl");
        assert_eq!(tokens[0].kind, TokenKind::Word("not".into()));
        assert_eq!(errors.len(), 1);
    }

    #[test]
    fn string_escapes_and_errors() {
        assert_eq!(
            kinds(r#""a \"b\" \\ c""#),
            vec![TokenKind::Str(r#"a "b" \ c"#.into()), TokenKind::Eof]
        );
        let (_, errors) = tokenize(r#""bad \n""#, "t.csl");
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("invalid escape"));
        let (tokens, errors) = tokenize("spec \"open", "t.csl");
        assert_eq!(errors.len(), 1);
        assert!(errors[0].message.contains("unterminated"));
        assert_eq!(tokens.last().unwrap().kind, TokenKind::Eof);
    }

    #[test]
    fn positions_count_characters() {
        let (tokens, _) = tokenize("\"\u{e9}\" x\n  y", "t.csl");
        assert_eq!((tokens[1].start.line, tokens[1].start.column), (1, 5));
        assert_eq!((tokens[2].start.line, tokens[2].start.column), (2, 3));
    }
}
