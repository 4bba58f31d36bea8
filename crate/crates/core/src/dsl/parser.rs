use std::collections::HashMap;

use super::ast::*;
use super::lexer::{span_between, tokenize, Pos, Token, TokenKind};
use super::ParseError;

pub(crate) type PResult<T> = Result<T, ParseError>;

pub(crate) const ITEM_KEYWORDS: &[&str] = &["stakeholder", "requirement", "contract", "flow"];

/// Token cursor with the error helpers shared by every CSL-family grammar.
pub(crate) struct Cursor<'a> {
    tokens: Vec<Token>,
    pos: usize,
    file: &'a str,
    pub errors: Vec<ParseError>,
}

impl<'a> Cursor<'a> {
    pub fn new(source: &str, file: &'a str) -> Self {
        let (tokens, errors) = tokenize(source, file);
        Self {
            tokens,
            pos: 0,
            file,
            errors,
        }
    }

    pub fn peek(&self) -> &TokenKind {
        &self.tokens[self.pos].kind
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn start(&self) -> Pos {
        self.tokens[self.pos].start
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), TokenKind::Eof)
    }

    pub fn is_word(&self, keyword: &str) -> bool {
        matches!(self.peek(), TokenKind::Word(w) if w == keyword)
    }

    pub fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        token
    }

    /// Span from `start` through the end of the last consumed token.
    pub fn span_from(&self, start: Pos) -> SourceSpan {
        let end = if self.pos == 0 {
            start.offset
        } else {
            self.tokens[self.pos - 1].end.max(start.offset)
        };
        span_between(self.file, start, end)
    }

    pub fn current_span(&self) -> SourceSpan {
        let token = &self.tokens[self.pos];
        span_between(self.file, token.start, token.end)
    }

    pub fn error_here(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let mut error = ParseError::new(self.current_span(), message);
        error.expected = expected.iter().map(|e| e.to_string()).collect();
        error
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        self.error_here(
            format!("expected {expected}, found {}", self.peek().describe()),
            &[expected],
        )
    }

    pub fn expect_keyword(&mut self, keyword: &str) -> PResult<()> {
        if self.is_word(keyword) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{keyword}'")))
        }
    }

    pub fn expect_ident(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            TokenKind::Word(w) if !w.contains('-') => {
                let w = w.clone();
                self.advance();
                Ok(w)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn expect_string(&mut self, what: &str) -> PResult<String> {
        match self.peek() {
            TokenKind::Str(s) => {
                let s = s.clone();
                self.advance();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn expect_int(&mut self, what: &str) -> PResult<u64> {
        match self.peek() {
            TokenKind::Int(digits) => {
                let parsed = digits.parse::<u64>();
                match parsed {
                    Ok(v) => {
                        self.advance();
                        Ok(v)
                    }
                    Err(_) => Err(self.error_here(format!("integer {digits} is out of range"), &[what])),
                }
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub fn expect_token(&mut self, kind: TokenKind) -> PResult<()> {
        if *self.peek() == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&kind.describe()))
        }
    }

    /// `"[" ident {"," ident} "]"`, where each ident is parsed by `item`.
    pub fn bracket_list<T>(&mut self, mut item: impl FnMut(&mut Self) -> PResult<T>) -> PResult<Vec<T>> {
        self.expect_token(TokenKind::LBracket)?;
        let mut out = vec![item(self)?];
        while *self.peek() == TokenKind::Comma {
            self.advance();
            out.push(item(self)?);
        }
        self.expect_token(TokenKind::RBracket)?;
        Ok(out)
    }

    /// Skips to the next top-level word in `keywords`, always making progress
    /// past `from`.
    pub fn sync_to(&mut self, keywords: &[&str], from: usize) {
        if self.pos == from && !self.at_eof() {
            self.advance();
        }
        let mut depth = 0usize;
        loop {
            match self.peek() {
                TokenKind::Eof => return,
                TokenKind::Word(w) if depth == 0 && keywords.contains(&w.as_str()) => return,
                TokenKind::LBrace => depth += 1,
                TokenKind::RBrace => depth = depth.saturating_sub(1),
                _ => {}
            }
            self.advance();
        }
    }

    pub fn finish(mut self) -> Vec<ParseError> {
        self.errors.sort_by_key(|e| (e.span.line, e.span.column));
        self.errors
    }
}

/// Parses one CSL document.
pub fn parse(source: &str, file: &str) -> Result<SpecDocument, Vec<ParseError>> {
    let mut cur = Cursor::new(source, file);
    let doc_start = cur.start();
    let mut doc = SpecDocument::default();

    if cur.is_word("spec") {
        let from = cur.position();
        let header = (|| {
            cur.expect_keyword("spec")?;
            let name = cur.expect_string("spec name string")?;
            cur.expect_keyword("version")?;
            let version = cur.expect_int("version number")?;
            Ok::<_, ParseError>((name, version))
        })();
        match header {
            Ok((name, version)) => {
                doc.name = name;
                doc.version = version;
            }
            Err(e) => {
                cur.errors.push(e);
                cur.sync_to(ITEM_KEYWORDS, from);
            }
        }
    } else {
        let error = cur.error_here("expected 'spec' header", &["'spec'"]);
        cur.errors.push(error);
        cur.sync_to(ITEM_KEYWORDS, usize::MAX);
    }

    while !cur.at_eof() {
        let from = cur.position();
        if let Err(e) = item(&mut cur, &mut doc) {
            cur.errors.push(e);
            cur.sync_to(ITEM_KEYWORDS, from);
        }
    }
    doc.span = cur.span_from(doc_start);

    check_duplicates(&doc, &mut cur.errors);
    let errors = cur.finish();
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(errors)
    }
}

fn item(cur: &mut Cursor<'_>, doc: &mut SpecDocument) -> PResult<()> {
    let start = cur.start();
    match cur.peek() {
        TokenKind::Word(w) if w == "stakeholder" => {
            cur.advance();
            let id = cur.expect_ident("stakeholder id")?;
            cur.expect_keyword("role")?;
            let role = cur.expect_string("role string")?;
            doc.stakeholders.push(StakeholderDecl {
                id,
                role,
                span: cur.span_from(start),
            });
        }
        TokenKind::Word(w) if w == "requirement" => {
            cur.advance();
            let id = cur.expect_ident("requirement id")?;
            cur.expect_keyword("owner")?;
            let owner = cur.expect_ident("owner stakeholder id")?;
            cur.expect_keyword("status")?;
            let status = status(cur)?;
            let text = if cur.is_word("text") {
                cur.advance();
                Some(cur.expect_string("requirement text string")?)
            } else {
                None
            };
            doc.requirements.push(RequirementDecl {
                id,
                owner,
                status,
                text,
                span: cur.span_from(start),
            });
        }
        TokenKind::Word(w) if w == "contract" => {
            cur.advance();
            let contract = contract(cur, start)?;
            doc.contracts.push(contract);
        }
        TokenKind::Word(w) if w == "flow" => {
            cur.advance();
            let from = cur.expect_ident("source stakeholder id")?;
            cur.expect_token(TokenKind::Arrow)?;
            let to = cur.expect_ident("target stakeholder id")?;
            cur.expect_keyword("carries")?;
            let carries = cur.bracket_list(|c| c.expect_ident("requirement id"))?;
            doc.flows.push(FlowDecl {
                from,
                to,
                carries,
                span: cur.span_from(start),
            });
        }
        other => {
            let message = format!("expected a declaration, found {}", other.describe());
            return Err(cur.error_here(message, &["'stakeholder'", "'requirement'", "'contract'", "'flow'"]));
        }
    }
    Ok(())
}

fn status(cur: &mut Cursor<'_>) -> PResult<RequirementStatus> {
    if let TokenKind::Word(w) = cur.peek() {
        if let Some(status) = RequirementStatus::parse(w) {
            cur.advance();
            return Ok(status);
        }
    }
    Err(cur.error_here(
        format!("expected requirement status, found {}", cur.peek().describe()),
        &["'attested'", "'open'", "'not-applicable'"],
    ))
}

const CLAUSE_SYNC: &[&str] = &["assume", "guarantee"];

fn contract(cur: &mut Cursor<'_>, start: Pos) -> PResult<ContractDecl> {
    let id = cur.expect_ident("contract id")?;
    cur.expect_keyword("owner")?;
    let owner = cur.expect_ident("owner stakeholder id")?;
    cur.expect_keyword("attribute")?;
    let attribute = cur.expect_ident("quality attribute name")?;
    cur.expect_token(TokenKind::LBrace)?;

    let mut decl = ContractDecl {
        id,
        owner,
        attribute,
        assumptions: Vec::new(),
        guarantees: Vec::new(),
        span: SourceSpan::default(),
    };
    loop {
        let from = cur.position();
        let clause_start = cur.start();
        let result = match cur.peek() {
            TokenKind::RBrace => {
                cur.advance();
                break;
            }
            TokenKind::Eof => {
                return Err(cur.error_here(format!("expected '}}' to close contract `{}`", decl.id), &["'}'"]))
            }
            TokenKind::Word(w) if w == "assume" => {
                cur.advance();
                assume(cur, clause_start).map(|a| decl.assumptions.push(a))
            }
            TokenKind::Word(w) if w == "guarantee" => {
                cur.advance();
                (|| {
                    let id = cur.expect_ident("guarantee id")?;
                    let text = cur.expect_string("guarantee text string")?;
                    Ok(GuaranteeDecl {
                        id,
                        text,
                        span: cur.span_from(clause_start),
                    })
                })()
                .map(|g| decl.guarantees.push(g))
            }
            other => Err(cur.error_here(
                format!("expected 'assume', 'guarantee' or '}}', found {}", other.describe()),
                &["'assume'", "'guarantee'", "'}'"],
            )),
        };
        if let Err(e) = result {
            cur.errors.push(e);
            sync_clause(cur, from);
        }
    }
    decl.span = cur.span_from(start);
    Ok(decl)
}

fn sync_clause(cur: &mut Cursor<'_>, from: usize) {
    if cur.position() == from && !cur.at_eof() {
        cur.advance();
    }
    loop {
        match cur.peek() {
            TokenKind::Eof | TokenKind::RBrace => return,
            TokenKind::Word(w) if CLAUSE_SYNC.contains(&w.as_str()) => return,
            _ => {
                cur.advance();
            }
        }
    }
}

fn assume(cur: &mut Cursor<'_>, start: Pos) -> PResult<AssumeDecl> {
    let id = cur.expect_ident("assumption id")?;
    let text = cur.expect_string("assumption text string")?;
    let discharge = if cur.is_word("discharged_by") {
        cur.advance();
        DischargeDecl::By(cur.bracket_list(discharge_ref)?)
    } else if cur.is_word("accepted") {
        cur.advance();
        DischargeDecl::Accepted
    } else {
        DischargeDecl::Pending
    };
    Ok(AssumeDecl {
        id,
        text,
        discharge,
        span: cur.span_from(start),
    })
}

fn discharge_ref(cur: &mut Cursor<'_>) -> PResult<RefDecl> {
    let start = cur.start();
    let first = cur.expect_ident("requirement id or Contract.Guarantee")?;
    let target = if *cur.peek() == TokenKind::Dot {
        cur.advance();
        let guarantee = cur.expect_ident("guarantee id")?;
        RefTarget::Guarantee {
            contract: first,
            guarantee,
        }
    } else {
        RefTarget::Requirement(first)
    };
    Ok(RefDecl {
        target,
        span: cur.span_from(start),
    })
}

fn duplicate(kind: &str, id: &str, first: &SourceSpan, second: &SourceSpan) -> ParseError {
    let mut error = ParseError::new(
        second.clone(),
        format!("duplicate {kind} `{id}` (first declared at {first})"),
    );
    error.related.push(first.clone());
    error
}

fn check_unique<'d>(
    kind: &str,
    items: impl IntoIterator<Item = (&'d str, &'d SourceSpan)>,
    errors: &mut Vec<ParseError>,
) {
    let mut seen: HashMap<&str, &SourceSpan> = HashMap::new();
    for (id, span) in items {
        if let Some(first) = seen.get(id) {
            errors.push(duplicate(kind, id, first, span));
        } else {
            seen.insert(id, span);
        }
    }
}

fn check_duplicates(doc: &SpecDocument, errors: &mut Vec<ParseError>) {
    check_unique(
        "stakeholder",
        doc.stakeholders.iter().map(|s| (s.id.as_str(), &s.span)),
        errors,
    );
    check_unique(
        "requirement",
        doc.requirements.iter().map(|r| (r.id.as_str(), &r.span)),
        errors,
    );
    check_unique(
        "contract",
        doc.contracts.iter().map(|c| (c.id.as_str(), &c.span)),
        errors,
    );
    for c in &doc.contracts {
        let clauses = c
            .assumptions
            .iter()
            .map(|a| (a.id.as_str(), &a.span))
            .chain(c.guarantees.iter().map(|g| (g.id.as_str(), &g.span)));
        check_unique(&format!("clause in contract `{}`", c.id), clauses, errors);
    }
}
