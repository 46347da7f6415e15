//! A small cursor over one line of model text: identifiers, literals,
//! scalars, vectors and matrices, with column positions for error messages.

use prehilb_core::scalar::{parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanError {
    pub col: usize,
    pub msg: String,
}

pub struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    pub fn new(src: &'a str) -> Self {
        Scanner { src, pos: 0 }
    }

    fn bytes(&self) -> &[u8] {
        self.src.as_bytes()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// 1-based column of the next significant character.
    pub fn col(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    fn error(&mut self, msg: impl Into<String>) -> ScanError {
        ScanError { col: self.col(), msg: msg.into() }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn expect_end(&mut self) -> Result<(), ScanError> {
        if self.at_end() {
            Ok(())
        } else {
            let rest = &self.src[self.pos..];
            Err(self.error(format!("unexpected trailing input `{}`", rest.trim())))
        }
    }

    /// Consumes the literal token if it is next.
    pub fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<(), ScanError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String, ScanError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        if self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphabetic() || bytes[self.pos] == b'_') {
            self.pos += 1;
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            Ok(self.src[start..self.pos].to_string())
        } else {
            Err(self.error("expected a name"))
        }
    }

    pub fn number(&mut self) -> Result<usize, ScanError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| ScanError { col: start + 1, msg: "number out of range".to_string() })
    }

    /// A scalar literal, delimited by `,`, `)`, `]` or end of line.
    pub fn scalar(&mut self) -> Result<Scalar, ScanError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && !matches!(bytes[self.pos], b',' | b')' | b']' | b'[' | b'(') {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        if text.trim().is_empty() {
            return Err(ScanError { col: start + 1, msg: "expected a scalar".to_string() });
        }
        parse_scalar(text).map_err(|e| ScanError { col: start + 1, msg: e.to_string() })
    }

    /// A parenthesized vector `(s, s, ...)`; `()` is the empty vector.
    pub fn vector(&mut self) -> Result<Vec<Scalar>, ScanError> {
        self.expect("(")?;
        let mut entries = Vec::new();
        if self.eat(")") {
            return Ok(entries);
        }
        loop {
            entries.push(self.scalar()?);
            if self.eat(")") {
                return Ok(entries);
            }
            self.expect(",")?;
        }
    }

    /// A bracketed matrix `[[s, ...], ...]`; `[]` has no rows.
    pub fn matrix_rows(&mut self) -> Result<Vec<Vec<Scalar>>, ScanError> {
        self.expect("[")?;
        let mut rows = Vec::new();
        if self.eat("]") {
            return Ok(rows);
        }
        loop {
            rows.push(self.row()?);
            if self.eat("]") {
                return Ok(rows);
            }
            self.expect(",")?;
        }
    }

    fn row(&mut self) -> Result<Vec<Scalar>, ScanError> {
        self.expect("[")?;
        let mut entries = Vec::new();
        if self.eat("]") {
            return Ok(entries);
        }
        loop {
            entries.push(self.scalar()?);
            if self.eat("]") {
                return Ok(entries);
            }
            self.expect(",")?;
        }
    }
}
