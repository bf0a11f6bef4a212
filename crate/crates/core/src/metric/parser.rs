//! Recursive-descent parser for the metric DSL.
//!
//! ```text
//! expr  := "euclid"
//!        | "axis"  "(" int ")"
//!        | "bound" "(" expr ")"
//!        | "cap"   "(" expr "," real ")"
//!        | "scale" "(" expr "," real ")"
//!        | "max"   "(" expr "," expr { "," expr } ")"
//! real  := decimal [ "/" decimal ]
//! decimal := [ "+" | "-" ] digits [ "." digits ] | [ "+" | "-" ] "." digits
//! ```
//!
//! Whitespace is insignificant and keywords are case-insensitive.

use super::{Axis, PseudoMetricExpr};
use crate::error::{Error, Result};

/// Parses a metric expression.
pub fn parse_metric(text: &str) -> Result<PseudoMetricExpr> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{}'", byte as char)))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a combinator name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).to_ascii_lowercase())
    }

    fn expr(&mut self) -> Result<PseudoMetricExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        let name = self.ident()?;
        match name.as_str() {
            "euclid" => Ok(PseudoMetricExpr::Euclid),
            "axis" => {
                self.expect(b'(')?;
                self.skip_ws();
                let at = self.pos;
                let index = self.integer()?;
                self.expect(b')')?;
                Axis::from_index(index)
                    .map(PseudoMetricExpr::Axis)
                    .ok_or(Error::AxisIndex { index, offset: at })
            }
            "bound" => {
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b')')?;
                Ok(PseudoMetricExpr::bound(child))
            }
            "cap" | "scale" => {
                self.expect(b'(')?;
                let child = self.expr()?;
                self.expect(b',')?;
                let c = self.positive_real()?;
                self.expect(b')')?;
                Ok(if name == "cap" {
                    PseudoMetricExpr::Cap(Box::new(child), c)
                } else {
                    PseudoMetricExpr::Scale(Box::new(child), c)
                })
            }
            "max" => {
                self.expect(b'(')?;
                let mut children = vec![self.expr()?];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    children.push(self.expr()?);
                }
                if children.len() < 2 {
                    return Err(self.syntax("max needs at least two arguments"));
                }
                self.expect(b')')?;
                Ok(PseudoMetricExpr::Max(children))
            }
            _ => Err(Error::Syntax {
                offset: start,
                message: format!("unknown combinator '{name}'"),
            }),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if digits == self.pos {
            return Err(self.syntax("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Syntax {
                offset: start,
                message: "integer out of range".into(),
            })
    }

    fn decimal(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let mut digits = 0;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
            digits += 1;
        }
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
                digits += 1;
            }
        }
        if digits == 0 {
            self.pos = start;
            return Err(self.syntax("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>().map_err(|_| Error::Syntax {
            offset: start,
            message: format!("bad number '{text}'"),
        })
    }

    fn positive_real(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let mut value = self.decimal()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let denom = self.decimal()?;
            if denom == 0.0 {
                return Err(Error::Syntax {
                    offset: start,
                    message: "zero denominator".into(),
                });
            }
            value /= denom;
        }
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::NonPositiveConstant { offset: start });
        }
        Ok(value)
    }
}
