//! Text and JSON forms of classes.
//!
//! Grammar (ASCII, whitespace between tokens ignored):
//!
//! ```text
//! class   := ["+"|"-"] term (("+"|"-") term)*
//! term    := INT | [INT ["*"]] factor ("*" factor)*
//! factor  := "t" INDEX ["^" POSINT] | "dt" INDEX
//! ```
//!
//! `INT` may carry its own sign and is reduced mod p. Exterior factors may
//! be written in any order; the sign of the reordering is applied.

use serde::{Deserialize, Serialize};

use super::{Config, ExtClass, Monomial, Subset, MAX_RANK};
use crate::error::{Error, Result};

pub fn parse_class(text: &str, cfg: Config) -> Result<ExtClass> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        cfg,
    }
    .class()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    cfg: Config,
}

#[derive(Default)]
struct TermAcc {
    exps: [u32; MAX_RANK],
    dts: Subset,
    negative: bool,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u128 = 0;
        while let Some(d) = self.src.get(self.pos).copied().filter(u8::is_ascii_digit) {
            value = match value
                .checked_mul(10)
                .and_then(|v| v.checked_add((d - b'0') as u128))
            {
                Some(v) => v,
                None => {
                    self.pos = start;
                    return self.error("integer too large");
                }
            };
            self.pos += 1;
        }
        if self.pos == start {
            return self.error("expected integer");
        }
        Ok(value)
    }

    fn class(mut self) -> Result<ExtClass> {
        let mut out = ExtClass::zero(self.cfg);
        let mut negative = false;
        match self.peek() {
            Some(b'-') => {
                negative = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            None => return self.error("empty expression"),
            _ => {}
        }
        loop {
            let (s, m, c) = self.term()?;
            out.add_term(s, m, if negative { self.cfg.neg(c) } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.error("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Subset, Monomial, u32)> {
        let cfg = self.cfg;
        let mut acc = TermAcc::default();
        let mut coeff = 1u32;
        let mut need_factor = true;
        match self.peek() {
            Some(c @ (b'-' | b'+' | b'0'..=b'9')) => {
                if c == b'-' || c == b'+' {
                    acc.negative = c == b'-';
                    self.pos += 1;
                }
                coeff = (self.number()? % cfg.p() as u128) as u32;
                match self.peek() {
                    Some(b'*') => self.pos += 1,
                    Some(b't' | b'd') => {}
                    _ => need_factor = false,
                }
            }
            Some(b't' | b'd') => {}
            Some(_) => return self.error("expected a term"),
            None => return self.error("unexpected end of input"),
        }
        if need_factor {
            self.factor(&mut acc)?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                self.factor(&mut acc)?;
            }
        }
        if acc.negative {
            coeff = cfg.neg(coeff);
        }
        Ok((acc.dts, Monomial::new(&acc.exps[..cfg.n()]), coeff))
    }

    fn index(&mut self) -> Result<usize> {
        let start = self.pos;
        let k = self.number()?;
        let n = self.cfg.n();
        if k == 0 || k > n as u128 {
            return Err(Error::IndexOutOfRange {
                index: k.min(usize::MAX as u128) as usize,
                n,
                pos: start,
            });
        }
        Ok(k as usize - 1)
    }

    fn factor(&mut self, acc: &mut TermAcc) -> Result<()> {
        let start = self.pos;
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                let k = self.index()?;
                let mut e = 1u128;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.number()?;
                    if e == 0 {
                        return self.error("exponent must be positive");
                    }
                }
                let total = acc.exps[k] as u128 + e;
                if total > u32::MAX as u128 {
                    return self.error("exponent too large");
                }
                acc.exps[k] = total as u32;
            }
            Some(b'd') => {
                self.pos += 1;
                if self.src.get(self.pos) != Some(&b't') {
                    return self.error("expected 'dt'");
                }
                self.pos += 1;
                let k = self.index()?;
                if self.peek() == Some(b'^') {
                    return Err(Error::ExteriorSquare {
                        index: k + 1,
                        pos: start,
                    });
                }
                match acc.dts.merge(Subset::from_indices(&[k])) {
                    Some((s, negative)) => {
                        acc.dts = s;
                        acc.negative ^= negative;
                    }
                    None => {
                        return Err(Error::ExteriorSquare {
                            index: k + 1,
                            pos: start,
                        })
                    }
                }
            }
            _ => return self.error("expected 't' or 'dt'"),
        }
        Ok(())
    }
}

/// Canonical text: terms by ascending degree, then descending graded-lex
/// monomial, then exterior subset. Coefficients print as balanced residues,
/// so `e` and `-e` render differently.
pub fn render_class(x: &ExtClass) -> String {
    let cfg = x.config();
    let terms = x.sorted_terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (s, m, c)) in terms.iter().enumerate() {
        let b = cfg.balanced(*c);
        match (i, b < 0) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = b.unsigned_abs();
        let mut factors: Vec<String> = Vec::new();
        for k in 0..cfg.n() {
            match m.exp(k) {
                0 => {}
                1 => factors.push(format!("t{}", k + 1)),
                e => factors.push(format!("t{}^{}", k + 1, e)),
            }
        }
        factors.extend(s.indices().map(|k| format!("dt{}", k + 1)));
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// JSON form of one term: `{"coeff": 2, "exps": [1, 3], "dts": [1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: u32,
    pub exps: Vec<u32>,
    pub dts: Vec<usize>,
}

/// JSON form of a class; `dts` are one-based and ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub p: u32,
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl From<&ExtClass> for ClassJson {
    fn from(x: &ExtClass) -> Self {
        let cfg = x.config();
        ClassJson {
            p: cfg.p(),
            n: cfg.n(),
            terms: x
                .sorted_terms()
                .into_iter()
                .map(|(s, m, c)| TermJson {
                    coeff: c,
                    exps: m.exps(cfg.n()),
                    dts: s.indices().map(|k| k + 1).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ClassJson> for ExtClass {
    type Error = Error;

    fn try_from(j: &ClassJson) -> Result<ExtClass> {
        let cfg = Config::new(j.p, j.n)?;
        let mut out = ExtClass::zero(cfg);
        for t in &j.terms {
            if t.exps.len() != cfg.n() {
                return Err(Error::Json(format!("exps must have length {}", cfg.n())));
            }
            if !t.dts.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::Json("dts must be strictly ascending".into()));
            }
            if t.dts.iter().any(|&k| k == 0 || k > cfg.n()) {
                return Err(Error::Json("dts index out of range".into()));
            }
            let idx: Vec<usize> = t.dts.iter().map(|k| k - 1).collect();
            out.add_term(
                Subset::from_indices(&idx),
                Monomial::new(&t.exps),
                t.coeff % cfg.p(),
            );
        }
        Ok(out)
    }
}

pub fn class_to_json(x: &ExtClass) -> serde_json::Value {
    serde_json::to_value(ClassJson::from(x)).expect("plain data")
}

pub fn class_from_json(text: &str) -> Result<ExtClass> {
    let j: ClassJson = serde_json::from_str(text)?;
    ExtClass::try_from(&j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u32, n: usize) -> Config {
        Config::new(p, n).unwrap()
    }

    #[test]
    fn parse_basic_forms() {
        let c = cfg(3, 2);
        let x = parse_class("t1^3*t2 - t1*t2^3", c).unwrap();
        assert_eq!(x.num_terms(), 2);
        assert_eq!(render_class(&x), "t1^3*t2 - t1*t2^3");
        let y = parse_class("dt1*dt2", c).unwrap();
        assert_eq!(y, ExtClass::top_exterior(c));
        assert!(matches!(
            parse_class("dt2 dt1", c),
            Err(Error::Syntax { .. })
        ));
        assert_eq!(parse_class("dt2*dt1", c).unwrap(), -&y);
        assert_eq!(parse_class("1 - t1^2", c).unwrap().num_terms(), 2);
        assert_eq!(
            parse_class("2t1", c).unwrap(),
            parse_class("-t1", c).unwrap()
        );
        assert_eq!(
            parse_class("t1 + -2*t1", c).unwrap(),
            parse_class("2*t1", c).unwrap()
        );
        assert_eq!(
            parse_class("  t1 *  t1 ", c).unwrap(),
            parse_class("t1^2", c).unwrap()
        );
        assert!(parse_class("3", c).unwrap().is_zero());
    }

    #[test]
    fn parse_errors() {
        let c = cfg(3, 2);
        assert!(matches!(
            parse_class("dt1*dt1", c),
            Err(Error::ExteriorSquare { index: 1, pos: 4 })
        ));
        assert!(matches!(
            parse_class("dt1^2", c),
            Err(Error::ExteriorSquare { .. })
        ));
        assert!(matches!(
            parse_class("t3", c),
            Err(Error::IndexOutOfRange { index: 3, n: 2, .. })
        ));
        assert!(matches!(
            parse_class("t0", c),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_class("t1 +", c),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_class("", c),
            Err(Error::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse_class("t1 t2", c),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(parse_class("t1^0", c), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse_class("x1", c),
            Err(Error::Syntax { pos: 0, .. })
        ));
    }

    #[test]
    fn render_canonical() {
        let c = cfg(3, 3);
        assert_eq!(render_class(&ExtClass::zero(c)), "0");
        let x = parse_class("t3*dt1*dt2 + t1*dt2*dt3 - t2*dt1*dt3", c).unwrap();
        assert_eq!(render_class(&x), "t1*dt2*dt3 - t2*dt1*dt3 + t3*dt1*dt2");
        assert_eq!(render_class(&-&x), "-t1*dt2*dt3 + t2*dt1*dt3 - t3*dt1*dt2");
        let c5 = cfg(5, 1);
        assert_eq!(
            render_class(&parse_class("3 + 4*t1^2 + 2*t1", c5).unwrap()),
            "-2 + 2*t1 - t1^2"
        );
    }

    #[test]
    fn json_roundtrip_and_schema() {
        let c = cfg(3, 2);
        let x = parse_class("t1^3*t2 - t1*t2^3", c).unwrap();
        let j = class_to_json(&x);
        assert_eq!(
            j.to_string(),
            r#"{"p":3,"n":2,"terms":[{"coeff":1,"exps":[3,1],"dts":[]},{"coeff":2,"exps":[1,3],"dts":[]}]}"#
        );
        assert_eq!(class_from_json(&j.to_string()).unwrap(), x);
        assert!(
            class_from_json(r#"{"p":3,"n":2,"terms":[{"coeff":1,"exps":[0,0],"dts":[2,1]}]}"#)
                .is_err()
        );
        assert!(class_from_json(r#"{"p":4,"n":2,"terms":[]}"#).is_err());
    }
}
