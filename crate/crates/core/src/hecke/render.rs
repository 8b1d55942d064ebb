use thiserror::Error;

use super::{HeckeAlgebra, HeckeElt};
use crate::coxeter::{word_string, ElemId};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse Hecke element {input:?}: {reason}")]
pub struct ParseHeckeError {
    pub input: String,
    pub reason: String,
}

fn coefficient_string(p: &LaurentPoly) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

/// Splits on `+` at bracket depth zero. Laurent renderings use `a + b` and
/// `a − b` internally, which is why multi-term coefficients are parenthesized.
fn split_terms(s: &str) -> Option<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            '+' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    out.push(s[start..].trim());
    Some(out)
}

impl HeckeAlgebra {
    /// Canonical text form, e.g. `1 + (v^-1 − v)·H[1]`. Terms are listed in
    /// element order; the identity term is a bare coefficient, unit
    /// coefficients are omitted, and multi-term coefficients are
    /// parenthesized.
    pub fn render(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".to_string();
        }
        let t = self.table();
        h.terms()
            .map(|(w, p)| {
                if w == ElemId::IDENTITY {
                    return coefficient_string(p);
                }
                let basis = format!("H[{}]", word_string(t.word(w)));
                if p.is_one() {
                    basis
                } else if (-p).is_one() {
                    format!("−{basis}")
                } else {
                    format!("{}·{basis}", coefficient_string(p))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Inverse of [`HeckeAlgebra::render`]. Also accepts `*` for `·`, ASCII
    /// `-`, repeated basis elements and any reduced word inside `H[..]`.
    pub fn parse(&self, input: &str) -> Result<HeckeElt, ParseHeckeError> {
        let err = |reason: &str| ParseHeckeError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let t = self.table();
        let mut h = self.zero();
        let terms = split_terms(input).ok_or_else(|| err("unbalanced brackets"))?;
        for term in terms {
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (coeff, word) = match term.find("H[") {
                None => (term, None),
                Some(pos) => {
                    let rest = &term[pos + 2..];
                    let close = rest.find(']').ok_or_else(|| err("missing `]`"))?;
                    if !rest[close + 1..].trim().is_empty() {
                        return Err(err("trailing text after basis element"));
                    }
                    (term[..pos].trim(), Some(&rest[..close]))
                }
            };
            let coeff = coeff.trim_end_matches(['·', '*']).trim();
            let poly = match coeff {
                "" => LaurentPoly::one(),
                "−" | "-" => -LaurentPoly::one(),
                c => {
                    let inner = c.strip_prefix('(').and_then(|c| c.strip_suffix(')')).unwrap_or(c);
                    inner.parse::<LaurentPoly>().map_err(|e| err(&e.reason))?
                }
            };
            let w = match word {
                None => ElemId::IDENTITY,
                Some(word) => {
                    let mut letters = Vec::new();
                    for tok in word.split_whitespace() {
                        let i: usize = tok.parse().map_err(|_| err("bad generator index"))?;
                        if i == 0 || i > t.rank() {
                            return Err(err("generator index out of range"));
                        }
                        letters.push(i - 1);
                    }
                    let w = t.from_word(&letters);
                    if t.length(w) != letters.len() {
                        return Err(err("word is not reduced"));
                    }
                    w
                }
            };
            h.add_term(w, &poly);
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn alg(name: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(Arc::new(CoxeterSystem::named(name).unwrap())).unwrap()
    }

    #[test]
    fn renders_examples() {
        let h = alg("A1");
        let sq = h.eval_braid(&"1 1".parse().unwrap()).unwrap();
        assert_eq!(h.render(&sq), "1 + (v^-1 − v)·H[1]");
        assert_eq!(h.render(&h.zero()), "0");
        let inv = h.inverse_standard(h.table().generator(0));
        assert_eq!(h.render(&inv), "(−v^-1 + v) + H[1]");

        let a2 = alg("A2");
        let w = a2.eval_braid(&"1 2".parse().unwrap()).unwrap();
        assert_eq!(a2.render(&w), "H[1 2]");
        let m = a2.monomial(a2.table().generator(1), LaurentPoly::monomial(-2, 3));
        assert_eq!(a2.render(&m), "−2v^3·H[2]");
    }

    #[test]
    fn round_trips() {
        let h = alg("B2");
        for w in h.table().ids() {
            for x in [
                h.costandard(w).clone(),
                h.standard(w),
                h.mul(h.costandard(w), &h.standard(w)).unwrap(),
            ] {
                assert_eq!(h.parse(&h.render(&x)).unwrap(), x);
            }
        }
        let longest = h.table().longest();
        let e = h.inverse_standard(longest);
        assert_eq!(h.parse(&h.render(&e)).unwrap(), e);
    }

    #[test]
    fn parse_variants_and_errors() {
        let h = alg("A2");
        let t = h.table();
        let x = h.parse("H[2 1] + v*H[1] + -H[1]").unwrap();
        assert_eq!(x.coeff(t.from_word(&[1, 0])), LaurentPoly::one());
        assert_eq!(x.coeff(t.generator(0)), LaurentPoly::from_terms([(0, -1), (1, 1)]));
        assert_eq!(h.parse("H[]").unwrap(), h.one());
        for bad in ["H[1 1]", "H[3]", "H[0]", "(v", "H[1] x", "1 +", "H[a]"] {
            assert!(h.parse(bad).is_err(), "{bad}");
        }
    }
}
