//! Line-based sparse polynomial text format.
//!
//! ```text
//! # Fermat cubic
//! 1 3 0 0 0
//! 1 0 3 0 0
//! 1 0 0 3 0
//! 1 0 0 0 3
//! ```
//!
//! One term per line, `<coeff> <e0> <e1> <e2> <e3>`; `#` starts a comment.
//! Coefficients are reduced mod p and duplicate exponent tuples are summed.

use super::{MPoly, Mono, PolyError, NVARS};
use crate::ffield::FieldCtx;

pub fn parse_poly(text: &str, ctx: &FieldCtx) -> Result<MPoly, PolyError> {
    let mut poly = MPoly::zero(ctx);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        if tokens.is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| PolyError::Syntax {
            line: lineno + 1,
            col,
            msg,
        };
        if tokens.len() != 1 + NVARS {
            let col = tokens.get(1 + NVARS).map_or(line.len() + 1, |t| t.0);
            return Err(err(
                col,
                format!("expected 5 fields, found {}", tokens.len()),
            ));
        }
        let (ccol, ctok) = tokens[0];
        let coeff: i128 = ctok
            .parse()
            .map_err(|_| err(ccol, format!("bad coefficient '{ctok}'")))?;
        let p = i128::from(ctx.p());
        let c = ctx.from_u64(coeff.rem_euclid(p) as u64);
        let mut exps = [0u16; NVARS];
        for (slot, &(col, tok)) in exps.iter_mut().zip(&tokens[1..]) {
            *slot = tok
                .parse()
                .map_err(|_| err(col, format!("bad exponent '{tok}'")))?;
        }
        poly = poly.add(&MPoly::from_terms(ctx, [(Mono(exps), c)]));
    }
    Ok(poly)
}

/// Parses and additionally requires all terms to share one total degree.
pub fn parse_poly_homogeneous(text: &str, ctx: &FieldCtx) -> Result<MPoly, PolyError> {
    let poly = parse_poly(text, ctx)?;
    poly.check_homogeneous()?;
    Ok(poly)
}

/// Whitespace-separated tokens with their 1-based column.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> FieldCtx {
        FieldCtx::make(7, 1, 0).unwrap()
    }

    #[test]
    fn fermat_cubic() {
        let k = f7();
        let r = parse_poly("1 3 0 0 0\n1 0 3 0 0\n1 0 0 3 0\n1 0 0 0 3", &k).unwrap();
        let want = MPoly::from_int_terms(
            &k,
            &[(1, [3, 0, 0, 0]), (1, [0, 3, 0, 0]), (1, [0, 0, 3, 0]), (1, [0, 0, 0, 3])],
        );
        assert_eq!(r, want);
    }

    #[test]
    fn single_monomial() {
        let k = f7();
        let m = parse_poly("5 1 1 1 1", &k).unwrap();
        assert_eq!(m, MPoly::from_int_terms(&k, &[(5, [1, 1, 1, 1])]));
    }

    #[test]
    fn comments_blanks_duplicates_and_reduction() {
        let k = f7();
        let m = parse_poly("# header\n\n3 2 0 0 0  # trailing\n5 2 0 0 0\n-1 0 0 0 2\n", &k).unwrap();
        assert_eq!(
            m,
            MPoly::from_int_terms(&k, &[(1, [2, 0, 0, 0]), (6, [0, 0, 0, 2])])
        );
    }

    #[test]
    fn mixed_degree_rejected() {
        let k = f7();
        let e = parse_poly_homogeneous("1 2 0 0 0\n1 0 1 0 0", &k).unwrap_err();
        assert_eq!(e, PolyError::MixedDegree(2, 1));
    }

    #[test]
    fn syntax_errors_carry_position() {
        let k = f7();
        match parse_poly("1 0 0 0 0\n2 1 x 0 0", &k).unwrap_err() {
            PolyError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 5)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_poly("1 0 0 0", &k).unwrap_err() {
            PolyError::Syntax { line, .. } => assert_eq!(line, 1),
            e => panic!("unexpected {e:?}"),
        }
    }
}
