//! Dense polynomials in `T` over `F_q`, with the bidirectional text grammar
//! used everywhere in the CLI and file formats.

use super::{parse_coeff, Fe, FieldCtx, FieldElement};
use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A polynomial in `T` over `F_q`. Coefficients are stored dense,
/// little-endian (index = exponent), with no trailing zeros; the zero
/// polynomial has an empty coefficient vector and `degree() == None`.
#[derive(Clone, Debug)]
pub struct Poly {
    ctx: Arc<FieldCtx>,
    pub(crate) coeffs: Vec<Fe>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> Poly {
        Poly::constant(&FieldElement::new(ctx, 1))
    }

    pub fn constant(c: &FieldElement) -> Poly {
        let mut p = Poly { ctx: c.ctx().clone(), coeffs: vec![c.fe] };
        p.normalize();
        p
    }

    /// `c * T^e`.
    pub fn monomial(c: &FieldElement, e: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(c.ctx());
        }
        let mut coeffs = vec![Fe(0); e + 1];
        coeffs[e] = c.fe;
        Poly { ctx: c.ctx().clone(), coeffs }
    }

    /// From integer coefficients, little-endian, reduced mod p (mapped into
    /// the prime subfield for extension contexts).
    pub fn from_ints(ctx: &Arc<FieldCtx>, ints: &[u64]) -> Poly {
        let coeffs = ints.iter().map(|&v| ctx.fe_from_u64(v)).collect();
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.normalize();
        p
    }

    pub(crate) fn from_fes(ctx: &Arc<FieldCtx>, coeffs: Vec<Fe>) -> Poly {
        let mut p = Poly { ctx: ctx.clone(), coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.0 == 0) {
            self.coeffs.pop();
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` is the distinguished marker for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, e: usize) -> FieldElement {
        let fe = self.coeffs.get(e).copied().unwrap_or(Fe(0));
        FieldElement::from_fe(&self.ctx, fe)
    }

    /// Leading coefficient; zero polynomial yields the zero element.
    pub fn leading_coeff(&self) -> FieldElement {
        let fe = self.coeffs.last().copied().unwrap_or(Fe(0));
        FieldElement::from_fe(&self.ctx, fe)
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(Fe(0));
            let b = other.coeffs.get(i).copied().unwrap_or(Fe(0));
            out.push(self.ctx.fe_add(a, b));
        }
        Ok(Poly::from_fes(&self.ctx, out))
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).copied().unwrap_or(Fe(0));
            let b = other.coeffs.get(i).copied().unwrap_or(Fe(0));
            out.push(self.ctx.fe_sub(a, b));
        }
        Ok(Poly::from_fes(&self.ctx, out))
    }

    pub fn neg(&self) -> Poly {
        let out = self.coeffs.iter().map(|&c| self.ctx.fe_neg(c)).collect();
        Poly { ctx: self.ctx.clone(), coeffs: out }
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ctx));
        }
        let mut out = vec![Fe(0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.0 == 0 {
                    continue;
                }
                out[i + j] = self.ctx.fe_add(out[i + j], self.ctx.fe_mul(a, b));
            }
        }
        Ok(Poly::from_fes(&self.ctx, out))
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let out = self.coeffs.iter().map(|&a| self.ctx.fe_mul(a, c.fe)).collect();
        Poly { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Multiply by `T^e`.
    pub fn shift_up(&self, e: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe(0); e];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { ctx: self.ctx.clone(), coeffs }
    }

    /// Euclidean division: `self = q * den + r` with `deg r < deg den`.
    pub fn divmod(&self, den: &Poly) -> Result<(Poly, Poly)> {
        self.check_ctx(den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = den.degree().unwrap();
        if self.degree().map_or(true, |dn| dn < dd) {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let dn = self.degree().unwrap();
        let lead_inv = self.ctx.fe_inv(*den.coeffs.last().unwrap())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe(0); dn - dd + 1];
        for i in (dd..=dn).rev() {
            let c = rem[i];
            if c.0 == 0 {
                continue;
            }
            let f = self.ctx.fe_mul(c, lead_inv);
            quot[i - dd] = f;
            let off = i - dd;
            for (k, &dk) in den.coeffs.iter().enumerate() {
                rem[off + k] = self.ctx.fe_sub(rem[off + k], self.ctx.fe_mul(f, dk));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_fes(&self.ctx, quot), Poly::from_fes(&self.ctx, rem)))
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, den: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(den)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("{self} by {den}")));
        }
        Ok(q)
    }

    /// `self^e`. When `e` is a power of the characteristic the result is the
    /// coefficientwise-Frobenius image with exponents multiplied by `e`;
    /// that fast path is always used for the `p^t` part of `e`.
    pub fn pow(&self, e: u64) -> Poly {
        if e == 0 {
            return Poly::one(&self.ctx);
        }
        if self.is_zero() {
            return self.clone();
        }
        let p = self.ctx.p();
        let mut frob = 1u64;
        let mut rest = e;
        while rest % p == 0 {
            frob *= p;
            rest /= p;
        }
        let base = if frob > 1 { self.frobenius_pow(frob) } else { self.clone() };
        if rest == 1 {
            return base;
        }
        let mut acc = Poly::one(&self.ctx);
        let mut b = base;
        let mut m = rest;
        while m > 0 {
            if m & 1 == 1 {
                acc = acc.mul(&b).unwrap();
            }
            m >>= 1;
            if m > 0 {
                b = b.mul(&b).unwrap();
            }
        }
        acc
    }

    /// `self^r` for `r = p^t`: coefficients to the `r`-th power, exponents
    /// multiplied by `r`.
    pub(crate) fn frobenius_pow(&self, r: u64) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        let mut out = vec![Fe(0); deg * r as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.0 != 0 {
                out[i * r as usize] = self.ctx.fe_pow(c, r);
            }
        }
        Poly::from_fes(&self.ctx, out)
    }

    /// True when `T` divides this polynomial.
    pub fn divisible_by_t(&self) -> bool {
        self.coeffs.first().map_or(true, |c| c.0 == 0)
    }

    /// Parse the text grammar at a given base column (for error positions
    /// inside larger inputs).
    pub fn parse_at(ctx: &Arc<FieldCtx>, text: &str, base_col: usize) -> Result<Poly> {
        parse_poly(ctx, text, base_col)
    }

    pub fn parse(ctx: &Arc<FieldCtx>, text: &str) -> Result<Poly> {
        parse_poly(ctx, text, 0)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: descending powers, `coeff*T^e` with `1*` and `^1`
    /// elided, `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for e in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[e];
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.ctx.fe_to_string(c);
            let one = c.0 == 1;
            match (e, one) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{cs}*T")?,
                (_, true) => write!(f, "T^{e}")?,
                (_, false) => write!(f, "{cs}*T^{e}")?,
            }
        }
        Ok(())
    }
}

/// Hand-rolled parser for the polynomial grammar. Columns in errors are
/// 0-based byte offsets from the start of `text` plus `base_col`.
fn parse_poly(ctx: &Arc<FieldCtx>, text: &str, base_col: usize) -> Result<Poly> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut acc = Poly::zero(ctx);
    let err = |msg: &str, at: usize| Error::Parse { msg: msg.into(), col: base_col + at };

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos] as char).is_whitespace() {
            *pos += 1;
        }
    };

    skip_ws(&mut pos);
    if pos >= bytes.len() {
        return Err(err("empty polynomial", pos));
    }
    loop {
        skip_ws(&mut pos);
        let term_start = pos;
        // coefficient part: digits or parenthesized vector
        let mut coeff: Option<FieldElement> = None;
        if pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'(') {
            let cstart = pos;
            if bytes[pos] == b'(' {
                while pos < bytes.len() && bytes[pos] != b')' {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(err("unclosed coefficient vector", cstart));
                }
                pos += 1;
            } else {
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
            }
            coeff = Some(parse_coeff(ctx, &text[cstart..pos], base_col + cstart)?);
        }
        // optional '*' then 'T' part
        let mut has_var = false;
        let mut exp = 0usize;
        skip_ws(&mut pos);
        if coeff.is_some() && pos < bytes.len() && bytes[pos] == b'*' {
            pos += 1;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'T' {
                return Err(err("expected 'T' after '*'", pos));
            }
        }
        if pos < bytes.len() && bytes[pos] == b'T' {
            has_var = true;
            exp = 1;
            pos += 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let estart = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if estart == pos {
                    return Err(err("expected exponent after '^'", pos));
                }
                exp = text[estart..pos]
                    .parse()
                    .map_err(|_| err("exponent out of range", estart))?;
            }
        }
        if coeff.is_none() && !has_var {
            return Err(err("expected term", term_start));
        }
        let c = coeff.unwrap_or_else(|| FieldElement::new(ctx, 1));
        let term = if has_var { Poly::monomial(&c, exp) } else { Poly::constant(&c) };
        acc = acc.add(&term).unwrap();

        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(err(&format!("unexpected '{}'", bytes[pos] as char), pos));
        }
        pos += 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FieldCtx;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn divmod_hand_example() {
        // (T^3 + 2T + 1) / (T^2 + 1) = (T, T + 1) over F_3
        let ctx = f3();
        let num = Poly::from_ints(&ctx, &[1, 2, 0, 1]);
        let den = Poly::from_ints(&ctx, &[1, 0, 1]);
        let (q, r) = num.divmod(&den).unwrap();
        assert_eq!(q, Poly::from_ints(&ctx, &[0, 1]));
        assert_eq!(r, Poly::from_ints(&ctx, &[1, 1]));
        // identity divisor
        let (q, r) = num.divmod(&Poly::one(&ctx)).unwrap();
        assert_eq!(q, num);
        assert!(r.is_zero());
        // deg num < deg den
        let small = Poly::from_ints(&ctx, &[0, 2]);
        let (q, r) = small.divmod(&Poly::from_ints(&ctx, &[0, 0, 1])).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, small);
        assert_eq!(num.divmod(&Poly::zero(&ctx)), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_round_trip_sampled() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for ctx in [FieldCtx::prime(3).unwrap(), FieldCtx::prime(13).unwrap()] {
            for _ in 0..200 {
                let num = random_poly(&ctx, rng.gen_range(0..10), &mut rng);
                let den = loop {
                    let d = random_poly(&ctx, rng.gen_range(0..5), &mut rng);
                    if !d.is_zero() {
                        break d;
                    }
                };
                let (q, r) = num.divmod(&den).unwrap();
                assert_eq!(q.mul(&den).unwrap().add(&r).unwrap(), num);
                if let (Some(dr), Some(dd)) = (r.degree(), den.degree()) {
                    assert!(dr < dd);
                }
            }
        }
    }

    fn random_poly(
        ctx: &Arc<FieldCtx>,
        deg: usize,
        rng: &mut rand_chacha::ChaCha8Rng,
    ) -> Poly {
        use rand::Rng;
        let ints: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..ctx.p())).collect();
        Poly::from_ints(ctx, &ints)
    }

    #[test]
    fn pow_frobenius_examples() {
        let ctx = f3();
        // (2T)^3 = 2T^3 since 2^3 = 2 mod 3
        let two_t = Poly::from_ints(&ctx, &[0, 2]);
        assert_eq!(two_t.pow(3), Poly::from_ints(&ctx, &[0, 0, 0, 2]));
        // (T+1)^3 = T^3 + 1 in characteristic 3
        let tp1 = Poly::from_ints(&ctx, &[1, 1]);
        assert_eq!(tp1.pow(3), Poly::from_ints(&ctx, &[1, 0, 0, 1]));
        assert_eq!(tp1.pow(0), Poly::one(&ctx));
        // fast path agrees with repeated multiplication
        let f = Poly::from_ints(&ctx, &[1, 2, 0, 1, 2]);
        let mut slow = Poly::one(&ctx);
        for _ in 0..9 {
            slow = slow.mul(&f).unwrap();
        }
        assert_eq!(f.pow(9), slow);
    }

    #[test]
    fn grammar_round_trip() {
        let ctx = f3();
        for s in ["2*T^3+T+1", "T", "0", "T^2+2", "2"] {
            let p = Poly::parse(&ctx, s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(Poly::parse(&ctx, &p.to_string()).unwrap(), p);
        }
        // non-canonical inputs parse too
        assert_eq!(
            Poly::parse(&ctx, "1*T^1 + 2 + T^2").unwrap().to_string(),
            "T^2+T+2"
        );
    }

    #[test]
    fn grammar_errors_carry_columns() {
        let ctx = f3();
        match Poly::parse(&ctx, "2**T") {
            Err(Error::Parse { col, .. }) => assert_eq!(col, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Poly::parse(&ctx, "").is_err());
        assert!(Poly::parse(&ctx, "T^").is_err());
        // coefficient out of range for F_3
        assert!(Poly::parse(&ctx, "4*T").is_err());
    }

    #[test]
    fn extension_coeff_display() {
        let f9 = FieldCtx::extension(3, &[1, 0, 1]).unwrap();
        let x = FieldElement::from_coeffs(&f9, &[0, 1]).unwrap();
        let p = Poly::monomial(&x, 2);
        assert_eq!(p.to_string(), "(1,0)*T^2");
        assert_eq!(Poly::parse(&f9, "(1,0)*T^2").unwrap(), p);
    }
}
