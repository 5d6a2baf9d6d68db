//! Exact arithmetic over `F_q` (`q = p^s`), dense polynomials in `T`, and
//! truncated Laurent series in `1/T` with explicit precision tracking.
//!
//! Every value is immutable after construction; contexts are shared behind
//! `Arc` and compared structurally, so values from two independently built
//! but identical contexts interoperate.

mod poly;
mod series;

pub use poly::Poly;
pub use series::LaurentSeries;

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Packed representation of one field element.
///
/// For a prime field this is the residue in `[0, p)`. For an extension field
/// `F_{p^s}` it is the coefficient vector of the residue polynomial packed in
/// base `p` (digit `i` = coefficient of `x^i`), which fits in a `u64` for the
/// supported range `s <= 8`, `p^s < 2^63`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Fe(pub(crate) u64);

pub(crate) const MAX_EXT_DEGREE: u32 = 8;

/// A finite field `F_q` with `q = p^s`.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    s: u32,
    /// Monic irreducible modulus over `F_p`, little-endian, length `s + 1`.
    /// Absent when `s = 1`.
    modulus: Option<Vec<u64>>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        Ok(Arc::new(FieldCtx { p, s: 1, modulus: None }))
    }

    /// The extension field `F_{p^s}` with a caller-supplied monic irreducible
    /// modulus over `F_p` (little-endian coefficients, degree `s`,
    /// `2 <= s <= 8`). Irreducibility is checked by trial factorization.
    pub fn extension(p: u64, modulus: &[u64]) -> Result<Arc<FieldCtx>> {
        if !is_prime(p) {
            return Err(Error::BadField(format!("{p} is not prime")));
        }
        if modulus.len() < 3 {
            return Err(Error::BadField("modulus must have degree >= 2".into()));
        }
        let s = (modulus.len() - 1) as u32;
        if s > MAX_EXT_DEGREE {
            return Err(Error::BadField(format!(
                "extension degree {s} exceeds supported maximum {MAX_EXT_DEGREE}"
            )));
        }
        let m: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        if m[s as usize] != 1 {
            return Err(Error::BadField("modulus must be monic".into()));
        }
        if p.checked_pow(s).is_none() || p.pow(s) >= 1 << 62 {
            return Err(Error::BadField("p^s too large".into()));
        }
        if !ext_modulus_irreducible(p, &m) {
            return Err(Error::BadField("modulus is reducible over F_p".into()));
        }
        Ok(Arc::new(FieldCtx { p, s, modulus: Some(m) }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Field size `q = p^s`.
    pub fn q(&self) -> u64 {
        self.p.pow(self.s)
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// True when `r` is `p^t` for some `t >= 0`.
    pub fn is_power_of_p(&self, r: u64) -> bool {
        let mut r = r;
        if r == 0 {
            return false;
        }
        while r % self.p == 0 {
            r /= self.p;
        }
        r == 1
    }

    // ---- packed-element arithmetic ------------------------------------

    pub(crate) fn zero_fe(&self) -> Fe {
        Fe(0)
    }

    pub(crate) fn one_fe(&self) -> Fe {
        Fe(1)
    }

    pub(crate) fn fe_from_u64(&self, v: u64) -> Fe {
        if self.s == 1 {
            Fe(v % self.p)
        } else {
            // An integer maps into the prime subfield.
            Fe(v % self.p)
        }
    }

    fn unpack(&self, x: u64, out: &mut [u64]) {
        let mut v = x;
        for slot in out.iter_mut().take(self.s as usize) {
            *slot = v % self.p;
            v /= self.p;
        }
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        let mut v = 0u64;
        for &d in digits.iter().take(self.s as usize).rev() {
            v = v * self.p + d;
        }
        v
    }

    pub(crate) fn fe_add(&self, a: Fe, b: Fe) -> Fe {
        if self.s == 1 {
            let x = a.0 + b.0;
            return Fe(if x >= self.p { x - self.p } else { x });
        }
        let mut da = [0u64; MAX_EXT_DEGREE as usize];
        let mut db = [0u64; MAX_EXT_DEGREE as usize];
        self.unpack(a.0, &mut da);
        self.unpack(b.0, &mut db);
        for i in 0..self.s as usize {
            da[i] = (da[i] + db[i]) % self.p;
        }
        Fe(self.pack(&da))
    }

    pub(crate) fn fe_neg(&self, a: Fe) -> Fe {
        if self.s == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut d = [0u64; MAX_EXT_DEGREE as usize];
        self.unpack(a.0, &mut d);
        for c in d.iter_mut().take(self.s as usize) {
            if *c != 0 {
                *c = self.p - *c;
            }
        }
        Fe(self.pack(&d))
    }

    pub(crate) fn fe_sub(&self, a: Fe, b: Fe) -> Fe {
        self.fe_add(a, self.fe_neg(b))
    }

    pub(crate) fn fe_mul(&self, a: Fe, b: Fe) -> Fe {
        if self.s == 1 {
            return Fe(((a.0 as u128 * b.0 as u128) % self.p as u128) as u64);
        }
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let s = self.s as usize;
        let mut da = [0u64; MAX_EXT_DEGREE as usize];
        let mut db = [0u64; MAX_EXT_DEGREE as usize];
        self.unpack(a.0, &mut da);
        self.unpack(b.0, &mut db);
        let mut prod = [0u64; 2 * MAX_EXT_DEGREE as usize];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] =
                    ((prod[i + j] as u128 + da[i] as u128 * db[j] as u128) % self.p as u128) as u64;
            }
        }
        // Reduce by the monic modulus.
        let m = self.modulus.as_ref().unwrap();
        for i in (s..2 * s - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (k, &mk) in m.iter().enumerate().take(s) {
                let idx = i - s + k;
                let sub = (c as u128 * mk as u128) % self.p as u128;
                prod[idx] = ((prod[idx] as u128 + self.p as u128 * self.p as u128 - sub)
                    % self.p as u128) as u64;
            }
        }
        Fe(self.pack(&prod[..s]))
    }

    pub(crate) fn fe_pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = self.one_fe();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.fe_mul(acc, base);
            }
            base = self.fe_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn fe_inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::NonInvertible);
        }
        Ok(self.fe_pow(a, self.q() - 2))
    }

    pub(crate) fn fe_to_string(&self, a: Fe) -> String {
        if self.s == 1 {
            return a.0.to_string();
        }
        let mut d = [0u64; MAX_EXT_DEGREE as usize];
        self.unpack(a.0, &mut d);
        let parts: Vec<String> =
            (0..self.s as usize).rev().map(|i| d[i].to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Trial factorization: no monic divisor of degree `1..=s/2` over `F_p`.
fn ext_modulus_irreducible(p: u64, modulus: &[u64]) -> bool {
    let s = modulus.len() - 1;
    for d in 1..=s / 2 {
        // Enumerate monic polynomials of degree d by base-p counting of the
        // lower d coefficients.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut v = idx;
            for c in div.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            div[d] = 1;
            if poly_mod_p_divides(p, modulus, &div) {
                return false;
            }
        }
    }
    true
}

/// Whether `div` divides `num` exactly in `F_p[x]` (both little-endian).
fn poly_mod_p_divides(p: u64, num: &[u64], div: &[u64]) -> bool {
    let mut rem: Vec<u64> = num.to_vec();
    let dd = div.len() - 1;
    let lead_inv = mod_inv(div[dd], p);
    while rem.len() > dd {
        let c = *rem.last().unwrap() % p;
        if c != 0 {
            let f = (c as u128 * lead_inv as u128 % p as u128) as u64;
            let off = rem.len() - 1 - dd;
            for (k, &dk) in div.iter().enumerate() {
                let sub = (f as u128 * dk as u128) % p as u128;
                rem[off + k] =
                    ((rem[off + k] as u128 + p as u128 * p as u128 - sub) % p as u128) as u64;
            }
        }
        rem.pop();
        while rem.len() > dd && *rem.last().unwrap() % p == 0 {
            rem.pop();
        }
    }
    rem.iter().all(|&c| c % p == 0)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// One element of `F_q`, carrying its context.
#[derive(Clone, Debug)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    pub(crate) fe: Fe,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.ctx == *other.ctx && self.fe == other.fe
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(ctx: &Arc<FieldCtx>, value: u64) -> FieldElement {
        FieldElement { ctx: ctx.clone(), fe: ctx.fe_from_u64(value) }
    }

    /// Extension element from little-endian coefficients over `F_p`.
    pub fn from_coeffs(ctx: &Arc<FieldCtx>, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > ctx.s as usize {
            return Err(Error::BadField("too many coefficients for this field".into()));
        }
        let mut d = [0u64; MAX_EXT_DEGREE as usize];
        for (i, &c) in coeffs.iter().enumerate() {
            d[i] = c % ctx.p;
        }
        Ok(FieldElement { ctx: ctx.clone(), fe: Fe(ctx.pack(&d)) })
    }

    pub(crate) fn from_fe(ctx: &Arc<FieldCtx>, fe: Fe) -> FieldElement {
        FieldElement { ctx: ctx.clone(), fe }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.fe.0 == 0
    }

    pub fn is_one(&self) -> bool {
        self.fe.0 == 1
    }

    fn check_ctx(&self, other: &FieldElement) -> Result<()> {
        if *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::CtxMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(FieldElement::from_fe(&self.ctx, self.ctx.fe_add(self.fe, other.fe)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(FieldElement::from_fe(&self.ctx, self.ctx.fe_sub(self.fe, other.fe)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_ctx(other)?;
        Ok(FieldElement::from_fe(&self.ctx, self.ctx.fe_mul(self.fe, other.fe)))
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement::from_fe(&self.ctx, self.ctx.fe_neg(self.fe))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement::from_fe(&self.ctx, self.ctx.fe_inv(self.fe)?))
    }

    /// `self^e` for a nonnegative integer exponent, by square-and-multiply.
    pub fn pow(&self, e: u64) -> FieldElement {
        FieldElement::from_fe(&self.ctx, self.ctx.fe_pow(self.fe, e))
    }

    /// Residue value for prime fields.
    pub fn residue(&self) -> Option<u64> {
        if self.ctx.s == 1 {
            Some(self.fe.0)
        } else {
            None
        }
    }

    /// Packed canonical value (residue for s=1, base-p packed vector otherwise).
    pub fn canonical(&self) -> u64 {
        self.fe.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx.fe_to_string(self.fe))
    }
}

/// Parse a coefficient in the text grammar: an integer in `[0, p)` for
/// `s = 1`, or `(c_{s-1},...,c_0)` for `s > 1`. `col` is the 0-based column
/// where the token starts, used for error reporting.
pub fn parse_coeff(ctx: &Arc<FieldCtx>, tok: &str, col: usize) -> Result<FieldElement> {
    let tok = tok.trim();
    if ctx.s() == 1 {
        let v: u64 = tok
            .parse()
            .map_err(|_| Error::Parse { msg: format!("bad coefficient '{tok}'"), col })?;
        if v >= ctx.p() {
            return Err(Error::Parse {
                msg: format!("coefficient {v} out of range [0, {})", ctx.p()),
                col,
            });
        }
        Ok(FieldElement::new(ctx, v))
    } else {
        let inner = tok
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                msg: format!("expected (c_{{s-1}},...,c_0) vector, got '{tok}'"),
                col,
            })?;
        let mut cs: Vec<u64> = Vec::new();
        for part in inner.split(',') {
            let v: u64 = part.trim().parse().map_err(|_| Error::Parse {
                msg: format!("bad vector component '{part}'"),
                col,
            })?;
            if v >= ctx.p() {
                return Err(Error::Parse {
                    msg: format!("component {v} out of range [0, {})", ctx.p()),
                    col,
                });
            }
            cs.push(v);
        }
        if cs.len() != ctx.s() as usize {
            return Err(Error::Parse {
                msg: format!("expected {} components, got {}", ctx.s(), cs.len()),
                col,
            });
        }
        cs.reverse(); // grammar lists high coefficient first
        FieldElement::from_coeffs(ctx, &cs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Arc<FieldCtx> {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn prime_field_basics() {
        let ctx = f3();
        let two = FieldElement::new(&ctx, 2);
        assert_eq!(two.add(&two).unwrap(), FieldElement::new(&ctx, 1));
        let f5 = FieldCtx::prime(5).unwrap();
        let three = FieldElement::new(&f5, 3);
        assert_eq!(three.inv().unwrap(), FieldElement::new(&f5, 2));
        // 2^3 = 8 = 2 mod 3; Frobenius fixes the prime field.
        assert_eq!(two.pow(3), two);
    }

    #[test]
    fn rejects_nonprime_and_reducible() {
        assert!(FieldCtx::prime(6).is_err());
        // x^2 - 1 = (x-1)(x+1) over F_3
        assert!(FieldCtx::extension(3, &[2, 0, 1]).is_err());
        // x^2 + 1 is irreducible over F_3
        assert!(FieldCtx::extension(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn inversion_of_zero_fails() {
        let ctx = f3();
        assert_eq!(FieldElement::new(&ctx, 0).inv(), Err(Error::NonInvertible));
    }

    #[test]
    fn ctx_mismatch_detected() {
        let a = FieldElement::new(&f3(), 1);
        let b = FieldElement::new(&FieldCtx::prime(5).unwrap(), 1);
        assert_eq!(a.add(&b), Err(Error::CtxMismatch));
    }

    fn sample_ctxs() -> Vec<Arc<FieldCtx>> {
        vec![
            FieldCtx::prime(3).unwrap(),
            FieldCtx::prime(5).unwrap(),
            FieldCtx::prime(13).unwrap(),
            FieldCtx::extension(3, &[1, 0, 1]).unwrap(),  // F_9
            FieldCtx::extension(5, &[2, 0, 1]).unwrap(),  // F_25, x^2+2
            FieldCtx::extension(2, &[1, 1, 0, 1]).unwrap(), // F_8, x^3+x+1
        ]
    }

    #[test]
    fn field_axioms_sampled() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for ctx in sample_ctxs() {
            let q = ctx.q();
            for _ in 0..300 {
                let a = FieldElement::new(&ctx, 0);
                let mut rnd = || {
                    let v = rng.gen_range(0..q);
                    FieldElement::from_fe(&ctx, Fe(v))
                };
                let (x, y, z) = (rnd(), rnd(), rnd());
                drop(a);
                // associativity / commutativity / distributivity
                assert_eq!(
                    x.add(&y).unwrap().add(&z).unwrap(),
                    x.add(&y.add(&z).unwrap()).unwrap()
                );
                assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
                assert_eq!(
                    x.mul(&y.add(&z).unwrap()).unwrap(),
                    x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
                );
                // inverse laws
                if !x.is_zero() {
                    assert!(x.mul(&x.inv().unwrap()).unwrap().is_one());
                }
                assert!(x.add(&x.neg()).unwrap().is_zero());
                // Frobenius additivity
                let p = ctx.p();
                assert_eq!(
                    x.add(&y).unwrap().pow(p),
                    x.pow(p).add(&y.pow(p)).unwrap()
                );
            }
        }
    }

    #[test]
    fn extension_field_arithmetic() {
        // F_9 = F_3[x]/(x^2+1): (x)(x) = -1 = 2
        let ctx = FieldCtx::extension(3, &[1, 0, 1]).unwrap();
        let x = FieldElement::from_coeffs(&ctx, &[0, 1]).unwrap();
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq, FieldElement::new(&ctx, 2));
        assert_eq!(x.to_string(), "(1,0)");
        // every nonzero element has order dividing 8
        for v in 1..9u64 {
            let e = FieldElement::from_fe(&ctx, Fe(v));
            assert!(e.pow(8).is_one());
        }
    }

    #[test]
    fn coeff_parsing() {
        let ctx = f3();
        assert_eq!(parse_coeff(&ctx, "2", 0).unwrap(), FieldElement::new(&ctx, 2));
        assert!(parse_coeff(&ctx, "3", 0).is_err());
        let f9 = FieldCtx::extension(3, &[1, 0, 1]).unwrap();
        let e = parse_coeff(&f9, "(1,2)", 0).unwrap();
        assert_eq!(e, FieldElement::from_coeffs(&f9, &[2, 1]).unwrap());
    }
}
