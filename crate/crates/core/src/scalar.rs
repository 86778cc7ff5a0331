//! Exact scalar arithmetic over the supported coefficient fields.
//!
//! Exports:
//! - [`FieldContext`]: a shared, cheaply clonable handle describing the
//!   field: the rationals, a prime field F_p, or a one-level extension
//!   F[t]/(modulus) of one of those.
//! - [`Scalar`]: one field element, always stored in canonical form
//!   (reduced fraction, residue in `0..p`, or residue polynomial of degree
//!   below the modulus).
//! - [`ArithOp`]: operation selector for the checked [`Scalar::arith`].
//!
//! Binary operators (`+`, `-`, `*`) panic when the operands live in
//! different contexts; `arith`, `try_div` and `inv` report
//! [`AhError::MixedContexts`] / [`AhError::DivisionByZero`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{AhError, Result};
use crate::poly::Poly;

/// Default seed for every randomized analysis in the crate.
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Largest prime modulus accepted for F_p.
const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug)]
enum FieldKind {
    Rationals,
    PrimeField(u64),
    /// One level of extension: `base` is Rationals or PrimeField, never
    /// itself an extension. The modulus is monic, non-constant and
    /// certified irreducible over the base.
    Extension { base: FieldContext, modulus: Poly },
}

/// Shared description of a coefficient field.
#[derive(Clone, Debug)]
pub struct FieldContext(Arc<FieldKind>);

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::PrimeField(p), FieldKind::PrimeField(q)) => p == q,
            (
                FieldKind::Extension { base: b1, modulus: m1 },
                FieldKind::Extension { base: b2, modulus: m2 },
            ) => b1 == b2 && m1 == m2,
            _ => false,
        }
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    /// The field of rational numbers.
    pub fn rationals() -> FieldContext {
        FieldContext(Arc::new(FieldKind::Rationals))
    }

    /// The prime field F_p. Primality is checked by trial division;
    /// moduli above 2^31 are rejected.
    pub fn prime_field(p: u64) -> Result<FieldContext> {
        if p > MAX_PRIME {
            return Err(AhError::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(AhError::NotPrime(p));
        }
        Ok(FieldContext(Arc::new(FieldKind::PrimeField(p))))
    }

    /// The extension field `base[t]/(modulus)`.
    ///
    /// The base must be the rationals or a prime field (one level only),
    /// and the modulus must be monic, of degree >= 1, defined over the
    /// base, and certified irreducible by [`Poly::is_irreducible`].
    pub fn extension(base: &FieldContext, modulus: &Poly) -> Result<FieldContext> {
        if base.is_extension() {
            return Err(AhError::BadModulus(
                "extensions of extensions are not supported".into(),
            ));
        }
        if modulus.context() != base {
            return Err(AhError::MixedContexts);
        }
        if modulus.degree() < 1 {
            return Err(AhError::BadModulus("modulus must be non-constant".into()));
        }
        if !modulus.is_monic() {
            return Err(AhError::BadModulus("modulus must be monic".into()));
        }
        match modulus.is_irreducible()? {
            crate::poly::Primality::Prime => {}
            crate::poly::Primality::Composite(w) => {
                return Err(AhError::BadModulus(format!(
                    "modulus is divisible by {}",
                    w
                )));
            }
            crate::poly::Primality::Unknown => {
                return Err(AhError::BadModulus(
                    "modulus irreducibility could not be certified".into(),
                ));
            }
        }
        Ok(FieldContext(Arc::new(FieldKind::Extension {
            base: base.clone(),
            modulus: modulus.clone(),
        })))
    }

    /// Field characteristic; 0 for the rationals and their extensions.
    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField(p) => *p,
            FieldKind::Extension { base, .. } => base.characteristic(),
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(&*self.0, FieldKind::Extension { .. })
    }

    /// Base field of an extension; `self` otherwise.
    pub fn base(&self) -> &FieldContext {
        match &*self.0 {
            FieldKind::Extension { base, .. } => base,
            _ => self,
        }
    }

    /// Modulus of an extension context.
    pub fn modulus(&self) -> Option<&Poly> {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<BigUint> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::PrimeField(p) => Some(BigUint::from(*p)),
            FieldKind::Extension { base, modulus } => {
                let b = base.size()?;
                Some(b.pow(modulus.degree() as u32))
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All field elements in a fixed deterministic order; `None` when the
    /// field is infinite. Callers are responsible for size guards.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match &*self.0 {
            FieldKind::Rationals => None,
            FieldKind::PrimeField(p) => Some(
                (0..*p)
                    .map(|v| Scalar {
                        ctx: self.clone(),
                        repr: ScalarRepr::Mod(v),
                    })
                    .collect(),
            ),
            FieldKind::Extension { base, modulus } => {
                let base_elems = base.elements()?;
                let d = modulus.degree() as usize;
                let mut out = Vec::new();
                let mut idx = vec![0usize; d];
                loop {
                    let coeffs: Vec<Scalar> =
                        idx.iter().map(|&i| base_elems[i].clone()).collect();
                    let p = Poly::from_coeffs(base, coeffs);
                    out.push(Scalar {
                        ctx: self.clone(),
                        repr: ScalarRepr::Ext(p),
                    });
                    let mut pos = 0;
                    loop {
                        if pos == d {
                            return Some(out);
                        }
                        idx[pos] += 1;
                        if idx[pos] < base_elems.len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                }
            }
        }
    }

    /// Parse the CLI field descriptor `q` or `fp:<p>`.
    pub fn parse_spec(s: &str) -> Result<FieldContext> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldContext::rationals());
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| AhError::ParseError(format!("bad prime in field spec {s:?}")))?;
            return FieldContext::prime_field(p);
        }
        Err(AhError::ParseError(format!(
            "unknown field spec {s:?}; expected q or fp:<p>"
        )))
    }

    /// Descriptor accepted by [`FieldContext::parse_spec`]. Extensions have
    /// no CLI descriptor and are rendered from their modulus.
    pub fn spec_string(&self) -> String {
        match &*self.0 {
            FieldKind::Rationals => "q".into(),
            FieldKind::PrimeField(p) => format!("fp:{p}"),
            FieldKind::Extension { base, modulus } => {
                format!("{}[t]/({})", base.spec_string(), modulus.display_var('t'))
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self)
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::PrimeField(p) => write!(f, "F_{p}"),
            FieldKind::Extension { base, modulus } => {
                write!(f, "{}[t]/({})", base, modulus.display_var('t'))
            }
        }
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Clone, Debug, PartialEq)]
enum ScalarRepr {
    Rat(BigRational),
    Mod(u64),
    /// Residue polynomial over the base field, degree below the modulus.
    Ext(Poly),
}

/// One exact field element.
#[derive(Clone, Debug, PartialEq)]
pub struct Scalar {
    ctx: FieldContext,
    repr: ScalarRepr,
}

impl Eq for Scalar {}

/// Selector for [`Scalar::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn zero(ctx: &FieldContext) -> Scalar {
        Scalar::from_i64(ctx, 0)
    }

    pub fn one(ctx: &FieldContext) -> Scalar {
        Scalar::from_i64(ctx, 1)
    }

    pub fn from_i64(ctx: &FieldContext, v: i64) -> Scalar {
        Scalar::from_bigint(ctx, &BigInt::from(v))
    }

    pub fn from_u64(ctx: &FieldContext, v: u64) -> Scalar {
        Scalar::from_bigint(ctx, &BigInt::from(v))
    }

    /// Image of an integer under the canonical map Z -> F.
    pub fn from_bigint(ctx: &FieldContext, v: &BigInt) -> Scalar {
        let repr = match &*ctx.0 {
            FieldKind::Rationals => ScalarRepr::Rat(BigRational::from_integer(v.clone())),
            FieldKind::PrimeField(p) => ScalarRepr::Mod(bigint_mod_u64(v, *p)),
            FieldKind::Extension { base, .. } => {
                let c = Scalar::from_bigint(base, v);
                ScalarRepr::Ext(Poly::constant(c))
            }
        };
        Scalar { ctx: ctx.clone(), repr }
    }

    pub fn from_biguint(ctx: &FieldContext, v: &BigUint) -> Scalar {
        Scalar::from_bigint(ctx, &BigInt::from_biguint(Sign::Plus, v.clone()))
    }

    /// Rational a/b mapped into the field (b must be invertible).
    pub fn from_ratio(ctx: &FieldContext, a: i64, b: i64) -> Result<Scalar> {
        let num = Scalar::from_i64(ctx, a);
        let den = Scalar::from_i64(ctx, b);
        num.try_div(&den)
    }

    /// Element of an extension field from a residue polynomial over the
    /// base (reduced modulo the defining modulus).
    pub fn from_residue(ctx: &FieldContext, residue: &Poly) -> Result<Scalar> {
        match &*ctx.0 {
            FieldKind::Extension { base, modulus } => {
                if residue.context() != base {
                    return Err(AhError::MixedContexts);
                }
                let (_, r) = residue.divrem(modulus)?;
                Ok(Scalar {
                    ctx: ctx.clone(),
                    repr: ScalarRepr::Ext(r),
                })
            }
            _ => Err(AhError::BadModulus("not an extension context".into())),
        }
    }

    /// Residue polynomial of an extension element.
    pub fn residue(&self) -> Option<&Poly> {
        match &self.repr {
            ScalarRepr::Ext(p) => Some(p),
            _ => None,
        }
    }

    /// Underlying reduced rational for elements of Q.
    pub fn rational(&self) -> Option<&BigRational> {
        match &self.repr {
            ScalarRepr::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Canonical residue in `0..p` for prime-field elements.
    pub fn residue_u64(&self) -> Option<u64> {
        match &self.repr {
            ScalarRepr::Mod(v) => Some(*v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            ScalarRepr::Rat(r) => r.is_zero(),
            ScalarRepr::Mod(v) => *v == 0,
            ScalarRepr::Ext(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            ScalarRepr::Rat(r) => r.is_one(),
            ScalarRepr::Mod(v) => *v == 1,
            ScalarRepr::Ext(p) => p.is_one(),
        }
    }

    /// Checked arithmetic entry point: reports [`AhError::MixedContexts`]
    /// and [`AhError::DivisionByZero`] instead of panicking.
    pub fn arith(&self, op: ArithOp, rhs: &Scalar) -> Result<Scalar> {
        if self.ctx != rhs.ctx {
            return Err(AhError::MixedContexts);
        }
        match op {
            ArithOp::Add => Ok(self.add_raw(rhs)),
            ArithOp::Sub => Ok(self.add_raw(&rhs.neg_raw())),
            ArithOp::Mul => Ok(self.mul_raw(rhs)),
            ArithOp::Div => Ok(self.mul_raw(&rhs.inv()?)),
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.ctx != rhs.ctx {
            return Err(AhError::MixedContexts);
        }
        Ok(self.mul_raw(&rhs.inv()?))
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(AhError::DivisionByZero);
        }
        let repr = match &self.repr {
            ScalarRepr::Rat(r) => ScalarRepr::Rat(r.recip()),
            ScalarRepr::Mod(v) => {
                let p = self.ctx.characteristic();
                ScalarRepr::Mod(mod_inverse(*v, p))
            }
            ScalarRepr::Ext(poly) => {
                let modulus = self.ctx.modulus().expect("extension context");
                let (g, u, _) = poly.ext_gcd(modulus)?;
                // g is a nonzero constant: modulus is prime and poly != 0.
                let c = g.coeff(0).inv()?;
                let (_, r) = u.scale(&c).divrem(modulus)?;
                ScalarRepr::Ext(r)
            }
        };
        Ok(Scalar { ctx: self.ctx.clone(), repr })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        acc
    }

    /// `a^p == a`, the Fermat/Frobenius fixed-point test.
    /// Requires positive characteristic.
    pub fn frobenius_fixed(&self) -> Result<bool> {
        let p = self.ctx.characteristic();
        if p == 0 {
            return Err(AhError::CharacteristicZero);
        }
        Ok(self.pow(p) == *self)
    }

    /// Embed into `target`: identity on the same context, constant
    /// embedding into an extension of this scalar's field.
    pub fn lift_to(&self, target: &FieldContext) -> Result<Scalar> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        if let FieldKind::Extension { base, .. } = &*target.0 {
            if base == &self.ctx {
                return Ok(Scalar {
                    ctx: target.clone(),
                    repr: ScalarRepr::Ext(Poly::constant(self.clone())),
                });
            }
        }
        Err(AhError::MixedContexts)
    }

    /// Deterministic total order on a common context, used for canonical
    /// sorting of bases and factor lists.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (&self.repr, &other.repr) {
            (ScalarRepr::Rat(a), ScalarRepr::Rat(b)) => a.cmp(b),
            (ScalarRepr::Mod(a), ScalarRepr::Mod(b)) => a.cmp(b),
            (ScalarRepr::Ext(a), ScalarRepr::Ext(b)) => a.canonical_cmp(b),
            _ => Ordering::Equal,
        }
    }

    /// Small pseudo-random element: uniform over finite fields, a small
    /// fraction over Q. Deterministic given the RNG state.
    pub fn sample<R: Rng>(ctx: &FieldContext, rng: &mut R) -> Scalar {
        match &*ctx.0 {
            FieldKind::Rationals => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=2);
                Scalar::from_ratio(ctx, num, den).expect("nonzero denominator")
            }
            FieldKind::PrimeField(p) => Scalar {
                ctx: ctx.clone(),
                repr: ScalarRepr::Mod(rng.gen_range(0..*p)),
            },
            FieldKind::Extension { base, modulus } => {
                let d = modulus.degree() as usize;
                let coeffs: Vec<Scalar> =
                    (0..d).map(|_| Scalar::sample(base, rng)).collect();
                Scalar {
                    ctx: ctx.clone(),
                    repr: ScalarRepr::Ext(Poly::from_coeffs(base, coeffs)),
                }
            }
        }
    }

    /// Parse a scalar literal: integers and `a/b` fractions over Q and
    /// F_p, polynomials in `t` over an extension field.
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(AhError::ParseError("empty scalar literal".into()));
        }
        match &*ctx.0 {
            FieldKind::Rationals | FieldKind::PrimeField(_) => {
                if let Some((a, b)) = s.split_once('/') {
                    let num = parse_bigint(a)?;
                    let den = parse_bigint(b)?;
                    let num = Scalar::from_bigint(ctx, &num);
                    let den = Scalar::from_bigint(ctx, &den);
                    num.try_div(&den)
                } else {
                    Ok(Scalar::from_bigint(ctx, &parse_bigint(s)?))
                }
            }
            FieldKind::Extension { base, .. } => {
                let p = Poly::parse_var(base, s, 't')?;
                Scalar::from_residue(ctx, &p)
            }
        }
    }

    fn add_raw(&self, rhs: &Scalar) -> Scalar {
        let repr = match (&self.repr, &rhs.repr) {
            (ScalarRepr::Rat(a), ScalarRepr::Rat(b)) => ScalarRepr::Rat(a + b),
            (ScalarRepr::Mod(a), ScalarRepr::Mod(b)) => {
                let p = self.ctx.characteristic() as u128;
                ScalarRepr::Mod(((*a as u128 + *b as u128) % p) as u64)
            }
            (ScalarRepr::Ext(a), ScalarRepr::Ext(b)) => ScalarRepr::Ext(a + b),
            _ => unreachable!("contexts already checked"),
        };
        Scalar { ctx: self.ctx.clone(), repr }
    }

    fn mul_raw(&self, rhs: &Scalar) -> Scalar {
        let repr = match (&self.repr, &rhs.repr) {
            (ScalarRepr::Rat(a), ScalarRepr::Rat(b)) => ScalarRepr::Rat(a * b),
            (ScalarRepr::Mod(a), ScalarRepr::Mod(b)) => {
                let p = self.ctx.characteristic() as u128;
                ScalarRepr::Mod(((*a as u128 * *b as u128) % p) as u64)
            }
            (ScalarRepr::Ext(a), ScalarRepr::Ext(b)) => {
                let modulus = self.ctx.modulus().expect("extension context");
                let prod = a * b;
                let (_, r) = prod.divrem(modulus).expect("monic modulus");
                ScalarRepr::Ext(r)
            }
            _ => unreachable!("contexts already checked"),
        };
        Scalar { ctx: self.ctx.clone(), repr }
    }

    fn neg_raw(&self) -> Scalar {
        let repr = match &self.repr {
            ScalarRepr::Rat(a) => ScalarRepr::Rat(-a),
            ScalarRepr::Mod(a) => {
                let p = self.ctx.characteristic();
                ScalarRepr::Mod(if *a == 0 { 0 } else { p - *a })
            }
            ScalarRepr::Ext(a) => ScalarRepr::Ext(-a),
        };
        Scalar { ctx: self.ctx.clone(), repr }
    }

    fn assert_same_ctx(&self, rhs: &Scalar) {
        assert!(
            self.ctx == rhs.ctx,
            "scalar operands belong to different contexts: {} vs {}",
            self.ctx,
            rhs.ctx
        );
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let t = s.trim();
    t.parse::<BigInt>()
        .map_err(|_| AhError::ParseError(format!("bad integer literal {t:?}")))
}

fn bigint_mod_u64(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.to_u64().expect("residue fits u64")
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime and a nonzero");
    (((s0 % p as i128) + p as i128) % p as i128) as u64
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_ctx(rhs);
        self.add_raw(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_ctx(rhs);
        self.add_raw(&rhs.neg_raw())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_ctx(rhs);
        self.mul_raw(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_raw()
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            ScalarRepr::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            ScalarRepr::Mod(v) => write!(f, "{v}"),
            ScalarRepr::Ext(p) => write!(f, "{}", p.display_var('t')),
        }
    }
}

impl Scalar {
    /// True when the printed form starts with a minus sign. Only negative
    /// rationals do; finite-field residues and extension elements never do.
    pub(crate) fn is_display_negative(&self) -> bool {
        match &self.repr {
            ScalarRepr::Rat(r) => r.is_negative(),
            _ => false,
        }
    }

    /// Printed form of the negation; used by polynomial displays to render
    /// `a - 2*x` instead of `a + -2*x`.
    pub(crate) fn display_abs(&self) -> String {
        if self.is_display_negative() {
            format!("{}", self.neg_raw())
        } else {
            format!("{self}")
        }
    }
}
