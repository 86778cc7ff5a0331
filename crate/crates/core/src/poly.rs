//! Dense univariate polynomials over a [`FieldContext`].
//!
//! Exports:
//! - [`Poly`]: coefficient vector without trailing zeros; `degree()` of the
//!   zero polynomial is the -1 sentinel.
//! - [`Primality`]: outcome of the irreducibility test.
//! - [`Factorization`]: leading coefficient times a multiset of monic
//!   prime factors.
//!
//! Arithmetic is exact. Derivatives come in two flavors: the iterated
//! formal derivative, and the p-adic derivative in characteristic p whose
//! value on x^l is the product of digit-wise falling factorials of l in
//! base p applied to x^(l-k).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{AhError, Result};
use crate::scalar::{FieldContext, Scalar};

/// Outcome of [`Poly::is_irreducible`]. `Composite` carries a proper
/// divisor as witness.
#[derive(Clone, Debug, PartialEq)]
pub enum Primality {
    Prime,
    Composite(Poly),
    Unknown,
}

/// Complete factorization: `leading * prod(factors[i].0 ^ factors[i].1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub leading: Scalar,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn product(&self, ctx: &FieldContext) -> Poly {
        let mut acc = Poly::constant(self.leading.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        let _ = ctx;
        acc
    }
}

/// Dense univariate polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    ctx: FieldContext,
    coeffs: Vec<Scalar>,
}

impl Eq for Poly {}

/// Guard for exhaustive monic-divisor enumeration: |F|^d candidates.
const ENUMERATION_GUARD_BITS: u32 = 22;

impl Poly {
    pub fn zero(ctx: &FieldContext) -> Poly {
        Poly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldContext) -> Poly {
        Poly::constant(Scalar::one(ctx))
    }

    pub fn x(ctx: &FieldContext) -> Poly {
        Poly::monomial(ctx, Scalar::one(ctx), 1)
    }

    pub fn constant(c: Scalar) -> Poly {
        let ctx = c.context().clone();
        Poly::from_coeffs(&ctx, vec![c])
    }

    pub fn monomial(ctx: &FieldContext, c: Scalar, deg: usize) -> Poly {
        let mut coeffs = vec![Scalar::zero(ctx); deg];
        coeffs.push(c);
        Poly::from_coeffs(ctx, coeffs)
    }

    /// Build from `coeffs[i]` = coefficient of x^i, stripping trailing
    /// zeros. Panics when a coefficient lives in a different context.
    pub fn from_coeffs(ctx: &FieldContext, mut coeffs: Vec<Scalar>) -> Poly {
        for c in &coeffs {
            assert!(c.context() == ctx, "coefficient context mismatch");
        }
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { ctx: ctx.clone(), coeffs }
    }

    /// Convenience for tests and builders: integer coefficients.
    pub fn from_i64_coeffs(ctx: &FieldContext, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(
            ctx,
            coeffs.iter().map(|&v| Scalar::from_i64(ctx, v)).collect(),
        )
    }

    pub fn context(&self) -> &FieldContext {
        &self.ctx
    }

    /// Degree with the usual -1 sentinel for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&self.ctx))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(Scalar::is_one)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly::from_coeffs(&self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul_x_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(&self.ctx); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Monic normalization: returns (leading coefficient, self/leading).
    pub fn monic(&self) -> (Scalar, Poly) {
        match self.leading_coeff() {
            None => (Scalar::one(&self.ctx), self.clone()),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                (l.clone(), self.scale(&inv))
            }
        }
    }

    /// Quotient and remainder; the divisor must be nonzero and share the
    /// context.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        if self.ctx != *divisor.context() {
            return Err(AhError::MixedContexts);
        }
        if divisor.is_zero() {
            return Err(AhError::DivisionByZero);
        }
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return Ok((Poly::zero(&self.ctx), self.clone()));
        }
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(&self.ctx); self.coeffs.len() - dd + 1];
        for i in (dd - 1..self.coeffs.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            let shift = i + 1 - dd;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &q * dc;
                rem[shift + j] = &rem[shift + j] - &t;
            }
            quot[shift] = q;
        }
        Ok((
            Poly::from_coeffs(&self.ctx, quot),
            Poly::from_coeffs(&self.ctx, rem),
        ))
    }

    /// True when `divisor` divides self exactly.
    pub fn divisible_by(&self, divisor: &Poly) -> Result<bool> {
        Ok(self.divrem(divisor)?.1.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic().1)
    }

    /// Extended Euclid: returns monic g and (u, v) with u*self + v*other = g.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let snew = &s0 - &(&q * &s1);
            let tnew = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, snew);
            t0 = std::mem::replace(&mut t1, tnew);
        }
        let (lead, g) = r0.monic();
        if g.is_zero() {
            return Ok((g, s0, t0));
        }
        let linv = lead.inv()?;
        Ok((g, s0.scale(&linv), t0.scale(&linv)))
    }

    /// Inverse of self modulo `m` (requires gcd(self, m) constant).
    pub fn inverse_mod(&self, m: &Poly) -> Result<Poly> {
        let (_, r) = self.divrem(m)?;
        if r.is_zero() {
            return Err(AhError::DivisionByZero);
        }
        let (g, u, _) = r.ext_gcd(m)?;
        if g.degree() != 0 {
            return Err(AhError::DivisionByZero);
        }
        let (_, out) = u.divrem(m)?;
        Ok(out)
    }

    /// One formal derivative step.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ctx);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| &Scalar::from_u64(&self.ctx, i as u64) * c)
            .collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }

    /// k-th iterated formal derivative.
    pub fn derivative_k(&self, k: u32) -> Poly {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.derivative();
        }
        out
    }

    /// k-th p-adic derivative in characteristic p: on x^l the coefficient
    /// is the product over base-p digits of the falling factorials
    /// l_i (l_i - 1) ... (l_i - k_i + 1), and the exponent drops to l - k.
    pub fn p_adic_derivative(&self, k: u64) -> Result<Poly> {
        let p = self.ctx.characteristic();
        if p == 0 {
            return Err(AhError::CharacteristicZero);
        }
        if k == 0 {
            return Ok(self.clone());
        }
        let mut out = vec![];
        let mut acc = Poly::zero(&self.ctx);
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let Some(factor) = digit_falling_product(l as u64, k, p) else {
                continue;
            };
            if factor == 0 {
                continue;
            }
            let s = &Scalar::from_u64(&self.ctx, factor) * c;
            out.push((l as u64 - k, s));
        }
        for (deg, s) in out {
            acc = &acc + &Poly::monomial(&self.ctx, s, deg as usize);
        }
        Ok(acc)
    }

    /// Evaluate at `a`, which may live in this context or in a one-level
    /// extension of it.
    pub fn evaluate(&self, a: &Scalar) -> Result<Scalar> {
        let target = a.context();
        let mut acc = Scalar::zero(target);
        for c in self.coeffs.iter().rev() {
            let lifted = c.lift_to(target)?;
            acc = &(&acc * a) + &lifted;
        }
        Ok(acc)
    }

    /// Coefficients of the expansion in powers of (x - lambda):
    /// `self = sum_t out[t] * (x - lambda)^t`. Valid in any characteristic;
    /// in char 0 `out[t] = f^(t)(lambda)/t!` and in char p it equals the
    /// p-adic `f^[t](lambda)` divided by the product of digit factorials.
    pub fn expand_at(&self, lambda: &Scalar) -> Vec<Scalar> {
        assert!(lambda.context() == &self.ctx, "lambda context mismatch");
        let shift = Poly::from_coeffs(&self.ctx, vec![-lambda, Scalar::one(&self.ctx)]);
        let mut out = Vec::with_capacity(self.coeffs.len());
        let mut r = self.clone();
        while !r.is_zero() {
            let (q, rem) = r.divrem(&shift).expect("linear divisor");
            out.push(rem.coeff(0));
            r = q;
        }
        out
    }

    /// True when every exponent with nonzero coefficient is a multiple of
    /// the characteristic; requires char p > 0.
    pub fn in_xp_subring(&self) -> Result<bool> {
        let p = self.ctx.characteristic();
        if p == 0 {
            return Err(AhError::CharacteristicZero);
        }
        Ok(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || (i as u64) % p == 0))
    }

    /// Irreducibility over the coefficient field.
    ///
    /// Exact over finite fields by exhaustive trial division against all
    /// monic polynomials of degree at most deg/2 (guarded). Over Q the
    /// rational-root test is exact through degree 3; higher degrees answer
    /// `Unknown` unless a rational root happens to exist. Degree-1
    /// polynomials are always prime; constants are rejected.
    pub fn is_irreducible(&self) -> Result<Primality> {
        if self.degree() < 1 {
            return Err(AhError::ConstantPolynomial);
        }
        if self.degree() == 1 {
            return Ok(Primality::Prime);
        }
        let half = (self.coeffs.len() - 1) / 2;
        if self.ctx.is_finite() {
            if !enumeration_feasible(&self.ctx, half as u32) {
                return Ok(Primality::Unknown);
            }
            let (_, m) = self.monic();
            for d in 1..=half {
                let mut iter = MonicIter::new(&self.ctx, d);
                while let Some(g) = iter.next_poly() {
                    if m.divisible_by(&g)? {
                        return Ok(Primality::Composite(g));
                    }
                }
            }
            return Ok(Primality::Prime);
        }
        if self.ctx.is_extension() {
            return Ok(Primality::Unknown);
        }
        // Rationals: rational-root search.
        match self.rational_root()? {
            Some(r) => {
                let ctx = &self.ctx;
                let w = Poly::from_coeffs(ctx, vec![-&r, Scalar::one(ctx)]);
                Ok(Primality::Composite(w))
            }
            None if self.degree() <= 3 => Ok(Primality::Prime),
            None => Ok(Primality::Unknown),
        }
    }

    /// One rational root of a polynomial over Q, if the bounded divisor
    /// search finds one. `None` is only conclusive through degree 3.
    fn rational_root(&self) -> Result<Option<Scalar>> {
        let ctx = &self.ctx;
        // Clear denominators to an integer polynomial.
        let mut lcm = BigInt::from(1);
        for c in &self.coeffs {
            let den = c.rational().expect("rational context").denom().clone();
            let g = num_integer::Integer::gcd(&lcm, &den);
            lcm = &lcm / g * den;
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let r = c.rational().unwrap();
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        if ints[0].is_zero() {
            return Ok(Some(Scalar::zero(ctx)));
        }
        let a0 = ints[0].abs();
        let an = ints.last().unwrap().abs();
        let (Some(a0), Some(an)) = (a0.to_u64(), an.to_u64()) else {
            return Ok(None);
        };
        const DIVISOR_SEARCH_CAP: u64 = 1_000_000_000_000;
        if a0 > DIVISOR_SEARCH_CAP || an > DIVISOR_SEARCH_CAP {
            return Ok(None);
        }
        let nums = divisors_u64(a0);
        let dens = divisors_u64(an);
        for &pnum in &nums {
            for &pden in &dens {
                for sign in [1i64, -1] {
                    let cand = Scalar::from_ratio(
                        ctx,
                        sign * pnum as i64,
                        pden as i64,
                    )?;
                    if self.evaluate(&cand)?.is_zero() {
                        return Ok(Some(cand));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Complete factorization into monic primes times the leading
    /// coefficient. Exhaustive over finite fields; over Q via repeated
    /// rational-root extraction on the squarefree part, refusing inputs
    /// that would leave an unresolved factor of degree >= 4.
    pub fn factor_into_primes(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(AhError::ZeroElement);
        }
        let (leading, m) = self.monic();
        if m.degree() == 0 {
            return Ok(Factorization { leading, factors: vec![] });
        }
        let mut factors: Vec<(Poly, u32)> = if self.ctx.is_finite() {
            self.factor_finite(&m)?
        } else if self.ctx.is_extension() {
            if m.degree() == 1 {
                vec![(m.clone(), 1)]
            } else {
                return Err(AhError::FactorizationOutOfScope);
            }
        } else {
            self.factor_rational(&m)?
        };
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let result = Factorization { leading, factors };
        debug_assert_eq!(result.product(&self.ctx), *self);
        Ok(result)
    }

    fn factor_finite(&self, m: &Poly) -> Result<Vec<(Poly, u32)>> {
        let half = (m.coeffs.len() - 1) / 2;
        if !enumeration_feasible(&self.ctx, half as u32) {
            return Err(AhError::FactorizationOutOfScope);
        }
        let mut rem = m.clone();
        let mut out = Vec::new();
        let mut d = 1usize;
        while 2 * (d as i64) <= rem.degree() {
            let mut iter = MonicIter::new(&self.ctx, d);
            while let Some(g) = iter.next_poly() {
                let mut mult = 0u32;
                while rem.divisible_by(&g)? {
                    rem = rem.divrem(&g)?.0;
                    mult += 1;
                }
                if mult > 0 {
                    out.push((g, mult));
                    if 2 * (d as i64) > rem.degree() {
                        break;
                    }
                }
            }
            d += 1;
        }
        if rem.degree() >= 1 {
            out.push((rem, 1));
        }
        Ok(out)
    }

    fn factor_rational(&self, m: &Poly) -> Result<Vec<(Poly, u32)>> {
        // Distinct primes live in the squarefree part m / gcd(m, m').
        let sf = m.divrem(&m.gcd(&m.derivative())?)?.0;
        let mut primes: Vec<Poly> = Vec::new();
        let mut rest = sf;
        loop {
            if rest.degree() < 1 {
                break;
            }
            match rest.rational_root()? {
                Some(r) => {
                    let lin = Poly::from_coeffs(
                        &self.ctx,
                        vec![-&r, Scalar::one(&self.ctx)],
                    );
                    rest = rest.divrem(&lin)?.0;
                    if !primes.contains(&lin) {
                        primes.push(lin);
                    }
                }
                None if rest.degree() <= 3 => {
                    let p = rest.monic().1;
                    if !primes.contains(&p) {
                        primes.push(p);
                    }
                    break;
                }
                None => return Err(AhError::FactorizationOutOfScope),
            }
        }
        let mut out = Vec::new();
        for p in primes {
            let mut mult = 0u32;
            let mut r = m.clone();
            while r.divisible_by(&p)? {
                r = r.divrem(&p)?.0;
                mult += 1;
            }
            out.push((p, mult));
        }
        // The multiplicities must reconstruct m exactly.
        let prod = out
            .iter()
            .fold(Poly::one(&self.ctx), |acc, (f, e)| &acc * &f.pow(*e));
        if &prod != m {
            return Err(AhError::FactorizationOutOfScope);
        }
        Ok(out)
    }

    /// Deterministic total order used for canonical factor lists.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].canonical_cmp(&other.coeffs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Parse a polynomial in the variable `x`.
    pub fn parse(ctx: &FieldContext, s: &str) -> Result<Poly> {
        Poly::parse_var(ctx, s, 'x')
    }

    /// Parse a polynomial in an arbitrary single-letter variable.
    /// Syntax: `+`/`-` separated terms, each a `*` separated product of
    /// integer or `a/b` literals and `v`/`v^k` powers, e.g.
    /// `x^2 - 1/2*x + 7`.
    pub fn parse_var(ctx: &FieldContext, s: &str, var: char) -> Result<Poly> {
        let mut out = Poly::zero(ctx);
        for (negative, chunk) in split_signed_terms(s)? {
            let mut coeff = Scalar::one(ctx);
            let mut exp = 0usize;
            for factor in chunk.split('*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(AhError::ParseError(format!(
                        "empty factor in term {chunk:?}"
                    )));
                }
                if let Some(rest) = f.strip_prefix(var) {
                    let rest = rest.trim();
                    if rest.is_empty() {
                        exp += 1;
                    } else if let Some(e) = rest.strip_prefix('^') {
                        let e: usize = e.trim().parse().map_err(|_| {
                            AhError::ParseError(format!("bad exponent in {f:?}"))
                        })?;
                        exp += e;
                    } else {
                        return Err(AhError::ParseError(format!(
                            "unexpected characters in factor {f:?}"
                        )));
                    }
                } else {
                    coeff = &coeff * &Scalar::parse(ctx, f)?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out = &out + &Poly::monomial(ctx, coeff, exp);
        }
        Ok(out)
    }

    /// Render with an arbitrary variable letter; [`fmt::Display`] uses `x`.
    pub fn display_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_display_negative();
            if first {
                if neg {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.display_abs();
            let var_part = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                push_coeff(&mut out, &abs);
            } else if abs == "1" {
                out.push_str(&var_part);
            } else {
                push_coeff(&mut out, &abs);
                out.push('*');
                out.push_str(&var_part);
            }
        }
        out
    }
}

/// Wrap multi-term coefficient strings (extension scalars) in parens.
pub(crate) fn push_coeff(out: &mut String, abs: &str) {
    if abs.contains(' ') {
        out.push('(');
        out.push_str(abs);
        out.push(')');
    } else {
        out.push_str(abs);
    }
}

pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut negative = false;
    let mut sign_explicit = false;
    for ch in s.chars() {
        match ch {
            '+' | '-' => {
                if cur.trim().is_empty() {
                    if sign_explicit {
                        return Err(AhError::ParseError(
                            "consecutive signs in polynomial".into(),
                        ));
                    }
                } else {
                    terms.push((negative, std::mem::take(&mut cur)));
                }
                negative = ch == '-';
                sign_explicit = true;
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    cur.push(' ');
                }
            }
            c => cur.push(c),
        }
    }
    if cur.trim().is_empty() {
        if sign_explicit || terms.is_empty() {
            return Err(AhError::ParseError(
                "empty polynomial or dangling sign".into(),
            ));
        }
    } else {
        terms.push((negative, cur));
    }
    Ok(terms)
}

/// Product over base-p digits of falling factorials; `None` when some
/// digit of k exceeds the digit of l (the term vanishes and the exponent
/// l - k may be negative).
fn digit_falling_product(l: u64, k: u64, p: u64) -> Option<u64> {
    let mut l = l;
    let mut kk = k;
    let mut acc: u64 = 1;
    while l > 0 || kk > 0 {
        let li = l % p;
        let ki = kk % p;
        if ki > li {
            return None;
        }
        for step in 0..ki {
            acc = (acc as u128 * ((li - step) as u128) % p as u128) as u64;
        }
        l /= p;
        kk /= p;
    }
    Some(acc)
}

fn enumeration_feasible(ctx: &FieldContext, exp: u32) -> bool {
    match ctx.size() {
        None => false,
        Some(sz) => sz.pow(exp.max(1)) <= num_bigint::BigUint::from(1u32) << ENUMERATION_GUARD_BITS,
    }
}

/// Odometer over all monic polynomials of a fixed degree over a finite
/// field, in a deterministic order (constant coefficient cycles fastest).
pub(crate) struct MonicIter {
    ctx: FieldContext,
    elems: Vec<Scalar>,
    idx: Vec<usize>,
    degree: usize,
    done: bool,
}

impl MonicIter {
    pub(crate) fn new(ctx: &FieldContext, degree: usize) -> MonicIter {
        let elems = ctx.elements().expect("finite field required");
        MonicIter {
            ctx: ctx.clone(),
            elems,
            idx: vec![0; degree],
            degree,
            done: false,
        }
    }

    pub(crate) fn next_poly(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let mut coeffs: Vec<Scalar> = self
            .idx
            .iter()
            .map(|&i| self.elems[i].clone())
            .collect();
        coeffs.push(Scalar::one(&self.ctx));
        let poly = Poly::from_coeffs(&self.ctx, coeffs);
        // advance odometer
        let mut pos = 0;
        loop {
            if pos == self.degree {
                self.done = true;
                break;
            }
            self.idx[pos] += 1;
            if self.idx[pos] < self.elems.len() {
                break;
            }
            self.idx[pos] = 0;
            pos += 1;
        }
        Some(poly)
    }
}

fn divisors_u64(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert!(self.ctx == *rhs.context(), "polynomial context mismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect();
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(self.ctx == *rhs.context(), "polynomial context mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut coeffs =
            vec![Scalar::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.ctx, coeffs)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var('x'))
    }
}
