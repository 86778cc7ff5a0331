//! Elements of the algebra A_h and their exact arithmetic.
//!
//! A_h is generated by x and y over a field F subject to the single
//! relation y*x = x*y + h(x), where h is a fixed nonzero polynomial.
//! Every element has a unique normal form as a finite sum of monomials
//! x^m * y^n, and [`AhElement`] stores exactly those coefficients.
//!
//! Exports:
//! - [`AhContext`]: the pair (field, h) plus the derivation delta(r) = r'h.
//! - [`AhElement`]: normal form arithmetic. Multiplication uses the closed
//!   reordering formula y^n r = sum_j C(n,j) delta^j(r) y^(n-j); single
//!   step rewriting with y*x -> x*y + h exists in the test suite as an
//!   independent oracle.
//! - [`AhContext::make_z_p`]: the central element
//!   y(y + h')(y + 2h')...(y + (p-1)h') in characteristic p, cross checked
//!   against y^p - (delta^p(x)/h) y and against centrality itself.
//! - [`AhElement::left_divide`] / [`AhElement::right_divide`]: exact
//!   one-sided division when it exists, used for normality testing.
//! - [`AhContext::center_bounded`] / [`AhContext::centralizer_bounded`]:
//!   kernel computations over a monomial window.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{AhError, Result};
use crate::matrix::ScalarMat;
use crate::poly::{push_coeff, split_signed_terms, Poly};
use crate::scalar::{FieldContext, Scalar};

/// Largest characteristic for which the z_p product is enumerated.
const ZP_PRIME_GUARD: u64 = 256;

struct AhInner {
    field: FieldContext,
    h: Poly,
}

/// The algebra A_h: a field together with the defining polynomial h.
/// Cloning is cheap; equality means same field and same h.
#[derive(Clone)]
pub struct AhContext {
    inner: Arc<AhInner>,
}

impl PartialEq for AhContext {
    fn eq(&self, other: &AhContext) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field && self.inner.h == other.inner.h)
    }
}

impl Eq for AhContext {}

impl fmt::Debug for AhContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AhContext(h = {} over {})", self.inner.h, self.inner.field)
    }
}

impl fmt::Display for AhContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_h over {} with h = {}", self.inner.field, self.inner.h)
    }
}

impl AhContext {
    /// Build the algebra for a nonzero h.
    pub fn new(h: Poly) -> Result<AhContext> {
        if h.is_zero() {
            return Err(AhError::ZeroH);
        }
        let field = h.context().clone();
        Ok(AhContext { inner: Arc::new(AhInner { field, h }) })
    }

    pub fn field(&self) -> &FieldContext {
        &self.inner.field
    }

    pub fn h(&self) -> &Poly {
        &self.inner.h
    }

    /// The derivation delta(r) = r' * h on F[x].
    pub fn delta(&self, r: &Poly) -> Poly {
        assert!(r.context() == self.field(), "polynomial context mismatch");
        &r.derivative() * self.h()
    }

    /// k-fold application of delta.
    pub fn delta_k(&self, r: &Poly, k: u32) -> Poly {
        let mut out = r.clone();
        for _ in 0..k {
            out = self.delta(&out);
        }
        out
    }

    /// The polynomial w = delta^p(x) / h in characteristic p. The quotient
    /// is exact and lies in the subring F[x^p]; both facts are verified and
    /// violations are reported rather than silently returned.
    pub fn delta_p_x_over_h(&self) -> Result<Poly> {
        let p = self.field().characteristic();
        if p == 0 {
            return Err(AhError::CharacteristicZero);
        }
        if p > ZP_PRIME_GUARD {
            return Err(AhError::SizeGuard(format!(
                "delta^p(x)/h only evaluated for p <= {ZP_PRIME_GUARD}, got p = {p}"
            )));
        }
        let dpx = self.delta_k(&Poly::x(self.field()), p as u32);
        let (q, r) = dpx.divrem(self.h())?;
        if !r.is_zero() {
            return Err(AhError::DivisibilityViolated);
        }
        if !q.in_xp_subring()? {
            return Err(AhError::DivisibilityViolated);
        }
        Ok(q)
    }

    /// The central element z_p = y(y + h')(y + 2h')...(y + (p-1)h') in
    /// characteristic p. The ordered product is compared with the closed
    /// form y^p - (delta^p(x)/h) y, and the result is checked to commute
    /// with both generators; any mismatch is an error.
    pub fn make_z_p(&self) -> Result<AhElement> {
        let p = self.field().characteristic();
        if p == 0 {
            return Err(AhError::CharacteristicZero);
        }
        if p > ZP_PRIME_GUARD {
            return Err(AhError::SizeGuard(format!(
                "z_p product only enumerated for p <= {ZP_PRIME_GUARD}, got p = {p}"
            )));
        }
        let hp = self.h().derivative();
        let y = AhElement::y(self);
        let mut product = y.clone();
        for i in 1..p {
            let shift = hp.scale(&Scalar::from_u64(self.field(), i));
            let factor = &y + &AhElement::from_poly(self, &shift);
            product = product.multiply(&factor)?;
        }
        let w = self.delta_p_x_over_h()?;
        let closed = &AhElement::y_pow(self, p as u32)
            - &AhElement::from_poly(self, &w).multiply(&y)?;
        if product != closed {
            return Err(AhError::CenterIdentityViolated);
        }
        let x = AhElement::x(self);
        if !product.commutator(&x)?.is_zero() || !product.commutator(&y)?.is_zero() {
            return Err(AhError::CenterIdentityViolated);
        }
        Ok(product)
    }

    /// Basis of the centralizer of `elem` intersected with the span of the
    /// monomials x^m y^n, m <= x_window, n <= y_window.
    pub fn centralizer_bounded(
        &self,
        elem: &AhElement,
        x_window: u32,
        y_window: u32,
    ) -> Result<Vec<AhElement>> {
        if elem.ctx != *self {
            return Err(AhError::MixedContexts);
        }
        self.window_kernel(x_window, y_window, |u| {
            Ok(vec![elem.commutator(u)?])
        })
    }

    /// Basis of the center of A_h intersected with the same monomial
    /// window: elements commuting with both x and y.
    pub fn center_bounded(&self, x_window: u32, y_window: u32) -> Result<Vec<AhElement>> {
        let x = AhElement::x(self);
        let y = AhElement::y(self);
        self.window_kernel(x_window, y_window, |u| {
            Ok(vec![x.commutator(u)?, y.commutator(u)?])
        })
    }

    fn window_kernel<F>(
        &self,
        x_window: u32,
        y_window: u32,
        mut images: F,
    ) -> Result<Vec<AhElement>>
    where
        F: FnMut(&AhElement) -> Result<Vec<AhElement>>,
    {
        let basis: Vec<(u32, u32)> = (0..=x_window)
            .flat_map(|m| (0..=y_window).map(move |n| (m, n)))
            .collect();
        let mut image_elems = Vec::with_capacity(basis.len());
        let mut support: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for &(m, n) in &basis {
            let u = AhElement::monomial(self, Scalar::one(self.field()), m, n);
            let imgs = images(&u)?;
            for img in &imgs {
                for key in img.terms.keys() {
                    let next = support.len();
                    support.entry(*key).or_insert(next);
                }
            }
            image_elems.push(imgs);
        }
        let per_image = support.len().max(1);
        let n_images = image_elems.first().map_or(0, Vec::len);
        let mut mat = ScalarMat::zeros(
            self.field(),
            per_image * n_images.max(1),
            basis.len(),
        );
        for (col, imgs) in image_elems.iter().enumerate() {
            for (which, img) in imgs.iter().enumerate() {
                for (key, c) in &img.terms {
                    let row = which * per_image + support[key];
                    mat[(row, col)] = c.clone();
                }
            }
        }
        let kernel = mat.kernel_basis();
        let mut out = Vec::new();
        for i in 0..kernel.nrows() {
            let mut elem = AhElement::zero(self);
            for (j, &(m, n)) in basis.iter().enumerate() {
                let c = kernel.row(i)[j].clone();
                if !c.is_zero() {
                    elem.insert_add((m, n), c);
                }
            }
            out.push(elem);
        }
        Ok(out)
    }
}

/// An element of A_h in normal form: a finite sum of c * x^m * y^n terms,
/// keyed by (m, n) with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct AhElement {
    ctx: AhContext,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl AhElement {
    pub fn zero(ctx: &AhContext) -> AhElement {
        AhElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &AhContext) -> AhElement {
        AhElement::monomial(ctx, Scalar::one(ctx.field()), 0, 0)
    }

    pub fn x(ctx: &AhContext) -> AhElement {
        AhElement::monomial(ctx, Scalar::one(ctx.field()), 1, 0)
    }

    pub fn y(ctx: &AhContext) -> AhElement {
        AhElement::monomial(ctx, Scalar::one(ctx.field()), 0, 1)
    }

    pub fn y_pow(ctx: &AhContext, n: u32) -> AhElement {
        AhElement::monomial(ctx, Scalar::one(ctx.field()), 0, n)
    }

    pub fn monomial(ctx: &AhContext, c: Scalar, m: u32, n: u32) -> AhElement {
        let mut e = AhElement::zero(ctx);
        if !c.is_zero() {
            assert!(c.context() == ctx.field(), "coefficient context mismatch");
            e.terms.insert((m, n), c);
        }
        e
    }

    /// Embed a polynomial in x as an element.
    pub fn from_poly(ctx: &AhContext, p: &Poly) -> AhElement {
        assert!(p.context() == ctx.field(), "polynomial context mismatch");
        let mut e = AhElement::zero(ctx);
        for (m, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                e.terms.insert((m as u32, 0), c.clone());
            }
        }
        e
    }

    pub fn scalar(ctx: &AhContext, c: Scalar) -> AhElement {
        AhElement::monomial(ctx, c, 0, 0)
    }

    pub fn context(&self) -> &AhContext {
        &self.ctx
    }

    /// Sorted view of the normal form coefficients, keyed by (m, n).
    pub fn terms(&self) -> &BTreeMap<(u32, u32), Scalar> {
        &self.terms
    }

    pub fn coeff(&self, m: u32, n: u32) -> Scalar {
        self.terms
            .get(&(m, n))
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.ctx.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in y, with -1 for the zero element.
    pub fn degree_y(&self) -> i64 {
        self.terms.keys().map(|&(_, n)| n as i64).max().unwrap_or(-1)
    }

    /// Degree in x, with -1 for the zero element.
    pub fn degree_x(&self) -> i64 {
        self.terms.keys().map(|&(m, _)| m as i64).max().unwrap_or(-1)
    }

    /// Coefficients of powers of y, as polynomials in x. Index n holds the
    /// coefficient of y^n; the vector has length degree_y + 1.
    pub fn y_coeffs(&self) -> Vec<Poly> {
        let deg = self.degree_y();
        if deg < 0 {
            return Vec::new();
        }
        let mut out: Vec<Vec<Scalar>> = vec![Vec::new(); deg as usize + 1];
        for (&(m, n), c) in &self.terms {
            let row = &mut out[n as usize];
            if row.len() <= m as usize {
                row.resize(m as usize + 1, Scalar::zero(self.ctx.field()));
            }
            row[m as usize] = c.clone();
        }
        out.into_iter()
            .map(|cs| Poly::from_coeffs(self.ctx.field(), cs))
            .collect()
    }

    fn insert_add(&mut self, key: (u32, u32), c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> AhElement {
        assert!(c.context() == self.ctx.field(), "coefficient context mismatch");
        let mut out = AhElement::zero(&self.ctx);
        if c.is_zero() {
            return out;
        }
        for (key, v) in &self.terms {
            out.terms.insert(*key, v * c);
        }
        out
    }

    /// Product in normal form. The reordering of y^n past x^m uses
    /// y^n r = sum_{j=0}^{n} C(n,j) delta^j(r) y^(n-j) with r = x^m.
    pub fn multiply(&self, rhs: &AhElement) -> Result<AhElement> {
        if self.ctx != rhs.ctx {
            return Err(AhError::MixedContexts);
        }
        let ctx = &self.ctx;
        let field = ctx.field();
        let max_n1 = self.terms.keys().map(|&(_, n)| n).max().unwrap_or(0);
        // delta chains delta^j(x^m2), computed once per distinct m2.
        let mut chains: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
        for &(m2, _) in rhs.terms.keys() {
            chains.entry(m2).or_insert_with(|| {
                let mut chain =
                    vec![Poly::monomial(field, Scalar::one(field), m2 as usize)];
                for _ in 0..max_n1 {
                    let next = ctx.delta(chain.last().unwrap());
                    chain.push(next);
                }
                chain
            });
        }
        let mut out = AhElement::zero(ctx);
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &rhs.terms {
                let c = c1 * c2;
                let chain = &chains[&m2];
                for j in 0..=n1 {
                    let dj = &chain[j as usize];
                    if dj.is_zero() {
                        break;
                    }
                    let b = binomial_in(field, n1 as u64, j as u64);
                    if b.is_zero() {
                        continue;
                    }
                    let w = &c * &b;
                    let target_n = n1 - j + n2;
                    for (k, a) in dj.coeffs().iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        out.insert_add(
                            (m1 + k as u32, target_n),
                            &w * a,
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, rhs: &AhElement) -> Result<AhElement> {
        Ok(&self.multiply(rhs)? - &rhs.multiply(self)?)
    }

    pub fn pow(&self, e: u32) -> Result<AhElement> {
        let mut acc = AhElement::one(&self.ctx);
        for _ in 0..e {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    /// Solve self * c = w exactly. Returns None when no such c exists.
    /// Division proceeds top down in y-degree: the y-leading coefficient of
    /// self * c is lc_y(self) * lc_y(c) as polynomials in x, so each step
    /// is one exact polynomial division.
    pub fn left_divide(&self, w: &AhElement) -> Result<Option<AhElement>> {
        self.divide_impl(w, true)
    }

    /// Solve c * self = w exactly. Returns None when no such c exists.
    pub fn right_divide(&self, w: &AhElement) -> Result<Option<AhElement>> {
        self.divide_impl(w, false)
    }

    fn divide_impl(&self, w: &AhElement, self_on_left: bool) -> Result<Option<AhElement>> {
        if self.ctx != w.ctx {
            return Err(AhError::MixedContexts);
        }
        if self.is_zero() {
            return Err(AhError::DivisionByZero);
        }
        let ctx = &self.ctx;
        let k = self.degree_y();
        let lead = self.y_coeffs().pop().expect("nonzero divisor");
        let mut rem = w.clone();
        let mut quot = AhElement::zero(ctx);
        loop {
            if rem.is_zero() {
                return Ok(Some(quot));
            }
            let n = rem.degree_y();
            if n < k {
                return Ok(None);
            }
            let top = rem.y_coeffs().pop().expect("nonzero remainder");
            let (q, r) = top.divrem(&lead)?;
            if !r.is_zero() {
                return Ok(None);
            }
            let piece = {
                let mut e = AhElement::from_poly(ctx, &q);
                let shifted: BTreeMap<(u32, u32), Scalar> = e
                    .terms
                    .iter()
                    .map(|(&(m, _), c)| ((m, (n - k) as u32), c.clone()))
                    .collect();
                e.terms = shifted;
                e
            };
            let sub = if self_on_left {
                self.multiply(&piece)?
            } else {
                piece.multiply(self)?
            };
            rem = &rem - &sub;
            // The y^n coefficient of sub is exactly lead * q = top, so the
            // leading level cancels completely.
            assert!(rem.degree_y() < n, "division failed to reduce y-degree");
            quot = &quot + &piece;
        }
    }

    /// Parse an element. Terms are `+`/`-` separated; each term is a `*`
    /// separated product of scalar literals and `x`/`x^k`/`y`/`y^k`
    /// factors, multiplied left to right in A_h. In particular `y*x`
    /// parses to `x*y + h`.
    pub fn parse(ctx: &AhContext, s: &str) -> Result<AhElement> {
        let field = ctx.field();
        let mut out = AhElement::zero(ctx);
        for (negative, chunk) in split_signed_terms(s)? {
            let mut term = AhElement::one(ctx);
            for factor in chunk.split('*') {
                let f = factor.trim();
                if f.is_empty() {
                    return Err(AhError::ParseError(format!(
                        "empty factor in term {chunk:?}"
                    )));
                }
                let parsed = if let Some(rest) = parse_generator_power(f, 'x')? {
                    AhElement::monomial(ctx, Scalar::one(field), rest, 0)
                } else if let Some(rest) = parse_generator_power(f, 'y')? {
                    AhElement::monomial(ctx, Scalar::one(field), 0, rest)
                } else {
                    AhElement::scalar(ctx, Scalar::parse(field, f)?)
                };
                term = term.multiply(&parsed)?;
            }
            if negative {
                term = -&term;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// JSON encoding: field and h specs plus the sorted term list.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(m, n), c)| {
                serde_json::json!([m, n, c.to_string()])
            })
            .collect();
        serde_json::json!({
            "field": self.ctx.field().spec_string(),
            "h": self.ctx.h().to_string(),
            "terms": terms,
        })
    }

    /// Decode [`AhElement::to_json`] output within a given context. The
    /// field and h recorded in the JSON must match the context.
    pub fn from_json(ctx: &AhContext, v: &serde_json::Value) -> Result<AhElement> {
        let field_spec = v
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing field spec".into()))?;
        if field_spec != ctx.field().spec_string() {
            return Err(AhError::MixedContexts);
        }
        let h_str = v
            .get("h")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing h".into()))?;
        if Poly::parse(ctx.field(), h_str)? != *ctx.h() {
            return Err(AhError::MixedContexts);
        }
        let terms = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| AhError::ParseError("missing terms array".into()))?;
        let mut out = AhElement::zero(ctx);
        for t in terms {
            let triple = t
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| AhError::ParseError("term must be [m, n, coeff]".into()))?;
            let m = triple[0]
                .as_u64()
                .ok_or_else(|| AhError::ParseError("bad x exponent".into()))?;
            let n = triple[1]
                .as_u64()
                .ok_or_else(|| AhError::ParseError("bad y exponent".into()))?;
            let c = triple[2]
                .as_str()
                .ok_or_else(|| AhError::ParseError("coefficient must be a string".into()))?;
            out.insert_add(
                (m as u32, n as u32),
                Scalar::parse(ctx.field(), c)?,
            );
        }
        Ok(out)
    }
}

/// Image of `a` under the embedding of A_h into the Weyl algebra A_1
/// (the algebra with h = 1): x maps to x and y maps to y*h(x), computed in
/// normal form. The map is an injective algebra homomorphism.
pub fn embed_weyl(a: &AhElement) -> AhElement {
    let field = a.context().field();
    let target = AhContext::new(Poly::constant(Scalar::one(field)))
        .expect("h = 1 is nonzero");
    let h_image = AhElement::from_poly(&target, a.context().h());
    let y_image = AhElement::y(&target)
        .multiply(&h_image)
        .expect("same context");
    let max_n = a.terms.keys().map(|&(_, n)| n).max().unwrap_or(0);
    let mut y_powers = vec![AhElement::one(&target)];
    for _ in 0..max_n {
        let next = y_powers
            .last()
            .unwrap()
            .multiply(&y_image)
            .expect("same context");
        y_powers.push(next);
    }
    let mut out = AhElement::zero(&target);
    for (&(m, n), c) in &a.terms {
        let xm = AhElement::monomial(&target, c.clone(), m, 0);
        let term = xm.multiply(&y_powers[n as usize]).expect("same context");
        out = &out + &term;
    }
    out
}

impl AhElement {
    /// Window-bounded normality check: true when for every monomial g with
    /// x-degree <= dx and y-degree <= dy, both g*self and self*g are
    /// divisible by self on the matching side (g*self = self*c and
    /// self*g = c'*self have exact solutions).
    pub fn is_normal_bounded(&self, dx: u32, dy: u32) -> Result<bool> {
        if self.is_zero() {
            return Err(AhError::ZeroElement);
        }
        let one = Scalar::one(self.ctx.field());
        for m in 0..=dx {
            for n in 0..=dy {
                let g = AhElement::monomial(&self.ctx, one.clone(), m, n);
                let gb = g.multiply(self)?;
                if self.left_divide(&gb)?.is_none() {
                    return Ok(false);
                }
                let bg = self.multiply(&g)?;
                if self.right_divide(&bg)?.is_none() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn parse_generator_power(f: &str, var: char) -> Result<Option<u32>> {
    let Some(rest) = f.strip_prefix(var) else {
        return Ok(None);
    };
    let rest = rest.trim();
    if rest.is_empty() {
        return Ok(Some(1));
    }
    if let Some(e) = rest.strip_prefix('^') {
        let e: u32 = e
            .trim()
            .parse()
            .map_err(|_| AhError::ParseError(format!("bad exponent in {f:?}")))?;
        return Ok(Some(e));
    }
    Err(AhError::ParseError(format!(
        "unexpected characters in factor {f:?}"
    )))
}

/// C(n, k) mapped into the field.
pub(crate) fn binomial_in(ctx: &FieldContext, n: u64, k: u64) -> Scalar {
    if k > n {
        return Scalar::zero(ctx);
    }
    let b = num_integer::binomial(BigUint::from(n), BigUint::from(k));
    Scalar::from_biguint(ctx, &b)
}

impl Add for &AhElement {
    type Output = AhElement;
    fn add(self, rhs: &AhElement) -> AhElement {
        assert!(self.ctx == rhs.ctx, "mixed A_h contexts");
        let mut out = self.clone();
        for (key, c) in &rhs.terms {
            out.insert_add(*key, c.clone());
        }
        out
    }
}

impl Sub for &AhElement {
    type Output = AhElement;
    fn sub(self, rhs: &AhElement) -> AhElement {
        self + &(-rhs)
    }
}

impl Neg for &AhElement {
    type Output = AhElement;
    fn neg(self) -> AhElement {
        let mut out = AhElement::zero(&self.ctx);
        for (key, c) in &self.terms {
            out.terms.insert(*key, -c);
        }
        out
    }
}

impl Mul for &AhElement {
    type Output = AhElement;
    fn mul(self, rhs: &AhElement) -> AhElement {
        self.multiply(rhs).expect("mixed A_h contexts")
    }
}

impl fmt::Display for AhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending y-degree, then ascending x-degree.
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut out = String::new();
        let mut first = true;
        for &&(m, n) in &keys {
            let c = &self.terms[&(m, n)];
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
            let mut parts: Vec<String> = Vec::new();
            if m == 1 {
                parts.push("x".into());
            } else if m > 1 {
                parts.push(format!("x^{m}"));
            }
            if n == 1 {
                parts.push("y".into());
            } else if n > 1 {
                parts.push(format!("y^{n}"));
            }
            if parts.is_empty() {
                push_coeff(&mut out, &abs);
            } else {
                if abs != "1" {
                    push_coeff(&mut out, &abs);
                    out.push('*');
                }
                out.push_str(&parts.join("*"));
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for AhElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AhElement({self})")
    }
}
