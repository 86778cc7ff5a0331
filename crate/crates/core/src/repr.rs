//! Finite dimensional modules and the induced module attached to a point.
//!
//! * [`FinModule`] packages a matrix pair satisfying `YX - XY = h(X)`
//!   together with a record of the construction it came from.
//! * [`one_dim`], [`n_module`], [`l_module_factor`] and [`l_z_beta`] build
//!   the standard families; [`weyl_restrict`] pulls a module back along
//!   the embedding `y -> yh` into the Weyl algebra.
//! * [`InducedElement`] is exact arithmetic in the module induced from a
//!   maximal ideal `m = Df` of the polynomial subalgebra, with basis
//!   `y^k r u` (`r` a residue mod `f`); [`n_quotient_hom`] evaluates the
//!   quotient maps onto the cyclic modules `N(m, q)`.
//!
//! Every constructor re-checks the defining relation on the matrices it
//! produces, so a successful return is always a genuine module.

use std::collections::BTreeMap;
use std::fmt;

use crate::ahalg::{binomial_in, AhContext, AhElement};
use crate::error::{AhError, Result};
use crate::matrix::ScalarMat;
use crate::poly::{Poly, Primality};
use crate::scalar::Scalar;

/// Which construction produced a [`FinModule`].
///
/// Downstream analyses use this to pick theorem-backed shortcuts (for
/// example, modules built by [`l_module_factor`] with a prime `gbar` are
/// irreducible without any search) and to bound annihilator windows.
#[derive(Clone, Debug, PartialEq)]
pub enum Provenance {
    /// `one_dim(lambda, mu)`: x acts by `lambda`, y by `mu`.
    OneDim { lambda: Scalar, mu: Scalar },
    /// `n_module(lambda, q, n)`: the quotient `D/m^(n+1)` twisted by `q`.
    NModule { lambda: Scalar, q: Poly, n: u32 },
    /// `l_module_factor(f, g)`: quotient of `A/Af` by the polynomial
    /// `gbar = y^n - sum_j g[j] y^j` in the central variable y.
    LFactor { f: Poly, g: Vec<Poly> },
    /// `l_z_beta(lambda, beta)`: the p-dimensional char-p module on which
    /// `z_p` acts by `beta`.
    LZBeta { lambda: Scalar, beta: Scalar },
    /// Restricted from a Weyl algebra module along `y -> yh`.
    WeylRestrict,
    /// Anything else: raw matrices, direct sums, JSON input.
    Custom,
}

impl Provenance {
    fn kind(&self) -> &'static str {
        match self {
            Provenance::OneDim { .. } => "one_dim",
            Provenance::NModule { .. } => "n_module",
            Provenance::LFactor { .. } => "l_factor",
            Provenance::LZBeta { .. } => "l_z_beta",
            Provenance::WeylRestrict => "weyl_restrict",
            Provenance::Custom => "custom",
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Provenance::OneDim { lambda, mu } => serde_json::json!({
                "kind": "one_dim",
                "lambda": lambda.to_string(),
                "mu": mu.to_string(),
            }),
            Provenance::NModule { lambda, q, n } => serde_json::json!({
                "kind": "n_module",
                "lambda": lambda.to_string(),
                "q": q.to_string(),
                "n": n,
            }),
            Provenance::LFactor { f, g } => serde_json::json!({
                "kind": "l_factor",
                "f": f.to_string(),
                "g": g.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }),
            Provenance::LZBeta { lambda, beta } => serde_json::json!({
                "kind": "l_z_beta",
                "lambda": lambda.to_string(),
                "beta": beta.to_string(),
            }),
            other => serde_json::json!({ "kind": other.kind() }),
        }
    }

    fn from_json(ctx: &AhContext, v: &serde_json::Value) -> Result<Provenance> {
        let field = ctx.field();
        let kind = v
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| AhError::ParseError("missing provenance kind".into()))?;
        let get_str = |key: &str| -> Result<&str> {
            v.get(key)
                .and_then(|s| s.as_str())
                .ok_or_else(|| AhError::ParseError(format!("missing provenance field {key}")))
        };
        match kind {
            "one_dim" => Ok(Provenance::OneDim {
                lambda: Scalar::parse(field, get_str("lambda")?)?,
                mu: Scalar::parse(field, get_str("mu")?)?,
            }),
            "n_module" => {
                let n = v
                    .get("n")
                    .and_then(|n| n.as_u64())
                    .ok_or_else(|| AhError::ParseError("missing provenance field n".into()))?;
                Ok(Provenance::NModule {
                    lambda: Scalar::parse(field, get_str("lambda")?)?,
                    q: Poly::parse(field, get_str("q")?)?,
                    n: u32::try_from(n)
                        .map_err(|_| AhError::ParseError("n out of range".into()))?,
                })
            }
            "l_factor" => {
                let g = v
                    .get("g")
                    .and_then(|g| g.as_array())
                    .ok_or_else(|| AhError::ParseError("missing provenance field g".into()))?
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .ok_or_else(|| AhError::ParseError("g entries must be strings".into()))
                            .and_then(|s| Poly::parse(field, s))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Provenance::LFactor {
                    f: Poly::parse(field, get_str("f")?)?,
                    g,
                })
            }
            "l_z_beta" => Ok(Provenance::LZBeta {
                lambda: Scalar::parse(field, get_str("lambda")?)?,
                beta: Scalar::parse(field, get_str("beta")?)?,
            }),
            "weyl_restrict" => Ok(Provenance::WeylRestrict),
            "custom" => Ok(Provenance::Custom),
            other => Err(AhError::ParseError(format!("unknown provenance kind {other}"))),
        }
    }
}

/// A finite dimensional module, given by the matrices of x and y on a
/// fixed basis. The defining relation `YX - XY = h(X)` is an invariant of
/// the type: every way of making a `FinModule` checks it.
#[derive(Clone, Debug, PartialEq)]
pub struct FinModule {
    ctx: AhContext,
    x: ScalarMat,
    y: ScalarMat,
    provenance: Provenance,
}

impl FinModule {
    fn build(ctx: &AhContext, x: ScalarMat, y: ScalarMat, provenance: Provenance) -> Result<FinModule> {
        if x.context() != ctx.field() || y.context() != ctx.field() {
            return Err(AhError::MixedContexts);
        }
        if !x.is_square() || !y.is_square() || x.nrows() != y.nrows() {
            return Err(AhError::ShapeMismatch(format!(
                "want square matrices of equal size, got {}x{} and {}x{}",
                x.nrows(),
                x.ncols(),
                y.nrows(),
                y.ncols()
            )));
        }
        if x.nrows() == 0 {
            return Err(AhError::ShapeMismatch("modules here have dimension >= 1".into()));
        }
        let module = FinModule {
            ctx: ctx.clone(),
            x,
            y,
            provenance,
        };
        if !module.verify_relation() {
            return Err(AhError::RelationViolated);
        }
        Ok(module)
    }

    /// Wrap raw matrices, after checking shapes and the defining relation.
    pub fn from_matrices(ctx: &AhContext, x: ScalarMat, y: ScalarMat) -> Result<FinModule> {
        FinModule::build(ctx, x, y, Provenance::Custom)
    }

    pub fn context(&self) -> &AhContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.x.nrows()
    }

    pub fn x_mat(&self) -> &ScalarMat {
        &self.x
    }

    pub fn y_mat(&self) -> &ScalarMat {
        &self.y
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Recheck `YX - XY = h(X)` directly on the stored matrices.
    pub fn verify_relation(&self) -> bool {
        let comm = &(&self.y * &self.x) - &(&self.x * &self.y);
        comm == self.x.eval_poly(self.ctx.h())
    }

    /// The matrix through which a polynomial in x acts.
    pub fn act_poly(&self, r: &Poly) -> Result<ScalarMat> {
        if r.context() != self.ctx.field() {
            return Err(AhError::MixedContexts);
        }
        Ok(self.x.eval_poly(r))
    }

    /// The matrix through which an algebra element acts: substitute the
    /// matrices of x and y into the normal form of `a`.
    pub fn act_element(&self, a: &AhElement) -> Result<ScalarMat> {
        if a.context() != &self.ctx {
            return Err(AhError::MixedContexts);
        }
        let field = self.ctx.field();
        let d = self.dim();
        let mut xpow = vec![ScalarMat::identity(field, d)];
        let mut ypow = vec![ScalarMat::identity(field, d)];
        let mut acc = ScalarMat::zeros(field, d, d);
        for (&(m, n), c) in a.terms() {
            while xpow.len() <= m as usize {
                xpow.push(xpow.last().unwrap() * &self.x);
            }
            while ypow.len() <= n as usize {
                ypow.push(ypow.last().unwrap() * &self.y);
            }
            let term = &xpow[m as usize] * &ypow[n as usize];
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }

    /// Block diagonal sum. The provenance of the sum is [`Provenance::Custom`].
    pub fn direct_sum(&self, other: &FinModule) -> Result<FinModule> {
        if self.ctx != other.ctx {
            return Err(AhError::MixedContexts);
        }
        let field = self.ctx.field();
        let (da, db) = (self.dim(), other.dim());
        let d = da + db;
        let embed = |a: &ScalarMat, b: &ScalarMat| {
            ScalarMat::from_fn(field, d, d, |i, j| {
                if i < da && j < da {
                    a[(i, j)].clone()
                } else if i >= da && j >= da {
                    b[(i - da, j - da)].clone()
                } else {
                    Scalar::zero(field)
                }
            })
        };
        FinModule::build(
            &self.ctx,
            embed(&self.x, &other.x),
            embed(&self.y, &other.y),
            Provenance::Custom,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows = |m: &ScalarMat| -> Vec<Vec<String>> {
            (0..m.nrows())
                .map(|i| m.row(i).iter().map(|c| c.to_string()).collect())
                .collect()
        };
        serde_json::json!({
            "field": self.ctx.field().spec_string(),
            "h": self.ctx.h().to_string(),
            "dim": self.dim(),
            "X": rows(&self.x),
            "Y": rows(&self.y),
            "provenance": self.provenance.to_json(),
        })
    }

    /// Decode [`FinModule::to_json`] output within a given context. The
    /// field and h recorded in the JSON must match the context, and the
    /// matrices must satisfy the defining relation; the provenance tag is
    /// taken at face value beyond that.
    pub fn from_json(ctx: &AhContext, v: &serde_json::Value) -> Result<FinModule> {
        let field = ctx.field();
        let field_spec = v
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing field spec".into()))?;
        if field_spec != field.spec_string() {
            return Err(AhError::MixedContexts);
        }
        let h_str = v
            .get("h")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing h".into()))?;
        if Poly::parse(field, h_str)? != *ctx.h() {
            return Err(AhError::MixedContexts);
        }
        let dim = v
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| AhError::ParseError("missing dim".into()))? as usize;
        let read_mat = |key: &str| -> Result<ScalarMat> {
            let rows = v
                .get(key)
                .and_then(|m| m.as_array())
                .ok_or_else(|| AhError::ParseError(format!("missing matrix {key}")))?;
            if rows.len() != dim {
                return Err(AhError::ParseError(format!("matrix {key} has wrong row count")));
            }
            let mut data = Vec::with_capacity(dim);
            for row in rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| AhError::ParseError(format!("matrix {key} rows must be arrays")))?;
                if row.len() != dim {
                    return Err(AhError::ParseError(format!("matrix {key} has a ragged row")));
                }
                let mut out = Vec::with_capacity(dim);
                for cell in row {
                    let s = cell
                        .as_str()
                        .ok_or_else(|| AhError::ParseError("matrix entries must be strings".into()))?;
                    out.push(Scalar::parse(field, s)?);
                }
                data.push(out);
            }
            Ok(ScalarMat::from_rows(field, data))
        };
        let x = read_mat("X")?;
        let y = read_mat("Y")?;
        let provenance = match v.get("provenance") {
            Some(p) => Provenance::from_json(ctx, p)?,
            None => Provenance::Custom,
        };
        FinModule::build(ctx, x, y, provenance)
    }
}

/// The one dimensional module at a root `lambda` of h: x acts by `lambda`
/// and y by an arbitrary `mu`.
pub fn one_dim(ctx: &AhContext, lambda: &Scalar, mu: &Scalar) -> Result<FinModule> {
    let field = ctx.field();
    if lambda.context() != field || mu.context() != field {
        return Err(AhError::MixedContexts);
    }
    if !ctx.h().evaluate(lambda)?.is_zero() {
        return Err(AhError::LambdaNotRootOfH);
    }
    let x = ScalarMat::from_rows(field, vec![vec![lambda.clone()]]);
    let y = ScalarMat::from_rows(field, vec![vec![mu.clone()]]);
    FinModule::build(
        ctx,
        x,
        y,
        Provenance::OneDim {
            lambda: lambda.clone(),
            mu: mu.clone(),
        },
    )
}

/// The cyclic module `D/m^(n+1)` at a root `lambda` of h, with y acting
/// as `r -> qr + delta(r)`. On the basis `v_j = (x - lambda)^(n - j)`
/// (so `v_n` is the cyclic vector and `v_0` spans the socle), x acts as
/// `lambda` plus a shift down the index, and y is upper triangular with
/// `v_j`-to-`v_l` entry `q_(j-l) + (n - j) eta_(j-l)`, where `q_t` and
/// `eta_t` are the coefficients of `q` and of `h/(x - lambda)` expanded
/// around `lambda`.
pub fn n_module(ctx: &AhContext, lambda: &Scalar, q: &Poly, n: u32) -> Result<FinModule> {
    let field = ctx.field();
    if lambda.context() != field || q.context() != field {
        return Err(AhError::MixedContexts);
    }
    if !ctx.h().evaluate(lambda)?.is_zero() {
        return Err(AhError::LambdaNotRootOfH);
    }
    let dim = n as usize + 1;
    let linear = Poly::from_coeffs(field, vec![-lambda, Scalar::one(field)]);
    let (eta_poly, rem) = ctx.h().divrem(&linear)?;
    assert!(rem.is_zero(), "lambda was checked to be a root of h");
    let eta = eta_poly.expand_at(lambda);
    let qexp = q.expand_at(lambda);
    let coeff_at = |list: &[Scalar], t: usize| -> Scalar {
        list.get(t).cloned().unwrap_or_else(|| Scalar::zero(field))
    };
    let mut x = ScalarMat::zeros(field, dim, dim);
    let mut y = ScalarMat::zeros(field, dim, dim);
    for j in 0..dim {
        x[(j, j)] = lambda.clone();
        if j > 0 {
            x[(j - 1, j)] = Scalar::one(field);
        }
        let weight = Scalar::from_u64(field, (n as usize - j) as u64);
        for l in 0..=j {
            let t = j - l;
            let c = &coeff_at(&qexp, t) + &(&weight * &coeff_at(&eta, t));
            if !c.is_zero() {
                y[(l, j)] = c;
            }
        }
    }
    FinModule::build(
        ctx,
        x,
        y,
        Provenance::NModule {
            lambda: lambda.clone(),
            q: q.clone(),
            n,
        },
    )
}

/// Certify that `gbar = y^n - sum_j g[j] y^j` is prime over the residue
/// field `D/(f)`. Linear polynomials are prime outright. When f has
/// degree 1 the residues are evaluated at the root and the question drops
/// to the base field; otherwise it is lifted to the extension field
/// `base[t]/(f)` when that is constructible. `Err(GNotPrime(Some(w)))`
/// carries a proper factor, `Err(GNotPrime(None))` means the primality
/// could not be certified either way.
fn certify_gbar_prime(f: &Poly, g: &[Poly]) -> Result<()> {
    let field = f.context();
    let n = g.len();
    if n == 1 {
        return Ok(());
    }
    let verdict = if f.degree() == 1 {
        let lambda = -&f.coeff(0);
        let mut coeffs: Vec<Scalar> = g
            .iter()
            .map(|gi| gi.evaluate(&lambda).map(|v| -&v))
            .collect::<Result<_>>()?;
        coeffs.push(Scalar::one(field));
        Poly::from_coeffs(field, coeffs).is_irreducible()?
    } else if !field.is_extension() {
        let ext = crate::scalar::FieldContext::extension(field, f)?;
        let mut coeffs: Vec<Scalar> = g
            .iter()
            .map(|gi| Scalar::from_residue(&ext, gi).map(|v| -&v))
            .collect::<Result<_>>()?;
        coeffs.push(Scalar::one(&ext));
        Poly::from_coeffs(&ext, coeffs).is_irreducible()?
    } else {
        // No towers of extensions: cannot certify either way.
        return Err(AhError::GNotPrime(None));
    };
    match verdict {
        Primality::Prime => Ok(()),
        Primality::Composite(w) => Err(AhError::GNotPrime(Some(w.display_var('y')))),
        Primality::Unknown => Err(AhError::GNotPrime(None)),
    }
}

/// The module `L(m, gbar) = B/(gbar)` attached to a monic prime factor f
/// of h, where `B = A/Af` is the (commutative) quotient and
/// `gbar = y^n - g[n-1] y^(n-1) - ... - g[0]`, with the `g[j]` read as
/// residues mod f. Requires `gbar` prime over `D/(f)`, which makes the
/// result irreducible of dimension `n deg f`.
///
/// Basis: `y^k x^l` for `0 <= k < n`, `0 <= l < deg f`, in index
/// `k * deg f + l`. x acts as the companion matrix of f on each y-level;
/// y shifts levels up and folds the top level back through the `g[j]`.
pub fn l_module_factor(ctx: &AhContext, f: &Poly, g: &[Poly]) -> Result<FinModule> {
    let field = ctx.field();
    if f.context() != field || g.iter().any(|gi| gi.context() != field) {
        return Err(AhError::MixedContexts);
    }
    if f.degree() < 1 {
        return Err(AhError::ConstantPolynomial);
    }
    let (_, f) = f.monic();
    if !ctx.h().divisible_by(&f)? {
        return Err(AhError::FNotFactorOfH);
    }
    match f.is_irreducible()? {
        Primality::Prime => {}
        Primality::Composite(w) => {
            return Err(AhError::PolynomialNotPrime(format!("{f} is divisible by {w}")));
        }
        Primality::Unknown => {
            return Err(AhError::PolynomialNotPrime(format!(
                "could not certify {f} prime"
            )));
        }
    }
    if g.is_empty() {
        // gbar would be the constant 1.
        return Err(AhError::ConstantPolynomial);
    }
    let g: Vec<Poly> = g
        .iter()
        .map(|gi| gi.divrem(&f).map(|(_, r)| r))
        .collect::<Result<_>>()?;
    certify_gbar_prime(&f, &g)?;

    let n = g.len();
    let d = f.degree() as usize;
    let dim = n * d;
    let one = Scalar::one(field);
    // x^d reduced mod f, for the wrap column of each companion block.
    let (_, xd_red) = Poly::monomial(field, one.clone(), d).divrem(&f)?;
    let mut x = ScalarMat::zeros(field, dim, dim);
    let mut y = ScalarMat::zeros(field, dim, dim);
    for k in 0..n {
        for l in 0..d {
            let col = k * d + l;
            if l + 1 < d {
                x[(k * d + l + 1, col)] = one.clone();
            } else {
                for (i, c) in xd_red.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        x[(k * d + i, col)] = c.clone();
                    }
                }
            }
            if k + 1 < n {
                y[((k + 1) * d + l, col)] = one.clone();
            } else {
                // y . y^(n-1) x^l = sum_j y^j (g_j x^l mod f).
                let xl = Poly::monomial(field, one.clone(), l);
                for (j, gj) in g.iter().enumerate() {
                    let (_, s) = (gj * &xl).divrem(&f)?;
                    for (i, c) in s.coeffs().iter().enumerate() {
                        if !c.is_zero() {
                            y[(j * d + i, col)] = c.clone();
                        }
                    }
                }
            }
        }
    }
    FinModule::build(ctx, x, y, Provenance::LFactor { f, g })
}

/// The p-dimensional module in characteristic p at a point `lambda` where
/// `h(lambda) != 0`, on which the central element `z_p` acts by `beta`.
/// On the basis `v_0, ..., v_(p-1)`:
///
/// * `y v_i = v_(i+1)` for `i < p - 1`, and
///   `y v_(p-1) = beta v_0 + w(lambda) v_1` with `w = delta^p(x)/h`;
/// * `x v_i = sum_j (-1)^j C(i, j) delta^j(x)(lambda) v_(i-j)`.
pub fn l_z_beta(ctx: &AhContext, lambda: &Scalar, beta: &Scalar) -> Result<FinModule> {
    let field = ctx.field();
    if lambda.context() != field || beta.context() != field {
        return Err(AhError::MixedContexts);
    }
    let p = field.characteristic();
    if p == 0 {
        return Err(AhError::CharacteristicZero);
    }
    if field.is_extension() {
        return Err(AhError::PrimeFieldOnly);
    }
    if ctx.h().evaluate(lambda)?.is_zero() {
        return Err(AhError::HVanishesAtLambda);
    }
    let w = ctx.delta_p_x_over_h()?;
    let wl = w.evaluate(lambda)?;
    let dim = p as usize;
    // delta^j(x) evaluated at lambda, j = 0 .. p-1.
    let mut dvals = Vec::with_capacity(dim);
    let mut dj = Poly::x(field);
    dvals.push(dj.evaluate(lambda)?);
    for _ in 1..dim {
        dj = ctx.delta(&dj);
        dvals.push(dj.evaluate(lambda)?);
    }
    let mut x = ScalarMat::zeros(field, dim, dim);
    let mut y = ScalarMat::zeros(field, dim, dim);
    for i in 0..dim {
        for j in 0..=i {
            let mut c = &binomial_in(field, i as u64, j as u64) * &dvals[j];
            if j % 2 == 1 {
                c = -&c;
            }
            if !c.is_zero() {
                x[(i - j, i)] = c;
            }
        }
        if i + 1 < dim {
            y[(i + 1, i)] = Scalar::one(field);
        }
    }
    y[(0, dim - 1)] = &y[(0, dim - 1)] + beta;
    y[(1, dim - 1)] = &y[(1, dim - 1)] + &wl;
    FinModule::build(
        ctx,
        x,
        y,
        Provenance::LZBeta {
            lambda: lambda.clone(),
            beta: beta.clone(),
        },
    )
}

/// Restrict a Weyl algebra module `(X, Y)` (so `YX - XY = I`) to the
/// subalgebra generated by `X` and `Y h(X)`, i.e. pull it back along the
/// embedding `x -> x`, `y -> yh`.
pub fn weyl_restrict(ctx: &AhContext, x: &ScalarMat, y: &ScalarMat) -> Result<FinModule> {
    let field = ctx.field();
    if x.context() != field || y.context() != field {
        return Err(AhError::MixedContexts);
    }
    if !x.is_square() || !y.is_square() || x.nrows() != y.nrows() || x.nrows() == 0 {
        return Err(AhError::ShapeMismatch(format!(
            "want square matrices of equal positive size, got {}x{} and {}x{}",
            x.nrows(),
            x.ncols(),
            y.nrows(),
            y.ncols()
        )));
    }
    let comm = &(y * x) - &(x * y);
    if comm != ScalarMat::identity(field, x.nrows()) {
        return Err(AhError::NotAWeylModule);
    }
    let yhat = y * &x.eval_poly(ctx.h());
    FinModule::build(ctx, x.clone(), yhat, Provenance::WeylRestrict)
}

/// The cyclic quotient target `N(m, q) = D/(f)` as a module: x acts as
/// the companion matrix of f and y as `r -> qr + delta(r)` mod f. Needs
/// the ideal `(f)` to be delta-invariant, i.e. `f | f' h`.
///
/// The basis is `1, x, ..., x^(deg f - 1)`.
pub fn n_quotient_target(ctx: &AhContext, f: &Poly, q: &Poly) -> Result<FinModule> {
    let field = ctx.field();
    if f.context() != field || q.context() != field {
        return Err(AhError::MixedContexts);
    }
    if f.degree() < 1 {
        return Err(AhError::ConstantPolynomial);
    }
    let (_, f) = f.monic();
    if !ctx.delta(&f).divisible_by(&f)? {
        return Err(AhError::NotDeltaInvariant);
    }
    let d = f.degree() as usize;
    let one = Scalar::one(field);
    let mut x = ScalarMat::zeros(field, d, d);
    let mut y = ScalarMat::zeros(field, d, d);
    for i in 0..d {
        let xi = Poly::monomial(field, one.clone(), i);
        let (_, xcol) = (&xi * &Poly::x(field)).divrem(&f)?;
        let (_, ycol) = (&(q * &xi) + &ctx.delta(&xi)).divrem(&f)?;
        for (r, c) in xcol.coeffs().iter().enumerate() {
            if !c.is_zero() {
                x[(r, i)] = c.clone();
            }
        }
        for (r, c) in ycol.coeffs().iter().enumerate() {
            if !c.is_zero() {
                y[(r, i)] = c.clone();
            }
        }
    }
    FinModule::build(ctx, x, y, Provenance::Custom)
}

/// An element of the induced module `U(m) = A tensor_D D/m` for a maximal
/// ideal `m = (f)` of D, written on the basis `y^k r u` with `u` the
/// class of 1 and `r` running over residues mod f. The map `terms` sends
/// each occurring y-degree to its (nonzero, reduced) residue.
///
/// `f` is monicized and must be certified prime; it does not have to
/// divide h.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedElement {
    ctx: AhContext,
    f: Poly,
    terms: BTreeMap<u32, Poly>,
}

fn checked_prime_f(ctx: &AhContext, f: &Poly) -> Result<Poly> {
    if f.context() != ctx.field() {
        return Err(AhError::MixedContexts);
    }
    if f.degree() < 1 {
        return Err(AhError::ConstantPolynomial);
    }
    let (_, f) = f.monic();
    match f.is_irreducible()? {
        Primality::Prime => Ok(f),
        Primality::Composite(w) => Err(AhError::PolynomialNotPrime(format!(
            "{f} is divisible by {w}"
        ))),
        Primality::Unknown => Err(AhError::PolynomialNotPrime(format!(
            "could not certify {f} prime"
        ))),
    }
}

impl InducedElement {
    /// The generator `u = 1 tensor 1`.
    pub fn generator(ctx: &AhContext, f: &Poly) -> Result<InducedElement> {
        let f = checked_prime_f(ctx, f)?;
        let mut terms = BTreeMap::new();
        terms.insert(0, Poly::constant(Scalar::one(ctx.field())));
        Ok(InducedElement {
            ctx: ctx.clone(),
            f,
            terms,
        })
    }

    /// The zero element of `U((f))`.
    pub fn zero(ctx: &AhContext, f: &Poly) -> Result<InducedElement> {
        let f = checked_prime_f(ctx, f)?;
        Ok(InducedElement {
            ctx: ctx.clone(),
            f,
            terms: BTreeMap::new(),
        })
    }

    /// Build `sum_k y^k r_k u` from explicit (y-degree, residue) pairs.
    /// Residues are reduced mod f; repeated degrees accumulate.
    pub fn from_terms(ctx: &AhContext, f: &Poly, terms: &[(u32, Poly)]) -> Result<InducedElement> {
        let mut out = InducedElement::zero(ctx, f)?;
        for (k, r) in terms {
            if r.context() != ctx.field() {
                return Err(AhError::MixedContexts);
            }
            let (_, r) = r.divrem(&out.f)?;
            out.insert_add(*k, r);
        }
        Ok(out)
    }

    fn insert_add(&mut self, k: u32, r: Poly) {
        if r.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &r;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn context(&self) -> &AhContext {
        &self.ctx
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn terms(&self) -> &BTreeMap<u32, Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest occurring y-degree, with -1 for the zero element.
    pub fn degree_y(&self) -> i64 {
        self.terms
            .keys()
            .next_back()
            .map(|&k| k as i64)
            .unwrap_or(-1)
    }

    fn assert_compatible(&self, other: &InducedElement) {
        assert!(
            self.ctx == other.ctx && self.f == other.f,
            "induced elements from different modules"
        );
    }

    pub fn scale(&self, c: &Scalar) -> InducedElement {
        let mut out = InducedElement {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (&k, r) in &self.terms {
            out.terms.insert(k, r.scale(c));
        }
        out
    }

    /// Left action of y: shift every y-degree up by one.
    pub fn act_y(&self) -> InducedElement {
        let mut out = InducedElement {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            terms: BTreeMap::new(),
        };
        for (&k, r) in &self.terms {
            out.terms.insert(k + 1, r.clone());
        }
        out
    }

    /// Left action of a polynomial `s` in x:
    /// `s . y^k r u = sum_j (-1)^j C(k, j) y^(k-j) (delta^j(s) r mod f) u`.
    pub fn act_poly(&self, s: &Poly) -> InducedElement {
        assert_eq!(
            s.context(),
            self.ctx.field(),
            "polynomial from a different field"
        );
        let mut out = InducedElement {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            terms: BTreeMap::new(),
        };
        let max_k = match self.terms.keys().next_back() {
            Some(&k) => k,
            None => return out,
        };
        // Chain of delta^j(s), stopping early once it hits zero.
        let mut chain = vec![s.clone()];
        for _ in 1..=max_k {
            let next = self.ctx.delta(chain.last().unwrap());
            if next.is_zero() {
                break;
            }
            chain.push(next);
        }
        let field = self.ctx.field();
        for (&k, r) in &self.terms {
            for (j, ds) in chain.iter().enumerate().take(k as usize + 1) {
                let (_, prod) = (ds * r).divrem(&self.f).expect("f is nonzero");
                if prod.is_zero() {
                    continue;
                }
                let mut c = binomial_in(field, k as u64, j as u64);
                if j % 2 == 1 {
                    c = -&c;
                }
                out.insert_add(k - j as u32, prod.scale(&c));
            }
        }
        out
    }

    /// Left action of x.
    pub fn act_x(&self) -> InducedElement {
        self.act_poly(&Poly::x(self.ctx.field()))
    }

    /// Left action of an arbitrary algebra element in normal form.
    pub fn act_ah(&self, a: &AhElement) -> InducedElement {
        assert_eq!(a.context(), &self.ctx, "element from a different algebra");
        let field = self.ctx.field();
        let mut acc = InducedElement {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            terms: BTreeMap::new(),
        };
        for (&(m, n), c) in a.terms() {
            // x^m y^n . v: shift by n, then act by x^m, then scale.
            let mut w = InducedElement {
                ctx: self.ctx.clone(),
                f: self.f.clone(),
                terms: self.terms.iter().map(|(&k, r)| (k + n, r.clone())).collect(),
            };
            if m > 0 {
                w = w.act_poly(&Poly::monomial(field, Scalar::one(field), m as usize));
            }
            acc = &acc + &w.scale(c);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&k, r)| serde_json::json!([k, r.to_string()]))
            .collect();
        serde_json::json!({
            "field": self.ctx.field().spec_string(),
            "h": self.ctx.h().to_string(),
            "f": self.f.to_string(),
            "terms": terms,
        })
    }

    /// Decode [`InducedElement::to_json`] output within a given context.
    pub fn from_json(ctx: &AhContext, v: &serde_json::Value) -> Result<InducedElement> {
        let field = ctx.field();
        let field_spec = v
            .get("field")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing field spec".into()))?;
        if field_spec != field.spec_string() {
            return Err(AhError::MixedContexts);
        }
        let h_str = v
            .get("h")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing h".into()))?;
        if Poly::parse(field, h_str)? != *ctx.h() {
            return Err(AhError::MixedContexts);
        }
        let f_str = v
            .get("f")
            .and_then(|f| f.as_str())
            .ok_or_else(|| AhError::ParseError("missing f".into()))?;
        let f = Poly::parse(field, f_str)?;
        let terms_json = v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| AhError::ParseError("missing terms array".into()))?;
        let mut terms = Vec::with_capacity(terms_json.len());
        for t in terms_json {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| AhError::ParseError("terms must be [k, residue] pairs".into()))?;
            let k = pair[0]
                .as_u64()
                .and_then(|k| u32::try_from(k).ok())
                .ok_or_else(|| AhError::ParseError("bad y-degree".into()))?;
            let r = pair[1]
                .as_str()
                .ok_or_else(|| AhError::ParseError("residues must be strings".into()))?;
            terms.push((k, Poly::parse(field, r)?));
        }
        InducedElement::from_terms(ctx, &f, &terms)
    }
}

impl std::ops::Add for &InducedElement {
    type Output = InducedElement;
    fn add(self, rhs: &InducedElement) -> InducedElement {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (&k, r) in &rhs.terms {
            out.insert_add(k, r.clone());
        }
        out
    }
}

impl std::ops::Sub for &InducedElement {
    type Output = InducedElement;
    fn sub(self, rhs: &InducedElement) -> InducedElement {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (&k, r) in &rhs.terms {
            out.insert_add(k, -r);
        }
        out
    }
}

impl std::ops::Neg for &InducedElement {
    type Output = InducedElement;
    fn neg(self) -> InducedElement {
        InducedElement {
            ctx: self.ctx.clone(),
            f: self.f.clone(),
            terms: self.terms.iter().map(|(&k, r)| (k, -r)).collect(),
        }
    }
}

impl fmt::Display for InducedElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (&k, r) in self.terms.iter().rev() {
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(out, "{r}")?;
            } else {
                let ypart = if k == 1 {
                    "y".to_string()
                } else {
                    format!("y^{k}")
                };
                if r.degree() == 0 && r.coeff(0).is_one() {
                    write!(out, "{ypart}")?;
                } else {
                    write!(out, "{ypart}*({r})")?;
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of the image of `v` under the quotient map
/// `U(m) -> N(m, q)` sending `u` to the class of 1: the element
/// `sum_k y^k r_k u` maps to `sum_k Y^k [r_k]`, with `Y` the matrix of y
/// on `N(m, q)` and `[r]` the coefficient vector of the residue.
///
/// Needs `(f)` delta-invariant, as for [`n_quotient_target`].
pub fn n_quotient_hom(v: &InducedElement, q: &Poly) -> Result<Vec<Scalar>> {
    let target = n_quotient_target(v.context(), v.f(), q)?;
    let field = v.context().field();
    let d = target.dim();
    let mut out = vec![Scalar::zero(field); d];
    let mut ypow = ScalarMat::identity(field, d);
    let mut at = 0u32;
    for (&k, r) in v.terms() {
        for _ in at..k {
            ypow = target.y_mat() * &ypow;
        }
        at = k;
        let mut coords = vec![Scalar::zero(field); d];
        for (i, c) in r.coeffs().iter().enumerate() {
            coords[i] = c.clone();
        }
        let img = ypow.mul_vec(&coords);
        for (o, c) in out.iter_mut().zip(img) {
            *o = &*o + &c;
        }
    }
    Ok(out)
}
