//! Integer partitions and the coefficient table that expands delta^k(x).
//!
//! For the derivation delta(r) = r'h, the iterate delta^k(x) is a
//! universal polynomial in h and its derivatives:
//!
//!   delta^k(x) = sum over partitions mu of k-1 of
//!                c_mu^k * h^(mu) * h^(k - len(mu))
//!
//! where h^(mu) is the product of the j-th derivatives of h over the parts
//! j of mu. The integer coefficients c_mu^k satisfy a forward recurrence:
//! each partition nu of k-2 sends nu_j * c_nu to the partition obtained by
//! raising one part j to j+1, and (k - 1 - len(nu)) * c_nu to the
//! partition obtained by appending a new part 1. Row k sums to (k-1)!.
//!
//! Exports:
//! - [`Partition`]: multiplicity vector representation with the raise and
//!   append operations used by the recurrence.
//! - [`PartitionCoeffTable`]: rows of c coefficients in exact big integer
//!   arithmetic.
//! - [`expand_delta_x`]: evaluates the expansion inside an algebra and is
//!   cross checked against direct iteration of delta.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::ahalg::AhContext;
use crate::error::{AhError, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Partitions are enumerated only up to this weight.
const ENUMERATION_WEIGHT_GUARD: u64 = 60;
/// Coefficient tables are built only up to this row.
const TABLE_ROW_GUARD: u32 = 40;

/// An integer partition stored as a multiplicity vector: `mult[i]` is the
/// number of parts equal to i+1. No trailing zeros are kept, so equal
/// partitions compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    mult: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Partition {
        Partition { mult: Vec::new() }
    }

    /// Build from a list of parts in any order; zero parts are rejected.
    pub fn from_parts(parts: &[u32]) -> Result<Partition> {
        let mut mult = Vec::new();
        for &p in parts {
            if p == 0 {
                return Err(AhError::ParseError("partition parts must be positive".into()));
            }
            if mult.len() < p as usize {
                mult.resize(p as usize, 0);
            }
            mult[p as usize - 1] += 1;
        }
        Ok(Partition { mult })
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for i in (0..self.mult.len()).rev() {
            for _ in 0..self.mult[i] {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    /// Number of parts equal to `part`.
    pub fn multiplicity(&self, part: u32) -> u32 {
        if part == 0 || part as usize > self.mult.len() {
            0
        } else {
            self.mult[part as usize - 1]
        }
    }

    /// Sum of all parts.
    pub fn weight(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(i, &m)| (i as u64 + 1) * m as u64)
            .sum()
    }

    /// Number of parts.
    pub fn length(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Replace one part equal to `part` by `part + 1`. Fails with
    /// [`AhError::MissingPart`] when no such part exists.
    pub fn raise_part(&self, part: u32) -> Result<Partition> {
        if self.multiplicity(part) == 0 {
            return Err(AhError::MissingPart);
        }
        let mut mult = self.mult.clone();
        mult[part as usize - 1] -= 1;
        if mult.len() < part as usize + 1 {
            mult.resize(part as usize + 1, 0);
        }
        mult[part as usize] += 1;
        while mult.last() == Some(&0) {
            mult.pop();
        }
        Ok(Partition { mult })
    }

    /// Append a new part equal to 1.
    pub fn add_unit_part(&self) -> Partition {
        let mut mult = self.mult.clone();
        if mult.is_empty() {
            mult.push(0);
        }
        mult[0] += 1;
        Partition { mult }
    }

    /// All partitions of `n` in descending lexicographic order of their
    /// part lists, so `(n)` comes first and `(1^n)` last.
    pub fn enumerate(n: u64) -> Result<Vec<Partition>> {
        if n > ENUMERATION_WEIGHT_GUARD {
            return Err(AhError::SizeGuard(format!(
                "partition enumeration capped at weight {ENUMERATION_WEIGHT_GUARD}, got {n}"
            )));
        }
        let mut out = Vec::new();
        let mut current: Vec<u32> = Vec::new();
        fn go(remaining: u64, max_part: u64, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition::from_parts(current).expect("positive parts"));
                return;
            }
            let top = remaining.min(max_part);
            for part in (1..=top).rev() {
                current.push(part as u32);
                go(remaining - part, part, current, out);
                current.pop();
            }
        }
        go(n, n.max(1), &mut current, &mut out);
        Ok(out)
    }
}

impl fmt::Display for Partition {
    /// Exponent notation with parts descending: `(3,2^2,1)`; the empty
    /// partition prints as `(0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(0)");
        }
        let mut pieces = Vec::new();
        for i in (0..self.mult.len()).rev() {
            let m = self.mult[i];
            if m == 0 {
                continue;
            }
            let part = i + 1;
            if m == 1 {
                pieces.push(format!("{part}"));
            } else {
                pieces.push(format!("{part}^{m}"));
            }
        }
        write!(f, "({})", pieces.join(","))
    }
}

/// Rows of the c coefficients: row k maps partitions of k-1 to their exact
/// coefficient in the expansion of delta^k(x).
pub struct PartitionCoeffTable {
    rows: Vec<BTreeMap<Partition, BigUint>>,
}

impl PartitionCoeffTable {
    /// Build rows 1..=k_max by the forward recurrence.
    pub fn new(k_max: u32) -> Result<PartitionCoeffTable> {
        if k_max == 0 {
            return Err(AhError::SizeGuard("table needs at least row 1".into()));
        }
        if k_max > TABLE_ROW_GUARD {
            return Err(AhError::SizeGuard(format!(
                "coefficient table capped at row {TABLE_ROW_GUARD}, got {k_max}"
            )));
        }
        let mut rows = Vec::with_capacity(k_max as usize);
        let mut first = BTreeMap::new();
        first.insert(Partition::empty(), BigUint::one());
        rows.push(first);
        for k in 2..=k_max {
            let prev = &rows[k as usize - 2];
            let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
            for (nu, c) in prev {
                for part in 1..=nu.weight() as u32 {
                    let m = nu.multiplicity(part);
                    if m == 0 {
                        continue;
                    }
                    let raised = nu.raise_part(part)?;
                    let add = c * BigUint::from(m);
                    *next.entry(raised).or_insert_with(BigUint::zero) += add;
                }
                let factor = (k as u64 - 1) - nu.length() as u64;
                if factor > 0 {
                    let appended = nu.add_unit_part();
                    let add = c * BigUint::from(factor);
                    *next.entry(appended).or_insert_with(BigUint::zero) += add;
                }
            }
            rows.push(next);
        }
        Ok(PartitionCoeffTable { rows })
    }

    pub fn k_max(&self) -> u32 {
        self.rows.len() as u32
    }

    /// The coefficient of `mu` in row `k`, when present.
    pub fn coeff(&self, k: u32, mu: &Partition) -> Option<&BigUint> {
        self.rows.get(k as usize - 1).and_then(|r| r.get(mu))
    }

    /// Row k as (partition, coefficient) pairs in descending lexicographic
    /// order of the part lists.
    pub fn row(&self, k: u32) -> Vec<(Partition, BigUint)> {
        let mut out: Vec<(Partition, BigUint)> = self.rows[k as usize - 1]
            .iter()
            .map(|(p, c)| (p.clone(), c.clone()))
            .collect();
        out.sort_by(|a, b| b.0.parts().cmp(&a.0.parts()));
        out
    }

    pub fn row_sum(&self, k: u32) -> BigUint {
        self.rows[k as usize - 1]
            .values()
            .fold(BigUint::zero(), |acc, c| acc + c)
    }

    /// True when row k sums to (k-1)!.
    pub fn factorial_sum_check(&self, k: u32) -> bool {
        let mut fact = BigUint::one();
        for i in 1..k as u64 {
            fact *= BigUint::from(i);
        }
        self.row_sum(k) == fact
    }

    /// Row k in the textual form `(2)_1 (1^2)_1 sum=2=2!`.
    pub fn row_display(&self, k: u32) -> String {
        let entries: Vec<String> = self
            .row(k)
            .iter()
            .map(|(p, c)| format!("{p}_{c}"))
            .collect();
        format!("{} sum={}={}!", entries.join(" "), self.row_sum(k), k - 1)
    }
}

/// Evaluate delta^k(x) through the partition expansion. For k = 0 this is
/// x itself. The result always equals direct iteration of delta.
pub fn expand_delta_x(ctx: &AhContext, k: u32) -> Result<Poly> {
    let field = ctx.field();
    if k == 0 {
        return Ok(Poly::x(field));
    }
    let table = PartitionCoeffTable::new(k)?;
    let h = ctx.h();
    // h^(j) for all part sizes that can appear in row k.
    let mut derivs = vec![h.clone()];
    for _ in 1..k {
        derivs.push(derivs.last().unwrap().derivative());
    }
    let mut acc = Poly::zero(field);
    for (mu, c) in table.row(k) {
        let mut term = Poly::constant(Scalar::from_biguint(field, &c));
        for part in mu.parts() {
            term = &term * &derivs[part as usize];
        }
        let h_power = k - mu.length();
        term = &term * &h.pow(h_power);
        acc = &acc + &term;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldContext;

    #[test]
    fn display_and_basic_operations() {
        let p = Partition::from_parts(&[2, 1, 2]).unwrap();
        assert_eq!(p.to_string(), "(2^2,1)");
        assert_eq!(p.weight(), 5);
        assert_eq!(p.length(), 3);
        assert_eq!(Partition::empty().to_string(), "(0)");
        assert_eq!(p.raise_part(1).unwrap().to_string(), "(2^3)");
        assert_eq!(p.raise_part(2).unwrap().to_string(), "(3,2,1)");
        assert_eq!(p.raise_part(3).unwrap_err(), AhError::MissingPart);
        assert_eq!(p.add_unit_part().to_string(), "(2^2,1^2)");
        assert!(Partition::from_parts(&[1, 0]).is_err());
    }

    #[test]
    fn enumeration_counts_match_euler_dp() {
        // Independent count: dp[m][n] = partitions of n with parts <= m.
        let nmax = 30usize;
        let mut dp = vec![vec![0u64; nmax + 1]; nmax + 1];
        for m in 0..=nmax {
            dp[m][0] = 1;
        }
        for m in 1..=nmax {
            for n in 1..=nmax {
                dp[m][n] = dp[m - 1][n] + if n >= m { dp[m][n - m] } else { 0 };
            }
        }
        for n in 0..=nmax {
            let parts = Partition::enumerate(n as u64).unwrap();
            assert_eq!(parts.len() as u64, dp[nmax][n], "count mismatch at n = {n}");
            // Descending lexicographic order, every weight correct.
            for w in parts.windows(2) {
                assert!(w[0].parts() > w[1].parts());
            }
            for p in &parts {
                assert_eq!(p.weight(), n as u64);
            }
            if n > 0 {
                assert_eq!(parts.first().unwrap().parts(), vec![n as u32]);
                assert_eq!(parts.last().unwrap().parts(), vec![1; n]);
            }
        }
        assert!(matches!(
            Partition::enumerate(61),
            Err(AhError::SizeGuard(_))
        ));
    }

    #[test]
    fn coefficient_rows_match_frozen_values() {
        let table = PartitionCoeffTable::new(7).unwrap();
        assert_eq!(table.row_display(1), "(0)_1 sum=1=0!");
        assert_eq!(table.row_display(2), "(1)_1 sum=1=1!");
        assert_eq!(table.row_display(3), "(2)_1 (1^2)_1 sum=2=2!");
        assert_eq!(table.row_display(4), "(3)_1 (2,1)_4 (1^3)_1 sum=6=3!");
        assert_eq!(
            table.row_display(5),
            "(4)_1 (3,1)_7 (2^2)_4 (2,1^2)_11 (1^4)_1 sum=24=4!"
        );
        assert_eq!(
            table.row_display(6),
            "(5)_1 (4,1)_11 (3,2)_15 (3,1^2)_32 (2^2,1)_34 (2,1^3)_26 (1^5)_1 sum=120=5!"
        );
        assert_eq!(
            table.row_display(7),
            "(6)_1 (5,1)_16 (4,2)_26 (4,1^2)_76 (3^2)_15 (3,2,1)_192 (3,1^3)_122 \
             (2^3)_34 (2^2,1^2)_180 (2,1^4)_57 (1^6)_1 sum=720=6!"
        );
        for k in 1..=7 {
            assert!(table.factorial_sum_check(k));
        }
        assert!(matches!(
            PartitionCoeffTable::new(41),
            Err(AhError::SizeGuard(_))
        ));
    }

    #[test]
    fn every_partition_of_k_minus_one_appears() {
        let table = PartitionCoeffTable::new(9).unwrap();
        for k in 1..=9u32 {
            let row = table.row(k);
            let all = Partition::enumerate(k as u64 - 1).unwrap();
            assert_eq!(row.len(), all.len());
            for (got, want) in row.iter().zip(all.iter()) {
                assert_eq!(&got.0, want, "row {k} order mismatch");
                assert!(!got.1.is_zero());
            }
        }
    }

    #[test]
    fn expansion_matches_direct_iteration() {
        for (field, hs) in [
            (FieldContext::rationals(), vec!["x", "x^2", "x^2 + 1", "x^3 - x"]),
            (FieldContext::prime_field(5).unwrap(), vec!["x^2 + 2", "x^3 + x + 1"]),
        ] {
            for hstr in hs {
                let ctx = AhContext::new(Poly::parse(&field, hstr).unwrap()).unwrap();
                for k in 0..=10u32 {
                    let direct = ctx.delta_k(&Poly::x(&field), k);
                    let expanded = expand_delta_x(&ctx, k).unwrap();
                    assert_eq!(direct, expanded, "mismatch at k = {k}, h = {hstr}");
                }
            }
        }
    }

    /// Independent oracle: the two variable expansion of delta^k(f) for a
    /// general f. Terms are indexed by partitions nu of any weight j < k,
    ///
    ///   delta^k(f) = sum b_nu^k f^(k-j) h^(nu) h^(k - len(nu)),
    ///
    /// and differentiating term by term gives the recurrence: b_nu carries
    /// to the same nu (from the f derivative), to each raised partition
    /// with factor nu_part, and to nu plus a unit part with factor
    /// (k - len(nu)). The x table must be the weight k-1 slice.
    #[test]
    fn general_f_recurrence_agrees_on_slice_and_on_x_squared() {
        let k_max = 8u32;
        let mut rows: Vec<BTreeMap<Partition, BigUint>> = Vec::new();
        let mut first = BTreeMap::new();
        first.insert(Partition::empty(), BigUint::one());
        rows.push(first);
        for k in 1..k_max {
            let prev = &rows[k as usize - 1];
            let mut next: BTreeMap<Partition, BigUint> = BTreeMap::new();
            for (nu, b) in prev {
                *next.entry(nu.clone()).or_insert_with(BigUint::zero) += b;
                for part in 1..=nu.weight() as u32 {
                    let m = nu.multiplicity(part);
                    if m == 0 {
                        continue;
                    }
                    *next.entry(nu.raise_part(part).unwrap()).or_insert_with(BigUint::zero) +=
                        b * BigUint::from(m);
                }
                let factor = k as u64 - nu.length() as u64;
                *next.entry(nu.add_unit_part()).or_insert_with(BigUint::zero) +=
                    b * BigUint::from(factor);
            }
            rows.push(next);
        }

        // Hand checked small values.
        let b = |k: u32, parts: &[u32]| {
            rows[k as usize - 1]
                .get(&Partition::from_parts(parts).unwrap())
                .cloned()
                .unwrap_or_else(BigUint::zero)
        };
        assert_eq!(b(1, &[]), BigUint::from(1u32));
        assert_eq!(b(2, &[1]), BigUint::from(1u32));
        assert_eq!(b(3, &[]), BigUint::from(1u32));
        assert_eq!(b(3, &[1]), BigUint::from(3u32));
        assert_eq!(b(3, &[2]), BigUint::from(1u32));
        assert_eq!(b(3, &[1, 1]), BigUint::from(1u32));

        // The x table is the weight k-1 slice.
        let table = PartitionCoeffTable::new(k_max).unwrap();
        for k in 1..=k_max {
            for (mu, c) in table.row(k) {
                assert_eq!(b(k, &mu.parts()), c, "slice mismatch at k = {k}");
            }
        }

        // Full expansion of delta^k(x^2) against direct iteration.
        let field = FieldContext::rationals();
        let ctx = AhContext::new(Poly::parse(&field, "x^2 + 1").unwrap()).unwrap();
        let f = Poly::parse(&field, "x^2").unwrap();
        let h = ctx.h();
        let mut derivs = vec![h.clone()];
        for _ in 1..k_max {
            derivs.push(derivs.last().unwrap().derivative());
        }
        for k in 1..=k_max {
            let mut acc = Poly::zero(&field);
            for (nu, bc) in &rows[k as usize - 1] {
                let j = nu.weight();
                let f_order = k as u64 - j;
                let f_deriv = f.derivative_k(f_order as u32);
                if f_deriv.is_zero() {
                    continue;
                }
                let mut term =
                    Poly::constant(Scalar::from_biguint(&field, bc));
                term = &term * &f_deriv;
                for part in nu.parts() {
                    term = &term * &derivs[part as usize];
                }
                term = &term * &h.pow(k - nu.length());
                acc = &acc + &term;
            }
            assert_eq!(acc, ctx.delta_k(&f, k), "general f mismatch at k = {k}");
        }
    }
}
