//! Randomized algebraic invariants, spanning the crate bottom to top:
//! scalar field axioms, polynomial division, the Ore reordering identity,
//! derivation composition, constructor relation checks, induced module
//! action identities, and serialization round trips.

use ahlib::*;
use proptest::prelude::*;

/// Small assortment of coefficient fields exercised by every property.
fn field_strategy() -> impl Strategy<Value = FieldContext> {
    prop_oneof![
        Just(FieldContext::rationals()),
        Just(FieldContext::prime_field(2).unwrap()),
        Just(FieldContext::prime_field(3).unwrap()),
        Just(FieldContext::prime_field(5).unwrap()),
    ]
}

fn scalar_in(field: &FieldContext, raw: i64) -> Scalar {
    Scalar::from_i64(field, raw)
}

fn poly_in(field: &FieldContext, raw: &[i64]) -> Poly {
    Poly::from_coeffs(field, raw.iter().map(|&c| scalar_in(field, c)).collect())
}

/// A nonzero h of degree >= 1 built from raw coefficients.
fn h_in(field: &FieldContext, raw: &[i64]) -> Poly {
    let mut coeffs: Vec<Scalar> = raw.iter().map(|&c| scalar_in(field, c)).collect();
    coeffs.push(Scalar::one(field));
    Poly::from_coeffs(field, coeffs)
}

fn elem_in(ctx: &AhContext, raw: &[(u8, u8, i64)]) -> AhElement {
    let mut out = AhElement::zero(ctx);
    for &(m, n, c) in raw {
        let mono = AhElement::monomial(
            ctx,
            scalar_in(ctx.field(), c),
            (m % 4) as u32,
            (n % 4) as u32,
        );
        out = &out + &mono;
    }
    out
}

fn raw_elem() -> impl Strategy<Value = Vec<(u8, u8, i64)>> {
    prop::collection::vec((0u8..4, 0u8..4, -6i64..7), 0..5)
}

fn raw_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..7, 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(field in field_strategy(), a in -20i64..21, b in -20i64..21, c in -20i64..21) {
        let (a, b, c) = (scalar_in(&field, a), scalar_in(&field, b), scalar_in(&field, c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), Scalar::zero(&field));
        if !a.is_zero() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(&a * &inv, Scalar::one(&field));
        }
    }

    #[test]
    fn poly_division_invariant(field in field_strategy(), f in raw_poly(), g in raw_poly()) {
        let f = poly_in(&field, &f);
        let g = poly_in(&field, &g);
        if g.is_zero() {
            prop_assert!(f.divrem(&g).is_err());
        } else {
            let (q, r) = f.divrem(&g).unwrap();
            prop_assert_eq!(&(&q * &g) + &r, f);
            prop_assert!(r.degree() < g.degree());
        }
    }

    #[test]
    fn multiplication_is_associative(
        field in field_strategy(),
        h in raw_poly(),
        a in raw_elem(),
        b in raw_elem(),
        c in raw_elem(),
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let (a, b, c) = (elem_in(&ctx, &a), elem_in(&ctx, &b), elem_in(&ctx, &c));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(
        field in field_strategy(),
        h in raw_poly(),
        a in raw_elem(),
        b in raw_elem(),
        c in raw_elem(),
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let (a, b, c) = (elem_in(&ctx, &a), elem_in(&ctx, &b), elem_in(&ctx, &c));
        let left = a.multiply(&(&b + &c)).unwrap();
        let right = &a.multiply(&b).unwrap() + &a.multiply(&c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn commutators_fall_in_the_h_ideal(
        field in field_strategy(),
        h in raw_poly(),
        a in raw_elem(),
        b in raw_elem(),
    ) {
        // The quotient by the two-sided ideal generated by h is
        // commutative, and h is normal, so [a, b] is a left multiple of h.
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let (a, b) = (elem_in(&ctx, &a), elem_in(&ctx, &b));
        let comm = a.commutator(&b).unwrap();
        let h_elem = AhElement::from_poly(&ctx, ctx.h());
        prop_assert!(h_elem.left_divide(&comm).unwrap().is_some());
    }

    #[test]
    fn commutator_with_y_is_the_derivation(
        field in field_strategy(),
        h in raw_poly(),
        r in raw_poly(),
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let r = poly_in(&field, &r);
        let y = AhElement::y(&ctx);
        let re = AhElement::from_poly(&ctx, &r);
        let comm = y.commutator(&re).unwrap();
        prop_assert_eq!(comm, AhElement::from_poly(&ctx, &ctx.delta(&r)));
    }

    #[test]
    fn reordering_identity(
        field in field_strategy(),
        h in raw_poly(),
        r in raw_poly(),
        k in 0u32..5,
    ) {
        // y^k r = sum_j C(k, j) delta^j(r) y^(k-j).
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let r = poly_in(&field, &r);
        let lhs = AhElement::y_pow(&ctx, k)
            .multiply(&AhElement::from_poly(&ctx, &r))
            .unwrap();
        let mut rhs = AhElement::zero(&ctx);
        for j in 0..=k {
            let binom = scalar_in(&field, binomial_u64(k, j) as i64);
            let term = AhElement::from_poly(&ctx, &ctx.delta_k(&r, j))
                .scale(&binom)
                .multiply(&AhElement::y_pow(&ctx, k - j))
                .unwrap();
            rhs = &rhs + &term;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivation_composes(
        field in field_strategy(),
        h in raw_poly(),
        r in raw_poly(),
        a in 0u32..4,
        b in 0u32..4,
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let r = poly_in(&field, &r);
        prop_assert_eq!(ctx.delta_k(&ctx.delta_k(&r, a), b), ctx.delta_k(&r, a + b));
    }

    #[test]
    fn delta_x_expansion_matches_direct_application(
        field in field_strategy(),
        h in raw_poly(),
        k in 1u32..7,
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let x = Poly::from_coeffs(&field, vec![Scalar::zero(&field), Scalar::one(&field)]);
        prop_assert_eq!(expand_delta_x(&ctx, k).unwrap(), ctx.delta_k(&x, k));
    }

    #[test]
    fn element_json_round_trip(field in field_strategy(), h in raw_poly(), a in raw_elem()) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let a = elem_in(&ctx, &a);
        let back = AhElement::from_json(&ctx, &a.to_json()).unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn embed_weyl_is_multiplicative(
        field in field_strategy(),
        h in raw_poly(),
        a in raw_elem(),
        b in raw_elem(),
    ) {
        let ctx = AhContext::new(h_in(&field, &h)).unwrap();
        let (a, b) = (elem_in(&ctx, &a), elem_in(&ctx, &b));
        let prod = a.multiply(&b).unwrap();
        let lhs = embed_weyl(&prod);
        let rhs = embed_weyl(&a).multiply(&embed_weyl(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// C(k, j) as an integer, via Pascal's triangle.
fn binomial_u64(k: u32, j: u32) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..k {
        let mut next = vec![1u64];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    row[j as usize]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn constructor_relations_hold(
        field in field_strategy(),
        hroot in -3i64..4,
        extra in raw_poly(),
        q in raw_poly(),
        n in 0u32..4,
    ) {
        // h built to vanish at a chosen lambda so that n_module applies.
        let lam = scalar_in(&field, hroot);
        let linear = Poly::from_coeffs(&field, vec![-&lam, Scalar::one(&field)]);
        let h = &linear * &h_in(&field, &extra);
        let ctx = AhContext::new(h).unwrap();
        let q = poly_in(&field, &q);
        let m = n_module(&ctx, &lam, &q, n).unwrap();
        prop_assert!(m.verify_relation());
        prop_assert_eq!(m.dim(), (n + 1) as usize);
        let o = one_dim(&ctx, &lam, &q.evaluate(&lam).unwrap()).unwrap();
        prop_assert!(o.verify_relation());
    }

    #[test]
    fn induced_action_satisfies_the_relation(
        hroot in -3i64..4,
        extra in raw_poly(),
        terms in prop::collection::vec((0u32..4, raw_poly()), 0..4),
    ) {
        // On U(m): y (x v) - x (y v) = h v, whatever f is.
        let field = FieldContext::rationals();
        let lam = scalar_in(&field, hroot);
        let ctx = AhContext::new(h_in(&field, &extra)).unwrap();
        let f = Poly::from_coeffs(&field, vec![-&lam, Scalar::one(&field)]);
        let terms: Vec<(u32, Poly)> = terms
            .into_iter()
            .map(|(k, r)| (k, poly_in(&field, &r)))
            .collect();
        let v = InducedElement::from_terms(&ctx, &f, &terms).unwrap();
        let lhs = &v.act_x().act_y() - &v.act_y().act_x();
        prop_assert_eq!(lhs, v.act_poly(ctx.h()));

        // Acting by a full element agrees with composing the x/y actions.
        let a = AhElement::monomial(&ctx, Scalar::one(&field), 2, 1);
        let via_act_ah = v.act_ah(&a);
        let composed = v.act_y().act_x().act_x();
        prop_assert_eq!(via_act_ah, composed);
    }

    #[test]
    fn quotient_hom_intertwines(
        qraw in raw_poly(),
        terms in prop::collection::vec((0u32..5, raw_poly()), 0..4),
    ) {
        // U(Dx) -> N(Dx, q) over h = x^2: the hom respects both actions.
        let field = FieldContext::rationals();
        let ctx = AhContext::new(poly_in(&field, &[0, 0, 1])).unwrap();
        let f = poly_in(&field, &[0, 1]);
        let q = poly_in(&field, &qraw);
        let target = n_quotient_target(&ctx, &f, &q).unwrap();
        let terms: Vec<(u32, Poly)> = terms
            .into_iter()
            .map(|(k, r)| (k, poly_in(&field, &r)))
            .collect();
        let v = InducedElement::from_terms(&ctx, &f, &terms).unwrap();
        let img = n_quotient_hom(&v, &q).unwrap();
        let img_x = n_quotient_hom(&v.act_x(), &q).unwrap();
        let img_y = n_quotient_hom(&v.act_y(), &q).unwrap();
        prop_assert_eq!(img_x, target.x_mat().mul_vec(&img));
        prop_assert_eq!(img_y, target.y_mat().mul_vec(&img));
    }

    #[test]
    fn module_json_round_trip(
        hroot in -3i64..4,
        extra in raw_poly(),
        q in raw_poly(),
        n in 0u32..3,
    ) {
        let field = FieldContext::prime_field(5).unwrap();
        let lam = scalar_in(&field, hroot);
        let linear = Poly::from_coeffs(&field, vec![-&lam, Scalar::one(&field)]);
        let h = &linear * &h_in(&field, &extra);
        let ctx = AhContext::new(h).unwrap();
        let m = n_module(&ctx, &lam, &poly_in(&field, &q), n).unwrap();
        let back = FinModule::from_json(&ctx, &m.to_json()).unwrap();
        prop_assert_eq!(m.x_mat(), back.x_mat());
        prop_assert_eq!(m.y_mat(), back.y_mat());
        prop_assert_eq!(format!("{:?}", m.provenance()), format!("{:?}", back.provenance()));
    }

    #[test]
    fn window_annihilators_die_under_deep_families(dx in 0u32..3, dy in 0u32..3) {
        // For any window, intersecting the bounded annihilators of the
        // depth-n modules down to depth dx + 2 dy leaves nothing.
        let field = FieldContext::rationals();
        let ctx = AhContext::new(poly_in(&field, &[0, 0, 1])).unwrap();
        let lam = Scalar::zero(&field);
        let q = Poly::constant(Scalar::zero(&field));
        let width = ((dx + 1) * (dy + 1)) as usize;
        let mut inter: Option<ScalarMat> = None;
        for n in 0..=(dx + 2 * dy) {
            let m = n_module(&ctx, &lam, &q, n).unwrap();
            let mut rows = ScalarMat::zeros(&field, 0, width);
            for a in ann_bounded(&m, dx, dy) {
                rows.push_row(coords(&a, dx, dy));
            }
            let rows = rows.row_basis();
            inter = Some(match inter {
                None => rows,
                Some(prev) => subspace_intersection(&prev, &rows),
            });
        }
        prop_assert_eq!(inter.unwrap().nrows(), 0);
    }
}

fn coords(a: &AhElement, dx: u32, dy: u32) -> Vec<Scalar> {
    let field = a.context().field();
    let mut out = vec![Scalar::zero(field); ((dx + 1) * (dy + 1)) as usize];
    for (&(m, n), c) in a.terms() {
        out[(m * (dy + 1) + n) as usize] = c.clone();
    }
    out
}
