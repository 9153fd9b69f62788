use frieze_core::cartan::{graph_from_quiddity, reflect, Root};
use frieze_core::chebyshev::{v_eval, v_polynomial};
use frieze_core::dissection::{build_dissection, enumerate_p_angulations};
use frieze_core::strip::{from_strip, to_strip, InfiniteFriezeView, PeriodicQuiddity};
use frieze_core::{Error, FieldContext, FieldElement, Sign};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::sync::Arc;

fn element(ctx: &Arc<FieldContext>, coeffs: &[i64]) -> FieldElement {
    FieldElement::from_i64_coeffs(ctx, &coeffs[..ctx.degree().min(coeffs.len())])
}

fn arb_l() -> impl Strategy<Value = u32> {
    3u32..=24
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(l in arb_l(), a in prop::collection::vec(-50i64..50, 12), b in prop::collection::vec(-50i64..50, 12), c in prop::collection::vec(-50i64..50, 12)) {
        let ctx = FieldContext::new(l).unwrap();
        let (x, y, z) = (element(&ctx, &a), element(&ctx, &b), element(&ctx, &c));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &FieldElement::one(&ctx), x.clone());
        let f = x.to_f64() * y.to_f64();
        prop_assert!(((&x * &y).to_f64() - f).abs() <= 1e-6 * (1.0 + f.abs()));
    }

    #[test]
    fn sign_agrees_with_float(l in arb_l(), a in prop::collection::vec(-1000i64..1000, 12)) {
        let ctx = FieldContext::new(l).unwrap();
        let x = element(&ctx, &a);
        let f = x.to_f64();
        let s = x.sign();
        if x.is_zero() {
            prop_assert_eq!(s, Sign::Zero);
        } else if f.abs() > 1e-6 {
            prop_assert_eq!(s, if f > 0.0 { Sign::Positive } else { Sign::Negative });
        } else {
            prop_assert_ne!(s, Sign::Zero);
        }
    }

    #[test]
    fn near_cancellation_is_certified(l in 5u32..=20, k in 1u32..6) {
        // λ^k minus its integer part rounded down: strictly between 0 and 1 (or 0 exactly).
        let ctx = FieldContext::new(l).unwrap();
        let x = FieldElement::lambda(&ctx).pow(k);
        let floor = x.to_f64().floor() as i64;
        let d = &x - &FieldElement::from_int(&ctx, floor);
        prop_assert_ne!(d.sign(), Sign::Negative);
        let d1 = &d - &FieldElement::one(&ctx);
        prop_assert_eq!(d1.sign(), Sign::Negative);
    }

    #[test]
    fn unimodular_rule(l in 3u32..=8, word in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..6)) {
        let ctx = FieldContext::new(l).unwrap();
        let q: Vec<FieldElement> = word.iter().map(|c| element(&ctx, c)).collect();
        let t = q.len() as i64;
        let f = |i: i64, j: i64| -> FieldElement {
            // Propagation array from an arbitrary periodic quiddity word.
            let mut prev = FieldElement::zero(&ctx);
            let mut cur = FieldElement::one(&ctx);
            for k in i + 1..j {
                let next = &(&cur * &q[k.rem_euclid(t) as usize]) - &prev;
                prev = cur;
                cur = next;
            }
            if j == i { prev } else { cur }
        };
        for i in -3..3 {
            for j in i + 2..i + 12 {
                let det = &(&f(i, j) * &f(i + 1, j + 1)) - &(&f(i, j + 1) * &f(i + 1, j));
                prop_assert!(det.is_one(), "diamond at ({}, {})", i, j);
            }
        }
    }

    #[test]
    fn infinite_ptolemy(p in 3u32..=8, word in prop::collection::vec(0i64..4, 1..5), i in -4i64..4, d1 in 0i64..5, d2 in 0i64..5, d3 in 0i64..5) {
        let q = PeriodicQuiddity::with_nonnegative(p, word).unwrap();
        let v = InfiniteFriezeView::new(q);
        let (j, k, l) = (i + d1, i + d1 + d2, i + d1 + d2 + d3);
        let lhs = &v.entry(i, k) * &v.entry(j, l);
        let rhs = &(&v.entry(i, l) * &v.entry(j, k)) + &(&v.entry(i, j) * &v.entry(k, l));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflections_are_involutions(word in prop::collection::vec(0i64..4, 1..4), p in 3u32..=8, a in -5i64..5, x in prop::collection::vec(-20i64..20, 4)) {
        let q = PeriodicQuiddity::with_nonnegative(p, word).unwrap();
        let g = graph_from_quiddity(&q);
        let ctx = g.ctx().clone();
        let r = Root::new(element(&ctx, &x[..2]), element(&ctx, &x[2..]));
        for i in [1usize, 2] {
            let b = g.rho(i, a);
            prop_assert_eq!(reflect(&g, b, i, &reflect(&g, a, i, &r)), r.clone());
        }
    }

    #[test]
    fn dichotomy(p in 3u32..=6, word in prop::collection::vec(1i64..=4, 1..=4)) {
        let q = PeriodicQuiddity::new(p, word).unwrap();
        let v = InfiniteFriezeView::new(q.clone());
        let h = 4 * q.period() * p as usize;
        match v.positivity_check(h) {
            Err(Error::NotAnInfiniteFrieze { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected error {}", e),
            Ok(_) => {
                let s = to_strip(&v, None).unwrap();
                let back = from_strip(&s, Some(h)).unwrap();
                prop_assert_eq!(back.quiddity, q);
            }
        }
    }
}

#[test]
fn chebyshev_identities() {
    for n in 0..=40 {
        let (vm, v, vp) = (
            v_polynomial(n - 1).unwrap().poly,
            v_polynomial(n).unwrap().poly,
            v_polynomial(n + 1).unwrap().poly,
        );
        let d = v.mul(&v).sub(&vm.mul(&vp));
        assert_eq!(d.to_string(), "1", "n = {n}");
    }
    for n in 0..=30i64 {
        let ctx = FieldContext::new(n as u32 + 2).unwrap();
        assert!(v_eval(n, &FieldElement::lambda(&ctx)).unwrap().is_one());
    }
    for q in 2..=20u32 {
        let ctx = FieldContext::new(q).unwrap();
        let lam = FieldElement::lambda(&ctx);
        for j in 0..=(q as i64 - 2) {
            assert_eq!(v_eval(j, &lam).unwrap(), v_eval(q as i64 - 2 - j, &lam).unwrap());
        }
    }
}

#[test]
fn chebyshev_second_kind() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..50 {
        let t: f64 = rng.gen_range(-0.999..0.999);
        let theta = f64::acos(t);
        for n in 0..=12i64 {
            let u = ((n as f64 + 1.0) * theta).sin() / theta.sin();
            let v = v_polynomial(n).unwrap().poly.eval_f64(2.0 * t);
            assert!((u - v).abs() < 1e-9, "n = {n}, t = {t}");
        }
    }
}

fn fuss_catalan(n: usize, p: usize) -> u128 {
    if (n - 2) % (p - 2) != 0 {
        return 0;
    }
    let k = ((n - 2) / (p - 2)) as u128;
    let m = (p - 1) as u128 * k;
    let mut binom: u128 = 1;
    for i in 0..k {
        binom = binom * (m - i) / (i + 1);
    }
    binom / ((p as u128 - 2) * k + 1)
}

/// All uniform p-angulations by brute force over subsets of diagonals.
fn brute_force(n: usize, p: usize) -> usize {
    let diags: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 2..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a == 0 && b == n - 1))
        .collect();
    let need = (n - 2) / (p - 2) - 1;
    let mut count = 0;
    let mut pick = Vec::new();
    fn rec(start: usize, need: usize, diags: &[(usize, usize)], pick: &mut Vec<(usize, usize)>, n: usize, p: usize, count: &mut usize) {
        if pick.len() == need {
            if let Ok(d) = build_dissection(n, pick) {
                if d.uniform_cell_size() == Some(p) {
                    *count += 1;
                }
            }
            return;
        }
        for k in start..diags.len() {
            pick.push(diags[k]);
            rec(k + 1, need, diags, pick, n, p, count);
            pick.pop();
        }
    }
    rec(0, need, &diags, &mut pick, n, p, &mut count);
    count
}

#[test]
fn enumeration_counts() {
    for p in 3..=6 {
        for n in 3..=10 {
            let got = enumerate_p_angulations(n, p).unwrap().len();
            assert_eq!(got as u128, fuss_catalan(n, p), "n = {n}, p = {p}");
            if n <= 8 && (n - 2) % (p - 2) == 0 {
                assert_eq!(got, brute_force(n, p), "n = {n}, p = {p}");
            }
        }
    }
    assert_eq!(enumerate_p_angulations(9, 3).unwrap().len(), 429);
}
