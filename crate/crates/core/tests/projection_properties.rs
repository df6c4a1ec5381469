use proptest::prelude::*;
use vi_core::linalg::{dist, dot, sub};
use vi_core::FeasibleSet;

const N: usize = 6;

fn vec_in(lo: f64, hi: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(lo..hi, N)
}

fn sets() -> impl Strategy<Value = FeasibleSet> {
    prop_oneof![
        Just(FeasibleSet::orthant(N)),
        (vec_in(-5.0, 0.0), vec_in(0.0, 5.0)).prop_map(|(lo, w)| {
            let hi = lo.iter().zip(&w).map(|(l, w)| l + w).collect();
            FeasibleSet::new_box(lo, hi).unwrap()
        }),
    ]
}

fn tol(scale: f64) -> f64 {
    1e-12 * (1.0 + scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn projection_is_idempotent_and_feasible(set in sets(), x in vec_in(-10.0, 10.0)) {
        let p = set.project(&x).unwrap();
        prop_assert!(set.contains(&p));
        prop_assert_eq!(set.project(&p).unwrap(), p);
    }

    #[test]
    fn projection_is_nonexpansive(set in sets(), x in vec_in(-10.0, 10.0), y in vec_in(-10.0, 10.0)) {
        let (px, py) = (set.project(&x).unwrap(), set.project(&y).unwrap());
        prop_assert!(dist(&px, &py) <= dist(&x, &y) + tol(dist(&x, &y)));
    }

    #[test]
    fn projection_is_firmly_nonexpansive(set in sets(), x in vec_in(-10.0, 10.0), y in vec_in(-10.0, 10.0)) {
        let (px, py) = (set.project(&x).unwrap(), set.project(&y).unwrap());
        let dp = sub(&px, &py);
        let rhs = dot(&dp, &sub(&x, &y));
        prop_assert!(dot(&dp, &dp) <= rhs + tol(rhs.abs()));
    }

    #[test]
    fn obtuse_angle(set in sets(), x in vec_in(-10.0, 10.0), z in vec_in(-10.0, 10.0)) {
        let px = set.project(&x).unwrap();
        let z = set.project(&z).unwrap();
        let angle = dot(&sub(&x, &px), &sub(&z, &px));
        prop_assert!(angle <= tol(dist(&x, &px) * dist(&z, &px)));
    }

    #[test]
    fn residual_monotone_in_step(
        set in sets(),
        x in vec_in(-10.0, 10.0),
        d in vec_in(-10.0, 10.0),
        i in 0usize..3,
        j in 0usize..3,
    ) {
        let steps = [0.01, 0.1, 1.0];
        let (t1, t2) = (steps[i.max(j)], steps[i.min(j)]);
        let x = set.project(&x).unwrap();
        let r = |t: f64| {
            let moved: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a - t * b).collect();
            dist(&set.project(&moved).unwrap(), &x)
        };
        let (r1, r2) = (r(t1), r(t2));
        prop_assert!(r1 + tol(r1) >= r2);
        prop_assert!(r1 / t1 <= r2 / t2 + tol(r2 / t2));
    }

    #[test]
    fn fixed_points_do_not_depend_on_the_step(
        set in sets(),
        x in vec_in(-10.0, 10.0),
        noise in vec_in(-1.0, 1.0),
        planted in any::<bool>(),
    ) {
        // x - P(x) is a normal direction at P(x), so H = P(x) - x makes P(x)
        // a solution; random perturbations usually do not.
        let x_star = set.project(&x).unwrap();
        let mut h = sub(&x_star, &x);
        if !planted {
            h.iter_mut().zip(&noise).for_each(|(a, b)| *a += b);
        }
        let is_fixed = |t: f64| {
            let m: Vec<f64> = x_star.iter().zip(&h).map(|(a, b)| a - t * b).collect();
            set.project(&m).unwrap() == x_star
        };
        let fixed: Vec<bool> = [0.01, 0.1, 1.0].into_iter().map(is_fixed).collect();
        prop_assert!(fixed.iter().all(|&f| f == fixed[0]), "{:?}", fixed);
        if planted {
            prop_assert!(fixed[0]);
        }
    }
}
