use pwrot::casestudy::{golden_rescale, pentagon_center_periods, q_orbit_returns, GoldenContext};
use pwrot::{Error, Sign};

#[test]
fn p4_period_with_the_plain_stepper() {
    let g = GoldenContext::new().unwrap();
    let p4 = g.pentagon_center(4);
    let mut z = g.map.step(&p4);
    let mut n = 1u64;
    while z != p4 {
        assert!(n < 5000);
        z = g.map.step(&z);
        n += 1;
    }
    assert_eq!(n, 1388);
    assert_ne!(g.map.iterate(&p4, 1338), p4);
    assert_eq!(g.map.iterate(&p4, 1388), p4);
}

#[test]
fn pentagon_periods_follow_the_recurrence() {
    let rows = pentagon_center_periods(6, 1_000_000).unwrap();
    let p: Vec<u64> = rows.iter().map(|r| r.1.unwrap()).collect();
    assert_eq!(p, vec![1, 7, 38, 232, 1388, 8332, 49988]);
    for n in 1..6 {
        let sign: i64 = if n % 2 == 0 { 4 } else { -4 };
        assert_eq!(p[n + 1] as i64, 6 * p[n] as i64 + sign);
    }
}

#[test]
fn pentagon_centers_stay_off_the_line() {
    let g = GoldenContext::new().unwrap();
    for n in 0..5 {
        let p = g.pentagon_center(n);
        assert_eq!(p.sign_im(), Sign::Positive);
        let rec = g.map.minimal_period(&p, 100_000).unwrap();
        assert!(rec.period.is_some());
        assert!(rec.iterates_on_line.is_empty());
    }
}

#[test]
fn q_returns_in_phi_basis() {
    let got: Vec<(u64, String)> =
        q_orbit_returns(220).unwrap().into_iter().map(|(i, v)| (i, v.format_phi())).collect();
    let want = [
        (0, "-phi"),
        (3, "1 + phi"),
        (10, "phi"),
        (15, "-2 + phi"),
        (38, "-3 + phi"),
        (48, "-3 + 3*phi"),
        (53, "-5 + 3*phi"),
        (78, "-7 + 5*phi"),
        (83, "-9 + 5*phi"),
        (93, "-9 + 7*phi"),
        (220, "-10 + 7*phi"),
    ];
    let want: Vec<(u64, String)> = want.iter().map(|(i, s)| (*i, s.to_string())).collect();
    assert_eq!(got, want);
}

#[test]
fn rescaling_fixes_q_and_contracts() {
    let g = GoldenContext::new().unwrap();
    assert_eq!(golden_rescale(&g.q).unwrap(), g.q);
    let (a, b) = (g.p0.clone(), g.s.clone());
    let lhs = (&golden_rescale(&a).unwrap() - &golden_rescale(&b).unwrap()).norm_sq();
    let rhs = &(&g.r_scale * &g.r_scale) * &(&a - &b).norm_sq();
    assert_eq!(lhs, rhs);
    assert_eq!(g.pentagon_center(1), golden_rescale(&g.p0).unwrap());
    let other = pwrot::make_field(1, 5).unwrap();
    assert!(matches!(golden_rescale(&other.one()), Err(Error::WrongContext(_))));
}
