use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use pwrot::{make_field, CycloNum, Field, Sign};

const PARAMS: [(u32, u32); 4] = [(4, 5), (11, 12), (3, 7), (1, 8)];

fn field(i: usize) -> Field {
    let (p, q) = PARAMS[i % PARAMS.len()];
    make_field(p, q).unwrap()
}

fn element(f: &Field, nums: &[i64], den: i64) -> CycloNum {
    let d = f.degree();
    let num: Vec<BigInt> = (0..d).map(|j| BigInt::from(nums[j % nums.len()])).collect();
    f.from_int_parts(&num, BigInt::from(den))
}

fn arb_parts() -> impl Strategy<Value = (Vec<i64>, i64)> {
    (prop::collection::vec(-50i64..50, 1..25), 1i64..40)
}

/// Φ_m by dividing x^m − 1 by Φ_d for every proper divisor d, computed here
/// independently of the library.
fn cyclotomic(m: usize) -> Vec<i64> {
    fn div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
        let mut rem = num.to_vec();
        let dl = den.len();
        let mut out = vec![0; num.len() - dl + 1];
        for i in (0..out.len()).rev() {
            let c = rem[i + dl - 1] / den[dl - 1];
            out[i] = c;
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
        assert!(rem.iter().all(|&r| r == 0));
        out
    }
    let mut p = vec![0i64; m + 1];
    p[0] = -1;
    p[m] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = div_exact(&p, &cyclotomic(d));
        }
    }
    p
}

#[test]
fn phi_20_matches_brute_force_oracle() {
    let f = make_field(4, 5).unwrap();
    assert_eq!(f.conductor(), 20);
    assert_eq!(f.degree(), 8);
    let oracle = cyclotomic(20);
    assert_eq!(oracle, vec![1, 0, -1, 0, 1, 0, -1, 0, 1]);
    let lib: Vec<i64> = f.phi_m().iter().map(|c| i64::try_from(c).unwrap()).collect();
    assert_eq!(lib, oracle);
}

#[test]
fn phi_m_matches_oracle_across_conductors() {
    for (p, q) in [(1, 3), (3, 7), (11, 12), (1, 8), (2, 9), (5, 11)] {
        let f = make_field(p, q).unwrap();
        let lib: Vec<i64> = f.phi_m().iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(lib, cyclotomic(f.conductor()), "m = {}", f.conductor());
    }
}

#[test]
fn lambda_has_order_exactly_q() {
    for i in 0..PARAMS.len() {
        let f = field(i);
        let lam = f.lambda();
        let q = f.q();
        for j in 1..q {
            assert_ne!(lam.pow(j), f.one(), "lambda^{j} = 1");
        }
        assert_eq!(lam.pow(q), f.one());
    }
}

#[test]
fn lambda_embedding_for_golden_case() {
    let f = make_field(4, 5).unwrap();
    let a = f.lambda().approx(64);
    assert!((a.re_mid_f64() - 0.309_016_994_374_947_4).abs() < 1e-15);
    assert!((a.im_mid_f64() + 0.951_056_516_295_153_5).abs() < 1e-15);
    let phi = f.golden().unwrap();
    let z = &(&phi * &phi) - &(&phi + &f.one());
    assert!(z.approx(80).contains_zero());
    assert!(z.is_zero());
}

fn sign_of(x: &BigRational) -> Sign {
    use num_traits::Signed;
    if x.is_positive() {
        Sign::Positive
    } else if x.is_negative() {
        Sign::Negative
    } else {
        Sign::Zero
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn embedding_is_approximately_multiplicative(fi in 0usize..4, a in arb_parts(), b in arb_parts(), bits in 20u32..120) {
        let f = field(fi);
        let x = element(&f, &a.0, a.1);
        let y = element(&f, &b.0, b.1);
        let prod = (&x * &y).approx(bits);
        prop_assert!(prod.overlaps(&x.approx(bits).mul(&y.approx(bits))));
    }

    #[test]
    fn conj_is_a_ring_homomorphism(fi in 0usize..4, a in arb_parts(), b in arb_parts()) {
        let f = field(fi);
        let x = element(&f, &a.0, a.1);
        let y = element(&f, &b.0, b.1);
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x.clone());
    }

    #[test]
    fn signs_agree_with_intervals(fi in 0usize..4, a in arb_parts()) {
        let f = field(fi);
        let x = element(&f, &a.0, a.1);
        let iv = x.approx(64);
        let zero = BigRational::from_integer(0.into());
        if iv.re_lo > zero || iv.re_hi < zero {
            prop_assert_eq!(x.sign_re(), sign_of(&iv.re_lo));
        }
        if iv.im_lo > zero || iv.im_hi < zero {
            prop_assert_eq!(x.sign_im(), sign_of(&iv.im_lo));
        }
        let re = x.real_part();
        prop_assert_eq!(re.sign_of_real().unwrap(), x.sign_re());
    }

    #[test]
    fn canonical_zero(fi in 0usize..4, a in arb_parts()) {
        let f = field(fi);
        let x = element(&f, &a.0, a.1);
        let z = &x - &x;
        prop_assert!(z.numerators().iter().all(|c| *c == BigInt::from(0)));
        prop_assert_eq!(z, f.zero());
    }

    #[test]
    fn inverse_and_division(fi in 0usize..4, a in arb_parts()) {
        let f = field(fi);
        let x = element(&f, &a.0, a.1);
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.inverse().unwrap(), f.one());
    }
}
