use k3_periods::mp_series::*;
use rug::Integer;

/// Independent evaluation of `2²²Θ` with i128 coefficients, building every
/// product `A^{21−k}B^k` directly from 21 factors.
fn naive_theta(order: usize) -> Vec<i128> {
    let mut a = vec![0i128; order + 1];
    let mut b = vec![0i128; order + 1];
    for n in -30i64..=30 {
        let k = (n * n) as usize;
        if k <= order {
            a[k] += 1;
            b[k] += if n % 2 == 0 { 1 } else { -1 };
        }
    }
    let mul = |x: &[i128], y: &[i128]| {
        let mut z = vec![0i128; order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                z[i + j] += x[i] * y[j];
            }
        }
        z
    };
    let mut total = vec![0i128; order + 1];
    for (k, c) in THETA_COMBINATION {
        let mut p = vec![0i128; order + 1];
        p[0] = 1;
        for i in 0..21 {
            p = mul(&p, if i < k { &b } else { &a });
        }
        for i in 0..=order {
            total[i] += c as i128 * p[i];
        }
    }
    total
}

#[test]
fn theta_agrees_with_naive_expansion() {
    let order = 60;
    let naive = naive_theta(order);
    let theta = theta_series(order).unwrap();
    for k in 0..=order {
        assert_eq!(naive[k] % (1 << 22), 0);
        assert_eq!(*theta.coeff(k), Integer::from(naive[k] >> 22), "k = {k}");
    }
}

#[test]
fn divisibility_to_order_500() {
    let theta = theta_series(500).unwrap();
    assert_eq!(theta.order(), 500);
    assert_eq!(theta.coeff(0), &-1);
}

#[test]
fn theta_majorized_by_representation_counts() {
    let theta = theta_series(40).unwrap();
    let r = r21_series(40);
    for k in 0..=40 {
        assert!(Integer::from(theta.coeff(k).abs_ref()) <= Integer::from(r.coeff(k) * 6u32));
    }
}

#[test]
fn convolution_matches_enumeration() {
    let r = r21_series(6);
    for k in 0..=6 {
        assert_eq!(r.coeff(k), &r21_brute_force(k));
        assert_eq!(r21(k), r21_brute_force(k));
    }
}
