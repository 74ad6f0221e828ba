use super::gamma::gamma;
use crate::error::{Error, Result};
use crate::scalar::Real;

// B_2, B_4, ..., B_26
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

const EM_CUTOFF: usize = 16;

/// Riemann zeta function on its convergent half-line s > 1.
///
/// ```
/// let z = lrkitaev::specfun::riemann_zeta(2.0_f64).unwrap();
/// assert!((z - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-14);
/// ```
pub fn riemann_zeta<T: Real>(s: T) -> Result<T> {
    if !(s > T::one()) {
        return Err(Error::Domain(format!("zeta requires s > 1, got {s}")));
    }
    Ok(zeta_real(s))
}

/// Zeta on the whole real line except the pole at 1.
pub(crate) fn zeta_real<T: Real>(s: T) -> T {
    if s == T::one() {
        return T::infinity();
    }
    if s >= T::lit(0.5) {
        return euler_maclaurin(s);
    }
    if s == T::zero() {
        return T::lit(-0.5);
    }
    if s == s.floor() && (s / T::lit(2.0)) == (s / T::lit(2.0)).floor() {
        return T::zero();
    }
    // functional equation, with sin(pi s / 2) reduced modulo its period
    let one = T::one();
    let four = T::lit(4.0);
    let r = s - four * (s / four).round();
    let pi = T::PI();
    T::lit(2.0).powf(s) * pi.powf(s - one) * (pi * r / T::lit(2.0)).sin() * gamma(one - s)
        * euler_maclaurin(one - s)
}

fn euler_maclaurin<T: Real>(s: T) -> T {
    let n = T::from_count(EM_CUTOFF);
    let mut head = T::zero();
    for j in 1..EM_CUTOFF {
        head += T::from_count(j).powf(-s);
    }
    let mut sum = head + n.powf(T::one() - s) / (s - T::one()) + T::lit(0.5) * n.powf(-s);
    // rising product s (s+1) ... (s+2j-2) and (2j)!
    let mut rising = s;
    let mut fact2j = T::lit(2.0);
    let mut npow = n.powf(-s - T::one());
    for (j, &b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = T::lit(b) / fact2j * rising * npow;
        sum += term;
        if term.abs() <= T::epsilon() * sum.abs() * T::lit(0.01) {
            break;
        }
        let jj = T::from_count(2 * j + 2);
        rising = rising * (s + jj - T::one()) * (s + jj);
        fact2j = fact2j * (jj + T::one()) * (jj + T::lit(2.0));
        npow /= n * n ;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn classical_values() {
        assert!((riemann_zeta(2.0_f64).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((riemann_zeta(4.0_f64).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!(riemann_zeta(1.0_f64).is_err());
        assert!(riemann_zeta(0.5_f64).is_err());
    }

    #[test]
    fn three_halves_against_tail_corrected_sum() {
        // partial sum to M plus the Euler-Maclaurin tail of the remainder
        let s = 1.5_f64;
        let m = 200_000usize;
        let mut acc = 0.0_f64;
        let mut comp = 0.0_f64;
        for r in (1..=m).rev() {
            let y = (r as f64).powf(-s) - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        let mf = m as f64;
        let tail = mf.powf(1.0 - s) / (s - 1.0) - 0.5 * mf.powf(-s) + s / 12.0 * mf.powf(-s - 1.0);
        let reference = acc + tail;
        let z = riemann_zeta(s).unwrap();
        assert!((z - reference).abs() < 1e-13, "{z} vs {reference}");
        assert!((z - 2.612_375_348_685_488).abs() < 1e-13);
    }

    #[test]
    fn continuation_values() {
        assert!((zeta_real(0.0_f64) + 0.5).abs() < 1e-15);
        assert!((zeta_real(-1.0_f64) + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta_real(-3.0_f64) - 1.0 / 120.0).abs() < 1e-14);
        assert_eq!(zeta_real(-4.0_f64), 0.0);
        assert!((zeta_real(0.5_f64) + 1.460_354_508_809_586_8).abs() < 1e-13);
        assert!((zeta_real(-0.5_f64) + 0.207_886_224_977_354_57).abs() < 1e-13);
    }

    #[test]
    fn single_precision_is_usable() {
        let z = riemann_zeta(2.0_f32).unwrap();
        assert!((z - 1.644_934).abs() < 1e-5);
    }
}
