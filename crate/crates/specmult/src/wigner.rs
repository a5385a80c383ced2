//! Wigner D-matrices for SU(2) irreducible representations in z-y-z Euler
//! angles. Half-integer spins are carried as doubled integers `two_j`.

use num_complex::Complex64;

use crate::linalg::CMatrix;

fn factorial(n: i64) -> f64 {
    debug_assert!(n >= 0);
    (1..=n).map(|k| k as f64).product()
}

/// Wigner little-d entry d^j_{m'm}(beta) by the factorial sum formula.
///
/// All spin arguments are doubled: `two_j`, `two_mp` (row m'), `two_m`.
pub fn little_d(two_j: u32, two_mp: i64, two_m: i64, beta: f64) -> f64 {
    let tj = two_j as i64;
    debug_assert!(two_mp.abs() <= tj && (two_mp - tj) % 2 == 0);
    debug_assert!(two_m.abs() <= tj && (two_m - tj) % 2 == 0);

    let jpm = (tj + two_m) / 2; // j + m
    let jmm = (tj - two_m) / 2; // j - m
    let jpmp = (tj + two_mp) / 2; // j + m'
    let jmmp = (tj - two_mp) / 2; // j - m'
    let mpmm = (two_mp - two_m) / 2; // m' - m

    let prefactor =
        (factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm)).sqrt();

    let (cb, sb) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let s_min = 0.max(-mpmm);
    let s_max = jpm.min(jmmp);
    let mut sum = 0.0;
    for s in s_min..=s_max {
        let sign = if (mpmm + s) % 2 == 0 { 1.0 } else { -1.0 };
        let denom = factorial(jpm - s) * factorial(s) * factorial(mpmm + s) * factorial(jmmp - s);
        // exponents cos^(2j - 2s + m - m'), sin^(m' - m + 2s) are integers
        let cos_exp = (2 * tj - 4 * s + two_m - two_mp) / 2;
        let sin_exp = (two_mp - two_m + 4 * s) / 2;
        sum += sign * cb.powi(cos_exp as i32) * sb.powi(sin_exp as i32) / denom;
    }
    prefactor * sum
}

/// Full Wigner D entry D^j_{m'm}(alpha, beta, gamma) = e^{-i m' a} d^j_{m'm}(b) e^{-i m g}.
pub fn big_d(two_j: u32, two_mp: i64, two_m: i64, alpha: f64, beta: f64, gamma: f64) -> Complex64 {
    let d = little_d(two_j, two_mp, two_m, beta);
    let phase = -0.5 * (two_mp as f64 * alpha + two_m as f64 * gamma);
    Complex64::from_polar(d, phase)
}

/// Representation matrix D^j(g) with rows/columns ordered by descending m
/// (row 1 is m' = +j), matching the lexicographic basis enumeration.
pub fn rep_matrix(two_j: u32, alpha: f64, beta: f64, gamma: f64) -> CMatrix {
    let d = (two_j + 1) as usize;
    CMatrix::from_fn(d, d, |r, c| {
        let two_mp = two_j as i64 - 2 * r as i64;
        let two_m = two_j as i64 - 2 * c as i64;
        big_d(two_j, two_mp, two_m, alpha, beta, gamma)
    })
}
