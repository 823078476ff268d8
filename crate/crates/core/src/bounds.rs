//! Upper bounds on the multicolor Ramsey number of a graph with `m` edges.
//!
//! Every bound is evaluated two ways. The real form uses the unrounded
//! parameters (`d = sqrt(km)` or `d = (m/4)^(1/3)`) in log space; it is what
//! the closed-form identities and asymptotics are checked against. The
//! integer form rounds `d` up, floors `t`/`l`, and yields the exact big
//! integer `N` the constructive procedures are sized against.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// Exact `N` is only materialized when it has at most this many bits.
pub const EXACT_BITS_CAP: f64 = (1u64 << 20) as f64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("the target must have at least one edge")]
    NoEdges,
    #[error("k = {k} colors given; this bound needs k >= {min}")]
    TooFewColors { k: u64, min: u64 },
    #[error("vertex count must be at least 1")]
    NoVertices,
}

pub(crate) fn serialize_big<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn serialize_opt_big<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(b) => serialize_big(b, s),
        None => s.serialize_none(),
    }
}

/// `log2` of an arbitrarily large integer (`-inf` for zero).
pub fn log2_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().map_or(f64::INFINITY, f64::log2);
    }
    let shift = bits - 64;
    let top = (v >> shift).to_u64().expect("top 64 bits fit");
    (top as f64).log2() + shift as f64
}

/// Largest `r` with `r^3 <= x`.
pub fn icbrt(x: u128) -> u128 {
    let mut r = (x as f64).cbrt() as u128;
    while r > 0 && r.checked_pow(3).is_none_or(|c| c > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(3).is_some_and(|c| c <= x) {
        r += 1;
    }
    r
}

/// Parameters of the bipartite focusing argument: `d = sqrt(km)` and the
/// focus budget `t = floor(m/d) = floor(sqrt(m/k))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BipParams {
    pub d_real: f64,
    pub d_int: u64,
    pub t: u64,
}

impl BipParams {
    pub fn new(m: u64, k: u64) -> Self {
        let d_real = ((k * m) as f64).sqrt();
        let d_int = (d_real.ceil() as u64).max(1);
        // floor(sqrt(m/k)) == isqrt(floor(m/k)), exactly.
        let t = (m / k).isqrt();
        BipParams { d_real, d_int, t }
    }
}

/// Parameters of the general argument: `d = (m/4)^(1/3)` and
/// `l = floor(m/d) = floor((2m)^(2/3))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenParams {
    pub d_real: f64,
    pub d_int: u64,
    pub ell: u64,
}

impl GenParams {
    pub fn new(m: u64) -> Self {
        let d_real = (m as f64 / 4.0).cbrt();
        let d_int = (d_real.ceil() as u64).max(1);
        // (2m)^(2/3) = (4m^2)^(1/3); floor it without floating error.
        let ell = icbrt(4 * (m as u128) * (m as u128)) as u64;
        GenParams { d_real, d_int, ell }
    }

    /// Integer-form exponent `(2d+2)kd + kl`.
    pub fn exponent_int(&self, k: u64) -> u64 {
        (2 * self.d_int + 2) * k * self.d_int + k * self.ell
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BipBoundReport {
    pub m: u64,
    pub k: u64,
    pub d_real: f64,
    pub d_int: u64,
    pub t: u64,
    /// `floor(m / d_real)` evaluated in floating point.
    pub t_float: u64,
    /// Set when the floating `floor(m/d)` disagrees with the exact `floor(sqrt(m/k))`.
    pub t_mismatch: bool,
    /// `32 d k^(d + kt) 2m` with the integer parameters.
    #[serde(serialize_with = "serialize_big")]
    pub n_exact: BigUint,
    pub log_base: u32,
    /// Real form of `log2(32 d k^(d+kt) 2m)` with `d = sqrt(km)`.
    pub log2_n: f64,
    /// `log2` of `n_exact`.
    pub log2_n_int: f64,
    /// `log2(2^6 m^(3/2) k^(2 sqrt(km) + 1/2))`.
    pub closed_form_log2: f64,
}

/// Closed form `log2(2^6 m^(3/2) k^(2 sqrt(km) + 1/2))`.
pub fn bip_closed_form_log2(m: u64, k: u64) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    6.0 + 1.5 * mf.log2() + (2.0 * (kf * mf).sqrt() + 0.5) * kf.log2()
}

/// `32 d k^(d + kt) 2m` for integer parameters; valid for any `k >= 1`.
pub fn bip_required_n(m: u64, k: u64, p: &BipParams) -> BigUint {
    let exp = p.d_int + k * p.t;
    BigUint::from(k).pow(exp as u32) * BigUint::from(64 * p.d_int) * BigUint::from(m)
}

pub fn bip_bound(m: u64, k: u64) -> Result<BipBoundReport, BoundsError> {
    if m == 0 {
        return Err(BoundsError::NoEdges);
    }
    if k < 2 {
        return Err(BoundsError::TooFewColors { k, min: 2 });
    }
    let p = BipParams::new(m, k);
    let (mf, kf) = (m as f64, k as f64);
    let t_float = (mf / p.d_real).floor() as u64;
    let log2_n =
        5.0 + p.d_real.log2() + (p.d_real + kf * p.t as f64) * kf.log2() + (2.0 * mf).log2();
    let n_exact = bip_required_n(m, k, &p);
    Ok(BipBoundReport {
        m,
        k,
        d_real: p.d_real,
        d_int: p.d_int,
        t: p.t,
        t_float,
        t_mismatch: t_float != p.t,
        log2_n_int: log2_big(&n_exact),
        n_exact,
        log_base: 2,
        log2_n,
        closed_form_log2: bip_closed_form_log2(m, k),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenBoundReport {
    pub m: u64,
    pub k: u64,
    pub d_real: f64,
    pub d_int: u64,
    pub ell: u64,
    /// `(2m)^(2/3)` without the floor.
    pub ell_real: f64,
    #[serde(serialize_with = "serialize_big")]
    pub x_exact: BigUint,
    /// `(2d+2)kd + kl` with unrounded `d` and `l`.
    pub exponent_real: f64,
    /// `(2d+2)kd + kl` with `d_int` and the floored `l`.
    pub exponent_int: u64,
    /// `k^exponent_int * 8m`, omitted above [`EXACT_BITS_CAP`] bits.
    #[serde(serialize_with = "serialize_opt_big")]
    pub n_exact: Option<BigUint>,
    pub log_base: u64,
    /// `theorem_exponent + log_k(8m)`.
    pub log_k_n: f64,
    /// `exponent_int + log_k(8m)`.
    pub log_k_n_int: f64,
    pub theorem_exponent: f64,
    pub corollary_exponent: f64,
}

/// `3 * 2^(-1/3) k m^(2/3) + k (2m)^(1/3)`.
pub fn gen_theorem_exponent(m: u64, k: u64) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    3.0 * 2f64.powf(-1.0 / 3.0) * kf * mf.powf(2.0 / 3.0) + kf * (2.0 * mf).cbrt()
}

/// The unrounded proof exponent `(2d+2)kd + kl` with `d = (m/4)^(1/3)`,
/// `l = (2m)^(2/3)`.
pub fn gen_proof_exponent_real(m: u64, k: u64) -> f64 {
    let (mf, kf) = (m as f64, k as f64);
    let d = (mf / 4.0).cbrt();
    let ell = (2.0 * mf).powf(2.0 / 3.0);
    (2.0 * d + 2.0) * kf * d + kf * ell
}

/// `k^((2d+2)kd + kl) * 8m` for integer parameters; valid for any `k >= 1`.
pub fn gen_required_n(m: u64, k: u64, p: &GenParams) -> BigUint {
    BigUint::from(k).pow(p.exponent_int(k) as u32) * BigUint::from(8 * m)
}

pub fn gen_bound(m: u64, k: u64) -> Result<GenBoundReport, BoundsError> {
    if m == 0 {
        return Err(BoundsError::NoEdges);
    }
    if k < 3 {
        return Err(BoundsError::TooFewColors { k, min: 3 });
    }
    let p = GenParams::new(m);
    let (mf, kf) = (m as f64, k as f64);
    let exponent_int = p.exponent_int(k);
    let log_k_8m = (8.0 * mf).ln() / kf.ln();
    let theorem_exponent = gen_theorem_exponent(m, k);
    let n_exact =
        (exponent_int as f64 * kf.log2() <= EXACT_BITS_CAP).then(|| gen_required_n(m, k, &p));
    Ok(GenBoundReport {
        m,
        k,
        d_real: p.d_real,
        d_int: p.d_int,
        ell: p.ell,
        ell_real: (2.0 * mf).powf(2.0 / 3.0),
        x_exact: BigUint::from(8 * m),
        exponent_real: gen_proof_exponent_real(m, k),
        exponent_int,
        n_exact,
        log_base: k,
        log_k_n: theorem_exponent + log_k_8m,
        log_k_n_int: exponent_int as f64 + log_k_8m,
        theorem_exponent,
        corollary_exponent: 6.0 * kf * mf.powf(2.0 / 3.0),
    })
}

/// `log_k` of the trivial bound `k^(k v)`.
pub fn trivial_bound(v: u64, k: u64) -> Result<u64, BoundsError> {
    if v == 0 {
        return Err(BoundsError::NoVertices);
    }
    if k < 2 {
        return Err(BoundsError::TooFewColors { k, min: 2 });
    }
    Ok(k * v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominationPoint {
    pub m: u64,
    pub k: u64,
    pub margin: f64,
}

/// `6 k m^(2/3) - log_k N` for the general bound.
pub fn corollary_margin(m: u64, k: u64) -> Result<f64, BoundsError> {
    if m == 0 {
        return Err(BoundsError::NoEdges);
    }
    if k < 3 {
        return Err(BoundsError::TooFewColors { k, min: 3 });
    }
    let (mf, kf) = (m as f64, k as f64);
    let log_k_n = gen_theorem_exponent(m, k) + (8.0 * mf).ln() / kf.ln();
    Ok(6.0 * kf * mf.powf(2.0 / 3.0) - log_k_n)
}

/// Grid points where the corollary exponent fails to dominate the
/// general bound (expected: none).
pub fn check_corollary_domination(
    m_grid: &[u64],
    k_grid: &[u64],
) -> Result<Vec<DominationPoint>, BoundsError> {
    let mut violations = Vec::new();
    for &m in m_grid {
        for &k in k_grid {
            let margin = corollary_margin(m, k)?;
            if margin <= 0.0 {
                violations.push(DominationPoint { m, k, margin });
            }
        }
    }
    Ok(violations)
}

/// `log_k(2^6 m^(3/2) k^(2 sqrt(km) + 1/2)) / (2 sqrt(km))`.
pub fn bip_asymptotic_ratio(m: u64, k: u64) -> f64 {
    let log_k = bip_closed_form_log2(m, k) / (k as f64).log2();
    log_k / (2.0 * ((k * m) as f64).sqrt())
}

/// `log_2(N)` bits of `k^e` without building it.
pub fn pow_bits(k: u64, e: u64) -> f64 {
    e as f64 * (k as f64).log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn integer_roots() {
        for x in 0u128..2000 {
            let r = icbrt(x);
            assert!(r * r * r <= x && (r + 1).pow(3) > x);
        }
        assert_eq!(icbrt(64), 4);
        assert_eq!(icbrt(4 * 10u128.pow(18)), 1_587_401);
    }

    #[test]
    fn bip_examples() {
        // m=4, k=2: d = 2.828, t = 1, log2 N = 5 + log2 d + (d + 2) + 3.
        let r = bip_bound(4, 2).unwrap();
        assert!(close(r.d_real, 8f64.sqrt(), 1e-12));
        assert_eq!(r.t, 1);
        assert!(close(r.log2_n, 14.328, 1e-3), "{}", r.log2_n);
        assert!(
            close(r.closed_form_log2, 15.157, 1e-3),
            "{}",
            r.closed_form_log2
        );
        // d_int = 3: 32 * 3 * 2^(3+2) * 8 = 24576.
        assert_eq!(r.n_exact, BigUint::from(24_576u32));

        let r = bip_bound(1, 2).unwrap();
        assert_eq!(r.t, 0);
        assert!(close(r.log2_n, 7.914, 1e-3), "{}", r.log2_n);

        assert_eq!(bip_bound(0, 2), Err(BoundsError::NoEdges));
        assert_eq!(
            bip_bound(3, 1),
            Err(BoundsError::TooFewColors { k: 1, min: 2 })
        );
    }

    #[test]
    fn gen_examples() {
        let r = gen_bound(8, 3).unwrap();
        assert!(
            close(r.theorem_exponent, 36.13, 5e-3),
            "{}",
            r.theorem_exponent
        );
        assert!(close(r.log_k_n, 39.92, 5e-3), "{}", r.log_k_n);
        assert!(close(r.corollary_exponent, 72.0, 1e-9));
        assert!(close(
            r.exponent_real,
            r.theorem_exponent,
            1e-9 * r.theorem_exponent
        ));
        // d = 2^(1/3), l = floor(16^(2/3)) = 6.
        assert!(close(r.d_real, 2f64.cbrt(), 1e-12));
        assert_eq!(r.ell, 6);
        assert_eq!(r.d_int, 2);

        let r = gen_bound(1, 3).unwrap();
        assert!(close(r.d_real, 0.63, 5e-3));
        assert_eq!(r.ell, 1);

        assert_eq!(
            gen_bound(5, 2),
            Err(BoundsError::TooFewColors { k: 2, min: 3 })
        );
    }

    #[test]
    fn gen_exact_x_is_8m() {
        for m in 1..40 {
            for k in 3..6 {
                let r = gen_bound(m, k).unwrap();
                let n = r.n_exact.as_ref().expect("small instances are exact");
                let scale = BigUint::from(k).pow(r.exponent_int as u32);
                assert_eq!(n % &scale, BigUint::from(0u32));
                assert_eq!(n / &scale, r.x_exact);
                assert_eq!(r.x_exact, BigUint::from(8 * m));
            }
        }
    }

    #[test]
    fn ell_matches_floor_of_m_over_d() {
        for m in 1..5000u64 {
            let p = GenParams::new(m);
            let real = (2.0 * m as f64).powf(2.0 / 3.0);
            assert!((p.ell as f64) <= real + 1e-9 && real < (p.ell + 1) as f64 + 1e-9);
        }
        assert_eq!(GenParams::new(4).ell, 4);
        assert_eq!(GenParams::new(32).ell, 16);
    }

    #[test]
    fn trivial_examples() {
        assert_eq!(trivial_bound(6, 2), Ok(12));
        assert_eq!(trivial_bound(1, 5), Ok(5));
        assert_eq!(trivial_bound(2 * 3, 3), Ok(18));
    }

    #[test]
    fn domination_examples() {
        // log_3 N = 9·2^(-1/3) + 3·2^(1/3) + log_3 8 ≈ 12.816.
        let margin = corollary_margin(1, 3).unwrap();
        assert!(close(margin, 5.184, 1e-3), "{margin}");
        assert!(corollary_margin(1_000_000_000, 3).unwrap() > 0.0);
        let m_grid: Vec<u64> = (1..=100).collect();
        assert!(check_corollary_domination(&m_grid, &[3, 4, 5, 6])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn asymptotic_ratio_examples() {
        assert!(close(bip_asymptotic_ratio(100_000_000, 2), 1.0016, 1e-4));
        // (6 + 1.5 log2 1e4 + 2 sqrt(2e4) + 0.5) / (2 sqrt(2e4)) ≈ 1.0934.
        let r4 = bip_asymptotic_ratio(10_000, 2);
        assert!(close(r4, 1.0934, 1e-4), "{r4}");
        let ms = [10u64, 100, 1_000, 10_000, 100_000, 1_000_000];
        for w in ms.windows(2) {
            assert!(bip_asymptotic_ratio(w[1], 2) < bip_asymptotic_ratio(w[0], 2));
        }
    }

    #[test]
    fn proof_form_below_closed_form() {
        for m in 1..300 {
            for k in 2..8 {
                let r = bip_bound(m, k).unwrap();
                assert!(r.log2_n <= r.closed_form_log2 + 1e-9, "m={m} k={k}");
                assert!(!r.t_mismatch, "m={m} k={k}");
                assert!(r.t as f64 * r.d_real <= m as f64 + 1e-9);
                assert!(r.n_exact >= BigUint::from(2u32));
            }
        }
    }

    #[test]
    fn logs_monotone_in_m_and_k() {
        for k in 3..8 {
            for m in 1..200 {
                let a = gen_bound(m, k).unwrap();
                assert!(
                    gen_bound(m + 1, k).unwrap().log_k_n * (k as f64).ln()
                        >= a.log_k_n * (k as f64).ln()
                );
                assert!(
                    gen_bound(m, k + 1).unwrap().log_k_n * ((k + 1) as f64).ln()
                        >= a.log_k_n * (k as f64).ln()
                );
                let b = bip_bound(m, k).unwrap();
                assert!(bip_bound(m + 1, k).unwrap().closed_form_log2 >= b.closed_form_log2);
                assert!(bip_bound(m, k + 1).unwrap().closed_form_log2 >= b.closed_form_log2);
            }
        }
    }
}
