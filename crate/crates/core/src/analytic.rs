//! Closed-form spectra of the rotating disk and annulus, crossing
//! frequencies, the scaling law, and the comparison bound for star-shaped
//! domains.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{Domain, StarBoundary};
use crate::specfun::{self, bessel_j_zero, cross_product_zero, zero_bounds, MAX_ORDER};
use crate::{Error, Result};

/// Relative tolerance for declaring two modes tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// One disk eigenpair label `(m, k)` with `λ = j_{|m|,k}²/R² − mω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskMode {
    pub m: i64,
    pub k: u32,
    pub eigenvalue: f64,
    pub zero: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroundState {
    pub eigenvalue: f64,
    pub modes: Vec<DiskMode>,
    pub degenerate: bool,
}

/// Ingredients and right-hand side of the comparison bound
/// `λ₁^ω(Ω) ≤ λ_{1,B}^ω + D · S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub omega: f64,
    pub area: f64,
    pub r0: f64,
    pub disk_ground_state: f64,
    pub deformation: f64,
    pub mode_cutoff: f64,
    pub sup_term: f64,
    pub sup_order: u32,
    pub rhs: f64,
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    Ok(())
}

pub(crate) fn check_omega(omega: f64) -> Result<()> {
    if !(omega.is_finite() && omega >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "angular velocity must be finite and non-negative, got {omega}"
        )));
    }
    Ok(())
}

fn order_of(m: i64) -> Result<u32> {
    let a = m.unsigned_abs();
    if a > MAX_ORDER as u64 {
        return Err(Error::OrderOverflow {
            order: a as usize,
            max: MAX_ORDER as usize,
        });
    }
    Ok(a as u32)
}

pub fn disk_eigenvalue(r: f64, omega: f64, m: i64, k: u32) -> Result<DiskMode> {
    check_radius(r)?;
    check_omega(omega)?;
    let zero = bessel_j_zero(order_of(m)?, k)?.value;
    Ok(DiskMode {
        m,
        k,
        eigenvalue: zero * zero / (r * r) - m as f64 * omega,
        zero,
    })
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

/// Smallest disk eigenvalue `min_{m,k} λ_{m,k}(R, ω)` with every mode attaining it.
///
/// Only `k = 1` and `0 ≤ m ≤ ⌈R²ω⌉ + 10` can be minimal. Orders whose proven
/// lower bound on `j_{m,1}` already exceeds the running minimum are skipped.
pub fn disk_ground_state(r: f64, omega: f64) -> Result<GroundState> {
    check_radius(r)?;
    check_omega(omega)?;
    if omega > 1e6 / (r * r) {
        return Err(Error::InvalidArgument(format!(
            "angular velocity {omega} exceeds 1e6/R^2"
        )));
    }
    let m_search = (r * r * omega).ceil() as u64 + 10;
    if m_search > MAX_ORDER as u64 {
        return Err(Error::OrderOverflow {
            order: m_search as usize,
            max: MAX_ORDER as usize,
        });
    }
    let r2 = r * r;
    let mut candidates: Vec<(f64, u32)> = (0..=m_search as u32)
        .map(|m| {
            let lower = zero_bounds(m, 1).0;
            (lower * lower / r2 - m as f64 * omega, m)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut modes: Vec<DiskMode> = Vec::new();
    let mut best = f64::INFINITY;
    for (lower, m) in candidates {
        if lower > best && !ties(lower, best) {
            break;
        }
        let mode = disk_eigenvalue(r, omega, m as i64, 1)?;
        if mode.eigenvalue < best {
            best = mode.eigenvalue;
        }
        modes.push(mode);
    }
    let mut minimal: Vec<DiskMode> = modes
        .into_iter()
        .filter(|mode| ties(mode.eigenvalue, best))
        .collect();
    minimal.sort_by_key(|mode| mode.m);
    Ok(GroundState {
        eigenvalue: best,
        degenerate: minimal.len() > 1,
        modes: minimal,
    })
}

fn check_count(count: usize) -> Result<()> {
    if count == 0 || count > 100 {
        return Err(Error::InvalidArgument(format!("mode count must be in 1..=100, got {count}")));
    }
    Ok(())
}

/// Collects the `count` smallest `λ(m, k)` over all labels. Sectors with
/// `m < −count` are dominated by their mirror sectors; beyond that, `m` runs
/// until `m²/R² − mω` (below every eigenvalue of the sector) passes the list.
fn lowest_labels<T>(
    count: usize,
    r_outer: f64,
    omega: f64,
    mut eval: impl FnMut(i64, u32) -> Result<(f64, T)>,
) -> Result<Vec<(f64, T)>> {
    let mut modes: Vec<(f64, T)> = Vec::new();
    let mut m = -(count as i64);
    loop {
        let floor = (m * m) as f64 / (r_outer * r_outer) - m as f64 * omega;
        if m > 0 && modes.len() >= count && floor > modes[count - 1].0 && m as f64 > r_outer * r_outer * omega {
            break;
        }
        for k in 1..=count as u32 {
            let (lam, label) = eval(m, k)?;
            let stop = modes.len() >= count && lam > modes[count - 1].0;
            modes.push((lam, label));
            modes.sort_by(|a, b| a.0.total_cmp(&b.0));
            modes.truncate(count);
            if stop {
                break;
            }
        }
        m += 1;
    }
    Ok(modes)
}

/// The `count` smallest disk eigenvalues with their labels, ascending.
pub fn disk_lowest_modes(r: f64, omega: f64, count: usize) -> Result<Vec<DiskMode>> {
    check_radius(r)?;
    check_omega(omega)?;
    check_count(count)?;
    let modes = lowest_labels(count, r, omega, |m, k| {
        let mode = disk_eigenvalue(r, omega, m, k)?;
        Ok((mode.eigenvalue, mode))
    })?;
    Ok(modes.into_iter().map(|(_, mode)| mode).collect())
}

/// The `count` smallest annulus eigenvalues as `(λ, m, k)`, ascending.
pub fn annulus_lowest_modes(r0: f64, r1: f64, omega: f64, count: usize) -> Result<Vec<(f64, i64, u32)>> {
    check_annulus(r0, r1)?;
    check_omega(omega)?;
    check_count(count)?;
    let modes = lowest_labels(count, r1, omega, |m, k| Ok((annulus_eigenvalue(r0, r1, omega, m, k)?, (m, k))))?;
    Ok(modes.into_iter().map(|(lam, (m, k))| (lam, m, k)).collect())
}

/// `ω_m = (j_{m,1}² − j_{0,1}²)/(mR²)` for `m = 1..=m_max`.
pub fn disk_crossing_frequencies(r: f64, m_max: u32) -> Result<Vec<f64>> {
    check_radius(r)?;
    let j01 = bessel_j_zero(0, 1)?.value;
    (1..=m_max)
        .map(|m| {
            let j = bessel_j_zero(m, 1)?.value;
            Ok((j * j - j01 * j01) / (m as f64 * r * r))
        })
        .collect()
}

fn check_annulus(r0: f64, r1: f64) -> Result<()> {
    if !(r0.is_finite() && r1.is_finite() && 0.0 < r0 && r0 < r1) {
        return Err(Error::InvalidArgument(format!(
            "annulus needs 0 < R0 < R1, got {r0}, {r1}"
        )));
    }
    Ok(())
}

/// `λ_{m,k}(R₀,R₁,ω) = (x_{|m|,k}/R₀)² − mω`, `x` a cross-product zero.
pub fn annulus_eigenvalue(r0: f64, r1: f64, omega: f64, m: i64, k: u32) -> Result<f64> {
    check_annulus(r0, r1)?;
    check_omega(omega)?;
    let x = cross_product_zero(order_of(m)?, k, r1 / r0)?;
    Ok((x / r0).powi(2) - m as f64 * omega)
}

/// Smallest annulus eigenvalue and its angular index (smallest `m` on ties).
pub fn annulus_ground_state(r0: f64, r1: f64, omega: f64) -> Result<(f64, i64)> {
    let base = annulus_eigenvalue(r0, r1, omega, 0, 1)?;
    // the m-sector of the annulus lies above that of the outer disk, and
    // j_{m,1} > m, so λ_m > m²/R₁² − mω, which exceeds `base` beyond this order
    let m_max = (r1 * r1 * omega + r1 * base.max(0.0).sqrt()).ceil() as i64 + 1;
    let mut best = (base, 0);
    for m in 1..=m_max {
        let lam = annulus_eigenvalue(r0, r1, omega, m, 1)?;
        if lam < best.0 {
            best = (lam, m);
        }
    }
    Ok(best)
}

/// Checks `λ₁(ηR, ω/η²) = λ₁(R, ω)/η²` to 1e-10 relative.
pub fn scale_check(r: f64, omega: f64, eta: f64) -> Result<bool> {
    if !(eta.is_finite() && eta > 0.0) {
        return Err(Error::InvalidArgument(format!("scale factor must be positive, got {eta}")));
    }
    let base = disk_ground_state(r, omega)?;
    let scaled = disk_ground_state(eta * r, omega / (eta * eta))?;
    let expected = base.eigenvalue / (eta * eta);
    // relative to the size of the terms being cancelled, not only the result
    let size = base
        .modes
        .iter()
        .map(|mode| (mode.zero / (eta * r)).powi(2))
        .fold(expected.abs(), f64::max);
    let same_modes = base.modes.iter().map(|m| m.m).eq(scaled.modes.iter().map(|m| m.m));
    Ok((scaled.eigenvalue - expected).abs() <= 1e-10 * size && same_modes)
}

/// Right-hand side of the comparison bound for a star-shaped domain rotating
/// about its star center.
pub fn fk_reverse_bound(boundary: &StarBoundary, omega: f64) -> Result<BoundReport> {
    check_omega(omega)?;
    let area = boundary.area();
    let r0 = (area / PI).sqrt();
    let ground = disk_ground_state(r0, omega)?;
    let deformation = boundary.deformation_integral();
    let j01 = bessel_j_zero(0, 1)?.value;
    let a = r0 * r0 * omega;
    let cutoff = 0.5 * (a + (a * a + 4.0 * j01 * j01).sqrt());
    let (sup, sup_order) = sup_term(cutoff.floor() as u32)?;
    let sup_term = sup / (2.0 * PI * r0 * r0);
    Ok(BoundReport {
        omega,
        area,
        r0,
        disk_ground_state: ground.eigenvalue,
        deformation,
        mode_cutoff: cutoff,
        sup_term,
        sup_order,
        rhs: ground.eigenvalue + deformation * sup_term,
    })
}

/// `max_{0 ≤ m ≤ m_max} (j_{m,1}² − m²)` and its maximizer, skipping orders
/// whose proven upper bound cannot beat the running maximum.
fn sup_term(m_max: u32) -> Result<(f64, u32)> {
    if m_max > MAX_ORDER {
        return Err(Error::OrderOverflow {
            order: m_max as usize,
            max: MAX_ORDER as usize,
        });
    }
    let mut candidates: Vec<(f64, u32)> = (0..=m_max)
        .map(|m| {
            let upper = zero_bounds(m, 1).1;
            (upper * upper - (m as f64).powi(2), m)
        })
        .collect();
    candidates.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = (f64::NEG_INFINITY, 0);
    for (upper, m) in candidates {
        if upper < best.0 {
            break;
        }
        let j = specfun::bessel_j_zero(m, 1)?.value;
        let v = j * j - (m as f64).powi(2);
        if v > best.0 {
            best = (v, m);
        }
    }
    Ok(best)
}

/// [`fk_reverse_bound`] for a domain, rotating about the domain center.
pub fn fk_reverse_bound_for_domain(domain: &Domain, omega: f64) -> Result<BoundReport> {
    fk_reverse_bound(&domain.star_boundary()?, omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const J01: f64 = 2.404_825_557_695_773;
    const J11: f64 = 3.831_705_970_207_512;

    /// Brute force over `m ∈ [−20, 20]`, `k ≤ 3`.
    fn brute_ground(r: f64, omega: f64) -> f64 {
        let mut best = f64::INFINITY;
        for m in -20i64..=20 {
            for k in 1..=3 {
                best = best.min(disk_eigenvalue(r, omega, m, k).unwrap().eigenvalue);
            }
        }
        best
    }

    #[test]
    fn lowest_mode_lists_match_brute_force() {
        for omega in [0.0, 3.0, 12.0] {
            let mut all: Vec<f64> = Vec::new();
            for m in -30i64..=30 {
                for k in 1..=6 {
                    all.push(disk_eigenvalue(1.0, omega, m, k).unwrap().eigenvalue);
                }
            }
            all.sort_by(f64::total_cmp);
            let got = disk_lowest_modes(1.0, omega, 8).unwrap();
            for (g, e) in got.iter().zip(&all) {
                assert!((g.eigenvalue - e).abs() < 1e-10, "omega {omega}");
            }
        }
        let zero = disk_lowest_modes(1.0, 0.0, 3).unwrap();
        assert_eq!((zero[1].m, zero[2].m), (-1, 1));
        let ann = annulus_lowest_modes(1.0, 2.0, 0.0, 3).unwrap();
        assert_eq!((ann[0].1, ann[1].1, ann[2].1), (0, -1, 1));
        assert!(ann.windows(2).all(|w| w[0].0 <= w[1].0));
        assert!(disk_lowest_modes(1.0, 0.0, 0).is_err());
    }

    #[test]
    fn disk_eigenvalue_examples() {
        assert!((disk_eigenvalue(1.0, 0.0, 0, 1).unwrap().eigenvalue - J01 * J01).abs() < 1e-12);
        assert!((disk_eigenvalue(1.0, 10.0, 1, 1).unwrap().eigenvalue - 4.68197).abs() < 1e-5);
        let a = disk_eigenvalue(2.0, 0.0, 0, 1).unwrap().eigenvalue;
        let b = disk_eigenvalue(2.0, 37.0, 0, 1).unwrap().eigenvalue;
        assert_eq!(a, b);
        assert!((a - J01 * J01 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn ground_state_matches_brute_force() {
        for i in 0..=300 {
            let omega = 0.1 * i as f64;
            let g = disk_ground_state(1.0, omega).unwrap();
            assert!((g.eigenvalue - brute_ground(1.0, omega)).abs() < 1e-12, "omega={omega}");
        }
        let g = disk_ground_state(1.0, 10.0).unwrap();
        assert_eq!(g.modes[0].m, 1);
        assert!((g.eigenvalue - 4.68197).abs() < 1e-5);
    }

    #[test]
    fn plateau_and_degeneracy_at_first_crossing() {
        let w1 = disk_crossing_frequencies(1.0, 1).unwrap()[0];
        assert!((w1 - 8.89878).abs() < 1e-5);
        assert!((w1 - (J11 * J11 - J01 * J01)).abs() < 1e-12);
        for i in 0..=50 {
            let g = disk_ground_state(1.0, w1 * i as f64 / 50.0).unwrap();
            assert!((g.eigenvalue - J01 * J01).abs() < 1e-12);
        }
        let g = disk_ground_state(1.0, w1).unwrap();
        assert!(g.degenerate);
        let ms: Vec<i64> = g.modes.iter().map(|m| m.m).collect();
        assert_eq!(ms, vec![0, 1]);
        assert!(!disk_ground_state(1.0, 0.5 * w1).unwrap().degenerate);
    }

    #[test]
    fn crossing_frequencies() {
        let w = disk_crossing_frequencies(1.0, 30).unwrap();
        let w2 = disk_crossing_frequencies(2.0, 30).unwrap();
        for (i, (a, b)) in w.iter().zip(&w2).enumerate() {
            let m = (i + 1) as f64;
            assert!((b - a / 4.0).abs() < 1e-12 * a);
            assert!(*a > m - J01 * J01 / m);
        }
    }

    #[test]
    fn annulus_examples() {
        let l = annulus_eigenvalue(1.0, 2.0, 0.0, 0, 1).unwrap();
        assert!((l - 3.123_030_919_595_692_5f64.powi(2)).abs() < 1e-8);
        assert_eq!(l, annulus_eigenvalue(1.0, 2.0, 7.5, 0, 1).unwrap());
        for &w in &[0.5, 3.0, 17.25] {
            let d = annulus_eigenvalue(1.0, 2.0, w, 1, 1).unwrap()
                - annulus_eigenvalue(1.0, 2.0, 0.0, 1, 1).unwrap();
            assert!((d + w).abs() <= 1e-12 * w.max(1.0));
        }
        assert_eq!(annulus_ground_state(1.0, 2.0, 0.0).unwrap().1, 0);
    }

    #[test]
    fn scaling_law() {
        let w1 = disk_crossing_frequencies(1.0, 1).unwrap()[0];
        assert!(scale_check(1.0, 0.0, 2.0).unwrap());
        assert!(scale_check(1.0, 10.0, 2.0).unwrap());
        assert!(scale_check(1.0, w1, 3.0).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let (r, w, eta) = (
                rng.random_range(0.3..3.0),
                rng.random_range(0.0..60.0),
                rng.random_range(0.2..5.0),
            );
            assert!(scale_check(r, w, eta).unwrap(), "{r} {w} {eta}");
        }
    }

    #[test]
    fn bound_for_circle_saturates() {
        for &w in &[0.0, 3.0, 12.0] {
            let rep = fk_reverse_bound(&StarBoundary::circle(1.0).unwrap(), w).unwrap();
            assert_eq!(rep.deformation, 0.0);
            assert_eq!(rep.rhs, disk_ground_state(1.0, w).unwrap().eigenvalue);
        }
    }

    #[test]
    fn bound_for_ellipse() {
        let e = StarBoundary::ellipse(1.2, 1.0 / 1.2, 64).unwrap();
        let rep = fk_reverse_bound(&e, 0.0).unwrap();
        let j21 = 5.135_622_301_840_683;
        assert!((rep.r0 - 1.0).abs() < 1e-10);
        assert!((rep.mode_cutoff - J01).abs() < 1e-9);
        assert_eq!(rep.sup_order, 2);
        assert!((rep.sup_term - (j21 * j21 - 4.0) / (2.0 * PI)).abs() < 1e-9);
        assert!((rep.rhs - 7.2872).abs() < 1e-3);
        assert!(rep.sup_term >= J01 * J01 / (2.0 * PI * rep.r0 * rep.r0));
    }

    #[test]
    fn rectangle_has_no_bound() {
        let d = Domain::rectangle(1.0, 2.0).unwrap();
        assert!(matches!(fk_reverse_bound_for_domain(&d, 1.0), Err(Error::NotStarShaped(_))));
    }

    #[test]
    fn invalid_inputs() {
        assert!(disk_ground_state(1.0, -1.0).is_err());
        assert!(disk_ground_state(0.0, 1.0).is_err());
        assert!(annulus_eigenvalue(2.0, 1.0, 0.0, 0, 1).is_err());
    }
}
