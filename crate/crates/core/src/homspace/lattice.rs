//! `F(M, ξ) = Σ_{m ∈ ℤ²} ψ(mM + ξ)`: the number of points of the affine
//! lattice `ℤ²M + ξ` inside the support of `ψ`.

use super::group::GroupElement;
use super::testfn::TestFunction2D;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_CELL_BUDGET: u64 = 1_000_000_000;

/// Exact lattice count with the default cell budget.
pub fn f_count<T: Real>(g: &GroupElement<T>, psi: &TestFunction2D<T>) -> Result<u64> {
    f_count_with_budget(g, psi, DEFAULT_CELL_BUDGET)
}

/// Exact lattice count.
///
/// The support polygon is pulled back by `w ↦ (w - ξ)M⁻¹` and its vertex
/// bounding box (padded by one) is the search region. If that box holds more
/// than `budget` integer cells the count fails with
/// [`Error::ResourceLimit`]. Inside the box each row along the shorter side
/// is narrowed to the integers allowed by the polygon's half-planes (again
/// padded by one), and every remaining candidate is tested with the exact
/// indicator of `ψ`.
pub fn f_count_with_budget<T: Real>(g: &GroupElement<T>, psi: &TestFunction2D<T>, budget: u64) -> Result<u64> {
    let inv = g.m.unimodular_inverse();
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for v in psi.vertices() {
        let m = inv.left_apply([v[0] - g.xi[0], v[1] - g.xi[1]]);
        for k in 0..2 {
            let c = m[k].to_f64_lossy();
            lo[k] = lo[k].min(c);
            hi[k] = hi[k].max(c);
        }
    }
    if !(lo.iter().chain(hi.iter()).all(|x| x.is_finite())) {
        return Err(Error::NumericFailure("non-finite lattice preimage".into()));
    }
    let lo = [lo[0].floor() - 1.0, lo[1].floor() - 1.0];
    let hi = [hi[0].ceil() + 1.0, hi[1].ceil() + 1.0];
    let span = [hi[0] - lo[0] + 1.0, hi[1] - lo[1] + 1.0];
    let cells = span[0] * span[1];
    if cells > budget as f64 || span[0] > i64::MAX as f64 / 4.0 || span[1] > i64::MAX as f64 / 4.0 {
        return Err(Error::ResourceLimit { cells, budget });
    }

    // iterate the shorter side of the box in the outer loop
    let (outer, inner) = if span[0] <= span[1] { (0, 1) } else { (1, 0) };
    let rows = [g.m.a, g.m.b, g.m.c, g.m.d];
    let row = |k: usize| [rows[2 * k], rows[2 * k + 1]];
    let (r_out, r_in) = (row(outer), row(inner));
    let planes = psi.half_planes();

    let mut count = 0u64;
    let (i_lo, i_hi) = (lo[outer] as i64, hi[outer] as i64);
    let (j_box_lo, j_box_hi) = (lo[inner] as i64, hi[inner] as i64);
    for i in i_lo..=i_hi {
        let fi = T::lit(i as f64);
        let base = [fi * r_out[0] + g.xi[0], fi * r_out[1] + g.xi[1]];
        let (mut j_lo, mut j_hi) = (j_box_lo as f64, j_box_hi as f64);
        let mut empty = false;
        for (n, c) in &planes {
            let lhs = (n[0] * base[0] + n[1] * base[1]).to_f64_lossy();
            let slope = (n[0] * r_in[0] + n[1] * r_in[1]).to_f64_lossy();
            let c = c.to_f64_lossy();
            if slope == 0.0 {
                if lhs > c + 1e-9 * (1.0 + lhs.abs() + c.abs()) {
                    empty = true;
                    break;
                }
            } else if slope > 0.0 {
                j_hi = j_hi.min(((c - lhs) / slope).floor() + 1.0);
            } else {
                j_lo = j_lo.max(((c - lhs) / slope).ceil() - 1.0);
            }
        }
        if empty || j_lo > j_hi {
            continue;
        }
        for j in (j_lo as i64)..=(j_hi as i64) {
            let fj = T::lit(j as f64);
            let x = base[0] + fj * r_in[0];
            let y = base[1] + fj * r_in[1];
            if psi.contains(x, y) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homspace::group::{gamma_element, Matrix2};
    use crate::homspace::haar::HaarSampler;

    /// Double loop over a generous square, no narrowing.
    fn slow_count(g: &GroupElement<f64>, psi: &TestFunction2D<f64>, radius: i64) -> u64 {
        let mut c = 0;
        for m1 in -radius..=radius {
            for m2 in -radius..=radius {
                let w = g.act([m1 as f64, m2 as f64]);
                if psi.contains(w[0], w[1]) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn identity_rectangle_counts() {
        let id = GroupElement::<f64>::identity();
        assert_eq!(f_count(&id, &TestFunction2D::rectangle(1.0).unwrap()).unwrap(), 1);
        assert_eq!(f_count(&id, &TestFunction2D::rectangle(4.0).unwrap()).unwrap(), 5);
        // triangle at the identity: x = 1, -L < y ≤ L
        assert_eq!(f_count(&id, &TestFunction2D::triangle(2.0).unwrap()).unwrap(), 4);
    }

    #[test]
    fn matches_slow_enumeration_near_identity() {
        let mut s = HaarSampler::new(21);
        for i in 0..400 {
            let h = s.sample();
            // keep the element moderate so the square search is conclusive
            if h.v > 6.0 {
                continue;
            }
            let l = 0.5 + (i % 7) as f64;
            for psi in [TestFunction2D::rectangle(l).unwrap(), TestFunction2D::triangle(l).unwrap()] {
                assert_eq!(f_count(&h.g, &psi).unwrap(), slow_count(&h.g, &psi, 40), "{h:?}");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = GroupElement::from_parts(Matrix2::diag(1e-6f64, 1e6), [0.0, 0.0]);
        let psi = TestFunction2D::rectangle(1.0).unwrap();
        assert!(matches!(
            f_count_with_budget(&g, &psi, 1000),
            Err(Error::ResourceLimit { .. })
        ));
        // the box is 1e6 rows of one cell each: within the default budget
        assert_eq!(f_count(&g, &psi).unwrap(), 1_000_000);
    }

    #[test]
    fn gamma_invariance_small() {
        let mut s = HaarSampler::new(5);
        for seed in 0..200 {
            let gamma: GroupElement<f64> = gamma_element(seed, 6).unwrap().cast().unwrap();
            let g = s.sample().g;
            let psi = TestFunction2D::triangle(1.5).unwrap();
            assert_eq!(f_count(&gamma.mul(&g), &psi).unwrap(), f_count(&g, &psi).unwrap());
        }
    }
}
