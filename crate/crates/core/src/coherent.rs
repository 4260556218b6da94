//! Coherent, even/odd and nonlinear coherent states.
//!
//! The even and odd kets carry the plain coherent prefactor `e^{−|z|²/2}` and
//! are therefore not unit vectors: `⟨z|z⟩_e = e^{−|z|²} cosh|z|²`. With that
//! normalization `∫ d²z/π |z⟩_e⟨z| = P_even` holds exactly, which is what the
//! resolution checks below certify.
//!
//! The plane integral is evaluated with a Gauss–Laguerre rule in `t = |z|²`
//! and a uniform rule in the angle. Every matrix element of the integrand is
//! `e^{−t}` times a polynomial in `t` times a finite Fourier series in `θ`, so
//! a sufficiently large grid is exact up to rounding.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use crate::bosonization::parity_projectors;
use crate::fock::{self, FockSpace, Ket, Operator};
use crate::{Error, Result};

const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Coefficients `zⁿ/√(n!)` for `n < dim`, computed by the stable recursion.
fn bare_coefficients(dim: usize, z: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(dim);
    let mut c = ONE;
    for n in 0..dim {
        if n > 0 {
            c = c * z / (n as f64).sqrt();
        }
        out.push(c);
    }
    out
}

fn ket_from(space: FockSpace, amplitudes: Vec<C64>) -> Ket {
    Ket::from_amplitudes(space, amplitudes).expect("finite amplitudes")
}

fn parity_filtered(space: FockSpace, z: C64, prefactor: f64, parity: usize) -> Ket {
    let amps = bare_coefficients(space.dim(), z)
        .into_iter()
        .enumerate()
        .map(|(n, c)| {
            if n % 2 == parity {
                c * prefactor
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .collect();
    ket_from(space, amps)
}

/// `e^{−|z|²/2} Σ zⁿ/√(n!) |n⟩`, truncated at `D`.
pub fn coherent_ket(space: FockSpace, z: C64) -> Ket {
    let prefactor = (-z.norm_sqr() / 2.0).exp();
    let amps = bare_coefficients(space.dim(), z)
        .into_iter()
        .map(|c| c * prefactor)
        .collect();
    ket_from(space, amps)
}

/// Even-level half of [`coherent_ket`].
pub fn even_ket(space: FockSpace, z: C64) -> Ket {
    parity_filtered(space, z, (-z.norm_sqr() / 2.0).exp(), 0)
}

/// Odd-level half of [`coherent_ket`].
pub fn odd_ket(space: FockSpace, z: C64) -> Ket {
    parity_filtered(space, z, (-z.norm_sqr() / 2.0).exp(), 1)
}

/// `(−1)^{N/2}` on even levels, identity on odd levels.
pub fn even_phase_operator(space: FockSpace) -> Operator {
    fock::diagonal_from_function(space, |n| match n % 4 {
        2 => -ONE,
        _ => ONE,
    })
    .expect("finite")
}

/// `i^N` on odd levels, identity on even levels.
///
/// On level `2n+1` this is `i·(−1)ⁿ`. The real sign `(−1)ⁿ` alone does not map
/// `|z⟩_o` to `|iz⟩_o`: `(iz)^{2n+1} = i(−1)ⁿ z^{2n+1}` carries an extra `i`.
pub fn odd_phase_operator(space: FockSpace) -> Operator {
    fock::diagonal_from_function(space, |n| match n % 4 {
        1 => I,
        3 => -I,
        _ => ONE,
    })
    .expect("finite")
}

/// Largest mismatch in `Φ_e|z⟩_e = |iz⟩_e` and `Φ_o|z⟩_o = |iz⟩_o`.
pub fn phase_relation_residual(space: FockSpace, z: C64) -> f64 {
    let iz = I * z;
    let even = even_phase_operator(space)
        .apply(&even_ket(space, z))
        .and_then(|k| k.distance(&even_ket(space, iz)))
        .expect("same space");
    let odd = odd_phase_operator(space)
        .apply(&odd_ket(space, z))
        .and_then(|k| k.distance(&odd_ket(space, iz)))
        .expect("same space");
    even.max(odd)
}

/// Product rule: Gauss–Laguerre in `t = r²`, uniform in `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    radial_nodes: Vec<f64>,
    radial_weights: Vec<f64>,
    angular_count: usize,
}

impl QuadratureGrid {
    pub fn radial_nodes(&self) -> &[f64] {
        &self.radial_nodes
    }

    pub fn radial_weights(&self) -> &[f64] {
        &self.radial_weights
    }

    pub fn radial_order(&self) -> usize {
        self.radial_nodes.len()
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn angles(&self) -> impl Iterator<Item = f64> + '_ {
        let m = self.angular_count;
        (0..m).map(move |j| 2.0 * PI * j as f64 / m as f64)
    }

    /// `(1/π)∫ d²z g(z)` for `g(z) = e^{−|z|²} h(z)`, supplied as `h`.
    pub fn integrate_plane(&self, h: impl Fn(C64) -> C64) -> C64 {
        let mut total = C64::new(0.0, 0.0);
        for (t, w) in self.radial_nodes.iter().zip(&self.radial_weights) {
            let r = t.sqrt();
            let ring: C64 = self
                .angles()
                .map(|theta| h(C64::from_polar(r, theta)))
                .sum();
            total += ring * (*w / self.angular_count as f64);
        }
        total
    }
}

/// Nodes and weights of the `order`-point Gauss–Laguerre rule for
/// `∫₀^∞ e^{−t} p(t) dt`, found by Newton iteration on `L_order`.
fn gauss_laguerre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order as f64;
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    let mut z = 0.0f64;
    for i in 0..order {
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * n),
            1 => z + 15.0 / (1.0 + 2.5 * n),
            _ => {
                let ai = (i - 1) as f64;
                z + (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
            }
        };
        let mut deriv = 0.0;
        let mut prev = 0.0;
        let mut converged = 0;
        for _ in 0..200 {
            // L_order(z) and L_{order−1}(z) via the three-term recurrence
            let (mut p1, mut p2) = (1.0f64, 0.0f64);
            for j in 1..=order {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0 - z) * p2 - (jf - 1.0) * p3) / jf;
            }
            deriv = n * (p1 - p2) / z;
            prev = p2;
            let z_old = z;
            z = z_old - p1 / deriv;
            // two extra steps after the update stalls
            if (z - z_old).abs() <= 1e-15 * z.abs() {
                converged += 1;
                if converged > 2 {
                    break;
                }
            }
        }
        nodes.push(z);
        weights.push(-1.0 / (deriv * n * prev));
    }
    (nodes, weights)
}

/// `radial`-point Gauss–Laguerre times `angular` equally spaced angles.
pub fn quadrature_grid(radial: usize, angular: usize) -> Result<QuadratureGrid> {
    if radial == 0 || angular == 0 {
        return Err(Error::InvalidGrid { radial, angular });
    }
    let (radial_nodes, radial_weights) = gauss_laguerre(radial);
    Ok(QuadratureGrid {
        radial_nodes,
        radial_weights,
        angular_count: angular,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ResolutionVariant {
    EvenPlain,
    OddPlain,
    EvenPhased,
    OddPhased,
}

impl ResolutionVariant {
    pub const ALL: [ResolutionVariant; 4] = [
        ResolutionVariant::EvenPlain,
        ResolutionVariant::OddPlain,
        ResolutionVariant::EvenPhased,
        ResolutionVariant::OddPhased,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ResolutionVariant::EvenPlain => "even-plain",
            ResolutionVariant::OddPlain => "odd-plain",
            ResolutionVariant::EvenPhased => "even-phased",
            ResolutionVariant::OddPhased => "odd-phased",
        }
    }

    fn parity(&self) -> usize {
        match self {
            ResolutionVariant::EvenPlain | ResolutionVariant::EvenPhased => 0,
            ResolutionVariant::OddPlain | ResolutionVariant::OddPhased => 1,
        }
    }

    fn phased(&self) -> bool {
        matches!(
            self,
            ResolutionVariant::EvenPhased | ResolutionVariant::OddPhased
        )
    }
}

impl fmt::Display for ResolutionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ResolutionVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown variant '{s}'"))
    }
}

/// Operator the quadrature of `variant` should reproduce.
///
/// Plain variants give the parity projectors. The even phased variant gives
/// `cos(πN/2)`, i.e. `(−1)ⁿ` on level `2n`. The odd phased variant gives
/// `i·sin(πN/2)`, i.e. `i(−1)ⁿ` on level `2n+1`.
pub fn resolution_target(space: FockSpace, variant: ResolutionVariant) -> Operator {
    let (p_even, p_odd) = parity_projectors(space);
    match variant {
        ResolutionVariant::EvenPlain => p_even,
        ResolutionVariant::OddPlain => p_odd,
        ResolutionVariant::EvenPhased => even_phase_operator(space)
            .matmul(&p_even)
            .expect("same space"),
        ResolutionVariant::OddPhased => odd_phase_operator(space)
            .matmul(&p_odd)
            .expect("same space"),
    }
}

/// Whether `grid` is large enough for the integrand on `space` to be
/// integrated exactly (`2K−1 ≥ D−2` and `M > 2(D−2)`).
pub fn grid_resolves(space: FockSpace, grid: &QuadratureGrid) -> bool {
    let top = space.dim().saturating_sub(2);
    2 * grid.radial_order() > top && grid.angular_count() > 2 * top
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolutionResult {
    pub residual: f64,
    /// Set when the grid is below the exactness threshold.
    pub under_resolved: bool,
}

/// Quadrature of `∫ d²z/π |u(z)⟩⟨v(z)|` compared with [`resolution_target`].
pub fn resolution_operator(
    space: FockSpace,
    variant: ResolutionVariant,
    grid: &QuadratureGrid,
) -> Operator {
    let d = space.dim();
    let parity = variant.parity();
    let bare = |z: C64| parity_filtered(space, z, 1.0, parity);
    let mut acc = ndarray::Array2::<C64>::zeros((d, d));
    for (t, w) in grid.radial_nodes.iter().zip(&grid.radial_weights) {
        let r = t.sqrt();
        let weight = *w / grid.angular_count as f64;
        for theta in grid.angles() {
            let z = C64::from_polar(r, theta);
            // e^{−|z|²} is carried by the Laguerre weight
            let bra = bare(z);
            let ket = if variant.phased() {
                bare(I * z)
            } else {
                bra.clone()
            };
            let u = ket.amplitudes();
            let v = bra.amplitudes();
            for m in (parity..d).step_by(2) {
                let um = u[m] * weight;
                for n in (parity..d).step_by(2) {
                    acc[[m, n]] += um * v[n].conj();
                }
            }
        }
    }
    Operator::from_entries(space, acc).expect("finite quadrature")
}

pub fn resolution_residual(
    space: FockSpace,
    variant: ResolutionVariant,
    grid: &QuadratureGrid,
) -> ResolutionResult {
    let q = resolution_operator(space, variant, grid);
    let residual = q
        .distance(&resolution_target(space, variant))
        .expect("same space");
    ResolutionResult {
        residual,
        under_resolved: !grid_resolves(space, grid),
    }
}

/// Values `f(n)` for `0 ≤ n ≤ D−1` of the deformation in `f(N)a`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearF {
    values: Vec<C64>,
}

impl NonlinearF {
    pub fn from_fn(space: FockSpace, f: impl Fn(usize) -> C64) -> Result<Self> {
        let values: Vec<C64> = (0..space.dim()).map(f).collect();
        if let Some(n) = values
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(n));
        }
        Ok(Self { values })
    }

    pub fn from_values(values: Vec<C64>) -> Result<Self> {
        let space = FockSpace::new(values.len())?;
        Self::from_fn(space, |n| values[n])
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, n: usize) -> C64 {
        self.values[n]
    }

    fn check(&self, space: FockSpace) -> Result<()> {
        if self.values.len() != space.dim() {
            return Err(Error::ShapeMismatch {
                left: space.dim(),
                right: self.values.len(),
            });
        }
        // levels 0…D−2 are the ones that get divided by
        if let Some(n) = self.values[..space.dim() - 1]
            .iter()
            .position(|z| *z == C64::new(0.0, 0.0))
        {
            return Err(Error::SingularF(n));
        }
        Ok(())
    }

    /// `f(N)·a`.
    pub fn deformed_annihilator(&self, space: FockSpace) -> Result<Operator> {
        if self.values.len() != space.dim() {
            return Err(Error::ShapeMismatch {
                left: space.dim(),
                right: self.values.len(),
            });
        }
        fock::diagonal_from_function(space, |n| self.values[n])?.matmul(&fock::annihilator(space))
    }

    /// `(1/f(N−1))·a†`, with the level-0 factor set to 1.
    pub fn conjugate_creator(&self, space: FockSpace) -> Result<Operator> {
        self.check(space)?;
        let inv = fock::diagonal_from_function(space, |n| {
            if n == 0 {
                ONE
            } else {
                ONE / self.values[n - 1]
            }
        })?;
        inv.matmul(&fock::creator(space))
    }
}

/// Eigenket of `f(N)a` with eigenvalue `z` by the amplitude recursion
/// `c₀ = 1`, `c_{n+1} = z·cₙ/(f(n)√(n+1))`.
pub fn nonlinear_coherent_ket(
    space: FockSpace,
    f: &NonlinearF,
    z: C64,
    normalize: bool,
) -> Result<Ket> {
    f.check(space)?;
    let mut amps = Vec::with_capacity(space.dim());
    let mut c = ONE;
    amps.push(c);
    for n in 0..space.dim() - 1 {
        c = z * c / (f.value(n) * ((n + 1) as f64).sqrt());
        amps.push(c);
    }
    let ket = Ket::from_amplitudes(space, amps)?;
    if normalize {
        let norm = ket.norm();
        Ok(ket.scale(C64::new(1.0 / norm, 0.0)))
    } else {
        Ok(ket)
    }
}

/// `max_{0≤n≤D−2} |(f(N)a ψ)ₙ − z ψₙ|`.
pub fn nonlinear_eigen_residual(f: &NonlinearF, ket: &Ket, z: C64) -> Result<f64> {
    let space = ket.space();
    let image = f.deformed_annihilator(space)?.apply(ket)?;
    Ok((0..space.dim() - 1)
        .map(|n| (image.get(n) - z * ket.get(n)).norm())
        .fold(0.0, f64::max))
}

/// `max_abs_norm(P([f(N)a, a†/f(N−1)] − I)P)` with `P` keeping the levels
/// `0…D−1−margin`. With `margin = 0` the top diagonal entry shows the cutoff
/// artifact `−D`.
pub fn ladder_commutator_residual(space: FockSpace, f: &NonlinearF, margin: usize) -> Result<f64> {
    let lower = f.deformed_annihilator(space)?;
    let raise = f.conjugate_creator(space)?;
    let c = lower.commutator(&raise)?.sub(&Operator::identity(space))?;
    let keep = space.dim().saturating_sub(margin);
    let p = fock::level_projector(space, |n| n < keep);
    Ok(p.matmul(&c)?.matmul(&p)?.max_abs_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bosonization::f_coefficient;
    use crate::fock::{annihilator, fock_ket, make_space};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn coherent_basics() {
        let s = make_space(64).unwrap();
        assert_eq!(coherent_ket(s, c(0.0, 0.0)), fock_ket(s, 0).unwrap());
        for z in [c(2.0, 0.0), c(0.0, -2.0), c(1.2, 1.5)] {
            let k = coherent_ket(s, z);
            let norm = k.inner(&k).unwrap().re;
            assert!((1.0 - 1e-12..=1.0 + 1e-12).contains(&norm));
            let shifted = annihilator(s).apply(&k).unwrap();
            for n in 0..63 {
                assert!((shifted.get(n) - z * k.get(n)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn even_odd_split() {
        let s = make_space(20).unwrap();
        assert_eq!(even_ket(s, c(0.0, 0.0)), fock_ket(s, 0).unwrap());
        assert_eq!(odd_ket(s, c(0.0, 0.0)), Ket::zeros(s));
        for z in [c(1.0, 0.0), c(-0.3, 0.8), c(1.7, -1.1)] {
            let e = even_ket(s, z);
            let o = odd_ket(s, z);
            assert_eq!(e.add(&o).unwrap(), coherent_ket(s, z));
            for n in 0..20 {
                if n % 2 == 0 {
                    assert_eq!(o.get(n), c(0.0, 0.0));
                } else {
                    assert_eq!(e.get(n), c(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn even_ket_norm_is_not_one() {
        // e^{−1}·Σ 1/(2n)! summed directly
        let mut series = 0.0;
        let mut fact = 1.0f64;
        for k in 0..40u32 {
            if k > 0 {
                fact *= k as f64;
            }
            if k % 2 == 0 {
                series += 1.0 / fact;
            }
        }
        let oracle = (-1.0f64).exp() * series;
        assert!((oracle - 0.5676676).abs() < 1e-7);
        let s = make_space(64).unwrap();
        let e = even_ket(s, c(1.0, 0.0));
        assert!((e.inner(&e).unwrap().re - oracle).abs() < 1e-15);
    }

    #[test]
    fn phase_relation() {
        let s = make_space(64).unwrap();
        assert_eq!(phase_relation_residual(s, c(0.0, 0.0)), 0.0);
        assert!(phase_relation_residual(s, c(1.0, 0.5)) <= 1e-14);

        // n = 1 term: Φ_e flips the |2⟩ amplitude, and (iz)² = −z²
        let z = c(0.8, 0.0);
        let flipped = even_phase_operator(s).apply(&even_ket(s, z)).unwrap();
        assert_eq!(flipped.get(2), -even_ket(s, z).get(2));
        assert!((flipped.get(2) - even_ket(s, I * z).get(2)).norm() < 1e-16);
    }

    #[test]
    fn odd_relation_needs_the_factor_i() {
        // a real (−1)ⁿ on level 2n+1 is off by exactly i
        let s = make_space(32).unwrap();
        let z = c(0.9, -0.4);
        let real_sign =
            fock::diagonal_from_function(s, |n| if n % 4 == 3 { -ONE } else { ONE }).unwrap();
        let lhs = real_sign.apply(&odd_ket(s, z)).unwrap();
        let rhs = odd_ket(s, I * z);
        assert!(lhs.distance(&rhs).unwrap() > 0.1);
        assert!(lhs.scale(I).distance(&rhs).unwrap() < 1e-15);
    }

    #[test]
    fn laguerre_rule() {
        let g = quadrature_grid(1, 1).unwrap();
        assert!((g.radial_nodes()[0] - 1.0).abs() < 1e-15);
        assert!((g.radial_weights()[0] - 1.0).abs() < 1e-15);

        let g2 = quadrature_grid(2, 1).unwrap();
        let first_moment: f64 = g2
            .radial_nodes()
            .iter()
            .zip(g2.radial_weights())
            .map(|(t, w)| t * w)
            .sum();
        assert!((first_moment - 1.0).abs() < 1e-15);

        // moments ∫ e^{−t} t^k dt = k! for k ≤ 2K−1
        for order in [3, 8, 16, 24] {
            let g = quadrature_grid(order, 1).unwrap();
            assert!(g.radial_weights().iter().all(|w| *w > 0.0 && w.is_finite()));
            let mut fact = 1.0f64;
            for k in 0..2 * order {
                if k > 0 {
                    fact *= k as f64;
                }
                let moment: f64 = g
                    .radial_nodes()
                    .iter()
                    .zip(g.radial_weights())
                    .map(|(t, w)| w * t.powi(k as i32))
                    .sum();
                assert!(((moment - fact) / fact).abs() < 1e-12, "K={order} k={k}");
            }
        }

        let g8 = quadrature_grid(1, 8).unwrap();
        let s: C64 = g8
            .angles()
            .map(|th| C64::from_polar(1.0, 2.0 * th))
            .sum::<C64>()
            / 8.0;
        assert!(s.norm() < 1e-15);

        assert!(quadrature_grid(0, 4).is_err());
        assert!(quadrature_grid(4, 0).is_err());
    }

    #[test]
    fn plane_integral_of_gaussian_moments() {
        // (1/π)∫ d²z e^{−|z|²} |z|^{2k} = k!
        let g = quadrature_grid(10, 16).unwrap();
        let val = g.integrate_plane(|z| C64::new(z.norm_sqr().powi(3), 0.0));
        assert!((val - c(6.0, 0.0)).norm() < 1e-12);
        let val = g.integrate_plane(|z| z * z);
        assert!(val.norm() < 1e-14);
    }

    #[test]
    fn resolutions_exact_on_resolving_grid() {
        let s = make_space(16).unwrap();
        let g = quadrature_grid(16, 64).unwrap();
        for v in ResolutionVariant::ALL {
            let r = resolution_residual(s, v, &g);
            assert!(!r.under_resolved);
            assert!(r.residual <= 1e-12, "{v}: {}", r.residual);
        }
    }

    #[test]
    fn resolutions_converge_as_grid_grows() {
        let s = make_space(10).unwrap();
        for v in ResolutionVariant::ALL {
            let mut last = f64::INFINITY;
            for (k, m) in [(5, 20), (8, 32), (12, 48), (16, 64)] {
                let r = resolution_residual(s, v, &quadrature_grid(k, m).unwrap()).residual;
                assert!(r <= last + 1e-13, "{v}");
                last = r;
            }
            assert!(last < 1e-12);
        }
    }

    #[test]
    fn under_resolved_grid_is_flagged() {
        let s = make_space(8).unwrap();
        let g = quadrature_grid(1, 2).unwrap();
        let r = resolution_residual(s, ResolutionVariant::EvenPlain, &g);
        assert!(r.under_resolved);
        assert!(r.residual > 0.5);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in ResolutionVariant::ALL {
            assert_eq!(v.name().parse::<ResolutionVariant>().unwrap(), v);
        }
        assert!("even".parse::<ResolutionVariant>().is_err());
    }

    #[test]
    fn nonlinear_undeformed_is_coherent() {
        let s = make_space(24).unwrap();
        let z = c(0.6, -0.2);
        let f = NonlinearF::from_fn(s, |_| ONE).unwrap();
        let k = nonlinear_coherent_ket(s, &f, z, true).unwrap();
        let coh = coherent_ket(s, z);
        let coh = coh.scale(c(1.0 / coh.norm(), 0.0));
        assert!(k.distance(&coh).unwrap() < 1e-15);
    }

    #[test]
    fn nonlinear_recursion_matches_closed_form() {
        let s = make_space(20).unwrap();
        let z = c(0.7, 0.3);
        let f = NonlinearF::from_fn(s, |n| c(1.0 / (n as f64 + 1.0), 0.0)).unwrap();
        let k = nonlinear_coherent_ket(s, &f, z, false).unwrap();
        let mut fact = 1.0f64;
        let mut fprod = ONE;
        for n in 0..20 {
            if n > 0 {
                fact *= n as f64;
                fprod *= f.value(n - 1);
            }
            let closed = z.powu(n as u32) / (fact.sqrt() * fprod);
            assert!((k.get(n) - closed).norm() <= 1e-13 * closed.norm().max(1.0));
        }
        assert!(nonlinear_eigen_residual(&f, &k, z).unwrap() <= 1e-13 * k.norm());
    }

    #[test]
    fn pauli_deformation_is_singular() {
        let s = make_space(8).unwrap();
        let f = NonlinearF::from_fn(s, |n| c(f_coefficient(n, 2), 0.0)).unwrap();
        assert_eq!(
            nonlinear_coherent_ket(s, &f, c(0.5, 0.0), true),
            Err(Error::SingularF(1))
        );
        assert_eq!(
            ladder_commutator_residual(s, &f, 1),
            Err(Error::SingularF(1))
        );
    }

    #[test]
    fn ladder_commutator() {
        let s = make_space(16).unwrap();
        let flat = NonlinearF::from_fn(s, |_| ONE).unwrap();
        // only the rounding of fl(√n)² against n remains
        assert!(ladder_commutator_residual(s, &flat, 1).unwrap() <= 16.0 * f64::EPSILON);

        let f = NonlinearF::from_fn(s, |n| c(1.0 / ((n + 1) as f64).sqrt(), 0.0)).unwrap();
        assert!(ladder_commutator_residual(s, &f, 1).unwrap() <= 1e-13);

        // top entry of [A, B] is (0) − (D−1)·1, so C − I has −D there
        let edge = ladder_commutator_residual(s, &f, 0).unwrap();
        assert!((edge - 16.0).abs() < 1e-12);
    }

    #[test]
    fn nonlinear_f_validation() {
        let s = make_space(4).unwrap();
        assert_eq!(
            NonlinearF::from_fn(s, |n| c(1.0 / (n as f64 - 2.0), 0.0)),
            Err(Error::NonFinite(2))
        );
        let f = NonlinearF::from_values(vec![ONE; 3]).unwrap();
        assert!(matches!(
            nonlinear_coherent_ket(s, &f, ONE, false),
            Err(Error::ShapeMismatch { .. })
        ));
        // f(D−1) = 0 is allowed: no level above it
        let top_zero = NonlinearF::from_fn(s, |n| if n == 3 { c(0.0, 0.0) } else { ONE }).unwrap();
        assert!(nonlinear_coherent_ket(s, &top_zero, ONE, true).is_ok());
    }
}
