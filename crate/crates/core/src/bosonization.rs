//! The `cos^l` family of Bose representations of the Pauli operators.
//!
//! `σ₋ = f(N)·a` with `f(n) = cos^l(πn/2)/√(n+1)`. For even `l` this is
//! `Σ |2n⟩⟨2n+1|`; for odd `l` it is `Σ (−1)ⁿ |2n⟩⟨2n+1|`. The space must have
//! an even number of levels so that the top level is odd, `f(D−1) = 0`, and the
//! pseudo-spin algebra closes with zero error under truncation.
//!
//! `σ₃` follows the sign convention `σ₃ = [σ₊, σ₋] = −cos πN`, so the vacuum
//! has eigenvalue `−1`. This is the opposite of the usual `σ_z`.

use std::ops::Mul;

use num_complex::Complex64 as C64;
use num_rational::Ratio;

use crate::fock::{self, FockSpace, Operator};
use crate::{Error, Result};

const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BosonizationParams {
    l: u32,
    space: FockSpace,
}

impl BosonizationParams {
    pub fn new(l: u32, space: FockSpace) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidExponent(l));
        }
        require_even(space)?;
        Ok(Self { l, space })
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }
}

fn require_even(space: FockSpace) -> Result<()> {
    if !space.dim().is_multiple_of(2) {
        return Err(Error::OddDimension(space.dim()));
    }
    Ok(())
}

/// `cos^l(πn/2)` by case analysis on `n mod 4`.
fn cos_power_sign(n: usize, l: u32) -> i8 {
    match n % 4 {
        0 => 1,
        2 if l % 2 == 1 => -1,
        2 => 1,
        _ => 0,
    }
}

/// Exact value `sign · √square` with a rational `square`.
///
/// Products of the `1/√(n+1)` in `f(N)` with the `√(n+1)` in `a` cancel
/// exactly here, whereas `(1/√15)·√15` rounds to `1 − 2⁻⁵³` in floating point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Surd {
    sign: i8,
    square: Ratio<u64>,
}

impl Surd {
    fn new(sign: i8, square: Ratio<u64>) -> Self {
        if sign == 0 || square == Ratio::from_integer(0) {
            Self {
                sign: 0,
                square: Ratio::from_integer(0),
            }
        } else {
            Self { sign, square }
        }
    }

    fn sqrt_of(n: u64) -> Self {
        Self::new(1, Ratio::from_integer(n))
    }

    fn squared(self) -> Ratio<u64> {
        if self.sign == 0 {
            Ratio::from_integer(0)
        } else {
            self.square
        }
    }

    fn to_f64(self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let magnitude = (*self.square.numer() as f64).sqrt() / (*self.square.denom() as f64).sqrt();
        f64::from(self.sign) * magnitude
    }
}

impl Mul for Surd {
    type Output = Surd;

    fn mul(self, rhs: Surd) -> Surd {
        Surd::new(self.sign * rhs.sign, self.square * rhs.square)
    }
}

fn f_exact(n: usize, l: u32) -> Surd {
    Surd::new(cos_power_sign(n, l), Ratio::new(1, n as u64 + 1))
}

/// `f(n) = cos^l(πn/2)/√(n+1)`.
pub fn f_coefficient(n: usize, l: u32) -> f64 {
    f_exact(n, l).to_f64()
}

/// Max over `0 ≤ n ≤ n_max` of `|(n+1)f²(n) + n f²(n−1) − 1|`, in exact
/// rational arithmetic.
pub fn verify_functional_equation(l: u32, n_max: usize) -> f64 {
    let one = Ratio::from_integer(1u64);
    let residual = |lhs: Ratio<u64>| {
        let diff = if lhs >= one { lhs - one } else { one - lhs };
        *diff.numer() as f64 / *diff.denom() as f64
    };
    // n = 0: the n·f²(n−1) term is absent
    let mut worst = residual(f_exact(0, l).squared());
    for n in 1..=n_max as u64 {
        let k = n as usize;
        let lhs = Ratio::from_integer(n + 1) * f_exact(k, l).squared()
            + Ratio::from_integer(n) * f_exact(k - 1, l).squared();
        worst = worst.max(residual(lhs));
    }
    worst
}

/// `f(N)·a`, built as the product of the diagonal `f(N)` with the lowering
/// operator. Each entry `[n][n+1] = f(n)·√(n+1)` is a single product, so it is
/// formed exactly before rounding to a double.
pub fn sigma_minus(params: &BosonizationParams) -> Operator {
    let space = params.space;
    let d = space.dim();
    let mut entries = ndarray::Array2::zeros((d, d));
    for n in 0..d - 1 {
        let value = f_exact(n, params.l) * Surd::sqrt_of(n as u64 + 1);
        entries[[n, n + 1]] = C64::new(value.to_f64(), 0.0);
    }
    Operator::from_entries(space, entries).expect("finite by construction")
}

/// Outer-product sum `Σ s_n |2n⟩⟨2n+1|` with `s_n = 1` (even `l`) or `(−1)ⁿ`
/// (odd `l`).
pub fn closed_form_sigma_minus(params: &BosonizationParams) -> Operator {
    let space = params.space;
    let mut acc = Operator::zeros(space);
    for pair in 0..space.dim() / 2 {
        let sign = if params.l % 2 == 1 && pair % 2 == 1 {
            -ONE
        } else {
            ONE
        };
        let lower = fock::fock_ket(space, 2 * pair).expect("in range");
        let upper = fock::fock_ket(space, 2 * pair + 1).expect("in range");
        let term = lower.outer(&upper).expect("same space").scale(sign);
        acc = acc.add(&term).expect("same space");
    }
    acc
}

/// `σ₃ = −cos πN = diag(−1, +1, −1, …)`.
pub fn sigma_three(space: FockSpace) -> Result<Operator> {
    require_even(space)?;
    fock::diagonal_from_function(space, |n| if n % 2 == 0 { -ONE } else { ONE })
}

/// `(P_even, P_odd)`.
pub fn parity_projectors(space: FockSpace) -> (Operator, Operator) {
    (
        fock::level_projector(space, |n| n % 2 == 0),
        fock::level_projector(space, |n| n % 2 == 1),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct PauliSet {
    pub sigma_minus: Operator,
    pub sigma_plus: Operator,
    pub sigma_one: Operator,
    pub sigma_two: Operator,
    pub sigma_three: Operator,
}

/// Assembles the five operators from `σ₋` by `σ₊ = σ₋†`, `σ₁ = σ₊ + σ₋`,
/// `σ₂ = −i(σ₊ − σ₋)` and `σ₃ = [σ₊, σ₋]`.
pub fn pauli_set(params: &BosonizationParams) -> PauliSet {
    let sigma_minus = sigma_minus(params);
    let sigma_plus = sigma_minus.dagger();
    let sigma_one = sigma_plus.add(&sigma_minus).expect("same space");
    let sigma_two = sigma_plus.sub(&sigma_minus).expect("same space").scale(-I);
    let sigma_three = sigma_plus.commutator(&sigma_minus).expect("same space");
    PauliSet {
        sigma_minus,
        sigma_plus,
        sigma_one,
        sigma_two,
        sigma_three,
    }
}

/// Top-left `2×2` block of `A`.
pub fn two_level_restriction(op: &Operator) -> [[C64; 2]; 2] {
    op.two_level_block()
}

/// One row of the identity catalog: `max_abs_norm(lhs − rhs)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityResidual {
    pub id: String,
    pub equation: &'static str,
    pub residual: f64,
}

/// Runs the full Pauli identity catalog for one representation.
pub fn algebra_residuals(params: &BosonizationParams) -> Vec<IdentityResidual> {
    let space = params.space;
    let set = pauli_set(params);
    let id = Operator::identity(space);
    let zero = Operator::zeros(space);
    let (p_even, p_odd) = parity_projectors(space);
    let s3_closed = sigma_three(space).expect("params guarantee even dim");

    let mut out = Vec::new();
    let mut push = |id: String, equation: &'static str, lhs: Operator, rhs: Operator| {
        let residual = lhs.distance(&rhs).expect("same space");
        out.push(IdentityResidual {
            id,
            equation,
            residual,
        });
    };

    let s = [&set.sigma_one, &set.sigma_two, &set.sigma_three];
    for i in 0..3 {
        for j in 0..3 {
            let rhs = if i == j {
                id.scale(C64::new(2.0, 0.0))
            } else {
                zero.clone()
            };
            push(
                format!("anticomm_s{}_s{}", i + 1, j + 1),
                "Eq. (7)",
                s[i].anticommutator(s[j]).unwrap(),
                rhs,
            );
        }
    }

    let sp = &set.sigma_plus;
    let sm = &set.sigma_minus;
    let s1 = &set.sigma_one;
    let s2 = &set.sigma_two;
    let s3 = &set.sigma_three;

    for (name, lhs, rhs) in [
        ("comm_sp_s1", sp.commutator(s1), s3.clone()),
        ("comm_sm_s1", sm.commutator(s1), s3.scale(-ONE)),
        ("comm_sp_s2", sp.commutator(s2), s3.scale(I)),
        ("comm_sm_s2", sm.commutator(s2), s3.scale(I)),
        (
            "comm_sp_s3",
            sp.commutator(s3),
            sp.scale(C64::new(-2.0, 0.0)),
        ),
        (
            "comm_sm_s3",
            sm.commutator(s3),
            sm.scale(C64::new(2.0, 0.0)),
        ),
        ("comm_sp_sm", sp.commutator(sm), s3_closed.clone()),
    ] {
        push(name.to_string(), "Eq. (9)", lhs.unwrap(), rhs);
    }

    for (name, lhs, rhs) in [
        ("anticomm_sp_s1", sp.anticommutator(s1), id.clone()),
        ("anticomm_sm_s1", sm.anticommutator(s1), id.clone()),
        ("anticomm_sp_s2", sp.anticommutator(s2), id.scale(I)),
        ("anticomm_sm_s2", sm.anticommutator(s2), id.scale(-I)),
        ("anticomm_sp_s3", sp.anticommutator(s3), zero.clone()),
        ("anticomm_sm_s3", sm.anticommutator(s3), zero.clone()),
        ("anticomm_sp_sm", sp.anticommutator(sm), id.clone()),
    ] {
        push(name.to_string(), "Eq. (10)", lhs.unwrap(), rhs);
    }

    push(
        "sp_sm_eq_p_odd".into(),
        "Eq. (29)",
        sp.matmul(sm).unwrap(),
        p_odd.clone(),
    );
    push(
        "sm_sp_eq_p_even".into(),
        "Eq. (29)",
        sm.matmul(sp).unwrap(),
        p_even.clone(),
    );

    push(
        "sigma3_closed_form".into(),
        "Eq. (30)",
        s3.clone(),
        s3_closed.clone(),
    );
    push(
        "sigma3_parity_difference".into(),
        "Eq. (30)",
        p_odd.sub(&p_even).unwrap(),
        s3_closed.clone(),
    );

    push(
        "anticomm_sm_s3_closed".into(),
        "Eq. (31)",
        sm.anticommutator(&s3_closed).unwrap(),
        zero.clone(),
    );
    push(
        "comm_sm_s3_closed".into(),
        "Eq. (32)",
        sm.commutator(&s3_closed).unwrap(),
        sm.scale(C64::new(2.0, 0.0)),
    );

    push(
        "sm_squared".into(),
        "Eq. (1)",
        sm.matmul(sm).unwrap(),
        zero.clone(),
    );
    push("sp_squared".into(), "Eq. (1)", sp.matmul(sp).unwrap(), zero);

    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilator, diagonal_from_function, make_space};

    const ZERO: C64 = C64::new(0.0, 0.0);

    fn params(l: u32, d: usize) -> BosonizationParams {
        BosonizationParams::new(l, make_space(d).unwrap()).unwrap()
    }

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn nonzeros(op: &Operator) -> Vec<(usize, usize, C64)> {
        op.entries()
            .indexed_iter()
            .filter(|(_, z)| **z != ZERO)
            .map(|((m, n), z)| (m, n, *z))
            .collect()
    }

    #[test]
    fn params_validation() {
        let odd = make_space(5).unwrap();
        assert_eq!(BosonizationParams::new(2, odd), Err(Error::OddDimension(5)));
        let even = make_space(4).unwrap();
        assert_eq!(
            BosonizationParams::new(0, even),
            Err(Error::InvalidExponent(0))
        );
        assert_eq!(sigma_three(odd), Err(Error::OddDimension(5)));
    }

    #[test]
    fn f_coefficient_values() {
        for l in 1..=6 {
            assert_eq!(f_coefficient(0, l), 1.0);
            assert_eq!(f_coefficient(1, l), 0.0);
        }
        assert!((f_coefficient(2, 1) + 0.5773503).abs() < 1e-7);
        assert_eq!(f_coefficient(2, 1), -1.0 / 3f64.sqrt());
        assert_eq!(f_coefficient(2, 2), 1.0 / 3f64.sqrt());
        for m in 0..200usize {
            for l in 1..=6 {
                assert_eq!(f_coefficient(2 * m + 1, l), 0.0);
                let expected = 1.0 / ((2 * m + 1) as f64).sqrt();
                assert!(
                    (f_coefficient(2 * m, l).abs() - expected).abs() <= f64::EPSILON * expected
                );
            }
        }
    }

    #[test]
    fn functional_equation_exact() {
        for l in 1..=6 {
            assert_eq!(verify_functional_equation(l, 100), 0.0);
        }
        assert_eq!(f_exact(0, 3).squared(), Ratio::from_integer(1));
    }

    #[test]
    fn functional_equation_agrees_with_float_evaluation() {
        // floating-point evaluation of the same sum, good to a few ulp
        for l in 1..=4 {
            for n in 1..300usize {
                let lhs = (n + 1) as f64 * f_coefficient(n, l).powi(2)
                    + n as f64 * f_coefficient(n - 1, l).powi(2);
                assert!((lhs - 1.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_minus_examples() {
        assert_eq!(
            nonzeros(&sigma_minus(&params(2, 4))),
            vec![(0, 1, re(1.0)), (2, 3, re(1.0))]
        );
        assert_eq!(
            nonzeros(&sigma_minus(&params(1, 6))),
            vec![(0, 1, re(1.0)), (2, 3, re(-1.0)), (4, 5, re(1.0))]
        );
        assert_eq!(sigma_minus(&params(4, 6)), sigma_minus(&params(2, 6)));
    }

    #[test]
    fn sigma_minus_matches_float_matrix_product() {
        // the plain floating product f(N)·a differs from the exact one by
        // rounding only
        for l in 1..=3 {
            for d in [2, 16, 64] {
                let p = params(l, d);
                let f = diagonal_from_function(p.space(), |n| re(f_coefficient(n, l))).unwrap();
                let float = f.matmul(&annihilator(p.space())).unwrap();
                assert!(float.distance(&sigma_minus(&p)).unwrap() <= 2.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_sigma_minus(&params(2, 4)),
            sigma_minus(&params(2, 4))
        );
        assert_eq!(
            closed_form_sigma_minus(&params(3, 8)),
            sigma_minus(&params(3, 8))
        );
        assert_eq!(
            two_level_restriction(&closed_form_sigma_minus(&params(1, 2))),
            [[re(0.0), re(1.0)], [re(0.0), re(0.0)]]
        );
    }

    #[test]
    fn sigma_three_and_projectors() {
        let s = make_space(4).unwrap();
        let s3 = sigma_three(s).unwrap();
        let diag: Vec<C64> = (0..4).map(|n| s3.get(n, n)).collect();
        assert_eq!(diag, vec![re(-1.0), re(1.0), re(-1.0), re(1.0)]);

        let (pe, po) = parity_projectors(s);
        assert_eq!(pe, fock::level_projector(s, |n| n == 0 || n == 2));
        assert_eq!(po, fock::level_projector(s, |n| n == 1 || n == 3));
        assert_eq!(pe.add(&po).unwrap(), Operator::identity(s));
        assert_eq!(pe.matmul(&pe).unwrap(), pe);
        assert_eq!(po.sub(&pe).unwrap(), s3);

        for l in 1..=4 {
            let set = pauli_set(&params(l, 4));
            assert_eq!(set.sigma_three, s3);
            assert_eq!(set.sigma_minus.matmul(&set.sigma_plus).unwrap(), pe);
            assert_eq!(set.sigma_plus.matmul(&set.sigma_minus).unwrap(), po);
        }
        // parity projectors do not need an even space
        let (pe5, po5) = parity_projectors(make_space(5).unwrap());
        assert_eq!(
            pe5.add(&po5).unwrap(),
            Operator::identity(make_space(5).unwrap())
        );
    }

    #[test]
    fn pauli_set_two_level() {
        let set = pauli_set(&params(2, 2));
        assert_eq!(
            two_level_restriction(&set.sigma_one),
            [[re(0.0), re(1.0)], [re(1.0), re(0.0)]]
        );
        assert_eq!(
            two_level_restriction(&set.sigma_two),
            [[ZERO, I], [-I, ZERO]]
        );
        assert_eq!(
            set.sigma_one.anticommutator(&set.sigma_two).unwrap(),
            Operator::zeros(make_space(2).unwrap())
        );
        for l in 1..=3 {
            let set = pauli_set(&params(l, 10));
            assert_eq!(set.sigma_plus, set.sigma_minus.dagger());
            assert_eq!(
                set.sigma_one.matmul(&set.sigma_one).unwrap(),
                Operator::identity(make_space(10).unwrap())
            );
            assert_eq!(
                two_level_restriction(&set.sigma_three),
                [[re(-1.0), ZERO], [ZERO, re(1.0)]]
            );
        }
        assert_eq!(
            two_level_restriction(&Operator::identity(make_space(6).unwrap())),
            [[ONE, ZERO], [ZERO, ONE]]
        );
    }

    #[test]
    fn catalog_exact() {
        for (l, d) in [(2, 64), (1, 64), (3, 2), (5, 10)] {
            let rows = algebra_residuals(&params(l, d));
            assert_eq!(rows.len(), 31);
            for row in &rows {
                assert_eq!(row.residual, 0.0, "l={l} D={d} {}", row.id);
            }
        }
        let rows = algebra_residuals(&params(3, 2));
        assert!(rows
            .iter()
            .any(|r| r.id == "anticomm_sp_sm" && r.residual == 0.0));
    }

    #[test]
    fn catalog_detects_a_broken_representation() {
        // the plain shift |n⟩⟨n+1| couples every level, not just parity pairs
        let s = make_space(4).unwrap();
        let mut entries = ndarray::Array2::zeros((4, 4));
        for n in 0..3 {
            entries[[n, n + 1]] = ONE;
        }
        let bad = Operator::from_entries(s, entries).unwrap();
        let sq = bad.matmul(&bad).unwrap();
        assert!(sq.max_abs_norm() > 0.5);
        let anti = bad.anticommutator(&bad.dagger()).unwrap();
        assert!(anti.distance(&Operator::identity(s)).unwrap() > 0.5);
    }
}
