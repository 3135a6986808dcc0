//! Commutation parameters of the noncommutative tori attached to characters
//! of the centre, and the spectral projectors of a cyclic centre.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::braid::SurfaceContext;
use crate::centre::{format_ratio, reduce_mod_one, Centre, CentreError, FreeAngle, TorusCharacter};
use crate::par::{self, Execution};
use crate::scheme::NegativeColourScheme;

/// `ϑ[(λ,ℓ),(λ',ℓ')]` in `[0, 1)`, rows and columns ordered by `(λ, ℓ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NcTorusParams {
    pub colours: usize,
    pub genus: usize,
    pub theta: Vec<Vec<BigRational>>,
    pub character: TorusCharacter,
}

impl NcTorusParams {
    pub fn dimension(&self) -> usize {
        2 * self.genus * self.colours
    }

    /// Entry for `(λ, ℓ), (λ', ℓ')`, 1-based.
    pub fn entry(&self, lam: usize, l: usize, lamp: usize, lp: usize) -> &BigRational {
        let n = 2 * self.genus;
        &self.theta[(lam - 1) * n + l - 1][(lamp - 1) * n + lp - 1]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "character": self.character.to_json(),
            "theta": self.theta.iter().map(|row| row.iter().map(format_ratio).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// `ϑ[(λ,ℓ),(λ',ℓ')] = χ(J[ℓ,ℓ'] · b_{λ,λ'})` on edges, zero otherwise.
pub fn nc_parameters(
    scheme: &NegativeColourScheme,
    genus: usize,
    chi: &TorusCharacter,
) -> Result<NcTorusParams, CentreError> {
    nc_parameters_in(&Centre::new(scheme), genus, chi)
}

/// As [`nc_parameters`] with a prebuilt centre.
pub fn nc_parameters_in(centre: &Centre, genus: usize, chi: &TorusCharacter) -> Result<NcTorusParams, CentreError> {
    if chi.free_angles.iter().any(|a| matches!(a, FreeAngle::Real(_))) {
        return Err(CentreError::IrrationalAngle);
    }
    let group = centre.group();
    if chi.factors != group.invariant_factors() || chi.free_angles.len() != group.rank() {
        return Err(CentreError::ContextMismatch);
    }
    let scheme = centre.scheme();
    let surface = SurfaceContext::new(genus);
    let r = scheme.r();
    let n = surface.cycles();
    // χ(b_e) for each edge; χ(J b_e) = J χ(b_e)
    let edge_values: Vec<BigRational> = (0..scheme.edge_count())
        .map(|e| {
            let mut v = vec![BigInt::zero(); scheme.edge_count()];
            v[e] = 1.into();
            chi.evaluate(group, &v)
        })
        .collect::<Result<_, _>>()?;
    let mut theta = vec![vec![BigRational::zero(); r * n]; r * n];
    for (e, &(a, b)) in scheme.edges().iter().enumerate() {
        for l in 1..=n {
            for lp in 1..=n {
                let j = surface.pairing(l, lp);
                if j == 0 {
                    continue;
                }
                let value = reduce_mod_one(&(&edge_values[e] * BigRational::from_integer(j.into())));
                theta[(a - 1) * n + l - 1][(b - 1) * n + lp - 1] = value.clone();
                theta[(b - 1) * n + l - 1][(a - 1) * n + lp - 1] = value;
            }
        }
    }
    Ok(NcTorusParams {
        colours: r,
        genus,
        theta,
        character: chi.clone(),
    })
}

/// Parameters for every torsion character, in [`crate::centre::characters`] order.
pub fn all_parameters(
    exec: Execution,
    scheme: &NegativeColourScheme,
    genus: usize,
) -> Result<Vec<NcTorusParams>, CentreError> {
    let centre = Centre::new(scheme);
    let chars: Vec<TorusCharacter> = crate::centre::characters(centre.group()).collect();
    par::map_slice(exec, &chars, |chi| nc_parameters_in(&centre, genus, chi))
        .into_iter()
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectorReport {
    pub k: usize,
    pub tolerance: f64,
    pub max_idempotent_error: f64,
    pub max_orthogonality_error: f64,
    pub sum_error: f64,
    pub passed: bool,
}

impl ProjectorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "tolerance": self.tolerance,
            "max_idempotent_error": self.max_idempotent_error,
            "max_orthogonality_error": self.max_orthogonality_error,
            "sum_error": self.sum_error,
            "passed": self.passed,
        })
    }
}

/// Product in `C[Z_k]`: cyclic convolution.
fn convolve(x: &[Complex64], y: &[Complex64]) -> Vec<Complex64> {
    let k = x.len();
    let mut out = vec![Complex64::zero(); k];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            out[(i + j) % k] += a * b;
        }
    }
    out
}

fn distance(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// `β_j = (1/k) Σ_i ζ̄^{ij} β^i` as coefficients on `e, β, …, β^{k−1}`.
pub fn projector(k: usize, j: usize) -> Vec<Complex64> {
    (0..k)
        .map(|i| {
            let phase = -2.0 * std::f64::consts::PI * ((i * j) % k) as f64 / k as f64;
            Complex64::from_polar(1.0 / k as f64, phase)
        })
        .collect()
}

/// Checks `β_j² = β_j`, `β_j β_{j'} = 0` and `Σ β_j = e` in `C[Z_k]`.
pub fn verify_projectors(k: usize, tolerance: f64) -> ProjectorReport {
    verify_projectors_with(Execution::default(), k, tolerance)
}

pub fn verify_projectors_with(exec: Execution, k: usize, tolerance: f64) -> ProjectorReport {
    assert!(k >= 1, "k must be positive");
    let projectors: Vec<Vec<Complex64>> = (0..k).map(|j| projector(k, j)).collect();
    let zero = vec![Complex64::zero(); k];
    let errors = par::map_range(exec, k, |j| {
        let mut idem = 0.0f64;
        let mut orth = 0.0f64;
        for (jp, q) in projectors.iter().enumerate() {
            let prod = convolve(&projectors[j], q);
            if jp == j {
                idem = distance(&prod, &projectors[j]);
            } else {
                orth = orth.max(distance(&prod, &zero));
            }
        }
        (idem, orth)
    });
    let mut sum = vec![Complex64::zero(); k];
    for p in &projectors {
        for (s, c) in sum.iter_mut().zip(p) {
            *s += c;
        }
    }
    let mut unit = zero;
    unit[0] = Complex64::new(1.0, 0.0);
    let max_idempotent_error = errors.iter().map(|e| e.0).fold(0.0, f64::max);
    let max_orthogonality_error = errors.iter().map(|e| e.1).fold(0.0, f64::max);
    let sum_error = distance(&sum, &unit);
    ProjectorReport {
        k,
        tolerance,
        max_idempotent_error,
        max_orthogonality_error,
        sum_error,
        passed: max_idempotent_error <= tolerance && max_orthogonality_error <= tolerance && sum_error <= tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centre::characters;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn two_colour_half() {
        let s = NegativeColourScheme::edge(4, 6);
        let centre = Centre::new(&s);
        let chi: Vec<_> = characters(centre.group()).collect();
        let p = nc_parameters(&s, 1, &chi[1]).unwrap();
        assert_eq!(p.dimension(), 4);
        assert_eq!(p.entry(1, 1, 2, 2), &q(1, 2));
        assert_eq!(p.entry(1, 1, 1, 2), &q(0, 1));
        let t = nc_parameters(&s, 1, &chi[0]).unwrap();
        assert!(t.theta.iter().flatten().all(Zero::is_zero));
    }

    #[test]
    fn two_colour_thirds_match_formula() {
        let s = NegativeColourScheme::edge(6, 9);
        let centre = Centre::new(&s);
        for (j, chi) in characters(centre.group()).enumerate() {
            let p = nc_parameters(&s, 2, &chi).unwrap();
            let surface = SurfaceContext::new(2);
            for lam in 1..=2 {
                for lamp in 1..=2 {
                    for l in 1..=4 {
                        for lp in 1..=4 {
                            let delta = if lam == lamp { 0 } else { 1 };
                            let expected = reduce_mod_one(&q(j as i64 * delta * surface.pairing(l, lp), 3));
                            assert_eq!(p.entry(lam, l, lamp, lp), &expected);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_foreign_and_irrational_characters() {
        let s = NegativeColourScheme::edge(4, 6);
        let other = Centre::new(&NegativeColourScheme::edge(3, 3));
        let chi = TorusCharacter::trivial(other.group());
        assert_eq!(nc_parameters(&s, 1, &chi), Err(CentreError::ContextMismatch));
        let square = NegativeColourScheme::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)], &[2; 4]).unwrap();
        let g = Centre::new(&square);
        let mut chi = TorusCharacter::trivial(g.group());
        chi.free_angles = vec![FreeAngle::Real(0.25)];
        assert_eq!(nc_parameters(&square, 1, &chi), Err(CentreError::IrrationalAngle));
        chi.free_angles = vec![FreeAngle::Rational(q(1, 4))];
        assert!(nc_parameters(&square, 1, &chi).is_ok());
    }

    #[test]
    fn projector_examples() {
        let one = projector(1, 0);
        assert_eq!(one, vec![Complex64::new(1.0, 0.0)]);
        let b1 = projector(2, 1);
        assert!((b1[0] - Complex64::new(0.5, 0.0)).norm() < 1e-15);
        assert!((b1[1] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
        for k in [1, 2, 12] {
            let r = verify_projectors(k, 1e-12);
            assert!(r.passed, "{r:?}");
        }
    }
}
