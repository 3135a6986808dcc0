//! The centre `D_k(Γ)`: generators `v_{λμ}` for the edges of `Γ`, one relation
//! `P'_μ = Σ_λ k_λ v_{λμ}` per colour.

use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::par::{self, Execution};
use crate::scheme::{analyze_graph, NegativeColourScheme};
use crate::zlinalg::{cokernel, kernel_mod, subquotient, AbelianInvariants, FgAbGroup, IntMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CentreError {
    #[error("graph is not connected; decompose into components first")]
    NotConnected,
    #[error("element and character belong to different groups")]
    ContextMismatch,
    #[error("free-part angle is not rational")]
    IrrationalAngle,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub(crate) fn fingerprint<T: Hash>(value: &T) -> u64 {
    let mut h = DefaultHasher::new();
    value.hash(&mut h);
    h.finish()
}

/// Presentation matrix of `D_k(Γ)`: row `e = {λ, μ}` has `k_μ` in column `λ`
/// and `k_λ` in column `μ`; column `μ` is the relation `P'_μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentrePresentation {
    scheme: NegativeColourScheme,
    matrix: IntMatrix,
}

impl CentrePresentation {
    pub fn new(scheme: &NegativeColourScheme) -> Self {
        let mut matrix = IntMatrix::zeros(scheme.edge_count(), scheme.r());
        for (e, &(a, b)) in scheme.edges().iter().enumerate() {
            matrix.set(e, a - 1, scheme.degree(b));
            matrix.set(e, b - 1, scheme.degree(a));
        }
        CentrePresentation {
            scheme: scheme.clone(),
            matrix,
        }
    }

    pub fn scheme(&self) -> &NegativeColourScheme {
        &self.scheme
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Generator order: the scheme's sorted edge list.
    pub fn edge_index(&self) -> &[(usize, usize)] {
        self.scheme.edges()
    }

    /// The relation `P'_μ` as a vector over the edge generators.
    pub fn relation(&self, colour: usize) -> Vec<BigInt> {
        self.matrix.column(colour - 1)
    }
}

/// An element of the centre, always stored as its canonical coset representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CentralElement {
    coefficients: Vec<BigInt>,
    context: u64,
}

impl CentralElement {
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }
}

/// `D_k(Γ)` with its presentation, ready to canonicalize elements.
#[derive(Clone, Debug)]
pub struct Centre {
    presentation: CentrePresentation,
    group: FgAbGroup,
    context: u64,
}

impl Centre {
    pub fn new(scheme: &NegativeColourScheme) -> Self {
        let presentation = CentrePresentation::new(scheme);
        let group = cokernel(presentation.matrix());
        Centre {
            context: fingerprint(scheme),
            presentation,
            group,
        }
    }

    pub fn scheme(&self) -> &NegativeColourScheme {
        &self.presentation.scheme
    }

    pub fn presentation(&self) -> &CentrePresentation {
        &self.presentation
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn element(&self, coefficients: &[BigInt]) -> Result<CentralElement, CentreError> {
        Ok(CentralElement {
            coefficients: self.group.coset_canonical(coefficients)?,
            context: self.context,
        })
    }

    pub fn zero(&self) -> CentralElement {
        CentralElement {
            coefficients: vec![BigInt::zero(); self.group.ambient()],
            context: self.context,
        }
    }

    /// Class of `b_{a,b}`; the identity when `{a, b}` is not an edge.
    pub fn generator(&self, a: usize, b: usize) -> CentralElement {
        let mut v = vec![BigInt::zero(); self.group.ambient()];
        if let Some(e) = self.scheme().edge_index(a, b) {
            v[e] = BigInt::one();
        }
        self.element(&v).expect("generator has ambient length")
    }

    fn check(&self, x: &CentralElement) -> Result<(), CentreError> {
        if x.context != self.context {
            return Err(CentreError::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, x: &CentralElement, y: &CentralElement) -> Result<CentralElement, CentreError> {
        self.check(x)?;
        self.check(y)?;
        let sum: Vec<BigInt> = x.coefficients.iter().zip(&y.coefficients).map(|(a, b)| a + b).collect();
        self.element(&sum)
    }

    pub fn scale(&self, x: &CentralElement, n: &BigInt) -> Result<CentralElement, CentreError> {
        self.check(x)?;
        let v: Vec<BigInt> = x.coefficients.iter().map(|a| a * n).collect();
        self.element(&v)
    }

    /// Canonical coordinates (torsion residues, then free coordinates).
    pub fn coordinates(&self, x: &CentralElement) -> Result<Vec<BigInt>, CentreError> {
        self.check(x)?;
        Ok(self.group.coordinates(&x.coefficients)?)
    }
}

pub fn centre_group(scheme: &NegativeColourScheme) -> FgAbGroup {
    cokernel(CentrePresentation::new(scheme).matrix())
}

/// `s − r + t`.
pub fn centre_rank_formula(scheme: &NegativeColourScheme) -> usize {
    let g = analyze_graph(scheme);
    g.s + g.t - scheme.r()
}

/// Torsion of `D_k(Γ)` for connected `Γ` from the solutions of
/// `k_λ c_μ + k_μ c_λ ≡ 0` on the `(1/N)`-grid of `(Q/Z)^r`, quotiented in the
/// bipartite case by the grid points of the line `c_λ = ε_λ k_λ s`.
///
/// `n` must be a multiple of the torsion exponent.
pub fn torsion_via_diophantine(scheme: &NegativeColourScheme, n: &BigInt) -> Result<FgAbGroup, CentreError> {
    let analysis = analyze_graph(scheme);
    if !analysis.is_connected() {
        return Err(CentreError::NotConnected);
    }
    let presentation = CentrePresentation::new(scheme);
    // x = N·c turns the grid condition into A·x ≡ 0 (mod N)
    let kernel = kernel_mod(presentation.matrix(), n)?;
    let r = scheme.r();
    let mut sub: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let mut e = vec![BigInt::zero(); r];
            e[i] = n.clone();
            e
        })
        .collect();
    let component = &analysis.components[0];
    if component.is_bipartite() {
        let g = scheme
            .degrees()
            .iter()
            .fold(0u64, |acc, &k| acc.gcd(&k));
        let line = (1..=r)
            .map(|v| {
                let eps = component.sign(v).expect("vertex in component");
                BigInt::from(eps) * BigInt::from(scheme.degree(v) / g)
            })
            .collect();
        sub.push(line);
    }
    Ok(subquotient(&kernel.lattice, &sub)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCheckReport {
    pub snf_torsion: AbelianInvariants,
    pub diophantine_torsion: AbelianInvariants,
    /// Same route at twice the exponent.
    pub diophantine_torsion_doubled: AbelianInvariants,
    pub exponent_used: BigInt,
    pub agree: bool,
}

impl TorsionCheckReport {
    pub fn to_json(&self) -> Value {
        json!({
            "snf_torsion": invariants_json(&self.snf_torsion),
            "diophantine_torsion": invariants_json(&self.diophantine_torsion),
            "diophantine_torsion_doubled": invariants_json(&self.diophantine_torsion_doubled),
            "exponent_used": self.exponent_used.to_string(),
            "agree": self.agree,
        })
    }
}

/// `{"rank": r, "invariant_factors": [d_1, ...]}`; factors past `u64` become strings.
pub fn invariants_json(a: &AbelianInvariants) -> Value {
    json!({
        "rank": a.rank,
        "invariant_factors": a.torsion.iter().map(|d| json!(d.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(d.to_string())))).collect::<Vec<_>>(),
    })
}

/// Compares the SNF torsion with the Diophantine route, component by component,
/// at `N` = the SNF exponent and at `2N`.
pub fn cross_check_torsion(scheme: &NegativeColourScheme) -> TorsionCheckReport {
    let snf_torsion = centre_group(scheme).invariants().torsion_part();
    let exponent = snf_torsion.torsion.last().cloned().unwrap_or_else(BigInt::one);
    let doubled = &exponent * 2;
    let route = |n: &BigInt| {
        scheme
            .components()
            .iter()
            .map(|(c, _)| {
                torsion_via_diophantine(c, n)
                    .expect("component is connected")
                    .invariants()
            })
            .fold(AbelianInvariants::trivial(), |acc, g| acc.direct_sum(&g))
    };
    let diophantine_torsion = route(&exponent);
    let diophantine_torsion_doubled = route(&doubled);
    let agree = diophantine_torsion == snf_torsion && diophantine_torsion_doubled == snf_torsion;
    TorsionCheckReport {
        snf_torsion,
        diophantine_torsion,
        diophantine_torsion_doubled,
        exponent_used: exponent,
        agree,
    }
}

/// An angle on one free `U(1)` factor, in turns.
#[derive(Clone, Debug, PartialEq)]
pub enum FreeAngle {
    Rational(BigRational),
    /// A point not known to be torsion.
    Real(f64),
}

impl FreeAngle {
    pub fn zero() -> Self {
        FreeAngle::Rational(BigRational::zero())
    }
}

/// A character of the centre: residues `j_i mod d_i` on the torsion factors
/// and angles on the free factors.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusCharacter {
    pub factors: Vec<BigInt>,
    pub residues: Vec<BigInt>,
    pub free_angles: Vec<FreeAngle>,
}

impl TorusCharacter {
    pub fn trivial(group: &FgAbGroup) -> Self {
        let factors = group.invariant_factors();
        TorusCharacter {
            residues: vec![BigInt::zero(); factors.len()],
            factors,
            free_angles: vec![FreeAngle::zero(); group.rank()],
        }
    }

    pub fn new(group: &FgAbGroup, residues: &[BigInt], free_angles: Vec<FreeAngle>) -> Result<Self, CentreError> {
        let factors = group.invariant_factors();
        if residues.len() != factors.len() || free_angles.len() != group.rank() {
            return Err(CentreError::ContextMismatch);
        }
        Ok(TorusCharacter {
            residues: residues.iter().zip(&factors).map(|(j, d)| j.mod_floor(d)).collect(),
            factors,
            free_angles,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
            && self.free_angles.iter().all(|a| matches!(a, FreeAngle::Rational(q) if q.is_integer()))
    }

    /// Pointwise sum `χ₁ + χ₂`.
    pub fn add(&self, other: &TorusCharacter) -> Result<TorusCharacter, CentreError> {
        if self.factors != other.factors || self.free_angles.len() != other.free_angles.len() {
            return Err(CentreError::ContextMismatch);
        }
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(&self.factors)
            .map(|((a, b), d)| (a + b).mod_floor(d))
            .collect();
        let free_angles = self
            .free_angles
            .iter()
            .zip(&other.free_angles)
            .map(|(a, b)| match (a, b) {
                (FreeAngle::Rational(x), FreeAngle::Rational(y)) => FreeAngle::Rational(reduce_mod_one(&(x + y))),
                (FreeAngle::Rational(x), FreeAngle::Real(y)) | (FreeAngle::Real(y), FreeAngle::Rational(x)) => {
                    FreeAngle::Real(y + ratio_to_f64(x))
                }
                (FreeAngle::Real(x), FreeAngle::Real(y)) => FreeAngle::Real(x + y),
            })
            .collect();
        Ok(TorusCharacter {
            factors: self.factors.clone(),
            residues,
            free_angles,
        })
    }

    /// `χ(v)` in `Q/Z`, reduced to `[0, 1)`, for an ambient vector of `group`.
    pub fn evaluate(&self, group: &FgAbGroup, v: &[BigInt]) -> Result<BigRational, CentreError> {
        if group.invariant_factors() != self.factors || group.rank() != self.free_angles.len() {
            return Err(CentreError::ContextMismatch);
        }
        let coords = group.coordinates(v)?;
        let (torsion, free) = coords.split_at(self.factors.len());
        let mut total = BigRational::zero();
        for ((j, d), c) in self.residues.iter().zip(&self.factors).zip(torsion) {
            total += BigRational::new(j * c, d.clone());
        }
        for (angle, c) in self.free_angles.iter().zip(free) {
            if c.is_zero() {
                continue;
            }
            match angle {
                FreeAngle::Rational(q) => total += q * BigRational::from_integer(c.clone()),
                FreeAngle::Real(_) => return Err(CentreError::IrrationalAngle),
            }
        }
        Ok(reduce_mod_one(&total))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factors": self.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "residues": self.residues.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "free_angles": self.free_angles.iter().map(|a| match a {
                FreeAngle::Rational(q) => Value::from(format_ratio(q)),
                FreeAngle::Real(x) => Value::from(*x),
            }).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn reduce_mod_one(q: &BigRational) -> BigRational {
    let f = q - q.floor();
    if f.is_negative() {
        f + BigRational::one()
    } else {
        f
    }
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_ratio(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Enumerates all characters of the torsion subgroup, free angles zero,
/// residues in lexicographic order (last factor fastest).
#[derive(Clone, Debug)]
pub struct CharacterIter {
    factors: Vec<BigInt>,
    free: usize,
    next: Option<Vec<BigInt>>,
}

impl Iterator for CharacterIter {
    type Item = TorusCharacter;

    fn next(&mut self) -> Option<TorusCharacter> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let mut carried = true;
        while carried && i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] == self.factors[i] {
                succ[i] = BigInt::zero();
            } else {
                carried = false;
            }
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(TorusCharacter {
            factors: self.factors.clone(),
            residues: current,
            free_angles: vec![FreeAngle::zero(); self.free],
        })
    }
}

pub fn characters(group: &FgAbGroup) -> CharacterIter {
    let factors = group.invariant_factors();
    CharacterIter {
        next: Some(vec![BigInt::zero(); factors.len()]),
        factors,
        free: group.rank(),
    }
}

/// The `index`-th character in the order of [`characters`].
pub fn character_at(group: &FgAbGroup, index: &BigInt) -> TorusCharacter {
    let factors = group.invariant_factors();
    let mut rest = index.clone();
    let mut residues = vec![BigInt::zero(); factors.len()];
    for i in (0..factors.len()).rev() {
        let (q, r) = rest.div_mod_floor(&factors[i]);
        residues[i] = r;
        rest = q;
    }
    TorusCharacter {
        factors,
        residues,
        free_angles: vec![FreeAngle::zero(); group.rank()],
    }
}

pub fn character_value(chi: &TorusCharacter, centre: &Centre, x: &CentralElement) -> Result<BigRational, CentreError> {
    centre.check(x)?;
    chi.evaluate(centre.group(), x.coefficients())
}

/// Centre groups for many schemes at once.
pub fn centre_groups(exec: Execution, schemes: &[NegativeColourScheme]) -> Vec<AbelianInvariants> {
    par::map_slice(exec, schemes, |s| centre_group(s).invariants())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::disjoint_union;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn inv(rank: usize, t: &[i64]) -> AbelianInvariants {
        AbelianInvariants::from_cyclic_orders(rank, t.iter().copied())
    }

    fn pentagon(k: &[i64]) -> NegativeColourScheme {
        NegativeColourScheme::new(5, [(1, 2), (1, 3), (2, 4), (3, 5), (4, 5)], k).unwrap()
    }

    fn spider(k: &[i64]) -> NegativeColourScheme {
        NegativeColourScheme::new(7, [(1, 4), (2, 5), (3, 6), (1, 7), (2, 7), (3, 7)], k).unwrap()
    }

    #[test]
    fn presentation_rows_have_two_entries() {
        let p = CentrePresentation::new(&pentagon(&[2, 3, 5, 7, 11]));
        for e in 0..p.matrix().rows() {
            assert_eq!(p.matrix().row(e).iter().filter(|x| !x.is_zero()).count(), 2);
        }
        // P'_1 = k_2 v_{12} + k_3 v_{13}
        assert_eq!(p.relation(1), ints(&[3, 5, 0, 0, 0]));
    }

    #[test]
    fn centre_examples() {
        assert_eq!(centre_group(&NegativeColourScheme::edge(4, 6)).invariants(), inv(0, &[2]));
        assert_eq!(centre_group(&pentagon(&[2, 3, 5, 7, 11])).invariants(), inv(0, &[4620]));
        assert_eq!(
            centre_group(&spider(&[2, 3, 5, 7, 11, 13, 17])).invariants(),
            inv(0, &[510, 17])
        );
        assert_eq!(centre_group(&NegativeColourScheme::complete(&[1, 1, 1])).invariants(), inv(0, &[2]));
    }

    #[test]
    fn rank_formula_examples() {
        assert_eq!(centre_rank_formula(&spider(&[1; 7])), 0);
        assert_eq!(centre_rank_formula(&pentagon(&[1; 5])), 0);
        let two_edges = NegativeColourScheme::new(4, [(1, 2), (3, 4)], &[1; 4]).unwrap();
        assert_eq!(centre_rank_formula(&two_edges), 0);
        let square = NegativeColourScheme::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)], &[2; 4]).unwrap();
        assert_eq!(centre_rank_formula(&square), 1);
        assert_eq!(centre_group(&square).rank(), 1);
    }

    #[test]
    fn diophantine_edge_cases() {
        let t = torsion_via_diophantine(&NegativeColourScheme::edge(2, 2), &BigInt::from(2)).unwrap();
        assert_eq!(t.invariants(), inv(0, &[2]));
        let t = torsion_via_diophantine(&NegativeColourScheme::edge(2, 4), &BigInt::from(2)).unwrap();
        assert_eq!(t.invariants(), inv(0, &[2]));
        let single = NegativeColourScheme::new(1, [], &[7]).unwrap();
        assert!(torsion_via_diophantine(&single, &BigInt::from(1)).unwrap().is_trivial());
        let split = NegativeColourScheme::new(4, [(1, 2), (3, 4)], &[2; 4]).unwrap();
        assert_eq!(
            torsion_via_diophantine(&split, &BigInt::from(2)),
            Err(CentreError::NotConnected)
        );
    }

    #[test]
    fn cross_check_examples() {
        let r = cross_check_torsion(&pentagon(&[2, 2, 2, 3, 3]));
        assert!(r.agree);
        assert_eq!(r.snf_torsion, inv(0, &[72, 2]));
        let r = cross_check_torsion(&spider(&[3; 7]));
        assert!(r.agree);
        assert_eq!(r.diophantine_torsion, inv(0, &[3, 3, 3, 3, 3, 3]));
        let r = cross_check_torsion(&NegativeColourScheme::new(1, [], &[4]).unwrap());
        assert!(r.agree && r.snf_torsion.is_trivial());
        let u = disjoint_union(&pentagon(&[2, 2, 2, 3, 3]), &NegativeColourScheme::edge(4, 6));
        assert!(cross_check_torsion(&u).agree);
    }

    #[test]
    fn character_enumeration() {
        let z2 = centre_group(&NegativeColourScheme::edge(2, 4));
        let chars: Vec<_> = characters(&z2).collect();
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_trivial());
        let z6 = cokernel(&IntMatrix::from_i64(1, 1, &[6]));
        assert_eq!(characters(&z6).count(), 6);
        let z2z4 = cokernel(&IntMatrix::diagonal(2, 2, [2, 4]));
        let all: Vec<_> = characters(&z2z4).collect();
        assert_eq!(all.len(), 8);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(*c, character_at(&z2z4, &BigInt::from(i)));
        }
    }

    #[test]
    fn character_values() {
        let centre = Centre::new(&NegativeColourScheme::edge(2, 4));
        let b = centre.generator(1, 2);
        let chars: Vec<_> = characters(centre.group()).collect();
        assert_eq!(character_value(&chars[0], &centre, &b).unwrap(), BigRational::zero());
        assert_eq!(
            character_value(&chars[1], &centre, &b).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        let other = Centre::new(&NegativeColourScheme::edge(2, 6));
        assert_eq!(
            character_value(&chars[1], &other, &b),
            Err(CentreError::ContextMismatch)
        );
        let z3 = Centre::new(&NegativeColourScheme::edge(3, 3));
        assert_eq!(
            character_value(&chars[1], &z3, &z3.generator(1, 2)),
            Err(CentreError::ContextMismatch)
        );
    }

    #[test]
    fn irrational_angles_only_fail_on_free_coordinates() {
        let square = NegativeColourScheme::new(4, [(1, 2), (2, 3), (3, 4), (1, 4)], &[2; 4]).unwrap();
        let centre = Centre::new(&square);
        let g = centre.group();
        let chi = TorusCharacter::new(g, &vec![BigInt::zero(); g.invariant_factors().len()], vec![FreeAngle::Real(0.3)]).unwrap();
        assert!(chi.evaluate(g, &vec![BigInt::zero(); 4]).is_ok());
        let free_gen = g.generators().last().unwrap().clone();
        assert_eq!(chi.evaluate(g, &free_gen), Err(CentreError::IrrationalAngle));
    }
}
