use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{snf, IntMatrix, LinalgError};

/// A finitely generated abelian group `Z^n / L`, together with the unimodular
/// change of basis that puts `L` in diagonal form.
///
/// Canonical row `i` of `to_canonical` carries modulus `moduli[i]`: `1` means
/// the coordinate is always zero, `d > 1` a torsion residue mod `d`, `0` a free
/// coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    moduli: Vec<BigInt>,
    to_canonical: IntMatrix,
    from_canonical: IntMatrix,
}

impl FgAbGroup {
    pub fn ambient(&self) -> usize {
        self.moduli.len()
    }

    pub fn rank(&self) -> usize {
        self.moduli.iter().filter(|d| d.is_zero()).count()
    }

    /// Torsion invariant factors in divisibility order, ones dropped.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.moduli.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }

    pub fn to_canonical(&self) -> &IntMatrix {
        &self.to_canonical
    }

    pub fn from_canonical(&self) -> &IntMatrix {
        &self.from_canonical
    }

    pub fn torsion_order(&self) -> BigInt {
        self.invariant_factors().iter().product()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.rank() == 0).then(|| self.torsion_order())
    }

    /// Exponent of the torsion subgroup (1 when torsion-free).
    pub fn torsion_exponent(&self) -> BigInt {
        self.invariant_factors().last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.rank() == 0 && self.invariant_factors().is_empty()
    }

    pub fn invariants(&self) -> AbelianInvariants {
        AbelianInvariants {
            rank: self.rank(),
            torsion: self.invariant_factors(),
        }
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), LinalgError> {
        if v.len() != self.ambient() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Canonical coordinates of the class of `v`: torsion residues in the
    /// order of [`Self::invariant_factors`], followed by the free coordinates.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        self.check_len(v)?;
        let y = self.to_canonical.mul_vec(v)?;
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (yi, d) in y.into_iter().zip(&self.moduli) {
            if d.is_zero() {
                free.push(yi);
            } else if !d.is_one() {
                torsion.push(yi.mod_floor(d));
            }
        }
        torsion.extend(free);
        Ok(torsion)
    }

    /// Ambient vector whose class has the given canonical coordinates.
    pub fn from_coordinates(&self, coords: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        let slots = self.invariant_factors().len() + self.rank();
        if coords.len() != slots {
            return Err(LinalgError::DimensionMismatch {
                expected: slots,
                found: coords.len(),
            });
        }
        let mut y = vec![BigInt::zero(); self.ambient()];
        let (mut t, mut f) = (0, self.invariant_factors().len());
        for (i, d) in self.moduli.iter().enumerate() {
            if d.is_zero() {
                y[i] = coords[f].clone();
                f += 1;
            } else if !d.is_one() {
                y[i] = coords[t].clone();
                t += 1;
            }
        }
        self.from_canonical.mul_vec(&y)
    }

    /// Deterministic representative of `v + L`.
    pub fn coset_canonical(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        self.check_len(v)?;
        let mut y = self.to_canonical.mul_vec(v)?;
        for (yi, d) in y.iter_mut().zip(&self.moduli) {
            if !d.is_zero() {
                *yi = yi.mod_floor(d);
            }
        }
        self.from_canonical.mul_vec(&y)
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.iter().all(Zero::is_zero))
    }

    /// Ambient vectors of the canonical generators (torsion first, then free).
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        let pick = |free: bool| {
            self.moduli
                .iter()
                .enumerate()
                .filter(move |(_, d)| d.is_zero() == free && !d.is_one())
                .map(|(i, _)| self.from_canonical.column(i))
        };
        pick(false).chain(pick(true)).collect()
    }
}

/// `Z^n / column-span(A)` for an `n × m` matrix `A`.
pub fn cokernel(a: &IntMatrix) -> FgAbGroup {
    let n = a.rows();
    let s = snf(a);
    let diag = s.diagonal();
    let moduli = (0..n)
        .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
        .collect();
    FgAbGroup {
        moduli,
        to_canonical: s.u,
        from_canonical: s.u_inv,
    }
}

/// Isomorphism type of a finitely generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    /// Invariant factors > 1 in divisibility order.
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    /// Normalizes `Z^rank ⊕ Z_{n_1} ⊕ …` into invariant-factor form, so that
    /// e.g. `Z_2 ⊕ Z_3` and `Z_6` compare equal. Orders 0 count as free.
    pub fn from_cyclic_orders<I>(rank: usize, orders: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        let orders: Vec<BigInt> = orders.into_iter().map(Into::into).collect();
        let extra_free = orders.iter().filter(|o| o.is_zero()).count();
        let finite: Vec<BigInt> = orders.into_iter().filter(|o| !o.is_zero()).collect();
        let k = finite.len();
        let g = cokernel(&IntMatrix::diagonal(k, k, finite));
        AbelianInvariants {
            rank: rank + extra_free,
            torsion: g.invariant_factors(),
        }
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        Self::from_cyclic_orders(
            self.rank + other.rank,
            self.torsion.iter().chain(&other.torsion).cloned(),
        )
    }

    pub fn torsion_part(&self) -> AbelianInvariants {
        AbelianInvariants {
            rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z_{d}")).collect();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cokernel_examples() {
        let g = cokernel(&IntMatrix::from_i64(1, 2, &[4, 2]));
        assert_eq!(g.rank(), 0);
        assert_eq!(g.invariant_factors(), ints(&[2]));

        let g = cokernel(&IntMatrix::zeros(3, 0));
        assert_eq!(g.rank(), 3);
        assert!(g.invariant_factors().is_empty());

        let g = cokernel(&IntMatrix::identity(2));
        assert!(g.is_trivial());
        assert_eq!(g.order(), Some(BigInt::one()));
    }

    #[test]
    fn coset_representatives() {
        let a = IntMatrix::from_i64(2, 1, &[2, 4]);
        let g = cokernel(&a);
        assert_eq!(g.invariants(), AbelianInvariants { rank: 1, torsion: ints(&[2]) });
        let v = ints(&[3, -1]);
        let w: Vec<BigInt> = v.iter().zip(ints(&[2, 4])).map(|(x, y)| x + y).collect();
        assert_eq!(g.coset_canonical(&v).unwrap(), g.coset_canonical(&w).unwrap());
        assert!(g.is_zero_element(&ints(&[2, 4])).unwrap());
        assert!(g.coset_canonical(&ints(&[-4, -8])).unwrap().iter().all(Zero::is_zero));
        assert!(matches!(
            g.coset_canonical(&ints(&[1])),
            Err(LinalgError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn coordinates_round_trip() {
        let a = IntMatrix::from_i64(3, 2, &[2, 0, 0, 6, 0, 0]);
        let g = cokernel(&a);
        let v = ints(&[5, -7, 11]);
        let c = g.coordinates(&v).unwrap();
        let back = g.from_coordinates(&c).unwrap();
        assert_eq!(g.coset_canonical(&back).unwrap(), g.coset_canonical(&v).unwrap());
        assert_eq!(g.generators().len(), 3);
    }

    #[test]
    fn invariant_normalization() {
        let a = AbelianInvariants::from_cyclic_orders(0, [2, 3]);
        assert_eq!(a.torsion, ints(&[6]));
        let b = AbelianInvariants::from_cyclic_orders(1, [4, 6, 1, 0]);
        assert_eq!(b, AbelianInvariants { rank: 2, torsion: ints(&[2, 12]) });
        assert_eq!(b.to_string(), "Z_2 + Z_12 + Z^2");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }
}
