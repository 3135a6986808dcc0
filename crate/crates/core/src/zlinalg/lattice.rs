use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{cokernel, hnf, snf, FgAbGroup, IntMatrix, LinalgError};

/// A sublattice of `Z^dim`, held as the nonzero rows of a Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn from_generators(dim: usize, generators: &[Vec<BigInt>]) -> Result<Self, LinalgError> {
        if let Some(g) = generators.iter().find(|g| g.len() != dim) {
            return Err(LinalgError::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        let m = IntMatrix::from_rows(dim, generators)?;
        let (h, _) = hnf(&m);
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for i in 0..h.rows() {
            let row = h.row(i);
            if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                basis.push(row.to_vec());
                pivots.push(p);
            }
        }
        Ok(Lattice { dim, basis, pivots })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Integer coordinates of `v` in the echelon basis, or `None` if `v ∉ L`.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let (q, r) = rest[p].div_rem(&row[p]);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (x, b) in rest.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
            coords.push(q);
        }
        Ok(rest.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool, LinalgError> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn vector_from_coordinates(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in out.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        out
    }
}

/// `L / S` where `S` is spanned by `sub_generators` (which must lie in `L`).
/// The resulting group's ambient coordinates are the echelon coordinates of `L`.
pub fn subquotient(lattice: &Lattice, sub_generators: &[Vec<BigInt>]) -> Result<FgAbGroup, LinalgError> {
    let mut y = IntMatrix::zeros(lattice.rank(), sub_generators.len());
    for (j, g) in sub_generators.iter().enumerate() {
        let c = lattice.coordinates(g)?.ok_or(LinalgError::NotSublattice)?;
        for (i, ci) in c.into_iter().enumerate() {
            y.set(i, j, ci);
        }
    }
    Ok(cokernel(&y))
}

/// Solutions of `A·x ≡ 0 (mod N)` as a subgroup of `(Z/N)^cols`.
#[derive(Clone, Debug)]
pub struct ModKernel {
    pub modulus: BigInt,
    /// `{x ∈ Z^cols : A·x ∈ N·Z^rows}`; contains `N·Z^cols`.
    pub lattice: Lattice,
    /// Structure of `lattice / N·Z^cols`, in lattice coordinates.
    pub group: FgAbGroup,
    /// Representatives in `[0, N)^cols` of the canonical generators.
    pub generators: Vec<Vec<BigInt>>,
}

impl ModKernel {
    /// Canonical coordinates of a solution vector, `None` if `x` is not a solution.
    pub fn coordinates(&self, x: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        match self.lattice.coordinates(x)? {
            Some(c) => Ok(Some(self.group.coordinates(&c)?)),
            None => Ok(None),
        }
    }
}

/// Integer lattice of solutions to `A·x ≡ 0 (mod N)`, via the kernel of `[A | N·I]`.
pub fn solution_lattice(a: &IntMatrix, modulus: &BigInt) -> Result<Lattice, LinalgError> {
    if *modulus < BigInt::from(1) {
        return Err(LinalgError::InvalidModulus(modulus.clone()));
    }
    let (rows, cols) = (a.rows(), a.cols());
    let stacked = a.hstack(&IntMatrix::diagonal(rows, rows, vec![modulus.clone(); rows]))?;
    let s = snf(&stacked);
    let rank = s.rank();
    let gens: Vec<Vec<BigInt>> = (rank..stacked.cols())
        .map(|j| (0..cols).map(|i| s.v.get(i, j).clone()).collect())
        .collect();
    Lattice::from_generators(cols, &gens)
}

pub fn kernel_mod(a: &IntMatrix, modulus: &BigInt) -> Result<ModKernel, LinalgError> {
    let cols = a.cols();
    let lattice = solution_lattice(a, modulus)?;
    let scaled: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            let mut e = vec![BigInt::zero(); cols];
            e[i] = modulus.clone();
            e
        })
        .collect();
    let group = subquotient(&lattice, &scaled)?;
    let generators = group
        .generators()
        .iter()
        .map(|c| {
            lattice
                .vector_from_coordinates(c)
                .into_iter()
                .map(|x| x.mod_floor(modulus))
                .collect()
        })
        .collect();
    Ok(ModKernel {
        modulus: modulus.clone(),
        lattice,
        group,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn lattice_membership() {
        let l = Lattice::from_generators(2, &[ints(&[2, 0]), ints(&[1, 3])]).unwrap();
        assert_eq!(l.rank(), 2);
        assert!(l.contains(&ints(&[3, 3])).unwrap());
        assert!(!l.contains(&ints(&[1, 0])).unwrap());
        let c = l.coordinates(&ints(&[5, 9])).unwrap().unwrap();
        assert_eq!(l.vector_from_coordinates(&c), ints(&[5, 9]));
    }

    #[test]
    fn kernel_mod_examples() {
        let k = kernel_mod(&IntMatrix::from_i64(1, 2, &[4, 2]), &BigInt::from(2)).unwrap();
        assert_eq!(k.group.invariant_factors(), ints(&[2, 2]));

        let k = kernel_mod(&IntMatrix::identity(3), &BigInt::from(5)).unwrap();
        assert!(k.group.is_trivial());

        let k = kernel_mod(&IntMatrix::zeros(1, 1), &BigInt::from(6)).unwrap();
        assert_eq!(k.group.invariant_factors(), ints(&[6]));
        assert_eq!(k.generators.len(), 1);
    }

    #[test]
    fn kernel_generators_solve_the_system() {
        let a = IntMatrix::from_i64(2, 3, &[2, 3, 0, 0, 4, 6]);
        let n = BigInt::from(12);
        let k = kernel_mod(&a, &n).unwrap();
        for g in &k.generators {
            for v in a.mul_vec(g).unwrap() {
                assert!(v.is_multiple_of(&n));
            }
        }
        assert_eq!(k.modulus, n);
        assert!(k.coordinates(&ints(&[1, 0, 0])).unwrap().is_none());
    }

    #[test]
    fn kernel_mod_rejects_bad_modulus() {
        let r = kernel_mod(&IntMatrix::identity(1), &BigInt::zero());
        assert!(matches!(r, Err(LinalgError::InvalidModulus(_))));
        assert!(kernel_mod(&IntMatrix::identity(1), &BigInt::one()).is_ok());
    }
}
