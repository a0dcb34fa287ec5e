use std::fmt;

use num_complex::Complex;

use crate::operator_core::{tensor, DenseOperator};
use crate::{Error, Result, Scalar};

/// Overall sign of a Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// An n-qubit Pauli operator in the symplectic bit representation.
///
/// Site `j` carries `X` when `x_bits[j]` is set, `Z` when `z_bits[j]` is set,
/// and `Y` when both are. Matrix realization fixes the phase convention in
/// one place: a site with both bits set contributes `Y = i X Z` (the factor
/// `i` compensates `X Z = -i Y`), so every `PauliString` matrix is Hermitian
/// and unitary regardless of its bit pattern. All string parsers funnel
/// through this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliString {
    n: usize,
    x_bits: Vec<bool>,
    z_bits: Vec<bool>,
    sign: Sign,
}

impl PauliString {
    pub fn new(x_bits: Vec<bool>, z_bits: Vec<bool>, sign: Sign) -> Result<Self> {
        if x_bits.is_empty() || x_bits.len() != z_bits.len() {
            return Err(Error::validation(
                "x and z bit vectors must be nonempty and of equal length",
            ));
        }
        Ok(Self {
            n: x_bits.len(),
            x_bits,
            z_bits,
            sign,
        })
    }

    /// Parse `"XZIY"`, optionally prefixed with `+` or `-`.
    pub fn parse(s: &str) -> Result<Self> {
        let (sign, body) = match s.strip_prefix('+') {
            Some(rest) => (Sign::Plus, rest),
            None => match s.strip_prefix('-') {
                Some(rest) => (Sign::Minus, rest),
                None => (Sign::Plus, s),
            },
        };
        if body.is_empty() {
            return Err(Error::argument("empty Pauli string"));
        }
        let mut x_bits = Vec::with_capacity(body.len());
        let mut z_bits = Vec::with_capacity(body.len());
        for ch in body.chars() {
            let (x, z) = match ch {
                'I' | 'i' => (false, false),
                'X' | 'x' => (true, false),
                'Z' | 'z' => (false, true),
                'Y' | 'y' => (true, true),
                other => {
                    return Err(Error::argument(format!(
                        "invalid Pauli letter '{other}' in \"{s}\""
                    )))
                }
            };
            x_bits.push(x);
            z_bits.push(z);
        }
        Self::new(x_bits, z_bits, sign)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn x_bits(&self) -> &[bool] {
        &self.x_bits
    }

    pub fn z_bits(&self) -> &[bool] {
        &self.z_bits
    }

    /// Symplectic inner product: zero iff the two strings commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        assert_eq!(self.n, other.n, "Pauli strings of different length");
        let mut acc = false;
        for j in 0..self.n {
            acc ^= self.x_bits[j] & other.z_bits[j];
            acc ^= self.z_bits[j] & other.x_bits[j];
        }
        !acc
    }

    /// Dense matrix realization; see the type docs for the phase convention.
    pub fn to_matrix<T: Scalar>(&self) -> DenseOperator<T> {
        let zero = T::zero();
        let one = T::one();
        let factors: Vec<DenseOperator<T>> = self
            .x_bits
            .iter()
            .zip(&self.z_bits)
            .map(|(&x, &z)| {
                let entries: [Complex<T>; 4] = match (x, z) {
                    (false, false) => [
                        Complex::new(one, zero),
                        Complex::new(zero, zero),
                        Complex::new(zero, zero),
                        Complex::new(one, zero),
                    ],
                    (true, false) => [
                        Complex::new(zero, zero),
                        Complex::new(one, zero),
                        Complex::new(one, zero),
                        Complex::new(zero, zero),
                    ],
                    (false, true) => [
                        Complex::new(one, zero),
                        Complex::new(zero, zero),
                        Complex::new(zero, zero),
                        Complex::new(-one, zero),
                    ],
                    (true, true) => [
                        Complex::new(zero, zero),
                        Complex::new(zero, -one),
                        Complex::new(zero, one),
                        Complex::new(zero, zero),
                    ],
                };
                DenseOperator::from_rows(2, &entries).expect("pauli site matrix")
            })
            .collect();
        let m = tensor(&factors).expect("nonempty factor list");
        match self.sign {
            Sign::Plus => m,
            Sign::Minus => m.scale(Complex::new(-one, zero)),
        }
    }

    /// GF(2) rank of the stacked `(x|z)` rows; full rank means independent.
    pub fn independent(strings: &[PauliString]) -> Result<bool> {
        if strings.is_empty() {
            return Ok(true);
        }
        let n = strings[0].n;
        if n > 32 {
            return Err(Error::argument(
                "independence check supports up to 32 qubits",
            ));
        }
        if strings.iter().any(|p| p.n != n) {
            return Err(Error::validation("Pauli strings of different length"));
        }
        let mut rows: Vec<u64> = strings
            .iter()
            .map(|p| {
                let mut row = 0u64;
                for j in 0..n {
                    if p.x_bits[j] {
                        row |= 1 << j;
                    }
                    if p.z_bits[j] {
                        row |= 1 << (n + j);
                    }
                }
                row
            })
            .collect();
        let mut rank = 0usize;
        for bit in 0..(2 * n) {
            let mask = 1u64 << bit;
            if let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) {
                rows.swap(rank, pivot);
                let pivot_row = rows[rank];
                for (r, row) in rows.iter_mut().enumerate() {
                    if r != rank && *row & mask != 0 {
                        *row ^= pivot_row;
                    }
                }
                rank += 1;
            }
        }
        Ok(rank == strings.len())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.sign == Sign::Plus { '+' } else { '-' })?;
        for j in 0..self.n {
            let ch = match (self.x_bits[j], self.z_bits[j]) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn single_x_parses_to_pauli_x() {
        let p = PauliString::parse("X").unwrap();
        let m = p.to_matrix::<f64>();
        assert_eq!(m.entry(0, 1), C64::new(1.0, 0.0));
        assert_eq!(m.entry(1, 0), C64::new(1.0, 0.0));
        assert_eq!(m.entry(0, 0), C64::new(0.0, 0.0));
    }

    #[test]
    fn zz_is_the_expected_diagonal() {
        let m = PauliString::parse("ZZ").unwrap().to_matrix::<f64>();
        let diag: Vec<f64> = (0..4).map(|i| m.entry(i, i).re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn xxxx_is_the_bit_complement_permutation() {
        let m = PauliString::parse("XXXX").unwrap().to_matrix::<f64>();
        assert_eq!(m.dim(), 16);
        for b in 0..16usize {
            for c in 0..16usize {
                let expected = if c == (!b & 0xF) { 1.0 } else { 0.0 };
                assert_eq!(m.entry(b, c), C64::new(expected, 0.0), "entry ({b},{c})");
            }
        }
    }

    #[test]
    fn y_realization_is_hermitian_and_unitary() {
        for s in ["Y", "XY", "YY", "-YZXI", "YXZY"] {
            let m = PauliString::parse(s).unwrap().to_matrix::<f64>();
            assert!(m.is_hermitian(1e-14), "{s} not hermitian");
            assert!(m.is_unitary(1e-14), "{s} not unitary");
        }
    }

    #[test]
    fn sign_prefix_is_honored() {
        let plus = PauliString::parse("+Z").unwrap().to_matrix::<f64>();
        let minus = PauliString::parse("-Z").unwrap().to_matrix::<f64>();
        assert!(minus.approx_eq(&plus.scale(C64::new(-1.0, 0.0)), 0.0));
    }

    #[test]
    fn commutation_follows_the_symplectic_product() {
        let x = PauliString::parse("X").unwrap();
        let z = PauliString::parse("Z").unwrap();
        assert!(!x.commutes_with(&z));

        let xx = PauliString::parse("XX").unwrap();
        let zz = PauliString::parse("ZZ").unwrap();
        assert!(xx.commutes_with(&zz));
    }

    #[test]
    fn independence_detects_products() {
        let gens = vec![
            PauliString::parse("ZZI").unwrap(),
            PauliString::parse("IZZ").unwrap(),
            PauliString::parse("ZIZ").unwrap(), // product of the first two
        ];
        assert!(!PauliString::independent(&gens).unwrap());
        assert!(PauliString::independent(&gens[..2]).unwrap());
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(PauliString::parse("XQ").is_err());
        assert!(PauliString::parse("").is_err());
        assert!(PauliString::parse("+").is_err());
    }
}
