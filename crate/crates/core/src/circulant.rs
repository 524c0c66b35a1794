//! λ-circulant and λ-reverse-circulant matrices over the supported rings.
//!
//! A λ-circulant matrix has rows `r, σ_λ(r), σ_λ²(r), …` where
//! `σ_λ(a₁, …, aₙ) = (λaₙ, a₁, …, aₙ₋₁)`; a λ-reverse-circulant one uses the
//! left shift `ρ_λ(a₁, …, aₙ) = (a₂, …, aₙ, λa₁)` instead.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{BitMatrix, BitVector};
use crate::rings::{gray_image, Alphabet, RingElement, RingVector};

/// Dense row-major matrix over one alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    alphabet: Alphabet,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl RingMatrix {
    pub fn zeros(alphabet: Alphabet, rows: usize, cols: usize) -> Self {
        Self {
            alphabet,
            rows,
            cols,
            entries: vec![alphabet.zero(); rows * cols],
        }
    }

    pub fn identity(alphabet: Alphabet, n: usize) -> Self {
        let mut m = Self::zeros(alphabet, n, n);
        for i in 0..n {
            m.set(i, i, alphabet.one());
        }
        m
    }

    /// The all-ones matrix `J_n`.
    pub fn all_ones(alphabet: Alphabet, n: usize) -> Self {
        Self {
            alphabet,
            rows: n,
            cols: n,
            entries: vec![alphabet.one(); n * n],
        }
    }

    pub fn from_rows(alphabet: Alphabet, rows: &[RingVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, RingVector::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.alphabet() != alphabet {
                return Err(Error::AlphabetMismatch {
                    left: alphabet,
                    right: r.alphabet(),
                });
            }
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r.iter());
        }
        Ok(Self {
            alphabet,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> RingElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: RingElement) {
        assert_eq!(value.alphabet(), self.alphabet);
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> RingVector {
        RingVector::new(
            self.alphabet,
            self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        )
        .expect("entries share the alphabet")
    }

    pub fn row_vectors(&self) -> Vec<RingVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> RingMatrix {
        let mut t = RingMatrix::zeros(self.alphabet, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    fn check_alphabet(&self, other: &RingMatrix) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_alphabet(other)?;
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = RingMatrix::zeros(self.alphabet, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.alphabet.zero();
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &RingMatrix) -> Result<RingMatrix> {
        self.check_alphabet(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::LengthMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(RingMatrix {
            alphabet: self.alphabet,
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    /// Places `blocks` (a grid of equally tall rows of matrices) side by side.
    pub fn from_blocks(blocks: &[Vec<&RingMatrix>]) -> Result<RingMatrix> {
        let first = blocks
            .first()
            .and_then(|r| r.first())
            .ok_or(Error::EmptyMatrix)?;
        let alphabet = first.alphabet;
        let cols: usize = blocks[0].iter().map(|b| b.cols).sum();
        let mut rows = Vec::new();
        for block_row in blocks {
            let height = block_row[0].rows;
            for r in 0..height {
                let mut entries = Vec::with_capacity(cols);
                for b in block_row {
                    if b.alphabet != alphabet {
                        return Err(Error::AlphabetMismatch {
                            left: alphabet,
                            right: b.alphabet,
                        });
                    }
                    if b.rows != height {
                        return Err(Error::LengthMismatch {
                            expected: height,
                            found: b.rows,
                        });
                    }
                    entries.extend((0..b.cols).map(|c| b.get(r, c)));
                }
                rows.push(RingVector::new(alphabet, entries)?);
            }
        }
        RingMatrix::from_rows(alphabet, &rows)
    }

    /// Binary image of the code generated by the rows: for every row `g`
    /// the Gray images of `g·m` for each monomial `m` of the alphabet.
    pub fn gray_generator(&self) -> BitMatrix {
        let monomials: &[u8] = match self.alphabet {
            Alphabet::F2 => &[1],
            Alphabet::R1 => &[1, 2],
            Alphabet::R2 => &[1, 2, 4, 8],
        };
        let rows: Vec<BitVector> = self
            .row_vectors()
            .iter()
            .flat_map(|r| {
                monomials
                    .iter()
                    .map(|&m| gray_image(&r.scale(RingElement::new(self.alphabet, m))))
                    .collect::<Vec<_>>()
            })
            .collect();
        let cols = rows[0].len();
        BitMatrix::new(cols, rows).expect("nonempty generator")
    }

    /// `G·Gᵀ = 0` over the ring.
    pub fn is_self_orthogonal(&self) -> bool {
        let rows = self.row_vectors();
        rows.iter().all(|a| {
            rows.iter()
                .all(|b| a.inner_product(b).map(|e| e.is_zero()).unwrap_or(false))
        })
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "RingMatrix<{}> {}x{}",
            self.alphabet, self.rows, self.cols
        )?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CirculantKind {
    Circulant,
    ReverseCirculant,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantSpec {
    pub lambda: RingElement,
    pub first_row: RingVector,
    pub kind: CirculantKind,
}

impl CirculantSpec {
    pub fn circulant(first_row: RingVector, lambda: RingElement) -> Self {
        Self {
            lambda,
            first_row,
            kind: CirculantKind::Circulant,
        }
    }

    pub fn reverse_circulant(first_row: RingVector, lambda: RingElement) -> Self {
        Self {
            lambda,
            first_row,
            kind: CirculantKind::ReverseCirculant,
        }
    }
}

fn check_lambda(row: &RingVector, lambda: RingElement) -> Result<()> {
    if !lambda.is_unit() {
        return Err(Error::NonUnitLambda(lambda.to_string()));
    }
    if lambda.alphabet() != row.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: row.alphabet(),
            right: lambda.alphabet(),
        });
    }
    Ok(())
}

/// Right λ-shift: `(a₁, …, aₙ) ↦ (λaₙ, a₁, …, aₙ₋₁)`.
pub fn sigma_lambda(row: &RingVector, lambda: RingElement) -> Result<RingVector> {
    check_lambda(row, lambda)?;
    let n = row.len();
    if n == 0 {
        return Ok(row.clone());
    }
    let mut entries = Vec::with_capacity(n);
    entries.push(lambda * row.get(n - 1));
    entries.extend(row.entries()[..n - 1].iter().copied());
    RingVector::new(row.alphabet(), entries)
}

/// Left λ-shift: `(a₁, …, aₙ) ↦ (a₂, …, aₙ, λa₁)`.
pub fn rho_lambda(row: &RingVector, lambda: RingElement) -> Result<RingVector> {
    check_lambda(row, lambda)?;
    let n = row.len();
    if n == 0 {
        return Ok(row.clone());
    }
    let mut entries: Vec<RingElement> = row.entries()[1..].to_vec();
    entries.push(lambda * row.get(0));
    RingVector::new(row.alphabet(), entries)
}

pub fn build(spec: &CirculantSpec) -> Result<RingMatrix> {
    check_lambda(&spec.first_row, spec.lambda)?;
    let n = spec.first_row.len();
    if n == 0 {
        return Err(Error::EmptyMatrix);
    }
    let shift = match spec.kind {
        CirculantKind::Circulant => sigma_lambda,
        CirculantKind::ReverseCirculant => rho_lambda,
    };
    let mut rows = Vec::with_capacity(n);
    let mut cur = spec.first_row.clone();
    for _ in 0..n {
        let next = shift(&cur, spec.lambda)?;
        rows.push(cur);
        cur = next;
    }
    RingMatrix::from_rows(spec.first_row.alphabet(), &rows)
}

/// The backdiagonal matrix `D`, `D(i, n-1-i) = 1`.
pub fn backdiagonal(n: usize, alphabet: Alphabet) -> RingMatrix {
    let mut d = RingMatrix::zeros(alphabet, n, n);
    for i in 0..n {
        d.set(i, n - 1 - i, alphabet.one());
    }
    d
}

fn follows_shift(
    m: &RingMatrix,
    lambda: RingElement,
    shift: fn(&RingVector, RingElement) -> Result<RingVector>,
) -> bool {
    if !m.is_square() || !lambda.is_unit() || lambda.alphabet() != m.alphabet() {
        return false;
    }
    (0..m.rows().saturating_sub(1)).all(|i| {
        shift(&m.row(i), lambda)
            .map(|s| s == m.row(i + 1))
            .unwrap_or(false)
    })
}

/// Row `i + 1` equals `σ_λ(row i)` for every `i`.
pub fn is_lambda_circulant(m: &RingMatrix, lambda: RingElement) -> bool {
    follows_shift(m, lambda, sigma_lambda)
}

/// Row `i + 1` equals `ρ_λ(row i)` for every `i`.
pub fn is_lambda_reverse_circulant(m: &RingMatrix, lambda: RingElement) -> bool {
    follows_shift(m, lambda, rho_lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2(bits: &[u8]) -> RingVector {
        RingVector::from_nibbles(Alphabet::F2, bits)
    }

    #[test]
    fn sigma_examples() {
        let one = Alphabet::F2.one();
        assert_eq!(sigma_lambda(&f2(&[1, 0, 1]), one).unwrap(), f2(&[1, 1, 0]));
        assert_eq!(sigma_lambda(&f2(&[1]), one).unwrap(), f2(&[1]));

        let r = RingVector::from_nibbles(Alphabet::R2, &[1, 2, 4]);
        let lambda = RingElement::new(Alphabet::R2, 5);
        // (1 + v)·v = v since v² = 0
        let expected = RingVector::from_nibbles(Alphabet::R2, &[4, 1, 2]);
        assert_eq!(sigma_lambda(&r, lambda).unwrap(), expected);

        let bad = RingElement::new(Alphabet::R2, 2);
        assert!(matches!(
            sigma_lambda(&r, bad),
            Err(Error::NonUnitLambda(_))
        ));
    }

    #[test]
    fn rho_examples() {
        let one = Alphabet::F2.one();
        assert_eq!(rho_lambda(&f2(&[1, 0, 1]), one).unwrap(), f2(&[0, 1, 1]));
        let r = RingVector::from_nibbles(Alphabet::R1, &[2, 1]);
        let lambda = RingElement::new(Alphabet::R1, 3);
        assert_eq!(
            rho_lambda(&r, lambda).unwrap(),
            RingVector::from_nibbles(Alphabet::R1, &[1, 2])
        );
    }

    #[test]
    fn sigma_inverse_undoes_rho() {
        for alphabet in Alphabet::ALL {
            for lambda in alphabet.units() {
                let inv = lambda.inverse().unwrap();
                let r = RingVector::from_nibbles(alphabet, &[1, 3, 0, 2, 5, 7]);
                let rho = rho_lambda(&r, lambda).unwrap();
                assert_eq!(sigma_lambda(&rho, inv).unwrap(), r);
                let sig = sigma_lambda(&r, inv).unwrap();
                assert_eq!(rho_lambda(&sig, lambda).unwrap(), r);
            }
        }
    }

    #[test]
    fn build_examples() {
        let one = Alphabet::F2.one();
        let m = build(&CirculantSpec::circulant(f2(&[1, 0, 0]), one)).unwrap();
        assert_eq!(m, RingMatrix::identity(Alphabet::F2, 3));

        let r = RingVector::from_nibbles(Alphabet::R2, &[3, 7, 9]);
        let m = build(&CirculantSpec::reverse_circulant(r, Alphabet::R2.one())).unwrap();
        let expect = [[3, 7, 9], [7, 9, 3], [9, 3, 7]];
        for (i, row) in expect.iter().enumerate() {
            assert_eq!(m.row(i), RingVector::from_nibbles(Alphabet::R2, row));
        }

        let t = build(&CirculantSpec::circulant(f2(&[0, 1, 0]), one)).unwrap();
        let expect = [[0, 1, 0], [0, 0, 1], [1, 0, 0]];
        for (i, row) in expect.iter().enumerate() {
            assert_eq!(t.row(i), f2(row));
        }
    }

    #[test]
    fn backdiagonal_examples() {
        assert_eq!(
            backdiagonal(1, Alphabet::F2),
            RingMatrix::identity(Alphabet::F2, 1)
        );
        let d = backdiagonal(2, Alphabet::F2);
        assert_eq!(d.row(0), f2(&[0, 1]));
        assert_eq!(d.row(1), f2(&[1, 0]));
        let d = backdiagonal(3, Alphabet::R1);
        assert_eq!(
            d.try_mul(&d).unwrap(),
            RingMatrix::identity(Alphabet::R1, 3)
        );
    }

    #[test]
    fn one_by_one_is_both_kinds() {
        let m = RingMatrix::from_rows(
            Alphabet::R2,
            &[RingVector::from_nibbles(Alphabet::R2, &[6])],
        )
        .unwrap();
        for lambda in Alphabet::R2.units() {
            assert!(is_lambda_circulant(&m, lambda));
            assert!(is_lambda_reverse_circulant(&m, lambda));
        }
    }

    #[test]
    fn gray_generator_shape() {
        let r = RingVector::from_nibbles(Alphabet::R2, &[1, 8]);
        let m = RingMatrix::from_rows(Alphabet::R2, &[r]).unwrap();
        let g = m.gray_generator();
        assert_eq!((g.rows(), g.cols()), (4, 8));
    }
}
