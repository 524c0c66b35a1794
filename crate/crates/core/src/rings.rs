//! Arithmetic in F2, R1 = F2 + uF2 and R2 = F2 + uF2 + vF2 + uvF2, plus the
//! Gray maps onto binary vectors.
//!
//! Every element is a nibble `d c b a` meaning `a + b·u + c·v + d·uv`, which
//! is also its hexadecimal digit under the ordered basis `{uv, v, u, 1}`.
//! Coefficients outside the alphabet are always zero.

use std::fmt;
use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::BitVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    #[serde(rename = "f2")]
    F2,
    #[serde(rename = "r1")]
    R1,
    #[serde(rename = "r2")]
    R2,
}

impl Alphabet {
    pub const ALL: [Alphabet; 3] = [Alphabet::F2, Alphabet::R1, Alphabet::R2];

    /// Bits per element.
    pub fn width(self) -> usize {
        match self {
            Alphabet::F2 => 1,
            Alphabet::R1 => 2,
            Alphabet::R2 => 4,
        }
    }

    pub fn size(self) -> u8 {
        1 << self.width()
    }

    fn mask(self) -> u8 {
        self.size() - 1
    }

    pub fn elements(self) -> impl Iterator<Item = RingElement> {
        (0..self.size()).map(move |bits| RingElement {
            alphabet: self,
            bits,
        })
    }

    pub fn units(self) -> impl Iterator<Item = RingElement> {
        self.elements().filter(|e| e.is_unit())
    }

    pub fn zero(self) -> RingElement {
        RingElement {
            alphabet: self,
            bits: 0,
        }
    }

    pub fn one(self) -> RingElement {
        RingElement {
            alphabet: self,
            bits: 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Alphabet::F2 => "f2",
            Alphabet::R1 => "r1",
            Alphabet::R2 => "r2",
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "f2" => Ok(Alphabet::F2),
            "r1" => Ok(Alphabet::R1),
            "r2" => Ok(Alphabet::R2),
            other => Err(Error::ConfigInvalid(format!("unknown alphabet {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct RingElement {
    alphabet: Alphabet,
    bits: u8,
}

impl RingElement {
    /// Builds an element from its nibble; coefficients outside the alphabet
    /// are dropped.
    pub fn new(alphabet: Alphabet, bits: u8) -> Self {
        Self {
            alphabet,
            bits: bits & alphabet.mask(),
        }
    }

    /// Like [`RingElement::new`] but rejects nibbles that do not belong to the
    /// alphabet.
    pub fn checked(alphabet: Alphabet, bits: u8) -> Option<Self> {
        (bits <= alphabet.mask()).then_some(Self { alphabet, bits })
    }

    pub fn alphabet(self) -> Alphabet {
        self.alphabet
    }

    pub fn bits(self) -> u8 {
        self.bits
    }

    /// Coefficients `(a, b, c, d)` of `a + b·u + c·v + d·uv`.
    pub fn coeffs(self) -> [bool; 4] {
        [0, 1, 2, 3].map(|i| self.bits >> i & 1 == 1)
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_unit(self) -> bool {
        self.bits & 1 == 1
    }

    fn same_alphabet(self, other: RingElement) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            })
        }
    }

    pub fn try_add(self, other: RingElement) -> Result<RingElement> {
        self.same_alphabet(other)?;
        Ok(RingElement::new(self.alphabet, self.bits ^ other.bits))
    }

    pub fn try_mul(self, other: RingElement) -> Result<RingElement> {
        self.same_alphabet(other)?;
        Ok(RingElement::new(
            self.alphabet,
            nibble_mul(self.bits, other.bits),
        ))
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(self) -> Option<RingElement> {
        self.alphabet
            .elements()
            .find(|&e| nibble_mul(self.bits, e.bits) == 1)
    }

    pub fn square(self) -> RingElement {
        self * self
    }

    /// Lifts the element into a larger alphabet (F2 ⊂ R1 ⊂ R2).
    pub fn lift(self, to: Alphabet) -> RingElement {
        RingElement::new(to, self.bits)
    }
}

/// Product in F2[u, v]/(u², v²) on nibbles.
#[inline]
fn nibble_mul(x: u8, y: u8) -> u8 {
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| x >> i & 1);
    let [e, f, g, h] = [0, 1, 2, 3].map(|i| y >> i & 1);
    let one = a & e;
    let u = (a & f) ^ (b & e);
    let v = (a & g) ^ (c & e);
    let uv = (a & h) ^ (d & e) ^ (b & g) ^ (c & f);
    one | u << 1 | v << 2 | uv << 3
}

impl Add for RingElement {
    type Output = RingElement;

    fn add(self, rhs: RingElement) -> RingElement {
        self.try_add(rhs)
            .expect("alphabet mismatch in ring addition")
    }
}

impl Mul for RingElement {
    type Output = RingElement;

    fn mul(self, rhs: RingElement) -> RingElement {
        self.try_mul(rhs)
            .expect("alphabet mismatch in ring multiplication")
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.alphabet, self)
    }
}

/// Uses the row notation: binary digits for F2, `0 1 u 3` for R1, hex for R2.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.alphabet {
            Alphabet::F2 => write!(f, "{}", self.bits),
            Alphabet::R1 => f.write_str(["0", "1", "u", "3"][self.bits as usize]),
            Alphabet::R2 => write!(f, "{:X}", self.bits),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingVector {
    alphabet: Alphabet,
    entries: Vec<RingElement>,
}

impl RingVector {
    pub fn new(alphabet: Alphabet, entries: Vec<RingElement>) -> Result<Self> {
        if let Some(e) = entries.iter().find(|e| e.alphabet != alphabet) {
            return Err(Error::AlphabetMismatch {
                left: alphabet,
                right: e.alphabet,
            });
        }
        Ok(Self { alphabet, entries })
    }

    pub fn zeros(alphabet: Alphabet, len: usize) -> Self {
        Self {
            alphabet,
            entries: vec![alphabet.zero(); len],
        }
    }

    pub fn filled(value: RingElement, len: usize) -> Self {
        Self {
            alphabet: value.alphabet,
            entries: vec![value; len],
        }
    }

    pub fn from_nibbles(alphabet: Alphabet, nibbles: &[u8]) -> Self {
        Self {
            alphabet,
            entries: nibbles
                .iter()
                .map(|&b| RingElement::new(alphabet, b))
                .collect(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> RingElement {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: RingElement) {
        assert_eq!(value.alphabet, self.alphabet);
        self.entries[i] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = RingElement> + '_ {
        self.entries.iter().copied()
    }

    pub fn sum(&self) -> RingElement {
        self.iter().fold(self.alphabet.zero(), |acc, e| acc + e)
    }

    pub fn scale(&self, s: RingElement) -> RingVector {
        RingVector {
            alphabet: self.alphabet,
            entries: self.iter().map(|e| s * e).collect(),
        }
    }

    pub fn try_add(&self, other: &RingVector) -> Result<RingVector> {
        self.check_compatible(other)?;
        Ok(RingVector {
            alphabet: self.alphabet,
            entries: self.iter().zip(other.iter()).map(|(a, b)| a + b).collect(),
        })
    }

    /// Entries in reverse order.
    pub fn reversed(&self) -> RingVector {
        let mut entries = self.entries.clone();
        entries.reverse();
        RingVector {
            alphabet: self.alphabet,
            entries,
        }
    }

    pub fn concat(&self, other: &RingVector) -> Result<RingVector> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(RingVector {
            alphabet: self.alphabet,
            entries,
        })
    }

    fn check_compatible(&self, other: &RingVector) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: other.alphabet,
            });
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    /// Euclidean inner product `Σ aᵢ bᵢ`.
    pub fn inner_product(&self, other: &RingVector) -> Result<RingElement> {
        self.check_compatible(other)?;
        Ok(self
            .iter()
            .zip(other.iter())
            .fold(self.alphabet.zero(), |acc, (a, b)| acc + a * b))
    }

    /// Coefficient vector of `1`, `u`, `v` or `uv` (index 0..4).
    fn component(&self, idx: usize) -> impl Iterator<Item = bool> + '_ {
        self.iter().map(move |e| e.bits >> idx & 1 == 1)
    }
}

/// Gray map for R1: `a + u·b ↦ (b, a + b)`, blockwise over the vector.
pub fn gray_phi1(v: &RingVector) -> Result<BitVector> {
    if v.alphabet != Alphabet::R1 {
        return Err(Error::AlphabetMismatch {
            left: Alphabet::R1,
            right: v.alphabet,
        });
    }
    let a: Vec<bool> = v.component(0).collect();
    let b: Vec<bool> = v.component(1).collect();
    let bits = b
        .iter()
        .copied()
        .chain(a.iter().zip(&b).map(|(x, y)| x ^ y));
    Ok(BitVector::from_bits(bits))
}

/// Gray map for R2: `a + u·b + v·c + uv·d ↦ (d, c + d, b + d, a + b + c + d)`.
pub fn gray_phi2(v: &RingVector) -> Result<BitVector> {
    if v.alphabet != Alphabet::R2 {
        return Err(Error::AlphabetMismatch {
            left: Alphabet::R2,
            right: v.alphabet,
        });
    }
    let n = v.len();
    let mut out = BitVector::zeros(4 * n);
    for (i, e) in v.iter().enumerate() {
        let [a, b, c, d] = e.coeffs();
        out.set(i, d);
        out.set(n + i, c ^ d);
        out.set(2 * n + i, b ^ d);
        out.set(3 * n + i, a ^ b ^ c ^ d);
    }
    Ok(out)
}

/// Gray image of a vector over any supported alphabet (identity for F2).
pub fn gray_image(v: &RingVector) -> BitVector {
    match v.alphabet {
        Alphabet::F2 => BitVector::from_bits(v.component(0)),
        Alphabet::R1 => gray_phi1(v).expect("alphabet checked"),
        Alphabet::R2 => gray_phi2(v).expect("alphabet checked"),
    }
}

/// How an R2 element is split into two R1 elements by [`phi_u`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PhiUVariant {
    /// `x + v·y` with `x, y ∈ F2 + uF2`.
    #[default]
    #[serde(rename = "along-v")]
    AlongV,
    /// `x + u·y` with `x, y ∈ F2 + vF2`, then `v` renamed to `u`.
    #[serde(rename = "along-u")]
    AlongU,
}

/// R1-linear map from R2ⁿ to R1²ⁿ: writing each entry as `x + w·y` (with
/// `w` the variable selected by `variant`), the image is `(y, x + y)` laid
/// out blockwise like the binary Gray maps.
pub fn phi_u(v: &RingVector, variant: PhiUVariant) -> Result<RingVector> {
    if v.alphabet != Alphabet::R2 {
        return Err(Error::AlphabetMismatch {
            left: Alphabet::R2,
            right: v.alphabet,
        });
    }
    let split = |e: RingElement| -> (u8, u8) {
        let [a, b, c, d] = e.coeffs().map(u8::from);
        match variant {
            PhiUVariant::AlongV => (a | b << 1, c | d << 1),
            PhiUVariant::AlongU => (a | c << 1, b | d << 1),
        }
    };
    let (xs, ys): (Vec<u8>, Vec<u8>) = v.iter().map(split).unzip();
    let entries = ys
        .iter()
        .copied()
        .chain(xs.iter().zip(&ys).map(|(x, y)| x ^ y))
        .map(|bits| RingElement::new(Alphabet::R1, bits))
        .collect();
    Ok(RingVector {
        alphabet: Alphabet::R1,
        entries,
    })
}
