//! Generator-matrix constructions for self-dual codes.
//!
//! All constructions validate their hypotheses exactly and refuse invalid
//! input; a [`CodeRecord`] only exists for a self-dual output. In
//! characteristic 2 every `-M` block is stored as `M`.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::circulant::{build, CirculantSpec, RingMatrix};
use crate::error::{Error, Result};
use crate::f2::BitMatrix;
use crate::rings::{phi_u, Alphabet, PhiUVariant, RingElement, RingVector};
use crate::weightdist::{EnumeratorClass, WeightProfile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `[I | A B; -Bᵀ Aᵀ]`, A and B circulant.
    FourCirculant,
    /// `[I | A B; -B A]`, A λ-circulant and B λ-reverse-circulant.
    Modified,
    /// Bordered version of the modified construction (λ = 1, odd order).
    Bordered,
    /// Length `n + 2` extension of a parent code.
    Extension,
    /// Image of an R2 parent under the R2 → R1 map.
    PhiU,
    /// Binary Gray image of a ring parent.
    Gray,
}

impl Construction {
    pub fn name(self) -> &'static str {
        match self {
            Construction::FourCirculant => "four-circulant",
            Construction::Modified => "modified",
            Construction::Bordered => "bordered",
            Construction::Extension => "extension",
            Construction::PhiU => "phi-u",
            Construction::Gray => "gray",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "four-circulant" => Construction::FourCirculant,
            "modified" => Construction::Modified,
            "bordered" => Construction::Bordered,
            "extension" => Construction::Extension,
            "phi-u" => Construction::PhiU,
            "gray" => Construction::Gray,
            other => {
                return Err(Error::ConfigInvalid(format!(
                    "unknown construction {other:?}"
                )))
            }
        })
    }
}

/// Everything needed to rebuild a code from scratch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub construction: Construction,
    pub alphabet: Alphabet,
    pub lambda: Option<RingElement>,
    pub r_a: Option<RingVector>,
    pub r_b: Option<RingVector>,
    pub x: Option<RingElement>,
    pub y: Option<RingElement>,
    pub ext_x: Option<RingVector>,
    pub c: Option<RingElement>,
    pub phi_u: Option<PhiUVariant>,
    pub seed: Option<u64>,
    pub trial: Option<u64>,
    pub parent: Option<Box<Provenance>>,
}

impl Provenance {
    fn base(construction: Construction, alphabet: Alphabet) -> Self {
        Self {
            construction,
            alphabet,
            lambda: None,
            r_a: None,
            r_b: None,
            x: None,
            y: None,
            ext_x: None,
            c: None,
            phi_u: None,
            seed: None,
            trial: None,
            parent: None,
        }
    }

    fn canonical(&self) -> String {
        let e = |v: &Option<RingElement>| v.map(|e| e.to_string()).unwrap_or_default();
        let r = |v: &Option<RingVector>| {
            v.as_ref()
                .map(|v| v.iter().map(|e| e.to_string()).collect::<String>())
                .unwrap_or_default()
        };
        format!(
            "{}|{}|{}|{}|{}|{}|{}|{}|{}|{:?}|{:?}|{:?}|{}",
            self.construction,
            self.alphabet,
            e(&self.lambda),
            r(&self.r_a),
            r(&self.r_b),
            e(&self.x),
            e(&self.y),
            r(&self.ext_x),
            e(&self.c),
            self.phi_u,
            self.seed,
            self.trial,
            self.parent.as_ref().map(|p| p.id()).unwrap_or_default(),
        )
    }

    /// Short content hash identifying this provenance chain.
    pub fn id(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the code described by this provenance.
    pub fn replay(&self) -> Result<CodeRecord> {
        let need_row = |v: &Option<RingVector>, what: &str| {
            v.clone().ok_or_else(|| {
                Error::BadRecord(format!("{} record without {what}", self.construction))
            })
        };
        let need_elt = |v: Option<RingElement>, what: &str| {
            v.ok_or_else(|| {
                Error::BadRecord(format!("{} record without {what}", self.construction))
            })
        };
        let need_parent = || {
            self.parent.as_deref().ok_or_else(|| {
                Error::BadRecord(format!("{} record without parent", self.construction))
            })
        };
        let mut rec = match self.construction {
            Construction::FourCirculant => {
                four_circulant_classic(&need_row(&self.r_a, "rA")?, &need_row(&self.r_b, "rB")?)?
            }
            Construction::Modified => modified_four_circulant(
                &need_row(&self.r_a, "rA")?,
                &need_row(&self.r_b, "rB")?,
                need_elt(self.lambda, "lambda")?,
            )?,
            Construction::Bordered => bordered_four_circulant(
                &need_row(&self.r_a, "rA")?,
                &need_row(&self.r_b, "rB")?,
                need_elt(self.x, "x")?,
                need_elt(self.y, "y")?,
            )?,
            Construction::Extension => extend(
                &need_parent()?.replay()?,
                &need_row(&self.ext_x, "X")?,
                need_elt(self.c, "c")?,
            )?,
            Construction::PhiU => {
                phi_u_record(&need_parent()?.replay()?, self.phi_u.unwrap_or_default())?
            }
            Construction::Gray => gray_record(&need_parent()?.replay()?)?,
        };
        rec.provenance.seed = self.seed;
        rec.provenance.trial = self.trial;
        Ok(rec)
    }
}

/// Summary of a weight analysis attached to a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Analysis {
    pub n: usize,
    pub k: usize,
    /// `None` when the minimum distance exceeds the enumerated range.
    pub d: Option<usize>,
    pub class: Option<EnumeratorClass>,
    pub profile: Option<WeightProfile>,
}

/// A self-dual code: its generator over the alphabet and how it was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeRecord {
    pub generator: RingMatrix,
    pub provenance: Provenance,
    pub analysis: Option<Analysis>,
}

impl CodeRecord {
    fn validated(generator: RingMatrix, provenance: Provenance) -> Result<Self> {
        if generator.rows() * 2 != generator.cols() {
            return Err(Error::ConditionFailed(format!(
                "generator is {}x{}, not half-rate",
                generator.rows(),
                generator.cols()
            )));
        }
        if !generator.is_self_orthogonal() || !generator.gray_generator().is_self_dual()? {
            return Err(Error::ConditionFailed("output is not self-dual".into()));
        }
        Ok(Self {
            generator,
            provenance,
            analysis: None,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.generator.alphabet()
    }

    /// Length over the alphabet.
    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn id(&self) -> String {
        self.provenance.id()
    }

    /// Generator of the binary (Gray) image; rows are independent.
    pub fn binary_generator(&self) -> BitMatrix {
        self.generator.gray_generator()
    }

    pub fn with_seed(mut self, seed: u64, trial: u64) -> Self {
        self.provenance.seed = Some(seed);
        self.provenance.trial = Some(trial);
        self
    }
}

fn check_rows(r_a: &RingVector, r_b: &RingVector) -> Result<()> {
    if r_a.alphabet() != r_b.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: r_a.alphabet(),
            right: r_b.alphabet(),
        });
    }
    if r_a.len() != r_b.len() {
        return Err(Error::LengthMismatch {
            expected: r_a.len(),
            found: r_b.len(),
        });
    }
    if r_a.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    Ok(())
}

/// `AAᵀ + BBᵀ`.
pub fn gram_sum(a: &RingMatrix, b: &RingMatrix) -> Result<RingMatrix> {
    a.try_mul(&a.transpose())?
        .try_add(&b.try_mul(&b.transpose())?)
}

fn identity_prefixed(blocks: &RingMatrix) -> Result<RingMatrix> {
    let id = RingMatrix::identity(blocks.alphabet(), blocks.rows());
    RingMatrix::from_blocks(&[vec![&id, blocks]])
}

/// Classic four-circulant code `[I_2n | A B; -Bᵀ Aᵀ]` with `AAᵀ + BBᵀ = -I`.
pub fn four_circulant_classic(r_a: &RingVector, r_b: &RingVector) -> Result<CodeRecord> {
    check_rows(r_a, r_b)?;
    let alphabet = r_a.alphabet();
    let one = alphabet.one();
    let a = build(&CirculantSpec::circulant(r_a.clone(), one))?;
    let b = build(&CirculantSpec::circulant(r_b.clone(), one))?;
    let n = r_a.len();
    if gram_sum(&a, &b)? != RingMatrix::identity(alphabet, n) {
        return Err(Error::ConditionFailed("AA^T + BB^T != -I".into()));
    }
    let (at, bt) = (a.transpose(), b.transpose());
    let x = RingMatrix::from_blocks(&[vec![&a, &b], vec![&bt, &at]])?;
    let mut prov = Provenance::base(Construction::FourCirculant, alphabet);
    prov.r_a = Some(r_a.clone());
    prov.r_b = Some(r_b.clone());
    CodeRecord::validated(identity_prefixed(&x)?, prov)
}

/// The two blocks of the modified construction: A λ-circulant, B
/// λ-reverse-circulant.
pub fn modified_blocks(
    r_a: &RingVector,
    r_b: &RingVector,
    lambda: RingElement,
) -> Result<(RingMatrix, RingMatrix)> {
    check_rows(r_a, r_b)?;
    let a = build(&CirculantSpec::circulant(r_a.clone(), lambda))?;
    let b = build(&CirculantSpec::reverse_circulant(r_b.clone(), lambda))?;
    Ok((a, b))
}

/// Modified four-circulant code `[I_2n | A B; -B A]`.
pub fn modified_four_circulant(
    r_a: &RingVector,
    r_b: &RingVector,
    lambda: RingElement,
) -> Result<CodeRecord> {
    let (a, b) = modified_blocks(r_a, r_b, lambda)?;
    let alphabet = r_a.alphabet();
    if gram_sum(&a, &b)? != RingMatrix::identity(alphabet, r_a.len()) {
        return Err(Error::ConditionFailed("AA^T + BB^T != -I".into()));
    }
    let x = RingMatrix::from_blocks(&[vec![&a, &b], vec![&b, &a]])?;
    let mut prov = Provenance::base(Construction::Modified, alphabet);
    prov.lambda = Some(lambda);
    prov.r_a = Some(r_a.clone());
    prov.r_b = Some(r_b.clone());
    CodeRecord::validated(identity_prefixed(&x)?, prov)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowSumVerdict {
    BothUnits,
    BothNonunits,
    Mixed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RowSumClass {
    pub s_a: RingElement,
    pub s_b: RingElement,
    pub verdict: RowSumVerdict,
}

pub fn rowsum_class(r_a: &RingVector, r_b: &RingVector) -> Result<RowSumClass> {
    check_rows(r_a, r_b)?;
    let (s_a, s_b) = (r_a.sum(), r_b.sum());
    let verdict = match (s_a.is_unit(), s_b.is_unit()) {
        (true, true) => RowSumVerdict::BothUnits,
        (false, false) => RowSumVerdict::BothNonunits,
        _ => RowSumVerdict::Mixed,
    };
    Ok(RowSumClass { s_a, s_b, verdict })
}

/// Bordered construction of length `2n + 2`:
///
/// ```text
/// [ I | 1  1  x  y ]
/// [   | 1  1  y  x ]
/// [   | zᵀ tᵀ A  B ]
/// [   | tᵀ zᵀ B  A ]
/// ```
///
/// with A circulant, B reverse-circulant, `z = x·S_A`, `t = y·S_B`.
pub fn bordered_four_circulant(
    r_a: &RingVector,
    r_b: &RingVector,
    x: RingElement,
    y: RingElement,
) -> Result<CodeRecord> {
    check_rows(r_a, r_b)?;
    let alphabet = r_a.alphabet();
    let n = r_a.len();
    if n.is_multiple_of(2) {
        return Err(Error::EvenN(n));
    }
    if x.alphabet() != alphabet || y.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch {
            left: alphabet,
            right: if x.alphabet() != alphabet {
                x.alphabet()
            } else {
                y.alphabet()
            },
        });
    }
    if !x.is_unit() || y.is_unit() {
        return Err(Error::BadBorder {
            x: x.to_string(),
            y: y.to_string(),
        });
    }
    let sums = rowsum_class(r_a, r_b)?;
    if sums.s_a != sums.s_b || !sums.s_a.is_unit() {
        return Err(Error::RowSumMismatch {
            s_a: sums.s_a.to_string(),
            s_b: sums.s_b.to_string(),
        });
    }
    let one = alphabet.one();
    let a = build(&CirculantSpec::circulant(r_a.clone(), one))?;
    let b = build(&CirculantSpec::reverse_circulant(r_b.clone(), one))?;
    let target = RingMatrix::identity(alphabet, n).try_add(&RingMatrix::all_ones(alphabet, n))?;
    if gram_sum(&a, &b)? != target {
        return Err(Error::ConditionFailed("AA^T + BB^T != I + J".into()));
    }
    let z = x * sums.s_a;
    let t = y * sums.s_b;

    let m = 2 * n + 2;
    let mut border = RingMatrix::zeros(alphabet, m, m);
    for c in 0..2 {
        border.set(0, c, one);
        border.set(1, c, one);
    }
    for j in 0..n {
        border.set(0, 2 + j, x);
        border.set(0, 2 + n + j, y);
        border.set(1, 2 + j, y);
        border.set(1, 2 + n + j, x);
    }
    for i in 0..n {
        let (top, bottom) = (2 + i, 2 + n + i);
        border.set(top, 0, z);
        border.set(top, 1, t);
        border.set(bottom, 0, t);
        border.set(bottom, 1, z);
        for j in 0..n {
            border.set(top, 2 + j, a.get(i, j));
            border.set(top, 2 + n + j, b.get(i, j));
            border.set(bottom, 2 + j, b.get(i, j));
            border.set(bottom, 2 + n + j, a.get(i, j));
        }
    }
    let mut prov = Provenance::base(Construction::Bordered, alphabet);
    prov.r_a = Some(r_a.clone());
    prov.r_b = Some(r_b.clone());
    prov.x = Some(x);
    prov.y = Some(y);
    CodeRecord::validated(identity_prefixed(&border)?, prov)
}

/// Length `n + 2` extension: new first row `(1, 0, X)` and each parent row
/// `rᵢ` becomes `(yᵢ, c·yᵢ, rᵢ)` with `yᵢ = ⟨rᵢ, X⟩`.
pub fn extend(parent: &CodeRecord, x: &RingVector, c: RingElement) -> Result<CodeRecord> {
    let alphabet = parent.alphabet();
    if x.alphabet() != alphabet || c.alphabet() != alphabet {
        return Err(Error::AlphabetMismatch {
            left: alphabet,
            right: if x.alphabet() != alphabet {
                x.alphabet()
            } else {
                c.alphabet()
            },
        });
    }
    let n = parent.length();
    if x.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if !c.is_unit() || c.square() != alphabet.one() {
        return Err(Error::BadC(c.to_string()));
    }
    let xx = x.inner_product(x)?;
    if xx != alphabet.one() {
        return Err(Error::BadX(xx.to_string()));
    }
    let (zero, one) = (alphabet.zero(), alphabet.one());
    let mut rows = vec![RingVector::new(alphabet, vec![one, zero])?.concat(x)?];
    for r in parent.generator.row_vectors() {
        let y = r.inner_product(x)?;
        rows.push(RingVector::new(alphabet, vec![y, c * y])?.concat(&r)?);
    }
    let generator = RingMatrix::from_rows(alphabet, &rows)?;
    let mut prov = Provenance::base(Construction::Extension, alphabet);
    prov.ext_x = Some(x.clone());
    prov.c = Some(c);
    prov.parent = Some(Box::new(parent.provenance.clone()));
    CodeRecord::validated(generator, prov)
}

/// R1 code obtained from an R2 parent through [`phi_u`]. The generator holds
/// the images of `g` and `w·g` for each parent row `g`, `w` being the
/// variable split off by the variant.
pub fn phi_u_record(parent: &CodeRecord, variant: PhiUVariant) -> Result<CodeRecord> {
    if parent.alphabet() != Alphabet::R2 {
        return Err(Error::AlphabetMismatch {
            left: Alphabet::R2,
            right: parent.alphabet(),
        });
    }
    let w = RingElement::new(
        Alphabet::R2,
        match variant {
            PhiUVariant::AlongV => 4,
            PhiUVariant::AlongU => 2,
        },
    );
    let mut rows = Vec::new();
    for g in parent.generator.row_vectors() {
        rows.push(phi_u(&g, variant)?);
        rows.push(phi_u(&g.scale(w), variant)?);
    }
    let generator = RingMatrix::from_rows(Alphabet::R1, &rows)?;
    let mut prov = Provenance::base(Construction::PhiU, Alphabet::R1);
    prov.phi_u = Some(variant);
    prov.parent = Some(Box::new(parent.provenance.clone()));
    CodeRecord::validated(generator, prov)
}

/// The binary image of a ring code as an F2 record.
pub fn gray_record(parent: &CodeRecord) -> Result<CodeRecord> {
    let bin = parent.binary_generator();
    let rows: Vec<RingVector> = bin
        .row_vectors()
        .iter()
        .map(|r| {
            RingVector::from_nibbles(Alphabet::F2, &r.iter().map(u8::from).collect::<Vec<_>>())
        })
        .collect();
    let generator = RingMatrix::from_rows(Alphabet::F2, &rows)?;
    let mut prov = Provenance::base(Construction::Gray, Alphabet::F2);
    prov.parent = Some(Box::new(parent.provenance.clone()));
    CodeRecord::validated(generator, prov)
}
