//! Text encodings: ring rows in table notation and the JSON Lines record
//! format.
//!
//! Row notation per alphabet:
//! - F2: `0`/`1`
//! - R1: `0`, `1`, `u`, `3` (= 1 + u)
//! - R2: one hex digit per element, bits `b3 b2 b1 b0` over the ordered basis
//!   `{uv, v, u, 1}`
//!
//! Commas, whitespace and surrounding parentheses are accepted as separators
//! for every alphabet; output is unseparated, hex in uppercase.

use serde::{Deserialize, Serialize};

use crate::constructions::{Analysis, CodeRecord, Construction, Provenance};
use crate::error::{Error, Result};
use crate::f2::BitVector;
use crate::rings::{Alphabet, PhiUVariant, RingElement, RingVector};
use crate::weightdist::{EnumeratorClass, Family};

fn parse_char(alphabet: Alphabet, ch: char, pos: usize) -> Result<RingElement> {
    let bits = match (alphabet, ch) {
        (_, '0') => Some(0),
        (_, '1') => Some(1),
        (Alphabet::R1, 'u' | 'U') => Some(2),
        (Alphabet::R1, '3') => Some(3),
        (Alphabet::R2, c) => c.to_digit(16).map(|d| d as u8),
        _ => None,
    };
    bits.map(|b| RingElement::new(alphabet, b))
        .ok_or(Error::BadCharacter { ch, pos, alphabet })
}

pub fn parse_row(alphabet: Alphabet, text: &str) -> Result<RingVector> {
    let mut entries = Vec::new();
    for (pos, ch) in text.chars().enumerate() {
        if ch.is_whitespace() || matches!(ch, ',' | '(' | ')') {
            continue;
        }
        entries.push(parse_char(alphabet, ch, pos)?);
    }
    if entries.is_empty() {
        return Err(Error::EmptyRow);
    }
    RingVector::new(alphabet, entries)
}

pub fn parse_element(alphabet: Alphabet, text: &str) -> Result<RingElement> {
    let row = parse_row(alphabet, text)?;
    if row.len() != 1 {
        return Err(Error::LengthMismatch {
            expected: 1,
            found: row.len(),
        });
    }
    Ok(row.get(0))
}

pub fn format_row(v: &RingVector) -> String {
    v.iter().map(|e| e.to_string()).collect()
}

/// Hex text of a binary row: coordinates read left to right as bits, most
/// significant bit first within each digit, zero-padded to a whole digit.
pub fn bits_to_hex(v: &BitVector) -> String {
    let digits = v.len().div_ceil(4);
    (0..digits)
        .map(|d| {
            let nib = (0..4).fold(0u32, |acc, j| {
                let i = 4 * d + j;
                acc << 1 | u32::from(i < v.len() && v.get(i))
            });
            char::from_digit(nib, 16).unwrap().to_ascii_uppercase()
        })
        .collect()
}

pub fn hex_to_bits(text: &str, len: usize) -> Result<BitVector> {
    let mut v = BitVector::zeros(len);
    for (d, ch) in text.chars().enumerate() {
        let nib = ch.to_digit(16).ok_or(Error::BadCharacter {
            ch,
            pos: d,
            alphabet: Alphabet::F2,
        })?;
        for j in 0..4 {
            let i = 4 * d + j;
            if nib >> (3 - j) & 1 == 1 {
                if i >= len {
                    return Err(Error::BadRecord(format!(
                        "hex row {text} longer than {len}"
                    )));
                }
                v.set(i, true);
            }
        }
    }
    if text.len() != len.div_ceil(4) {
        return Err(Error::BadRecord(format!(
            "hex row {text} does not match length {len}"
        )));
    }
    Ok(v)
}

/// Provenance of a parent record, nested inside a record line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceLine {
    pub construction: String,
    pub alphabet: Alphabet,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    #[serde(rename = "rA", skip_serializing_if = "Option::is_none", default)]
    pub r_a: Option<String>,
    #[serde(rename = "rB", skip_serializing_if = "Option::is_none", default)]
    pub r_b: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub y: Option<String>,
    #[serde(rename = "X", skip_serializing_if = "Option::is_none", default)]
    pub ext_x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub phi_u: Option<PhiUVariant>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parent_id: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parent: Option<Box<ProvenanceLine>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trial: Option<u64>,
}

/// One line of the record store. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordLine {
    #[serde(flatten)]
    pub provenance: ProvenanceLine,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<i64>,
    #[serde(skip_serializing_if = "std::ops::Not::not", default)]
    pub ambiguous: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub histogram: Option<Vec<u64>>,
    pub binary_generator_hex_rows: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
}

fn element_text(e: Option<RingElement>) -> Option<String> {
    e.map(|e| e.to_string())
}

fn row_text(v: &Option<RingVector>) -> Option<String> {
    v.as_ref().map(format_row)
}

pub fn provenance_to_line(p: &Provenance) -> ProvenanceLine {
    ProvenanceLine {
        construction: p.construction.name().to_string(),
        alphabet: p.alphabet,
        lambda: element_text(p.lambda),
        r_a: row_text(&p.r_a),
        r_b: row_text(&p.r_b),
        x: element_text(p.x),
        y: element_text(p.y),
        ext_x: row_text(&p.ext_x),
        c: element_text(p.c),
        phi_u: p.phi_u,
        parent_id: p.parent.as_ref().map(|q| q.id()),
        parent: p.parent.as_ref().map(|q| Box::new(provenance_to_line(q))),
        seed: p.seed,
        trial: p.trial,
    }
}

pub fn line_to_provenance(line: &ProvenanceLine) -> Result<Provenance> {
    let a = line.alphabet;
    let elt = |s: &Option<String>| s.as_deref().map(|s| parse_element(a, s)).transpose();
    let row = |s: &Option<String>| s.as_deref().map(|s| parse_row(a, s)).transpose();
    let parent = match &line.parent {
        Some(p) => {
            let parent = line_to_provenance(p)?;
            if let Some(id) = &line.parent_id {
                if *id != parent.id() {
                    return Err(Error::BadRecord(format!(
                        "parent_id {id} does not match parent provenance {}",
                        parent.id()
                    )));
                }
            }
            Some(Box::new(parent))
        }
        None => None,
    };
    Ok(Provenance {
        construction: line.construction.parse::<Construction>()?,
        alphabet: a,
        lambda: elt(&line.lambda)?,
        r_a: row(&line.r_a)?,
        r_b: row(&line.r_b)?,
        x: elt(&line.x)?,
        y: elt(&line.y)?,
        ext_x: row(&line.ext_x)?,
        c: elt(&line.c)?,
        phi_u: line.phi_u,
        seed: line.seed,
        trial: line.trial,
        parent,
    })
}

pub fn record_to_line(r: &CodeRecord, timestamp: Option<u64>) -> RecordLine {
    let bin = r.binary_generator();
    let analysis = r.analysis.as_ref();
    let class = analysis.and_then(|a| a.class);
    RecordLine {
        provenance: provenance_to_line(&r.provenance),
        n: bin.cols(),
        k: bin.rows(),
        d: analysis.and_then(|a| a.d),
        family: class.map(|c| c.family),
        beta: class.and_then(|c| c.beta),
        gamma: class.and_then(|c| c.gamma),
        ambiguous: class.is_some_and(|c| c.ambiguous),
        histogram: analysis
            .and_then(|a| a.profile.as_ref())
            .filter(|p| p.complete)
            .map(|p| p.histogram.clone()),
        binary_generator_hex_rows: bin.row_vectors().iter().map(bits_to_hex).collect(),
        timestamp,
    }
}

/// One JSON object, no trailing newline.
pub fn serialize_record(r: &CodeRecord, timestamp: Option<u64>) -> String {
    serde_json::to_string(&record_to_line(r, timestamp)).expect("record serializes")
}

/// Parses a record line and rebuilds the code from its provenance. The stored
/// binary generator must match the rebuilt one.
pub fn parse_record(text: &str) -> Result<CodeRecord> {
    let line: RecordLine =
        serde_json::from_str(text).map_err(|e| Error::BadRecord(e.to_string()))?;
    let provenance = line_to_provenance(&line.provenance)?;
    let mut record = provenance.replay()?;
    let bin = record.binary_generator();
    let stored: Vec<String> = bin.row_vectors().iter().map(bits_to_hex).collect();
    if stored != line.binary_generator_hex_rows || bin.cols() != line.n || bin.rows() != line.k {
        return Err(Error::BadRecord(
            "binary generator does not match the rebuilt code".into(),
        ));
    }
    for row in &line.binary_generator_hex_rows {
        hex_to_bits(row, line.n)?;
    }
    if line.d.is_some() || line.family.is_some() {
        let class = line.family.map(|family| EnumeratorClass {
            family,
            beta: line.beta,
            gamma: line.gamma,
            ambiguous: line.ambiguous,
        });
        record.analysis = Some(Analysis {
            n: line.n,
            k: line.k,
            d: line.d,
            class,
            profile: line.histogram.map(|h| crate::weightdist::WeightProfile {
                n: line.n,
                histogram: h,
                complete: true,
            }),
        });
    }
    Ok(record)
}

/// Reads every record from a JSON Lines store, skipping blank lines.
pub fn read_records(text: &str) -> Result<Vec<CodeRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_record)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bordered_four_circulant, extend, modified_four_circulant};
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_row(Alphabet::R2, "5").unwrap(),
            RingVector::from_nibbles(Alphabet::R2, &[5])
        );
        // 5 = 0101 over {uv, v, u, 1} is 1 + v
        assert_eq!(
            parse_element(Alphabet::R2, "5").unwrap().coeffs(),
            [true, false, true, false]
        );
        assert_eq!(
            parse_row(Alphabet::R1, "3u01").unwrap(),
            RingVector::from_nibbles(Alphabet::R1, &[3, 2, 0, 1])
        );
        let v = parse_row(Alphabet::F2, "0101110001100111").unwrap();
        assert_eq!(v.len(), 16);
        assert_eq!(format_row(&v), "0101110001100111");
        assert_eq!(
            parse_row(Alphabet::R2, "(6,5,A,e)").unwrap(),
            RingVector::from_nibbles(Alphabet::R2, &[6, 5, 10, 14])
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_row(Alphabet::F2, ""), Err(Error::EmptyRow)));
        assert!(matches!(
            parse_row(Alphabet::F2, " , "),
            Err(Error::EmptyRow)
        ));
        assert!(matches!(
            parse_row(Alphabet::F2, "012"),
            Err(Error::BadCharacter {
                ch: '2',
                pos: 2,
                ..
            })
        ));
        assert!(matches!(
            parse_row(Alphabet::R1, "u2"),
            Err(Error::BadCharacter { .. })
        ));
        assert!(matches!(
            parse_row(Alphabet::R2, "G"),
            Err(Error::BadCharacter { .. })
        ));
    }

    #[test]
    fn format_examples() {
        assert_eq!(
            format_row(&RingVector::from_nibbles(Alphabet::R2, &[5])),
            "5"
        );
        assert_eq!(format_row(&RingVector::zeros(Alphabet::F2, 2)), "00");
    }

    #[test]
    fn hex_digits_match_binary_four_tuples() {
        let table = [
            "0000", "0001", "0010", "0011", "0100", "0101", "0110", "0111", "1000", "1001", "1010",
            "1011", "1100", "1101", "1110", "1111",
        ];
        for (d, bits) in table.iter().enumerate() {
            let hex = format!("{d:X}");
            let e = parse_element(Alphabet::R2, &hex).unwrap();
            let [one, u, v, uv] = e.coeffs();
            let got: String = [uv, v, u, one]
                .iter()
                .map(|&b| if b { '1' } else { '0' })
                .collect();
            assert_eq!(&got, bits);
            assert_eq!(format_row(&RingVector::filled(e, 1)), hex);
            assert_eq!(bits_to_hex(&BitVector::from_str_bits(bits)), hex);
        }
    }

    #[test]
    fn hex_rows_pad_to_length() {
        let v = BitVector::from_str_bits("101");
        assert_eq!(bits_to_hex(&v), "A");
        assert_eq!(hex_to_bits("A", 3).unwrap(), v);
        assert!(hex_to_bits("F", 3).is_err());
    }

    #[test]
    fn minimal_record_round_trips() {
        let one = Alphabet::F2.one();
        let rec = modified_four_circulant(
            &parse_row(Alphabet::F2, "1").unwrap(),
            &parse_row(Alphabet::F2, "0").unwrap(),
            one,
        )
        .unwrap();
        let line = serialize_record(&rec, None);
        assert!(!line.contains("\"X\""));
        assert!(!line.contains("\"c\""));
        let back = parse_record(&line).unwrap();
        assert_eq!(back, rec);
        assert_eq!(serialize_record(&back, None), line);
    }

    #[test]
    fn field_order_is_fixed() {
        let u = RingElement::new(Alphabet::R1, 2);
        let rec = bordered_four_circulant(
            &parse_row(Alphabet::R1, "u011u1u").unwrap(),
            &parse_row(Alphabet::R1, "0001uuu").unwrap(),
            Alphabet::R1.one(),
            u,
        )
        .unwrap();
        let mut x = RingVector::zeros(Alphabet::R1, 32);
        x.set(3, Alphabet::R1.one());
        let ext = extend(&rec, &x, RingElement::new(Alphabet::R1, 3)).unwrap();
        let line = serialize_record(&ext.clone().with_seed(7, 3), Some(1_700_000_000));
        let keys = [
            "\"construction\"",
            "\"alphabet\"",
            "\"X\"",
            "\"c\"",
            "\"parent_id\"",
            "\"parent\"",
            "\"seed\"",
            "\"trial\"",
            "\"n\"",
            "\"k\"",
            "\"binary_generator_hex_rows\"",
            "\"timestamp\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| line.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{line}");
        let back = parse_record(&line).unwrap();
        assert_eq!(back.generator, ext.generator);
        assert_eq!(back.provenance.seed, Some(7));
    }

    #[test]
    fn tampered_record_rejected() {
        let rec = modified_four_circulant(
            &parse_row(Alphabet::F2, "1").unwrap(),
            &parse_row(Alphabet::F2, "0").unwrap(),
            Alphabet::F2.one(),
        )
        .unwrap();
        let line = serialize_record(&rec, None).replace("\"A\"", "\"B\"");
        assert!(parse_record(&line).is_err());
    }

    fn arb_row() -> impl Strategy<Value = RingVector> {
        (0usize..3, proptest::collection::vec(0u8..16, 1..40))
            .prop_map(|(a, nib)| RingVector::from_nibbles(Alphabet::ALL[a], &nib))
    }

    proptest! {
        #[test]
        fn row_round_trip(v in arb_row()) {
            let text = format_row(&v);
            prop_assert_eq!(parse_row(v.alphabet(), &text).unwrap(), v.clone());
            let lower = text.to_ascii_lowercase();
            let reparsed = parse_row(v.alphabet(), &lower).unwrap();
            prop_assert_eq!(format_row(&reparsed), text);
        }

        #[test]
        fn hex_round_trip(bits in proptest::collection::vec(any::<bool>(), 1..100)) {
            let v = BitVector::from_bits(bits);
            prop_assert_eq!(hex_to_bits(&bits_to_hex(&v), v.len()).unwrap(), v);
        }
    }
}
