//! Seeded property checks shared by the property suite and the acceptance
//! harness. Each check returns a tally instead of panicking so that the
//! harness can report it.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selfdual::circulant::{
    backdiagonal, build, is_lambda_circulant, is_lambda_reverse_circulant, CirculantSpec,
    RingMatrix,
};
use selfdual::constructions::{
    bordered_four_circulant, extend, gram_sum, modified_blocks, modified_four_circulant, CodeRecord,
};
use selfdual::f2::{BitMatrix, BitVector};
use selfdual::rings::{gray_image, Alphabet, RingElement, RingVector};
use selfdual::weightdist::Enumerator;

#[derive(Debug, Default)]
pub struct Tally {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn ok(&self, min_cases: usize) -> bool {
        self.failures == 0 && self.cases >= min_cases
    }
}

const ALPHABETS: [Alphabet; 3] = [Alphabet::F2, Alphabet::R1, Alphabet::R2];

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.gen_range(0..items.len())]
}

pub fn random_row(rng: &mut ChaCha8Rng, a: Alphabet, n: usize) -> RingVector {
    let nib: Vec<u8> = (0..n).map(|_| rng.gen_range(0..a.size())).collect();
    RingVector::from_nibbles(a, &nib)
}

fn random_unit(rng: &mut ChaCha8Rng, a: Alphabet) -> RingElement {
    let units: Vec<RingElement> = a.units().collect();
    pick(rng, &units)
}

fn mul(a: &RingMatrix, b: &RingMatrix) -> RingMatrix {
    a.try_mul(b).unwrap()
}

fn circ(r: RingVector, l: RingElement) -> RingMatrix {
    build(&CirculantSpec::circulant(r, l)).unwrap()
}

fn rcirc(r: RingVector, l: RingElement) -> RingMatrix {
    build(&CirculantSpec::reverse_circulant(r, l)).unwrap()
}

/// The circulant-algebra identities over random alphabets, orders 1..=8 and
/// units λ.
pub fn circulant_identities(seed: u64, cases: usize) -> Vec<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut commute = Tally::new("lambda-circulants commute and multiply to lambda-circulants");
    let mut symmetric = Tally::new("lambda-reverse-circulants are symmetric");
    let mut ad = Tally::new("AD is lambda-reverse-circulant");
    let mut da = Tally::new("DA is lambda^-1-reverse-circulant");
    let mut split = Tally::new("reverse-circulant = BD = DC with unique circulant factors");
    let mut ab = Tally::new("lambda-circulant times lambda-reverse-circulant");
    let mut ba = Tally::new("lambda-reverse-circulant times lambda-circulant (lambda^2 = 1)");
    let mut rr = Tally::new("reverse-circulant times reverse-circulant is circulant");
    for _ in 0..cases {
        let a = pick(&mut rng, &ALPHABETS);
        let n = rng.gen_range(1..=8);
        let l = random_unit(&mut rng, a);
        let inv = l.inverse().unwrap();
        let d = backdiagonal(n, a);
        let (r1, r2) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
        let detail = || format!("{a} n={n} lambda={l} r1={r1:?} r2={r2:?}");

        let (c1, c2) = (circ(r1.clone(), l), circ(r2.clone(), l));
        let p = mul(&c1, &c2);
        commute.record(p == mul(&c2, &c1) && is_lambda_circulant(&p, l), detail);

        let b = rcirc(r2.clone(), l);
        symmetric.record(b == b.transpose(), detail);

        ad.record(is_lambda_reverse_circulant(&mul(&c1, &d), l), detail);
        da.record(is_lambda_reverse_circulant(&mul(&d, &c1), inv), detail);

        let bd = mul(&b, &d);
        let db = mul(&d, &b);
        split.record(
            is_lambda_circulant(&bd, l)
                && is_lambda_circulant(&db, inv)
                && mul(&bd, &d) == b
                && mul(&d, &db) == b
                && circ(bd.row(0), l) == bd
                && circ(db.row(0), inv) == db,
            detail,
        );

        ab.record(is_lambda_reverse_circulant(&mul(&c1, &b), l), detail);
        ba.record(
            l.square() == a.one() && is_lambda_reverse_circulant(&mul(&b, &c1), l),
            detail,
        );

        let one = a.one();
        let (b1, b2) = (rcirc(r1.clone(), one), rcirc(r2.clone(), one));
        rr.record(is_lambda_circulant(&mul(&b1, &b2), one), detail);
    }
    vec![commute, symmetric, ad, da, split, ab, ba, rr]
}

/// Binary image generator built row by row from the Gray maps, independent
/// of `RingMatrix::gray_generator`.
pub fn image_generator(g: &RingMatrix) -> BitMatrix {
    let a = g.alphabet();
    let monomials: &[u8] = match a {
        Alphabet::F2 => &[1],
        Alphabet::R1 => &[1, 2],
        Alphabet::R2 => &[1, 2, 4, 8],
    };
    let rows: Vec<BitVector> = g
        .row_vectors()
        .iter()
        .flat_map(|r| {
            monomials
                .iter()
                .map(|&m| gray_image(&r.scale(RingElement::new(a, m))))
                .collect::<Vec<_>>()
        })
        .collect();
    BitMatrix::new(g.cols() * a.width(), rows).unwrap()
}

fn binary_self_dual(g: &BitMatrix) -> bool {
    let rows = g.row_vectors();
    let orthogonal = rows.iter().all(|r| rows.iter().all(|s| !r.dot(s)));
    orthogonal && 2 * g.rank() == g.cols()
}

fn ring_gram_is_zero(g: &RingMatrix) -> bool {
    let p = mul(g, &g.transpose());
    (0..p.rows()).all(|i| (0..p.cols()).all(|j| p.get(i, j).is_zero()))
}

/// Random self-dual ring codes whose ring-level hypotheses were checked
/// independently of the constructions. Returns the codes and the number of
/// candidates whose hypotheses held but whose construction was refused.
pub fn random_ring_codes(
    seed: u64,
    wanted: usize,
    alphabets: &[Alphabet],
    max_dim: usize,
) -> (Vec<CodeRecord>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes = Vec::new();
    let mut refused = 0;
    let mut attempts = 0;
    while codes.len() < wanted && attempts < 2_000_000 {
        attempts += 1;
        let a = pick(&mut rng, alphabets);
        let w = a.width();
        let bordered = rng.gen_bool(0.3);
        if bordered {
            // binary dimension (4n + 4)·w / 2
            let orders: Vec<usize> = (1..=7)
                .step_by(2)
                .filter(|n| (2 * n + 2) * w <= max_dim)
                .collect();
            if orders.is_empty() {
                continue;
            }
            let n = pick(&mut rng, &orders);
            let (ra, rb) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
            let units: Vec<RingElement> = a.units().collect();
            let non_units: Vec<RingElement> = a.elements().filter(|e| !e.is_unit()).collect();
            let (x, y) = (pick(&mut rng, &units), pick(&mut rng, &non_units));
            let one = a.one();
            let (ca, cb) = (circ(ra.clone(), one), rcirc(rb.clone(), one));
            let target = RingMatrix::identity(a, n)
                .try_add(&RingMatrix::all_ones(a, n))
                .unwrap();
            if ra.sum() != rb.sum() || !ra.sum().is_unit() || gram_sum(&ca, &cb).unwrap() != target
            {
                continue;
            }
            match bordered_four_circulant(&ra, &rb, x, y) {
                Ok(c) => codes.push(c),
                Err(_) => refused += 1,
            }
        } else {
            let orders: Vec<usize> = (1..=8).filter(|n| 2 * n * w <= max_dim).collect();
            if orders.is_empty() {
                continue;
            }
            let n = pick(&mut rng, &orders);
            let l = random_unit(&mut rng, a);
            let (ra, rb) = (random_row(&mut rng, a, n), random_row(&mut rng, a, n));
            let (ba, bb) = modified_blocks(&ra, &rb, l).unwrap();
            if gram_sum(&ba, &bb).unwrap() != RingMatrix::identity(a, n) {
                continue;
            }
            match modified_four_circulant(&ra, &rb, l) {
                Ok(c) => codes.push(c),
                Err(_) => refused += 1,
            }
        }
        // occasionally extend the newest code when the result stays small
        if let Some(last) = codes.last() {
            let len = last.length();
            if (len / 2 + 1) * w <= max_dim && rng.gen_bool(0.3) {
                let x = random_row(&mut rng, a, len);
                let c = random_unit(&mut rng, a);
                if x.inner_product(&x).unwrap() == a.one() && c.square() == a.one() {
                    match extend(last, &x, c) {
                        Ok(e) => codes.push(e),
                        Err(_) => refused += 1,
                    }
                }
            }
        }
    }
    (codes, refused)
}

/// Gray images of random self-dual ring codes are binary self-dual.
pub fn gray_preserves_self_duality(seed: u64, wanted: usize) -> Tally {
    let mut t = Tally::new("Gray images of self-dual ring codes are self-dual");
    let (codes, refused) = random_ring_codes(seed, wanted, &[Alphabet::R1, Alphabet::R2], 40);
    for _ in 0..refused {
        t.record(false, || {
            "construction refused a candidate meeting its hypotheses".into()
        });
    }
    for c in &codes {
        let ring_ok = ring_gram_is_zero(&c.generator);
        let image = image_generator(&c.generator);
        t.record(ring_ok && binary_self_dual(&image), || {
            format!("{:?}", c.provenance)
        });
    }
    t
}

/// Every codeword weight by brute force over all `2^k` messages.
pub fn naive_histogram(g: &BitMatrix) -> Vec<u64> {
    let rows = g.row_vectors();
    let mut hist = vec![0u64; g.cols() + 1];
    for m in 0u64..(1 << rows.len()) {
        let mut w = BitVector::zeros(g.cols());
        for (i, r) in rows.iter().enumerate() {
            if m >> i & 1 == 1 {
                w.xor_assign(r);
            }
        }
        hist[w.weight()] += 1;
    }
    hist
}

/// Engine against brute force on every small self-dual code produced by the
/// random constructions, plus symmetry and total of each histogram.
pub fn engine_matches_naive(seed: u64, wanted: usize) -> (Tally, Tally) {
    let mut oracle = Tally::new("Gray-code engine equals naive enumeration (k <= 16)");
    let mut shape = Tally::new("A_w = A_(n-w) and sum A_w = 2^(n/2)");
    let (codes, _) = random_ring_codes(seed, wanted, &ALPHABETS, 16);
    for c in &codes {
        let g = c.binary_generator();
        let naive = naive_histogram(&g);
        let e = Enumerator::new(&g).unwrap();
        let full = e.full(1);
        let split = e.full_partitioned(2, 3);
        oracle.record(full.histogram == naive && split.histogram == naive, || {
            format!("{:?}", c.provenance)
        });
        let n = g.cols();
        let h = &full.histogram;
        shape.record(
            (0..=n).all(|w| h[w] == h[n - w]) && full.total() == 1u64 << (n / 2),
            || format!("{:?}", c.provenance),
        );
    }
    (oracle, shape)
}
