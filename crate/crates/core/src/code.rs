//! Generator matrices, codeword enumeration and exact code parameters.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{odometer_step, Modulus, ResidueVector};
use crate::error::{check_budget, Error, Result};

/// Default cap on the number of coefficient tuples `q^k` walked by
/// [`LinearCode::enumerate`].
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 24;

/// Default cap on the ambient size `q^n` scanned by [`LinearCode::dual`].
pub const DEFAULT_DUAL_LIMIT: u64 = 1 << 28;

/// `k` rows of length `n` over a common modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorMatrix {
    modulus: Modulus,
    rows: Vec<ResidueVector>,
}

impl GeneratorMatrix {
    pub fn new(modulus: Modulus, rows: Vec<ResidueVector>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Dimension("a generator matrix needs at least one row".into()))?;
        let n = first.len();
        for (i, row) in rows.iter().enumerate() {
            if row.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus.get(),
                    right: row.modulus().get(),
                });
            }
            if row.len() != n {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
        }
        Ok(GeneratorMatrix { modulus, rows })
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let modulus = Modulus::new(q)?;
        let rows = rows
            .iter()
            .map(|r| ResidueVector::new(modulus, r.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, rows)
    }

    /// Builds a `k`-row matrix from its columns, each listed top to bottom.
    pub fn from_columns(modulus: Modulus, k: usize, columns: &[Vec<u32>]) -> Result<Self> {
        if k == 0 || columns.is_empty() {
            return Err(Error::Dimension("matrix must be at least 1x1".into()));
        }
        let mut rows = vec![Vec::with_capacity(columns.len()); k];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != k {
                return Err(Error::Dimension(format!(
                    "column {j} has height {}, expected {k}",
                    col.len()
                )));
            }
            for (row, &e) in rows.iter_mut().zip(col) {
                row.push(e);
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| ResidueVector::new(modulus, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, rows)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn q(&self) -> u32 {
        self.modulus.get()
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[ResidueVector] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        self.rows.iter().map(|r| r.entries()[j]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.n()).map(|j| self.column(j)).collect()
    }

    /// Appends columns (each of height `k`) on the right.
    pub fn append_columns(&self, extra: &[Vec<u32>]) -> Result<Self> {
        let mut cols = self.columns();
        cols.extend_from_slice(extra);
        Self::from_columns(self.modulus, self.k(), &cols)
    }

    /// Deletes the listed column positions.
    pub fn puncture(&self, positions: &[usize]) -> Result<Self> {
        let drop: HashSet<usize> = positions.iter().copied().collect();
        if let Some(&bad) = drop.iter().find(|&&p| p >= self.n()) {
            return Err(Error::Dimension(format!(
                "column {bad} does not exist in a length-{} code",
                self.n()
            )));
        }
        let cols: Vec<Vec<u32>> = self
            .columns()
            .into_iter()
            .enumerate()
            .filter(|(j, _)| !drop.contains(j))
            .map(|(_, c)| c)
            .collect();
        Self::from_columns(self.modulus, self.k(), &cols)
    }

    /// The composition
    ///
    /// ```text
    /// [ 0  | top    ]
    /// [ g0 | bottom ]
    /// ```
    ///
    /// where `top` and `bottom` share the right-hand width.
    pub fn compose(g0: &Self, top: &Self, bottom: &Self) -> Result<Self> {
        let modulus = g0.modulus;
        if top.modulus != modulus || bottom.modulus != modulus {
            return Err(Error::ModulusMismatch {
                left: modulus.get(),
                right: if top.modulus != modulus {
                    top.q()
                } else {
                    bottom.q()
                },
            });
        }
        if bottom.k() != g0.k() || top.n() != bottom.n() {
            return Err(Error::Dimension(
                "blocks of the composition do not line up".into(),
            ));
        }
        let zero = ResidueVector::zeros(modulus, g0.n())?;
        let mut rows = Vec::with_capacity(top.k() + g0.k());
        for r in &top.rows {
            rows.push(zero.concat(r)?);
        }
        for (l, r) in g0.rows.iter().zip(&bottom.rows) {
            rows.push(l.concat(r)?);
        }
        Self::new(modulus, rows)
    }
}

/// `(q, n, k, M, d, weight distribution)` of an enumerated code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeSummary {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub cardinality: u64,
    pub min_distance: Option<usize>,
    pub weight_distribution: BTreeMap<usize, u64>,
}

impl CodeSummary {
    fn from_codewords(q: u32, n: usize, k: usize, codewords: &[ResidueVector]) -> Self {
        let mut weight_distribution = BTreeMap::new();
        for c in codewords {
            *weight_distribution.entry(c.weight()).or_insert(0) += 1;
        }
        let min_distance = weight_distribution.keys().copied().find(|&w| w > 0);
        CodeSummary {
            q,
            n,
            k,
            cardinality: codewords.len() as u64,
            min_distance,
            weight_distribution,
        }
    }
}

/// Occurrence counts `r_0, ..., r_{q-1}` of each symbol in one vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolCounts(Vec<usize>);

impl SymbolCounts {
    pub fn get(&self, symbol: u32) -> usize {
        self.0[symbol as usize]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

pub fn symbol_counts(c: &ResidueVector) -> SymbolCounts {
    let mut counts = vec![0; c.modulus().get() as usize];
    for &e in c.entries() {
        counts[e as usize] += 1;
    }
    SymbolCounts(counts)
}

/// A Z_q-linear code: a generator matrix plus its full, sorted codeword set.
#[derive(Clone, Debug)]
pub struct LinearCode {
    generator: GeneratorMatrix,
    codewords: Vec<ResidueVector>,
    summary: CodeSummary,
}

impl LinearCode {
    /// Enumerates every `Z_q`-combination of the generator rows.
    ///
    /// The cardinality comes from deduplication, so dependent rows (e.g. `[2]`
    /// over Z_4) give `M < q^k`.
    pub fn enumerate(generator: GeneratorMatrix, limit: u64) -> Result<Self> {
        let q = generator.q();
        let k = generator.k();
        let n = generator.n();
        check_budget("codeword enumeration", q as u64, k, limit)?;

        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut digits = vec![0u32; k];
        let mut current = vec![0u32; n];
        seen.insert(current.clone());
        // Each touched digit either increments or wraps q-1 -> 0; both add one
        // more copy of its row.
        while let Some(touched) = odometer_step(&mut digits, q) {
            for row in &generator.rows[..touched] {
                for (c, &g) in current.iter_mut().zip(row.entries()) {
                    *c = (*c + g) % q;
                }
            }
            if !seen.contains(&current) {
                seen.insert(current.clone());
            }
        }
        let mut codewords: Vec<ResidueVector> = seen
            .into_iter()
            .map(|e| ResidueVector::from_raw(generator.modulus, e))
            .collect();
        codewords.sort_unstable();
        let summary = CodeSummary::from_codewords(q, n, k, &codewords);
        Ok(LinearCode {
            generator,
            codewords,
            summary,
        })
    }

    pub fn enumerate_default(generator: GeneratorMatrix) -> Result<Self> {
        Self::enumerate(generator, DEFAULT_ENUMERATION_LIMIT)
    }

    /// Wraps a codeword set known to be a submodule, picking a small
    /// generating subset greedily.
    fn from_submodule(modulus: Modulus, mut codewords: Vec<ResidueVector>) -> Result<Self> {
        codewords.sort_unstable();
        let n = codewords[0].len();
        let q = modulus.get();
        let mut span: HashSet<Vec<u32>> = HashSet::new();
        span.insert(vec![0; n]);
        let mut rows = Vec::new();
        for c in &codewords {
            if span.contains(c.entries()) {
                continue;
            }
            let multiples: Vec<ResidueVector> = (1..q).map(|a| c.scale_by(a)).collect();
            let mut grown = span.clone();
            for s in &span {
                for m in &multiples {
                    grown.insert(
                        s.iter()
                            .zip(m.entries())
                            .map(|(&x, &y)| (x + y) % q)
                            .collect(),
                    );
                }
            }
            span = grown;
            rows.push(c.clone());
            if span.len() == codewords.len() {
                break;
            }
        }
        if rows.is_empty() {
            rows.push(ResidueVector::zeros(modulus, n)?);
        }
        let generator = GeneratorMatrix::new(modulus, rows)?;
        let summary = CodeSummary::from_codewords(q, n, generator.k(), &codewords);
        Ok(LinearCode {
            generator,
            codewords,
            summary,
        })
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.generator
    }

    pub fn modulus(&self) -> Modulus {
        self.generator.modulus
    }

    pub fn q(&self) -> u32 {
        self.generator.q()
    }

    pub fn n(&self) -> usize {
        self.generator.n()
    }

    pub fn k(&self) -> usize {
        self.generator.k()
    }

    /// Codewords in lexicographic order.
    pub fn codewords(&self) -> &[ResidueVector] {
        &self.codewords
    }

    pub fn cardinality(&self) -> u64 {
        self.codewords.len() as u64
    }

    pub fn summary(&self) -> &CodeSummary {
        &self.summary
    }

    pub fn contains(&self, v: &ResidueVector) -> bool {
        self.codewords.binary_search(v).is_ok()
    }

    /// Smallest nonzero codeword weight.
    pub fn min_distance(&self) -> Result<usize> {
        self.summary.min_distance.ok_or(Error::UndefinedDistance)
    }

    pub fn weight_distribution(&self) -> &BTreeMap<usize, u64> {
        &self.summary.weight_distribution
    }

    /// Brute-force dual: every `x` in Z_q^n orthogonal to all generator rows.
    pub fn dual(&self, limit: u64) -> Result<LinearCode> {
        let q = self.q();
        let n = self.n();
        check_budget("dual scan", q as u64, n, limit)?;

        let rows: Vec<&[u32]> = self.generator.rows.iter().map(|r| r.entries()).collect();
        let mut dots = vec![0u32; rows.len()];
        let mut x = vec![0u32; n];
        let mut members = vec![ResidueVector::from_raw(self.modulus(), x.clone())];
        // Incrementing coordinate j adds row[j] to each dot product; wrapping
        // q-1 -> 0 does the same since q·row[j] ≡ 0.
        while let Some(touched) = odometer_step(&mut x, q) {
            for (dot, row) in dots.iter_mut().zip(&rows) {
                for &g in &row[..touched] {
                    *dot = (*dot + g) % q;
                }
            }
            if dots.iter().all(|&d| d == 0) {
                members.push(ResidueVector::from_raw(self.modulus(), x.clone()));
            }
        }
        LinearCode::from_submodule(self.modulus(), members)
    }

    /// Sphere-packing equality `M · V_q(n, t) = q^n` with `t = ⌊(d-1)/2⌋`.
    ///
    /// A single-codeword code uses `t = n`, so it is perfect in the trivial
    /// sense.
    pub fn is_perfect(&self) -> bool {
        let n = self.n();
        let q = self.q();
        let t = match self.summary.min_distance {
            Some(d) => (d - 1) / 2,
            None => n,
        };
        let ball = hamming_ball_volume(q, n, t);
        BigUint::from(self.cardinality()) * ball == BigUint::from(q).pow(n as u32)
    }
}

/// `Σ_{j=0}^{t} C(n, j) (q-1)^j`.
pub fn hamming_ball_volume(q: u32, n: usize, t: usize) -> BigUint {
    let mut total = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    let mut pow = BigUint::from(1u32);
    for j in 0..=t.min(n) {
        if j > 0 {
            binom = binom * BigUint::from(n - j + 1) / BigUint::from(j);
            pow *= BigUint::from(q - 1);
        }
        total += &binom * &pow;
    }
    total
}
