//! Sparse symmetric-function vectors, Kostka numbers and the
//! monomial-to-Schur change of basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Monomial,
    Schur,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Monomial => write!(f, "m"),
            Basis::Schur => write!(f, "s"),
        }
    }
}

/// A homogeneous symmetric function stored as a sparse map from
/// partitions to exact integers. Absent keys are zero; zeros are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientVector {
    basis: Basis,
    coeffs: BTreeMap<Partition, BigInt>,
}

impl CoefficientVector {
    pub fn new(basis: Basis) -> Self {
        CoefficientVector { basis, coeffs: BTreeMap::new() }
    }

    pub fn from_entries<I, V>(basis: Basis, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, V)>,
        V: Into<BigInt>,
    {
        let mut v = CoefficientVector::new(basis);
        for (lambda, value) in entries {
            v.add(lambda, value.into())?;
        }
        Ok(v)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Degree of the homogeneous component, or `None` for the zero vector.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next().map(Partition::size)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, lambda: &Partition) -> BigInt {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    /// Adds `value` to the coefficient of `lambda`.
    pub fn add(&mut self, lambda: Partition, value: BigInt) -> Result<()> {
        if let Some(d) = self.degree() {
            if d != lambda.size() {
                return Err(Error::InvalidArgument(format!(
                    "inhomogeneous entry {lambda} in a degree {d} vector"
                )));
            }
        }
        if value.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(lambda.clone()).or_default();
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&lambda);
        }
        Ok(())
    }

    /// `self += k * other`.
    pub fn add_scaled(&mut self, other: &CoefficientVector, k: &BigInt) -> Result<()> {
        if self.basis != other.basis {
            return Err(Error::InvalidArgument("basis mismatch".into()));
        }
        for (lambda, value) in &other.coeffs {
            self.add(lambda.clone(), value * k)?;
        }
        Ok(())
    }

    /// Entries in canonical (reverse lexicographic) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.coeffs.iter().rev()
    }

    /// The first partition in canonical order with a negative coefficient.
    pub fn first_negative(&self) -> Option<&Partition> {
        self.iter().find(|(_, v)| v < &&BigInt::zero()).map(|(p, _)| p)
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (lambda, value)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{value}*{}{lambda}", self.basis)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffEntryJson {
    partition: Partition,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CoefficientVectorJson {
    basis: Basis,
    coeffs: Vec<CoeffEntryJson>,
}

impl Serialize for CoefficientVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientVectorJson {
            basis: self.basis,
            coeffs: self
                .iter()
                .map(|(p, v)| CoeffEntryJson { partition: p.clone(), value: v.to_string() })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoefficientVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = CoefficientVectorJson::deserialize(deserializer)?;
        let mut v = CoefficientVector::new(raw.basis);
        for entry in raw.coeffs {
            let value: BigInt = entry.value.parse().map_err(D::Error::custom)?;
            v.add(entry.partition, value).map_err(D::Error::custom)?;
        }
        Ok(v)
    }
}

/// Number of semistandard tableaux of shape `shape` whose content is
/// `weight` (`weight[i]` copies of `i + 1`).
pub fn kostka_number(shape: &Partition, weight: &Partition) -> Result<u64> {
    if shape.size() != weight.size() {
        return Err(Error::SizeMismatch { partition: shape.size(), vertices: weight.size() });
    }
    Ok(count_ssyt(shape.parts(), weight.parts()))
}

/// Backtracking over row-major fillings. Each cell takes a value at least
/// its left neighbour and strictly greater than the cell above.
fn count_ssyt(shape: &[usize], weight: &[usize]) -> u64 {
    if shape.is_empty() {
        return 1;
    }
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut remaining = weight.to_vec();
    let mut count = 0;
    fill_ssyt(&cells, 0, &mut grid, &mut remaining, &mut count);
    count
}

fn fill_ssyt(
    cells: &[(usize, usize)],
    idx: usize,
    grid: &mut [Vec<usize>],
    remaining: &mut [usize],
    count: &mut u64,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *count += 1;
        return;
    };
    let lo_row = if c > 0 { grid[r][c - 1] } else { 0 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 0 };
    let lo = lo_row.max(lo_col).max(1);
    for value in lo..=remaining.len() {
        if remaining[value - 1] == 0 {
            continue;
        }
        remaining[value - 1] -= 1;
        grid[r][c] = value;
        fill_ssyt(cells, idx + 1, grid, remaining, count);
        remaining[value - 1] += 1;
    }
    grid[r][c] = 0;
}

/// The Kostka matrix of a fixed degree, indexed in canonical partition
/// order. Entry `[i][j]` is `K_{λ_i, λ_j}`; the matrix is upper
/// unitriangular in this order.
#[derive(Debug)]
pub struct KostkaMatrix {
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    entries: Vec<Vec<u64>>,
}

impl KostkaMatrix {
    fn build(n: usize) -> Self {
        let partitions = Partition::all(n);
        let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let entries = partitions
            .iter()
            .map(|shape| partitions.iter().map(|w| count_ssyt(shape.parts(), w.parts())).collect())
            .collect();
        KostkaMatrix { partitions, index, entries }
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn get(&self, shape: &Partition, weight: &Partition) -> Option<u64> {
        Some(self.entries[*self.index.get(shape)?][*self.index.get(weight)?])
    }
}

type KostkaCache = RwLock<HashMap<usize, Arc<KostkaMatrix>>>;

/// Memoized Kostka matrix for degree `n`. Built outside the lock; the
/// first published matrix wins.
pub fn kostka_matrix(n: usize) -> Arc<KostkaMatrix> {
    static CACHE: OnceLock<KostkaCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.read().expect("kostka cache poisoned").get(&n) {
        return Arc::clone(m);
    }
    let built = Arc::new(KostkaMatrix::build(n));
    let mut guard = cache.write().expect("kostka cache poisoned");
    Arc::clone(guard.entry(n).or_insert(built))
}

/// Solves `Σ w(λ) s_λ = Σ v(μ) m_μ` for `w` by back-substitution through
/// the unitriangular Kostka system.
pub fn monomial_to_schur(v: &CoefficientVector) -> Result<CoefficientVector> {
    if v.basis() != Basis::Monomial {
        return Err(Error::InvalidArgument("expected a monomial-basis vector".into()));
    }
    let Some(n) = v.degree() else {
        return Ok(CoefficientVector::new(Basis::Schur));
    };
    let kostka = kostka_matrix(n);
    let parts = kostka.partitions();
    let mut w: Vec<BigInt> = vec![BigInt::zero(); parts.len()];
    for (j, mu) in parts.iter().enumerate() {
        let mut acc = v.get(mu);
        for (i, wi) in w.iter().enumerate().take(j) {
            let k = kostka.entries[i][j];
            if k != 0 && !wi.is_zero() {
                acc -= wi * BigInt::from(k);
            }
        }
        let diag = kostka.entries[j][j];
        if diag != 1 {
            return Err(Error::Internal(format!("Kostka diagonal at {mu} is {diag}")));
        }
        w[j] = acc;
    }
    CoefficientVector::from_entries(Basis::Schur, parts.iter().cloned().zip(w))
}

/// Expands a Schur-basis vector in the monomial basis.
pub fn schur_to_monomial(w: &CoefficientVector) -> Result<CoefficientVector> {
    if w.basis() != Basis::Schur {
        return Err(Error::InvalidArgument("expected a Schur-basis vector".into()));
    }
    let Some(n) = w.degree() else {
        return Ok(CoefficientVector::new(Basis::Monomial));
    };
    let kostka = kostka_matrix(n);
    let mut v = CoefficientVector::new(Basis::Monomial);
    for (lambda, coeff) in w.iter() {
        for mu in kostka.partitions() {
            let k = kostka.get(lambda, mu).expect("same degree");
            if k != 0 {
                v.add(mu.clone(), coeff * BigInt::from(k))?;
            }
        }
    }
    Ok(v)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}
