//! Chain and cochain complexes, filtrations and spectral-sequence pages.
//!
//! Filtrations are basis-aligned: every basis vector carries a level. For
//! chain complexes `F^p` is spanned by vectors of level `≤ p` (increasing);
//! for cochain complexes `F_p` is spanned by vectors of level `≥ p`
//! (decreasing).

use alloc::collections::BTreeMap;
#[cfg(test)]
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::ExactMatrix;
use crate::scalar::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `d_n : C_n → C_{n-1}`
    Homological,
    /// `δ^n : C^n → C^{n+1}`
    Cohomological,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    BoundaryNotSquareZero { degree: usize },
    ShapeMismatch { degree: usize },
    FiltrationNotPreserved { degree: usize, column: usize },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::BoundaryNotSquareZero { degree } => {
                write!(f, "d∘d ≠ 0 at degree {degree}")
            }
            ComplexError::ShapeMismatch { degree } => write!(f, "shape mismatch at degree {degree}"),
            ComplexError::FiltrationNotPreserved { degree, column } => {
                write!(f, "differential leaves filtration at degree {degree}, column {column}")
            }
        }
    }
}

/// Degrees `0..=top()`. `maps[n]` connects degrees `n` and `n+1`: it is
/// `d_{n+1}` (rows `dims[n]`) for chains and `δ^n` (rows `dims[n+1]`) for
/// cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub field: FieldSpec,
    pub variance: Variance,
    pub dims: Vec<usize>,
    pub maps: Vec<ExactMatrix>,
}

impl ChainComplex {
    pub fn new(
        field: FieldSpec,
        variance: Variance,
        dims: Vec<usize>,
        maps: Vec<ExactMatrix>,
    ) -> Result<Self, ComplexError> {
        if maps.len() + 1 != dims.len() {
            return Err(ComplexError::ShapeMismatch { degree: maps.len() });
        }
        for (n, m) in maps.iter().enumerate() {
            let (rows, cols) = match variance {
                Variance::Homological => (dims[n], dims[n + 1]),
                Variance::Cohomological => (dims[n + 1], dims[n]),
            };
            if (m.rows(), m.cols()) != (rows, cols) {
                return Err(ComplexError::ShapeMismatch { degree: n });
            }
        }
        Ok(ChainComplex {
            field,
            variance,
            dims,
            maps,
        })
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// First degree where two consecutive maps compose to nonzero.
    pub fn check_square_zero(&self) -> Result<(), ComplexError> {
        for n in 1..self.maps.len() {
            let prod = match self.variance {
                Variance::Homological => self.maps[n - 1].mul(&self.maps[n]),
                Variance::Cohomological => self.maps[n].mul(&self.maps[n - 1]),
            }
            .map_err(|_| ComplexError::ShapeMismatch { degree: n })?;
            if !prod.is_zero() {
                return Err(ComplexError::BoundaryNotSquareZero { degree: n });
            }
        }
        Ok(())
    }

    /// Map leaving degree `n`, if stored.
    pub fn out_map(&self, n: usize) -> Option<&ExactMatrix> {
        match self.variance {
            Variance::Homological => n.checked_sub(1).map(|k| &self.maps[k]),
            Variance::Cohomological => self.maps.get(n),
        }
    }

    /// Map arriving in degree `n`, if stored.
    pub fn in_map(&self, n: usize) -> Option<&ExactMatrix> {
        match self.variance {
            Variance::Homological => self.maps.get(n),
            Variance::Cohomological => n.checked_sub(1).map(|k| &self.maps[k]),
        }
    }

    /// Dimensions of (co)homology in degrees `0..top()`. The top degree is
    /// omitted: nothing is known about the map arriving there (chains) or
    /// leaving it (cochains).
    pub fn homology_dims(&self) -> Result<Vec<usize>, ComplexError> {
        self.check_square_zero()?;
        let ranks: Vec<usize> = self.maps.iter().map(|m| m.rank()).collect();
        let r = |k: Option<usize>| k.map_or(0, |k| ranks[k]);
        Ok((0..self.top())
            .map(|n| {
                let (out, inn) = match self.variance {
                    Variance::Homological => (r(n.checked_sub(1)), r(Some(n))),
                    Variance::Cohomological => (r(Some(n)), r(n.checked_sub(1))),
                };
                self.dims[n] - out - inn
            })
            .collect())
    }
}

/// Free-standing form of [`ChainComplex::homology_dims`].
pub fn homology_dims(c: &ChainComplex) -> Result<Vec<usize>, ComplexError> {
    c.homology_dims()
}

/// A complex with a level attached to each basis vector of each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    pub complex: ChainComplex,
    pub levels: Vec<Vec<i64>>,
}

impl FilteredComplex {
    pub fn new(complex: ChainComplex, levels: Vec<Vec<i64>>) -> Result<Self, ComplexError> {
        if levels.len() != complex.dims.len() {
            return Err(ComplexError::ShapeMismatch { degree: levels.len() });
        }
        for (n, l) in levels.iter().enumerate() {
            if l.len() != complex.dims[n] {
                return Err(ComplexError::ShapeMismatch { degree: n });
            }
        }
        let fc = FilteredComplex { complex, levels };
        fc.check_filtration()?;
        Ok(fc)
    }

    /// Levels made increasing (negated for cochains) with the map out of
    /// and into each degree, so both variances share one page formula.
    fn increasing_levels(&self) -> Vec<Vec<i64>> {
        match self.complex.variance {
            Variance::Homological => self.levels.clone(),
            Variance::Cohomological => self
                .levels
                .iter()
                .map(|l| l.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    fn map_levels(&self, k: usize) -> (usize, usize) {
        // (source degree, target degree) of maps[k]
        match self.complex.variance {
            Variance::Homological => (k + 1, k),
            Variance::Cohomological => (k, k + 1),
        }
    }

    pub fn check_filtration(&self) -> Result<(), ComplexError> {
        let lv = self.increasing_levels();
        for (k, m) in self.complex.maps.iter().enumerate() {
            let (src, tgt) = self.map_levels(k);
            for j in 0..m.cols() {
                if m.column(j).iter().any(|(i, _)| lv[tgt][*i] > lv[src][j]) {
                    return Err(ComplexError::FiltrationNotPreserved {
                        degree: src,
                        column: j,
                    });
                }
            }
        }
        Ok(())
    }

    /// Levels in use, sorted.
    pub fn level_range(&self) -> (i64, i64) {
        let all = self.levels.iter().flatten();
        let lo = all.clone().copied().min().unwrap_or(0);
        let hi = all.copied().max().unwrap_or(0);
        (lo, hi)
    }
}

/// Dimension table of one page. Keys are `(p, n)`: filtration level `p`
/// (as given, not negated) and total degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub entries: BTreeMap<(i64, usize), usize>,
}

impl SpectralPage {
    pub fn get(&self, p: i64, n: usize) -> usize {
        self.entries.get(&(p, n)).copied().unwrap_or(0)
    }

    /// Entry at filtration `p` and complementary degree `q = n - p`.
    pub fn at(&self, p: i64, q: i64) -> usize {
        let n = p + q;
        if n < 0 {
            return 0;
        }
        self.get(p, n as usize)
    }

    /// `Σ_p E_{p, n-p}`.
    pub fn total(&self, n: usize) -> usize {
        self.entries
            .iter()
            .filter(|((_, m), _)| *m == n)
            .map(|(_, v)| *v)
            .sum()
    }

    /// Restriction to degrees `< max_degree`.
    pub fn window(&self, max_degree: usize) -> SpectralPage {
        SpectralPage {
            r: self.r,
            entries: self
                .entries
                .iter()
                .filter(|((_, n), _)| *n < max_degree)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }
}

/// Pivot data of every differential, enough to read off all pages.
///
/// Page dimensions follow `E^r_p = Z^r_p / (Z^{r-1}_{p-1} + B^{r-1}_p)` with
/// `Z^r_p = {x ∈ F_p : dx ∈ F_{p-r}}` and `B^t_p = F_p ∩ d(F_{p+t})`, which
/// reduces to ranks of the blocks `d[level > a, level ≤ b]`. Those ranks come
/// from one filtered reduction per differential.
#[derive(Clone, Debug)]
pub struct SpectralSequence {
    levels: Vec<Vec<i64>>,
    orig_levels: Vec<Vec<i64>>,
    /// pairs[k] for maps[k]: (column level, row level)
    pairs: Vec<Vec<(i64, i64)>>,
    variance: Variance,
    top: usize,
}

impl SpectralSequence {
    pub fn new(fc: &FilteredComplex) -> Self {
        let levels = fc.increasing_levels();
        let pairs = fc
            .complex
            .maps
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let (src, tgt) = fc.map_levels(k);
                m.filtered_pivots(&levels[tgt], &levels[src])
            })
            .collect();
        SpectralSequence {
            levels,
            orig_levels: fc.levels.clone(),
            pairs,
            variance: fc.complex.variance,
            top: fc.complex.top(),
        }
    }

    fn out_index(&self, n: usize) -> Option<usize> {
        match self.variance {
            Variance::Homological => n.checked_sub(1),
            Variance::Cohomological => Some(n).filter(|&k| k < self.top),
        }
    }

    fn in_index(&self, n: usize) -> Option<usize> {
        match self.variance {
            Variance::Homological => Some(n).filter(|&k| k < self.top),
            Variance::Cohomological => n.checked_sub(1),
        }
    }

    fn block_rank(&self, k: Option<usize>, rows_above: i64, cols_upto: i64) -> usize {
        match k {
            None => 0,
            Some(k) => self.pairs[k]
                .iter()
                .filter(|(c, r)| *c <= cols_upto && *r > rows_above)
                .count(),
        }
    }

    fn f_size(&self, n: usize, q: i64) -> usize {
        self.levels[n].iter().filter(|&&l| l <= q).count()
    }

    /// `dim Z^t_q(n) = |F_q C_n| - rank(d_out[level > q - t, level ≤ q])`.
    fn a(&self, n: usize, t: i64, q: i64) -> usize {
        self.f_size(n, q) - self.block_rank(self.out_index(n), q - t, q)
    }

    /// `dim E^r_p(n)` with increasing (internal) level `p`.
    fn entry(&self, n: usize, r: usize, p: i64) -> usize {
        if r == 0 {
            return self.f_size(n, p) - self.f_size(n, p - 1);
        }
        let r = r as i64;
        let z = self.a(n, r, p);
        let z_prev = self.a(n, r - 1, p - 1);
        let q = p + r - 1;
        // dim B^{r-1}_p - dim B^r_{p-1} from the incoming map
        let k = self.in_index(n);
        let b = self.block_rank(k, p - 1, q) - self.block_rank(k, p, q);
        z - z_prev - b
    }

    /// Page `r` on degrees `0..top` (the top degree lacks its incoming or
    /// outgoing map and is excluded).
    pub fn page(&self, r: usize) -> SpectralPage {
        let mut entries = BTreeMap::new();
        for n in 0..self.top {
            let mut ps: Vec<i64> = self.levels[n].clone();
            ps.sort();
            ps.dedup();
            for p in ps {
                let v = self.entry(n, r, p);
                let key = match self.variance {
                    Variance::Homological => p,
                    Variance::Cohomological => -p,
                };
                entries.insert((key, n), v);
            }
        }
        SpectralPage { r, entries }
    }

    /// A page index after which nothing changes.
    pub fn stable_page(&self) -> usize {
        let all = self.levels.iter().flatten();
        let lo = all.clone().copied().min().unwrap_or(0);
        let hi = all.copied().max().unwrap_or(0);
        (hi - lo + 2) as usize
    }

    pub fn infinity_page(&self) -> SpectralPage {
        self.page(self.stable_page())
    }

    pub fn original_levels(&self) -> &[Vec<i64>] {
        &self.orig_levels
    }
}

pub fn spectral_page(fc: &FilteredComplex, r: usize) -> SpectralPage {
    SpectralSequence::new(fc).page(r)
}

/// Result of comparing `Σ_p E^∞` with total (co)homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergence {
    pub homology: Vec<usize>,
    pub infinity_totals: Vec<usize>,
}

impl Convergence {
    pub fn passed(&self) -> bool {
        self.homology == self.infinity_totals
    }
}

pub fn check_convergence(fc: &FilteredComplex) -> Result<Convergence, ComplexError> {
    let homology = fc.complex.homology_dims()?;
    let inf = SpectralSequence::new(fc).infinity_page();
    let infinity_totals = (0..fc.complex.top()).map(|n| inf.total(n)).collect();
    Ok(Convergence {
        homology,
        infinity_totals,
    })
}

/// Builds a matrix whose columns are images of basis vectors.
pub fn matrix_from_images(
    field: FieldSpec,
    rows: usize,
    images: impl Iterator<Item = Vec<(usize, crate::scalar::Scalar)>>,
) -> ExactMatrix {
    let data: Vec<_> = images
        .map(|mut v| {
            v.sort_by_key(|(i, _)| *i);
            // merge duplicates
            let mut out: Vec<(usize, crate::scalar::Scalar)> = Vec::with_capacity(v.len());
            for (i, c) in v {
                match out.last_mut() {
                    Some((j, d)) if *j == i => *d += &c,
                    _ => out.push((i, c)),
                }
            }
            out.retain(|(_, c)| !c.is_zero());
            out
        })
        .collect();
    ExactMatrix::from_sparse_columns(field, rows, data)
}

/// Zero map helper.
pub fn zero_map(field: FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::zeros(field, rows, cols)
}
