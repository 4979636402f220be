//! Gram matrices for the dual (representer) forms, plus an optional binary
//! on-disk cache.
//!
//! Only the two kernels the algorithms actually use are provided: linear
//! and RBF.  Matrices are dense and built row-parallel; at the intended
//! scale (M ≤ ~5000) that is faster and simpler than anything sparse.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Kernel choice for dual representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind {
    /// k(x, x′) = ⟨x, x′⟩
    Linear,
    /// k(x, x′) = exp(−γ·‖x − x′‖²)
    Rbf { gamma: f64 },
}

impl KernelKind {
    /// Short name used in model files and CLI output ("linear" / "rbf");
    /// the RBF width is carried separately as a hyperparameter.
    pub fn name(&self) -> &'static str {
        match self {
            KernelKind::Linear => "linear",
            KernelKind::Rbf { .. } => "rbf",
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if let KernelKind::Rbf { gamma } = self {
            if !gamma.is_finite() || *gamma <= 0.0 {
                return Err(Error::arg(format!("rbf gamma must be > 0, got {gamma}")));
            }
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn eval(&self, a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        match self {
            KernelKind::Linear => a.dot(b),
            KernelKind::Rbf { gamma } => {
                let mut d2 = 0.0;
                for (u, v) in a.iter().zip(b.iter()) {
                    let d = u - v;
                    d2 += d * d;
                }
                f64::exp(-gamma * d2)
            }
        }
    }
}

/// A symmetric M×M kernel matrix with its diagonal square roots √K_ii
/// precomputed (those are the per-point norms in feature space, needed for
/// normalized margins).
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    entries: DMatrix<f64>,
    kind: KernelKind,
    row_norms: Vec<f64>,
}

impl GramMatrix {
    fn from_entries(entries: DMatrix<f64>, kind: KernelKind) -> Result<Self> {
        let mut row_norms = Vec::with_capacity(entries.nrows());
        for i in 0..entries.nrows() {
            let d = entries[(i, i)];
            if !(d > 0.0) {
                return Err(Error::arg(format!(
                    "Gram diagonal must be positive, K[{i},{i}] = {d}"
                )));
            }
            row_norms.push(d.sqrt());
        }
        Ok(Self {
            entries,
            kind,
            row_norms,
        })
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// √K_ii for every row.
    pub fn row_norms(&self) -> &[f64] {
        &self.row_norms
    }

    /// Number of rows/columns M.
    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    /// K·α.
    pub fn mat_vec(&self, alpha: &DVector<f64>) -> DVector<f64> {
        &self.entries * alpha
    }

    /// αᵀ·K·α.
    pub fn quad_form(&self, alpha: &DVector<f64>) -> f64 {
        alpha.dot(&(&self.entries * alpha))
    }

    /// Normalized margins of the dual weight vector: (K·α)_i / √K_ii.
    pub fn normalized_margins(&self, alpha: &DVector<f64>) -> DVector<f64> {
        let mut m = self.mat_vec(alpha);
        for (v, n) in m.iter_mut().zip(&self.row_norms) {
            *v /= n;
        }
        m
    }
}

fn validate_points(points: &[DVector<f64>]) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::arg("cannot build a Gram matrix from zero points"));
    }
    let dim = points[0].len();
    if dim == 0 {
        return Err(Error::arg("points must have dimension ≥ 1"));
    }
    for (i, p) in points.iter().enumerate() {
        if p.len() != dim {
            return Err(Error::arg(format!(
                "point {i} has dimension {}, expected {dim}",
                p.len()
            )));
        }
    }
    Ok(dim)
}

/// Build the Gram matrix of a point set.
pub fn gram(points: &[DVector<f64>], kind: KernelKind) -> Result<GramMatrix> {
    kind.validate()?;
    validate_points(points)?;
    let m = points.len();
    let mut data = vec![0.0f64; m * m];
    // one row per chunk; entries are pure functions of (i, j), so the
    // parallel fill is deterministic
    data.par_chunks_mut(m).enumerate().for_each(|(i, row)| {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = kind.eval(&points[i], &points[j]);
        }
    });
    // row-major data, but the matrix is symmetric, so the column-major
    // constructor yields the same matrix
    GramMatrix::from_entries(DMatrix::from_vec(m, m, data), kind)
}

/// Build the joint Gram over source rows followed by target rows.
pub fn joint_gram(
    source: &[DVector<f64>],
    target: &[DVector<f64>],
    kind: KernelKind,
) -> Result<GramMatrix> {
    if source.is_empty() || target.is_empty() {
        return Err(Error::arg("joint Gram needs nonempty source and target"));
    }
    if source[0].len() != target[0].len() {
        return Err(Error::arg(format!(
            "source dimension {} != target dimension {}",
            source[0].len(),
            target[0].len()
        )));
    }
    let stacked: Vec<DVector<f64>> = source.iter().chain(target).cloned().collect();
    gram(&stacked, kind)
}

// --------------------------------------------------------------------------
// binary cache
// --------------------------------------------------------------------------

const CACHE_MAGIC: &[u8; 8] = b"PBGRAM01";

/// Content hash identifying a (points, kernel) pair; use it to name cache
/// files.  FNV-1a over the kernel parameters and the little-endian bytes of
/// every coordinate — fully deterministic across runs and platforms.
pub fn cache_key(points: &[DVector<f64>], kind: KernelKind) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let mut h = OFFSET;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
    };
    match kind {
        KernelKind::Linear => eat(&[0u8]),
        KernelKind::Rbf { gamma } => {
            eat(&[1u8]);
            eat(&gamma.to_le_bytes());
        }
    }
    eat(&(points.len() as u64).to_le_bytes());
    if let Some(first) = points.first() {
        eat(&(first.len() as u64).to_le_bytes());
    }
    for p in points {
        for v in p.iter() {
            eat(&v.to_le_bytes());
        }
    }
    h
}

/// Write a Gram matrix to a binary cache file: 16-byte header (magic
/// `PBGRAM01`, M as u64 little-endian) followed by M² row-major
/// little-endian f64 entries.
pub fn write_cache(gram: &GramMatrix, path: impl AsRef<Path>) -> Result<()> {
    let m = gram.size();
    let mut f = fs::File::create(path)?;
    f.write_all(CACHE_MAGIC)?;
    f.write_all(&(m as u64).to_le_bytes())?;
    let mut buf = Vec::with_capacity(m * m * 8);
    for i in 0..m {
        for j in 0..m {
            buf.extend_from_slice(&gram.entries[(i, j)].to_le_bytes());
        }
    }
    f.write_all(&buf)?;
    Ok(())
}

/// Read a Gram matrix back from a cache file.  The kernel kind is not part
/// of the format; the caller supplies the kind it derived the cache key
/// from.
pub fn read_cache(path: impl AsRef<Path>, kind: KernelKind) -> Result<GramMatrix> {
    let path = path.as_ref();
    let parse_err = |message: &str| Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message: message.to_string(),
    };
    let mut f = fs::File::open(path)?;
    let mut header = [0u8; 16];
    f.read_exact(&mut header)
        .map_err(|_| parse_err("file shorter than the 16-byte header"))?;
    if &header[..8] != CACHE_MAGIC {
        return Err(parse_err("bad magic (not a PBGRAM01 file)"));
    }
    let m = u64::from_le_bytes(header[8..16].try_into().expect("8 bytes")) as usize;
    if m == 0 {
        return Err(parse_err("matrix size is zero"));
    }
    let mut buf = Vec::new();
    f.read_to_end(&mut buf)?;
    if buf.len() != m * m * 8 {
        return Err(parse_err(&format!(
            "expected {} payload bytes for M={m}, found {}",
            m * m * 8,
            buf.len()
        )));
    }
    let data: Vec<f64> = buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    GramMatrix::from_entries(DMatrix::from_vec(m, m, data), kind)
}

/// Build a Gram matrix, memoized in `cache_dir` under the content hash of
/// the inputs.
pub fn gram_cached(
    points: &[DVector<f64>],
    kind: KernelKind,
    cache_dir: impl AsRef<Path>,
) -> Result<GramMatrix> {
    kind.validate()?;
    validate_points(points)?;
    let key = cache_key(points, kind);
    let path: PathBuf = cache_dir.as_ref().join(format!("{key:016x}.gram"));
    if path.is_file() {
        return read_cache(&path, kind);
    }
    let g = gram(points, kind)?;
    write_cache(&g, &path)?;
    Ok(g)
}
