//! Bounded chain complexes of presented modules over a ground ring,
//! chain maps, and mapping fibers/cones.
//!
//! Grading is homological: the differential lowers degree. Terms are
//! free modules with an optional relation matrix (columns in the free
//! cover); a complex of free modules simply has no relations. The
//! complex property `d o d = 0` is checked exactly on construction,
//! modulo the target's relations when present.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::ring::GroundRing;
use crate::exactalg::smith::solve_columns;

#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ring: GroundRing,
    /// Lowest degree with a (possibly zero-rank) term.
    pub lo: i64,
    /// Free ranks per degree, index 0 at `lo`.
    pub ranks: Vec<usize>,
    /// Optional relation columns per degree (presented-module terms).
    pub relations: Vec<Option<Matrix>>,
    /// `diffs[i]` maps the term in degree `lo+i+1` to the one in `lo+i`.
    pub diffs: Vec<Matrix>,
}

impl ChainComplex {
    pub fn new(
        ring: GroundRing,
        lo: i64,
        ranks: Vec<usize>,
        relations: Vec<Option<Matrix>>,
        diffs: Vec<Matrix>,
    ) -> Result<Self> {
        assert_eq!(relations.len(), ranks.len());
        assert_eq!(diffs.len(), ranks.len().saturating_sub(1));
        for (i, d) in diffs.iter().enumerate() {
            assert_eq!(d.rows, ranks[i], "differential row count at {i}");
            assert_eq!(d.cols, ranks[i + 1], "differential column count at {i}");
            assert_eq!(d.ring, ring);
        }
        for (i, r) in relations.iter().enumerate() {
            if let Some(r) = r {
                assert_eq!(r.rows, ranks[i], "relation rows at {i}");
                assert_eq!(r.ring, ring);
            }
        }
        let c = ChainComplex {
            ring,
            lo,
            ranks,
            relations,
            diffs,
        };
        c.check_dd_zero()?;
        Ok(c)
    }

    pub fn free(ring: GroundRing, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        let relations = vec![None; ranks.len()];
        ChainComplex::new(ring, lo, ranks, relations, diffs)
    }

    pub fn zero(ring: GroundRing) -> Self {
        ChainComplex {
            ring,
            lo: 0,
            ranks: vec![],
            relations: vec![],
            diffs: vec![],
        }
    }

    fn check_dd_zero(&self) -> Result<()> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let prod = self.diffs[i].mul(&self.diffs[i + 1]);
            if !self.vanishes_in_term(i, &prod)? {
                return Err(Error::InvalidInput(format!(
                    "d o d != 0 into degree {}",
                    self.lo + i as i64
                )));
            }
        }
        Ok(())
    }

    /// Does every column of `m` vanish in the (presented) term at index
    /// `idx`, i.e. lie in the relation span?
    pub(crate) fn vanishes_in_term(&self, idx: usize, m: &Matrix) -> Result<bool> {
        match &self.relations[idx] {
            None => Ok(m.is_effectively_zero()),
            Some(rel) => {
                if m.is_effectively_zero() {
                    return Ok(true);
                }
                Ok(solve_columns(rel, m)?.is_some())
            }
        }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn index_of(&self, degree: i64) -> Option<usize> {
        if degree < self.lo || degree > self.hi() {
            None
        } else {
            Some((degree - self.lo) as usize)
        }
    }

    pub fn rank_at(&self, degree: i64) -> usize {
        self.index_of(degree).map_or(0, |i| self.ranks[i])
    }

    pub fn relations_at(&self, degree: i64) -> Option<&Matrix> {
        self.index_of(degree)
            .and_then(|i| self.relations[i].as_ref())
    }

    /// The differential out of `degree` (mapping to `degree - 1`);
    /// synthesized as a zero matrix at the boundary.
    pub fn diff_from(&self, degree: i64) -> Matrix {
        match self.index_of(degree) {
            Some(i) if i >= 1 => self.diffs[i - 1].clone(),
            _ => Matrix::zero(
                self.ring.clone(),
                self.rank_at(degree - 1),
                self.rank_at(degree),
            ),
        }
    }

    /// Degree shift: `shifted(s)` has its degree-`n` term equal to the
    /// original degree-`n+s` term, with differentials negated for odd `s`.
    pub fn shifted(&self, s: i64) -> ChainComplex {
        let diffs = if s.rem_euclid(2) == 1 {
            self.diffs.iter().map(Matrix::neg).collect()
        } else {
            self.diffs.clone()
        };
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo - s,
            ranks: self.ranks.clone(),
            relations: self.relations.clone(),
            diffs,
        }
    }
}

/// A chain map, stored as per-degree matrices; missing degrees are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub maps: BTreeMap<i64, Matrix>,
}

impl ChainMap {
    /// Validates commutation with the differentials, modulo target
    /// relations.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        maps: BTreeMap<i64, Matrix>,
    ) -> Result<Self> {
        let cm = ChainMap { maps };
        let lo = source.lo.min(target.lo);
        let hi = source.hi().max(target.hi());
        for n in lo..=hi {
            let f_n = cm.matrix_at(source, target, n);
            let f_prev = cm.matrix_at(source, target, n - 1);
            let lhs = target.diff_from(n).mul(&f_n);
            let rhs = f_prev.mul(&source.diff_from(n));
            let diff = lhs.sub(&rhs);
            let ok = match target.index_of(n - 1) {
                Some(idx) => target.vanishes_in_term(idx, &diff)?,
                None => diff.is_effectively_zero(),
            };
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "chain map does not commute with differentials at degree {n}"
                )));
            }
        }
        Ok(cm)
    }

    /// The matrix at a degree, synthesized with the right shape when
    /// absent.
    pub fn matrix_at(&self, source: &ChainComplex, target: &ChainComplex, n: i64) -> Matrix {
        match self.maps.get(&n) {
            Some(m) => m.clone(),
            None => Matrix::zero(source.ring.clone(), target.rank_at(n), source.rank_at(n)),
        }
    }

    pub fn zero() -> Self {
        ChainMap {
            maps: BTreeMap::new(),
        }
    }
}

/// A mapping fiber together with its canonical comparison maps: the
/// projection to the source and the degree-shifted inclusion of the
/// target, which induce the long exact sequence
/// `... -> H_{n+1}(Y) -> H_n(F) -> H_n(X) -> H_n(Y) -> ...`.
#[derive(Clone, Debug)]
pub struct FiberTriple {
    pub fiber: ChainComplex,
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub phi: ChainMap,
    /// `F -> X`, `(x, y) -> x`.
    pub proj: ChainMap,
}

/// The mapping fiber of `phi: X -> Y`: `F_n = X_n (+) Y_{n+1}` with
/// `d(x, y) = (d x, phi(x) - d y)`.
pub fn mapping_fiber(source: &ChainComplex, target: &ChainComplex, phi: &ChainMap) -> Result<FiberTriple> {
    let ring = source.ring.clone();
    assert_eq!(ring, target.ring, "fiber of maps over distinct rings");
    let lo = source.lo.min(target.lo - 1);
    let hi = source.hi().max(target.hi() - 1);
    if hi < lo {
        return Ok(FiberTriple {
            fiber: ChainComplex::zero(ring),
            source: source.clone(),
            target: target.clone(),
            phi: phi.clone(),
            proj: ChainMap::zero(),
        });
    }
    let mut ranks = Vec::new();
    let mut relations = Vec::new();
    let mut diffs = Vec::new();
    for n in lo..=hi {
        let rx = source.rank_at(n);
        let ry = target.rank_at(n + 1);
        ranks.push(rx + ry);
        let rel = match (source.relations_at(n), target.relations_at(n + 1)) {
            (None, None) => None,
            (a, b) => {
                let ra = a.cloned().unwrap_or_else(|| Matrix::zero(ring.clone(), rx, 0));
                let rb = b.cloned().unwrap_or_else(|| Matrix::zero(ring.clone(), ry, 0));
                Some(ra.block_diag(&rb))
            }
        };
        relations.push(rel);
    }
    for n in (lo + 1)..=hi {
        // F_n = X_n + Y_{n+1}  ->  F_{n-1} = X_{n-1} + Y_n
        let dx = source.diff_from(n);
        let dy = target.diff_from(n + 1);
        let f = phi.matrix_at(source, target, n);
        let top = dx.hstack(&Matrix::zero(
            ring.clone(),
            source.rank_at(n - 1),
            target.rank_at(n + 1),
        ));
        let bottom = f.hstack(&dy.neg());
        diffs.push(top.vstack(&bottom));
    }
    let fiber = ChainComplex::new(ring.clone(), lo, ranks, relations, diffs)?;

    let mut proj_maps = BTreeMap::new();
    for n in lo..=hi {
        let rx = source.rank_at(n);
        let ry = target.rank_at(n + 1);
        if rx + ry == 0 {
            continue;
        }
        let m = Matrix::identity(ring.clone(), rx)
            .hstack(&Matrix::zero(ring.clone(), rx, ry));
        proj_maps.insert(n, m);
    }
    let proj = ChainMap::new(&fiber, source, proj_maps)?;
    Ok(FiberTriple {
        fiber,
        source: source.clone(),
        target: target.clone(),
        phi: phi.clone(),
        proj,
    })
}

/// The mapping cone: the fiber shifted down one degree
/// (`Cone_n = X_{n-1} (+) Y_n`), so that
/// `H_n(Cone) = H_{n-1}(Fiber)`.
pub fn mapping_cone(source: &ChainComplex, target: &ChainComplex, phi: &ChainMap) -> Result<ChainComplex> {
    Ok(mapping_fiber(source, target, phi)?.fiber.shifted(-1))
}
