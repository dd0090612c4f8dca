//! Truncated free resolutions over a based algebra, derived tensor
//! products (Tor), and chain-map lifting along resolutions.
//!
//! Resolutions are built by iterated kernel computation on the
//! ground-ring expansion: kernel generators of each differential are
//! taken as the next free module's images. Generators that are exact
//! algebra-linear combinations of earlier ones are dropped (the span is
//! unchanged, certified by an exact solve); without this the ranks grow
//! geometrically and desk-scale Tor past degree 3 is out of reach.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::matrix::Matrix;
use crate::exactalg::smith::kernel_basis;
use crate::homalg::algebra::{prune_columns, AlgMatrix, BasedAlgebra, PresentedModule};
use crate::homalg::complex::{ChainComplex, ChainMap};
use crate::homalg::homology::{homology, HomologyResult};

/// Default truncation depth: computes homology reliably through degree 6.
pub const DEFAULT_RESOLUTION_DEPTH: usize = 8;

/// A truncated complex of free algebra modules
/// `F_len <- ... <- F_1 <- F_0`, exact in middle degrees, augmenting to
/// the presented module.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub alg: Arc<BasedAlgebra>,
    pub module: PresentedModule,
    /// Free ranks, degree 0 first.
    pub ranks: Vec<usize>,
    /// `diffs[i]: F_{i+1} -> F_i`.
    pub diffs: Vec<AlgMatrix>,
}

/// Build a free resolution of `m` to the given depth. `max_rank` refuses
/// (with `ResourceLimit`) when a term would exceed the bound.
pub fn free_resolution(
    m: &PresentedModule,
    depth: usize,
    max_rank: Option<usize>,
) -> Result<Resolution> {
    let alg = m.alg.clone();
    let mut ranks = vec![m.gens];
    let mut diffs: Vec<AlgMatrix> = Vec::new();
    let mut rel = prune_columns(&m.relations)?;
    for _ in 1..=depth {
        if let Some(cap) = max_rank {
            if rel.cols > cap {
                return Err(Error::ResourceLimit(format!(
                    "resolution rank {} exceeds cap {cap}",
                    rel.cols
                )));
            }
        }
        ranks.push(rel.cols);
        diffs.push(rel.clone());
        if rel.cols == 0 {
            break;
        }
        let ground = rel.expand_to_ground();
        let kern = kernel_basis(&ground)?;
        let next = AlgMatrix::from_coord_columns(alg.clone(), rel.cols, &kern);
        rel = prune_columns(&next)?;
    }
    Ok(Resolution {
        alg,
        module: m.clone(),
        ranks,
        diffs,
    })
}

impl Resolution {
    pub fn depth(&self) -> usize {
        self.ranks.len() - 1
    }

    /// The resolution as a ground-ring complex of free modules
    /// (degree 0 at the augmentation end).
    pub fn ground_complex(&self) -> Result<ChainComplex> {
        let n = self.alg.rank;
        let ranks = self.ranks.iter().map(|r| r * n).collect();
        let diffs = self.diffs.iter().map(AlgMatrix::expand_to_ground).collect();
        ChainComplex::free(self.alg.ground.clone(), 0, ranks, diffs)
    }

    /// `F_* (x)_Lambda N` as a ground-ring complex of presented modules.
    pub fn tensor_with(&self, n_mod: &PresentedModule) -> Result<ChainComplex> {
        let alg = &self.alg;
        let n = alg.rank;
        let g_n = n_mod.gens;
        let mut ranks = Vec::new();
        let mut relations = Vec::new();
        let mut diffs = Vec::new();
        for (i, r) in self.ranks.iter().enumerate() {
            ranks.push(r * g_n * n);
            // relations: one copy of N's relations per free generator
            let rel_block = if n_mod.relations.cols == 0 {
                None
            } else {
                let mut block: Option<Matrix> = None;
                let ground_rel = n_mod.relations.expand_to_ground();
                for _ in 0..*r {
                    block = Some(match block {
                        None => ground_rel.clone(),
                        Some(b) => b.block_diag(&ground_rel),
                    });
                }
                block.or_else(|| Some(Matrix::zero(alg.ground.clone(), 0, 0)))
            };
            relations.push(rel_block);
            if i > 0 {
                let d = self.diffs[i - 1].kron_identity(g_n).expand_to_ground();
                diffs.push(d);
            }
        }
        ChainComplex::new(alg.ground.clone(), 0, ranks, relations, diffs)
    }
}

/// Derived tensor product `Tor^Lambda_*(M, N)` up to `depth`.
pub fn tor(
    m: &PresentedModule,
    n: &PresentedModule,
    depth: usize,
) -> Result<HomologyResult> {
    let res = free_resolution(m, depth + 1, None)?;
    let complex = res.tensor_with(n)?;
    let mut h = homology(&complex)?;
    h.groups.retain(|d, _| *d <= depth as i64);
    Ok(h)
}

/// Lift a module map `f: M -> N` (a matrix on generators) to a chain map
/// between free resolutions. Componentwise this solves
/// `d^N phi_i = phi_{i-1} d^M` over the algebra; solutions exist because
/// the target resolution is exact, so failure signals a bug.
pub fn lift_chain_map(
    f: &AlgMatrix,
    res_m: &Resolution,
    res_n: &Resolution,
) -> Result<Vec<AlgMatrix>> {
    let alg = res_m.alg.clone();
    assert_eq!(f.cols, res_m.ranks[0]);
    assert_eq!(f.rows, res_n.ranks[0]);
    let mut lifts = vec![f.clone()];
    let steps = res_m.depth();
    for i in 1..=steps {
        if res_m.ranks.get(i).copied().unwrap_or(0) == 0 {
            break;
        }
        let rank_n_i = res_n.ranks.get(i).copied().unwrap_or(0);
        let prev = &lifts[i - 1];
        let rhs_alg = prev.mul(&res_m.diffs[i - 1]);
        // the image of d^N_i is exactly ker(d^N_{i-1}) (at i = 1: exactly
        // the relation span of N), so the solve is over the plain span
        let basis = if rank_n_i > 0 {
            res_n.diffs[i - 1].expand_to_ground()
        } else {
            Matrix::zero(alg.ground.clone(), res_n.ranks[i - 1] * alg.rank, 0)
        };
        let rhs = rhs_alg.coord_matrix();
        let sol = crate::exactalg::smith::solve_columns(&basis, &rhs)?
            .ok_or_else(|| Error::NoLift(format!("no lift at resolution level {i}")))?;
        let x = sol.take_rows(0..rank_n_i * alg.rank);
        lifts.push(AlgMatrix::from_coord_columns(alg.clone(), rank_n_i, &x));
    }
    Ok(lifts)
}

/// Package lifted maps as a ground-level chain map between the ground
/// complexes of two resolutions.
pub fn lifts_to_chain_map(
    lifts: &[AlgMatrix],
    res_m: &Resolution,
    res_n: &Resolution,
) -> Result<(ChainComplex, ChainComplex, ChainMap)> {
    let cm = res_m.ground_complex()?;
    let cn = res_n.ground_complex()?;
    let mut maps = std::collections::BTreeMap::new();
    for (i, l) in lifts.iter().enumerate() {
        maps.insert(i as i64, l.expand_to_ground());
    }
    let chain = ChainMap::new(&cm, &cn, maps)?;
    Ok((cm, cn, chain))
}
