//! Minimal graded free resolutions of cyclic modules `S/I`.

use super::module::{column_degree, minimal_generators, syzygies, Column};
use crate::poly::{Field, HomIdeal, Poly};

/// Homogeneous map `(+)_i S(-source_i) -> (+)_k S(-target_k)`, stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub source_shifts: Vec<u32>,
    pub target_shifts: Vec<u32>,
    pub columns: Vec<Column>,
}

impl GradedMap {
    pub fn source_rank(&self) -> usize {
        self.source_shifts.len()
    }

    pub fn target_rank(&self) -> usize {
        self.target_shifts.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.columns[col][row]
    }

    /// Checks that every nonzero entry has degree `source - target`.
    pub fn is_homogeneous(&self) -> bool {
        self.columns.iter().zip(&self.source_shifts).all(|(col, &s)| {
            col.iter().zip(&self.target_shifts).all(|(p, &t)| {
                p.is_zero() || (s >= t && p.homogeneous_degree() == Some(s - t))
            })
        })
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GradedMap) -> GradedMap {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut out = vec![Poly::zero(); self.target_rank()];
                for (i, c) in col.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (k, e) in self.columns[i].iter().enumerate() {
                        out[k] = out[k].add(&c.mul(e));
                    }
                }
                out
            })
            .collect();
        GradedMap {
            source_shifts: other.source_shifts.clone(),
            target_shifts: self.target_shifts.clone(),
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.iter().all(Poly::is_zero))
    }
}

/// `0 <- S/I <- F_0 <- F_1 <- ... <- F_len`, with `maps[j]` the map `F_{j+1} -> F_j`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub nvars: usize,
    pub field: Field,
    pub maps: Vec<GradedMap>,
    /// Set when the requested length exceeded `d + 1` and was reduced.
    pub clamped: bool,
    /// True when the last computed map has a nonzero kernel that was not resolved.
    pub truncated: bool,
}

impl FreeResolution {
    /// Shifts of `F_j`.
    pub fn shifts(&self, j: usize) -> Vec<u32> {
        if j == 0 {
            return vec![0];
        }
        self.maps.get(j - 1).map(|m| m.source_shifts.clone()).unwrap_or_default()
    }

    pub fn rank(&self, j: usize) -> usize {
        self.shifts(j).len()
    }

    /// Ranks of `F_0, F_1, ...` up to the length.
    pub fn ranks(&self) -> Vec<usize> {
        (0..=self.maps.len()).map(|j| self.rank(j)).collect()
    }

    pub fn length(&self) -> usize {
        self.maps.iter().take_while(|m| m.source_rank() > 0).count()
    }

    /// `d_j : F_j -> F_{j-1}` for `j >= 1`.
    pub fn differential(&self, j: usize) -> Option<&GradedMap> {
        if j == 0 {
            None
        } else {
            self.maps.get(j - 1)
        }
    }
}

/// Minimal graded free resolution of `S/I` with at most `length` maps.
pub fn free_resolution(ideal: &HomIdeal, length: usize) -> FreeResolution {
    let nvars = ideal.nvars();
    let field = ideal.field();
    let clamped = length > nvars;
    let length = length.min(nvars);
    let mut maps = Vec::new();
    let gens: Vec<Column> = minimal_generators(
        ideal.groebner().iter().map(|g| vec![g.clone()]).collect(),
        &[0],
        field,
    );
    let mut target = vec![0u32];
    let mut cols = gens;
    let mut truncated = false;
    for step in 0..length {
        let source: Vec<u32> = cols
            .iter()
            .map(|c| column_degree(c, &target).expect("nonzero column"))
            .collect();
        let map = GradedMap {
            source_shifts: source.clone(),
            target_shifts: target.clone(),
            columns: cols,
        };
        let empty = map.source_rank() == 0;
        let next = if empty || step + 1 == length {
            Vec::new()
        } else {
            minimal_generators(syzygies(&map.columns, &target, &source, field), &source, field)
        };
        if step + 1 == length && !empty && length < nvars {
            truncated = !syzygies(&map.columns, &target, &source, field).is_empty();
        }
        maps.push(map);
        if empty {
            break;
        }
        target = source;
        cols = next;
    }
    FreeResolution {
        nvars,
        field,
        maps,
        clamped,
        truncated,
    }
}
