//! `Tor_j^S(S/I, S/J)` from a resolution of `S/I` tensored with `S/J`.

use serde::{Deserialize, Serialize};

use super::module::{quotient_series, submodule_gb, syzygies, Column, GradedModulePresentation};
use super::resolution::{free_resolution, FreeResolution};
use crate::error::{Error, Result};
use crate::poly::{HilbertSeries, HomIdeal, Poly, QPoly};

/// One Tor module with its graded dimensions.
#[derive(Clone, Debug)]
pub struct TorModule {
    pub j: usize,
    pub presentation: GradedModulePresentation,
    pub series: HilbertSeries,
    /// `dim Tor_j` in degrees `0..=deg_bound`.
    pub table: Vec<u64>,
    pub hilbert_polynomial: QPoly,
}

impl TorModule {
    /// The sheafified Tor vanishes exactly when the Hilbert polynomial does.
    pub fn is_sheaf_zero(&self) -> bool {
        self.hilbert_polynomial.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.series.numerator().is_empty()
    }

    pub fn dim(&self, degree: u32) -> u64 {
        self.series.function(degree as i64) as u64
    }
}

/// The pieces `K_j ⊇ B_j` of `F_j` whose quotient is `Tor_j`.
struct Cycles {
    shifts: Vec<u32>,
    cycles: Vec<Column>,
    boundaries: Vec<Column>,
}

fn cycles_and_boundaries(res: &FreeResolution, jdeal: &HomIdeal, j: usize) -> Cycles {
    let field = res.field;
    let shifts = res.shifts(j);
    let r = shifts.len();
    let jgens: Vec<&Poly> = jdeal.groebner().iter().collect();

    // B_j = im d_{j+1} + J F_j
    let mut boundaries: Vec<Column> = res
        .differential(j + 1)
        .map(|d| d.columns.clone())
        .unwrap_or_default();
    for k in 0..r {
        for g in &jgens {
            let mut c = vec![Poly::zero(); r];
            c[k] = (*g).clone();
            boundaries.push(c);
        }
    }

    // K_j = { v : d_j v ∈ J F_{j-1} }
    let cycles = match res.differential(j) {
        None => (0..r)
            .map(|k| {
                let mut c = vec![Poly::zero(); r];
                c[k] = Poly::one(field);
                c
            })
            .collect(),
        Some(d) => {
            let tshifts = &d.target_shifts;
            let mut cols = d.columns.clone();
            let mut src = d.source_shifts.clone();
            for (k, &t) in tshifts.iter().enumerate() {
                for g in &jgens {
                    let mut c = vec![Poly::zero(); tshifts.len()];
                    c[k] = (*g).clone();
                    src.push(t + g.homogeneous_degree().unwrap_or(0));
                    cols.push(c);
                }
            }
            syzygies(&cols, tshifts, &src, field)
                .into_iter()
                .map(|mut v| {
                    v.truncate(r);
                    v
                })
                .filter(|v| v.iter().any(|p| !p.is_zero()))
                .collect()
        }
    };
    Cycles {
        shifts,
        cycles,
        boundaries,
    }
}

fn tor_series(res: &FreeResolution, jdeal: &HomIdeal, j: usize) -> (HilbertSeries, Cycles) {
    let nvars = res.nvars;
    if res.rank(j) == 0 {
        let c = Cycles {
            shifts: Vec::new(),
            cycles: Vec::new(),
            boundaries: Vec::new(),
        };
        return (HilbertSeries::zero(nvars), c);
    }
    let c = cycles_and_boundaries(res, jdeal, j);
    let bgb = submodule_gb(&c.boundaries, &c.shifts, res.field);
    let kgb = submodule_gb(&c.cycles, &c.shifts, res.field);
    let hs = quotient_series(&bgb, &c.shifts, nvars).sub(&quotient_series(&kgb, &c.shifts, nvars));
    (hs, c)
}

/// Tor module computed against an existing resolution of `S/I`.
pub fn tor_from_resolution(res: &FreeResolution, jdeal: &HomIdeal, j: usize, deg_bound: u32) -> TorModule {
    let (series, c) = tor_series(res, jdeal, j);
    let presentation = if series.numerator().is_empty() {
        GradedModulePresentation::zero(res.nvars, res.field)
    } else {
        GradedModulePresentation::subquotient(&c.cycles, &c.boundaries, &c.shifts, res.nvars, res.field)
    };
    let table = (0..=deg_bound).map(|n| series.function(n as i64) as u64).collect();
    let hilbert_polynomial = series.polynomial();
    TorModule {
        j,
        presentation,
        series,
        table,
        hilbert_polynomial,
    }
}

/// `Tor_j^S(S/I, S/J)` with graded dimensions up to `deg_bound`.
pub fn graded_tor(i: &HomIdeal, jdeal: &HomIdeal, j: usize, deg_bound: u32) -> TorModule {
    let res = free_resolution(i, (j + 1).min(i.nvars()));
    tor_from_resolution(&res, jdeal, j, deg_bound)
}

/// Hilbert series of every `Tor_j`, `j = 0..=d+1`.
pub fn tor_series_all(i: &HomIdeal, jdeal: &HomIdeal) -> Vec<HilbertSeries> {
    let res = free_resolution(i, i.nvars());
    (0..=i.nvars()).map(|j| tor_series(&res, jdeal, j).0).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transversality {
    Transverse,
    /// The least `j >= 1` whose Tor sheaf is nonzero.
    Fails { j: usize },
}

impl Transversality {
    pub fn holds(&self) -> bool {
        matches!(self, Transversality::Transverse)
    }
}

/// Decides whether all higher Tor sheaves of `O_{V(I)}` and `O_{V(J)}` vanish.
pub fn homologically_transverse(i: &HomIdeal, jdeal: &HomIdeal) -> Result<Transversality> {
    let i = i.saturate()?;
    let jdeal = jdeal.saturate()?;
    // Resolve the side with fewer generators.
    let (a, b) = if i.groebner().len() <= jdeal.groebner().len() {
        (&i, &jdeal)
    } else {
        (&jdeal, &i)
    };
    let res = free_resolution(a, a.nvars());
    for j in 1..=a.nvars() {
        if res.rank(j) == 0 {
            break;
        }
        if !tor_series(&res, b, j).0.polynomial().is_zero() {
            return Ok(Transversality::Fails { j });
        }
    }
    Ok(Transversality::Transverse)
}

/// `Σ_j (-1)^j` of the constant Hilbert polynomials of `Tor_j` for a finite intersection.
pub fn serre_multiplicity_total(i: &HomIdeal, jdeal: &HomIdeal) -> Result<i64> {
    let i = i.saturate()?;
    let jdeal = jdeal.saturate()?;
    let hp = i.sum(&jdeal).hilbert_polynomial();
    if !hp.is_constant() {
        return Err(Error::ImproperIntersection);
    }
    let res = free_resolution(&i, i.nvars());
    let mut total = 0i64;
    for j in 0..=i.nvars() {
        if res.rank(j) == 0 {
            break;
        }
        let p = tor_series(&res, &jdeal, j).0.polynomial();
        let v = p.constant_value().ok_or(Error::ImproperIntersection)?;
        total += if j % 2 == 0 { v } else { -v };
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    fn id(s: &str, n: usize) -> HomIdeal {
        HomIdeal::parse(s, n, Field::Rational).unwrap()
    }

    #[test]
    fn disjoint_points_on_p1() {
        let a = id("x0", 2);
        let b = id("x1", 2);
        assert!(graded_tor(&a, &b, 0, 4).is_sheaf_zero());
        assert!(graded_tor(&a, &b, 1, 4).is_sheaf_zero());
    }

    #[test]
    fn point_on_line() {
        let pt = id("x0, x1", 3);
        let line = id("x0", 3);
        let t = graded_tor(&pt, &line, 1, 5);
        assert!(!t.is_sheaf_zero());
        assert_eq!(t.presentation.hilbert_series(), t.series);
        assert_eq!(
            homologically_transverse(&pt, &line).unwrap(),
            Transversality::Fails { j: 1 }
        );
    }

    #[test]
    fn tangent_line_and_conic() {
        let line = id("x1", 3);
        let conic = id("x0*x2 - x1^2", 3);
        assert!(homologically_transverse(&line, &conic).unwrap().holds());
        assert_eq!(serre_multiplicity_total(&line, &conic).unwrap(), 2);
    }

    #[test]
    fn ambient_is_flat() {
        let z = id("x0, x1", 3);
        assert!(homologically_transverse(&z, &HomIdeal::zero(3, Field::Rational))
            .unwrap()
            .holds());
    }

    #[test]
    fn bezout_for_lines_and_conics() {
        assert_eq!(serre_multiplicity_total(&id("x0", 3), &id("x1", 3)).unwrap(), 1);
        let c1 = id("x0^2 - x1*x2", 3);
        let c2 = id("x1^2 - x0*x2 + x2^2", 3);
        assert_eq!(serre_multiplicity_total(&c1, &c2).unwrap(), 4);
        assert!(matches!(
            serre_multiplicity_total(&id("x0", 3), &id("x0*x1", 3)),
            Err(Error::ImproperIntersection)
        ));
    }
}
