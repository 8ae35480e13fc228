//! Graded submodules of free modules `(+)_k S(-a_k)` and their quotients.

use crate::poly::gb::{groebner, normal_form, ModOrder, Vector};
use crate::poly::{Field, HilbertSeries, Monomial, Poly};

/// Column vector in a free module of known rank.
pub type Column = Vec<Poly>;

/// Degree of a homogeneous column in the grading given by `shifts`.
pub fn column_degree(col: &[Poly], shifts: &[u32]) -> Option<u32> {
    col.iter()
        .zip(shifts)
        .find_map(|(p, s)| p.homogeneous_degree().map(|d| d + s))
}

pub(crate) fn to_vector(col: &[Poly], ord: &ModOrder) -> Vector {
    Vector::from_polys(col, ord)
}

/// Reduced Groebner basis of the submodule spanned by `gens`.
pub fn submodule_gb(gens: &[Column], shifts: &[u32], field: Field) -> Vec<Vector> {
    let ord = ModOrder::module(shifts.to_vec());
    let vs: Vec<Vector> = gens
        .iter()
        .map(|c| to_vector(c, &ord))
        .filter(|v| !v.is_zero())
        .collect();
    groebner(&vs, &ord, field)
}

/// Hilbert series of `F / N` where `gb` is a Groebner basis of `N`.
pub fn quotient_series(gb: &[Vector], shifts: &[u32], nvars: usize) -> HilbertSeries {
    let mut comps: Vec<(u32, Vec<Monomial>)> = shifts.iter().map(|&s| (s, Vec::new())).collect();
    for v in gb {
        if let Some(t) = v.lead() {
            comps[t.comp as usize].1.push(t.mono);
        }
    }
    HilbertSeries::of_monomial_module(&comps, nvars)
}

/// Generators of the syzygy module of `cols`, living in `(+)_i S(-source_i)`.
pub fn syzygies(cols: &[Column], target_shifts: &[u32], source_shifts: &[u32], field: Field) -> Vec<Column> {
    let r = target_shifts.len();
    let m = cols.len();
    let mut shifts = target_shifts.to_vec();
    shifts.extend_from_slice(source_shifts);
    let ord = ModOrder {
        elim: Some(r as u32),
        ..ModOrder::module(shifts)
    };
    let gens: Vec<Vector> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut entries = c.clone();
            entries.resize(r + m, Poly::zero());
            entries[r + i] = Poly::one(field);
            to_vector(&entries, &ord)
        })
        .collect();
    groebner(&gens, &ord, field)
        .into_iter()
        .filter(|v| v.lead().is_some_and(|t| t.comp as usize >= r))
        .map(|v| v.to_polys(r + m).split_off(r))
        .collect()
}

/// A minimal generating subset (homogeneous input), sorted by degree.
pub fn minimal_generators(gens: Vec<Column>, shifts: &[u32], field: Field) -> Vec<Column> {
    let ord = ModOrder::module(shifts.to_vec());
    let mut gens: Vec<Column> = gens
        .into_iter()
        .filter(|c| c.iter().any(|p| !p.is_zero()))
        .collect();
    gens.sort_by_key(|c| column_degree(c, shifts));
    let mut kept: Vec<Column> = Vec::new();
    let mut basis: Vec<Vector> = Vec::new();
    for g in gens {
        let v = to_vector(&g, &ord);
        if !basis.is_empty() && normal_form(&v, &basis, &ord).is_zero() {
            continue;
        }
        kept.push(g);
        basis = submodule_gb(&kept, shifts, field);
    }
    kept
}

/// Normal form of a column modulo a Groebner basis.
pub fn reduce_column(col: &[Poly], gb: &[Vector], shifts: &[u32]) -> Column {
    let ord = ModOrder::module(shifts.to_vec());
    normal_form(&to_vector(col, &ord), gb, &ord).to_polys(shifts.len())
}

/// Finitely presented graded module: cokernel of `relations` in `(+)_k S(-shifts_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModulePresentation {
    pub nvars: usize,
    pub field: Field,
    pub shifts: Vec<u32>,
    pub relations: Vec<Column>,
}

impl GradedModulePresentation {
    pub fn zero(nvars: usize, field: Field) -> GradedModulePresentation {
        GradedModulePresentation {
            nvars,
            field,
            shifts: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Presents the subquotient `N / D` of `F = (+)_k S(-shifts_k)`, where
    /// `D ⊆ N` are spanned by `num` and `den`.
    pub fn subquotient(
        num: &[Column],
        den: &[Column],
        shifts: &[u32],
        nvars: usize,
        field: Field,
    ) -> GradedModulePresentation {
        let dgb = submodule_gb(den, shifts, field);
        let ord = ModOrder::module(shifts.to_vec());
        let cover: Vec<Column> = num
            .iter()
            .filter(|c| !normal_form(&to_vector(c, &ord), &dgb, &ord).is_zero())
            .cloned()
            .collect();
        if cover.is_empty() {
            return GradedModulePresentation::zero(nvars, field);
        }
        let cover_shifts: Vec<u32> = cover
            .iter()
            .map(|c| column_degree(c, shifts).expect("nonzero column"))
            .collect();
        let mut cols = cover.clone();
        let mut src = cover_shifts.clone();
        for d in den {
            if let Some(deg) = column_degree(d, shifts) {
                cols.push(d.clone());
                src.push(deg);
            }
        }
        let s = cover.len();
        let relations: Vec<Column> = syzygies(&cols, shifts, &src, field)
            .into_iter()
            .map(|mut v| {
                v.truncate(s);
                v
            })
            .filter(|v| v.iter().any(|p| !p.is_zero()))
            .collect();
        let relations = minimal_generators(relations, &cover_shifts, field);
        GradedModulePresentation {
            nvars,
            field,
            shifts: cover_shifts,
            relations,
        }
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        if self.shifts.is_empty() {
            return HilbertSeries::zero(self.nvars);
        }
        let gb = submodule_gb(&self.relations, &self.shifts, self.field);
        quotient_series(&gb, &self.shifts, self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, 3, Field::Rational).unwrap()
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let cols = vec![vec![p("x0")], vec![p("x1")]];
        let syz = syzygies(&cols, &[0], &[1, 1], Field::Rational);
        let syz = minimal_generators(syz, &[1, 1], Field::Rational);
        assert_eq!(syz.len(), 1);
        assert_eq!(column_degree(&syz[0], &[1, 1]), Some(2));
    }

    #[test]
    fn redundant_generators_dropped() {
        let gens = vec![vec![p("x0")], vec![p("x0*x1")], vec![p("x1")]];
        let m = minimal_generators(gens, &[0], Field::Rational);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn subquotient_series() {
        // (x0) / (x0^2) inside S: a copy of S/(x0) shifted by one.
        let num = vec![vec![p("x0")]];
        let den = vec![vec![p("x0^2")]];
        let pres = GradedModulePresentation::subquotient(&num, &den, &[0], 3, Field::Rational);
        let hs = pres.hilbert_series();
        assert_eq!(hs.function(0), 0);
        assert_eq!(hs.function(1), 1);
        assert_eq!(hs.function(3), 3);
    }
}
