//! The geometric idealizer `R = R(P^d, O(1), σ, Z)` degree by degree.
//!
//! `R_0 = k` and `R_n = (I : I^{σ^n})_n` for `n >= 1`, where `I` is the
//! saturated ideal of `Z`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::components::{verify_decomposition, DeclaredComponent};
use crate::error::{Error, Result};
use crate::poly::{Field, HomIdeal, Matrix, Monomial, Poly, RowSpace, Saturation};
use crate::twist::{pullback, pullback_ideal, twist_multiply, ProjAutomorphism, TwistedElement};

/// A graded component given by a basis in reduced row echelon form with
/// respect to the degrevlex-ordered monomials of its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePiece {
    nvars: usize,
    degree: u32,
    field: Field,
    basis: Vec<Poly>,
}

impl DegreePiece {
    /// Row-reduces a spanning set of degree-`n` forms.
    pub fn from_span(nvars: usize, degree: u32, field: Field, span: &[Poly]) -> DegreePiece {
        let monos = Monomial::all_of_degree(nvars, degree);
        let mut space = RowSpace::new(monos.len(), field);
        for f in span {
            if f.is_zero() {
                continue;
            }
            let v = f.coordinates(&monos, field).expect("form of the stated degree");
            space.insert(&v);
        }
        let basis = space
            .basis()
            .into_iter()
            .map(|row| {
                Poly::from_terms(
                    monos
                        .iter()
                        .zip(row)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(m, c)| (*m, c))
                        .collect(),
                )
            })
            .collect();
        DegreePiece {
            nvars,
            degree,
            field,
            basis,
        }
    }

    pub(crate) fn from_basis_unchecked(nvars: usize, degree: u32, field: Field, basis: Vec<Poly>) -> DegreePiece {
        DegreePiece {
            nvars,
            degree,
            field,
            basis,
        }
    }

    pub fn constants(nvars: usize, field: Field) -> DegreePiece {
        DegreePiece::from_basis_unchecked(nvars, 0, field, vec![Poly::one(field)])
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, f: &Poly) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.homogeneous_degree() != Some(self.degree) {
            return false;
        }
        let mut span = self.basis.clone();
        span.push(f.clone());
        DegreePiece::from_span(self.nvars, self.degree, self.field, &span).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &DegreePiece) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }
}

/// The data `(P^d, σ, Z)` with `I_Z` stored saturated.
#[derive(Debug)]
pub struct IdealizerScene {
    sigma: ProjAutomorphism,
    ideal: HomIdeal,
    components: Option<Vec<DeclaredComponent>>,
    colons: Mutex<HashMap<u32, HomIdeal>>,
}

impl Clone for IdealizerScene {
    fn clone(&self) -> Self {
        IdealizerScene {
            sigma: self.sigma.clone(),
            ideal: self.ideal.clone(),
            components: self.components.clone(),
            colons: Mutex::new(self.colons.lock().expect("colon cache poisoned").clone()),
        }
    }
}

impl IdealizerScene {
    pub fn new(sigma: ProjAutomorphism, ideal: &HomIdeal) -> Result<IdealizerScene> {
        if sigma.nvars() != ideal.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "σ acts on {} coordinates but Z lives in {} variables",
                sigma.nvars(),
                ideal.nvars()
            )));
        }
        let ideal = ideal.saturate()?;
        if ideal.is_unit() {
            return Err(Error::ImproperSubscheme);
        }
        Ok(IdealizerScene {
            sigma,
            ideal,
            components: None,
            colons: Mutex::new(HashMap::new()),
        })
    }

    /// Attaches a declared primary decomposition after verifying it.
    pub fn with_decomposition(mut self, comps: Vec<DeclaredComponent>) -> Result<IdealizerScene> {
        verify_decomposition(&self.ideal, &comps)?;
        self.components = Some(comps);
        Ok(self)
    }

    pub fn sigma(&self) -> &ProjAutomorphism {
        &self.sigma
    }

    /// Saturated ideal of `Z`.
    pub fn ideal(&self) -> &HomIdeal {
        &self.ideal
    }

    pub fn components(&self) -> Option<&[DeclaredComponent]> {
        self.components.as_deref()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn dim(&self) -> usize {
        self.ideal.ambient_dim()
    }

    pub fn field(&self) -> Field {
        self.ideal.field()
    }

    /// The scene for `σ^v` with the same `Z`.
    pub fn veronese(&self, v: i64) -> IdealizerScene {
        IdealizerScene {
            sigma: self.sigma.pow(v),
            ideal: self.ideal.clone(),
            components: self.components.clone(),
            colons: Mutex::new(HashMap::new()),
        }
    }

    /// `(I : I^{σ^n})`, saturated because `I` is.
    pub fn colon(&self, n: u32) -> HomIdeal {
        if let Some(c) = self.colons.lock().expect("colon cache poisoned").get(&n) {
            return c.clone();
        }
        let shifted = pullback_ideal(&self.ideal, &self.sigma, n as i64);
        let c = self.ideal.ideal_quotient(&shifted).with_groebner();
        debug_assert_eq!(c.saturation_flag(), Saturation::Yes);
        self.colons
            .lock()
            .expect("colon cache poisoned")
            .insert(n, c.clone());
        c
    }
}

/// `R_n` as a subspace of `B_n`.
pub fn idealizer_piece(scene: &IdealizerScene, n: u32) -> DegreePiece {
    if n == 0 {
        return DegreePiece::constants(scene.nvars(), scene.field());
    }
    let colon = scene.colon(n);
    DegreePiece::from_span(scene.nvars(), n, scene.field(), &colon.degree_basis(n))
}

/// Degree `m <= horizon` and element `g ∈ I_m` with `x ⋆ g ∉ I`, if any.
pub fn membership_witness(x: &TwistedElement, scene: &IdealizerScene, horizon: u32) -> Option<(u32, Poly)> {
    if x.degree() == 0 || x.poly().is_zero() {
        return None;
    }
    for m in 1..=horizon {
        for g in scene.ideal.degree_basis(m) {
            let ge = TwistedElement::new(m, g.clone()).expect("basis forms are homogeneous");
            let prod = twist_multiply(x, &ge, &scene.sigma);
            if !scene.ideal.contains(prod.poly()) {
                return Some((m, g));
            }
        }
    }
    None
}

/// `x ⋆ I_m ⊆ I_{n+m}` for all `m <= horizon`.
pub fn membership_oracle(x: &TwistedElement, scene: &IdealizerScene, horizon: u32) -> bool {
    membership_witness(x, scene, horizon).is_none()
}

/// All `x ∈ B_n` with `x ⋆ I_m ⊆ I` for every `m <= horizon`, by linear algebra.
pub fn oracle_subspace(scene: &IdealizerScene, n: u32, horizon: u32) -> DegreePiece {
    let nvars = scene.nvars();
    let field = scene.field();
    if n == 0 {
        return DegreePiece::constants(nvars, field);
    }
    let monos = Monomial::all_of_degree(nvars, n);
    let mut rows: Vec<Vec<crate::poly::Scalar>> = Vec::new();
    for m in 1..=horizon {
        let std = scene.ideal.standard_monomials(n + m);
        if std.is_empty() {
            continue;
        }
        for g in scene.ideal.degree_basis(m) {
            let shifted = pullback(&g, &scene.sigma, n as i64);
            let cols: Vec<Vec<crate::poly::Scalar>> = monos
                .iter()
                .map(|u| {
                    let r = scene.ideal.normal_form(&shifted.mul_monomial(u));
                    r.coordinates(&std, field).expect("normal forms are standard")
                })
                .collect();
            for k in 0..std.len() {
                rows.push(cols.iter().map(|c| c[k].clone()).collect());
            }
        }
    }
    let mat = Matrix::from_rows(rows, monos.len(), field);
    let kernel: Vec<Poly> = mat
        .kernel()
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                monos
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(m, c)| (*m, c))
                    .collect(),
            )
        })
        .collect();
    DegreePiece::from_span(nvars, n, field, &kernel)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ColonStatus {
    /// `(I : I^{σ^n}) = I`.
    EqualsI,
    /// `(I : I^{σ^n}) = (1)`: a σ^n-fixed part fills all of `Z`.
    Unit,
    /// Strictly between `I` and `(1)`.
    Larger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub horizon: u32,
    pub table: Vec<(u32, ColonStatus)>,
    /// Least `n0` with `(I : I^{σ^n}) = I` for all `n0 <= n <= horizon`.
    pub n0: Option<u32>,
}

impl Stabilization {
    pub fn degenerate(&self) -> bool {
        self.table.iter().any(|(_, s)| *s == ColonStatus::Unit)
    }
}

pub fn colon_status(scene: &IdealizerScene, n: u32) -> ColonStatus {
    let c = scene.colon(n);
    if c.is_unit() {
        ColonStatus::Unit
    } else if c == *scene.ideal() {
        ColonStatus::EqualsI
    } else {
        ColonStatus::Larger
    }
}

pub fn stabilization_degree(scene: &IdealizerScene, horizon: u32) -> Stabilization {
    let table: Vec<(u32, ColonStatus)> = (1..=horizon).map(|n| (n, colon_status(scene, n))).collect();
    let mut n0 = None;
    for (n, s) in table.iter().rev() {
        if *s != ColonStatus::EqualsI {
            break;
        }
        n0 = Some(*n);
    }
    Stabilization { horizon, table, n0 }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertRow {
    pub n: u32,
    pub dim_b: u64,
    pub dim_i: u64,
    pub dim_r: u64,
    pub stabilized: bool,
}

/// `dim B_n`, `dim I_n`, `dim R_n` for `n = 0..=max`.
pub fn idealizer_hilbert(scene: &IdealizerScene, max: u32) -> Vec<HilbertRow> {
    let nvars = scene.nvars();
    let hs_i = scene.ideal().hilbert_series();
    let hs_b = HomIdeal::zero(nvars, scene.field()).hilbert_series();
    (0..=max)
        .map(|n| {
            let dim_b = hs_b.function(n as i64) as u64;
            let dim_i = dim_b - hs_i.function(n as i64) as u64;
            if n == 0 {
                return HilbertRow {
                    n,
                    dim_b,
                    dim_i,
                    dim_r: 1,
                    stabilized: false,
                };
            }
            let colon = scene.colon(n);
            HilbertRow {
                n,
                dim_b,
                dim_i,
                dim_r: dim_b - colon.hilbert_function(n),
                stabilized: colon == *scene.ideal(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_3_10() -> IdealizerScene {
        let s = ProjAutomorphism::from_integers(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]], Field::Rational).unwrap();
        let i = HomIdeal::parse("x0 + x1, x0^2", 3, Field::Rational).unwrap();
        IdealizerScene::new(s, &i).unwrap()
    }

    fn p1_scene() -> IdealizerScene {
        let s = ProjAutomorphism::from_integers(&[&[1, 1], &[0, 1]], Field::Rational).unwrap();
        let i = HomIdeal::parse("x0", 2, Field::Rational).unwrap();
        IdealizerScene::new(s, &i).unwrap()
    }

    #[test]
    fn degree_zero_is_constants() {
        assert_eq!(idealizer_piece(&example_3_10(), 0).dim(), 1);
    }

    #[test]
    fn non_stabilizing_example() {
        let s = example_3_10();
        let m = HomIdeal::parse("x0, x1", 3, Field::Rational).unwrap();
        for n in 1..=3 {
            assert_eq!(s.colon(n), m);
        }
        let dims: Vec<u64> = idealizer_hilbert(&s, 5).iter().map(|r| r.dim_r).collect();
        assert_eq!(dims, vec![1, 2, 5, 9, 14, 20]);
        assert_eq!(stabilization_degree(&s, 4).n0, None);
    }

    #[test]
    fn p1_point_scene() {
        let s = p1_scene();
        let dims: Vec<u64> = idealizer_hilbert(&s, 4).iter().map(|r| r.dim_r).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4]);
        assert_eq!(stabilization_degree(&s, 5).n0, Some(1));
    }

    #[test]
    fn oracle_rejects_outside_forms() {
        let s = example_3_10();
        let x = TwistedElement::new(2, Poly::monomial(Monomial::var_pow(2, 2), Field::Rational.one())).unwrap();
        let w = membership_witness(&x, &s, 3).unwrap();
        assert!(w.0 <= 2);
        for b in idealizer_piece(&s, 2).basis() {
            let e = TwistedElement::new(2, b.clone()).unwrap();
            assert!(membership_oracle(&e, &s, 4));
        }
    }

    #[test]
    fn identity_sigma_is_degenerate() {
        let s = IdealizerScene::new(
            ProjAutomorphism::identity(3, Field::Rational),
            &HomIdeal::parse("x0, x1", 3, Field::Rational).unwrap(),
        )
        .unwrap();
        let st = stabilization_degree(&s, 3);
        assert!(st.degenerate());
        assert!(idealizer_hilbert(&s, 3).iter().all(|r| r.dim_r == r.dim_b));
    }
}
