//! Homogeneous ideals of `k[x_0..x_d]` and the ideal operations built on Groebner bases.

use std::fmt;
use std::sync::OnceLock;

use super::gb::{groebner, normal_form, ModOrder, Vector};
use super::hilbert::{HilbertSeries, QPoly};
use super::monomial::{Monomial, MonomialOrder, MAX_VARS};
use super::parse::parse_poly_list;
use super::poly::Poly;
use super::scalar::Field;
use crate::error::{Error, Result};

/// Colon iterations allowed before saturation gives up.
pub const SATURATION_CAP: usize = 50;

/// Largest supported ring: `x0..x9`.
pub const MAX_RING_VARS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Saturation {
    Yes,
    No,
    Unknown,
}

/// A homogeneous ideal together with its lazily computed reduced
/// degrevlex Groebner basis.
pub struct HomIdeal {
    nvars: usize,
    field: Field,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
    saturated: Saturation,
}

impl Clone for HomIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        HomIdeal {
            nvars: self.nvars,
            field: self.field,
            gens: self.gens.clone(),
            gb,
            saturated: self.saturated,
        }
    }
}

impl fmt::Debug for HomIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for HomIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Ideal equality (same reduced Groebner basis).
impl PartialEq for HomIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field && self.groebner() == other.groebner()
    }
}

impl HomIdeal {
    /// Validates homogeneity and variable range.
    pub fn new(nvars: usize, field: Field, gens: Vec<Poly>) -> Result<HomIdeal> {
        if nvars == 0 || nvars > MAX_RING_VARS {
            return Err(Error::TooManyVariables(nvars));
        }
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            if g.support_len() > nvars {
                return Err(Error::VariableOutOfRange {
                    var: g.support_len() - 1,
                    nvars,
                });
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(HomIdeal {
            nvars,
            field,
            gens,
            gb: OnceLock::new(),
            saturated: Saturation::Unknown,
        })
    }

    /// Parses a comma-separated generator list.
    pub fn parse(text: &str, nvars: usize, field: Field) -> Result<HomIdeal> {
        HomIdeal::new(nvars, field, parse_poly_list(text, nvars, field)?)
    }

    pub fn zero(nvars: usize, field: Field) -> HomIdeal {
        let mut i = HomIdeal::new(nvars, field, Vec::new()).expect("valid");
        i.saturated = Saturation::Yes;
        i
    }

    pub fn unit(nvars: usize, field: Field) -> HomIdeal {
        HomIdeal::new(nvars, field, vec![Poly::one(field)]).expect("valid")
    }

    /// The irrelevant ideal `(x_0, ..., x_d)`.
    pub fn irrelevant(nvars: usize, field: Field) -> HomIdeal {
        let gens = (0..nvars).map(|i| Poly::var(i, field)).collect();
        HomIdeal::new(nvars, field, gens).expect("valid")
    }

    fn from_basis(nvars: usize, field: Field, gb: Vec<Poly>, saturated: Saturation) -> HomIdeal {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        HomIdeal {
            nvars,
            field,
            gens: gb,
            gb: cell,
            saturated,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Projective dimension `d` of the ambient `P^d`.
    pub fn ambient_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn saturation_flag(&self) -> Saturation {
        self.saturated
    }

    pub(crate) fn with_flag(mut self, s: Saturation) -> HomIdeal {
        self.saturated = s;
        self
    }

    /// Reduced Groebner basis in degrevlex, computed once.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| self.groebner_in(MonomialOrder::DegRevLex))
    }

    /// Reduced Groebner basis for an arbitrary order (not cached).
    pub fn groebner_in(&self, order: MonomialOrder) -> Vec<Poly> {
        let ord = ModOrder::ideal(order);
        let vs: Vec<Vector> = self.gens.iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        groebner(&vs, &ord, self.field)
            .iter()
            .map(|v| v.to_poly())
            .collect()
    }

    /// A copy whose cached basis is populated.
    pub fn with_groebner(self) -> HomIdeal {
        self.groebner();
        self
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let ord = ModOrder::ideal(MonomialOrder::DegRevLex);
        let basis: Vec<Vector> = self.groebner().iter().map(|g| Vector::from_poly(g, 0, &ord)).collect();
        normal_form(&Vector::from_poly(f, 0, &ord), &basis, &ord).to_poly()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &HomIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Leading monomials of the reduced basis.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().iter().filter_map(|g| g.lead_monomial()).collect()
    }

    /// True when the ideal is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.groebner().iter().all(|g| g.len() == 1)
    }

    /// True when the ideal is generated by linear forms (a linear subspace).
    pub fn is_linear(&self) -> bool {
        self.groebner().iter().all(|g| g.homogeneous_degree() == Some(1))
    }

    fn check_compatible(&self, other: &HomIdeal) {
        assert_eq!(self.nvars, other.nvars, "ideals live in different rings");
        assert_eq!(self.field, other.field, "ideals over different fields");
    }

    pub fn sum(&self, other: &HomIdeal) -> HomIdeal {
        self.check_compatible(other);
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        HomIdeal::new(self.nvars, self.field, gens).expect("homogeneous")
    }

    pub fn product(&self, other: &HomIdeal) -> HomIdeal {
        self.check_compatible(other);
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b));
            }
        }
        HomIdeal::new(self.nvars, self.field, gens).expect("homogeneous")
    }

    /// `I ∩ J` by eliminating `t` from `t*I + (1 - t)*J`.
    pub fn intersect(&self, other: &HomIdeal) -> HomIdeal {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return HomIdeal::zero(self.nvars, self.field);
        }
        let t = self.nvars;
        debug_assert!(t < MAX_VARS);
        let tpoly = Poly::var(t, self.field);
        let one_minus_t = Poly::one(self.field).sub(&tpoly);
        let ord = ModOrder::ideal(MonomialOrder::Elimination { mask: 1 << t });
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(Vector::from_poly(&f.mul(&tpoly), 0, &ord));
        }
        for g in &other.gens {
            gens.push(Vector::from_poly(&g.mul(&one_minus_t), 0, &ord));
        }
        let gb = groebner(&gens, &ord, self.field);
        let kept: Vec<Poly> = gb
            .iter()
            .map(|v| v.to_poly())
            .filter(|p| p.terms().iter().all(|(m, _)| m.exp(t) == 0))
            .collect();
        let both_sat = self.saturated == Saturation::Yes && other.saturated == Saturation::Yes;
        let out = HomIdeal::new(self.nvars, self.field, kept).expect("homogeneous");
        let basis = out.groebner().to_vec();
        HomIdeal::from_basis(
            self.nvars,
            self.field,
            basis,
            if both_sat { Saturation::Yes } else { Saturation::Unknown },
        )
    }

    /// `(I : f)` for a single homogeneous form.
    pub fn quotient_by_poly(&self, f: &Poly) -> HomIdeal {
        if f.is_zero() {
            return HomIdeal::unit(self.nvars, self.field);
        }
        let principal = HomIdeal::new(self.nvars, self.field, vec![f.clone()]).expect("homogeneous");
        let inter = self.intersect(&principal);
        let gens: Vec<Poly> = inter
            .groebner()
            .iter()
            .map(|g| g.div_exact(f).expect("I ∩ (f) lies in (f)"))
            .collect();
        let out = HomIdeal::new(self.nvars, self.field, gens).expect("homogeneous");
        let basis = out.groebner().to_vec();
        HomIdeal::from_basis(self.nvars, self.field, basis, Saturation::Unknown)
    }

    /// The ideal quotient `(I : J) = { f : f J ⊆ I }`.
    pub fn ideal_quotient(&self, j: &HomIdeal) -> HomIdeal {
        self.check_compatible(j);
        let mut acc = HomIdeal::unit(self.nvars, self.field);
        for g in j.groebner() {
            if self.contains(g) {
                continue;
            }
            let q = self.quotient_by_poly(g);
            acc = if acc.is_unit() { q } else { acc.intersect(&q) };
        }
        let sat = if self.saturated == Saturation::Yes {
            Saturation::Yes
        } else {
            Saturation::Unknown
        };
        let basis = acc.groebner().to_vec();
        HomIdeal::from_basis(self.nvars, self.field, basis, sat)
    }

    /// `(I : J^∞)`, iterating colons until the ideal stops growing.
    pub fn saturate_by(&self, j: &HomIdeal) -> Result<HomIdeal> {
        let mut cur = self.clone();
        for _ in 0..SATURATION_CAP {
            let next = cur.ideal_quotient(j);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
        Err(Error::SaturationCap(SATURATION_CAP))
    }

    /// Saturation with respect to the irrelevant ideal.
    pub fn saturate(&self) -> Result<HomIdeal> {
        if self.saturated == Saturation::Yes {
            return Ok(self.clone());
        }
        let m = HomIdeal::irrelevant(self.nvars, self.field);
        Ok(self.saturate_by(&m)?.with_flag(Saturation::Yes))
    }

    /// Checks `(I : m) == I`.
    pub fn is_saturated(&self) -> bool {
        match self.saturated {
            Saturation::Yes => true,
            Saturation::No => false,
            Saturation::Unknown => {
                let m = HomIdeal::irrelevant(self.nvars, self.field);
                self.ideal_quotient(&m) == *self
            }
        }
    }

    /// Hilbert series of `S / I`.
    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(&self.leading_monomials(), self.nvars)
    }

    /// `dim_k (S/I)_n`.
    pub fn hilbert_function(&self, n: u32) -> u64 {
        self.hilbert_series().function(n as i64) as u64
    }

    pub fn hilbert_polynomial(&self) -> QPoly {
        self.hilbert_series().polynomial()
    }

    /// `d - deg(HP)`; the empty scheme has codimension `d + 1`.
    pub fn codimension(&self) -> usize {
        match self.hilbert_polynomial().degree() {
            Some(k) => self.ambient_dim() - k,
            None => self.nvars,
        }
    }

    /// Canonical basis `{ m - NF(m) }` of the degree-`n` part, one element
    /// per leading monomial of degree `n`.
    pub fn degree_basis(&self, n: u32) -> Vec<Poly> {
        let leads = self.leading_monomials();
        Monomial::all_of_degree(self.nvars, n)
            .into_iter()
            .filter(|m| leads.iter().any(|l| l.divides(m)))
            .map(|m| {
                let p = Poly::monomial(m, self.field.one());
                p.sub(&self.normal_form(&p))
            })
            .collect()
    }

    /// Standard monomials of degree `n` (a basis of `(S/I)_n`).
    pub fn standard_monomials(&self, n: u32) -> Vec<Monomial> {
        let leads = self.leading_monomials();
        Monomial::all_of_degree(self.nvars, n)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// Applies `f` to every generator.
    pub fn map_gens(&self, f: impl Fn(&Poly) -> Poly) -> HomIdeal {
        let gens = self.gens.iter().map(f).collect();
        HomIdeal::new(self.nvars, self.field, gens).expect("maps preserve homogeneity")
    }
}
