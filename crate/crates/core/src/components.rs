//! Primary components of `I_Z` and their σ-orders.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idealizer::IdealizerScene;
use crate::poly::{HomIdeal, Monomial, Poly};
use crate::twist::pullback_ideal;

/// A primary component together with its (declared or computed) radical.
#[derive(Clone, Debug, PartialEq)]
pub struct DeclaredComponent {
    pub ideal: HomIdeal,
    pub prime: Option<HomIdeal>,
}

/// Exponent bound used when checking `rad(Q) ⊇ P` through powers.
pub const RADICAL_POWER_BOUND: u32 = 8;

/// Checks that the components intersect to `ideal` and that every declared
/// prime lies between the component and its radical.
pub fn verify_decomposition(ideal: &HomIdeal, comps: &[DeclaredComponent]) -> Result<()> {
    if comps.is_empty() {
        return Err(Error::BadComponent("empty decomposition".into()));
    }
    let mut acc = comps[0].ideal.clone();
    for c in &comps[1..] {
        acc = acc.intersect(&c.ideal);
    }
    let inter = acc.saturate()?;
    if inter != *ideal {
        let a = inter.hilbert_series();
        let b = ideal.hilbert_series();
        let bound = 4 * (a.numerator().len() + b.numerator().len()) as u32 + 8;
        let degree = (0..=bound)
            .find(|&n| a.function(n as i64) != b.function(n as i64))
            .unwrap_or_else(|| {
                ideal
                    .gens()
                    .iter()
                    .chain(inter.gens())
                    .filter(|g| !ideal.contains(g) || !inter.contains(g))
                    .filter_map(Poly::homogeneous_degree)
                    .min()
                    .unwrap_or(0)
            });
        return Err(Error::DecompositionMismatch { degree });
    }
    for c in comps {
        if !c.ideal.contains_ideal(ideal) {
            return Err(Error::BadComponent(format!("{} does not contain I_Z", c.ideal)));
        }
        if let Some(p) = &c.prime {
            if !p.contains_ideal(&c.ideal) {
                return Err(Error::BadComponent(format!("{p} does not contain {}", c.ideal)));
            }
            for g in p.gens() {
                let ok = (1..=RADICAL_POWER_BOUND).any(|k| c.ideal.contains(&g.pow(k, p.field())));
                if !ok {
                    return Err(Error::BadComponent(format!(
                        "no power of {g} up to {RADICAL_POWER_BOUND} lies in {}",
                        c.ideal
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Irredundant primary decomposition of a monomial ideal.
pub fn monomial_primary_decomposition(ideal: &HomIdeal) -> Vec<DeclaredComponent> {
    let nvars = ideal.nvars();
    let field = ideal.field();
    let gens = ideal.leading_monomials();
    let mut irreducible: Vec<Vec<Monomial>> = Vec::new();
    split_irreducible(gens, &mut irreducible);
    // Drop components containing another one.
    let contains = |big: &[Monomial], small: &[Monomial]| small.iter().all(|s| big.iter().any(|b| b.divides(s)));
    let mut kept: Vec<Vec<Monomial>> = Vec::new();
    for (i, c) in irreducible.iter().enumerate() {
        let redundant = irreducible.iter().enumerate().any(|(j, d)| {
            j != i && contains(c, d) && (!contains(d, c) || j < i)
        });
        if !redundant {
            kept.push(c.clone());
        }
    }
    // Group by radical.
    let support = |c: &[Monomial]| -> u16 {
        c.iter()
            .map(|m| 1u16 << m.pure_power_var().expect("irreducible"))
            .fold(0, |a, b| a | b)
    };
    let mut groups: Vec<(u16, Vec<Vec<Monomial>>)> = Vec::new();
    for c in kept {
        let s = support(&c);
        match groups.iter_mut().find(|g| g.0 == s) {
            Some(g) => g.1.push(c),
            None => groups.push((s, vec![c])),
        }
    }
    groups.sort_by_key(|g| (std::cmp::Reverse(g.0.count_ones()), g.0));
    let to_ideal = |ms: &[Monomial]| {
        HomIdeal::new(nvars, field, ms.iter().map(|m| Poly::monomial(*m, field.one())).collect())
            .expect("monomials are homogeneous")
    };
    groups
        .into_iter()
        .map(|(s, cs)| {
            let mut q = to_ideal(&cs[0]);
            for c in &cs[1..] {
                q = q.intersect(&to_ideal(c));
            }
            let vars: Vec<Monomial> = (0..nvars).filter(|i| s & (1 << i) != 0).map(Monomial::var).collect();
            DeclaredComponent {
                ideal: q,
                prime: Some(to_ideal(&vars)),
            }
        })
        .collect()
}

fn split_irreducible(gens: Vec<Monomial>, out: &mut Vec<Vec<Monomial>>) {
    let mut gens = gens;
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut minimal: Vec<Monomial> = Vec::new();
    for g in gens {
        if !minimal.iter().any(|h| h.divides(&g)) {
            minimal.push(g);
        }
    }
    match minimal.iter().find(|m| m.pure_power_var().is_none() && !m.is_one()) {
        None => out.push(minimal),
        Some(m) => {
            let i = (0..crate::poly::monomial::MAX_VARS).find(|&i| m.exp(i) > 0).expect("nonconstant");
            let u = Monomial::var_pow(i, m.exp(i));
            let v = m.without(i);
            for extra in [u, v] {
                let mut g = minimal.clone();
                g.push(extra);
                split_irreducible(g, out);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaOrder {
    /// Least `k <= bound` with `P^{σ^k} = P`.
    Period(u32),
    ExceedsBound(u32),
}

impl SigmaOrder {
    pub fn is_finite(&self) -> bool {
        matches!(self, SigmaOrder::Period(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecompositionSource {
    Monomial,
    Linear,
    Declared,
}

#[derive(Clone, Debug)]
pub struct ComponentInfo {
    pub ideal: HomIdeal,
    pub prime: HomIdeal,
    pub codimension: usize,
    pub order: SigmaOrder,
}

#[derive(Clone, Debug)]
pub struct ComponentReport {
    pub source: DecompositionSource,
    pub components: Vec<ComponentInfo>,
    /// Intersection of the components whose primes have finite σ-order.
    pub fixed_part: Option<HomIdeal>,
    /// Intersection of the remaining components (defines `W`).
    pub moving_part: Option<HomIdeal>,
    /// Least `n <= bound` with `J^{σ^n} = J` for the fixed part.
    pub fixed_part_period: Option<u32>,
    pub order_bound: u32,
}

impl ComponentReport {
    /// `W = X`: there are no components of infinite order.
    pub fn w_is_ambient(&self) -> bool {
        self.moving_part.is_none()
    }

    /// Every component has codimension 1 (no embedded or higher-codimension parts).
    pub fn pure_codim_one(&self) -> bool {
        self.components.iter().all(|c| c.codimension == 1)
    }
}

/// The decomposition used for a scene: declared, monomial, or a single linear prime.
pub fn scene_decomposition(scene: &IdealizerScene) -> Result<(DecompositionSource, Vec<DeclaredComponent>)> {
    if let Some(c) = scene.components() {
        return Ok((DecompositionSource::Declared, c.to_vec()));
    }
    let ideal = scene.ideal();
    if ideal.is_monomial() {
        return Ok((DecompositionSource::Monomial, monomial_primary_decomposition(ideal)));
    }
    if ideal.is_linear() {
        let c = DeclaredComponent {
            ideal: ideal.clone(),
            prime: Some(ideal.clone()),
        };
        return Ok((DecompositionSource::Linear, vec![c]));
    }
    Err(Error::BadComponent(
        "I_Z is neither monomial nor linear; declare its primary components".into(),
    ))
}

/// Least `k <= bound` with `P^{σ^k} = P`.
pub fn sigma_order(ideal: &HomIdeal, scene: &IdealizerScene, bound: u32) -> SigmaOrder {
    (1..=bound)
        .find(|&k| pullback_ideal(ideal, scene.sigma(), k as i64) == *ideal)
        .map(SigmaOrder::Period)
        .unwrap_or(SigmaOrder::ExceedsBound(bound))
}

pub fn component_analysis(scene: &IdealizerScene, order_bound: u32) -> Result<ComponentReport> {
    let (source, comps) = scene_decomposition(scene)?;
    let mut components = Vec::with_capacity(comps.len());
    for c in comps {
        let prime = match c.prime {
            Some(p) => p,
            None if c.ideal.is_linear() => c.ideal.clone(),
            None => {
                return Err(Error::BadComponent(format!(
                    "component {} needs a declared prime",
                    c.ideal
                )))
            }
        };
        let order = sigma_order(&prime, scene, order_bound);
        components.push(ComponentInfo {
            codimension: prime.codimension(),
            ideal: c.ideal,
            prime,
            order,
        });
    }
    let meet = |parts: Vec<&HomIdeal>| -> Option<HomIdeal> {
        let mut it = parts.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, q| acc.intersect(q)))
    };
    let fixed_part = meet(components.iter().filter(|c| c.order.is_finite()).map(|c| &c.ideal).collect());
    let moving_part = meet(components.iter().filter(|c| !c.order.is_finite()).map(|c| &c.ideal).collect());
    let fixed_part_period = match &fixed_part {
        None => Some(1),
        Some(j) => (1..=order_bound).find(|&k| pullback_ideal(j, scene.sigma(), k as i64) == *j),
    };
    Ok(ComponentReport {
        source,
        components,
        fixed_part,
        moving_part,
        fixed_part_period,
        order_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;
    use crate::twist::ProjAutomorphism;

    fn id(s: &str, n: usize) -> HomIdeal {
        HomIdeal::parse(s, n, Field::Rational).unwrap()
    }

    fn diag123() -> ProjAutomorphism {
        ProjAutomorphism::from_integers(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 3]], Field::Rational).unwrap()
    }

    #[test]
    fn monomial_decomposition_examples() {
        let d = monomial_primary_decomposition(&id("x0*x1", 3));
        assert_eq!(d.len(), 2);
        let d = monomial_primary_decomposition(&id("x0^2, x0*x1", 3));
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].prime.as_ref().unwrap(), &id("x0, x1", 3));
        assert_eq!(d[0].ideal, id("x0^2, x1", 3));
        assert_eq!(d[1].ideal, id("x0", 3));
        verify_decomposition(&id("x0^2, x0*x1", 3), &d).unwrap();
    }

    #[test]
    fn two_fixed_lines() {
        let scene = IdealizerScene::new(diag123(), &id("x0*x1", 3)).unwrap();
        let r = component_analysis(&scene, 6).unwrap();
        assert_eq!(r.components.len(), 2);
        assert!(r.components.iter().all(|c| c.codimension == 1 && c.order == SigmaOrder::Period(1)));
        assert!(r.w_is_ambient());
        assert_eq!(r.fixed_part_period, Some(1));
    }

    #[test]
    fn moving_point() {
        let scene = IdealizerScene::new(diag123(), &id("x0 - x2, x1 - x2", 3)).unwrap();
        let r = component_analysis(&scene, 10).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].codimension, 2);
        assert_eq!(r.components[0].order, SigmaOrder::ExceedsBound(10));
    }

    #[test]
    fn period_two_line() {
        let swap = ProjAutomorphism::from_integers(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], Field::Rational).unwrap();
        let scene = IdealizerScene::new(swap, &id("x0 - x2", 3)).unwrap();
        let r = component_analysis(&scene, 10).unwrap();
        assert_eq!(r.components[0].order, SigmaOrder::Period(2));
    }

    #[test]
    fn mismatched_declaration() {
        let z = id("x0*x1", 3);
        let bad = vec![DeclaredComponent {
            ideal: id("x0", 3),
            prime: None,
        }];
        assert!(matches!(
            verify_decomposition(&z, &bad),
            Err(Error::DecompositionMismatch { .. })
        ));
    }
}
