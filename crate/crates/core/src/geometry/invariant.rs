//! σ-invariant unions of coordinate subspaces and critical-transversality
//! certificates for diagonal σ.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::eigen::multiplicative_independence;
use crate::error::{Error, Result};
use crate::homology::{homologically_transverse, Transversality};
use crate::poly::{HomIdeal, Poly};
use crate::twist::ProjAutomorphism;

/// Largest `d` for which the invariant family is enumerated.
pub const MAX_CERTIFIED_DIM: usize = 3;

/// Checks that the closure of `⟨σ⟩` is the full diagonal torus: σ diagonal
/// with distinct eigenvalues whose ratios are multiplicatively independent.
pub fn torus_gate(sigma: &ProjAutomorphism) -> Result<()> {
    let Some(diag) = sigma.diagonal_entries() else {
        return Err(Error::InvariantFamilyNotClassified("σ is not diagonal".into()));
    };
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            if diag[i] == diag[j] {
                return Err(Error::InvariantFamilyNotClassified(format!(
                    "eigenvalues {i} and {j} coincide"
                )));
            }
        }
    }
    let ratios: Vec<BigRational> = diag[1..].iter().map(|l| l / &diag[0]).collect();
    if ratios.is_empty() {
        return Ok(());
    }
    match multiplicative_independence(&ratios)? {
        super::eigen::Multiplicative::Independent { .. } => Ok(()),
        super::eigen::Multiplicative::Relation(w) => {
            let w: Vec<String> = w.iter().map(|a| a.to_string()).collect();
            Err(Error::InvariantFamilyNotClassified(format!(
                "eigenvalue ratios satisfy the relation with exponents ({})",
                w.join(", ")
            )))
        }
    }
}

/// Supports `S` of the proper coordinate subspaces `V(x_i : i ∈ S)`,
/// points first, then lexicographic.
fn coordinate_supports(nvars: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << nvars) - 1)
        .map(|mask| (0..nvars).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

fn contains_subspace(big: &[usize], small: &[usize]) -> bool {
    // V(big) ⊆ V(small) iff small ⊆ big.
    small.iter().all(|i| big.contains(i))
}

/// Antichains of coordinate subspaces, by number of members, then lexicographic.
fn antichains(supports: &[Vec<usize>], max_union: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..supports.len()).map(|i| vec![i]).collect();
    for _ in 0..max_union {
        if frontier.is_empty() {
            break;
        }
        out.extend(frontier.iter().cloned());
        let mut next = Vec::new();
        for chain in &frontier {
            let last = *chain.last().expect("nonempty");
            for k in last + 1..supports.len() {
                let comparable = chain.iter().any(|&i| {
                    contains_subspace(&supports[i], &supports[k]) || contains_subspace(&supports[k], &supports[i])
                });
                if !comparable {
                    let mut c = chain.clone();
                    c.push(k);
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Ideals of all unions of at most `max_union` proper coordinate subspaces.
pub fn invariant_coordinate_subschemes(sigma: &ProjAutomorphism, max_union: Option<usize>) -> Result<Vec<HomIdeal>> {
    torus_gate(sigma)?;
    let nvars = sigma.nvars();
    let field = sigma.field();
    let supports = coordinate_supports(nvars);
    let limit = max_union.unwrap_or(supports.len());
    let members: Vec<HomIdeal> = supports
        .iter()
        .map(|s| {
            let gens = s.iter().map(|&i| Poly::var(i, field)).collect();
            HomIdeal::new(nvars, field, gens).expect("coordinate ideal")
        })
        .collect();
    let mut out: Vec<HomIdeal> = Vec::new();
    for chain in antichains(&supports, limit) {
        let mut ideal = members[chain[0]].clone();
        for &k in &chain[1..] {
            ideal = ideal.intersect(&members[k]);
        }
        if !out.contains(&ideal) {
            out.push(ideal);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CtVerdict {
    Certified,
    /// `witness` is the first invariant union failing homological transversality.
    Refuted { witness: String, j: usize },
    Inconclusive { reason: String },
}

#[derive(Clone, Debug)]
pub struct CtCertificate {
    pub verdict: CtVerdict,
    pub witness: Option<HomIdeal>,
    /// Invariant unions checked, with the outcome for each.
    pub checked: Vec<(HomIdeal, Transversality)>,
    /// Hypotheses under which a certified verdict is asserted.
    pub hypotheses: String,
}

impl CtCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == CtVerdict::Certified
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self.verdict, CtVerdict::Refuted { .. })
    }
}

fn inconclusive(reason: impl Into<String>, hypotheses: &str) -> CtCertificate {
    CtCertificate {
        verdict: CtVerdict::Inconclusive { reason: reason.into() },
        witness: None,
        checked: Vec::new(),
        hypotheses: hypotheses.into(),
    }
}

/// Decides critical transversality of `{σ^n Z}` through homological
/// transversality of `Z` against every invariant coordinate union.
pub fn critical_transversality_certificate(sigma: &ProjAutomorphism, z: &HomIdeal) -> CtCertificate {
    let hypotheses = "characteristic 0; closure of <σ> is the diagonal torus \
                      (distinct eigenvalues, multiplicatively independent ratios)";
    if !z.field().is_rational() {
        return inconclusive("characteristic-0 theorem assumed", hypotheses);
    }
    if z.ambient_dim() > MAX_CERTIFIED_DIM {
        return inconclusive(
            format!("enumeration limited to d <= {MAX_CERTIFIED_DIM}"),
            hypotheses,
        );
    }
    let family = match invariant_coordinate_subschemes(sigma, None) {
        Ok(f) => f,
        Err(Error::InvariantFamilyNotClassified(why)) => {
            return inconclusive(format!("invariant family not classified: {why}"), hypotheses)
        }
        Err(e) => return inconclusive(e.to_string(), hypotheses),
    };
    let mut checked = Vec::with_capacity(family.len());
    for y in family {
        let t = match homologically_transverse(z, &y) {
            Ok(t) => t,
            Err(e) => return inconclusive(e.to_string(), hypotheses),
        };
        let failed = match t {
            Transversality::Fails { j } => Some(j),
            Transversality::Transverse => None,
        };
        checked.push((y.clone(), t));
        if let Some(j) = failed {
            return CtCertificate {
                verdict: CtVerdict::Refuted {
                    witness: y.to_string(),
                    j,
                },
                witness: Some(y),
                checked,
                hypotheses: hypotheses.into(),
            };
        }
    }
    CtCertificate {
        verdict: CtVerdict::Certified,
        witness: None,
        checked,
        hypotheses: hypotheses.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Field;

    fn diag(entries: &[i64]) -> ProjAutomorphism {
        let e: Vec<BigRational> = entries.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        ProjAutomorphism::diagonal(&e, Field::Rational).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(invariant_coordinate_subschemes(&diag(&[1, 2]), None).unwrap().len(), 3);
        assert_eq!(invariant_coordinate_subschemes(&diag(&[1, 2, 3]), Some(1)).unwrap().len(), 6);
        let all = invariant_coordinate_subschemes(&diag(&[1, 2, 3]), None).unwrap();
        let two_points = HomIdeal::parse("x2, x0*x1", 3, Field::Rational).unwrap();
        assert!(all.contains(&two_points));
        assert!(matches!(
            invariant_coordinate_subschemes(&diag(&[1, 2, 4]), None),
            Err(Error::InvariantFamilyNotClassified(_))
        ));
    }

    #[test]
    fn certificates() {
        let s = diag(&[1, 2, 3]);
        let generic = HomIdeal::parse("x0 - x1, x0 - x2", 3, Field::Rational).unwrap();
        let c = critical_transversality_certificate(&s, &generic);
        assert!(c.is_certified());
        let coord = HomIdeal::parse("x1, x2", 3, Field::Rational).unwrap();
        let c = critical_transversality_certificate(&s, &coord);
        assert_eq!(c.witness, Some(coord));
        assert!(matches!(c.verdict, CtVerdict::Refuted { j: 1, .. }));
        let c = critical_transversality_certificate(&diag(&[1, 2, 4]), &generic);
        assert!(matches!(c.verdict, CtVerdict::Inconclusive { ref reason } if reason.starts_with("invariant family not classified")));
    }
}
