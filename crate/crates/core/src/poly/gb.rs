//! Buchberger's algorithm for graded submodules of free modules `S^r`.
//!
//! Ideals are the rank-one case. Pairs are pruned with the Gebauer-Moller
//! update (chain criterion) and, for ideals only, the coprime-leads
//! criterion. Selection is by sugar degree.

use std::cmp::Ordering;

use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use super::scalar::{Field, Scalar};

/// Term order on module terms `m * e_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModOrder {
    pub mono: MonomialOrder,
    /// Degree of each basis vector `e_c`.
    pub shifts: Vec<u32>,
    /// When set to `r`, components `< r` form a block that dominates every
    /// term in components `>= r` (used to eliminate them).
    pub elim: Option<u32>,
}

impl ModOrder {
    pub fn ideal(mono: MonomialOrder) -> ModOrder {
        ModOrder {
            mono,
            shifts: vec![0],
            elim: None,
        }
    }

    pub fn module(shifts: Vec<u32>) -> ModOrder {
        ModOrder {
            mono: MonomialOrder::DegRevLex,
            shifts,
            elim: None,
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, ac: u32, b: &Monomial, bc: u32) -> Ordering {
        if let Some(r) = self.elim {
            let (ab, bb) = (ac < r, bc < r);
            if ab != bb {
                return if ab { Ordering::Greater } else { Ordering::Less };
            }
        }
        if self.mono.is_degree_compatible() {
            let da = a.degree() + self.shifts[ac as usize];
            let db = b.degree() + self.shifts[bc as usize];
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.mono.cmp(a, b).then_with(|| bc.cmp(&ac))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub mono: Monomial,
    pub comp: u32,
    pub coeff: Scalar,
}

/// Element of a free module, terms strictly decreasing in some [`ModOrder`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Vector {
    pub terms: Vec<VTerm>,
}

impl Vector {
    pub fn zero() -> Vector {
        Vector { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<VTerm>, ord: &ModOrder) -> Vector {
        terms.sort_by(|a, b| ord.cmp(&b.mono, b.comp, &a.mono, a.comp));
        let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(l) if l.mono == t.mono && l.comp == t.comp => l.coeff = &l.coeff + &t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Vector { terms: out }
    }

    /// Places a polynomial into component `comp`.
    pub fn from_poly(p: &Poly, comp: u32, ord: &ModOrder) -> Vector {
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| VTerm {
                mono: *m,
                comp,
                coeff: c.clone(),
            })
            .collect();
        Vector::from_terms(terms, ord)
    }

    /// Builds a vector from one polynomial per component.
    pub fn from_polys(entries: &[Poly], ord: &ModOrder) -> Vector {
        let mut terms = Vec::new();
        for (c, p) in entries.iter().enumerate() {
            for (m, a) in p.terms() {
                terms.push(VTerm {
                    mono: *m,
                    comp: c as u32,
                    coeff: a.clone(),
                });
            }
        }
        Vector::from_terms(terms, ord)
    }

    /// Splits into one polynomial per component.
    pub fn to_polys(&self, rank: usize) -> Vec<Poly> {
        let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp as usize].push((t.mono, t.coeff.clone()));
        }
        parts.into_iter().map(Poly::from_terms).collect()
    }

    /// Collapses a rank-one vector into a polynomial.
    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .map(|t| (t.mono, t.coeff.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&VTerm> {
        self.terms.first()
    }

    /// Weighted degree of the leading term.
    pub fn degree(&self, ord: &ModOrder) -> Option<u32> {
        self.terms
            .iter()
            .map(|t| t.mono.degree() + ord.shifts[t.comp as usize])
            .max()
    }

    pub fn monic(mut self) -> Vector {
        if let Some(l) = self.terms.first() {
            if !l.coeff.is_one() {
                let inv = l.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
        self
    }

    pub fn scale_mul(&self, c: &Scalar, m: &Monomial) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .map(|t| VTerm {
                    mono: t.mono.mul(m),
                    comp: t.comp,
                    coeff: &t.coeff * c,
                })
                .collect(),
        }
    }

    /// `self + other`, both sorted under `ord`.
    pub fn add(&self, other: &Vector, ord: &ModOrder) -> Vector {
        Vector {
            terms: merge_sub(&self.terms, &other.terms, None, ord, false),
        }
    }

    pub fn sub(&self, other: &Vector, ord: &ModOrder) -> Vector {
        Vector {
            terms: merge_sub(&self.terms, &other.terms, None, ord, true),
        }
    }
}

/// Merges `a` with `±c*m*b` (or `±b` when `cm` is `None`).
fn merge_sub(
    a: &[VTerm],
    b: &[VTerm],
    cm: Option<(&Scalar, &Monomial)>,
    ord: &ModOrder,
    negate: bool,
) -> Vec<VTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mk = |t: &VTerm| -> VTerm {
        let (mono, coeff) = match cm {
            Some((c, m)) => (t.mono.mul(m), &t.coeff * c),
            None => (t.mono, t.coeff.clone()),
        };
        VTerm {
            mono,
            comp: t.comp,
            coeff: if negate { -&coeff } else { coeff },
        }
    };
    let mut pending: Option<VTerm> = b.first().map(mk);
    while let Some(bt) = pending.take() {
        if i >= a.len() {
            out.push(bt);
            j += 1;
            pending = b.get(j).map(mk);
            continue;
        }
        match ord.cmp(&a[i].mono, a[i].comp, &bt.mono, bt.comp) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                j += 1;
                pending = b.get(j).map(mk);
            }
            Ordering::Equal => {
                let c = &a[i].coeff + &bt.coeff;
                if !c.is_zero() {
                    out.push(VTerm {
                        mono: bt.mono,
                        comp: bt.comp,
                        coeff: c,
                    });
                }
                i += 1;
                j += 1;
                pending = b.get(j).map(mk);
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out
}

fn find_reducer(lead: &VTerm, basis: &[Vector], active: &[usize]) -> Option<usize> {
    active.iter().copied().find(|&k| {
        let l = basis[k].terms.first().expect("basis elements are nonzero");
        l.comp == lead.comp && l.mono.divides(&lead.mono)
    })
}

/// Full normal form of `f` with respect to `basis[active]`. Basis elements
/// must be monic.
fn reduce_with(f: &Vector, basis: &[Vector], active: &[usize], ord: &ModOrder) -> Vector {
    // rem[..idx] is already irreducible.
    let mut rem: Vec<VTerm> = f.terms.clone();
    let mut idx = 0;
    while idx < rem.len() {
        match find_reducer(&rem[idx], basis, active) {
            Some(k) => {
                let g = &basis[k];
                let q = g.terms[0].mono.div(&rem[idx].mono).expect("divides");
                let c = rem[idx].coeff.clone();
                let tail = merge_sub(&rem[idx + 1..], &g.terms[1..], Some((&c, &q)), ord, true);
                rem.truncate(idx);
                rem.extend(tail);
            }
            None => idx += 1,
        }
    }
    Vector { terms: rem }
}

/// Normal form of `f` modulo a (not necessarily reduced) Groebner basis.
pub fn normal_form(f: &Vector, basis: &[Vector], ord: &ModOrder) -> Vector {
    let monic: Vec<Vector> = basis.iter().map(|g| g.clone().monic()).collect();
    let active: Vec<usize> = (0..monic.len()).filter(|&k| !monic[k].is_zero()).collect();
    reduce_with(f, &monic, &active, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    sugar: u32,
}

fn sugar_of(v: &Vector, ord: &ModOrder) -> u32 {
    v.degree(ord).unwrap_or(0)
}

/// Reduced Groebner basis of the submodule generated by `gens`, sorted by
/// increasing leading term. Deterministic for fixed input and order.
pub fn groebner(gens: &[Vector], ord: &ModOrder, _field: Field) -> Vec<Vector> {
    let ideal_mode = ord.rank() == 1;
    let mut basis: Vec<Vector> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by_key(|g| sugar_of(g, ord));

    let mut queue: std::collections::VecDeque<(Vector, u32)> = input
        .into_iter()
        .map(|g| {
            let s = sugar_of(&g, ord);
            (g, s)
        })
        .collect();

    loop {
        // Interleave pending inputs with pairs by sugar so low-degree
        // information is always available first.
        let next_pair = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.sugar
                    .cmp(&b.sugar)
                    .then_with(|| ord.cmp(&a.lcm, a.comp, &b.lcm, b.comp))
            })
            .map(|(k, p)| (k, p.sugar));
        let take_input = match (&queue.front(), next_pair) {
            (Some((_, s)), Some((_, ps))) => *s <= ps,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        let (h, s) = if take_input {
            let (g, s) = queue.pop_front().unwrap();
            (reduce_with(&g, &basis, &active, ord), s)
        } else {
            let (k, _) = next_pair.unwrap();
            let p = pairs.swap_remove(k);
            let (fi, fj) = (&basis[p.i], &basis[p.j]);
            let mi = fi.terms[0].mono.div(&p.lcm).unwrap();
            let mj = fj.terms[0].mono.div(&p.lcm).unwrap();
            let one = fi.terms[0].coeff.field().one();
            let spoly = Vector {
                terms: merge_sub(
                    &fi.scale_mul(&one, &mi).terms[1..],
                    &fj.terms[1..],
                    Some((&one, &mj)),
                    ord,
                    true,
                ),
            };
            (reduce_with(&spoly, &basis, &active, ord), p.sugar)
        };
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        let hk = basis.len();
        let hlead = h.terms[0].mono;
        let hcomp = h.terms[0].comp;
        basis.push(h);
        sugar.push(s);

        // Gebauer-Moller update.
        let mut cands: Vec<(usize, Monomial)> = active
            .iter()
            .copied()
            .filter(|&g| basis[g].terms[0].comp == hcomp)
            .map(|g| (g, basis[g].terms[0].mono.lcm(&hlead)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, l)) = cands.pop() {
            let coprime = ideal_mode && basis[g].terms[0].mono.is_coprime(&hlead);
            let dominated = cands
                .iter()
                .chain(kept.iter())
                .any(|(_, l2)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((g, l));
            }
        }
        kept.retain(|(g, _)| !(ideal_mode && basis[*g].terms[0].mono.is_coprime(&hlead)));
        pairs.retain(|p| {
            if p.comp != hcomp || !hlead.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].terms[0].mono.lcm(&hlead);
            let lj = basis[p.j].terms[0].mono.lcm(&hlead);
            li == p.lcm || lj == p.lcm
        });
        for (g, l) in kept {
            let si = sugar[g] + basis[g].terms[0].mono.div(&l).unwrap().degree();
            let sh = s + hlead.div(&l).unwrap().degree();
            pairs.push(Pair {
                i: g,
                j: hk,
                lcm: l,
                comp: hcomp,
                sugar: si.max(sh),
            });
        }
        active.retain(|&g| !(basis[g].terms[0].comp == hcomp && hlead.divides(&basis[g].terms[0].mono)));
        active.push(hk);
    }

    // Interreduce the minimal basis.
    let mut out: Vec<Vector> = Vec::with_capacity(active.len());
    for (pos, &k) in active.iter().enumerate() {
        let others: Vec<usize> = active
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &g)| g)
            .collect();
        let lead = basis[k].terms[0].clone();
        let tail = Vector {
            terms: basis[k].terms[1..].to_vec(),
        };
        let mut terms = vec![lead];
        terms.extend(reduce_with(&tail, &basis, &others, ord).terms);
        out.push(Vector { terms }.monic());
    }
    out.sort_by(|a, b| {
        let (x, y) = (&a.terms[0], &b.terms[0]);
        ord.cmp(&x.mono, x.comp, &y.mono, y.comp)
    });
    out
}
