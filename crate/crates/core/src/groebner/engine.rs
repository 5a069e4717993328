//! Integer-coefficient Buchberger engine.
//!
//! Every working polynomial is kept primitive over Z with a positive leading
//! coefficient, terms sorted descending in the active order. Pair selection is
//! the normal strategy (smallest lcm first) with the Gebauer–Möller update,
//! which applies both the coprime criterion and the chain criterion.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{GbStats, GroebnerError};
use crate::polyring::{Monomial, MonomialOrder, Polynomial, Rational};

pub(crate) type Term = (Monomial, BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    pub(crate) terms: Vec<Term>,
}

impl IPoly {
    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub(crate) fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Clears denominators, sorts under `order` and normalizes to primitive form.
    pub(crate) fn from_polynomial(p: &Polynomial, order: &MonomialOrder) -> IPoly {
        let lcm_den = p
            .terms()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut terms: Vec<Term> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&lcm_den / c.denom())))
            .collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out = IPoly { terms };
        out.make_primitive();
        out
    }

    /// Monic rational form: every coefficient divided by the leading one.
    pub(crate) fn to_monic_polynomial(&self, num_vars: usize) -> Polynomial {
        let lc = self.lc().clone();
        Polynomial::from_terms(
            num_vars,
            self.terms
                .iter()
                .map(|(m, c)| (Rational::new(c.clone(), lc.clone()), m.clone())),
        )
    }

    pub(crate) fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
    }

    pub(crate) fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }
}

/// `a_coef·a + b_coef·b_mul·b`, both inputs sorted descending, result sorted
/// descending with cancelled terms dropped.
fn combine(
    a_coef: &BigInt,
    a: &[Term],
    b_coef: &BigInt,
    b_mul: &Monomial,
    b: &[Term],
    order: &MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let a_one = a_coef.is_one();
    let mut bj: Option<Monomial> = b.first().map(|t| t.0.mul(b_mul));
    while i < a.len() || j < b.len() {
        let ord = match (a.get(i), &bj) {
            (Some(ta), Some(mb)) => order.cmp(&ta.0, mb),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                let (m, c) = &a[i];
                out.push((m.clone(), if a_one { c.clone() } else { c * a_coef }));
                i += 1;
            }
            Ordering::Less => {
                let m = bj.take().unwrap();
                out.push((m, &b[j].1 * b_coef));
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(b_mul));
            }
            Ordering::Equal => {
                let c = if a_one { a[i].1.clone() } else { &a[i].1 * a_coef } + &b[j].1 * b_coef;
                let m = bj.take().unwrap();
                if !c.is_zero() {
                    out.push((m, c));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(b_mul));
            }
        }
    }
    out
}

/// Divisor lookup table over the leading monomials of a polynomial set.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a IPoly>,
    masks: Vec<u64>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: Vec<&'a IPoly>) -> Self {
        let masks = polys.iter().map(|p| p.lm().support_mask()).collect();
        Reducers { polys, masks }
    }

    fn find(&self, m: &Monomial) -> Option<&'a IPoly> {
        let mm = m.support_mask();
        self.polys
            .iter()
            .zip(&self.masks)
            .find(|(p, &mask)| mask & !mm == 0 && p.lm().divides(m))
            .map(|(p, _)| *p)
    }
}

pub(crate) struct StepCounter<'s> {
    pub(crate) steps: &'s mut u64,
    pub(crate) budget: u64,
}

impl StepCounter<'_> {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        *self.steps += 1;
        if *self.steps > self.budget {
            return Err(GroebnerError::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }
}

/// Full reduction of `f` modulo `reducers`. The result is primitive and no
/// term of it is divisible by a reducer's leading monomial. Returns the
/// remainder up to a nonzero integer factor.
pub(crate) fn reduce(
    f: IPoly,
    reducers: &Reducers<'_>,
    order: &MonomialOrder,
    counter: &mut StepCounter<'_>,
) -> Result<IPoly, GroebnerError> {
    let mut done: Vec<Term> = Vec::new();
    let mut rest = f.terms;
    let mut start = 0;
    let mut since_content = 0u32;
    while start < rest.len() {
        let Some(g) = reducers.find(&rest[start].0) else {
            start += 1;
            continue;
        };
        counter.tick()?;
        // everything before `start` is irreducible: move it to `done`
        done.extend(rest.drain(..start));
        start = 0;
        let (m, c) = (&rest[0].0, &rest[0].1);
        let q = g.lm().quotient_of(m).expect("divisor");
        let gcd = c.gcd(g.lc());
        let a = g.lc() / &gcd;
        let mut b = c / &gcd;
        b = -b;
        if !a.is_one() {
            for (_, dc) in &mut done {
                *dc *= &a;
            }
        }
        rest = combine(&a, &rest[1..], &b, &q, &g.terms[1..], order);
        since_content += 1;
        if since_content >= 32 {
            since_content = 0;
            let mut joined = IPoly {
                terms: std::mem::take(&mut done),
            };
            let split = joined.terms.len();
            joined.terms.append(&mut rest);
            joined.make_primitive();
            rest = joined.terms.split_off(split);
            done = joined.terms;
        }
    }
    done.append(&mut rest);
    let mut out = IPoly { terms: done };
    out.make_primitive();
    Ok(out)
}

pub(crate) fn s_polynomial(f: &IPoly, g: &IPoly, order: &MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let uf = f.lm().quotient_of(&l).unwrap();
    let ug = g.lm().quotient_of(&l).unwrap();
    let gcd = f.lc().gcd(g.lc());
    let cf = g.lc() / &gcd;
    let cg = -(f.lc() / &gcd);
    // cf·uf·f − (f.lc/gcd)·ug·g; leading terms cancel
    let left: Vec<Term> = f.terms[1..]
        .iter()
        .map(|(m, c)| (m.mul(&uf), c * &cf))
        .collect();
    let terms = combine(&BigInt::one(), &left, &cg, &ug, &g.terms[1..], order);
    let mut out = IPoly { terms };
    out.make_primitive();
    out
}

type PairKey = (SmallVec<[i64; 8]>, u64, usize);

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct Buchberger {
    order: MonomialOrder,
    polys: Vec<IPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    heap: BinaryHeap<Reverse<PairKey>>,
    live: Vec<bool>,
    seq: u64,
    pub(crate) stats: GbStats,
    budget: u64,
}

impl Buchberger {
    pub(crate) fn new(order: MonomialOrder, budget: u64) -> Self {
        Buchberger {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            heap: BinaryHeap::new(),
            live: Vec::new(),
            seq: 0,
            stats: GbStats::default(),
            budget,
        }
    }

    fn active_reducers(&self) -> Reducers<'_> {
        Reducers::new(
            self.polys
                .iter()
                .zip(&self.active)
                .filter(|(_, &a)| a)
                .map(|(p, _)| p)
                .collect(),
        )
    }

    fn reduce_against_active(&mut self, f: IPoly) -> Result<IPoly, GroebnerError> {
        let mut steps = self.stats.reduction_steps;
        let res = {
            let reducers = self.active_reducers();
            let mut counter = StepCounter {
                steps: &mut steps,
                budget: self.budget,
            };
            reduce(f, &reducers, &self.order, &mut counter)
        };
        self.stats.reduction_steps = steps;
        res
    }

    fn push_pair(&mut self, i: usize, j: usize, lcm: Monomial) {
        let key = self.order.sort_key(&lcm);
        let id = self.pairs.len();
        self.pairs.push(Pair { i, j, lcm });
        self.live.push(true);
        self.heap.push(Reverse((key, self.seq, id)));
        self.seq += 1;
        self.stats.pairs_created += 1;
    }

    /// Gebauer–Möller update for a new basis element.
    fn update(&mut self, h: IPoly) {
        self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(h.max_coeff_bits());
        let t = self.polys.len();
        let lm_h = h.lm().clone();
        self.polys.push(h);
        self.active.push(false);

        // candidate pairs (g, h) with g active
        let cands: Vec<(usize, Monomial, bool)> = (0..t)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lm_g = self.polys[g].lm();
                (g, lm_g.lcm(&lm_h), lm_g.is_coprime(&lm_h))
            })
            .collect();

        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].1, &cands[b].1);
                // lb strictly divides la, or equal lcm and b comes first
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // drop pairs whose lcm coincides with a coprime pair's lcm, then coprime ones
        let mut new_pairs = Vec::new();
        for (idx, (g, lcm, coprime)) in cands.iter().enumerate() {
            if !keep[idx] {
                self.stats.pairs_pruned += 1;
                continue;
            }
            if *coprime {
                self.stats.pairs_pruned += 1;
                continue;
            }
            if cands
                .iter()
                .enumerate()
                .any(|(o, c)| o != idx && keep[o] && c.2 && &c.1 == lcm)
            {
                self.stats.pairs_pruned += 1;
                continue;
            }
            new_pairs.push((*g, lcm.clone()));
        }

        // prune old pairs via the chain criterion through h
        for id in 0..self.pairs.len() {
            if !self.live[id] {
                continue;
            }
            let p = &self.pairs[id];
            if lm_h.divides(&p.lcm) {
                let l1 = self.polys[p.i].lm().lcm(&lm_h);
                let l2 = self.polys[p.j].lm().lcm(&lm_h);
                if l1 != p.lcm && l2 != p.lcm {
                    self.live[id] = false;
                    self.stats.pairs_pruned += 1;
                }
            }
        }

        for (g, lcm) in new_pairs {
            self.push_pair(g, t, lcm);
        }

        for g in 0..t {
            if self.active[g] && lm_h.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active[t] = true;
    }

    pub(crate) fn add_generator(&mut self, f: IPoly) -> Result<(), GroebnerError> {
        let h = self.reduce_against_active(f)?;
        if !h.is_zero() {
            self.update(h);
        }
        Ok(())
    }

    pub(crate) fn run(&mut self) -> Result<(), GroebnerError> {
        while let Some(Reverse((_, _, id))) = self.heap.pop() {
            if !self.live[id] {
                continue;
            }
            self.live[id] = false;
            let (i, j) = (self.pairs[id].i, self.pairs[id].j);
            let s = s_polynomial(&self.polys[i], &self.polys[j], &self.order);
            self.stats.pairs_reduced += 1;
            let h = self.reduce_against_active(s)?;
            if h.is_zero() {
                self.stats.zero_reductions += 1;
            } else {
                self.update(h);
            }
        }
        Ok(())
    }

    /// Interreduces the active set into the reduced basis, sorted ascending by
    /// leading monomial.
    pub(crate) fn finish(mut self) -> Result<(Vec<IPoly>, GbStats), GroebnerError> {
        let mut basis: Vec<IPoly> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p.clone())
            .collect();
        basis.sort_by(|a, b| self.order.cmp(a.lm(), b.lm()));
        let mut reduced = Vec::with_capacity(basis.len());
        let mut steps = self.stats.reduction_steps;
        for k in 0..basis.len() {
            let others = Reducers::new(
                basis
                    .iter()
                    .enumerate()
                    .filter(|(o, _)| *o != k)
                    .map(|(_, p)| p)
                    .collect(),
            );
            let mut counter = StepCounter {
                steps: &mut steps,
                budget: self.budget,
            };
            let r = reduce(basis[k].clone(), &others, &self.order, &mut counter)?;
            debug_assert_eq!(r.lm(), basis[k].lm());
            reduced.push(r);
        }
        self.stats.reduction_steps = steps;
        self.stats.basis_size = reduced.len();
        for r in &reduced {
            self.stats.max_coeff_bits = self.stats.max_coeff_bits.max(r.max_coeff_bits());
        }
        Ok((reduced, self.stats))
    }
}
