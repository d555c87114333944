//! Finite-support subprobability distributions.
//!
//! A `SubDist` assigns exact rational weights to finitely many events. Total
//! mass is at most 1; the deficit is the probability of not returning at
//! all, which is how nontermination shows up. Only strictly positive weights
//! are stored, so structural equality is semantic equality.

use std::collections::BTreeMap;

use num::{One, Zero};

use crate::event::Event;
use crate::rat::Rat;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SubDist(BTreeMap<Event, Rat>);

impl SubDist {
    /// The zero subdistribution: no mass anywhere.
    pub fn zero() -> SubDist {
        SubDist(BTreeMap::new())
    }

    /// All mass on one event.
    pub fn point(e: Event) -> SubDist {
        let mut m = BTreeMap::new();
        m.insert(e, Rat::one());
        SubDist(m)
    }

    /// Adds `w` to the weight of `e`. Ignores zero, keeps the map free of
    /// zero entries.
    pub fn push(&mut self, e: Event, w: Rat) {
        if w.is_zero() {
            return;
        }
        debug_assert!(w > Rat::zero(), "weights must be nonnegative");
        let slot = self.0.entry(e).or_insert_with(Rat::zero);
        *slot += w;
    }

    pub fn weight(&self, e: &Event) -> Rat {
        self.0.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    /// Support with weights, in canonical event order.
    pub fn iter(&self) -> impl Iterator<Item = (&Event, &Rat)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mass(&self) -> Rat {
        self.0.values().fold(Rat::zero(), |acc, w| acc + w)
    }

    pub fn scale(&self, factor: &Rat) -> SubDist {
        if factor.is_zero() {
            return SubDist::zero();
        }
        SubDist(self.0.iter().map(|(e, w)| (e.clone(), w * factor)).collect())
    }

    pub fn add(&self, other: &SubDist) -> SubDist {
        let mut out = self.clone();
        for (e, w) in other.iter() {
            out.push(e.clone(), w.clone());
        }
        out
    }

    /// Largest pointwise weight difference between two subdistributions.
    pub fn max_discrepancy(&self, other: &SubDist) -> Rat {
        let mut max = Rat::zero();
        for e in self.0.keys().chain(other.0.keys()) {
            let d = self.weight(e) - other.weight(e);
            let d = if d < Rat::zero() { -d } else { d };
            if d > max {
                max = d;
            }
        }
        max
    }
}

impl FromIterator<(Event, Rat)> for SubDist {
    fn from_iter<I: IntoIterator<Item = (Event, Rat)>>(iter: I) -> SubDist {
        let mut d = SubDist::zero();
        for (e, w) in iter {
            d.push(e, w);
        }
        d
    }
}
