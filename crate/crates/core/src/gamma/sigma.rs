use std::collections::BTreeMap;

use crate::polyalg::{Label, Monomial, Substitution};

/// The σ-calculus value: one monomial per strand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SigmaElement {
    sigmas: BTreeMap<Label, Monomial>,
}

impl SigmaElement {
    pub fn new() -> Self {
        SigmaElement::default()
    }

    pub fn from_map(sigmas: BTreeMap<Label, Monomial>) -> Self {
        SigmaElement { sigmas }
    }

    pub fn get(&self, l: &Label) -> Option<&Monomial> {
        self.sigmas.get(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Label, &Monomial)> {
        self.sigmas.iter()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.sigmas.keys()
    }

    pub fn len(&self) -> usize {
        self.sigmas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigmas.is_empty()
    }

    pub(crate) fn insert(&mut self, l: Label, m: Monomial) {
        self.sigmas.insert(l, m);
    }

    pub(crate) fn remove(&mut self, l: &Label) -> Option<Monomial> {
        self.sigmas.remove(l)
    }

    pub fn substitute(&self, sub: &Substitution) -> SigmaElement {
        SigmaElement {
            sigmas: self
                .sigmas
                .iter()
                .map(|(l, m)| (l.clone(), sub.apply_monomial(m)))
                .collect(),
        }
    }
}
