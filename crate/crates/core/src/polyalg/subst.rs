use std::collections::BTreeMap;

use super::{Label, Monomial};

/// Image of a single variable under a substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// `t_a → t_b`.
    Label(Label),
    /// `t_a → 1`.
    One,
    /// `t_a → t_a⁻¹`.
    Inverse,
    /// `t_a →` an arbitrary monomial.
    Monomial(Monomial),
}

/// Simultaneous variable substitution. Labels without an entry are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    map: BTreeMap<Label, Monomial>,
}

impl Substitution {
    pub fn new() -> Self {
        Substitution::default()
    }

    pub fn set(mut self, from: Label, to: Target) -> Self {
        self.insert(from, to);
        self
    }

    pub fn insert(&mut self, from: Label, to: Target) {
        let image = match to {
            Target::Label(l) => Monomial::var(l),
            Target::One => Monomial::one(),
            Target::Inverse => Monomial::var_pow(from.clone(), -1),
            Target::Monomial(m) => m,
        };
        self.map.insert(from, image);
    }

    pub fn rename(self, from: Label, to: Label) -> Self {
        self.set(from, Target::Label(to))
    }

    pub fn one(self, from: Label) -> Self {
        self.set(from, Target::One)
    }

    pub fn inverse(self, from: Label) -> Self {
        self.set(from, Target::Inverse)
    }

    /// Identify every listed label with the single variable `to`.
    pub fn collapse<'a, I: IntoIterator<Item = &'a Label>>(labels: I, to: &Label) -> Self {
        let mut s = Substitution::new();
        for l in labels {
            s.insert(l.clone(), Target::Label(to.clone()));
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.map.values().zip(self.map.keys()).all(|(m, l)| *m == Monomial::var(l.clone()))
    }

    pub fn image(&self, l: &Label) -> Monomial {
        self.map
            .get(l)
            .cloned()
            .unwrap_or_else(|| Monomial::var(l.clone()))
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        let mut out = Monomial::one();
        for (l, e) in m.exponents() {
            out = out.mul(&self.image(l).pow(*e));
        }
        out
    }

    /// True when the substitution sends the given variables to pairwise
    /// distinct variables (possibly inverted). Such a map is an injective
    /// ring homomorphism, so it preserves coprimality.
    pub fn is_injective_on<'a, I: IntoIterator<Item = &'a Label>>(&self, labels: I) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        for l in labels {
            let img = self.image(l);
            match img.exponents() {
                [(v, e)] if e.abs() == 1 => {
                    if !seen.insert(v.clone()) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}
