//! Γ-calculus: elements, the meta-monoid operations, the σ-calculus carried
//! alongside, orientation reversal and the trace map.

mod element;
mod error;
mod render;
mod sigma;
mod spec;

pub use element::{GammaElement, Sign};
pub use error::GammaError;
pub use render::GammaDump;
pub use sigma::SigmaElement;
pub use spec::StitchSpec;

pub(crate) use spec::Chain;

use crate::polyalg::{Label, Monomial, RationalFn, Substitution, Target};

/// A Γ-calculus element together with its σ-calculus value. Every operation
/// acts on both parts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tangle {
    pub gamma: GammaElement,
    pub sigma: SigmaElement,
}

impl Tangle {
    pub fn empty() -> Self {
        Tangle::default()
    }

    pub fn generator(sign: Sign, over: &Label, under: &Label) -> Result<Self, GammaError> {
        let gamma = GammaElement::generator(sign, over, under)?;
        let mut sigma = SigmaElement::new();
        sigma.insert(over.clone(), Monomial::one());
        sigma.insert(under.clone(), Monomial::var_pow(over.clone(), sign.exponent()));
        Ok(Tangle { gamma, sigma })
    }

    pub fn labels(&self) -> &[Label] {
        self.gamma.labels()
    }

    pub fn identity_strand(&self, x: &Label) -> Result<Self, GammaError> {
        let gamma = self.gamma.identity_strand(x)?;
        let mut sigma = self.sigma.clone();
        sigma.insert(x.clone(), Monomial::one());
        Ok(Tangle { gamma, sigma })
    }

    pub fn disjoint_union(&self, o: &Tangle) -> Result<Self, GammaError> {
        let gamma = self.gamma.disjoint_union(&o.gamma)?;
        let mut sigma = self.sigma.clone();
        for (l, m) in o.sigma.iter() {
            sigma.insert(l.clone(), m.clone());
        }
        Ok(Tangle { gamma, sigma })
    }

    pub fn delete(&self, x: &Label) -> Result<Self, GammaError> {
        let gamma = self.gamma.delete(x)?;
        let mut sigma = self.sigma.clone();
        sigma.remove(x);
        let sigma = sigma.substitute(&Substitution::new().one(x.clone()));
        Ok(Tangle { gamma, sigma })
    }

    pub fn rename(&self, x: &Label, w: &Label) -> Result<Self, GammaError> {
        let gamma = self.gamma.rename(x, w)?;
        let mut sigma = self.sigma.clone();
        if let Some(m) = sigma.remove(x) {
            sigma.insert(w.clone(), m);
        }
        let sigma = sigma.substitute(&Substitution::new().rename(x.clone(), w.clone()));
        Ok(Tangle { gamma, sigma })
    }

    pub fn stitch(&self, a: &Label, b: &Label, c: &Label) -> Result<Self, GammaError> {
        let gamma = self.gamma.stitch(a, b, c)?;
        let mut sigma = self.sigma.clone();
        let sa = sigma.remove(a).unwrap_or_default();
        let sb = sigma.remove(b).unwrap_or_default();
        sigma.insert(c.clone(), sa.mul(&sb));
        let sub = Substitution::new()
            .rename(a.clone(), c.clone())
            .rename(b.clone(), c.clone());
        Ok(Tangle {
            gamma,
            sigma: sigma.substitute(&sub),
        })
    }

    pub fn stitch_bulk(&self, spec: &StitchSpec) -> Result<Self, GammaError> {
        let chains = spec.resolve(self.gamma.labels())?;
        let gamma = self.gamma.stitch_chains(spec, &chains)?;
        let mut sigma = self.sigma.clone();
        let mut sub = Substitution::new();
        for ch in &chains {
            let mut prod = Monomial::one();
            for l in &ch.members {
                prod = prod.mul(&sigma.remove(l).unwrap_or_default());
                sub.insert(l.clone(), Target::Label(ch.name.clone()));
            }
            sigma.insert(ch.name.clone(), prod);
        }
        Ok(Tangle {
            gamma,
            sigma: sigma.substitute(&sub),
        })
    }

    pub fn reverse_orientation(&self, strands: &[Label]) -> Result<Self, GammaError> {
        let (gamma, sigma) = self.gamma.reverse_orientation(&self.sigma, strands)?;
        Ok(Tangle { gamma, sigma })
    }

    pub fn trace(&self, closed: &[Label]) -> Result<RationalFn, GammaError> {
        self.gamma.trace(closed)
    }
}
