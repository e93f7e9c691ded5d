//! Basis documents: the polynomial schema per element, plus `anc`, `nmp`
//! and a `stats` block.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::basis::{JanetBasisResult, JanetStats, Triple};
use crate::poly::json::{decode_terms, terms_json, TermJson};
use crate::poly::{Monomial, MonomialOrder, OrderKind, PolyError, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anc: Option<Vec<u16>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmp: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub vars: Vec<String>,
    pub order: OrderKind,
    /// Variable indices from greatest to least.
    pub precedence: Vec<usize>,
    pub elements: Vec<ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<JanetStats>,
}

impl BasisJson {
    pub fn from_janet(jb: &JanetBasisResult) -> Self {
        let mut doc = Self::from_polys(&jb.ring, &jb.polynomials());
        for (e, t) in doc.elements.iter_mut().zip(&jb.basis) {
            e.anc = Some(t.anc.exponents().to_vec());
            e.nmp = Some(t.nmp.clone());
        }
        doc.stats = Some(jb.stats.clone());
        doc
    }

    pub fn from_polys(ring: &Arc<Ring>, polys: &[Polynomial]) -> Self {
        BasisJson {
            vars: ring.vars().to_vec(),
            order: ring.order().kind(),
            precedence: ring.order().precedence().to_vec(),
            elements: polys
                .iter()
                .map(|p| ElementJson {
                    vars: ring.vars().to_vec(),
                    terms: terms_json(p),
                    anc: None,
                    nmp: None,
                })
                .collect(),
            stats: None,
        }
    }

    pub fn ring(&self) -> Result<Arc<Ring>, PolyError> {
        let order = MonomialOrder::with_precedence(self.order, self.precedence.clone())?;
        Ring::with_order(self.vars.clone(), order)
    }

    pub fn polynomials(&self) -> Result<(Arc<Ring>, Vec<Polynomial>), PolyError> {
        let ring = self.ring()?;
        let polys = self
            .elements
            .iter()
            .map(|e| {
                if e.vars != self.vars {
                    return Err(PolyError::Parse("element variables differ from the basis".into()));
                }
                decode_terms(&e.terms, &ring)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((ring, polys))
    }

    /// Triples, falling back to `anc = lm` and empty `nmp` where absent.
    pub fn triples(&self) -> Result<(Arc<Ring>, Vec<Triple>), PolyError> {
        let (ring, polys) = self.polynomials()?;
        let triples = polys
            .into_iter()
            .zip(&self.elements)
            .map(|(p, e)| {
                let anc = match &e.anc {
                    Some(a) => Monomial::from_exponents(a.iter().copied()),
                    None => p.leading_monomial().cloned().unwrap_or_else(|| Monomial::one(ring.nvars())),
                };
                Triple {
                    pol: p,
                    anc,
                    nmp: e.nmp.clone().unwrap_or_default(),
                }
            })
            .collect();
        Ok((ring, triples))
    }
}
