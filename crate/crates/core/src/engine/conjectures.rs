//! Finite instances of containment and Chudnovsky-type conjectures.

use serde::Serialize;

use super::containment::{Containment, SchemeContext};
use super::witness::ContainmentWitness;
use super::Limits;
use crate::error::Result;
use crate::fatpoints::MonomialFatScheme;
use crate::monomial::{ExponentVector, Verdict};
use crate::rational::{int, ratio, to_pq};

#[derive(Clone, Debug, Serialize)]
pub struct CheckInstance {
    pub label: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ContainmentWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<ExponentVector>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureCheck {
    pub passed: bool,
    pub instances: Vec<CheckInstance>,
}

impl ConjectureCheck {
    fn from_instances(instances: Vec<CheckInstance>) -> Self {
        ConjectureCheck {
            passed: instances.iter().all(|i| i.passed),
            instances,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckInstance> {
        self.instances.iter().filter(|i| !i.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub grifo: ConjectureCheck,
    pub hahu: ConjectureCheck,
    pub chudnovsky: ConjectureCheck,
    pub valuation_chudnovsky: ConjectureCheck,
}

impl ConjectureReport {
    pub fn all_passed(&self) -> bool {
        [&self.grifo, &self.hahu, &self.chudnovsky, &self.valuation_chudnovsky]
            .iter()
            .all(|c| c.passed)
    }
}

/// Grifo for `2 <= r <= r_max`, the slack containment `I^(rN) ⊆ M^(r(N-1)) I^r`
/// for `1 <= r <= r_max`,
/// Chudnovsky for `m <= m_max`, and the valuation form on every facet.
pub fn conjecture_checks(z: &MonomialFatScheme, r_max: u32, m_max: u32) -> Result<ConjectureReport> {
    conjectures_in(&SchemeContext::new(z, Limits::default())?, r_max, r_max, m_max)
}

pub(crate) fn conjectures_in(
    ctx: &SchemeContext<'_>,
    grifo_r_max: u32,
    hahu_r_max: u32,
    chudnovsky_m_max: u32,
) -> Result<ConjectureReport> {
    let z = ctx.scheme;
    let h = ctx.big_height();
    let big_n = ctx.ambient();

    let mut grifo = Vec::new();
    for r in 2..=grifo_r_max {
        let m = h * r - h + 1;
        let c = ctx.symbolic_in_power(m, r)?;
        grifo.push(CheckInstance {
            label: format!("I^({m}) in I^{r}"),
            passed: c.holds(),
            detail: None,
            witness: c.into_witness(),
            monomial: None,
        });
    }

    let mut hahu = Vec::new();
    for r in 1..=hahu_r_max {
        let m = r * big_n;
        let slack = u64::from(r * (big_n - 1));
        let sym = ctx.symbolic_power(m)?;
        let v = ctx.oracle.ideal_contained(&sym, r, slack)?;
        hahu.push(CheckInstance {
            label: format!("I({m}Z) in M^{slack} I^{r}"),
            passed: v.is_contained(),
            detail: None,
            witness: None,
            monomial: match v {
                Verdict::Contained => None,
                Verdict::Witness(w) => Some(w),
            },
        });
    }

    let what = z.waldschmidt();
    let mut chudnovsky = Vec::new();
    for m in 1..=chudnovsky_m_max {
        let alpha_m = z.alpha_symbolic(m)?;
        let bound = ratio(alpha_m + u64::from(big_n) - 1, u64::from(m + big_n - 1));
        chudnovsky.push(CheckInstance {
            label: format!("m={m}"),
            passed: what >= bound,
            detail: Some(format!("{} >= {}", to_pq(&what), to_pq(&bound))),
            witness: None,
            monomial: None,
        });
    }

    let mut valuation = Vec::new();
    for f in ctx.np.facets() {
        let vhat = z.valuation_hat(f);
        let bound = int(f.value as i64 + 1) / int(i64::from(big_n));
        valuation.push(CheckInstance {
            label: format!("normal {:?}", f.normal),
            passed: bound <= vhat,
            detail: Some(format!("{} <= {}", to_pq(&bound), to_pq(&vhat))),
            witness: None,
            monomial: None,
        });
    }

    Ok(ConjectureReport {
        grifo: ConjectureCheck::from_instances(grifo),
        hahu: ConjectureCheck::from_instances(hahu),
        chudnovsky: ConjectureCheck::from_instances(chudnovsky),
        valuation_chudnovsky: ConjectureCheck::from_instances(valuation),
    })
}

/// Re-check a Grifo failure; used when surfacing findings.
pub(crate) fn grifo_witness_reverifies(ctx: &SchemeContext<'_>, w: &ContainmentWitness) -> Result<bool> {
    Ok(matches!(ctx.symbolic_in_power(w.m, w.r)?, Containment::NotContained(_)) && w.verify(ctx.scheme, &ctx.ideal)?)
}
