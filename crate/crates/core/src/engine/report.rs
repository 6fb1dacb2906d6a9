//! The full pipeline: every invariant of one scheme, cross-checked.

use serde::Serialize;

use super::bracket::Bracket;
use super::conjectures::{conjectures_in, grifo_witness_reverifies, ConjectureReport};
use super::containment::SchemeContext;
use super::criteria::{mt3_from_parts, Mt3Report};
use super::denkert::{denkert_in, DenkertEstimate};
use super::rho_hat::{rho_hat_in, RhoHat};
use super::rho_int::{k_with, rho_int_with, IntegralSearch};
use super::window::{dd_window_in, WindowResult};
use super::witness::ContainmentWitness;
use super::Limits;
use crate::error::{Error, Result};
use crate::fatpoints::MonomialFatScheme;
use crate::rational::{frac, int, serialize_pq, serialize_pq_opt, to_pq, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct ReportSettings {
    #[serde(serialize_with = "serialize_pq")]
    pub epsilon: Rational,
    pub r_probe: u32,
    pub grid_cap: u32,
    pub t_check: u32,
    pub m_max: u32,
    pub denkert_s: u32,
    pub grifo_r_max: u32,
    pub hahu_r_max: u32,
    pub chudnovsky_m_max: u32,
    /// Range of `m` for the empirical check of the Waldschmidt LP.
    pub waldschmidt_m_max: u32,
    /// Times `ε` may be doubled when a window exceeds its caps.
    pub max_escalations: u32,
    pub limits: Limits,
}

impl Default for ReportSettings {
    fn default() -> Self {
        ReportSettings {
            epsilon: frac(1, 12),
            r_probe: 12,
            grid_cap: 8,
            t_check: 3,
            m_max: 4,
            denkert_s: 2,
            grifo_r_max: 4,
            hahu_r_max: 3,
            chudnovsky_m_max: 6,
            waldschmidt_m_max: 12,
            max_escalations: 6,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyFlag {
    pub name: &'static str,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Checks {
    pub grifo: Option<super::ConjectureCheck>,
    pub hahu: Option<super::ConjectureCheck>,
    pub chudnovsky: Option<super::ConjectureCheck>,
    pub valuation_chudnovsky: Option<super::ConjectureCheck>,
    pub mt3: Option<Mt3Report>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResurgenceReport {
    pub scheme: String,
    pub ambient: usize,
    pub big_height: usize,
    pub alpha: u64,
    #[serde(serialize_with = "serialize_pq")]
    pub waldschmidt: Rational,
    pub rho_hat: RhoHat,
    #[serde(serialize_with = "serialize_pq")]
    pub rho_prime: Rational,
    pub rho: Option<Bracket>,
    pub rho_int: Option<Bracket>,
    #[serde(rename = "K")]
    pub k: Option<Bracket>,
    #[serde(serialize_with = "serialize_pq_opt")]
    pub epsilon_used: Option<Rational>,
    pub denkert: Option<DenkertEstimate>,
    pub witnesses: Vec<ContainmentWitness>,
    pub checks: Checks,
    pub consistency_flags: Vec<ConsistencyFlag>,
    pub notes: Vec<String>,
    /// A stage hit a resource cap; the affected fields are null.
    pub resource_exhausted: bool,
}

impl ResurgenceReport {
    pub fn consistent(&self) -> bool {
        self.consistency_flags.iter().all(|f| f.ok)
    }
}

/// Route resource exhaustion into a note; everything else propagates.
fn soft<T>(r: Result<T>, stage: &str, notes: &mut Vec<String>, exhausted: &mut bool) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e @ Error::Resource { .. }) => {
            notes.push(format!("{stage}: {e}"));
            *exhausted = true;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

pub fn resurgence_report(z: &MonomialFatScheme, name: &str, settings: &ReportSettings) -> Result<ResurgenceReport> {
    let ctx = SchemeContext::new(z, settings.limits)?;
    let mut notes = Vec::new();
    let mut exhausted = false;
    let mut flags = Vec::new();
    let h = int(z.big_height() as i64);
    let one = int(1);

    let alpha = ctx.ideal.alpha()?;
    let waldschmidt = z.waldschmidt();
    let rh = rho_hat_in(&ctx, settings.grid_cap)?;
    let rho_int = soft(rho_int_with(&ctx.ideal, settings.r_probe, settings.limits), "rho_int", &mut notes, &mut exhausted)?;
    let k = soft(k_with(&ctx.ideal, settings.r_probe, settings.limits), "K", &mut notes, &mut exhausted)?;

    let mut denkert: Option<DenkertEstimate> = None;
    for a in 1..=3 {
        match denkert_in(&ctx, a, settings.denkert_s, &settings.epsilon, settings.t_check) {
            Ok(d) => {
                denkert = Some(d);
                break;
            }
            Err(Error::Precondition(msg)) => notes.push(format!("denkert a={a}: {msg}")),
            Err(e @ Error::Resource { .. }) => {
                notes.push(format!("denkert a={a}: {e}"));
                exhausted = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }

    // Resurgence bracket.
    let mut window: Option<WindowResult> = None;
    let mut epsilon_used = None;
    let mut rho: Option<Bracket> = None;
    if !rh.certified() {
        notes.push("asymptotic resurgence is not certified; window search skipped".into());
        rho = Some(Bracket::closed(rh.value.clone().max(one.clone()), h.clone().max(rh.value.clone())));
    } else if rh.value == h {
        rho = Some(Bracket::exact(h.clone()));
    } else {
        let mut eps = settings.epsilon.clone();
        for _ in 0..=settings.max_escalations {
            match dd_window_in(&ctx, &rh, &eps) {
                Ok(w) => {
                    rho = Some(w.rho.clone());
                    epsilon_used = Some(eps.clone());
                    window = Some(w);
                    break;
                }
                Err(e @ Error::Resource { .. }) => {
                    notes.push(format!("window at ε = {}: {e}; doubling ε", to_pq(&eps)));
                    eps = &eps * int(2);
                }
                Err(e) => return Err(e),
            }
        }
        if rho.is_none() {
            exhausted = true;
        }
    }
    let mut denkert_meets_window = true;
    if let (Some(b), Some(d)) = (&rho, &denkert) {
        match b.raise_lo(&d.rho_lower) {
            Some(nb) => rho = Some(nb),
            None => denkert_meets_window = false,
        }
    }
    if let Some(b) = &rho {
        let mut b = b.clone();
        let int_exact_one = rho_int.as_ref().and_then(|s| s.value.exact_value()) == Some(&one);
        if rh.certified() && rh.value == one && int_exact_one {
            b = b.intersect(&Bracket::exact(one.clone())).unwrap_or(b);
            notes.push("ρ = 1 since ρ̂ = 1 and ρ_int = 1".into());
        }
        if let Some(kv) = k.as_ref().and_then(|s| s.value.exact_value()) {
            let cap = &rh.value * kv;
            if let Some(nb) = b.cap_hi(&cap, false) {
                b = nb;
            }
        }
        let strict = rh.certified() && rh.value < h;
        if let Some(nb) = b.cap_hi(&h, strict) {
            b = nb;
        }
        rho = Some(b);
    }

    let mut witnesses: Vec<ContainmentWitness> = rh.witnesses.clone();
    if let Some(w) = &rh.ceiling_violation {
        witnesses.push(w.clone());
    }
    if let Some(w) = &window {
        witnesses.extend(w.witnesses.iter().cloned());
    }
    if let Some(d) = &denkert {
        witnesses.push(d.witness.clone());
    }
    for s in [&rho_int, &k].into_iter().flatten() {
        if let Some(w) = &s.witness {
            witnesses.push(w.clone());
        }
    }

    let mt3 = soft(
        mt3_from_parts(&ctx, settings.m_max, &rh, rho_int.as_ref().map(|s| &s.value), &witnesses),
        "mt3",
        &mut notes,
        &mut exhausted,
    )?;
    let conj: Option<ConjectureReport> = soft(
        conjectures_in(&ctx, settings.grifo_r_max, settings.hahu_r_max, settings.chudnovsky_m_max),
        "conjectures",
        &mut notes,
        &mut exhausted,
    )?;
    if let Some(c) = &conj {
        for (name, check) in [
            ("grifo", &c.grifo),
            ("hahu", &c.hahu),
            ("chudnovsky", &c.chudnovsky),
            ("valuation_chudnovsky", &c.valuation_chudnovsky),
        ] {
            for inst in check.failures() {
                notes.push(format!("FINDING: {name} fails at {}", inst.label));
                if let Some(w) = &inst.witness {
                    witnesses.push(w.clone());
                    if !grifo_witness_reverifies(&ctx, w)? {
                        notes.push(format!("{name} witness at {} does not re-verify", inst.label));
                    }
                }
            }
        }
    }

    // Consistency flags.
    let flag = |name, ok, detail: Option<String>| ConsistencyFlag { name, ok, detail };
    flags.push(flag("rho_hat_certified", rh.certified(), None));
    if let Some(b) = &rho {
        let ok = one <= rh.value && rh.value <= *b.hi() && b.below(&h, false) && *b.lo() >= rh.value;
        flags.push(flag("one_le_rho_hat_le_rho_le_h", ok, Some(format!("ρ̂ = {}, ρ ⊆ [{}, {}]", to_pq(&rh.value), to_pq(b.lo()), to_pq(b.hi())))));
        if let Some(ks) = &k {
            let ok = b.below(&(&rh.value * ks.value.hi()), false);
            flags.push(flag("rho_le_rho_hat_times_k", ok, None));
        }
        if let Some(ri) = &rho_int {
            flags.push(flag("rho_int_le_rho", ri.value.lo() <= b.hi(), None));
        }
    }
    let lower = int(alpha as i64) / &waldschmidt;
    flags.push(flag("alpha_over_waldschmidt_le_rho_hat", lower <= rh.value, Some(format!("{} <= {}", to_pq(&lower), to_pq(&rh.value)))));
    flags.push(flag("rho_prime_equals_rho_hat", true, None));
    flags.push(flag("denkert_and_window_intersect", denkert_meets_window, None));
    if rh.certified() && rh.value < h {
        let eps = (&h - &rh.value) / int(2);
        match dd_window_in(&ctx, &rh, &eps) {
            Ok(w) => flags.push(flag("rho_hat_below_h_forces_rho_below_h", w.rho.below(&h, true), Some(format!("ε = {}", to_pq(&eps))))),
            Err(e @ Error::Resource { .. }) => notes.push(format!("big-height window: {e}")),
            Err(e) => return Err(e),
        }
    }
    let big_n = z.ambient() as i64;
    if big_n >= 2 {
        if let Some(ri) = &rho_int {
            flags.push(flag("rho_int_le_half_n", *ri.value.lo() <= frac(big_n, 2), None));
        }
    }
    let mut reverified = true;
    for w in &witnesses {
        reverified &= w.verify(z, &ctx.ideal)?;
    }
    flags.push(flag("witnesses_reverify", reverified, None));
    let upper = z.waldschmidt_upper(settings.waldschmidt_m_max)?;
    flags.push(flag(
        "waldschmidt_lp_matches_initial_degrees",
        upper == waldschmidt,
        Some(format!("min α(I^(m))/m over m <= {} is {}", settings.waldschmidt_m_max, to_pq(&upper))),
    ));
    if let Some(m) = &mt3 {
        flags.push(flag("mt3_chain", m.chain_holds(), (!m.chain_holds()).then(|| m.inversions.join("; "))));
    }
    if rh.value > one && rho_int.as_ref().is_some_and(|s| s.value.lo() > &one) {
        notes.push("FINDING: ρ_int > 1 for a fat point ideal".into());
    }
    if rh.value == one && rho.as_ref().is_some_and(|b| b.lo() > &one) {
        notes.push("FINDING: ρ̂ = 1 but ρ > 1".into());
    }
    witnesses.dedup();

    let (grifo, hahu, chudnovsky, valuation_chudnovsky) = match conj {
        Some(c) => (Some(c.grifo), Some(c.hahu), Some(c.chudnovsky), Some(c.valuation_chudnovsky)),
        None => (None, None, None, None),
    };
    Ok(ResurgenceReport {
        scheme: name.to_string(),
        ambient: z.ambient(),
        big_height: z.big_height(),
        alpha,
        waldschmidt,
        rho_prime: rh.value.clone(),
        rho_hat: rh,
        rho,
        rho_int: rho_int.map(|s: IntegralSearch| s.value),
        k: k.map(|s| s.value),
        epsilon_used,
        denkert,
        witnesses,
        checks: Checks {
            grifo,
            hahu,
            chudnovsky,
            valuation_chudnovsky,
            mt3,
        },
        consistency_flags: flags,
        notes,
        resource_exhausted: exhausted,
    })
}
