//! Three coordinate vertices plus five general points on a general line.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{alpha_p2, vanishing_order_on_line, Field, LinearForm, PlaneFatScheme, PlanePoint};
use crate::error::{Error, Result};

pub const EX3_MAX_ATTEMPTS: u32 = 8;
const COORD_RANGE: i64 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct Ex3 {
    pub scheme: PlaneFatScheme,
    pub line: LinearForm,
    /// The seed that passed validation (`requested + attempts - 1`).
    pub seed: u64,
    pub attempts: u32,
}

/// Deterministic in `seed`; a draw failing the genericity checks
/// `α(I(Z)) = 3` and `α(I(2Z)) = 5` is replaced by the draw for `seed + 1`.
pub fn build_ex3(seed: u64, field: Field) -> Result<Ex3> {
    field.require_above(65)?;
    for attempt in 0..EX3_MAX_ATTEMPTS {
        let s = seed.wrapping_add(u64::from(attempt));
        let Some((scheme, line)) = draw(s, field)? else {
            continue;
        };
        if alpha_p2(&scheme, 1)? == 3 && alpha_p2(&scheme, 2)? == 5 {
            return Ok(Ex3 {
                scheme: scheme.with_seed(s),
                line,
                seed: s,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::Seed {
        seed,
        attempts: EX3_MAX_ATTEMPTS,
    })
}

fn draw(seed: u64, field: Field) -> Result<Option<(PlaneFatScheme, LinearForm)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = rng.gen_range(-COORD_RANGE..=COORD_RANGE);
        if v != 0 {
            return v;
        }
    };
    let f = [nonzero(&mut rng), nonzero(&mut rng), nonzero(&mut rng)];
    let line = LinearForm::new(f)?;
    if let Field::Prime(p) = field {
        // The line must miss the vertices in the field too.
        if line.coeffs().iter().any(|c| c.rem_euclid(p as i64) == 0) {
            return Ok(None);
        }
    }
    let mut points: Vec<(PlanePoint, u32)> = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        .into_iter()
        .map(|c| (PlanePoint::new(c).expect("vertex"), 1))
        .collect();
    for _ in 0..5 {
        let r = [0; 3].map(|_| rng.gen_range(-COORD_RANGE..=COORD_RANGE));
        let l = line.coeffs();
        let q = [
            l[1] * r[2] - l[2] * r[1],
            l[2] * r[0] - l[0] * r[2],
            l[0] * r[1] - l[1] * r[0],
        ];
        let Ok(q) = PlanePoint::new(q) else {
            return Ok(None);
        };
        points.push((q, 1));
    }
    Ok(PlaneFatScheme::new(points, field).ok().map(|z| (z, line)))
}

/// Non-containment `I(mZ) ⊄ I(Z)^r` read off the order of vanishing along `L`.
///
/// `(I(Z))_t` is divisible by `F` for `α <= t < t_free` and not for
/// `t >= t_free`. A product of `r` forms of `I(Z)` with total degree `<= d`
/// has at least `b >= (t_free r - d) / (t_free - α)` factors of degree below
/// `t_free`, so `(I(Z)^r)_d` vanishes on `L` to order at least that `b`.
#[derive(Clone, Debug, Serialize)]
pub struct LineCertificate {
    pub m: u32,
    pub r: u32,
    pub d: u32,
    pub alpha: u32,
    pub fixed_free_degree: u32,
    pub symbolic_order: u32,
    pub power_order_bound: u32,
    pub certified: bool,
    pub field: Field,
}

pub fn line_noncontainment(z: &PlaneFatScheme, line: &LinearForm, m: u32, r: u32, d: u32) -> Result<LineCertificate> {
    let alpha = alpha_p2(z, 1)?;
    let cap: u32 = z.points().iter().map(|(_, mi)| mi).sum::<u32>() + 1;
    let mut t_free = alpha;
    while vanishing_order_on_line(z, 1, t_free, line)? > 0 {
        t_free += 1;
        if t_free > cap.max(alpha) + 1 {
            return Err(Error::Consistency("L stays in the base locus of (I(Z))_t".into()));
        }
    }
    let symbolic_order = vanishing_order_on_line(z, m, d, line)?;
    let power_order_bound = if t_free == alpha {
        0
    } else {
        let num = i64::from(t_free) * i64::from(r) - i64::from(d);
        let den = i64::from(t_free - alpha);
        if num <= 0 {
            0
        } else {
            ((num + den - 1) / den) as u32
        }
    };
    Ok(LineCertificate {
        m,
        r,
        d,
        alpha,
        fixed_free_degree: t_free,
        symbolic_order,
        power_order_bound,
        certified: symbolic_order < power_order_bound,
        field: z.field(),
    })
}
