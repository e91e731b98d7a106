//! Grün's predictions, computed from parameters alone, and their
//! verification against enumerated matrix groups.
//!
//! Two kinds of statement are covered:
//!
//! - the structure of an `ell`-Sylow subgroup of `GL_n(F_q)` for `ell != p`
//!   ([`predict_gl_sylow`]), and
//! - bounds `nu` such that the `nu`-th derived subgroup of an `ell`-Sylow of
//!   a group acting on an abelian `p`-group of rank `m` acts trivially
//!   ([`gt1_bound`], [`gt2_bound`], [`ts1_bound`]).
//!
//! Throughout, `m_ell` is the multiplicative order of `p` (or `q = p^f`)
//! modulo `ell`. The normal-subgroup form of the bound is sometimes stated
//! with `m_ell` as the order of `ell` modulo `p`; that reading is not used
//! here, since the argument runs through `GL_m(p)` whose `ell`-part is
//! governed by the order of `p` modulo `ell`.
//!
//! Verification of an action bound works with the image of the action in
//! `GL_m(Z/p^e)`: if `N` is the kernel of `G -> Aut(A)`, the `ell`-Sylows of
//! `G/N` are the images `LN/N` and `(LN/N)^(k) = L^(k)N/N`, so "`L^(k)` acts
//! trivially" is the statement that the `k`-th derived subgroup of a Sylow of
//! the image is trivial. That reduction is assumed, not re-verified.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{
    check_prime, ell_adic_valuation, ell_adic_valuation_big, gl_order, is_prime, m_ell, min_nu,
    multiplicative_order, PrimePower,
};
use crate::error::{domain, Error, Result};
use crate::matgroup::{
    derived_series, enumerate_gl, structure_report, sylow_subgroup, GroupStructureReport,
    MatrixGroup,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowClause {
    /// `floor(n / m_ell) < ell`: the Sylow is abelian of type `(ell^i)^r`.
    ElementaryAbelian,
    /// `ell^r <= floor(n / m_ell) < ell^(r+1)`: derived length at most `r + 1`.
    MetabelianBound,
}

/// Predicted structure of an `ell`-Sylow subgroup of `GL_n(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowPrediction {
    pub clause: SylowClause,
    pub m_ell: u64,
    /// `floor(n / m_ell)` in the first clause, the stage parameter in the second.
    pub r: u64,
    /// Exponent of the exact power of `ell` dividing `q^m_ell - 1`.
    pub i: u32,
    /// `r * i` in the first clause.
    pub order_exponent: Option<u64>,
    /// Exponent of the predicted abelian Sylow (`ell^i`, or 1 when trivial).
    /// The Sylow is elementary abelian exactly when this equals `ell`.
    pub group_exponent: Option<u64>,
    pub derived_length_bound: u32,
}

impl SylowPrediction {
    pub fn is_elementary_abelian(&self) -> bool {
        self.clause == SylowClause::ElementaryAbelian && self.i == 1 && self.r > 0
    }
}

/// Structure of an `ell`-Sylow of `GL_n(F_q)`, `ell != p`.
pub fn predict_gl_sylow(n: u32, q: &PrimePower, ell: u64) -> Result<SylowPrediction> {
    if n == 0 {
        return Err(domain("dimension n must be positive"));
    }
    check_prime("ell", ell)?;
    if ell == q.p() {
        return Err(domain(format!(
            "ell = {ell} equals the characteristic; the theorem concerns ell != p"
        )));
    }
    let m = m_ell(q.p(), q.f(), ell)?;
    // q^m - 1 mod ell^k for large enough k: work with the big integer
    let qm_minus_one = q.q().pow(m as u32) - 1u32;
    let i = ell_adic_valuation_big(&qm_minus_one, ell)?;
    let blocks = n as u64 / m;
    if blocks < ell {
        let order_exponent = blocks * i as u64;
        let group_exponent = if blocks == 0 { 1 } else { ell.pow(i) };
        return Ok(SylowPrediction {
            clause: SylowClause::ElementaryAbelian,
            m_ell: m,
            r: blocks,
            i,
            order_exponent: Some(order_exponent),
            group_exponent: Some(group_exponent),
            derived_length_bound: 1,
        });
    }
    // largest r with ell^r <= blocks
    let mut r = 0u64;
    let mut power = 1u64;
    while power.saturating_mul(ell) <= blocks {
        power *= ell;
        r += 1;
    }
    Ok(SylowPrediction {
        clause: SylowClause::MetabelianBound,
        m_ell: m,
        r,
        i,
        order_exponent: None,
        group_exponent: None,
        derived_length_bound: r as u32 + 1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionTheorem {
    /// Elementary abelian `A`: if `ell > m / m_ell` then `P'` acts trivially.
    Gt1,
    /// Abelian `p`-group `A`: `L^(nu)` acts trivially for the least `nu`
    /// with `ell^nu > m / m_ell`.
    Gt2,
    /// As `Gt2`, with `A` a normal abelian subgroup of `G`.
    Ts1,
}

impl ActionTheorem {
    pub fn name(self) -> &'static str {
        match self {
            ActionTheorem::Gt1 => "gt1",
            ActionTheorem::Gt2 => "gt2",
            ActionTheorem::Ts1 => "ts1",
        }
    }
}

/// A bound `nu` such that `L^(nu)` acts trivially on `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialActionBound {
    pub theorem: ActionTheorem,
    pub m: u64,
    pub p: u64,
    pub ell: u64,
    pub m_ell: u64,
    pub nu: u32,
    pub conclusion: String,
    /// Hypotheses the caller is responsible for.
    pub hypotheses: Vec<String>,
}

fn check_action_inputs(m: u64, p: u64, ell: u64) -> Result<u64> {
    if m == 0 {
        return Err(domain("rank m must be positive"));
    }
    check_prime("p", p)?;
    check_prime("ell", ell)?;
    if p == ell {
        return Err(domain(format!("ell must differ from p (both are {p})")));
    }
    multiplicative_order(p, ell)
}

fn make_bound(theorem: ActionTheorem, m: u64, p: u64, ell: u64, m_ell: u64) -> TrivialActionBound {
    let nu = min_nu(m, m_ell, ell);
    let mut hypotheses = vec![match theorem {
        ActionTheorem::Gt1 => format!("A is elementary abelian of rank {m} over F_{p}"),
        _ => format!("A is an abelian {p}-group of {p}-rank {m}"),
    }];
    if theorem == ActionTheorem::Ts1 {
        hypotheses.push("A is a normal subgroup of G".to_string());
    }
    TrivialActionBound {
        theorem,
        m,
        p,
        ell,
        m_ell,
        nu,
        conclusion: format!("L^({nu}) acts trivially"),
        hypotheses,
    }
}

/// `None` when `ell > m / m_ell` fails. When it holds, `nu <= 1`; `nu = 0`
/// means the whole Sylow acts trivially (possible when `m < m_ell`).
pub fn gt1_bound(m: u64, p: u64, ell: u64) -> Result<Option<TrivialActionBound>> {
    let order = check_action_inputs(m, p, ell)?;
    let applicable = (ell as u128) * (order as u128) > m as u128;
    Ok(applicable.then(|| make_bound(ActionTheorem::Gt1, m, p, ell, order)))
}

pub fn gt2_bound(m: u64, p: u64, ell: u64) -> Result<TrivialActionBound> {
    let order = check_action_inputs(m, p, ell)?;
    Ok(make_bound(ActionTheorem::Gt2, m, p, ell, order))
}

/// Same number as [`gt2_bound`]; the normality of `A` in `G` is recorded as
/// a hypothesis.
pub fn ts1_bound(m: u64, p: u64, ell: u64) -> Result<TrivialActionBound> {
    let order = check_action_inputs(m, p, ell)?;
    Ok(make_bound(ActionTheorem::Ts1, m, p, ell, order))
}

/// Dispatch on the theorem tag; `Ok(None)` only for an inapplicable `Gt1`.
pub fn action_bound(
    theorem: ActionTheorem,
    m: u64,
    p: u64,
    ell: u64,
) -> Result<Option<TrivialActionBound>> {
    match theorem {
        ActionTheorem::Gt1 => gt1_bound(m, p, ell),
        ActionTheorem::Gt2 => gt2_bound(m, p, ell).map(Some),
        ActionTheorem::Ts1 => ts1_bound(m, p, ell).map(Some),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted,
    SkippedOutOfScope,
    SkippedTooLarge,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Query {
    Sylow {
        n: u32,
        q: PrimePower,
        ell: u64,
    },
    Action {
        m: u64,
        p: u64,
        e: u32,
        ell: u64,
        theorem: ActionTheorem,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Sylow(SylowPrediction),
    Action(TrivialActionBound),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowObservation {
    pub structure: GroupStructureReport,
    /// `ell`-adic valuation of the enumerated group order.
    pub sylow_order_exponent: u32,
    /// Number of elements `x` of the Sylow with `x^ell = 1`.
    pub omega_one: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionObservation {
    pub sylow_order: u64,
    /// Orders along the derived series of the Sylow of the image.
    pub derived_orders: Vec<u64>,
    /// Whether the `nu`-th derived term is the identity alone.
    pub derived_term_trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Observation {
    Sylow(SylowObservation),
    Action(ActionObservation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub parameters: Query,
    pub predicted: Option<Prediction>,
    pub observed: Option<Observation>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

/// Builds `GL_n(F_q)`, extracts an `ell`-Sylow and compares it with
/// [`predict_gl_sylow`]. Oversized or out-of-scope queries are reported
/// through the verdict; only internal failures are errors.
pub fn verify_sylow_prediction(
    n: u32,
    q: &PrimePower,
    ell: u64,
    cap: usize,
) -> Result<VerificationReport> {
    let parameters = Query::Sylow {
        n,
        q: q.clone(),
        ell,
    };
    let prediction = match predict_gl_sylow(n, q, ell) {
        Ok(pred) => pred,
        Err(Error::Domain(msg)) => {
            return Ok(VerificationReport {
                parameters,
                predicted: None,
                observed: None,
                verdict: Verdict::SkippedOutOfScope,
                notes: vec![msg],
            })
        }
        Err(other) => return Err(other),
    };
    let too_large = VerificationReport {
        parameters: parameters.clone(),
        predicted: Some(Prediction::Sylow(prediction.clone())),
        observed: None,
        verdict: Verdict::SkippedTooLarge,
        notes: vec![format!(
            "|GL_{n}(F_{q})| = {} exceeds the cap {cap}",
            gl_order(n, q)
        )],
    };
    if gl_order(n, q).to_usize().is_none_or(|o| o > cap) {
        return Ok(too_large);
    }
    let group = match enumerate_gl(n, q, cap) {
        Ok(g) => g,
        Err(Error::CapExceeded { .. }) => return Ok(too_large),
        Err(other) => return Err(other),
    };
    verify_sylow_in(&group, n, q, ell, prediction)
}

/// Verification against an already enumerated `GL_n(F_q)`.
pub fn verify_sylow_in(
    group: &MatrixGroup,
    n: u32,
    q: &PrimePower,
    ell: u64,
    prediction: SylowPrediction,
) -> Result<VerificationReport> {
    let sylow = sylow_subgroup(group, ell)?;
    let structure = structure_report(&sylow, ell)?;
    let sylow_order_exponent = ell_adic_valuation(group.order() as u64, ell)?;
    let omega_one = sylow
        .elements()
        .iter()
        .filter(|x| x.pow(ell).is_identity())
        .count() as u64;
    let mut notes = Vec::new();

    let confirmed = match prediction.clause {
        SylowClause::ElementaryAbelian => {
            let r = prediction.r;
            let expected_exp = prediction.order_exponent.expect("first clause carries r*i");
            let order_ok = sylow_order_exponent as u64 == expected_exp
                && structure.order == ell.pow(expected_exp as u32);
            if r == 0 {
                order_ok
            } else {
                // abelian of order ell^(ri), exponent ell^i, and exactly ell^r
                // elements killed by ell: this pins the type (ell^i)^r
                let type_ok = structure.is_abelian
                    && Some(structure.exponent) == prediction.group_exponent
                    && omega_one == ell.pow(r as u32);
                let elementary_ok =
                    structure.is_elementary_abelian == prediction.is_elementary_abelian();
                if prediction.i > 1 {
                    notes.push(format!(
                        "{ell}^{} exactly divides q^m_ell - 1: the Sylow is abelian of type \
                         ({ell}^{})^{r}, not elementary abelian",
                        prediction.i, prediction.i
                    ));
                }
                order_ok && type_ok && elementary_ok
            }
        }
        SylowClause::MetabelianBound => structure
            .derived_length
            .is_some_and(|d| d <= prediction.derived_length_bound),
    };

    Ok(VerificationReport {
        parameters: Query::Sylow {
            n,
            q: q.clone(),
            ell,
        },
        predicted: Some(Prediction::Sylow(prediction)),
        observed: Some(Observation::Sylow(SylowObservation {
            structure,
            sylow_order_exponent,
            omega_one,
        })),
        verdict: if confirmed {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        },
        notes,
    })
}

/// Checks a trivial-action bound on a realized action: `image` is a group of
/// invertible `m x m` matrices over `Z/p^e`, acting on `A = (Z/p^e)^m`.
pub fn verify_action_bound(
    image: &MatrixGroup,
    ell: u64,
    theorem: ActionTheorem,
) -> Result<VerificationReport> {
    let m = image.dim() as u64;
    let p = image.modulus().prime();
    let parameters = Query::Action {
        m,
        p,
        e: image.modulus().exponent(),
        ell,
        theorem,
    };
    let mut notes = vec![
        "works with the image of the action; the reduction from G to G/N is assumed".to_string(),
    ];
    let Some(bound) = action_bound(theorem, m, p, ell)? else {
        notes.push(format!(
            "hypothesis ell > m / m_ell fails for m = {m}, p = {p}, ell = {ell}"
        ));
        return Ok(VerificationReport {
            parameters,
            predicted: None,
            observed: None,
            verdict: Verdict::SkippedOutOfScope,
            notes,
        });
    };
    let sylow = sylow_subgroup(image, ell)?;
    let series = derived_series(&sylow)?;
    let derived_orders: Vec<u64> = series.iter().map(|g| g.order() as u64).collect();
    let term_trivial = match series.get(bound.nu as usize) {
        Some(term) => term.is_trivial(),
        // past the end of a series that reached the trivial group
        None => series.last().is_some_and(MatrixGroup::is_trivial),
    };
    Ok(VerificationReport {
        parameters,
        predicted: Some(Prediction::Action(bound)),
        observed: Some(Observation::Action(ActionObservation {
            sylow_order: sylow.order() as u64,
            derived_orders,
            derived_term_trivial: term_trivial,
        })),
        verdict: if term_trivial {
            Verdict::Confirmed
        } else {
            Verdict::Refuted
        },
        notes,
    })
}

/// Every `(n, q, ell)` with `1 <= n <= n_max`, `q` from `q_set`, `ell` a
/// prime up to `ell_max` other than `p`; each `GL_n(F_q)` is enumerated once.
pub fn sweep_sylow_predictions(
    n_max: u32,
    q_set: &[PrimePower],
    ell_max: u64,
    cap: usize,
) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for q in q_set {
        let ells: Vec<u64> = (2..=ell_max)
            .filter(|&l| is_prime(l) && l != q.p())
            .collect();
        for n in 1..=n_max {
            let fits = gl_order(n, q).to_usize().is_some_and(|o| o <= cap);
            if !fits {
                for &ell in &ells {
                    reports.push(verify_sylow_prediction(n, q, ell, cap)?);
                }
                continue;
            }
            let group = enumerate_gl(n, q, cap)?;
            let batch = ells
                .par_iter()
                .map(|&ell| verify_sylow_in(&group, n, q, ell, predict_gl_sylow(n, q, ell)?))
                .collect::<Result<Vec<_>>>()?;
            reports.extend(batch);
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matgroup::{enumerate_gl, DEFAULT_CAP};

    fn pp(p: u64, f: u32) -> PrimePower {
        PrimePower::new(p, f).unwrap()
    }

    #[test]
    fn prediction_examples() {
        let a = predict_gl_sylow(2, &pp(2, 1), 3).unwrap();
        assert_eq!(a.clause, SylowClause::ElementaryAbelian);
        assert_eq!((a.m_ell, a.r, a.i, a.order_exponent), (2, 1, 1, Some(1)));

        let b = predict_gl_sylow(3, &pp(2, 1), 7).unwrap();
        assert_eq!((b.m_ell, b.r, b.i, b.order_exponent), (3, 1, 1, Some(1)));

        let c = predict_gl_sylow(2, &pp(3, 1), 2).unwrap();
        assert_eq!(c.clause, SylowClause::MetabelianBound);
        assert_eq!((c.m_ell, c.r, c.derived_length_bound), (1, 1, 2));

        let trivial = predict_gl_sylow(3, &pp(2, 1), 11).unwrap();
        assert_eq!(trivial.clause, SylowClause::ElementaryAbelian);
        assert_eq!((trivial.r, trivial.order_exponent), (0, Some(0)));

        // ell^r <= floor(n/m_ell) < ell^(r+1) with floor = 9, ell = 2: r = 3
        let d = predict_gl_sylow(9, &pp(3, 1), 2).unwrap();
        assert_eq!((d.r, d.derived_length_bound), (3, 4));

        assert!(predict_gl_sylow(2, &pp(3, 1), 3).is_err());
        assert!(predict_gl_sylow(2, &pp(3, 1), 4).is_err());
        assert!(predict_gl_sylow(0, &pp(3, 1), 2).is_err());
    }

    #[test]
    fn gt1_examples() {
        // p = 7 = 1 mod 3, m = 1
        assert!(gt1_bound(1, 7, 3).unwrap().is_some());
        let b = gt1_bound(5, 2, 3).unwrap().unwrap();
        assert_eq!((b.m_ell, b.nu), (2, 1));
        assert!(gt1_bound(6, 2, 3).unwrap().is_none());
        assert!(gt1_bound(2, 3, 3).is_err());
        assert!(gt1_bound(0, 2, 3).is_err());
    }

    #[test]
    fn gt2_and_ts1_examples() {
        assert_eq!(gt2_bound(3, 5, 2).unwrap().nu, 2);
        assert_eq!(gt2_bound(1, 7, 3).unwrap().nu, 1);
        assert_eq!(gt2_bound(1, 2, 3).unwrap().nu, 0);
        assert_eq!(gt2_bound(2, 2, 3).unwrap().nu, 1);
        assert_eq!(ts1_bound(5, 2, 3).unwrap().nu, 1);
        assert_eq!(ts1_bound(1, 2, 5).unwrap().nu, 0);
        // 2^2 > 4 fails, 2^3 > 4 holds
        assert_eq!(ts1_bound(4, 3, 2).unwrap().nu, 3);
        let ts1 = ts1_bound(4, 3, 2).unwrap();
        assert!(ts1.hypotheses.iter().any(|h| h.contains("normal")));
        assert_eq!(ts1.conclusion, "L^(3) acts trivially");
    }

    #[test]
    fn verify_sylow_examples() {
        let r = verify_sylow_prediction(2, &pp(2, 1), 3, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let r = verify_sylow_prediction(2, &pp(3, 1), 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let r = verify_sylow_prediction(3, &pp(2, 1), 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::SkippedOutOfScope);
        let r = verify_sylow_prediction(3, &pp(7, 1), 3, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::SkippedTooLarge);
        let r = verify_sylow_prediction(2, &pp(2, 1), 3, 5).unwrap();
        assert_eq!(r.verdict, Verdict::SkippedTooLarge);
    }

    #[test]
    fn non_elementary_first_clause() {
        // GL_1(F_5) = C_4: its 2-Sylow is abelian of type (4), not (2, 2)
        let pred = predict_gl_sylow(1, &pp(5, 1), 2).unwrap();
        assert_eq!((pred.r, pred.i, pred.group_exponent), (1, 2, Some(4)));
        assert!(!pred.is_elementary_abelian());
        let r = verify_sylow_prediction(1, &pp(5, 1), 2, DEFAULT_CAP).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let Some(Observation::Sylow(obs)) = r.observed else {
            panic!()
        };
        assert!(!obs.structure.is_elementary_abelian);
        assert_eq!(obs.structure.exponent, 4);
    }

    #[test]
    fn refutation_is_detected() {
        // feed a deliberately wrong prediction through the comparison
        let g = enumerate_gl(2, &pp(3, 1), DEFAULT_CAP).unwrap();
        let mut wrong = predict_gl_sylow(2, &pp(3, 1), 2).unwrap();
        wrong.derived_length_bound = 1;
        let r = verify_sylow_in(&g, 2, &pp(3, 1), 2, wrong).unwrap();
        assert_eq!(r.verdict, Verdict::Refuted);
        let mut wrong = predict_gl_sylow(2, &pp(2, 1), 3).unwrap();
        wrong.order_exponent = Some(2);
        let g = enumerate_gl(2, &pp(2, 1), DEFAULT_CAP).unwrap();
        assert_eq!(
            verify_sylow_in(&g, 2, &pp(2, 1), 3, wrong).unwrap().verdict,
            Verdict::Refuted
        );
    }

    #[test]
    fn verify_action_examples() {
        let gl23 = enumerate_gl(2, &pp(3, 1), DEFAULT_CAP).unwrap();
        let r = verify_action_bound(&gl23, 2, ActionTheorem::Gt2).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);
        let Some(Observation::Action(obs)) = &r.observed else {
            panic!()
        };
        assert_eq!(obs.derived_orders, vec![16, 4, 1]);

        let gl27 = enumerate_gl(2, &pp(7, 1), DEFAULT_CAP).unwrap();
        let s = sylow_subgroup(&gl27, 3).unwrap();
        let r = verify_action_bound(&s, 3, ActionTheorem::Gt1).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed);

        let trivial = MatrixGroup::trivial(3, crate::matgroup::Modulus::new(5, 1).unwrap());
        for theorem in [ActionTheorem::Gt1, ActionTheorem::Gt2, ActionTheorem::Ts1] {
            for ell in [2, 3, 7] {
                let r = verify_action_bound(&trivial, ell, theorem).unwrap();
                assert!(matches!(
                    r.verdict,
                    Verdict::Confirmed | Verdict::SkippedOutOfScope
                ));
            }
        }
        assert!(verify_action_bound(&gl23, 3, ActionTheorem::Gt2).is_err());
    }
}
