//! Class-group descent.
//!
//! Class numbers and ranks are trusted inputs; nothing here computes a class
//! group. The deductions are:
//!
//! - Grün's cyclic class group statements ([`check_pg0`], [`check_pg1`]);
//! - the rank divisibility for cyclic extensions of prime degree and its
//!   corollary ([`check_pgal`], [`comes_from`]);
//! - descent in a normal `ell`-extension `L/k` ([`deduce_descent`]): if the
//!   `nu`-th derived subgroup `G^(nu)` of `G = Gal(L/k)` acts trivially on
//!   `C = Cl_p(L)`, then the norm to the fixed field `F` of `G^(nu)` acts on
//!   `C` as multiplication by `|G^(nu)|`, which is prime to `p`. So `C` maps
//!   injectively into `Cl_p(F)`: it comes from `F`.
//!
//! In [`check_pgal`] the rank is that of the relative part `Cl_p(K/k)`; in
//! [`comes_from`] it is the rank of the full `Cl_p(K)`. Callers must supply
//! the right one.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{check_prime, is_prime, min_nu, multiplicative_order};
use crate::error::{domain, Error, Result};
use crate::gruen::{gt1_bound, gt2_bound};

/// An abelian `p`-group `Z/p^e_1 x ... x Z/p^e_m` with `e_1 >= ... >= e_m >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbelianGroupType")]
pub struct AbelianGroupType {
    p: u64,
    exponents: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAbelianGroupType {
    p: u64,
    exponents: Vec<u32>,
}

impl TryFrom<RawAbelianGroupType> for AbelianGroupType {
    type Error = Error;

    fn try_from(raw: RawAbelianGroupType) -> Result<Self> {
        Self::new(raw.p, raw.exponents)
    }
}

impl AbelianGroupType {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self> {
        check_prime("p", p)?;
        if exponents.contains(&0) {
            return Err(domain("exponents must be positive"));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain("exponents must be nonincreasing"));
        }
        Ok(Self { p, exponents })
    }

    /// From the orders of the cyclic factors, e.g. `[2, 2, 2]` for `(2,2,2)`.
    pub fn from_invariants(invariants: &[u64]) -> Result<Self> {
        let mut p = None;
        let mut exponents = Vec::with_capacity(invariants.len());
        for &d in invariants {
            let base = (2..=d)
                .find(|k| d % k == 0)
                .ok_or_else(|| domain(format!("invariant {d} is not a prime power > 1")))?;
            let mut rest = d;
            let mut e = 0;
            while rest % base == 0 {
                rest /= base;
                e += 1;
            }
            if rest != 1 {
                return Err(domain(format!("invariant {d} is not a prime power")));
            }
            if *p.get_or_insert(base) != base {
                return Err(domain("invariants must be powers of one prime"));
            }
            exponents.push(e);
        }
        let p = p.ok_or_else(|| domain("the trivial group has no prime"))?;
        exponents.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(p, exponents)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.exponents.iter().sum::<u32>())
    }
}

impl fmt::Display for AbelianGroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|&e| BigUint::from(self.p).pow(e).to_string())
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogId {
    /// Either nonabelian group of order `ell^3`: `G'` cyclic of order `ell`,
    /// `G/G'` of type `(ell, ell)`. The two are not distinguished.
    NonabelianOrderEllCubed,
    /// `Gal(k^3/k)` for a 2-class field tower `k < k^1 < k^2 < ...` of at
    /// least three steps: fixed fields of `G, G', G'', G'''` are
    /// `k, k^1, k^2, k^3`.
    #[serde(rename = "two_group_tower_step_3")]
    TwoGroupTowerStep3,
}

/// The Galois group of `L/k`, described only through its derived series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GaloisDescriptor {
    Catalog {
        catalog_id: CatalogId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ell: Option<u64>,
    },
    Explicit {
        order: u64,
        /// `[|G : G'|, |G' : G''|, ...]`, ending at the trivial group.
        derived_indices: Vec<u64>,
        /// Fixed fields of `G, G', ..., G^(d) = 1`; defaults are generated.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field_labels: Option<Vec<String>>,
    },
}

/// What the deductions need from a [`GaloisDescriptor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedStructure {
    pub order: Option<u64>,
    pub derived_length: u32,
    /// `derived_length + 1` labels: the fixed field of each `G^(j)`.
    pub fixed_fields: Vec<String>,
    pub catalog: Option<CatalogId>,
}

pub const MAXIMAL_ABELIAN_SUBFIELD: &str = "maximal abelian subfield K";

fn derived_label(j: usize) -> String {
    match j {
        0 => "k".to_string(),
        _ => format!("fixed field of G^({j})"),
    }
}

impl GaloisDescriptor {
    pub fn nonabelian_order_ell_cubed(ell: u64) -> Self {
        GaloisDescriptor::Catalog {
            catalog_id: CatalogId::NonabelianOrderEllCubed,
            ell: Some(ell),
        }
    }

    pub fn two_group_tower_step_3() -> Self {
        GaloisDescriptor::Catalog {
            catalog_id: CatalogId::TwoGroupTowerStep3,
            ell: Some(2),
        }
    }

    /// Validates the descriptor as the Galois group of an `ell`-extension.
    pub fn derived_structure(&self, ell: u64) -> Result<DerivedStructure> {
        check_prime("ell", ell)?;
        match self {
            GaloisDescriptor::Catalog {
                catalog_id,
                ell: own,
            } => {
                if own.is_some_and(|own| own != ell) {
                    return Err(Error::Malformed(format!(
                        "descriptor is for ell = {}, scenario has ell = {ell}",
                        own.unwrap()
                    )));
                }
                match catalog_id {
                    CatalogId::NonabelianOrderEllCubed => Ok(DerivedStructure {
                        order: ell.checked_pow(3),
                        derived_length: 2,
                        fixed_fields: vec!["k".into(), MAXIMAL_ABELIAN_SUBFIELD.into(), "L".into()],
                        catalog: Some(*catalog_id),
                    }),
                    CatalogId::TwoGroupTowerStep3 => {
                        if ell != 2 {
                            return Err(Error::Malformed(
                                "the class field tower descriptor is a 2-group".into(),
                            ));
                        }
                        Ok(DerivedStructure {
                            order: None,
                            derived_length: 3,
                            fixed_fields: vec!["k".into(), "k¹".into(), "k²".into(), "k³".into()],
                            catalog: Some(*catalog_id),
                        })
                    }
                }
            }
            GaloisDescriptor::Explicit {
                order,
                derived_indices,
                field_labels,
            } => {
                let mut product: u64 = 1;
                for &idx in derived_indices {
                    if idx < 2 {
                        return Err(Error::Malformed(format!(
                            "derived index {idx} must exceed 1 (the series stops at the trivial group)"
                        )));
                    }
                    product = product
                        .checked_mul(idx)
                        .ok_or_else(|| Error::Malformed("group order overflows".into()))?;
                }
                if product != *order {
                    return Err(Error::Malformed(format!(
                        "derived indices multiply to {product}, not the order {order}"
                    )));
                }
                let mut rest = *order;
                while rest % ell == 0 {
                    rest /= ell;
                }
                if rest != 1 {
                    return Err(Error::Malformed(format!(
                        "order {order} is not a power of ell = {ell}"
                    )));
                }
                // a noncyclic abelianization is forced for nonabelian ell-groups
                if derived_indices.len() >= 2 && derived_indices[0] < ell * ell {
                    return Err(Error::Malformed(format!(
                        "|G : G'| = {} is too small for a nonabelian {ell}-group",
                        derived_indices[0]
                    )));
                }
                let d = derived_indices.len();
                let fixed_fields = match field_labels {
                    Some(labels) if labels.len() != d + 1 => {
                        return Err(Error::Malformed(format!(
                            "expected {} field labels, got {}",
                            d + 1,
                            labels.len()
                        )))
                    }
                    Some(labels) => labels.clone(),
                    None => {
                        let mut labels: Vec<String> = (0..d).map(derived_label).collect();
                        labels.push("L".into());
                        labels
                    }
                };
                Ok(DerivedStructure {
                    order: Some(*order),
                    derived_length: d as u32,
                    fixed_fields,
                    catalog: None,
                })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    DivisibilityHolds,
    DivisibilityFails,
    RankDivisibilityPass,
    RankDivisibilityFail,
    ComesFromSubfield,
    SubgroupEmbeds,
    NoConclusion,
}

/// One applied rule, with its instantiated parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Justification {
    pub rule: String,
    pub statement: String,
    pub parameters: BTreeMap<String, Value>,
}

impl Justification {
    fn new(rule: &str, statement: impl Into<String>, parameters: Value) -> Self {
        let parameters = match parameters {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Self {
            rule: rule.to_string(),
            statement: statement.into(),
            parameters,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deduction {
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
    /// Larger subfields the same piece also comes from.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub also_comes_from: Vec<String>,
    pub justification: Vec<Justification>,
}

impl Deduction {
    fn plain(conclusion: Conclusion, justification: Vec<Justification>) -> Self {
        Self {
            conclusion,
            subfield: None,
            nu: None,
            also_comes_from: Vec::new(),
            justification,
        }
    }

    /// Whether `C` is shown to map injectively into the class group of `field`.
    pub fn descends_to(&self, field: &str) -> bool {
        matches!(
            self.conclusion,
            Conclusion::ComesFromSubfield | Conclusion::SubgroupEmbeds
        ) && (self.subfield.as_deref() == Some(field)
            || self.also_comes_from.iter().any(|f| f == field))
    }
}

/// `G = G'` and `Cl(L)` cyclic of order `h` force `c^n = 1`, i.e. `h | n`.
/// A failure means the asserted hypotheses are inconsistent.
pub fn check_pg0(n: u64, h: u64) -> Result<Deduction> {
    if n == 0 || h == 0 {
        return Err(domain("degree and class number must be positive"));
    }
    let holds = n.is_multiple_of(h);
    let statement = if holds {
        format!("G perfect and Cl(L) cyclic of order {h}: c^{n} = 1 holds since {h} | {n}")
    } else {
        format!(
            "c^{n} = 1 would force {h} | {n}; the hypotheses (G perfect, Cl(L) cyclic of \
             order {h}) cannot all hold"
        )
    };
    Ok(Deduction::plain(
        if holds {
            Conclusion::DivisibilityHolds
        } else {
            Conclusion::DivisibilityFails
        },
        vec![Justification::new(
            "pg0",
            statement,
            json!({ "n": n, "h": h, "holds": holds }),
        )],
    ))
}

/// `Cl(L)` cyclic, `K` the maximal abelian subextension: `h_L | (L:K) h_K`.
pub fn check_pg1(h_l: u64, index_lk: u64, h_k: u64) -> Result<Deduction> {
    if h_l == 0 || index_lk == 0 || h_k == 0 {
        return Err(domain("class numbers and the index must be positive"));
    }
    let bound = index_lk as u128 * h_k as u128;
    let holds = bound.is_multiple_of(h_l as u128);
    let statement = if holds {
        format!("h_L = {h_l} divides (L:K) h_K = {bound}")
    } else {
        format!(
            "h_L = {h_l} does not divide (L:K) h_K = {bound}; the hypotheses (Cl(L) cyclic, \
             K maximal abelian) cannot all hold"
        )
    };
    Ok(Deduction::plain(
        if holds {
            Conclusion::DivisibilityHolds
        } else {
            Conclusion::DivisibilityFails
        },
        vec![Justification::new(
            "pg1",
            statement,
            json!({ "h_L": h_l, "index_LK": index_lk, "h_K": h_k, "holds": holds }),
        )],
    ))
}

fn prime_degree_order(n: u64, p: u64) -> Result<u64> {
    if !is_prime(n) {
        return Err(domain(format!("degree n = {n} is not prime")));
    }
    check_prime("p", p)?;
    if n == p {
        return Err(domain(format!("p = {p} divides the degree n = {n}")));
    }
    multiplicative_order(p, n)
}

fn pgal_record(n: u64, p: u64, f: u64, rank: u64) -> Justification {
    Justification::new(
        "pgal",
        format!("K/k cyclic of prime degree {n}, f = ord({p} mod {n}) = {f}: f divides the {p}-rank of Cl(K/k)"),
        json!({ "n": n, "p": p, "f": f, "rank": rank }),
    )
}

/// `f = ord(p mod n)` must divide the `p`-rank of the relative class group.
pub fn check_pgal(n: u64, p: u64, observed_rank: u64) -> Result<Deduction> {
    let f = prime_degree_order(n, p)?;
    let pass = observed_rank.is_multiple_of(f);
    Ok(Deduction::plain(
        if pass {
            Conclusion::RankDivisibilityPass
        } else {
            Conclusion::RankDivisibilityFail
        },
        vec![pgal_record(n, p, f, observed_rank)],
    ))
}

/// If `Cl_p(K)` has rank `< f` then it comes from `k`.
pub fn comes_from(observed_rank: u64, n: u64, p: u64) -> Result<Deduction> {
    let f = prime_degree_order(n, p)?;
    let mut justification = vec![pgal_record(n, p, f, observed_rank)];
    if observed_rank >= f {
        return Ok(Deduction::plain(Conclusion::NoConclusion, justification));
    }
    justification.push(Justification::new(
        "pgal_corollary",
        format!(
            "rank {observed_rank} < f = {f}, so Cl_{p}(K/k) is trivial and the norm \
             Cl_{p}(K) -> Cl_{p}(k) is injective"
        ),
        json!({ "n": n, "p": p, "f": f, "rank": observed_rank }),
    ));
    Ok(Deduction {
        conclusion: Conclusion::ComesFromSubfield,
        subfield: Some("k".into()),
        nu: None,
        also_comes_from: Vec::new(),
        justification,
    })
}

/// Descent in a normal `ell`-extension `L/k` with Galois group described by
/// `galois`, for `C = Cl_p(L)` of `p`-rank `observed_rank`.
///
/// `nu` is the generic bound from `min_nu(m, ord(p mod ell), ell)`. When
/// `0 < nu < d` (`d` the derived length), `C` comes from the fixed field of
/// `G^(nu)`; `nu = 0` gives the base field. When `G^(nu)` is already trivial
/// there is nothing to conclude.
pub fn deduce_descent(
    galois: &GaloisDescriptor,
    ell: u64,
    p: u64,
    observed_rank: u64,
) -> Result<Deduction> {
    check_prime("ell", ell)?;
    check_prime("p", p)?;
    if p == ell {
        return Err(domain(format!("p must differ from ell (both are {p})")));
    }
    let structure = galois.derived_structure(ell)?;
    let m_ell = multiplicative_order(p, ell)?;
    let m = observed_rank;
    let nu = min_nu(m, m_ell, ell);
    let d = structure.derived_length;

    let mut justification = Vec::new();
    let params = json!({ "m": m, "p": p, "ell": ell, "m_ell": m_ell, "nu": nu });
    // G is an ell-group, hence its own ell-Sylow
    if m == 0 {
        justification.push(Justification::new(
            "trivial_piece",
            format!("Cl_{p}(L) is trivial"),
            params,
        ));
    } else if gt1_bound(m, p, ell)?.is_some() {
        justification.push(Justification::new(
            "gt1",
            format!(
                "{ell} > {m}/{m_ell}, so G' acts trivially on Cl_{p}(L) (G is its own {ell}-Sylow)"
            ),
            params,
        ));
    } else {
        let bound = gt2_bound(m, p, ell)?;
        debug_assert_eq!(bound.nu, nu);
        justification.push(Justification::new(
            "gt2",
            format!("{nu} is least with {ell}^{nu} > {m}/{m_ell}, so G^({nu}) acts trivially on Cl_{p}(L)"),
            params,
        ));
    }

    if nu >= d {
        justification.push(Justification::new(
            "derived_series",
            format!("G^({nu}) is already trivial (derived length {d}); nothing descends"),
            json!({ "nu": nu, "derived_length": d }),
        ));
        return Ok(Deduction {
            conclusion: Conclusion::NoConclusion,
            subfield: None,
            nu: Some(nu),
            also_comes_from: Vec::new(),
            justification,
        });
    }

    let field = structure.fixed_fields[nu as usize].clone();
    let also: Vec<String> = structure.fixed_fields[nu as usize + 1..d as usize].to_vec();
    let injective = format!(
        "G^({nu}) acts trivially and its order is prime to {p}, so the norm from L to \
         {field} (the fixed field of G^({nu})) is injective on Cl_{p}(L)"
    );
    let fields = json!({ "nu": nu, "subfield": field, "p": p, "ell": ell, "m": m });
    let (conclusion, last) = match structure.catalog {
        Some(CatalogId::NonabelianOrderEllCubed) => (
            Conclusion::ComesFromSubfield,
            Justification::new(
                "nonabelian_ell_cubed",
                format!("{injective}; Cl_{p}(L) comes from {field}"),
                fields,
            ),
        ),
        Some(CatalogId::TwoGroupTowerStep3) => (
            Conclusion::SubgroupEmbeds,
            Justification::new(
                "two_class_field_tower",
                format!("{injective}; Cl_{p}({field}) has a subgroup isomorphic to C"),
                fields,
            ),
        ),
        None => (
            Conclusion::ComesFromSubfield,
            Justification::new(
                "fixed_field_descent",
                format!("{injective}; Cl_{p}(L) comes from {field}"),
                fields,
            ),
        ),
    };
    justification.push(last);
    Ok(Deduction {
        conclusion,
        subfield: Some(field),
        nu: Some(nu),
        also_comes_from: also,
        justification,
    })
}

/// `h` of a cyclic `Cl(L)` with `|G| = n`, `G` assumed perfect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pg0Data {
    pub n: u64,
    pub h: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pg1Data {
    #[serde(rename = "h_L")]
    pub h_l: u64,
    pub index: u64,
    #[serde(rename = "h_K")]
    pub h_k: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassNumbers {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg0: Option<Pg0Data>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg1: Option<Pg1Data>,
}

/// A cyclic extension `K/k` of prime degree `n`, with the `p`-rank of the
/// relative class group and/or of the full `Cl_p(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimeDegreeData {
    pub n: u64,
    pub p: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_rank: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<u64>,
}

/// A descent scenario as read from a file. Every block is optional, but the
/// Galois block (`galois`, `ell`, `p` and a rank) must be complete if present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub galois: Option<GaloisDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ell: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed_rank: Option<u64>,
    /// Alternative to `observed_rank`: the type of `Cl_p(L)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_group: Option<AbelianGroupType>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_numbers: Option<ClassNumbers>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_degree: Option<PrimeDegreeData>,
}

/// Deductions drawn from a [`Scenario`], one per supplied block.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descent: Option<Deduction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg0: Option<Deduction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg1: Option<Deduction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pgal: Option<Deduction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comes_from: Option<Deduction>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
    }

    /// The `p`-rank of `Cl_p(L)`, reconciling `observed_rank` and `class_group`.
    pub fn rank(&self) -> Result<Option<u64>> {
        match (&self.class_group, self.observed_rank) {
            (Some(cg), rank) => {
                if self.p.is_some_and(|p| p != cg.p()) {
                    return Err(Error::Malformed(format!(
                        "class_group is a {}-group but p = {}",
                        cg.p(),
                        self.p.unwrap()
                    )));
                }
                if rank.is_some_and(|r| r != cg.rank() as u64) {
                    return Err(Error::Malformed(format!(
                        "observed_rank {} disagrees with class_group {cg}",
                        rank.unwrap()
                    )));
                }
                Ok(Some(cg.rank() as u64))
            }
            (None, rank) => Ok(rank),
        }
    }

    pub fn evaluate(&self) -> Result<ScenarioReport> {
        let mut report = ScenarioReport::default();
        let rank = self.rank()?;
        match (&self.galois, self.ell, self.p, rank) {
            (Some(galois), Some(ell), Some(p), Some(m)) => {
                report.descent = Some(deduce_descent(galois, ell, p, m)?);
            }
            (None, None, None, None) => {}
            _ => {
                return Err(Error::Malformed(
                    "a descent scenario needs galois, ell, p and observed_rank (or class_group)"
                        .into(),
                ))
            }
        }
        if let Some(numbers) = &self.class_numbers {
            if let Some(pg0) = &numbers.pg0 {
                report.pg0 = Some(check_pg0(pg0.n, pg0.h)?);
            }
            if let Some(pg1) = &numbers.pg1 {
                report.pg1 = Some(check_pg1(pg1.h_l, pg1.index, pg1.h_k)?);
            }
        }
        if let Some(block) = &self.prime_degree {
            if let Some(r) = block.relative_rank {
                report.pgal = Some(check_pgal(block.n, block.p, r)?);
            }
            if let Some(r) = block.rank {
                report.comes_from = Some(comes_from(r, block.n, block.p)?);
            }
        }
        if report == ScenarioReport::default() {
            return Err(Error::Malformed(
                "scenario contains nothing to deduce".into(),
            ));
        }
        Ok(report)
    }
}
