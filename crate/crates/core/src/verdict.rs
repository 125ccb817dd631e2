//! Case analysis for "is there an N-tiling?": computed searches plus imported rules.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::constructions::{self, Tiling};
use crate::error::{Error, Result};
use crate::exact_arith::QuadExt;
use crate::number_theory::{forms_of, is_prime, NForm, NFormKind};
use crate::search_3a2b::{run_search, Pruning, SearchOptions, SearchReport, Shape};
use crate::search_equilateral::{self, Branch, EquilateralReport};
use crate::tile_models::{AngleCase, Gamma};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    ImpossibleComputed,
    ImpossibleCited,
    Inconclusive,
    TilingExists,
}

impl Status {
    pub fn is_impossible(self) -> bool {
        matches!(self, Status::ImpossibleComputed | Status::ImpossibleCited)
    }
}

/// An imported theorem, applied as a predicate on N.
#[derive(Debug, Clone, Copy)]
pub struct Rule {
    pub id: &'static str,
    pub statement: &'static str,
    /// True when the rule excludes N.
    pub excludes: fn(u32) -> bool,
}

fn has_form(n: u32, kinds: &[NFormKind]) -> bool {
    forms_of(n as u64).iter().any(|f| kinds.contains(&f.kind))
}

pub const RULES: [Rule; 5] = [
    Rule {
        id: "commensurable-forms",
        statement:
            "If all tile angles are rational multiples of pi, then N is a square, a sum of two \
                    squares, or two, three or six times a square.",
        excludes: |n| forms_of(n as u64).is_empty(),
    },
    Rule {
        id: "right-tile-isosceles",
        statement:
            "An isosceles triangle tiled by a right-angled tile has N a square, a sum of two \
                    squares, or six times a square.",
        excludes: |n| {
            !has_form(
                n,
                &[
                    NFormKind::Square,
                    NFormKind::SumTwoSquares,
                    NFormKind::SixTimesSquare,
                ],
            )
        },
    },
    Rule {
        id: "isosceles-gamma-2alpha",
        statement:
            "An isosceles triangle with base angles alpha tiled by a tile with gamma = 2 alpha \
                    has N neither prime nor twice a prime.",
        excludes: |n| is_prime(n as u64) || (n % 2 == 0 && is_prime(n as u64 / 2)),
    },
    Rule {
        id: "gamma-2pi3-at-least-12",
        statement:
            "A tiling by a tile with angles (alpha, beta, 2pi/3), alpha not a rational multiple \
                    of pi and the tile not similar to ABC, needs at least 12 tiles.",
        excludes: |n| n < 12,
    },
    Rule {
        id: "equilateral-tile-rational",
        statement:
            "A tile with gamma = pi/3 or 2pi/3 that tiles an equilateral triangle has rational \
                    side ratios, so only rational roots s need to be examined.",
        excludes: |_| false,
    },
];

pub fn rule(id: &str) -> &'static Rule {
    RULES
        .iter()
        .find(|r| r.id == id)
        .expect("rule id is registered")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Citation {
        rule: String,
        statement: String,
    },
    Transcript {
        search: String,
        /// True when every slice of the search ran; false after stopping at the first hit.
        complete: bool,
        hits: usize,
        /// SHA-256 of the canonical JSON of the hit list.
        digest: String,
    },
    Construction {
        family: String,
        params: String,
        tiles: usize,
        verified: bool,
    },
    Forms {
        forms: Vec<NForm>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: AngleCase,
    pub status: Status,
    pub evidence: Vec<Evidence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Overall {
    NoTiling,
    TilingExists,
    Unknown,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCertificate {
    pub n: u32,
    pub overall: Overall,
    pub cases: Vec<CaseResult>,
}

impl VerdictCertificate {
    pub fn case(&self, case: AngleCase) -> &CaseResult {
        self.cases
            .iter()
            .find(|c| c.case == case)
            .expect("every case is evaluated")
    }
}

pub fn digest<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("hit lists serialize");
    hex::encode(Sha256::digest(json.as_bytes()))
}

fn citation(id: &str) -> Evidence {
    let r = rule(id);
    Evidence::Citation {
        rule: r.id.to_string(),
        statement: r.statement.to_string(),
    }
}

fn cited_case(case: AngleCase, id: &str, n: u32) -> CaseResult {
    let status = if (rule(id).excludes)(n) {
        Status::ImpossibleCited
    } else {
        Status::Inconclusive
    };
    CaseResult {
        case,
        status,
        evidence: vec![citation(id)],
    }
}

/// A verified tiling for one of the closed forms of N.
pub fn construct_for_form(form: &NForm) -> Result<(String, String, Tiling)> {
    let q = QuadExt::int;
    let (a, b) = form.witness;
    let (a, b) = (a as u32, b as u32);
    Ok(match form.kind {
        NFormKind::Square => (
            "quadratic".into(),
            format!("n={a}"),
            constructions::gen_quadratic([q(16), q(9), q(25)], a)?,
        ),
        NFormKind::SumTwoSquares => (
            "biquadratic".into(),
            format!("e={a} f={b}"),
            constructions::biquadratic(a, b)?,
        ),
        NFormKind::TwiceSquare => {
            let half = constructions::gen_quadratic([q(9), q(16), q(25)], a)?;
            (
                "double".into(),
                format!("quadratic n={a}"),
                constructions::gen_double(&half)?,
            )
        }
        NFormKind::ThriceSquare => (
            "hexagonal".into(),
            format!("k={}", a - 1),
            constructions::gen_hexagonal(a - 1)?,
        ),
        NFormKind::SixTimesSquare => {
            let t = constructions::bisect_tiles(&constructions::gen_hexagonal(a - 1)?)?;
            ("bisected-hexagonal".into(), format!("k={}", a - 1), t)
        }
    })
}

fn commensurable_case(n: u32) -> Result<CaseResult> {
    let forms = forms_of(n as u64);
    let mut evidence = vec![
        citation("commensurable-forms"),
        Evidence::Forms {
            forms: forms.clone(),
        },
    ];
    if forms.is_empty() {
        return Ok(CaseResult {
            case: AngleCase::Commensurable,
            status: Status::ImpossibleCited,
            evidence,
        });
    }
    let mut status = Status::Inconclusive;
    for form in &forms {
        let Ok((family, params, t)) = construct_for_form(form) else {
            continue;
        };
        let verified = constructions::verify(&t)?.passed() && t.n() == n as usize;
        evidence.push(Evidence::Construction {
            family,
            params,
            tiles: t.n(),
            verified,
        });
        if verified {
            status = Status::TilingExists;
            break;
        }
    }
    Ok(CaseResult {
        case: AngleCase::Commensurable,
        status,
        evidence,
    })
}

fn transcript_3a2b(r: &SearchReport) -> Evidence {
    let label = match r.shape {
        Shape::Isosceles => "3a2b-isosceles",
        Shape::Scalene => "3a2b-scalene",
    };
    Evidence::Transcript {
        search: label.into(),
        complete: !r.stopped_early,
        hits: r.hits.len(),
        digest: digest(&r.hits),
    }
}

fn three_alpha_case(n: u32) -> Result<CaseResult> {
    let opts = SearchOptions {
        pruning: Pruning::Standard,
        stop_at_first_hit: true,
    };
    let iso = run_search(n, Shape::Isosceles, opts)?;
    let sca = run_search(n, Shape::Scalene, opts)?;
    let status = if iso.hits.is_empty() && sca.hits.is_empty() {
        Status::ImpossibleComputed
    } else {
        Status::Inconclusive
    };
    Ok(CaseResult {
        case: AngleCase::ThreeAlphaTwoBeta,
        status,
        evidence: vec![transcript_3a2b(&iso), transcript_3a2b(&sca)],
    })
}

fn transcript_equilateral(r: &EquilateralReport) -> Evidence {
    let label = match r.gamma {
        Gamma::PiOver3 => "equilateral-pi3",
        Gamma::TwoPiOver3 => "equilateral-2pi3",
    };
    Evidence::Transcript {
        search: label.into(),
        complete: true,
        hits: r.candidates.len(),
        digest: digest(&r.candidates),
    }
}

/// Conjugate-branch roots solve only the squared equation and are not counted against N.
fn direct_candidates(r: &EquilateralReport) -> usize {
    r.candidates
        .iter()
        .filter(|c| c.branch == Branch::Direct)
        .count()
}

fn gamma_two_pi_case(n: u32) -> Result<CaseResult> {
    let mut res = cited_case(AngleCase::GammaTwoPiOver3, "gamma-2pi3-at-least-12", n);
    let eq = search_equilateral::search(n, Gamma::TwoPiOver3)?;
    res.evidence.push(transcript_equilateral(&eq));
    Ok(res)
}

fn equilateral_case(n: u32) -> Result<CaseResult> {
    let pi3 = search_equilateral::search(n, Gamma::PiOver3)?;
    let two_pi3 = search_equilateral::search(n, Gamma::TwoPiOver3)?;
    let status = if direct_candidates(&pi3) + direct_candidates(&two_pi3) == 0 {
        Status::ImpossibleComputed
    } else {
        Status::Inconclusive
    };
    let evidence = vec![
        citation("equilateral-tile-rational"),
        transcript_equilateral(&pi3),
        transcript_equilateral(&two_pi3),
    ];
    Ok(CaseResult {
        case: AngleCase::GammaPiOver3Equilateral,
        status,
        evidence,
    })
}

/// The certificate for N, with cases in the order of [`AngleCase::ALL`].
pub fn verdict(n: u32) -> Result<VerdictCertificate> {
    if !(3..=100).contains(&n) {
        return Err(Error::OutOfRange {
            what: "N",
            value: n.to_string(),
        });
    }
    let cases = vec![
        commensurable_case(n)?,
        cited_case(AngleCase::RightTileIsosceles, "right-tile-isosceles", n),
        cited_case(AngleCase::GammaEquals2Alpha, "isosceles-gamma-2alpha", n),
        three_alpha_case(n)?,
        gamma_two_pi_case(n)?,
        equilateral_case(n)?,
    ];
    let overall = if cases.iter().any(|c| c.status == Status::TilingExists) {
        Overall::TilingExists
    } else if cases.iter().all(|c| c.status.is_impossible()) {
        Overall::NoTiling
    } else {
        Overall::Unknown
    };
    Ok(VerdictCertificate { n, overall, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_has_no_tiling() {
        let v = verdict(7).unwrap();
        assert_eq!(v.overall, Overall::NoTiling);
        assert_eq!(v.cases.len(), 6);
        assert!(v.cases.iter().all(|c| c.status.is_impossible()));
        assert_eq!(
            v.case(AngleCase::ThreeAlphaTwoBeta).status,
            Status::ImpossibleComputed
        );
        assert_eq!(
            v.case(AngleCase::GammaPiOver3Equilateral).status,
            Status::ImpossibleComputed
        );
    }

    #[test]
    fn four_is_quadratic() {
        let v = verdict(4).unwrap();
        assert_eq!(v.overall, Overall::TilingExists);
        let c = v.case(AngleCase::Commensurable);
        assert!(c.evidence.iter().any(|e| matches!(
            e,
            Evidence::Construction {
                tiles: 4,
                verified: true,
                ..
            }
        )));
    }

    #[test]
    fn fourteen_is_open() {
        let v = verdict(14).unwrap();
        assert_eq!(v.overall, Overall::Unknown);
        assert_eq!(
            v.case(AngleCase::RightTileIsosceles).status,
            Status::ImpossibleCited
        );
        assert_eq!(
            v.case(AngleCase::GammaEquals2Alpha).status,
            Status::ImpossibleCited
        );
        assert_eq!(
            v.case(AngleCase::ThreeAlphaTwoBeta).status,
            Status::Inconclusive
        );
    }

    #[test]
    fn rules() {
        let ex = |id: &str, n| (rule(id).excludes)(n);
        assert!(ex("isosceles-gamma-2alpha", 22) && !ex("isosceles-gamma-2alpha", 15));
        assert!(
            ex("right-tile-isosceles", 7)
                && !ex("right-tile-isosceles", 24)
                && !ex("right-tile-isosceles", 8)
        );
        assert!(ex("gamma-2pi3-at-least-12", 11) && !ex("gamma-2pi3-at-least-12", 12));
    }

    #[test]
    fn out_of_range() {
        assert!(verdict(2).is_err());
        assert!(verdict(101).is_err());
    }
}
