//! Brute force over integer tiles: every primitive (a, b, c) with a < b ≤ 120 obeying the law of
//! cosines, tested against (pa + qb ± rc)² = Nab for all admissible (p, q, r).

use std::collections::BTreeMap;

use tileprove::search_equilateral::{find_candidates, Branch};
use tileprove::tile_models::Gamma;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn tiles(gamma: Gamma) -> Vec<(u64, u64, u64)> {
    let sign: i64 = match gamma {
        Gamma::PiOver3 => -1,
        Gamma::TwoPiOver3 => 1,
    };
    let mut out = Vec::new();
    for b in 2..=120u64 {
        for a in 1..b {
            if gcd(a, b) != 1 {
                continue;
            }
            let c2 = (a * a + b * b) as i64 + sign * (a * b) as i64;
            let c = (c2 as f64).sqrt().round() as i64;
            if c * c == c2 {
                out.push((a, b, c as u64));
            }
        }
    }
    out
}

fn oracle(n: u64, gamma: Gamma) -> BTreeMap<(u64, u64, u64), Branch> {
    // the number of tiles along each side is at most N/6 + 1
    let bound = n / 6 + 1;
    let pq_min = match gamma {
        Gamma::PiOver3 => 1,
        Gamma::TwoPiOver3 => 0,
    };
    let mut found = BTreeMap::new();
    for (a, b, c) in tiles(gamma) {
        let nab = (n * a * b) as i128;
        for p in pq_min..=bound {
            for q in pq_min..=bound {
                for r in 2..=bound {
                    if p + q + r > bound {
                        continue;
                    }
                    let ab = (p * a + q * b) as i128;
                    let rc = (r * c) as i128;
                    let branch = if (ab + rc) * (ab + rc) == nab {
                        Branch::Direct
                    } else if (ab - rc) * (ab - rc) == nab {
                        Branch::Conjugate
                    } else {
                        continue;
                    };
                    let e = found.entry((a, b, c)).or_insert(branch);
                    if branch == Branch::Direct {
                        *e = Branch::Direct;
                    }
                }
            }
        }
    }
    found
}

#[test]
fn search_matches_brute_force_up_to_90() {
    let mut total = 0;
    for n in 3..=90u32 {
        for gamma in [Gamma::PiOver3, Gamma::TwoPiOver3] {
            let got: BTreeMap<_, _> = find_candidates(n, gamma)
                .unwrap()
                .into_iter()
                .map(|c| (c.tile, c.branch))
                .collect();
            let want = oracle(n as u64, gamma);
            assert_eq!(got, want, "N={n} {gamma:?}");
            total += got.len();
        }
    }
    // 40, 45, 54, 56, 60, 65, 66, 70, 80, 84, 85 and whatever lies in 86..=90
    assert!(total >= 11);
}

#[test]
fn brute_force_tile_list_sanity() {
    let t = tiles(Gamma::PiOver3);
    assert!(t.contains(&(5, 8, 7)) && t.contains(&(3, 8, 7)) && t.contains(&(16, 21, 19)));
    assert!(!t.contains(&(16, 20, 19)));
    let t = tiles(Gamma::TwoPiOver3);
    assert!(t.contains(&(3, 5, 7)) && t.contains(&(7, 8, 13)));
}
