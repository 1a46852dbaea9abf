#![allow(dead_code)]

pub mod jones;
pub mod rulings;

use legsat::diagram::moves::{applicable_moves, apply_move, Move};
use legsat::PlatFront;

/// Applies one move per choice. Kinks are taken only on every fourth
/// choice so that fronts stay small.
pub fn random_isotopy(front: &PlatFront, choices: &[usize]) -> Vec<PlatFront> {
    let mut out = vec![front.clone()];
    let mut f = front.clone();
    for &c in choices {
        let all = applicable_moves(&f);
        let tame: Vec<Move> = all.iter().copied().filter(|m| !matches!(m, Move::KinkIn { .. })).collect();
        let pool = if c % 4 == 0 || tame.is_empty() { &all } else { &tame };
        let m = pool[c / 4 % pool.len()];
        f = apply_move(&f, m).expect("applicable move applies");
        out.push(f.clone());
    }
    out
}
