//! Equality of 2-cells modulo strict interchange of moves on disjoint
//! vertical windows, decided through a Foata-style normal form of the
//! induced trace monoid.

use serde::{Deserialize, Serialize};

use crate::diagram::{DResult, DiagramError, Move, TwoCell};
use crate::signature::Signature;

/// Witness that moves `k` and `k+1` act on disjoint windows, together with
/// the exchanged pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndependenceWitness {
    pub first: Move,
    pub second: Move,
    pub exchanged: (Move, Move),
}

/// Window arithmetic for one adjacent pair. Returns the exchanged pair
/// (new order of application) when the windows are disjoint.
pub fn exchange_pair(sig: &Signature, m1: &Move, m2: &Move) -> DResult<Option<(Move, Move)>> {
    let (l1, r1, _) = m1.sides(sig)?;
    let (l2, _, _) = m2.sides(sig)?;
    let p1 = l1.len();
    let q1 = r1.len();
    let p2 = l2.len();
    let a1 = m1.at;
    let a2 = m2.at;
    if a2 >= a1 + q1 {
        // second acts above the first's output window
        let mut m2n = m2.clone();
        m2n.at = a2 - q1 + p1;
        Ok(Some((m2n, m1.clone())))
    } else if a2 + p2 <= a1 {
        // second acts below the first's window
        let (_, r2, _) = m2.sides(sig)?;
        let q2 = r2.len();
        let mut m1n = m1.clone();
        m1n.at = a1 + q2 - p2;
        Ok(Some((m2.clone(), m1n)))
    } else {
        Ok(None)
    }
}

/// True iff moves `k` and `k+1` of `u` act on disjoint windows.
pub fn independent(sig: &Signature, u: &TwoCell, k: usize) -> DResult<bool> {
    if k + 1 >= u.moves.len() {
        return Err(DiagramError::Other(format!(
            "index {k}+1 out of range for {} moves",
            u.moves.len()
        )));
    }
    Ok(exchange_pair(sig, &u.moves[k], &u.moves[k + 1])?.is_some())
}

pub fn witness(sig: &Signature, u: &TwoCell, k: usize) -> DResult<Option<IndependenceWitness>> {
    if k + 1 >= u.moves.len() {
        return Err(DiagramError::Other("index out of range".into()));
    }
    Ok(
        exchange_pair(sig, &u.moves[k], &u.moves[k + 1])?.map(|exchanged| {
            IndependenceWitness {
                first: u.moves[k].clone(),
                second: u.moves[k + 1].clone(),
                exchanged,
            }
        }),
    )
}

/// Exchange adjacent moves `k` and `k+1`; errors when they overlap.
pub fn exchange(sig: &Signature, u: &TwoCell, k: usize) -> DResult<TwoCell> {
    let w = witness(sig, u, k)?.ok_or_else(|| DiagramError::Other(format!(
        "moves {k} and {} overlap and cannot be exchanged",
        k + 1
    )))?;
    let mut moves = u.moves.clone();
    moves[k] = w.exchanged.0;
    moves[k + 1] = w.exchanged.1;
    let out = TwoCell {
        source: u.source.clone(),
        moves,
    };
    out.target(sig)?;
    Ok(out)
}

/// Bubble move `i` to the front of the sequence by adjacent exchanges.
/// Returns its front form and the remaining sequence, or None if blocked.
fn bubble_to_front(
    sig: &Signature,
    moves: &[Move],
    i: usize,
) -> DResult<Option<(Move, Vec<Move>)>> {
    let mut seq = moves.to_vec();
    let mut pos = i;
    while pos > 0 {
        match exchange_pair(sig, &seq[pos - 1], &seq[pos])? {
            Some((a, b)) => {
                seq[pos - 1] = a;
                seq[pos] = b;
                pos -= 1;
            }
            None => return Ok(None),
        }
    }
    let front = seq[0].clone();
    let rest = seq[1..].to_vec();
    Ok(Some((front, rest)))
}

fn move_key(m: &Move) -> (usize, String, Move) {
    (m.at, m.core.label(), m.clone())
}

/// Foata normal form: greedy maximal antichains of pairwise-independent
/// moves, each antichain ordered by leftmost vertical index, then by core
/// label. Canonical within the commutation class of `u`.
pub fn nf(sig: &Signature, u: &TwoCell) -> DResult<TwoCell> {
    u.target(sig)?;
    let mut rest = u.moves.clone();
    let mut out: Vec<Move> = Vec::new();
    while !rest.is_empty() {
        // all moves that can be brought to the front (minimal letters)
        let mut initial: Vec<(usize, Move)> = Vec::new();
        for i in 0..rest.len() {
            if let Some((front, _)) = bubble_to_front(sig, &rest, i)? {
                initial.push((i, front));
            }
        }
        debug_assert!(!initial.is_empty());
        // the emission set is one Foata level; fix its order now
        initial.sort_by(|a, b| move_key(&a.1).cmp(&move_key(&b.1)));
        // pop the level members one at a time (indices shift as we pop,
        // so locate each member by value)
        let level: Vec<Move> = initial.iter().map(|(_, m)| m.clone()).collect();
        for want in level {
            // find the member in `rest` whose front form equals `want`
            let mut found = None;
            for i in 0..rest.len() {
                if let Some((front, remainder)) = bubble_to_front(sig, &rest, i)? {
                    if front == want {
                        found = Some((front, remainder));
                        break;
                    }
                }
            }
            if let Some((front, remainder)) = found {
                out.push(front);
                rest = remainder;
            }
            // a level member may coincide with an already-popped one when
            // two independent moves have identical front forms; the second
            // copy is found again in the loop above, so a miss means the
            // level entry was a duplicate already consumed
        }
    }
    let nf_cell = TwoCell {
        source: u.source.clone(),
        moves: out,
    };
    nf_cell.target(sig)?;
    Ok(nf_cell)
}

/// True iff boundaries agree and the Foata normal forms are equal.
pub fn eq_mod_commutation(sig: &Signature, u: &TwoCell, v: &TwoCell) -> DResult<bool> {
    if u.source != v.source {
        return Ok(false);
    }
    if u.target(sig)? != v.target(sig)? {
        return Ok(false);
    }
    Ok(nf(sig, u)?.moves == nf(sig, v)?.moves)
}
