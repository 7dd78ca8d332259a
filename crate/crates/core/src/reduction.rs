//! Truncated-linear decomposition of concave penalties and the pairwise
//! gadgets that compile each piece for min-cut.
//!
//! A nondecreasing integer-concave `g` on `0..=T` is exactly
//! `g(0) + sum_Q lambda_Q * min(t, Q)` with `lambda_Q = delta_Q - delta_{Q+1}`
//! (`delta_{T+1} = 0`), and every `lambda_Q >= 0`.
//!
//! For a hyperedge of size `k` and `Q <= k/2`,
//! `min(n0, n1, Q) = min(n1, Q) + min(n0, Q) - Q`, and each truncated count
//! is the minimum over one auxiliary binary variable:
//!
//! ```text
//! min(n1, Q) = min_{z1} [ sum_i x_i (1 - z1) + Q z1 ]
//! min(n0, Q) = min_{z0} [ sum_i (1 - x_i) z0 + Q (1 - z0) ]
//! ```
//!
//! Both sums are pairwise submodular in `(x_i, z)`.

use crate::concave::{ConcaveSpec, Penalty};
use crate::error::{Error, Result};
use crate::label::LabelVector;
use crate::Cost;

/// Pieces with a smaller weight are dropped from gadgets.
pub const LAMBDA_DROP: f64 = 1e-12;

/// `lambda * min(t, cap)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece {
    pub cap: usize,
    pub lambda: f64,
}

impl Piece {
    pub fn value(&self, t: usize) -> f64 {
        self.lambda * t.min(self.cap) as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// `g(0)`.
    pub constant: f64,
    /// One piece per cap `1..=T_eff`, in cap order, zero weights included.
    pub pieces: Vec<Piece>,
}

impl Decomposition {
    pub fn evaluate(&self, t: usize) -> f64 {
        self.constant + self.pieces.iter().map(|p| p.value(t)).sum::<f64>()
    }

    /// Pieces that survive the [`LAMBDA_DROP`] threshold.
    pub fn active(&self) -> impl Iterator<Item = &Piece> {
        self.pieces.iter().filter(|p| p.lambda >= LAMBDA_DROP)
    }

    /// `max_t |g(t) - evaluate(t)|` over `0..=T_eff`.
    pub fn residual<P: Penalty + ?Sized>(&self, spec: &P) -> f64 {
        (0..=self.pieces.len())
            .map(|t| (spec.samples()[t] - self.evaluate(t)).abs())
            .fold(0.0, f64::max)
    }
}

pub fn decompose_truncated(spec: &ConcaveSpec, t_eff: usize) -> Result<Decomposition> {
    spec.require_cover(t_eff)?;
    let g = &spec.samples()[..=t_eff];
    let delta: Vec<f64> = g.windows(2).map(|w| w[1] - w[0]).collect();
    let pieces = (1..=t_eff)
        .map(|q| {
            let next = delta.get(q).copied().unwrap_or(0.0);
            // validated specs only go negative by rounding
            let lambda = (delta[q - 1] - next).max(0.0);
            Piece { cap: q, lambda }
        })
        .collect();
    Ok(Decomposition { constant: g[0], pieces })
}

/// Cost table of one binary variable, indexed by its label.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnaryTerm {
    pub var: usize,
    pub cost: [f64; 2],
}

/// Cost table of a variable pair, `table[x_u][x_v]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairwiseTerm {
    pub u: usize,
    pub v: usize,
    pub table: [[f64; 2]; 2],
}

impl PairwiseTerm {
    /// `E(0,0) + E(1,1) <= E(0,1) + E(1,0)`, checked exactly.
    pub fn is_submodular(&self) -> bool {
        let t = &self.table;
        t[0][0] + t[1][1] <= t[0][1] + t[1][0]
    }
}

/// Pairwise energy over a hyperedge and two auxiliaries whose minimum over
/// the auxiliaries is `lambda * min(n0, n1, cap)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GadgetFragment {
    pub members: Vec<usize>,
    /// `[z0, z1]`: z0 truncates the zero count, z1 the one count.
    pub aux: [usize; 2],
    pub piece: Piece,
    pub unary: Vec<UnaryTerm>,
    pub pairwise: Vec<PairwiseTerm>,
    pub constant: f64,
}

impl GadgetFragment {
    /// Energy under a full assignment given as a lookup from variable id.
    pub fn energy(&self, label: impl Fn(usize) -> bool) -> Cost {
        let mut e = self.constant;
        for t in &self.unary {
            e += t.cost[label(t.var) as usize];
        }
        for t in &self.pairwise {
            e += t.table[label(t.u) as usize][label(t.v) as usize];
        }
        e
    }
}

/// Builds the gadget for `piece` over `members`, using variable ids
/// `aux_base` (z0) and `aux_base + 1` (z1) for the auxiliaries.
pub fn build_gadget(piece: Piece, members: &[usize], aux_base: usize) -> Result<GadgetFragment> {
    let k = members.len();
    if k < 2 {
        return Err(Error::Parameter(format!("gadget needs at least 2 members, got {k}")));
    }
    if piece.cap < 1 {
        return Err(Error::Parameter("piece cap must be >= 1".into()));
    }
    if piece.cap > k / 2 {
        return Err(Error::CapTooLarge { cap: piece.cap, size: k });
    }
    if !(piece.lambda >= 0.0 && piece.lambda.is_finite()) {
        return Err(Error::Parameter(format!("piece weight {} must be >= 0", piece.lambda)));
    }
    let (z0, z1) = (aux_base, aux_base + 1);
    let lam = piece.lambda;
    let lam_q = lam * piece.cap as f64;

    let mut pairwise = Vec::with_capacity(2 * k);
    for &i in members {
        // lambda * x_i * (1 - z1)
        pairwise.push(PairwiseTerm { u: i, v: z1, table: [[0.0, 0.0], [lam, 0.0]] });
        // lambda * (1 - x_i) * z0
        pairwise.push(PairwiseTerm { u: i, v: z0, table: [[0.0, lam], [0.0, 0.0]] });
    }
    let unary = vec![
        UnaryTerm { var: z0, cost: [lam_q, 0.0] },
        UnaryTerm { var: z1, cost: [0.0, lam_q] },
    ];
    Ok(GadgetFragment {
        members: members.to_vec(),
        aux: [z0, z1],
        piece,
        unary,
        pairwise,
        constant: -lam_q,
    })
}

/// Minimum of the fragment energy over the four auxiliary settings, with
/// `x[j]` the label of `members[j]`.
pub fn gadget_min_over_aux(fragment: &GadgetFragment, x: &LabelVector) -> Result<Cost> {
    if x.len() != fragment.members.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: fragment.members.len() });
    }
    let [z0, z1] = fragment.aux;
    let mut best = f64::INFINITY;
    for (v0, v1) in [(false, false), (false, true), (true, false), (true, true)] {
        let e = fragment.energy(|var| {
            if var == z0 {
                v0
            } else if var == z1 {
                v1
            } else {
                let j = fragment.members.iter().position(|&m| m == var).expect("member id");
                x.get(j)
            }
        });
        best = best.min(e);
    }
    Ok(best)
}
