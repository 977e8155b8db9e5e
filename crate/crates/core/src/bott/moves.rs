use num_traits::Zero;

use super::{exceptional_type, is_hypercube, is_q_trivial, ring_map_check, BottData, ExceptionalType, RingMap};
use crate::error::{Error, Result};
use crate::polytope::AffineUnimodular;
use crate::rational::{fmt_q, q, Q};

/// Elementary change of coordinates `x_k ↦ x̃_k + δ x̃_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Move {
    pub k: usize,
    pub l: usize,
    pub delta: i64,
    pub source: BottData,
    pub target: BottData,
    pub map: RingMap,
}

impl Move {
    /// `A^k_l + Ã^k_l >= 0`, the condition under which the sliding
    /// degeneration realizes the move by a symplectomorphism.
    pub fn certified(&self) -> bool {
        self.source.a[self.k][self.l] + self.target.a[self.k][self.l] >= 0
    }

    pub fn inverse(&self) -> Result<Move> {
        Ok(Move {
            k: self.k,
            l: self.l,
            delta: -self.delta,
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse()?,
        })
    }
}

/// Applies `x_k ↦ x̃_k + δ x̃_l` and returns the target data with its ring map.
///
/// The target has `Ã^k_l = A^k_l + 2δ`, `Ã^i_l = A^i_l + δ A^i_k` for
/// `i ≠ k`, and `λ̃_l = λ_l + δ λ_k`; everything else is unchanged. The
/// resulting map is checked to be a ring isomorphism preserving `[ω]`.
pub fn shift_move(b: &BottData, k: usize, l: usize, delta: i64) -> Result<Move> {
    let n = b.n();
    if !(k < l && l < n) {
        return Err(Error::InvalidDirection { k, l, n });
    }
    let mut a = b.a.clone();
    for i in 0..n {
        if i != k {
            a[i][l] += delta * b.a[i][k];
        }
    }
    a[k][l] += 2 * delta;
    let mut lambda = b.lambda.clone();
    lambda[l] = &lambda[l] + q(delta) * &b.lambda[k];
    let target = BottData::new(a, lambda)?;
    let mut m = crate::linalg::identity_i(n);
    m[k][l] = delta;
    let map = RingMap::new(m)?;
    let check = ring_map_check(&map, b, &target)?;
    if !check.is_valid() {
        return Err(Error::RingMapInvalid(format!(
            "x{} -> x{} + {}*x{} does not preserve the relations",
            k + 1,
            k + 1,
            delta,
            l + 1
        )));
    }
    Ok(Move { k, l, delta, source: b.clone(), target, map })
}

/// The normalizing move at `x_k` relative to `x_l`: even type goes to
/// `Ã^k_l = 0`, odd type to `Ã^k_l = -1`. When `α_k = 0` the move is the
/// identity.
pub fn elementary_move(b: &BottData, k: usize, l: usize) -> Result<Move> {
    let delta = match exceptional_type(b, k)? {
        ExceptionalType::Even { l: None, .. } => 0,
        ExceptionalType::Even { l: Some(l0), c } if l0 == l => c / 2,
        ExceptionalType::Odd { l: l0, c } if l0 == l => (c - 1) / 2,
        ExceptionalType::NotExceptional => return Err(Error::NotExceptional(k)),
        ExceptionalType::Even { l: Some(l0), .. } | ExceptionalType::Odd { l: l0, .. } => {
            return Err(Error::InvalidInput(format!(
                "x{} is exceptional relative to x{}, not x{}",
                k + 1,
                l0 + 1,
                l + 1
            )))
        }
    };
    shift_move(b, k, l, delta)
}

/// One factor `𝓗(λ_members, λ_terminal)` of a standard form; indices refer to
/// the standard layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub members: Vec<usize>,
    pub terminal: usize,
}

impl Block {
    pub fn size(&self) -> usize {
        self.members.len() + 1
    }
}

/// Product of `𝓗` models reached by elementary moves and a relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub data: BottData,
    pub blocks: Vec<Block>,
    /// Ring isomorphism from the input ring to the standard ring.
    pub map: RingMap,
    pub trace: Vec<Move>,
    /// Input index `i` sits at `permutation[i]` in the standard layout.
    pub permutation: Vec<usize>,
}

type BlockKey = (usize, Vec<Q>, Q);

impl StandardForm {
    pub fn partition(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }

    fn block_key(&self, b: &Block) -> BlockKey {
        let mut members: Vec<Q> = b.members.iter().map(|&i| self.data.lambda[i].clone()).collect();
        members.sort();
        (b.size(), members, self.data.lambda[b.terminal].clone())
    }

    /// Complete invariant: the sorted multiset of `(block size, sorted member
    /// λs, terminal λ)`.
    pub fn invariant(&self) -> Vec<BlockKey> {
        let mut keys: Vec<BlockKey> = self.blocks.iter().map(|b| self.block_key(b)).collect();
        keys.sort();
        keys
    }

    fn sorted_blocks(&self) -> Vec<&Block> {
        let mut bs: Vec<&Block> = self.blocks.iter().collect();
        bs.sort_by(|a, b| self.block_key(a).cmp(&self.block_key(b)).then(a.terminal.cmp(&b.terminal)));
        bs
    }

    fn sorted_members(&self, b: &Block) -> Vec<usize> {
        let mut m = b.members.clone();
        m.sort_by(|&i, &j| self.data.lambda[i].cmp(&self.data.lambda[j]).then(i.cmp(&j)));
        m
    }
}

/// Normalizes a ℚ-trivial `(A, λ)` by elementary moves, processing `k` from
/// `n` down to `1`, then relabels so that blocks are contiguous (ordered by
/// terminal index) with each terminal last.
pub fn standard_form(b: &BottData) -> Result<StandardForm> {
    if !is_q_trivial(b) {
        return Err(Error::NotQTrivial);
    }
    let n = b.n();
    let mut work = b.clone();
    let mut map = RingMap::identity(n);
    let mut trace = Vec::new();
    for k in (0..n).rev() {
        // Each move either clears α_k or pushes its first nonzero column right.
        for _ in 0..=n {
            let (l, delta) = match exceptional_type(&work, k)? {
                ExceptionalType::Even { l: None, .. } => break,
                ExceptionalType::Odd { l, c: 1 } if (l + 1..n).all(|j| work.a[k][j] == 0) => break,
                ExceptionalType::Even { l: Some(l), c } => (l, c / 2),
                ExceptionalType::Odd { l, c } => (l, (c - 1) / 2),
                ExceptionalType::NotExceptional => return Err(Error::NotQTrivial),
            };
            let mv = shift_move(&work, k, l, delta)?;
            map = map.then(&mv.map);
            work = mv.target.clone();
            trace.push(mv);
        }
    }

    let terminals: Vec<usize> = (0..n).filter(|&k| work.a[k].iter().all(|&x| x == 0)).collect();
    let mut perm = vec![usize::MAX; n];
    let mut next = 0;
    let mut layout = Vec::new();
    for &t in &terminals {
        let members: Vec<usize> = (0..t).filter(|&k| work.a[k][t] == -1).collect();
        let mut block = Block { members: Vec::new(), terminal: 0 };
        for &m in &members {
            perm[m] = next;
            block.members.push(next);
            next += 1;
        }
        perm[t] = next;
        block.terminal = next;
        next += 1;
        layout.push(block);
    }
    if next != n || perm.contains(&usize::MAX) {
        return Err(Error::NotQTrivial);
    }
    let data = work.permuted(&perm)?;
    let map = map.then(&RingMap::permutation(&perm));
    Ok(StandardForm { data, blocks: layout, map, trace, permutation: perm })
}

/// Evidence for a "yes" answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// `F: H*(M_A) → H*(M_Ã)` with `F[ω_λ] = [ω_λ̃]`.
    pub map: RingMap,
    /// Standard index `j` of the first input matches index `sigma[j]` of the second.
    pub sigma: Vec<usize>,
    /// `Λ` with `Λᵀ(Δ_std(b̃)) = Δ_std(b)`.
    pub lambda_matrix: Vec<Vec<i64>>,
    pub std_source: StandardForm,
    pub std_target: StandardForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes(Box<Certificate>),
    No(String),
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

fn fmt_keys(keys: &[BlockKey]) -> String {
    let parts: Vec<String> = keys
        .iter()
        .map(|(s, m, t)| {
            let mut all: Vec<String> = m.iter().map(fmt_q).collect();
            all.push(fmt_q(t));
            format!("H{}({})", s, all.join(","))
        })
        .collect();
    parts.join(" x ")
}

/// Decides whether two ℚ-trivial Bott manifolds are symplectomorphic by
/// comparing standard forms, and on success assembles a ring isomorphism and
/// the matching polytope map.
pub fn decide_symplectomorphic(b: &BottData, bt: &BottData) -> Result<Decision> {
    if b.n() != bt.n() {
        return Ok(Decision::No(format!("dimension mismatch: {} vs {}", b.n(), bt.n())));
    }
    for d in [b, bt] {
        if !is_hypercube(d) {
            return Err(Error::NotHypercube);
        }
    }
    let s = standard_form(b)?;
    let st = standard_form(bt)?;
    let (mut p, mut pt) = (s.partition(), st.partition());
    p.sort();
    pt.sort();
    if p != pt {
        return Ok(Decision::No(format!("partition mismatch: {p:?} vs {pt:?}")));
    }
    let (inv, invt) = (s.invariant(), st.invariant());
    if inv != invt {
        return Ok(Decision::No(format!(
            "lambda multiset mismatch: {} vs {}",
            fmt_keys(&inv),
            fmt_keys(&invt)
        )));
    }

    let n = b.n();
    let mut sigma = vec![0; n];
    for (x, y) in s.sorted_blocks().into_iter().zip(st.sorted_blocks()) {
        for (i, j) in s.sorted_members(x).into_iter().zip(st.sorted_members(y)) {
            sigma[i] = j;
        }
        sigma[x.terminal] = y.terminal;
    }
    if s.data.permuted(&sigma)? != st.data {
        return Err(Error::RingMapInvalid("standard forms do not match under sigma".into()));
    }

    let mut lam = vec![vec![0; n]; n];
    for (j, &sj) in sigma.iter().enumerate() {
        lam[sj][j] = 1;
    }
    let lam_t = crate::linalg::transpose_i(&lam);
    let moved = st.data.polytope().transform(&AffineUnimodular::new(lam_t, vec![Q::zero(); n])?)?;
    if moved != s.data.polytope() {
        return Err(Error::RingMapInvalid("polytope map does not match standard forms".into()));
    }

    let f = s.map.then(&RingMap::permutation(&sigma)).then(&st.map.inverse()?);
    let check = ring_map_check(&f, b, bt)?;
    if !check.is_valid() {
        return Err(Error::RingMapInvalid(format!("composed map failed: {check:?}")));
    }
    Ok(Decision::Yes(Box::new(Certificate { map: f, sigma, lambda_matrix: lam, std_source: s, std_target: st })))
}

/// The closed-form Hirzebruch criterion: `A ≡ Ã (mod 2)` and equal
/// `(λ₁, λ₂ - ½Aλ₁)`. For even `A` both surfaces are `ℂP¹ × ℂP¹`, whose
/// factors may be swapped, so the pair is compared unordered.
pub fn hirzebruch_classify(b: &BottData, bt: &BottData) -> Result<bool> {
    for d in [b, bt] {
        if d.n() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: d.n() });
        }
        if !is_hypercube(d) {
            return Err(Error::NotHypercube);
        }
    }
    let (a, at) = (b.a[0][1], bt.a[0][1]);
    if (a - at) % 2 != 0 {
        return Ok(false);
    }
    let inv = |d: &BottData| {
        let w = &d.lambda[0];
        let area = &d.lambda[1] - crate::rational::q_frac(d.a[0][1], 2) * w;
        (w.clone(), area)
    };
    let (x, y) = (inv(b), inv(bt));
    if x == y {
        return Ok(true);
    }
    Ok(a % 2 == 0 && x.0 == y.1 && x.1 == y.0)
}
