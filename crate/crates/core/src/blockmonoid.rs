//! Zero-sum sequences over finite abelian groups: atoms of the block
//! monoid, factorizations into atoms, length sets, and the two-sided
//! length bounds for products of two atoms that power the
//! boundedness obstruction.

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

/// Direct product of cyclic groups Z/d_1 × … × Z/d_r, elements as tuples
/// of least nonnegative residues.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
}

pub type GroupElem = Vec<u64>;

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidInput("group needs at least one cyclic factor".into()));
        }
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::InvalidInput("cyclic orders must be >= 2".into()));
        }
        Ok(FiniteAbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        FiniteAbelianGroup::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn card(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.orders.len()]
    }

    pub fn is_zero(&self, a: &GroupElem) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        self.orders
            .iter()
            .zip(a.iter().zip(b))
            .map(|(&d, (&x, &y))| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &GroupElem) -> GroupElem {
        self.orders.iter().zip(a).map(|(&d, &x)| (d - x) % d).collect()
    }

    pub fn reduce(&self, a: &GroupElem) -> Result<GroupElem> {
        if a.len() != self.orders.len() {
            return Err(Error::InvalidInput(format!(
                "element rank {} does not match group rank {}",
                a.len(),
                self.orders.len()
            )));
        }
        Ok(self.orders.iter().zip(a).map(|(&d, &x)| x % d).collect())
    }

    pub fn elements(&self) -> Vec<GroupElem> {
        let mut out = vec![Vec::new()];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut e = prefix.clone();
                        e.push(x);
                        e
                    })
                })
                .collect();
        }
        out
    }

    pub fn nonzero_elements(&self) -> Vec<GroupElem> {
        self.elements().into_iter().filter(|e| !self.is_zero(e)).collect()
    }

    /// Σ(d_i − 1) + 1: the length every atom over the nonzero elements
    /// stays below for the cyclic and rank-2 elementary groups handled
    /// here; used to cut off exhaustive atom enumeration.
    pub fn atom_length_bound(&self) -> usize {
        (self.orders.iter().map(|&d| d - 1).sum::<u64>() + 1) as usize
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.orders.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "Z{}", d)?;
        }
        Ok(())
    }
}

// "Z3", "Z2xZ2", "Z12xZ2xZ2"
impl FromStr for FiniteAbelianGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for piece in s.trim().split('x') {
            let piece = piece.trim();
            let digits = piece
                .strip_prefix('Z')
                .ok_or_else(|| Error::InvalidInput(format!("bad group factor '{}', expected ZN", piece)))?;
            let d: u64 = digits
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad cyclic order '{}'", digits)))?;
            orders.push(d);
        }
        FiniteAbelianGroup::new(orders)
    }
}

/// A finite sequence over the group: a multiset of elements with
/// multiplicities. Zero-sum-ness is a property (`is_zero_sum`), not a
/// construction invariant, so non-members can be built, displayed, and
/// rejected with a proper error by the operations that need σ = 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Sequence {
    group: FiniteAbelianGroup,
    counts: BTreeMap<GroupElem, u64>,
}

impl Sequence {
    pub fn new(group: &FiniteAbelianGroup, elements: &[GroupElem]) -> Result<Sequence> {
        let mut counts = BTreeMap::new();
        for e in elements {
            *counts.entry(group.reduce(e)?).or_insert(0) += 1;
        }
        Ok(Sequence { group: group.clone(), counts })
    }

    fn from_counts(group: &FiniteAbelianGroup, counts: BTreeMap<GroupElem, u64>) -> Sequence {
        let counts = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        Sequence { group: group.clone(), counts }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn counts(&self) -> &BTreeMap<GroupElem, u64> {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.values().sum::<u64>() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn sigma(&self) -> GroupElem {
        let mut acc = self.group.zero();
        for (e, &c) in &self.counts {
            for _ in 0..c {
                acc = self.group.add(&acc, e);
            }
        }
        acc
    }

    pub fn is_zero_sum(&self) -> bool {
        self.group.is_zero(&self.sigma())
    }

    pub fn neg(&self) -> Sequence {
        let counts = self.counts.iter().map(|(e, &c)| (self.group.neg(e), c)).collect();
        Sequence::from_counts(&self.group, counts)
    }

    pub fn concat(&self, other: &Sequence) -> Result<Sequence> {
        if self.group != other.group {
            return Err(Error::InvalidInput("sequences live over different groups".into()));
        }
        let mut counts = self.counts.clone();
        for (e, &c) in &other.counts {
            *counts.entry(e.clone()).or_insert(0) += c;
        }
        Ok(Sequence::from_counts(&self.group, counts))
    }

    fn support(&self) -> Vec<GroupElem> {
        self.counts.keys().cloned().collect()
    }

    fn count_vector(&self, support: &[GroupElem]) -> Vec<u64> {
        support.iter().map(|e| *self.counts.get(e).unwrap_or(&0)).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (e, &c) in &self.counts {
            for _ in 0..c {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                if e.len() == 1 {
                    write!(f, "{}", e[0])?;
                } else {
                    write!(f, "(")?;
                    for (i, x) in e.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        write!(f, "{}", x)?;
                    }
                    write!(f, ")")?;
                }
            }
        }
        write!(f, "]")
    }
}

/// Parse a sequence over `group`: `[1, 1, 2]` for rank 1,
/// `[(1, 0), (0, 1)]` for higher rank; `[]` is the empty sequence.
pub fn parse_sequence(group: &FiniteAbelianGroup, s: &str) -> Result<Sequence> {
    let body = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::InvalidInput(format!("sequence '{}' must be bracketed", s)))?
        .trim();
    if body.is_empty() {
        return Sequence::new(group, &[]);
    }
    let mut elements = Vec::new();
    if group.rank() == 1 {
        for piece in body.split(',') {
            let x: u64 = piece
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad sequence entry '{}'", piece.trim())))?;
            elements.push(vec![x]);
        }
    } else {
        let mut rest = body;
        while !rest.is_empty() {
            let open = rest
                .find('(')
                .ok_or_else(|| Error::InvalidInput("expected '(' starting a tuple".into()))?;
            let close = rest[open..]
                .find(')')
                .ok_or_else(|| Error::InvalidInput("unterminated tuple".into()))?
                + open;
            let tuple: Vec<u64> = rest[open + 1..close]
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad tuple entry '{}'", p.trim())))
                })
                .collect::<Result<_>>()?;
            elements.push(tuple);
            rest = rest[close + 1..].trim_start().trim_start_matches(',').trim_start();
        }
    }
    Sequence::new(group, &elements)
}

fn require_zero_sum(seq: &Sequence) -> Result<()> {
    if !seq.is_zero_sum() {
        return Err(Error::InvalidInput(format!(
            "sequence {} has nonzero sum and is not a member of the block monoid",
            seq
        )));
    }
    Ok(())
}

/// True iff no nonempty proper sub-multiset of `seq` sums to zero.
/// Errors on non-zero-sum or empty input.
pub fn is_atom(seq: &Sequence) -> Result<bool> {
    require_zero_sum(seq)?;
    if seq.is_empty() {
        return Err(Error::InvalidInput("the empty sequence is the unit, not an atom".into()));
    }
    let support = seq.support();
    let full = seq.count_vector(&support);
    Ok(!has_proper_zero_subsum(&seq.group, &support, &full))
}

fn has_proper_zero_subsum(
    group: &FiniteAbelianGroup,
    support: &[GroupElem],
    full: &[u64],
) -> bool {
    let n = support.len();
    let mut pick = vec![0u64; n];
    loop {
        // odometer over proper nonempty sub-multisets
        let mut i = 0;
        while i < n && pick[i] == full[i] {
            pick[i] = 0;
            i += 1;
        }
        if i == n {
            return false;
        }
        pick[i] += 1;
        if pick == full {
            continue;
        }
        let mut acc = group.zero();
        for (j, &c) in pick.iter().enumerate() {
            for _ in 0..c {
                acc = group.add(&acc, &support[j]);
            }
        }
        if group.is_zero(&acc) {
            return true;
        }
    }
}

/// One factorization of a zero-sum sequence into atoms, parts sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockFactorization {
    pub parts: Vec<Sequence>,
}

impl BlockFactorization {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for BlockFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

/// All factorizations of `seq` into atoms, up to order. The walk anchors
/// each part on the first remaining element; duplicates arising from
/// repeated elements are collapsed at the end.
pub fn block_factorizations(seq: &Sequence) -> Result<Vec<BlockFactorization>> {
    require_zero_sum(seq)?;
    if seq.is_empty() {
        return Err(Error::InvalidInput("the empty sequence has no factorizations".into()));
    }
    let support = seq.support();
    let full = seq.count_vector(&support);
    let mut atom_memo: HashMap<Vec<u64>, bool> = HashMap::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut partition: Vec<Vec<u64>> = Vec::new();
    walk_block_partitions(
        &seq.group,
        &support,
        full,
        &mut partition,
        &mut atom_memo,
        &mut |parts| {
            let parts: Vec<Sequence> = parts
                .iter()
                .map(|counts| {
                    Sequence::from_counts(
                        &seq.group,
                        support.iter().cloned().zip(counts.iter().copied()).collect(),
                    )
                })
                .collect();
            let mut parts = parts;
            parts.sort();
            if seen.insert(parts.clone()) {
                out.push(BlockFactorization { parts });
            }
        },
    );
    out.sort_by(|a, b| a.parts.len().cmp(&b.parts.len()).then_with(|| a.parts.cmp(&b.parts)));
    Ok(out)
}

fn walk_block_partitions(
    group: &FiniteAbelianGroup,
    support: &[GroupElem],
    remaining: Vec<u64>,
    partition: &mut Vec<Vec<u64>>,
    atom_memo: &mut HashMap<Vec<u64>, bool>,
    emit: &mut dyn FnMut(&[Vec<u64>]),
) {
    let anchor = match remaining.iter().position(|&c| c > 0) {
        None => return emit(partition),
        Some(i) => i,
    };
    let n = remaining.len();
    let mut counts = vec![0u64; n];
    counts[anchor] = 1;
    loop {
        let zero_sum = {
            let mut acc = group.zero();
            for (j, &c) in counts.iter().enumerate() {
                for _ in 0..c {
                    acc = group.add(&acc, &support[j]);
                }
            }
            group.is_zero(&acc)
        };
        if zero_sum {
            let atom = *atom_memo
                .entry(counts.clone())
                .or_insert_with(|| !has_proper_zero_subsum(group, support, &counts));
            if atom {
                let mut rest = remaining.clone();
                for i in 0..n {
                    rest[i] -= counts[i];
                }
                partition.push(counts.clone());
                walk_block_partitions(group, support, rest, partition, atom_memo, emit);
                partition.pop();
            }
        }
        let mut i = n;
        loop {
            if i == anchor {
                if counts[anchor] < remaining[anchor] {
                    counts[anchor] += 1;
                    break;
                }
                return;
            }
            i -= 1;
            if i == anchor {
                continue;
            }
            if counts[i] < remaining[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
        }
    }
}

/// The set of factorization lengths of a zero-sum sequence.
pub fn block_lengths(seq: &Sequence) -> Result<Vec<usize>> {
    let facts = block_factorizations(seq)?;
    let mut lengths: Vec<usize> = facts.iter().map(|f| f.parts.len()).collect();
    lengths.sort_unstable();
    lengths.dedup();
    Ok(lengths)
}

/// Conformance report for the two length laws on a product of two atoms:
/// maxL(UV) never exceeds min{|U|, |V|}, and reaches max{|U|, |V|}
/// exactly when V = −U — except for pairs of 2-element atoms, where
/// U·V is itself a length-2 factorization, so the bound is attained
/// regardless and certifies nothing. For |U| = |V| >= 3 attainment
/// forces every part of a maximal factorization to be a ±-pair, and an
/// atom of length >= 3 cannot contain one internally, so the pairs match
/// U bijectively against −V.
#[derive(Clone, Debug)]
pub struct Lemma24Report {
    pub max_len: usize,
    pub card_u: usize,
    pub card_v: usize,
    pub upper_bound_holds: bool,
    pub attains_max_card: bool,
    pub v_is_minus_u: bool,
    pub equality_law_holds: bool,
}

impl Lemma24Report {
    pub fn conforms(&self) -> bool {
        self.upper_bound_holds && self.equality_law_holds
    }
}

pub fn lemma24_check(u: &Sequence, v: &Sequence) -> Result<Lemma24Report> {
    if !is_atom(u)? {
        return Err(Error::InvalidInput(format!("{} is not an atom", u)));
    }
    if !is_atom(v)? {
        return Err(Error::InvalidInput(format!("{} is not an atom", v)));
    }
    let lengths = block_lengths(&u.concat(v)?)?;
    let max_len = *lengths.last().unwrap();
    let attains = max_len == u.len().max(v.len());
    let minus = v == &u.neg();
    let both_short = u.len() == 2 && v.len() == 2;
    Ok(Lemma24Report {
        max_len,
        card_u: u.len(),
        card_v: v.len(),
        upper_bound_holds: max_len <= u.len().min(v.len()),
        attains_max_card: attains,
        v_is_minus_u: minus,
        equality_law_holds: attains == (minus || both_short),
    })
}

/// Every atom over `g0` with length at most `max_len`, in canonical order.
pub fn atoms_over(
    group: &FiniteAbelianGroup,
    g0: &[GroupElem],
    max_len: usize,
) -> Result<Vec<Sequence>> {
    let mut g0_sorted: Vec<GroupElem> = g0
        .iter()
        .map(|e| group.reduce(e))
        .collect::<Result<Vec<_>>>()?;
    g0_sorted.sort();
    g0_sorted.dedup();
    let mut out = Vec::new();
    let mut counts = vec![0u64; g0_sorted.len()];
    collect_atoms(group, &g0_sorted, &mut counts, 0, max_len, &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn collect_atoms(
    group: &FiniteAbelianGroup,
    g0: &[GroupElem],
    counts: &mut Vec<u64>,
    from: usize,
    budget: usize,
    out: &mut Vec<Sequence>,
) {
    let total: u64 = counts.iter().sum();
    if total > 0 {
        let seq = Sequence::from_counts(group, g0.iter().cloned().zip(counts.iter().copied()).collect());
        if seq.is_zero_sum() && is_atom(&seq).unwrap() {
            out.push(seq);
        }
    }
    if budget == 0 || from == g0.len() {
        return;
    }
    for i in from..g0.len() {
        counts[i] += 1;
        collect_atoms(group, g0, counts, i, budget - 1, out);
        counts[i] -= 1;
    }
}
