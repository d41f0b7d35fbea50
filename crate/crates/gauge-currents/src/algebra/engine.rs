//! The rewriting engine: reduction of words to the canonical ordered basis
//! under the relation set, products, and the in-band filtered products used
//! by the large supercharge computations.
//!
//! # Filter soundness
//!
//! A filtered product computes the guard-band part of `normal_form(x y)`
//! without materializing the full product. The pruning rests on three facts
//! about the relations on words free of `K` generators:
//!
//! * Clifford modes never change: a `psi^n_a` either survives with mode `n`
//!   or cancels against exactly `psi^{-n}_a`. The per-word imbalance of
//!   big-mode Clifford generators is therefore invariant under reduction,
//!   and a pair of words whose combined imbalance exceeds the allowance can
//!   never produce a word whose big Clifford modes all cancel.
//! * `T` modes only merge with other `T` modes (or leave the word entirely
//!   through a cocycle scalar or by acting on an `A`-dependent coefficient).
//!   When the cocycle vanishes identically and coefficients are constant,
//!   a final word is in-band only if the `T` modes split into groups with
//!   in-band sums.
//! * Words containing `K` generators are never pruned.
//!
//! An allowance of `k` keeps every word that could still reach the guard
//! band after multiplication by one more element carrying at most `k`
//! Clifford generators.

use super::{AlgebraElement, Gen, GenKind, RelationSet, Word};
use crate::apoly::APoly;
use crate::mode::Mode;
use crate::scalar::Rat;
use rustc_hash::FxHashMap;
use smallvec::SmallVec;

/// Configuration of an in-band filtered product.
#[derive(Clone, Debug)]
pub struct InBandFilter {
    /// Guard-band bound for generator modes.
    pub lambda_in: i16,
    /// Maximum surviving big-Clifford-mode imbalance. Zero means the result
    /// is projected onto the guard band; `k > 0` keeps boundary words for a
    /// later product against an element with at most `k` Clifford factors.
    pub allowance: u8,
    /// Whether a `T` pair can leave a word through the cocycle scalar. Set
    /// when the cocycle is not identically zero; disables `T` pruning.
    pub t_exit_possible: bool,
}

impl InBandFilter {
    pub fn final_stage(lambda_in: i16, t_exit_possible: bool) -> InBandFilter {
        InBandFilter {
            lambda_in,
            allowance: 0,
            t_exit_possible,
        }
    }

    pub fn intermediate(lambda_in: i16, allowance: u8, t_exit_possible: bool) -> InBandFilter {
        InBandFilter {
            lambda_in,
            allowance,
            t_exit_possible,
        }
    }
}

/// Signature of the unpaired big-mode Clifford content: net counts keyed by
/// the lex-positive representative of the mode class and the lie index.
type Signature = SmallVec<[(u32, i8); 4]>;

fn signature_of(w: &[Gen], lambda_in: i16) -> Signature {
    let mut map: SmallVec<[(u32, i8); 8]> = SmallVec::new();
    for g in w {
        if g.kind() != GenKind::Psi {
            continue;
        }
        let m = g.mode();
        if m.sup_norm() <= lambda_in {
            continue;
        }
        let (class, delta) = if m.is_lex_positive() {
            (m, 1i8)
        } else {
            (m.neg(), -1i8)
        };
        let key = Gen::new(GenKind::Psi, g.lie_index(), class).0;
        match map.iter_mut().find(|(k, _)| *k == key) {
            Some((_, c)) => *c += delta,
            None => map.push((key, delta)),
        }
    }
    let mut sig: Signature = map.into_iter().filter(|(_, c)| *c != 0).collect();
    sig.sort_unstable();
    sig
}

fn negate_signature(sig: &Signature) -> Signature {
    sig.iter().map(|(k, c)| (*k, -c)).collect()
}

fn combined_imbalance(a: &Signature, b: &Signature) -> u32 {
    let mut total = 0u32;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                total += a[i].1.unsigned_abs() as u32;
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                total += b[j].1.unsigned_abs() as u32;
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                total += (a[i].1 + b[j].1).unsigned_abs() as u32;
                i += 1;
                j += 1;
            }
        }
    }
    for t in &a[i..] {
        total += t.1.unsigned_abs() as u32;
    }
    for t in &b[j..] {
        total += t.1.unsigned_abs() as u32;
    }
    total
}

/// Whether a multiset of `T` modes can be partitioned into groups whose
/// sums all have sup-norm within the band.
fn t_modes_partitionable(modes: &[Mode], lambda_in: i16) -> bool {
    if modes.is_empty() {
        return true;
    }
    if modes.len() > 6 {
        return true; // no pruning for long T chains
    }
    fn rec(rest: &[Mode], blocks: &mut Vec<Mode>, lambda_in: i16) -> bool {
        let Some((first, tail)) = rest.split_first() else {
            return blocks.iter().all(|b| b.sup_norm() <= lambda_in);
        };
        for i in 0..blocks.len() {
            let saved = blocks[i];
            blocks[i] = saved.add(first);
            if rec(tail, blocks, lambda_in) {
                blocks[i] = saved;
                return true;
            }
            blocks[i] = saved;
        }
        blocks.push(*first);
        let ok = rec(tail, blocks, lambda_in);
        blocks.pop();
        ok
    }
    rec(modes, &mut Vec::new(), lambda_in)
}

struct TermInfo {
    sig: Signature,
    t_modes: SmallVec<[Mode; 4]>,
    has_k: bool,
    coeff_const: bool,
}

fn term_info(w: &[Gen], coeff: &APoly, lambda_in: i16) -> TermInfo {
    let mut t_modes = SmallVec::new();
    let mut has_k = false;
    for g in w {
        match g.kind() {
            GenKind::T => t_modes.push(g.mode()),
            GenKind::K => has_k = true,
            GenKind::Psi => {}
        }
    }
    TermInfo {
        sig: signature_of(w, lambda_in),
        t_modes,
        has_k,
        coeff_const: coeff.is_constant(),
    }
}

fn pair_passes(a: &TermInfo, b: &TermInfo, f: &InBandFilter) -> bool {
    if a.has_k || b.has_k {
        return true;
    }
    if combined_imbalance(&a.sig, &b.sig) > f.allowance as u32 {
        return false;
    }
    // T pruning is only sound at the final stage, with a vanishing cocycle
    // and constant coefficients.
    if f.allowance == 0 && !f.t_exit_possible && a.coeff_const && b.coeff_const {
        let mut modes: SmallVec<[Mode; 8]> = SmallVec::new();
        modes.extend_from_slice(&a.t_modes);
        modes.extend_from_slice(&b.t_modes);
        if !t_modes_partitionable(&modes, f.lambda_in) {
            return false;
        }
    }
    true
}

/// Drop rule applied to fully reduced words before accumulation.
fn keep_reduced_word(w: &[Gen], f: &InBandFilter) -> bool {
    if f.allowance == 0 {
        w.iter().all(|g| g.mode().sup_norm() <= f.lambda_in)
    } else {
        if w.iter().any(|g| g.kind() == GenKind::K) {
            return true;
        }
        signature_of(w, f.lambda_in)
            .iter()
            .map(|(_, c)| c.unsigned_abs() as u32)
            .sum::<u32>()
            <= f.allowance as u32
    }
}

/// Moves a scalar from the right of `prefix` to the far left. `T`
/// generators act on `A`-dependent scalars: `T s = s T + L(s)`, so the
/// result is a sum over subsets of consumed `T`s.
fn move_scalar_left(prefix: &[Gen], sigma: &APoly, rel: &RelationSet) -> Vec<(APoly, Word)> {
    if sigma.is_constant() || prefix.iter().all(|g| g.kind() != GenKind::T) {
        return vec![(sigma.clone(), Word::from_slice(prefix))];
    }
    let (rest, last) = prefix.split_at(prefix.len() - 1);
    let g = last[0];
    let mut out = Vec::new();
    for (s, mut w) in move_scalar_left(rest, sigma, rel) {
        w.push(g);
        out.push((s, w));
    }
    if g.kind() == GenKind::T {
        let ls = sigma.lie_derivative(g.lie_index(), &g.mode(), &rel.spec);
        if !ls.is_zero() {
            out.extend(move_scalar_left(rest, &ls, rel));
        }
    }
    out
}

struct WorkItem {
    coeff: APoly,
    word: Word,
    scan_from: usize,
}

/// Reduces `coeff * word` to canonical form, accumulating into `acc`.
pub(super) fn reduce_word_into(
    rel: &RelationSet,
    coeff: APoly,
    word: &[Gen],
    acc: &mut AlgebraElement,
    filter: Option<&InBandFilter>,
) {
    if coeff.is_zero() {
        return;
    }
    let mut stack: Vec<WorkItem> = vec![WorkItem {
        coeff,
        word: Word::from_slice(word),
        scan_from: 0,
    }];

    while let Some(mut it) = stack.pop() {
        let mut i = it.scan_from;
        'scan: loop {
            let w = &it.word;
            // Find the first reducible adjacent pair at position >= i.
            while i + 1 < w.len() {
                let (g1, g2) = (w[i], w[i + 1]);
                if g1 > g2 || (g1 == g2 && g1.kind() == GenKind::Psi) {
                    break;
                }
                i += 1;
            }
            if i + 1 >= it.word.len() {
                // Canonical; accumulate.
                if filter.map_or(true, |f| keep_reduced_word(&it.word, f)) {
                    acc.add_term(it.word, it.coeff);
                }
                break 'scan;
            }

            let (g1, g2) = (it.word[i], it.word[i + 1]);
            let (k1, k2) = (g1.kind(), g2.kind());
            match (k1, k2) {
                // Identical Clifford generators square to a scalar.
                (GenKind::Psi, GenKind::Psi) if g1 == g2 => {
                    if g1.mode().is_zero() {
                        it.coeff = it.coeff.scale(&crate::scalar::ExactScalar::from_rat(
                            Rat::int(rel.multiplicity),
                        ));
                        it.word.remove(i + 1);
                        it.word.remove(i);
                        i = i.saturating_sub(1);
                        continue 'scan;
                    }
                    break 'scan; // psi^2 = 0 off the zero mode
                }
                (GenKind::Psi, GenKind::Psi) => {
                    // Out-of-order distinct psi pair: anticommute.
                    if g1.lie_index() == g2.lie_index() && g1.mode() == g2.mode().neg() {
                        let mut shorter = it.word.clone();
                        shorter.remove(i + 1);
                        shorter.remove(i);
                        let c = it.coeff.scale(&crate::scalar::ExactScalar::from_rat(
                            Rat::int(2 * rel.multiplicity),
                        ));
                        stack.push(WorkItem {
                            coeff: c,
                            word: shorter,
                            scan_from: i.saturating_sub(1),
                        });
                    }
                    it.word.swap(i, i + 1);
                    it.coeff = it.coeff.neg();
                    i = i.saturating_sub(1);
                    continue 'scan;
                }
                // T commutes with K and psi.
                (GenKind::K, GenKind::T) | (GenKind::Psi, GenKind::T) => {
                    it.word.swap(i, i + 1);
                    i = i.saturating_sub(1);
                    continue 'scan;
                }
                // psi K -> K psi - lambda psi.
                (GenKind::Psi, GenKind::K) => {
                    let (a, n) = (g2.lie_index(), g2.mode());
                    let (b, m) = (g1.lie_index(), g1.mode());
                    let merged_mode = n.add(&m);
                    for (c, lam) in rel.spec.bracket_row(a, b) {
                        let mut merged = it.word.clone();
                        merged[i] = Gen::psi(c, merged_mode);
                        merged.remove(i + 1);
                        stack.push(WorkItem {
                            coeff: it.coeff.scale(&lam.neg()),
                            word: merged,
                            scan_from: i.saturating_sub(1),
                        });
                    }
                    it.word.swap(i, i + 1);
                    i = i.saturating_sub(1);
                    continue 'scan;
                }
                // Out-of-order same-kind even generators: swap plus the
                // structure-constant merge, plus the cocycle scalar for T.
                (GenKind::T, GenKind::T) | (GenKind::K, GenKind::K) => {
                    let (a, n) = (g1.lie_index(), g1.mode());
                    let (b, m) = (g2.lie_index(), g2.mode());
                    let merged_mode = n.add(&m);
                    for (c, lam) in rel.spec.bracket_row(a, b) {
                        let mut merged = it.word.clone();
                        merged[i] = Gen::new(k1, c, merged_mode);
                        merged.remove(i + 1);
                        stack.push(WorkItem {
                            coeff: it.coeff.scale(&lam),
                            word: merged,
                            scan_from: i.saturating_sub(1),
                        });
                    }
                    if k1 == GenKind::T && !rel.cocycle.is_identically_zero() {
                        let sigma = rel.cocycle.value(a, &n, b, &m);
                        if !sigma.is_zero() {
                            let prefix = &it.word[..i];
                            let suffix = &it.word[i + 2..];
                            for (s, mut pw) in move_scalar_left(prefix, &sigma, rel) {
                                pw.extend_from_slice(suffix);
                                stack.push(WorkItem {
                                    coeff: it.coeff.mul(&s),
                                    word: pw,
                                    scan_from: 0,
                                });
                            }
                        }
                    }
                    it.word.swap(i, i + 1);
                    i = i.saturating_sub(1);
                    continue 'scan;
                }
                // Remaining combinations are already ordered by kind.
                _ => unreachable!("kind order violation: {k1:?} > {k2:?}"),
            }
        }
    }
}

/// Product of a coefficient-carrying word pair: the right coefficient is
/// crossed through the left word (gauge action on `A`-dependent values),
/// then the concatenation is reduced.
fn multiply_pair(
    rel: &RelationSet,
    w1: &[Gen],
    c1: &APoly,
    w2: &[Gen],
    c2: &APoly,
    acc: &mut AlgebraElement,
    filter: Option<&InBandFilter>,
) {
    if c2.is_constant() {
        let mut w = Word::from_slice(w1);
        w.extend_from_slice(w2);
        reduce_word_into(rel, c1.mul(c2), &w, acc, filter);
        return;
    }
    for (s, mut w) in move_scalar_left(w1, c2, rel) {
        w.extend_from_slice(w2);
        reduce_word_into(rel, c1.mul(&s), &w, acc, filter);
    }
}

/// Full or filtered product of elements.
pub(super) fn mul_filtered(
    x: &AlgebraElement,
    y: &AlgebraElement,
    rel: &RelationSet,
    filter: Option<&InBandFilter>,
) -> AlgebraElement {
    let xs: Vec<(&Word, &APoly)> = x.terms().collect();
    let ys: Vec<(&Word, &APoly)> = y.terms().collect();

    let Some(f) = filter else {
        return parallel_pairs(rel, &xs, &ys, None, |_, _| true);
    };

    let xinfo: Vec<TermInfo> = xs
        .iter()
        .map(|(w, c)| term_info(w, c, f.lambda_in))
        .collect();
    let yinfo: Vec<TermInfo> = ys
        .iter()
        .map(|(w, c)| term_info(w, c, f.lambda_in))
        .collect();

    if f.allowance == 0 && xs.len().saturating_mul(ys.len()) > 1 << 22 {
        // Exact-match bucketing on the larger side: a pair can reach the
        // band only if the signatures cancel exactly (K-carrying words are
        // exempt and enumerated densely).
        let mut buckets: FxHashMap<Signature, Vec<usize>> = FxHashMap::default();
        let mut k_terms: Vec<usize> = Vec::new();
        for (j, info) in yinfo.iter().enumerate() {
            if info.has_k {
                k_terms.push(j);
            } else {
                buckets.entry(info.sig.clone()).or_default().push(j);
            }
        }
        let empty: Vec<usize> = Vec::new();
        let pair_lists: Vec<(usize, &Vec<usize>)> = xs
            .iter()
            .enumerate()
            .map(|(i, _)| {
                if xinfo[i].has_k {
                    // dense row below
                    (i, &empty)
                } else {
                    (i, buckets.get(&negate_signature(&xinfo[i].sig)).unwrap_or(&empty))
                }
            })
            .collect();
        return parallel_bucketed(rel, &xs, &ys, &xinfo, &yinfo, pair_lists, &k_terms, f);
    }

    parallel_pairs(rel, &xs, &ys, Some(f), |i, j| {
        pair_passes(&xinfo[i], &yinfo[j], f)
    })
}

fn parallel_pairs(
    rel: &RelationSet,
    xs: &[(&Word, &APoly)],
    ys: &[(&Word, &APoly)],
    filter: Option<&InBandFilter>,
    pass: impl Fn(usize, usize) -> bool + Sync,
) -> AlgebraElement {
    use rayon::prelude::*;
    let total = xs.len().saturating_mul(ys.len());
    if total < 1 << 14 || rayon::current_num_threads() == 1 {
        let mut acc = AlgebraElement::zero();
        for (i, (w1, c1)) in xs.iter().enumerate() {
            for (j, (w2, c2)) in ys.iter().enumerate() {
                if pass(i, j) {
                    multiply_pair(rel, w1, c1, w2, c2, &mut acc, filter);
                }
            }
        }
        acc.prune();
        return acc;
    }
    let chunk = xs.len().div_ceil(rayon::current_num_threads() * 4).max(1);
    let partials: Vec<AlgebraElement> = xs
        .par_chunks(chunk)
        .enumerate()
        .map(|(ci, chunk_terms)| {
            let base = ci * chunk;
            let mut acc = AlgebraElement::zero();
            for (di, (w1, c1)) in chunk_terms.iter().enumerate() {
                let i = base + di;
                for (j, (w2, c2)) in ys.iter().enumerate() {
                    if pass(i, j) {
                        multiply_pair(rel, w1, c1, w2, c2, &mut acc, filter);
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = AlgebraElement::zero();
    for p in partials {
        out.add_assign(&p);
    }
    out.prune();
    out
}

#[allow(clippy::too_many_arguments)]
fn parallel_bucketed(
    rel: &RelationSet,
    xs: &[(&Word, &APoly)],
    ys: &[(&Word, &APoly)],
    xinfo: &[TermInfo],
    yinfo: &[TermInfo],
    pair_lists: Vec<(usize, &Vec<usize>)>,
    y_k_terms: &[usize],
    f: &InBandFilter,
) -> AlgebraElement {
    use rayon::prelude::*;
    let chunk = pair_lists
        .len()
        .div_ceil(rayon::current_num_threads() * 4)
        .max(1);
    let partials: Vec<AlgebraElement> = pair_lists
        .par_chunks(chunk)
        .map(|rows| {
            let mut acc = AlgebraElement::zero();
            for (i, js) in rows {
                let (w1, c1) = xs[*i];
                if xinfo[*i].has_k {
                    for (w2, c2) in ys.iter() {
                        multiply_pair(rel, w1, c1, w2, c2, &mut acc, Some(f));
                    }
                } else {
                    for &j in js.iter().chain(y_k_terms) {
                        let (w2, c2) = ys[j];
                        if pair_passes(&xinfo[*i], &yinfo[j], f) {
                            multiply_pair(rel, w1, c1, w2, c2, &mut acc, Some(f));
                        }
                    }
                }
            }
            acc
        })
        .collect();
    let mut out = AlgebraElement::zero();
    for p in partials {
        out.add_assign(&p);
    }
    out.prune();
    out
}
