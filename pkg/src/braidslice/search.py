"""Randomised search for Alexander-trivial subgroups of Seifert forms,
certificate verification, genus upper bounds, and certificate composition.

The search repeatedly picks a primitive isotropic vector v, solves the two
linear conditions v^T A w = 1 and w^T A v = 0 for a partner w, and recurses
on the integer solution lattice of the three homogeneous conditions
v^T A u = u^T A v = u^T A w = 0.  Certificate bases are stored deepest level
first, which puts the restricted form into the block shape

    [ 0  I ]
    [ L  R ]      L strictly lower triangular,

so Alexander-triviality is structural, and composition along braid
concatenation preserves the shape.  Every certificate re-verifies from
scratch: Seifert matrix, restriction, Alexander polynomial, independence,
and det(restriction - restriction^T) = 1.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from dataclasses import dataclass, field, replace
from math import gcd
from pathlib import Path

import numpy as np

from .braid import BraidWord, parse_canonical
from .linalg import (IntMatrix, IntPoly, alexander_of_form, bilinear, det,
                     is_alexander_trivial, kernel, rank, solve_linear)
from .seifert import BRICK_ORDER_VERSION, brick_basis, embed_subword, seifert_matrix


class SearchError(ValueError):
    pass


@dataclass(frozen=True)
class SearchBudget:
    """Attempt caps for one search run, serialised into certificates.

    Vector coefficients are drawn uniformly from [-c, c] with c escalating
    through ``escalation`` as draws fail; when the current solution lattice
    has dimension at most ``exhaustive_dim``, all coefficient vectors in
    [-exhaustive_bound, exhaustive_bound] are tried first, in lexicographic
    order.  ``max_pairs`` caps the number of new hyperbolic pairs (None
    recurses until the lattice is exhausted).
    """

    v_draws: int = 10_000
    w_draws: int = 200
    escalation: tuple[tuple[int, int | None], ...] = (
        (1, 2_000), (2, 5_000), (3, None))
    exhaustive_dim: int = 8
    exhaustive_bound: int = 2
    max_pairs: int | None = None

    def to_json(self) -> dict:
        return {
            "v_draws": self.v_draws,
            "w_draws": self.w_draws,
            "escalation": [[b, u] for b, u in self.escalation],
            "exhaustive_dim": self.exhaustive_dim,
            "exhaustive_bound": self.exhaustive_bound,
            "max_pairs": self.max_pairs,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SearchBudget":
        return cls(
            v_draws=int(d["v_draws"]),
            w_draws=int(d["w_draws"]),
            escalation=tuple((int(b), None if u is None else int(u))
                             for b, u in d["escalation"]),
            exhaustive_dim=int(d["exhaustive_dim"]),
            exhaustive_bound=int(d["exhaustive_bound"]),
            max_pairs=None if d.get("max_pairs") is None else int(d["max_pairs"]),
        )


DEFAULT_BUDGET = SearchBudget()


# ---------------------------------------------------------------------------
# isotropic vector generation


def _coefficient_batches(d: int, rng: random.Random, budget: SearchBudget):
    """Deterministic stream of candidate coefficient rows (numpy int64)."""
    if d <= budget.exhaustive_dim:
        base = 2 * budget.exhaustive_bound + 1
        total = base ** d
        chunk = 1 << 16
        for start in range(0, total, chunk):
            idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
            c = np.empty((len(idx), d), dtype=np.int64)
            for k in range(d):
                c[:, k] = (idx // base ** (d - 1 - k)) % base \
                    - budget.exhaustive_bound
            yield c
    drawn = 0
    for bound, upto in budget.escalation:
        limit = budget.v_draws if upto is None else min(upto, budget.v_draws)
        while drawn < limit:
            take = min(1024, limit - drawn)
            c = np.fromiter(
                (rng.randint(-bound, bound) for _ in range(take * d)),
                dtype=np.int64, count=take * d).reshape(take, d)
            drawn += take
            yield c


def _negative_seeds(gram, sym_rows, d):
    """Integer lattice vectors u with u^T G u < 0, found by greedy descent
    from the scaled negative eigenvectors of the symmetrised form.
    Deterministic; returns a (possibly empty) list of coefficient vectors."""

    def q(v):
        return sum(v[i] * gram[i][j] * v[j]
                   for i in range(d) for j in range(d) if v[i])

    sym = np.array(sym_rows, dtype=np.float64)
    vals, vecs = np.linalg.eigh(sym)
    seeds = []
    for idx in np.argsort(vals):
        if vals[idx] >= -1e-12 or len(seeds) >= 2:
            break
        direction = vecs[:, idx]
        direction = direction / max(1e-12, np.abs(direction).max())
        for scale in range(1, 41):
            v = [int(round(scale * x)) for x in direction]
            if not any(v):
                continue
            best = q(v)
            for _ in range(200):
                if best < 0:
                    break
                improved = None
                for i in range(d):
                    row = sum(v[j] * (gram[i][j] + gram[j][i])
                              for j in range(d) if v[j])
                    diag = gram[i][i]
                    for delta in (1, -1):
                        cand = best + delta * row + diag
                        if cand < best:
                            if improved is None or cand < improved[0]:
                                improved = (cand, i, delta)
                if improved is None:
                    break
                best, i, delta = improved
                v[i] += delta
            if best < 0:
                seeds.append(tuple(v))
                break
    return seeds


def _hyperbolic_candidates(gram, seeds, d, rng, budget):
    """Exactly isotropic combinations (s-c)u + 2a·w, where a = q(u) < 0,
    c = B(u,w), and c^2 - 4 q(u) q(w) = s^2 is a perfect square."""

    def q(v):
        return sum(v[i] * gram[i][j] * v[j]
                   for i in range(d) for j in range(d) if v[i])

    bsym = [[gram[i][j] + gram[j][i] for j in range(d)] for i in range(d)]
    pre = []
    for u in seeds:
        a = q(u)
        urow = [sum(u[i] * bsym[i][j] for i in range(d) if u[i])
                for j in range(d)]
        pre.append((u, a, urow))
    drawn = 0
    for bound, upto in budget.escalation:
        limit = budget.v_draws if upto is None else min(upto, budget.v_draws)
        while drawn < limit:
            w = [rng.randint(-bound, bound) for _ in range(d)]
            drawn += 1
            if not any(w):
                continue
            for u, a, urow in pre:
                c = sum(urow[j] * w[j] for j in range(d) if w[j])
                disc = c * c - 4 * a * q(w)
                if disc < 0:
                    continue
                s_root = isqrt(disc)
                if s_root * s_root != disc:
                    continue
                for s_val in (s_root, -s_root):
                    v = tuple((s_val - c) * u[i] + 2 * a * w[i]
                              for i in range(d))
                    if any(v):
                        yield v


def _isotropic_vectors(s: IntMatrix, basis_vectors, rng, budget):
    """Yield primitive ambient vectors v with v^T S v = 0 from the lattice
    spanned by ``basis_vectors``, deduplicated, in deterministic order.

    Three phases: exhaustive boxes in small dimension, uniform box draws
    with escalating coefficient range, then hyperbolic-plane closure seeded
    by descent towards the negative cone of the symmetrised form (pure box
    sampling almost never meets the isotropic quadric of nearly-definite
    Seifert forms beyond rank ~10)."""
    d = len(basis_vectors)
    m = s.rows
    if d == 0:
        return
    gram = [[bilinear(a, s, b) for b in basis_vectors] for a in basis_vectors]
    gmax = max((abs(x) for row in gram for x in row), default=0)
    cmax = max([budget.exhaustive_bound]
               + [b for b, _ in budget.escalation])
    exact_only = gmax * (cmax * cmax * d * d) >= 2 ** 62
    gn = None if exact_only else np.array(gram, dtype=np.int64)
    seen: set[tuple[int, ...]] = set()

    def emit(coeff_rows):
        for coeffs in coeff_rows:
            v = [0] * m
            for c, kb in zip(coeffs, basis_vectors):
                if c:
                    for i, x in enumerate(kb):
                        v[i] += c * x
            g = 0
            for x in v:
                g = gcd(g, x)
            if g == 0:
                continue
            vt = tuple(x // g for x in v)
            for x in vt:
                if x:
                    if x < 0:
                        vt = tuple(-y for y in vt)
                    break
            if vt in seen:
                continue
            seen.add(vt)
            if bilinear(vt, s, vt) != 0:   # exact recheck of the fast filter
                continue
            yield vt

    for batch in _coefficient_batches(d, rng, budget):
        if exact_only:
            hits = [row for row in batch.tolist()
                    if any(row)
                    and sum(row[i] * gram[i][j] * row[j]
                            for i in range(d) for j in range(d)) == 0]
        else:
            vals = np.einsum("bi,ij,bj->b", batch, gn, batch)
            mask = (vals == 0) & np.any(batch != 0, axis=1)
            hits = batch[mask].tolist()
        yield from emit(hits)

    sym_rows = [[gram[i][j] + gram[j][i] for j in range(d)] for i in range(d)]
    seeds = _negative_seeds(gram, sym_rows, d)
    if seeds:
        yield from emit(_hyperbolic_candidates(gram, seeds, d, rng, budget))
    else:
        # positive semidefinite restriction: isotropic vectors all lie in
        # the radical of the symmetrised form
        radical = kernel(_rows_matrix(sym_rows, d))
        if radical:
            combos = itertools.product(
                range(-budget.exhaustive_bound, budget.exhaustive_bound + 1),
                repeat=len(radical))
            rows = []
            for cf in combos:
                if any(cf):
                    rows.append([sum(c * rb[i] for c, rb in zip(cf, radical))
                                 for i in range(d)])
                    if len(rows) >= 20000:
                        break
            yield from emit(rows)


def _rows_matrix(rows, width: int) -> IntMatrix:
    return IntMatrix(len(rows), width, tuple(x for r in rows for x in r))


def find_alexander_trivial(s: IntMatrix, seed: int = 0,
                           budget: SearchBudget | None = None, *,
                           v_support=None,
                           initial_pairs=()) -> IntMatrix:
    """Search for a basis of an Alexander-trivial subgroup of the form ``s``.

    Returns a matrix whose 2k columns are the v-half then the w-half of the
    basis (possibly zero columns when nothing is found).  Identical
    (s, seed, budget) always produce identical output.

    ``v_support`` optionally restricts every v-half vector to the given
    coordinate set; ``initial_pairs`` seeds the recursion with already-found
    (v, w) pairs ordered outermost first, as used when extending a stored
    certificate by deeper pairs.
    """
    if not s.is_square:
        raise SearchError("search needs a square form")
    budget = budget or DEFAULT_BUDGET
    m = s.rows
    rng = random.Random(seed)
    st = s.transpose()
    pairs: list[tuple[tuple[int, ...], tuple[int, ...]]] = [
        (tuple(v), tuple(w)) for v, w in initial_pairs]
    forbidden = []
    if v_support is not None:
        allowed = set(v_support)
        forbidden = [i for i in range(m) if i not in allowed]

    def constraint_rows():
        rows = []
        for v, w in pairs:
            rows.append(st.mul_vec(v))
            rows.append(s.mul_vec(v))
            rows.append(s.mul_vec(w))
        return rows

    found_new = 0
    while budget.max_pairs is None or found_new < budget.max_pairs:
        rows = constraint_rows()
        vrows = list(rows)
        for i in forbidden:
            vrows.append(tuple(1 if j == i else 0 for j in range(m)))
        lattice = kernel(_rows_matrix(vrows, m))
        if not lattice:
            break
        got = None
        for v in _isotropic_vectors(s, lattice, rng, budget):
            wsys = _rows_matrix([st.mul_vec(v), s.mul_vec(v)] + rows, m)
            w0 = solve_linear(wsys, (1, 0) + (0,) * len(rows))
            if w0 is not None:
                got = (v, w0)
                break
        if got is None:
            break
        pairs.append(got)
        found_new += 1

    vcols = [v for v, _ in reversed(pairs)]
    wcols = [w for _, w in reversed(pairs)]
    return IntMatrix.from_cols(vcols + wcols, rows=m)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class DefectCertificate:
    """A basis of an Alexander-trivial subgroup of the Seifert form of a
    positive braid word, with everything needed for independent re-checking.

    ``basis`` columns are the v-half then the w-half, deepest search level
    first.  ``support_prefix`` asserts that the v-half is supported on bricks
    lying inside that many leading letters of the word.
    """

    word: BraidWord
    basis: IntMatrix
    restriction: IntMatrix
    alexander: IntPoly
    seed: int | None = None
    budget: SearchBudget | None = None
    support_prefix: int | None = None
    provenance: str | None = None

    @property
    def rank(self) -> int:
        return self.basis.cols

    def to_json(self) -> dict:
        return {
            "format": "defect-certificate-v1",
            "word": self.word.to_text(),
            "strands": self.word.strands,
            "brick_order_version": BRICK_ORDER_VERSION,
            "basis": [list(self.basis.col(j)) for j in range(self.basis.cols)],
            "restriction": self.restriction.to_rows(),
            "alexander": self.alexander.to_json(),
            "seed": self.seed,
            "budget": self.budget.to_json() if self.budget else None,
            "support_prefix": self.support_prefix,
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, d: dict) -> "DefectCertificate":
        word = parse_canonical(d["word"])
        cols = [tuple(int(x) for x in c) for c in d["basis"]]
        basis = IntMatrix.from_cols(cols, rows=len(cols[0]) if cols else None)
        if not cols:
            basis = IntMatrix(seifert_matrix(word).matrix.rows, 0, ())
        return cls(
            word=word,
            basis=basis,
            restriction=IntMatrix.from_rows(d["restriction"])
            if d["restriction"] else IntMatrix.zeros(0, 0),
            alexander=IntPoly.from_json(d["alexander"]),
            seed=d.get("seed"),
            budget=SearchBudget.from_json(d["budget"]) if d.get("budget") else None,
            support_prefix=d.get("support_prefix"),
            provenance=d.get("provenance"),
        )


def make_certificate(word: BraidWord, basis: IntMatrix, *, seed=None,
                     budget=None, support_prefix=None,
                     provenance=None) -> DefectCertificate:
    """Assemble a certificate from a word and a basis, computing the
    restriction and its Alexander polynomial exactly."""
    s = seifert_matrix(word).matrix
    if basis.rows != s.rows:
        raise SearchError("basis rows do not match the brick count")
    restriction = basis.transpose() @ s @ basis
    return DefectCertificate(
        word=word, basis=basis, restriction=restriction,
        alexander=alexander_of_form(restriction),
        seed=seed, budget=budget, support_prefix=support_prefix,
        provenance=provenance)


def search_certificate(word: BraidWord, seed: int = 0,
                       budget: SearchBudget | None = None, *,
                       v_support_prefix: int | None = None) -> DefectCertificate:
    """Run the search on a word's Seifert form and package the result.

    ``v_support_prefix`` restricts the v-half to bricks inside that many
    leading letters, recording the prefix on the certificate.
    """
    sd = seifert_matrix(word)
    v_support = None
    if v_support_prefix is not None:
        v_support = [k for k, b in enumerate(sd.bricks)
                     if b.end < v_support_prefix]
    basis = find_alexander_trivial(sd.matrix, seed, budget,
                                   v_support=v_support)
    return make_certificate(word, basis, seed=seed,
                            budget=budget or DEFAULT_BUDGET,
                            support_prefix=v_support_prefix)


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[tuple[str, bool, str], ...]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def to_json(self) -> dict:
        return {"passed": self.passed,
                "checks": [{"name": n, "passed": ok, "detail": d}
                           for n, ok, d in self.checks]}


def _invariant_checks(s: IntMatrix, basis: IntMatrix,
                      restriction: IntMatrix | None,
                      alexander: IntPoly | None) -> list[tuple[str, bool, str]]:
    checks: list[tuple[str, bool, str]] = []
    actual = basis.transpose() @ s @ basis
    if restriction is not None:
        checks.append(("restriction-matches",
                       actual == restriction,
                       "basis^T S basis equals the stored restriction"))
    alex = alexander_of_form(actual)
    if alexander is not None:
        checks.append(("alexander-matches",
                       alex.coeffs == alexander.coeffs
                       and alex.unit_shift == alexander.unit_shift
                       and alex.unit_sign == alexander.unit_sign,
                       "recomputed Alexander polynomial equals the stored one"))
    checks.append(("alexander-unit", alex.is_unit,
                   f"restricted form has Alexander polynomial {alex} "
                   f"(shift {alex.unit_shift})"))
    checks.append(("rank-even", basis.cols % 2 == 0,
                   "certificate rank is even"))
    checks.append(("independent", rank(basis) == basis.cols,
                   "basis columns are linearly independent"))
    checks.append(
        ("skew-determinant",
         det(actual - actual.transpose()) == 1 if actual.rows else True,
         "det(restriction - restriction^T) = 1"))
    return checks


def verify_raw(s: IntMatrix, basis: IntMatrix) -> VerificationReport:
    """Verify a basis against a raw square form (no word recomputation)."""
    if basis.rows != s.rows:
        return VerificationReport((("shape", False,
                                    "basis rows do not match the form"),))
    return VerificationReport(tuple(_invariant_checks(s, basis, None, None)))


def verify(cert: DefectCertificate) -> VerificationReport:
    """Recompute everything a certificate claims and report per-invariant
    pass/fail."""
    checks: list[tuple[str, bool, str]] = []
    word_ok = cert.word.is_nonsplit
    checks.append(("word-nonsplit", word_ok, "word is nonsplit"))
    if not word_ok:
        return VerificationReport(tuple(checks))
    sd = seifert_matrix(cert.word)
    shape_ok = cert.basis.rows == sd.matrix.rows
    checks.append(("basis-shape", shape_ok,
                   "basis rows equal the brick count"))
    if not shape_ok:
        return VerificationReport(tuple(checks))
    checks.extend(_invariant_checks(sd.matrix, cert.basis,
                                    cert.restriction, cert.alexander))
    if cert.support_prefix is not None:
        outside = [k for k, b in enumerate(sd.bricks)
                   if not b.end < cert.support_prefix]
        half = cert.basis.cols // 2
        ok = all(cert.basis[i, j] == 0
                 for i in outside for j in range(half))
        checks.append(("support-prefix", ok,
                       f"v-half supported on the first "
                       f"{cert.support_prefix} letters"))
    return VerificationReport(tuple(checks))


def genus_upper_bound(w: BraidWord, cert: DefectCertificate) -> int:
    """genus(w) - rank/2 for a verified certificate on w."""
    from .braid import closure_stats
    if cert.word != w:
        raise SearchError("certificate word does not match")
    report = verify(cert)
    if not report.passed:
        raise SearchError(f"certificate fails: {report.failures}")
    return closure_stats(w).genus - cert.rank // 2


# ---------------------------------------------------------------------------
# composition


def compose_plumb(m: IntMatrix, *, column=None, row=None) -> IntMatrix:
    """Extend an Alexander-trivial form by one plumbing block of rank 2.

    The result has a zero column over ``m``, a zero row, and a final row
    [*,...,*,1,1]; the wildcard column/row default to zero and may be
    populated from an actual plumbed Seifert matrix.  Alexander-triviality
    of the output is asserted.
    """
    if not m.is_square:
        raise SearchError("plumbing extension needs a square form")
    n = m.rows
    column = list(column) if column is not None else [0] * n
    row = list(row) if row is not None else [0] * n
    if len(column) != n or len(row) != n:
        raise SearchError("wildcard vectors must have the form's size")
    rows = [list(m.row(i)) + [0, column[i]] for i in range(n)]
    rows.append([0] * n + [0, 0])
    rows.append(row + [1, 1])
    out = IntMatrix.from_rows(rows)
    if not is_alexander_trivial(out):
        raise AssertionError("plumbing extension lost Alexander-triviality")
    return out


def _first_occurrence_positions(w: BraidWord) -> list[int]:
    seen: set[int] = set()
    out = []
    for p, a in enumerate(w.letters):
        if a not in seen:
            seen.add(a)
            out.append(p)
    return out


def has_block_form(r: IntMatrix) -> bool:
    """Zero upper-left block, upper-unitriangular upper-right block, lower-left
    block zero on and above the diagonal."""
    if r.rows != r.cols or r.rows % 2:
        return False
    k = r.rows // 2
    for i in range(k):
        for j in range(k):
            if r[i, j] != 0:
                return False
            ur = r[i, k + j]
            if (i == j and ur != 1) or (i > j and ur != 0):
                return False
            if i >= j and r[k + i, j] != 0:
                return False
    return True


def compose_product(cert_a: DefectCertificate,
                    cert_b: DefectCertificate) -> DefectCertificate:
    """Concatenation composition: from a certificate on alpha*beta' (beta'
    = beta with all but the first occurrence of each generator deleted,
    v-half supported on the alpha prefix) and a certificate on beta, build
    a verified certificate on alpha*beta of rank rank(A) + rank(B)."""
    beta = cert_b.word
    if beta.strands != cert_a.word.strands:
        raise SearchError("strand counts differ")
    if not beta.is_nonsplit:
        raise SearchError("beta must be nonsplit")
    first_pos = _first_occurrence_positions(beta)
    bprime = tuple(beta.letters[p] for p in first_pos)
    wa = cert_a.word.letters
    if len(wa) < len(bprime) or wa[len(wa) - len(bprime):] != bprime:
        raise SearchError(
            "first certificate must live on alpha followed by the "
            "first-occurrence word of beta")
    alpha_len = len(wa) - len(bprime)
    if cert_a.support_prefix is None or cert_a.support_prefix > alpha_len:
        raise SearchError("first certificate lacks the required prefix support")
    if not has_block_form(cert_a.restriction):
        raise SearchError("first certificate restriction lacks the block form")
    ra = verify(cert_a)
    if not ra.passed:
        raise SearchError(f"first certificate fails: {ra.failures}")
    rb = verify(cert_b)
    if not rb.passed:
        raise SearchError(f"second certificate fails: {rb.failures}")

    big = BraidWord(beta.strands, wa[:alpha_len] + beta.letters)
    keep_first = {alpha_len + p for p in first_pos}
    deleted_a = {alpha_len + p for p in range(len(beta))
                 if alpha_len + p not in keep_first}
    e_a = embed_subword(big, deleted_a)
    e_b = embed_subword(big, set(range(alpha_len)))

    ka, kb = cert_a.rank // 2, cert_b.rank // 2
    cols_a = [cert_a.basis.col(j) for j in range(cert_a.rank)]
    cols_b = [cert_b.basis.col(j) for j in range(cert_b.rank)]
    new_cols = (
        [e_b.mul_vec(c) for c in cols_b[:kb]]
        + [e_a.mul_vec(c) for c in cols_a[:ka]]
        + [e_b.mul_vec(c) for c in cols_b[kb:]]
        + [e_a.mul_vec(c) for c in cols_a[ka:]])
    basis = IntMatrix.from_cols(new_cols, rows=e_a.rows)
    support = None
    if cert_b.support_prefix is not None:
        support = alpha_len + cert_b.support_prefix
    out = make_certificate(
        big, basis, support_prefix=support,
        provenance=f"compose(alpha_len={alpha_len}, "
                   f"ranks={cert_a.rank}+{cert_b.rank})")
    if not has_block_form(out.restriction):
        raise AssertionError("composed restriction lost the block form")
    report = verify(out)
    if not report.passed:
        raise AssertionError(f"composed certificate fails: {report.failures}")
    return out


def transport_certificate(cert: DefectCertificate, big: BraidWord,
                          deleted, provenance: str | None = None
                          ) -> DefectCertificate:
    """Push a certificate through the subword embedding of a larger word.

    ``deleted`` are the positions of ``big`` whose removal yields the
    certificate's word; the restricted form is preserved exactly."""
    keep = [p for p in range(len(big.letters)) if p not in set(deleted)]
    sub = BraidWord(big.strands, tuple(big.letters[p] for p in keep))
    if sub != cert.word:
        raise SearchError("deletion does not reproduce the certificate word")
    e = embed_subword(big, deleted)
    cols = [e.mul_vec(cert.basis.col(j)) for j in range(cert.basis.cols)]
    basis = IntMatrix.from_cols(cols, rows=e.rows)
    out = make_certificate(big, basis, provenance=provenance
                           or f"transport({cert.word.to_text()})")
    assert out.restriction == cert.restriction, \
        "transport changed the restricted form"
    return out


# ---------------------------------------------------------------------------
# certificate store


def word_hash(w: BraidWord) -> str:
    return hashlib.sha256(w.to_text().encode()).hexdigest()[:16]


class CertificateStore:
    """One JSON file per (word-hash, rank) under a directory."""

    def __init__(self, path):
        self.path = Path(path)

    def save(self, cert: DefectCertificate) -> Path:
        self.path.mkdir(parents=True, exist_ok=True)
        name = f"{word_hash(cert.word)}_r{cert.rank}.json"
        target = self.path / name
        target.write_text(json.dumps(cert.to_json(), indent=1,
                                     sort_keys=True) + "\n")
        return target

    def load_all(self) -> list[DefectCertificate]:
        if not self.path.is_dir():
            return []
        out = []
        for f in sorted(self.path.glob("*.json")):
            out.append(DefectCertificate.from_json(json.loads(f.read_text())))
        return out

    def certificates_for(self, w: BraidWord) -> list[DefectCertificate]:
        h = word_hash(w)
        out = []
        if self.path.is_dir():
            for f in sorted(self.path.glob(f"{h}_r*.json")):
                out.append(DefectCertificate.from_json(
                    json.loads(f.read_text())))
        return out

    def best(self, w: BraidWord) -> DefectCertificate | None:
        certs = self.certificates_for(w)
        return max(certs, key=lambda c: c.rank, default=None)


def bundled_store() -> CertificateStore:
    """The certificate store shipped with the package."""
    return CertificateStore(Path(__file__).parent / "store")
