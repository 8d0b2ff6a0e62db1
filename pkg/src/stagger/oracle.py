"""Brute-force oracles for the graded-module and s-structure operations.

Everything here recomputes results from first principles by materializing
modules weight-by-weight on a finite window and doing plain linear algebra
over the rationals (its own Gauss-Jordan, no code shared with the closed-form
fast paths).  The intended use is the agreement suite: every optimized
operation in the package is cross-checked against its oracle on randomized
inputs, and a disagreement is shrunk to a small counterexample.

Window soundness.  A finitely generated graded module is determined on the
window [lo, hi] with lo = (min occupied weight) - 2 and hi = (max occupied
weight) + 2: all torsion socles are >= lo + 2, so any string still alive
at weight lo + 1 must be free, and nothing is generated above hi - 2.  The
free part is truncated at the floor and recognized by its reach.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .grmod import (
    GradedModule,
    Presentation,
    ZERO,
    canonical_decompose,
    ext1_dim,
    fmt_module,
    gm,
    hom_dim,
    present,
)
from .report import SuiteReport
from .sstruct import SConfig, SITE_U, SITE_X, Site, check_on_site, member, sigma, site_z, step
from . import sampling

Q = Fraction


# ---------------------------------------------------------------------------
# plain linear algebra over Fraction (independent of grmod's)
# ---------------------------------------------------------------------------


def _rref(rows: List[List[Fraction]]) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    mat = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    ncols = len(mat[0]) if mat else 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = Q(1) / mat[r][c]
        mat[r] = [e * inv for e in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def _mat_rank(rows: List[List[Fraction]]) -> int:
    return len(_rref(rows)[0])


def _matmul(a: List[List[Fraction]], b: List[List[Fraction]]) -> List[List[Fraction]]:
    """a (m x k) times b (k x n)."""
    m = len(a)
    k = len(b)
    n = len(b[0]) if b else 0
    out = [[Q(0)] * n for _ in range(m)]
    for i in range(m):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            row = out[i]
            for j in range(n):
                if bt[j] != 0:
                    row[j] += c * bt[j]
    return out


def _identity(n: int) -> List[List[Fraction]]:
    return [[Q(1) if i == j else Q(0) for j in range(n)] for i in range(n)]


def _solve_coords(basis: List[List[Fraction]], target: List[Fraction]
                  ) -> Optional[List[Fraction]]:
    """Coordinates of target in the span of basis vectors, or None."""
    if not basis:
        return [] if all(e == 0 for e in target) else None
    m = len(basis[0])
    aug = [[basis[j][i] for j in range(len(basis))] + [target[i]]
           for i in range(m)]
    red, pivots = _rref(aug)
    ncols = len(basis)
    if ncols in pivots:
        return None  # inconsistent
    coords = [Q(0)] * ncols
    for row, pc in zip(red, pivots):
        coords[pc] = row[-1]
    return coords


# ---------------------------------------------------------------------------
# window materialization
# ---------------------------------------------------------------------------


@dataclass
class WindowModel:
    """Explicit bases and x-action matrices of a module on [lo, hi].

    ``dims[w]`` is dim M_w; ``xmat[w]`` (for lo < w <= hi) is the matrix of
    x : M_w -> M_{w-1}, rows indexed by the basis of M_{w-1}.
    """

    lo: int
    hi: int
    dims: Dict[int, int] = field(default_factory=dict)
    xmat: Dict[int, List[List[Fraction]]] = field(default_factory=dict)


def _materialize(gens: Sequence[int], colw: Sequence[int],
                 entries: Dict[Tuple[int, int], Fraction],
                 lo: int, hi: int) -> WindowModel:
    """Weight-by-weight quotient bases for coker of a monomial-graded matrix.

    At weight w the ambient space has one coordinate per generator of weight
    >= w (the monomial x^{g_i - w} e_i) and each relation column of weight
    >= w contributes the vector of its coefficients.  A basis of the
    quotient is chosen as the non-pivot coordinates of the relation span,
    and vectors are projected by eliminating against its reduced rows.
    """
    model = WindowModel(lo=lo, hi=hi)
    # per-weight reduction data, used to build the x matrices
    basis_pos: Dict[int, List[int]] = {}    # gen indices giving quotient basis
    red_rows: Dict[int, Tuple[List[List[Fraction]], List[int]]] = {}
    rows_at: Dict[int, List[int]] = {}

    for w in range(hi, lo - 1, -1):
        rows = [i for i in range(len(gens)) if gens[i] >= w]
        pos = {i: idx for idx, i in enumerate(rows)}
        rel_vecs = []
        for j in range(len(colw)):
            if colw[j] >= w:
                v = [Q(0)] * len(rows)
                for i in rows:
                    c = entries.get((i, j))
                    if c is not None:
                        v[pos[i]] = c
                rel_vecs.append(v)
        red, pivots = _rref(rel_vecs) if rel_vecs else ([], [])
        free_coords = [idx for idx in range(len(rows)) if idx not in pivots]
        rows_at[w] = rows
        red_rows[w] = (red, pivots)
        basis_pos[w] = [rows[idx] for idx in free_coords]
        model.dims[w] = len(free_coords)

    def project(w: int, vec: List[Fraction]) -> List[Fraction]:
        red, pivots = red_rows[w]
        v = list(vec)
        for row, pc in zip(red, pivots):
            f = v[pc]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        keep = [idx for idx in range(len(rows_at[w])) if idx not in pivots]
        return [v[idx] for idx in keep]

    for w in range(hi, lo, -1):
        # x maps the basis monomial of gen i at weight w to the same gen's
        # monomial at weight w-1
        cols = []
        posm1 = {i: idx for idx, i in enumerate(rows_at[w - 1])}
        for i in basis_pos[w]:
            e = [Q(0)] * len(rows_at[w - 1])
            e[posm1[i]] = Q(1)
            cols.append(project(w - 1, e))
        nrows = model.dims[w - 1]
        model.xmat[w] = [[cols[j][r] for j in range(len(cols))]
                         for r in range(nrows)]
    return model


def _model_of_presentation(p: Presentation, lo: int, hi: int) -> WindowModel:
    return _materialize(list(p.gens), list(p.rel.col_weights),
                        dict(p.rel.entries), lo, hi)


def _model_of_module(M: GradedModule, lo: int, hi: int) -> WindowModel:
    return _model_of_presentation(present(M), lo, hi)


def _composite(model: WindowModel, w_src: int, steps: int) -> List[List[Fraction]]:
    """Matrix of x^steps : M_{w_src} -> M_{w_src - steps}."""
    mat = _identity(model.dims.get(w_src, 0))
    for w in range(w_src, w_src - steps, -1):
        mat = _matmul(model.xmat[w], mat)
    return mat


# ---------------------------------------------------------------------------
# string reconstruction (canonical form from window data)
# ---------------------------------------------------------------------------


def _strings(lo: int, hi: int, dims: Dict[int, int],
             xmat: Dict[int, List[List[Fraction]]]) -> GradedModule:
    """Recover the canonical decomposition from ranks of iterated x-maps.

    r_j(w) = dim (x^j M)_w counts strings with generator weight >= w + j
    still alive at w.  D_j(w) = r_j(w) - r_{j+1}(w) counts strings with
    generator weight exactly w + j and length >= j + 1, so with
    A(g, l) = D_{l-1}(g - l + 1) the number of T(g, n) summands is
    A(g, n) - A(g, n + 1), and strings reaching length >= g - lo must be
    free (their socle would be at the floor, which soundness of the window
    rules out for torsion).
    """
    rank_j: Dict[int, Dict[int, int]] = {}
    for w in range(lo, hi + 1):
        rj = {0: dims.get(w, 0)}
        comp = _identity(dims.get(w, 0))
        for j in range(1, hi - w + 1):
            comp = _matmul(comp, xmat[w + j])
            rj[j] = _mat_rank(comp)
            if rj[j] == 0:
                break
        rank_j[w] = rj

    def r(j: int, w: int) -> int:
        if w < lo or w > hi or w + j > hi:
            return 0
        return rank_j[w].get(j, 0)

    def D(j: int, w: int) -> int:
        return r(j, w) - r(j + 1, w)

    def A(g: int, l: int) -> int:
        return D(l - 1, g - l + 1)

    frees: List[int] = []
    tors: List[Tuple[int, int]] = []
    for g in range(lo, hi + 1):
        reach = g - lo
        if reach < 1:
            continue
        for _ in range(A(g, reach)):
            frees.append(g)
        for n in range(1, reach):
            for _ in range(A(g, n) - A(g, n + 1)):
                tors.append((g, n))
    out = gm(frees, tors)
    # sanity: the strings must reproduce the window dimensions exactly
    for w in range(lo, hi + 1):
        dim = sum(1 for d in out.free if d >= w) + sum(
            1 for g, n in out.torsion if g >= w > g - n
        )
        if dim != dims.get(w, 0):
            raise AssertionError(
                "string reconstruction inconsistent at weight %d" % w
            )
    return out


# ---------------------------------------------------------------------------
# oracle operations
# ---------------------------------------------------------------------------


def _occupied(M: GradedModule) -> Tuple[int, int]:
    return M.occupied_window()


def oracle_decompose(p: Presentation) -> GradedModule:
    """Canonical form of coker(p) by window materialization."""
    if not p.gens:
        return ZERO
    ws = list(p.gens) + list(p.rel.col_weights)
    lo, hi = min(ws) - 2, max(ws) + 2
    model = _model_of_presentation(p, lo, hi)
    return _strings(lo, hi, model.dims, model.xmat)


def oracle_hom_ext(M: GradedModule, N: GradedModule) -> Tuple[int, int]:
    """(dim Hom, dim Ext^1) from explicit x-action matrices of N.

    Hom out of F(a) is N_a; Hom out of T(g, n) is the kernel of
    x^n : N_g -> N_{g-n} and Ext^1 out of it is the cokernel of the same
    matrix (apply Hom(-, N) to 0 -> F(g-n) -> F(g) -> T(g,n) -> 0).
    """
    if M.is_zero or N.is_zero:
        return (0, 0)
    lom, him = _occupied(M)
    lon, hin = _occupied(N)
    lo, hi = min(lom, lon) - 2, max(him, hin) + 2
    model = _model_of_module(N, lo, hi)
    h = e = 0
    for a in M.free:
        h += model.dims.get(a, 0)
    for g, n in M.torsion:
        mat = _composite(model, g, n)
        rk = _mat_rank(mat)
        h += model.dims.get(g, 0) - rk
        e += model.dims.get(g - n, 0) - rk
    return (h, e)


def oracle_max_sub(site: Site, cfg: SConfig, w: int,
                   M: GradedModule) -> GradedModule:
    """Maximal submodule of M lying in C_{<=w}, by weight-subspace search.

    Allowed generator subspaces are chosen per site and mode, closed
    downward under the x-action, and the resulting sub-representation is
    decomposed back into strings.
    """
    check_on_site(site, M)
    if M.is_zero:
        return ZERO
    if cfg.z_mode == "trivial" or site.kind == "U":
        return M if w >= 0 else ZERO
    occ_lo, occ_hi = _occupied(M)
    lo, hi = min(occ_lo, w) - 2, occ_hi + 2
    model = _model_of_module(M, lo, hi)

    def allowed(a: int) -> List[List[Fraction]]:
        if a > w:
            return []
        dim = model.dims.get(a, 0)
        if dim == 0:
            return []
        if site.kind == "Z" or w >= 0:
            return _identity(dim)
        # site X, w < 0: only torsion elements may generate
        mat = _composite(model, a, a - lo)
        red, pivots = _rref(mat)
        # kernel of mat: solve by rref of the matrix itself
        ncols = dim
        basis = []
        for fc in range(ncols):
            if fc in pivots:
                continue
            v = [Q(0)] * ncols
            v[fc] = Q(1)
            for row, pc in zip(red, pivots):
                v[pc] = -row[fc]
            basis.append(v)
        return basis

    span: Dict[int, List[List[Fraction]]] = {}
    for a in range(hi, lo - 1, -1):
        vecs = list(allowed(a))
        if a + 1 <= hi:
            x_a1 = model.xmat.get(a + 1, [])
            for v in span.get(a + 1, []):
                img = [sum((x_a1[r][j] * v[j] for j in range(len(v))), Q(0))
                       for r in range(model.dims.get(a, 0))]
                vecs.append(img)
        red, _p = _rref(vecs) if vecs else ([], [])
        span[a] = red

    dims = {a: len(span[a]) for a in range(lo, hi + 1)}
    xm: Dict[int, List[List[Fraction]]] = {}
    for a in range(lo + 1, hi + 1):
        x_a = model.xmat.get(a, [])
        cols = []
        for v in span[a]:
            img = [sum((x_a[r][j] * v[j] for j in range(len(v))), Q(0))
                   for r in range(model.dims.get(a - 1, 0))]
            coords = _solve_coords(span[a - 1], img)
            if coords is None:
                raise AssertionError("submodule span not x-stable")
            cols.append(coords)
        xm[a] = [[cols[j][r] for j in range(len(cols))]
                 for r in range(dims[a - 1])]
    return _strings(lo, hi, dims, xm)


def _member_family(site: Site, cfg: SConfig, bound: str, c: int,
                   M: GradedModule) -> List[GradedModule]:
    """Windowed generating family of C_{<=c} (bound 'le') or C_{>=c} ('ge').

    Every module of the cone whose Hom against M could be nonzero has a
    summand appearing here, so Hom-orthogonality against the family decides
    membership of M in the opposite cone.
    """
    lo, hi = _occupied(M)
    L = max(1, M.max_torsion_length())
    fam: List[GradedModule] = []
    if cfg.z_mode == "trivial" or site.kind == "U":
        nontrivial = (c >= 0) if bound == "le" else (c <= 0)
        if not nontrivial:
            return []
        if site.kind != "Z":
            fam.extend(gm([a]) for a in range(lo, hi + 1))
        if site.kind != "U":
            cap = L if site.kind == "X" else min(L, site.n)
            fam.extend(gm([], [(a, l)]) for a in range(lo, hi + 1)
                       for l in range(1, cap + 1))
        return fam
    if bound == "le":
        top = min(c, hi)
        for a in range(lo, top + 1):
            for l in range(1, (L if site.kind == "X" else min(L, site.n)) + 1):
                fam.append(gm([], [(a, l)]))
        if site.kind == "X" and c >= 0:
            # the free probes must reach down to c even when c < lo: a free
            # summand of M occupies every weight below its generator
            fam.extend(gm([a]) for a in range(min(lo, c), top + 1))
        return fam
    # bound == 'ge': torsion with socle >= c, plus free when c <= 0 on X
    for b in range(max(c, lo), hi + 1):
        lcap = b - c + 1
        if site.kind == "Z":
            lcap = min(lcap, site.n)
        for l in range(1, lcap + 1):
            fam.append(gm([], [(b, l)]))
    if site.kind == "X" and c <= 0:
        fam.extend(gm([b]) for b in range(lo, hi + 1))
    return fam


def oracle_member(site: Site, cfg: SConfig, direction: str, w: int,
                  M: GradedModule) -> bool:
    """Membership by Hom-orthogonality against the opposite cone's family."""
    check_on_site(site, M)
    if M.is_zero:
        return True
    if direction == "ge":
        fam = _member_family(site, cfg, "le", w - 1, M)
        return all(oracle_hom_ext(C, M)[0] == 0 for C in fam)
    if direction == "le":
        fam = _member_family(site, cfg, "ge", w + 1, M)
        return all(oracle_hom_ext(M, G)[0] == 0 for G in fam)
    raise ValueError("direction must be 'le' or 'ge'")


def oracle_step(site: Site, cfg: SConfig, M: GradedModule) -> Optional[int]:
    """Step by exhaustive search over the window."""
    if M.is_zero:
        return None
    lo, hi = _occupied(M)
    for w in range(min(lo, 0) - 1, max(hi, 0) + 2):
        if oracle_member(site, cfg, "le", w, M):
            if oracle_max_sub(site, cfg, w - 1, M).is_zero:
                return w
            return None
    return None


# ---------------------------------------------------------------------------
# staggered aisle oracle
# ---------------------------------------------------------------------------


def _formal_window(components: Dict[int, GradedModule]) -> Tuple[int, int, int, int, int]:
    degs = [k for k, m in components.items() if not m.is_zero]
    if not degs:
        return (0, 0, 0, 0, 0)
    wlo = min(m.occupied_window()[0] for m in components.values() if not m.is_zero)
    whi = max(m.occupied_window()[1] for m in components.values() if not m.is_zero)
    L = max([m.max_torsion_length() for m in components.values()] + [1])
    return (min(degs), max(degs), wlo, whi, L)


def oracle_aisle(cfg: SConfig, pU: int, pZ: int,
                 components: Dict[int, GradedModule], which: str) -> bool:
    """Aisle membership by orthogonality against shifted heart generators.

    ``which`` is 'le0' or 'ge0'.  In weight mode the perversity must be
    strict (pZ = pU + 1), so the heart is generated by the structure sheaf
    and the skyscraper simples; in trivial mode free and skyscraper
    generators placed by degree suffice.  Hom groups in degree 0 of the
    derived category are computed with the brute-force hom/ext oracle:
    Hom_D(F, G)_0 = sum_k hom(F_k, G_k) + ext1(F_k, G_{k-1}).
    """
    if which not in ("le0", "ge0"):
        raise ValueError("which must be 'le0' or 'ge0'")
    comps = {k: m for k, m in components.items() if not m.is_zero}
    if not comps:
        return True
    if cfg.z_mode == "weight" and pZ != pU + 1:
        raise ValueError("weight-mode aisle oracle needs a strict perversity")
    dlo, dhi, wlo, whi, L = _formal_window(comps)
    pad = L + 2
    gens: List[Tuple[int, GradedModule]] = []  # (degree, module) in the cone
    for d in range(dlo - 1, dhi + 2):
        if cfg.z_mode == "weight":
            i = (d - pU) if which == "le0" else (pU - d)
            if i >= 1:
                gens.append((d, gm([0])))
            for n in range(wlo - pad, whi + pad + 1):
                base = pU + 1 - n
                i = (d - base) if which == "le0" else (base - d)
                if i >= 1:
                    gens.append((d, gm([], [(n, 1)])))
        else:
            i = (d - pU) if which == "le0" else (pU - d)
            if i >= 1:
                for a in range(wlo - pad, whi + pad + 1):
                    gens.append((d, gm([a])))
            i = (d - pZ) if which == "le0" else (pZ - d)
            if i >= 1:
                for a in range(wlo - pad, whi + pad + 1):
                    gens.append((d, gm([], [(a, 1)])))

    zero = ZERO
    for d, C in gens:
        if which == "le0":
            # Hom_D(F, C@d)_0 = hom(F_d, C) + ext1(F_{d+1}, C)
            h = oracle_hom_ext(comps.get(d, zero), C)[0] \
                + oracle_hom_ext(comps.get(d + 1, zero), C)[1]
        else:
            # Hom_D(C@d, F)_0 = hom(C, F_d) + ext1(C, F_{d-1})
            h = oracle_hom_ext(C, comps.get(d, zero))[0] \
                + oracle_hom_ext(C, comps.get(d - 1, zero))[1]
        if h != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# agreement suite
# ---------------------------------------------------------------------------


def _shrink_module(M: GradedModule, fails) -> GradedModule:
    """Greedy minimization: drop summands, then shorten torsion strings."""
    changed = True
    while changed:
        changed = False
        for i in range(len(M.free)):
            cand = gm(M.free[:i] + M.free[i + 1:], M.torsion)
            if fails(cand):
                M = cand
                changed = True
                break
        else:
            for i in range(len(M.torsion)):
                cand = gm(M.free, M.torsion[:i] + M.torsion[i + 1:])
                if fails(cand):
                    M = cand
                    changed = True
                    break
            else:
                for i, (g, n) in enumerate(M.torsion):
                    if n > 1:
                        cand = gm(M.free,
                                  M.torsion[:i] + ((g, n - 1),) + M.torsion[i + 1:])
                        if fails(cand):
                            M = cand
                            changed = True
                            break
    return M


def _random_presentation(rng: random.Random) -> Presentation:
    from .grmod import MonoMatrix

    ngen = rng.randint(1, 4)
    gens = sorted((rng.randint(-5, 5) for _ in range(ngen)), reverse=True)
    ncol = rng.randint(0, 4)
    colw = []
    entries: Dict[Tuple[int, int], Fraction] = {}
    cols_kept = 0
    for _ in range(ncol):
        rows = [i for i in range(ngen) if rng.random() < 0.6]
        if not rows:
            continue
        v = min(gens[i] for i in rows) - rng.randint(0, 3)
        j = cols_kept
        cols_kept += 1
        colw.append(v)
        for i in rows:
            entries[(i, j)] = Q(rng.choice([1, -1, 2, -2, 3]))
    mat = MonoMatrix(tuple(gens), tuple(colw))
    for (i, j), c in entries.items():
        mat.set(i, j, c)
    return Presentation(tuple(gens), mat)


def agreement_suite(seed: int = 1, samples: int = 200) -> SuiteReport:
    """Cross-check every optimized operation against its brute-force oracle.

    Ops covered: canonical decomposition, hom/ext dimensions, membership on
    each site and mode, sigma truncation (maximal sub), step, and staggered
    aisle membership.  Each runs on ``samples`` seeded random instances;
    failures are shrunk before being recorded.
    """
    rep = SuiteReport(suite="oracle-agreement", seed=seed, samples=samples,
                      mode="both")
    rng = random.Random(seed)
    cfgs = [SConfig("weight"), SConfig("trivial")]

    c_dec = rep.check("agree_decompose")
    for _ in range(samples):
        p = _random_presentation(rng)
        fast = canonical_decompose(p)
        slow = oracle_decompose(p)
        ok = fast == slow
        c_dec.record(ok, "" if ok else
                     "decompose mismatch: gens=%r cols=%r fast=%s oracle=%s"
                     % (p.gens, p.rel.col_weights, fmt_module(fast),
                        fmt_module(slow)))

    c_he = rep.check("agree_hom_ext")
    for _ in range(samples):
        M = sampling.random_module(rng)
        N = sampling.random_module(rng)
        fast = (hom_dim(M, N), ext1_dim(M, N))
        slow = oracle_hom_ext(M, N)
        if fast != slow:
            def bad_m(mm):
                return (hom_dim(mm, N), ext1_dim(mm, N)) != oracle_hom_ext(mm, N)
            M = _shrink_module(M, bad_m)

            def bad_n(nn):
                return (hom_dim(M, nn), ext1_dim(M, nn)) != oracle_hom_ext(M, nn)
            N = _shrink_module(N, bad_n)
            c_he.record(False, "hom/ext mismatch on (%s, %s): fast=%r oracle=%r"
                        % (fmt_module(M), fmt_module(N),
                           (hom_dim(M, N), ext1_dim(M, N)),
                           oracle_hom_ext(M, N)))
        else:
            c_he.record(True, "")

    c_mem = rep.check("agree_member")
    sites = [SITE_X, SITE_U, site_z(1), site_z(2), site_z(3)]
    for _ in range(samples):
        cfg = rng.choice(cfgs)
        site = rng.choice(sites)
        w = rng.randint(-6, 6)
        direction = rng.choice(["le", "ge"])
        if site.kind == "X":
            M = sampling.random_module(rng)
        elif site.kind == "U":
            M = sampling.random_module(rng).free_part()
        else:
            M = sampling.random_torsion_module(rng, max_len=site.n)
        fast = member(site, cfg, direction, w, M)
        slow = oracle_member(site, cfg, direction, w, M)
        if fast != slow:
            def bad(mm):
                return member(site, cfg, direction, w, mm) != \
                    oracle_member(site, cfg, direction, w, mm)
            M = _shrink_module(M, bad)
            c_mem.record(False,
                         "member mismatch %s %s %s w=%d on %s: fast=%r oracle=%r"
                         % (site, cfg.z_mode, direction, w, fmt_module(M),
                            member(site, cfg, direction, w, M),
                            oracle_member(site, cfg, direction, w, M)))
        else:
            c_mem.record(True, "")

    c_sig = rep.check("agree_sigma")
    c_st = rep.check("agree_step")
    for _ in range(samples):
        cfg = rng.choice(cfgs)
        site = rng.choice([SITE_X, site_z(1), site_z(2), site_z(3)])
        w = rng.randint(-6, 6)
        if site.kind == "X":
            M = sampling.random_module(rng)
        else:
            M = sampling.random_torsion_module(rng, max_len=site.n)
        fast = sigma(site, cfg, "le", w, M).sub
        slow = oracle_max_sub(site, cfg, w, M)
        if fast != slow:
            def bad(mm):
                return sigma(site, cfg, "le", w, mm).sub != \
                    oracle_max_sub(site, cfg, w, mm)
            M = _shrink_module(M, bad)
            c_sig.record(False,
                         "sigma mismatch %s %s w=%d on %s: fast=%s oracle=%s"
                         % (site, cfg.z_mode, w, fmt_module(M),
                            fmt_module(sigma(site, cfg, "le", w, M).sub),
                            fmt_module(oracle_max_sub(site, cfg, w, M))))
        else:
            c_sig.record(True, "")
        fs = step(site, cfg, M)
        ss = oracle_step(site, cfg, M)
        c_st.record(fs == ss, "step mismatch %s %s on %s: fast=%r oracle=%r"
                    % (site, cfg.z_mode, fmt_module(M), fs, ss))

    c_ais = rep.check("agree_aisle")
    from .stag import Perversity, aisle_member

    for _ in range(samples):
        cfg = rng.choice(cfgs)
        if cfg.z_mode == "weight":
            pU = rng.choice([-1, 0, 1])
            pZ = pU + 1
        else:
            pU = rng.choice([-1, 0, 1])
            pZ = pU + rng.choice([0, 1])
        comps = sampling.random_formal_components(rng, deg_lo=-2, deg_hi=2,
                                                  max_len=3)
        which = rng.choice(["le0", "ge0"])
        p = Perversity(pU, pZ)
        from .derived import FormalObject

        Fo = FormalObject(components=dict(comps))
        fast = aisle_member(cfg, p, Fo, which)
        slow = oracle_aisle(cfg, pU, pZ, comps, which)
        if fast != slow:
            # shrink by dropping whole degrees, then summands inside them
            def bad(cc):
                return aisle_member(cfg, p, FormalObject(components=dict(cc)),
                                    which) != oracle_aisle(cfg, pU, pZ, cc, which)
            for k in sorted(list(comps)):
                trial = {kk: vv for kk, vv in comps.items() if kk != k}
                if bad(trial):
                    comps = trial
            for k in sorted(list(comps)):
                def badk(mm, _k=k):
                    cc = dict(comps)
                    cc[_k] = mm
                    return bad(cc)
                comps[k] = _shrink_module(comps[k], badk)
            c_ais.record(False,
                         "aisle mismatch %s p=(%d,%d) %s on %r: fast=%r oracle=%r"
                         % (cfg.z_mode, pU, pZ, which,
                            {k: fmt_module(m) for k, m in comps.items()},
                            aisle_member(cfg, p, FormalObject(components=dict(comps)), which),
                            oracle_aisle(cfg, pU, pZ, comps, which)))
        else:
            c_ais.record(True, "")

    return rep
