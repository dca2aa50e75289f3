"""Shared independent oracles for the test suite.

These deliberately avoid the engine's chamber/iteration code paths: the
Zariski oracle enumerates every negative-definite subset of declared curves
and solves each candidate directly, so agreement with the iterative
algorithm is a genuine two-route check.  The inner loops run on plain
integers (scaled by the subset Gram determinant) to keep the exhaustive
sweep fast; only the surviving decomposition is converted back to exact
rationals.
"""

from fractions import Fraction as Q

from kstab.rationals import det, mat_inverse


def _int_rows(vectors):
    out = []
    for v in vectors:
        row = []
        for x in v:
            q = Q(x)
            assert q.denominator == 1
            row.append(q.numerator)
        out.append(tuple(row))
    return out


class ZariskiOracle:
    """Precomputed exhaustive-subset decomposition oracle for one surface."""

    def __init__(self, surface):
        self.surface = surface
        self.labels = sorted(surface.negative_curves)
        self.curves = _int_rows(surface.negative_curves[l] for l in self.labels)
        gram_int = _int_rows(surface.gram)
        # gc[i] = Gram * curve_i, so pairings are single dot products
        self.gc = [
            tuple(sum(gram_int[r][c] * curve[c] for c in range(len(curve))) for r in range(len(curve)))
            for curve in self.curves
        ]
        self.pairs = [
            [sum(a * b for a, b in zip(ci, gcj)) for gcj in self.gc] for ci in self.curves
        ]
        self.subsets = self._enumerate()

    def _enumerate(self):
        n = len(self.labels)
        out = [((), None, 1)]

        def extend(prefix, start):
            k = len(prefix)
            for i in range(start, n):
                cand = prefix + (i,)
                gram = [[self.pairs[a][b] for b in cand] for a in cand]
                d = det([[Q(x) for x in row] for row in gram])
                if (-1) ** (k + 1) * d <= 0:
                    continue  # not negative definite (earlier minors already hold)
                inv = mat_inverse([[Q(x) for x in row] for row in gram])
                delta = int(d)
                adj = [[int(inv[r][c] * delta) for c in range(k + 1)] for r in range(k + 1)]
                out.append((cand, adj, delta))
                extend(cand, i + 1)

        extend((), 0)
        return out

    def decompose(self, d):
        """Unique valid (positive part, strict negative dict) for an integer class."""
        import numpy as np

        d_int = _int_rows([d])[0]
        if not hasattr(self, "_np"):
            # group subsets by size for a vectorized integer sweep
            by_k = {}
            for idx_set, adj, delta in self.subsets:
                k = len(idx_set)
                if k == 0:
                    continue
                by_k.setdefault(k, []).append((idx_set, adj, delta))
            packed = {}
            for k, items in by_k.items():
                packed[k] = (
                    np.array([it[0] for it in items], dtype=np.int64),
                    np.array([it[1] for it in items], dtype=np.int64),
                    np.array([it[2] for it in items], dtype=np.int64),
                    np.array([[self.curves[i] for i in it[0]] for it in items], dtype=np.int64),
                )
            self._np = packed
            self._gc_np = np.array(self.gc, dtype=np.int64)
            self._curves_np = np.array(self.curves, dtype=np.int64)
        gc = self._gc_np
        dv = np.array(d_int, dtype=np.int64)
        rhs_all = gc @ dv
        found = []
        # the empty support
        if (dv @ gc.T >= 0).all():
            found.append((tuple(Q(x) for x in d_int), {}))
        for k, (idx, adj, delta, cur) in self._np.items():
            sigma = np.sign(delta)[:, None]
            rhs = rhs_all[idx]
            a = np.einsum("nij,nj->ni", adj, rhs)
            ok = (sigma * a >= 0).all(axis=1)
            if not ok.any():
                continue
            p_scaled = delta[ok, None] * dv[None, :] - np.einsum(
                "ni,nik->nk", a[ok], cur[ok]
            )
            nef = (np.sign(delta[ok])[:, None] * (p_scaled @ gc.T) >= 0).all(axis=1)
            for row in np.flatnonzero(ok)[nef]:
                dl = int(delta[row])
                coeffs = [int(x) for x in a[row]]
                p = [dl * x for x in d_int]
                for coeff, ci in zip(coeffs, (self.curves[i] for i in idx[row])):
                    p = [pp - coeff * cc for pp, cc in zip(p, ci)]
                positive = tuple(Q(x, dl) for x in p)
                nu = {self.labels[int(i)]: Q(x, dl) for i, x in zip(idx[row], coeffs)}
                found.append((positive, nu))
        positives = {f[0] for f in found}
        assert len(positives) == 1, f"oracle ambiguity for {d}: {found}"
        strict = [{l: x for l, x in nu.items() if x > 0} for _, nu in found]
        assert all(s == strict[0] for s in strict)
        return found[0][0], strict[0]

    def volume(self, d):
        positive, _ = self.decompose(d)
        return self.surface.square(positive)


def random_pseff_class(surface, rng, max_terms=4, max_weight=3):
    """Random nonnegative integer combination of declared curves."""
    labels = sorted(surface.negative_curves)
    while True:
        d = [0] * surface.rank
        for _ in range(rng.randint(1, max_terms)):
            c = surface.negative_curves[labels[rng.randrange(len(labels))]]
            w = rng.randint(0, max_weight)
            d = [x + w * int(y) for x, y in zip(d, c)]
        if any(x != 0 for x in d):
            return tuple(d)
