"""Pure-Python kernels: the fallback backend when the C extension is absent.

Semantics here are the reference; moufang3._speedups mirrors this module
bit for bit (same draw order, same results) and the parity tests hold the
two implementations together.  Elements are 19-tuples of GF(3) residues.
"""

from __future__ import annotations

BACKEND = "pure"

MASK64 = (1 << 64) - 1
RNG_MULTIPLIER = 2685821657736338717

_IDENTITY = (0,) * 19

SWEEP_NAMES = (
    "moufang",
    "left_alternative",
    "right_alternative",
    "flexible",
    "inverse",
    "tail_central",
)


def _check_element(x):
    if len(x) != 19:
        raise ValueError("element must have 19 coordinates")
    for v in x:
        if v not in (0, 1, 2):
            raise ValueError(f"coordinate {v!r} is not a GF(3) residue")
    return tuple(x)


class LoopKernel:
    """Concrete evaluation of the table-defined product and inverse."""

    def __init__(self, f_flat, h_flat):
        self._f = [tuple(terms) for terms in f_flat]
        self._h = [tuple(terms) for terms in h_flat]
        for terms in self._f:
            for _, codes in terms:
                if any(not 0 <= c < 20 for c in codes):
                    raise ValueError("f-table factor code out of range")
        for terms in self._h:
            for _, codes in terms:
                if any(not 0 <= c < 10 for c in codes):
                    raise ValueError("h-table factor code out of range")

    def mul(self, x, y):
        x = _check_element(x)
        y = _check_element(y)
        return self._mul(x, y)

    def _mul(self, x, y):
        v = x[:10] + y[:10]
        out = []
        for k in range(19):
            acc = x[k] + y[k]
            for coeff, codes in self._f[k]:
                p = coeff
                for c in codes:
                    p *= v[c]
                    if not p:
                        break
                acc += p
            out.append(acc % 3)
        return tuple(out)

    def inv(self, x):
        """Raw inverse -x + h(x); the self-checking wrapper lives above."""
        x = _check_element(x)
        return self._inv(x)

    def _inv(self, x):
        out = []
        for k in range(19):
            acc = 3 - x[k]
            for coeff, codes in self._h[k]:
                p = coeff
                for c in codes:
                    p *= x[c]
                    if not p:
                        break
                acc += p
            out.append(acc % 3)
        return tuple(out)

    # -- deterministic randomness ------------------------------------------

    def random_element(self, state):
        """Draw 19 trits from xorshift-star; returns (element, new state)."""
        s = state
        coords = []
        for _ in range(19):
            s ^= s >> 12
            s = (s ^ (s << 25)) & MASK64
            s ^= s >> 27
            coords.append(((s * RNG_MULTIPLIER) & MASK64) % 3)
        return tuple(coords), s

    def _random_tail(self, state):
        # 9 trits into coordinates 11..19; head coordinates stay zero
        s = state
        coords = [0] * 10
        for _ in range(9):
            s ^= s >> 12
            s = (s ^ (s << 25)) & MASK64
            s ^= s >> 27
            coords.append(((s * RNG_MULTIPLIER) & MASK64) % 3)
        return tuple(coords), s

    # -- randomized identity sweeps ------------------------------------------

    def sweep(self, name, seed, trials):
        """Run a named identity sweep.

        Returns (violations, first_failing_trial or -1, witness elements or
        None).  Elements are drawn in the argument order given below, each
        via random_element on the running state.
        """
        try:
            fn = getattr(self, "_sweep_" + name)
        except AttributeError:
            raise ValueError(f"unknown sweep {name!r}") from None
        return fn(seed, trials)

    def _sweep_moufang(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            y, s = self.random_element(s)
            z, s = self.random_element(s)
            if mul(mul(x, y), mul(z, x)) != mul(mul(x, mul(y, z)), x):
                violations += 1
                if first < 0:
                    first, witness = i, (x, y, z)
        return violations, first, witness

    def _sweep_left_alternative(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            y, s = self.random_element(s)
            if mul(mul(x, x), y) != mul(x, mul(x, y)):
                violations += 1
                if first < 0:
                    first, witness = i, (x, y)
        return violations, first, witness

    def _sweep_right_alternative(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            y, s = self.random_element(s)
            if mul(mul(y, x), x) != mul(y, mul(x, x)):
                violations += 1
                if first < 0:
                    first, witness = i, (x, y)
        return violations, first, witness

    def _sweep_flexible(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            y, s = self.random_element(s)
            if mul(mul(x, y), x) != mul(x, mul(y, x)):
                violations += 1
                if first < 0:
                    first, witness = i, (x, y)
        return violations, first, witness

    def _sweep_inverse(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            w = self._inv(x)
            if mul(x, w) != _IDENTITY or mul(w, x) != _IDENTITY:
                violations += 1
                if first < 0:
                    first, witness = i, (x,)
        return violations, first, witness

    def _sweep_tail_central(self, seed, trials):
        mul = self._mul
        s = seed
        violations, first, witness = 0, -1, None
        for i in range(trials):
            x, s = self.random_element(s)
            z, s = self._random_tail(s)
            want = tuple((a + b) % 3 for a, b in zip(x, z))
            if mul(x, z) != want or mul(z, x) != want:
                violations += 1
                if first < 0:
                    first, witness = i, (x, z)
        return violations, first, witness


class PolyEvaluator:
    """Brute-force evaluator for flattened polynomials (see polys.flatten_polys)."""

    def __init__(self, flat, nvars):
        self._polys = [tuple((c, tuple(codes)) for c, codes in terms)
                       for terms in flat]
        self.nvars = nvars
        for terms in self._polys:
            for _, codes in terms:
                if any(not 0 <= c < nvars for c in codes):
                    raise ValueError("factor code out of range")

    def eval_at(self, point):
        if len(point) != self.nvars:
            raise ValueError(f"point must have {self.nvars} coordinates")
        out = []
        for terms in self._polys:
            acc = 0
            for coeff, codes in terms:
                p = coeff
                for c in codes:
                    p *= point[c]
                    if not p:
                        break
                acc += p
            out.append(acc % 3)
        return tuple(out)

    def count_all_zero(self):
        """Count points of F_3^nvars where every polynomial vanishes."""
        n = self.nvars
        if n > 16:
            raise ValueError("refusing to enumerate 3^%d points" % n)
        polys = self._polys
        point = [0] * n
        count = 0
        for _ in range(3 ** n):
            for terms in polys:
                acc = 0
                for coeff, codes in terms:
                    p = coeff
                    for c in codes:
                        p *= point[c]
                        if not p:
                            break
                    acc += p
                if acc % 3:
                    break
            else:
                count += 1
            i = n - 1
            while i >= 0:
                point[i] += 1
                if point[i] == 3:
                    point[i] = 0
                    i -= 1
                else:
                    break
        return count
