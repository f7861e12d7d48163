"""
Parcours récursif des éléments de norme bornée.

Les premiers sont parcourus par norme croissante ; chaque appel récursif
fixe l'exposant d'un premier puis descend sur les premiers suivants avec la
borne entière ⌊y / N(𝔭)^e⌋. Lorsque les exposants commencent à 1 et que
N(𝔭)² dépasse la borne restante, chaque premier restant ne contribue plus
qu'un seul élément : la branche est comptée d'un bloc.
"""

from bisect import bisect_left, bisect_right
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from enumeration.domain import ExponentPolicy


class NormWalker:
    """
    Énumérateur des éléments admis par une politique d'exposants.

    Args:
        norms: Normes des premiers, triées
        policy: Exposants non nuls autorisés
        excluded: Identifiants des premiers d'exposant forcé à 0
    """

    def __init__(
        self,
        norms: Sequence[int],
        policy: ExponentPolicy,
        excluded: Iterable[int] = (),
    ):
        self.norms = norms
        self.policy = policy
        self.excluded = frozenset(excluded)
        self._excluded_sorted = sorted(self.excluded)
        self._size = len(norms)

    def _excluded_between(self, lo: int, hi: int) -> int:
        if not self._excluded_sorted:
            return 0
        return bisect_left(self._excluded_sorted, hi) - bisect_left(
            self._excluded_sorted, lo
        )

    # Dénombrement

    def count(self, x: int) -> int:
        """Nombre d'éléments admis de norme <= x, élément neutre compris."""
        if x < 1:
            return 0
        return self._count(0, self._size, x)

    def _count(self, start: int, stop: int, y: int) -> int:
        norms = self.norms
        excluded = self.excluded
        minimum = self.policy.minimum
        maximum = self.policy.maximum
        end = bisect_right(norms, y, start, stop)
        total = 1
        for i in range(start, end):
            if i in excluded:
                continue
            n = norms[i]
            power = n**minimum
            if power > y:
                break
            if minimum == 1 and n * n > y:
                total += (end - i) - self._excluded_between(i, end)
                break
            exponent = minimum
            while power <= y and (maximum is None or exponent <= maximum):
                total += self._count(i + 1, self._size, y // power)
                power *= n
                exponent += 1
        return total

    # Histogrammes de Ω (et de ω)

    def histogram(
        self,
        x: int,
        norm_floor: int = 0,
        start: int = 0,
        stop: Optional[int] = None,
        include_identity: bool = True,
        with_omega: bool = False,
    ) -> Tuple[List[int], Optional[List[int]]]:
        """
        Histogrammes de Ω (et de ω) sur les éléments de norme dans ]norm_floor, x].

        ``start``/``stop`` restreignent le premier de plus petit indice
        utilisé, ce qui permet de découper le parcours en tranches disjointes.

        Returns:
            Tuple: (hist, omega_hist) indexés par la valeur de Ω (resp. ω)
        """
        size = x.bit_length() + 1
        hist = [0] * size
        omega_hist = [0] * size if with_omega else None
        if x < 1:
            return hist, omega_hist
        stop = self._size if stop is None else min(stop, self._size)
        if include_identity and norm_floor < 1:
            hist[0] += 1
            if omega_hist is not None:
                omega_hist[0] += 1
        self._tally(start, stop, x, 1, 0, 0, norm_floor, hist, omega_hist)
        return hist, omega_hist

    def _tally(
        self,
        start: int,
        stop: int,
        y: int,
        m: int,
        w: int,
        o: int,
        floor: int,
        hist: List[int],
        omega_hist: Optional[List[int]],
    ) -> None:
        # y = ⌊x / m⌋ où m est la norme de l'élément courant
        norms = self.norms
        excluded = self.excluded
        minimum = self.policy.minimum
        maximum = self.policy.maximum
        end = bisect_right(norms, y, start, stop)
        for i in range(start, end):
            if i in excluded:
                continue
            n = norms[i]
            power = n**minimum
            if power > y:
                break
            if minimum == 1 and n * n > y:
                first = i
                if floor >= m:
                    first = max(i, bisect_right(norms, floor // m, i, end))
                block = (end - first) - self._excluded_between(first, end)
                hist[w + 1] += block
                if omega_hist is not None:
                    omega_hist[o + 1] += block
                break
            exponent = minimum
            while power <= y and (maximum is None or exponent <= maximum):
                child = m * power
                if child > floor:
                    hist[w + exponent] += 1
                    if omega_hist is not None:
                        omega_hist[o + 1] += 1
                self._tally(
                    i + 1,
                    self._size,
                    y // power,
                    child,
                    w + exponent,
                    o + 1,
                    floor,
                    hist,
                    omega_hist,
                )
                power *= n
                exponent += 1

    # Éléments

    def elements(self, x: int) -> Iterator[Tuple[int, int, int]]:
        """Itère sur les triplets (norme, Ω, ω) des éléments admis de norme <= x."""
        if x < 1:
            return
        yield 1, 0, 0
        yield from self._elements(0, x, 1, 0, 0)

    def _elements(
        self, start: int, y: int, m: int, w: int, o: int
    ) -> Iterator[Tuple[int, int, int]]:
        norms = self.norms
        minimum = self.policy.minimum
        maximum = self.policy.maximum
        end = bisect_right(norms, y, start, self._size)
        for i in range(start, end):
            if i in self.excluded:
                continue
            n = norms[i]
            power = n**minimum
            if power > y:
                break
            exponent = minimum
            while power <= y and (maximum is None or exponent <= maximum):
                child = m * power
                yield child, w + exponent, o + 1
                yield from self._elements(
                    i + 1, y // power, child, w + exponent, o + 1
                )
                power *= n
                exponent += 1
