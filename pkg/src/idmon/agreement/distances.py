"""Distance functions over annotation values for reliability statistics.

A distance maps a pair of values to [0, 1] with d(x, x) = 0 and symmetry.
Named distances are looked up through ``DISTANCES``; computations also
accept any callable with the same signature.
"""

from __future__ import annotations

from typing import Any, Callable

from ..errors import UnknownLabelError

Distance = Callable[[Any, Any], float]

TYPE_LABELS = ("News", "Summary", "Both", "N/A")


def nominal_distance(x: Any, y: Any) -> float:
    """0 for identical values, 1 otherwise."""
    return 0.0 if x == y else 1.0


def tailored_type_distance(x: str, y: str) -> float:
    """Document-type distance where Both agrees with News and with Summary.

    A piece covering both a fresh event and a back-reference is a fair
    answer to either reading, so {Both, News} and {Both, Summary} count
    as agreement; every other distinct pair (N/A included) disagrees.
    """
    for value in (x, y):
        if value not in TYPE_LABELS:
            raise UnknownLabelError(f"unknown document-type label {value!r}")
    if x == y:
        return 0.0
    pair = {x, y}
    if pair == {"Both", "News"} or pair == {"Both", "Summary"}:
        return 0.0
    return 1.0


def set_equality_distance(x: frozenset, y: frozenset) -> float:
    """Nominal distance over sets: 0 iff the sets are equal."""
    return 0.0 if x == y else 1.0


def any_intersection_distance(x: frozenset, y: frozenset) -> float:
    """0 iff the sets share at least one element; empty sets only match
    other empty sets."""
    if not x and not y:
        return 0.0
    return 0.0 if x & y else 1.0


DISTANCES: dict[str, Distance] = {
    "nominal": nominal_distance,
    "tailored_type": tailored_type_distance,
    "set-equality": set_equality_distance,
    "any-intersection": any_intersection_distance,
}


def resolve_distance(distance: str | Distance) -> tuple[str, Distance]:
    """Return (name, callable) for a distance id or callable."""
    if callable(distance):
        return getattr(distance, "__name__", "custom"), distance
    try:
        return distance, DISTANCES[distance]
    except KeyError:
        raise UnknownLabelError(f"unknown distance function {distance!r}") from None
