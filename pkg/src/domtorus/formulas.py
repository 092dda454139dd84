"""Closed forms for the independence number and Italian domination number of
directed tori, and the earlier special-case values they must reproduce.

Deliberately shares no code with the exact solvers so the two can check each other.
"""

from __future__ import annotations

from dataclasses import dataclass

EVEN_EVEN = "even-even"
EVEN_ODD = "even-odd"
ODD_ODD = "odd-odd"


@dataclass(frozen=True)
class ParityCase:
    tag: str
    m: int
    n: int


def classify(m: int, n: int) -> ParityCase:
    """Normalize (m, n): even first for mixed parity, larger first for odd-odd."""
    if m < 2 or n < 2:
        raise ValueError(f"need m, n >= 2, got ({m}, {n})")
    if m % 2 == 0 and n % 2 == 0:
        return ParityCase(EVEN_EVEN, m, n)
    if m % 2 == 1 and n % 2 == 1:
        return ParityCase(ODD_ODD, max(m, n), min(m, n))
    if m % 2 == 1:
        m, n = n, m
    return ParityCase(EVEN_ODD, m, n)


def alpha_formula(m: int, n: int) -> int:
    case = classify(m, n)
    if case.tag == EVEN_EVEN:
        return case.m * case.n // 2
    return case.m * (case.n - 1) // 2


def gamma_formula(m: int, n: int) -> int:
    case = classify(m, n)
    if case.tag == EVEN_EVEN:
        return case.m * case.n // 2
    return case.m * (case.n + 1) // 2


def special_case_checks(limit: int) -> dict[str, bool]:
    """Check gamma_formula against the known special families for every n <= limit."""
    if limit < 3:
        raise ValueError("limit must be at least 3")
    two_by_odd = all(gamma_formula(2, n) == n + 1 for n in range(3, limit + 1, 2))
    three_by_n = all(gamma_formula(3, n) == 2 * n for n in range(3, limit + 1))
    even_even = all(
        gamma_formula(m, n) == m * n // 2
        for m in range(2, limit + 1, 2)
        for n in range(2, limit + 1, 2)
    )
    four_by_odd = all(gamma_formula(4, n) == 2 * n + 2 for n in range(3, limit + 1, 2))
    return {
        "C2xCn, n odd: n+1": two_by_odd,
        "C3xCn: 2n": three_by_n,
        "even-even: mn/2": even_even,
        "C4xCn, n odd: 2n+2": four_by_odd,
    }
