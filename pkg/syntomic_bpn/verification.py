"""Acceptance checks run by ``syntomic-bpn verify``."""

from __future__ import annotations

import itertools
import logging
import random
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np

from .algebra.linalg_fp import FpMatrix, homology_basis, kernel_basis, rank
from .calculator import SyntomicCalculator
from .config import Window
from .controllers.bp2 import k_theory_corrections
from .controllers.generators import top_degree
from .controllers.prismatic import t_bockstein_sequence
from .controllers.thh import hochschild_may_sequence, hodge_tate_sequence_definition
from .engine.properties import koszul_violations, leibniz_violations
from .exceptions import SyntomicError
from .models import CheckResult

__all__ = [
    'PRIMES',
    'HEIGHTS',
    'brute_force_rank',
    'brute_force_image_size',
    'brute_force_kernel_size',
    'brute_force_homology_dimension',
    'random_boundaries',
    'expected_tp_labels',
    'run_acceptance',
]

logger = logging.getLogger(__name__)

PRIMES = (2, 3, 5, 7)
HEIGHTS = (-1, 0, 1, 2)
SEED = 20240


def _all_vectors(p: int, size: int) -> Iterable[np.ndarray]:
    for values in itertools.product(range(p), repeat=size):
        yield np.array(values, dtype=np.int64)


def brute_force_image_size(m: FpMatrix) -> int:
    return len({tuple(m.apply(vector)) for vector in _all_vectors(m.p, m.cols)})


def _log(p: int, size: int) -> int:
    exponent = 0
    while size > 1:
        size //= p
        exponent += 1
    return exponent


def brute_force_rank(m: FpMatrix) -> int:
    """``log_p`` of the image size, by enumerating every input vector."""
    return _log(m.p, brute_force_image_size(m))


def brute_force_kernel_size(m: FpMatrix) -> int:
    return sum(1 for vector in _all_vectors(m.p, m.cols) if not m.apply(vector).any())


def brute_force_homology_dimension(d_in: FpMatrix, d_out: FpMatrix) -> int:
    """``log_p |ker d_out| / |im d_in|`` with both sets enumerated."""
    return _log(d_out.p, brute_force_kernel_size(d_out) // brute_force_image_size(d_in))


def random_boundaries(rng: random.Random, m: FpMatrix, count: int) -> FpMatrix:
    """``count`` columns drawn from the enumerated kernel of ``m``, so that ``m @ result == 0``."""
    cycles = [vector for vector in _all_vectors(m.p, m.cols) if not m.apply(vector).any()]
    return FpMatrix.from_columns(m.p, [rng.choice(cycles) for _ in range(count)], m.cols)


def expected_tp_labels(p: int, n: int, window: Window) -> List[str]:
    """Labels of ``t^{kp^{n+1}} λ_S`` inside a degree window."""
    algebra = t_bockstein_sequence(p, n, periodic=True).algebra
    power = p ** (n + 1)
    labels = []
    heights = range(1, n + 2)
    top = top_degree(p, n)
    for k in range(-(window.high // (2 * power)) - 1, (top - window.low) // (2 * power) + 2):
        for size in range(n + 2):
            for subset in itertools.combinations(heights, size):
                monomial = algebra.monomial({"t": k * power, **{f"λ{j}": 1 for j in subset}})
                if window.contains(algebra.monomial_bidegree(monomial)[0]):
                    labels.append(algebra.label(monomial))
    return sorted(labels)


def _check(name: str, body: Callable[[], Tuple[bool, str, Sequence]]) -> CheckResult:
    try:
        passed, detail, witnesses = body()
    except SyntomicError as exc:
        return CheckResult(name, False, exc.diagnostic(), (exc.details,))
    return CheckResult(name, passed, detail, tuple(witnesses))


def _figure(calculator: SyntomicCalculator) -> CheckResult:
    def body():
        basis = calculator.syntomic.syntomic(2, 2, Window((-2, 26)))
        placements = {"λ1λ2λ3": (25, 3), "∂": (-1, 1), "Ξ(3,1)": (7, 1), "∂λ1λ2λ3": (24, 4)}
        wrong = [label for label, bidegree in placements.items() if basis.bidegrees().get(label) != bidegree]
        rows = basis.row_counts()
        passed = len(basis) == 28 and rows == {0: 1, 1: 7, 2: 12, 3: 7, 4: 1} and not wrong
        return passed, f"{len(basis)} classes, rows {rows}", wrong

    return _check("syntomic(p=2,n=2) chart", body)


def _dimension(calculator: SyntomicCalculator, p: int, n: int) -> CheckResult:
    def body():
        basis = calculator.syntomic.syntomic(p, n)
        expected = calculator.syntomic.syntomic_dimension(p, n)
        low, high = calculator.syntomic.degree_range(p, n)
        degrees = [c.degree for c in basis]
        weights = [c.adams_weight for c in basis]
        passed = (
            len(basis) == expected
            and min(degrees) == low
            and max(degrees) == high
            and 0 <= min(weights)
            and max(weights) <= n + 2
        )
        return passed, f"{len(basis)} classes (expected {expected}) in degrees {min(degrees)}..{max(degrees)}", ()

    return _check(f"dimension(p={p},n={n})", body)


def _ledger(calculator: SyntomicCalculator, p: int, n: int) -> CheckResult:
    def body():
        ledger = calculator.syntomic.syntomic_ledger(p, n)
        report = ledger.kernel.window
        pieces = ledger.decomposition
        a00 = {c.label for c in pieces.a00 if report.contains(c.degree)}
        xi = {c.label for c in pieces.xi_piece if report.contains(c.degree)}
        kernel = set(ledger.kernel.labels)
        cokernel = {c.label for c in ledger.cokernel if report.contains(c.degree - 1)}
        passed = kernel == a00 | xi and cokernel == a00
        return passed, f"kernel {len(kernel)}, cokernel {len(cokernel)}", sorted(kernel ^ (a00 | xi))

    return _check(f"ker/coker(p={p},n={n})", body)


def _tp(calculator: SyntomicCalculator, p: int, n: int) -> CheckResult:
    def body():
        power = p ** (n + 1)
        outer = Window((-4 * power, 4 * power))
        inner = Window((-2 * power, 2 * power))
        run = calculator.prismatic.tp_run(p, n, outer)
        found = sorted(c.label for c in run.classes() if inner.contains(c.degree))
        expected = expected_tp_labels(p, n, inner)
        passed = found == expected and run.collapse_page <= power + 1
        return passed, f"{len(found)} classes, collapse page {run.collapse_page}", sorted(set(found) ^ set(expected))

    return _check(f"tp(p={p},n={n})", body)


def _hochschild_may(calculator: SyntomicCalculator, p: int, n: int) -> CheckResult:
    def body():
        power = p ** (n + 1)
        window = Window((0, 2 * power + top_degree(p, n)))
        result = calculator.thh.hochschild_may(p, n, window)
        page = calculator.thh.thh_bpn_page(p, n, window)
        hm = result.sequence.algebra
        wrong = []
        for i in range(n + 1):
            detector = hm.label(hm.monomial({f"σv{i}": 1, f"μ_{i}": p - 1}))
            found = result.basis.get(f"λ{i + 1}")
            if found is None or found.detected_by != detector:
                wrong.append(f"λ{i + 1}")
        passed = result.basis.signature() == page.signature() and not wrong
        return passed, f"{len(result.basis)} classes", wrong

    return _check(f"hochschild-may(p={p},n={n})", body)


def _gap(calculator: SyntomicCalculator, p: int, n: int) -> CheckResult:
    return calculator.syntomic.vn1_bockstein_gap_check(p, n)


def _bp2(calculator: SyntomicCalculator, p: int) -> List[CheckResult]:
    results = [calculator.bp2.motivic_no_room(p)]

    def body():
        tables = calculator.bp2.k_bp2(p)
        free = calculator.syntomic.mod_vn_table(p, 2, tables.tc.window)
        corrections = set(k_theory_corrections(p))
        wrong = []
        for degree, dimension in tables.k.dimensions.items():
            tc = tables.tc.dimension(degree)
            expected = 0 if degree < 0 else tc + (1 if degree in corrections else 0)
            if dimension != expected:
                wrong.append(degree)
        passed = dict(tables.tc.dimensions) == dict(free.dimensions) and not wrong
        return passed, f"K differs from TC at {sorted(corrections)}", wrong

    results.append(_check(f"k-bp2(p={p})", body))
    return results


def _engine(calculator: SyntomicCalculator, rng: random.Random) -> List[CheckResult]:
    instances = [
        (t_bockstein_sequence(2, 1, periodic=True), Window((-16, 16), filtration=(-8, 8))),
        (t_bockstein_sequence(3, 1, periodic=False), Window((-18, 18), filtration=(0, 12))),
        (hochschild_may_sequence(3, 1), Window((0, 40))),
        (hodge_tate_sequence_definition(2, 1), Window((-8, 16), filtration=(0, 4))),
    ]
    results = []
    for sequence, window in instances:
        def body(sequence=sequence, window=window):
            algebra = sequence.algebra
            monomials = algebra.basis_in_window(window.degree, window.weight, window.filtration)
            failures = koszul_violations(algebra, monomials, rng, 1000)
            for rule in sequence.rules:
                failures.extend(leibniz_violations(algebra, rule, monomials, rng, 1000))
            # d∘d and the rank bookkeeping are enforced while the pages turn
            run = calculator.run(sequence, window)
            wide = calculator.run(sequence, window.expand(*(window.high - window.low,) * 3))
            inner = {c.label for c in run.classes()}
            outer = {c.label for c in wide.classes() if window.contains(*c.cell)}
            failures.extend(sorted(inner ^ outer))
            return not failures, f"{len(monomials)} monomials, {len(run.classes())} E∞ classes", failures[:10]

        results.append(_check(f"engine({sequence.name})", body))
    return results


def _all_matrices(p: int, rows: int, cols: int) -> Iterable[FpMatrix]:
    for values in itertools.product(range(p), repeat=rows * cols):
        yield FpMatrix(p, np.array(values, dtype=np.int64).reshape(rows, cols))


def _oracle_matrices(rng: random.Random, samples: int) -> Iterable[FpMatrix]:
    """Every F_2 matrix up to 3x3, then seeded samples up to 5x5 over F_2, F_3 and F_5."""
    shapes = [(rows, cols) for rows in range(1, 6) for cols in range(1, 6)]
    for rows, cols in shapes:
        if rows <= 3 and cols <= 3:
            yield from _all_matrices(2, rows, cols)
    for p in (2, 3, 5):
        for rows, cols in shapes:
            if p == 2 and rows <= 3 and cols <= 3:
                continue
            if p == 5 and cols > 3:
                continue
            for _ in range(samples):
                yield FpMatrix(p, np.array([[rng.randrange(p) for _ in range(cols)] for _ in range(rows)]))


def _linear_algebra(rng: random.Random, samples: int = 12) -> CheckResult:
    def body():
        failures = []
        checked = 0
        for m in _oracle_matrices(rng, samples):
            checked += 1
            if rank(m) != brute_force_rank(m) or m.p ** len(kernel_basis(m)) != brute_force_kernel_size(m):
                failures.append((m.p, m.tolist()))
            d_in = random_boundaries(rng, m, rng.randrange(0, 4))
            classes, _ = homology_basis(d_in, m)
            if len(classes) != brute_force_homology_dimension(d_in, m):
                failures.append((m.p, m.tolist(), d_in.tolist(), "homology"))
        return not failures, f"rank, kernel and homology of {checked} matrices against enumeration", failures[:5]

    return _check("linear-algebra oracle", body)


def run_acceptance(calculator: SyntomicCalculator, seed: int = SEED) -> List[CheckResult]:
    """Every acceptance check, in a fixed order."""
    rng = random.Random(seed)
    results = [_figure(calculator)]
    grid = [(p, n) for p in PRIMES for n in HEIGHTS]
    results.extend(_dimension(calculator, p, n) for p, n in grid)
    results.extend(_ledger(calculator, p, n) for p, n in grid)
    results.extend(_tp(calculator, p, n) for p, n in grid if p ** (n + 1) <= 27)
    results.extend(_hochschild_may(calculator, p, n) for p, n in grid if p ** (n + 1) <= 125)
    results.extend(_gap(calculator, p, n) for p, n in grid if n >= 0)
    for p in (5, 7):
        results.extend(_bp2(calculator, p))
    results.extend(_engine(calculator, rng))
    results.append(_linear_algebra(rng))
    for result in results:
        logger.info("%s %s: %s", "PASS" if result.passed else "FAIL", result.name, result.detail)
    return results
