"""linetrees.checks
----------------

Formula-versus-oracle checks behind `linetrees verify` and `linetrees fuzz`.

Each `check_*` function evaluates one identity on one instance and returns a
VerificationReport. `run_fuzz` draws seeded instances of a graph class,
verifies them (optionally in parallel with joblib) and keeps the reports in
instance order, so a fixed seed always reproduces the same batch.
"""

import logging
import time
from collections.abc import Callable, Iterable
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from .config import PROJECT_ROOT, FuzzDefaults, load_verify_config
from .core import EdgeId, MultiGraph, SpanningSubset, SubsetRole, VertexId, degrees, is_regular
from .errors import GraphArgumentError
from .formulas import (
    count_line_trees,
    eval_binomial_deletion_identity,
    eval_gen_result,
    eval_line_tree_form,
    eval_line_tree_gamma_form,
    eval_pendant_regular,
    eval_regular_line,
    eval_regular_subdiv_line,
    eval_semiregular_bipartite,
    eval_subdivision_expansion,
    eval_theorem_main,
    eval_theorem_main_gamma_form,
    require_integral,
)
from .generators import (
    gen_pendant_regular,
    gen_random_multigraph,
    gen_regular,
    gen_semiregular_bipartite,
    pendant_regular_obstruction,
    semiregular_obstruction,
)
from .partitions import verify_clique_forest, verify_partition
from .reports import CheckRecord, FuzzReport, InstanceDescriptor, VerificationReport
from .transforms import subdivide, subdivide_subset
from .treecount import (
    ConstrainedFamily,
    count_matrix_tree,
    count_trees_containing,
    count_via_deletion_contraction,
    enumerate_spanning_trees,
)

logger = logging.getLogger("linetrees.checks")

REPORTS_DIR = PROJECT_ROOT / ".tmp" / "reports"
GRAPH_CLASSES = ("random", "regular", "pendant-regular", "semiregular")


def describe(
    g: MultiGraph, generator: str, graph_class: str, seed: int | None = None
) -> InstanceDescriptor:
    """InstanceDescriptor for g."""
    return InstanceDescriptor(generator=generator, seed=seed, n=g.n, m=g.m, graph_class=graph_class)


class _Recorder:
    """Collects timed records for one report."""

    def __init__(self, timing: bool) -> None:
        self.timing = timing
        self.records: list[CheckRecord] = []
        self.counterexamples: list[str] = []
        self._carry = 0.0

    def run(self, fn: Callable):
        """Call fn, charging its time to the next record."""
        start = time.perf_counter()
        value = fn()
        self._carry += time.perf_counter() - start
        return value

    def compare(
        self,
        check: str,
        formula: Callable[[], int],
        oracle: Callable[[], int],
        detail: str | None = None,
    ) -> CheckRecord:
        start = time.perf_counter()
        value = formula()
        expected = oracle()
        elapsed = time.perf_counter() - start + self._carry if self.timing else 0.0
        self._carry = 0.0
        record = CheckRecord(
            check=check, formula=value, oracle=expected, elapsed=round(elapsed, 6), detail=detail
        )
        self.records.append(record)
        if not record.agree:
            logger.warning("%s disagrees: formula=%d oracle=%d", check, value, expected)
        return record

    def report(self, instance: InstanceDescriptor) -> VerificationReport:
        return VerificationReport(
            instance=instance, records=self.records, counterexamples=self.counterexamples
        )


# ---------------------------------------------------------------------------
# Single-instance checks
# ---------------------------------------------------------------------------


def check_count_oracles(
    g: MultiGraph, instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """Matrix-Tree against enumeration and deletion-contraction."""
    rec = _Recorder(timing)
    rec.compare(
        "oracle_enumeration",
        lambda: count_matrix_tree(g),
        lambda: len(enumerate_spanning_trees(g)),
    )
    rec.compare(
        "oracle_deletion_contraction",
        lambda: count_matrix_tree(g),
        lambda: count_via_deletion_contraction(g),
    )
    return rec.report(instance)


def check_main(
    g: MultiGraph, rs: Iterable[int], instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """Subset-sum and Gamma forms of t(L(S_r(G))) against the line graph oracle."""
    rec = _Recorder(timing)
    for r in rs:
        oracle = count_line_trees(subdivide(g, r).graph)
        rec.compare(
            f"main_formula[r={r}]",
            lambda r=r: require_integral(eval_theorem_main(g, r), "main formula"),
            lambda oracle=oracle: oracle,
        )
        rec.compare(
            f"main_gamma_form[r={r}]",
            lambda r=r: require_integral(eval_theorem_main_gamma_form(g, r), "gamma form"),
            lambda oracle=oracle: oracle,
        )
        if r == 0:
            rec.compare(
                "line_tree_form",
                lambda: require_integral(eval_line_tree_form(g), "tree form"),
                lambda oracle=oracle: oracle,
            )
            rec.compare(
                "line_tree_gamma_form",
                lambda: require_integral(eval_line_tree_gamma_form(g), "tree gamma form"),
                lambda oracle=oracle: oracle,
            )
    return rec.report(instance)


def check_regular(
    g: MultiGraph, instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """Both regular-graph closed forms against their line graph oracles."""
    rec = _Recorder(timing)
    rec.compare("regular_line", lambda: eval_regular_line(g), lambda: count_line_trees(g))
    rec.compare(
        "regular_subdiv_line",
        lambda: eval_regular_subdiv_line(g),
        lambda: count_line_trees(subdivide(g, 1).graph),
    )
    return rec.report(instance)


def check_pendant(
    g: MultiGraph, rs: Iterable[int], instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """The pendant-regular closed form for each r."""
    rec = _Recorder(timing)
    for r in rs:
        rec.compare(
            f"pendant_regular[r={r}]",
            lambda r=r: eval_pendant_regular(g, r),
            lambda r=r: count_line_trees(subdivide(g, r).graph),
        )
    return rec.report(instance)


def check_bipartite(
    g: MultiGraph, a: int, b: int, instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """The semiregular bipartite closed form."""
    rec = _Recorder(timing)
    rec.compare(
        f"semiregular_bipartite[a={a},b={b}]",
        lambda: eval_semiregular_bipartite(g, a, b),
        lambda: count_line_trees(g),
    )
    return rec.report(instance)


def check_gen_result(
    q: MultiGraph,
    matching: Iterable[EdgeId],
    instance: InstanceDescriptor,
    base: MultiGraph | None = None,
    timing: bool = True,
) -> VerificationReport:
    """The clique quotient sum against |T_Q(M)|, and against t(L(G)) when Q = C(G)."""
    rec = _Recorder(timing)
    subset = SpanningSubset(q, frozenset(matching), SubsetRole.MATCHING)
    rec.compare(
        "clique_quotient_sum",
        lambda: eval_gen_result(q, subset),
        lambda: count_trees_containing(ConstrainedFamily(q, subset.edge_ids)),
    )
    if base is not None:
        rec.compare(
            "clique_insert_line_graph",
            lambda: eval_gen_result(q, subset),
            lambda: count_line_trees(base),
        )
    return rec.report(instance)


def check_partition(
    q: MultiGraph, matching: Iterable[EdgeId], instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """Algorithm B fibre sizes and forward reconstruction over all of T_Q(M)."""
    rec = _Recorder(timing)
    subset = SpanningSubset(q, frozenset(matching), SubsetRole.MATCHING)
    result = rec.run(lambda: verify_partition(q, subset))
    rec.compare(
        "partition_total", lambda: result.formula_count, lambda: result.tree_count
    )
    if result.free_vertices:
        rec.compare(
            "partition_label_sizes",
            lambda: result.labels_checked,
            lambda: result.labels_checked - len(result.mismatches),
            detail="labels whose fibre size matches the product formula",
        )
        rec.compare(
            "partition_predicted_total",
            lambda: require_integral(result.predicted_total, "predicted total"),
            lambda: result.tree_count,
        )
    realised = len(result.histogram)
    rec.compare(
        "partition_reconstruction",
        lambda: realised,
        lambda: realised - len(result.reconstruction_failures),
        detail="labels whose forward enumeration equals the mapped fibre",
    )
    rec.counterexamples.extend(str(m) for m in result.mismatches)
    rec.counterexamples.extend(result.reconstruction_failures)
    return rec.report(instance)


def check_binomial(
    g: MultiGraph, i: int | None, instance: InstanceDescriptor, timing: bool = True
) -> VerificationReport:
    """The binomial deletion identity for one i, or for every valid i when i is None."""
    rec = _Recorder(timing)
    rank = g.m - g.n + 1
    for j in range(rank + 1) if i is None else [i]:
        sides = eval_binomial_deletion_identity(g, j)
        rec.compare(f"binomial_deletion[i={j}]", lambda s=sides: s[0], lambda s=sides: s[1])
    return rec.report(instance)


def check_subdivision_expansion(
    g: MultiGraph,
    subset: Iterable[EdgeId] | None,
    r: int,
    instance: InstanceDescriptor,
    timing: bool = True,
) -> VerificationReport:
    """t(L(G_{r.F})) against the pendant-split expansion; F defaults to E(G)."""
    rec = _Recorder(timing)
    chosen = frozenset(g.edge_ids if subset is None else subset)
    rec.compare(
        f"subdivision_expansion[r={r}]",
        lambda: eval_subdivision_expansion(g, chosen, r),
        lambda: count_line_trees(subdivide_subset(g, chosen, r).graph),
        detail=f"F={sorted(chosen)}",
    )
    return rec.report(instance)


def check_clique_forest(
    g: MultiGraph,
    clique: Iterable[VertexId],
    anchor: VertexId,
    instance: InstanceDescriptor,
    timing: bool = True,
) -> VerificationReport:
    """Clique-plus-forest totals, fibre sizes, exchanges and extension counts."""
    rec = _Recorder(timing)
    result = rec.run(lambda: verify_clique_forest(g, clique, anchor))
    rec.compare(
        "clique_boundary_total", lambda: result.total_formula, lambda: result.total_observed
    )
    uniform = sum(1 for size in result.fibre_sizes.values() if size == result.fibre_expected)
    rec.compare(
        "fibre_sizes",
        lambda: len(result.fibre_sizes),
        lambda: uniform,
        detail=f"fibres of size {result.fibre_expected}",
    )
    rec.compare(
        "exchange_bijections",
        lambda: result.exchange_checks,
        lambda: result.exchange_checks - len(result.exchange_failures),
    )
    matching_extensions = sum(1 for x in result.extensions if x.observed == x.predicted)
    rec.compare(
        "extension_counts", lambda: len(result.extensions), lambda: matching_extensions
    )
    rec.counterexamples.extend(result.exchange_failures)
    rec.counterexamples.extend(
        f"T'={list(x.quotient_tree)} D={list(x.extra)}: {x.observed} != {x.predicted}"
        for x in result.extensions
        if x.observed != x.predicted
    )
    rec.counterexamples.extend(
        f"S={list(s)}: {size} != {result.fibre_expected}"
        for s, size in result.fibre_sizes.items()
        if size != result.fibre_expected
    )
    return rec.report(instance)


# ---------------------------------------------------------------------------
# Fuzzing
# ---------------------------------------------------------------------------


def _pick(rng: np.random.Generator, options: list):
    if not options:
        raise GraphArgumentError("no feasible parameters under the requested max_n")
    return options[int(rng.integers(0, len(options)))]


def _semiregular_order(a: int, b: int, n1: int, n2: int) -> int:
    # Vertex count including the degree-1 padding.
    return n1 + n2 + abs(a * n1 - b * n2)


def _fuzz_instance(graph_class: str, seed: int, max_n: int, fuzz: FuzzDefaults, timing: bool):
    rng = np.random.default_rng(seed)
    if graph_class == "random":
        n = int(rng.integers(2, max(max_n, 2) + 1))
        m = n - 1 + int(rng.integers(0, fuzz.max_extra_edges + 1))
        g = gen_random_multigraph(n, m, seed)
        instance = describe(g, "gen_random_multigraph", graph_class, seed)
        report = check_main(g, fuzz.r_values, instance, timing)
        report.records.extend(check_count_oracles(g, instance, timing).records)
        return report

    if graph_class == "regular":
        options = [
            (k, n) for k in (2, 3, 4) for n in range(k + 1, max_n + 1) if (k * n) % 2 == 0
        ]
        k, n = _pick(rng, options)
        g = gen_regular(k, n, seed)
        return check_regular(g, describe(g, "gen_regular", graph_class, seed), timing)

    if graph_class == "pendant-regular":
        options = [
            (k, core_n, s)
            for k in (3, 4)
            for s in (0, 1, 2, 4)
            for core_n in range(2, max_n + 1)
            if pendant_regular_obstruction(k, core_n, s) is None
        ]
        k, core_n, s = _pick(rng, options)
        g = gen_pendant_regular(k, core_n, s, seed)
        instance = describe(g, "gen_pendant_regular", graph_class, seed)
        return check_pendant(g, fuzz.r_values, instance, timing)

    if graph_class == "semiregular":
        options = [
            (a, b, n1, n2)
            for a in (2, 3)
            for b in (2, 3)
            for n1 in range(1, 4)
            for n2 in range(1, 4)
            if semiregular_obstruction(a, b, n1, n2) is None
            and _semiregular_order(a, b, n1, n2) <= max(max_n, 5)
        ]
        a, b, n1, n2 = _pick(rng, options)
        g = gen_semiregular_bipartite(a, b, n1, n2, seed)
        instance = describe(g, "gen_semiregular_bipartite", graph_class, seed)
        return check_bipartite(g, a, b, instance, timing)

    raise GraphArgumentError(f"unknown graph class {graph_class!r}; expected {GRAPH_CLASSES}")


def run_fuzz(
    graph_class: str,
    count: int,
    seed: int,
    max_n: int | None = None,
    n_jobs: int | None = None,
    timing: bool | None = None,
) -> FuzzReport:
    """Verify `count` seeded instances of a graph class.

    Instance seeds are drawn from one master generator seeded with `seed`;
    joblib keeps the results in submission order.
    """
    if graph_class not in GRAPH_CLASSES:
        raise GraphArgumentError(f"unknown graph class {graph_class!r}; expected {GRAPH_CLASSES}")
    if count < 0:
        raise GraphArgumentError(f"count must be non-negative, got {count}")
    cfg = load_verify_config()
    fuzz = cfg.fuzz
    max_n = fuzz.max_n if max_n is None else max_n
    n_jobs = fuzz.n_jobs if n_jobs is None else n_jobs
    timing = cfg.include_timing if timing is None else timing

    master = np.random.default_rng(seed)
    seeds = [int(s) for s in master.integers(0, 2**62, size=count)]
    logger.info("Fuzzing %d %s instance(s), seed=%d, n_jobs=%d", count, graph_class, seed, n_jobs)
    reports = Parallel(n_jobs=n_jobs)(
        delayed(_fuzz_instance)(graph_class, s, max_n, fuzz, timing) for s in seeds
    )
    batch = FuzzReport(graph_class=graph_class, seed=seed, count=count, reports=list(reports))
    logger.info("Fuzz finished: %d/%d instance(s) passed", count - batch.failures, count)
    return batch


def fuzz_table(batch: FuzzReport) -> pd.DataFrame:
    """One row per record. Counts are stored as decimal strings (they overflow int64)."""
    rows = []
    for index, report in enumerate(batch.reports):
        for record in report.records:
            rows.append(
                {
                    "instance": index,
                    "seed": report.instance.seed,
                    "n": report.instance.n,
                    "m": report.instance.m,
                    "check": record.check,
                    "formula": str(record.formula),
                    "oracle": str(record.oracle),
                    "agree": record.agree,
                    "elapsed": record.elapsed,
                }
            )
    columns = ["instance", "seed", "n", "m", "check", "formula", "oracle", "agree", "elapsed"]
    return pd.DataFrame(rows, columns=columns)


def save_fuzz_table(batch: FuzzReport, out_dir: Path | None = None) -> Path:
    """Write the fuzz table to .tmp/reports/fuzz_<class>_<seed>.parquet."""
    out_dir = REPORTS_DIR if out_dir is None else out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    out_path = out_dir / f"fuzz_{batch.graph_class}_{batch.seed}.parquet"
    fuzz_table(batch).to_parquet(out_path, index=False)
    logger.info("Saved %s", out_path)
    return out_path


def describe_file(g: MultiGraph, path: Path | str) -> InstanceDescriptor:
    """Descriptor for a graph read from disk; the class is a coarse degree signature."""
    k = is_regular(g)
    if k is not None:
        graph_class = f"{k}-regular"
    elif 1 in degrees(g) and len(set(degrees(g)) - {1}) == 1:
        graph_class = "pendant-regular"
    else:
        graph_class = "general"
    return describe(g, f"file:{Path(path).name}", graph_class)
