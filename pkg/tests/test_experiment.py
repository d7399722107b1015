import numpy as np
import pytest

from cilattice import experiment, falsify, lattice
from cilattice.core import Universe, elementary_statements, parse_instance
from cilattice.experiment import ExperimentConfig, ExperimentRow


def test_statement_space():
    assert experiment.statement_space_size(5) == 80
    assert len(elementary_statements(Universe.of_size(5))) == 80
    assert experiment.statement_space_size(2) == 1


def test_gen_elementary():
    u2 = Universe.of_size(2)
    rng = np.random.default_rng(0)
    assert {str(experiment.gen_elementary(u2, rng)) for _ in range(10)} == {"I(a, b)"}
    u5 = Universe.of_size(5)
    a = [experiment.gen_elementary(u5, np.random.default_rng(7)) for _ in range(3)]
    b = [experiment.gen_elementary(u5, np.random.default_rng(7)) for _ in range(3)]
    assert a == b and all(s.elementary for s in a)
    with pytest.raises(ValueError):
        experiment.gen_elementary(Universe.of_size(1), rng)


def test_gen_elementary_roughly_uniform():
    u = Universe.of_size(4)
    rng = np.random.default_rng(1)
    space = elementary_statements(u)
    counts = {}
    for _ in range(12000):
        s = experiment.gen_elementary(u, rng, space=space)
        counts[s] = counts.get(s, 0) + 1
    assert len(counts) == 24
    assert max(counts.values()) < 1.3 * 500 and min(counts.values()) > 0.7 * 500


def test_instance_counts_small():
    rows = experiment.run(ExperimentConfig(sets_per_count=5, antecedent_counts=(3, 10), rng_seed=1))
    assert [r.instances_tested for r in rows] == [5 * 77, 5 * 70]


def test_boundary_one_consequent():
    total = experiment.statement_space_size(4)
    rows = experiment.run(ExperimentConfig(n_attributes=4, antecedent_counts=(total - 1,), sets_per_count=1))
    assert rows[0].instances_tested == 1


@pytest.mark.parametrize(
    "kwargs",
    [
        {"n_attributes": 13},
        {"n_attributes": 1},
        {"sets_per_count": 0},
        {"antecedent_counts": (0,)},
        {"antecedent_counts": (80,)},
        {"heuristic1_variant": "other"},
        {"rng_seed": -1},
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ValueError):
        ExperimentConfig(**kwargs)


def test_emit_csv():
    assert experiment.emit_csv([ExperimentRow(3, 10)]) == experiment.CSV_HEADER + "\n3,10,0,0,0,0,0.000000\n"
    row = ExperimentRow(4, 1, falsified_full=1, falsified_h2=1, falsified_h1_or_h2=1)
    assert experiment.emit_csv([row]).splitlines()[1] == "4,1,1,0,1,1,1.000000"


def test_reproducible_and_worker_independent():
    cfg = ExperimentConfig(n_attributes=4, sets_per_count=20, antecedent_counts=(2, 3, 4), rng_seed=7)
    a = experiment.emit_csv(experiment.run(cfg))
    b = experiment.emit_csv(experiment.run(cfg))
    c = experiment.emit_csv(experiment.run(cfg, workers=2))
    assert a == b == c
    other = experiment.emit_csv(experiment.run(ExperimentConfig(n_attributes=4, sets_per_count=20, antecedent_counts=(2, 3, 4), rng_seed=8)))
    assert other != a


@pytest.mark.parametrize("variant", falsify.H1_VARIANTS)
def test_fast_path_matches_decide(variant):
    """The bitmask tallies agree with running the full pipeline on every logged instance."""
    cfg = ExperimentConfig(sets_per_count=15, antecedent_counts=(3, 6), rng_seed=3, heuristic1_variant=variant)
    blocks: list[str] = []
    rows = experiment.run(cfg, log=blocks.append)
    assert len(blocks) == sum(r.instances_tested for r in rows)
    tallies = {k: {"full": 0, "h1": 0, "h2": 0, "either": 0} for k in cfg.antecedent_counts}
    for block in blocks:
        *inst_lines, verdict_line = block.rstrip("\n").split("\n")
        inst = parse_instance("\n".join(inst_lines))
        k = len(inst.given)
        assert len(set(inst.given)) == k and inst.query not in inst.given
        verdict = falsify.parse_verdict_line(verdict_line, inst.universe)
        t = tallies[k]
        t["full"] += not lattice.includes(inst.given, inst.query).holds
        t["h1"] += bool(falsify.heuristic1(inst.given, inst.query, variant))
        t["h2"] += bool(falsify.heuristic2(inst.given, inst.query))
        t["either"] += verdict.trace in ("H1", "H2")
    for r in rows:
        t = tallies[r.antecedent_count]
        assert (r.falsified_full, r.falsified_h1, r.falsified_h2, r.falsified_h1_or_h2) == (
            t["full"], t["h1"], t["h2"], t["either"],
        )
        assert r.unsound == 0


def test_row_dominance():
    for r in experiment.run(ExperimentConfig(sets_per_count=50, rng_seed=5)):
        assert max(r.falsified_h1, r.falsified_h2) <= r.falsified_h1_or_h2 <= r.falsified_full <= r.instances_tested
