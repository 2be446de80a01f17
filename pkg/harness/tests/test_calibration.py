import unittest
from dataclasses import replace

from dataio import LabelRule, SyntheticSpec
from harness import DatasetSource, run_experiment
from models import ModelKind, TrainConfig

from .configs import tiny_config

# The exact test at five trials per group rejects with probability at most 8/252 under the null. Cells of
# one run share their instances, so the pooled rate gets a generous margin.
NULL_RATE_TOLERANCE = 0.2
REPLICATIONS = 4
# planted runs that must flag at least one cell
PLANTED_DETECTIONS = 2
PLANTED_REPLICATIONS = 3


def replicated(cfg, replication: int):
    """The same audit on a freshly drawn dataset with its own trial seeds."""
    dataset = replace(cfg.dataset, synthetic_seed=100 + replication)
    return replace(cfg, dataset=dataset, trial_seeds=[10 * replication + t for t in range(cfg.trials)])


class NullCalibrationTest(unittest.TestCase):
    def test_shared_rule_rarely_flags_cells(self):
        cfg = tiny_config(label_rule=LabelRule.shared_linear)
        significant = total = 0
        for replication in range(REPLICATIONS):
            result = run_experiment(replicated(cfg, replication))
            significant += sum(cell.result.significant for cell in result.cells)
            total += len(result.cells)
        self.assertEqual(total, REPLICATIONS * 45)
        self.assertLessEqual(significant / total, NULL_RATE_TOLERANCE)


class PlantedDisparityTest(unittest.TestCase):
    def test_group_dependent_rule_is_flagged(self):
        cfg = tiny_config(
            dataset=DatasetSource(
                name="planted",
                synthetic=SyntheticSpec(
                    n=1000,
                    d_continuous=4,
                    label_rule=LabelRule.group_dependent_nonlinear,
                    include_sensitive=True,
                ),
            ),
            model_kinds=[ModelKind.NN],
            train_config=TrainConfig(epochs=30, hidden_layers=[16, 16]),
            max_instances_per_group=25,
        )
        detections = 0
        for replication in range(PLANTED_REPLICATIONS):
            result = run_experiment(replicated(cfg, replication))
            self.assertEqual(len(result.cells), 20)
            detections += result.any_significant
        self.assertGreaterEqual(detections, PLANTED_DETECTIONS)
