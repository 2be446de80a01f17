import sys
from pathlib import Path
from typing import Optional, Sequence

import click
import progressbar
import tabulate

from explainers import ExplainerMethod, explain, write_explanations
from harness import (
    REPORT_FORMATS,
    ExperimentConfig,
    capped_groups,
    emit_report,
    fit_model,
    group_accuracy,
    instance_seeds,
    load_result,
    load_source,
    model_seed,
    prepare_trial,
    run_experiment,
    trial_explainer_config,
)
from models import Checkpoint, CheckpointError, load_checkpoint, save_checkpoint
from shared.output import color_significant, print_info, print_success
from shared.util import handle_errors

from .utils import (
    DISPARITY_EXIT_CODE,
    checkpoint_path,
    click_config_option,
    click_output_option,
    click_threads_option,
    explanations_path,
    resolve_output_dir,
    resolve_threads,
)


@click.group()
def main_group():
    pass


@main_group.command(name="train", short_help="Train and checkpoint the configured models for one trial")
@click_config_option()
@click.option("-s", "--seed", "trial_seed", type=int, required=True, help="Trial seed (drives the data split)")
@click_output_option()
@handle_errors
def cmd_train(config_path: str, trial_seed: int, output_dir: Optional[str]):
    cfg = ExperimentConfig.load(config_path)
    output_dir = resolve_output_dir(cfg, output_dir)
    data = prepare_trial(cfg, load_source(cfg.dataset), trial_seed)

    rows = []
    for kind in cfg.model_kinds:
        print_info(f"Training {kind.value} for trial {trial_seed}")
        model = fit_model(cfg, data, kind)
        path = checkpoint_path(output_dir, kind, trial_seed)
        train_config = cfg.train_config.with_seed(model_seed(trial_seed, kind))
        save_checkpoint(Checkpoint.from_model(model, train_config, trial_seed, list(data.X_train.feature_names)), path)
        overall, group0, group1 = group_accuracy(model, data)
        rows.append((kind.value, overall, group0, group1, str(path)))

    print(tabulate.tabulate(rows, headers=("model", "accuracy", "group 0", "group 1", "checkpoint"), floatfmt=".3f"))


@main_group.command(name="explain", short_help="Explain every test instance with a checkpointed model")
@click_config_option()
@click.option(
    "-m",
    "--model",
    "model_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Checkpoint written by `xaudit train`",
)
@click.option(
    "-M",
    "--method",
    required=True,
    type=click.Choice(choices=[method.value for method in ExplainerMethod]),
    help="Explanation method",
)
@click.option(
    "-r",
    "--replicates",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
    help="Extra explanations per instance under replicate seeds",
)
@click_output_option()
@handle_errors
def cmd_explain(config_path: str, model_path: str, method: str, replicates: int, output_dir: Optional[str]):
    cfg = ExperimentConfig.load(config_path)
    checkpoint = load_checkpoint(model_path)
    model = checkpoint.to_model()
    trial_seed = checkpoint.seed
    data = prepare_trial(cfg, load_source(cfg.dataset), trial_seed)
    feature_names = list(data.X_test.feature_names)
    if checkpoint.feature_names and checkpoint.feature_names != feature_names:
        raise CheckpointError(f"{model_path} was trained on different features than {config_path} produces")

    method = ExplainerMethod(method)
    explainer_cfg = trial_explainer_config(cfg, data)
    groups = capped_groups(cfg, data)
    rows = []
    for position in progressbar.progressbar(
        sorted(groups.d0 + groups.d1),
        widgets=[
            progressbar.SimpleProgress(),
            " ",
            progressbar.Bar(marker="=", left="[", right="]"),
            " ",
            progressbar.Timer(),
        ],
        prefix=f"Explaining with {method.display_name} ",
        fd=sys.stderr,
    ):
        for replicate, seed in enumerate(instance_seeds(trial_seed, method, position, replicates)):
            rows.append((explain(method, model, data.X_test.X[position], explainer_cfg, seed, position), replicate))

    path = explanations_path(resolve_output_dir(cfg, output_dir), model_path, method.value)
    write_explanations(path, rows, feature_names)
    print_success(f"Wrote {len(rows)} explanation(s) to {path}")


@main_group.command(name="audit", short_help="Run the full disparity audit")
@click_config_option()
@click_output_option()
@click_threads_option()
@click.option(
    "-f",
    "--format",
    "formats",
    multiple=True,
    type=click.Choice(choices=REPORT_FORMATS),
    default=REPORT_FORMATS,
    show_default=True,
    help="Report formats to write",
)
@click.option("--progress/--no-progress", default=True, help="Show a progress bar")
@handle_errors
def cmd_audit(config_path: str, output_dir: Optional[str], threads: int, formats: Sequence[str], progress: bool):
    cfg = ExperimentConfig.load(config_path)
    output_dir = resolve_output_dir(cfg, output_dir)
    threads = resolve_threads(threads)
    print_info(f"Auditing {cfg.dataset.name} over {cfg.trials} trial(s) with {threads} thread(s)")

    result = run_experiment(cfg, threads=threads, show_progress=progress, output_dir=output_dir)
    emit_report(result, output_dir, formats)

    significant = [cell for cell in result.cells if cell.result.significant]
    for cell in significant:
        print(
            color_significant(
                f"{cell.model.value} / {cell.explainer.display_name} / {cell.metric.display_name}: "
                f"p = {cell.result.p_value:.3f}",
            ),
        )
    counts = result.counts
    print_info(
        f"{counts.significant_cells}/{counts.total_cells} cell(s) significant at alpha={cfg.alpha}, "
        f"report written to {output_dir}",
    )
    if significant:
        sys.exit(DISPARITY_EXIT_CODE)
    print_success("No significant disparity")


@main_group.command(name="report", short_help="Re-emit the report of a finished audit")
@click.option(
    "-R",
    "--result",
    "result_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="result.json written by `xaudit audit`",
)
@click.option(
    "-f",
    "--format",
    "formats",
    multiple=True,
    type=click.Choice(choices=REPORT_FORMATS),
    default=REPORT_FORMATS,
    show_default=True,
    help="Report formats to write",
)
@click.option(
    "-o",
    "--output-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Output directory, defaults to the directory of the result file",
)
@handle_errors
def cmd_report(result_path: str, formats: Sequence[str], output_dir: Optional[str]):
    result = load_result(result_path)
    written = emit_report(result, output_dir or Path(result_path).parent, formats)
    for path in written:
        print_success(f"Wrote {path}")
