import argparse
import logging
import sys

from helpers import LOG_FORMAT
from workflow_runner import COMMANDS, METHODS, OUTPUTS, execute_workflow

parser = argparse.ArgumentParser(
    description="Resolving trees, Alexander polynomials and depth certificates for positive braid closures",
    add_help=True,
)

wf_args = parser.add_argument_group("workflow-args", "Workflow Selection Arguments")
wf_args.add_argument("command", choices=COMMANDS, help="Pipeline to run.")
wf_args.add_argument(
    "word",
    nargs="?",
    default="",
    help='Braid word as signed generator indices, e.g. "1 2 -1" or "1,1,1". Not needed for verify.',
)
wf_args.add_argument(
    "--config-file",
    type=str,
    default="./config/config.yaml",
    help="Provide the path to the config file. Default is ./config/config.yaml.",
)

run_args = parser.add_argument_group("run-args", "Pipeline Arguments")
run_args.add_argument("--strands", type=int, default=None, help="Strand count n. Defaults to the widest generator + 1.")
run_args.add_argument("--method", choices=METHODS, default="all", help="Alexander polynomial method.")
run_args.add_argument("--output", choices=OUTPUTS, default="text", help="Output format.")
run_args.add_argument("--seed", type=int, default=0, help="Seed for the randomized verify run.")
run_args.add_argument("--trace", action="store_true", help="Print the rewriting trace of the square search.")
run_args.add_argument("--budget", type=int, default=None, help="Depth budget for the brute force search.")

arg_flags = parser.parse_args()

logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, style="{")

sys.exit(execute_workflow(arg_flags))
