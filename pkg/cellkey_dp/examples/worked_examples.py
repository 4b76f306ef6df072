"""
Checks for the published worked examples: calibration, quantization and the
post-quantization audit of the (epsilon=0.5, delta=1e-4) design.
"""
from cellkey_dp.core.calibration import CalibrationInput, design_guide
from cellkey_dp.core.quant_audit import audit_table
from cellkey_dp.core.sampler import build_lookup, sample
import logging
import math
import sys
from typing import Callable, Dict

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s',
    handlers=[
        logging.StreamHandler(sys.stdout)
    ]
)
logger = logging.getLogger(__name__)


def check_design() -> bool:
    result = design_guide(CalibrationInput(epsilon=0.5, delta_target=1e-4))
    logger.info(f"D*={result.D_star} delta={result.delta_achieved!r} V={result.V!r}")
    return (
        result.D_star == 25
        and abs(result.delta_achieved - 9.9129808160e-5) <= 1e-9
        and abs(result.V - 49.00) <= 0.01
    )


def check_quantization() -> bool:
    pmf = design_guide(CalibrationInput(epsilon=0.5, delta_target=1e-4)).pmf
    table = build_lookup(pmf, 32)
    logger.info(f"First cumulative entries: {table.cumulative[:3]}")
    coarse = build_lookup(pmf, 8)
    return (
        table.cumulative[:3] == (425760, 1126343, 2255949)
        and table.cumulative[-1] == 2 ** 32
        and sample(table, 2552).value == -25
        and sample(table, 1200124).value == -23
        and not coarse.full_support
    )


def check_audit() -> bool:
    pmf = design_guide(CalibrationInput(epsilon=0.5, delta_target=1e-4)).pmf
    audit = audit_table(build_lookup(pmf, 32), 0.5, pmf.mass(-25), pmf.variance)
    logger.info(f"B^Q={audit.bias_q!r} V^Q={audit.variance_q!r} eps^Q={audit.epsilon_q!r} delta^Q={audit.delta_q!r}")
    return (
        math.isclose(audit.variance_q, 49.002167175291106, rel_tol=0, abs_tol=1e-9)
        and math.isclose(audit.bias_q, -5.820766091346741e-9, rel_tol=0, abs_tol=1e-12)
        and math.isclose(audit.epsilon_q, 0.498037038323823, rel_tol=0, abs_tol=1e-9)
        and audit.delta_q == 425760 / 2 ** 32
    )


CHECKS: Dict[str, Callable[[], bool]] = {
    "design": check_design,
    "quantization": check_quantization,
    "audit": check_audit,
}


def run_all_examples() -> Dict[str, bool]:
    """
    Run every worked-example check.

    Returns:
        Dict[str, bool]: check names and whether they reproduced the published values
    """
    results = {}
    for name, check in CHECKS.items():
        logger.info(f"Running example: {name}")
        try:
            results[name] = bool(check())
        except Exception as e:
            logger.error(f"❌ Error running example {name}: {str(e)}")
            results[name] = False
            continue
        if results[name]:
            logger.info(f"✅ Example {name} reproduced")
        else:
            logger.error(f"❌ Example {name} differs from the published values")
    return results


def print_summary(results: Dict[str, bool]) -> None:
    """Print a summary of the example results."""
    logger.info("=== Worked Example Summary ===")
    total = len(results)
    successful = sum(1 for result in results.values() if result)

    logger.info(f"Total examples: {total}")
    logger.info(f"Reproduced: {successful}")
    logger.info(f"Failed: {total - successful}")

    for name, result in results.items():
        status = "✅" if result else "❌"
        logger.info(f"{status} {name}")


if __name__ == "__main__":
    logger.info("Starting worked example checks...")
    results = run_all_examples()
    print_summary(results)

    if not all(results.values()):
        sys.exit(1)
