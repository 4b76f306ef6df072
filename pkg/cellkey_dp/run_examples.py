import sys
import os

# Add the parent directory to Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from cellkey_dp.examples.worked_examples import run_all_examples, print_summary

if __name__ == "__main__":
    print("Starting worked example checks...")
    results = run_all_examples()
    print_summary(results)

    # Exit with status code 1 if any example failed
    if not all(results.values()):
        sys.exit(1)
