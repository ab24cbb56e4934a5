import os

from hypothesis import settings

# property tests are derandomized so failures reproduce run to run
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=60)
settings.register_profile("thorough", derandomize=True, deadline=None, max_examples=500)
settings.load_profile(os.environ.get("CUBELAB_HYPOTHESIS_PROFILE", "repro"))

SEED = 20240611


def pytest_report_header(config):
    return f"cubelab: derandomized hypothesis, base seed {SEED}"


ACCEPTANCE = {}


def record(n, ok, detail):
    """Store and print one acceptance line; the summary hook repeats them."""
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
