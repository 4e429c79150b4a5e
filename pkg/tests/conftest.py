import math

import pytest

# Reference values evaluated once with mpmath at 40 digits from the closed
# forms (and cross-checked there by mpmath quadrature / polylog).
ALPHA_REF = 0.8813735870195430252326093249797923090281
PI2_16_REF = 0.6168502750680849136771556874922594459571
T2_REF = 0.2284405751202369229268683324475499936536
T3_REF = -0.4226454250941609183020120099699047198053  # also L1
D1_REF = 0.7852342234485466585206362041489763181444
LI2_HALF_REF = 0.5822405264650125059026563201596801087442
LI2_MINUS_ONE_REF = -0.8224670334241132182362076
ZETA3_REF = 1.202056903159594285399738161511449990765
LI2_SQRT2_MINUS_1_REF = 0.4675339970230046176269648  # = int_1^{2-sqrt2} ln t/(1-t) dt
A2_LOW_REF = 0.5483113556160754788241384
A2_HIGH_REF = 1.096622711232150957648277

PI2_8 = math.pi**2 / 8
PI2_6 = math.pi**2 / 6

ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, name: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} -- {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
