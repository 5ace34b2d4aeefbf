import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def case1_report():
    from cmcalg.pipeline.case1 import run_case1
    return run_case1()


@pytest.fixture(scope="session")
def case2_report():
    from cmcalg.pipeline.case2 import run_case2
    return run_case2()


@pytest.fixture(scope="session")
def ten_qs():
    """The ten q-polynomials entering the Case I ideal, under the full solved ledger."""
    from cmcalg.parse import parse_poly
    from cmcalg.pipeline import displays as D
    from cmcalg.pipeline.ledger import SubstitutionLedger
    from cmcalg.pipeline.tower import q_values
    from cmcalg.poly import standard_varset
    vs = standard_varset(3)
    led = SubstitutionLedger()
    for target, text in D.SOLVED_DISPLAYS.items():
        led.add(target, parse_poly(text, vs))
    values = q_values(D.IDEAL_SEQUENCES, led)
    return [values[s] for s in D.IDEAL_SEQUENCES]


_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.fixture
def verdict():
    """Record one acceptance line, then assert it."""
    def record(number: int, ok: bool, detail: str) -> None:
        _ACCEPTANCE[number] = ("PASS" if ok else "FAIL", detail)
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
