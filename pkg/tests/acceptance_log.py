"""One line per acceptance criterion, filled in by test_acceptance and printed at the end."""

LINES: list[str] = []


def record(n: int, ok: bool, detail: str, elapsed: float, budget: float) -> str:
    status = "PASS" if ok else "FAIL"
    timing = f"{elapsed:.1f}s (budget {budget:.0f}s{'' if elapsed <= budget else ', OVER'})"
    line = f"criterion {n}: {status} - {detail} [{timing}]"
    LINES.append(line)
    return line
