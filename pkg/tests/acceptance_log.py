"""Collects the one-line verdicts printed by the acceptance suite."""

LINES: list[str] = []


def record(number: int, ok: bool, text: str) -> None:
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {text}"
    LINES.append(line)
    print(line)
