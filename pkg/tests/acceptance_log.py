"""Shared PASS/FAIL record for the acceptance criteria."""
RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, ok: bool, note: str = "") -> None:
    prev = RESULTS.get(n)
    if prev is not None:
        ok = ok and prev[0]
        note = "; ".join(x for x in (prev[1], note) if x)
    RESULTS[n] = (ok, note)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {note}")
