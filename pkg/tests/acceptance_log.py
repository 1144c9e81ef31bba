"""One summary line per acceptance criterion, printed at the end of the run."""

RESULTS: list[str] = []


def record(cid: int, ok: bool, seconds: float, limit: float | None, detail: str) -> None:
    in_time = limit is None or seconds <= limit
    status = "PASS" if ok and in_time else "FAIL"
    bound = f"limit {limit:g} s" if limit is not None else "no limit"
    RESULTS.append(f"criterion {cid:>2}: {status}  {seconds:7.2f} s ({bound})  {detail}")
    assert ok, detail
    assert in_time, f"took {seconds:.2f} s, limit {limit} s"
