"""
Oracle 自检：不同进程数下结果逐字节一致，融合遍历与逐个 park() 一致
"""

from config.settings import settings
from src.core.models import SuiteResult, Variant
from src.oracle.cache import canonical_payload
from src.oracle.tables import run_oracle, tally_from_stream
from src.verify.context import VerifyContext
from src.verify.registry import register_suite

STREAM_CHECK_MAX_N = 6


@register_suite("determinism", "oracle payload identical across 1, 2 and max workers", default_nmax=7)
def determinism_suite(nmax: int, ctx: VerifyContext) -> SuiteResult:
    result = SuiteResult(suite="determinism", nmax=nmax)
    worker_counts = sorted({1, 2, settings.worker_count})
    payloads = {}
    for workers in worker_counts:
        # 不走缓存，每次都真正重算
        entry = run_oracle(nmax, Variant.ALL, workers=workers, allow_long=ctx.allow_long, cache=None)
        payloads[workers] = canonical_payload(entry)
    reference = payloads[1]
    for workers in worker_counts[1:]:
        result.record(f"n={nmax}: workers={workers} vs workers=1", "parallel reduction",
                      payloads[workers] == reference)

    for variant in Variant:
        for n in range(1, min(nmax, STREAM_CHECK_MAX_N) + 1):
            entry = run_oracle(n, variant, cache=None)
            streamed = tally_from_stream(n, variant)
            result.record(f"{variant.value} n={n}: fused walk vs park() stream", "oracle cross-check",
                          entry.q == streamed.q and entry.counts == streamed.counts
                          and entry.leaves == streamed.leaves)
    return result
