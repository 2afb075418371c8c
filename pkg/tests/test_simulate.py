import math

import numpy as np
import pytest

from subprod.bp import BpConfig
from subprod.construction import dual_berman_code, rm_code
from subprod.lgs import CrcSpec, SearchConfig
from subprod.simulate import (
    CSV_HEADER,
    CerRecord,
    SweepConfig,
    emit_results,
    ml_lower_bound_event,
    records_from_json,
    records_to_csv,
    records_to_json,
    run_sweep,
    union_bound_cer,
)

# ------------------------------------------------------------ config checks

def test_decoder_code_compatibility():
    with pytest.raises(ValueError, match="order-1"):
        SweepConfig(code=dual_berman_code(3, 2, 3), decoder="fastml", ebn0_grid=[1.0])
    with pytest.raises(ValueError, match="order-2"):
        SweepConfig(code=dual_berman_code(3, 1, 3), decoder="bp", ebn0_grid=[1.0], bp=BpConfig())
    with pytest.raises(ValueError, match="BpConfig"):
        SweepConfig(code=dual_berman_code(3, 2, 3), decoder="bp", ebn0_grid=[1.0])
    with pytest.raises(ValueError, match="unknown decoder"):
        SweepConfig(code=rm_code(1, 3), decoder="viterbi", ebn0_grid=[1.0])
    with pytest.raises(ValueError, match="nonempty"):
        SweepConfig(code=rm_code(1, 3), decoder="fastml", ebn0_grid=[])

def test_crc_payload_must_match_dimension():
    crc = CrcSpec(poly=(1, 0, 0, 1, 1), message_len=40)  # 40 + 4 != 51
    with pytest.raises(ValueError, match="dimension"):
        SweepConfig(
            code=dual_berman_code(3, 2, 5),
            decoder="bp+lgs",
            ebn0_grid=[1.0],
            bp=BpConfig(),
            search=SearchConfig(path_len=8, crc=crc),
        )

# ------------------------------------------------------------ ML lower bound

def test_ml_event_false_on_equal_words():
    c = np.array([0, 1, 1, 0], dtype=np.uint8)
    assert not ml_lower_bound_event(c, c.copy(), np.ones(4))

def test_ml_event_true_on_better_wrong_word():
    c = np.array([0, 0], dtype=np.uint8)
    wrong = np.array([1, 1], dtype=np.uint8)
    assert ml_lower_bound_event(c, wrong, np.array([-3.0, -1.0]))
    assert not ml_lower_bound_event(c, wrong, np.array([3.0, 1.0]))

def test_ml_event_counts_ties():
    c = np.array([0, 0], dtype=np.uint8)
    wrong = np.array([1, 1], dtype=np.uint8)
    assert ml_lower_bound_event(c, wrong, np.array([1.0, -1.0]))

# -------------------------------------------------------------- union bound

def test_union_bound_coefficient():
    code = dual_berman_code(3, 1, 4)
    # A = m * |Amin| = 12 for this instance; direct formula cross-check at 3 dB
    arg = math.sqrt(2 * 27 * (9 / 81) * 10**0.3)
    want = 12 * 0.5 * math.erfc(arg / math.sqrt(2))
    assert union_bound_cer(code, 3.0) == pytest.approx(want, rel=1e-12)

def test_union_bound_degenerate_point():
    # as Eb/N0 -> 0 the Q argument vanishes and the bound approaches A/2
    code = dual_berman_code(3, 1, 4)
    assert union_bound_cer(code, -300.0) == pytest.approx(6.0, rel=1e-6)

def test_union_bound_monotone():
    code = dual_berman_code(3, 1, 4)
    values = [union_bound_cer(code, e) for e in (0.0, 1.0, 2.0, 3.0, 4.0)]
    assert all(a > b for a, b in zip(values, values[1:]))

def test_union_bound_rejects_n_equal_2d():
    with pytest.raises(ValueError):
        union_bound_cer(rm_code(1, 3), 2.0)

# ------------------------------------------------------------------- sweeps

def test_zero_noise_limit_has_no_errors():
    cfg = SweepConfig(
        code=rm_code(1, 3),
        decoder="fastml",
        ebn0_grid=[40.0],
        min_errors=1,
        max_trials=10**4,
        seed=3,
    )
    rec = run_sweep(cfg)[0]
    assert rec.errors == 0 and rec.trials == 10**4
    assert rec.cer == 0.0

def test_sweep_deterministic_given_seed():
    cfg = SweepConfig(
        code=dual_berman_code(3, 1, 2),
        decoder="fastml",
        ebn0_grid=[0.0, 1.0],
        min_errors=20,
        max_trials=2000,
        seed=11,
    )
    a = records_to_csv(run_sweep(cfg))
    b = records_to_csv(run_sweep(cfg))
    for la, lb in zip(a.splitlines(), b.splitlines()):
        ca, cb = la.split(","), lb.split(",")
        assert ca[:5] == cb[:5]  # all fields except wall-clock seconds
        assert ca[6] == cb[6]

def test_sweep_cer_nonincreasing():
    cfg = SweepConfig(
        code=dual_berman_code(3, 1, 4),
        decoder="fastml",
        ebn0_grid=[0.0, 2.0, 4.0],
        min_errors=40,
        max_trials=4000,
        seed=2,
    )
    recs = run_sweep(cfg)
    cers = [r.cer for r in recs]
    # allow generous Monte-Carlo slack on the comparison
    ses = [math.sqrt(r.cer * (1 - r.cer) / r.trials) for r in recs]
    for i in range(len(cers) - 1):
        assert cers[i + 1] <= cers[i] + 1.96 * (ses[i] + ses[i + 1])

def test_ml_events_equal_errors_under_exact_ml():
    cfg = SweepConfig(
        code=dual_berman_code(3, 1, 2),
        decoder="fastml",
        ebn0_grid=[1.0],
        min_errors=30,
        max_trials=5000,
        seed=4,
    )
    rec = run_sweep(cfg)[0]
    assert rec.errors > 0
    assert rec.ml_lb_events == rec.errors

def test_bp_sweep_runs():
    cfg = SweepConfig(
        code=dual_berman_code(3, 2, 3),
        decoder="bp",
        ebn0_grid=[2.0],
        bp=BpConfig(gamma=0.12, gamma_g=0.1, tmax=4),
        min_errors=5,
        max_trials=300,
        seed=6,
    )
    rec = run_sweep(cfg)[0]
    assert rec.trials <= 300 and 0 <= rec.cer <= 1

# ------------------------------------------------------------------- output

def _fake_records():
    return [
        CerRecord(ebn0_db=1.0, trials=1000, errors=10, ml_lb_events=7, seconds=1.5, config_hash="abc123def456"),
        CerRecord(ebn0_db=2.0, trials=2000, errors=5, ml_lb_events=5, seconds=2.5, config_hash="abc123def456"),
    ]

def test_csv_shape():
    text = records_to_csv(_fake_records())
    lines = text.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 3
    assert all(len(line.split(",")) == 7 for line in lines)
    assert lines[1].startswith("1.0,1000,10,0.01,")

def test_csv_empty_records_is_header_only():
    assert records_to_csv([]).strip() == CSV_HEADER

def test_json_round_trip():
    records = _fake_records()
    back = records_from_json(records_to_json(records))
    assert back == records

def test_emit_results(tmp_path):
    records = _fake_records()
    csv_path = tmp_path / "out.csv"
    emit_results(records, str(csv_path), "csv")
    assert csv_path.read_text().startswith(CSV_HEADER)
    json_path = tmp_path / "out.json"
    emit_results(records, str(json_path), "json")
    assert records_from_json(json_path.read_text()) == records
    with pytest.raises(ValueError):
        emit_results(records, str(tmp_path / "x"), "xml")
