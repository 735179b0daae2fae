import io
import contextlib

from ffinv.cli import run


def capture(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = run(argv)
    return rc, buf.getvalue()


def test_census():
    rc, out = capture(["census", "idempotents", "--n", "2", "--q", "3"])
    assert rc == 0
    assert out.splitlines()[0] == "count=14"


def test_census_enumerate():
    rc, out = capture(["census", "idempotents", "--n", "2", "--q", "2",
                       "--enumerate"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "count=8"
    assert sum(1 for ln in lines if ln.startswith("idempotent=")) == 8


def test_perm_check_false():
    rc, out = capture(["perm", "check", "2:1:3", "poly:[0,1,1]"])
    assert rc == 1
    assert "permutation=false" in out


def test_invert_family_simple_proof():
    rc, out = capture(["invert", "family", "simple-proof", "2:1:3",
                       "params(α=1,c=1,G=x)"])
    assert rc == 0
    assert "verified=true" in out
    assert "inverse=poly:[0,0,1]" in out


def test_invert_brute_pipes_into_verify():
    rc, out = capture(["invert", "brute", "2:1:3", "poly:[0,0,1]"])
    assert rc == 0
    inv = [tok.split("=", 1)[1] for tok in out.split()
           if tok.startswith("inverse=")][0]
    rc2, out2 = capture(["verify", "2:1:3", "poly:[0,0,1]", inv])
    assert rc2 == 0 and "verified=true" in out2


def test_invert_subspace_strategies():
    for strategy in ("gauss", "ntt"):
        rc, out = capture(["invert", "subspace", "3:1:2", "lin:[2,1]",
                           "--V", "span{3}", "--Vbar", "span{3}",
                           "--strategy", strategy])
        assert rc == 0
        assert "verified=true" in out


def test_field_info_deterministic():
    rc1, out1 = capture(["field", "info", "2:2:2"])
    rc2, out2 = capture(["field", "info", "2:2:2"])
    assert rc1 == rc2 == 0 and out1 == out2
    assert "q=4" in out1 and "N=16" in out1


def test_usage_error_exit_2():
    rc, out = capture(["invert", "family", "no-such-family", "2:1:3",
                       "params(a=1)"])
    assert rc == 2
    assert "no-such-family" in out


def test_bad_literal_exit_2():
    rc, out = capture(["perm", "check", "2:1:3", "poly:<0,1>"])
    assert rc == 2


def test_hypothesis_violation_exit_1():
    rc, out = capture(["invert", "family", "q2-powerq", "3:1:2",
                       "params(a=1,b=1,k=2)"])
    assert rc == 1
    assert "hypothesis_violated" in out


def test_bench_csv_shape():
    rc, out = capture(["bench", "subspace-inverse", "--sweep", "3:1:2",
                       "--trials", "1"])
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "p,m,n,strategy,nanos,verified"
    for ln in lines[1:]:
        cols = ln.split(",")
        assert len(cols) == 6 and cols[5] == "true"
