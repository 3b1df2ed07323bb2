import json
from fractions import Fraction

import pytest

import relchern


def weierstrass(base):
    L = base.divisor("L")
    zero = 0 * L
    bundle = relchern.BundleSpec([(zero, 1), (2 * L, 1), (3 * L, 1)])
    return relchern.HypersurfaceSpec(3, 6 * L, bundle)


def test_weierstrass_q_class():
    base = relchern.formal_base(3)
    q = weierstrass(base).q_class()
    assert str(q) == "12L - 72L^2 + 432L^3"
    assert q == weierstrass(base).q_class_direct()
    expected = relchern.expand_ratio(relchern.parse_class("12L", base.ring), relchern.parse_class("1 + 6L", base.ring))
    assert q == expected


def test_fano_and_projective_euler():
    fano = relchern.formal_base(3, fano=True)
    assert str(weierstrass(fano).euler(fano)) == "360c1^3 + 12c1*c2"
    assert weierstrass(relchern.projective_space(3, 4)).euler(relchern.projective_space(3, 4)) == 23328
    p2 = relchern.projective_space(2, 3)
    assert weierstrass(p2).euler(p2, integrate=True) == -540
    with pytest.raises(relchern.ModeError):
        weierstrass(fano).euler(fano, integrate=True)


def test_pushforward_and_arithmetic():
    base = relchern.formal_base(3)
    L = base.divisor("L")
    bundle = relchern.BundleSpec([(0 * L, 1), (L, 2)])
    assert str(bundle.pushforward("H^3")) == "-2L"
    assert bundle.pushforward("H^4") == bundle.pushforward_closed_form("H^4")
    assert str(bundle.inverse_total_chern()) == "1 - 2L + 3L^2 - 4L^3"
    assert (L + L) * L == 2 * L**2
    assert (L - L).is_zero()
    assert (1 + 6 * L - 6 * L).constant_term() == Fraction(1)
    with pytest.raises(relchern.NonUnitError):
        relchern.parse_class("1/(2+L)", base.ring)
    with pytest.raises(relchern.ParseError):
        relchern.parse_class("(L", base.ring)


def test_z_family_and_epoly():
    base = relchern.formal_base(2)
    assert relchern.csm_check(2, 3, base)
    assert relchern.csm_route(3, 4, base) == relchern.z_family(3, 4, base).relative_chern_class(base)
    assert [relchern.hypersurface_euler_poly(n, 1) for n in range(1, 7)] == [1, 2, 3, 4, 5, 6]
    assert relchern.hypersurface_euler_poly(3, 4) == 24
    with pytest.raises(relchern.UnsupportedDegreeError):
        relchern.csm_route(2, 1, base)


def test_specialize():
    formal = relchern.formal_base(3)
    p3 = relchern.projective_space(3, 4)
    cls = relchern.parse_class("12c1*c2 + 360c1^3", formal.ring)
    assert p3.integrate(relchern.specialize(cls, p3)) == 23328


def test_run_job():
    config = {
        "command": "euler",
        "format": "json",
        "base": {"kind": "projective", "dim": 3, "L": 4},
        "bundle": {"roots": [{"terms": {}}, {"terms": {"L": 2}}, {"terms": {"L": 3}}]},
        "hypersurface": {"degree": 3, "beta": {"L": 6}},
    }
    code, out, err = relchern.run_job(json.dumps(config))
    assert code == 0 and err == ""
    assert json.loads(out)["result"]["integer"] == "23328"
    code, out, _ = relchern.run_job(json.dumps({**config, "base": {"kind": "formal", "dim": 3}, "integrate": True}))
    assert code == 3
    assert json.loads(out)["error"]["kind"] == "mode_error"
    assert relchern.run_job("{not json")[0] == 2
