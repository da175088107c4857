import numpy as np
import pytest

from gaspt_rh.geometry import DiskDomain, CirclePoint, chord_endpoints, gamma_path, mirror, theta_r


def test_domain_rejects_touching_axis():
    with pytest.raises(ValueError):
        DiskDomain(1.0)


def test_chord_endpoints_on_circle():
    dom = DiskDomain(2.0)
    z = 2.3 + 0.4j
    zl, zr = chord_endpoints(z, dom)
    assert abs(abs(zl - 2) - 1) < 1e-15 and abs(abs(zr - 2) - 1) < 1e-15
    assert zl.imag == zr.imag == z.imag
    assert zl.real < z.real < zr.real
    # zl, zr are mirror images about the vertical line x = a
    assert abs((zl - 2) + np.conj(zr - 2)) < 1e-15


def test_boundary_point_rejected():
    dom = DiskDomain(2.0)
    with pytest.raises(ValueError):
        chord_endpoints(3.0 + 0j, dom)


def test_theta_r_range():
    dom = DiskDomain(3.0)
    for y in (-0.9, -0.1, 0.0, 0.5):
        t = theta_r(3.0 + 1j * y, dom)
        assert -np.pi / 2 < t < np.pi / 2
        assert abs(dom.point(t).imag - y) < 1e-15


def test_mirror_involution():
    z = 1.7 - 0.2j
    assert mirror(mirror(z)) == z
    assert mirror(z) == -1.7 - 0.2j


def test_circle_point():
    p = CirclePoint.at(DiskDomain(2.0), 0.3)
    assert abs(p.tangent - 1j * np.exp(0.3j)) < 1e-15 and abs(p.z - 2 - np.exp(0.3j)) < 1e-15


@pytest.mark.parametrize("side", ["upper", "lower"])
def test_gamma_path_endpoints(side):
    dom = DiskDomain(2.0)
    z = 1.8 + 0.3j
    path = gamma_path(z, side, dom)
    zl, zr = chord_endpoints(z, dom)
    assert abs(path.start - zr) < 1e-14 and abs(path.end - z) < 1e-14
    mid = path.legs[0].point(0.5)
    assert (mid.imag > 0.3) == (side == "upper")
