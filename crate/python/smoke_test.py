"""Smoke test for the pointgreen Python bindings."""

import cmath
import math

import pointgreen as pg


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


def main():
    free = pg.Interaction.free()
    t, x, y = 0.7, -0.4, 1.3
    want = cmath.exp(1j * (x - y) ** 2 / (4 * t)) / cmath.sqrt(4j * math.pi * t)
    assert close(free.green(t, x, y), want, 1e-14), "free kernel"

    d = pg.Interaction.delta(1.0)
    assert d.case == "II" and pg.Interaction.dirichlet().case == "III"
    assert d.green(t, x, y) != free.green(t, x, y)

    closed = d.plane_wave(1.0, 0.8, 1.5)
    quad, err = d.evolve(pg.Datum.plane_wave(1.5), 1.0, 0.8, method="quadrature")
    assert close(quad, closed, 1e-8) and err < 1e-6, "closed form vs quadrature"

    so = pg.Datum.superoscillation(10, 2.0)
    assert so.conditioning > 1.0
    assert close(so(0.3), (math.cos(0.03) + 2j * math.sin(0.03)) ** 10, 1e-13)
    v_auto, _ = d.evolve(so, 0.5, 0.5)
    v_quad, e_quad = d.evolve(so, 0.5, 0.5, method="quadrature")
    assert abs(v_auto - v_quad) <= e_quad + 1e-8, "superoscillation routes"

    states = pg.Interaction.delta(-2.0).bound_states()
    assert len(states) == 1 and abs(states[0]["energy"] + 4.0) < 1e-13
    assert pg.Interaction.neumann().bound_states() == []

    try:
        pg.Interaction.delta(0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("zero strength accepted")

    assert close(pg.lambda_fn(0.0), 1.0, 1e-15)
    report = pg.verify("quick", [8])
    assert report[0][0] == 8 and report[0][2], report

    print("smoke test passed")


if __name__ == "__main__":
    main()
