"""End-to-end smoke tests for the python bindings."""

import json

import pytest

import hitchin_atlas as ha


def intro_config():
    return json.dumps(
        {
            "n": 2,
            "g": 2,
            "twist": "canonical",
            "irreducible_reduced": True,
            "off_zero_branching": "simple",
            "zeros": [{"label": "x0", "order": 2}]
            + [{"label": f"x{i}", "order": 1} for i in range(1, 7)],
        }
    )


def intro_point():
    bp = ha.BasePoint()
    bp.n = 2
    bp.g = 2
    bp.zeros = [ha.MarkedZero("x0", 2)] + [
        ha.MarkedZero(f"x{i}", 1) for i in range(1, 7)
    ]
    return bp


def germ_point():
    bp = ha.BasePoint()
    bp.n = 1
    bp.g = 2
    germs = ["z", "z + z^2", "2*z", "z + i*z^3"]
    bp.zeros = [
        ha.MarkedZero(f"p{i}", 1, {2: ha.Series(s)}) for i, s in enumerate(germs)
    ]
    return bp


def test_version():
    assert ha.version() == "0.1.0"
    assert ha.__version__ == "0.1.0"


def test_series_arithmetic():
    s = ha.Series("1 + 2*z^2")
    assert ha.Series(str(s)) == s
    assert s * s == ha.Series("1 + 4*z^2 + 4*z^4")
    assert (s - s).is_exact_zero()
    assert ha.Series("z").shifted(-2).order() == -1
    with pytest.raises(ValueError):
        ha.Series("z^^")


def test_strata_and_duality():
    bp = intro_point()
    ha.validate(bp)
    t = ha.strata_table(bp, ha.Side.Sp)
    assert [(r.r, r.s, r.dim) for r in t.rows] == [(1, 0, 10), (0, 0, 9)]
    assert t.prym_dim == 9
    assert t.rows[0].torsor.base == "Prym"
    assert ha.strata_table(bp, ha.Side.So).rows[0].torsor.base == "PrymDual"

    rows = ha.duality_table(bp)
    assert rows and all(r.hecke_isomorphic and r.abelian_dual for r in rows)

    assert ha.component_counts(bp, ha.Side.Sp).connected == 1
    assert ha.component_counts(bp, ha.Side.So).connected == 2

    assert ha.first_degeneration(bp).product == "P1"


def test_classification_and_invariants():
    bp = germ_point()
    c = ha.classify(bp)
    assert c.kind == ha.FibreKind.Regular
    assert ha.fibre_kind_name(c.kind) == "regular"
    assert all(z.smooth_at_origin and z.off_origin_ok for z in c.zeros)

    ci = ha.curve_invariants(bp)
    assert ci.prym_dim == 3
    assert ci.genus_spectral - ci.genus_quotient == ci.prym_dim

    d = ha.discriminant_germs(bp, bp.zeros[0])
    assert d.reduced == ha.Series(1)
    assert d.ord_full == 1

    # Order-only points cannot be classified.
    with pytest.raises(ha.PreconditionError):
        ha.classify(intro_point())


def test_local_germ_operations():
    e = ha.sl2_normal_form(1, 0)
    assert e.kind == ha.FormKind.Symplectic
    assert e.higgs[0, 1] == ha.Series(1)

    p = ha.pushforward_germ(e, 2)
    assert p.transition_exponents == [0, 0, 1, 1]
    assert p.cover_degree == 2
    ch = ha.char_poly_of(p.germ)
    assert ch == ha.norm_char_poly(e, 2)
    assert ch[0] == -ha.Series("z")
    assert ch[4] == ha.Series(1)

    kd = ha.so_kernel_data(ha.so3_normal_form(3, 1))
    assert kd.vanishing_order == 1
    assert kd.form_on_kernel == -ha.Series("4*z")
    rec = ha.so_hecke_reconstruct(kd, 3, 1)
    assert rec.torsion_length == 1


def test_verify_sweeps():
    cases = ha.verify_local(m_max=2)
    assert cases and all(c.ok for c in cases)

    injected = ha.verify_metrics(m_max=2, inject_corruption=True)
    bad = [c for c in injected if not c.ok]
    assert len(bad) == 1
    assert "injected" in bad[0].name
    assert "normality defect" in bad[0].detail


def test_config_and_reports():
    cfg = ha.parse_config(intro_config())
    assert cfg.base.n == 2
    assert ha.parse_config(cfg.canonical).sha256 == cfg.sha256
    assert ha.canonical_config(cfg.base) == cfg.canonical

    out = json.loads(ha.report_json(intro_config()))
    assert out["strata"]["sp"]["rows"][0]["dim"] == "10"
    assert out["duality"]["all_hecke_isomorphic"] is True
    assert out["degeneration"]["product"] == "P1"
    assert ha.report_markdown(intro_config()).startswith("# atlas report")
    assert ha.report_csv(intro_config()).startswith("# atlas ")

    with pytest.raises(ha.ConfigError):
        ha.parse_config("not json")
    bad = json.loads(intro_config())
    bad["zeros"][0]["order"] = 3
    with pytest.raises(ha.ValidationError):
        ha.parse_config(json.dumps(bad))
