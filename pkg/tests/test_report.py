from fractions import Fraction

from cavex import pi_engine, report
from cavex.scalar import DOWN, UP


def test_format_fraction_directions():
    third = Fraction(1, 3)
    assert report.format_fraction(third, 4, DOWN) == "0.3333"
    assert report.format_fraction(third, 4, UP) == "0.3334"
    assert report.format_fraction(-third, 4, DOWN) == "-0.3334"
    assert report.format_fraction(-third, 4, UP) == "-0.3333"
    assert report.format_fraction(Fraction(3), 2, DOWN) == "3.00"
    assert report.format_fraction(Fraction(5, 2), 0, UP) == "3"


def test_decimals_for_width_scales_with_width():
    assert report.decimals_for_width(Fraction(1, 1000), 128) == 5
    assert report.decimals_for_width(Fraction(1, 10 ** 12), 128) == 14
    assert report.decimals_for_width(Fraction(0), 128) == 40
    assert report.decimals_for_width(Fraction(1, 10), None) == 17


def test_pi_table_marks_exhausted_runs():
    trace = pi_engine.run(6, width_tol=1e-30, precision_bits=16)
    text = report.pi_trace_table(trace)
    assert "precision exhausted" in text
    clean = pi_engine.run(6, max_stages=2)
    assert "exhausted" not in report.pi_trace_table(clean)


def test_metric_demo_renderers_share_rows():
    rows = [{"partition": 0, "points": 2, "taxicab": 2.0,
             "secant": 1.5, "oracle": 1.6}]
    csv_text = report.metric_demo_csv(rows)
    assert csv_text.startswith("partition,points,taxicab,secant,oracle")
    assert "2,2," in csv_text
    assert "1.6" in report.metric_demo_table(rows)
