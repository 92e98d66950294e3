from fractions import Fraction

import pytest

from bdilab_zx_verifier import zw
from bdilab_zx_verifier.diagram import PhaseExpr, cap, cup, h, identity, seq, swap, tensor, triangle, x, z
from bdilab_zx_verifier.dsl import (
    format_document,
    format_zw,
    format_zx,
    parse_document,
    parse_phase,
    parse_zw,
    parse_zx,
)
from bdilab_zx_verifier.errors import ArityMismatch, ParseError
from bdilab_zx_verifier.semantics import interp

a = PhaseExpr.variable("a")
b = PhaseExpr.variable("b")


class TestParsePhase:
    @pytest.mark.parametrize(
        "text, phase",
        [
            ("0", PhaseExpr.zero()),
            ("pi", PhaseExpr.pi(1)),
            ("-pi", PhaseExpr.pi(-1)),
            ("pi/4", PhaseExpr.pi(Fraction(1, 4))),
            ("3/4 pi", PhaseExpr.pi(Fraction(3, 4))),
            ("2 pi/3", PhaseExpr.pi(Fraction(2, 3))),
            ("a", a),
            ("2 a - b + 1/2 pi", a * 2 - b + Fraction(1, 2)),
            ("-a + pi", -a + 1),
            ("1.5r", PhaseExpr.radians(1.5)),
        ],
    )
    def test_phases(self, text, phase):
        assert parse_phase(text) == phase

    def test_fractional_coefficient_parses(self):
        phase = parse_phase("1/2 a")
        assert not phase.is_linear()

    def test_bare_integer_rejected(self):
        with pytest.raises(ParseError) as info:
            parse_phase("3")
        assert info.value.line == 1

    def test_zero_denominator(self):
        with pytest.raises(ParseError):
            parse_phase("1/0 pi")


class TestParseZx:
    def test_composition(self):
        assert parse_zx("Z[1,1](a) ; Z[1,1](b)") == seq(z(1, 1, a), z(1, 1, b))

    def test_tensor_binds_tighter(self):
        d = parse_zx("Z[1,2] ; X[1,1](pi) * H")
        assert d == seq(z(1, 2), tensor(x(1, 1, 1), h()))

    def test_structural_generators(self):
        d = parse_zx("(id * T) ; swap ; cup")
        assert d.arity == (2, 0)
        assert interp(d).equals(interp(seq(tensor(identity(), triangle()), swap(), cup())))

    def test_empty_phase_arguments(self):
        assert parse_zx("Z[2,1]()") == z(2, 1)

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_zx("Z[1,1](a ; H")
        assert info.value.line == 1
        assert info.value.column is not None
        assert info.value.expected

    def test_unknown_generator(self):
        with pytest.raises(ParseError):
            parse_zx("Y[1,1]")

    def test_arity_mismatch_span(self):
        with pytest.raises(ArityMismatch) as info:
            parse_zx("Z[1,2] ; H")
        assert (info.value.expected, info.value.actual) == (2, 1)
        assert info.value.span == (1, 1)


class TestDocuments:
    def test_comments_and_blank_lines(self):
        text = "# fusion\nZ[1,1](a) ; Z[1,1](b)\n\n# fused\nZ[1,1](a + b)\n"
        document = parse_document(text)
        assert len(document.diagrams) == 2
        assert document.spans[1][0] == 5

    def test_unknown_language(self):
        with pytest.raises(ValueError):
            parse_document("H", "qasm")

    def test_round_trip(self, factory):
        for _ in range(100):
            diagrams = [factory.linear(["a", "b"], width=2, depth=2, max_coeff=3) for _ in range(3)]
            text = "".join(format_zx(d) + "\n" for d in diagrams)
            document = parse_document(text)
            assert format_document(document) == text
            for original, parsed in zip(diagrams, document.diagrams):
                assert parsed.arity == original.arity

    def test_round_trip_preserves_semantics(self, factory):
        for _ in range(20):
            d = factory.ground(width=2, depth=2, rational=True)
            assert interp(parse_zx(format_zx(d))).equals(interp(d))

    def test_radians_round_trip(self):
        d = z(1, 1, 0.123456789)
        assert parse_zx(format_zx(d)) == d


class TestZw:
    def test_parse(self):
        d = parse_zw("Zw[1,2](0.5,-1) ; W12 * id")
        assert d.arity == (1, 3)
        first = d.first
        assert first.kind is zw.ZwKind.SPIDER
        assert first.param.value == 0.5 - 1j

    def test_structural_generators_are_zw(self):
        d = parse_zw("swap ; fcross")
        assert isinstance(d.first, zw.ZwGenerator)
        assert d.first.kind is zw.ZwKind.SWAP

    def test_white_dot(self):
        assert parse_zw("wdot(2,0)") == zw.white_dot(2)
        assert parse_zw("wdot") == zw.white_dot()

    def test_round_trip(self):
        text = "Zw[1,2](0.5,-1) ; (W11 ; W11) * id ; fcross"
        assert format_zw(parse_zw(text)) == text
        document = parse_document(text + "\ncap ; W12 * id\n", "zw")
        assert len(document.diagrams) == 2

    def test_rejects_zx_generators(self):
        with pytest.raises(ParseError):
            parse_zw("H")


class TestRuleFiles:
    source = (
        "# two rules\n"
        "rule fuse\n"
        "vars a b\n"
        "lhs: Z[1,1](a) ; Z[1,1](b)\n"
        "rhs: Z[1,1](a + b)\n"
        "\n"
        "rule constrained\n"
        "vars alpha\n"
        "constraint A\n"
        "lhs: Z[0,1](alpha)\n"
        "rhs: Z[0,1](alpha)\n"
    )

    def test_parse(self):
        document = parse_document(self.source, "rules")
        fuse, constrained = document.rules
        assert fuse.name == "fuse"
        assert fuse.variables == ("a", "b")
        assert fuse.constraint is None
        assert fuse.rhs == z(1, 1, a + b)
        assert constrained.constraint == "A"
        assert fuse.span == (2, 1)

    def test_format_reparses(self):
        document = parse_document(self.source, "rules")
        text = format_document(document)
        assert format_document(parse_document(text, "rules")) == text

    def test_missing_rhs(self):
        with pytest.raises(ParseError):
            parse_document("rule r\nvars\nlhs: H\n", "rules")

    def test_cap_rule(self):
        document = parse_document("rule s3\nvars\nlhs: Z[0,2]\nrhs: cap\n", "rules")
        assert document.rules[0].rhs == cap()
