#include <sn/generators.hpp>
#include <sn/parser.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <string>

using namespace sn;

TEST_CASE("parsing example expressions", "[parser]") {
    const Value a = parse("x1*e1 ^ e2", 2);
    REQUIRE(a.is_multivector());
    REQUIRE(a.multivector() == parse_multivector("x1*e1^e2", 2));

    REQUIRE_THROWS_AS(parse("dx1 ^ e1", 2), TypeError);

    const Value b = parse("3/2*x1**2*dx2", 2);
    REQUIRE(b.is_form());
    REQUIRE(b.form().degree() == 1);
    REQUIRE(b.form().coefficient({2}) == parse_polynomial("3/2*x1**2", 2));

    REQUIRE(parse("2 + 1/2", 1).scalar() == parse_polynomial("5/2", 1));
    REQUIRE(parse("-e1", 2).multivector() == -parse_multivector("e1", 2));
    REQUIRE(parse("(x1 + 1)*e1", 2).multivector() ==
            parse_multivector("x1*e1 + e1", 2));
    REQUIRE(parse("e1^e2*x1", 2).multivector() == parse_multivector("x1*e1^e2", 2));
    REQUIRE(parse("x1 ^ x2", 2).scalar() == parse_polynomial("x1*x2", 2));
}

TEST_CASE("canonical printing", "[parser]") {
    REQUIRE(print_canonical(Value(-parse_multivector("e2", 2))) == "-1*e2");
    REQUIRE(print_canonical(Value(Multivector::zero(3, 2))) == "0");
    REQUIRE(print_canonical(Value(parse_multivector("x3*e1^e2 + x1*e2^e3", 3))) ==
            "x3*e1^e2 + x1*e2^e3");
    REQUIRE(print_canonical(Value(parse_form("-3*dx1 + dx2", 2))) == "-3*dx1 + dx2");
    REQUIRE(print_canonical(parse("(x2 - x1)*e1", 2)) == "(-x1 + x2)*e1");
    REQUIRE(print_canonical(parse("-x1*e1 - e2", 2)) == "-x1*e1 - 1*e2");
}

TEST_CASE("positioned errors", "[parser]") {
    auto position_of = [](const std::string& text, int dim) -> std::size_t {
        try {
            parse(text, dim);
        } catch (const ParseError& e) {
            return e.position;
        } catch (const TypeError& e) {
            return e.position;
        }
        return 0;
    };

    REQUIRE_THROWS_AS(parse("", 2), ParseError);
    REQUIRE_THROWS_AS(parse("   ", 2), ParseError);
    REQUIRE_THROWS_AS(parse("x1 +", 2), ParseError);
    REQUIRE_THROWS_AS(parse("x0", 2), ParseError);
    REQUIRE_THROWS_AS(parse("e3", 2), ParseError);
    REQUIRE_THROWS_AS(parse("dx9", 2), ParseError);
    REQUIRE_THROWS_AS(parse("x1/2", 2), ParseError);
    REQUIRE_THROWS_AS(parse("1/0", 2), ParseError);
    REQUIRE_THROWS_AS(parse("(x1", 2), ParseError);
    REQUIRE_THROWS_AS(parse("x1 x2", 2), ParseError);
    REQUIRE_THROWS_AS(parse("e1**2", 2), TypeError);
    REQUIRE_THROWS_AS(parse("e1 + dx1", 2), TypeError);
    REQUIRE_THROWS_AS(parse("e1 + e1^e2", 2), TypeError);
    REQUIRE_THROWS_AS(parse("e1*e2", 2), TypeError);

    REQUIRE(position_of("x1 +", 2) == 5);
    REQUIRE(position_of("x1 x2", 2) == 4);
    REQUIRE(position_of("e3", 2) == 2);
}

TEST_CASE("round trip on random values", "[parser]") {
    long count = 0;
    for (int dim : {1, 2, 3, 4}) {
        for (int trial = 0; trial < 90; ++trial) {
            Rng rng = Rng::derive(61, "parser.roundtrip", dim, trial);
            const int kind = rng.int_in(0, 2);
            Value v = [&]() -> Value {
                if (kind == 0) return Value(random_polynomial(rng, dim, 3, true));
                if (kind == 1)
                    return Value(random_multivector(rng, dim, rng.int_in(0, dim + 1), 3));
                return Value(random_form(rng, dim, rng.int_in(0, dim + 1), 3));
            }();
            const Value back = parse(print_canonical(v), dim);
            REQUIRE(semantic_equal(v, back));
            ++count;
        }
    }
    REQUIRE(count >= 360);
}

TEST_CASE("every input parses or fails with a position", "[parser]") {
    const std::string alphabet = "x123de^*+-/() \t";
    for (int trial = 0; trial < 1500; ++trial) {
        Rng rng = Rng::derive(62, "parser.fuzz", 0, trial);
        const int len = rng.int_in(0, 24);
        std::string text;
        for (int i = 0; i < len; ++i)
            text += alphabet[static_cast<std::size_t>(
                rng.int_in(0, static_cast<int>(alphabet.size()) - 1))];
        try {
            (void)parse(text, 3);
        } catch (const ParseError& e) {
            REQUIRE(e.position >= 1);
            REQUIRE(e.position <= text.size() + 1);
        } catch (const TypeError& e) {
            REQUIRE(e.position >= 1);
            REQUIRE(e.position <= text.size() + 1);
        }
    }
}

TEST_CASE("semantic equality identifies zeros and wrapped scalars", "[parser]") {
    REQUIRE(semantic_equal(Value(Multivector::zero(2, 3)), Value(Polynomial::zero(2))));
    REQUIRE(semantic_equal(Value(Form::zero(2, 1)), Value(Multivector::zero(2, 2))));
    REQUIRE(semantic_equal(Value(Multivector::scalar(parse_polynomial("x1", 2))),
                           Value(parse_polynomial("x1", 2))));
    REQUIRE_FALSE(semantic_equal(Value(parse_multivector("e1", 2)),
                                 Value(parse_form("dx1", 2))));
    REQUIRE_FALSE(semantic_equal(Value(parse_polynomial("x1", 2)),
                                 Value(parse_polynomial("x1", 3))));
}
