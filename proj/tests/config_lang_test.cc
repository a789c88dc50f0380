#include "support.hh"

#include <cyclic/config_lang.hh>

#include <doctest.h>

using namespace cyclic;

namespace
{
    auto eight0() -> ReductionPair { return parse_reduction_file(testing::data_file("configs/eight0.conf")); }

    auto has_diagnostic(const std::vector<std::string> & d, const std::string & text) -> bool
    {
        return std::any_of(d.begin(), d.end(), [&](auto & s) { return s.find(text) != std::string::npos; });
    }
}

TEST_CASE("the EIGHT0 fixture parses faithfully")
{
    auto pair = eight0();
    CHECK(pair.reduced.m == 5);
    CHECK(pair.reduced.n == 9);
    CHECK(pair.original.m == 5);
    CHECK(pair.original.n == 10);
    for (auto * block : {&pair.reduced, &pair.original}) {
        auto & f5 = block->faces[4];
        CHECK(f5.kind == FaceKind::bounded);
        CHECK(f5.letters() == "ab");
    }
    auto & first = pair.reduced.faces[0];
    CHECK(first.kind == FaceKind::unbounded_new);
    CHECK(first.a1 == 5);
    CHECK(first.a2 == 7);
    CHECK(first.letters() == "a");
    CHECK(first.internals() == std::vector<int>{8, 9});

    auto & orig2 = pair.original.faces[1];
    CHECK(orig2.kind == FaceKind::unbounded_orig);
    CHECK(orig2.ref == 2);
    CHECK(orig2.letters().empty());
    CHECK(orig2.internals() == std::vector<int>{5, 6, 7, 9, 10});
    CHECK(validate(pair, 16).empty());
    CHECK(validate(pair, 17).empty());
}

TEST_CASE("minimal file")
{
    auto pair = parse_reduction_file("1 1\n0 a 1\n1 1\n0 a 1\n");
    CHECK(pair.reduced.n == 1);
    CHECK(pair.reduced.faces[0].internals() == std::vector<int>{1});
    CHECK(validate(pair, 16).empty());
}

TEST_CASE("hidden vertex ranges")
{
    FaceSpec f;
    f.kind = FaceKind::unbounded_new;
    f.a1 = 7, f.a2 = 9;
    CHECK(hidden_count_range(f, 16) == std::pair{9, 11});
    f.a1 = 5, f.a2 = 7;
    CHECK(hidden_count_range(f, 17) == std::pair{12, 14});
    f.a1 = f.a2 = 18;
    CHECK(hidden_count_range(f, 16) == std::pair{0, 0});
    f.a1 = f.a2 = 19;
    CHECK_THROWS(hidden_count_range(f, 16));
}

TEST_CASE("hidden ranges shrink as the listed range grows")
{
    FaceSpec f;
    f.kind = FaceKind::unbounded_new;
    for (int a1 = 0; a1 <= 10; ++a1)
        for (int a2 = a1; a2 <= 10; ++a2) {
            f.a1 = a1, f.a2 = a2;
            auto [lo, hi] = hidden_count_range(f, 16);
            f.a2 = a2 + 1;
            CHECK(hidden_count_range(f, 16).first <= lo);
            f.a1 = a1 + 1;
            f.a2 = std::max(a2, a1 + 1);
            CHECK(hidden_count_range(f, 16).second <= hi);
        }
}

TEST_CASE("original faces resolve their range through the reference")
{
    auto pair = eight0();
    CHECK(hidden_count_range(pair, pair.original.faces[1], 16) == hidden_count_range(pair.reduced.faces[1], 16));
}

TEST_CASE("validation diagnostics")
{
    auto pair = eight0();
    pair.original.faces[1].ref = 9;
    CHECK(has_diagnostic(validate(pair, 16), "dangling face reference"));

    auto loose = parse_reduction_file("1 3\n0 a 1,2\n1 3\n0 a 1,2\n");
    CHECK(has_diagnostic(validate(loose, 16), "unconstrained internal vertex 3"));
}

TEST_CASE("parse errors carry line numbers")
{
    auto line_of = [](const std::string & text) {
        try {
            parse_reduction_file(text);
        }
        catch (const ConfigParseError & e) {
            return e.line();
        }
        return 0;
    };
    CHECK(line_of("2 1\n0 a 1\n") == 2);
    CHECK(line_of("1 1\n0 a 2\n1 1\n0 a 1\n") == 2);
    CHECK(line_of("1 1\n0 a 1\n1 1\nz a 1\n") == 4);
    CHECK(line_of("x 1\n") == 1);
}

TEST_CASE("print and parse round trip")
{
    auto pair = eight0();
    CHECK(parse_reduction_file(format_reduction_pair(pair)) == pair);
    auto spaced = parse_reduction_file("1  1\n0  a   1\n1 1\n0 a 1\n");
    CHECK(spaced.reduced.faces[0].internals() == std::vector<int>{1});
}
