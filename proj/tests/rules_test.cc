#include <cyclic/rules.hh>

#include <doctest.h>

using namespace cyclic;
using namespace rule_keys;

TEST_CASE("published constants")
{
    auto t = RuleTable::reference(16);
    CHECK(t.value(weak(12)) == make_rational(4, 3));
    CHECK(t.value(iso(12)) == make_rational(23827, 36960));
    CHECK(t.value(C(5, 0)) == make_rational(-11507, 36960));
    CHECK(t.value(weak(16)) == make_rational(3, 2));
    CHECK(t.value(E(7, 0)) == make_rational(79, 240));
    CHECK(e_threshold(7) == 13);
    CHECK(t.value(through_heavy) == make_rational(17, 80));
    CHECK(t.value(five_to_tri_1(2)) == make_rational(37, 120));
    CHECK(t.value(six_to_tri_2_opp) == make_rational(767, 1680));
    CHECK(rule_amount(weak(12), 17) == make_rational(4, 3));
}

TEST_CASE("keys outside the declared ranges are rejected")
{
    auto t = RuleTable::reference(16);
    CHECK_THROWS_AS(t.id(A(5)), UnknownRule);
    CHECK_THROWS_AS(rule_amount(A(5), 16), UnknownRule);
    CHECK_THROWS_AS(t.id(weak(17)), UnknownRule);
    CHECK(RuleTable::reference(17).has(weak(17)));
    CHECK_FALSE(t.maybe_var(G(5)));
}

TEST_CASE("every key resolves and the parameter grid has no gaps")
{
    for (int delta : {16, 17}) {
        auto t = RuleTable::reference(delta);
        for (auto & n : t.names())
            CHECK(rule_amount(n, delta) == t.value(n));
        for (int ell = 12; ell <= delta; ++ell)
            for (auto k : {weak(ell), small(ell, 0), small(ell, 1), iso(ell)})
                CHECK(t.has(k));
        for (int ell = 6; ell <= 11; ++ell)
            for (auto k : {A(ell), B(ell), G(ell)})
                CHECK(t.has(k));
        for (int ell = 5; ell <= 11; ++ell) {
            for (int j = 0; j <= (ell <= 7 ? 5 : 2); ++j) {
                CHECK(t.has(C(ell, j)));
                CHECK(t.has(D(ell, j)));
            }
            CHECK(t.has(E(ell, 0)));
            CHECK(t.has(E(ell, 1)));
        }
    }
}

TEST_CASE("closed forms for large faces")
{
    for (int delta : {16, 17}) {
        auto t = RuleTable::reference(delta);
        for (int ell = 14; ell <= delta; ++ell) {
            Rational base = 1 - make_rational(4, ell);
            CHECK(t.value(weak(ell)) == 2 * base);
            CHECK(t.value(small(ell, 0)) == base);
            CHECK(t.value(iso(ell)) == base);
            CHECK(t.value(small(ell, 0)) == 2 * t.value(small(ell, 1)));
            CHECK(t.value(weak(ell)) == 2 * t.value(iso(ell)));
        }
    }
}

TEST_CASE("negative constants")
{
    auto keys = negative_rule_keys(RuleTable::reference(16));
    std::sort(keys.begin(), keys.end());
    CHECK(keys == std::vector<std::string>{"C_5_0", "C_5_1", "C_5_3", "C_6_0", "D_6_3", "E_5_1", "E_6_1", "E_7_1"});
}

TEST_CASE("triangle classes")
{
    CHECK(classify_triangle(3, 3, 3, false) == TriangleClass::A);
    CHECK(classify_triangle(3, 3, 4, true) == TriangleClass::B);
    CHECK(classify_triangle(3, 3, 4, false) == TriangleClass::C);
    CHECK(classify_triangle(3, 4, 4, true) == TriangleClass::C);
    CHECK(classify_triangle(3, 3, 5, true) == TriangleClass::C);
    int a = 0, b = 0, c = 0;
    for (int d1 = 3; d1 <= 6; ++d1)
        for (int d2 = 3; d2 <= 6; ++d2)
            for (int d3 = 3; d3 <= 6; ++d3)
                for (bool adj : {false, true})
                    switch (classify_triangle(d1, d2, d3, adj)) {
                    case TriangleClass::A: ++a; break;
                    case TriangleClass::B: ++b; break;
                    case TriangleClass::C: ++c; break;
                    }
    CHECK(a == 2);
    CHECK(b == 1);
    CHECK(a + b + c == 4 * 4 * 4 * 2);
}

TEST_CASE("columns")
{
    CHECK(is_column(3, 3, 3, 3, true));
    CHECK_FALSE(is_column(3, 3, 3, 3, false));
    CHECK_FALSE(is_column(3, 3, 4, 3, true));
}

TEST_CASE("endpoint types and sinks")
{
    CHECK(t_value(3, 4) == 1);
    CHECK(t_value(5, 3) == 1);
    CHECK(t_value(4, 7) == 2);
    CHECK(t_value(3, 7) == 2);
    CHECK(t_value(5, 7) == 0);
    CHECK(t_combined(1, 2) == 4);
    CHECK(t_combined(2, 1) == 4);
    CHECK(t_combined(0, 0) == 0);
    CHECK(t_combined(2, 2) == 5);
    CHECK(sink_is_face(4, true));
    CHECK_FALSE(sink_is_face(3, true));
    CHECK_FALSE(sink_is_face(5, true));
    CHECK_FALSE(sink_is_face(4, false));
}

TEST_CASE("amounts sent across shared edges")
{
    auto t = RuleTable::reference(16);
    auto at = [&](auto f) { return f->evaluate(t.values()); };
    CHECK(at(edge_amount(t, 12, SmallFaceKind::a_triangle, {3, 5}, {3, 5})) == make_rational(4, 3));
    CHECK(at(edge_amount(t, 12, SmallFaceKind::quad, {4, 4}, {4, 7})) == make_rational(1, 3) + make_rational(2, 3));
    CHECK_FALSE(edge_amount(t, 5, SmallFaceKind::a_triangle, {3, 5}, {3, 5}));
    CHECK(at(edge_amount(t, 6, SmallFaceKind::c_triangle, {4, 4}, {4, 7})) == t.value(C(6, 4)));
    CHECK(at(edge_amount(t, 9, SmallFaceKind::quad, {4, 4}, {5, 7})) == t.value(D(9, 1)) + t.value(D(9, 0)));
    CHECK(at(isolated_amount(t, 7, 13, 13)) == t.value(E(7, 1)));
    CHECK(at(isolated_amount(t, 7, 12, 13)) == t.value(E(7, 0)));
    CHECK(at(isolated_amount(t, 14, 5, 5)) == make_rational(5, 7));
}

TEST_CASE("table fingerprint")
{
    auto t = RuleTable::reference(16);
    CHECK(t.hash() == RuleTable::reference(16).hash());
    CHECK(t.hash() != RuleTable::reference(17).hash());
    CHECK(t.hash() != t.with_value(weak(12), 2).hash());
    CHECK(t.with_value(weak(12), 2).value(weak(12)) == 2);
}
