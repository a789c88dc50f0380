#include <cyclic/lp.hh>

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace cyclic;

namespace
{
    auto constraint(LinearProgram & lp, std::vector<std::pair<std::string, long>> terms, Relation r, long bound)
        -> Constraint
    {
        Constraint c;
        for (auto & [name, k] : terms)
            c.coefficients.emplace_back(lp.variable(name), Rational(k));
        std::sort(c.coefficients.begin(), c.coefficients.end());
        c.relation = r;
        c.bound = bound;
        c.provenance = "test";
        return c;
    }

    auto add(LinearProgram & lp, std::vector<std::pair<std::string, long>> terms, Relation r, long bound) -> bool
    {
        return lp.add(constraint(lp, std::move(terms), r, bound));
    }

    auto random_program(std::mt19937 & rng) -> LinearProgram
    {
        LinearProgram lp;
        std::uniform_int_distribution<long> coef(-3, 3), bound(-4, 4), rel(0, 5);
        std::uniform_int_distribution<int> rows(2, 7);
        const std::vector<std::string> names{"x", "y", "z"};
        for (auto & n : names)
            lp.variable(n);
        int m = rows(rng);
        for (int i = 0; i < m; ++i) {
            std::vector<std::pair<std::string, long>> terms;
            for (auto & n : names)
                if (long k = coef(rng); k != 0)
                    terms.emplace_back(n, k);
            if (terms.empty())
                continue;
            int r = rel(rng);
            add(lp, terms, r < 3 ? Relation::ge : r < 5 ? Relation::le : Relation::eq, bound(rng));
        }
        return lp;
    }

    auto feasible(const LinearProgram & lp) -> bool { return solve_feasible(lp).feasible; }

    auto all_indices(const LinearProgram & lp) -> std::vector<std::size_t>
    {
        std::vector<std::size_t> v(lp.constraints().size());
        std::iota(v.begin(), v.end(), 0);
        return v;
    }
}

TEST_CASE("an interval is feasible and its point checks")
{
    LinearProgram lp;
    add(lp, {{"x", 1}}, Relation::ge, 1);
    add(lp, {{"x", 1}}, Relation::le, 2);
    auto s = solve_feasible(lp);
    REQUIRE(s.feasible);
    CHECK(s.point.at("x") >= 1);
    CHECK(s.point.at("x") <= 2);
    CHECK(check_point(lp, s.point).empty());
}

TEST_CASE("an empty interval is infeasible with a certificate")
{
    LinearProgram lp;
    add(lp, {{"x", 1}}, Relation::ge, 1);
    add(lp, {{"x", 1}}, Relation::le, 0);
    auto s = solve_feasible(lp);
    REQUIRE_FALSE(s.feasible);
    CHECK(verify_certificate(lp, s.certificate));
    CHECK_FALSE(verify_certificate(lp, {Rational(1), Rational(0)}));
    CHECK_FALSE(verify_certificate(lp, {Rational(0), Rational(0)}));
}

TEST_CASE("the core drops constraints that do not matter")
{
    LinearProgram lp;
    add(lp, {{"x", 1}}, Relation::ge, 1);
    add(lp, {{"x", 1}}, Relation::le, 0);
    add(lp, {{"y", 1}}, Relation::ge, 0);
    auto core = infeasible_core(lp);
    CHECK(core == std::vector<std::size_t>{0, 1});
    auto sub = lp.subset(core);
    CHECK_FALSE(feasible(sub));
    for (std::size_t drop = 0; drop < core.size(); ++drop) {
        auto keep = core;
        keep.erase(keep.begin() + static_cast<long>(drop));
        CHECK(feasible(lp.subset(keep)));
    }
}

TEST_CASE("the core of a feasible program is an error")
{
    LinearProgram lp;
    add(lp, {{"x", 1}}, Relation::ge, 1);
    CHECK_THROWS_AS(infeasible_core(lp), std::invalid_argument);
}

TEST_CASE("equalities propagate")
{
    LinearProgram lp;
    add(lp, {{"x", 1}, {"y", 1}}, Relation::eq, 3);
    add(lp, {{"x", 1}, {"y", -1}}, Relation::eq, 1);
    auto s = solve_feasible(lp);
    REQUIRE(s.feasible);
    CHECK(s.point.at("x") == 2);
    CHECK(s.point.at("y") == 1);
    add(lp, {{"y", 1}}, Relation::ge, 2);
    auto t = solve_feasible(lp);
    REQUIRE_FALSE(t.feasible);
    CHECK(verify_certificate(lp, t.certificate));
}

TEST_CASE("variables are free in sign")
{
    LinearProgram lp;
    add(lp, {{"x", 1}}, Relation::le, -5);
    auto s = solve_feasible(lp);
    REQUIRE(s.feasible);
    CHECK(s.point.at("x") <= -5);
}

TEST_CASE("adding a duplicate keeps the tighter bound")
{
    LinearProgram lp;
    CHECK(add(lp, {{"x", 1}}, Relation::ge, 1));
    CHECK_FALSE(add(lp, {{"x", 2}}, Relation::ge, 2));
    CHECK(lp.constraints().size() == 1);
    CHECK(add(lp, {{"x", 3}}, Relation::ge, 9));
    CHECK(lp.constraints().size() == 1);
    CHECK(check_point(lp, {{"x", Rational(2)}}).size() == 1);
    CHECK(check_point(lp, {{"x", Rational(3)}}).empty());
    CHECK(add(lp, {{"x", 1}}, Relation::le, 4));
    CHECK(lp.constraints().size() == 2);
}

TEST_CASE("checking a point without a value for every variable is an error")
{
    LinearProgram lp;
    add(lp, {{"x", 1}, {"y", 1}}, Relation::ge, 1);
    CHECK_THROWS_AS(check_point(lp, {{"x", Rational(1)}}), std::invalid_argument);
}

TEST_CASE("random programs: points check, certificates verify, cores are minimal")
{
    std::mt19937 rng(20261014);
    int feasible_count = 0, infeasible_count = 0;
    for (int trial = 0; trial < 300; ++trial) {
        CAPTURE(trial);
        auto lp = random_program(rng);
        auto s = solve_feasible(lp);
        if (s.feasible) {
            ++feasible_count;
            CHECK(check_point(lp, s.point).empty());
            continue;
        }
        ++infeasible_count;
        CHECK(verify_certificate(lp, s.certificate));
        auto core = infeasible_core(lp);
        CHECK_FALSE(feasible(lp.subset(core)));
        for (std::size_t drop = 0; drop < core.size(); ++drop) {
            auto keep = core;
            keep.erase(keep.begin() + static_cast<long>(drop));
            CHECK(feasible(lp.subset(keep)));
        }
    }
    CHECK(feasible_count > 20);
    CHECK(infeasible_count > 20);
}

TEST_CASE("text export round-trips")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    for (int trial = 0; trial < 50; ++trial) {
        auto lp = random_program(rng);
        // fractional coefficients exercise the integer scaling
        LinearProgram scaled;
        for (auto & c : lp.constraints()) {
            Constraint d = c;
            for (auto & [v, k] : d.coefficients) {
                v = scaled.variable(lp.variables()[v]);
                k /= Rational(den(rng));
            }
            d.bound /= Rational(den(rng));
            d.provenance = "case " + std::to_string(trial);
            scaled.add(d);
        }
        scaled.notes.push_back("a note");
        auto text = write_lp_format(scaled);
        auto back = read_lp_format(text, scaled.variables());
        REQUIRE(back.constraints().size() == scaled.constraints().size());
        CHECK(back.notes == scaled.notes);
        for (std::size_t i = 0; i < back.constraints().size(); ++i)
            CHECK(back.constraints()[i].provenance == scaled.constraints()[i].provenance);
        for (int p = 0; p < 20; ++p) {
            Assignment a;
            for (auto & n : scaled.variables())
                a[n] = Rational(num(rng), den(rng));
            for (auto & n : back.variables())
                a.try_emplace(n, 0);
            CHECK(check_point(scaled, a) == check_point(back, a));
        }
    }
}

TEST_CASE("export names are lp identifiers")
{
    CHECK(lp_name("weak_12") == "r_weak_12");
    CHECK(lp_name("face-3") == "r_facem3");
}

TEST_CASE("rounding finds small fractions")
{
    CHECK(round_to_rational(0.3333333, 100) == Rational(1, 3));
    CHECK(round_to_rational(-2.5, 10) == Rational(-5, 2));
    CHECK(round_to_rational(3.14159265, 120) == Rational(355, 113));
    CHECK(round_to_rational(7.0, 5) == 7);
    CHECK(round_to_rational(0.0, 5) == 0);
}

TEST_CASE("generated vertex constraints hold at the reference constants")
{
    auto table = RuleTable::reference(16);
    auto catalog = ForbiddenPatternCatalog::standard();
    GenerateOptions options;
    options.catalog = &catalog;
    options.families = {AuditFamily::big_vertices, AuditFamily::large_faces};
    auto lp = generate_constraints(table, options);
    CHECK(lp.constraints().size() > 0);
    CHECK(lp.notes.empty());
    CHECK(check_point(lp, table_point(table)).empty());
    auto doubled = table_point(table);
    for (auto & [key, value] : doubled)
        value *= 4;
    CHECK_FALSE(check_point(lp, doubled).empty());
}

TEST_CASE("a larger weak_12 breaks twelve-faces")
{
    auto table = RuleTable::reference(16).with_value(rule_keys::weak(12), Rational(2));
    auto catalog = ForbiddenPatternCatalog::standard();
    GenerateOptions options;
    options.catalog = &catalog;
    options.families = {AuditFamily::mid_faces};
    options.violation_cap = 50;
    auto lp = generate_constraints(table, options);
    auto bad = check_point(lp, table_point(table));
    CHECK_FALSE(bad.empty());
    bool twelve = false;
    for (auto i : bad)
        twelve |= lp.constraints()[i].provenance.find("face=12") != std::string::npos;
    CHECK(twelve);
}
