#include "support.hh"

#include <cyclic/reducibility.hh>

#include <doctest.h>

#include <numeric>
#include <random>

using namespace cyclic;

namespace
{
    auto eight0() -> ReductionPair { return parse_reduction_file(testing::data_file("configs/eight0.conf")); }

    auto letters_only(const std::string & letters) -> ReductionPair
    {
        std::string block = "1 1\n0 " + letters + " 1\n";
        return parse_reduction_file(block + block);
    }

    auto count(const ReductionPair & p, int delta) -> long long
    {
        return enumerate_scenarios(p, delta, [](auto &) { return true; });
    }

    /// Set partitions of n elements into at most k blocks.
    auto bell_capped(int n, int k) -> long long
    {
        std::vector<std::vector<long long>> s(n + 1, std::vector<long long>(n + 1));
        s[0][0] = 1;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= i; ++j)
                s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
        long long total = 0;
        for (int j = 0; j <= std::min(n, k); ++j)
            total += s[n][j];
        return total;
    }

    auto colours_of(ColourSet s) -> std::vector<int>
    {
        std::vector<int> out;
        for (int c = 1; c <= max_palette; ++c)
            if (s >> c & 1)
                out.push_back(c);
        return out;
    }
}

TEST_CASE("face footprints")
{
    auto pair = eight0();
    BoundaryScenario s;
    s.delta = 16;
    s.letter_colours = {{'a', 1}, {'b', 2}};
    CHECK(colours_of(face_color_footprint(pair, pair.reduced, s, pair.reduced.faces[4], {})) == std::vector<int>{1, 2});

    auto plain = parse_reduction_file("1 1\n16-18 - 1\n1 1\n1 - 1\n");
    BoundaryScenario empty;
    empty.delta = 16;
    empty.hidden[1] = {0, 0};
    CHECK(face_color_footprint(plain, plain.reduced, empty, plain.reduced.faces[0], {}) == 0);

    empty.hidden[1] = {2, (1u << 9) | (1u << 10)};
    CHECK(colours_of(face_color_footprint(plain, plain.reduced, empty, plain.reduced.faces[0], {{1, 7}})) == std::vector<int>{7, 9, 10});
}

TEST_CASE("extension of a single internal vertex")
{
    auto pair = parse_reduction_file("1 1\n0-18 - 1\n1 1\n1 - 1\n");
    BoundaryScenario s;
    s.delta = 16;
    s.hidden[1] = {17, 0};
    for (int c = 2; c <= 18; ++c)
        s.hidden[1].colours |= 1u << c;
    CHECK(extends(pair, pair.reduced, s));
    s.hidden[1].colours |= 1u << 1;
    s.hidden[1].count = 18;
    CHECK_FALSE(extends(pair, pair.reduced, s));
}

TEST_CASE("letter-only scenario counts are capped Bell numbers")
{
    CHECK(count(letters_only("ab"), 16) == 2);
    CHECK(count(letters_only("abc"), 16) == 5);
    CHECK(count(letters_only("abcd"), 16) == bell_capped(4, 18));
    CHECK(count(letters_only("abcde"), 1) == bell_capped(5, 3));
    CHECK(count(letters_only("abcd"), 1) == bell_capped(4, 3));
}

TEST_CASE("a pair whose blocks coincide is reducible")
{
    CHECK(check_reducible(letters_only("abc"), 16).reducible);
    auto same = parse_reduction_file("2 2\n15-17 a 1,2\n0 ab 1,2\n2 2\n1 a 1,2\n0 ab 1,2\n");
    REQUIRE(validate(same, 16).empty());
    auto v = check_reducible(same, 16);
    CHECK(v.reducible);
    CHECK(v.scenarios > 0);
}

TEST_CASE("extends is invariant under palette permutations")
{
    auto pair = eight0();
    std::mt19937 rng(7);
    int checked = 0;
    enumerate_scenarios(pair, 16, [&](const BoundaryScenario & s) {
        if (rng() % 4000 != 0)
            return true;
        std::vector<int> perm(19);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        auto t = s;
        for (auto & [l, c] : t.letter_colours)
            c = perm[c];
        for (auto & [f, h] : t.hidden) {
            ColourSet moved = 0;
            for (int c : colours_of(h.colours))
                moved |= 1u << perm[c];
            h.colours = moved;
        }
        CHECK(extends(pair, pair.reduced, s) == extends(pair, pair.reduced, t));
        CHECK(extends(pair, pair.original, s) == extends(pair, pair.original, t));
        return ++checked < 25;
    });
    CHECK(checked > 0);
}

TEST_CASE("weakening the reduced block yields a replayable witness")
{
    auto pair = eight0();
    pair.reduced.faces.pop_back();
    pair.reduced.m = 4;
    auto v = check_reducible(pair, 16);
    REQUIRE_FALSE(v.reducible);
    REQUIRE(v.witness);
    CHECK(extends(pair, pair.reduced, *v.witness));
    CHECK_FALSE(extends(pair, pair.original, *v.witness));
}

namespace
{
    /// Tries every colouring of the internal vertices.
    auto naive_extends(const ConfigurationBlock & block, const BoundaryScenario & s) -> bool
    {
        int palette = s.palette();
        std::vector<int> colour(block.n + 1, 1);
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; i < block.faces.size() && ok; ++i) {
                auto & f = block.faces[i];
                std::vector<int> seen;
                for (char l : f.letters())
                    seen.push_back(s.letter_colours.at(l));
                int key = f.kind == FaceKind::unbounded_orig ? f.ref : static_cast<int>(i) + 1;
                if (f.kind != FaceKind::bounded)
                    for (int c : colours_of(s.hidden.at(key).colours))
                        seen.push_back(c);
                for (int v : f.internals())
                    seen.push_back(colour[v]);
                std::sort(seen.begin(), seen.end());
                ok = std::adjacent_find(seen.begin(), seen.end()) == seen.end();
            }
            if (ok)
                return true;
            int v = 1;
            while (v <= block.n && colour[v] == palette)
                colour[v++] = 1;
            if (v > block.n)
                return false;
            ++colour[v];
        }
    }
}

TEST_CASE("extends agrees with exhaustive assignment on a small pair")
{
    auto pair = parse_reduction_file("3 3\n14-16 a 1,2\n15-16 b 2,3\n0 ab 1,3\n3 3\n1 a 1,2\n2 b 2,3\n0 ab 1,2,3\n");
    REQUIRE(validate(pair, 16).empty());
    int agree = 0, extendable = 0;
    enumerate_scenarios(pair, 16, [&](const BoundaryScenario & s) {
        bool r = extends(pair, pair.reduced, s);
        CHECK(r == naive_extends(pair.reduced, s));
        CHECK(extends(pair, pair.original, s) == naive_extends(pair.original, s));
        extendable += r;
        return ++agree < 200;
    });
    CHECK(agree > 10);
}

TEST_CASE("deleting an original face keeps a reducible pair reducible")
{
    auto pair = parse_reduction_file("2 2\n15-17 a 1,2\n0 ab 1,2\n2 2\n1 a 1,2\n0 ab 1,2\n");
    REQUIRE(check_reducible(pair, 16).reducible);
    pair.original.faces.pop_back();
    pair.original.m = 1;
    CHECK(check_reducible(pair, 16).reducible);
}
