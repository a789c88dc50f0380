#include "support.hh"

#include <cyclic/audit.hh>
#include <cyclic/discharge.hh>

#include <doctest.h>

using namespace cyclic;
using testing::corpus_graph;

TEST_CASE("initial charges")
{
    auto wheel = corpus_graph("wheel5");
    for (int v = 0; v < wheel.vertex_count(); ++v)
        CHECK(initial_charge(wheel, {Element::Kind::vertex, v}) == wheel.degree(v) - 4);
    for (int f = 0; f < wheel.face_count(); ++f)
        CHECK(initial_charge(wheel, {Element::Kind::face, f}) == wheel.face_size(f) - 4);
    CHECK(initial_charge(wheel, {Element::Kind::edge, 0}) == 0);
    CHECK(initial_ledger(wheel).total() == -8);
}

TEST_CASE("discharging conserves charge and leaves no edge balance")
{
    for (int delta : {16, 17}) {
        auto table = RuleTable::reference(delta);
        for (auto & name : testing::corpus) {
            CAPTURE(name);
            auto g = corpus_graph(name);
            CHECK(initial_ledger(g).total() == -8);
            auto ledger = apply_rules(g, table);
            CHECK(ledger.total() == -8);
            for (auto & e : ledger.edge)
                CHECK(e == 0);
            auto replay = initial_ledger(g);
            for (auto & t : ledger.transfers)
                replay.apply(t);
            CHECK(replay.vertex == ledger.vertex);
            CHECK(replay.face == ledger.face);
        }
    }
}

TEST_CASE("dodecahedron regression")
{
    auto ledger = apply_rules(corpus_graph("dodecahedron"), RuleTable::reference(16));
    for (auto & v : ledger.vertex)
        CHECK(v == make_rational(-4, 7));
    for (auto & f : ledger.face)
        CHECK(f == make_rational(2, 7));
    CHECK(ledger.transfers.size() == 60);
    for (auto & t : ledger.transfers)
        CHECK(t.rule == "E_5_0");
}

TEST_CASE("3-vertices on two 4-faces get half from each")
{
    auto g = corpus_graph("prism5");
    auto ledger = apply_rules(g, RuleTable::reference(16));
    for (int v = 0; v < g.vertex_count(); ++v)
        CHECK(ledger.vertex[v] == 0);
    int halves = 0;
    for (auto & t : ledger.transfers)
        if (t.target.kind == Element::Kind::vertex) {
            CHECK(t.amount == make_rational(1, 2));
            CHECK(g.face_size(t.source.index) == 4);
            ++halves;
        }
    CHECK(halves == 20);
}

TEST_CASE("the vertex audit's charge model never exceeds a concrete vertex charge")
{
    auto table = RuleTable::reference(16);
    for (auto & name : testing::corpus) {
        CAPTURE(name);
        auto g = corpus_graph(name);
        auto ledger = apply_rules(g, table);
        for (int v = 0; v < g.vertex_count(); ++v) {
            std::vector<int> sizes;
            for (int f : g.faces_around(v))
                sizes.push_back(g.face_size(f));
            CHECK(vertex_final_charge(table, sizes).evaluate(table.values()) <= ledger.vertex[v]);
        }
    }
}
