#pragma once

#include <cyclic/plane_graph.hh>
#include <cyclic/rules.hh>

#include <string>
#include <vector>

namespace cyclic
{
    struct Element
    {
        enum class Kind
        {
            vertex,
            edge,
            face
        };
        Kind kind;
        int index;

        auto operator==(const Element &) const -> bool = default;
        auto operator<(const Element & o) const -> bool { return kind != o.kind ? kind < o.kind : index < o.index; }
    };

    auto to_string(const Element & e) -> std::string;

    struct Transfer
    {
        std::string rule;
        Rational amount;
        Element source, target;
    };

    /// Charges of every vertex, edge (indexed as in PlaneGraph::edges()) and face, plus the transfer log.
    struct ChargeLedger
    {
        std::vector<Rational> vertex, edge, face;
        std::vector<Transfer> transfers;

        auto total() const -> Rational;
        auto charge(const Element & e) -> Rational &;
        auto apply(Transfer t) -> void;
    };

    /// deg - 4 for vertices, |f| - 4 for faces.
    auto initial_charge(const PlaneGraph & g, const Element & e) -> Rational;
    auto initial_ledger(const PlaneGraph & g) -> ChargeLedger;

    /// Applies every discharging rule to a concrete plane graph for the given maximum face size parameter.
    auto apply_rules(const PlaneGraph & g, const RuleTable & table) -> ChargeLedger;
}
