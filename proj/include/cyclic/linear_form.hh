#pragma once

#include <cyclic/rational.hh>

#include <string>
#include <utility>
#include <vector>

namespace cyclic
{
    class RuleTable;

    /// constant + sum of coefficient * rule variable, with variables sorted by id.
    class LinearForm
    {
    public:
        LinearForm() = default;
        explicit LinearForm(Rational constant) : _constant(std::move(constant)) {}

        static auto variable(int id, Rational coefficient = 1) -> LinearForm;

        auto constant() const -> const Rational & { return _constant; }
        auto terms() const -> const std::vector<std::pair<int, Rational>> & { return _terms; }
        auto is_constant() const -> bool { return _terms.empty(); }
        auto coefficient(int id) const -> Rational;

        auto operator+=(const LinearForm & o) -> LinearForm &;
        auto operator-=(const LinearForm & o) -> LinearForm &;
        auto operator*=(const Rational & k) -> LinearForm &;

        friend auto operator+(LinearForm a, const LinearForm & b) -> LinearForm { return a += b; }
        friend auto operator-(LinearForm a, const LinearForm & b) -> LinearForm { return a -= b; }
        friend auto operator-(LinearForm a) -> LinearForm { return a *= Rational(-1); }
        friend auto operator*(const Rational & k, LinearForm a) -> LinearForm { return a *= k; }

        auto operator==(const LinearForm & o) const -> bool { return _constant == o._constant && _terms == o._terms; }
        auto operator<(const LinearForm & o) const -> bool;

        /// Value with every variable replaced by values[id].
        auto evaluate(const std::vector<Rational> & values) const -> Rational;

        auto to_string(const RuleTable & table) const -> std::string;

    private:
        Rational _constant = 0;
        std::vector<std::pair<int, Rational>> _terms;

        auto add_scaled(const LinearForm & o, const Rational & k) -> void;
    };
}
