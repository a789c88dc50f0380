#include <cyclic/linear_form.hh>
#include <cyclic/rules.hh>

#include <algorithm>

namespace cyclic
{
    auto LinearForm::variable(int id, Rational coefficient) -> LinearForm
    {
        LinearForm f;
        if (coefficient != 0)
            f._terms.emplace_back(id, std::move(coefficient));
        return f;
    }

    auto LinearForm::coefficient(int id) const -> Rational
    {
        auto it = std::lower_bound(_terms.begin(), _terms.end(), id, [](const auto & t, int v) { return t.first < v; });
        return it != _terms.end() && it->first == id ? it->second : Rational(0);
    }

    auto LinearForm::add_scaled(const LinearForm & o, const Rational & k) -> void
    {
        _constant += k * o._constant;
        if (o._terms.empty())
            return;
        std::vector<std::pair<int, Rational>> merged;
        merged.reserve(_terms.size() + o._terms.size());
        auto a = _terms.begin();
        auto b = o._terms.begin();
        while (a != _terms.end() || b != o._terms.end()) {
            if (b == o._terms.end() || (a != _terms.end() && a->first < b->first))
                merged.push_back(*a++);
            else if (a == _terms.end() || b->first < a->first) {
                merged.emplace_back(b->first, k * b->second);
                ++b;
            }
            else {
                Rational c = a->second + k * b->second;
                if (c != 0)
                    merged.emplace_back(a->first, c);
                ++a;
                ++b;
            }
        }
        _terms = std::move(merged);
    }

    auto LinearForm::operator+=(const LinearForm & o) -> LinearForm &
    {
        add_scaled(o, 1);
        return *this;
    }

    auto LinearForm::operator-=(const LinearForm & o) -> LinearForm &
    {
        add_scaled(o, -1);
        return *this;
    }

    auto LinearForm::operator*=(const Rational & k) -> LinearForm &
    {
        if (k == 0) {
            _terms.clear();
            _constant = 0;
            return *this;
        }
        _constant *= k;
        for (auto & t : _terms)
            t.second *= k;
        return *this;
    }

    auto LinearForm::operator<(const LinearForm & o) const -> bool
    {
        if (_constant != o._constant)
            return _constant < o._constant;
        return _terms < o._terms;
    }

    auto LinearForm::evaluate(const std::vector<Rational> & values) const -> Rational
    {
        Rational v = _constant;
        for (auto & [id, c] : _terms)
            v += c * values.at(id);
        return v;
    }

    auto LinearForm::to_string(const RuleTable & table) const -> std::string
    {
        std::string out;
        for (auto & [id, c] : _terms) {
            bool neg = c < 0;
            Rational mag = neg ? Rational(-c) : c;
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            if (mag != 1)
                out += cyclic::to_string(mag) + " ";
            out += table.name(id);
        }
        if (_constant != 0 || out.empty()) {
            bool neg = _constant < 0;
            Rational mag = neg ? Rational(-_constant) : _constant;
            out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            out += cyclic::to_string(mag);
        }
        return out;
    }
}
