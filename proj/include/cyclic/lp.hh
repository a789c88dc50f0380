#pragma once

#include <cyclic/audit.hh>
#include <cyclic/rational.hh>
#include <cyclic/rules.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclic
{
    enum class Relation
    {
        ge,
        le,
        eq
    };

    auto to_string(Relation r) -> const char *;

    /// sum of coefficient * variable, related to bound.
    struct Constraint
    {
        std::vector<std::pair<int, Rational>> coefficients;  // sorted by variable index, no zeros
        Relation relation = Relation::ge;
        Rational bound = 0;
        std::string provenance;
    };

    class LinearProgram
    {
    public:
        auto variables() const -> const std::vector<std::string> & { return _variables; }
        auto constraints() const -> const std::vector<Constraint> & { return _constraints; }
        auto variable(std::string_view name) -> int;
        auto find(std::string_view name) const -> std::optional<int>;

        /// Adds the constraint unless an equivalent one (same normalized coefficients and relation) is
        /// present; a tighter bound replaces a looser one. Returns whether the program changed.
        auto add(Constraint c) -> bool;

        /// The program restricted to the given constraint indices, in that order.
        auto subset(const std::vector<std::size_t> & keep) const -> LinearProgram;

        auto describe(std::size_t index) const -> std::string;

        /// Free-form remarks carried into exports, e.g. which families were truncated.
        std::vector<std::string> notes;

    private:
        std::vector<std::string> _variables;
        std::map<std::string, int, std::less<>> _index;
        std::vector<Constraint> _constraints;
        std::map<std::pair<std::vector<std::pair<int, Rational>>, Relation>, std::size_t> _seen;
    };

    using Assignment = std::map<std::string, Rational, std::less<>>;

    /// The rule table's own constants, by rule key.
    auto table_point(const RuleTable & table) -> Assignment;

    struct GenerateOptions
    {
        std::vector<AuditFamily> families = all_families();
        const ForbiddenPatternCatalog * catalog = nullptr;
        /// Face families emit a case once its charge at the table's constants is below this.
        Rational margin = 0;
        /// Stop a family after this many violating cases; zero means never. A family that stops is
        /// already infeasible at the table's constants, and is named in the program's notes.
        std::uint64_t violation_cap = 20000;
    };

    /// One constraint "final charge >= 0" per distinct case form of the selected audit families.
    auto generate_constraints(const RuleTable & table, const GenerateOptions & options = {}) -> LinearProgram;

    /// Indices of the constraints the point violates. Throws std::invalid_argument when a variable has no value.
    auto check_point(const LinearProgram & lp, const Assignment & a) -> std::vector<std::size_t>;

    struct SolveResult
    {
        bool feasible = false;
        Assignment point;
        /// When infeasible: a multiplier per constraint, non-negative for inequalities read as ">=",
        /// whose combination has all variable coefficients zero and a positive bound.
        std::vector<Rational> certificate;
        std::size_t pivots = 0;
    };

    auto solve_feasible(const LinearProgram & lp) -> SolveResult;

    /// Whether the multipliers prove infeasibility: 0 >= positive after combination.
    auto verify_certificate(const LinearProgram & lp, const std::vector<Rational> & multipliers) -> bool;

    /// A subset-minimal infeasible set of constraint indices by deletion filtering.
    /// Throws std::invalid_argument when the program is feasible.
    auto infeasible_core(const LinearProgram & lp) -> std::vector<std::size_t>;

    /// CPLEX LP text. Each constraint is scaled to integer coefficients, so the export is exact.
    auto write_lp_format(const LinearProgram & lp) -> std::string;
    /// Reads the subset of the format write_lp_format produces. Names map back through known when given.
    auto read_lp_format(std::string_view text, const std::vector<std::string> & known = {}) -> LinearProgram;
    auto lp_name(std::string_view key) -> std::string;

    /// Closest fraction with denominator at most max_denominator.
    auto round_to_rational(double x, long max_denominator) -> Rational;
}
