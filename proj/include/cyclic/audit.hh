#pragma once

#include <cyclic/linear_form.hh>
#include <cyclic/rational.hh>
#include <cyclic/rules.hh>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cyclic
{
    /// What is known about the faces around one vertex. When complete is false the sizes are a
    /// contiguous run of the rotation, not the whole of it.
    struct VertexContext
    {
        std::vector<int> sizes;
        bool complete = true;
        bool on_a_triangle = false;

        auto degree() const -> int { return static_cast<int>(sizes.size()); }
    };

    auto cyclic_degree(const VertexContext & c) -> int;

    enum class PatternKind
    {
        cyclic_degree_at_most,
        shared_edge,
        a_triangle_cyclic_degree_at_most
    };

    struct ForbiddenPattern
    {
        std::string name;
        PatternKind kind;
        int a = 0, b = 0;
        std::string note;
    };

    class CatalogError : public std::runtime_error
    {
    public:
        CatalogError(int line, const std::string & what);
        int line;
    };

    /// Reducible configurations usable as local filters, in match order.
    class ForbiddenPatternCatalog
    {
    public:
        static auto parse(std::string_view text) -> ForbiddenPatternCatalog;
        static auto standard() -> ForbiddenPatternCatalog;
        static auto empty() -> ForbiddenPatternCatalog { return {}; }
        static auto standard_text() -> std::string_view;

        auto patterns() const -> const std::vector<ForbiddenPattern> & { return _patterns; }
        auto has(std::string_view name) const -> bool;
        auto without(std::string_view name) const -> ForbiddenPatternCatalog;

    private:
        std::vector<ForbiddenPattern> _patterns;
    };

    auto matches(const ForbiddenPattern & p, const VertexContext & c, int delta) -> bool;
    auto match_forbidden(const VertexContext & c, const ForbiddenPatternCatalog & catalog, int delta)
        -> std::optional<std::string>;

    struct AuditViolation
    {
        std::string family;
        std::string context;
        Rational charge;
    };

    struct AuditReport
    {
        std::string family;
        std::uint64_t cases = 0;
        std::uint64_t discarded = 0;
        std::map<std::string, std::uint64_t> discarded_by;
        /// Cases that need no analysis, or subtrees closed by a non-negative lower bound.
        std::uint64_t skipped = 0;
        std::uint64_t violation_count = 0;
        bool violation_count_capped = false;
        std::vector<AuditViolation> violations;
        std::optional<Rational> min_charge;
        std::string min_context;

        auto ok() const -> bool { return violation_count == 0; }
        auto merge(const AuditReport & o) -> void;
    };

    struct CaseRecord
    {
        std::string family;
        std::string context;
        std::optional<Rational> charge;
        /// "ok", "violation", or the name of the pattern that discarded the case.
        std::string verdict;
    };

    struct AuditOptions
    {
        const ForbiddenPatternCatalog * catalog = nullptr;
        std::size_t max_violations = 200;
        /// Stop enumerating a family after this many violations; zero means never.
        std::uint64_t violation_cap = 100000;
        /// Called for every case, including discarded ones.
        std::function<void(const CaseRecord &)> on_case;
        /// Called once per distinct constraint "form >= 0" a family produces.
        std::function<void(const std::string & family, const std::string & context, const LinearForm & form)> on_constraint;
        /// Face enumerations close a subtree once its charge lower bound reaches this value, so a positive
        /// margin also enumerates near-tight cases for on_constraint.
        Rational margin = 0;
    };

    enum class AuditFamily
    {
        small_vertices,
        big_vertices,
        small_faces,
        mid_faces,
        large_faces
    };

    auto to_string(AuditFamily f) -> const char *;
    auto parse_family(std::string_view s) -> std::optional<AuditFamily>;
    auto all_families() -> std::vector<AuditFamily>;

    auto audit_small_vertices(const RuleTable & table, const AuditOptions & options = {}) -> AuditReport;
    auto audit_big_vertices(const RuleTable & table, const AuditOptions & options = {}) -> AuditReport;
    auto audit_triangle_and_quad_faces(const RuleTable & table, int face_size, const AuditOptions & options = {}) -> AuditReport;
    auto audit_mid_faces(const RuleTable & table, int ell, const AuditOptions & options = {}) -> AuditReport;
    auto audit_large_faces(const RuleTable & table, const AuditOptions & options = {}) -> AuditReport;

    auto run_audit(const RuleTable & table, AuditFamily family, const AuditOptions & options = {}) -> std::vector<AuditReport>;

    /// Final charge of a vertex of the given degree whose faces have these sizes, assuming every
    /// rule whose firing depends on structure beyond those faces fires against the vertex.
    auto vertex_final_charge(const RuleTable & table, std::span<const int> sizes) -> LinearForm;
}
