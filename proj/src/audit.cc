#include <cyclic/audit.hh>

#include <algorithm>
#include <array>

namespace cyclic
{
    auto AuditReport::merge(const AuditReport & o) -> void
    {
        cases += o.cases;
        discarded += o.discarded;
        for (auto & [k, n] : o.discarded_by)
            discarded_by[k] += n;
        skipped += o.skipped;
        violation_count += o.violation_count;
        violation_count_capped = violation_count_capped || o.violation_count_capped;
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
        std::stable_sort(violations.begin(), violations.end(), [](auto & a, auto & b) { return a.charge < b.charge; });
        if (o.min_charge && (! min_charge || *o.min_charge < *min_charge)) {
            min_charge = o.min_charge;
            min_context = o.min_context;
        }
    }

    namespace
    {
        constexpr std::array<std::pair<AuditFamily, const char *>, 5> family_names{{
            {AuditFamily::small_vertices, "small-vertices"},
            {AuditFamily::big_vertices, "big-vertices"},
            {AuditFamily::small_faces, "small-faces"},
            {AuditFamily::mid_faces, "mid-faces"},
            {AuditFamily::large_faces, "large-faces"},
        }};
    }

    auto to_string(AuditFamily f) -> const char *
    {
        for (auto & [k, n] : family_names)
            if (k == f)
                return n;
        return "?";
    }

    auto parse_family(std::string_view s) -> std::optional<AuditFamily>
    {
        for (auto & [k, n] : family_names)
            if (s == n)
                return k;
        return std::nullopt;
    }

    auto all_families() -> std::vector<AuditFamily>
    {
        std::vector<AuditFamily> out;
        for (auto & [k, n] : family_names)
            out.push_back(k);
        return out;
    }

    auto run_audit(const RuleTable & table, AuditFamily family, const AuditOptions & options) -> std::vector<AuditReport>
    {
        switch (family) {
        case AuditFamily::small_vertices: return {audit_small_vertices(table, options)};
        case AuditFamily::big_vertices: return {audit_big_vertices(table, options)};
        case AuditFamily::small_faces: return {audit_triangle_and_quad_faces(table, 3, options), audit_triangle_and_quad_faces(table, 4, options)};
        case AuditFamily::mid_faces: {
            std::vector<AuditReport> out;
            for (int ell = 5; ell <= 13; ++ell)
                out.push_back(audit_mid_faces(table, ell, options));
            return out;
        }
        case AuditFamily::large_faces: return {audit_large_faces(table, options)};
        }
        return {};
    }
}
