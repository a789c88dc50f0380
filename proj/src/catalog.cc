#include <cyclic/audit.hh>

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cyclic
{
    namespace
    {
        // Keep in step with data/catalog/standard.catalog; a test compares the two.
        constexpr std::string_view standard_catalog = R"(# name      kind                              args
# A vertex whose cyclic degree is at most Delta*+1.
DEG         cyclic-degree-at-most             1
# A 3-face and a (<=4)-face sharing an edge.
TFEDGE      shared-edge                       3 4
# A 3-vertex of an A-triangle whose cyclic degree is at most Delta*+2.
TRIANGLE0   a-triangle-cyclic-degree-at-most  2
)";
    }

    CatalogError::CatalogError(int l, const std::string & what) :
        std::runtime_error("line " + std::to_string(l) + ": " + what),
        line(l)
    {
    }

    auto cyclic_degree(const VertexContext & c) -> int
    {
        return std::accumulate(c.sizes.begin(), c.sizes.end(), 0) - 2 * c.degree();
    }

    auto ForbiddenPatternCatalog::standard_text() -> std::string_view { return standard_catalog; }

    auto ForbiddenPatternCatalog::standard() -> ForbiddenPatternCatalog { return parse(standard_catalog); }

    auto ForbiddenPatternCatalog::parse(std::string_view text) -> ForbiddenPatternCatalog
    {
        ForbiddenPatternCatalog catalog;
        std::istringstream in{std::string(text)};
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            ++number;
            std::string note;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream words(line);
            ForbiddenPattern p;
            std::string kind;
            if (! (words >> p.name))
                continue;
            if (! (words >> kind))
                throw CatalogError(number, "missing pattern kind");
            int args = 1;
            if (kind == "cyclic-degree-at-most")
                p.kind = PatternKind::cyclic_degree_at_most;
            else if (kind == "shared-edge") {
                p.kind = PatternKind::shared_edge;
                args = 2;
            }
            else if (kind == "a-triangle-cyclic-degree-at-most")
                p.kind = PatternKind::a_triangle_cyclic_degree_at_most;
            else
                throw CatalogError(number, "unknown pattern kind '" + kind + "'");
            if (! (words >> p.a) || (args == 2 && ! (words >> p.b)))
                throw CatalogError(number, "missing arguments for " + kind);
            std::string extra;
            if (words >> extra)
                throw CatalogError(number, "trailing content '" + extra + "'");
            if (catalog.has(p.name))
                throw CatalogError(number, "duplicate pattern " + p.name);
            p.note = kind;
            catalog._patterns.push_back(std::move(p));
        }
        return catalog;
    }

    auto ForbiddenPatternCatalog::has(std::string_view name) const -> bool
    {
        return std::any_of(_patterns.begin(), _patterns.end(), [&](auto & p) { return p.name == name; });
    }

    auto ForbiddenPatternCatalog::without(std::string_view name) const -> ForbiddenPatternCatalog
    {
        ForbiddenPatternCatalog c;
        for (auto & p : _patterns)
            if (p.name != name)
                c._patterns.push_back(p);
        return c;
    }

    auto matches(const ForbiddenPattern & p, const VertexContext & c, int delta) -> bool
    {
        switch (p.kind) {
        case PatternKind::cyclic_degree_at_most: return c.complete && cyclic_degree(c) <= delta + p.a;
        case PatternKind::a_triangle_cyclic_degree_at_most:
            return c.complete && c.on_a_triangle && cyclic_degree(c) <= delta + p.a;
        case PatternKind::shared_edge: {
            int n = c.degree();
            // consecutive faces around a vertex share the edge between them
            int pairs = c.complete ? n : n - 1;
            if (c.complete && n < 2)
                pairs = 0;
            for (int i = 0; i < pairs; ++i) {
                int x = c.sizes[i], y = c.sizes[(i + 1) % n];
                if (std::min(x, y) <= p.a && std::max(x, y) <= p.b)
                    return true;
            }
            return false;
        }
        }
        return false;
    }

    auto match_forbidden(const VertexContext & c, const ForbiddenPatternCatalog & catalog, int delta) -> std::optional<std::string>
    {
        for (auto & p : catalog.patterns())
            if (matches(p, c, delta))
                return p.name;
        return std::nullopt;
    }
}
