#include <cyclic/plane_graph.hh>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <sstream>

namespace cyclic
{
    auto PlaneGraph::from_rotation(std::vector<std::vector<Vertex>> rotation, bool allow_bridges) -> PlaneGraph
    {
        PlaneGraph g;
        int n = static_cast<int>(rotation.size());
        if (n == 0)
            throw GraphError("graph has no vertices");

        int darts = 0;
        for (int v = 0; v < n; ++v) {
            std::set<Vertex> seen;
            for (auto w : rotation[v]) {
                if (w < 0 || w >= n)
                    throw GraphError("vertex " + std::to_string(v) + " lists out-of-range neighbour " + std::to_string(w));
                if (w == v)
                    throw GraphError("self-loop at vertex " + std::to_string(v));
                if (! seen.insert(w).second)
                    throw GraphError("multi-edge " + std::to_string(v) + "-" + std::to_string(w));
            }
            darts += static_cast<int>(rotation[v].size());
        }
        for (int v = 0; v < n; ++v)
            for (auto w : rotation[v])
                if (std::find(rotation[w].begin(), rotation[w].end(), v) == rotation[w].end())
                    throw GraphError("asymmetric adjacency: " + std::to_string(v) + " lists " + std::to_string(w) + " but not conversely");

        g._rotation = std::move(rotation);
        g._edges = darts / 2;

        // connectivity
        std::vector<bool> reached(n, false);
        std::vector<Vertex> stack{0};
        reached[0] = true;
        int count = 1;
        while (! stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (auto w : g._rotation[v])
                if (! reached[w]) {
                    reached[w] = true;
                    ++count;
                    stack.push_back(w);
                }
        }
        if (count != n)
            throw GraphError("graph is not connected");

        g._dart_face.resize(n);
        for (int v = 0; v < n; ++v)
            g._dart_face[v].assign(g._rotation[v].size(), -1);

        for (int v = 0; v < n; ++v)
            for (std::size_t j = 0; j < g._rotation[v].size(); ++j) {
                if (g._dart_face[v][j] != -1)
                    continue;
                int id = static_cast<int>(g._faces.size());
                std::vector<Vertex> walk;
                Vertex a = v;
                int ai = static_cast<int>(j);
                while (g._dart_face[a][ai] == -1) {
                    g._dart_face[a][ai] = id;
                    walk.push_back(a);
                    Vertex b = g._rotation[a][ai];
                    int back = g.position(b, a);
                    int next = (back + 1) % g.degree(b);
                    a = b;
                    ai = next;
                }
                g._faces.push_back(std::move(walk));
            }

        if (n - g._edges + g.face_count() != 2)
            throw GraphError("Euler check failed: V - E + F = " + std::to_string(n - g._edges + g.face_count()) +
                " (non-planar or mis-ordered rotation)");

        for (auto [u, w] : g.edges())
            if (! allow_bridges && g.dart_face(u, w) == g.dart_face(w, u))
                throw GraphError("bridge " + std::to_string(u) + "-" + std::to_string(w));

        return g;
    }

    auto PlaneGraph::max_face_size() const -> int
    {
        int best = 0;
        for (auto & f : _faces)
            best = std::max(best, static_cast<int>(f.size()));
        return best;
    }

    auto PlaneGraph::position(Vertex v, Vertex w) const -> int
    {
        auto & r = _rotation[v];
        auto it = std::find(r.begin(), r.end(), w);
        if (it == r.end())
            throw GraphError(std::to_string(w) + " is not a neighbour of " + std::to_string(v));
        return static_cast<int>(it - r.begin());
    }

    auto PlaneGraph::adjacent(Vertex v, Vertex w) const -> bool
    {
        auto & r = _rotation[v];
        return std::find(r.begin(), r.end(), w) != r.end();
    }

    auto PlaneGraph::dart_face(Vertex u, Vertex v) const -> int
    {
        return _dart_face[u][position(u, v)];
    }

    auto PlaneGraph::faces_around(Vertex v) const -> std::vector<int>
    {
        std::vector<int> result;
        int d = degree(v);
        for (int j = 0; j < d; ++j)
            result.push_back(_dart_face[v][(j + 1) % d]);
        return result;
    }

    auto PlaneGraph::edges() const -> std::vector<std::pair<Vertex, Vertex>>
    {
        std::vector<std::pair<Vertex, Vertex>> result;
        for (int v = 0; v < vertex_count(); ++v)
            for (auto w : _rotation[v])
                if (v < w)
                    result.emplace_back(v, w);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto PlaneGraph::cyclic_neighbours(Vertex v) const -> std::vector<Vertex>
    {
        std::set<Vertex> seen;
        for (auto f : faces_around(v))
            for (auto w : _faces[f])
                if (w != v)
                    seen.insert(w);
        return {seen.begin(), seen.end()};
    }

    auto parse_graph(std::string_view text) -> PlaneGraph
    {
        std::istringstream in{std::string(text)};
        std::string line;
        int line_no = 0;
        int n = -1;
        auto fail = [&](const std::string & why) -> GraphError {
            return GraphError("line " + std::to_string(line_no) + ": " + why);
        };

        while (n < 0 && std::getline(in, line)) {
            ++line_no;
            if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#')
                continue;
            std::istringstream ls(line);
            if (! (ls >> n) || n <= 0)
                throw fail("expected a positive vertex count");
        }
        if (n < 0)
            throw GraphError("empty graph file");

        std::vector<std::vector<Vertex>> rotation(n);
        std::vector<int> defined_on(n, 0);
        int defined = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#')
                continue;
            auto colon = line.find(':');
            if (colon == std::string::npos)
                throw fail("expected 'v: neighbours'");
            std::istringstream head(line.substr(0, colon));
            int v;
            if (! (head >> v) || v < 0 || v >= n)
                throw fail("bad vertex id");
            if (defined_on[v])
                throw fail("vertex " + std::to_string(v) + " already defined on line " + std::to_string(defined_on[v]));
            defined_on[v] = line_no;
            ++defined;
            std::istringstream rest(line.substr(colon + 1));
            std::string tok;
            while (rest >> tok) {
                std::size_t used = 0;
                int w = -1;
                try {
                    w = std::stoi(tok, &used);
                }
                catch (const std::exception &) {
                    throw fail("bad neighbour '" + tok + "'");
                }
                if (used != tok.size() || w < 0 || w >= n)
                    throw fail("bad neighbour '" + tok + "'");
                rotation[v].push_back(w);
            }
        }
        if (defined != n)
            throw GraphError("expected " + std::to_string(n) + " vertex lines, found " + std::to_string(defined));

        for (int v = 0; v < n; ++v)
            for (auto w : rotation[v])
                if (std::count(rotation[w].begin(), rotation[w].end(), v) != 1) {
                    line_no = defined_on[v];
                    throw fail("asymmetric adjacency: " + std::to_string(v) + " lists " + std::to_string(w) + " but not conversely");
                }

        return PlaneGraph::from_rotation(std::move(rotation));
    }

    auto format_graph(const PlaneGraph & g) -> std::string
    {
        std::ostringstream out;
        out << g.vertex_count() << '\n';
        for (int v = 0; v < g.vertex_count(); ++v) {
            out << v << ':';
            for (auto w : g.rotation(v))
                out << ' ' << w;
            out << '\n';
        }
        return out.str();
    }

    auto cyclic_degree(const PlaneGraph & g, Vertex v) -> int
    {
        return static_cast<int>(g.cyclic_neighbours(v).size());
    }

    namespace
    {
        struct ColoringSearch
        {
            const std::vector<std::vector<Vertex>> & adj;
            int k;
            std::vector<int> colour;
            std::vector<std::uint64_t> forbidden;
            int max_used = 0;

            auto run(int coloured) -> bool
            {
                int n = static_cast<int>(adj.size());
                if (coloured == n)
                    return true;

                // most constrained uncoloured vertex, ties by degree then index
                int best = -1, best_sat = -1, best_deg = -1;
                for (int v = 0; v < n; ++v) {
                    if (colour[v])
                        continue;
                    int sat = std::popcount(forbidden[v]);
                    int deg = static_cast<int>(adj[v].size());
                    if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                        best = v;
                        best_sat = sat;
                        best_deg = deg;
                    }
                }

                int limit = std::min(k, max_used + 1);
                for (int c = 1; c <= limit; ++c) {
                    if (forbidden[best] >> c & 1)
                        continue;
                    colour[best] = c;
                    int saved_max = max_used;
                    max_used = std::max(max_used, c);
                    std::vector<std::uint64_t> saved;
                    saved.reserve(adj[best].size());
                    for (auto w : adj[best]) {
                        saved.push_back(forbidden[w]);
                        forbidden[w] |= std::uint64_t{1} << c;
                    }
                    if (run(coloured + 1))
                        return true;
                    for (std::size_t i = 0; i < adj[best].size(); ++i)
                        forbidden[adj[best][i]] = saved[i];
                    max_used = saved_max;
                    colour[best] = 0;
                }
                return false;
            }
        };
    }

    auto brute_force_cyclic_coloring(const PlaneGraph & g, int k) -> std::optional<Coloring>
    {
        if (k <= 0)
            return std::nullopt;
        if (k > 62)
            throw GraphError("palette too large for the oracle");
        int n = g.vertex_count();
        std::vector<std::vector<Vertex>> adj(n);
        for (int v = 0; v < n; ++v)
            adj[v] = g.cyclic_neighbours(v);

        ColoringSearch search{adj, k, std::vector<int>(n, 0), std::vector<std::uint64_t>(n, 0)};
        if (! search.run(0))
            return std::nullopt;
        return Coloring{std::move(search.colour), k};
    }

    auto cyclic_chromatic_number(const PlaneGraph & g) -> int
    {
        for (int k = 1;; ++k)
            if (brute_force_cyclic_coloring(g, k))
                return k;
    }

    auto check_cyclic_coloring(const PlaneGraph & g, const Coloring & c) -> bool
    {
        if (static_cast<int>(c.colour.size()) != g.vertex_count())
            throw GraphError("colouring is not total");
        for (auto col : c.colour)
            if (col < 1 || col > c.palette_size)
                throw GraphError("colour " + std::to_string(col) + " outside 1.." + std::to_string(c.palette_size));
        for (auto & walk : g.faces()) {
            std::set<Vertex> vertices(walk.begin(), walk.end());
            std::set<int> colours;
            for (auto v : vertices)
                if (! colours.insert(c.colour[v]).second)
                    return false;
        }
        return true;
    }

    auto is_three_connected(const PlaneGraph & g) -> bool
    {
        int n = g.vertex_count();
        if (n < 4)
            return false;
        auto connected_without = [&](Vertex x, Vertex y) {
            std::vector<bool> seen(n, false);
            seen[x] = seen[y] = true;
            Vertex start = 0;
            while (start == x || start == y)
                ++start;
            std::vector<Vertex> stack{start};
            seen[start] = true;
            int count = 3;
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto w : g.rotation(v))
                    if (! seen[w]) {
                        seen[w] = true;
                        ++count;
                        stack.push_back(w);
                    }
            }
            return count == n;
        };
        for (Vertex x = 0; x < n; ++x)
            for (Vertex y = x + 1; y < n; ++y)
                if (! connected_without(x, y))
                    return false;
        return true;
    }
}
