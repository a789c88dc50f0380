#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyclic
{
    using Vertex = int;

    class GraphError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// A simple connected plane graph given by a rotation system.
    ///
    /// rotation(v) lists the neighbours of v in clockwise order. Faces are traced
    /// by the rule next(u->v) = v->succ_v(u), so the corner of v between rotation
    /// positions j and j+1 belongs to the face of the dart v->rotation(v)[j+1].
    class PlaneGraph
    {
    public:
        /// Bridges are rejected unless allow_bridges is set (used only for oracle-scale gate tests).
        static auto from_rotation(std::vector<std::vector<Vertex>> rotation, bool allow_bridges = false) -> PlaneGraph;

        auto vertex_count() const -> int { return static_cast<int>(_rotation.size()); }
        auto edge_count() const -> int { return _edges; }
        auto face_count() const -> int { return static_cast<int>(_faces.size()); }
        auto degree(Vertex v) const -> int { return static_cast<int>(_rotation[v].size()); }
        auto rotation(Vertex v) const -> const std::vector<Vertex> & { return _rotation[v]; }

        auto faces() const -> const std::vector<std::vector<Vertex>> & { return _faces; }
        auto face(int f) const -> const std::vector<Vertex> & { return _faces[f]; }
        auto face_size(int f) const -> int { return static_cast<int>(_faces[f].size()); }
        auto max_face_size() const -> int;

        /// Position of w in rotation(v); throws if w is not a neighbour.
        auto position(Vertex v, Vertex w) const -> int;
        auto adjacent(Vertex v, Vertex w) const -> bool;

        /// Face containing the dart u->v.
        auto dart_face(Vertex u, Vertex v) const -> int;
        /// Faces around v in rotation order: entry j is the corner between rotation(v)[j] and rotation(v)[j+1].
        auto faces_around(Vertex v) const -> std::vector<int>;

        /// All edges as (u, v) with u < v, in lexicographic order.
        auto edges() const -> std::vector<std::pair<Vertex, Vertex>>;

        /// Vertex sets of faces incident with v, as a sorted list of distinct vertices other than v.
        auto cyclic_neighbours(Vertex v) const -> std::vector<Vertex>;

    private:
        std::vector<std::vector<Vertex>> _rotation;
        std::vector<std::vector<int>> _dart_face;
        std::vector<std::vector<Vertex>> _faces;
        int _edges = 0;
    };

    /// Parses "n" followed by n lines "v: w1 w2 ... wd" (vertices 0..n-1, clockwise order).
    /// Errors carry the offending line number.
    auto parse_graph(std::string_view text) -> PlaneGraph;
    auto format_graph(const PlaneGraph & g) -> std::string;

    struct Coloring
    {
        std::vector<int> colour; // colour[v] in 1..palette_size
        int palette_size = 0;
    };

    auto cyclic_degree(const PlaneGraph & g, Vertex v) -> int;

    /// Backtracking over the cyclic-adjacency graph with most-constrained-first ordering and
    /// colour symmetry breaking. Returns a cyclic colouring using at most k colours, if one exists.
    auto brute_force_cyclic_coloring(const PlaneGraph & g, int k) -> std::optional<Coloring>;

    /// Smallest k admitting a cyclic colouring.
    auto cyclic_chromatic_number(const PlaneGraph & g) -> int;

    /// Throws GraphError if c is not total on g or uses colours outside 1..palette_size.
    auto check_cyclic_coloring(const PlaneGraph & g, const Coloring & c) -> bool;

    auto is_three_connected(const PlaneGraph & g) -> bool;
}
