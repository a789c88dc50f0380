#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyclic
{
    /// A vertex named on a face line: an internal vertex 1..n or a lettered boundary vertex.
    struct VertexToken
    {
        enum class Kind
        {
            internal,
            letter
        };
        Kind kind;
        int id = 0;       // internal id, when kind == internal
        char letter = 0;  // when kind == letter

        static auto internal_vertex(int id) -> VertexToken { return {Kind::internal, id, 0}; }
        static auto letter_vertex(char c) -> VertexToken { return {Kind::letter, 0, c}; }

        auto operator==(const VertexToken &) const -> bool = default;
    };

    enum class FaceKind
    {
        bounded,        // "0 letters ids"
        unbounded_new,  // "a1-a2 letters ids" (first block only)
        unbounded_orig  // "ref letters ids" (second block only)
    };

    struct FaceSpec
    {
        FaceKind kind = FaceKind::bounded;
        int a1 = 0, a2 = 0;  // unbounded_new
        int ref = 0;         // unbounded_orig, 1-based index into the first block's faces
        std::vector<VertexToken> vertices;  // letters first, then internal ids, in file order
        int line = 0;

        auto letters() const -> std::string;
        auto internals() const -> std::vector<int>;
        auto operator==(const FaceSpec & o) const -> bool
        {
            return kind == o.kind && a1 == o.a1 && a2 == o.a2 && ref == o.ref && vertices == o.vertices;
        }
    };

    struct ConfigurationBlock
    {
        int m = 0, n = 0;
        std::vector<FaceSpec> faces;
        int line = 0;

        auto operator==(const ConfigurationBlock & o) const -> bool { return m == o.m && n == o.n && faces == o.faces; }
    };

    /// First block: the reduced (new) configuration. Second block: the original one.
    struct ReductionPair
    {
        ConfigurationBlock reduced, original;

        auto operator==(const ReductionPair &) const -> bool = default;
    };

    class ConfigParseError : public std::runtime_error
    {
    public:
        ConfigParseError(int line, const std::string & what) :
            std::runtime_error("line " + std::to_string(line) + ": " + what), _line(line)
        {
        }
        auto line() const -> int { return _line; }

    private:
        int _line;
    };

    auto parse_reduction_file(std::string_view text) -> ReductionPair;
    auto format_reduction_pair(const ReductionPair & pair) -> std::string;

    /// Range of the number k of unlisted vertices on an unbounded face: [delta+2-a2, delta+2-a1].
    /// An unbounded_orig face must be resolved through its first-block face; use the overload taking the pair.
    auto hidden_count_range(const FaceSpec & face, int delta) -> std::pair<int, int>;
    auto hidden_count_range(const ReductionPair & pair, const FaceSpec & face, int delta) -> std::pair<int, int>;

    /// Empty iff the pair is well formed for the given maximum face size.
    auto validate(const ReductionPair & pair, int delta) -> std::vector<std::string>;
}
