#pragma once

#include <cyclic/linear_form.hh>
#include <cyclic/rational.hh>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cyclic
{
    class UnknownRule : public std::out_of_range
    {
    public:
        using std::out_of_range::out_of_range;
    };

    /// Rule amount keys. Families indexed by face size or by a class index render as e.g. "weak_12", "C_5_0".
    namespace rule_keys
    {
        auto weak(int ell) -> std::string;
        auto small(int ell, int a) -> std::string;
        auto iso(int ell) -> std::string;
        auto A(int ell) -> std::string;
        auto B(int ell) -> std::string;
        auto G(int ell) -> std::string;
        auto C(int ell, int t) -> std::string;
        auto D(int ell, int t) -> std::string;
        auto E(int ell, int j) -> std::string;
        auto five_to_tri_1(int m) -> std::string;
        /// Offsets are relative to the maximum face size: -1 means delta-1.
        auto short_to_lightA(int face, int offset1, int offset2) -> std::string;
        auto face_to_lightA(int face, int j) -> std::string;

        inline constexpr const char * five_to_tri_2_light = "5_to_tri_2_light";
        inline constexpr const char * five_to_tri_2_heavy = "5_to_tri_2_heavy";
        inline constexpr const char * six_to_tri_le2_adj = "6_to_tri_le2_adj";
        inline constexpr const char * six_to_tri_2_opp = "6_to_tri_2_opp";
        inline constexpr const char * six_to_tri_3_light = "6_to_tri_3_light";
        inline constexpr const char * six_to_tri_3_all6 = "6_to_tri_3_all6";
        inline constexpr const char * six_to_tri_3_heavy = "6_to_tri_3_heavy";
        inline constexpr const char * light_D_extra = "light_D_extra";
        inline constexpr const char * light_C_extra = "light_C_extra";
        inline constexpr const char * through_heavy = "through_heavy";
        inline constexpr const char * four_to_five = "four_to_five";
        inline constexpr const char * four1 = "four1";
        inline constexpr const char * four2 = "four2";
        inline constexpr const char * star_CC_to_5_extra = "star_CC_to_5_extra";
        inline constexpr const char * star_CC_to_11_extra = "star_CC_to_11_extra";
        inline constexpr const char * ten_to_13_A_extra = "10_to_13_A_extra";
        inline constexpr const char * eleven_to_opp_66tri_extra = "11_to_opp_66tri_extra";
    }

    /// Every named discharging amount for one maximum face size, each an LP variable with its published value.
    class RuleTable
    {
    public:
        static auto reference(int delta) -> RuleTable;

        auto delta() const -> int { return _delta; }
        auto size() const -> int { return static_cast<int>(_names.size()); }
        auto name(int id) const -> const std::string & { return _names.at(id); }
        auto names() const -> const std::vector<std::string> & { return _names; }
        auto values() const -> const std::vector<Rational> & { return _values; }
        auto has(std::string_view key) const -> bool;
        /// Throws UnknownRule for keys outside the declared parameter ranges.
        auto id(std::string_view key) const -> int;
        auto value(std::string_view key) const -> const Rational & { return _values[id(key)]; }

        /// The amount as a single-variable linear form.
        auto var(std::string_view key) const -> LinearForm { return LinearForm::variable(id(key)); }
        auto maybe_var(std::string_view key) const -> std::optional<LinearForm>;

        /// Fingerprint of names and values, stable across runs.
        auto hash() const -> std::string;

        /// Copy with one amount replaced.
        auto with_value(std::string_view key, Rational value) const -> RuleTable;

    private:
        int _delta = 0;
        std::vector<std::string> _names;
        std::vector<Rational> _values;
        std::unordered_map<std::string, int> _index;

        auto add(std::string name, Rational value) -> void;
    };

    /// Exact published value of `key` for the given maximum face size.
    auto rule_amount(std::string_view key, int delta) -> Rational;

    /// Minimum neighbour size r(ell) for the E rules, 5 <= ell <= 11.
    auto e_threshold(int ell) -> int;

    enum class TriangleClass
    {
        A,
        B,
        C
    };

    auto to_string(TriangleClass c) -> const char *;

    /// v1, v2 lie on the sending face; apex is the third vertex. `apex_others_adjacent` tells whether
    /// the two neighbours of the apex other than v1, v2 are adjacent (meaningful only for a 4-vertex apex).
    auto classify_triangle(int deg_v1, int deg_v2, int deg_apex, bool apex_others_adjacent) -> TriangleClass;

    /// 4-face v1v2v3v4 seen across v1v2: all four are 3-vertices and v3v4 lies on another 4-face.
    auto is_column(int deg_v1, int deg_v2, int deg_v3, int deg_v4, bool far_edge_on_four_face) -> bool;

    /// Type of an endpoint of the shared edge: 1 if the face across its other edge on f0 is a (<=4)-face,
    /// 2 for a (<=4)-vertex otherwise, 0 for a (>=5)-vertex otherwise.
    auto t_value(int degree, int across_face_size) -> int;
    /// Combined index of the face: the symmetric table 0,1,2 / 1,3,4 / 2,4,5.
    auto t_combined(int t1, int t2) -> int;

    /// The face a sending face pays for an isolated vertex of the given degree: the vertex itself,
    /// or its disjoint (<=4)-face when it is a 4-vertex lying on one.
    auto sink_is_face(int degree, bool on_disjoint_small_face) -> bool;

    /// Local view of one endpoint of an edge shared by f0 and a small face.
    struct EdgeEnd
    {
        int degree = 3;
        int across_size = 5;  // size of the face across the other f0-edge at this endpoint
    };

    enum class SmallFaceKind
    {
        a_triangle,
        b_triangle,
        c_triangle,
        column,
        quad  // non-column 4-face
    };

    /// Amount an ell-face sends to an adjacent (<=4)-face across an edge, by the basic rules.
    /// nullopt when no rule covers this face size (e.g. A-triangles at 5-faces).
    auto edge_amount(const RuleTable & table, int ell, SmallFaceKind kind, const EdgeEnd & v1, const EdgeEnd & v2)
        -> std::optional<LinearForm>;

    /// Amount an ell-face sends to the sink of an isolated vertex whose other two faces have sizes f1, f2.
    auto isolated_amount(const RuleTable & table, int ell, int f1, int f2) -> std::optional<LinearForm>;

    /// Amounts a (>=5)-vertex sends to each of its faces by the heavy-vertex rules; `sizes` lists the face
    /// sizes around the vertex in cyclic order. Entry j is the amount sent to face j (zero if none).
    auto heavy_vertex_sends(const RuleTable & table, std::span<const int> sizes) -> std::vector<LinearForm>;

    /// Rule keys that carry negative published values.
    auto negative_rule_keys(const RuleTable & table) -> std::vector<std::string>;
}
