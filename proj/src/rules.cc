#include <cyclic/rules.hh>

#include <algorithm>
#include <functional>
#include <sstream>

namespace cyclic
{
    namespace rule_keys
    {
        auto weak(int ell) -> std::string { return "weak_" + std::to_string(ell); }
        auto small(int ell, int a) -> std::string { return "small_" + std::to_string(ell) + "_" + std::to_string(a); }
        auto iso(int ell) -> std::string { return "iso_" + std::to_string(ell); }
        auto A(int ell) -> std::string { return "A_" + std::to_string(ell); }
        auto B(int ell) -> std::string { return "B_" + std::to_string(ell); }
        auto G(int ell) -> std::string { return "G_" + std::to_string(ell); }
        auto C(int ell, int t) -> std::string { return "C_" + std::to_string(ell) + "_" + std::to_string(t); }
        auto D(int ell, int t) -> std::string { return "D_" + std::to_string(ell) + "_" + std::to_string(t); }
        auto E(int ell, int j) -> std::string { return "E_" + std::to_string(ell) + "_" + std::to_string(j); }
        auto five_to_tri_1(int m) -> std::string { return "5_to_tri_1_" + std::to_string(m); }

        auto short_to_lightA(int face, int offset1, int offset2) -> std::string
        {
            auto rel = [](int o) { return o == 0 ? std::string("D") : "D" + std::to_string(o); };
            return "short_to_lightA_" + std::to_string(face) + "_" + rel(offset1) + "_" + rel(offset2);
        }

        auto face_to_lightA(int face, int j) -> std::string { return "face_to_lightA_" + std::to_string(face) + "_" + std::to_string(j); }
    }

    auto RuleTable::add(std::string name, Rational value) -> void
    {
        _index.emplace(name, static_cast<int>(_names.size()));
        _names.push_back(std::move(name));
        _values.push_back(std::move(value));
    }

    auto RuleTable::reference(int delta) -> RuleTable
    {
        using namespace rule_keys;
        if (delta < 14)
            throw std::invalid_argument("rule table needs maximum face size at least 14");
        RuleTable t;
        t._delta = delta;
        auto q = [](long p, long d = 1) { return make_rational(p, d); };

        // faces of size at least 12
        t.add(weak(12), q(4, 3));
        t.add(small(12, 0), q(2, 3));
        t.add(small(12, 1), q(1, 3));
        t.add(iso(12), q(23827, 36960));
        t.add(weak(13), q(14023, 10080));
        t.add(small(13, 0), q(14023, 20160));
        t.add(small(13, 1), q(6137, 20160));
        t.add(iso(13), q(1097, 1680));
        for (int ell = 14; ell <= delta; ++ell) {
            Rational base = 1 - q(4, ell);
            t.add(weak(ell), 2 * base);
            t.add(small(ell, 0), base);
            t.add(small(ell, 1), base / 2);
            t.add(iso(ell), base);
        }

        // faces of size 6..11: A-triangles, B-triangles, columns
        const long abg[6][6] = {
            {1, 1, 3, 4, 3, 4},
            {1, 1, 14, 15, 9, 10},
            {1, 1, 14, 15, 82, 105},
            {17383, 15120, 17383, 15120, 2743, 2520},
            {8983, 7560, 8983, 7560, 16217, 15120},
            {4, 3, 4, 3, 4, 3},
        };
        for (int ell = 6; ell <= 11; ++ell) {
            auto & r = abg[ell - 6];
            t.add(A(ell), q(r[0], r[1]));
            t.add(B(ell), q(r[2], r[3]));
            t.add(G(ell), q(r[4], r[5]));
        }

        // C-triangles and non-column 4-faces
        struct Row
        {
            int ell;
            std::vector<std::pair<long, long>> c, d;
        };
        const std::vector<Row> cd = {
            {5, {{-11507, 36960}, {-7, 40}, {349, 840}, {-1, 7}, {13, 30}, {53, 120}}, {{1, 4}, {0, 1}, {349, 840}, {1, 15}, {1, 8}, {4, 7}}},
            {6, {{-10, 33}, {1, 336}, {1, 2}, {0, 1}, {1, 2}, {97, 160}}, {{1, 4}, {0, 1}, {3, 8}, {-13, 60}, {1, 8}, {67, 120}}},
            {7, {{2, 55}, {1, 336}, {211, 336}, {0, 1}, {1, 2}, {13, 15}}, {{1, 4}, {0, 1}, {3, 8}, {3, 7}, {3281, 20160}, {13, 15}}},
            {8, {{583, 1680}, {193, 840}, {7, 15}}, {{41, 105}, {1, 4}, {1, 3}}},
            {9, {{7223, 30240}, {1517, 7560}, {17383, 30240}}, {{1009, 2160}, {5, 18}, {5017, 10080}}},
            {10, {{83, 378}, {47851, 166320}, {8983, 15120}}, {{20743, 40320}, {0, 1}, {4615, 8064}}},
            {11, {{17, 33}, {7, 22}, {3, 5}}, {{13, 22}, {26, 165}, {13, 22}}},
        };
        for (auto & row : cd) {
            for (std::size_t i = 0; i < row.c.size(); ++i)
                t.add(C(row.ell, static_cast<int>(i)), q(row.c[i].first, row.c[i].second));
            for (std::size_t i = 0; i < row.d.size(); ++i)
                t.add(D(row.ell, static_cast<int>(i)), q(row.d[i].first, row.d[i].second));
        }

        // isolated vertices at faces of size 5..11
        const long e[7][4] = {
            {1, 7, -61, 240},
            {49, 240, -1, 15},
            {79, 240, -1, 15},
            {41, 105, 9, 28},
            {7, 15, 1, 3},
            {7, 15, 1, 3},
            {7, 15, 1, 3},
        };
        for (int ell = 5; ell <= 11; ++ell) {
            t.add(E(ell, 0), q(e[ell - 5][0], e[ell - 5][1]));
            t.add(E(ell, 1), q(e[ell - 5][2], e[ell - 5][3]));
        }

        // heavy vertices
        t.add(five_to_tri_1(0), q(767, 1680));
        t.add(five_to_tri_1(1), q(737, 1680));
        t.add(five_to_tri_1(2), q(37, 120));
        t.add(five_to_tri_2_light, q(83, 140));
        t.add(five_to_tri_2_heavy, q(57, 140));
        t.add(six_to_tri_le2_adj, q(63, 80));
        t.add(six_to_tri_2_opp, q(767, 1680));
        t.add(six_to_tri_3_light, q(113, 120));
        t.add(six_to_tri_3_all6, q(8, 15));
        t.add(six_to_tri_3_heavy, q(881, 1680));

        // additional charge to 3- and 4-faces
        t.add(light_D_extra, q(1, 30));
        t.add(light_C_extra, q(1, 30));
        t.add(short_to_lightA(7, -1, -1), q(1, 15));
        t.add(short_to_lightA(7, -1, 0), q(1, 30));
        t.add(short_to_lightA(8, -2, -2), q(1, 7));
        t.add(short_to_lightA(8, -2, -1), q(1, 7));
        t.add(short_to_lightA(8, -2, 0), q(3, 28));
        t.add(short_to_lightA(8, -1, -1), q(1, 15));
        t.add(short_to_lightA(8, -1, 0), q(1, 30));
        t.add(face_to_lightA(9, 2), q(3257, 30240));
        t.add(face_to_lightA(9, 1), q(185, 6048));
        t.add(face_to_lightA(10, 2), q(583, 5040));
        t.add(face_to_lightA(10, 1), q(583, 10080));

        t.add(through_heavy, q(17, 80));

        t.add(four_to_five, q(109, 840));
        t.add(four1, q(1, 2));
        t.add(four2, q(1, 2));
        t.add(star_CC_to_5_extra, q(37, 240));
        t.add(star_CC_to_11_extra, q(14, 165));
        t.add(ten_to_13_A_extra, q(89, 6048));
        t.add(eleven_to_opp_66tri_extra, q(28, 165));
        return t;
    }

    auto RuleTable::has(std::string_view key) const -> bool { return _index.count(std::string(key)) != 0; }

    auto RuleTable::id(std::string_view key) const -> int
    {
        auto it = _index.find(std::string(key));
        if (it == _index.end())
            throw UnknownRule("no rule amount '" + std::string(key) + "' for maximum face size " + std::to_string(_delta));
        return it->second;
    }

    auto RuleTable::maybe_var(std::string_view key) const -> std::optional<LinearForm>
    {
        auto it = _index.find(std::string(key));
        if (it == _index.end())
            return std::nullopt;
        return LinearForm::variable(it->second);
    }

    auto RuleTable::hash() const -> std::string
    {
        // FNV-1a over "name=value;" pairs
        std::uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < size(); ++i)
            for (char c : _names[i] + "=" + cyclic::to_string(_values[i]) + ";") {
                h ^= static_cast<unsigned char>(c);
                h *= 1099511628211ull;
            }
        std::ostringstream out;
        out << std::hex << h;
        return out.str();
    }

    auto RuleTable::with_value(std::string_view key, Rational value) const -> RuleTable
    {
        RuleTable copy = *this;
        copy._values[id(key)] = std::move(value);
        return copy;
    }

    auto rule_amount(std::string_view key, int delta) -> Rational { return RuleTable::reference(delta).value(key); }

    auto e_threshold(int ell) -> int
    {
        static const int r[] = {15, 14, 13, 13, 12, 12, 11};
        if (ell < 5 || ell > 11)
            throw UnknownRule("r(" + std::to_string(ell) + ") undefined");
        return r[ell - 5];
    }

    auto to_string(TriangleClass c) -> const char *
    {
        switch (c) {
        case TriangleClass::A: return "A";
        case TriangleClass::B: return "B";
        case TriangleClass::C: return "C";
        }
        return "?";
    }

    auto classify_triangle(int deg_v1, int deg_v2, int deg_apex, bool apex_others_adjacent) -> TriangleClass
    {
        if (deg_v1 == 3 && deg_v2 == 3 && deg_apex == 3)
            return TriangleClass::A;
        if (deg_v1 == 3 && deg_v2 == 3 && deg_apex == 4 && apex_others_adjacent)
            return TriangleClass::B;
        return TriangleClass::C;
    }

    auto is_column(int deg_v1, int deg_v2, int deg_v3, int deg_v4, bool far_edge_on_four_face) -> bool
    {
        return deg_v1 == 3 && deg_v2 == 3 && deg_v3 == 3 && deg_v4 == 3 && far_edge_on_four_face;
    }

    auto t_value(int degree, int across_face_size) -> int
    {
        if (across_face_size <= 4)
            return 1;
        return degree <= 4 ? 2 : 0;
    }

    auto t_combined(int t1, int t2) -> int
    {
        static const int table[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
        return table[t1][t2];
    }

    auto sink_is_face(int degree, bool on_disjoint_small_face) -> bool { return degree == 4 && on_disjoint_small_face; }

    auto edge_amount(const RuleTable & table, int ell, SmallFaceKind kind, const EdgeEnd & v1, const EdgeEnd & v2)
        -> std::optional<LinearForm>
    {
        using namespace rule_keys;
        if (ell >= 12) {
            switch (kind) {
            case SmallFaceKind::a_triangle:
            case SmallFaceKind::b_triangle:
            case SmallFaceKind::column: return table.maybe_var(weak(ell));
            case SmallFaceKind::c_triangle:
            case SmallFaceKind::quad: {
                auto a1 = table.maybe_var(small(ell, v1.across_size <= 4 ? 1 : 0));
                auto a2 = table.maybe_var(small(ell, v2.across_size <= 4 ? 1 : 0));
                if (! a1 || ! a2)
                    return std::nullopt;
                return *a1 + *a2;
            }
            }
        }
        if (ell < 5)
            return std::nullopt;
        switch (kind) {
        case SmallFaceKind::a_triangle: return table.maybe_var(A(ell));
        case SmallFaceKind::b_triangle: return table.maybe_var(B(ell));
        case SmallFaceKind::column: return table.maybe_var(G(ell));
        case SmallFaceKind::c_triangle:
        case SmallFaceKind::quad: {
            auto key = kind == SmallFaceKind::c_triangle ? C : D;
            int t1 = t_value(v1.degree, v1.across_size), t2 = t_value(v2.degree, v2.across_size);
            if (ell <= 7)
                return table.maybe_var(key(ell, t_combined(t1, t2)));
            return table.var(key(ell, t1)) + table.var(key(ell, t2));
        }
        }
        return std::nullopt;
    }

    auto isolated_amount(const RuleTable & table, int ell, int f1, int f2) -> std::optional<LinearForm>
    {
        if (ell >= 12)
            return table.maybe_var(rule_keys::iso(ell));
        if (ell < 5)
            return std::nullopt;
        int r = e_threshold(ell);
        return table.var(rule_keys::E(ell, f1 >= r && f2 >= r ? 1 : 0));
    }

    auto heavy_vertex_sends(const RuleTable & table, std::span<const int> sizes) -> std::vector<LinearForm>
    {
        using namespace rule_keys;
        int d = static_cast<int>(sizes.size());
        std::vector<LinearForm> out(d);
        if (d < 5)
            return out;
        auto at = [&](int j) { return sizes[((j % d) + d) % d]; };
        std::vector<int> tri;
        int quads = 0;
        for (int j = 0; j < d; ++j) {
            if (sizes[j] == 3)
                tri.push_back(j);
            if (sizes[j] == 4) {
                out[j] += LinearForm(make_rational(1, 4));
                ++quads;
            }
        }

        if (d == 5) {
            if (tri.size() == 1) {
                if (auto v = table.maybe_var(five_to_tri_1(quads)))
                    out[tri[0]] += *v;
            }
            else if (tri.size() == 2) {
                int j = tri[0], k = tri[1];
                if ((j + 2) % 5 != k)
                    std::swap(j, k);
                if ((j + 2) % 5 == k) {
                    // faces f1..f5 = j-1, j, j+1, j+2, j+3
                    out[j] += table.var(at(j - 1) <= 7 && at(j + 1) <= 7 ? five_to_tri_2_light : five_to_tri_2_heavy);
                    out[k] += table.var(at(j + 1) <= 7 && at(j + 3) <= 7 ? five_to_tri_2_light : five_to_tri_2_heavy);
                }
            }
            return out;
        }

        if (d == 6) {
            if (tri.size() == 1)
                out[tri[0]] += table.var(six_to_tri_le2_adj);
            else if (tri.size() == 2) {
                int gap = (tri[1] - tri[0] + 6) % 6;
                bool share_edge = gap == 1 || gap == 5;
                for (auto j : tri)
                    out[j] += table.var(share_edge ? six_to_tri_le2_adj : six_to_tri_2_opp);
            }
            else if (tri.size() == 3 && (tri[1] - tri[0]) == 2 && (tri[2] - tri[1]) == 2) {
                for (auto j : tri) {
                    int a = at(j - 1), b = at(j + 1);
                    if (std::min(a, b) == 5 && std::max(a, b) <= 7)
                        out[j] += table.var(six_to_tri_3_light);
                    else if (a == 6 && b == 6)
                        out[j] += table.var(six_to_tri_3_all6);
                    else
                        out[j] += table.var(six_to_tri_3_heavy);
                }
            }
            return out;
        }

        for (auto j : tri) {
            int a = at(j - 2), b = at(j + 2);
            if (a == 3 && b == 3)
                out[j] += table.var(six_to_tri_3_light);
            else if (std::min(a, b) <= 4 && std::max(a, b) != 3)
                out[j] += table.var(six_to_tri_le2_adj);
            else
                out[j] += table.var(six_to_tri_2_opp);
        }
        return out;
    }

    auto negative_rule_keys(const RuleTable & table) -> std::vector<std::string>
    {
        std::vector<std::string> out;
        for (int i = 0; i < table.size(); ++i)
            if (table.values()[i] < 0)
                out.push_back(table.name(i));
        return out;
    }
}
