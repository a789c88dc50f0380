#include <cyclic/discharge.hh>

#include <algorithm>
#include <map>
#include <set>

namespace cyclic
{
    auto to_string(const Element & e) -> std::string
    {
        switch (e.kind) {
        case Element::Kind::vertex: return "v" + std::to_string(e.index);
        case Element::Kind::edge: return "e" + std::to_string(e.index);
        case Element::Kind::face: return "f" + std::to_string(e.index);
        }
        return "?";
    }

    auto ChargeLedger::total() const -> Rational
    {
        Rational t = 0;
        for (auto * part : {&vertex, &edge, &face})
            for (auto & q : *part)
                t += q;
        return t;
    }

    auto ChargeLedger::charge(const Element & e) -> Rational &
    {
        switch (e.kind) {
        case Element::Kind::vertex: return vertex.at(e.index);
        case Element::Kind::edge: return edge.at(e.index);
        case Element::Kind::face: return face.at(e.index);
        }
        throw std::logic_error("bad element");
    }

    auto ChargeLedger::apply(Transfer t) -> void
    {
        charge(t.source) -= t.amount;
        charge(t.target) += t.amount;
        transfers.push_back(std::move(t));
    }

    auto initial_charge(const PlaneGraph & g, const Element & e) -> Rational
    {
        switch (e.kind) {
        case Element::Kind::vertex: return g.degree(e.index) - 4;
        case Element::Kind::face: return g.face_size(e.index) - 4;
        case Element::Kind::edge: return 0;
        }
        return 0;
    }

    auto initial_ledger(const PlaneGraph & g) -> ChargeLedger
    {
        ChargeLedger ledger;
        for (int v = 0; v < g.vertex_count(); ++v)
            ledger.vertex.push_back(initial_charge(g, {Element::Kind::vertex, v}));
        ledger.edge.assign(g.edge_count(), 0);
        for (int f = 0; f < g.face_count(); ++f)
            ledger.face.push_back(initial_charge(g, {Element::Kind::face, f}));
        return ledger;
    }

    namespace
    {
        using Kind = Element::Kind;

        auto V(int v) -> Element { return {Kind::vertex, v}; }
        auto F(int f) -> Element { return {Kind::face, f}; }

        struct Engine
        {
            const PlaneGraph & g;
            const RuleTable & table;
            ChargeLedger ledger;
            std::map<std::pair<Vertex, Vertex>, int> edge_index;
            int delta;

            Engine(const PlaneGraph & graph, const RuleTable & t) : g(graph), table(t), ledger(initial_ledger(graph)), delta(t.delta())
            {
                int i = 0;
                for (auto e : g.edges())
                    edge_index[e] = i++;
            }

            auto E(Vertex u, Vertex v) const -> Element { return {Kind::edge, edge_index.at({std::min(u, v), std::max(u, v)})}; }
            auto size(int f) const -> int { return g.face_size(f); }
            auto deg(Vertex v) const -> int { return g.degree(v); }
            /// Face across the edge uv from face f.
            auto across(Vertex u, Vertex v, int f) const -> int
            {
                int a = g.dart_face(u, v);
                return a == f ? g.dart_face(v, u) : a;
            }
            auto count_faces(Vertex v, int max_size) const -> int
            {
                int c = 0;
                for (auto f : g.faces_around(v))
                    if (size(f) <= max_size)
                        ++c;
                return c;
            }
            auto count_faces_exact(Vertex v, int s) const -> int
            {
                int c = 0;
                for (auto f : g.faces_around(v))
                    if (size(f) == s)
                        ++c;
                return c;
            }
            auto walk_at(int f, int i) const -> Vertex
            {
                auto & w = g.face(f);
                int n = static_cast<int>(w.size());
                return w[((i % n) + n) % n];
            }

            auto send(const std::string & rule, const LinearForm & amount, Element from, Element to) -> void
            {
                Rational value = amount.evaluate(table.values());
                if (value == 0 && amount.is_constant())
                    return;
                ledger.apply({rule, value, from, to});
            }

            auto rule_name(const LinearForm & f) const -> std::string { return f.to_string(table); }

            /// Kind of the (<=4)-face across edge i of f0, from f0's point of view.
            auto small_face_kind(int f0, int i) const -> std::optional<SmallFaceKind>
            {
                Vertex v1 = walk_at(f0, i), v2 = walk_at(f0, i + 1);
                int f = across(v1, v2, f0);
                if (size(f) == 3) {
                    Vertex apex = -1;
                    for (auto x : g.face(f))
                        if (x != v1 && x != v2)
                            apex = x;
                    bool others_adjacent = false;
                    if (deg(apex) == 4) {
                        std::vector<Vertex> others;
                        for (auto x : g.rotation(apex))
                            if (x != v1 && x != v2)
                                others.push_back(x);
                        others_adjacent = others.size() == 2 && g.adjacent(others[0], others[1]);
                    }
                    switch (classify_triangle(deg(v1), deg(v2), deg(apex), others_adjacent)) {
                    case TriangleClass::A: return SmallFaceKind::a_triangle;
                    case TriangleClass::B: return SmallFaceKind::b_triangle;
                    case TriangleClass::C: return SmallFaceKind::c_triangle;
                    }
                }
                if (size(f) == 4) {
                    // the walk of f traverses v2 -> v1 -> v4 -> v3
                    auto & w = g.face(f);
                    int p = static_cast<int>(std::find(w.begin(), w.end(), v1) - w.begin());
                    Vertex v4 = w[(p + 1) % 4], v3 = w[(p + 2) % 4];
                    bool far_four = size(across(v3, v4, f)) == 4;
                    return is_column(deg(v1), deg(v2), deg(v3), deg(v4), far_four) ? SmallFaceKind::column : SmallFaceKind::quad;
                }
                return std::nullopt;
            }

            auto edge_ends(int f0, int i) const -> std::pair<EdgeEnd, EdgeEnd>
            {
                Vertex u1 = walk_at(f0, i - 1), v1 = walk_at(f0, i), v2 = walk_at(f0, i + 1), u2 = walk_at(f0, i + 2);
                return {EdgeEnd{deg(v1), size(across(u1, v1, f0))}, EdgeEnd{deg(v2), size(across(v2, u2, f0))}};
            }

            auto unit_rules() -> void
            {
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if (deg(v) != 3)
                        continue;
                    std::vector<int> small;
                    for (auto f : g.faces_around(v))
                        if (size(f) <= 4)
                            small.push_back(f);
                    if (small.size() == 1)
                        send("unit", LinearForm(1), F(small[0]), V(v));
                    else if (small.size() == 2 && size(small[0]) == 4 && size(small[1]) == 4)
                        for (auto f : small)
                            send("unit_half", LinearForm(make_rational(1, 2)), F(f), V(v));
                }
            }

            auto sink(int f0, Vertex v) const -> Element
            {
                if (deg(v) != 4)
                    return V(v);
                std::set<std::pair<Vertex, Vertex>> f0_edges;
                auto & w0 = g.face(f0);
                for (std::size_t i = 0; i < w0.size(); ++i) {
                    auto a = w0[i], b = w0[(i + 1) % w0.size()];
                    f0_edges.insert({std::min(a, b), std::max(a, b)});
                }
                for (auto f : g.faces_around(v)) {
                    if (f == f0 || size(f) > 4)
                        continue;
                    bool shares = false;
                    auto & w = g.face(f);
                    for (std::size_t i = 0; i < w.size(); ++i) {
                        auto a = w[i], b = w[(i + 1) % w.size()];
                        if (f0_edges.count({std::min(a, b), std::max(a, b)}))
                            shares = true;
                    }
                    if (sink_is_face(4, ! shares))
                        return F(f);
                }
                return V(v);
            }

            auto face_rules() -> void
            {
                for (int f0 = 0; f0 < g.face_count(); ++f0) {
                    int ell = size(f0);
                    if (ell < 5)
                        continue;
                    for (int i = 0; i < ell; ++i) {
                        Vertex v1 = walk_at(f0, i), v2 = walk_at(f0, i + 1);
                        int f = across(v1, v2, f0);
                        // basic rules across edge i
                        if (auto kind = small_face_kind(f0, i)) {
                            auto [e1, e2] = edge_ends(f0, i);
                            if (auto amount = edge_amount(table, ell, *kind, e1, e2))
                                send(rule_name(*amount), *amount, F(f0), F(f));
                            extra_rules(f0, i, *kind);
                        }
                        // isolated vertex v1 = walk[i]
                        Vertex u1 = walk_at(f0, i - 1);
                        int g1 = across(u1, v1, f0), g2 = across(v1, v2, f0);
                        if (size(g1) >= 5 && size(g2) >= 5)
                            if (auto amount = isolated_amount(table, ell, size(g1), size(g2)))
                                send(rule_name(*amount), *amount, F(f0), sink(f0, v1));
                    }
                }
            }

            /// Additional charge to 3- and 4-faces across edge i of f0.
            auto extra_rules(int f0, int i, SmallFaceKind kind) -> void
            {
                using namespace rule_keys;
                int ell = size(f0);
                if (ell < 6)
                    return;
                Vertex u1 = walk_at(f0, i - 1), v1 = walk_at(f0, i), v2 = walk_at(f0, i + 1), u2 = walk_at(f0, i + 2);
                int f = across(v1, v2, f0);
                int s1 = size(across(u1, v1, f0)), s2 = size(across(v2, u2, f0));
                if (s1 > s2)
                    std::swap(s1, s2);
                bool light_ends = deg(v1) == 3 && deg(v2) == 3 && s2 <= delta - 1;
                if (ell == 6 && light_ends && kind == SmallFaceKind::quad)
                    send(light_D_extra, table.var(light_D_extra), F(f0), F(f));
                if (ell == 7 && light_ends && kind == SmallFaceKind::c_triangle)
                    send(light_C_extra, table.var(light_C_extra), F(f0), F(f));
                if (kind != SmallFaceKind::a_triangle)
                    return;
                std::optional<std::string> key;
                if (ell == 7 && s1 == delta - 1 && (s2 == delta - 1 || s2 == delta))
                    key = short_to_lightA(7, -1, s2 - delta);
                if (ell == 8 && (s1 == delta - 2 || s1 == delta - 1) && s2 <= delta) {
                    auto k = short_to_lightA(8, s1 - delta, s2 - delta);
                    if (table.has(k))
                        key = k;
                }
                if (ell == 9 && s1 == delta - 3)
                    key = face_to_lightA(9, s2 == s1 ? 2 : 1);
                if (ell == 10 && s1 == delta - 4)
                    key = face_to_lightA(10, s2 == s1 ? 2 : 1);
                if (key)
                    send(*key, table.var(*key), F(f0), F(f));
            }

            auto heavy_vertex_rules() -> void
            {
                for (Vertex v = 0; v < g.vertex_count(); ++v) {
                    if (deg(v) < 5)
                        continue;
                    auto around = g.faces_around(v);
                    std::vector<int> sizes;
                    for (auto f : around)
                        sizes.push_back(size(f));
                    auto sends = heavy_vertex_sends(table, sizes);
                    for (std::size_t j = 0; j < around.size(); ++j)
                        if (! (sends[j].is_constant() && sends[j].constant() == 0))
                            send(sends[j].is_constant() ? "heavy_to_four" : rule_name(sends[j]), sends[j], V(v), F(around[j]));
                }
            }

            /// Neighbour of u on face f other than v (u and v consecutive on f).
            auto other_on_face(int f, Vertex u, Vertex v) const -> Vertex
            {
                auto & w = g.face(f);
                int n = static_cast<int>(w.size());
                for (int i = 0; i < n; ++i)
                    if (w[i] == u) {
                        Vertex prev = w[(i + n - 1) % n], next = w[(i + 1) % n];
                        if (next == v)
                            return prev;
                        if (prev == v)
                            return next;
                    }
                throw std::logic_error("edge not on face");
            }

            auto two_phase_rules() -> void
            {
                using namespace rule_keys;
                LinearForm th = table.var(through_heavy);
                LinearForm half = make_rational(1, 2) * th;
                for (auto [a, b] : g.edges())
                    for (auto [u, v] : {std::pair{a, b}, std::pair{b, a}}) {
                        Element e = E(u, v);
                        int fa = g.dart_face(u, v), fb = g.dart_face(v, u);

                        // both faces of uv large; forwarded to the triangle at a 3-vertex v
                        if (size(fa) >= 12 && size(fb) >= 12 && ! (deg(u) == 3 && count_faces_exact(u, 3) > 0) && deg(v) == 3) {
                            int tri = -1;
                            for (auto f : g.faces_around(v))
                                if (size(f) == 3)
                                    tri = f;
                            if (tri >= 0) {
                                Vertex v1 = -1, v2 = -1;
                                for (auto x : g.face(tri))
                                    if (x != v)
                                        (v1 < 0 ? v1 : v2) = x;
                                if (size(across(v1, v2, tri)) <= 11) {
                                    std::vector<int> small;
                                    for (auto f : g.faces_around(u))
                                        if (size(f) <= 4)
                                            small.push_back(f);
                                    if (deg(u) <= 4 && small.size() == 1)
                                        send(through_heavy, th, F(small[0]), e);
                                    else if ((deg(u) == 4 && small.size() == 2 && size(small[0]) == 4 && size(small[1]) == 4) ||
                                        (deg(u) == 5 && count_faces_exact(u, 3) == 2)) {
                                        for (auto f : g.faces_around(u))
                                            if (size(f) == (deg(u) == 4 ? 4 : 3))
                                                send(through_heavy, half, F(f), e);
                                    }
                                    else
                                        send(through_heavy, th, V(u), e);
                                    send(through_heavy, th, e, F(tri));
                                }
                            }
                        }

                        // an edge on a 5..10-face and on no (<=4)-face: a heavy u feeds the triangle at its next edge on either face
                        if (size(fa) >= 5 && size(fb) >= 5 && ((size(fa) >= 5 && size(fa) <= 10) || (size(fb) >= 5 && size(fb) <= 10)))
                            for (int f : {fa, fb}) {
                                Vertex u2 = other_on_face(f, u, v);
                                int ft = across(u, u2, f);
                                bool heavy = deg(u) >= 6 || (deg(u) == 5 && count_faces_exact(u, 3) == 1);
                                if (size(ft) == 3 && heavy) {
                                    send(through_heavy, th, V(u), e);
                                    send(through_heavy, th, e, F(ft));
                                }
                            }

                        // a 5-vertex on two triangles passes charge between them across a mid/large edge
                        for (auto [mid, big] : {std::pair{fa, fb}, std::pair{fb, fa}}) {
                            if (! (size(mid) >= 5 && size(mid) <= 10 && size(big) >= 12))
                                continue;
                            if (deg(u) != 5 || count_faces_exact(u, 3) != 2)
                                continue;
                            Vertex u2 = other_on_face(big, u, v);
                            int ft = across(u, u2, big);
                            if (size(ft) != 3)
                                continue;
                            for (auto f : g.faces_around(u))
                                if (size(f) == 3 && f != ft) {
                                    send(through_heavy, th, F(ft), e);
                                    send(through_heavy, th, e, F(f));
                                }
                        }
                    }
            }

            auto special_rules() -> void
            {
                using namespace rule_keys;
                for (int f = 0; f < g.face_count(); ++f) {
                    int ell = size(f);
                    if (ell == 4) {
                        std::set<int> four2_targets;
                        for (int i = 0; i < 4; ++i) {
                            Vertex v1 = walk_at(f, i), v2 = walk_at(f, i + 1), v3 = walk_at(f, i + 2), v4 = walk_at(f, i + 3);
                            int other = across(v1, v2, f);
                            // four_to_five
                            if (size(other) == 5 && (deg(v3) >= 4 || deg(v4) >= 4 || size(across(v3, v4, f)) >= 6))
                                send(four_to_five, table.var(four_to_five), F(f), F(other));
                            // four1: f' = other, with its own labelling v1 v2 v3' v4'
                            if (size(other) == 4 && deg(v1) == 4 && deg(v2) == 4) {
                                Vertex w4 = other_on_face(other, v1, v2), w3 = other_on_face(other, v2, v1);
                                if (size(across(v1, w4, other)) == 4 && size(across(v2, w3, other)) == 4)
                                    send(four1, table.var(four1), F(f), F(other));
                            }
                            // four2 with v1 = walk[i], both orientations
                            if (deg(v1) == 4)
                                for (auto [n1, far1, n2] : {std::tuple{v2, v3, v4}, std::tuple{v4, v3, v2}}) {
                                    // labelling v1, n1 = "v2", far1 = "v3", n2 = "v4"
                                    if (size(across(v1, n2, f)) >= delta - 1 && size(across(n1, far1, f)) >= delta - 1)
                                        for (auto t : g.faces_around(v1))
                                            if (size(t) == 3)
                                                four2_targets.insert(t);
                                }
                            (void)v3;
                        }
                        for (auto t : four2_targets)
                            send(four2, table.var(four2), F(f), F(t));
                    }

                    if (ell == 5 || ell == 11 || ell == 10) {
                        for (int i = 0; i < ell; ++i)
                            for (int dir : {1, -1}) {
                                Vertex v1 = walk_at(f, i - dir), v2 = walk_at(f, i), v3 = walk_at(f, i + dir);
                                int e12 = dir == 1 ? i - 1 : i;  // walk index of edge v1v2
                                int e23 = dir == 1 ? i : i - 1;
                                auto k12 = small_face_kind(f, e12);
                                auto k23 = small_face_kind(f, e23);
                                if ((ell == 5 || ell == 11) && deg(v1) == 3 && k12 == SmallFaceKind::c_triangle &&
                                    k23 == SmallFaceKind::c_triangle) {
                                    auto key = ell == 5 ? star_CC_to_5_extra : star_CC_to_11_extra;
                                    send(key, table.var(key), F(across(v1, v2, f)), F(f));
                                }
                                if (ell == 10 && k23 == SmallFaceKind::a_triangle && size(across(v1, v2, f)) >= 13)
                                    send(ten_to_13_A_extra, table.var(ten_to_13_A_extra), F(f), F(across(v2, v3, f)));
                            }
                    }

                    if (ell == 11)
                        for (int i = 0; i < ell; ++i) {
                            Vertex v1 = walk_at(f, i - 1), v2 = walk_at(f, i), v3 = walk_at(f, i + 1);
                            int a = size(across(v1, v2, f)), b = size(across(v2, v3, f));
                            if ((a == 5 || a == 6) && (b == 5 || b == 6) && deg(v2) == 4)
                                for (auto t : g.faces_around(v2))
                                    if (size(t) == 3) {
                                        send(eleven_to_opp_66tri_extra, table.var(eleven_to_opp_66tri_extra), F(f), F(t));
                                        break;
                                    }
                        }
                }
            }
        };
    }

    auto apply_rules(const PlaneGraph & g, const RuleTable & table) -> ChargeLedger
    {
        Engine engine(g, table);
        engine.unit_rules();
        engine.face_rules();
        engine.heavy_vertex_rules();
        engine.two_phase_rules();
        engine.special_rules();
        return std::move(engine.ledger);
    }
}
