#include "audit_support.hh"

#include <array>
#include <limits>

namespace cyclic
{
    namespace
    {
        using detail::Pool;
        using detail::Recorder;

        constexpr std::int64_t unreachable = std::numeric_limits<std::int64_t>::max() / 4;

        /// What a face of size 5..13 sees at one boundary position j: the degree of vertex v_j and the
        /// face across the edge v_j v_{j+1}.
        enum Across : int
        {
            tri_a,
            tri_b,
            tri_c,
            column,
            quad,
            quad_feeding,  // a non-column 4-face that also sends four_to_five to a 5-face
            first_size
        };

        enum Degree : int
        {
            deg3,
            deg4,
            deg4_tri,  // a 4-vertex whose face opposite f is a 3-face
            deg5
        };

        struct Alphabet
        {
            int ell, delta;
            std::vector<Degree> degrees;
            std::vector<int> across;  // Across values, sizes as first_size + (s - 5)

            Alphabet(int l, int d) : ell(l), delta(d)
            {
                degrees = {deg3, deg4, deg5};
                if (ell == 11)
                    degrees.insert(degrees.begin() + 2, deg4_tri);
                for (int a = tri_a; a <= quad; ++a)
                    across.push_back(a);
                if (ell == 5)
                    across.push_back(quad_feeding);
                for (int s = 5; s <= delta; ++s)
                    across.push_back(first_size + s - 5);
            }

            auto count() const -> int { return static_cast<int>(degrees.size() * across.size()); }
            auto degree(int x) const -> Degree { return degrees[x / across.size()]; }
            auto edge(int x) const -> int { return across[x % across.size()]; }
        };

        auto size_of(int edge) -> int
        {
            if (edge <= tri_c)
                return 3;
            if (edge < first_size)
                return 4;
            return edge - first_size + 5;
        }

        auto degree_value(Degree d) -> int { return d == deg3 ? 3 : d == deg5 ? 5 : 4; }

        auto kind_of(int edge) -> SmallFaceKind
        {
            switch (edge) {
            case tri_a: return SmallFaceKind::a_triangle;
            case tri_b: return SmallFaceKind::b_triangle;
            case tri_c: return SmallFaceKind::c_triangle;
            case column: return SmallFaceKind::column;
            default: return SmallFaceKind::quad;
            }
        }

        auto edge_name(int edge) -> std::string
        {
            static const char * names[] = {"TA", "TB", "TC", "QC", "QR", "QF"};
            return edge < first_size ? names[edge] : std::to_string(size_of(edge));
        }

        auto degree_name(Degree d) -> std::string
        {
            static const char * names[] = {"3", "4", "4t", "5+"};
            return names[d];
        }

        /// Charge terms of an ell-face attributed to boundary position b, given its neighbours a and c.
        struct FaceTerms
        {
            Pool & pool;
            const Alphabet & alpha;
            const ForbiddenPatternCatalog & catalog;

            /// The pattern that rules out the window, if any; otherwise appends term ids.
            auto window(int a, int b, int c, std::vector<int> * ids) const -> std::optional<std::string>
            {
                using namespace rule_keys;
                auto & table = pool.table;
                int ell = alpha.ell, delta = alpha.delta;
                Degree db = alpha.degree(b), dc = alpha.degree(c), da = alpha.degree(a);
                int ea = alpha.edge(a), eb = alpha.edge(b), ec = alpha.edge(c);
                int sa = size_of(ea), sb = size_of(eb), sc = size_of(ec);

                // A-, B-triangles and columns have 3-vertices on the shared edge
                if ((eb == tri_a || eb == tri_b || eb == column) && (db != deg3 || dc != deg3))
                    return "";
                if (db == deg3)
                    if (auto p = match_forbidden({{ell, sa, sb}, true, ea == tri_a || eb == tri_a}, catalog, delta))
                        return p;
                if (! ids)
                    ids = &scratch;
                auto add = [&](const LinearForm & f) { ids->push_back(pool.intern(f)); };

                if (sb <= 4) {
                    EdgeEnd e1{degree_value(db), sa}, e2{degree_value(dc), sc};
                    if (auto amount = edge_amount(table, ell, kind_of(eb), e1, e2))
                        add(-*amount);
                    // additional charge
                    int s1 = std::min(sa, sc), s2 = std::max(sa, sc);
                    bool light_ends = db == deg3 && dc == deg3 && s2 <= delta - 1;
                    if (ell == 6 && light_ends && (eb == quad || eb == quad_feeding))
                        add(-table.var(light_D_extra));
                    if (ell == 7 && light_ends && eb == tri_c)
                        add(-table.var(light_C_extra));
                    if (eb == tri_a) {
                        std::optional<std::string> key;
                        if (ell == 7 && s1 == delta - 1 && (s2 == delta - 1 || s2 == delta))
                            key = short_to_lightA(7, -1, s2 - delta);
                        if (ell == 8 && (s1 == delta - 2 || s1 == delta - 1) && s2 <= delta)
                            if (auto k = short_to_lightA(8, s1 - delta, s2 - delta); table.has(k))
                                key = k;
                        if (ell == 9 && s1 == delta - 3)
                            key = face_to_lightA(9, s2 == s1 ? 2 : 1);
                        if (ell == 10 && s1 == delta - 4)
                            key = face_to_lightA(10, s2 == s1 ? 2 : 1);
                        if (key)
                            add(-table.var(*key));
                    }
                    if (eb == quad_feeding)
                        add(table.var(four_to_five));
                }
                if (sa >= 5 && sb >= 5)
                    if (auto amount = isolated_amount(table, ell, sa, sb))
                        add(-*amount);
                if ((ell == 5 || ell == 11) && ea == tri_c && eb == tri_c) {
                    auto key = ell == 5 ? star_CC_to_5_extra : star_CC_to_11_extra;
                    if (da == deg3)
                        add(table.var(key));
                    if (dc == deg3)
                        add(table.var(key));
                }
                if (ell == 10) {
                    if (eb == tri_a && sa >= 13)
                        add(-table.var(ten_to_13_A_extra));
                    if (ea == tri_a && sb >= 13)
                        add(-table.var(ten_to_13_A_extra));
                }
                if (ell == 11 && db == deg4_tri && (sa == 5 || sa == 6) && (sb == 5 || sb == 6))
                    add(-table.var(eleven_to_opp_66tri_extra));
                return std::nullopt;
            }

            mutable std::vector<int> scratch;
        };

        auto slot_name(const Alphabet & alpha, int x) -> std::string
        {
            return degree_name(alpha.degree(x)) + ":" + edge_name(alpha.edge(x));
        }
    }

    auto audit_mid_faces(const RuleTable & table, int ell, const AuditOptions & options) -> AuditReport
    {
        if (ell < 5 || ell > 13)
            throw std::invalid_argument("mid-face audit covers face sizes 5..13");
        Pool pool(table);
        Recorder rec("faces-" + std::to_string(ell), pool, options);
        auto & catalog = detail::catalog_of(options);
        Alphabet alpha(ell, table.delta());
        FaceTerms terms{pool, alpha, catalog, {}};
        int n = alpha.count();
        auto at3 = [n](int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; };

        // window values, unreachable when the window is ruled out
        std::vector<std::int64_t> cost(static_cast<std::size_t>(n) * n * n);
        std::vector<std::string> why(cost.size());
        std::vector<int> ids;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    ids.clear();
                    auto k = at3(a, b, c);
                    if (auto p = terms.window(a, b, c, &ids)) {
                        cost[k] = unreachable;
                        why[k] = p->empty() ? "shape" : *p;
                    }
                    else
                        cost[k] = pool.value_of(ids);
                }

        std::int64_t base = pool.value(pool.constant(ell - 4));
        std::int64_t margin = pool.scaled_ceil(options.margin);
        std::vector<int> x(ell);
        // rest[j][a*n+b]: least cost of the windows centred at j..ell-1 and 0 given x[j-1] = a, x[j] = b
        std::vector<std::vector<std::int64_t>> rest(ell, std::vector<std::int64_t>(static_cast<std::size_t>(n) * n, unreachable));
        auto context = [&] {
            std::string s = "face=" + std::to_string(ell) + " slots=";
            for (int j = 0; j < ell; ++j)
                s += (j ? "," : "") + slot_name(alpha, x[j]);
            return s;
        };
        auto canonical = [&] {
            for (int r = 1; r < ell; ++r)
                for (int i = 0; i < ell; ++i) {
                    int y = x[(r + i) % ell];
                    if (y != x[i]) {
                        if (y < x[i])
                            return false;
                        break;
                    }
                }
            return true;
        };

        std::function<void(int, std::int64_t)> extend = [&](int k, std::int64_t so_far) {
            if (rec.stopped())
                return;
            if (k == ell - 1) {
                auto w1 = cost[at3(x[ell - 2], x[ell - 1], x[0])], w2 = cost[at3(x[ell - 1], x[0], x[1])];
                if (w1 >= unreachable || w2 >= unreachable) {
                    auto & p = why[w1 >= unreachable ? at3(x[ell - 2], x[ell - 1], x[0]) : at3(x[ell - 1], x[0], x[1])];
                    if (canonical())
                        rec.discard(p, context);
                    return;
                }
                if (! canonical())
                    return;
                std::int64_t value = base + so_far + w1 + w2;
                if (options.on_case || (options.on_constraint && value < margin)) {
                    std::vector<int> all{pool.constant(ell - 4)};
                    for (int j = 0; j < ell; ++j)
                        terms.window(x[(j + ell - 1) % ell], x[j], x[(j + 1) % ell], &all);
                    rec.record(all, value, context);
                }
                else {
                    rec.count();
                    rec.observe(value, context);
                    if (value < 0)
                        rec.violation(value, context);
                }
                return;
            }
            for (int y = x[0]; y < n; ++y) {
                x[k + 1] = y;
                std::int64_t next = so_far;
                if (k + 1 >= 2) {
                    auto w = cost[at3(x[k - 1], x[k], y)];
                    if (w >= unreachable) {
                        if (options.on_case)
                            rec.discard(why[at3(x[k - 1], x[k], y)], context);
                        else {
                            ++rec.report.discarded;
                            ++rec.report.discarded_by[why[at3(x[k - 1], x[k], y)]];
                        }
                        continue;
                    }
                    next += w;
                }
                auto bound = rest[k + 1][static_cast<std::size_t>(x[k]) * n + y];
                if (bound >= unreachable) {
                    rec.skip();
                    continue;
                }
                if (base + next + bound >= margin && base + next + bound >= 0) {
                    rec.skip();
                    continue;
                }
                extend(k + 1, next);
            }
        };

        auto at2 = [n](int a, int b) { return static_cast<std::size_t>(a) * n + b; };
        for (int x0 = 0; x0 < n && ! rec.stopped(); ++x0)
            for (int x1 = x0; x1 < n && ! rec.stopped(); ++x1) {
                x[0] = x0;
                x[1] = x1;
                // the closing windows are exact once x[0] and x[1] are fixed
                auto & last = rest[ell - 1];
                std::fill(last.begin(), last.end(), unreachable);
                for (int a = x0; a < n; ++a)
                    for (int b = x0; b < n; ++b) {
                        auto w = cost[at3(a, b, x0)], v = cost[at3(b, x0, x1)];
                        if (w < unreachable && v < unreachable)
                            last[at2(a, b)] = w + v;
                    }
                for (int j = ell - 2; j >= 2; --j) {
                    auto & cur = rest[j];
                    auto & nxt = rest[j + 1];
                    std::fill(cur.begin(), cur.end(), unreachable);
                    for (int a = j == 2 ? x1 : x0; a < (j == 2 ? x1 + 1 : n); ++a)
                        for (int b = x0; b < n; ++b) {
                            std::int64_t best = unreachable;
                            const auto * row = &cost[at3(a, b, 0)];
                            const auto * tail = &nxt[at2(b, 0)];
                            for (int c = x0; c < n; ++c)
                                if (row[c] < unreachable && tail[c] < unreachable)
                                    best = std::min(best, row[c] + tail[c]);
                            cur[at2(a, b)] = best;
                        }
                }
                std::int64_t bound = unreachable;
                for (int c = x0; c < n; ++c) {
                    auto w = cost[at3(x0, x1, c)], r = rest[2][at2(x1, c)];
                    if (w < unreachable && r < unreachable)
                        bound = std::min(bound, w + r);
                }
                if (bound >= unreachable || (base + bound >= margin && base + bound >= 0)) {
                    rec.skip();
                    continue;
                }
                extend(1, 0);
            }
        return rec.finish();
    }
}

namespace cyclic
{
    namespace
    {
        using detail::Pool;
        using detail::Recorder;

        /// A vertex of a 3- or 4-face f as the shape sees it. For a 4-vertex, left = right is the size class
        /// of the face opposite f; for a (>=5)-vertex they are the classes of the faces next to f_{i-1} and f_i.
        struct Corner
        {
            int degree;      // 3, 4 or 5 (meaning at least 5)
            int left, right; // 3, 4 or 5 (meaning at least 5); unused for 3-vertices
        };

        auto corner_classes(bool triangle) -> std::vector<Corner>
        {
            std::vector<Corner> out{{3, 0, 0}};
            for (int h : {3, 4, 5})
                out.push_back({4, h, h});
            // 4-faces only distinguish (<=4) from (>=5) next to a (>=5)-vertex
            std::vector<int> sides = triangle ? std::vector<int>{3, 4, 5} : std::vector<int>{4, 5};
            for (int l : sides)
                for (int r : sides)
                    out.push_back({5, l, r});
            return out;
        }

        auto corner_name(const Corner & k) -> std::string
        {
            auto cls = [](int s) { return s == 5 ? std::string(">=5") : std::to_string(s); };
            if (k.degree == 3)
                return "3";
            if (k.degree == 4)
                return "4/" + cls(k.left);
            return "5+/" + cls(k.left) + "/" + cls(k.right);
        }

        /// Worst case of the charge a vertex of a 3- or 4-face contributes to that face through rules that
        /// depend on the vertex's other faces, for every corner class and pair of sizes (f_{i-1}, f_i).
        class CornerCharges
        {
        public:
            CornerCharges(Pool & p, const ForbiddenPatternCatalog & c, int face, const std::vector<Corner> & k, int smin) :
                pool(p), catalog(c), corners(k), face_size(face), min_size(smin), delta(p.table.delta())
            {
                span = delta - min_size + 1;
                best.assign(corners.size() * span * span, unreachable);
                forms.assign(best.size(), -1);
                why.assign(best.size(), "");
                for (std::size_t q = 0; q < corners.size(); ++q)
                    for (int b = min_size; b <= delta; ++b)
                        for (int a = min_size; a <= delta; ++a)
                            solve(q, b, a);
            }

            /// Value and form id (or -1 for none) of the worst case; unreachable with the ruling pattern otherwise.
            auto value(std::size_t q, int before, int after) const -> std::int64_t { return best[index(q, before, after)]; }
            auto form(std::size_t q, int before, int after) const -> int { return forms[index(q, before, after)]; }
            auto pattern(std::size_t q, int before, int after) const -> const std::string & { return why[index(q, before, after)]; }

        private:
            Pool & pool;
            const ForbiddenPatternCatalog & catalog;
            const std::vector<Corner> & corners;
            int face_size, min_size, delta, span;
            std::vector<std::int64_t> best;
            std::vector<int> forms;
            std::vector<std::string> why;
            std::map<std::vector<int>, std::vector<LinearForm>> heavy_cache;

            auto index(std::size_t q, int b, int a) const -> std::size_t
            {
                return (q * span + (b - min_size)) * span + (a - min_size);
            }

            auto heavy(const std::vector<int> & s) -> LinearForm
            {
                std::vector<int> key;
                for (auto x : s)
                    key.push_back(std::min(x, 8));
                auto [it, fresh] = heavy_cache.try_emplace(key);
                if (fresh)
                    it->second = heavy_vertex_sends(pool.table, s);
                return it->second[0];
            }

            /// Charge the vertex adds to f (position 0 of s) beyond the shape.
            auto contribution(const std::vector<int> & s, bool more) -> LinearForm
            {
                using namespace rule_keys;
                auto & table = pool.table;
                auto th = table.var(through_heavy);
                int d = more ? 7 : static_cast<int>(s.size());
                int n = static_cast<int>(s.size());
                auto at = [&](int j) { return s[((j % n) + n) % n]; };
                int tri = 0, small = 0;
                for (auto x : s) {
                    tri += x == 3;
                    small += x <= 4;
                }
                LinearForm f;
                auto both_large = [&](int k) { return at(k) >= 12 && at(k + 1) >= 12; };
                if (d == 4) {
                    int a = s[1], h = s[2], b = s[3];
                    if (a >= 5 && b >= 5 && h >= 5)
                        if (auto amount = isolated_amount(table, h, b, a))
                            f += *amount;
                    if (face_size == 3 && h == 11 && (a == 5 || a == 6) && (b == 5 || b == 6))
                        f += table.var(eleven_to_opp_66tri_extra);
                    // the vertex forwards through_heavy at the expense of its only or its two 4-faces
                    if (small == 1 || (small == 2 && face_size == 4 && tri == 0)) {
                        Rational share = small == 1 ? Rational(1) : make_rational(1, 2);
                        for (int k : {1, 2})
                            if (both_large(k))
                                f -= share * th;
                    }
                    return f;
                }
                if (face_size == 4)
                    return f;
                f += heavy(s);
                auto mid = [](int x) { return x >= 5 && x <= 10; };
                bool heavy_vertex = d >= 6 || (d == 5 && tri == 1);
                if (heavy_vertex) {
                    if (at(1) >= 5 && at(2) >= 5 && (mid(at(1)) || mid(at(2))))
                        f += th;
                    if (at(-1) >= 5 && at(-2) >= 5 && (mid(at(-1)) || mid(at(-2))))
                        f += th;
                }
                if (d == 5 && tri == 2) {
                    for (int k = 0; k < 5; ++k) {
                        if (both_large(k))
                            f -= make_rational(1, 2) * th;
                        // edge between faces k and k+1; big face's other neighbour is the sending triangle
                        for (auto [mid_at, big_at, sender] : {std::tuple{k, k + 1, k + 2}, std::tuple{k + 1, k, k - 1}}) {
                            if (! (mid(at(mid_at)) && at(big_at) >= 12 && at(sender) == 3))
                                continue;
                            int from = ((sender % 5) + 5) % 5;
                            if (from == 0)
                                f -= th;
                            else
                                f += th;
                        }
                    }
                }
                return f;
            }

            auto consider(std::size_t k, const std::vector<int> & s, bool more)
            {
                VertexContext ctx{s, ! more, false};
                if (more) {
                    // only the run f_{i-1}'s neighbour .. f_i's neighbour is known
                    int n = static_cast<int>(s.size());
                    ctx.sizes = {s[n - 2], s[n - 1], s[0], s[1], s[2]};
                }
                if (auto p = match_forbidden(ctx, catalog, delta)) {
                    if (why[k].empty())
                        why[k] = *p;
                    return;
                }
                auto f = contribution(s, more);
                int id = pool.intern(f);
                if (pool.value(id) < best[k]) {
                    best[k] = pool.value(id);
                    forms[k] = id;
                }
            }

            auto solve(std::size_t q, int b, int a) -> void
            {
                auto & c = corners[q];
                auto k = index(q, b, a);
                int f = face_size;
                auto sizes_in = [&](int cls) {
                    std::vector<int> v;
                    if (cls == 5 || (face_size == 4 && cls == 4 && c.degree == 5)) {
                        for (int s = cls == 5 ? 5 : 3; s <= (cls == 5 ? delta : 4); ++s)
                            v.push_back(s);
                    }
                    else
                        v.push_back(cls);
                    return v;
                };
                if (c.degree == 3) {
                    consider(k, {f, a, b}, false);
                    return;
                }
                if (c.degree == 4) {
                    for (int h : sizes_in(c.left))
                        consider(k, {f, a, h, b}, false);
                    return;
                }
                for (int r : sizes_in(c.right))
                    for (int l : sizes_in(c.left)) {
                        consider(k, {f, a, r, l, b}, false);
                        for (int m = 3; m <= delta; ++m)
                            consider(k, {f, a, r, m, l, b}, false);
                        consider(k, {f, a, r, 12, 12, 12, l, b}, true);
                    }
            }
        };
    }
}

namespace cyclic
{
    namespace
    {
        /// Terms of a 3- or 4-face attributed to corner i and the edge v_i v_{i+1}. A slot is a corner class
        /// together with the size of the face across that edge.
        struct SmallFaceTerms
        {
            Pool & pool;
            const ForbiddenPatternCatalog & catalog;
            const std::vector<Corner> & corners;
            const CornerCharges & corner_charges;
            int face_size, delta, span;  // sizes 3..delta

            auto corner(int x) const -> const Corner & { return corners[x / span]; }
            auto across(int x) const -> int { return 3 + x % span; }
            auto slot_name(int x) const -> std::string { return corner_name(corner(x)) + ":" + std::to_string(across(x)); }

            /// Size class of the face next to f_i at v_i (right) or next to f_{i-1} at v_i (left).
            auto beside(int x, int neighbour, bool right) const -> int
            {
                auto & k = corner(x);
                if (k.degree == 3)
                    return across(neighbour);
                return right ? k.right : k.left;
            }

            auto window(int a, int b, int c, std::vector<int> * ids) const -> std::optional<std::string>
            {
                using namespace rule_keys;
                auto & table = pool.table;
                auto add = [&](const LinearForm & f) {
                    if (ids)
                        ids->push_back(pool.intern(f));
                };
                auto & ka = corner(a);
                auto & kb = corner(b);
                auto & kc = corner(c);
                int before = across(a), here = across(b), after = across(c);
                int small = 1 + (before <= 4) + (here <= 4);

                if (kb.degree == 3) {
                    bool a_triangle = face_size == 3 && ka.degree == 3 && kc.degree == 3;
                    if (auto p = match_forbidden({{face_size, here, before}, true, a_triangle}, catalog, delta))
                        return p;
                    bool fours = face_size == 4 && before >= 4 && here >= 4;
                    if (small == 1)
                        add(LinearForm(-1));
                    else if (small == 2 && fours)
                        add(LinearForm(make_rational(-1, 2)));
                    if (face_size == 4 && small == 1 && before >= 12 && here >= 12)
                        add(-table.var(through_heavy));
                }
                auto q = static_cast<std::size_t>(b / span);
                if (corner_charges.value(q, before, here) >= unreachable)
                    return corner_charges.pattern(q, before, here);
                if (int id = corner_charges.form(q, before, here); id >= 0 && ids)
                    ids->push_back(id);
                if (face_size == 4 && kb.degree == 5)
                    add(LinearForm(make_rational(1, 4)));

                if (here >= 5) {
                    EdgeEnd e1{kb.degree, beside(b, a, true)}, e2{kc.degree, beside(c, c, false)};
                    SmallFaceKind kind = SmallFaceKind::quad;
                    if (face_size == 3) {
                        // the apex of this edge is the corner before
                        kind = SmallFaceKind::c_triangle;
                        if (kb.degree == 3 && kc.degree == 3 && ka.degree == 3)
                            kind = SmallFaceKind::a_triangle;
                        else if (kb.degree == 3 && kc.degree == 3 && ka.degree == 4 && ka.left == 3)
                            kind = SmallFaceKind::b_triangle;
                    }
                    if (auto amount = edge_amount(table, here, kind, e1, e2))
                        add(*amount);
                    int s1 = std::min(e1.across_size, e2.across_size), s2 = std::max(e1.across_size, e2.across_size);
                    bool light_ends = kb.degree == 3 && kc.degree == 3 && s2 <= delta - 1;
                    if (here == 6 && light_ends && kind == SmallFaceKind::quad)
                        add(table.var(light_D_extra));
                    if (here == 7 && light_ends && kind == SmallFaceKind::c_triangle)
                        add(table.var(light_C_extra));
                    if (kind == SmallFaceKind::a_triangle) {
                        std::optional<std::string> key;
                        if (here == 7 && s1 == delta - 1 && (s2 == delta - 1 || s2 == delta))
                            key = short_to_lightA(7, -1, s2 - delta);
                        if (here == 8 && (s1 == delta - 2 || s1 == delta - 1) && s2 <= delta)
                            if (auto k = short_to_lightA(8, s1 - delta, s2 - delta); table.has(k))
                                key = k;
                        if (here == 9 && s1 == delta - 3)
                            key = face_to_lightA(9, s2 == s1 ? 2 : 1);
                        if (here == 10 && s1 == delta - 4)
                            key = face_to_lightA(10, s2 == s1 ? 2 : 1);
                        if (key)
                            add(table.var(*key));
                        if (here == 10) {
                            if (e1.across_size >= 13)
                                add(table.var(ten_to_13_A_extra));
                            if (e2.across_size >= 13)
                                add(table.var(ten_to_13_A_extra));
                        }
                    }
                    if (kind == SmallFaceKind::c_triangle && (here == 5 || here == 11)) {
                        auto key = here == 5 ? star_CC_to_5_extra : star_CC_to_11_extra;
                        if (kb.degree == 3 && e2.across_size == 3)
                            add(-table.var(key));
                        if (kc.degree == 3 && e1.across_size == 3)
                            add(-table.var(key));
                    }
                }
                if (face_size == 4 && here == 4 && kb.degree == 4 && kc.degree == 4) {
                    if (kb.right == 4 && kc.left == 4)
                        add(-table.var(four1));
                    if (before == 4 && after == 4)
                        add(table.var(four1));
                }
                return std::nullopt;
            }

            /// Corrections of a 4-face's edge i that need the opposite slot d as well.
            auto far(int a, int b, int c, int d, std::vector<int> * ids) const -> void
            {
                using namespace rule_keys;
                auto & table = pool.table;
                auto add = [&](const LinearForm & f) {
                    if (ids)
                        ids->push_back(pool.intern(f));
                };
                int here = across(b);
                bool all3 = corner(a).degree == 3 && corner(b).degree == 3 && corner(c).degree == 3 && corner(d).degree == 3;
                if (here >= 5 && all3 && across(d) == 4) {
                    // a column rather than a plain 4-face
                    EdgeEnd e1{3, across(a)}, e2{3, across(c)};
                    auto plain = edge_amount(table, here, SmallFaceKind::quad, e1, e2);
                    auto col = edge_amount(table, here, SmallFaceKind::column, e1, e2);
                    LinearForm change;
                    if (col)
                        change += *col;
                    if (plain)
                        change -= *plain;
                    if (here == 6 && std::max(across(a), across(c)) <= delta - 1)
                        change -= table.var(light_D_extra);
                    add(change);
                }
                if (here == 5 && (corner(d).degree > 3 || corner(a).degree > 3 || across(d) >= 6))
                    add(-table.var(four_to_five));
                auto & kb = corner(b);
                if (kb.degree == 4 && kb.left == 3)
                    if ((across(a) >= delta - 1 && across(c) >= delta - 1) || (here >= delta - 1 && across(d) >= delta - 1))
                        add(-table.var(four2));
            }
        };
    }

    auto audit_triangle_and_quad_faces(const RuleTable & table, int face_size, const AuditOptions & options) -> AuditReport
    {
        if (face_size != 3 && face_size != 4)
            throw std::invalid_argument("shape audit covers 3- and 4-faces");
        Pool pool(table);
        Recorder rec("faces-" + std::to_string(face_size), pool, options);
        auto & catalog = detail::catalog_of(options);
        int delta = table.delta();
        auto corners = corner_classes(face_size == 3);
        CornerCharges charges(pool, catalog, face_size, corners, 3);
        int span = delta - 2;
        SmallFaceTerms terms{pool, catalog, corners, charges, face_size, delta, span};
        int n = static_cast<int>(corners.size()) * span;
        auto at3 = [n](int a, int b, int c) { return (static_cast<std::size_t>(a) * n + b) * n + c; };

        std::vector<std::int64_t> cost(static_cast<std::size_t>(n) * n * n);
        std::vector<std::string> why(cost.size());
        std::vector<int> ids;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    ids.clear();
                    auto k = at3(a, b, c);
                    if (auto p = terms.window(a, b, c, &ids)) {
                        cost[k] = unreachable;
                        why[k] = *p;
                    }
                    else
                        cost[k] = pool.value_of(ids);
                }

        // 4-face corrections, as values
        // 4-face corrections depend on slot b, the sizes across a, c, d and which corners are 3-vertices
        std::vector<std::int64_t> far_cache(face_size == 4 ? static_cast<std::size_t>(n) * span * span * span * 8 : 0, unreachable);
        auto far_value = [&](int a, int b, int c, int d) {
            auto & k = far_cache[((((static_cast<std::size_t>(b) * span + a % span) * span + c % span) * span + d % span) * 8) +
                (terms.corner(a).degree == 3) * 4 + (terms.corner(c).degree == 3) * 2 + (terms.corner(d).degree == 3)];
            if (k == unreachable) {
                ids.clear();
                terms.far(a, b, c, d, &ids);
                k = pool.value_of(ids);
            }
            return k;
        };
        std::int64_t base = pool.value(pool.constant(face_size - 4));
        std::int64_t margin = pool.scaled_ceil(options.margin);
        std::vector<int> x(face_size);
        auto context = [&] {
            std::string s = "face=" + std::to_string(face_size) + " corners=";
            for (int j = 0; j < face_size; ++j)
                s += (j ? "," : "") + terms.slot_name(x[j]);
            return s;
        };
        auto canonical = [&] {
            for (int r = 1; r < face_size; ++r)
                for (int i = 0; i < face_size; ++i) {
                    int y = x[(r + i) % face_size];
                    if (y != x[i]) {
                        if (y < x[i])
                            return false;
                        break;
                    }
                }
            return true;
        };
        auto leaf = [&] {
            if (! canonical())
                return;
            int m = face_size;
            std::int64_t value = base;
            for (int j = 0; j < m; ++j) {
                auto k = at3(x[(j + m - 1) % m], x[j], x[(j + 1) % m]);
                if (cost[k] >= unreachable) {
                    rec.discard(why[k], context);
                    return;
                }
                value += cost[k];
            }
            if (m == 4)
                for (int j = 0; j < 4; ++j)
                    value += far_value(x[(j + 3) % 4], x[j], x[(j + 1) % 4], x[(j + 2) % 4]);
            if (options.on_case || (options.on_constraint && value < margin)) {
                std::vector<int> all{pool.constant(m - 4)};
                for (int j = 0; j < m; ++j)
                    terms.window(x[(j + m - 1) % m], x[j], x[(j + 1) % m], &all);
                if (m == 4)
                    for (int j = 0; j < 4; ++j)
                        terms.far(x[(j + 3) % 4], x[j], x[(j + 1) % 4], x[(j + 2) % 4], &all);
                rec.record(all, value, context);
            }
            else {
                rec.count();
                rec.observe(value, context);
                if (value < 0)
                    rec.violation(value, context);
            }
        };
        std::function<void(int)> fill = [&](int i) {
            if (rec.stopped())
                return;
            if (i == face_size) {
                leaf();
                return;
            }
            for (int y = i ? x[0] : 0; y < n; ++y) {
                x[i] = y;
                fill(i + 1);
            }
        };
        fill(0);
        return rec.finish();
    }
}

namespace cyclic
{
    auto audit_large_faces(const RuleTable & table, const AuditOptions & options) -> AuditReport
    {
        using namespace rule_keys;
        Pool pool(table);
        Recorder rec("faces-14+", pool, options);
        auto & catalog = detail::catalog_of(options);
        int delta = table.delta();
        // edge kinds on each side of a boundary vertex: small-face kinds, then neighbour sizes 5..delta
        enum { a_tri, b_tri, col, c_tri, quad, sizes };
        static const char * names[] = {"TA", "TB", "QC", "TC", "QR"};
        auto size = [](int e) { return e == a_tri || e == b_tri || e == c_tri ? 3 : e < sizes ? 4 : e - sizes + 5; };
        auto name = [&](int e) { return e < sizes ? std::string(names[e]) : std::to_string(size(e)); };
        int kinds = sizes + delta - 4;

        for (int ell = 14; ell <= delta && ! rec.stopped(); ++ell) {
            Rational cap = 1 - make_rational(4, ell);
            int cap_id = pool.constant(cap);
            auto total = [&] { return "face=" + std::to_string(ell) + " total"; };
            // the face sends at most cap through each boundary vertex, which is exactly its initial charge in total
            rec.record({pool.constant(ell - 4), pool.constant(-ell * cap)}, pool.scaled(ell - 4 - ell * cap), total);

            auto half_weak = make_rational(1, 2) * table.var(weak(ell));
            for (int deg3 : {1, 0})
                for (int l = 0; l < kinds && ! rec.stopped(); ++l)
                    for (int r = l; r < kinds && ! rec.stopped(); ++r) {
                        auto context = [&] {
                            return "face=" + std::to_string(ell) + " deg=" + (deg3 ? "3" : "4+") + " sides=" + name(l) + "," + name(r);
                        };
                        bool needs3 = l == a_tri || l == b_tri || l == col || r == a_tri || r == b_tri || r == col;
                        if (needs3 && ! deg3) {
                            rec.skip();
                            continue;
                        }
                        VertexContext around{{size(l), ell, size(r)}, static_cast<bool>(deg3), l == a_tri || r == a_tri};
                        auto p = match_forbidden(around, catalog, delta);
                        // a column beside another small face: the column's far vertex on their shared edge
                        // sees three small faces, or a triangle meets the column along that edge
                        for (auto [e, other] : {std::pair{l, r}, std::pair{r, l}})
                            if (! p && e == col && other < sizes)
                                p = size(other) == 3 ? match_forbidden({{3, 4}, false, false}, catalog, delta)
                                                     : match_forbidden({{4, 4, 4}, true, false}, catalog, delta);
                        if (p) {
                            rec.discard(*p, context);
                            continue;
                        }
                        LinearForm sent;
                        for (auto [e, other] : {std::pair{l, r}, std::pair{r, l}}) {
                            if (e == a_tri || e == b_tri || e == col)
                                sent += half_weak;
                            else if (e < sizes)
                                sent += table.var(small(ell, size(other) <= 4 ? 1 : 0));
                        }
                        if (l >= sizes && r >= sizes)
                            sent += table.var(iso(ell));
                        std::vector<int> ids{cap_id, pool.intern(-sent)};
                        rec.record(ids, pool.value_of(ids), context);
                    }
        }
        return rec.finish();
    }
}
