#include "audit_support.hh"

#include <array>
#include <unordered_map>

namespace cyclic
{
    namespace
    {
        using detail::Pool;
        using detail::Recorder;

        auto at(std::span<const int> s, int j) -> int
        {
            int d = static_cast<int>(s.size());
            return s[((j % d) + d) % d];
        }

        /// Everything a vertex sends and receives that its face sizes determine.
        struct VertexTerms
        {
            Pool & pool;
            int th, neg_th;
            std::map<std::tuple<int, int, int>, int> iso;
            std::unordered_map<std::uint64_t, std::vector<int>> heavy;

            explicit VertexTerms(Pool & p) :
                pool(p),
                th(p.intern(p.table.var(rule_keys::through_heavy))),
                neg_th(p.intern(-p.table.var(rule_keys::through_heavy)))
            {
            }

            auto received(int ell, int f1, int f2) -> int
            {
                auto [it, fresh] = iso.try_emplace({ell, f1, f2}, -1);
                if (fresh)
                    if (auto a = isolated_amount(pool.table, ell, f1, f2))
                        it->second = pool.intern(*a);
                return it->second;
            }

            /// Negated heavy-vertex sends per face position; the rules only see sizes up to 8.
            auto sends(std::span<const int> s) -> const std::vector<int> &
            {
                std::uint64_t key = s.size();
                for (auto x : s)
                    key = key * 8 + static_cast<std::uint64_t>(std::min(x, 8) - 1);
                auto [it, fresh] = heavy.try_emplace(key);
                if (fresh) {
                    auto forms = heavy_vertex_sends(pool.table, s);
                    for (auto & f : forms)
                        it->second.push_back(f.is_constant() && f.constant() == 0 ? -1 : pool.intern(-f));
                }
                return it->second;
            }

            auto collect(std::span<const int> s, std::vector<int> & out) -> void
            {
                int d = static_cast<int>(s.size());
                out.push_back(pool.constant(d - 4));
                int small = 0, tri = 0, fours = 0;
                for (auto x : s) {
                    small += x <= 4;
                    tri += x == 3;
                    fours += x == 4;
                }
                if (d == 3 && (small == 1 || (small == 2 && fours == 2)))
                    out.push_back(pool.constant(1));
                for (int j = 0; j < d; ++j) {
                    if (s[j] < 5 || at(s, j - 1) < 5 || at(s, j + 1) < 5)
                        continue;
                    if (d == 4 && at(s, j + 2) <= 4)
                        continue;  // the opposite face is the sink
                    if (int id = received(s[j], at(s, j - 1), at(s, j + 1)); id >= 0)
                        out.push_back(id);
                }
                if (d >= 5)
                    for (auto id : sends(s))
                        if (id >= 0)
                            out.push_back(id);
                bool pays_through = ! (d == 3 && tri > 0) && ! (d <= 4 && small == 1) && ! (d == 4 && fours == 2) && ! (d == 5 && tri == 2);
                bool heavy_vertex = d >= 6 || (d == 5 && tri == 1);
                for (int k = 0; k < d; ++k) {
                    int left = s[k], right = at(s, k + 1);
                    if (pays_through && left >= 12 && right >= 12)
                        out.push_back(neg_th);
                    if (heavy_vertex && left >= 5 && right >= 5 && ((left >= 5 && left <= 10) || (right >= 5 && right <= 10))) {
                        if (at(s, k - 1) == 3)
                            out.push_back(neg_th);
                        if (at(s, k + 2) == 3)
                            out.push_back(neg_th);
                    }
                }
            }
        };

        /// s is the lexicographically least of its rotations and reflections.
        auto canonical(const std::vector<int> & s) -> bool
        {
            int d = static_cast<int>(s.size());
            for (int dir : {1, -1})
                for (int r = 0; r < d; ++r) {
                    if (dir == 1 && r == 0)
                        continue;
                    for (int i = 0; i < d; ++i) {
                        int x = s[((r + dir * i) % d + d) % d];
                        if (x != s[i]) {
                            if (x < s[i])
                                return false;
                            break;
                        }
                    }
                }
            return true;
        }
    }

    auto vertex_final_charge(const RuleTable & table, std::span<const int> sizes) -> LinearForm
    {
        Pool pool(table);
        VertexTerms terms(pool);
        std::vector<int> ids;
        terms.collect(sizes, ids);
        return pool.sum(ids);
    }

    auto audit_small_vertices(const RuleTable & table, const AuditOptions & options) -> AuditReport
    {
        Pool pool(table);
        VertexTerms terms(pool);
        Recorder rec("vertices-3-7", pool, options);
        auto & catalog = detail::catalog_of(options);
        int delta = table.delta();
        std::vector<int> ids;

        for (int d = 3; d <= 7 && ! rec.stopped(); ++d) {
            std::vector<int> s(d);
            auto context = [&] { return "deg=" + std::to_string(d) + " faces=" + detail::join(s); };
            auto leaf = [&] {
                if (! canonical(s))
                    return;
                if (d == 4 && std::any_of(s.begin(), s.end(), [](int x) { return x <= 4; })) {
                    rec.skip();
                    return;
                }
                if (auto p = match_forbidden({s, true, false}, catalog, delta)) {
                    rec.discard(*p, context);
                    return;
                }
                ids.clear();
                terms.collect(s, ids);
                rec.record(ids, pool.value_of(ids), context);
            };
            // s[0] is the minimum, so every class has a representative
            std::function<void(int)> fill = [&](int i) {
                if (rec.stopped())
                    return;
                if (i == d) {
                    leaf();
                    return;
                }
                for (int x = s[0]; x <= delta; ++x) {
                    s[i] = x;
                    fill(i + 1);
                }
            };
            for (int first = 3; first <= delta; ++first) {
                s[0] = first;
                fill(1);
            }
        }
        return rec.finish();
    }

    auto audit_big_vertices(const RuleTable & table, const AuditOptions & options) -> AuditReport
    {
        using namespace rule_keys;
        Pool pool(table);
        VertexTerms terms(pool);
        Recorder rec("vertices-8+", pool, options);
        auto & catalog = detail::catalog_of(options);
        int delta = table.delta();
        int span = delta - 2;  // sizes 3..delta
        auto index = [&](std::span<const int> w) {
            int k = 0;
            for (auto x : w)
                k = k * span + (x - 3);
            return k;
        };

        // slot charge c for every window f_{j-2}..f_{j+2}
        int windows = span * span * span * span * span;
        std::vector<int> c_full(windows), c_half(windows);
        std::vector<std::int64_t> v_full(windows), v_half(windows);
        auto half_th = make_rational(1, 2) * table.var(through_heavy);
        std::array<int, 5> w{};
        for (int k = 0; k < windows; ++k) {
            int r = k;
            for (int i = 4; i >= 0; --i) {
                w[i] = 3 + r % span;
                r /= span;
            }
            auto [a, b, c, d, e] = w;
            LinearForm f;
            if (c <= 4) {
                std::array<int, 8> around{c, d, e, 12, 12, 12, a, b};
                f = heavy_vertex_sends(table, around)[0];
                if (c == 3) {
                    auto mid = [](int x) { return x >= 5 && x <= 10; };
                    if (d >= 5 && e >= 5 && (mid(d) || mid(e)))
                        f += table.var(through_heavy);
                    if (a >= 5 && b >= 5 && (mid(a) || mid(b)))
                        f += table.var(through_heavy);
                }
            }
            else {
                if (b >= 12 && c >= 12)
                    f += half_th;
                if (c >= 12 && d >= 12)
                    f += half_th;
                if (b >= 5 && d >= 5)
                    if (auto got = isolated_amount(table, c, b, d))
                        f -= *got;
            }
            c_full[k] = pool.intern(-f);
            c_half[k] = pool.intern(make_rational(-1, 2) * f);
            v_full[k] = pool.value(c_full[k]);
            v_half[k] = pool.value(c_half[k]);
        }

        int one = pool.constant(1);
        std::int64_t v_one = pool.value(one);
        std::array<int, 7> win{};
        auto context = [&] { return "window=" + detail::join(std::vector<int>(win.begin(), win.end())); };
        auto forbidden_pair = [&](int x, int y) { return match_forbidden({{x, y}, false, false}, catalog, delta); };

        // middle five faces fixed, then the two outer faces independently
        std::vector<int> lefts, rights;
        std::function<void(int)> fill = [&](int i) {
            if (rec.stopped())
                return;
            if (i == 6) {
                int mid = index(std::span<const int>(win.data() + 1, 5));
                lefts.clear();
                rights.clear();
                for (int x = 3; x <= delta; ++x) {
                    if (auto p = forbidden_pair(x, win[1])) {
                        win[0] = x;
                        rec.report.discarded += span;
                        rec.report.discarded_by[*p] += span;
                        continue;
                    }
                    lefts.push_back(x);
                }
                for (int x = 3; x <= delta; ++x) {
                    if (auto p = forbidden_pair(win[5], x)) {
                        rec.report.discarded += lefts.size();
                        rec.report.discarded_by[*p] += lefts.size();
                        continue;
                    }
                    rights.push_back(x);
                }
                
                rec.count(lefts.size() * rights.size());
                for (int xl : lefts) {
                    win[0] = xl;
                    std::array<int, 5> lw{xl, win[1], win[2], win[3], win[4]};
                    int li = index(lw);
                    for (int xr : rights) {
                        win[6] = xr;
                        std::array<int, 5> rw{win[2], win[3], win[4], win[5], xr};
                        int ri = index(rw);
                        std::int64_t value = v_one + v_half[li] + v_full[mid] + v_half[ri];
                        rec.observe(value, context);
                        if (value < 0)
                            rec.violation(value, context);
                        if (options.on_case)
                            options.on_case({rec.report.family, context(), pool.exact(value), value < 0 ? "violation" : "ok"});
                        if (options.on_constraint)
                            rec.emit({one, c_half[li], c_full[mid], c_half[ri]}, context);
                    }
                }
                return;
            }
            for (int x = 3; x <= delta; ++x) {
                win[i] = x;
                if (i > 1)
                    if (auto p = forbidden_pair(win[i - 1], x)) {
                        // every completion of this prefix is discarded
                        std::uint64_t n = 1;
                        for (int k = i + 1; k <= 6; ++k)
                            n *= span;
                        n *= span;  // the left outer face
                        rec.report.discarded += n;
                        rec.report.discarded_by[*p] += n;
                        if (options.on_case)
                            options.on_case({rec.report.family, "window=*," + detail::join(std::vector<int>(win.begin() + 1, win.begin() + i + 1)) + ",*",
                                std::nullopt, *p});
                        continue;
                    }
                fill(i + 1);
            }
        };
        fill(1);
        return rec.finish();
    }
}
