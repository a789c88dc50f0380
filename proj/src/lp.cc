#include <cyclic/lp.hh>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cyclic
{
    auto to_string(Relation r) -> const char *
    {
        switch (r) {
        case Relation::ge: return ">=";
        case Relation::le: return "<=";
        case Relation::eq: return "=";
        }
        return "?";
    }

    auto LinearProgram::variable(std::string_view name) -> int
    {
        if (auto id = find(name))
            return *id;
        int id = static_cast<int>(_variables.size());
        _variables.emplace_back(name);
        _index.emplace(std::string(name), id);
        return id;
    }

    auto LinearProgram::find(std::string_view name) const -> std::optional<int>
    {
        if (auto it = _index.find(name); it != _index.end())
            return it->second;
        return std::nullopt;
    }

    auto LinearProgram::add(Constraint c) -> bool
    {
        std::erase_if(c.coefficients, [](auto & t) { return t.second == 0; });
        std::sort(c.coefficients.begin(), c.coefficients.end(), [](auto & x, auto & y) { return x.first < y.first; });
        // scale so the first coefficient is +-1; a negative scale flips the relation
        auto key = c.coefficients;
        Rational bound = c.bound;
        Relation rel = c.relation;
        if (! key.empty()) {
            Rational k = 1 / abs(key.front().second);
            for (auto & t : key)
                t.second *= k;
            bound *= k;
        }
        if (rel == Relation::le) {
            for (auto & t : key)
                t.second = -t.second;
            bound = -bound;
            rel = Relation::ge;
        }
        if (rel == Relation::eq && ! key.empty() && key.front().second < 0) {
            for (auto & t : key)
                t.second = -t.second;
            bound = -bound;
        }
        auto [it, fresh] = _seen.try_emplace({key, rel}, _constraints.size());
        if (fresh) {
            _constraints.push_back(std::move(c));
            return true;
        }
        if (rel == Relation::eq)
            return false;
        // same normal: keep whichever ">=" bound is larger
        auto & old = _constraints[it->second];
        auto old_key = old.coefficients;
        Rational old_bound = old.bound;
        if (! old_key.empty())
            old_bound /= abs(old_key.front().second);
        if (old.relation == Relation::le)
            old_bound = -old_bound;
        if (bound > old_bound) {
            old = std::move(c);
            return true;
        }
        return false;
    }

    auto LinearProgram::subset(const std::vector<std::size_t> & keep) const -> LinearProgram
    {
        LinearProgram out;
        out._variables = _variables;
        out._index = _index;
        out.notes = notes;
        for (auto i : keep)
            out._constraints.push_back(_constraints.at(i));
        return out;
    }

    auto LinearProgram::describe(std::size_t index) const -> std::string
    {
        auto & c = _constraints.at(index);
        std::string s;
        for (auto & [v, k] : c.coefficients) {
            if (! s.empty())
                s += k < 0 ? " - " : " + ";
            else if (k < 0)
                s += "-";
            if (abs(k) != 1)
                s += cyclic::to_string(Rational(abs(k))) + " ";
            s += _variables[v];
        }
        if (s.empty())
            s = "0";
        return s + " " + to_string(c.relation) + " " + cyclic::to_string(c.bound) + "  [" + c.provenance + "]";
    }

    auto table_point(const RuleTable & table) -> Assignment
    {
        Assignment a;
        for (int i = 0; i < table.size(); ++i)
            a.emplace(table.name(i), table.values()[i]);
        return a;
    }

    auto generate_constraints(const RuleTable & table, const GenerateOptions & options) -> LinearProgram
    {
        LinearProgram lp;
        AuditOptions audit;
        audit.catalog = options.catalog;
        audit.violation_cap = options.violation_cap;
        audit.max_violations = 0;
        audit.margin = options.margin;
        audit.on_constraint = [&](const std::string & family, const std::string & context, const LinearForm & form) {
            Constraint c;
            for (auto & [id, k] : form.terms())
                c.coefficients.emplace_back(lp.variable(table.name(id)), k);
            c.relation = Relation::ge;
            c.bound = -form.constant();
            c.provenance = family + " " + context;
            lp.add(std::move(c));
        };
        for (auto f : options.families)
            for (auto & report : run_audit(table, f, audit))
                if (report.violation_count_capped)
                    lp.notes.push_back(report.family + " stopped after " + std::to_string(report.violation_count) + " violating cases");
        return lp;
    }

    namespace
    {
        auto value_at(const Constraint & c, const std::vector<const Rational *> & x) -> Rational
        {
            Rational s = 0;
            for (auto & [v, k] : c.coefficients)
                s += k * *x[v];
            return s;
        }

        auto holds(Relation r, const Rational & lhs, const Rational & bound) -> bool
        {
            switch (r) {
            case Relation::ge: return lhs >= bound;
            case Relation::le: return lhs <= bound;
            case Relation::eq: return lhs == bound;
            }
            return false;
        }
    }

    auto check_point(const LinearProgram & lp, const Assignment & a) -> std::vector<std::size_t>
    {
        std::vector<const Rational *> x;
        for (auto & name : lp.variables()) {
            auto it = a.find(name);
            if (it == a.end())
                throw std::invalid_argument("no value for variable " + name);
            x.push_back(&it->second);
        }
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < lp.constraints().size(); ++i) {
            auto & c = lp.constraints()[i];
            if (! holds(c.relation, value_at(c, x), c.bound))
                bad.push_back(i);
        }
        return bad;
    }

    auto verify_certificate(const LinearProgram & lp, const std::vector<Rational> & y) -> bool
    {
        auto & cs = lp.constraints();
        if (y.size() != cs.size())
            return false;
        std::vector<Rational> combined(lp.variables().size());
        Rational bound = 0;
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if ((cs[i].relation == Relation::ge && y[i] < 0) || (cs[i].relation == Relation::le && y[i] > 0))
                return false;
            for (auto & [v, k] : cs[i].coefficients)
                combined[v] += y[i] * k;
            bound += y[i] * cs[i].bound;
        }
        return std::all_of(combined.begin(), combined.end(), [](auto & k) { return k == 0; }) && bound > 0;
    }

    namespace
    {
        /// Dense exact tableau with Bland's rule.
        struct Tableau
        {
            std::vector<std::vector<Rational>> rows;  // last entry of every row is the right-hand side
            std::vector<int> basic;
            std::size_t pivots = 0;

            auto pivot(std::size_t r, std::size_t c) -> void
            {
                ++pivots;
                auto & p = rows[r];
                Rational inv = 1 / p[c];
                for (auto & e : p)
                    if (e != 0)
                        e *= inv;
                std::vector<std::size_t> nz;
                for (std::size_t j = 0; j < p.size(); ++j)
                    if (p[j] != 0)
                        nz.push_back(j);
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (i == r || rows[i][c] == 0)
                        continue;
                    Rational k = rows[i][c];
                    for (auto j : nz)
                        rows[i][j] -= k * p[j];
                }
                if (r < basic.size())
                    basic[r] = static_cast<int>(c);
            }
        };
    }

    auto solve_feasible(const LinearProgram & lp) -> SolveResult
    {
        // Every constraint as rows a.x >= b. The Farkas program max b.y s.t. A^T y = 0, sum y <= 1, y >= 0
        // has optimum zero exactly when a.x >= b is feasible; its simplex multipliers are then a point.
        struct Row
        {
            std::size_t source;
            int sign;
        };
        std::vector<Row> rows;
        for (std::size_t i = 0; i < lp.constraints().size(); ++i) {
            auto r = lp.constraints()[i].relation;
            if (r != Relation::le)
                rows.push_back({i, 1});
            if (r != Relation::ge)
                rows.push_back({i, -1});
        }
        std::size_t n = lp.variables().size(), m = rows.size();
        std::size_t sigma = m, art = m + 1, width = m + 1 + n + 1;
        Tableau t;
        t.rows.assign(n + 2, std::vector<Rational>(width));
        for (std::size_t j = 0; j < m; ++j) {
            auto & c = lp.constraints()[rows[j].source];
            for (auto & [v, k] : c.coefficients)
                t.rows[v][j] = rows[j].sign * k;
            t.rows[n][j] = 1;
            t.rows[n + 1][j] = rows[j].sign * c.bound;  // reduced costs of the maximisation
        }
        for (std::size_t v = 0; v < n; ++v) {
            t.rows[v][art + v] = 1;
            t.basic.push_back(static_cast<int>(art + v));
        }
        t.rows[n][sigma] = 1;
        t.rows[n][width - 1] = 1;
        t.basic.push_back(static_cast<int>(sigma));

        // the artificial rows have zero right-hand sides, so driving them out is degenerate
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t c = 0; c < m; ++c)
                if (t.rows[v][c] != 0) {
                    t.pivot(v, c);
                    break;
                }

        auto & red = t.rows[n + 1];
        for (;;) {
            std::size_t enter = width;
            for (std::size_t c = 0; c <= sigma; ++c)
                if (red[c] > 0) {
                    enter = c;
                    break;
                }
            if (enter == width)
                break;
            std::size_t leave = n + 1;
            Rational best;
            for (std::size_t r = 0; r <= n; ++r) {
                auto & e = t.rows[r][enter];
                if (e <= 0)
                    continue;
                Rational ratio = t.rows[r].back() / e;
                if (leave == n + 1 || ratio < best || (ratio == best && t.basic[r] < t.basic[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
            if (leave == n + 1)
                throw std::logic_error("Farkas program unbounded");
            t.pivot(leave, enter);
        }

        SolveResult out;
        out.pivots = t.pivots;
        Rational value = -red.back();
        if (value > 0) {
            out.certificate.assign(lp.constraints().size(), 0);
            for (std::size_t r = 0; r <= n; ++r)
                if (static_cast<std::size_t>(t.basic[r]) < m) {
                    auto & row = rows[t.basic[r]];
                    out.certificate[row.source] += row.sign * t.rows[r].back();
                }
            if (! verify_certificate(lp, out.certificate))
                throw std::logic_error("simplex produced an invalid certificate");
            return out;
        }
        out.feasible = true;
        for (std::size_t v = 0; v < n; ++v)
            out.point.emplace(lp.variables()[v], -red[art + v]);
        if (! check_point(lp, out.point).empty())
            throw std::logic_error("simplex produced an infeasible point");
        return out;
    }

    auto infeasible_core(const LinearProgram & lp) -> std::vector<std::size_t>
    {
        auto first = solve_feasible(lp);
        if (first.feasible)
            throw std::invalid_argument("program is feasible");
        // the certificate's support is already infeasible; filter it down to minimal
        std::vector<std::size_t> core;
        for (std::size_t i = 0; i < first.certificate.size(); ++i)
            if (first.certificate[i] != 0)
                core.push_back(i);
        for (std::size_t k = 0; k < core.size();) {
            auto trial = core;
            trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
            if (! solve_feasible(lp.subset(trial)).feasible)
                core = std::move(trial);
            else
                ++k;
        }
        return core;
    }

    auto lp_name(std::string_view key) -> std::string
    {
        std::string s = "r_";
        for (char ch : key)
            s += ch == '-' ? 'm' : ch;
        return s;
    }

    auto write_lp_format(const LinearProgram & lp) -> std::string
    {
        std::ostringstream out;
        out << "\\ rule-amount feasibility program, " << lp.constraints().size() << " constraints\n";
        for (auto & note : lp.notes)
            out << "\\ note: " << note << "\n";
        out << "Minimize\n obj:";
        if (lp.variables().empty())
            out << " 0";
        else
            out << " 0 " << lp_name(lp.variables().front());
        out << "\nSubject To\n";
        std::size_t index = 0;
        for (auto & c : lp.constraints()) {
            mpz_class scale = c.bound.get_den();
            for (auto & [v, k] : c.coefficients)
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), k.get_den().get_mpz_t());
            out << "\\ @ " << c.provenance << "\n c" << ++index << ":";
            if (c.coefficients.empty())
                out << " 0 " << lp_name(lp.variables().empty() ? "zero" : lp.variables().front());
            for (auto & [v, k] : c.coefficients) {
                Rational q = k * scale;
                out << (q < 0 ? " - " : " + ") << abs(q) << " " << lp_name(lp.variables()[v]);
            }
            Rational b = c.bound * scale;
            out << " " << to_string(c.relation) << " " << b << "\n";
        }
        out << "Bounds\n";
        for (auto & v : lp.variables())
            out << " " << lp_name(v) << " free\n";
        out << "End\n";
        return out.str();
    }

    auto read_lp_format(std::string_view text, const std::vector<std::string> & known) -> LinearProgram
    {
        std::map<std::string, std::string> back;
        for (auto & k : known)
            back.emplace(lp_name(k), k);
        auto original = [&](const std::string & s) {
            auto it = back.find(s);
            return it != back.end() ? it->second : s;
        };

        LinearProgram lp;
        std::istringstream in{std::string(text)};
        std::string line, section, provenance;
        int number = 0;
        auto fail = [&](const std::string & why) { throw std::invalid_argument("line " + std::to_string(number) + ": " + why); };
        while (std::getline(in, line)) {
            ++number;
            if (line.rfind("\\ note: ", 0) == 0) {
                lp.notes.push_back(line.substr(8));
                continue;
            }
            if (line.rfind("\\ @ ", 0) == 0) {
                provenance = line.substr(4);
                continue;
            }
            if (auto cut = line.find('\\'); cut != std::string::npos)
                line.erase(cut);
            std::istringstream words(line);
            std::vector<std::string> w;
            for (std::string s; words >> s;)
                w.push_back(s);
            if (w.empty())
                continue;
            if (line[0] != ' ' && line[0] != '\t') {
                section = line.substr(0, line.find_last_not_of(" \t\r") + 1);
                if (section == "End")
                    break;
                continue;
            }
            if (section == "Bounds") {
                if (w.size() != 2 || w[1] != "free")
                    fail("only free bounds are supported");
                lp.variable(original(w[0]));
                continue;
            }
            if (section != "Subject To")
                continue;
            Constraint c;
            std::size_t i = w[0].back() == ':' ? 1 : 0;
            Rational sign = 1, k = 1;
            bool have_k = false;
            std::map<int, Rational> terms;
            for (; i < w.size(); ++i) {
                auto & tok = w[i];
                if (tok == ">=" || tok == "<=" || tok == "=") {
                    c.relation = tok == ">=" ? Relation::ge : tok == "<=" ? Relation::le : Relation::eq;
                    if (i + 2 != w.size())
                        fail("expected a single right-hand side");
                    c.bound = parse_rational(w[i + 1]);
                    break;
                }
                if (tok == "+" || tok == "-") {
                    sign = tok == "-" ? -1 : 1;
                    continue;
                }
                if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
                    k = parse_rational(tok);
                    have_k = true;
                    continue;
                }
                terms[lp.variable(original(tok))] += sign * (have_k ? k : Rational(1));
                sign = 1;
                have_k = false;
            }
            if (i == w.size())
                fail("constraint without relation");
            for (auto & [v, q] : terms)
                if (q != 0)
                    c.coefficients.emplace_back(v, q);
            c.provenance = std::move(provenance);
            provenance.clear();
            lp.add(std::move(c));
        }
        return lp;
    }

    auto round_to_rational(double x, long max_denominator) -> Rational
    {
        if (! std::isfinite(x))
            throw std::invalid_argument("cannot round a non-finite value");
        // continued-fraction convergents, then the best semiconvergent within the bound
        long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        double r = x;
        for (int step = 0; step < 64; ++step) {
            double a = std::floor(r);
            if (std::abs(a) > 1e15)
                break;
            long ai = static_cast<long>(a);
            long q2 = q0 + ai * q1;
            if (q2 > max_denominator) {
                long t = (max_denominator - q0) / q1;
                Rational semi = make_rational(p0 + t * p1, q0 + t * q1), conv = make_rational(p1, q1);
                return abs(semi - x) < abs(conv - x) ? semi : conv;
            }
            long p2 = p0 + ai * p1;
            p0 = p1, q0 = q1, p1 = p2, q1 = q2;
            if (r - a < 1e-15)
                break;
            r = 1 / (r - a);
        }
        return make_rational(p1, q1);
    }
}
