#pragma once

#include <cyclic/audit.hh>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace cyclic::detail
{
    /// Interned linear forms with their value at the table, held as exact integers over a common scale.
    class Pool
    {
    public:
        explicit Pool(const RuleTable & t) : table(t)
        {
            mpz_class l = 8;
            auto fold = [&](const mpz_class & d) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t()); };
            for (auto & v : t.values())
                fold(v.get_den());
            for (int k = 2; k <= t.delta() + 8; ++k)
                fold(k);
            if (! l.fits_slong_p() || l > mpz_class(1) << 46)
                throw std::overflow_error("rule table denominators too large for scaled evaluation");
            _scale = l;
        }

        const RuleTable & table;

        auto intern(const LinearForm & f) -> int
        {
            auto [it, fresh] = _index.try_emplace(f, static_cast<int>(_forms.size()));
            if (fresh) {
                _forms.push_back(f);
                mpq_class v = f.evaluate(table.values()) * _scale;
                if (v.get_den() != 1 || ! v.get_num().fits_slong_p())
                    throw std::logic_error("form value not representable at the common scale");
                _value.push_back(v.get_num().get_si());
            }
            return it->second;
        }

        auto constant(const Rational & q) -> int { return intern(LinearForm(q)); }
        auto form(int id) const -> const LinearForm & { return _forms[id]; }
        auto value(int id) const -> std::int64_t { return _value[id]; }
        auto exact(std::int64_t scaled) const -> Rational
        {
            Rational q(mpz_class(static_cast<long>(scaled)), _scale);
            q.canonicalize();
            return q;
        }
        auto scaled(const Rational & q) const -> std::int64_t
        {
            mpq_class v = q * _scale;
            if (v.get_den() != 1)
                throw std::logic_error("value not representable at the common scale");
            return v.get_num().get_si();
        }

        /// Least scaled integer at or above q.
        auto scaled_ceil(const Rational & q) const -> std::int64_t
        {
            mpq_class v = q * _scale;
            mpz_class c;
            mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
            return c.get_si();
        }

        auto sum(const std::vector<int> & ids) const -> LinearForm
        {
            LinearForm f;
            for (auto id : ids)
                f += _forms[id];
            return f;
        }
        auto value_of(const std::vector<int> & ids) const -> std::int64_t
        {
            std::int64_t s = 0;
            for (auto id : ids)
                s += _value[id];
            return s;
        }

    private:
        mpz_class _scale;
        std::vector<LinearForm> _forms;
        std::vector<std::int64_t> _value;
        std::map<LinearForm, int> _index;
    };

    struct IdsHash
    {
        auto operator()(const std::vector<int> & v) const noexcept -> std::size_t
        {
            std::size_t h = 1469598103934665603ULL;
            for (auto x : v)
                h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
            return h;
        }
    };

    /// Bookkeeping shared by every family: counts, violations, case records and constraint emission.
    class Recorder
    {
    public:
        Recorder(std::string family, Pool & p, const AuditOptions & o) : pool(p), options(o), _family(std::move(family))
        {
            report.family = _family;
        }

        Pool & pool;
        const AuditOptions & options;
        AuditReport report;

        auto wants_records() const -> bool { return static_cast<bool>(options.on_case); }
        auto wants_constraints() const -> bool { return static_cast<bool>(options.on_constraint); }
        auto stopped() const -> bool { return options.violation_cap && report.violation_count >= options.violation_cap; }

        auto discard(const std::string & pattern, const std::function<std::string()> & context) -> void
        {
            ++report.discarded;
            ++report.discarded_by[pattern];
            if (options.on_case)
                options.on_case({_family, context(), std::nullopt, pattern});
        }

        auto skip() -> void { ++report.skipped; }

        auto count(std::uint64_t n = 1) -> void { report.cases += n; }

        auto observe(std::int64_t value, const std::function<std::string()> & context) -> void
        {
            if (! min_value || value < *min_value) {
                min_value = value;
                report.min_context = context();
            }
        }

        auto violation(std::int64_t value, const std::function<std::string()> & context, std::uint64_t n = 1) -> void
        {
            report.violation_count += n;
            // keep the worst ones: collect up to twice the limit, then cut back
            if (options.max_violations && (report.violations.size() < options.max_violations || value < worst_kept)) {
                report.violations.push_back({_family, context(), pool.exact(value)});
                if (report.violations.size() >= 2 * options.max_violations)
                    trim();
                if (report.violations.size() >= options.max_violations)
                    worst_kept = pool.scaled(std::max_element(report.violations.begin(), report.violations.end(),
                        [](auto & a, auto & b) { return a.charge < b.charge; })->charge);
            }
            if (stopped())
                report.violation_count_capped = true;
        }

        auto emit(std::vector<int> ids, const std::function<std::string()> & context) -> void
        {
            std::sort(ids.begin(), ids.end());
            if (_seen.insert(ids).second)
                options.on_constraint(_family, context(), pool.sum(ids));
        }

        /// One case whose final charge is the sum of the given interned forms.
        auto record(std::vector<int> ids, std::int64_t value, const std::function<std::string()> & context) -> void
        {
            count();
            observe(value, context);
            if (value < 0)
                violation(value, context);
            if (options.on_case)
                options.on_case({_family, context(), pool.exact(value), value < 0 ? "violation" : "ok"});
            if (options.on_constraint)
                emit(std::move(ids), context);
        }

        auto finish() -> AuditReport
        {
            if (min_value)
                report.min_charge = pool.exact(*min_value);
            trim();
            return std::move(report);
        }

    private:
        std::string _family;
        std::optional<std::int64_t> min_value;
        std::int64_t worst_kept = 0;

        auto trim() -> void
        {
            auto & v = report.violations;
            std::sort(v.begin(), v.end(), [](auto & a, auto & b) { return a.charge != b.charge ? a.charge < b.charge : a.context < b.context; });
            if (v.size() > options.max_violations)
                v.resize(options.max_violations);
        }
        std::unordered_set<std::vector<int>, IdsHash> _seen;
    };

    inline auto join(const std::vector<int> & v, char sep = ',') -> std::string
    {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i)
                s += sep;
            s += std::to_string(v[i]);
        }
        return s;
    }

    inline auto catalog_of(const AuditOptions & o) -> const ForbiddenPatternCatalog &
    {
        static const auto standard = ForbiddenPatternCatalog::standard();
        return o.catalog ? *o.catalog : standard;
    }
}
