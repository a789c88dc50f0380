// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when any criterion fails.
#include "support.hh"

#include <cyclic/audit.hh>
#include <cyclic/discharge.hh>
#include <cyclic/lp.hh>
#include <cyclic/reducibility.hh>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

using namespace cyclic;

namespace
{
    struct Outcome
    {
        bool pass = true;
        std::ostringstream detail;

        auto require(bool ok, const std::string & what) -> void
        {
            if (! ok) {
                pass = false;
                detail << " [failed: " << what << "]";
            }
        }
    };

    const std::vector<int> deltas{16, 17};

    auto rule_feasibility() -> Outcome
    {
        Outcome out;
        auto catalog = ForbiddenPatternCatalog::standard();
        for (int delta : deltas) {
            auto table = RuleTable::reference(delta);
            GenerateOptions options;
            options.catalog = &catalog;
            auto lp = generate_constraints(table, options);
            auto bad = check_point(lp, table_point(table));
            out.detail << " delta " << delta << ": " << bad.size() << " of " << lp.constraints().size() << " violated";
            if (! bad.empty()) {
                auto worst = *std::min_element(bad.begin(), bad.end(), [&](std::size_t a, std::size_t b) {
                    return lp.constraints()[a].provenance < lp.constraints()[b].provenance;
                });
                out.detail << " (e.g. " << lp.constraints()[worst].provenance << ")";
            }
            out.require(bad.empty(), "delta " + std::to_string(delta));
        }
        return out;
    }

    auto charge_audit() -> Outcome
    {
        Outcome out;
        auto catalog = ForbiddenPatternCatalog::standard();
        AuditOptions options;
        options.catalog = &catalog;
        options.max_violations = 1;
        for (int delta : deltas) {
            auto table = RuleTable::reference(delta);
            std::vector<std::string> red;
            for (auto family : all_families())
                for (auto & r : run_audit(table, family, options)) {
                    if (! r.ok())
                        red.push_back(r.family + " " + std::to_string(r.violation_count) + (r.violation_count_capped ? "+" : "") +
                                      " min " + to_string(*r.min_charge));
                    if (family == AuditFamily::large_faces)
                        out.require(r.min_charge && *r.min_charge == 0, "large faces not exactly tight at delta " + std::to_string(delta));
                }
            out.detail << " delta " << delta << ": ";
            if (red.empty())
                out.detail << "all families clean";
            for (std::size_t i = 0; i < red.size(); ++i)
                out.detail << (i ? ", " : "") << red[i];
            out.require(red.empty(), "violations at delta " + std::to_string(delta));
        }
        return out;
    }

    auto conservation() -> Outcome
    {
        Outcome out;
        for (int delta : deltas) {
            auto table = RuleTable::reference(delta);
            for (auto name : {"k4", "cube", "wheel5", "dodecahedron", "prism5"}) {
                auto g = testing::corpus_graph(name);
                auto ledger = apply_rules(g, table);
                bool edges = std::all_of(ledger.edge.begin(), ledger.edge.end(), [](const Rational & e) { return e == 0; });
                out.require(initial_ledger(g).total() == -8, std::string(name) + " initial total");
                out.require(ledger.total() == -8, std::string(name) + " final total");
                out.require(edges, std::string(name) + " edge balance");
            }
        }
        out.detail << " five graphs at delta 16 and 17";
        return out;
    }

    auto reducibility() -> Outcome
    {
        Outcome out;
        auto pair = parse_reduction_file(testing::data_file("configs/eight0.conf"));
        for (int delta : deltas) {
            auto v = check_reducible(pair, delta);
            out.detail << " delta " << delta << ": " << (v.reducible ? "REDUCIBLE" : "NOT_REDUCED") << " over " << v.scenarios
                       << " scenarios;";
            out.require(v.reducible, "eight0 at delta " + std::to_string(delta));
        }
        auto weak = pair;
        weak.reduced.faces.pop_back();
        weak.reduced.m = 4;
        auto v = check_reducible(weak, 16);
        bool replay = v.witness && extends(weak, weak.reduced, *v.witness) && ! extends(weak, weak.original, *v.witness);
        out.require(! v.reducible && replay, "mutation witness");
        out.detail << " mutation: " << (v.reducible ? "REDUCIBLE" : "NOT_REDUCED") << (replay ? ", witness replays" : "") << ";";

        std::string block = "1 1\n0 abcd 1\n";
        auto identity = parse_reduction_file(block + block);
        long long n = enumerate_scenarios(identity, 16, [](auto &) { return true; });
        // 4 letters in at most 18 colours: Bell(4)
        out.require(n == 15, "letter-only scenario count");
        out.require(check_reducible(identity, 16).reducible, "identity pair");
        out.detail << " identity pair reducible, " << n << " letter-only scenarios";
        return out;
    }

    auto oracles() -> Outcome
    {
        Outcome out;
        auto k4 = testing::corpus_graph("k4");
        int chi = cyclic_chromatic_number(k4);
        out.require(chi == 4, "k4 cyclic chromatic number");
        out.detail << " k4: " << chi << ";";
        for (auto & name : testing::corpus) {
            auto g = testing::corpus_graph(name);
            int bound = g.max_face_size() + 2;
            auto c = brute_force_cyclic_coloring(g, bound);
            out.require(c && check_cyclic_coloring(g, *c), name + " within max face + 2");
            int low = cyclic_chromatic_number(g);
            auto d = brute_force_cyclic_coloring(g, low);
            out.require(d && check_cyclic_coloring(g, *d), name + " oracle colouring");
            out.detail << " " << name << " " << low << "<=" << bound;
        }
        return out;
    }

    auto is_minimal_core(const LinearProgram & lp, const std::vector<std::size_t> & core) -> bool
    {
        if (solve_feasible(lp.subset(core)).feasible)
            return false;
        for (std::size_t drop = 0; drop < core.size(); ++drop) {
            auto keep = core;
            keep.erase(keep.begin() + static_cast<long>(drop));
            if (! solve_feasible(lp.subset(keep)).feasible)
                return false;
        }
        return true;
    }

    auto lp_engine() -> Outcome
    {
        Outcome out;
        std::mt19937 rng(6);
        std::uniform_int_distribution<long> coef(-3, 3), bound(-4, 4), rel(0, 5);
        int feasible = 0, infeasible = 0;
        for (int trial = 0; trial < 500; ++trial) {
            LinearProgram lp;
            for (int row = 0; row < 2 + trial % 6; ++row) {
                Constraint c;
                for (auto name : {"x", "y", "z"})
                    if (long k = coef(rng); k != 0)
                        c.coefficients.emplace_back(lp.variable(name), Rational(k));
                if (c.coefficients.empty())
                    continue;
                std::sort(c.coefficients.begin(), c.coefficients.end());
                int r = rel(rng);
                c.relation = r < 3 ? Relation::ge : r < 5 ? Relation::le : Relation::eq;
                c.bound = bound(rng);
                lp.add(c);
            }
            auto s = solve_feasible(lp);
            if (s.feasible) {
                ++feasible;
                out.require(check_point(lp, s.point).empty(), "synthetic point " + std::to_string(trial));
            }
            else {
                ++infeasible;
                out.require(verify_certificate(lp, s.certificate), "synthetic certificate " + std::to_string(trial));
                out.require(is_minimal_core(lp, infeasible_core(lp)), "synthetic core " + std::to_string(trial));
            }
        }
        out.detail << " synthetic: " << feasible << " feasible, " << infeasible << " infeasible;";

        auto table = RuleTable::reference(16);
        auto catalog = ForbiddenPatternCatalog::standard();
        GenerateOptions options;
        options.catalog = &catalog;
        options.families = {AuditFamily::small_vertices, AuditFamily::big_vertices, AuditFamily::large_faces};
        auto lp = generate_constraints(table, options);
        auto s = solve_feasible(lp);
        out.require(s.feasible && check_point(lp, s.point).empty(), "generated vertex system point");
        out.detail << " generated " << lp.constraints().size() << " constraints " << (s.feasible ? "feasible" : "infeasible") << ";";

        Constraint forced;
        forced.coefficients = {{lp.variable(rule_keys::weak(14)), Rational(1)}};
        forced.bound = 2;
        forced.provenance = "forced";
        auto bad = lp;
        bad.add(forced);
        auto t = solve_feasible(bad);
        bool certified = ! t.feasible && verify_certificate(bad, t.certificate);
        out.require(certified, "generated infeasible certificate");
        if (certified) {
            auto core = infeasible_core(bad);
            out.require(is_minimal_core(bad, core), "generated core minimality");
            out.detail << " forced weak_14 >= 2: core of " << core.size();
        }
        return out;
    }
}

int main(int argc, char ** argv)
{
    struct Criterion
    {
        const char * title;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria{
        {"rule-table feasibility", rule_feasibility},
        {"charge audit", charge_audit},
        {"conservation", conservation},
        {"reducibility", reducibility},
        {"oracle properties", oracles},
        {"lp engine properties", lp_engine},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int number = static_cast<int>(i) + 1;
        if (! only.empty() && ! only.contains(number))
            continue;
        auto start = std::chrono::steady_clock::now();
        auto out = criteria[i].run();
        auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all &= out.pass;
        std::cout << "criterion " << number << " " << criteria[i].title << ": " << (out.pass ? "PASS" : "FAIL") << out.detail.str()
                  << " (" << static_cast<int>(seconds) << "s)" << std::endl;
    }
    return all ? 0 : 1;
}
