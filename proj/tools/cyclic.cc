#include <cyclic/audit.hh>
#include <cyclic/config_lang.hh>
#include <cyclic/lp.hh>
#include <cyclic/plane_graph.hh>
#include <cyclic/reducibility.hh>
#include <cyclic/rules.hh>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace cyclic;

namespace
{
    enum Exit
    {
        verified = 0,
        failed = 1,
        input_error = 2
    };

    struct InputError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    auto read_file(const std::string & path) -> std::string
    {
        std::ifstream in(path);
        if (! in)
            throw InputError("cannot read " + path);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto write_file(const std::string & path, const std::string & text) -> void
    {
        std::ofstream out(path);
        if (! out || ! (out << text))
            throw InputError("cannot write " + path);
    }

    auto default_workers() -> int
    {
        if (const char * env = std::getenv("CYCLIC_WORKERS"))
            try {
                return std::max(1, std::stoi(env));
            }
            catch (const std::exception &) {
            }
        return 1;
    }

    /// Options every verification subcommand shares.
    struct Common
    {
        int delta = 16;
        bool experimental = false;
        std::vector<std::string> overrides;
        std::string format = "text";

        auto add_to(CLI::App & app, bool with_table = true) -> void
        {
            app.add_option("--delta", delta, "maximum face size of the minimal counterexample")->default_val(16);
            app.add_flag("--experimental-delta", experimental, "allow a maximum face size other than 16 or 17 (unverified)");
            app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "machine"}))->default_val("text");
            if (with_table)
                app.add_option("--set", overrides, "override a rule constant, key=value");
        }

        auto check_delta() const -> void
        {
            if (! experimental && delta != 16 && delta != 17)
                throw InputError("--delta must be 16 or 17 (use --experimental-delta for others)");
        }

        auto table() const -> RuleTable
        {
            check_delta();
            auto t = RuleTable::reference(delta);
            for (auto & o : overrides) {
                auto eq = o.find('=');
                if (eq == std::string::npos || ! t.has(o.substr(0, eq)))
                    throw InputError("bad override " + o);
                t = t.with_value(o.substr(0, eq), parse_rational(o.substr(eq + 1)));
            }
            return t;
        }
    };

    auto table_banner(const RuleTable & t) -> std::string
    {
        std::string s = "delta " + std::to_string(t.delta()) + " rules " + t.hash();
        if (t.delta() != 16 && t.delta() != 17)
            s += " (experimental, unverified)";
        return s;
    }

    auto cmd_check_config(const Common & common, const std::vector<std::string> & paths, int workers, const std::string & state) -> int
    {
        common.check_delta();
        int worst = verified;
        for (auto & path : paths) {
            ReductionPair pair;
            try {
                pair = parse_reduction_file(read_file(path));
            }
            catch (const ConfigParseError & e) {
                std::cerr << path << ": " << e.what() << "\n";
                return input_error;
            }
            if (auto problems = validate(pair, common.delta); ! problems.empty()) {
                for (auto & p : problems)
                    std::cerr << path << ": " << p << "\n";
                return input_error;
            }
            ReducibilityOptions options;
            options.workers = workers;
            std::string state_file = state.empty() ? "" : state + "." + std::to_string(common.delta);
            if (! state_file.empty())
                if (std::ifstream in(state_file); in)
                    in >> options.start_at;
            if (! state_file.empty())
                options.progress = [&](long long done) { write_file(state_file, std::to_string(done) + "\n"); };
            auto v = check_reducible(pair, common.delta, options);
            if (! state_file.empty())
                std::remove(state_file.c_str());
            if (common.format == "machine")
                std::cout << path << "\t" << common.delta << "\t" << (v.reducible ? "REDUCIBLE" : "NOT_REDUCED") << "\t" << v.scenarios << "\n";
            else
                std::cout << path << ": " << (v.reducible ? "REDUCIBLE" : "NOT_REDUCED") << " at delta " << common.delta << ", " << v.scenarios
                          << " boundary scenarios, " << v.reduced_extendable << " extend to the reduced block\n";
            if (common.format != "machine")
                std::cout << "  note: the contraction must leave a 3-connected graph; this is not checked here\n";
            if (! v.reducible) {
                std::cout << "  witness #" << v.witness_index << ": " << format_scenario(*v.witness) << "\n";
                worst = failed;
            }
        }
        return worst;
    }

    auto families_of(const std::vector<std::string> & names) -> std::vector<AuditFamily>
    {
        std::vector<AuditFamily> out;
        auto add = [&](AuditFamily f) {
            if (std::find(out.begin(), out.end(), f) == out.end())
                out.push_back(f);
        };
        for (auto & n : names) {
            if (n == "all")
                for (auto f : all_families())
                    add(f);
            else if (n == "vertices")
                add(AuditFamily::small_vertices), add(AuditFamily::big_vertices);
            else if (n == "faces")
                add(AuditFamily::small_faces), add(AuditFamily::mid_faces), add(AuditFamily::large_faces);
            else if (auto f = parse_family(n))
                add(*f);
            else
                throw InputError("unknown family " + n);
        }
        if (names.empty())
            return all_families();
        return out;
    }

    struct CatalogChoice
    {
        bool none = false;
        std::string path;
        std::optional<ForbiddenPatternCatalog> loaded;

        auto get() -> const ForbiddenPatternCatalog *
        {
            if (none)
                loaded = ForbiddenPatternCatalog::empty();
            else if (! path.empty())
                try {
                    loaded = ForbiddenPatternCatalog::parse(read_file(path));
                }
                catch (const CatalogError & e) {
                    throw InputError(path + ": " + e.what());
                }
            return loaded ? &*loaded : nullptr;
        }
    };

    auto cmd_audit(const Common & common, const std::vector<std::string> & family_names, CatalogChoice & catalog, std::size_t show) -> int
    {
        auto table = common.table();
        AuditOptions options;
        options.catalog = catalog.get();
        options.max_violations = show;
        bool machine = common.format == "machine";
        if (machine)
            options.on_case = [](const CaseRecord & r) {
                std::cout << r.family << "\t" << r.context << "\t" << (r.charge ? to_string(*r.charge) : "-") << "\t" << r.verdict << "\n";
            };
        std::cout << (machine ? "# " : "") << table_banner(table) << "\n";
        bool clean = true;
        for (auto family : families_of(family_names))
            for (auto & r : run_audit(table, family, options)) {
                clean = clean && r.ok();
                std::ostringstream s;
                s << r.family << ": " << (r.ok() ? "ok" : "VIOLATIONS") << ", " << r.cases << " cases, " << r.discarded << " discarded, "
                  << r.skipped << " closed by bound, " << r.violation_count << (r.violation_count_capped ? "+" : "") << " violations";
                if (r.min_charge)
                    s << ", least charge " << to_string(*r.min_charge) << " at " << r.min_context;
                for (auto & [p, n] : r.discarded_by)
                    s << "\n  discarded by " << p << ": " << n;
                for (auto & v : r.violations)
                    s << "\n  violation " << to_string(v.charge) << " at " << v.context;
                auto text = s.str();
                if (machine)
                    for (std::size_t at = 0; at != std::string::npos;) {
                        auto next = text.find('\n', at);
                        std::cout << "# " << text.substr(at, next == std::string::npos ? next : next - at) << "\n";
                        at = next == std::string::npos ? next : next + 1;
                    }
                else
                    std::cout << text << "\n";
            }
        return clean ? verified : failed;
    }

    auto read_point(const std::string & source, const RuleTable & table, long round) -> Assignment
    {
        if (source == "paper-constants")
            return table_point(table);
        Assignment a;
        std::istringstream in(read_file(source));
        std::string line;
        while (std::getline(in, line)) {
            line.erase(std::min(line.find('#'), line.size()));
            std::istringstream w(line);
            std::string key, value;
            if (! (w >> key))
                continue;
            if (! (w >> value))
                throw InputError(source + ": no value for " + key);
            if (value.find_first_of(".eE") != std::string::npos) {
                if (round <= 0)
                    throw InputError(source + ": decimal value for " + key + " needs --round");
                a[key] = round_to_rational(std::stod(value), round);
            }
            else
                a[key] = parse_rational(value);
        }
        return a;
    }

    auto point_text(const Assignment & a) -> std::string
    {
        std::string s;
        for (auto & [k, v] : a)
            s += k + " " + to_string(v) + "\n";
        return s;
    }

    struct LpArgs
    {
        std::string mode, input, output, point = "paper-constants", certificate;
        std::vector<std::string> families;
        long round = 0;
        std::size_t show = 20;
    };

    auto cmd_lp(const Common & common, LpArgs & args, CatalogChoice & catalog) -> int
    {
        auto table = common.table();
        std::optional<Assignment> point;
        if (args.mode == "check") {
            point = read_point(args.point, table, args.round);
            // a generated system holds the cases tight at its reference constants, so generate at the point itself
            if (args.input.empty())
                for (auto & [key, value] : *point)
                    if (table.has(key))
                        table = table.with_value(key, value);
        }
        LinearProgram lp;
        if (! args.input.empty())
            lp = read_lp_format(read_file(args.input), table.names());
        else {
            GenerateOptions g;
            g.families = families_of(args.families);
            g.catalog = catalog.get();
            lp = generate_constraints(table, g);
        }
        std::cerr << table_banner(table) << ": " << lp.constraints().size() << " constraints over " << lp.variables().size() << " variables\n";
        for (auto & n : lp.notes)
            std::cerr << "note: " << n << "\n";

        if (args.mode == "generate") {
            auto text = write_lp_format(lp);
            if (args.output.empty())
                std::cout << text;
            else
                write_file(args.output, text);
            return verified;
        }
        if (args.mode == "check") {
            std::vector<std::size_t> bad;
            try {
                bad = check_point(lp, *point);
            }
            catch (const std::invalid_argument & e) {
                throw InputError(e.what());
            }
            std::cout << bad.size() << " of " << lp.constraints().size() << " constraints violated\n";
            for (std::size_t i = 0; i < bad.size() && i < args.show; ++i)
                std::cout << "  " << lp.describe(bad[i]) << "\n";
            return bad.empty() ? verified : failed;
        }
        if (args.mode == "solve") {
            auto r = solve_feasible(lp);
            if (r.feasible) {
                std::cout << "feasible after " << r.pivots << " pivots\n";
                if (args.output.empty())
                    std::cout << point_text(r.point);
                else
                    write_file(args.output, point_text(r.point));
                return verified;
            }
            std::string cert;
            for (std::size_t i = 0; i < r.certificate.size(); ++i)
                if (r.certificate[i] != 0)
                    cert += to_string(r.certificate[i]) + "\t" + lp.describe(i) + "\n";
            auto path = args.certificate.empty() ? std::string("infeasible.cert") : args.certificate;
            write_file(path, cert);
            std::cout << "INFEASIBLE after " << r.pivots << " pivots; certificate in " << path << "\n";
            return failed;
        }
        // core
        std::vector<std::size_t> core;
        try {
            core = infeasible_core(lp);
        }
        catch (const std::invalid_argument &) {
            std::cout << "not infeasible\n";
            return input_error;
        }
        std::cout << "infeasible core of " << core.size() << " constraints\n";
        for (auto i : core)
            std::cout << "  " << lp.describe(i) << "\n";
        return verified;
    }

    auto cmd_color(const std::string & path, int k) -> int
    {
        PlaneGraph g;
        try {
            g = parse_graph(read_file(path));
        }
        catch (const GraphError & e) {
            std::cerr << path << ": " << e.what() << "\n";
            return input_error;
        }
        auto c = brute_force_cyclic_coloring(g, k);
        if (! c) {
            std::cout << "no cyclic colouring with " << k << " colours\n";
            return failed;
        }
        for (int v = 0; v < g.vertex_count(); ++v)
            std::cout << v << " " << c->colour[v] << "\n";
        return verified;
    }

    auto cmd_dump_rules(const Common & common) -> int
    {
        auto t = common.table();
        std::cout << "# " << table_banner(t) << "\n";
        for (int i = 0; i < t.size(); ++i)
            std::cout << t.name(i) << " " << to_string(t.values()[i]) << "\n";
        return verified;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Exact verification tools for cyclic colouring discharging proofs"};
    app.require_subcommand(1);
    Common common;
    CatalogChoice catalog;

    auto * check = app.add_subcommand("check-config", "verify reduction pairs");
    std::vector<std::string> paths;
    int workers = default_workers();
    std::string state;
    common.add_to(*check, false);
    check->add_option("paths", paths, "reduction files")->required();
    check->add_option("--workers", workers, "parallel workers (default from CYCLIC_WORKERS)");
    check->add_option("--state", state, "resumable progress file prefix");

    auto * audit = app.add_subcommand("audit", "run the charge audit");
    std::vector<std::string> families;
    std::size_t show = 20;
    common.add_to(*audit);
    audit->add_option("--family", families, "all, vertices, faces, or a family name");
    audit->add_flag("--no-catalog", catalog.none, "disable every forbidden pattern");
    audit->add_option("--catalog", catalog.path, "forbidden pattern catalog file");
    audit->add_option("--show", show, "violations to list per family")->default_val(20);

    auto * lp = app.add_subcommand("lp", "constraint system: generate, check, solve, core");
    LpArgs lp_args;
    common.add_to(*lp);
    lp->add_option("mode", lp_args.mode)->required()->check(CLI::IsMember({"generate", "check", "solve", "core"}));
    lp->add_option("--lp", lp_args.input, "read the system from an LP file instead of generating it");
    lp->add_option("-o,--output", lp_args.output, "output file");
    lp->add_option("--point", lp_args.point, "paper-constants or a file of key value lines")->default_val("paper-constants");
    lp->add_option("--round", lp_args.round, "round decimal point values to this maximum denominator");
    lp->add_option("--certificate", lp_args.certificate, "where solve writes an infeasibility certificate");
    lp->add_option("--family", lp_args.families, "families to generate from");
    lp->add_option("--show", lp_args.show, "violated constraints to list")->default_val(20);
    lp->add_flag("--no-catalog", catalog.none, "disable every forbidden pattern");

    auto * color = app.add_subcommand("color", "find a cyclic colouring");
    std::string graph;
    int k = 0;
    color->add_option("graph", graph, "graph file")->required();
    color->add_option("-k", k, "palette size")->required();

    auto * dump = app.add_subcommand("dump-rules", "print the rule constants");
    common.add_to(*dump);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        return app.exit(e) == 0 ? 0 : input_error;
    }

    try {
        if (*check)
            return cmd_check_config(common, paths, workers, state);
        if (*audit)
            return cmd_audit(common, families, catalog, show);
        if (*lp)
            return cmd_lp(common, lp_args, catalog);
        if (*color)
            return cmd_color(graph, k);
        return cmd_dump_rules(common);
    }
    catch (const InputError & e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "error: " << e.what() << "\n";
        return input_error;
    }
}
