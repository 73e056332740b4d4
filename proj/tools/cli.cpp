#include "cli.hpp"

#include <map>
#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include "gtl/verify.hpp"

namespace gtl::cli {

namespace {

struct Task {
    std::string name;
    std::function<SuiteReport(const ArcSystem&)> body;
};

// Each task owns its oracle, so tasks may run on separate threads.
std::vector<SuiteReport> run_tasks(const ArcSystem& sys, const std::vector<Task>& tasks, int jobs)
{
    std::vector<SuiteReport> reports(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) reports[i] = tasks[i].body(sys);
    };
    const int n = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (n == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return reports;
}

std::vector<PunctureId> punctures(const ArcSystem& sys, const RunConfig& c)
{
    if (c.puncture) return {sys.puncture(*c.puncture)};
    // A scalar file names its own puncture.
    if (c.scalars) return {InputScalars::load(sys, *c.scalars).m};
    std::vector<PunctureId> all;
    for (PunctureId p = 0; p < sys.num_punctures(); ++p) all.push_back(p);
    return all;
}

std::string r_tag(PunctureId m, int r, const ArcSystem& sys)
{
    return " m=" + sys.puncture_name(m) + " r=" + std::to_string(r);
}

SequenceBounds cocycle_bounds(const ArcSystem& sys, const RunConfig& c, int winding)
{
    SequenceBounds b;
    b.max_arity = c.arity.value_or(5);
    b.max_steps = c.winding.value_or(winding);
    (void)sys;
    return b;
}

// Scalar choices tested at m: the file when given, else uniform plus
// everything on the first indecomposable.
std::vector<std::pair<std::string, InputScalars>> scalar_choices(const ArcSystem& sys, const RunConfig& c,
                                                                 PunctureId m)
{
    std::vector<std::pair<std::string, InputScalars>> out;
    if (c.scalars) {
        out.emplace_back("file", InputScalars::load(sys, *c.scalars, m));
        return out;
    }
    out.emplace_back("uniform", InputScalars::uniform(sys, m));
    out.emplace_back("concentrated at " + sys.half_edge_name(sys.first_half_edge(m)),
                     InputScalars::concentrated(sys, sys.first_half_edge(m)));
    return out;
}

void add_ainf(std::vector<Task>& tasks, const RunConfig& c)
{
    SequenceBounds b;
    b.max_arity = c.arity.value_or(6);
    b.max_steps = c.winding.value_or(4);
    tasks.push_back({"a-infinity", [b](const ArcSystem& sys) {
                         CuttingOracle oracle(sys);
                         MuCochain mu(oracle);
                         return suite_a_infinity(mu, b);
                     }});
}

void add_cocycles(std::vector<Task>& tasks, const ArcSystem& sys, const RunConfig& c, const std::string& kind)
{
    const int base_winding = sys.max_valence() + 2;
    if (kind == "id") {
        SequenceBounds b = cocycle_bounds(sys, c, base_winding);
        tasks.push_back({"cocycle id", [b](const ArcSystem& s) {
                             CuttingOracle oracle(s);
                             MuCochain mu(oracle);
                             return suite_cocycle(mu, *nu_id(s), b, {}, "cocycle id");
                         }});
        return;
    }
    if (kind == "sporadic") {
        SequenceBounds b = cocycle_bounds(sys, c, base_winding);
        tasks.push_back({"cocycle sporadic", [b](const ArcSystem& s) {
                             CuttingOracle oracle(s);
                             MuCochain mu(oracle);
                             const auto basis = sporadic_space(oracle).cochains(s);
                             SuiteReport all;
                             all.name = "cocycle sporadic";
                             all.param("representatives", std::to_string(basis.size()));
                             all.param("max_arity", std::to_string(b.max_arity));
                             all.param("max_steps", std::to_string(b.max_steps));
                             for (const auto& nu : basis) {
                                 auto rep = suite_cocycle(mu, *nu, b, {}, "");
                                 all.absorb(rep);
                                 all.seconds += rep.seconds;
                             }
                             return all;
                         }});
        return;
    }
    for (PunctureId m : punctures(sys, c))
        for (int r : c.turns) {
            SequenceBounds b = cocycle_bounds(sys, c, r * sys.valence(m) + 2);
            if (kind == "odd") {
                tasks.push_back({"cocycle odd", [b, m, r](const ArcSystem& s) {
                                     CuttingOracle oracle(s);
                                     MuCochain mu(oracle);
                                     auto garages = parking_garage_sequences(s, m, r, GarageSweep{});
                                     return suite_cocycle(mu, *nu_odd(oracle, m, r), b, garages,
                                                          "cocycle odd" + r_tag(m, r, s));
                                 }});
            } else {
                for (auto [label, scalars] : scalar_choices(sys, c, m))
                    tasks.push_back({"cocycle even", [b, m, r, label, scalars](const ArcSystem& s) {
                                         CuttingOracle oracle(s);
                                         MuCochain mu(oracle);
                                         auto garages = parking_garage_sequences(s, m, r, GarageSweep{});
                                         auto nu = nu_even(oracle, m, r, scalars);
                                         auto rep = suite_cocycle(mu, *nu, b, garages,
                                                                  "cocycle even" + r_tag(m, r, s) + " " + label);
                                         const auto& st = nu->stats();
                                         rep.notes.push_back(
                                             "rules fired: end-split " + std::to_string(st.end_split.load()) +
                                             ", old era " + std::to_string(st.old_era.load()) + ", new era " +
                                             std::to_string(st.new_era.load()) + ", middle split " +
                                             std::to_string(st.middle_split.load()));
                                         return rep;
                                     }});
            }
        }
}

void add_garage(std::vector<Task>& tasks, const ArcSystem& sys, const RunConfig& c)
{
    for (PunctureId m : punctures(sys, c))
        for (int r : c.turns)
            tasks.push_back({"garage", [m, r, c](const ArcSystem& s) {
                                 CuttingOracle oracle(s);
                                 MuCochain mu(oracle);
                                 auto garages = parking_garage_sequences(s, m, r, GarageSweep{});
                                 SequenceBounds none;
                                 none.max_arity = -1;
                                 SuiteReport all;
                                 all.name = "garage" + r_tag(m, r, s);
                                 all.param("sequences", std::to_string(garages.size()));
                                 std::size_t longest = 0;
                                 for (const auto& g : garages) longest = std::max(longest, g.size());
                                 all.param("longest", std::to_string(longest));
                                 auto odd = suite_cocycle(mu, *nu_odd(oracle, m, r), none, garages, "");
                                 all.absorb(odd);
                                 all.seconds += odd.seconds;
                                 for (auto [label, scalars] : scalar_choices(s, c, m)) {
                                     auto even = suite_cocycle(mu, *nu_even(oracle, m, r, scalars), none, garages, "");
                                     all.absorb(even);
                                     all.seconds += even.seconds;
                                 }
                                 return all;
                             }});
}

void add_gauge(std::vector<Task>& tasks, const ArcSystem& sys, const RunConfig& c)
{
    for (PunctureId m : punctures(sys, c))
        for (int r : c.turns) {
            std::vector<std::pair<std::string, InputScalars>> others;
            if (c.scalars) {
                others.emplace_back("file", InputScalars::load(sys, *c.scalars, m));
            }
            for (int i = 0; i < sys.valence(m); ++i) {
                const HalfEdge h = sys.first_half_edge(m) + i;
                others.emplace_back("concentrated at " + sys.half_edge_name(h), InputScalars::concentrated(sys, h));
            }
            for (auto [label, other] : others)
                tasks.push_back({"gauge", [m, r, label, other](const ArcSystem& s) {
                                     CuttingOracle oracle(s);
                                     auto rep = suite_gauge_equivalence(oracle, m, r, InputScalars::uniform(s, m), other);
                                     rep.name += r_tag(m, r, s) + " uniform vs " + label;
                                     return rep;
                                 }});
        }
}

TableGrid grid_of(const RunConfig& c)
{
    TableGrid g;
    g.turns = c.turns;
    if (c.winding) g.angle_steps = *c.winding;
    return g;
}

void add_tables(std::vector<Task>& tasks, const RunConfig& c, bool bracket, bool cup_table)
{
    const TableGrid g = grid_of(c);
    if (bracket)
        tasks.push_back({"bracket-table", [g](const ArcSystem& s) {
                             CuttingOracle oracle(s);
                             return suite_bracket_table(oracle, g);
                         }});
    if (cup_table) {
        SequenceBounds unit;
        unit.max_arity = std::min(3, c.arity.value_or(3));
        unit.max_steps = 3;
        tasks.push_back({"cup-table", [g, unit](const ArcSystem& s) {
                             CuttingOracle oracle(s);
                             return suite_cup_table(oracle, g, unit);
                         }});
    }
}

void add_dim(std::vector<Task>& tasks)
{
    tasks.push_back({"sporadic-dimension", [](const ArcSystem& s) {
                         CuttingOracle oracle(s);
                         return suite_sporadic_dimension(oracle);
                     }});
}

void add_dgla(std::vector<Task>& tasks, const RunConfig& c)
{
    SequenceBounds b;
    b.max_arity = 3;
    b.max_steps = 2;
    tasks.push_back({"dgla-axioms", [b, c](const ArcSystem& s) {
                         CuttingOracle oracle(s);
                         return suite_dgla(oracle, c.seed, c.instances, b);
                     }});
}

Bounds catalog_bounds(const ArcSystem& sys, const RunConfig& c)
{
    Bounds b;
    b.max_faces = c.max_faces;
    int largest = 0;
    for (const auto& f : sys.faces()) largest = std::max(largest, f.size());
    b.max_corners = c.arity.value_or(c.max_faces * (largest - 2) + 2);
    b.max_steps = c.winding.value_or(c.max_faces);
    return b;
}

void add_catalog(std::vector<Task>& tasks, const ArcSystem& sys, const RunConfig& c)
{
    const Bounds b = catalog_bounds(sys, c);
    tasks.push_back({"catalog-invariants", [b](const ArcSystem& s) {
                         const DiskCatalog cat = DiskCatalog::build(s, b);
                         CuttingOracle oracle(s);
                         return suite_catalog_invariants(cat, oracle);
                     }});
}

void print_validation(const ArcSystem* sys, const ValidationReport& v, const std::string& parse_error,
                      const RunConfig& c, std::ostream& out)
{
    const bool ok = parse_error.empty() && v.passed();
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["input"] = c.input;
        j["command"] = "validate";
        j["passed"] = ok;
        nlohmann::ordered_json vs = nlohmann::ordered_json::array();
        if (!parse_error.empty()) vs.push_back({{"rule", "parse"}, {"message", parse_error}, {"ids", nlohmann::json::array()}});
        for (const auto& x : v.violations) vs.push_back({{"rule", x.rule}, {"message", x.message}, {"ids", x.ids}});
        j["violations"] = vs;
        if (sys) {
            j["punctures"] = sys->num_punctures();
            j["arcs"] = sys->num_arcs();
            j["faces"] = sys->faces().size();
        }
        out << j.dump(2) << "\n";
        return;
    }
    if (ok) {
        out << c.input << ": passed (" << sys->num_punctures() << " punctures, " << sys->num_arcs() << " arcs, "
            << sys->faces().size() << " faces, genus " << sys->genus() << ")\n";
        return;
    }
    out << c.input << ": failed\n";
    if (!parse_error.empty()) out << "  [parse] " << parse_error << "\n";
    for (const auto& x : v.violations) {
        out << "  [" << x.rule << "] " << x.message;
        if (!x.ids.empty()) {
            out << ":";
            for (const auto& id : x.ids) out << " " << id;
        }
        out << "\n";
    }
}

void check_config(const RunConfig& c)
{
    const auto& cmds = commands();
    if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end())
        throw InputError("unknown command '" + c.command + "'");
    if (c.command == "check-cocycle" && c.kind != "id" && c.kind != "odd" && c.kind != "even" && c.kind != "sporadic")
        throw InputError("check-cocycle needs one of id, odd, even, sporadic");
    if ((c.arity && *c.arity < 1) || (c.winding && *c.winding < 1) || c.max_faces < 1 || c.jobs < 1 ||
        c.instances < 1)
        throw InputError("bounds must be positive");
    if (c.turns.empty()) throw InputError("--r needs at least one value");
    for (int r : c.turns)
        if (r < 1) throw InputError("--r values must be positive");
    if (c.format != "text" && c.format != "json") throw InputError("--format must be text or json");
}

}  // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> all{"validate",      "catalog",   "check-ainf", "check-cocycle",
                                              "dim-sporadic",  "bracket-table", "cup-table", "gauge",
                                              "garage",        "all"};
    return all;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    try {
        check_config(c);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    std::optional<ArcSystem> loaded;
    try {
        loaded = ArcSystem::load(c.input);
    } catch (const InputError& e) {
        print_validation(nullptr, {}, e.what(), c, c.command == "validate" ? out : err);
        return 2;
    }
    const ArcSystem& sys = *loaded;
    const ValidationReport v = validate(sys);
    if (c.command == "validate" || !v.passed()) {
        print_validation(&sys, v, "", c, c.command == "validate" || v.passed() ? out : err);
        if (v.passed() && c.dot) std::ofstream(*c.dot) << to_dot(sys);
        return v.passed() ? 0 : 2;
    }
    if (c.dot) std::ofstream(*c.dot) << to_dot(sys);

    std::vector<Task> tasks;
    try {
        if (c.command == "catalog") {
            const DiskCatalog cat = DiskCatalog::build(sys, catalog_bounds(sys, c));
            if (c.format == "text")
                for (const auto& line : cat.dump()) out << line << "\n";
            add_catalog(tasks, sys, c);
        } else if (c.command == "check-ainf") {
            add_ainf(tasks, c);
        } else if (c.command == "check-cocycle") {
            add_cocycles(tasks, sys, c, c.kind);
        } else if (c.command == "dim-sporadic") {
            add_dim(tasks);
        } else if (c.command == "bracket-table") {
            add_tables(tasks, c, true, false);
        } else if (c.command == "cup-table") {
            add_tables(tasks, c, false, true);
        } else if (c.command == "gauge") {
            add_gauge(tasks, sys, c);
        } else if (c.command == "garage") {
            add_garage(tasks, sys, c);
        } else if (c.command == "all") {
            add_catalog(tasks, sys, c);
            add_ainf(tasks, c);
            for (const char* k : {"id", "odd", "even", "sporadic"}) add_cocycles(tasks, sys, c, k);
            add_dim(tasks);
            add_gauge(tasks, sys, c);
            add_tables(tasks, c, true, true);
            add_dgla(tasks, c);
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const CatalogTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    std::vector<SuiteReport> reports;
    try {
        reports = run_tasks(sys, tasks, c.jobs);
    } catch (const CatalogTooLarge& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    bool ok = true;
    for (const auto& r : reports) ok = ok && r.passed() && !r.skipped;
    if (c.format == "json") {
        nlohmann::ordered_json j;
        j["input"] = c.input;
        j["command"] = c.command == "check-cocycle" ? c.command + " " + c.kind : c.command;
        j["passed"] = ok;
        nlohmann::ordered_json suites = nlohmann::ordered_json::array();
        for (const auto& r : reports) suites.push_back(nlohmann::ordered_json::parse(r.to_json(sys, c.timing, -1)));
        j["suites"] = suites;
        out << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            if (c.command == "dim-sporadic") {
                for (const auto& n : r.notes) out << n << "\n";
                continue;
            }
            out << r.to_text(sys);
        }
        if (c.command != "dim-sporadic") out << "overall: " << (ok ? "PASS" : "FAIL") << "\n";
    }
    return ok ? 0 : 1;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Hochschild cocycle checker for gentle algebras of punctured surfaces", "gtl-hh"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig c;
    std::string turns;
    app.add_option("--arity", c.arity, "maximum sequence length K");
    app.add_option("--winding", c.winding, "maximum steps per angle W");
    app.add_option("--max-faces", c.max_faces, "catalog face bound")->capture_default_str();
    app.add_option("--r", turns, "comma-separated full-turn counts (default 1,2)");
    app.add_option("--puncture", c.puncture, "restrict to one puncture id");
    app.add_option("--scalars", c.scalars, "JSON file of input scalars");
    app.add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--dot", c.dot, "write a DOT diagram of the arc system");
    app.add_option("--jobs", c.jobs, "worker threads")->capture_default_str();
    app.add_option("--seed", c.seed, "seed for random table cochains")->capture_default_str();
    app.add_option("--instances", c.instances, "random instances for the DGLA suite")->capture_default_str();
    app.add_flag("--timing", c.timing, "include timings in JSON output");

    static const std::map<std::string, std::string> blurb{
        {"validate", "check the arc system and print its invariants"},
        {"catalog", "enumerate immersed disks within the face bound"},
        {"check-ainf", "verify the A-infinity relations"},
        {"check-cocycle", "verify d nu = 0 for one cocycle family"},
        {"dim-sporadic", "dimension of the sporadic even classes"},
        {"bracket-table", "Gerstenhaber brackets of the named classes"},
        {"cup-table", "cup products of the named classes and the unit law"},
        {"gauge", "gauge equivalence of two scalar choices"},
        {"garage", "d nu = 0 on parking-garage sequences only"},
        {"all", "every suite above"},
    };
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name, blurb.at(name));
        if (name == "check-cocycle")
            sub->add_option("kind", c.kind, "id, odd, even or sporadic")
                ->required()
                ->check(CLI::IsMember({"id", "odd", "even", "sporadic"}));
        sub->add_option("input", c.input, "arc system JSON")->required();
        sub->callback([&c, name] { c.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }
    if (!turns.empty()) {
        c.turns.clear();
        std::size_t pos = 0;
        try {
            while (pos <= turns.size()) {
                const auto comma = turns.find(',', pos);
                c.turns.push_back(std::stoi(turns.substr(pos, comma - pos)));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
        } catch (const std::exception&) {
            err << "error: --r expects a comma-separated list of integers\n";
            return 2;
        }
    }
    return run(c, out, err);
}

}  // namespace gtl::cli
