#include "gtl/verify.hpp"

#include <algorithm>
#include <iterator>
#include <json.hpp>
#include <set>
#include <sstream>

namespace gtl {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

constexpr std::size_t kKeptFailures = 20;

// Arguments grouped by source arc, in the deterministic enumeration order.
std::vector<std::vector<Angle>> arguments_by_source(const ArcSystem& sys, const SequenceBounds& b)
{
    std::vector<std::vector<Angle>> out(sys.num_arcs());
    auto allowed = [&](HalfEdge h) {
        if (b.restrict_punctures.empty()) return true;
        return std::find(b.restrict_punctures.begin(), b.restrict_punctures.end(), sys.puncture_of(h)) !=
               b.restrict_punctures.end();
    };
    for (ArcId a = 0; a < sys.num_arcs(); ++a) {
        if (b.include_identities) out[a].push_back(Angle::identity(a));
        auto [h1, h2] = sys.arc_ends(a);
        for (HalfEdge h : {std::min(h1, h2), std::max(h1, h2)}) {
            if (!allowed(h)) continue;
            for (int s = 1; s <= b.max_steps; ++s) out[a].push_back(Angle::turn(h, s));
        }
    }
    return out;
}

std::string format_rational(const Rational& q) { return to_string(q); }

}  // namespace

void enumerate_sequences(const ArcSystem& sys, const SequenceBounds& b,
                         const std::function<bool(std::span<const Angle>)>& visit)
{
    const auto by_src = arguments_by_source(sys, b);
    std::vector<Angle> seq;
    bool stop = false;
    std::function<void(int)> grow = [&](int len) {
        if (stop) return;
        if (static_cast<int>(seq.size()) == len) {
            if (!visit(seq)) stop = true;
            return;
        }
        if (seq.empty()) {
            for (ArcId a = 0; a < sys.num_arcs() && !stop; ++a)
                for (Angle x : by_src[a]) {
                    seq.push_back(x);
                    grow(len);
                    seq.pop_back();
                    if (stop) return;
                }
        } else {
            for (Angle x : by_src[target_arc(sys, seq.back())]) {
                seq.push_back(x);
                grow(len);
                seq.pop_back();
                if (stop) return;
            }
        }
    };
    for (int len = std::max(0, b.min_arity); len <= b.max_arity && !stop; ++len) grow(len);
}

std::vector<Sequence> collect_sequences(const ArcSystem& sys, const SequenceBounds& b)
{
    std::vector<Sequence> out;
    enumerate_sequences(sys, b, [&](std::span<const Angle> s) {
        out.emplace_back(s.begin(), s.end());
        return true;
    });
    return out;
}

std::uint64_t count_sequences(const ArcSystem& sys, const SequenceBounds& b)
{
    // Dynamic programming over the end arc.
    const auto by_src = arguments_by_source(sys, b);
    std::uint64_t total = b.min_arity <= 0 ? 1 : 0;
    std::vector<std::uint64_t> ending(sys.num_arcs(), 0);
    for (ArcId a = 0; a < sys.num_arcs(); ++a)
        for (Angle x : by_src[a]) ++ending[target_arc(sys, x)];
    for (int len = 1; len <= b.max_arity; ++len) {
        if (len >= b.min_arity)
            for (auto c : ending) total += c;
        std::vector<std::uint64_t> next(sys.num_arcs(), 0);
        for (ArcId a = 0; a < sys.num_arcs(); ++a)
            for (Angle x : by_src[a]) next[target_arc(sys, x)] += ending[a];
        ending = std::move(next);
    }
    return total;
}

Garage parking_garage(const ArcSystem& sys, PunctureId m, int r, const GarageParams& p)
{
    if (r < 1) throw InputError("garage needs r >= 1");
    if (p.first_sector < 0 || p.first_sector >= sys.num_half_edges() || sys.puncture_of(p.first_sector) != m)
        throw InputError("garage must start at a sector of the puncture");
    const int full = r * sys.valence(m);
    if (p.spiral_sectors <= full) throw InputError("garage spiral must exceed r full turns");
    if (p.gamma_steps < 0 || p.beta_steps < 0) throw InputError("negative decoration");

    const HalfEdge h0 = p.first_sector;
    Garage g;
    g.disk = single_face_disk(sys, sys.face_of(h0));
    int c0 = sys.index_in_face(h0);
    for (int s = 1; s < p.spiral_sectors; ++s) g.disk = glue_across(sys, g.disk, c0);
    for (int e : p.attachments) {
        const int n = g.disk.corner_count();
        if (e < 0 || e >= n) throw InputError("attachment edge out of range");
        if (e == c0 || (e + 1) % n == c0) throw InputError("attachment edge touches the corner at the puncture");
        g.disk = glue_across(sys, g.disk, e);
        if (e < c0) c0 += g.disk.corner_count() - n;
    }
    std::vector<Angle> word = g.disk.boundary;
    word[c0] = Angle::turn(h0, p.spiral_sectors - full);

    const int n = static_cast<int>(word.size());
    const int off = ((p.start_offset % n) + n) % n;
    g.sequence.resize(n);
    for (int i = 0; i < n; ++i) g.sequence[i] = word[(i + off) % n];
    g.long_index = ((c0 - off) % n + n) % n;
    if (p.gamma_steps > 0) {
        Angle& last = g.sequence.back();
        last = Angle::turn(last.start(), last.steps() + p.gamma_steps);
    }
    if (p.beta_steps > 0) {
        Angle& first = g.sequence.front();
        first = Angle::turn(sys.rotate(first.start(), -p.beta_steps), first.steps() + p.beta_steps);
    }
    return g;
}

std::vector<Sequence> parking_garage_sequences(const ArcSystem& sys, PunctureId m, int r, const GarageSweep& sweep)
{
    std::set<Sequence> seen;
    std::vector<Sequence> out;
    auto keep = [&](Sequence s) {
        if (seen.insert(s).second) out.push_back(std::move(s));
    };
    auto spread = [](int n, int limit) {
        std::vector<int> picks;
        if (limit <= 0 || limit >= n) {
            for (int i = 0; i < n; ++i) picks.push_back(i);
            return picks;
        }
        for (int i = 0; i < limit; ++i) picks.push_back(static_cast<int>((static_cast<long>(i) * n) / limit));
        return picks;
    };

    const int full = r * sys.valence(m);
    for (int i = 0; i < sys.valence(m); ++i) {
        const HalfEdge h0 = sys.first_half_edge(m) + i;
        for (int l = full + 1; l <= full + 1 + sweep.extra_sectors; ++l) {
            std::vector<std::vector<int>> attach_sets{{}};
            if (sweep.attachments) {
                GarageParams probe{h0, l, 0, {}};
                const Garage base = parking_garage(sys, m, r, probe);
                const int n = base.disk.corner_count();
                const int c0 = base.long_index;
                std::vector<int> edges;
                for (int e = 0; e < n; ++e)
                    if (e != c0 && (e + 1) % n != c0) edges.push_back(e);
                for (int pick : spread(static_cast<int>(edges.size()), sweep.max_attachment_edges))
                    attach_sets.push_back({edges[pick]});
            }
            for (const auto& att : attach_sets) {
                GarageParams p{h0, l, 0, att, 0, 0};
                const int n = parking_garage(sys, m, r, p).disk.corner_count();
                // Sample offsets evenly but always include those that put the
                // long angle at either end.
                std::set<int> offsets;
                for (int o : spread(n, sweep.max_offsets)) offsets.insert(o);
                const int c0 = parking_garage(sys, m, r, p).long_index;
                offsets.insert(c0);
                offsets.insert((c0 + 1) % n);
                for (int off : offsets)
                    for (auto [g, b] : sweep.decorations) {
                        GarageParams q = p;
                        q.start_offset = off;
                        q.gamma_steps = g;
                        q.beta_steps = b;
                        keep(parking_garage(sys, m, r, q).sequence);
                    }
            }
        }
    }
    return out;
}

std::string render(const ArcSystem& sys, std::span<const Angle> seq)
{
    std::string s = "(";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ", ";
        s += render(sys, seq[i]);
    }
    return s + ")";
}

void SuiteReport::fail(Sequence seq, std::string expected, std::string actual)
{
    ++failure_count;
    if (failures.size() < kKeptFailures) failures.push_back({std::move(seq), std::move(expected), std::move(actual)});
}

void SuiteReport::absorb(const SuiteReport& other)
{
    checked += other.checked;
    failure_count += other.failure_count;
    for (const auto& f : other.failures)
        if (failures.size() < kKeptFailures) failures.push_back(f);
    for (const auto& n : other.notes) notes.push_back(n);
    skipped = skipped || other.skipped;
}

std::string SuiteReport::to_json(const ArcSystem& sys, bool with_timing, int indent) const
{
    nlohmann::ordered_json j;
    j["suite"] = name;
    j["passed"] = passed();
    j["skipped"] = skipped;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters) params[k] = v;
    j["parameters"] = params;
    j["checked"] = checked;
    j["failure_count"] = failure_count;
    nlohmann::ordered_json fs = nlohmann::ordered_json::array();
    for (const auto& f : failures)
        fs.push_back({{"sequence", render(sys, f.sequence)}, {"expected", f.expected}, {"actual", f.actual}});
    j["failures"] = fs;
    j["notes"] = notes;
    if (with_timing) j["seconds"] = seconds;
    return j.dump(indent);
}

std::string SuiteReport::to_text(const ArcSystem& sys) const
{
    std::ostringstream os;
    os << name << ": " << (skipped ? "SKIPPED" : passed() ? "PASS" : "FAIL") << " (checked " << checked << ", failures "
       << failure_count << ", " << seconds << " s)\n";
    for (const auto& [k, v] : parameters) os << "  " << k << " = " << v << "\n";
    for (const auto& n : notes) os << "  note: " << n << "\n";
    for (const auto& f : failures)
        os << "  failure at " << render(sys, f.sequence) << "\n    expected " << f.expected << "\n    actual   "
           << f.actual << "\n";
    return os.str();
}

SuiteReport suite_a_infinity(const Cochain& mu, const SequenceBounds& b)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = mu.system();
    SuiteReport rep;
    rep.name = "a-infinity";
    rep.param("max_arity", std::to_string(b.max_arity));
    rep.param("max_steps", std::to_string(b.max_steps));
    const auto* direct = dynamic_cast<const MuCochain*>(&mu);
    enumerate_sequences(sys, b, [&](std::span<const Angle> seq) {
        ++rep.checked;
        Morphism d = direct ? a_infinity_defect(direct->oracle(), seq) : gerstenhaber_product(mu, mu, seq);
        if (!d.is_zero()) rep.fail(Sequence(seq.begin(), seq.end()), "0", render(sys, d));
        return true;
    });
    rep.seconds = since(t0);
    return rep;
}

SuiteReport suite_cocycle(const Cochain& mu, const Cochain& nu, const SequenceBounds& b,
                          const std::vector<Sequence>& extra, const std::string& label)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = mu.system();
    SuiteReport rep;
    rep.name = label.empty() ? "cocycle " + nu.kind() : label;
    rep.param("cochain", nu.kind());
    rep.param("parity", nu.parity() ? "odd" : "even");
    rep.param("max_arity", std::to_string(b.max_arity));
    rep.param("max_steps", std::to_string(b.max_steps));
    rep.param("extra_sequences", std::to_string(extra.size()));
    auto check = [&](std::span<const Angle> seq) {
        ++rep.checked;
        Morphism d = differential(mu, nu, seq);
        if (!d.is_zero()) rep.fail(Sequence(seq.begin(), seq.end()), "0", render(sys, d));
        if (parity_defect(nu, seq))
            rep.fail(Sequence(seq.begin(), seq.end()), "output parity law", render(sys, nu.eval(seq)));
        return true;
    };
    enumerate_sequences(sys, b, check);
    std::size_t longest = 0;
    for (const auto& s : extra) {
        check(s);
        longest = std::max(longest, s.size());
    }
    if (!extra.empty()) rep.param("longest_extra", std::to_string(longest));
    rep.seconds = since(t0);
    return rep;
}

SuiteReport suite_sporadic_dimension(const DiskOracle& oracle)
{
    const auto t0 = Clock::now();
    SuiteReport rep;
    rep.name = "sporadic-dimension";
    const SporadicBasis basis = sporadic_space(oracle);
    rep.param("dim_space", std::to_string(basis.dim_space));
    rep.param("dim_coboundaries", std::to_string(basis.dim_coboundaries));
    rep.param("dim_quotient", std::to_string(basis.dim_quotient));
    rep.param("expected", std::to_string(basis.expected));
    rep.checked = 1;
    if (basis.dim_quotient != basis.expected)
        rep.fail({}, std::to_string(basis.expected), std::to_string(basis.dim_quotient));
    rep.notes.push_back("dim S/[id,-] = " + std::to_string(basis.dim_quotient) +
                        " (expected 2g-1+|M| = " + std::to_string(basis.expected) + ")");
    rep.seconds = since(t0);
    return rep;
}

namespace {

std::vector<Angle> test_angles(const ArcSystem& sys, int steps)
{
    std::vector<Angle> out;
    for (ArcId a = 0; a < sys.num_arcs(); ++a) out.push_back(Angle::identity(a));
    for (HalfEdge h = 0; h < sys.num_half_edges(); ++h)
        for (int s = 1; s <= steps; ++s) out.push_back(Angle::turn(h, s));
    return out;
}

// turn(start, steps + extra) for turns at m, scaled; zero elsewhere.
Morphism appended(const ArcSystem& sys, Angle a, PunctureId m, int extra, const Rational& c)
{
    Morphism out;
    if (a.is_turn() && sys.puncture_of(a.start()) == m && !gtl::is_zero(c))
        out.add(Angle::turn(a.start(), a.steps() + extra), c);
    return out;
}

void expect(SuiteReport& rep, const ArcSystem& sys, const std::string& what, std::span<const Angle> seq,
            const Morphism& expected, const Morphism& actual)
{
    ++rep.checked;
    if (!(expected == actual)) rep.fail(Sequence(seq.begin(), seq.end()), what + ": " + render(sys, expected), render(sys, actual));
}

}  // namespace

SuiteReport suite_bracket_table(const DiskOracle& oracle, const TableGrid& grid)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = oracle.system();
    SuiteReport rep;
    rep.name = "bracket-table";
    rep.param("turns", [&] {
        std::string s;
        for (int r : grid.turns) s += (s.empty() ? "" : ",") + std::to_string(r);
        return s;
    }());
    rep.param("angle_steps", std::to_string(grid.angle_steps));
    const auto angles = test_angles(sys, grid.angle_steps);
    const std::vector<Angle> none;
    const SporadicBasis basis = sporadic_space(oracle);
    const auto sporadic = basis.cochains(sys);
    const int np = sys.num_punctures();

    for (int i : grid.turns)
        for (int j : grid.turns)
            for (PunctureId m1 = 0; m1 < np; ++m1)
                for (PunctureId m2 = 0; m2 < np; ++m2) {
                    const std::string tag = " i=" + std::to_string(i) + " j=" + std::to_string(j) + " m1=" +
                                            sys.puncture_name(m1) + " m2=" + sys.puncture_name(m2);
                    auto o1 = nu_odd(oracle, m1, i), o2 = nu_odd(oracle, m2, j);
                    auto e1 = nu_even(oracle, m1, i, InputScalars::uniform(sys, m1));
                    auto e2 = nu_even(oracle, m2, j, InputScalars::uniform(sys, m2));
                    const int L1 = sys.valence(m1);
                    for (Angle a : angles) {
                        std::span<const Angle> s(&a, 1);
                        expect(rep, sys, "[odd,odd]^1" + tag, s, Morphism{}, gerstenhaber_bracket(*o1, *o2, s));
                        Morphism want;
                        if (m1 == m2)
                            want = appended(sys, a, m1, (i + j) * L1, Rational(j - i) * e1->scalars().weights.of(a));
                        expect(rep, sys, "[even,even]^1" + tag, s, want, gerstenhaber_bracket(*e1, *e2, s));
                    }
                    Morphism want = m1 == m2 ? ell_power(sys, m1, i + j) : Morphism{};
                    want *= Rational(j);
                    expect(rep, sys, "[even,odd]^0" + tag, none, want, gerstenhaber_bracket(*e1, *o2, none));
                }

    for (int i : grid.turns)
        for (PunctureId m = 0; m < np; ++m) {
            auto e = nu_even(oracle, m, i, InputScalars::uniform(sys, m));
            auto o = nu_odd(oracle, m, i);
            for (std::size_t p = 0; p < sporadic.size(); ++p) {
                const auto& P = static_cast<const ScalingCochain&>(*sporadic[p]);
                const Rational at_m = P.weights().total(m);
                const std::string tag = " i=" + std::to_string(i) + " m=" + sys.puncture_name(m) + " P=" + std::to_string(p);
                for (Angle a : angles) {
                    std::span<const Angle> s(&a, 1);
                    Morphism want = e->eval(s);
                    want *= -Rational(i) * at_m;
                    expect(rep, sys, "[even,P]^1" + tag, s, want, gerstenhaber_bracket(*e, P, s));
                }
                Morphism want = ell_power(sys, m, i);
                want *= Rational(i) * at_m;
                expect(rep, sys, "[P,odd]^0" + tag, none, want, gerstenhaber_bracket(P, *o, none));
            }
        }

    for (std::size_t p = 0; p < sporadic.size(); ++p)
        for (std::size_t q = 0; q < sporadic.size(); ++q)
            for (Angle a : angles) {
                std::span<const Angle> s(&a, 1);
                expect(rep, sys, "[P,Q]^1 P=" + std::to_string(p) + " Q=" + std::to_string(q), s, Morphism{},
                       gerstenhaber_bracket(*sporadic[p], *sporadic[q], s));
            }
    rep.seconds = since(t0);
    return rep;
}

SuiteReport suite_cup_table(const DiskOracle& oracle, const TableGrid& grid, const SequenceBounds& unit_bounds)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = oracle.system();
    SuiteReport rep;
    rep.name = "cup-table";
    rep.param("angle_steps", std::to_string(grid.angle_steps));
    rep.param("unit_max_arity", std::to_string(unit_bounds.max_arity));
    rep.param("unit_max_steps", std::to_string(unit_bounds.max_steps));
    const MuCochain mu(oracle);
    const auto angles = test_angles(sys, grid.angle_steps);
    const std::vector<Angle> none;
    const SporadicBasis basis = sporadic_space(oracle);
    const auto sporadic = basis.cochains(sys);
    const int np = sys.num_punctures();

    for (int i : grid.turns)
        for (int j : grid.turns)
            for (PunctureId m1 = 0; m1 < np; ++m1)
                for (PunctureId m2 = 0; m2 < np; ++m2) {
                    const std::string tag = " i=" + std::to_string(i) + " j=" + std::to_string(j) + " m1=" +
                                            sys.puncture_name(m1) + " m2=" + sys.puncture_name(m2);
                    auto o1 = nu_odd(oracle, m1, i), o2 = nu_odd(oracle, m2, j);
                    auto e1 = nu_even(oracle, m1, i, InputScalars::uniform(sys, m1));
                    auto e2 = nu_even(oracle, m2, j, InputScalars::uniform(sys, m2));
                    Morphism want = m1 == m2 ? ell_power(sys, m1, i + j) : Morphism{};
                    expect(rep, sys, "(odd u odd)^0" + tag, none, want, cup(mu, *o1, *o2, none));
                    expect(rep, sys, "(even u even)^0" + tag, none, Morphism{}, cup(mu, *e1, *e2, none));
                    for (Angle a : angles) {
                        std::span<const Angle> s(&a, 1);
                        Morphism w;
                        if (m1 == m2) w = appended(sys, a, m1, (i + j) * sys.valence(m1), e2->scalars().weights.of(a));
                        expect(rep, sys, "(odd u even)^1" + tag, s, w, cup(mu, *o1, *e2, s));
                    }
                }

    for (int i : grid.turns)
        for (PunctureId m = 0; m < np; ++m) {
            auto o = nu_odd(oracle, m, i);
            auto e = nu_even(oracle, m, i, InputScalars::uniform(sys, m));
            for (std::size_t p = 0; p < sporadic.size(); ++p) {
                const auto& P = static_cast<const ScalingCochain&>(*sporadic[p]);
                const std::string tag = " i=" + std::to_string(i) + " m=" + sys.puncture_name(m) + " P=" + std::to_string(p);
                for (Angle a : angles) {
                    std::span<const Angle> s(&a, 1);
                    expect(rep, sys, "(odd u P)^1" + tag, s,
                           appended(sys, a, m, i * sys.valence(m), P.weights().of(a)), cup(mu, *o, P, s));
                }
                expect(rep, sys, "(even u P)^0" + tag, none, Morphism{}, cup(mu, *e, P, none));
                if (i == grid.turns.front())
                    rep.notes.push_back("odd u P coefficient at m=" + sys.puncture_name(m) + " P=" + std::to_string(p) +
                                        ": " + format_rational(P.weights().total(m)));
            }
        }
    for (std::size_t p = 0; p < sporadic.size(); ++p)
        for (std::size_t q = 0; q < sporadic.size(); ++q)
            expect(rep, sys, "(P u Q)^0 P=" + std::to_string(p) + " Q=" + std::to_string(q), none, Morphism{},
                   cup(mu, *sporadic[p], *sporadic[q], none));

    // Unit law on every enumerated sequence.
    std::vector<CochainPtr> classes{nu_id(sys)};
    for (int i : grid.turns)
        for (PunctureId m = 0; m < np; ++m) {
            classes.push_back(nu_odd(oracle, m, i));
            classes.push_back(nu_even(oracle, m, i, InputScalars::uniform(sys, m)));
        }
    for (const auto& s : sporadic) classes.push_back(s);
    const auto id = nu_id(sys);
    enumerate_sequences(sys, unit_bounds, [&](std::span<const Angle> seq) {
        for (const auto& k : classes) {
            const Morphism v = k->eval(seq);
            expect(rep, sys, "k u id = k (" + k->kind() + ")", seq, v, cup(mu, *k, *id, seq));
            expect(rep, sys, "id u k = k (" + k->kind() + ")", seq, v, cup(mu, *id, *k, seq));
        }
        return true;
    });
    rep.seconds = since(t0);
    return rep;
}

SuiteReport suite_gauge_equivalence(const DiskOracle& oracle, PunctureId m, int r, const InputScalars& s1,
                                    const InputScalars& s2)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = oracle.system();
    SuiteReport rep;
    rep.name = "gauge-equivalence";
    rep.param("puncture", sys.puncture_name(m));
    rep.param("r", std::to_string(r));
    rep.param("total_1", format_rational(s1.total()));
    rep.param("total_2", format_rational(s2.total()));
    const int val = sys.valence(m), full = r * val;
    const auto n1 = nu_even(oracle, m, r, s1), n2 = nu_even(oracle, m, r, s2);
    auto mu = std::make_shared<MuCochain>(oracle);

    Vector target(val);
    Matrix a(val, Vector(val, 0));
    for (int row = 0; row < val; ++row) {
        const Angle alpha = Angle::turn(sys.first_half_edge(m) + row, 1);
        const Angle image = Angle::turn(alpha.start(), 1 + full);
        std::span<const Angle> s(&alpha, 1);
        target[row] = n1->eval(s).coefficient(image) - n2->eval(s).coefficient(image);
        for (int col = 0; col < val; ++col) {
            auto eps = gauge_epsilon(sys, sys.first_half_edge(m) + col, r);
            a[row][col] = differential(*mu, *eps, s).coefficient(image);
        }
    }
    rep.checked = static_cast<std::uint64_t>(val);
    auto x = solve(a, target, val);
    if (!x) {
        std::string t;
        for (const auto& v : target) t += (t.empty() ? "" : " ") + format_rational(v);
        rep.fail({}, "(nu - nu')^1 in span of (d eps_h)^1", "no solution for difference [" + t + "]");
    } else {
        std::string c;
        for (const auto& v : *x) c += (c.empty() ? "" : " ") + format_rational(v);
        rep.notes.push_back("coefficients [" + c + "]");
    }
    rep.seconds = since(t0);
    return rep;
}

std::shared_ptr<TableCochain> random_table(const ArcSystem& sys, std::mt19937_64& rng, const TableSpec& spec)
{
    auto t = std::make_shared<TableCochain>(sys, spec.parity);
    SequenceBounds b;
    b.max_arity = spec.max_arity;
    b.max_steps = spec.input_steps;
    auto inputs = collect_sequences(sys, b);
    auto in_pool = [&](Angle x) { return std::find(spec.pool.begin(), spec.pool.end(), x) != spec.pool.end(); };
    if (!spec.pool.empty())
        std::erase_if(inputs, [&](const Sequence& s) { return !std::all_of(s.begin(), s.end(), in_pool); });
    // Outputs by (source arc, target arc).
    std::vector<std::vector<std::vector<Angle>>> outs(sys.num_arcs(), std::vector<std::vector<Angle>>(sys.num_arcs()));
    for (ArcId a = 0; a < sys.num_arcs(); ++a) outs[a][a].push_back(Angle::identity(a));
    for (HalfEdge h = 0; h < sys.num_half_edges(); ++h)
        for (int s = 1; s <= spec.output_steps; ++s) {
            const Angle x = Angle::turn(h, s);
            outs[source_arc(sys, x)][target_arc(sys, x)].push_back(x);
        }
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int e = 0; e < spec.entries; ++e) {
        const Sequence& in = inputs[std::uniform_int_distribution<std::size_t>(0, inputs.size() - 1)(rng)];
        int want = spec.parity;
        for (auto a : in) want += reduced_degree(a);
        std::vector<Angle> cands;
        if (in.empty()) {
            for (ArcId a = 0; a < sys.num_arcs(); ++a)
                for (Angle x : outs[a][a]) cands.push_back(x);
        } else {
            for (Angle x : outs[source_arc(sys, in.front())][target_arc(sys, in.back())]) cands.push_back(x);
        }
        std::erase_if(cands, [&](Angle x) { return (reduced_degree(x) & 1) != (want & 1); });
        if (cands.empty()) continue;
        std::vector<Angle> preferred;
        std::copy_if(cands.begin(), cands.end(), std::back_inserter(preferred), in_pool);
        if (!preferred.empty() && rng() % 4 != 0) cands = preferred;
        Morphism v = t->eval(in);
        const int terms = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < terms; ++k) {
            int c = coef(rng);
            if (c == 0) c = 1;
            v.add(cands[std::uniform_int_distribution<std::size_t>(0, cands.size() - 1)(rng)], c);
        }
        t->set(in, v);
    }
    return t;
}

SuiteReport suite_dgla(const DiskOracle& oracle, std::uint64_t seed, int instances, const SequenceBounds& b)
{
    const auto t0 = Clock::now();
    const ArcSystem& sys = oracle.system();
    SuiteReport rep;
    rep.name = "dgla-axioms";
    rep.param("seed", std::to_string(seed));
    rep.param("instances", std::to_string(instances));
    rep.param("max_arity", std::to_string(b.max_arity));
    rep.param("max_steps", std::to_string(b.max_steps));
    std::mt19937_64 rng(seed);
    auto mu = std::make_shared<MuCochain>(oracle);
    const auto seqs = collect_sequences(sys, b);
    std::uint64_t nontrivial = 0;
    auto sgn = [](int e) { return (e & 1) ? Rational(-1) : Rational(1); };

    for (int inst = 0; inst < instances; ++inst) {
        // A pool of angles closed under nothing in particular, but small
        // enough that entries of different tables meet.
        std::vector<Angle> pool;
        {
            SequenceBounds one;
            one.min_arity = one.max_arity = 1;
            one.max_steps = 2;
            auto singles = collect_sequences(sys, one);
            std::shuffle(singles.begin(), singles.end(), rng);
            for (std::size_t i = 0; i < singles.size() && pool.size() < 5; ++i) pool.push_back(singles[i][0]);
        }
        TableSpec sa, sb, sc;
        sa.pool = sb.pool = sc.pool = pool;
        sa.parity = static_cast<int>(rng() % 2);
        sb.parity = static_cast<int>(rng() % 2);
        sc.parity = static_cast<int>(rng() % 2);
        CochainPtr a = random_table(sys, rng, sa), bb = random_table(sys, rng, sb), c = random_table(sys, rng, sc);
        const int pa = a->parity(), pb = bb->parity(), pc = c->parity();
        auto da = std::make_shared<BracketCochain>(mu, a);
        auto db = std::make_shared<BracketCochain>(mu, bb);
        auto ab = std::make_shared<BracketCochain>(a, bb);
        auto bc = std::make_shared<BracketCochain>(bb, c);
        auto ca = std::make_shared<BracketCochain>(c, a);
        const std::string tag = " instance " + std::to_string(inst);
        for (const auto& s : seqs) {
            // Graded antisymmetry.
            Morphism x = gerstenhaber_bracket(*a, *bb, s);
            Morphism y = gerstenhaber_bracket(*bb, *a, s);
            if (!x.is_zero()) ++nontrivial;
            y *= sgn(pa * pb);
            expect(rep, sys, "antisymmetry" + tag, s, Morphism{}, x + y);
            // d^2 = 0.
            expect(rep, sys, "d^2" + tag, s, Morphism{}, differential(*mu, *da, s));
            // Leibniz: d[a,b] = [da,b] + (-1)^|a| [a,db].
            Morphism lhs = differential(*mu, *ab, s);
            Morphism rhs = gerstenhaber_bracket(*da, *bb, s);
            Morphism t2 = gerstenhaber_bracket(*a, *db, s);
            t2 *= sgn(pa);
            rhs += t2;
            expect(rep, sys, "leibniz" + tag, s, lhs, rhs);
            // Jacobi.
            Morphism j1 = gerstenhaber_bracket(*a, *bc, s);
            j1 *= sgn(pa * pc);
            Morphism j2 = gerstenhaber_bracket(*bb, *ca, s);
            j2 *= sgn(pb * pa);
            Morphism j3 = gerstenhaber_bracket(*c, *ab, s);
            j3 *= sgn(pc * pb);
            expect(rep, sys, "jacobi" + tag, s, Morphism{}, j1 + j2 + j3);
        }
    }
    rep.notes.push_back("nonzero brackets exercised: " + std::to_string(nontrivial));
    rep.seconds = since(t0);
    return rep;
}

SuiteReport suite_catalog_invariants(const DiskCatalog& cat, const DiskOracle& oracle)
{
    const auto t0 = Clock::now();
    SuiteReport rep;
    rep.name = "catalog-invariants";
    rep.param("max_faces", std::to_string(cat.bounds().max_faces));
    rep.param("max_corners", std::to_string(cat.bounds().max_corners));
    rep.param("max_steps", std::to_string(cat.bounds().max_steps));
    rep.param("disks", std::to_string(cat.disks().size()));
    for (const auto& d : cat.disks()) {
        ++rep.checked;
        const Sequence w = d.boundary;
        if (d.corner_count() < 3) rep.fail(w, "at least 3 corners", std::to_string(d.corner_count()));
        int deg = 0;
        for (auto a : w) deg += reduced_degree(a);
        if (deg % 2) rep.fail(w, "even reduced-degree sum", std::to_string(deg));
        const auto listed = static_cast<std::int64_t>(cat.find(w).size());
        const auto counted = oracle.count(w);
        if (listed != counted) rep.fail(w, "oracle count " + std::to_string(listed), std::to_string(counted));
    }
    rep.seconds = since(t0);
    return rep;
}

}  // namespace gtl
