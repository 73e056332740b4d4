#include "gtl/cocycles.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

namespace gtl {

Rational AngleWeights::total(PunctureId p) const
{
    Rational s = 0;
    const HalfEdge h0 = sys_->first_half_edge(p);
    for (int i = 0; i < sys_->valence(p); ++i) s += w_[h0 + i];
    return s;
}

Rational AngleWeights::of(Angle a) const
{
    if (a.is_identity()) return 0;
    const PunctureId p = sys_->puncture_of(a.start());
    const int val = sys_->valence(p);
    Rational s = 0;
    if (a.steps() >= val) s = total(p) * (a.steps() / val);
    for (int u = 0; u < a.steps() % val; ++u) s += w_[sys_->rotate(a.start(), u)];
    return s;
}

InputScalars InputScalars::uniform(const ArcSystem& sys, PunctureId m)
{
    InputScalars s{m, AngleWeights(sys)};
    const int val = sys.valence(m);
    for (int i = 0; i < val; ++i) s.weights.set(sys.first_half_edge(m) + i, Rational(1, val));
    return s;
}

InputScalars InputScalars::concentrated(const ArcSystem& sys, HalfEdge h)
{
    InputScalars s{sys.puncture_of(h), AngleWeights(sys)};
    s.weights.set(h, 1);
    return s;
}

InputScalars InputScalars::parse(const ArcSystem& sys, std::string_view json_text, std::optional<PunctureId> m)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed scalars: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("malformed scalars: expected an object");
    std::optional<PunctureId> at = m;
    AngleWeights w(sys);
    for (const auto& [key, value] : doc.items()) {
        const HalfEdge h = sys.half_edge(key);
        const PunctureId p = sys.puncture_of(h);
        if (at && *at != p) throw InputError("scalars for a different puncture: '" + key + "'");
        at = p;
        Rational v;
        if (value.is_string()) {
            try {
                v = parse_rational(value.get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw InputError("malformed scalar for '" + key + "': " + e.what());
            }
        } else if (value.is_number_integer())
            v = Rational(value.get<long>());
        else
            throw InputError("malformed scalar for '" + key + "'");
        w.set(h, v);
    }
    if (!at) throw InputError("empty scalars need an explicit puncture");
    return InputScalars{*at, std::move(w)};
}

InputScalars InputScalars::load(const ArcSystem& sys, const std::filesystem::path& path, std::optional<PunctureId> m)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(sys, ss.str(), m);
}

int full_turn_parity(const ArcSystem& sys, PunctureId m, int r)
{
    return reduced_degree(Angle::turn(sys.first_half_edge(m), r * sys.valence(m)));
}

namespace {

bool has_identity(std::span<const Angle> args)
{
    for (auto a : args)
        if (a.is_identity()) return true;
    return false;
}

// Consecutive arguments meet across arcs, as along a disk boundary.
bool crossing(const ArcSystem& sys, Angle x, Angle y) { return y.start() == sys.partner(end_half_edge(sys, x)); }

bool all_crossing(const ArcSystem& sys, std::span<const Angle> args)
{
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (!crossing(sys, args[i], args[i + 1])) return false;
    return true;
}

int parity_sum(std::span<const Angle> args)
{
    int s = 0;
    for (auto a : args) s += reduced_degree(a);
    return s & 1;
}

// Word with position i split at t steps and r full turns inserted at the split.
void split_word(const ArcSystem& sys, std::span<const Angle> seq, std::size_t i, int t, int full,
                std::vector<Angle>& out)
{
    const Angle a = seq[i];
    const HalfEdge e = sys.rotate(a.start(), t);
    out.assign(seq.begin(), seq.begin() + i);
    out.push_back(Angle::turn(a.start(), t));
    out.push_back(Angle::turn(sys.partner(e), full));
    out.push_back(Angle::turn(e, a.steps() - t));
    out.insert(out.end(), seq.begin() + i + 1, seq.end());
}

}  // namespace

NuOddCochain::NuOddCochain(const DiskOracle& oracle, PunctureId m, int r)
    : Cochain(oracle.system(), full_turn_parity(oracle.system(), m, r), "NuOdd"), oracle_(&oracle), m_(m), r_(r),
      zero_adic_(ell_power(oracle.system(), m, r))
{
}

bool NuOddCochain::may_be_nonzero(int k) const { return k == 0 || (k >= 2 && k + 2 >= oracle_->min_corners()); }

Morphism NuOddCochain::eval(std::span<const Angle> args) const
{
    const ArcSystem& sys = system();
    const int k = static_cast<int>(args.size());
    if (k == 0) return zero_adic_;
    Morphism out;
    if (!may_be_nonzero(k) || has_identity(args) || !all_crossing(sys, args)) return out;
    // Each decoration contributes once when the stripped sequence admits a
    // split, however many splits it admits.
    std::vector<Angle> s(args.begin(), args.end());
    const Angle first = args.front(), last = args.back();
    auto splits = [&] { return min_split(*oracle_, s, m_, r_).has_value(); };

    if (sys.partner(end_half_edge(sys, last)) == first.start() && splits())
        out.add(Angle::identity(source_arc(sys, first)), 1);

    // last = beta * alpha_k
    {
        const HalfEdge want = sys.partner(first.start());
        const PunctureId p = sys.puncture_of(last.start());
        if (sys.puncture_of(want) == p) {
            const int val = sys.valence(p);
            int j = sys.steps_between(last.start(), want);
            if (j == 0) j = val;
            for (; j < last.steps(); j += val) {
                s.back() = Angle::turn(last.start(), j);
                if (splits()) out.add(Angle::turn(want, last.steps() - j), 1);
            }
            s.back() = last;
        }
    }
    // first = alpha_1 * gamma
    {
        const HalfEdge want = sys.partner(end_half_edge(sys, last));
        const PunctureId p = sys.puncture_of(first.start());
        if (sys.puncture_of(want) == p) {
            const int val = sys.valence(p);
            int g = sys.steps_between(first.start(), want);
            if (g == 0) g = val;
            for (; g < first.steps(); g += val) {
                s.front() = Angle::turn(want, first.steps() - g);
                if (splits()) out.add(Angle::turn(first.start(), g), (g & 1) ? -1 : 1);
            }
        }
    }
    return out;
}

NuEvenCochain::NuEvenCochain(const DiskOracle& oracle, PunctureId m, int r, InputScalars scalars)
    : Cochain(oracle.system(), full_turn_parity(oracle.system(), m, r) ^ 1, "NuEven"), oracle_(&oracle), m_(m),
      r_(r), full_(r * oracle.system().valence(m)), scalars_(std::move(scalars))
{
    if (scalars_.m != m) throw InputError("scalars for a different puncture");
    if (r < 1) throw std::invalid_argument("nu_even needs r >= 1");
}

bool NuEvenCochain::may_be_nonzero(int k) const { return k == 1 || (k >= 2 && k + 1 >= oracle_->min_corners()); }

Morphism NuEvenCochain::eval(std::span<const Angle> args) const
{
    const ArcSystem& sys = system();
    const int k = static_cast<int>(args.size());
    Morphism out;
    if (k == 1) {
        const Angle a = args[0];
        if (a.is_turn() && sys.puncture_of(a.start()) == m_) {
            Rational w = scalars_.weights.of(a);
            if (!gtl::is_zero(w)) out.add(Angle::turn(a.start(), a.steps() + full_), w);
        }
        return out;
    }
    if (!may_be_nonzero(k) || has_identity(args)) return out;
    int fired = 0;
    if (all_crossing(sys, args)) {
        end_split(args, out, fired);
        era_end_split(args, out, fired);
    } else {
        middle_split(args, out, fired);
    }
    if (fired > 1) ++stats_.collisions;
    return out;
}

void NuEvenCochain::end_split(std::span<const Angle> args, Morphism& out, int& fired) const
{
    const ArcSystem& sys = system();
    const HalfEdge h = sys.partner(end_half_edge(sys, args.back()));
    const HalfEdge back = sys.partner(args.front().start());
    if (sys.puncture_of(h) != m_ || sys.puncture_of(back) != m_) return;
    const int val = sys.valence(m_);
    int j = sys.steps_between(h, back);
    if (j == 0) j = val;
    std::vector<Angle> word(args.begin(), args.end());
    word.push_back(Angle());
    for (; j < full_; j += val) {
        const Angle alpha = Angle::turn(h, j);
        word.back() = alpha;
        const std::int64_t c = oracle_->count(word);
        if (c == 0) continue;
        ++fired;
        ++stats_.end_split;
        if (reduced_degree(alpha) != parity_sum(args)) ++stats_.sign_incoherent;
        Rational coef = scalars_.weights.of(alpha) * c;
        if (reduced_degree(alpha)) coef = -coef;
        out.add(Angle::turn(back, full_ - j), coef);
    }
}

void NuEvenCochain::era_end_split(std::span<const Angle> args, Morphism& out, int& fired) const
{
    const ArcSystem& sys = system();
    const std::size_t k = args.size();
    const Angle first = args.front(), last = args.back();
    const PunctureId p_first = sys.puncture_of(first.start());
    const int val_first = sys.valence(p_first);
    std::vector<Angle> word(args.begin(), args.end());
    word.push_back(Angle());
    // last = gamma * alpha_k with gamma of g steps; alpha_k ends at e.
    for (int g = 0; g < last.steps(); ++g) {
        const HalfEdge e = sys.rotate(end_half_edge(sys, last), -g);
        const HalfEdge hm = sys.partner(e);
        if (sys.puncture_of(hm) != m_ || sys.puncture_of(e) != p_first) continue;
        word[k - 1] = Angle::turn(last.start(), last.steps() - g);
        word[k] = Angle::turn(hm, full_);
        // first = alpha_1 * beta with beta of b steps; alpha_1 starts at e.
        for (int b = sys.steps_between(first.start(), e); b < first.steps(); b += val_first) {
            word[0] = Angle::turn(e, first.steps() - b);
            const std::int64_t c = oracle_->count(word);
            if (c == 0) continue;
            ++fired;
            // Reduced degrees of a disk add up to an even number, so the
            // undecorated angles carry the parity of the full turns.
            if (parity_sum(std::span<const Angle>(word).first(k)) != reduced_degree(word[k])) ++stats_.sign_incoherent;
            if (g == 0) {
                ++stats_.old_era;
                const Angle beta = b == 0 ? Angle::identity(sys.arc_of(first.start())) : Angle::turn(first.start(), b);
                out.add(beta, -(scalars_.total() * r_) * c);
            } else {
                ++stats_.new_era;
                // The indecomposable at m ending at the arc incidence hm.
                const Rational n = scalars_.weights.at(sys.rotate(hm, -1));
                if (!gtl::is_zero(n)) out.add(Angle::turn(first.start(), b + g), -n * c);
            }
        }
        word[0] = first;
    }
}

void NuEvenCochain::middle_split(std::span<const Angle> args, Morphism& out, int& fired) const
{
    const ArcSystem& sys = system();
    const int k = static_cast<int>(args.size());
    int i = -1;
    for (int p = 0; p + 1 < k; ++p) {
        if (crossing(sys, args[p], args[p + 1])) continue;
        if (i >= 0 || args[p + 1].start() != end_half_edge(sys, args[p])) return;
        i = p;
    }
    if (i < 0) return;
    const HalfEdge hm = sys.partner(end_half_edge(sys, args[i]));
    if (sys.puncture_of(hm) != m_) return;

    const Angle first = args.front(), last = args.back();
    // Presentations (b, g): strip b steps from the front of the first
    // argument or g steps from the back of the last one, never both.
    std::vector<std::pair<int, int>> presentations;
    {
        const HalfEdge target = sys.partner(end_half_edge(sys, last));
        const PunctureId p = sys.puncture_of(first.start());
        if (sys.puncture_of(target) == p)
            for (int b = sys.steps_between(first.start(), target); b < first.steps(); b += sys.valence(p))
                presentations.emplace_back(b, 0);
        const HalfEdge want = sys.partner(first.start());
        const PunctureId q = sys.puncture_of(last.start());
        if (sys.puncture_of(want) == q) {
            int g = sys.steps_between(want, end_half_edge(sys, last));
            if (g == 0) g = sys.valence(q);
            for (; g < last.steps(); g += sys.valence(q)) presentations.emplace_back(0, g);
        }
    }

    std::vector<Angle> alpha(args.begin(), args.end()), disk, merged;
    for (auto [b, g] : presentations) {
        alpha[0] = Angle::turn(sys.rotate(first.start(), b), first.steps() - b);
        alpha[k - 1] = Angle::turn(last.start(), last.steps() - g);
        disk.assign(alpha.begin(), alpha.begin() + i + 1);
        disk.push_back(Angle::turn(hm, full_));
        disk.insert(disk.end(), alpha.begin() + i + 1, alpha.end());
        const std::int64_t c = oracle_->count(disk);
        if (c == 0) continue;
        ++fired;
        ++stats_.middle_split;

        merged.assign(alpha.begin(), alpha.begin() + i);
        merged.push_back(Angle::turn(alpha[i].start(), alpha[i].steps() + alpha[i + 1].steps()));
        merged.insert(merged.end(), alpha.begin() + i + 2, alpha.end());
        const SplitElement taken{i, alpha[i].steps(), alpha[i + 1].steps(), c};
        const auto lowest = min_split(*oracle_, merged, m_, r_);
        if (!lowest || *lowest == taken) continue;
        int completions = 0;
        const auto magic = splitting_angle(*oracle_, merged, m_, r_, *lowest, taken, &completions);
        if (completions > 1) ++stats_.ambiguous_splits;
        if (!magic) continue;
        Rational coef = scalars_.weights.of(*magic) * c;
        if (gtl::is_zero(coef)) continue;
        if (parity_sum(std::span<const Angle>(alpha).first(i + 1))) coef = -coef;
        Angle output;
        if (b > 0)
            output = Angle::turn(first.start(), b);
        else if (g > 0)
            output = Angle::turn(end_half_edge(sys, alpha[k - 1]), g);
        else
            output = Angle::identity(sys.arc_of(alpha[0].start()));
        out.add(output, coef);
    }
}

Morphism ScalingCochain::eval(std::span<const Angle> args) const
{
    Morphism out;
    if (args.size() != 1 || args[0].is_identity()) return out;
    Rational w = lambda_.of(args[0]);
    if (!gtl::is_zero(w)) out.add(args[0], w);
    return out;
}

CochainPtr nu_id(const ArcSystem& sys)
{
    Morphism v;
    for (ArcId a = 0; a < sys.num_arcs(); ++a) v.add(Angle::identity(a), 1);
    return std::make_shared<ArityZeroCochain>(sys, std::move(v), 1, "NuId");
}

CochainPtr nu_odd(const DiskOracle& oracle, PunctureId m, int r)
{
    if (r < 1) throw std::invalid_argument("nu_odd needs r >= 1");
    return std::make_shared<NuOddCochain>(oracle, m, r);
}

std::shared_ptr<const NuEvenCochain> nu_even(const DiskOracle& oracle, PunctureId m, int r, InputScalars scalars)
{
    return std::make_shared<NuEvenCochain>(oracle, m, r, std::move(scalars));
}

CochainPtr id_cochain(const ArcSystem& sys, ArcId a)
{
    return std::make_shared<ArityZeroCochain>(sys, Morphism(Angle::identity(a)), 1, "IdArc");
}

CochainPtr gauge_epsilon(const ArcSystem& sys, HalfEdge h, int r)
{
    const Angle e = Angle::turn(h, r * sys.valence(sys.puncture_of(h)));
    return std::make_shared<ArityZeroCochain>(sys, Morphism(e), reduced_degree(e), "Gauge");
}

std::vector<SplitElement> splitting_set(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int r)
{
    const ArcSystem& sys = oracle.system();
    std::vector<SplitElement> out;
    if (seq.empty() || has_identity(seq)) return out;
    const int full = r * sys.valence(m);
    std::vector<Angle> word;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (int t = 1; t < seq[i].steps(); ++t) {
            if (sys.puncture_of(sys.partner(sys.rotate(seq[i].start(), t))) != m) continue;
            split_word(sys, seq, i, t, full, word);
            if (auto c = oracle.count(word))
                out.push_back(SplitElement{static_cast<int>(i), t, seq[i].steps() - t, c});
        }
    return out;
}

std::optional<SplitElement> min_split(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int r)
{
    const ArcSystem& sys = oracle.system();
    if (seq.empty() || has_identity(seq)) return std::nullopt;
    const int full = r * sys.valence(m);
    std::vector<Angle> word;
    for (std::size_t i = 0; i < seq.size(); ++i)
        for (int t = 1; t < seq[i].steps(); ++t) {
            if (sys.puncture_of(sys.partner(sys.rotate(seq[i].start(), t))) != m) continue;
            split_word(sys, seq, i, t, full, word);
            if (auto c = oracle.count(word)) return SplitElement{static_cast<int>(i), t, seq[i].steps() - t, c};
        }
    return std::nullopt;
}

std::optional<Angle> splitting_angle(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int /*r*/,
                                     const SplitElement& a, const SplitElement& b, int* completions)
{
    const ArcSystem& sys = oracle.system();
    if (completions) *completions = 0;
    if (b < a) throw std::invalid_argument("splitting_angle: elements out of order");
    if (a == b) return std::nullopt;
    if (a.index == b.index) {
        if (completions) *completions = 1;
        return Angle::turn(sys.rotate(seq[a.index].start(), a.first_steps), b.first_steps - a.first_steps);
    }
    // a's second part, the angles strictly between, b's first part, then alpha.
    const HalfEdge e0 = sys.rotate(seq[a.index].start(), a.first_steps);
    std::vector<Angle> word;
    word.push_back(Angle::turn(e0, seq[a.index].steps() - a.first_steps));
    for (int u = a.index + 1; u < b.index; ++u) word.push_back(seq[u]);
    word.push_back(Angle::turn(seq[b.index].start(), b.first_steps));
    const HalfEdge h = sys.partner(end_half_edge(sys, word.back()));
    const HalfEdge to = sys.partner(e0);
    if (sys.puncture_of(h) != m || sys.puncture_of(to) != m) return std::nullopt;
    long rest = 0;
    for (auto x : word) rest += x.steps();
    word.push_back(Angle());
    const int n = static_cast<int>(word.size());
    const int val = sys.valence(m);
    // A disk boundary with n corners has at most 3n - 6 sectors in total.
    const long limit = 3L * n - 6 - rest;
    int x = sys.steps_between(h, to);
    if (x == 0) x = val;
    std::optional<Angle> found;
    for (; x <= limit; x += val) {
        word.back() = Angle::turn(h, x);
        if (oracle.count(word) == 0) continue;
        if (completions) ++*completions;
        if (!found) found = word.back();
    }
    return found;
}

Vector one_adic_vector(const Cochain& nu, int shift)
{
    const ArcSystem& sys = nu.system();
    Vector v(sys.num_half_edges(), 0);
    for (HalfEdge h = 0; h < sys.num_half_edges(); ++h) {
        const Angle a = Angle::turn(h, 1);
        v[h] = nu.eval(std::span<const Angle>(&a, 1)).coefficient(Angle::turn(h, 1 + shift));
    }
    return v;
}

SporadicBasis sporadic_space(const DiskOracle& oracle)
{
    const ArcSystem& sys = oracle.system();
    const int cols = sys.num_half_edges();
    SporadicBasis out;
    for (const Face& f : sys.faces()) {
        Vector row(cols, 0);
        for (HalfEdge h : f.corners) row[h] += 1;
        out.constraints.push_back(std::move(row));
    }
    out.kernel = kernel(out.constraints, cols);
    out.dim_space = static_cast<int>(out.kernel.size());

    auto mu = std::make_shared<MuCochain>(oracle);
    for (ArcId a = 0; a < sys.num_arcs(); ++a) {
        BracketCochain d(mu, id_cochain(sys, a));
        out.coboundaries.push_back(one_adic_vector(d));
    }
    out.dim_coboundaries = rank(out.coboundaries);

    Matrix span = out.coboundaries;
    int current = out.dim_coboundaries;
    for (const Vector& v : out.kernel) {
        span.push_back(v);
        const int next = rank(span);
        if (next > current) {
            out.representatives.push_back(v);
            current = next;
        } else {
            span.pop_back();
        }
    }
    out.dim_quotient = static_cast<int>(out.representatives.size());
    if (current != out.dim_space) throw std::logic_error("sporadic_space: coboundaries leave the polygon-sum space");
    out.expected = 2 * sys.genus() - 1 + sys.num_punctures();
    return out;
}

std::vector<CochainPtr> SporadicBasis::cochains(const ArcSystem& sys) const
{
    std::vector<CochainPtr> out;
    for (const Vector& v : representatives) {
        AngleWeights w(sys);
        for (HalfEdge h = 0; h < sys.num_half_edges(); ++h) w.set(h, v[h]);
        out.push_back(std::make_shared<ScalingCochain>(std::move(w)));
    }
    return out;
}

}  // namespace gtl
