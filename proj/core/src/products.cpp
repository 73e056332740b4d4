#include "gtl/disks.hpp"

namespace gtl {

void add_disk_outputs(const DiskOracle& oracle, std::span<const Angle> word, int sign, Morphism& out)
{
    const ArcSystem& sys = oracle.system();
    const std::size_t n = word.size();
    if (n < 3 || static_cast<int>(n) < oracle.min_corners()) return;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (word[i].is_identity() || word[i + 1].is_identity()) return;
        if (word[i + 1].start() != sys.partner(end_half_edge(sys, word[i]))) return;
    }
    const Angle first = word.front();
    const Angle last = word.back();
    std::vector<Angle> buf(word.begin(), word.end());

    if (sys.partner(end_half_edge(sys, last)) == first.start()) {
        if (auto c = oracle.count(buf)) out.add(Angle::identity(source_arc(sys, first)), Rational(sign * c));
    }

    // last = beta * alpha_k with alpha_k = turn(start(last), j).
    {
        const HalfEdge want = sys.partner(first.start());
        if (sys.puncture_of(want) == sys.puncture_of(last.start())) {
            const int val = sys.valence(sys.puncture_of(want));
            int j0 = sys.steps_between(last.start(), want);
            if (j0 == 0) j0 = val;
            for (int j = j0; j < last.steps(); j += val) {
                buf[n - 1] = Angle::turn(last.start(), j);
                if (auto c = oracle.count(buf)) out.add(Angle::turn(want, last.steps() - j), Rational(sign * c));
            }
            buf[n - 1] = last;
        }
    }

    // first = alpha_1 * gamma with gamma = turn(start(first), g).
    {
        const HalfEdge want = sys.partner(end_half_edge(sys, last));
        if (sys.puncture_of(want) == sys.puncture_of(first.start())) {
            const int val = sys.valence(sys.puncture_of(want));
            int g0 = sys.steps_between(first.start(), want);
            if (g0 == 0) g0 = val;
            for (int g = g0; g < first.steps(); g += val) {
                buf[0] = Angle::turn(want, first.steps() - g);
                if (auto c = oracle.count(buf)) {
                    int s = (g & 1) ? -sign : sign;
                    out.add(Angle::turn(first.start(), g), Rational(s * c));
                }
            }
        }
    }
}

Morphism mu_k(const DiskOracle& oracle, std::span<const Angle> args)
{
    Morphism out;
    const std::size_t k = args.size();
    if (k <= 1) return out;
    if (k == 2) {
        if (auto r = mu2_basis(oracle.system(), args[1], args[0])) out.add(r->first, r->second);
        return out;
    }
    add_disk_outputs(oracle, args, 1, out);
    return out;
}

Morphism a_infinity_defect(const DiskOracle& oracle, std::span<const Angle> args)
{
    const int k = static_cast<int>(args.size());
    const int minc = oracle.min_corners();
    auto live = [&](int arity) { return arity == 2 || (arity >= 3 && arity >= minc); };
    Morphism total;
    std::vector<Angle> outer;
    int prefix = 0;  // sum of reduced degrees of a_1..a_n
    for (int n = 0; n < k; ++n) {
        for (int m = n + 1; m <= k; ++m) {
            const int inner = m - n, outer_arity = k - inner + 1;
            if (!live(inner) || !live(outer_arity)) continue;
            Morphism in = mu_k(oracle, args.subspan(n, inner));
            for (const auto& [t, c] : in) {
                outer.assign(args.begin(), args.begin() + n);
                outer.push_back(t);
                outer.insert(outer.end(), args.begin() + m, args.end());
                Morphism o = mu_k(oracle, outer);
                if (o.is_zero()) continue;
                o *= (prefix & 1) ? Rational(-c) : c;
                total += o;
            }
        }
        prefix += reduced_degree(args[n]);
    }
    return total;
}

}  // namespace gtl
