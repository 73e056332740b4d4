#include "gtl/algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace gtl {

std::optional<Angle> compose(const ArcSystem& sys, Angle a, Angle b)
{
    if (b.is_identity()) {
        if (source_arc(sys, a) == b.arc()) return a;
        return std::nullopt;
    }
    if (a.is_identity()) {
        if (target_arc(sys, b) == a.arc()) return b;
        return std::nullopt;
    }
    if (a.start() != end_half_edge(sys, b)) return std::nullopt;
    return Angle::turn(b.start(), a.steps() + b.steps());
}

void Morphism::add(Angle a, const Rational& c)
{
    if (gtl::is_zero(c)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                               [](const Term& t, Angle x) { return t.first.key() < x.key(); });
    if (it != terms_.end() && it->first == a) {
        it->second += c;
        if (gtl::is_zero(it->second)) terms_.erase(it);
    } else {
        terms_.insert(it, Term{a, c});
    }
}

Rational Morphism::coefficient(Angle a) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), a,
                               [](const Term& t, Angle x) { return t.first.key() < x.key(); });
    if (it != terms_.end() && it->first == a) return it->second;
    return 0;
}

Morphism& Morphism::operator+=(const Morphism& other)
{
    if (other.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = other.terms_;
        return *this;
    }
    std::vector<Term> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    auto i = terms_.begin();
    auto j = other.terms_.begin();
    while (i != terms_.end() || j != other.terms_.end()) {
        if (j == other.terms_.end() || (i != terms_.end() && i->first.key() < j->first.key())) {
            merged.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first.key() < i->first.key()) {
            merged.push_back(*j++);
        } else {
            Rational c = i->second + j->second;
            if (!gtl::is_zero(c)) merged.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

Morphism& Morphism::operator-=(const Morphism& other)
{
    Morphism neg = other;
    neg *= Rational(-1);
    return *this += neg;
}

Morphism& Morphism::operator*=(const Rational& c)
{
    if (gtl::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= c;
    return *this;
}

std::optional<std::pair<Angle, int>> mu2_basis(const ArcSystem& sys, Angle a, Angle b)
{
    auto ab = compose(sys, a, b);
    if (!ab) return std::nullopt;
    return std::make_pair(*ab, degree(b) ? -1 : 1);
}

Morphism mu2(const ArcSystem& sys, const Morphism& x, const Morphism& y)
{
    Morphism out;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y)
            if (auto r = mu2_basis(sys, a, b)) out.add(r->first, r->second * ca * cb);
    return out;
}

Morphism ell_power(const ArcSystem& sys, PunctureId p, int r)
{
    if (p < 0 || p >= sys.num_punctures()) throw InputError("unknown puncture index " + std::to_string(p));
    if (r < 1) throw std::invalid_argument("ell_power needs r >= 1");
    Morphism out;
    int v = sys.valence(p);
    for (int i = 0; i < v; ++i) out.add(Angle::turn(sys.first_half_edge(p) + i, r * v), 1);
    return out;
}

Angle complement_to_turns(const ArcSystem& sys, Angle a, int r)
{
    if (a.is_identity()) throw std::invalid_argument("complement_to_turns: identity has no complement");
    int full = r * sys.valence(sys.puncture_of(a.start()));
    if (a.steps() >= full) throw std::invalid_argument("complement_to_turns: angle is not shorter than r turns");
    return Angle::turn(end_half_edge(sys, a), full - a.steps());
}

std::string render(const ArcSystem& sys, Angle a)
{
    if (a.is_identity()) return "id(" + sys.arc_name(a.arc()) + ")";
    return "turn(" + sys.puncture_name(sys.puncture_of(a.start())) + ", " + sys.half_edge_name(a.start()) + ", " +
           std::to_string(a.steps()) + ")";
}

bool render_less(const ArcSystem& sys, Angle a, Angle b)
{
    if (a.is_identity() != b.is_identity()) return a.is_identity();
    if (a.is_identity()) return sys.arc_name(a.arc()) < sys.arc_name(b.arc());
    const auto& pa = sys.puncture_name(sys.puncture_of(a.start()));
    const auto& pb = sys.puncture_name(sys.puncture_of(b.start()));
    if (pa != pb) return pa < pb;
    const auto& ha = sys.half_edge_name(a.start());
    const auto& hb = sys.half_edge_name(b.start());
    if (ha != hb) return ha < hb;
    return a.steps() < b.steps();
}

std::string render(const ArcSystem& sys, const Morphism& m)
{
    if (m.is_zero()) return "0";
    std::vector<Morphism::Term> terms = m.terms();
    std::sort(terms.begin(), terms.end(),
              [&](const auto& x, const auto& y) { return render_less(sys, x.first, y.first); });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        out += to_string(terms[i].second) + " * " + render(sys, terms[i].first);
    }
    return out;
}

}  // namespace gtl
