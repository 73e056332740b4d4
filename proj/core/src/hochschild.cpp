#include "gtl/hochschild.hpp"

#include <stdexcept>

namespace gtl {

bool is_chained(const ArcSystem& sys, std::span<const Angle> args)
{
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
        if (!chains(sys, args[i], args[i + 1])) return false;
    return true;
}

void TableCochain::set(const Sequence& args, Morphism value)
{
    if (args.size() >= arities_.size()) arities_.resize(args.size() + 1, 0);
    arities_[args.size()] = 1;
    table_[args] = std::move(value);
}

Morphism TableCochain::eval(std::span<const Angle> args) const
{
    if (!may_be_nonzero(static_cast<int>(args.size()))) return {};
    auto it = table_.find(Sequence(args.begin(), args.end()));
    return it == table_.end() ? Morphism{} : it->second;
}

bool TableCochain::may_be_nonzero(int k) const
{
    return k < static_cast<int>(arities_.size()) && arities_[k];
}

SumCochain::SumCochain(const ArcSystem& sys, int parity, std::vector<std::pair<Rational, CochainPtr>> parts)
    : Cochain(sys, parity, "Sum"), parts_(std::move(parts))
{
    for (const auto& [c, p] : parts_)
        if (p->parity() != this->parity()) throw std::invalid_argument("SumCochain: mixed parities");
}

Morphism SumCochain::eval(std::span<const Angle> args) const
{
    Morphism out;
    for (const auto& [c, p] : parts_) {
        Morphism v = p->eval(args);
        v *= c;
        out += v;
    }
    return out;
}

bool SumCochain::may_be_nonzero(int k) const
{
    for (const auto& [c, p] : parts_)
        if (p->may_be_nonzero(k)) return true;
    return false;
}

ProductCochain::ProductCochain(CochainPtr eta, CochainPtr omega)
    : Cochain(eta->system(), eta->parity() + omega->parity(), "Product"), eta_(std::move(eta)), omega_(std::move(omega))
{
}

Morphism ProductCochain::eval(std::span<const Angle> args) const { return gerstenhaber_product(*eta_, *omega_, args); }

BracketCochain::BracketCochain(CochainPtr eta, CochainPtr omega)
    : Cochain(eta->system(), eta->parity() + omega->parity(), "Bracket"), eta_(std::move(eta)), omega_(std::move(omega))
{
}

Morphism BracketCochain::eval(std::span<const Angle> args) const { return gerstenhaber_bracket(*eta_, *omega_, args); }

namespace {

// Whether a 0-adic term t fits between args[i-1] and args[i].
bool fits_slot(const ArcSystem& sys, std::span<const Angle> args, std::size_t i, Angle t)
{
    if (i > 0 && !chains(sys, args[i - 1], t)) return false;
    if (i < args.size() && !chains(sys, t, args[i])) return false;
    if (args.empty() && source_arc(sys, t) != target_arc(sys, t)) return false;
    return true;
}

// Whether an inner output t may replace args[i..j).
bool fits_range(const ArcSystem& sys, std::span<const Angle> args, std::size_t i, std::size_t j, Angle t)
{
    if (i == j) return fits_slot(sys, args, i, t);
    if (source_arc(sys, t) != source_arc(sys, args[i])) return false;
    if (target_arc(sys, t) != target_arc(sys, args[j - 1])) return false;
    return true;
}

// Outer argument lists must span the same pair of arcs as the input.
bool same_ends(const ArcSystem& sys, std::span<const Angle> args, std::span<const Angle> outer)
{
    if (args.empty()) return source_arc(sys, outer.front()) == target_arc(sys, outer.back());
    return source_arc(sys, outer.front()) == source_arc(sys, args.front()) &&
           target_arc(sys, outer.back()) == target_arc(sys, args.back());
}

}  // namespace

Morphism gerstenhaber_product(const Cochain& eta, const Cochain& omega, std::span<const Angle> args)
{
    const ArcSystem& sys = eta.system();
    const std::size_t k = args.size();
    Morphism total;
    std::vector<Angle> outer;
    outer.reserve(k + 1);
    int prefix = 0;
    for (std::size_t i = 0; i <= k; ++i) {
        const bool negate = (prefix & omega.parity()) & 1;
        for (std::size_t len = 0; i + len <= k; ++len) {
            if (!eta.may_be_nonzero(static_cast<int>(k - len + 1)) || !omega.may_be_nonzero(static_cast<int>(len)))
                continue;
            Morphism inner = omega.eval(args.subspan(i, len));
            for (const auto& [t, c] : inner) {
                if (!fits_range(sys, args, i, i + len, t)) continue;
                outer.assign(args.begin(), args.begin() + i);
                outer.push_back(t);
                outer.insert(outer.end(), args.begin() + i + len, args.end());
                Morphism o = eta.eval(outer);
                if (o.is_zero()) continue;
                o *= negate ? Rational(-c) : c;
                total += o;
            }
        }
        if (i < k) prefix += reduced_degree(args[i]);
    }
    return total;
}

Morphism gerstenhaber_bracket(const Cochain& eta, const Cochain& omega, std::span<const Angle> args)
{
    Morphism a = gerstenhaber_product(eta, omega, args);
    Morphism b = gerstenhaber_product(omega, eta, args);
    if ((eta.parity() & omega.parity()) & 1)
        a += b;
    else
        a -= b;
    return a;
}

Morphism differential(const Cochain& mu, const Cochain& nu, std::span<const Angle> args)
{
    return gerstenhaber_bracket(mu, nu, args);
}

Morphism cup(const Cochain& mu, const Cochain& kappa, const Cochain& nu, std::span<const Angle> args)
{
    const ArcSystem& sys = mu.system();
    const std::size_t r = args.size();
    std::vector<int> pre(r + 1, 0);
    for (std::size_t t = 0; t < r; ++t) pre[t + 1] = pre[t] + reduced_degree(args[t]);

    Morphism total;
    std::vector<Angle> outer;
    for (std::size_t i = 0; i <= r; ++i)
        for (std::size_t j = i; j <= r; ++j) {
            if (!nu.may_be_nonzero(static_cast<int>(j - i))) continue;
            Morphism nv;
            bool nv_done = false;
            for (std::size_t u = j; u <= r; ++u)
                for (std::size_t v = u; v <= r; ++v) {
                    const std::size_t outer_arity = r - (v - u) - (j - i) + 2;
                    if (!kappa.may_be_nonzero(static_cast<int>(v - u)) ||
                        !mu.may_be_nonzero(static_cast<int>(outer_arity)))
                        continue;
                    if (!nv_done) {
                        nv = nu.eval(args.subspan(i, j - i));
                        nv_done = true;
                    }
                    if (nv.is_zero()) continue;
                    Morphism kv = kappa.eval(args.subspan(u, v - u));
                    if (kv.is_zero()) continue;
                    const int x = pre[u] * kappa.parity() + pre[i] * nu.parity() + nu.parity() + 1;
                    for (const auto& [tn, cn] : nv) {
                        if (j > i && !fits_range(sys, args, i, j, tn)) continue;
                        for (const auto& [tk, ck] : kv) {
                            if (v > u && !fits_range(sys, args, u, v, tk)) continue;
                            outer.assign(args.begin(), args.begin() + i);
                            outer.push_back(tn);
                            outer.insert(outer.end(), args.begin() + j, args.begin() + u);
                            outer.push_back(tk);
                            outer.insert(outer.end(), args.begin() + v, args.end());
                            if (!is_chained(sys, outer) || !same_ends(sys, args, outer)) continue;
                            Morphism o = mu.eval(outer);
                            if (o.is_zero()) continue;
                            Rational c = cn * ck;
                            if (x & 1) c = -c;
                            o *= c;
                            total += o;
                        }
                    }
                }
        }
    return total;
}

bool parity_defect(const Cochain& nu, std::span<const Angle> args)
{
    int expected = nu.parity();
    for (auto a : args) expected += reduced_degree(a);
    for (const auto& [t, c] : nu.eval(args))
        if ((reduced_degree(t) & 1) != (expected & 1)) return true;
    return false;
}

}  // namespace gtl
