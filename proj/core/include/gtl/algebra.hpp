#pragma once

#include "gtl/rational.hpp"
#include "gtl/surface.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gtl {

/// Basis morphism of the gentle algebra: the identity of an arc, or a
/// clockwise turn of `steps` sectors starting at a half-edge.
class Angle {
public:
    constexpr Angle() = default;
    static constexpr Angle identity(ArcId a) { return Angle(a, 0); }
    static constexpr Angle turn(HalfEdge start, int steps) { return Angle(start, steps); }

    constexpr bool is_identity() const { return steps_ == 0; }
    constexpr bool is_turn() const { return steps_ > 0; }
    /// Arc of an identity. Meaningless for turns.
    constexpr ArcId arc() const { return id_; }
    /// Start half-edge of a turn. Meaningless for identities.
    constexpr HalfEdge start() const { return id_; }
    constexpr int steps() const { return steps_; }

    /// Dense ordering key; identities sort before turns.
    constexpr std::int64_t key() const
    {
        return (static_cast<std::int64_t>(steps_ == 0 ? 0 : 1) << 62) |
               (static_cast<std::int64_t>(id_) << 31) | static_cast<std::int64_t>(steps_);
    }
    friend constexpr bool operator==(Angle a, Angle b) { return a.id_ == b.id_ && a.steps_ == b.steps_; }
    friend constexpr auto operator<=>(Angle a, Angle b) { return a.key() <=> b.key(); }

private:
    constexpr Angle(int id, int steps) : id_(id), steps_(steps) {}
    std::int32_t id_ = 0;
    std::int32_t steps_ = 0;
};

/// Half-edge where a turn ends.
inline HalfEdge end_half_edge(const ArcSystem& sys, Angle a) { return sys.rotate(a.start(), a.steps()); }
inline ArcId source_arc(const ArcSystem& sys, Angle a) { return a.is_identity() ? a.arc() : sys.arc_of(a.start()); }
inline ArcId target_arc(const ArcSystem& sys, Angle a)
{
    return a.is_identity() ? a.arc() : sys.arc_of(end_half_edge(sys, a));
}
/// Target of x equals source of y, so (x, y) may appear consecutively in a
/// Hochschild argument list with y after x.
inline bool chains(const ArcSystem& sys, Angle x, Angle y) { return target_arc(sys, x) == source_arc(sys, y); }

/// Product a*b, applying b first. Nullopt means zero.
std::optional<Angle> compose(const ArcSystem& sys, Angle a, Angle b);

inline int degree(Angle a) { return a.steps() & 1; }
inline int reduced_degree(Angle a) { return (a.steps() + 1) & 1; }

/// Finite linear combination of angles with nonzero rational coefficients,
/// kept sorted by Angle::key.
class Morphism {
public:
    using Term = std::pair<Angle, Rational>;

    Morphism() = default;
    explicit Morphism(Angle a, const Rational& c = 1) { add(a, c); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }

    void add(Angle a, const Rational& c);
    Rational coefficient(Angle a) const;

    Morphism& operator+=(const Morphism& other);
    Morphism& operator-=(const Morphism& other);
    Morphism& operator*=(const Rational& c);
    friend Morphism operator+(Morphism a, const Morphism& b) { return a += b; }
    friend Morphism operator-(Morphism a, const Morphism& b) { return a -= b; }
    friend Morphism operator*(const Rational& c, Morphism a) { return a *= c; }
    friend Morphism operator-(Morphism a) { return a *= Rational(-1); }
    friend bool operator==(const Morphism& a, const Morphism& b) { return a.terms_ == b.terms_; }

private:
    std::vector<Term> terms_;
};

/// Signed product mu2(a, b) = (-1)^|b| ab on basis elements.
std::optional<std::pair<Angle, int>> mu2_basis(const ArcSystem& sys, Angle a, Angle b);
Morphism mu2(const ArcSystem& sys, const Morphism& x, const Morphism& y);

/// Sum over half-edges h at p of turn(h, r * valence(p)).
Morphism ell_power(const ArcSystem& sys, PunctureId p, int r);

/// The angle c with c*a equal to r full turns at start(a).
Angle complement_to_turns(const ArcSystem& sys, Angle a, int r);

std::string render(const ArcSystem& sys, Angle a);
std::string render(const ArcSystem& sys, const Morphism& m);

/// Sort key for rendering: puncture name, half-edge name, steps.
bool render_less(const ArcSystem& sys, Angle a, Angle b);

}  // namespace gtl
