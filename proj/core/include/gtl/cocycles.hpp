#pragma once

#include "gtl/hochschild.hpp"
#include "gtl/linalg.hpp"

#include <atomic>
#include <filesystem>
#include <optional>
#include <string_view>

namespace gtl {

/// A weight per indecomposable angle (indexed by start half-edge), extended
/// additively to longer turns. Identities weigh zero.
class AngleWeights {
public:
    AngleWeights() = default;
    explicit AngleWeights(const ArcSystem& sys) : sys_(&sys), w_(sys.num_half_edges(), 0) {}

    const ArcSystem& system() const { return *sys_; }
    void set(HalfEdge h, const Rational& v) { w_.at(h) = v; }
    const Rational& at(HalfEdge h) const { return w_.at(h); }
    const std::vector<Rational>& values() const { return w_; }
    /// Sum of the weights at puncture p, i.e. the weight of one full turn.
    Rational total(PunctureId p) const;
    Rational of(Angle a) const;

private:
    const ArcSystem* sys_ = nullptr;
    std::vector<Rational> w_;
};

/// Input scalars for the ordinary even cocycle at one puncture.
struct InputScalars {
    PunctureId m = 0;
    AngleWeights weights;

    Rational total() const { return weights.total(m); }

    /// 1/valence on every indecomposable at m.
    static InputScalars uniform(const ArcSystem& sys, PunctureId m);
    /// Weight 1 on the indecomposable starting at h, 0 elsewhere.
    static InputScalars concentrated(const ArcSystem& sys, HalfEdge h);
    /// JSON object {"half-edge": "p/q", ...}; all keys at one puncture,
    /// omitted half-edges weigh 0. `m` is required when the object is empty.
    static InputScalars parse(const ArcSystem& sys, std::string_view json_text, std::optional<PunctureId> m = {});
    static InputScalars load(const ArcSystem& sys, const std::filesystem::path& path,
                             std::optional<PunctureId> m = {});
};

/// Reduced parity of r full turns at m; the odd family has this parity and
/// the ordinary even family the opposite one.
int full_turn_parity(const ArcSystem& sys, PunctureId m, int r);

class NuOddCochain final : public Cochain {
public:
    NuOddCochain(const DiskOracle& oracle, PunctureId m, int r);
    Morphism eval(std::span<const Angle> args) const override;
    bool may_be_nonzero(int k) const override;
    PunctureId puncture() const { return m_; }
    int turns() const { return r_; }

private:
    const DiskOracle* oracle_;
    PunctureId m_;
    int r_;
    Morphism zero_adic_;
};

/// Counters gathered while evaluating the even cocycle.
struct EvenRuleStats {
    std::atomic<std::uint64_t> end_split{0};
    std::atomic<std::uint64_t> old_era{0};
    std::atomic<std::uint64_t> new_era{0};
    std::atomic<std::uint64_t> middle_split{0};
    /// Sequences matched by more than one rule or presentation.
    std::atomic<std::uint64_t> collisions{0};
    /// Splitting angles with more than one completion.
    std::atomic<std::uint64_t> ambiguous_splits{0};
    /// End-split firings whose sign disagreed with the degree sum.
    std::atomic<std::uint64_t> sign_incoherent{0};
};

class NuEvenCochain final : public Cochain {
public:
    NuEvenCochain(const DiskOracle& oracle, PunctureId m, int r, InputScalars scalars);
    Morphism eval(std::span<const Angle> args) const override;
    bool may_be_nonzero(int k) const override;

    PunctureId puncture() const { return m_; }
    int turns() const { return r_; }
    const InputScalars& scalars() const { return scalars_; }
    const EvenRuleStats& stats() const { return stats_; }

private:
    void end_split(std::span<const Angle> args, Morphism& out, int& fired) const;
    void era_end_split(std::span<const Angle> args, Morphism& out, int& fired) const;
    void middle_split(std::span<const Angle> args, Morphism& out, int& fired) const;

    const DiskOracle* oracle_;
    PunctureId m_;
    int r_;
    int full_;  // r * valence(m)
    InputScalars scalars_;
    mutable EvenRuleStats stats_;
};

/// 1-adic cochain alpha -> lambda(alpha) alpha (sporadic classes).
class ScalingCochain final : public Cochain {
public:
    ScalingCochain(AngleWeights lambda, std::string kind = "Sporadic")
        : Cochain(lambda.system(), 0, std::move(kind)), lambda_(std::move(lambda)) {}
    Morphism eval(std::span<const Angle> args) const override;
    bool may_be_nonzero(int k) const override { return k == 1; }
    const AngleWeights& weights() const { return lambda_; }

private:
    AngleWeights lambda_;
};

CochainPtr nu_id(const ArcSystem& sys);
CochainPtr nu_odd(const DiskOracle& oracle, PunctureId m, int r);
std::shared_ptr<const NuEvenCochain> nu_even(const DiskOracle& oracle, PunctureId m, int r, InputScalars scalars);
CochainPtr id_cochain(const ArcSystem& sys, ArcId a);
/// Arity-0 cochain with value r full turns starting at h.
CochainPtr gauge_epsilon(const ArcSystem& sys, HalfEdge h, int r);

/// One way to insert r full turns at m into a sequence: position `index`
/// (0-based) splits as turn(start, first_steps) then the remainder.
struct SplitElement {
    int index = 0;
    int first_steps = 0;
    int second_steps = 0;
    std::int64_t witnesses = 0;
    auto operator<=>(const SplitElement& o) const
    {
        if (index != o.index) return index <=> o.index;
        return first_steps <=> o.first_steps;
    }
    bool operator==(const SplitElement& o) const { return index == o.index && first_steps == o.first_steps; }
};

/// The splitting set in increasing order.
std::vector<SplitElement> splitting_set(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int r);
/// Least element of the splitting set, if any.
std::optional<SplitElement> min_split(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int r);

/// Splitting angle between a <= b. Nullopt when a == b. For a.index <
/// b.index it is the angle at m closing the disk; `completions` receives
/// the number of distinct closing angles found.
std::optional<Angle> splitting_angle(const DiskOracle& oracle, std::span<const Angle> seq, PunctureId m, int r,
                                     const SplitElement& a, const SplitElement& b, int* completions = nullptr);

/// The sporadic even classes.
struct SporadicBasis {
    Matrix constraints;                 // one row per face, one column per half-edge
    std::vector<Vector> kernel;         // basis of the polygon-sum-zero space
    std::vector<Vector> coboundaries;   // (d id_a)^1 coefficient vectors, one per arc
    std::vector<Vector> representatives;
    int dim_space = 0;
    int dim_coboundaries = 0;
    int dim_quotient = 0;
    int expected = 0;                   // 2g - 1 + |M|

    std::vector<CochainPtr> cochains(const ArcSystem& sys) const;
};

SporadicBasis sporadic_space(const DiskOracle& oracle);

/// Coefficient vector of a 1-adic cochain on the indecomposable angles: entry
/// h is the coefficient of turn(h, 1 + shift) in nu(turn(h, 1)).
Vector one_adic_vector(const Cochain& nu, int shift = 0);

}  // namespace gtl
