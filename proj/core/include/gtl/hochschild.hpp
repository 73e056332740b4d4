#pragma once

#include "gtl/disks.hpp"

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gtl {

/// Hochschild argument list a_1, ..., a_k stored with a_1 first.
using Sequence = std::vector<Angle>;

/// True when consecutive arguments chain through arcs.
bool is_chained(const ArcSystem& sys, std::span<const Angle> args);

/// A multilinear map on chained argument lists, given as an evaluator plus
/// its reduced parity ||nu||.
class Cochain {
public:
    Cochain(const ArcSystem& sys, int parity, std::string kind)
        : sys_(&sys), parity_(parity & 1), kind_(std::move(kind)) {}
    virtual ~Cochain() = default;

    const ArcSystem& system() const { return *sys_; }
    int parity() const { return parity_; }
    const std::string& kind() const { return kind_; }

    virtual Morphism eval(std::span<const Angle> args) const = 0;
    /// Sound arity filter: false only if eval is zero on every input of
    /// this arity.
    virtual bool may_be_nonzero(int /*arity*/) const { return true; }

private:
    const ArcSystem* sys_;
    int parity_;
    std::string kind_;
};

using CochainPtr = std::shared_ptr<const Cochain>;

class MuCochain final : public Cochain {
public:
    explicit MuCochain(const DiskOracle& oracle) : Cochain(oracle.system(), 1, "Mu"), oracle_(&oracle) {}
    Morphism eval(std::span<const Angle> args) const override { return mu_k(*oracle_, args); }
    bool may_be_nonzero(int k) const override { return k == 2 || (k >= 3 && k >= oracle_->min_corners()); }
    const DiskOracle& oracle() const { return *oracle_; }

private:
    const DiskOracle* oracle_;
};

/// Cochain with only a 0-adic component.
class ArityZeroCochain final : public Cochain {
public:
    ArityZeroCochain(const ArcSystem& sys, Morphism value, int parity, std::string kind = "ArityZero")
        : Cochain(sys, parity, std::move(kind)), value_(std::move(value)) {}
    Morphism eval(std::span<const Angle> args) const override { return args.empty() ? value_ : Morphism{}; }
    bool may_be_nonzero(int k) const override { return k == 0; }
    const Morphism& value() const { return value_; }

private:
    Morphism value_;
};

/// Finite explicit map; zero off its support.
class TableCochain final : public Cochain {
public:
    TableCochain(const ArcSystem& sys, int parity) : Cochain(sys, parity, "Table") {}
    void set(const Sequence& args, Morphism value);
    Morphism eval(std::span<const Angle> args) const override;
    bool may_be_nonzero(int k) const override;
    const std::map<Sequence, Morphism>& entries() const { return table_; }

private:
    std::map<Sequence, Morphism> table_;
    std::vector<char> arities_;
};

/// Rational linear combination of cochains of equal parity.
class SumCochain final : public Cochain {
public:
    SumCochain(const ArcSystem& sys, int parity, std::vector<std::pair<Rational, CochainPtr>> parts);
    Morphism eval(std::span<const Angle> args) const override;
    bool may_be_nonzero(int k) const override;

private:
    std::vector<std::pair<Rational, CochainPtr>> parts_;
};

/// The Gerstenhaber product eta . omega as a cochain (parity adds).
class ProductCochain final : public Cochain {
public:
    ProductCochain(CochainPtr eta, CochainPtr omega);
    Morphism eval(std::span<const Angle> args) const override;

private:
    CochainPtr eta_, omega_;
};

/// [eta, omega] as a cochain.
class BracketCochain final : public Cochain {
public:
    BracketCochain(CochainPtr eta, CochainPtr omega);
    Morphism eval(std::span<const Angle> args) const override;

private:
    CochainPtr eta_, omega_;
};

/// (eta . omega)(a_k..a_1) = sum (-1)^((||a_1||+..+||a_i||) ||omega||) eta(.., omega(a_j..a_{i+1}), a_i, .., a_1).
/// Arity-0 insertions use each basis term of omega's 0-adic value whose
/// endpoints fit the slot.
Morphism gerstenhaber_product(const Cochain& eta, const Cochain& omega, std::span<const Angle> args);
/// [eta, omega] = eta . omega - (-1)^(||omega|| ||eta||) omega . eta.
Morphism gerstenhaber_bracket(const Cochain& eta, const Cochain& omega, std::span<const Angle> args);
/// d nu = [mu, nu].
Morphism differential(const Cochain& mu, const Cochain& nu, std::span<const Angle> args);
/// Cup product kappa ∪ nu through the higher products mu.
Morphism cup(const Cochain& mu, const Cochain& kappa, const Cochain& nu, std::span<const Angle> args);
/// True iff nu(args) has a term of the wrong reduced parity.
bool parity_defect(const Cochain& nu, std::span<const Angle> args);

}  // namespace gtl
