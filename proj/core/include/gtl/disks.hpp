#pragma once

#include "gtl/algebra.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace gtl {

class OutOfBounds : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CatalogTooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Bounds {
    int max_faces = 1;
    int max_corners = 3;
    int max_steps = 1;
};

/// One face copy inside a disk. parent == -1 for the root. parent_edge is
/// the edge position (in the parent's face) of the gluing, own_edge the
/// matching edge position in this face.
struct FaceInstance {
    int face = 0;
    int parent = -1;
    int parent_edge = -1;
    int own_edge = -1;
};

/// Boundary edge of a disk: edge position `edge` of face instance `instance`.
struct EdgeRef {
    int instance = 0;
    int edge = 0;
};

/// A tree of face copies glued along arcs. boundary[i] is the corner turn,
/// edges[i] the boundary edge between corner i and corner i+1.
struct ImmersedDisk {
    std::vector<FaceInstance> faces;
    std::vector<Angle> boundary;
    std::vector<EdgeRef> edges;

    int face_count() const { return static_cast<int>(faces.size()); }
    int corner_count() const { return static_cast<int>(boundary.size()); }
};

ImmersedDisk single_face_disk(const ArcSystem& sys, int face);
/// Glue a fresh copy of the face across boundary edge i. Every corner count
/// grows by (face size - 2) and the two corners next to the edge gain a step.
ImmersedDisk glue_across(const ArcSystem& sys, const ImmersedDisk& d, int edge_index);
/// Label-respecting plane-tree canonical form; equal iff the face trees are
/// isomorphic.
std::string canonical_tree(const ArcSystem& sys, const ImmersedDisk& d);
/// Lexicographically least rotation of the boundary, as turn keys.
std::vector<Angle> least_rotation(std::span<const Angle> word);

/// Answers "how many immersed disks have exactly this cyclic boundary,
/// read from this starting corner".
class DiskOracle {
public:
    explicit DiskOracle(const ArcSystem& sys) : sys_(&sys) {}
    virtual ~DiskOracle() = default;
    const ArcSystem& system() const { return *sys_; }
    virtual std::int64_t count(std::span<const Angle> word) const = 0;
    /// No disk has fewer corners than this.
    int min_corners() const { return sys_->min_face_size(); }

protected:
    const ArcSystem* sys_;
};

/// Cheap necessary conditions shared by all oracles: turns only, crossing
/// adjacency between consecutive corners, and the area identity
/// sum(steps) = corners - 2 + 2 * faces with 1 <= faces <= (corners - 2) / (min face size - 2).
bool passes_disk_prefilter(const ArcSystem& sys, std::span<const Angle> word);
/// Number of faces a disk with this boundary must have.
int implied_face_count(std::span<const Angle> word);

/// Exact counting by cutting along the interior arc that leaves the first
/// merged corner. Unbounded; memoized. Not thread-safe (one per thread).
class CuttingOracle final : public DiskOracle {
public:
    explicit CuttingOracle(const ArcSystem& sys, std::size_t memo_limit = 4'000'000)
        : DiskOracle(sys), memo_limit_(memo_limit) {}
    std::int64_t count(std::span<const Angle> word) const override;
    std::size_t memo_size() const { return memo_.size(); }

private:
    std::int64_t count_normalized(const std::vector<Angle>& word) const;
    std::size_t memo_limit_;
    mutable std::unordered_map<std::string, std::int64_t> memo_;
};

class DiskCatalog {
public:
    struct Witness {
        const ImmersedDisk* disk;
        int offset;
    };

    /// Breadth-first gluing from single faces, deduplicated by face tree.
    /// The memory cap (bytes) comes from GTL_HH_MAX_MEMORY_MB when set.
    static DiskCatalog build(const ArcSystem& sys, const Bounds& b);

    const ArcSystem& system() const { return *sys_; }
    const Bounds& bounds() const { return bounds_; }
    const std::vector<ImmersedDisk>& disks() const { return disks_; }

    /// Throws OutOfBounds when the query cannot be answered conclusively.
    std::vector<Witness> find(std::span<const Angle> seq) const;
    void check_query(std::span<const Angle> seq) const;

    /// One line per disk: faces, step profile, boundary word (least rotation).
    std::vector<std::string> dump() const;

private:
    const ArcSystem* sys_ = nullptr;
    Bounds bounds_;
    std::vector<ImmersedDisk> disks_;
    std::unordered_map<std::string, std::vector<std::pair<int, int>>> index_;
};

inline DiskCatalog build_catalog(const ArcSystem& sys, const Bounds& b) { return DiskCatalog::build(sys, b); }
inline std::vector<DiskCatalog::Witness> find_disk(const DiskCatalog& cat, std::span<const Angle> seq)
{
    return cat.find(seq);
}

/// Oracle view of an enumerated catalog; refuses queries outside its bounds.
class CatalogOracle final : public DiskOracle {
public:
    explicit CatalogOracle(const DiskCatalog& cat) : DiskOracle(cat.system()), cat_(&cat) {}
    std::int64_t count(std::span<const Angle> word) const override;

private:
    const DiskCatalog* cat_;
};

std::string word_key(std::span<const Angle> word);

/// The mu^k evaluation rule on a word of at least three turns: the all-in
/// output plus every final-out (last = beta * alpha_k) and first-out
/// (first = alpha_1 * gamma) output, each weighted by the disk count.
/// Adds sign times the result to out.
void add_disk_outputs(const DiskOracle& oracle, std::span<const Angle> word, int sign, Morphism& out);

/// Higher product on basis arguments; args[0] is a_1 (applied first).
Morphism mu_k(const DiskOracle& oracle, std::span<const Angle> args);

/// Sum over 0 <= n < m <= k of (-1)^(||a_1||+...+||a_n||) mu(..., mu(a_m..a_{n+1}), a_n..a_1).
Morphism a_infinity_defect(const DiskOracle& oracle, std::span<const Angle> args);

}  // namespace gtl
