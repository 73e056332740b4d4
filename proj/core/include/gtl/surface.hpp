#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gtl {

using HalfEdge = int;
using PunctureId = int;
using ArcId = int;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A polygon of the arc system. Corner i is the indecomposable sector that
/// starts at half-edge corners[i]; edges[i] is the arc crossed when walking
/// from corner i to corner i+1.
struct Face {
    std::vector<HalfEdge> corners;
    std::vector<ArcId> edges;
    int size() const { return static_cast<int>(corners.size()); }
};

struct Violation {
    std::string rule;
    std::string message;
    std::vector<std::string> ids;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool passed() const { return violations.empty(); }
};

/// Ribbon graph: punctures are vertices, arcs are edges, and each puncture
/// carries a clockwise cyclic order of its half-edges.
///
/// Ids from the input are interned into dense indices. Half-edges are
/// numbered puncture by puncture in rotation order, so the half-edges at a
/// puncture form a contiguous block and rotate() is index arithmetic.
class ArcSystem {
public:
    static ArcSystem parse(std::string_view json_text);
    static ArcSystem load(const std::filesystem::path& path);

    int num_punctures() const { return static_cast<int>(puncture_names_.size()); }
    int num_half_edges() const { return static_cast<int>(half_edge_names_.size()); }
    int num_arcs() const { return static_cast<int>(arc_ends_.size()); }

    const std::string& puncture_name(PunctureId p) const { return puncture_names_.at(p); }
    const std::string& half_edge_name(HalfEdge h) const { return half_edge_names_.at(h); }
    std::string arc_name(ArcId a) const;

    PunctureId puncture(std::string_view name) const;
    HalfEdge half_edge(std::string_view name) const;

    PunctureId puncture_of(HalfEdge h) const { return puncture_of_[h]; }
    int position(HalfEdge h) const { return h - block_start_[puncture_of_[h]]; }
    int valence(PunctureId p) const { return block_start_[p + 1] - block_start_[p]; }
    HalfEdge first_half_edge(PunctureId p) const { return block_start_[p]; }
    HalfEdge partner(HalfEdge h) const { return partner_[h]; }
    ArcId arc_of(HalfEdge h) const { return arc_of_[h]; }
    /// Both ends of an arc, in input order.
    std::pair<HalfEdge, HalfEdge> arc_ends(ArcId a) const { return arc_ends_.at(a); }

    /// Half-edge k positions clockwise from h (k may be negative).
    HalfEdge rotate(HalfEdge h, long k) const;
    /// Clockwise step count from h to g at the same puncture, in [0, valence).
    int steps_between(HalfEdge h, HalfEdge g) const;

    const std::vector<Face>& faces() const { return faces_; }
    int face_of(HalfEdge h) const { return face_of_[h]; }
    int index_in_face(HalfEdge h) const { return index_in_face_[h]; }
    int min_face_size() const { return min_face_size_; }
    int max_valence() const;

    /// Throws InputError if V - E + F is odd or exceeds 2.
    int genus() const;

private:
    void finish();

    std::vector<std::string> puncture_names_;
    std::vector<std::string> half_edge_names_;
    std::unordered_map<std::string, PunctureId> puncture_index_;
    std::unordered_map<std::string, HalfEdge> half_edge_index_;
    std::vector<int> block_start_;
    std::vector<PunctureId> puncture_of_;
    std::vector<HalfEdge> partner_;
    std::vector<ArcId> arc_of_;
    std::vector<std::pair<HalfEdge, HalfEdge>> arc_ends_;
    std::vector<Face> faces_;
    std::vector<int> face_of_;
    std::vector<int> index_in_face_;
    int min_face_size_ = 0;
};

inline ArcSystem parse_arc_system(std::string_view json_text) { return ArcSystem::parse(json_text); }

/// Standard face tracing: the successor of corner h is partner(rotate(h, 1)).
std::vector<Face> trace_faces(const ArcSystem& sys);

inline int genus(const ArcSystem& sys) { return sys.genus(); }

inline HalfEdge rotate(const ArcSystem& sys, HalfEdge h, long k) { return sys.rotate(h, k); }

/// Necessary combinatorial conditions only: connectivity, faces with at
/// least three corners, and the puncture count rules.
ValidationReport validate(const ArcSystem& sys);

/// DOT graph of punctures and arcs; rotation order appears as tail/head
/// labels "h@i" giving each half-edge's clockwise position.
std::string to_dot(const ArcSystem& sys);

}  // namespace gtl
