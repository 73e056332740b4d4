#pragma once

#include "gtl/cocycles.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gtl {

struct SequenceBounds {
    int max_arity = 1;
    int max_steps = 1;
    bool include_identities = true;
    int min_arity = 0;
    /// When nonempty, turns are restricted to these punctures.
    std::vector<PunctureId> restrict_punctures;
};

/// Every arc-chained tuple within bounds, shortest first, then by source arc
/// and argument order. Returning false from the visitor stops the walk.
void enumerate_sequences(const ArcSystem& sys, const SequenceBounds& b,
                         const std::function<bool(std::span<const Angle>)>& visit);
std::vector<Sequence> collect_sequences(const ArcSystem& sys, const SequenceBounds& b);
std::uint64_t count_sequences(const ArcSystem& sys, const SequenceBounds& b);

/// One parking garage: a helix of faces around m whose corner at m is
/// shortened by r full turns.
struct GarageParams {
    HalfEdge first_sector = 0;   // the helix starts at the corner turn(first_sector, 1)
    int spiral_sectors = 0;      // faces traced around m; must exceed r * valence(m)
    int start_offset = 0;        // rotation of the resulting cyclic word
    std::vector<int> attachments;  // boundary edges to glue an extra face across, applied in order
    int gamma_steps = 0;         // steps added at the end of the last argument
    int beta_steps = 0;          // steps added before the first argument
};

struct Garage {
    Sequence sequence;
    int long_index = 0;  // position of the compensating angle around m
    ImmersedDisk disk;   // the helix before shortening, attachments included
};

/// Throws InputError when the parameters do not fit the local structure.
Garage parking_garage(const ArcSystem& sys, PunctureId m, int r, const GarageParams& p);

struct GarageSweep {
    int extra_sectors = 0;      // spiral_sectors from L + 1 to L + 1 + extra_sectors
    int max_offsets = 0;        // 0: every offset; otherwise a spread sample
    bool attachments = true;    // also one attached face per exterior edge (sampled)
    int max_attachment_edges = 4;
    std::vector<std::pair<int, int>> decorations{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
};

std::vector<Sequence> parking_garage_sequences(const ArcSystem& sys, PunctureId m, int r, const GarageSweep& sweep);

struct Failure {
    Sequence sequence;
    std::string expected;
    std::string actual;
};

struct SuiteReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t checked = 0;
    std::uint64_t failure_count = 0;
    std::vector<Failure> failures;  // the first few, in sequence order
    std::vector<std::string> notes;
    double seconds = 0;
    bool skipped = false;

    bool passed() const { return !skipped && failure_count == 0; }
    void fail(Sequence seq, std::string expected, std::string actual);
    void absorb(const SuiteReport& other);
    void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
    /// Serialized JSON object; timing is omitted for byte-stable output.
    std::string to_json(const ArcSystem& sys, bool with_timing = true, int indent = 2) const;
    std::string to_text(const ArcSystem& sys) const;
};

std::string render(const ArcSystem& sys, std::span<const Angle> seq);

/// mu . mu = 0 on every enumerated sequence. A MuCochain takes the direct
/// path; any other cochain (e.g. a perturbed one) goes through the generic
/// product.
SuiteReport suite_a_infinity(const Cochain& mu, const SequenceBounds& b);
/// d nu = 0 on every enumerated sequence plus the extra ones; also checks the
/// output-parity law of nu.
SuiteReport suite_cocycle(const Cochain& mu, const Cochain& nu, const SequenceBounds& b,
                          const std::vector<Sequence>& extra = {}, const std::string& label = "");
SuiteReport suite_sporadic_dimension(const DiskOracle& oracle);

struct TableGrid {
    std::vector<int> turns{1, 2};
    int angle_steps = 4;  // 1-adic test angles: identities and turns up to this
};

SuiteReport suite_bracket_table(const DiskOracle& oracle, const TableGrid& grid);
SuiteReport suite_cup_table(const DiskOracle& oracle, const TableGrid& grid, const SequenceBounds& unit_bounds);
SuiteReport suite_gauge_equivalence(const DiskOracle& oracle, PunctureId m, int r, const InputScalars& s1,
                                    const InputScalars& s2);

/// Random finite cochain with the output-parity law respected.
struct TableSpec {
    int parity = 0;
    int entries = 6;
    int max_arity = 2;
    int input_steps = 2;
    int output_steps = 3;
    /// When nonempty, inputs use only these angles and outputs prefer them,
    /// so that tables built from one pool actually compose.
    std::vector<Angle> pool;
};
std::shared_ptr<TableCochain> random_table(const ArcSystem& sys, std::mt19937_64& rng, const TableSpec& spec);

/// Antisymmetry, d^2 = 0, Leibniz and Jacobi on random tables.
SuiteReport suite_dgla(const DiskOracle& oracle, std::uint64_t seed, int instances, const SequenceBounds& b);

/// Catalog-level invariants: no disk below three corners, even reduced-degree
/// sum on every disk, catalog boundary words counted exactly by the oracle.
SuiteReport suite_catalog_invariants(const DiskCatalog& cat, const DiskOracle& oracle);

}  // namespace gtl
