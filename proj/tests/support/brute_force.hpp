#pragma once

// Reference implementations kept deliberately naive and separate from the
// library's own machinery: disks are rebuilt by walking around glued face
// trees, and ranks are taken modulo a prime.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtl/surface.hpp"

namespace bf {

using gtl::ArcSystem;
using gtl::HalfEdge;

// (start half-edge, steps) per boundary corner.
using Word = std::vector<std::pair<HalfEdge, int>>;

struct Node {
    int face;
    int parent;       // -1 for the root
    int parent_side;  // side of the parent face
    int own_side;     // side of this face glued to the parent
};

struct Tree {
    std::vector<Node> nodes;
    // glued[(node, side)] = (other node, other side)
    std::map<std::pair<int, int>, std::pair<int, int>> glued;
};

inline HalfEdge corner(const ArcSystem& sys, int face, int i)
{
    const auto& c = sys.faces()[face].corners;
    const int s = static_cast<int>(c.size());
    return c[((i % s) + s) % s];
}

// Side i of a face runs from sigma(corner i) to its partner.
inline HalfEdge side_tail(const ArcSystem& sys, int face, int i) { return sys.rotate(corner(sys, face, i), 1); }

inline std::string encode(const ArcSystem& sys, const Tree& t, int node, int entry)
{
    const int s = sys.faces()[t.nodes[node].face].size();
    std::string out = "F" + std::to_string(t.nodes[node].face) + "@" + std::to_string(entry) + "(";
    const int first = entry < 0 ? 0 : entry + 1;
    const int count = entry < 0 ? s : s - 1;
    for (int k = 0; k < count; ++k) {
        const int side = (first + k) % s;
        auto it = t.glued.find({node, side});
        if (it == t.glued.end()) {
            out += ".";
        } else {
            out += std::to_string(side) + ":" + encode(sys, t, it->second.first, it->second.second);
        }
        out += ",";
    }
    return out + ")";
}

inline std::string canonical(const ArcSystem& sys, const Tree& t)
{
    std::string best;
    for (int r = 0; r < static_cast<int>(t.nodes.size()); ++r) {
        std::string e = encode(sys, t, r, -1);
        if (best.empty() || e < best) best = e;
    }
    return best;
}

// Boundary walk. Empty when some vertex is interior (the disk would cover a
// puncture).
inline Word boundary(const ArcSystem& sys, const Tree& t)
{
    std::set<std::pair<int, int>> seen;
    std::size_t total = 0;
    for (const auto& n : t.nodes) total += sys.faces()[n.face].size();

    auto size_of = [&](int node) { return sys.faces()[t.nodes[node].face].size(); };
    // A boundary corner starts at (node, i) when side i-1 of node is free.
    int n0 = -1, i0 = -1;
    for (int n = 0; n < static_cast<int>(t.nodes.size()) && n0 < 0; ++n)
        for (int i = 0; i < size_of(n); ++i)
            if (!t.glued.count({n, (i + size_of(n) - 1) % size_of(n)})) {
                n0 = n;
                i0 = i;
                break;
            }
    if (n0 < 0) return {};
    Word w;
    int n = n0, i = i0;
    do {
        const HalfEdge start = corner(sys, t.nodes[n].face, i);
        int steps = 1;
        seen.insert({n, i});
        for (;;) {
            auto it = t.glued.find({n, i});
            if (it == t.glued.end()) break;
            n = it->second.first;
            i = (it->second.second + 1) % size_of(n);
            seen.insert({n, i});
            ++steps;
        }
        w.emplace_back(start, steps);
        i = (i + 1) % size_of(n);
    } while (!(n == n0 && i == i0));
    if (seen.size() != total) return {};
    return w;
}

inline Word least_rotation(const Word& w)
{
    Word best = w;
    for (std::size_t k = 1; k < w.size(); ++k) {
        Word r(w.begin() + k, w.end());
        r.insert(r.end(), w.begin(), w.begin() + k);
        best = std::min(best, r);
    }
    return best;
}

struct Disk {
    Word word;  // as walked
    int faces;
};

// All immersed disks with at most max_faces faces.
inline std::vector<Disk> enumerate_disks(const ArcSystem& sys, int max_faces)
{
    std::vector<Disk> out;
    std::set<std::string> seen;
    std::vector<Tree> layer;
    for (int f = 0; f < static_cast<int>(sys.faces().size()); ++f) {
        Tree t;
        t.nodes.push_back({f, -1, -1, -1});
        if (seen.insert(canonical(sys, t)).second) layer.push_back(t);
    }
    for (int size = 1; size <= max_faces && !layer.empty(); ++size) {
        std::vector<Tree> next;
        for (const auto& t : layer) {
            Word w = boundary(sys, t);
            if (w.empty()) continue;  // interior vertex, and it stays interior
            out.push_back({w, size});
            if (size == max_faces) continue;
            for (int n = 0; n < static_cast<int>(t.nodes.size()); ++n) {
                const int s = sys.faces()[t.nodes[n].face].size();
                for (int i = 0; i < s; ++i) {
                    if (t.glued.count({n, i})) continue;
                    const HalfEdge x = side_tail(sys, t.nodes[n].face, i);
                    // The other side of the arc runs from partner(x) back to x.
                    for (int g = 0; g < static_cast<int>(sys.faces().size()); ++g)
                        for (int j = 0; j < sys.faces()[g].size(); ++j) {
                            if (side_tail(sys, g, j) != sys.partner(x)) continue;
                            Tree u = t;
                            const int id = static_cast<int>(u.nodes.size());
                            u.nodes.push_back({g, n, i, j});
                            u.glued[{n, i}] = {id, j};
                            u.glued[{id, j}] = {n, i};
                            if (seen.insert(canonical(sys, u)).second) next.push_back(std::move(u));
                        }
                }
            }
        }
        layer = std::move(next);
    }
    return out;
}

// Witnesses of a linear word: (disk, offset) pairs reading it.
inline std::int64_t witnesses(const std::vector<Disk>& disks, const Word& w)
{
    std::int64_t c = 0;
    for (const auto& d : disks) {
        if (d.word.size() != w.size()) continue;
        for (std::size_t k = 0; k < w.size(); ++k) {
            bool ok = true;
            for (std::size_t i = 0; i < w.size() && ok; ++i) ok = d.word[(i + k) % w.size()] == w[i];
            if (ok) ++c;
        }
    }
    return c;
}

// Rank modulo a prime, entries given as numerator/denominator pairs.
inline int rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::int64_t p)
{
    auto mod = [p](std::int64_t x) { return ((x % p) + p) % p; };
    auto inv = [&](std::int64_t x) {
        std::int64_t r = 1, b = mod(x), e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    int rank = 0;
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    for (auto& row : a)
        for (auto& x : row) x = mod(x);
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][c]) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        const std::int64_t iv = inv(a[rank][c]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || !a[r][c]) continue;
            const std::int64_t f = a[r][c] * iv % p;
            for (int k = c; k < cols; ++k) a[r][k] = mod(a[r][k] - f * a[rank][k]);
        }
        ++rank;
    }
    return rank;
}

}  // namespace bf
