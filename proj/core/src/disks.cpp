#include "gtl/disks.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <unordered_set>

namespace gtl {

ImmersedDisk single_face_disk(const ArcSystem& sys, int face)
{
    const Face& f = sys.faces().at(face);
    ImmersedDisk d;
    d.faces.push_back({face, -1, -1, -1});
    for (int i = 0; i < f.size(); ++i) {
        d.boundary.push_back(Angle::turn(f.corners[i], 1));
        d.edges.push_back({0, i});
    }
    return d;
}

ImmersedDisk glue_across(const ArcSystem& sys, const ImmersedDisk& d, int e)
{
    const int n = d.corner_count();
    const int e_next = (e + 1) % n;
    const HalfEdge x = end_half_edge(sys, d.boundary[e]);
    const int gface = sys.face_of(x);
    const Face& G = sys.faces()[gface];
    const int s = G.size();
    const int p = sys.index_in_face(x);
    const int g = d.face_count();

    ImmersedDisk out;
    out.faces = d.faces;
    out.faces.push_back({gface, d.edges[e].instance, d.edges[e].edge, (p + s - 1) % s});
    out.boundary.reserve(n + s - 2);
    out.edges.reserve(n + s - 2);
    for (int i = 0; i < n; ++i) {
        Angle c = d.boundary[i];
        if (i == e) c = Angle::turn(c.start(), c.steps() + 1);
        if (i == e_next) c = Angle::turn(G.corners[(p + s - 1) % s], c.steps() + 1);
        out.boundary.push_back(c);
        if (i != e) {
            out.edges.push_back(d.edges[i]);
            continue;
        }
        out.edges.push_back({g, p});
        for (int j = 1; j <= s - 2; ++j) {
            out.boundary.push_back(Angle::turn(G.corners[(p + j) % s], 1));
            out.edges.push_back({g, (p + j) % s});
        }
    }
    // When e is the last corner, corner 0 was the one that gained a step,
    // and it already sits at the front; nothing to rotate.
    return out;
}

namespace {

struct TreeView {
    // nbr[inst][edge] = (instance, edge) on the other side, or (-1, -1).
    std::vector<std::vector<std::pair<int, int>>> nbr;
};

TreeView tree_view(const ArcSystem& sys, const ImmersedDisk& d)
{
    TreeView t;
    t.nbr.resize(d.faces.size());
    for (std::size_t i = 0; i < d.faces.size(); ++i)
        t.nbr[i].assign(sys.faces()[d.faces[i].face].size(), {-1, -1});
    for (std::size_t i = 0; i < d.faces.size(); ++i) {
        const auto& fi = d.faces[i];
        if (fi.parent < 0) continue;
        t.nbr[i][fi.own_edge] = {fi.parent, fi.parent_edge};
        t.nbr[fi.parent][fi.parent_edge] = {static_cast<int>(i), fi.own_edge};
    }
    return t;
}

void serialize(const ArcSystem& sys, const ImmersedDisk& d, const TreeView& t, int inst, int entry, std::string& out)
{
    const int face = d.faces[inst].face;
    const int s = sys.faces()[face].size();
    out += '(';
    out += std::to_string(face);
    int first = entry < 0 ? 0 : 1;
    for (int j = first; j < s; ++j) {
        int edge = entry < 0 ? j : (entry + j) % s;
        auto [other, other_edge] = t.nbr[inst][edge];
        if (other < 0)
            out += '.';
        else
            serialize(sys, d, t, other, other_edge, out);
    }
    out += ')';
}

int least_rotation_index(std::span<const Angle> w)
{
    const int n = static_cast<int>(w.size());
    int i = 0, j = 1, k = 0;
    while (i < n && j < n && k < n) {
        auto a = w[(i + k) % n].key(), b = w[(j + k) % n].key();
        if (a == b) {
            ++k;
            continue;
        }
        if (a > b)
            i += k + 1;
        else
            j += k + 1;
        if (i == j) ++j;
        k = 0;
    }
    return std::min(i, j);
}

}  // namespace

std::string canonical_tree(const ArcSystem& sys, const ImmersedDisk& d)
{
    TreeView t = tree_view(sys, d);
    std::string best;
    for (int r = 0; r < d.face_count(); ++r) {
        std::string s;
        serialize(sys, d, t, r, -1, s);
        if (r == 0 || s < best) best = std::move(s);
    }
    return best;
}

std::vector<Angle> least_rotation(std::span<const Angle> word)
{
    std::vector<Angle> out;
    if (word.empty()) return out;
    int r = least_rotation_index(word);
    out.reserve(word.size());
    for (std::size_t i = 0; i < word.size(); ++i) out.push_back(word[(r + i) % word.size()]);
    return out;
}

std::string word_key(std::span<const Angle> word)
{
    std::string key;
    key.resize(word.size() * 4);
    for (std::size_t i = 0; i < word.size(); ++i) {
        auto h = static_cast<std::uint32_t>(word[i].start());
        auto s = static_cast<std::uint32_t>(word[i].steps());
        key[4 * i] = static_cast<char>(h & 0xff);
        key[4 * i + 1] = static_cast<char>((h >> 8) & 0xff);
        key[4 * i + 2] = static_cast<char>(s & 0xff);
        key[4 * i + 3] = static_cast<char>((s >> 8) & 0xff);
    }
    return key;
}

bool passes_disk_prefilter(const ArcSystem& sys, std::span<const Angle> word)
{
    const std::size_t n = word.size();
    if (n < 3 || static_cast<int>(n) < sys.min_face_size()) return false;
    long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Angle a = word[i];
        if (a.is_identity()) return false;
        if (word[(i + 1) % n].start() != sys.partner(end_half_edge(sys, a))) return false;
        total += a.steps();
    }
    long excess = total - static_cast<long>(n);
    if (excess < 0 || excess % 2 != 0) return false;
    // Each face of size s adds s - 2 boundary corners, so faces <= (n - 2) / (min size - 2).
    const long faces = excess / 2 + 1;
    return faces * (sys.min_face_size() - 2) <= static_cast<long>(n) - 2;
}

int implied_face_count(std::span<const Angle> word)
{
    long total = 0;
    for (auto a : word) total += a.steps();
    return static_cast<int>((total - static_cast<long>(word.size()) + 2) / 2);
}

std::int64_t CuttingOracle::count(std::span<const Angle> word) const
{
    if (!passes_disk_prefilter(*sys_, word)) return 0;
    return count_normalized(least_rotation(word));
}

std::int64_t CuttingOracle::count_normalized(const std::vector<Angle>& w) const
{
    std::string key = word_key(w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    const ArcSystem& sys = *sys_;
    const int n = static_cast<int>(w.size());
    int i = -1;
    for (int c = 0; c < n; ++c)
        if (w[c].steps() >= 2) {
            i = c;
            break;
        }

    std::int64_t result = 0;
    if (i < 0) {
        // No merged corner: a single face, traversed exactly once.
        result = (n == sys.faces()[sys.face_of(w[0].start())].size()) ? 1 : 0;
    } else {
        // The interior half-edge after the first sector of corner i carries a
        // glued arc in every disk with this boundary. Its far end sits inside
        // some other corner j; cutting there splits the disk in two.
        const HalfEdge hi = w[i].start();
        const HalfEdge x = sys.rotate(hi, 1);
        const HalfEdge y = sys.partner(x);
        const PunctureId py = sys.puncture_of(y);
        const int val = sys.valence(py);
        std::vector<Angle> d1, d2;
        for (int j = 0; j < n; ++j) {
            if (j == i || sys.puncture_of(w[j].start()) != py) continue;
            int t0 = sys.steps_between(w[j].start(), y);
            if (t0 == 0) t0 = val;
            for (int t = t0; t < w[j].steps(); t += val) {
                d1.clear();
                d2.clear();
                d1.push_back(Angle::turn(y, w[j].steps() - t));
                for (int c = (j + 1) % n; c != i; c = (c + 1) % n) d1.push_back(w[c]);
                d1.push_back(Angle::turn(hi, 1));
                d2.push_back(Angle::turn(x, w[i].steps() - 1));
                for (int c = (i + 1) % n; c != j; c = (c + 1) % n) d2.push_back(w[c]);
                d2.push_back(Angle::turn(w[j].start(), t));
                std::int64_t c1 = count(d1);
                if (c1 == 0) continue;
                result += c1 * count(d2);
            }
        }
    }
    if (memo_.size() >= memo_limit_) memo_.clear();
    memo_.emplace(std::move(key), result);
    return result;
}

DiskCatalog DiskCatalog::build(const ArcSystem& sys, const Bounds& b)
{
    if (b.max_faces < 1 || b.max_corners < 3 || b.max_steps < 1)
        throw std::invalid_argument("catalog bounds must be positive with max_corners >= 3");
    std::size_t cap = 0;
    if (const char* env = std::getenv("GTL_HH_MAX_MEMORY_MB")) {
        long mb = std::atol(env);
        if (mb > 0) cap = static_cast<std::size_t>(mb) * 1024 * 1024;
    }

    DiskCatalog cat;
    cat.sys_ = &sys;
    cat.bounds_ = b;
    std::unordered_set<std::string> seen;
    std::deque<ImmersedDisk> queue;
    std::size_t bytes = 0;

    auto within = [&](const ImmersedDisk& d) {
        if (d.face_count() > b.max_faces || d.corner_count() > b.max_corners) return false;
        for (auto a : d.boundary)
            if (a.steps() > b.max_steps) return false;
        return true;
    };
    auto admit = [&](ImmersedDisk&& d) {
        std::string canon = canonical_tree(sys, d);
        if (!seen.insert(canon).second) return;
        bytes += canon.size() * 2 + d.faces.size() * sizeof(FaceInstance) +
                 d.boundary.size() * (sizeof(Angle) + sizeof(EdgeRef) + 48 + 4 * d.boundary.size());
        if (cap && bytes > cap)
            throw CatalogTooLarge("disk catalog exceeds GTL_HH_MAX_MEMORY_MB=" +
                                  std::to_string(cap / (1024 * 1024)) + " at " + std::to_string(seen.size()) +
                                  " disks");
        queue.push_back(std::move(d));
    };

    for (int f = 0; f < static_cast<int>(sys.faces().size()); ++f) {
        ImmersedDisk d = single_face_disk(sys, f);
        if (within(d)) admit(std::move(d));
    }
    while (!queue.empty()) {
        ImmersedDisk d = std::move(queue.front());
        queue.pop_front();
        if (d.face_count() < b.max_faces) {
            for (int e = 0; e < d.corner_count(); ++e) {
                ImmersedDisk g = glue_across(sys, d, e);
                if (within(g)) admit(std::move(g));
            }
        }
        cat.disks_.push_back(std::move(d));
    }

    for (int id = 0; id < static_cast<int>(cat.disks_.size()); ++id) {
        const auto& w = cat.disks_[id].boundary;
        const int n = static_cast<int>(w.size());
        std::vector<Angle> rot(n);
        for (int off = 0; off < n; ++off) {
            for (int i = 0; i < n; ++i) rot[i] = w[(off + i) % n];
            cat.index_[word_key(rot)].emplace_back(id, off);
        }
    }
    return cat;
}

void DiskCatalog::check_query(std::span<const Angle> seq) const
{
    if (static_cast<int>(seq.size()) > bounds_.max_corners)
        throw OutOfBounds("out of catalog bounds: " + std::to_string(seq.size()) + " corners > max_corners " +
                          std::to_string(bounds_.max_corners));
    for (auto a : seq)
        if (a.steps() > bounds_.max_steps)
            throw OutOfBounds("out of catalog bounds: corner with " + std::to_string(a.steps()) +
                              " steps > max_steps " + std::to_string(bounds_.max_steps));
    if (passes_disk_prefilter(*sys_, seq) && implied_face_count(seq) > bounds_.max_faces)
        throw OutOfBounds("out of catalog bounds: boundary needs " + std::to_string(implied_face_count(seq)) +
                          " faces > max_faces " + std::to_string(bounds_.max_faces));
}

std::vector<DiskCatalog::Witness> DiskCatalog::find(std::span<const Angle> seq) const
{
    for (auto a : seq)
        if (a.is_identity()) throw std::invalid_argument("find_disk: disk corners are turns");
    check_query(seq);
    std::vector<Witness> out;
    auto it = index_.find(word_key(seq));
    if (it == index_.end()) return out;
    for (auto [id, off] : it->second) out.push_back({&disks_[id], off});
    return out;
}

std::vector<std::string> DiskCatalog::dump() const
{
    std::vector<std::string> lines;
    for (const auto& d : disks_) {
        auto w = least_rotation(d.boundary);
        std::string line = "faces=" + std::to_string(d.face_count()) + " steps=[";
        for (std::size_t i = 0; i < w.size(); ++i) line += (i ? "," : "") + std::to_string(w[i].steps());
        line += "] word=";
        for (std::size_t i = 0; i < w.size(); ++i) line += (i ? " " : "") + render(*sys_, w[i]);
        lines.push_back(std::move(line));
    }
    std::sort(lines.begin(), lines.end());
    return lines;
}

std::int64_t CatalogOracle::count(std::span<const Angle> word) const
{
    if (!passes_disk_prefilter(*sys_, word)) return 0;
    return static_cast<std::int64_t>(cat_->find(word).size());
}

}  // namespace gtl
