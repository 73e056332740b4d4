#include "gtl/surface.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace gtl {

using nlohmann::json;

ArcSystem ArcSystem::parse(std::string_view json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("punctures") || !doc.contains("rotation") || !doc.contains("arcs"))
        throw InputError("malformed document: expected keys punctures, rotation, arcs");
    const auto& jp = doc["punctures"];
    const auto& jr = doc["rotation"];
    const auto& ja = doc["arcs"];
    if (!jp.is_array() || !jr.is_object() || !ja.is_array())
        throw InputError("malformed document: wrong value types");

    ArcSystem sys;
    for (const auto& p : jp) {
        if (!p.is_string()) throw InputError("malformed document: puncture ids must be strings");
        auto name = p.get<std::string>();
        if (sys.puncture_index_.count(name)) throw InputError("duplicate puncture '" + name + "'");
        sys.puncture_index_[name] = static_cast<int>(sys.puncture_names_.size());
        sys.puncture_names_.push_back(name);
    }
    for (auto it = jr.begin(); it != jr.end(); ++it)
        if (!sys.puncture_index_.count(it.key()))
            throw InputError("unknown puncture '" + it.key() + "' in rotation");

    sys.block_start_.push_back(0);
    for (std::size_t p = 0; p < sys.puncture_names_.size(); ++p) {
        const auto& name = sys.puncture_names_[p];
        if (jr.contains(name)) {
            const auto& list = jr[name];
            if (!list.is_array()) throw InputError("malformed document: rotation of '" + name + "' is not a list");
            for (const auto& h : list) {
                if (!h.is_string()) throw InputError("malformed document: half-edge ids must be strings");
                auto hn = h.get<std::string>();
                if (sys.half_edge_index_.count(hn)) throw InputError("duplicate half-edge '" + hn + "'");
                sys.half_edge_index_[hn] = static_cast<int>(sys.half_edge_names_.size());
                sys.half_edge_names_.push_back(hn);
                sys.puncture_of_.push_back(static_cast<int>(p));
            }
        }
        sys.block_start_.push_back(static_cast<int>(sys.half_edge_names_.size()));
    }

    const int n = sys.num_half_edges();
    sys.partner_.assign(n, -1);
    sys.arc_of_.assign(n, -1);
    for (const auto& arc : ja) {
        if (!arc.is_array() || arc.size() != 2 || !arc[0].is_string() || !arc[1].is_string())
            throw InputError("malformed document: each arc is a pair of half-edge ids");
        auto a = arc[0].get<std::string>(), b = arc[1].get<std::string>();
        for (const auto& x : {a, b})
            if (!sys.half_edge_index_.count(x)) throw InputError("arc uses unknown half-edge '" + x + "'");
        if (a == b) throw InputError("arc pairs half-edge '" + a + "' with itself");
        int ha = sys.half_edge_index_[a], hb = sys.half_edge_index_[b];
        if (sys.partner_[ha] >= 0) throw InputError("duplicate half-edge '" + a + "' in arcs");
        if (sys.partner_[hb] >= 0) throw InputError("duplicate half-edge '" + b + "' in arcs");
        sys.partner_[ha] = hb;
        sys.partner_[hb] = ha;
        int id = static_cast<int>(sys.arc_ends_.size());
        sys.arc_of_[ha] = sys.arc_of_[hb] = id;
        sys.arc_ends_.emplace_back(ha, hb);
    }
    for (int h = 0; h < n; ++h)
        if (sys.partner_[h] < 0) throw InputError("unpaired half-edge '" + sys.half_edge_names_[h] + "'");

    sys.finish();
    return sys;
}

ArcSystem ArcSystem::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ArcSystem::finish()
{
    faces_ = trace_faces(*this);
    face_of_.assign(num_half_edges(), -1);
    index_in_face_.assign(num_half_edges(), -1);
    min_face_size_ = 0;
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f) {
        const auto& face = faces_[f];
        for (int i = 0; i < face.size(); ++i) {
            face_of_[face.corners[i]] = f;
            index_in_face_[face.corners[i]] = i;
        }
        if (min_face_size_ == 0 || face.size() < min_face_size_) min_face_size_ = face.size();
    }
}

std::string ArcSystem::arc_name(ArcId a) const
{
    auto [x, y] = arc_ends_.at(a);
    return "{" + half_edge_names_[x] + "," + half_edge_names_[y] + "}";
}

PunctureId ArcSystem::puncture(std::string_view name) const
{
    auto it = puncture_index_.find(std::string(name));
    if (it == puncture_index_.end()) throw InputError("unknown puncture '" + std::string(name) + "'");
    return it->second;
}

HalfEdge ArcSystem::half_edge(std::string_view name) const
{
    auto it = half_edge_index_.find(std::string(name));
    if (it == half_edge_index_.end()) throw InputError("unknown half-edge '" + std::string(name) + "'");
    return it->second;
}

HalfEdge ArcSystem::rotate(HalfEdge h, long k) const
{
    if (h < 0 || h >= num_half_edges()) throw InputError("unknown half-edge index " + std::to_string(h));
    int p = puncture_of_[h];
    long v = valence(p);
    long pos = (position(h) + k) % v;
    if (pos < 0) pos += v;
    return block_start_[p] + static_cast<int>(pos);
}

int ArcSystem::steps_between(HalfEdge h, HalfEdge g) const
{
    int v = valence(puncture_of_[h]);
    int d = (position(g) - position(h)) % v;
    return d < 0 ? d + v : d;
}

int ArcSystem::max_valence() const
{
    int m = 0;
    for (int p = 0; p < num_punctures(); ++p) m = std::max(m, valence(p));
    return m;
}

int ArcSystem::genus() const
{
    long chi = static_cast<long>(num_punctures()) - num_arcs() + static_cast<long>(faces_.size());
    if (chi > 2 || (2 - chi) % 2 != 0)
        throw InputError("Euler characteristic " + std::to_string(chi) + " does not come from a closed surface");
    return static_cast<int>((2 - chi) / 2);
}

std::vector<Face> trace_faces(const ArcSystem& sys)
{
    const int n = sys.num_half_edges();
    std::vector<char> seen(n, 0);
    std::vector<Face> faces;
    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        Face face;
        int h = start;
        while (!seen[h]) {
            seen[h] = 1;
            HalfEdge next_at_vertex = sys.rotate(h, 1);
            face.corners.push_back(h);
            face.edges.push_back(sys.arc_of(next_at_vertex));
            h = sys.partner(next_at_vertex);
        }
        faces.push_back(std::move(face));
    }
    return faces;
}

ValidationReport validate(const ArcSystem& sys)
{
    ValidationReport report;
    const int V = sys.num_punctures();

    if (V < 1) report.violations.push_back({"puncture-count", "at least one puncture is required", {}});

    // Union-find over punctures.
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int a = 0; a < sys.num_arcs(); ++a) {
        auto [x, y] = sys.arc_ends(a);
        parent[find(sys.puncture_of(x))] = find(sys.puncture_of(y));
    }
    std::vector<std::string> stray;
    for (int p = 0; p < V; ++p)
        if (find(p) != find(0)) stray.push_back(sys.puncture_name(p));
    if (!stray.empty())
        report.violations.push_back({"connected", "graph of punctures and arcs is disconnected", stray});

    for (const auto& face : sys.faces()) {
        if (face.size() < 3) {
            std::vector<std::string> ids;
            for (auto h : face.corners) ids.push_back(sys.half_edge_name(h));
            report.violations.push_back(
                {"face-size", "face with < 3 corners (" + std::to_string(face.size()) + ")", ids});
        }
    }

    long chi = static_cast<long>(V) - sys.num_arcs() + static_cast<long>(sys.faces().size());
    if (chi > 2 || (2 - chi) % 2 != 0) {
        report.violations.push_back({"euler", "V - E + F = " + std::to_string(chi) + " is not 2 - 2g", {}});
    } else if (chi == 2 && V < 3) {
        report.violations.push_back({"puncture-count", "genus 0 requires at least 3 punctures", {}});
    }
    return report;
}

std::string to_dot(const ArcSystem& sys)
{
    std::ostringstream out;
    out << "graph arc_system {\n";
    for (int p = 0; p < sys.num_punctures(); ++p) out << "  \"" << sys.puncture_name(p) << "\";\n";
    for (int a = 0; a < sys.num_arcs(); ++a) {
        auto [x, y] = sys.arc_ends(a);
        out << "  \"" << sys.puncture_name(sys.puncture_of(x)) << "\" -- \"" << sys.puncture_name(sys.puncture_of(y))
            << "\" [taillabel=\"" << sys.half_edge_name(x) << "@" << sys.position(x) << "\", headlabel=\""
            << sys.half_edge_name(y) << "@" << sys.position(y) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace gtl
