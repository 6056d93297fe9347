#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "pfk/errors.hpp"
#include "pfk/network.hpp"

namespace pfk {

namespace detail {

struct Dart {
    VertexRef from;
    VertexRef to;
    EdgeId edge;
    auto operator<=>(const Dart&) const = default;
};

// Faces as dart orbits: the walk entering v along e leaves along the
// rotation predecessor of e at v. With counterclockwise rotations this
// traces every face boundary with the face on the left.
struct FaceStructure {
    std::vector<std::vector<Dart>> faces;
    std::map<Dart, int> face_of;
    int outer = -1;
};

inline FaceStructure trace_faces(const Network& net) {
    if (!net.embedding) throw MissingEmbedding("network has no rotation system");
    const RotationSystem& rot = net.embedding.value();
    auto inc = incidence(net);

    auto other_end = [&](const VertexRef& v, EdgeId e) -> VertexRef {
        auto it = inc.find(e);
        if (it == inc.end() || it->second.size() != 2)
            throw MissingEmbedding("edge " + std::to_string(e) + " is dangling");
        return it->second[0] == v ? it->second[1] : it->second[0];
    };

    auto rotation_at = [&](const VertexRef& v) -> const std::vector<EdgeId>& {
        auto it = rot.rotation.find(v);
        if (it == rot.rotation.end())
            throw MissingEmbedding("no rotation for vertex " + net.name(v));
        return it->second;
    };

    // the rotation must list the incident edges exactly once each
    for (const VertexRef& v : net.vertices()) {
        std::multiset<EdgeId> a(net.tensor(v).wires().begin(), net.tensor(v).wires().end());
        const auto& r = rotation_at(v);
        std::multiset<EdgeId> b(r.begin(), r.end());
        if (a != b) throw MissingEmbedding("rotation at " + net.name(v) + " mismatches wires");
    }

    auto pred_edge = [&](const VertexRef& v, EdgeId e) {
        const auto& r = rotation_at(v);
        for (size_t i = 0; i < r.size(); ++i)
            if (r[i] == e) return r[(i + r.size() - 1) % r.size()];
        throw MissingEmbedding("edge not in rotation");
    };

    FaceStructure fs;
    std::set<Dart> seen;
    for (const VertexRef& v : net.vertices()) {
        for (EdgeId e : rotation_at(v)) {
            Dart start{v, other_end(v, e), e};
            if (seen.count(start)) continue;
            std::vector<Dart> face;
            Dart d = start;
            do {
                face.push_back(d);
                seen.insert(d);
                fs.face_of[d] = static_cast<int>(fs.faces.size());
                EdgeId next = pred_edge(d.to, d.edge);
                d = Dart{d.to, other_end(d.to, next), next};
            } while (!(d == start));
            fs.faces.push_back(std::move(face));
        }
    }

    Dart outer_dart{rot.outer_vertex, other_end(rot.outer_vertex, rot.outer_edge),
                    rot.outer_edge};
    auto it = fs.face_of.find(outer_dart);
    if (it == fs.face_of.end()) throw MissingEmbedding("outer face dart not found");
    fs.outer = it->second;
    return fs;
}

}  // namespace detail

struct PlanarOrderOptions {
    // Root of the auxiliary spanning tree; default is the gate carrying the
    // lowest edge id.
    std::optional<int> root_gate;
    // Rotate the recording start and/or trace the closed curve the other way
    // round; every choice yields a valid order of the same curve.
    int start_offset = 0;
    bool clockwise = false;
};

// Planar spanning tree edge order. For each interior face the incident gates
// are linked in a cycle following the face walk; a BFS spanning tree of this
// auxiliary multigraph is walked as an Euler tour, recording the network
// edges crossed inside each angular interval. The attachments of the cycle
// edges sit in the face's corner at each gate, immediately after the corner's
// outgoing edge (the edge the face walk leaves through), next-gate strand
// first, which realizes the inscribed non-crossing cycle.
inline EdgeOrder planar_spanning_tree_edge_order(const Network& net,
                                                 const PlanarOrderOptions& opts = {}) {
    net.validate(false);
    if (net.gates.empty()) throw MissingEmbedding("network has no gates");
    detail::FaceStructure fs = detail::trace_faces(net);
    const RotationSystem& rot = net.embedding.value();

    // Euler check per connected component: V - E + F = 1 + C for the whole
    // graph; a genus-positive rotation system has fewer faces.
    {
        long V = static_cast<long>(net.gates.size() + net.cogates.size());
        long E = static_cast<long>(net.edges.size());
        long F = static_cast<long>(fs.faces.size());
        // count components over the vertex adjacency
        auto inc = detail::incidence(net);
        std::map<VertexRef, std::vector<VertexRef>> adj;
        for (auto& [e, vs] : inc)
            if (vs.size() == 2) {
                adj[vs[0]].push_back(vs[1]);
                adj[vs[1]].push_back(vs[0]);
            }
        std::set<VertexRef> seen;
        long C = 0;
        for (const VertexRef& v : net.vertices()) {
            if (seen.count(v)) continue;
            ++C;
            std::vector<VertexRef> stack{v};
            while (!stack.empty()) {
                VertexRef u = stack.back();
                stack.pop_back();
                if (!seen.insert(u).second) continue;
                for (const VertexRef& w : adj[u]) stack.push_back(w);
            }
        }
        if (V - E + F != 1 + C)
            throw MissingEmbedding("rotation system does not describe a planar embedding");
    }

    struct Corner {
        std::vector<int> next_aux;  // strands toward the next gate of the cycle
        std::vector<int> prev_aux;  // strands from the previous gate
    };
    std::map<std::pair<int, EdgeId>, Corner> corners;  // (gate, out-edge) -> attachments
    std::vector<std::vector<std::pair<int, int>>> aux_adj(net.gates.size());  // gate -> (aux, other)
    int next_aux_id = 0;

    for (int f = 0; f < static_cast<int>(fs.faces.size()); ++f) {
        if (f == fs.outer) continue;
        std::vector<std::pair<int, EdgeId>> gate_corners;  // (gate, out-edge) in walk order
        for (const detail::Dart& d : fs.faces[f])
            if (d.from.is_gate) gate_corners.emplace_back(d.from.index, d.edge);
        int k = static_cast<int>(gate_corners.size());
        if (k < 2) continue;
        for (int i = 0; i < k; ++i) {
            if (k == 2 && i == 1) break;  // two gates need a single strand
            int j = (i + 1) % k;
            int id = next_aux_id++;
            auto [g1, out1] = gate_corners[i];
            auto [g2, out2] = gate_corners[j];
            corners[{g1, out1}].next_aux.push_back(id);
            corners[{g2, out2}].prev_aux.push_back(id);
            aux_adj[g1].emplace_back(id, g2);
            aux_adj[g2].emplace_back(id, g1);
        }
    }

    int root;
    if (opts.root_gate) {
        root = *opts.root_gate;
        if (root < 0 || root >= static_cast<int>(net.gates.size()))
            throw Error("root gate out of range");
    } else {
        root = 0;
        EdgeId best = 0;
        for (size_t gi = 0; gi < net.gates.size(); ++gi) {
            EdgeId lo =
                *std::min_element(net.gates[gi].wires().begin(), net.gates[gi].wires().end());
            if (gi == 0 || lo < best) {
                best = lo;
                root = static_cast<int>(gi);
            }
        }
    }

    // BFS spanning tree over the auxiliary multigraph, neighbor order as the
    // face walks created the strands.
    std::set<int> tree_aux;
    {
        std::vector<int> queue{root};
        std::set<int> visited{root};
        size_t head = 0;
        while (head < queue.size()) {
            int g = queue[head++];
            for (auto [id, other] : aux_adj[g]) {
                if (visited.count(other)) continue;
                visited.insert(other);
                tree_aux.insert(id);
                queue.push_back(other);
            }
        }
        if (visited.size() != net.gates.size())
            throw NotTreeConnectable("auxiliary gate graph is disconnected");
    }

    // Angular item list per gate: network edges in rotation order, each
    // followed by the tree strands attached in its corner.
    struct Item {
        bool is_aux;
        EdgeId edge;
        int aux_id;
        int aux_other;
    };
    std::vector<std::vector<Item>> items(net.gates.size());
    auto other_gate = [&](int g, int id) {
        for (auto [aid, other] : aux_adj[g])
            if (aid == id) return other;
        throw Error("aux edge bookkeeping");
    };
    for (size_t gi = 0; gi < net.gates.size(); ++gi) {
        int g = static_cast<int>(gi);
        for (EdgeId e : rot.rotation.at(VertexRef{true, g})) {
            items[gi].push_back({false, e, -1, -1});
            auto it = corners.find({g, e});
            if (it == corners.end()) continue;
            for (int id : it->second.next_aux)
                if (tree_aux.count(id)) items[gi].push_back({true, 0, id, other_gate(g, id)});
            for (int id : it->second.prev_aux)
                if (tree_aux.count(id)) items[gi].push_back({true, 0, id, other_gate(g, id)});
        }
    }

    // Euler tour around the spanning tree, recording crossings.
    const size_t total_edges = net.edges.size();
    if (items[root].empty()) throw MissingEmbedding("root gate has no angular items");
    int dir = opts.clockwise ? -1 : 1;
    auto advance = [&](size_t size, size_t i) { return (i + size + dir) % size; };

    size_t start = ((opts.start_offset % static_cast<int>(items[root].size())) +
                    items[root].size()) %
                   items[root].size();
    int gate = root;
    size_t pos = start;
    std::vector<EdgeId> sigma;
    std::set<std::pair<int, int>> crossed;  // (aux id, from-gate)
    size_t guard = 0;
    size_t guard_limit = 8 * (total_edges + tree_aux.size() + 2);
    while (sigma.size() < total_edges && guard++ < guard_limit) {
        const Item& it = items[gate][pos];
        if (!it.is_aux) {
            sigma.push_back(it.edge);
            pos = advance(items[gate].size(), pos);
            continue;
        }
        if (crossed.count({it.aux_id, gate})) {
            pos = advance(items[gate].size(), pos);
            continue;
        }
        crossed.insert({it.aux_id, gate});
        int other = it.aux_other;
        size_t opos = 0;
        bool found = false;
        for (size_t i = 0; i < items[other].size(); ++i) {
            if (items[other][i].is_aux && items[other][i].aux_id == it.aux_id) {
                opos = i;
                found = true;
            }
        }
        if (!found) throw Error("tree strand missing on the far side");
        gate = other;
        pos = advance(items[gate].size(), opos);
    }
    if (sigma.size() != total_edges)
        throw NotTreeConnectable("tour failed to cross every edge exactly once");
    return EdgeOrder(sigma);
}

}  // namespace pfk
