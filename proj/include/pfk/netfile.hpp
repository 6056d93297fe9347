#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pfk/expr.hpp"
#include "pfk/network.hpp"

namespace pfk {

// Line-oriented network file:
//   edges N                or: edges {e1 e2 ...}
//   gate NAME on e1 e2 ... { coeff? |bits> + ... }
//   cogate NAME on e1 ... { coeff? <bits| + ... }
//   rotation NAME: e_a e_b e_c        (counterclockwise)
//   outer NAME e
//   order e1 e2 ...
//   basis e = [[x,x],[x,x]]
//   certificate NAME alpha EXPR xi = [[...],[...]]
// '#' starts a comment.
struct NetFile {
    Network net;
    std::map<EdgeId, BasisMatrix> edge_bases;
    struct RawCert {
        std::string tensor;
        Scalar scale;
        std::vector<std::vector<Scalar>> matrix;
    };
    std::vector<RawCert> certs;

    bool has_certificates() const { return !certs.empty(); }

    // Attaches the per-edge bases and the certificate matrices to the
    // tensors; every tensor must carry a certificate line.
    CertifiedNetwork to_certified(double eps = default_eps()) const {
        CertifiedNetwork cn;
        cn.net = net;
        cn.edge_bases = edge_bases;
        auto cert_for = [&](const Tensor& t, const std::string& name) {
            for (const RawCert& rc : certs) {
                if (rc.tensor != name) continue;
                int n = t.arity();
                if (static_cast<int>(rc.matrix.size()) != n)
                    throw ParseError("certificate matrix size mismatch for " + name);
                std::vector<Scalar> entries;
                for (const auto& row : rc.matrix) {
                    if (static_cast<int>(row.size()) != n)
                        throw ParseError("certificate matrix row size mismatch for " + name);
                    for (const Scalar& s : row) entries.push_back(s);
                }
                std::vector<BasisMatrix> bases;
                for (EdgeId e : t.wires()) {
                    auto it = edge_bases.find(e);
                    bases.push_back(it == edge_bases.end() ? BasisMatrix::identity()
                                                           : it->second);
                }
                return Certificate{std::move(bases), rc.scale,
                                   SkewMatrix(t.wires(), std::move(entries), eps)};
            }
            throw ParseError("no certificate for tensor " + name);
        };
        for (size_t i = 0; i < net.gates.size(); ++i)
            cn.gate_certs.push_back(
                cert_for(net.gates[i], net.name({true, static_cast<int>(i)})));
        for (size_t i = 0; i < net.cogates.size(); ++i)
            cn.cogate_certs.push_back(
                cert_for(net.cogates[i], net.name({false, static_cast<int>(i)})));
        return cn;
    }
};

namespace detail {

inline std::vector<std::vector<Scalar>> parse_matrix_rows(const std::string& text, int lineno) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.size() < 4 || s.front() != '[' || s.back() != ']')
        throw ParseError("malformed matrix", lineno, 1);
    std::vector<std::vector<Scalar>> rows;
    size_t pos = 1;
    while (pos < s.size() - 1) {
        if (s[pos] == ',') {
            ++pos;
            continue;
        }
        if (s[pos] != '[') throw ParseError("expected matrix row", lineno, static_cast<int>(pos));
        size_t depth = 1;
        size_t end = pos + 1;
        while (end < s.size() && depth) {
            if (s[end] == '[') ++depth;
            if (s[end] == ']') --depth;
            ++end;
        }
        if (depth) throw ParseError("unterminated matrix row", lineno, static_cast<int>(pos));
        std::string row = s.substr(pos + 1, end - pos - 2);
        std::vector<Scalar> rv;
        size_t rp = 0;
        while (rp < row.size()) {
            std::string entry;
            rp = match_entry(row, rp, entry);
            rv.push_back(parse_scalar(entry));
            if (rp < row.size() && row[rp] == ',') ++rp;
        }
        rows.push_back(std::move(rv));
        pos = end;
    }
    return rows;
}

}  // namespace detail

inline NetFile parse_network_file(const std::string& text) {
    NetFile nf;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::optional<std::pair<std::string, EdgeId>> outer;
    std::map<std::string, std::vector<EdgeId>> rotations;
    std::vector<std::string> rotation_names;

    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;

        if (kw == "edges") {
            std::string rest;
            std::getline(ls, rest);
            size_t b = rest.find('{');
            if (b != std::string::npos) {
                size_t e = rest.find('}');
                if (e == std::string::npos) throw ParseError("unterminated edge set", lineno, 1);
                std::istringstream es(rest.substr(b + 1, e - b - 1));
                EdgeId id;
                while (es >> id) nf.net.edges.insert(id);
            } else {
                int n = 0;
                std::istringstream ns(rest);
                if (!(ns >> n) || n < 0) throw ParseError("bad edge count", lineno, 1);
                for (EdgeId e = 1; e <= n; ++e) nf.net.edges.insert(e);
            }
        } else if (kw == "gate" || kw == "cogate") {
            std::string name, on;
            ls >> name >> on;
            if (on != "on") throw ParseError("expected 'on'", lineno, 1);
            std::string rest;
            std::getline(ls, rest);
            size_t brace = rest.find('{');
            if (brace == std::string::npos) throw ParseError("missing '{'", lineno, 1);
            size_t close = rest.rfind('}');
            if (close == std::string::npos || close < brace)
                throw ParseError("missing '}'", lineno, 1);
            std::vector<EdgeId> wires;
            {
                std::istringstream ws(rest.substr(0, brace));
                EdgeId e;
                while (ws >> e) wires.push_back(e);
            }
            Tensor t = parse_tensor_terms(rest.substr(brace + 1, close - brace - 1), wires);
            bool want_gate = kw == "gate";
            if ((t.kind() == TensorKind::Gate) != want_gate)
                throw ParseError("tensor kind disagrees with keyword", lineno, 1);
            if (want_gate) {
                nf.net.gates.push_back(std::move(t));
                nf.net.gate_names.push_back(name);
            } else {
                nf.net.cogates.push_back(std::move(t));
                nf.net.cogate_names.push_back(name);
            }
        } else if (kw == "rotation") {
            std::string name;
            ls >> name;
            if (name.empty() || name.back() != ':')
                throw ParseError("expected 'rotation NAME:'", lineno, 1);
            name.pop_back();
            std::vector<EdgeId> rot;
            EdgeId e;
            while (ls >> e) rot.push_back(e);
            rotations[name] = rot;
            rotation_names.push_back(name);
        } else if (kw == "outer") {
            std::string name;
            EdgeId e;
            if (!(ls >> name >> e)) throw ParseError("expected 'outer NAME e'", lineno, 1);
            outer = {name, e};
        } else if (kw == "order") {
            std::vector<EdgeId> seq;
            EdgeId e;
            while (ls >> e) seq.push_back(e);
            nf.net.order = EdgeOrder(seq);
        } else if (kw == "basis") {
            EdgeId e;
            std::string eq;
            ls >> e >> eq;
            if (eq != "=") throw ParseError("expected 'basis e = [[..],[..]]'", lineno, 1);
            std::string rest;
            std::getline(ls, rest);
            auto rows = detail::parse_matrix_rows(rest, lineno);
            if (rows.size() != 2 || rows[0].size() != 2 || rows[1].size() != 2)
                throw ParseError("edge basis must be 2x2", lineno, 1);
            nf.edge_bases[e] = BasisMatrix(rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
        } else if (kw == "certificate") {
            std::string name, alpha_kw;
            ls >> name >> alpha_kw;
            if (alpha_kw != "alpha")
                throw ParseError("expected 'certificate NAME alpha EXPR xi = [...]'", lineno, 1);
            std::string rest;
            std::getline(ls, rest);
            size_t xi = rest.find(" xi");
            if (xi == std::string::npos) throw ParseError("missing 'xi ='", lineno, 1);
            std::string alpha_text = rest.substr(0, xi);
            size_t eq = rest.find('=', xi);
            if (eq == std::string::npos) throw ParseError("missing '=' after xi", lineno, 1);
            NetFile::RawCert rc;
            rc.tensor = name;
            rc.scale = parse_scalar(alpha_text);
            rc.matrix = detail::parse_matrix_rows(rest.substr(eq + 1), lineno);
            nf.certs.push_back(std::move(rc));
        } else {
            throw ParseError("unknown keyword '" + kw + "'", lineno, 1);
        }
    }

    if (!rotations.empty()) {
        RotationSystem rs;
        for (const std::string& name : rotation_names) {
            auto v = nf.net.vertex_by_name(name);
            if (!v) throw ParseError("rotation for unknown tensor " + name);
            rs.rotation[*v] = rotations[name];
        }
        if (outer) {
            auto v = nf.net.vertex_by_name(outer->first);
            if (!v) throw ParseError("outer face names unknown tensor " + outer->first);
            rs.outer_vertex = *v;
            rs.outer_edge = outer->second;
        } else if (!rs.rotation.empty()) {
            rs.outer_vertex = rs.rotation.begin()->first;
            rs.outer_edge = rs.rotation.begin()->second.front();
        }
        nf.net.embedding = rs;
    }
    nf.net.validate(true);
    return nf;
}

inline std::string serialize_network_file(const NetFile& nf) {
    std::ostringstream os;
    os << "edges {";
    bool first = true;
    for (EdgeId e : nf.net.edges) {
        os << (first ? "" : " ") << e;
        first = false;
    }
    os << "}\n";
    auto dump = [&](const Tensor& t, const std::string& name, const char* kw) {
        os << kw << " " << name << " on";
        for (EdgeId e : t.wires()) os << " " << e;
        os << " { " << t.str() << " }\n";
    };
    for (size_t i = 0; i < nf.net.gates.size(); ++i)
        dump(nf.net.gates[i], nf.net.name({true, static_cast<int>(i)}), "gate");
    for (size_t i = 0; i < nf.net.cogates.size(); ++i)
        dump(nf.net.cogates[i], nf.net.name({false, static_cast<int>(i)}), "cogate");
    if (nf.net.embedding) {
        const RotationSystem& rs = *nf.net.embedding;
        for (const auto& [v, rot] : rs.rotation) {
            os << "rotation " << nf.net.name(v) << ":";
            for (EdgeId e : rot) os << " " << e;
            os << "\n";
        }
        os << "outer " << nf.net.name(rs.outer_vertex) << " " << rs.outer_edge << "\n";
    }
    if (nf.net.order) {
        os << "order";
        for (EdgeId e : nf.net.order->seq()) os << " " << e;
        os << "\n";
    }
    for (const auto& [e, b] : nf.edge_bases) os << "basis " << e << " = " << b.str() << "\n";
    for (const auto& rc : nf.certs) {
        os << "certificate " << rc.tensor << " alpha " << rc.scale.str() << " xi = [";
        for (size_t r = 0; r < rc.matrix.size(); ++r) {
            os << (r ? "," : "") << "[";
            for (size_t c = 0; c < rc.matrix[r].size(); ++c)
                os << (c ? "," : "") << rc.matrix[r][c].str();
            os << "]";
        }
        os << "]\n";
    }
    return os.str();
}

}  // namespace pfk
