// pfk: build, evaluate and certify Pfaffian circuits for planar 0/1 #CSP
// instances, generate the change-of-basis polynomial systems, and decide
// their feasibility with an exact Groebner engine.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "pfk/boolean_tree.hpp"
#include "pfk/census.hpp"
#include "pfk/decompose.hpp"
#include "pfk/groebner.hpp"
#include "pfk/named_systems.hpp"
#include "pfk/netfile.hpp"
#include "pfk/planar.hpp"
#include "pfk/suite.hpp"

using namespace pfk;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out.good()) throw ParseError("cannot write " + out_path);
    out << text;
}

EdgeOrder order_from_file(const std::string& path) {
    std::istringstream is(slurp(path));
    std::vector<EdgeId> seq;
    EdgeId e;
    while (is >> e) seq.push_back(e);
    return EdgeOrder(seq);
}

EdgeOrder pick_order(const NetFile& nf, const std::string& order_file) {
    if (!order_file.empty()) return order_from_file(order_file);
    if (nf.net.order) return *nf.net.order;
    return planar_spanning_tree_edge_order(nf.net);
}

// Certificate file: `scale EXPR`, one `basis [[..],[..]]` line per wire, and
// a `matrix [[..],[..],...]` line.
Certificate parse_certificate_file(const std::string& text, const Tensor& target) {
    std::istringstream is(text);
    std::string line;
    Certificate cert;
    cert.scale = Scalar(1);
    std::vector<BasisMatrix> bases;
    std::vector<std::vector<Scalar>> matrix;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        std::string rest;
        std::getline(ls, rest);
        if (kw == "scale") {
            cert.scale = parse_scalar(rest);
        } else if (kw == "basis") {
            bases.push_back(BasisMatrix::parse(rest));
        } else if (kw == "matrix") {
            matrix = detail::parse_matrix_rows(rest, lineno);
        } else {
            throw ParseError("unknown certificate keyword '" + kw + "'", lineno, 1);
        }
    }
    if (static_cast<int>(bases.size()) != target.arity())
        throw ParseError("certificate needs one basis line per target wire");
    if (static_cast<int>(matrix.size()) != target.arity())
        throw ParseError("certificate matrix size must match the target arity");
    std::vector<Scalar> entries;
    for (auto& row : matrix) {
        if (static_cast<int>(row.size()) != target.arity())
            throw ParseError("certificate matrix must be square");
        for (Scalar& s : row) entries.push_back(s);
    }
    cert.bases = std::move(bases);
    cert.matrix = SkewMatrix(target.wires(), std::move(entries));
    return cert;
}

int cmd_eval(const std::string& net_path, const std::string& method,
             const std::string& order_file) {
    NetFile nf = parse_network_file(slurp(net_path));
    Scalar brute, pfaff;
    if (method == "brute" || method == "both") {
        brute = brute_force_value(nf.net);
        std::cout << "brute " << brute.str() << "\n";
    }
    if (method == "pfaffian" || method == "both") {
        CertifiedNetwork cn = nf.to_certified();
        cn.validate();
        EdgeOrder sigma = pick_order(nf, order_file);
        pfaff = pfaffian_value(cn, sigma);
        std::cout << "pfaffian " << pfaff.str() << "\n";
    }
    if (method == "both") {
        double diff = std::abs(brute.approx() - pfaff.approx());
        std::cout << "diff " << diff << "\n";
        if (diff > default_eps() * std::max({1.0, brute.abs(), pfaff.abs()}))
            return kExitVerifyFail;
    }
    return kExitOk;
}

int cmd_order(const std::string& net_path) {
    NetFile nf = parse_network_file(slurp(net_path));
    EdgeOrder sigma = planar_spanning_tree_edge_order(nf.net);
    bool first = true;
    for (EdgeId e : sigma.seq()) {
        std::cout << (first ? "" : " ") << e;
        first = false;
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_ideal(const std::string& gate_expr, const std::string& cogate_expr,
              const std::string& net_path, const std::string& mode,
              const std::vector<std::string>& fixes, bool reduce_scalars,
              const std::string& format, const std::string& out_path) {
    IdealMode m = mode == "hom" ? IdealMode::Homogeneous : IdealMode::Heterogeneous;
    IdealOptions opts;
    opts.reduce_scalars = reduce_scalars;
    for (const std::string& f : fixes) {
        size_t eq = f.find('=');
        if (eq == std::string::npos) throw ParseError("--fix expects k=[[..],[..]]");
        opts.fixed[std::stoi(f.substr(0, eq))] = BasisMatrix::parse(f.substr(eq + 1));
    }

    PolySystem sys;
    if (!net_path.empty()) {
        NetFile nf = parse_network_file(slurp(net_path));
        std::vector<CircuitTensor> ts;
        auto add = [&](const Tensor& t) {
            CircuitTensor ct;
            ct.tensor = t;
            for (EdgeId e : t.wires())
                ct.basis_index.push_back(m == IdealMode::Homogeneous ? 1 : e);
            ts.push_back(std::move(ct));
        };
        for (const Tensor& g : nf.net.gates) add(g);
        for (const Tensor& c : nf.net.cogates) add(c);
        sys = circuit_ideal(ts, m);
    } else if (!gate_expr.empty()) {
        sys = gate_ideal(parse_tensor_literal(gate_expr), m, opts);
    } else if (!cogate_expr.empty()) {
        sys = cogate_ideal(parse_tensor_literal(cogate_expr), m, opts);
    } else {
        throw ParseError("one of --gate, --cogate or --net is required");
    }

    emit(out_path, export_system(sys, format == "singular" ? ExportFormat::Singular
                                                           : ExportFormat::Neutral));
    return kExitOk;
}

int cmd_gb(const std::string& ideal_path, const std::string& order_name, size_t max_pairs,
           double timeout, bool print_basis) {
    PolySystem sys = parse_neutral(slurp(ideal_path));
    MonomialOrder ord{MonomialOrder::parse(order_name)};
    GroebnerOptions opts;
    if (max_pairs) opts.max_pairs = max_pairs;
    if (timeout > 0) opts.timeout_sec = timeout;
    GroebnerBasis gb = buchberger(sys, ord, opts);
    if (gb.budget_exceeded) {
        std::cout << "BUDGET basis_size " << gb.gens.size() << " pairs " << gb.pairs_processed
                  << "\n";
        return kExitBudget;
    }
    std::cout << (is_trivial(gb) ? "TRIVIAL" : "NONTRIVIAL") << " basis_size " << gb.gens.size()
              << " pairs " << gb.pairs_processed << "\n";
    if (print_basis)
        for (const Polynomial& p : gb.gens) std::cout << p.str(sys.vars) << "\n";
    return kExitOk;
}

int cmd_certify(bool suite_paper, const std::string& net_path) {
    bool all_pass = true;
    if (suite_paper) {
        for (const SuiteResult& r : run_paper_suite()) {
            std::ostringstream res;
            res.precision(3);
            res << std::scientific << r.residual;
            std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << " " << res.str() << "\n";
            all_pass &= r.pass;
        }
    } else {
        NetFile nf = parse_network_file(slurp(net_path));
        CertifiedNetwork cn = nf.to_certified();
        auto report = [&](const Tensor& t, const Certificate& c, const std::string& name) {
            double resid = 0.0;
            bool ok = check_certificate(t, c, default_eps(), &resid);
            std::ostringstream res;
            res.precision(3);
            res << std::scientific << resid;
            std::cout << (ok ? "PASS" : "FAIL") << " " << name << " " << res.str() << "\n";
            all_pass &= ok;
        };
        for (size_t i = 0; i < cn.net.gates.size(); ++i)
            report(cn.net.gates[i], cn.gate_certs[i], cn.net.name({true, (int)i}));
        for (size_t i = 0; i < cn.net.cogates.size(); ++i)
            report(cn.net.cogates[i], cn.cogate_certs[i], cn.net.name({false, (int)i}));
    }
    return all_pass ? kExitOk : kExitVerifyFail;
}

int cmd_census(int arity, const std::string& basis_name, int jobs, bool cogates) {
    BasisMatrix b = basis_name == "hadamard" ? hadamard_basis()
                                             : BasisMatrix::parse(slurp(basis_name));
    std::vector<BasisMatrix> bases(arity, b);
    auto members = census_under_fixed_bases(
        arity, bases, cogates ? TensorKind::Cogate : TensorKind::Gate, jobs);
    std::cout << members.size() << (cogates ? " cogates\n" : " gates\n");
    for (const Tensor& t : members) std::cout << t.str() << "\n";
    return kExitOk;
}

int cmd_decompose(const std::string& target_expr, const std::string& cert_path,
                  const std::string& fragment_path, const std::string& order_file) {
    Tensor target = parse_tensor_literal(target_expr);
    Certificate cert = parse_certificate_file(slurp(cert_path), target);
    NetFile nf = parse_network_file(slurp(fragment_path));
    CertifiedNetwork frag = nf.to_certified();
    EdgeOrder sigma = order_from_file(order_file);
    bool ok = check_decomposition(target, cert, frag, sigma);
    std::cout << (ok ? "DECOMPOSABLE" : "MISMATCH") << "\n";
    return ok ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    if (const char* eps = std::getenv("PFK_EPS")) {
        char* end = nullptr;
        double v = std::strtod(eps, &end);
        if (end && *end == '\0' && v > 0) default_eps() = v;
    }

    CLI::App app{"Pfaffian circuit toolkit"};
    app.require_subcommand(1);

    auto* eval = app.add_subcommand("eval", "evaluate a network file");
    std::string eval_method = "both", eval_net, eval_order;
    eval->add_option("--method", eval_method)
        ->check(CLI::IsMember({"brute", "pfaffian", "both"}));
    eval->add_option("--order-file", eval_order);
    eval->add_option("net", eval_net)->required();

    auto* order = app.add_subcommand("order", "print the planar spanning tree edge order");
    std::string order_net;
    order->add_option("net", order_net)->required();

    auto* ideal = app.add_subcommand("ideal", "generate a change-of-basis polynomial system");
    std::string ideal_gate, ideal_cogate, ideal_net, ideal_mode = "het",
                ideal_format = "neutral", ideal_out;
    std::vector<std::string> ideal_fixes;
    bool ideal_reduce = false;
    ideal->add_option("--gate", ideal_gate);
    ideal->add_option("--cogate", ideal_cogate);
    ideal->add_option("--net", ideal_net);
    ideal->add_option("--mode", ideal_mode)->check(CLI::IsMember({"hom", "het"}));
    ideal->add_option("--fix", ideal_fixes);
    ideal->add_flag("--reduce-scalars", ideal_reduce);
    ideal->add_option("--format", ideal_format)->check(CLI::IsMember({"singular", "neutral"}));
    ideal->add_option("-o,--output", ideal_out);

    auto* gb = app.add_subcommand("gb", "Groebner basis of a neutral-format ideal");
    std::string gb_ideal, gb_order = "degrevlex";
    size_t gb_max_pairs = 0;
    double gb_timeout = 0;
    bool gb_print = false;
    gb->add_option("--order", gb_order)->check(CLI::IsMember({"degrevlex", "lex"}));
    gb->add_option("--max-pairs", gb_max_pairs);
    gb->add_option("--timeout", gb_timeout);
    gb->add_flag("--print", gb_print);
    gb->add_option("ideal", gb_ideal)->required();

    auto* certify = app.add_subcommand("certify", "verify certificates");
    std::string certify_suite, certify_net;
    certify->add_option("--suite", certify_suite)->check(CLI::IsMember({"paper"}));
    certify->add_option("--net", certify_net);

    auto* census = app.add_subcommand("census", "enumerate Pfaffian 0/1 tensors");
    int census_arity = 0, census_jobs = 1;
    std::string census_basis = "hadamard";
    bool census_cogates = false;
    census->add_option("--arity", census_arity)->required();
    census->add_option("--basis", census_basis);
    census->add_option("--jobs", census_jobs);
    census->add_flag("--cogates", census_cogates);

    auto* decompose = app.add_subcommand("decompose", "check a gate decomposition");
    std::string dec_target, dec_cert, dec_fragment, dec_order;
    decompose->add_option("--target", dec_target)->required();
    decompose->add_option("--cert", dec_cert)->required();
    decompose->add_option("--fragment", dec_fragment)->required();
    decompose->add_option("--order-file", dec_order)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(eval_net, eval_method, eval_order);
        if (order->parsed()) return cmd_order(order_net);
        if (ideal->parsed())
            return cmd_ideal(ideal_gate, ideal_cogate, ideal_net, ideal_mode, ideal_fixes,
                             ideal_reduce, ideal_format, ideal_out);
        if (gb->parsed()) return cmd_gb(gb_ideal, gb_order, gb_max_pairs, gb_timeout, gb_print);
        if (certify->parsed()) return cmd_certify(certify_suite == "paper", certify_net);
        if (census->parsed())
            return cmd_census(census_arity, census_basis, census_jobs, census_cogates);
        if (decompose->parsed()) return cmd_decompose(dec_target, dec_cert, dec_fragment,
                                                      dec_order);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
